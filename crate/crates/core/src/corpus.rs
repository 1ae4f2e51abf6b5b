//! The generated corpus of trivial formal matrix rings.

use std::collections::HashSet;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::formal::{build_formal_matrix, BimoduleSpec, FormalMatrixSpec};
use crate::local::LocalRingSpec;
use crate::report::{classify_ring, Bounds, ClassificationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub name: String,
    pub spec: FormalMatrixSpec,
    /// Hex SHA-256 of the ring description as JSON; the corpus is sorted by it.
    pub hash: String,
}

impl CorpusSpec {
    pub fn new(name: String, spec: FormalMatrixSpec) -> CorpusSpec {
        let hash = spec_hash(&spec);
        CorpusSpec { name, spec, hash }
    }
}

pub fn spec_hash(spec: &FormalMatrixSpec) -> String {
    hex::encode(Sha256::digest(
        serde_json::to_vec(spec).expect("specs serialize"),
    ))
}

/// Local base rings with at most four elements.
pub fn base_catalog() -> Vec<LocalRingSpec> {
    vec![
        LocalRingSpec::gf(2),
        LocalRingSpec::gf(3),
        LocalRingSpec::gf(4),
        LocalRingSpec::Zpk { p: 2, k: 2 },
        LocalRingSpec::TruncatedPoly { q: 2, m: 2 },
    ]
}

/// Multiplicity vectors of length `n` with sum at most `total`.
pub fn expansions(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = n - cur.len() - 1;
        for m in 1..=left.saturating_sub(rest) {
            cur.push(m);
            go(n, left - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, total, &mut Vec::new(), &mut out);
    out
}

fn name_of(spec: &FormalMatrixSpec) -> String {
    let n = spec.order();
    let corners: Vec<String> = spec.corners.iter().map(ToString::to_string).collect();
    let mut name = corners.join(",");
    for i in 0..n {
        for j in 0..n {
            if let BimoduleSpec::Ring { base, .. } = &spec.bimodules[i][j] {
                name.push_str(&format!(" B{}{}={base}", i + 1, j + 1));
            }
        }
    }
    if let Some(mu) = &spec.expand {
        let mu: Vec<String> = mu.iter().map(ToString::to_string).collect();
        name.push_str(&format!(" mu={}", mu.join(",")));
    }
    name
}

fn with_expansions(basic: FormalMatrixSpec, total: usize, out: &mut Vec<FormalMatrixSpec>) {
    for mu in expansions(basic.order(), total) {
        if mu.iter().all(|&m| m == 1) {
            out.push(basic.clone());
        } else {
            out.push(basic.clone().with_expand(mu));
        }
    }
}

/// Every candidate spec with at most three corners, bases from
/// [`base_catalog`], zero-product off-diagonal entries, total multiplicity
/// at most four and order at most `max_order`, sorted by spec hash. Specs
/// whose corners admit no homomorphism into an entry are kept here and
/// dropped when they fail to build.
pub fn candidate_specs(max_order: usize) -> Vec<CorpusSpec> {
    const TOTAL: usize = 4;
    let bases = base_catalog();
    let mut specs = Vec::new();
    for b in &bases {
        with_expansions(FormalMatrixSpec::local(b.clone()), TOTAL, &mut specs);
    }
    for a in &bases {
        for b in &bases {
            let mut choices = vec![BimoduleSpec::Zero, BimoduleSpec::zero_product(a.clone())];
            if a != b {
                choices.push(BimoduleSpec::zero_product(b.clone()));
            }
            for up in &choices {
                for down in &choices {
                    let grid = vec![
                        vec![BimoduleSpec::Corner, up.clone()],
                        vec![down.clone(), BimoduleSpec::Corner],
                    ];
                    let basic = FormalMatrixSpec::new(vec![a.clone(), b.clone()], grid);
                    with_expansions(basic, TOTAL, &mut specs);
                }
            }
        }
    }
    let cells: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    for b in &bases {
        for pattern in 0u32..1 << cells.len() {
            let mut grid = vec![vec![BimoduleSpec::Zero; 3]; 3];
            for (bit, &(i, j)) in cells.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    grid[i][j] = BimoduleSpec::zero_product(b.clone());
                }
            }
            with_expansions(
                FormalMatrixSpec::new(vec![b.clone(); 3], grid),
                TOTAL,
                &mut specs,
            );
        }
    }
    let mut out: Vec<CorpusSpec> = specs
        .into_iter()
        .filter(|s| s.ring_order() <= max_order as u128)
        .map(|s| CorpusSpec::new(name_of(&s), s))
        .collect();
    out.sort_by(|a, b| a.hash.cmp(&b.hash));
    out.dedup_by(|a, b| a.hash == b.hash);
    out
}

/// Classifies every buildable candidate in parallel and keeps the first
/// report of each profile, in spec-hash order.
pub fn enumerate(bounds: &Bounds) -> Result<Vec<(CorpusSpec, ClassificationReport)>> {
    let classified: Vec<Option<(CorpusSpec, ClassificationReport)>> =
        candidate_specs(bounds.max_order)
            .into_par_iter()
            .map(|c| {
                let Ok(ring) = build_formal_matrix(&c.spec) else {
                    return Ok(None);
                };
                let report = classify_ring(&c.name, &ring, bounds)?;
                Ok(Some((c, report)))
            })
            .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    Ok(classified
        .into_iter()
        .flatten()
        .filter(|(_, r)| seen.insert(r.digest.clone()))
        .collect())
}

/// One representative spec per profile.
pub fn default_corpus(bounds: &Bounds) -> Result<Vec<CorpusSpec>> {
    Ok(enumerate(bounds)?.into_iter().map(|(c, _)| c).collect())
}
