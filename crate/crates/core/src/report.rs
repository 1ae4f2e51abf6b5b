//! The classification pipeline and its serializable report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::cardinality::{
    is_d_ring, is_frobenius, is_qf, respects_multiplicities, size_condition, socle_principal,
};
use crate::error::{Error, Result};
use crate::formal::{build_formal_matrix, FormalMatrixSpec};
use crate::lattice::{maximal_ideals, DEFAULT_LATTICE_BOUND};
use crate::ring::{FiniteRing, Side};
use crate::socle::{
    homogeneous_components, is_kasch, is_minannihilator, is_qf2, nakayama_permutation, socles,
    NakayamaFailure, NakayamaResult, Socles,
};
use crate::structure::Structure;

/// Enumeration bounds shared by the classifier and the theorem suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest module whose submodule lattice is enumerated.
    pub lattice: usize,
    /// Largest ring on which all one-sided ideals are enumerated.
    pub dring: usize,
    /// Largest ring for the Baer self-injectivity oracle.
    pub baer: usize,
    /// Largest ring order the corpus sweep builds.
    pub max_order: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            lattice: DEFAULT_LATTICE_BOUND,
            dring: 256,
            baer: 16,
            max_order: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Decided(bool),
    Skipped,
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Decision::Decided(b) => s.serialize_bool(*b),
            Decision::Skipped => s.serialize_str("skipped"),
        }
    }
}

impl From<Option<bool>> for Decision {
    fn from(v: Option<bool>) -> Decision {
        v.map_or(Decision::Skipped, Decision::Decided)
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Decision::Decided(b) => write!(f, "{b}"),
            Decision::Skipped => f.write_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleSummary {
    pub right_size: usize,
    pub left_size: usize,
    pub coincide: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub kasch_r: bool,
    pub kasch_l: bool,
    pub qf2_r: bool,
    pub qf2_l: bool,
    pub minann_r: bool,
    pub minann_l: bool,
    pub d_ring: Decision,
    pub qf: bool,
    pub frobenius: bool,
    /// Equal to `qf` for finite rings.
    pub pf: bool,
    pub socle_principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NakayamaSummary {
    pub exists: bool,
    /// 1-based images of the classes; empty when no permutation exists.
    pub perm: Vec<usize>,
    pub respects_multiplicities: Option<bool>,
    pub failure: Option<NakayamaFailure>,
}

/// Size condition `|l(I)||I| = |R|` (right) and `|I||r(I)| = |R|` (left)
/// on the radical, the homogeneous components and the maximal ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeConditionSummary {
    pub radical_r: bool,
    pub radical_l: bool,
    pub components_r: Vec<bool>,
    pub components_l: Vec<bool>,
    pub maximal_r: Decision,
    pub maximal_l: Decision,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub build_ms: f64,
    pub structure_ms: f64,
    pub socle_ms: f64,
    pub predicates_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    pub size: usize,
    pub m: usize,
    pub n: usize,
    pub mu: Vec<usize>,
    pub field_sizes: Vec<usize>,
    pub socle: SocleSummary,
    pub predicates: Predicates,
    pub nakayama: NakayamaSummary,
    pub size_condition: SizeConditionSummary,
    /// SHA-256 of the report without name, digest and timings.
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Serialize)]
struct Profile<'a> {
    size: usize,
    m: usize,
    n: usize,
    mu: &'a [usize],
    field_sizes: &'a [usize],
    socle: &'a SocleSummary,
    predicates: &'a Predicates,
    nakayama: &'a NakayamaSummary,
    size_condition: &'a SizeConditionSummary,
}

impl ClassificationReport {
    fn profile_digest(&self) -> String {
        let profile = Profile {
            size: self.size,
            m: self.m,
            n: self.n,
            mu: &self.mu,
            field_sizes: &self.field_sizes,
            socle: &self.socle,
            predicates: &self.predicates,
            nakayama: &self.nakayama,
            size_condition: &self.size_condition,
        };
        let bytes = serde_json::to_vec(&profile).expect("profiles serialize");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("name", self.name.clone()),
            ("size", self.size.to_string()),
            ("m", self.m.to_string()),
            ("n", self.n.to_string()),
            ("mu", format!("{:?}", self.mu)),
            ("field sizes", format!("{:?}", self.field_sizes)),
            ("right socle", self.socle.right_size.to_string()),
            ("left socle", self.socle.left_size.to_string()),
            ("socles coincide", self.socle.coincide.to_string()),
        ];
        let p = &self.predicates;
        rows.extend([
            ("kasch (r/l)", format!("{} / {}", p.kasch_r, p.kasch_l)),
            ("qf-2 (r/l)", format!("{} / {}", p.qf2_r, p.qf2_l)),
            (
                "minannihilator (r/l)",
                format!("{} / {}", p.minann_r, p.minann_l),
            ),
            ("d-ring", p.d_ring.to_string()),
            ("qf", p.qf.to_string()),
            ("frobenius", p.frobenius.to_string()),
            ("pf", p.pf.to_string()),
            ("socle principal", p.socle_principal.to_string()),
        ]);
        let nak = &self.nakayama;
        let perm = match (&nak.failure, nak.exists) {
            (_, true) => {
                let maps: Vec<String> = nak
                    .perm
                    .iter()
                    .enumerate()
                    .map(|(k, p)| format!("{}→{p}", k + 1))
                    .collect();
                maps.join(" ")
            }
            (Some(f), false) => format!(
                "none ({})",
                serde_json::to_value(f).unwrap().as_str().unwrap_or("")
            ),
            (None, false) => "none".into(),
        };
        rows.push(("nakayama", perm));
        if let Some(r) = nak.respects_multiplicities {
            rows.push(("respects multiplicities", r.to_string()));
        }
        let sc = &self.size_condition;
        rows.extend([
            (
                "size cond. J (r/l)",
                format!("{} / {}", sc.radical_r, sc.radical_l),
            ),
            ("size cond. S_k (r)", format!("{:?}", sc.components_r)),
            ("size cond. S_k (l)", format!("{:?}", sc.components_l)),
            (
                "size cond. maximal (r/l)",
                format!("{} / {}", sc.maximal_r, sc.maximal_l),
            ),
            ("digest", self.digest.clone()),
        ]);
        if let Some(t) = &self.timings {
            rows.push(("time (ms)", format!("{:.1}", t.total_ms)));
        }
        let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Builds the ring and classifies it.
pub fn classify_spec(
    name: &str,
    spec: &FormalMatrixSpec,
    bounds: &Bounds,
) -> Result<ClassificationReport> {
    let start = Instant::now();
    let ring = build_formal_matrix(spec)?;
    let build_ms = millis(start);
    let mut report = classify_ring(name, &ring, bounds)?;
    if let Some(t) = report.timings.as_mut() {
        t.build_ms = build_ms;
        t.total_ms = millis(start);
    }
    Ok(report)
}

pub fn classify_ring(
    name: &str,
    ring: &FiniteRing,
    bounds: &Bounds,
) -> Result<ClassificationReport> {
    let start = Instant::now();
    let st = Structure::analyze(ring)?;
    let structure_ms = millis(start);
    let t = Instant::now();
    let soc = socles(ring, &st.radical);
    let nak = nakayama_permutation(&st, &soc)?;
    let socle_ms = millis(t);
    let t = Instant::now();
    let report = assemble(name, &st, &soc, &nak, bounds)?;
    let predicates_ms = millis(t);
    Ok(ClassificationReport {
        timings: Some(Timings {
            build_ms: 0.0,
            structure_ms,
            socle_ms,
            predicates_ms,
            total_ms: millis(start),
        }),
        ..report
    })
}

fn assemble(
    name: &str,
    st: &Structure,
    soc: &Socles,
    nak: &NakayamaResult,
    bounds: &Bounds,
) -> Result<ClassificationReport> {
    let ring = st.ring;
    let mu = st.profile.multiplicities();
    let qf = is_qf(ring, soc);
    let frobenius = is_frobenius(st, soc)?;
    let d_ring = Decision::from(is_d_ring(ring, bounds.dring)?);
    let predicates = Predicates {
        kasch_r: is_kasch(st, soc, Side::Right),
        kasch_l: is_kasch(st, soc, Side::Left),
        qf2_r: is_qf2(st, soc, Side::Right),
        qf2_l: is_qf2(st, soc, Side::Left),
        minann_r: is_minannihilator(ring, soc, Side::Right),
        minann_l: is_minannihilator(ring, soc, Side::Left),
        d_ring,
        qf,
        frobenius,
        pf: qf,
        socle_principal: socle_principal(ring, &soc.right),
    };
    let nakayama = match nak {
        NakayamaResult::Exists(p) => NakayamaSummary {
            exists: true,
            perm: p.iter().map(|k| k + 1).collect(),
            respects_multiplicities: Some(respects_multiplicities(p, &mu)),
            failure: None,
        },
        NakayamaResult::Fails(f) => NakayamaSummary {
            exists: false,
            perm: Vec::new(),
            respects_multiplicities: None,
            failure: Some(*f),
        },
    };
    if (frobenius && !qf) || (qf && !nakayama.exists) || d_ring == Decision::Decided(!qf) {
        return Err(Error::Inconsistent(format!(
            "frobenius = {frobenius}, qf = {qf}, nakayama = {}, d-ring = {d_ring}",
            nakayama.exists
        )));
    }
    if nakayama
        .respects_multiplicities
        .is_some_and(|r| r != frobenius)
    {
        return Err(Error::Inconsistent(
            "Frobenius disagrees with the multiplicities of π".into(),
        ));
    }
    let maximal = |side: Side| -> Result<Decision> {
        match maximal_ideals(st, side, bounds.lattice) {
            Ok(ms) => Ok(Decision::Decided(
                ms.iter().all(|m| size_condition(ring, m, side)),
            )),
            Err(Error::TooLarge { .. }) => Ok(Decision::Skipped),
            Err(e) => Err(e),
        }
    };
    let size_condition_summary = SizeConditionSummary {
        radical_r: size_condition(ring, &st.radical, Side::Right),
        radical_l: size_condition(ring, &st.radical, Side::Left),
        components_r: homogeneous_components(st, &soc.right, Side::Right)
            .iter()
            .map(|c| size_condition(ring, c, Side::Right))
            .collect(),
        components_l: homogeneous_components(st, &soc.left, Side::Left)
            .iter()
            .map(|c| size_condition(ring, c, Side::Left))
            .collect(),
        maximal_r: maximal(Side::Right)?,
        maximal_l: maximal(Side::Left)?,
    };
    let mut report = ClassificationReport {
        name: name.to_string(),
        size: ring.size(),
        m: st.dec.order(),
        n: st.height(),
        mu,
        field_sizes: st.profile.field_sizes(),
        socle: SocleSummary {
            right_size: soc.right.len(),
            left_size: soc.left.len(),
            coincide: soc.coincide(),
        },
        predicates,
        nakayama,
        size_condition: size_condition_summary,
        digest: String::new(),
        timings: None,
    };
    report.digest = report.profile_digest();
    Ok(report)
}
