//! Theorem suites run over a corpus of ring specs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cardinality::{
    all_ideals, ann_main, card_main, dual_lemma_violation, honold_suite, is_frobenius, is_qf,
    qf_simple_formula_check, respects_multiplicities,
};
use crate::corpus::{expansions, CorpusSpec};
use crate::dsl::to_source;
use crate::error::{Error, Result};
use crate::formal::{build_formal_matrix, corner_elements, corner_ring, FormalMatrixSpec};
use crate::ideal::{ideal_generated, is_ideal, Submodule};
use crate::lattice::{annihilator_duality, ideals_above_radical, maximal_ideals, socle_ideals};
use crate::report::Bounds;
use crate::ring::{Elem, FiniteRing, Side};
use crate::socle::{
    annihilator_of, homogeneous_components, idempotent_socle_form, is_d_ideal, is_kasch,
    is_minannihilator, is_qf2, nakayama_permutation, principal_socle, socles, NakayamaResult,
    Socles,
};
use crate::structure::{exact_log, idempotents, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    KaschEquiv,
    NakayamaEquiv,
    Ann1,
    AntiIsom,
    AnnMain,
    CardMain,
    QfSimpleFormula,
    Honold,
    CornerStability,
    DualLemma,
    SocleDirectSum,
    MoritaInvariance,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::KaschEquiv,
        Theorem::NakayamaEquiv,
        Theorem::Ann1,
        Theorem::AntiIsom,
        Theorem::AnnMain,
        Theorem::CardMain,
        Theorem::QfSimpleFormula,
        Theorem::Honold,
        Theorem::CornerStability,
        Theorem::DualLemma,
        Theorem::SocleDirectSum,
        Theorem::MoritaInvariance,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::KaschEquiv => "kasch-equiv",
            Theorem::NakayamaEquiv => "nakayama-equiv",
            Theorem::Ann1 => "ann1",
            Theorem::AntiIsom => "anti-isom",
            Theorem::AnnMain => "ann-main",
            Theorem::CardMain => "card-main",
            Theorem::QfSimpleFormula => "qf-simple-formula",
            Theorem::Honold => "honold",
            Theorem::CornerStability => "corner-stability",
            Theorem::DualLemma => "dual-lemma",
            Theorem::SocleDirectSum => "socle-direct-sum",
            Theorem::MoritaInvariance => "morita-invariance",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Parses a comma-separated list of theorem identifiers; `all` selects
/// every suite.
pub fn parse_plan(list: &str) -> Result<Vec<Theorem>> {
    let mut plan = Vec::new();
    for id in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if id == "all" {
            plan.extend(Theorem::ALL);
        } else {
            plan.push(id.parse()?);
        }
    }
    plan.sort_unstable();
    plan.dedup();
    Ok(plan)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub ring: String,
    /// Source text reproducing the ring, when it has one.
    pub source: Option<String>,
    pub detail: String,
    /// Offending ideals as element lists.
    pub witnesses: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub theorem: Theorem,
    pub checked: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Per-ring observations, such as the measured products of the
    /// cardinality formula.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rings: usize,
    pub outcomes: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SuiteOutcome::passed)
    }

    pub fn outcome(&self, theorem: Theorem) -> Option<&SuiteOutcome> {
        self.outcomes.iter().find(|o| o.theorem == theorem)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<20} {:>7} {:>7} {:>7}  result",
            "theorem", "checked", "skipped", "failed"
        )?;
        for o in &self.outcomes {
            let result = if o.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{:<20} {:>7} {:>7} {:>7}  {result}",
                o.theorem.id(),
                o.checked,
                o.skipped,
                o.counterexamples.len()
            )?;
        }
        Ok(())
    }
}

enum Check {
    Pass(Option<String>),
    Skip,
    Fail(String, Vec<Vec<Elem>>),
}

fn fail(detail: impl Into<String>) -> Result<Check> {
    Ok(Check::Fail(detail.into(), Vec::new()))
}

fn fail_with(detail: impl Into<String>, witnesses: &[&Submodule]) -> Result<Check> {
    Ok(Check::Fail(
        detail.into(),
        witnesses.iter().map(|w| w.to_vec()).collect(),
    ))
}

fn pass() -> Result<Check> {
    Ok(Check::Pass(None))
}

struct Ctx<'a> {
    spec: &'a FormalMatrixSpec,
    ring: &'a FiniteRing,
    st: Structure<'a>,
    soc: Socles,
    nak: NakayamaResult,
    bounds: &'a Bounds,
}

impl<'a> Ctx<'a> {
    fn new(
        spec: &'a FormalMatrixSpec,
        ring: &'a FiniteRing,
        bounds: &'a Bounds,
    ) -> Result<Ctx<'a>> {
        let st = Structure::analyze(ring)?;
        let soc = socles(ring, &st.radical);
        let nak = nakayama_permutation(&st, &soc)?;
        Ok(Ctx {
            spec,
            ring,
            st,
            soc,
            nak,
            bounds,
        })
    }
}

const SIDES: [Side; 2] = [Side::Right, Side::Left];

fn kasch_equiv(c: &Ctx) -> Result<Check> {
    let ring = c.ring;
    for side in SIDES {
        let kasch = is_kasch(&c.st, &c.soc, side);
        let maximal = maximal_ideals(&c.st, side, c.bounds.lattice)?;
        let above = ideals_above_radical(&c.st, side, c.bounds.lattice)?;
        let items = [
            maximal.iter().all(|m| is_d_ideal(ring, m, side)),
            above.iter().all(|i| is_d_ideal(ring, i, side)),
            is_d_ideal(ring, &c.st.radical, side),
            annihilator_of(ring, c.soc.on(side), side) == c.st.radical,
        ];
        if items.iter().any(|&b| b != kasch) {
            return fail(format!(
                "{side} Kasch = {kasch} but (2), (3), (4), ann(soc) = J give {items:?}"
            ));
        }
        for m in &maximal {
            let nonzero = !annihilator_of(ring, m, side.opposite()).is_zero();
            if is_d_ideal(ring, m, side) != nonzero {
                return fail_with(
                    format!("maximal {side} ideal: D-ideal ≠ nonzero annihilator"),
                    &[m],
                );
            }
        }
    }
    pass()
}

fn nakayama_equiv(c: &Ctx) -> Result<Check> {
    let (st, soc) = (&c.st, &c.soc);
    let kasch = SIDES.iter().all(|&s| is_kasch(st, soc, s));
    let qf2 = SIDES.iter().all(|&s| is_qf2(st, soc, s));
    let minann = SIDES.iter().all(|&s| is_minannihilator(c.ring, soc, s));
    let exists = c.nak.exists();
    if exists != (kasch && qf2) || exists != (kasch && minann) {
        return fail(format!(
            "Nakayama permutation {exists}, Kasch {kasch}, QF-2 {qf2}, minannihilator {minann}"
        ));
    }
    if let Some(perm) = c.nak.permutation() {
        if !soc.coincide() {
            return fail("Nakayama permutation with different socles");
        }
        let sizes = st.profile.field_sizes();
        if let Some(k) = (0..perm.len()).find(|&k| sizes[k] != sizes[perm[k]]) {
            return fail(format!("|m_{}| ≠ |m_π({})|", k + 1, k + 1));
        }
    }
    pass()
}

fn ann1(c: &Ctx) -> Result<Check> {
    let (ring, st, soc) = (c.ring, &c.st, &c.soc);
    let bound = c.bounds.lattice;
    let one = c.nak.exists() && soc.coincide();
    let two = SIDES
        .iter()
        .all(|&s| is_kasch(st, soc, s) && is_minannihilator(ring, soc, s));
    let mut three = true;
    for side in SIDES {
        let mut family = socle_ideals(st, soc, side, bound)?;
        family.extend(ideals_above_radical(st, side, bound)?);
        three &= family.iter().all(|i| is_d_ideal(ring, i, side));
    }
    let four = annihilator_duality(st, soc, bound)?.holds();
    if [two, three, four].iter().any(|&b| b != one) {
        return fail(format!("(1) {one}, (2) {two}, (3) {three}, (4) {four}"));
    }
    if one {
        for i in socle_ideals(st, soc, Side::Right, bound)? {
            if idempotent_socle_form(ring, &soc.right, &i).is_none() {
                return fail_with("semisimple right ideal not of the form f·soc(R)", &[&i]);
            }
        }
    }
    if soc.coincide() {
        let radical = st.radical.generators();
        for f in idempotents(ring) {
            let mut gens = vec![ring.sub(ring.one(), f)];
            gens.extend_from_slice(radical);
            let ideal = ideal_generated(ring, &gens, Side::Right);
            let ann = annihilator_of(ring, &ideal, Side::Left);
            let expected = principal_socle(ring, &soc.left, f, Side::Left);
            if ann != expected {
                return fail_with(
                    format!("l((1 − f)R + J) ≠ soc(Rf) for f = {f}"),
                    &[&ideal, &ann],
                );
            }
        }
    }
    pass()
}

fn anti_isom(c: &Ctx) -> Result<Check> {
    let duality = annihilator_duality(&c.st, &c.soc, c.bounds.lattice)?;
    if duality.holds() != c.nak.exists() {
        return fail(format!(
            "duality {} but Nakayama permutation {}{}",
            duality.holds(),
            c.nak.exists(),
            duality
                .violation
                .map(|v| format!(": {v}"))
                .unwrap_or_default()
        ));
    }
    pass()
}

fn ann_main_check(c: &Ctx) -> Result<Check> {
    let r = ann_main(&c.st, &c.soc, &c.nak, c.bounds.lattice)?;
    if !r.agrees() {
        return fail(format!("{r:?}"));
    }
    pass()
}

fn card_main_check(c: &Ctx) -> Result<Check> {
    let r = card_main(&c.st, &c.soc, &c.nak)?;
    if !r.agrees() {
        return fail(format!("{r:?}"));
    }
    pass()
}

fn power_string(x: u128) -> String {
    let x_usize = x as usize;
    let base = (2..=x_usize).find(|d| x_usize % d == 0).unwrap_or(1);
    match exact_log(x_usize, base) {
        Some(k) if base > 1 && k > 1 => format!("{base}^{k}"),
        _ => x.to_string(),
    }
}

fn qf_simple_formula(c: &Ctx) -> Result<Check> {
    let r = qf_simple_formula_check(&c.st, &c.soc, &c.nak)?;
    if !r.fields_match {
        return fail("residue fields of k and π(k) differ in size");
    }
    if let Some(row) = r.rows.iter().find(|row| !row.holds()) {
        return fail(format!(
            "e_{}: |l(T)|·|T| = {} but the formula gives {} (sign ok: {})",
            row.position + 1,
            row.product,
            row.predicted,
            row.sign_ok
        ));
    }
    let products: Vec<String> = r.rows.iter().map(|row| power_string(row.product)).collect();
    Ok(Check::Pass(Some(format!(
        "|R| = {}, products {}",
        power_string(r.ring_size as u128),
        products.join(", ")
    ))))
}

fn honold(c: &Ctx) -> Result<Check> {
    let r = honold_suite(&c.st, &c.soc, c.bounds.lattice, c.bounds.dring)?;
    if !r.agrees() {
        let ws: Vec<Vec<Elem>> = r.failures.clone();
        return Ok(Check::Fail(format!("{r:?}"), ws));
    }
    pass()
}

fn dual_lemma(c: &Ctx) -> Result<Check> {
    let ring = c.ring;
    for side in SIDES {
        let ideals = if ring.size() <= c.bounds.dring {
            all_ideals(ring, side, c.bounds.dring)?
        } else {
            let mut family = socle_ideals(&c.st, &c.soc, side, c.bounds.lattice)?;
            family.extend(ideals_above_radical(&c.st, side, c.bounds.lattice)?);
            family
        };
        if let Some(i) = dual_lemma_violation(ring, &ideals, side) {
            return fail_with(
                format!(
                    "{side} ideal and its double annihilator satisfy the Size condition but differ"
                ),
                &[&i],
            );
        }
    }
    pass()
}

fn is_direct_sum(ring: &FiniteRing, pieces: &[Submodule], whole: &Submodule) -> bool {
    let sum = pieces
        .iter()
        .fold(Submodule::zero(ring.size()), |acc, p| acc.sum(ring, p));
    let product: usize = pieces.iter().map(Submodule::len).product();
    sum == *whole && product == whole.len()
}

fn socle_direct_sum(c: &Ctx) -> Result<Check> {
    let ring = c.ring;
    for side in SIDES {
        let socle = c.soc.on(side);
        let pieces: Vec<Submodule> =
            c.st.dec
                .idempotents
                .iter()
                .map(|&e| principal_socle(ring, socle, e, side))
                .collect();
        if !is_direct_sum(ring, &pieces, socle) {
            return fail_with(
                format!("{side} socle is not the direct sum of its principal pieces"),
                &[socle],
            );
        }
        for (&e, piece) in c.st.dec.idempotents.iter().zip(&pieces) {
            let cut = c.st.principal(e, side).intersection(ring, socle);
            if cut != *piece {
                return fail_with(
                    format!("socle of the principal {side} ideal of e = {e} is not e·soc"),
                    &[piece, &cut],
                );
            }
        }
        let components = homogeneous_components(&c.st, socle, side);
        if !is_direct_sum(ring, &components, socle) {
            return fail_with(
                format!("{side} socle is not the direct sum of its homogeneous components"),
                &[socle],
            );
        }
        if let Some(s) = components.iter().find(|s| !is_ideal(ring, s, Side::Both)) {
            return fail_with("homogeneous component is not two-sided", &[s]);
        }
    }
    pass()
}

/// Union-of-cycles subsets of `{0..n}` under `perm`, as bit masks.
fn invariant_subsets(perm: &[usize]) -> Vec<u32> {
    let n = perm.len();
    (1u32..1 << n)
        .filter(|&mask| (0..n).all(|i| mask >> i & 1 == 0 || mask >> perm[i] & 1 == 1))
        .collect()
}

fn corner_stability(c: &Ctx) -> Result<Check> {
    let Some(perm) = c.nak.permutation() else {
        return Ok(Check::Skip);
    };
    let ring = c.ring;
    let qf = is_qf(ring, &c.soc);
    for mask in invariant_subsets(perm) {
        let positions = (0..c.st.dec.order()).filter(|&i| mask >> c.st.dec.class_of[i] & 1 == 1);
        let e = c.st.dec.sum_of(ring, positions);
        let corner = corner_ring(ring, e)?;
        let back = corner_elements(ring, e);
        let cst = Structure::analyze(&corner)?;
        let csoc = socles(&corner, &cst.radical);
        let cnak = nakayama_permutation(&cst, &csoc)?;
        let classes: Vec<usize> = cst
            .dec
            .basic_set()
            .iter()
            .map(|&b| c.st.idempotent_class(back[b as usize]))
            .collect::<Result<_>>()?;
        let Some(cperm) = cnak.permutation() else {
            return fail(format!(
                "corner for classes {mask:b} has no Nakayama permutation ({cnak:?})"
            ));
        };
        for (k, &p) in cperm.iter().enumerate() {
            if classes[p] != perm[classes[k]] {
                return fail(format!(
                    "corner for classes {mask:b}: π sends class {} to {}, restriction expects {}",
                    classes[k] + 1,
                    classes[p] + 1,
                    perm[classes[k]] + 1
                ));
            }
        }
        if qf && !is_qf(&corner, &csoc) {
            return fail(format!(
                "corner for classes {mask:b} of a QF ring is not QF"
            ));
        }
    }
    pass()
}

struct Invariants {
    kasch: [bool; 2],
    qf2: [bool; 2],
    perm: Option<Vec<usize>>,
    qf: bool,
    coincide: bool,
    frobenius: bool,
    mu: Vec<usize>,
}

/// Invariants of a ring built from a formal matrix, with classes numbered by
/// the corner they come from.
fn spec_invariants(st: &Structure, soc: &Socles, nak: &NakayamaResult) -> Result<Invariants> {
    let layout = st
        .ring
        .layout()
        .ok_or_else(|| Error::PreconditionUnmet("ring has no formal matrix layout".into()))?;
    let n = st.height();
    let class_of_corner: Vec<usize> = (0..n)
        .map(|k| st.idempotent_class(layout.diag_unit(k)))
        .collect::<Result<_>>()?;
    let mut corner_of_class = vec![0; n];
    for (k, &cl) in class_of_corner.iter().enumerate() {
        corner_of_class[cl] = k;
    }
    let mu_classes = st.profile.multiplicities();
    Ok(Invariants {
        kasch: [
            is_kasch(st, soc, Side::Right),
            is_kasch(st, soc, Side::Left),
        ],
        qf2: [is_qf2(st, soc, Side::Right), is_qf2(st, soc, Side::Left)],
        perm: nak.permutation().map(|p| {
            (0..n)
                .map(|k| corner_of_class[p[class_of_corner[k]]])
                .collect()
        }),
        qf: is_qf(st.ring, soc),
        coincide: soc.coincide(),
        frobenius: is_frobenius(st, soc)?,
        mu: (0..n).map(|k| mu_classes[class_of_corner[k]]).collect(),
    })
}

/// Expansion vectors tried on a basic ring: the smallest non-trivial
/// multiplicity vectors whose ring fits the order bound.
pub fn morita_expansions(spec: &FormalMatrixSpec, max_order: usize) -> Vec<Vec<usize>> {
    let n = spec.order();
    let mut out: Vec<(u128, Vec<usize>)> = expansions(n, n + 3)
        .into_iter()
        .filter(|mu| mu.iter().any(|&m| m > 1))
        .map(|mu| (spec.clone().with_expand(mu.clone()).ring_order(), mu))
        .filter(|(order, _)| *order <= max_order as u128)
        .collect();
    out.sort();
    out.into_iter().take(4).map(|(_, mu)| mu).collect()
}

fn morita_invariance(c: &Ctx) -> Result<Check> {
    let basic = c.spec.expand.is_none()
        && c.st.dec.order() == c.st.height()
        && c.spec.order() == c.st.height();
    let mus = morita_expansions(c.spec, c.bounds.max_order);
    if !basic || mus.is_empty() {
        return Ok(Check::Skip);
    }
    let base = spec_invariants(&c.st, &c.soc, &c.nak)?;
    for mu in &mus {
        let spec = c.spec.clone().with_expand(mu.clone());
        let ring = build_formal_matrix(&spec)?;
        let st = Structure::analyze(&ring)?;
        let soc = socles(&ring, &st.radical);
        let nak = nakayama_permutation(&st, &soc)?;
        let inv = spec_invariants(&st, &soc, &nak)?;
        if inv.mu != *mu {
            return fail(format!(
                "expansion {mu:?} yields multiplicities {:?}",
                inv.mu
            ));
        }
        let same = inv.kasch == base.kasch
            && inv.qf2 == base.qf2
            && inv.perm == base.perm
            && inv.qf == base.qf
            && inv.coincide == base.coincide;
        if !same {
            return fail(format!("expansion {mu:?} changes a Morita invariant"));
        }
        let expected = base.frobenius
            && base
                .perm
                .as_ref()
                .map_or(true, |p| respects_multiplicities(p, mu));
        if inv.frobenius != expected {
            return fail(format!(
                "expansion {mu:?}: Frobenius {} but the multiplicities predict {expected}",
                inv.frobenius
            ));
        }
    }
    Ok(Check::Pass(Some(format!("{} expansions", mus.len()))))
}

fn run(theorem: Theorem, c: &Ctx) -> Result<Check> {
    let outcome = match theorem {
        Theorem::KaschEquiv => kasch_equiv(c),
        Theorem::NakayamaEquiv => nakayama_equiv(c),
        Theorem::Ann1 => ann1(c),
        Theorem::AntiIsom => anti_isom(c),
        Theorem::AnnMain => ann_main_check(c),
        Theorem::CardMain => card_main_check(c),
        Theorem::QfSimpleFormula => qf_simple_formula(c),
        Theorem::Honold => honold(c),
        Theorem::CornerStability => corner_stability(c),
        Theorem::DualLemma => dual_lemma(c),
        Theorem::SocleDirectSum => socle_direct_sum(c),
        Theorem::MoritaInvariance => morita_invariance(c),
    };
    match outcome {
        Err(Error::PreconditionUnmet(_) | Error::TooLarge { .. } | Error::SearchTooLarge(_)) => {
            Ok(Check::Skip)
        }
        other => other,
    }
}

/// Runs the plan on every ring of the corpus in parallel. Specs that fail
/// to build are skipped; internal inconsistencies abort the run.
pub fn verify(corpus: &[CorpusSpec], plan: &[Theorem], bounds: &Bounds) -> Result<VerifyReport> {
    let per_ring: Vec<Option<Vec<Check>>> = corpus
        .par_iter()
        .map(|entry| {
            let Ok(ring) = build_formal_matrix(&entry.spec) else {
                return Ok(None);
            };
            let ctx = Ctx::new(&entry.spec, &ring, bounds)?;
            plan.iter()
                .map(|&t| run(t, &ctx))
                .collect::<Result<Vec<_>>>()
                .map(Some)
        })
        .collect::<Result<_>>()?;
    let mut outcomes: Vec<SuiteOutcome> = plan
        .iter()
        .map(|&theorem| SuiteOutcome {
            theorem,
            checked: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        })
        .collect();
    let mut rings = 0;
    for (entry, checks) in corpus.iter().zip(per_ring) {
        let Some(checks) = checks else { continue };
        rings += 1;
        for (outcome, check) in outcomes.iter_mut().zip(checks) {
            match check {
                Check::Pass(note) => {
                    outcome.checked += 1;
                    outcome
                        .notes
                        .extend(note.map(|n| format!("{}: {n}", entry.name)));
                }
                Check::Skip => outcome.skipped += 1,
                Check::Fail(detail, witnesses) => {
                    outcome.checked += 1;
                    outcome.counterexamples.push(Counterexample {
                        ring: entry.name.clone(),
                        source: to_source(&entry.name, &entry.spec),
                        detail,
                        witnesses,
                    });
                }
            }
        }
    }
    Ok(VerifyReport { rings, outcomes })
}
