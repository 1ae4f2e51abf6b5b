//! Annihilators, socles, homogeneous components and the predicates built on
//! them: Kasch, QF-2, D-ideals, minannihilator and the Nakayama permutation.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, image_set, Submodule};
use crate::module::FiniteModule;
use crate::ring::{Elem, FiniteRing, Side};
use crate::structure::{idempotents, Structure};

/// `l(X) = { r : rX = 0 }` for `side == Left`, `r(X) = { r : Xr = 0 }` for
/// `side == Right`.
pub fn annihilator(ring: &FiniteRing, xs: &[Elem], side: Side) -> Submodule {
    let mut members = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        let kills = match side {
            Side::Left => xs.iter().all(|&x| ring.mul(r, x) == 0),
            Side::Right => xs.iter().all(|&x| ring.mul(x, r) == 0),
            Side::Both => xs
                .iter()
                .all(|&x| ring.mul(r, x) == 0 && ring.mul(x, r) == 0),
        };
        if kills {
            members.insert(r as usize);
        }
    }
    Submodule::from_members(ring, members)
}

/// Annihilator of a subgroup; its additive generators suffice.
pub fn annihilator_of(ring: &FiniteRing, sub: &Submodule, side: Side) -> Submodule {
    annihilator(ring, sub.generators(), side)
}

/// Double annihilator `rl(I)` of a right ideal, `lr(I)` of a left ideal.
pub fn double_annihilator(ring: &FiniteRing, ideal: &Submodule, side: Side) -> Submodule {
    let once = annihilator_of(ring, ideal, side.opposite());
    annihilator_of(ring, &once, side)
}

/// `rl(I) = I` (right) or `lr(I) = I` (left).
pub fn is_d_ideal(ring: &FiniteRing, ideal: &Submodule, side: Side) -> bool {
    double_annihilator(ring, ideal, side) == *ideal
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Socles {
    /// `S_r = soc(R_R) = l(J)`.
    pub right: Submodule,
    /// `S_l = soc(_RR) = r(J)`.
    pub left: Submodule,
}

impl Socles {
    pub fn coincide(&self) -> bool {
        self.right == self.left
    }

    pub fn on(&self, side: Side) -> &Submodule {
        match side {
            Side::Left => &self.left,
            _ => &self.right,
        }
    }
}

pub fn socles(ring: &FiniteRing, radical: &Submodule) -> Socles {
    Socles {
        right: annihilator_of(ring, radical, Side::Left),
        left: annihilator_of(ring, radical, Side::Right),
    }
}

/// Distinct minimal one-sided ideals; all of them are cyclic and lie in the
/// socle of that side.
pub fn minimal_ideals(ring: &FiniteRing, socle: &Submodule, side: Side) -> Vec<Submodule> {
    let mut cyclic: HashMap<Elem, Submodule> = HashMap::new();
    for s in socle.iter().skip(1) {
        cyclic.insert(s, ideal_generated(ring, &[s], side));
    }
    let mut out: Vec<Submodule> = Vec::new();
    for s in socle.iter().skip(1) {
        let c = &cyclic[&s];
        let minimal = c.iter().skip(1).all(|t| cyclic[&t].len() == c.len());
        if minimal && !out.contains(c) {
            out.push(c.clone());
        }
    }
    debug_assert!(
        !out.is_empty() || ring.size() == 1,
        "finite rings have essential socles"
    );
    out
}

/// `S_k`, the right ideal generated by `S_r·e_k` (left: by `e_k·S_l`).
pub fn homogeneous_component(st: &Structure, socle: &Submodule, k: usize, side: Side) -> Submodule {
    let r = st.ring;
    let e = st.dec.basic(k);
    let gens: Vec<Elem> = socle
        .generators()
        .iter()
        .map(|&s| r.act(side, s, e))
        .collect();
    ideal_generated(r, &gens, side)
}

pub fn homogeneous_components(st: &Structure, socle: &Submodule, side: Side) -> Vec<Submodule> {
    (0..st.height())
        .map(|k| homogeneous_component(st, socle, k, side))
        .collect()
}

pub fn is_kasch(st: &Structure, socles: &Socles, side: Side) -> bool {
    homogeneous_components(st, socles.on(side), side)
        .iter()
        .all(|c| !c.is_zero())
}

/// `e·S_r` (right) or `S_l·e` (left): the socle of the principal ideal `eR`
/// or `Re`.
pub fn principal_socle(ring: &FiniteRing, socle: &Submodule, e: Elem, side: Side) -> Submodule {
    Submodule::from_members(
        ring,
        image_set(ring, socle.iter(), |s| ring.act(side.opposite(), s, e)),
    )
}

pub fn is_qf2(st: &Structure, socles: &Socles, side: Side) -> bool {
    st.dec.idempotents.iter().all(|&e| {
        let soc = principal_socle(st.ring, socles.on(side), e, side);
        FiniteModule::from_ideal(st.ring, side, &soc)
            .map(|m| m.is_simple())
            .unwrap_or(false)
    })
}

pub fn is_minannihilator(ring: &FiniteRing, socles: &Socles, side: Side) -> bool {
    minimal_ideals(ring, socles.on(side), side)
        .iter()
        .all(|t| is_d_ideal(ring, t, side))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NakayamaFailure {
    NotQf2Right,
    NotQf2Left,
    NotKaschRight,
    NotKaschLeft,
    SoclesDiffer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NakayamaResult {
    /// `perm[k]` is the class of `soc(e_kR)`.
    Exists(Vec<usize>),
    Fails(NakayamaFailure),
}

impl NakayamaResult {
    pub fn permutation(&self) -> Option<&[usize]> {
        match self {
            NakayamaResult::Exists(p) => Some(p),
            NakayamaResult::Fails(_) => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, NakayamaResult::Exists(_))
    }
}

/// The Nakayama permutation, or the first reason it fails to exist.
///
/// Errors only on internal inconsistencies: a type map that is not a
/// permutation, or a left-side check that disagrees with the right side.
pub fn nakayama_permutation(st: &Structure, socles: &Socles) -> Result<NakayamaResult> {
    use NakayamaFailure::*;
    let checks: [(bool, NakayamaFailure); 5] = [
        (is_qf2(st, socles, Side::Right), NotQf2Right),
        (is_qf2(st, socles, Side::Left), NotQf2Left),
        (is_kasch(st, socles, Side::Right), NotKaschRight),
        (is_kasch(st, socles, Side::Left), NotKaschLeft),
        (socles.coincide(), SoclesDiffer),
    ];
    if let Some(&(_, reason)) = checks.iter().find(|c| !c.0) {
        return Ok(NakayamaResult::Fails(reason));
    }
    let n = st.height();
    let mut perm = Vec::with_capacity(n);
    for k in 0..n {
        let soc = principal_socle(st.ring, &socles.right, st.dec.basic(k), Side::Right);
        perm.push(st.ideal_type(&soc, Side::Right)?);
    }
    let mut seen = vec![false; n];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::Inconsistent(format!(
                "socle types {perm:?} do not form a permutation"
            )));
        }
    }
    for k in 0..n {
        let soc = principal_socle(st.ring, &socles.left, st.dec.basic(perm[k]), Side::Left);
        let t = st.ideal_type(&soc, Side::Left)?;
        if t != k {
            return Err(Error::Inconsistent(format!(
                "soc(Re_{}) has type {t}, expected {k}",
                perm[k]
            )));
        }
    }
    Ok(NakayamaResult::Exists(perm))
}

/// Smallest idempotent `f` with `f·S_r = I`.
pub fn idempotent_socle_form(
    ring: &FiniteRing,
    socle: &Submodule,
    ideal: &Submodule,
) -> Option<Elem> {
    idempotents(ring)
        .into_iter()
        .find(|&f| image_set(ring, socle.iter(), |s| ring.mul(f, s)) == *ideal.members())
}

/// Socle by its definition: the sum of all minimal one-sided ideals, found
/// among all cyclic ideals without using the radical.
pub fn socle_by_minimal_ideals(ring: &FiniteRing, side: Side) -> Submodule {
    let all = FiniteModule::regular(ring, side).whole();
    let mut sum = Submodule::zero(ring.size());
    for t in minimal_ideals(ring, &all, side) {
        sum = sum.sum(ring, &t);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{build_formal_matrix, BimoduleSpec, FormalMatrixSpec};
    use crate::local::{make_local, ExtModule, LocalRingSpec};

    fn k() -> LocalRingSpec {
        LocalRingSpec::gf(2)
    }

    fn t2() -> FiniteRing {
        build_formal_matrix(&FormalMatrixSpec::new(
            vec![k(), k()],
            vec![
                vec![BimoduleSpec::Corner, BimoduleSpec::zero_product(k())],
                vec![BimoduleSpec::Zero, BimoduleSpec::Corner],
            ],
        ))
        .unwrap()
    }

    fn wood_basic() -> FormalMatrixSpec {
        let l = BimoduleSpec::zero_product(k());
        FormalMatrixSpec::new(
            vec![k(), k()],
            vec![
                vec![BimoduleSpec::Corner, l.clone()],
                vec![l, BimoduleSpec::Corner],
            ],
        )
    }

    fn b3() -> FiniteRing {
        let e = BimoduleSpec::zero_product(k());
        let (z, c) = (BimoduleSpec::Zero, BimoduleSpec::Corner);
        build_formal_matrix(&FormalMatrixSpec::new(
            vec![k(), k(), k()],
            vec![
                vec![c.clone(), e.clone(), z.clone()],
                vec![z.clone(), c.clone(), e.clone()],
                vec![e, z, c],
            ],
        ))
        .unwrap()
    }

    fn z4() -> FiniteRing {
        make_local(&LocalRingSpec::Zpk { p: 2, k: 2 }).unwrap()
    }

    /// Named matrix units of T2.
    fn t2_units(r: &FiniteRing) -> (Elem, Elem, Elem) {
        let l = r.layout().unwrap();
        (l.single(0, 0, 1), l.single(0, 1, 1), l.single(1, 1, 1))
    }

    fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
        v.sort_unstable();
        v
    }

    #[test]
    fn annihilators() {
        let z = z4();
        assert_eq!(annihilator(&z, &[2], Side::Left).to_vec(), vec![0, 2]);
        assert_eq!(annihilator(&z, &[0], Side::Left).len(), 4);
        assert_eq!(
            annihilator(&z, &z.all_elements(), Side::Left).to_vec(),
            vec![0]
        );
    }

    #[test]
    fn socles_of_small_rings() {
        let z = z4();
        let s = Structure::analyze(&z).unwrap();
        let soc = socles(&z, &s.radical);
        assert_eq!(soc.right.to_vec(), vec![0, 2]);
        assert!(soc.coincide());

        let t = t2();
        let (e11, e12, e22) = t2_units(&t);
        let s = Structure::analyze(&t).unwrap();
        let soc = socles(&t, &s.radical);
        assert_eq!(
            soc.right.to_vec(),
            sorted(vec![0, e12, e22, t.add(e12, e22)])
        );
        assert_eq!(
            soc.left.to_vec(),
            sorted(vec![0, e11, e12, t.add(e11, e12)])
        );
        assert!(!soc.coincide());

        let b = b3();
        let s = Structure::analyze(&b).unwrap();
        let soc = socles(&b, &s.radical);
        assert!(soc.coincide());
        assert_eq!(soc.right, s.radical);
        assert_eq!(soc.right.len(), 8);

        for r in [z, t, b, build_formal_matrix(&wood_basic()).unwrap()] {
            let s = Structure::analyze(&r).unwrap();
            let soc = socles(&r, &s.radical);
            assert_eq!(soc.right, socle_by_minimal_ideals(&r, Side::Right));
            assert_eq!(soc.left, socle_by_minimal_ideals(&r, Side::Left));
        }
    }

    #[test]
    fn components() {
        let t = t2();
        let s = Structure::analyze(&t).unwrap();
        let soc = socles(&t, &s.radical);
        let comps = homogeneous_components(&s, &soc.right, Side::Right);
        // class 0 is E11, whose simple module does not embed
        let e11 = t2_units(&t).0;
        assert_eq!(s.dec.basic(0), e11);
        assert!(comps[0].is_zero());
        assert_eq!(comps[1], soc.right);
        assert!(!is_kasch(&s, &soc, Side::Right));

        let w = build_formal_matrix(&wood_basic()).unwrap();
        let s = Structure::analyze(&w).unwrap();
        let soc = socles(&w, &s.radical);
        let comps = homogeneous_components(&s, &soc.right, Side::Right);
        assert!(comps.iter().all(|c| c.len() == 2));
        assert_eq!(comps[0].sum(&w, &comps[1]), soc.right);
        assert_eq!(comps[0].intersection(&w, &comps[1]).len(), 1);
        for c in &comps {
            assert!(crate::ideal::is_ideal(&w, c, Side::Both));
        }
        assert_eq!(minimal_ideals(&w, &soc.right, Side::Right).len(), 2);
    }

    #[test]
    fn qf2() {
        let t = t2();
        let s = Structure::analyze(&t).unwrap();
        let soc = socles(&t, &s.radical);
        assert!(is_qf2(&s, &soc, Side::Right));

        let ext = make_local(&LocalRingSpec::TrivialExt {
            base: Box::new(k()),
            module: ExtModule::Power(2),
        })
        .unwrap();
        let s = Structure::analyze(&ext).unwrap();
        assert_eq!(s.radical.len(), 4);
        let soc = socles(&ext, &s.radical);
        assert!(!is_qf2(&s, &soc, Side::Right));
        assert!(!is_qf2(&s, &soc, Side::Left));

        let b = b3();
        let s = Structure::analyze(&b).unwrap();
        let soc = socles(&b, &s.radical);
        assert!(is_qf2(&s, &soc, Side::Right) && is_qf2(&s, &soc, Side::Left));
    }

    #[test]
    fn nakayama() {
        let t = t2();
        let s = Structure::analyze(&t).unwrap();
        let soc = socles(&t, &s.radical);
        assert_eq!(
            nakayama_permutation(&s, &soc).unwrap(),
            NakayamaResult::Fails(NakayamaFailure::NotKaschRight)
        );

        let b = b3();
        let s = Structure::analyze(&b).unwrap();
        let soc = socles(&b, &s.radical);
        let perm = nakayama_permutation(&s, &soc).unwrap();
        let p = perm.permutation().unwrap();
        // a 3-cycle: no fixed points and p∘p∘p = id
        assert!((0..3).all(|k| p[k] != k && p[p[p[k]]] == k));
        // soc(e1·B3) is E12, of the type of the second corner
        let l = b.layout().unwrap();
        let first = s
            .dec
            .idempotents
            .iter()
            .position(|&e| e == l.diag_unit(0))
            .unwrap();
        let second = s
            .dec
            .idempotents
            .iter()
            .position(|&e| e == l.diag_unit(1))
            .unwrap();
        assert_eq!(p[first], second);

        let wood = build_formal_matrix(&wood_basic().with_expand(vec![2, 1])).unwrap();
        let s = Structure::analyze(&wood).unwrap();
        let soc = socles(&wood, &s.radical);
        assert_eq!(
            nakayama_permutation(&s, &soc).unwrap(),
            NakayamaResult::Exists(vec![1, 0])
        );
    }

    #[test]
    fn d_ideals() {
        let z = z4();
        let two = annihilator(&z, &[2], Side::Left);
        assert!(is_d_ideal(&z, &two, Side::Right));
        assert!(is_d_ideal(&z, &Submodule::zero(4), Side::Right));
        assert!(is_d_ideal(
            &z,
            &FiniteModule::regular(&z, Side::Right).whole(),
            Side::Right
        ));

        let t = t2();
        let (e11, e12, _) = t2_units(&t);
        let i = ideal_generated(&t, &[e12], Side::Right);
        assert_eq!(i.to_vec(), vec![0, e12]);
        let rl = double_annihilator(&t, &i, Side::Right);
        assert_eq!(rl.to_vec(), sorted(vec![0, e11, e12, t.add(e11, e12)]));
        assert!(!is_d_ideal(&t, &i, Side::Right));
    }

    #[test]
    fn minannihilator() {
        let z = z4();
        let s = Structure::analyze(&z).unwrap();
        let soc = socles(&z, &s.radical);
        assert!(
            is_minannihilator(&z, &soc, Side::Right) && is_minannihilator(&z, &soc, Side::Left)
        );
        assert_eq!(minimal_ideals(&z, &soc.right, Side::Right).len(), 1);

        let t = t2();
        let s = Structure::analyze(&t).unwrap();
        let soc = socles(&t, &s.radical);
        assert!(!is_minannihilator(&t, &soc, Side::Right));

        let wood = build_formal_matrix(&wood_basic().with_expand(vec![2, 1])).unwrap();
        let s = Structure::analyze(&wood).unwrap();
        let soc = socles(&wood, &s.radical);
        assert!(
            is_minannihilator(&wood, &soc, Side::Right)
                && is_minannihilator(&wood, &soc, Side::Left)
        );
    }

    #[test]
    fn socle_forms() {
        let w = build_formal_matrix(&wood_basic()).unwrap();
        let s = Structure::analyze(&w).unwrap();
        let soc = socles(&w, &s.radical);
        assert_eq!(
            idempotent_socle_form(&w, &soc.right, &Submodule::zero(16)),
            Some(0)
        );
        let f = idempotent_socle_form(&w, &soc.right, &soc.right).unwrap();
        assert!(w.is_idempotent(f));
        let comps = homogeneous_components(&s, &soc.right, Side::Right);
        let f = idempotent_socle_form(&w, &soc.right, &comps[0]).unwrap();
        assert_eq!(principal_socle(&w, &soc.right, f, Side::Right), comps[0]);
    }
}
