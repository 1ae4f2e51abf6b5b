//! Submodule lattices of small modules, maximal one-sided ideals, and the
//! annihilator anti-isomorphism between socle and top lattices.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, Submodule};
use crate::module::FiniteModule;
use crate::ring::Side;
use crate::socle::{annihilator_of, NakayamaResult, Socles};
use crate::structure::{idempotents, is_primitive, Structure};

pub const DEFAULT_LATTICE_BOUND: usize = 1 << 8;

/// All submodules of a module, sorted by size, with the covering relation
/// as `(lower, upper)` index pairs.
#[derive(Debug, Clone)]
pub struct LatticeSnapshot {
    pub side: Side,
    pub module_size: usize,
    pub submodules: Vec<Submodule>,
    pub covers: Vec<(usize, usize)>,
}

impl LatticeSnapshot {
    pub fn len(&self) -> usize {
        self.submodules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.submodules.is_empty()
    }

    pub fn index_of(&self, sub: &Submodule) -> Option<usize> {
        self.submodules.iter().position(|s| s == sub)
    }

    /// Submodules covered by the whole module.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.len() - 1;
        self.covers
            .iter()
            .filter(|c| c.1 == top)
            .map(|c| c.0)
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.0 == 0)
            .map(|c| c.1)
            .collect()
    }
}

pub fn submodule_lattice(module: &FiniteModule, bound: usize) -> Result<LatticeSnapshot> {
    if module.size() > bound {
        return Err(Error::TooLarge {
            size: module.size(),
            bound,
        });
    }
    let mut cyclic: Vec<Submodule> = Vec::new();
    for m in module.elements().skip(1) {
        let c = module.generate(&[m]);
        if !cyclic.contains(&c) {
            cyclic.push(c);
        }
    }
    let zero = Submodule::zero(module.size());
    let mut seen: HashSet<Submodule> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    let mut extensions: Vec<(Submodule, Vec<Submodule>)> = Vec::new();
    while let Some(x) = queue.pop() {
        let mut ups = Vec::new();
        for c in &cyclic {
            if c.is_subset(&x) {
                continue;
            }
            let y = x.sum(module, c);
            if seen.insert(y.clone()) {
                queue.push(y.clone());
            }
            if !ups.contains(&y) {
                ups.push(y);
            }
        }
        extensions.push((x, ups));
    }
    extensions.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.to_vec().cmp(&b.0.to_vec()))
    });
    let index: HashMap<&Submodule, usize> = extensions
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (s, i))
        .collect();
    let mut covers = Vec::new();
    for (i, (_, ups)) in extensions.iter().enumerate() {
        for y in ups {
            if !ups.iter().any(|z| z != y && z.is_subset(y)) {
                covers.push((i, index[y]));
            }
        }
    }
    covers.sort_unstable();
    let submodules = extensions.into_iter().map(|(s, _)| s).collect();
    Ok(LatticeSnapshot {
        side: module.side(),
        module_size: module.size(),
        submodules,
        covers,
    })
}

/// One-sided ideals of the ring containing `J`, as preimages of the
/// submodules of the top.
pub fn ideals_above_radical(st: &Structure, side: Side, bound: usize) -> Result<Vec<Submodule>> {
    let top = top_module(st, side)?;
    let lattice = submodule_lattice(&top, bound)?;
    Ok(lattice.submodules.iter().map(|s| top.preimage(s)).collect())
}

/// Maximal one-sided ideals: preimages of the maximal submodules of the top
/// when the top is within `bound`, otherwise `(1 − f)R + J` (`R(1 − f) + J`)
/// over the primitive idempotents `f`.
pub fn maximal_ideals(st: &Structure, side: Side, bound: usize) -> Result<Vec<Submodule>> {
    let top = top_module(st, side)?;
    if top.size() > bound {
        return Ok(maximal_ideals_by_idempotents(st, side));
    }
    let lattice = submodule_lattice(&top, bound)?;
    Ok(lattice
        .coatoms()
        .into_iter()
        .map(|i| top.preimage(&lattice.submodules[i]))
        .collect())
}

pub fn maximal_ideals_by_idempotents(st: &Structure, side: Side) -> Vec<Submodule> {
    let ring = st.ring;
    let mut out: Vec<Submodule> = Vec::new();
    for f in idempotents(ring) {
        let g = ring.sub(ring.one(), f);
        if out.iter().any(|m| m.contains(g)) || !is_primitive(ring, f) {
            continue;
        }
        let mut gens = vec![g];
        gens.extend_from_slice(st.radical.generators());
        out.push(ideal_generated(ring, &gens, side));
    }
    out.sort_by_key(Submodule::to_vec);
    out
}

pub fn top_module<'r>(st: &Structure<'r>, side: Side) -> Result<FiniteModule<'r>> {
    let whole = FiniteModule::regular(st.ring, side).whole();
    FiniteModule::subquotient(st.ring, side, &whole, &st.radical)
}

/// Submodules of the socle on `side`, as ring ideals.
pub fn socle_ideals(
    st: &Structure,
    socles: &Socles,
    side: Side,
    bound: usize,
) -> Result<Vec<Submodule>> {
    let module = FiniteModule::from_ideal(st.ring, side, socles.on(side))?;
    let lattice = submodule_lattice(&module, bound)?;
    Ok(lattice
        .submodules
        .iter()
        .map(|s| module.preimage(s))
        .collect())
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub right_socle_nodes: usize,
    pub left_top_nodes: usize,
    pub left_socle_nodes: usize,
    pub right_top_nodes: usize,
    pub violation: Option<String>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `l` and `r` are mutually inverse, inclusion-reversing and
/// sum-to-intersection maps between the submodules of `soc` on `side` and
/// the opposite-side ideals above `J`. Returns the first violation.
fn check_pair(
    st: &Structure,
    socle: &[Submodule],
    above: &[Submodule],
    side: Side,
) -> Option<String> {
    let ring = st.ring;
    let ann = side.opposite();
    let above_set: HashSet<&Submodule> = above.iter().collect();
    let socle_index: HashMap<&Submodule, usize> =
        socle.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let images: Vec<Submodule> = socle.iter().map(|i| annihilator_of(ring, i, ann)).collect();
    for (i, img) in socle.iter().zip(&images) {
        if !above_set.contains(img) {
            return Some(format!(
                "{ann:?} annihilator of {:?} is not an ideal above J",
                i.to_vec()
            ));
        }
        if annihilator_of(ring, img, side) != *i {
            return Some(format!(
                "{:?} is not recovered from its annihilator",
                i.to_vec()
            ));
        }
    }
    for l in above {
        let back = annihilator_of(ring, l, side);
        if !socle_index.contains_key(&back) {
            return Some(format!("annihilator of {:?} leaves the socle", l.to_vec()));
        }
        if annihilator_of(ring, &back, ann) != *l {
            return Some(format!(
                "{:?} is not recovered from its annihilator",
                l.to_vec()
            ));
        }
    }
    for (a, ia) in socle.iter().zip(&images) {
        for (b, ib) in socle.iter().zip(&images) {
            if a.is_subset(b) && a != b && (!ib.is_subset(ia) || ia == ib) {
                return Some(format!(
                    "inclusion {:?} ⊂ {:?} is not reversed",
                    a.to_vec(),
                    b.to_vec()
                ));
            }
            let sum = a.sum(ring, b);
            let Some(&s) = socle_index.get(&sum) else {
                return Some(format!(
                    "socle submodules are not closed under {:?} + {:?}",
                    a.to_vec(),
                    b.to_vec()
                ));
            };
            if images[s] != ia.intersection(ring, ib) {
                return Some(format!(
                    "sum {:?} is not sent to an intersection",
                    sum.to_vec()
                ));
            }
        }
    }
    None
}

/// The anti-isomorphism check on both sides, without preconditions.
pub fn annihilator_duality(st: &Structure, socles: &Socles, bound: usize) -> Result<DualityReport> {
    let right_soc = socle_ideals(st, socles, Side::Right, bound)?;
    let left_top = ideals_above_radical(st, Side::Left, bound)?;
    let left_soc = socle_ideals(st, socles, Side::Left, bound)?;
    let right_top = ideals_above_radical(st, Side::Right, bound)?;
    let violation = check_pair(st, &right_soc, &left_top, Side::Right)
        .or_else(|| check_pair(st, &left_soc, &right_top, Side::Left));
    Ok(DualityReport {
        right_socle_nodes: right_soc.len(),
        left_top_nodes: left_top.len(),
        left_socle_nodes: left_soc.len(),
        right_top_nodes: right_top.len(),
        violation,
    })
}

/// As [`annihilator_duality`], for rings with a Nakayama permutation and
/// coinciding socles.
pub fn verify_annihilator_duality(
    st: &Structure,
    socles: &Socles,
    nakayama: &NakayamaResult,
    bound: usize,
) -> Result<DualityReport> {
    if !nakayama.exists() {
        return Err(Error::PreconditionUnmet("no Nakayama permutation".into()));
    }
    if !socles.coincide() {
        return Err(Error::PreconditionUnmet("socles differ".into()));
    }
    annihilator_duality(st, socles, bound)
}
