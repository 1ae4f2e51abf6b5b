//! Jacobson radical, primitive decomposition of unity, top profile and the
//! simple modules `V_k = e_kR / e_kJ`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal::corner_ring;
use crate::ideal::{image_set, Submodule};
use crate::module::FiniteModule;
use crate::ring::{Elem, FiniteRing, Side};

/// Largest `|e_iRe_j|·|e_jRe_i|` the isomorphism witness search accepts.
pub const WITNESS_SEARCH_BOUND: usize = 1 << 16;

/// `J(R) = { x : 1 − yx is a unit for every y }`.
pub fn jacobson_radical(ring: &FiniteRing) -> Submodule {
    let units = ring.units();
    let one = ring.one();
    let mut members = FixedBitSet::with_capacity(ring.size());
    for x in ring.elements() {
        if units.contains(x as usize) && ring.size() > 1 {
            continue;
        }
        if ring
            .elements()
            .all(|y| units.contains(ring.sub(one, ring.mul(y, x)) as usize))
        {
            members.insert(x as usize);
        }
    }
    let j = Submodule::from_members(ring, members);
    debug_assert!(crate::ideal::is_ideal(ring, &j, Side::Both));
    j
}

pub fn idempotents(ring: &FiniteRing) -> Vec<Elem> {
    ring.elements().filter(|&e| ring.is_idempotent(e)).collect()
}

/// Idempotents of the corner `eRe`, given all idempotents of the ring.
fn corner_idempotents<'a>(
    ring: &'a FiniteRing,
    e: Elem,
    all: &'a [Elem],
) -> impl Iterator<Item = Elem> + 'a {
    all.iter()
        .copied()
        .filter(move |&f| ring.mul(e, f) == f && ring.mul(f, e) == f)
}

/// Whether `0` and `e` are the only idempotents of `eRe`.
pub fn is_primitive(ring: &FiniteRing, e: Elem) -> bool {
    e != 0 && ring.is_idempotent(e) && corner_idempotents(ring, e, &idempotents(ring)).count() == 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveDecomposition {
    /// `e_1..e_m`; the first `n` are the basic set, one per class.
    pub idempotents: Vec<Elem>,
    /// Class of each idempotent.
    pub class_of: Vec<usize>,
    /// Members of each class, as positions in `idempotents`.
    pub classes: Vec<Vec<usize>>,
}

impl PrimitiveDecomposition {
    /// `m`.
    pub fn order(&self) -> usize {
        self.idempotents.len()
    }

    /// `n`.
    pub fn height(&self) -> usize {
        self.classes.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Basic idempotent `e_k`.
    pub fn basic(&self, k: usize) -> Elem {
        self.idempotents[k]
    }

    pub fn basic_set(&self) -> &[Elem] {
        &self.idempotents[..self.height()]
    }

    /// Sum of the idempotents at the given positions.
    pub fn sum_of(&self, ring: &FiniteRing, positions: impl IntoIterator<Item = usize>) -> Elem {
        positions
            .into_iter()
            .fold(0, |acc, i| ring.add(acc, self.idempotents[i]))
    }
}

/// `eRf` as a sorted element list.
pub fn two_sided_corner(ring: &FiniteRing, e: Elem, f: Elem) -> Vec<Elem> {
    image_set(ring, ring.elements(), |x| ring.mul(ring.mul(e, x), f))
        .ones()
        .map(|x| x as Elem)
        .collect()
}

/// `x ∈ eRf`, `y ∈ fRe` with `xy = e` and `yx = f`, if any.
pub fn isomorphism_witness(ring: &FiniteRing, e: Elem, f: Elem) -> Result<Option<(Elem, Elem)>> {
    let xs = two_sided_corner(ring, e, f);
    let ys = two_sided_corner(ring, f, e);
    if xs.len() * ys.len() > WITNESS_SEARCH_BOUND {
        return Err(Error::SearchTooLarge(format!(
            "{}×{} candidate pairs for an isomorphism witness",
            xs.len(),
            ys.len()
        )));
    }
    for &x in &xs {
        for &y in &ys {
            if ring.mul(x, y) == e && ring.mul(y, x) == f {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Orthogonal primitive idempotents summing to `1`, found by repeatedly
/// peeling off the smallest primitive idempotent of the remaining corner,
/// then grouped by isomorphism of `eR`.
pub fn primitive_decomposition(ring: &FiniteRing) -> Result<PrimitiveDecomposition> {
    let all = idempotents(ring);
    let mut primitive: Vec<Option<bool>> = vec![None; all.len()];
    let mut peeled = Vec::new();
    let mut rest = ring.one();
    while rest != 0 {
        let mut found = None;
        for (pos, &g) in all.iter().enumerate() {
            if g == 0 || ring.mul(rest, g) != g || ring.mul(g, rest) != g {
                continue;
            }
            let is_prim = *primitive[pos]
                .get_or_insert_with(|| corner_idempotents(ring, g, &all).count() == 2);
            if is_prim {
                found = Some(g);
                break;
            }
        }
        let g = found.ok_or_else(|| {
            Error::Inconsistent("no primitive idempotent below a nonzero idempotent".into())
        })?;
        peeled.push(g);
        rest = ring.sub(rest, g);
    }

    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for &e in &peeled {
        let mut placed = false;
        for class in classes.iter_mut() {
            if isomorphism_witness(ring, class[0], e)?.is_some() {
                class.push(e);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![e]);
        }
    }

    let mut idempotents: Vec<Elem> = classes.iter().map(|c| c[0]).collect();
    let mut class_of: Vec<usize> = (0..classes.len()).collect();
    let mut members: Vec<Vec<usize>> = (0..classes.len()).map(|k| vec![k]).collect();
    for (k, class) in classes.iter().enumerate() {
        for &e in &class[1..] {
            members[k].push(idempotents.len());
            idempotents.push(e);
            class_of.push(k);
        }
    }
    Ok(PrimitiveDecomposition {
        idempotents,
        class_of,
        classes: members,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopProfile {
    /// `(μ_k, |m_k|)` per class.
    pub blocks: Vec<(usize, usize)>,
}

impl TopProfile {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.0).collect()
    }

    pub fn field_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.1).collect()
    }

    /// `|V_k| = |m_k|^μ_k`.
    pub fn simple_sizes(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|&(mu, q)| q.pow(mu as u32))
            .collect()
    }

    /// `|top(R)| = Π |m_k|^(μ_k²)`.
    pub fn top_size(&self) -> usize {
        self.blocks
            .iter()
            .map(|&(mu, q)| q.pow((mu * mu) as u32))
            .product()
    }
}

/// `|m_k| = |e_kRe_k| / |e_kJe_k|`, checked against `|R| / |J|`.
pub fn top_profile(
    ring: &FiniteRing,
    dec: &PrimitiveDecomposition,
    radical: &Submodule,
) -> Result<TopProfile> {
    let mut blocks = Vec::with_capacity(dec.height());
    for (k, mu) in dec.multiplicities().into_iter().enumerate() {
        let e = dec.basic(k);
        let corner =
            image_set(ring, ring.elements(), |x| ring.mul(ring.mul(e, x), e)).count_ones(..);
        let corner_rad =
            image_set(ring, radical.iter(), |x| ring.mul(ring.mul(e, x), e)).count_ones(..);
        if corner % corner_rad != 0 {
            return Err(Error::ProfileInconsistent(format!(
                "|e_kRe_k| = {corner} is not a multiple of |e_kJe_k| = {corner_rad}"
            )));
        }
        blocks.push((mu, corner / corner_rad));
    }
    let profile = TopProfile { blocks };
    let expected = ring.size() / radical.len();
    if profile.top_size() != expected || ring.size() % radical.len() != 0 {
        return Err(Error::ProfileInconsistent(format!(
            "blocks give |top| = {}, but |R|/|J| = {expected}",
            profile.top_size()
        )));
    }
    Ok(profile)
}

/// Everything the predicates need about one ring, computed once.
#[derive(Debug, Clone)]
pub struct Structure<'r> {
    pub ring: &'r FiniteRing,
    pub radical: Submodule,
    pub dec: PrimitiveDecomposition,
    pub profile: TopProfile,
}

impl<'r> Structure<'r> {
    pub fn analyze(ring: &'r FiniteRing) -> Result<Structure<'r>> {
        let radical = jacobson_radical(ring);
        let dec = primitive_decomposition(ring)?;
        let profile = top_profile(ring, &dec, &radical)?;
        Ok(Structure {
            ring,
            radical,
            dec,
            profile,
        })
    }

    pub fn height(&self) -> usize {
        self.dec.height()
    }

    /// `eR` (right) or `Re` (left).
    pub fn principal(&self, e: Elem, side: Side) -> Submodule {
        let r = self.ring;
        let set = image_set(r, r.elements(), |x| r.act(side, e, x));
        Submodule::from_members(r, set)
    }

    /// `V_k = e_kR / e_kJ`, or `V'_k = Re_k / Je_k` on the left.
    pub fn simple_module(&self, k: usize, side: Side) -> FiniteModule<'r> {
        self.top_of(self.dec.basic(k), side)
    }

    /// Class of a primitive idempotent: the type of `fR/fJ`.
    pub fn idempotent_class(&self, f: Elem) -> Result<usize> {
        self.simple_type(&self.top_of(f, Side::Right))
    }

    /// `eR / eJ` (right) or `Re / Je` (left).
    pub fn top_of(&self, e: Elem, side: Side) -> FiniteModule<'r> {
        let r = self.ring;
        let top = self.principal(e, side);
        let bottom =
            Submodule::from_members(r, image_set(r, self.radical.iter(), |x| r.act(side, e, x)));
        FiniteModule::subquotient(r, side, &top, &bottom).expect("e_kJ ⊆ e_kR are one-sided ideals")
    }

    /// The unique basic index `l` with `T·e_l ≠ 0` (`e_l·T ≠ 0` for left
    /// modules) of a simple module `T`.
    pub fn simple_type(&self, t: &FiniteModule) -> Result<usize> {
        if !t.is_simple() {
            return Err(Error::NotSimple);
        }
        let hits: Vec<usize> = (0..self.height())
            .filter(|&l| t.elements().any(|m| t.act(m, self.dec.basic(l)) != 0))
            .collect();
        match hits.as_slice() {
            [l] => Ok(*l),
            _ => Err(Error::AmbiguousType(hits.len())),
        }
    }

    /// Type of a minimal one-sided ideal.
    pub fn ideal_type(&self, ideal: &Submodule, side: Side) -> Result<usize> {
        let m = FiniteModule::from_ideal(self.ring, side, ideal)?;
        self.simple_type(&m)
    }

    /// Multiplicity of each `V_k` in a semisimple module, read off the sizes
    /// of its homogeneous components `M·e_k·R`.
    pub fn semisimple_multiplicities(&self, m: &FiniteModule) -> Result<Vec<usize>> {
        let gens = m.whole().generators().to_vec();
        for &g in &gens {
            for &a in self.radical.generators() {
                if m.act(g, a) != 0 {
                    return Err(Error::NotSemisimple);
                }
            }
        }
        let mut counts = Vec::with_capacity(self.height());
        let mut product = 1usize;
        for (k, &(mu, q)) in self.profile.blocks.iter().enumerate() {
            let e = self.dec.basic(k);
            let images: Vec<u32> = m.elements().map(|x| m.act(x, e)).collect();
            let size = m.generate(&images).len();
            product *= size;
            let length = exact_log(size, q).ok_or(Error::NonIntegralLength { size, base: q })?;
            if length % mu != 0 {
                return Err(Error::NonIntegralLength {
                    size,
                    base: q.pow(mu as u32),
                });
            }
            counts.push(length / mu);
        }
        if product != m.size() {
            return Err(Error::Inconsistent(format!(
                "homogeneous components of a module of size {} multiply to {product}",
                m.size()
            )));
        }
        Ok(counts)
    }

    /// Sum of the basic idempotents.
    pub fn basic_idempotent(&self) -> Elem {
        self.dec.sum_of(self.ring, 0..self.height())
    }
}

/// `Some(k)` when `size = base^k`.
pub fn exact_log(size: usize, base: usize) -> Option<usize> {
    if base < 2 {
        return (size == 1).then_some(0);
    }
    let mut rest = size;
    let mut k = 0;
    while rest > 1 {
        if rest % base != 0 {
            return None;
        }
        rest /= base;
        k += 1;
    }
    (rest == 1).then_some(k)
}

/// The corner cut out by a basic set of idempotents; all its multiplicities
/// are `1`.
pub fn basic_ring(ring: &FiniteRing) -> Result<FiniteRing> {
    let dec = primitive_decomposition(ring)?;
    corner_ring(ring, dec.sum_of(ring, 0..dec.height()))
}
