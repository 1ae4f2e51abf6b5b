//! Additive subgroups, submodules and one-sided ideals.

use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::ring::{Elem, FiniteRing, Side};

/// A finite abelian group on dense indices with `0` as identity.
pub trait Carrier {
    fn card(&self) -> usize;
    fn plus(&self, a: u32, b: u32) -> u32;
}

impl Carrier for FiniteRing {
    fn card(&self) -> usize {
        self.size()
    }
    fn plus(&self, a: u32, b: u32) -> u32 {
        self.add(a, b)
    }
}

/// Subgroup of a carrier, stored as a bitset plus an additive generating set.
///
/// Equality and hashing only look at the member set.
#[derive(Clone, Debug)]
pub struct Submodule {
    members: FixedBitSet,
    gens: Vec<u32>,
    len: usize,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Submodule {
    pub fn zero(card: usize) -> Submodule {
        let mut members = FixedBitSet::with_capacity(card);
        members.insert(0);
        Submodule {
            members,
            gens: Vec::new(),
            len: 1,
        }
    }

    /// Wrap a member set already known to be a subgroup; generators are
    /// recomputed greedily.
    pub fn from_members<C: Carrier + ?Sized>(carrier: &C, members: FixedBitSet) -> Submodule {
        let elems: Vec<u32> = members.ones().map(|x| x as u32).collect();
        let sub = span(carrier, &elems);
        debug_assert_eq!(sub.members, members, "member set is not a subgroup");
        sub
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.len == 1
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|x| x as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Add `g` to the subgroup; returns whether anything changed.
    pub fn extend<C: Carrier + ?Sized>(&mut self, carrier: &C, g: u32) -> bool {
        if self.contains(g) {
            return false;
        }
        let base: Vec<u32> = self.iter().collect();
        let mut coset = g;
        while !self.contains(coset) {
            for &h in &base {
                let x = carrier.plus(h, coset);
                self.members.insert(x as usize);
            }
            coset = carrier.plus(coset, g);
        }
        self.len = self.members.count_ones(..);
        self.gens.push(g);
        true
    }

    pub fn sum<C: Carrier + ?Sized>(&self, carrier: &C, other: &Submodule) -> Submodule {
        let mut out = self.clone();
        for &g in &other.gens {
            out.extend(carrier, g);
        }
        out
    }

    pub fn intersection<C: Carrier + ?Sized>(&self, carrier: &C, other: &Submodule) -> Submodule {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Submodule::from_members(carrier, members)
    }
}

/// Additive span of `gens`.
pub fn span<C: Carrier + ?Sized>(carrier: &C, gens: &[u32]) -> Submodule {
    let mut sub = Submodule::zero(carrier.card());
    for &g in gens {
        sub.extend(carrier, g);
    }
    sub
}

/// Smallest subgroup containing `gens` and closed under `act(x, a)` for
/// every `a` in `by`.
pub fn closure<C, F>(carrier: &C, gens: &[u32], by: &[Elem], act: F) -> Submodule
where
    C: Carrier + ?Sized,
    F: Fn(u32, Elem) -> u32,
{
    let mut sub = span(carrier, gens);
    let mut queue: Vec<u32> = sub.generators().to_vec();
    while let Some(h) = queue.pop() {
        for &a in by {
            let p = act(h, a);
            if sub.extend(carrier, p) {
                queue.push(p);
            }
        }
    }
    sub
}

/// Right, left or two-sided ideal generated by `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[Elem], side: Side) -> Submodule {
    let by = ring.additive_generators();
    match side {
        Side::Right => closure(ring, gens, by, |x, a| ring.mul(x, a)),
        Side::Left => closure(ring, gens, by, |x, a| ring.mul(a, x)),
        Side::Both => {
            let mut sub = span(ring, gens);
            let mut queue: Vec<u32> = sub.generators().to_vec();
            while let Some(h) = queue.pop() {
                for &a in by {
                    for p in [ring.mul(h, a), ring.mul(a, h)] {
                        if sub.extend(ring, p) {
                            queue.push(p);
                        }
                    }
                }
            }
            sub
        }
    }
}

/// Whether `sub` is closed under multiplication by the ring on `side`.
pub fn is_ideal(ring: &FiniteRing, sub: &Submodule, side: Side) -> bool {
    let by = ring.additive_generators();
    sub.generators().iter().all(|&g| {
        by.iter().all(|&a| match side {
            Side::Right => sub.contains(ring.mul(g, a)),
            Side::Left => sub.contains(ring.mul(a, g)),
            Side::Both => sub.contains(ring.mul(g, a)) && sub.contains(ring.mul(a, g)),
        })
    })
}

/// `{ f(x) : x ∈ set }` as a bitset; used for `eR`, `Re`, `eRe` and friends.
pub fn image_set(
    ring: &FiniteRing,
    set: impl Iterator<Item = Elem>,
    f: impl Fn(Elem) -> Elem,
) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(ring.size());
    for x in set {
        out.insert(f(x) as usize);
    }
    out
}
