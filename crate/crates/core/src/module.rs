//! Finite one-sided modules, realized as subquotients `N/K` of the regular
//! module, where `K ⊆ N` are one-sided ideals on the module's side.
//!
//! Every module the library needs (`eR`, `V_k = e_kR/e_kJ`, `top(R)`,
//! `S_r`, `R/l(I)`, Loewy layers) has this shape. Cosets are represented
//! by their smallest ring index, and module elements are numbered densely
//! in increasing order of representative, so the zero coset is `0`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::{closure, Carrier, Submodule};
use crate::ring::{Elem, FiniteRing, Side};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FiniteModule<'r> {
    ring: &'r FiniteRing,
    side: Side,
    top: FixedBitSet,
    bottom: FixedBitSet,
    reps: Vec<Elem>,
    index_of: Vec<u32>,
}

impl Carrier for FiniteModule<'_> {
    fn card(&self) -> usize {
        self.reps.len()
    }
    fn plus(&self, a: u32, b: u32) -> u32 {
        self.add(a, b)
    }
}

impl<'r> FiniteModule<'r> {
    /// `R_R` or `_RR`.
    pub fn regular(ring: &'r FiniteRing, side: Side) -> FiniteModule<'r> {
        let mut top = FixedBitSet::with_capacity(ring.size());
        top.insert_range(..);
        let mut bottom = FixedBitSet::with_capacity(ring.size());
        bottom.insert(0);
        Self::assemble(ring, side, top, bottom)
    }

    /// The one-sided ideal `ideal` viewed as a module.
    pub fn from_ideal(
        ring: &'r FiniteRing,
        side: Side,
        ideal: &Submodule,
    ) -> Result<FiniteModule<'r>> {
        Self::subquotient(ring, side, ideal, &Submodule::zero(ring.size()))
    }

    /// `top/bottom` for one-sided ideals `bottom ⊆ top` on `side`.
    pub fn subquotient(
        ring: &'r FiniteRing,
        side: Side,
        top: &Submodule,
        bottom: &Submodule,
    ) -> Result<FiniteModule<'r>> {
        assert!(side != Side::Both, "modules are one-sided");
        if !bottom.is_subset(top)
            || !crate::ideal::is_ideal(ring, top, side)
            || !crate::ideal::is_ideal(ring, bottom, side)
        {
            return Err(Error::NotSubmodule);
        }
        Ok(Self::assemble(
            ring,
            side,
            top.members().clone(),
            bottom.members().clone(),
        ))
    }

    fn assemble(
        ring: &'r FiniteRing,
        side: Side,
        top: FixedBitSet,
        bottom: FixedBitSet,
    ) -> FiniteModule<'r> {
        let bottom_elems: Vec<Elem> = bottom.ones().map(|x| x as Elem).collect();
        let mut index_of = vec![NONE; ring.size()];
        let mut reps = Vec::new();
        for x in top.ones() {
            if index_of[x] != NONE {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(x as Elem);
            for &k in &bottom_elems {
                index_of[ring.add(x as Elem, k) as usize] = idx;
            }
        }
        FiniteModule {
            ring,
            side,
            top,
            bottom,
            reps,
            index_of,
        }
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.reps.len() == 1
    }

    /// Smallest ring element of the coset.
    pub fn representative(&self, m: u32) -> Elem {
        self.reps[m as usize]
    }

    /// Coset index of a ring element of the top ideal.
    pub fn class_of(&self, x: Elem) -> Option<u32> {
        match self.index_of[x as usize] {
            NONE => None,
            i => Some(i),
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.index_of[self.ring.add(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    /// Action of the ring element `r` on the module element `m`
    /// (`m·r` for right modules, `r·m` for left modules).
    #[inline]
    pub fn act(&self, m: u32, r: Elem) -> u32 {
        self.index_of[self.ring.act(self.side, self.reps[m as usize], r) as usize]
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.reps.len() as u32
    }

    /// Submodule generated by `gens` (module indices).
    pub fn generate(&self, gens: &[u32]) -> Submodule {
        closure(self, gens, self.ring.additive_generators(), |m, a| {
            self.act(m, a)
        })
    }

    pub fn whole(&self) -> Submodule {
        let all: Vec<u32> = self.elements().collect();
        crate::ideal::span(self, &all)
    }

    /// Ring-level preimage of a submodule: the ideal `L` with `K ⊆ L ⊆ N`.
    pub fn preimage(&self, sub: &Submodule) -> Submodule {
        let mut members = FixedBitSet::with_capacity(self.ring.size());
        for x in self.top.ones() {
            if sub.contains(self.index_of[x]) {
                members.insert(x);
            }
        }
        Submodule::from_members(self.ring, members)
    }

    /// Image of a ring ideal contained in the top ideal.
    pub fn image(&self, ideal: &Submodule) -> Submodule {
        let mut members = FixedBitSet::with_capacity(self.size());
        for x in ideal.iter() {
            if let Some(i) = self.class_of(x) {
                members.insert(i as usize);
            }
        }
        Submodule::from_members(self, members)
    }

    /// A submodule viewed as a module in its own right.
    pub fn submodule_module(&self, sub: &Submodule) -> FiniteModule<'r> {
        let pre = self.preimage(sub);
        Self::assemble(
            self.ring,
            self.side,
            pre.members().clone(),
            self.bottom.clone(),
        )
    }

    /// `{ m : m·a = 0 for all a ∈ set }` (mirrored for left modules).
    pub fn annihilated_by(&self, gens: &[Elem]) -> Submodule {
        let mut members = FixedBitSet::with_capacity(self.size());
        for m in self.elements() {
            if gens.iter().all(|&a| self.act(m, a) == 0) {
                members.insert(m as usize);
            }
        }
        Submodule::from_members(self, members)
    }

    /// Whether some nonzero proper submodule exists (brute force on cyclic
    /// submodules).
    pub fn is_simple(&self) -> bool {
        self.size() > 1
            && self
                .elements()
                .skip(1)
                .all(|m| self.generate(&[m]).len() == self.size())
    }
}

/// Coset module `M/N`.
pub fn quotient_module<'r>(module: &FiniteModule<'r>, sub: &Submodule) -> Result<FiniteModule<'r>> {
    if module.generate(sub.generators()) != *sub {
        return Err(Error::NotSubmodule);
    }
    let pre = module.preimage(sub);
    Ok(FiniteModule::assemble(
        module.ring,
        module.side,
        module.top.clone(),
        pre.members().clone(),
    ))
}
