//! Finite rings on dense element indices.
//!
//! A [`FiniteRing`] stores its addition, negation and multiplication as
//! flat lookup tables over the indices `0..size`. Index `0` is always the
//! additive identity. Rings are immutable once built and are `Send + Sync`.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal::Layout;

/// Index of a ring element.
pub type Elem = u32;

/// Largest carrier the table representation accepts.
pub const MAX_RING_SIZE: usize = 1 << 13;

/// Rings up to this size get an exhaustive axiom check.
pub const EXHAUSTIVE_AXIOM_BOUND: usize = 256;

/// Number of random triples checked above [`EXHAUSTIVE_AXIOM_BOUND`].
pub const RANDOM_AXIOM_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    TableBuilt,
    FormalMatrixBuilt,
}

/// Which side a ring acts on, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Both => Side::Both,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "two-sided",
        })
    }
}

#[derive(Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: Elem,
    provenance: Provenance,
    layout: Option<Arc<Layout>>,
    additive_gens: Vec<Elem>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("size", &self.size)
            .field("one", &self.one)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl FiniteRing {
    /// Assemble a ring from tables without checking the ring axioms.
    ///
    /// Callers guarantee the axioms structurally (formal matrix rings,
    /// corners of existing rings).
    pub(crate) fn from_tables_unchecked(
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        one: Elem,
        provenance: Provenance,
        layout: Option<Arc<Layout>>,
    ) -> FiniteRing {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        let mut neg = vec![0u16; size];
        for x in 0..size {
            let row = &add[x * size..(x + 1) * size];
            neg[x] = row.iter().position(|&s| s == 0).unwrap_or(0) as u16;
        }
        let mut ring = FiniteRing {
            size,
            add,
            mul,
            neg,
            one,
            provenance,
            layout,
            additive_gens: Vec::new(),
        };
        ring.additive_gens = crate::ideal::span(&ring, &ring.all_elements())
            .generators()
            .to_vec();
        ring
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a·b` for `side == Right` (module element on the left), `b·a` for `Left`.
    #[inline]
    pub fn act(&self, side: Side, a: Elem, b: Elem) -> Elem {
        match side {
            Side::Left => self.mul(b, a),
            _ => self.mul(a, b),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.size as Elem
    }

    pub fn all_elements(&self) -> Vec<Elem> {
        self.elements().collect()
    }

    /// Greedy additive generating set, smallest indices first.
    pub fn additive_generators(&self) -> &[Elem] {
        &self.additive_gens
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    /// `{ x : ∃y, xy = 1 }`; one-sided inverses are two-sided in a finite ring.
    pub fn units(&self) -> FixedBitSet {
        let mut units = FixedBitSet::with_capacity(self.size);
        let one = self.one as u16;
        for x in 0..self.size {
            if self.mul[x * self.size..(x + 1) * self.size].contains(&one) {
                units.insert(x);
            }
        }
        units
    }

    /// Exhaustive axiom check for `size ≤ exhaustive_bound`, otherwise
    /// `samples` random triples drawn from a seeded generator.
    pub fn validate_axioms(&self, exhaustive_bound: usize, samples: usize) -> Result<()> {
        self.check_group_and_unity()?;
        if self.size <= exhaustive_bound {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        self.check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1f1);
            let n = self.size as Elem;
            for _ in 0..samples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                self.check_triple(a, b, c)?;
            }
        }
        Ok(())
    }

    fn check_group_and_unity(&self) -> Result<()> {
        if self.size > 1 && self.one == 0 {
            return Err(Error::AxiomViolation {
                axiom: "zero ≠ one",
                witness: (0, 0, 0),
            });
        }
        for a in self.elements() {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return Err(Error::AxiomViolation {
                    axiom: "additive identity",
                    witness: (a, 0, 0),
                });
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::AxiomViolation {
                    axiom: "additive inverse",
                    witness: (a, 0, 0),
                });
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err(Error::AxiomViolation {
                    axiom: "multiplicative unity",
                    witness: (a, self.one, 0),
                });
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomViolation {
                        axiom: "additive commutativity",
                        witness: (a, b, 0),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, a: Elem, b: Elem, c: Elem) -> Result<()> {
        let fail = |axiom| {
            Err(Error::AxiomViolation {
                axiom,
                witness: (a, b, c),
            })
        };
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return fail("additive associativity");
        }
        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
            return fail("multiplicative associativity");
        }
        if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
            return fail("left distributivity");
        }
        if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
            return fail("right distributivity");
        }
        Ok(())
    }

    /// Two rings with the same tables (not an isomorphism test).
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.size == other.size
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    /// Label an element for diagnostics: matrix entries when a layout is
    /// attached, the raw index otherwise.
    pub fn describe(&self, x: Elem) -> String {
        match &self.layout {
            Some(layout) => layout.describe(x),
            None => x.to_string(),
        }
    }
}

/// Build a ring from explicit addition and multiplication tables.
///
/// Element `0` must be the additive identity. All axioms are verified
/// exhaustively, so this path is meant for small oracle rings.
pub fn build_table_ring(
    add_table: &[Vec<Elem>],
    mul_table: &[Vec<Elem>],
    one: Elem,
) -> Result<FiniteRing> {
    let size = add_table.len();
    if size == 0 {
        return Err(Error::MalformedTable("empty carrier".into()));
    }
    if size > MAX_RING_SIZE {
        return Err(Error::TooLarge {
            size,
            bound: MAX_RING_SIZE,
        });
    }
    if mul_table.len() != size {
        return Err(Error::MalformedTable(format!(
            "addition table has {size} rows, multiplication table has {}",
            mul_table.len()
        )));
    }
    let flatten = |table: &[Vec<Elem>], name: &str| -> Result<Vec<u16>> {
        let mut flat = Vec::with_capacity(size * size);
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::MalformedTable(format!(
                    "{name} row {i} has length {}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= size {
                    return Err(Error::MalformedTable(format!(
                        "{name} entry {x} out of range"
                    )));
                }
                flat.push(x as u16);
            }
        }
        Ok(flat)
    };
    let add = flatten(add_table, "addition")?;
    let mul = flatten(mul_table, "multiplication")?;
    if one as usize >= size {
        return Err(Error::MalformedTable(format!("unity {one} out of range")));
    }
    for x in 0..size {
        if add[x] as usize != x {
            return Err(Error::AxiomViolation {
                axiom: "element 0 is the additive identity",
                witness: (0, x as Elem, 0),
            });
        }
    }
    let ring = FiniteRing::from_tables_unchecked(size, add, mul, one, Provenance::TableBuilt, None);
    ring.validate_axioms(usize::MAX, 0)?;
    Ok(ring)
}
