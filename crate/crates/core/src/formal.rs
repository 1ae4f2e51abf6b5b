//! Formal matrix rings over local corners, with block expansion and corner
//! rings.
//!
//! An element is a grid whose `(i, j)` entry lies in the coordinate bimodule
//! `B_ij`. Grids are numbered in mixed radix over the row-major positions,
//! position `(0, 0)` least significant.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::{ring_homomorphism, Bimodule};
use crate::error::{Error, Result};
use crate::local::{make_local, LocalRingSpec};
use crate::ring::{Elem, FiniteRing, Provenance, MAX_RING_SIZE};

/// Coordinate bimodule of a formal matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleSpec {
    Zero,
    /// Diagonal entry: the corner ring acting on itself.
    Corner,
    /// A copy of a local ring, with the corners acting through unital
    /// homomorphisms into it. When `multiplicative`, proper products between
    /// copies of the same ring are that ring's multiplication; otherwise
    /// proper products into and out of this entry vanish.
    Ring {
        base: LocalRingSpec,
        multiplicative: bool,
    },
    /// Explicit group and action tables.
    Table(Bimodule),
}

impl BimoduleSpec {
    pub fn zero_product(base: LocalRingSpec) -> BimoduleSpec {
        BimoduleSpec::Ring {
            base,
            multiplicative: false,
        }
    }

    pub fn regular(base: LocalRingSpec) -> BimoduleSpec {
        BimoduleSpec::Ring {
            base,
            multiplicative: true,
        }
    }
}

/// Explicit proper product `B_ij × B_jk → B_ik`; `table[a][b]` is the
/// product of entries `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductTable {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub table: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormalMatrixSpec {
    pub corners: Vec<LocalRingSpec>,
    pub bimodules: Vec<Vec<BimoduleSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expand: Option<Vec<usize>>,
}

impl FormalMatrixSpec {
    /// Spec from corners and off-diagonal entries; the diagonal of `grid` is
    /// ignored and replaced by [`BimoduleSpec::Corner`].
    pub fn new(corners: Vec<LocalRingSpec>, mut grid: Vec<Vec<BimoduleSpec>>) -> FormalMatrixSpec {
        for (i, row) in grid.iter_mut().enumerate() {
            if let Some(d) = row.get_mut(i) {
                *d = BimoduleSpec::Corner;
            }
        }
        FormalMatrixSpec {
            corners,
            bimodules: grid,
            products: Vec::new(),
            expand: None,
        }
    }

    /// A single local ring as a 1×1 formal matrix.
    pub fn local(base: LocalRingSpec) -> FormalMatrixSpec {
        FormalMatrixSpec::new(vec![base], vec![vec![BimoduleSpec::Corner]])
    }

    pub fn with_expand(mut self, mu: Vec<usize>) -> FormalMatrixSpec {
        self.expand = Some(mu);
        self
    }

    pub fn without_expand(&self) -> FormalMatrixSpec {
        FormalMatrixSpec {
            expand: None,
            ..self.clone()
        }
    }

    /// Number of corners before expansion.
    pub fn order(&self) -> usize {
        self.corners.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.expand.clone().unwrap_or_else(|| vec![1; self.order()])
    }

    /// `|R|` computed from the coordinate sizes, without building anything.
    pub fn ring_order(&self) -> u128 {
        let mu = self.multiplicities();
        let mut total: u128 = 1;
        for (i, row) in self.bimodules.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                let s: u128 = match b {
                    BimoduleSpec::Zero => 1,
                    BimoduleSpec::Corner => self.corners[i].order() as u128,
                    BimoduleSpec::Ring { base, .. } => base.order() as u128,
                    BimoduleSpec::Table(t) => t.size() as u128,
                };
                let copies =
                    (mu.get(i).copied().unwrap_or(1) * mu.get(j).copied().unwrap_or(1)) as u32;
                total = total.saturating_mul(s.saturating_pow(copies));
            }
        }
        total
    }

    fn validate(&self) -> Result<()> {
        let n = self.order();
        let bad = |m: String| Err(Error::InvalidParameters(m));
        if n == 0 {
            return bad("a formal matrix needs at least one corner".into());
        }
        if self.bimodules.len() != n || self.bimodules.iter().any(|r| r.len() != n) {
            return bad(format!("bimodule grid must be {n}×{n}"));
        }
        for (i, row) in self.bimodules.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                match (i == j, b) {
                    (true, BimoduleSpec::Corner)
                    | (
                        false,
                        BimoduleSpec::Zero | BimoduleSpec::Ring { .. } | BimoduleSpec::Table(_),
                    ) => {}
                    (true, _) => {
                        return bad(format!(
                            "diagonal entry ({i},{i}) must be the corner itself"
                        ))
                    }
                    (false, _) => {
                        return bad(format!("off-diagonal entry ({i},{j}) cannot be a corner"))
                    }
                }
            }
        }
        if let Some(mu) = &self.expand {
            if mu.len() != n || mu.iter().any(|&m| m == 0) {
                return bad(format!("expansion must list {n} multiplicities, all ≥ 1"));
            }
        }
        for p in &self.products {
            if p.i >= n || p.j >= n || p.k >= n || p.i == p.j || p.j == p.k {
                return bad(format!(
                    "({},{},{}) is not a proper product triple",
                    p.i, p.j, p.k
                ));
            }
        }
        Ok(())
    }
}

/// Placement of coordinates inside the element numbering of a formal
/// matrix ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    order: usize,
    parent: Vec<usize>,
    sizes: Vec<usize>,
    weights: Vec<usize>,
    unit_digits: Vec<u32>,
}

impl Layout {
    fn new(parent: Vec<usize>, sizes: Vec<usize>, unit_digits: Vec<u32>) -> Layout {
        let order = parent.len();
        let mut weights = Vec::with_capacity(sizes.len());
        let mut w = 1usize;
        for &s in &sizes {
            weights.push(w);
            w = w.saturating_mul(s);
        }
        Layout {
            order,
            parent,
            sizes,
            weights,
            unit_digits,
        }
    }

    /// Number of rows (after expansion).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Basic corner index each row was copied from.
    pub fn parent(&self, i: usize) -> usize {
        self.parent[i]
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    #[inline]
    fn pos(&self, i: usize, j: usize) -> usize {
        i * self.order + j
    }

    pub fn coordinate_size(&self, i: usize, j: usize) -> usize {
        self.sizes[self.pos(i, j)]
    }

    pub fn ring_size(&self) -> usize {
        self.sizes.iter().product()
    }

    /// Entry `(i, j)` of the grid `x`.
    pub fn digit(&self, x: Elem, i: usize, j: usize) -> u32 {
        let p = self.pos(i, j);
        ((x as usize / self.weights[p]) % self.sizes[p]) as u32
    }

    /// The grid with a single nonzero entry `d` at `(i, j)`.
    pub fn single(&self, i: usize, j: usize, d: u32) -> Elem {
        (d as usize * self.weights[self.pos(i, j)]) as Elem
    }

    /// The diagonal matrix unit `E_ii`.
    pub fn diag_unit(&self, i: usize) -> Elem {
        self.single(i, i, self.unit_digits[i])
    }

    pub fn entries(&self, x: Elem) -> Vec<Vec<u32>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.digit(x, i, j)).collect())
            .collect()
    }

    pub fn describe(&self, x: Elem) -> String {
        let rows: Vec<String> = self
            .entries(x)
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Rows `keep` (in increasing order) whose diagonal units sum to `e`,
    /// if `e` has that shape.
    pub fn diagonal_support(&self, e: Elem) -> Option<Vec<usize>> {
        let keep: Vec<usize> = (0..self.order)
            .filter(|&i| self.digit(e, i, i) == self.unit_digits[i] && self.unit_digits[i] != 0)
            .collect();
        let sum: usize = keep.iter().map(|&i| self.diag_unit(i) as usize).sum();
        (sum == e as usize).then_some(keep)
    }

    /// Layout of the corner ring cut out by the rows `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Layout {
        let mut sizes = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                sizes.push(self.coordinate_size(i, j));
            }
        }
        Layout::new(
            keep.iter().map(|&i| self.parent[i]).collect(),
            sizes,
            keep.iter().map(|&i| self.unit_digits[i]).collect(),
        )
    }
}

/// Coordinate data at the basic level: additive tables and the product maps
/// `B_ij × B_jk → B_ik` for every triple (actions included).
struct Coordinates {
    n: usize,
    sizes: Vec<usize>,
    add: Vec<Vec<u32>>,
    prod: Vec<Vec<u32>>,
    unit_digits: Vec<u32>,
    nontrivial_products: bool,
}

impl Coordinates {
    fn size(&self, i: usize, j: usize) -> usize {
        self.sizes[i * self.n + j]
    }

    fn add(&self, i: usize, j: usize, a: u32, b: u32) -> u32 {
        self.add[i * self.n + j][a as usize * self.size(i, j) + b as usize]
    }

    fn prod(&self, i: usize, j: usize, k: usize, a: u32, b: u32) -> u32 {
        self.prod[(i * self.n + j) * self.n + k][a as usize * self.size(j, k) + b as usize]
    }
}

enum Entry<'a> {
    Zero,
    /// Copy of `ring`; `left`/`right` map corner elements into it.
    Ring {
        ring: &'a FiniteRing,
        key: &'a LocalRingSpec,
        multiplicative: bool,
        left: Vec<Elem>,
        right: Vec<Elem>,
    },
    Table(&'a Bimodule),
}

fn coordinates(spec: &FormalMatrixSpec) -> Result<Coordinates> {
    spec.validate()?;
    let n = spec.order();
    let mut rings: HashMap<&LocalRingSpec, FiniteRing> = HashMap::new();
    let mut wanted: Vec<&LocalRingSpec> = spec.corners.iter().collect();
    for row in &spec.bimodules {
        for b in row {
            if let BimoduleSpec::Ring { base, .. } = b {
                wanted.push(base);
            }
        }
    }
    for s in wanted {
        if !rings.contains_key(s) {
            rings.insert(s, make_local(s)?);
        }
    }
    let corner = |i: usize| &rings[&spec.corners[i]];
    let hom = |from: &LocalRingSpec, to: &LocalRingSpec| -> Result<Vec<Elem>> {
        if from == to {
            Ok(rings[from].all_elements())
        } else {
            ring_homomorphism(&rings[from], &rings[to])
        }
    };

    let mut entries: Vec<Entry> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(match &spec.bimodules[i][j] {
                BimoduleSpec::Zero => Entry::Zero,
                BimoduleSpec::Corner => Entry::Ring {
                    ring: corner(i),
                    key: &spec.corners[i],
                    multiplicative: true,
                    left: corner(i).all_elements(),
                    right: corner(i).all_elements(),
                },
                BimoduleSpec::Ring {
                    base,
                    multiplicative,
                } => Entry::Ring {
                    ring: &rings[base],
                    key: base,
                    multiplicative: *multiplicative,
                    left: hom(&spec.corners[i], base)?,
                    right: hom(&spec.corners[j], base)?,
                },
                BimoduleSpec::Table(t) => {
                    t.check(corner(i), corner(j))?;
                    Entry::Table(t)
                }
            });
        }
    }

    let entry_size = |e: &Entry| match e {
        Entry::Zero => 1,
        Entry::Ring { ring, .. } => ring.size(),
        Entry::Table(t) => t.size(),
    };
    let sizes: Vec<usize> = entries.iter().map(entry_size).collect();
    let add: Vec<Vec<u32>> = entries
        .iter()
        .map(|e| match e {
            Entry::Zero => vec![0],
            Entry::Ring { ring, .. } => {
                let mut t = Vec::with_capacity(ring.size() * ring.size());
                for a in ring.elements() {
                    for b in ring.elements() {
                        t.push(ring.add(a, b));
                    }
                }
                t
            }
            Entry::Table(t) => t.add.iter().flatten().copied().collect(),
        })
        .collect();

    let explicit: HashMap<(usize, usize, usize), &ProductTable> =
        spec.products.iter().map(|p| ((p.i, p.j, p.k), p)).collect();
    let mut nontrivial_products = !explicit.is_empty();
    let mut prod = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (ij, jk, ik) = (
                    &entries[i * n + j],
                    &entries[j * n + k],
                    &entries[i * n + k],
                );
                let (sa, sb) = (sizes[i * n + j], sizes[j * n + k]);
                let mut table = vec![0u32; sa * sb];
                if i == j {
                    // left action of the corner R_i on B_ik
                    let r = corner(i);
                    match ik {
                        Entry::Zero => {}
                        Entry::Ring { ring, left, .. } => {
                            for a in r.elements() {
                                for b in 0..sb as u32 {
                                    table[a as usize * sb + b as usize] =
                                        ring.mul(left[a as usize], b);
                                }
                            }
                        }
                        Entry::Table(t) => {
                            for a in 0..sa {
                                table[a * sb..(a + 1) * sb].copy_from_slice(&t.left[a]);
                            }
                        }
                    }
                } else if j == k {
                    match ik {
                        Entry::Zero => {}
                        Entry::Ring { ring, right, .. } => {
                            for a in 0..sa as u32 {
                                for b in 0..sb as u32 {
                                    table[a as usize * sb + b as usize] =
                                        ring.mul(a, right[b as usize]);
                                }
                            }
                        }
                        Entry::Table(t) => {
                            for a in 0..sa {
                                table[a * sb..(a + 1) * sb].copy_from_slice(&t.right[a]);
                            }
                        }
                    }
                } else if let Some(p) = explicit.get(&(i, j, k)) {
                    let sc = sizes[i * n + k];
                    if p.table.len() != sa
                        || p.table
                            .iter()
                            .any(|row| row.len() != sb || row.iter().any(|&x| x as usize >= sc))
                    {
                        return Err(Error::InvalidParameters(format!(
                            "product table ({i},{j},{k}) must be {sa}×{sb} with entries below {sc}"
                        )));
                    }
                    for a in 0..sa {
                        table[a * sb..(a + 1) * sb].copy_from_slice(&p.table[a]);
                    }
                } else if let (
                    Entry::Ring {
                        key: x,
                        multiplicative: true,
                        ring,
                        ..
                    },
                    Entry::Ring {
                        key: y,
                        multiplicative: true,
                        ..
                    },
                    Entry::Ring {
                        key: z,
                        multiplicative: true,
                        ..
                    },
                ) = (ij, jk, ik)
                {
                    if x == y && y == z {
                        nontrivial_products = true;
                        for a in 0..sa as u32 {
                            for b in 0..sb as u32 {
                                table[a as usize * sb + b as usize] = ring.mul(a, b);
                            }
                        }
                    }
                }
                prod.push(table);
            }
        }
    }
    let unit_digits = (0..n).map(|i| corner(i).one()).collect();
    Ok(Coordinates {
        n,
        sizes,
        add,
        prod,
        unit_digits,
        nontrivial_products,
    })
}

/// Exhaustive associativity and biadditivity check over all coordinate
/// quadruples.
fn check_associativity(c: &Coordinates) -> Result<()> {
    let n = c.n;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (sa, sb) = (c.size(i, j) as u32, c.size(j, k) as u32);
                for a in 0..sa {
                    for a2 in 0..sa {
                        for b in 0..sb {
                            let lhs = c.prod(i, j, k, c.add(i, j, a, a2), b);
                            let rhs = c.add(i, k, c.prod(i, j, k, a, b), c.prod(i, j, k, a2, b));
                            if lhs != rhs {
                                return Err(Error::AssociativityViolation {
                                    i,
                                    j,
                                    k,
                                    l: k,
                                    witness: (a, a2, b),
                                });
                            }
                        }
                    }
                    for b in 0..sb {
                        for b2 in 0..sb {
                            let lhs = c.prod(i, j, k, a, c.add(j, k, b, b2));
                            let rhs = c.add(i, k, c.prod(i, j, k, a, b), c.prod(i, j, k, a, b2));
                            if lhs != rhs {
                                return Err(Error::AssociativityViolation {
                                    i,
                                    j,
                                    k,
                                    l: k,
                                    witness: (a, b, b2),
                                });
                            }
                        }
                    }
                }
                for l in 0..n {
                    let sc = c.size(k, l) as u32;
                    for a in 0..sa {
                        for b in 0..sb {
                            let ab = c.prod(i, j, k, a, b);
                            for d in 0..sc {
                                let lhs = c.prod(i, k, l, ab, d);
                                let rhs = c.prod(i, j, l, a, c.prod(j, k, l, b, d));
                                if lhs != rhs {
                                    return Err(Error::AssociativityViolation {
                                        i,
                                        j,
                                        k,
                                        l,
                                        witness: (a, b, d),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Build the formal matrix ring of `spec`, expanded when `spec.expand` is
/// set.
///
/// Expanded rows come after the basic ones: first the extra copies of corner
/// 0, then those of corner 1, and so on. A product of entries at rows
/// `(i, j, k)` uses the basic product map of their parent corners.
pub fn build_formal_matrix(spec: &FormalMatrixSpec) -> Result<FiniteRing> {
    spec.validate()?;
    let order = spec.ring_order();
    if order > MAX_RING_SIZE as u128 {
        return Err(Error::TooLarge {
            size: order.min(usize::MAX as u128) as usize,
            bound: MAX_RING_SIZE,
        });
    }
    let coords = coordinates(spec)?;
    if coords.nontrivial_products {
        check_associativity(&coords)?;
    }
    let n = coords.n;
    let mut parent: Vec<usize> = (0..n).collect();
    for (k, &m) in spec.multiplicities().iter().enumerate() {
        parent.extend(std::iter::repeat(k).take(m - 1));
    }
    let big = parent.len();
    let mut sizes = Vec::with_capacity(big * big);
    for &pi in &parent {
        for &pj in &parent {
            sizes.push(coords.size(pi, pj));
        }
    }
    let unit_digits = parent.iter().map(|&p| coords.unit_digits[p]).collect();
    let layout = Layout::new(parent, sizes, unit_digits);
    let (add, mul) = fill_tables(&layout, &coords);
    let one = (0..big).map(|i| layout.diag_unit(i)).sum();
    Ok(FiniteRing::from_tables_unchecked(
        layout.ring_size(),
        add,
        mul,
        one,
        Provenance::FormalMatrixBuilt,
        Some(Arc::new(layout)),
    ))
}

/// Addition and multiplication tables, built row by row: a row of a grid
/// with one nonzero entry is computed from coordinates, any other row as the
/// sum of the rows of its leading entry and of the remainder.
fn fill_tables(layout: &Layout, c: &Coordinates) -> (Vec<u16>, Vec<u16>) {
    let size = layout.ring_size();
    let big = layout.order;
    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    // (leading position, leading digit, remainder) of every grid
    let split: Vec<Option<(usize, u32, usize)>> = (0..size)
        .map(|x| {
            let p = (0..layout.sizes.len())
                .rev()
                .find(|&p| (x / layout.weights[p]) % layout.sizes[p] != 0)?;
            let d = (x / layout.weights[p]) % layout.sizes[p];
            Some((p, d as u32, x - d * layout.weights[p]))
        })
        .collect();
    let digit = |y: usize, p: usize| ((y / layout.weights[p]) % layout.sizes[p]) as u32;

    for (x, parts) in split.iter().enumerate() {
        let row = x * size;
        match *parts {
            None => (0..size).for_each(|y| add[row + y] = y as u16),
            Some((p, d, 0)) => {
                let (pi, pj) = (layout.parent[p / big], layout.parent[p % big]);
                let w = layout.weights[p];
                for y in 0..size {
                    let yd = digit(y, p);
                    let sum = c.add(pi, pj, d, yd) as usize;
                    add[row + y] = (y - yd as usize * w + sum * w) as u16;
                }
            }
            Some((p, d, rest)) => {
                let (hrow, rrow) = ((x - rest) * size, rest * size);
                debug_assert_eq!(x - rest, d as usize * layout.weights[p]);
                for y in 0..size {
                    add[row + y] = add[hrow + add[rrow + y] as usize];
                }
            }
        }
    }

    for (x, parts) in split.iter().enumerate() {
        let row = x * size;
        match *parts {
            None => {}
            Some((p, d, 0)) => {
                let (i, j) = (p / big, p % big);
                let (pi, pj) = (layout.parent[i], layout.parent[j]);
                for y in 0..size {
                    let mut z = 0usize;
                    for k in 0..big {
                        let b = digit(y, layout.pos(j, k));
                        let e = c.prod(pi, pj, layout.parent[k], d, b);
                        z += e as usize * layout.weights[layout.pos(i, k)];
                    }
                    mul[row + y] = z as u16;
                }
            }
            Some((_, _, rest)) => {
                let (hrow, rrow) = ((x - rest) * size, rest * size);
                for y in 0..size {
                    let (u, v) = (mul[hrow + y] as usize, mul[rrow + y] as usize);
                    mul[row + y] = add[u * size + v];
                }
            }
        }
    }
    (add, mul)
}

/// Elements of `eRe` in increasing order; element `i` of
/// [`corner_ring`] is `corner_elements(ring, e)[i]`.
pub fn corner_elements(ring: &FiniteRing, e: Elem) -> Vec<Elem> {
    let mut members: Vec<Elem> = ring
        .elements()
        .map(|x| ring.mul(ring.mul(e, x), e))
        .collect();
    members.sort_unstable();
    members.dedup();
    members
}

/// `eRe` with unity `e`, elements numbered in increasing order of their
/// index in `R`.
pub fn corner_ring(ring: &FiniteRing, e: Elem) -> Result<FiniteRing> {
    if e == 0 || !ring.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let members = corner_elements(ring, e);
    let size = members.len();
    let mut index = vec![u32::MAX; ring.size()];
    for (i, &x) in members.iter().enumerate() {
        index[x as usize] = i as u32;
    }
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &a in &members {
        for &b in &members {
            add.push(index[ring.add(a, b) as usize] as u16);
            mul.push(index[ring.mul(a, b) as usize] as u16);
        }
    }
    let layout = ring.layout().and_then(|l| {
        l.diagonal_support(e)
            .map(|keep| Arc::new(l.restrict(&keep)))
    });
    Ok(FiniteRing::from_tables_unchecked(
        size,
        add,
        mul,
        index[e as usize],
        ring.provenance(),
        layout,
    ))
}

impl fmt::Display for BimoduleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleSpec::Zero => f.write_str("0"),
            BimoduleSpec::Corner => f.write_str("corner"),
            BimoduleSpec::Ring {
                base,
                multiplicative: true,
            } => write!(f, "regular({base})"),
            BimoduleSpec::Ring { base, .. } => write!(f, "zero_product({base})"),
            BimoduleSpec::Table(t) => write!(f, "table({})", t.size()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> LocalRingSpec {
        LocalRingSpec::gf(2)
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

    /// Brute-force multiplication of `n×n` matrices over GF(2) stored as
    /// row-major bit vectors.
    fn gf2_matmul(a: u32, b: u32, n: usize) -> u32 {
        let bit = |x: u32, i: usize, j: usize| (x >> (i * n + j)) & 1;
        let mut out = 0;
        for i in 0..n {
            for j in 0..n {
                let s = (0..n).fold(0, |acc, t| acc ^ (bit(a, i, t) & bit(b, t, j)));
                out |= s << (i * n + j);
            }
        }
        out
    }

    #[test]
    fn wood_basic_has_sixteen_elements() {
        let r = build_formal_matrix(&wood_basic()).unwrap();
        assert_eq!(r.size(), 16);
        r.validate_axioms(256, 0).unwrap();
        // off-diagonal entries multiply to zero
        let l = r.layout().unwrap();
        let (e12, e21) = (l.single(0, 1, 1), l.single(1, 0, 1));
        assert_eq!(r.mul(e12, e21), 0);
        assert_eq!(r.mul(l.diag_unit(0), e12), e12);
    }

    #[test]
    fn wood_expansion() {
        let r = build_formal_matrix(&wood_basic().with_expand(vec![2, 1])).unwrap();
        assert_eq!(r.size(), 512);
        let l = r.layout().unwrap();
        assert_eq!(l.parents(), &[0, 1, 0]);
        // rows 0 and 2 are both copies of the first corner: E13·E31 = E11
        let (e13, e31) = (l.single(0, 2, 1), l.single(2, 0, 1));
        assert_eq!(r.mul(e13, e31), l.diag_unit(0));
        // the (1,3) entry is L-type between rows 2 and 3 of the pattern
        assert_eq!(r.mul(l.single(0, 1, 1), l.single(1, 2, 1)), 0);
        r.validate_axioms(256, 20_000).unwrap();
    }

    #[test]
    fn b3_size() {
        let e = BimoduleSpec::zero_product(k());
        let z = BimoduleSpec::Zero;
        let c = BimoduleSpec::Corner;
        let spec = FormalMatrixSpec::new(
            vec![k(), k(), k()],
            vec![
                vec![c.clone(), e.clone(), z.clone()],
                vec![z.clone(), c.clone(), e.clone()],
                vec![e, z, c],
            ],
        );
        let r = build_formal_matrix(&spec).unwrap();
        assert_eq!(r.size(), 64);
        r.validate_axioms(256, 0).unwrap();
    }

    #[test]
    fn expansion_of_a_field_is_the_matrix_ring() {
        let r = build_formal_matrix(&FormalMatrixSpec::local(k()).with_expand(vec![2])).unwrap();
        assert_eq!(r.size(), 16);
        // numbering agrees with the row-major bit vector encoding
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.mul(a, b), gf2_matmul(a, b, 2));
                assert_eq!(r.add(a, b), a ^ b);
            }
        }
        assert_eq!(r.one(), 0b1001);
    }

    #[test]
    fn regular_offdiagonal_gives_full_matrices() {
        let reg = BimoduleSpec::regular(k());
        let spec = FormalMatrixSpec::new(
            vec![k(), k()],
            vec![
                vec![BimoduleSpec::Corner, reg.clone()],
                vec![reg, BimoduleSpec::Corner],
            ],
        );
        let r = build_formal_matrix(&spec).unwrap();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.mul(a, b), gf2_matmul(a, b, 2));
            }
        }
    }

    #[test]
    fn inconsistent_regular_copies_break_associativity() {
        // B12, B21 multiply into the corner, but B23·B31 should then land in a
        // zero-product entry: (E12·E23)·E31 ≠ E12·(E23·E31)
        let reg = BimoduleSpec::regular(k());
        let zp = BimoduleSpec::zero_product(k());
        let c = BimoduleSpec::Corner;
        let spec = FormalMatrixSpec::new(
            vec![k(), k(), k()],
            vec![
                vec![c.clone(), reg.clone(), reg.clone()],
                vec![reg.clone(), c.clone(), zp.clone()],
                vec![reg.clone(), reg, c],
            ],
        );
        let err = build_formal_matrix(&spec).unwrap_err();
        assert!(
            matches!(err, Error::AssociativityViolation { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn bad_explicit_product_is_rejected() {
        let mut spec = wood_basic();
        // not additive in either argument
        spec.products.push(ProductTable {
            i: 0,
            j: 1,
            k: 0,
            table: vec![vec![1, 1], vec![1, 1]],
        });
        assert!(matches!(
            build_formal_matrix(&spec),
            Err(Error::AssociativityViolation { .. })
        ));
    }

    #[test]
    fn corners() {
        let m2 = build_formal_matrix(&FormalMatrixSpec::local(k()).with_expand(vec![2])).unwrap();
        let l = m2.layout().unwrap().clone();
        let c = corner_ring(&m2, l.diag_unit(0)).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.layout().unwrap().order(), 1);
        let whole = corner_ring(&m2, m2.one()).unwrap();
        assert!(whole.same_tables(&m2));
        assert_eq!(corner_ring(&m2, 0).unwrap_err(), Error::NotIdempotent(0));
        assert_eq!(
            corner_ring(&m2, l.single(0, 1, 1)).unwrap_err(),
            Error::NotIdempotent(2)
        );
    }

    #[test]
    fn wood_corner_on_basic_rows() {
        let wood = build_formal_matrix(&wood_basic().with_expand(vec![2, 1])).unwrap();
        let l = wood.layout().unwrap();
        let e = wood.add(l.diag_unit(0), l.diag_unit(1));
        let c = corner_ring(&wood, e).unwrap();
        let basic = build_formal_matrix(&wood_basic()).unwrap();
        assert!(c.same_tables(&basic));
    }

    #[test]
    fn validation() {
        let mut spec = wood_basic();
        spec.bimodules[0][0] = BimoduleSpec::Zero;
        assert!(matches!(
            build_formal_matrix(&spec),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            build_formal_matrix(&wood_basic().with_expand(vec![0, 1])),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            build_formal_matrix(&FormalMatrixSpec::local(k()).with_expand(vec![4])),
            Err(Error::TooLarge { .. })
        ));
    }
}
