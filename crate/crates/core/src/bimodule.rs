//! Finite bimodules given by tables, trivial extensions, and unital ring
//! homomorphisms between small rings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, Provenance, MAX_RING_SIZE};

/// An `(S, T)`-bimodule on dense indices `0..size`, with `0` the zero.
///
/// `left[s][b] = s·b` and `right[b][t] = b·t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bimodule {
    pub add: Vec<Vec<u32>>,
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
}

impl Bimodule {
    pub fn size(&self) -> usize {
        self.add.len()
    }

    /// The zero bimodule over rings of the given sizes.
    pub fn zero(left_size: usize, right_size: usize) -> Bimodule {
        Bimodule {
            add: vec![vec![0]],
            left: vec![vec![0]; left_size],
            right: vec![vec![0; right_size]],
        }
    }

    /// `S` acting on itself from both sides.
    pub fn regular(s: &FiniteRing) -> Bimodule {
        let rows = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Vec<u32>> {
            s.elements()
                .map(|a| s.elements().map(|b| f(a, b)).collect())
                .collect()
        };
        Bimodule {
            add: rows(&|a, b| s.add(a, b)),
            left: rows(&|a, b| s.mul(a, b)),
            right: rows(&|a, b| s.mul(a, b)),
        }
    }

    /// `S^k` with componentwise actions; tuples are numbered in base `|S|`,
    /// first component least significant.
    pub fn power(s: &FiniteRing, k: usize) -> Bimodule {
        let q = s.size();
        let size = q.pow(k as u32);
        let split = |mut x: usize| -> Vec<Elem> {
            (0..k)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    d as Elem
                })
                .collect()
        };
        let join = |d: &[Elem]| -> u32 {
            d.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize) as u32
        };
        let add = (0..size)
            .map(|a| {
                let x = split(a);
                (0..size)
                    .map(|b| {
                        let y = split(b);
                        join(
                            &x.iter()
                                .zip(&y)
                                .map(|(&u, &v)| s.add(u, v))
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect()
            })
            .collect();
        let left = s
            .elements()
            .map(|r| {
                (0..size)
                    .map(|b| join(&split(b).iter().map(|&v| s.mul(r, v)).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let right = (0..size)
            .map(|b| {
                let y = split(b);
                s.elements()
                    .map(|r| join(&y.iter().map(|&v| s.mul(v, r)).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Bimodule { add, left, right }
    }

    /// Exhaustive check of the abelian group and both action axioms.
    pub fn check(&self, s: &FiniteRing, t: &FiniteRing) -> Result<()> {
        let n = self.size();
        let bad = |msg: String| Err(Error::ActionAxiomViolation(msg));
        let in_range = |rows: &[Vec<u32>], r: usize, c: usize| {
            rows.len() == r
                && rows
                    .iter()
                    .all(|row| row.len() == c && row.iter().all(|&x| (x as usize) < n))
        };
        if n == 0
            || !in_range(&self.add, n, n)
            || !in_range(&self.left, s.size(), n)
            || !in_range(&self.right, n, t.size())
        {
            return bad("table dimensions do not match the rings".into());
        }
        for a in 0..n {
            if self.add[a][0] as usize != a || !self.add[a].contains(&0) {
                return bad(format!(
                    "element {a}: 0 is not an identity or {a} has no inverse"
                ));
            }
            for b in 0..n {
                if self.add[a][b] != self.add[b][a] {
                    return bad(format!("addition not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    let (ab, bc) = (self.add[a][b] as usize, self.add[b][c] as usize);
                    if self.add[ab][c] != self.add[a][bc] {
                        return bad(format!("addition not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        for b in 0..n {
            if self.left[s.one() as usize][b] as usize != b
                || self.right[b][t.one() as usize] as usize != b
            {
                return bad(format!("unity does not act trivially on {b}"));
            }
            for r in s.elements() {
                for r2 in s.elements() {
                    let lhs = self.left[s.mul(r, r2) as usize][b];
                    let rhs = self.left[r as usize][self.left[r2 as usize][b] as usize];
                    if lhs != rhs {
                        return bad(format!("left action not associative at ({r},{r2},{b})"));
                    }
                    let sum = self.left[s.add(r, r2) as usize][b];
                    let split = self.add[self.left[r as usize][b] as usize]
                        [self.left[r2 as usize][b] as usize];
                    if sum != split {
                        return bad(format!(
                            "left action not additive in the ring at ({r},{r2},{b})"
                        ));
                    }
                }
                for b2 in 0..n {
                    let lhs = self.left[r as usize][self.add[b][b2] as usize];
                    let rhs = self.add[self.left[r as usize][b] as usize]
                        [self.left[r as usize][b2] as usize];
                    if lhs != rhs {
                        return bad(format!(
                            "left action not additive in the module at ({r},{b},{b2})"
                        ));
                    }
                }
                for t1 in t.elements() {
                    let lhs = self.right[self.left[r as usize][b] as usize][t1 as usize];
                    let rhs = self.left[r as usize][self.right[b][t1 as usize] as usize];
                    if lhs != rhs {
                        return bad(format!("actions do not commute at ({r},{b},{t1})"));
                    }
                }
            }
            for t1 in t.elements() {
                for t2 in t.elements() {
                    let lhs = self.right[b][t.mul(t1, t2) as usize];
                    let rhs = self.right[self.right[b][t1 as usize] as usize][t2 as usize];
                    if lhs != rhs {
                        return bad(format!("right action not associative at ({b},{t1},{t2})"));
                    }
                    let sum = self.right[b][t.add(t1, t2) as usize];
                    let split = self.add[self.right[b][t1 as usize] as usize]
                        [self.right[b][t2 as usize] as usize];
                    if sum != split {
                        return bad(format!(
                            "right action not additive in the ring at ({b},{t1},{t2})"
                        ));
                    }
                }
                for b2 in 0..n {
                    let lhs = self.right[self.add[b][b2] as usize][t1 as usize];
                    let rhs = self.add[self.right[b][t1 as usize] as usize]
                        [self.right[b2][t1 as usize] as usize];
                    if lhs != rhs {
                        return bad(format!(
                            "right action not additive in the module at ({b},{b2},{t1})"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `S ⋉ B`: pairs `(s, b)` with `(s,b)(s',b') = (ss', sb' + bs')`.
///
/// The pair `(s, b)` gets index `s + |S|·b`.
pub fn trivial_extension(s: &FiniteRing, b: &Bimodule) -> Result<FiniteRing> {
    b.check(s, s)?;
    let (qs, qb) = (s.size(), b.size());
    let size = qs * qb;
    if size > MAX_RING_SIZE {
        return Err(Error::TooLarge {
            size,
            bound: MAX_RING_SIZE,
        });
    }
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (s1, b1) = ((x % qs) as Elem, x / qs);
        for y in 0..size {
            let (s2, b2) = ((y % qs) as Elem, y / qs);
            let sum_b = b.add[b1][b2] as usize;
            add.push((s.add(s1, s2) as usize + qs * sum_b) as u16);
            let sb = b.left[s1 as usize][b2] as usize;
            let bs = b.right[b1][s2 as usize] as usize;
            mul.push((s.mul(s1, s2) as usize + qs * b.add[sb][bs] as usize) as u16);
        }
    }
    Ok(FiniteRing::from_tables_unchecked(
        size,
        add,
        mul,
        s.one(),
        Provenance::FormalMatrixBuilt,
        None,
    ))
}

/// Greedy set of ring generators: together with `1` they generate `ring`
/// under addition and multiplication.
fn ring_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut reached = subring(ring, &gens);
    for x in ring.elements() {
        if !reached[x as usize] {
            gens.push(x);
            reached = subring(ring, &gens);
        }
    }
    gens
}

fn subring(ring: &FiniteRing, gens: &[Elem]) -> Vec<bool> {
    let mut inside = vec![false; ring.size()];
    let mut list = vec![0, ring.one()];
    list.extend_from_slice(gens);
    list.sort_unstable();
    list.dedup();
    for &x in &list {
        inside[x as usize] = true;
    }
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..=i {
            let b = list[j];
            for c in [ring.add(a, b), ring.mul(a, b), ring.mul(b, a)] {
                if !inside[c as usize] {
                    inside[c as usize] = true;
                    list.push(c);
                }
            }
        }
        i += 1;
    }
    inside
}

const UNSET: Elem = Elem::MAX;

/// Propagate a partial assignment through `+` and `·` on the subring it
/// generates; `None` on a conflict. Unreached elements stay [`UNSET`].
fn propagate(from: &FiniteRing, to: &FiniteRing, seed: &[(Elem, Elem)]) -> Option<Vec<Elem>> {
    let mut map = vec![UNSET; from.size()];
    let mut known: Vec<Elem> = Vec::new();
    let assign = |map: &mut Vec<Elem>, known: &mut Vec<Elem>, x: Elem, y: Elem| -> bool {
        match map[x as usize] {
            UNSET => {
                map[x as usize] = y;
                known.push(x);
                true
            }
            v => v == y,
        }
    };
    for &(x, y) in [(0, 0), (from.one(), to.one())].iter().chain(seed) {
        if !assign(&mut map, &mut known, x, y) {
            return None;
        }
    }
    let mut i = 0;
    while i < known.len() {
        let a = known[i];
        for j in 0..=i {
            let b = known[j];
            let (fa, fb) = (map[a as usize], map[b as usize]);
            let pairs = [
                (from.add(a, b), to.add(fa, fb)),
                (from.mul(a, b), to.mul(fa, fb)),
                (from.mul(b, a), to.mul(fb, fa)),
            ];
            for (x, y) in pairs {
                if !assign(&mut map, &mut known, x, y) {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(map)
}

/// Depth-first search over generator images, smallest first.
fn search_maps(
    from: &FiniteRing,
    to: &FiniteRing,
    gens: &[Elem],
    images: &mut Vec<Elem>,
    accept: &dyn Fn(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    let seed: Vec<(Elem, Elem)> = gens.iter().copied().zip(images.iter().copied()).collect();
    let map = propagate(from, to, &seed)?;
    if images.len() == gens.len() {
        return (!map.contains(&UNSET) && accept(&map)).then_some(map);
    }
    for y in to.elements() {
        images.push(y);
        if let Some(found) = search_maps(from, to, gens, images, accept) {
            return Some(found);
        }
        images.pop();
    }
    None
}

/// A unital ring homomorphism `from → to`, the one with the
/// lexicographically smallest images of a fixed generating set.
pub fn ring_homomorphism(from: &FiniteRing, to: &FiniteRing) -> Result<Vec<Elem>> {
    let gens = ring_generators(from);
    search_maps(from, to, &gens, &mut Vec::new(), &|_| true).ok_or_else(|| {
        Error::NoHomomorphism(format!(
            "from a ring of size {} to one of size {}",
            from.size(),
            to.size()
        ))
    })
}

/// Brute-force isomorphism search, meant for rings of at most 16 elements.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    let gens = ring_generators(a);
    let bijective = |map: &[Elem]| {
        let mut seen = vec![false; b.size()];
        map.iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    };
    search_maps(a, b, &gens, &mut Vec::new(), &bijective)
}
