//! Catalog of finite local base rings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bimodule::{trivial_extension, Bimodule};
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, Provenance, MAX_RING_SIZE};

/// Bimodule over a local ring used by [`LocalRingSpec::TrivialExt`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtModule {
    /// The ring acting on itself.
    Regular,
    /// `S^k` with diagonal actions.
    Power(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalRingSpec {
    /// `Z/p^k`.
    Zpk { p: u32, k: u32 },
    /// Finite field with `q` elements.
    Gf { q: u32 },
    /// `GF(q)[x]/(x^m)`.
    TruncatedPoly { q: u32, m: u32 },
    /// `S ⋉ B`.
    TrivialExt {
        base: Box<LocalRingSpec>,
        module: ExtModule,
    },
}

impl LocalRingSpec {
    pub fn gf(q: u32) -> LocalRingSpec {
        LocalRingSpec::Gf { q }
    }

    /// Number of elements, without building the ring.
    pub fn order(&self) -> u64 {
        match self {
            LocalRingSpec::Zpk { p, k } => (*p as u64).pow(*k),
            LocalRingSpec::Gf { q } => *q as u64,
            LocalRingSpec::TruncatedPoly { q, m } => (*q as u64).pow(*m),
            LocalRingSpec::TrivialExt { base, module } => {
                let s = base.order();
                match module {
                    ExtModule::Regular => s * s,
                    ExtModule::Power(k) => s * s.pow(*k),
                }
            }
        }
    }
}

impl fmt::Display for LocalRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalRingSpec::Zpk { p, k } => write!(f, "Z/{p}^{k}"),
            LocalRingSpec::Gf { q } => write!(f, "GF({q})"),
            LocalRingSpec::TruncatedPoly { q, m } => write!(f, "GF({q})[x]/(x^{m})"),
            LocalRingSpec::TrivialExt { base, module } => match module {
                ExtModule::Regular => write!(f, "{base}⋉{base}"),
                ExtModule::Power(k) => write!(f, "{base}⋉{base}^{k}"),
            },
        }
    }
}

/// `Some((p, k))` when `q = p^k` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn is_prime(p: u32) -> bool {
    matches!(prime_power(p), Some((_, 1)))
}

/// Polynomial over `Z/p` as coefficient vector, lowest degree first.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate() {
            let idx = d - k + t;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn poly_rem_is_zero(a: &[u32], divisor: &[u32], p: u32) -> bool {
    // divisor monic
    let mut r = a.to_vec();
    let dd = divisor.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (t, &c) in divisor.iter().enumerate() {
                r[shift + t] = (r[shift + t] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn digits(mut x: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % base);
        x /= base;
    }
    out
}

fn undigits(d: &[u32], base: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * base + c)
}

/// Smallest monic irreducible polynomial of degree `k` over `Z/p`
/// (coefficients lowest first, including the leading 1).
fn irreducible_poly(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = p.pow(k as u32);
    'candidates: for tail in 0..count {
        let mut f = digits(tail, p, k);
        f.push(1);
        for d in 1..=k / 2 {
            for low in 0..p.pow(d as u32) {
                let mut g = digits(low, p, d);
                g.push(1);
                if poly_rem_is_zero(&f, &g, p) {
                    continue 'candidates;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn ring_from_fn(
    size: usize,
    add: impl Fn(u32, u32) -> u32,
    mul: impl Fn(u32, u32) -> u32,
    one: Elem,
) -> FiniteRing {
    let mut at = Vec::with_capacity(size * size);
    let mut mt = Vec::with_capacity(size * size);
    for a in 0..size as u32 {
        for b in 0..size as u32 {
            at.push(add(a, b) as u16);
            mt.push(mul(a, b) as u16);
        }
    }
    FiniteRing::from_tables_unchecked(size, at, mt, one, Provenance::FormalMatrixBuilt, None)
}

fn gf(q: u32) -> Result<FiniteRing> {
    let (p, k) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameters(format!("GF({q}): {q} is not a prime power")))?;
    if k == 1 {
        return Ok(ring_from_fn(
            q as usize,
            |a, b| (a + b) % p,
            |a, b| (a * b) % p,
            1,
        ));
    }
    let f = irreducible_poly(p, k);
    let k = k as usize;
    Ok(ring_from_fn(
        q as usize,
        |a, b| {
            let (x, y) = (digits(a, p, k), digits(b, p, k));
            let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
            undigits(&s, p)
        },
        |a, b| undigits(&poly_mulmod(&digits(a, p, k), &digits(b, p, k), &f, p), p),
        1,
    ))
}

fn truncated_poly(q: u32, m: u32) -> Result<FiniteRing> {
    if m == 0 {
        return Err(Error::InvalidParameters(
            "GF(q)[x]/(x^m) needs m ≥ 1".into(),
        ));
    }
    let field = gf(q)?;
    let m = m as usize;
    let size = (q as u64).pow(m as u32);
    if size > MAX_RING_SIZE as u64 {
        return Err(Error::TooLarge {
            size: size as usize,
            bound: MAX_RING_SIZE,
        });
    }
    Ok(ring_from_fn(
        size as usize,
        |a, b| {
            let (x, y) = (digits(a, q, m), digits(b, q, m));
            let s: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| field.add(u, v)).collect();
            undigits(&s, q)
        },
        |a, b| {
            let (x, y) = (digits(a, q, m), digits(b, q, m));
            let mut s = vec![0u32; m];
            for i in 0..m {
                for j in 0..m - i {
                    s[i + j] = field.add(s[i + j], field.mul(x[i], y[j]));
                }
            }
            undigits(&s, q)
        },
        1,
    ))
}

fn realize(spec: &LocalRingSpec) -> Result<FiniteRing> {
    if spec.order() > MAX_RING_SIZE as u64 {
        return Err(Error::TooLarge {
            size: spec.order().min(usize::MAX as u64) as usize,
            bound: MAX_RING_SIZE,
        });
    }
    match spec {
        LocalRingSpec::Zpk { p, k } => {
            if !is_prime(*p) || *k == 0 {
                return Err(Error::InvalidParameters(format!(
                    "Z/{p}^{k} needs p prime and k ≥ 1"
                )));
            }
            let n = p.pow(*k);
            Ok(ring_from_fn(
                n as usize,
                |a, b| (a + b) % n,
                |a, b| (a * b) % n,
                1 % n,
            ))
        }
        LocalRingSpec::Gf { q } => gf(*q),
        LocalRingSpec::TruncatedPoly { q, m } => truncated_poly(*q, *m),
        LocalRingSpec::TrivialExt { base, module } => {
            let s = make_local(base)?;
            let b = match module {
                ExtModule::Regular => Bimodule::regular(&s),
                ExtModule::Power(k) => Bimodule::power(&s, *k as usize),
            };
            trivial_extension(&s, &b)
        }
    }
}

/// Realize a catalog ring and verify that it is local (its non-units form
/// an ideal).
pub fn make_local(spec: &LocalRingSpec) -> Result<FiniteRing> {
    let ring = realize(spec)?;
    check_local(&ring)?;
    Ok(ring)
}

pub fn check_local(ring: &FiniteRing) -> Result<()> {
    let units = ring.units();
    let non_units: Vec<Elem> = ring
        .elements()
        .filter(|&x| !units.contains(x as usize))
        .collect();
    for &a in &non_units {
        for &b in &non_units {
            if units.contains(ring.add(a, b) as usize) {
                return Err(Error::NotLocal(format!("non-units {a} + {b} is a unit")));
            }
        }
        for r in ring.elements() {
            if units.contains(ring.mul(a, r) as usize) || units.contains(ring.mul(r, a) as usize) {
                return Err(Error::NotLocal(format!("non-unit {a} times {r} is a unit")));
            }
        }
    }
    Ok(())
}
