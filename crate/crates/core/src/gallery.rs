//! Named example rings with their known invariants.

use crate::dsl::parse_and_resolve;
use crate::error::{Error, Result};
use crate::formal::FormalMatrixSpec;

/// Invariants a fresh classification must reproduce. Multiplicities are
/// sorted and the Nakayama permutation is recorded by its sorted cycle
/// lengths, so neither depends on how classes are numbered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub size: usize,
    pub m: usize,
    pub n: usize,
    pub mu: Vec<usize>,
    pub cycle_type: Option<Vec<usize>>,
    pub qf: bool,
    pub frobenius: bool,
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
    pub expected: Expected,
}

impl GalleryEntry {
    pub fn spec(&self) -> FormalMatrixSpec {
        parse_and_resolve(self.source)
            .expect("gallery sources resolve")
            .1
    }
}

fn expected(
    size: usize,
    m: usize,
    n: usize,
    mu: &[usize],
    cycles: Option<&[usize]>,
    qf: bool,
    frobenius: bool,
) -> Expected {
    Expected {
        size,
        m,
        n,
        mu: mu.to_vec(),
        cycle_type: cycles.map(<[usize]>::to_vec),
        qf,
        frobenius,
    }
}

pub fn gallery() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "wood-basic",
            summary: "basic Frobenius ring with Nakayama permutation (1 2)",
            source: "ring wood-basic {
  base K = GF(2)
  bimodule E = zero_product(K)
  matrix = [[K, E], [E, K]]
}
",
            expected: expected(16, 2, 2, &[1, 1], Some(&[2]), true, true),
        },
        GalleryEntry {
            name: "wood",
            summary: "QF but not Frobenius: wood-basic with multiplicities (2, 1)",
            source: "ring wood {
  base K = GF(2)
  bimodule E = zero_product(K)
  matrix = [[K, E], [E, K]]
  expand = [2, 1]
}
",
            expected: expected(512, 3, 2, &[1, 2], Some(&[2]), true, false),
        },
        GalleryEntry {
            name: "b3",
            summary: "basic Frobenius ring with Nakayama permutation (1 2 3)",
            source: "ring b3 {
  base S = GF(2)
  bimodule E = zero_product(S)
  matrix = [[S, E, 0], [0, S, E], [E, 0, S]]
}
",
            expected: expected(64, 3, 3, &[1, 1, 1], Some(&[3]), true, true),
        },
        GalleryEntry {
            name: "r4",
            summary: "b3 with multiplicities (1, 1, 2): QF, not Frobenius",
            source: "ring r4 {
  base S = GF(2)
  bimodule E = zero_product(S)
  matrix = [[S, E, 0], [0, S, E], [E, 0, S]]
  expand = [1, 1, 2]
}
",
            expected: expected(2048, 4, 3, &[1, 1, 2], Some(&[3]), true, false),
        },
        GalleryEntry {
            name: "t2",
            summary: "upper triangular 2x2 matrices over GF(2): QF-2, not Kasch",
            source: "ring t2 {
  base K = GF(2)
  bimodule E = zero_product(K)
  matrix = [[K, E], [0, K]]
}
",
            expected: expected(8, 2, 2, &[1, 1], None, false, false),
        },
        GalleryEntry {
            name: "z4",
            summary: "integers mod 4",
            source: "ring z4 {
  base A = Z/2^2
  matrix = [[A]]
}
",
            expected: expected(4, 1, 1, &[1], Some(&[1]), true, true),
        },
        GalleryEntry {
            name: "m2f2",
            summary: "2x2 matrices over GF(2)",
            source: "ring m2f2 {
  base K = GF(2)
  matrix = [[K]]
  expand = [2]
}
",
            expected: expected(16, 2, 1, &[2], Some(&[1]), true, true),
        },
        GalleryEntry {
            name: "gf2x2",
            summary: "dual numbers over GF(2)",
            source: "ring gf2x2 {
  base D = GF(2)[x]/(x^2)
  matrix = [[D]]
}
",
            expected: expected(4, 1, 1, &[1], Some(&[1]), true, true),
        },
        GalleryEntry {
            name: "gf4",
            summary: "the field with four elements",
            source: "ring gf4 {
  base F = GF(4)
  matrix = [[F]]
}
",
            expected: expected(4, 1, 1, &[1], Some(&[1]), true, true),
        },
        GalleryEntry {
            name: "ext2",
            summary: "GF(2) extended by GF(2)^2: local, socle of length 2, not QF",
            source: "ring ext2 {
  base K = GF(2)
  bimodule V = power(K, 2)
  base A = trivext(K, V)
  matrix = [[A]]
}
",
            expected: expected(8, 1, 1, &[1], None, false, false),
        },
    ]
}

pub fn lookup(name: &str) -> Result<GalleryEntry> {
    gallery()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidParameters(format!("no gallery ring named `{name}`")))
}

/// Cycle lengths of a permutation, sorted.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}
