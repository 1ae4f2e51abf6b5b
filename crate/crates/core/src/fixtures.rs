//! Small rings shared by unit tests.

use crate::formal::{build_formal_matrix, BimoduleSpec, FormalMatrixSpec};
use crate::local::{make_local, LocalRingSpec};
use crate::ring::FiniteRing;

pub fn k() -> LocalRingSpec {
    LocalRingSpec::gf(2)
}

pub fn wood_basic_spec() -> FormalMatrixSpec {
    let l = BimoduleSpec::zero_product(k());
    FormalMatrixSpec::new(
        vec![k(), k()],
        vec![
            vec![BimoduleSpec::Corner, l.clone()],
            vec![l, BimoduleSpec::Corner],
        ],
    )
}

pub fn b3_spec() -> FormalMatrixSpec {
    let e = BimoduleSpec::zero_product(k());
    let (z, c) = (BimoduleSpec::Zero, BimoduleSpec::Corner);
    FormalMatrixSpec::new(
        vec![k(), k(), k()],
        vec![
            vec![c.clone(), e.clone(), z.clone()],
            vec![z.clone(), c.clone(), e.clone()],
            vec![e, z, c],
        ],
    )
}

pub fn t2_spec() -> FormalMatrixSpec {
    FormalMatrixSpec::new(
        vec![k(), k()],
        vec![
            vec![BimoduleSpec::Corner, BimoduleSpec::zero_product(k())],
            vec![BimoduleSpec::Zero, BimoduleSpec::Corner],
        ],
    )
}

pub fn build(spec: FormalMatrixSpec) -> FiniteRing {
    build_formal_matrix(&spec).unwrap()
}

pub fn wood_basic() -> FiniteRing {
    build(wood_basic_spec())
}

pub fn wood() -> FiniteRing {
    build(wood_basic_spec().with_expand(vec![2, 1]))
}

pub fn b3() -> FiniteRing {
    build(b3_spec())
}

pub fn r4() -> FiniteRing {
    build(b3_spec().with_expand(vec![1, 1, 2]))
}

pub fn t2() -> FiniteRing {
    build(t2_spec())
}

pub fn z4() -> FiniteRing {
    make_local(&LocalRingSpec::Zpk { p: 2, k: 2 }).unwrap()
}

pub fn local(spec: LocalRingSpec) -> FiniteRing {
    make_local(&spec).unwrap()
}
