//! Inputs shared by the benchmark targets. Seeds are fixed so runs compare.

use std::sync::Arc;

use qrep_core::kronecker::{kronecker_indec, KroneckerIndec, ProjectivePoint};
use qrep_core::rep::direct_sum;
use qrep_core::{random, Field, Matrix, Quiver, Representation};

pub fn random_matrix(field: Field, n: usize, seed: u64) -> Matrix {
    random::matrix(field, n, n, &mut random::rng(seed))
}

/// A conjugated sum of Kronecker indecomposables, total dimension 20.
pub fn kronecker_sum(field: Field, seed: u64) -> Arc<Representation> {
    let kinds = [
        KroneckerIndec::P { r: 1 },
        KroneckerIndec::P { r: 1 },
        KroneckerIndec::I { r: 2 },
        KroneckerIndec::R { p: 2, point: ProjectivePoint::affine(field.from_i64(3)) },
        KroneckerIndec::R { p: 1, point: ProjectivePoint::infinity(field) },
    ];
    let parts: Vec<_> = kinds.iter().map(|k| Arc::new(kronecker_indec(k, field).unwrap())).collect();
    let x = direct_sum(field, &Quiver::kronecker(), &parts).unwrap().sum;
    let mut rng = random::rng(seed);
    let g: Vec<Matrix> = x.dims().iter().map(|&d| random::invertible(field, d, &mut rng)).collect();
    x.base_change(&g).unwrap().0
}

pub fn random_rep(field: Field, q: &Quiver, dims: &[usize], seed: u64) -> Arc<Representation> {
    Arc::new(random::representation(field, q, dims, &mut random::rng(seed)))
}
