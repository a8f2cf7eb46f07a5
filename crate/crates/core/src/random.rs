//! Seeded random inputs for tests, benches and the acceptance suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rep::Representation;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over GF(p); integers in `[-3, 3]` over ℚ.
pub fn scalar(field: Field, rng: &mut TestRng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn matrix(field: Field, rows: usize, cols: usize, rng: &mut TestRng) -> Matrix {
    let data = (0..rows * cols).map(|_| scalar(field, rng)).collect();
    Matrix::new(field, rows, cols, data).expect("sized data")
}

pub fn invertible(field: Field, n: usize, rng: &mut TestRng) -> Matrix {
    loop {
        let m = matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn representation(field: Field, quiver: &Quiver, dims: &[usize], rng: &mut TestRng) -> Representation {
    let maps = quiver
        .arrows()
        .iter()
        .map(|a| matrix(field, dims[a.target - 1], dims[a.source - 1], rng))
        .collect();
    Representation::new(field, quiver.clone(), dims.to_vec(), maps).expect("shapes follow dims")
}
