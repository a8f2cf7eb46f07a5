use std::sync::Arc;

use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Kernel, Matrix, Scalar, SparseSystem};

/// `Hom(X, Y)` with a fixed basis.
///
/// Unknowns are the entries of `φ_1, ..., φ_n` in that order, each row-major;
/// the basis is the canonical kernel of the intertwining system, so the
/// coordinates of a morphism are its entries at the free unknowns.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Arc<Representation>,
    target: Arc<Representation>,
    offsets: Vec<usize>,
    kernel: Kernel,
    basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn new(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<HomSpace> {
        x.same_quiver(y)?;
        let field = x.field();
        let n = x.dims().len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for v in 0..n {
            offsets.push(acc);
            acc += x.dims()[v] * y.dims()[v];
        }
        offsets.push(acc);
        let unknown = |v: usize, r: usize, c: usize| offsets[v] + r * x.dims()[v] + c;
        let mut sys = SparseSystem::new(field, acc);
        for (k, a) in x.quiver().arrows().iter().enumerate() {
            let (s, t) = (a.source - 1, a.target - 1);
            let (ya, xa) = (y.map(k), x.map(k));
            // (Y_α φ_s - φ_t X_α)[r, c] = 0 for every r < dim Y_t, c < dim X_s.
            for r in 0..y.dims()[t] {
                for c in 0..x.dims()[s] {
                    let mut row = Vec::new();
                    for kk in 0..y.dims()[s] {
                        let v = ya.get(r, kk);
                        if !v.is_zero() {
                            row.push((unknown(s, kk, c), v.clone()));
                        }
                    }
                    for kk in 0..x.dims()[t] {
                        let v = xa.get(kk, c);
                        if !v.is_zero() {
                            row.push((unknown(t, r, kk), -v));
                        }
                    }
                    sys.push(row);
                }
            }
        }
        let kernel = sys.kernel();
        let mut space = HomSpace { source: x.clone(), target: y.clone(), offsets, kernel, basis: Vec::new() };
        space.basis = (0..space.kernel.dim())
            .map(|j| space.from_vector(&space.kernel.basis.column(j)))
            .collect::<Result<_>>()?;
        Ok(space)
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Flattens a morphism into the unknown vector.
    pub fn to_vector(&self, f: &Morphism) -> Vec<Scalar> {
        f.components().iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    fn from_vector(&self, v: &[Scalar]) -> Result<Morphism> {
        let field = self.source.field();
        let comps = (0..self.source.dims().len())
            .map(|i| {
                let (r, c) = (self.target.dims()[i], self.source.dims()[i]);
                Matrix::new(field, r, c, v[self.offsets[i]..self.offsets[i + 1]].to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    /// Coordinates of `f` in [`HomSpace::basis`]; `f` must intertwine.
    pub fn coordinates(&self, f: &Morphism) -> Result<Vec<Scalar>> {
        if **f.source() != *self.source || **f.target() != *self.target {
            return Err(Error::Invalid("morphism outside this Hom space".into()));
        }
        if f.intertwining_failure().is_some() {
            return Err(Error::NotMorphism("coordinates of a non-morphism".into()));
        }
        Ok(self.kernel.coordinates(&self.to_vector(f)))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Morphism {
        let terms: Vec<(Scalar, &Morphism)> = coeffs.iter().cloned().zip(&self.basis).collect();
        Morphism::linear_combination(&Morphism::zero(&self.source, &self.target), &terms)
    }
}

pub fn hom_basis(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Vec<Morphism>> {
    Ok(HomSpace::new(x, y)?.basis)
}

pub fn hom_dim(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<usize> {
    Ok(HomSpace::new(x, y)?.dim())
}
