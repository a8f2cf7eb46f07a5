//! Representations of quivers and their morphisms.
//!
//! Convention: `X_α` for `α: s -> t` is a `dim X_t x dim X_s` matrix acting on
//! coordinate columns, and a morphism component `φ_i` is `dim Y_i x dim X_i`.
//! Intertwining reads `Y_α φ_s = φ_t X_α`.

mod construct;
mod ext;
mod hom;
mod ops;

use std::sync::Arc;

pub use construct::{direct_sum, projective_with_paths, yoneda, DirectSum};
pub use ext::{ext_dim, ext_dim_standard, projective_presentation, Presentation};
pub use hom::{hom_basis, hom_dim, HomSpace};
pub use ops::{cokernel, image, kernel, quotient, subrep};

use crate::error::{Error, Result};
use crate::forms::DimVector;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    field: Field,
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// `dims[i - 1]` is the dimension at vertex `i`; `maps` follow arrow indices.
    pub fn new(field: Field, quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), quiver.vertex_count())));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Shape(format!("{} matrices for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dims[a.target - 1], dims[a.source - 1]);
            if m.shape() != want {
                return Err(Error::Shape(format!("arrow {} needs a {}x{} matrix, got {}x{}", a.label, want.0, want.1, m.rows(), m.cols())));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("arrow {} over {} in a representation over {field}", a.label, m.field())));
            }
        }
        Ok(Representation { field, quiver, dims, maps })
    }

    pub fn zero(field: Field, quiver: &Quiver) -> Representation {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation { field, quiver: quiver.clone(), dims, maps }
    }

    /// S(i): k at `i`, zero elsewhere (a loop at `i` acts by 0).
    pub fn simple(field: Field, quiver: &Quiver, i: usize) -> Representation {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[i - 1] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1]))
            .collect();
        Representation { field, quiver: quiver.clone(), dims, maps }
    }

    /// P(i): basis `Q(i, j)` at `j`, arrows acting by post-composition.
    pub fn projective(field: Field, quiver: &Quiver, i: usize) -> Result<Representation> {
        Ok(projective_with_paths(field, quiver, i)?.0)
    }

    /// I(i) = D P̄(i), with P̄(i) the projective of the opposite quiver.
    pub fn injective(field: Field, quiver: &Quiver, i: usize) -> Result<Representation> {
        Ok(Representation::projective(field, &quiver.opposite(), i)?.dual())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i - 1]
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Σᵢ dim Xᵢ, which is also the length of the representation.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn map_by_label(&self, label: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(label).map(|k| &self.maps[k])
    }

    /// `X_p` for a path, composed in traversal order.
    pub fn path_map(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dim(p.start));
        for &a in &p.arrows {
            m = &self.maps[a] * &m;
        }
        m
    }

    /// D X over the opposite quiver: every matrix transposed.
    pub fn dual(&self) -> Representation {
        Representation {
            field: self.field,
            quiver: self.quiver.opposite(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Same matrices, reinterpreted over a quiver with identical arrow shapes.
    pub fn with_quiver(&self, q: &Quiver) -> Result<Representation> {
        Representation::new(self.field, q.clone(), self.dims.clone(), self.maps.clone())
    }

    /// Transport along per-vertex invertible matrices `g`: `X'_α = g_t X_α g_s⁻¹`.
    /// Returns the new representation and the isomorphism `g: X -> X'`.
    pub fn base_change(self: &Arc<Self>, g: &[Matrix]) -> Result<(Arc<Representation>, Morphism)> {
        let mut inv = Vec::with_capacity(g.len());
        for (i, gi) in g.iter().enumerate() {
            if gi.shape() != (self.dims[i], self.dims[i]) {
                return Err(Error::Shape(format!("base change at vertex {} has shape {:?}", i + 1, gi.shape())));
            }
            inv.push(gi.inverse().ok_or_else(|| Error::Invalid(format!("base change at vertex {} is singular", i + 1)))?);
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target - 1] * m) * &inv[a.source - 1])
            .collect();
        let y = Arc::new(Representation { field: self.field, quiver: self.quiver.clone(), dims: self.dims.clone(), maps });
        let iso = Morphism::new(self.clone(), y.clone(), g.to_vec())?;
        Ok((y, iso))
    }

    /// Reinterprets every matrix over another field (see [`Matrix::to_field`]).
    pub fn to_field(&self, target: Field) -> Result<Representation> {
        let maps = self.maps.iter().map(|m| m.to_field(target)).collect::<Result<Vec<_>>>()?;
        Representation::new(target, self.quiver.clone(), self.dims.clone(), maps)
    }

    pub fn same_quiver(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::Invalid("representations live over different quivers".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }
}

/// A morphism `φ: X -> Y` of representations over the same quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Representation>,
    target: Arc<Representation>,
    comps: Vec<Matrix>,
}

impl Morphism {
    /// Checks shapes and the intertwining law.
    pub fn new(source: Arc<Representation>, target: Arc<Representation>, comps: Vec<Matrix>) -> Result<Morphism> {
        let m = Morphism::new_unchecked(source, target, comps)?;
        if let Some(a) = m.intertwining_failure() {
            return Err(Error::NotMorphism(format!("fails to intertwine at arrow {}", m.source.quiver.arrow(a).label)));
        }
        Ok(m)
    }

    /// Checks shapes only.
    pub fn new_unchecked(source: Arc<Representation>, target: Arc<Representation>, comps: Vec<Matrix>) -> Result<Morphism> {
        source.same_quiver(&target)?;
        if comps.len() != source.dims.len() {
            return Err(Error::Shape(format!("{} components for {} vertices", comps.len(), source.dims.len())));
        }
        for (i, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[i], source.dims[i]) {
                return Err(Error::Shape(format!(
                    "component at vertex {} is {}x{}, expected {}x{}",
                    i + 1,
                    c.rows(),
                    c.cols(),
                    target.dims[i],
                    source.dims[i]
                )));
            }
        }
        Ok(Morphism { source, target, comps })
    }

    /// First arrow where `Y_α φ_s ≠ φ_t X_α`.
    pub fn intertwining_failure(&self) -> Option<usize> {
        self.source.quiver.arrows().iter().enumerate().find_map(|(k, a)| {
            let lhs = self.target.map(k) * &self.comps[a.source - 1];
            let rhs = &self.comps[a.target - 1] * self.source.map(k);
            (lhs != rhs).then_some(k)
        })
    }

    pub fn identity(x: &Arc<Representation>) -> Morphism {
        let comps = x.dims.iter().map(|&d| Matrix::identity(x.field, d)).collect();
        Morphism { source: x.clone(), target: x.clone(), comps }
    }

    pub fn zero(x: &Arc<Representation>, y: &Arc<Representation>) -> Morphism {
        let comps = x.dims.iter().zip(&y.dims).map(|(&dx, &dy)| Matrix::zeros(x.field, dy, dx)).collect();
        Morphism { source: x.clone(), target: y.clone(), comps }
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Matrix {
        &self.comps[i - 1]
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if *first.target != *self.source {
            return Err(Error::NotComposable(0));
        }
        let comps = self.comps.iter().zip(&first.comps).map(|(a, b)| a * b).collect();
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), comps })
    }

    fn parallel(&self, other: &Morphism) -> Result<()> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::Invalid("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.parallel(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.parallel(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), comps: self.comps.iter().map(|m| m.scale(c)).collect() }
    }

    /// Σ cᵢ φᵢ over parallel morphisms; `template` fixes source and target.
    pub fn linear_combination(template: &Morphism, terms: &[(Scalar, &Morphism)]) -> Morphism {
        let mut acc = Morphism::zero(&template.source, &template.target);
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.comps.iter_mut().zip(&m.comps) {
                *a = &*a + &b.scale(c);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.comps.iter().all(Matrix::is_identity)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(Matrix::is_injective)
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(Matrix::is_surjective)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// Vertex-wise ranks.
    pub fn ranks(&self) -> Vec<usize> {
        self.comps.iter().map(Matrix::rank).collect()
    }

    /// Same components viewed between other (equal-shaped) endpoints.
    pub fn retarget(&self, source: Arc<Representation>, target: Arc<Representation>) -> Result<Morphism> {
        Morphism::new(source, target, self.comps.clone())
    }
}

#[cfg(test)]
mod tests;
