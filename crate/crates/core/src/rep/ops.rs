use std::sync::Arc;

use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The subrepresentation whose space at `i` is the column span of `bases[i - 1]`
/// (columns independent), and its inclusion.
pub fn subrep(x: &Arc<Representation>, bases: Vec<Matrix>) -> Result<(Arc<Representation>, Morphism)> {
    check_len(x, &bases)?;
    for (i, b) in bases.iter().enumerate() {
        if b.rows() != x.dims()[i] || b.rank() != b.cols() {
            return Err(Error::Shape(format!("basis at vertex {} is not an injective {}-row matrix", i + 1, x.dims()[i])));
        }
    }
    let mut maps = Vec::with_capacity(x.maps().len());
    for (k, a) in x.quiver().arrows().iter().enumerate() {
        let moved = x.map(k) * &bases[a.source - 1];
        let m = bases[a.target - 1]
            .solve(&moved)?
            .ok_or_else(|| Error::Invalid(format!("subspaces not closed under arrow {}", a.label)))?;
        maps.push(m);
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    let u = Arc::new(Representation::new(x.field(), x.quiver().clone(), dims, maps)?);
    let inc = Morphism::new_unchecked(u.clone(), x.clone(), bases)?;
    Ok((u, inc))
}

/// `X / U` where `U_i` is the column span of `spans[i - 1]` (columns may be dependent),
/// and the projection `X -> X / U`.
pub fn quotient(x: &Arc<Representation>, spans: &[Matrix]) -> Result<(Arc<Representation>, Morphism)> {
    check_len(x, spans)?;
    let proj: Vec<Matrix> = spans.iter().map(Matrix::cokernel_projection).collect();
    for (i, (s, c)) in spans.iter().zip(&proj).enumerate() {
        if s.rows() != x.dims()[i] || c.cols() != x.dims()[i] {
            return Err(Error::Shape(format!("span at vertex {} has {} rows", i + 1, s.rows())));
        }
    }
    let mut maps = Vec::with_capacity(x.maps().len());
    for (k, a) in x.quiver().arrows().iter().enumerate() {
        // M C_s = C_t X_α, solved as C_sᵀ Mᵀ = (C_t X_α)ᵀ.
        let rhs = (&proj[a.target - 1] * x.map(k)).transpose();
        let m = proj[a.source - 1]
            .transpose()
            .solve(&rhs)?
            .ok_or_else(|| Error::Invalid(format!("subspaces not closed under arrow {}", a.label)))?;
        maps.push(m.transpose());
    }
    let dims = proj.iter().map(Matrix::rows).collect();
    let c = Arc::new(Representation::new(x.field(), x.quiver().clone(), dims, maps)?);
    let pi = Morphism::new_unchecked(x.clone(), c.clone(), proj)?;
    Ok((c, pi))
}

fn check_len(x: &Representation, parts: &[Matrix]) -> Result<()> {
    if parts.len() != x.dims().len() {
        return Err(Error::Shape(format!("{} subspaces for {} vertices", parts.len(), x.dims().len())));
    }
    Ok(())
}

/// `Ker φ` and its inclusion into the source.
pub fn kernel(f: &Morphism) -> Result<(Arc<Representation>, Morphism)> {
    let bases = f.components().iter().map(Matrix::kernel_basis).collect();
    subrep(f.source(), bases)
}

/// `Coker φ` and the projection from the target.
pub fn cokernel(f: &Morphism) -> Result<(Arc<Representation>, Morphism)> {
    quotient(f.target(), f.components())
}

/// `Im φ` with the factorization `X -> Im φ -> Y` (epi, then inclusion).
pub fn image(f: &Morphism) -> Result<(Arc<Representation>, Morphism, Morphism)> {
    let bases: Vec<Matrix> = f.components().iter().map(Matrix::image_basis).collect();
    let (im, inc) = subrep(f.target(), bases)?;
    let mut fac = Vec::with_capacity(f.components().len());
    for (i, c) in f.components().iter().enumerate() {
        let inc_i = inc.components()[i].clone();
        fac.push(inc_i.solve(c)?.expect("a map factors through its image"));
    }
    let epi = Morphism::new_unchecked(f.source().clone(), im.clone(), fac)?;
    Ok((im, epi, inc))
}
