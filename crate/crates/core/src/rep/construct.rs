use std::collections::HashMap;
use std::sync::Arc;

use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Path, Quiver};

/// P(i) together with its path basis: `paths[j - 1]` indexes the basis of `P(i)_j`.
pub fn projective_with_paths(field: Field, quiver: &Quiver, i: usize) -> Result<(Representation, Vec<Vec<Path>>)> {
    let all = quiver.paths_from(i)?;
    let n = quiver.vertex_count();
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); n];
    for p in all {
        paths[p.end(quiver) - 1].push(p);
    }
    let index: Vec<HashMap<&Path, usize>> =
        paths.iter().map(|ps| ps.iter().enumerate().map(|(k, p)| (p, k)).collect()).collect();
    let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
    let mut maps = Vec::with_capacity(quiver.arrows().len());
    for (k, a) in quiver.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1]);
        for (col, p) in paths[a.source - 1].iter().enumerate() {
            let row = index[a.target - 1][&p.then(quiver, k)];
            m.set(row, col, field.one());
        }
        maps.push(m);
    }
    Ok((Representation::new(field, quiver.clone(), dims, maps)?, paths))
}

/// The morphism `P(i) -> X` sending `e_i` to `w ∈ X_i`.
pub fn yoneda(x: &Arc<Representation>, i: usize, w: &[Scalar]) -> Result<Morphism> {
    if w.len() != x.dim(i) {
        return Err(Error::Shape(format!("vector of length {} in a space of dimension {}", w.len(), x.dim(i))));
    }
    let (p, paths) = projective_with_paths(x.field(), x.quiver(), i)?;
    let comps = paths
        .iter()
        .enumerate()
        .map(|(j, ps)| {
            let cols: Vec<Vec<Scalar>> = ps.iter().map(|path| x.path_map(path).apply(w)).collect();
            Matrix::from_columns(x.field(), x.dims()[j], &cols)
        })
        .collect();
    Morphism::new(Arc::new(p), x.clone(), comps)
}

/// `X₁ ⊕ ... ⊕ Xₖ` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Arc<Representation>,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(field: Field, quiver: &Quiver, parts: &[Arc<Representation>]) -> Result<DirectSum> {
    for p in parts {
        if p.quiver() != quiver || p.field() != field {
            return Err(Error::Invalid("summand over a different quiver or field".into()));
        }
    }
    let n = quiver.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
    let maps = (0..quiver.arrows().len())
        .map(|k| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.map(k)).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let sum = Arc::new(Representation::new(field, quiver.clone(), dims.clone(), maps)?);
    let mut offsets = vec![0usize; n];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let d = p.dims()[v];
            let mut e = Matrix::zeros(field, dims[v], d);
            e.set_block(offsets[v], 0, &Matrix::identity(field, d));
            proj.push(e.transpose());
            inj.push(e);
            offsets[v] += d;
        }
        injections.push(Morphism::new_unchecked(p.clone(), sum.clone(), inj)?);
        projections.push(Morphism::new_unchecked(sum.clone(), p.clone(), proj)?);
    }
    Ok(DirectSum { sum, injections, projections })
}
