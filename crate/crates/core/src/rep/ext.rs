use std::sync::Arc;

use super::construct::{direct_sum, projective_with_paths, yoneda, DirectSum};
use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// `P¹ --d--> P⁰ --ε--> Z -> 0` with `P⁰ = ⊕ᵢ P(i)^{dim Z_i}` (summands ordered by
/// vertex, then basis vector of `Z_i`) and `P¹ = ⊕_α P(t(α))^{dim Z_{s(α)}}`
/// (ordered by arrow index, then basis vector of `Z_{s(α)}`).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: DirectSum,
    pub p1: DirectSum,
    pub d: Morphism,
    pub epsilon: Morphism,
    /// `(vertex, column of P⁰_vertex)` of each summand's generator `e_i`.
    pub p0_generators: Vec<(usize, usize)>,
    pub p1_generators: Vec<(usize, usize)>,
}

/// Requires an acyclic quiver so that every `P(i)` is finite dimensional.
pub fn projective_presentation(z: &Arc<Representation>) -> Result<Presentation> {
    let q = z.quiver();
    let field = z.field();
    let n = q.vertex_count();
    let mut projs = Vec::with_capacity(n);
    for i in 1..=n {
        let (p, paths) = projective_with_paths(field, q, i)?;
        projs.push((Arc::new(p), paths));
    }

    let mut p0_parts = Vec::new();
    let mut p0_keys = Vec::new();
    for i in 1..=n {
        for b in 0..z.dim(i) {
            p0_parts.push(projs[i - 1].0.clone());
            p0_keys.push((i, b));
        }
    }
    let mut p1_parts = Vec::new();
    let mut p1_keys = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        for b in 0..z.dim(a.source) {
            p1_parts.push(projs[a.target - 1].0.clone());
            p1_keys.push((k, b));
        }
    }
    let p0 = direct_sum(field, q, &p0_parts)?;
    let p1 = direct_sum(field, q, &p1_parts)?;

    // Column of P⁰_j at which summand `idx` places its path number `pos`.
    let p0_column = |idx: usize, j: usize, pos: usize| -> usize {
        p0_parts[..idx].iter().map(|p| p.dim(j)).sum::<usize>() + pos
    };
    let p0_index = |i: usize, b: usize| p0_keys.iter().position(|&key| key == (i, b)).expect("summand exists");
    let p0_generators: Vec<(usize, usize)> =
        p0_keys.iter().enumerate().map(|(idx, &(i, _))| (i, p0_column(idx, i, 0))).collect();
    let p1_generators: Vec<(usize, usize)> = p1_keys
        .iter()
        .enumerate()
        .map(|(idx, &(k, _))| {
            let t = q.arrow(k).target;
            (t, p1_parts[..idx].iter().map(|p| p.dim(t)).sum::<usize>())
        })
        .collect();

    let p0_sum = p0.sum.clone();
    let mut d = Morphism::zero(&p1.sum, &p0_sum);
    for (idx, &(k, b)) in p1_keys.iter().enumerate() {
        let a = q.arrow(k);
        let (s, t) = (a.source, a.target);
        // d(e_t of summand (α, b)) = α in summand (s, b) - Σ_c Z_α[c, b] e_t in summand (t, c).
        let mut w = vec![field.zero(); p0_sum.dim(t)];
        let path_pos = projs[s - 1].1[t - 1]
            .iter()
            .position(|p| p.arrows == [k])
            .expect("arrow is a path");
        let src = p0_index(s, b);
        w[p0_column(src, t, path_pos)] = field.one();
        for c in 0..z.dim(t) {
            let coef = z.map(k).get(c, b);
            if !coef.is_zero() {
                let col = p0_column(p0_index(t, c), t, 0);
                w[col] = &w[col] - coef;
            }
        }
        let piece = yoneda(&p0_sum, t, &w)?.retarget(p1_parts[idx].clone(), p0_sum.clone())?;
        d = d.add(&piece.compose(&p1.projections[idx])?)?;
    }

    let mut epsilon = Morphism::zero(&p0_sum, z);
    for (idx, &(i, b)) in p0_keys.iter().enumerate() {
        let mut e = vec![field.zero(); z.dim(i)];
        e[b] = field.one();
        let piece = yoneda(z, i, &e)?.retarget(p0_parts[idx].clone(), z.clone())?;
        epsilon = epsilon.add(&piece.compose(&p0.projections[idx])?)?;
    }
    Ok(Presentation { p0, p1, d, epsilon, p0_generators, p1_generators })
}

/// `dim Ext(Z, X)`: the cokernel of `Hom(P⁰, X) -> Hom(P¹, X)`, `ψ ↦ ψ ∘ d`.
///
/// A morphism out of `P¹` is determined by where it sends the summand generators,
/// so both Hom spaces are read off generator values.
pub fn ext_dim(z: &Arc<Representation>, x: &Arc<Representation>) -> Result<usize> {
    z.same_quiver(x)?;
    if !z.quiver().is_acyclic() {
        return Err(Error::Cyclic);
    }
    let pres = projective_presentation(z)?;
    let field = z.field();
    let value_len: usize = pres.p1_generators.iter().map(|&(t, _)| x.dim(t)).sum();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for (idx, &(i, _)) in pres.p0_generators.iter().enumerate() {
        for u in 0..x.dim(i) {
            let mut e = vec![field.zero(); x.dim(i)];
            e[u] = field.one();
            let summand = pres.p0.projections[idx].target().clone();
            let psi = yoneda(x, i, &e)?.retarget(summand, x.clone())?.compose(&pres.p0.projections[idx])?;
            let comp = psi.compose(&pres.d)?;
            let mut col = Vec::with_capacity(value_len);
            for &(t, c) in &pres.p1_generators {
                let m = comp.comp(t);
                col.extend((0..m.rows()).map(|r| m.get(r, c).clone()));
            }
            columns.push(col);
        }
    }
    if columns.is_empty() {
        return Ok(value_len);
    }
    let rank = Matrix::from_columns(field, value_len, &columns).rank();
    Ok(value_len - rank)
}

/// `dim Ext(Z, X)` from the exact sequence
/// `0 -> Hom(Z, X) -> ⊕ᵢ Hom(Zᵢ, Xᵢ) -> ⊕_α Hom(Z_{s(α)}, X_{t(α)}) -> Ext(Z, X) -> 0`.
/// No projectives are needed, so oriented cycles are allowed.
pub fn ext_dim_standard(z: &Arc<Representation>, x: &Arc<Representation>) -> Result<usize> {
    z.same_quiver(x)?;
    let arrows: usize = z.quiver().arrows().iter().map(|a| z.dim(a.source) * x.dim(a.target)).sum();
    let vertices: usize = z.quiver().vertices().map(|i| z.dim(i) * x.dim(i)).sum();
    Ok(arrows + super::hom_dim(z, x)? - vertices)
}
