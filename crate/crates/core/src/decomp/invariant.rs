//! `End(X)`-invariant subspaces of the vertex spaces, and zero divisors of
//! `End(X)` found through them.
//!
//! Arrow maps commute with every endomorphism, so images, preimages, kernels and
//! intersections built from them are invariant, as are eigenspaces of
//! `X_β⁻¹X_α` for parallel arrows. In an isotypic block `M ⊗ kⁿ` the smallest
//! such subspaces are often `u ⊗ kⁿ` with `u` a line; a vector there is a pure
//! tensor and its annihilator is a left ideal of `End(X)` not contained in the
//! radical. That gives splitting elements when random search only meets
//! elements with irreducible minimal polynomials (`M_n(ℚ)`, `n ≥ 2`).

use crate::error::Result;
use crate::linalg::{minimal_polynomial, Field, Matrix};
use crate::rep::{HomSpace, Morphism, Representation};

const MAX_PER_VERTEX: usize = 48;
const ROUNDS: usize = 3;

fn same_span(u: &Matrix, w: &Matrix) -> bool {
    u.cols() == w.cols() && Matrix::hstack(u.field(), u.rows(), &[u, w]).rank() == u.cols()
}

fn push(list: &mut Vec<Matrix>, u: Matrix) -> bool {
    if u.cols() == 0 || list.len() >= MAX_PER_VERTEX || list.iter().any(|w| same_span(w, &u)) {
        return false;
    }
    list.push(u);
    true
}

fn intersect(field: Field, u: &Matrix, w: &Matrix) -> Matrix {
    let neg = w.scale(&-field.one());
    let k = Matrix::hstack(field, u.rows(), &[u, &neg]).kernel_basis();
    if k.cols() == 0 {
        return Matrix::zeros(field, u.rows(), 0);
    }
    (u * &k.block(0, 0, u.cols(), k.cols())).image_basis()
}

/// `{v : a v ∈ span w}`.
fn preimage(field: Field, a: &Matrix, w: &Matrix) -> Matrix {
    let c = w.cokernel_projection();
    if c.rows() == 0 {
        return Matrix::identity(field, a.cols());
    }
    (&c * a).kernel_basis()
}

/// Invariant subspaces of each `X_i` (0-based), bases as columns.
pub(crate) fn invariant_subspaces(x: &Representation) -> Vec<Vec<Matrix>> {
    let field = x.field();
    let q = x.quiver();
    let n = q.vertex_count();
    let mut spaces: Vec<Vec<Matrix>> =
        (0..n).map(|i| if x.dim(i + 1) > 0 { vec![Matrix::identity(field, x.dim(i + 1))] } else { Vec::new() }).collect();
    for (ka, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source - 1, a.target - 1);
        push(&mut spaces[s], x.map(ka).kernel_basis());
        push(&mut spaces[t], x.map(ka).image_basis());
        for (kb, b) in q.arrows().iter().enumerate() {
            if ka == kb || (b.source, b.target) != (a.source, a.target) {
                continue;
            }
            let Some(inv) = x.map(kb).inverse() else { continue };
            for (op, v) in [(&inv * x.map(ka), s), (x.map(ka) * &inv, t)] {
                for lambda in minimal_polynomial(&op).roots() {
                    let shifted = &op - &Matrix::scalar(field, op.rows(), &lambda);
                    push(&mut spaces[v], shifted.kernel_basis());
                }
            }
        }
    }
    for _ in 0..ROUNDS {
        let snapshot = spaces.clone();
        let mut grew = false;
        for (k, a) in q.arrows().iter().enumerate() {
            let (s, t) = (a.source - 1, a.target - 1);
            for u in &snapshot[s] {
                grew |= push(&mut spaces[t], (x.map(k) * u).image_basis());
            }
            for w in &snapshot[t] {
                grew |= push(&mut spaces[s], preimage(field, x.map(k), w));
            }
        }
        for (i, list) in snapshot.iter().enumerate() {
            for (p, u) in list.iter().enumerate() {
                for w in &list[p + 1..] {
                    grew |= push(&mut spaces[i], intersect(field, u, w));
                }
            }
        }
        if !grew {
            break;
        }
    }
    spaces
}

/// Feeds `try_one` elements of annihilators of vectors in the smallest invariant
/// subspaces, and their left multiples by the basis; stops at the first `Some`.
pub(crate) fn search_annihilators(
    end: &HomSpace,
    mut try_one: impl FnMut(&Morphism) -> Result<Option<Morphism>>,
) -> Result<Option<Morphism>> {
    let x = end.source();
    let field = x.field();
    let spaces = invariant_subspaces(x);
    let mut order: Vec<(usize, usize, usize)> = Vec::new();
    for (i, list) in spaces.iter().enumerate() {
        for (k, u) in list.iter().enumerate() {
            order.push((u.cols(), i, k));
        }
    }
    order.sort_unstable();
    let basis = end.basis();
    for (_, i, k) in order {
        let u = &spaces[i][k];
        for v in u.columns() {
            let cols: Vec<_> = basis.iter().map(|b| b.components()[i].apply(&v)).collect();
            let ann = Matrix::from_columns(field, x.dim(i + 1), &cols).kernel_basis();
            for c in ann.columns() {
                let z = end.combination(&c);
                if let Some(s) = try_one(&z)? {
                    return Ok(Some(s));
                }
                for b in basis {
                    if let Some(s) = try_one(&b.compose(&z)?)? {
                        return Ok(Some(s));
                    }
                }
            }
        }
    }
    Ok(None)
}
