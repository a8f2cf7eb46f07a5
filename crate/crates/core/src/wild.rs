//! Total representations and the representation embeddings
//! `E: Rep Q -> Rep Γ`, `F: Rep Γ -> Rep K_3`, `F_Q = F E` and `F_r: Rep K_r -> Rep Λ_{r+2}`.
//!
//! `K_r` embeds `K_3` for every `r > 3` as well; only `K_3` and `Λ_{r+2}` are built here.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Quiver;
use crate::rep::{Morphism, Representation};

/// `X̄ = ⊕ X_i` with the idempotents `X̄_i` and the maps `X̄_α`, all endomorphisms of `X̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalRep {
    pub field: Field,
    pub dim: usize,
    /// `X̄_i`, indexed by vertex − 1.
    pub idempotents: Vec<Matrix>,
    /// `X̄_α`, in arrow order.
    pub arrows: Vec<Matrix>,
}

impl TotalRep {
    /// The family as one representation of the `(n + r)`-loop quiver; its morphisms are the
    /// linear maps commuting with every `X̄_i` and `X̄_α`.
    pub fn to_loop_rep(&self) -> Arc<Representation> {
        let mut maps = self.idempotents.clone();
        maps.extend(self.arrows.iter().cloned());
        let q = Quiver::loops(maps.len());
        Arc::new(Representation::new(self.field, q, vec![self.dim], maps).expect("square maps fit the loop quiver"))
    }

    fn check(&self, q: &Quiver) -> Result<()> {
        let n = q.vertex_count();
        if self.idempotents.len() != n || self.arrows.len() != q.arrows().len() {
            return Err(Error::NotTotal(format!(
                "{} idempotents and {} maps for {} vertices and {} arrows",
                self.idempotents.len(),
                self.arrows.len(),
                n,
                q.arrows().len()
            )));
        }
        for m in self.idempotents.iter().chain(&self.arrows) {
            if m.shape() != (self.dim, self.dim) || m.field() != self.field {
                return Err(Error::NotTotal(format!("a map of shape {:?} on a space of dimension {}", m.shape(), self.dim)));
            }
        }
        let zero = Matrix::zeros(self.field, self.dim, self.dim);
        let sum = self.idempotents.iter().fold(zero.clone(), |acc, e| &acc + e);
        if !sum.is_identity() {
            return Err(Error::NotTotal("idempotents do not sum to the identity".into()));
        }
        for (i, a) in self.idempotents.iter().enumerate() {
            for (j, b) in self.idempotents.iter().enumerate() {
                let expect = if i == j { a } else { &zero };
                if &(a * b) != expect {
                    return Err(Error::NotTotal(format!("phi_{} phi_{} is not delta phi", i + 1, j + 1)));
                }
            }
        }
        for (k, a) in q.arrows().iter().enumerate() {
            let squeezed = &(&self.idempotents[a.target - 1] * &self.arrows[k]) * &self.idempotents[a.source - 1];
            if squeezed != self.arrows[k] {
                return Err(Error::NotTotal(format!("arrow {} leaks outside its end points", a.label)));
            }
        }
        Ok(())
    }
}

/// Offsets of the vertex blocks inside `X̄`.
fn offsets(x: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(x.dims().len());
    let mut acc = 0;
    for &d in x.dims() {
        off.push(acc);
        acc += d;
    }
    off
}

pub fn total(x: &Representation) -> TotalRep {
    let field = x.field();
    let dim = x.total_dim();
    let off = offsets(x);
    let idempotents = x
        .quiver()
        .vertices()
        .map(|i| {
            let mut m = Matrix::zeros(field, dim, dim);
            m.set_block(off[i - 1], off[i - 1], &Matrix::identity(field, x.dim(i)));
            m
        })
        .collect();
    let arrows = x
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = Matrix::zeros(field, dim, dim);
            m.set_block(off[a.target - 1], off[a.source - 1], x.map(k));
            m
        })
        .collect();
    TotalRep { field, dim, idempotents, arrows }
}

/// `φ̄ = diag(φ_i)`.
pub fn total_morphism(f: &Morphism) -> Matrix {
    let refs: Vec<&Matrix> = f.components().iter().collect();
    Matrix::block_diag(f.field(), &refs)
}

/// `X_i = Im φ_i` and `X_α = X_s ↣ V --φ_α--> V ↠ X_t`.
pub fn untotal(t: &TotalRep, q: &Quiver) -> Result<Representation> {
    t.check(q)?;
    let bases: Vec<Matrix> = t.idempotents.iter().map(Matrix::image_basis).collect();
    // P_i with B_i P_i = φ_i: coordinates of the projection onto X_i.
    let projections = bases
        .iter()
        .zip(&t.idempotents)
        .map(|(b, e)| Ok(b.solve(e)?.expect("φ_i lands in its own image")))
        .collect::<Result<Vec<Matrix>>>()?;
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| &(&projections[a.target - 1] * &t.arrows[k]) * &bases[a.source - 1])
        .collect();
    let dims = bases.iter().map(Matrix::cols).collect();
    Representation::new(t.field, q.clone(), dims, maps)
}

/// `EX` on the two-loop quiver: `X̄^{n+r+2}`, σ the block shift, τ the block
/// subdiagonal `id` with `X̄_1, …, X̄_n, X̄_{α_1}, …, X̄_{α_r}` one step below it.
pub fn embed_e(x: &Representation) -> Arc<Representation> {
    let field = x.field();
    let t = total(x);
    let d = t.dim;
    let blocks = x.quiver().vertex_count() + x.quiver().arrows().len() + 2;
    let id = Matrix::identity(field, d);
    let mut sigma = Matrix::zeros(field, blocks * d, blocks * d);
    let mut tau = Matrix::zeros(field, blocks * d, blocks * d);
    for b in 0..blocks - 1 {
        sigma.set_block(b * d, (b + 1) * d, &id);
        tau.set_block((b + 1) * d, b * d, &id);
    }
    for (k, m) in t.idempotents.iter().chain(&t.arrows).enumerate() {
        tau.set_block((k + 2) * d, k * d, m);
    }
    Arc::new(
        Representation::new(field, Quiver::two_loop(), vec![blocks * d], vec![sigma, tau]).expect("square blocks"),
    )
}

/// `Eφ = diag(φ̄, …, φ̄)`.
pub fn embed_e_morphism(f: &Morphism) -> Result<Morphism> {
    let bar = total_morphism(f);
    let q = f.source().quiver();
    let blocks = q.vertex_count() + q.arrows().len() + 2;
    let diag = Matrix::block_diag(f.field(), &vec![&bar; blocks]);
    Morphism::new(embed_e(f.source()), embed_e(f.target()), vec![diag])
}

fn require_two_loop(x: &Representation) -> Result<()> {
    if x.quiver() != &Quiver::two_loop() {
        return Err(Error::WrongType("F needs a representation of the two-loop quiver".into()));
    }
    Ok(())
}

/// `FX = (X_σ, X_τ, id): X -> X` on `K_3`.
pub fn embed_f(x: &Representation) -> Result<Arc<Representation>> {
    require_two_loop(x)?;
    let d = x.dim(1);
    let maps = vec![x.map(0).clone(), x.map(1).clone(), Matrix::identity(x.field(), d)];
    Ok(Arc::new(Representation::new(x.field(), Quiver::kronecker_r(3), vec![d, d], maps)?))
}

/// `(Fφ)_1 = (Fφ)_2 = φ`.
pub fn embed_f_morphism(f: &Morphism) -> Result<Morphism> {
    let c = f.comp(1).clone();
    Morphism::new(embed_f(f.source())?, embed_f(f.target())?, vec![c.clone(), c])
}

/// `F_Q = F ∘ E`.
pub fn embed_fq(x: &Representation) -> Arc<Representation> {
    embed_f(&embed_e(x)).expect("E lands on the two-loop quiver")
}

pub fn embed_fq_morphism(f: &Morphism) -> Result<Morphism> {
    embed_f_morphism(&embed_e_morphism(f)?)
}

fn require_kronecker_r(x: &Representation) -> Result<usize> {
    let q = x.quiver();
    if q.vertex_count() != 2 || q.arrows().iter().any(|a| (a.source, a.target) != (1, 2)) {
        return Err(Error::WrongType("F_r needs a representation of an r-Kronecker quiver".into()));
    }
    Ok(q.arrows().len())
}

/// `F_r X` on `Λ_{r+2}`: ambient `X_1 × X_2` at the centre, then `X_1 × 0`, `0 × X_2` and the
/// graphs `{(v, X_{α_i} v)}`, each stored as its inclusion matrix.
pub fn embed_fr(x: &Representation) -> Result<Arc<Representation>> {
    let r = require_kronecker_r(x)?;
    let field = x.field();
    let (d1, d2) = (x.dim(1), x.dim(2));
    let mut first = Matrix::zeros(field, d1 + d2, d1);
    first.set_block(0, 0, &Matrix::identity(field, d1));
    let mut second = Matrix::zeros(field, d1 + d2, d2);
    second.set_block(d1, 0, &Matrix::identity(field, d2));
    let mut maps = vec![first, second];
    for k in 0..r {
        maps.push(Matrix::vstack(field, d1, &[&Matrix::identity(field, d1), x.map(k)]));
    }
    let mut dims = vec![d1, d2];
    dims.extend(std::iter::repeat_n(d1, r));
    dims.push(d1 + d2);
    Ok(Arc::new(Representation::new(field, Quiver::subspace(r + 2), dims, maps)?))
}

/// `(F_r φ)(v, w) = (φ_1 v, φ_2 w)`, restricted to each subspace.
pub fn embed_fr_morphism(f: &Morphism) -> Result<Morphism> {
    let r = require_kronecker_r(f.source())?;
    let (p1, p2) = (f.comp(1).clone(), f.comp(2).clone());
    let mut comps = vec![p1.clone(), p2.clone()];
    comps.extend(std::iter::repeat_n(p1.clone(), r));
    comps.push(Matrix::block_diag(f.field(), &[&p1, &p2]));
    Morphism::new(embed_fr(f.source())?, embed_fr(f.target())?, comps)
}

/// Targets of the `wild embed` verb.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedTarget {
    /// `E`, into the two-loop quiver.
    Gamma2,
    /// `F_Q`, into `K_3`.
    K3,
    /// `F_3 ∘ F_Q` into `Λ_5`, or `F_r` directly when the source is `K_r`.
    Subspace,
}

pub fn embed(x: &Representation, target: EmbedTarget) -> Result<Arc<Representation>> {
    match target {
        EmbedTarget::Gamma2 => Ok(embed_e(x)),
        EmbedTarget::K3 => Ok(embed_fq(x)),
        EmbedTarget::Subspace => match require_kronecker_r(x) {
            Ok(_) => embed_fr(x),
            Err(_) => embed_fr(&embed_fq(x)),
        },
    }
}

#[cfg(test)]
mod tests;
