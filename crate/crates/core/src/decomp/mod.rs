//! Endomorphism algebras, Fitting splitting, Krull-Remak-Schmidt decomposition
//! and the radical filtration.

mod invariant;
mod krs;
mod radical;

use std::sync::Arc;

use rand::seq::SliceRandom;

pub use krs::{indecomposable_isomorphism, is_isomorphic, krs_decompose, krs_decompose_seeded, Decomposition, Summand};
pub use radical::{harada_sai_check, irr_dim, rad_hom, rad_hom_trace, radn_hom, HomSubspace, RadContext};

use crate::error::{Error, Result};
use crate::linalg::{factor, minimal_polynomial, Field, Matrix, Scalar};
use crate::random;
use crate::rep::{direct_sum, image, kernel, DirectSum, HomSpace, Morphism, Representation};

/// `End(X)` with its canonical Hom basis and structure constants
/// `b_i b_j = Σ_k table[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub space: HomSpace,
    pub table: Vec<Vec<Vec<Scalar>>>,
}

impl EndAlgebra {
    pub fn new(x: &Arc<Representation>) -> Result<EndAlgebra> {
        let space = HomSpace::new(x, x)?;
        let b = space.basis();
        let mut table = Vec::with_capacity(b.len());
        for bi in b {
            let mut row = Vec::with_capacity(b.len());
            for bj in b {
                row.push(space.coordinates(&bi.compose(bj)?)?);
            }
            table.push(row);
        }
        Ok(EndAlgebra { space, table })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates of the identity.
    pub fn identity(&self) -> Result<Vec<Scalar>> {
        self.space.coordinates(&Morphism::identity(self.space.source()))
    }
}

/// The block-diagonal matrix of an endomorphism on `⊕ᵢ Xᵢ`.
pub fn total_matrix(f: &Morphism) -> Matrix {
    let parts: Vec<&Matrix> = f.components().iter().collect();
    Matrix::block_diag(f.field(), &parts)
}

pub fn is_nilpotent(f: &Morphism) -> bool {
    let m = total_matrix(f);
    m.rows() == 0 || m.pow(m.rows() as u64).is_zero()
}

fn shifted(f: &Morphism, c: &Scalar) -> Morphism {
    let id = Morphism::identity(f.source());
    f.sub(&id.scale(c)).expect("endomorphism")
}

/// `X = Im φʳ ⊕ Ker φʳ` for the stable exponent `r`.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub image: Arc<Representation>,
    pub kernel: Arc<Representation>,
    pub sum: DirectSum,
    /// Isomorphism `Im φʳ ⊕ Ker φʳ -> X`.
    pub witness: Morphism,
}

/// `None` when φ is invertible or nilpotent.
pub fn fitting_split(x: &Arc<Representation>, phi: &Morphism) -> Result<Option<FittingSplit>> {
    if **phi.source() != **x || **phi.target() != **x {
        return Err(Error::NotMorphism("Fitting splitting needs an endomorphism of the given representation".into()));
    }
    if let Some(a) = phi.intertwining_failure() {
        return Err(Error::NotMorphism(format!("fails to intertwine at arrow {}", x.quiver().arrow(a).label)));
    }
    let rank = |f: &Morphism| f.ranks().iter().sum::<usize>();
    let mut power = phi.clone();
    let mut r = rank(&power);
    loop {
        let next = power.compose(phi)?;
        let rn = rank(&next);
        if rn == r {
            break;
        }
        power = next;
        r = rn;
    }
    if r == 0 || r == x.total_dim() {
        return Ok(None);
    }
    let (im, _, im_inc) = image(&power)?;
    let (ker, ker_inc) = kernel(&power)?;
    let sum = direct_sum(x.field(), x.quiver(), &[im.clone(), ker.clone()])?;
    let comps = (0..x.dims().len())
        .map(|v| {
            let parts = [&im_inc.components()[v], &ker_inc.components()[v]];
            Matrix::hstack(x.field(), x.dims()[v], &parts)
        })
        .collect();
    let witness = Morphism::new(sum.sum.clone(), x.clone(), comps)?;
    debug_assert!(witness.is_isomorphism());
    Ok(Some(FittingSplit { image: im, kernel: ker, sum, witness }))
}

/// Proof that `End(X)` is local. `residue_map` has one row per dimension of
/// `End(X)/rad`; its kernel on Hom coordinates is `rad End(X)`. With a single row
/// the residue field is `k` and the row sends `φ` to the scalar `c` with `φ - c·id`
/// nilpotent.
#[derive(Clone, Debug)]
pub struct LocalCertificate {
    pub end: HomSpace,
    pub residue_map: Matrix,
}

impl LocalCertificate {
    /// Coordinates of `φ` in `End(X)/rad End(X)`.
    pub fn residue(&self, phi: &Morphism) -> Result<Vec<Scalar>> {
        let coords = self.end.coordinates(phi)?;
        Ok(self.residue_map.apply(&coords))
    }

    /// `φ ∉ rad End(X)`, equivalently `φ` invertible.
    pub fn is_unit(&self, phi: &Morphism) -> Result<bool> {
        Ok(self.residue(phi)?.iter().any(|c| !c.is_zero()))
    }

    /// `[End(X)/rad : k]`.
    pub fn residue_degree(&self) -> usize {
        self.residue_map.rows()
    }

    /// The scalar residue when the residue field is `k`.
    pub fn scalar_residue(&self, phi: &Morphism) -> Result<Option<Scalar>> {
        if self.residue_degree() != 1 {
            return Ok(None);
        }
        Ok(self.residue(phi)?.pop())
    }
}

/// The trace form detects `rad End(X)` when the characteristic is 0 or exceeds `dim X`.
pub fn trace_form_applies(field: Field, total_dim: usize) -> bool {
    match field {
        Field::Rationals => true,
        Field::Prime(p) => p > total_dim as u64,
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Independent subset spanning the same space.
fn span_basis(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(field, len, vectors).image_basis().columns()
}

/// Tries to certify that `End(X)` is local.
pub fn certify_local(x: &Arc<Representation>, end: &HomSpace) -> Result<Option<LocalCertificate>> {
    let d = x.total_dim();
    let mut residues = Vec::with_capacity(end.dim());
    let mut split = true;
    for b in end.basis() {
        let mu = minimal_polynomial(&total_matrix(b));
        let roots = mu.roots();
        if roots.len() == 1 && mu.is_power_of_linear(&roots[0]) {
            residues.push(roots[0].clone());
            continue;
        }
        let irreducible = match factor(&mu) {
            Ok(fs) => fs.len() == 1,
            // Unknown factorization: leave the decision to the splitting search.
            Err(e) if e.is_incompleteness() => return Ok(None),
            Err(e) => return Err(e),
        };
        if !roots.is_empty() || !irreducible {
            // Two coprime factors of μ give a splitting element.
            return Ok(None);
        }
        split = false;
    }
    if split {
        certify_split_local(x, end, residues)
    } else if trace_form_applies(x.field(), d) {
        certify_field_residue(end)
    } else {
        Ok(None)
    }
}

/// Every basis element is `c_j id + n_j` with the `n_j` spanning a nilpotent subalgebra.
fn certify_split_local(x: &Arc<Representation>, end: &HomSpace, residues: Vec<Scalar>) -> Result<Option<LocalCertificate>> {
    let field = x.field();
    let d = x.total_dim();
    let nil: Vec<Matrix> = end
        .basis()
        .iter()
        .zip(&residues)
        .map(|(b, c)| &total_matrix(b) - &Matrix::scalar(field, d, c))
        .collect();
    // Nilpotency of the algebra generated by the n_j: N^k shrinks to 0 within d steps.
    let n_basis = span_basis(field, d * d, &nil.iter().map(flatten).collect::<Vec<_>>());
    let gens: Vec<Matrix> = n_basis.iter().map(|v| Matrix::new(field, d, d, v.clone()).expect("square")).collect();
    let mut layer = gens.clone();
    let mut steps = 0;
    while !layer.is_empty() {
        if steps > d {
            return Ok(None);
        }
        let products: Vec<Vec<Scalar>> = gens.iter().flat_map(|g| layer.iter().map(move |l| flatten(&(g * l)))).collect();
        layer = span_basis(field, d * d, &products)
            .into_iter()
            .map(|v| Matrix::new(field, d, d, v).expect("square"))
            .collect();
        steps += 1;
    }
    if trace_form_applies(field, d) {
        let rad = trace_radical_dim(end)?;
        if rad + 1 != end.dim() {
            return Err(Error::Incomplete(format!(
                "trace form gives a radical of dimension {rad} in a local algebra of dimension {}",
                end.dim()
            )));
        }
    }
    let residue_map = Matrix::from_rows(field, end.dim(), vec![residues])?;
    Ok(Some(LocalCertificate { end: end.clone(), residue_map }))
}

const PRIMITIVE_CANDIDATES: u64 = 16;

/// `End(X)/R` for the trace radical `R` is a field when it is commutative and some
/// element has an irreducible minimal polynomial of degree `dim End(X)/R`; the
/// quotient is then reduced, so that element generates it. Needs the trace form.
fn certify_field_residue(end: &HomSpace) -> Result<Option<LocalCertificate>> {
    let field = end.source().field();
    let gram = trace_gram(end);
    let residue_map = gram.transpose().image_basis().transpose();
    let m = residue_map.rows();
    let in_radical = |f: &Morphism| -> Result<bool> { Ok(residue_map.apply(&end.coordinates(f)?).iter().all(Scalar::is_zero)) };
    let b = end.basis();
    for (i, bi) in b.iter().enumerate() {
        for bj in &b[i + 1..] {
            if !in_radical(&bi.compose(bj)?.sub(&bj.compose(bi)?)?)? {
                return Ok(None);
            }
        }
    }
    let mut candidates: Vec<Morphism> = b.to_vec();
    for k in 0..PRIMITIVE_CANDIDATES {
        let mut rng = random::rng(0x9e1 ^ k);
        let coeffs: Vec<Scalar> = (0..b.len()).map(|_| random::scalar(field, &mut rng)).collect();
        candidates.push(end.combination(&coeffs));
    }
    for a in candidates {
        let fs = match factor(&minimal_polynomial(&total_matrix(&a))) {
            Ok(fs) => fs,
            Err(e) if e.is_incompleteness() => continue,
            Err(e) => return Err(e),
        };
        if fs.len() == 1 && fs[0].0.degree() == Some(m) {
            return Ok(Some(LocalCertificate { end: end.clone(), residue_map }));
        }
    }
    Ok(None)
}

fn trace_gram(end: &HomSpace) -> Matrix {
    let b = end.basis();
    let field = end.source().field();
    let mut gram = Matrix::zeros(field, b.len(), b.len());
    for (i, bi) in b.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let tr = bi
                .components()
                .iter()
                .zip(bj.components())
                .fold(field.zero(), |acc, (p, q)| &acc + &trace(&(p * q)));
            gram.set(i, j, tr);
        }
    }
    gram
}

/// `dim {a : tr(ab) = 0 for all b}` inside `End(X)`.
pub fn trace_radical_dim(end: &HomSpace) -> Result<usize> {
    Ok(end.dim() - trace_gram(end).rank())
}

pub(crate) fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).fold(m.field().zero(), |acc, i| &acc + m.get(i, i))
}

/// Outcome of the endomorphism search.
#[derive(Clone, Debug)]
pub enum SplitSearch {
    /// An endomorphism that is neither invertible nor nilpotent.
    Split(Morphism),
    Local(LocalCertificate),
}

#[derive(Clone, Copy, Debug)]
enum Recipe {
    Basis(usize),
    Product(usize, usize),
    Sum(usize, usize),
    Random(u64),
}

const RANDOM_CANDIDATES: u64 = 48;

/// Searches `End(X)` for a splitting element. `shuffle` permutes the candidate order.
pub fn find_split(x: &Arc<Representation>, shuffle: Option<u64>) -> Result<SplitSearch> {
    if x.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let end = HomSpace::new(x, x)?;
    if let Some(cert) = certify_local(x, &end)? {
        return Ok(SplitSearch::Local(cert));
    }
    let d = end.dim();
    let mut recipes: Vec<Recipe> = (0..d).map(Recipe::Basis).collect();
    for i in 0..d {
        for j in 0..d {
            recipes.push(Recipe::Product(i, j));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            recipes.push(Recipe::Sum(i, j));
        }
    }
    recipes.extend((0..RANDOM_CANDIDATES).map(Recipe::Random));
    if let Some(seed) = shuffle {
        recipes.shuffle(&mut random::rng(seed));
    }
    let b = end.basis();
    for r in recipes {
        let phi = match r {
            Recipe::Basis(i) => b[i].clone(),
            Recipe::Product(i, j) => b[i].compose(&b[j])?,
            Recipe::Sum(i, j) => b[i].add(&b[j])?,
            Recipe::Random(k) => {
                let mut rng = random::rng(0x5eed ^ k);
                let coeffs: Vec<Scalar> = (0..d).map(|_| random::scalar(x.field(), &mut rng)).collect();
                end.combination(&coeffs)
            }
        };
        match splitting_shift(&phi) {
            Ok(Some(s)) => return Ok(SplitSearch::Split(s)),
            Ok(None) => {}
            Err(e) if e.is_incompleteness() => {}
            Err(e) => return Err(e),
        }
    }
    let tolerant = |phi: &Morphism| match splitting_shift(phi) {
        Err(e) if e.is_incompleteness() => Ok(None),
        r => r,
    };
    if let Some(s) = invariant::search_annihilators(&end, tolerant)? {
        return Ok(SplitSearch::Split(s));
    }
    Err(Error::Incomplete(format!(
        "no splitting endomorphism found and End of dimension {d} could not be certified local"
    )))
}

/// An element of `k[φ]` that is neither invertible nor nilpotent: `φ` itself, or
/// `g(φ)` for the first irreducible factor `g` of a minimal polynomial with at
/// least two distinct factors.
fn splitting_shift(phi: &Morphism) -> Result<Option<Morphism>> {
    let field = phi.field();
    let mu = minimal_polynomial(&total_matrix(phi));
    let zero = field.zero();
    if mu.eval(&zero).is_zero() && !mu.is_power_of_linear(&zero) {
        return Ok(Some(phi.clone()));
    }
    let roots = mu.roots();
    if let Some(c) = roots.first() {
        if !mu.is_power_of_linear(c) {
            return Ok(Some(shifted(phi, c)));
        }
        return Ok(None);
    }
    let fs = factor(&mu)?;
    if fs.len() < 2 {
        return Ok(None);
    }
    let g = &fs[0].0;
    let comps = phi.components().iter().map(|m| g.eval_matrix(m)).collect();
    Ok(Some(Morphism::new(phi.source().clone(), phi.target().clone(), comps)?))
}

/// True iff the endomorphism search finds no splitting.
pub fn is_indecomposable(x: &Arc<Representation>) -> Result<bool> {
    match find_split(x, None)? {
        SplitSearch::Split(_) => Ok(false),
        SplitSearch::Local(_) => Ok(true),
    }
}

#[cfg(test)]
mod tests;
