//! The Jordan quiver (`J_{p,λ}`, standard morphisms, uniserial chains) and the
//! Kronecker quiver (`P_r`, `I_r`, `R_{p,λ}` and the classifier).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decomp::{is_indecomposable, is_isomorphic, krs_decompose};
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, Field, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rep::{quotient, subrep, Morphism, Representation};

fn require_positive(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Invalid("size must be at least 1".into()));
    }
    Ok(())
}

/// `m − c·I`.
fn minus_scalar(m: &Matrix, c: &Scalar) -> Matrix {
    let mut s = m.clone();
    for i in 0..s.rows() {
        let v = s.get(i, i) - c;
        s.set(i, i, v);
    }
    s
}

/// `J_{p,λ} = (k^p, J(p, λ))` on the Jordan quiver.
pub fn jordan_rep(field: Field, p: usize, lambda: &Scalar) -> Result<Representation> {
    require_positive(p)?;
    Representation::new(field, Quiver::jordan(), vec![p], vec![Matrix::jordan_block(field, p, lambda)])
}

/// `e_i ↦ e_i` if `p <= q`, `e_i ↦ e_{i-(p-q)}` if `p > q` (with `e_i = 0` for `i <= 0`).
fn standard_matrix(field: Field, p: usize, q: usize) -> Matrix {
    let mut m = Matrix::zeros(field, q, p);
    let shift = p.saturating_sub(q);
    for i in shift..p {
        m.set(i - shift, i, field.one());
    }
    m
}

/// `φ_{p,q}: J_{p,λ} -> J_{q,λ}`.
pub fn standard_morphism(field: Field, p: usize, q: usize, lambda: &Scalar) -> Result<Morphism> {
    let x = Arc::new(jordan_rep(field, p, lambda)?);
    let y = Arc::new(jordan_rep(field, q, lambda)?);
    Morphism::new(x, y, vec![standard_matrix(field, p, q)])
}

/// `{φ_{i,q} φ_{p,i} : 1 <= i <= min(p, q)}` when `λ = μ`, empty otherwise.
pub fn jordan_hom_basis(field: Field, p: usize, lambda: &Scalar, q: usize, mu: &Scalar) -> Result<Vec<Morphism>> {
    require_positive(p)?;
    require_positive(q)?;
    if lambda != mu {
        return Ok(Vec::new());
    }
    (1..=p.min(q))
        .map(|i| standard_morphism(field, i, q, lambda)?.compose(&standard_morphism(field, p, i, lambda)?))
        .collect()
}

/// `0 = J_0 ⊆ J_{1,λ} ⊆ ... ⊆ J_{p,λ}` as images of the `φ_{q,p}`, each checked
/// against `Ker (J − λ)^q` with `J_{p,λ}/J_{q,λ} ≅ J_{p−q,λ}` verified by a witness.
pub fn jordan_subreps(field: Field, p: usize, lambda: &Scalar) -> Result<Vec<(Arc<Representation>, Morphism)>> {
    let x = Arc::new(jordan_rep(field, p, lambda)?);
    let nil = minus_scalar(x.map(0), lambda);
    let mut out = Vec::new();
    for q in 0..=p {
        let span = standard_matrix(field, q, p);
        let kernel = nil.pow(q as u64).kernel_basis();
        if span.rank() != kernel.cols() || Matrix::hstack(field, p, &[&span, &kernel]).rank() != q {
            return Err(Error::Invalid(format!("Ker (J-λ)^{q} is not the image of φ_{q},{p}")));
        }
        let (sub, incl) = subrep(&x, vec![span.clone()])?;
        if q < p {
            let (quo, _) = quotient(&x, &[span])?;
            let model = Arc::new(jordan_rep(field, p - q, lambda)?);
            if is_isomorphic(&quo, &model)?.is_none() {
                return Err(Error::Invalid(format!("J_{p}/J_{q} is not J_{}", p - q)));
            }
        }
        out.push((sub, incl));
    }
    Ok(out)
}

/// A point of ℙ¹, stored as `(λ₀ : 1)` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    l0: Scalar,
    l1: Scalar,
}

impl ProjectivePoint {
    pub fn new(l0: Scalar, l1: Scalar) -> Result<ProjectivePoint> {
        if l0.field() != l1.field() {
            return Err(Error::FieldMismatch(format!("({l0} : {l1})")));
        }
        let field = l0.field();
        match l1.inv() {
            Some(inv) => Ok(ProjectivePoint { l0: &l0 * &inv, l1: field.one() }),
            None if l0.is_zero() => Err(Error::Invalid("(0 : 0) is not a point".into())),
            None => Ok(ProjectivePoint { l0: field.one(), l1: field.zero() }),
        }
    }

    pub fn affine(l0: Scalar) -> ProjectivePoint {
        let one = l0.field().one();
        ProjectivePoint { l0, l1: one }
    }

    pub fn infinity(field: Field) -> ProjectivePoint {
        ProjectivePoint { l0: field.one(), l1: field.zero() }
    }

    pub fn coords(&self) -> (&Scalar, &Scalar) {
        (&self.l0, &self.l1)
    }

    pub fn field(&self) -> Field {
        self.l0.field()
    }

    /// The same point with coordinates mapped into `field` (renormalized).
    pub fn in_field(&self, field: Field) -> Result<ProjectivePoint> {
        let map = |s: &Scalar| match s {
            Scalar::Rational(q) => field.from_rational(q),
            Scalar::Modular { .. } if s.field() == field => Ok(s.clone()),
            Scalar::Modular { .. } => Err(Error::FieldMismatch(format!("{s} lives in {}, not {field}", s.field()))),
        };
        ProjectivePoint::new(map(&self.l0)?, map(&self.l1)?)
    }

    fn key(&self) -> (bool, ScalarKey) {
        (self.l1.is_zero(), ScalarKey(self.l0.clone()))
    }
}

#[derive(PartialEq, Eq)]
struct ScalarKey(Scalar);

impl PartialOrd for ScalarKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScalarKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Affine points by value, then `(1 : 0)`.
impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.l0, self.l1)
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.l0.to_string(), self.l1.to_string()].serialize(s)
    }
}

/// Coordinates are read as rationals; [`ProjectivePoint::in_field`] moves them.
impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let q = Field::Rationals;
        let parse = |s: &str| q.parse_scalar(s).map_err(serde::de::Error::custom);
        ProjectivePoint::new(parse(&a)?, parse(&b)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum KroneckerIndec {
    P { r: usize },
    I { r: usize },
    R { p: usize, point: ProjectivePoint },
}

impl KroneckerIndec {
    pub fn dims(&self) -> [usize; 2] {
        match self {
            KroneckerIndec::P { r } => [*r, r + 1],
            KroneckerIndec::I { r } => [r + 1, *r],
            KroneckerIndec::R { p, .. } => [*p, *p],
        }
    }
}

impl fmt::Display for KroneckerIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KroneckerIndec::P { r } => write!(f, "P_{r}"),
            KroneckerIndec::I { r } => write!(f, "I_{r}"),
            KroneckerIndec::R { p, point } => write!(f, "R_{{{p},{point}}}"),
        }
    }
}

/// `[id; 0]` and `[0; id]` (or their transposes for `I_r`), as `(rows, cols)` blocks.
fn stacked(field: Field, r: usize, top: bool) -> Matrix {
    let mut m = Matrix::zeros(field, r + 1, r);
    let off = usize::from(!top);
    for i in 0..r {
        m.set(i + off, i, field.one());
    }
    m
}

/// The representation for `kind`; `R_{p,(λ₀:1)} = (J(p, λ₀), id)` and `R_{p,(1:0)} = (id, J(p, 0))`.
pub fn kronecker_indec(kind: &KroneckerIndec, field: Field) -> Result<Representation> {
    let (dims, maps) = match kind {
        KroneckerIndec::P { r } => (vec![*r, r + 1], vec![stacked(field, *r, true), stacked(field, *r, false)]),
        KroneckerIndec::I { r } => {
            (vec![r + 1, *r], vec![stacked(field, *r, true).transpose(), stacked(field, *r, false).transpose()])
        }
        KroneckerIndec::R { p, point } => {
            require_positive(*p)?;
            let pt = point.in_field(field)?;
            let id = Matrix::identity(field, *p);
            if pt.l1.is_zero() {
                (vec![*p, *p], vec![id, Matrix::jordan_block(field, *p, &field.zero())])
            } else {
                (vec![*p, *p], vec![Matrix::jordan_block(field, *p, &pt.l0), id])
            }
        }
    };
    Representation::new(field, Quiver::kronecker(), dims, maps)
}

/// `R_{p,(1:λ₁)}` in the chart `(id, J(p, λ₁))`; needs `λ₀ ≠ 0`.
pub fn kronecker_regular_second_chart(field: Field, p: usize, point: &ProjectivePoint) -> Result<Representation> {
    require_positive(p)?;
    let pt = point.in_field(field)?;
    let inv = pt.l0.inv().ok_or_else(|| Error::Invalid(format!("{pt} has no chart with λ₀ = 1")))?;
    let l1 = &pt.l1 * &inv;
    Representation::new(field, Quiver::kronecker(), vec![p, p], vec![Matrix::identity(field, p), Matrix::jordan_block(field, p, &l1)])
}

fn require_kronecker(x: &Representation) -> Result<()> {
    let q = x.quiver();
    if q.vertex_count() != 2 || q.arrows().len() != 2 || q.arrows().iter().any(|a| (a.source, a.target) != (1, 2)) {
        return Err(Error::WrongType("expected a representation of the Kronecker quiver 1 ⇉ 2".into()));
    }
    Ok(())
}

/// The unique eigenvalue of `m`, which must have a minimal polynomial `(t − λ)^k` over the field.
fn single_eigenvalue(m: &Matrix) -> Result<Scalar> {
    let mu = minimal_polynomial(m);
    let roots = mu.roots();
    match roots.as_slice() {
        [c] if mu.is_power_of_linear(c) => Ok(c.clone()),
        [] => Err(Error::IrrationalEigenvalue(format!("minimal polynomial {mu:?} has no root in {}", m.field()))),
        _ => Err(Error::Invalid("pencil of an indecomposable regular has several eigenvalues".into())),
    }
}

/// The point of an indecomposable regular `(φ, ψ)`: `(λ₀ : 1)` with `λ₀` the eigenvalue
/// of `ψ⁻¹φ` when `ψ` is invertible, else `(1 : λ₁)` from `φ⁻¹ψ`.
fn regular_point(x: &Representation) -> Result<ProjectivePoint> {
    let (phi, psi) = (x.map(0), x.map(1));
    if let Some(inv) = psi.inverse() {
        return Ok(ProjectivePoint::affine(single_eigenvalue(&inv.try_mul(phi)?)?));
    }
    if let Some(inv) = phi.inverse() {
        let l1 = single_eigenvalue(&inv.try_mul(psi)?)?;
        return ProjectivePoint::new(x.field().one(), l1);
    }
    Err(Error::Invalid("neither map of a regular indecomposable is invertible".into()))
}

/// Decomposes and names every summand, sorted by [`KroneckerIndec`] order.
pub fn kronecker_classify(x: &Arc<Representation>) -> Result<Vec<(KroneckerIndec, usize)>> {
    require_kronecker(x)?;
    let d = krs_decompose(x)?;
    let mut out = Vec::new();
    for s in &d.summands {
        let kind = match (s.rep.dim(1), s.rep.dim(2)) {
            (a, b) if b == a + 1 => KroneckerIndec::P { r: a },
            (a, b) if a == b + 1 => KroneckerIndec::I { r: b },
            (a, b) if a == b => KroneckerIndec::R { p: a, point: regular_point(&s.rep)? },
            (a, b) => return Err(Error::Invalid(format!("no Kronecker indecomposable has dims ({a}, {b})"))),
        };
        out.push((kind, s.multiplicity));
    }
    out.sort();
    Ok(out)
}

/// A monomorphism `R_{1,λ} -> x` for indecomposable regular `x = (φ, ψ)`. With `φ`
/// bijective, `λ = (1 : μ)` for an eigenvalue `μ` of `φ⁻¹ψ` and its eigenvector; otherwise
/// `λ = (0 : 1)` from a vector of `Ker φ`, on which `ψ` is injective because
/// `Ker φ ∩ Ker ψ` would split off.
pub fn reg_sub_find(x: &Arc<Representation>) -> Result<(ProjectivePoint, Morphism)> {
    require_kronecker(x)?;
    let field = x.field();
    if x.dim(1) != x.dim(2) || x.is_zero() || !is_indecomposable(x)? {
        return Err(Error::Invalid("reg_sub_find needs an indecomposable regular representation".into()));
    }
    let (phi, psi) = (x.map(0), x.map(1));
    let (point, v) = match phi.inverse() {
        Some(inv) => {
            let m = inv.try_mul(psi)?;
            let mu = single_eigenvalue(&m)?;
            let v = minus_scalar(&m, &mu).kernel_basis().column(0);
            (ProjectivePoint::new(field.one(), mu)?, v)
        }
        None => (ProjectivePoint::new(field.zero(), field.one())?, phi.kernel_basis().column(0)),
    };
    let r = Arc::new(kronecker_indec(&KroneckerIndec::R { p: 1, point: point.clone() }, field)?);
    let (ca, cb) = (r.map(0).get(0, 0).clone(), r.map(1).get(0, 0).clone());
    let w = match cb.inv() {
        Some(i) => psi.apply(&v).into_iter().map(|e| &e * &i).collect::<Vec<_>>(),
        None => {
            let i = ca.inv().expect("one coordinate of a point is nonzero");
            phi.apply(&v).into_iter().map(|e| &e * &i).collect()
        }
    };
    let f = Morphism::new(
        r,
        x.clone(),
        vec![Matrix::column_vector(field, &v), Matrix::column_vector(field, &w)],
    )?;
    Ok((point, f))
}

#[cfg(test)]
mod tests;
