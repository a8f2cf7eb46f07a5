use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{separated_s, separated_t};
use crate::error::{Error, Result};
use crate::kronecker::{kronecker_classify, kronecker_indec, KroneckerIndec};
use crate::linalg::field::is_prime;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rep::{HomSpace, Representation};

/// An elementary abelian group `C_p^r = ⟨g_1, …, g_r⟩`; `Klein4` is `C_2^2` under its own name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "klein4")]
    Klein4,
    #[serde(rename = "C_p^r")]
    Elementary { p: u64, r: usize },
}

impl Group {
    pub fn p(self) -> u64 {
        match self {
            Group::Klein4 => 2,
            Group::Elementary { p, .. } => p,
        }
    }

    pub fn r(self) -> usize {
        match self {
            Group::Klein4 => 2,
            Group::Elementary { r, .. } => r,
        }
    }

    pub fn order(self) -> u64 {
        self.p().pow(self.r() as u32)
    }

    pub fn is_klein(self) -> bool {
        self.p() == 2 && self.r() == 2
    }

    /// Exponent vectors `(e_1, …, e_r)` of `g_1^{e_1}⋯g_r^{e_r}`, with `e_1` varying fastest.
    /// Element `k` is the k-th basis vector of `k[G]`; element 0 is the unit.
    pub fn elements(self) -> Vec<Vec<u64>> {
        let (p, r) = (self.p(), self.r());
        (0..self.order())
            .map(|mut k| {
                (0..r)
                    .map(|_| {
                        let e = k % p;
                        k /= p;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    fn index(self, e: &[u64]) -> usize {
        e.iter().rev().fold(0, |acc, &x| acc * self.p() + x) as usize
    }

    fn check(self) -> Result<()> {
        if !is_prime(self.p()) {
            return Err(Error::NotPrime(self.p()));
        }
        if self.r() == 0 {
            return Err(Error::Invalid("a group needs at least one generator".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Klein4 => write!(f, "klein4"),
            Group::Elementary { p, r } => write!(f, "C_{p}^{r}"),
        }
    }
}

/// A representation of `C_p^r` stored through `γ_i = X_{g_i} − id`.
///
/// The γ commute and `(id + γ_i)^p = id`. In characteristic `p` the second
/// condition reads `γ_i^p = 0`; other characteristics are accepted so that
/// [`maschke_complement`] has something to act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRep {
    group: Group,
    field: Field,
    dim: usize,
    gamma: Vec<Matrix>,
}

impl GroupRep {
    pub fn new(group: Group, field: Field, dim: usize, gamma: Vec<Matrix>) -> Result<GroupRep> {
        group.check()?;
        if gamma.len() != group.r() {
            return Err(Error::Shape(format!("{} needs {} matrices, got {}", group, group.r(), gamma.len())));
        }
        for (i, g) in gamma.iter().enumerate() {
            if g.shape() != (dim, dim) {
                return Err(Error::Shape(format!("gamma_{} is {:?}, expected {dim}x{dim}", i + 1, g.shape())));
            }
            if g.field() != field {
                return Err(Error::FieldMismatch(format!("gamma_{} is over {}", i + 1, g.field())));
            }
        }
        let x = GroupRep { group, field, dim, gamma };
        for i in 0..x.gamma.len() {
            if !x.action(i).pow(group.p()).is_identity() {
                return Err(Error::Invalid(format!("g_{} does not have order dividing {}", i + 1, group.p())));
            }
            for j in 0..i {
                if &x.gamma[i] * &x.gamma[j] != &x.gamma[j] * &x.gamma[i] {
                    return Err(Error::Invalid(format!("gamma_{} and gamma_{} do not commute", j + 1, i + 1)));
                }
            }
        }
        Ok(x)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> &[Matrix] {
        &self.gamma
    }

    /// `X_{g_i} = id + γ_i`, 0-indexed.
    pub fn action(&self, i: usize) -> Matrix {
        &Matrix::identity(self.field, self.dim) + &self.gamma[i]
    }

    /// `X_g` for `g = g_1^{e_1}⋯g_r^{e_r}`.
    pub fn element(&self, e: &[u64]) -> Matrix {
        e.iter().enumerate().fold(Matrix::identity(self.field, self.dim), |acc, (i, &k)| &acc * &self.action(i).pow(k))
    }

    /// The same data as a representation of the `r`-loop quiver with `X_{γ_i} = γ_i`.
    /// Group morphisms are exactly the quiver morphisms, since commuting with `X_g`
    /// is commuting with `γ_i`.
    pub fn to_loop_rep(&self) -> Arc<Representation> {
        Arc::new(
            Representation::new(self.field, Quiver::loops(self.group.r()), vec![self.dim], self.gamma.clone())
                .expect("square matrices fit the loop quiver"),
        )
    }

    pub fn from_loop_rep(group: Group, x: &Representation) -> Result<GroupRep> {
        if x.quiver().vertex_count() != 1 {
            return Err(Error::Invalid("a group representation lives on one vertex".into()));
        }
        GroupRep::new(group, x.field(), x.dim(1), x.maps().to_vec())
    }

    /// `(DX)_g = D(X_{g⁻¹})`, using `X_{g_i}⁻¹ = X_{g_i}^{p−1}` and the transpose for `D`.
    pub fn dual(&self) -> GroupRep {
        let id = Matrix::identity(self.field, self.dim);
        let gamma = (0..self.gamma.len()).map(|i| &self.action(i).pow(self.group.p() - 1).transpose() - &id).collect();
        GroupRep { gamma, ..self.clone() }
    }

    /// `X' = gXg⁻¹`, isomorphic to `x` via `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<GroupRep> {
        let inv = g.inverse().ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        let gamma = self.gamma.iter().map(|m| &(g * m) * &inv).collect();
        GroupRep::new(self.group, self.field, self.dim, gamma)
    }

    /// Block diagonal sum; every part must share the group and field of `self`.
    pub fn direct_sum(&self, others: &[GroupRep]) -> Result<GroupRep> {
        let mut gamma = self.gamma.clone();
        let mut dim = self.dim;
        for o in others {
            if o.group != self.group || o.field != self.field {
                return Err(Error::Invalid(format!("cannot add a {} representation over {}", o.group, o.field)));
            }
            gamma = gamma.iter().zip(&o.gamma).map(|(a, b)| Matrix::block_diag(self.field, &[a, b])).collect();
            dim += o.dim;
        }
        GroupRep::new(self.group, self.field, dim, gamma)
    }

    /// True when the column span of `u` is stable under every `γ_i`.
    pub fn is_invariant(&self, u: &Matrix) -> Result<bool> {
        for g in &self.gamma {
            if u.solve(&(g * u))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The subrepresentation on the (independent) columns of `u`.
    pub fn restrict(&self, u: &Matrix) -> Result<GroupRep> {
        if u.rows() != self.dim || u.rank() != u.cols() {
            return Err(Error::Shape(format!("basis has shape {:?} in dimension {}", u.shape(), self.dim)));
        }
        let mut gamma = Vec::with_capacity(self.gamma.len());
        for g in &self.gamma {
            gamma.push(u.solve(&(g * u))?.ok_or_else(|| Error::Invalid("subspace is not invariant".into()))?);
        }
        GroupRep::new(self.group, self.field, u.cols(), gamma)
    }

    /// `Σ_i Im γ_i`, which is `rad X` in characteristic `p`.
    pub fn radical_basis(&self) -> Matrix {
        let refs: Vec<&Matrix> = self.gamma.iter().collect();
        Matrix::hstack(self.field, self.dim, &refs).image_basis()
    }

    /// `γ_iγ_j = 0` for all `i, j`.
    pub fn is_radical_square_zero(&self) -> bool {
        self.gamma.iter().all(|a| self.gamma.iter().all(|b| (a * b).is_zero()))
    }

    fn require_modular(&self) -> Result<()> {
        require_char(self.field, self.group.p())
    }
}

fn require_char(field: Field, p: u64) -> Result<()> {
    if field.characteristic() != p {
        return Err(Error::Characteristic(format!("{field} does not have characteristic {p}")));
    }
    Ok(())
}

/// `k[G]` on the basis of [`Group::elements`], `g_i` acting by left translation.
pub fn regular_group_rep(group: Group, field: Field) -> Result<GroupRep> {
    group.check()?;
    let elems = group.elements();
    let n = elems.len();
    let p = group.p();
    let mut gamma = Vec::with_capacity(group.r());
    for i in 0..group.r() {
        let mut m = Matrix::zeros(field, n, n);
        for (h, e) in elems.iter().enumerate() {
            let mut gh = e.clone();
            gh[i] = (gh[i] + 1) % p;
            m.set(group.index(&gh), h, field.one());
        }
        gamma.push(&m - &Matrix::identity(field, n));
    }
    GroupRep::new(group, field, n, gamma)
}

/// `k` with every `g` acting trivially.
pub fn trivial_rep(group: Group, field: Field) -> Result<GroupRep> {
    GroupRep::new(group, field, 1, vec![Matrix::zeros(field, 1, 1); group.r()])
}

/// `φ_v: k[G] -> X, Σ α_g g ↦ Σ α_g X_g v`, the morphism with `φ_v(1) = v`.
pub fn regular_hom(x: &GroupRep, v: &[Scalar]) -> Result<Matrix> {
    if v.len() != x.dim {
        return Err(Error::Shape(format!("vector of length {} in dimension {}", v.len(), x.dim)));
    }
    let cols: Vec<Vec<Scalar>> = x.group.elements().iter().map(|e| x.element(e).apply(v)).collect();
    Ok(Matrix::from_columns(x.field, x.dim, &cols))
}

/// `k[G] -> Dk[G], g ↦ g*`, in the basis `G` and its dual basis.
pub fn regular_self_duality(group: Group, field: Field) -> Result<Matrix> {
    group.check()?;
    Ok(Matrix::identity(field, group.order() as usize))
}

/// A complement of the invariant subspace `u` (independent columns), as the
/// kernel of `π' = |G|⁻¹ Σ_g X_g π X_g⁻¹` for a linear projection `π` onto `u`.
pub fn maschke_complement(x: &GroupRep, u: &Matrix) -> Result<Matrix> {
    let field = x.field;
    if field.characteristic() == x.group.p() {
        return Err(Error::Characteristic(format!("{field} divides the order of {}", x.group)));
    }
    if u.rows() != x.dim || u.rank() != u.cols() {
        return Err(Error::Shape(format!("basis has shape {:?} in dimension {}", u.shape(), x.dim)));
    }
    if !x.is_invariant(u)? {
        return Err(Error::Invalid("subspace is not invariant".into()));
    }
    let k = u.cols();
    let full = Matrix::hstack(field, x.dim, &[u, &super::complement_basis(u)]);
    let coords = full.inverse().expect("a completed basis is invertible").block(0, 0, k, x.dim);
    let pi = u * &coords;
    let p = x.group.p();
    let mut avg = Matrix::zeros(field, x.dim, x.dim);
    for e in x.group.elements() {
        let g = x.element(&e);
        let g_inv = x.element(&e.iter().map(|&a| (p - a) % p).collect::<Vec<_>>());
        avg = &avg + &(&(&g * &pi) * &g_inv);
    }
    let inv_order = field.from_i64(x.group.order() as i64).inv().expect("order is a unit");
    let pi_avg = avg.scale(&inv_order);
    debug_assert!(&pi_avg * u == *u, "the averaged projection fixes u");
    Ok(pi_avg.kernel_basis())
}

/// `TY` for a representation `y` of `K_r`: `Y_1 ⊕ Y_2` with `γ_i = [[0, 0], [Y_{α_i}, 0]]`.
pub fn elabel_t(y: &Arc<Representation>, p: u64) -> Result<GroupRep> {
    let r = require_kronecker_r(y)?;
    require_char(y.field(), p)?;
    let group = Group::Elementary { p, r };
    group.check()?;
    t_functor(y, group)
}

/// [`elabel_t`] for the Kronecker quiver, landing in Klein four representations.
pub fn klein_t(y: &Arc<Representation>) -> Result<GroupRep> {
    if require_kronecker_r(y)? != 2 {
        return Err(Error::WrongType("klein_t needs the Kronecker quiver".into()));
    }
    require_char(y.field(), 2)?;
    t_functor(y, Group::Klein4)
}

fn t_functor(y: &Arc<Representation>, group: Group) -> Result<GroupRep> {
    // K_r is the separated quiver of the r-loop quiver.
    let loops = Quiver::loops(group.r());
    let on_sep = Arc::new(y.with_quiver(&loops.separated())?);
    GroupRep::from_loop_rep(group, &*separated_t(&on_sep, &loops)?)
}

/// `SX`, the inverse of [`elabel_t`] on `rad² X = 0`: the maps `X / rad X -> rad X` induced by the `γ_i`.
pub fn elabel_s(x: &GroupRep) -> Result<Arc<Representation>> {
    x.require_modular()?;
    if !x.is_radical_square_zero() {
        return Err(Error::RadicalSquareNonzero);
    }
    let s = separated_s(&x.to_loop_rep())?;
    Ok(Arc::new(s.with_quiver(&Quiver::kronecker_r(x.group.r()))?))
}

fn require_kronecker_r(y: &Representation) -> Result<usize> {
    let q = y.quiver();
    if q.vertex_count() != 2 || q.arrows().is_empty() || q.arrows().iter().any(|a| (a.source, a.target) != (1, 2)) {
        return Err(Error::WrongType("expected a representation of an r-Kronecker quiver".into()));
    }
    Ok(q.arrows().len())
}

/// An indecomposable Klein four representation: `k[G]` or `T` of a Kronecker indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum KleinIndec {
    #[serde(rename = "k[G]")]
    RegularRep,
    T { kronecker: KroneckerIndec },
}

impl fmt::Display for KleinIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleinIndec::RegularRep => write!(f, "k[G]"),
            KleinIndec::T { kronecker } => write!(f, "T{kronecker}"),
        }
    }
}

pub fn klein_indec(kind: &KleinIndec, field: Field) -> Result<GroupRep> {
    match kind {
        KleinIndec::RegularRep => regular_group_rep(Group::Klein4, field),
        KleinIndec::T { kronecker } => klein_t(&Arc::new(kronecker_indec(kronecker, field)?)),
    }
}

/// Splits off `k[G]` while `γ_1γ_2 ≠ 0`, then classifies `S` of the rest as a
/// Kronecker representation. Sorted, with multiplicities.
pub fn klein_classify(x: &GroupRep) -> Result<Vec<(KleinIndec, usize)>> {
    if !x.group.is_klein() {
        return Err(Error::WrongType(format!("{} is not the Klein four group", x.group)));
    }
    x.require_modular()?;
    let field = x.field;
    let regular = regular_group_rep(x.group, field)?;
    let regular_loop = regular.to_loop_rep();
    let mut cur = x.clone();
    let mut copies = 0;
    loop {
        let prod = &cur.gamma[0] * &cur.gamma[1];
        let Some(j) = (0..cur.dim).find(|&j| prod.column(j).iter().any(|s| !s.is_zero())) else {
            break;
        };
        let mut v = vec![field.zero(); cur.dim];
        v[j] = field.one();
        // φ(ḡ₁ḡ₂) = γ₁γ₂v ≠ 0 and every nonzero subrepresentation of k[G]
        // contains ḡ₁ḡ₂, so φ is injective and, k[G] being injective, split.
        let phi = regular_hom(&cur, &v)?;
        let retraction = retraction_of(&cur, &regular_loop, &phi)?;
        cur = cur.restrict(&retraction.kernel_basis())?;
        copies += 1;
    }
    let mut out = Vec::new();
    if copies > 0 {
        out.push((KleinIndec::RegularRep, copies));
    }
    if cur.dim > 0 {
        for (kronecker, m) in kronecker_classify(&elabel_s(&cur)?)? {
            out.push((KleinIndec::T { kronecker }, m));
        }
    }
    out.sort();
    Ok(out)
}

/// Some `ψ ∈ Hom(X, k[G])` with `ψφ = id`, found by solving over a basis of the Hom space.
fn retraction_of(x: &GroupRep, regular: &Arc<Representation>, phi: &Matrix) -> Result<Matrix> {
    let field = x.field;
    let hom = HomSpace::new(&x.to_loop_rep(), regular)?;
    let n = phi.cols();
    let columns: Vec<Vec<Scalar>> =
        hom.basis().iter().map(|psi| (psi.comp(1) * phi).entries().to_vec()).collect();
    let a = Matrix::from_columns(field, n * n, &columns);
    let target = Matrix::column_vector(field, Matrix::identity(field, n).entries());
    let c = a.solve(&target)?.ok_or_else(|| Error::Invalid("the regular summand does not split".into()))?;
    Ok(hom.combination(&c.column(0)).comp(1).clone())
}
