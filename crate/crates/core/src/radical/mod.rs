//! The radical filtration, the functors `S` and `T` between radical square zero
//! representations of `Q` and representations of the separated quiver `Q^s`, and
//! group representations in γ-form.

mod group;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rep::{direct_sum, hom_basis, subrep, Morphism, Representation};

pub use group::{
    elabel_s, elabel_t, klein_classify, klein_indec, klein_t, maschke_complement, regular_group_rep, regular_hom,
    regular_self_duality, trivial_rep, Group, GroupRep, KleinIndec,
};

/// `(Rad X)_i = Σ_{α: j -> i} Im X_α`, with its inclusion into `x`.
pub fn radical(x: &Arc<Representation>) -> Result<(Arc<Representation>, Morphism)> {
    let field = x.field();
    let bases = x
        .quiver()
        .vertices()
        .map(|i| {
            let maps: Vec<&Matrix> = x.quiver().arrows_into(i).into_iter().map(|k| x.map(k)).collect();
            Matrix::hstack(field, x.dim(i), &maps).image_basis()
        })
        .collect();
    subrep(x, bases)
}

/// `Rad^n X` and its inclusion into `x`; `n = 0` gives `x` itself.
pub fn radical_power(x: &Arc<Representation>, n: usize) -> Result<(Arc<Representation>, Morphism)> {
    let mut cur = x.clone();
    let mut inc = Morphism::identity(x);
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        let (r, step) = radical(&cur)?;
        inc = inc.compose(&step)?;
        cur = r;
    }
    Ok((cur, inc))
}

/// `X ⊇ Rad X ⊇ Rad² X ⊇ …` up to the first repeated term.
#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    /// `layers[n] = Rad^n X`; the last entry is the stable term.
    pub layers: Vec<Arc<Representation>>,
    /// `inclusions[n]: Rad^n X -> X`.
    pub inclusions: Vec<Morphism>,
}

impl RadicalFiltration {
    pub fn of(x: &Arc<Representation>) -> Result<RadicalFiltration> {
        let mut layers = vec![x.clone()];
        let mut inclusions = vec![Morphism::identity(x)];
        loop {
            let cur = layers.last().expect("nonempty").clone();
            let (r, step) = radical(&cur)?;
            if r.total_dim() == cur.total_dim() {
                return Ok(RadicalFiltration { layers, inclusions });
            }
            let inc = inclusions.last().expect("nonempty").compose(&step)?;
            layers.push(r);
            inclusions.push(inc);
        }
    }

    /// True when the stable term is zero.
    pub fn is_nilpotent(&self) -> bool {
        self.layers.last().is_some_and(|l| l.is_zero())
    }

    /// The least `n` with `Rad^n X = 0`, if any.
    pub fn length(&self) -> Option<usize> {
        self.is_nilpotent().then(|| self.layers.len() - 1)
    }
}

/// `rad X`, the intersection of the maximal subrepresentations.
///
/// Only defined here when `Rad^n X = 0` for some `n`; then every simple quotient is
/// some `S(i)`, so `rad X` is the common kernel of all maps `X -> S(i)`. This never
/// calls [`radical`] on `x` and so cross-checks it.
pub fn jacobson_radical(x: &Arc<Representation>) -> Result<(Arc<Representation>, Morphism)> {
    if !RadicalFiltration::of(x)?.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let field = x.field();
    let q = x.quiver();
    let mut bases = Vec::with_capacity(q.vertex_count());
    for i in q.vertices() {
        let s = Arc::new(Representation::simple(field, q, i));
        let rows: Vec<Matrix> = hom_basis(x, &s)?.iter().map(|f| f.comp(i).clone()).collect();
        let refs: Vec<&Matrix> = rows.iter().collect();
        bases.push(Matrix::vstack(field, x.dim(i), &refs).kernel_basis());
    }
    subrep(x, bases)
}

pub fn is_radical_square_zero(x: &Arc<Representation>) -> Result<bool> {
    Ok(radical_power(x, 2)?.0.is_zero())
}

/// `(Rad X)_i = X_i` at every sink `i`.
pub fn is_separated(x: &Arc<Representation>) -> Result<bool> {
    let (r, _) = radical(x)?;
    Ok(x.quiver().sinks().into_iter().all(|i| r.dim(i) == x.dim(i)))
}

/// `SX` on `Q^s`: `X_i / (Rad X)_i` at `i` and `(Rad X)_i` at `i'`, each `ᾱ` induced by `X_α`.
pub fn separated_s(x: &Arc<Representation>) -> Result<Arc<Representation>> {
    if !is_radical_square_zero(x)? {
        return Err(Error::RadicalSquareNonzero);
    }
    let field = x.field();
    let q = x.quiver();
    let (rad, inc) = radical(x)?;
    // C_i: X_i -> X_i / Rad_i and a section L_i with C_i L_i = id.
    let mut sections = Vec::with_capacity(q.vertex_count());
    let mut top = Vec::with_capacity(q.vertex_count());
    for i in q.vertices() {
        let c = inc.comp(i).cokernel_projection();
        let l = c.solve(&Matrix::identity(field, c.rows()))?.expect("a cokernel projection is onto");
        top.push(c.rows());
        sections.push(l);
    }
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (k, a) in q.arrows().iter().enumerate() {
        // X_α kills Rad_s because Rad² X = 0, so the induced map is well defined.
        let moved = x.map(k) * &sections[a.source - 1];
        maps.push(inc.comp(a.target).solve(&moved)?.expect("arrow images lie in the radical"));
    }
    let mut dims = top;
    dims.extend(q.vertices().map(|i| rad.dim(i)));
    Ok(Arc::new(Representation::new(field, q.separated(), dims, maps)?))
}

/// `TY` on `Q`: `Y_i ⊕ Y_{i'}` at `i` and `(TY)_α = [[0, 0], [Y_ᾱ, 0]]`.
pub fn separated_t(y: &Arc<Representation>, q: &Quiver) -> Result<Arc<Representation>> {
    if y.quiver() != &q.separated() {
        return Err(Error::Invalid("representation is not on the separated quiver of the given quiver".into()));
    }
    let n = q.vertex_count();
    let field = y.field();
    let dims: Vec<usize> = q.vertices().map(|i| y.dim(i) + y.dim(n + i)).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1]);
            m.set_block(y.dim(a.target), 0, y.map(k));
            m
        })
        .collect();
    Ok(Arc::new(Representation::new(field, q.clone(), dims, maps)?))
}

/// `Tφ = diag(φ_i, φ_{i'})` for `φ: Y -> Y'` on `Q^s`.
pub fn separated_t_morphism(f: &Morphism, q: &Quiver) -> Result<Morphism> {
    let n = q.vertex_count();
    let source = separated_t(f.source(), q)?;
    let target = separated_t(f.target(), q)?;
    let comps = q.vertices().map(|i| Matrix::block_diag(f.field(), &[f.comp(i), f.comp(n + i)])).collect();
    Morphism::new(source, target, comps)
}

/// `X = X' ⊕ ⊕_{i sink} S(i)^{m_i}` with `X'` separated.
#[derive(Clone, Debug)]
pub struct SinkSplit {
    pub separated: Arc<Representation>,
    /// `(sink, m_i)` for every sink with `m_i > 0`.
    pub multiplicities: Vec<(usize, usize)>,
    /// `X' ⊕ S(i)^{m_i} ⊕ … -> X`, summands in the order of `multiplicities`.
    pub iso: Morphism,
}

/// Splits the sink simples off `x`: `m_i = dim X_i − dim (Rad X)_i` at each sink.
pub fn split_sink_simples(x: &Arc<Representation>) -> Result<SinkSplit> {
    let field = x.field();
    let q = x.quiver();
    let (_, inc) = radical(x)?;
    let sinks = q.sinks();
    let mut bases: Vec<Matrix> = q.vertices().map(|i| Matrix::identity(field, x.dim(i))).collect();
    let mut complements: Vec<Matrix> = q.vertices().map(|i| Matrix::zeros(field, x.dim(i), 0)).collect();
    let mut multiplicities = Vec::new();
    for &i in &sinks {
        let b = inc.comp(i).clone();
        let c = complement_basis(&b);
        if c.cols() > 0 {
            multiplicities.push((i, c.cols()));
        }
        bases[i - 1] = b;
        complements[i - 1] = c;
    }
    let (separated, sep_inc) = subrep(x, bases)?;
    let mut parts = vec![separated.clone()];
    for &(i, m) in &multiplicities {
        parts.extend(std::iter::repeat_n(Arc::new(Representation::simple(field, q, i)), m));
    }
    let sum = direct_sum(field, q, &parts)?;
    let comps = q
        .vertices()
        .map(|i| Matrix::hstack(field, x.dim(i), &[sep_inc.comp(i), &complements[i - 1]]))
        .collect();
    let iso = Morphism::new(sum.sum, x.clone(), comps)?;
    Ok(SinkSplit { separated, multiplicities, iso })
}

/// Standard basis vectors completing the independent columns of `b` to a basis.
pub(crate) fn complement_basis(b: &Matrix) -> Matrix {
    let field = b.field();
    let n = b.rows();
    let mut cur = b.clone();
    let mut picked = Vec::new();
    for j in 0..n {
        if cur.cols() == n {
            break;
        }
        let e = Matrix::identity(field, n).select_columns(&[j]);
        let next = Matrix::hstack(field, n, &[&cur, &e]);
        if next.rank() == next.cols() {
            cur = next;
            picked.push(j);
        }
    }
    Matrix::identity(field, n).select_columns(&picked)
}
