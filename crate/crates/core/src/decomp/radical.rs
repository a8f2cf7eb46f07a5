use std::collections::HashMap;
use std::sync::Arc;

use super::krs::{indecomposable_isomorphism, krs_decompose, Decomposition};
use super::{is_indecomposable, trace, trace_form_applies};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{HomSpace, Morphism, Representation};

/// A subspace of `Hom(X, Y)` given by independent coordinate vectors.
#[derive(Clone, Debug)]
pub struct HomSubspace {
    pub hom: Arc<HomSpace>,
    pub coords: Vec<Vec<Scalar>>,
}

impl HomSubspace {
    pub fn from_spanning(hom: Arc<HomSpace>, vectors: Vec<Vec<Scalar>>) -> HomSubspace {
        let coords = if vectors.is_empty() {
            Vec::new()
        } else {
            Matrix::from_columns(hom.source().field(), hom.dim(), &vectors).image_basis().columns()
        };
        HomSubspace { hom, coords }
    }

    pub fn whole(hom: Arc<HomSpace>) -> HomSubspace {
        let field = hom.source().field();
        let d = hom.dim();
        let coords = (0..d)
            .map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        HomSubspace { hom, coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        self.coords.iter().map(|c| self.hom.combination(c)).collect()
    }

    pub fn contains(&self, f: &Morphism) -> Result<bool> {
        let v = self.hom.coordinates(f)?;
        let mut cols = self.coords.clone();
        let before = span_rank(&self.hom, &cols);
        cols.push(v);
        Ok(span_rank(&self.hom, &cols) == before)
    }

    /// Same subspace (both sides in the same Hom space).
    pub fn same_as(&self, other: &HomSubspace) -> bool {
        let mut all = self.coords.clone();
        all.extend(other.coords.iter().cloned());
        self.dim() == other.dim() && span_rank(&self.hom, &all) == self.dim()
    }
}

fn span_rank(hom: &HomSpace, cols: &[Vec<Scalar>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    Matrix::from_columns(hom.source().field(), hom.dim(), cols).rank()
}

/// Kernel of the linear map `Hom(X, Y) -> k^m` whose value on basis element `b` is `values[b]`.
fn kernel_of_conditions(hom: Arc<HomSpace>, values: Vec<Vec<Scalar>>, m: usize) -> HomSubspace {
    if m == 0 {
        return HomSubspace::whole(hom);
    }
    let field = hom.source().field();
    let cond = Matrix::from_columns(field, m, &values);
    let k = cond.kernel_basis();
    HomSubspace { coords: k.columns(), hom }
}

/// Caches decompositions, Hom spaces and `Rad^n` between representations.
#[derive(Default)]
pub struct RadContext {
    pub universe: Vec<Arc<Representation>>,
    decomps: HomCache<Representation, Arc<Decomposition>>,
    homs: HomCache<(Representation, Representation), Arc<HomSpace>>,
    radn: HomCache<(Representation, Representation, usize), HomSubspace>,
}

type HomCache<K, V> = HashMap<K, V>;

impl RadContext {
    pub fn new(universe: Vec<Arc<Representation>>) -> RadContext {
        RadContext { universe, ..Default::default() }
    }

    pub fn decomposition(&mut self, x: &Arc<Representation>) -> Result<Arc<Decomposition>> {
        if let Some(d) = self.decomps.get(&**x) {
            return Ok(d.clone());
        }
        let d = Arc::new(krs_decompose(x)?);
        self.decomps.insert((**x).clone(), d.clone());
        Ok(d)
    }

    pub fn hom(&mut self, x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Arc<HomSpace>> {
        let key = ((**x).clone(), (**y).clone());
        if let Some(h) = self.homs.get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(HomSpace::new(x, y)?);
        self.homs.insert(key, h.clone());
        Ok(h)
    }

    /// `Rad(X, Y)` from the decompositions of both sides: a component between
    /// non-isomorphic indecomposables is unconstrained, and between isomorphic
    /// ones it must be a non-unit after transport along an isomorphism.
    pub fn rad(&mut self, x: &Arc<Representation>, y: &Arc<Representation>) -> Result<HomSubspace> {
        let key = ((**x).clone(), (**y).clone(), 1);
        if let Some(r) = self.radn.get(&key) {
            return Ok(r.clone());
        }
        let hom = self.hom(x, y)?;
        let dx = self.decomposition(x)?;
        let dy = self.decomposition(y)?;
        let (cx, cy) = (dx.class_of(), dy.class_of());
        let mut thetas: HashMap<(usize, usize), Option<Morphism>> = HashMap::new();
        let mut conditions: Vec<(usize, usize, Morphism)> = Vec::new();
        for l in 0..dx.len() {
            for k in 0..dy.len() {
                let key = (cx[l], cy[k]);
                if !thetas.contains_key(&key) {
                    let sx = &dx.summands[cx[l]];
                    let sy = &dy.summands[cy[k]];
                    let iso = indecomposable_isomorphism(&sx.rep, &sx.certificate, &sy.rep)?;
                    thetas.insert(key, iso.and_then(|f| f.inverse()));
                }
                let theta = thetas[&key].clone();
                if let Some(t) = theta {
                    conditions.push((l, k, t));
                }
            }
        }
        let incl: Vec<Morphism> = (0..dx.len()).map(|l| dx.inclusion(l)).collect();
        let proj: Vec<Morphism> = (0..dy.len()).map(|k| dy.projection(k)).collect();
        let values = hom
            .basis()
            .iter()
            .map(|f| {
                let mut row = Vec::new();
                for (l, k, theta) in &conditions {
                    let comp = theta.compose(&proj[*k].compose(f)?.compose(&incl[*l])?)?;
                    row.extend(dx.summands[cx[*l]].certificate.residue(&comp)?);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let m: usize = conditions.iter().map(|(l, _, _)| dx.summands[cx[*l]].certificate.residue_degree()).sum();
        let r = kernel_of_conditions(hom, values, m);
        self.radn.insert(key, r.clone());
        Ok(r)
    }

    /// `Rad^n(X, Y) = Σ_Z Rad^{n-1}(Z, Y) ∘ Rad(X, Z)` over `Z` in the universe.
    pub fn radn(&mut self, x: &Arc<Representation>, y: &Arc<Representation>, n: usize) -> Result<HomSubspace> {
        match n {
            0 => Ok(HomSubspace::whole(self.hom(x, y)?)),
            1 => self.rad(x, y),
            _ => {
                if self.universe.is_empty() {
                    return Err(Error::MissingUniverse);
                }
                let key = ((**x).clone(), (**y).clone(), n);
                if let Some(r) = self.radn.get(&key) {
                    return Ok(r.clone());
                }
                let hom = self.hom(x, y)?;
                let mut vectors = Vec::new();
                for z in self.universe.clone() {
                    let first = self.rad(x, &z)?;
                    if first.dim() == 0 {
                        continue;
                    }
                    let second = self.radn(&z, y, n - 1)?;
                    for g in second.morphisms() {
                        for f in first.morphisms() {
                            vectors.push(hom.coordinates(&g.compose(&f)?)?);
                        }
                    }
                }
                let r = HomSubspace::from_spanning(hom, vectors);
                self.radn.insert(key, r.clone());
                Ok(r)
            }
        }
    }
}

/// `Rad(X, Y)` via decompositions, cross-checked against the trace form when it applies.
pub fn rad_hom(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<HomSubspace> {
    let r = RadContext::default().rad(x, y)?;
    if let Some(t) = rad_hom_trace(x, y)? {
        if !r.same_as(&t) {
            return Err(Error::Incomplete("radical by decomposition disagrees with the trace form".into()));
        }
    }
    Ok(r)
}

/// `Rad(X, Y) = {φ : tr_Y(φψ) = 0 for all ψ ∈ Hom(Y, X)}`, valid when the
/// characteristic is 0 or exceeds `dim Y`; `None` otherwise.
pub fn rad_hom_trace(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Option<HomSubspace>> {
    if !trace_form_applies(y.field(), y.total_dim()) {
        return Ok(None);
    }
    let hom = Arc::new(HomSpace::new(x, y)?);
    let back = HomSpace::new(y, x)?;
    let field = x.field();
    let values = hom
        .basis()
        .iter()
        .map(|f| {
            back.basis()
                .iter()
                .map(|g| {
                    let fg = f.compose(g).expect("composable");
                    fg.components().iter().fold(field.zero(), |acc, m| &acc + &trace(m))
                })
                .collect()
        })
        .collect();
    Ok(Some(kernel_of_conditions(hom, values, back.dim())))
}

pub fn radn_hom(
    x: &Arc<Representation>,
    y: &Arc<Representation>,
    n: usize,
    universe: &[Arc<Representation>],
) -> Result<HomSubspace> {
    RadContext::new(universe.to_vec()).radn(x, y, n)
}

/// `dim Rad(X, Y) - dim Rad²(X, Y)` for indecomposable `X`, `Y`.
pub fn irr_dim(x: &Arc<Representation>, y: &Arc<Representation>, universe: &[Arc<Representation>]) -> Result<usize> {
    for r in [x, y] {
        if !is_indecomposable(r)? {
            return Err(Error::Decomposable);
        }
    }
    let mut ctx = RadContext::new(universe.to_vec());
    Ok(ctx.rad(x, y)?.dim() - ctx.radn(x, y, 2)?.dim())
}

/// Composes a chain of non-isomorphisms (`chain[0]` applied first) and reports
/// whether the composite vanishes.
pub fn harada_sai_check(chain: &[Morphism]) -> Result<bool> {
    let Some(first) = chain.first() else {
        return Err(Error::Invalid("empty chain".into()));
    };
    let mut acc = first.clone();
    for (k, f) in chain.iter().enumerate() {
        if f.is_isomorphism() {
            return Err(Error::Invalid(format!("chain element {k} is an isomorphism")));
        }
        if k > 0 {
            if **f.source() != **chain[k - 1].target() {
                return Err(Error::NotComposable(k));
            }
            acc = f.compose(&acc)?;
        }
    }
    Ok(acc.is_zero())
}
