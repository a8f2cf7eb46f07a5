//! Classification drivers: Gabriel's enumeration on Dynkin quivers, the
//! preprojective and preinjective series on Euclidean quivers, the defect
//! trichotomy, the cycle family on `Ã_n`, and morphism spaces through `ℤQ`.

mod zq;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomp::is_indecomposable;
use crate::error::{Error, Result};
use crate::forms::{classify_graph, coxeter_order, defect, enumerate_roots, Family, FormData, Graph, GraphType};
use crate::linalg::{Field, Matrix};
use crate::quiver::Quiver;
use crate::reflect::{
    alpha_lower_star, alpha_star, coxeter_minus_word, coxeter_plus_word, coxeter_power_word, injective_word,
    projective_word, reflect_minus, reflect_plus, ReflectionWord, Sign,
};
use crate::rep::{HomSpace, Morphism, Representation};
use crate::DimVector;

pub use zq::{mesh_hom_dim, ZArrow, ZArrowKind, ZQuiver, ZVertex};

/// Position of an indecomposable. `Preprojective { vertex: i, r }` is `C^{-r}P(i)`
/// and `Preinjective { vertex: i, r }` is `C^r I(i)`, both with `r >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Preprojective { vertex: usize, r: usize },
    Preinjective { vertex: usize, r: usize },
    Regular,
}

/// How to rebuild an indecomposable: apply `word` to the simple at `simple`
/// over the quiver [`ClassificationRecord::base_quiver`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub dims: DimVector,
    pub simple: usize,
    pub word: ReflectionWord,
    pub tag: Tag,
}

impl ClassificationRecord {
    /// The quiver the word starts from, given the quiver it ends at.
    pub fn base_quiver(&self, q: &Quiver) -> Quiver {
        self.word.steps.iter().rev().fold(q.clone(), |cur, &(_, v)| cur.sigma(v))
    }

    pub fn build(&self, field: Field, q: &Quiver) -> Result<Arc<Representation>> {
        let base = self.base_quiver(q);
        let x = self.word.apply(&Arc::new(Representation::simple(field, &base, self.simple)))?;
        if x.dim_vector() != self.dims {
            return Err(Error::Invalid(format!("word rebuilds dims {:?}, record says {:?}", x.dim_vector(), self.dims)));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug)]
pub struct Classified {
    pub record: ClassificationRecord,
    pub rep: Arc<Representation>,
}

fn graph_type(q: &Quiver) -> Result<GraphType> {
    classify_graph(&Graph::of_quiver(q))
}

fn ordering(q: &Quiver) -> Result<Vec<usize>> {
    q.admissible_ordering().ok_or(Error::Cyclic)
}

fn is_unit_at(d: &[i64], v: usize) -> bool {
    d.iter().enumerate().all(|(k, &x)| x == i64::from(k + 1 == v))
}

/// One indecomposable per positive root, sorted by root.
///
/// For each root `x` the reflections `σ_{o[0]}, σ_{o[1]}, ...` along the admissible
/// ordering `o` (cyclically) are applied until the current vector is `e_v` for the
/// next vertex `v`; stopping after `T = rn + p` steps means `x = σ_{o[0]}...σ_{o[T-1]} e_v`
/// and the representation is `S⁻_{o[0]}...S⁻_{o[T-1]} S(v) = C^{-r}P(o[p])`.
pub fn dynkin_indecomposables(field: Field, q: &Quiver) -> Result<Vec<Classified>> {
    let ty = graph_type(q)?;
    if !ty.is_dynkin() {
        return Err(Error::WrongType(format!("Gabriel enumeration needs a Dynkin quiver, got {}", ty.name())));
    }
    let order = ordering(q)?;
    let n = order.len();
    let budget = n * (coxeter_order(q)? + 1);
    let forms = FormData::of_quiver(q);
    let mut out = Vec::new();
    for root in enumerate_roots(&Graph::of_quiver(q))?.positive() {
        let mut y = root.clone();
        let mut t = 0;
        while !is_unit_at(&y, order[t % n]) {
            y = forms.reflection(order[t % n], &y)?;
            t += 1;
            if t > budget {
                return Err(Error::StepBudget(budget));
            }
        }
        let mut applied: Vec<usize> = (0..t).map(|s| order[s % n]).collect();
        applied.reverse();
        let record = ClassificationRecord {
            dims: root,
            simple: order[t % n],
            word: ReflectionWord::minus(&applied),
            tag: Tag::Preprojective { vertex: order[t % n], r: t / n },
        };
        let rep = record.build(field, q)?;
        out.push(Classified { record, rep });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Series {
    /// `C^{-r}P(i)`, ordered by `(r, i)`.
    pub preprojective: Vec<Classified>,
    /// `C^r I(i)`, ordered by `(r, i)`.
    pub preinjective: Vec<Classified>,
}

fn require_euclidean(q: &Quiver) -> Result<GraphType> {
    let ty = graph_type(q)?;
    if !ty.is_euclidean() {
        return Err(Error::WrongType(format!("needs a Euclidean quiver, got {}", ty.name())));
    }
    Ok(ty)
}

/// The records for `C^{-r}P(i)` and `C^r I(i)`, `0 <= r <= r_max`.
pub fn euclidean_series(field: Field, q: &Quiver, r_max: usize) -> Result<Series> {
    require_euclidean(q)?;
    let minus = coxeter_minus_word(q)?;
    let plus = coxeter_plus_word(q)?;
    let mut preprojective = Vec::new();
    let mut preinjective = Vec::new();
    for r in 0..=r_max {
        for i in q.vertices() {
            let (pw, _) = projective_word(q, i)?;
            let (iw, _) = injective_word(q, i)?;
            let pw = (0..r).fold(pw, |w, _| w.then(&minus));
            let iw = (0..r).fold(iw, |w, _| w.then(&plus));
            for (word, tag, list) in [
                (pw, Tag::Preprojective { vertex: i, r }, &mut preprojective),
                (iw, Tag::Preinjective { vertex: i, r }, &mut preinjective),
            ] {
                let mut record = ClassificationRecord { dims: Vec::new(), simple: i, word, tag };
                let base = record.base_quiver(q);
                let rep = record.word.apply(&Arc::new(Representation::simple(field, &base, i)))?;
                if rep.is_zero() {
                    return Err(Error::Invalid(format!("{tag:?} vanished on a Euclidean quiver")));
                }
                record.dims = rep.dim_vector();
                list.push(Classified { record, rep });
            }
        }
    }
    Ok(Series { preprojective, preinjective })
}

/// Default step budget for [`trichotomy`]: enough for `C^{±r}` with `r` up to the
/// total dimension.
pub fn default_step_budget(x: &Representation) -> usize {
    x.quiver().vertex_count() * (x.total_dim() + 2)
}

pub fn trichotomy(x: &Arc<Representation>) -> Result<Tag> {
    trichotomy_with_budget(x, default_step_budget(x))
}

/// Regular iff the defect vanishes. Otherwise reflections are applied at sinks
/// (negative defect) or sources (positive defect) along the admissible ordering
/// until the representation is the simple at the next vertex; the step count
/// gives `(i, r)`.
pub fn trichotomy_with_budget(x: &Arc<Representation>, budget: usize) -> Result<Tag> {
    let q = x.quiver();
    require_euclidean(q)?;
    if !is_indecomposable(x)? {
        return Err(Error::Decomposable);
    }
    let d = defect(q, &x.dim_vector())?;
    if d == 0 {
        return Ok(Tag::Regular);
    }
    let mut order = ordering(q)?;
    if d > 0 {
        order.reverse();
    }
    let n = order.len();
    let mut cur = x.clone();
    for t in 0..budget {
        let v = order[t % n];
        if is_unit_at(&cur.dim_vector(), v) {
            return Ok(if d < 0 { Tag::Preprojective { vertex: v, r: t / n } } else { Tag::Preinjective { vertex: v, r: t / n } });
        }
        cur = if d < 0 { reflect_plus(&cur, v)? } else { reflect_minus(&cur, v)? };
    }
    Err(Error::StepBudget(budget))
}

/// `X(p)` on a quiver of type `Ã_n`: `k^p` at every vertex, `J(p, 0)` on arrow
/// `alpha0`, identities elsewhere. `End X(p) ≅ k[t]/(t^p)`.
pub fn a_tilde_cycle_family(field: Field, q: &Quiver, p: usize, alpha0: usize) -> Result<Representation> {
    match graph_type(q)? {
        GraphType::Euclidean { family: Family::A, .. } => {}
        other => return Err(Error::WrongType(format!("cycle family needs type Ã, got {}", other.name()))),
    }
    if alpha0 >= q.arrows().len() {
        return Err(Error::Invalid(format!("arrow index {alpha0} out of range")));
    }
    if p == 0 {
        return Err(Error::Invalid("p must be positive".into()));
    }
    let maps = (0..q.arrows().len())
        .map(|a| if a == alpha0 { Matrix::jordan_block(field, p, &field.zero()) } else { Matrix::identity(field, p) })
        .collect();
    Representation::new(field, q.clone(), vec![p; q.vertex_count()], maps)
}

/// The inclusion `X(p) -> X(p+1)` induced by `k^p -> k^{p+1}` onto the first `p`
/// coordinates; `J(p+1, 0)` restricts to `J(p, 0)` there.
pub fn cycle_family_inclusion(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Morphism> {
    let field = x.field();
    let comps = x
        .quiver()
        .vertices()
        .map(|i| {
            let mut m = Matrix::zeros(field, y.dim(i), x.dim(i));
            for k in 0..x.dim(i).min(y.dim(i)) {
                m.set(k, k, field.one());
            }
            m
        })
        .collect();
    Morphism::new(x.clone(), y.clone(), comps)
}

/// A chain `X_1 -> X_2 -> ...` of irreducible maps between preprojectives with
/// every partial composite nonzero.
#[derive(Clone, Debug)]
pub struct PreprojectiveChain {
    /// `(i, r)` for `X_p = C^{-r}P(i)`; one more entry than `maps`.
    pub positions: Vec<(usize, usize)>,
    pub maps: Vec<Morphism>,
}

/// Starts at `P(start)` and keeps a nonzero `χ: X_p -> I(start)` with `χ ∘ φ_{p-1} ∘ ... ∘ φ_1 ≠ 0`.
/// Since `C^{-r}μ(i)` is mono and `I(start)` injective, `χ` factors through it;
/// some component of the factorization keeps the composite nonzero, and that
/// component is the next map. Both reps must be nonzero at every step, so the
/// quiver has to be acyclic of infinite type (no preprojective is injective).
pub fn preprojective_chain(field: Field, q: &Quiver, start: usize, length: usize) -> Result<PreprojectiveChain> {
    let ty = graph_type(q)?;
    if ty.is_dynkin() {
        return Err(Error::WrongType("the chain needs a quiver of infinite type".into()));
    }
    let power = |r: usize| coxeter_power_word(q, -(r as i64));
    let target = Arc::new(Representation::injective(field, q, start)?);
    let mut x = Arc::new(Representation::projective(field, q, start)?);
    let mut chi = HomSpace::new(&x, &target)?
        .basis()
        .first()
        .cloned()
        .ok_or_else(|| Error::Invalid("Hom(P(i), I(i)) is zero".into()))?;
    let mut composite = Morphism::identity(&x);
    let mut positions = vec![(start, 0)];
    let mut maps = Vec::new();
    for _ in 0..length {
        let (i, r) = *positions.last().expect("nonempty");
        let w = power(r)?;
        // Components of C^{-r}μ(i), with the position of each target.
        let mut comps: Vec<(Morphism, (usize, usize))> = Vec::new();
        for a in q.arrows_into(i) {
            comps.push((w.apply_morphism(&alpha_star(field, q, a)?)?, (q.arrow(a).source, r)));
        }
        for b in q.arrows_out_of(i) {
            comps.push((w.apply_morphism(&alpha_lower_star(field, q, b)?)?, (q.arrow(b).target, r + 1)));
        }
        let hom_x = HomSpace::new(&x, &target)?;
        let mut columns = Vec::new();
        let mut owners = Vec::new();
        let mut spaces = Vec::new();
        for (k, (c, _)) in comps.iter().enumerate() {
            let h = HomSpace::new(c.target(), &target)?;
            for b in h.basis() {
                columns.push(hom_x.coordinates(&b.compose(&c.retarget(x.clone(), c.target().clone())?)?)?);
                owners.push(k);
            }
            spaces.push(h);
        }
        let a = Matrix::from_columns(field, hom_x.dim(), &columns);
        let rhs = Matrix::column_vector(field, &hom_x.coordinates(&chi)?);
        let sol = a.solve(&rhs)?.ok_or_else(|| Error::Incomplete("χ does not factor through C^{-r}μ(i)".into()))?;
        let mut picked = None;
        for (k, (c, pos)) in comps.iter().enumerate() {
            let coeffs: Vec<_> = (0..owners.len()).filter(|&col| owners[col] == k).map(|col| sol.get(col, 0).clone()).collect();
            let chi_k = spaces[k].combination(&coeffs);
            let c = c.retarget(x.clone(), c.target().clone())?;
            let next_composite = c.compose(&composite)?;
            if !chi_k.compose(&next_composite)?.is_zero() {
                picked = Some((c, *pos, chi_k, next_composite));
                break;
            }
        }
        let (c, pos, chi_k, next_composite) =
            picked.ok_or_else(|| Error::Incomplete("no component keeps the composite nonzero".into()))?;
        let next = power(pos.1)?.apply(&Arc::new(Representation::projective(field, q, pos.0)?))?;
        if *next != **c.target() {
            return Err(Error::Invalid("component target differs from its preprojective model".into()));
        }
        let c = c.retarget(x.clone(), next.clone())?;
        chi = chi_k.retarget(next.clone(), target.clone())?;
        composite = next_composite.retarget(composite.source().clone(), next.clone())?;
        maps.push(c);
        positions.push(pos);
        x = next;
    }
    Ok(PreprojectiveChain { positions, maps })
}

/// The word `σ_{o[0]}...σ_{o[p-1]}` whose action on `e_i` gives `dim P(i)`, `i = o[p]`.
pub fn projective_dim_by_reflections(q: &Quiver, i: usize) -> Result<DimVector> {
    let (w, _) = projective_word(q, i)?;
    let forms = FormData::of_quiver(q);
    let mut y = crate::forms::unit(q.vertex_count(), i - 1);
    for &(s, v) in &w.steps {
        debug_assert_eq!(s, Sign::Minus);
        y = forms.reflection(v, &y)?;
    }
    Ok(y)
}
