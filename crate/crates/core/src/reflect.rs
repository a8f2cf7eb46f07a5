//! Reflection functors `S±ᵢ`, the natural maps `ιᵢ`/`πᵢ`, Coxeter functors and
//! the irreducible maps `α*`, `α_*` between preprojectives.
//!
//! Sums over the arrows into (out of) `i` are ordered by arrow label, which is the
//! order of [`Quiver::arrows_into`] and [`Quiver::arrows_out_of`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Quiver;
use crate::rep::{direct_sum, projective_with_paths, yoneda, DirectSum, Morphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Steps applied in sequence order: `steps[0]` acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReflectionWord {
    pub steps: Vec<(Sign, usize)>,
}

impl ReflectionWord {
    pub fn new(steps: Vec<(Sign, usize)>) -> ReflectionWord {
        ReflectionWord { steps }
    }

    pub fn plus(vertices: &[usize]) -> ReflectionWord {
        ReflectionWord { steps: vertices.iter().map(|&i| (Sign::Plus, i)).collect() }
    }

    pub fn minus(vertices: &[usize]) -> ReflectionWord {
        ReflectionWord { steps: vertices.iter().map(|&i| (Sign::Minus, i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(mut self, other: &ReflectionWord) -> ReflectionWord {
        self.steps.extend(other.steps.iter().copied());
        self
    }

    /// Quiver reached from `q`, checking each `+` is at a sink and each `-` at a source.
    pub fn target_quiver(&self, q: &Quiver) -> Result<Quiver> {
        let mut cur = q.clone();
        for &(s, i) in &self.steps {
            check_vertex(&cur, i)?;
            match s {
                Sign::Plus if !cur.is_sink(i) => return Err(Error::NotSink(i)),
                Sign::Minus if !cur.is_source(i) => return Err(Error::NotSource(i)),
                _ => {}
            }
            cur = cur.sigma(i);
        }
        Ok(cur)
    }

    pub fn apply(&self, x: &Arc<Representation>) -> Result<Arc<Representation>> {
        let mut cur = x.clone();
        for &(s, i) in &self.steps {
            cur = match s {
                Sign::Plus => reflect_plus(&cur, i)?,
                Sign::Minus => reflect_minus(&cur, i)?,
            };
        }
        Ok(cur)
    }

    pub fn apply_morphism(&self, f: &Morphism) -> Result<Morphism> {
        let mut cur = f.clone();
        for &(s, i) in &self.steps {
            cur = match s {
                Sign::Plus => reflect_morphism_plus(&cur, i)?,
                Sign::Minus => reflect_morphism_minus(&cur, i)?,
            };
        }
        Ok(cur)
    }
}

fn check_vertex(q: &Quiver, i: usize) -> Result<()> {
    if i == 0 || i > q.vertex_count() {
        return Err(Error::Invalid(format!("vertex {i} out of range 1..={}", q.vertex_count())));
    }
    Ok(())
}

/// `ξ = (X_α): ⊕_{t(α)=i} X_{s(α)} -> X_i` and the offsets of each summand.
fn sink_map(x: &Representation, i: usize) -> (Matrix, Vec<usize>, Vec<usize>) {
    let arrows = x.quiver().arrows_into(i);
    let parts: Vec<&Matrix> = arrows.iter().map(|&k| x.map(k)).collect();
    let mut offsets = Vec::with_capacity(arrows.len());
    let mut acc = 0;
    for &k in &arrows {
        offsets.push(acc);
        acc += x.dim(x.quiver().arrow(k).source);
    }
    (Matrix::hstack(x.field(), x.dim(i), &parts), arrows, offsets)
}

/// `ξ = (X_α): X_i -> ⊕_{s(α)=i} X_{t(α)}` and the offsets of each summand.
fn source_map(x: &Representation, i: usize) -> (Matrix, Vec<usize>, Vec<usize>) {
    let arrows = x.quiver().arrows_out_of(i);
    let parts: Vec<&Matrix> = arrows.iter().map(|&k| x.map(k)).collect();
    let mut offsets = Vec::with_capacity(arrows.len());
    let mut acc = 0;
    for &k in &arrows {
        offsets.push(acc);
        acc += x.dim(x.quiver().arrow(k).target);
    }
    (Matrix::vstack(x.field(), x.dim(i), &parts), arrows, offsets)
}

fn require_sink(q: &Quiver, i: usize) -> Result<()> {
    check_vertex(q, i)?;
    if q.is_sink(i) {
        Ok(())
    } else {
        Err(Error::NotSink(i))
    }
}

fn require_source(q: &Quiver, i: usize) -> Result<()> {
    check_vertex(q, i)?;
    if q.is_source(i) {
        Ok(())
    } else {
        Err(Error::NotSource(i))
    }
}

/// `S⁺ᵢX` over `σᵢQ`: `Yᵢ = Ker ξ`, and each reversed arrow is the inclusion
/// followed by the projection onto its summand.
pub fn reflect_plus(x: &Arc<Representation>, i: usize) -> Result<Arc<Representation>> {
    require_sink(x.quiver(), i)?;
    let (xi, arrows, offsets) = sink_map(x, i);
    let k = xi.kernel_basis();
    let q = x.quiver().sigma(i);
    let mut dims = x.dims().to_vec();
    dims[i - 1] = k.cols();
    let mut maps = x.maps().to_vec();
    for (&a, &off) in arrows.iter().zip(&offsets) {
        let ds = x.dim(x.quiver().arrow(a).source);
        maps[a] = k.block(off, 0, ds, k.cols());
    }
    Ok(Arc::new(Representation::new(x.field(), q, dims, maps)?))
}

/// `S⁻ᵢX` over `σᵢQ`: `Yᵢ = Coker ξ`, and each reversed arrow is the cokernel
/// map restricted to its summand.
pub fn reflect_minus(x: &Arc<Representation>, i: usize) -> Result<Arc<Representation>> {
    require_source(x.quiver(), i)?;
    let (xi, arrows, offsets) = source_map(x, i);
    let c = xi.cokernel_projection();
    let q = x.quiver().sigma(i);
    let mut dims = x.dims().to_vec();
    dims[i - 1] = c.rows();
    let mut maps = x.maps().to_vec();
    for (&a, &off) in arrows.iter().zip(&offsets) {
        let dt = x.dim(x.quiver().arrow(a).target);
        maps[a] = c.block(0, off, c.rows(), dt);
    }
    Ok(Arc::new(Representation::new(x.field(), q, dims, maps)?))
}

fn block_diag_at(f: &Morphism, vertices: &[usize]) -> Matrix {
    let parts: Vec<&Matrix> = vertices.iter().map(|&v| f.comp(v)).collect();
    Matrix::block_diag(f.field(), &parts)
}

/// `S⁺ᵢφ`: identity at `j ≠ i`, and at `i` the restriction of `(φ_{s(α)})` to kernels.
pub fn reflect_morphism_plus(f: &Morphism, i: usize) -> Result<Morphism> {
    let (x, y) = (f.source(), f.target());
    require_sink(x.quiver(), i)?;
    let sx = reflect_plus(x, i)?;
    let sy = reflect_plus(y, i)?;
    let (kx, ky) = (sink_map(x, i).0.kernel_basis(), sink_map(y, i).0.kernel_basis());
    let sources: Vec<usize> = x.quiver().arrows_into(i).iter().map(|&a| x.quiver().arrow(a).source).collect();
    let d = block_diag_at(f, &sources);
    let psi = ky.solve(&(&d * &kx))?.expect("φ maps kernels into kernels");
    let mut comps = f.components().to_vec();
    comps[i - 1] = psi;
    Morphism::new(sx, sy, comps)
}

/// `S⁻ᵢφ`: identity at `j ≠ i`, and at `i` the map induced on cokernels by `(φ_{t(α)})`.
pub fn reflect_morphism_minus(f: &Morphism, i: usize) -> Result<Morphism> {
    let (x, y) = (f.source(), f.target());
    require_source(x.quiver(), i)?;
    let sx = reflect_minus(x, i)?;
    let sy = reflect_minus(y, i)?;
    let (cx, cy) = (source_map(x, i).0.cokernel_projection(), source_map(y, i).0.cokernel_projection());
    let targets: Vec<usize> = x.quiver().arrows_out_of(i).iter().map(|&a| x.quiver().arrow(a).target).collect();
    let d = block_diag_at(f, &targets);
    // ψ C_x = C_y D, solved as C_xᵀ ψᵀ = (C_y D)ᵀ.
    let rhs = (&cy * &d).transpose();
    let psi = cx.transpose().solve(&rhs)?.expect("φ maps images into images").transpose();
    let mut comps = f.components().to_vec();
    comps[i - 1] = psi;
    Morphism::new(sx, sy, comps)
}

/// `ιᵢX: S⁻ᵢS⁺ᵢX -> X` for a sink `i`: identity away from `i`, and
/// `Coker ξ̌ ≅ Im ξ ⊆ Xᵢ` at `i`.
pub fn iota(x: &Arc<Representation>, i: usize) -> Result<Morphism> {
    require_sink(x.quiver(), i)?;
    let y = reflect_plus(x, i)?;
    let z = reflect_minus(&y, i)?;
    let (xi, _, _) = sink_map(x, i);
    let c = source_map(&y, i).0.cokernel_projection();
    // ι C = ξ, solved as Cᵀ ιᵀ = ξᵀ.
    let iota_i = c.transpose().solve(&xi.transpose())?.expect("ξ vanishes on Ker ξ").transpose();
    let mut comps: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::identity(x.field(), d)).collect();
    comps[i - 1] = iota_i;
    Morphism::new(z, x.clone(), comps)
}

/// `πᵢX: X -> S⁺ᵢS⁻ᵢX` for a source `i`: identity away from `i`, and
/// `Xᵢ -> Im ξ ≅ Ker ξ̂` at `i`.
pub fn pi(x: &Arc<Representation>, i: usize) -> Result<Morphism> {
    require_source(x.quiver(), i)?;
    let y = reflect_minus(x, i)?;
    let z = reflect_plus(&y, i)?;
    let (xi, _, _) = source_map(x, i);
    let k = sink_map(&y, i).0.kernel_basis();
    let pi_i = k.solve(&xi)?.expect("Im ξ = Ker ξ̂");
    let mut comps: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::identity(x.field(), d)).collect();
    comps[i - 1] = pi_i;
    Morphism::new(x.clone(), z, comps)
}

fn ordering(q: &Quiver) -> Result<Vec<usize>> {
    q.admissible_ordering().ok_or(Error::Cyclic)
}

/// `C⁺ = S⁺_{i_n} ... S⁺_{i_1}` as a word (`S⁺_{i_1}` first).
pub fn coxeter_plus_word(q: &Quiver) -> Result<ReflectionWord> {
    Ok(ReflectionWord::plus(&ordering(q)?))
}

/// `C⁻ = S⁻_{i_1} ... S⁻_{i_n}` as a word (`S⁻_{i_n}` first).
pub fn coxeter_minus_word(q: &Quiver) -> Result<ReflectionWord> {
    let mut o = ordering(q)?;
    o.reverse();
    Ok(ReflectionWord::minus(&o))
}

/// `C^r`: `(C⁺)^r`, the identity, or `(C⁻)^{-r}`.
pub fn coxeter_power_word(q: &Quiver, r: i64) -> Result<ReflectionWord> {
    let base = if r >= 0 { coxeter_plus_word(q)? } else { coxeter_minus_word(q)? };
    let mut w = ReflectionWord::default();
    for _ in 0..r.unsigned_abs() {
        w = w.then(&base);
    }
    Ok(w)
}

pub fn coxeter_plus(x: &Arc<Representation>) -> Result<Arc<Representation>> {
    coxeter_plus_word(x.quiver())?.apply(x)
}

pub fn coxeter_minus(x: &Arc<Representation>) -> Result<Arc<Representation>> {
    coxeter_minus_word(x.quiver())?.apply(x)
}

pub fn coxeter_power(x: &Arc<Representation>, r: i64) -> Result<Arc<Representation>> {
    coxeter_power_word(x.quiver(), r)?.apply(x)
}

/// `P(i) ≅ S⁻_{i_1} ... S⁻_{i_{p-1}} S(i)` where `i = i_p`: the word, read off the
/// admissible ordering, that builds `P(i)` from the simple over `σ_{i_{p-1}}...σ_{i_1}Q`.
pub fn projective_word(q: &Quiver, i: usize) -> Result<(ReflectionWord, Quiver)> {
    let o = ordering(q)?;
    let p = o.iter().position(|&v| v == i).ok_or_else(|| Error::Invalid(format!("vertex {i} out of range")))?;
    let mut base = q.clone();
    for &v in &o[..p] {
        base = base.sigma(v);
    }
    let mut prefix = o[..p].to_vec();
    prefix.reverse();
    Ok((ReflectionWord::minus(&prefix), base))
}

/// `I(i) ≅ S⁺_{i_n} ... S⁺_{i_{p+1}} S(i)`.
pub fn injective_word(q: &Quiver, i: usize) -> Result<(ReflectionWord, Quiver)> {
    let o = ordering(q)?;
    let p = o.iter().position(|&v| v == i).ok_or_else(|| Error::Invalid(format!("vertex {i} out of range")))?;
    let mut base = q.clone();
    for &v in o[p + 1..].iter().rev() {
        base = base.sigma(v);
    }
    Ok((ReflectionWord::plus(&o[p + 1..]), base))
}

/// The isomorphism `P(i) -> S⁻...S⁻S(i)` sending `εᵢ` to the basis vector at `i`.
/// None of the reflections touch vertex `i`, so this is the composite of the `ι`.
pub fn projective_identification(field: Field, q: &Quiver, i: usize) -> Result<Morphism> {
    let (w, base) = projective_word(q, i)?;
    let model = w.apply(&Arc::new(Representation::simple(field, &base, i)))?;
    let f = yoneda(&model, i, &[field.one()])?;
    if !f.is_isomorphism() {
        return Err(Error::Incomplete(format!("P({i}) does not match its reflection model")));
    }
    Ok(f)
}

/// `α*: P(t(α)) -> P(s(α))`, sending a path `p` from `t(α)` to the path `p ∘ α`.
pub fn alpha_star(field: Field, q: &Quiver, arrow: usize) -> Result<Morphism> {
    let a = q.arrow(arrow);
    let (pt, paths_t) = projective_with_paths(field, q, a.target)?;
    let (ps, paths_s) = projective_with_paths(field, q, a.source)?;
    let comps = (0..q.vertex_count())
        .map(|l| {
            let mut m = Matrix::zeros(field, paths_s[l].len(), paths_t[l].len());
            for (col, p) in paths_t[l].iter().enumerate() {
                let mut arrows = vec![arrow];
                arrows.extend(&p.arrows);
                let row = paths_s[l].iter().position(|r| r.arrows == arrows).expect("α p is a path from s(α)");
                m.set(row, col, field.one());
            }
            m
        })
        .collect();
    Morphism::new(Arc::new(pt), Arc::new(ps), comps)
}

/// `α_*: P(s(α)) -> C⁻P(t(α))`: the reflected quiver's `α̃*` carried back by
/// `S⁻_{i_1}...S⁻_{i_{p-1}}`, with both ends identified through
/// [`projective_identification`].
pub fn alpha_lower_star(field: Field, q: &Quiver, arrow: usize) -> Result<Morphism> {
    let a = q.arrow(arrow).clone();
    let o = ordering(q)?;
    let p = o.iter().position(|&v| v == a.source).expect("vertex in ordering");
    let qpos = o.iter().position(|&v| v == a.target).expect("vertex in ordering");
    debug_assert!(qpos < p);
    let (w, qt) = projective_word(q, a.source)?;
    // In Q̃ the arrow runs t(α) -> s(α) and s(α) is a sink, so P̃(s(α)) = S(s(α)).
    let tilde_star = alpha_star(field, &qt, arrow)?;
    // Q̃ has admissible ordering i_p..i_n, i_1..i_{p-1}; P̃(t(α)) is built from it so
    // that W P̃(t(α)) is literally C⁻ applied to the model of P(t(α)).
    let (_, base_b) = projective_word(q, a.target)?;
    let mut rotated: Vec<usize> = o[p..].iter().chain(&o[..qpos]).copied().collect();
    rotated.reverse();
    let tilde_model = ReflectionWord::minus(&rotated).apply(&Arc::new(Representation::simple(field, &base_b, a.target)))?;
    let nu_tilde = yoneda(&tilde_model, a.target, &[field.one()])?.retarget(tilde_star.target().clone(), tilde_model.clone())?;
    if !nu_tilde.is_isomorphism() {
        return Err(Error::Incomplete(format!("reflected P({}) does not match its model", a.target)));
    }
    let s_simple = Arc::new(Representation::simple(field, &qt, a.source));
    let start = tilde_star.retarget(s_simple, tilde_star.target().clone())?;
    let moved = w.apply_morphism(&nu_tilde.compose(&start)?)?;
    let nu_a = projective_identification(field, q, a.source)?;
    let nu_b = projective_identification(field, q, a.target)?;
    let c_nu_b = coxeter_minus_word(q)?.apply_morphism(&nu_b)?;
    let back = c_nu_b.inverse().expect("identification is invertible");
    let moved = moved.retarget(nu_a.target().clone(), c_nu_b.target().clone())?;
    back.compose(&moved)?.compose(&nu_a)
}

/// A pair `A --f--> B --g--> C`.
#[derive(Clone, Debug)]
pub struct ShortSequence {
    pub f: Morphism,
    pub g: Morphism,
}

impl ShortSequence {
    /// `A -> B -> C -> 0` is exact: `g` epi and `Im f = Ker g`.
    pub fn is_right_exact(&self) -> bool {
        if self.g.compose(&self.f).map(|c| !c.is_zero()).unwrap_or(true) {
            return false;
        }
        let (rf, rg) = (self.f.ranks(), self.g.ranks());
        self.g.is_epi() && (0..rf.len()).all(|v| rf[v] + rg[v] == self.f.target().dims()[v])
    }

    /// `0 -> A -> B -> C -> 0` is exact.
    pub fn is_short_exact(&self) -> bool {
        self.f.is_mono() && self.is_right_exact()
    }
}

/// `Σ f_k ∘ π_k` out of a direct sum.
pub fn from_sum(ds: &DirectSum, maps: &[Morphism], target: &Arc<Representation>) -> Result<Morphism> {
    let mut acc = Morphism::zero(&ds.sum, target);
    for (f, p) in maps.iter().zip(&ds.projections) {
        acc = acc.add(&f.retarget(p.target().clone(), target.clone())?.compose(p)?)?;
    }
    Ok(acc)
}

/// `Σ ι_k ∘ f_k` into a direct sum.
pub fn into_sum(source: &Arc<Representation>, ds: &DirectSum, maps: &[Morphism]) -> Result<Morphism> {
    let mut acc = Morphism::zero(source, &ds.sum);
    for (f, i) in maps.iter().zip(&ds.injections) {
        acc = acc.add(&i.compose(&f.retarget(source.clone(), i.source().clone())?)?)?;
    }
    Ok(acc)
}

/// At vertex `i`: the projective presentation of `S(i)`, the sequence starting at
/// the simple projective `P(i)` (only at a sink), and the mesh sequence. The mesh sequence is
/// always right exact; its first map is mono only when `P(i)` is not injective,
/// since `C⁻` kills injectives and the reflections can lose copies of simples on
/// the left.
#[derive(Clone, Debug)]
pub struct CanonicalSequences {
    pub first: ShortSequence,
    pub second: Option<ShortSequence>,
    pub third: ShortSequence,
}

pub fn canonical_sequences(field: Field, q: &Quiver, i: usize) -> Result<CanonicalSequences> {
    check_vertex(q, i)?;
    let p_i = Arc::new(Representation::projective(field, q, i)?);
    let c_minus = coxeter_minus_word(q)?;
    let cp_i = c_minus.apply(&p_i)?;
    let outgoing = q.arrows_out_of(i);
    let incoming = q.arrows_into(i);

    // 0 -> ⊕_{α: i->j} P(j) -> P(i) -> S(i) -> 0
    let stars_out: Vec<Morphism> = outgoing.iter().map(|&a| alpha_star(field, q, a)).collect::<Result<_>>()?;
    let left = direct_sum(field, q, &stars_out.iter().map(|m| m.source().clone()).collect::<Vec<_>>())?;
    let f1 = from_sum(&left, &stars_out, &p_i)?;
    let s_i = Arc::new(Representation::simple(field, q, i));
    let top = yoneda(&s_i, i, &[field.one()])?.retarget(p_i.clone(), s_i.clone())?;
    let first = ShortSequence { f: f1, g: top };

    // α: j -> i gives α*: P(i) -> P(j) and α_*: P(j) -> C⁻P(i).
    let stars_in: Vec<Morphism> = incoming.iter().map(|&a| alpha_star(field, q, a)).collect::<Result<_>>()?;
    let lowers_in: Vec<Morphism> = incoming.iter().map(|&a| alpha_lower_star(field, q, a)).collect::<Result<_>>()?;
    let second = if q.is_sink(i) {
        let mid = direct_sum(field, q, &stars_in.iter().map(|m| m.target().clone()).collect::<Vec<_>>())?;
        Some(ShortSequence { f: into_sum(&p_i, &mid, &stars_in)?, g: from_sum(&mid, &lowers_in, &cp_i)? })
    } else {
        None
    };

    // β: i -> j gives β_*: P(i) -> C⁻P(j) and C⁻β*: C⁻P(j) -> C⁻P(i).
    let lowers_out: Vec<Morphism> = outgoing.iter().map(|&b| alpha_lower_star(field, q, b)).collect::<Result<_>>()?;
    let c_stars_out: Vec<Morphism> = stars_out.iter().map(|m| c_minus.apply_morphism(m)).collect::<Result<_>>()?;
    let mut parts: Vec<Arc<Representation>> = stars_in.iter().map(|m| m.target().clone()).collect();
    parts.extend(lowers_out.iter().map(|m| m.target().clone()));
    let mid = direct_sum(field, q, &parts)?;
    let mut down = stars_in.clone();
    down.extend(lowers_out.iter().cloned());
    let mut up = lowers_in.clone();
    up.extend(c_stars_out.iter().cloned());
    let third = ShortSequence { f: into_sum(&p_i, &mid, &down)?, g: from_sum(&mid, &up, &cp_i)? };
    Ok(CanonicalSequences { first, second, third })
}
