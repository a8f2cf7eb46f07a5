use std::sync::Arc;

use super::{find_split, fitting_split, LocalCertificate, SplitSearch};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::random;
use crate::rep::{direct_sum, DirectSum, HomSpace, Morphism, Representation};

/// One isomorphism class of indecomposable summands.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Arc<Representation>,
    pub multiplicity: usize,
    pub certificate: LocalCertificate,
}

/// `X ≅ ⊕ Xᵢ^{aᵢ}` with pairwise non-isomorphic indecomposable `Xᵢ`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `X₁^{a₁} ⊕ X₂^{a₂} ⊕ ...` in summand order.
    pub sum: DirectSum,
    /// Isomorphism `sum -> X`.
    pub witness: Morphism,
}

impl Decomposition {
    /// The class of the `k`-th direct summand of `sum`.
    pub fn class_of(&self) -> Vec<usize> {
        self.summands.iter().enumerate().flat_map(|(c, s)| std::iter::repeat(c).take(s.multiplicity)).collect()
    }

    /// Inclusion of the `k`-th summand of `sum` into `X`.
    pub fn inclusion(&self, k: usize) -> Morphism {
        self.witness.compose(&self.sum.injections[k]).expect("summand of the witness source")
    }

    /// Projection of `X` onto the `k`-th summand of `sum`.
    pub fn projection(&self, k: usize) -> Morphism {
        let inv = self.witness.inverse().expect("witness is invertible");
        self.sum.projections[k].compose(&inv).expect("witness target")
    }

    pub fn len(&self) -> usize {
        self.sum.injections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

struct Piece {
    rep: Arc<Representation>,
    incl: Morphism,
    cert: LocalCertificate,
}

fn pieces(x: &Arc<Representation>, shuffle: Option<u64>, depth: u64) -> Result<Vec<Piece>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    match find_split(x, shuffle.map(|s| s.wrapping_mul(31).wrapping_add(depth)))? {
        SplitSearch::Local(cert) => Ok(vec![Piece { rep: x.clone(), incl: Morphism::identity(x), cert }]),
        SplitSearch::Split(phi) => {
            let split = fitting_split(x, &phi)?.expect("splitting element gives a proper Fitting split");
            let mut out = Vec::new();
            for (k, part) in [split.image.clone(), split.kernel.clone()].iter().enumerate() {
                let into_x = split.witness.compose(&split.sum.injections[k])?;
                for p in pieces(part, shuffle, depth * 2 + k as u64 + 1)? {
                    out.push(Piece { incl: into_x.compose(&p.incl)?, ..p });
                }
            }
            Ok(out)
        }
    }
}

pub fn krs_decompose(x: &Arc<Representation>) -> Result<Decomposition> {
    decompose(x, None)
}

/// As [`krs_decompose`] with the endomorphism search order shuffled by `seed`.
pub fn krs_decompose_seeded(x: &Arc<Representation>, seed: u64) -> Result<Decomposition> {
    decompose(x, Some(seed))
}

fn decompose(x: &Arc<Representation>, shuffle: Option<u64>) -> Result<Decomposition> {
    let ps = pieces(x, shuffle, 0)?;
    // classes[c] = (representative piece, members as (piece index, iso rep_c -> piece)).
    let mut classes: Vec<(usize, Vec<(usize, Morphism)>)> = Vec::new();
    for (k, p) in ps.iter().enumerate() {
        let mut placed = false;
        for (rep_idx, members) in classes.iter_mut() {
            let r = &ps[*rep_idx];
            if r.rep.dims() != p.rep.dims() {
                continue;
            }
            if let Some(theta) = indecomposable_isomorphism(&r.rep, &r.cert, &p.rep)? {
                members.push((k, theta));
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((k, vec![(k, Morphism::identity(&p.rep))]));
        }
    }
    classes.sort_by(|a, b| {
        let (ra, rb) = (&ps[a.0].rep, &ps[b.0].rep);
        (ra.total_dim(), ra.dims()).cmp(&(rb.total_dim(), rb.dims()))
    });
    let mut summands = Vec::with_capacity(classes.len());
    let mut parts = Vec::new();
    let mut maps: Vec<Morphism> = Vec::new();
    for (rep_idx, members) in &classes {
        let r = &ps[*rep_idx];
        summands.push(Summand { rep: r.rep.clone(), multiplicity: members.len(), certificate: r.cert.clone() });
        for (k, theta) in members {
            parts.push(r.rep.clone());
            maps.push(ps[*k].incl.compose(theta)?);
        }
    }
    let sum = direct_sum(x.field(), x.quiver(), &parts)?;
    let comps = (0..x.dims().len())
        .map(|v| {
            let cols: Vec<&Matrix> = maps.iter().map(|m| &m.components()[v]).collect();
            Matrix::hstack(x.field(), x.dims()[v], &cols)
        })
        .collect();
    let witness = Morphism::new(sum.sum.clone(), x.clone(), comps)?;
    if !witness.is_isomorphism() {
        return Err(Error::Incomplete("assembled summands do not span the representation".into()));
    }
    Ok(Decomposition { summands, sum, witness })
}

/// Exact isomorphism test between indecomposables `a` (with local `End`) and `b`:
/// `a ≅ b` iff `g ∘ f` is a unit of `End(a)` for some basis pair `f: a -> b`, `g: b -> a`.
pub fn indecomposable_isomorphism(
    a: &Arc<Representation>,
    cert: &LocalCertificate,
    b: &Arc<Representation>,
) -> Result<Option<Morphism>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    let ab = HomSpace::new(a, b)?;
    let ba = HomSpace::new(b, a)?;
    for f in ab.basis() {
        for g in ba.basis() {
            if cert.is_unit(&g.compose(f)?)? {
                // g f is a unit, so f is a split mono between equal dimensions.
                debug_assert!(f.is_isomorphism());
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

const SMALL_COMBINATIONS: u64 = 64;

/// An isomorphism `x -> y` found among Hom basis elements, pair sums and
/// seeded small combinations, or `None`.
pub fn is_isomorphic(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Option<Morphism>> {
    x.same_quiver(y)?;
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let h = HomSpace::new(x, y)?;
    let b = h.basis();
    if let Some(f) = b.iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let f = b[i].add(&b[j])?;
            if f.is_isomorphism() {
                return Ok(Some(f));
            }
        }
    }
    let mut rng = random::rng(0x150);
    for _ in 0..SMALL_COMBINATIONS {
        let coeffs: Vec<Scalar> = (0..b.len()).map(|_| random::scalar(x.field(), &mut rng)).collect();
        let f = h.combination(&coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
