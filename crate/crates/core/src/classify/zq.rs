//! The translation quiver `ℤQ` in a finite window of levels, and morphism
//! spaces between preprojectives as path spaces modulo mesh relations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Quiver;

/// `i[r]`: vertex `i` of `Q` at level `r`; it stands for `C^r P(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVertex {
    pub vertex: usize,
    pub level: i64,
}

impl ZVertex {
    pub fn new(vertex: usize, level: i64) -> ZVertex {
        ZVertex { vertex, level }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZArrowKind {
    /// `α*[r]: j[r] -> i[r]` for `α: i -> j`.
    Star,
    /// `α_*[r]: i[r] -> j[r-1]` for `α: i -> j`.
    LowerStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZArrow {
    pub kind: ZArrowKind,
    pub arrow: usize,
    pub level: i64,
}

/// `ℤQ` restricted to levels `r_min..=0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZQuiver {
    base: Quiver,
    r_min: i64,
}

impl ZQuiver {
    pub fn new(base: Quiver, r_min: i64) -> Result<ZQuiver> {
        if !base.is_acyclic() {
            return Err(Error::Cyclic);
        }
        if r_min > 0 {
            return Err(Error::Invalid(format!("window lower end {r_min} is positive")));
        }
        Ok(ZQuiver { base, r_min })
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn r_min(&self) -> i64 {
        self.r_min
    }

    pub fn contains(&self, v: ZVertex) -> bool {
        (1..=self.base.vertex_count()).contains(&v.vertex) && (self.r_min..=0).contains(&v.level)
    }

    pub fn source(&self, a: ZArrow) -> ZVertex {
        let arrow = self.base.arrow(a.arrow);
        match a.kind {
            ZArrowKind::Star => ZVertex::new(arrow.target, a.level),
            ZArrowKind::LowerStar => ZVertex::new(arrow.source, a.level),
        }
    }

    pub fn target(&self, a: ZArrow) -> ZVertex {
        let arrow = self.base.arrow(a.arrow);
        match a.kind {
            ZArrowKind::Star => ZVertex::new(arrow.source, a.level),
            ZArrowKind::LowerStar => ZVertex::new(arrow.target, a.level - 1),
        }
    }

    /// Arrows leaving `v` whose target is still in the window.
    pub fn arrows_from(&self, v: ZVertex) -> Vec<ZArrow> {
        let mut out = Vec::new();
        for (k, a) in self.base.arrows().iter().enumerate() {
            if a.target == v.vertex {
                out.push(ZArrow { kind: ZArrowKind::Star, arrow: k, level: v.level });
            }
            if a.source == v.vertex && v.level - 1 >= self.r_min {
                out.push(ZArrow { kind: ZArrowKind::LowerStar, arrow: k, level: v.level });
            }
        }
        out
    }

    /// Every path from `from` to `to`. Levels never increase along a path and
    /// arrows within one level follow `Q^op`, so the set is finite.
    pub fn paths(&self, from: ZVertex, to: ZVertex) -> Vec<Vec<ZArrow>> {
        let mut out = Vec::new();
        let mut stack = vec![(from, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if v == to {
                out.push(path.clone());
            }
            if v.level < to.level {
                continue;
            }
            for a in self.arrows_from(v) {
                let w = self.target(a);
                if w.level >= to.level {
                    let mut p = path.clone();
                    p.push(a);
                    stack.push((w, p));
                }
            }
        }
        out.sort();
        out
    }

    /// Distinct lengths of the paths `from -> to`.
    pub fn path_lengths(&self, from: ZVertex, to: ZVertex) -> Vec<usize> {
        let mut l: Vec<usize> = self.paths(from, to).iter().map(Vec::len).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// The two-arrow paths `l[t] -> l[t-1]` summed in the mesh element at `l[t]`.
    pub fn mesh(&self, l: ZVertex) -> Vec<[ZArrow; 2]> {
        let mut out = Vec::new();
        for (k, a) in self.base.arrows().iter().enumerate() {
            if a.target == l.vertex {
                out.push([
                    ZArrow { kind: ZArrowKind::Star, arrow: k, level: l.level },
                    ZArrow { kind: ZArrowKind::LowerStar, arrow: k, level: l.level },
                ]);
            }
            if a.source == l.vertex {
                out.push([
                    ZArrow { kind: ZArrowKind::LowerStar, arrow: k, level: l.level },
                    ZArrow { kind: ZArrowKind::Star, arrow: k, level: l.level - 1 },
                ]);
            }
        }
        out
    }
}

/// `dim k[ℤQ(from, to)] / (mesh relations)`, computed over ℚ.
///
/// Both ends must lie in the window with one spare level below `to`, so that every
/// mesh between them is fully inside.
pub fn mesh_hom_dim(zq: &ZQuiver, from: ZVertex, to: ZVertex) -> Result<usize> {
    for v in [from, to] {
        if !zq.contains(v) {
            return Err(Error::WindowTooSmall(format!("{}[{}] lies outside levels {}..=0", v.vertex, v.level, zq.r_min)));
        }
    }
    if to.level - 1 < zq.r_min {
        return Err(Error::WindowTooSmall(format!("level {} needs the spare level {}", to.level, to.level - 1)));
    }
    let basis = zq.paths(from, to);
    if basis.is_empty() {
        return Ok(0);
    }
    let index: HashMap<&[ZArrow], usize> = basis.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let field = Field::Rationals;
    let mut rows = Vec::new();
    let n = zq.base.vertex_count();
    for t in to.level + 1..=from.level {
        for l in 1..=n {
            let top = ZVertex::new(l, t);
            let bottom = ZVertex::new(l, t - 1);
            let mesh = zq.mesh(top);
            let heads = zq.paths(from, top);
            let tails = zq.paths(bottom, to);
            for sigma in &heads {
                for tau in &tails {
                    let mut row = vec![field.zero(); basis.len()];
                    for m in &mesh {
                        let mut p = sigma.clone();
                        p.extend_from_slice(m);
                        p.extend_from_slice(tau);
                        let k = index[p.as_slice()];
                        row[k] = row[k].clone() + field.one();
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(basis.len());
    }
    Ok(basis.len() - Matrix::from_rows(field, basis.len(), rows)?.rank())
}
