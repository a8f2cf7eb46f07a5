//! Quivers, paths, the surgery σᵢ, admissible orderings and derived quivers.
//!
//! Vertices are numbered `1..=n` in every public signature. Arrows are
//! addressed by their index in [`Quiver::arrows`]; that index survives σᵢ,
//! opposite and separated constructions, so per-arrow data can be carried
//! across them unchanged.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

/// A path: start vertex plus arrow indices in traversal order. The empty
/// sequence is the trivial path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(i: usize) -> Path {
        Path { start: i, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    pub fn labels<'a>(&self, q: &'a Quiver) -> Vec<&'a str> {
        self.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect()
    }

    /// Appends an arrow leaving the current end.
    pub fn then(&self, q: &Quiver, a: usize) -> Path {
        debug_assert_eq!(q.arrows[a].source, self.end(q));
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { start: self.start, arrows }
    }
}

impl Quiver {
    /// Validates ranges and label uniqueness.
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = HashSet::new();
        for a in &arrows {
            if a.source == 0 || a.source > n || a.target == 0 || a.target > n {
                return Err(Error::Invalid(format!("arrow {} has an endpoint outside 1..={n}", a.label)));
            }
            if !seen.insert(a.label.clone()) {
                return Err(Error::Invalid(format!("duplicate arrow label {}", a.label)));
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Shorthand for literal quivers: `(label, source, target)` triples.
    pub fn from_triples(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Quiver> {
        Quiver::new(n, arrows.iter().map(|&(l, s, t)| Arrow { label: l.to_string(), source: s, target: t }).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Indices of arrows ending at `i`, sorted by label.
    pub fn arrows_into(&self, i: usize) -> Vec<usize> {
        self.sorted_by_label(|a| a.target == i)
    }

    /// Indices of arrows starting at `i`, sorted by label.
    pub fn arrows_out_of(&self, i: usize) -> Vec<usize> {
        self.sorted_by_label(|a| a.source == i)
    }

    fn sorted_by_label(&self, keep: impl Fn(&Arrow) -> bool) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.arrows.len()).filter(|&k| keep(&self.arrows[k])).collect();
        v.sort_by(|&a, &b| self.arrows[a].label.cmp(&self.arrows[b].label));
        v
    }

    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == i).count()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.source != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.target != i)
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.vertices().filter(|&i| self.is_sink(i)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.vertices().filter(|&i| self.is_source(i)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm: acyclic iff every vertex is eventually removed.
        let mut indeg = vec![0usize; self.n + 1];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = self.vertices().filter(|&i| indeg[i] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        removed == self.n
    }

    /// Every path starting at `i`, sorted by (length, label sequence).
    pub fn paths_from(&self, i: usize) -> Result<Vec<Path>> {
        if !self.is_acyclic() {
            return Err(Error::InfinitePathSet);
        }
        let mut out = vec![Path::trivial(i)];
        let mut frontier = vec![Path::trivial(i)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_out_of(p.end(self)) {
                    next.push(p.then(self, a));
                }
            }
            next.sort_by(|x, y| x.labels(self).cmp(&y.labels(self)));
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// `Q(i, j)`: all paths from `i` to `j`, sorted by (length, label sequence).
    pub fn paths_between(&self, i: usize, j: usize) -> Result<Vec<Path>> {
        Ok(self.paths_from(i)?.into_iter().filter(|p| p.end(self) == j).collect())
    }

    /// σᵢQ: every arrow incident to `i` reversed (loops stay put).
    pub fn sigma(&self, i: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if (a.source == i) != (a.target == i) {
                    Arrow { label: a.label.clone(), source: a.target, target: a.source }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver { n: self.n, arrows }
    }

    /// Repeatedly takes the smallest-index sink of the current σ-quiver.
    pub fn admissible_ordering(&self) -> Option<Vec<usize>> {
        if !self.is_acyclic() {
            return None;
        }
        let mut q = self.clone();
        let mut order = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n + 1];
        for _ in 0..self.n {
            let i = q.vertices().find(|&i| !used[i] && q.is_sink(i))?;
            used[i] = true;
            order.push(i);
            q = q.sigma(i);
        }
        Some(order)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source }).collect(),
        }
    }

    /// Vertices `1..=n` and `n+1..=2n` (vertex i' is `n + i`); each arrow
    /// `i -> j` becomes `i -> j'` with the same label.
    pub fn separated(&self) -> Quiver {
        Quiver {
            n: 2 * self.n,
            arrows: self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.source, target: self.n + a.target }).collect(),
        }
    }

    /// Undirected connectivity (the empty quiver counts as disconnected).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Linear `1 -> 2 -> ... -> n`, arrows `a1..`.
    pub fn linear_a(n: usize) -> Quiver {
        let arrows = (1..n).map(|i| Arrow { label: format!("a{i}"), source: i, target: i + 1 }).collect();
        Quiver { n, arrows }
    }

    /// Kronecker quiver, arrows `a, b: 1 -> 2`.
    pub fn kronecker() -> Quiver {
        Quiver::from_triples(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap()
    }

    /// r-Kronecker quiver: `r` arrows `1 -> 2`. For `r = 3` the labels are `a, b, c`.
    pub fn kronecker_r(r: usize) -> Quiver {
        let labels: Vec<String> = if r <= 3 {
            ["a", "b", "c"][..r].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=r).map(|k| format!("a{k}")).collect()
        };
        Quiver { n: 2, arrows: labels.into_iter().map(|label| Arrow { label, source: 1, target: 2 }).collect() }
    }

    /// One vertex with one loop `a`.
    pub fn jordan() -> Quiver {
        Quiver::from_triples(1, &[("a", 1, 1)]).unwrap()
    }

    /// One vertex with `r` loops `a1..ar`; `r = 2` gives Γ with loops `sigma, tau`.
    pub fn loops(r: usize) -> Quiver {
        if r == 2 {
            return Quiver::from_triples(1, &[("sigma", 1, 1), ("tau", 1, 1)]).unwrap();
        }
        Quiver { n: 1, arrows: (1..=r).map(|k| Arrow { label: format!("a{k}"), source: 1, target: 1 }).collect() }
    }

    /// Two-loop quiver Γ.
    pub fn two_loop() -> Quiver {
        Quiver::loops(2)
    }

    /// Subspace quiver Λₙ: subspace vertices `1..=n`, centre `n + 1`, arrows `a1..an`.
    pub fn subspace(n: usize) -> Quiver {
        Quiver { n: n + 1, arrows: (1..=n).map(|k| Arrow { label: format!("a{k}"), source: k, target: n + 1 }).collect() }
    }
}
