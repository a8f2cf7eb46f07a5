//! Euler and Tits forms, Dynkin/Euclidean recognition, reflections, the
//! Coxeter transformation, defect and root enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;

pub type DimVector = Vec<i64>;

/// Undirected multigraph: `mult[i][j]` edges between `i` and `j` (0-based,
/// symmetric), `mult[i][i]` loops at `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    mult: Vec<Vec<u32>>,
}

impl Graph {
    /// Edges as 1-based vertex pairs; a pair `(i, i)` is a loop.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut mult = vec![vec![0u32; n]; n];
        for &(i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Invalid(format!("edge ({i}, {j}) outside 1..={n}")));
            }
            mult[i - 1][j - 1] += 1;
            if i != j {
                mult[j - 1][i - 1] += 1;
            }
        }
        Ok(Graph { mult })
    }

    pub fn of_quiver(q: &Quiver) -> Graph {
        let e: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        Graph::new(q.vertex_count(), &e).expect("quiver arrows are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i - 1][j - 1]
    }

    fn degree(&self, v: usize) -> u32 {
        // Loops count twice, as in the handshake lemma.
        (0..self.mult.len()).map(|w| if w == v { 2 * self.mult[v][v] } else { self.mult[v][w] }).sum()
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.mult.len()).filter(|&w| w != v && self.mult[v][w] > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.mult.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The symmetric form: `(eᵢ, eᵢ) = 2 - 2 dᵢᵢ`, `(eᵢ, eⱼ) = -dᵢⱼ`.
    pub fn symmetric_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.mult.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 - 2 * self.mult[i][i] as i64 } else { -(self.mult[i][j] as i64) }).collect())
            .collect()
    }

    /// Standard Dynkin diagrams, numbered as documented on [`GraphType`].
    pub fn dynkin(family: Family, n: usize) -> Result<Graph> {
        match (family, n) {
            (Family::A, n) if n >= 1 => Graph::new(n, &chain(1, n)),
            (Family::D, n) if n >= 4 => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend(chain(3, n));
                Graph::new(n, &e)
            }
            (Family::E, n) if (6..=8).contains(&n) => {
                let mut e = chain(1, n - 1);
                e.push((3, n));
                Graph::new(n, &e)
            }
            _ => Err(Error::Invalid(format!("no Dynkin diagram {family:?}{n}"))),
        }
    }

    /// Standard Euclidean diagrams on `m + 1` vertices.
    pub fn euclidean(family: Family, m: usize) -> Result<Graph> {
        match (family, m) {
            (Family::A, 0) => Graph::new(1, &[(1, 1)]),
            (Family::A, 1) => Graph::new(2, &[(1, 2), (1, 2)]),
            (Family::A, m) => {
                let mut e = chain(1, m + 1);
                e.push((m + 1, 1));
                Graph::new(m + 1, &e)
            }
            (Family::D, m) if m >= 4 => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend(chain(3, m - 1));
                e.push((m, m - 1));
                e.push((m + 1, m - 1));
                Graph::new(m + 1, &e)
            }
            (Family::E, 6) => {
                let mut e = chain(1, 5);
                e.extend([(3, 6), (6, 7)]);
                Graph::new(7, &e)
            }
            (Family::E, 7) => {
                let mut e = chain(1, 7);
                e.push((4, 8));
                Graph::new(8, &e)
            }
            (Family::E, 8) => {
                let mut e = chain(1, 8);
                e.push((3, 9));
                Graph::new(9, &e)
            }
            _ => Err(Error::Invalid(format!("no Euclidean diagram {family:?}~{m}"))),
        }
    }
}

fn chain(from: usize, to: usize) -> Vec<(usize, usize)> {
    (from..to).map(|i| (i, i + 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        }
    }
}

/// Result of graph classification. Standard numbering: `Aₙ` is the path
/// `1-…-n`; `Dₙ` has leaves 1, 2 on vertex 3 and the path `3-…-n`; `Eₙ` is the
/// path `1-…-(n-1)` with `n` attached to 3. Euclidean diagrams follow
/// [`Graph::euclidean`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphType {
    Dynkin { family: Family, n: usize },
    Euclidean { family: Family, m: usize, delta: DimVector },
    Other,
}

impl GraphType {
    pub fn delta(&self) -> Option<&DimVector> {
        match self {
            GraphType::Euclidean { delta, .. } => Some(delta),
            _ => None,
        }
    }

    pub fn is_dynkin(&self) -> bool {
        matches!(self, GraphType::Dynkin { .. })
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, GraphType::Euclidean { .. })
    }

    pub fn name(&self) -> String {
        match self {
            GraphType::Dynkin { family, n } => format!("{}{n}", family.letter()),
            GraphType::Euclidean { family, m, .. } => format!("{}~{m}", family.letter()),
            GraphType::Other => "other".to_string(),
        }
    }
}

/// Euler form data of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormData {
    /// `⟨x, y⟩ = xᵀ E y`.
    pub euler: Vec<Vec<i64>>,
    /// `E + Eᵀ`.
    pub symmetric: Vec<Vec<i64>>,
}

impl FormData {
    pub fn of_quiver(q: &Quiver) -> FormData {
        let n = q.vertex_count();
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in q.arrows() {
            e[a.source - 1][a.target - 1] -= 1;
        }
        let s = (0..n).map(|i| (0..n).map(|j| e[i][j] + e[j][i]).collect()).collect();
        FormData { euler: e, symmetric: s }
    }

    pub fn of_graph(g: &Graph) -> FormData {
        let s = g.symmetric_matrix();
        // A Euler matrix for some orientation is not needed for graph-only work;
        // use the upper-triangular half so that E + Eᵀ = S still holds.
        let n = s.len();
        let e = (0..n)
            .map(|i| (0..n).map(|j| if i == j { s[i][i] / 2 } else if i < j { s[i][j] } else { 0 }).collect())
            .collect();
        FormData { euler: e, symmetric: s }
    }

    pub fn dim(&self) -> usize {
        self.euler.len()
    }

    fn check(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Shape(format!("vector of length {} for {} vertices", x.len(), self.dim())));
        }
        Ok(())
    }

    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        Ok(bilinear(&self.euler, x, y))
    }

    pub fn symmetric_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        Ok(bilinear(&self.symmetric, x, y))
    }

    /// `q(x) = ½(x, x)`, an integer because the diagonal of `S` is even.
    pub fn quadratic(&self, x: &[i64]) -> Result<i64> {
        Ok(self.symmetric_form(x, x)? / 2)
    }

    /// σᵢ(x) = x − (x, eᵢ) eᵢ; undefined at a loop vertex.
    pub fn reflection(&self, i: usize, x: &[i64]) -> Result<DimVector> {
        self.check(x)?;
        if i == 0 || i > self.dim() {
            return Err(Error::Invalid(format!("vertex {i} out of range")));
        }
        if self.symmetric[i - 1][i - 1] != 2 {
            return Err(Error::LoopVertex(i));
        }
        let mut y = x.to_vec();
        let s: i64 = (0..self.dim()).map(|j| self.symmetric[i - 1][j] * x[j]).sum();
        y[i - 1] -= s;
        Ok(y)
    }
}

fn bilinear(m: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            s += x[i] * v * y[j];
        }
    }
    s
}

/// Classifies a connected graph by shape and, independently, by the
/// definiteness of its form; the two verdicts must agree.
pub fn classify_graph(g: &Graph) -> Result<GraphType> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let by_shape = classify_by_shape(g);
    let by_form = classify_by_form(g);
    let agree = match (&by_shape, &by_form) {
        (GraphType::Dynkin { .. }, FormVerdict::Definite) => true,
        (GraphType::Euclidean { delta, .. }, FormVerdict::Semidefinite(d)) => delta == d,
        (GraphType::Other, FormVerdict::Indefinite) => true,
        _ => false,
    };
    if !agree {
        return Err(Error::Invalid(format!("shape verdict {by_shape:?} contradicts form verdict {by_form:?}")));
    }
    Ok(by_shape)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormVerdict {
    Definite,
    Semidefinite(DimVector),
    Indefinite,
}

/// Definiteness by leading principal minors; Euclidean when the radical is a
/// line spanned by a positive vector and deleting a vertex leaves a definite form.
pub fn classify_by_form(g: &Graph) -> FormVerdict {
    let s = g.symmetric_matrix();
    if is_positive_definite(&s) {
        return FormVerdict::Definite;
    }
    let n = s.len();
    let m = Matrix::from_i64(Field::Rationals, &s);
    let k = m.kernel_basis();
    if k.cols() != 1 {
        return FormVerdict::Indefinite;
    }
    let col: Vec<BigRational> = k.column(0).iter().map(|x| x.rational().clone()).collect();
    let den = col.iter().fold(BigInt::one(), |a, v| a.lcm(v.denom()));
    let mut ints: Vec<BigInt> = col.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let g0 = ints.iter().fold(BigInt::zero(), |a, v| a.gcd(v));
    for v in ints.iter_mut() {
        *v = &*v / &g0;
    }
    if ints.iter().all(|v| v.is_negative()) {
        for v in ints.iter_mut() {
            *v = -&*v;
        }
    }
    if !ints.iter().all(|v| v.is_positive()) {
        return FormVerdict::Indefinite;
    }
    let minor: Vec<Vec<i64>> = (1..n).map(|i| s[i][1..].to_vec()).collect();
    if !is_positive_definite(&minor) {
        return FormVerdict::Indefinite;
    }
    FormVerdict::Semidefinite(ints.iter().map(|v| v.to_i64().unwrap()).collect())
}

/// Sylvester's criterion with exact Bareiss determinants.
pub fn is_positive_definite(s: &[Vec<i64>]) -> bool {
    (1..=s.len()).all(|k| {
        let sub: Vec<Vec<BigInt>> = (0..k).map(|i| (0..k).map(|j| BigInt::from(s[i][j])).collect()).collect();
        determinant(sub).is_positive()
    })
}

fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn classify_by_shape(g: &Graph) -> GraphType {
    let n = g.vertex_count();
    let loops: u32 = (0..n).map(|i| g.mult[i][i]).sum();
    if loops > 0 {
        if n == 1 && loops == 1 {
            return GraphType::Euclidean { family: Family::A, m: 0, delta: vec![1] };
        }
        return GraphType::Other;
    }
    let max_mult = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| g.mult[i][j]).max().unwrap_or(0);
    if max_mult >= 2 {
        if n == 2 && max_mult == 2 {
            return GraphType::Euclidean { family: Family::A, m: 1, delta: vec![1, 1] };
        }
        return GraphType::Other;
    }
    let edges: usize = (0..n).map(|i| g.neighbours(i).len()).sum::<usize>() / 2;
    if edges == n {
        if (0..n).all(|v| g.degree(v) == 2) {
            return GraphType::Euclidean { family: Family::A, m: n - 1, delta: vec![1; n] };
        }
        return GraphType::Other;
    }
    if edges + 1 != n {
        return GraphType::Other;
    }
    // A tree from here on.
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if branch.is_empty() {
        return GraphType::Dynkin { family: Family::A, n };
    }
    let arms = |c: usize| -> Vec<Vec<usize>> {
        g.neighbours(c)
            .into_iter()
            .map(|start| {
                let mut arm = vec![start];
                let (mut prev, mut cur) = (c, start);
                while g.degree(cur) == 2 {
                    let next = g.neighbours(cur).into_iter().find(|&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                    arm.push(cur);
                }
                arm
            })
            .collect()
    };
    match branch.len() {
        1 => {
            let c = branch[0];
            let mut arms = arms(c);
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            let mut delta = vec![0i64; n];
            let mut fill = |centre: i64, arm_values: &[&[i64]]| {
                delta[c] = centre;
                for (arm, vals) in arms.iter().zip(arm_values) {
                    for (&v, &x) in arm.iter().zip(vals.iter()) {
                        delta[v] = x;
                    }
                }
            };
            match lens.as_slice() {
                [1, 1, 1, 1] => {
                    fill(2, &[&[1], &[1], &[1], &[1]]);
                    GraphType::Euclidean { family: Family::D, m: 4, delta }
                }
                [1, 1, c3] => GraphType::Dynkin { family: Family::D, n: c3 + 3 },
                [1, 2, 2] => GraphType::Dynkin { family: Family::E, n: 6 },
                [1, 2, 3] => GraphType::Dynkin { family: Family::E, n: 7 },
                [1, 2, 4] => GraphType::Dynkin { family: Family::E, n: 8 },
                [2, 2, 2] => {
                    fill(3, &[&[2, 1], &[2, 1], &[2, 1]]);
                    GraphType::Euclidean { family: Family::E, m: 6, delta }
                }
                [1, 3, 3] => {
                    fill(4, &[&[2], &[3, 2, 1], &[3, 2, 1]]);
                    GraphType::Euclidean { family: Family::E, m: 7, delta }
                }
                [1, 2, 5] => {
                    fill(6, &[&[3], &[4, 2], &[5, 4, 3, 2, 1]]);
                    GraphType::Euclidean { family: Family::E, m: 8, delta }
                }
                _ => GraphType::Other,
            }
        }
        2 => {
            // D̃ₘ: two degree-3 vertices, each carrying two leaves.
            let (b1, b2) = (branch[0], branch[1]);
            if g.degree(b1) != 3 || g.degree(b2) != 3 {
                return GraphType::Other;
            }
            let leaves_ok = |b: usize| g.neighbours(b).into_iter().filter(|&w| g.degree(w) == 1).count() == 2;
            if !leaves_ok(b1) || !leaves_ok(b2) {
                return GraphType::Other;
            }
            let delta = (0..n).map(|v| if g.degree(v) == 1 { 1 } else { 2 }).collect();
            GraphType::Euclidean { family: Family::D, m: n - 1, delta }
        }
        _ => GraphType::Other,
    }
}

/// Coxeter transformation `c = σ_{iₙ}…σ_{i₁}` along the admissible ordering.
pub fn coxeter_transform(q: &Quiver, x: &[i64]) -> Result<DimVector> {
    let order = q.admissible_ordering().ok_or(Error::Cyclic)?;
    let f = FormData::of_quiver(q);
    let mut y = x.to_vec();
    for &i in &order {
        y = f.reflection(i, &y)?;
    }
    Ok(y)
}

/// Least `h > 0` with `c^h` the identity on `ℤⁿ / rad q`, by iteration on the `eᵢ`.
pub fn coxeter_order(q: &Quiver) -> Result<usize> {
    const CAP: usize = 10_000;
    let ty = classify_graph(&Graph::of_quiver(q))?;
    let delta = match &ty {
        GraphType::Dynkin { .. } => None,
        GraphType::Euclidean { delta, .. } => Some(delta.clone()),
        GraphType::Other => return Err(Error::WrongType("coxeter_order needs a Dynkin or Euclidean quiver".into())),
    };
    let n = q.vertex_count();
    let mut images: Vec<DimVector> = (0..n).map(|i| unit(n, i)).collect();
    for h in 1..=CAP {
        for v in images.iter_mut() {
            *v = coxeter_transform(q, v)?;
        }
        let fixed = images.iter().enumerate().all(|(i, v)| {
            let diff: Vec<i64> = v.iter().zip(unit(n, i)).map(|(a, b)| a - b).collect();
            match &delta {
                None => diff.iter().all(|&d| d == 0),
                Some(d) => in_span(&diff, d),
            }
        });
        if fixed {
            return Ok(h);
        }
    }
    Err(Error::StepBudget(CAP))
}

fn in_span(x: &[i64], d: &[i64]) -> bool {
    // d has a coordinate equal to 1 in every Euclidean diagram; use that one.
    let e = d.iter().position(|&v| v == 1).expect("δ has an entry 1");
    let t = x[e];
    x.iter().zip(d).all(|(&a, &b)| a == t * b)
}

pub fn unit(n: usize, i: usize) -> DimVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `∂x = ⟨δ, x⟩`; the identity `⟨δ, x⟩ = −⟨x, δ⟩` is checked on the way.
pub fn defect(q: &Quiver, x: &[i64]) -> Result<i64> {
    let ty = classify_graph(&Graph::of_quiver(q))?;
    let delta = ty.delta().ok_or_else(|| Error::WrongType(format!("defect needs a Euclidean quiver, got {}", ty.name())))?;
    let f = FormData::of_quiver(q);
    let d = f.euler_form(delta, x)?;
    assert_eq!(d, -f.euler_form(x, delta)?, "defect antisymmetry");
    Ok(d)
}

/// Root data. Dynkin: all positive roots. Euclidean: every root in the box
/// `−δ ≤ x ≤ δ`; all other roots differ from one of these by a multiple of δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub graph_type: GraphType,
    pub roots: Vec<DimVector>,
}

impl RootSet {
    pub fn delta(&self) -> Option<&DimVector> {
        self.graph_type.delta()
    }

    /// Representative of `x + ℤδ` vanishing at a vertex where δ is 1.
    pub fn representative(&self, x: &[i64]) -> DimVector {
        match self.delta() {
            None => x.to_vec(),
            Some(d) => {
                let e = d.iter().position(|&v| v == 1).unwrap();
                x.iter().zip(d).map(|(&a, &b)| a - x[e] * b).collect()
            }
        }
    }

    /// Membership, with the δ-shift rule in the Euclidean case.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.iter().all(|&v| v == 0) {
            return false;
        }
        let r = self.representative(x);
        r.iter().all(|&v| v == 0) || self.roots.binary_search(&r).is_ok()
    }

    pub fn positive(&self) -> Vec<DimVector> {
        self.roots.iter().filter(|r| r.iter().all(|&v| v >= 0)).cloned().collect()
    }
}

pub fn enumerate_roots(g: &Graph) -> Result<RootSet> {
    let ty = classify_graph(g)?;
    let n = g.vertex_count();
    let s = g.symmetric_matrix();
    let (lo, hi): (Vec<i64>, Vec<i64>) = match &ty {
        GraphType::Dynkin { .. } => (vec![0; n], vec![6; n]),
        GraphType::Euclidean { delta, .. } => (delta.iter().map(|d| -d).collect(), delta.clone()),
        GraphType::Other => return Err(Error::WrongType("roots need a Dynkin or Euclidean graph".into())),
    };
    let bounds = schur_bounds(&s);
    let mut roots = Vec::new();
    let mut x = vec![0i64; n];
    search(&s, &bounds, &lo, &hi, 0, &mut x, &mut roots);
    roots.retain(|r| r.iter().any(|&v| v != 0));
    roots.sort();
    Ok(RootSet { graph_type: ty, roots })
}

/// For each prefix length `k`, an integer matrix `N` and denominator `d` such
/// that the minimum of `q` over reals with the first `k` coordinates fixed to
/// `a` is `aᵀNa / (2d)`. Exact Schur complements of the symmetric form.
fn schur_bounds(s: &[Vec<i64>]) -> Vec<(Vec<Vec<BigInt>>, BigInt)> {
    let n = s.len();
    let f = Field::Rationals;
    let full = Matrix::from_i64(f, s);
    (0..=n)
        .map(|k| {
            let s11 = full.block(0, 0, k, k);
            let m = if k == n || k == 0 {
                // k = 0 is never used for pruning, and the full block is singular for Euclidean graphs.
                s11
            } else {
                let s12 = full.block(0, k, k, n - k);
                let s22 = full.block(k, k, n - k, n - k);
                let inv = s22.inverse().expect("proper principal blocks are definite");
                &s11 - &(&(&s12 * &inv) * &s12.transpose())
            };
            let den = m.entries().iter().fold(BigInt::one(), |a, v: &Scalar| a.lcm(v.rational().denom()));
            let ints = (0..k)
                .map(|i| (0..k).map(|j| m.get(i, j).rational().numer() * (&den / m.get(i, j).rational().denom())).collect())
                .collect();
            (ints, den)
        })
        .collect()
}

fn search(
    s: &[Vec<i64>],
    bounds: &[(Vec<Vec<BigInt>>, BigInt)],
    lo: &[i64],
    hi: &[i64],
    k: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<DimVector>,
) {
    let n = s.len();
    if k > 0 && k < n {
        let (m, d) = &bounds[k];
        let mut v = BigInt::zero();
        for i in 0..k {
            for j in 0..k {
                if x[i] != 0 && x[j] != 0 {
                    v += &m[i][j] * BigInt::from(x[i] * x[j]);
                }
            }
        }
        if v > BigInt::from(2) * d {
            return;
        }
    }
    if k == n {
        if bilinear(s, x, x) <= 2 {
            out.push(x.clone());
        }
        return;
    }
    for val in lo[k]..=hi[k] {
        x[k] = val;
        search(s, bounds, lo, hi, k + 1, x, out);
    }
    x[k] = 0;
}
