//! Kernel computation. Every engine returns the same canonical object: the
//! kernel basis that is the identity on the free (non-pivot) columns of the
//! reduced row echelon form with leftmost pivots. That basis depends only on
//! the row space, so engines are interchangeable and cross-checkable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{addmod, invmod, is_prime, mulmod, submod, Field, Scalar};
use super::matrix::Matrix;

/// Canonical nullspace: `basis` is `ncols x free.len()` and its restriction to
/// the rows in `free` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub ncols: usize,
    pub free: Vec<usize>,
    pub basis: Matrix,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut is_free = vec![false; self.ncols];
        for &f in &self.free {
            is_free[f] = true;
        }
        (0..self.ncols).filter(|&c| !is_free[c]).collect()
    }

    /// Coordinates of a kernel vector in `basis`: its entries at the free columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

/// Sparse linear system `A x = 0` assembled row by row.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseSystem {
    pub fn new(field: Field, ncols: usize) -> SparseSystem {
        SparseSystem { field, ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given by `(column, coefficient)` pairs; repeated columns accumulate.
    pub fn push(&mut self, mut entries: Vec<(usize, Scalar)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn kernel(&self) -> Kernel {
        match self.field {
            Field::Prime(p) => {
                let rows: Vec<Vec<(usize, u64)>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|(c, v)| (*c, v.residue())).collect())
                    .collect();
                kernel_mod_p(self.ncols, &rows, p)
            }
            Field::Rationals => {
                let rows: Vec<Vec<(usize, BigRational)>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|(c, v)| (*c, v.rational().clone())).collect())
                    .collect();
                let dense_size = self.rows.len() * self.ncols;
                if dense_size <= DENSE_RATIONAL_LIMIT {
                    kernel_rational_dense_rows(self.ncols, &rows)
                } else {
                    kernel_rational_multimodular(self.ncols, &rows)
                }
            }
        }
    }
}

/// Below this many dense entries the direct rational elimination wins.
const DENSE_RATIONAL_LIMIT: usize = 144;

pub fn kernel(m: &Matrix) -> Kernel {
    let mut sys = SparseSystem::new(m.field(), m.cols());
    for i in 0..m.rows() {
        sys.push(
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
        );
    }
    sys.kernel()
}

/// Assembles the canonical basis from reduced rows: row `r` has pivot
/// `pivots[r]` and its remaining entries live in free columns.
fn assemble<T>(
    field: Field,
    ncols: usize,
    pivots: &[usize],
    rows: &[Vec<(usize, T)>],
    neg: impl Fn(&T) -> Scalar,
) -> Kernel {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut pos = vec![usize::MAX; ncols];
    for (i, &f) in free.iter().enumerate() {
        pos[f] = i;
    }
    let mut basis = Matrix::zeros(field, ncols, free.len());
    for (i, &f) in free.iter().enumerate() {
        basis.set(f, i, field.one());
    }
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            if *c != pivots[r] {
                basis.set(pivots[r], pos[*c], neg(v));
            }
        }
    }
    Kernel { ncols, free, basis }
}

/// Reduced row echelon form over GF(p), built incrementally so that the stored
/// rows stay fully reduced against every pivot found so far. Returns pivot
/// columns (one per row) and the rows, pivot entry normalized to 1.
pub(crate) fn rref_mod_p(ncols: usize, input: &[Vec<(usize, u64)>], p: u64) -> (Vec<usize>, Vec<Vec<(usize, u64)>>) {
    let mut basis: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = vec![usize::MAX; ncols];
    // occ[c]: basis rows that may hold a nonzero entry in non-pivot column c.
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut dense = vec![0u64; ncols];
    let mut mark = vec![false; ncols];
    let mut touched: Vec<usize> = Vec::new();

    for row in input {
        touched.clear();
        for &(c, v) in row {
            let v = v % p;
            if !mark[c] {
                mark[c] = true;
                touched.push(c);
            }
            dense[c] = addmod(dense[c], v, p);
        }
        // Reduced basis rows are zero at foreign pivots, so only pivots already
        // present in the input need clearing.
        for &(c, _) in row {
            let r = pivot_row[c];
            if r == usize::MAX {
                continue;
            }
            let coef = dense[c];
            if coef == 0 {
                continue;
            }
            for &(c2, v2) in &basis[r] {
                if !mark[c2] {
                    mark[c2] = true;
                    touched.push(c2);
                }
                dense[c2] = submod(dense[c2], mulmod(coef, v2, p), p);
            }
        }
        touched.sort_unstable();
        let mut new_row: Vec<(usize, u64)> = Vec::new();
        for &c in &touched {
            if dense[c] != 0 {
                new_row.push((c, dense[c]));
            }
            dense[c] = 0;
            mark[c] = false;
        }
        if new_row.is_empty() {
            continue;
        }
        let lead = new_row[0].0;
        let inv = invmod(new_row[0].1, p);
        for e in new_row.iter_mut() {
            e.1 = mulmod(e.1, inv, p);
        }
        let idx = basis.len();
        let holders = std::mem::take(&mut occ[lead]);
        let mut seen_holder = std::collections::HashSet::new();
        for h in holders {
            let h = h as usize;
            if !seen_holder.insert(h) {
                continue;
            }
            let old = &basis[h];
            let coef = match old.binary_search_by_key(&lead, |e| e.0) {
                Ok(k) => old[k].1,
                Err(_) => continue,
            };
            let (merged, fresh) = axpy_sparse(old, &new_row, coef, p);
            for c in fresh {
                occ[c].push(h as u32);
            }
            basis[h] = merged;
        }
        for &(c, _) in &new_row[1..] {
            occ[c].push(idx as u32);
        }
        pivot_row[lead] = idx;
        pivot_cols.push(lead);
        basis.push(new_row);
    }
    // Sort rows by pivot so callers see the classical RREF order.
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&r| pivot_cols[r]);
    let pivots = order.iter().map(|&r| pivot_cols[r]).collect();
    let mut rows: Vec<Option<Vec<(usize, u64)>>> = basis.into_iter().map(Some).collect();
    let rows = order.iter().map(|&r| rows[r].take().unwrap()).collect();
    (pivots, rows)
}

/// `a - coef * b` for sorted sparse rows; also reports columns new to `a`.
fn axpy_sparse(a: &[(usize, u64)], b: &[(usize, u64)], coef: u64, p: u64) -> (Vec<(usize, u64)>, Vec<usize>) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut fresh = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = submod(0, mulmod(coef, b[j].1, p), p);
            if v != 0 {
                out.push((b[j].0, v));
                fresh.push(b[j].0);
            }
            j += 1;
        } else {
            let v = submod(a[i].1, mulmod(coef, b[j].1, p), p);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    (out, fresh)
}

pub(crate) fn kernel_mod_p(ncols: usize, rows: &[Vec<(usize, u64)>], p: u64) -> Kernel {
    let (pivots, red) = rref_mod_p(ncols, rows, p);
    assemble(Field::Prime(p), ncols, &pivots, &red, |v| Scalar::Modular { value: submod(0, *v, p), modulus: p })
}

/// Direct Gauss-Jordan over ℚ: leftmost pivot column, topmost nonzero row.
pub fn kernel_rational_dense(m: &Matrix) -> Kernel {
    let rows: Vec<Vec<(usize, BigRational)>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.rational().clone()))
                .collect()
        })
        .collect();
    kernel_rational_dense_rows(m.cols(), &rows)
}

fn kernel_rational_dense_rows(ncols: usize, sparse: &[Vec<(usize, BigRational)>]) -> Kernel {
    let mut a: Vec<Vec<BigRational>> = sparse
        .iter()
        .map(|r| {
            let mut d = vec![BigRational::zero(); ncols];
            for (c, v) in r {
                d[*c] = v.clone();
            }
            d
        })
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let red: Vec<Vec<(usize, BigRational)>> = a[..pivots.len()]
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
        .collect();
    assemble(Field::Rationals, ncols, &pivots, &red, |v| Scalar::Rational(-v))
}

/// Primes just below 2^62, descending.
fn big_primes() -> impl Iterator<Item = u64> {
    let mut n: u64 = (1 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// Finds `a/b ≡ u (mod m)` with `|a| <= n_bound`, `0 < b <= d_bound`.
pub(crate) fn rational_reconstruction(u: &BigInt, m: &BigInt, n_bound: &BigInt, d_bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > n_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || &s1.abs() > d_bound {
        return None;
    }
    if !s1.gcd(m).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Multimodular kernel over ℚ. Kernels modulo 62-bit primes are combined by CRT
/// and rational reconstruction, then certified exactly: `rank_p <= rank_Q`, so
/// `ncols - rank_p` verified independent kernel vectors span the rational kernel.
pub fn kernel_rational_multimodular(ncols: usize, rows: &[Vec<(usize, BigRational)>]) -> Kernel {
    let int_rows: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            r.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect()
        })
        .filter(|r: &Vec<(usize, BigInt)>| !r.is_empty())
        .collect();

    struct Acc {
        pivots: Vec<usize>,
        free: Vec<usize>,
        modulus: BigInt,
        residues: Vec<BigInt>,
    }
    let mut acc: Option<Acc> = None;

    for p in big_primes() {
        let pb = BigInt::from(p);
        let red_rows: Vec<Vec<(usize, u64)>> = int_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| (*c, v.mod_floor(&pb).to_u64().unwrap()))
                    .filter(|e| e.1 != 0)
                    .collect()
            })
            .collect();
        let (pivots, red) = rref_mod_p(ncols, &red_rows, p);
        if pivots.len() == ncols {
            return Kernel { ncols, free: Vec::new(), basis: Matrix::zeros(Field::Rationals, ncols, 0) };
        }
        let better = match &acc {
            None => true,
            Some(a) => pivots.len() > a.pivots.len() || (pivots.len() == a.pivots.len() && pivots < a.pivots),
        };
        let same = acc.as_ref().is_some_and(|a| a.pivots == pivots);
        if !better && !same {
            continue;
        }
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
        let mut pos = vec![usize::MAX; ncols];
        for (i, &f) in free.iter().enumerate() {
            pos[f] = i;
        }
        let k = free.len();
        let mut vals = vec![0u64; pivots.len() * k];
        for (r, row) in red.iter().enumerate() {
            for &(c, v) in row {
                if c != pivots[r] {
                    vals[r * k + pos[c]] = v;
                }
            }
        }
        if better && !same {
            acc = Some(Acc { pivots, free, modulus: pb.clone(), residues: vals.into_iter().map(BigInt::from).collect() });
        } else {
            let a = acc.as_mut().unwrap();
            let m_mod_p = a.modulus.mod_floor(&pb).to_u64().unwrap();
            let m_inv = invmod(m_mod_p, p);
            for (res, v) in a.residues.iter_mut().zip(vals) {
                let cur = res.mod_floor(&pb).to_u64().unwrap();
                let t = mulmod(submod(v, cur, p), m_inv, p);
                *res += &a.modulus * BigInt::from(t);
            }
            a.modulus *= &pb;
        }
        let a = acc.as_ref().unwrap();
        let bound = (&a.modulus / BigInt::from(2)).sqrt();
        let recon: Option<Vec<BigRational>> = a
            .residues
            .iter()
            .map(|u| rational_reconstruction(u, &a.modulus, &bound, &bound))
            .collect();
        let Some(recon) = recon else { continue };
        if verify_kernel(ncols, &int_rows, &a.pivots, &a.free, &recon) {
            let k = a.free.len();
            let red: Vec<Vec<(usize, BigRational)>> = (0..a.pivots.len())
                .map(|r| {
                    let mut row = vec![(a.pivots[r], BigRational::one())];
                    row.extend((0..k).filter(|&j| !recon[r * k + j].is_zero()).map(|j| (a.free[j], recon[r * k + j].clone())));
                    row
                })
                .collect();
            return assemble(Field::Rationals, ncols, &a.pivots, &red, |v| Scalar::Rational(-v));
        }
    }
    unreachable!("prime supply is unbounded")
}

/// Exact check that the candidate columns annihilate every integer row.
fn verify_kernel(ncols: usize, int_rows: &[Vec<(usize, BigInt)>], pivots: &[usize], free: &[usize], vals: &[BigRational]) -> bool {
    let k = free.len();
    for j in 0..k {
        let den = (0..pivots.len()).fold(BigInt::one(), |acc, r| acc.lcm(vals[r * k + j].denom()));
        let mut v = vec![BigInt::zero(); ncols];
        v[free[j]] = den.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            let q = &vals[r * k + j];
            if !q.is_zero() {
                v[pc] = -(q.numer() * (&den / q.denom()));
            }
        }
        for row in int_rows {
            let mut s = BigInt::zero();
            for (c, a) in row {
                if !v[*c].is_zero() {
                    s += a * &v[*c];
                }
            }
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}
