use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elim::rational_reconstruction;
use super::field::{is_prime, Field, Scalar};
use super::matrix::Matrix;

/// Univariate polynomial, coefficients from degree 0 upward, never with a
/// trailing zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        let f = c.field();
        Poly::new(f, vec![c])
    }

    /// `t - c`.
    pub fn linear(c: &Scalar) -> Poly {
        let f = c.field();
        Poly::new(f, vec![-c, f.one()])
    }

    pub fn monomial(field: Field, deg: usize) -> Poly {
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        Poly { field, coeffs: c }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        Poly::new(self.field, c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().unwrap();
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree() else { return (Poly::zero(self.field), Poly::zero(self.field)) };
        if sd < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * b);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero when both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(o);
        self.mul(o).divrem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_i64(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::scalar(self.field, n, c);
        }
        acc
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: BigInt, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.field).rem(modulus);
        let mut b = self.rem(modulus);
        let two = BigInt::from(2);
        while e > BigInt::zero() {
            if e.is_odd() {
                acc = acc.mul(&b).rem(modulus);
            }
            e /= &two;
            if e > BigInt::zero() {
                b = b.mul(&b).rem(modulus);
            }
        }
        acc
    }

    /// Distinct roots lying in the field, sorted (ℚ by value, GF(p) by residue).
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        match self.field {
            Field::Prime(p) => {
                let mut r: Vec<u64> = roots_mod_p(&self.monic(), p);
                r.sort_unstable();
                r.into_iter().map(|value| Scalar::Modular { value, modulus: p }).collect()
            }
            Field::Rationals => {
                let mut r = rational_roots(self);
                r.sort();
                r.into_iter().map(Scalar::Rational).collect()
            }
        }
    }

    /// Square-free part over a field of characteristic 0 or when `f'` ≠ 0.
    pub fn square_free_part(&self) -> Poly {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        self.divrem(&self.gcd(&d)).0.monic()
    }

    /// True for `(t - c)^k` with `k = deg`.
    pub fn is_power_of_linear(&self, c: &Scalar) -> bool {
        let Some(k) = self.degree() else { return false };
        let mut target = Poly::one(self.field);
        for _ in 0..k {
            target = target.mul(&Poly::linear(c));
        }
        self.monic() == target
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Distinct roots of a monic polynomial over GF(p).
fn roots_mod_p(f: &Poly, p: u64) -> Vec<u64> {
    let field = Field::Prime(p);
    if p <= 1000 {
        return (0..p).filter(|&a| f.eval(&Scalar::Modular { value: a, modulus: p }).is_zero()).collect();
    }
    let mut out = Vec::new();
    let mut f = f.clone();
    if f.coeff(0).is_zero() {
        out.push(0);
        while f.coeff(0).is_zero() {
            f = f.divrem(&Poly::monomial(field, 1)).0;
        }
    }
    if f.degree() == Some(0) {
        return out;
    }
    // g = gcd(t^p - t, f): the product of the distinct linear factors.
    let t = Poly::monomial(field, 1);
    let tp = t.pow_mod(BigInt::from(p), &f);
    let g = tp.sub(&t).gcd(&f);
    split_linear_factors(&g, p, &mut out);
    out
}

fn split_linear_factors(g: &Poly, p: u64, out: &mut Vec<u64>) {
    let field = Field::Prime(p);
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push((-&g.monic().coeff(0)).residue()),
        Some(d) => {
            let e = BigInt::from((p - 1) / 2);
            for a in 0..p {
                let shift = Poly::new(field, vec![field.from_i64(a as i64), field.one()]);
                let w = shift.pow_mod(e.clone(), g).sub(&Poly::one(field)).gcd(g);
                let wd = w.degree().unwrap_or(0);
                if wd > 0 && wd < d {
                    split_linear_factors(&w, p, out);
                    split_linear_factors(&g.divrem(&w).0, p, out);
                    return;
                }
            }
            unreachable!("a square-free product of distinct linear factors always splits")
        }
    }
}

/// Rational roots: roots modulo a good prime are Hensel-lifted until rational
/// reconstruction is forced, then checked exactly.
fn rational_roots(f: &Poly) -> Vec<BigRational> {
    let field = Field::Rationals;
    let mut f = f.square_free_part();
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(BigRational::zero());
        f = f.divrem(&Poly::monomial(field, 1)).0;
    }
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let den = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.rational().denom()));
    let mut g: Vec<BigInt> = f.coeffs.iter().map(|c| c.rational().numer() * (&den / c.rational().denom())).collect();
    let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in g.iter_mut() {
        *c = &*c / &content;
    }
    let lc = g.last().unwrap().abs();
    let c0 = g[0].abs();
    let bound = BigInt::from(2) * &lc * &c0;
    let gq = Poly::new(field, g.iter().map(|c| field.from_bigint(c)).collect());

    let mut p: u64 = 1_000_003;
    loop {
        while !is_prime(p) {
            p += 2;
        }
        let fp = Field::Prime(p);
        let gp = Poly::new(fp, g.iter().map(|c| fp.from_bigint(c)).collect());
        if gp.degree() == gq.degree() && gp.gcd(&gp.derivative()).degree() == Some(0) {
            break;
        }
        p += 2;
    }
    let fp = Field::Prime(p);
    let gp = Poly::new(fp, g.iter().map(|c| fp.from_bigint(c)).collect());
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let eval = |coeffs: &[BigInt], x: &BigInt, m: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(m);
        }
        acc
    };
    for r in roots_mod_p(&gp.monic(), p) {
        let mut m = BigInt::from(p);
        let mut x = BigInt::from(r);
        while m <= bound {
            // Newton step modulo m^2; g'(x) is a unit because g is square-free mod p.
            let m2 = &m * &m;
            let num = eval(&g, &x, &m2);
            let d = eval(&dg, &x, &m2);
            let dinv = d.extended_gcd(&m2).x.mod_floor(&m2);
            x = (&x - num * dinv).mod_floor(&m2);
            m = m2;
        }
        if let Some(q) = rational_reconstruction(&x, &m, &c0, &lc) {
            if gq.eval(&Scalar::Rational(q.clone())).is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// Minimal polynomial by Krylov iteration on each standard basis vector; the
/// answer is the lcm of the per-vector annihilators.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut result = Poly::one(field);
    for j in 0..n {
        let mut e = vec![field.zero(); n];
        e[j] = field.one();
        if result.eval_matrix_on(m, &e).iter().all(Scalar::is_zero) {
            continue;
        }
        // Stored: (reduced vector, pivot, polynomial p with vector = p(m) e).
        let mut stored: Vec<(Vec<Scalar>, usize, Poly)> = Vec::new();
        let mut raw = e;
        let mut k = 0;
        loop {
            let mut v = raw.clone();
            let mut poly = Poly::monomial(field, k);
            for (w, piv, pw) in &stored {
                if v[*piv].is_zero() {
                    continue;
                }
                let c = &v[*piv] * &w[*piv].inv().unwrap();
                for (x, y) in v.iter_mut().zip(w) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
                poly = poly.sub(&pw.scale(&c));
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    result = result.lcm(&poly.monic());
                    break;
                }
                Some(piv) => stored.push((v, piv, poly)),
            }
            raw = m.apply(&raw);
            k += 1;
        }
    }
    result
}

impl Poly {
    /// `p(m) v` without forming `p(m)`.
    pub fn eval_matrix_on(&self, m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            acc = m.apply(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = &*a + &(c * x);
            }
        }
        acc
    }
}

/// Integer coefficients of a rational polynomial, for display and tests.
pub fn to_i64_coeffs(p: &Poly) -> Option<Vec<i64>> {
    p.coeffs.iter().map(|c| c.to_i64()).collect()
}
