//! Factorization into monic irreducibles: Cantor-Zassenhaus over GF(p). Over ℚ,
//! rational roots first, then a factorization modulo one prime beyond the
//! Mignotte bound followed by recombination of the modular factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::field::{is_prime, Field, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::random;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. A nonzero constant has no factors.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (piece, m) in square_free_decomposition(&f.monic()) {
        let parts = match f.field() {
            Field::Prime(p) => factor_square_free_mod_p(&piece, p),
            Field::Rationals => factor_square_free_rational(&piece)?,
        };
        out.extend(parts.into_iter().map(|g| (g, m)));
    }
    out.sort_by_key(|(g, _)| sort_key(g));
    Ok(out)
}

/// True for a polynomial of positive degree with a single irreducible factor of multiplicity one.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fs = factor(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

fn sort_key(g: &Poly) -> (usize, Vec<String>) {
    (g.degree().unwrap_or(0), g.coeffs().iter().map(|c| format!("{c:>24}")).collect())
}

/// `f = Π gᵢ^{mᵢ}` with square-free, pairwise coprime `gᵢ` (monic input).
fn square_free_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let d = f.derivative();
    if d.is_zero() {
        // Only in characteristic p: f(t) = g(t^p) = g(t)^p.
        let p = field.characteristic() as usize;
        let root = Poly::new(field, f.coeffs().iter().step_by(p).cloned().collect());
        return square_free_decomposition(&root).into_iter().map(|(g, m)| (g, m * p)).collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        // The remaining part is a p-th power.
        let p = field.characteristic() as usize;
        debug_assert!(p > 0);
        let root = Poly::new(field, c.monic().coeffs().iter().step_by(p).cloned().collect());
        out.extend(square_free_decomposition(&root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

fn factor_square_free_mod_p(f: &Poly, p: u64) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rng = random::rng(0xfac7 ^ p);
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out
}

/// Pairs `(g_d, d)` where `g_d` is the product of the irreducible factors of degree `d`.
fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let field = Field::Prime(p);
    let t = Poly::monomial(field, 1);
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = t.clone();
    let mut d = 1;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(BigInt::from(p), &f);
        let g = h.sub(&t).gcd(&f);
        if g.degree().unwrap_or(0) > 0 {
            f = f.divrem(&g).0;
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(k) = f.degree().filter(|&k| k > 0) {
        out.push((f, k));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, p: u64, rng: &mut random::TestRng, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(g.monic());
        return;
    }
    let field = Field::Prime(p);
    loop {
        let a = Poly::new(field, (0..n).map(|_| Scalar::Modular { value: rng.gen_range(0..p), modulus: p }).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace to GF(2): a + a² + ... + a^{2^{d-1}}.
            let mut acc = a.clone();
            let mut sq = a.clone();
            for _ in 1..d {
                sq = sq.mul(&sq).rem(g);
                acc = acc.add(&sq);
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            a.pow_mod(e, g).sub(&Poly::one(field))
        };
        let w = b.gcd(g);
        let k = w.degree().unwrap_or(0);
        if k > 0 && k < n {
            equal_degree(&w, d, p, rng, out);
            equal_degree(&g.divrem(&w).0, d, p, rng, out);
            return;
        }
    }
}

/// Primitive integer coefficients with positive leading coefficient.
fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.rational().denom()));
    let mut g: Vec<BigInt> = f.coeffs().iter().map(|c| c.rational().numer() * (&den / c.rational().denom())).collect();
    let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if g.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    for c in g.iter_mut() {
        *c = &*c / &content * &sign;
    }
    g
}

fn to_poly(field: Field, coeffs: &[BigInt]) -> Poly {
    Poly::new(field, coeffs.iter().map(|c| field.from_bigint(c)).collect())
}

const LARGEST_PRIME_START: u64 = (1 << 61) - 1;

fn factor_square_free_rational(f: &Poly) -> Result<Vec<Poly>> {
    // Rational roots come exactly from the root test; what is left has no linear
    // factor, so below degree 4 it is irreducible.
    let mut linear = Vec::new();
    let mut rest = f.monic();
    for r in f.roots() {
        let l = Poly::linear(&r);
        rest = rest.divrem(&l).0;
        linear.push(l);
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        1..=3 => linear.push(rest),
        _ => linear.extend(zassenhaus(&rest)?),
    }
    Ok(linear)
}

/// Square-free, degree at least 4, no rational roots.
fn zassenhaus(f: &Poly) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    let q = Field::Rationals;
    let g = primitive_integer(f);
    let lc = g.last().unwrap().clone();
    // Any factor h of g has |h_j| ≤ 2^n ‖g‖₁; the recombined lc·h needs twice that.
    let norm: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let mut p = LARGEST_PRIME_START;
    let prime = loop {
        if p < (1 << 60) {
            return Err(Error::Incomplete("no suitable prime for factoring over ℚ".into()));
        }
        if is_prime(p) {
            let gp = to_poly(Field::Prime(p), &g);
            if gp.degree() == Some(n) && gp.gcd(&gp.derivative()).degree() == Some(0) {
                break p;
            }
        }
        p -= 2;
    };
    if bound >= BigInt::from(prime) {
        return Err(Error::Incomplete(format!("coefficients of a degree-{n} polynomial exceed the factoring bound")));
    }
    let fp = Field::Prime(prime);
    let modular = factor_square_free_mod_p(&to_poly(fp, &g), prime);
    let mut remaining: Vec<Poly> = modular;
    let mut current = to_poly(q, &g);
    let mut out = Vec::new();
    let mut size = 1;
    let half = BigInt::from(prime / 2);
    let lift = |s: &Scalar| -> BigInt {
        let v = BigInt::from(s.residue());
        if v > half {
            v - BigInt::from(prime)
        } else {
            v
        }
    };
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in combinations(remaining.len(), size) {
            let cur_int = primitive_integer(&current);
            let lc_cur = fp.from_bigint(cur_int.last().unwrap());
            let prod = subset.iter().fold(Poly::constant(lc_cur), |acc, &i| acc.mul(&remaining[i]));
            let cand: Vec<BigInt> = prod.coeffs().iter().map(lift).collect();
            let cand = to_poly(q, &cand);
            if cand.degree().unwrap_or(0) == 0 {
                continue;
            }
            let cand = to_poly(q, &primitive_integer(&cand));
            let (quot, rem) = current.divrem(&cand);
            if rem.is_zero() {
                found = Some((subset, cand, quot));
                break;
            }
        }
        match found {
            Some((subset, cand, quot)) => {
                out.push(cand.monic());
                current = quot;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, u)| u).collect();
            }
            None => size += 1,
        }
    }
    if current.degree().unwrap_or(0) > 0 {
        out.push(current.monic());
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64(Field::Rationals, c)
    }

    fn gfp(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64(Field::Prime(p), c)
    }

    fn product(fs: &[(Poly, usize)], field: Field) -> Poly {
        fs.iter().fold(Poly::one(field), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    /// Irreducibility by trial division with every monic polynomial of degree ≤ deg/2.
    fn brute_irreducible(f: &Poly, p: u64) -> bool {
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut c: Vec<i64> = (0..d).map(|j| ((code / p.pow(j as u32)) % p) as i64).collect();
                c.push(1);
                if f.rem(&gfp(p, &c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn low_degree_cofactors_beyond_the_modular_bound() {
        let big = |s: &[&str]| Poly::new(Field::Rationals, s.iter().map(|c| Field::Rationals.parse_scalar(c).unwrap()).collect());
        // t² - 3·10^17: no rational root, coefficients far past a 61-bit prime.
        let f = big(&["-300000000000000000", "0", "1"]);
        assert_eq!(factor(&f).unwrap(), vec![(f.clone(), 1)]);
        // (t - 10^17)(t² - 3·10^17) loses its root, then the quadratic is irreducible.
        let g = big(&["-100000000000000000", "1"]).mul(&f);
        let fs = factor(&g).unwrap();
        assert_eq!(fs, vec![(big(&["-100000000000000000", "1"]), 1), (f, 1)]);
    }

    #[test]
    fn rational_examples() {
        // (t² - 2)(t - 1)²(t² + 1)
        let f = q(&[-2, 0, 1]).mul(&q(&[-1, 1])).mul(&q(&[-1, 1])).mul(&q(&[1, 0, 1]));
        let fs = factor(&f).unwrap();
        assert_eq!(fs, vec![(q(&[-1, 1]), 2), (q(&[-2, 0, 1]), 1), (q(&[1, 0, 1]), 1)]);
        // t⁴ + 1 splits modulo every prime but is irreducible over ℚ.
        assert!(is_irreducible(&q(&[1, 0, 0, 0, 1])).unwrap());
        // (t² - 2)(t² - 3) has no rational root yet is reducible.
        let g = q(&[-2, 0, 1]).mul(&q(&[-3, 0, 1]));
        assert!(g.roots().is_empty());
        assert_eq!(factor(&g).unwrap().len(), 2);
        // Non-monic rational input: (2t - 3)(3t² + 1)/5.
        let h = q(&[-3, 2]).mul(&q(&[1, 0, 3])).scale(&Field::Rationals.parse_scalar("1/5").unwrap());
        let fs = factor(&h).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs, Field::Rationals), h.monic());
        assert!(factor(&q(&[7])).unwrap().is_empty());
        assert!(factor(&Poly::zero(Field::Rationals)).is_err());
    }

    #[test]
    fn modular_examples() {
        assert!(is_irreducible(&gfp(2, &[1, 1, 0, 0, 1])).unwrap());
        assert_eq!(factor(&gfp(2, &[0, 1, 1])).unwrap(), vec![(gfp(2, &[0, 1]), 1), (gfp(2, &[1, 1]), 1)]);
        // t (t² + 1)² over GF(3).
        let f = gfp(3, &[0, 1]).mul(&gfp(3, &[1, 0, 1])).mul(&gfp(3, &[1, 0, 1]));
        assert_eq!(factor(&f).unwrap(), vec![(gfp(3, &[0, 1]), 1), (gfp(3, &[1, 0, 1]), 2)]);
        // (t + 1)^4 = t^4 + 1 over GF(2): a pure p-th power.
        assert_eq!(factor(&gfp(2, &[1, 0, 0, 0, 1])).unwrap(), vec![(gfp(2, &[1, 1]), 4)]);
    }

    proptest! {
        #[test]
        fn modular_factors_multiply_back_and_are_irreducible(c in proptest::collection::vec(0i64..7, 2..8), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let f = gfp(p, &c);
            prop_assume!(f.degree().unwrap_or(0) > 0);
            let fs = factor(&f).unwrap();
            prop_assert_eq!(product(&fs, Field::Prime(p)), f.monic());
            for (g, _) in &fs {
                prop_assert!(brute_irreducible(g, p));
            }
        }

        #[test]
        fn rational_factors_multiply_back(a in proptest::collection::vec(-4i64..=4, 2..4), b in proptest::collection::vec(-4i64..=4, 2..4), c in proptest::collection::vec(-4i64..=4, 1..3)) {
            let f = q(&a).mul(&q(&b)).mul(&q(&c));
            prop_assume!(f.degree().unwrap_or(0) > 0);
            let fs = factor(&f).unwrap();
            prop_assert_eq!(product(&fs, Field::Rationals), f.monic());
            for (g, _) in &fs {
                // Factors of degree > 1 carry no rational root.
                if g.degree().unwrap() > 1 {
                    prop_assert!(g.roots().is_empty());
                }
            }
            // The number of factors is at least the count forced by the construction.
            let forced = [&a, &b, &c].iter().filter(|v| q(v).degree().unwrap_or(0) > 0).count();
            let total: usize = fs.iter().map(|(_, m)| m).sum();
            prop_assert!(total >= forced);
        }
    }
}
