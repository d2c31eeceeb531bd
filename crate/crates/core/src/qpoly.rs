//! Dense univariate polynomials over the rationals, stored constant term
//! first, together with exact root finding.
//!
//! Rational roots are found p-adically: pick a prime for which the squarefree
//! part stays squarefree, collect its roots modulo the prime, Newton-lift each
//! one past the Cauchy-type height bound and rationally reconstruct. Every
//! candidate is checked by exact evaluation before it is returned.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigRational], s: &BigRational) -> QPoly {
    let mut out: QPoly = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder. Panics on a zero divisor.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[shift + j] -= &c * bj;
        }
        r[dr] = BigRational::zero();
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic(a: &[BigRational]) -> QPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            scale(&a[..=d], &inv)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[BigRational]) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Squarefree part, monic.
pub fn squarefree_part(a: &[BigRational]) -> QPoly {
    if degree(a).unwrap_or(0) == 0 {
        return make_monic(a);
    }
    let g = gcd(a, &derivative(a));
    let (q, _) = divrem(a, &g);
    make_monic(&q)
}

/// Clears denominators and content; the leading coefficient ends up positive.
pub fn primitive_integer(a: &[BigRational]) -> Vec<BigInt> {
    let mut p = a.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return Vec::new();
    }
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn to_rational_poly(a: &[BigInt]) -> QPoly {
    a.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// word-size modular helpers

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn eval_mod(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

fn deriv_mod(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, i as u64 % p, p))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        // x mod y
        let dy = y.len() - 1;
        let inv = invmod(y[dy], p);
        while x.len() > dy {
            let dx = x.len() - 1;
            let c = mulmod(x[dx], inv, p);
            for j in 0..=dy {
                let t = mulmod(c, y[j], p);
                x[dx - dy + j] = (x[dx - dy + j] + p - t) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x
}

fn roots_mod(a: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_mod(a, x, p) == 0).collect()
}

/// A prime `p` above `start` that keeps `q` squarefree of the same degree, and
/// for which each polynomial in `must_split` has all of its roots in F_p.
fn good_prime(q: &[BigInt], start: u64, must_split: &[Vec<BigInt>]) -> u64 {
    let mut p = start.max(q.len() as u64 + 2);
    loop {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let qm = reduce_mod(q, p);
        if qm.len() != q.len() {
            continue;
        }
        let g = gcd_mod(&qm, &deriv_mod(&qm, p), p);
        if g.len() > 1 {
            continue;
        }
        let ok = must_split.iter().all(|m| {
            let mm = reduce_mod(m, p);
            mm.len() == m.len() && roots_mod(&mm, p).len() == m.len() - 1
        });
        if ok {
            return p;
        }
    }
}

fn eval_int(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    a.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Newton-lifts a simple root of `q` modulo `p` until the modulus exceeds `target`.
fn hensel_lift(q: &[BigInt], root: u64, p: u64, target: &BigInt) -> (BigInt, BigInt) {
    let dq: Vec<BigInt> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut m = BigInt::from(p);
    let mut r = BigInt::from(root);
    while &m <= target {
        m = &m * &m;
        let val = eval_int(q, &r, &m);
        let der = eval_int(&dq, &r, &m);
        let inv = inv_mod_big(&der, &m).expect("root is simple modulo p");
        r = (r - val * inv).mod_floor(&m);
    }
    (r, m)
}

/// Finds `n/d` with `|n| <= bound_n`, `0 < d <= bound_d` and `n = d*r mod m`.
fn reconstruct(r: &BigInt, m: &BigInt, bound_n: &BigInt, bound_d: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound_n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > *bound_d {
        return None;
    }
    let (n, d) = if s1.is_negative() { (-r1, -s1) } else { (r1, s1) };
    if !n.gcd(&d).is_one() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn one_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).sum()
}

/// Distinct rational roots, in increasing order.
pub fn rational_roots(a: &[BigRational]) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let mut p = a.to_vec();
    trim(&mut p);
    if degree(&p).unwrap_or(0) == 0 {
        return roots;
    }
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(BigRational::zero());
        p.drain(..low);
    }
    if degree(&p).unwrap_or(0) > 0 {
        let sq = squarefree_part(&p);
        let q = primitive_integer(&sq);
        if q.len() == 2 {
            roots.push(BigRational::new(-q[0].clone(), q[1].clone()));
        } else {
            roots.extend(padic_roots(&q));
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn padic_roots(q: &[BigInt]) -> Vec<BigRational> {
    let lc = q.last().unwrap().abs();
    let c0 = q[0].abs();
    let target = BigInt::from(2) * &c0 * &lc;
    let p = good_prime(q, 1000, &[]);
    let qm = reduce_mod(q, p);
    let qr = to_rational_poly(q);
    let mut out = Vec::new();
    for r in roots_mod(&qm, p) {
        let (lift, m) = hensel_lift(q, r, p, &target);
        if let Some(c) = reconstruct(&lift, &m, &c0, &lc) {
            if eval(&qr, &c).is_zero() {
                out.push(c);
            }
        }
    }
    out
}

/// Monic irreducible quadratic factors `x^2 + b x + c` of `a` over the
/// rationals whose roots split modulo the primes where every polynomial in
/// `split_hint` splits. Passing the defining polynomial of a quadratic field
/// restricts the search to primes where that field's factors stay visible.
pub fn quadratic_factors(a: &[BigRational], split_hint: &[QPoly]) -> Vec<(BigRational, BigRational)> {
    let mut p = a.to_vec();
    trim(&mut p);
    if degree(&p).unwrap_or(0) < 2 {
        return Vec::new();
    }
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    p.drain(..low);
    let sq = squarefree_part(&p);
    let q = primitive_integer(&sq);
    if q.len() < 3 {
        return Vec::new();
    }
    let hints: Vec<Vec<BigInt>> = split_hint.iter().map(|h| primitive_integer(h)).collect();
    let prime = good_prime(&q, 1000, &hints);
    let lc = q.last().unwrap().abs();
    let bound_n = BigInt::from(4) * one_norm(&q) * &lc;
    let target = BigInt::from(2) * &bound_n * &lc;
    let qm = reduce_mod(&q, prime);
    let lifted: Vec<(BigInt, BigInt)> = roots_mod(&qm, prime)
        .into_iter()
        .map(|r| hensel_lift(&q, r, prime, &target))
        .collect();
    let qr = to_rational_poly(&q);
    let mut out: Vec<(BigRational, BigRational)> = Vec::new();
    for i in 0..lifted.len() {
        for j in (i + 1)..lifted.len() {
            let m = &lifted[i].1;
            let s = (&lifted[i].0 + &lifted[j].0).mod_floor(m);
            let pr = (&lifted[i].0 * &lifted[j].0).mod_floor(m);
            let (Some(sum), Some(prod)) = (
                reconstruct(&s, m, &bound_n, &lc),
                reconstruct(&pr, m, &bound_n, &lc),
            ) else {
                continue;
            };
            let factor = vec![prod.clone(), -sum.clone(), BigRational::one()];
            let (_, rem) = divrem(&qr, &factor);
            if !rem.is_empty() {
                continue;
            }
            let disc = &sum * &sum - BigRational::from_integer(4.into()) * &prod;
            if rational_sqrt(&disc).is_some() {
                continue;
            }
            let entry = (-sum, prod);
            if !out.contains(&entry) {
                out.push(entry);
            }
        }
    }
    out
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub fn sign_of(x: &BigInt) -> Sign {
    x.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QPoly {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn roots_of_product_of_linear_factors() {
        // (2x - 3)(5x + 4)(x)(x - 7)^2
        let p = mul(
            &mul(&q(&[-3, 2]), &q(&[4, 5])),
            &mul(&q(&[0, 1]), &mul(&q(&[-7, 1]), &q(&[-7, 1]))),
        );
        assert_eq!(rational_roots(&p), vec![r(-4, 5), r(0, 1), r(3, 2), r(7, 1)]);
    }

    #[test]
    fn irreducible_quadratic_has_no_rational_roots() {
        assert!(rational_roots(&q(&[1, 1, 1])).is_empty());
        assert!(rational_roots(&q(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn large_root_reconstructs() {
        let p = mul(&q(&[-123456789, 1000003]), &q(&[1, 1, 1]));
        assert_eq!(rational_roots(&p), vec![r(123456789, 1000003)]);
    }

    #[test]
    fn quadratic_factor_matching() {
        // (x^2 + x + 1)(x^2 - x + 1)(x - 2)
        let p = mul(&mul(&q(&[1, 1, 1]), &q(&[1, -1, 1])), &q(&[-2, 1]));
        let f = quadratic_factors(&p, &[q(&[1, 1, 1])]);
        assert!(f.contains(&(r(1, 1), r(1, 1))));
        assert!(f.contains(&(r(-1, 1), r(1, 1))));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[1, 0, 1]);
        let b = q(&[-1, 1]);
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, q(&[1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), q(&[1]));
    }
}
