//! Dense univariate polynomials over ℚ and cyclotomic polynomials.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::numtheory::divisors;

/// Coefficients low degree first, no trailing zeros (zero is `[]`).
pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// The `n`-th cyclotomic polynomial (monic, integer coefficients), memoized.
pub(crate) fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<FxHashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_poly(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Reduces `coeffs` (any length) modulo the monic integer polynomial `m`.
pub(crate) fn reduce_mod(coeffs: &mut Vec<BigRational>, m: &[BigInt]) {
    let dm = m.len() - 1;
    for i in (dm..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = coeffs[i].clone();
        for (j, mj) in m.iter().enumerate().take(dm) {
            if !mj.is_zero() {
                coeffs[i - dm + j] -= &c * BigRational::from_integer(mj.clone());
            }
        }
        coeffs[i] = BigRational::zero();
    }
    coeffs.truncate(dm);
    coeffs.resize(dm, BigRational::zero());
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`; `b` non-zero.
pub(crate) fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().expect("non-empty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn sub_mul(a: &Poly, q: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    let len = (q.len() + b.len()).saturating_sub(1).max(a.len());
    out.resize(len, BigRational::zero());
    for (i, qi) in q.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// if they are not coprime.
pub(crate) fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Poly = s0.into_iter().map(|x| x / &c).collect();
    let (_, r) = divmod(&inv, m);
    inv = r;
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(105).len(), 49);
        assert!(cyclotomic_poly(105).contains(&BigInt::from(-2)));
    }
}
