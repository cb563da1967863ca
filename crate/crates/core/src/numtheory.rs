//! Elementary exact number theory: valuations, multiplicative orders, Euler's
//! totient, quadratic Hilbert symbols over the rationals and the arithmetic
//! predicates used to recognise division algebras among group algebra
//! components.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation `n = ∏ p^e` with primes ascending. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn factorize_big(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if let Some(small) = n.to_u64() {
        return factorize(small).into_iter().map(|(p, _)| BigInt::from(p)).collect();
    }
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            out.push(p.clone());
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// The `p`-adic valuation of a non-zero integer.
pub fn vp(p: u64, n: impl Into<BigInt>) -> Result<u32> {
    let n = n.into();
    if !is_prime(p) {
        return Err(Error::invalid(format!("vp: {p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::invalid("vp: valuation of zero is undefined"));
    }
    Ok(vp_unchecked(p, &n))
}

fn vp_unchecked(p: u64, n: &BigInt) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Least `k ≥ 1` with `n^k ≡ 1 (mod m)`.
pub fn ord_mod(n: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("ord_mod: modulus must be positive"));
    }
    let r = n.rem_euclid(m as i64) as u64;
    if r.gcd(&m) != 1 && m != 1 {
        return Err(Error::invalid(format!("ord_mod: gcd({n}, {m}) != 1")));
    }
    if m == 1 {
        return Ok(1);
    }
    let mut acc = r;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * r as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("euler_phi: argument must be positive"));
    }
    Ok(factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// A place of ℚ: the real place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Integer in the same square class as `x` (numerator times denominator).
fn square_class_integer(x: &BigRational) -> BigInt {
    x.numer() * x.denom()
}

fn legendre(a: &BigInt, p: u64) -> i8 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The quadratic Hilbert symbol `(a, b)_v` over ℚ.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("hilbert_symbol: arguments must be non-zero"));
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::invalid(format!("hilbert_symbol: {p} is not a place of Q")));
            }
            let a = square_class_integer(a);
            let b = square_class_integer(b);
            let alpha = vp_unchecked(p, &a);
            let beta = vp_unchecked(p, &b);
            let pb = BigInt::from(p);
            let u = &a / pb.pow(alpha);
            let v = &b / pb.pow(beta);
            if p == 2 {
                let u8_ = u.mod_floor(&BigInt::from(8)).to_u64().unwrap();
                let v8 = v.mod_floor(&BigInt::from(8)).to_u64().unwrap();
                let eps = |x: u64| ((x - 1) / 2) % 2;
                let omega = |x: u64| ((x * x - 1) / 8) % 2;
                let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut s: i8 = if (alpha as u64 * beta as u64 * ((p - 1) / 2)) % 2 == 0 {
                    1
                } else {
                    -1
                };
                if beta % 2 == 1 {
                    s *= legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&v, p);
                }
                Ok(s)
            }
        }
    }
}

/// Places at which `(a, b / ℚ)` ramifies. Non-empty iff the algebra is a
/// division algebra; always of even size.
pub fn quaternion_ramification_over_q(a: &BigRational, b: &BigRational) -> Result<BTreeSet<Place>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("quaternion ramification: arguments must be non-zero"));
    }
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        for p in factorize_big(n) {
            primes.insert(p.to_u64().ok_or_else(|| Error::invalid("prime factor too large"))?);
        }
    }
    let mut out = BTreeSet::new();
    for place in primes.into_iter().map(Place::Prime).chain([Place::Infinity]) {
        if hilbert_symbol(a, b, place)? == -1 {
            out.insert(place);
        }
    }
    Ok(out)
}

/// True iff `d` is odd and the order of 2 modulo `d` is odd. In that case −1 is
/// not a sum of two squares in ℚ(ζ_d), so ℍ(ℚ(ζ_d)) is a division algebra.
pub fn moser_criterion(d: u64) -> bool {
    d % 2 == 1 && ord_mod(2, d).map(|o| o % 2 == 1).unwrap_or(false)
}

/// One factor `C_{q^n}` of the complement in a metacyclic Z-group
/// `C_{p^a} ⋊ (∏ C_{q_i^{n_i}})`; `q^k` is the order of the kernel of its action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZGroupFactor {
    pub q: u64,
    pub n: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZGroupCaseCParams {
    pub p: u64,
    pub a: u32,
    pub factors: Vec<ZGroupFactor>,
    /// `|G| / |G_i|`.
    pub cofactor: u64,
}

impl ZGroupCaseCParams {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.a == 0 || self.cofactor == 0 {
            return Err(Error::invalid("Z-group parameters: need prime p, a ≥ 1, cofactor ≥ 1"));
        }
        let mut seen = BTreeSet::new();
        for f in &self.factors {
            if !is_prime(f.q) || f.q == self.p || !seen.insert(f.q) {
                return Err(Error::invalid(
                    "Z-group parameters: q_i must be distinct primes different from p",
                ));
            }
            if f.n == 0 || f.k > f.n {
                return Err(Error::invalid("Z-group parameters: need 0 ≤ k_i ≤ n_i and n_i ≥ 1"));
            }
        }
        if self.cofactor.gcd(&self.p) != 1 {
            return Err(Error::invalid("Z-group parameters: cofactor must be coprime to p"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZGroupVerdict {
    pub holds: bool,
    /// Indices (1–4) of violated conditions.
    pub violated: BTreeSet<u8>,
    pub notes: Vec<String>,
}

/// Evaluates the four arithmetic conditions under which a metacyclic Z-group
/// `C_{p^a} ⋊ (∏ C_{q_i^{n_i}})` embeds in a division ring.
///
/// Condition (2) is read as `v_{q_j}(o_{cofactor}(p)) < o_{q_j^{k_j}}(p)`.
pub fn zgroup_case_c_conditions(params: &ZGroupCaseCParams) -> Result<ZGroupVerdict> {
    params.validate()?;
    let p = params.p;
    let mut violated = BTreeSet::new();
    let notes = vec!["condition (2) evaluated as v_{q_j}(o_{cofactor}(p)) < o_{q_j^{k_j}}(p)".to_string()];
    let o_cof = ord_mod(p as i64, params.cofactor)?;
    for f in &params.factors {
        if f.k >= f.n {
            violated.insert(1);
        }
        let qk = f.q.pow(f.k);
        let lhs = vp(f.q, o_cof)?;
        let rhs = ord_mod(p as i64, qk)?;
        if u64::from(lhs) >= rhs {
            violated.insert(2);
        }
        if (f.q % 2 == 1 || p % 4 == 1) && p % f.q.pow(f.k + 1) == 1 {
            violated.insert(3);
        }
        if f.q == 2 && p % 4 == 3 && f.k != 1 {
            let m = 2u64.pow(f.k);
            if (p + 1) % m == 0 {
                violated.insert(4);
            }
        }
    }
    Ok(ZGroupVerdict {
        holds: violated.is_empty(),
        violated,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(3, 1).unwrap(), 0);
        assert_eq!(vp(2, 12).unwrap(), 2);
        assert_eq!(vp(5, 250).unwrap(), 3);
        assert_eq!(vp(5, -250).unwrap(), 3);
        assert!(vp(4, 12).is_err());
        assert!(vp(2, 0).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(ord_mod(1, 12).unwrap(), 1);
        assert_eq!(ord_mod(2, 7).unwrap(), 3);
        assert_eq!(ord_mod(2, 5).unwrap(), 4);
        assert_eq!(ord_mod(-1, 5).unwrap(), 2);
        assert_eq!(ord_mod(5, 1).unwrap(), 1);
        assert!(ord_mod(2, 6).is_err());
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert!(euler_phi(0).is_err());
        // Direct coprime count.
        for n in 1..200u64 {
            let count = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), count);
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
        for b in [-7, -3, 2, 5, 10] {
            for p in [2, 3, 5, 7] {
                assert_eq!(hilbert_symbol(&q(1), &q(b), Place::Prime(p)).unwrap(), 1);
            }
        }
        assert!(hilbert_symbol(&q(1), &q(2), Place::Prime(9)).is_err());
        assert!(hilbert_symbol(&q(0), &q(2), Place::Prime(3)).is_err());
    }

    #[test]
    fn ramification_examples() {
        assert!(quaternion_ramification_over_q(&q(1), &q(5)).unwrap().is_empty());
        assert_eq!(
            quaternion_ramification_over_q(&q(-1), &q(-1)).unwrap(),
            BTreeSet::from([Place::Prime(2), Place::Infinity])
        );
        assert_eq!(
            quaternion_ramification_over_q(&q(-1), &q(-3)).unwrap(),
            BTreeSet::from([Place::Prime(3), Place::Infinity])
        );
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(
            quaternion_ramification_over_q(&q(-1), &(-third)).unwrap(),
            BTreeSet::from([Place::Prime(3), Place::Infinity])
        );
    }

    #[test]
    fn moser() {
        assert!(moser_criterion(1));
        assert!(moser_criterion(7));
        assert!(!moser_criterion(5));
        assert!(!moser_criterion(14));
        assert!(moser_criterion(23));
    }

    fn single(p: u64, q: u64, k: u32, n: u32) -> ZGroupCaseCParams {
        ZGroupCaseCParams {
            p,
            a: 1,
            factors: vec![ZGroupFactor { q, n, k }],
            cofactor: 1,
        }
    }

    #[test]
    fn zgroup_conditions() {
        let v = zgroup_case_c_conditions(&single(3, 2, 2, 3)).unwrap();
        assert!(!v.holds);
        assert_eq!(v.violated, BTreeSet::from([4]));

        let v = zgroup_case_c_conditions(&single(3, 2, 3, 4)).unwrap();
        assert!(v.holds, "{v:?}");

        let v = zgroup_case_c_conditions(&single(3, 2, 3, 3)).unwrap();
        assert_eq!(v.violated, BTreeSet::from([1]));

        assert!(zgroup_case_c_conditions(&single(3, 3, 1, 2)).is_err());
        assert!(zgroup_case_c_conditions(&single(3, 2, 4, 3)).is_err());
    }
}
