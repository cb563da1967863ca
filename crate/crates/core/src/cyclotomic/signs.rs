//! Certified signs of real cyclotomic numbers by rational interval
//! evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::field::AbelianField;
use super::number::CycNumber;
use crate::error::{Error, Result};

const START_BITS: u64 = 48;
const MAX_BITS: u64 = 1 << 14;

#[derive(Debug, Clone)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    fn add(&self, o: &Self) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn round_down(q: &BigRational, bits: u64) -> BigRational {
    let s = pow2(bits);
    BigRational::new((q.numer() * &s).div_floor(q.denom()), s)
}

fn round_up(q: &BigRational, bits: u64) -> BigRational {
    let s = pow2(bits);
    BigRational::new((q.numer() * &s).div_ceil(q.denom()), s)
}

/// Bounds on `atan(1/x)` from the alternating Taylor series.
fn atan_inv(x: i64, bits: u64) -> (BigRational, BigRational) {
    let x2 = BigInt::from(x * x);
    let mut pow = BigInt::from(x);
    let mut sum = BigRational::zero();
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &pow * (2 * k + 1));
        let next = BigRational::new(BigInt::one(), &pow * &x2 * (2 * k + 3));
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if next < eps {
            // The partial sums bracket the limit.
            return if k % 2 == 0 {
                (&sum - &next, sum)
            } else {
                (sum.clone(), &sum + &next)
            };
        }
        pow *= &x2;
        k += 1;
    }
}

fn pi_bounds(bits: u64) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = atan_inv(5, bits);
    let (b_lo, b_hi) = atan_inv(239, bits);
    let c16 = BigRational::from_integer(16.into());
    let c4 = BigRational::from_integer(4.into());
    let lo = &a_lo * &c16 - &b_hi * &c4;
    let hi = &a_hi * &c16 - &b_lo * &c4;
    (round_down(&lo, bits + 4), round_up(&hi, bits + 4))
}

/// Bounds on `cos θ` for rational `0 ≤ θ ≤ 4`.
fn cos_series(theta: &BigRational, bits: u64) -> (BigRational, BigRational) {
    let t2 = theta * theta;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut m: i64 = 0;
    loop {
        if m % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let next = &term * &t2 / BigRational::from_integer(((2 * m + 1) * (2 * m + 2)).into());
        // Terms decrease from m = 1 on since θ² < 12.
        if m >= 1 && next < eps {
            let lo = round_down(&(&sum - &next), bits + 2);
            let hi = round_up(&(&sum + &next), bits + 2);
            return (lo, hi);
        }
        term = next;
        m += 1;
    }
}

/// Interval containing `cos(2πk/n)`.
fn cos_2pi(k: u64, n: u64, pi: &(BigRational, BigRational), bits: u64) -> Interval {
    let mut k = k % n;
    if 2 * k > n {
        k = n - k;
    }
    let exact = |num: i64, den: i64| Interval::point(BigRational::new(num.into(), den.into()));
    if k == 0 {
        return exact(1, 1);
    }
    if 2 * k == n {
        return exact(-1, 1);
    }
    if 4 * k == n {
        return exact(0, 1);
    }
    if 6 * k == n {
        return exact(1, 2);
    }
    if 3 * k == n {
        return exact(-1, 2);
    }
    let f = BigRational::new(BigInt::from(2 * k), BigInt::from(n));
    let th_lo = round_down(&(&pi.0 * &f), bits + 6);
    let th_hi = round_up(&(&pi.1 * &f), bits + 6);
    // cos decreases on [0, π].
    let lo = if th_hi >= pi.0 {
        -BigRational::one()
    } else {
        cos_series(&th_hi, bits).0
    };
    let hi = cos_series(&th_lo, bits).1;
    Interval { lo, hi }
}

/// Signs of `x` at the real embeddings of `field`, ordered by the smallest
/// coset representative of each embedding.
pub fn real_embedding_signs(x: &CycNumber, field: &AbelianField) -> Result<Vec<i8>> {
    if x.is_zero() {
        return Err(Error::invalid("real_embedding_signs: x = 0"));
    }
    if !field.is_totally_real() {
        return Err(Error::invalid(format!(
            "real_embedding_signs: {field} is not totally real"
        )));
    }
    if !field.contains(x) {
        return Err(Error::invalid(format!(
            "real_embedding_signs: {x} does not lie in {field}"
        )));
    }
    if let Some(q) = x.as_rational() {
        let s = if q.is_positive() { 1 } else { -1 };
        return Ok(vec![s; field.degree() as usize]);
    }
    let n = field.conductor();
    let l = n.lcm(&x.conductor());
    let coeffs = x.coeffs_in(l);
    // Lift each coset representative mod n to a unit mod l.
    let lifts: Vec<u64> = field
        .embedding_representatives()
        .into_iter()
        .map(|t| {
            (0..)
                .map(|j| t + j * n)
                .find(|u| u.gcd(&l) == 1)
                .expect("a unit lift exists")
        })
        .collect();
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let pi = pi_bounds(bits + 8);
        let mut cache: FxHashMap<u64, Interval> = FxHashMap::default();
        let mut signs = Vec::with_capacity(lifts.len());
        for &t in &lifts {
            let mut acc = Interval::point(BigRational::zero());
            for (j, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let k = (t * j as u64) % l;
                let cos = cache.entry(k).or_insert_with(|| cos_2pi(k, l, &pi, bits));
                acc = acc.add(&cos.scale(c));
            }
            match acc.sign() {
                Some(s) => signs.push(s),
                None => break,
            }
        }
        if signs.len() == lifts.len() {
            return Ok(signs);
        }
        bits *= 2;
    }
    Err(Error::invalid(format!(
        "real_embedding_signs: no decision for {x} within {MAX_BITS} bits"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, j: i64) -> CycNumber {
        CycNumber::root_of_unity(n, j)
    }

    #[test]
    fn pi_is_bracketed() {
        let (lo, hi) = pi_bounds(64);
        let l = BigRational::new(314159265358979u64.into(), 100000000000000u64.into());
        let h = BigRational::new(314159265358980u64.into(), 100000000000000u64.into());
        assert!(lo > l && hi < h && lo < hi);
    }

    #[test]
    fn spec_examples() {
        let q = AbelianField::rationals();
        assert_eq!(real_embedding_signs(&CycNumber::from_int(-3), &q).unwrap(), vec![-1]);
        let x = z(3, 1).add(&z(3, 2));
        assert_eq!(real_embedding_signs(&x, &q).unwrap(), vec![-1]);
        let r8 = AbelianField::fixed_field(8, &[7]).unwrap();
        let s = z(8, 1).add(&z(8, 7));
        assert_eq!(real_embedding_signs(&s, &r8).unwrap(), vec![1, -1]);
        assert!(real_embedding_signs(&CycNumber::zero(), &q).is_err());
        assert!(real_embedding_signs(&z(4, 1), &AbelianField::cyclotomic(4)).is_err());
    }

    #[test]
    fn close_to_zero() {
        // 1.414213562373095 - 1414213562373095/10^15 is tiny and positive.
        let r8 = AbelianField::fixed_field(8, &[7]).unwrap();
        let s = z(8, 1).add(&z(8, 7));
        let q = BigRational::new(1414213562373095u64.into(), 1000000000000000u64.into());
        let x = s.sub(&CycNumber::from_rational(q));
        assert_eq!(real_embedding_signs(&x, &r8).unwrap(), vec![1, -1]);
        // cos(2π/7) + cos(4π/7) + cos(6π/7) = -1/2 at every embedding.
        let r7 = AbelianField::fixed_field(7, &[6]).unwrap();
        let c = z(7, 1).add(&z(7, 6));
        assert_eq!(real_embedding_signs(&c, &r7).unwrap(), vec![1, -1, -1]);
    }
}
