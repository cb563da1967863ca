use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_poly, inverse_mod, reduce_mod};
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, factorize, pow_mod};

/// An element of a cyclotomic field, stored over the power basis of
/// `ℚ(ζ_n)` for the least possible conductor `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    n: u64,
    coeffs: Vec<BigRational>,
}

fn phi(n: u64) -> usize {
    euler_phi(n).expect("n >= 1") as usize
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNumber { n: 1, coeffs: vec![q] }
    }

    pub fn from_int(x: i64) -> Self {
        Self::from_rational(rat(x))
    }

    /// `ζ_n^j`.
    pub fn root_of_unity(n: u64, j: i64) -> Self {
        assert!(n >= 1);
        let j = j.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); n as usize];
        c[j] = BigRational::one();
        Self::from_full(n, c)
    }

    /// Builds `Σ c_j ζ_n^j` from any number of coefficients.
    pub fn from_powers(n: u64, coeffs: &[BigRational]) -> Self {
        let mut c = vec![BigRational::zero(); n as usize];
        for (j, x) in coeffs.iter().enumerate() {
            c[j % n as usize] += x;
        }
        Self::from_full(n, c)
    }

    fn from_full(n: u64, mut c: Vec<BigRational>) -> Self {
        reduce_mod(&mut c, &cyclotomic_poly(n));
        CycNumber { n, coeffs: c }.canonical()
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coefficients, length `φ(conductor)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.n == 1).then(|| &self.coeffs[0])
    }

    /// Coefficients over the power basis of `ℚ(ζ_m)`; `m` must be a multiple
    /// of the conductor.
    pub fn coeffs_in(&self, m: u64) -> Vec<BigRational> {
        assert!(m % self.n == 0, "conductor {} does not divide {m}", self.n);
        if m == self.n {
            return self.coeffs.clone();
        }
        let step = (m / self.n) as usize;
        let mut c = vec![BigRational::zero(); m as usize];
        for (j, x) in self.coeffs.iter().enumerate() {
            c[(j * step) % m as usize] += x;
        }
        reduce_mod(&mut c, &cyclotomic_poly(m));
        c
    }

    /// Whether the element lies in `ℚ(ζ_d)`, `d | n`: it is fixed by every
    /// `σ_t` with `t ≡ 1 (mod d)`.
    fn lies_in(&self, d: u64) -> bool {
        let n = self.n;
        (1..n)
            .filter(|&t| t % d == 1 % d && t.gcd(&n) == 1)
            .all(|t| self.galois_raw(t) == self.coeffs)
    }

    fn galois_raw(&self, t: u64) -> Vec<BigRational> {
        let n = self.n as usize;
        let mut c = vec![BigRational::zero(); n];
        for (j, x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                c[(j * t as usize) % n] += x;
            }
        }
        reduce_mod(&mut c, &cyclotomic_poly(self.n));
        c
    }

    /// Rewrites over the least conductor.
    fn canonical(self) -> Self {
        let mut x = self;
        'outer: loop {
            if x.n == 1 {
                return x;
            }
            for (p, _) in factorize(x.n) {
                let d = x.n / p;
                if x.lies_in(d) {
                    x = x.restrict(d);
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Coordinates in `ℚ(ζ_d)` of an element known to lie there, by solving
    /// the linear system against the lifted basis.
    fn restrict(&self, d: u64) -> Self {
        let (fd, fn_) = (phi(d), phi(self.n));
        let basis: Vec<Vec<BigRational>> = (0..fd)
            .map(|j| {
                CycNumber {
                    n: d,
                    coeffs: unit(fd, j),
                }
                .coeffs_in(self.n)
            })
            .collect();
        // Augmented matrix: rows = coordinates, columns = basis vectors + rhs.
        let mut m: Vec<Vec<BigRational>> = (0..fn_)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..fd {
            let Some(p) = (row..fn_).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..fn_ {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[row].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut coeffs = vec![BigRational::zero(); fd];
        for (r, &c) in pivots.iter().enumerate() {
            coeffs[c] = m[r][fd].clone();
        }
        CycNumber { n: d, coeffs }
    }

    fn lift_pair(&self, other: &Self) -> (u64, Vec<BigRational>, Vec<BigRational>) {
        let l = self.n.lcm(&other.n);
        (l, self.coeffs_in(l), other.coeffs_in(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (l, mut a, b) = self.lift_pair(other);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        CycNumber { n: l, coeffs: a }.canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycNumber {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (l, a, b) = self.lift_pair(other);
        let mut c = vec![BigRational::zero(); l as usize];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                c[(i + j) % l as usize] += x * y;
            }
        }
        Self::from_full(l, c)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let m: Vec<BigRational> = cyclotomic_poly(self.n)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = inverse_mod(&self.coeffs, &m).expect("non-zero element of a field is invertible");
        Ok(Self::from_powers(self.n, &inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `σ_t : ζ ↦ ζ^t`; `t` must be coprime to the conductor.
    pub fn galois_apply(&self, t: i64) -> Result<Self> {
        let n = self.n as i64;
        if t.gcd(&n) != 1 {
            return Err(Error::invalid(format!(
                "galois_apply: {t} is not coprime to the conductor {n}"
            )));
        }
        let t = t.rem_euclid(n) as u64;
        Ok(CycNumber {
            n: self.n,
            coeffs: self.galois_raw(t),
        }
        .canonical())
    }

    /// `Some((q, n, j))` when the element equals `q · ζ_n^j` with `q`
    /// rational, `n` the conductor (`j = 0` and `n = 1` for rationals).
    pub fn as_rational_times_root_of_unity(&self) -> Option<(BigRational, u64, u64)> {
        if let Some(q) = self.as_rational() {
            return Some((q.clone(), 1, 0));
        }
        // The conductor of q·ζ is that of ζ up to the usual factor 2.
        let m = if self.n % 2 == 1 { 2 * self.n } else { self.n };
        for j in 0..m {
            let y = self.mul(&Self::root_of_unity(m, -(j as i64)));
            if let Some(q) = y.as_rational() {
                // q ζ = (-q)(-ζ); keep q positive.
                return Some(if q.is_negative() {
                    (-q.clone(), m, (j + m / 2) % m)
                } else {
                    (q.clone(), m, j)
                });
            }
        }
        None
    }

    /// A square root of the integer `d`, built from quadratic Gauss sums.
    pub fn sqrt_int(d: i64) -> Self {
        if d == 0 {
            return Self::zero();
        }
        let mut acc = Self::one();
        let mut built: i64 = 1;
        for (p, e) in factorize(d.unsigned_abs()) {
            for _ in 0..e / 2 {
                acc = acc.scale(&rat(p as i64));
                built *= (p * p) as i64;
            }
            if e % 2 == 0 {
                continue;
            }
            let (root, square) = if p == 2 {
                (Self::root_of_unity(8, 1).add(&Self::root_of_unity(8, 7)), 2)
            } else {
                let coeffs: Vec<BigRational> = (0..p)
                    .map(|a| match pow_mod(a, (p - 1) / 2, p) {
                        0 => BigRational::zero(),
                        1 => BigRational::one(),
                        _ => -BigRational::one(),
                    })
                    .collect();
                let star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
                (Self::from_powers(p, &coeffs), star)
            };
            acc = acc.mul(&root);
            built *= square;
        }
        if built != d {
            acc = acc.mul(&Self::root_of_unity(4, 1));
        }
        debug_assert_eq!(acc.square(), Self::from_int(d));
        acc
    }

    pub fn is_root_of_unity(&self) -> bool {
        matches!(self.as_rational_times_root_of_unity(), Some((q, _, _)) if q.is_one())
    }
}

fn unit(len: usize, j: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    v[j] = BigRational::one();
    v
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    /// `q`, `q*zeta_n^j`, or a sum of power-basis terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        if let Some((q, n, j)) = self.as_rational_times_root_of_unity() {
            let z = if j == 1 {
                format!("zeta_{n}")
            } else {
                format!("zeta_{n}^{j}")
            };
            return if q.is_one() {
                write!(f, "{z}")
            } else if q == -BigRational::one() {
                write!(f, "-{z}")
            } else {
                write!(f, "{q}*{z}")
            };
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let z = match j {
                0 => String::new(),
                1 => format!("zeta_{}", self.n),
                _ => format!("zeta_{}^{j}", self.n),
            };
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        Ok(())
    }
}
