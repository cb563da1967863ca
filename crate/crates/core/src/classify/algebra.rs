use std::fmt;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::quaternion::{division_status, CanonicalQuaternion, DivisionStatus, QuaternionDescriptor};
use crate::cyclotomic::{AbelianField, CycNumber};
use crate::error::{Error, Result};

/// The division part of a simple algebra `M_m(D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub enum DivisionPart {
    Field(AbelianField),
    Quaternion(CanonicalQuaternion),
    /// A crossed product that was not reduced further.
    CrossedProduct(String),
}

/// A simple algebra `M_m(D)` in normal form. Split quaternion algebras are
/// turned into matrix rings over their center.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct AlgebraDescriptor {
    pub matrix_size: u64,
    pub division: DivisionPart,
}

impl AlgebraDescriptor {
    pub fn matrices(m: u64, field: AbelianField) -> Self {
        AlgebraDescriptor {
            matrix_size: m,
            division: DivisionPart::Field(field),
        }
    }

    /// `M_m((a, b / F))`, reduced to `M_{2m}(F)` when the quaternion part is
    /// known to split.
    pub fn from_quaternion(m: u64, q: &QuaternionDescriptor) -> Result<Self> {
        Ok(if division_status(q)? == DivisionStatus::Split {
            Self::matrices(2 * m, q.center.clone())
        } else {
            AlgebraDescriptor {
                matrix_size: m,
                division: DivisionPart::Quaternion(q.canonical()),
            }
        })
    }

    pub fn center(&self) -> Option<&AbelianField> {
        match &self.division {
            DivisionPart::Field(f) => Some(f),
            DivisionPart::Quaternion(q) => Some(&q.center),
            DivisionPart::CrossedProduct(_) => None,
        }
    }

    /// Parses strings such as `M3(Q)`, `H(Q(sqrt(2)))`, `(-1,-3/Q)`,
    /// `M2(H(Q))` or `(zeta_8,-3/Q(zeta_8))`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse("algebra", format!("cannot parse `{s}`"));
        if let Some(rest) = s.strip_prefix('M') {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                let inner = rest[digits.len()..]
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let m: u64 = digits.parse().map_err(|_| bad())?;
                let mut inner = Self::parse(inner)?;
                inner.matrix_size *= m;
                return Ok(inner);
            }
        }
        if let Some(inner) = s.strip_prefix("H(").and_then(|r| r.strip_suffix(')')) {
            let field = parse_field(inner)?;
            let q = QuaternionDescriptor::new(field, CycNumber::from_int(-1), CycNumber::from_int(-1))?;
            return Self::from_quaternion(1, &q);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (params, field) = inner.rsplit_once('/').ok_or_else(bad)?;
            let (a, b) = params.split_once(',').ok_or_else(bad)?;
            let field = parse_field(field)?;
            let q = QuaternionDescriptor::new(field, parse_element(a)?, parse_element(b)?)?;
            return Self::from_quaternion(1, &q);
        }
        Ok(Self::matrices(1, parse_field(&s)?))
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match &self.division {
            DivisionPart::Field(k) => k.to_string(),
            DivisionPart::Quaternion(q) => q.to_string(),
            DivisionPart::CrossedProduct(s) => s.clone(),
        };
        if self.matrix_size == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "M{}({base})", self.matrix_size)
        }
    }
}

/// `ℚ(√d)` for a squarefree `d ≠ 1`.
pub fn quadratic_field(d: i64) -> Result<AbelianField> {
    if d == 0 || d == 1 {
        return Err(Error::invalid(format!("Q(sqrt({d})) is not quadratic")));
    }
    let n = if d.rem_euclid(4) == 1 {
        d.unsigned_abs()
    } else {
        4 * d.unsigned_abs()
    };
    let r = CycNumber::sqrt_int(d);
    let fixing: Vec<i64> = (1..n as i64)
        .filter(|t| num_integer::Integer::gcd(t, &(n as i64)) == 1)
        .filter(|&t| r.galois_apply(t).map(|x| x == r).unwrap_or(false))
        .collect();
    let field = AbelianField::fixed_field(n, &fixing)?;
    if field.degree() != 2 {
        return Err(Error::invalid(format!("sqrt({d}): {d} must be squarefree")));
    }
    Ok(field)
}

/// Parses `Q`, `Q(i)`, `Q(sqrt(d))` and `Q(zeta_n)`.
pub fn parse_field(s: &str) -> Result<AbelianField> {
    let bad = || Error::parse("field", format!("cannot parse `{s}`"));
    if s == "Q" {
        return Ok(AbelianField::rationals());
    }
    let inner = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    if inner == "i" {
        return Ok(AbelianField::cyclotomic(4));
    }
    if let Some(d) = inner.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return quadratic_field(d.parse().map_err(|_| bad())?);
    }
    if let Some(n) = inner.strip_prefix("zeta_") {
        let n: u64 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(AbelianField::cyclotomic(n));
    }
    Err(bad())
}

/// Parses `q`, `i`, `zeta_n`, `zeta_n^j` with an optional `s*` or `-` prefix.
pub fn parse_element(s: &str) -> Result<CycNumber> {
    let bad = || Error::parse("element", format!("cannot parse `{s}`"));
    if let Ok(q) = s.parse::<i64>() {
        return Ok(CycNumber::from_int(q));
    }
    let (scale, root) = match s.split_once('*') {
        Some((c, r)) => (c.parse::<i64>().map_err(|_| bad())?, r),
        None => match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s),
        },
    };
    let z = if root == "i" {
        CycNumber::root_of_unity(4, 1)
    } else {
        let body = root.strip_prefix("zeta_").ok_or_else(bad)?;
        let (n, j) = match body.split_once('^') {
            Some((n, j)) => (n, j.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        CycNumber::root_of_unity(n, j)
    };
    Ok(z.mul(&CycNumber::from_int(scale)))
}
