use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{quadratic_generator, real_embedding_signs, AbelianField, CycNumber};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, moser_criterion, quaternion_ramification_over_q, Place};
use crate::wedderburn::SimpleComponentDescriptor;

/// The quaternion algebra `(a, b / F)`: `i² = a`, `j² = b`, `ji = −ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionDescriptor {
    pub center: AbelianField,
    pub a: CycNumber,
    pub b: CycNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub enum DivisionStatus {
    Division,
    Split,
    Unknown,
}

/// The square class of `s · ζ_w^j` in `F^×/F^×²`, `w` the number of roots of
/// unity in `F`, `s` a squarefree integer and `j ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct SquareClass {
    pub s: i64,
    pub j: u8,
    pub w: u64,
}

impl SquareClass {
    pub fn value(&self) -> CycNumber {
        let r = CycNumber::from_int(self.s);
        if self.j == 0 {
            r
        } else {
            r.mul(&CycNumber::root_of_unity(self.w, 1))
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.s == 1 && self.j == 0
    }

    /// Roots of unity first, then small `|s|`; `1` before `−1`, otherwise
    /// negative before positive.
    fn key(&self) -> (u8, u64, u8) {
        let rank = match self.s {
            1 => 0,
            -1 => 1,
            s if s < 0 => 0,
            _ => 1,
        };
        (1 - self.j, self.s.unsigned_abs(), rank)
    }

    /// Order for the second entry: rational classes first.
    fn second_key(&self) -> (u8, u64, u8) {
        let (j, s, r) = self.key();
        (1 - j, s, r)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j == 0 {
            return write!(f, "{}", self.s);
        }
        let r = if self.w == 4 {
            "i".to_string()
        } else {
            format!("zeta_{}", self.w)
        };
        match self.s {
            1 => write!(f, "{r}"),
            -1 => write!(f, "-{r}"),
            s => write!(f, "{s}*{r}"),
        }
    }
}

fn squarefree(n: i64) -> i64 {
    let core: i64 = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    core * n.signum()
}

/// `√x` when `x = q·ζ` with `q` rational.
fn sqrt_of_rational_root(x: &CycNumber) -> Option<CycNumber> {
    let (q, m, j) = x.as_rational_times_root_of_unity()?;
    let nd = (q.numer() * q.denom()).to_i64()?;
    let den = BigRational::from_integer(q.denom().clone());
    let root = CycNumber::sqrt_int(nd).scale(&den.recip());
    Some(root.mul(&CycNumber::root_of_unity(2 * m, j as i64)))
}

/// Whether `x ∈ F` is a square in `F`, when this can be decided from the
/// shape `x = q·ζ`.
pub fn is_square_in(x: &CycNumber, field: &AbelianField) -> Option<bool> {
    if x.is_zero() {
        return Some(true);
    }
    sqrt_of_rational_root(x).map(|r| field.contains(&r))
}

/// The least square class (see [`SquareClass`]) containing `x`, for `x` of
/// the form `q·ζ` in `F`.
pub fn square_class(x: &CycNumber, field: &AbelianField) -> Option<SquareClass> {
    if x.is_zero() || !field.contains(x) {
        return None;
    }
    let (q, _, _) = x.as_rational_times_root_of_unity()?;
    let w = field.roots_of_unity_order();
    let mut primes: BTreeSet<u64> = factorize(field.conductor()).into_iter().map(|(p, _)| p).collect();
    let core = squarefree((q.numer() * q.denom()).to_i64()?);
    primes.extend(factorize(core.unsigned_abs()).into_iter().map(|(p, _)| p));
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut cands = Vec::new();
    for mask in 0u32..1 << primes.len() {
        let s: i64 = (0..primes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| primes[i] as i64)
            .product();
        for sign in [1, -1] {
            cands.push(SquareClass { s: sign * s, j: 0, w });
            if w % 4 == 0 {
                cands.push(SquareClass { s: sign * s, j: 1, w });
            }
        }
    }
    cands.sort_by_key(|c| {
        let (_, abs, rank) = c.key();
        (abs, c.j, rank)
    });
    cands
        .into_iter()
        .find(|c| x.div(&c.value()).is_ok_and(|y| is_square_in(&y, field) == Some(true)))
}

/// Parameters of a quaternion algebra in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub enum QuaternionParams {
    /// Both entries reduced to square classes.
    Classes(SquareClass, SquareClass),
    /// Entries not of the shape `q·ζ`, kept as given.
    Raw(String, String),
}

/// A quaternion algebra in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct CanonicalQuaternion {
    pub center: AbelianField,
    pub params: QuaternionParams,
}

impl CanonicalQuaternion {
    pub fn is_hamilton(&self) -> bool {
        matches!(self.params, QuaternionParams::Classes(a, b) if a.s == -1 && a.j == 0 && b.s == -1 && b.j == 0)
    }
}

impl fmt::Display for CanonicalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_hamilton() {
            return write!(f, "H({})", self.center);
        }
        match &self.params {
            QuaternionParams::Classes(a, b) => write!(f, "({a},{b}/{})", self.center),
            QuaternionParams::Raw(a, b) => write!(f, "({a},{b}/{})", self.center),
        }
    }
}

fn signed_squarefree_upto(bound: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (2..=bound)
        .filter(|&n| squarefree(n) == n)
        .flat_map(|n| [-n, n])
        .collect();
    out.insert(0, -1);
    out
}

/// The least pair `(a, b)` of squarefree integers with the given
/// ramification set.
fn rational_normal_form(ram: &BTreeSet<Place>) -> Option<(i64, i64)> {
    let bound = ram
        .iter()
        .filter_map(|p| match p {
            Place::Prime(p) => Some(*p as i64),
            Place::Infinity => None,
        })
        .product::<i64>()
        .max(1)
        * 8;
    let cands = signed_squarefree_upto(bound.min(400));
    for (i, &a) in cands.iter().enumerate() {
        for &b in &cands[i..] {
            let r = quaternion_ramification_over_q(
                &BigRational::from_integer(a.into()),
                &BigRational::from_integer(b.into()),
            )
            .expect("non-zero");
            if &r == ram {
                return Some((a, b));
            }
        }
    }
    None
}

impl QuaternionDescriptor {
    pub fn new(center: AbelianField, a: CycNumber, b: CycNumber) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::invalid("quaternion parameters must be non-zero"));
        }
        if !center.contains(&a) || !center.contains(&b) {
            return Err(Error::invalid(format!("quaternion parameters must lie in {center}")));
        }
        Ok(QuaternionDescriptor { center, a, b })
    }

    fn rational_params(&self) -> Option<(BigRational, BigRational)> {
        Some((self.a.as_rational()?.clone(), self.b.as_rational()?.clone()))
    }

    /// Ramification set over ℚ; `None` for other centers.
    pub fn ramification(&self) -> Option<BTreeSet<Place>> {
        if !self.center.is_rationals() {
            return None;
        }
        let (a, b) = self.rational_params()?;
        quaternion_ramification_over_q(&a, &b).ok()
    }

    /// `{a, b, −ab}` reduced to square classes, when possible.
    fn class_triple(&self) -> Option<[SquareClass; 3]> {
        let a = square_class(&self.a, &self.center)?;
        let b = square_class(&self.b, &self.center)?;
        let c = square_class(&self.a.mul(&self.b).neg(), &self.center)?;
        Some([a, b, c])
    }

    /// Normal form: over ℚ the least integer pair with the same ramification;
    /// otherwise the least pair from `{a, b, −ab}` after reduction to square
    /// classes.
    pub fn canonical(&self) -> CanonicalQuaternion {
        if let Some(ram) = self.ramification() {
            if let Some((a, b)) = rational_normal_form(&ram).filter(|_| !ram.is_empty()) {
                return CanonicalQuaternion {
                    center: self.center.clone(),
                    params: QuaternionParams::Classes(
                        SquareClass { s: a, j: 0, w: 2 },
                        SquareClass { s: b, j: 0, w: 2 },
                    ),
                };
            }
        }
        let params = match self.class_triple() {
            Some(t) => {
                let mut best: Option<(SquareClass, SquareClass)> = None;
                for i in 0..3 {
                    for j in 0..3 {
                        if i == j {
                            continue;
                        }
                        let cand = (t[i], t[j]);
                        if best.map_or(true, |b| {
                            (cand.0.key(), cand.1.second_key()) < (b.0.key(), b.1.second_key())
                        }) {
                            best = Some(cand);
                        }
                    }
                }
                let (a, b) = best.expect("six candidates");
                QuaternionParams::Classes(a, b)
            }
            None => QuaternionParams::Raw(self.a.to_string(), self.b.to_string()),
        };
        CanonicalQuaternion {
            center: self.center.clone(),
            params,
        }
    }
}

/// The quaternion algebra `(g, a / F)` equal to the cyclic algebra of a
/// component with `[N:H] = 2`: `E = ℚ(ζ_k) = F(√g)` and `u² = a = ζ_k^s`.
pub fn quaternion_form(desc: &SimpleComponentDescriptor) -> Result<QuaternionDescriptor> {
    if desc.crossed_degree != 2 {
        return Err(Error::invalid(format!(
            "quaternion_form: crossed degree {} is not 2",
            desc.crossed_degree
        )));
    }
    let sigma = desc.action[1];
    let g = quadratic_generator(desc.cyclotomic_order, &desc.center, sigma)?;
    let (_, s) = desc.power_exponent(1);
    let a = CycNumber::root_of_unity(desc.cyclotomic_order, s as i64);
    let g = match square_class(&g, &desc.center) {
        Some(c) => c.value(),
        None => g,
    };
    QuaternionDescriptor::new(desc.center.clone(), g, a)
}

/// True iff `F` is totally real and `a`, `b` are negative at every real
/// embedding, i.e. the algebra ramifies at all infinite places.
pub fn is_totally_definite(q: &QuaternionDescriptor) -> Result<bool> {
    if !q.center.is_totally_real() {
        return Ok(false);
    }
    let sa = real_embedding_signs(&q.a, &q.center)?;
    let sb = real_embedding_signs(&q.b, &q.center)?;
    Ok(sa.iter().chain(&sb).all(|&s| s < 0))
}

/// A solution of `a x² + b y² = z²` with `(x, y) ≠ 0`, which proves that
/// `(a, b / F)` is split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub x: CycNumber,
    pub y: CycNumber,
    pub z: CycNumber,
}

impl SplitCertificate {
    pub fn verify(&self, q: &QuaternionDescriptor) -> bool {
        let lhs = q.a.mul(&self.x.square()).add(&q.b.mul(&self.y.square()));
        !(self.x.is_zero() && self.y.is_zero()) && lhs == self.z.square()
    }
}

impl fmt::Display for SplitCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}, y = {}, z = {}", self.x, self.y, self.z)
    }
}

/// A ℚ-basis of `F` made of Gaussian periods of `ζ_n`, `n` the conductor.
pub(crate) fn period_basis(field: &AbelianField) -> Vec<CycNumber> {
    let n = field.conductor();
    let stab = field.stabilizer();
    let mut basis: Vec<CycNumber> = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..n {
        let mut seen = BTreeSet::new();
        let mut x = CycNumber::zero();
        for &t in stab {
            let e = if n == 1 { 0 } else { (j * t) % n };
            if seen.insert(e) {
                x = x.add(&CycNumber::root_of_unity(n, e as i64));
            }
        }
        if x.is_zero() {
            continue;
        }
        let mut row = x.coeffs_in(n);
        if reduce_against(&rows, &mut row) {
            rows.push(row);
            basis.push(x);
            if basis.len() as u64 == field.degree() {
                break;
            }
        }
    }
    basis
}

/// Reduces `row` against an echelon set; true if something non-zero remains.
fn reduce_against(rows: &[Vec<BigRational>], row: &mut [BigRational]) -> bool {
    for r in rows {
        let piv = r.iter().position(|c| !c.is_zero()).expect("non-zero row");
        if !row[piv].is_zero() {
            let f = &row[piv] / &r[piv];
            for (x, y) in row.iter_mut().zip(r) {
                *x -= &f * y;
            }
        }
    }
    row.iter().any(|c| !c.is_zero())
}

/// All `Σ c_i β_i` with `|c_i| ≤ bound` over the given basis.
pub(crate) fn small_elements(basis: &[CycNumber], bound: i64) -> Vec<CycNumber> {
    let mut out = vec![CycNumber::zero()];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for x in &out {
            for c in -bound..=bound {
                next.push(x.add(&b.scale(&BigRational::from_integer(BigInt::from(c)))));
            }
        }
        out = next;
    }
    out
}

/// Exhaustive search for a [`SplitCertificate`] with `x, y, z` of small
/// height over a period basis of `F`. Only run for fields of degree ≤ 4.
pub fn find_split_certificate(q: &QuaternionDescriptor) -> Option<SplitCertificate> {
    let deg = q.center.degree();
    let bound = match deg {
        1 | 2 => 2,
        3 | 4 => 1,
        _ => return None,
    };
    let elems = small_elements(&period_basis(&q.center), bound);
    let mut squares: FxHashMap<CycNumber, usize> = FxHashMap::default();
    let sq: Vec<CycNumber> = elems.iter().map(|x| x.square()).collect();
    for (i, s) in sq.iter().enumerate() {
        squares.entry(s.clone()).or_insert(i);
    }
    let a_sq: Vec<CycNumber> = sq.iter().map(|s| q.a.mul(s)).collect();
    let b_sq: Vec<CycNumber> = sq.iter().map(|s| q.b.mul(s)).collect();
    for (i, ax) in a_sq.iter().enumerate() {
        for (j, by) in b_sq.iter().enumerate() {
            if elems[i].is_zero() && elems[j].is_zero() {
                continue;
            }
            if let Some(&k) = squares.get(&ax.add(by)) {
                let cert = SplitCertificate {
                    x: elems[i].clone(),
                    y: elems[j].clone(),
                    z: elems[k].clone(),
                };
                debug_assert!(cert.verify(q));
                return Some(cert);
            }
        }
    }
    None
}

/// How a [`DivisionStatus`] was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatusReason {
    Ramification(BTreeSet<Place>),
    SquareEntry,
    Moser(u64),
    CyclotomicFamily(u32),
    TotallyDefinite,
    Certificate(SplitCertificate),
    None,
}

impl fmt::Display for StatusReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatusReason::Ramification(r) => {
                let v: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                write!(f, "ramified at {{{}}}", v.join(","))
            }
            StatusReason::SquareEntry => write!(f, "one of a, b, -ab is a square"),
            StatusReason::Moser(d) => write!(f, "level of Q(zeta_{d}) via the order of 2 mod {d}"),
            StatusReason::CyclotomicFamily(k) => {
                write!(
                    f,
                    "(zeta_{}, -3) over Q(zeta_{}) is a division algebra",
                    1u64 << k,
                    1u64 << k
                )
            }
            StatusReason::TotallyDefinite => write!(f, "totally definite"),
            StatusReason::Certificate(c) => write!(f, "split certificate a*x^2 + b*y^2 = z^2 with {c}"),
            StatusReason::None => write!(f, "no criterion applies"),
        }
    }
}

/// [`division_status`] with the criterion that decided it.
pub fn division_status_with_reason(q: &QuaternionDescriptor) -> Result<(DivisionStatus, StatusReason)> {
    if let Some(ram) = q.ramification() {
        let st = if ram.is_empty() {
            DivisionStatus::Split
        } else {
            DivisionStatus::Division
        };
        return Ok((st, StatusReason::Ramification(ram)));
    }
    if let Some(t) = q.class_triple() {
        if t.iter().any(|c| c.is_trivial()) {
            return Ok((DivisionStatus::Split, StatusReason::SquareEntry));
        }
    }
    let canon = q.canonical();
    if canon.is_hamilton() && q.center.is_cyclotomic() && q.center.conductor() % 2 == 1 {
        let d = q.center.conductor();
        let st = if moser_criterion(d) {
            DivisionStatus::Division
        } else {
            DivisionStatus::Split
        };
        return Ok((st, StatusReason::Moser(d)));
    }
    let n = q.center.conductor();
    if q.center.is_cyclotomic() && n >= 8 && n.is_power_of_two() {
        let family = QuaternionDescriptor::new(
            q.center.clone(),
            CycNumber::root_of_unity(n, 1),
            CycNumber::from_int(-3),
        )?;
        if family.canonical() == canon {
            return Ok((
                DivisionStatus::Division,
                StatusReason::CyclotomicFamily(n.trailing_zeros()),
            ));
        }
    }
    if is_totally_definite(q)? {
        return Ok((DivisionStatus::Division, StatusReason::TotallyDefinite));
    }
    if let Some(cert) = find_split_certificate(q) {
        return Ok((DivisionStatus::Split, StatusReason::Certificate(cert)));
    }
    Ok((DivisionStatus::Unknown, StatusReason::None))
}

/// Whether `(a, b / F)` is a division algebra, split, or undecided by the
/// criteria implemented here.
pub fn division_status(q: &QuaternionDescriptor) -> Result<DivisionStatus> {
    Ok(division_status_with_reason(q)?.0)
}
