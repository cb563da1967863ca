//! Classification of simple components (fields, totally definite
//! quaternion algebras, exceptional components of types 1 and 2), the VCR
//! criterion for groups, and regression against the bundled tables.

mod algebra;
mod biquaternion;
mod cyclic;
mod quaternion;
mod tables;
mod vcr;

use std::collections::BTreeSet;
use std::fmt;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

pub use algebra::{parse_element, parse_field, quadratic_field, AlgebraDescriptor, DivisionPart};
pub use biquaternion::{biquaternion_form, BiquaternionForm};
pub use cyclic::cyclic_invariants_over_q;
pub use quaternion::{
    division_status, division_status_with_reason, find_split_certificate, is_square_in, is_totally_definite,
    quaternion_form, square_class, CanonicalQuaternion, DivisionStatus, QuaternionDescriptor, QuaternionParams,
    SplitCertificate, SquareClass, StatusReason,
};
pub use tables::{reproduce_table, RowReport, RowStatus, TableReport, TABLE_FILES};
pub use vcr::{classify_decomposition, vcr_verdict, Vcr, VcrReport, Witness, WitnessSource};

use crate::cyclotomic::AbelianField;
use crate::error::Result;
use crate::numtheory::Place;
use crate::wedderburn::SimpleComponentDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub enum ClassTag {
    CommutativeField,
    TotallyDefiniteQuaternion,
    ExceptionalType1,
    ExceptionalType2,
    NonExceptional,
    Undetermined,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::CommutativeField => "field",
            ClassTag::TotallyDefiniteQuaternion => "TDQ",
            ClassTag::ExceptionalType1 => "exceptional-1",
            ClassTag::ExceptionalType2 => "exceptional-2",
            ClassTag::NonExceptional => "non-exceptional",
            ClassTag::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}

/// Verdict for one simple component. `division_status` is `Split` whenever
/// the component is known not to be a division ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ComponentClass {
    pub tag: ClassTag,
    pub detail: String,
    pub division_status: DivisionStatus,
    pub algebra: AlgebraDescriptor,
    pub notes: Vec<String>,
}

impl ComponentClass {
    fn new(tag: ClassTag, algebra: AlgebraDescriptor, status: DivisionStatus, notes: Vec<String>) -> Self {
        ComponentClass {
            tag,
            detail: algebra.to_string(),
            division_status: status,
            algebra,
            notes,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.tag == ClassTag::CommutativeField
    }
}

fn exceptional_center(f: &AbelianField) -> bool {
    f.is_rationals() || f.is_imaginary_quadratic()
}

fn matrix_class(m: u64, field: &AbelianField, notes: Vec<String>) -> ComponentClass {
    let alg = AlgebraDescriptor::matrices(m, field.clone());
    if m == 1 {
        return ComponentClass::new(ClassTag::CommutativeField, alg, DivisionStatus::Division, notes);
    }
    let tag = if m == 2 && exceptional_center(field) {
        ClassTag::ExceptionalType2
    } else {
        ClassTag::NonExceptional
    };
    ComponentClass::new(tag, alg, DivisionStatus::Split, notes)
}

fn crossed_label(desc: &SimpleComponentDescriptor) -> String {
    let d = desc.crossed_degree;
    let g = if desc.is_cyclic_crossed_product() {
        format!("C{d}")
    } else {
        format!("non-cyclic of order {d}")
    };
    format!("(Q(zeta_{})/{}, {g})", desc.cyclotomic_order, desc.center)
}

fn crossed_algebra(desc: &SimpleComponentDescriptor) -> AlgebraDescriptor {
    AlgebraDescriptor {
        matrix_size: desc.matrix_size,
        division: DivisionPart::CrossedProduct(crossed_label(desc)),
    }
}

/// `j` with `ζ^s = N(ζ^j) = ζ^{j(1 + t + … + t^{d−1})}`, if any.
fn root_of_unity_norm(k: u64, t: u64, d: u64, s: u64) -> Option<u64> {
    let mut sum = 0u64;
    let mut p = 1u64;
    for _ in 0..d {
        sum = (sum + p) % k;
        p = p * t % k;
    }
    (0..k).find(|j| j * sum % k == s % k)
}

fn classify_quaternion(desc: &SimpleComponentDescriptor) -> Result<ComponentClass> {
    let m = desc.matrix_size;
    let q = quaternion_form(desc)?;
    let (status, reason) = division_status_with_reason(&q)?;
    let mut notes = vec![
        format!("{} from ({}, {} / {})", q.canonical(), q.a, q.b, q.center),
        reason.to_string(),
    ];
    match status {
        DivisionStatus::Split => Ok(matrix_class(2 * m, &q.center, notes)),
        DivisionStatus::Division => {
            let alg = AlgebraDescriptor {
                matrix_size: m,
                division: DivisionPart::Quaternion(q.canonical()),
            };
            let tdq = is_totally_definite(&q)?;
            let (tag, st) = match m {
                1 if tdq => (ClassTag::TotallyDefiniteQuaternion, DivisionStatus::Division),
                1 => (ClassTag::ExceptionalType1, DivisionStatus::Division),
                2 if tdq && q.center.is_rationals() => (ClassTag::ExceptionalType2, DivisionStatus::Split),
                _ => (ClassTag::NonExceptional, DivisionStatus::Split),
            };
            Ok(ComponentClass::new(tag, alg, st, notes))
        }
        DivisionStatus::Unknown => {
            let alg = AlgebraDescriptor {
                matrix_size: m,
                division: DivisionPart::Quaternion(q.canonical()),
            };
            if m >= 2 {
                notes.push("not exceptional whether or not the quaternion part splits".into());
                Ok(ComponentClass::new(
                    ClassTag::NonExceptional,
                    alg,
                    DivisionStatus::Split,
                    notes,
                ))
            } else {
                Ok(ComponentClass::new(
                    ClassTag::Undetermined,
                    alg,
                    DivisionStatus::Unknown,
                    notes,
                ))
            }
        }
    }
}

/// `M_n(D)` with `D` the rational quaternion algebra ramified at `ram`
/// (or `M_{2n}(ℚ)` when `ram` is empty).
fn rational_brauer_class(n: u64, ram: &BTreeSet<Place>, notes: Vec<String>) -> ComponentClass {
    let q = AbelianField::rationals();
    if ram.is_empty() {
        return matrix_class(2 * n, &q, notes);
    }
    let canon = rational_quaternion_with(ram).expect("even number of ramified places");
    let alg = AlgebraDescriptor {
        matrix_size: n,
        division: DivisionPart::Quaternion(canon),
    };
    let definite = ram.contains(&Place::Infinity);
    let (tag, status) = match n {
        1 if definite => (ClassTag::TotallyDefiniteQuaternion, DivisionStatus::Division),
        1 => (ClassTag::ExceptionalType1, DivisionStatus::Division),
        2 if definite => (ClassTag::ExceptionalType2, DivisionStatus::Split),
        _ => (ClassTag::NonExceptional, DivisionStatus::Split),
    };
    ComponentClass::new(tag, alg, status, notes)
}

fn classify_higher(desc: &SimpleComponentDescriptor) -> Result<ComponentClass> {
    let m = desc.matrix_size;
    let d = desc.crossed_degree;
    let f = &desc.center;
    // ψ_v(±1) has order at most 2, so the invariants are 0 or 1/2.
    if let Some(inv) = cyclic_invariants_over_q(desc).filter(|inv| inv.values().all(|&(r, n)| 2 * r == n)) {
        let notes = vec![format!(
            "local invariants {{{}}}",
            inv.iter()
                .map(|(p, (r, n))| format!("{p}: {r}/{n}"))
                .collect::<Vec<_>>()
                .join(", ")
        )];
        if inv.is_empty() {
            return Ok(matrix_class(m * d, f, notes));
        }
        let ram: BTreeSet<Place> = inv.keys().copied().collect();
        return Ok(rational_brauer_class(m * d / 2, &ram, notes));
    }
    if m >= 2 {
        let notes = vec![format!("reduced degree {} with matrix size {m} >= 2", m * d)];
        return Ok(ComponentClass::new(
            ClassTag::NonExceptional,
            crossed_algebra(desc),
            DivisionStatus::Split,
            notes,
        ));
    }
    if let Some(r) = desc.cyclic_generator() {
        let (_, s) = desc.power_exponent(r);
        if let Some(j) = root_of_unity_norm(desc.cyclotomic_order, desc.action[r], d, s) {
            let notes = vec![format!(
                "u^{d} = zeta_{}^{s} is the norm of zeta_{}^{j}",
                desc.cyclotomic_order, desc.cyclotomic_order
            )];
            return Ok(matrix_class(d, f, notes));
        }
    } else if let Some(bq) = biquaternion_form(desc) {
        let notes = vec![format!(
            "({}, {} / Q) (x) ({}, {} / Q) with e = {}, f = {}",
            bq.first.a, bq.first.b, bq.second.a, bq.second.b, bq.e, bq.f
        )];
        return Ok(rational_brauer_class(2, &bq.ramification(), notes));
    }
    Ok(ComponentClass::new(
        ClassTag::Undetermined,
        crossed_algebra(desc),
        DivisionStatus::Unknown,
        vec!["no split certificate for a crossed product of degree >= 3".into()],
    ))
}

/// The rational quaternion algebra in normal form with the given
/// ramification set.
fn rational_quaternion_with(ram: &BTreeSet<Place>) -> Option<CanonicalQuaternion> {
    use crate::cyclotomic::CycNumber;
    let q = AbelianField::rationals();
    for a in [-1i64, -2, -3, -5, -6, -7, -10, -11, -13] {
        for b in [-1i64, -2, -3, -5, -6, -7, -10, -11, -13, 2, 3, 5] {
            let d = QuaternionDescriptor::new(q.clone(), CycNumber::from_int(a), CycNumber::from_int(b)).ok()?;
            if d.ramification().as_ref() == Some(ram) {
                return Some(d.canonical());
            }
        }
    }
    None
}

/// Classifies one Wedderburn component.
pub fn classify_component(desc: &SimpleComponentDescriptor) -> Result<ComponentClass> {
    match desc.crossed_degree {
        1 => Ok(matrix_class(desc.matrix_size, &desc.center, Vec::new())),
        2 => classify_quaternion(desc),
        _ => classify_higher(desc),
    }
}
