//! Components `ℚ(ζ_k) * (C₂ × C₂)` over ℚ written as a tensor product of two
//! quaternion algebras.

use std::collections::BTreeSet;

use super::quaternion::{small_elements, QuaternionDescriptor};
use crate::cyclotomic::{AbelianField, CycNumber};
use crate::numtheory::{euler_phi, Place};
use crate::wedderburn::SimpleComponentDescriptor;

/// `A ≅ (α², θ_σ² / ℚ) ⊗ (β², θ_τ² / ℚ)` with `θ_σ = e·u_σ`, `θ_τ = f·u_τ`.
#[derive(Debug, Clone)]
pub struct BiquaternionForm {
    pub first: QuaternionDescriptor,
    pub second: QuaternionDescriptor,
    pub e: CycNumber,
    pub f: CycNumber,
}

impl BiquaternionForm {
    /// Places where the Brauer class of `A` is non-trivial.
    pub fn ramification(&self) -> BTreeSet<Place> {
        let r1 = self.first.ramification().expect("rational center");
        let r2 = self.second.ramification().expect("rational center");
        r1.symmetric_difference(&r2).copied().collect()
    }
}

fn galois(x: &CycNumber, t: u64) -> CycNumber {
    x.galois_apply(t as i64).expect("t is a unit")
}

/// `x − σ(x)` for `x = y + τ(y)`, `y = ζ_k^j` with the least `j` giving a
/// non-zero value: fixed by `τ` and negated by `σ`.
fn anti_invariant(k: u64, sigma: u64, tau: u64) -> Option<CycNumber> {
    (1..=k as i64).find_map(|j| {
        let y = CycNumber::root_of_unity(k, j);
        let x = y.add(&galois(&y, tau));
        let a = x.sub(&galois(&x, sigma));
        (!a.is_zero()).then_some(a)
    })
}

/// Searches `e, f ∈ ℚ(ζ_k)` with coefficients in `{−1, 0, 1}` such that
/// `θ_σ² ∈ ℚ`, `θ_τ² ∈ ℚ` and `θ_σ θ_τ = θ_τ θ_σ`. Needs center ℚ and
/// `N/H ≅ C₂ × C₂`.
pub fn biquaternion_form(desc: &SimpleComponentDescriptor) -> Option<BiquaternionForm> {
    if desc.crossed_degree != 4 || desc.is_cyclic_crossed_product() || !desc.center.is_rationals() {
        return None;
    }
    let k = desc.cyclotomic_order;
    let (si, ti) = (1usize, 2usize);
    let (sigma, tau) = (desc.action[si], desc.action[ti]);
    let zeta = |s: u64| CycNumber::root_of_unity(k, s as i64);
    let a = zeta(desc.power_exponent(si).1);
    let b = zeta(desc.power_exponent(ti).1);
    let z = zeta(desc.commutator_exponent(si, ti));
    let alpha = anti_invariant(k, sigma, tau)?;
    let beta = anti_invariant(k, tau, sigma)?;
    let deg = euler_phi(k).expect("k >= 1") as i64;
    let basis: Vec<CycNumber> = (0..deg).map(|j| CycNumber::root_of_unity(k, j)).collect();
    let elems: Vec<CycNumber> = small_elements(&basis, 1).into_iter().filter(|x| !x.is_zero()).collect();
    let es: Vec<(CycNumber, CycNumber)> = elems
        .iter()
        .filter_map(|e| {
            let sq = e.mul(&galois(e, sigma)).mul(&a);
            (galois(&sq, tau) == sq).then(|| (e.clone(), sq))
        })
        .collect();
    let fs: Vec<(CycNumber, CycNumber)> = elems
        .iter()
        .filter_map(|f| {
            let sq = f.mul(&galois(f, tau)).mul(&b);
            (galois(&sq, sigma) == sq).then(|| (f.clone(), sq))
        })
        .collect();
    let q = AbelianField::rationals();
    for (e, e_sq) in &es {
        let te_z = galois(e, tau).mul(&z);
        for (f, f_sq) in &fs {
            if e.mul(&galois(f, sigma)) == f.mul(&te_z) {
                let first = QuaternionDescriptor::new(q.clone(), alpha.square(), e_sq.clone()).ok()?;
                let second = QuaternionDescriptor::new(q.clone(), beta.square(), f_sq.clone()).ok()?;
                return Some(BiquaternionForm {
                    first,
                    second,
                    e: e.clone(),
                    f: f.clone(),
                });
            }
        }
    }
    None
}
