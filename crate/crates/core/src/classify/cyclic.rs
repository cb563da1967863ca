//! Hasse invariants of cyclic components `(ℚ(ζ_k)/ℚ, σ, ±1)`.

use std::collections::BTreeMap;

use crate::numtheory::{factorize, Place};
use crate::wedderburn::SimpleComponentDescriptor;

/// Local invariants `r/d` (as `(r, d)` with `0 < r < d`) of a cyclic
/// component over ℚ whose factor set is `u^d = ±1`. Places with invariant
/// zero are omitted.
pub fn cyclic_invariants_over_q(desc: &SimpleComponentDescriptor) -> Option<BTreeMap<Place, (u64, u64)>> {
    if !desc.center.is_rationals() {
        return None;
    }
    let gen = desc.cyclic_generator()?;
    let k = desc.cyclotomic_order;
    let d = desc.crossed_degree;
    let (_, s) = desc.power_exponent(gen);
    let s = s % k;
    if s != 0 && 2 * s != k {
        return None;
    }
    let mut out = BTreeMap::new();
    if s == 0 {
        return Some(out);
    }
    let t = desc.action[gen];
    let exponent = |target: u64| -> Option<u64> {
        let mut p = 1u64;
        for r in 0..d {
            if p == target % k {
                return Some(r);
            }
            p = p * t % k;
        }
        None
    };
    let mut record = |place: Place, target: u64| -> Option<()> {
        let r = exponent(target)?;
        if r != 0 {
            out.insert(place, (r, d));
        }
        Some(())
    };
    // ψ_∞(−1) is complex conjugation.
    if k > 2 {
        record(Place::Infinity, k - 1)?;
    }
    // ψ_p(−1) acts as −1 on the p-part and trivially elsewhere.
    for (p, e) in factorize(k) {
        let pe = p.pow(e);
        let rest = k / pe;
        let target = (0..k).find(|x| x % pe == (pe - 1) % pe && x % rest == 1 % rest)?;
        record(Place::Prime(p), target)?;
    }
    Some(out)
}
