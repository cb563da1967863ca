//! Exact arithmetic in cyclotomic fields, abelian subfields as fixed fields
//! and certified signs at real embeddings.

mod field;
mod number;
mod poly;
mod signs;

pub use field::AbelianField;
pub use number::CycNumber;
pub use signs::real_embedding_signs;

use crate::error::{Error, Result};

/// `d = e²` with `e = ζ_k^j − σ(ζ_k^j)` for the least `j` making `e ≠ 0`, so
/// that `ℚ(ζ_k) = F(√d)`. `σ = σ_t` must generate `Gal(ℚ(ζ_k)/F)`.
pub fn quadratic_generator(k: u64, field: &AbelianField, sigma: u64) -> Result<CycNumber> {
    let e_field = AbelianField::cyclotomic(k);
    if !field.is_subfield_of(&e_field) || field.degree() * 2 != e_field.degree() {
        return Err(Error::invalid(format!(
            "quadratic_generator: {field} is not an index-2 subfield of Q(zeta_{k})"
        )));
    }
    let m = num_integer::Integer::lcm(&k, &field.conductor());
    let fixes_f = field.stabilizer_mod(m).contains(&(sigma % m));
    if !fixes_f || sigma % k == 1 % k {
        return Err(Error::invalid(format!(
            "quadratic_generator: sigma_{sigma} is not the non-trivial automorphism over {field}"
        )));
    }
    for j in 1..=k as i64 {
        let z = CycNumber::root_of_unity(k, j);
        let e = z.sub(&z.galois_apply(sigma as i64)?);
        if !e.is_zero() {
            let d = e.square();
            assert!(field.contains(&d), "e^2 lies in the fixed field");
            return Ok(d);
        }
    }
    unreachable!("sigma acts non-trivially on zeta_k")
}
