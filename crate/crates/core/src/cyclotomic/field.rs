use std::fmt;

use num_integer::Integer;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::number::CycNumber;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi};

/// An abelian number field, the fixed field in `ℚ(ζ_n)` of
/// `{σ_t : t ∈ H}`, stored with `n` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub struct AbelianField {
    conductor: u64,
    /// All elements of `H`, sorted, as residues mod the conductor.
    stabilizer: Vec<u64>,
}

pub(crate) fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|t| t.gcd(&n) == 1).collect()
}

fn closure(n: u64, gens: &[u64]) -> Vec<u64> {
    let one = 1 % n;
    let mut set = vec![one];
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (x * g) % n;
            if !set.contains(&y) {
                set.push(y);
                frontier.push(y);
            }
        }
    }
    set.sort_unstable();
    set
}

/// Greedy generating set of a subgroup given by all its elements.
fn generators_of(n: u64, h: &[u64]) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span = closure(n, &gens);
    for &t in h {
        if !span.contains(&t) {
            gens.push(t);
            span = closure(n, &gens);
        }
    }
    gens
}

impl AbelianField {
    pub fn rationals() -> Self {
        AbelianField {
            conductor: 1,
            stabilizer: vec![0],
        }
    }

    /// `ℚ(ζ_n)`.
    pub fn cyclotomic(n: u64) -> Self {
        Self::canonical(n.max(1), vec![1 % n.max(1)])
    }

    /// The fixed field of the subgroup generated by `gens` in `(ℤ/n)ˣ`.
    pub fn fixed_field(n: u64, gens: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("fixed_field: n must be positive"));
        }
        let mut g = Vec::with_capacity(gens.len());
        for &t in gens {
            let r = t.rem_euclid(n as i64) as u64;
            if r.gcd(&n) != 1 && n > 1 {
                return Err(Error::invalid(format!("fixed_field: {t} is not coprime to {n}")));
            }
            g.push(r);
        }
        let h = closure(n, &g);
        Ok(Self::canonical(n, h))
    }

    fn canonical(n: u64, h: Vec<u64>) -> Self {
        for f in divisors(n) {
            let kernel_inside = units_mod(n)
                .into_iter()
                .filter(|t| t % f == 1 % f)
                .all(|t| h.binary_search(&t).is_ok());
            if kernel_inside {
                let mut hf: Vec<u64> = h.iter().map(|t| t % f).collect();
                hf.sort_unstable();
                hf.dedup();
                return AbelianField {
                    conductor: f,
                    stabilizer: hf,
                };
            }
        }
        unreachable!("f = n always qualifies")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    /// A generating set of the stabilizer, smallest residues first.
    pub fn stabilizer_generators(&self) -> Vec<u64> {
        generators_of(self.conductor, &self.stabilizer)
    }

    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor).expect("positive") / self.stabilizer.len() as u64
    }

    pub fn is_rationals(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_totally_real(&self) -> bool {
        self.conductor <= 2 || self.stabilizer.binary_search(&(self.conductor - 1)).is_ok()
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        self.degree() == 2 && !self.is_totally_real()
    }

    /// Whether `H` is trivial, i.e. the field is `ℚ(ζ_n)`.
    pub fn is_cyclotomic(&self) -> bool {
        self.stabilizer.len() == 1
    }

    /// The preimage of `H` in `(ℤ/m)ˣ`; `m` a multiple of the conductor.
    pub fn stabilizer_mod(&self, m: u64) -> Vec<u64> {
        assert!(m % self.conductor == 0);
        units_mod(m)
            .into_iter()
            .filter(|t| self.stabilizer.binary_search(&(t % self.conductor)).is_ok())
            .collect()
    }

    pub fn contains(&self, x: &CycNumber) -> bool {
        let m = self.conductor.lcm(&x.conductor());
        let h = self.stabilizer_mod(m);
        generators_of(m, &h)
            .into_iter()
            .all(|t| &x.galois_apply(t as i64).expect("unit") == x)
    }

    pub fn is_subfield_of(&self, other: &AbelianField) -> bool {
        let m = self.conductor.lcm(&other.conductor);
        let mine = self.stabilizer_mod(m);
        other.stabilizer_mod(m).iter().all(|t| mine.binary_search(t).is_ok())
    }

    /// The number of roots of unity in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        let m = self.conductor.lcm(&2);
        divisors(m)
            .into_iter()
            .rev()
            .find(|&w| self.contains(&CycNumber::root_of_unity(w, 1)))
            .expect("w = 2 always qualifies")
    }

    /// Whether `√d` lies in the field, for an integer `d ≠ 0`.
    pub fn contains_sqrt(&self, d: i64) -> bool {
        self.contains(&CycNumber::sqrt_int(d))
    }

    /// Smallest representatives of the cosets of `H`, one per embedding.
    pub fn embedding_representatives(&self) -> Vec<u64> {
        let n = self.conductor;
        let mut seen: Vec<u64> = Vec::new();
        let mut reps = Vec::new();
        for t in units_mod(n) {
            if seen.binary_search(&t).is_ok() {
                continue;
            }
            reps.push(t);
            for h in &self.stabilizer {
                let y = if n == 1 { 0 } else { (t * h) % n };
                if let Err(pos) = seen.binary_search(&y) {
                    seen.insert(pos, y);
                }
            }
        }
        reps
    }

    /// `d` with the field equal to `ℚ(√d)`, `d` squarefree; degree 2 only.
    pub fn quadratic_radicand(&self) -> Option<i64> {
        if self.degree() != 2 {
            return None;
        }
        let f = self.conductor as i64;
        let disc = if self.is_totally_real() { f } else { -f };
        Some(if f % 2 == 1 { disc } else { disc / 4 })
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            return write!(f, "Q");
        }
        if let Some(d) = self.quadratic_radicand() {
            return if d == -1 {
                write!(f, "Q(i)")
            } else {
                write!(f, "Q(sqrt({d}))")
            };
        }
        if self.is_cyclotomic() {
            return write!(f, "Q(zeta_{})", self.conductor);
        }
        let gens: Vec<String> = self.stabilizer_generators().iter().map(|t| t.to_string()).collect();
        write!(f, "Fix({}; {})", self.conductor, gens.join(","))
    }
}
