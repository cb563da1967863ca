use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::numtheory::factorize;
use crate::perm::traits::{generated, FiniteGroup};
use crate::perm::{Perm, PermGroup};

/// Rings `(ℤ/m)G` with at most this many elements are enumerated.
pub const EXHAUSTIVE_RING_BOUND: u128 = 10_000_000;
/// Largest unit group turned into a permutation group (regular action).
pub const PERM_UNIT_GROUP_BOUND: usize = 2048;

/// The finite group ring `(ℤ/m)G`; elements are coefficient vectors
/// indexed by the elements of `G`.
#[derive(Clone, Debug)]
pub struct ModularGroupRing {
    group: Arc<PermGroup>,
    m: u64,
    primes: Vec<u64>,
}

impl ModularGroupRing {
    pub fn new(group: &Arc<PermGroup>, m: u64) -> Result<Self> {
        if !(2..=u16::MAX as u64).contains(&m) {
            return Err(Error::invalid(format!("modulus {m} outside 2..=65535")));
        }
        Ok(ModularGroupRing {
            group: group.clone(),
            m,
            primes: factorize(m).into_iter().map(|(p, _)| p).collect(),
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `m^{|G|}`, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        (self.m as u128).checked_pow(self.group.order() as u32)
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.group.order()];
        v[self.group.identity() as usize] = 1;
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.group.order();
        let mut out = vec![0u64; n];
        for (g, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (h, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let k = self.group.mul(g as u32, h as u32) as usize;
                out[k] = (out[k] + x as u64 * y as u64) % self.m;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Whether `x` is invertible: its left regular representation has unit
    /// determinant modulo every prime divisor of `m`.
    pub fn is_unit(&self, x: &[u32]) -> bool {
        self.primes.iter().all(|&p| self.det_nonzero_mod(x, p))
    }

    fn regular_matrix(&self, x: &[u32], p: u64) -> Vec<Vec<u64>> {
        let n = self.group.order();
        let mut m = vec![vec![0u64; n]; n];
        for (a, &c) in x.iter().enumerate().filter(|(_, c)| **c as u64 % p != 0) {
            for (g, col) in (0..n as u32).enumerate() {
                let row = self.group.mul(a as u32, col) as usize;
                m[row][g] = (m[row][g] + c as u64) % p;
            }
        }
        m
    }

    #[allow(clippy::needless_range_loop)]
    fn det_nonzero_mod(&self, x: &[u32], p: u64) -> bool {
        let n = self.group.order();
        if p == 2 && n <= 128 {
            return self.det_nonzero_mod2(x);
        }
        let mut m = self.regular_matrix(x, p);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
                return false;
            };
            m.swap(col, piv);
            let inv = crate::numtheory::pow_mod(m[col][col], p - 2, p);
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let f = m[r][col] * inv % p;
                    for c in col..n {
                        m[r][c] = (m[r][c] + (p - f) * m[col][c]) % p;
                    }
                }
            }
        }
        true
    }

    fn det_nonzero_mod2(&self, x: &[u32]) -> bool {
        let n = self.group.order();
        let mut rows = vec![0u128; n];
        for (a, _) in x.iter().enumerate().filter(|(_, c)| **c % 2 == 1) {
            for col in 0..n as u32 {
                rows[self.group.mul(a as u32, col) as usize] ^= 1u128 << col;
            }
        }
        for col in 0..n {
            let bit = 1u128 << col;
            let Some(piv) = (col..n).find(|&r| rows[r] & bit != 0) else {
                return false;
            };
            rows.swap(col, piv);
            let pr = rows[col];
            for r in rows.iter_mut().skip(col + 1) {
                if *r & bit != 0 {
                    *r ^= pr;
                }
            }
        }
        true
    }

    pub fn encode(&self, x: &[u32]) -> u64 {
        x.iter().rev().fold(0u64, |acc, &c| acc * self.m + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vec<u32> {
        (0..self.group.order())
            .map(|_| {
                let c = (code % self.m) as u32;
                code /= self.m;
                c
            })
            .collect()
    }
}

/// The unit group `U((ℤ/m)G)`, elements numbered in increasing order of
/// their base-`m` codes (so the identity is not element 0 in general).
#[derive(Debug, Clone)]
pub struct UnitGroup {
    ring: ModularGroupRing,
    codes: Vec<u64>,
    index: FxHashMap<u64, u32>,
    identity: u32,
    inverses: Vec<u32>,
    gens: Vec<u32>,
}

/// Enumerates `U((ℤ/m)G)` exhaustively.
pub fn unit_group_mod(group: &Arc<PermGroup>, m: u64) -> Result<UnitGroup> {
    let ring = ModularGroupRing::new(group, m)?;
    let size = ring.size().unwrap_or(u128::MAX);
    if size > EXHAUSTIVE_RING_BOUND {
        return Err(Error::SizeBound {
            what: "modular group ring",
            size,
            bound: EXHAUSTIVE_RING_BOUND,
        });
    }
    let n = group.order();
    let mut digits = vec![0u32; n];
    let mut codes = Vec::new();
    for code in 0..size as u64 {
        if ring.is_unit(&digits) {
            codes.push(code);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < m {
                break;
            }
            *d = 0;
        }
    }
    let index: FxHashMap<u64, u32> = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let identity = index[&ring.encode(&ring.one())];
    let mut u = UnitGroup {
        ring,
        codes,
        index,
        identity,
        inverses: Vec::new(),
        gens: Vec::new(),
    };
    u.inverses = u.compute_inverses();
    u.gens = u.greedy_generators();
    Ok(u)
}

impl UnitGroup {
    pub fn ring(&self) -> &ModularGroupRing {
        &self.ring
    }

    /// The ring element of unit number `i`.
    pub fn element(&self, i: u32) -> Vec<u32> {
        self.ring.decode(self.codes[i as usize])
    }

    pub fn index_of(&self, x: &[u32]) -> Option<u32> {
        self.index.get(&self.ring.encode(x)).copied()
    }

    fn compute_inverses(&self) -> Vec<u32> {
        let n = self.codes.len();
        let mut inv = vec![u32::MAX; n];
        for x in 0..n as u32 {
            if inv[x as usize] != u32::MAX {
                continue;
            }
            let mut powers = vec![self.identity];
            let mut y = x;
            while y != self.identity {
                powers.push(y);
                y = self.mul(y, x);
            }
            let ord = powers.len();
            for i in 0..ord {
                inv[powers[i] as usize] = powers[(ord - i) % ord];
            }
        }
        inv
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span: FixedBitSet = generated(self, &gens);
        for x in 0..self.codes.len() as u32 {
            if !span.contains(x as usize) {
                gens.push(x);
                span = generated(self, &gens);
            }
        }
        gens
    }

    /// The regular permutation representation, for `|U|` at most
    /// [`PERM_UNIT_GROUP_BOUND`].
    pub fn to_perm_group(&self) -> Result<PermGroup> {
        let n = self.codes.len();
        if n > PERM_UNIT_GROUP_BOUND {
            return Err(Error::SizeBound {
                what: "unit group as permutation group",
                size: n as u128,
                bound: PERM_UNIT_GROUP_BOUND as u128,
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|&s| Perm::from_images((0..n as u32).map(|x| self.mul(x, s)).collect()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_generators_bounded(n, gens, n)
    }
}

impl FiniteGroup for UnitGroup {
    fn order(&self) -> usize {
        self.codes.len()
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let x = self.ring.mul(&self.element(a), &self.element(b));
        self.index[&self.ring.encode(&x)]
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    fn gens(&self) -> Vec<u32> {
        self.gens.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::constructors::cyclic;
    use crate::perm::IsoOutcome;

    fn arc(g: PermGroup) -> Arc<PermGroup> {
        Arc::new(g)
    }

    #[test]
    fn spec_examples() {
        let c3 = arc(cyclic(3).unwrap());
        let u = unit_group_mod(&c3, 2).unwrap();
        assert_eq!(u.order(), 3);
        assert_eq!(
            u.to_perm_group().unwrap().is_isomorphic(&cyclic(3).unwrap()),
            IsoOutcome::Isomorphic
        );
        let c2 = arc(cyclic(2).unwrap());
        let u = unit_group_mod(&c2, 3).unwrap();
        assert_eq!(u.order(), 4);
        assert_eq!(crate::perm::traits::exponent(&u), 2);
        let triv = arc(PermGroup::trivial(1));
        for m in [2u64, 5, 12] {
            let u = unit_group_mod(&triv, m).unwrap();
            assert_eq!(u.order() as u64, crate::numtheory::euler_phi(m).unwrap());
        }
        assert!(matches!(
            unit_group_mod(&arc(cyclic(30).unwrap()), 2),
            Err(Error::SizeBound { .. })
        ));
        assert!(ModularGroupRing::new(&c2, 1).is_err());
    }

    #[test]
    fn inverses_are_inverses() {
        let c4 = arc(cyclic(4).unwrap());
        let u = unit_group_mod(&c4, 4).unwrap();
        for x in 0..u.order() as u32 {
            assert_eq!(u.mul(x, u.inv(x)), u.identity());
        }
    }
}
