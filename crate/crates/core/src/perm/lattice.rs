//! Subgroup lattices, normal subgroups and quotients.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use super::group::PermGroup;
use super::perm::Perm;
use super::subgroup::Subgroup;
use super::traits::FiniteGroup;
use crate::error::{Error, Result};
use crate::numtheory::factorize;

pub const DEFAULT_SUBGROUP_BOUND: usize = 400;
pub const DEFAULT_NORMAL_SUBGROUP_BOUND: usize = 2048;

/// `G/N` together with the projection `G → G/N` on element numbers.
#[derive(Debug)]
pub struct Quotient {
    pub group: PermGroup,
    pub projection: Vec<u32>,
}

fn is_prime_power(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1
}

impl PermGroup {
    /// One generator for each cyclic subgroup of prime-power order.
    fn prime_power_cyclic_generators(&self) -> Vec<u32> {
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        let mut out = Vec::new();
        for x in 0..self.order() as u32 {
            if !is_prime_power(self.element_order(x)) {
                continue;
            }
            let c = self.subgroup_generated(&[x]);
            if seen.insert(c.members().clone()) {
                out.push(x);
            }
        }
        out
    }

    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_bounded(DEFAULT_SUBGROUP_BOUND)
    }

    /// Every subgroup exactly once, built layer by layer by adjoining one
    /// cyclic subgroup of prime-power order at a time (every subgroup is
    /// generated by its prime-power elements).
    pub fn all_subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order() > bound {
            return Err(Error::SizeBound {
                what: "subgroup enumeration",
                size: self.order() as u128,
                bound: bound as u128,
            });
        }
        let cyclic = self.prime_power_cyclic_generators();
        let trivial = self.trivial_subgroup();
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        seen.insert(trivial.members().clone());
        let mut all = vec![trivial.clone()];
        let mut frontier = vec![trivial];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for &c in &cyclic {
                    if h.contains(c) {
                        continue;
                    }
                    let k = self.join(h, &[c]);
                    if seen.insert(k.members().clone()) {
                        next.push(k);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(all)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.normal_subgroups_bounded(DEFAULT_NORMAL_SUBGROUP_BOUND)
    }

    /// All normal subgroups, as joins of normal closures of conjugacy classes.
    pub fn normal_subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order() > bound {
            return Err(Error::SizeBound {
                what: "normal subgroup enumeration",
                size: self.order() as u128,
                bound: bound as u128,
            });
        }
        let classes = self.conjugacy_classes();
        let mut closures: Vec<Subgroup> = Vec::new();
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        for class in classes.iter().skip(1) {
            let nc = self.normal_closure(&[class[0]]);
            if seen.insert(nc.members().clone()) {
                closures.push(nc);
            }
        }
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.members().clone());
        let mut all = vec![trivial];
        all.extend(closures.iter().cloned());
        let mut frontier = closures.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for n in &frontier {
                for c in &closures {
                    if c.is_subgroup_of(n) {
                        continue;
                    }
                    let j = self.join(n, c.gens());
                    if seen.insert(j.members().clone()) {
                        next.push(j);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(all)
    }

    /// `G/N` acting regularly on the cosets of `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        self.check_subgroup(n)?;
        if !self.is_normal(n) {
            return Err(Error::invalid("quotient: subgroup is not normal"));
        }
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::new();
        for x in 0..order as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for &m in n.elements() {
                coset_of[self.mul(m, x) as usize] = id;
            }
            reps.push(x);
        }
        let degree = reps.len();
        let action = |g: u32| -> Perm {
            let images = reps.iter().map(|&r| coset_of[self.mul(r, g) as usize]).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = self.generator_ids().iter().map(|&g| action(g)).collect();
        let group = PermGroup::from_generators_bounded(degree, gens, usize::MAX)?;
        let projection = (0..order as u32)
            .map(|x| {
                // The image of x is determined by its coset.
                let r = reps[coset_of[x as usize] as usize];
                if r == x {
                    group.index_of(&action(x)).expect("image in quotient")
                } else {
                    u32::MAX
                }
            })
            .collect::<Vec<_>>();
        let projection = (0..order)
            .map(|x| projection[reps[coset_of[x] as usize] as usize])
            .collect();
        Ok(Quotient { group, projection })
    }

    /// Orders of `G/N` over all normal subgroups `N`, sorted and deduplicated.
    pub fn quotient_orders(&self) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = self
            .normal_subgroups()?
            .iter()
            .map(|n| self.order() / n.order())
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}
