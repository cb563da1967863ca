//! Algorithms shared by every finite group we can multiply in: permutation
//! groups and unit groups of modular group rings.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::numtheory::factorize;

/// A finite group whose elements are numbered `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    /// A generating set.
    fn gens(&self) -> Vec<u32>;

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, a: u32) -> u64 {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }
}

/// Closure of a set of elements under multiplication (the generated subgroup),
/// as a membership bitset.
pub fn generated<G: FiniteGroup + ?Sized>(g: &G, gens: &[u32]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.order());
    let id = g.identity();
    set.insert(id as usize);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !set.put(y as usize) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Normal closure of `seeds` in `g`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, seeds: &[u32]) -> FixedBitSet {
    let ggens = g.gens();
    let mut gens: Vec<u32> = seeds.to_vec();
    loop {
        let set = generated(g, &gens);
        let mut extra = None;
        'outer: for &s in &gens {
            for &t in &ggens {
                let c = g.conjugate(s, t);
                if !set.contains(c as usize) {
                    extra = Some(c);
                    break 'outer;
                }
            }
        }
        match extra {
            Some(c) => gens.push(c),
            None => return set,
        }
    }
}

pub fn derived_subgroup_set<G: FiniteGroup + ?Sized>(g: &G) -> FixedBitSet {
    let gens = g.gens();
    let mut comms = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            comms.push(g.commutator(x, y));
        }
    }
    normal_closure(g, &comms)
}

pub fn exponent<G: FiniteGroup + ?Sized>(g: &G) -> u64 {
    (0..g.order() as u32).fold(1u64, |acc, x| acc.lcm(&g.element_order(x)))
}

/// Number of conjugacy classes (orbits of conjugation by the generators).
pub fn class_count<G: FiniteGroup + ?Sized>(g: &G) -> usize {
    conjugacy_class_partition(g).len()
}

pub fn conjugacy_class_partition<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Vec<u32>> {
    let gens = g.gens();
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut classes = Vec::new();
    for start in 0..n as u32 {
        if seen.put(start as usize) {
            continue;
        }
        let mut class = vec![start];
        let mut i = 0;
        while i < class.len() {
            let x = class[i];
            for &s in &gens {
                let y = g.conjugate(x, s);
                if !seen.put(y as usize) {
                    class.push(y);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Invariant factors `d_1 | d_2 | …` (ascending, all > 1) of an abelian group
/// described by the orders of its elements.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n <= 1 {
        return Vec::new();
    }
    // For each prime, the ranks of the p-primary part from |A[p^j]|.
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (p, e) in factorize(n) {
        let mut counts = Vec::new(); // log_p |A[p^j]| for j = 0..=e
        for j in 0..=e {
            let pj = p.pow(j);
            let c = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            let mut l = 0;
            let mut t = c;
            while t > 1 {
                t /= p;
                l += 1;
            }
            counts.push(l);
        }
        // Number of cyclic factors of order ≥ p^j is counts[j] - counts[j-1].
        let mut at_least: Vec<u64> = (1..counts.len()).map(|j| counts[j] - counts[j - 1]).collect();
        at_least.push(0);
        let mut elementary = Vec::new();
        for j in 1..counts.len() {
            let exact = at_least[j - 1] - at_least[j];
            for _ in 0..exact {
                elementary.push(p.pow(j as u32));
            }
        }
        elementary.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(elementary);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().filter_map(|v| v.get(i)).product())
        .collect();
    factors.sort_unstable();
    factors
}

/// Invariant factors of `G / [G, G]`.
pub fn abelianization_invariants<G: FiniteGroup + ?Sized>(g: &G) -> Vec<u64> {
    let derived = derived_subgroup_set(g);
    let n = g.order();
    let dsize = derived.count_ones(..);
    // Coset representatives of the derived subgroup and their orders in G/G'.
    let mut labelled = FixedBitSet::with_capacity(n);
    let dmembers: Vec<u32> = derived.ones().map(|x| x as u32).collect();
    let mut orders = Vec::with_capacity(n / dsize.max(1));
    for x in 0..n as u32 {
        if labelled.contains(x as usize) {
            continue;
        }
        for &d in &dmembers {
            labelled.insert(g.mul(d, x) as usize);
        }
        let mut y = x;
        let mut k = 1;
        while !derived.contains(y as usize) {
            y = g.mul(y, x);
            k += 1;
        }
        orders.push(k);
    }
    invariant_factors_from_orders(&orders)
}

/// Multiset of element orders, as a sorted map order ↦ count.
pub fn order_statistics<G: FiniteGroup + ?Sized>(g: &G) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for x in 0..g.order() as u32 {
        *m.entry(g.element_order(x)).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_reconstruction() {
        // C2 × C2
        assert_eq!(invariant_factors_from_orders(&[1, 2, 2, 2]), vec![2, 2]);
        // C6 = C2 × C3
        assert_eq!(invariant_factors_from_orders(&[1, 6, 3, 2, 3, 6]), vec![6]);
        // C4
        assert_eq!(invariant_factors_from_orders(&[1, 4, 2, 4]), vec![4]);
        assert_eq!(invariant_factors_from_orders(&[1]), Vec::<u64>::new());
    }
}
