use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

use super::perm::Perm;
use super::subgroup::Subgroup;
use super::traits::{self, FiniteGroup};
use crate::error::{Error, Result};

/// Default bound on the order of a fully enumerated group.
pub const DEFAULT_ENUMERATION_BOUND: usize = 10_000;
/// Groups up to this order carry a full Cayley table.
const CAYLEY_TABLE_BOUND: usize = 4096;

/// A finite permutation group with all of its elements enumerated.
///
/// Elements are numbered by their position in lexicographic order of image
/// vectors, so the identity is always element `0` and numbering does not
/// depend on the generators used.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    gen_ids: Vec<u32>,
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    table: Option<Vec<u16>>,
    inverses: Vec<u32>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::from_generators_bounded(degree, generators, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn from_generators_bounded(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::invalid(format!(
                    "generator {g} has degree {} but the group acts on {degree} points",
                    g.degree()
                )));
            }
        }
        let generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut seen: FxHashMap<Perm, ()> = FxHashMap::default();
        seen.insert(id.clone(), ());
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in &generators {
                let y = elements[i].then(g);
                if !seen.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::SizeBound {
                            what: "group enumeration",
                            size: (elements.len() + 1) as u128,
                            bound: bound as u128,
                        });
                    }
                    seen.insert(y.clone(), ());
                    elements.push(y);
                }
            }
            i += 1;
        }
        drop(seen);
        elements.sort_unstable();
        let index: FxHashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let gen_ids = generators.iter().map(|g| index[g]).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut group = PermGroup {
            degree,
            generators,
            gen_ids,
            elements,
            index,
            table: None,
            inverses,
        };
        if group.order() <= CAYLEY_TABLE_BOUND {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    /// Fills the Cayley table column by column along a spanning tree of the
    /// right Cayley graph: `x·(y·s) = (x·y)·s`.
    fn build_table(&self) -> Vec<u16> {
        let n = self.order();
        let ngens = self.gen_ids.len();
        let mut right_gen = vec![0u32; n * ngens];
        for x in 0..n {
            for (k, g) in self.generators.iter().enumerate() {
                right_gen[x * ngens + k] = self.index[&self.elements[x].then(g)];
            }
        }
        let mut table = vec![0u16; n * n];
        let mut done = FixedBitSet::with_capacity(n);
        for x in 0..n {
            table[x * n] = x as u16;
        }
        done.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(y) = queue.pop_front() {
            for k in 0..ngens {
                let ys = right_gen[y * ngens + k] as usize;
                if done.put(ys) {
                    continue;
                }
                for x in 0..n {
                    let xy = table[x * n + y] as usize;
                    table[x * n + ys] = right_gen[xy * ngens + k] as u16;
                }
                queue.push_back(ys);
            }
        }
        table
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.gen_ids
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_ids;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        (0..self.order() as u32).any(|x| self.element_order(x) == n)
    }

    /// SHA-256 over the sorted element list; identical for equal permutation
    /// groups regardless of the generators used.
    pub fn elements_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.degree as u64).to_le_bytes());
        for p in &self.elements {
            for &x in p.images() {
                h.update(x.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    // ---- subgroups ---------------------------------------------------------

    pub fn whole(&self) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert_range(..);
        Subgroup::from_parts(set, self.gen_ids.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert(0);
        Subgroup::from_parts(set, Vec::new())
    }

    pub fn subgroup_generated(&self, gens: &[u32]) -> Subgroup {
        self.join(&self.trivial_subgroup(), gens)
    }

    /// `⟨h, extra⟩`, grown one right coset of `h` at a time.
    pub fn join(&self, h: &Subgroup, extra: &[u32]) -> Subgroup {
        let mut gens: Vec<u32> = h.gens().to_vec();
        let mut set = h.members().clone();
        let base: Vec<u32> = h.elements().to_vec();
        let mut reps: Vec<u32> = vec![0];
        for &c in extra {
            if !set.contains(c as usize) {
                gens.push(c);
            }
        }
        if gens.len() == h.gens().len() {
            return h.clone();
        }
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &g in &gens {
                let y = self.mul(r, g);
                if !set.contains(y as usize) {
                    for &b in &base {
                        set.insert(self.mul(b, y) as usize);
                    }
                    reps.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_parts(set, gens)
    }

    /// Checks closure and returns the subgroup with the given members.
    pub fn subgroup_from_elements(&self, elems: &[u32]) -> Result<Subgroup> {
        let mut set = FixedBitSet::with_capacity(self.order());
        for &e in elems {
            if e as usize >= self.order() {
                return Err(Error::NotInGroup(format!("element index {e}")));
            }
            set.insert(e as usize);
        }
        let s = self.subgroup_generated(elems);
        if s.members() != &set {
            return Err(Error::invalid("element set is not closed under multiplication"));
        }
        Ok(s)
    }

    pub fn check_subgroup(&self, s: &Subgroup) -> Result<()> {
        if s.members().len() != self.order() {
            return Err(Error::NotInGroup("subgroup of a different group".into()));
        }
        Ok(())
    }

    pub fn conjugate_subgroup(&self, s: &Subgroup, g: u32) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        for &x in s.elements() {
            set.insert(self.conjugate(x, g) as usize);
        }
        let gens = s.gens().iter().map(|&x| self.conjugate(x, g)).collect();
        Subgroup::from_parts(set, gens)
    }

    fn normalizes(&self, g: u32, s: &Subgroup) -> bool {
        s.gens().iter().all(|&x| s.contains(self.conjugate(x, g)))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.gen_ids.iter().all(|&g| self.normalizes(g, s))
    }

    /// Whether `k` is normal in `h` (both subgroups of this group).
    pub fn is_normal_in(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.is_subgroup_of(h) && h.gens().iter().all(|&g| self.normalizes(g, k))
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32).filter(|&g| self.normalizes(g, s)).collect();
        self.subgroup_from_members(&members)
    }

    /// Normalizer of `s` inside the subgroup `within`.
    pub fn normalizer_in(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let members: Vec<u32> = within
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.normalizes(g, s))
            .collect();
        self.subgroup_from_members(&members)
    }

    pub(crate) fn subgroup_from_members(&self, members: &[u32]) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        for &m in members {
            set.insert(m as usize);
        }
        let gens = self.small_generating_set(members);
        Subgroup::from_parts(set, gens)
    }

    /// Greedy generating set: repeatedly add the element of largest order not
    /// yet generated.
    pub(crate) fn small_generating_set(&self, members: &[u32]) -> Vec<u32> {
        let mut by_order: Vec<(u64, u32)> = members.iter().map(|&m| (self.element_order(m), m)).collect();
        by_order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut current = self.trivial_subgroup();
        let mut gens = Vec::new();
        for (_, m) in by_order {
            if current.order() == members.len() {
                break;
            }
            if !current.contains(m) {
                gens.push(m);
                current = self.join(&current, &[m]);
            }
        }
        gens
    }

    pub fn centralizer(&self, x: u32) -> Result<Subgroup> {
        if x as usize >= self.order() {
            return Err(Error::NotInGroup(format!("element index {x}")));
        }
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Ok(self.subgroup_from_members(&members))
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&z| self.gen_ids.iter().all(|&g| self.mul(g, z) == self.mul(z, g)))
            .collect();
        self.subgroup_from_members(&members)
    }

    /// Conjugacy classes; the first is `{1}`, the rest ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        traits::conjugacy_class_partition(self)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let set = traits::derived_subgroup_set(self);
        let members: Vec<u32> = set.ones().map(|x| x as u32).collect();
        self.subgroup_from_members(&members)
    }

    pub fn normal_closure(&self, seeds: &[u32]) -> Subgroup {
        let set = traits::normal_closure(self, seeds);
        let members: Vec<u32> = set.ones().map(|x| x as u32).collect();
        self.subgroup_from_members(&members)
    }

    pub fn abelianization_invariants(&self) -> Vec<u64> {
        traits::abelianization_invariants(self)
    }

    pub fn exponent(&self) -> u64 {
        traits::exponent(self)
    }

    /// The subgroup `s` as a permutation group in its own right.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> PermGroup {
        let gens = s.gens().iter().map(|&g| self.element(g).clone()).collect();
        PermGroup::from_generators(self.degree, gens).expect("subgroup within bound")
    }

    /// True iff every Sylow subgroup is cyclic, i.e. for each prime `p` there
    /// is an element whose order is the full `p`-part of `|G|`.
    pub fn is_zgroup(&self) -> bool {
        let n = self.order() as u64;
        let orders: Vec<u64> = (0..self.order() as u32).map(|x| self.element_order(x)).collect();
        crate::numtheory::factorize(n).into_iter().all(|(p, e)| {
            let pe = p.pow(e);
            orders.iter().any(|o| o % pe == 0)
        })
    }
}

impl FiniteGroup for PermGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> u32 {
        0
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize] as u32,
            None => self.index[&self.elements[a as usize].then(&self.elements[b as usize])],
        }
    }

    #[inline]
    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    fn gens(&self) -> Vec<u32> {
        self.gen_ids.clone()
    }
}
