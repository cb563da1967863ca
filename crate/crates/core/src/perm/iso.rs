//! Isomorphism testing by invariant rejection and generator-image backtracking.

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::traits::FiniteGroup;

/// Default number of backtracking nodes before giving up as undecided.
pub const DEFAULT_ISO_NODE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    /// The search hit its node limit.
    Undecided,
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSignature {
    pub order: usize,
    pub exponent: u64,
    /// Sorted `(element order, class size, number of such classes)`.
    pub classes: Vec<(u64, usize, usize)>,
    pub abelianization: Vec<u64>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl PermGroup {
    pub fn signature(&self) -> GroupSignature {
        let mut classes: Vec<(u64, usize)> = self
            .conjugacy_classes()
            .iter()
            .map(|c| (self.element_order(c[0]), c.len()))
            .collect();
        classes.sort_unstable();
        let mut grouped: Vec<(u64, usize, usize)> = Vec::new();
        for (o, s) in classes {
            match grouped.last_mut() {
                Some(last) if last.0 == o && last.1 == s => last.2 += 1,
                _ => grouped.push((o, s, 1)),
            }
        }
        GroupSignature {
            order: self.order(),
            exponent: self.exponent(),
            classes: grouped,
            abelianization: self.abelianization_invariants(),
            center_order: self.center().order(),
            derived_order: self.derived_subgroup().order(),
        }
    }

    /// Per-element `(order, class size)` labels.
    fn element_labels(&self) -> Vec<(u64, usize)> {
        let mut labels = vec![(0, 0); self.order()];
        for class in self.conjugacy_classes() {
            let o = self.element_order(class[0]);
            for &x in &class {
                labels[x as usize] = (o, class.len());
            }
        }
        labels
    }

    pub fn is_isomorphic(&self, other: &PermGroup) -> IsoOutcome {
        self.is_isomorphic_limited(other, DEFAULT_ISO_NODE_LIMIT)
    }

    pub fn is_isomorphic_limited(&self, other: &PermGroup, node_limit: u64) -> IsoOutcome {
        if self.order() != other.order() {
            return IsoOutcome::NotIsomorphic;
        }
        if self.signature() != other.signature() {
            return IsoOutcome::NotIsomorphic;
        }
        let gens = self.small_generating_set(&(0..self.order() as u32).collect::<Vec<_>>());
        let mine = self.element_labels();
        let theirs = other.element_labels();
        let candidates: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| {
                (0..other.order() as u32)
                    .filter(|&y| theirs[y as usize] == mine[g as usize])
                    .collect()
            })
            .collect();
        let mut search = Search {
            src: self,
            dst: other,
            gens: &gens,
            candidates: &candidates,
            nodes: 0,
            limit: node_limit,
        };
        let mut images = Vec::with_capacity(gens.len());
        match search.extend(&mut images) {
            Some(true) => IsoOutcome::Isomorphic,
            Some(false) => IsoOutcome::NotIsomorphic,
            None => IsoOutcome::Undecided,
        }
    }
}

struct Search<'a> {
    src: &'a PermGroup,
    dst: &'a PermGroup,
    gens: &'a [u32],
    candidates: &'a [Vec<u32>],
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// `Some(found)` when the subtree was fully explored or a map found,
    /// `None` when the node limit was reached.
    fn extend(&mut self, images: &mut Vec<u32>) -> Option<bool> {
        let level = images.len();
        if level == self.gens.len() {
            return Some(true);
        }
        for &y in &self.candidates[level] {
            self.nodes += 1;
            if self.nodes > self.limit {
                return None;
            }
            images.push(y);
            if self.consistent(images) {
                match self.extend(images) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            images.pop();
        }
        Some(false)
    }

    /// Whether `gens[i] ↦ images[i]` extends to an injective homomorphism on
    /// the subgroup generated by the prefix.
    #[allow(clippy::needless_range_loop)]
    fn consistent(&self, images: &[u32]) -> bool {
        let n = self.src.order();
        let k = images.len();
        let mut map = vec![u32::MAX; n];
        let mut used = vec![false; self.dst.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for j in 0..k {
                let xs = self.src.mul(x, self.gens[j]);
                let ys = self.dst.mul(map[x as usize], images[j]);
                match map[xs as usize] {
                    u32::MAX => {
                        if used[ys as usize] {
                            return false;
                        }
                        used[ys as usize] = true;
                        map[xs as usize] = ys;
                        queue.push(xs);
                    }
                    existing if existing != ys => return false,
                    _ => {}
                }
            }
        }
        true
    }
}
