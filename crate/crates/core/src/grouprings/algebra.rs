use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, PermGroup, Subgroup};

/// An element of the rational group algebra `ℚG`, stored sparsely.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Arc<PermGroup>,
    terms: BTreeMap<u32, BigRational>,
}

fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.degree() == b.degree() && a.elements() == b.elements())
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.terms == other.terms
    }
}

impl Eq for GroupAlgebraElement {}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}*g{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<PermGroup>) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<PermGroup>) -> Self {
        Self::from_element(group, group.identity())
    }

    pub fn from_element(group: &Arc<PermGroup>, g: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, BigRational::one());
        GroupAlgebraElement {
            group: group.clone(),
            terms,
        }
    }

    /// Builds `Σ c_g g`; zero coefficients are dropped and repeated
    /// elements summed.
    pub fn from_terms(group: &Arc<PermGroup>, terms: impl IntoIterator<Item = (u32, BigRational)>) -> Result<Self> {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            if g as usize >= group.order() {
                return Err(Error::NotInGroup(format!("element index {g}")));
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// `|X|⁻¹ Σ_{x ∈ X} x` for a non-empty set of elements.
    pub fn hat(group: &Arc<PermGroup>, elems: &[u32]) -> Result<Self> {
        let mut set: Vec<u32> = elems.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(Error::invalid("hat of the empty set"));
        }
        let c = BigRational::new(BigInt::one(), BigInt::from(set.len()));
        Self::from_terms(group, set.into_iter().map(|g| (g, c.clone())))
    }

    pub fn hat_subgroup(group: &Arc<PermGroup>, s: &Subgroup) -> Self {
        Self::hat(group, s.elements()).expect("subgroups are non-empty")
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, g: u32) -> BigRational {
        self.terms.get(&g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::MixedParents)
        }
    }

    pub fn ga_add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn ga_sub(&self, other: &Self) -> Result<Self> {
        self.ga_add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(&self.group);
        if !q.is_zero() {
            out.terms = self.terms.iter().map(|(g, c)| (*g, c * q)).collect();
        }
        out
    }

    pub fn ga_mul(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = Self::zero(&self.group);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(self.group.mul(*a, *b), x * y);
            }
        }
        Ok(out)
    }

    /// `g⁻¹ x g`, term by term.
    pub fn ga_conjugate(&self, g: u32) -> Self {
        let mut out = Self::zero(&self.group);
        for (a, c) in &self.terms {
            out.add_term(self.group.conjugate(*a, g), c.clone());
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_translate(&self, g: u32) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (self.group.mul(g, *a), c.clone()))
                .collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.ga_mul(self).expect("same parent") == *self
    }

    pub fn is_central(&self) -> bool {
        self.group
            .generator_ids()
            .iter()
            .all(|&g| self.ga_conjugate(g) == *self)
    }

    pub fn are_orthogonal(&self, other: &Self) -> Result<bool> {
        Ok(self.ga_mul(other)?.is_zero() && other.ga_mul(self)?.is_zero())
    }

    /// `{g ∈ G : g e = e}` for a central idempotent `e`.
    pub fn component_kernel(&self) -> Result<Subgroup> {
        if self.is_zero() || !self.is_central() || !self.is_idempotent() {
            return Err(Error::invalid("component_kernel: not a non-zero central idempotent"));
        }
        let kernel: Vec<u32> = (0..self.group.order() as u32)
            .filter(|&g| self.left_translate(g) == *self)
            .collect();
        self.group.subgroup_from_elements(&kernel)
    }
}

/// `component_kernel(G, e)`.
pub fn component_kernel(e: &GroupAlgebraElement) -> Result<Subgroup> {
    e.component_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::constructors::{quaternion, symmetric};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn spec_examples() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let whole = GroupAlgebraElement::hat_subgroup(&s3, &s3.whole());
        assert!(whole.is_idempotent());
        assert!(whole.is_central());
        assert!(!whole.scale(&q(2, 1)).is_idempotent());
        let triv = GroupAlgebraElement::hat(&s3, &[0]).unwrap();
        assert_eq!(triv, GroupAlgebraElement::one(&s3));
        let a3 = GroupAlgebraElement::hat_subgroup(&s3, &s3.derived_subgroup());
        let one = GroupAlgebraElement::one(&s3);
        let comp = one.ga_sub(&a3).unwrap();
        assert!(a3.ga_mul(&comp).unwrap().is_zero());
        assert!(GroupAlgebraElement::hat(&s3, &[]).is_err());
        assert_eq!(whole.component_kernel().unwrap().order(), 6);
        assert_eq!(comp.component_kernel().unwrap().order(), 1);
        assert!(GroupAlgebraElement::from_element(&s3, 1).component_kernel().is_err());
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = Arc::new(symmetric(3).unwrap());
        let b = Arc::new(quaternion(8).unwrap());
        let x = GroupAlgebraElement::one(&a);
        let y = GroupAlgebraElement::one(&b);
        assert_eq!(x.ga_mul(&y).unwrap_err(), Error::MixedParents);
        let a2 = Arc::new(symmetric(3).unwrap());
        assert!(x.ga_add(&GroupAlgebraElement::one(&a2)).is_ok());
    }
}
