//! Strong Shoda pairs and the Wedderburn decomposition of `ℚG` for strongly
//! monomial groups.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::AbelianField;
use crate::error::{Error, Result};
use crate::grouprings::GroupAlgebraElement;
use crate::numtheory::{euler_phi, factorize};
use crate::perm::{FiniteGroup, PermGroup, Subgroup};

/// A strong Shoda pair `(H, K)` with `N = N_G(K)` and its idempotents.
#[derive(Debug, Clone)]
pub struct ShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    pub n: Subgroup,
    pub epsilon: GroupAlgebraElement,
    pub e: GroupAlgebraElement,
}

/// Subgroup data of the pair a component came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub h_order: usize,
    pub k_order: usize,
    pub n_order: usize,
    pub h_generators: Vec<u32>,
    pub k_generators: Vec<u32>,
}

/// The crossed product `M_m(ℚ(ζ_k) * N/H)` attached to a strong Shoda pair.
///
/// Cosets of `H` in `N` are numbered by position in `coset_reps` (each the
/// least element of its coset; position 0 is `H` itself). With `ζ = hε` and
/// `u_r = rε`: `u_r⁻¹ ζ u_r = ζ^{action[r]}` and
/// `u_r u_s = ζ^{cocycle[r][s]} u_{coset_mul[r][s]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleComponentDescriptor {
    pub matrix_size: u64,
    pub cyclotomic_order: u64,
    pub crossed_degree: u64,
    pub generator: u32,
    pub coset_reps: Vec<u32>,
    pub action: Vec<u64>,
    pub cocycle: Vec<Vec<u64>>,
    pub coset_mul: Vec<Vec<usize>>,
    pub center: AbelianField,
    pub origin: PairSummary,
}

impl SimpleComponentDescriptor {
    /// `m² · d · φ(k)`.
    pub fn rational_dimension(&self) -> u64 {
        self.matrix_size.pow(2) * self.crossed_degree * euler_phi(self.cyclotomic_order).expect("k >= 1")
    }

    /// Whether `N/H` is cyclic.
    pub fn is_cyclic_crossed_product(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// The least coset generating `N/H`, if the quotient is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let d = self.crossed_degree as usize;
        if d == 1 {
            return Some(0);
        }
        (1..d).find(|&r| self.coset_power_order(r) == d)
    }

    fn coset_power_order(&self, r: usize) -> usize {
        let mut x = r;
        let mut k = 1;
        while x != 0 {
            x = self.coset_mul[x][r];
            k += 1;
        }
        k
    }

    /// `(j, s)` with `u_r^j = ζ^s` where `j` is the order of the coset `r`.
    pub fn power_exponent(&self, r: usize) -> (usize, u64) {
        let k = self.cyclotomic_order;
        let mut x = r;
        let mut s = 0u64;
        let mut j = 1;
        while x != 0 {
            s = (s + self.cocycle[x][r]) % k;
            x = self.coset_mul[x][r];
            j += 1;
        }
        (j, s)
    }

    /// `c` with `u_s u_r = ζ^c u_r u_s`.
    pub fn commutator_exponent(&self, r: usize, s: usize) -> u64 {
        let k = self.cyclotomic_order as i64;
        (self.cocycle[s][r] as i64 - self.cocycle[r][s] as i64).rem_euclid(k) as u64
    }

    /// The `(matrix size, center)` summary.
    pub fn info(&self) -> (u64, AbelianField) {
        (self.matrix_size, self.center.clone())
    }
}

/// Result of [`decompose`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub group_order: usize,
    pub components: Vec<SimpleComponentDescriptor>,
    pub pairs: Vec<ShodaPair>,
    pub complete: bool,
}

impl Decomposition {
    pub fn total_dimension(&self) -> u64 {
        self.components.iter().map(|c| c.rational_dimension()).sum()
    }
}

/// Outcome of [`is_strong_shoda_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShodaCheck {
    pub is_strong: bool,
    pub reason: Option<String>,
}

impl ShodaCheck {
    fn yes() -> Self {
        ShodaCheck {
            is_strong: true,
            reason: None,
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        ShodaCheck {
            is_strong: false,
            reason: Some(reason.into()),
        }
    }
}

// ---- integer-scaled idempotents -------------------------------------------

/// `num / den` as a dense coefficient vector over the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Scaled {
    den: i64,
    num: Vec<i64>,
}

impl Scaled {
    fn reduced(mut self) -> Self {
        let g = self.num.iter().fold(self.den, |acc, &x| acc.gcd(&x));
        if g > 1 {
            self.den /= g;
            for x in self.num.iter_mut() {
                *x /= g;
            }
        }
        self
    }

    fn support(&self) -> Vec<(u32, i64)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i as u32, *c))
            .collect()
    }

    fn to_element(&self, g: &Arc<PermGroup>) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            g,
            self.support()
                .into_iter()
                .map(|(x, c)| (x, BigRational::new(BigInt::from(c), BigInt::from(self.den)))),
        )
        .expect("indices in range")
    }
}

fn conjugate_support(g: &PermGroup, s: &[(u32, i64)], t: u32) -> Vec<(u32, i64)> {
    s.iter().map(|&(x, c)| (g.conjugate(x, t), c)).collect()
}

fn product_is_zero(g: &PermGroup, a: &[(u32, i64)], b: &[(u32, i64)], scratch: &mut [i64]) -> bool {
    let mut touched = Vec::new();
    for &(x, c) in a {
        for &(y, d) in b {
            let z = g.mul(x, y) as usize;
            if scratch[z] == 0 {
                touched.push(z);
            }
            scratch[z] += c * d;
        }
    }
    let zero = touched.iter().all(|&z| scratch[z] == 0);
    for z in touched {
        scratch[z] = 0;
    }
    zero
}

/// The least `h ∈ H` with `hK` generating `H/K`, if `H/K` is cyclic.
fn cyclic_quotient_generator(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Option<u32> {
    let idx = h.order() / k.order();
    h.elements().iter().copied().find(|&x| {
        let mut y = x;
        let mut j = 1;
        while !k.contains(y) {
            y = g.mul(y, x);
            j += 1;
        }
        j == idx
    })
}

/// `|H| · ε(H, K)` for `H/K` cyclic generated by `hK`, by inclusion–exclusion
/// over the subgroups of prime order in `H/K`.
fn epsilon_cyclic(g: &PermGroup, h: &Subgroup, k: &Subgroup, gen: u32) -> Scaled {
    let n = g.order();
    let idx = (h.order() / k.order()) as u64;
    let primes: Vec<u64> = factorize(idx).into_iter().map(|(p, _)| p).collect();
    let mut num = vec![0i64; n];
    let hn = h.order() as i64;
    if primes.is_empty() {
        for &x in h.elements() {
            num[x as usize] = 1;
        }
        return Scaled { den: hn, num };
    }
    for mask in 0u32..(1 << primes.len()) {
        let prod: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .product();
        let l = g.join(k, &[g.pow(gen, idx / prod)]);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let c = sign * hn / l.order() as i64;
        for &x in l.elements() {
            num[x as usize] += c;
        }
    }
    Scaled { den: hn, num }
}

/// Minimal normal subgroups `M/K` of `H/K`, as subgroups `M` of `G`.
fn minimal_normal_over(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
    let mut cands: Vec<Subgroup> = Vec::new();
    for &x in h.elements() {
        if k.contains(x) {
            continue;
        }
        // Normal closure of ⟨K, x⟩ in H.
        let mut m = g.join(k, &[x]);
        loop {
            let extra: Vec<u32> = m
                .gens()
                .iter()
                .flat_map(|&y| h.gens().iter().map(move |&t| (y, t)))
                .map(|(y, t)| g.conjugate(y, t))
                .filter(|&c| !m.contains(c))
                .collect();
            if extra.is_empty() {
                break;
            }
            m = g.join(&m, &extra);
        }
        if !cands.contains(&m) {
            cands.push(m);
        }
    }
    let minimal: Vec<Subgroup> = cands
        .iter()
        .filter(|m| !cands.iter().any(|o| o != *m && o.is_subgroup_of(m)))
        .cloned()
        .collect();
    minimal
}

/// `ε(H, K)`: `Ĥ` if `H = K`, else `∏ (K̂ − M̂)` over the minimal normal
/// subgroups `M/K` of `H/K`.
pub fn epsilon(g: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement> {
    g.check_subgroup(h)?;
    g.check_subgroup(k)?;
    if !g.is_normal_in(k, h) {
        return Err(Error::invalid("epsilon: K is not a normal subgroup of H"));
    }
    if h == k {
        return Ok(GroupAlgebraElement::hat_subgroup(g, h));
    }
    if let Some(gen) = cyclic_quotient_generator(g, h, k) {
        return Ok(epsilon_cyclic(g, h, k, gen).to_element(g));
    }
    let khat = GroupAlgebraElement::hat_subgroup(g, k);
    let mut acc = GroupAlgebraElement::one(g);
    for m in minimal_normal_over(g, h, k) {
        let f = khat.ga_sub(&GroupAlgebraElement::hat_subgroup(g, &m))?;
        acc = acc.ga_mul(&f)?;
    }
    Ok(acc)
}

/// Representatives of the double cosets `N g N` with `g ∉ N`.
fn double_coset_reps(g: &PermGroup, n: &Subgroup) -> Vec<u32> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    for &x in n.elements() {
        seen.insert(x as usize);
    }
    let mut reps = Vec::new();
    for x in 0..g.order() as u32 {
        if seen.contains(x as usize) {
            continue;
        }
        reps.push(x);
        for &a in n.elements() {
            let ax = g.mul(a, x);
            for &b in n.elements() {
                seen.insert(g.mul(ax, b) as usize);
            }
        }
    }
    reps
}

/// Right transversal of `N` in `G` (least element of each coset `Ng`).
fn right_transversal(g: &PermGroup, n: &Subgroup) -> Vec<u32> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut reps = Vec::new();
    for x in 0..g.order() as u32 {
        if seen.contains(x as usize) {
            continue;
        }
        reps.push(x);
        for &a in n.elements() {
            seen.insert(g.mul(a, x) as usize);
        }
    }
    reps
}

fn centralizes_mod(g: &PermGroup, x: u32, gen: u32, k: &Subgroup) -> bool {
    // x⁻¹ gen x ∈ gen K
    let c = g.conjugate(gen, x);
    k.contains(g.mul(g.inv(gen), c))
}

/// Checks conditions (a) and (b); on success returns `(N, generator of H/K)`.
fn shoda_structure(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> std::result::Result<(Subgroup, u32), String> {
    if !k.is_subgroup_of(h) {
        return Err("K is not contained in H".into());
    }
    if !g.is_normal_in(k, h) {
        return Err("K is not normal in H".into());
    }
    let n = g.normalizer(k);
    if !h.is_subgroup_of(&n) || !g.is_normal_in(h, &n) {
        return Err("H is not normal in N_G(K)".into());
    }
    let Some(gen) = cyclic_quotient_generator(g, h, k) else {
        return Err("H/K is not cyclic".into());
    };
    let cent = n.elements().iter().filter(|&&x| centralizes_mod(g, x, gen, k)).count();
    if cent != h.order() {
        return Err("H/K is not maximal abelian in N_G(K)/K".into());
    }
    Ok((n, gen))
}

fn conjugates_orthogonal(g: &PermGroup, eps: &Scaled, n: &Subgroup) -> bool {
    let supp = eps.support();
    let mut scratch = vec![0i64; g.order()];
    for t in double_coset_reps(g, n) {
        let conj = conjugate_support(g, &supp, t);
        let mut sorted = conj.clone();
        sorted.sort_unstable();
        if sorted == supp {
            continue;
        }
        if !product_is_zero(g, &supp, &conj, &mut scratch) {
            return false;
        }
    }
    true
}

fn e_from_epsilon(g: &PermGroup, eps: &Scaled, n: &Subgroup) -> Scaled {
    let supp = eps.support();
    let mut num = vec![0i64; g.order()];
    for t in right_transversal(g, n) {
        for (x, c) in conjugate_support(g, &supp, t) {
            num[x as usize] += c;
        }
    }
    Scaled { den: eps.den, num }.reduced()
}

pub fn is_strong_shoda_pair(g: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup) -> ShodaCheck {
    let (n, gen) = match shoda_structure(g, h, k) {
        Ok(x) => x,
        Err(r) => return ShodaCheck::no(r),
    };
    let eps = epsilon_cyclic(g, h, k, gen);
    if !conjugates_orthogonal(g, &eps, &n) {
        return ShodaCheck::no("distinct G-conjugates of epsilon are not orthogonal");
    }
    ShodaCheck::yes()
}

/// Representatives of the conjugacy classes of subgroups.
fn subgroup_class_reps(g: &PermGroup, subs: &[Subgroup]) -> Vec<usize> {
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let gens = g.generator_ids().to_vec();
    let mut reps = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        if seen.contains(s.members()) {
            continue;
        }
        reps.push(i);
        let mut queue = vec![s.clone()];
        seen.insert(s.members().clone());
        while let Some(x) = queue.pop() {
            for &t in &gens {
                let y = g.conjugate_subgroup(&x, t);
                if seen.insert(y.members().clone()) {
                    queue.push(y);
                }
            }
        }
    }
    reps
}

struct Found {
    h: usize,
    k: usize,
    n: Subgroup,
    gen: u32,
    eps: Scaled,
    e: Scaled,
}

/// Strong Shoda pairs with pairwise distinct `e(G, H, K)`. When several
/// pairs give the same idempotent the one with the largest `[G:N]` is kept,
/// then one with `N/H` cyclic.
pub fn strong_shoda_pairs(g: &Arc<PermGroup>) -> Result<Vec<ShodaPair>> {
    Ok(search(g)?.into_iter().map(|(p, _)| p).collect())
}

fn search(g: &Arc<PermGroup>) -> Result<Vec<(ShodaPair, u32)>> {
    let subs = g.all_subgroups()?;
    let mut best: FxHashMap<Scaled, Found> = FxHashMap::default();
    let mut order: Vec<Scaled> = Vec::new();
    for ki in subgroup_class_reps(g, &subs) {
        let k = &subs[ki];
        let n = g.normalizer(k);
        for (hi, h) in subs.iter().enumerate() {
            if h.order() % k.order() != 0 || !k.is_subgroup_of(h) || !h.is_subgroup_of(&n) {
                continue;
            }
            let Ok((_, gen)) = shoda_structure(g, h, k) else {
                continue;
            };
            let eps = epsilon_cyclic(g, h, k, gen);
            if !conjugates_orthogonal(g, &eps, &n) {
                continue;
            }
            let e = e_from_epsilon(g, &eps, &n);
            let cand = Found {
                h: hi,
                k: ki,
                n: n.clone(),
                gen,
                eps,
                e: e.clone(),
            };
            match best.get(&e) {
                None => {
                    order.push(e.clone());
                    best.insert(e, cand);
                }
                Some(old) => {
                    if better(g, &subs, &cand, old) {
                        best.insert(e, cand);
                    }
                }
            }
        }
    }
    let mut found: Vec<Found> = order.into_iter().map(|e| best.remove(&e).expect("present")).collect();
    found.sort_by(|a, b| {
        (subs[a.h].sort_key(), subs[a.k].sort_key()).cmp(&(subs[b.h].sort_key(), subs[b.k].sort_key()))
    });
    Ok(found
        .into_iter()
        .map(|f| {
            (
                ShodaPair {
                    h: subs[f.h].clone(),
                    k: subs[f.k].clone(),
                    n: f.n,
                    epsilon: f.eps.to_element(g),
                    e: f.e.to_element(g),
                },
                f.gen,
            )
        })
        .collect())
}

fn better(g: &PermGroup, subs: &[Subgroup], new: &Found, old: &Found) -> bool {
    let m_new = g.order() / new.n.order();
    let m_old = g.order() / old.n.order();
    if m_new != m_old {
        return m_new > m_old;
    }
    let cyc = |f: &Found| quotient_is_cyclic(g, &f.n, &subs[f.h]);
    cyc(new) && !cyc(old)
}

fn quotient_is_cyclic(g: &PermGroup, n: &Subgroup, h: &Subgroup) -> bool {
    cyclic_quotient_generator(g, n, h).is_some()
}

/// The crossed-product descriptor of a strong Shoda pair.
pub fn component_descriptor(g: &Arc<PermGroup>, pair: &ShodaPair) -> Result<SimpleComponentDescriptor> {
    let gen = cyclic_quotient_generator(g, &pair.h, &pair.k)
        .ok_or_else(|| Error::invalid("component_descriptor: H/K is not cyclic"))?;
    descriptor_with_generator(g, pair, gen)
}

fn descriptor_with_generator(g: &PermGroup, pair: &ShodaPair, gen: u32) -> Result<SimpleComponentDescriptor> {
    let (h, k, n) = (&pair.h, &pair.k, &pair.n);
    let kk = (h.order() / k.order()) as u64;
    // Discrete logarithm on H/K.
    let mut log: FxHashMap<u32, u64> = FxHashMap::default();
    let mut p = g.identity();
    for j in 0..kk {
        for &x in k.elements() {
            log.insert(g.mul(p, x), j);
        }
        p = g.mul(p, gen);
    }
    // Cosets of H in N, least element first.
    let mut coset_of: FxHashMap<u32, usize> = FxHashMap::default();
    let mut reps = Vec::new();
    for &x in n.elements() {
        if coset_of.contains_key(&x) {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &y in h.elements() {
            coset_of.insert(g.mul(x, y), idx);
        }
    }
    let d = reps.len();
    let action: Vec<u64> = reps.iter().map(|&r| log[&g.conjugate(gen, r)]).collect();
    let mut cocycle = vec![vec![0u64; d]; d];
    let mut coset_mul = vec![vec![0usize; d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = g.mul(reps[i], reps[j]);
            let c = coset_of[&prod];
            coset_mul[i][j] = c;
            cocycle[i][j] = log[&g.mul(prod, g.inv(reps[c]))];
        }
    }
    let mut image: Vec<u64> = action.clone();
    image.sort_unstable();
    image.dedup();
    assert_eq!(image.len(), d, "the action of N/H on H/K is faithful");
    let center = AbelianField::fixed_field(kk, &action.iter().map(|&t| t as i64).collect::<Vec<_>>())?;
    Ok(SimpleComponentDescriptor {
        matrix_size: (g.order() / n.order()) as u64,
        cyclotomic_order: kk,
        crossed_degree: d as u64,
        generator: gen,
        coset_reps: reps,
        action,
        cocycle,
        coset_mul,
        center,
        origin: PairSummary {
            h_order: h.order(),
            k_order: k.order(),
            n_order: n.order(),
            h_generators: h.gens().to_vec(),
            k_generators: k.gens().to_vec(),
        },
    })
}

/// Descriptors for all strong Shoda pairs of `G`; complete when the
/// dimensions add up to `|G|`.
pub fn decompose(g: &Arc<PermGroup>) -> Result<Decomposition> {
    let found = search(g)?;
    let mut components = Vec::with_capacity(found.len());
    let mut pairs = Vec::with_capacity(found.len());
    for (pair, gen) in found {
        components.push(descriptor_with_generator(g, &pair, gen)?);
        pairs.push(pair);
    }
    let mut dec = Decomposition {
        group_order: g.order(),
        components,
        pairs,
        complete: false,
    };
    dec.complete = dec.total_dimension() == g.order() as u64;
    Ok(dec)
}
