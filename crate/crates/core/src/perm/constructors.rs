//! Standard constructions of permutation groups.

use super::group::PermGroup;
use super::perm::Perm;
use super::traits::FiniteGroup;
use crate::error::{Error, Result};

/// Regular representation from right-multiplication maps on `0..n`.
fn regular(n: usize, right_mults: &[&dyn Fn(usize) -> usize]) -> Result<PermGroup> {
    let gens = right_mults
        .iter()
        .map(|f| Perm::from_images((0..n).map(|i| f(i) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(n, gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group of order 0"));
    }
    regular(n, &[&|i| (i + 1) % n])
}

/// Dihedral group of the given order `2n`.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::invalid(format!("dihedral group of order {order}")));
    }
    let n = order / 2;
    // Elements r^i s^j numbered i + n j.
    regular(
        order,
        &[
            &|e| {
                let (i, j) = (e % n, e / n);
                let i = if j == 0 { (i + 1) % n } else { (i + n - 1) % n };
                i + n * j
            },
            &|e| {
                let (i, j) = (e % n, e / n);
                i + n * (1 - j)
            },
        ],
    )
}

/// Dicyclic (generalised quaternion when `order` is a power of 2) group
/// `⟨x, y | x^{2m}, y² = x^m, x^y = x⁻¹⟩` of order `4m`.
pub fn quaternion(order: usize) -> Result<PermGroup> {
    if order < 4 || order % 4 != 0 {
        return Err(Error::invalid(format!("quaternion group of order {order}")));
    }
    let m = order / 4;
    let n = 2 * m;
    // Elements x^i y^j numbered i + n j.
    regular(
        order,
        &[
            &|e| {
                let (i, j) = (e % n, e / n);
                let i = if j == 0 { (i + 1) % n } else { (i + n - 1) % n };
                i + n * j
            },
            &|e| {
                let (i, j) = (e % n, e / n);
                if j == 0 {
                    i + n
                } else {
                    (i + m) % n
                }
            },
        ],
    )
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n <= 1 {
        return Ok(PermGroup::trivial(1));
    }
    let cycle: Vec<u32> = (1..=n as u32).collect();
    PermGroup::from_generators(
        n,
        vec![Perm::from_cycles(n, &[cycle])?, Perm::from_cycles(n, &[vec![1, 2]])?],
    )
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n <= 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let gens = (3..=n as u32)
        .map(|k| Perm::from_cycles(n, &[vec![1, 2, k]]))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(n, gens)
}

/// `G × H` acting on the disjoint union of their points.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let degree = g.degree() + h.degree();
    let mut gens: Vec<Perm> = g.generators().iter().map(|p| p.extend(degree)).collect();
    gens.extend(h.generators().iter().map(|p| p.shifted(g.degree(), degree)));
    PermGroup::from_generators(degree, gens)
}

/// Extends generator images to an endomorphism of `n` given on its
/// generators and checks that it is an automorphism.
pub fn automorphism_from_images(n: &PermGroup, images: &[u32]) -> Result<Vec<u32>> {
    let gens = n.generator_ids();
    if images.len() != gens.len() {
        return Err(Error::invalid(format!(
            "automorphism needs {} generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    let mut map = vec![u32::MAX; n.order()];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (k, &g) in gens.iter().enumerate() {
            let xg = n.mul(x, g);
            let img = n.mul(map[x as usize], images[k]);
            match map[xg as usize] {
                u32::MAX => {
                    map[xg as usize] = img;
                    queue.push(xg);
                }
                m if m != img => return Err(Error::invalid("generator images do not define a homomorphism")),
                _ => {}
            }
        }
    }
    let mut hit = vec![false; n.order()];
    for &m in &map {
        if hit[m as usize] {
            return Err(Error::invalid("generator images do not define an automorphism"));
        }
        hit[m as usize] = true;
    }
    Ok(map)
}

/// `N ⋊ H` where generator `i` of `H` acts on `N` by the automorphism sending
/// the generators of `N` to `action[i]` (`h⁻¹ n h = n^{α(h)}`).
///
/// The result acts on the elements of `N` (by right translation and by the
/// automorphisms) together with the points of `H`.
pub fn semidirect_product(n: &PermGroup, h: &PermGroup, action: &[Vec<u32>]) -> Result<PermGroup> {
    if action.len() != h.generator_ids().len() {
        return Err(Error::invalid(format!(
            "semidirect product: {} generators of H but {} actions",
            h.generator_ids().len(),
            action.len()
        )));
    }
    let autos = action
        .iter()
        .map(|imgs| automorphism_from_images(n, imgs))
        .collect::<Result<Vec<_>>>()?;
    let nn = n.order();
    let degree = nn + h.degree();
    let mut gens = Vec::new();
    for &g in n.generator_ids() {
        let mut img: Vec<u32> = (0..nn as u32).map(|x| n.mul(x, g)).collect();
        img.extend(nn as u32..degree as u32);
        gens.push(Perm::from_images(img)?);
    }
    for (k, hp) in h.generators().iter().enumerate() {
        let mut img: Vec<u32> = autos[k].clone();
        img.extend(hp.images().iter().map(|&x| x + nn as u32));
        gens.push(Perm::from_images(img)?);
    }
    let g = PermGroup::from_generators(degree, gens)?;
    if g.order() != nn * h.order() {
        return Err(Error::invalid(
            "semidirect product: action is not a homomorphism H → Aut(N)",
        ));
    }
    Ok(g)
}

/// Images of the generators of an abelian group under inversion.
pub fn inversion_images(n: &PermGroup) -> Vec<u32> {
    n.generator_ids().iter().map(|&g| n.inv(g)).collect()
}

/// Images of the generators under `x ↦ x^k`.
pub fn power_images(n: &PermGroup, k: u64) -> Vec<u32> {
    n.generator_ids().iter().map(|&g| n.pow(g, k)).collect()
}
