mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use qgalg::perm::constructors::{
    cyclic, dihedral, direct_product, inversion_images, quaternion, semidirect_product, symmetric,
};
use qgalg::perm::{epimorphic_images_in, Catalog, FiniteGroup, IsoOutcome, Perm, PermGroup, Tier};

fn cat() -> &'static Catalog {
    Catalog::bundled()
}

/// Every subset containing 1 and closed under multiplication.
fn brute_force_subgroups(g: &PermGroup) -> BTreeSet<Vec<u32>> {
    let n = g.order();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<u32> = std::iter::once(0)
            .chain((1..n as u32).filter(|&i| mask & (1 << (i - 1)) != 0))
            .collect();
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()));
        if closed {
            out.insert(set);
        }
    }
    out
}

fn subgroup_sets(g: &PermGroup) -> BTreeSet<Vec<u32>> {
    g.all_subgroups()
        .unwrap()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect()
}

#[test]
fn from_generators_examples() {
    let s3 = PermGroup::from_generators(
        3,
        vec![
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(PermGroup::from_generators(4, vec![]).unwrap().order(), 1);
    assert_eq!(quaternion(8).unwrap().order(), 8);
    assert_eq!(quaternion(8).unwrap().degree(), 8);
}

#[test]
fn enumeration_bound_is_explicit() {
    let s8 = symmetric(8).unwrap_err();
    assert!(matches!(s8, qgalg::Error::SizeBound { .. }), "{s8:?}");
    let s7 = PermGroup::from_generators_bounded(
        7,
        vec![
            Perm::from_cycles(7, &[vec![1, 2, 3, 4, 5, 6, 7]]).unwrap(),
            Perm::from_cycles(7, &[vec![1, 2]]).unwrap(),
        ],
        100,
    );
    assert!(s7.is_err());
}

#[test]
fn structural_examples() {
    let s3 = symmetric(3).unwrap();
    assert!(s3.center().is_trivial());
    let q8 = quaternion(8).unwrap();
    assert_eq!(q8.center().order(), 2);
    assert_eq!(quaternion(12).unwrap().abelianization_invariants(), vec![4]);
    assert_eq!(cat().group("Q12").unwrap().abelianization_invariants(), vec![4]);
    assert_eq!(q8.abelianization_invariants(), vec![2, 2]);
    assert_eq!(q8.exponent(), 4);
    assert_eq!(s3.derived_subgroup().order(), 3);
    assert!(q8.centralizer(100).is_err());
}

#[test]
fn subgroup_counts() {
    assert_eq!(cyclic(7).unwrap().all_subgroups().unwrap().len(), 2);
    assert_eq!(symmetric(3).unwrap().all_subgroups().unwrap().len(), 6);
    assert_eq!(quaternion(8).unwrap().all_subgroups().unwrap().len(), 6);
}

#[test]
fn subgroups_match_brute_force() {
    for name in ["S3", "Q8", "D8", "C2xC2", "C6", "A4", "Q12", "D10", "C4xC2", "C2^3"] {
        let g = cat().group(name).unwrap();
        assert_eq!(subgroup_sets(&g), brute_force_subgroups(&g), "{name}");
    }
    let d12 = dihedral(12).unwrap();
    assert_eq!(subgroup_sets(&d12), brute_force_subgroups(&d12));
}

#[test]
fn normal_subgroup_examples() {
    let s3 = symmetric(3).unwrap();
    let orders: Vec<usize> = s3.normal_subgroups().unwrap().iter().map(|n| n.order()).collect();
    assert_eq!(orders, vec![1, 3, 6]);
    let ab = cat().group("C4xC2").unwrap();
    assert_eq!(ab.normal_subgroups().unwrap().len(), ab.all_subgroups().unwrap().len());
}

#[test]
fn sg128_937_quotient_orders() {
    let g = cat().group("SG(128,937)").unwrap();
    let orders: BTreeSet<usize> = g.quotient_orders().unwrap().into_iter().collect();
    for k in [1, 2, 4, 8, 16, 32, 64, 128] {
        assert!(orders.contains(&k), "missing quotient order {k}");
    }
}

#[test]
fn quotient_examples() {
    let s3 = symmetric(3).unwrap();
    let a3 = s3.derived_subgroup();
    let q = s3.quotient(&a3).unwrap();
    assert_eq!(q.group.is_isomorphic(&cyclic(2).unwrap()), IsoOutcome::Isomorphic);

    let q8 = quaternion(8).unwrap();
    let q = q8.quotient(&q8.center()).unwrap();
    assert_eq!(q.group.order(), 4);
    assert_eq!(q.group.exponent(), 2);
    assert_eq!(
        q.group.is_isomorphic(&cat().group("C2xC2").unwrap()),
        IsoOutcome::Isomorphic
    );

    let sl = cat().group("SL(2,3)").unwrap();
    let q = sl.quotient(&sl.center()).unwrap();
    assert_eq!(
        q.group.is_isomorphic(&cat().group("A4").unwrap()),
        IsoOutcome::Isomorphic
    );

    // The projection is a homomorphism.
    for a in 0..sl.order() as u32 {
        for b in 0..sl.order() as u32 {
            let p = &q.projection;
            assert_eq!(p[sl.mul(a, b) as usize], q.group.mul(p[a as usize], p[b as usize]));
        }
    }

    let h = s3.subgroup_generated(&[s3.index_of(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap()).unwrap()]);
    assert!(s3.quotient(&h).is_err());
}

#[test]
fn isomorphism_examples() {
    let c4 = cyclic(4).unwrap();
    let v4 = cat().group("C2xC2").unwrap();
    assert_eq!(c4.is_isomorphic(&v4), IsoOutcome::NotIsomorphic);
    assert_eq!(
        dihedral(8).unwrap().is_isomorphic(&quaternion(8).unwrap()),
        IsoOutcome::NotIsomorphic
    );
    assert_eq!(
        symmetric(3).unwrap().is_isomorphic(&dihedral(6).unwrap()),
        IsoOutcome::Isomorphic
    );
    assert_eq!(
        symmetric(3).unwrap().is_isomorphic(&cat().group("S3").unwrap()),
        IsoOutcome::Isomorphic
    );
    // Same order statistics and signatures would not separate these without search.
    let c3 = cyclic(3).unwrap();
    let c4b = cyclic(4).unwrap();
    let g = semidirect_product(&c3, &c4b, &[inversion_images(&c3)]).unwrap();
    assert_eq!(g.is_isomorphic(&cat().group("Q12").unwrap()), IsoOutcome::Isomorphic);
    assert_eq!(
        direct_product(&quaternion(8).unwrap(), &cyclic(3).unwrap())
            .unwrap()
            .is_isomorphic(&cat().group("C3xQ8").unwrap()),
        IsoOutcome::Isomorphic
    );
}

#[test]
fn zgroup_examples() {
    assert!(cyclic(15).unwrap().is_zgroup());
    assert!(!quaternion(8).unwrap().is_zgroup());
    assert!(cat().group("SG(20,3)").unwrap().is_zgroup());
    assert!(!symmetric(4).unwrap().is_zgroup());
}

#[test]
fn epimorphic_image_examples() {
    let excluded = cat().excluded_groups();
    let sl = cat().group("SL(2,3)").unwrap();
    assert_eq!(epimorphic_images_in(&sl, &excluded).unwrap(), vec!["SG(12,3)"]);
    assert!(epimorphic_images_in(&cyclic(6).unwrap(), &excluded).unwrap().is_empty());
    let g = cat().group("SG(240,90)").unwrap();
    assert_eq!(epimorphic_images_in(&g, &excluded).unwrap(), vec!["SG(120,34)"]);
}

#[test]
fn semidirect_inversion_family() {
    let c3 = cyclic(3).unwrap();
    for n in [4u32, 5] {
        let c = cyclic(1 << n).unwrap();
        let g = semidirect_product(&c3, &c, &[inversion_images(&c3)]).unwrap();
        assert_eq!(g.order(), 3 << n);
        let name = if n == 4 { "C3:C16" } else { "C3:C32" };
        assert_eq!(g.is_isomorphic(&cat().group(name).unwrap()), IsoOutcome::Isomorphic);
    }
}

fn small_catalog() -> Vec<(String, PermGroup)> {
    cat()
        .entries()
        .iter()
        .filter(|e| e.tier == Tier::Default && e.order <= 100)
        .map(|e| (e.name.clone(), e.group().unwrap()))
        .collect()
}

#[test]
fn lagrange_and_class_sums() {
    for (name, g) in small_catalog() {
        let n = g.order();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), n, "{name}");
        if n <= 64 {
            for s in g.all_subgroups().unwrap() {
                assert_eq!(n % s.order(), 0, "{name}");
            }
        }
        for nsub in g.normal_subgroups().unwrap() {
            let q = g.quotient(&nsub).unwrap();
            assert_eq!(q.group.order() * nsub.order(), n, "{name}");
        }
    }
}

#[test]
fn normal_members_of_lattice_are_the_normal_subgroups() {
    for (name, g) in small_catalog() {
        let all: BTreeSet<Vec<u32>> = g
            .all_subgroups()
            .unwrap()
            .into_iter()
            .filter(|s| g.is_normal(s))
            .map(|s| s.elements().to_vec())
            .collect();
        let normal: BTreeSet<Vec<u32>> = g
            .normal_subgroups()
            .unwrap()
            .into_iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(all, normal, "{name}");
    }
}

#[test]
fn isomorphism_reflexive_and_symmetric() {
    let groups = small_catalog();
    assert!(groups.len() >= 20);
    for (name, g) in &groups {
        // A relabelled copy: conjugate every generator by a fixed shift of points.
        let d = g.degree();
        let shift = Perm::from_images((0..d as u32).map(|i| (i + 1) % d as u32).collect()).unwrap();
        let gens = g
            .generators()
            .iter()
            .map(|x| shift.inverse().then(x).then(&shift))
            .collect();
        let h = PermGroup::from_generators(d, gens).unwrap();
        assert_eq!(g.is_isomorphic(&h), IsoOutcome::Isomorphic, "{name}");
        assert_eq!(h.is_isomorphic(g), IsoOutcome::Isomorphic, "{name}");
    }
    for (i, (a, g)) in groups.iter().enumerate() {
        for (b, h) in groups.iter().skip(i + 1).filter(|(_, h)| h.order() == g.order()) {
            let ab = g.is_isomorphic(h);
            assert_eq!(ab, h.is_isomorphic(g), "{a} {b}");
            assert_eq!(ab, IsoOutcome::NotIsomorphic, "{a} {b}");
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(48))]

    #[test]
    fn random_generated_groups(
        imgs in prop::collection::vec(Just((0u32..6).collect::<Vec<u32>>()).prop_shuffle(), 1..3)
    ) {
        let gens: Vec<Perm> = imgs.into_iter().map(|v| Perm::from_images(v).unwrap()).collect();
        let g = PermGroup::from_generators(6, gens).unwrap();
        let n = g.order();
        prop_assert_eq!(720 % n, 0);
        prop_assert_eq!(g.conjugacy_classes().iter().map(|c| c.len()).sum::<usize>(), n);
        for nsub in g.normal_subgroups().unwrap() {
            let q = g.quotient(&nsub).unwrap();
            prop_assert_eq!(q.group.order() * nsub.order(), n);
        }
        if n <= 120 {
            for s in g.all_subgroups().unwrap() {
                prop_assert_eq!(n % s.order(), 0);
            }
        }
    }
}
