//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its own PASS or FAIL line.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::oracles::{brute_force_hilbert, order_stats_of_product, primes_upto, squarefree, unit_group_oracle};
use common::{catalog_upto, group, proptest_config};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use qgalg::classify::{
    classify_decomposition, division_status, find_split_certificate, quaternion_form, reproduce_table, vcr_verdict,
    ClassTag, DivisionStatus, QuaternionDescriptor, RowStatus, Vcr,
};
use qgalg::cyclotomic::{AbelianField, CycNumber};
use qgalg::fingerprint::{compare_groups, congruence_fingerprint, Comparison, FingerprintField};
use qgalg::grouprings::{unit_group_mod, GroupAlgebraElement};
use qgalg::numtheory::{euler_phi, factorize, hilbert_symbol, Place};
use qgalg::perm::{Catalog, FiniteGroup, IsoOutcome, PermGroup, Tier};
use qgalg::wedderburn::{decompose, Decomposition};

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn info(dec: &Decomposition) -> BTreeMap<(u64, String), usize> {
    let mut out = BTreeMap::new();
    for c in &dec.components {
        *out.entry((c.matrix_size, c.center.to_string())).or_insert(0) += 1;
    }
    out
}

fn pairs(items: &[(u64, &str, usize)]) -> BTreeMap<(u64, String), usize> {
    items.iter().map(|&(m, f, k)| ((m, f.to_string()), k)).collect()
}

/// Non-commutative components as a multiset of `(detail, tag)`.
fn noncommutative(name: &str) -> BTreeMap<(String, ClassTag), usize> {
    let dec = decompose(&group(name)).unwrap();
    let mut out = BTreeMap::new();
    for c in classify_decomposition(&dec)
        .unwrap()
        .into_iter()
        .filter(|c| !c.is_commutative())
    {
        *out.entry((c.detail, c.tag)).or_insert(0) += 1;
    }
    out
}

fn commutative_details(g: &Arc<PermGroup>) -> BTreeMap<String, usize> {
    let dec = decompose(g).unwrap();
    let mut out = BTreeMap::new();
    for c in classify_decomposition(&dec)
        .unwrap()
        .into_iter()
        .filter(|c| c.is_commutative())
    {
        *out.entry(c.detail).or_insert(0) += 1;
    }
    out
}

fn criterion_1() {
    let dec = decompose(&group("SG(80,49)")).unwrap();
    assert!(dec.complete);
    assert_eq!(info(&dec), pairs(&[(1, "Q", 1), (1, "Q(zeta_5)", 1), (5, "Q", 3)]));
}

fn criterion_2() {
    let dec = decompose(&group("SG(72,30)")).unwrap();
    let distinct: BTreeSet<(u64, String)> = info(&dec).into_keys().collect();
    let expected: BTreeSet<(u64, String)> =
        pairs(&[(1, "Q", 1), (1, "Q(sqrt(-3))", 1), (2, "Q", 1), (2, "Q(sqrt(-3))", 1)])
            .into_keys()
            .collect();
    assert_eq!(distinct, expected);
}

fn criterion_3() {
    let dec = decompose(&group("Q8")).unwrap();
    assert!(dec.complete);
    let classes = classify_decomposition(&dec).unwrap();
    let fields: Vec<_> = classes.iter().filter(|c| c.is_commutative()).collect();
    assert_eq!(fields.len(), 4);
    assert!(fields.iter().all(|c| c.detail == "Q"));
    let quats: Vec<_> = classes.iter().filter(|c| !c.is_commutative()).collect();
    assert_eq!(quats.len(), 1);
    assert_eq!(quats[0].detail, "H(Q)");
    assert_eq!(quats[0].tag, ClassTag::TotallyDefiniteQuaternion);
    let d = dec.components.iter().find(|c| c.crossed_degree == 2).unwrap();
    assert_eq!(
        division_status(&quaternion_form(d).unwrap()).unwrap(),
        DivisionStatus::Division
    );
}

fn criterion_4(name: &str, n: u32) {
    let mut expected = BTreeMap::from([
        (("M2(Q)".to_string(), ClassTag::ExceptionalType2), 1),
        (("(-1,-3/Q)".to_string(), ClassTag::TotallyDefiniteQuaternion), 1),
        (("M2(Q(i))".to_string(), ClassTag::ExceptionalType2), 1),
    ]);
    for k in 3..n {
        let z = 1u64 << k;
        expected.insert((format!("(zeta_{z},-3/Q(zeta_{z}))"), ClassTag::ExceptionalType1), 1);
    }
    assert_eq!(noncommutative(name), expected, "{name}");
    let cyclic = Arc::new(qgalg::perm::constructors::cyclic(1 << n).unwrap());
    assert_eq!(
        commutative_details(&group(name)),
        commutative_details(&cyclic),
        "{name}"
    );
    // Independent split confirmation of (i, −3) over ℚ(i).
    let q = QuaternionDescriptor::new(
        AbelianField::cyclotomic(4),
        CycNumber::root_of_unity(4, 1),
        CycNumber::from_int(-3),
    )
    .unwrap();
    let cert = find_split_certificate(&q).unwrap();
    assert!(cert.verify(&q));
    assert_eq!(
        q.a.mul(&cert.x.square()).add(&q.b.mul(&cert.y.square())),
        cert.z.square()
    );
}

fn criterion_5() {
    let catalog = Catalog::bundled();
    let t4 = reproduce_table(4, Tier::Default).unwrap();
    let small: Vec<_> = t4
        .rows
        .iter()
        .filter(|r| catalog.get(&r.group).map(|e| e.order <= 72).unwrap_or(false))
        .collect();
    assert!(!small.is_empty());
    for r in &small {
        assert_eq!(r.status, RowStatus::Match, "{r:#?}");
    }
    assert_eq!(t4.mismatches(), 0);
}

fn criterion_6() {
    let t1 = reproduce_table(1, Tier::Default).unwrap();
    assert!(!t1.rows.is_empty());
    for r in &t1.rows {
        assert!(matches!(r.status, RowStatus::Match | RowStatus::Attested), "{r:#?}");
    }
    let t3 = reproduce_table(3, Tier::Default).unwrap();
    assert!(t3.count(RowStatus::Match) > 0);
    for r in &t3.rows {
        assert!(matches!(r.status, RowStatus::Match | RowStatus::Skipped), "{r:#?}");
    }
    let orders: BTreeSet<usize> = group("SG(128,937)").quotient_orders().unwrap().into_iter().collect();
    for k in 0..=7 {
        assert!(orders.contains(&(1 << k)), "{orders:?}");
    }
}

fn criterion_7() {
    for name in ["S3", "D8", "Q8", "Q12", "Q16", "Q24", "C3xQ8", "SG(48,18)"] {
        assert_eq!(vcr_verdict(&group(name)).unwrap().verdict, Vcr::Yes, "{name}");
    }
    for name in ["S4", "SG(20,3)", "SG(36,9)"] {
        assert_eq!(vcr_verdict(&group(name)).unwrap().verdict, Vcr::No, "{name}");
    }
    let a4 = vcr_verdict(&group("A4")).unwrap();
    assert_eq!(a4.verdict, Vcr::No);
    assert!(a4.witnesses.iter().any(|w| w.algebra == "M3(Q)"));
    let a5 = vcr_verdict(&group("A5")).unwrap();
    assert_eq!(a5.verdict, Vcr::No);
    assert!(a5.has_quotient_witness());
    let q8c7 = vcr_verdict(&group("Q8xC7")).unwrap();
    assert_eq!(q8c7.verdict, Vcr::No);
    assert!(q8c7
        .witnesses
        .iter()
        .any(|w| w.algebra == "H(Q(zeta_7))" && w.tag == Some(ClassTag::ExceptionalType1)));
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn hilbert_product_formula() {
    let mut runner = TestRunner::new(proptest_config(200));
    let nonzero = (1i64..=500, 1i64..=500, any::<bool>()).prop_map(|(n, d, neg)| rational(if neg { -n } else { n }, d));
    runner
        .run(&(nonzero.clone(), nonzero), |(a, b)| {
            let mut primes = BTreeSet::from([2u64]);
            for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
                let n: u64 = x.magnitude().try_into().unwrap();
                primes.extend(factorize(n).into_iter().map(|(p, _)| p));
            }
            let product: i8 = primes
                .into_iter()
                .map(Place::Prime)
                .chain([Place::Infinity])
                .map(|v| hilbert_symbol(&a, &b, v).unwrap())
                .product();
            prop_assert_eq!(product, 1);
            Ok(())
        })
        .unwrap();
}

fn hilbert_oracle() {
    let primes = primes_upto(50);
    for a in (-20i64..=20).filter(|&a| a != 0) {
        for b in (-20i64..=20).filter(|&b| b != 0) {
            for &p in &primes {
                let q = |x| BigRational::from_integer(BigInt::from(x));
                let fast = hilbert_symbol(&q(a), &q(b), Place::Prime(p)).unwrap();
                assert_eq!(
                    fast,
                    brute_force_hilbert(squarefree(a), squarefree(b), p),
                    "({a},{b})_{p}"
                );
            }
        }
    }
}

fn idempotent_laws_and_dimensions() {
    let mut complete = 0;
    for (name, g) in catalog_upto(48) {
        let dec = decompose(&g).unwrap();
        if !dec.complete {
            continue;
        }
        complete += 1;
        let es: Vec<&GroupAlgebraElement> = dec.pairs.iter().map(|p| &p.e).collect();
        let mut total = GroupAlgebraElement::zero(&g);
        for (i, a) in es.iter().enumerate() {
            assert!(a.is_idempotent() && a.is_central(), "{name}");
            for b in &es[i + 1..] {
                assert!(a.are_orthogonal(b).unwrap(), "{name}");
            }
            total = total.ga_add(a).unwrap();
        }
        assert_eq!(total, GroupAlgebraElement::one(&g), "{name}");
        let dims: u64 = dec
            .components
            .iter()
            .map(|c| c.matrix_size.pow(2) * c.crossed_degree * euler_phi(c.cyclotomic_order).unwrap())
            .sum();
        assert_eq!(dims, g.order() as u64, "{name}");
    }
    assert!(complete > 0);
}

fn crt_coherence() {
    let mut checked = 0;
    for name in ["C2", "C3", "C4", "C2xC2", "S3", "C5"] {
        let g = group(name);
        for (m1, m2) in [(2u64, 3u64), (2, 5), (3, 4)] {
            let f = congruence_fingerprint(name, &g, &[m1, m2, m1 * m2]).unwrap();
            let (Some(a), Some(b), Some(ab)) = (f.record(m1), f.record(m2), f.record(m1 * m2)) else {
                continue;
            };
            assert_eq!(ab.unit_group_order, a.unit_group_order * b.unit_group_order, "{name}");
            assert_eq!(ab.exponent, num_integer::lcm(a.exponent, b.exponent), "{name}");
            assert_eq!(ab.class_count, a.class_count * b.class_count, "{name}");
            let joined: Vec<u64> = a.abelianization.iter().chain(&b.abelianization).copied().collect();
            assert_eq!(
                order_stats_of_product(&ab.abelianization),
                order_stats_of_product(&joined),
                "{name}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 10, "{checked}");
}

fn cli_stdout(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_qgalg")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}");
    out.stdout
}

fn determinism() {
    let runs: &[&[&str]] = &[
        &["--format", "json", "--no-timing", "tables"],
        &["--format", "json", "--no-timing", "classify", "SG(96,1)"],
        &[
            "--format",
            "json",
            "--no-timing",
            "fingerprint",
            "S3",
            "--moduli",
            "2,3",
        ],
    ];
    for args in runs {
        assert_eq!(cli_stdout(args), cli_stdout(args), "{args:?}");
    }
}

fn criterion_8() {
    hilbert_product_formula();
    hilbert_oracle();
    idempotent_laws_and_dimensions();
    crt_coherence();
    determinism();
}

fn isomorphic_to(u: &PermGroup, name: &str) -> bool {
    u.is_isomorphic(&group(name)) == IsoOutcome::Isomorphic
}

fn criterion_9() {
    let u = unit_group_mod(&group("C3"), 2).unwrap();
    assert!(isomorphic_to(&u.to_perm_group().unwrap(), "C3"));
    assert_eq!(unit_group_oracle(&group("C3"), 2).unit_group_order, 3);
    assert_eq!(unit_group_oracle(&group("C3"), 2).abelianization, vec![3]);

    let u = unit_group_mod(&group("C2"), 3).unwrap();
    assert!(isomorphic_to(&u.to_perm_group().unwrap(), "C2xC2"));
    let oracle = unit_group_oracle(&group("C2"), 3);
    assert_eq!(
        (oracle.unit_group_order, oracle.abelianization.clone()),
        (4, vec![2, 2])
    );

    let c4: Arc<PermGroup> = group("C4");
    let v4 = group("C2xC2");
    let c = compare_groups(("C4", &c4), ("C2xC2", &v4), &[3]).unwrap();
    let (left, right) = (unit_group_oracle(&c4, 3), unit_group_oracle(&v4, 3));
    assert_eq!((left.unit_group_order, right.unit_group_order), (32, 16));
    assert_eq!(
        c,
        Comparison::DistinguishedAt {
            modulus: 3,
            field: FingerprintField::Order,
            left: left.unit_group_order.to_string(),
            right: right.unit_group_order.to_string(),
        }
    );
}

type Criterion = (&'static str, Duration, Box<dyn Fn()>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 decomposition of SG(80,49)", secs(60), Box::new(criterion_1)),
        ("2 distinct components of SG(72,30)", secs(30), Box::new(criterion_2)),
        ("3 Q8 gives 4Q + H(Q)", secs(1), Box::new(criterion_3)),
        (
            "4 C3:C2^n family",
            secs(120),
            Box::new(|| {
                let t = Instant::now();
                criterion_4("SG(48,1)", 4);
                assert!(t.elapsed() < secs(60), "n = 4 took {:?}", t.elapsed());
                let t = Instant::now();
                criterion_4("SG(96,1)", 5);
                assert!(t.elapsed() < secs(60), "n = 5 took {:?}", t.elapsed());
            }),
        ),
        ("5 exceptional components table", secs(600), Box::new(criterion_5)),
        ("6 witness and quotient tables", secs(900), Box::new(criterion_6)),
        ("7 VCR verdicts", secs(300), Box::new(criterion_7)),
        ("8 property suites", secs(600), Box::new(criterion_8)),
        ("9 fingerprint checks", secs(30), Box::new(criterion_9)),
    ];
    // Warm the catalog so the first criterion is not charged for parsing it.
    let _ = Catalog::bundled();
    let mut failed = 0;
    for (label, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed < *limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (took {elapsed:.2?}, limit {limit:?})"),
            Err(_) => "FAIL".to_string(),
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("{verdict} criterion {label} [{elapsed:.2?}]");
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
