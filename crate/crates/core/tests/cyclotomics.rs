mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qgalg::cyclotomic::{quadratic_generator, real_embedding_signs, AbelianField, CycNumber};
use qgalg::numtheory::ord_mod;

fn z(n: u64, j: i64) -> CycNumber {
    CycNumber::root_of_unity(n, j)
}

fn int(x: i64) -> CycNumber {
    CycNumber::from_int(x)
}

fn element(n: u64, coeffs: &[i64]) -> CycNumber {
    let c: Vec<BigRational> = coeffs
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    CycNumber::from_powers(n, &c)
}

/// Sum of the conjugates of `x` under the stabilizer of `f`, which lies in `f`.
fn relative_trace(x: &CycNumber, f: &AbelianField) -> CycNumber {
    let n = f.conductor();
    let m = num_integer::lcm(n, x.conductor());
    f.stabilizer_mod(m)
        .iter()
        .map(|&t| x.galois_apply(t as i64).unwrap())
        .fold(CycNumber::zero(), |acc, y| acc.add(&y))
}

/// Floating-point value of `x` under `ζ_n ↦ exp(2πi t/n)`, real part.
fn embed_real(x: &CycNumber, t: u64) -> f64 {
    let n = x.conductor();
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let c: f64 = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap();
            c * (2.0 * std::f64::consts::PI * (t * j as u64 % n) as f64 / n as f64).cos()
        })
        .sum()
}

#[test]
fn arithmetic_examples() {
    assert_eq!(z(3, 1).add(&z(3, 2)), int(-1));
    assert_eq!(z(4, 1).mul(&z(4, 1)), int(-1));
    let x = int(1).add(&z(5, 1));
    assert_eq!(x.mul(&x.inverse().unwrap()), int(1));
    assert!(CycNumber::zero().inverse().is_err());
    // Mixed conductors merge.
    assert_eq!(z(4, 1).mul(&z(3, 1)), z(12, 7));
}

#[test]
fn galois_examples() {
    assert_eq!(z(5, 1).galois_apply(-1).unwrap(), z(5, 4));
    assert_eq!(z(8, 1).galois_apply(3).unwrap(), z(8, 3));
    let x = element(7, &[1, 2, 0, -1]);
    let y = element(7, &[0, 3, 1]);
    for t in 1..7 {
        assert_eq!(
            x.mul(&y).galois_apply(t).unwrap(),
            x.galois_apply(t).unwrap().mul(&y.galois_apply(t).unwrap())
        );
    }
    assert_eq!(x.galois_apply(1).unwrap(), x);
    assert!(z(6, 1).galois_apply(3).is_err());
}

#[test]
fn galois_order_on_zeta() {
    for n in 2u64..40 {
        for t in 1..n as i64 {
            if num_integer::gcd(t as u64, n) != 1 {
                continue;
            }
            let mut x = z(n, 1);
            let mut k = 0;
            loop {
                x = x.galois_apply(t).unwrap();
                k += 1;
                if x == z(n, 1) {
                    break;
                }
            }
            assert_eq!(k, ord_mod(t, n).unwrap(), "n = {n}, t = {t}");
        }
    }
}

#[test]
fn field_examples() {
    let q5 = AbelianField::cyclotomic(5);
    assert!(!q5.is_totally_real());
    let real5 = AbelianField::fixed_field(5, &[-1]).unwrap();
    assert!(real5.is_totally_real());
    assert_eq!(real5.degree(), 2);
    assert_eq!(real5.to_string(), "Q(sqrt(5))");
    let qi = AbelianField::cyclotomic(4);
    assert!(qi.is_imaginary_quadratic());
    assert_eq!(qi.to_string(), "Q(i)");
    assert_eq!(AbelianField::cyclotomic(3).to_string(), "Q(sqrt(-3))");
    assert_eq!(AbelianField::cyclotomic(7).to_string(), "Q(zeta_7)");
    assert_eq!(AbelianField::fixed_field(6, &[5]).unwrap(), AbelianField::rationals());
    assert_eq!(
        AbelianField::fixed_field(12, &[5]).unwrap(),
        AbelianField::cyclotomic(4)
    );
    assert!(AbelianField::fixed_field(12, &[2]).is_err());
}

#[test]
fn totally_real_iff_minus_one_in_stabilizer() {
    for n in 3u64..30 {
        let units: Vec<i64> = (1..n as i64).filter(|&t| num_integer::gcd(t as u64, n) == 1).collect();
        for &t in &units {
            let f = AbelianField::fixed_field(n, &[t]).unwrap();
            let h = f.stabilizer_mod(n);
            assert_eq!(f.is_totally_real(), h.contains(&(n - 1)), "n = {n}, t = {t}");
            assert_eq!(f.degree() * h.len() as u64, qgalg::numtheory::euler_phi(n).unwrap());
        }
    }
}

#[test]
fn sign_examples() {
    let q = AbelianField::rationals();
    assert_eq!(real_embedding_signs(&int(-3), &q).unwrap(), vec![-1]);
    let x = z(3, 1).add(&z(3, -1));
    assert_eq!(real_embedding_signs(&x, &q).unwrap(), vec![-1]);
    let sqrt2 = z(8, 1).add(&z(8, -1));
    let f = AbelianField::fixed_field(8, &[-1]).unwrap();
    let mut s = real_embedding_signs(&sqrt2, &f).unwrap();
    s.sort();
    assert_eq!(s, vec![-1, 1]);
    assert!(real_embedding_signs(&CycNumber::zero(), &q).is_err());
    assert!(real_embedding_signs(&z(4, 1), &AbelianField::cyclotomic(4)).is_err());
}

#[test]
fn signs_agree_with_floating_point_away_from_zero() {
    for n in [5u64, 7, 9, 11, 13, 15, 16, 20, 24] {
        let f = AbelianField::fixed_field(n, &[-1]).unwrap();
        for seed in 0..6i64 {
            let coeffs: Vec<i64> = (0..n as i64).map(|j| (j * 7 + seed * 3) % 5 - 2).collect();
            let x = relative_trace(&element(n, &coeffs), &f);
            if x.is_zero() {
                continue;
            }
            let signs = real_embedding_signs(&x, &f).unwrap();
            for (t, s) in f.embedding_representatives().into_iter().zip(signs) {
                let m = num_integer::lcm(n, x.conductor());
                let t = (0..).map(|j| t + j * n).find(|u| num_integer::gcd(*u, m) == 1).unwrap();
                let v = embed_real(&x, t % x.conductor().max(1));
                if v.abs() > 1e-6 {
                    assert_eq!(s as f64, v.signum(), "n = {n}, x = {x}, t = {t}");
                }
            }
        }
    }
}

#[test]
fn signs_defined_exactly_on_totally_real_fields() {
    for n in [5u64, 7, 8, 12, 13] {
        for t in [-1i64, 1] {
            let f = AbelianField::fixed_field(n, &[t]).unwrap();
            let mut defined = 0;
            for seed in 1..=10i64 {
                let coeffs: Vec<i64> = (0..n as i64).map(|j| (j * seed + 1) % 4 - 1).collect();
                let x = relative_trace(&element(n, &coeffs), &f);
                let x = if x.is_zero() { int(seed) } else { x };
                if real_embedding_signs(&x, &f).is_ok() {
                    defined += 1;
                }
            }
            assert_eq!(defined == 10, f.is_totally_real(), "n = {n}");
            assert_eq!(defined == 0, !f.is_totally_real());
        }
    }
}

#[test]
fn quadratic_generator_examples() {
    let d = quadratic_generator(4, &AbelianField::rationals(), 3).unwrap();
    assert_eq!(d, int(-4));
    let d = quadratic_generator(3, &AbelianField::rationals(), 2).unwrap();
    assert_eq!(d, int(-3));
    for (k, f, sigma) in [
        (8u64, AbelianField::cyclotomic(4), 5u64),
        (12, AbelianField::cyclotomic(4), 5),
        (12, AbelianField::fixed_field(12, &[11]).unwrap(), 11),
        (24, AbelianField::cyclotomic(8), 17),
        (5, AbelianField::fixed_field(5, &[-1]).unwrap(), 4),
    ] {
        let d = quadratic_generator(k, &f, sigma).unwrap();
        assert!(f.contains(&d), "{d} not in {f}");
        assert_eq!(d.galois_apply(sigma as i64).unwrap(), d);
        // e = ζ^j − σ(ζ^j) is a square root of d with σ(e) = −e.
        let e = (1..k as i64)
            .map(|j| z(k, j).sub(&z(k, j * sigma as i64)))
            .find(|e| !e.is_zero())
            .unwrap();
        assert_eq!(e.square(), d);
        assert_eq!(e.galois_apply(sigma as i64).unwrap(), e.neg());
        assert!(!f.contains(&e));
    }
    assert!(quadratic_generator(5, &AbelianField::rationals(), 4).is_err());
}

fn small_element() -> impl Strategy<Value = CycNumber> {
    (
        prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24, 40]),
        prop::collection::vec(-3i64..=3, 1..8),
    )
        .prop_map(|(n, c)| element(n, &c))
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn field_axioms(a in small_element(), b in small_element(), c in small_element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.sub(&a), CycNumber::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), int(1));
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in small_element()) {
        let n = a.conductor();
        let again = CycNumber::from_powers(n, a.coeffs());
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a.coeffs().len() as u64, qgalg::numtheory::euler_phi(n).unwrap());
        // Rebuilding inside a larger cyclotomic field lands on the same value.
        let lifted = CycNumber::from_powers(n * 3, &a.coeffs_in(n * 3));
        prop_assert_eq!(lifted.conductor(), n);
        prop_assert_eq!(lifted, a);
    }
}
