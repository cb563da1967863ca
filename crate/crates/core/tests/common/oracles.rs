//! Brute-force oracles shared by the integration tests.

use std::collections::{BTreeMap, HashMap, HashSet};

use qgalg::fingerprint::FingerprintRecord;
use qgalg::perm::{FiniteGroup, PermGroup};

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

pub fn squarefree(n: i64) -> i64 {
    let mut s = n.signum();
    let mut m = n.abs();
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            s *= d;
        }
        d += 1;
    }
    s * m
}

pub fn modpow_count(p: u64) -> u32 {
    if p == 2 {
        return 10;
    }
    let mut k = 3;
    while k < 6 && p.pow(k + 1) <= 20_000 {
        k += 1;
    }
    k
}

/// Whether `z² ≡ ax² + by²` has a solution modulo `p^N` with some coordinate a
/// unit. `a`, `b` squarefree; `N` is 10 at `p = 2`, at least 3 at odd `p`
/// dividing `ab`, and 1 at odd `p` not dividing `ab` (Hensel lifts from there).
pub fn brute_force_hilbert(a: i64, b: i64, p: u64) -> i8 {
    let n = if p != 2 && a % p as i64 != 0 && b % p as i64 != 0 {
        1
    } else {
        modpow_count(p)
    };
    let m = p.pow(n) as i64;
    let r = |x: i64| x.rem_euclid(m) as usize;
    let mut squares = vec![false; m as usize];
    let mut b_squares = vec![false; m as usize];
    for y in 0..m {
        squares[r(y * y)] = true;
        b_squares[r(b * (y * y % m))] = true;
    }
    // Scale so that z, x or y equals 1.
    let found = (0..m).any(|x| b_squares[r(1 - a * (x * x % m))])
        || (0..m).any(|y| squares[r(a + b * (y * y % m))])
        || (0..m).any(|x| squares[r(a * (x * x % m) + b)]);
    if found {
        1
    } else {
        -1
    }
}

/// Elements of `(ℤ/m)G` as coefficient vectors indexed by group element.
pub type Elt = Vec<u64>;

pub fn convolve(g: &PermGroup, m: u64, a: &[u64], b: &[u64]) -> Elt {
    let n = g.order();
    let mut out = vec![0; n];
    for (x, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (y, &cb) in b.iter().enumerate() {
            let k = g.mul(x as u32, y as u32) as usize;
            out[k] = (out[k] + ca * cb) % m;
        }
    }
    out
}

/// Brute-force fingerprint: every ring element is enumerated, units found
/// by searching for a two-sided inverse, and invariants read off the
/// multiplication table of the unit group.
pub fn unit_group_oracle(g: &PermGroup, m: u64) -> FingerprintRecord {
    let n = g.order();
    let size = m.pow(n as u32);
    let decode = |mut c: u64| -> Elt {
        (0..n)
            .map(|_| {
                let d = c % m;
                c /= m;
                d
            })
            .collect()
    };
    let mut one = vec![0; n];
    one[g.identity() as usize] = 1;
    let all: Vec<Elt> = (0..size).map(decode).collect();
    let units: Vec<Elt> = all
        .iter()
        .filter(|x| {
            all.iter()
                .any(|y| convolve(g, m, x, y) == one && convolve(g, m, y, x) == one)
        })
        .cloned()
        .collect();
    let index: HashMap<&Elt, usize> = units.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let k = units.len();
    let table: Vec<Vec<usize>> = units
        .iter()
        .map(|a| units.iter().map(|b| index[&convolve(g, m, a, b)]).collect())
        .collect();
    let e = index[&one];
    let inverse: Vec<usize> = (0..k).map(|a| (0..k).find(|&b| table[a][b] == e).unwrap()).collect();
    let order_of = |a: usize| {
        let mut x = a;
        let mut o = 1u64;
        while x != e {
            x = table[x][a];
            o += 1;
        }
        o
    };
    let exponent = (0..k).map(order_of).fold(1, num_integer::lcm);
    let mut seen = vec![false; k];
    let mut classes = 0;
    for a in 0..k {
        if seen[a] {
            continue;
        }
        classes += 1;
        for g in 0..k {
            seen[table[table[inverse[g]][a]][g]] = true;
        }
    }
    // Derived subgroup by closure of commutators.
    let mut derived: HashSet<usize> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .map(|(a, b)| table[table[inverse[a]][inverse[b]]][table[a][b]])
        .collect();
    loop {
        let next: HashSet<usize> = derived
            .iter()
            .flat_map(|&a| derived.iter().map(move |&b| (a, b)))
            .map(|(a, b)| table[a][b])
            .collect();
        if next.len() == derived.len() {
            break;
        }
        derived = next;
    }
    // Order statistics of the abelianization.
    let mut quotient_orders = BTreeMap::new();
    let mut covered = vec![false; k];
    for a in 0..k {
        if covered[a] {
            continue;
        }
        for &d in &derived {
            covered[table[d][a]] = true;
        }
        let mut x = a;
        let mut o = 1u64;
        while !derived.contains(&x) {
            x = table[x][a];
            o += 1;
        }
        *quotient_orders.entry(o).or_insert(0usize) += 1;
    }
    FingerprintRecord {
        modulus: m,
        unit_group_order: k as u64,
        abelianization: recover_invariants(&quotient_orders),
        exponent,
        class_count: classes,
    }
}

/// Order statistics of `ℤ/d₁ × … × ℤ/d_r`.
pub fn order_stats_of_product(factors: &[u64]) -> BTreeMap<u64, usize> {
    let mut orders = vec![1u64];
    for &d in factors {
        orders = orders
            .iter()
            .flat_map(|&o| (0..d).map(move |j| num_integer::lcm(o, d / num_integer::gcd(j, d))))
            .collect();
    }
    let mut stats = BTreeMap::new();
    for o in orders {
        *stats.entry(o).or_insert(0) += 1;
    }
    stats
}

/// The invariant-factor list whose order statistics match, found by search
/// over divisibility chains. Abelian groups are determined by their order
/// statistics, so the match is unique.
pub fn recover_invariants(stats: &BTreeMap<u64, usize>) -> Vec<u64> {
    let n: usize = stats.values().sum();
    fn chains(n: u64, start: u64) -> Vec<Vec<u64>> {
        if n == 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for d in (start.max(2)..=n).filter(|d| n % d == 0) {
            for rest in chains(n / d, d) {
                if rest.first().map_or(true, |&r| r % d == 0) {
                    let mut c = vec![d];
                    c.extend(rest);
                    out.push(c);
                }
            }
        }
        out
    }
    let found: Vec<Vec<u64>> = chains(n as u64, 2)
        .into_iter()
        .filter(|c| &order_stats_of_product(c) == stats)
        .collect();
    assert_eq!(found.len(), 1, "{stats:?}");
    found.into_iter().next().unwrap()
}
