use num_bigint::BigInt;
use proptest::prelude::*;
use spectra_core::classical::{
    classical_lagrange_below_3, lagrange_number, markov_lagrange_value, markov_periods,
    markov_triples, periodic_value, MarkovTriple, QuadraticSurd,
};
use std::collections::BTreeSet;

fn period() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=4, 1..7)
}

fn rotate(w: &[u64], k: usize) -> Vec<u64> {
    [&w[k..], &w[..k]].concat()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shift_is_a_mobius_map(w in period(), k in 0usize..7) {
        let k = k % w.len();
        let x = periodic_value(&w).unwrap();
        // [a_0; a_1, …] = a_0 + 1/[a_1; …]
        let next = periodic_value(&rotate(&w, 1)).unwrap();
        let a0 = BigInt::from(w[0]);
        let one = BigInt::from(1);
        let zero = BigInt::from(0);
        prop_assert_eq!(next.mobius(&a0, &one, &one, &zero).unwrap(), x.clone());
        prop_assert_eq!(
            periodic_value(&rotate(&w, k)).unwrap(),
            (0..k).fold(Ok(x.clone()), |acc: spectra_core::Result<QuadraticSurd>, i| {
                // invert one step: [a_{i+1}; …] = 1/([a_i; …] − a_i)
                let ai = QuadraticSurd::integer(w[i] as i64);
                acc?.checked_sub(&ai)?.recip()
            }).unwrap()
        );
    }

    #[test]
    fn lagrange_is_rotation_invariant(w in period(), k in 0usize..7) {
        let k = k % w.len();
        prop_assert_eq!(lagrange_number(&w).unwrap(), lagrange_number(&rotate(&w, k)).unwrap());
    }
}

fn isqrt(n: u128) -> u128 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// For each `y ≤ z`, solve the equation as a quadratic in `x`.
fn triples_by_scan(z_max: u64) -> BTreeSet<MarkovTriple> {
    let mut out = BTreeSet::new();
    for z in 1..=z_max as u128 {
        for y in 1..=z {
            let disc = 9 * y * y * z * z;
            let c = 4 * (y * y + z * z);
            if disc < c {
                continue;
            }
            let s = isqrt(disc - c);
            if s * s != disc - c {
                continue;
            }
            for num in [3 * y * z - s, 3 * y * z + s] {
                if num % 2 == 0 && num > 0 && num / 2 <= y {
                    out.insert(MarkovTriple { x: (num / 2) as u64, y: y as u64, z: z as u64 });
                }
            }
        }
    }
    out
}

#[test]
fn tree_enumeration_matches_scan_oracle() {
    let tree: BTreeSet<MarkovTriple> = markov_triples(10_000).into_iter().collect();
    assert_eq!(tree, triples_by_scan(10_000));
    assert!(tree.iter().all(MarkovTriple::is_solution));
}

#[test]
fn triples_closed_under_mutation() {
    let bound = 1_000_000;
    let set: BTreeSet<MarkovTriple> = markov_triples(bound).into_iter().collect();
    for t in &set {
        for v in [[t.x, t.z, 3 * t.x * t.z - t.y], [t.y, t.z, 3 * t.y * t.z - t.x]] {
            let mut v = v;
            v.sort_unstable();
            if v[2] <= bound {
                assert!(set.contains(&MarkovTriple { x: v[0], y: v[1], z: v[2] }), "{v:?}");
            }
        }
    }
}

#[test]
fn classical_values_increase_below_three() {
    let vals = classical_lagrange_below_3(100_000).unwrap();
    let three = QuadraticSurd::integer(3);
    assert!(vals.iter().all(|(_, v)| *v < three));
    assert!(vals.windows(2).all(|w| w[0].1 < w[1].1 && w[0].0 < w[1].0));
}

#[test]
fn cross_route_agreement_for_small_z() {
    let periods = markov_periods(5);
    for z in [1u64, 2, 5] {
        let p = &periods[&z];
        assert_eq!(lagrange_number(p).unwrap(), markov_lagrange_value(z).unwrap(), "z = {z}");
    }
}
