mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use spectra_core::symbolic::{
    bracket, entropy, factors, one_sided_distance, sequence_distance, subhorseshoe_from_factors,
    BiSequence, Direction, PeriodicSequence, Sft, SymbolView,
};

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..=1, n), n)
}

fn sft_strategy() -> impl Strategy<Value = Sft> {
    (1usize..=4)
        .prop_flat_map(matrix)
        .prop_filter_map("empty after pruning", |m| {
            let n = m.len();
            Sft::new((1..=n as u32).collect(), m).ok()
        })
}

fn bi_sequence() -> impl Strategy<Value = BiSequence> {
    (
        prop::collection::vec(1u32..=2, 1..4),
        prop::collection::vec(1u32..=2, 0..8),
        -6i64..=2,
        prop::collection::vec(1u32..=2, 1..4),
    )
        .prop_map(|(l, c, s, r)| BiSequence::new(l, c, s, r).unwrap())
}

fn count_by_enumeration(s: &Sft, x: u32, y: u32, n: usize) -> u64 {
    let mut paths = vec![vec![x]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in paths {
            for &b in s.alphabet() {
                if s.allows(*p.last().unwrap(), b).unwrap() {
                    let mut q = p.clone();
                    q.push(b);
                    next.push(q);
                }
            }
        }
        paths = next;
    }
    paths.iter().filter(|p| *p.last().unwrap() == y).count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_strings_matches_enumeration(s in sft_strategy(), n in 1usize..=10) {
        for &x in s.alphabet() {
            for &y in s.alphabet() {
                prop_assert_eq!(
                    s.count_strings(x, y, n).unwrap(),
                    BigUint::from(count_by_enumeration(&s, x, y, n))
                );
            }
        }
    }

    #[test]
    fn distance_is_symmetric_and_detects_agreement(a in bi_sequence(), b in bi_sequence(), depth in 1usize..20) {
        let d = sequence_distance(&a, &b, depth);
        prop_assert_eq!(d, sequence_distance(&b, &a, depth));
        let agree = (-(depth as i64)..=depth as i64).all(|n| a.at(n) == b.at(n));
        prop_assert_eq!(d.lo() == 0.0, agree);
        if d.hi() < 0.5 {
            prop_assert_eq!(a.at(0), b.at(0));
        }
        for dir in [Direction::Stable, Direction::Unstable] {
            prop_assert!(one_sided_distance(&a, &b, dir, depth).lo() <= d.lo());
        }
    }

    #[test]
    fn bracket_splices_exactly(a in bi_sequence(), b in bi_sequence()) {
        prop_assume!(a.at(0) == b.at(0));
        let c = bracket(&a, &b).unwrap();
        for n in -30..=30 {
            let expected = if n >= 1 { a.at(n) } else { b.at(n) };
            prop_assert_eq!(c.at(n), expected);
        }
    }

    #[test]
    fn factor_subshifts_stay_inside_and_shrink(
        words in prop::collection::vec(prop::collection::vec(1u32..=2, 1..7), 1..5),
        m in 2usize..4,
        drop in 0usize..6,
    ) {
        let s = Sft::full(2);
        let samples: Vec<PeriodicSequence> =
            words.iter().map(|w| PeriodicSequence::new(w).unwrap()).collect();
        let allowed = factors(&samples, m);
        let rec = subhorseshoe_from_factors(&s, &allowed).unwrap();
        // every word of the recoded language up to length 2m decodes into
        // a word whose m-factors are allowed
        for len in 1..=2 * m {
            for path in rec.sft.words(len) {
                let mut decoded = rec.decode(&path);
                decoded.extend(&rec.blocks[*path.last().unwrap() as usize][1..]);
                for f in decoded.windows(m) {
                    prop_assert!(allowed.contains(f));
                }
            }
        }
        let h = entropy(&rec.sft, 1e-10).unwrap();
        let mut smaller = allowed.clone();
        if let Some(w) = allowed.iter().nth(drop % allowed.len()).cloned() {
            smaller.remove(&w);
        }
        if let Ok(rec2) = subhorseshoe_from_factors(&s, &smaller) {
            if let Ok(h2) = entropy(&rec2.sft, 1e-10) {
                prop_assert!(h2.lower <= h.upper);
            }
        }
    }
}
