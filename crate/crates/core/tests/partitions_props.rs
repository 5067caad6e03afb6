use proptest::prelude::*;

use kr_core::liealg::{cartan_for, CartanType};
use kr_core::partitions::{
    cfs_leq, cover_chain, covers, extremal, partitions_of, reverse_dominance_leq, Partition,
    WeightedPartition,
};

#[test]
fn order_axioms_exhaustive() {
    for m in 1..=12 {
        let all = partitions_of(m, None);
        let leq = |a: &Partition, b: &Partition| reverse_dominance_leq(a, b).unwrap();
        for a in &all {
            assert!(leq(a, a));
            for b in &all {
                if a != b && leq(a, b) {
                    assert!(!leq(b, a), "{a} and {b}");
                }
                for c in &all {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{a} <= {b} <= {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn extremal_elements() {
    for m in 1..=10 {
        let (lo, hi) = extremal(m, None).unwrap();
        for p in partitions_of(m, None) {
            assert!(reverse_dominance_leq(&lo, &p).unwrap());
            assert!(reverse_dominance_leq(&p, &hi).unwrap());
        }
        for k in 1..=m as usize {
            let (lo, hi) = extremal(m, Some(k)).unwrap();
            for p in partitions_of(m, Some(k)) {
                assert!(reverse_dominance_leq(&lo, &p).unwrap());
                assert!(reverse_dominance_leq(&p, &hi).unwrap());
            }
        }
    }
}

#[test]
fn rectangular_cfs_matches_partition_order() {
    for name in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] {
        let cd = cartan_for(name.parse::<CartanType>().unwrap()).unwrap();
        for i in 1..=cd.rank() {
            for m in 1..=8 {
                let all = partitions_of(m, None);
                for a in &all {
                    for b in &all {
                        let ra = WeightedPartition::rectangular(cd.rank(), i, a);
                        let rb = WeightedPartition::rectangular(cd.rank(), i, b);
                        assert_eq!(
                            cfs_leq(&cd, &ra, &rb).unwrap(),
                            reverse_dominance_leq(a, b).unwrap(),
                            "{name} node {i}: {a} vs {b}"
                        );
                    }
                }
            }
        }
    }
}

fn comparable_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (1u32..=12)
        .prop_flat_map(|m| {
            let n = partitions_of(m, None).len();
            (Just(m), 0..n, 0..n)
        })
        .prop_filter_map("incomparable", |(m, a, b)| {
            let all = partitions_of(m, None);
            let (a, b) = (all[a].clone(), all[b].clone());
            if reverse_dominance_leq(&a, &b).unwrap() {
                Some((a, b))
            } else if reverse_dominance_leq(&b, &a).unwrap() {
                Some((b, a))
            } else {
                None
            }
        })
}

proptest! {
    #[test]
    fn chains_are_saturated((lo, hi) in comparable_pair()) {
        let chain = cover_chain(&lo, &hi).unwrap();
        prop_assert_eq!(chain.first(), Some(&lo));
        prop_assert_eq!(chain.last(), Some(&hi));
        for w in chain.windows(2) {
            prop_assert!(covers(&w[0]).contains(&w[1]));
            prop_assert!(reverse_dominance_leq(&w[1], &hi).unwrap());
        }
    }

    #[test]
    fn parsing_round_trips(parts in proptest::collection::vec(1u32..20, 1..8)) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
}
