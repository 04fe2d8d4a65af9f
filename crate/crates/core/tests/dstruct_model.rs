mod common;

use proptest::prelude::*;
use ssspx_core::dstruct::BlockStructure;
use ssspx_core::harness::SeededRng;
use ssspx_core::labels::{Bound, DistLabel};

#[test]
fn seeded_sequences_match_sorted_model() {
    let mut rng = SeededRng::new(99);
    for m in [1, 2, 3, 4, 8, 16, 64] {
        for _ in 0..60 {
            let len = 1 + rng.below(600) as usize;
            if let Err(e) = common::ds_sequence(&mut rng, m, len) {
                panic!("M={m}: {e}");
            }
        }
    }
}

#[test]
fn pull_drains_in_order_with_bound() {
    let mut d = BlockStructure::new(4, Bound::Infinity);
    for v in 0..20u32 {
        d.insert(v, DistLabel::new(f64::from(19 - v), 1, v, Some(0)));
    }
    let mut seen = Vec::new();
    while !d.is_empty() {
        let (mut keys, x) = d.pull();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        assert!(keys.len() <= 4);
        if let Some(next) = d.min_value() {
            assert!(x.same_as(&Bound::Finite(next)));
        } else {
            assert!(x.is_infinite());
        }
        seen.extend(keys);
    }
    assert_eq!(seen, (0..20).rev().collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn any_seed_matches_model(seed in any::<u64>(), m_idx in 0usize..5, len in 1usize..400) {
        let m = [2, 4, 8, 16, 64][m_idx];
        let mut rng = SeededRng::new(seed);
        prop_assert!(common::ds_sequence(&mut rng, m, len).is_ok());
    }
}
