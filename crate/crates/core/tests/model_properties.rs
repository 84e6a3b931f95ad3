use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rcs_core::bench::{random_instance, RandomSpec};
use rcs_core::model::{concat_with_leftovers, score_naive};
use rcs_core::supersequence::random_arrangement;
use rcs_core::{contains_subsequence, contains_substring, score_arrangement, Kind, Symbol};

fn word(max_len: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0u16..3).prop_map(Symbol), 0..max_len)
}

proptest! {
    #[test]
    fn substring_implies_subsequence(text in word(12), pattern in word(5)) {
        prop_assume!(!pattern.is_empty());
        if contains_substring(&text, &pattern) {
            prop_assert!(contains_subsequence(&text, &pattern));
        }
    }

    #[test]
    fn subsequence_scan_matches_index_search(text in word(9), pattern in word(4)) {
        prop_assume!(!pattern.is_empty());
        // exhaustive search over increasing index tuples
        fn embed(text: &[Symbol], pat: &[Symbol], from: usize) -> bool {
            match pat.split_first() {
                None => true,
                Some((h, rest)) => (from..text.len()).any(|i| text[i] == *h && embed(text, rest, i + 1)),
            }
        }
        prop_assert_eq!(contains_subsequence(&text, &pattern), embed(&text, &pattern, 0));
    }
}

#[test]
fn automaton_and_naive_scorers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let kind = if rng.gen_bool(0.5) { Kind::Substring } else { Kind::Subsequence };
        let spec = RandomSpec {
            sigma: rng.gen_range(1..=4),
            m: rng.gen_range(1..=20),
            n: rng.gen_range(1..=10),
            min_len: 1,
            max_len: rng.gen_range(1..=4),
            kind,
            set_text: false,
        };
        let inst = random_instance(&spec, rng.gen()).unwrap();
        let arr = random_arrangement(&inst.text, rng.gen());
        let fast = score_arrangement(&inst, &arr).unwrap();
        let slow = score_naive(&inst, &arr).unwrap();
        assert_eq!(fast.matched, slow.matched);
        assert!(fast.score <= inst.patterns.len());
    }
}

#[test]
fn concatenation_covers_a_whole_budget_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let spec = RandomSpec { sigma: 3, m: 6, n: 4, min_len: 1, max_len: 6, kind: Kind::Substring, set_text: false };
        let inst = random_instance(&spec, rng.gen()).unwrap();
        // first pattern has length m and uses the whole budget
        assert_eq!(inst.patterns[0].len(), 6);
        let order: Vec<usize> = (0..inst.patterns.len()).collect();
        let (arr, _) = concat_with_leftovers(&inst, &order);
        assert!(score_arrangement(&inst, &arr).unwrap().score >= 1);
    }
}
