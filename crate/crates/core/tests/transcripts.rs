use proptest::prelude::*;

use coinweigh::adversary::{play, AdversaryState};
use coinweigh::scale::outcome_of;
use coinweigh::strategies::SortThreeTiny;
use coinweigh::verify::{transcript_sorted_unique, transcript_sorted_unique_bruteforce};
use coinweigh::*;

fn tiny_transcript(classes: &[u8], pairs: &[(usize, usize)]) -> Transcript {
    let n = classes.len();
    let a = Assignment::new(classes.to_vec(), 3).unwrap();
    let mut t = Transcript::new();
    for &(x, y) in pairs {
        let (x, y) = (x % n, y % n);
        if x == y {
            continue;
        }
        let w = Weighing::one_vs_one(x, y).unwrap();
        let o = outcome_of(&w, &a, &WeightModel::Generic).unwrap().unwrap();
        t.push(w, o);
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_check_agrees_with_brute_force(
        classes in prop::collection::vec(1u8..=3, 2..=8),
        pairs in prop::collection::vec((0usize..8, 0usize..8), 0..14),
    ) {
        let n = classes.len();
        let t = tiny_transcript(&classes, &pairs);
        let fast = transcript_sorted_unique(&t, n, 3, PanPolicy::Tiny).unwrap();
        let slow = transcript_sorted_unique_bruteforce(&t, n, 3).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn adversary_witness_stays_consistent(
        n in 2usize..10,
        pairs in prop::collection::vec((0usize..10, 0usize..10), 0..20),
    ) {
        let mut s = AdversaryState::new(n);
        for (x, y) in pairs {
            let (x, y) = (x % n, y % n);
            if x == y {
                continue;
            }
            let before = s.potential_halves();
            s.answer(&Weighing::one_vs_one(x, y).unwrap()).unwrap();
            prop_assert!(before - s.potential_halves() <= 2);
            prop_assert!(s.records().last().unwrap().matches_table());
        }
        prop_assert!(s.witness_consistent());
    }
}

#[test]
fn adversary_plays_are_forced() {
    for n in 2..=9 {
        let p = play(&SortThreeTiny, n).unwrap();
        assert!(p.trace.is_sound());
        let lines = p.to_jsonl();
        assert_eq!(lines.lines().count(), p.count() + 1);
    }
}
