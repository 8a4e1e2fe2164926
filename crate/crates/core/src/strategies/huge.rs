//! Three-weight sorting when pans hold any number of coins.

use std::collections::BTreeMap;

use super::pairing::pairing_round;
use super::{compare, note_pairs, partition_from_classes, resolve_root, weigh_sets, Strategy};
use crate::error::{Error, Result};
use crate::model::{Answer, Goal, OrderedPartition, Outcome};
use crate::scale::{LabelEvent, PanPolicy, Scale};

/// Pairs weighed against pairs. The first two pairs that differ give a
/// class-1 coin and a class-3 coin; every other pair is then classified
/// with one weighing against that reference.
pub fn sort_three_huge(n: usize, scale: &mut dyn Scale) -> Result<Answer> {
    if n <= 1 {
        return Ok(Answer::Sorted(OrderedPartition::new(vec![(0..n).collect()], n)?));
    }
    let coins: Vec<usize> = (0..n).collect();
    let round = pairing_round(&coins, scale)?;
    note_pairs(scale, &round.pairs);
    let pairs = &round.pairs;
    let Some(&(lo1, hi1)) = pairs.first() else {
        // nothing unbalanced: all coins weigh the same
        return Ok(Answer::Sorted(OrderedPartition::new(vec![(0..n).collect()], n)?));
    };

    // coin -> coin known to share its class
    let mut links = round.links.clone();
    let mut reference = None;
    for (i, &(lo, hi)) in pairs.iter().enumerate().skip(1) {
        match weigh_sets(scale, &[lo1, hi1], &[lo, hi])? {
            Outcome::Balanced => {
                links.insert(lo, lo1);
                links.insert(hi, hi1);
            }
            Outcome::LeftLighter => {
                reference = Some((i, pairs[0], pairs[i]));
                break;
            }
            Outcome::LeftHeavier => {
                reference = Some((i, pairs[i], pairs[0]));
                break;
            }
        }
    }

    let Some((j, lighter, heavier)) = reference else {
        // every pair matches the first one: two classes among paired coins
        let mut groups = vec![vec![lo1], vec![hi1]];
        if let Some(x) = round.leftover {
            match compare(scale, x, lo1)? {
                Outcome::LeftLighter => groups.insert(0, vec![x]),
                Outcome::Balanced => groups[0].push(x),
                Outcome::LeftHeavier => match compare(scale, x, hi1)? {
                    Outcome::LeftLighter => groups.insert(1, vec![x]),
                    Outcome::Balanced => groups[1].push(x),
                    Outcome::LeftHeavier => groups.push(vec![x]),
                },
            }
        }
        for &coin in links.keys() {
            let root = resolve_root(&links, coin);
            let g = groups
                .iter()
                .position(|g| g.contains(&root))
                .ok_or_else(|| Error::StrategyUnsound(format!("root {root} unplaced")))?;
            groups[g].push(coin);
        }
        return Ok(Answer::Sorted(OrderedPartition::new(groups, n)?));
    };

    let (ref1, ref3) = (lighter.0, heavier.1);
    let mut classes: BTreeMap<usize, u8> = BTreeMap::new();
    let mut set = |scale: &mut dyn Scale, coin: usize, class: u8| {
        scale.note(LabelEvent::Resolved { coin, class });
        classes.insert(coin, class);
    };
    set(scale, ref1, 1);
    set(scale, ref3, 3);
    for &(lo, hi) in &pairs[j + 1..] {
        let (a, b) = match weigh_sets(scale, &[lo, hi], &[ref1, ref3])? {
            Outcome::LeftLighter => (1, 2),
            Outcome::Balanced => (1, 3),
            Outcome::LeftHeavier => (2, 3),
        };
        set(scale, lo, a);
        set(scale, hi, b);
    }
    let d1 = if compare(scale, lighter.1, ref3)? == Outcome::Balanced { 3 } else { 2 };
    set(scale, lighter.1, d1);
    let c2 = if compare(scale, heavier.0, ref1)? == Outcome::Balanced { 1 } else { 2 };
    set(scale, heavier.0, c2);
    if let Some(x) = round.leftover {
        let mid = if d1 == 2 { lighter.1 } else { heavier.0 };
        let class = match compare(scale, x, mid)? {
            Outcome::LeftLighter => 1,
            Outcome::Balanced => 2,
            Outcome::LeftHeavier => 3,
        };
        set(scale, x, class);
    }
    for &coin in links.keys() {
        let root = resolve_root(&links, coin);
        let class = *classes
            .get(&root)
            .ok_or_else(|| Error::StrategyUnsound(format!("root {root} unresolved")))?;
        classes.insert(coin, class);
    }
    partition_from_classes(&classes, n)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SortThreeHuge;

impl Strategy for SortThreeHuge {
    fn name(&self) -> &'static str {
        "sort3-huge"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Huge
    }
    fn classes(&self) -> u8 {
        3
    }
    fn goal(&self) -> Goal {
        Goal::Sort
    }
    fn bound(&self, n: usize) -> usize {
        if n <= 1 {
            0
        } else {
            n + 1
        }
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        sort_three_huge(n, scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{weak_order_of, Assignment};
    use crate::strategies::execute;

    fn run(digits: &str) -> usize {
        let a = Assignment::from_digits(digits, 3).unwrap();
        let (answer, session) = execute(&SortThreeHuge, &a).unwrap();
        assert_eq!(answer, Answer::Sorted(weak_order_of(&a)), "{digits}");
        session.count()
    }

    #[test]
    fn all_equal_takes_n_minus_one() {
        for n in 2..8 {
            assert_eq!(run(&"2".repeat(n)), n - 1);
        }
    }

    #[test]
    fn one_unbalanced_pair_rest_matched() {
        assert_eq!(run("1313"), 3);
        assert_eq!(run("1133"), 4);
        assert_eq!(run("121212"), 5);
    }

    #[test]
    fn mixed_cases_within_bound() {
        for d in ["123", "321", "12312", "3211232", "13231213", "2213", "31"] {
            assert!(run(d) <= d.len() + 1, "{d}");
        }
    }
}
