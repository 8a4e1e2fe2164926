//! Sorting with one coin per pan.

use std::collections::BTreeMap;

use super::pairing::pairing_round;
use super::{attach_set_aside, compare, note_pairs, Strategy};
use crate::error::{Error, Result};
use crate::model::{Answer, Goal, OrderedPartition, Outcome, Weighing};
use crate::order::TinyKnowledge;
use crate::scale::{LabelEvent, PanPolicy, Scale};

fn single_group(n: usize) -> Answer {
    Answer::Sorted(OrderedPartition::new(vec![(0..n).collect()], n).expect("covers 0..n"))
}

/// Compares the first coin with every other coin: lighter, equal and
/// heavier groups. Exact when the coins span at most two classes.
fn sort_two_groups<F>(coins: &[usize], mut cmp: F) -> Result<Vec<Vec<usize>>>
where
    F: FnMut(usize, usize) -> Result<Outcome>,
{
    let Some((&pivot, rest)) = coins.split_first() else {
        return Ok(Vec::new());
    };
    let (mut lighter, mut equal, mut heavier) = (Vec::new(), vec![pivot], Vec::new());
    for &c in rest {
        match cmp(pivot, c)? {
            Outcome::LeftHeavier => lighter.push(c),
            Outcome::Balanced => equal.push(c),
            Outcome::LeftLighter => heavier.push(c),
        }
    }
    Ok([lighter, equal, heavier]
        .into_iter()
        .filter(|g| !g.is_empty())
        .collect())
}

pub fn sort_two_tiny(n: usize, scale: &mut dyn Scale) -> Result<Answer> {
    let coins: Vec<usize> = (0..n).collect();
    let groups = sort_two_groups(&coins, |a, b| compare(scale, a, b))?;
    Ok(Answer::Sorted(OrderedPartition::new(groups, n)?))
}

/// Three rounds: pair unknown coins, sort the light and heavy piles as
/// two-weight problems, then place the extra coin.
pub fn sort_three_tiny(n: usize, scale: &mut dyn Scale) -> Result<Answer> {
    if n <= 1 {
        return Ok(single_group(n));
    }
    let coins: Vec<usize> = (0..n).collect();
    let round = pairing_round(&coins, scale)?;
    note_pairs(scale, &round.pairs);
    if round.pairs.is_empty() {
        return Ok(single_group(n));
    }

    let light = sort_two_groups(&round.lights(), |a, b| compare(scale, a, b))?;
    let heavy = sort_two_groups(&round.heavies(), |a, b| compare(scale, a, b))?;
    // light coins are classes {1,2}, heavy coins {2,3}; each light coin is
    // lighter than its partner, which pins how the piles line up
    let mut groups: Vec<Vec<usize>> = match (light.as_slice(), heavy.as_slice()) {
        ([l0, l1], [h0, h1]) => {
            let mut mid = l1.clone();
            mid.extend(h0);
            vec![l0.clone(), mid, h1.clone()]
        }
        ([l0, l1], [h0]) => vec![l0.clone(), l1.clone(), h0.clone()],
        ([l0], [h0, h1]) => vec![l0.clone(), h0.clone(), h1.clone()],
        ([l0], [h0]) => vec![l0.clone(), h0.clone()],
        _ => {
            return Err(Error::StrategyUnsound(
                "a labeled pile spans more than two classes".into(),
            ))
        }
    };

    if let Some(x) = round.leftover {
        if groups.len() == 3 {
            let slot = match compare(scale, x, groups[1][0])? {
                Outcome::LeftLighter => 0,
                Outcome::Balanced => 1,
                Outcome::LeftHeavier => 2,
            };
            groups[slot].push(x);
        } else {
            match compare(scale, x, groups[0][0])? {
                Outcome::LeftLighter => groups.insert(0, vec![x]),
                Outcome::Balanced => groups[0].push(x),
                Outcome::LeftHeavier => match compare(scale, x, groups[1][0])? {
                    Outcome::LeftLighter => groups.insert(1, vec![x]),
                    Outcome::Balanced => groups[1].push(x),
                    Outcome::LeftHeavier => groups.push(vec![x]),
                },
            }
        }
    }
    attach_set_aside(groups, &round.links, n)
}

/// Forwards to the inner scale while recording every outcome.
struct Recorder<'a> {
    inner: &'a mut dyn Scale,
    know: TinyKnowledge,
}

impl Scale for Recorder<'_> {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        let o = self.inner.weigh(w)?;
        self.know.record_weighing(w, o)?;
        Ok(o)
    }

    fn note(&mut self, event: LabelEvent) {
        self.inner.note(event)
    }
}

/// `k`-weight sorting by repeated light/heavy reduction.
///
/// Every pile carries a window `lo..=hi` of possible classes. A reduction
/// round pairs the pile's coins: the lighter coin of an unbalanced pair
/// cannot be class `hi`, the heavier cannot be `lo`. Piles with equal
/// windows merge. After `k - 2` rounds every pile spans at most two classes
/// and is sorted around a pivot; the remaining open relations between piles
/// are settled by comparing representatives, skipping whatever the
/// transcript already forces.
pub fn sort_k_tiny(n: usize, k: u8, scale: &mut dyn Scale) -> Result<Answer> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    if n <= 1 {
        return Ok(single_group(n));
    }
    let mut rec = Recorder {
        inner: scale,
        know: TinyKnowledge::new(n, k),
    };
    let mut piles: BTreeMap<(u8, u8), Vec<usize>> = BTreeMap::new();
    piles.insert((1, k), (0..n).collect());

    for _ in 0..k - 2 {
        let mut next: BTreeMap<(u8, u8), Vec<usize>> = BTreeMap::new();
        for ((lo, hi), coins) in piles {
            if hi - lo < 2 || coins.len() < 2 {
                next.entry((lo, hi)).or_default().extend(coins);
                continue;
            }
            let round = pairing_round(&coins, &mut rec)?;
            let mut lights = round.lights();
            let mut heavies = round.heavies();
            if let Some(x) = round.leftover {
                if lights.is_empty() {
                    // every coin of the pile balanced: one unknown class
                    next.entry((lo, hi)).or_default().push(x);
                } else if compare(&mut rec, x, lights[0])? == Outcome::LeftHeavier {
                    heavies.push(x);
                } else {
                    lights.push(x);
                }
            }
            for &c in &lights {
                rec.note(LabelEvent::Window { coin: c, lo, hi: hi - 1 });
            }
            for &c in &heavies {
                rec.note(LabelEvent::Window { coin: c, lo: lo + 1, hi });
            }
            if !lights.is_empty() {
                next.entry((lo, hi - 1)).or_default().extend(lights);
            }
            if !heavies.is_empty() {
                next.entry((lo + 1, hi)).or_default().extend(heavies);
            }
        }
        piles = next;
    }

    for coins in piles.values_mut() {
        coins.sort_unstable();
        sort_two_groups(coins, |a, b| compare(&mut rec, a, b))?;
    }

    loop {
        let an = rec.know.analyze();
        if !an.is_consistent() {
            return Err(Error::StrategyUnsound("contradictory outcomes".into()));
        }
        if let Some(p) = an.sorted_partition() {
            return Ok(Answer::Sorted(p));
        }
        let mut comps: Vec<usize> = (0..an.num_components()).map(|v| an.components()[v][0]).collect();
        comps.sort_by_key(|&coin| an.class_range(coin));
        let m = comps.len();
        let pair = (1..m)
            .flat_map(|gap| (0..m - gap).map(move |i| (i, i + gap)))
            .map(|(i, j)| (comps[i], comps[j]))
            .find(|&(a, b)| an.relation(a, b).is_none())
            .expect("an unsorted consistent state has an open pair");
        compare(&mut rec, pair.0, pair.1)?;
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SortTwoTiny;

impl Strategy for SortTwoTiny {
    fn name(&self) -> &'static str {
        "sort2-tiny"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Tiny
    }
    fn classes(&self) -> u8 {
        2
    }
    fn goal(&self) -> Goal {
        Goal::Sort
    }
    fn bound(&self, n: usize) -> usize {
        n.saturating_sub(1)
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        sort_two_tiny(n, scale)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SortThreeTiny;

impl Strategy for SortThreeTiny {
    fn name(&self) -> &'static str {
        "sort3-tiny"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Tiny
    }
    fn classes(&self) -> u8 {
        3
    }
    fn goal(&self) -> Goal {
        Goal::Sort
    }
    /// `ceil(3n/2) - 2`.
    fn bound(&self, n: usize) -> usize {
        if n <= 1 {
            0
        } else {
            (3 * n).div_ceil(2) - 2
        }
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        sort_three_tiny(n, scale)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SortKTiny {
    k: u8,
}

impl SortKTiny {
    pub fn new(k: u8) -> Result<Self> {
        if !(2..=9).contains(&k) {
            return Err(Error::InvalidArgument(format!("k = {k} outside 2..=9")));
        }
        Ok(SortKTiny { k })
    }

    pub fn k(&self) -> u8 {
        self.k
    }
}

impl Strategy for SortKTiny {
    fn name(&self) -> &'static str {
        "sortk-tiny"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Tiny
    }
    fn classes(&self) -> u8 {
        self.k
    }
    fn goal(&self) -> Goal {
        Goal::Sort
    }
    /// `k·floor(n/2) + 1 + (k-1)(k-4)/2`.
    fn bound(&self, n: usize) -> usize {
        if n <= 1 {
            return 0;
        }
        let k = self.k as i64;
        let b = k * (n as i64 / 2) + 1 + (k - 1) * (k - 4) / 2;
        b.max(0) as usize
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        sort_k_tiny(n, self.k, scale)
    }
}
