//! Strategies for coin sets with a single middle-weight coin.

use std::collections::BTreeMap;

use super::pairing::pairing_round;
use super::{ceil_log3, compare, note_pairs, partition_from_classes, resolve_root, weigh_sets, Strategy};
use crate::error::{Error, Result};
use crate::model::{Answer, Goal, OrderedPartition, Outcome};
use crate::scale::{LabelEvent, PanPolicy, Scale};

/// Side a candidate is known to lean to: `L` means class 1 or 2, `H` class 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    L,
    H,
}

impl Mark {
    pub fn from_char(c: char) -> Option<Mark> {
        match c {
            'L' | 'l' => Some(Mark::L),
            'H' | 'h' => Some(Mark::H),
            _ => None,
        }
    }

    /// Parses a string such as `"LLHH"`.
    pub fn parse_all(s: &str) -> Result<Vec<Mark>> {
        s.chars()
            .map(|c| {
                Mark::from_char(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("mark {c:?} is not L or H")))
            })
            .collect()
    }

    /// Class of the coin once it is known not to be the middle one.
    fn extreme(self) -> u8 {
        match self {
            Mark::L => 1,
            Mark::H => 3,
        }
    }
}

/// Candidates for the middle coin plus the coins already pinned down.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiddleSearchState {
    pub candidates: Vec<(usize, Mark)>,
    pub resolved: BTreeMap<usize, u8>,
}

impl MiddleSearchState {
    pub fn new(candidates: Vec<(usize, Mark)>) -> Self {
        MiddleSearchState {
            candidates,
            resolved: BTreeMap::new(),
        }
    }

    fn resolve(&mut self, scale: &mut dyn Scale, coin: usize, class: u8) {
        scale.note(LabelEvent::Resolved { coin, class });
        self.resolved.insert(coin, class);
    }

    fn resolved_with(&self, class: u8) -> Option<usize> {
        self.resolved
            .iter()
            .find(|&(_, &c)| c == class)
            .map(|(&coin, _)| coin)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleFound {
    pub middle: usize,
    /// Classes of every coin that was a candidate or already resolved.
    pub resolved: BTreeMap<usize, u8>,
}

/// Narrows the candidates to the middle coin, cutting their number to a
/// third with every weighing.
pub fn ternary_middle_search(mut state: MiddleSearchState, scale: &mut dyn Scale) -> Result<MiddleFound> {
    let mut cand = std::mem::take(&mut state.candidates);
    cand.sort_unstable_by_key(|&(coin, _)| coin);
    loop {
        let m = cand.len();
        if m == 0 {
            return Err(Error::InfeasibleSplit("no candidates left".into()));
        }
        if m == 1 {
            let middle = cand[0].0;
            state.resolve(scale, middle, 2);
            return Ok(MiddleFound {
                middle,
                resolved: state.resolved,
            });
        }
        if m == 2 {
            let ((x, mx), (y, my)) = (cand[0], cand[1]);
            let middle = if mx == my {
                let o = compare(scale, x, y)?;
                // two L coins: the heavier is the middle; two H coins: the lighter
                match (mx, o) {
                    (_, Outcome::Balanced) => {
                        return Err(Error::StrategyUnsound("two alike candidates balanced".into()))
                    }
                    (Mark::L, Outcome::LeftHeavier) | (Mark::H, Outcome::LeftLighter) => x,
                    _ => y,
                }
            } else {
                let (l, h) = if mx == Mark::L { (x, y) } else { (y, x) };
                if let Some(r) = state.resolved_with(1) {
                    if compare(scale, l, r)? == Outcome::Balanced {
                        h
                    } else {
                        l
                    }
                } else if let Some(r) = state.resolved_with(3) {
                    if compare(scale, h, r)? == Outcome::Balanced {
                        l
                    } else {
                        h
                    }
                } else {
                    return Err(Error::InfeasibleSplit(
                        "an L and an H candidate with no resolved extreme coin".into(),
                    ));
                }
            };
            for &(coin, mark) in &cand {
                if coin != middle {
                    state.resolve(scale, coin, mark.extreme());
                }
            }
            cand = vec![(middle, Mark::L)];
            continue;
        }

        let cap = 3usize.pow(ceil_log3(m) as u32 - 1);
        let t = (m - cap).div_ceil(2);
        let lights: Vec<usize> = cand.iter().filter(|c| c.1 == Mark::L).map(|c| c.0).collect();
        let heavies: Vec<usize> = cand.iter().filter(|c| c.1 == Mark::H).map(|c| c.0).collect();
        let a = (lights.len() / 2).min(t);
        let b = t - a;
        if b > heavies.len() / 2 {
            return Err(Error::InfeasibleSplit(format!(
                "{} L and {} H candidates into pans of {t}",
                lights.len(),
                heavies.len()
            )));
        }
        let (l1, l2) = (&lights[..a], &lights[a..2 * a]);
        let (h1, h2) = (&heavies[..b], &heavies[b..2 * b]);
        let left: Vec<usize> = l1.iter().chain(h1).copied().collect();
        let right: Vec<usize> = l2.iter().chain(h2).copied().collect();
        let keep: Vec<usize> = match weigh_sets(scale, &left, &right)? {
            Outcome::Balanced => lights[2 * a..].iter().chain(&heavies[2 * b..]).copied().collect(),
            Outcome::LeftHeavier => l1.iter().chain(h2).copied().collect(),
            Outcome::LeftLighter => h1.iter().chain(l2).copied().collect(),
        };
        let mut next = Vec::with_capacity(keep.len());
        for &(coin, mark) in &cand {
            if keep.contains(&coin) {
                next.push((coin, mark));
            } else {
                state.resolve(scale, coin, mark.extreme());
            }
        }
        cand = next;
    }
}

/// Middle search over a fixed, externally supplied marking of all coins.
#[derive(Debug, Clone)]
pub struct Ternary {
    marks: Vec<Mark>,
}

impl Ternary {
    pub fn new(marks: Vec<Mark>) -> Self {
        Ternary { marks }
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }
}

impl Strategy for Ternary {
    fn name(&self) -> &'static str {
        "ternary"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Huge
    }
    fn classes(&self) -> u8 {
        3
    }
    fn goal(&self) -> Goal {
        Goal::FindMiddle
    }
    fn bound(&self, n: usize) -> usize {
        ceil_log3(n)
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        if self.marks.len() != n {
            return Err(Error::SizeMismatch(self.marks.len(), n));
        }
        let state = MiddleSearchState::new(self.marks.iter().copied().enumerate().collect());
        Ok(Answer::Middle(ternary_middle_search(state, scale)?.middle))
    }
}

/// Round one of pairings; every coin that did not balance gets a mark.
fn marked_candidates(n: usize, scale: &mut dyn Scale) -> Result<(Vec<(usize, Mark)>, BTreeMap<usize, usize>)> {
    let coins: Vec<usize> = (0..n).collect();
    let round = pairing_round(&coins, scale)?;
    note_pairs(scale, &round.pairs);
    let mut cand: Vec<(usize, Mark)> = round
        .pairs
        .iter()
        .flat_map(|&(lo, hi)| [(lo, Mark::L), (hi, Mark::H)])
        .collect();
    if let Some(x) = round.leftover {
        let mark = match round.pairs.first() {
            Some(&(lo, _)) => classify_leftover(scale, x, lo)?,
            // nothing unbalanced: every coin is equal, so x is never the middle
            None => Mark::L,
        };
        cand.push((x, mark));
    }
    Ok((cand, round.links))
}

fn classify_leftover(scale: &mut dyn Scale, x: usize, light: usize) -> Result<Mark> {
    let mark = if compare(scale, x, light)? == Outcome::LeftHeavier {
        scale.note(LabelEvent::Heavy(x));
        Mark::H
    } else {
        scale.note(LabelEvent::Light(x));
        Mark::L
    };
    Ok(mark)
}

pub fn sort_middle_one(n: usize, scale: &mut dyn Scale) -> Result<Answer> {
    if n <= 1 {
        return Ok(Answer::Sorted(OrderedPartition::new(vec![(0..n).collect()], n)?));
    }
    let (cand, links) = marked_candidates(n, scale)?;
    if cand.len() <= 1 {
        return Ok(Answer::Sorted(OrderedPartition::new(vec![(0..n).collect()], n)?));
    }
    let found = ternary_middle_search(MiddleSearchState::new(cand), scale)?;
    let mut classes = found.resolved;
    for &coin in links.keys() {
        let root = resolve_root(&links, coin);
        let class = *classes
            .get(&root)
            .ok_or_else(|| Error::StrategyUnsound(format!("root {root} unresolved")))?;
        classes.insert(coin, class);
    }
    partition_from_classes(&classes, n)
}

pub fn find_middle(n: usize, scale: &mut dyn Scale) -> Result<Answer> {
    if n == 0 {
        return Err(Error::InvalidArgument("no coins".into()));
    }
    let mut cand: Vec<(usize, Mark)> = Vec::new();
    let mut discarded: Vec<usize> = Vec::new();
    for i in 0..n / 2 {
        let (x, y) = (2 * i, 2 * i + 1);
        match compare(scale, x, y)? {
            Outcome::Balanced => discarded.extend([x, y]),
            Outcome::LeftLighter => cand.extend([(x, Mark::L), (y, Mark::H)]),
            Outcome::LeftHeavier => cand.extend([(x, Mark::H), (y, Mark::L)]),
        }
    }
    for &(coin, mark) in &cand {
        scale.note(match mark {
            Mark::L => LabelEvent::Light(coin),
            Mark::H => LabelEvent::Heavy(coin),
        });
    }
    if n % 2 == 1 {
        let x = n - 1;
        match cand.iter().find(|c| c.1 == Mark::L) {
            Some(&(light, _)) => {
                let mark = classify_leftover(scale, x, light)?;
                cand.push((x, mark));
            }
            // all pairs balanced, so the middle coin cannot be among them
            None => return Ok(Answer::Middle(x)),
        }
    }
    let mut state = MiddleSearchState::new(cand.clone());
    if let [(x, mx), (y, my)] = cand[..] {
        if mx != my {
            let (l, h) = if mx == Mark::L { (x, y) } else { (y, x) };
            let d = *discarded
                .first()
                .ok_or_else(|| Error::StrategyUnsound("two candidates and nothing discarded".into()))?;
            match compare(scale, l, d)? {
                Outcome::LeftHeavier => return Ok(Answer::Middle(l)),
                Outcome::Balanced => return Ok(Answer::Middle(h)),
                Outcome::LeftLighter => {
                    // l is at most 2 and lighter than d, so d is heavy
                    state.resolve(scale, d, 3);
                }
            }
        }
    }
    Ok(Answer::Middle(ternary_middle_search(state, scale)?.middle))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SortMiddleOne;

impl Strategy for SortMiddleOne {
    fn name(&self) -> &'static str {
        "sort-mid1"
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
        n
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        sort_middle_one(n, scale)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FindMiddle;

impl Strategy for FindMiddle {
    fn name(&self) -> &'static str {
        "find-mid"
    }
    fn policy(&self) -> PanPolicy {
        PanPolicy::Huge
    }
    fn classes(&self) -> u8 {
        3
    }
    fn goal(&self) -> Goal {
        Goal::FindMiddle
    }
    /// `ceil(n/2) + ceil(log3 n)`.
    fn bound(&self, n: usize) -> usize {
        n.div_ceil(2) + ceil_log3(n)
    }
    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer> {
        find_middle(n, scale)
    }
}
