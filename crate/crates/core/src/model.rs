//! Domain vocabulary: coins, weight classes, weighings, outcomes,
//! transcripts and the sorted answer.
//!
//! Coins are dense 0-based ids. Weight classes are ordinals `1..=c`, class 1
//! being the lightest; numeric magnitudes only exist in
//! [`WeightModel::Concrete`](crate::scale::WeightModel).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default number of distinct weights.
pub const DEFAULT_CLASSES: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightClass(u8);

impl WeightClass {
    pub fn new(index: u8, classes: u8) -> Result<Self> {
        if index == 0 || index > classes {
            return Err(Error::InvalidAssignment(format!(
                "class {index} outside 1..={classes}"
            )));
        }
        Ok(WeightClass(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

/// The hidden weight class of every coin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    classes: Vec<u8>,
    c: u8,
}

impl Assignment {
    pub fn new(classes: Vec<u8>, c: u8) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidAssignment("no coins".into()));
        }
        if c == 0 {
            return Err(Error::InvalidAssignment("zero weight classes".into()));
        }
        if let Some(bad) = classes.iter().find(|&&k| k == 0 || k > c) {
            return Err(Error::InvalidAssignment(format!(
                "class {bad} outside 1..={c}"
            )));
        }
        Ok(Assignment { classes, c })
    }

    /// Parses a digit string such as `"3112"`, coin 0 first.
    pub fn from_digits(digits: &str, c: u8) -> Result<Self> {
        let classes = digits
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidAssignment(format!("bad digit `{ch}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Assignment::new(classes, c)
    }

    pub fn to_digits(&self) -> String {
        self.classes.iter().map(|k| char::from(b'0' + k)).collect()
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    pub fn num_classes(&self) -> u8 {
        self.c
    }

    pub fn class(&self, coin: usize) -> u8 {
        self.classes[coin]
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }

    /// The unique coin of class 2, if there is exactly one.
    pub fn middle_coin(&self) -> Option<usize> {
        let mut it = self.classes.iter().enumerate().filter(|(_, &k)| k == 2);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

/// One use of the scale: the coins on the left pan against the coins on the
/// right pan. Both pans are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weighing {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Weighing {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidWeighing("empty pan".into()));
        }
        left.sort_unstable();
        right.sort_unstable();
        let total = left.len() + right.len();
        let mut all: Vec<usize> = left.iter().chain(&right).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::InvalidWeighing(
                "a coin appears twice on the scale".into(),
            ));
        }
        Ok(Weighing { left, right })
    }

    pub fn one_vs_one(a: usize, b: usize) -> Result<Self> {
        Weighing::new(vec![a], vec![b])
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn is_one_vs_one(&self) -> bool {
        self.left.len() == 1 && self.right.len() == 1
    }

    pub fn swapped(&self) -> Weighing {
        Weighing {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.left.iter().chain(&self.right).find(|&&c| c >= n) {
            Some(&coin) => Err(Error::CoinOutOfRange { coin, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Weighing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[usize]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}} vs {{{}}}", side(&self.left), side(&self.right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    LeftLighter,
    Balanced,
    LeftHeavier,
}

impl Outcome {
    pub const ALL: [Outcome; 3] = [Outcome::LeftLighter, Outcome::Balanced, Outcome::LeftHeavier];

    /// `left.cmp(right)` read as a scale outcome.
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Outcome::LeftLighter,
            Ordering::Equal => Outcome::Balanced,
            Ordering::Greater => Outcome::LeftHeavier,
        }
    }

    pub fn as_ordering(self) -> Ordering {
        match self {
            Outcome::LeftLighter => Ordering::Less,
            Outcome::Balanced => Ordering::Equal,
            Outcome::LeftHeavier => Ordering::Greater,
        }
    }

    /// The outcome seen with the pans swapped.
    pub fn flip(self) -> Self {
        Outcome::from_ordering(self.as_ordering().reverse())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::LeftLighter => "<",
            Outcome::Balanced => "=",
            Outcome::LeftHeavier => ">",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "<" => Some(Outcome::LeftLighter),
            "=" => Some(Outcome::Balanced),
            ">" => Some(Outcome::LeftHeavier),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    steps: Vec<(Weighing, Outcome)>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, w: Weighing, o: Outcome) {
        self.steps.push((w, o));
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(Weighing, Outcome)] {
        &self.steps
    }

    pub fn is_tiny(&self) -> bool {
        self.steps.iter().all(|(w, _)| w.is_one_vs_one())
    }
}

impl FromIterator<(Weighing, Outcome)> for Transcript {
    fn from_iter<I: IntoIterator<Item = (Weighing, Outcome)>>(iter: I) -> Self {
        Transcript {
            steps: iter.into_iter().collect(),
        }
    }
}

/// A sorted answer: groups of equal-weight coins in ascending weight order.
/// Carries no absolute class labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    groups: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// Validates that `groups` are non-empty, disjoint and cover `0..n`.
    pub fn new(groups: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut groups = groups;
        for g in &mut groups {
            if g.is_empty() {
                return Err(Error::InvalidArgument("empty group in partition".into()));
            }
            g.sort_unstable();
            for &coin in g.iter() {
                if coin >= n {
                    return Err(Error::CoinOutOfRange { coin, n });
                }
                if std::mem::replace(&mut seen[coin], true) {
                    return Err(Error::InvalidArgument(format!(
                        "coin {coin} in two groups"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "coin {missing} missing from partition"
            )));
        }
        Ok(OrderedPartition { groups })
    }

    /// Builds the partition from per-coin ranks; groups follow ascending rank.
    pub(crate) fn from_ranks<K: Ord + Copy>(ranks: &[K]) -> Self {
        let keys: BTreeSet<K> = ranks.iter().copied().collect();
        let groups = keys
            .into_iter()
            .map(|k| {
                ranks
                    .iter()
                    .enumerate()
                    .filter(|(_, &r)| r == k)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        OrderedPartition { groups }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn n(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn group_of(&self, coin: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&coin))
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                let ids: Vec<String> = g.iter().map(|c| c.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        f.write_str(&parts.join(" < "))
    }
}

/// What a strategy reports when it stops weighing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Answer {
    Sorted(OrderedPartition),
    Middle(usize),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Sorted(p) => write!(f, "{p}"),
            Answer::Middle(c) => write!(f, "middle={c}"),
        }
    }
}

/// Serializes as `{"groups": [[ids],...]}` or `{"middle": id}`.
impl serde::Serialize for Answer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Answer::Sorted(p) => map.serialize_entry("groups", p.groups())?,
            Answer::Middle(c) => map.serialize_entry("middle", c)?,
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    Sort,
    FindMiddle,
}

impl Goal {
    /// The answer that is correct for `a`, if any.
    pub fn truth(self, a: &Assignment) -> Option<Answer> {
        match self {
            Goal::Sort => Some(Answer::Sorted(weak_order_of(a))),
            Goal::FindMiddle => a.middle_coin().map(Answer::Middle),
        }
    }
}

/// The ground-truth answer for `a`: equal-class coins grouped, groups in
/// ascending class order, empty classes omitted.
pub fn weak_order_of(a: &Assignment) -> OrderedPartition {
    OrderedPartition::from_ranks(a.classes())
}

/// Whether `a` and `b` are indistinguishable on a balance scale.
pub fn same_weak_order(a: &Assignment, b: &Assignment) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(weak_order_of(a) == weak_order_of(b))
}
