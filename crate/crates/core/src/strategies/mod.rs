//! Adaptive weighing strategies.
//!
//! A strategy is a deterministic procedure that poses weighings to a
//! [`Scale`] one at a time and finally returns an [`Answer`]. Because every
//! strategy is deterministic, [`StepDriver`] can expose any of them
//! step-wise by replaying the outcomes supplied so far.
//!
//! Stable names: `sort2-tiny`, `sort3-tiny`, `sortk-tiny`, `sort-mid1`,
//! `find-mid`, `sort3-huge`, `ternary`.

mod huge;
mod middle;
mod pairing;
mod tiny;

use std::collections::BTreeMap;

pub use huge::{sort_three_huge, SortThreeHuge};
pub use middle::{
    find_middle, sort_middle_one, ternary_middle_search, FindMiddle, Mark, MiddleFound,
    MiddleSearchState, SortMiddleOne, Ternary,
};
pub use tiny::{sort_k_tiny, sort_three_tiny, sort_two_tiny, SortKTiny, SortThreeTiny, SortTwoTiny};

use crate::error::{Error, Result};
use crate::model::{Answer, Assignment, Goal, OrderedPartition, Outcome, Weighing};
use crate::scale::{LabelEvent, PanPolicy, Scale, Session, WeightModel};

pub const NAMES: [&str; 7] = [
    "sort2-tiny",
    "sort3-tiny",
    "sortk-tiny",
    "sort-mid1",
    "find-mid",
    "sort3-huge",
    "ternary",
];

pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn policy(&self) -> PanPolicy;

    /// Number of weight classes the strategy is built for.
    fn classes(&self) -> u8;

    fn goal(&self) -> Goal;

    /// Worst-case number of weighings claimed for `n` coins.
    fn bound(&self, n: usize) -> usize;

    fn run(&self, n: usize, scale: &mut dyn Scale) -> Result<Answer>;
}

/// Extra parameters some strategies need.
#[derive(Debug, Clone, Default)]
pub struct StrategyParams {
    /// Class count for `sortk-tiny` (default 3).
    pub k: Option<u8>,
    /// Per-coin marks for `ternary`.
    pub marks: Option<Vec<Mark>>,
}

pub fn by_name(name: &str) -> Result<Box<dyn Strategy>> {
    build(name, &StrategyParams::default())
}

pub fn build(name: &str, params: &StrategyParams) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "sort2-tiny" => Box::new(SortTwoTiny),
        "sort3-tiny" => Box::new(SortThreeTiny),
        "sortk-tiny" => Box::new(SortKTiny::new(params.k.unwrap_or(3))?),
        "sort-mid1" => Box::new(SortMiddleOne),
        "find-mid" => Box::new(FindMiddle),
        "sort3-huge" => Box::new(SortThreeHuge),
        "ternary" => Box::new(Ternary::new(params.marks.clone().ok_or_else(|| {
            Error::InvalidArgument("ternary needs per-coin L/H marks".into())
        })?)),
        other => return Err(Error::UnknownStrategy(other.to_string())),
    })
}

/// Smallest `k` with `3^k >= m`.
pub fn ceil_log3(m: usize) -> usize {
    let mut k = 0;
    let mut p = 1usize;
    while p < m {
        p *= 3;
        k += 1;
    }
    k
}

/// What a step-wise strategy does next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyStep {
    Weigh(Weighing),
    Answer(Answer),
}

/// Drives a strategy one weighing at a time.
///
/// Call [`StepDriver::step`] with `None` first, then with the outcome of
/// each weighing it returned. After an answer no further steps are taken.
pub struct StepDriver<'s> {
    strategy: &'s dyn Strategy,
    n: usize,
    outcomes: Vec<Outcome>,
    done: Option<Answer>,
}

struct Replay<'a> {
    outcomes: &'a [Outcome],
    pos: usize,
    policy: PanPolicy,
}

impl Scale for Replay<'_> {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        self.policy.check(w)?;
        match self.outcomes.get(self.pos) {
            Some(&o) => {
                self.pos += 1;
                Ok(o)
            }
            None => Err(Error::AwaitingOutcome(w.clone())),
        }
    }
}

impl<'s> StepDriver<'s> {
    pub fn new(strategy: &'s dyn Strategy, n: usize) -> Self {
        StepDriver {
            strategy,
            n,
            outcomes: Vec::new(),
            done: None,
        }
    }

    pub fn step(&mut self, last: Option<Outcome>) -> Result<StrategyStep> {
        if let Some(answer) = &self.done {
            return Ok(StrategyStep::Answer(answer.clone()));
        }
        if let Some(o) = last {
            self.outcomes.push(o);
        }
        let mut replay = Replay {
            outcomes: &self.outcomes,
            pos: 0,
            policy: self.strategy.policy(),
        };
        match self.strategy.run(self.n, &mut replay) {
            Ok(answer) => {
                if replay.pos != self.outcomes.len() {
                    return Err(Error::InvalidArgument(
                        "more outcomes supplied than weighings posed".into(),
                    ));
                }
                self.done = Some(answer.clone());
                Ok(StrategyStep::Answer(answer))
            }
            Err(Error::AwaitingOutcome(w)) => Ok(StrategyStep::Weigh(w)),
            Err(e) => Err(e),
        }
    }

    pub fn weighings_so_far(&self) -> usize {
        self.outcomes.len()
    }
}

/// Runs `strategy` on a fresh generic-weights session over `hidden`.
pub fn execute(strategy: &dyn Strategy, hidden: &Assignment) -> Result<(Answer, Session)> {
    let mut session = Session::new(hidden.clone(), WeightModel::Generic, strategy.policy());
    let answer = strategy.run(hidden.n(), &mut session)?;
    Ok((answer, session))
}

/// Per-coin label used by the pairing rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinLabel {
    U,
    L,
    H,
    SetAside { matched_to: usize },
}

pub(crate) fn compare(scale: &mut dyn Scale, a: usize, b: usize) -> Result<Outcome> {
    scale.weigh(&Weighing::one_vs_one(a, b)?)
}

pub(crate) fn weigh_sets(scale: &mut dyn Scale, left: &[usize], right: &[usize]) -> Result<Outcome> {
    scale.weigh(&Weighing::new(left.to_vec(), right.to_vec())?)
}

/// Follows set-aside links to the active coin a coin was matched with.
pub(crate) fn resolve_root(links: &BTreeMap<usize, usize>, mut coin: usize) -> usize {
    while let Some(&next) = links.get(&coin) {
        coin = next;
    }
    coin
}

/// Builds the answer from known classes; every coin must be present.
pub(crate) fn partition_from_classes(classes: &BTreeMap<usize, u8>, n: usize) -> Result<Answer> {
    if classes.len() != n {
        return Err(Error::StrategyUnsound(format!(
            "{} of {n} coins classified",
            classes.len()
        )));
    }
    let ranks: Vec<u8> = classes.values().copied().collect();
    Ok(Answer::Sorted(OrderedPartition::from_ranks(&ranks)))
}

/// Adds set-aside coins to the groups holding their roots.
pub(crate) fn attach_set_aside(
    mut groups: Vec<Vec<usize>>,
    links: &BTreeMap<usize, usize>,
    n: usize,
) -> Result<Answer> {
    for &coin in links.keys() {
        let root = resolve_root(links, coin);
        let g = groups
            .iter()
            .position(|g| g.contains(&root))
            .ok_or_else(|| Error::StrategyUnsound(format!("root {root} of coin {coin} unplaced")))?;
        groups[g].push(coin);
    }
    Ok(Answer::Sorted(OrderedPartition::new(groups, n)?))
}

pub(crate) fn note_pairs(scale: &mut dyn Scale, pairs: &[(usize, usize)]) {
    for &(lo, hi) in pairs {
        scale.note(LabelEvent::Light(lo));
        scale.note(LabelEvent::Heavy(hi));
    }
}
