//! Adversary for one-coin-per-pan sorting with three weights.
//!
//! Coins start unlabeled (`U`). The adversary answers so that every coin it
//! has labeled light (`L`) can be class 1 and every heavy (`H`) coin class 3:
//!
//! | pans  | answer            | labels        |
//! |-------|-------------------|---------------|
//! | U, U  | left lighter      | left L, right H |
//! | U, L  | U heavier         | U becomes H   |
//! | U, H  | U lighter         | U becomes L   |
//! | L, H  | L lighter         |               |
//! | L, L  | balanced          | components merge |
//! | H, H  | balanced          | components merge |
//!
//! With `u` unlabeled coins and `l`, `h` equality components among the L and
//! H coins, the potential `s = 1.5u + l + h` starts at `1.5n` and drops by
//! at most one per weighing, while a strategy can only stop once `s <= 2`.

use num_rational::Rational64;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::model::{weak_order_of, Answer, Assignment, Outcome, Transcript, Weighing};
use crate::scale::{consistent, transcript_jsonl, PanPolicy, Scale, WeightModel};
use crate::strategies::Strategy;
use crate::verify::answer_forced;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    U,
    L,
    H,
}

/// Which row of the answer table a weighing fell under, numbered 1 to 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    UnknownUnknown = 1,
    UnknownLight = 2,
    UnknownHeavy = 3,
    LightHeavy = 4,
    LightLight = 5,
    HeavyHeavy = 6,
}

impl Rule {
    pub fn number(self) -> u8 {
        self as u8
    }

    /// Allowed changes of `2s` for this rule.
    pub fn allowed_half_deltas(self) -> &'static [i64] {
        match self {
            Rule::UnknownUnknown => &[-2],
            Rule::UnknownLight | Rule::UnknownHeavy => &[-1],
            Rule::LightHeavy => &[0],
            Rule::LightLight | Rule::HeavyHeavy => &[-2, 0],
        }
    }
}

/// Counts `(u, l, h)`.
pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub weighing: Weighing,
    pub outcome: Outcome,
    pub rule: Rule,
    pub before: Triple,
    pub after: Triple,
}

fn halves(t: Triple) -> i64 {
    (3 * t.0 + 2 * t.1 + 2 * t.2) as i64
}

impl StepRecord {
    /// Change of `2s` across this weighing.
    pub fn half_delta(&self) -> i64 {
        halves(self.after) - halves(self.before)
    }

    pub fn matches_table(&self) -> bool {
        self.rule.allowed_half_deltas().contains(&self.half_delta())
    }
}

#[derive(Debug, Clone)]
pub struct AdversaryState {
    labels: Vec<Label>,
    eq: DisjointSets,
    u: usize,
    l: usize,
    h: usize,
    transcript: Transcript,
    records: Vec<StepRecord>,
}

impl AdversaryState {
    pub fn new(n: usize) -> Self {
        AdversaryState {
            labels: vec![Label::U; n],
            eq: DisjointSets::new(n),
            u: n,
            l: 0,
            h: 0,
            transcript: Transcript::new(),
            records: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn triple(&self) -> Triple {
        (self.u, self.l, self.h)
    }

    /// `2s = 3u + 2l + 2h`.
    pub fn potential_halves(&self) -> i64 {
        halves(self.triple())
    }

    pub fn potential(&self) -> Rational64 {
        Rational64::new(self.potential_halves(), 2)
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn records(&self) -> &[StepRecord] {
        &self.records
    }

    /// L coins weigh 1, unlabeled 2, H coins 3.
    pub fn witness(&self) -> Assignment {
        let classes = self
            .labels
            .iter()
            .map(|l| match l {
                Label::L => 1,
                Label::U => 2,
                Label::H => 3,
            })
            .collect();
        Assignment::new(classes, 3).expect("classes lie in 1..=3")
    }

    fn label(&mut self, coin: usize, to: Label) {
        self.labels[coin] = to;
        self.u -= 1;
        match to {
            Label::L => self.l += 1,
            Label::H => self.h += 1,
            Label::U => unreachable!("labels never revert"),
        }
    }

    pub fn answer(&mut self, w: &Weighing) -> Result<Outcome> {
        PanPolicy::Tiny.check(w)?;
        w.check_range(self.n())?;
        let (a, b) = (w.left()[0], w.right()[0]);
        let before = self.triple();
        use Label::*;
        let (outcome, rule) = match (self.labels[a], self.labels[b]) {
            (U, U) => {
                self.label(a, L);
                self.label(b, H);
                (Outcome::LeftLighter, Rule::UnknownUnknown)
            }
            (U, L) => {
                self.label(a, H);
                (Outcome::LeftHeavier, Rule::UnknownLight)
            }
            (L, U) => {
                self.label(b, H);
                (Outcome::LeftLighter, Rule::UnknownLight)
            }
            (U, H) => {
                self.label(a, L);
                (Outcome::LeftLighter, Rule::UnknownHeavy)
            }
            (H, U) => {
                self.label(b, L);
                (Outcome::LeftHeavier, Rule::UnknownHeavy)
            }
            (L, H) => (Outcome::LeftLighter, Rule::LightHeavy),
            (H, L) => (Outcome::LeftHeavier, Rule::LightHeavy),
            (L, L) => {
                if self.eq.union(a, b) {
                    self.l -= 1;
                }
                (Outcome::Balanced, Rule::LightLight)
            }
            (H, H) => {
                if self.eq.union(a, b) {
                    self.h -= 1;
                }
                (Outcome::Balanced, Rule::HeavyHeavy)
            }
        };
        self.transcript.push(w.clone(), outcome);
        self.records.push(StepRecord {
            weighing: w.clone(),
            outcome,
            rule,
            before,
            after: self.triple(),
        });
        Ok(outcome)
    }

    /// Whether the witness agrees with every outcome issued so far.
    pub fn witness_consistent(&self) -> bool {
        let wit = self.witness();
        self.transcript
            .steps()
            .iter()
            .all(|(w, o)| consistent(&wit, w, *o, &WeightModel::Generic).unwrap_or(false))
    }
}

impl Scale for AdversaryState {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        self.answer(w)
    }
}

/// Values of `2s`, before any weighing and after each one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialTrace {
    pub initial: i64,
    pub after: Vec<i64>,
}

impl PotentialTrace {
    pub fn from_records(n: usize, records: &[StepRecord]) -> Self {
        PotentialTrace {
            initial: 3 * n as i64,
            after: records.iter().map(|r| halves(r.after)).collect(),
        }
    }

    /// Never increases and drops by at most one (two halves) per weighing.
    pub fn is_sound(&self) -> bool {
        let mut prev = self.initial;
        self.after.iter().all(|&s| {
            let ok = s <= prev && prev - s <= 2;
            prev = s;
            ok
        })
    }

    pub fn as_strings(&self) -> Vec<String> {
        self.after.iter().map(|s| format!("{s}/2")).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Play {
    pub answer: Answer,
    pub state: AdversaryState,
    pub trace: PotentialTrace,
}

impl Play {
    pub fn count(&self) -> usize {
        self.state.transcript().len()
    }

    pub fn transcript(&self) -> &Transcript {
        self.state.transcript()
    }

    pub fn to_jsonl(&self) -> String {
        transcript_jsonl(self.transcript(), Some(&self.answer), Some(&self.trace.as_strings()))
    }
}

/// Runs `strategy` on `n` coins against the adversary and checks that the
/// answer it gives is both consistent and forced.
pub fn play(strategy: &dyn Strategy, n: usize) -> Result<Play> {
    if strategy.policy() != PanPolicy::Tiny || strategy.classes() != 3 {
        return Err(Error::InvalidArgument(format!(
            "{} is not a three-weight one-coin-per-pan sorter",
            strategy.name()
        )));
    }
    let mut state = AdversaryState::new(n);
    let answer = strategy.run(n, &mut state)?;
    let trace = PotentialTrace::from_records(n, state.records());
    if !state.witness_consistent() {
        return Err(Error::StrategyUnsound("witness contradicts the transcript".into()));
    }
    if answer != Answer::Sorted(weak_order_of(&state.witness())) {
        return Err(Error::StrategyUnsound(format!("answer {answer} is wrong for the witness")));
    }
    if !answer_forced(state.transcript(), n, 3, PanPolicy::Tiny, &answer)? {
        return Err(Error::StrategyUnsound(format!("answer {answer} is not forced")));
    }
    Ok(Play { answer, state, trace })
}

/// `ceil(3n/2) - 2`, the number of weighings the adversary forces.
pub fn lower_bound(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (3 * n).div_ceil(2) - 2
    }
}
