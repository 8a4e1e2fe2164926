//! Exhaustive checks of strategies against whole universes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::model::{weak_order_of, Answer, Assignment, Goal, OrderedPartition, Outcome, Transcript, Weighing};
use crate::order::TinyKnowledge;
use crate::scale::{consistent, LabelEvent, PanPolicy, Scale, Session, WeightModel};
use crate::solver::Universe;
use crate::strategies::{self, Mark, Strategy, StrategyParams, Ternary};

/// Most runs a single exhaustive check will perform.
pub const VERIFY_GUARD: usize = 1 << 17;

/// Largest `n` for brute-force forcedness checks.
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub assignment: String,
    /// Marks given to `ternary`, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marks: Option<String>,
    pub reason: String,
    pub transcript: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub strategy: String,
    pub universe: String,
    pub n: usize,
    pub runs: usize,
    pub failures: Vec<Failure>,
    pub max_count: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub bound: usize,
    pub bound_met: bool,
    pub bound_tight: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bound_met
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "strategy={}\tuniverse={}\tn={}\truns={}\tfailures={}\tmax={}\tbound={}\ttight={}",
            self.strategy,
            self.universe,
            self.n,
            self.runs,
            self.failures.len(),
            self.max_count,
            self.bound,
            if self.bound_tight { "yes" } else { "no" }
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

struct RunResult {
    count: usize,
    failure: Option<Failure>,
}

fn run_one(strategy: &dyn Strategy, a: &Assignment, goal: Goal, marks: Option<String>) -> RunResult {
    let mut session = Session::new(a.clone(), WeightModel::Generic, strategy.policy());
    let outcome = strategy.run(a.n(), &mut session);
    let count = session.count();
    let reason = match (outcome, goal.truth(a)) {
        (Err(e), _) => Some(format!("error: {e}")),
        (Ok(_), None) => Some("no correct answer exists for this assignment".to_string()),
        (Ok(got), Some(want)) if got != want => Some(format!("answered {got}, expected {want}")),
        _ => None,
    };
    RunResult {
        count,
        failure: reason.map(|reason| Failure {
            assignment: a.to_digits(),
            marks,
            reason,
            transcript: session
                .transcript()
                .steps()
                .iter()
                .map(|(w, o)| format!("{w} {o}"))
                .collect(),
        }),
    }
}

fn aggregate(strategy: &str, u: &Universe, bound: usize, results: Vec<RunResult>) -> VerifyReport {
    let mut histogram = BTreeMap::new();
    let mut failures = Vec::new();
    for r in results.iter() {
        *histogram.entry(r.count).or_insert(0) += 1;
    }
    for r in results {
        if let Some(f) = r.failure {
            failures.push(f);
        }
    }
    let runs = histogram.values().sum();
    let max_count = histogram.keys().next_back().copied().unwrap_or(0);
    VerifyReport {
        strategy: strategy.to_string(),
        universe: u.name().to_string(),
        n: u.n(),
        runs,
        failures,
        max_count,
        histogram,
        bound,
        bound_met: max_count <= bound,
        bound_tight: max_count == bound,
    }
}

fn guard(runs: usize) -> Result<()> {
    if runs > VERIFY_GUARD {
        return Err(Error::GuardExceeded(format!("{runs} runs exceed {VERIFY_GUARD}")));
    }
    Ok(())
}

/// Runs `strategy` once per assignment of `u`.
pub fn exhaustive_check(strategy: &dyn Strategy, u: &Universe, exec: Exec) -> Result<VerifyReport> {
    guard(u.len())?;
    let goal = strategy.goal();
    let results = exec.map(u.assignments(), |a| run_one(strategy, a, goal, None));
    Ok(aggregate(strategy.name(), u, strategy.bound(u.n()), results))
}

/// Every truthful marking of every assignment: extremes get their only
/// possible mark, the middle coin each of the two.
pub fn truthful_markings(a: &Assignment) -> Vec<Vec<Mark>> {
    let base: Vec<Mark> = a
        .classes()
        .iter()
        .map(|&c| if c == 1 { Mark::L } else { Mark::H })
        .collect();
    match a.middle_coin() {
        Some(m) => {
            let mut lo = base.clone();
            lo[m] = Mark::L;
            let mut hi = base;
            hi[m] = Mark::H;
            vec![lo, hi]
        }
        None => vec![base],
    }
}

/// `ternary` over every truthful marking of every assignment of `u`.
pub fn exhaustive_ternary(u: &Universe, exec: Exec) -> Result<VerifyReport> {
    let cases: Vec<(Assignment, Vec<Mark>)> = u
        .assignments()
        .iter()
        .flat_map(|a| truthful_markings(a).into_iter().map(move |m| (a.clone(), m)))
        .collect();
    guard(cases.len())?;
    let results = exec.map(&cases, |(a, marks)| {
        let s = Ternary::new(marks.clone());
        let text: String = marks.iter().map(|m| if *m == Mark::L { 'L' } else { 'H' }).collect();
        run_one(&s, a, Goal::FindMiddle, Some(text))
    });
    Ok(aggregate("ternary", u, strategies::ceil_log3(u.n()), results))
}

/// Exhaustive check of a strategy addressed by name.
pub fn exhaustive_check_by_name(name: &str, params: &StrategyParams, u: &Universe, exec: Exec) -> Result<VerifyReport> {
    if name == "ternary" {
        return exhaustive_ternary(u, exec);
    }
    let s = strategies::build(name, params)?;
    exhaustive_check(s.as_ref(), u, exec)
}

/// Every `c`-class assignment of `n` coins consistent with `t`.
pub fn consistent_assignments(t: &Transcript, n: usize, c: u8) -> Result<Vec<Assignment>> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::GuardExceeded(format!("brute force over n = {n}")));
    }
    let u = Universe::all(n, c)?;
    let mut out = Vec::new();
    for a in u.assignments() {
        let mut ok = true;
        for (w, o) in t.steps() {
            if !consistent(a, w, *o, &WeightModel::Generic)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// The sorted answer if every assignment consistent with `t` shares one
/// weak order, by enumeration.
pub fn transcript_sorted_unique_bruteforce(t: &Transcript, n: usize, c: u8) -> Result<Option<OrderedPartition>> {
    let all = consistent_assignments(t, n, c)?;
    let first = all.first().ok_or(Error::InconsistentTranscript)?;
    let order = weak_order_of(first);
    Ok(all[1..].iter().all(|a| weak_order_of(a) == order).then_some(order))
}

/// The sorted answer if the transcript forces one. One-coin transcripts
/// under the tiny policy are decided from the comparison graph; anything
/// else is enumerated.
pub fn transcript_sorted_unique(t: &Transcript, n: usize, c: u8, policy: PanPolicy) -> Result<Option<OrderedPartition>> {
    if policy == PanPolicy::Tiny && t.is_tiny() {
        let an = TinyKnowledge::from_transcript(t, n, c)?.analyze();
        if !an.is_consistent() {
            return Err(Error::InconsistentTranscript);
        }
        return Ok(an.sorted_partition());
    }
    transcript_sorted_unique_bruteforce(t, n, c)
}

/// Scale that checks every label a strategy reports against the truth.
struct Auditor {
    session: Session,
    violations: usize,
}

impl Scale for Auditor {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        self.session.evaluate(w)
    }

    fn note(&mut self, event: LabelEvent) {
        let a = self.session.hidden();
        let c = a.num_classes();
        let ok = match event {
            LabelEvent::Light(coin) => a.class(coin) < c,
            LabelEvent::Heavy(coin) => a.class(coin) > 1,
            LabelEvent::SetAside { coin, matched_to } => a.class(coin) == a.class(matched_to),
            LabelEvent::Window { coin, lo, hi } => (lo..=hi).contains(&a.class(coin)),
            LabelEvent::Resolved { coin, class } => a.class(coin) == class,
        };
        if !ok {
            self.violations += 1;
        }
    }
}

/// Number of runs over `u` in which some reported label contradicts the
/// hidden assignment.
pub fn label_violations(strategy: &dyn Strategy, u: &Universe, exec: Exec) -> Result<usize> {
    guard(u.len())?;
    let bad = exec.map(u.assignments(), |a| {
        let mut auditor = Auditor {
            session: Session::generic(a.clone(), strategy.policy()),
            violations: 0,
        };
        let run = strategy.run(a.n(), &mut auditor);
        run.is_err() || auditor.violations > 0
    });
    Ok(bad.into_iter().filter(|&b| b).count())
}

/// True iff every label in every run over `u` is sound.
pub fn label_audit(strategy: &dyn Strategy, u: &Universe, exec: Exec) -> Result<bool> {
    Ok(label_violations(strategy, u, exec)? == 0)
}

/// Checks a claimed answer against the set of assignments consistent with
/// the transcript.
pub fn answer_forced(t: &Transcript, n: usize, c: u8, policy: PanPolicy, answer: &Answer) -> Result<bool> {
    match answer {
        Answer::Sorted(p) => Ok(transcript_sorted_unique(t, n, c, policy)?.as_ref() == Some(p)),
        Answer::Middle(m) => {
            let all = consistent_assignments(t, n, c)?;
            if all.is_empty() {
                return Err(Error::InconsistentTranscript);
            }
            Ok(all.iter().all(|a| a.middle_coin() == Some(*m)))
        }
    }
}
