//! The balance-scale oracle.
//!
//! Under the [`WeightModel::Generic`] model the weights are treated as
//! linearly independent over the integers: a weighing has an outcome only
//! when its sign is the same for every strictly increasing positive weight
//! vector. Writing `d` for the per-class count difference (left minus right)
//! and `s_j = d_j + ... + d_c` for its suffix sums,
//!
//! ```text
//! d·w = s_1·w_1 + s_2·(w_2 - w_1) + ... + s_c·(w_c - w_{c-1})
//! ```
//!
//! where every bracket is an independent positive quantity, so the sign is
//! forced exactly when all suffix sums share a sign.

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Answer, Assignment, Outcome, Transcript, Weighing};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum WeightModel {
    #[default]
    Generic,
    /// Ascending positive weights, one per class.
    Concrete(Vec<Rational64>),
}

impl WeightModel {
    pub fn concrete(weights: Vec<Rational64>) -> Result<Self> {
        if weights.is_empty() || weights[0] <= Rational64::zero() {
            return Err(Error::InvalidArgument(
                "concrete weights must be positive".into(),
            ));
        }
        if weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "concrete weights must be strictly increasing".into(),
            ));
        }
        Ok(WeightModel::Concrete(weights))
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        WeightModel::concrete(weights.iter().map(|&w| Rational64::from_integer(w)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PanPolicy {
    /// One coin per pan.
    Tiny,
    /// Any number of coins per pan.
    Huge,
}

impl PanPolicy {
    pub fn check(self, w: &Weighing) -> Result<()> {
        match self {
            PanPolicy::Tiny if !w.is_one_vs_one() => Err(Error::PanPolicyViolation(format!(
                "tiny pans hold one coin each, got {w}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PanPolicy::Tiny => "tiny",
            PanPolicy::Huge => "huge",
        }
    }
}

/// Per-class count difference, left pan minus right pan. Index `i` holds
/// class `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaVector(pub Vec<i64>);

impl DeltaVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `s_j = d_j + ... + d_c`, returned in class order `j = 1..=c`.
    pub fn suffix_sums(&self) -> Vec<i64> {
        let mut out = vec![0; self.0.len()];
        let mut acc = 0;
        for (i, &d) in self.0.iter().enumerate().rev() {
            acc += d;
            out[i] = acc;
        }
        out
    }

    pub fn dot(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(d, w)| d * w).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinacy {
    Determined(Outcome),
    Undetermined,
}

pub fn delta_vector(w: &Weighing, a: &Assignment) -> Result<DeltaVector> {
    w.check_range(a.n())?;
    let mut d = vec![0i64; a.num_classes() as usize];
    for &coin in w.left() {
        d[a.class(coin) as usize - 1] += 1;
    }
    for &coin in w.right() {
        d[a.class(coin) as usize - 1] -= 1;
    }
    Ok(DeltaVector(d))
}

/// Suffix-sum rule for generic weights.
pub fn determinacy(d: &DeltaVector) -> Determinacy {
    if d.is_zero() {
        return Determinacy::Determined(Outcome::Balanced);
    }
    let sums = d.suffix_sums();
    if sums.iter().all(|&s| s >= 0) {
        Determinacy::Determined(Outcome::LeftHeavier)
    } else if sums.iter().all(|&s| s <= 0) {
        Determinacy::Determined(Outcome::LeftLighter)
    } else {
        Determinacy::Undetermined
    }
}

/// Outcome of `w` for assignment `a` under `model`; `None` when generic
/// weights leave it undetermined.
pub fn outcome_of(w: &Weighing, a: &Assignment, model: &WeightModel) -> Result<Option<Outcome>> {
    match model {
        WeightModel::Generic => match determinacy(&delta_vector(w, a)?) {
            Determinacy::Determined(o) => Ok(Some(o)),
            Determinacy::Undetermined => Ok(None),
        },
        WeightModel::Concrete(weights) => {
            w.check_range(a.n())?;
            if weights.len() < a.num_classes() as usize {
                return Err(Error::InvalidArgument(format!(
                    "{} concrete weights for {} classes",
                    weights.len(),
                    a.num_classes()
                )));
            }
            let pan = |coins: &[usize]| -> Rational64 {
                coins
                    .iter()
                    .map(|&c| weights[a.class(c) as usize - 1])
                    .fold(Rational64::zero(), |acc, x| acc + x)
            };
            Ok(Some(Outcome::from_ordering(pan(w.left()).cmp(&pan(w.right())))))
        }
    }
}

/// Whether evaluating `w` on `a` would produce `o`. Undetermined generic
/// outcomes are consistent with nothing.
pub fn consistent(a: &Assignment, w: &Weighing, o: Outcome, m: &WeightModel) -> Result<bool> {
    Ok(outcome_of(w, a, m)? == Some(o))
}

/// Bookkeeping a strategy reports about its own deductions. Used only for
/// instrumented audits; it never influences outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelEvent {
    /// Class is not the heaviest of three.
    Light(usize),
    /// Class is not the lightest of three.
    Heavy(usize),
    /// The coin balanced against `matched_to` and left play.
    SetAside { coin: usize, matched_to: usize },
    /// Class lies in `lo..=hi`.
    Window { coin: usize, lo: u8, hi: u8 },
    /// Class is known exactly.
    Resolved { coin: usize, class: u8 },
}

/// Anything that can answer weighings: a session over a hidden assignment,
/// an adversary, a replay driver.
pub trait Scale {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome>;

    fn note(&mut self, _event: LabelEvent) {}
}

impl<S: Scale + ?Sized> Scale for &mut S {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        (**self).weigh(w)
    }

    fn note(&mut self, event: LabelEvent) {
        (**self).note(event)
    }
}

/// One run against a fixed hidden assignment.
#[derive(Debug, Clone)]
pub struct Session {
    hidden: Assignment,
    model: WeightModel,
    policy: PanPolicy,
    transcript: Transcript,
}

impl Session {
    pub fn new(hidden: Assignment, model: WeightModel, policy: PanPolicy) -> Self {
        Session {
            hidden,
            model,
            policy,
            transcript: Transcript::new(),
        }
    }

    pub fn generic(hidden: Assignment, policy: PanPolicy) -> Self {
        Session::new(hidden, WeightModel::Generic, policy)
    }

    pub fn evaluate(&mut self, w: &Weighing) -> Result<Outcome> {
        self.policy.check(w)?;
        let o = outcome_of(w, &self.hidden, &self.model)?
            .ok_or_else(|| Error::UndeterminedOutcome(w.clone()))?;
        self.transcript.push(w.clone(), o);
        Ok(o)
    }

    pub fn count(&self) -> usize {
        self.transcript.len()
    }

    pub fn hidden(&self) -> &Assignment {
        &self.hidden
    }

    pub fn policy(&self) -> PanPolicy {
        self.policy
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }
}

impl Scale for Session {
    fn weigh(&mut self, w: &Weighing) -> Result<Outcome> {
        self.evaluate(w)
    }
}

#[derive(Serialize)]
struct StepLine<'a> {
    step: usize,
    left: &'a [usize],
    right: &'a [usize],
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<&'a str>,
}

#[derive(Serialize)]
struct AnswerLine<'a> {
    answer: &'a Answer,
}

/// Transcript as JSON lines, steps numbered from 1, optionally followed by
/// the answer line. `extra_s`, when given, supplies the per-step `"s"` field.
pub fn transcript_jsonl(t: &Transcript, answer: Option<&Answer>, extra_s: Option<&[String]>) -> String {
    let mut out = String::new();
    for (i, (w, o)) in t.steps().iter().enumerate() {
        let line = StepLine {
            step: i + 1,
            left: w.left(),
            right: w.right(),
            outcome: o.symbol(),
            s: extra_s.and_then(|s| s.get(i)).map(String::as_str),
        };
        out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
        out.push('\n');
    }
    if let Some(answer) = answer {
        out.push_str(&serde_json::to_string(&AnswerLine { answer }).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OrderedPartition;
    use proptest::prelude::*;

    fn asg(d: &str) -> Assignment {
        Assignment::from_digits(d, 3).unwrap()
    }

    fn w(l: &[usize], r: &[usize]) -> Weighing {
        Weighing::new(l.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn delta_vector_examples() {
        assert_eq!(delta_vector(&w(&[0], &[1]), &asg("13")).unwrap().0, vec![1, 0, -1]);
        assert_eq!(
            delta_vector(&w(&[0, 1], &[2, 3]), &asg("2213")).unwrap().0,
            vec![-1, 2, -1]
        );
        assert_eq!(delta_vector(&w(&[0], &[1]), &asg("22")).unwrap().0, vec![0, 0, 0]);
        assert_eq!(
            delta_vector(&w(&[0], &[5]), &asg("22")),
            Err(Error::CoinOutOfRange { coin: 5, n: 2 })
        );
    }

    #[test]
    fn determinacy_examples() {
        use Determinacy::*;
        assert_eq!(determinacy(&DeltaVector(vec![0, 0, 0])), Determined(Outcome::Balanced));
        assert_eq!(determinacy(&DeltaVector(vec![-1, 0, 1])), Determined(Outcome::LeftHeavier));
        assert_eq!(determinacy(&DeltaVector(vec![-1, 2, -1])), Undetermined);
        // the witnesses behind the last verdict
        let d = DeltaVector(vec![-1, 2, -1]);
        assert_eq!(d.dot(&[1, 2, 4]), -1);
        assert_eq!(d.dot(&[1, 3, 4]), 1);
    }

    #[test]
    fn evaluate_examples() {
        let mut s = Session::generic(asg("13"), PanPolicy::Tiny);
        assert_eq!(s.evaluate(&w(&[0], &[1])).unwrap(), Outcome::LeftLighter);
        assert_eq!(s.count(), 1);

        let mut s = Session::generic(asg("1212"), PanPolicy::Huge);
        assert_eq!(s.evaluate(&w(&[0, 1], &[2, 3])).unwrap(), Outcome::Balanced);

        let mut s = Session::generic(asg("2213"), PanPolicy::Huge);
        assert!(matches!(
            s.evaluate(&w(&[0, 1], &[2, 3])),
            Err(Error::UndeterminedOutcome(_))
        ));
        assert_eq!(s.count(), 0);

        let mut s = Session::generic(asg("1212"), PanPolicy::Tiny);
        assert!(matches!(
            s.evaluate(&w(&[0, 1], &[2, 3])),
            Err(Error::PanPolicyViolation(_))
        ));
    }

    #[test]
    fn concrete_model_compares_sums() {
        let m = WeightModel::from_integers(&[1, 2, 4]).unwrap();
        let mut s = Session::new(asg("2213"), m, PanPolicy::Huge);
        assert_eq!(s.evaluate(&w(&[0, 1], &[2, 3])).unwrap(), Outcome::LeftLighter);
        assert!(WeightModel::from_integers(&[2, 2, 3]).is_err());
        assert!(WeightModel::from_integers(&[0, 2, 3]).is_err());
    }

    #[test]
    fn consistent_examples() {
        let g = WeightModel::Generic;
        assert!(consistent(&asg("13"), &w(&[0], &[1]), Outcome::LeftLighter, &g).unwrap());
        assert!(!consistent(&asg("22"), &w(&[0], &[1]), Outcome::LeftLighter, &g).unwrap());
        // undetermined is consistent with nothing
        for o in Outcome::ALL {
            assert!(!consistent(&asg("2213"), &w(&[0, 1], &[2, 3]), o, &g).unwrap());
        }
    }

    #[test]
    fn jsonl_format_is_exact() {
        let mut t = Transcript::new();
        t.push(w(&[1, 0], &[3, 2]), Outcome::Balanced);
        t.push(w(&[0], &[4]), Outcome::LeftLighter);
        let p = OrderedPartition::new(vec![vec![0, 1, 2, 3], vec![4]], 5).unwrap();
        let text = transcript_jsonl(&t, Some(&Answer::Sorted(p)), None);
        assert_eq!(
            text,
            "{\"step\":1,\"left\":[0,1],\"right\":[2,3],\"outcome\":\"=\"}\n\
             {\"step\":2,\"left\":[0],\"right\":[4],\"outcome\":\"<\"}\n\
             {\"answer\":{\"groups\":[[0,1,2,3],[4]]}}\n"
        );
        let s = vec!["5/2".to_string(), "3/2".to_string()];
        let text = transcript_jsonl(&t, Some(&Answer::Middle(4)), Some(&s));
        assert!(text.starts_with("{\"step\":1,\"left\":[0,1],\"right\":[2,3],\"outcome\":\"=\",\"s\":\"5/2\"}\n"));
        assert!(text.ends_with("{\"answer\":{\"middle\":4}}\n"));
    }

    fn pans(n: usize) -> impl Strategy<Value = (Vec<u8>, Vec<usize>, Vec<usize>)> {
        (
            proptest::collection::vec(1u8..=3, n),
            proptest::collection::vec(0usize..3, n),
        )
            .prop_filter_map("both pans non-empty", |(classes, side)| {
                let left: Vec<usize> = (0..side.len()).filter(|&i| side[i] == 1).collect();
                let right: Vec<usize> = (0..side.len()).filter(|&i| side[i] == 2).collect();
                (!left.is_empty() && !right.is_empty()).then_some((classes, left, right))
            })
    }

    proptest! {
        #[test]
        fn swapping_pans_flips_outcome((classes, l, r) in pans(7), ws in proptest::sample::subsequence((1i64..=20).collect::<Vec<_>>(), 3)) {
            let a = Assignment::new(classes, 3).unwrap();
            let fw = w(&l, &r);
            let sw = fw.swapped();
            for m in [WeightModel::Generic, WeightModel::from_integers(&ws).unwrap()] {
                let o1 = outcome_of(&fw, &a, &m).unwrap();
                let o2 = outcome_of(&sw, &a, &m).unwrap();
                prop_assert_eq!(o1.map(Outcome::flip), o2);
            }
        }

        #[test]
        fn generic_balance_means_equal_pans((classes, l, r) in pans(8)) {
            let a = Assignment::new(classes, 3).unwrap();
            let fw = w(&l, &r);
            if outcome_of(&fw, &a, &WeightModel::Generic).unwrap() == Some(Outcome::Balanced) {
                prop_assert!(delta_vector(&fw, &a).unwrap().is_zero());
                prop_assert_eq!(l.len(), r.len());
            }
        }
    }
}
