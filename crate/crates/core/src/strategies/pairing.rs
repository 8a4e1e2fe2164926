use std::collections::{BTreeMap, VecDeque};

use super::compare;
use crate::error::Result;
use crate::model::Outcome;
use crate::scale::{LabelEvent, Scale};

/// Result of weighing unknown coins against each other until at most one
/// is left.
#[derive(Debug, Clone, Default)]
pub(crate) struct PairingRound {
    /// Unbalanced pairs as `(lighter, heavier)`, in weighing order.
    pub pairs: Vec<(usize, usize)>,
    /// Set-aside coin -> the coin it balanced with.
    pub links: BTreeMap<usize, usize>,
    /// The unknown coin left over, if any.
    pub leftover: Option<usize>,
}

impl PairingRound {
    pub fn lights(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn heavies(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// Pairs the two smallest unknown ids each time. On balance the higher id is
/// set aside and the lower id stays unknown.
pub(crate) fn pairing_round(coins: &[usize], scale: &mut dyn Scale) -> Result<PairingRound> {
    let mut pool: VecDeque<usize> = {
        let mut v = coins.to_vec();
        v.sort_unstable();
        v.into()
    };
    let mut round = PairingRound::default();
    while pool.len() >= 2 {
        let a = pool.pop_front().expect("len >= 2");
        let b = pool.pop_front().expect("len >= 2");
        match compare(scale, a, b)? {
            Outcome::Balanced => {
                round.links.insert(b, a);
                scale.note(LabelEvent::SetAside { coin: b, matched_to: a });
                pool.push_front(a);
            }
            Outcome::LeftLighter => round.pairs.push((a, b)),
            Outcome::LeftHeavier => round.pairs.push((b, a)),
        }
    }
    round.leftover = pool.pop_front();
    Ok(round)
}
