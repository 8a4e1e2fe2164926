//! Exact minimax over knowledge states.
//!
//! A knowledge state is the set of admissible assignments still consistent
//! with the outcomes seen so far, stored as a bitmask over the universe's
//! assignment list. The value of a state is 0 when every member agrees on
//! the answer and otherwise `1 + min over weighings of max over children`.
//! Values are found by iterative deepening over a table of proven lower and
//! upper bounds keyed by the raw bitmask.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::model::{Answer, Assignment, Goal, Outcome, Weighing};
use crate::scale::{delta_vector, determinacy, Determinacy, PanPolicy};
use crate::strategies::ceil_log3;

/// Largest universe the solver accepts.
pub const MAX_UNIVERSE: usize = 1 << 16;

/// Largest universe that can be enumerated at all.
pub const MAX_ENUMERATION: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    name: String,
    n: usize,
    c: u8,
    assignments: Vec<Assignment>,
}

fn digits_of(mut index: usize, n: usize, c: u8) -> Vec<u8> {
    let mut classes = vec![1u8; n];
    for slot in classes.iter_mut().rev() {
        *slot = (index % c as usize) as u8 + 1;
        index /= c as usize;
    }
    classes
}

impl Universe {
    /// All `c^n` assignments; coin 0 is the most significant digit.
    pub fn all(n: usize, c: u8) -> Result<Self> {
        if n == 0 || c == 0 {
            return Err(Error::InvalidArgument("need n >= 1 and c >= 1".into()));
        }
        let size = (c as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_ENUMERATION)
            .ok_or_else(|| Error::GuardExceeded(format!("{c}^{n} assignments")))?;
        let assignments = (0..size)
            .map(|i| Assignment::new(digits_of(i, n, c), c))
            .collect::<Result<_>>()?;
        Ok(Universe {
            name: "all".into(),
            n,
            c,
            assignments,
        })
    }

    /// Exactly one class-2 coin and at least one coin of each of classes 1 and 3.
    pub fn one_middle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("one-middle needs n >= 3".into()));
        }
        if n > 20 {
            return Err(Error::GuardExceeded(format!("one-middle with n = {n}")));
        }
        let mut assignments = Vec::new();
        for middle in 0..n {
            for mask in 1..(1usize << (n - 1)) - 1 {
                let mut bit = 0;
                let classes: Vec<u8> = (0..n)
                    .map(|coin| {
                        if coin == middle {
                            return 2;
                        }
                        let heavy = mask >> bit & 1 == 1;
                        bit += 1;
                        if heavy {
                            3
                        } else {
                            1
                        }
                    })
                    .collect();
                assignments.push(Assignment::new(classes, 3)?);
            }
        }
        assignments.sort_by(|a, b| a.classes().cmp(b.classes()));
        Ok(Universe {
            name: "one-middle".into(),
            n,
            c: 3,
            assignments,
        })
    }

    /// Nine coins: four light, one middle, four heavy.
    pub fn hunt_4_1_4() -> Self {
        let one = Universe::one_middle(9).expect("n = 9 is in range");
        let assignments = one
            .assignments
            .into_iter()
            .filter(|a| a.classes().iter().filter(|&&c| c == 1).count() == 4)
            .collect();
        Universe {
            name: "hunt-4-1-4".into(),
            n: 9,
            c: 3,
            assignments,
        }
    }

    pub fn custom(name: &str, assignments: Vec<Assignment>) -> Result<Self> {
        let first = assignments
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty universe".into()))?;
        let (n, c) = (first.n(), first.num_classes());
        if let Some(bad) = assignments.iter().find(|a| a.n() != n || a.num_classes() != c) {
            return Err(Error::InvalidAssignment(format!("{bad} does not match n = {n}, c = {c}")));
        }
        Ok(Universe {
            name: name.to_string(),
            n,
            c,
            assignments,
        })
    }

    /// `all` (with `c` classes), `one-middle` or `hunt-4-1-4` (which ignores `n`).
    pub fn by_name(name: &str, n: usize, c: u8) -> Result<Self> {
        match name {
            "all" => Universe::all(n, c),
            "one-middle" => Universe::one_middle(n),
            "hunt-4-1-4" => Ok(Universe::hunt_4_1_4()),
            other => Err(Error::InvalidArgument(format!("unknown universe {other:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> u8 {
        self.c
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn full_state(&self) -> KnowledgeState {
        KnowledgeState::full(self.len())
    }
}

/// Bit `i` set iff assignment `i` of the universe is still possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnowledgeState {
    len: usize,
    words: Box<[u64]>,
}

impl KnowledgeState {
    pub fn empty(len: usize) -> Self {
        KnowledgeState {
            len,
            words: vec![0; len.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = KnowledgeState::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = KnowledgeState::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn and(&self, mask: &[u64]) -> KnowledgeState {
        KnowledgeState {
            len: self.len,
            words: self.words.iter().zip(mask).map(|(a, b)| a & b).collect(),
        }
    }

    fn meets(&self, mask: &[u64]) -> bool {
        self.words.iter().zip(mask).any(|(a, b)| a & b != 0)
    }
}

/// The common answer of every member of `s`, if there is one.
pub fn goal_met(u: &Universe, s: &KnowledgeState, goal: Goal) -> Option<Answer> {
    let mut members = s.iter();
    let first = goal.truth(&u.assignments[members.next()?])?;
    members
        .all(|i| goal.truth(&u.assignments[i]).as_ref() == Some(&first))
        .then_some(first)
}

fn subsets_of_size(items: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), out);
}

/// Tiny: every pair with the lower id on the left. Huge: every pair of
/// disjoint equal-size pans whose left pan holds the smaller minimum id.
pub fn candidate_weighings(n: usize, policy: PanPolicy) -> Vec<Weighing> {
    let mut out = Vec::new();
    match policy {
        PanPolicy::Tiny => {
            for a in 0..n {
                for b in a + 1..n {
                    out.push(Weighing::one_vs_one(a, b).expect("distinct coins"));
                }
            }
        }
        PanPolicy::Huge => {
            let coins: Vec<usize> = (0..n).collect();
            for k in 1..=n / 2 {
                let mut lefts = Vec::new();
                subsets_of_size(&coins, k, &mut lefts);
                for left in lefts {
                    let rest: Vec<usize> = coins.iter().copied().filter(|c| !left.contains(c) && *c > left[0]).collect();
                    let mut rights = Vec::new();
                    subsets_of_size(&rest, k, &mut rights);
                    for right in rights {
                        out.push(Weighing::new(left.clone(), right).expect("disjoint pans"));
                    }
                }
            }
        }
    }
    out
}

/// Every pair of disjoint non-empty pans, sizes unrestricted, left pan
/// holding the smaller minimum id.
pub fn all_weighings(n: usize) -> Vec<Weighing> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        let mut x = code;
        for coin in 0..n {
            match x % 3 {
                1 => left.push(coin),
                2 => right.push(coin),
                _ => {}
            }
            x /= 3;
        }
        if !left.is_empty() && !right.is_empty() && left[0] < right[0] {
            out.push(Weighing::new(left, right).expect("disjoint pans"));
        }
    }
    out.sort_by(|a, b| {
        (a.left().len() + a.right().len(), a.left(), a.right()).cmp(&(b.left().len() + b.right().len(), b.left(), b.right()))
    });
    out
}

/// Generic-model outcome of `w` on each member, or `None` at the first
/// member whose outcome is undetermined.
fn split(u: &Universe, s: &KnowledgeState, w: &Weighing) -> Option<[KnowledgeState; 3]> {
    let mut kids = [
        KnowledgeState::empty(s.len),
        KnowledgeState::empty(s.len),
        KnowledgeState::empty(s.len),
    ];
    for i in s.iter() {
        let d = delta_vector(w, &u.assignments[i]).ok()?;
        match determinacy(&d) {
            Determinacy::Determined(o) => kids[o.index()].insert(i),
            Determinacy::Undetermined => return None,
        }
    }
    Some(kids)
}

/// Children of `s` under `w`, indexed by [`Outcome::index`]. Members whose
/// outcome is undetermined land in no child.
pub fn successors(u: &Universe, s: &KnowledgeState, w: &Weighing) -> [KnowledgeState; 3] {
    let mut kids = [
        KnowledgeState::empty(s.len),
        KnowledgeState::empty(s.len),
        KnowledgeState::empty(s.len),
    ];
    for i in s.iter() {
        if let Ok(d) = delta_vector(w, &u.assignments[i]) {
            if let Determinacy::Determined(o) = determinacy(&d) {
                kids[o.index()].insert(i);
            }
        }
    }
    kids
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Only weigh pans of equal size.
    pub equal_pans: bool,
    /// Generate moves up to the coin permutations that fix the state.
    pub symmetry: bool,
    pub exec: Exec,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            equal_pans: true,
            symmetry: false,
            exec: Exec::default(),
        }
    }
}

/// Result of a bounded depth search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Exact(usize),
    /// Every tree needs more than the budget.
    Exceeded,
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    lower: u8,
    upper: u8,
}

/// Per-weighing outcome masks over the whole universe.
struct MoveTable {
    weighings: Vec<Weighing>,
    /// `[lighter, balanced, heavier, undetermined]` per weighing.
    masks: Vec<[Box<[u64]>; 4]>,
}

pub struct Solver<'u> {
    universe: &'u Universe,
    policy: PanPolicy,
    goal: Goal,
    options: SolverOptions,
    answer_id: Vec<u32>,
    answers: Vec<Answer>,
    codes: Vec<u64>,
    pow: Vec<u64>,
    lookup: HashMap<u64, usize>,
    table: Option<MoveTable>,
    memo: HashMap<Box<[u64]>, Bounds>,
    nodes: u64,
}

impl<'u> Solver<'u> {
    pub fn new(universe: &'u Universe, policy: PanPolicy, goal: Goal, options: SolverOptions) -> Result<Self> {
        if universe.len() > MAX_UNIVERSE {
            return Err(Error::GuardExceeded(format!(
                "universe of {} assignments exceeds {MAX_UNIVERSE}",
                universe.len()
            )));
        }
        if universe.is_empty() {
            return Err(Error::InvalidArgument("empty universe".into()));
        }
        let mut ids: HashMap<Answer, u32> = HashMap::new();
        let mut answers = Vec::new();
        let mut answer_id = Vec::with_capacity(universe.len());
        for a in &universe.assignments {
            let truth = goal
                .truth(a)
                .ok_or_else(|| Error::InvalidArgument(format!("{a} has no middle coin")))?;
            let id = *ids.entry(truth.clone()).or_insert_with(|| {
                answers.push(truth);
                answers.len() as u32 - 1
            });
            answer_id.push(id);
        }
        let (n, c) = (universe.n, universe.c as u64);
        let pow: Vec<u64> = (0..n).map(|k| c.pow((n - 1 - k) as u32)).collect();
        let codes: Vec<u64> = universe
            .assignments
            .iter()
            .map(|a| a.classes().iter().zip(&pow).map(|(&x, &p)| (x as u64 - 1) * p).sum())
            .collect();
        let lookup = codes.iter().enumerate().map(|(i, &code)| (code, i)).collect();
        let mut solver = Solver {
            universe,
            policy,
            goal,
            options,
            answer_id,
            answers,
            codes,
            pow,
            lookup,
            table: None,
            memo: HashMap::new(),
            nodes: 0,
        };
        if !options.symmetry {
            let weighings = match (policy, options.equal_pans) {
                (PanPolicy::Huge, false) => all_weighings(n),
                _ => candidate_weighings(n, policy),
            };
            solver.table = Some(solver.build_table(weighings));
        }
        Ok(solver)
    }

    fn build_table(&self, weighings: Vec<Weighing>) -> MoveTable {
        let u = self.universe;
        let words = u.len().div_ceil(64).max(1);
        let masks = self.options.exec.map(&weighings, |w| {
            let mut m: [Vec<u64>; 4] = std::array::from_fn(|_| vec![0u64; words]);
            for (i, a) in u.assignments.iter().enumerate() {
                let slot = match delta_vector(w, a).map(|d| determinacy(&d)) {
                    Ok(Determinacy::Determined(o)) => o.index(),
                    _ => 3,
                };
                m[slot][i / 64] |= 1 << (i % 64);
            }
            m.map(Vec::into_boxed_slice)
        });
        MoveTable { weighings, masks }
    }

    /// Number of search nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn universe(&self) -> &Universe {
        self.universe
    }

    pub fn goal(&self) -> Goal {
        self.goal
    }

    fn common_answer(&self, s: &KnowledgeState) -> Option<u32> {
        let mut it = s.iter();
        let first = self.answer_id[it.next()?];
        it.all(|i| self.answer_id[i] == first).then_some(first)
    }

    fn distinct_answers(&self, s: &KnowledgeState) -> usize {
        let mut ids: Vec<u32> = s.iter().map(|i| self.answer_id[i]).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Coins that can be swapped without changing the state, as classes.
    fn orbits(&self, s: &KnowledgeState) -> Vec<Vec<usize>> {
        let members: Vec<usize> = s.iter().collect();
        let u = self.universe;
        let swap_fixes = |i: usize, j: usize| {
            members.iter().all(|&m| {
                let cls = u.assignments[m].classes();
                let (ci, cj) = (cls[i] as i64, cls[j] as i64);
                if ci == cj {
                    return true;
                }
                let code = self.codes[m] as i64 + (cj - ci) * self.pow[i] as i64 + (ci - cj) * self.pow[j] as i64;
                self.lookup.get(&(code as u64)).is_some_and(|&k| s.contains(k))
            })
        };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for coin in 0..u.n {
            match classes.iter_mut().find(|cl| swap_fixes(cl[0], coin)) {
                Some(cl) => cl.push(coin),
                None => classes.push(vec![coin]),
            }
        }
        classes
    }

    fn symmetric_moves(&self, s: &KnowledgeState) -> Vec<Weighing> {
        let classes = self.orbits(s);
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        let mut out = Vec::new();
        let mut x = vec![0usize; sizes.len()];
        let mut y = vec![0usize; sizes.len()];
        fn rec(
            k: usize,
            sizes: &[usize],
            x: &mut Vec<usize>,
            y: &mut Vec<usize>,
            emit: &mut dyn FnMut(&[usize], &[usize]),
        ) {
            if k == sizes.len() {
                emit(x, y);
                return;
            }
            for a in 0..=sizes[k] {
                for b in 0..=sizes[k] - a {
                    x[k] = a;
                    y[k] = b;
                    rec(k + 1, sizes, x, y, emit);
                }
            }
            x[k] = 0;
            y[k] = 0;
        }
        let (policy, equal) = (self.policy, self.options.equal_pans);
        rec(0, &sizes, &mut x, &mut y, &mut |x, y| {
            let (sx, sy): (usize, usize) = (x.iter().sum(), y.iter().sum());
            if sx == 0 || sy == 0 || x < y {
                return;
            }
            if policy == PanPolicy::Tiny && (sx != 1 || sy != 1) {
                return;
            }
            if equal && sx != sy {
                return;
            }
            let mut left = Vec::with_capacity(sx);
            let mut right = Vec::with_capacity(sy);
            for (k, cl) in classes.iter().enumerate() {
                left.extend(&cl[..x[k]]);
                right.extend(&cl[x[k]..x[k] + y[k]]);
            }
            out.push(Weighing::new(left, right).expect("disjoint pans"));
        });
        out
    }

    /// Moves that split `s` with every member determined, with their
    /// children, ordered by largest child then generation order.
    fn moves(&self, s: &KnowledgeState) -> Vec<(Weighing, [KnowledgeState; 3])> {
        let total = s.count();
        let mut out: Vec<(usize, Weighing, [KnowledgeState; 3])> = Vec::new();
        let mut consider = |w: Weighing, kids: [KnowledgeState; 3]| {
            let largest = kids.iter().map(KnowledgeState::count).max().unwrap_or(0);
            if largest < total {
                out.push((largest, w, kids));
            }
        };
        match &self.table {
            Some(t) => {
                for (w, m) in t.weighings.iter().zip(&t.masks) {
                    if s.meets(&m[3]) {
                        continue;
                    }
                    consider(w.clone(), [s.and(&m[0]), s.and(&m[1]), s.and(&m[2])]);
                }
            }
            None => {
                for w in self.symmetric_moves(s) {
                    if let Some(kids) = split(self.universe, s, &w) {
                        consider(w, kids);
                    }
                }
            }
        }
        out.sort_by_key(|m| m.0);
        out.into_iter().map(|(_, w, k)| (w, k)).collect()
    }

    /// Whether `s` can be settled within `d` weighings.
    pub fn solvable(&mut self, s: &KnowledgeState, d: usize) -> bool {
        if self.common_answer(s).is_some() || s.is_empty() {
            return true;
        }
        if d == 0 {
            return false;
        }
        if let Some(b) = self.memo.get(&s.words) {
            if b.upper as usize <= d {
                return true;
            }
            if b.lower as usize > d {
                return false;
            }
        }
        let ok = if ceil_log3(self.distinct_answers(s)) > d {
            false
        } else {
            self.nodes += 1;
            let moves = self.moves(s);
            moves
                .iter()
                .any(|(_, kids)| kids.iter().all(|k| self.solvable(k, d - 1)))
        };
        let entry = self.memo.entry(s.words.clone()).or_insert(Bounds {
            lower: 1,
            upper: u8::MAX,
        });
        if ok {
            entry.upper = entry.upper.min(d as u8);
        } else {
            entry.lower = entry.lower.max(d as u8 + 1);
        }
        ok
    }

    /// Minimax value of `s`, found by iterative deepening up to `budget`.
    pub fn depth_of(&mut self, s: &KnowledgeState, budget: usize) -> Depth {
        (0..=budget)
            .find(|&d| self.solvable(s, d))
            .map_or(Depth::Exceeded, Depth::Exact)
    }

    /// A tree settling `s` within `d` weighings, if one exists.
    pub fn tree(&mut self, s: &KnowledgeState, d: usize) -> Option<Tree> {
        if let Some(id) = self.common_answer(s) {
            return Some(Tree::Leaf(self.answers[id as usize].clone()));
        }
        if d == 0 || !self.solvable(s, d) {
            return None;
        }
        for (w, kids) in self.moves(s) {
            if kids.iter().all(|k| self.solvable(k, d - 1)) {
                let mut children: [Option<Box<Tree>>; 3] = [None, None, None];
                for (slot, k) in children.iter_mut().zip(&kids) {
                    if !k.is_empty() {
                        *slot = Some(Box::new(self.tree(k, d - 1)?));
                    }
                }
                return Some(Tree::Node { weighing: w, children });
            }
        }
        None
    }
}

/// Optimal worst-case number of weighings for the whole universe.
pub fn optimal_depth(u: &Universe, policy: PanPolicy, goal: Goal, budget: usize) -> Result<Depth> {
    check_budget(budget)?;
    let mut solver = Solver::new(u, policy, goal, SolverOptions::default())?;
    Ok(solver.depth_of(&u.full_state(), budget))
}

/// An optimal-or-better tree of depth at most `depth`; `None` if none exists.
pub fn extract_tree(u: &Universe, policy: PanPolicy, goal: Goal, depth: usize) -> Result<Option<Tree>> {
    check_budget(depth)?;
    let mut solver = Solver::new(u, policy, goal, SolverOptions::default())?;
    Ok(solver.tree(&u.full_state(), depth))
}

/// A tree of depth at most `depth`, searched with symmetry reduction:
/// equal pans first, then unrestricted pans if that fails. Returns the tree
/// and whether the equal-pan search found it.
pub fn find_tree_within(u: &Universe, policy: PanPolicy, goal: Goal, depth: usize) -> Result<Option<(Tree, bool)>> {
    check_budget(depth)?;
    let passes: &[bool] = if policy == PanPolicy::Tiny { &[true] } else { &[true, false] };
    for &equal_pans in passes {
        let opts = SolverOptions {
            equal_pans,
            symmetry: true,
            ..SolverOptions::default()
        };
        let mut solver = Solver::new(u, policy, goal, opts)?;
        if let Some(t) = solver.tree(&u.full_state(), depth) {
            return Ok(Some((t, equal_pans)));
        }
    }
    Ok(None)
}

fn check_budget(budget: usize) -> Result<()> {
    if budget > 16 {
        return Err(Error::InvalidArgument(format!("budget {budget} above 16")));
    }
    Ok(())
}

/// Decision tree. Children are indexed by [`Outcome::index`]; `None` marks
/// an outcome no admissible assignment produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    Leaf(Answer),
    Node {
        weighing: Weighing,
        children: [Option<Box<Tree>>; 3],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub runs: usize,
    pub mismatches: usize,
    pub max_depth: usize,
}

impl Tree {
    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node { children, .. } => {
                1 + children.iter().flatten().map(|c| c.depth()).max().unwrap_or(0)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Tree::Leaf(a) => json!({ "answer": a }),
            Tree::Node { weighing, children } => {
                let child = |o: Outcome| children[o.index()].as_ref().map_or(Value::Null, |c| c.to_json());
                json!({
                    "weigh": { "left": weighing.left(), "right": weighing.right() },
                    "<": child(Outcome::LeftLighter),
                    "=": child(Outcome::Balanced),
                    ">": child(Outcome::LeftHeavier),
                })
            }
        }
    }

    /// Follows the tree for one hidden assignment. Returns the answer and the
    /// number of weighings, or an error if the path breaks off.
    pub fn answer_for(&self, a: &Assignment) -> Result<(Answer, usize)> {
        let mut node = self;
        let mut steps = 0;
        loop {
            match node {
                Tree::Leaf(answer) => return Ok((answer.clone(), steps)),
                Tree::Node { weighing, children } => {
                    let o = crate::scale::outcome_of(weighing, a, &crate::scale::WeightModel::Generic)?
                        .ok_or_else(|| Error::UndeterminedOutcome(weighing.clone()))?;
                    steps += 1;
                    node = children[o.index()]
                        .as_deref()
                        .ok_or(Error::InconsistentTranscript)?;
                }
            }
        }
    }

    /// Runs every assignment of `u` through the tree.
    pub fn replay(&self, u: &Universe, goal: Goal, exec: Exec) -> ReplayReport {
        let results = exec.map(u.assignments(), |a| match self.answer_for(a) {
            Ok((answer, steps)) => (goal.truth(a) == Some(answer), steps),
            Err(_) => (false, 0),
        });
        ReplayReport {
            runs: results.len(),
            mismatches: results.iter().filter(|r| !r.0).count(),
            max_depth: results.iter().map(|r| r.1).max().unwrap_or(0),
        }
    }
}
