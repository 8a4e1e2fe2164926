//! Exact reasoning about one-coin-per-pan transcripts.
//!
//! Balanced weighings merge coins into equality components; strict outcomes
//! become edges of a graph on components. An assignment with `c` classes is
//! consistent with the transcript iff it is a strictly order-preserving map
//! of that graph into `1..=c`, which exists iff the graph is acyclic and its
//! longest chain has at most `c` components. The relation between two
//! components is forced iff exactly one of `<`, `=`, `>` keeps the graph
//! feasible; each test reduces to reachability plus the longest chains
//! ending at and starting from the two components.

use std::cmp::Ordering;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::model::{OrderedPartition, Outcome, Transcript, Weighing};

/// Facts gathered from one-versus-one weighings.
#[derive(Debug, Clone)]
pub struct TinyKnowledge {
    n: usize,
    c: u8,
    eq: DisjointSets,
    /// `(lighter, heavier)` coin pairs.
    less: Vec<(usize, usize)>,
}

impl TinyKnowledge {
    pub fn new(n: usize, c: u8) -> Self {
        TinyKnowledge {
            n,
            c,
            eq: DisjointSets::new(n),
            less: Vec::new(),
        }
    }

    pub fn from_transcript(t: &Transcript, n: usize, c: u8) -> Result<Self> {
        let mut k = TinyKnowledge::new(n, c);
        for (w, o) in t.steps() {
            k.record_weighing(w, *o)?;
        }
        Ok(k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn record_weighing(&mut self, w: &Weighing, o: Outcome) -> Result<()> {
        if !w.is_one_vs_one() {
            return Err(Error::PanPolicyViolation(format!(
                "order reasoning needs one coin per pan, got {w}"
            )));
        }
        w.check_range(self.n)?;
        self.record(w.left()[0], w.right()[0], o);
        Ok(())
    }

    /// Records `left ? right`.
    pub fn record(&mut self, left: usize, right: usize, o: Outcome) {
        match o {
            Outcome::Balanced => {
                self.eq.union(left, right);
            }
            Outcome::LeftLighter => self.less.push((left, right)),
            Outcome::LeftHeavier => self.less.push((right, left)),
        }
    }

    pub fn analyze(&self) -> Analysis {
        Analysis::build(self)
    }
}

/// Snapshot of the component graph with the derived chain data.
#[derive(Debug, Clone)]
pub struct Analysis {
    n: usize,
    c: u8,
    comp_of: Vec<usize>,
    comps: Vec<Vec<usize>>,
    consistent: bool,
    reach: Vec<Vec<u64>>,
    down: Vec<usize>,
    up: Vec<usize>,
}

impl Analysis {
    fn build(k: &TinyKnowledge) -> Self {
        let n = k.n;
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_index = vec![usize::MAX; n];
        for coin in 0..n {
            let r = k.eq.root(coin);
            if root_index[r] == usize::MAX {
                root_index[r] = comps.len();
                comps.push(Vec::new());
            }
            comp_of[coin] = root_index[r];
            comps[root_index[r]].push(coin);
        }
        let m = comps.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut consistent = true;
        for &(a, b) in &k.less {
            let (ca, cb) = (comp_of[a], comp_of[b]);
            if ca == cb {
                consistent = false;
            } else if !succ[ca].contains(&cb) {
                succ[ca].push(cb);
            }
        }
        let mut indeg = vec![0usize; m];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut topo: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let v = topo[head];
            head += 1;
            for &t in &succ[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    topo.push(t);
                }
            }
        }
        let words = m.div_ceil(64).max(1);
        let mut reach = vec![vec![0u64; words]; m];
        let mut down = vec![1usize; m];
        let mut up = vec![1usize; m];
        if topo.len() != m {
            consistent = false;
        } else {
            for &v in &topo {
                for &t in &succ[v] {
                    down[t] = down[t].max(down[v] + 1);
                }
            }
            for &v in topo.iter().rev() {
                for &t in &succ[v] {
                    up[v] = up[v].max(up[t] + 1);
                    let (lo, hi) = if v < t {
                        let (a, b) = reach.split_at_mut(t);
                        (&mut a[v], &b[0])
                    } else {
                        let (a, b) = reach.split_at_mut(v);
                        (&mut b[0], &a[t])
                    };
                    for (x, y) in lo.iter_mut().zip(hi.iter()) {
                        *x |= *y;
                    }
                    lo[t / 64] |= 1 << (t % 64);
                }
            }
            if down.iter().any(|&d| d > k.c as usize) {
                consistent = false;
            }
        }
        Analysis {
            n,
            c: k.c,
            comp_of,
            comps,
            consistent,
            reach,
            down,
            up,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn component_of(&self, coin: usize) -> usize {
        self.comp_of[coin]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Which of `<`, `=`, `>` between components `a` and `b` remain feasible.
    fn feasible(&self, a: usize, b: usize) -> [bool; 3] {
        if a == b {
            return [false, true, false];
        }
        let c = self.c as usize;
        let less = !self.reaches(b, a) && self.down[a] + self.up[b] <= c;
        let greater = !self.reaches(a, b) && self.down[b] + self.up[a] <= c;
        let equal = !self.reaches(a, b)
            && !self.reaches(b, a)
            && self.down[a].max(self.down[b]) + self.up[a].max(self.up[b]) - 1 <= c;
        [less, equal, greater]
    }

    /// The relation between two coins if the transcript forces it.
    pub fn relation(&self, x: usize, y: usize) -> Option<Ordering> {
        if !self.consistent {
            return None;
        }
        let f = self.feasible(self.comp_of[x], self.comp_of[y]);
        match f {
            [true, false, false] => Some(Ordering::Less),
            [false, true, false] => Some(Ordering::Equal),
            [false, false, true] => Some(Ordering::Greater),
            _ => None,
        }
    }

    /// Feasible class range of a coin.
    pub fn class_range(&self, coin: usize) -> (u8, u8) {
        let v = self.comp_of[coin];
        (self.down[v] as u8, (self.c as usize + 1 - self.up[v]) as u8)
    }

    /// The sorted answer if every pair of coins has a forced relation.
    pub fn sorted_partition(&self) -> Option<OrderedPartition> {
        if !self.consistent {
            return None;
        }
        let m = self.comps.len();
        let mut merged = DisjointSets::new(m);
        for a in 0..m {
            for b in a + 1..m {
                match self.feasible(a, b) {
                    [false, true, false] => {
                        merged.union(a, b);
                    }
                    [true, false, false] | [false, false, true] => {}
                    _ => return None,
                }
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut slot = vec![usize::MAX; m];
        for v in 0..m {
            let r = merged.find(v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push((v, Vec::new()));
            }
            groups[slot[r]].1.extend(&self.comps[v]);
        }
        groups.sort_by(|(a, _), (b, _)| {
            if self.feasible(*a, *b)[0] {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        OrderedPartition::new(groups.into_iter().map(|(_, g)| g).collect(), self.n).ok()
    }

    /// Pairs of components (by representative coin) whose relation is open.
    pub fn open_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.comps.len();
        let mut out = Vec::new();
        if !self.consistent {
            return out;
        }
        for a in 0..m {
            for b in a + 1..m {
                if self.feasible(a, b).iter().filter(|&&x| x).count() > 1 {
                    out.push((self.comps[a][0], self.comps[b][0]));
                }
            }
        }
        out
    }
}
