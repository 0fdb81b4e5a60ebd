//! Size-ordered enumeration of hypotheses that survive the constraint store.
//!
//! A hypothesis is a set of distinct pool clauses, visited by total literal
//! count, then clause count, then clause ids. Per-clause facts (bottom
//! pruning, which learned constraints a clause touches) are computed lazily
//! and cached, so the cost of a learned constraint is paid once per clause
//! that is ever considered.

use std::collections::HashMap;
use std::time::Instant;

use super::constraints::{ConstraintKind, ConstraintStore};
use super::pool::ClausePool;
use super::Hypothesis;
use crate::logic::{Clause, LanguageBias};
use crate::subsume::theta_subsumes_with;

const SUBSUMPTION_BUDGET: u64 = 50_000;

#[derive(Default, Clone)]
struct ClauseInfo {
    bottom_checked: bool,
    neg_dead: bool,
    /// Generalizes no positive bottom clause.
    no_pos: bool,
    pos_bits: Vec<u64>,
    learned_checked: usize,
    /// A single-clause generalization constraint applies.
    dead: bool,
    /// Specialization of a clause that covers no positives.
    redundant: bool,
    gen_hits: Vec<(u32, u32)>,
    spec_hits: Vec<u32>,
}

pub struct Enumerator {
    bias: LanguageBias,
    pool: ClausePool,
    info: Vec<ClauseInfo>,
    cmasks: Vec<Vec<u128>>,
    size: usize,
    n: usize,
    ids: Vec<usize>,
    fresh: bool,
    max_size: usize,
    deadline: Option<Instant>,
    steps: u64,
    timed_out: bool,
    pub(crate) subsumption_skips: u64,
}

/// Budget exhaustion counts as "does not subsume", so a constraint check
/// that runs out can only under-prune.
fn subsumes(a: &Clause, b: &Clause, skips: &mut u64) -> bool {
    if a.head.pred != b.head.pred {
        return false;
    }
    match theta_subsumes_with(a, b, SUBSUMPTION_BUDGET) {
        Ok(v) => v.holds,
        Err(_) => {
            *skips += 1;
            false
        }
    }
}

fn bit_words(n: usize) -> usize {
    n.div_ceil(64)
}

impl Enumerator {
    pub fn new(bias: &LanguageBias) -> Enumerator {
        let l = bias.limits;
        Enumerator {
            bias: bias.clone(),
            pool: ClausePool::new(bias),
            info: Vec::new(),
            cmasks: Vec::new(),
            size: 1,
            n: 1,
            ids: Vec::new(),
            fresh: true,
            max_size: l.max_clauses * (l.max_body + 1),
            deadline: None,
            steps: 0,
            timed_out: false,
            subsumption_skips: 0,
        }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Enumerator {
        self.deadline = deadline;
        self
    }

    pub fn pool(&self) -> &ClausePool {
        &self.pool
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Total literal count of the hypotheses currently being visited.
    pub fn current_size(&self) -> usize {
        self.size
    }

    pub fn clauses(&self, ids: &[usize]) -> Hypothesis {
        ids.iter().map(|&i| self.pool.get(i).clause.clone()).collect()
    }

    pub fn runnable(&self, ids: &[usize]) -> Vec<Clause> {
        ids.iter().map(|&i| self.pool.get(i).runnable.clone()).collect()
    }

    pub fn is_recursive(&self, ids: &[usize]) -> bool {
        ids.iter().any(|&i| self.pool.get(i).recursive)
    }

    /// The next hypothesis not excluded by `store`, or `None` once the
    /// space or the deadline is exhausted.
    pub fn next_hypothesis(&mut self, store: &ConstraintStore) -> Option<Hypothesis> {
        self.next_ids(store).map(|ids| self.clauses(&ids))
    }

    pub fn next_ids(&mut self, store: &ConstraintStore) -> Option<Vec<usize>> {
        loop {
            if self.timed_out || self.size > self.max_size {
                return None;
            }
            let found = if self.fresh {
                self.fresh = false;
                self.pool.ensure(self.size);
                self.ids.clear();
                self.search_from(0, 0, store)
            } else {
                self.advance(store)
            };
            if self.timed_out {
                return None;
            }
            if found {
                if self.leaf_ok(store) {
                    return Some(self.ids.clone());
                }
                continue;
            }
            self.n += 1;
            if self.n > self.bias.limits.max_clauses || self.n > self.size {
                self.size += 1;
                self.n = 1;
            }
            self.fresh = true;
        }
    }

    fn tick(&mut self) -> bool {
        self.steps += 1;
        if self.steps % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn advance(&mut self, store: &ConstraintStore) -> bool {
        let mut p = self.ids.len();
        while p > 0 {
            p -= 1;
            let old = self.ids.pop().expect("position");
            if self.search_from(p, old + 1, store) {
                return true;
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }

    /// Chooses ids for positions `p..n`, the one at `p` at least `start`.
    fn search_from(&mut self, p: usize, start: usize, store: &ConstraintStore) -> bool {
        let used: usize = self.ids.iter().map(|&i| self.pool.get(i).size).sum();
        if used >= self.size {
            return false;
        }
        let rem = self.size - used;
        let r = self.n - p;
        let range = if r == 1 {
            let rg = self.pool.range(rem);
            rg.start.max(start)..rg.end
        } else {
            start..self.pool.len()
        };
        for id in range {
            if self.tick() {
                return false;
            }
            let k = self.pool.get(id).size;
            if k * r > rem {
                break;
            }
            if !self.alive(id, store) {
                continue;
            }
            self.ids.push(id);
            if r == 1 || self.search_from(p + 1, id + 1, store) {
                return true;
            }
            self.ids.pop();
            if self.timed_out {
                return false;
            }
        }
        false
    }

    fn alive(&mut self, id: usize, store: &ConstraintStore) -> bool {
        self.refresh(id, store);
        let i = &self.info[id];
        if i.neg_dead || i.no_pos || i.dead {
            return false;
        }
        // redundant clauses only matter where recursion could reach them
        !(i.redundant && !self.bias.recursion)
    }

    fn refresh(&mut self, id: usize, store: &ConstraintStore) {
        if self.info.len() <= id {
            self.info.resize(self.pool.len().max(id + 1), ClauseInfo::default());
        }
        if !self.info[id].bottom_checked {
            let c = &self.pool.get(id).clause;
            let neg_dead = store.clause_hits_negative(c, &self.bias).is_some();
            let mut bits = vec![0u64; bit_words(store.bottom_pos.len())];
            if !neg_dead {
                for (e, b) in store.positive_bits(c, &self.bias).into_iter().enumerate() {
                    if b {
                        bits[e / 64] |= 1 << (e % 64);
                    }
                }
            }
            let info = &mut self.info[id];
            info.bottom_checked = true;
            info.neg_dead = neg_dead;
            info.no_pos = store.positives_complete && !self.bias.recursion && bits.iter().all(|&w| w == 0);
            info.pos_bits = bits;
        }
        while self.cmasks.len() < store.learned.len() {
            let f = &store.learned[self.cmasks.len()];
            let m = f.hypothesis.iter().map(|c| self.pool.mask_of(c)).collect();
            self.cmasks.push(m);
        }
        let from = self.info[id].learned_checked;
        if from == store.learned.len() {
            return;
        }
        let pc = self.pool.get(id);
        let (c, mask) = (pc.clause.clone(), pc.mask);
        let mut info = std::mem::take(&mut self.info[id]);
        let mut skips = 0;
        for f in from..store.learned.len() {
            if info.dead {
                break;
            }
            let lc = &store.learned[f];
            let masks = &self.cmasks[f];
            match lc.kind {
                ConstraintKind::Generalization => {
                    for (j, d) in lc.hypothesis.iter().enumerate() {
                        if mask & !masks[j] == 0 && subsumes(&c, d, &mut skips) {
                            info.gen_hits.push((f as u32, j as u32));
                            if lc.hypothesis.len() == 1 {
                                info.dead = true;
                            }
                        }
                    }
                }
                ConstraintKind::Specialization => {
                    let hit = lc.hypothesis.iter().zip(masks).any(|(d, m)| m & !mask == 0 && subsumes(d, &c, &mut skips));
                    if hit {
                        info.spec_hits.push(f as u32);
                    }
                }
                ConstraintKind::Elimination => {
                    if !info.redundant && !lc.recursive() {
                        info.redundant =
                            lc.hypothesis.iter().zip(masks).any(|(d, m)| m & !mask == 0 && subsumes(d, &c, &mut skips));
                    }
                }
            }
        }
        info.learned_checked = store.learned.len();
        self.info[id] = info;
        self.subsumption_skips += skips;
    }


    fn leaf_ok(&mut self, store: &ConstraintStore) -> bool {
        let ids = self.ids.clone();
        for &i in &ids {
            self.refresh(i, store);
        }
        let recursive = self.is_recursive(&ids);
        if recursive && ids.iter().all(|&i| self.pool.get(i).recursive) {
            return false;
        }
        if !recursive && ids.iter().any(|&i| self.info[i].redundant) {
            return false;
        }
        let npos = store.bottom_pos.len();
        if npos > 0 {
            let mut acc = vec![0u64; bit_words(npos)];
            for &i in &ids {
                for (a, b) in acc.iter_mut().zip(&self.info[i].pos_bits) {
                    *a |= b;
                }
            }
            let full = (0..npos).all(|e| acc[e / 64] & (1 << (e % 64)) != 0);
            if !full {
                return false;
            }
        }
        // specialization: every clause is below some clause of one failure
        let mut common: Vec<u32> = self.info[ids[0]].spec_hits.clone();
        for &i in &ids[1..] {
            let other = &self.info[i].spec_hits;
            common.retain(|f| other.binary_search(f).is_ok());
            if common.is_empty() {
                break;
            }
        }
        if !common.is_empty() {
            return false;
        }
        // generalization: every clause of one failure is below some clause
        if ids.len() > 1 {
            let mut hits: HashMap<u32, Vec<u32>> = HashMap::new();
            for &i in &ids {
                for &(f, j) in &self.info[i].gen_hits {
                    hits.entry(f).or_default().push(j);
                }
            }
            for (f, mut js) in hits {
                js.sort_unstable();
                js.dedup();
                if js.len() == store.learned[f as usize].hypothesis.len() {
                    return false;
                }
            }
        }
        true
    }
}
