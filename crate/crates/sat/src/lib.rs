//! Conflict-driven clause learning over DIMACS literals.
//!
//! Two-watched-literal propagation with dedicated binary implication lists,
//! first-UIP learning with recursive minimization, VSIDS with phase saving,
//! alternating focused (LBD-driven) and stable (Luby) restart phases, and
//! LBD-based learnt clause reduction.

mod dimacs;
mod heap;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use dimacs::{parse, ParseError, Problem};
use heap::VarHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
    pub conflicts: Option<u64>,
    pub interrupt: Option<Arc<AtomicBool>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Stats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
    pub reductions: u64,
    pub learnt_literals: u64,
}

const NO_REASON: u32 = u32::MAX;
const BIN_REASON: u32 = 1 << 31;
const HEADER: usize = 3;
const LEARNT: u32 = 1;
const DELETED: u32 = 2;

#[derive(Debug, Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: u32,
}

#[derive(Debug, Clone, Copy)]
enum Conflict {
    Bin(u32, u32),
    Long(u32),
}

#[inline]
fn var(lit: u32) -> usize {
    (lit >> 1) as usize
}

fn to_internal(lit: i32) -> u32 {
    let v = lit.unsigned_abs() - 1;
    2 * v + u32::from(lit < 0)
}

pub struct Solver {
    num_vars: usize,
    arena: Vec<u32>,
    originals: Vec<u32>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watch>>,
    bins: Vec<Vec<u32>>,
    value: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<u8>,
    to_clear: Vec<u32>,
    stack: Vec<u32>,
    level_stamp: Vec<u64>,
    stamp: u64,
    cla_inc: f32,
    ok: bool,
    rng: ChaCha8Rng,
    random_freq: f64,
    stats: Stats,
    model: Vec<bool>,
    // restart state
    stable: bool,
    mode_conflicts: u64,
    mode_length: u64,
    recent_lbd: std::collections::VecDeque<u32>,
    recent_sum: u64,
    total_lbd: u64,
    since_restart: u64,
    luby_index: u32,
    luby_budget: u64,
    next_reduce: u64,
    reduce_inc: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new(0)
    }
}

impl Solver {
    pub fn new(seed: u64) -> Self {
        Solver {
            num_vars: 0,
            arena: Vec::new(),
            originals: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            bins: Vec::new(),
            value: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            heap: VarHeap::default(),
            phase: Vec::new(),
            seen: Vec::new(),
            to_clear: Vec::new(),
            stack: Vec::new(),
            level_stamp: Vec::new(),
            stamp: 0,
            cla_inc: 1.0,
            ok: true,
            rng: ChaCha8Rng::seed_from_u64(seed),
            random_freq: if seed == 0 { 0.0 } else { 0.01 },
            stats: Stats::default(),
            model: Vec::new(),
            stable: false,
            mode_conflicts: 0,
            mode_length: 1000,
            recent_lbd: std::collections::VecDeque::new(),
            recent_sum: 0,
            total_lbd: 0,
            since_restart: 0,
            luby_index: 1,
            luby_budget: 0,
            next_reduce: 2000,
            reduce_inc: 300,
        }
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.originals.len() + self.bins.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Makes variables `1..=n` available.
    pub fn reserve_vars(&mut self, n: usize) {
        if n <= self.num_vars {
            return;
        }
        let seeded = self.random_freq > 0.0;
        for v in self.num_vars..n {
            self.watches.push(Vec::new());
            self.watches.push(Vec::new());
            self.bins.push(Vec::new());
            self.bins.push(Vec::new());
            self.value.push(0);
            self.value.push(0);
            self.level.push(0);
            self.reason.push(NO_REASON);
            let a = if seeded { self.rng.random::<f64>() * 1e-5 } else { 0.0 };
            self.activity.push(a);
            self.phase.push(false);
            self.seen.push(0);
            self.heap.grow(v + 1);
            self.heap.insert(v as u32, &self.activity);
        }
        self.num_vars = n;
    }

    #[inline]
    fn val(&self, lit: u32) -> i8 {
        self.value[lit as usize]
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause of DIMACS literals. Returns `false` once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[i32]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        if let Some(m) = clause.iter().map(|l| l.unsigned_abs() as usize).max() {
            self.reserve_vars(m);
        }
        let mut lits: Vec<u32> = clause.iter().map(|&l| to_internal(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.val(l) == 1) {
            return true;
        }
        lits.retain(|&l| self.val(l) == 0);
        match lits.len() {
            0 => self.ok = false,
            1 => {
                self.assign(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            2 => self.attach_binary(lits[0], lits[1]),
            _ => {
                let c = self.alloc(&lits, false, 0);
                self.originals.push(c);
                self.attach(c);
            }
        }
        self.ok
    }

    fn attach_binary(&mut self, a: u32, b: u32) {
        self.bins[(a ^ 1) as usize].push(b);
        self.bins[(b ^ 1) as usize].push(a);
    }

    fn alloc(&mut self, lits: &[u32], learnt: bool, lbd: u32) -> u32 {
        let c = self.arena.len() as u32;
        assert!(c < BIN_REASON, "clause arena exhausted");
        self.arena.push(lits.len() as u32);
        self.arena.push(if learnt { LEARNT } else { 0 } | lbd << 2);
        self.arena.push(0f32.to_bits());
        self.arena.extend_from_slice(lits);
        c
    }

    fn attach(&mut self, c: u32) {
        let base = c as usize + HEADER;
        let (a, b) = (self.arena[base], self.arena[base + 1]);
        self.watches[(a ^ 1) as usize].push(Watch { cref: c, blocker: b });
        self.watches[(b ^ 1) as usize].push(Watch { cref: c, blocker: a });
    }

    fn clause_len(&self, c: u32) -> usize {
        self.arena[c as usize] as usize
    }

    fn lbd_of(&self, c: u32) -> u32 {
        self.arena[c as usize + 1] >> 2
    }

    fn assign(&mut self, lit: u32, reason: u32) {
        self.value[lit as usize] = 1;
        self.value[(lit ^ 1) as usize] = -1;
        let v = var(lit);
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn propagate(&mut self) -> Option<Conflict> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;

            let bins = std::mem::take(&mut self.bins[p as usize]);
            let mut conflict = None;
            for &q in &bins {
                match self.val(q) {
                    1 => {}
                    -1 => {
                        conflict = Some(Conflict::Bin(q, p ^ 1));
                        break;
                    }
                    _ => self.assign(q, BIN_REASON | (p ^ 1)),
                }
            }
            self.bins[p as usize] = bins;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }

            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.val(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let base = w.cref as usize + HEADER;
                if self.arena[base] == false_lit {
                    self.arena.swap(base, base + 1);
                }
                let first = self.arena[base];
                let nw = Watch { cref: w.cref, blocker: first };
                if first != w.blocker && self.val(first) == 1 {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let len = self.arena[w.cref as usize] as usize;
                let mut moved = false;
                for k in 2..len {
                    let l = self.arena[base + k];
                    if self.val(l) != -1 {
                        self.arena[base + 1] = l;
                        self.arena[base + k] = false_lit;
                        self.watches[(l ^ 1) as usize].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if self.val(first) == -1 {
                    conflict = Some(Conflict::Long(w.cref));
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.assign(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[p as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v as u32, &self.activity);
    }

    fn bump_clause(&mut self, c: u32) {
        let slot = c as usize + 2;
        let a = f32::from_bits(self.arena[slot]) + self.cla_inc;
        self.arena[slot] = a.to_bits();
        if a > 1e20 {
            for &l in &self.learnts {
                let s = l as usize + 2;
                self.arena[s] = (f32::from_bits(self.arena[s]) * 1e-20).to_bits();
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// Literals of the reason for `v`, excluding the implied literal itself.
    fn reason_lits(&self, v: usize, out: &mut Vec<u32>) {
        out.clear();
        let r = self.reason[v];
        if r & BIN_REASON != 0 {
            out.push(r & !BIN_REASON);
        } else {
            let base = r as usize + HEADER;
            out.extend_from_slice(&self.arena[base + 1..base + self.clause_len(r)]);
        }
    }

    fn analyze(&mut self, conflict: Conflict) -> (Vec<u32>, u32, u32) {
        let dl = self.decision_level();
        let mut learnt = vec![0u32];
        let mut path = 0u32;
        let mut idx = self.trail.len();
        let mut lits: Vec<u32> = match conflict {
            Conflict::Bin(a, b) => vec![a, b],
            Conflict::Long(c) => {
                if self.arena[c as usize + 1] & LEARNT != 0 {
                    self.bump_clause(c);
                }
                let base = c as usize + HEADER;
                self.arena[base..base + self.clause_len(c)].to_vec()
            }
        };
        let p = loop {
            for &q in &lits {
                let v = var(q);
                if self.seen[v] == 0 && self.level[v] > 0 {
                    self.seen[v] = 1;
                    self.bump_var(v);
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] != 0 {
                    break;
                }
            }
            let p = self.trail[idx];
            let v = var(p);
            self.seen[v] = 0;
            path -= 1;
            if path == 0 {
                break p;
            }
            let r = self.reason[v];
            if r & BIN_REASON == 0 && self.arena[r as usize + 1] & LEARNT != 0 {
                self.bump_clause(r);
            }
            self.reason_lits(v, &mut lits);
        };
        learnt[0] = p ^ 1;

        // recursive minimization
        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt);
        let abstract_levels = learnt[1..].iter().fold(0u32, |acc, &l| acc | 1 << (self.level[var(l)] & 31));
        let mut keep = 1;
        for k in 1..learnt.len() {
            let l = learnt[k];
            if self.reason[var(l)] == NO_REASON || !self.redundant(l, abstract_levels) {
                learnt[keep] = l;
                keep += 1;
            }
        }
        learnt.truncate(keep);
        for k in 0..self.to_clear.len() {
            let v = var(self.to_clear[k]);
            self.seen[v] = 0;
        }

        let back = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[max_i])] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            self.level[var(learnt[1])]
        };
        self.stamp += 1;
        let mut lbd = 0;
        for &l in &learnt {
            let lv = self.level[var(l)] as usize;
            if lv >= self.level_stamp.len() {
                self.level_stamp.resize(lv + 1, 0);
            }
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                lbd += 1;
            }
        }
        (learnt, back, lbd)
    }

    fn redundant(&mut self, p: u32, abstract_levels: u32) -> bool {
        self.stack.clear();
        self.stack.push(p);
        let top = self.to_clear.len();
        let mut lits = Vec::new();
        while let Some(q) = self.stack.pop() {
            self.reason_lits(var(q), &mut lits);
            for &l in &lits {
                let v = var(l);
                if self.seen[v] != 0 || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v] != NO_REASON && (1 << (self.level[v] & 31)) & abstract_levels != 0 {
                    self.seen[v] = 1;
                    self.stack.push(l);
                    self.to_clear.push(l);
                } else {
                    for k in top..self.to_clear.len() {
                        let u = var(self.to_clear[k]);
                        self.seen[u] = 0;
                    }
                    self.to_clear.truncate(top);
                    return false;
                }
            }
        }
        true
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level as usize];
        for k in (start..self.trail.len()).rev() {
            let lit = self.trail[k];
            let v = var(lit);
            self.value[lit as usize] = 0;
            self.value[(lit ^ 1) as usize] = 0;
            self.reason[v] = NO_REASON;
            self.phase[v] = lit & 1 == 0;
            self.heap.insert(v as u32, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level as usize);
        self.qhead = start;
    }

    fn pick_branch(&mut self) -> Option<u32> {
        if self.random_freq > 0.0 && self.rng.random::<f64>() < self.random_freq && self.num_vars > 0 {
            let v = self.rng.random_range(0..self.num_vars);
            if self.value[2 * v] == 0 {
                return Some(2 * v as u32 + u32::from(!self.phase[v]));
            }
        }
        while let Some(v) = self.heap.pop(&self.activity) {
            let v = v as usize;
            if self.value[2 * v] == 0 {
                return Some(2 * v as u32 + u32::from(!self.phase[v]));
            }
        }
        None
    }

    fn luby(mut i: u32) -> u64 {
        // i is 1-based
        loop {
            let mut k = 1;
            while (1u64 << k) - 1 < i as u64 {
                k += 1;
            }
            if (1u64 << k) - 1 == i as u64 {
                return 1 << (k - 1);
            }
            i -= (1u32 << (k - 1)) - 1;
        }
    }

    fn should_restart(&self) -> bool {
        if self.stable {
            self.since_restart >= self.luby_budget
        } else {
            self.recent_lbd.len() >= 50
                && self.since_restart >= 50
                && (self.recent_sum as f64 / 50.0) * 0.8 > self.total_lbd as f64 / self.stats.conflicts.max(1) as f64
        }
    }

    fn restart(&mut self) {
        self.stats.restarts += 1;
        self.since_restart = 0;
        self.recent_lbd.clear();
        self.recent_sum = 0;
        if self.stable {
            self.luby_index += 1;
            self.luby_budget = 512 * Self::luby(self.luby_index);
        }
        self.cancel_until(0);
    }

    fn switch_mode(&mut self) {
        self.stable = !self.stable;
        self.mode_conflicts = 0;
        self.mode_length = self.mode_length * 3 / 2;
        self.luby_index = 1;
        self.luby_budget = 512;
        self.since_restart = 0;
        self.recent_lbd.clear();
        self.recent_sum = 0;
        self.cancel_until(0);
    }

    fn locked(&self, c: u32) -> bool {
        let first = self.arena[c as usize + HEADER];
        self.val(first) == 1 && self.reason[var(first)] == c
    }

    fn reduce(&mut self) {
        self.stats.reductions += 1;
        let mut candidates: Vec<u32> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| self.lbd_of(c) > 2 && !self.locked(c))
            .collect();
        candidates.sort_by(|&a, &b| {
            self.lbd_of(b).cmp(&self.lbd_of(a)).then(
                f32::from_bits(self.arena[a as usize + 2]).total_cmp(&f32::from_bits(self.arena[b as usize + 2])),
            )
        });
        for &c in &candidates[..candidates.len() / 2] {
            self.arena[c as usize + 1] |= DELETED;
        }
        self.collect_garbage();
    }

    fn collect_garbage(&mut self) {
        let mut arena = Vec::with_capacity(self.arena.len());
        let mut remap = std::collections::HashMap::new();
        let copy = |c: u32, arena: &mut Vec<u32>, old: &[u32]| -> u32 {
            let nc = arena.len() as u32;
            let end = c as usize + HEADER + old[c as usize] as usize;
            arena.extend_from_slice(&old[c as usize..end]);
            nc
        };
        let mut originals = Vec::with_capacity(self.originals.len());
        for &c in &self.originals {
            let nc = copy(c, &mut arena, &self.arena);
            remap.insert(c, nc);
            originals.push(nc);
        }
        let mut learnts = Vec::with_capacity(self.learnts.len());
        for &c in &self.learnts {
            if self.arena[c as usize + 1] & DELETED != 0 {
                continue;
            }
            let nc = copy(c, &mut arena, &self.arena);
            remap.insert(c, nc);
            learnts.push(nc);
        }
        for &lit in &self.trail {
            let v = var(lit);
            let r = self.reason[v];
            if r != NO_REASON && r & BIN_REASON == 0 {
                self.reason[v] = remap[&r];
            }
        }
        self.arena = arena;
        self.originals = originals;
        self.learnts = learnts;
        for w in &mut self.watches {
            w.clear();
        }
        for k in 0..self.originals.len() {
            self.attach(self.originals[k]);
        }
        for k in 0..self.learnts.len() {
            self.attach(self.learnts[k]);
        }
    }

    fn out_of_budget(&self, limits: &Limits, start_conflicts: u64) -> bool {
        if let Some(max) = limits.conflicts {
            if self.stats.conflicts - start_conflicts >= max {
                return true;
            }
        }
        if let Some(d) = limits.deadline {
            if Instant::now() >= d {
                return true;
            }
        }
        if let Some(flag) = &limits.interrupt {
            if flag.load(Ordering::Relaxed) {
                return true;
            }
        }
        false
    }

    pub fn solve(&mut self) -> Outcome {
        self.solve_limited(&Limits::default())
    }

    pub fn solve_limited(&mut self, limits: &Limits) -> Outcome {
        self.model.clear();
        if !self.ok {
            return Outcome::Unsat;
        }
        self.cancel_until(0);
        if self.propagate().is_some() {
            self.ok = false;
            return Outcome::Unsat;
        }
        let start_conflicts = self.stats.conflicts;
        let mut ticks = 0u64;
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                self.since_restart += 1;
                self.mode_conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Outcome::Unsat;
                }
                let (learnt, back, lbd) = self.analyze(conflict);
                self.cancel_until(back);
                self.stats.learnt_literals += learnt.len() as u64;
                match learnt.len() {
                    1 => self.assign(learnt[0], NO_REASON),
                    2 => {
                        self.attach_binary(learnt[0], learnt[1]);
                        self.assign(learnt[0], BIN_REASON | learnt[1]);
                    }
                    _ => {
                        let c = self.alloc(&learnt, true, lbd);
                        self.learnts.push(c);
                        self.attach(c);
                        self.bump_clause(c);
                        self.assign(learnt[0], c);
                    }
                }
                self.var_inc /= if self.stable { 0.95 } else { 0.9 };
                self.cla_inc /= 0.999;
                self.recent_lbd.push_back(lbd);
                self.recent_sum += lbd as u64;
                if self.recent_lbd.len() > 50 {
                    self.recent_sum -= self.recent_lbd.pop_front().unwrap() as u64;
                }
                self.total_lbd += lbd as u64;

                if self.stats.conflicts.is_multiple_of(256) && self.out_of_budget(limits, start_conflicts) {
                    self.cancel_until(0);
                    return Outcome::Unknown;
                }
                if self.stats.conflicts >= self.next_reduce {
                    self.next_reduce = self.stats.conflicts + 2000 + self.reduce_inc * self.stats.reductions;
                    self.reduce();
                }
            } else {
                if self.mode_conflicts >= self.mode_length {
                    self.switch_mode();
                    continue;
                }
                if self.should_restart() {
                    self.restart();
                    continue;
                }
                ticks += 1;
                if ticks.is_multiple_of(4096) && self.out_of_budget(limits, start_conflicts) {
                    self.cancel_until(0);
                    return Outcome::Unknown;
                }
                match self.pick_branch() {
                    None => {
                        self.model = (0..self.num_vars).map(|v| self.value[2 * v] == 1).collect();
                        self.cancel_until(0);
                        return Outcome::Sat;
                    }
                    Some(lit) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.assign(lit, NO_REASON);
                    }
                }
            }
        }
    }

    /// Value of DIMACS variable `v` in the last model.
    pub fn model_value(&self, v: u32) -> Option<bool> {
        self.model.get(v as usize - 1).copied()
    }

    /// The last model as DIMACS literals `±1..=num_vars`.
    pub fn model(&self) -> Vec<i32> {
        self.model
            .iter()
            .enumerate()
            .map(|(v, &b)| if b { v as i32 + 1 } else { -(v as i32 + 1) })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(clauses: &[&[i32]]) -> (Outcome, Solver) {
        let mut s = Solver::new(0);
        for c in clauses {
            s.add_clause(c);
        }
        (s.solve(), s)
    }

    #[test]
    fn trivial() {
        assert_eq!(solve(&[&[1]]).0, Outcome::Sat);
        assert_eq!(solve(&[&[1], &[-1]]).0, Outcome::Unsat);
        assert_eq!(solve(&[]).0, Outcome::Sat);
        let (o, s) = solve(&[&[1, 2], &[-1], &[-2, 3]]);
        assert_eq!(o, Outcome::Sat);
        assert_eq!(s.model(), vec![-1, 2, 3]);
    }

    #[test]
    fn luby_sequence() {
        let seq: Vec<u64> = (1..=15).map(Solver::luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    fn pigeonhole(holes: i32) -> Vec<Vec<i32>> {
        let pigeons = holes + 1;
        let x = |p: i32, h: i32| p * holes + h + 1;
        let mut cs = Vec::new();
        for p in 0..pigeons {
            cs.push((0..holes).map(|h| x(p, h)).collect());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    cs.push(vec![-x(p, h), -x(q, h)]);
                }
            }
        }
        cs
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for holes in 2..=7 {
            let mut s = Solver::new(holes as u64);
            for c in pigeonhole(holes) {
                s.add_clause(&c);
            }
            assert_eq!(s.solve(), Outcome::Unsat, "{holes}");
        }
    }

    #[test]
    fn conflict_budget() {
        let mut s = Solver::new(0);
        for c in pigeonhole(11) {
            s.add_clause(&c);
        }
        let limits = Limits {
            conflicts: Some(300),
            ..Limits::default()
        };
        assert_eq!(s.solve_limited(&limits), Outcome::Unknown);
    }
}
