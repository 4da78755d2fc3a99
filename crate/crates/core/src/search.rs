//! Exact maximization of a weighted sum of satisfied letter patterns.
//!
//! Variables take values in `0..domain`. A clause asks for specific values at
//! a few variables and pays its weight when all of them hold.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

/// How the assignment space is explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Every assignment, in lexicographic order.
    FullEnum,
    /// Depth-first search with an upper bound at each node.
    #[default]
    BranchAndBound,
}

#[derive(Clone, Debug)]
pub(crate) struct Clause {
    pub reqs: Vec<(usize, u8)>,
    pub weight: u64,
}

#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub num_vars: usize,
    pub domain: u8,
    pub clauses: Vec<Clause>,
    /// Variables whose value is decided in advance.
    pub fixed: Vec<Option<u8>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Options {
    pub strategy: Strategy,
    pub budget: Option<u64>,
    pub witness_cap: usize,
    pub parallel: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub best: u64,
    /// Optimal assignments in search order, at most `witness_cap` of them.
    pub witnesses: Vec<Vec<u8>>,
    pub nodes: u64,
    pub complete: bool,
}

impl Problem {
    /// Normalizes clauses: merges repeated variables, drops impossible ones.
    pub fn new(num_vars: usize, domain: u8, raw: Vec<Clause>) -> Problem {
        let clauses = raw
            .into_iter()
            .filter(|c| c.weight > 0)
            .filter_map(|mut c| {
                c.reqs.sort_unstable();
                c.reqs.dedup();
                let clash = c.reqs.windows(2).any(|p| p[0].0 == p[1].0);
                (!clash).then_some(c)
            })
            .collect();
        Problem { num_vars, domain, clauses, fixed: vec![None; num_vars] }
    }

    pub fn value(&self, assignment: &[u8]) -> u64 {
        self.clauses
            .iter()
            .filter(|c| c.reqs.iter().all(|&(v, a)| assignment[v] == a))
            .map(|c| c.weight)
            .sum()
    }
}

pub(crate) fn solve(problem: &Problem, opts: &Options) -> Outcome {
    match opts.strategy {
        Strategy::FullEnum => full_enum(problem, opts),
        Strategy::BranchAndBound => branch_and_bound(problem, opts),
    }
}

fn free_vars(problem: &Problem) -> Vec<usize> {
    (0..problem.num_vars).filter(|&v| problem.fixed[v].is_none()).collect()
}

fn base_assignment(problem: &Problem) -> Vec<u8> {
    problem.fixed.iter().map(|f| f.unwrap_or(0)).collect()
}

/// Number of leading free variables to split on for parallel work.
fn split_depth(domain: u8, free: usize, parallel: bool) -> usize {
    if !parallel || domain < 2 {
        return 0;
    }
    let target = 64 * rayon::current_num_threads().max(1);
    let mut depth = 0;
    let mut parts = 1usize;
    while depth < free && parts < target {
        parts *= domain as usize;
        depth += 1;
    }
    depth
}

fn prefix_digits(mut code: usize, depth: usize, domain: u8) -> Vec<u8> {
    let mut out = vec![0; depth];
    for slot in out.iter_mut().rev() {
        *slot = (code % domain as usize) as u8;
        code /= domain as usize;
    }
    out
}

struct Partial {
    best: Option<u64>,
    witnesses: Vec<Vec<u8>>,
}

fn merge(parts: Vec<Partial>, cap: usize) -> (u64, Vec<Vec<u8>>) {
    let best = parts.iter().filter_map(|p| p.best).max().unwrap_or(0);
    let mut witnesses = Vec::new();
    for p in parts {
        if p.best == Some(best) {
            witnesses.extend(p.witnesses);
        }
    }
    witnesses.truncate(cap);
    (best, witnesses)
}

fn full_enum(problem: &Problem, opts: &Options) -> Outcome {
    let free = free_vars(problem);
    let domain = problem.domain;
    let depth = split_depth(domain, free.len(), opts.parallel);
    let prefixes = (domain as usize).pow(depth as u32);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let run = |code: usize| -> Partial {
        let mut assignment = base_assignment(problem);
        for (k, a) in prefix_digits(code, depth, domain).into_iter().enumerate() {
            assignment[free[k]] = a;
        }
        let rest = &free[depth..];
        let mut part = Partial { best: None, witnesses: Vec::new() };
        loop {
            if abort.load(Ordering::Relaxed) {
                return part;
            }
            let n = nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if opts.budget.is_some_and(|b| n > b) {
                abort.store(true, Ordering::Relaxed);
                return part;
            }
            let value = problem.value(&assignment);
            match part.best {
                Some(b) if value < b => {}
                Some(b) if value == b => {
                    if part.witnesses.len() < opts.witness_cap {
                        part.witnesses.push(assignment.clone());
                    }
                }
                _ => {
                    part.best = Some(value);
                    part.witnesses = vec![assignment.clone()];
                }
            }
            // odometer step over the remaining variables
            let mut k = rest.len();
            loop {
                if k == 0 {
                    return part;
                }
                k -= 1;
                let v = rest[k];
                if assignment[v] + 1 < domain {
                    assignment[v] += 1;
                    break;
                }
                assignment[v] = 0;
            }
        }
    };
    let parts: Vec<Partial> =
        if depth > 0 { (0..prefixes).into_par_iter().map(run).collect() } else { vec![run(0)] };
    let (best, witnesses) = merge(parts, opts.witness_cap);
    Outcome {
        best,
        witnesses,
        nodes: nodes.load(Ordering::Relaxed).min(opts.budget.unwrap_or(u64::MAX)),
        complete: !abort.load(Ordering::Relaxed),
    }
}

/// Clause data re-indexed by branching position.
struct Compiled {
    order: Vec<usize>,
    domain: u8,
    base: u64,
    weights: Vec<u64>,
    /// Requirements as `(position, value)`, sorted by position.
    reqs: Vec<Vec<(usize, u8)>>,
    /// `incident[pos]` lists `(clause, required value)`.
    incident: Vec<Vec<(usize, u8)>>,
}

fn compile(problem: &Problem) -> Compiled {
    let mut base = 0;
    let mut kept: Vec<(Vec<(usize, u8)>, u64)> = Vec::new();
    for c in &problem.clauses {
        let mut reqs = Vec::new();
        let mut alive = true;
        for &(v, a) in &c.reqs {
            match problem.fixed[v] {
                Some(f) if f == a => {}
                Some(_) => {
                    alive = false;
                    break;
                }
                None => reqs.push((v, a)),
            }
        }
        if !alive {
            continue;
        }
        if reqs.is_empty() {
            base += c.weight;
        } else {
            kept.push((reqs, c.weight));
        }
    }
    let mut incident_weight = vec![0u64; problem.num_vars];
    for (reqs, w) in &kept {
        for &(v, _) in reqs {
            incident_weight[v] += w;
        }
    }
    let mut order = free_vars(problem);
    order.sort_by(|&a, &b| incident_weight[b].cmp(&incident_weight[a]).then(a.cmp(&b)));
    let mut position = vec![usize::MAX; problem.num_vars];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let mut incident = vec![Vec::new(); order.len()];
    let mut reqs_by_pos = Vec::with_capacity(kept.len());
    let mut weights = Vec::with_capacity(kept.len());
    for (c, (reqs, w)) in kept.into_iter().enumerate() {
        let mut r: Vec<(usize, u8)> = reqs.into_iter().map(|(v, a)| (position[v], a)).collect();
        r.sort_unstable();
        for &(p, a) in &r {
            incident[p].push((c, a));
        }
        reqs_by_pos.push(r);
        weights.push(w);
    }
    Compiled { order, domain: problem.domain, base, weights, reqs: reqs_by_pos, incident }
}

/// Incumbent shared between workers: value in the high bits, and the
/// complement of the prefix index in the low bits so that `fetch_max`
/// prefers earlier prefixes on ties.
const PREFIX_BITS: u32 = 24;
const PREFIX_MASK: u64 = (1 << PREFIX_BITS) - 1;

fn pack(value: u64, prefix: usize) -> u64 {
    ((value + 1) << PREFIX_BITS) | (PREFIX_MASK - prefix as u64)
}

fn unpack(packed: u64) -> Option<(u64, usize)> {
    (packed != 0).then(|| ((packed >> PREFIX_BITS) - 1, (PREFIX_MASK - (packed & PREFIX_MASK)) as usize))
}

struct Worker<'a> {
    c: &'a Compiled,
    opts: &'a Options,
    prefix: usize,
    shared: &'a AtomicU64,
    share: bool,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    values: Vec<u8>,
    cursor: Vec<u32>,
    kills: Vec<u32>,
    satisfied: u64,
    scratch: Vec<u64>,
    touched: Vec<usize>,
    part: Partial,
}

impl Worker<'_> {
    fn assign(&mut self, pos: usize, a: u8) {
        self.values[pos] = a;
        for &(cl, want) in &self.c.incident[pos] {
            if want == a {
                self.cursor[cl] += 1;
                if self.kills[cl] == 0 && self.cursor[cl] as usize == self.c.reqs[cl].len() {
                    self.satisfied += self.c.weights[cl];
                }
            } else {
                self.kills[cl] += 1;
            }
        }
    }

    fn unassign(&mut self, pos: usize) {
        let a = self.values[pos];
        for &(cl, want) in &self.c.incident[pos] {
            if want == a {
                if self.kills[cl] == 0 && self.cursor[cl] as usize == self.c.reqs[cl].len() {
                    self.satisfied -= self.c.weights[cl];
                }
                self.cursor[cl] -= 1;
            } else {
                self.kills[cl] -= 1;
            }
        }
    }

    /// Satisfied weight plus, for each open variable, the heaviest value
    /// among clauses whose next requirement sits there.
    fn bound(&mut self) -> u64 {
        let d = self.c.domain as usize;
        for cl in 0..self.c.reqs.len() {
            if self.kills[cl] != 0 {
                continue;
            }
            let k = self.cursor[cl] as usize;
            if let Some(&(pos, a)) = self.c.reqs[cl].get(k) {
                let slot = pos * d + a as usize;
                if self.scratch[slot] == 0 {
                    self.touched.push(slot);
                }
                self.scratch[slot] += self.c.weights[cl];
            }
        }
        self.touched.sort_unstable();
        let mut extra = 0;
        let mut i = 0;
        while i < self.touched.len() {
            let pos = self.touched[i] / d;
            let mut m = 0;
            while i < self.touched.len() && self.touched[i] / d == pos {
                m = m.max(self.scratch[self.touched[i]]);
                self.scratch[self.touched[i]] = 0;
                i += 1;
            }
            extra += m;
        }
        self.touched.clear();
        self.c.base + self.satisfied + extra
    }

    fn should_prune(&self, bound: u64) -> bool {
        let collect_all = self.opts.witness_cap > 1;
        if let Some(best) = self.part.best {
            if bound < best || (!collect_all && bound == best) {
                return true;
            }
        }
        if self.share {
            if let Some((value, prefix)) = unpack(self.shared.load(Ordering::Relaxed)) {
                if bound < value || (!collect_all && bound == value && prefix < self.prefix) {
                    return true;
                }
            }
        }
        false
    }

    fn leaf(&mut self) {
        let value = self.c.base + self.satisfied;
        let improved = match self.part.best {
            Some(b) if value < b => return,
            Some(b) if value == b => false,
            _ => true,
        };
        let assignment = self.values.clone();
        if improved {
            self.part.best = Some(value);
            self.part.witnesses = vec![assignment];
            if self.share {
                self.shared.fetch_max(pack(value, self.prefix), Ordering::Relaxed);
            }
        } else if self.part.witnesses.len() < self.opts.witness_cap {
            self.part.witnesses.push(assignment);
        }
    }

    fn dfs(&mut self, pos: usize) {
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.opts.budget.is_some_and(|b| n > b) {
            self.abort.store(true, Ordering::Relaxed);
            return;
        }
        if pos == self.c.order.len() {
            self.leaf();
            return;
        }
        let b = self.bound();
        if self.should_prune(b) {
            return;
        }
        for a in 0..self.c.domain {
            self.assign(pos, a);
            self.dfs(pos + 1);
            self.unassign(pos);
        }
    }
}

fn branch_and_bound(problem: &Problem, opts: &Options) -> Outcome {
    let c = compile(problem);
    let n = c.order.len();
    let depth = split_depth(c.domain, n, opts.parallel);
    let prefixes = (c.domain as usize).pow(depth as u32);
    let total_weight: u64 = c.base + c.weights.iter().sum::<u64>();
    let share = total_weight < (1 << (63 - PREFIX_BITS)) && (prefixes as u64) < PREFIX_MASK;
    let shared = AtomicU64::new(0);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let run = |code: usize| -> Partial {
        let mut w = Worker {
            c: &c,
            opts,
            prefix: code,
            shared: &shared,
            share,
            nodes: &nodes,
            abort: &abort,
            values: vec![0; n],
            cursor: vec![0; c.reqs.len()],
            kills: vec![0; c.reqs.len()],
            satisfied: 0,
            scratch: vec![0; n * c.domain as usize],
            touched: Vec::new(),
            part: Partial { best: None, witnesses: Vec::new() },
        };
        for (pos, a) in prefix_digits(code, depth, c.domain).into_iter().enumerate() {
            w.assign(pos, a);
        }
        w.dfs(depth);
        w.part
    };
    let parts: Vec<Partial> =
        if depth > 0 { (0..prefixes).into_par_iter().map(run).collect() } else { vec![run(0)] };
    let (best, by_position) = merge(parts, opts.witness_cap);
    let witnesses = by_position
        .into_iter()
        .map(|vals| {
            let mut full = base_assignment(problem);
            for (pos, &v) in c.order.iter().enumerate() {
                full[v] = vals[pos];
            }
            full
        })
        .collect();
    Outcome {
        best,
        witnesses,
        nodes: nodes.load(Ordering::Relaxed).min(opts.budget.unwrap_or(u64::MAX)),
        complete: !abort.load(Ordering::Relaxed),
    }
}
