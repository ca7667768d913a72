//! Bounded exploration of Hurwitz orbits.
//!
//! States are kept as fixed-width matrices; every product is overflow-checked
//! and any state with an entry above the bound (or overflowing `i64`) is
//! pruned. Breadth-first expansion is level-synchronous: a level's neighbors
//! may be computed on several threads, but they are merged into the visited
//! set in a fixed order, so the result does not depend on the worker count.

use std::cmp::Reverse;
use std::collections::hash_map::Entry as MapEntry;
use std::collections::{BinaryHeap, HashMap};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::factorization::{
    canonical_form, certificate, scramble, Certificate, Direction, Factorization,
    FactorizationError, Move,
};
use crate::sl2z::Sl2z;

type Mat = [i64; 4];
type State = Box<[Mat]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
    #[error("entry bound {bound} is below the largest entry {max} of the start state")]
    BoundBelowStart { bound: i64, max: String },
    #[error("node budget must be at least 1")]
    ZeroBudget,
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub states_visited: usize,
    pub canonical_reached: bool,
    /// Every reachable state within the bound was expanded.
    pub frontier_exhausted: bool,
    pub witness_moves: Option<Vec<Move>>,
    pub pruned_by_bound: u64,
    /// Bound in force for the run that produced this report.
    pub entry_bound: i64,
    /// Number of times the bound was doubled before this report.
    pub escalations: u32,
}

impl OrbitReport {
    /// Pruning-free exhaustion without reaching the canonical form; this
    /// would contradict the normal form.
    pub fn falsifies(&self) -> bool {
        !self.canonical_reached && self.frontier_exhausted && self.pruned_by_bound == 0
    }

    pub fn inconclusive(&self) -> bool {
        !self.canonical_reached && !self.falsifies()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitConfig {
    pub entry_bound: i64,
    pub node_budget: usize,
    pub jobs: usize,
    /// Largest bound tried when pruning blocks the search; no escalation
    /// when this is at most `entry_bound`.
    pub escalation_ceiling: i64,
}

impl OrbitConfig {
    pub fn new(entry_bound: i64, node_budget: usize) -> Self {
        OrbitConfig {
            entry_bound,
            node_budget,
            jobs: 1,
            escalation_ceiling: entry_bound,
        }
    }
}

fn to_state(f: &Factorization) -> Option<State> {
    f.entries().iter().map(Sl2z::to_i64).collect()
}

fn to_factorization(s: &[Mat]) -> Factorization {
    let entries = s
        .iter()
        .map(|m| Sl2z::from_i64(*m).expect("orbit states keep determinant one"))
        .collect();
    Factorization::from_valid(entries)
}

fn mul(x: &Mat, y: &Mat) -> Option<Mat> {
    let e = |p: i64, q: i64, r: i64, s: i64| p.checked_mul(q)?.checked_add(r.checked_mul(s)?);
    Some([
        e(x[0], y[0], x[1], y[2])?,
        e(x[0], y[1], x[1], y[3])?,
        e(x[2], y[0], x[3], y[2])?,
        e(x[2], y[1], x[3], y[3])?,
    ])
}

fn inv(x: &Mat) -> Option<Mat> {
    Some([x[3], x[1].checked_neg()?, x[2].checked_neg()?, x[0]])
}

fn conj(p: &Mat, x: &Mat) -> Option<Mat> {
    mul(&mul(p, x)?, &inv(p)?)
}

fn within(m: &Mat, bound: i64) -> bool {
    m.iter()
        .all(|e| e.checked_abs().is_some_and(|a| a <= bound))
}

/// Applies `mv`; `None` if an entry overflows or leaves the bound.
fn step(state: &[Mat], mv: Move, bound: i64) -> Option<State> {
    let (a, b) = (&state[mv.index], &state[mv.index + 1]);
    let (x, y) = match mv.dir {
        Direction::Right => (conj(a, b)?, *a),
        Direction::Left => (*b, conj(&inv(b)?, a)?),
    };
    if !within(&x, bound) || !within(&y, bound) {
        return None;
    }
    let mut next: State = state.into();
    next[mv.index] = x;
    next[mv.index + 1] = y;
    Some(next)
}

/// Neighbor order: index ascending, right before left.
fn moves_for(len: usize) -> impl Iterator<Item = Move> {
    (0..len.saturating_sub(1)).flat_map(|i| [Move::right(i), Move::left(i)])
}

struct BfsRun {
    states: Vec<State>,
    parents: Vec<Option<(u32, Move)>>,
    found: Option<u32>,
    pruned: u64,
    frontier_exhausted: bool,
}

impl BfsRun {
    fn path_to(&self, mut idx: u32) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((parent, mv)) = self.parents[idx as usize] {
            moves.push(mv);
            idx = parent;
        }
        moves.reverse();
        moves
    }
}

fn bfs(start: State, target: Option<&[Mat]>, bound: i64, budget: usize, jobs: usize) -> BfsRun {
    let len = start.len();
    let mut index: HashMap<State, u32> = HashMap::new();
    let mut run = BfsRun {
        states: vec![start.clone()],
        parents: vec![None],
        found: None,
        pruned: 0,
        frontier_exhausted: false,
    };
    index.insert(start.clone(), 0);
    if target.is_some_and(|t| *t == *start) {
        run.found = Some(0);
        run.frontier_exhausted = len < 2;
        return run;
    }
    let moves: Vec<Move> = moves_for(len).collect();
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let expand = |&i: &u32| -> Vec<(u32, Move, Option<State>)> {
            let s = &run.states[i as usize];
            moves
                .iter()
                .map(|&mv| (i, mv, step(s, mv, bound)))
                .collect()
        };
        let layers: Vec<Vec<(u32, Move, Option<State>)>> = if jobs > 1 {
            frontier.par_iter().map(expand).collect()
        } else {
            frontier.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        for (parent, mv, child) in layers.into_iter().flatten() {
            let Some(child) = child else {
                run.pruned += 1;
                continue;
            };
            if let MapEntry::Vacant(slot) = index.entry(child) {
                if run.states.len() >= budget {
                    return run;
                }
                let id = run.states.len() as u32;
                let child = slot.key().clone();
                slot.insert(id);
                let hit = target.is_some_and(|t| *t == *child);
                run.states.push(child);
                run.parents.push(Some((parent, mv)));
                if hit {
                    run.found = Some(id);
                    return run;
                }
                next.push(id);
            }
        }
        frontier = next;
    }
    run.frontier_exhausted = true;
    run
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, OrbitError> {
    if jobs <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| OrbitError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

fn check_start(f: &Factorization, bound: i64, budget: usize) -> Result<State, OrbitError> {
    if budget == 0 {
        return Err(OrbitError::ZeroBudget);
    }
    let max = f.max_abs_entry();
    match (to_state(f), max.to_i64()) {
        (Some(s), Some(m)) if m <= bound => Ok(s),
        _ => Err(OrbitError::BoundBelowStart {
            bound,
            max: max.to_string(),
        }),
    }
}

/// Breadth-first search from `f` towards the canonical form of its certificate.
pub fn enumerate_orbit(
    f: &Factorization,
    entry_bound: i64,
    node_budget: usize,
) -> Result<OrbitReport, OrbitError> {
    enumerate_orbit_with(f, &OrbitConfig::new(entry_bound, node_budget))
}

/// [`enumerate_orbit`] with worker count and bound escalation. When the
/// frontier runs dry only because of pruning, the bound is doubled, up to
/// `escalation_ceiling`, and the search restarts.
pub fn enumerate_orbit_with(
    f: &Factorization,
    config: &OrbitConfig,
) -> Result<OrbitReport, OrbitError> {
    let cert = certificate(f)?;
    let target = to_state(&cert.canonical()).expect("canonical entries are small");
    let mut bound = config.entry_bound;
    let mut escalations = 0;
    loop {
        let start = check_start(f, bound, config.node_budget)?;
        let run = with_pool(config.jobs, || {
            bfs(start, Some(&target), bound, config.node_budget, config.jobs)
        })?;
        let report = OrbitReport {
            states_visited: run.states.len(),
            canonical_reached: run.found.is_some(),
            frontier_exhausted: run.frontier_exhausted,
            witness_moves: run.found.map(|i| run.path_to(i)),
            pruned_by_bound: run.pruned,
            entry_bound: bound,
            escalations,
        };
        let blocked =
            !report.canonical_reached && report.frontier_exhausted && report.pruned_by_bound > 0;
        if blocked && bound < config.escalation_ceiling {
            bound = bound.saturating_mul(2).min(config.escalation_ceiling);
            escalations += 1;
            continue;
        }
        return Ok(report);
    }
}

/// All states reachable from `f` without leaving the bound.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub states: Vec<Factorization>,
    pub complete: bool,
    pub pruned_by_bound: u64,
}

impl Exploration {
    pub fn contains(&self, f: &Factorization) -> bool {
        self.states.iter().any(|s| s == f)
    }
}

/// Explores the bounded orbit of `f` (no admissibility requirement).
pub fn explore(
    f: &Factorization,
    entry_bound: i64,
    node_budget: usize,
    jobs: usize,
) -> Result<Exploration, OrbitError> {
    let start = check_start(f, entry_bound, node_budget)?;
    let run = with_pool(jobs, || bfs(start, None, entry_bound, node_budget, jobs))?;
    Ok(Exploration {
        states: run.states.iter().map(|s| to_factorization(s)).collect(),
        complete: run.frontier_exhausted,
        pruned_by_bound: run.pruned,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 200_000,
        }
    }
}

fn weight(s: &[Mat]) -> u128 {
    s.iter()
        .flat_map(|m| m.iter())
        .map(|e| e.unsigned_abs() as u128)
        .sum()
}

/// Best-first search for moves taking `from` to `to`, ordered by the total
/// absolute size of the entries. Returns `None` when the budget runs out.
pub fn find_moves_to(
    from: &Factorization,
    to: &Factorization,
    config: &SearchConfig,
) -> Option<Vec<Move>> {
    if from.len() != to.len() {
        return None;
    }
    if from == to {
        return Some(Vec::new());
    }
    let start = to_state(from)?;
    let target = to_state(to)?;
    let moves: Vec<Move> = moves_for(start.len()).collect();
    let mut index: HashMap<State, u32> = HashMap::new();
    let mut parents: Vec<Option<(u32, Move)>> = vec![None];
    let mut states: Vec<State> = vec![start.clone()];
    index.insert(start.clone(), 0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((weight(&start), 0u32)));
    while let Some(Reverse((_, id))) = heap.pop() {
        for &mv in &moves {
            let Some(child) = step(&states[id as usize], mv, i64::MAX) else {
                continue;
            };
            if index.contains_key(&child) {
                continue;
            }
            if states.len() >= config.node_budget {
                return None;
            }
            let cid = states.len() as u32;
            index.insert(child.clone(), cid);
            parents.push(Some((id, mv)));
            let hit = child == target;
            heap.push(Reverse((weight(&child), cid)));
            states.push(child);
            if hit {
                let mut path = Vec::new();
                let mut cur = cid;
                while let Some((p, mv)) = parents[cur as usize] {
                    path.push(mv);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reachability {
    /// Found by breadth-first search, with that run's report.
    Bfs(OrbitReport),
    /// Breadth-first search was inconclusive; the guided search found a path.
    Guided {
        bfs: OrbitReport,
        moves: Vec<Move>,
    },
    Inconclusive(OrbitReport),
    Falsified(OrbitReport),
}

impl Reachability {
    pub fn moves(&self) -> Option<&[Move]> {
        match self {
            Reachability::Bfs(r) => r.witness_moves.as_deref(),
            Reachability::Guided { moves, .. } => Some(moves),
            _ => None,
        }
    }
}

/// Canonical reachability: breadth-first first, guided search as a fallback.
pub fn reach_canonical(
    f: &Factorization,
    config: &OrbitConfig,
    guided: &SearchConfig,
) -> Result<Reachability, OrbitError> {
    let report = enumerate_orbit_with(f, config)?;
    if report.canonical_reached {
        return Ok(Reachability::Bfs(report));
    }
    if report.falsifies() {
        return Ok(Reachability::Falsified(report));
    }
    let target = certificate(f)?.canonical();
    Ok(match find_moves_to(f, &target, guided) {
        Some(moves) => Reachability::Guided { bfs: report, moves },
        None => Reachability::Inconclusive(report),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_p: u64,
    pub max_k: u64,
    pub entry_bound: i64,
    pub node_budget: usize,
    pub seeds: Vec<u64>,
    pub scramble_steps: usize,
    pub escalation_ceiling: i64,
    pub guided_budget: usize,
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(max_p: u64, max_k: u64, seeds: usize) -> Self {
        SweepConfig {
            max_p,
            max_k,
            entry_bound: 50,
            node_budget: 20_000,
            seeds: (0..seeds as u64).collect(),
            scramble_steps: 200,
            escalation_ceiling: 400,
            guided_budget: 200_000,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCase {
    pub expected: Certificate,
    pub seed: u64,
    pub recovered: Option<Certificate>,
    pub reach: Reachability,
    /// The reported moves replay from the scramble to the canonical form.
    pub replay_ok: bool,
}

impl SweepCase {
    pub fn certificate_ok(&self) -> bool {
        self.recovered == Some(self.expected)
    }

    pub fn failed(&self) -> bool {
        !self.certificate_ok()
            || matches!(self.reach, Reachability::Falsified(_))
            || (self.reach.moves().is_some() && !self.replay_ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub cases: Vec<SweepCase>,
    pub distinct_lengths: usize,
    pub distinct_length_formula: usize,
}

impl SweepSummary {
    pub fn failures(&self) -> impl Iterator<Item = &SweepCase> {
        self.cases.iter().filter(|c| c.failed())
    }

    pub fn inconclusive(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(c.reach, Reachability::Inconclusive(_)))
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none() && self.distinct_lengths == self.distinct_length_formula
    }
}

/// Scrambles every canonical form in the grid and checks certificate
/// recovery and canonical reachability.
pub fn verify_theorem_sweep(config: &SweepConfig) -> Result<SweepSummary, OrbitError> {
    let mut cases = Vec::new();
    let mut lengths = std::collections::BTreeSet::new();
    let mut formula = std::collections::BTreeSet::new();
    let orbit_cfg = |f: &Factorization| {
        let start_max = f.max_abs_entry().to_i64().unwrap_or(i64::MAX);
        let bound = config.entry_bound.max(start_max);
        OrbitConfig {
            entry_bound: bound,
            node_budget: config.node_budget,
            jobs: config.jobs,
            escalation_ceiling: config.escalation_ceiling.max(bound),
        }
    };
    let guided = SearchConfig {
        node_budget: config.guided_budget,
    };
    for p in 0..=config.max_p {
        for q in 0..=1u8 {
            for k in 0..=config.max_k {
                let expected = Certificate { p, q, k };
                formula.insert(expected.length());
                let canonical = canonical_form(p as i64, q as i64, k as i64)?;
                for &seed in &config.seeds {
                    let f = scramble(&canonical, seed, config.scramble_steps);
                    lengths.insert(f.len() as u64);
                    let recovered = certificate(&f).ok();
                    let reach = if to_state(&f).is_some() {
                        reach_canonical(&f, &orbit_cfg(&f), &guided)?
                    } else {
                        // entries beyond i64: fall back to the guided search only
                        Reachability::Inconclusive(OrbitReport {
                            states_visited: 0,
                            canonical_reached: false,
                            frontier_exhausted: false,
                            witness_moves: None,
                            pruned_by_bound: 0,
                            entry_bound: config.entry_bound,
                            escalations: 0,
                        })
                    };
                    let replay_ok = reach
                        .moves()
                        .map(|m| f.apply_moves(m).ok().as_ref() == Some(&canonical))
                        .unwrap_or(false);
                    cases.push(SweepCase {
                        expected,
                        seed,
                        recovered,
                        reach,
                        replay_ok,
                    });
                }
            }
        }
    }
    Ok(SweepSummary {
        cases,
        distinct_lengths: lengths.len(),
        distinct_length_formula: formula.len(),
    })
}
