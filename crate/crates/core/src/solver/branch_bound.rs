//! Depth-first branch-and-bound over weight assignments.
//!
//! Vertices are assigned in a fixed order, trying 0, 1, 2. A partial
//! assignment is cut off when
//!
//! * some zero vertex can no longer be satisfied: its neighbour sum plus
//!   2 per unassigned neighbour is below 2, or, for the perfect variant,
//!   its sum already exceeds 2 (sums never decrease);
//! * the current weight plus an admissible lower bound on the weight still
//!   to be placed cannot beat the incumbent.
//!
//! The lower bound charges every vertex `u` that is neither positive nor
//! already dominated its remaining demand `d(u) = 2 - sum(u)`. One unit of
//! new weight on an unassigned `w` pays at most `gain(w) = d(w) + #{u in
//! N(w) : d(u) > 0}` of total demand, so at least `sum_u d(u) / g(u)` units
//! are needed, where `g(u)` is the largest gain among unassigned vertices of
//! the closed neighbourhood of `u` (only the open one when `u` is a zero
//! vertex). This is never larger than the cost of any completion.

use serde::{Deserialize, Serialize};

use crate::domination::{verify, Variant, WeightFunction};
use crate::error::{invalid, Result};
use crate::graph::Graph;

use super::{certify, Engine, Enumeration, SearchConfig, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexOrder {
    /// Plain rank order. Consecutive ranks are close in `S(K_n, t)`, so
    /// neighbourhoods close early and the infeasibility cuts fire sooner.
    #[default]
    Canonical,
    /// Highest degree first, ties by rank.
    DegreeDescending,
}

const UNSET: u8 = 3;

fn assignment_order(g: &Graph, order: VertexOrder) -> Vec<usize> {
    let mut vertices: Vec<usize> = (0..g.order()).collect();
    if order == VertexOrder::DegreeDescending {
        vertices.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    }
    vertices
}

enum Mode {
    /// Find the lexicographically smallest minimum-weight function.
    Optimize,
    /// Collect every valid function of exactly `target` weight.
    Enumerate {
        target: u64,
        cap: usize,
        found: Vec<Vec<u8>>,
        overflowed: bool,
    },
}

struct Search<'a> {
    g: &'a Graph,
    variant: Variant,
    order: Vec<usize>,
    assign: Vec<u8>,
    sums: Vec<u32>,
    open: Vec<u32>,
    weight: u64,
    best: Vec<u8>,
    best_weight: u64,
    /// Prune anything heavier than this regardless of the incumbent.
    ceiling: u64,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    mode: Mode,
    demand: Vec<u32>,
    gain: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, variant: Variant, config: &SearchConfig, mode: Mode) -> Self {
        let order = g.order();
        Self {
            g,
            variant,
            order: assignment_order(g, config.vertex_order),
            assign: vec![UNSET; order],
            sums: vec![0; order],
            open: (0..order).map(|v| g.degree(v) as u32).collect(),
            weight: 0,
            // all ones: no zero vertex, valid for both variants
            best: vec![1; order],
            best_weight: order as u64,
            ceiling: config.weight_cutoff.unwrap_or(u64::MAX),
            nodes: 0,
            budget: config.node_budget,
            exhausted: false,
            mode,
            demand: vec![0; order],
            gain: vec![0; order],
        }
    }

    fn zero_ok(&self, u: usize) -> bool {
        let sum = self.sums[u];
        match self.variant {
            Variant::Italian => sum + 2 * self.open[u] >= 2,
            Variant::Perfect => sum <= 2 && sum + 2 * self.open[u] >= 2,
        }
    }

    /// Assigns `value` to `v`; returns whether the result is still feasible.
    /// The assignment is made even when infeasible and must be undone.
    fn place(&mut self, v: usize, value: u8) -> bool {
        self.assign[v] = value;
        self.weight += value as u64;
        let mut feasible = true;
        for &u in self.g.neighbors(v) {
            self.sums[u] += value as u32;
            self.open[u] -= 1;
            if self.assign[u] == 0 && !self.zero_ok(u) {
                feasible = false;
            }
        }
        if value == 0 && !self.zero_ok(v) {
            feasible = false;
        }
        feasible
    }

    fn unplace(&mut self, v: usize) {
        let value = self.assign[v];
        for &u in self.g.neighbors(v) {
            self.sums[u] -= value as u32;
            self.open[u] += 1;
        }
        self.weight -= value as u64;
        self.assign[v] = UNSET;
    }

    /// Admissible bound on the weight still to be placed, or `None` if some
    /// demand cannot be met at all.
    fn lower_bound(&mut self) -> Option<u64> {
        let n = self.g.order();
        for u in 0..n {
            self.demand[u] = match self.assign[u] {
                1 | 2 => 0,
                _ => 2u32.saturating_sub(self.sums[u]),
            };
        }
        for w in 0..n {
            self.gain[w] = if self.assign[w] == UNSET {
                self.demand[w]
                    + self
                        .g
                        .neighbors(w)
                        .iter()
                        .filter(|&&u| self.demand[u] > 0)
                        .count() as u32
            } else {
                0
            };
        }
        let mut total = 0.0f64;
        for u in 0..n {
            let d = self.demand[u];
            if d == 0 {
                continue;
            }
            let own = if self.assign[u] == UNSET { self.gain[u] } else { 0 };
            let best = self
                .g
                .neighbors(u)
                .iter()
                .map(|&w| self.gain[w])
                .fold(own, u32::max);
            if best == 0 {
                return None;
            }
            total += d as f64 / best as f64;
        }
        Some((total - 1e-9).ceil().max(0.0) as u64)
    }

    /// Could some completion of the current partial assignment be
    /// lexicographically smaller than the incumbent?
    fn may_precede_incumbent(&self) -> bool {
        for (p, &a) in self.assign.iter().enumerate() {
            if a == UNSET || a < self.best[p] {
                return true;
            }
            if a > self.best[p] {
                return false;
            }
        }
        false
    }

    fn worth_exploring(&mut self) -> bool {
        let Some(lb) = self.lower_bound() else {
            return false;
        };
        let reach = self.weight + lb;
        if reach > self.ceiling {
            return false;
        }
        match &self.mode {
            Mode::Optimize => {
                reach < self.best_weight
                    || (reach == self.best_weight && self.may_precede_incumbent())
            }
            Mode::Enumerate { target, .. } => reach <= *target,
        }
    }

    fn leaf(&mut self) {
        match &mut self.mode {
            Mode::Optimize => {
                if self.weight < self.best_weight
                    || (self.weight == self.best_weight && self.assign < self.best)
                {
                    self.best_weight = self.weight;
                    self.best.clone_from(&self.assign);
                }
            }
            Mode::Enumerate {
                target,
                cap,
                found,
                overflowed,
            } => {
                if self.weight == *target {
                    if found.len() < *cap {
                        found.push(self.assign.clone());
                    } else {
                        *overflowed = true;
                    }
                }
            }
        }
    }

    fn stop(&self) -> bool {
        self.exhausted || matches!(self.mode, Mode::Enumerate { overflowed: true, .. })
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.leaf();
            return;
        }
        if !self.worth_exploring() {
            return;
        }
        let v = self.order[depth];
        for value in 0..=2u8 {
            if self.nodes >= self.budget {
                self.exhausted = true;
            }
            if self.stop() {
                return;
            }
            self.nodes += 1;
            if self.place(v, value) {
                self.descend(depth + 1);
            }
            self.unplace(v);
        }
    }
}

/// Exact optimum by branch-and-bound. A result with `proven == false`
/// carries the best function found before the node budget ran out.
pub fn solve_branch_bound(g: &Graph, variant: Variant, config: &SearchConfig) -> Result<SolveResult> {
    run(g, variant, config, None)
}

/// As [`solve_branch_bound`], starting from a known valid function as the
/// incumbent. The returned optimum is never worse than `incumbent`.
pub fn solve_branch_bound_with_incumbent(
    g: &Graph,
    variant: Variant,
    config: &SearchConfig,
    incumbent: &WeightFunction,
) -> Result<SolveResult> {
    let report = verify(g, incumbent, variant)?;
    if !report.valid {
        return Err(invalid(format!(
            "seed is not a valid {variant} function ({} violations)",
            report.violations.len()
        )));
    }
    run(g, variant, config, Some(incumbent))
}

fn run(g: &Graph, variant: Variant, config: &SearchConfig, seed: Option<&WeightFunction>) -> Result<SolveResult> {
    config.validate()?;
    let mut search = Search::new(g, variant, config, Mode::Optimize);
    if let Some(seed) = seed {
        let seed = seed.as_slice();
        let w: u64 = seed.iter().map(|&x| x as u64).sum();
        if (w, seed) < (search.best_weight, &search.best[..]) {
            search.best_weight = w;
            search.best = seed.to_vec();
        }
    }
    search.descend(0);
    let proven = !search.exhausted && search.best_weight <= search.ceiling;
    let result = SolveResult {
        variant,
        engine: Engine::BranchBound,
        optimum: search.best_weight,
        proven,
        nodes_explored: search.nodes,
        witness: WeightFunction::new(search.best)?,
    };
    certify(g, &result)?;
    Ok(result)
}

pub(super) fn enumerate(g: &Graph, variant: Variant, target: u64, config: &SearchConfig) -> Result<Enumeration> {
    let mode = Mode::Enumerate {
        target,
        cap: config.solution_cap,
        found: Vec::new(),
        overflowed: false,
    };
    let mut search = Search::new(g, variant, config, mode);
    search.descend(0);
    let exhausted = search.exhausted;
    let Mode::Enumerate {
        mut found,
        overflowed,
        ..
    } = search.mode
    else {
        unreachable!("enumeration mode")
    };
    found.sort();
    let solutions = found
        .into_iter()
        .map(WeightFunction::new)
        .collect::<Result<Vec<_>>>()?;
    for f in &solutions {
        let report = verify(g, f, variant)?;
        debug_assert!(report.valid && report.total_weight == target);
    }
    Ok(Enumeration {
        variant,
        optimum: target,
        proven: true,
        solutions,
        complete: !exhausted && !overflowed,
        nodes_explored: search.nodes,
    })
}
