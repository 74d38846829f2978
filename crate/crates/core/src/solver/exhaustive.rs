use crate::domination::{Variant, WeightFunction};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{certify, Engine, Enumeration, SearchConfig, SolveResult};

/// Odometer over `{0,1,2}^V` with vertex 0 as the most significant digit,
/// so assignments are visited in lexicographic order. Neighbour sums and the
/// number of unsatisfied zero vertices are updated incrementally.
struct Odometer<'a> {
    g: &'a Graph,
    variant: Variant,
    weights: Vec<u8>,
    sums: Vec<u32>,
    unsatisfied: usize,
    total: u64,
}

impl<'a> Odometer<'a> {
    fn new(g: &'a Graph, variant: Variant) -> Self {
        let order = g.order();
        let unsatisfied = (0..order).filter(|_| !variant.accepts(0)).count();
        Self {
            g,
            variant,
            weights: vec![0; order],
            sums: vec![0; order],
            unsatisfied,
            total: 0,
        }
    }

    fn bad(&self, v: usize) -> bool {
        self.weights[v] == 0 && !self.variant.accepts(self.sums[v])
    }

    fn set(&mut self, v: usize, value: u8) {
        let old = self.weights[v];
        if self.bad(v) {
            self.unsatisfied -= 1;
        }
        for &u in self.g.neighbors(v) {
            if self.bad(u) {
                self.unsatisfied -= 1;
            }
            self.sums[u] = self.sums[u] + value as u32 - old as u32;
            if self.bad(u) {
                self.unsatisfied += 1;
            }
        }
        self.weights[v] = value;
        self.total = self.total + value as u64 - old as u64;
        if self.bad(v) {
            self.unsatisfied += 1;
        }
    }

    /// Moves to the next assignment; `false` after the last one.
    fn advance(&mut self) -> bool {
        let mut p = self.weights.len();
        while p > 0 {
            p -= 1;
            if self.weights[p] < 2 {
                self.set(p, self.weights[p] + 1);
                return true;
            }
            self.set(p, 0);
        }
        false
    }

    fn valid(&self) -> bool {
        self.unsatisfied == 0
    }
}

fn check_size(g: &Graph, config: &SearchConfig) -> Result<()> {
    config.validate()?;
    if g.order() > config.exhaustive_vertex_limit {
        return Err(Error::Capacity {
            what: "vertices for exhaustive search",
            requested: g.order() as u128,
            limit: config.exhaustive_vertex_limit,
        });
    }
    Ok(())
}

/// Minimum-weight function by full enumeration of `3^|V|` assignments.
pub fn solve_exhaustive(g: &Graph, variant: Variant, config: &SearchConfig) -> Result<SolveResult> {
    check_size(g, config)?;
    let mut odo = Odometer::new(g, variant);
    let mut best: Option<(u64, Vec<u8>)> = None;
    let mut visited = 0u64;
    loop {
        visited += 1;
        if odo.valid() && best.as_ref().is_none_or(|(w, _)| odo.total < *w) {
            best = Some((odo.total, odo.weights.clone()));
        }
        if !odo.advance() {
            break;
        }
    }
    // all-ones is always valid, so something was found
    let (optimum, witness) = best.expect("a valid function exists");
    let result = SolveResult {
        variant,
        engine: Engine::Exhaustive,
        optimum,
        proven: true,
        nodes_explored: visited,
        witness: WeightFunction::new(witness)?,
    };
    certify(g, &result)?;
    Ok(result)
}

pub(super) fn enumerate(g: &Graph, variant: Variant, config: &SearchConfig) -> Result<Enumeration> {
    check_size(g, config)?;
    let mut odo = Odometer::new(g, variant);
    let mut optimum = u64::MAX;
    let mut solutions: Vec<Vec<u8>> = Vec::new();
    let mut overflowed = false;
    let mut visited = 0u64;
    loop {
        visited += 1;
        if odo.valid() && odo.total <= optimum {
            if odo.total < optimum {
                optimum = odo.total;
                solutions.clear();
                overflowed = false;
            }
            if solutions.len() < config.solution_cap {
                solutions.push(odo.weights.clone());
            } else {
                overflowed = true;
            }
        }
        if !odo.advance() {
            break;
        }
    }
    Ok(Enumeration {
        variant,
        optimum,
        proven: true,
        solutions: solutions
            .into_iter()
            .map(WeightFunction::new)
            .collect::<Result<_>>()?,
        complete: !overflowed,
        nodes_explored: visited,
    })
}
