//! Exact Italian and perfect Italian domination numbers for small graphs.
//!
//! Three engines, kept independent so they can check one another:
//!
//! * [`solve_exhaustive`] walks all `3^|V|` assignments.
//! * [`solve_path_dp`] is a left-to-right dynamic program on `P_m`.
//! * [`solve_branch_bound`] is a depth-first search with an admissible
//!   lower bound, for instances beyond brute force.
//!
//! Every engine breaks ties between optimal functions by taking the
//! lexicographically smallest weight vector in canonical vertex order, so
//! witnesses agree across engines.

mod branch_bound;
mod exhaustive;
mod path_dp;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use branch_bound::{solve_branch_bound, solve_branch_bound_with_incumbent, VertexOrder};
pub use exhaustive::solve_exhaustive;
pub use path_dp::solve_path_dp;

use crate::domination::{verify, Variant, WeightFunction};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Exhaustive,
    PathDp,
    BranchBound,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Exhaustive => "exhaustive",
            Engine::PathDp => "path-dp",
            Engine::BranchBound => "branch-bound",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub variant: Variant,
    pub engine: Engine,
    pub optimum: u64,
    /// `false` when the node budget ran out (or a cutoff excluded every
    /// function) before optimality was certified; `optimum` is then only
    /// the weight of the best function found.
    pub proven: bool,
    pub nodes_explored: u64,
    pub witness: WeightFunction,
}

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;
pub const DEFAULT_SOLUTION_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest vertex count the exhaustive engine accepts.
    pub exhaustive_vertex_limit: usize,
    /// Branch-and-bound node budget.
    pub node_budget: u64,
    /// Only functions of weight at most this are searched for.
    pub weight_cutoff: Option<u64>,
    /// Stop enumerating optima after this many.
    pub solution_cap: usize,
    pub vertex_order: VertexOrder,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            exhaustive_vertex_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            node_budget: DEFAULT_NODE_BUDGET,
            weight_cutoff: None,
            solution_cap: DEFAULT_SOLUTION_CAP,
            vertex_order: VertexOrder::Canonical,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.exhaustive_vertex_limit == 0 || self.node_budget == 0 || self.solution_cap == 0 {
            return Err(Error::InvalidInput("search limits must be positive".into()));
        }
        if self.weight_cutoff == Some(0) {
            return Err(Error::InvalidInput("weight cutoff must be positive".into()));
        }
        Ok(())
    }
}

/// Picks an engine when none is forced: the path DP for path graphs,
/// brute force up to the exhaustive limit, branch-and-bound beyond.
pub fn solve(g: &Graph, variant: Variant, engine: Option<Engine>, config: &SearchConfig) -> Result<SolveResult> {
    let engine = engine.unwrap_or_else(|| default_engine(g, config));
    match engine {
        Engine::Exhaustive => solve_exhaustive(g, variant, config),
        Engine::BranchBound => solve_branch_bound(g, variant, config),
        Engine::PathDp => {
            if !is_path_in_rank_order(g) {
                return Err(Error::InvalidInput(
                    "the path engine needs a path whose vertices are in line order".into(),
                ));
            }
            solve_path_dp(g.order(), variant)
        }
    }
}

fn default_engine(g: &Graph, config: &SearchConfig) -> Engine {
    if is_path_in_rank_order(g) && g.order() > config.exhaustive_vertex_limit {
        Engine::PathDp
    } else if g.order() <= config.exhaustive_vertex_limit {
        Engine::Exhaustive
    } else {
        Engine::BranchBound
    }
}

/// True for `P_m` with edges exactly `{i, i+1}`; this covers `S(K_2, t)`.
pub fn is_path_in_rank_order(g: &Graph) -> bool {
    let m = g.order();
    m >= 1
        && g.edge_count() == m - 1
        && (1..m).all(|i| g.has_edge(i - 1, i))
}

/// Every returned witness goes through the verifier; a failure here is a
/// solver bug.
pub(crate) fn certify(g: &Graph, result: &SolveResult) -> Result<()> {
    let report = verify(g, &result.witness, result.variant)?;
    if !report.valid || report.total_weight != result.optimum {
        return Err(Error::Internal(format!(
            "{} engine returned an invalid {} witness (weight {}, optimum {})",
            result.engine, result.variant, report.total_weight, result.optimum
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub variant: Variant,
    pub optimum: u64,
    /// Whether `optimum` is certified.
    pub proven: bool,
    /// All optimal functions found, in lexicographic order.
    pub solutions: Vec<WeightFunction>,
    /// `true` only if `solutions` is every optimal function.
    pub complete: bool,
    pub nodes_explored: u64,
}

/// Lists the minimum-weight functions of `g`, up to `config.solution_cap`.
///
/// Brute force is used within the exhaustive limit; otherwise the optimum
/// is first proven by branch-and-bound and then all functions of that
/// weight are enumerated under the same node budget. Running out of budget
/// or hitting the cap yields a partial list with `complete == false`.
pub fn enumerate_optima(g: &Graph, variant: Variant, config: &SearchConfig) -> Result<Enumeration> {
    config.validate()?;
    if g.order() <= config.exhaustive_vertex_limit {
        return exhaustive::enumerate(g, variant, config);
    }
    let best = solve_branch_bound(g, variant, config)?;
    if !best.proven {
        return Ok(Enumeration {
            variant,
            optimum: best.optimum,
            proven: false,
            solutions: vec![best.witness],
            complete: false,
            nodes_explored: best.nodes_explored,
        });
    }
    let mut listed = branch_bound::enumerate(g, variant, best.optimum, config)?;
    listed.nodes_explored += best.nodes_explored;
    Ok(listed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_path, build_sierpinski};

    #[test]
    fn default_engine_choice() {
        let config = SearchConfig::default();
        assert_eq!(default_engine(&build_path(40).unwrap(), &config), Engine::PathDp);
        assert_eq!(default_engine(&build_path(5).unwrap(), &config), Engine::Exhaustive);
        let s33 = build_sierpinski(3, 3).unwrap();
        assert_eq!(default_engine(s33.graph(), &config), Engine::BranchBound);
        let s26 = build_sierpinski(2, 6).unwrap();
        assert_eq!(default_engine(s26.graph(), &config), Engine::PathDp);
    }

    #[test]
    fn path_engine_refuses_non_paths() {
        let k3 = build_complete(3).unwrap();
        assert!(solve(&k3, Variant::Italian, Some(Engine::PathDp), &SearchConfig::default()).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = SearchConfig {
            node_budget: 0,
            ..SearchConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn enumerate_small_cases() {
        let config = SearchConfig::default();
        let k3 = build_complete(3).unwrap();
        let e = enumerate_optima(&k3, Variant::Italian, &config).unwrap();
        let got: Vec<&[u8]> = e.solutions.iter().map(|f| f.as_slice()).collect();
        assert_eq!(e.optimum, 2);
        assert!(e.complete);
        assert_eq!(
            got,
            [&[0, 0, 2][..], &[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[1, 1, 0], &[2, 0, 0]]
        );

        let p2 = build_path(2).unwrap();
        let e = enumerate_optima(&p2, Variant::Italian, &config).unwrap();
        let got: Vec<&[u8]> = e.solutions.iter().map(|f| f.as_slice()).collect();
        assert_eq!(got, [&[0, 2][..], &[1, 1], &[2, 0]]);

        let p1 = build_path(1).unwrap();
        let e = enumerate_optima(&p1, Variant::Italian, &config).unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert_eq!(e.solutions[0].as_slice(), &[1]);
    }

    #[test]
    fn enumerate_respects_the_cap() {
        let config = SearchConfig {
            solution_cap: 2,
            ..SearchConfig::default()
        };
        let k3 = build_complete(3).unwrap();
        let e = enumerate_optima(&k3, Variant::Italian, &config).unwrap();
        assert_eq!(e.solutions.len(), 2);
        assert!(!e.complete);
    }

    #[test]
    fn enumerate_via_branch_and_bound_matches_brute_force() {
        let s = build_sierpinski(3, 2).unwrap();
        for variant in [Variant::Italian, Variant::Perfect] {
            let brute = enumerate_optima(s.graph(), variant, &SearchConfig::default()).unwrap();
            let config = SearchConfig {
                exhaustive_vertex_limit: 4,
                ..SearchConfig::default()
            };
            let bb = enumerate_optima(s.graph(), variant, &config).unwrap();
            assert!(brute.complete && bb.complete);
            assert_eq!(brute.optimum, bb.optimum);
            assert_eq!(brute.solutions, bb.solutions);
        }
    }
}
