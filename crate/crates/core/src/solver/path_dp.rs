use crate::domination::{Variant, WeightFunction};
use crate::error::{invalid, Result};
use crate::graph::build_path;

use super::{certify, Engine, SolveResult};

const INF: u64 = u64::MAX / 4;

/// Exact optimum on `P_m` by dynamic programming over the line.
///
/// `cost[i][a][b]` is the least weight needed on positions `i+1..m` when
/// position `i-1` carries `a` (0 past the left end) and position `i` carries
/// `b`, such that every vertex from `i` on is satisfied. Vertex `i` is
/// settled once its right neighbour is chosen, so the state only needs the
/// two most recent weights. The witness is read off left to right taking
/// the smallest feasible weight at each step, which gives the
/// lexicographically smallest optimum.
pub fn solve_path_dp(m: usize, variant: Variant) -> Result<SolveResult> {
    if m < 1 {
        return Err(invalid("path needs at least one vertex"));
    }
    let ok = |left: u8, me: u8, right: u8| me > 0 || variant.accepts(left as u32 + right as u32);
    let mut nodes = 0u64;

    let mut cost = vec![[[INF; 3]; 3]; m];
    for a in 0..3u8 {
        for b in 0..3u8 {
            nodes += 1;
            if ok(a, b, 0) {
                cost[m - 1][a as usize][b as usize] = 0;
            }
        }
    }
    for i in (0..m - 1).rev() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let mut best = INF;
                for c in 0..3u8 {
                    nodes += 1;
                    if ok(a, b, c) {
                        best = best.min(c as u64 + cost[i + 1][b as usize][c as usize]);
                    }
                }
                cost[i][a as usize][b as usize] = best;
            }
        }
    }

    let optimum = (0..3u8)
        .map(|b| b as u64 + cost[0][0][b as usize])
        .min()
        .expect("three choices");
    let mut weights = Vec::with_capacity(m);
    let mut prev = 0u8;
    let mut remaining = optimum;
    for i in 0..m {
        let b = (0..3u8)
            .find(|&b| {
                let fits = b as u64 + cost[i][prev as usize][b as usize] == remaining;
                // the choice must also settle vertex i-1
                let settles = i == 0 || ok(weights.get(i.wrapping_sub(2)).copied().unwrap_or(0), prev, b);
                fits && settles
            })
            .expect("an optimal continuation exists");
        remaining -= b as u64;
        weights.push(b);
        prev = b;
    }

    let result = SolveResult {
        variant,
        engine: Engine::PathDp,
        optimum,
        proven: true,
        nodes_explored: nodes,
        witness: WeightFunction::new(weights)?,
    };
    certify(&build_path(m)?, &result)?;
    Ok(result)
}
