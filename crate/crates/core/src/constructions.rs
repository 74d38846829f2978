//! Explicit minimum-weight dominating functions on `S(K_n, t)` and the
//! closed-form domination numbers they attain.
//!
//! | regime       | applies to      | value                 |
//! |--------------|-----------------|-----------------------|
//! | `Path`       | `n = 2`         | `2^(t-1) + 1`         |
//! | `Kn`         | `t = 1, n >= 3` | `2`                   |
//! | `Level2`     | `t = 2, n >= 3` | `2n - 1`              |
//! | `Level3Plus` | `t >= 3, n >= 3`| `n^(t-2) (2n - 2)`    |
//!
//! The Italian and perfect Italian numbers coincide in every regime.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domination::{verify_pid, WeightFunction};
use crate::error::{invalid, Error, Result};
use crate::graph::{build_sierpinski, SierpinskiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Kn,
    Level2,
    Level3Plus,
    Path,
}

impl Regime {
    pub fn of(n: u32, t: u32) -> Result<Self> {
        if n < 2 || t < 1 {
            return Err(invalid(format!("no regime for n = {n}, t = {t}")));
        }
        Ok(match (n, t) {
            (2, _) => Regime::Path,
            (_, 1) => Regime::Kn,
            (_, 2) => Regime::Level2,
            _ => Regime::Level3Plus,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Kn => "Kn",
            Regime::Level2 => "Level2",
            Regime::Level3Plus => "Level3Plus",
            Regime::Path => "Path",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Italian domination number of `S(K_n, t)`.
pub fn closed_form_italian(n: u32, t: u32) -> Result<u128> {
    let overflow = || invalid(format!("closed form for n = {n}, t = {t} overflows"));
    let n128 = n as u128;
    Ok(match Regime::of(n, t)? {
        // ceil((2^t + 1) / 2)
        Regime::Path => 1u128.checked_shl(t - 1).ok_or_else(overflow)? + 1,
        Regime::Kn => 2,
        Regime::Level2 => 2 * n128 - 1,
        Regime::Level3Plus => n128
            .checked_pow(t - 2)
            .and_then(|p| p.checked_mul(2 * n128 - 2))
            .ok_or_else(overflow)?,
    })
}

/// Perfect Italian domination number of `S(K_n, t)`; equal to
/// [`closed_form_italian`] in every regime.
pub fn closed_form_perfect(n: u32, t: u32) -> Result<u128> {
    closed_form_italian(n, t)
}

fn pred(x: u32, n: u32) -> u32 {
    if x == 1 {
        n
    } else {
        x - 1
    }
}

fn succ(x: u32, n: u32) -> u32 {
    if x == n {
        1
    } else {
        x + 1
    }
}

/// Weight of the word ending in `x y z` under the level-3 pattern.
fn level3_weight(x: u32, y: u32, z: u32, n: u32) -> u8 {
    let (lo, hi) = (pred(x, n), succ(x, n));
    let one = z == lo || (z == hi && y != lo && y != hi);
    one as u8
}

/// Weight 2 on the first vertex of `K_n` (weight 1 on `K_1`).
pub fn construct_kn(n: usize) -> Result<WeightFunction> {
    if n < 1 {
        return Err(invalid("K_n needs n >= 1"));
    }
    let mut f = WeightFunction::zeros(n);
    f.set(0, if n == 1 { 1 } else { 2 });
    Ok(f)
}

/// Weight 1 on every odd position of `P_m` (1-based), plus the last
/// vertex when `m` is even.
pub fn construct_path(m: usize) -> Result<WeightFunction> {
    if m < 1 {
        return Err(invalid("P_m needs m >= 1"));
    }
    let mut f = WeightFunction::zeros(m);
    for v in (0..m).step_by(2) {
        f.set(v, 1);
    }
    f.set(m - 1, 1);
    Ok(f)
}

/// On `S(K_n, 2)`: weight 1 on every `ii` and every `i1`.
pub fn construct_level2(n: u32) -> Result<WeightFunction> {
    if n < 3 {
        return Err(Error::OutOfRegime(format!("level-2 construction needs n >= 3, got {n}")));
    }
    let nu = n as usize;
    let mut f = WeightFunction::zeros(nu * nu);
    for i in 0..nu {
        f.set(i * nu + i, 1);
        f.set(i * nu, 1);
    }
    Ok(f)
}

/// On `S(K_n, t)` with `t >= 3`: the weight of a word depends on its last
/// three letters `x y z` only, and is 1 iff `z = x-1`, or `z = x+1` with
/// `y` not in `{x-1, x+1}` (indices cyclic on `1..=n`).
///
/// The result is checked against the perfect Italian condition before it is
/// returned.
pub fn construct_level3plus(n: u32, t: u32) -> Result<WeightFunction> {
    check_level3plus(n, t)?;
    let g = build_sierpinski(n, t)?;
    let f = level3plus_weights(n, t);
    self_check(&g, &f, "level-3 pattern")?;
    Ok(f)
}

fn check_level3plus(n: u32, t: u32) -> Result<()> {
    if n < 3 || t < 3 {
        return Err(Error::OutOfRegime(format!(
            "level-3 construction needs n >= 3 and t >= 3, got n = {n}, t = {t}"
        )));
    }
    Ok(())
}

fn level3plus_weights(n: u32, t: u32) -> WeightFunction {
    let nu = n as usize;
    let order = nu.pow(t);
    let weights = (0..order)
        .map(|r| {
            let z = (r % nu) as u32 + 1;
            let y = (r / nu % nu) as u32 + 1;
            let x = (r / (nu * nu) % nu) as u32 + 1;
            level3_weight(x, y, z, n)
        })
        .collect();
    WeightFunction::new(weights).expect("pattern weights are 0 or 1")
}

fn self_check(g: &SierpinskiGraph, f: &WeightFunction, what: &str) -> Result<()> {
    let report = verify_pid(g.graph(), f)?;
    if !report.valid {
        return Err(Error::Internal(format!(
            "{what} on S(K_{},{}) fails the perfect Italian check at {} vertices",
            g.n(),
            g.t(),
            report.violations.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub regime: Regime,
    pub weights: WeightFunction,
    pub closed_form: u128,
}

/// Dispatches on the regime of `g` and returns a verified perfect Italian
/// dominating function whose weight equals the closed form.
pub fn construct(g: &SierpinskiGraph) -> Result<Construction> {
    let (n, t) = (g.n(), g.t());
    let regime = Regime::of(n, t)?;
    let weights = match regime {
        // S(K_2, t) is the path on 2^t vertices, and rank order is line order.
        Regime::Path => construct_path(g.graph().order())?,
        Regime::Kn => construct_kn(n as usize)?,
        Regime::Level2 => construct_level2(n)?,
        Regime::Level3Plus => {
            check_level3plus(n, t)?;
            level3plus_weights(n, t)
        }
    };
    self_check(g, &weights, regime.as_str())?;
    let closed_form = closed_form_italian(n, t)?;
    if weights.total_weight() as u128 != closed_form {
        return Err(Error::Internal(format!(
            "{regime} construction has weight {}, closed form is {closed_form}",
            weights.total_weight()
        )));
    }
    Ok(Construction {
        regime,
        weights,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::verify_idf;
    use crate::graph::{build_complete, build_path};

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_italian(3, 2).unwrap(), 5);
        assert_eq!(closed_form_italian(4, 3).unwrap(), 24);
        assert_eq!(closed_form_italian(2, 4).unwrap(), 9);
        assert_eq!(closed_form_perfect(5, 2).unwrap(), 9);
        assert_eq!(closed_form_perfect(3, 3).unwrap(), 12);
        for n in 2..10 {
            assert_eq!(closed_form_perfect(n, 1).unwrap(), 2);
        }
        assert!(closed_form_italian(1, 3).is_err());
        assert!(closed_form_italian(3, 0).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(Regime::of(2, 1).unwrap(), Regime::Path);
        assert_eq!(Regime::of(2, 5).unwrap(), Regime::Path);
        assert_eq!(Regime::of(3, 1).unwrap(), Regime::Kn);
        assert_eq!(Regime::of(3, 2).unwrap(), Regime::Level2);
        assert_eq!(Regime::of(3, 3).unwrap(), Regime::Level3Plus);
        assert_eq!(Regime::of(7, 9).unwrap(), Regime::Level3Plus);
    }

    #[test]
    fn level2_on_three_letters() {
        let g = build_sierpinski(3, 2).unwrap();
        let f = construct_level2(3).unwrap();
        let ones: Vec<_> = (0..9).filter(|&v| f.get(v) == 1).map(|v| g.graph().label(v)).collect();
        assert_eq!(ones, ["11", "21", "22", "31", "33"]);
        assert_eq!(f.total_weight(), 5);
        assert_eq!(construct_level2(5).unwrap().total_weight(), 9);

        let g4 = build_sierpinski(4, 2).unwrap();
        assert!(verify_pid(g4.graph(), &construct_level2(4).unwrap()).unwrap().valid);
        assert!(matches!(construct_level2(2), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn level3plus_examples() {
        let f = construct_level3plus(3, 3).unwrap();
        assert_eq!(f.total_weight(), 12);
        assert_eq!(construct_level3plus(5, 3).unwrap().total_weight(), 40);
        assert_eq!(construct_level3plus(3, 4).unwrap().total_weight(), 36);
        assert!(matches!(construct_level3plus(2, 3), Err(Error::OutOfRegime(_))));
        assert!(matches!(construct_level3plus(3, 2), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn path_patterns() {
        assert_eq!(construct_path(1).unwrap().as_slice(), &[1]);
        assert_eq!(construct_path(4).unwrap().as_slice(), &[1, 0, 1, 1]);
        assert_eq!(construct_path(7).unwrap().as_slice(), &[1, 0, 1, 0, 1, 0, 1]);
        for m in 1..40 {
            let f = construct_path(m).unwrap();
            assert_eq!(f.total_weight() as usize, (m + 2) / 2);
            assert!(verify_pid(&build_path(m).unwrap(), &f).unwrap().valid);
        }
    }

    #[test]
    fn kn_patterns() {
        assert_eq!(construct_kn(3).unwrap().as_slice(), &[2, 0, 0]);
        assert_eq!(construct_kn(1).unwrap().as_slice(), &[1]);
        let f = construct_kn(6).unwrap();
        assert_eq!(f.total_weight(), 2);
        assert!(verify_pid(&build_complete(6).unwrap(), &f).unwrap().valid);
    }

    #[test]
    fn dispatcher_matches_closed_forms() {
        for n in 2..=5 {
            for t in 1..=4 {
                let g = build_sierpinski(n, t).unwrap();
                let c = construct(&g).unwrap();
                assert_eq!(c.regime, Regime::of(n, t).unwrap());
                assert_eq!(c.weights.total_weight() as u128, closed_form_italian(n, t).unwrap());
                assert_eq!(c.closed_form, closed_form_perfect(n, t).unwrap());
                assert!(verify_idf(g.graph(), &c.weights).unwrap().valid);
            }
        }
    }

    /// Every zero vertex sees exactly two weight-1 neighbours and no weight-2 one.
    #[test]
    fn level3plus_zero_vertices_see_two_ones() {
        for (n, t) in [(3, 3), (4, 3), (5, 3), (3, 4), (4, 4)] {
            let g = build_sierpinski(n, t).unwrap();
            let f = construct_level3plus(n, t).unwrap();
            for v in (0..g.graph().order()).filter(|&v| f.get(v) == 0) {
                let nbr: Vec<u8> = g.graph().neighbors(v).iter().map(|&u| f.get(u)).collect();
                assert_eq!(nbr.iter().filter(|&&w| w == 1).count(), 2, "vertex {v}");
                assert!(!nbr.contains(&2));
            }
        }
    }

    #[test]
    fn level3plus_block_structure() {
        for (n, t) in [(3u32, 3u32), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)] {
            let nu = n as usize;
            let g = build_sierpinski(n, t).unwrap();
            let f = construct_level3plus(n, t).unwrap();
            // words whose last three letters agree carry weight 0
            for r in 0..g.graph().order() {
                let w = g.word(r);
                let tail = &w.letters()[w.len() - 3..];
                if tail[0] == tail[1] && tail[1] == tail[2] {
                    assert_eq!(f.get(r), 0, "{}", g.graph().label(r));
                }
            }
            // each copy of S(K_n,2) inside each S(K_n,3) block weighs 2n-2
            let copy = nu * nu;
            for start in (0..g.graph().order()).step_by(copy) {
                let weight: u64 = (start..start + copy).map(|v| f.get(v) as u64).sum();
                assert_eq!(weight, 2 * n as u64 - 2);
            }
        }
    }
}
