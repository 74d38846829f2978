use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use serde::Serialize;
use sierpinski_italian::graph::{build_complete_with_capacity, build_path_with_capacity};
use sierpinski_italian::{
    build_sierpinski_with_capacity, closed_form_italian, closed_form_perfect, construct, solve,
    solve_branch_bound_with_incumbent, solve_path_dp, verify, Capacity, Engine, Family, Graph,
    Regime, SearchConfig, SierpinskiGraph, SolveResult, Variant, WeightDocument, WeightFunction,
};

use crate::{Command, Format};

/// Overrides the default vertex limit for every graph the CLI builds.
pub const CAPACITY_ENV: &str = "SIERPINSKI_MAX_VERTICES";

pub enum Verdict {
    Pass,
    Fail,
}

impl From<Verdict> for ExitCode {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => ExitCode::SUCCESS,
            Verdict::Fail => ExitCode::from(1),
        }
    }
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InstanceArgs {
    /// Graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// S(K_n,t), given as `N T`.
    #[arg(long, num_args = 2, value_names = ["N", "T"])]
    sierpinski: Option<Vec<u32>>,
    /// Path on M vertices.
    #[arg(long, value_name = "M")]
    path: Option<usize>,
    /// Complete graph on N vertices.
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
}

fn capacity() -> Result<Capacity> {
    match std::env::var(CAPACITY_ENV) {
        Ok(v) => {
            let limit = v
                .trim()
                .parse()
                .with_context(|| format!("{CAPACITY_ENV}={v:?} is not a vertex count"))?;
            Ok(Capacity::with_max_vertices(limit))
        }
        Err(_) => Ok(Capacity::default()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// One top-level field per line, nested values compact.
fn pretty<T: Serialize>(value: &T) -> Result<String> {
    let serde_json::Value::Object(map) = serde_json::to_value(value)? else {
        return Ok(serde_json::to_string(value)? + "\n");
    };
    let fields = map
        .iter()
        .map(|(k, v)| Ok(format!("  {}: {}", serde_json::to_string(k)?, serde_json::to_string(v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(format!("{{\n{}\n}}\n", fields.join(",\n")))
}

pub fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Gen { n, t, format, out } => cmd_gen(n, t, format, out.as_deref()),
        Command::Construct {
            n,
            t,
            variant,
            out,
            graph_out,
        } => cmd_construct(n, t, variant.into(), out.as_deref(), graph_out.as_deref()),
        Command::Verify {
            graph,
            weights,
            variant,
        } => cmd_verify(&graph, &weights, variant.into()),
        Command::Solve {
            instance,
            variant,
            engine,
            budget,
            exhaustive_limit,
            cutoff,
            seed_construction,
        } => {
            let mut config = SearchConfig::default();
            if let Some(b) = budget {
                config.node_budget = b;
            }
            if let Some(l) = exhaustive_limit {
                config.exhaustive_vertex_limit = l;
            }
            config.weight_cutoff = cutoff;
            cmd_solve(
                &instance,
                variant.into(),
                engine.map(Engine::from),
                &config,
                seed_construction,
            )
        }
        Command::Table {
            n,
            t,
            csv,
            budget,
            solve_max_vertices,
        } => cmd_table(&n, &t, csv, budget, solve_max_vertices),
        Command::Export { graph, weights, out } => cmd_export(&graph, weights.as_deref(), out.as_deref()),
    }
}

fn cmd_gen(n: u32, t: u32, format: Format, out: Option<&Path>) -> Result<Verdict> {
    let g = build_sierpinski_with_capacity(n, t, capacity()?)?;
    let text = match format {
        Format::Json => g.graph().to_canonical_json() + "\n",
        Format::Dot => g.graph().to_dot(None),
    };
    emit(out, &text)?;
    Ok(Verdict::Pass)
}

#[derive(Serialize)]
struct ConstructOutput {
    graph_hash: String,
    weights: Vec<u8>,
    n: u32,
    t: u32,
    regime: Regime,
    variant: Variant,
    total_weight: u64,
    closed_form: u128,
    valid: bool,
    verdict: String,
}

fn verdict_text(variant: Variant, valid: bool) -> String {
    match (variant, valid) {
        (Variant::Italian, true) => "valid IDF".into(),
        (Variant::Perfect, true) => "valid PID".into(),
        (Variant::Italian, false) => "invalid IDF".into(),
        (Variant::Perfect, false) => "invalid PID".into(),
    }
}

fn cmd_construct(
    n: u32,
    t: u32,
    variant: Variant,
    out: Option<&Path>,
    graph_out: Option<&Path>,
) -> Result<Verdict> {
    let g = build_sierpinski_with_capacity(n, t, capacity()?)?;
    let c = construct(&g)?;
    let report = verify(g.graph(), &c.weights, variant)?;
    let doc = WeightDocument::for_graph(g.graph(), &c.weights);
    let output = ConstructOutput {
        graph_hash: doc.graph_hash,
        weights: doc.weights,
        n,
        t,
        regime: c.regime,
        variant,
        total_weight: report.total_weight,
        closed_form: c.closed_form,
        valid: report.valid,
        verdict: verdict_text(variant, report.valid),
    };
    if let Some(path) = graph_out {
        emit(Some(path), &(g.graph().to_canonical_json() + "\n"))?;
    }
    emit(out, &pretty(&output)?)?;
    if out.is_some() {
        eprintln!(
            "S(K_{n},{t}) regime {}: weight {}, closed form {}, {}",
            c.regime, output.total_weight, output.closed_form, output.verdict
        );
    }
    Ok(report.valid.into())
}

fn cmd_verify(graph: &Path, weights: &Path, variant: Variant) -> Result<Verdict> {
    let g = Graph::from_json(&read(graph)?).with_context(|| format!("parsing {}", graph.display()))?;
    let doc: WeightDocument = serde_json::from_str(&read(weights)?)
        .with_context(|| format!("parsing {}", weights.display()))?;
    let f = doc.bind(&g)?;
    let report = verify(&g, &f, variant)?;
    print!("{}", pretty(&report)?);
    Ok(report.valid.into())
}

fn instance_graph(instance: &InstanceArgs) -> Result<(Graph, Option<(u32, u32)>)> {
    let cap = capacity()?;
    if let Some(path) = &instance.graph {
        let g = Graph::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
        let nt = match g.family() {
            Family::Sierpinski { n, t } => Some((n, t)),
            _ => None,
        };
        return Ok((g, nt));
    }
    if let Some(nt) = &instance.sierpinski {
        let (n, t) = (nt[0], nt[1]);
        return Ok((build_sierpinski_with_capacity(n, t, cap)?.into_graph(), Some((n, t))));
    }
    if let Some(m) = instance.path {
        return Ok((build_path_with_capacity(m, cap)?, None));
    }
    if let Some(n) = instance.complete {
        return Ok((build_complete_with_capacity(n, cap)?, None));
    }
    bail!("no instance given")
}

fn cmd_solve(
    instance: &InstanceArgs,
    variant: Variant,
    engine: Option<Engine>,
    config: &SearchConfig,
    seed_construction: bool,
) -> Result<Verdict> {
    let (g, nt) = instance_graph(instance)?;
    let result = if seed_construction {
        let (n, t) = nt.context("--seed-construction needs a Sierpinski instance")?;
        ensure!(
            matches!(engine, None | Some(Engine::BranchBound)),
            "--seed-construction only applies to branch-and-bound"
        );
        let sg = build_sierpinski_with_capacity(n, t, capacity()?)?;
        ensure!(sg.graph() == &g, "graph file does not match S(K_{n},{t})");
        let seed = construct(&sg)?.weights;
        solve_branch_bound_with_incumbent(&g, variant, config, &seed)?
    } else {
        solve(&g, variant, engine, config)?
    };
    print!("{}", pretty(&result)?);
    Ok(result.proven.into())
}

fn cmd_export(graph: &Path, weights: Option<&Path>, out: Option<&Path>) -> Result<Verdict> {
    let g = Graph::from_json(&read(graph)?).with_context(|| format!("parsing {}", graph.display()))?;
    let f = match weights {
        Some(path) => {
            let doc: WeightDocument = serde_json::from_str(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            Some(doc.bind(&g)?)
        }
        None => None,
    };
    emit(out, &g.to_dot(f.as_ref().map(|f| f.as_slice())))?;
    Ok(Verdict::Pass)
}

/// Parses `a..b` (inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<Vec<u32>> {
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse::<u32>()?, b.trim_start_matches('=').trim().parse::<u32>()?),
        None => {
            let v = text.trim().parse::<u32>()?;
            (v, v)
        }
    };
    ensure!(lo <= hi, "empty range {text:?}");
    Ok((lo..=hi).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub t: u32,
    pub vertices: usize,
    pub regime: Regime,
    pub closed_italian: u128,
    pub closed_perfect: u128,
    pub construction_weight: u64,
    pub construction_valid: bool,
    pub solver_italian: Option<SolveResult>,
    pub solver_perfect: Option<SolveResult>,
}

impl TableRow {
    pub fn agree_construction(&self) -> bool {
        self.construction_valid
            && self.closed_italian == self.closed_perfect
            && self.construction_weight as u128 == self.closed_italian
    }

    /// `None` when no solver run was proven.
    pub fn agree_solver(&self) -> Option<bool> {
        let proven: Vec<_> = [&self.solver_italian, &self.solver_perfect]
            .into_iter()
            .flatten()
            .filter(|r| r.proven)
            .collect();
        if proven.is_empty() {
            return None;
        }
        Some(proven.iter().all(|r| r.optimum as u128 == self.closed_italian))
    }
}

fn solve_for_table(
    sg: &SierpinskiGraph,
    seed: &WeightFunction,
    variant: Variant,
    budget: u64,
) -> Result<SolveResult> {
    let g = sg.graph();
    let config = SearchConfig {
        node_budget: budget,
        ..SearchConfig::default()
    };
    Ok(if sg.n() == 2 {
        solve_path_dp(g.order(), variant)?
    } else if g.order() <= config.exhaustive_vertex_limit.min(12) {
        solve(g, variant, Some(Engine::Exhaustive), &config)?
    } else {
        solve_branch_bound_with_incumbent(g, variant, &config, seed)?
    })
}

pub fn table_rows(ns: &[u32], ts: &[u32], budget: u64, solve_max_vertices: usize) -> Result<Vec<TableRow>> {
    let cap = capacity()?;
    let mut rows = Vec::new();
    for &n in ns {
        for &t in ts {
            let sg = build_sierpinski_with_capacity(n, t, cap)?;
            let c = construct(&sg)?;
            let report = verify(sg.graph(), &c.weights, Variant::Perfect)?;
            let (mut si, mut sp) = (None, None);
            if sg.graph().order() <= solve_max_vertices {
                si = Some(solve_for_table(&sg, &c.weights, Variant::Italian, budget)?);
                sp = Some(solve_for_table(&sg, &c.weights, Variant::Perfect, budget)?);
            }
            rows.push(TableRow {
                n,
                t,
                vertices: sg.graph().order(),
                regime: c.regime,
                closed_italian: closed_form_italian(n, t)?,
                closed_perfect: closed_form_perfect(n, t)?,
                construction_weight: report.total_weight,
                construction_valid: report.valid,
                solver_italian: si,
                solver_perfect: sp,
            });
        }
    }
    Ok(rows)
}

fn solver_cell(r: &Option<SolveResult>) -> String {
    match r {
        None => "-".into(),
        Some(r) if r.proven => r.optimum.to_string(),
        Some(r) => format!("<={}?", r.optimum),
    }
}

const HEADER: [&str; 11] = [
    "n",
    "t",
    "vertices",
    "regime",
    "closed_italian",
    "closed_perfect",
    "construction_weight",
    "construction_pid",
    "solver_italian",
    "solver_perfect",
    "agree",
];

fn row_cells(r: &TableRow) -> Vec<String> {
    let agree = match r.agree_solver() {
        Some(s) => (r.agree_construction() && s).to_string(),
        None => format!("{} (no solver)", r.agree_construction()),
    };
    vec![
        r.n.to_string(),
        r.t.to_string(),
        r.vertices.to_string(),
        r.regime.to_string(),
        r.closed_italian.to_string(),
        r.closed_perfect.to_string(),
        r.construction_weight.to_string(),
        r.construction_valid.to_string(),
        solver_cell(&r.solver_italian),
        solver_cell(&r.solver_perfect),
        agree,
    ]
}

pub fn render_table(rows: &[TableRow], csv: bool) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(row_cells).collect();
    let mut out = String::new();
    if csv {
        out.push_str(&HEADER.join(","));
        out.push('\n');
        for row in &cells {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        return out;
    }
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| cells.iter().map(|r| r[i].len()).chain([HEADER[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(HEADER.to_vec()));
    for row in &cells {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn cmd_table(n: &str, t: &str, csv: bool, budget: u64, solve_max_vertices: usize) -> Result<Verdict> {
    let ns = parse_range(n).with_context(|| format!("--n {n:?}"))?;
    let ts = parse_range(t).with_context(|| format!("--t {t:?}"))?;
    ensure!(ns[0] >= 2, "n starts at 2");
    ensure!(ts[0] >= 1, "t starts at 1");
    let rows = table_rows(&ns, &ts, budget, solve_max_vertices)?;
    print!("{}", render_table(&rows, csv));
    let ok = rows
        .iter()
        .all(|r| r.agree_construction() && r.agree_solver() != Some(false));
    Ok(ok.into())
}
