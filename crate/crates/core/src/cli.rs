// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end: `gen`, `solve`, `verify`, `check`, `bench`.
//!
//! Exit codes: 0 success (every requested property holds), 1 a property is
//! violated, 2 usage, input or structural error, 3 a resource limit hit.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    is_generalized_locally_optimal, is_locally_optimal, replay_cost, straying_within, CheckReport,
    CostRatio, PropertyVerdict,
};
use crate::bench::{self, Algo, BaselineKind, BenchOptions, Case};
use crate::error::{Error, Result};
use crate::exact::SearchLimits;
use crate::generators::{self, BarrierParams};
use crate::instance::{opt_lower_bound, Instance, SwapSequence};
use crate::io;
use crate::tree_solver::audit_inevitable;

#[derive(Debug, Parser)]
#[command(name = "wts", version, about = "Weighted token swapping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Solve an instance and write the swap sequence.
    Solve(SolveArgs),
    /// Check that a sequence solves an instance (default property: valid).
    Verify(CheckArgs),
    /// Check structural properties of a sequence.
    Check(CheckArgs),
    /// Run an algorithm sweep and write CSV rows.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    TreeBarrier,
    CycleShift,
    RandomTree,
    RandomGraph,
}

#[derive(Debug, Args)]
pub struct FamilyParams {
    /// Path length of the tree barrier.
    #[arg(long = "l")]
    pub l: Option<usize>,
    /// Leaves per star of the tree barrier.
    #[arg(long = "N")]
    pub leaves: Option<usize>,
    /// Light weight of the tree barrier.
    #[arg(long = "w", default_value_t = 1)]
    pub w: u64,
    /// Heavy weight of the tree barrier.
    #[arg(long = "W", default_value_t = 1)]
    pub big_w: u64,
    /// Leaf pairing of the tree barrier: conveyor or exchange.
    #[arg(long, default_value = "conveyor")]
    pub pairing: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub wmin: u64,
    #[arg(long, default_value_t = 1)]
    pub wmax: u64,
    /// Comma-separated token weights (cycle-shift).
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// State budget for the exact search.
    #[arg(long, default_value_t = SearchLimits::default().max_states)]
    pub max_states: u64,
    /// Cost ceiling for the exact search.
    #[arg(long)]
    pub max_cost: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_states: self.max_states,
            max_cost: self.max_cost,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub sequence: PathBuf,
    /// Any of valid, straying, lo, glo, inevitable.
    #[arg(long, value_delimiter = ',')]
    pub props: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// Every labeled tree up to `--n-max` vertices.
    Trees,
    /// Every connected labeled graph up to `--n-max` vertices plus random ones.
    Graphs,
    RandomTree,
    RandomGraph,
    TreeBarrier,
    CycleShift,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Sweep,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Random permutations per tree size above five (trees).
    #[arg(long, default_value_t = 10_000)]
    pub random_perms: usize,
    /// Random connected graphs added to the exhaustive ones (graphs).
    #[arg(long, default_value_t = 0)]
    pub random_graphs: usize,
    /// Sizes the random graphs cycle through.
    #[arg(long, value_delimiter = ',', default_value = "6,7,8")]
    pub random_sizes: Vec<usize>,
    /// W/w ratios of the weight patterns (trees and graphs).
    #[arg(long, value_delimiter = ',', default_value = "1,2,10")]
    pub ratios: Vec<u64>,
    /// Instances to draw (random families).
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_delimiter = ',', default_value = "happy,exact")]
    pub algos: Vec<String>,
    #[arg(long, default_value = "exact")]
    pub baseline: String,
    #[arg(long)]
    pub csv: PathBuf,
    /// Record wall-clock milliseconds (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Verify(a) => cmd_check(&a, &["valid"], out),
        Command::Check(a) => cmd_check(&a, &["valid", "straying", "lo", "glo", "inevitable"], out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::StateSpaceExceeded(_)
        | Error::CostCeilingExceeded(_)
        | Error::InstanceTooLarge { .. } => 3,
        _ => 2,
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParams(format!("missing --{flag}")))
}

fn barrier_params(p: &FamilyParams) -> Result<BarrierParams> {
    let pairing = p.pairing.parse()?;
    Ok(BarrierParams::new(need(p.l, "l")?, need(p.leaves, "N")?, p.w, p.big_w).with_pairing(pairing))
}

fn generate(family: Family, p: &FamilyParams) -> Result<Instance> {
    match family {
        Family::TreeBarrier => generators::gen_tree_barrier(&barrier_params(p)?),
        Family::CycleShift => {
            let from_weights = (!p.weights.is_empty()).then_some(p.weights.len());
            let n = need(p.n.or(from_weights), "n")?;
            let weights = if p.weights.is_empty() {
                vec![1; n]
            } else {
                p.weights.clone()
            };
            generators::gen_cycle_shift(n, &weights)
        }
        Family::RandomTree => generators::gen_random_tree(need(p.n, "n")?, p.wmin, p.wmax, p.seed),
        Family::RandomGraph => {
            generators::gen_random_graph(need(p.n, "n")?, need(p.m, "m")?, p.wmin, p.wmax, p.seed)
        }
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = generate(a.family, &a.params)?;
    io::write_text(&a.out, &io::instance_to_json(&inst))?;
    writeln!(
        out,
        "n={} m={} w={} W={}",
        inst.n(),
        inst.graph().m(),
        inst.min_weight(),
        inst.max_weight()
    )?;
    Ok(0)
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let algo: Algo = a.algo.parse()?;
    let inst = io::read_instance(&a.instance)?;
    let seq = algo.run(&inst, &a.limits.limits())?;
    let (cost, ok) = replay_cost(&inst, &seq)?;
    if !ok {
        return Err(Error::InternalInvariantViolation(format!(
            "{algo} produced a sequence that does not solve the instance"
        )));
    }
    io::write_text(&a.out, &io::sequence_to_json(&seq))?;
    let lb = opt_lower_bound(&inst)?;
    write!(out, "cost={cost} swaps={} lower_bound={lb}", seq.len())?;
    if let Some(r) = CostRatio::new(cost, lb) {
        write!(out, " ratio={r} ({:.6})", r.to_f64())?;
    }
    writeln!(out)?;
    Ok(0)
}

#[derive(Serialize)]
struct CheckOutput {
    cost: Option<u64>,
    final_ok: bool,
    reports: Vec<CheckReport>,
}

fn check_property(inst: &Instance, seq: &SwapSequence, prop: &str) -> Result<PropertyVerdict> {
    match prop {
        "valid" => {
            let (_, ok) = replay_cost(inst, seq)?;
            Ok(if ok {
                PropertyVerdict::holds()
            } else {
                PropertyVerdict::violated(seq.len(), "final configuration leaves tokens unhappy")
            })
        }
        "straying" => straying_within(inst, seq, 1),
        "lo" => is_locally_optimal(inst, seq),
        "glo" => is_generalized_locally_optimal(inst, seq),
        "inevitable" => match audit_inevitable(inst, seq) {
            Ok(audit) => Ok(match audit.flags().next() {
                None => PropertyVerdict::holds(),
                Some(s) => PropertyVerdict::violated(
                    s.index,
                    format!("swap {} has {} inevitable moves", s.index, s.inevitable_count()),
                ),
            }),
            Err(Error::InvalidSequence) => Ok(PropertyVerdict::violated(
                seq.len(),
                "sequence does not reach the goal",
            )),
            Err(e) => Err(e),
        },
        other => Err(Error::InvalidParams(format!("unknown property {other:?}"))),
    }
}

fn cmd_check(a: &CheckArgs, defaults: &[&str], out: &mut dyn Write) -> Result<i32> {
    let inst = io::read_instance(&a.instance)?;
    let seq = io::read_sequence(&a.sequence)?;
    let props: Vec<String> = if a.props.is_empty() {
        let tree = inst.graph().is_tree();
        defaults
            .iter()
            .filter(|p| tree || !matches!(**p, "straying" | "inevitable"))
            .map(|p| p.to_string())
            .collect()
    } else {
        a.props.clone()
    };
    let (cost, final_ok, bad_edge) = match replay_cost(&inst, &seq) {
        Ok((c, ok)) => (Some(c), ok, None),
        Err(Error::InvalidSwapEdge { index, u, v }) => (None, false, Some((index, u, v))),
        Err(e) => return Err(e),
    };
    let mut reports = Vec::with_capacity(props.len());
    for prop in &props {
        let verdict = match bad_edge {
            Some((index, u, v)) => {
                if !matches!(prop.as_str(), "valid" | "straying" | "lo" | "glo" | "inevitable") {
                    return Err(Error::InvalidParams(format!("unknown property {prop:?}")));
                }
                PropertyVerdict::violated(index, format!("({u}, {v}) is not an edge"))
            }
            None => check_property(&inst, &seq, prop)?,
        };
        reports.push(CheckReport::new(prop, verdict));
    }
    let all_hold = reports.iter().all(|r| r.holds);
    let body = CheckOutput {
        cost,
        final_ok,
        reports,
    };
    writeln!(out, "{}", serde_json::to_string(&body)?)?;
    Ok(if all_hold { 0 } else { 1 })
}

fn bench_cases(a: &BenchArgs) -> Result<Vec<Case>> {
    let p = &a.params;
    match a.family {
        Sweep::Trees => bench::tree_sweep(a.n_max, a.random_perms, &a.ratios, p.seed),
        Sweep::Graphs => {
            bench::graph_sweep(a.n_max, a.random_graphs, &a.random_sizes, &a.ratios, p.seed)
        }
        Sweep::RandomTree => bench::random_tree_cases(need(p.n, "n")?, a.count, p.wmin, p.wmax, p.seed),
        Sweep::RandomGraph => bench::random_graph_cases(
            need(p.n, "n")?,
            need(p.m, "m")?,
            a.count,
            p.wmin,
            p.wmax,
            p.seed,
        ),
        Sweep::TreeBarrier => {
            let bp = barrier_params(p)?;
            let inst = generators::gen_tree_barrier(&bp)?;
            let params = format!(
                "l={};N={};w={};W={};pairing={}",
                bp.l,
                bp.leaves,
                bp.w,
                bp.big_w,
                bp.pairing.name()
            );
            Ok(vec![Case::from_instance("tree-barrier-0".into(), "tree-barrier", params, &inst)])
        }
        Sweep::CycleShift => {
            let inst = generate(Family::CycleShift, p)?;
            let params = format!("n={}", inst.n());
            Ok(vec![Case::from_instance("cycle-shift-0".into(), "cycle-shift", params, &inst)])
        }
    }
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let algos = a
        .algos
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Algo>>>()?;
    let baseline: BaselineKind = a.baseline.parse()?;
    let cases = bench_cases(a)?;
    let opts = BenchOptions {
        limits: a.limits.limits(),
        timing: a.timing,
    };
    let rows = bench::run_bench(&cases, &algos, baseline, &opts)?;
    let file = std::fs::File::create(&a.csv)?;
    bench::write_csv(std::io::BufWriter::new(file), &rows)?;
    let summary = bench::summarize(&rows);
    write!(out, "instances={} rows={}", cases.len(), rows.len())?;
    for (algo, r) in &summary.max_ratio {
        write!(out, " max_ratio[{algo}]={r} ({:.6})", r.to_f64())?;
    }
    writeln!(
        out,
        " over_ceiling={} unavailable={}",
        summary.over_ceiling, summary.unavailable
    )?;
    Ok(if summary.over_ceiling == 0 { 0 } else { 1 })
}
