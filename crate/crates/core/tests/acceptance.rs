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

//! Acceptance suite. Each test prints one line:
//! `criterion <k> <summary>: PASS|FAIL (<details>)`.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wts::analysis::{
    is_generalized_locally_optimal, is_locally_optimal, replay, replay_cost, straying_within,
    within_ratio, CostRatio,
};
use wts::bench::{graph_sweep, tree_sweep, Case};
use wts::cycle_solver::{per_cycle_cost_bound, solve_general_run, start_or_dest_verdict};
use wts::exact::{solve_exact, solve_exact_with, Heuristic, SearchLimits};
use wts::generators::{gen_random_graph, gen_random_tree, gen_tree_barrier, staged_barrier_solution, BarrierParams};
use wts::tree_solver::{audit_inevitable, solve_tree};
use wts::Instance;

const RATIOS: [u64; 3] = [1, 2, 10];

fn report(k: &str, summary: &str, pass: bool, details: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {k} {summary}: {verdict} ({details})");
}

#[derive(Debug, Default, Clone)]
struct Tally {
    instances: usize,
    over_ceiling: usize,
    worst: Option<(CostRatio, CostRatio)>,
    straying: usize,
    lo: usize,
    glo: usize,
    inevitable: usize,
    start_or_dest: usize,
    per_cycle: usize,
    cycles: usize,
    failures: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.over_ceiling += other.over_ceiling;
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(if a.0 >= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self.straying += other.straying;
        self.lo += other.lo;
        self.glo += other.glo;
        self.inevitable += other.inevitable;
        self.start_or_dest += other.start_or_dest;
        self.per_cycle += other.per_cycle;
        self.cycles += other.cycles;
        self.failures.extend(other.failures);
        self.failures.truncate(5);
        self
    }

    fn ratio(&mut self, alg: u64, opt: u64, ceiling: CostRatio) {
        if let Some(r) = CostRatio::new(alg, opt) {
            if self.worst.map_or(true, |(w, _)| r > w) {
                self.worst = Some((r, ceiling));
            }
        }
    }

    fn worst_text(&self) -> String {
        match self.worst {
            Some((r, c)) => format!("worst ratio {r} against its ceiling {c}"),
            None => "no ratios".into(),
        }
    }
}

fn exact_opt(inst: &Instance) -> u64 {
    solve_exact(inst, &SearchLimits::default())
        .expect("exact search within limits")
        .cost
}

fn tree_case(case: &Case) -> Tally {
    let inst = case.instance().unwrap();
    let mut t = Tally {
        instances: 1,
        ..Tally::default()
    };
    let seq = solve_tree(&inst).unwrap();
    let (cost, ok) = replay_cost(&inst, &seq).unwrap();
    let opt = exact_opt(&inst);
    let ceiling = CostRatio::tree_ceiling(inst.min_weight(), inst.max_weight());
    t.ratio(cost, opt, ceiling);
    if !ok || !within_ratio(cost, opt, ceiling) {
        t.over_ceiling += 1;
        t.failures.push(format!("{} {}: cost {cost} opt {opt}", case.id, case.params));
    }
    t.straying += !straying_within(&inst, &seq, 1).unwrap().holds as usize;
    t.lo += !is_locally_optimal(&inst, &seq).unwrap().holds as usize;
    t.glo += !is_generalized_locally_optimal(&inst, &seq).unwrap().holds as usize;
    t.inevitable += !audit_inevitable(&inst, &seq).unwrap().is_clean() as usize;
    t
}

fn graph_case(case: &Case) -> Tally {
    let inst = case.instance().unwrap();
    let mut t = Tally {
        instances: 1,
        ..Tally::default()
    };
    let run = solve_general_run(&inst).unwrap();
    let trace = replay(&inst, &run.sequence).unwrap();
    let opt = exact_opt(&inst);
    let ceiling = CostRatio::general_ceiling(inst.min_weight(), inst.max_weight());
    t.ratio(trace.total_cost, opt, ceiling);
    if !trace.final_ok || !within_ratio(trace.total_cost, opt, ceiling) {
        t.over_ceiling += 1;
        t.failures.push(format!(
            "{} {}: cost {} opt {opt}",
            case.id, case.params, trace.total_cost
        ));
    }
    t.glo += !is_generalized_locally_optimal(&inst, &run.sequence).unwrap().holds as usize;
    t.start_or_dest += !start_or_dest_verdict(&inst, &run).unwrap().holds as usize;
    for (plan, seg) in run.plans.iter().zip(&run.segments) {
        t.cycles += 1;
        let spent: u64 = trace.records[seg.clone()].iter().map(|r| r.cost).sum();
        if spent > per_cycle_cost_bound(plan, &inst) {
            t.per_cycle += 1;
        }
    }
    t
}

fn tree_results() -> &'static Tally {
    static CELL: OnceLock<Tally> = OnceLock::new();
    CELL.get_or_init(|| {
        let cases = tree_sweep(7, 10_000, &RATIOS, 1).unwrap();
        cases
            .par_iter()
            .map(tree_case)
            .reduce(Tally::default, Tally::merge)
    })
}

fn graph_results() -> &'static Tally {
    static CELL: OnceLock<Tally> = OnceLock::new();
    CELL.get_or_init(|| {
        let cases = graph_sweep(5, 5_000, &[6, 7, 8], &RATIOS, 2).unwrap();
        cases
            .par_iter()
            .map(graph_case)
            .reduce(Tally::default, Tally::merge)
    })
}

#[test]
fn criterion_1_tree_approximation() {
    let t = tree_results();
    let pass = t.over_ceiling == 0 && t.instances > 0;
    report(
        "1",
        "happy swap within 1 + W/w of OPT on all trees n <= 7",
        pass,
        format!(
            "{} instances, {} violations, {}; {:?}",
            t.instances,
            t.over_ceiling,
            t.worst_text(),
            t.failures
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_general_approximation() {
    let t = graph_results();
    let pass = t.over_ceiling == 0 && t.instances > 0;
    report(
        "2",
        "extended cycle within 2 + 2W/w of OPT on connected graphs",
        pass,
        format!(
            "{} instances, {} violations, {}; {:?}",
            t.instances,
            t.over_ceiling,
            t.worst_text(),
            t.failures
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_structural_lemmas() {
    let (t, g) = (tree_results(), graph_results());
    let pass = t.straying + t.lo + t.glo + t.inevitable + g.glo + g.start_or_dest == 0;
    report(
        "3",
        "structural properties of both algorithms",
        pass,
        format!(
            "trees: {} instances, straying>1 {}, lo {}, glo {}, inevitable flags {}; \
             graphs: {} instances, glo {}, start-or-dest {}",
            t.instances, t.straying, t.lo, t.glo, t.inevitable, g.instances, g.glo, g.start_or_dest
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_4_per_cycle_bound() {
    let g = graph_results();
    let pass = g.per_cycle == 0 && g.cycles > 0;
    report(
        "4",
        "per-cycle replay cost within its bound",
        pass,
        format!("{} cycles, {} over bound", g.cycles, g.per_cycle),
    );
    assert!(pass);
}

#[test]
fn criterion_5_barrier() {
    let p = BarrierParams::new(100, 10_000, 1, 10);
    let inst = gen_tree_barrier(&p).unwrap();
    assert_eq!(inst.n(), 20_100);

    let alg = solve_tree(&inst).unwrap();
    let (alg_cost, alg_ok) = replay_cost(&inst, &alg).unwrap();
    let staged = staged_barrier_solution(&inst).unwrap();
    let (staged_cost, staged_ok) = replay_cost(&inst, &staged).unwrap();
    let straying_ok = straying_within(&inst, &alg, 1).unwrap().holds;

    let closed_form = p.staged_closed_form();
    let lower = p.straying_lower_bound(1);
    let ratio = alg_cost as f64 / staged_cost as f64;
    let exact_match = staged_cost == closed_form;
    let above_lower = alg_cost >= lower;
    let ratio_ok = alg_cost as u128 * 100 >= staged_cost as u128 * 1016;
    let pass = alg_ok && staged_ok && straying_ok && exact_match && above_lower && ratio_ok;
    report(
        "5",
        "tree barrier l=100 N=10000 w=1 W=10",
        pass,
        format!(
            "staged cost {staged_cost} vs closed form {closed_form}: {}; \
             happy swap cost {alg_cost} >= {lower}: {}; \
             ratio {ratio:.6} >= 10.16: {}; happy swap straying <= 1: {}",
            if exact_match { "equal" } else { "NOT equal" },
            above_lower,
            ratio_ok,
            straying_ok
        ),
    );
    assert!(alg_ok && staged_ok && straying_ok && above_lower && ratio_ok);
    assert_eq!(staged_cost, closed_form, "staged cost differs from the closed form");
}

#[test]
fn criterion_6_oracle_self_consistency() {
    let limits = SearchLimits::default();
    let outcomes: Vec<(bool, String)> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(600 + i);
            let n = rng.gen_range(1..=7);
            let inst = if i % 2 == 0 || n < 3 {
                gen_random_tree(n, 1, 10, i).unwrap()
            } else {
                let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
                gen_random_graph(n, m, 1, 10, i).unwrap()
            };
            let guided = solve_exact_with(&inst, &limits, Heuristic::FullSum, |_| {}).unwrap();
            let blind = solve_exact_with(&inst, &limits, Heuristic::Zero, |_| {}).unwrap();
            let mut ok = guided.cost == blind.cost;
            for r in [&guided, &blind] {
                let (c, fin) = replay_cost(&inst, &r.sequence).unwrap();
                ok &= fin && c == r.cost;
            }
            (ok, format!("seed {i}: {} vs {}", guided.cost, blind.cost))
        })
        .collect();
    let bad: Vec<_> = outcomes.iter().filter(|o| !o.0).map(|o| o.1.clone()).take(5).collect();
    let pass = bad.is_empty();
    report(
        "6",
        "guided and uniform-cost exact search agree",
        pass,
        format!("{} instances, {} disagreements {bad:?}", outcomes.len(), bad.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_7_weight_obliviousness() {
    let mismatches: Vec<u64> = (0..500u64)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(700 + i);
            let n = rng.gen_range(1..=60);
            let inst = gen_random_tree(n, 1, 10, i).unwrap();
            let fresh: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
            let other = inst.reweighted(&fresh).unwrap();
            solve_tree(&inst).unwrap() != solve_tree(&other).unwrap()
        })
        .collect();
    let pass = mismatches.is_empty();
    report(
        "7",
        "happy swap ignores weights",
        pass,
        format!("500 trees, {} differing sequences {mismatches:?}", mismatches.len()),
    );
    assert!(pass);
}

fn cli_outputs(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let commands: Vec<Vec<String>> = [
        "gen --family random-tree --n 12 --wmin 1 --wmax 9 --seed 7 --out {rt}",
        "gen --family random-graph --n 9 --m 14 --wmin 1 --wmax 5 --seed 3 --out {rg}",
        "gen --family tree-barrier --l 4 --N 9 --w 1 --W 10 --out {tb}",
        "gen --family cycle-shift --weights 1,5,9,2 --out {cs}",
        "solve --algo happy --instance {rt} --out {rt_h}",
        "solve --algo cycle --instance {rg} --out {rg_c}",
        "solve --algo exact --instance {rg} --out {rg_e}",
        "solve --algo staged --instance {tb} --out {tb_s}",
        "solve --algo cycle --instance {cs} --out {cs_c}",
        "bench --family trees --n-max 5 --ratios 1,10 --algos happy,exact --csv {b1}",
        "bench --family graphs --n-max 4 --random-graphs 30 --algos cycle,exact --csv {b2}",
        "bench --family random-tree --n 40 --count 50 --wmin 1 --wmax 20 --algos happy,cycle --baseline lower-bound --csv {b3}",
        "bench --family tree-barrier --l 10 --N 100 --W 10 --algos happy --baseline staged --csv {b4}",
    ]
    .iter()
    .map(|line| {
        let mut s = line.to_string();
        for key in ["rt_h", "rg_c", "rg_e", "tb_s", "cs_c", "rt", "rg", "tb", "cs", "b1", "b2", "b3", "b4"] {
            s = s.replace(&format!("{{{key}}}"), &p(key));
        }
        std::iter::once("wts".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    })
    .collect();
    let mut captured = Vec::new();
    for args in &commands {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = wts::cli::run(args.clone(), &mut out, &mut err);
        assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
        captured.push((args[1..].join(" "), out));
    }
    let mut names: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        captured.push((name.clone(), std::fs::read(dir.join(&name)).unwrap()));
    }
    captured
}

#[test]
fn criterion_8_determinism() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = cli_outputs(a.path());
    let second = cli_outputs(b.path());
    let strip = |v: &[(String, Vec<u8>)], root: &std::path::Path| -> Vec<(String, Vec<u8>)> {
        let root = root.to_string_lossy().into_owned();
        v.iter()
            .map(|(k, bytes)| (k.replace(&root, "<dir>"), bytes.clone()))
            .collect()
    };
    let (first, second) = (strip(&first, a.path()), strip(&second, b.path()));
    let differing: Vec<_> = first
        .iter()
        .zip(&second)
        .filter(|(x, y)| x != y)
        .map(|(x, _)| x.0.clone())
        .collect();
    let pass = first.len() == second.len() && differing.is_empty();
    report(
        "8",
        "gen, solve and bench outputs are byte-identical across runs",
        pass,
        format!("{} outputs compared, differing {differing:?}", first.len()),
    );
    assert!(pass);
}
