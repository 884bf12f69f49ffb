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

//! Exhaustive small-tree sweep against the exact optimum, written as CSV to
//! stdout with a summary on stderr.

use wts::bench::{run_bench, summarize, tree_sweep, write_csv, Algo, BaselineKind, BenchOptions};

fn main() -> wts::Result<()> {
    let cases = tree_sweep(5, 0, &[1, 3], 1)?;
    let rows = run_bench(&cases, &[Algo::Happy, Algo::Cycle], BaselineKind::Exact, &BenchOptions::default())?;
    write_csv(std::io::stdout().lock(), &rows)?;

    let s = summarize(&rows);
    eprintln!("{} cases, {} rows, {} over ceiling", cases.len(), rows.len(), s.over_ceiling);
    for (algo, r) in s.max_ratio {
        eprintln!("  worst {}: {r} ({:.4})", algo.name(), r.to_f64());
    }
    Ok(())
}
