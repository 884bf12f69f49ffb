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

//! Happy Swap on a random weighted tree, with the cost compared to the
//! weighted-distance lower bound.
//!
//! cargo run --release --example tree_solver -- 200 7

use wts::analysis::{replay, CostRatio};
use wts::generators::gen_random_tree;
use wts::tree_solver::solve_tree;

fn main() -> wts::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(200) as usize;
    let seed = args.next().unwrap_or(7);

    let inst = gen_random_tree(n, 1, 20, seed)?;
    let seq = solve_tree(&inst)?;
    let trace = replay(&inst, &seq)?;
    let lb = wts::opt_lower_bound(&inst)?;
    let ceiling = CostRatio::tree_ceiling(inst.min_weight(), inst.max_weight());

    println!("n={n} seed={seed} w={} W={}", inst.min_weight(), inst.max_weight());
    println!("swaps={} cost={} sorted={}", seq.len(), trace.total_cost, trace.final_ok);
    println!("lower bound={lb}");
    if let Some(r) = CostRatio::new(trace.total_cost, lb) {
        println!("cost / lower bound = {r} ({:.4}), guarantee {ceiling}", r.to_f64());
    }
    Ok(())
}
