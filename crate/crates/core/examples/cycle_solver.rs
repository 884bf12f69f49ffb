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

//! Extended Cycle on a random connected graph, cycle by cycle.

use wts::analysis::replay;
use wts::cycle_solver::{per_cycle_cost_bound, solve_general_run};
use wts::generators::gen_random_graph;

fn main() -> wts::Result<()> {
    let inst = gen_random_graph(30, 60, 1, 10, 42)?;
    let run = solve_general_run(&inst)?;
    let trace = replay(&inst, &run.sequence)?;

    for (plan, seg) in run.plans.iter().zip(&run.segments) {
        let spent: u64 = trace.records[seg.clone()].iter().map(|r| r.cost).sum();
        println!(
            "cycle of {:>2} tokens, carrier {:>2}: {:>3} swaps, cost {:>5} (bound {})",
            plan.cycle.len(),
            plan.carrier(),
            seg.len(),
            spent,
            per_cycle_cost_bound(plan, &inst)
        );
    }
    println!(
        "total cost {} over {} swaps, sorted={}, lower bound {}",
        trace.total_cost,
        run.sequence.len(),
        trace.final_ok,
        wts::opt_lower_bound(&inst)?
    );
    Ok(())
}
