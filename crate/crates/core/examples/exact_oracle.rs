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

//! Optimal solutions of small instances by A* over configurations, and how
//! much the heuristics shrink the search.

use wts::exact::{solve_exact_with, Heuristic, SearchLimits};
use wts::generators::{gen_cycle_shift, gen_random_graph};

fn main() -> wts::Result<()> {
    let limits = SearchLimits::default();
    let cases = [
        ("cycle shift n=6", gen_cycle_shift(6, &[1, 1, 1, 1, 1, 1])?),
        ("cycle shift weights 1..6", gen_cycle_shift(6, &[1, 2, 3, 4, 5, 6])?),
        ("random graph n=8", gen_random_graph(8, 10, 1, 9, 5)?),
    ];
    for (name, inst) in &cases {
        println!("{name}:");
        for h in [Heuristic::Zero, Heuristic::HalfSum, Heuristic::FullSum] {
            let r = solve_exact_with(inst, &limits, h, |_| {})?;
            println!(
                "  {h:?}: cost {} in {} swaps, {} states expanded",
                r.cost,
                r.sequence.len(),
                r.states_expanded
            );
        }
    }
    Ok(())
}
