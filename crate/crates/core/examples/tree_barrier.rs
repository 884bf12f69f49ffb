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

//! The two-star barrier tree where Happy Swap pays roughly W/w times more
//! than a staged schedule.
//!
//! cargo run --release --example tree_barrier -- 100 10000 10

use wts::analysis::replay;
use wts::generators::{gen_tree_barrier, staged_barrier_solution, BarrierParams, Pairing};
use wts::tree_solver::solve_tree;

fn main() -> wts::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let l = args.next().unwrap_or(20) as usize;
    let leaves = args.next().unwrap_or(400) as usize;
    let big_w = args.next().unwrap_or(10);

    for pairing in [Pairing::Conveyor, Pairing::Exchange] {
        let p = BarrierParams::new(l, leaves, 1, big_w).with_pairing(pairing);
        let inst = gen_tree_barrier(&p)?;
        let happy = replay(&inst, &solve_tree(&inst)?)?;
        let staged = replay(&inst, &staged_barrier_solution(&inst)?)?;
        println!("{} pairing, n={}:", pairing.name(), p.n());
        println!("  happy swap      {:>12}", happy.total_cost);
        println!("  staged          {:>12}", staged.total_cost);
        println!("  staged formula  {:>12}", p.staged_closed_form());
        println!("  straying floor  {:>12}", p.straying_lower_bound(1));
        println!("  ratio           {:>12.4}", happy.total_cost as f64 / staged.total_cost as f64);
    }
    Ok(())
}
