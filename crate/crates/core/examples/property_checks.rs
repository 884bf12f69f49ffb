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

//! Structural checks on solver output: local optimality, straying and the
//! inevitable-move audit, first on a clean run and then on a doctored one.

use wts::analysis::{is_generalized_locally_optimal, is_locally_optimal, straying_value};
use wts::generators::gen_random_tree;
use wts::tree_solver::{audit_inevitable, solve_tree};

fn main() -> wts::Result<()> {
    let inst = gen_random_tree(25, 1, 6, 11)?;
    let seq = solve_tree(&inst)?;
    let show = |label: &str, seq: &wts::SwapSequence| -> wts::Result<()> {
        println!("{label}: {} swaps", seq.len());
        println!("  locally optimal:             {}", is_locally_optimal(&inst, seq)?.holds);
        println!("  generalized locally optimal: {}", is_generalized_locally_optimal(&inst, seq)?.holds);
        println!("  straying:                    {}", straying_value(&inst, seq)?);
        let audit = audit_inevitable(&inst, seq)?;
        for flag in audit.flags() {
            println!("  audit flags swap {}", flag.index);
        }
        Ok(())
    };
    show("happy swap", &seq)?;

    // Once sorted, swap the last pair apart and back again.
    let mut doctored = seq.clone();
    if let Some(&(u, v)) = seq.swaps.last() {
        doctored.swaps.push((u, v));
        doctored.swaps.push((u, v));
    }
    show("with a wasted round trip", &doctored)?;
    Ok(())
}
