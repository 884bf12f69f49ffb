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

//! Weighted token swapping.
//!
//! Every vertex of a connected graph holds one token; swapping the tokens
//! on an edge costs the sum of their weights. This crate provides Happy
//! Swap for trees (within `1 + W/w` of optimal), the Extended Cycle
//! algorithm for general graphs (within `2 + 2W/w`), an exact search
//! oracle for small instances, structural checkers, and instance
//! generators including the tree-barrier family.

pub mod analysis;
pub mod bench;
pub mod cli;
pub mod cycle_solver;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod io;
pub mod permutation;
pub mod tree;
pub mod tree_solver;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{opt_lower_bound, Configuration, Cost, Instance, SwapSequence, Token};
