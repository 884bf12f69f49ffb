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

use thiserror::Error;

/// Everything that can go wrong while building, solving or checking an
/// instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not a tree")]
    NotATree,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("cost exceeds the 63-bit budget")]
    ArithmeticOverflow,
    #[error("swap {index} is not along an edge: ({u}, {v})")]
    InvalidSwapEdge { index: usize, u: usize, v: usize },
    #[error("sequence does not solve the instance")]
    InvalidSequence,
    #[error("no happy swap or shove available with unhappy tokens remaining (after {0} swaps)")]
    InternalStuck(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("search exceeded {0} expanded states")]
    StateSpaceExceeded(u64),
    #[error("optimal cost exceeds the ceiling {0}")]
    CostCeilingExceeded(u64),
    #[error("exact search supports at most {max} vertices, got {n}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("no solution exists")]
    Unsolvable,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("requested {requested} edges but only {max} fit")]
    TooManyEdges { requested: usize, max: usize },
    #[error("instance is not a tree-barrier instance")]
    NotABarrierInstance,
    #[error("baseline unavailable: {0}")]
    BaselineUnavailable(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
