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

//! JSON formats for instances and swap sequences.
//!
//! ```json
//! {"n": 3, "edges": [[0, 1], [1, 2]],
//!  "tokens": [{"id": 0, "weight": 1, "start": 0, "dest": 2}, ...]}
//! {"swaps": [[0, 1], [1, 2]]}
//! ```

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, SwapSequence, Token};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TokenRecord {
    id: usize,
    weight: u64,
    start: usize,
    dest: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceRecord {
    n: usize,
    edges: Vec<(usize, usize)>,
    tokens: Vec<TokenRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceRecord {
    swaps: Vec<(usize, usize)>,
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let rec: InstanceRecord = serde_json::from_str(text)?;
    let graph = Arc::new(Graph::new(rec.n, &rec.edges)?);
    let tokens = rec
        .tokens
        .into_iter()
        .map(|t| Token {
            id: t.id,
            weight: t.weight,
            start: t.start,
            dest: t.dest,
        })
        .collect();
    Instance::new(graph, tokens)
}

/// Tokens in id order, edges in canonical order.
pub fn instance_to_json(inst: &Instance) -> String {
    let rec = InstanceRecord {
        n: inst.n(),
        edges: inst.graph().edges().to_vec(),
        tokens: inst
            .tokens()
            .iter()
            .map(|t| TokenRecord {
                id: t.id,
                weight: t.weight,
                start: t.start,
                dest: t.dest,
            })
            .collect(),
    };
    serde_json::to_string(&rec).expect("plain records serialize")
}

pub fn sequence_from_json(text: &str) -> Result<SwapSequence> {
    let rec: SequenceRecord = serde_json::from_str(text)?;
    Ok(SwapSequence::from(rec.swaps))
}

pub fn sequence_to_json(seq: &SwapSequence) -> String {
    serde_json::to_string(&SequenceRecord {
        swaps: seq.swaps.clone(),
    })
    .expect("plain records serialize")
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&std::fs::read_to_string(path)?)
}

pub fn read_sequence(path: &Path) -> Result<SwapSequence> {
    sequence_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut body = text.to_owned();
    body.push('\n');
    std::fs::write(path, body).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures;

    #[test]
    fn instance_round_trip() {
        let inst = fixtures::three_path_cyclic();
        let text = instance_to_json(&inst);
        assert!(text.starts_with(r#"{"n":3,"edges":[[0,1],[1,2]],"tokens":[{"id":0,"weight":1,"start":0,"dest":2}"#));
        let back = instance_from_json(&text).unwrap();
        assert_eq!(back.tokens(), inst.tokens());
        assert_eq!(instance_to_json(&back), text);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            instance_from_json(r#"{"n":1,"edges":[],"tokens":[],"extra":1}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(instance_from_json("{"), Err(Error::Format(_))));
        assert!(matches!(
            instance_from_json(r#"{"n":2,"edges":[[0,0]],"tokens":[]}"#),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            sequence_from_json(r#"{"swaps":[[0,1]],"cost":3}"#),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn sequence_round_trip() {
        let seq = SwapSequence::from(vec![(1, 0), (2, 1)]);
        let text = sequence_to_json(&seq);
        assert_eq!(text, r#"{"swaps":[[1,0],[2,1]]}"#);
        assert_eq!(sequence_from_json(&text).unwrap(), seq);
    }
}
