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

//! The token permutation induced by a configuration and its cycles.

use crate::error::{Error, Result};
use crate::instance::{Configuration, Instance};

/// `pi[t]` is the token currently sitting on `t`'s destination.
pub fn permutation(inst: &Instance, conf: &Configuration) -> Vec<usize> {
    (0..inst.n())
        .map(|t| conf.token_at(inst.dest(t)))
        .collect()
}

/// Disjoint cycles of a permutation in canonical form: each cycle starts at
/// its smallest token and cycles are sorted by that token. Within a cycle,
/// `pi(c[i]) == c[i + 1]` (indices wrap). Fixed points are 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// Rebuilds the permutation the cycles came from.
    pub fn compose(&self) -> Vec<usize> {
        let n = self.cycles.iter().map(Vec::len).sum();
        let mut pi = vec![0; n];
        for cycle in &self.cycles {
            for (i, &t) in cycle.iter().enumerate() {
                pi[t] = cycle[(i + 1) % cycle.len()];
            }
        }
        pi
    }

    /// Cycles of length at least two.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles.iter().filter(|c| c.len() > 1)
    }
}

pub fn cycle_decomposition(pi: &[usize]) -> Result<CycleDecomposition> {
    let n = pi.len();
    let mut hit = vec![false; n];
    for &x in pi {
        if x >= n || hit[x] {
            return Err(Error::NotABijection(format!("{x} appears twice or is out of range")));
        }
        hit[x] = true;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    // Scanning in ascending order makes each cycle start at its minimum.
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut t = s;
        while !seen[t] {
            seen[t] = true;
            cycle.push(t);
            t = pi[t];
        }
        cycles.push(cycle);
    }
    Ok(CycleDecomposition { cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::*;
    use crate::instance::opt_lower_bound;
    use proptest::prelude::*;

    #[test]
    fn permutation_examples() {
        let id = identity(4);
        assert_eq!(permutation(&id, &Configuration::start(&id)), vec![0, 1, 2, 3]);
        let x = crossed_pair(1, 1);
        assert_eq!(permutation(&x, &Configuration::start(&x)), vec![1, 0]);
        // Reversal on 0-1-2: tokens at 0 and 2 trade places, 1 is fixed.
        let rev = crate::instance::Instance::from_assignments(
            path(3),
            &[0, 1, 2],
            &[2, 1, 0],
            &[1, 1, 1],
        )
        .unwrap();
        let pi = permutation(&rev, &Configuration::start(&rev));
        assert_eq!(pi, vec![2, 1, 0]);
        assert_eq!(
            cycle_decomposition(&pi).unwrap().cycles,
            vec![vec![0, 2], vec![1]]
        );
    }

    #[test]
    fn decomposition_examples() {
        let id = cycle_decomposition(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(id.cycles.len(), 5);
        assert!(id.cycles.iter().all(|c| c.len() == 1));
        assert_eq!(
            cycle_decomposition(&[1, 0, 2]).unwrap().cycles,
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(
            cycle_decomposition(&[1, 2, 0]).unwrap().cycles,
            vec![vec![0, 1, 2]]
        );
        assert!(matches!(
            cycle_decomposition(&[0, 0]),
            Err(Error::NotABijection(_))
        ));
    }

    #[test]
    fn identity_iff_all_start_on_dest() {
        let id = identity(3);
        let pi = permutation(&id, &Configuration::start(&id));
        assert!(pi.iter().enumerate().all(|(i, &p)| i == p));
        let x = three_path_cyclic();
        let pi = permutation(&x, &Configuration::start(&x));
        assert!(pi.iter().enumerate().any(|(i, &p)| i != p));
    }

    /// The per-cycle form of the lower bound: token `c[k]` must reach the
    /// start vertex of `c[k+1]`.
    fn cycle_form_bound(inst: &crate::instance::Instance) -> u64 {
        let pi = permutation(inst, &Configuration::start(inst));
        let dec = cycle_decomposition(&pi).unwrap();
        let g = inst.graph();
        dec.cycles
            .iter()
            .flat_map(|c| {
                (0..c.len()).map(move |k| {
                    let (a, b) = (c[k], c[(k + 1) % c.len()]);
                    inst.weight(a) * g.dist(inst.start(a), inst.start(b)) as u64
                })
            })
            .sum()
    }

    proptest! {
        #[test]
        fn compose_inverts_decomposition(perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle()) {
            let dec = cycle_decomposition(&perm).unwrap();
            prop_assert_eq!(dec.compose(), perm);
            let total: usize = dec.cycles.iter().map(Vec::len).sum();
            prop_assert_eq!(total, 9);
            for c in &dec.cycles {
                prop_assert_eq!(c[0], *c.iter().min().unwrap());
            }
            prop_assert!(dec.cycles.windows(2).all(|w| w[0][0] < w[1][0]));
        }

        #[test]
        fn lower_bound_forms_agree(seed in any::<u64>(), n in 1usize..12) {
            let inst = crate::generators::gen_random_tree(n, 1, 9, seed).unwrap();
            prop_assert_eq!(cycle_form_bound(&inst), opt_lower_bound(&inst).unwrap());
        }
    }
}
