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

//! Extended Cycle algorithm for arbitrary connected graphs.
//!
//! Each cycle of the start permutation is resolved on its own. The lightest
//! token of the cycle (the carrier) goes around it: every other token walks
//! its leg to its destination, shifting the leg's interior back by one and
//! finally swapping with the carrier, and the carrier then walks the leg
//! backwards, restoring the interior.

use std::ops::Range;

use crate::analysis::PropertyVerdict;
use crate::error::{Error, Result};
use crate::instance::{Configuration, Cost, Instance, SwapSequence};
use crate::permutation::{cycle_decomposition, permutation};

/// One non-trivial cycle, rotated so the carrier is last.
///
/// With `cycle = [t_1, .., t_l]`, `legs[k - 1]` is the fixed shortest path
/// from `start(t_k)` to `start(t_{k+1})`, which is `dest(t_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePlan {
    pub cycle: Vec<usize>,
    pub legs: Vec<Vec<usize>>,
}

impl CyclePlan {
    pub fn carrier(&self) -> usize {
        *self.cycle.last().expect("non-empty cycle")
    }

    /// Length of the leg leaving `cycle[k - 1]`.
    pub fn leg_len(&self, k: usize) -> usize {
        self.legs[k - 1].len() - 1
    }
}

/// Plans every cycle of length at least two, in ascending order of the
/// cycle's smallest token.
pub fn plan_cycles(inst: &Instance) -> Result<Vec<CyclePlan>> {
    let pi = permutation(inst, &Configuration::start(inst));
    let dec = cycle_decomposition(&pi)?;
    let g = inst.graph();
    dec.nontrivial()
        .map(|cycle| {
            let carrier_pos = (0..cycle.len())
                .min_by_key(|&i| (inst.weight(cycle[i]), cycle[i]))
                .expect("non-empty cycle");
            let mut rotated = cycle.clone();
            rotated.rotate_left(carrier_pos + 1);
            let legs = rotated
                .windows(2)
                .map(|w| g.shortest_path(inst.start(w[0]), inst.start(w[1])))
                .collect::<Result<Vec<_>>>()?;
            Ok(CyclePlan {
                cycle: rotated,
                legs,
            })
        })
        .collect()
}

/// Start of one leg iteration inside [`CycleRun`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegBoundary {
    /// Number of swaps emitted before the iteration starts.
    pub swap_index: usize,
    pub plan: usize,
    /// The carrier in flight, which is the one token allowed off both its
    /// start and destination.
    pub carrier: usize,
}

/// A solution together with the structure needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRun {
    pub plans: Vec<CyclePlan>,
    pub sequence: SwapSequence,
    /// Swap index range emitted for each plan.
    pub segments: Vec<Range<usize>>,
    pub boundaries: Vec<LegBoundary>,
}

pub fn solve_general(inst: &Instance) -> Result<SwapSequence> {
    Ok(solve_general_run(inst)?.sequence)
}

pub fn solve_general_run(inst: &Instance) -> Result<CycleRun> {
    let plans = plan_cycles(inst)?;
    let mut conf = Configuration::start(inst);
    let mut seq = SwapSequence::new();
    let mut segments = Vec::with_capacity(plans.len());
    let mut boundaries = Vec::new();

    for (p, plan) in plans.iter().enumerate() {
        let begin = seq.len();
        let carrier = plan.carrier();
        for k in (1..plan.cycle.len()).rev() {
            let walker = plan.cycle[k - 1];
            let leg = &plan.legs[k - 1];
            let (first, last) = (leg[0], leg[leg.len() - 1]);
            if conf.token_at(first) != walker || conf.token_at(last) != carrier {
                return Err(Error::InternalInvariantViolation(format!(
                    "leg {first}->{last} expected tokens {walker} and {carrier}"
                )));
            }
            boundaries.push(LegBoundary {
                swap_index: seq.len(),
                plan: p,
                carrier,
            });
            for w in leg.windows(2) {
                conf.swap(w[0], w[1]);
                seq.push(w[0], w[1]);
            }
            // The carrier now sits on leg[len - 2]; walk it back to leg[0].
            for i in (1..leg.len() - 1).rev() {
                conf.swap(leg[i], leg[i - 1]);
                seq.push(leg[i], leg[i - 1]);
            }
        }
        if conf.vertex_of(carrier) != inst.dest(carrier) {
            return Err(Error::InternalInvariantViolation(format!(
                "carrier {carrier} finished off its destination"
            )));
        }
        segments.push(begin..seq.len());
    }
    Ok(CycleRun {
        plans,
        sequence: seq,
        segments,
        boundaries,
    })
}

/// `2 s + 2 W sum_{k < l} d(t_k, t_{k+1})`, where `s` sums
/// `weight(t_k) * d(t_k, t_{k+1})` over the whole cycle and distances are
/// between start vertices.
pub fn per_cycle_cost_bound(plan: &CyclePlan, inst: &Instance) -> Cost {
    let g = inst.graph();
    let c = &plan.cycle;
    let l = c.len();
    let hop = |k: usize| g.dist(inst.start(c[k]), inst.start(c[(k + 1) % l])) as Cost;
    let s: Cost = (0..l).map(|k| inst.weight(c[k]) * hop(k)).sum();
    let legs: Cost = (0..l - 1).map(hop).sum();
    2 * s + 2 * inst.max_weight() * legs
}

/// Replays `run` and checks, at every leg boundary, that each token other
/// than the carrier in flight sits on its start or its destination; at the
/// end of each cycle no exception is made.
pub fn start_or_dest_verdict(inst: &Instance, run: &CycleRun) -> Result<PropertyVerdict> {
    let mut conf = Configuration::start(inst);
    let mut checks: Vec<(usize, Option<usize>)> = run
        .boundaries
        .iter()
        .map(|b| (b.swap_index, Some(b.carrier)))
        .chain(run.segments.iter().map(|s| (s.end, None)))
        .collect();
    checks.sort_by_key(|&(i, c)| (i, c.is_some()));
    let mut done = 0;
    for (index, exempt) in checks {
        for &(u, v) in &run.sequence.swaps[done..index] {
            conf.swap(u, v);
        }
        done = index;
        for t in 0..inst.n() {
            let at = conf.vertex_of(t);
            if Some(t) != exempt && at != inst.start(t) && at != inst.dest(t) {
                return Ok(PropertyVerdict::violated(
                    index,
                    format!("token {t} is on vertex {at}, neither its start nor destination"),
                ));
            }
        }
    }
    Ok(PropertyVerdict::holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::replay;
    use crate::graph::Graph;
    use crate::instance::fixtures::*;
    use std::sync::Arc;

    fn triangle_shift(weights: &[u64]) -> Instance {
        let g = Arc::new(Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap());
        Instance::from_assignments(g, &[0, 1, 2], &[1, 2, 0], weights).unwrap()
    }

    #[test]
    fn plan_examples() {
        assert!(plan_cycles(&identity(4)).unwrap().is_empty());

        let plans = plan_cycles(&crossed_pair(3, 1)).unwrap();
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].carrier(), 1);
        assert_eq!(plans[0].cycle, vec![0, 1]);

        let plans = plan_cycles(&triangle_shift(&[1, 5, 9])).unwrap();
        assert_eq!(plans.len(), 1);
        let p = &plans[0];
        assert_eq!(p.cycle.len(), 3);
        assert_eq!(p.carrier(), 0);
        assert_eq!(p.legs.len(), 2);
        assert!(p.legs.iter().all(|l| l.len() == 2));
    }

    #[test]
    fn carrier_ties_break_by_lowest_id() {
        let plans = plan_cycles(&triangle_shift(&[4, 2, 2])).unwrap();
        assert_eq!(plans[0].carrier(), 1);
    }

    #[test]
    fn solve_examples() {
        assert!(solve_general(&identity(3)).unwrap().is_empty());
        assert_eq!(solve_general(&crossed_pair(1, 1)).unwrap().swaps, vec![(1, 0)]);

        let c = three_path_cyclic();
        let seq = solve_general(&c).unwrap();
        assert_eq!(seq.swaps, vec![(1, 0), (2, 1)]);
        let t = replay(&c, &seq).unwrap();
        assert!(t.final_ok);
        assert_eq!(t.records[0].cost, 3);
        assert_eq!(t.records[1].cost, 4);
        assert_eq!(t.total_cost, 7);
    }

    #[test]
    fn start_or_dest_holds_at_boundaries() {
        for inst in [three_path_cyclic(), triangle_shift(&[1, 5, 9]), crossed_pair(2, 7)] {
            let run = solve_general_run(&inst).unwrap();
            assert!(start_or_dest_verdict(&inst, &run).unwrap().holds);
        }
        let mut run = solve_general_run(&three_path_cyclic()).unwrap();
        run.sequence.swaps.swap(0, 1);
        let v = start_or_dest_verdict(&three_path_cyclic(), &run).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn per_cycle_bound_examples() {
        let x = crossed_pair(2, 5);
        let plans = plan_cycles(&x).unwrap();
        assert_eq!(per_cycle_cost_bound(&plans[0], &x), 2 * (2 + 5) + 2 * 5);

        let tri = triangle_shift(&[1, 5, 9]);
        let plans = plan_cycles(&tri).unwrap();
        assert_eq!(per_cycle_cost_bound(&plans[0], &tri), 66);
        let t = replay(&tri, &solve_general(&tri).unwrap()).unwrap();
        assert!(t.final_ok);
        assert!(t.total_cost <= 66);
    }

    #[test]
    fn long_leg_restores_interior() {
        // Path 0-1-2-3: tokens on 0 and 3 trade places, 1 and 2 stay.
        let inst =
            Instance::from_assignments(path(4), &[0, 1, 2, 3], &[3, 1, 2, 0], &[1, 7, 7, 2])
                .unwrap();
        let run = solve_general_run(&inst).unwrap();
        assert_eq!(run.plans[0].carrier(), 0);
        assert_eq!(run.sequence.len(), 5);
        let t = replay(&inst, &run.sequence).unwrap();
        assert!(t.final_ok);
        // Walker (w=2) and carrier (w=1) each travel 3 hops, interior tokens twice.
        assert_eq!(t.total_cost, 3 * 2 + 3 * 1 + 2 * (7 + 7));
        assert!(t.total_cost <= per_cycle_cost_bound(&run.plans[0], &inst));
    }
}
