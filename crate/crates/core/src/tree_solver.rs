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

//! Happy Swap on trees, run without looking at token weights.
//!
//! A swap is *happy* when both tokens step closer to their destinations,
//! and a *shove* when one token is already home and the other steps closer.
//! Each round performs the first happy swap in canonical edge order, or the
//! first shove if there is no happy swap.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::{Configuration, Instance, SwapSequence};
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapClass {
    HappySwap,
    /// Carries the id of the token that was happy before the swap.
    Shove(usize),
    Neither,
}

/// Classifies the swap along `(u, v)` in configuration `conf`.
pub fn classify_swap(
    inst: &Instance,
    conf: &Configuration,
    (u, v): (usize, usize),
) -> Result<SwapClass> {
    let g = inst.graph();
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let (a, b) = (conf.token_at(u), conf.token_at(v));
    let a_closer = g.dist(v, inst.dest(a)) + 1 == g.dist(u, inst.dest(a));
    let b_closer = g.dist(u, inst.dest(b)) + 1 == g.dist(v, inst.dest(b));
    let a_happy = u == inst.dest(a);
    let b_happy = v == inst.dest(b);
    Ok(if a_closer && b_closer {
        SwapClass::HappySwap
    } else if a_happy && b_closer {
        SwapClass::Shove(a)
    } else if b_happy && a_closer {
        SwapClass::Shove(b)
    } else {
        SwapClass::Neither
    })
}

/// Incremental bookkeeping for the selection rule.
///
/// Every unhappy token points at the neighbor one step closer to its
/// destination. An edge is a happy swap iff its endpoints point at each
/// other, and a shove iff one endpoint holds a happy token and the other
/// points at it. Only the two swapped vertices change pointers, so each
/// swap costs `O(log n)` updates.
struct Selector<'a> {
    inst: &'a Instance,
    tree: &'a RootedTree,
    conf: Configuration,
    next: Vec<Option<usize>>,
    /// Edge ids `(y, x)` with `next[y] == Some(x)`, per target `x`.
    incoming: Vec<BTreeSet<usize>>,
    happy_edges: BTreeSet<usize>,
    /// `(first incoming edge id, x)` for every happy vertex with incoming pointers.
    shove_heads: BTreeSet<(usize, usize)>,
    head_of: Vec<Option<usize>>,
    unhappy: usize,
}

impl<'a> Selector<'a> {
    fn new(inst: &'a Instance, tree: &'a RootedTree) -> Self {
        let n = inst.n();
        let conf = Configuration::start(inst);
        let mut s = Selector {
            inst,
            tree,
            conf,
            next: vec![None; n],
            incoming: vec![BTreeSet::new(); n],
            happy_edges: BTreeSet::new(),
            shove_heads: BTreeSet::new(),
            head_of: vec![None; n],
            unhappy: 0,
        };
        for x in 0..n {
            s.attach(x);
        }
        for x in 0..n {
            s.refresh_head(x);
        }
        s
    }

    fn edge(&self, x: usize, y: usize) -> usize {
        self.inst.graph().edge_id(x, y).expect("tree neighbor")
    }

    fn detach(&mut self, x: usize) {
        if let Some(y) = self.next[x].take() {
            let e = self.edge(x, y);
            self.incoming[y].remove(&e);
            self.happy_edges.remove(&e);
            self.unhappy -= 1;
        }
    }

    fn attach(&mut self, x: usize) {
        let t = self.conf.token_at(x);
        let hop = self.tree.next_hop(x, self.inst.dest(t));
        self.next[x] = hop;
        if let Some(y) = hop {
            let e = self.edge(x, y);
            self.incoming[y].insert(e);
            if self.next[y] == Some(x) {
                self.happy_edges.insert(e);
            }
            self.unhappy += 1;
        }
    }

    fn refresh_head(&mut self, x: usize) {
        if let Some(e) = self.head_of[x].take() {
            self.shove_heads.remove(&(e, x));
        }
        if self.next[x].is_none() {
            if let Some(&e) = self.incoming[x].first() {
                self.shove_heads.insert((e, x));
                self.head_of[x] = Some(e);
            }
        }
    }

    fn pick(&self) -> Option<(usize, usize)> {
        let e = self
            .happy_edges
            .first()
            .copied()
            .or_else(|| self.shove_heads.first().map(|&(e, _)| e))?;
        Some(self.inst.graph().edges()[e])
    }

    fn apply(&mut self, u: usize, v: usize) {
        let old: Vec<usize> = [u, v].iter().filter_map(|&x| self.next[x]).collect();
        self.detach(u);
        self.detach(v);
        self.conf.swap(u, v);
        self.attach(u);
        self.attach(v);
        let new: Vec<usize> = [u, v].iter().filter_map(|&x| self.next[x]).collect();
        for x in [u, v].into_iter().chain(old).chain(new) {
            self.refresh_head(x);
        }
    }
}

/// Runs Happy Swap on a tree instance. The result reaches the all-happy
/// configuration in at most `sum_t d(t)` swaps.
pub fn solve_tree(inst: &Instance) -> Result<SwapSequence> {
    let tree = inst.graph().rooted_tree().ok_or(Error::NotATree)?;
    let budget: usize = (0..inst.n()).map(|t| inst.travel(t)).sum();
    let mut sel = Selector::new(inst, tree);
    let mut seq = SwapSequence::new();
    while sel.unhappy > 0 {
        if seq.len() >= budget {
            return Err(Error::InternalStuck(seq.len()));
        }
        let (u, v) = sel.pick().ok_or(Error::InternalStuck(seq.len()))?;
        sel.apply(u, v);
        seq.push(u, v);
    }
    Ok(seq)
}

/// One token's half of a swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveAudit {
    pub token: usize,
    /// 1-based count of this token's moves so far.
    pub move_index: usize,
    pub inevitable: bool,
    /// Inevitable move leaving the token's start-destination path.
    pub left_path: bool,
    /// Redundant move landing more than one hop from the destination.
    pub strayed_far: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapAudit {
    pub index: usize,
    pub moves: [MoveAudit; 2],
}

impl SwapAudit {
    pub fn inevitable_count(&self) -> usize {
        self.moves.iter().filter(|m| m.inevitable).count()
    }

    pub fn flagged(&self) -> bool {
        self.inevitable_count() == 0 || self.moves.iter().any(|m| m.left_path || m.strayed_far)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InevitableAudit {
    pub swaps: Vec<SwapAudit>,
}

impl InevitableAudit {
    pub fn flags(&self) -> impl Iterator<Item = &SwapAudit> {
        self.swaps.iter().filter(|s| s.flagged())
    }

    pub fn is_clean(&self) -> bool {
        self.flags().next().is_none()
    }
}

/// Labels each move of a solving sequence as inevitable (among the
/// token's first `d(t)` moves) or redundant, and flags the patterns that
/// Happy Swap never produces.
pub fn audit_inevitable(inst: &Instance, seq: &SwapSequence) -> Result<InevitableAudit> {
    let g = inst.graph();
    let tree = g.rooted_tree().ok_or(Error::NotATree)?;
    let mut conf = Configuration::start(inst);
    let mut moves_made = vec![0usize; inst.n()];
    let mut swaps = Vec::with_capacity(seq.len());
    for (index, (u, v)) in seq.iter().enumerate() {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidSwapEdge { index, u, v });
        }
        let (a, b) = conf.swap(u, v);
        let mut audit = |t: usize, to: usize| {
            moves_made[t] += 1;
            let (s, d) = (inst.start(t), inst.dest(t));
            let inevitable = moves_made[t] <= g.dist(s, d);
            MoveAudit {
                token: t,
                move_index: moves_made[t],
                inevitable,
                left_path: inevitable && tree.dist_to_path(to, s, d) > 0,
                strayed_far: !inevitable && g.dist(to, d) > 1,
            }
        };
        let moves = [audit(a, v), audit(b, u)];
        swaps.push(SwapAudit { index, moves });
    }
    if !conf.all_happy(inst) {
        return Err(Error::InvalidSequence);
    }
    Ok(InevitableAudit { swaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::*;
    use crate::instance::Instance;
    use std::sync::Arc;

    #[test]
    fn classify_examples() {
        let x = crossed_pair(1, 1);
        let start = Configuration::start(&x);
        assert_eq!(classify_swap(&x, &start, (0, 1)).unwrap(), SwapClass::HappySwap);

        let mut done = start.clone();
        done.swap(0, 1);
        assert_eq!(classify_swap(&x, &done, (0, 1)).unwrap(), SwapClass::Neither);

        // Path 0-1-2: token 0 is home on 1, token 1 on 0 wants 2.
        let inst =
            Instance::from_assignments(path(3), &[1, 0, 2], &[1, 2, 0], &[1, 1, 1]).unwrap();
        let conf = Configuration::start(&inst);
        assert_eq!(classify_swap(&inst, &conf, (0, 1)).unwrap(), SwapClass::Shove(0));
        assert_eq!(classify_swap(&inst, &conf, (1, 2)).unwrap(), SwapClass::Shove(0));
        assert_eq!(
            classify_swap(&inst, &conf, (0, 2)).unwrap_err(),
            Error::NotAnEdge(0, 2)
        );
    }

    #[test]
    fn solve_examples() {
        assert!(solve_tree(&identity(5)).unwrap().is_empty());
        let x = crossed_pair(1, 5);
        assert_eq!(solve_tree(&x).unwrap().swaps, vec![(0, 1)]);
        let c = three_path_cyclic();
        let seq = solve_tree(&c).unwrap();
        let trace = crate::analysis::replay(&c, &seq).unwrap();
        assert!(trace.final_ok);
        assert_eq!(trace.total_cost, 7);
    }

    #[test]
    fn rejects_non_trees() {
        let g = crate::graph::Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst =
            Instance::from_assignments(Arc::new(g), &[0, 1, 2], &[1, 2, 0], &[1, 1, 1]).unwrap();
        assert_eq!(solve_tree(&inst).unwrap_err(), Error::NotATree);
    }

    #[test]
    fn audit_examples() {
        let x = crossed_pair(1, 5);
        let audit = audit_inevitable(&x, &SwapSequence::from(vec![(0, 1)])).unwrap();
        assert_eq!(audit.swaps.len(), 1);
        assert_eq!(audit.swaps[0].inevitable_count(), 2);
        assert!(audit.is_clean());
        let id = identity(3);
        assert!(audit_inevitable(&id, &SwapSequence::new()).unwrap().swaps.is_empty());
        assert_eq!(
            audit_inevitable(&x, &SwapSequence::new()).unwrap_err(),
            Error::InvalidSequence
        );
    }

    #[test]
    fn audit_flags_swaps_without_inevitable_moves() {
        // Swap twice then once more: the second swap moves both tokens a
        // second time although each needs only one hop.
        let x = crossed_pair(1, 1);
        let seq = SwapSequence::from(vec![(0, 1), (0, 1), (0, 1)]);
        let audit = audit_inevitable(&x, &seq).unwrap();
        let flagged: Vec<_> = audit.flags().map(|s| s.index).collect();
        assert_eq!(flagged, vec![1, 2]);
    }
}
