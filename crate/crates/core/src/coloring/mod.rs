//! Global verification and the periodic unit-conflict graph.

mod chromatic;

pub use chromatic::{
    chromatic_number_exact, greedy_color, ChromaticError, ChromaticOutcome, ColoringCertificate,
    GreedyOrder, InfeasibilityEvidence,
};

use std::collections::BTreeSet;

use crate::distance::{cell_conflict, ConflictMode, ConflictWitness, OwnedCell};
use crate::exact::{FieldScalar, Rational};
use crate::exec::Exec;
use crate::tiling::{CellRef, Offset, Tiling};

/// Nodes are the regions of one block; `u ~ v` when some translate of
/// `v` conflicts with `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    adj: Vec<BTreeSet<usize>>,
    self_loops: Vec<bool>,
}

impl ConflictGraph {
    /// Graph on `n` nodes without edges.
    pub fn empty(n: usize) -> ConflictGraph {
        ConflictGraph { adj: vec![BTreeSet::new(); n], self_loops: vec![false; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> ConflictGraph {
        let mut g = ConflictGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> ConflictGraph {
        let mut g = ConflictGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `u == v` records a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.self_loops[u] = true;
        } else {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> &BTreeSet<usize> {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_self_loop(&self, u: usize) -> bool {
        self.self_loops[u]
    }

    pub fn self_loop_nodes(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&u| self.self_loops[u]).collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    /// `assignment[u]` differs across every edge.
    pub fn is_proper(&self, assignment: &[u32]) -> bool {
        assignment.len() == self.node_count()
            && self.self_loops.iter().all(|s| !s)
            && self.edges().iter().all(|&(u, v)| assignment[u] != assignment[v])
    }
}

/// Candidate pairs `(u, v, o)` with `u <= v`, one representative per
/// unordered pair of cells.
fn candidate_pairs(t: &Tiling, margin: &FieldScalar) -> Vec<(usize, usize, Offset)> {
    let n = t.regions().len();
    let mut out = Vec::new();
    for u in 0..n {
        let near = t.regions()[u].bbox.expand(margin);
        for v in u..n {
            for o in t.offsets_meeting(&t.regions()[v].bbox, &near) {
                if u == v && o < (0, 0) {
                    continue;
                }
                out.push((u, v, o));
            }
        }
    }
    out
}

fn search_margin(t: &Tiling, extra_steps: u32) -> FieldScalar {
    let one = FieldScalar::one();
    match t.lattice() {
        Some(l) if extra_steps > 0 => {
            let step = l.t1().norm_sq().max_value(&l.t2().norm_sq()).clone();
            // Integer upper bound on the longer step length.
            let bound = Rational::from_integer(step.floor() + 1u32);
            &one + &FieldScalar::from_rational(&(bound * Rational::from_integer(extra_steps.into())))
        }
        _ => one,
    }
}

fn pair_conflict(
    t: &Tiling,
    u: usize,
    v: usize,
    o: Offset,
    mode: ConflictMode,
) -> Option<ConflictWitness> {
    let a = OwnedCell::from_tiling(t, CellRef::new(u, (0, 0)));
    let b = OwnedCell::from_tiling(t, CellRef::new(v, o));
    cell_conflict(&a, &b, mode).expect("cells of one tiling")
}

/// Every same-colored pair of cells realizing distance exactly one,
/// folded by the lattice. Empty for a valid coloring.
pub fn verify_coloring(t: &Tiling) -> Vec<ConflictWitness> {
    verify_coloring_with(t, ConflictMode::OwnedCells, Exec::default())
}

pub fn verify_coloring_with(t: &Tiling, mode: ConflictMode, exec: Exec) -> Vec<ConflictWitness> {
    let pairs: Vec<_> = candidate_pairs(t, &FieldScalar::one())
        .into_iter()
        .filter(|&(u, v, _)| t.regions()[u].color == t.regions()[v].color)
        .collect();
    exec.map(&pairs, |&(u, v, o)| pair_conflict(t, u, v, o, mode))
        .into_iter()
        .flatten()
        .collect()
}

/// Conflict graph of a periodic tiling in owned-cell mode.
pub fn build_conflict_graph(t: &Tiling) -> ConflictGraph {
    build_conflict_graph_with(t, Exec::default(), 0)
}

/// `extra_steps` widens the translate search by that many lattice
/// steps; with a sufficient radius the result does not depend on it.
pub fn build_conflict_graph_with(t: &Tiling, exec: Exec, extra_steps: u32) -> ConflictGraph {
    let pairs = candidate_pairs(t, &search_margin(t, extra_steps));
    let hits = exec.map(&pairs, |&(u, v, o)| {
        pair_conflict(t, u, v, o, ConflictMode::OwnedCells).map(|_| (u, v))
    });
    let mut g = ConflictGraph::empty(t.regions().len());
    for (u, v) in hits.into_iter().flatten() {
        g.add_edge(u, v);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_builtin, FixtureName};

    #[test]
    fn grid9_is_k9() {
        let g = build_conflict_graph(&gen_builtin(FixtureName::Grid9));
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 9);
        assert!(g.self_loop_nodes().is_empty());
    }

    #[test]
    fn sequential_matches_parallel() {
        let t = gen_builtin(FixtureName::Hex7);
        assert_eq!(
            build_conflict_graph_with(&t, Exec::Sequential, 0),
            build_conflict_graph_with(&t, Exec::Parallel, 0)
        );
    }
}
