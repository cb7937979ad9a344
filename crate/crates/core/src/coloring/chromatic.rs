//! Exact chromatic number by DSATUR branch-and-bound.

use thiserror::Error;

use super::ConflictGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error("node {0} conflicts with its own translate; no coloring exists")]
    SelfLoopPresent(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyOrder {
    DegreeDesc,
    Input,
}

/// Exhaustive proof that `colors` colors do not suffice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityEvidence {
    pub colors: usize,
    /// Precolored to break symmetry; a clique larger than `colors`
    /// settles the question at the root.
    pub clique: Vec<usize>,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub k: usize,
    /// Colors `1..=k`, lexicographically minimal over node order.
    pub assignment: Vec<u32>,
    pub evidence: Option<InfeasibilityEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChromaticOutcome {
    Colorable(ColoringCertificate),
    InfeasibleUpTo { kmax: usize, nodes_explored: u64 },
}

fn check_loops(g: &ConflictGraph) -> Result<(), ChromaticError> {
    match g.self_loop_nodes().first() {
        Some(&u) => Err(ChromaticError::SelfLoopPresent(u)),
        None => Ok(()),
    }
}

fn first_free(g: &ConflictGraph, colors: &[u32], v: usize) -> u32 {
    let mut c = 1;
    while g.neighbors(v).iter().any(|&w| colors[w] == c) {
        c += 1;
    }
    c
}

/// Proper coloring by first-fit in the given order.
pub fn greedy_color(g: &ConflictGraph, order: GreedyOrder) -> Result<Vec<u32>, ChromaticError> {
    check_loops(g)?;
    let mut nodes: Vec<usize> = (0..g.node_count()).collect();
    if order == GreedyOrder::DegreeDesc {
        nodes.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    }
    let mut colors = vec![0; g.node_count()];
    for v in nodes {
        colors[v] = first_free(g, &colors, v);
    }
    Ok(colors)
}

fn saturation(g: &ConflictGraph, colors: &[u32], v: usize) -> usize {
    let mut seen: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).filter(|&c| c > 0).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Uncolored node of largest saturation, then degree, then smallest id.
fn pick(g: &ConflictGraph, colors: &[u32]) -> Option<usize> {
    (0..g.node_count())
        .filter(|&v| colors[v] == 0)
        .max_by_key(|&v| (saturation(g, colors, v), g.degree(v), std::cmp::Reverse(v)))
}

fn dsatur_count(g: &ConflictGraph) -> usize {
    let mut colors = vec![0; g.node_count()];
    while let Some(v) = pick(g, &colors) {
        colors[v] = first_free(g, &colors, v);
    }
    colors.iter().copied().max().unwrap_or(0) as usize
}

fn greedy_clique(g: &ConflictGraph) -> Vec<usize> {
    let mut starts: Vec<usize> = (0..g.node_count()).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for s in starts {
        let mut clique = vec![s];
        let mut cand: Vec<usize> = g.neighbors(s).iter().copied().collect();
        while !cand.is_empty() {
            let &v = cand
                .iter()
                .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
                .expect("nonempty");
            clique.push(v);
            cand.retain(|&w| w != v && g.has_edge(v, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Search<'a> {
    g: &'a ConflictGraph,
    k: u32,
    colors: Vec<u32>,
    nodes: u64,
}

impl Search<'_> {
    fn solve(&mut self) -> bool {
        self.nodes += 1;
        let Some(v) = pick(self.g, &self.colors) else {
            return true;
        };
        let top = self.colors.iter().copied().max().unwrap_or(0);
        for c in 1..=self.k.min(top + 1) {
            if self.g.neighbors(v).iter().all(|&w| self.colors[w] != c) {
                self.colors[v] = c;
                if self.solve() {
                    return true;
                }
                self.colors[v] = 0;
            }
        }
        false
    }
}

/// Decides `k`-colorability with the clique precolored.
fn decide(g: &ConflictGraph, k: usize, clique: &[usize]) -> (bool, u64) {
    if clique.len() > k {
        return (false, 1);
    }
    let mut colors = vec![0; g.node_count()];
    for (i, &v) in clique.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    let mut s = Search { g, k: k as u32, colors, nodes: 0 };
    let ok = s.solve();
    (ok, s.nodes)
}

/// Lexicographically smallest proper coloring with at most `k` colors.
fn lex_min(g: &ConflictGraph, k: u32) -> Option<Vec<u32>> {
    fn go(g: &ConflictGraph, k: u32, v: usize, top: u32, colors: &mut Vec<u32>) -> bool {
        if v == g.node_count() {
            return true;
        }
        for c in 1..=k.min(top + 1) {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) && !wipes_out(g, k, v, c, colors) {
                colors[v] = c;
                if go(g, k, v + 1, top.max(c), colors) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    // A later neighbor left without any admissible color.
    fn wipes_out(g: &ConflictGraph, k: u32, v: usize, c: u32, colors: &[u32]) -> bool {
        g.neighbors(v).range(v + 1..).any(|&w| {
            (1..=k).all(|d| d == c || g.neighbors(w).iter().any(|&x| colors[x] == d))
        })
    }
    let mut colors = vec![0; g.node_count()];
    go(g, k, 0, 0, &mut colors).then_some(colors)
}

/// Smallest `k <= kmax` admitting a proper coloring, with exhaustive
/// evidence that `k - 1` fails. The graph is taken as given, so for a
/// periodic tiling the answer holds at that period only.
pub fn chromatic_number_exact(
    g: &ConflictGraph,
    kmax: usize,
) -> Result<ChromaticOutcome, ChromaticError> {
    check_loops(g)?;
    let clique = greedy_clique(g);
    let lb = clique.len();
    let ub = dsatur_count(g);
    let mut total = 0u64;
    let mut evidence = None;
    if lb > 0 {
        let (_, nodes) = decide(g, lb - 1, &clique);
        total += nodes;
        evidence = Some(InfeasibilityEvidence { colors: lb - 1, clique: clique.clone(), nodes_explored: nodes });
    }
    for k in lb..=kmax {
        let feasible = k >= ub || {
            let (ok, nodes) = decide(g, k, &clique);
            total += nodes;
            if !ok {
                evidence = Some(InfeasibilityEvidence { colors: k, clique: clique.clone(), nodes_explored: nodes });
            }
            ok
        };
        if feasible {
            let assignment = lex_min(g, k as u32).expect("k-colorable graph has a coloring");
            return Ok(ChromaticOutcome::Colorable(ColoringCertificate { k, assignment, evidence }));
        }
    }
    Ok(ChromaticOutcome::InfeasibleUpTo { kmax, nodes_explored: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_of(g: &ConflictGraph) -> usize {
        match chromatic_number_exact(g, 20).unwrap() {
            ChromaticOutcome::Colorable(c) => {
                assert!(g.is_proper(&c.assignment));
                c.k
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_graphs() {
        assert_eq!(k_of(&ConflictGraph::complete(9)), 9);
        assert_eq!(k_of(&ConflictGraph::empty(5)), 1);
        assert_eq!(k_of(&ConflictGraph::empty(0)), 0);
        let c5 = ConflictGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(k_of(&c5), 3);
    }

    #[test]
    fn greedy_examples() {
        let k7 = ConflictGraph::complete(7);
        for order in [GreedyOrder::Input, GreedyOrder::DegreeDesc] {
            assert_eq!(greedy_color(&k7, order).unwrap().into_iter().max(), Some(7));
        }
        let path = ConflictGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(greedy_color(&path, GreedyOrder::Input).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn kmax_too_small() {
        let out = chromatic_number_exact(&ConflictGraph::complete(4), 3).unwrap();
        assert!(matches!(out, ChromaticOutcome::InfeasibleUpTo { kmax: 3, .. }));
    }

    #[test]
    fn self_loop_rejected() {
        let mut g = ConflictGraph::empty(2);
        g.add_edge(1, 1);
        assert_eq!(chromatic_number_exact(&g, 3), Err(ChromaticError::SelfLoopPresent(1)));
        assert_eq!(greedy_color(&g, GreedyOrder::Input), Err(ChromaticError::SelfLoopPresent(1)));
    }
}
