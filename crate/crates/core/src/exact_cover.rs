//! Backtracking exact-cover search for K_q^r-decompositions, used as the
//! independent oracle for everything else in the crate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{combinations, verify_decomposition, CliqueFamily, Hypergraph};

/// Outcome of a budgeted exact-cover search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    Found(CliqueFamily),
    /// Search space exhausted: no decomposition exists.
    ProvenNone,
}

/// Find a K_q^r-decomposition of G by exact cover over the clique/edge
/// incidence, branching on the most constrained uncovered edge first.
/// `budget` bounds the number of search nodes; exceeding it is an error
/// distinct from a proven non-existence.
pub fn exact_cover_decompose(g: &Hypergraph, q: usize, budget: u64) -> Result<CoverOutcome> {
    if !g.uniform() {
        return Err(Error::NotUniform);
    }
    let r = g.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    let edges = g.edge_vec();
    if edges.is_empty() {
        return Ok(CoverOutcome::Found(CliqueFamily::new(q, vec![])));
    }
    let edge_index: BTreeMap<&[u32], usize> = edges.iter().map(|e| e.as_slice()).enumerate().map(|(i, e)| (e, i)).collect();
    let cliques = g.enumerate_cliques(q)?;
    // clique -> indices of its edges
    let clique_edges: Vec<Vec<usize>> = cliques
        .iter()
        .map(|c| combinations(c, r).iter().map(|e| edge_index[e.as_slice()]).collect())
        .collect();
    let mut edge_cliques: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (ci, es) in clique_edges.iter().enumerate() {
        for &ei in es {
            edge_cliques[ei].push(ci);
        }
    }

    let mut state = Search {
        covered: vec![false; edges.len()],
        clique_alive: vec![true; cliques.len()],
        clique_edges: &clique_edges,
        edge_cliques: &edge_cliques,
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    match state.solve(edges.len()) {
        SolveResult::Found => {
            let fam = CliqueFamily::new(q, state.chosen.iter().map(|&ci| cliques[ci].clone()).collect());
            debug_assert!(verify_decomposition(g, &fam).unwrap_or(false));
            if !verify_decomposition(g, &fam)? {
                return Err(Error::Precondition(alloc::string::String::from(
                    "internal: search produced a non-decomposition",
                )));
            }
            Ok(CoverOutcome::Found(fam))
        }
        SolveResult::Exhausted => Ok(CoverOutcome::ProvenNone),
        SolveResult::OutOfBudget => Err(Error::BudgetExhausted),
    }
}

enum SolveResult {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    covered: Vec<bool>,
    clique_alive: Vec<bool>,
    clique_edges: &'a [Vec<usize>],
    edge_cliques: &'a [Vec<usize>],
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn solve(&mut self, uncovered: usize) -> SolveResult {
        if uncovered == 0 {
            return SolveResult::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return SolveResult::OutOfBudget;
        }
        // most constrained uncovered edge
        let mut best_edge = usize::MAX;
        let mut best_count = usize::MAX;
        for (ei, &cov) in self.covered.iter().enumerate() {
            if cov {
                continue;
            }
            let count = self.edge_cliques[ei].iter().filter(|&&ci| self.clique_alive[ci]).count();
            if count < best_count {
                best_count = count;
                best_edge = ei;
                if count == 0 {
                    break;
                }
            }
        }
        if best_count == 0 {
            return SolveResult::Exhausted;
        }
        let candidates: Vec<usize> = self.edge_cliques[best_edge]
            .iter()
            .copied()
            .filter(|&ci| self.clique_alive[ci])
            .collect();
        for ci in candidates {
            let killed = self.place(ci);
            match self.solve(uncovered - self.clique_edges[ci].len()) {
                SolveResult::Found => return SolveResult::Found,
                SolveResult::OutOfBudget => {
                    self.unplace(ci, killed);
                    return SolveResult::OutOfBudget;
                }
                SolveResult::Exhausted => self.unplace(ci, killed),
            }
        }
        SolveResult::Exhausted
    }

    fn place(&mut self, ci: usize) -> Vec<usize> {
        self.chosen.push(ci);
        let mut killed = Vec::new();
        for &ei in &self.clique_edges[ci] {
            self.covered[ei] = true;
            for &cj in &self.edge_cliques[ei] {
                if self.clique_alive[cj] {
                    self.clique_alive[cj] = false;
                    killed.push(cj);
                }
            }
        }
        killed
    }

    fn unplace(&mut self, ci: usize, killed: Vec<usize>) {
        self.chosen.pop();
        for &ei in &self.clique_edges[ci] {
            self.covered[ei] = false;
        }
        for cj in killed {
            self.clique_alive[cj] = true;
        }
        let _ = ci;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steiner_triple_system_7() {
        let k7 = Hypergraph::complete(7, 2);
        match exact_cover_decompose(&k7, 3, 1 << 22).unwrap() {
            CoverOutcome::Found(fam) => {
                assert_eq!(fam.len(), 7);
                assert!(verify_decomposition(&k7, &fam).unwrap());
            }
            CoverOutcome::ProvenNone => panic!("STS(7) exists"),
        }
    }

    #[test]
    fn c6_divisible_but_not_decomposable() {
        let c6 = Hypergraph::cycle(6);
        assert!(c6.is_divisible(3).unwrap());
        assert_eq!(exact_cover_decompose(&c6, 3, 1 << 20).unwrap(), CoverOutcome::ProvenNone);
    }

    #[test]
    fn single_clique_ground() {
        let tri = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        match exact_cover_decompose(&tri, 3, 100).unwrap() {
            CoverOutcome::Found(fam) => assert_eq!(fam.cliques, vec![vec![0, 1, 2]]),
            _ => panic!(),
        }
    }

    #[test]
    fn budget_is_distinguished() {
        let k7 = Hypergraph::complete(7, 2);
        assert_eq!(exact_cover_decompose(&k7, 3, 0).unwrap_err(), Error::BudgetExhausted);
    }

    #[test]
    fn steiner_3_uniform() {
        // K_8^3 is K_4^3-divisible and decomposable (the Steiner quadruple system SQS(8))
        let k8 = Hypergraph::complete(8, 3);
        assert!(k8.is_divisible(4).unwrap());
        match exact_cover_decompose(&k8, 4, 1 << 22).unwrap() {
            CoverOutcome::Found(fam) => {
                assert_eq!(fam.len(), 14);
                assert!(verify_decomposition(&k8, &fam).unwrap());
            }
            CoverOutcome::ProvenNone => panic!("SQS(8) exists"),
        }
    }
}
