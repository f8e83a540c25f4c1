//! Reserve sampling and nibble-with-reserves packing: iterative semi-random
//! bites from a boosted clique family, then greedy cover-down of the leftover
//! edges into the reserve graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{combinations, verify_packing, CliqueFamily, Edge, Hypergraph};
use crate::rng::{bernoulli_u64, seeded, split_seed};

/// Exact edge-sampling probability num/den.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prob {
    pub num: u64,
    pub den: u64,
}

impl Prob {
    pub fn new(num: u64, den: u64) -> Result<Prob> {
        if den == 0 || num > den {
            return Err(Error::Precondition(format!("{num}/{den} is not a probability")));
        }
        Ok(Prob { num, den })
    }
}

#[derive(Debug, Clone)]
pub struct ReserveReport {
    pub attempts: u64,
    pub delta: usize,
    /// the bound 2 p n as an exact rational (numerator, denominator)
    pub bound_num: u64,
    pub bound_den: u64,
    /// for every edge of G \ X, the exact number of q-cliques of X ∪ {e}
    /// containing e
    pub extension_counts: BTreeMap<Edge, u64>,
}

impl ReserveReport {
    pub fn min_extensions(&self) -> u64 {
        self.extension_counts.values().copied().min().unwrap_or(0)
    }
    pub fn max_extensions(&self) -> u64 {
        self.extension_counts.values().copied().max().unwrap_or(0)
    }
}

/// Include each edge of G independently with probability p; retry with derived
/// seeds (bounded) until the codegree bound Delta(X) <= 2 p n holds.
pub fn sample_reserves(
    g: &Hypergraph,
    q: usize,
    p: Prob,
    seed: u64,
    max_attempts: u64,
) -> Result<(Hypergraph, ReserveReport)> {
    if !g.uniform() {
        return Err(Error::NotUniform);
    }
    let r = g.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    let n = g.n() as u64;
    let bound_num = 2 * p.num * n;
    let bound_den = p.den;
    let mut attempts = 0u64;
    let x = loop {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::BudgetExhausted);
        }
        let mut rng = seeded(split_seed(seed, attempts - 1));
        let mut x = Hypergraph::new(g.n(), r);
        for e in g.edges() {
            if bernoulli_u64(&mut rng, p.num, p.den) {
                x.insert_edge(e.clone())?;
            }
        }
        // Delta(X) <= 2 p n, exactly
        if (x.max_codegree() as u64) * bound_den <= bound_num {
            break x;
        }
    };
    let mut extension_counts = BTreeMap::new();
    for e in g.edges() {
        if x.is_edge(e) {
            continue;
        }
        extension_counts.insert(e.clone(), count_extensions(&x, e, q));
    }
    let report = ReserveReport {
        attempts,
        delta: x.max_codegree(),
        bound_num,
        bound_den,
        extension_counts,
    };
    Ok((x, report))
}

/// Number of q-cliques of X ∪ {e} containing e: every other r-subset of the
/// clique must be an edge of X.
pub fn count_extensions(x: &Hypergraph, e: &[u32], q: usize) -> u64 {
    let r = e.len();
    let others: Vec<u32> = (0..x.n() as u32).filter(|v| !e.contains(v)).collect();
    let mut count = 0u64;
    for ext in combinations(&others, q - r) {
        let mut clique: Vec<u32> = e.iter().copied().chain(ext.iter().copied()).collect();
        clique.sort_unstable();
        let ok = combinations(&clique, r).into_iter().all(|f| f == e || x.is_edge(&f));
        if ok {
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone)]
pub struct NibbleOutcome {
    pub packing: CliqueFamily,
    pub leave: Vec<Edge>,
    pub rounds: u64,
    pub bite_cliques: usize,
    pub cover_down_cliques: usize,
}

impl NibbleOutcome {
    pub fn success(&self) -> bool {
        self.leave.is_empty()
    }
}

/// Cover G by cliques of G ∪ X: semi-random bites from the family (each round
/// keeps a clique with probability bite / d_max, d_max the exact maximum
/// number of surviving cliques through an uncovered edge), a final
/// deterministic sweep once the rounds are exhausted, then greedy cover-down:
/// each uncovered edge takes the least q-set extension whose other edges are
/// unused edges of X. The returned packing is verified; the uncovered leave is
/// reported, never hidden.
pub fn nibble_with_reserves(
    g: &Hypergraph,
    x: &Hypergraph,
    family: &CliqueFamily,
    bite: Prob,
    seed: u64,
    max_rounds: u64,
) -> Result<NibbleOutcome> {
    let r = g.r_max();
    let q = family.q;
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    // X edge-disjoint from G
    for e in x.edges() {
        if g.is_edge(e) {
            return Err(Error::Precondition(format!("reserve edge {e:?} also lies in G")));
        }
    }
    // family cliques must be cliques of G
    let mut cliques: Vec<Vec<u32>> = family.cliques.clone();
    cliques.sort();
    cliques.dedup();
    for c in &cliques {
        for f in combinations(c, r) {
            if !g.is_edge(&f) {
                return Err(Error::CliqueNotInGround(format!("{c:?} misses {f:?} in G")));
            }
        }
    }

    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    let mut packing: Vec<Vec<u32>> = Vec::new();
    let mut rounds = 0u64;
    let mut bite_cliques = 0usize;
    for round in 0..max_rounds {
        let survivors: Vec<&Vec<u32>> = cliques
            .iter()
            .filter(|c| combinations(c, r).iter().all(|f| !covered.contains(f)))
            .collect();
        if survivors.is_empty() {
            break;
        }
        rounds = round + 1;
        // exact per-edge clique degrees over the survivors
        let mut degree: BTreeMap<Edge, u64> = BTreeMap::new();
        for c in &survivors {
            for f in combinations(c, r) {
                *degree.entry(f).or_insert(0) += 1;
            }
        }
        let d_max = degree.values().copied().max().unwrap_or(1).max(1);
        let mut rng = seeded(split_seed(seed, round));
        let (num, den) = if bite.num >= d_max * bite.den {
            (1, 1) // probability capped at 1
        } else {
            (bite.num, bite.den * d_max)
        };
        let mut kept: Vec<&Vec<u32>> = Vec::new();
        for c in &survivors {
            if bernoulli_u64(&mut rng, num, den) {
                kept.push(c);
            }
        }
        for c in kept {
            let edges = combinations(c, r);
            if edges.iter().all(|f| !covered.contains(f)) {
                covered.extend(edges);
                packing.push((*c).clone());
                bite_cliques += 1;
            }
        }
    }
    // deterministic final sweep: take the remaining survivors greedily
    for c in &cliques {
        let edges = combinations(c, r);
        if edges.iter().all(|f| !covered.contains(f)) {
            covered.extend(edges);
            packing.push(c.clone());
            bite_cliques += 1;
        }
    }

    // greedy cover-down into the reserves
    let mut used_x: BTreeSet<Edge> = BTreeSet::new();
    let mut cover_down_cliques = 0usize;
    let mut leave: Vec<Edge> = Vec::new();
    let others_pool: Vec<u32> = (0..g.n().max(x.n()) as u32).collect();
    for e in g.edges() {
        if covered.contains(e) {
            continue;
        }
        let others: Vec<u32> = others_pool.iter().copied().filter(|v| !e.contains(v)).collect();
        let mut placed = false;
        for ext in combinations(&others, q - r) {
            let mut clique: Vec<u32> = e.iter().copied().chain(ext.iter().copied()).collect();
            clique.sort_unstable();
            let mut x_edges: Vec<Edge> = Vec::new();
            let mut ok = true;
            for f in combinations(&clique, r) {
                if &f == e {
                    continue;
                }
                if x.is_edge(&f) && !used_x.contains(&f) {
                    x_edges.push(f);
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                covered.insert(e.clone());
                used_x.extend(x_edges);
                packing.push(clique);
                cover_down_cliques += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            leave.push(e.clone());
        }
    }

    // covered(G) and leave partition E(G)
    let mut check: BTreeSet<Edge> = covered.iter().filter(|e| g.is_edge(e)).cloned().collect();
    check.extend(leave.iter().cloned());
    if check.len() != g.edge_count() || covered.iter().filter(|e| g.is_edge(e)).count() + leave.len() != g.edge_count()
    {
        return Err(Error::Precondition("covered and leave fail to partition E(G)".to_string()));
    }
    let fam = CliqueFamily { q, cliques: packing, packing: true };
    let host = g.union(x);
    if !verify_packing(&host, &fam)? {
        return Err(Error::Precondition("packing verifier rejected the output".to_string()));
    }
    Ok(NibbleOutcome {
        packing: fam,
        leave,
        rounds,
        bite_cliques,
        cover_down_cliques,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserves_extremes() {
        let g = Hypergraph::complete(8, 2);
        // p = 1: X = G, no extension counts to report
        let (x, report) = sample_reserves(&g, 3, Prob::new(1, 1).unwrap(), 3, 10).unwrap();
        assert_eq!(x.edge_count(), g.edge_count());
        assert!(report.extension_counts.is_empty());
        // tiny p on a small graph: X almost surely empty, extensions all zero
        let (x, report) = sample_reserves(&g, 3, Prob::new(1, 1000000).unwrap(), 3, 10).unwrap();
        assert_eq!(x.edge_count(), 0);
        assert!(report.extension_counts.values().all(|&c| c == 0));
    }

    #[test]
    fn reserve_extension_counts_match_brute_force() {
        let g = Hypergraph::complete(15, 2);
        let (x, report) = sample_reserves(&g, 3, Prob::new(1, 2).unwrap(), 99, 50).unwrap();
        for (e, &count) in &report.extension_counts {
            // independent recount: common X-neighborhoods of the endpoints
            let mut slow = 0u64;
            for v in 0..15u32 {
                if e.contains(&v) {
                    continue;
                }
                let mut a = alloc::vec![e[0], v];
                a.sort_unstable();
                let mut b = alloc::vec![e[1], v];
                b.sort_unstable();
                if x.is_edge(&a) && x.is_edge(&b) {
                    slow += 1;
                }
            }
            assert_eq!(count, slow, "edge {e:?}");
        }
    }

    #[test]
    fn nibble_single_clique() {
        let g = Hypergraph::from_edges(3, 2, alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]])
            .unwrap();
        let fam = CliqueFamily::new(3, alloc::vec![alloc::vec![0, 1, 2]]);
        let x = Hypergraph::new(3, 2);
        let out = nibble_with_reserves(&g, &x, &fam, Prob::new(1, 2).unwrap(), 7, 32).unwrap();
        assert!(out.success());
        assert_eq!(out.packing.len(), 1);
    }

    #[test]
    fn pure_cover_down() {
        // G is a single edge; X holds a full extension
        let g = Hypergraph::from_edges(5, 2, alloc::vec![alloc::vec![0, 1]]).unwrap();
        let x = Hypergraph::from_edges(5, 2, alloc::vec![alloc::vec![0, 2], alloc::vec![1, 2]]).unwrap();
        let out = nibble_with_reserves(&g, &x, &CliqueFamily::new(3, alloc::vec![]), Prob::new(1, 2).unwrap(), 3, 8)
            .unwrap();
        assert!(out.success());
        assert_eq!(out.cover_down_cliques, 1);
        assert_eq!(out.packing.cliques, alloc::vec![alloc::vec![0, 1, 2]]);
    }

    #[test]
    fn determinism_under_seed() {
        let g = Hypergraph::complete(9, 2);
        let (x, _) = sample_reserves(&g, 3, Prob::new(1, 3).unwrap(), 5, 20).unwrap();
        let j = g.difference(&x);
        let fam = CliqueFamily::new(3, j.enumerate_cliques(3).unwrap());
        let a = nibble_with_reserves(&j, &x, &fam, Prob::new(1, 4).unwrap(), 11, 24).unwrap();
        let b = nibble_with_reserves(&j, &x, &fam, Prob::new(1, 4).unwrap(), 11, 24).unwrap();
        assert_eq!(a.packing.cliques, b.packing.cliques);
        assert_eq!(a.leave, b.leave);
    }

    #[test]
    fn always_a_valid_packing() {
        // even when the leave is nonempty the output is a packing
        let g = Hypergraph::cycle(6);
        let x = Hypergraph::new(6, 2);
        let out = nibble_with_reserves(&g, &x, &CliqueFamily::new(3, alloc::vec![]), Prob::new(1, 2).unwrap(), 1, 4)
            .unwrap();
        assert!(!out.success());
        assert_eq!(out.leave.len(), 6);
        assert!(out.packing.is_empty());
    }
}
