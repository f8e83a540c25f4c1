//! Integral K_q^r-valuations: boundary operator, integral decompositions via
//! exact integer linear algebra, cone lifting, and the edge-intersecting
//! integral decomposition built by induction on the root intersection size.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, combinations, Edge, Hypergraph};
use crate::intlin::{reduce_l1, solve_integer};

/// Integer weights on q-cliques of a complete ground K_m^r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralValuation {
    pub m: usize,
    pub r: usize,
    pub q: usize,
    pub weights: BTreeMap<Vec<u32>, BigInt>,
}

impl IntegralValuation {
    pub fn new(m: usize, r: usize, q: usize) -> Self {
        IntegralValuation { m, r, q, weights: BTreeMap::new() }
    }

    pub fn add_weight(&mut self, clique: Vec<u32>, w: BigInt) {
        if w.is_zero() {
            return;
        }
        let mut clique = clique;
        clique.sort_unstable();
        let entry = self.weights.entry(clique).or_insert_with(BigInt::zero);
        *entry += w;
        if entry.is_zero() {
            // keep the support tight
            let key: Vec<Vec<u32>> = self
                .weights
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.weights.remove(&k);
            }
        }
    }

    pub fn add_all(&mut self, other: &IntegralValuation) {
        for (c, w) in &other.weights {
            self.add_weight(c.clone(), w.clone());
        }
    }

    /// Exact boundary: edge -> sum of weights of support cliques through it.
    /// Absent entries are zero.
    pub fn boundary(&self) -> BTreeMap<Edge, BigInt> {
        let mut out: BTreeMap<Edge, BigInt> = BTreeMap::new();
        for (c, w) in &self.weights {
            for e in combinations(c, self.r) {
                let entry = out.entry(e).or_insert_with(BigInt::zero);
                *entry += w;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn boundary_at(&self, e: &[u32]) -> BigInt {
        let mut acc = BigInt::zero();
        for (c, w) in &self.weights {
            if e.iter().all(|v| c.binary_search(v).is_ok()) {
                acc += w;
            }
        }
        acc
    }

    /// Positive and negative parts as clique lists with multiplicity |w|.
    pub fn signed_multisets(&self) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        use num_traits::ToPrimitive;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (c, w) in &self.weights {
            let copies = w.abs().to_u64().expect("clique multiplicity fits in u64");
            for _ in 0..copies {
                if w.is_positive() {
                    pos.push(c.clone());
                } else {
                    neg.push(c.clone());
                }
            }
        }
        (pos, neg)
    }

    pub fn l1_norm(&self) -> BigInt {
        self.weights.values().map(|w| w.abs()).sum()
    }
}

/// A hypergraph equipped with an integral valuation of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralHypergraph {
    pub graph: Hypergraph,
    pub psi: BTreeMap<Edge, BigInt>,
}

impl IntegralHypergraph {
    /// Constant valuation 1 on every edge.
    pub fn unit(graph: Hypergraph) -> Self {
        let psi = graph.edges().map(|e| (e.clone(), BigInt::from(1))).collect();
        IntegralHypergraph { graph, psi }
    }

    pub fn value(&self, e: &[u32]) -> BigInt {
        self.psi.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// K_q^r-divisibility of the valuation: for i in 0..r and every i-set T,
    /// binom(q-i, r-i) divides the total weight over edges containing T.
    pub fn is_divisible(&self, q: usize) -> Result<bool> {
        if !self.graph.uniform() {
            return Err(Error::NotUniform);
        }
        let r = self.graph.r_max();
        if q <= r {
            return Err(Error::BadOrder { q, r });
        }
        for i in 0..r {
            let modulus = BigInt::from(binomial(q - i, r - i));
            let mut sums: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for (e, w) in &self.psi {
                for t in combinations(e, i) {
                    let entry = sums.entry(t).or_insert_with(BigInt::zero);
                    *entry += w;
                }
            }
            for (_, s) in sums {
                if !(s % &modulus).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Integral K_q^r-decomposition of a divisible integral r-graph L on its own
/// ground: returns Phi with boundary Psi on L's edges and 0 on every other
/// r-set of K_{v(L)}^r, solved exactly over the clique/edge incidence.
/// With `reduce` the particular solution is pulled toward small l1 norm by
/// deterministic kernel moves.
pub fn wilson_decompose(l: &IntegralHypergraph, q: usize, reduce: bool) -> Result<IntegralValuation> {
    if !l.graph.uniform() {
        return Err(Error::NotUniform);
    }
    let r = l.graph.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    let m = l.graph.n();
    if m < q + r {
        return Err(Error::Precondition(format!("ground has {m} vertices, need at least {}", q + r)));
    }
    if !l.is_divisible(q)? {
        return Err(Error::NotDivisible("integral hypergraph fails the K_q^r congruences".to_string()));
    }
    let verts: Vec<u32> = (0..m as u32).collect();
    let r_sets = combinations(&verts, r);
    let q_sets = combinations(&verts, q);
    let col_of: BTreeMap<&[u32], usize> = q_sets.iter().map(|c| c.as_slice()).enumerate().map(|(i, c)| (c, i)).collect();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(r_sets.len());
    let mut b: Vec<BigInt> = Vec::with_capacity(r_sets.len());
    for e in &r_sets {
        let mut row = alloc::vec![BigInt::zero(); q_sets.len()];
        // cliques containing e: e plus any (q-r)-set of the remaining vertices
        let rest: Vec<u32> = verts.iter().copied().filter(|v| !e.contains(v)).collect();
        for ext in combinations(&rest, q - r) {
            let mut c: Vec<u32> = e.iter().copied().chain(ext.iter().copied()).collect();
            c.sort_unstable();
            row[col_of[c.as_slice()]] = BigInt::from(1);
        }
        a.push(row);
        b.push(l.value(e));
    }
    let (mut x, kernel) = solve_integer(&a, &b)
        .ok_or_else(|| Error::NoSolution("no integral solution; divisibility or ground size violated".to_string()))?;
    if reduce {
        reduce_l1(&mut x, &kernel, 50);
    }
    let mut phi = IntegralValuation::new(m, r, q);
    for (i, w) in x.into_iter().enumerate() {
        phi.add_weight(q_sets[i].clone(), w);
    }
    // boundary must reproduce Psi bit-exactly on every r-set of the ground
    let bound = phi.boundary();
    for e in &r_sets {
        let got = bound.get(e).cloned().unwrap_or_else(BigInt::zero);
        if got != l.value(e) {
            return Err(Error::NoSolution(format!("boundary mismatch at {e:?}")));
        }
    }
    Ok(phi)
}

/// Valuation matching a target boundary on every edge containing S:
/// decompose the link of S at lower uniformity and lift each clique P to P ∪ S.
/// The target's ground supplies the ambient vertex set.
pub fn cone_valuation(target: &IntegralHypergraph, s: &[u32], q: usize, reduce: bool) -> Result<IntegralValuation> {
    let r = target.graph.r_max();
    let m = target.graph.n();
    let mut s = s.to_vec();
    s.sort_unstable();
    let i = s.len();
    if i > r {
        return Err(Error::Precondition("cone root larger than the uniformity".to_string()));
    }
    let mut phi = IntegralValuation::new(m, r, q);
    if i == r {
        // degenerate cone: only the edge S itself; place its weight on one clique
        let w = target.value(&s);
        if !w.is_zero() {
            let rest: Vec<u32> = (0..m as u32).filter(|v| !s.contains(v)).collect();
            let mut clique: Vec<u32> = s.iter().copied().chain(rest.iter().copied().take(q - r)).collect();
            clique.sort_unstable();
            phi.add_weight(clique, w);
        }
        return Ok(phi);
    }
    // link of S: edges containing S, projected, relabeled densely
    let others: Vec<u32> = (0..m as u32).filter(|v| !s.contains(v)).collect();
    let to_local: BTreeMap<u32, u32> = others.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
    let mut link_graph = Hypergraph::new(others.len(), r - i);
    let mut link_psi: BTreeMap<Edge, BigInt> = BTreeMap::new();
    for (e, w) in &target.psi {
        if s.iter().all(|v| e.contains(v)) {
            let reduced: Edge = e.iter().filter(|v| !s.contains(v)).map(|v| to_local[v]).collect();
            link_graph.insert_edge(reduced.clone())?;
            link_psi.insert(reduced, w.clone());
        }
    }
    let link = IntegralHypergraph { graph: link_graph, psi: link_psi };
    if !link.is_divisible(q - i)? {
        return Err(Error::NotDivisible(format!("link of {s:?} fails the K_{}^{} congruences", q - i, r - i)));
    }
    let sub = wilson_decompose(&link, q - i, reduce)?;
    for (p, w) in &sub.weights {
        let mut clique: Vec<u32> = p.iter().map(|v| others[*v as usize]).chain(s.iter().copied()).collect();
        clique.sort_unstable();
        phi.add_weight(clique, w.clone());
    }
    Ok(phi)
}

/// True iff every support clique of Phi meets V(L) = {0..l.n()} inside a
/// single edge of L.
pub fn is_edge_intersecting(phi: &IntegralValuation, l: &Hypergraph) -> bool {
    let nl = l.n() as u32;
    for c in phi.weights.keys() {
        let inter: Vec<u32> = c.iter().copied().filter(|&v| v < nl).collect();
        if inter.is_empty() {
            continue;
        }
        let ok = l.edges().any(|f| inter.iter().all(|v| f.contains(v)));
        if !ok {
            return false;
        }
    }
    true
}

/// L-edge-intersecting integral K_q^r-decomposition of L inside
/// K_{v(L)+q+r}^r: stage 0 places all mass on a fixed fresh (q-r)-set, then
/// stage i cancels the residual boundary on every (r-i)-root cone. The stage
/// invariant (zero residual on non-L edges meeting V(L) in at least r-i
/// vertices) is asserted after every stage.
pub fn edge_intersecting_integral_decompose(l: &IntegralHypergraph, q: usize) -> Result<IntegralValuation> {
    if !l.graph.uniform() {
        return Err(Error::NotUniform);
    }
    let r = l.graph.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    if !l.is_divisible(q)? {
        return Err(Error::NotDivisible("target integral hypergraph fails the K_q^r congruences".to_string()));
    }
    let nl = l.graph.n();
    let m = nl + q + r;
    let fresh: Vec<u32> = (nl as u32..m as u32).collect();
    let mut phi = IntegralValuation::new(m, r, q);

    // stage 0: one clique V(e) ∪ X' per edge, weight Psi(e)
    let x_prime: Vec<u32> = fresh.iter().copied().take(q - r).collect();
    for (e, w) in &l.psi {
        let mut c: Vec<u32> = e.iter().copied().chain(x_prime.iter().copied()).collect();
        c.sort_unstable();
        phi.add_weight(c, w.clone());
    }
    check_stage(&phi, l, 0)?;

    for stage in 1..=r {
        let residual = residual_map(&phi, l);
        // roots of uniformity r - stage with outstanding residual
        let mut roots: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in residual.keys() {
            let inter: Vec<u32> = f.iter().copied().filter(|&v| (v as usize) < nl).collect();
            if inter.len() > r - stage {
                return Err(Error::Precondition(format!(
                    "stage {stage} invariant broken: residual at {f:?} with intersection {}",
                    inter.len()
                )));
            }
            if inter.len() == r - stage {
                // edge-intersecting inputs keep every such root inside an L-edge
                if !inter.is_empty() && !l.graph.edges().any(|le| inter.iter().all(|v| le.contains(v))) {
                    return Err(Error::Precondition(format!("root {inter:?} escapes every edge of L")));
                }
                roots.insert(inter);
            }
        }
        for s in roots {
            // restrict to the cone ground S ∪ X and cancel the residual there
            let mut ground: Vec<u32> = s.iter().copied().chain(fresh.iter().copied()).collect();
            ground.sort_unstable();
            let to_local: BTreeMap<u32, u32> = ground.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
            let mut local_graph = Hypergraph::new(ground.len(), r);
            let mut local_psi: BTreeMap<Edge, BigInt> = BTreeMap::new();
            for (f, w) in &residual {
                let inter: Vec<u32> = f.iter().copied().filter(|&v| (v as usize) < nl).collect();
                if inter == s {
                    let localized: Edge = f.iter().map(|v| to_local[v]).collect();
                    local_graph.insert_edge(localized.clone())?;
                    local_psi.insert(localized, w.clone());
                }
            }
            if local_psi.is_empty() {
                continue;
            }
            let local_target = IntegralHypergraph { graph: local_graph, psi: local_psi };
            let s_local: Vec<u32> = s.iter().map(|v| to_local[v]).collect();
            let correction = cone_valuation(&local_target, &s_local, q, true)?;
            for (c, w) in &correction.weights {
                let global: Vec<u32> = c.iter().map(|v| ground[*v as usize]).collect();
                phi.add_weight(global, w.clone());
            }
        }
        check_stage(&phi, l, stage)?;
    }
    if !is_edge_intersecting(&phi, &l.graph) {
        return Err(Error::Precondition("construction lost the edge-intersecting property".to_string()));
    }
    Ok(phi)
}

fn residual_map(phi: &IntegralValuation, l: &IntegralHypergraph) -> BTreeMap<Edge, BigInt> {
    let mut res = phi.boundary();
    for v in res.values_mut() {
        *v = -core::mem::take(v);
    }
    for (e, w) in &l.psi {
        let entry = res.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += w;
    }
    res.retain(|_, v| !v.is_zero());
    res
}

fn check_stage(phi: &IntegralValuation, l: &IntegralHypergraph, stage: usize) -> Result<()> {
    let nl = l.graph.n();
    let r = l.graph.r_max();
    for f in residual_map(phi, l).keys() {
        let inter = f.iter().filter(|&&v| (v as usize) < nl).count();
        if inter + stage >= r {
            return Err(Error::Precondition(format!(
                "stage {stage} left residual at {f:?} meeting V(L) in {inter} vertices"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn c6_unit() -> IntegralHypergraph {
        IntegralHypergraph::unit(Hypergraph::cycle(6))
    }

    #[test]
    fn boundary_single_clique() {
        let mut phi = IntegralValuation::new(5, 2, 3);
        phi.add_weight(alloc::vec![0, 1, 2], BigInt::from(1));
        let b = phi.boundary();
        assert_eq!(b.len(), 3);
        assert!(b.values().all(|w| *w == BigInt::from(1)));
        phi.add_weight(alloc::vec![0, 1, 2], BigInt::from(-1));
        assert!(phi.boundary().is_empty());
    }

    #[test]
    fn boundary_linearity_randomized() {
        use crate::rng::{seeded, uniform_below};
        let mut rng = seeded(5);
        for _ in 0..10 {
            let mut p1 = IntegralValuation::new(7, 2, 3);
            let mut p2 = IntegralValuation::new(7, 2, 3);
            let verts: Vec<u32> = (0..7).collect();
            let cliques = combinations(&verts, 3);
            for c in &cliques {
                p1.add_weight(c.clone(), BigInt::from(uniform_below(&mut rng, 7) as i64 - 3));
                p2.add_weight(c.clone(), BigInt::from(uniform_below(&mut rng, 7) as i64 - 3));
            }
            let a = BigInt::from(uniform_below(&mut rng, 9) as i64 - 4);
            let b = BigInt::from(uniform_below(&mut rng, 9) as i64 - 4);
            let mut combo = IntegralValuation::new(7, 2, 3);
            for (c, w) in &p1.weights {
                combo.add_weight(c.clone(), &a * w);
            }
            for (c, w) in &p2.weights {
                combo.add_weight(c.clone(), &b * w);
            }
            let b1 = p1.boundary();
            let b2 = p2.boundary();
            let bc = combo.boundary();
            let all_edges = combinations(&verts, 2);
            for e in &all_edges {
                let lhs = bc.get(e).cloned().unwrap_or_else(BigInt::zero);
                let rhs = &a * b1.get(e).cloned().unwrap_or_else(BigInt::zero)
                    + &b * b2.get(e).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn wilson_k7_unit() {
        let k7 = IntegralHypergraph::unit(Hypergraph::complete(7, 2));
        let phi = wilson_decompose(&k7, 3, true).unwrap();
        let b = phi.boundary();
        for e in Hypergraph::complete(7, 2).edges() {
            assert_eq!(b.get(e).unwrap(), &BigInt::from(1));
        }
        assert_eq!(b.len(), 21);
    }

    #[test]
    fn wilson_single_clique() {
        let mut g = Hypergraph::new(5, 2);
        for e in [[0u32, 1], [0, 2], [1, 2]] {
            g.insert_edge(e.to_vec()).unwrap();
        }
        let phi = wilson_decompose(&IntegralHypergraph::unit(g), 3, true).unwrap();
        assert_eq!(phi.weights.len(), 1);
        assert_eq!(phi.weights.get(&alloc::vec![0u32, 1, 2]).unwrap(), &BigInt::from(1));
    }

    #[test]
    fn wilson_c6_in_k11() {
        let mut g = Hypergraph::cycle(6);
        g.pad_vertices(11);
        let phi = wilson_decompose(&IntegralHypergraph::unit(g.clone()), 3, true).unwrap();
        let b = phi.boundary();
        for e in g.edges() {
            assert_eq!(b.get(e).cloned().unwrap_or_else(BigInt::zero), BigInt::from(1), "edge {e:?}");
        }
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn wilson_rejects_indivisible() {
        let k6 = IntegralHypergraph::unit(Hypergraph::complete(6, 2));
        assert!(matches!(wilson_decompose(&k6, 3, false), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn cone_zero_target() {
        let target = IntegralHypergraph { graph: Hypergraph::new(8, 2), psi: BTreeMap::new() };
        let phi = cone_valuation(&target, &[0], 3, false).unwrap();
        assert!(phi.weights.is_empty());
    }

    #[test]
    fn cone_full_root() {
        // |S| = r: weight placement on a single clique
        let mut graph = Hypergraph::new(7, 2);
        graph.insert_edge(alloc::vec![2, 5]).unwrap();
        let mut psi = BTreeMap::new();
        psi.insert(alloc::vec![2u32, 5], BigInt::from(4));
        let target = IntegralHypergraph { graph, psi };
        let phi = cone_valuation(&target, &[2, 5], 3, false).unwrap();
        assert_eq!(phi.boundary_at(&[2, 5]), BigInt::from(4));
        assert_eq!(phi.weights.len(), 1);
    }

    #[test]
    fn cone_vertex_root() {
        // |S| = 1, r = 2, q = 3: boundary on all edges through S matches the target
        let mut graph = Hypergraph::new(9, 2);
        let mut psi = BTreeMap::new();
        for (v, w) in [(1u32, 2i64), (2, 2), (3, -4)] {
            graph.insert_edge(alloc::vec![0, v]).unwrap();
            psi.insert(alloc::vec![0u32, v], BigInt::from(w));
        }
        let target = IntegralHypergraph { graph, psi: psi.clone() };
        let phi = cone_valuation(&target, &[0], 3, true).unwrap();
        for (e, w) in &psi {
            assert_eq!(&phi.boundary_at(e), w);
        }
        // zero on other edges through 0
        for v in 4..9u32 {
            assert!(phi.boundary_at(&[0, v]).is_zero());
        }
    }

    #[test]
    fn eiid_c6() {
        let l = c6_unit();
        let phi = edge_intersecting_integral_decompose(&l, 3).unwrap();
        assert_eq!(phi.m, 11);
        assert!(is_edge_intersecting(&phi, &l.graph));
        let b = phi.boundary();
        assert_eq!(b.len(), 6);
        for e in l.graph.edges() {
            assert_eq!(b.get(e).unwrap(), &BigInt::from(1));
        }
    }

    #[test]
    fn eiid_single_triangle() {
        let tri = Hypergraph::from_edges(3, 2, alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]]).unwrap();
        let l = IntegralHypergraph::unit(tri.clone());
        let phi = edge_intersecting_integral_decompose(&l, 3).unwrap();
        assert_eq!(phi.m, 3 + 5);
        assert!(is_edge_intersecting(&phi, &tri));
        let b = phi.boundary();
        for e in tri.edges() {
            assert_eq!(b.get(e).unwrap(), &BigInt::from(1));
        }
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn edge_intersecting_predicate() {
        let c6 = Hypergraph::cycle(6);
        let mut off = IntegralValuation::new(11, 2, 3);
        off.add_weight(alloc::vec![7, 8, 9], BigInt::from(1));
        assert!(is_edge_intersecting(&off, &c6));
        let mut bad = IntegralValuation::new(11, 2, 3);
        bad.add_weight(alloc::vec![0, 1, 3], BigInt::from(1)); // meets two disjoint edges of C_6
        assert!(!is_edge_intersecting(&bad, &c6));
    }
}
