//! Core hypergraph data model: r-bounded hypergraphs on dense integer labels,
//! degrees, links, cliques, divisibility, copy counting and decomposition
//! verification.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An edge is a strictly increasing list of vertex indices.
pub type Edge = Vec<u32>;

/// Binomial coefficient as u64 (desk scale; saturates would overflow long before use).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// All k-subsets of `items` (assumed sorted), in lexicographic order.
pub fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn normalize_edge(mut e: Edge) -> Result<Edge> {
    e.sort_unstable();
    let before = e.len();
    e.dedup();
    if e.is_empty() || e.len() != before {
        return Err(Error::BadEdge(format!("{e:?} empty or has repeats")));
    }
    Ok(e)
}

/// An r-bounded hypergraph on vertices `0..n`. Edges are stored sorted and
/// deduplicated; multiplicity lives in integral valuations, never here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    r_max: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new(n: usize, r_max: usize) -> Self {
        Hypergraph { n, r_max, edges: BTreeSet::new() }
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, r_max: usize, it: I) -> Result<Self> {
        let mut g = Hypergraph::new(n, r_max);
        for e in it {
            g.insert_edge(e)?;
        }
        Ok(g)
    }

    /// Complete r-graph K_n^r.
    pub fn complete(n: usize, r: usize) -> Self {
        let verts: Vec<u32> = (0..n as u32).collect();
        let edges = combinations(&verts, r).into_iter().collect();
        Hypergraph { n, r_max: r, edges }
    }

    /// Complete r-bounded hypergraph K_n^{[r]}: all edges of every size 1..=r.
    pub fn complete_bounded(n: usize, r: usize) -> Self {
        let verts: Vec<u32> = (0..n as u32).collect();
        let mut edges = BTreeSet::new();
        for i in 1..=r {
            edges.extend(combinations(&verts, i));
        }
        Hypergraph { n, r_max: r, edges }
    }

    /// Complete q-partite r-graph K_{q*m}^r, part j occupying vertices j*m..(j+1)*m.
    pub fn complete_partite(q: usize, m: usize, r: usize) -> Self {
        let mut g = Hypergraph::new(q * m, r);
        let parts: Vec<u32> = (0..q as u32).collect();
        for part_choice in combinations(&parts, r) {
            let mut stack = vec![Vec::with_capacity(r)];
            while let Some(cur) = stack.pop() {
                if cur.len() == r {
                    g.edges.insert(cur);
                    continue;
                }
                let j = part_choice[cur.len()] as usize;
                for t in 0..m {
                    let mut next: Vec<u32> = cur.clone();
                    next.push((j * m + t) as u32);
                    stack.push(next);
                }
            }
        }
        // stored sorted: partite labels are increasing across parts already
        g
    }

    /// 2-uniform cycle on n vertices.
    pub fn cycle(n: usize) -> Self {
        let mut g = Hypergraph::new(n, 2);
        for i in 0..n {
            let mut e = vec![i as u32, ((i + 1) % n) as u32];
            e.sort_unstable();
            g.edges.insert(e);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges.iter().cloned().collect()
    }

    pub fn is_edge(&self, e: &[u32]) -> bool {
        self.edges.contains(e)
    }

    pub fn insert_edge(&mut self, e: Edge) -> Result<()> {
        let e = normalize_edge(e)?;
        if e.len() > self.r_max {
            return Err(Error::BadEdge(format!("{e:?} exceeds r_max={}", self.r_max)));
        }
        if let Some(&v) = e.last() {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        self.edges.insert(e);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: &[u32]) -> bool {
        self.edges.remove(e)
    }

    /// True iff every edge has size exactly r_max.
    pub fn uniform(&self) -> bool {
        self.edges.iter().all(|e| e.len() == self.r_max)
    }

    /// The subgraph with exactly the edges of uniformity i (same vertex set).
    pub fn uniformity_slice(&self, i: usize) -> Hypergraph {
        Hypergraph {
            n: self.n,
            r_max: i,
            edges: self.edges.iter().filter(|e| e.len() == i).cloned().collect(),
        }
    }

    /// Number of edges containing S; degree(G, {}) = e(G).
    pub fn degree(&self, s: &[u32]) -> Result<usize> {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        for &v in &s {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        Ok(self.edges.iter().filter(|e| is_subset(&s, e)).count())
    }

    /// Minimum (r-1)-set degree of a uniform hypergraph.
    pub fn min_codegree(&self) -> Result<usize> {
        if !self.uniform() || self.r_max == 0 {
            return Err(Error::NotUniform);
        }
        let verts: Vec<u32> = (0..self.n as u32).collect();
        let mut min = usize::MAX;
        for s in combinations(&verts, self.r_max - 1) {
            let d = self.degree(&s)?;
            min = min.min(d);
        }
        Ok(if min == usize::MAX { 0 } else { min })
    }

    /// Maximum (r-1)-set degree.
    pub fn max_codegree(&self) -> usize {
        if self.r_max == 0 || self.edges.is_empty() {
            return 0;
        }
        let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for e in &self.edges {
            for s in combinations(e, self.r_max - 1) {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Link hypergraph { e \ S : S ⊆ e ∈ G } on the same label space.
    /// Edges equal to S itself would become empty and are dropped.
    pub fn link(&self, s: &[u32]) -> Result<Hypergraph> {
        let mut s = s.to_vec();
        s.sort_unstable();
        for &v in &s {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        let mut out = Hypergraph::new(self.n, self.r_max.saturating_sub(s.len()).max(1));
        for e in &self.edges {
            if is_subset(&s, e) {
                let rest: Edge = e.iter().copied().filter(|v| !s.contains(v)).collect();
                if !rest.is_empty() {
                    out.edges.insert(rest);
                }
            }
        }
        Ok(out)
    }

    /// K_q^r-divisibility: for every i in 0..r and every i-set T,
    /// binom(q-i, r-i) divides degree(T). Zero degrees pass (0 divides).
    pub fn is_divisible(&self, q: usize) -> Result<bool> {
        if !self.uniform() {
            return Err(Error::NotUniform);
        }
        let r = self.r_max;
        if q <= r {
            return Err(Error::BadOrder { q, r });
        }
        for i in 0..r {
            let modulus = binomial(q - i, r - i);
            // only i-sets inside edges have nonzero degree; zero passes trivially
            let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            for e in &self.edges {
                for t in combinations(e, i) {
                    *counts.entry(t).or_insert(0) += 1;
                }
            }
            if i == 0 && self.edges.is_empty() {
                continue;
            }
            if i == 0 {
                if self.edges.len() as u64 % modulus != 0 {
                    return Ok(false);
                }
                continue;
            }
            for (_, c) in counts {
                if c % modulus != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All q-cliques (q-sets whose r-subsets are all edges), lexicographic.
    pub fn enumerate_cliques(&self, q: usize) -> Result<Vec<Vec<u32>>> {
        if !self.uniform() {
            return Err(Error::NotUniform);
        }
        let r = self.r_max;
        let mut out = Vec::new();
        let mut partial: Vec<u32> = Vec::with_capacity(q);
        self.clique_rec(q, r, 0, &mut partial, &mut out);
        Ok(out)
    }

    fn clique_rec(&self, q: usize, r: usize, from: u32, partial: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if partial.len() == q {
            out.push(partial.clone());
            return;
        }
        // not enough vertices left
        let need = q - partial.len();
        if (self.n as u32).saturating_sub(from) < need as u32 {
            return;
        }
        for v in from..self.n as u32 {
            if partial.len() + 1 >= r {
                // all r-subsets of partial+v containing v must be edges
                let ok = combinations(partial, r - 1).into_iter().all(|mut t| {
                    t.push(v);
                    self.edges.contains(&t)
                });
                if !ok {
                    continue;
                }
            }
            partial.push(v);
            self.clique_rec(q, r, v + 1, partial, out);
            partial.pop();
        }
    }

    /// t-blow-up: vertex v becomes {v*t .. v*t+t-1}; an edge of size s becomes t^s edges.
    pub fn blow_up(&self, t: usize) -> Result<Hypergraph> {
        if t == 0 {
            return Err(Error::Precondition("blow-up factor must be >= 1".to_string()));
        }
        let mut out = Hypergraph::new(self.n * t, self.r_max);
        for e in &self.edges {
            let mut stack: Vec<Edge> = vec![Vec::with_capacity(e.len())];
            while let Some(cur) = stack.pop() {
                if cur.len() == e.len() {
                    out.edges.insert(cur);
                    continue;
                }
                let v = e[cur.len()] as usize;
                for j in 0..t {
                    let mut next = cur.clone();
                    next.push((v * t + j) as u32);
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Union on the larger label space.
    pub fn union(&self, other: &Hypergraph) -> Hypergraph {
        let mut out = Hypergraph {
            n: self.n.max(other.n),
            r_max: self.r_max.max(other.r_max),
            edges: self.edges.clone(),
        };
        out.edges.extend(other.edges.iter().cloned());
        out
    }

    /// Edges of self not in other.
    pub fn difference(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            n: self.n,
            r_max: self.r_max,
            edges: self.edges.difference(&other.edges).cloned().collect(),
        }
    }

    /// Induced subhypergraph on S (labels kept).
    pub fn induced(&self, s: &[u32]) -> Hypergraph {
        let set: BTreeSet<u32> = s.iter().copied().collect();
        Hypergraph {
            n: self.n,
            r_max: self.r_max,
            edges: self.edges.iter().filter(|e| e.iter().all(|v| set.contains(v))).cloned().collect(),
        }
    }

    /// Vertices that occur in at least one edge.
    pub fn support(&self) -> BTreeSet<u32> {
        self.edges.iter().flat_map(|e| e.iter().copied()).collect()
    }

    /// Grow the vertex range (labels stay stable).
    pub fn pad_vertices(&mut self, n: usize) {
        self.n = self.n.max(n);
    }

    /// Relabel vertices through `map` (must be injective on the support).
    pub fn relabeled(&self, map: &BTreeMap<u32, u32>, n: usize) -> Result<Hypergraph> {
        let mut out = Hypergraph::new(n, self.r_max);
        for e in &self.edges {
            let img: Result<Edge> = e
                .iter()
                .map(|v| map.get(v).copied().ok_or(Error::VertexOutOfRange { v: *v, n }))
                .collect();
            out.insert_edge(img?)?;
        }
        if out.edges.len() != self.edges.len() {
            return Err(Error::Precondition("relabeling collapsed edges".to_string()));
        }
        Ok(out)
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    // both sorted
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            if b == s {
                continue 'outer;
            }
            if b > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// A multiset of q-cliques over some ground hypergraph. With the packing flag
/// set, the edge sets of distinct cliques are meant to be pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueFamily {
    pub q: usize,
    pub cliques: Vec<Vec<u32>>,
    pub packing: bool,
}

impl CliqueFamily {
    pub fn new(q: usize, cliques: Vec<Vec<u32>>) -> Self {
        let mut cliques = cliques;
        for c in &mut cliques {
            c.sort_unstable();
        }
        CliqueFamily { q, cliques, packing: false }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// True iff the r-subsets of the family's cliques partition E(G) exactly.
/// A clique whose r-subsets are not all edges of G is an error, not `false`.
pub fn verify_decomposition(g: &Hypergraph, fam: &CliqueFamily) -> Result<bool> {
    if !g.uniform() {
        return Err(Error::NotUniform);
    }
    let r = g.r_max();
    let mut seen: BTreeMap<Edge, usize> = BTreeMap::new();
    for c in &fam.cliques {
        if c.len() != fam.q {
            return Err(Error::CliqueNotInGround(format!("{c:?} has wrong order")));
        }
        for e in combinations(c, r) {
            if !g.is_edge(&e) {
                return Err(Error::CliqueNotInGround(format!("{c:?} misses edge {e:?}")));
            }
            *seen.entry(e).or_insert(0) += 1;
        }
    }
    if seen.values().any(|&c| c != 1) {
        return Ok(false);
    }
    Ok(seen.len() == g.edge_count())
}

/// True iff the cliques are cliques of G with pairwise disjoint edge sets.
pub fn verify_packing(g: &Hypergraph, fam: &CliqueFamily) -> Result<bool> {
    let r = g.r_max();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for c in &fam.cliques {
        for e in combinations(c, r) {
            if !g.is_edge(&e) {
                return Err(Error::CliqueNotInGround(format!("{c:?} misses edge {e:?}")));
            }
            if !seen.insert(e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-uniformity densities e(G^{(i)}) / binom(n, i), i = 1..=r, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityVector(pub Vec<BigRational>);

impl DensityVector {
    pub fn of(g: &Hypergraph) -> DensityVector {
        let mut v = Vec::with_capacity(g.r_max());
        for i in 1..=g.r_max() {
            let count = g.edges().filter(|e| e.len() == i).count();
            let total = binomial(g.n(), i);
            if total == 0 {
                v.push(BigRational::zero());
            } else {
                v.push(BigRational::new(BigInt::from(count), BigInt::from(total)));
            }
        }
        DensityVector(v)
    }
}

/// Number of subgraph copies of F in G: distinct pairs (vertex image, edge image)
/// isomorphic to F. Deduplication by canonical image handles automorphisms.
pub fn count_copies(g: &Hypergraph, f: &Hypergraph, node_cap: u64) -> Result<u64> {
    let fv = f.n();
    if fv > g.n() {
        return Ok(0);
    }
    let f_edges = f.edge_vec();
    // edges grouped by their maximum vertex, checked as soon as it is placed
    let mut by_max: Vec<Vec<&Edge>> = vec![Vec::new(); fv];
    for e in &f_edges {
        by_max[*e.last().unwrap() as usize].push(e);
    }
    let mut images: BTreeSet<(Vec<u32>, Vec<Edge>)> = BTreeSet::new();
    let mut map: Vec<u32> = Vec::with_capacity(fv);
    let mut used: Vec<bool> = vec![false; g.n()];
    let mut nodes: u64 = 0;
    count_rec(g, fv, &by_max, &f_edges, &mut map, &mut used, &mut images, &mut nodes, node_cap)?;
    Ok(images.len() as u64)
}

#[allow(clippy::too_many_arguments)]
fn count_rec(
    g: &Hypergraph,
    fv: usize,
    by_max: &[Vec<&Edge>],
    f_edges: &[Edge],
    map: &mut Vec<u32>,
    used: &mut Vec<bool>,
    images: &mut BTreeSet<(Vec<u32>, Vec<Edge>)>,
    nodes: &mut u64,
    cap: u64,
) -> Result<()> {
    if map.len() == fv {
        let mut verts: Vec<u32> = map.clone();
        verts.sort_unstable();
        let mut edges: Vec<Edge> = f_edges
            .iter()
            .map(|e| {
                let mut img: Edge = e.iter().map(|&v| map[v as usize]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        edges.sort();
        images.insert((verts, edges));
        return Ok(());
    }
    let k = map.len();
    for u in 0..g.n() as u32 {
        if used[u as usize] {
            continue;
        }
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded { needed: *nodes, cap });
        }
        // every F-edge fully decided by placing k must land on an edge of G
        let ok = by_max[k].iter().all(|e| {
            let mut img: Edge = e.iter().map(|&v| if v as usize == k { u } else { map[v as usize] }).collect();
            img.sort_unstable();
            g.is_edge(&img)
        });
        if !ok {
            continue;
        }
        map.push(u);
        used[u as usize] = true;
        count_rec(g, fv, by_max, f_edges, map, used, images, nodes, cap)?;
        map.pop();
        used[u as usize] = false;
    }
    Ok(())
}

/// Handshake identity used as a cross-check: sum of i-set degrees equals
/// e(G) * binom(r, i) for uniform G.
pub fn handshake_sum(g: &Hypergraph, i: usize) -> u64 {
    let mut total: u64 = 0;
    for e in g.edges() {
        total += binomial(e.len(), i);
    }
    total
}

pub fn rational_one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_basics() {
        let k7 = Hypergraph::complete(7, 2);
        assert_eq!(k7.degree(&[0]).unwrap(), 6);
        assert_eq!(k7.degree(&[]).unwrap(), 21);
        let c6 = Hypergraph::cycle(6);
        assert_eq!(c6.degree(&[0, 1]).unwrap(), 1);
        assert!(k7.degree(&[9]).is_err());
    }

    #[test]
    fn codegree_basics() {
        assert_eq!(Hypergraph::complete(7, 2).min_codegree().unwrap(), 6);
        assert_eq!(Hypergraph::complete(8, 3).min_codegree().unwrap(), 6);
        assert_eq!(Hypergraph::cycle(6).min_codegree().unwrap(), 2);
    }

    #[test]
    fn divisibility_basics() {
        assert!(Hypergraph::complete(7, 2).is_divisible(3).unwrap());
        assert!(!Hypergraph::complete(6, 2).is_divisible(3).unwrap());
        assert!(Hypergraph::complete(8, 3).is_divisible(4).unwrap());
        // C_6 is K_3-divisible but not K_3-decomposable
        assert!(Hypergraph::cycle(6).is_divisible(3).unwrap());
        assert!(Hypergraph::complete(7, 2).is_divisible(2).is_err());
    }

    #[test]
    fn link_basics() {
        let k7 = Hypergraph::complete(7, 2);
        let l = k7.link(&[0]).unwrap();
        assert_eq!(l.edge_count(), 6);
        assert!(l.edges().all(|e| e.len() == 1));
        let k8 = Hypergraph::complete(8, 3);
        assert_eq!(k8.link(&[0, 1]).unwrap().edge_count(), 6);
        let c6 = Hypergraph::cycle(6);
        let lc = c6.link(&[0]).unwrap();
        assert_eq!(lc.edge_vec(), vec![vec![1], vec![5]]);
    }

    #[test]
    fn clique_enumeration() {
        assert_eq!(Hypergraph::complete(5, 2).enumerate_cliques(3).unwrap().len(), 10);
        assert!(Hypergraph::cycle(6).enumerate_cliques(3).unwrap().is_empty());
        let tripartite = Hypergraph::complete_partite(3, 5, 2);
        assert_eq!(tripartite.enumerate_cliques(3).unwrap().len(), 125);
        // lexicographic order
        let cl = Hypergraph::complete(4, 2).enumerate_cliques(3).unwrap();
        assert_eq!(cl, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn verify_decomposition_basics() {
        let tri = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let fam = CliqueFamily::new(3, vec![vec![0, 1, 2]]);
        assert!(verify_decomposition(&tri, &fam).unwrap());
        let k7 = Hypergraph::complete(7, 2);
        assert!(!verify_decomposition(&k7, &CliqueFamily::new(3, vec![])).unwrap());
    }

    #[test]
    fn copy_counts() {
        let k4 = Hypergraph::complete(4, 2);
        let k3 = Hypergraph::complete(3, 2);
        assert_eq!(count_copies(&k4, &k3, 1 << 20).unwrap(), 4);
        // single r-edge pattern counts e(G) when v(F) = r
        let single = Hypergraph::from_edges(2, 2, vec![vec![0, 1]]).unwrap();
        let c6 = Hypergraph::cycle(6);
        assert_eq!(count_copies(&c6, &single, 1 << 20).unwrap(), 6);
    }

    #[test]
    fn blow_up_counts() {
        let k3 = Hypergraph::complete(3, 2);
        let b = k3.blow_up(2).unwrap();
        assert_eq!(b.n(), 6);
        assert_eq!(b.edge_count(), 12);
        let tri = Hypergraph::from_edges(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(tri.blow_up(2).unwrap().edge_count(), 8);
        assert_eq!(k3.blow_up(1).unwrap(), k3);
    }

    #[test]
    fn blow_up_density_preservation() {
        let mut f = Hypergraph::new(4, 3);
        f.insert_edge(vec![0]).unwrap();
        f.insert_edge(vec![1, 2]).unwrap();
        f.insert_edge(vec![0, 2, 3]).unwrap();
        f.insert_edge(vec![1, 3]).unwrap();
        let t = 3;
        let b = f.blow_up(t).unwrap();
        for i in 1..=3 {
            let before = f.edges().filter(|e| e.len() == i).count();
            let after = b.edges().filter(|e| e.len() == i).count();
            assert_eq!(after, before * t.pow(i as u32));
        }
    }

    #[test]
    fn handshake() {
        let g = Hypergraph::complete(8, 3);
        for i in 0..=3 {
            let verts: Vec<u32> = (0..8).collect();
            let total: u64 = combinations(&verts, i).iter().map(|t| g.degree(t).unwrap() as u64).sum();
            assert_eq!(total, g.edge_count() as u64 * binomial(3, i));
            assert_eq!(total, handshake_sum(&g, i));
        }
    }

    #[test]
    fn density_vector_basics() {
        let g = Hypergraph::complete_bounded(5, 2);
        let d = DensityVector::of(&g);
        assert!(d.0.iter().all(|x| x.is_one()));
        let e = Hypergraph::new(5, 2);
        assert!(DensityVector::of(&e).0.iter().all(|x| x.is_zero()));
        let u = Hypergraph::complete(5, 2);
        let du = DensityVector::of(&u);
        assert!(du.0[0].is_zero() && du.0[1].is_one());
    }

    #[test]
    fn link_degree_duality() {
        let g = Hypergraph::complete(8, 3);
        for s in [vec![0], vec![1, 5]] {
            assert_eq!(g.link(&s).unwrap().edge_count(), g.degree(&s).unwrap());
        }
    }

    #[test]
    fn decomposition_implies_divisibility_and_count() {
        // a valid decomposition forces |Q| * binom(q, r) = e(G) and divisibility
        let g = Hypergraph::complete(9, 2);
        let sts9 = CliqueFamily::new(
            3,
            vec![
                vec![0, 1, 2],
                vec![3, 4, 5],
                vec![6, 7, 8],
                vec![0, 3, 6],
                vec![1, 4, 7],
                vec![2, 5, 8],
                vec![0, 4, 8],
                vec![1, 5, 6],
                vec![2, 3, 7],
                vec![0, 5, 7],
                vec![1, 3, 8],
                vec![2, 4, 6],
            ],
        );
        assert!(verify_decomposition(&g, &sts9).unwrap());
        assert_eq!(sts9.len() as u64 * binomial(3, 2), g.edge_count() as u64);
        assert!(g.is_divisible(3).unwrap());
    }
}
