//! Absorber assembly: an integral decomposition of the target L supplies
//! positive and negative clique copies; every copy gets an orthogonal booster,
//! every matched copy pair at an r-set gets an independent hinge, and the two
//! global decompositions A1 (of A) and A2 (of A ∪ L) are read off the on/off
//! and left/right families. An exhaustive omni-absorber glues one private
//! absorber per divisible subgraph of the reserve graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gadgets::{build_hinge, build_orthogonal_booster, Booster, Hinge, LabelArena, Layer, RootedGadget};
use crate::hypergraph::{combinations, verify_decomposition, CliqueFamily, Edge, Hypergraph};
use crate::integral::{edge_intersecting_integral_decompose, IntegralHypergraph};

/// Record of how an absorber was assembled.
#[derive(Debug, Clone, Default)]
pub struct AbsorberStructure {
    pub positive_copies: usize,
    pub negative_copies: usize,
    pub boosters: usize,
    pub hinges: usize,
    /// matched pairs per r-set: (edge, negative copy clique, positive copy clique)
    pub matchings: Vec<(Edge, Vec<u32>, Vec<u32>)>,
}

/// A K_q^r-absorber for L: V(L) independent in `graph`, `a1` decomposes the
/// graph, `a2` decomposes graph ∪ L, with layered partite structure.
#[derive(Debug, Clone)]
pub struct Absorber {
    pub q: usize,
    pub r: usize,
    /// target L, padded with isolated vertices when v(L) < q + r
    pub target: Hypergraph,
    pub graph: Hypergraph,
    pub a1: CliqueFamily,
    pub a2: CliqueFamily,
    pub layers: Vec<Layer>,
    pub structure: AbsorberStructure,
}

impl Absorber {
    pub fn roots(&self) -> Vec<u32> {
        (0..self.target.n() as u32).collect()
    }

    pub fn rooted_gadget(&self) -> RootedGadget {
        RootedGadget {
            graph: self.graph.clone(),
            roots: self.roots(),
            layers: Some(self.layers.clone()),
        }
    }

    pub fn graph_with_target(&self) -> Hypergraph {
        self.graph.union(&self.target)
    }
}

/// Build the layered partite absorber for a divisible target L.
pub fn build_absorber(l: &Hypergraph, q: usize) -> Result<Absorber> {
    if !l.uniform() {
        return Err(Error::NotUniform);
    }
    let r = l.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    if !l.is_divisible(q)? {
        return Err(Error::NotDivisible("absorber target is not K_q^r-divisible".to_string()));
    }
    let mut target = l.clone();
    target.pad_vertices(q + r); // isolated-vertex padding when v(L) < q+r
    let nl = target.n();

    let phi = edge_intersecting_integral_decompose(&IntegralHypergraph::unit(target.clone()), q)?;
    let ground_m = phi.m;

    // fixed ordering of the clique copies: positives in map order, then negatives
    #[derive(Clone)]
    struct CliqueCopy {
        clique: Vec<u32>,
        positive: bool,
    }
    let mut copies: Vec<CliqueCopy> = Vec::new();
    {
        let (pos, neg) = phi.signed_multisets();
        for c in pos {
            copies.push(CliqueCopy { clique: c, positive: true });
        }
        for c in neg {
            copies.push(CliqueCopy { clique: c, positive: false });
        }
    }

    let mut arena = LabelArena::new(ground_m as u32);
    let mut boosters: Vec<Booster> = Vec::with_capacity(copies.len());
    for c in &copies {
        boosters.push(build_orthogonal_booster(&c.clique, r, &mut arena)?);
    }

    // matchings per r-set of the ground with clique support
    let mut incident: BTreeMap<Edge, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (k, c) in copies.iter().enumerate() {
        for f in combinations(&c.clique, r) {
            let entry = incident.entry(f).or_default();
            if c.positive {
                entry.0.push(k);
            } else {
                entry.1.push(k);
            }
        }
    }
    let mut pairs: Vec<(Edge, usize, usize)> = Vec::new(); // (f, negative copy, positive copy)
    for (f, (mut pos_at, neg_at)) in incident {
        // deterministic: order positives by (clique, copy index); the least is
        // left unmatched on L-edges
        pos_at.sort_by(|&a, &b| copies[a].clique.cmp(&copies[b].clique).then(a.cmp(&b)));
        let expected_gap = usize::from(target.is_edge(&f));
        if pos_at.len() != neg_at.len() + expected_gap {
            return Err(Error::Precondition(format!(
                "boundary bookkeeping broken at {f:?}: {} positive vs {} negative copies",
                pos_at.len(),
                neg_at.len()
            )));
        }
        let matched_pos = &pos_at[expected_gap..];
        for (i, &nk) in neg_at.iter().enumerate() {
            pairs.push((f.clone(), nk, matched_pos[i]));
        }
    }

    // hinges: roots are the on-cliques of the two boosters through f
    let mut hinges: Vec<Hinge> = Vec::with_capacity(pairs.len());
    let mut matched_edges_of_copy: Vec<Vec<Edge>> = vec![Vec::new(); copies.len()];
    for (f, nk, pk) in &pairs {
        let s1 = boosters[*nk]
            .on_clique_at(f)
            .cloned()
            .ok_or_else(|| Error::Precondition("missing on-clique at a matched edge".to_string()))?;
        let s2 = boosters[*pk]
            .on_clique_at(f)
            .cloned()
            .ok_or_else(|| Error::Precondition("missing on-clique at a matched edge".to_string()))?;
        // hinge prerequisite: the two root cliques meet exactly in f
        let inter: Vec<u32> = s1.iter().copied().filter(|v| s2.binary_search(v).is_ok()).collect();
        if &inter != f {
            return Err(Error::Precondition(format!(
                "on-cliques at {f:?} overlap in {inter:?} instead of the edge"
            )));
        }
        hinges.push(build_hinge(&s1, &s2, r, &mut arena)?);
        matched_edges_of_copy[*nk].push(f.clone());
        matched_edges_of_copy[*pk].push(f.clone());
    }

    // assemble the absorber graph and both decompositions
    let mut graph = Hypergraph::new(arena.extent() as usize, r);
    for b in &boosters {
        graph = graph.union(&b.graph);
    }
    for h in &hinges {
        graph = graph.union(&h.graph);
    }
    graph.pad_vertices(arena.extent() as usize);

    let mut a1: Vec<Vec<u32>> = Vec::new();
    let mut a2: Vec<Vec<u32>> = Vec::new();
    for (k, c) in copies.iter().enumerate() {
        let b = &boosters[k];
        if c.positive {
            // a1 uses off; a2 uses on minus the cliques at matched edges
            a1.extend(b.off.cliques.iter().cloned());
            let removed: BTreeSet<Vec<u32>> = matched_edges_of_copy[k]
                .iter()
                .map(|f| b.on_clique_at(f).cloned().expect("on-clique exists"))
                .collect();
            a2.extend(b.on.cliques.iter().filter(|cl| !removed.contains(*cl)).cloned());
        } else {
            // a1 uses on minus the cliques at every edge of the copy; a2 uses off
            let removed: BTreeSet<Vec<u32>> = combinations(&c.clique, r)
                .iter()
                .map(|f| b.on_clique_at(f).cloned().expect("on-clique exists"))
                .collect();
            a1.extend(b.on.cliques.iter().filter(|cl| !removed.contains(*cl)).cloned());
            a2.extend(b.off.cliques.iter().cloned());
        }
    }
    for h in &hinges {
        a1.extend(h.left.cliques.iter().cloned());
        a2.extend(h.right.cliques.iter().cloned());
    }

    // layers: ground-fresh block first, then boosters, then hinges
    let mut layers: Vec<Layer> = Vec::new();
    let ground_fresh: Vec<u32> = (nl as u32..ground_m as u32).collect();
    layers.push(Layer {
        coloring: ground_fresh.iter().map(|&v| (v, v as usize % q)).collect(),
        vertices: ground_fresh,
    });
    for b in &boosters {
        let g = b.rooted_gadget();
        layers.extend(g.layers.unwrap_or_default());
    }
    for h in &hinges {
        let g = h.rooted_gadget();
        layers.extend(g.layers.unwrap_or_default());
    }

    let structure = AbsorberStructure {
        positive_copies: copies.iter().filter(|c| c.positive).count(),
        negative_copies: copies.iter().filter(|c| !c.positive).count(),
        boosters: boosters.len(),
        hinges: hinges.len(),
        matchings: pairs
            .iter()
            .map(|(f, nk, pk)| (f.clone(), copies[*nk].clique.clone(), copies[*pk].clique.clone()))
            .collect(),
    };

    let absorber = Absorber {
        q,
        r,
        target,
        graph,
        a1: CliqueFamily::new(q, a1),
        a2: CliqueFamily::new(q, a2),
        layers,
        structure,
    };
    let report = verify_absorber(&absorber)?;
    if !report.all_ok() {
        return Err(Error::Precondition(format!("constructed absorber failed verification: {report:?}")));
    }
    Ok(absorber)
}

/// Per-check verification report for an absorber.
#[derive(Debug, Clone)]
pub struct AbsorberReport {
    pub roots_independent: bool,
    pub a1_decomposes: bool,
    pub a2_decomposes: bool,
    pub edge_intersecting: bool,
    pub partite_degenerate: bool,
    pub graph_edges: usize,
    pub a1_cliques: usize,
    pub a2_cliques: usize,
    pub vertices: usize,
}

impl AbsorberReport {
    pub fn all_ok(&self) -> bool {
        self.roots_independent
            && self.a1_decomposes
            && self.a2_decomposes
            && self.edge_intersecting
            && self.partite_degenerate
    }
}

/// Check the five defining properties; failures are reported, not raised.
pub fn verify_absorber(ab: &Absorber) -> Result<AbsorberReport> {
    let nl = ab.target.n() as u32;
    let roots_independent = ab.graph.edges().all(|e| !e.iter().all(|&v| v < nl));
    let a1_decomposes = verify_decomposition(&ab.graph, &ab.a1).unwrap_or(false);
    let a2_decomposes = verify_decomposition(&ab.graph_with_target(), &ab.a2).unwrap_or(false);
    let edge_intersecting = ab.graph.edges().all(|e| {
        let inter: Vec<u32> = e.iter().copied().filter(|&v| v < nl).collect();
        inter.is_empty() || ab.target.edges().any(|f| inter.iter().all(|v| f.contains(v)))
    });
    let gadget = ab.rooted_gadget();
    let partite_degenerate = is_rooted_partite_degenerate(&gadget, 2, ab.q)?;
    Ok(AbsorberReport {
        roots_independent,
        a1_decomposes,
        a2_decomposes,
        edge_intersecting,
        partite_degenerate,
        graph_edges: ab.graph.edge_count(),
        a1_cliques: ab.a1.len(),
        a2_cliques: ab.a2.len(),
        vertices: ab.graph.support().len(),
    })
}

/// (d, q)-rooted partite degeneracy: with the layer order given, every edge
/// whose last layer is i must be partite across that layer's q parts, and the
/// out-of-layer vertices of all such edges together number at most d*q.
pub fn is_rooted_partite_degenerate(h: &RootedGadget, d: usize, q: usize) -> Result<bool> {
    let Some(layers) = &h.layers else {
        return Err(Error::Precondition("gadget carries no layer annotation".to_string()));
    };
    let mut layer_of: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, layer) in layers.iter().enumerate() {
        for &v in &layer.vertices {
            if layer_of.insert(v, i).is_some() {
                return Ok(false); // layers overlap
            }
            if h.roots.binary_search(&v).is_ok() {
                return Ok(false); // root inside a layer
            }
        }
    }
    for v in h.non_root_vertices() {
        if !layer_of.contains_key(&v) {
            return Ok(false); // uncovered non-root vertex
        }
    }
    let mut out_of_layer: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); layers.len()];
    for e in h.graph.edges() {
        let last = e.iter().filter_map(|v| layer_of.get(v)).max();
        let Some(&last) = last else {
            return Ok(false); // edge entirely inside the roots
        };
        let layer = &layers[last];
        let mut seen_colors = BTreeSet::new();
        for v in e {
            match layer_of.get(v) {
                Some(&i) if i == last => {
                    let Some(&c) = layer.coloring.get(v) else {
                        return Ok(false);
                    };
                    if c >= q || !seen_colors.insert(c) {
                        return Ok(false);
                    }
                }
                _ => {
                    out_of_layer[last].insert(*v);
                }
            }
        }
    }
    Ok(out_of_layer.iter().all(|s| s.len() <= d * q))
}

/// One absorbed subgraph inside an omni-absorber.
#[derive(Debug, Clone)]
pub struct OmniEntry {
    pub subgraph: Hypergraph,
    pub a1: CliqueFamily,
    pub a2: CliqueFamily,
}

/// Exhaustive omni-absorber for a reserve graph X: one private absorber per
/// divisible subgraph of X, on pairwise fresh vertices outside V(X).
#[derive(Debug, Clone)]
pub struct OmniAbsorber {
    pub q: usize,
    pub r: usize,
    pub reserves: Hypergraph,
    pub graph: Hypergraph,
    pub entries: Vec<OmniEntry>,
    /// max number of decomposition-family members sharing one edge of A ∪ X
    pub refinement: usize,
}

impl OmniAbsorber {
    /// The decomposition function: a2 of the matching entry plus a1 of all
    /// others; decomposes graph ∪ L for every divisible L ⊆ X.
    pub fn decomposition_for(&self, l: &Hypergraph) -> Option<CliqueFamily> {
        let key: BTreeSet<Edge> = l.edges().cloned().collect();
        let idx = self
            .entries
            .iter()
            .position(|en| en.subgraph.edges().cloned().collect::<BTreeSet<_>>() == key)?;
        let mut cliques = self.entries[idx].a2.cliques.clone();
        for (j, en) in self.entries.iter().enumerate() {
            if j != idx {
                cliques.extend(en.a1.cliques.iter().cloned());
            }
        }
        Some(CliqueFamily::new(self.q, cliques))
    }
}

/// All K_q^r-divisible subgraphs of X (including the empty one), in a
/// deterministic order.
pub fn divisible_subgraphs(x: &Hypergraph, q: usize) -> Result<Vec<Hypergraph>> {
    if !x.uniform() {
        return Err(Error::NotUniform);
    }
    let edges = x.edge_vec();
    let m = edges.len();
    if m > 30 {
        return Err(Error::CapExceeded { needed: m as u64, cap: 30 });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let chosen: Vec<Edge> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
        let sub = Hypergraph::from_edges(x.n(), x.r_max(), chosen)?;
        if sub.is_divisible(q)? {
            out.push(sub);
        }
    }
    Ok(out)
}

/// Build the exhaustive omni-absorber over X with at most `cap` edges.
pub fn build_omni_absorber_exhaustive(x: &Hypergraph, q: usize, cap: usize) -> Result<OmniAbsorber> {
    if x.edge_count() > cap {
        return Err(Error::CapExceeded { needed: x.edge_count() as u64, cap: cap as u64 });
    }
    let r = x.r_max();
    let subgraphs = divisible_subgraphs(x, q)?;
    let mut entries: Vec<OmniEntry> = Vec::with_capacity(subgraphs.len());
    let mut graph = Hypergraph::new(x.n(), r);
    let mut next_fresh = x.n().max(q + r) as u32;
    for l in subgraphs {
        let ab = build_absorber(&l, q)?;
        // keep V(X) labels, move everything else into the shared fresh range
        let shared = x.n() as u32;
        let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
        let mut fresh_span = 0u32;
        let mut all_labels: BTreeSet<u32> = ab.graph.support();
        all_labels.extend(0..ab.target.n() as u32);
        for v in all_labels {
            if v < shared {
                rename.insert(v, v);
            } else {
                rename.insert(v, next_fresh + fresh_span);
                fresh_span += 1;
            }
        }
        next_fresh += fresh_span;
        let relabeled = ab.graph.relabeled(&rename, next_fresh as usize)?;
        let relabel_fam = |fam: &CliqueFamily| {
            CliqueFamily::new(
                q,
                fam.cliques.iter().map(|c| c.iter().map(|v| rename[v]).collect()).collect(),
            )
        };
        graph = graph.union(&relabeled);
        entries.push(OmniEntry { subgraph: l, a1: relabel_fam(&ab.a1), a2: relabel_fam(&ab.a2) });
    }
    graph.pad_vertices(next_fresh as usize);

    // refinement constant: family membership count per edge of A ∪ X
    let mut membership: BTreeMap<Edge, usize> = BTreeMap::new();
    for en in &entries {
        for fam in [&en.a1, &en.a2] {
            let mut edges_of_fam: BTreeSet<Edge> = BTreeSet::new();
            for c in &fam.cliques {
                edges_of_fam.extend(combinations(c, r));
            }
            for e in edges_of_fam {
                *membership.entry(e).or_insert(0) += 1;
            }
        }
    }
    let refinement = membership.values().copied().max().unwrap_or(0);

    let omni = OmniAbsorber { q, r, reserves: x.clone(), graph, entries, refinement };
    // the defining property, exhaustively
    for en in &omni.entries {
        let fam = omni
            .decomposition_for(&en.subgraph)
            .ok_or_else(|| Error::Precondition("missing decomposition entry".to_string()))?;
        let host = omni.graph.union(&en.subgraph);
        if !verify_decomposition(&host, &fam)? {
            return Err(Error::Precondition(format!(
                "omni-absorber fails on a subgraph with {} edges",
                en.subgraph.edge_count()
            )));
        }
    }
    Ok(omni)
}

/// One-line summary used by reports.
pub fn absorber_summary(ab: &Absorber) -> String {
    format!(
        "absorber: target_edges={} graph_edges={} boosters={} hinges={} a1={} a2={}",
        ab.target.edge_count(),
        ab.graph.edge_count(),
        ab.structure.boosters,
        ab.structure.hinges,
        ab.a1.len(),
        ab.a2.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_target() {
        let l = Hypergraph::new(0, 2);
        let ab = build_absorber(&l, 3).unwrap();
        assert_eq!(ab.graph.edge_count(), 0);
        assert!(ab.a1.is_empty() && ab.a2.is_empty());
        let report = verify_absorber(&ab).unwrap();
        assert!(report.all_ok());
    }

    #[test]
    fn single_triangle_target() {
        let l = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let ab = build_absorber(&l, 3).unwrap();
        let report = verify_absorber(&ab).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn c6_absorber() {
        let ab = build_absorber(&Hypergraph::cycle(6), 3).unwrap();
        let report = verify_absorber(&ab).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(ab.graph_with_target().edge_count(), 3 * ab.a2.len());
    }

    #[test]
    fn mutation_flips_exactly_one_check() {
        let l = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let ab = build_absorber(&l, 3).unwrap();
        // delete one a1 clique: only the a1 partition check flips
        let mut broken = ab.clone();
        broken.a1.cliques.pop();
        let r = verify_absorber(&broken).unwrap();
        assert!(r.roots_independent && !r.a1_decomposes && r.a2_decomposes);
        assert!(r.edge_intersecting && r.partite_degenerate);
        // delete one a2 clique: only the a2 partition check flips
        let mut broken = ab.clone();
        broken.a2.cliques.pop();
        let r = verify_absorber(&broken).unwrap();
        assert!(r.roots_independent && r.a1_decomposes && !r.a2_decomposes);
        assert!(r.edge_intersecting && r.partite_degenerate);
    }

    #[test]
    fn root_edge_injection_breaks_independence() {
        let l = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let mut ab = build_absorber(&l, 3).unwrap();
        ab.graph.insert_edge(vec![0, 1]).unwrap();
        let r = verify_absorber(&ab).unwrap();
        assert!(!r.roots_independent);
    }

    #[test]
    fn omni_absorber_single_triangle() {
        let x = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let omni = build_omni_absorber_exhaustive(&x, 3, 10).unwrap();
        assert_eq!(omni.entries.len(), 2); // the empty graph and the triangle itself
        let empty = Hypergraph::new(3, 2);
        let fam = omni.decomposition_for(&empty).unwrap();
        assert!(verify_decomposition(&omni.graph, &fam).unwrap());
    }

    #[test]
    fn omni_absorber_rejects_over_cap() {
        let x = Hypergraph::complete(6, 2);
        assert!(matches!(build_omni_absorber_exhaustive(&x, 3, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn divisible_subgraph_enumeration() {
        // two disjoint triangles: divisible subgraphs are {}, T1, T2, T1 ∪ T2
        let x = Hypergraph::from_edges(
            6,
            2,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![3, 4], vec![3, 5], vec![4, 5]],
        )
        .unwrap();
        let subs = divisible_subgraphs(&x, 3).unwrap();
        assert_eq!(subs.len(), 4);
    }
}
