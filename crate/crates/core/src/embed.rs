//! Rooted embedding machinery: greedy degeneracy embedding, exact embedding
//! counts (flat and layer-by-layer), the slot-capacity supergraph-system
//! embedder, and the bipartite finishing matcher behind it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gadgets::{rooted_degeneracy_order, RootedGadget};
use crate::hypergraph::{combinations, Edge, Hypergraph};

/// A root-fixing embedding: vertex of the gadget -> vertex of the host.
pub type Embedding = BTreeMap<u32, u32>;

fn check_embedding(g: &Hypergraph, h: &RootedGadget, phi: &Embedding) -> Result<()> {
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (&v, &img) in phi {
        if h.roots.binary_search(&v).is_ok() && v != img {
            return Err(Error::Precondition(format!("root {v} moved to {img}")));
        }
        if !seen.insert(img) {
            return Err(Error::Precondition(format!("image vertex {img} reused")));
        }
    }
    for e in h.graph.edges() {
        let mut img: Edge = e
            .iter()
            .map(|v| phi.get(v).copied().ok_or(Error::Precondition(format!("vertex {v} unmapped"))))
            .collect::<Result<_>>()?;
        img.sort_unstable();
        if !g.is_edge(&img) {
            return Err(Error::Precondition(format!("edge {e:?} maps to non-edge {img:?}")));
        }
    }
    Ok(())
}

struct EmbedProblem<'a> {
    host: &'a Hypergraph,
    order: Vec<u32>,
    // for each order position, edges fully decided at that step (as gadget edges)
    constraints: Vec<Vec<Edge>>,
    base: Embedding,
}

fn build_problem<'a>(g: &'a Hypergraph, h: &RootedGadget, order: Vec<u32>) -> Result<EmbedProblem<'a>> {
    if !h.roots_independent() {
        return Err(Error::Precondition("gadget roots are not independent".to_string()));
    }
    let mut base: Embedding = BTreeMap::new();
    for &r in &h.roots {
        if r as usize >= g.n() {
            return Err(Error::VertexOutOfRange { v: r, n: g.n() });
        }
        base.insert(r, r);
    }
    let mut position: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        position.insert(v, i);
    }
    let mut constraints: Vec<Vec<Edge>> = vec![Vec::new(); order.len()];
    for e in h.graph.edges() {
        let mut last: Option<usize> = None;
        for v in e {
            match position.get(v) {
                Some(&i) => last = Some(last.map_or(i, |l: usize| l.max(i))),
                None => {
                    if base.contains_key(v) {
                        continue;
                    }
                    return Err(Error::Precondition(format!("vertex {v} neither root nor ordered")));
                }
            }
        }
        match last {
            Some(i) => constraints[i].push(e.clone()),
            None => return Err(Error::Precondition(format!("edge {e:?} lies inside the roots"))),
        }
    }
    Ok(EmbedProblem { host: g, order, constraints, base })
}

impl EmbedProblem<'_> {
    fn candidate_ok(&self, phi: &Embedding, step: usize, u: u32) -> bool {
        let v = self.order[step];
        for e in &self.constraints[step] {
            let mut img: Edge = Vec::with_capacity(e.len());
            for w in e {
                if *w == v {
                    img.push(u);
                } else {
                    match phi.get(w) {
                        Some(&x) => img.push(x),
                        None => return false,
                    }
                }
            }
            img.sort_unstable();
            if !self.host.is_edge(&img) {
                return false;
            }
        }
        true
    }
}

/// Greedy root-fixing embedding along the rooted degeneracy order; each vertex
/// takes the least eligible host vertex. May fail where embeddings exist; the
/// error says so.
pub fn embed_degenerate_greedy(g: &Hypergraph, h: &RootedGadget, root_image: &Embedding) -> Result<Embedding> {
    let (_, order) = rooted_degeneracy_order(h);
    let mut problem = build_problem(g, h, order)?;
    apply_root_image(&mut problem, h, root_image)?;
    let mut phi = problem.base.clone();
    let mut used: BTreeSet<u32> = phi.values().copied().collect();
    for step in 0..problem.order.len() {
        let v = problem.order[step];
        let mut placed = false;
        for u in 0..problem.host.n() as u32 {
            if used.contains(&u) {
                continue;
            }
            if problem.candidate_ok(&phi, step, u) {
                phi.insert(v, u);
                used.insert(u);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::NoSolution(format!("greedy placement stuck at gadget vertex {v}")));
        }
    }
    check_embedding_images(g, h, &phi)?;
    Ok(phi)
}

fn check_embedding_images(g: &Hypergraph, h: &RootedGadget, phi: &Embedding) -> Result<()> {
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for &img in phi.values() {
        if !seen.insert(img) {
            return Err(Error::Precondition("image vertex reused".to_string()));
        }
    }
    for e in h.graph.edges() {
        let mut img: Edge = e.iter().map(|v| phi[v]).collect();
        img.sort_unstable();
        if !g.is_edge(&img) {
            return Err(Error::Precondition(format!("edge {e:?} maps to non-edge {img:?}")));
        }
    }
    Ok(())
}

fn apply_root_image(problem: &mut EmbedProblem<'_>, h: &RootedGadget, root_image: &Embedding) -> Result<()> {
    if root_image.len() != h.roots.len() {
        return Err(Error::Precondition("root image must cover exactly the roots".to_string()));
    }
    let mut images: BTreeSet<u32> = BTreeSet::new();
    for (&v, &img) in root_image {
        if h.roots.binary_search(&v).is_err() {
            return Err(Error::Precondition(format!("{v} is not a root")));
        }
        if img as usize >= problem.host.n() {
            return Err(Error::VertexOutOfRange { v: img, n: problem.host.n() });
        }
        if !images.insert(img) {
            return Err(Error::Precondition("root image not injective".to_string()));
        }
    }
    problem.base = root_image.clone();
    Ok(())
}

/// Exhaustive count of root-fixing embeddings, cap-guarded on search nodes.
pub fn count_embeddings(g: &Hypergraph, h: &RootedGadget, root_image: &Embedding, cap: u64) -> Result<u64> {
    let order: Vec<u32> = h.non_root_vertices();
    let mut problem = build_problem(g, h, order)?;
    apply_root_image(&mut problem, h, root_image)?;
    let mut nodes = 0u64;
    let mut count = 0u64;
    let mut phi = problem.base.clone();
    let mut used: BTreeSet<u32> = phi.values().copied().collect();
    count_rec(&problem, 0, &mut phi, &mut used, &mut nodes, cap, &mut count, &mut |_| {})?;
    Ok(count)
}

/// Enumerate all root-fixing embeddings (for candidate generation).
pub fn enumerate_embeddings(
    g: &Hypergraph,
    h: &RootedGadget,
    root_image: &Embedding,
    cap: u64,
) -> Result<Vec<Embedding>> {
    let order: Vec<u32> = h.non_root_vertices();
    let mut problem = build_problem(g, h, order)?;
    apply_root_image(&mut problem, h, root_image)?;
    let mut nodes = 0u64;
    let mut count = 0u64;
    let mut phi = problem.base.clone();
    let mut used: BTreeSet<u32> = phi.values().copied().collect();
    let mut out: Vec<Embedding> = Vec::new();
    count_rec(&problem, 0, &mut phi, &mut used, &mut nodes, cap, &mut count, &mut |e| out.push(e.clone()))?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn count_rec(
    problem: &EmbedProblem<'_>,
    step: usize,
    phi: &mut Embedding,
    used: &mut BTreeSet<u32>,
    nodes: &mut u64,
    cap: u64,
    count: &mut u64,
    sink: &mut dyn FnMut(&Embedding),
) -> Result<()> {
    if step == problem.order.len() {
        *count += 1;
        sink(phi);
        return Ok(());
    }
    let v = problem.order[step];
    for u in 0..problem.host.n() as u32 {
        if used.contains(&u) {
            continue;
        }
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded { needed: *nodes, cap });
        }
        if !problem.candidate_ok(phi, step, u) {
            continue;
        }
        phi.insert(v, u);
        used.insert(u);
        count_rec(problem, step + 1, phi, used, nodes, cap, count, sink)?;
        phi.remove(&v);
        used.remove(&u);
    }
    Ok(())
}

/// Count embeddings layer by layer: vertices are placed in layer order, each
/// layer exhausted before the next. Must agree with the flat count.
pub fn count_layered_embeddings(g: &Hypergraph, h: &RootedGadget, root_image: &Embedding, cap: u64) -> Result<u64> {
    let Some(layers) = &h.layers else {
        return Err(Error::Precondition("gadget carries no layer annotation".to_string()));
    };
    let mut order: Vec<u32> = Vec::new();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for layer in layers {
        let mut block: Vec<u32> = layer.vertices.iter().copied().filter(|v| seen.insert(*v)).collect();
        block.sort_unstable();
        order.extend(block);
    }
    // drop unused (edge-free) layer vertices, keep only the gadget support;
    // append any support vertex missed by the layers as an error
    let support: BTreeSet<u32> = h.non_root_vertices().into_iter().collect();
    for v in &support {
        if !seen.contains(v) {
            return Err(Error::Precondition(format!("layer annotation misses vertex {v}")));
        }
    }
    let order: Vec<u32> = order.into_iter().filter(|v| support.contains(v)).collect();
    let mut problem = build_problem(g, h, order)?;
    apply_root_image(&mut problem, h, root_image)?;
    let mut nodes = 0u64;
    let mut count = 0u64;
    let mut phi = problem.base.clone();
    let mut used: BTreeSet<u32> = phi.values().copied().collect();
    count_rec(&problem, 0, &mut phi, &mut used, &mut nodes, cap, &mut count, &mut |_| {})?;
    Ok(count)
}

// --- bipartite finishing matcher ---

/// Bipartite hypergraph instance: each A-vertex owns candidate edges, each
/// touching at most r' capacity-limited B-vertices.
#[derive(Debug, Clone)]
pub struct MatchingInstance {
    pub candidates: Vec<Vec<Vec<usize>>>, // candidates[a] = list of B-resource sets
    pub capacities: Vec<usize>,
}

/// Degree-condition report mirroring the sufficient condition
/// d(a) >= 8 r' D vs d(b) <= D for A-perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCondition {
    pub r_prime: usize,
    pub min_a_degree: usize,
    pub max_b_degree: usize,
    pub satisfied: bool,
}

pub fn degree_condition(inst: &MatchingInstance) -> DegreeCondition {
    let r_prime = inst.candidates.iter().flat_map(|c| c.iter().map(|s| s.len())).max().unwrap_or(0);
    let min_a_degree = inst.candidates.iter().map(|c| c.len()).min().unwrap_or(0);
    let mut b_deg = vec![0usize; inst.capacities.len()];
    for cands in &inst.candidates {
        for set in cands {
            for &b in set {
                b_deg[b] += 1;
            }
        }
    }
    let max_b_degree = b_deg.into_iter().max().unwrap_or(0);
    DegreeCondition {
        r_prime,
        min_a_degree,
        max_b_degree,
        satisfied: min_a_degree >= 8 * r_prime * max_b_degree,
    }
}

/// A-perfect matching by exhaustive backtracking with failure memoization:
/// pick one candidate per A-vertex so that no B-vertex exceeds its capacity.
/// Returns the chosen candidate index per A-vertex, or None if the exhausted
/// search proves none exists.
pub fn finishing_matching(inst: &MatchingInstance, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = inst.candidates.len();
    // most-constrained A first, deterministic
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (inst.candidates[a].len(), a));
    let mut usage: Vec<usize> = vec![0; inst.capacities.len()];
    let mut chosen: Vec<usize> = vec![usize::MAX; n];
    let mut nodes = 0u64;
    let mut failed: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    fn rec(
        inst: &MatchingInstance,
        order: &[usize],
        depth: usize,
        usage: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        failed: &mut BTreeSet<(usize, Vec<usize>)>,
    ) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted);
        }
        let key = (depth, usage.clone());
        if failed.contains(&key) {
            return Ok(false);
        }
        let a = order[depth];
        for (ci, set) in inst.candidates[a].iter().enumerate() {
            if set.iter().any(|&b| usage[b] + 1 > inst.capacities[b]) {
                continue;
            }
            for &b in set {
                usage[b] += 1;
            }
            chosen[a] = ci;
            if rec(inst, order, depth + 1, usage, chosen, nodes, budget, failed)? {
                return Ok(true);
            }
            chosen[a] = usize::MAX;
            for &b in set {
                usage[b] -= 1;
            }
        }
        failed.insert(key);
        Ok(false)
    }
    let found = rec(inst, &order, 0, &mut usage, &mut chosen, &mut nodes, budget, &mut failed)?;
    if !found {
        return Ok(None);
    }
    Ok(Some(chosen))
}

// --- supergraph systems ---

/// One member of a supergraph system: a designated subgraph H of the base and
/// a payload gadget rooted at V(H); the payload's image must avoid every base
/// edge outside H.
#[derive(Debug, Clone)]
pub struct SupergraphMember {
    pub designated: Hypergraph,
    pub gadget: RootedGadget,
}

#[derive(Debug, Clone)]
pub struct SupergraphSystem {
    pub base: Hypergraph,
    pub members: Vec<SupergraphMember>,
}

impl SupergraphSystem {
    /// C-boundedness constant: max of edge and vertex counts over the members.
    pub fn boundedness(&self) -> usize {
        self.members
            .iter()
            .map(|m| {
                m.gadget
                    .graph
                    .edge_count()
                    .max(m.gadget.graph.support().len() + m.gadget.roots.len())
            })
            .max()
            .unwrap_or(0)
    }
}

/// The combined embedding of a supergraph system.
#[derive(Debug, Clone)]
pub struct SystemEmbedding {
    pub assignments: Vec<Embedding>,
    /// image edges per member (payload only)
    pub image_edges: Vec<Vec<Edge>>,
    pub max_codegree_load: usize,
    pub degree_report: DegreeCondition,
}

/// Embed every member of the system into G, pairwise edge-disjoint, avoiding
/// base edges outside each member's designated subgraph, with every (r-1)-set
/// carrying at most `slot_capacity` members. Desk-scale realization of the
/// slotting construction: host edges are capacity-1 resources, (r-1)-sets are
/// capacity-T resources, and an A-perfect matching picks one candidate
/// embedding per member.
pub fn embed_supergraph_system(
    g: &Hypergraph,
    sys: &SupergraphSystem,
    slot_capacity: usize,
    enum_cap: u64,
    budget: u64,
) -> Result<SystemEmbedding> {
    let r = g.r_max();
    // global root set: images may not collide with any member's roots
    let mut global_roots: BTreeSet<u32> = BTreeSet::new();
    for m in &sys.members {
        global_roots.extend(m.gadget.roots.iter().copied());
    }
    // resource table: edges of G and (r-1)-subsets of V(G) seen in candidates
    let mut resource_ids: BTreeMap<(u8, Vec<u32>), usize> = BTreeMap::new();
    let mut capacities: Vec<usize> = Vec::new();
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut cand_maps: Vec<Vec<Embedding>> = Vec::new();
    let vertex_resource = |key: (u8, Vec<u32>), cap: usize, capacities: &mut Vec<usize>,
                               ids: &mut BTreeMap<(u8, Vec<u32>), usize>| {
        *ids.entry(key).or_insert_with(|| {
            capacities.push(cap);
            capacities.len() - 1
        })
    };
    for member in &sys.members {
        let host = g.difference(&sys.base.difference(&member.designated));
        let root_image: Embedding = member.gadget.roots.iter().map(|&v| (v, v)).collect();
        let embeds = enumerate_embeddings(&host, &member.gadget, &root_image, enum_cap)?;
        let mut member_cands: Vec<Vec<usize>> = Vec::new();
        let mut member_maps: Vec<Embedding> = Vec::new();
        'cands: for phi in embeds {
            let mut consumed: BTreeSet<usize> = BTreeSet::new();
            for (&v, &img) in &phi {
                if member.gadget.roots.binary_search(&v).is_ok() {
                    continue;
                }
                if global_roots.contains(&img) {
                    continue 'cands; // fresh image vertex collides with some root
                }
                let id = vertex_resource((0, vec![img]), 1, &mut capacities, &mut resource_ids);
                consumed.insert(id);
            }
            let mut payload_edges: Vec<Edge> = Vec::new();
            for e in member.gadget.graph.edges() {
                let mut img: Edge = e.iter().map(|v| phi[v]).collect();
                img.sort_unstable();
                if member.designated.is_edge(&img) {
                    continue;
                }
                payload_edges.push(img);
            }
            payload_edges.sort();
            payload_edges.dedup();
            for e in &payload_edges {
                let id = vertex_resource((1, e.clone()), 1, &mut capacities, &mut resource_ids);
                consumed.insert(id);
                for s in combinations(e, r.saturating_sub(1)) {
                    let id = vertex_resource((2, s), slot_capacity, &mut capacities, &mut resource_ids);
                    consumed.insert(id);
                }
            }
            member_cands.push(consumed.into_iter().collect());
            member_maps.push(phi);
        }
        if member_cands.is_empty() {
            return Err(Error::NoSolution("a member has no candidate embeddings".to_string()));
        }
        candidates.push(member_cands);
        cand_maps.push(member_maps);
    }
    let inst = MatchingInstance { candidates, capacities };
    let report = degree_condition(&inst);
    let Some(selection) = finishing_matching(&inst, budget)? else {
        return Err(Error::NoSolution("no edge-disjoint system embedding within the slot capacity".to_string()));
    };

    // materialize and re-verify the combined embedding
    let mut assignments: Vec<Embedding> = Vec::with_capacity(sys.members.len());
    let mut image_edges: Vec<Vec<Edge>> = Vec::new();
    let mut all_edges: BTreeSet<Edge> = BTreeSet::new();
    let mut fresh_images: BTreeSet<u32> = BTreeSet::new();
    for (mi, member) in sys.members.iter().enumerate() {
        let phi = cand_maps[mi][selection[mi]].clone();
        check_embedding(g, &member.gadget, &phi)?;
        let mut edges: Vec<Edge> = Vec::new();
        for e in member.gadget.graph.edges() {
            let mut img: Edge = e.iter().map(|v| phi[v]).collect();
            img.sort_unstable();
            if member.designated.is_edge(&img) {
                continue;
            }
            if sys.base.is_edge(&img) {
                return Err(Error::Precondition(format!("image edge {img:?} lies in the base outside H")));
            }
            if !all_edges.insert(img.clone()) {
                return Err(Error::Precondition(format!("image edge {img:?} reused across members")));
            }
            edges.push(img);
        }
        for (&v, &img) in &phi {
            if member.gadget.roots.binary_search(&v).is_err() && !fresh_images.insert(img) {
                return Err(Error::Precondition(format!("image vertex {img} reused across members")));
            }
        }
        assignments.push(phi);
        image_edges.push(edges);
    }
    // codegree load of the combined image
    let mut load: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for e in &all_edges {
        for s in combinations(e, r.saturating_sub(1)) {
            *load.entry(s).or_insert(0) += 1;
        }
    }
    let max_codegree_load = load.values().copied().max().unwrap_or(0);
    let bound = slot_capacity * sys.boundedness();
    if max_codegree_load > bound {
        return Err(Error::Precondition(format!(
            "codegree load {max_codegree_load} exceeds T*C = {bound}"
        )));
    }
    Ok(SystemEmbedding { assignments, image_edges, max_codegree_load, degree_report: report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{build_fake_edge, LabelArena};

    fn root_id(roots: &[u32]) -> Embedding {
        roots.iter().map(|&v| (v, v)).collect()
    }

    #[test]
    fn single_edge_count_equals_degree() {
        // gadget: one r-edge rooted at an (r-1)-set
        let mut gg = Hypergraph::new(3, 2);
        gg.insert_edge(vec![0, 2]).unwrap();
        let h = RootedGadget { graph: gg, roots: vec![0], layers: None };
        let g = Hypergraph::complete(6, 2);
        let c = count_embeddings(&g, &h, &root_id(&[0]), 1 << 20).unwrap();
        assert_eq!(c as usize, g.degree(&[0]).unwrap());
    }

    #[test]
    fn no_free_vertices_counts_one() {
        let mut gg = Hypergraph::new(3, 2);
        gg.insert_edge(vec![0, 1]).unwrap();
        let h = RootedGadget { graph: gg, roots: vec![0, 1], layers: None };
        // roots not independent: edge inside roots is rejected
        let g = Hypergraph::complete(4, 2);
        assert!(count_embeddings(&g, &h, &root_id(&[0, 1]), 100).is_err());
        // edgeless gadget with only roots: exactly one (empty) embedding
        let h = RootedGadget { graph: Hypergraph::new(2, 2), roots: vec![0, 1], layers: None };
        assert_eq!(count_embeddings(&g, &h, &root_id(&[0, 1]), 100).unwrap(), 1);
    }

    #[test]
    fn fake_edge_count_matches_brute_force() {
        let mut arena = LabelArena::new(2);
        let fe = build_fake_edge(&[0, 1], 3, &mut arena).unwrap();
        let g = Hypergraph::complete(7, 2);
        let fast = count_embeddings(&g, &fe, &root_id(&[0, 1]), 1 << 24).unwrap();
        // brute force over all injective placements of the 3 fresh vertices
        let fresh = fe.non_root_vertices();
        let mut slow = 0u64;
        let n = g.n() as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let img = [a, b, c];
                    let mut phi: Embedding = root_id(&[0, 1]);
                    let mut distinct = true;
                    for (i, &v) in fresh.iter().enumerate() {
                        if img[i] < 2 || img[..i].contains(&img[i]) {
                            distinct = false;
                            break;
                        }
                        phi.insert(v, img[i]);
                    }
                    if !distinct {
                        continue;
                    }
                    let ok = fe.graph.edges().all(|e| {
                        let mut im: Vec<u32> = e.iter().map(|v| phi[v]).collect();
                        im.sort_unstable();
                        g.is_edge(&im)
                    });
                    if ok {
                        slow += 1;
                    }
                }
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn greedy_embeds_fake_edge() {
        let mut arena = LabelArena::new(2);
        let fe = build_fake_edge(&[0, 1], 3, &mut arena).unwrap();
        let g = Hypergraph::complete(8, 2);
        let phi = embed_degenerate_greedy(&g, &fe, &root_id(&[0, 1])).unwrap();
        check_embedding(&g, &fe, &phi).unwrap();
    }

    #[test]
    fn layered_count_agrees_with_flat() {
        use crate::gadgets::Layer;
        // two layers: a path hanging off the roots
        let mut gg = Hypergraph::new(5, 2);
        gg.insert_edge(vec![0, 2]).unwrap();
        gg.insert_edge(vec![2, 3]).unwrap();
        gg.insert_edge(vec![3, 4]).unwrap();
        let layers = vec![
            Layer { vertices: vec![2, 3], coloring: [(2u32, 0usize), (3, 1)].into_iter().collect() },
            Layer { vertices: vec![4], coloring: [(4u32, 0usize)].into_iter().collect() },
        ];
        let h = RootedGadget { graph: gg, roots: vec![0], layers: Some(layers) };
        let g = Hypergraph::complete(7, 2);
        let flat = count_embeddings(&g, &h, &root_id(&[0]), 1 << 22).unwrap();
        let layered = count_layered_embeddings(&g, &h, &root_id(&[0]), 1 << 22).unwrap();
        assert_eq!(flat, layered);
        assert!(flat > 0);
    }

    #[test]
    fn count_invariant_under_host_relabeling() {
        use crate::rng::{seeded, uniform_below};
        // relabeling the host by a permutation fixing the root image leaves counts unchanged
        let mut rng = seeded(19);
        let mut gg = Hypergraph::new(4, 2);
        gg.insert_edge(vec![0, 2]).unwrap();
        gg.insert_edge(vec![2, 3]).unwrap();
        let h = RootedGadget { graph: gg, roots: vec![0], layers: None };
        for _ in 0..5 {
            let mut g = Hypergraph::new(8, 2);
            for e in Hypergraph::complete(8, 2).edge_vec() {
                if uniform_below(&mut rng, 2) == 0 {
                    g.insert_edge(e).unwrap();
                }
            }
            let base = count_embeddings(&g, &h, &root_id(&[0]), 1 << 22).unwrap();
            // permutation fixing 0
            let mut perm: Vec<u32> = (1..8).collect();
            for i in (1..perm.len()).rev() {
                let j = uniform_below(&mut rng, i as u64 + 1) as usize;
                perm.swap(i, j);
            }
            let mut map: BTreeMap<u32, u32> = BTreeMap::new();
            map.insert(0, 0);
            for (i, &p) in perm.iter().enumerate() {
                map.insert(i as u32 + 1, p);
            }
            let gp = g.relabeled(&map, 8).unwrap();
            let permuted = count_embeddings(&gp, &h, &root_id(&[0]), 1 << 22).unwrap();
            assert_eq!(base, permuted);
        }
    }

    #[test]
    fn matcher_unique_perfect_matching() {
        // 1-regular bipartite graph: each a has one candidate touching its own b
        let inst = MatchingInstance {
            candidates: vec![vec![vec![0]], vec![vec![1]], vec![vec![2]]],
            capacities: vec![1, 1, 1],
        };
        let m = finishing_matching(&inst, 1000).unwrap().unwrap();
        assert_eq!(m, vec![0, 0, 0]);
    }

    #[test]
    fn matcher_detects_infeasible() {
        let inst = MatchingInstance {
            candidates: vec![vec![vec![0]], vec![vec![0]]],
            capacities: vec![1],
        };
        assert!(finishing_matching(&inst, 1000).unwrap().is_none());
    }

    #[test]
    fn matcher_backtracks() {
        // a0 must avoid the greedy first choice for a1 to survive
        let inst = MatchingInstance {
            candidates: vec![vec![vec![0], vec![1]], vec![vec![0]]],
            capacities: vec![1, 1],
        };
        let m = finishing_matching(&inst, 1000).unwrap().unwrap();
        assert_eq!(m, vec![1, 0]);
    }

    #[test]
    fn system_of_two_fake_edges() {
        // base J with two edges sharing vertex 1; members are fake-edges on them
        let base = Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let mut arena = LabelArena::new(3);
        let fe1 = build_fake_edge(&[0, 1], 3, &mut arena).unwrap();
        let fe2 = build_fake_edge(&[1, 2], 3, &mut arena).unwrap();
        let sys = SupergraphSystem {
            base: base.clone(),
            members: vec![
                SupergraphMember {
                    designated: Hypergraph::from_edges(3, 2, vec![vec![0, 1]]).unwrap(),
                    gadget: fe1,
                },
                SupergraphMember {
                    designated: Hypergraph::from_edges(3, 2, vec![vec![1, 2]]).unwrap(),
                    gadget: fe2,
                },
            ],
        };
        let g = Hypergraph::complete(12, 2);
        let emb = embed_supergraph_system(&g, &sys, 4, 1 << 24, 1 << 20).unwrap();
        assert_eq!(emb.assignments.len(), 2);
        // pairwise edge-disjoint is enforced; spot-check vertex disjointness outside roots
        let fresh0: BTreeSet<u32> = emb.assignments[0]
            .iter()
            .filter(|(v, _)| ![0, 1].contains(&(**v as i32)))
            .map(|(_, &i)| i)
            .collect();
        let fresh1: BTreeSet<u32> = emb.assignments[1]
            .iter()
            .filter(|(v, _)| ![1, 2].contains(&(**v as i32)))
            .map(|(_, &i)| i)
            .collect();
        assert!(fresh0.intersection(&fresh1).count() == 0);
    }
}
