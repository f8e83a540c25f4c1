//! Exact-rational fractional K_q^r-decompositions: LP feasibility, the fixed
//! edge-target averaging construction, low-weight weightings assembled from
//! induced subsets, regularity boosting by exact-probability sampling, and a
//! diagnostic inheritance sampler. No floating point anywhere.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, combinations, CliqueFamily, Edge, Hypergraph};
use crate::rng::{bernoulli_big, sample_k_of_n, seeded};
use crate::simplex::{maximize_leq, solve_equality_feasibility, LpOutcome, PivotRule, Rat};

/// Exact rational weights on q-cliques of a ground hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalWeighting {
    pub ground: Hypergraph,
    pub q: usize,
    pub weights: BTreeMap<Vec<u32>, Rat>,
}

impl FractionalWeighting {
    pub fn new(ground: Hypergraph, q: usize) -> Self {
        FractionalWeighting { ground, q, weights: BTreeMap::new() }
    }

    pub fn add_weight(&mut self, clique: Vec<u32>, w: Rat) {
        if w.is_zero() {
            return;
        }
        let mut clique = clique;
        clique.sort_unstable();
        let entry = self.weights.entry(clique).or_insert_with(Rat::zero);
        *entry += w;
    }

    pub fn scale(&mut self, factor: &Rat) {
        for w in self.weights.values_mut() {
            *w *= factor;
        }
        self.weights.retain(|_, w| !w.is_zero());
    }

    /// Exact boundary: edge -> total clique weight through it.
    pub fn boundary(&self) -> BTreeMap<Edge, Rat> {
        let r = self.ground.r_max();
        let mut out: BTreeMap<Edge, Rat> = BTreeMap::new();
        for (c, w) in &self.weights {
            for e in combinations(c, r) {
                let entry = out.entry(e).or_insert_with(Rat::zero);
                *entry += w;
            }
        }
        out.retain(|_, w| !w.is_zero());
        out
    }

    pub fn max_weight(&self) -> Rat {
        self.weights.values().cloned().max().unwrap_or_else(Rat::zero)
    }

    /// Low-weight constant achieved: max weight times binom(n-r, q-r).
    pub fn measured_low_weight_constant(&self) -> Rat {
        let n = self.ground.n();
        let r = self.ground.r_max();
        let scale = Rat::from_integer(BigInt::from(binomial(n - r, self.q - r)));
        self.max_weight() * scale
    }

    pub fn weights_in_unit_interval(&self) -> bool {
        self.weights.values().all(|w| !w.is_negative() && *w <= Rat::one())
    }
}

#[derive(Debug, Clone)]
pub enum FractionalOutcome {
    Feasible(FractionalWeighting),
    /// Infeasibility established by the simplex with a verified certificate.
    Infeasible,
}

fn clique_edge_matrix(g: &Hypergraph, q: usize, cliques: &[Vec<u32>]) -> (Vec<Edge>, Vec<Vec<Rat>>) {
    let r = g.r_max();
    let edges = g.edge_vec();
    let edge_index: BTreeMap<&[u32], usize> =
        edges.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut a = alloc::vec![alloc::vec![Rat::zero(); cliques.len()]; edges.len()];
    for (ci, c) in cliques.iter().enumerate() {
        for e in combinations(c, r) {
            let ei = edge_index[e.as_slice()];
            a[ei][ci] = Rat::one();
        }
    }
    let _ = q;
    (edges, a)
}

/// Exact-rational LP feasibility of the fractional decomposition system
/// (total clique weight exactly 1 on every edge, weights >= 0).
pub fn fractional_decompose(g: &Hypergraph, q: usize, rule: PivotRule, cap: u64) -> Result<FractionalOutcome> {
    let cliques = g.enumerate_cliques(q)?;
    fractional_decompose_restricted(g, q, &cliques, rule, cap)
}

/// Same system restricted to an explicit clique set (used for monotonicity
/// sanity checks and by callers that pre-enumerate).
pub fn fractional_decompose_restricted(
    g: &Hypergraph,
    q: usize,
    cliques: &[Vec<u32>],
    rule: PivotRule,
    cap: u64,
) -> Result<FractionalOutcome> {
    let size = (g.edge_count() as u64).saturating_mul(cliques.len() as u64 + g.edge_count() as u64);
    if size > cap {
        return Err(Error::CapExceeded { needed: size, cap });
    }
    let (edges, a) = clique_edge_matrix(g, q, cliques);
    let b = alloc::vec![Rat::one(); edges.len()];
    match solve_equality_feasibility(&a, &b, rule)? {
        LpOutcome::Infeasible(_) => Ok(FractionalOutcome::Infeasible),
        LpOutcome::Feasible(x) => {
            let mut psi = FractionalWeighting::new(g.clone(), q);
            for (ci, w) in x.into_iter().enumerate() {
                if w.is_negative() {
                    return Err(Error::Infeasible("negative weight escaped the simplex".to_string()));
                }
                psi.add_weight(cliques[ci].clone(), w);
            }
            let bound = psi.boundary();
            for e in &edges {
                if bound.get(e) != Some(&Rat::one()) {
                    return Err(Error::Infeasible(format!("boundary not exactly 1 at {e:?}")));
                }
            }
            if !psi.weights_in_unit_interval() {
                return Err(Error::Infeasible("clique weight escaped [0,1]".to_string()));
            }
            Ok(FractionalOutcome::Feasible(psi))
        }
    }
}

/// Maximum fractional packing: maximize total weight subject to boundary <= 1.
/// Always feasible (the zero packing); used when the strict system is not.
pub fn max_fractional_packing(g: &Hypergraph, q: usize, cap: u64) -> Result<FractionalWeighting> {
    let cliques = g.enumerate_cliques(q)?;
    max_fractional_packing_restricted(g, q, &cliques, cap)
}

/// Maximum fractional packing over an explicit clique subfamily.
pub fn max_fractional_packing_restricted(
    g: &Hypergraph,
    q: usize,
    cliques: &[Vec<u32>],
    cap: u64,
) -> Result<FractionalWeighting> {
    let size = (g.edge_count() as u64).saturating_mul(cliques.len() as u64 + g.edge_count() as u64);
    if size > cap {
        return Err(Error::CapExceeded { needed: size, cap });
    }
    let (edges, a) = clique_edge_matrix(g, q, cliques);
    let b = alloc::vec![Rat::one(); edges.len()];
    let c = alloc::vec![Rat::one(); cliques.len()];
    let x = maximize_leq(&c, &a, &b, PivotRule::Bland)?;
    let mut psi = FractionalWeighting::new(g.clone(), q);
    for (ci, w) in x.into_iter().enumerate() {
        psi.add_weight(cliques[ci].clone(), w);
    }
    let bound = psi.boundary();
    for e in &edges {
        if let Some(w) = bound.get(e) {
            if w > &Rat::one() || w.is_negative() {
                return Err(Error::Infeasible(format!("packing boundary escaped [0,1] at {e:?}")));
            }
        }
    }
    Ok(psi)
}

/// Uniform weight 1 / t_max on every q-clique, t_max the maximum number of
/// cliques through one edge: an exact C-low-weight fractional packing with
/// C = binom(n-r, q-r) / t_max, needing no LP. Boosting it keeps every clique.
pub fn uniform_clique_packing(g: &Hypergraph, q: usize) -> Result<FractionalWeighting> {
    let r = g.r_max();
    let cliques = g.enumerate_cliques(q)?;
    let mut psi = FractionalWeighting::new(g.clone(), q);
    if cliques.is_empty() {
        return Ok(psi);
    }
    let mut per_edge: BTreeMap<Edge, u64> = BTreeMap::new();
    for c in &cliques {
        for e in combinations(c, r) {
            *per_edge.entry(e).or_insert(0) += 1;
        }
    }
    let t_max = per_edge.values().copied().max().unwrap_or(1).max(1);
    let w = Rat::new(BigInt::one(), BigInt::from(t_max));
    for c in cliques {
        psi.add_weight(c, w.clone());
    }
    let bound = psi.boundary();
    if bound.values().any(|v| v > &Rat::one()) {
        return Err(Error::Precondition("uniform packing boundary escaped [0,1]".to_string()));
    }
    Ok(psi)
}

/// The averaging construction for prescribed edge targets in
/// [1 - 1/e(G), 1]: lambda_e = e(G) (phi(e) - 1 + 1/e(G)),
/// Phi'_e = lambda_e Phi_0 + (1 - lambda_e) Phi_e, Phi = mean of the Phi'_e.
/// Phi_0 must decompose G fractionally, Phi_e must decompose G - e.
pub fn fixed_fractional(
    g: &Hypergraph,
    q: usize,
    targets: &BTreeMap<Edge, Rat>,
    phi0: &FractionalWeighting,
    phi_minus: &BTreeMap<Edge, FractionalWeighting>,
) -> Result<FractionalWeighting> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(FractionalWeighting::new(g.clone(), q));
    }
    let m_rat = Rat::from_integer(BigInt::from(m as u64));
    let lo = Rat::one() - Rat::one() / &m_rat;
    // target admissibility
    for e in g.edges() {
        let Some(t) = targets.get(e) else {
            return Err(Error::TargetOutOfRange(format!("no target for edge {e:?}")));
        };
        if t < &lo || t > &Rat::one() {
            return Err(Error::TargetOutOfRange(format!("target {t} at {e:?} outside [1 - 1/e(G), 1]")));
        }
    }
    // Phi_0 decomposes G
    let b0 = phi0.boundary();
    for e in g.edges() {
        if b0.get(e) != Some(&Rat::one()) {
            return Err(Error::Precondition(format!("phi0 boundary is not 1 at {e:?}")));
        }
    }
    let mut total = FractionalWeighting::new(g.clone(), q);
    for e in g.edges() {
        let lambda = (&targets[e] - &lo) * &m_rat;
        debug_assert!(!lambda.is_negative() && lambda <= Rat::one());
        for (c, w) in &phi0.weights {
            total.add_weight(c.clone(), &lambda * w / &m_rat);
        }
        let one_minus = Rat::one() - &lambda;
        if one_minus.is_zero() {
            continue; // lambda = 1: the G - e decomposition never enters
        }
        let phi_e = phi_minus
            .get(e)
            .ok_or_else(|| Error::Precondition(format!("missing decomposition of G minus {e:?}")))?;
        let be = phi_e.boundary();
        for f in g.edges() {
            let expected = if f == e { Rat::zero() } else { Rat::one() };
            if be.get(f).cloned().unwrap_or_else(Rat::zero) != expected {
                return Err(Error::Precondition(format!("phi_[{e:?}] boundary wrong at {f:?}")));
            }
        }
        for (c, w) in &phi_e.weights {
            total.add_weight(c.clone(), &one_minus * w / &m_rat);
        }
    }
    total.weights.retain(|_, w| !w.is_zero());
    // exact boundary and convexity checks
    let bound = total.boundary();
    for e in g.edges() {
        if bound.get(e).cloned().unwrap_or_else(Rat::zero) != targets[e] {
            return Err(Error::Precondition(format!("averaged boundary misses the target at {e:?}")));
        }
    }
    if !total.weights_in_unit_interval() {
        return Err(Error::Precondition("averaged weight escaped [0,1]".to_string()));
    }
    Ok(total)
}

/// Convenience: derive Phi_0 and every Phi_e by the LP, then average.
pub fn fixed_fractional_auto(
    g: &Hypergraph,
    q: usize,
    targets: &BTreeMap<Edge, Rat>,
    cap: u64,
) -> Result<FractionalWeighting> {
    let FractionalOutcome::Feasible(phi0) = fractional_decompose(g, q, PivotRule::Bland, cap)? else {
        return Err(Error::Infeasible("host has no fractional decomposition".to_string()));
    };
    let mut phi_minus = BTreeMap::new();
    for e in g.edge_vec() {
        let mut ge = g.clone();
        ge.remove_edge(&e);
        let FractionalOutcome::Feasible(phi_e) = fractional_decompose(&ge, q, PivotRule::Bland, cap)? else {
            return Err(Error::Infeasible(format!("host minus {e:?} has no fractional decomposition")));
        };
        phi_minus.insert(e, phi_e);
    }
    fixed_fractional(g, q, targets, &phi0, &phi_minus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// All s-subsets of the vertex set.
    Enumerate,
    /// A fixed number of distinct random s-subsets.
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct LowWeightReport {
    pub subset_size: usize,
    pub usable_subsets: usize,
    pub min_edge_cover: u64,
    pub max_edge_cover: u64,
    pub max_clique_weight: Rat,
    pub measured_constant: Rat,
}

/// Low-weight fractional decomposition assembled from induced s-subsets:
/// collect s-sets whose induced subgraph decomposes fractionally, give edge e
/// the target kappa / N(e) inside each subset (kappa = min_e N(e), N(e) the
/// exact per-edge count of usable subsets), sum, and rescale by 1/kappa. The
/// boundary is exactly 1 everywhere by construction.
pub fn low_weight_fractional(
    g: &Hypergraph,
    q: usize,
    s: usize,
    mode: SubsetMode,
    cap: u64,
) -> Result<(FractionalWeighting, LowWeightReport)> {
    let r = g.r_max();
    if s <= r || s > g.n() {
        return Err(Error::Precondition(format!("subset size {s} outside ({r}, {}]", g.n())));
    }
    if g.edge_count() == 0 {
        let report = LowWeightReport {
            subset_size: s,
            usable_subsets: 0,
            min_edge_cover: 0,
            max_edge_cover: 0,
            max_clique_weight: Rat::zero(),
            measured_constant: Rat::zero(),
        };
        return Ok((FractionalWeighting::new(g.clone(), q), report));
    }
    let verts: Vec<u32> = (0..g.n() as u32).collect();
    let candidate_sets: Vec<Vec<u32>> = match mode {
        SubsetMode::Enumerate => combinations(&verts, s),
        SubsetMode::Sample { count, seed } => {
            let mut rng = seeded(seed);
            let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
            let mut tries = 0usize;
            while seen.len() < count && tries < count * 64 {
                seen.insert(sample_k_of_n(&mut rng, s, g.n()));
                tries += 1;
            }
            seen.into_iter().collect()
        }
    };
    // usable subsets: induced subgraph fractionally decomposable
    let mut usable: Vec<(Vec<u32>, FractionalWeighting)> = Vec::new();
    for set in candidate_sets {
        let induced = g.induced(&set);
        if induced.edge_count() == 0 {
            continue;
        }
        if let FractionalOutcome::Feasible(psi) = fractional_decompose(&induced, q, PivotRule::Bland, cap)? {
            usable.push((set, psi));
        }
    }
    let mut cover: BTreeMap<Edge, u64> = BTreeMap::new();
    for (set, _) in &usable {
        for e in g.induced(set).edges() {
            *cover.entry(e.clone()).or_insert(0) += 1;
        }
    }
    for e in g.edges() {
        if !cover.contains_key(e) {
            return Err(Error::Precondition(format!("edge {e:?} lies in no usable {s}-set")));
        }
    }
    let kappa = *cover.values().min().expect("nonempty");
    let max_cover = *cover.values().max().expect("nonempty");
    let kappa_rat = Rat::from_integer(BigInt::from(kappa));

    let mut total = FractionalWeighting::new(g.clone(), q);
    for (set, phi0) in &usable {
        let induced = g.induced(set);
        let targets: BTreeMap<Edge, Rat> = induced
            .edges()
            .map(|e| (e.clone(), &kappa_rat / Rat::from_integer(BigInt::from(cover[e]))))
            .collect();
        // decompositions of G[S] - e are needed only where the target is below 1
        let mut phi_minus = BTreeMap::new();
        for e in induced.edge_vec() {
            if targets[&e] == Rat::one() {
                continue;
            }
            let mut ge = induced.clone();
            ge.remove_edge(&e);
            let FractionalOutcome::Feasible(phi_e) = fractional_decompose(&ge, q, PivotRule::Bland, cap)? else {
                return Err(Error::Infeasible(format!("usable subset loses feasibility without {e:?}")));
            };
            phi_minus.insert(e, phi_e);
        }
        let phi_s = fixed_fractional(&induced, q, &targets, phi0, &phi_minus)?;
        for (c, w) in &phi_s.weights {
            total.add_weight(c.clone(), w / &kappa_rat);
        }
    }
    total.weights.retain(|_, w| !w.is_zero());
    let bound = total.boundary();
    for e in g.edges() {
        if bound.get(e) != Some(&Rat::one()) {
            return Err(Error::Precondition(format!("assembled boundary is not 1 at {e:?}")));
        }
    }
    let report = LowWeightReport {
        subset_size: s,
        usable_subsets: usable.len(),
        min_edge_cover: kappa,
        max_edge_cover: max_cover,
        max_clique_weight: total.max_weight(),
        measured_constant: total.measured_low_weight_constant(),
    };
    Ok((total, report))
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    /// d = binom(n-r, q-r) / C, the per-edge expectation under boundary 1
    pub density: Rat,
    pub min_edge_count: u64,
    pub max_edge_count: u64,
    pub edges: usize,
    pub sampled_cliques: usize,
}

/// Sample each support clique independently with exact probability
/// psi(H) * d where d = binom(n-r, q-r) / C; reports per-edge counts against d.
pub fn boost_regularity(
    g: &Hypergraph,
    psi: &FractionalWeighting,
    c: &Rat,
    seed: u64,
) -> Result<(CliqueFamily, RegularityReport)> {
    let r = g.r_max();
    let n = g.n();
    let q = psi.q;
    if !c.is_positive() {
        return Err(Error::Precondition("low-weight constant must be positive".to_string()));
    }
    let d = Rat::from_integer(BigInt::from(binomial(n - r, q - r))) / c;
    for w in psi.weights.values() {
        let p = w * &d;
        if p.is_negative() || p > Rat::one() {
            return Err(Error::Precondition("weighting is not C-low-weight for the given C".to_string()));
        }
    }
    let mut rng = seeded(seed);
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for (clique, w) in &psi.weights {
        let p = w * &d;
        if bernoulli_big(&mut rng, p.numer(), p.denom()) {
            chosen.push(clique.clone());
        }
    }
    let mut counts: BTreeMap<Edge, u64> = BTreeMap::new();
    for e in g.edges() {
        counts.insert(e.clone(), 0);
    }
    for cl in &chosen {
        for e in combinations(cl, r) {
            if let Some(slot) = counts.get_mut(&e) {
                *slot += 1;
            }
        }
    }
    let report = RegularityReport {
        density: d,
        min_edge_count: counts.values().copied().min().unwrap_or(0),
        max_edge_count: counts.values().copied().max().unwrap_or(0),
        edges: counts.len(),
        sampled_cliques: chosen.len(),
    };
    Ok((CliqueFamily::new(q, chosen), report))
}

#[derive(Debug, Clone)]
pub struct InheritanceStats {
    pub subset_size: usize,
    pub samples: u64,
    pub hits: u64,
    /// exact threshold comparison: delta(G[S]) (n-1) >= delta(G) (s-1)
    pub threshold_num: u64,
    pub threshold_den: u64,
}

#[derive(Debug, Clone, Copy)]
pub enum InheritanceMode {
    Sample { trials: u64, seed: u64 },
    Exhaustive,
}

fn min_codegree_within(g: &Hypergraph, set: &[u32]) -> usize {
    let r = g.r_max();
    let induced = g.induced(set);
    let mut min = usize::MAX;
    for s in combinations(set, r - 1) {
        let d = induced.degree(&s).unwrap_or(0);
        min = min.min(d);
    }
    if min == usize::MAX {
        0
    } else {
        min
    }
}

/// Diagnostic sampler for degree inheritance: fraction of s-sets containing R
/// whose induced subgraph keeps (proportionally) the minimum codegree of G.
pub fn inheritance_sample(g: &Hypergraph, root: &[u32], s: usize, mode: InheritanceMode) -> Result<InheritanceStats> {
    let r = g.r_max();
    let n = g.n();
    let mut root = root.to_vec();
    root.sort_unstable();
    if root.len() != r || s <= r || s > n {
        return Err(Error::Precondition("need |R| = r and r < s <= n".to_string()));
    }
    let delta = g.min_codegree()? as u64;
    let others: Vec<u32> = (0..n as u32).filter(|v| root.binary_search(v).is_err()).collect();
    let hit = |set: &Vec<u32>| -> bool {
        let d = min_codegree_within(g, set) as u64;
        // delta(G[S]) / (s-1) >= delta(G) / (n-1), exactly
        d * (n as u64 - 1) >= delta * (s as u64 - 1)
    };
    let mut samples = 0u64;
    let mut hits = 0u64;
    match mode {
        InheritanceMode::Exhaustive => {
            for extra in combinations(&others, s - r) {
                let mut set = root.clone();
                set.extend(extra);
                set.sort_unstable();
                samples += 1;
                if hit(&set) {
                    hits += 1;
                }
            }
        }
        InheritanceMode::Sample { trials, seed } => {
            let mut rng = seeded(seed);
            for _ in 0..trials {
                let picks = sample_k_of_n(&mut rng, s - r, others.len());
                let mut set = root.clone();
                set.extend(picks.iter().map(|&i| others[i as usize]));
                set.sort_unstable();
                samples += 1;
                if hit(&set) {
                    hits += 1;
                }
            }
        }
    }
    Ok(InheritanceStats {
        subset_size: s,
        samples,
        hits,
        threshold_num: delta * (s as u64 - 1),
        threshold_den: n as u64 - 1,
    })
}
