//! Non-uniform Turán machinery at desk scale: density vectors, the alteration
//! procedure for independent sets (random and derandomized), empirical
//! Turán-space probes, and the subset edge-density tail.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, combinations, count_copies, DensityVector, Hypergraph};
use crate::rng::{bernoulli_big, seeded, split_seed, uniform_below, Rng};

pub type Rat = BigRational;

/// Exact per-uniformity densities of an r-bounded hypergraph.
pub fn density_vector(g: &Hypergraph) -> DensityVector {
    DensityVector::of(g)
}

#[derive(Debug, Clone, Copy)]
pub enum SpencerMode {
    Random { seed: u64 },
    /// Method of conditional expectations on the pessimistic estimator
    /// |A| - e(G[A]); never returns a set smaller than the ceiling of the
    /// initial expectation.
    Derandomize,
}

#[derive(Debug, Clone)]
pub struct SpencerResult {
    pub independent_set: Vec<u32>,
    /// exact initial lower bound p n - sum_i p^i e(G^{(i)})
    pub expectation: Rat,
    pub sampled: usize,
    pub deleted: usize,
}

/// Alteration: sample A with per-vertex probability 2q/n, delete the least
/// vertex of every induced edge. The result is always independent.
pub fn spencer_alteration(g: &Hypergraph, q: usize, mode: SpencerMode) -> Result<SpencerResult> {
    let n = g.n();
    if n < 2 * q {
        return Err(Error::Precondition(format!("need n >= 2q, got n={n}, q={q}")));
    }
    let p = Rat::new(BigInt::from(2 * q as u64), BigInt::from(n as u64));
    let expectation = alteration_estimate(g, &p, &[]);
    let chosen: Vec<bool> = match mode {
        SpencerMode::Random { seed } => {
            let mut rng = seeded(seed);
            (0..n).map(|_| uniform_below(&mut rng, n as u64) < 2 * q as u64).collect()
        }
        SpencerMode::Derandomize => {
            let mut decided: Vec<Option<bool>> = alloc::vec![None; n];
            for v in 0..n {
                decided[v] = Some(true);
                let e_in = alteration_estimate(g, &p, &decided);
                decided[v] = Some(false);
                let e_out = alteration_estimate(g, &p, &decided);
                decided[v] = Some(e_in >= e_out);
            }
            decided.into_iter().map(|d| d.unwrap()).collect()
        }
    };
    let sample: BTreeSet<u32> = (0..n as u32).filter(|&v| chosen[v as usize]).collect();
    let mut kept = sample.clone();
    let mut deleted = 0usize;
    for e in g.edges() {
        if e.iter().all(|v| sample.contains(v)) {
            // choice function: least vertex of the edge
            if kept.remove(&e[0]) {
                deleted += 1;
            }
        }
    }
    // the defining property, asserted on every call
    let set: Vec<u32> = kept.into_iter().collect();
    for e in g.edges() {
        if e.iter().all(|v| set.binary_search(v).is_ok()) {
            return Err(Error::Precondition(format!("alteration left the induced edge {e:?}")));
        }
    }
    if matches!(mode, SpencerMode::Derandomize) && expectation.is_positive() {
        let floor = expectation.ceil().to_integer();
        if BigInt::from(set.len() as u64) < floor {
            return Err(Error::Precondition(
                "conditional expectation walk fell below its guarantee".to_string(),
            ));
        }
    }
    Ok(SpencerResult { independent_set: set, expectation, sampled: sample.len(), deleted })
}

/// Pessimistic estimator sum_v P(v in A) - sum_e prod_{v in e} P(v in A)
/// under partial decisions (None = still random with probability p).
fn alteration_estimate(g: &Hypergraph, p: &Rat, decided: &[Option<bool>]) -> Rat {
    let prob = |v: u32| -> Rat {
        match decided.get(v as usize).copied().flatten() {
            Some(true) => Rat::one(),
            Some(false) => Rat::zero(),
            None => p.clone(),
        }
    };
    let mut acc = Rat::zero();
    for v in 0..g.n() as u32 {
        acc += prob(v);
    }
    for e in g.edges() {
        let mut term = Rat::one();
        for &v in e {
            term *= prob(v);
            if term.is_zero() {
                break;
            }
        }
        acc -= term;
    }
    acc
}

/// Density caps of the alteration regime: e(G^{(i)}) <= c / binom(q, i-1) * binom(n, i)
/// with c = 1 / (r 6^r). Used by tests and the probe to build admissible instances.
pub fn alteration_density_cap(n: usize, r: usize, q: usize, i: usize) -> Rat {
    let c = Rat::new(BigInt::one(), BigInt::from((r as u64) * 6u64.pow(r as u32)));
    c * Rat::new(BigInt::from(binomial(n, i)), BigInt::from(binomial(q, i - 1)))
}

/// Random r-bounded host with independent per-uniformity edge probabilities.
pub fn random_bounded_host(n: usize, densities: &[Rat], rng: &mut Rng) -> Result<Hypergraph> {
    let r = densities.len();
    let mut g = Hypergraph::new(n, r);
    let verts: Vec<u32> = (0..n as u32).collect();
    for (idx, d) in densities.iter().enumerate() {
        let i = idx + 1;
        let d = if d > &Rat::one() { Rat::one() } else { d.clone() };
        if d.is_negative() {
            return Err(Error::Precondition("negative density".to_string()));
        }
        for e in combinations(&verts, i) {
            if bernoulli_big(rng, d.numer(), d.denom()) {
                g.insert_edge(e)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub trials: u64,
    pub hits: u64,
    pub min_copies: u64,
    pub max_copies: u64,
    /// least copies / binom(n, v(F)) over the trials, exact
    pub min_ratio: Rat,
    /// realized densities of the last host, for the record
    pub last_densities: Vec<Rat>,
    /// copy count per trial, in trial order
    pub per_trial: Vec<u64>,
}

/// Empirical Turán-space probe: sample hosts at densities alpha + eps and
/// count copies of F. Reports, never decides.
pub fn turan_space_probe(
    f: &Hypergraph,
    alpha: &[Rat],
    eps: &Rat,
    n: usize,
    trials: u64,
    seed: u64,
    copy_cap: u64,
) -> Result<ProbeReport> {
    if alpha.is_empty() {
        return Err(Error::Precondition("empty density vector".to_string()));
    }
    let densities: Vec<Rat> = alpha.iter().map(|a| a + eps).collect();
    let mut hits = 0u64;
    let mut min_copies = u64::MAX;
    let mut max_copies = 0u64;
    let mut last_densities = Vec::new();
    let mut per_trial = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let mut rng = seeded(split_seed(seed, t));
        let host = random_bounded_host(n, &densities, &mut rng)?;
        let copies = count_copies(&host, f, copy_cap)?;
        if copies > 0 {
            hits += 1;
        }
        min_copies = min_copies.min(copies);
        max_copies = max_copies.max(copies);
        per_trial.push(copies);
        if t + 1 == trials {
            last_densities = DensityVector::of(&host).0;
        }
    }
    if trials == 0 {
        min_copies = 0;
    }
    let denom = binomial(n, f.n());
    let min_ratio = if denom == 0 {
        Rat::zero()
    } else {
        Rat::new(BigInt::from(min_copies), BigInt::from(denom))
    };
    Ok(ProbeReport { trials, hits, min_copies, max_copies, min_ratio, last_densities, per_trial })
}

#[derive(Debug, Clone, Copy)]
pub enum TailMode {
    Exhaustive,
    Sample { trials: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct TailReport {
    pub below: u64,
    pub total: u64,
    /// the concentration regime 2 k^2 <= n
    pub regime_ok: bool,
}

/// Fraction of k-subsets S with e(G[S]) < beta * binom(k, r).
pub fn subset_density_tail(g: &Hypergraph, k: usize, beta: &Rat, mode: TailMode) -> Result<TailReport> {
    if !g.uniform() {
        return Err(Error::NotUniform);
    }
    let r = g.r_max();
    if k < r || k > g.n() {
        return Err(Error::Precondition(format!("k={k} outside [{r}, {}]", g.n())));
    }
    let threshold = beta * Rat::from_integer(BigInt::from(binomial(k, r)));
    let is_below = |set: &[u32]| -> bool {
        let count = g.induced(set).edge_count() as u64;
        Rat::from_integer(BigInt::from(count)) < threshold
    };
    let verts: Vec<u32> = (0..g.n() as u32).collect();
    let (below, total) = match mode {
        TailMode::Exhaustive => {
            let mut below = 0u64;
            let mut total = 0u64;
            for set in combinations(&verts, k) {
                total += 1;
                if is_below(&set) {
                    below += 1;
                }
            }
            (below, total)
        }
        TailMode::Sample { trials, seed } => {
            let mut rng = seeded(seed);
            let mut below = 0u64;
            for _ in 0..trials {
                let set = crate::rng::sample_k_of_n(&mut rng, k, g.n());
                if is_below(&set) {
                    below += 1;
                }
            }
            (below, trials)
        }
    };
    Ok(TailReport { below, total, regime_ok: 2 * k * k <= g.n() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn spencer_edgeless_keeps_sample() {
        let g = Hypergraph::new(20, 2);
        let res = spencer_alteration(&g, 5, SpencerMode::Derandomize).unwrap();
        assert!(res.independent_set.len() >= 5);
        assert_eq!(res.deleted, 0);
    }

    #[test]
    fn spencer_rejects_small_n() {
        let g = Hypergraph::new(5, 2);
        assert!(spencer_alteration(&g, 3, SpencerMode::Random { seed: 1 }).is_err());
    }

    #[test]
    fn spencer_expectation_formula() {
        // expectation = p n - sum_i p^i e(G^{(i)}) exactly
        let mut g = Hypergraph::new(12, 2);
        g.insert_edge(alloc::vec![0, 1]).unwrap();
        g.insert_edge(alloc::vec![2]).unwrap();
        let res = spencer_alteration(&g, 3, SpencerMode::Random { seed: 4 }).unwrap();
        let p = rat(6, 12);
        let expected = &p * rat(12, 1) - &p * &p - p;
        assert_eq!(res.expectation, expected);
    }

    #[test]
    fn spencer_derandomized_meets_guarantee_on_sparse_instances() {
        use crate::rng::split_seed;
        let (r, q, n) = (2usize, 5usize, 60usize);
        for trial in 0..20u64 {
            let mut rng = seeded(split_seed(991, trial));
            // stay under the density caps in every uniformity
            let caps: Vec<u64> = (1..=r)
                .map(|i| {
                    let cap = alteration_density_cap(n, r, q, i);
                    (cap.numer() / cap.denom()).try_into().unwrap_or(0u64)
                })
                .collect();
            let mut g = Hypergraph::new(n, r);
            let verts: Vec<u32> = (0..n as u32).collect();
            for i in 1..=r {
                let all = combinations(&verts, i);
                let want = caps[i - 1].min(all.len() as u64);
                let mut picked = 0u64;
                while picked < want {
                    let idx = uniform_below(&mut rng, all.len() as u64) as usize;
                    if !g.is_edge(&all[idx]) {
                        g.insert_edge(all[idx].clone()).unwrap();
                        picked += 1;
                    }
                }
            }
            let res = spencer_alteration(&g, q, SpencerMode::Derandomize).unwrap();
            assert!(res.independent_set.len() >= q, "trial {trial}: {} < {q}", res.independent_set.len());
        }
    }

    #[test]
    fn probe_complete_host() {
        let f = Hypergraph::complete(3, 2);
        let alpha = alloc::vec![Rat::one(), Rat::one()];
        let report = turan_space_probe(&f, &alpha, &Rat::zero(), 6, 3, 7, 1 << 22).unwrap();
        assert_eq!(report.hits, 3);
        assert_eq!(report.min_copies, 20); // binom(6,3) triangles in K_6
    }

    #[test]
    fn probe_at_alteration_densities() {
        // hosts just above 1 - c/binom(q, i-1) per uniformity contain the
        // complete bounded pattern in every observed trial at desk sizes
        let (r, q, n) = (2usize, 3usize, 12usize);
        let f = Hypergraph::complete_bounded(q, r);
        let c = Rat::new(BigInt::one(), BigInt::from((r as u64) * 6u64.pow(r as u32)));
        let alpha: Vec<Rat> = (1..=r)
            .map(|i| Rat::one() - &c / Rat::from_integer(BigInt::from(binomial(q, i - 1))))
            .collect();
        let report = turan_space_probe(&f, &alpha, &rat(1, 100), n, 8, 21, 1 << 24).unwrap();
        assert_eq!(report.hits, report.trials);
        assert!(report.min_copies > 0);
        assert_eq!(report.per_trial.len(), 8);
    }

    #[test]
    fn blow_up_hosts_contain_the_base_pattern() {
        // any host containing F(t) contains F
        let mut f = Hypergraph::new(3, 2);
        f.insert_edge(alloc::vec![0, 1]).unwrap();
        f.insert_edge(alloc::vec![1, 2]).unwrap();
        let host = f.blow_up(2).unwrap();
        assert!(crate::hypergraph::count_copies(&host, &f, 1 << 22).unwrap() > 0);
    }

    #[test]
    fn tail_extremes() {
        let complete = Hypergraph::complete(10, 2);
        let t = subset_density_tail(&complete, 4, &rat(9, 10), TailMode::Exhaustive).unwrap();
        assert_eq!(t.below, 0);
        let empty = Hypergraph::new(10, 2);
        let t = subset_density_tail(&empty, 4, &rat(1, 10), TailMode::Exhaustive).unwrap();
        assert_eq!(t.below, t.total);
    }

    #[test]
    fn density_vector_blow_up_consistency() {
        let mut f = Hypergraph::new(4, 2);
        f.insert_edge(alloc::vec![0, 1]).unwrap();
        f.insert_edge(alloc::vec![2]).unwrap();
        let t = 3usize;
        let b = f.blow_up(t).unwrap();
        for i in 1..=2usize {
            let ef = f.edges().filter(|e| e.len() == i).count();
            let eb = b.edges().filter(|e| e.len() == i).count();
            assert_eq!(eb, ef * t.pow(i as u32));
        }
    }
}
