//! End-to-end decomposition pipeline: reserve sampling, exhaustive
//! omni-absorber over the reserves (on adjoined fresh vertices), a low-weight
//! fractional weighting of the remainder boosted into a clique family, nibble
//! with reserves, and absorption of the leftover reserve edges. Every stage is
//! re-verified before the next consumes it; the trace is a deterministic
//! function of the inputs and the seed.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::absorber::{build_omni_absorber_exhaustive, OmniAbsorber};
use crate::error::{Error, Result};
use crate::fractional::{
    boost_regularity, fractional_decompose, low_weight_fractional, uniform_clique_packing,
    FractionalOutcome, FractionalWeighting, SubsetMode,
};
use crate::hypergraph::{combinations, verify_decomposition, CliqueFamily, Edge, Hypergraph};
use crate::nibble::{nibble_with_reserves, sample_reserves, Prob};
use crate::rng::split_seed;
use crate::simplex::PivotRule;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// reserve edge probability
    pub reserve_p: Prob,
    /// retries inside one reserve sample for the codegree bound
    pub reserve_delta_attempts: u64,
    /// resampling rounds to get the reserve edge count under the omni cap
    pub reserve_cap_attempts: u64,
    /// max reserve edges the exhaustive omni-absorber accepts
    pub omni_cap: usize,
    /// subset size for the low-weight weighting; None picks n - 1
    pub subset_size: Option<usize>,
    /// nibble bite probability
    pub bite: Prob,
    pub nibble_rounds: u64,
    /// LP size cap (rows * columns)
    pub lp_cap: u64,
    /// largest remainder (edge count) for the subset-assembled weighting,
    /// which runs one LP per subset
    pub low_weight_edge_limit: usize,
    /// largest remainder for the strict one-shot LP
    pub strict_lp_edge_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            reserve_p: Prob { num: 1, den: 10 },
            reserve_delta_attempts: 64,
            reserve_cap_attempts: 64,
            omni_cap: 10,
            subset_size: None,
            bite: Prob { num: 1, den: 4 },
            nibble_rounds: 32,
            lp_cap: 1 << 26,
            low_weight_edge_limit: 40,
            strict_lp_edge_limit: 100,
        }
    }
}

/// Deterministic, line-oriented record of a pipeline run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineTrace {
    pub lines: Vec<String>,
}

impl PipelineTrace {
    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Human- and machine-readable summary of a trace (one key=value line per
/// recorded event, plus the verification verdict line).
pub fn report(trace: &PipelineTrace) -> String {
    trace.render()
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// verified decomposition of host = G ∪ A on success
    pub decomposition: Option<CliqueFamily>,
    pub host: Hypergraph,
    pub absorber_graph: Hypergraph,
    pub trace: PipelineTrace,
    pub failed_stage: Option<&'static str>,
}

impl PipelineResult {
    pub fn success(&self) -> bool {
        self.failed_stage.is_none() && self.decomposition.is_some()
    }
}

fn fail(trace: PipelineTrace, host: Hypergraph, a: Hypergraph, stage: &'static str) -> PipelineResult {
    PipelineResult { decomposition: None, host, absorber_graph: a, trace, failed_stage: Some(stage) }
}

/// Run the full schedule on a divisible host. Stage failures are reported in
/// the result, not raised; errors are reserved for malformed inputs.
pub fn decompose(g: &Hypergraph, q: usize, config: &PipelineConfig, seed: u64) -> Result<PipelineResult> {
    if !g.uniform() {
        return Err(Error::NotUniform);
    }
    let r = g.r_max();
    if q <= r {
        return Err(Error::BadOrder { q, r });
    }
    if !g.is_divisible(q)? {
        return Err(Error::NotDivisible("pipeline host must be divisible".to_string()));
    }
    let mut trace = PipelineTrace::default();
    trace.push(format!(
        "stage=input n={} edges={} q={} r={} seed={} p={}/{} bite={}/{} omni_cap={}",
        g.n(),
        g.edge_count(),
        q,
        r,
        seed,
        config.reserve_p.num,
        config.reserve_p.den,
        config.bite.num,
        config.bite.den,
        config.omni_cap
    ));

    // stage 1: reserves, resampled until the omni cap holds
    let mut picked = None;
    for attempt in 0..config.reserve_cap_attempts {
        let (x, rep) = sample_reserves(
            g,
            q,
            config.reserve_p,
            split_seed(seed, 1_000 + attempt),
            config.reserve_delta_attempts,
        )?;
        if x.edge_count() <= config.omni_cap {
            trace.push(format!(
                "stage=reserves attempt={} edges={} delta={} bound={}/{} min_ext={} max_ext={}",
                attempt,
                x.edge_count(),
                rep.delta,
                rep.bound_num,
                rep.bound_den,
                rep.min_extensions(),
                rep.max_extensions()
            ));
            picked = Some(x);
            break;
        }
    }
    let Some(x) = picked else {
        trace.push("stage=reserves outcome=over_cap".to_string());
        return Ok(fail(trace, g.clone(), Hypergraph::new(0, r), "reserves"));
    };

    // stage 2: exhaustive omni-absorber on adjoined fresh vertices
    let omni: OmniAbsorber = match build_omni_absorber_exhaustive(&x, q, config.omni_cap) {
        Ok(o) => o,
        Err(e) => {
            trace.push(format!("stage=omni outcome=error detail={e}"));
            return Ok(fail(trace, g.clone(), Hypergraph::new(0, r), "omni"));
        }
    };
    // the omni ground shares labels 0..n with G; its absorber edges are fresh
    trace.push(format!(
        "stage=omni entries={} absorber_edges={} refinement={}",
        omni.entries.len(),
        omni.graph.edge_count(),
        omni.refinement
    ));
    let a_graph = omni.graph.clone();
    let host = g.union(&a_graph);

    // stage 3: low-weight weighting of J, boosted into a clique family
    let j = g.difference(&x);
    let (psi, route): (FractionalWeighting, &'static str) = 'route: {
        if j.edge_count() == 0 {
            // nothing left to cover: the reserves carry the whole graph
            break 'route (FractionalWeighting::new(j.clone(), q), "empty_remainder");
        }
        if j.edge_count() <= config.low_weight_edge_limit {
            let s = config.subset_size.unwrap_or_else(|| j.n().saturating_sub(1));
            if s > r && s <= j.n() {
                if let Ok((psi, _rep)) = low_weight_fractional(&j, q, s, SubsetMode::Enumerate, config.lp_cap) {
                    break 'route (psi, "low_weight");
                }
            }
        }
        // exact uniform low-weight packing (C = 1): no LP, richest boosted family
        if let Ok(psi) = uniform_clique_packing(&j, q) {
            if !psi.weights.is_empty() {
                break 'route (psi, "uniform_packing");
            }
        }
        // last resort: the strict LP, whose vertex solutions carry heavy weights
        if j.edge_count() <= config.strict_lp_edge_limit {
            match fractional_decompose(&j, q, PivotRule::Bland, config.lp_cap) {
                Ok(FractionalOutcome::Feasible(psi)) => break 'route (psi, "strict_lp"),
                Ok(FractionalOutcome::Infeasible) => {}
                Err(e) => {
                    trace.push(format!("stage=fractional outcome=error detail={e}"));
                    return Ok(fail(trace, host, a_graph, "fractional"));
                }
            }
        }
        trace.push("stage=fractional outcome=no_usable_weighting".to_string());
        return Ok(fail(trace, host, a_graph, "fractional"));
    };
    if psi.weights.is_empty() && j.edge_count() > 0 {
        trace.push("stage=fractional outcome=empty_weighting".to_string());
        return Ok(fail(trace, host, a_graph, "fractional"));
    }
    let c_measured = psi.measured_low_weight_constant();
    let (family, reg) = if psi.weights.is_empty() {
        (CliqueFamily::new(q, Vec::new()), None)
    } else {
        match boost_regularity(&j, &psi, &c_measured, split_seed(seed, 3)) {
            Ok((f, r)) => (f, Some(r)),
            Err(e) => {
                trace.push(format!("stage=boost outcome=error detail={e}"));
                return Ok(fail(trace, host, a_graph, "boost"));
            }
        }
    };
    trace.push(format!(
        "stage=fractional route={route} support={} max_weight={} measured_c={}",
        psi.weights.len(),
        psi.max_weight(),
        c_measured
    ));
    match &reg {
        Some(reg) => trace.push(format!(
            "stage=boost cliques={} density={} min_edge={} max_edge={}",
            family.len(),
            reg.density,
            reg.min_edge_count,
            reg.max_edge_count
        )),
        None => trace.push("stage=boost cliques=0 density=0 min_edge=0 max_edge=0".to_string()),
    }

    // stage 4: nibble with reserves covering J
    let nib = match nibble_with_reserves(&j, &x, &family, config.bite, split_seed(seed, 4), config.nibble_rounds) {
        Ok(n) => n,
        Err(e) => {
            trace.push(format!("stage=nibble outcome=error detail={e}"));
            return Ok(fail(trace, host, a_graph, "nibble"));
        }
    };
    trace.push(format!(
        "stage=nibble rounds={} bites={} cover_down={} leave={}",
        nib.rounds,
        nib.bite_cliques,
        nib.cover_down_cliques,
        nib.leave.len()
    ));
    if !nib.success() {
        trace.push(format!("stage=nibble outcome=leave leave_edges={}", nib.leave.len()));
        return Ok(fail(trace, host, a_graph, "nibble"));
    }

    // stage 5: leftover reserve edges must form a divisible subgraph of X
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    for c in &nib.packing.cliques {
        used.extend(combinations(c, r));
    }
    let leftover: Vec<Edge> = x.edges().filter(|e| !used.contains(*e)).cloned().collect();
    let l = Hypergraph::from_edges(x.n(), r, leftover)?;
    if !l.is_divisible(q)? {
        trace.push("stage=leftover outcome=divisibility_broken".to_string());
        return Ok(fail(trace, host, a_graph, "leftover"));
    }
    trace.push(format!("stage=leftover edges={} divisible=true", l.edge_count()));

    // stage 6: absorb the leftover and assemble the decomposition of G ∪ A
    let Some(q2) = omni.decomposition_for(&l) else {
        trace.push("stage=absorb outcome=missing_entry".to_string());
        return Ok(fail(trace, host, a_graph, "absorb"));
    };
    let mut cliques = nib.packing.cliques.clone();
    cliques.extend(q2.cliques.iter().cloned());
    let decomposition = CliqueFamily::new(q, cliques);
    let verified = verify_decomposition(&host, &decomposition).unwrap_or(false);
    trace.push(format!(
        "stage=absorb q1={} q2={} total={}",
        nib.packing.len(),
        q2.len(),
        decomposition.len()
    ));
    trace.push(format!("decomposition verified: {verified}"));
    if !verified {
        return Ok(fail(trace, host, a_graph, "verify"));
    }
    Ok(PipelineResult {
        decomposition: Some(decomposition),
        host,
        absorber_graph: a_graph,
        trace,
        failed_stage: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_trace_reports_empty() {
        assert_eq!(report(&PipelineTrace::default()), "");
    }

    #[test]
    fn pipeline_rejects_indivisible() {
        let k6 = Hypergraph::complete(6, 2);
        assert!(matches!(
            decompose(&k6, 3, &PipelineConfig::default(), 1),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn pipeline_trace_deterministic() {
        let k7 = Hypergraph::complete(7, 2);
        let cfg = PipelineConfig::default();
        let a = decompose(&k7, 3, &cfg, 12345).unwrap();
        let b = decompose(&k7, 3, &cfg, 12345).unwrap();
        assert_eq!(a.trace.render(), b.trace.render());
        assert_eq!(a.success(), b.success());
    }

    #[test]
    fn pipeline_k7_verifies_or_names_stage() {
        let k7 = Hypergraph::complete(7, 2);
        let cfg = PipelineConfig::default();
        let res = decompose(&k7, 3, &cfg, 7).unwrap();
        if res.success() {
            let fam = res.decomposition.unwrap();
            assert!(verify_decomposition(&res.host, &fam).unwrap());
        } else {
            assert!(res.failed_stage.is_some());
            assert!(!res.trace.lines.is_empty());
        }
    }

    #[test]
    fn failed_nibble_stage_named_in_report() {
        // triangle plus a disjoint C_6: divisible, the packing LP covers only
        // the triangle, and with empty reserves the cycle edges are left over
        let mut g = Hypergraph::cycle(6);
        g.pad_vertices(9);
        for e in [[6u32, 7], [6, 8], [7, 8]] {
            g.insert_edge(e.to_vec()).unwrap();
        }
        let mut cfg = PipelineConfig::default();
        cfg.reserve_p = Prob { num: 0, den: 1 };
        let res = decompose(&g, 3, &cfg, 3).unwrap();
        assert!(!res.success());
        assert_eq!(res.failed_stage, Some("nibble"));
        let text = report(&res.trace);
        assert!(text.contains("stage=nibble"));
        assert!(text.contains("leave_edges=6"));
    }

    #[test]
    fn failed_fractional_stage_named_in_report() {
        // C_6 alone: no triangles at all, the weighting stage cannot proceed
        let c6 = Hypergraph::cycle(6);
        let mut cfg = PipelineConfig::default();
        cfg.reserve_p = Prob { num: 0, den: 1 };
        let res = decompose(&c6, 3, &cfg, 3).unwrap();
        assert!(!res.success());
        assert_eq!(res.failed_stage, Some("fractional"));
    }
}
