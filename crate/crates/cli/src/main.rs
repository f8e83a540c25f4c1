//! Command-line front end: build, verify, and report on every object the core
//! crate constructs. Exit code 0 only when all requested verifications pass.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use kqr_cli::*;
use kqr_core::absorber::{build_absorber, build_omni_absorber_exhaustive, verify_absorber};
use kqr_core::embed::count_embeddings;
use kqr_core::exact_cover::{exact_cover_decompose, CoverOutcome};
use kqr_core::fractional::{
    boost_regularity, fixed_fractional_auto, fractional_decompose, max_fractional_packing,
    FractionalOutcome,
};
use kqr_core::gadgets::{
    build_booster, build_fake_edge, build_hinge, build_orthogonal_booster, rooted_degeneracy,
    LabelArena,
};
use kqr_core::hypergraph::{binomial, combinations, verify_decomposition, CliqueFamily, Hypergraph};
use kqr_core::integral::{
    edge_intersecting_integral_decompose, is_edge_intersecting, IntegralHypergraph,
};
use kqr_core::nibble::{nibble_with_reserves, sample_reserves, Prob};
use kqr_core::pipeline::{decompose, report as pipeline_report, PipelineConfig};
use kqr_core::simplex::PivotRule;
use kqr_core::turan::{
    density_vector, spencer_alteration, subset_density_tail, turan_space_probe, SpencerMode,
    TailMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "kqr", version, about = "Exact clique-decomposition machinery for dense hypergraphs")]
struct Cli {
    /// RNG seed for randomized procedures
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Generic work cap (search nodes / LP size)
    #[arg(long, global = true, default_value_t = 1 << 26)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check K_q^r-divisibility of a uniform hypergraph
    CheckDiv {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
    },
    /// Enumerate the q-cliques of a uniform hypergraph
    Cliques {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact-cover search for a K_q^r-decomposition
    DecomposeExact {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify the Cauchy booster for the canonical q-clique
    Booster {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        r: usize,
    },
    /// Build and verify an orthogonal booster
    OrthBooster {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        r: usize,
    },
    /// Build and verify an independent hinge for two cliques sharing an edge
    Hinge {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        r: usize,
    },
    /// Build a fake-edge and report its divisibility footprint
    FakeEdge {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        r: usize,
    },
    /// Edge-intersecting integral K_q^r-decomposition of the input
    Integral {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, verify, and optionally export an absorber for the input target
    Absorber {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        /// bundle directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive omni-absorber over the input reserve graph
    Omni {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        /// max reserve edges
        #[arg(long, default_value_t = 10)]
        edge_cap: usize,
    },
    /// Exact-rational fractional decomposition (LP feasibility)
    Fractional {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
    },
    /// Fractional weighting hitting prescribed per-edge targets exactly
    FixedFractional {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        /// targets file: `p/q v1 .. vr` per edge
        #[arg(long)]
        targets: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a regular clique family from a low-weight weighting
    Boost {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        /// weighting file: `p/q v1 .. vq` per clique
        #[arg(long)]
        weights: PathBuf,
        /// low-weight constant as a rational
        #[arg(long)]
        low_weight_c: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a reserve subgraph and report per-edge extension counts
    Reserves {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        /// probability as num/den
        #[arg(short, long)]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nibble-with-reserves packing of the input covered graph
    Nibble {
        /// the graph to cover
        #[arg(long)]
        input: PathBuf,
        /// the reserve graph (edge-disjoint from the input)
        #[arg(long)]
        reserves: PathBuf,
        #[arg(short)]
        q: usize,
        /// clique family file; derived by LP + boosting when missing
        #[arg(long)]
        cliques: Option<PathBuf>,
        #[arg(long, default_value = "1/4")]
        bite: String,
        #[arg(long, default_value_t = 32)]
        rounds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// End-to-end reserve/absorb/nibble decomposition pipeline
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        #[arg(short, long, default_value = "1/10")]
        p: String,
        #[arg(long, default_value = "1/4")]
        bite: String,
        #[arg(long, default_value_t = 10)]
        edge_cap: usize,
        /// subset size for the low-weight stage
        #[arg(short, long)]
        s: Option<usize>,
    },
    /// Count subgraph copies of a pattern
    CountCopies {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Independent set by alteration (random or derandomized)
    Spencer {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        q: usize,
        #[arg(long)]
        derandomize: bool,
    },
    /// Empirical Turán-space probe for a pattern
    TuranProbe {
        #[arg(long)]
        pattern: PathBuf,
        /// comma-separated per-uniformity densities, e.g. 9/10,4/5
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "1/20")]
        eps: String,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        /// write per-trial copy counts as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fraction of k-subsets with induced edge count below beta * binom(k, r)
    Tail {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        beta: String,
        /// sample size; exhaustive when omitted
        #[arg(long)]
        trials: Option<u64>,
    },
}

struct Report {
    /// all requested verifications passed
    ok: bool,
    fields: Vec<(String, Value)>,
}

impl Report {
    fn new() -> Self {
        Report { ok: true, fields: Vec::new() }
    }
    fn put(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.push((key.to_string(), value));
        self
    }
    fn check(&mut self, key: &str, pass: bool) -> &mut Self {
        self.ok &= pass;
        self.put(key, json!(pass))
    }
}

fn print_report(rep: &Report, format: OutputFormat) {
    match format {
        OutputFormat::Text => {
            for (k, v) in &rep.fields {
                match v {
                    Value::String(s) if s.contains('\n') => {
                        println!("{k}:");
                        for line in s.lines() {
                            println!("  {line}");
                        }
                    }
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
            println!("all verifications passed: {}", rep.ok);
        }
        OutputFormat::Json => {
            let mut map = Map::new();
            for (k, v) in &rep.fields {
                map.insert(k.clone(), v.clone());
            }
            map.insert("ok".to_string(), json!(rep.ok));
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap());
        }
    }
}

fn parse_prob(s: &str) -> Result<Prob, String> {
    let (num, den) = s.split_once('/').ok_or("probability must be num/den")?;
    let num: u64 = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
    let den: u64 = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
    Prob::new(num, den).map_err(|e| e.to_string())
}

fn canonical_clique(q: usize) -> Vec<u32> {
    (0..q as u32).collect()
}

fn run(cli: Cli) -> Result<Report, String> {
    let cap = cli.cap;
    let seed = cli.seed;
    let mut rep = Report::new();
    match cli.command {
        Command::CheckDiv { input, q } => {
            let g = read_hypergraph(&input)?;
            let divisible = g.is_divisible(q).map_err(|e| e.to_string())?;
            rep.put("n", json!(g.n()))
                .put("edges", json!(g.edge_count()))
                .put("q", json!(q))
                .check("divisible", divisible);
        }
        Command::Cliques { input, q, out } => {
            let g = read_hypergraph(&input)?;
            let cliques = g.enumerate_cliques(q).map_err(|e| e.to_string())?;
            rep.put("count", json!(cliques.len()));
            let fam = CliqueFamily::new(q, cliques);
            if let Some(path) = out {
                std::fs::write(&path, packing_to_string(&fam)).map_err(|e| e.to_string())?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::DecomposeExact { input, q, budget, out } => {
            let g = read_hypergraph(&input)?;
            match exact_cover_decompose(&g, q, budget).map_err(|e| e.to_string())? {
                CoverOutcome::Found(fam) => {
                    let verified = verify_decomposition(&g, &fam).map_err(|e| e.to_string())?;
                    rep.put("outcome", json!("found"))
                        .put("cliques", json!(fam.len()))
                        .check("verified", verified);
                    if let Some(path) = out {
                        std::fs::write(&path, packing_to_string(&fam)).map_err(|e| e.to_string())?;
                        rep.put("out", json!(path.display().to_string()));
                    }
                }
                CoverOutcome::ProvenNone => {
                    rep.put("outcome", json!("proven_nonexistent")).check("found", false);
                }
            }
        }
        Command::Booster { q, r } => {
            let mut arena = LabelArena::new(q as u32);
            let sys = kqr_core::gadgets::CauchySystem::new(q, r).map_err(|e| e.to_string())?;
            let b = build_booster(&canonical_clique(q), r, &mut arena).map_err(|e| e.to_string())?;
            rep.put("prime", json!(sys.p))
                .put("on_cliques", json!(b.on.len()))
                .put("off_cliques", json!(b.off.len()))
                .put("edges", json!(b.graph.edge_count()))
                .check("verified", b.verify().is_ok());
        }
        Command::OrthBooster { q, r } => {
            let mut arena = LabelArena::new(q as u32);
            let b = build_orthogonal_booster(&canonical_clique(q), r, &mut arena).map_err(|e| e.to_string())?;
            rep.put("on_cliques", json!(b.on.len()))
                .put("off_cliques", json!(b.off.len()))
                .put("edges", json!(b.graph.edge_count()))
                .put("augmentation_rounds", json!(b.rounds))
                .check("verified", b.verify().is_ok())
                .check("orthogonal", b.orthogonal);
        }
        Command::Hinge { q, r } => {
            // canonical cliques sharing exactly one r-edge
            let s1 = canonical_clique(q);
            let mut s2: Vec<u32> = (0..r as u32).collect();
            s2.extend(q as u32..(2 * q - r) as u32);
            let mut arena = LabelArena::new((2 * q - r) as u32);
            let h = build_hinge(&s1, &s2, r, &mut arena).map_err(|e| e.to_string())?;
            rep.put("edges", json!(h.graph.edge_count()))
                .put("left_cliques", json!(h.left.len()))
                .put("right_cliques", json!(h.right.len()))
                .put("roots", json!(h.roots().len()))
                .check("verified", h.verify().is_ok());
        }
        Command::FakeEdge { q, r } => {
            let f: Vec<u32> = (0..r as u32).collect();
            let mut arena = LabelArena::new(r as u32);
            let g = build_fake_edge(&f, q, &mut arena).map_err(|e| e.to_string())?;
            rep.put("new_vertices", json!(g.non_root_vertices().len()))
                .put("edges", json!(g.graph.edge_count()))
                .put("rooted_degeneracy", json!(rooted_degeneracy(&g)));
            let mut congruences_hold = true;
            for i in 0..r {
                let modulus = binomial(q - i, r - i);
                for s in combinations(&f, i) {
                    let d = g.graph.degree(&s).map_err(|e| e.to_string())? as u64;
                    congruences_hold &= d % modulus == 1 % modulus;
                }
            }
            rep.check("congruences", congruences_hold)
                .check("vertex_bound", g.non_root_vertices().len() == (q - r) * binomial(q, r) as usize);
            // sanity: the gadget embeds into a modest complete host
            let host = Hypergraph::complete(g.graph.support().len() + r + 2, r);
            let image = f.iter().map(|&v| (v, v)).collect();
            let count = count_embeddings(&host, &g, &image, cap).map_err(|e| e.to_string())?;
            rep.put("embeddings_into_complete_host", json!(count));
        }
        Command::Integral { input, q, out } => {
            let g = read_hypergraph(&input)?;
            let target = IntegralHypergraph::unit(g.clone());
            let phi = edge_intersecting_integral_decompose(&target, q).map_err(|e| e.to_string())?;
            let boundary_ok = {
                let b = phi.boundary();
                g.edges().all(|e| b.get(e).map(|w| w == &num_bigint::BigInt::from(1)).unwrap_or(false))
                    && b.len() == g.edge_count()
            };
            rep.put("ground_vertices", json!(phi.m))
                .put("support_cliques", json!(phi.weights.len()))
                .put("l1_norm", json!(phi.l1_norm().to_string()))
                .check("boundary_exact", boundary_ok)
                .check("edge_intersecting", is_edge_intersecting(&phi, &g));
            if let Some(path) = out {
                std::fs::write(&path, valuation_to_string(&phi)).map_err(|e| e.to_string())?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::Absorber { input, q, out } => {
            let l = read_hypergraph(&input)?;
            let ab = build_absorber(&l, q).map_err(|e| e.to_string())?;
            let r = verify_absorber(&ab).map_err(|e| e.to_string())?;
            rep.put("graph_edges", json!(r.graph_edges))
                .put("vertices", json!(r.vertices))
                .put("a1_cliques", json!(r.a1_cliques))
                .put("a2_cliques", json!(r.a2_cliques))
                .put("boosters", json!(ab.structure.boosters))
                .put("hinges", json!(ab.structure.hinges))
                .check("roots_independent", r.roots_independent)
                .check("a1_decomposes", r.a1_decomposes)
                .check("a2_decomposes", r.a2_decomposes)
                .check("edge_intersecting", r.edge_intersecting)
                .check("partite_degenerate", r.partite_degenerate);
            if let Some(dir) = out {
                write_absorber_bundle(&dir, &ab)?;
                rep.put("bundle", json!(dir.display().to_string()));
            }
        }
        Command::Omni { input, q, edge_cap } => {
            let x = read_hypergraph(&input)?;
            let omni = build_omni_absorber_exhaustive(&x, q, edge_cap).map_err(|e| e.to_string())?;
            let mut all_ok = true;
            for entry in &omni.entries {
                let fam = omni.decomposition_for(&entry.subgraph).ok_or("missing entry")?;
                let host = omni.graph.union(&entry.subgraph);
                all_ok &= verify_decomposition(&host, &fam).map_err(|e| e.to_string())?;
            }
            rep.put("divisible_subgraphs", json!(omni.entries.len()))
                .put("absorber_edges", json!(omni.graph.edge_count()))
                .put("refinement", json!(omni.refinement))
                .check("all_entries_verified", all_ok);
        }
        Command::Fractional { input, q } => {
            let g = read_hypergraph(&input)?;
            match fractional_decompose(&g, q, PivotRule::Bland, cap).map_err(|e| e.to_string())? {
                FractionalOutcome::Feasible(psi) => {
                    rep.put("outcome", json!("feasible"))
                        .put("support", json!(psi.weights.len()))
                        .put("max_weight", json!(psi.max_weight().to_string()))
                        .check("boundary_exact", true);
                }
                FractionalOutcome::Infeasible => {
                    rep.put("outcome", json!("infeasible")).check("feasible", false);
                }
            }
        }
        Command::FixedFractional { input, q, targets, out } => {
            let g = read_hypergraph(&input)?;
            let text = std::fs::read_to_string(&targets).map_err(|e| e.to_string())?;
            let targets = parse_weighted_sets(&text)?;
            let phi = fixed_fractional_auto(&g, q, &targets, cap).map_err(|e| e.to_string())?;
            let b = phi.boundary();
            let exact = g.edges().all(|e| b.get(e) == targets.get(e));
            rep.put("support", json!(phi.weights.len()))
                .put("max_weight", json!(phi.max_weight().to_string()))
                .check("boundary_matches_targets", exact)
                .check("weights_in_unit_interval", phi.weights_in_unit_interval());
            if let Some(path) = out {
                std::fs::write(&path, weighting_lines(&phi.weights)).map_err(|e| e.to_string())?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::Boost { input, q, weights, low_weight_c, out } => {
            let g = read_hypergraph(&input)?;
            let text = std::fs::read_to_string(&weights).map_err(|e| e.to_string())?;
            let parsed = parse_weighted_sets(&text)?;
            let mut psi = kqr_core::fractional::FractionalWeighting::new(g.clone(), q);
            for (c, w) in parsed {
                psi.add_weight(c, w);
            }
            let c = parse_rational(&low_weight_c)?;
            let (fam, reg) = boost_regularity(&g, &psi, &c, seed).map_err(|e| e.to_string())?;
            rep.put("sampled_cliques", json!(fam.len()))
                .put("density", json!(reg.density.to_string()))
                .put("min_edge_count", json!(reg.min_edge_count))
                .put("max_edge_count", json!(reg.max_edge_count));
            if let Some(path) = out {
                std::fs::write(&path, packing_to_string(&fam)).map_err(|e| e.to_string())?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::Reserves { input, q, p, out } => {
            let g = read_hypergraph(&input)?;
            let p = parse_prob(&p)?;
            let (x, report) = sample_reserves(&g, q, p, seed, 64).map_err(|e| e.to_string())?;
            rep.put("reserve_edges", json!(x.edge_count()))
                .put("attempts", json!(report.attempts))
                .put("delta", json!(report.delta))
                .put("bound", json!(format!("{}/{}", report.bound_num, report.bound_den)))
                .put("min_extensions", json!(report.min_extensions()))
                .put("max_extensions", json!(report.max_extensions()))
                .check(
                    "delta_within_bound",
                    (report.delta as u64) * report.bound_den <= report.bound_num,
                );
            if let Some(path) = out {
                write_hypergraph(&path, &x)?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::Nibble { input, reserves, q, cliques, bite, rounds, out } => {
            let g = read_hypergraph(&input)?;
            let x = read_hypergraph(&reserves)?;
            let bite = parse_prob(&bite)?;
            let family = match cliques {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    packing_from_str(q, &text)?
                }
                None => {
                    // LP-derived family: strict decomposition when feasible,
                    // max packing otherwise, boosted by sampling
                    let psi = match fractional_decompose(&g, q, PivotRule::Bland, cap)
                        .map_err(|e| e.to_string())?
                    {
                        FractionalOutcome::Feasible(psi) => psi,
                        FractionalOutcome::Infeasible => {
                            max_fractional_packing(&g, q, cap).map_err(|e| e.to_string())?
                        }
                    };
                    let c = psi.measured_low_weight_constant();
                    if c.numer() == &num_bigint::BigInt::from(0) {
                        CliqueFamily::new(q, vec![])
                    } else {
                        boost_regularity(&g, &psi, &c, seed).map_err(|e| e.to_string())?.0
                    }
                }
            };
            let outcome =
                nibble_with_reserves(&g, &x, &family, bite, seed, rounds).map_err(|e| e.to_string())?;
            rep.put("family", json!(family.len()))
                .put("rounds", json!(outcome.rounds))
                .put("bite_cliques", json!(outcome.bite_cliques))
                .put("cover_down_cliques", json!(outcome.cover_down_cliques))
                .put("leave_edges", json!(outcome.leave.len()))
                .check("packing_valid", true)
                .check("covered_all", outcome.success());
            if let Some(path) = out {
                let mut text = packing_to_string(&outcome.packing);
                text.push_str("# leave\n");
                text.push_str(&edges_to_string(&outcome.leave));
                std::fs::write(&path, text).map_err(|e| e.to_string())?;
                rep.put("out", json!(path.display().to_string()));
            }
        }
        Command::Pipeline { input, q, p, bite, edge_cap, s } => {
            let g = read_hypergraph(&input)?;
            let config = PipelineConfig {
                reserve_p: parse_prob(&p)?,
                bite: parse_prob(&bite)?,
                omni_cap: edge_cap,
                subset_size: s,
                lp_cap: cap,
                ..PipelineConfig::default()
            };
            let result = decompose(&g, q, &config, seed).map_err(|e| e.to_string())?;
            rep.put("trace", json!(pipeline_report(&result.trace)));
            match &result.failed_stage {
                None => {
                    let fam = result.decomposition.as_ref().ok_or("missing decomposition")?;
                    let verified = verify_decomposition(&result.host, fam).map_err(|e| e.to_string())?;
                    rep.put("cliques", json!(fam.len()))
                        .put("host_edges", json!(result.host.edge_count()))
                        .check("decomposition_verified", verified);
                }
                Some(stage) => {
                    rep.put("failed_stage", json!(stage)).check("pipeline_succeeded", false);
                }
            }
        }
        Command::CountCopies { input, pattern } => {
            let g = read_hypergraph(&input)?;
            let f = read_hypergraph(&pattern)?;
            let copies = kqr_core::hypergraph::count_copies(&g, &f, cap).map_err(|e| e.to_string())?;
            rep.put("copies", json!(copies));
            let d = density_vector(&g);
            let densities: Vec<String> = d.0.iter().map(|x| x.to_string()).collect();
            rep.put("host_densities", json!(densities));
        }
        Command::Spencer { input, q, derandomize } => {
            let g = read_hypergraph(&input)?;
            let mode = if derandomize {
                SpencerMode::Derandomize
            } else {
                SpencerMode::Random { seed }
            };
            let res = spencer_alteration(&g, q, mode).map_err(|e| e.to_string())?;
            rep.put("independent_set_size", json!(res.independent_set.len()))
                .put("sampled", json!(res.sampled))
                .put("deleted", json!(res.deleted))
                .put("expectation", json!(res.expectation.to_string()))
                .check("independent", true)
                .check("size_at_least_q", !derandomize || res.independent_set.len() >= q);
        }
        Command::TuranProbe { pattern, alpha, eps, n, trials, csv } => {
            let f = read_hypergraph(&pattern)?;
            let alpha: Vec<_> = alpha.split(',').map(parse_rational).collect::<Result<_, _>>()?;
            let eps = parse_rational(&eps)?;
            let probe = turan_space_probe(&f, &alpha, &eps, n, trials, seed, cap).map_err(|e| e.to_string())?;
            rep.put("trials", json!(probe.trials))
                .put("hits", json!(probe.hits))
                .put("min_copies", json!(probe.min_copies))
                .put("max_copies", json!(probe.max_copies))
                .put("min_ratio", json!(probe.min_ratio.to_string()));
            let densities: Vec<String> = probe.last_densities.iter().map(|x| x.to_string()).collect();
            rep.put("last_densities", json!(densities));
            if let Some(path) = csv {
                let mut text = String::from("trial,copies\n");
                for (t, c) in probe.per_trial.iter().enumerate() {
                    text.push_str(&format!("{t},{c}\n"));
                }
                std::fs::write(&path, text).map_err(|e| e.to_string())?;
                rep.put("csv", json!(path.display().to_string()));
            }
        }
        Command::Tail { input, k, beta, trials } => {
            let g = read_hypergraph(&input)?;
            let beta = parse_rational(&beta)?;
            let mode = match trials {
                Some(t) => TailMode::Sample { trials: t, seed },
                None => TailMode::Exhaustive,
            };
            let t = subset_density_tail(&g, k, &beta, mode).map_err(|e| e.to_string())?;
            rep.put("below", json!(t.below))
                .put("total", json!(t.total))
                .put("regime_ok", json!(t.regime_ok));
        }
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(rep) => {
            let ok = rep.ok;
            print_report(&rep, format);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
