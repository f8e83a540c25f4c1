//! End-to-end pipeline paths pinned to concrete seeds: the trivial
//! reserve degeneration (empty reserves, nibble finds a perfect packing) and
//! the genuine absorption path (a reserve triangle survives the nibble and is
//! handed to the omni-absorber).

use kqr_core::hypergraph::{verify_decomposition, Hypergraph};
use kqr_core::nibble::Prob;
use kqr_core::pipeline::{decompose, PipelineConfig};

fn two_triangles() -> Hypergraph {
    Hypergraph::from_edges(
        6,
        2,
        vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![3, 4], vec![3, 5], vec![4, 5]],
    )
    .unwrap()
}

#[test]
fn trivial_reserve_degeneration_succeeds() {
    // with these parameters the reserve sample is empty and the nibble's
    // clique family alone decomposes K_7
    let g = Hypergraph::complete(7, 2);
    let config = PipelineConfig { reserve_p: Prob::new(1, 21).unwrap(), ..PipelineConfig::default() };
    let res = decompose(&g, 3, &config, 4).unwrap();
    assert!(res.success(), "trace:\n{}", res.trace.render());
    let fam = res.decomposition.unwrap();
    assert_eq!(fam.len(), 7);
    assert!(verify_decomposition(&res.host, &fam).unwrap());
    assert!(res.trace.render().contains("stage=leftover edges=0"));
}

#[test]
fn absorption_path_succeeds_with_leftover_reserves() {
    // seed 68 puts one whole triangle into the reserves; the nibble covers the
    // other one, and the leftover triangle is absorbed through the
    // omni-absorber's decomposition function
    let g = two_triangles();
    let config = PipelineConfig { reserve_p: Prob::new(2, 3).unwrap(), ..PipelineConfig::default() };
    let res = decompose(&g, 3, &config, 68).unwrap();
    let trace = res.trace.render();
    assert!(res.success(), "trace:\n{trace}");
    assert!(trace.contains("stage=leftover edges=3 divisible=true"), "trace:\n{trace}");
    let fam = res.decomposition.unwrap();
    assert!(fam.len() > 2, "absorption must contribute cliques beyond the nibble");
    assert!(verify_decomposition(&res.host, &fam).unwrap());
    assert!(res.absorber_graph.edge_count() > 0);
}

#[test]
fn divisibility_cascade_on_every_successful_run() {
    // on every successful run the leftover reserve subgraph is divisible;
    // the trace records the assertion outcome
    let g = two_triangles();
    let config = PipelineConfig { reserve_p: Prob::new(2, 3).unwrap(), ..PipelineConfig::default() };
    let mut successes = 0;
    for seed in 60..80 {
        let res = decompose(&g, 3, &config, seed).unwrap();
        if res.success() {
            successes += 1;
            assert!(res.trace.render().contains("divisible=true"));
        }
    }
    assert!(successes > 0, "at least one seed in the scanned window succeeds");
}
