//! Text formats: hypergraphs, integral valuations, fractional weightings,
//! packings, gadget side-cars, and absorber bundles.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use kqr_core::absorber::Absorber;
use kqr_core::gadgets::RootedGadget;
use kqr_core::hypergraph::{CliqueFamily, Edge, Hypergraph};
use kqr_core::integral::IntegralValuation;

pub type FormatError = String;

/// `r n m` header plus one sorted edge per line; bit-exact round trip.
pub fn hypergraph_to_string(g: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", g.r_max(), g.n(), g.edge_count());
    for e in g.edges() {
        let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

pub fn hypergraph_from_str(s: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header = lines.next().ok_or("empty hypergraph file")?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|e| format!("bad header: {e}")))
        .collect::<Result<_, _>>()?;
    let [r, n, m] = nums.as_slice() else {
        return Err("header must be `r n m`".into());
    };
    let mut g = Hypergraph::new(*n, *r);
    let mut count = 0usize;
    for line in lines {
        let edge: Vec<u32> = line
            .split_whitespace()
            .map(|w| w.parse::<u32>().map_err(|e| format!("bad vertex: {e}")))
            .collect::<Result<_, _>>()?;
        g.insert_edge(edge).map_err(|e| e.to_string())?;
        count += 1;
    }
    if count != *m {
        return Err(format!("header announces {m} edges, file has {count}"));
    }
    Ok(g)
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    hypergraph_from_str(&text)
}

pub fn write_hypergraph(path: &Path, g: &Hypergraph) -> Result<(), FormatError> {
    fs::write(path, hypergraph_to_string(g)).map_err(|e| format!("{}: {e}", path.display()))
}

/// One `w v1 .. vq` line per support clique.
pub fn valuation_to_string(phi: &IntegralValuation) -> String {
    let mut out = String::new();
    for (c, w) in &phi.weights {
        let words: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{} {}", w, words.join(" "));
    }
    out
}

/// One `p/q v1 .. vq` line per support clique.
pub fn weighting_lines(weights: &BTreeMap<Vec<u32>, BigRational>) -> String {
    let mut out = String::new();
    for (c, w) in weights {
        let words: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}/{} {}", w.numer(), w.denom(), words.join(" "));
    }
    out
}

pub fn parse_rational(s: &str) -> Result<BigRational, FormatError> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num}: {e}"))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den}: {e}"))?;
    if den == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

/// Edge targets / weightings: `p/q v1 .. vk` per line.
pub fn parse_weighted_sets(s: &str) -> Result<BTreeMap<Vec<u32>, BigRational>, FormatError> {
    let mut out = BTreeMap::new();
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let w = parse_rational(words.next().ok_or("missing weight")?)?;
        let mut set: Vec<u32> = words
            .map(|v| v.parse::<u32>().map_err(|e| format!("bad vertex: {e}")))
            .collect::<Result<_, _>>()?;
        set.sort_unstable();
        out.insert(set, w);
    }
    Ok(out)
}

/// One clique per line.
pub fn packing_to_string(fam: &CliqueFamily) -> String {
    let mut out = String::new();
    for c in &fam.cliques {
        let words: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

pub fn packing_from_str(q: usize, s: &str) -> Result<CliqueFamily, FormatError> {
    let mut cliques = Vec::new();
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let clique: Vec<u32> = line
            .split_whitespace()
            .map(|w| w.parse::<u32>().map_err(|e| format!("bad vertex: {e}")))
            .collect::<Result<_, _>>()?;
        if clique.len() != q {
            return Err(format!("clique {clique:?} has order {} != {q}", clique.len()));
        }
        cliques.push(clique);
    }
    Ok(CliqueFamily::new(q, cliques))
}

/// Edge list, one edge per line.
pub fn edges_to_string(edges: &[Edge]) -> String {
    let mut out = String::new();
    for e in edges {
        let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

/// Hypergraph text plus a side-car annotation block with roots, layers, and
/// part colorings; clique families follow one clique per line.
pub fn gadget_to_string(g: &RootedGadget, families: &[(&str, &CliqueFamily)]) -> String {
    let mut out = hypergraph_to_string(&g.graph);
    let words: Vec<String> = g.roots.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "# roots\n{}", words.join(" "));
    if let Some(layers) = &g.layers {
        for (i, layer) in layers.iter().enumerate() {
            let pairs: Vec<String> = layer
                .vertices
                .iter()
                .map(|v| format!("{}:{}", v, layer.coloring.get(v).copied().unwrap_or(usize::MAX)))
                .collect();
            let _ = writeln!(out, "# layer {i}\n{}", pairs.join(" "));
        }
    }
    for (name, fam) in families {
        let _ = writeln!(out, "# family {name}");
        out.push_str(&packing_to_string(fam));
    }
    out
}

/// Absorber bundle directory: graph, annotations, both decompositions, and a
/// key/value structure manifest.
pub fn write_absorber_bundle(dir: &Path, ab: &Absorber) -> Result<(), FormatError> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    write_hypergraph(&dir.join("graph.hg"), &ab.graph)?;
    write_hypergraph(&dir.join("target.hg"), &ab.target)?;
    let gadget = ab.rooted_gadget();
    fs::write(dir.join("annotations.txt"), gadget_to_string(&gadget, &[]))
        .map_err(|e| e.to_string())?;
    fs::write(dir.join("a1.cliques"), packing_to_string(&ab.a1)).map_err(|e| e.to_string())?;
    fs::write(dir.join("a2.cliques"), packing_to_string(&ab.a2)).map_err(|e| e.to_string())?;
    let mut manifest = String::new();
    let _ = writeln!(manifest, "q {}", ab.q);
    let _ = writeln!(manifest, "r {}", ab.r);
    let _ = writeln!(manifest, "target_edges {}", ab.target.edge_count());
    let _ = writeln!(manifest, "graph_edges {}", ab.graph.edge_count());
    let _ = writeln!(manifest, "positive_copies {}", ab.structure.positive_copies);
    let _ = writeln!(manifest, "negative_copies {}", ab.structure.negative_copies);
    let _ = writeln!(manifest, "boosters {}", ab.structure.boosters);
    let _ = writeln!(manifest, "hinges {}", ab.structure.hinges);
    let _ = writeln!(manifest, "a1_cliques {}", ab.a1.len());
    let _ = writeln!(manifest, "a2_cliques {}", ab.a2.len());
    for (f, neg, pos) in &ab.structure.matchings {
        let fs_: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        let ns: Vec<String> = neg.iter().map(|v| v.to_string()).collect();
        let ps: Vec<String> = pos.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(manifest, "matching {} | {} | {}", fs_.join(" "), ns.join(" "), ps.join(" "));
    }
    fs::write(dir.join("structure.txt"), manifest).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_round_trip_bit_exact() {
        let g = Hypergraph::complete(6, 3);
        let text = hypergraph_to_string(&g);
        let parsed = hypergraph_from_str(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(hypergraph_to_string(&parsed), text);
        let c6 = Hypergraph::cycle(6);
        let text = hypergraph_to_string(&c6);
        assert_eq!(hypergraph_to_string(&hypergraph_from_str(&text).unwrap()), text);
    }

    #[test]
    fn hypergraph_header_checked() {
        assert!(hypergraph_from_str("2 4 3\n0 1\n").is_err());
        assert!(hypergraph_from_str("").is_err());
    }

    #[test]
    fn weighted_set_round_trip() {
        let mut w = BTreeMap::new();
        w.insert(vec![0u32, 1, 2], BigRational::new(BigInt::from(1), BigInt::from(5)));
        w.insert(vec![1u32, 2, 4], BigRational::new(BigInt::from(-3), BigInt::from(7)));
        let text = weighting_lines(&w);
        let parsed = parse_weighted_sets(&text).unwrap();
        assert_eq!(parsed, w);
    }

    #[test]
    fn packing_round_trip() {
        let fam = CliqueFamily::new(3, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let text = packing_to_string(&fam);
        let parsed = packing_from_str(3, &text).unwrap();
        assert_eq!(parsed.cliques, fam.cliques);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(parse_rational("5").unwrap(), BigRational::new(BigInt::from(5), BigInt::from(1)));
        assert!(parse_rational("1/0").is_err());
    }
}
