//! Atomic gadgets: anti-edges, fake-edges, Cauchy-matrix boosters, orthogonal
//! boosters, and independent hinges, all carrying explicit partite structure.
//!
//! Boosters come from a (q-r) x q Cauchy matrix over F_p for the smallest
//! prime p in (2q-r, 2(2q-r)): solution families of M v = a are exactly the
//! clique decompositions of the complete q-partite host, pairwise disjoint
//! across distinct right-hand sides. Every constructed object is re-verified
//! against its defining property before it is returned.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{combinations, verify_decomposition, CliqueFamily, Hypergraph};

/// Monotone fresh-label allocator; one per build context.
#[derive(Debug, Clone)]
pub struct LabelArena {
    next: u32,
}

impl LabelArena {
    pub fn new(start: u32) -> Self {
        LabelArena { next: start }
    }

    pub fn fresh(&mut self, k: usize) -> Vec<u32> {
        let out: Vec<u32> = (self.next..self.next + k as u32).collect();
        self.next += k as u32;
        out
    }

    pub fn extent(&self) -> u32 {
        self.next
    }

    pub fn bump_past(&mut self, label: u32) {
        self.next = self.next.max(label + 1);
    }
}

/// One layer of a rooted partite gadget: a vertex block with a q-part coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub vertices: Vec<u32>,
    pub coloring: BTreeMap<u32, usize>,
}

/// A hypergraph with a distinguished independent root set and optional layer
/// structure for rooted-partite-degeneracy checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGadget {
    pub graph: Hypergraph,
    pub roots: Vec<u32>,
    pub layers: Option<Vec<Layer>>,
}

impl RootedGadget {
    pub fn roots_independent(&self) -> bool {
        self.graph.edges().all(|e| !e.iter().all(|v| self.roots.binary_search(v).is_ok()))
    }

    pub fn non_root_vertices(&self) -> Vec<u32> {
        self.graph
            .support()
            .into_iter()
            .filter(|v| self.roots.binary_search(v).is_err())
            .collect()
    }
}

/// Exact rooted degeneracy with a witness ordering of the non-root vertices.
/// Greedy min back-degree removal from the end is optimal, as for ordinary
/// degeneracy.
pub fn rooted_degeneracy_order(h: &RootedGadget) -> (usize, Vec<u32>) {
    let roots: BTreeSet<u32> = h.roots.iter().copied().collect();
    let mut remaining: BTreeSet<u32> = h.non_root_vertices().into_iter().collect();
    let edges = h.graph.edge_vec();
    let mut order_rev: Vec<u32> = Vec::with_capacity(remaining.len());
    let mut d = 0usize;
    while !remaining.is_empty() {
        let mut best: Option<(usize, u32)> = None;
        for &v in &remaining {
            let c = edges
                .iter()
                .filter(|e| {
                    e.contains(&v) && e.iter().all(|u| roots.contains(u) || remaining.contains(u))
                })
                .count();
            match best {
                None => best = Some((c, v)),
                Some((bc, _)) if c < bc => best = Some((c, v)),
                _ => {}
            }
        }
        let (c, v) = best.unwrap();
        d = d.max(c);
        remaining.remove(&v);
        order_rev.push(v);
    }
    order_rev.reverse();
    (d, order_rev)
}

pub fn rooted_degeneracy(h: &RootedGadget) -> usize {
    rooted_degeneracy_order(h).0
}

/// Anti-edge on f: q-r fresh vertices x, edges binom(f ∪ x, r) minus f itself.
pub fn build_anti_edge(f: &[u32], q: usize, arena: &mut LabelArena) -> Result<RootedGadget> {
    let r = f.len();
    if q <= r || r == 0 {
        return Err(Error::BadOrder { q, r });
    }
    let mut roots = f.to_vec();
    roots.sort_unstable();
    for &v in &roots {
        arena.bump_past(v);
    }
    let fresh = arena.fresh(q - r);
    let mut all: Vec<u32> = roots.iter().copied().chain(fresh.iter().copied()).collect();
    all.sort_unstable();
    let mut graph = Hypergraph::new(arena.extent() as usize, r);
    for e in combinations(&all, r) {
        if e != roots {
            graph.insert_edge(e)?;
        }
    }
    Ok(RootedGadget { graph, roots, layers: None })
}

/// Fake-edge on f: fresh x_1..x_{q-r}, then one anti-edge per r-set T != f of
/// f ∪ x, each on its own fresh vertices. Neither f nor any T is an edge of
/// the gadget, yet every i-subset of f has degree congruent to 1 mod
/// binom(q-i, r-i).
pub fn build_fake_edge(f: &[u32], q: usize, arena: &mut LabelArena) -> Result<RootedGadget> {
    let r = f.len();
    if q <= r || r == 0 {
        return Err(Error::BadOrder { q, r });
    }
    let mut roots = f.to_vec();
    roots.sort_unstable();
    for &v in &roots {
        arena.bump_past(v);
    }
    let xs = arena.fresh(q - r);
    let mut all: Vec<u32> = roots.iter().copied().chain(xs.iter().copied()).collect();
    all.sort_unstable();
    let mut graph = Hypergraph::new(arena.extent() as usize, r);
    for t in combinations(&all, r) {
        if t == roots {
            continue;
        }
        let anti = build_anti_edge(&t, q, arena)?;
        graph.pad_vertices(arena.extent() as usize);
        for e in anti.graph.edges() {
            graph.insert_edge(e.clone())?;
        }
    }
    graph.pad_vertices(arena.extent() as usize);
    Ok(RootedGadget { graph, roots, layers: None })
}

// --- finite field helpers (small primes) ---

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn smallest_prime_in_open(lo: u64, hi: u64) -> Option<u64> {
    ((lo + 1)..hi).find(|&n| is_prime(n))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// The Cauchy system behind a booster for fixed (q, r): M is (q-r) x q over
/// F_p with x_i = i, y_j = q-r+j, M_ij = (x_i - y_j)^{-1}.
#[derive(Debug, Clone)]
pub struct CauchySystem {
    pub q: usize,
    pub r: usize,
    pub p: u64,
    pub m: Vec<Vec<u64>>,
}

impl CauchySystem {
    pub fn new(q: usize, r: usize) -> Result<CauchySystem> {
        if q <= r || r == 0 {
            return Err(Error::BadOrder { q, r });
        }
        let lo = (2 * q - r) as u64;
        let hi = 2 * lo;
        let p = smallest_prime_in_open(lo, hi)
            .ok_or_else(|| Error::Precondition("no prime in the Bertrand interval".to_string()))?;
        let rows = q - r;
        let mut m = vec![vec![0u64; q]; rows];
        for (i, row) in m.iter_mut().enumerate() {
            let x = (i + 1) as u64;
            for (j, entry) in row.iter_mut().enumerate() {
                let y = (q - r + j + 1) as u64;
                let diff = (x + p - y % p) % p;
                *entry = inv_mod(diff, p);
            }
        }
        let sys = CauchySystem { q, r, p, m };
        sys.assert_submatrices_invertible()?;
        Ok(sys)
    }

    /// Every (q-r) x (q-r) column submatrix must be invertible; checked
    /// computationally at build time.
    fn assert_submatrices_invertible(&self) -> Result<()> {
        let k = self.q - self.r;
        let cols: Vec<u32> = (0..self.q as u32).collect();
        for chosen in combinations(&cols, k) {
            let sub: Vec<Vec<u64>> = self
                .m
                .iter()
                .map(|row| chosen.iter().map(|&j| row[j as usize]).collect())
                .collect();
            if det_mod(&sub, self.p) == 0 {
                return Err(Error::Precondition(format!(
                    "singular Cauchy submatrix at columns {chosen:?}"
                )));
            }
        }
        Ok(())
    }

    /// All solutions of M v = a, lexicographic over the first r coordinates.
    pub fn solution_family(&self, a: &[u64]) -> Vec<Vec<u64>> {
        let k = self.q - self.r;
        let tail_cols: Vec<usize> = (self.r..self.q).collect();
        let sub: Vec<Vec<u64>> = self.m.iter().map(|row| tail_cols.iter().map(|&j| row[j]).collect()).collect();
        let inv = invert_mod(&sub, self.p).expect("Cauchy tail block is invertible");
        let mut out = Vec::with_capacity((self.p as usize).pow(self.r as u32));
        let mut head = vec![0u64; self.r];
        loop {
            let mut rhs = vec![0u64; k];
            for (i, slot) in rhs.iter_mut().enumerate() {
                let mut acc = a[i] % self.p;
                for (j, &h) in head.iter().enumerate() {
                    acc = (acc + self.p * self.p - self.m[i][j] * h % self.p) % self.p;
                }
                *slot = acc;
            }
            let mut v = head.clone();
            for i in 0..k {
                let mut acc = 0u64;
                for (j, rv) in rhs.iter().enumerate() {
                    acc = (acc + inv[i][j] * rv) % self.p;
                }
                v.push(acc);
            }
            out.push(v);
            // advance the head odometer
            let mut pos = self.r;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                head[pos] += 1;
                if head[pos] < self.p {
                    break;
                }
                head[pos] = 0;
                if pos == 0 {
                    return out;
                }
            }
        }
    }

    /// Is there a solution of M v = a vanishing on the given positions?
    pub fn solvable_with_zeros(&self, a: &[u64], zero_positions: &[usize]) -> bool {
        let free: Vec<usize> = (0..self.q).filter(|j| !zero_positions.contains(j)).collect();
        let mat: Vec<Vec<u64>> = self.m.iter().map(|row| free.iter().map(|&j| row[j]).collect()).collect();
        system_consistent(&mat, a, self.p)
    }

    /// Lexicographically least position set of the requested size extending
    /// the least (r+1)-set on which no solution of M v = a vanishes.
    pub fn unreachable_position_set(&self, a: &[u64], size: usize) -> Option<Vec<usize>> {
        let positions: Vec<u32> = (0..self.q as u32).collect();
        for base in combinations(&positions, self.r + 1) {
            let base: Vec<usize> = base.iter().map(|&v| v as usize).collect();
            if !self.solvable_with_zeros(a, &base) {
                let mut set = base.clone();
                for j in 0..self.q {
                    if set.len() == size {
                        break;
                    }
                    if !set.contains(&j) {
                        set.push(j);
                    }
                }
                set.sort_unstable();
                return Some(set);
            }
        }
        None
    }
}

fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut det = 1u64;
    for col in 0..n {
        let pivot = (col..n).find(|&i| a[i][col] % p != 0);
        let Some(pi) = pivot else { return 0 };
        if pi != col {
            a.swap(col, pi);
            det = (p - det) % p;
        }
        det = det * (a[col][col] % p) % p;
        let inv = inv_mod(a[col][col] % p, p);
        for i in col + 1..n {
            let factor = a[i][col] % p * inv % p;
            for j in col..n {
                a[i][j] = (a[i][j] + p * p - factor * a[col][j] % p) % p;
            }
        }
    }
    det % p
}

fn invert_mod(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for col in 0..n {
        let pi = (col..n).find(|&i| a[i][col] % p != 0)?;
        a.swap(col, pi);
        inv.swap(col, pi);
        let f = inv_mod(a[col][col] % p, p);
        for j in 0..n {
            a[col][j] = a[col][j] % p * f % p;
            inv[col][j] = inv[col][j] % p * f % p;
        }
        for i in 0..n {
            if i == col || a[i][col] % p == 0 {
                continue;
            }
            let factor = a[i][col] % p;
            for j in 0..n {
                a[i][j] = (a[i][j] + p * p - factor * a[col][j] % p) % p;
                inv[i][j] = (inv[i][j] + p * p - factor * inv[col][j] % p) % p;
            }
        }
    }
    Some(inv)
}

fn system_consistent(m: &[Vec<u64>], b: &[u64], p: u64) -> bool {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u64> = m[i].iter().map(|&x| x % p).collect();
            row.push(b[i] % p);
            row
        })
        .collect();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pi) = (row..rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(row, pi);
        let f = inv_mod(a[row][col], p);
        for j in 0..=cols {
            a[row][j] = a[row][j] * f % p;
        }
        for i in 0..rows {
            if i != row && a[i][col] != 0 {
                let factor = a[i][col];
                for j in 0..=cols {
                    a[i][j] = (a[i][j] + p * p - factor * a[row][j] % p) % p;
                }
            }
        }
        row += 1;
        if row == rows {
            break;
        }
    }
    for i in 0..rows {
        if a[i][..cols].iter().all(|&x| x == 0) && a[i][cols] != 0 {
            return false;
        }
    }
    true
}

/// A booster for a clique S: `graph` is edge-disjoint from S, `off` decomposes
/// it, `on` decomposes graph ∪ S without using S. The coloring is a q-part
/// coloring of graph ∪ S witnessing partiteness.
#[derive(Debug, Clone)]
pub struct Booster {
    pub q: usize,
    pub r: usize,
    pub target: Vec<u32>,
    pub graph: Hypergraph,
    pub on: CliqueFamily,
    pub off: CliqueFamily,
    pub coloring: BTreeMap<u32, usize>,
    pub orthogonal: bool,
    pub rounds: usize,
}

impl Booster {
    pub fn rooted_gadget(&self) -> RootedGadget {
        let coloring: BTreeMap<u32, usize> = self
            .coloring
            .iter()
            .filter(|(v, _)| self.target.binary_search(v).is_err())
            .map(|(v, c)| (*v, *c))
            .collect();
        let vertices: Vec<u32> = coloring.keys().copied().collect();
        RootedGadget {
            graph: self.graph.clone(),
            roots: self.target.clone(),
            layers: Some(vec![Layer { vertices, coloring }]),
        }
    }

    /// The unique on-clique through a target edge.
    pub fn on_clique_at(&self, e: &[u32]) -> Option<&Vec<u32>> {
        self.on.cliques.iter().find(|c| e.iter().all(|v| c.binary_search(v).is_ok()))
    }

    /// Host of the on decomposition: graph plus the target clique's edges.
    pub fn graph_with_target(&self) -> Hypergraph {
        let mut g = self.graph.clone();
        for e in combinations(&self.target, self.r) {
            g.insert_edge(e).expect("target edges fit the ground");
        }
        g
    }

    pub fn verify(&self) -> Result<()> {
        if !verify_decomposition(&self.graph, &self.off)? {
            return Err(Error::Precondition("off does not decompose the booster graph".to_string()));
        }
        if !verify_decomposition(&self.graph_with_target(), &self.on)? {
            return Err(Error::Precondition("on does not decompose graph ∪ target".to_string()));
        }
        if self.on.cliques.iter().any(|c| c == &self.target) {
            return Err(Error::Precondition("target clique appears in on".to_string()));
        }
        for e in self.graph_with_target().edges() {
            let mut seen = BTreeSet::new();
            for v in e {
                let Some(c) = self.coloring.get(v) else {
                    return Err(Error::Precondition(format!("vertex {v} uncolored")));
                };
                if !seen.insert(*c) {
                    return Err(Error::Precondition(format!("edge {e:?} repeats color {c}")));
                }
            }
        }
        if self.orthogonal {
            let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
            for e in combinations(&self.target, self.r) {
                let c = self
                    .on_clique_at(&e)
                    .ok_or_else(|| Error::Precondition(format!("no on-clique through {e:?}")))?;
                if !seen.insert(c.clone()) {
                    return Err(Error::Precondition(format!("on-clique reused across target edges: {c:?}")));
                }
            }
        }
        Ok(())
    }
}

/// Build the Cauchy booster for the clique on `root_order` (position j of the
/// partite host is root_order[j]). on = solutions of Mv = e_1, off = solutions
/// of Mv = 0 minus the target transversal (which sits at v = 0).
pub fn build_booster_ordered(root_order: &[u32], r: usize, arena: &mut LabelArena) -> Result<Booster> {
    let q = root_order.len();
    let sys = CauchySystem::new(q, r)?;
    let p = sys.p;
    for &v in root_order {
        arena.bump_past(v);
    }
    let mut table: Vec<Vec<u32>> = Vec::with_capacity(q);
    for &root in root_order {
        let mut col = vec![root];
        col.extend(arena.fresh(p as usize - 1));
        table.push(col);
    }
    let vertex = |j: usize, x: u64| -> u32 { table[j][x as usize] };

    let mut graph = Hypergraph::new(arena.extent() as usize, r);
    let part_ids: Vec<u32> = (0..q as u32).collect();
    let mut target = root_order.to_vec();
    target.sort_unstable();
    for parts in combinations(&part_ids, r) {
        let mut assign = vec![0u64; r];
        'assignments: loop {
            if !assign.iter().all(|&x| x == 0) {
                let e: Vec<u32> = (0..r).map(|k| vertex(parts[k] as usize, assign[k])).collect();
                graph.insert_edge(e)?;
            }
            let mut pos = r;
            loop {
                if pos == 0 {
                    break 'assignments;
                }
                pos -= 1;
                assign[pos] += 1;
                if assign[pos] < p {
                    break;
                }
                assign[pos] = 0;
                if pos == 0 {
                    break 'assignments;
                }
            }
        }
    }

    let clique_of = |v: &[u64]| -> Vec<u32> {
        let mut c: Vec<u32> = v.iter().enumerate().map(|(j, &x)| vertex(j, x)).collect();
        c.sort_unstable();
        c
    };
    let a1 = vec![0u64; q - r];
    let mut a2 = vec![0u64; q - r];
    a2[0] = 1;
    let on: Vec<Vec<u32>> = sys.solution_family(&a2).iter().map(|v| clique_of(v)).collect();
    let off: Vec<Vec<u32>> = sys
        .solution_family(&a1)
        .iter()
        .filter(|v| !v.iter().all(|&x| x == 0))
        .map(|v| clique_of(v))
        .collect();
    let mut coloring = BTreeMap::new();
    for (j, col) in table.iter().enumerate() {
        for &v in col {
            coloring.insert(v, j);
        }
    }
    let booster = Booster {
        q,
        r,
        target,
        graph,
        on: CliqueFamily::new(q, on),
        off: CliqueFamily::new(q, off),
        coloring,
        orthogonal: false,
        rounds: 0,
    };
    booster.verify()?;
    Ok(booster)
}

/// Booster for the clique S with the canonical (sorted) root order.
pub fn build_booster(s: &[u32], r: usize, arena: &mut LabelArena) -> Result<Booster> {
    let mut s = s.to_vec();
    s.sort_unstable();
    build_booster_ordered(&s, r, arena)
}

/// Iterative augmentation toward orthogonality: while some on-clique carries
/// two or more target edges, splice in a fresh booster for it, rooted so that
/// its overlap with the target is not inside any clique of the new on family.
/// The count of on-cliques meeting the target strictly increases each round,
/// so at most binom(q, r) rounds happen.
pub fn orthogonalize(mut b: Booster, arena: &mut LabelArena) -> Result<Booster> {
    let q = b.q;
    let r = b.r;
    let max_rounds = crate::hypergraph::binomial(q, r) as usize;
    let mut rounds = 0usize;
    let mut last_meeting = 0usize;
    loop {
        let mut meeting = 0usize;
        let mut violator: Option<Vec<u32>> = None;
        for c in &b.on.cliques {
            let overlap = intersect_sorted(c, &b.target);
            if overlap.len() >= r {
                meeting += 1;
            }
            if overlap.len() >= r + 1 && violator.is_none() {
                violator = Some(c.clone());
            }
        }
        if rounds > 0 && meeting <= last_meeting {
            return Err(Error::Precondition("augmentation failed to make progress".to_string()));
        }
        last_meeting = meeting;
        let Some(clique) = violator else { break };
        if rounds >= max_rounds {
            return Err(Error::Precondition("orthogonalization exceeded its round bound".to_string()));
        }
        rounds += 1;
        let overlap = intersect_sorted(&clique, &b.target);
        let j = overlap.len();
        let sys = CauchySystem::new(q, r)?;
        let mut a2 = vec![0u64; q - r];
        a2[0] = 1;
        let positions = sys
            .unreachable_position_set(&a2, j)
            .ok_or_else(|| Error::Precondition("no unreachable position set exists".to_string()))?;
        // overlap vertices occupy those positions, the rest fill in order
        let rest: Vec<u32> = clique.iter().copied().filter(|v| overlap.binary_search(v).is_err()).collect();
        let mut root_order = vec![u32::MAX; q];
        for (k, &pos) in positions.iter().enumerate() {
            root_order[pos] = overlap[k];
        }
        let mut rest_iter = rest.into_iter();
        for slot in root_order.iter_mut() {
            if *slot == u32::MAX {
                *slot = rest_iter.next().expect("exactly q roots");
            }
        }
        let fresh = build_booster_ordered(&root_order, r, arena)?;
        // align the fresh booster's parts with the colors already on V(clique)
        let mut perm = vec![usize::MAX; q];
        for &v in clique.iter() {
            perm[fresh.coloring[&v]] = b.coloring[&v];
        }
        let mut on = Vec::with_capacity(b.on.cliques.len() + fresh.on.cliques.len());
        on.extend(b.on.cliques.iter().filter(|c| *c != &clique).cloned());
        on.extend(fresh.on.cliques.iter().cloned());
        let mut off = b.off.cliques.clone();
        off.extend(fresh.off.cliques.iter().cloned());
        b.graph = b.graph.union(&fresh.graph);
        b.on = CliqueFamily::new(q, on);
        b.off = CliqueFamily::new(q, off);
        for (&v, &c) in &fresh.coloring {
            b.coloring.insert(v, perm[c]);
        }
    }
    b.orthogonal = true;
    b.rounds = rounds;
    b.verify()?;
    Ok(b)
}

/// Orthogonal q-partite booster for S.
pub fn build_orthogonal_booster(s: &[u32], r: usize, arena: &mut LabelArena) -> Result<Booster> {
    let base = build_booster(s, r, arena)?;
    orthogonalize(base, arena)
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// An independent hinge for two cliques sharing exactly one edge: `left`
/// decomposes graph ∪ (s1 \ e), `right` decomposes graph ∪ (s2 \ e).
#[derive(Debug, Clone)]
pub struct Hinge {
    pub q: usize,
    pub r: usize,
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
    pub shared_edge: Vec<u32>,
    pub middle: Vec<u32>,
    pub graph: Hypergraph,
    pub left: CliqueFamily,
    pub right: CliqueFamily,
    pub coloring: BTreeMap<u32, usize>,
}

impl Hinge {
    pub fn roots(&self) -> Vec<u32> {
        let mut r: Vec<u32> = self.s1.iter().chain(self.s2.iter()).copied().collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    pub fn rooted_gadget(&self) -> RootedGadget {
        let roots = self.roots();
        let coloring: BTreeMap<u32, usize> = self
            .coloring
            .iter()
            .filter(|(v, _)| roots.binary_search(v).is_err())
            .map(|(v, c)| (*v, *c))
            .collect();
        let vertices: Vec<u32> = coloring.keys().copied().collect();
        RootedGadget {
            graph: self.graph.clone(),
            roots,
            layers: Some(vec![Layer { vertices, coloring }]),
        }
    }

    fn side_graph(&self, s: &[u32]) -> Hypergraph {
        let mut g = self.graph.clone();
        for e in combinations(s, self.r) {
            if e != self.shared_edge {
                g.insert_edge(e).expect("side clique fits the ground");
            }
        }
        g
    }

    pub fn verify(&self) -> Result<()> {
        if !verify_decomposition(&self.side_graph(&self.s1), &self.left)? {
            return Err(Error::Precondition("left does not decompose graph ∪ (s1 - e)".to_string()));
        }
        if !verify_decomposition(&self.side_graph(&self.s2), &self.right)? {
            return Err(Error::Precondition("right does not decompose graph ∪ (s2 - e)".to_string()));
        }
        let roots = self.roots();
        for e in self.graph.edges() {
            if e.iter().all(|v| roots.binary_search(v).is_ok()) {
                return Err(Error::Precondition(format!("edge {e:?} lies inside the hinge roots")));
            }
        }
        let mut full = self.side_graph(&self.s1);
        for e in combinations(&self.s2, self.r) {
            full.insert_edge(e).expect("side clique fits the ground");
        }
        for e in full.edges() {
            let mut seen = BTreeSet::new();
            for v in e {
                let Some(c) = self.coloring.get(v) else {
                    return Err(Error::Precondition(format!("vertex {v} uncolored")));
                };
                if !seen.insert(*c) {
                    return Err(Error::Precondition(format!("edge {e:?} repeats a color")));
                }
            }
        }
        Ok(())
    }
}

/// Independent q-partite hinge for s1, s2 sharing exactly the edge e, built
/// from orthogonal boosters for s1 and for s2 with the second booster's middle
/// clique relabeled onto the first's, so the halves meet exactly in V(middle).
pub fn build_hinge(s1: &[u32], s2: &[u32], r: usize, arena: &mut LabelArena) -> Result<Hinge> {
    let mut s1 = s1.to_vec();
    let mut s2 = s2.to_vec();
    s1.sort_unstable();
    s2.sort_unstable();
    let q = s1.len();
    if s2.len() != q {
        return Err(Error::Precondition("cliques of different orders".to_string()));
    }
    let shared = intersect_sorted(&s1, &s2);
    if shared.len() != r {
        return Err(Error::Precondition(format!(
            "cliques must share exactly one {r}-edge, got {} shared vertices",
            shared.len()
        )));
    }
    let b1 = build_orthogonal_booster(&s1, r, arena)?;
    let middle = b1
        .on_clique_at(&shared)
        .cloned()
        .ok_or_else(|| Error::Precondition("no on-clique through the shared edge".to_string()))?;
    let b2 = build_orthogonal_booster(&s2, r, arena)?;
    let middle2 = b2
        .on_clique_at(&shared)
        .cloned()
        .ok_or_else(|| Error::Precondition("no on-clique through the shared edge".to_string()))?;

    let from: Vec<u32> = middle2.iter().copied().filter(|v| shared.binary_search(v).is_err()).collect();
    let to: Vec<u32> = middle.iter().copied().filter(|v| shared.binary_search(v).is_err()).collect();
    let mut rename: BTreeMap<u32, u32> = from.iter().copied().zip(to.iter().copied()).collect();
    for v in b2.coloring.keys() {
        rename.entry(*v).or_insert(*v);
    }
    let ambient = arena.extent() as usize;
    let g2 = b2.graph.relabeled(&rename, ambient)?;
    let relabel_family = |fam: &CliqueFamily| -> CliqueFamily {
        CliqueFamily::new(
            q,
            fam.cliques.iter().map(|c| c.iter().map(|v| rename[v]).collect()).collect(),
        )
    };
    let on2 = relabel_family(&b2.on);
    let off2 = relabel_family(&b2.off);
    let mut perm = vec![usize::MAX; q];
    for &v in &middle2 {
        perm[b2.coloring[&v]] = b1.coloring[&rename[&v]];
    }
    let mut coloring = b1.coloring.clone();
    for (&v, &c) in &b2.coloring {
        coloring.insert(rename[&v], perm[c]);
    }

    let mut graph = b1.graph.union(&g2);
    graph.pad_vertices(ambient);
    let mut left = Vec::new();
    left.extend(b1.on.cliques.iter().filter(|c| *c != &middle).cloned());
    left.extend(off2.cliques.iter().cloned());
    let mut right = Vec::new();
    right.extend(b1.off.cliques.iter().cloned());
    right.extend(on2.cliques.iter().filter(|c| *c != &middle).cloned());

    let hinge = Hinge {
        q,
        r,
        s1,
        s2,
        shared_edge: shared,
        middle,
        graph,
        left: CliqueFamily::new(q, left),
        right: CliqueFamily::new(q, right),
        coloring,
    };
    hinge.verify()?;
    Ok(hinge)
}
