//! Essential density `m(G) = max |E(H)|/|V(H)|` over nonempty subgraphs,
//! exactly. Deleting edges never raises the ratio, so the maximum is attained
//! on an induced subgraph and the search ranges over vertex subsets only
//! (tested, not assumed). Two independent routes: exhaustive subset sweep
//! (n <= 24) and an exact max-flow densest-subgraph iteration.

use serde::Serialize;

use crate::graph::{Graph, VertexId};
use crate::{Error, Ratio64, Result};

pub const EXHAUSTIVE_LIMIT: u32 = 24;

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    /// Exact essential density.
    pub density: Ratio64,
    /// A vertex subset attaining it (lexicographically least in exhaustive
    /// mode).
    pub witness: Vec<VertexId>,
    pub strictly_balanced: bool,
    /// Size -> (max edges, lexicographically least witness); exhaustive mode.
    pub per_size_max_edges: Option<Vec<(usize, usize, Vec<VertexId>)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DensityMode {
    Exhaustive,
    Maxflow,
}

fn mask_vertices(mask: u64, n: u32) -> Vec<VertexId> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Lexicographic order on sorted vertex lists (shorter prefixes first).
fn lex_less(a: u64, b: u64, n: u32) -> bool {
    mask_vertices(a, n) < mask_vertices(b, n)
}

/// Max edges per subset size with lex-least witnesses; drives both
/// `max_edges_by_size` and the exhaustive density report.
fn subset_sweep(g: &Graph) -> Result<Vec<(usize, u64)>> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Guard(format!(
            "exhaustive mode handles at most {EXHAUSTIVE_LIMIT} vertices (got {n}); use maxflow mode"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("empty graph has no nonempty subgraphs"));
    }
    let mut best: Vec<Option<(usize, u64)>> = vec![None; n as usize + 1];
    for mask in 1..(1u64 << n) {
        let size = mask.count_ones() as usize;
        let edges = g.edges_in_mask(mask);
        let better = match best[size] {
            None => true,
            Some((e, wit)) => edges > e || (edges == e && lex_less(mask, wit, n)),
        };
        if better {
            best[size] = Some((edges, mask));
        }
    }
    Ok(best.into_iter().flatten().collect())
}

/// For each `s`, the maximum edge count over `s`-vertex induced subgraphs,
/// with one witness each. Requires `n <= 24`.
pub fn max_edges_by_size(g: &Graph) -> Result<Vec<(usize, usize, Vec<VertexId>)>> {
    let sweep = subset_sweep(g)?;
    Ok(sweep
        .iter()
        .enumerate()
        .map(|(idx, &(e, mask))| (idx + 1, e, mask_vertices(mask, g.n())))
        .collect())
}

/// Exact essential density. Exhaustive mode also fills the per-size table;
/// maxflow mode has no size restriction.
pub fn essential_density(g: &Graph, mode: DensityMode) -> Result<DensityReport> {
    match mode {
        DensityMode::Exhaustive => essential_density_exhaustive(g),
        DensityMode::Maxflow => essential_density_maxflow(g),
    }
}

fn essential_density_exhaustive(g: &Graph) -> Result<DensityReport> {
    let sweep = subset_sweep(g)?;
    let mut density = Ratio64::from_integer(0);
    let mut witness_mask = 1u64;
    for (idx, &(e, mask)) in sweep.iter().enumerate() {
        let d = Ratio64::new(e as i64, idx as i64 + 1);
        if d > density || (d == density && lex_less(mask, witness_mask, g.n())) {
            density = d;
            witness_mask = mask;
        }
    }
    // strictly balanced: every proper subgraph strictly sparser; proper
    // spanning subgraphs drop edges (strictly sparser whenever E > 0), so
    // proper induced subgraphs decide it
    let whole = Ratio64::new(g.edge_count() as i64, g.n() as i64);
    let full_mask = (1u64 << g.n()) - 1;
    let strictly_balanced = g.edge_count() > 0
        && density == whole
        && (1..full_mask).all(|mask| {
            mask.count_ones() == 0
                || Ratio64::new(g.edges_in_mask(mask) as i64, mask.count_ones() as i64) < whole
        });
    Ok(DensityReport {
        density,
        witness: mask_vertices(witness_mask, g.n()),
        strictly_balanced,
        per_size_max_edges: Some(
            sweep
                .iter()
                .enumerate()
                .map(|(idx, &(e, mask))| (idx + 1, e, mask_vertices(mask, g.n())))
                .collect(),
        ),
    })
}

/// `(|E|/|V|, maxdeg/2)`: exact bounds with `lower <= m(g) <= upper`.
pub fn density_bounds(g: &Graph) -> (Ratio64, Ratio64) {
    if g.n() == 0 {
        return (Ratio64::from_integer(0), Ratio64::from_integer(0));
    }
    (
        Ratio64::new(g.edge_count() as i64, g.n() as i64),
        Ratio64::new(g.max_degree() as i64, 2),
    )
}

// ---- exact densest subgraph via max-flow ----

struct Dinic {
    to: Vec<u32>,
    cap: Vec<i64>,
    head: Vec<Vec<u32>>, // arc ids per node
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic { to: vec![], cap: vec![], head: vec![vec![]; nodes], level: vec![], iter: vec![] }
    }

    fn add_edge(&mut self, from: u32, to: u32, cap: i64) {
        let id = self.to.len() as u32;
        self.to.push(to);
        self.cap.push(cap);
        self.head[from as usize].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.head[to as usize].push(id + 1);
    }

    fn bfs(&mut self, s: u32, t: u32) -> bool {
        self.level = vec![-1; self.head.len()];
        self.level[s as usize] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.head[v as usize] {
                let w = self.to[id as usize];
                if self.cap[id as usize] > 0 && self.level[w as usize] < 0 {
                    self.level[w as usize] = self.level[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t as usize] >= 0
    }

    fn dfs(&mut self, v: u32, t: u32, f: i64) -> i64 {
        if v == t {
            return f;
        }
        while self.iter[v as usize] < self.head[v as usize].len() {
            let id = self.head[v as usize][self.iter[v as usize]] as usize;
            let w = self.to[id];
            if self.cap[id] > 0 && self.level[w as usize] == self.level[v as usize] + 1 {
                let d = self.dfs(w, t, f.min(self.cap[id]));
                if d > 0 {
                    self.cap[id] -= d;
                    self.cap[id ^ 1] += d;
                    return d;
                }
            }
            self.iter[v as usize] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: u32, t: u32) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter = vec![0; self.head.len()];
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Source side of the maximal min cut: nodes that cannot reach `t` in the
    /// residual graph.
    fn max_min_cut_source_side(&self, t: u32) -> Vec<bool> {
        let n = self.head.len();
        let mut reaches_t = vec![false; n];
        reaches_t[t as usize] = true;
        let mut queue = std::collections::VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            // u reaches v iff residual arc u -> v exists; arcs into v are the
            // reverses of arcs out of v, so scan v's arc list
            for &id in &self.head[v as usize] {
                let u = self.to[id as usize];
                if reaches_t[u as usize] {
                    continue;
                }
                // arc u -> v is (id ^ 1); residual if its capacity > 0
                if self.cap[(id ^ 1) as usize] > 0 {
                    reaches_t[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        reaches_t.iter().map(|&r| !r).collect()
    }
}

/// Does some subset beat density `lambda`? If yes, returns the maximal
/// min-cut witness subset (which attains at least `lambda` when equality
/// holds). Goldberg's network: cut value `m|V| + 2(lambda |S| - e(S))`,
/// scaled by `lambda`'s denominator to stay in integers.
fn densest_cut(g: &Graph, lambda: Ratio64) -> (bool, Vec<VertexId>) {
    let n = g.n() as usize;
    let m = g.edge_count() as i64;
    let (a, b) = (*lambda.numer(), *lambda.denom());
    let s = n as u32;
    let t = n as u32 + 1;
    let mut net = Dinic::new(n + 2);
    for v in 0..g.n() {
        net.add_edge(s, v, m * b);
        let cap_to_t = m * b + 2 * a - g.degree(v) as i64 * b;
        assert!(cap_to_t >= 0);
        net.add_edge(v, t, cap_to_t);
    }
    for &(u, v) in g.edges() {
        net.add_edge(u, v, b);
        net.add_edge(v, u, b);
    }
    let flow = net.max_flow(s, t);
    let side = net.max_min_cut_source_side(t);
    let subset: Vec<VertexId> = (0..g.n()).filter(|&v| side[v as usize]).collect();
    (flow < m * b * n as i64, subset)
}

/// Dinkelbach iteration: lambda strictly increases through the candidate
/// densities e/v (denominators at most |V|), so this terminates with the
/// exact maximum and a witness attaining it.
fn maxflow_density_core(g: &Graph) -> Result<(Ratio64, Vec<VertexId>)> {
    if g.n() == 0 {
        return Err(Error::invalid("empty graph has no nonempty subgraphs"));
    }
    if g.edge_count() == 0 {
        return Ok((Ratio64::from_integer(0), vec![0]));
    }
    let mut lambda = Ratio64::new(g.edge_count() as i64, g.n() as i64);
    let mut witness: Vec<VertexId> = (0..g.n()).collect();
    loop {
        let (beatable, subset) = densest_cut(g, lambda);
        if !beatable {
            break;
        }
        let (sub, verts) = g.induced(&subset)?;
        let better = Ratio64::new(sub.edge_count() as i64, sub.n() as i64);
        assert!(better > lambda, "Dinkelbach step must strictly improve");
        lambda = better;
        witness = verts;
    }
    let (sub, _) = g.induced(&witness)?;
    debug_assert_eq!(Ratio64::new(sub.edge_count() as i64, sub.n() as i64), lambda);
    Ok((lambda, witness))
}

fn essential_density_maxflow(g: &Graph) -> Result<DensityReport> {
    let (density, witness) = maxflow_density_core(g)?;
    // strictly balanced: the whole graph attains the max and every proper
    // subset stays strictly below; every proper subset avoids some vertex,
    // so n vertex-deleted densest-subgraph runs decide it exactly
    let whole = if g.n() == 0 {
        Ratio64::from_integer(0)
    } else {
        Ratio64::new(g.edge_count() as i64, g.n() as i64)
    };
    let strictly_balanced = g.edge_count() > 0
        && density == whole
        && (0..g.n()).all(|w| {
            let rest: Vec<VertexId> = (0..g.n()).filter(|&v| v != w).collect();
            if rest.is_empty() {
                return true;
            }
            let (sub, _) = g.induced(&rest).expect("subset in range");
            maxflow_density_core(&sub).map(|(d, _)| d < density).unwrap_or(false)
        });
    Ok(DensityReport { density, witness, strictly_balanced, per_size_max_edges: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::rp2_flag;

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let r = essential_density(&g, DensityMode::Exhaustive).unwrap();
        assert_eq!(r.density, Ratio64::new(1, 2));
        assert_eq!(r.witness, vec![0, 1]);
        assert!(r.strictly_balanced);
    }

    #[test]
    fn complete_graph_density() {
        let g = Graph::complete(4);
        let r = essential_density(&g, DensityMode::Exhaustive).unwrap();
        assert_eq!(r.density, Ratio64::new(3, 2));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        let (lo, hi) = density_bounds(&g);
        assert_eq!((lo, hi), (Ratio64::new(3, 2), Ratio64::new(3, 2)));
    }

    #[test]
    fn rp2_graph_density_and_balance() {
        let g = rp2_flag().skeleton_graph();
        let r = essential_density(&g, DensityMode::Exhaustive).unwrap();
        assert_eq!(r.density, Ratio64::new(30, 11));
        assert_eq!(r.witness, (0..11).collect::<Vec<_>>());
        assert!(r.strictly_balanced);
        let f = essential_density(&g, DensityMode::Maxflow).unwrap();
        assert_eq!(f.density, r.density);
    }

    #[test]
    fn rp2_max_edges_rows() {
        let g = rp2_flag().skeleton_graph();
        let table = max_edges_by_size(&g).unwrap();
        assert_eq!(table[0], (1, 0, vec![0]));
        assert_eq!(table[5].1, 10); // size 6
        assert_eq!(table[8].1, 21); // size 9
    }

    #[test]
    fn exhaustive_guard() {
        let g = Graph::empty(30);
        assert!(matches!(essential_density(&g, DensityMode::Exhaustive), Err(Error::Guard(_))));
    }

    #[test]
    fn modes_agree_on_seeded_graphs() {
        for seed in 0..40u64 {
            let n = 4 + (seed % 9) as u32;
            let g = crate::random::sample_graph(
                &crate::random::FlagModelParams::new(
                    n,
                    crate::random::parse_probability("0.45").unwrap(),
                    seed,
                    2,
                )
                .unwrap(),
            );
            if g.edge_count() == 0 {
                continue;
            }
            let a = essential_density(&g, DensityMode::Exhaustive).unwrap();
            let b = essential_density(&g, DensityMode::Maxflow).unwrap();
            assert_eq!(a.density, b.density, "seed {seed}");
            assert_eq!(a.strictly_balanced, b.strictly_balanced, "seed {seed}");
            let (lo, hi) = density_bounds(&g);
            assert!(lo <= a.density && a.density <= hi, "seed {seed}");
        }
    }

    #[test]
    fn star_is_not_strictly_balanced_but_triangle_is() {
        // a triangle with a pendant edge: max density on the triangle
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = essential_density(&g, DensityMode::Exhaustive).unwrap();
        assert_eq!(r.density, Ratio64::from_integer(1));
        assert_eq!(r.witness, vec![0, 1, 2]);
        assert!(!r.strictly_balanced);
        let tri = Graph::complete(3);
        assert!(essential_density(&tri, DensityMode::Exhaustive).unwrap().strictly_balanced);
    }
}
