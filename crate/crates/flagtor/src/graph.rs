//! Finite simple graphs with bitset adjacency.

use crate::{Error, Ratio64, Result};

/// Dense vertex index in `[0, n)`.
pub type VertexId = u32;

const WORD: usize = 64;

/// A finite simple graph: no loops, no multi-edges. Edges are kept sorted as
/// pairs `(u, v)` with `u < v`, and adjacency is mirrored into per-vertex
/// bitsets for fast neighborhood intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<u64>, // n rows of `words` u64 each
    words: usize,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let words = (n as usize).div_ceil(WORD).max(1);
        let mut g = Graph { n, edges: Vec::new(), adj: vec![0; n as usize * words], words };
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) out of range for n={n}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        for &(u, v) in &list {
            g.set_adj(u, v);
        }
        g.edges = list;
        Ok(g)
    }

    pub fn empty(n: u32) -> Self {
        Graph::new(n, std::iter::empty()).unwrap()
    }

    pub fn complete(n: u32) -> Self {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    fn set_adj(&mut self, u: VertexId, v: VertexId) {
        let w = self.words;
        self.adj[u as usize * w + v as usize / WORD] |= 1 << (v as usize % WORD);
        self.adj[v as usize * w + u as usize / WORD] |= 1 << (u as usize % WORD);
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u as usize * self.words + v as usize / WORD] >> (v as usize % WORD) & 1 == 1
    }

    /// Bitset row of `v`'s neighborhood.
    pub(crate) fn adj_row(&self, v: VertexId) -> &[u64] {
        &self.adj[v as usize * self.words..(v as usize + 1) * self.words]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = self.adj_row(v);
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros();
                b &= b - 1;
                Some((w * WORD) as u32 + t)
            })
        })
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Exact average degree `2|E|/|V|`; `0` for the empty graph.
    pub fn avg_degree(&self) -> Ratio64 {
        if self.n == 0 {
            return Ratio64::from_integer(0);
        }
        Ratio64::new(2 * self.edges.len() as i64, self.n as i64)
    }

    /// `(maxdeg, avgdeg, |E|)`.
    pub fn stats(&self) -> (usize, Ratio64, usize) {
        (self.max_degree(), self.avg_degree(), self.edge_count())
    }

    /// Induced subgraph on `subset` (deduplicated, order-normalized), with
    /// vertices relabeled densely following the sorted subset. Returns the
    /// graph and the new-to-old vertex map.
    pub fn induced(&self, subset: &[VertexId]) -> Result<(Graph, Vec<VertexId>)> {
        let mut vs: Vec<VertexId> = subset.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {v} out of range for n={}", self.n)));
        }
        let mut pos = vec![u32::MAX; self.n as usize];
        for (i, &v) in vs.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u as usize] != u32::MAX && pos[v as usize] != u32::MAX)
            .map(|&(u, v)| (pos[u as usize], pos[v as usize]));
        Ok((Graph::new(vs.len() as u32, edges)?, vs))
    }

    /// Number of edges inside a vertex subset given as a bitmask (n <= 64).
    pub(crate) fn edges_in_mask(&self, mask: u64) -> usize {
        debug_assert!(self.n as usize <= WORD);
        let mut count = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            // count neighbors of v inside mask with index < v
            count += (self.adj_row(v)[0] & mask & ((1u64 << v) - 1)).count_ones() as usize;
        }
        count
    }

    /// Does the graph contain a clique on `size` vertices?
    pub fn has_clique(&self, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        if size > self.n as usize {
            return false;
        }
        let mut stack: Vec<(Vec<VertexId>, Vec<u64>)> = Vec::new();
        let full: Vec<u64> = {
            let mut f = vec![u64::MAX; self.words];
            let extra = self.words * WORD - self.n as usize;
            if extra > 0 {
                *f.last_mut().unwrap() >>= extra;
            }
            f
        };
        stack.push((Vec::new(), full));
        while let Some((clique, cand)) = stack.pop() {
            if clique.len() == size {
                return true;
            }
            let lo = clique.last().map_or(0, |&v| v + 1);
            for v in lo..self.n {
                if cand[v as usize / WORD] >> (v as usize % WORD) & 1 == 0 {
                    continue;
                }
                let mut next = clique.clone();
                next.push(v);
                let row = self.adj_row(v);
                let ncand: Vec<u64> = cand.iter().zip(row).map(|(a, b)| a & b).collect();
                let remaining: usize = ncand.iter().map(|w| w.count_ones() as usize).sum();
                if next.len() + remaining >= size {
                    stack.push((next, ncand));
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_stats() {
        let g = Graph::complete(4);
        let (maxdeg, avg, e) = g.stats();
        assert_eq!((maxdeg, e), (3, 6));
        assert_eq!(avg, Ratio64::from_integer(3));
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn empty_graph_stats() {
        let g = Graph::empty(0);
        assert_eq!(g.stats(), (0, Ratio64::from_integer(0), 0));
    }

    #[test]
    fn dedups_edges() {
        let g = Graph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 1) && !g.has_edge(0, 2));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let (h, map) = g.induced(&[4, 0, 1]).unwrap();
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]); // 0-1 and 4-0 survive
        assert!(g.induced(&[9]).is_err());
    }

    #[test]
    fn clique_detection() {
        assert!(Graph::complete(5).has_clique(5));
        assert!(!Graph::complete(5).has_clique(6));
        assert!(!Graph::cycle(5).has_clique(3));
    }

    #[test]
    fn neighbors_iter_matches_edges() {
        let g = Graph::new(70, [(0, 65), (0, 3), (3, 65)]).unwrap();
        let nb: Vec<_> = g.neighbors(0).collect();
        assert_eq!(nb, vec![3, 65]);
        assert_eq!(g.degree(65), 2);
    }
}
