//! Budgeted induced-subgraph search (backtracking with degree and adjacency
//! pruning). "Not found" and "budget exhausted" are distinct outcomes so
//! Monte Carlo records stay honest about truncation.

use serde::Serialize;

use crate::graph::{Graph, VertexId};

/// An injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// `map[i]` is the host image of pattern vertex `i`.
    pub map: Vec<VertexId>,
}

impl Embedding {
    pub fn image(&self) -> Vec<VertexId> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Independent re-check of every pattern pair against host adjacency.
    pub fn verify(&self, pattern: &Graph, host: &Graph, induced: bool) -> bool {
        if self.map.len() != pattern.n() as usize {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !self.map.iter().all(|v| *v < host.n() && seen.insert(*v)) {
            return false;
        }
        for a in 0..pattern.n() {
            for b in (a + 1)..pattern.n() {
                let pe = pattern.has_edge(a, b);
                let he = host.has_edge(self.map[a as usize], self.map[b as usize]);
                let ok = if induced { pe == he } else { !pe || he };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Found(Embedding),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Search-tree nodes expanded (attempted assignments).
    pub nodes: u64,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Pattern vertex ordering: highest degree first, then prefer vertices
/// adjacent to the already-ordered prefix (keeps candidate sets anchored).
fn pattern_order(pattern: &Graph) -> Vec<VertexId> {
    let n = pattern.n() as usize;
    let deg = pattern.degrees();
    let mut order: Vec<VertexId> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut best: Option<(bool, usize, std::cmp::Reverse<VertexId>)> = None;
        let mut pick = None;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let anchored = order.iter().any(|&u| pattern.has_edge(u, v as VertexId));
            let key = (anchored || order.is_empty(), deg[v], std::cmp::Reverse(v as VertexId));
            if best.is_none() || key > best.unwrap() {
                best = Some(key);
                pick = Some(v);
            }
        }
        let v = pick.unwrap();
        placed[v] = true;
        order.push(v as VertexId);
    }
    order
}

struct Searcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<VertexId>,
    induced: bool,
    budget: u64,
    nodes: u64,
}

impl Searcher<'_> {
    fn admissible(&self, depth: usize, assigned: &[VertexId], v: VertexId) -> bool {
        let u = self.order[depth];
        if self.host.degree(v) < self.pattern.degree(u) {
            return false;
        }
        for (d, &img) in assigned.iter().enumerate() {
            if img == v {
                return false;
            }
            let pe = self.pattern.has_edge(self.order[d], u);
            let he = self.host.has_edge(img, v);
            let ok = if self.induced { pe == he } else { !pe || he };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Ok(Some) found, Ok(None) exhausted subtree, Err(()) budget.
    fn recurse(&mut self, assigned: &mut Vec<VertexId>) -> Result<Option<Vec<VertexId>>, ()> {
        let depth = assigned.len();
        if depth == self.order.len() {
            return Ok(Some(assigned.clone()));
        }
        let u = self.order[depth];
        // anchor on a mapped pattern neighbor when one exists
        let anchor = (0..depth).find(|&d| self.pattern.has_edge(self.order[d], u));
        let candidates: Vec<VertexId> = match anchor {
            Some(d) => self.host.neighbors(assigned[d]).collect(),
            None => (0..self.host.n()).collect(),
        };
        for v in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            if !self.admissible(depth, assigned, v) {
                continue;
            }
            assigned.push(v);
            let got = self.recurse(assigned)?;
            if got.is_some() {
                return Ok(got);
            }
            assigned.pop();
        }
        Ok(None)
    }
}

/// Searches for an embedding of `pattern` into `host`; `induced` demands
/// that non-edges map to non-edges. Any returned embedding has been
/// re-verified pairwise before being handed back.
pub fn find_embedding(
    pattern: &Graph,
    host: &Graph,
    budget: u64,
    induced: bool,
) -> SearchResult {
    if pattern.n() > host.n() {
        return SearchResult { outcome: SearchOutcome::NotFound, nodes: 0 };
    }
    if pattern.n() == 0 {
        return SearchResult { outcome: SearchOutcome::Found(Embedding { map: vec![] }), nodes: 0 };
    }
    let order = pattern_order(pattern);
    let mut searcher = Searcher { pattern, host, order, induced, budget, nodes: 0 };
    let mut assigned = Vec::new();
    match searcher.recurse(&mut assigned) {
        Ok(Some(by_order)) => {
            let mut map = vec![0; pattern.n() as usize];
            for (d, &v) in by_order.iter().enumerate() {
                map[searcher.order[d] as usize] = v;
            }
            let emb = Embedding { map };
            assert!(emb.verify(pattern, host, induced), "search returned an invalid embedding");
            SearchResult { outcome: SearchOutcome::Found(emb), nodes: searcher.nodes }
        }
        Ok(None) => SearchResult { outcome: SearchOutcome::NotFound, nodes: searcher.nodes },
        Err(()) => SearchResult { outcome: SearchOutcome::BudgetExhausted, nodes: searcher.nodes },
    }
}

/// Induced search with the default budget.
pub fn contains_induced(pattern: &Graph, host: &Graph, budget: Option<u64>) -> SearchResult {
    find_embedding(pattern, host, budget.unwrap_or(DEFAULT_BUDGET), true)
}
