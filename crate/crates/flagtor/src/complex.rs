//! Simplicial complexes as per-dimension sorted lists of strictly increasing
//! vertex tuples. Flag complexes are produced by [`clique_complex`].

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Face counts by dimension, starting at dimension 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// Alternating sum `f_0 - f_1 + f_2 - ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite simplicial complex on vertex set `[0, n)`.
///
/// `faces[d]` lists the `d`-dimensional faces as strictly increasing
/// `(d+1)`-tuples, sorted lexicographically. The family is downward closed;
/// construction enforces it (and `debug_assert`s re-verify it). Vertices of
/// `[0, n)` need not all appear as 0-faces: induced subcomplexes and
/// Stanley-Reisner conventions allow "ghost" vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u32,
    faces: Vec<Vec<Vec<VertexId>>>,
}

impl SimplicialComplex {
    /// The void complex (no faces at all) on `n` ambient vertices.
    pub fn void(n: u32) -> Self {
        SimplicialComplex { n, faces: Vec::new() }
    }

    /// Builds the downward closure of an arbitrary family of faces.
    pub fn from_faces<I, F>(n: u32, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[VertexId]>,
    {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<VertexId>>> = Vec::new();
        for f in faces {
            let mut t: Vec<VertexId> = f.as_ref().to_vec();
            t.sort_unstable();
            t.dedup();
            if t.len() != f.as_ref().len() {
                return Err(Error::invalid(format!("face {:?} has repeated vertices", f.as_ref())));
            }
            if t.is_empty() {
                continue;
            }
            if *t.last().unwrap() >= n {
                return Err(Error::invalid(format!("face {t:?} out of range for n={n}")));
            }
            let d = t.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Default::default());
            }
            by_dim[d].insert(t);
        }
        // close downward, top dimension first
        for d in (1..by_dim.len()).rev() {
            let (lower, upper) = by_dim.split_at_mut(d);
            for f in &upper[0] {
                for skip in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(skip);
                    lower[d - 1].insert(sub);
                }
            }
        }
        let cx = SimplicialComplex {
            n,
            faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        debug_assert!(cx.validate().is_ok());
        Ok(cx)
    }

    /// Wraps pre-closed, pre-sorted face lists; validates in debug builds.
    pub(crate) fn from_closed_sorted(n: u32, faces: Vec<Vec<Vec<VertexId>>>) -> Self {
        let mut faces = faces;
        while faces.last().is_some_and(|l| l.is_empty()) {
            faces.pop();
        }
        let cx = SimplicialComplex { n, faces };
        debug_assert!(cx.validate().is_ok(), "{:?}", cx.validate());
        cx
    }

    /// Full downward-closure / ordering / range check. Cheap enough to run on
    /// every construction in tests.
    pub fn validate(&self) -> Result<()> {
        for (d, list) in self.faces.iter().enumerate() {
            let mut prev: Option<&Vec<VertexId>> = None;
            for f in list {
                if f.len() != d + 1 {
                    return Err(Error::invalid(format!("face {f:?} in dimension {d}")));
                }
                if !f.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::invalid(format!("face {f:?} not strictly increasing")));
                }
                if *f.last().unwrap() >= self.n {
                    return Err(Error::invalid(format!("face {f:?} out of range")));
                }
                if let Some(p) = prev {
                    if p >= f {
                        return Err(Error::invalid(format!("faces out of order at {f:?}")));
                    }
                }
                prev = Some(f);
                if d > 0 {
                    for skip in 0..f.len() {
                        let mut sub = f.clone();
                        sub.remove(skip);
                        if self.faces[d - 1].binary_search(&sub).is_err() {
                            return Err(Error::invalid(format!(
                                "downward closure violated: {sub:?} missing under {f:?}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension of the complex; `None` for the void complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> &[Vec<VertexId>] {
        self.faces.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn face_count(&self, d: usize) -> usize {
        self.faces(d).len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(|l| l.len()).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    pub fn has_face(&self, face: &[VertexId]) -> bool {
        if face.is_empty() {
            return true;
        }
        self.faces
            .get(face.len() - 1)
            .is_some_and(|l| l.binary_search_by(|f| f.as_slice().cmp(face)).is_ok())
    }

    /// The 1-skeleton as a graph on the same `n` vertices.
    pub fn skeleton_graph(&self) -> Graph {
        Graph::new(self.n, self.faces(1).iter().map(|e| (e[0], e[1]))).unwrap()
    }

    /// Vertex degrees in the 1-skeleton.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n as usize];
        for e in self.faces(1) {
            deg[e[0] as usize] += 1;
            deg[e[1] as usize] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Faces not properly contained in any other face, sorted
    /// lexicographically (shorter prefixes first).
    pub fn maximal_faces(&self) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        for (d, list) in self.faces.iter().enumerate() {
            for f in list {
                let covered = self.faces.get(d + 1).is_some_and(|above| {
                    // f is covered iff some extension by one vertex is a face
                    (0..self.n).any(|v| {
                        if f.binary_search(&v).is_ok() {
                            return false;
                        }
                        let mut ext = f.clone();
                        let pos = ext.partition_point(|&x| x < v);
                        ext.insert(pos, v);
                        above.binary_search(&ext).is_ok()
                    })
                });
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Induced subcomplex on `alpha`, densely re-indexed along the sorted
    /// subset. Returns the complex together with the new-to-old vertex map.
    pub fn induced(&self, alpha: &[VertexId]) -> Result<(SimplicialComplex, Vec<VertexId>)> {
        let mut vs: Vec<VertexId> = alpha.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {v} out of range for n={}", self.n)));
        }
        let mut pos = vec![u32::MAX; self.n as usize];
        for (i, &v) in vs.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut faces: Vec<Vec<Vec<VertexId>>> = Vec::new();
        for (d, list) in self.faces.iter().enumerate() {
            let kept: Vec<Vec<VertexId>> = list
                .iter()
                .filter(|f| f.iter().all(|&v| pos[v as usize] != u32::MAX))
                .map(|f| f.iter().map(|&v| pos[v as usize]).collect())
                .collect();
            // relabeling is monotone, so sortedness is preserved
            if !kept.is_empty() || d < self.faces.len() {
                faces.push(kept);
            }
        }
        Ok((SimplicialComplex::from_closed_sorted(vs.len() as u32, faces), vs))
    }

    /// Induced subcomplex for a bitmask subset (n <= 64), without relabeling
    /// bookkeeping for callers that only need homology.
    pub(crate) fn induced_mask(&self, mask: u64) -> SimplicialComplex {
        debug_assert!(self.n <= 64);
        let alpha: Vec<VertexId> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&alpha).unwrap().0
    }

    /// Is this complex the clique complex of its own 1-skeleton, truncated at
    /// `max(dim, 2)`? (The boundary of the 3-simplex passes: its 2-truncated
    /// clique complex is itself. A hollow triangle fails: truncation never
    /// drops below the dimension where a 3-clique would produce a face.)
    pub fn is_flag(&self) -> bool {
        let dim = self.dim().map_or(2, |d| d.max(2));
        let g = self.skeleton_graph();
        // every vertex must actually be a 0-face for the comparison to hold
        let zero: Vec<Vec<VertexId>> = self.faces(0).to_vec();
        if zero.len() != self.n as usize {
            return false;
        }
        clique_complex(&g, Some(dim)) == *self
    }

    /// Flag in the unbounded sense: [`is_flag`](Self::is_flag) and no clique
    /// on `dim + 2` vertices in the skeleton (so the full clique complex does
    /// not exceed this dimension).
    pub fn is_strictly_flag(&self) -> bool {
        if !self.is_flag() {
            return false;
        }
        let dim = self.dim().map_or(0, |d| d);
        !self.skeleton_graph().has_clique(dim + 2)
    }

    /// Disjoint union, with `other`'s vertices shifted above `self`'s.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.n;
        let dims = self.faces.len().max(other.faces.len());
        let mut faces = Vec::with_capacity(dims);
        for d in 0..dims {
            let mut list = self.faces(d).to_vec();
            list.extend(
                other.faces(d).iter().map(|f| f.iter().map(|&v| v + shift).collect::<Vec<_>>()),
            );
            faces.push(list);
        }
        SimplicialComplex::from_closed_sorted(self.n + other.n, faces)
    }
}

/// Clique complex of `g`, with faces of dimension `d` being exactly the
/// `(d+1)`-cliques, up to `max_dim` (unbounded if `None`).
///
/// Enumeration expands each clique by vertices above its maximum that are
/// adjacent to all its members, via bitset intersections.
pub fn clique_complex(g: &Graph, max_dim: Option<usize>) -> SimplicialComplex {
    let n = g.n();
    if n == 0 {
        return SimplicialComplex::void(0);
    }
    let mut faces: Vec<Vec<Vec<VertexId>>> = Vec::new();
    faces.push((0..n).map(|v| vec![v]).collect());
    if max_dim == Some(0) {
        return SimplicialComplex::from_closed_sorted(n, faces);
    }
    faces.push(g.edges().iter().map(|&(u, v)| vec![u, v]).collect());
    // common[j]: bitset of common neighbors of the current clique prefix
    let words = g.adj_row(0).len();
    let mut d = 1;
    while max_dim.is_none_or(|m| d < m) {
        let prev = &faces[d];
        if prev.is_empty() {
            break;
        }
        let mut next: Vec<Vec<VertexId>> = Vec::new();
        for clique in prev {
            let mut common = vec![u64::MAX; words];
            for &v in clique {
                for (c, a) in common.iter_mut().zip(g.adj_row(v)) {
                    *c &= a;
                }
            }
            let last = *clique.last().unwrap();
            for w in (last + 1)..n {
                if common[w as usize / 64] >> (w as usize % 64) & 1 == 1 {
                    let mut f = clique.clone();
                    f.push(w);
                    next.push(f);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        faces.push(next);
        d += 1;
    }
    SimplicialComplex::from_closed_sorted(n, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_clique_complex() {
        let cx = clique_complex(&Graph::complete(3), None);
        assert_eq!(cx.f_vector(), FVector(vec![3, 3, 1]));
    }

    #[test]
    fn four_cycle_has_no_two_faces() {
        let cx = clique_complex(&Graph::cycle(4), None);
        assert_eq!(cx.f_vector(), FVector(vec![4, 4]));
    }

    #[test]
    fn edge_count_matches_skeleton() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap();
        let cx = clique_complex(&g, None);
        assert_eq!(cx.face_count(1), g.edge_count());
        assert_eq!(cx.skeleton_graph(), g);
    }

    #[test]
    fn k4_truncation() {
        // unbounded: solid tetrahedron; capped at 2: its boundary
        let full = clique_complex(&Graph::complete(4), None);
        assert_eq!(full.f_vector(), FVector(vec![4, 6, 4, 1]));
        let capped = clique_complex(&Graph::complete(4), Some(2));
        assert_eq!(capped.f_vector(), FVector(vec![4, 6, 4]));
        assert!(capped.is_flag());
        assert!(!capped.is_strictly_flag());
        assert!(full.is_strictly_flag());
    }

    #[test]
    fn induced_of_empty_set_is_void() {
        let cx = clique_complex(&Graph::complete(4), None);
        let (sub, map) = cx.induced(&[]).unwrap();
        assert_eq!(sub.dim(), None);
        assert_eq!(sub.n(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn induced_of_simplex_is_simplex() {
        let cx = clique_complex(&Graph::complete(4), None);
        let (sub, map) = cx.induced(&[3, 0, 2]).unwrap();
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(sub.f_vector(), FVector(vec![3, 3, 1]));
    }

    #[test]
    fn fig1_induced_subcomplex_keeps_diagonal() {
        // 4-vertex graph: square 1-2-3-4 with diagonal 1-3 (0-indexed below)
        let g = Graph::new(4, [(0, 3), (2, 3), (0, 2), (0, 1), (1, 2)]).unwrap();
        let cx = clique_complex(&g, None);
        let (sub, _) = cx.induced(&[0, 1, 2]).unwrap();
        assert!(sub.has_face(&[0, 2]), "the diagonal edge is induced");
        // the path on {1,2,3} misses that edge, so it is not this subcomplex
        let path = SimplicialComplex::from_faces(3, [[0u32, 1], [1, 2]]).unwrap();
        assert_ne!(sub, path);
    }

    #[test]
    fn downward_closure_from_faces() {
        let cx = SimplicialComplex::from_faces(5, [[0u32, 2, 4]]).unwrap();
        assert_eq!(cx.f_vector(), FVector(vec![3, 3, 1]));
        assert!(cx.has_face(&[0, 4]));
        assert!(cx.validate().is_ok());
    }

    #[test]
    fn maximal_faces_roundtrip() {
        let cx = SimplicialComplex::from_faces(5, vec![vec![0u32, 1, 2], vec![2, 3], vec![4]])
            .unwrap();
        let max = cx.maximal_faces();
        assert_eq!(max, vec![vec![0, 1, 2], vec![2, 3], vec![4]]);
        let back = SimplicialComplex::from_faces(5, max).unwrap();
        assert_eq!(back, cx);
    }

    #[test]
    fn flag_iff_skeleton_determines() {
        let cx = clique_complex(&Graph::cycle(5), None);
        assert!(cx.is_flag() && cx.is_strictly_flag());
        // empty triangle: 3-cycle without the 2-face
        let hollow = SimplicialComplex::from_faces(3, [[0u32, 1], [1, 2], [0, 2]]).unwrap();
        assert!(!hollow.is_flag());
    }

    #[test]
    fn disjoint_union_counts_add() {
        let a = clique_complex(&Graph::complete(3), None);
        let b = clique_complex(&Graph::cycle(4), None);
        let u = a.disjoint_union(&b);
        assert_eq!(u.f_vector(), FVector(vec![7, 7, 1]));
        assert_eq!(u.euler_characteristic(), a.euler_characteristic() + b.euler_characteristic());
    }
}
