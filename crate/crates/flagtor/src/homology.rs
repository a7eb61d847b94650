//! Exact simplicial homology over the integers and over fields.
//!
//! Orientations are induced by the single global vertex order: the face
//! `(v_0 < ... < v_d)` has boundary `sum_i (-1)^i (v_0 .. v_i^ .. v_d)`.
//! Reduced homology augments the chain complex with `C_{-1} = Z` and the
//! all-ones map from vertices, so the void complex has reduced `H_{-1} = Z`.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::matrix::{field_rank, is_prime, FieldOps, IntegerMatrix, PrimeField, Rationals};
use crate::snf::{smith_normal_form, ZSolver};
use crate::{Error, Int, Result, VertexId};

/// Free rank plus torsion invariant factors `t_1 | t_2 | ...`, each >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Number of `d`-chains, with the augmentation convention when `reduced`.
fn chain_dim(c: &SimplicialComplex, d: i64, reduced: bool) -> usize {
    if d == -1 {
        return usize::from(reduced);
    }
    if d < -1 {
        return 0;
    }
    c.face_count(d as usize)
}

/// Boundary matrix from `d`-faces (columns) to `(d-1)`-faces (rows), in the
/// complex's canonical face order. `d = 0` with `reduced` gives the all-ones
/// augmentation row.
pub fn boundary_matrix(c: &SimplicialComplex, d: i64, reduced: bool) -> IntegerMatrix {
    let rows = chain_dim(c, d - 1, reduced);
    let cols = chain_dim(c, d, reduced);
    let mut m = IntegerMatrix::zero(rows, cols);
    if d == 0 {
        if reduced {
            for j in 0..cols {
                m.set(0, j, Int::from(1));
            }
        }
        return m;
    }
    if d < 0 {
        return m;
    }
    let d = d as usize;
    let lower = c.faces(d - 1);
    let index = |face: &[VertexId]| lower.binary_search_by(|f| f.as_slice().cmp(face)).unwrap();
    for (j, face) in c.faces(d).iter().enumerate() {
        let mut sign = 1i64;
        for skip in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(skip);
            m.set(index(&sub), j, Int::from(sign));
            sign = -sign;
        }
    }
    m
}

/// Non-reduced boundary matrix (most callers).
pub fn boundary(c: &SimplicialComplex, d: usize) -> IntegerMatrix {
    boundary_matrix(c, d as i64, false)
}

/// `H_d` over the integers via Smith normal forms of the two adjacent
/// boundary maps. `d = -1` is allowed when `reduced`.
pub fn homology(c: &SimplicialComplex, d: i64, reduced: bool) -> HomologyGroup {
    let n_d = chain_dim(c, d, reduced);
    let s_out = smith_normal_form(&boundary_matrix(c, d, reduced));
    let s_in = smith_normal_form(&boundary_matrix(c, d + 1, reduced));
    HomologyGroup {
        free_rank: n_d - s_out.rank - s_in.rank,
        torsion: s_in.torsion(),
    }
}

/// All homology groups `H_0 .. H_dim` (plus `H_{-1}` when `reduced`),
/// reusing each Smith form for the two dimensions it borders.
pub fn homology_all(c: &SimplicialComplex, reduced: bool) -> Vec<(i64, HomologyGroup)> {
    let top = c.dim().map(|d| d as i64).unwrap_or(-1);
    let lo = if reduced { -1 } else { 0 };
    let snf_at = |d: i64| smith_normal_form(&boundary_matrix(c, d, reduced));
    let mut out = Vec::new();
    let mut s_out = snf_at(lo);
    for d in lo..=top {
        let s_in = snf_at(d + 1);
        out.push((
            d,
            HomologyGroup {
                free_rank: chain_dim(c, d, reduced) - s_out.rank - s_in.rank,
                torsion: s_in.torsion(),
            },
        ));
        s_out = s_in;
    }
    out
}

/// Dimension of `H_d(c; k)` for the field of the given characteristic,
/// computed by dedicated Gaussian elimination over that field (not via the
/// integer Smith form, so the two routes can cross-check each other).
pub fn homology_dim_mod(c: &SimplicialComplex, d: i64, char_p: u64, reduced: bool) -> Result<usize> {
    let rank = |m: &IntegerMatrix| -> Result<usize> {
        if char_p == 0 {
            Ok(field_rank(&Rationals, m))
        } else if is_prime(char_p) {
            Ok(field_rank(&PrimeField::new(char_p), m))
        } else {
            Err(Error::invalid(format!("characteristic {char_p} is neither 0 nor prime")))
        }
    };
    let out = rank(&boundary_matrix(c, d, reduced))?;
    let inc = rank(&boundary_matrix(c, d + 1, reduced))?;
    Ok(chain_dim(c, d, reduced) - out - inc)
}

/// Reduced field homology dimensions for all `d` in `-1..=dim`, sharing one
/// rank computation per boundary map.
pub fn reduced_dims_over<F: FieldOps>(f: &F, c: &SimplicialComplex) -> Vec<usize> {
    let top = c.dim().map(|d| d as i64).unwrap_or(-1);
    let mut out = Vec::new();
    let mut prev_rank = field_rank(f, &boundary_matrix(c, -1, true));
    for d in -1..=top {
        let next_rank = field_rank(f, &boundary_matrix(c, d + 1, true));
        out.push(chain_dim(c, d, true) - prev_rank - next_rank);
        prev_rank = next_rank;
    }
    out
}

/// A 1-chain as a vector over the complex's edge basis. `walk` lists
/// directed steps `(from, to)` contributing `+1` each (so a step against the
/// sorted orientation contributes `-1` to that edge's coordinate).
pub fn one_chain(c: &SimplicialComplex, walk: &[(VertexId, VertexId)]) -> Result<Vec<Int>> {
    let edges = c.faces(1);
    let mut v = vec![Int::from(0); edges.len()];
    for &(a, b) in walk {
        let (e, sign) = if a < b { ([a, b], 1) } else { ([b, a], -1) };
        let idx = edges
            .binary_search_by(|f| f.as_slice().cmp(&e))
            .map_err(|_| Error::invalid(format!("edge {e:?} not in complex")))?;
        v[idx] += sign;
    }
    Ok(v)
}

/// The square cycle `[a,b] + [b,c] + [c,d] - [a,d]`.
pub fn square_cycle(c: &SimplicialComplex, q: [VertexId; 4]) -> Result<Vec<Int>> {
    let [a, b, cc, d] = q;
    one_chain(c, &[(a, b), (b, cc), (cc, d), (d, a)])
}

/// Is the 1-chain a boundary of 2-chains? Exact solve over Z.
pub fn is_one_boundary(c: &SimplicialComplex, chain: &[Int]) -> bool {
    ZSolver::new(&boundary(c, 2)).solve(chain).is_some()
}

/// Pre-factored boundary for checking many 1-chains on one complex.
pub struct BoundarySolver(ZSolver);

impl BoundarySolver {
    pub fn new(c: &SimplicialComplex) -> Self {
        BoundarySolver(ZSolver::new(&boundary(c, 2)))
    }

    pub fn bounds(&self, chain: &[Int]) -> bool {
        self.0.solve(chain).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::clique_complex;
    use crate::graph::Graph;

    fn simplex_boundary(n: u32) -> SimplicialComplex {
        // boundary of the (n-1)-simplex on n vertices
        let all: Vec<VertexId> = (0..n).collect();
        let faces: Vec<Vec<VertexId>> = (0..n as usize)
            .map(|skip| {
                all.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
            })
            .collect();
        SimplicialComplex::from_faces(n, faces).unwrap()
    }

    #[test]
    fn triangle_boundary_signs() {
        let cx = clique_complex(&Graph::complete(3), None);
        let m = boundary(&cx, 2);
        assert_eq!((m.rows(), m.cols()), (3, 1));
        // edge order {0,1},{0,2},{1,2}
        let col: Vec<i64> = vec![1, -1, 1];
        for (i, want) in col.iter().enumerate() {
            assert_eq!(m.get(i, 0), &Int::from(*want));
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        for cx in [
            clique_complex(&Graph::complete(5), None),
            simplex_boundary(4),
            crate::construct::rp2_flag(),
        ] {
            let top = cx.dim().unwrap();
            for d in 1..=top {
                let prod = boundary(&cx, d).mul(&boundary(&cx, d + 1));
                assert!(prod.is_zero(), "d={d}");
            }
        }
    }

    #[test]
    fn c4_boundary_rank() {
        let cx = clique_complex(&Graph::cycle(4), None);
        let m = boundary(&cx, 1);
        assert_eq!((m.rows(), m.cols()), (4, 4));
        // independent oracle: rank over Q by elimination
        assert_eq!(field_rank(&Rationals, &m), 3);
        assert_eq!(smith_normal_form(&m).rank, 3);
    }

    #[test]
    fn sphere_homology() {
        // boundary of the 3-simplex is S^2
        let cx = simplex_boundary(4);
        assert_eq!(homology(&cx, 2, false), HomologyGroup::free(1));
        assert_eq!(homology(&cx, 1, false), HomologyGroup::free(0));
        assert_eq!(homology(&cx, 0, false), HomologyGroup::free(1));
    }

    #[test]
    fn circle_homology() {
        let cx = clique_complex(&Graph::cycle(5), None);
        assert_eq!(homology(&cx, 1, false), HomologyGroup::free(1));
    }

    #[test]
    fn reduced_conventions() {
        let void = SimplicialComplex::void(0);
        assert_eq!(homology(&void, -1, true), HomologyGroup::free(1));
        let two_points = SimplicialComplex::from_faces(2, [[0u32], [1]]).unwrap();
        assert_eq!(homology(&two_points, -1, true), HomologyGroup::free(0));
        assert_eq!(homology(&two_points, 0, true), HomologyGroup::free(1));
        assert_eq!(homology(&two_points, 0, false), HomologyGroup::free(2));
    }

    #[test]
    fn euler_characteristic_equals_alternating_rank_sum() {
        for cx in [
            clique_complex(&Graph::cycle(6), None),
            simplex_boundary(5),
            crate::construct::rp2_flag(),
        ] {
            let sum: i64 = homology_all(&cx, false)
                .iter()
                .map(|(d, h)| {
                    let s = h.free_rank as i64;
                    if d % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                })
                .sum();
            assert_eq!(sum, cx.euler_characteristic());
        }
    }

    #[test]
    fn composite_characteristic_rejected() {
        let cx = clique_complex(&Graph::complete(3), None);
        assert!(homology_dim_mod(&cx, 1, 6, false).is_err());
        assert!(homology_dim_mod(&cx, 1, 1, false).is_err());
    }

    #[test]
    fn char_zero_matches_free_rank() {
        for cx in [clique_complex(&Graph::cycle(6), None), simplex_boundary(4)] {
            for d in 0..=cx.dim().unwrap() as i64 {
                assert_eq!(
                    homology_dim_mod(&cx, d, 0, false).unwrap(),
                    homology(&cx, d, false).free_rank
                );
            }
        }
    }

    #[test]
    fn one_chain_signs() {
        let cx = clique_complex(&Graph::cycle(4), None);
        let z = square_cycle(&cx, [0, 1, 2, 3]).unwrap();
        // edges {0,1},{0,3},{1,2},{2,3}: traversal 0->1->2->3->0
        let want: Vec<Int> = [1i64, -1, 1, 1].into_iter().map(Int::from).collect();
        assert_eq!(z, want);
        // a cycle in C_4 bounds nothing
        assert!(!is_one_boundary(&cx, &z));
        // but the triangle boundary does bound in a filled triangle
        let tri = clique_complex(&Graph::complete(3), None);
        let t = one_chain(&tri, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(is_one_boundary(&tri, &t));
    }
}
