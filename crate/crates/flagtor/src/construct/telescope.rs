//! The telescope `Y_1`: a chain of flag-triangulated punctured projective
//! planes encoding the relations `2*gamma_i = gamma_{i+1}`.
//!
//! Block `i` lives on the outer square `v_{4i}..v_{4i+3}`, the inner square
//! `v_{4i+4}..v_{4i+7}` (shared with block `i+1`), and the eight interior
//! ring vertices `v'_{8i}..v'_{8i+7}`. The 28-triangle table below realizes each
//! block as an octagon with antipodal boundary identification; one table
//! serves every block.

use crate::complex::{FVector, SimplicialComplex};
use crate::homology::{homology, square_cycle, BoundarySolver, HomologyGroup};
use crate::{Error, Int, Result, VertexId};

use super::{CertCheck, VertexName};

/// Local face table of one building block. Indices 0-3: outer square `a..d`;
/// 4-7: inner square `e..h`; 8-15: ring `p0..p7`.
const BLOCK_FACES: [[usize; 3]; 28] = [
    [0, 1, 8],
    [1, 9, 8],
    [9, 4, 8],
    [1, 2, 9],
    [9, 2, 10],
    [9, 10, 5],
    [9, 5, 4],
    [2, 3, 10],
    [10, 3, 11],
    [10, 11, 5],
    [11, 3, 0],
    [11, 0, 12],
    [11, 12, 6],
    [11, 6, 5],
    [12, 0, 1],
    [12, 1, 13],
    [12, 13, 6],
    [13, 1, 2],
    [13, 2, 14],
    [13, 14, 7],
    [13, 7, 6],
    [14, 2, 3],
    [14, 3, 15],
    [14, 15, 7],
    [15, 3, 0],
    [15, 0, 8],
    [15, 8, 4],
    [15, 4, 7],
];

pub struct TelescopeBuild {
    pub complex: SimplicialComplex,
    pub names: Vec<VertexName>,
    /// Squares `gamma_0 .. gamma_{nk}`, each listed in traversal order.
    pub gammas: Vec<[VertexId; 4]>,
}

/// Builds `Y_1` from `nk` glued blocks and verifies its reference counts,
/// degree bound, `H_1 = Z`, and that `2*gamma_i - gamma_{i+1}` bounds for
/// every `i` (exact solve over Z).
pub fn telescope(nk: usize) -> Result<TelescopeBuild> {
    if nk == 0 {
        return Err(Error::invalid("telescope needs at least one block"));
    }
    let nk32 = nk as u32;
    let n = 12 * nk32 + 4;
    let vp = |l: u32| 4 * nk32 + 4 + l;
    let mut faces: Vec<Vec<VertexId>> = Vec::with_capacity(28 * nk);
    for i in 0..nk32 {
        // local slots 0..8 are v_{4i}..v_{4i+7}; slots 8..16 are v'_{8i}..v'_{8i+7}
        let id = |slot: usize| -> VertexId {
            if slot < 8 {
                4 * i + slot as u32
            } else {
                vp(8 * i + (slot as u32 - 8))
            }
        };
        for tri in BLOCK_FACES {
            let mut f = vec![id(tri[0]), id(tri[1]), id(tri[2])];
            f.sort_unstable();
            faces.push(f);
        }
    }
    let complex = SimplicialComplex::from_faces(n, faces)?;
    let names: Vec<VertexName> = (0..n)
        .map(|v| if v < 4 * nk32 + 4 { VertexName::V(v) } else { VertexName::VPrime(v - (4 * nk32 + 4)) })
        .collect();
    let gammas: Vec<[VertexId; 4]> =
        (0..=nk32).map(|i| [4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]).collect();

    let mut checks: Vec<CertCheck> = Vec::new();
    let fv = complex.f_vector();
    let expected = FVector(vec![12 * nk + 4, 40 * nk + 4, 28 * nk]);
    checks.push(CertCheck {
        name: "fvector".into(),
        passed: fv == expected,
        detail: format!("built {fv}, expected {expected}"),
    });
    let maxdeg = complex.max_degree();
    let want_deg = if nk >= 2 { 9 } else { 6 };
    checks.push(CertCheck {
        name: "maxdeg".into(),
        passed: maxdeg == want_deg,
        detail: format!("maxdeg = {maxdeg}, expected {want_deg}"),
    });
    checks.push(CertCheck {
        name: "flag".into(),
        passed: complex.is_strictly_flag(),
        detail: "clique complex of its 1-skeleton".into(),
    });
    let h1 = homology(&complex, 1, false);
    checks.push(CertCheck {
        name: "h1".into(),
        passed: h1 == HomologyGroup::free(1),
        detail: format!("H_1 = {h1}, expected Z"),
    });
    let solver = BoundarySolver::new(&complex);
    for i in 0..nk {
        let gi = square_cycle(&complex, gammas[i])?;
        let gi1 = square_cycle(&complex, gammas[i + 1])?;
        let target: Vec<Int> =
            gi.iter().zip(&gi1).map(|(a, b)| a * 2 - b).collect();
        checks.push(CertCheck {
            name: format!("relation-{i}"),
            passed: solver.bounds(&target),
            detail: format!("2*gamma_{i} - gamma_{} bounds", i + 1),
        });
    }
    if let Some(fail) = checks.iter().find(|c| !c.passed) {
        return Err(Error::ConstructionIntegrity(format!(
            "telescope nk={nk}: {}: {}",
            fail.name, fail.detail
        )));
    }
    Ok(TelescopeBuild { complex, names, gammas })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_counts() {
        let y = telescope(1).unwrap();
        assert_eq!(y.complex.f_vector(), FVector(vec![16, 44, 28]));
        assert_eq!(y.complex.max_degree(), 6);
    }

    #[test]
    fn two_block_counts() {
        let y = telescope(2).unwrap();
        assert_eq!(y.complex.f_vector(), FVector(vec![28, 84, 56]));
        assert_eq!(y.complex.max_degree(), 9);
    }

    #[test]
    fn three_blocks_have_free_h1() {
        let y = telescope(3).unwrap();
        let h1 = homology(&y.complex, 1, false);
        assert_eq!(h1, HomologyGroup::free(1));
    }

    #[test]
    fn zero_blocks_rejected() {
        assert!(telescope(0).is_err());
    }

    #[test]
    fn middle_square_vertex_neighbors() {
        // v_4 in a two-block telescope has exactly these nine neighbors
        let y = telescope(2).unwrap();
        let g = y.complex.skeleton_graph();
        let nb: Vec<u32> = g.neighbors(4).collect();
        let names: Vec<String> = nb.iter().map(|&v| y.names[v as usize].to_string()).collect();
        assert_eq!(names, ["v5", "v7", "v'0", "v'1", "v'7", "v'8", "v'11", "v'12", "v'15"]);
    }
}
