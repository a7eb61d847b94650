//! Betti tables of Stanley-Reisner quotients via the induced-subcomplex scan,
//! torsion-prime detection, and the semicontinuity comparison between
//! characteristic 0 and characteristic p tables.
//!
//! `beta_{i,j}(S/I) = sum over |alpha| = j of dim_k reduced H_{j-i-1} of the
//! induced subcomplex on alpha`, with `beta_{0,0} = 1` coming from the empty
//! subset. Field dimensions go through dedicated Gaussian elimination; the
//! torsion scan goes through integer Smith forms. The two routes are
//! independent, which is what makes the universal-coefficient consistency
//! check meaningful.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::homology::{homology_all, reduced_dims_over};
use crate::matrix::{is_prime, PrimeField, Rationals};
use crate::{Error, Int, Result, VertexId};

/// Default cap on vertex count for the `2^n` subset scans.
pub const DEFAULT_SCAN_LIMIT: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// 0 for the rationals, else a prime.
    pub characteristic: u64,
    /// `(i, j) -> beta_{i,j}`, zero entries omitted.
    pub entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn max_i(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn max_j(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Macaulay2-style grid: row `r` holds the entries `beta_{i, i+r}`.
    pub fn render_grid(&self) -> String {
        use std::fmt::Write;
        let maxi = self.max_i();
        let maxr = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let mut cols: Vec<Vec<String>> = Vec::new();
        let mut head = vec![String::new(), "total:".to_string()];
        head.extend((0..=maxr).map(|r| format!("{r}:")));
        cols.push(head);
        for i in 0..=maxi {
            let mut col = vec![format!("{i}")];
            let total: usize = (0..=maxr).map(|r| self.get(i, i + r)).sum();
            col.push(format!("{total}"));
            for r in 0..=maxr {
                let v = self.get(i, i + r);
                col.push(if v == 0 { ".".into() } else { format!("{v}") });
            }
            cols.push(col);
        }
        let widths: Vec<usize> =
            cols.iter().map(|c| c.iter().map(String::len).max().unwrap_or(1)).collect();
        let mut out = String::new();
        for row in 0..cols[0].len() {
            for (c, col) in cols.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                write!(out, "{:>width$}", col[row], width = widths[c]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionWitness {
    pub alpha: Vec<VertexId>,
    pub dimension: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub primes: Vec<u64>,
    pub witnesses: BTreeMap<u64, TorsionWitness>,
    /// Set when the scan was capped at a subset size, making it partial.
    pub capped_at: Option<usize>,
}

fn check_scan_size(c: &SimplicialComplex, limit: u32) -> Result<()> {
    if c.n() > limit {
        return Err(Error::Guard(format!(
            "subset scan over {} vertices needs 2^{} homology computations; \
             raise the limit explicitly if this is intended",
            c.n(),
            c.n()
        )));
    }
    Ok(())
}

/// Subset masks grouped by size then lexicographic vertex order. Ascending
/// vertex-list order coincides with descending bit-reversed mask order (the
/// first differing vertex is the highest differing reversed bit).
fn masks_by_size(n: u32) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
    masks.sort_unstable_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    masks
}

/// Betti table of `S/I_Delta` over the field of the given characteristic.
pub fn betti_table(c: &SimplicialComplex, characteristic: u64) -> Result<BettiTable> {
    betti_table_with_limit(c, characteristic, DEFAULT_SCAN_LIMIT)
}

pub fn betti_table_with_limit(
    c: &SimplicialComplex,
    characteristic: u64,
    limit: u32,
) -> Result<BettiTable> {
    check_scan_size(c, limit)?;
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(Error::invalid(format!(
            "characteristic {characteristic} is neither 0 nor prime"
        )));
    }
    let masks = masks_by_size(c.n());
    let per_alpha: Vec<(u32, Vec<usize>)> = masks
        .par_iter()
        .map(|&mask| {
            let sub = c.induced_mask(mask);
            let dims = if characteristic == 0 {
                reduced_dims_over(&Rationals, &sub)
            } else {
                reduced_dims_over(&PrimeField::new(characteristic), &sub)
            };
            (mask.count_ones(), dims)
        })
        .collect();
    let mut entries: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (j, dims) in per_alpha {
        let j = j as usize;
        // dims[t] is reduced H_{t-1}; beta_{j-d-1, j} collects dim H~_d
        for (t, &dim) in dims.iter().enumerate() {
            if dim == 0 {
                continue;
            }
            let d = t as i64 - 1;
            let i = (j as i64 - d - 1) as usize;
            *entries.entry((i, j)).or_insert(0) += dim;
        }
    }
    Ok(BettiTable { characteristic, entries })
}

/// One Betti entry `beta_{i,j}` without scanning every subset size: only the
/// `|alpha| = j` stratum is visited. Usable on complexes too large for the
/// full table when `C(n, j)` is small (e.g. `j = n`).
pub fn betti_entry(
    c: &SimplicialComplex,
    i: usize,
    j: usize,
    characteristic: u64,
) -> Result<usize> {
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(Error::invalid(format!(
            "characteristic {characteristic} is neither 0 nor prime"
        )));
    }
    if j > c.n() as usize || i > j {
        return Ok(0);
    }
    let d = j as i64 - i as i64 - 1;
    let mut total = 0usize;
    let mut alpha: Vec<VertexId> = (0..j as u32).collect();
    loop {
        let (sub, _) = c.induced(&alpha)?;
        let dims = if characteristic == 0 {
            reduced_dims_over(&Rationals, &sub)
        } else {
            reduced_dims_over(&PrimeField::new(characteristic), &sub)
        };
        let t = (d + 1) as usize;
        total += dims.get(t).copied().unwrap_or(0);
        // next j-combination of [0, n)
        let n = c.n();
        let mut k = j;
        loop {
            if k == 0 {
                return Ok(total);
            }
            k -= 1;
            if alpha[k] < n - (j - k) as u32 {
                alpha[k] += 1;
                for t in (k + 1)..j {
                    alpha[t] = alpha[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Scans induced subcomplexes' integer homology for torsion; collects every
/// prime dividing any invariant factor with the first witness in
/// (size, lex, dimension) order. A `subset_size_cap` makes the scan partial.
pub fn torsion_primes(
    c: &SimplicialComplex,
    subset_size_cap: Option<usize>,
) -> Result<TorsionReport> {
    torsion_primes_with_limit(c, subset_size_cap, DEFAULT_SCAN_LIMIT)
}

pub fn torsion_primes_with_limit(
    c: &SimplicialComplex,
    subset_size_cap: Option<usize>,
    limit: u32,
) -> Result<TorsionReport> {
    check_scan_size(c, limit)?;
    let masks: Vec<u64> = masks_by_size(c.n())
        .into_iter()
        .filter(|m| subset_size_cap.is_none_or(|cap| m.count_ones() as usize <= cap))
        .collect();
    let findings: Vec<(u64, Vec<(u64, i64)>)> = masks
        .par_iter()
        .map(|&mask| {
            let sub = c.induced_mask(mask);
            let mut primes: Vec<(u64, i64)> = Vec::new();
            for (d, h) in homology_all(&sub, true) {
                for factor in &h.torsion {
                    for p in prime_factors(factor) {
                        if !primes.iter().any(|&(q, _)| q == p) {
                            primes.push((p, d));
                        }
                    }
                }
            }
            (mask, primes)
        })
        .collect();
    let mut witnesses: BTreeMap<u64, TorsionWitness> = BTreeMap::new();
    for (mask, primes) in findings {
        for (p, d) in primes {
            witnesses.entry(p).or_insert_with(|| TorsionWitness {
                alpha: (0..c.n()).filter(|&v| mask >> v & 1 == 1).collect(),
                dimension: d,
            });
        }
    }
    Ok(TorsionReport {
        primes: witnesses.keys().copied().collect(),
        witnesses,
        capped_at: subset_size_cap,
    })
}

fn prime_factors(x: &Int) -> Vec<u64> {
    let mut n = x.to_u64().expect("torsion factors fit in u64 at these sizes");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityReport {
    /// True when the characteristic-0 table is entrywise at most the
    /// characteristic-p table (semicontinuity demands it).
    pub dominated: bool,
    /// Positions where the inequality is strict: the p-torsion positions.
    pub strict_positions: Vec<(usize, usize)>,
    pub equal: bool,
}

/// Compares the Betti table over `Q` with the table over `F_p`.
pub fn semicontinuity_check(c: &SimplicialComplex, p: u64) -> Result<SemicontinuityReport> {
    semicontinuity_check_with_limit(c, p, DEFAULT_SCAN_LIMIT)
}

pub fn semicontinuity_check_with_limit(
    c: &SimplicialComplex,
    p: u64,
    limit: u32,
) -> Result<SemicontinuityReport> {
    let q = betti_table_with_limit(c, 0, limit)?;
    let f = betti_table_with_limit(c, p, limit)?;
    let mut dominated = true;
    let mut strict = Vec::new();
    let keys: std::collections::BTreeSet<(usize, usize)> =
        q.entries.keys().chain(f.entries.keys()).copied().collect();
    for &(i, j) in &keys {
        let a = q.get(i, j);
        let b = f.get(i, j);
        if a > b {
            dominated = false;
        }
        if b > a {
            strict.push((i, j));
        }
    }
    Ok(SemicontinuityReport { dominated, equal: strict.is_empty() && dominated, strict_positions: strict })
}

/// Executable universal-coefficient identity on one complex: for every
/// `(i, j)`, the excess of the `F_p` table over the `Q` table must equal the
/// count of p-divisible torsion factors of reduced `H_{j-i-1}` plus
/// `H_{j-i-2}` over the `|alpha| = j` subsets, with both sides computed by
/// independent routes (field elimination vs integer Smith form).
pub fn uct_consistency(c: &SimplicialComplex, p: u64, limit: u32) -> Result<bool> {
    let q = betti_table_with_limit(c, 0, limit)?;
    let f = betti_table_with_limit(c, p, limit)?;
    let masks = masks_by_size(c.n());
    let mut predicted: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &mask in &masks {
        let j = mask.count_ones() as usize;
        let sub = c.induced_mask(mask);
        for (d, h) in homology_all(&sub, true) {
            let p_torsion =
                h.torsion.iter().filter(|t| t.mod_floor(&Int::from(p)) == Int::from(0)).count();
            if p_torsion == 0 {
                continue;
            }
            // torsion in H~_d raises dim H~_d(F_p) (position i = j-d-1) and
            // dim H~_{d+1}(F_p) (position i = j-d-2)
            for shift in 0..2i64 {
                let i = j as i64 - d - 1 - shift;
                if i >= 0 {
                    *predicted.entry((i as usize, j)).or_insert(0) += p_torsion;
                }
            }
        }
    }
    let keys: std::collections::BTreeSet<(usize, usize)> = q
        .entries
        .keys()
        .chain(f.entries.keys())
        .chain(predicted.keys())
        .copied()
        .collect();
    for (i, j) in keys {
        let lhs = f.get(i, j) as i64 - q.get(i, j) as i64;
        let rhs = predicted.get(&(i, j)).copied().unwrap_or(0) as i64;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::clique_complex;
    use crate::construct::{build_xm, rp2_flag};
    use crate::graph::Graph;

    fn entries(table: &BettiTable) -> Vec<((usize, usize), usize)> {
        table.entries.iter().map(|(&k, &v)| (k, v)).collect()
    }

    #[test]
    fn two_isolated_vertices_is_principal_ideal() {
        // I = (x1 x2): Koszul resolution has beta_{0,0} = beta_{1,2} = 1
        let c = SimplicialComplex::from_faces(2, [[0u32], [1]]).unwrap();
        let t = betti_table(&c, 0).unwrap();
        assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 2), 1)]);
    }

    #[test]
    fn four_cycle_against_complete_intersection_oracle() {
        // I = (x1 x3, x2 x4) is a complete intersection of two quadrics:
        // 0 -> S(-4) -> S(-2)^2 -> S -> S/I, so beta_{1,2} = 2, beta_{2,4} = 1
        let c = clique_complex(&Graph::cycle(4), None);
        for characteristic in [0u64, 2, 3] {
            let t = betti_table(&c, characteristic).unwrap();
            assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
        }
    }

    #[test]
    fn ghost_vertex_contributes_linear_generator() {
        // vertex 1 is not a face: x2 is a degree-one generator -> beta_{1,1}
        let c = SimplicialComplex::from_faces(2, [[0u32]]).unwrap();
        let t = betti_table(&c, 0).unwrap();
        assert_eq!(t.get(1, 1), 1);
    }

    #[test]
    fn rp2_tables_differ_exactly_in_char_two() {
        let c = rp2_flag();
        let sem2 = semicontinuity_check(&c, 2).unwrap();
        assert!(sem2.dominated && !sem2.equal);
        // the torsion sits at alpha = everything: positions (9,11) and (8,11)
        assert_eq!(sem2.strict_positions, vec![(8, 11), (9, 11)]);
        let sem3 = semicontinuity_check(&c, 3).unwrap();
        assert!(sem3.equal);
    }

    #[test]
    fn rp2_torsion_primes() {
        let c = rp2_flag();
        let report = torsion_primes(&c, None).unwrap();
        assert_eq!(report.primes, vec![2]);
        let w = &report.witnesses[&2];
        assert_eq!(w.alpha, (0..11).collect::<Vec<_>>());
        assert_eq!(w.dimension, 1);
        // sphere boundary: no torsion anywhere
        let sphere = SimplicialComplex::from_faces(
            4,
            [[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        )
        .unwrap();
        assert!(torsion_primes(&sphere, None).unwrap().primes.is_empty());
    }

    #[test]
    fn x6_has_primes_two_and_three() {
        let x6 = build_xm(6).unwrap().complex;
        // full scan is infeasible (38 vertices); the full-subset entry alone
        // certifies both primes via the universal-coefficient shift
        for p in [2u64, 3] {
            let n = x6.n() as usize;
            let q = betti_entry(&x6, n - 2, n, 0).unwrap();
            let f = betti_entry(&x6, n - 2, n, p).unwrap();
            assert!(f > q, "p = {p}");
        }
    }

    #[test]
    fn second_row_position_for_x2() {
        let x2 = build_xm(2).unwrap().complex;
        let n = x2.n() as usize; // 26
        // beta_{n-2, n} lies in the second row (j - i = 2) and must be
        // strictly larger over F_2
        let q = betti_entry(&x2, n - 2, n, 0).unwrap();
        let f = betti_entry(&x2, n - 2, n, 2).unwrap();
        assert_eq!(f - q, 1);
    }

    #[test]
    fn guard_rejects_large_scans() {
        let x2 = build_xm(2).unwrap().complex;
        assert!(matches!(betti_table(&x2, 0), Err(crate::Error::Guard(_))));
    }

    #[test]
    fn uct_consistency_on_rp2() {
        for p in [2u64, 3, 5] {
            assert!(uct_consistency(&rp2_flag(), p, 24).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn uct_consistency_on_seeded_complexes() {
        use crate::random::keyed_uniform;
        for seed in 0..30u64 {
            let n = 5 + (seed % 3) as u32;
            let mut faces: Vec<Vec<u32>> = (0..n).map(|v| vec![v]).collect();
            let mut counter = 0u64;
            for a in 0..n {
                for b in (a + 1)..n {
                    counter += 1;
                    if keyed_uniform(seed, counter).is_multiple_of(3) {
                        faces.push(vec![a, b]);
                    }
                    for c in (b + 1)..n {
                        counter += 1;
                        if keyed_uniform(seed, counter).is_multiple_of(4) {
                            faces.push(vec![a, b, c]);
                        }
                    }
                }
            }
            let cx = SimplicialComplex::from_faces(n, faces).unwrap();
            for p in [2u64, 3] {
                assert!(uct_consistency(&cx, p, 24).unwrap(), "seed {seed}, p = {p}");
            }
        }
    }

    #[test]
    fn grid_rendering_shape() {
        let c = clique_complex(&Graph::cycle(4), None);
        let grid = betti_table(&c, 0).unwrap().render_grid();
        assert!(grid.contains("total:"));
        assert!(grid.lines().count() >= 3);
    }
}
