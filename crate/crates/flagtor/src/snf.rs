//! Smith normal form over the integers.
//!
//! Fraction-free elimination choosing the pivot of minimal absolute value
//! (Kannan-Bachem style): the submatrix minimum keeps intermediate entries
//! small on the sparse boundary matrices this crate produces. After clearing
//! a pivot's row and column, any remaining entry not divisible by the pivot
//! has its row folded in and the step repeats, so the diagonal comes out as a
//! divisibility chain directly.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::matrix::IntegerMatrix;
use crate::Int;

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive; ones included)
/// and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub invariant_factors: Vec<Int>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors exceeding 1, i.e. the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<Int> {
        self.invariant_factors.iter().filter(|d| **d > Int::from(1)).cloned().collect()
    }
}

/// Quotient minimizing `|a - q b|` (symmetric remainder).
fn sym_div(a: &Int, b: &Int) -> Int {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    // adjust toward the nearest multiple
    let double: Int = &r * 2;
    if double.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

struct Elimination {
    a: IntegerMatrix,
    /// Left transform rows (U such that the reduced matrix is U*A*V).
    u: Option<IntegerMatrix>,
    /// Right transform (columns).
    v: Option<IntegerMatrix>,
}

impl Elimination {
    fn new(m: &IntegerMatrix, with_transforms: bool) -> Self {
        Elimination {
            a: m.clone(),
            u: with_transforms.then(|| IntegerMatrix::identity(m.rows())),
            v: with_transforms.then(|| IntegerMatrix::identity(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let x = self.a.get(i, c).clone();
            let y = self.a.get(j, c).clone();
            self.a.set(i, c, y);
            self.a.set(j, c, x);
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols() {
                let x = u.get(i, c).clone();
                let y = u.get(j, c).clone();
                u.set(i, c, y);
                u.set(j, c, x);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let x = self.a.get(r, i).clone();
            let y = self.a.get(r, j).clone();
            self.a.set(r, i, y);
            self.a.set(r, j, x);
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.rows() {
                let x = v.get(r, i).clone();
                let y = v.get(r, j).clone();
                v.set(r, i, y);
                v.set(r, j, x);
            }
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.a.cols() {
            let val = self.a.get(i, c) - q * self.a.get(k, c);
            self.a.set(i, c, val);
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols() {
                let val = u.get(i, c) - q * u.get(k, c);
                u.set(i, c, val);
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.a.rows() {
            let val = self.a.get(r, j) - q * self.a.get(r, k);
            self.a.set(r, j, val);
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.rows() {
                let val = v.get(r, j) - q * v.get(r, k);
                v.set(r, j, val);
            }
        }
    }

    fn row_add(&mut self, i: usize, k: usize) {
        let minus_one = Int::from(-1);
        self.row_axpy(i, k, &minus_one);
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            let val = -self.a.get(i, c).clone();
            self.a.set(i, c, val);
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols() {
                let val = -u.get(i, c).clone();
                u.set(i, c, val);
            }
        }
    }

    fn min_abs_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.a.rows() {
            for j in from..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < self.a.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let mut k = 0;
        let steps = self.a.rows().min(self.a.cols());
        while k < steps {
            let Some((pi, pj)) = self.min_abs_pivot(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                // clear column k
                let mut dirty = false;
                for i in (k + 1)..self.a.rows() {
                    if self.a.get(i, k).is_zero() {
                        continue;
                    }
                    let q = sym_div(self.a.get(i, k), self.a.get(k, k));
                    self.row_axpy(i, k, &q);
                    if !self.a.get(i, k).is_zero() {
                        // remainder is strictly smaller; promote it to pivot
                        self.swap_rows(k, i);
                        dirty = true;
                    }
                }
                for j in (k + 1)..self.a.cols() {
                    if self.a.get(k, j).is_zero() {
                        continue;
                    }
                    let q = sym_div(self.a.get(k, j), self.a.get(k, k));
                    self.col_axpy(j, k, &q);
                    if !self.a.get(k, j).is_zero() {
                        self.swap_cols(k, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // enforce divisibility of the remaining submatrix by the pivot
                let mut fold: Option<usize> = None;
                'scan: for i in (k + 1)..self.a.rows() {
                    for j in (k + 1)..self.a.cols() {
                        if !(self.a.get(i, j) % self.a.get(k, k)).is_zero() {
                            fold = Some(i);
                            break 'scan;
                        }
                    }
                }
                match fold {
                    Some(i) => self.row_add(k, i),
                    None => break,
                }
            }
            if self.a.get(k, k).is_negative() {
                self.negate_row(k);
            }
            k += 1;
        }
        k
    }
}

/// Smith normal form of `m` (invariant factors only).
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut e = Elimination::new(m, false);
    let rank = e.run();
    SmithForm {
        invariant_factors: (0..rank).map(|i| e.a.get(i, i).clone()).collect(),
        rank,
    }
}

/// Solves `A x = b` over the integers. Returns a witness solution, or `None`
/// when `b` is not in the column lattice of `A`. The witness is re-verified
/// by exact multiplication before being returned.
pub fn solve_integer(a: &IntegerMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len());
    ZSolver::new(a).solve(b)
}

/// Factors a matrix once so many right-hand sides can be solved against it.
pub struct ZSolver {
    diag: Vec<Int>,
    rank: usize,
    u: IntegerMatrix,
    v: IntegerMatrix,
    a: IntegerMatrix,
}

impl ZSolver {
    pub fn new(a: &IntegerMatrix) -> Self {
        let mut e = Elimination::new(a, true);
        let rank = e.run();
        let diag = (0..rank).map(|i| e.a.get(i, i).clone()).collect();
        ZSolver { diag, rank, u: e.u.unwrap(), v: e.v.unwrap(), a: a.clone() }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        // D = U A V, so A x = b iff D y = U b with x = V y
        let c = self.u.mul_vec(b);
        let mut y = vec![Int::zero(); self.a.cols()];
        for i in 0..self.a.rows() {
            if i < self.rank {
                let (q, r) = num_integer::Integer::div_rem(&c[i], &self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c[i].is_zero() {
                return None;
            }
        }
        let x = self.v.mul_vec(&y);
        debug_assert_eq!(self.a.mul_vec(&x), b, "Z-solve witness failed re-verification");
        Some(x)
    }
}
