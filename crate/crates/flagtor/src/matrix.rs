//! Dense integer matrices and field-generic Gaussian elimination.
//!
//! Ranks over a field are computed generically through [`FieldOps`], a small
//! coefficient-context trait with two instantiations: [`Rationals`] (exact
//! characteristic 0) and [`PrimeField`] (F_p for a runtime prime). Keeping the
//! elimination independent of the Smith-normal-form path gives the
//! universal-coefficient cross-check two genuinely different routes.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Int, Rational};

/// Row-major dense matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        IntegerMatrix { rows: r, cols: c, data: rows.into_iter().flatten().map(Int::from).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn apply_row_permutation(&self, perm: &[usize]) -> IntegerMatrix {
        assert_eq!(perm.len(), self.rows);
        let mut out = IntegerMatrix::zero(self.rows, self.cols);
        for (new, &old) in perm.iter().enumerate() {
            for j in 0..self.cols {
                out.set(new, j, self.get(old, j).clone());
            }
        }
        out
    }

    pub fn apply_col_permutation(&self, perm: &[usize]) -> IntegerMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = IntegerMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for (new, &old) in perm.iter().enumerate() {
                out.set(i, new, self.get(i, old).clone());
            }
        }
        out
    }

    /// Plain-text integer grid, for debugging dumps.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    s.push(' ');
                }
                write!(s, "{}", self.get(i, j)).unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// Exact coefficient-field context. Elements carry no global state; the
/// context does (e.g. the prime modulus). `embed` carries an integer into
/// the field.
pub trait FieldOps: Sync {
    type Elem: Clone + PartialEq + Send + Sync;

    fn embed(&self, x: &Int) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn sub_mul(&self, x: &Self::Elem, factor: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// `a / b` for nonzero `b`.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// The rational numbers.
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = Rational;

    fn embed(&self, x: &Int) -> Rational {
        Rational::from_integer(x.clone())
    }

    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }

    fn sub_mul(&self, x: &Rational, factor: &Rational, y: &Rational) -> Rational {
        x - factor * y
    }

    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        a / b
    }
}

/// The prime field `F_p` for a runtime prime modulus.
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics on a non-prime modulus; callers validate with [`is_prime`].
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2) mod p
        assert!(!a.is_multiple_of(self.p));
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn embed(&self, x: &Int) -> u64 {
        let m = x.mod_floor(&Int::from(self.p));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn sub_mul(&self, x: &u64, factor: &u64, y: &u64) -> u64 {
        let prod = self.mul(*factor, *y);
        (x + self.p - prod) % self.p
    }

    fn div(&self, a: &u64, b: &u64) -> u64 {
        self.mul(*a, self.inv(*b))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Rank of `m` over the field described by `f`, by Gaussian elimination.
#[allow(clippy::needless_range_loop)] // rows are read and written pairwise
pub fn field_rank<F: FieldOps>(f: &F, m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<F::Elem>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| f.embed(m.get(i, j))).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !f.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, piv);
        for i in (rank + 1)..rows {
            if f.is_zero(&a[i][col]) {
                continue;
            }
            let factor = f.div(&a[i][col], &a[rank][col]);
            for j in col..cols {
                a[i][j] = f.sub_mul(&a[i][j], &factor, &a[rank][j]);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
