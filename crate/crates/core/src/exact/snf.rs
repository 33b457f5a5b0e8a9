//! Smith normal form over a Euclidean ring, with both transforms and their inverses.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::ring::{EuclideanRing, Integers};

/// `U * M * V = D` with `D` diagonal and `d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    /// Diagonal of `D`, of length `min(rows, cols)`; nonzero entries come first.
    pub diagonal: Vec<T>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl<T: Clone> Snf<T> {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[T] {
        &self.diagonal[..self.rank]
    }
}

struct Work<'r, R: EuclideanRing> {
    ring: &'r R,
    a: Matrix<R::Elem>,
    u: Matrix<R::Elem>,
    u_inv: Matrix<R::Elem>,
    v: Matrix<R::Elem>,
    v_inv: Matrix<R::Elem>,
}

impl<R: EuclideanRing> Work<'_, R> {
    /// `row[i] += c * row[src]`
    fn row_add(&mut self, i: usize, src: usize, c: &R::Elem) {
        self.a.row_axpy(self.ring, i, src, c);
        self.u.row_axpy(self.ring, i, src, c);
        let neg = self.ring.neg(c);
        self.u_inv.col_axpy(self.ring, src, i, &neg);
    }

    /// `col[j] += c * col[src]`
    fn col_add(&mut self, j: usize, src: usize, c: &R::Elem) {
        self.a.col_axpy(self.ring, j, src, c);
        self.v.col_axpy(self.ring, j, src, c);
        let neg = self.ring.neg(c);
        self.v_inv.row_axpy(self.ring, src, j, &neg);
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem, unit_inv: &R::Elem) {
        self.a.scale_row(self.ring, i, unit);
        self.u.scale_row(self.ring, i, unit);
        self.u_inv.scale_col(self.ring, i, unit_inv);
    }

    /// Position of a nonzero entry of least size in the block `[t.., t..]`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if self.ring.is_zero(x) {
                    continue;
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(_, b)| s < *b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Clears row `t` and column `t` outside the pivot. Returns `false` if a
    /// remainder was left behind (a smaller element now exists).
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.ring.is_zero(self.a.get(i, t)) {
                continue;
            }
            let (q, r) = self.ring.div_rem(self.a.get(i, t), self.a.get(t, t));
            let neg = self.ring.neg(&q);
            self.row_add(i, t, &neg);
            if !self.ring.is_zero(&r) {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.ring.is_zero(self.a.get(t, j)) {
                continue;
            }
            let (q, r) = self.ring.div_rem(self.a.get(t, j), self.a.get(t, t));
            let neg = self.ring.neg(&q);
            self.col_add(j, t, &neg);
            if !self.ring.is_zero(&r) {
                clean = false;
            }
        }
        clean
    }

    /// Smallest nonzero entry of row `t` / column `t` (pivot included).
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = ((t, t), self.ring.size(self.a.get(t, t)));
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if !self.ring.is_zero(x) {
                let s = self.ring.size(x);
                if s < best.1 || self.ring.is_zero(self.a.get(best.0 .0, best.0 .1)) {
                    best = ((i, t), s);
                }
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if !self.ring.is_zero(x) {
                let s = self.ring.size(x);
                if s < best.1 || self.ring.is_zero(self.a.get(best.0 .0, best.0 .1)) {
                    best = ((t, j), s);
                }
            }
        }
        best.0
    }

    /// An entry of the trailing block not divisible by the pivot, if any.
    fn non_divisible(&self, t: usize) -> Option<usize> {
        let pivot = self.a.get(t, t);
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.ring.divides(pivot, self.a.get(i, j)) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form of `m` over `ring`.
///
/// Pivots on the entry of least Euclidean size and enforces the divisibility
/// chain as it goes, so the diagonal comes out already ordered.
pub fn smith<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Snf<R::Elem> {
    let (rows, cols) = m.shape();
    let mut w = Work {
        ring,
        a: m.clone(),
        u: Matrix::identity(ring, rows),
        u_inv: Matrix::identity(ring, rows),
        v: Matrix::identity(ring, cols),
        v_inv: Matrix::identity(ring, cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.smallest_in_block(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if !w.clear_cross(t) {
                let (i, j) = w.smallest_in_cross(t);
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            if let Some(i) = w.non_divisible(t) {
                let one = ring.one();
                w.row_add(t, i, &one);
                continue;
            }
            break;
        }
        let (unit, unit_inv) = ring.normalizing_unit(w.a.get(t, t));
        w.scale_row(t, &unit, &unit_inv);
        t += 1;
    }
    let diagonal: Vec<R::Elem> = (0..rows.min(cols)).map(|i| w.a.get(i, i).clone()).collect();
    Snf {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        diagonal,
        rank: t,
    }
}

/// Integer Smith normal form with `D` as a full matrix.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

/// Smith normal form of an integer matrix: `U * M * V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let snf = smith(&Integers, m);
    let d = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        if i == j {
            snf.diagonal[i].clone()
        } else {
            BigInt::from(0)
        }
    });
    SnfResult {
        invariant_factors: snf.invariant_factors().to_vec(),
        u: snf.u,
        d,
        v: snf.v,
    }
}
