//! Ranks over fields and Jordan types of split matrices.

use super::matrix::{FieldMatrix, Matrix};
use super::poly::Poly;
use super::ring::{EuclideanRing, Field, Rational};
use crate::error::{Error, Result};

/// Rank of a matrix over a field, by row reduction.
pub fn field_rank(field: &Field, m: &FieldMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !field.is_zero(a.get(i, col))) else {
            continue;
        };
        a.swap_rows(rank, piv);
        let inv = field.inv(a.get(rank, col)).unwrap();
        for i in rank + 1..rows {
            if field.is_zero(a.get(i, col)) {
                continue;
            }
            let c = field.neg(&field.mul(a.get(i, col), &inv));
            a.row_axpy(field, i, rank, &c);
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p` of a matrix of residues.
pub fn fp_rank(p: u64, m: &FieldMatrix) -> Result<usize> {
    let field = Field::prime(p)?;
    let reduced = reduce_entries(&field, m)?;
    Ok(field_rank(&field, &reduced))
}

/// Maps every entry of a rational matrix into `field`.
pub fn reduce_entries(field: &Field, m: &FieldMatrix) -> Result<FieldMatrix> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, field.element(m.get(i, j))?);
        }
    }
    Ok(out)
}

/// Inverse of a square matrix over a field, if it exists.
pub fn field_inverse(field: &Field, m: &FieldMatrix) -> Option<FieldMatrix> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let mut a = m.clone();
    let mut inv = Matrix::identity(field, n);
    for col in 0..n {
        let piv = (col..n).find(|&i| !field.is_zero(a.get(i, col)))?;
        a.swap_rows(col, piv);
        inv.swap_rows(col, piv);
        let s = field.inv(a.get(col, col)).unwrap();
        a.scale_row(field, col, &s);
        inv.scale_row(field, col, &s);
        for i in 0..n {
            if i == col || field.is_zero(a.get(i, col)) {
                continue;
            }
            let c = field.neg(a.get(i, col));
            a.row_axpy(field, i, col, &c);
            inv.row_axpy(field, i, col, &c);
        }
    }
    Some(inv)
}

/// Multiset of Jordan blocks `(eigenvalue, size)`, sorted.
pub type JordanType = Vec<(Rational, usize)>;

/// Jordan type of a square matrix whose characteristic polynomial splits over `field`.
///
/// The block counts come from the rank sequence `r_k = rank((A - λI)^k)`:
/// there are `r_{k-1} - 2 r_k + r_{k+1}` blocks of size exactly `k`.
pub fn jordan_type(field: &Field, a: &FieldMatrix) -> Result<JordanType> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::InvalidArgument(format!(
            "Jordan type of a non-square {}x{} matrix",
            n,
            a.cols()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let chi = Poly::characteristic(field, a);
    let (roots, rest) = chi.split_roots();
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::NonSplit {
            factor: rest.irreducible_factor().to_string(),
        });
    }
    let mut blocks = Vec::new();
    for (lambda, mult) in roots {
        let shifted = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                field.sub(a.get(i, j), &lambda)
            } else {
                a.get(i, j).clone()
            }
        });
        let mut ranks = vec![n];
        let mut power = Matrix::identity(field, n);
        for _ in 0..=mult {
            power = power.mul(field, &shifted);
            ranks.push(field_rank(field, &power));
        }
        for k in 1..=mult {
            let count = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
            for _ in 0..count {
                blocks.push((lambda.clone(), k));
            }
        }
    }
    blocks.sort();
    Ok(blocks)
}

/// Block-diagonal matrix assembled from a Jordan type.
pub fn jordan_matrix(field: &Field, blocks: &[(Rational, usize)]) -> FieldMatrix {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut m = Matrix::zeros(field, n, n);
    let mut offset = 0;
    for (lambda, size) in blocks {
        for k in 0..*size {
            m.set(offset + k, offset + k, lambda.clone());
            if k + 1 < *size {
                m.set(offset + k, offset + k + 1, field.one());
            }
        }
        offset += size;
    }
    m
}
