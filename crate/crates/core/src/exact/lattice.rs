//! Submodules of `R^n` and their quotients, with explicit coordinates.
//!
//! For the integers these are lattices and finitely generated abelian groups;
//! for a field they are subspaces and quotient spaces. The same code serves
//! image classes, homology groups and the subquotients used to cross-check
//! type B diagrams.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::ring::{EuclideanRing, Integers};
use super::snf::smith;
use crate::error::{Error, Result};

/// The quotient `L / B` of two submodules `B ⊆ L ⊆ R^n`, each given by
/// generating columns.
///
/// The quotient is presented on generators `g_1 .. g_t, g_{t+1} .. g_{t+f}`:
/// the first `t` are torsion generators with orders `d_1 | ... | d_t` (non-units),
/// the remaining `f` are free.
#[derive(Debug, Clone)]
pub struct Subquotient<R: EuclideanRing> {
    ring: R,
    ambient: usize,
    /// `U` from the Smith form of the generators of `L`.
    l_u: Matrix<R::Elem>,
    /// Nonzero invariant factors of the generators of `L`.
    l_diag: Vec<R::Elem>,
    /// Basis of `L`, one column per basis vector.
    basis: Matrix<R::Elem>,
    /// Change of coordinates on `L` diagonalizing the relations.
    p: Matrix<R::Elem>,
    p_inv: Matrix<R::Elem>,
    /// Coordinates (after `p`) that survive in the quotient, torsion first.
    kept: Vec<usize>,
    /// Order of each kept generator; zero for free generators.
    orders: Vec<R::Elem>,
}

impl<R: EuclideanRing + Clone> Subquotient<R> {
    /// Builds `L / B`. Fails with [`Error::Containment`] naming the first
    /// column of `b_gens` that does not lie in `L`.
    pub fn new(ring: &R, l_gens: &Matrix<R::Elem>, b_gens: &Matrix<R::Elem>) -> Result<Self> {
        let n = l_gens.rows();
        if b_gens.rows() != n {
            return Err(Error::Mismatch(format!(
                "generators live in dimensions {} and {}",
                n,
                b_gens.rows()
            )));
        }
        let s = smith(ring, l_gens);
        let r = s.rank;
        let l_diag: Vec<R::Elem> = s.invariant_factors().to_vec();
        let basis = Matrix::from_fn(n, r, |i, k| ring.mul(s.u_inv.get(i, k), &l_diag[k]));
        let mut this = Subquotient {
            ring: ring.clone(),
            ambient: n,
            l_u: s.u,
            l_diag,
            basis,
            p: Matrix::identity(ring, r),
            p_inv: Matrix::identity(ring, r),
            kept: Vec::new(),
            orders: Vec::new(),
        };
        let mut coords = Vec::with_capacity(b_gens.cols());
        for (index, col) in b_gens.columns().into_iter().enumerate() {
            coords.push(
                this.lattice_coordinates(&col)
                    .ok_or(Error::Containment { index })?,
            );
        }
        let c = Matrix::from_columns(r, &coords);
        let cs = smith(ring, &c);
        let one = ring.one();
        for k in 0..cs.rank {
            let d = &cs.diagonal[k];
            if !ring.divides(d, &one) {
                this.kept.push(k);
                this.orders.push(d.clone());
            }
        }
        for k in cs.rank..r {
            this.kept.push(k);
            this.orders.push(ring.zero());
        }
        this.p = cs.u;
        this.p_inv = cs.u_inv;
        Ok(this)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Rank of `L` as a free module.
    pub fn lattice_rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis of `L` as columns.
    pub fn lattice_basis(&self) -> &Matrix<R::Elem> {
        &self.basis
    }

    /// Coordinates of `v` in the basis of `L`, or `None` if `v ∉ L`.
    pub fn lattice_coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let ring = &self.ring;
        let y = self.l_u.mul_vec(ring, v);
        let r = self.l_diag.len();
        if y[r..].iter().any(|x| !ring.is_zero(x)) {
            return None;
        }
        let mut c = Vec::with_capacity(r);
        for (yk, dk) in y[..r].iter().zip(&self.l_diag) {
            let (q, rem) = ring.div_rem(yk, dk);
            if !ring.is_zero(&rem) {
                return None;
            }
            c.push(q);
        }
        Some(c)
    }

    pub fn contains(&self, v: &[R::Elem]) -> bool {
        self.lattice_coordinates(v).is_some()
    }

    /// Number of torsion generators of the quotient.
    pub fn torsion_count(&self) -> usize {
        self.orders.iter().filter(|d| !self.ring.is_zero(d)).count()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.len() - self.torsion_count()
    }

    /// Orders of the torsion generators, in divisibility order.
    pub fn torsion(&self) -> Vec<R::Elem> {
        self.orders[..self.torsion_count()].to_vec()
    }

    /// Orders of all generators (zero for free ones).
    pub fn orders(&self) -> &[R::Elem] {
        &self.orders
    }

    /// Number of generators of the quotient.
    pub fn generator_count(&self) -> usize {
        self.kept.len()
    }

    /// Representatives in `R^n` of the quotient generators.
    pub fn generators(&self) -> Vec<Vec<R::Elem>> {
        let ring = &self.ring;
        self.kept
            .iter()
            .map(|&k| {
                let in_l = self.p_inv.column(k);
                self.basis.mul_vec(ring, &in_l)
            })
            .collect()
    }

    /// Coordinates of the class of `v ∈ L` on the quotient generators, torsion
    /// coordinates reduced modulo their orders. `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let ring = &self.ring;
        let c = self.lattice_coordinates(v)?;
        let y = self.p.mul_vec(ring, &c);
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&k, d)| {
                    if ring.is_zero(d) {
                        y[k].clone()
                    } else {
                        ring.div_rem(&y[k], d).1
                    }
                })
                .collect(),
        )
    }
}

/// Basis (as columns) of the kernel `{x : M x = 0}`.
pub fn kernel<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let s = smith(ring, m);
    s.v.column_slice(s.rank..m.cols())
}

/// Generators of `{x : M x ∈ col(rel)}`.
pub fn preimage<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    rel: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let k = kernel(ring, &m.hcat(rel));
    Matrix::from_fn(m.cols(), k.cols(), |i, j| k.get(i, j).clone())
}

/// Generators of `col(a) ∩ col(b)`.
pub fn intersection<R: EuclideanRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let k = preimage(ring, a, b);
    a.mul(ring, &k)
}

/// Rank of a matrix over a Euclidean ring.
pub fn rank<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    smith(ring, m).rank
}

/// Free rank and torsion invariant factors of `L / B` for lattices
/// `B ⊆ L ⊆ Z^n` given by generating columns.
pub fn quotient_invariants(l_gens: &IntMatrix, b_gens: &IntMatrix) -> Result<(usize, Vec<BigInt>)> {
    let q = Subquotient::new(&Integers, l_gens, b_gens)?;
    Ok((q.free_rank(), q.torsion()))
}
