use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::iso::{Indecomposable, IsoClass};
use super::CategoryId;
use crate::error::{Error, Result};
use crate::exact::{
    factorize, jordan_type, smith, Field, FieldMatrix, IntMatrix, Integers, Matrix, Rational,
};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with `2 ≤ d_1 | d_2 | ... | d_t`.
///
/// Generators are ordered torsion first, then free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbGroup {
    /// Canonical group `Z^free_rank ⊕ ⨁ Z/n` for arbitrary cyclic orders `n`.
    /// Orders of `1` contribute nothing, orders of `0` contribute a free summand.
    pub fn new(free_rank: usize, cyclic_orders: &[BigInt]) -> Self {
        let extra_free = cyclic_orders.iter().filter(|n| n.is_zero()).count();
        let nonzero: Vec<&BigInt> = cyclic_orders.iter().filter(|n| !n.is_zero()).collect();
        let k = nonzero.len();
        let diag = Matrix::from_fn(k, k, |i, j| {
            if i == j {
                nonzero[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let snf = smith(&Integers, &diag);
        let torsion = snf
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        AbGroup {
            free_rank: free_rank + extra_free,
            torsion,
        }
    }

    /// Builds a group from invariant factors that must already be canonical.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if torsion.iter().any(|d| *d < two) {
            return Err(Error::InvalidObject(
                "invariant factors must be at least 2".into(),
            ));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::InvalidObject(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(AbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: i64) -> Self {
        AbGroup::new(0, &[BigInt::from(n)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of each generator; zero marks a free generator.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    /// Relation lattice as columns `d_i e_i`, one per torsion generator.
    pub fn relations(&self) -> IntMatrix {
        let n = self.generator_count();
        let t = self.torsion.len();
        Matrix::from_fn(n, t, |i, j| {
            if i == j {
                self.torsion[j].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        AbGroup::new(self.free_rank + other.free_rank, &orders)
    }

    /// Primary decomposition: one `Z/p^m` per prime-power factor of each invariant factor.
    pub fn primary_parts(&self) -> Vec<(BigInt, u32)> {
        let mut parts: Vec<(BigInt, u32)> = self.torsion.iter().flat_map(factorize).collect();
        parts.sort();
        parts
    }
}

/// An object of one of the five categories, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Obj {
    /// A finite set with this many elements.
    FinSet(usize),
    Vect {
        field: Field,
        dim: usize,
    },
    Ab(AbGroup),
    /// A finite abelian group; free rank is always zero.
    FinAb(AbGroup),
    /// A vector space with an endomorphism.
    RepN {
        field: Field,
        matrix: FieldMatrix,
    },
}

impl Obj {
    pub fn finset(n: usize) -> Self {
        Obj::FinSet(n)
    }

    pub fn vect(field: &Field, dim: usize) -> Self {
        Obj::Vect {
            field: field.clone(),
            dim,
        }
    }

    pub fn ab(group: AbGroup) -> Self {
        Obj::Ab(group)
    }

    pub fn finab(group: AbGroup) -> Result<Self> {
        if group.free_rank() > 0 {
            return Err(Error::InvalidObject(
                "finite abelian groups have free rank zero".into(),
            ));
        }
        Ok(Obj::FinAb(group))
    }

    /// A representation given by a square matrix with entries already in `field`.
    pub fn repn(field: &Field, matrix: FieldMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidObject(format!(
                "representation matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        for x in matrix.entries() {
            if &field.element(x)? != x {
                return Err(Error::InvalidObject(format!(
                    "entry {x} is not a canonical element of {field}"
                )));
            }
        }
        Ok(Obj::RepN {
            field: field.clone(),
            matrix,
        })
    }

    /// The monoidal unit `e`: empty set, zero space, trivial group, `0x0` matrix.
    pub fn identity_object(category: &CategoryId) -> Self {
        match category {
            CategoryId::FinSet => Obj::FinSet(0),
            CategoryId::Vect(f) => Obj::vect(f, 0),
            CategoryId::Ab => Obj::Ab(AbGroup::trivial()),
            CategoryId::FinAb => Obj::FinAb(AbGroup::trivial()),
            CategoryId::RepN(f) => Obj::RepN {
                field: f.clone(),
                matrix: Matrix::zeros(f, 0, 0),
            },
        }
    }

    pub fn category(&self) -> CategoryId {
        match self {
            Obj::FinSet(_) => CategoryId::FinSet,
            Obj::Vect { field, .. } => CategoryId::Vect(field.clone()),
            Obj::Ab(_) => CategoryId::Ab,
            Obj::FinAb(_) => CategoryId::FinAb,
            Obj::RepN { field, .. } => CategoryId::RepN(field.clone()),
        }
    }

    pub fn is_identity_object(&self) -> bool {
        *self == Obj::identity_object(&self.category())
    }

    /// Number of generators: elements, dimension, or group generators.
    pub fn generator_count(&self) -> usize {
        match self {
            Obj::FinSet(n) => *n,
            Obj::Vect { dim, .. } => *dim,
            Obj::Ab(g) | Obj::FinAb(g) => g.generator_count(),
            Obj::RepN { matrix, .. } => matrix.rows(),
        }
    }

    pub(crate) fn group(&self) -> Option<&AbGroup> {
        match self {
            Obj::Ab(g) | Obj::FinAb(g) => Some(g),
            _ => None,
        }
    }

    /// Monoidal sum: disjoint union or direct sum.
    pub fn direct_sum(&self, other: &Obj) -> Result<Obj> {
        if self.category() != other.category() {
            return Err(Error::Mismatch(format!(
                "direct sum of {} and {} objects",
                self.category(),
                other.category()
            )));
        }
        Ok(match (self, other) {
            (Obj::FinSet(a), Obj::FinSet(b)) => Obj::FinSet(a + b),
            (Obj::Vect { field, dim: a }, Obj::Vect { dim: b, .. }) => Obj::vect(field, a + b),
            (Obj::Ab(a), Obj::Ab(b)) => Obj::Ab(a.direct_sum(b)),
            (Obj::FinAb(a), Obj::FinAb(b)) => Obj::FinAb(a.direct_sum(b)),
            (Obj::RepN { field, matrix: a }, Obj::RepN { matrix: b, .. }) => Obj::RepN {
                field: field.clone(),
                matrix: a.block_diag(b, Rational::zero()),
            },
            _ => unreachable!("categories already compared"),
        })
    }

    /// Decomposition into indecomposables.
    pub fn iso_class(&self) -> Result<IsoClass> {
        let category = self.category();
        let mut parts: Vec<Indecomposable> = Vec::new();
        match self {
            Obj::FinSet(n) => parts.extend(std::iter::repeat_n(Indecomposable::Point, *n)),
            Obj::Vect { dim, .. } => parts.extend(std::iter::repeat_n(Indecomposable::Line, *dim)),
            Obj::Ab(g) | Obj::FinAb(g) => {
                parts.extend(std::iter::repeat_n(Indecomposable::Free, g.free_rank()));
                for (p, m) in g.primary_parts() {
                    parts.push(Indecomposable::Cyclic {
                        prime: p,
                        exponent: m,
                    });
                }
            }
            Obj::RepN { field, matrix } => {
                for (eigenvalue, size) in jordan_type(field, matrix)? {
                    parts.push(Indecomposable::Jordan { eigenvalue, size });
                }
            }
        }
        Ok(IsoClass::from_parts(category, parts))
    }
}
