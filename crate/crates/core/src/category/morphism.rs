use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::object::{AbGroup, Obj};
use super::CategoryId;
use crate::error::{Error, Result};
use crate::exact::{
    field_inverse, field_rank, EuclideanRing, Field, FieldMatrix, IntMatrix, Integers, Matrix,
    Subquotient,
};

/// Data of a morphism on the fixed generators of its source and target.
///
/// Matrices are `target × source`: column `j` is the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    /// FinSet: `table[x]` is the image of element `x`.
    Table(Vec<usize>),
    /// Vect and RepN.
    Linear(FieldMatrix),
    /// Ab and FinAb, entries reduced modulo the target's torsion orders.
    Integer(IntMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mor {
    source: Obj,
    target: Obj,
    payload: Payload,
}

fn reduce_rows(target: &AbGroup, m: &IntMatrix) -> IntMatrix {
    let t = target.torsion();
    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        if i < t.len() {
            m.get(i, j).mod_floor(&t[i])
        } else {
            m.get(i, j).clone()
        }
    })
}

impl Mor {
    /// Validates `payload` against `source` and `target`.
    pub fn new(source: Obj, target: Obj, payload: Payload) -> Result<Self> {
        let category = source.category();
        if category != target.category() {
            return Err(Error::Mismatch(format!(
                "morphism from {} to {}",
                category,
                target.category()
            )));
        }
        let (n_src, n_tgt) = (source.generator_count(), target.generator_count());
        let payload = match (&source, &target, payload) {
            (Obj::FinSet(_), Obj::FinSet(m), Payload::Table(table)) => {
                if table.len() != n_src {
                    return Err(Error::InvalidMorphism(format!(
                        "table has {} entries for a set of {} elements",
                        table.len(),
                        n_src
                    )));
                }
                if let Some(x) = table.iter().find(|&&x| x >= *m) {
                    return Err(Error::InvalidMorphism(format!(
                        "value {x} outside a target of {m} elements"
                    )));
                }
                Payload::Table(table)
            }
            (Obj::Vect { field, .. }, _, Payload::Linear(m))
            | (Obj::RepN { field, .. }, _, Payload::Linear(m)) => {
                if m.shape() != (n_tgt, n_src) {
                    return Err(Error::InvalidMorphism(format!(
                        "matrix is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        n_tgt,
                        n_src
                    )));
                }
                let mut reduced = m.clone();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        reduced.set(i, j, field.element(m.get(i, j))?);
                    }
                }
                if let (Obj::RepN { matrix: a, .. }, Obj::RepN { matrix: b, .. }) =
                    (&source, &target)
                {
                    if reduced.mul(field, a) != b.mul(field, &reduced) {
                        return Err(Error::InvalidMorphism(
                            "matrix does not intertwine the endomorphisms".into(),
                        ));
                    }
                }
                Payload::Linear(reduced)
            }
            (Obj::Ab(s), Obj::Ab(t), Payload::Integer(m))
            | (Obj::FinAb(s), Obj::FinAb(t), Payload::Integer(m)) => {
                if m.shape() != (n_tgt, n_src) {
                    return Err(Error::InvalidMorphism(format!(
                        "matrix is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        n_tgt,
                        n_src
                    )));
                }
                let m = reduce_rows(t, &m);
                check_relations(s, t, &m)?;
                Payload::Integer(m)
            }
            _ => {
                return Err(Error::InvalidMorphism(format!(
                    "payload does not match category {category}"
                )))
            }
        };
        Ok(Mor {
            source,
            target,
            payload,
        })
    }

    /// FinSet map from `table.len()` elements to `target` elements.
    pub fn table(target: usize, table: Vec<usize>) -> Result<Self> {
        Mor::new(
            Obj::FinSet(table.len()),
            Obj::FinSet(target),
            Payload::Table(table),
        )
    }

    /// Linear map between coordinate spaces, given as a `target × source` matrix.
    pub fn linear(field: &Field, matrix: FieldMatrix) -> Result<Self> {
        Mor::new(
            Obj::vect(field, matrix.cols()),
            Obj::vect(field, matrix.rows()),
            Payload::Linear(matrix),
        )
    }

    /// Homomorphism of abelian groups (Ab, or FinAb when both are finite objects).
    pub fn integer(source: Obj, target: Obj, matrix: IntMatrix) -> Result<Self> {
        Mor::new(source, target, Payload::Integer(matrix))
    }

    pub fn identity(obj: &Obj) -> Self {
        let n = obj.generator_count();
        let payload = match obj {
            Obj::FinSet(_) => Payload::Table((0..n).collect()),
            Obj::Vect { field, .. } | Obj::RepN { field, .. } => {
                Payload::Linear(Matrix::identity(field, n))
            }
            Obj::Ab(_) | Obj::FinAb(_) => Payload::Integer(Matrix::identity(&Integers, n)),
        };
        Mor {
            source: obj.clone(),
            target: obj.clone(),
            payload,
        }
    }

    /// The unique morphism out of the identity object.
    pub fn from_identity(target: &Obj) -> Self {
        let n = target.generator_count();
        let payload = match target {
            Obj::FinSet(_) => Payload::Table(Vec::new()),
            Obj::Vect { field, .. } | Obj::RepN { field, .. } => {
                Payload::Linear(Matrix::zeros(field, n, 0))
            }
            Obj::Ab(_) | Obj::FinAb(_) => Payload::Integer(Matrix::zeros(&Integers, n, 0)),
        };
        Mor {
            source: Obj::identity_object(&target.category()),
            target: target.clone(),
            payload,
        }
    }

    /// Zero morphism; in FinSet only defined out of the empty set.
    pub fn zero(source: &Obj, target: &Obj) -> Result<Self> {
        let (n, m) = (source.generator_count(), target.generator_count());
        let payload = match source {
            Obj::FinSet(_) if n == 0 => Payload::Table(Vec::new()),
            Obj::FinSet(_) => {
                return Err(Error::InvalidMorphism(
                    "FinSet has no zero morphism out of a nonempty set".into(),
                ))
            }
            Obj::Vect { field, .. } | Obj::RepN { field, .. } => {
                Payload::Linear(Matrix::zeros(field, m, n))
            }
            Obj::Ab(_) | Obj::FinAb(_) => Payload::Integer(Matrix::zeros(&Integers, m, n)),
        };
        Mor::new(source.clone(), target.clone(), payload)
    }

    pub fn source(&self) -> &Obj {
        &self.source
    }

    pub fn target(&self) -> &Obj {
        &self.target
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn category(&self) -> CategoryId {
        self.source.category()
    }

    /// Field matrix of a Vect or RepN morphism.
    pub fn field_matrix(&self) -> Option<&FieldMatrix> {
        match &self.payload {
            Payload::Linear(m) => Some(m),
            _ => None,
        }
    }

    /// Integer matrix of an Ab or FinAb morphism.
    pub fn int_matrix(&self) -> Option<&IntMatrix> {
        match &self.payload {
            Payload::Integer(m) => Some(m),
            _ => None,
        }
    }

    /// Composite `self ∘ f`.
    pub fn compose(&self, f: &Mor) -> Result<Mor> {
        if f.target != self.source {
            return Err(Error::Mismatch(
                "target of the first morphism is not the source of the second".into(),
            ));
        }
        let payload = match (&self.payload, &f.payload) {
            (Payload::Table(g), Payload::Table(h)) => {
                Payload::Table(h.iter().map(|&x| g[x]).collect())
            }
            (Payload::Linear(g), Payload::Linear(h)) => {
                let field = self
                    .source
                    .category()
                    .field()
                    .cloned()
                    .expect("linear category");
                Payload::Linear(g.mul(&field, h))
            }
            (Payload::Integer(g), Payload::Integer(h)) => {
                let t = self.target.group().expect("group target");
                Payload::Integer(reduce_rows(t, &g.mul(&Integers, h)))
            }
            _ => unreachable!("objects already compared"),
        };
        Ok(Mor {
            source: f.source.clone(),
            target: self.target.clone(),
            payload,
        })
    }

    /// The image object of the epi-mono factorization.
    pub fn image(&self) -> Result<Obj> {
        match (&self.payload, &self.target) {
            (Payload::Table(t), _) => {
                let mut seen: Vec<usize> = t.clone();
                seen.sort_unstable();
                seen.dedup();
                Ok(Obj::FinSet(seen.len()))
            }
            (Payload::Linear(m), Obj::Vect { field, .. }) => {
                Ok(Obj::vect(field, field_rank(field, m)))
            }
            (Payload::Linear(m), Obj::RepN { field, matrix }) => {
                let (_, a) = image_representation(field, m, matrix);
                Obj::repn(field, a)
            }
            (Payload::Integer(m), Obj::Ab(t)) => Ok(Obj::Ab(image_group(t, m))),
            (Payload::Integer(m), Obj::FinAb(t)) => Obj::finab(image_group(t, m)),
            _ => unreachable!("payload validated at construction"),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        match &self.payload {
            Payload::Table(t) => {
                let n = self.target.generator_count();
                if t.len() != n {
                    return false;
                }
                let mut hit = vec![false; n];
                t.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
            }
            Payload::Linear(m) => {
                let field = self
                    .source
                    .category()
                    .field()
                    .cloned()
                    .expect("linear category");
                m.rows() == m.cols() && field_rank(&field, m) == m.rows()
            }
            Payload::Integer(m) => {
                let s = self.source.group().expect("group source");
                let t = self.target.group().expect("group target");
                if image_group(t, m) != *s {
                    return false;
                }
                let rel = t.relations();
                let span = m.hcat(&rel);
                let id = Matrix::identity(&Integers, t.generator_count());
                let coker = Subquotient::new(&Integers, &id, &span).expect("span lies in Z^n");
                coker.generator_count() == 0
            }
        }
    }

    /// Direct sum `f ⊕ g : A ⊕ C → B ⊕ D` in canonical coordinates.
    pub fn direct_sum(&self, other: &Mor) -> Result<Mor> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Table(f), Payload::Table(g)) => {
                let offset = self.target.generator_count();
                Payload::Table(
                    f.iter()
                        .copied()
                        .chain(g.iter().map(|x| x + offset))
                        .collect(),
                )
            }
            (Payload::Linear(f), Payload::Linear(g)) => {
                Payload::Linear(f.block_diag(g, Field::Rationals.zero()))
            }
            (Payload::Integer(f), Payload::Integer(g)) => {
                let (s1, s2) = (self.source.group().unwrap(), other.source.group().unwrap());
                let (t1, t2) = (self.target.group().unwrap(), other.target.group().unwrap());
                let (_, from_canonical) = sum_coordinates(s1, s2);
                let (to_canonical, _) = sum_coordinates(t1, t2);
                let block = f.block_diag(g, BigInt::zero());
                Payload::Integer(
                    to_canonical.mul(&Integers, &block.mul(&Integers, &from_canonical)),
                )
            }
            _ => unreachable!("categories already compared"),
        };
        Mor::new(source, target, payload)
    }
}

/// Checks that every relation of `s` maps into the relations of `t`.
fn check_relations(s: &AbGroup, t: &AbGroup, m: &IntMatrix) -> Result<()> {
    let tt = t.torsion();
    for (j, d) in s.torsion().iter().enumerate() {
        for i in 0..m.rows() {
            let v = d * m.get(i, j);
            let ok = if i < tt.len() {
                v.is_multiple_of(&tt[i])
            } else {
                v.is_zero()
            };
            if !ok {
                return Err(Error::InvalidMorphism(format!(
                    "generator {j} of order {d} is sent to an element of larger order"
                )));
            }
        }
    }
    Ok(())
}

/// Image of `m` in `t` as the subquotient `(col m + R_t) / R_t`.
fn image_group(t: &AbGroup, m: &IntMatrix) -> AbGroup {
    let rel = t.relations();
    let q = Subquotient::new(&Integers, &m.hcat(&rel), &rel).expect("relations lie in the span");
    let torsion: Vec<BigInt> = q.torsion().into_iter().map(|d| d.abs()).collect();
    AbGroup::from_invariants(q.free_rank(), torsion).expect("Smith form is canonical")
}

/// Basis of the image subspace (as columns) and the restricted endomorphism.
pub(crate) fn image_representation(
    field: &Field,
    m: &FieldMatrix,
    a: &FieldMatrix,
) -> (FieldMatrix, FieldMatrix) {
    let zero = Matrix::zeros(field, m.rows(), 0);
    let q = Subquotient::new(field, m, &zero).expect("zero lies in every subspace");
    let basis = q.generators();
    let r = basis.len();
    let mut restricted = Matrix::zeros(field, r, r);
    for (k, w) in basis.iter().enumerate() {
        let aw = a.mul_vec(field, w);
        let c = q.coordinates(&aw).expect("image is invariant");
        for (i, x) in c.into_iter().enumerate() {
            restricted.set(i, k, x);
        }
    }
    (Matrix::from_columns(m.rows(), &basis), restricted)
}

/// Coordinate changes between the block presentation `a ⊕ b` (generators of
/// `a` then of `b`) and the canonical generators of the direct sum.
///
/// Returns `(to_canonical, from_canonical)`.
pub(crate) fn sum_coordinates(a: &AbGroup, b: &AbGroup) -> (IntMatrix, IntMatrix) {
    let n = a.generator_count() + b.generator_count();
    let rel = a.relations().block_diag(&b.relations(), BigInt::zero());
    let id = Matrix::identity(&Integers, n);
    let q = Subquotient::new(&Integers, &id, &rel).expect("relations lie in Z^n");
    let to_canonical = {
        let cols: Vec<Vec<BigInt>> = (0..n)
            .map(|k| q.coordinates(&id.column(k)).expect("in Z^n"))
            .collect();
        Matrix::from_columns(q.generator_count(), &cols)
    };
    let from_canonical = Matrix::from_columns(n, &q.generators());
    (to_canonical, from_canonical)
}

/// Invertible matrix check over a field, used by tests and backends.
#[allow(dead_code)]
pub(crate) fn is_invertible(field: &Field, m: &FieldMatrix) -> bool {
    m.rows() == m.cols() && field_inverse(field, m).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{image_iso_class, Indecomposable, IsoClass};
    use crate::exact::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn zmat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn integer_composition() {
        let z = Obj::ab(AbGroup::free(1));
        let two = Mor::integer(z.clone(), z.clone(), zmat(&[&[2]])).unwrap();
        let three = Mor::integer(z.clone(), z.clone(), zmat(&[&[3]])).unwrap();
        let six = two.compose(&three).unwrap();
        assert_eq!(six.int_matrix().unwrap(), &zmat(&[&[6]]));
        assert_eq!(Mor::identity(&z).compose(&six).unwrap(), six);
    }

    #[test]
    fn constant_finset_map() {
        let c = Mor::table(3, vec![1, 1]).unwrap();
        let f = Mor::table(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(
            c.compose(&f).unwrap().payload(),
            &Payload::Table(vec![1; 4])
        );
    }

    #[test]
    fn doubling_z2_into_z4() {
        let s = Obj::finab(AbGroup::cyclic(2)).unwrap();
        let t = Obj::finab(AbGroup::cyclic(4)).unwrap();
        let f = Mor::integer(s, t, zmat(&[&[2]])).unwrap();
        let expected = IsoClass::from_parts(
            CategoryId::FinAb,
            [Indecomposable::Cyclic {
                prime: 2.into(),
                exponent: 1,
            }],
        );
        assert_eq!(image_iso_class(&f).unwrap(), expected);
        assert!(!f.is_isomorphism());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let s = Obj::finab(AbGroup::cyclic(2)).unwrap();
        let t = Obj::finab(AbGroup::cyclic(4)).unwrap();
        assert!(Mor::integer(s, t, zmat(&[&[1]])).is_err());
        let z = Obj::ab(AbGroup::free(1));
        let z2 = Obj::ab(AbGroup::cyclic(2));
        assert!(Mor::integer(z2, z, zmat(&[&[1]])).is_err());
    }

    #[test]
    fn identity_on_free_group() {
        let z2 = Obj::ab(AbGroup::free(2));
        let id = Mor::identity(&z2);
        assert!(id.is_isomorphism());
        assert_eq!(id.image().unwrap(), z2);
        let two = Mor::integer(z2.clone(), z2, zmat(&[&[2, 0], &[0, 1]])).unwrap();
        assert!(!two.is_isomorphism());
    }

    #[test]
    fn unimodular_change_of_basis_is_iso() {
        let z2 = Obj::ab(AbGroup::free(2));
        let f = Mor::integer(z2.clone(), z2, zmat(&[&[2, 1], &[1, 1]])).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn bijections() {
        assert!(Mor::table(3, vec![2, 0, 1]).unwrap().is_isomorphism());
        assert!(!Mor::table(3, vec![2, 0, 0]).unwrap().is_isomorphism());
    }

    #[test]
    fn repn_image_of_first_coordinate() {
        let f = Field::Rationals;
        let lambda = q(5);
        let src = Obj::repn(&f, Matrix::from_rows(vec![vec![lambda.clone()]])).unwrap();
        let tgt = Obj::repn(
            &f,
            Matrix::from_rows(vec![vec![lambda.clone(), q(1)], vec![q(0), lambda.clone()]]),
        )
        .unwrap();
        let m = Mor::new(
            src,
            tgt,
            Payload::Linear(Matrix::from_rows(vec![vec![q(1)], vec![q(0)]])),
        )
        .unwrap();
        let expected = IsoClass::from_parts(
            CategoryId::RepN(f),
            [Indecomposable::Jordan {
                eigenvalue: lambda,
                size: 1,
            }],
        );
        assert_eq!(image_iso_class(&m).unwrap(), expected);
    }

    #[test]
    fn repn_intertwining_enforced() {
        let f = Field::Rationals;
        let src = Obj::repn(&f, Matrix::from_rows(vec![vec![q(1)]])).unwrap();
        let tgt = Obj::repn(&f, Matrix::from_rows(vec![vec![q(2)]])).unwrap();
        assert!(Mor::new(
            src,
            tgt,
            Payload::Linear(Matrix::from_rows(vec![vec![q(1)]]))
        )
        .is_err());
    }

    #[test]
    fn direct_sum_of_group_maps() {
        let z2 = Obj::finab(AbGroup::cyclic(2)).unwrap();
        let z3 = Obj::finab(AbGroup::cyclic(3)).unwrap();
        let f = Mor::identity(&z2);
        let g = Mor::integer(z3.clone(), z3, zmat(&[&[2]])).unwrap();
        let h = f.direct_sum(&g).unwrap();
        assert_eq!(h.source(), &Obj::finab(AbGroup::cyclic(6)).unwrap());
        assert!(h.is_isomorphism());
        let zero = Mor::zero(f.source(), f.source()).unwrap();
        let k = zero.direct_sum(&g).unwrap();
        assert_eq!(k.image().unwrap(), Obj::finab(AbGroup::cyclic(3)).unwrap());
    }
}
