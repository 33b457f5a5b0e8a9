//! Persistent homology of sublevel filtrations with exact coefficients.

mod complex;

pub use complex::{parse_filtration, perturb, perturb_with_resolution, FilteredComplex};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::category::{AbGroup, CategoryId, Mor, Obj, Payload};
use crate::error::{Error, Result};
use crate::exact::{
    kernel, preimage, EuclideanRing, Field, IntMatrix, Integers, Matrix, Rational, Subquotient,
};
use crate::module::{segment_index, ConstructibleModule, InterleavingPair};

/// Coefficients of homology.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Field(Field),
    /// `Z/m`, `m ≥ 2`.
    Modular(u64),
}

impl Coefficients {
    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "Z/{m} coefficients need m ≥ 2"
            )));
        }
        Ok(Coefficients::Modular(m))
    }

    /// Category the homology groups live in.
    pub fn category(&self) -> CategoryId {
        match self {
            Coefficients::Integers => CategoryId::Ab,
            Coefficients::Field(f) => CategoryId::Vect(f.clone()),
            Coefficients::Modular(_) => CategoryId::FinAb,
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// `Z`, `Q`, `Fp:<p>` or `Zm:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown coefficients `{s}`"));
        match s {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Field(Field::Rationals)),
            _ => {
                if let Some(p) = s.strip_prefix("Fp:") {
                    Ok(Coefficients::Field(Field::prime(
                        p.parse().map_err(|_| bad())?,
                    )?))
                } else if let Some(m) = s.strip_prefix("Zm:") {
                    Coefficients::modular(m.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Field(k) => write!(f, "{}", k.tag()),
            Coefficients::Modular(m) => write!(f, "Zm:{m}"),
        }
    }
}

/// Homology of one subcomplex, with generators as chains of the whole complex.
#[derive(Debug, Clone)]
enum Stage {
    Int(Subquotient<Integers>),
    Field(Subquotient<Field>),
}

/// Embeds columns over the chosen simplices into the full chain group.
fn embed<T: Clone>(zero: T, m: &Matrix<T>, rows: &[usize], n: usize) -> Matrix<T> {
    let mut out = Matrix::filled(n, m.cols(), zero);
    for (r, &i) in rows.iter().enumerate() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(r, j).clone());
        }
    }
    out
}

fn select_columns<T: Clone>(m: &Matrix<T>, cols: &[usize]) -> Matrix<T> {
    Matrix::from_fn(m.rows(), cols.len(), |i, j| m.get(i, cols[j]).clone())
}

fn to_field(field: &Field, m: &IntMatrix) -> Matrix<Rational> {
    m.map(|x| field.from_int(x))
}

/// Boundary matrices `∂_k` and `∂_{k+1}` of the full complex.
struct Chains {
    coeffs: Coefficients,
    d_k: IntMatrix,
    d_k1: IntMatrix,
    /// Position of each simplex within its dimension.
    k_simplices: Vec<usize>,
    k1_simplices: Vec<usize>,
}

impl Chains {
    fn new(complex: &FilteredComplex, degree: usize, coeffs: &Coefficients) -> Self {
        Chains {
            coeffs: coeffs.clone(),
            d_k: complex.boundary(degree),
            d_k1: complex.boundary(degree + 1),
            k_simplices: complex.simplices_of_dim(degree),
            k1_simplices: complex.simplices_of_dim(degree + 1),
        }
    }

    /// Homology of the subcomplex of simplices with `values ≤ r`.
    fn stage(&self, values: &[Rational], r: Option<&Rational>) -> Result<Stage> {
        let keep = |list: &[usize]| -> Vec<usize> {
            (0..list.len())
                .filter(|&c| r.is_some_and(|r| values[list[c]] <= *r))
                .collect()
        };
        let cols_k = keep(&self.k_simplices);
        let cols_k1 = keep(&self.k1_simplices);
        let n = self.k_simplices.len();
        let dk = select_columns(&self.d_k, &cols_k);
        let dk1 = select_columns(&self.d_k1, &cols_k1);
        Ok(match &self.coeffs {
            Coefficients::Integers => {
                let z = kernel(&Integers, &dk);
                let l = embed(BigInt::from(0), &z, &cols_k, n);
                Stage::Int(Subquotient::new(&Integers, &l, &dk1)?)
            }
            Coefficients::Field(f) => {
                let z = kernel(f, &to_field(f, &dk));
                let l = embed(f.zero(), &z, &cols_k, n);
                Stage::Field(Subquotient::new(f, &l, &to_field(f, &dk1))?)
            }
            Coefficients::Modular(m) => {
                let m = BigInt::from(*m);
                let rows = dk.rows();
                let m_rows =
                    Matrix::from_fn(
                        rows,
                        rows,
                        |i, j| {
                            if i == j {
                                m.clone()
                            } else {
                                BigInt::from(0)
                            }
                        },
                    );
                let z = preimage(&Integers, &dk, &m_rows);
                let l = embed(BigInt::from(0), &z, &cols_k, n);
                let mk = Matrix::from_fn(cols_k.len(), cols_k.len(), |i, j| {
                    if i == j {
                        m.clone()
                    } else {
                        BigInt::from(0)
                    }
                });
                let b = dk1.hcat(&embed(BigInt::from(0), &mk, &cols_k, n));
                Stage::Int(Subquotient::new(&Integers, &l, &b)?)
            }
        })
    }
}

impl Stage {
    fn object(&self, coeffs: &Coefficients) -> Result<Obj> {
        match (self, coeffs) {
            (Stage::Field(q), Coefficients::Field(f)) => Ok(Obj::vect(f, q.generator_count())),
            (Stage::Int(q), c) => {
                let torsion: Vec<BigInt> = q.torsion().into_iter().map(|d| d.abs()).collect();
                let g = AbGroup::from_invariants(q.free_rank(), torsion)?;
                match c {
                    Coefficients::Modular(_) => Obj::finab(g),
                    _ => Ok(Obj::ab(g)),
                }
            }
            _ => unreachable!("stage built from these coefficients"),
        }
    }

    /// Matrix of the inclusion-induced map into `other`.
    fn induced(&self, other: &Stage) -> Result<Payload> {
        fn run<R: EuclideanRing + Clone>(
            a: &Subquotient<R>,
            b: &Subquotient<R>,
        ) -> Result<Matrix<R::Elem>> {
            let cols = a
                .generators()
                .iter()
                .map(|g| {
                    b.coordinates(g).ok_or_else(|| {
                        Error::InvalidMorphism("cycle does not survive the inclusion".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(b.generator_count(), &cols))
        }
        match (self, other) {
            (Stage::Int(a), Stage::Int(b)) => Ok(Payload::Integer(run(a, b)?)),
            (Stage::Field(a), Stage::Field(b)) => Ok(Payload::Linear(run(a, b)?)),
            _ => unreachable!("stages share coefficients"),
        }
    }
}

/// Homology in one degree at every critical value of a sublevel filtration.
#[derive(Debug, Clone)]
pub struct SublevelHomology {
    coeffs: Coefficients,
    critical: Vec<Rational>,
    /// `stages[0]` is the empty subcomplex.
    stages: Vec<Stage>,
    objects: Vec<Obj>,
}

impl SublevelHomology {
    pub fn new(complex: &FilteredComplex, degree: usize, coeffs: &Coefficients) -> Result<Self> {
        let chains = Chains::new(complex, degree, coeffs);
        let critical = complex.critical_values();
        let mut stages = vec![chains.stage(complex.values(), None)?];
        for r in &critical {
            stages.push(chains.stage(complex.values(), Some(r))?);
        }
        let objects = stages
            .iter()
            .map(|s| s.object(coeffs))
            .collect::<Result<Vec<_>>>()?;
        Ok(SublevelHomology {
            coeffs: coeffs.clone(),
            critical,
            stages,
            objects,
        })
    }

    pub fn critical(&self) -> &[Rational] {
        &self.critical
    }

    fn segment(&self, r: &Rational) -> usize {
        segment_index(&self.critical, r)
    }

    fn map_between(&self, a: usize, other: &SublevelHomology, b: usize) -> Result<Mor> {
        let payload = self.stages[a].induced(&other.stages[b])?;
        Mor::new(self.objects[a].clone(), other.objects[b].clone(), payload)
    }

    /// The persistence module `r ↦ H_k(K_{≤ r})`.
    pub fn module(&self) -> Result<ConstructibleModule> {
        let maps = (1..self.stages.len())
            .map(|k| self.map_between(k - 1, self, k))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleModule::new(
            self.coeffs.category(),
            self.critical.clone(),
            self.objects.clone(),
            maps,
        )
    }

    /// Map induced by `K_{f ≤ r} ⊆ K_{g ≤ s}`.
    pub fn inclusion(&self, r: &Rational, other: &SublevelHomology, s: &Rational) -> Result<Mor> {
        self.map_between(self.segment(r), other, other.segment(s))
    }
}

/// `r ↦ H_k(K_{≤ r})` for a filtered complex.
pub fn persistent_module(
    complex: &FilteredComplex,
    degree: usize,
    coeffs: &Coefficients,
) -> Result<ConstructibleModule> {
    SublevelHomology::new(complex, degree, coeffs)?.module()
}

/// Interleaving of two sublevel filtrations of the same complex with
/// `|f − g| ≤ ε`, given by the inclusions `K_{f ≤ r} ⊆ K_{g ≤ r + ε}` and back.
pub fn inclusion_interleaving(
    f: &SublevelHomology,
    g: &SublevelHomology,
    epsilon: &Rational,
) -> Result<InterleavingPair> {
    let (mf, mg) = (f.module()?, g.module()?);
    let mut cache: HashMap<(bool, usize, usize), Mor> = HashMap::new();
    let mut phi_at =
        |src: &SublevelHomology, tgt: &SublevelHomology, forward: bool, r: &Rational| {
            let key = (forward, src.segment(r), tgt.segment(&(r + epsilon)));
            if let Some(m) = cache.get(&key) {
                return Ok(m.clone());
            }
            let m = src.map_between(key.1, tgt, key.2)?;
            cache.insert(key, m.clone());
            Ok(m)
        };
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    let gp = crate::module::transfer_grid(&mf, &mg, epsilon);
    for k in 0..=gp.len() {
        phi.push(phi_at(
            f,
            g,
            true,
            &crate::module::segment_representative(&gp, k),
        )?);
    }
    let gq = crate::module::transfer_grid(&mg, &mf, epsilon);
    for k in 0..=gq.len() {
        psi.push(phi_at(
            g,
            f,
            false,
            &crate::module::segment_representative(&gq, k),
        )?);
    }
    Ok(InterleavingPair {
        epsilon: epsilon.clone(),
        phi,
        psi,
    })
}

/// Component number of every vertex of `K_{≤ r}` (`None` if absent), with
/// components numbered in order of their smallest vertex.
pub fn component_labels(complex: &FilteredComplex, r: &Rational) -> Vec<Option<usize>> {
    let vertices = complex.simplices_of_dim(0);
    let n = vertices.len();
    let mut present = vec![false; n];
    for &i in &vertices {
        present[complex.simplices()[i][0]] = complex.values()[i] <= *r;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in complex.simplices_of_dim(1) {
        if complex.values()[e] <= *r {
            let s = &complex.simplices()[e];
            let (a, b) = (find(&mut parent, s[0]), find(&mut parent, s[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut number: HashMap<usize, usize> = HashMap::new();
    (0..n)
        .map(|v| {
            present[v].then(|| {
                let root = find(&mut parent, v);
                let next = number.len();
                *number.entry(root).or_insert(next)
            })
        })
        .collect()
}

/// Map of component sets induced by `K_{≤ r} ⊆ L_{≤ s}`, where both label
/// vectors come from [`component_labels`] over the same vertices.
pub fn component_map(source: &[Option<usize>], target: &[Option<usize>]) -> Result<Mor> {
    let count = |l: &[Option<usize>]| l.iter().flatten().map(|c| c + 1).max().unwrap_or(0);
    let mut table = vec![0; count(source)];
    for (v, c) in source.iter().enumerate() {
        if let Some(c) = c {
            table[*c] = target[v].ok_or_else(|| {
                Error::InvalidMorphism(format!("vertex {v} is missing after the inclusion"))
            })?;
        }
    }
    Mor::table(count(target), table)
}

/// Connected components of sublevel sets as a module in FinSet.
pub fn component_module(complex: &FilteredComplex) -> Result<ConstructibleModule> {
    let critical = complex.critical_values();
    let n = complex.simplices_of_dim(0).len();
    let mut objects = vec![Obj::FinSet(0)];
    let mut maps = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for r in &critical {
        let labels = component_labels(complex, r);
        let m = component_map(&prev, &labels)?;
        objects.push(m.target().clone());
        maps.push(m);
        prev = labels;
    }
    ConstructibleModule::new(CategoryId::FinSet, critical, objects, maps)
}
