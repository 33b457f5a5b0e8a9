//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use persdgm::category::{AbGroup, CategoryId, Mor, Obj};
use persdgm::diagram::{DiagramGrid, Interval, Role};
use persdgm::exact::{
    field_inverse, jordan_matrix, Field, FieldMatrix, IntMatrix, Matrix, Rational,
};
use persdgm::grothendieck::{BasisKey, GroupElem, GroupTag};
use persdgm::homology::FilteredComplex;
use persdgm::module::ConstructibleModule;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Between 1 and `max_len` distinct multiples of `1/2` in `[-8, 8]`, sorted.
pub fn random_grid(rng: &mut impl Rng, max_len: usize) -> Vec<Rational> {
    let len = rng.gen_range(1..=max_len);
    let mut pool: Vec<i64> = (-16..=16).collect();
    pool.shuffle(rng);
    let mut grid: Vec<Rational> = pool[..len].iter().map(|&v| qq(v, 2)).collect();
    grid.sort();
    grid
}

/// Values in `Z^3` on roughly half of the cells.
pub fn random_z3_grid(rng: &mut impl Rng, grid: Vec<Rational>, role: Role) -> DiagramGrid {
    let n = grid.len();
    let mut d = DiagramGrid::new(grid, GroupTag::Free, role).unwrap();
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            if rng.gen_bool(0.5) {
                let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
                d.set(i, j, GroupElem::from_axes(&v)).unwrap();
            }
        }
    }
    d
}

/// A bar `[start, end)` with a multiplicity; `None` is `∞`.
pub type Bar = (Rational, Option<Rational>, i64);

/// Up to `max_bars` distinct bars with integer endpoints in `[0, max_end]`.
pub fn random_bars(rng: &mut impl Rng, max_bars: usize, max_end: i64, allow_inf: bool) -> Vec<Bar> {
    let mut cells: BTreeMap<(i64, Option<i64>), i64> = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=max_bars) {
        let p = rng.gen_range(0..max_end);
        let end = if allow_inf && rng.gen_bool(0.15) {
            None
        } else {
            Some(rng.gen_range(p + 1..=max_end))
        };
        *cells.entry((p, end)).or_default() += rng.gen_range(1..=2);
    }
    cells
        .into_iter()
        .map(|((p, e), m)| (q(p), e.map(q), m))
        .collect()
}

/// Type B diagram over `Vect(Q)` with the given bars.
pub fn bars_diagram(bars: &[Bar]) -> DiagramGrid {
    let support: Vec<_> = bars
        .iter()
        .map(|(p, e, m)| {
            (
                Interval::new(p.clone(), e.clone()).unwrap(),
                GroupElem::from_pairs([(BasisKey::Dimension, *m)]),
            )
        })
        .collect();
    DiagramGrid::from_support(GroupTag::B(CategoryId::Vect(Field::Rationals)), &support).unwrap()
}

/// `n` distinct sorted critical values, multiples of `1/2` in `[0, 10]`.
pub fn random_critical(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut pool: Vec<i64> = (0..=20).collect();
    pool.shuffle(rng);
    let mut c: Vec<Rational> = pool[..n].iter().map(|&v| qq(v, 2)).collect();
    c.sort();
    c
}

/// Cyclic orders whose product is at most 64.
pub fn random_torsion(rng: &mut impl Rng) -> Vec<BigInt> {
    let mut orders = Vec::new();
    let mut product = 1;
    for _ in 0..rng.gen_range(0..=3) {
        let n = rng.gen_range(2..=12i64);
        if product * n > 64 {
            break;
        }
        product *= n;
        orders.push(BigInt::from(n));
    }
    orders
}

pub fn random_group(rng: &mut impl Rng, max_free: usize) -> AbGroup {
    let free = rng.gen_range(0..=max_free);
    AbGroup::new(free, &random_torsion(rng))
}

/// A homomorphism between canonical groups: a generator of order `d` goes to a
/// combination annihilated by `d`.
pub fn random_hom(rng: &mut impl Rng, src: &AbGroup, tgt: &AbGroup) -> IntMatrix {
    let (so, to) = (src.generator_orders(), tgt.generator_orders());
    Matrix::from_fn(to.len(), so.len(), |r, c| {
        let (d, e) = (&so[c], &to[r]);
        let unit = match (d.is_zero(), e.is_zero()) {
            (true, true) => BigInt::one(),
            (false, true) => BigInt::zero(),
            _ => e / d.gcd(e),
        };
        unit * rng.gen_range(-2..=2)
    })
}

/// An Ab (or FinAb when `finite`) module with up to `max_crit` critical values.
pub fn random_group_module(
    rng: &mut impl Rng,
    max_crit: usize,
    finite: bool,
) -> ConstructibleModule {
    let n = rng.gen_range(1..=max_crit);
    let critical = random_critical(rng, n);
    let mut groups = vec![AbGroup::trivial()];
    for _ in 0..n {
        groups.push(random_group(rng, if finite { 0 } else { 2 }));
    }
    let wrap = |g: &AbGroup| {
        if finite {
            Obj::finab(g.clone()).unwrap()
        } else {
            Obj::ab(g.clone())
        }
    };
    let objects: Vec<Obj> = groups.iter().map(wrap).collect();
    let maps = (0..n)
        .map(|k| {
            let m = random_hom(rng, &groups[k], &groups[k + 1]);
            Mor::integer(objects[k].clone(), objects[k + 1].clone(), m).unwrap()
        })
        .collect();
    let category = if finite {
        CategoryId::FinAb
    } else {
        CategoryId::Ab
    };
    ConstructibleModule::new(category, critical, objects, maps).unwrap()
}

pub fn random_field(rng: &mut impl Rng) -> Field {
    match rng.gen_range(0..4) {
        0 => Field::Rationals,
        k => Field::prime([2, 3, 5][k - 1]).unwrap(),
    }
}

pub fn random_field_matrix(
    rng: &mut impl Rng,
    field: &Field,
    rows: usize,
    cols: usize,
) -> FieldMatrix {
    Matrix::from_fn(rows, cols, |_, _| {
        field.from_int(&BigInt::from(rng.gen_range(-2..=2)))
    })
}

pub fn random_vect_module(
    rng: &mut impl Rng,
    field: &Field,
    max_crit: usize,
    max_dim: usize,
) -> ConstructibleModule {
    let n = rng.gen_range(1..=max_crit);
    let critical = random_critical(rng, n);
    let mut dims = vec![0];
    dims.extend((0..n).map(|_| rng.gen_range(0..=max_dim)));
    let objects: Vec<Obj> = dims.iter().map(|&d| Obj::vect(field, d)).collect();
    let maps = (0..n)
        .map(|k| Mor::linear(field, random_field_matrix(rng, field, dims[k + 1], dims[k])).unwrap())
        .collect();
    ConstructibleModule::new(CategoryId::Vect(field.clone()), critical, objects, maps).unwrap()
}

pub fn random_invertible(
    rng: &mut impl Rng,
    field: &Field,
    n: usize,
) -> (FieldMatrix, FieldMatrix) {
    loop {
        let m = random_field_matrix(rng, field, n, n);
        if let Some(inv) = field_inverse(field, &m) {
            return (m, inv);
        }
    }
}

/// Jordan blocks with eigenvalues in `field`, returned with a conjugate of their matrix.
pub fn random_split_matrix(
    rng: &mut impl Rng,
    field: &Field,
    max_dim: usize,
) -> (Vec<(Rational, usize)>, FieldMatrix) {
    let eigen: Vec<Rational> = [q(0), q(1), q(2), qq(-1, 2)]
        .iter()
        .filter_map(|x| field.element(x).ok())
        .collect();
    let mut blocks = Vec::new();
    let mut dim = 0;
    while dim < max_dim && (blocks.is_empty() || rng.gen_bool(0.6)) {
        let size = rng.gen_range(1..=(max_dim - dim).min(3));
        let lambda = eigen.choose(rng).unwrap().clone();
        blocks.push((lambda, size));
        dim += size;
    }
    let j = jordan_matrix(field, &blocks);
    let (p, pinv) = random_invertible(rng, field, dim);
    (blocks, p.mul(field, &j).mul(field, &pinv))
}

/// A random object of `category`, possibly the identity object.
pub fn random_object(rng: &mut impl Rng, category: &CategoryId) -> Obj {
    match category {
        CategoryId::FinSet => Obj::finset(rng.gen_range(0..=5)),
        CategoryId::Vect(f) => Obj::vect(f, rng.gen_range(0..=4)),
        CategoryId::Ab => Obj::ab(random_group(rng, 2)),
        CategoryId::FinAb => Obj::finab(random_group(rng, 0)).unwrap(),
        CategoryId::RepN(f) => {
            if rng.gen_bool(0.1) {
                Obj::identity_object(category)
            } else {
                Obj::repn(f, random_split_matrix(rng, f, 4).1).unwrap()
            }
        }
    }
}

/// A filtered complex on up to `max_vertices` vertices with integer values;
/// each simplex enters with some probability once all its faces are present.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> FilteredComplex {
    let n = rng.gen_range(2..=max_vertices);
    let mut values: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for v in 0..n {
        values.insert(vec![v], rng.gen_range(0..=3));
    }
    for k in 1..=max_dim {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k + 1 {
                continue;
            }
            let s: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let face_values: Option<Vec<i64>> = (0..s.len())
                .map(|d| {
                    let mut f = s.clone();
                    f.remove(d);
                    values.get(&f).copied()
                })
                .collect();
            if let Some(fv) = face_values {
                if rng.gen_bool(0.6) {
                    let top = fv.into_iter().max().unwrap();
                    values.insert(s, top + rng.gen_range(0..=2));
                }
            }
        }
    }
    FilteredComplex::new(values.into_iter().map(|(s, v)| (s, q(v))).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// Linear algebra over F_p (p > 0) or Q (p = 0), on plain row vectors.

#[derive(Debug, Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

fn reduce(p: u64, x: Rational) -> Rational {
    if p == 0 {
        x
    } else {
        Rational::from_integer(x.to_integer().mod_floor(&BigInt::from(p)))
    }
}

fn inverse(p: u64, x: &Rational) -> Rational {
    if p == 0 {
        x.recip()
    } else {
        let p = BigInt::from(p);
        let e = &p - BigInt::from(2);
        Rational::from_integer(x.to_integer().modpow(&e, &p))
    }
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        Mat {
            rows: n,
            cols: n,
            data: (0..n)
                .map(|i| (0..n).map(|j| q((i == j) as i64)).collect())
                .collect(),
        }
    }

    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        let (rows, cols) = m.shape();
        Mat {
            rows,
            cols,
            data: (0..rows)
                .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, p: u64, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let data = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        let s = (0..self.cols).fold(Rational::zero(), |acc, k| {
                            acc + &self.data[i][k] * &other.data[k][j]
                        });
                        reduce(p, s)
                    })
                    .collect()
            })
            .collect();
        Mat {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn rank(&self, p: u64) -> usize {
        let mut a: Vec<Vec<Rational>> = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| reduce(p, x.clone())).collect())
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(piv) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            let inv = inverse(p, &a[r][c]);
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = reduce(p, &a[i][c] * &inv);
                    for k in c..self.cols {
                        let v = &a[i][k] - &f * &a[r][k];
                        a[i][k] = reduce(p, v);
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// Type B diagram of a Vect or Ab module computed from ranks alone:
/// `(i, j) ↦ dim(im_i ∩ ker) − dim(im_{i−1} ∩ ker)` in the object before `s_j`,
/// where `dim(im C ∩ ker M) = rank C − rank MC`.
pub fn rank_diagram(f: &ConstructibleModule) -> DiagramGrid {
    let (p, key) = match f.category() {
        CategoryId::Vect(field) => (field.characteristic(), BasisKey::Dimension),
        CategoryId::Ab => (0, BasisKey::Rank),
        other => panic!("no rank oracle for {other}"),
    };
    let objects = f.objects();
    let maps: Vec<Mat> = f
        .maps()
        .iter()
        .enumerate()
        .map(|(k, m)| match m.field_matrix() {
            Some(fm) => Mat::from_matrix(fm),
            None => {
                // free block of an integer matrix, torsion generators come first
                let free_part = |o: &Obj| match o {
                    Obj::Ab(g) => (g.torsion().len(), g.free_rank()),
                    _ => unreachable!(),
                };
                let (ts, fs) = free_part(&objects[k]);
                let (tt, ft) = free_part(&objects[k + 1]);
                let im = m.int_matrix().unwrap();
                Mat {
                    rows: ft,
                    cols: fs,
                    data: (0..ft)
                        .map(|i| {
                            (0..fs)
                                .map(|j| Rational::from_integer(im.get(tt + i, ts + j).clone()))
                                .collect()
                        })
                        .collect(),
                }
            }
        })
        .collect();
    let dims: Vec<usize> = std::iter::once(0)
        .chain(maps.iter().map(|m| m.rows))
        .collect();
    let n = f.len();
    let composite =
        |a: usize, b: usize| (a..b).fold(Mat::identity(dims[a]), |acc, k| maps[k].mul(p, &acc));
    let kernel_part = |c: &Mat, j: usize| -> i64 {
        let killed = if j <= n {
            maps[j - 1].mul(p, c).rank(p)
        } else {
            0
        };
        (c.rank(p) - killed) as i64
    };
    let mut out = DiagramGrid::new(
        f.critical().to_vec(),
        GroupTag::B(f.category().clone()),
        Role::Finite,
    )
    .unwrap();
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            let v = kernel_part(&composite(i, j - 1), j) - kernel_part(&composite(i - 1, j - 1), j);
            out.set(i, j, GroupElem::from_pairs([(key.clone(), v)]))
                .unwrap();
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Classical persistence over F_2 by column reduction.

/// Barcode of `H_degree` over `F_2`, multiplicities keyed by `(birth, death)`.
pub fn f2_barcode(
    k: &FilteredComplex,
    degree: usize,
) -> BTreeMap<(Rational, Option<Rational>), i64> {
    let simplices = k.simplices();
    let values = k.values();
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by(|&a, &b| (&values[a], simplices[a].len()).cmp(&(&values[b], simplices[b].len())));
    let pos: HashMap<&[usize], usize> = order
        .iter()
        .enumerate()
        .map(|(r, &i)| (simplices[i].as_slice(), r))
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = order
        .iter()
        .map(|&i| {
            let s = &simplices[i];
            if s.len() == 1 {
                return BTreeSet::new();
            }
            (0..s.len())
                .map(|d| {
                    let mut f = s.clone();
                    f.remove(d);
                    pos[f.as_slice()]
                })
                .collect()
        })
        .collect();
    let mut column_of_low: HashMap<usize, usize> = HashMap::new();
    for j in 0..cols.len() {
        while let Some(&low) = cols[j].last() {
            match column_of_low.get(&low) {
                Some(&other) => {
                    let o = cols[other].clone();
                    cols[j] = cols[j].symmetric_difference(&o).copied().collect();
                }
                None => {
                    column_of_low.insert(low, j);
                    break;
                }
            }
        }
    }
    let dim = |r: usize| simplices[order[r]].len() - 1;
    let value = |r: usize| values[order[r]].clone();
    let mut bars = BTreeMap::new();
    for (&low, &j) in &column_of_low {
        if dim(low) == degree && value(low) < value(j) {
            *bars.entry((value(low), Some(value(j)))).or_insert(0) += 1;
        }
    }
    for r in 0..cols.len() {
        if dim(r) == degree && cols[r].is_empty() && !column_of_low.contains_key(&r) {
            *bars.entry((value(r), None)).or_insert(0) += 1;
        }
    }
    bars
}

// ---------------------------------------------------------------------------
// Integral homology by a naive Smith form.

/// Nonzero diagonal entries of a Smith form, up to order, by naive elimination.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pivot = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let f = a[i][t] / pivot;
            for k in t..cols {
                a[i][k] -= f * a[t][k];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let f = a[t][j] / pivot;
            for row in a.iter_mut().skip(t) {
                row[j] -= f * row[t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0)) {
            for k in t..cols {
                a[t][k] += a[i][k];
            }
            continue;
        }
        diag.push(pivot.abs());
        t += 1;
    }
    diag
}

fn boundary_rows(k: &FilteredComplex, dim: usize) -> Vec<Vec<i128>> {
    let of_dim = |d: usize| -> Vec<&Vec<usize>> {
        k.simplices().iter().filter(|s| s.len() == d + 1).collect()
    };
    let rows = of_dim(dim - 1);
    let cols = of_dim(dim);
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (c, s) in cols.iter().enumerate() {
        for d in 0..s.len() {
            let mut f = (*s).clone();
            f.remove(d);
            let r = rows.iter().position(|x| **x == f).unwrap();
            m[r][c] = if d % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// `(free rank, torsion coefficients)` of `H_degree` of the whole complex.
pub fn integral_homology(k: &FilteredComplex, degree: usize) -> (usize, Vec<i128>) {
    let count = k
        .simplices()
        .iter()
        .filter(|s| s.len() == degree + 1)
        .count();
    let rank_in = if degree == 0 {
        0
    } else {
        smith_diagonal(boundary_rows(k, degree)).len()
    };
    let above = smith_diagonal(boundary_rows(k, degree + 1));
    let mut torsion: Vec<i128> = above.iter().copied().filter(|&d| d > 1).collect();
    torsion.sort();
    (count - rank_in - above.len(), torsion)
}

// ---------------------------------------------------------------------------
// Erosion and bottleneck distances of Vect diagrams, computed from bars.

fn contains(outer: &(Rational, Option<Rational>), inner: &(Rational, Option<Rational>)) -> bool {
    outer.0 <= inner.0
        && match (&outer.1, &inner.1) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a >= b,
        }
}

fn cumulative(bars: &[Bar], at: &(Rational, Option<Rational>)) -> i64 {
    bars.iter()
        .filter(|(p, e, _)| contains(&(p.clone(), e.clone()), at))
        .map(|b| b.2)
        .sum()
}

pub fn eroded_bars(bars: &[Bar], eps: &Rational) -> Vec<Bar> {
    bars.iter()
        .filter_map(|(p, e, m)| match e {
            Some(e) if e - p <= eps * q(2) => None,
            _ => Some((p + eps, e.as_ref().map(|e| e - eps), *m)),
        })
        .collect()
}

/// `∇^ε Y_a → Y_b`, checked at every support cell of the eroded diagram.
pub fn eroded_maps_to(ya: &[Bar], yb: &[Bar], eps: &Rational) -> bool {
    let e = eroded_bars(ya, eps);
    e.iter().all(|(p, end, _)| {
        let at = (p.clone(), end.clone());
        cumulative(&e, &at) <= cumulative(yb, &at)
    })
}

/// Least `ε = k·step ≤ limit` with erosions both ways.
pub fn scanned_erosion_distance(
    y1: &[Bar],
    y2: &[Bar],
    step: &Rational,
    limit: &Rational,
) -> Option<Rational> {
    let mut eps = Rational::zero();
    while eps <= *limit {
        if eroded_maps_to(y2, y1, &eps) && eroded_maps_to(y1, y2, &eps) {
            return Some(eps);
        }
        eps += step;
    }
    None
}

fn points(bars: &[Bar]) -> Vec<(Rational, Option<Rational>)> {
    bars.iter()
        .flat_map(|(p, e, m)| std::iter::repeat_n((p.clone(), e.clone()), *m as usize))
        .collect()
}

fn abs(x: Rational) -> Rational {
    if x < Rational::zero() {
        -x
    } else {
        x
    }
}

fn pair_cost(
    a: &(Rational, Option<Rational>),
    b: &(Rational, Option<Rational>),
) -> Option<Rational> {
    let birth = abs(&a.0 - &b.0);
    match (&a.1, &b.1) {
        (None, None) => Some(birth),
        (Some(x), Some(y)) => Some(birth.max(abs(x - y))),
        _ => None,
    }
}

fn diagonal_cost(a: &(Rational, Option<Rational>)) -> Option<Rational> {
    a.1.as_ref().map(|d| (d - &a.0) / q(2))
}

fn perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut owner))
}

/// Bottleneck distance by thresholded bipartite matching with diagonal slots.
pub fn bottleneck(y1: &[Bar], y2: &[Bar]) -> Option<Rational> {
    let (a, b) = (points(y1), points(y2));
    let (n, m) = (a.len(), b.len());
    // left: a then diagonal copies of b; right: b then diagonal copies of a
    let cost = |l: usize, r: usize| -> Option<Rational> {
        match (l < n, r < m) {
            (true, true) => pair_cost(&a[l], &b[r]),
            (true, false) => (r - m == l).then(|| diagonal_cost(&a[l])).flatten(),
            (false, true) => (l - n == r).then(|| diagonal_cost(&b[r])).flatten(),
            (false, false) => Some(Rational::zero()),
        }
    };
    let mut thresholds: Vec<Rational> = (0..n + m)
        .flat_map(|l| (0..n + m).filter_map(move |r| cost(l, r)))
        .collect();
    thresholds.push(Rational::zero());
    thresholds.sort();
    thresholds.dedup();
    thresholds.into_iter().find(|delta| {
        let adj: Vec<Vec<usize>> = (0..n + m)
            .map(|l| {
                (0..n + m)
                    .filter(|&r| cost(l, r).is_some_and(|c| c <= *delta))
                    .collect()
            })
            .collect();
        perfect_matching(&adj, n + m)
    })
}
