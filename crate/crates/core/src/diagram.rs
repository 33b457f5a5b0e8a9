//! Maps on the poset of half-open intervals, Möbius inversion and the type A
//! and type B persistence diagrams.
//!
//! Cells are indexed `1 ≤ i < j ≤ n + 1` for a grid `t_1 < ... < t_n`: cell
//! `(i, j)` is `[t_i, t_j)` and `j = n + 1` is `[t_i, ∞)`.

use std::collections::BTreeMap;

use crate::category::{CategoryId, Mor, Obj};
use crate::error::{Error, Result};
use crate::exact::{
    format_rational, intersection, jordan_type, preimage, EuclideanRing, Field, FieldMatrix,
    IntMatrix, Integers, Matrix, Rational, Subquotient,
};
use crate::grothendieck::{cyclic_a_class, pi, BasisKey, GroupElem, GroupTag};
use crate::module::ConstructibleModule;

/// Whether a grid holds cumulative values `X` or a finite diagram `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Cumulative,
    Finite,
}

/// A half-open interval `[start, end)`; `end = None` means `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: Rational,
    pub end: Option<Rational>,
}

impl Interval {
    pub fn new(start: Rational, end: Option<Rational>) -> Result<Self> {
        if let Some(e) = &end {
            if *e <= start {
                return Err(Error::MalformedInterval(format!(
                    "[{}, {}) is empty",
                    format_rational(&start),
                    format_rational(e)
                )));
            }
        }
        Ok(Interval { start, end })
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start
            && match (&self.end, &other.end) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a >= b,
            }
    }

    /// `[p - ε, q + ε)`.
    pub fn grow(&self, epsilon: &Rational) -> Interval {
        Interval {
            start: &self.start - epsilon,
            end: self.end.as_ref().map(|e| e + epsilon),
        }
    }

    /// The interval whose growth by `ε` is `self`, if nonempty.
    pub fn shrink(&self, epsilon: &Rational) -> Option<Interval> {
        let start = &self.start + epsilon;
        match &self.end {
            None => Some(Interval { start, end: None }),
            Some(e) => {
                let end = e - epsilon;
                (end > start).then_some(Interval {
                    start,
                    end: Some(end),
                })
            }
        }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.end {
            Some(e) => write!(
                f,
                "[{}, {})",
                format_rational(&self.start),
                format_rational(e)
            ),
            None => write!(f, "[{}, ∞)", format_rational(&self.start)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramGrid {
    grid: Vec<Rational>,
    tag: GroupTag,
    role: Role,
    cells: BTreeMap<(usize, usize), GroupElem>,
}

impl DiagramGrid {
    pub fn new(grid: Vec<Rational>, tag: GroupTag, role: Role) -> Result<Self> {
        if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "grid values must increase strictly, got {} then {}",
                format_rational(&w[0]),
                format_rational(&w[1])
            )));
        }
        Ok(DiagramGrid {
            grid,
            tag,
            role,
            cells: BTreeMap::new(),
        })
    }

    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Number of grid values.
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn check_cell(&self, i: usize, j: usize) -> Result<()> {
        let n = self.grid.len();
        if i == 0 || i >= j || j > n + 1 {
            return Err(Error::MalformedInterval(format!(
                "cell ({i}, {j}) outside a grid of {n} values"
            )));
        }
        Ok(())
    }

    /// Value at a cell; zero outside the grid (the padding rows and columns).
    pub fn get(&self, i: usize, j: usize) -> GroupElem {
        self.cells.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: GroupElem) -> Result<()> {
        self.check_cell(i, j)?;
        if value.is_zero() {
            self.cells.remove(&(i, j));
        } else {
            self.cells.insert((i, j), value);
        }
        Ok(())
    }

    /// Nonzero cells in index order.
    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &GroupElem)> {
        self.cells.iter()
    }

    pub fn interval(&self, i: usize, j: usize) -> Interval {
        Interval {
            start: self.grid[i - 1].clone(),
            end: (j <= self.grid.len()).then(|| self.grid[j - 1].clone()),
        }
    }

    /// Cell index of an interval with endpoints on the grid.
    pub fn cell_of(&self, interval: &Interval) -> Result<(usize, usize)> {
        let pos = |x: &Rational| {
            self.grid.binary_search(x).map(|k| k + 1).map_err(|_| {
                Error::GridMisalignment(format!("{} is not a grid value", format_rational(x)))
            })
        };
        let i = pos(&interval.start)?;
        let j = match &interval.end {
            Some(e) => pos(e)?,
            None => self.grid.len() + 1,
        };
        Ok((i, j))
    }

    /// Support of a finite diagram as `(interval, value)` pairs.
    pub fn support(&self) -> Vec<(Interval, GroupElem)> {
        self.cells
            .iter()
            .map(|(&(i, j), v)| (self.interval(i, j), v.clone()))
            .collect()
    }

    /// Builds a finite diagram on the grid of all endpoints of `support`.
    pub fn from_support(tag: GroupTag, support: &[(Interval, GroupElem)]) -> Result<Self> {
        let mut grid: Vec<Rational> = support
            .iter()
            .flat_map(|(iv, _)| std::iter::once(iv.start.clone()).chain(iv.end.clone()))
            .collect();
        grid.sort();
        grid.dedup();
        let mut y = DiagramGrid::new(grid, tag, Role::Finite)?;
        for (iv, v) in support {
            let (i, j) = y.cell_of(iv)?;
            let cur = y.get(i, j);
            y.set(i, j, cur.add(v))?;
        }
        Ok(y)
    }

    /// A finite diagram moved onto a finer grid.
    pub fn refine(&self, grid: &[Rational]) -> Result<Self> {
        let mut out = DiagramGrid::new(grid.to_vec(), self.tag.clone(), self.role)?;
        match self.role {
            Role::Finite => {
                for (iv, v) in self.support() {
                    let (i, j) = out.cell_of(&iv)?;
                    out.set(i, j, v)?;
                }
                Ok(out)
            }
            Role::Cumulative => {
                let y = mobius_invert(self).refine(grid)?;
                Ok(cumulate(&y))
            }
        }
    }

    /// `Σ_{J ⊇ I} Y(J)` for an arbitrary interval `I`, from a finite diagram.
    pub fn cumulative_at(&self, interval: &Interval) -> GroupElem {
        let mut total = GroupElem::zero();
        for (&(i, j), v) in &self.cells {
            if self.interval(i, j).contains(interval) {
                total = total.add(v);
            }
        }
        total
    }

    /// Applies `f` to every value.
    pub fn map_values(
        &self,
        tag: GroupTag,
        mut f: impl FnMut(&GroupElem) -> Result<GroupElem>,
    ) -> Result<Self> {
        let mut out = DiagramGrid::new(self.grid.clone(), tag, self.role)?;
        for (&(i, j), v) in &self.cells {
            out.set(i, j, f(v)?)?;
        }
        Ok(out)
    }

    /// Entrywise sum of two grids with the same grid, tag and role.
    pub fn add(&self, other: &DiagramGrid) -> Result<Self> {
        if self.tag != other.tag || self.role != other.role {
            return Err(Error::Mismatch(format!(
                "adding {} and {} grids",
                self.tag, other.tag
            )));
        }
        let grid = crate::module::merge_grids(&[&self.grid, &other.grid]);
        let (a, b) = (self.refine(&grid)?, other.refine(&grid)?);
        let mut out = a.clone();
        for (&(i, j), v) in &b.cells {
            out.set(i, j, a.get(i, j).add(v))?;
        }
        Ok(out)
    }

    /// All values lie in the nonnegative orthant.
    pub fn is_nonnegative(&self) -> bool {
        self.cells.values().all(GroupElem::is_nonnegative)
    }

    /// Same diagram with zero cells dropped from the grid: only endpoints of
    /// the support remain.
    pub fn compact(&self) -> Result<Self> {
        DiagramGrid::from_support(self.tag.clone(), &self.support())
    }
}

/// Möbius inversion of a cumulative grid.
pub fn mobius_invert(x: &DiagramGrid) -> DiagramGrid {
    let n = x.grid.len();
    let mut y = DiagramGrid {
        grid: x.grid.clone(),
        tag: x.tag.clone(),
        role: Role::Finite,
        cells: BTreeMap::new(),
    };
    let zero = GroupElem::zero();
    // padding: row 0 and column n + 2 are zero
    let at = |i: usize, j: usize| -> GroupElem {
        if i == 0 || j > n + 1 || i >= j {
            zero.clone()
        } else {
            x.get(i, j)
        }
    };
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            let v = if j <= n {
                at(i, j)
                    .sub(&at(i, j + 1))
                    .add(&at(i - 1, j + 1))
                    .sub(&at(i - 1, j))
            } else {
                at(i, j).sub(&at(i - 1, j))
            };
            if !v.is_zero() {
                y.cells.insert((i, j), v);
            }
        }
    }
    y
}

/// Suffix sums `X(i, j) = Σ_{h ≤ i, k ≥ j} Y(h, k)`.
pub fn cumulate(y: &DiagramGrid) -> DiagramGrid {
    let n = y.grid.len();
    let mut x = DiagramGrid {
        grid: y.grid.clone(),
        tag: y.tag.clone(),
        role: Role::Cumulative,
        cells: BTreeMap::new(),
    };
    // col[j] accumulates Σ_{h ≤ i} Y(h, j) as i grows
    let mut col: Vec<GroupElem> = vec![GroupElem::zero(); n + 2];
    for i in 1..=n {
        for (j, c) in col.iter_mut().enumerate().skip(i + 1) {
            *c = c.add(&y.get(i, j));
        }
        let mut acc = GroupElem::zero();
        for j in (i + 1..=n + 1).rev() {
            acc = acc.add(&col[j]);
            if !acc.is_zero() {
                x.cells.insert((i, j), acc.clone());
            }
        }
    }
    x
}

/// Type A diagram: inversion of the image classes in `A(C)`.
pub fn type_a_diagram(f: &ConstructibleModule) -> Result<DiagramGrid> {
    Ok(mobius_invert(&f.dx_a()?))
}

/// Type B diagram: inversion of the image classes in `B(C)`.
pub fn type_b_diagram(f: &ConstructibleModule) -> Result<DiagramGrid> {
    Ok(mobius_invert(&f.dx_b()?))
}

/// `π` applied entrywise.
pub fn project(y: &DiagramGrid) -> Result<DiagramGrid> {
    let GroupTag::A(category) = y.tag.clone() else {
        return Err(Error::Mismatch(format!("{} is not an A group", y.tag)));
    };
    y.map_values(GroupTag::B(category.clone()), |v| pi(&category, v))
}

/// Whether there is a diagram morphism `Y1 → Y2`: for every support cell `I` of
/// `Y1`, `Σ_{J ⊇ I} Y1(J) ⪯ Σ_{J ⊇ I} Y2(J)`.
pub fn diagram_leq(y1: &DiagramGrid, y2: &DiagramGrid) -> Result<bool> {
    if y1.tag != y2.tag {
        return Err(Error::Mismatch(format!(
            "diagrams over {} and {}",
            y1.tag, y2.tag
        )));
    }
    for (&(i, j), _) in y1.cells() {
        let iv = y1.interval(i, j);
        if !y1.cumulative_at(&iv).leq(&y2.cumulative_at(&iv))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the positivity check of a type B diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport {
    pub diagram: DiagramGrid,
    /// Each cell recomputed as a subquotient `(im ∩ ker) / (im' ∩ ker)`.
    pub witnesses: DiagramGrid,
    pub nonnegative: bool,
    pub matches: bool,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.nonnegative && self.matches
    }
}

/// Checks that the type B diagram is nonnegative and recomputes every cell as
/// the class of `(im F(s_i → s_j⁻) ∩ ker F(s_j⁻ → s_j)) / (im F(s_{i-1} → s_j⁻) ∩ ker …)`.
pub fn positivity_check(f: &ConstructibleModule) -> Result<PositivityReport> {
    let diagram = type_b_diagram(f)?;
    let witnesses = subquotient_diagram(f)?;
    Ok(PositivityReport {
        nonnegative: diagram.is_nonnegative(),
        matches: diagram == witnesses,
        diagram,
        witnesses,
    })
}

/// The type B diagram computed cell by cell from the subquotient formula.
pub fn subquotient_diagram(f: &ConstructibleModule) -> Result<DiagramGrid> {
    let category = f.category().clone();
    if !category.is_abelian() {
        return Err(Error::NoBGroup {
            category: category.to_string(),
        });
    }
    let n = f.len();
    let mut out = DiagramGrid::new(
        f.critical().to_vec(),
        GroupTag::B(category.clone()),
        Role::Finite,
    )?;
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            let v = match &category {
                CategoryId::Vect(field) | CategoryId::RepN(field) => field_cell(f, field, i, j)?,
                CategoryId::Ab | CategoryId::FinAb => group_cell(f, &category, i, j)?,
                CategoryId::FinSet => unreachable!("checked above"),
            };
            out.set(i, j, v)?;
        }
    }
    Ok(out)
}

/// Target segment of the numerator image and the killing map, if any.
fn cell_segments(n: usize, j: usize) -> (usize, Option<usize>) {
    if j == n + 1 {
        (n, None)
    } else {
        (j - 1, Some(j))
    }
}

fn field_cell(f: &ConstructibleModule, field: &Field, i: usize, j: usize) -> Result<GroupElem> {
    let (t, kill) = cell_segments(f.len(), j);
    let mat = |m: &Mor| m.field_matrix().expect("linear category").clone();
    let im_new = mat(&f.composite(i, t));
    let im_old = mat(&f.composite(i - 1, t));
    let (num, den) = match kill {
        None => (im_new, im_old),
        Some(k) => {
            let zero = Matrix::zeros(field, f.objects()[k].generator_count(), 0);
            let ker = preimage(field, &mat(&f.composite(t, k)), &zero);
            (
                intersection(field, &im_new, &ker),
                intersection(field, &im_old, &ker),
            )
        }
    };
    let q = Subquotient::new(field, &num, &den)?;
    match &f.objects()[t] {
        Obj::RepN { matrix, .. } => repn_quotient_class(field, &q, matrix),
        _ => Ok(GroupElem::from_pairs([(
            BasisKey::Dimension,
            q.generator_count() as i64,
        )])),
    }
}

/// `B`-class of the endomorphism induced on a quotient of invariant subspaces.
fn repn_quotient_class(
    field: &Field,
    q: &Subquotient<Field>,
    a: &FieldMatrix,
) -> Result<GroupElem> {
    let gens = q.generators();
    let r = gens.len();
    let mut induced = Matrix::zeros(field, r, r);
    for (k, g) in gens.iter().enumerate() {
        let c = q
            .coordinates(&a.mul_vec(field, g))
            .ok_or_else(|| Error::InvalidMorphism("subspace is not invariant".into()))?;
        for (row, x) in c.into_iter().enumerate() {
            induced.set(row, k, x);
        }
    }
    let mut e = GroupElem::zero();
    for (lambda, size) in jordan_type(field, &induced)? {
        e.add_to(BasisKey::Eigenvalue(lambda), size as i64);
    }
    Ok(e)
}

fn group_cell(
    f: &ConstructibleModule,
    category: &CategoryId,
    i: usize,
    j: usize,
) -> Result<GroupElem> {
    let (t, kill) = cell_segments(f.len(), j);
    let group = |k: usize| match &f.objects()[k] {
        Obj::Ab(g) | Obj::FinAb(g) => g.clone(),
        _ => unreachable!("group category"),
    };
    let mat = |m: &Mor| m.int_matrix().expect("group category").clone();
    let rel = group(t).relations();
    let im_new = mat(&f.composite(i, t)).hcat(&rel);
    let im_old = mat(&f.composite(i - 1, t)).hcat(&rel);
    let (num, den): (IntMatrix, IntMatrix) = match kill {
        None => (im_new, im_old),
        Some(k) => {
            let ker = preimage(&Integers, &mat(&f.composite(t, k)), &group(k).relations());
            (
                intersection(&Integers, &im_new, &ker),
                intersection(&Integers, &im_old, &ker),
            )
        }
    };
    let q = Subquotient::new(&Integers, &num, &den)?;
    let mut e = GroupElem::zero();
    if *category == CategoryId::Ab {
        e.add_to(BasisKey::Rank, q.free_rank() as i64);
    } else {
        for d in q.torsion() {
            let d = Integers.normalizing_unit(&d).0 * &d;
            let a = cyclic_a_class(&d);
            e = e.add(&pi(category, &a)?);
        }
    }
    Ok(e)
}
