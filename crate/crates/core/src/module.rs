//! Constructible persistence modules stored segment by segment.

use num_traits::One;

use crate::category::{image_iso_class, CategoryId, IsoClass, Mor, Obj};
use crate::diagram::{DiagramGrid, Role};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::grothendieck::{a_class, b_class, GroupTag};

/// A module constant on `[s_i, s_{i+1})`, with value `e` before `s_1`.
///
/// `objects[i]` is the value on segment `i` (segment `0` is `(-∞, s_1)`),
/// `maps[i]` is the connecting morphism `objects[i] → objects[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleModule {
    category: CategoryId,
    critical: Vec<Rational>,
    objects: Vec<Obj>,
    maps: Vec<Mor>,
}

/// Number of grid values `≤ x`: the index of the segment containing `x`.
pub fn segment_index(grid: &[Rational], x: &Rational) -> usize {
    grid.partition_point(|s| s <= x)
}

/// A point inside segment `k` of `grid`.
pub fn segment_representative(grid: &[Rational], k: usize) -> Rational {
    match (k, grid.first()) {
        (_, None) => Rational::from_integer(0.into()),
        (0, Some(first)) => first - Rational::one(),
        _ => grid[k - 1].clone(),
    }
}

/// Sorted union of value lists.
pub fn merge_grids(grids: &[&[Rational]]) -> Vec<Rational> {
    let mut all: Vec<Rational> = grids.iter().flat_map(|g| g.iter().cloned()).collect();
    all.sort();
    all.dedup();
    all
}

fn check_grid(grid: &[Rational]) -> Result<()> {
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "critical values must increase strictly, got {} then {}",
            format_rational(&w[0]),
            format_rational(&w[1])
        )));
    }
    Ok(())
}

impl ConstructibleModule {
    pub fn new(
        category: CategoryId,
        critical: Vec<Rational>,
        objects: Vec<Obj>,
        maps: Vec<Mor>,
    ) -> Result<Self> {
        check_grid(&critical)?;
        let n = critical.len();
        if objects.len() != n + 1 || maps.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{n} critical values need {} objects and {n} maps, got {} and {}",
                n + 1,
                objects.len(),
                maps.len()
            )));
        }
        if !objects[0].is_identity_object() {
            return Err(Error::InvalidObject(
                "the value before the first critical value must be the identity object".into(),
            ));
        }
        if let Some(o) = objects.iter().find(|o| o.category() != category) {
            return Err(Error::Mismatch(format!(
                "object in {} inside a module valued in {category}",
                o.category()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source() != &objects[i] || m.target() != &objects[i + 1] {
                return Err(Error::InvalidMorphism(format!(
                    "map {} does not connect segment objects {} and {}",
                    i + 1,
                    i,
                    i + 1
                )));
            }
        }
        Ok(ConstructibleModule {
            category,
            critical,
            objects,
            maps,
        })
    }

    /// The module with no critical values.
    pub fn zero(category: CategoryId) -> Self {
        let e = Obj::identity_object(&category);
        ConstructibleModule {
            category,
            critical: Vec::new(),
            objects: vec![e],
            maps: Vec::new(),
        }
    }

    /// Builds a module from `(s_i, O_i, m_i : O_{i-1} → O_i)` steps.
    pub fn from_steps(category: CategoryId, steps: Vec<(Rational, Obj, Mor)>) -> Result<Self> {
        let mut critical = Vec::new();
        let mut objects = vec![Obj::identity_object(&category)];
        let mut maps = Vec::new();
        for (s, o, m) in steps {
            critical.push(s);
            objects.push(o);
            maps.push(m);
        }
        ConstructibleModule::new(category, critical, objects, maps)
    }

    pub fn category(&self) -> &CategoryId {
        &self.category
    }

    pub fn critical(&self) -> &[Rational] {
        &self.critical
    }

    pub fn len(&self) -> usize {
        self.critical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.critical.is_empty()
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    pub fn maps(&self) -> &[Mor] {
        &self.maps
    }

    pub fn segment(&self, x: &Rational) -> usize {
        segment_index(&self.critical, x)
    }

    /// Value at `x`.
    pub fn at(&self, x: &Rational) -> &Obj {
        &self.objects[self.segment(x)]
    }

    /// Composite of connecting maps from segment `a` to segment `b ≥ a`.
    pub fn composite(&self, a: usize, b: usize) -> Mor {
        assert!(a <= b && b <= self.len(), "segments {a}..{b} out of order");
        let mut m = Mor::identity(&self.objects[a]);
        for k in a..b {
            m = self.maps[k].compose(&m).expect("connecting maps chain");
        }
        m
    }

    /// `F(p ≤ q)`.
    pub fn evaluate(&self, p: &Rational, q: &Rational) -> Result<Mor> {
        if p > q {
            return Err(Error::InvalidArgument(format!(
                "evaluation needs p ≤ q, got {} > {}",
                format_rational(p),
                format_rational(q)
            )));
        }
        Ok(self.composite(self.segment(p), self.segment(q)))
    }

    /// Image class of `O_i → O_{j-1}`, with `j = n + 1` standing for `∞`
    /// (the map `O_i → O_n`). Row `i = 0` is the identity object.
    pub fn dx_iso_at(&self, i: usize, j: usize) -> Result<IsoClass> {
        let n = self.len();
        if i >= j || j > n + 1 {
            return Err(Error::MalformedInterval(format!(
                "cell ({i}, {j}) outside a grid of {n} values"
            )));
        }
        let end = if j == n + 1 { n } else { j - 1 };
        image_iso_class(&self.composite(i, end))
    }

    /// Image class at the grid interval `[start, end)`; `end = None` is `∞`.
    pub fn dx_iso(&self, start: &Rational, end: Option<&Rational>) -> Result<IsoClass> {
        let pos = |x: &Rational| {
            self.critical.binary_search(x).map(|k| k + 1).map_err(|_| {
                Error::MalformedInterval(format!("{} is not a critical value", format_rational(x)))
            })
        };
        let i = pos(start)?;
        let j = match end {
            Some(e) => pos(e)?,
            None => self.len() + 1,
        };
        if i >= j {
            return Err(Error::MalformedInterval(format!(
                "empty interval [{}, {})",
                format_rational(start),
                end.map(format_rational).unwrap_or_else(|| "∞".into())
            )));
        }
        self.dx_iso_at(i, j)
    }

    /// Image classes at every grid cell, row by row.
    fn dx_classes(&self) -> Result<Vec<((usize, usize), IsoClass)>> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 1..=n {
            // m runs through O_i → O_{j-1}; the last column reuses O_i → O_n
            let mut m = Mor::identity(&self.objects[i]);
            for j in i + 1..=n + 1 {
                out.push(((i, j), image_iso_class(&m)?));
                if j <= n {
                    m = self.maps[j - 1].compose(&m)?;
                }
            }
        }
        Ok(out)
    }

    /// The cumulative map valued in `A(C)`.
    pub fn dx_a(&self) -> Result<DiagramGrid> {
        let mut x = DiagramGrid::new(
            self.critical.clone(),
            GroupTag::A(self.category.clone()),
            Role::Cumulative,
        )?;
        for ((i, j), c) in self.dx_classes()? {
            x.set(i, j, a_class(&c))?;
        }
        Ok(x)
    }

    /// The cumulative map valued in `B(C)`.
    pub fn dx_b(&self) -> Result<DiagramGrid> {
        if !self.category.is_abelian() {
            return Err(Error::NoBGroup {
                category: self.category.to_string(),
            });
        }
        let mut x = DiagramGrid::new(
            self.critical.clone(),
            GroupTag::B(self.category.clone()),
            Role::Cumulative,
        )?;
        for ((i, j), c) in self.dx_classes()? {
            x.set(i, j, b_class(&c)?)?;
        }
        Ok(x)
    }

    /// `r ↦ F(r + ε)`, critical at `S − ε`.
    pub fn shift(&self, epsilon: &Rational) -> Self {
        ConstructibleModule {
            category: self.category.clone(),
            critical: self.critical.iter().map(|s| s - epsilon).collect(),
            objects: self.objects.clone(),
            maps: self.maps.clone(),
        }
    }

    /// The same module presented on a finer grid containing its critical values.
    pub fn refine(&self, grid: &[Rational]) -> Result<Self> {
        check_grid(grid)?;
        if let Some(s) = self
            .critical
            .iter()
            .find(|s| grid.binary_search(s).is_err())
        {
            return Err(Error::GridMisalignment(format!(
                "critical value {} missing from the refined grid",
                format_rational(s)
            )));
        }
        let segs: Vec<usize> = std::iter::once(0)
            .chain(grid.iter().map(|t| self.segment(t)))
            .collect();
        let objects = segs.iter().map(|&k| self.objects[k].clone()).collect();
        let maps = segs
            .windows(2)
            .map(|w| self.composite(w[0], w[1]))
            .collect();
        ConstructibleModule::new(self.category.clone(), grid.to_vec(), objects, maps)
    }

    /// Direct sum of two modules on the merged grid.
    pub fn direct_sum(&self, other: &ConstructibleModule) -> Result<Self> {
        let (f, g) = common_refinement(self, other)?;
        let objects = f
            .objects
            .iter()
            .zip(&g.objects)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let maps = f
            .maps
            .iter()
            .zip(&g.maps)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleModule::new(self.category.clone(), f.critical, objects, maps)
    }

    /// Drops critical values where the connecting map is an identity.
    pub fn simplify(&self) -> Self {
        let mut critical = Vec::new();
        let mut objects = vec![self.objects[0].clone()];
        let mut maps: Vec<Mor> = Vec::new();
        for (k, m) in self.maps.iter().enumerate() {
            if *m == Mor::identity(&self.objects[k]) {
                continue;
            }
            critical.push(self.critical[k].clone());
            objects.push(self.objects[k + 1].clone());
            maps.push(m.clone());
        }
        // identity maps were skipped, so consecutive kept maps still chain
        ConstructibleModule {
            category: self.category.clone(),
            critical,
            objects,
            maps,
        }
    }
}

/// Both modules re-gridded on `S_F ∪ S_G`.
pub fn common_refinement(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
) -> Result<(ConstructibleModule, ConstructibleModule)> {
    if f.category != g.category {
        return Err(Error::Mismatch(format!(
            "modules valued in {} and {}",
            f.category, g.category
        )));
    }
    let grid = merge_grids(&[&f.critical, &g.critical]);
    Ok((f.refine(&grid)?, g.refine(&grid)?))
}

/// Morphisms `φ : F(r) → G(r + ε)` and `ψ : G(r) → F(r + ε)`, one per segment
/// of the grids `S_F ∪ (S_G − ε)` and `S_G ∪ (S_F − ε)` respectively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleavingPair {
    pub epsilon: Rational,
    pub phi: Vec<Mor>,
    pub psi: Vec<Mor>,
}

/// `S_F ∪ (S_G − ε)`.
pub fn transfer_grid(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
    epsilon: &Rational,
) -> Vec<Rational> {
    let shifted: Vec<Rational> = g.critical.iter().map(|s| s - epsilon).collect();
    merge_grids(&[&f.critical, &shifted])
}

impl InterleavingPair {
    /// Evaluates `phi_at(r)` and `psi_at(r)` at one point of every segment.
    pub fn from_fn(
        f: &ConstructibleModule,
        g: &ConstructibleModule,
        epsilon: &Rational,
        mut phi_at: impl FnMut(&Rational) -> Result<Mor>,
        mut psi_at: impl FnMut(&Rational) -> Result<Mor>,
    ) -> Result<Self> {
        let gp = transfer_grid(f, g, epsilon);
        let gq = transfer_grid(g, f, epsilon);
        let phi = (0..=gp.len())
            .map(|k| phi_at(&segment_representative(&gp, k)))
            .collect::<Result<_>>()?;
        let psi = (0..=gq.len())
            .map(|k| psi_at(&segment_representative(&gq, k)))
            .collect::<Result<_>>()?;
        Ok(InterleavingPair {
            epsilon: epsilon.clone(),
            phi,
            psi,
        })
    }

    /// The interleaving between `F` and `shift(F, ε)` given by
    /// `φ = F(r ≤ r + 2ε)` and `ψ = id`.
    pub fn shift_pair(
        f: &ConstructibleModule,
        epsilon: &Rational,
    ) -> Result<(ConstructibleModule, Self)> {
        let g = f.shift(epsilon);
        let two = epsilon + epsilon;
        let pair = InterleavingPair::from_fn(
            f,
            &g,
            epsilon,
            |r| f.evaluate(r, &(r + &two)),
            |r| Ok(Mor::identity(g.at(r))),
        )?;
        Ok((g, pair))
    }
}

/// Per-segment morphisms of one direction of an interleaving.
struct Transfer<'a> {
    grid: Vec<Rational>,
    maps: &'a [Mor],
}

impl Transfer<'_> {
    fn at(&self, r: &Rational) -> &Mor {
        &self.maps[segment_index(&self.grid, r)]
    }
}

fn check_alignment(
    name: &str,
    t: &Transfer<'_>,
    src: &ConstructibleModule,
    tgt: &ConstructibleModule,
    epsilon: &Rational,
) -> Result<()> {
    if t.maps.len() != t.grid.len() + 1 {
        return Err(Error::GridMisalignment(format!(
            "{name} has {} maps for {} segments",
            t.maps.len(),
            t.grid.len() + 1
        )));
    }
    for (k, m) in t.maps.iter().enumerate() {
        let r = segment_representative(&t.grid, k);
        if m.source() != src.at(&r) || m.target() != tgt.at(&(&r + epsilon)) {
            return Err(Error::GridMisalignment(format!(
                "{name} on segment {k} (at {}) has the wrong source or target",
                format_rational(&r)
            )));
        }
    }
    Ok(())
}

/// First failing condition of a claimed interleaving, or `None` if it verifies.
pub fn interleaving_failure(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
    pair: &InterleavingPair,
) -> Result<Option<String>> {
    if f.category != g.category {
        return Err(Error::Mismatch(format!(
            "modules valued in {} and {}",
            f.category, g.category
        )));
    }
    let eps = &pair.epsilon;
    if *eps < Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument(
            "negative interleaving parameter".into(),
        ));
    }
    let phi = Transfer {
        grid: transfer_grid(f, g, eps),
        maps: &pair.phi,
    };
    let psi = Transfer {
        grid: transfer_grid(g, f, eps),
        maps: &pair.psi,
    };
    check_alignment("phi", &phi, f, g, eps)?;
    check_alignment("psi", &psi, g, f, eps)?;
    for (name, t, src, tgt) in [("phi", &phi, f, g), ("psi", &psi, g, f)] {
        for k in 1..t.maps.len() {
            let r0 = segment_representative(&t.grid, k - 1);
            let r1 = segment_representative(&t.grid, k);
            let left = tgt
                .evaluate(&(&r0 + eps), &(&r1 + eps))?
                .compose(&t.maps[k - 1])?;
            let right = t.maps[k].compose(&src.evaluate(&r0, &r1)?)?;
            if left != right {
                return Ok(Some(format!(
                    "{name} is not natural at {}",
                    format_rational(&r1)
                )));
            }
        }
    }
    let two = eps + eps;
    for (name, first, second, m) in [("psi∘phi", &phi, &psi, f), ("phi∘psi", &psi, &phi, g)] {
        let back: Vec<Rational> = second.grid.iter().map(|s| s - eps).collect();
        let m_shift: Vec<Rational> = m.critical.iter().map(|s| s - &two).collect();
        let grid = merge_grids(&[&first.grid, &back, &m_shift]);
        for k in 0..=grid.len() {
            let r = segment_representative(&grid, k);
            let composite = second.at(&(&r + eps)).compose(first.at(&r))?;
            if composite != m.evaluate(&r, &(&r + &two))? {
                return Ok(Some(format!(
                    "{name} differs from the 2ε shift map at {}",
                    format_rational(&r)
                )));
            }
        }
    }
    Ok(None)
}

/// Whether `pair` is an `ε`-interleaving of `F` and `G`.
pub fn check_interleaving(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
    pair: &InterleavingPair,
) -> Result<bool> {
    Ok(interleaving_failure(f, g, pair)?.is_none())
}
