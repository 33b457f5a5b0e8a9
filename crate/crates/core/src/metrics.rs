//! Erosion of diagrams and the erosion distance.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::diagram::{diagram_leq, DiagramGrid, Interval};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::module::merge_grids;

/// `∇^ε Y`, precomposition with `[p, q) ↦ [p − ε, q + ε)`.
///
/// Each support cell `[p, q)` moves to `[p + ε, q − ε)`; cells with
/// `q − p ≤ 2ε` vanish.
pub fn erode(y: &DiagramGrid, epsilon: &Rational) -> Result<DiagramGrid> {
    if epsilon.is_negative() {
        return Err(Error::InvalidArgument("negative erosion parameter".into()));
    }
    let support: Vec<_> = y
        .support()
        .into_iter()
        .filter_map(|(iv, v)| iv.shrink(epsilon).map(|s| (s, v)))
        .collect();
    DiagramGrid::from_support(y.tag().clone(), &support)
}

/// Whether `∇^ε Y_a → Y_b`, evaluating cumulative values of the eroded diagram
/// as `X_a ∘ Grow^ε`.
fn eroded_leq(ya: &DiagramGrid, yb: &DiagramGrid, epsilon: &Rational) -> Result<bool> {
    for (j, _) in ya.support() {
        let Some(i) = j.shrink(epsilon) else {
            continue;
        };
        if !ya.cumulative_at(&j).leq(&yb.cumulative_at(&i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both `∇^ε Y2 → Y1` and `∇^ε Y1 → Y2`.
pub fn erosion_exists(y1: &DiagramGrid, y2: &DiagramGrid, epsilon: &Rational) -> Result<bool> {
    let (a, b) = erosion_directions(y1, y2, epsilon)?;
    Ok(a && b)
}

/// `(∇^ε Y2 → Y1, ∇^ε Y1 → Y2)`.
pub fn erosion_directions(
    y1: &DiagramGrid,
    y2: &DiagramGrid,
    epsilon: &Rational,
) -> Result<(bool, bool)> {
    if y1.tag() != y2.tag() {
        return Err(Error::Mismatch(format!(
            "diagrams over {} and {}",
            y1.tag(),
            y2.tag()
        )));
    }
    if epsilon.is_negative() {
        return Err(Error::InvalidArgument("negative erosion parameter".into()));
    }
    Ok((eroded_leq(y2, y1, epsilon)?, eroded_leq(y1, y2, epsilon)?))
}

/// Same predicate through explicit erosion and the diagram order; slower, used
/// to cross-check [`erosion_exists`].
pub fn erosion_exists_explicit(
    y1: &DiagramGrid,
    y2: &DiagramGrid,
    epsilon: &Rational,
) -> Result<bool> {
    Ok(diagram_leq(&erode(y2, epsilon)?, y1)? && diagram_leq(&erode(y1, epsilon)?, y2)?)
}

/// One evaluated candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRow {
    pub epsilon: Rational,
    /// Whether this candidate is a midpoint between two breakpoints.
    pub midpoint: bool,
    /// `∇^ε Y2 → Y1`.
    pub forward: bool,
    /// `∇^ε Y1 → Y2`.
    pub backward: bool,
}

impl CandidateRow {
    pub fn holds(&self) -> bool {
        self.forward && self.backward
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErosionReport {
    /// `None` when no candidate admits an erosion.
    pub distance: Option<Rational>,
    pub table: Vec<CandidateRow>,
    /// Midpoints that succeed while the breakpoint to their left fails.
    pub flagged: Vec<Rational>,
}

/// Breakpoints of the erosion predicate: `0`, positive differences of
/// endpoints and their halves.
pub fn breakpoints(y1: &DiagramGrid, y2: &DiagramGrid) -> Vec<Rational> {
    let endpoints = |y: &DiagramGrid| -> Vec<Rational> {
        y.support()
            .into_iter()
            .flat_map(|(iv, _)| std::iter::once(iv.start).chain(iv.end))
            .collect()
    };
    let t = merge_grids(&[&endpoints(y1), &endpoints(y2)]);
    let two = Rational::from_integer(2.into());
    let mut c = vec![Rational::zero()];
    for (a, ta) in t.iter().enumerate() {
        for tb in &t[..a] {
            let d = ta - tb;
            c.push(&d / &two);
            c.push(d);
        }
    }
    c.sort();
    c.dedup();
    c
}

/// Breakpoints interleaved with the midpoints between consecutive ones.
pub fn candidates(y1: &DiagramGrid, y2: &DiagramGrid) -> Vec<(Rational, bool)> {
    let b = breakpoints(y1, y2);
    let two = Rational::from_integer(2.into());
    let mut out = Vec::with_capacity(2 * b.len());
    for (k, x) in b.iter().enumerate() {
        out.push((x.clone(), false));
        if let Some(next) = b.get(k + 1) {
            out.push(((x + next) / &two, true));
        }
    }
    out
}

fn evaluate(
    y1: &DiagramGrid,
    y2: &DiagramGrid,
    epsilon: Rational,
    midpoint: bool,
) -> Result<CandidateRow> {
    let (forward, backward) = erosion_directions(y1, y2, &epsilon)?;
    Ok(CandidateRow {
        epsilon,
        midpoint,
        forward,
        backward,
    })
}

fn flagged(table: &[CandidateRow]) -> Vec<Rational> {
    table
        .windows(2)
        .filter(|w| w[1].midpoint && w[1].holds() && !w[0].holds())
        .map(|w| w[1].epsilon.clone())
        .collect()
}

/// Least candidate `ε` admitting an `ε`-erosion, scanning upward and stopping
/// at the first success.
pub fn erosion_distance(y1: &DiagramGrid, y2: &DiagramGrid) -> Result<ErosionReport> {
    let mut table = Vec::new();
    let mut distance = None;
    for (eps, midpoint) in candidates(y1, y2) {
        let row = evaluate(y1, y2, eps, midpoint)?;
        let ok = row.holds();
        table.push(row);
        if ok {
            distance = Some(table.last().unwrap().epsilon.clone());
            break;
        }
    }
    let flagged = flagged(&table);
    Ok(ErosionReport {
        distance,
        table,
        flagged,
    })
}

/// Evaluates every candidate, in parallel, and reports the least success.
pub fn erosion_distance_full(y1: &DiagramGrid, y2: &DiagramGrid) -> Result<ErosionReport> {
    let table = candidates(y1, y2)
        .into_par_iter()
        .map(|(eps, midpoint)| evaluate(y1, y2, eps, midpoint))
        .collect::<Result<Vec<_>>>()?;
    let distance = table.iter().find(|r| r.holds()).map(|r| r.epsilon.clone());
    let flagged = flagged(&table);
    Ok(ErosionReport {
        distance,
        table,
        flagged,
    })
}

/// `Σ_{J ⊇ Grow^ε I} Y(J)`: the cumulative value of `∇^ε Y` at `I`.
pub fn grown_cumulative(
    y: &DiagramGrid,
    interval: &Interval,
    epsilon: &Rational,
) -> crate::grothendieck::GroupElem {
    y.cumulative_at(&interval.grow(epsilon))
}
