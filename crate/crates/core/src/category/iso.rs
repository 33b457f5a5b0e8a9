use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::CategoryId;
use crate::exact::{format_rational, Rational};

/// Isomorphism type of an indecomposable object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    /// The singleton set.
    Point,
    /// A one-dimensional vector space.
    Line,
    /// The infinite cyclic group.
    Free,
    /// `Z / p^m`
    Cyclic { prime: BigInt, exponent: u32 },
    /// A Jordan block.
    Jordan { eigenvalue: Rational, size: usize },
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Point => write!(f, "pt"),
            Indecomposable::Line => write!(f, "k"),
            Indecomposable::Free => write!(f, "Z"),
            Indecomposable::Cyclic { prime, exponent } => {
                write!(
                    f,
                    "Z/{}",
                    num_traits::pow(prime.clone(), *exponent as usize)
                )
            }
            Indecomposable::Jordan { eigenvalue, size } => {
                write!(f, "J({},{})", format_rational(eigenvalue), size)
            }
        }
    }
}

/// Canonical multiset of indecomposable summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoClass {
    category: CategoryId,
    summands: BTreeMap<Indecomposable, usize>,
}

impl IsoClass {
    pub fn from_parts(
        category: CategoryId,
        parts: impl IntoIterator<Item = Indecomposable>,
    ) -> Self {
        let mut summands = BTreeMap::new();
        for p in parts {
            *summands.entry(p).or_insert(0) += 1;
        }
        IsoClass { category, summands }
    }

    /// Class of the identity object.
    pub fn empty(category: CategoryId) -> Self {
        IsoClass {
            category,
            summands: BTreeMap::new(),
        }
    }

    pub fn category(&self) -> &CategoryId {
        &self.category
    }

    pub fn summands(&self) -> &BTreeMap<Indecomposable, usize> {
        &self.summands
    }

    pub fn multiplicity(&self, part: &Indecomposable) -> usize {
        self.summands.get(part).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Total number of indecomposable summands.
    pub fn len(&self) -> usize {
        self.summands.values().sum()
    }

    /// Multiset union: the class of the direct sum.
    pub fn union(&self, other: &IsoClass) -> IsoClass {
        let mut summands = self.summands.clone();
        for (k, v) in &other.summands {
            *summands.entry(k.clone()).or_insert(0) += v;
        }
        IsoClass {
            category: self.category.clone(),
            summands,
        }
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for (part, m) in &self.summands {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "[{part}]")?;
            } else {
                write!(f, "{m}[{part}]")?;
            }
        }
        Ok(())
    }
}
