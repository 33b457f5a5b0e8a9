//! The five value categories: finite sets, vector spaces, finitely generated
//! abelian groups, finite abelian groups and representations of `N`.
//!
//! Objects are always stored in canonical form, and morphisms are matrices (or
//! function tables) on fixed generators, so equality of objects, morphisms and
//! isomorphism classes is structural.

mod iso;
mod morphism;
mod object;

pub use iso::{Indecomposable, IsoClass};
pub use morphism::{Mor, Payload};
pub use object::{AbGroup, Obj};

use std::fmt;

use crate::exact::Field;

/// Which category a module is valued in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CategoryId {
    FinSet,
    Vect(Field),
    Ab,
    FinAb,
    RepN(Field),
}

impl CategoryId {
    /// Every category except `FinSet` is abelian and has a type B group.
    pub fn is_abelian(&self) -> bool {
        !matches!(self, CategoryId::FinSet)
    }

    pub fn field(&self) -> Option<&Field> {
        match self {
            CategoryId::Vect(f) | CategoryId::RepN(f) => Some(f),
            _ => None,
        }
    }

    /// Short lowercase name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            CategoryId::FinSet => "finset",
            CategoryId::Vect(_) => "vect",
            CategoryId::Ab => "ab",
            CategoryId::FinAb => "finab",
            CategoryId::RepN(_) => "repn",
        }
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryId::FinSet => write!(f, "FinSet"),
            CategoryId::Vect(k) => write!(f, "Vect({k})"),
            CategoryId::Ab => write!(f, "Ab"),
            CategoryId::FinAb => write!(f, "FinAb"),
            CategoryId::RepN(k) => write!(f, "Rep(N; {k})"),
        }
    }
}

/// Composite `g ∘ f`.
pub fn compose(g: &Mor, f: &Mor) -> crate::Result<Mor> {
    g.compose(f)
}

/// Isomorphism class of an object.
pub fn iso_class(a: &Obj) -> crate::Result<IsoClass> {
    a.iso_class()
}

/// Isomorphism class of the image of a morphism.
pub fn image_iso_class(f: &Mor) -> crate::Result<IsoClass> {
    f.image()?.iso_class()
}

pub fn is_isomorphism(f: &Mor) -> bool {
    f.is_isomorphism()
}
