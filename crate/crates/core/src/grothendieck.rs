//! Grothendieck groups `A(C)` and `B(C)` in explicit free bases.
//!
//! `A(C)` is free on isomorphism classes of indecomposables. `B(C)` has one
//! basis vector for Vect (dimension) and Ab (rank), one per prime for FinAb and
//! one per eigenvalue for RepN. FinSet has no `B` group. Both orders are
//! componentwise nonnegativity of the difference.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::category::{CategoryId, Indecomposable, IsoClass};
use crate::error::{Error, Result};
use crate::exact::{factorize, format_rational, parse_rational, Rational};

/// A basis vector of one of the supported free groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    /// Basis of `A(C)`.
    A(Indecomposable),
    /// `B(Vect)`.
    Dimension,
    /// `B(Ab)`.
    Rank,
    /// `B(FinAb)`, one slot per prime.
    Prime(BigInt),
    /// `B(Rep(N))`, one slot per eigenvalue.
    Eigenvalue(Rational),
    /// Coordinate axis of a plain `Z^k`.
    Axis(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    A,
    B,
    Plain,
}

impl BasisKey {
    fn family(&self) -> Family {
        match self {
            BasisKey::A(_) => Family::A,
            BasisKey::Axis(_) => Family::Plain,
            _ => Family::B,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::A(part) => write!(f, "{part}"),
            BasisKey::Dimension => write!(f, "dim"),
            BasisKey::Rank => write!(f, "rank"),
            BasisKey::Prime(p) => write!(f, "p:{p}"),
            BasisKey::Eigenvalue(l) => write!(f, "ev:{}", format_rational(l)),
            BasisKey::Axis(k) => write!(f, "e{k}"),
        }
    }
}

impl FromStr for BasisKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown basis key `{s}`"));
        let key = match s {
            "pt" => BasisKey::A(Indecomposable::Point),
            "k" => BasisKey::A(Indecomposable::Line),
            "Z" => BasisKey::A(Indecomposable::Free),
            "dim" => BasisKey::Dimension,
            "rank" => BasisKey::Rank,
            _ => {
                if let Some(n) = s.strip_prefix("Z/") {
                    let n: BigInt = n.parse().map_err(|_| bad())?;
                    if n < BigInt::from(2) {
                        return Err(bad());
                    }
                    match factorize(&n).as_slice() {
                        [(prime, exponent)] => BasisKey::A(Indecomposable::Cyclic {
                            prime: prime.clone(),
                            exponent: *exponent,
                        }),
                        _ => return Err(bad()),
                    }
                } else if let Some(body) = s.strip_prefix("J(").and_then(|b| b.strip_suffix(')')) {
                    let (l, m) = body.rsplit_once(',').ok_or_else(bad)?;
                    let eigenvalue = parse_rational(l).ok_or_else(bad)?;
                    let size: usize = m.trim().parse().map_err(|_| bad())?;
                    if size == 0 {
                        return Err(bad());
                    }
                    BasisKey::A(Indecomposable::Jordan { eigenvalue, size })
                } else if let Some(p) = s.strip_prefix("p:") {
                    let p: BigInt = p.parse().map_err(|_| bad())?;
                    if !p.is_positive() || factorize(&p) != vec![(p.clone(), 1)] {
                        return Err(bad());
                    }
                    BasisKey::Prime(p)
                } else if let Some(l) = s.strip_prefix("ev:") {
                    BasisKey::Eigenvalue(parse_rational(l).ok_or_else(bad)?)
                } else if let Some(k) = s.strip_prefix('e') {
                    BasisKey::Axis(k.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(key)
    }
}

/// A finitely supported integer combination of basis vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    coeffs: BTreeMap<BasisKey, i64>,
}

impl GroupElem {
    pub fn zero() -> Self {
        GroupElem::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        GroupElem::from_pairs([(key, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (BasisKey, i64)>) -> Self {
        let mut e = GroupElem::zero();
        for (k, v) in pairs {
            e.add_to(k, v);
        }
        e
    }

    /// Element of `Z^k` with the given coordinates.
    pub fn from_axes(values: &[i64]) -> Self {
        GroupElem::from_pairs(
            values
                .iter()
                .enumerate()
                .map(|(k, v)| (BasisKey::Axis(k), *v)),
        )
    }

    pub fn add_to(&mut self, key: BasisKey, v: i64) {
        if v == 0 {
            return;
        }
        let entry = self.coeffs.entry(key.clone()).or_insert(0);
        *entry += v;
        if *entry == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn get(&self, key: &BasisKey) -> i64 {
        self.coeffs.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &i64)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &GroupElem) -> GroupElem {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_to(k.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &GroupElem) -> GroupElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElem {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> GroupElem {
        GroupElem::from_pairs(self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// All coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|v| *v >= 0)
    }

    /// `self ⪯ other`. Fails if the two elements use bases of different groups.
    pub fn leq(&self, other: &GroupElem) -> Result<bool> {
        let mut families = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(BasisKey::family);
        if let Some(first) = families.next() {
            if families.any(|f| f != first) {
                return Err(Error::Mismatch(
                    "compared elements of different Grothendieck groups".into(),
                ));
            }
        }
        Ok(other.sub(self).is_nonnegative())
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.coeffs.iter().enumerate() {
            let sign = if *v < 0 { "−" } else { "" };
            let sep = match (n, *v < 0) {
                (0, _) => sign.to_string(),
                (_, true) => " − ".to_string(),
                (_, false) => " + ".to_string(),
            };
            let m = v.unsigned_abs();
            if m == 1 {
                write!(f, "{sep}[{k}]")?;
            } else {
                write!(f, "{sep}{m}[{k}]")?;
            }
        }
        Ok(())
    }
}

/// Which group a diagram takes values in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupTag {
    A(CategoryId),
    B(CategoryId),
    /// `Z^k`, used for testing the inversion formulas.
    Free,
}

impl GroupTag {
    pub fn category(&self) -> Option<&CategoryId> {
        match self {
            GroupTag::A(c) | GroupTag::B(c) => Some(c),
            GroupTag::Free => None,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::A(c) => write!(f, "A({c})"),
            GroupTag::B(c) => write!(f, "B({c})"),
            GroupTag::Free => write!(f, "Z^k"),
        }
    }
}

/// Class of an object in `A(C)`.
pub fn a_class(c: &IsoClass) -> GroupElem {
    GroupElem::from_pairs(
        c.summands()
            .iter()
            .map(|(part, m)| (BasisKey::A(part.clone()), *m as i64)),
    )
}

fn b_key(part: &Indecomposable) -> (BasisKey, i64) {
    match part {
        Indecomposable::Line => (BasisKey::Dimension, 1),
        Indecomposable::Free => (BasisKey::Rank, 1),
        Indecomposable::Cyclic { prime, exponent } => {
            (BasisKey::Prime(prime.clone()), *exponent as i64)
        }
        Indecomposable::Jordan { eigenvalue, size } => {
            (BasisKey::Eigenvalue(eigenvalue.clone()), *size as i64)
        }
        Indecomposable::Point => unreachable!("FinSet has no B group"),
    }
}

fn no_b_group(category: &CategoryId) -> Error {
    Error::NoBGroup {
        category: category.to_string(),
    }
}

/// Class of an object in `B(C)`.
///
/// In Ab only the free rank survives; in FinAb `Z/p^m` counts `m` times at `p`.
pub fn b_class(c: &IsoClass) -> Result<GroupElem> {
    let category = c.category();
    if !category.is_abelian() {
        return Err(no_b_group(category));
    }
    let mut e = GroupElem::zero();
    for (part, m) in c.summands() {
        if *category == CategoryId::Ab && matches!(part, Indecomposable::Cyclic { .. }) {
            continue;
        }
        let (key, w) = b_key(part);
        e.add_to(key, w * *m as i64);
    }
    Ok(e)
}

/// The quotient map `π : A(C) → B(C)`.
pub fn pi(category: &CategoryId, x: &GroupElem) -> Result<GroupElem> {
    if !category.is_abelian() {
        return Err(no_b_group(category));
    }
    let mut e = GroupElem::zero();
    for (key, v) in x.iter() {
        let BasisKey::A(part) = key else {
            return Err(Error::Mismatch(format!(
                "{key} is not a basis vector of A(C)"
            )));
        };
        if *category == CategoryId::Ab && matches!(part, Indecomposable::Cyclic { .. }) {
            continue;
        }
        let (k, w) = b_key(part);
        e.add_to(k, w * v);
    }
    Ok(e)
}

/// `x ⪯ y` in either group.
pub fn leq(x: &GroupElem, y: &GroupElem) -> Result<bool> {
    x.leq(y)
}

/// Sum of the class of `Z/n` over its primary parts, for callers that build
/// elements directly from cyclic orders.
pub fn cyclic_a_class(n: &BigInt) -> GroupElem {
    if n.is_one() {
        return GroupElem::zero();
    }
    GroupElem::from_pairs(
        factorize(n)
            .into_iter()
            .map(|(prime, exponent)| (BasisKey::A(Indecomposable::Cyclic { prime, exponent }), 1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{AbGroup, Obj};
    use crate::exact::{jordan_matrix, Field};
    use proptest::prelude::*;

    fn cyc(p: i64, m: u32) -> Indecomposable {
        Indecomposable::Cyclic {
            prime: p.into(),
            exponent: m,
        }
    }

    #[test]
    fn identity_object_is_zero() {
        assert!(a_class(&IsoClass::empty(CategoryId::Ab)).is_zero());
    }

    #[test]
    fn free_plus_cyclic() {
        let g = Obj::ab(AbGroup::new(1, &[4.into()])).iso_class().unwrap();
        let expected = GroupElem::from_pairs([
            (BasisKey::A(Indecomposable::Free), 1),
            (BasisKey::A(cyc(2, 2)), 1),
        ]);
        assert_eq!(a_class(&g), expected);
    }

    #[test]
    fn b_classes() {
        let g = Obj::ab(AbGroup::new(2, &[9.into()])).iso_class().unwrap();
        assert_eq!(
            b_class(&g).unwrap(),
            GroupElem::from_pairs([(BasisKey::Rank, 2)])
        );
        let h = Obj::finab(AbGroup::cyclic(8)).unwrap().iso_class().unwrap();
        assert_eq!(
            b_class(&h).unwrap(),
            GroupElem::from_pairs([(BasisKey::Prime(2.into()), 3)])
        );
        let f = Field::Rationals;
        let l = Rational::from_integer(7.into());
        let j = Obj::repn(&f, jordan_matrix(&f, &[(l.clone(), 3)])).unwrap();
        assert_eq!(
            b_class(&j.iso_class().unwrap()).unwrap(),
            GroupElem::from_pairs([(BasisKey::Eigenvalue(l), 3)])
        );
        assert!(matches!(
            b_class(&IsoClass::empty(CategoryId::FinSet)),
            Err(Error::NoBGroup { .. })
        ));
    }

    #[test]
    fn orders() {
        let z2 = GroupElem::basis(BasisKey::A(cyc(2, 1)));
        let z4 = GroupElem::basis(BasisKey::A(cyc(2, 2)));
        assert!(z2.leq(&z2).unwrap());
        assert!(!z2.leq(&z4).unwrap());
        let cat = CategoryId::FinAb;
        assert!(pi(&cat, &z2).unwrap().leq(&pi(&cat, &z4).unwrap()).unwrap());
        assert!(z2.leq(&GroupElem::basis(BasisKey::Rank)).is_err());
    }

    #[test]
    fn key_strings_roundtrip() {
        for s in [
            "pt", "k", "Z", "Z/4", "Z/27", "J(1/2,3)", "J(-1,1)", "dim", "rank", "p:2", "ev:-3/4",
            "e0",
        ] {
            let k: BasisKey = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        for s in ["Z/6", "Z/1", "p:4", "J(1,0)", "foo"] {
            assert!(s.parse::<BasisKey>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_signed() {
        let e = GroupElem::from_pairs([
            (BasisKey::A(Indecomposable::Free), 1),
            (BasisKey::A(cyc(2, 2)), -1),
        ]);
        assert_eq!(e.to_string(), "[Z] − [Z/4]");
        assert_eq!(e.neg().to_string(), "−[Z] + [Z/4]");
    }

    fn arb_elem() -> impl Strategy<Value = GroupElem> {
        prop::collection::vec(-3i64..4, 4).prop_map(|v| GroupElem::from_axes(&v))
    }

    fn arb_group() -> impl Strategy<Value = Obj> {
        (0usize..3, prop::collection::vec(2i64..10, 0..3)).prop_map(|(r, t)| {
            let t: Vec<BigInt> = t.into_iter().map(BigInt::from).collect();
            Obj::ab(AbGroup::new(r, &t))
        })
    }

    proptest! {
        #[test]
        fn translation_invariance(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(x.leq(&y).unwrap(), x.add(&z).leq(&y.add(&z)).unwrap());
        }

        #[test]
        fn pi_additive_and_monotone(a in arb_group(), b in arb_group()) {
            let cat = CategoryId::Ab;
            let (ca, cb) = (a.iso_class().unwrap(), b.iso_class().unwrap());
            let sum = a.direct_sum(&b).unwrap().iso_class().unwrap();
            prop_assert_eq!(b_class(&sum).unwrap(), b_class(&ca).unwrap().add(&b_class(&cb).unwrap()));
            let (xa, xb) = (a_class(&ca), a_class(&cb));
            if xa.leq(&xb).unwrap() {
                prop_assert!(pi(&cat, &xa).unwrap().leq(&pi(&cat, &xb).unwrap()).unwrap());
            }
            prop_assert_eq!(pi(&cat, &xa).unwrap(), b_class(&ca).unwrap());
        }
    }
}
