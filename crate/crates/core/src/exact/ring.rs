//! Coefficient rings: the integers and the fields `F_p` and `Q`.
//!
//! Every ring used by the library is Euclidean, which is all the Smith normal
//! form needs. Field elements are stored as [`BigRational`] values; over `F_p`
//! they are always kept as integers in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for field elements and filtration values.
pub type Rational = BigRational;

/// A Euclidean domain with exact arithmetic.
pub trait EuclideanRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Quotient and remainder with `size(r) < size(b)` or `r = 0`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Euclidean size used for pivot selection.
    fn size(&self, a: &Self::Elem) -> BigInt;

    /// A unit `u` (and its inverse) such that `u * a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }
}

/// The ring of integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl EuclideanRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // floor division keeps |r| < |b|
        a.div_mod_floor(b)
    }
    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn normalizing_unit(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
}

/// A coefficient field: a prime field `F_p` or the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u64),
    Rationals,
}

impl Field {
    /// The prime field `F_p`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidArgument(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    /// Maps a rational number into the field.
    pub fn element(&self, x: &Rational) -> Result<Rational> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "{x} has a denominator divisible by {p}"
                    )));
                }
                let inv = mod_inverse(&den, &p).expect("nonzero residue mod a prime");
                Ok(Rational::from_integer((x.numer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, v: &BigInt) -> Rational {
        self.reduce(Rational::from_integer(v.clone()))
    }

    fn reduce(&self, x: Rational) -> Rational {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                debug_assert!(x.is_integer());
                Rational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                mod_inverse(&a.to_integer(), &p).map(Rational::from_integer)
            }
        }
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Rational {
        let inv = self.inv(b).expect("division by zero in field");
        self.mul(a, &inv)
    }

    /// All elements of a prime field; `None` for `Q`.
    pub fn elements(&self) -> Option<Vec<Rational>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(|v| Rational::from_integer(v.into())).collect()),
            Field::Rationals => None,
        }
    }

    /// Textual coefficient tag, `Q` or `Fp:<p>`.
    pub fn tag(&self) -> String {
        match self {
            Field::Prime(p) => format!("Fp:{p}"),
            Field::Rationals => "Q".to_string(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl EuclideanRing for Field {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a + b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a - b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a * b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        self.reduce(-a)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn div_rem(&self, a: &Rational, b: &Rational) -> (Rational, Rational) {
        (self.div(a, b), Rational::zero())
    }
    fn size(&self, a: &Rational) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        }
    }
    fn normalizing_unit(&self, a: &Rational) -> (Rational, Rational) {
        match self.inv(a) {
            Some(inv) => (inv, a.clone()),
            None => (Rational::one(), Rational::one()),
        }
    }
    fn from_i64(&self, v: i64) -> Rational {
        self.reduce(Rational::from_integer(v.into()))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in increasing order.
///
/// Panics on zero. Sign is ignored.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.abs();
    let mut out = Vec::new();
    if let Some(small) = n.to_u64() {
        let mut m = small;
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            if m % d == 0 {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                out.push((BigInt::from(d), e));
            }
            d += 1;
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut e = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Parses `p/q`, an integer, or a decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_digits = int.trim().trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() && int_digits.is_empty() {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().ok()?
        };
        let value = Rational::new(whole * &scale + frac_val, scale);
        return Some(if negative { -value } else { value });
    }
    let v: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(v))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
