//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::FieldMatrix;
use super::ring::{factorize, format_rational, EuclideanRing, Field, Rational};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn constant(field: &Field, c: Rational) -> Self {
        Poly::new(field, vec![c])
    }

    /// `x - a`
    pub fn linear(field: &Field, a: &Rational) -> Self {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn x(field: &Field) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::new(f, vec![]);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = f.inv(&d.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = f.mul(rem.last().unwrap(), &lead_inv);
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dj));
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(&self.leading()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: BigInt, m: &Poly) -> Poly {
        let f = &self.field;
        let mut base = self.div_rem(m).1;
        let mut acc = Poly::constant(f, f.one()).div_rem(m).1;
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul(&base).div_rem(m).1;
            }
            e /= &two;
            if e.is_positive() {
                base = base.mul(&base).div_rem(m).1;
            }
        }
        acc
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn characteristic(field: &Field, a: &FieldMatrix) -> Poly {
        let n = a.rows();
        assert_eq!(
            n,
            a.cols(),
            "characteristic polynomial of a non-square matrix"
        );
        let mut h = a.clone();
        // similarity reduction to upper Hessenberg form
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                h.swap_rows(piv, j + 1);
                h.swap_cols(piv, j + 1);
            }
            let inv = field.inv(h.get(j + 1, j)).unwrap();
            for k in j + 2..n {
                let u = field.mul(h.get(k, j), &inv);
                if u.is_zero() {
                    continue;
                }
                let neg = field.neg(&u);
                h.row_axpy(field, k, j + 1, &neg);
                h.col_axpy(field, j + 1, k, &u);
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{k=i+1}^{m} h_{k,k-1}) p_{i-1}
        let mut p: Vec<Poly> = vec![Poly::constant(field, field.one())];
        for m in 0..n {
            let mut next = Poly::linear(field, h.get(m, m)).mul(&p[m]);
            let mut prod = field.one();
            for i in (0..m).rev() {
                prod = field.mul(&prod, h.get(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let c = field.mul(h.get(i, m), &prod);
                next = next.sub(&p[i].scale(&c));
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Roots in the field, with multiplicity, plus the root-free cofactor.
    pub fn split_roots(&self) -> (Vec<(Rational, usize)>, Poly) {
        let f = &self.field;
        let candidates: Vec<Rational> = match f {
            Field::Prime(_) => f.elements().unwrap(),
            Field::Rationals => rational_root_candidates(self),
        };
        let mut rest = self.clone();
        let mut roots = Vec::new();
        for c in candidates {
            let mut mult = 0;
            while rest.degree().unwrap_or(0) >= 1 && rest.eval(&c).is_zero() {
                rest = rest.div_rem(&Poly::linear(f, &c)).0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    /// A monic irreducible factor of a polynomial of positive degree with no roots.
    ///
    /// Over `F_p` this searches by distinct-degree factorization and, when
    /// several factors share the lowest degree, by trial division over monic
    /// candidates of that degree (bounded search). Over `Q` a root-free cubic
    /// or quadratic is irreducible; higher degrees are returned whole.
    pub fn irreducible_factor(&self) -> Poly {
        let f = &self.field;
        let g = self.monic();
        let Field::Prime(p) = f else {
            return g;
        };
        let deg = g.degree().unwrap_or(0);
        let x = Poly::x(f);
        let mut xp = x.clone();
        for d in 1..=deg / 2 {
            xp = xp.pow_mod(BigInt::from(*p), &g);
            let h = g.gcd(&xp.sub(&x));
            let hd = h.degree().unwrap_or(0);
            if hd == 0 {
                continue;
            }
            if hd == d {
                return h;
            }
            if let Some(factor) = monic_divisor_of_degree(&h, d, *p) {
                return factor;
            }
            return h;
        }
        g
    }
}

fn monic_divisor_of_degree(h: &Poly, d: usize, p: u64) -> Option<Poly> {
    let f = &h.field;
    let total = (p as u128).checked_pow(d as u32)?;
    if total > 200_000 {
        return None;
    }
    for code in 0..total {
        let mut c = Vec::with_capacity(d + 1);
        let mut rem = code;
        for _ in 0..d {
            c.push(Rational::from_integer(BigInt::from(
                (rem % p as u128) as u64,
            )));
            rem /= p as u128;
        }
        c.push(f.one());
        let cand = Poly::new(f, c);
        if h.div_rem(&cand).1.is_zero() {
            return Some(cand);
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn rational_root_candidates(poly: &Poly) -> Vec<Rational> {
    if poly.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    // clear denominators
    let lcm = poly
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        out.push(Rational::zero());
    }
    let a0 = &ints[lowest];
    let an = ints.last().unwrap();
    if ints.len() - lowest <= 1 {
        return out;
    }
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1, -1] {
                let r = Rational::new(&num * sign, den.clone());
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if abs.is_one() && i > 0 {
                String::new()
            } else {
                format_rational(&abs)
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}
