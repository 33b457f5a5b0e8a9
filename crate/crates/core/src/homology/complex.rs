use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, IntMatrix, Integers, Matrix, Rational};

/// A simplicial complex with a rational value on every simplex, closed under
/// faces, with faces never valued above their cofaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    simplices: Vec<Vec<usize>>,
    values: Vec<Rational>,
    index: HashMap<Vec<usize>, usize>,
}

fn simplex_name(s: &[usize]) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |k| {
        let mut f = s.to_vec();
        f.remove(k);
        f
    })
}

impl FilteredComplex {
    /// Validates a list of simplices. `lines[k]` is reported in errors for
    /// simplex `k`; pass `None` to number simplices from 1.
    fn build(entries: Vec<(Vec<usize>, Rational)>, lines: Option<Vec<usize>>) -> Result<Self> {
        let line_of = |k: usize| lines.as_ref().map(|l| l[k]).unwrap_or(k + 1);
        let mut index = HashMap::new();
        let mut simplices = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        for (k, (mut s, v)) in entries.into_iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Parse {
                    line: line_of(k),
                    message: "simplex has no vertices".into(),
                });
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse {
                    line: line_of(k),
                    message: format!("repeated vertex in simplex {}", simplex_name(&s)),
                });
            }
            if index.insert(s.clone(), k).is_some() {
                return Err(Error::Parse {
                    line: line_of(k),
                    message: format!("simplex {} listed twice", simplex_name(&s)),
                });
            }
            simplices.push(s);
            values.push(v);
        }
        for (k, s) in simplices.iter().enumerate() {
            for f in faces(s) {
                let Some(&fi) = index.get(&f) else {
                    return Err(Error::FaceMissing {
                        line: line_of(k),
                        simplex: simplex_name(s),
                        face: simplex_name(&f),
                    });
                };
                if values[fi] > values[k] {
                    return Err(Error::ValueInversion {
                        line: line_of(k),
                        simplex: simplex_name(s),
                        value: format_rational(&values[k]),
                        face: simplex_name(&f),
                        face_value: format_rational(&values[fi]),
                    });
                }
            }
        }
        let vertex_count = simplices.iter().filter(|s| s.len() == 1).count();
        if let Some(s) = simplices
            .iter()
            .find(|s| s.iter().any(|&v| v >= vertex_count))
        {
            return Err(Error::Parse {
                line: line_of(index[s]),
                message: format!("vertex indices must be 0..{vertex_count} without gaps"),
            });
        }
        Ok(FilteredComplex {
            simplices,
            values,
            index,
        })
    }

    pub fn new(entries: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        FilteredComplex::build(entries, None)
    }

    pub fn empty() -> Self {
        FilteredComplex {
            simplices: Vec::new(),
            values: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, simplex: &[usize]) -> Option<&Rational> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.index.get(&s).map(|&k| &self.values[k])
    }

    /// Largest simplex dimension, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Distinct values in increasing order.
    pub fn critical_values(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Smallest difference between consecutive critical values.
    pub fn min_gap(&self) -> Option<Rational> {
        self.critical_values()
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
    }

    /// Indices of the `k`-simplices, in input order.
    pub fn simplices_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| self.simplices[i].len() == k + 1)
            .collect()
    }

    /// Integer boundary matrix from `k`-chains to `(k-1)`-chains, in the orders
    /// of [`simplices_of_dim`](Self::simplices_of_dim). Zero rows for `k = 0`.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        let cols = self.simplices_of_dim(k);
        if k == 0 {
            return Matrix::zeros(&Integers, 0, cols.len());
        }
        let rows = self.simplices_of_dim(k - 1);
        let pos: HashMap<&[usize], usize> = rows
            .iter()
            .enumerate()
            .map(|(r, &i)| (self.simplices[i].as_slice(), r))
            .collect();
        let mut m = Matrix::zeros(&Integers, rows.len(), cols.len());
        for (c, &i) in cols.iter().enumerate() {
            for (d, f) in faces(&self.simplices[i]).enumerate() {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                m.set(pos[f.as_slice()], c, sign.into());
            }
        }
        m
    }

    /// Same simplices with other values; validated again.
    pub fn with_values(&self, values: Vec<Rational>) -> Result<Self> {
        if values.len() != self.simplices.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} simplices",
                values.len(),
                self.simplices.len()
            )));
        }
        FilteredComplex::new(self.simplices.iter().cloned().zip(values).collect())
    }

    /// Whether both complexes list the same simplices in the same order.
    pub fn same_simplices(&self, other: &FilteredComplex) -> bool {
        self.simplices == other.simplices
    }

    /// Serializes in the text format accepted by [`parse_filtration`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, v) in self.simplices.iter().zip(&self.values) {
            let _ = writeln!(out, "{} : {}", simplex_name(s), format_rational(v));
        }
        out
    }
}

/// Parses `v0 v1 … vk : value` lines; `#` starts a comment.
pub fn parse_filtration(text: &str) -> Result<FilteredComplex> {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (verts, value) = content
            .split_once(':')
            .ok_or_else(|| err("expected `vertices : value`".into()))?;
        let simplex = verts
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(format!("bad vertex index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let value =
            parse_rational(value).ok_or_else(|| err(format!("bad value `{}`", value.trim())))?;
        entries.push((simplex, value));
        lines.push(line);
    }
    FilteredComplex::build(entries, Some(lines))
}

/// Moves every value by a seeded offset in `[−ε, ε]` (a multiple of `ε / resolution`),
/// then raises values where needed so that faces stay below cofaces.
pub fn perturb_with_resolution(
    k: &FilteredComplex,
    epsilon: &Rational,
    seed: u64,
    resolution: u32,
) -> Result<FilteredComplex> {
    if epsilon.is_negative() {
        return Err(Error::InvalidArgument("negative perturbation".into()));
    }
    if epsilon.is_zero() || k.is_empty() {
        return Ok(k.clone());
    }
    let d = resolution.max(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = epsilon / Rational::from_integer(d.into());
    let mut values: Vec<Rational> = k
        .values
        .iter()
        .map(|v| v + &step * Rational::from_integer(rng.gen_range(-d..=d).into()))
        .collect();
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by_key(|&i| k.simplices[i].len());
    for i in order {
        for f in faces(&k.simplices[i]) {
            let fv = values[k.index[&f]].clone();
            if fv > values[i] {
                values[i] = fv;
            }
        }
    }
    k.with_values(values)
}

/// [`perturb_with_resolution`] with offsets in steps of `ε / 4`.
pub fn perturb(k: &FilteredComplex, epsilon: &Rational, seed: u64) -> Result<FilteredComplex> {
    perturb_with_resolution(k, epsilon, seed, 4)
}
