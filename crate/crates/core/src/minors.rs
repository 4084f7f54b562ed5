//! Quantum row and column minors.
//!
//! `[I,J]_r` expands along rows in the given order of `I`, `[I,J]_c` along
//! columns in the given order of `J`. A permuted index on the other side is
//! handled by scaling: `[I,J]_r = (-q)^{-l(J)} [I,J_ord]_r` and
//! `[I,J]_c = (-q)^{-l(I)} [I_ord,J]_c`. With both indices sorted the two
//! expansions are congruent, and permuting the expansion side reproduces the
//! same scaling modulo the Manin ideal.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{Gen, RawIndex, Tensor, Word};
use crate::error::{Error, ParseError, Result};
use crate::poly::LaurentPoly;

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Row,
    Column,
    #[default]
    Abstract,
}

/// A quantum minor `[I,J]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorSpec {
    pub rows: RawIndex,
    pub cols: RawIndex,
    pub flavor: Flavor,
}

impl MinorSpec {
    pub fn new(rows: impl Into<RawIndex>, cols: impl Into<RawIndex>) -> Result<Self> {
        Self::with_flavor(rows, cols, Flavor::Abstract)
    }

    pub fn with_flavor(
        rows: impl Into<RawIndex>,
        cols: impl Into<RawIndex>,
        flavor: Flavor,
    ) -> Result<Self> {
        let m = Self {
            rows: rows.into(),
            cols: cols.into(),
            flavor,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.rows.is_empty() || self.rows.len() != self.cols.len() {
            return Err(Error::SizeMismatch(format!(
                "minor needs |rows| = |cols| >= 1, got {} and {}",
                self.rows.len(),
                self.cols.len()
            )));
        }
        self.rows.require_distinct()?;
        self.cols.require_distinct()
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_sorted(&self) -> bool {
        self.rows.is_strictly_increasing() && self.cols.is_strictly_increasing()
    }

    pub fn max_index(&self) -> u32 {
        self.rows
            .0
            .iter()
            .chain(&self.cols.0)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn check(&self, n: u32) -> Result<()> {
        self.rows.check(n)?;
        self.cols.check(n)
    }

    /// Free-algebra representative: column expansion for the column flavor,
    /// row expansion otherwise.
    pub fn to_tensor(&self) -> Tensor {
        match self.flavor {
            Flavor::Column => col_minor_unchecked(&self.rows, &self.cols),
            _ => row_minor_unchecked(&self.rows, &self.cols),
        }
    }

    pub fn abstracted(&self) -> MinorSpec {
        MinorSpec {
            flavor: Flavor::Abstract,
            ..self.clone()
        }
    }

    pub fn to_latex(&self) -> String {
        format!("[{},{}]", self.rows.compact(), self.cols.compact())
    }

    /// Short form `[34,13]` when every index is a single digit.
    pub fn compact(&self) -> String {
        format!("[{},{}]", self.rows.compact(), self.cols.compact())
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.rows, self.cols)
    }
}

impl FromStr for MinorSpec {
    type Err = ParseError;

    /// Parses `[3 4|1 3]`, optionally followed by `_r` or `_c`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        let (body, flavor) = if let Some(b) = s.strip_suffix("_r") {
            (b, Flavor::Row)
        } else if let Some(b) = s.strip_suffix("_c") {
            (b, Flavor::Column)
        } else {
            (s, Flavor::Abstract)
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(format!("minor `{s}` must look like [r1 r2|c1 c2]")))?;
        let (r, c) = inner
            .split_once('|')
            .ok_or_else(|| ParseError::new(format!("minor `{s}` is missing `|`")))?;
        let parse_idx = |part: &str| -> Result<RawIndex, ParseError> {
            part.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| ParseError::new(format!("bad index `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(RawIndex)
        };
        MinorSpec::with_flavor(parse_idx(r)?, parse_idx(c)?, flavor)
            .map_err(|e| ParseError::new(e.to_string()))
    }
}

impl Serialize for MinorSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MinorSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a product such as `[3 4|1 3][1 2|2 4]`.
pub fn parse_product(s: &str) -> Result<Vec<MinorSpec>, ParseError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let end = rest
            .find(']')
            .ok_or_else(|| ParseError::new(format!("unterminated minor in `{s}`")))?;
        let mut stop = end + 1;
        if rest[stop..].starts_with("_r") || rest[stop..].starts_with("_c") {
            stop += 2;
        }
        out.push(rest[..stop].parse()?);
        rest = rest[stop..].trim_start();
    }
    Ok(out)
}

fn check_pair(i: &RawIndex, j: &RawIndex) -> Result<()> {
    if i.len() != j.len() {
        return Err(Error::SizeMismatch(format!(
            "|I| = {} but |J| = {}",
            i.len(),
            j.len()
        )));
    }
    i.require_distinct()?;
    j.require_distinct()
}

fn row_minor_unchecked(i: &RawIndex, j: &RawIndex) -> Tensor {
    let cols = j.sorted();
    let mut out = Tensor::zero();
    for perm in cols.0.iter().copied().permutations(cols.len()) {
        let l = RawIndex(perm.clone()).inversions() as i32;
        let w = Word(
            i.0.iter()
                .zip(&perm)
                .map(|(&r, &c)| Gen::new(r, c))
                .collect(),
        );
        out.add_term(w, &LaurentPoly::neg_q_pow(-l));
    }
    out.scale(&LaurentPoly::neg_q_pow(-(j.inversions() as i32)))
}

fn col_minor_unchecked(i: &RawIndex, j: &RawIndex) -> Tensor {
    let rows = i.sorted();
    let mut out = Tensor::zero();
    for perm in rows.0.iter().copied().permutations(rows.len()) {
        let l = RawIndex(perm.clone()).inversions() as i32;
        let w = Word(
            perm.iter()
                .zip(&j.0)
                .map(|(&r, &c)| Gen::new(r, c))
                .collect(),
        );
        out.add_term(w, &LaurentPoly::neg_q_pow(-l));
    }
    out.scale(&LaurentPoly::neg_q_pow(-(i.inversions() as i32)))
}

/// `Σ_σ (-q)^{-l(σ)} a_{i_1 σ(i_1)} ... a_{i_r σ(i_r)}` over bijections onto `J`.
pub fn row_minor(i: &RawIndex, j: &RawIndex) -> Result<Tensor> {
    check_pair(i, j)?;
    Ok(row_minor_unchecked(i, j))
}

/// `Σ_σ (-q)^{-l(σ)} a_{σ(j_1) j_1} ... a_{σ(j_r) j_r}` over bijections onto `I`.
pub fn col_minor(i: &RawIndex, j: &RawIndex) -> Result<Tensor> {
    check_pair(i, j)?;
    Ok(col_minor_unchecked(i, j))
}

/// Number of inversions of a multiindex with distinct entries.
pub fn inversion_length(s: &RawIndex) -> Result<usize> {
    s.require_distinct()?;
    Ok(s.inversions())
}

/// `(c, m_ord)` with `m ≡ c * m_ord` and both indices of `m_ord` sorted.
pub fn sort_minor(m: &MinorSpec) -> (LaurentPoly, MinorSpec) {
    let l = (m.rows.inversions() + m.cols.inversions()) as i32;
    let sorted = MinorSpec {
        rows: m.rows.sorted(),
        cols: m.cols.sorted(),
        flavor: m.flavor,
    };
    (LaurentPoly::neg_q_pow(-l), sorted)
}

/// Image under the antiendomorphism `S`:
/// `S([I,J]) = (-q)^{ΣJ - ΣI} [{1..n}∖I, {1..n}∖J]`.
pub fn antipode_image(m: &MinorSpec, n: u32) -> Result<(LaurentPoly, MinorSpec)> {
    m.check(n)?;
    if !m.is_sorted() {
        return Err(Error::Precondition(format!(
            "antipode_image needs sorted indices, got {m}"
        )));
    }
    if m.size() >= n as usize {
        return Err(Error::Precondition(format!(
            "{m} is full size in n = {n}, its complement is empty"
        )));
    }
    let all: Vec<u32> = (1..=n).collect();
    let e = m.cols.sum() - m.rows.sum();
    let image = MinorSpec {
        rows: m.rows.complement_in(&all),
        cols: m.cols.complement_in(&all),
        flavor: m.flavor,
    };
    Ok((LaurentPoly::neg_q_pow(e as i32), image))
}

/// Product of minor representatives, in order.
pub fn product_tensor(ms: &[&MinorSpec]) -> Tensor {
    ms.iter()
        .fold(Tensor::one(), |acc, m| &acc * &m.to_tensor())
}
