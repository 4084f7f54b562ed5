//! The free algebra `k_q<a_ij>`: generators, words, tensors, multi-indices,
//! and the row/column actions of the symmetric group on monomial tensors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::poly::LaurentPoly;

/// A generator `a_ij`. Ordered lexicographically by `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub row: u32,
    pub col: u32,
}

impl Gen {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    pub fn check(&self, n: u32) -> Result<()> {
        for v in [self.row, self.col] {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { value: v, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "a{}{}", self.row, self.col)
        } else {
            write!(f, "a_{{{},{}}}", self.row, self.col)
        }
    }
}

impl FromStr for Gen {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::new(format!("bad generator `{s}`"));
        let body = s.trim().strip_prefix(['a', 'x']).ok_or_else(bad)?;
        if let Some(inner) = body.strip_prefix("_{").and_then(|b| b.strip_suffix('}')) {
            let (r, c) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Gen::new(
                r.trim().parse().map_err(|_| bad())?,
                c.trim().parse().map_err(|_| bad())?,
            ));
        }
        let digits: Vec<u32> = body
            .chars()
            .map(|c| c.to_digit(10))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        match digits.as_slice() {
            [r, c] => Ok(Gen::new(*r, *c)),
            _ => Err(bad()),
        }
    }
}

/// A monomial in the free algebra. The empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Self(pairs.iter().map(|&(r, c)| Gen::new(r, c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn rows(&self) -> Vec<u32> {
        self.0.iter().map(|g| g.row).collect()
    }

    pub fn cols(&self) -> Vec<u32> {
        self.0.iter().map(|g| g.col).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// True when the letters are sorted nondecreasingly, i.e. the word is a
    /// normal-form monomial.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::unit());
        }
        s.split('.')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// A finite `k_q`-linear combination of words. Zero coefficients are never
/// stored; iteration follows the lexicographic word order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(LaurentPoly::one(), w)
    }

    pub fn monomial(c: LaurentPoly, w: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(w, &c);
        t
    }

    pub fn generator(row: u32, col: u32) -> Self {
        Self::from_word(Word(vec![Gen::new(row, col)]))
    }

    /// `word_1 * word_2 * ...` for a list of `(row, col)` letters.
    pub fn word(pairs: &[(u32, u32)]) -> Self {
        Self::from_word(Word::from_pairs(pairs))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains_key(w)
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (w, d) in other.iter() {
            self.add_term(w.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(self, c);
        out
    }

    /// Removes and returns the lexicographically largest term.
    pub fn pop_last(&mut self) -> Option<(Word, LaurentPoly)> {
        self.terms.pop_last()
    }

    /// Common word length, or `None` for zero or inhomogeneous tensors.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Applies `f` letter-wise to every word, merging coincident images.
    pub fn map_letters(&self, f: impl Fn(Gen) -> Gen) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in self.iter() {
            out.add_term(Word(w.0.iter().map(|&g| f(g)).collect()), c);
        }
        out
    }

    /// Largest row or column index occurring, 0 for the zero tensor.
    pub fn max_index(&self) -> u32 {
        self.words()
            .flat_map(|w| w.0.iter().map(|g| g.row.max(g.col)))
            .max()
            .unwrap_or(0)
    }

    pub fn to_latex(&self) -> String {
        fmt_tensor(self, true)
    }
}

fn fmt_tensor(t: &Tensor, latex: bool) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (w, c)) in t.iter().enumerate() {
        let terms: Vec<_> = c.terms().collect();
        let single_neg = terms.len() == 1 && terms[0].1 < &num_bigint::BigInt::from(0);
        let mag = if single_neg { -c } else { c.clone() };
        if idx > 0 {
            out.push_str(if single_neg { " - " } else { " + " });
        } else if single_neg {
            out.push('-');
        }
        let word = if latex {
            w.0.iter()
                .map(|g| format!("a_{{{}{}}}", g.row, g.col))
                .collect::<String>()
        } else {
            w.to_string()
        };
        if mag.is_one() {
            out.push_str(&word);
            continue;
        }
        let coef = if latex {
            mag.to_latex()
        } else {
            mag.to_string()
        };
        let wrap = mag.terms().count() > 1;
        let sep = if latex { "" } else { "*" };
        if wrap {
            out.push_str(&format!("({coef}){sep}{word}"));
        } else {
            out.push_str(&format!("{coef}{sep}{word}"));
        }
    }
    out
}

impl fmt::Display for Tensor {
    /// Signed sum of `coef*word` in word order, e.g.
    /// `a11.a22 - q^-1*a12.a21 + (q^-1 - q)*a21.a12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tensor(self, false))
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({self})")
    }
}

impl FromStr for Tensor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Tensor::zero());
        }
        // Split into signed summands at top-level `+`/`-` (outside parentheses
        // and not part of an exponent).
        let bytes = s.as_bytes();
        let mut depth = 0i32;
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 => {
                    let prev = s[..i].trim_end();
                    if !prev.ends_with('^') && !prev.ends_with('*') && !prev.is_empty() {
                        pieces.push(&s[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        let mut out = Tensor::zero();
        for piece in pieces {
            let piece = piece.trim();
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, piece[1..].trim()),
                Some(b'+') => (false, piece[1..].trim()),
                _ => (false, piece),
            };
            let (coef, word) = match body.rfind('*') {
                Some(pos)
                    if body[pos + 1..].trim_start().starts_with(['a', 'x'])
                        || body[pos + 1..].trim() == "1" =>
                {
                    let c = body[..pos].trim();
                    let c = c
                        .strip_prefix('(')
                        .and_then(|c| c.strip_suffix(')'))
                        .unwrap_or(c);
                    (c.parse::<LaurentPoly>()?, body[pos + 1..].parse::<Word>()?)
                }
                _ => (LaurentPoly::one(), body.parse::<Word>()?),
            };
            let coef = if neg { -coef } else { coef };
            out.add_term(word, &coef);
        }
        Ok(out)
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::one());
        out
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &-LaurentPoly::one());
        out
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&-LaurentPoly::one())
    }
}

impl Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (u, a) in self.iter() {
            for (v, b) in rhs.iter() {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

/// `a + b`.
pub fn tensor_add(a: &Tensor, b: &Tensor) -> Tensor {
    a + b
}

/// Concatenation product extended bilinearly.
pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    a * b
}

/// A sequence of row or column indices, not necessarily sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawIndex(pub Vec<u32>);

impl RawIndex {
    pub fn new(v: impl Into<Vec<u32>>) -> Self {
        Self(v.into())
    }

    /// `1..=m`.
    pub fn range(lo: u32, hi: u32) -> Self {
        Self((lo..=hi).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: u32) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn has_distinct_entries(&self) -> bool {
        let mut s = self.0.clone();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    }

    pub fn sorted(&self) -> RawIndex {
        let mut s = self.0.clone();
        s.sort_unstable();
        RawIndex(s)
    }

    /// Number of pairs out of increasing order.
    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// Entries of `alphabet` not in `self`, in alphabet order.
    pub fn complement_in(&self, alphabet: &[u32]) -> RawIndex {
        RawIndex(
            alphabet
                .iter()
                .copied()
                .filter(|v| !self.contains(*v))
                .collect(),
        )
    }

    /// Entries common to both, in increasing order.
    pub fn intersection(&self, other: &RawIndex) -> RawIndex {
        let mut v: Vec<u32> = self
            .0
            .iter()
            .copied()
            .filter(|x| other.contains(*x))
            .collect();
        v.sort_unstable();
        RawIndex(v)
    }

    /// Sorted union without repeats.
    pub fn union(&self, other: &RawIndex) -> RawIndex {
        let mut v: Vec<u32> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        RawIndex(v)
    }

    /// Entries of `self` not in `other`, order preserved.
    pub fn minus(&self, other: &RawIndex) -> RawIndex {
        RawIndex(
            self.0
                .iter()
                .copied()
                .filter(|x| !other.contains(*x))
                .collect(),
        )
    }

    pub fn concat(&self, other: &RawIndex) -> RawIndex {
        RawIndex(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> RawIndex {
        RawIndex(self.0.iter().map(|&x| f(x)).collect())
    }

    pub fn check(&self, n: u32) -> Result<()> {
        for &v in &self.0 {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { value: v, n });
            }
        }
        Ok(())
    }

    pub fn require_distinct(&self) -> Result<()> {
        if self.has_distinct_entries() {
            Ok(())
        } else {
            Err(Error::RepeatedEntries(self.to_string()))
        }
    }

    /// Compact form `(3412)` when every entry is a single digit.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&v| v < 10) {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for RawIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl From<&[u32]> for RawIndex {
    fn from(v: &[u32]) -> Self {
        RawIndex(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for RawIndex {
    fn from(v: [u32; N]) -> Self {
        RawIndex(v.to_vec())
    }
}

/// A permutation of `1..=n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let idx = RawIndex(images.clone());
        idx.check(n)?;
        idx.require_distinct()?;
        Ok(Perm(images))
    }

    /// The transposition `(a, b)` in `S_n`.
    pub fn transposition(n: usize, a: u32, b: u32) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of `x`; values beyond the degree are fixed.
    pub fn apply(&self, x: u32) -> u32 {
        if x >= 1 && (x as usize) <= self.0.len() {
            self.0[x as usize - 1]
        } else {
            x
        }
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let n = self.degree().max(other.degree());
        Perm((1..=n as u32).map(|x| self.apply(other.apply(x))).collect())
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }
}

fn check_lengths(t: &Tensor, n0: usize) -> Result<()> {
    for w in t.words() {
        if w.len() != n0 {
            return Err(Error::WordLength {
                expected: n0,
                found: w.len(),
            });
        }
    }
    Ok(())
}

/// Replaces every row index `p` by `sigma(p)`.
pub fn row_action(sigma: &Perm, t: &Tensor) -> Result<Tensor> {
    check_lengths(t, sigma.degree())?;
    Ok(t.map_letters(|g| Gen::new(sigma.apply(g.row), g.col)))
}

/// Replaces every column index `q` by `sigma(q)`.
pub fn column_action(sigma: &Perm, t: &Tensor) -> Result<Tensor> {
    check_lengths(t, sigma.degree())?;
    Ok(t.map_letters(|g| Gen::new(g.row, sigma.apply(g.col))))
}

/// `(K, K')` with `K'` the increasing complement of `K` in `1..=n0`.
pub fn order_target(k: &RawIndex, n0: usize) -> RawIndex {
    let all: Vec<u32> = (1..=n0 as u32).collect();
    k.concat(&k.complement_in(&all))
}

/// Whether every word has row sequence `(K, K')`.
pub fn is_in_row_order(t: &Tensor, k: &RawIndex) -> bool {
    t.words().all(|w| w.rows() == order_target(k, w.len()).0)
}

/// Whether every word has column sequence `(L, L')`.
pub fn is_in_column_order(t: &Tensor, l: &RawIndex) -> bool {
    t.words().all(|w| w.cols() == order_target(l, w.len()).0)
}
