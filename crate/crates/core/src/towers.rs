//! Standard row and column towers and intertwining orders.
//!
//! Towers live in an ordered alphabet. All rules are stated on ranks
//! `1..=n` within the alphabet and mapped back to letters afterwards, so a
//! tower inside `{2,3,4,5}` has the same shape as one inside `{1,2,3,4}`.

use crate::algebra::RawIndex;
use crate::error::{Error, Result};

/// A finite ordered set of indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<u32>);

impl Alphabet {
    /// Sorts and dedups the given letters.
    pub fn new(mut letters: Vec<u32>) -> Self {
        letters.sort_unstable();
        letters.dedup();
        Self(letters)
    }

    /// `{1..=n}`.
    pub fn standard(n: u32) -> Self {
        Self((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// 1-based rank of `x`.
    pub fn rank(&self, x: u32) -> Option<u32> {
        self.0.binary_search(&x).ok().map(|p| p as u32 + 1)
    }

    /// Letter of 1-based rank `r`.
    pub fn letter(&self, r: u32) -> u32 {
        self.0[r as usize - 1]
    }

    pub fn to_ranks(&self, idx: &RawIndex) -> Result<RawIndex> {
        idx.0
            .iter()
            .map(|&x| {
                self.rank(x).ok_or_else(|| {
                    Error::Precondition(format!("{x} is not in the alphabet {:?}", self.0))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(RawIndex)
    }

    pub fn from_ranks(&self, idx: &RawIndex) -> RawIndex {
        idx.map(|r| self.letter(r))
    }

    /// Letters not in `idx`, increasing.
    pub fn complement(&self, idx: &RawIndex) -> RawIndex {
        idx.complement_in(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerKind {
    Row,
    Column,
}

/// One link `index --σ--> next` of a tower, with `σ = (lo, hi)` swapping two
/// consecutive letters of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub index: RawIndex,
    pub transposition: (u32, u32),
}

/// A standard tower from `start` to `base`. `steps[0].index == start`, and
/// applying each step's transposition to its index gives the next index.
/// Row towers descend lexicographically to the minimal index, column towers
/// ascend to the maximal one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub kind: TowerKind,
    pub ambient: Alphabet,
    pub start: RawIndex,
    pub base: RawIndex,
    pub steps: Vec<TowerStep>,
}

impl Tower {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Indices `start = I_N, I_{N-1}, ..., I_0 = base`.
    pub fn indices(&self) -> Vec<RawIndex> {
        let mut v: Vec<RawIndex> = self.steps.iter().map(|s| s.index.clone()).collect();
        v.push(self.base.clone());
        v
    }

    /// Transpositions `σ_1, ..., σ_N` in build order, where `σ_s` links
    /// `I_s` to `I_{s-1}`.
    pub fn stage_transpositions(&self) -> Vec<(u32, u32)> {
        self.steps.iter().rev().map(|s| s.transposition).collect()
    }
}

/// Applies the transposition `(a, b)` entrywise.
pub fn swap_letters(idx: &RawIndex, (a, b): (u32, u32)) -> RawIndex {
    idx.map(|x| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    })
}

fn require_increasing(idx: &RawIndex) -> Result<()> {
    if idx.is_strictly_increasing() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "index ({idx}) is not strictly increasing"
        )))
    }
}

fn row_rule(ranks: &[u32]) -> Option<(u32, u32)> {
    let mut prev = 0;
    for &i in ranks {
        if i - prev > 1 {
            return Some((i - 1, i));
        }
        prev = i;
    }
    None
}

fn col_rule(ranks: &[u32], n: u32) -> Option<(u32, u32)> {
    let s = ranks.len() as u32;
    (0..ranks.len()).rev().find_map(|p| {
        let j = ranks[p];
        (j < n - s + p as u32 + 1).then_some((j, j + 1))
    })
}

fn map_pair(a: &Alphabet, (x, y): (u32, u32)) -> (u32, u32) {
    (a.letter(x), a.letter(y))
}

/// Standard row transposition of `I` inside `ambient`.
pub fn standard_row_transposition_in(idx: &RawIndex, ambient: &Alphabet) -> Result<(u32, u32)> {
    require_increasing(idx)?;
    let ranks = ambient.to_ranks(idx)?;
    row_rule(&ranks.0)
        .map(|p| map_pair(ambient, p))
        .ok_or_else(|| Error::AlreadyExtremal(format!("({idx})")))
}

/// Standard row transposition of `I` inside `{1..}`.
pub fn standard_row_transposition(idx: &RawIndex) -> Result<(u32, u32)> {
    let top = idx.0.iter().copied().max().unwrap_or(0);
    standard_row_transposition_in(idx, &Alphabet::standard(top))
}

/// Standard column transposition of `J` inside `ambient`.
pub fn standard_col_transposition_in(idx: &RawIndex, ambient: &Alphabet) -> Result<(u32, u32)> {
    require_increasing(idx)?;
    let ranks = ambient.to_ranks(idx)?;
    col_rule(&ranks.0, ambient.len() as u32)
        .map(|p| map_pair(ambient, p))
        .ok_or_else(|| Error::AlreadyExtremal(format!("({idx})")))
}

/// Standard column transposition of `J` inside `{1..n}`.
pub fn standard_col_transposition(idx: &RawIndex, n: u32) -> Result<(u32, u32)> {
    standard_col_transposition_in(idx, &Alphabet::standard(n))
}

fn build(idx: &RawIndex, ambient: &Alphabet, kind: TowerKind) -> Result<Tower> {
    require_increasing(idx)?;
    let mut ranks = ambient.to_ranks(idx)?;
    let n = ambient.len() as u32;
    if ranks.len() > ambient.len() {
        return Err(Error::SizeMismatch(format!(
            "({idx}) does not fit in the alphabet"
        )));
    }
    let mut steps = Vec::new();
    loop {
        let rule = match kind {
            TowerKind::Row => row_rule(&ranks.0),
            TowerKind::Column => col_rule(&ranks.0, n),
        };
        let Some(sigma) = rule else { break };
        steps.push(TowerStep {
            index: ambient.from_ranks(&ranks),
            transposition: map_pair(ambient, sigma),
        });
        ranks = swap_letters(&ranks, sigma);
    }
    Ok(Tower {
        kind,
        ambient: ambient.clone(),
        start: idx.clone(),
        base: ambient.from_ranks(&ranks),
        steps,
    })
}

/// Tower from `I` down to the first `|I|` letters of `ambient`.
pub fn standard_row_tower(idx: &RawIndex, ambient: &Alphabet) -> Result<Tower> {
    build(idx, ambient, TowerKind::Row)
}

/// Tower from `J` up to the last `|J|` letters of `ambient`.
pub fn standard_col_tower(idx: &RawIndex, ambient: &Alphabet) -> Result<Tower> {
    build(idx, ambient, TowerKind::Column)
}

/// Row intertwining order, `Σ (i_p - p)` on ranks.
pub fn intr_in(idx: &RawIndex, ambient: &Alphabet) -> Result<usize> {
    require_increasing(idx)?;
    let ranks = ambient.to_ranks(idx)?;
    Ok(ranks
        .0
        .iter()
        .enumerate()
        .map(|(p, &i)| (i as usize) - (p + 1))
        .sum())
}

/// Row intertwining order in the standard alphabet.
pub fn intr(idx: &RawIndex) -> Result<usize> {
    let top = idx.0.iter().copied().max().unwrap_or(0);
    intr_in(idx, &Alphabet::standard(top))
}

/// Column intertwining order, `Σ (n - s + p - j_p)` on ranks.
pub fn intc_in(idx: &RawIndex, ambient: &Alphabet) -> Result<usize> {
    require_increasing(idx)?;
    let ranks = ambient.to_ranks(idx)?;
    let (n, s) = (ambient.len(), ranks.len());
    if s > n {
        return Err(Error::SizeMismatch(format!(
            "({idx}) does not fit in the alphabet"
        )));
    }
    Ok(ranks
        .0
        .iter()
        .enumerate()
        .map(|(p, &j)| n - s + p + 1 - j as usize)
        .sum())
}

/// Column intertwining order in `{1..n}`.
pub fn intc(idx: &RawIndex, n: u32) -> Result<usize> {
    intc_in(idx, &Alphabet::standard(n))
}

/// `intr(I) + intc(J)` in `{1..n}`.
pub fn int_total(i: &RawIndex, j: &RawIndex, n: u32) -> Result<usize> {
    Ok(intr_in(i, &Alphabet::standard(n))? + intc(j, n)?)
}
