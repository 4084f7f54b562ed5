//! Operations of type F and G and the reorderings built from them.
//!
//! `F_{a_ij a_kl}` replaces one occurrence of `a_ij a_kl` in a chosen word by
//! `a_kl a_ij + C(i,j,k,l)(q^-1 - q) a_kj a_il`; `G` uses `a_il a_kj` for the
//! correction instead. When the two letters share a row or a column the
//! swapped product also picks up the factor `q^{A+B}` of the Manin relation,
//! which is 1 otherwise. Both preserve the class modulo the Manin ideal. F
//! keeps the row sequence of the word fixed across all output words, G the
//! column sequence, which is what makes them suitable for moving a tensor
//! into a prescribed row or column order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{order_target, Gen, RawIndex, Tensor, Word};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::rewrite::abc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    F,
    G,
}

fn apply(kind: Kind, t: &Tensor, selector: &Word, x: Gen, y: Gen) -> Result<Tensor> {
    if !t.contains(selector) {
        return Err(Error::WordAbsent(selector.to_string()));
    }
    let letters = selector.letters();
    let Some(pos) = letters.windows(2).position(|w| w[0] == x && w[1] == y) else {
        return Ok(t.clone());
    };
    let coef = t.coeff(selector);
    let co = abc(x.row, x.col, y.row, y.col);
    let c = co.c;
    let (u, v) = match kind {
        Kind::F => (Gen::new(y.row, x.col), Gen::new(x.row, y.col)),
        Kind::G => (Gen::new(x.row, y.col), Gen::new(y.row, x.col)),
    };
    let splice = |a: Gen, b: Gen| {
        let mut w = letters.to_vec();
        w[pos] = a;
        w[pos + 1] = b;
        Word(w)
    };
    let mut out = t.clone();
    out.add_term(selector.clone(), &-coef.clone());
    out.add_term(
        splice(y, x),
        &(LaurentPoly::q_pow(co.a + co.b) * coef.clone()),
    );
    if c != 0 {
        let corr = LaurentPoly::q_inv_minus_q().scale(&c.into()) * coef;
        out.add_term(splice(u, v), &corr);
    }
    Ok(out)
}

/// `F_{a_ij a_kl}` on the word `selector` of `t`, at its leftmost
/// occurrence of `a_ij a_kl`. Returns `t` unchanged when there is none.
pub fn apply_f(t: &Tensor, selector: &Word, i: u32, j: u32, k: u32, l: u32) -> Result<Tensor> {
    apply(Kind::F, t, selector, Gen::new(i, j), Gen::new(k, l))
}

/// `G_{a_ij a_kl}`; see [`apply_f`].
pub fn apply_g(t: &Tensor, selector: &Word, i: u32, j: u32, k: u32, l: u32) -> Result<Tensor> {
    apply(Kind::G, t, selector, Gen::new(i, j), Gen::new(k, l))
}

fn reorder(kind: Kind, t: &Tensor, target: &RawIndex) -> Result<Tensor> {
    let key = |w: &Word| match kind {
        Kind::F => w.rows(),
        Kind::G => w.cols(),
    };
    let mut sorted_target = target.0.clone();
    sorted_target.sort_unstable();
    target.require_distinct()?;
    for w in t.words() {
        let mut seq = key(w);
        seq.sort_unstable();
        if seq != sorted_target {
            return Err(Error::MultisetMismatch(format!(
                "word {w} cannot be brought to order ({target})"
            )));
        }
    }
    let rank = |v: u32| target.position(v).expect("multiset checked");
    let mut cur = t.clone();
    // Bubble schedule: always swap the leftmost adjacent pair that is out of
    // target order. Each inverted pair is interchanged exactly once.
    loop {
        let next = cur.words().find_map(|w| {
            let seq = key(w);
            seq.windows(2)
                .position(|p| rank(p[0]) > rank(p[1]))
                .map(|pos| (w.clone(), pos))
        });
        let Some((w, pos)) = next else { break };
        let (x, y) = (w.letters()[pos], w.letters()[pos + 1]);
        cur = apply(kind, &cur, &w, x, y)?;
    }
    Ok(cur)
}

/// Brings every word of `t` to row order `(K, K')` by operations of type F.
pub fn reorder_rows(t: &Tensor, k: &RawIndex) -> Result<Tensor> {
    let n0 = t.degree().unwrap_or(k.len());
    reorder(Kind::F, t, &order_target(k, n0))
}

/// Brings every word of `t` to column order `(L, L')` by operations of type G.
pub fn reorder_cols(t: &Tensor, l: &RawIndex) -> Result<Tensor> {
    let n0 = t.degree().unwrap_or(l.len());
    reorder(Kind::G, t, &order_target(l, n0))
}

/// Brings every word to the given full row sequence, which need not be of
/// the form `(K, K')` with both halves increasing.
pub fn reorder_rows_to(t: &Tensor, target: &RawIndex) -> Result<Tensor> {
    reorder(Kind::F, t, target)
}

/// Column counterpart of [`reorder_rows_to`].
pub fn reorder_cols_to(t: &Tensor, target: &RawIndex) -> Result<Tensor> {
    reorder(Kind::G, t, target)
}

/// Correction coefficient in `{-1, 0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ECoeff(pub i8);

impl ECoeff {
    pub fn value(self) -> i8 {
        self.0
    }
}

impl fmt::Display for ECoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `E(m, target, source)`: compares the relative order of `m` and `m+1` in
/// the full target sequence and in the source sequence. Zero when they
/// agree, `+1` when the target has `m` first and the source `m+1` first,
/// `-1` in the opposite case.
pub fn coeff_e(m: u32, target: &RawIndex, source: &RawIndex) -> Result<ECoeff> {
    let order = |s: &RawIndex| match (s.position(m), s.position(m + 1)) {
        (Some(a), Some(b)) => Ok(a < b),
        _ => Err(Error::MissingIndex(m, m + 1)),
    };
    let t = order(target)?;
    let s = order(source)?;
    Ok(ECoeff(match (t, s) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }))
}

/// [`coeff_e`] with the target given as `K`, completed to `(K, K')` in
/// `1..=n0` where `n0` is the length of `source`.
pub fn coeff_e_for(m: u32, k: &RawIndex, source: &RawIndex) -> Result<ECoeff> {
    coeff_e(m, &order_target(k, source.len()), source)
}
