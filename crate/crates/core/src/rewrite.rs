//! Manin relations as a terminating rewrite system, and the normal-form
//! oracle deciding congruence modulo the Manin ideal.
//!
//! A word is in normal form when its letters are sorted nondecreasingly by
//! `(row, col)`. Every rule rewrites an adjacent out-of-order pair into words
//! that are strictly smaller in the lexicographic order on letter sequences,
//! so rewriting terminates.

use std::collections::HashMap;

use rand::Rng;

use crate::algebra::{Gen, Tensor, Word};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// The `A`, `B`, `C` coefficients attached to an index quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbcCoeffs {
    pub a: i32,
    pub b: i32,
    pub c: i32,
}

fn cmp_sign(x: u32, y: u32) -> i32 {
    match x.cmp(&y) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Coefficient table for `a_ij a_kl`. No range check; see [`abc_checked`].
pub fn abc(i: u32, j: u32, k: u32, l: u32) -> AbcCoeffs {
    let a = if j == l { cmp_sign(i, k) } else { 0 };
    let b = if i == k { cmp_sign(j, l) } else { 0 };
    let c = match (i.cmp(&k), j.cmp(&l)) {
        (std::cmp::Ordering::Less, std::cmp::Ordering::Less) => 1,
        (std::cmp::Ordering::Greater, std::cmp::Ordering::Greater) => -1,
        _ => 0,
    };
    AbcCoeffs { a, b, c }
}

pub fn abc_checked(i: u32, j: u32, k: u32, l: u32, n: u32) -> Result<AbcCoeffs> {
    for g in [Gen::new(i, j), Gen::new(k, l)] {
        g.check(n)?;
    }
    Ok(abc(i, j, k, l))
}

fn c_term(c: i32) -> LaurentPoly {
    LaurentPoly::q_inv_minus_q().scale(&c.into())
}

fn two(x: Gen, y: Gen) -> Word {
    Word(vec![x, y])
}

/// `a_ab a_cd - q^{A+B} a_cd a_ab - C (q^-1 - q) a_cb a_ad` with `A, B, C`
/// taken from `(i, j, k, l)`.
pub fn relation_r_applied(ijkl: (u32, u32, u32, u32), abgd: (u32, u32, u32, u32)) -> Tensor {
    let (i, j, k, l) = ijkl;
    let (al, be, ga, de) = abgd;
    let co = abc(i, j, k, l);
    let mut t = Tensor::zero();
    t.add_term(two(Gen::new(al, be), Gen::new(ga, de)), &LaurentPoly::one());
    t.add_term(
        two(Gen::new(ga, de), Gen::new(al, be)),
        &-LaurentPoly::q_pow(co.a + co.b),
    );
    t.add_term(two(Gen::new(ga, be), Gen::new(al, de)), &-c_term(co.c));
    t
}

/// As [`relation_r_applied`] with last word `a_ad a_cb`.
pub fn relation_s_applied(ijkl: (u32, u32, u32, u32), abgd: (u32, u32, u32, u32)) -> Tensor {
    let (i, j, k, l) = ijkl;
    let (al, be, ga, de) = abgd;
    let co = abc(i, j, k, l);
    let mut t = Tensor::zero();
    t.add_term(two(Gen::new(al, be), Gen::new(ga, de)), &LaurentPoly::one());
    t.add_term(
        two(Gen::new(ga, de), Gen::new(al, be)),
        &-LaurentPoly::q_pow(co.a + co.b),
    );
    t.add_term(two(Gen::new(al, de), Gen::new(ga, be)), &-c_term(co.c));
    t
}

/// The R relation of `a_ij a_kl`; lies in the Manin ideal.
pub fn relation_r(i: u32, j: u32, k: u32, l: u32) -> Tensor {
    relation_r_applied((i, j, k, l), (i, j, k, l))
}

/// The S relation of `a_ij a_kl`; lies in the Manin ideal.
pub fn relation_s(i: u32, j: u32, k: u32, l: u32) -> Tensor {
    relation_s_applied((i, j, k, l), (i, j, k, l))
}

/// One rewrite of the out-of-order pair `x y` (requires `x > y`), as a list
/// of `(coef, [left, right])` replacements.
pub(crate) fn rewrite_letters(x: Gen, y: Gen) -> Vec<(LaurentPoly, [Gen; 2])> {
    debug_assert!(x > y);
    let (i, j, k, l) = (x.row, x.col, y.row, y.col);
    if i == k || j == l {
        vec![(LaurentPoly::q_pow(1), [y, x])]
    } else if j < l {
        vec![(LaurentPoly::one(), [y, x])]
    } else {
        vec![
            (LaurentPoly::one(), [y, x]),
            (
                -LaurentPoly::q_inv_minus_q(),
                [Gen::new(k, j), Gen::new(i, l)],
            ),
        ]
    }
}

/// Memoizing normalizer. Normal forms of words are built by inserting letters
/// one at a time into already-normal prefixes; the cache maps
/// `(normal word, letter)` to the normal form of their concatenation.
#[derive(Default)]
pub struct Normalizer {
    cache: HashMap<(Word, Gen), Tensor>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }

    pub fn normal_form(&mut self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in t.iter() {
            let nf = self.word(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    /// Normal form of a single word.
    pub fn word(&mut self, w: &Word) -> Tensor {
        if w.is_sorted() {
            return Tensor::from_word(w.clone());
        }
        let mut acc = Tensor::one();
        for &g in w.letters() {
            acc = self.append(&acc, g);
        }
        acc
    }

    /// `normal_form(t * g)` for `t` already in normal form.
    fn append(&mut self, t: &Tensor, g: Gen) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in t.iter() {
            let r = self.insert(w, g);
            out.add_scaled(&r, c);
        }
        out
    }

    fn insert(&mut self, u: &Word, g: Gen) -> Tensor {
        match u.letters().last() {
            None => return Tensor::from_word(Word(vec![g])),
            Some(&y) if y <= g => {
                let mut v = u.0.clone();
                v.push(g);
                return Tensor::from_word(Word(v));
            }
            _ => {}
        }
        if let Some(hit) = self.cache.get(&(u.clone(), g)) {
            return hit.clone();
        }
        let (&y, prefix) = u.letters().split_last().expect("nonempty");
        let prefix = Tensor::from_word(Word(prefix.to_vec()));
        let mut out = Tensor::zero();
        for (c, [a, b]) in rewrite_letters(y, g) {
            let step = self.append(&prefix, a);
            let step = self.append(&step, b);
            out.add_scaled(&step, &c);
        }
        self.cache.insert((u.clone(), g), out.clone());
        out
    }
}

/// Canonical representative of `t` modulo the Manin ideal.
pub fn normal_form(t: &Tensor) -> Tensor {
    Normalizer::new().normal_form(t)
}

/// Whether `t1 - t2` lies in the Manin ideal.
pub fn congruent(t1: &Tensor, t2: &Tensor) -> bool {
    normal_form(&(t1 - t2)).is_zero()
}

/// Order in which out-of-order pairs are picked during plain rewriting.
pub enum Strategy<'a, R: Rng> {
    /// Leftmost out-of-order adjacent pair.
    Leftmost,
    /// Uniformly random out-of-order adjacent pair in a uniformly random word.
    Random(&'a mut R),
}

/// Normal form by direct rewriting with a chosen pair-selection strategy,
/// one rule application at a time. Used as an independent cross-check of
/// [`Normalizer`]; much slower.
pub fn normal_form_with<R: Rng>(t: &Tensor, mut strategy: Strategy<'_, R>) -> Tensor {
    let mut pending = t.clone();
    let mut done = Tensor::zero();
    loop {
        let unsorted: Vec<Word> = pending
            .words()
            .filter(|w| !w.is_sorted())
            .cloned()
            .collect();
        for (w, c) in pending.iter().filter(|(w, _)| w.is_sorted()) {
            done.add_term(w.clone(), c);
        }
        if unsorted.is_empty() {
            return done;
        }
        let mut next = Tensor::zero();
        let pick = match &mut strategy {
            Strategy::Leftmost => unsorted.len() - 1,
            Strategy::Random(rng) => rng.gen_range(0..unsorted.len()),
        };
        for (idx, w) in unsorted.iter().enumerate() {
            let c = pending.coeff(w);
            if idx != pick {
                next.add_term(w.clone(), &c);
                continue;
            }
            let bad: Vec<usize> = (0..w.len() - 1).filter(|&p| w.0[p] > w.0[p + 1]).collect();
            let p = match &mut strategy {
                Strategy::Leftmost => bad[0],
                Strategy::Random(rng) => bad[rng.gen_range(0..bad.len())],
            };
            for (d, [a, b]) in rewrite_letters(w.0[p], w.0[p + 1]) {
                let mut v = w.0.clone();
                v[p] = a;
                v[p + 1] = b;
                next.add_term(Word(v), &(&c * &d));
            }
        }
        pending = next;
    }
}

/// Validates every generator index of `t` against `n`.
pub fn check_range(t: &Tensor, n: u32) -> Result<()> {
    for w in t.words() {
        for g in w.letters() {
            g.check(n)?;
        }
    }
    Ok(())
}

/// Rejects tensors whose words have differing lengths.
pub fn require_homogeneous(t: &Tensor) -> Result<usize> {
    if t.is_zero() {
        return Ok(0);
    }
    t.degree()
        .ok_or_else(|| Error::SizeMismatch("tensor is not degree-homogeneous".into()))
}
