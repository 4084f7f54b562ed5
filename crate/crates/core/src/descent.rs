//! Search for a GL-descending relation by exact linear algebra.
//!
//! Used when no closed-form route yields terms that descend in the GL
//! order. The unknowns are the lead coefficient and one coefficient per
//! candidate product `[X][Y]` with the right content and `X <_GL [I,J]`;
//! the system `f [K,L][I,J] - Σ h [X][Y] = [I,J][K,L]` is solved over
//! `Z[q, q^-1]` by fraction-free Gauss-Jordan elimination on normal forms.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::algebra::{RawIndex, Word};
use crate::commutation::{gl_less, Relation, Term};
use crate::minors::{product_tensor, MinorSpec};
use crate::poly::LaurentPoly;
use crate::rewrite::Normalizer;

/// Splits a multiset into two sets of the given sizes, every way.
fn splits(multiset: &[u32], first: usize) -> Vec<(RawIndex, RawIndex)> {
    let distinct: Vec<u32> = multiset.iter().copied().dedup().collect();
    let mut out = Vec::new();
    for pick in distinct.iter().copied().combinations(first) {
        let mut rest = multiset.to_vec();
        for v in &pick {
            let pos = rest
                .iter()
                .position(|x| x == v)
                .expect("picked from multiset");
            rest.remove(pos);
        }
        if rest.iter().tuple_windows().all(|(a, b)| a < b) {
            out.push((RawIndex(pick), RawIndex(rest)));
        }
    }
    out
}

fn candidates(kl: &MinorSpec, ij: &MinorSpec) -> Vec<(MinorSpec, MinorSpec)> {
    let rows: Vec<u32> = kl
        .rows
        .0
        .iter()
        .chain(&ij.rows.0)
        .copied()
        .sorted()
        .collect();
    let cols: Vec<u32> = kl
        .cols
        .0
        .iter()
        .chain(&ij.cols.0)
        .copied()
        .sorted()
        .collect();
    let sizes = 1..(ij.size() + kl.size());
    let mut out = Vec::new();
    for sx in sizes {
        for (xr, yr) in splits(&rows, sx) {
            for (xc, yc) in splits(&cols, sx) {
                let x = MinorSpec {
                    rows: xr.clone(),
                    cols: xc,
                    flavor: Default::default(),
                };
                let y = MinorSpec {
                    rows: yr.clone(),
                    cols: yc,
                    flavor: Default::default(),
                };
                let reversed = x == *ij && y == *kl;
                if !reversed && gl_less(&x, ij) {
                    out.push((x, y));
                }
            }
        }
    }
    out
}

/// Solves `A x = b` over `Z[q, q^-1]`, free variables set to zero. `None`
/// if the system is inconsistent or the solution leaves the ring.
fn solve(
    mut a: Vec<Vec<LaurentPoly>>,
    mut b: Vec<LaurentPoly>,
    cols: usize,
) -> Option<Vec<LaurentPoly>> {
    let rows = a.len();
    let mut prev = LaurentPoly::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                *x = (&(&piv * &*x) - &(&f * p)).div_exact(&prev)?;
            }
            let v = &(&piv * &b[i]) - &(&f * &b[r]);
            b[i] = v.div_exact(&prev)?;
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![LaurentPoly::zero(); cols];
    for (row, c) in pivots {
        x[c] = b[row].div_exact(&a[row][c])?;
    }
    Some(x)
}

/// A relation for `[K,L][I,J]` whose terms all descend below `[I,J]`, if
/// one with Laurent polynomial coefficients exists among the candidates.
pub(crate) fn descending_relation(
    kl: &MinorSpec,
    ij: &MinorSpec,
    n: u32,
    norm: &mut Normalizer,
) -> Option<Relation> {
    let cands = candidates(kl, ij);
    let mut columns = vec![norm.normal_form(&product_tensor(&[kl, ij]))];
    for (x, y) in &cands {
        columns.push(-&norm.normal_form(&product_tensor(&[x, y])));
    }
    let rhs = norm.normal_form(&product_tensor(&[ij, kl]));
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    for t in columns.iter().chain(std::iter::once(&rhs)) {
        for w in t.words() {
            let len = index.len();
            index.entry(w.clone()).or_insert(len);
        }
    }
    let mut a = vec![vec![LaurentPoly::zero(); columns.len()]; index.len()];
    for (c, t) in columns.iter().enumerate() {
        for (w, v) in t.iter() {
            a[index[w]][c] = v.clone();
        }
    }
    let mut b = vec![LaurentPoly::zero(); index.len()];
    for (w, v) in rhs.iter() {
        b[index[w]] = v.clone();
    }
    let x = solve(a, b, columns.len())?;
    let mut terms = vec![Term {
        coef: LaurentPoly::one(),
        left: ij.clone(),
        right: kl.clone(),
    }];
    for ((left, right), coef) in cands.into_iter().zip(&x[1..]) {
        if !coef.is_zero() {
            terms.push(Term {
                coef: coef.clone(),
                left,
                right,
            });
        }
    }
    Some(Relation {
        n,
        lead_coef: x[0].clone(),
        lead: (kl.clone(), ij.clone()),
        terms,
        case: String::new(),
        verified: false,
        swapped: false,
    })
}
