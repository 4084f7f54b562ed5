//! C-set recursions and the commutation relation generator.
//!
//! For minors `[K,L]` and `[I,J]` with `R = I∩K` and `C = J∩L`, the
//! generator runs the standard column tower of `J∖C` inside `(J∪L)∖C`
//! (pruning with φ, alternating signs), then the standard row tower of `I∖R`
//! inside `(I∪K)∖R` (pruning with ψ, signs carried). Each surviving signed
//! pair `(Z,Z';W,W')` at level `i` contributes
//!
//! ```text
//! sign · (q^-1 - q)^i · (-q)^{-l(Z)-l(Z')-l(W)-l(W')}
//!      · [(Z∪R)_ord, (W∪C)_ord] [(Z'∪R)_ord, (W'∪C)_ord]
//! ```
//!
//! and the sum is congruent to `q^{-|γ-ρ|} [K,L][I,J]` with `ρ = |R|`,
//! `γ = |C|`. Every emitted relation is checked against the normal-form
//! oracle before it is returned.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::RawIndex;
use crate::error::{Error, Result};
use crate::minors::MinorSpec;
use crate::poly::LaurentPoly;
use crate::rewrite::Normalizer;
use crate::towers::{
    intc_in, intr_in, standard_col_tower, standard_row_tower, swap_letters, Alphabet,
};

/// A pair `(first, second)` of complementary multiindices with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub first: RawIndex,
    pub second: RawIndex,
    pub sign: i8,
}

impl IndexPair {
    pub fn new(first: RawIndex, second: RawIndex) -> Self {
        Self {
            first,
            second,
            sign: 1,
        }
    }

    /// Whether `a` occurs before `b` in the concatenation `(first, second)`.
    pub fn precedes(&self, a: u32, b: u32) -> Option<bool> {
        let cat = self.first.concat(&self.second);
        Some(cat.position(a)? < cat.position(b)?)
    }

    fn swapped(&self, sigma: (u32, u32)) -> Self {
        Self {
            first: swap_letters(&self.first, sigma),
            second: swap_letters(&self.second, sigma),
            sign: self.sign,
        }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(f, "{s}({},{})", self.first.compact(), self.second.compact())
    }
}

/// Levels `C_0, C_1, ...` of a C-set recursion. Levels are multisets; the
/// order inside a level follows construction order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CSetFamily<T = IndexPair> {
    pub levels: Vec<Vec<T>>,
}

impl<T> CSetFamily<T> {
    pub fn level(&self, i: usize) -> &[T] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_level(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

/// Pairs where `z` comes before `z + 1`.
pub fn phi_subset(level: &[IndexPair], z: u32) -> Vec<IndexPair> {
    level
        .iter()
        .filter(|p| p.precedes(z, z + 1) == Some(true))
        .cloned()
        .collect()
}

/// Pairs where `m + 1` comes before `m`.
pub fn psi_subset(level: &[IndexPair], m: u32) -> Vec<IndexPair> {
    level
        .iter()
        .filter(|p| p.precedes(m + 1, m) == Some(true))
        .cloned()
        .collect()
}

/// One stage of the recursion: level `i` gets the unpruned carry of level
/// `i - 1` followed by the σ-image of level `i`.
fn stage<T: Clone>(
    levels: &[Vec<T>],
    pruned: impl Fn(&T) -> bool,
    carry: impl Fn(&T) -> T,
    image: impl Fn(&T) -> T,
) -> Vec<Vec<T>> {
    (0..=levels.len())
        .map(|i| {
            let mut out: Vec<T> = Vec::new();
            if i > 0 {
                out.extend(levels[i - 1].iter().filter(|p| !pruned(p)).map(&carry));
            }
            if let Some(cur) = levels.get(i) {
                out.extend(cur.iter().map(&image));
            }
            out
        })
        .collect()
}

fn precedes_pair(p: &IndexPair, (a, b): (u32, u32)) -> bool {
    p.precedes(a, b) == Some(true)
}

/// Column recursion for `I` inside `ambient`: base pair is the last `|I|`
/// letters and its complement; signs are `(-1)^i`.
pub fn csets_column(i: &RawIndex, ambient: &Alphabet) -> Result<CSetFamily> {
    let tower = standard_col_tower(i, ambient)?;
    let base = IndexPair::new(tower.base.clone(), ambient.complement(&tower.base));
    let mut levels = vec![vec![base]];
    for sigma in tower.stage_transpositions() {
        levels = stage(
            &levels,
            |p| precedes_pair(p, sigma),
            |p| IndexPair {
                sign: -p.sign,
                ..p.clone()
            },
            |p| p.swapped(sigma),
        );
    }
    Ok(CSetFamily { levels })
}

/// A signed element of the row-column recursion: rows `(Z, Z')`, columns
/// `(W, W')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowColPair {
    pub rows: IndexPair,
    pub cols: IndexPair,
    pub sign: i8,
}

impl fmt::Display for RowColPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(
            f,
            "{s}({},{})({},{})",
            self.rows.first.compact(),
            self.cols.first.compact(),
            self.rows.second.compact(),
            self.cols.second.compact()
        )
    }
}

/// Row-column recursion: column phase over the tower of `J` in `col_ambient`
/// (φ-pruning, signs `(-1)^i`), then row phase over the tower of `I` in
/// `row_ambient` (ψ-pruning, signs carried).
pub fn csets_rowcol(
    i: &RawIndex,
    j: &RawIndex,
    row_ambient: &Alphabet,
    col_ambient: &Alphabet,
) -> Result<CSetFamily<RowColPair>> {
    let rt = standard_row_tower(i, row_ambient)?;
    let ct = standard_col_tower(j, col_ambient)?;
    let base = RowColPair {
        rows: IndexPair::new(rt.base.clone(), row_ambient.complement(&rt.base)),
        cols: IndexPair::new(ct.base.clone(), col_ambient.complement(&ct.base)),
        sign: 1,
    };
    let mut levels = vec![vec![base]];
    for sigma in ct.stage_transpositions() {
        levels = stage(
            &levels,
            |p| precedes_pair(&p.cols, sigma),
            |p| RowColPair {
                sign: -p.sign,
                ..p.clone()
            },
            |p| RowColPair {
                cols: p.cols.swapped(sigma),
                ..p.clone()
            },
        );
    }
    for sigma in rt.stage_transpositions() {
        levels = stage(
            &levels,
            |p| precedes_pair(&p.rows, (sigma.1, sigma.0)),
            |p| p.clone(),
            |p| RowColPair {
                rows: p.rows.swapped(sigma),
                ..p.clone()
            },
        );
    }
    Ok(CSetFamily { levels })
}

/// One `coef * left * right` summand of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: LaurentPoly,
    pub left: MinorSpec,
    pub right: MinorSpec,
}

/// `lead_coef * lead.0 * lead.1 ≡ Σ coef * left * right` modulo the Manin
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub n: u32,
    pub lead_coef: LaurentPoly,
    pub lead: (MinorSpec, MinorSpec),
    pub terms: Vec<Term>,
    /// Construction that produced the relation, e.g. `disjoint/row-tower`.
    pub case: String,
    pub verified: bool,
    #[serde(default)]
    pub swapped: bool,
}

impl Relation {
    /// Coefficient of `left * right` among the terms, zero if absent.
    pub fn coeff_of(&self, left: &MinorSpec, right: &MinorSpec) -> LaurentPoly {
        self.terms
            .iter()
            .find(|t| {
                t.left.abstracted() == left.abstracted()
                    && t.right.abstracted() == right.abstracted()
            })
            .map(|t| t.coef.clone())
            .unwrap_or_default()
    }

    /// Coefficient of the reversed product `lead.1 * lead.0`.
    pub fn reversed_coeff(&self) -> LaurentPoly {
        self.coeff_of(&self.lead.1, &self.lead.0)
    }

    /// `lead - Σ terms` expanded as row minors.
    pub fn residual_input(&self) -> crate::algebra::Tensor {
        let mut t =
            crate::minors::product_tensor(&[&self.lead.0, &self.lead.1]).scale(&self.lead_coef);
        for term in &self.terms {
            let p = crate::minors::product_tensor(&[&term.left, &term.right]);
            t.add_scaled(&p, &-term.coef.clone());
        }
        t
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("relation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        if !self.lead_coef.is_one() {
            out.push_str(&wrap_latex(&self.lead_coef));
        }
        out.push_str(&format!(
            "{}{} \\equiv ",
            self.lead.0.to_latex(),
            self.lead.1.to_latex()
        ));
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(&t.coef);
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !mag.is_one() {
                out.push_str(&wrap_latex(&mag));
            }
            out.push_str(&format!("{}{}", t.left.to_latex(), t.right.to_latex()));
        }
        out
    }
}

fn split_sign(c: &LaurentPoly) -> (bool, LaurentPoly) {
    let lead_neg = c
        .terms()
        .last()
        .map(|(_, v)| v.sign() == num_bigint::Sign::Minus)
        .unwrap_or(false);
    let all_neg = c.terms().all(|(_, v)| v.sign() == num_bigint::Sign::Minus);
    if all_neg && lead_neg {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn wrap_latex(c: &LaurentPoly) -> String {
    if c.terms().count() > 1 {
        format!("({})", c.to_latex())
    } else {
        c.to_latex()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.lead_coef.is_one() {
            write!(f, "({})*", self.lead_coef)?;
        }
        write!(f, "{}{} ≡", self.lead.0, self.lead.1)?;
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(&t.coef);
            let op = match (k, neg) {
                (0, false) => " ",
                (0, true) => " -",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(op)?;
            if !mag.is_one() {
                write!(f, "({})*", mag)?;
            }
            write!(f, "{}{}", t.left, t.right)?;
        }
        Ok(())
    }
}

fn cmp_minor_keys(a: &MinorSpec, b: &MinorSpec) -> Ordering {
    (&a.rows.0, &a.cols.0).cmp(&(&b.rows.0, &b.cols.0))
}

/// Case label: which indices are shared, and which towers are nontrivial.
fn tag_for(gamma: usize, intr: usize, intc: usize) -> String {
    let sharing = if gamma == 0 {
        "disjoint"
    } else {
        "shared-columns"
    };
    let towers = match (intr > 0, intc > 0) {
        (false, false) => "no-towers",
        (false, true) => "column-tower",
        (true, false) => "row-tower",
        (true, true) => "both-towers",
    };
    format!("{sharing}/{towers}")
}

fn check_minor(m: &MinorSpec, n: u32) -> Result<()> {
    m.check(n)?;
    if !m.is_sorted() {
        return Err(Error::Precondition(format!(
            "{m} must have strictly increasing indices"
        )));
    }
    Ok(())
}

fn transpose(m: &MinorSpec) -> MinorSpec {
    MinorSpec {
        rows: m.cols.clone(),
        cols: m.rows.clone(),
        flavor: m.flavor,
    }
}

/// Applies `f` to both lead minors and to every term minor. `reverse` swaps
/// the factors of each product, as an antiendomorphism does.
fn map_relation(rel: Relation, f: impl Fn(&MinorSpec) -> MinorSpec, reverse: bool) -> Relation {
    let pair = |a: &MinorSpec, b: &MinorSpec| if reverse { (f(b), f(a)) } else { (f(a), f(b)) };
    let lead = pair(&rel.lead.0, &rel.lead.1);
    let terms = rel
        .terms
        .iter()
        .map(|t| {
            let (left, right) = pair(&t.left, &t.right);
            Term {
                coef: t.coef.clone(),
                left,
                right,
            }
        })
        .collect();
    Relation { lead, terms, ..rel }
}

/// Builds the relation for `[K,L][I,J]` without verifying it.
///
/// Disjoint rows use the tower formula directly. Shared rows with disjoint
/// columns go through the transpose automorphism `a_ij -> a_ji`. Shared rows
/// and columns go through the complement antiendomorphism
/// `[A,B] -> [A^c,B^c]` (up to a scalar common to all terms), which makes
/// the rows disjoint.
fn generate(kl: &MinorSpec, ij: &MinorSpec, n: u32) -> Result<Relation> {
    let rows_shared = !kl.rows.intersection(&ij.rows).is_empty();
    let cols_shared = !kl.cols.intersection(&ij.cols).is_empty();
    if !rows_shared {
        return generate_disjoint_rows(kl, ij, n);
    }
    if !cols_shared {
        let rel = generate_disjoint_rows(&transpose(kl), &transpose(ij), n)?;
        let intc = intc_in(&ij.cols, &Alphabet::new(ij.cols.union(&kl.cols).0))?;
        let mut rel = map_relation(rel, transpose, false);
        rel.case = if intc == 0 {
            "shared-rows/no-column-tower"
        } else {
            "shared-rows/column-tower"
        }
        .to_string();
        return Ok(rel);
    }
    generate_complement(kl, ij, n)
}

/// Complement route, transposing first when there are more columns than
/// rows in play.
fn generate_complement(kl: &MinorSpec, ij: &MinorSpec, n: u32) -> Result<Relation> {
    let row_count = kl.rows.union(&ij.rows).len();
    let col_count = kl.cols.union(&ij.cols).len();
    if row_count < col_count {
        let rel = complement_route(&transpose(kl), &transpose(ij), n)?;
        return Ok(map_relation(rel, transpose, false));
    }
    complement_route(kl, ij, n)
}

/// Shared rows and columns with `|I∪K| >= |J∪L|`. The column alphabet is
/// padded with letters above `J∪L` so both alphabets have the same size.
fn complement_route(kl: &MinorSpec, ij: &MinorSpec, n: u32) -> Result<Relation> {
    let row_alpha = kl.rows.union(&ij.rows);
    let mut col_alpha = kl.cols.union(&ij.cols);
    let top = col_alpha.0.iter().copied().max().unwrap_or(0);
    let pad = row_alpha.len() - col_alpha.len();
    col_alpha.0.extend(top + 1..=top + pad as u32);
    let comp = |m: &MinorSpec| MinorSpec {
        rows: m.rows.complement_in(&row_alpha.0),
        cols: m.cols.complement_in(&col_alpha.0),
        flavor: m.flavor,
    };
    if ij.rows.len() == row_alpha.len() || kl.rows.len() == row_alpha.len() {
        // One minor is the determinant of the block spanned by both, which
        // is central there.
        return Ok(Relation {
            n,
            lead_coef: LaurentPoly::one(),
            lead: (kl.clone(), ij.clone()),
            terms: vec![Term {
                coef: LaurentPoly::one(),
                left: ij.clone(),
                right: kl.clone(),
            }],
            case: "central-determinant".to_string(),
            verified: false,
            swapped: false,
        });
    }
    // S([K,L][I,J]) = S([I,J]) S([K,L]).
    let image = generate_disjoint_rows(&comp(ij), &comp(kl), n + pad as u32)?;
    let mut rel = map_relation(image, comp, true);
    rel.case = "shared-rows-and-columns".to_string();
    Ok(rel)
}

/// Tower formula, valid whenever `I ∩ K` is empty.
fn generate_disjoint_rows(kl: &MinorSpec, ij: &MinorSpec, n: u32) -> Result<Relation> {
    let (k, l, i, j) = (&kl.rows, &kl.cols, &ij.rows, &ij.cols);
    let r_shared = i.intersection(k);
    let c_shared = j.intersection(l);
    let row_alpha = Alphabet::new(i.union(k).minus(&r_shared).0);
    let col_alpha = Alphabet::new(j.union(l).minus(&c_shared).0);
    let i0 = i.minus(&r_shared);
    let j0 = j.minus(&c_shared);
    let fam = csets_rowcol(&i0, &j0, &row_alpha, &col_alpha)?;

    let mut terms: Vec<Term> = Vec::new();
    for (level, pairs) in fam.levels.iter().enumerate() {
        let scale = LaurentPoly::q_inv_minus_q().pow(level as u32);
        for p in pairs {
            let left =
                MinorSpec::new(p.rows.first.union(&r_shared), p.cols.first.union(&c_shared))?;
            let right = MinorSpec::new(
                p.rows.second.union(&r_shared),
                p.cols.second.union(&c_shared),
            )?;
            let lz = p.rows.first.inversions() + p.rows.second.inversions();
            let lw = p.cols.first.inversions() + p.cols.second.inversions();
            let coef = LaurentPoly::neg_q_pow(-((lz + lw) as i32)).scale(&(p.sign as i64).into())
                * scale.clone();
            match terms
                .iter_mut()
                .find(|t| t.left == left && t.right == right)
            {
                Some(t) => t.coef += &coef,
                None => terms.push(Term { coef, left, right }),
            }
        }
    }
    terms.retain(|t| !t.coef.is_zero());

    let rho = r_shared.len();
    let gamma = c_shared.len();
    let intr = intr_in(&i0, &row_alpha)?;
    let intc = intc_in(&j0, &col_alpha)?;
    let z = (gamma as i32 - rho as i32).abs();
    Ok(Relation {
        n,
        lead_coef: LaurentPoly::q_pow(-z),
        lead: (kl.clone(), ij.clone()),
        terms,
        case: tag_for(gamma, intr, intc),
        verified: false,
        swapped: false,
    })
}

/// Solves a relation for `[I,J][K,L]` for the reversed product instead,
/// turning it into one for `[K,L][I,J]`. Needs unit lead and reversed
/// coefficients.
fn invert(rel: Relation) -> Option<Relation> {
    let (ij, kl) = rel.lead.clone();
    let c_inv = rel.lead_coef.unit_inverse()?;
    let rho = rel.reversed_coeff();
    rho.unit_inverse()?;
    let mut terms = vec![Term {
        coef: LaurentPoly::one(),
        left: ij.clone(),
        right: kl.clone(),
    }];
    for t in rel.terms {
        if t.left.abstracted() == kl.abstracted() && t.right.abstracted() == ij.abstracted() {
            continue;
        }
        terms.push(Term {
            coef: -(t.coef * c_inv.clone()),
            ..t
        });
    }
    Some(Relation {
        lead_coef: rho * c_inv,
        lead: (kl, ij),
        terms,
        ..rel
    })
}

/// Every term other than the reversed product has its left factor strictly
/// below the lead's right factor in the GL order.
pub fn gl_descends(rel: &Relation) -> bool {
    let (kl, ij) = (&rel.lead.0, &rel.lead.1);
    rel.terms
        .iter()
        .filter(|t| {
            !(t.left.abstracted() == ij.abstracted() && t.right.abstracted() == kl.abstracted())
        })
        .all(|t| gl_less(&t.left, ij))
}

/// Generates and verifies the relation for `[K,L][I,J]`. If the direct
/// formula's terms do not descend in the GL order, the formula for the
/// opposite order, solved for `[K,L][I,J]`, is used when it does.
fn build(kl: &MinorSpec, ij: &MinorSpec, n: u32, norm: &mut Normalizer) -> Result<Relation> {
    let rel = build_plain(kl, ij, n, norm)?;
    if gl_descends(&rel) {
        return Ok(rel);
    }
    if let Some(alt) = crate::descent::descending_relation(kl, ij, n, norm) {
        let alt = Relation {
            case: rel.case.clone(),
            ..alt
        };
        if gl_descends(&alt) && q1_collapses(&alt) && residual(&alt, norm).is_zero() {
            return Ok(Relation {
                verified: true,
                ..alt
            });
        }
    }
    Ok(rel)
}

/// At `q = 1` the lead and reversed coefficients are 1 and every other
/// coefficient vanishes.
pub fn q1_collapses(rel: &Relation) -> bool {
    let one = num_bigint::BigInt::from(1);
    if rel.lead_coef.eval_at_one() != one || rel.reversed_coeff().eval_at_one() != one {
        return false;
    }
    let (kl, ij) = (&rel.lead.0, &rel.lead.1);
    rel.terms
        .iter()
        .filter(|t| {
            !(t.left.abstracted() == ij.abstracted() && t.right.abstracted() == kl.abstracted())
        })
        .all(|t| t.coef.eval_at_one() == num_bigint::BigInt::from(0))
}

/// Generated relation, preferring a descending variant among the symmetric
/// routes when the direct one does not descend.
fn build_plain(kl: &MinorSpec, ij: &MinorSpec, n: u32, norm: &mut Normalizer) -> Result<Relation> {
    let mut rel = generate(kl, ij, n)?;
    let res = residual(&rel, norm);
    if !res.is_zero() {
        return Err(Error::VerificationFailed {
            residual: Box::new(res),
        });
    }
    rel.verified = true;
    if gl_descends(&rel) {
        return Ok(rel);
    }
    for complement in [false, true] {
        for sym in [
            Symmetry::Identity,
            Symmetry::Transpose,
            Symmetry::Flip,
            Symmetry::FlipTranspose,
        ] {
            for inverted in [false, true] {
                if sym == Symmetry::Identity && !inverted && !complement {
                    continue;
                }
                let Some(alt) = generate_via(sym, inverted, complement, kl, ij, n) else {
                    continue;
                };
                let alt = Relation {
                    case: rel.case.clone(),
                    ..alt
                };
                if gl_descends(&alt) && residual(&alt, norm).is_zero() {
                    return Ok(Relation {
                        verified: true,
                        ..alt
                    });
                }
            }
        }
    }
    Ok(rel)
}

/// Involutive symmetries of the Manin relations. `Transpose` is
/// `a_ij -> a_ji` (an automorphism); `Flip` is `a_ij -> a_{n+1-i,n+1-j}`
/// (an antiautomorphism).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    Identity,
    Transpose,
    Flip,
    FlipTranspose,
}

impl Symmetry {
    fn reverses(self) -> bool {
        matches!(self, Symmetry::Flip | Symmetry::FlipTranspose)
    }

    fn apply(self, m: &MinorSpec, n: u32) -> MinorSpec {
        let flip = |x: &RawIndex| RawIndex(x.0.iter().rev().map(|&a| n + 1 - a).collect());
        match self {
            Symmetry::Identity => m.clone(),
            Symmetry::Transpose => transpose(m),
            Symmetry::Flip => MinorSpec {
                rows: flip(&m.rows),
                cols: flip(&m.cols),
                flavor: m.flavor,
            },
            Symmetry::FlipTranspose => MinorSpec {
                rows: flip(&m.cols),
                cols: flip(&m.rows),
                flavor: m.flavor,
            },
        }
    }
}

/// Relation for `[K,L][I,J]` obtained by generating one for the image pair
/// under `sym` (optionally for the opposite order, then solved back) and
/// mapping it back.
fn generate_via(
    sym: Symmetry,
    inverted: bool,
    complement: bool,
    kl: &MinorSpec,
    ij: &MinorSpec,
    n: u32,
) -> Option<Relation> {
    let gen = |a: &MinorSpec, b: &MinorSpec| {
        if complement {
            generate_complement(a, b, n).ok()
        } else {
            generate(a, b, n).ok()
        }
    };
    let (a, b) = (sym.apply(kl, n), sym.apply(ij, n));
    // Image of the product [K,L][I,J].
    let (x, y) = if sym.reverses() { (b, a) } else { (a, b) };
    let image = if inverted {
        invert(gen(&y, &x)?)?
    } else {
        gen(&x, &y)?
    };
    Some(map_relation(image, |m| sym.apply(m, n), sym.reverses()))
}

/// Normal form of `lead_coef * lead - Σ terms`; zero iff the relation holds.
pub fn residual(rel: &Relation, norm: &mut Normalizer) -> crate::algebra::Tensor {
    norm.normal_form(&rel.residual_input())
}

/// Commutation relation between `a` and `b`, with the lexicographically
/// larger `(rows, cols)` on the left. Fails with
/// [`Error::VerificationFailed`] if the oracle rejects the result.
pub fn commute(a: &MinorSpec, b: &MinorSpec, n: u32) -> Result<Relation> {
    commute_with(a, b, n, &mut Normalizer::new())
}

/// Relation for `[K,L][I,J]` in the given order, without auto-swap.
pub fn commute_ordered(
    kl: &MinorSpec,
    ij: &MinorSpec,
    n: u32,
    norm: &mut Normalizer,
) -> Result<Relation> {
    check_minor(kl, n)?;
    check_minor(ij, n)?;
    build(&kl.abstracted(), &ij.abstracted(), n, norm)
}

/// As [`commute`], reusing a normalizer cache.
pub fn commute_with(
    a: &MinorSpec,
    b: &MinorSpec,
    n: u32,
    norm: &mut Normalizer,
) -> Result<Relation> {
    check_minor(a, n)?;
    check_minor(b, n)?;
    let a = a.abstracted();
    let b = b.abstracted();
    let swapped = cmp_minor_keys(&a, &b) == Ordering::Less;
    let (kl, ij) = if swapped { (&b, &a) } else { (&a, &b) };
    let mut rel = build(kl, ij, n, norm)?;
    rel.swapped = swapped;
    Ok(rel)
}

/// Single-term q-commutation `q^{-z}[K,L][I,J] ≡ [I,J][K,L]` for disjoint
/// rows with every row of `I` below every row of `K`, and every column of
/// `L∖C` below every column of `J∖C`, where `C = J∩L` and `z = |C|`.
pub fn commute_q_special(a: &MinorSpec, b: &MinorSpec, n: u32) -> Result<Relation> {
    check_minor(a, n)?;
    check_minor(b, n)?;
    let (k, l, i, j) = (&a.rows, &a.cols, &b.rows, &b.cols);
    if !i.intersection(k).is_empty() {
        return Err(Error::Precondition(format!("{a} and {b} share rows")));
    }
    if let (Some(&imax), Some(&kmin)) = (i.0.iter().max(), k.0.iter().min()) {
        if imax > kmin {
            return Err(Error::Precondition(format!(
                "rows of {b} must lie below the rows of {a}"
            )));
        }
    }
    let c = j.intersection(l);
    let lc = l.minus(&c);
    let jc = j.minus(&c);
    if lc.0.iter().any(|&x| jc.0.iter().any(|&y| x > y)) {
        return Err(Error::Precondition(format!(
            "columns ({lc}) must all lie below ({jc})"
        )));
    }
    let mut norm = Normalizer::new();
    let mut rel = generate(a, b, n)?;
    let res = residual(&rel, &mut norm);
    if !res.is_zero() || rel.terms.len() != 1 {
        return Err(Error::VerificationFailed {
            residual: Box::new(res),
        });
    }
    rel.verified = true;
    Ok(rel)
}

fn leq_r(k: &RawIndex, i: &RawIndex) -> bool {
    k.len() < i.len() || (k.len() == i.len() && k.0.iter().zip(&i.0).all(|(a, b)| a <= b))
}

fn leq_c(l: &RawIndex, j: &RawIndex) -> bool {
    l.len() < j.len() || (l.len() == j.len() && j.0.iter().zip(&l.0).all(|(a, b)| a <= b))
}

/// `(K,L) <_GL (I,J)`: `K ≤_r I`, `L ≤_c J`, and the two differ.
pub fn gl_less(a: &MinorSpec, b: &MinorSpec) -> bool {
    let same = a.rows == b.rows && a.cols == b.cols;
    !same && leq_r(&a.rows, &b.rows) && leq_c(&a.cols, &b.cols)
}
