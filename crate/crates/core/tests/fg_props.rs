use proptest::prelude::*;
use qminor::algebra::{
    column_action, is_in_column_order, is_in_row_order, order_target, row_action,
};
use qminor::fg::{apply_f, apply_g, coeff_e, reorder_cols_to, reorder_rows, reorder_rows_to};
use qminor::rewrite::{congruent, normal_form};
use qminor::{Gen, LaurentPoly, Perm, RawIndex, Tensor, Word};

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// A word whose rows form a permutation of `1..=n` and whose columns are
/// arbitrary in `1..=n`.
fn row_perm_word() -> impl Strategy<Value = Word> {
    (2usize..=4).prop_flat_map(|n| {
        (perm_strategy(n), prop::collection::vec(1..=n as u32, n)).prop_map(|(rows, cols)| {
            Word(
                rows.into_iter()
                    .zip(cols)
                    .map(|(r, c)| Gen::new(r, c))
                    .collect(),
            )
        })
    })
}

/// `θ_PQ` with `P` and `Q` both permutations of `1..=n`.
fn theta_pq() -> impl Strategy<Value = Word> {
    (2usize..=4).prop_flat_map(|n| {
        (perm_strategy(n), perm_strategy(n)).prop_map(|(rows, cols)| {
            Word(
                rows.into_iter()
                    .zip(cols)
                    .map(|(r, c)| Gen::new(r, c))
                    .collect(),
            )
        })
    })
}

fn transpose_word(w: &Word) -> Word {
    Word(w.letters().iter().map(|g| Gen::new(g.col, g.row)).collect())
}

fn sigma_rows(t: &Tensor, m: u32, n: usize) -> Tensor {
    row_action(&Perm::transposition(n, m, m + 1), t).unwrap()
}

fn sigma_cols(t: &Tensor, m: u32, n: usize) -> Tensor {
    column_action(&Perm::transposition(n, m, m + 1), t).unwrap()
}

fn correction(sign: i32, t: &Tensor) -> Tensor {
    t.scale(&LaurentPoly::q_inv_minus_q().scale(&sign.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn f_and_g_preserve_the_class(w in row_perm_word(), pos in 0usize..3, use_g in any::<bool>()) {
        let pos = pos % (w.len() - 1);
        let (x, y) = (w.letters()[pos], w.letters()[pos + 1]);
        let t = Tensor::from_word(w.clone());
        let out = if use_g {
            apply_g(&t, &w, x.row, x.col, y.row, y.col).unwrap()
        } else {
            apply_f(&t, &w, x.row, x.col, y.row, y.col).unwrap()
        };
        prop_assert!(congruent(&out, &t));
    }

    #[test]
    fn f_under_row_transposition(w in theta_pq(), pos in 0usize..3, m in 1u32..4) {
        let n = w.len();
        let pos = pos % (n - 1);
        let m = 1 + (m - 1) % (n as u32 - 1);
        let (x, y) = (w.letters()[pos], w.letters()[pos + 1]);
        let s = Perm::transposition(n, m, m + 1);
        let theta = Tensor::from_word(w.clone());
        let st = sigma_rows(&theta, m, n);
        let sw = st.words().next().unwrap().clone();
        let lhs = apply_f(&st, &sw, s.apply(x.row), x.col, s.apply(y.row), y.col).unwrap();
        let base = sigma_rows(&apply_f(&theta, &w, x.row, x.col, y.row, y.col).unwrap(), m, n);
        let expected = if (x.row, y.row) == (m + 1, m) {
            &base + &correction(1, &theta)
        } else if (x.row, y.row) == (m, m + 1) {
            &base + &correction(-1, &theta)
        } else {
            base
        };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn g_under_column_transposition(w in theta_pq(), pos in 0usize..3, m in 1u32..4) {
        let w = transpose_word(&w);
        let n = w.len();
        let pos = pos % (n - 1);
        let m = 1 + (m - 1) % (n as u32 - 1);
        let (x, y) = (w.letters()[pos], w.letters()[pos + 1]);
        let s = Perm::transposition(n, m, m + 1);
        let theta = Tensor::from_word(w.clone());
        let st = sigma_cols(&theta, m, n);
        let sw = st.words().next().unwrap().clone();
        let lhs = apply_g(&st, &sw, x.row, s.apply(x.col), y.row, s.apply(y.col)).unwrap();
        let base = sigma_cols(&apply_g(&theta, &w, x.row, x.col, y.row, y.col).unwrap(), m, n);
        let expected = if (x.col, y.col) == (m + 1, m) {
            &base + &correction(1, &theta)
        } else if (x.col, y.col) == (m, m + 1) {
            &base + &correction(-1, &theta)
        } else {
            base
        };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn reorder_rows_reaches_target(w in row_perm_word(), mask in any::<u8>()) {
        let n = w.len();
        let k = RawIndex((1..=n as u32).filter(|i| mask & (1 << i) != 0).collect());
        let t = Tensor::from_word(w);
        let out = reorder_rows(&t, &k).unwrap();
        prop_assert!(is_in_row_order(&out, &k));
        prop_assert!(congruent(&out, &t));
    }

    #[test]
    fn row_reordering_commutes_with_transposition_up_to_e(
        w1 in theta_pq(),
        cols2 in perm_strategy(4),
        mask in any::<u8>(),
        m in 1u32..4,
    ) {
        let n = w1.len();
        let m = 1 + (m - 1) % (n as u32 - 1);
        let p: Vec<u32> = w1.rows();
        let w2 = Word(p.iter().zip(&cols2).map(|(&r, &c)| Gen::new(r, 1 + (c - 1) % n as u32)).collect());
        let mut t = Tensor::from_word(w1);
        t.add_term(w2, &LaurentPoly::q_pow(2));
        let k = RawIndex((1..=n as u32).filter(|i| mask & (1 << i) != 0).collect());
        let target = order_target(&k, n);
        let s = Perm::transposition(n, m, m + 1);
        let lhs = reorder_rows_to(&sigma_rows(&t, m, n), &target.map(|v| s.apply(v))).unwrap();
        let rhs = sigma_rows(&reorder_rows_to(&t, &target).unwrap(), m, n);
        let e = coeff_e(m, &target, &RawIndex(p)).unwrap().value();
        prop_assert_eq!(normal_form(&(&lhs - &rhs)), normal_form(&correction(e.into(), &t)));
    }

    #[test]
    fn column_reordering_commutes_with_transposition_up_to_e(
        w1 in theta_pq(),
        rows2 in perm_strategy(4),
        mask in any::<u8>(),
        m in 1u32..4,
    ) {
        let w1 = transpose_word(&w1);
        let n = w1.len();
        let m = 1 + (m - 1) % (n as u32 - 1);
        let qs: Vec<u32> = w1.cols();
        let w2 = Word(qs.iter().zip(&rows2).map(|(&c, &r)| Gen::new(1 + (r - 1) % n as u32, c)).collect());
        let mut t = Tensor::from_word(w1);
        t.add_term(w2, &LaurentPoly::constant(-3));
        let l = RawIndex((1..=n as u32).filter(|i| mask & (1 << i) != 0).collect());
        let target = order_target(&l, n);
        let s = Perm::transposition(n, m, m + 1);
        let lhs = reorder_cols_to(&sigma_cols(&t, m, n), &target.map(|v| s.apply(v))).unwrap();
        let rhs = sigma_cols(&reorder_cols_to(&t, &target).unwrap(), m, n);
        prop_assert!(is_in_column_order(&reorder_cols_to(&t, &target).unwrap(), &l));
        let e = coeff_e(m, &target, &RawIndex(qs)).unwrap().value();
        prop_assert_eq!(normal_form(&(&lhs - &rhs)), normal_form(&correction(e.into(), &t)));
    }
}

#[test]
fn f_and_g_congruence_exhaustive() {
    use itertools::Itertools;
    let mut norm = qminor::rewrite::Normalizer::new();
    let letters: Vec<Gen> = (1..=3)
        .cartesian_product(1..=3)
        .map(|(r, c)| Gen::new(r, c))
        .collect();
    for len in 2..=4 {
        for w in std::iter::repeat_n(letters.iter().copied(), len).multi_cartesian_product() {
            let w = Word(w);
            let t = Tensor::from_word(w.clone());
            let nf = norm.normal_form(&t);
            for pos in 0..len - 1 {
                let (x, y) = (w.letters()[pos], w.letters()[pos + 1]);
                for out in [
                    apply_f(&t, &w, x.row, x.col, y.row, y.col).unwrap(),
                    apply_g(&t, &w, x.row, x.col, y.row, y.col).unwrap(),
                ] {
                    assert_eq!(norm.normal_form(&out), nf, "{w} at {pos}");
                }
            }
        }
    }
}
