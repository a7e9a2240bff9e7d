use fracnabla::identities::*;
use fracnabla::{FracOrder, GridFn, Rational, Scalar};
use num::Zero;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

fn pair(n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-9i64..=9, n + 1), prop::collection::vec(-9i64..=9, n + 1))
}

fn grid_pair() -> impl Strategy<Value = (GridFn<Rational>, GridFn<Rational>, i64)> {
    (2usize..9).prop_flat_map(pair).prop_map(|(f, g)| {
        let n = f.len() as i64 - 1;
        let to = |v: Vec<i64>| GridFn::new(q(0, 1), 0, v.into_iter().map(|x| q(x, 1)).collect());
        (to(f), to(g), n)
    })
}

fn any_order() -> impl Strategy<Value = FracOrder<Rational>> {
    (1i64..16, 2i64..8).prop_filter("non-integer", |(p, d)| p % d != 0).prop_map(|(p, d)| FracOrder::from_ratio(p, d).unwrap())
}

fn unit_order() -> impl Strategy<Value = FracOrder<Rational>> {
    (1i64..7, 7i64..8).prop_map(|(p, d)| FracOrder::from_ratio(p, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn by_parts_formulas_hold_exactly((f, g, n) in grid_pair(), alpha in any_order()) {
        for r in [
            check_sum_by_parts(&f, &g, &alpha, 0, n).unwrap(),
            check_riemann_by_parts(&f, &g, &alpha, 0, n).unwrap(),
            check_delta_sum_by_parts(&f, &g, &alpha, 0, n).unwrap(),
            check_delta_diff_by_parts(&f, &g, &alpha, 0, n).unwrap(),
        ] {
            prop_assert!(r.residual.is_zero(), "{:?}", r.id);
        }
    }

    #[test]
    fn caputo_formulas_hold_exactly((f, g, n) in grid_pair(), alpha in unit_order()) {
        let r = check_caputo_by_parts(&f, &g, &alpha, 0, n).unwrap();
        prop_assert!(r.passes());
        let r = check_riemann_caputo_by_parts(&f, &g, &alpha, 0, n).unwrap();
        prop_assert!(r.passes());
        prop_assert!(r.secondary.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn anchor_b_defect_matches_closed_form((f, g, n) in grid_pair(), alpha in unit_order()) {
        let (residual, predicted) = riemann_caputo_anchor_b_defect(&f, &g, &alpha, 0, n).unwrap();
        prop_assert_eq!(residual, predicted);
    }

    #[test]
    fn shift_properties_hold_exactly((f, _, _) in grid_pair(), alpha in any_order()) {
        prop_assume!(f.len() > alpha.n());
        for r in check_shift_properties(&f, &alpha).unwrap() {
            prop_assert!(r.residual.is_zero(), "{:?}", r.id);
        }
    }

    #[test]
    fn by_parts_is_bilinear((f, g, n) in grid_pair(), alpha in any_order(), c in -4i64..4) {
        let scaled = f.map(|_, v| v.clone() * q(c, 1));
        let r1 = check_riemann_by_parts(&f, &g, &alpha, 0, n).unwrap();
        let r2 = check_riemann_by_parts(&scaled, &g, &alpha, 0, n).unwrap();
        prop_assert_eq!(r2.lhs, r1.lhs * q(c, 1));
    }
}

#[test]
fn trials_are_deterministic() {
    let alpha = FracOrder::<Rational>::from_ratio(2, 3).unwrap();
    assert_eq!(records(&run_trial(&alpha, 7, 99).unwrap()), records(&run_trial(&alpha, 7, 99).unwrap()));
    assert_ne!(run_trial(&alpha, 7, 99).unwrap()[0].lhs, run_trial(&alpha, 7, 100).unwrap()[0].lhs);
}

#[test]
fn float_reports_pass_at_large_n() {
    let alpha = FracOrder::<f64>::from_ratio(5, 4).unwrap();
    for r in run_trial(&alpha, 64, 3).unwrap() {
        assert!(r.passes(), "{:?} residual {}", r.id, r.residual);
    }
}

#[test]
fn checks_reject_short_grids_and_bad_orders() {
    let f = GridFn::constant(q(0, 1), 0, 4, q(1, 1));
    let half = FracOrder::from_ratio(1, 2).unwrap();
    assert!(check_sum_by_parts(&f, &f, &half, 0, 1).is_err());
    assert!(check_caputo_by_parts(&f, &f, &FracOrder::from_ratio(3, 2).unwrap(), 0, 4).is_err());
    assert!(check_riemann_by_parts(&f, &f, &FracOrder::from_ratio(2, 1).unwrap(), 0, 4).is_err());
    assert!(check_sum_by_parts(&f, &f, &half, 0, 6).is_err());
}
