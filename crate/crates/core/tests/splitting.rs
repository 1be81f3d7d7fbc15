mod common;

use common::strategies::{ordered, raw, values, RawWeights};
use hardy_core::bounds::{b_dd_lower, b_dd_upper, b_nn_lower, b_nn_upper};
use hardy_core::splitting::{
    dd_b_curves, dd_find_crossing, dd_split_identities, dd_split_weights, dd_witness, nn_b_curves, nn_c_curves, nn_find_crossing,
    nn_find_crossing_c, nn_split_identities, nn_witness,
};
use hardy_core::variational::{eigen_oracle_raw, ratio};
use hardy_core::{Argmax, Case, Exponents, LeftBoundary, RightBoundary, Sequence};
use proptest::prelude::*;

fn with_values(min: usize, max: usize) -> impl Strategy<Value = (RawWeights, Vec<f64>)> {
    raw(min, max).prop_flat_map(|r| {
        let n = r.u.len();
        (Just(r), values(n))
    })
}

fn pair(a: Argmax) -> (i64, i64) {
    match a {
        Argmax::Pair(x, y) => (x, y),
        Argmax::Index(_) => unreachable!(),
    }
}

/// Equal up to summation order.
fn same(a: (f64, f64), b: (f64, f64)) -> bool {
    let eq = |s: f64, t: f64| (s - t).abs() <= 1e-14 * s.abs().max(t.abs());
    eq(a.0, b.0) && eq(a.1, b.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn dd_identities((w, mut x) in with_values(2, 12), e in ordered(), at in 0.0f64..1.0, gamma in 0.0f64..=1.0) {
        let w = w.build(&e);
        *x.last_mut().unwrap() = 0.0;
        let x = Sequence::new(w.first(), x, LeftBoundary::DirichletZero, RightBoundary::DirichletZero);
        let zeta = w.first() + (at * (w.len() - 1) as f64) as i64;
        let check = dd_split_identities(&w, &e, &x, zeta, gamma).unwrap();
        prop_assert!(check.max_rel_err() <= 1e-12, "{check:?}");
    }

    #[test]
    fn nn_identities((w, x) in with_values(2, 12), e in ordered(), at in 0.0f64..1.0, gamma in 0.0f64..=1.0) {
        let w = w.build(&e);
        let x = Sequence::new(w.first(), x, LeftBoundary::NeumannCopy, RightBoundary::Free);
        let zeta = w.first() + 1 + (at * (w.len() - 1) as f64) as i64;
        let check = nn_split_identities(&w, &e, &x, zeta, gamma).unwrap();
        prop_assert!(check.max_rel_err() <= 1e-12, "{check:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn crossings_balance_and_stay_below_the_upper_constant(w in raw(2, 20), e in ordered()) {
        let w = w.build(&e);
        let dd = dd_find_crossing(&w, &e).unwrap();
        prop_assert!(dd.relative_gap() <= 1e-10, "{dd:?}");
        prop_assert!(dd.b_minus <= b_dd_upper(&w, &e).unwrap().value * (1.0 + 1e-12));
        let nn = nn_find_crossing(&w, &e).unwrap();
        prop_assert!(nn.relative_gap() <= 1e-10, "{nn:?}");
        prop_assert!(nn.b_minus <= b_nn_upper(&w, &e).unwrap().value * (1.0 + 1e-12));
    }

    #[test]
    fn curve_shift_identities(w in raw(3, 16), e in ordered()) {
        let w = w.build(&e);
        for zeta in w.first()..w.last() {
            prop_assert!(same(dd_b_curves(&w, &e, zeta, 0.0).unwrap(), dd_b_curves(&w, &e, zeta + 1, 1.0).unwrap()));
            prop_assert!(same(nn_b_curves(&w, &e, zeta, 1.0).unwrap(), nn_b_curves(&w, &e, zeta + 1, 0.0).unwrap()));
        }
        let (x, y) = (w.first(), w.last());
        for zeta in x + 2..=y {
            let a = nn_c_curves(&w, &e, x, y, zeta, 0.0).unwrap();
            let b = nn_c_curves(&w, &e, x, y, zeta - 1, 1.0).unwrap();
            prop_assert!(same(a, b), "{a:?} vs {b:?}");
        }
        let c = nn_find_crossing_c(&w, &e, x, y).unwrap();
        prop_assert!(c.relative_gap() <= 1e-10);
    }

    #[test]
    fn witnesses_reach_the_lower_constants(w in raw(2, 20), e in ordered()) {
        let w = w.build(&e);
        let lower = b_dd_lower(&w, &e).unwrap();
        let (x, y) = pair(lower.argmax);
        let r = ratio(Case::DD, &dd_witness(&w, x, y).unwrap(), &w, &e).unwrap();
        prop_assert!(r >= lower.value * (1.0 - 1e-10), "{r} < {}", lower.value);
        let lower = b_nn_lower(&w, &e).unwrap();
        let (x, y) = pair(lower.argmax);
        let r = ratio(Case::NN, &nn_witness(&w, &e, x, y).unwrap(), &w, &e).unwrap();
        prop_assert!(r >= lower.value * (1.0 - 1e-9), "{r} < {}", lower.value);
    }

    #[test]
    fn split_problems_bracket_the_whole(w in raw(2, 8)) {
        let e = Exponents::new(2.0, 2.0).unwrap();
        let w = w.build(&e);
        let whole = eigen_oracle_raw(Case::DD, w.u(), w.v()).unwrap();
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        for zeta in w.first()..w.last() {
            for k in 0..=10 {
                let (left, right) = dd_split_weights(&w, zeta, k as f64 / 10.0).unwrap();
                let a_minus = eigen_oracle_raw(Case::DN, &left.u, &left.v(2.0)).unwrap();
                let a_plus = eigen_oracle_raw(Case::ND, &right.u[..right.u.len() - 1], &right.v(2.0)).unwrap();
                lo = lo.max(a_minus.min(a_plus));
                hi = hi.min(a_minus.max(a_plus));
            }
        }
        prop_assert!(lo <= whole * (1.0 + 1e-12), "{lo} > {whole}");
        prop_assert!(whole <= hi * (1.0 + 1e-12), "{whole} > {hi}");
    }
}
