mod common;

use common::{arb_comparable, arb_family, arb_pfn, close, pfn};
use picfuzz::interact::{complement, n_ary_add, n_ary_mul, pfn_add, pfn_mul, pfn_pow, scalar_mul};
use picfuzz::{Error, Pfn, TnormFamily};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = f64> {
    prop_oneof![0.01..10.0f64, Just(1.0), Just(0.5), Just(2.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn results_stay_in_the_set(f in arb_family(), x in arb_pfn(), y in arb_pfn(), l in lambda()) {
        for r in [pfn_add(&f, &x, &y), pfn_mul(&f, &x, &y), scalar_mul(&f, l, &x), pfn_pow(&f, l, &x)] {
            let r = r.unwrap();
            prop_assert!(r.mu() + r.eta() + r.nu() <= 1.0 + 1e-12, "{f}: {r}");
            prop_assert!(r.components().iter().all(|c| (0.0..=1.0).contains(c)));
        }
    }

    #[test]
    fn complement_swaps_the_laws(f in arb_family(), x in arb_pfn(), y in arb_pfn(), l in lambda()) {
        let (cx, cy) = (complement(&x), complement(&y));
        let l_add = complement(&pfn_add(&f, &x, &y).unwrap());
        prop_assert!(close(&l_add, &pfn_mul(&f, &cx, &cy).unwrap(), 1e-12));
        let l_scalar = complement(&scalar_mul(&f, l, &x).unwrap());
        prop_assert!(close(&l_scalar, &pfn_pow(&f, l, &cx).unwrap(), 1e-12));
    }

    #[test]
    fn neutral_elements(f in arb_family(), x in arb_pfn()) {
        prop_assert!(close(&pfn_add(&f, &x, &Pfn::BOTTOM).unwrap(), &x, 1e-9), "{f}");
        prop_assert!(close(&pfn_mul(&f, &x, &Pfn::TOP).unwrap(), &x, 1e-9), "{f}");
        prop_assert!(close(&scalar_mul(&f, 1.0, &x).unwrap(), &x, 1e-9), "{f}");
    }

    #[test]
    fn laws_are_monotone(f in arb_family(), (lo, hi) in arb_comparable(), z in arb_pfn(), l in lambda()) {
        for (a, b) in [
            (pfn_add(&f, &lo, &z), pfn_add(&f, &hi, &z)),
            (pfn_mul(&f, &lo, &z), pfn_mul(&f, &hi, &z)),
            (scalar_mul(&f, l, &lo), scalar_mul(&f, l, &hi)),
        ] {
            let (a, b) = (a.unwrap(), b.unwrap());
            prop_assert!(a.mu() <= b.mu() + 1e-9 && a.nu() + 1e-9 >= b.nu(), "{f}: {a} vs {b}");
        }
    }

    #[test]
    fn n_ary_equals_fold(f in arb_family(), xs in prop::collection::vec(arb_pfn(), 1..6)) {
        let fold = xs[1..].iter().try_fold(xs[0], |a, b| pfn_add(&f, &a, b)).unwrap();
        prop_assert!(close(&n_ary_add(&f, &xs).unwrap(), &fold, 1e-12), "{f}");
        let fold = xs[1..].iter().try_fold(xs[0], |a, b| pfn_mul(&f, &a, b)).unwrap();
        prop_assert!(close(&n_ary_mul(&f, &xs).unwrap(), &fold, 1e-12), "{f}");
    }

    #[test]
    fn integer_scalar_is_repeated_sum(f in arb_family(), x in arb_pfn(), n in 1usize..5) {
        let sum = n_ary_add(&f, &vec![x; n]).unwrap();
        prop_assert!(close(&scalar_mul(&f, n as f64, &x).unwrap(), &sum, 1e-9), "{f}");
    }
}

#[test]
fn product_law_values() {
    let f = TnormFamily::Product;
    let s = pfn_add(&f, &pfn(0.5, 0.25, 0.25), &pfn(0.5, 0.25, 0.25)).unwrap();
    // mu = 1 - 0.25, eta + nu = 0.25, nu = 0.0625
    assert!(close(&s, &pfn(0.75, 0.1875, 0.0625), 1e-12));
    let m = pfn_mul(&f, &pfn(0.25, 0.75, 0.0), &pfn(0.25, 0.0, 0.75)).unwrap();
    assert!(close(&m, &pfn(0.0625, 0.1875, 0.75), 1e-12), "{m}");
}

#[test]
fn bad_scalars_are_rejected() {
    let x = pfn(0.3, 0.3, 0.3);
    for l in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(matches!(scalar_mul(&TnormFamily::Product, l, &x), Err(Error::NonPositiveScalar(_))), "{l}");
        assert!(pfn_pow(&TnormFamily::Product, l, &x).is_err());
    }
    assert!(n_ary_add(&TnormFamily::Product, &[]).is_err());
}
