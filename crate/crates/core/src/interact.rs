//! Interactional operational laws on PFNs.
//!
//! The neutral degree is always derived from a combined mass (`eta + nu`
//! for sums, `eta + mu` for products), which is what keeps every result
//! inside the PFN simplex for any strict t-norm:
//!
//! ```text
//! a (+) b  = < S(mu1, mu2),  T(eta1+nu1, eta2+nu2) - T(nu1, nu2),  T(nu1, nu2) >
//! a (x) b  = < T(mu1, mu2),  T(eta1+mu1, eta2+mu2) - T(mu1, mu2),  S(nu1, nu2) >
//! l . a    = < z^-1(l z(mu)),  t^-1(l t(eta+nu)) - t^-1(l t(nu)),  t^-1(l t(nu)) >
//! a ^ l    = < t^-1(l t(mu)),  t^-1(l t(eta+mu)) - t^-1(l t(mu)),  z^-1(l z(nu)) >
//! ```

use crate::error::{Error, Result};
use crate::pfn::Pfn;
use crate::tnorm::{GeneratorValue, TnormFamily};

/// Largest negative neutral degree treated as rounding noise.
pub const MIDDLE_CLAMP: f64 = 1e-12;

pub fn complement(x: &Pfn) -> Pfn {
    x.complement()
}

/// `x (+)_T y`.
pub fn pfn_add(f: &TnormFamily, x: &Pfn, y: &Pfn) -> Result<Pfn> {
    let mu = f.tconorm(x.mu(), y.mu())?;
    let outer = f.tnorm(x.eta() + x.nu(), y.eta() + y.nu())?;
    let nu = f.tnorm(x.nu(), y.nu())?;
    assemble(mu, outer, nu, nu)
}

/// `x (x)_T y`.
pub fn pfn_mul(f: &TnormFamily, x: &Pfn, y: &Pfn) -> Result<Pfn> {
    let mu = f.tnorm(x.mu(), y.mu())?;
    let outer = f.tnorm(x.eta() + x.mu(), y.eta() + y.mu())?;
    let nu = f.tconorm(x.nu(), y.nu())?;
    assemble(mu, outer, mu, nu)
}

/// `lambda ._T x`.
pub fn scalar_mul(f: &TnormFamily, lambda: f64, x: &Pfn) -> Result<Pfn> {
    check_lambda(lambda)?;
    let mu = f.zeta_inv(f.zeta(x.mu())? * lambda)?;
    let outer = f.tau_inv(f.tau(x.eta() + x.nu())? * lambda)?;
    let nu = f.tau_inv(f.tau(x.nu())? * lambda)?;
    assemble(mu, outer, nu, nu)
}

/// `x ^(lambda)_T`.
pub fn pfn_pow(f: &TnormFamily, lambda: f64, x: &Pfn) -> Result<Pfn> {
    check_lambda(lambda)?;
    let mu = f.tau_inv(f.tau(x.mu())? * lambda)?;
    let outer = f.tau_inv(f.tau(x.eta() + x.mu())? * lambda)?;
    let nu = f.zeta_inv(f.zeta(x.nu())? * lambda)?;
    assemble(mu, outer, mu, nu)
}

/// `x_1 (+)_T ... (+)_T x_n`, evaluated in generator space with one
/// inversion per component.
pub fn n_ary_add(f: &TnormFamily, xs: &[Pfn]) -> Result<Pfn> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mu = f.zeta_inv(sum_of(xs, |x| f.zeta(x.mu()))?)?;
    let outer = f.tau_inv(sum_of(xs, |x| f.tau(x.eta() + x.nu()))?)?;
    let nu = f.tau_inv(sum_of(xs, |x| f.tau(x.nu()))?)?;
    assemble(mu, outer, nu, nu)
}

/// `x_1 (x)_T ... (x)_T x_n`.
pub fn n_ary_mul(f: &TnormFamily, xs: &[Pfn]) -> Result<Pfn> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mu = f.tau_inv(sum_of(xs, |x| f.tau(x.mu()))?)?;
    let outer = f.tau_inv(sum_of(xs, |x| f.tau(x.eta() + x.mu()))?)?;
    let nu = f.zeta_inv(sum_of(xs, |x| f.zeta(x.nu()))?)?;
    assemble(mu, outer, mu, nu)
}

fn sum_of(xs: &[Pfn], g: impl Fn(&Pfn) -> Result<GeneratorValue>) -> Result<GeneratorValue> {
    xs.iter().map(g).sum()
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveScalar(lambda))
    }
}

/// Builds `<mu, outer - inner, nu>`, absorbing rounding noise in the
/// neutral degree. Any failure here is a defect, not bad input.
pub(crate) fn assemble(mu: f64, outer: f64, inner: f64, nu: f64) -> Result<Pfn> {
    let mut eta = outer - inner;
    if eta < 0.0 {
        if eta < -MIDDLE_CLAMP {
            return Err(Error::Internal(format!("negative neutral degree {eta:e} ({outer} - {inner})")));
        }
        eta = 0.0;
    }
    Pfn::new(mu, eta, nu).map_err(|e| Error::Internal(format!("result <{mu},{eta},{nu}> left the PFN set: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: TnormFamily = TnormFamily::Product;

    fn p(mu: f64, eta: f64, nu: f64) -> Pfn {
        Pfn::new(mu, eta, nu).unwrap()
    }

    fn close(a: &Pfn, b: [f64; 3], tol: f64) -> bool {
        a.components().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn complement_swaps() {
        assert_eq!(complement(&p(0.6, 0.1, 0.2)), p(0.2, 0.1, 0.6));
        assert_eq!(complement(&Pfn::BOTTOM), Pfn::TOP);
        let x = p(0.3, 0.25, 0.4);
        assert_eq!(complement(&complement(&x)), x);
    }

    #[test]
    fn neutral_elements() {
        let x = p(0.35, 0.2, 0.3);
        for f in [P, TnormFamily::Hamacher(3.0), TnormFamily::Dombi(0.5), TnormFamily::SchweizerSklar(-2.0)] {
            assert!(close(&pfn_add(&f, &x, &Pfn::BOTTOM).unwrap(), x.components(), 1e-12), "{f}");
            assert!(close(&pfn_mul(&f, &x, &Pfn::TOP).unwrap(), x.components(), 1e-12), "{f}");
            assert!(close(&scalar_mul(&f, 1.0, &x).unwrap(), x.components(), 1e-12), "{f}");
            assert!(close(&pfn_pow(&f, 1.0, &x).unwrap(), x.components(), 1e-12), "{f}");
        }
    }

    // Expected values below come from evaluating the product formulas by hand:
    // S(a,b) = a + b - ab, T(a,b) = ab, lambda-multiples via powers.
    #[test]
    fn product_family_values() {
        let a = p(0.25, 0.75, 0.0);
        let b = p(0.25, 0.0, 0.75);
        // mu = 0.4375, eta = T(0.75, 0.75) - T(0, 0.75) = 0.5625, nu = 0
        assert!(close(&pfn_add(&P, &a, &b).unwrap(), [0.4375, 0.5625, 0.0], 1e-15));
        // mu = 0.0625, eta = T(1, 0.25) - 0.0625 = 0.1875, nu = S(0, 0.75) = 0.75
        assert!(close(&pfn_mul(&P, &a, &b).unwrap(), [0.0625, 0.1875, 0.75], 1e-15));

        let x = p(0.5, 0.25, 0.25);
        assert!(close(&scalar_mul(&P, 2.0, &x).unwrap(), [0.75, 0.1875, 0.0625], 1e-15));
        assert!(close(&pfn_pow(&P, 2.0, &x).unwrap(), [0.25, 0.3125, 0.4375], 1e-15));

        let h = 0.5f64.sqrt();
        let y = scalar_mul(&P, 0.5, &p(0.0, 0.5, 0.5)).unwrap();
        assert!(close(&y, [0.0, 1.0 - h, h], 1e-15));
        assert!((y.mu() + y.eta() + y.nu() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn n_ary_matches_closed_form_and_fold() {
        let x = p(0.5, 0.25, 0.25);
        let got = n_ary_add(&P, &[x, x, x]).unwrap();
        assert!(close(&got, [0.875, 0.109375, 0.015625], 1e-15));
        let fold = pfn_add(&P, &pfn_add(&P, &x, &x).unwrap(), &x).unwrap();
        assert!(close(&got, fold.components(), 1e-12));

        let (a, b) = (p(0.1, 0.6, 0.2), p(0.4, 0.3, 0.3));
        assert_eq!(n_ary_add(&P, &[a, b]).unwrap(), pfn_add(&P, &a, &b).unwrap());
        assert_eq!(n_ary_mul(&P, &[a, b]).unwrap(), pfn_mul(&P, &a, &b).unwrap());
        assert_eq!(n_ary_add(&P, &[]), Err(Error::EmptyInput));
        assert_eq!(n_ary_mul(&P, &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn intuitionistic_reduction() {
        let (a, b) = (p(0.3, 0.0, 0.6), p(0.5, 0.0, 0.2));
        let s = pfn_add(&P, &a, &b).unwrap();
        assert!(close(&s, [0.3 + 0.5 - 0.15, 0.0, 0.12], 1e-15));
        let m = pfn_mul(&P, &a, &b).unwrap();
        assert!(close(&m, [0.15, 0.0, 0.6 + 0.2 - 0.12], 1e-15));
    }

    #[test]
    fn bad_lambda() {
        let x = p(0.2, 0.2, 0.2);
        assert_eq!(scalar_mul(&P, 0.0, &x), Err(Error::NonPositiveScalar(0.0)));
        assert!(pfn_pow(&P, -1.0, &x).is_err());
        assert!(pfn_pow(&P, f64::NAN, &x).is_err());
    }

    #[test]
    fn closed_where_legacy_dombi_is_not() {
        let (a, b) = (p(0.25, 0.75, 0.0), p(0.25, 0.0, 0.75));
        for g in [0.5, 1.0, 2.0, 5.0] {
            let r = pfn_mul(&TnormFamily::Dombi(g), &a, &b).unwrap();
            assert!(r.mu() + r.eta() + r.nu() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn assemble_rejects_real_violations() {
        assert!(assemble(0.2, 0.3, 0.3 + 1e-13, 0.3).unwrap().eta() == 0.0);
        assert!(matches!(assemble(0.2, 0.3, 0.31, 0.3), Err(Error::Internal(_))));
        assert!(matches!(assemble(0.9, 0.6, 0.0, 0.0), Err(Error::Internal(_))));
    }
}
