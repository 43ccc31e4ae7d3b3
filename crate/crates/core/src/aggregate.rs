//! Weighted interactional aggregation: PFIWA, PFIWG and their ordered
//! variants PFIOWA, PFIOWG.
//!
//! All four are evaluated in generator space, one weighted sum per
//! component followed by a single inversion. [`closed_form`] re-derives the
//! same values from the explicit per-family formulas and exists only as an
//! independent cross-check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interact::assemble;
use crate::pfn::Pfn;
use crate::tnorm::TnormFamily;

/// Tolerance on `sum(w) = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// A validated weight vector: every entry in `(0, 1]`, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((index, &value)) = w.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::WeightOutOfRange { index, value });
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightsDoNotSumToOne { sum });
        }
        Ok(Weights(w))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Weights::new(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de> Deserialize<'de> for Weights {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Weights::new(Vec::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Which aggregation operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregationOp {
    Pfiwa,
    Pfiwg,
    Pfiowa,
    Pfiowg,
}

impl AggregationOp {
    pub const ALL: [AggregationOp; 4] =
        [AggregationOp::Pfiwa, AggregationOp::Pfiwg, AggregationOp::Pfiowa, AggregationOp::Pfiowg];

    pub fn name(&self) -> &'static str {
        match self {
            AggregationOp::Pfiwa => "pfiwa",
            AggregationOp::Pfiwg => "pfiwg",
            AggregationOp::Pfiowa => "pfiowa",
            AggregationOp::Pfiowg => "pfiowg",
        }
    }

    pub fn apply(&self, f: &TnormFamily, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
        match self {
            AggregationOp::Pfiwa => pfiwa(f, w, xs),
            AggregationOp::Pfiwg => pfiwg(f, w, xs),
            AggregationOp::Pfiowa => pfiowa(f, w, xs),
            AggregationOp::Pfiowg => pfiowg(f, w, xs),
        }
    }
}

impl fmt::Display for AggregationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AggregationOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AggregationOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

/// Weighted average: the `(+)_T`-sum of `w_j ._T x_j`.
pub fn pfiwa(f: &TnormFamily, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
    check_len(w, xs)?;
    let w = w.as_slice();
    let mu = f.tconorm_weighted(w, &collect(xs, |x| x.mu()))?;
    let outer = f.tnorm_weighted(w, &collect(xs, |x| x.eta() + x.nu()))?;
    let nu = f.tnorm_weighted(w, &collect(xs, |x| x.nu()))?;
    assemble(mu, outer, nu, nu)
}

/// Weighted geometric: the `(x)_T`-product of `x_j ^(w_j)_T`.
pub fn pfiwg(f: &TnormFamily, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
    check_len(w, xs)?;
    let w = w.as_slice();
    let mu = f.tnorm_weighted(w, &collect(xs, |x| x.mu()))?;
    let outer = f.tnorm_weighted(w, &collect(xs, |x| x.eta() + x.mu()))?;
    let nu = f.tconorm_weighted(w, &collect(xs, |x| x.nu()))?;
    assemble(mu, outer, mu, nu)
}

/// Ordered weighted average: weights attach to positions after sorting the
/// inputs in descending admissible order.
pub fn pfiowa(f: &TnormFamily, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
    check_len(w, xs)?;
    pfiwa(f, w, &sorted_descending(xs))
}

pub fn pfiowg(f: &TnormFamily, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
    check_len(w, xs)?;
    pfiwg(f, w, &sorted_descending(xs))
}

/// Stable descending sort under the admissible order; exact duplicates keep
/// their input order.
pub fn sorted_descending(xs: &[Pfn]) -> Vec<Pfn> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| b.cmp_admissible(a));
    v
}

fn check_len(w: &Weights, xs: &[Pfn]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if w.len() != xs.len() {
        return Err(Error::LengthMismatch { left: w.len(), right: xs.len() });
    }
    Ok(())
}

fn collect(xs: &[Pfn], g: impl Fn(&Pfn) -> f64) -> Vec<f64> {
    xs.iter().map(g).collect()
}

/// Non-ordered operator kinds that have per-family closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormKind {
    Pfiwa,
    Pfiwg,
}

/// Evaluates PFIWA/PFIWG from the explicit per-family formulas, without
/// touching the generator code path.
///
/// Meant as an oracle for interior inputs; some boundary inputs produce
/// indeterminate forms, reported as [`Error::DegenerateComponent`].
pub fn closed_form(f: &TnormFamily, kind: ClosedFormKind, w: &Weights, xs: &[Pfn]) -> Result<Pfn> {
    check_len(w, xs)?;
    f.validate()?;
    let w = w.as_slice();
    let mus = collect(xs, |x| x.mu());
    let nus = collect(xs, |x| x.nu());
    let eta_nu = collect(xs, |x| x.eta() + x.nu());
    let eta_mu = collect(xs, |x| x.eta() + x.mu());
    let one_minus = |v: &[f64]| v.iter().map(|x| 1.0 - x).collect::<Vec<_>>();

    let (mu, outer, inner, nu) = match *f {
        TnormFamily::Product => {
            let prod = |v: &[f64]| w.iter().zip(v).map(|(&wj, &x)| x.powf(wj)).product::<f64>();
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = prod(&nus);
                    (1.0 - prod(&one_minus(&mus)), prod(&eta_nu), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = prod(&mus);
                    (m, prod(&eta_mu), m, 1.0 - prod(&one_minus(&nus)))
                }
            }
        }
        TnormFamily::SchweizerSklar(g) => {
            let mean = |v: &[f64]| w.iter().zip(v).map(|(&wj, &x)| wj * x.powf(g)).sum::<f64>().powf(1.0 / g);
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = mean(&nus);
                    (1.0 - mean(&one_minus(&mus)), mean(&eta_nu), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = mean(&mus);
                    (m, mean(&eta_mu), m, 1.0 - mean(&one_minus(&nus)))
                }
            }
        }
        TnormFamily::Hamacher(g) => {
            let h = |v: &[f64]| {
                w.iter().zip(v).map(|(&wj, &x)| ((g + (1.0 - g) * x) / x).powf(wj)).product::<f64>()
            };
            // (H - 1) / (H - 1 + g) written as 1 - g / (H - 1 + g) so H = inf maps to 1
            let up = |hv: f64| 1.0 - g / (hv - 1.0 + g);
            let down = |hv: f64| g / (hv - 1.0 + g);
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = down(h(&nus));
                    (up(h(&one_minus(&mus))), down(h(&eta_nu)), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = down(h(&mus));
                    (m, down(h(&eta_mu)), m, up(h(&one_minus(&nus))))
                }
            }
        }
        TnormFamily::Frank(g) => {
            // prod (g^x - 1)^w; the bases are all negative when g < 1, and
            // sum(w) = 1 lets the sign be pulled out of the product.
            let sign = if g > 1.0 { 1.0 } else { -1.0 };
            let fp = |v: &[f64]| {
                sign * w.iter().zip(v).map(|(&wj, &x)| (g.powf(x) - 1.0).abs().powf(wj)).product::<f64>()
            };
            let log_g = |y: f64| (y + 1.0).ln() / g.ln();
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = log_g(fp(&nus));
                    (1.0 - log_g(fp(&one_minus(&mus))), log_g(fp(&eta_nu)), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = log_g(fp(&mus));
                    (m, log_g(fp(&eta_mu)), m, 1.0 - log_g(fp(&one_minus(&nus))))
                }
            }
        }
        TnormFamily::Dombi(g) => {
            let d = |r: &[f64]| w.iter().zip(r).map(|(&wj, &x)| wj * x.powf(g)).sum::<f64>().powf(1.0 / g);
            let odds = |v: &[f64]| v.iter().map(|x| x / (1.0 - x)).collect::<Vec<_>>();
            let inv_odds = |v: &[f64]| v.iter().map(|x| (1.0 - x) / x).collect::<Vec<_>>();
            // D / (1 + D) written as 1 - 1 / (1 + D)
            let up = |dv: f64| 1.0 - 1.0 / (1.0 + dv);
            let down = |dv: f64| 1.0 / (dv + 1.0);
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = down(d(&inv_odds(&nus)));
                    (up(d(&odds(&mus))), down(d(&inv_odds(&eta_nu))), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = down(d(&inv_odds(&mus)));
                    (m, down(d(&inv_odds(&eta_mu))), m, up(d(&odds(&nus))))
                }
            }
        }
        TnormFamily::AczelAlsina(g) => {
            let a = |v: &[f64]| {
                let s = w.iter().zip(v).map(|(&wj, &x)| wj * (-x.ln()).powf(g)).sum::<f64>();
                (-s.powf(1.0 / g)).exp()
            };
            match kind {
                ClosedFormKind::Pfiwa => {
                    let n = a(&nus);
                    (1.0 - a(&one_minus(&mus)), a(&eta_nu), n, n)
                }
                ClosedFormKind::Pfiwg => {
                    let m = a(&mus);
                    (m, a(&eta_mu), m, 1.0 - a(&one_minus(&nus)))
                }
            }
        }
        TnormFamily::Piecewise => return Err(Error::UnsupportedFamily("piecewise")),
    };
    if [mu, outer, inner, nu].iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateComponent("closed-form aggregation"));
    }
    assemble(mu, outer, inner, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interact::{n_ary_add, scalar_mul};

    const P: TnormFamily = TnormFamily::Product;

    fn p(mu: f64, eta: f64, nu: f64) -> Pfn {
        Pfn::new(mu, eta, nu).unwrap()
    }

    fn row_a1() -> Vec<Pfn> {
        vec![p(0.6, 0.1, 0.2), p(0.5, 0.3, 0.1), p(0.5, 0.1, 0.3), p(0.2, 0.3, 0.4)]
    }

    fn case_weights() -> Weights {
        Weights::new(vec![0.2, 0.3, 0.1, 0.4]).unwrap()
    }

    #[test]
    fn weights_validation() {
        assert!(Weights::new(vec![0.2, 0.3, 0.1, 0.4]).is_ok());
        assert!(matches!(Weights::new(vec![0.5, 0.6]), Err(Error::WeightsDoNotSumToOne { .. })));
        assert!(matches!(Weights::new(vec![1.0, 0.0]), Err(Error::WeightOutOfRange { index: 1, .. })));
        assert!(matches!(Weights::new(vec![]), Err(Error::EmptyInput)));
        assert!(Weights::new(vec![0.5, 0.5 + 5e-10]).is_ok());
        assert_eq!(Weights::uniform(4).unwrap().as_slice(), &[0.25; 4]);
        assert!(serde_json::from_str::<Weights>("[0.5, 0.6]").is_err());
    }

    #[test]
    fn case_study_row_a1() {
        let r = pfiwa(&P, &case_weights(), &row_a1()).unwrap();
        for (got, want) in r.components().iter().zip([0.4229, 0.2492, 0.2232]) {
            assert!((got - want).abs() <= 5e-4, "{r}");
        }
        let oracle = closed_form(&P, ClosedFormKind::Pfiwa, &case_weights(), &row_a1()).unwrap();
        for (a, b) in r.components().iter().zip(oracle.components()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn equals_fold_of_scalar_multiples() {
        let w = case_weights();
        let xs = row_a1();
        let scaled: Vec<_> = w.as_slice().iter().zip(&xs).map(|(&wj, x)| scalar_mul(&P, wj, x).unwrap()).collect();
        let fold = n_ary_add(&P, &scaled).unwrap();
        let direct = pfiwa(&P, &w, &xs).unwrap();
        for (a, b) in direct.components().iter().zip(fold.components()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn single_input_and_idempotency() {
        let x = p(0.31, 0.22, 0.4);
        let one = Weights::new(vec![1.0]).unwrap();
        for (a, b) in pfiwa(&P, &one, &[x]).unwrap().components().iter().zip(x.components()) {
            assert!((a - b).abs() <= 1e-12);
        }
        let r = pfiwg(&TnormFamily::Hamacher(3.0), &case_weights(), &[x; 4]).unwrap();
        for (a, b) in r.components().iter().zip(x.components()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn geometric_stays_closed_on_wei_counterexample() {
        // mu = 0, nu = 1 - (0.9 * 0.1)^0.5 = 0.7, eta = (0.9^0.5 * 0.1^0.5) - 0 = 0.3
        let w = Weights::new(vec![0.5, 0.5]).unwrap();
        let r = pfiwg(&P, &w, &[p(0.0, 0.9, 0.1), p(0.0, 0.1, 0.9)]).unwrap();
        for (got, want) in r.components().iter().zip([0.0, 0.3, 0.7]) {
            assert!((got - want).abs() <= 1e-15, "{r}");
        }
    }

    #[test]
    fn ordered_variants() {
        let w = case_weights();
        let xs = row_a1();
        let sorted = sorted_descending(&xs);
        assert_eq!(pfiowa(&P, &w, &xs).unwrap(), pfiwa(&P, &w, &sorted).unwrap());
        assert_eq!(pfiowg(&P, &w, &sorted).unwrap(), pfiwg(&P, &w, &sorted).unwrap());
        let mut rev = xs.clone();
        rev.reverse();
        assert_eq!(pfiowa(&P, &w, &rev).unwrap(), pfiowa(&P, &w, &xs).unwrap());
        let u = Weights::uniform(4).unwrap();
        let (a, b) = (pfiowa(&P, &u, &xs).unwrap(), pfiwa(&P, &u, &xs).unwrap());
        for (x, y) in a.components().iter().zip(b.components()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn length_and_family_errors() {
        let w = case_weights();
        assert!(matches!(pfiwa(&P, &w, &row_a1()[..3]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(pfiowg(&P, &w, &[]), Err(Error::EmptyInput)));
        assert_eq!(
            closed_form(&TnormFamily::Piecewise, ClosedFormKind::Pfiwa, &w, &row_a1()),
            Err(Error::UnsupportedFamily("piecewise"))
        );
    }

    #[test]
    fn aczel_alsina_one_is_product() {
        let w = case_weights();
        let xs = row_a1();
        for kind in [ClosedFormKind::Pfiwa, ClosedFormKind::Pfiwg] {
            let a = closed_form(&TnormFamily::AczelAlsina(1.0), kind, &w, &xs).unwrap();
            let b = closed_form(&P, kind, &w, &xs).unwrap();
            for (x, y) in a.components().iter().zip(b.components()) {
                assert!((x - y).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn intuitionistic_special_case() {
        // eta = 0 everywhere: the neutral degree of the average stays 0
        let xs = [p(0.3, 0.0, 0.5), p(0.6, 0.0, 0.3), p(0.1, 0.0, 0.8)];
        let w = Weights::new(vec![0.5, 0.3, 0.2]).unwrap();
        let g = 2.5;
        let r = pfiwa(&TnormFamily::AczelAlsina(g), &w, &xs).unwrap();
        let ws = w.as_slice();
        let mu = 1.0
            - (-ws.iter().zip(&xs).map(|(wj, x)| wj * (-(1.0 - x.mu()).ln()).powf(g)).sum::<f64>().powf(1.0 / g))
                .exp();
        let nu = (-ws.iter().zip(&xs).map(|(wj, x)| wj * (-x.nu().ln()).powf(g)).sum::<f64>().powf(1.0 / g)).exp();
        assert!((r.mu() - mu).abs() < 1e-12);
        assert!(r.eta().abs() < 1e-12);
        assert!((r.nu() - nu).abs() < 1e-12);
    }

    #[test]
    fn op_names() {
        for op in AggregationOp::ALL {
            assert_eq!(op.name().parse::<AggregationOp>().unwrap(), op);
        }
        assert!("owa".parse::<AggregationOp>().is_err());
        assert_eq!(serde_json::to_string(&AggregationOp::Pfiowg).unwrap(), "\"pfiowg\"");
    }
}
