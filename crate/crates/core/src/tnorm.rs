//! Strict t-norms given by additive generators.
//!
//! Every family here is strict, so its generator `tau` is a continuous,
//! strictly decreasing bijection `[0, 1] -> [0, +inf]` with `tau(1) = 0` and
//! `tau(0) = +inf`, and the pseudo-inverse is the ordinary inverse:
//!
//! ```text
//! T(x, y) = tau^-1(tau(x) + tau(y))
//! S(x, y) = zeta^-1(zeta(x) + zeta(y)),   zeta(u) = tau(1 - u)
//! ```

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pfn::EPS_SUM;

/// A value of an additive generator: a non-negative real or `+inf`.
///
/// `+inf` is carried exactly (IEEE infinity), so `tau(0)` never gets clamped
/// to a large finite number.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GeneratorValue(f64);

impl GeneratorValue {
    pub const ZERO: GeneratorValue = GeneratorValue(0.0);
    pub const INFINITY: GeneratorValue = GeneratorValue(f64::INFINITY);

    pub fn new(v: f64) -> Result<Self> {
        if v >= 0.0 {
            Ok(GeneratorValue(v))
        } else {
            Err(Error::NegativeGeneratorValue(v))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// Multiplies by a positive factor (`lambda * inf = inf`).
    pub fn scale(self, lambda: f64) -> GeneratorValue {
        debug_assert!(lambda > 0.0);
        if self.is_infinite() {
            self
        } else {
            // underflow of tiny products to 0 is harmless, overflow goes to inf
            GeneratorValue(self.0 * lambda)
        }
    }
}

impl Add for GeneratorValue {
    type Output = GeneratorValue;

    fn add(self, rhs: GeneratorValue) -> GeneratorValue {
        GeneratorValue(self.0 + rhs.0)
    }
}

impl Mul<f64> for GeneratorValue {
    type Output = GeneratorValue;

    fn mul(self, lambda: f64) -> GeneratorValue {
        self.scale(lambda)
    }
}

impl std::iter::Sum for GeneratorValue {
    fn sum<I: Iterator<Item = GeneratorValue>>(iter: I) -> Self {
        iter.fold(GeneratorValue::ZERO, Add::add)
    }
}

/// A strict t-norm family, with its parameter where it has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TnormFamily {
    /// `T(x, y) = xy`, generator `-ln x`.
    Product,
    /// Generator `x^g - 1`, `g < 0`.
    SchweizerSklar(f64),
    /// Generator `ln((g + (1 - g) x) / x)`, `g > 0`.
    Hamacher(f64),
    /// Generator `-ln((g^x - 1) / (g - 1))`, `g > 0`, `g != 1`.
    Frank(f64),
    /// Generator `((1 - x) / x)^g`, `g > 0`.
    Dombi(f64),
    /// Generator `(-ln x)^g`, `g > 0`.
    AczelAlsina(f64),
    /// The four-piece generator used to build closure counterexamples.
    Piecewise,
}

impl TnormFamily {
    /// Builds a family from its CLI/JSON name and optional parameter.
    pub fn from_parts(name: &str, gamma: Option<f64>) -> Result<Self> {
        let fam = match (name, gamma) {
            ("product", None) => TnormFamily::Product,
            ("piecewise", None) => TnormFamily::Piecewise,
            ("product", Some(_)) => return Err(Error::UnexpectedParam { family: "product" }),
            ("piecewise", Some(_)) => return Err(Error::UnexpectedParam { family: "piecewise" }),
            ("schweizer-sklar", Some(g)) => TnormFamily::SchweizerSklar(g),
            ("hamacher", Some(g)) => TnormFamily::Hamacher(g),
            ("frank", Some(g)) => TnormFamily::Frank(g),
            ("dombi", Some(g)) => TnormFamily::Dombi(g),
            ("aczel-alsina", Some(g)) => TnormFamily::AczelAlsina(g),
            ("schweizer-sklar" | "hamacher" | "frank" | "dombi" | "aczel-alsina", None) => {
                return Err(Error::MissingParam { family: static_name(name) })
            }
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        fam.validate()?;
        Ok(fam)
    }

    /// Same family with a different parameter.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        match self.gamma() {
            Some(_) => TnormFamily::from_parts(self.name(), Some(gamma)),
            None => Err(Error::UnexpectedParam { family: self.name() }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TnormFamily::Product => "product",
            TnormFamily::SchweizerSklar(_) => "schweizer-sklar",
            TnormFamily::Hamacher(_) => "hamacher",
            TnormFamily::Frank(_) => "frank",
            TnormFamily::Dombi(_) => "dombi",
            TnormFamily::AczelAlsina(_) => "aczel-alsina",
            TnormFamily::Piecewise => "piecewise",
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match *self {
            TnormFamily::Product | TnormFamily::Piecewise => None,
            TnormFamily::SchweizerSklar(g)
            | TnormFamily::Hamacher(g)
            | TnormFamily::Frank(g)
            | TnormFamily::Dombi(g)
            | TnormFamily::AczelAlsina(g) => Some(g),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |domain, hint| {
            Err(Error::ParamOutOfDomain { family: self.name(), gamma: self.gamma().unwrap_or(f64::NAN), domain, hint })
        };
        match *self {
            TnormFamily::Product | TnormFamily::Piecewise => Ok(()),
            TnormFamily::SchweizerSklar(g) if !(g < 0.0 && g.is_finite()) => fail("(-inf, 0)", ""),
            TnormFamily::Frank(1.0) => {
                fail("(0, 1) U (1, inf)", "; the gamma -> 1 limit is the product t-norm, use `product`")
            }
            TnormFamily::Frank(g) if !(g > 0.0 && g.is_finite()) => fail("(0, 1) U (1, inf)", ""),
            TnormFamily::Hamacher(g) | TnormFamily::Dombi(g) | TnormFamily::AczelAlsina(g)
                if !(g > 0.0 && g.is_finite()) =>
            {
                fail("(0, inf)", "")
            }
            _ => Ok(()),
        }
    }

    /// Additive generator `tau(x)`.
    pub fn tau(&self, x: f64) -> Result<GeneratorValue> {
        self.validate()?;
        let x = unit_input(x)?;
        Ok(GeneratorValue(self.tau_raw(x)))
    }

    /// Inverse generator; `tau_inv(+inf) = 0`, `tau_inv(0) = 1`.
    pub fn tau_inv(&self, v: GeneratorValue) -> Result<f64> {
        self.validate()?;
        if !(v.0 >= 0.0) {
            return Err(Error::NegativeGeneratorValue(v.0));
        }
        Ok(self.tau_inv_raw(v.0))
    }

    /// Dual generator `zeta(u) = tau(1 - u)`.
    pub fn zeta(&self, u: f64) -> Result<GeneratorValue> {
        self.validate()?;
        let u = unit_input(u)?;
        Ok(GeneratorValue(self.tau_raw(1.0 - u)))
    }

    /// `zeta^-1(v) = 1 - tau^-1(v)`.
    pub fn zeta_inv(&self, v: GeneratorValue) -> Result<f64> {
        Ok(1.0 - self.tau_inv(v)?)
    }

    pub fn tnorm(&self, x: f64, y: f64) -> Result<f64> {
        self.tau_inv(self.tau(x)? + self.tau(y)?)
    }

    pub fn tconorm(&self, x: f64, y: f64) -> Result<f64> {
        self.zeta_inv(self.zeta(x)? + self.zeta(y)?)
    }

    /// `T(x_1, ..., x_n)`; the empty product is 1.
    pub fn tnorm_n(&self, xs: &[f64]) -> Result<f64> {
        let sum = xs.iter().map(|&x| self.tau(x)).sum::<Result<GeneratorValue>>()?;
        self.tau_inv(sum)
    }

    /// `S(x_1, ..., x_n)`; the empty sum is 0.
    pub fn tconorm_n(&self, xs: &[f64]) -> Result<f64> {
        let sum = xs.iter().map(|&x| self.zeta(x)).sum::<Result<GeneratorValue>>()?;
        self.zeta_inv(sum)
    }

    /// Weighted form `tau^-1(sum_j w_j tau(x_j))`.
    pub fn tnorm_weighted(&self, weights: &[f64], xs: &[f64]) -> Result<f64> {
        self.tau_inv(self.weighted_tau_sum(weights, xs)?)
    }

    /// Weighted form `zeta^-1(sum_j w_j zeta(x_j))`.
    pub fn tconorm_weighted(&self, weights: &[f64], xs: &[f64]) -> Result<f64> {
        self.zeta_inv(self.weighted_zeta_sum(weights, xs)?)
    }

    pub(crate) fn weighted_tau_sum(&self, weights: &[f64], xs: &[f64]) -> Result<GeneratorValue> {
        check_exponents(weights, xs)?;
        weights.iter().zip(xs).map(|(&w, &x)| Ok(self.tau(x)? * w)).sum()
    }

    pub(crate) fn weighted_zeta_sum(&self, weights: &[f64], xs: &[f64]) -> Result<GeneratorValue> {
        check_exponents(weights, xs)?;
        weights.iter().zip(xs).map(|(&w, &x)| Ok(self.zeta(x)? * w)).sum()
    }

    fn tau_raw(&self, x: f64) -> f64 {
        if x == 0.0 {
            return f64::INFINITY;
        }
        if x == 1.0 {
            return 0.0;
        }
        let v = match *self {
            TnormFamily::Product => -x.ln(),
            TnormFamily::SchweizerSklar(g) => (g * x.ln()).exp_m1(),
            TnormFamily::Hamacher(g) => (g / x + (1.0 - g)).ln(),
            TnormFamily::Frank(g) => {
                let l = g.ln();
                ln_abs_expm1(l) - ln_abs_expm1(x * l)
            }
            TnormFamily::Dombi(g) => ((1.0 - x) / x).powf(g),
            TnormFamily::AczelAlsina(g) => (-x.ln()).powf(g),
            TnormFamily::Piecewise => {
                if x <= 0.125 {
                    -x.log(8.0) - 1.0 / 3.0
                } else if x <= 0.25 {
                    -8.0 / 3.0 * x + 1.0
                } else if x <= 0.5 {
                    -x / 3.0 + 5.0 / 12.0
                } else {
                    -(x - 1.0) / 2.0
                }
            }
        };
        // guard against -0.0 and last-ulp negatives near x = 1
        v.max(0.0)
    }

    fn tau_inv_raw(&self, v: f64) -> f64 {
        if v == f64::INFINITY {
            return 0.0;
        }
        if v == 0.0 {
            return 1.0;
        }
        let x = match *self {
            TnormFamily::Product => (-v).exp(),
            TnormFamily::SchweizerSklar(g) => (v.ln_1p() / g).exp(),
            TnormFamily::Hamacher(g) => g / (v.exp_m1() + g),
            TnormFamily::Frank(g) => {
                let l = g.ln();
                let a = ln_abs_expm1(l) - v;
                if l > 0.0 {
                    // ln(1 + e^a) / l
                    softplus(a) / l
                } else {
                    // ln(1 - e^a) / l, with a < 0
                    let ln_1m = if a < -std::f64::consts::LN_2 { (-a.exp()).ln_1p() } else { (-a.exp_m1()).ln() };
                    ln_1m / l
                }
            }
            TnormFamily::Dombi(g) => 1.0 / (1.0 + v.powf(1.0 / g)),
            TnormFamily::AczelAlsina(g) => (-v.powf(1.0 / g)).exp(),
            TnormFamily::Piecewise => {
                if v <= 0.25 {
                    1.0 - 2.0 * v
                } else if v <= 1.0 / 3.0 {
                    (5.0 / 12.0 - v) * 3.0
                } else if v <= 2.0 / 3.0 {
                    3.0 * (1.0 - v) / 8.0
                } else {
                    8f64.powf(-(v + 1.0 / 3.0))
                }
            }
        };
        x.clamp(0.0, 1.0)
    }
}

impl fmt::Display for TnormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gamma() {
            Some(g) => write!(f, "{}(gamma={})", self.name(), g),
            None => f.write_str(self.name()),
        }
    }
}

/// Parses `name` or `name:gamma`, e.g. `hamacher:2`.
impl FromStr for TnormFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, g)) => {
                let gamma = g.trim().parse::<f64>().map_err(|e| Error::Parse(format!("gamma `{g}`: {e}")))?;
                TnormFamily::from_parts(name.trim(), Some(gamma))
            }
            None => TnormFamily::from_parts(s.trim(), None),
        }
    }
}

/// JSON form: `{"family": "hamacher", "gamma": 2.0}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

impl TryFrom<FamilySpec> for TnormFamily {
    type Error = Error;

    fn try_from(spec: FamilySpec) -> Result<Self> {
        TnormFamily::from_parts(&spec.family, spec.gamma)
    }
}

impl From<TnormFamily> for FamilySpec {
    fn from(f: TnormFamily) -> Self {
        FamilySpec { family: f.name().to_string(), gamma: f.gamma() }
    }
}

impl Serialize for TnormFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilySpec::from(*self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TnormFamily {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = FamilySpec::deserialize(deserializer)?;
        TnormFamily::try_from(spec).map_err(serde::de::Error::custom)
    }
}

fn static_name(name: &str) -> &'static str {
    match name {
        "schweizer-sklar" => "schweizer-sklar",
        "hamacher" => "hamacher",
        "frank" => "frank",
        "dombi" => "dombi",
        _ => "aczel-alsina",
    }
}

/// Accepts `x` within `EPS_SUM` of `[0, 1]` and clamps it in.
fn unit_input(x: f64) -> Result<f64> {
    if (-EPS_SUM..=1.0 + EPS_SUM).contains(&x) {
        Ok(x.clamp(0.0, 1.0))
    } else {
        Err(Error::InputOutOfRange(x))
    }
}

fn check_exponents(weights: &[f64], xs: &[f64]) -> Result<()> {
    if weights.len() != xs.len() {
        return Err(Error::LengthMismatch { left: weights.len(), right: xs.len() });
    }
    match weights.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
        Some(&w) => Err(Error::NonPositiveScalar(w)),
        None => Ok(()),
    }
}

/// `ln|e^t - 1|` without overflow for large `t`.
fn ln_abs_expm1(t: f64) -> f64 {
    if t > 0.0 {
        t + (-(-t).exp_m1()).ln()
    } else {
        (-t.exp_m1()).ln()
    }
}

/// `ln(1 + e^a)`.
fn softplus(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}
