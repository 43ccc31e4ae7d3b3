//! Picture fuzzy numbers and the orders defined on them.
//!
//! A [`Pfn`] is a triple `<mu, eta, nu>` of positive, neutral and negative
//! membership degrees with `mu + eta + nu <= 1`. Three relations are
//! provided:
//!
//! * [`Pfn::cmp_admissible`]: the lexicographic total order on
//!   `(S, H1, H2) = (mu - nu, mu + nu, mu + eta + nu)`. It refines the
//!   component-wise order and is what every ranking in this crate uses.
//! * [`Pfn::cmp_wang`]: the older score/accuracy comparison, which cannot
//!   separate some distinct PFNs.
//! * [`Pfn::leq_componentwise`]: the partial order `mu, eta` up, `nu` down.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the sum constraint and on the `[0, 1]` bounds.
pub const EPS_SUM: f64 = 1e-9;

/// A validated picture fuzzy number.
///
/// Components are stored exactly as given; values inside the `EPS_SUM`
/// slack are accepted without being rounded back onto the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Pfn {
    mu: f64,
    eta: f64,
    nu: f64,
}

impl Pfn {
    pub const TOP: Pfn = Pfn { mu: 1.0, eta: 0.0, nu: 0.0 };
    pub const BOTTOM: Pfn = Pfn { mu: 0.0, eta: 0.0, nu: 1.0 };

    pub fn new(mu: f64, eta: f64, nu: f64) -> Result<Self> {
        for (name, value) in [("mu", mu), ("eta", eta), ("nu", nu)] {
            if !(-EPS_SUM..=1.0 + EPS_SUM).contains(&value) {
                return Err(Error::ComponentOutOfRange { name, value });
            }
        }
        let sum = mu + eta + nu;
        if sum > 1.0 + EPS_SUM {
            return Err(Error::SumExceedsOne { sum });
        }
        let (mut mu, mut eta, mut nu) = (mu.clamp(0.0, 1.0), eta.clamp(0.0, 1.0), nu.clamp(0.0, 1.0));
        // Tolerated excess (sum above 1, or 1 - mu < eta + nu once 1 - mu has
        // rounded away) is taken from eta, then the smaller of mu and nu.
        // Excess within a few ulps of the masses involved is rounding noise
        // in decimal inputs and is kept.
        for _ in 0..4 {
            let excess = [(mu + eta + nu, 1.0), (eta + nu, 1.0 - mu), (mu + eta, 1.0 - nu)]
                .into_iter()
                .filter(|&(mass, room)| mass - room > 4.0 * f64::EPSILON * mass)
                .map(|(mass, room)| mass - room)
                .fold(0.0, f64::max);
            if excess <= 0.0 {
                break;
            }
            let cut = excess.min(eta);
            eta -= cut;
            let mut rest = excess - cut;
            let (small, large) = if mu <= nu { (&mut mu, &mut nu) } else { (&mut nu, &mut mu) };
            let cut = rest.min(*small);
            *small -= cut;
            rest -= cut;
            *large -= rest;
        }
        Ok(Pfn { mu, eta, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn components(&self) -> [f64; 3] {
        [self.mu, self.eta, self.nu]
    }

    /// Refusal degree `1 - (mu + eta + nu)`.
    pub fn refusal(&self) -> f64 {
        1.0 - (self.mu + self.eta + self.nu)
    }

    pub fn score(&self) -> f64 {
        self.mu - self.nu
    }

    pub fn score_profile(&self) -> ScoreProfile {
        ScoreProfile {
            s: self.mu - self.nu,
            h1: self.mu + self.nu,
            h2: self.mu + self.eta + self.nu,
        }
    }

    /// Compares under the admissible order `(S, H1, H2)` lexicographically.
    ///
    /// Components are first compared on a decimal grid of [`ORDER_RESOLUTION`]
    /// using integer arithmetic, so inputs written with at most twelve
    /// decimals compare as the decimals they denote (`0.2 - 0.1` equals
    /// `0.3 - 0.2`). Values that coincide on the grid are then compared
    /// exactly on their binary values. Both stages are lexicographic orders
    /// on a fixed key, so the result is a total order that still refines
    /// the component-wise order.
    pub fn cmp_admissible(&self, other: &Pfn) -> Ordering {
        let (a, b) = (GridKey::of(self), GridKey::of(other));
        (a.mu - a.nu)
            .cmp(&(b.mu - b.nu))
            .then_with(|| (a.mu + a.nu).cmp(&(b.mu + b.nu)))
            .then_with(|| a.eta.cmp(&b.eta))
            .then_with(|| self.cmp_binary(other))
    }

    /// The admissible order evaluated exactly on the stored binary values.
    fn cmp_binary(&self, other: &Pfn) -> Ordering {
        // mu1 - nu1 vs mu2 - nu2  <=>  mu1 + nu2 vs mu2 + nu1
        cmp_exact_sum(self.mu, other.nu, other.mu, self.nu)
            .then_with(|| cmp_exact_sum(self.mu, self.nu, other.mu, other.nu))
            .then_with(|| self.eta.total_cmp(&other.eta))
    }

    /// Compares by score `S`, then accuracy `H = mu + eta + nu`, on the
    /// same decimal grid as [`Pfn::cmp_admissible`].
    pub fn cmp_wang(&self, other: &Pfn) -> WangOrdering {
        let (a, b) = (GridKey::of(self), GridKey::of(other));
        let ord = (a.mu - a.nu)
            .cmp(&(b.mu - b.nu))
            .then_with(|| (a.mu + a.eta + a.nu).cmp(&(b.mu + b.eta + b.nu)));
        match ord {
            Ordering::Less => WangOrdering::Less,
            Ordering::Greater => WangOrdering::Greater,
            Ordering::Equal => WangOrdering::Indistinguishable,
        }
    }

    /// The containment order: `mu` and `eta` do not decrease, `nu` does not increase.
    pub fn leq_componentwise(&self, other: &Pfn) -> bool {
        self.mu <= other.mu && self.eta <= other.eta && self.nu >= other.nu
    }

    /// `<nu, eta, mu>`.
    pub fn complement(&self) -> Pfn {
        Pfn { mu: self.nu, eta: self.eta, nu: self.mu }
    }
}

/// Outcome of [`Pfn::cmp_wang`].
///
/// There is no `Equal`: two different PFNs can share both score and
/// accuracy, so a tie only means the relation cannot tell them apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WangOrdering {
    Less,
    Indistinguishable,
    Greater,
}

/// `(S, H1, H2)` for a PFN; the sort key of the admissible order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreProfile {
    pub s: f64,
    pub h1: f64,
    pub h2: f64,
}

impl ScoreProfile {
    /// Inverts the profile back to `(mu, eta, nu)`.
    pub fn components(&self) -> [f64; 3] {
        [(self.s + self.h1) / 2.0, self.h2 - self.h1, (self.h1 - self.s) / 2.0]
    }
}

/// Maximum under the admissible order.
pub fn join_w(xs: &[Pfn]) -> Result<Pfn> {
    xs.iter()
        .copied()
        .reduce(|a, b| if b.cmp_admissible(&a) == Ordering::Greater { b } else { a })
        .ok_or(Error::EmptyInput)
}

/// Minimum under the admissible order.
pub fn meet_w(xs: &[Pfn]) -> Result<Pfn> {
    xs.iter()
        .copied()
        .reduce(|a, b| if b.cmp_admissible(&a) == Ordering::Less { b } else { a })
        .ok_or(Error::EmptyInput)
}

/// Grid spacing used by the order comparisons.
pub const ORDER_RESOLUTION: f64 = 1e-12;

/// Components rounded to multiples of [`ORDER_RESOLUTION`]. Rounding is
/// monotone, so the component-wise order survives it.
struct GridKey {
    mu: i64,
    eta: i64,
    nu: i64,
}

impl GridKey {
    fn of(x: &Pfn) -> GridKey {
        let g = |v: f64| (v / ORDER_RESOLUTION).round() as i64;
        GridKey { mu: g(x.mu), eta: g(x.eta), nu: g(x.nu) }
    }
}

/// Exact sign of `(a + b) - (c + d)` for finite doubles.
fn cmp_exact_sum(a: f64, b: f64, c: f64, d: f64) -> Ordering {
    let (s1, e1) = two_sum(a, b);
    let (s2, e2) = two_sum(c, d);
    // Rounding is monotone, so distinct rounded sums already decide.
    s1.total_cmp(&s2).then_with(|| e1.total_cmp(&e2))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    // normalise -0.0 so total_cmp treats it like 0.0
    (s + 0.0, err + 0.0)
}

impl TryFrom<[f64; 3]> for Pfn {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Pfn::new(v[0], v[1], v[2])
    }
}

impl From<Pfn> for [f64; 3] {
    fn from(p: Pfn) -> Self {
        p.components()
    }
}

impl fmt::Display for Pfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(prec) = f.precision() {
            write!(f, "<{:.*},{:.*},{:.*}>", prec, self.mu, prec, self.eta, prec, self.nu)
        } else {
            // shortest representation that round-trips (at most 17 digits)
            write!(f, "<{},{},{}>", self.mu, self.eta, self.nu)
        }
    }
}

impl FromStr for Pfn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| Error::Parse(format!("expected <mu,eta,nu>, got `{s}`")))?;
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        match parts.as_slice() {
            [mu, eta, nu] => Pfn::new(*mu, *eta, *nu),
            _ => Err(Error::Parse(format!("expected three components, got {}", parts.len()))),
        }
    }
}

/// An unconstrained output triple, used to represent results of operators
/// that are not closed over PFNs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegacyTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LegacyTriple {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        LegacyTriple { a, b, c }
    }

    pub fn sum(&self) -> f64 {
        self.a + self.b + self.c
    }

    /// Whether the triple satisfies the PFN invariant (with `EPS_SUM` slack).
    pub fn is_pfn(&self) -> bool {
        Pfn::new(self.a, self.b, self.c).is_ok()
    }

    pub fn to_pfn(&self) -> Result<Pfn> {
        Pfn::new(self.a, self.b, self.c)
    }
}

impl From<Pfn> for LegacyTriple {
    fn from(p: Pfn) -> Self {
        LegacyTriple { a: p.mu, b: p.eta, c: p.nu }
    }
}
