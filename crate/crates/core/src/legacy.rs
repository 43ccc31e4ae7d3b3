//! Earlier PFN operators that are not closed over the PFN set.
//!
//! Everything here returns a [`LegacyTriple`] so that results violating
//! `mu + eta + nu <= 1` are ordinary data. [`closure_check`] runs any of the
//! operators by string id and records whether the output is a PFN.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aggregate::Weights;
use crate::error::{Error, Result};
use crate::interact::{check_lambda, pfn_add, pfn_mul, pfn_pow, scalar_mul};
use crate::pfn::{LegacyTriple, Pfn};
use crate::sampling;
use crate::tnorm::TnormFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Meet,
    Join,
    Add,
    Mul,
    Scalar,
    Power,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Meet => "meet",
            Variant::Join => "join",
            Variant::Add => "add",
            Variant::Mul => "mul",
            Variant::Scalar => "scalar",
            Variant::Power => "power",
        }
    }

    fn is_binary(&self) -> bool {
        !matches!(self, Variant::Scalar | Variant::Power)
    }
}

/// Arguments of a legacy binary or unary (scalar/power) operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operands {
    Pair(Pfn, Pfn),
    Scaled { lambda: f64, x: Pfn },
}

fn pair(variant: Variant, ops: Operands) -> Result<(LegacyTriple, LegacyTriple)> {
    match ops {
        Operands::Pair(a, b) => Ok((a.into(), b.into())),
        Operands::Scaled { .. } => Err(Error::InvalidParameter(format!("{} takes two operands", variant.name()))),
    }
}

fn scaled(variant: Variant, ops: Operands) -> Result<(f64, LegacyTriple)> {
    match ops {
        Operands::Scaled { lambda, x } => {
            check_lambda(lambda)?;
            Ok((lambda, x.into()))
        }
        Operands::Pair(..) => {
            Err(Error::InvalidParameter(format!("{} takes one operand and lambda", variant.name())))
        }
    }
}

fn unsupported(family: &str, variant: Variant) -> Error {
    Error::UnknownOperator(format!("{family}-{}", variant.name()))
}

fn finite(t: LegacyTriple, what: &'static str) -> Result<LegacyTriple> {
    if [t.a, t.b, t.c].iter().any(|v| v.is_nan()) {
        Err(Error::DegenerateComponent(what))
    } else {
        Ok(t)
    }
}

/// Generator-based operations applying the t-conorm to `mu` only for sums
/// and to `eta, nu` for products.
pub fn garg_ops(variant: Variant, f: &TnormFamily, ops: Operands) -> Result<LegacyTriple> {
    f.validate()?;
    let t_scale = |x: f64, l: f64| f.tau_inv(f.tau(x)? * l);
    let z_scale = |x: f64, l: f64| f.zeta_inv(f.zeta(x)? * l);
    match variant {
        Variant::Add => {
            let (a, b) = pair(variant, ops)?;
            Ok(LegacyTriple::new(f.tconorm(a.a, b.a)?, f.tnorm(a.b, b.b)?, f.tnorm(a.c, b.c)?))
        }
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            Ok(LegacyTriple::new(f.tnorm(a.a, b.a)?, f.tconorm(a.b, b.b)?, f.tconorm(a.c, b.c)?))
        }
        Variant::Scalar => {
            let (l, x) = scaled(variant, ops)?;
            Ok(LegacyTriple::new(z_scale(x.a, l)?, t_scale(x.b, l)?, t_scale(x.c, l)?))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            Ok(LegacyTriple::new(t_scale(x.a, l)?, z_scale(x.b, l)?, z_scale(x.c, l)?))
        }
        _ => Err(unsupported("garg", variant)),
    }
}

/// Generator-based product and power with the t-norm on `mu, eta` and the
/// t-conorm on `nu`.
pub fn ashraf_ops(variant: Variant, f: &TnormFamily, ops: Operands) -> Result<LegacyTriple> {
    f.validate()?;
    match variant {
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            Ok(LegacyTriple::new(f.tnorm(a.a, b.a)?, f.tnorm(a.b, b.b)?, f.tconorm(a.c, b.c)?))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            Ok(LegacyTriple::new(
                f.tau_inv(f.tau(x.a)? * l)?,
                f.tau_inv(f.tau(x.b)? * l)?,
                f.zeta_inv(f.zeta(x.c)? * l)?,
            ))
        }
        _ => Err(unsupported("ashraf", variant)),
    }
}

/// Dombi operations with the Dombi sum on `mu` and Dombi products on
/// `eta, nu` (dually for the product).
///
/// Components at 0 or 1 evaluate to the t-(co)norm limits through IEEE
/// infinities, e.g. `S(0, x) = x` and `T(0, x) = 0`.
pub fn dombi_ops_jspy(variant: Variant, gamma: f64, ops: Operands) -> Result<LegacyTriple> {
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(Error::ParamOutOfDomain { family: "dombi", gamma, domain: "[1, inf)", hint: "" });
    }
    let g = gamma;
    let odds = |x: f64| x / (1.0 - x);
    let inv_odds = |x: f64| (1.0 - x) / x;
    let t = |x: f64, y: f64| 1.0 / (1.0 + (inv_odds(x).powf(g) + inv_odds(y).powf(g)).powf(1.0 / g));
    let s = |x: f64, y: f64| 1.0 - 1.0 / (1.0 + (odds(x).powf(g) + odds(y).powf(g)).powf(1.0 / g));
    let t_scale = |x: f64, l: f64| 1.0 / (1.0 + (l * inv_odds(x).powf(g)).powf(1.0 / g));
    let s_scale = |x: f64, l: f64| 1.0 - 1.0 / (1.0 + (l * odds(x).powf(g)).powf(1.0 / g));
    let out = match variant {
        Variant::Add => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(s(a.a, b.a), t(a.b, b.b), t(a.c, b.c))
        }
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(t(a.a, b.a), s(a.b, b.b), s(a.c, b.c))
        }
        Variant::Scalar => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(s_scale(x.a, l), t_scale(x.b, l), t_scale(x.c, l))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(t_scale(x.a, l), s_scale(x.b, l), s_scale(x.c, l))
        }
        _ => return Err(unsupported("dombi", variant)),
    };
    finite(out, "dombi")
}

/// Einstein sum and product.
pub fn einstein_ops_kaa(variant: Variant, ops: Operands) -> Result<LegacyTriple> {
    let s = |x: f64, y: f64| (x + y) / (1.0 + x * y);
    let t = |x: f64, y: f64| x * y / (1.0 + (1.0 - x) * (1.0 - y));
    let s_scale = |x: f64, l: f64| {
        let (p, m) = ((1.0 + x).powf(l), (1.0 - x).powf(l));
        (p - m) / (p + m)
    };
    let t_scale = |x: f64, l: f64| 2.0 * x.powf(l) / ((2.0 - x).powf(l) + x.powf(l));
    let out = match variant {
        Variant::Add => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(s(a.a, b.a), t(a.b, b.b), t(a.c, b.c))
        }
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(t(a.a, b.a), s(a.b, b.b), s(a.c, b.c))
        }
        Variant::Scalar => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(s_scale(x.a, l), t_scale(x.b, l), t_scale(x.c, l))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(t_scale(x.a, l), s_scale(x.b, l), s_scale(x.c, l))
        }
        _ => return Err(unsupported("einstein", variant)),
    };
    finite(out, "einstein")
}

/// Lattice and algebraic operations with products on `eta, nu` for sums.
pub fn wei_ops(variant: Variant, ops: Operands) -> Result<LegacyTriple> {
    if variant.is_binary() {
        let (a, b) = pair(variant, ops)?;
        Ok(match variant {
            Variant::Meet => LegacyTriple::new(a.a.min(b.a), a.b.max(b.b), a.c.max(b.c)),
            Variant::Join => LegacyTriple::new(a.a.max(b.a), a.b.min(b.b), a.c.min(b.c)),
            Variant::Add => wei_add(a, b),
            _ => wei_mul(a, b),
        })
    } else {
        let (l, x) = scaled(variant, ops)?;
        Ok(if variant == Variant::Scalar { wei_scalar(l, x) } else { wei_power(l, x) })
    }
}

fn wei_add(a: LegacyTriple, b: LegacyTriple) -> LegacyTriple {
    LegacyTriple::new(a.a + b.a - a.a * b.a, a.b * b.b, a.c * b.c)
}

fn wei_mul(a: LegacyTriple, b: LegacyTriple) -> LegacyTriple {
    LegacyTriple::new(a.a * b.a, a.b + b.b - a.b * b.b, a.c + b.c - a.c * b.c)
}

fn wei_scalar(l: f64, x: LegacyTriple) -> LegacyTriple {
    LegacyTriple::new(1.0 - (1.0 - x.a).powf(l), x.b.powf(l), x.c.powf(l))
}

fn wei_power(l: f64, x: LegacyTriple) -> LegacyTriple {
    LegacyTriple::new(x.a.powf(l), 1.0 - (1.0 - x.b).powf(l), 1.0 - (1.0 - x.c).powf(l))
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

/// Weighted average: `<1 - prod (1-mu)^w, prod eta^w, prod nu^w>`.
pub fn wei_pfwa(w: &Weights, xs: &[Pfn]) -> Result<LegacyTriple> {
    check_len(w, xs)?;
    let it = || w.as_slice().iter().zip(xs);
    Ok(LegacyTriple::new(
        1.0 - it().map(|(wj, x)| (1.0 - x.mu()).powf(*wj)).product::<f64>(),
        it().map(|(wj, x)| x.eta().powf(*wj)).product(),
        it().map(|(wj, x)| x.nu().powf(*wj)).product(),
    ))
}

/// Weighted geometric: `<prod mu^w, 1 - prod (1-eta)^w, 1 - prod (1-nu)^w>`.
pub fn wei_pfwg(w: &Weights, xs: &[Pfn]) -> Result<LegacyTriple> {
    check_len(w, xs)?;
    let it = || w.as_slice().iter().zip(xs);
    Ok(LegacyTriple::new(
        it().map(|(wj, x)| x.mu().powf(*wj)).product(),
        1.0 - it().map(|(wj, x)| (1.0 - x.eta()).powf(*wj)).product::<f64>(),
        1.0 - it().map(|(wj, x)| (1.0 - x.nu()).powf(*wj)).product::<f64>(),
    ))
}

/// Hamacher sum and product applied component-wise, `gamma > 0`.
pub fn hamacher_ops_wei(variant: Variant, gamma: f64, ops: Operands) -> Result<LegacyTriple> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::ParamOutOfDomain { family: "hamacher", gamma, domain: "(0, inf)", hint: "" });
    }
    let g = gamma;
    let s = |x: f64, y: f64| (x + y - x * y - (1.0 - g) * x * y) / (1.0 - (1.0 - g) * x * y);
    let t = |x: f64, y: f64| x * y / (g + (1.0 - g) * (x + y - x * y));
    let s_scale = |x: f64, l: f64| {
        let (p, m) = ((1.0 + (g - 1.0) * x).powf(l), (1.0 - x).powf(l));
        (p - m) / (p + (g - 1.0) * m)
    };
    let t_scale = |x: f64, l: f64| g * x.powf(l) / ((1.0 + (g - 1.0) * (1.0 - x)).powf(l) + (g - 1.0) * x.powf(l));
    let out = match variant {
        Variant::Add => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(s(a.a, b.a), t(a.b, b.b), t(a.c, b.c))
        }
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(t(a.a, b.a), s(a.b, b.b), s(a.c, b.c))
        }
        Variant::Scalar => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(s_scale(x.a, l), t_scale(x.b, l), t_scale(x.c, l))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(t_scale(x.a, l), s_scale(x.b, l), s_scale(x.c, l))
        }
        _ => return Err(unsupported("hamacher", variant)),
    };
    finite(out, "hamacher")
}

/// Interaction operational laws; `lambda` must be a positive integer.
pub fn lin_iol_ops(variant: Variant, ops: Operands) -> Result<LegacyTriple> {
    if let Operands::Scaled { lambda, .. } = ops {
        if !(lambda >= 1.0 && lambda.is_finite() && lambda.fract() == 0.0) {
            return Err(Error::NonIntegerLambda(lambda));
        }
    }
    Ok(match variant {
        Variant::Add => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(
                a.a + b.a - a.a * b.a,
                a.b + b.b - a.b * b.b - a.a * b.b - a.b * b.a,
                a.c + b.c - a.c * b.c - a.a * b.c - a.c * b.a,
            )
        }
        Variant::Mul => {
            let (a, b) = pair(variant, ops)?;
            LegacyTriple::new(
                a.a + b.a - a.a * b.a - a.a * b.c - a.c * b.a,
                a.b + b.b - a.b * b.b,
                a.c + b.c - a.c * b.c,
            )
        }
        Variant::Scalar => {
            let (l, x) = scaled(variant, ops)?;
            let base = (1.0 - x.a).powf(l);
            LegacyTriple::new(1.0 - base, base - (1.0 - x.a - x.b).powf(l), base - (1.0 - x.a - x.c).powf(l))
        }
        Variant::Power => {
            let (l, x) = scaled(variant, ops)?;
            LegacyTriple::new(
                (1.0 - x.c).powf(l) - (1.0 - x.a - x.c).powf(l),
                1.0 - (1.0 - x.b).powf(l),
                1.0 - (1.0 - x.c).powf(l),
            )
        }
        _ => return Err(unsupported("lin-iol", variant)),
    })
}

/// Parameters of the Muirhead and Bonferroni type means.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanParams {
    Pfmm { p: Vec<f64> },
    Pfwmm { p: Vec<f64>, w: Weights },
    Pfbm { p: f64, q: f64 },
    Pfnwbm { p: f64, q: f64, w: Weights },
}

pub fn mean_type_ops(params: &MeanParams, xs: &[Pfn]) -> Result<LegacyTriple> {
    match params {
        MeanParams::Pfmm { p } => pfmm(p, xs),
        MeanParams::Pfwmm { p, w } => pfwmm(p, w, xs),
        MeanParams::Pfbm { p, q } => pfbm(*p, *q, xs),
        MeanParams::Pfnwbm { p, q, w } => pfnwbm(*p, *q, w, xs),
    }
}

/// Largest input count accepted by the permutation-based means.
pub const MAX_MUIRHEAD_INPUTS: usize = 8;

fn check_muirhead(p: &[f64], xs: &[Pfn]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if p.len() != xs.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: xs.len() });
    }
    if xs.len() > MAX_MUIRHEAD_INPUTS {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_MUIRHEAD_INPUTS} inputs for a Muirhead mean, got {}",
            xs.len()
        )));
    }
    let sp: f64 = p.iter().sum();
    if sp == 0.0 || !sp.is_finite() {
        return Err(Error::InvalidParameter(format!("parameter vector must have a nonzero sum, got {sp}")));
    }
    Ok(sp)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Muirhead mean with parameter vector `p`, evaluated from its product form.
pub fn pfmm(p: &[f64], xs: &[Pfn]) -> Result<LegacyTriple> {
    let sp = check_muirhead(p, xs)?;
    let perms = permutations(xs.len());
    let inv_fact = 1.0 / perms.len() as f64;
    let outer = |inner: &dyn Fn(&Pfn) -> f64| {
        perms
            .iter()
            .map(|s| (1.0 - s.iter().zip(p).map(|(&i, &pj)| inner(&xs[i]).powf(pj)).product::<f64>()).powf(inv_fact))
            .product::<f64>()
    };
    let mu = (1.0 - outer(&|x| x.mu())).powf(1.0 / sp);
    let eta = 1.0 - (1.0 - outer(&|x| 1.0 - x.eta())).powf(1.0 / sp);
    let nu = 1.0 - (1.0 - outer(&|x| 1.0 - x.nu())).powf(1.0 / sp);
    finite(LegacyTriple::new(mu, eta, nu), "pfmm")
}

/// Weighted Muirhead mean, evaluated by folding the algebraic operations:
/// the sum over permutations of the products of `(n w_i x_i)^p_j`, scaled
/// by `1/n!` and raised to `1/sum(p)`.
pub fn pfwmm(p: &[f64], w: &Weights, xs: &[Pfn]) -> Result<LegacyTriple> {
    let sp = check_muirhead(p, xs)?;
    check_len(w, xs)?;
    let n = xs.len() as f64;
    let scaled: Vec<LegacyTriple> =
        w.as_slice().iter().zip(xs).map(|(&wi, x)| wei_scalar(n * wi, (*x).into())).collect();
    let perms = permutations(xs.len());
    let sum = perms
        .iter()
        .map(|s| {
            s.iter()
                .zip(p)
                .map(|(&i, &pj)| wei_power(pj, scaled[i]))
                .reduce(wei_mul)
                .expect("nonempty permutation")
        })
        .reduce(wei_add)
        .expect("at least one permutation");
    let out = wei_power(1.0 / sp, wei_scalar(1.0 / perms.len() as f64, sum));
    finite(out, "pfwmm")
}

fn check_bonferroni(p: f64, q: f64, xs: &[Pfn]) -> Result<()> {
    if !(p >= 0.0 && q >= 0.0 && p + q > 0.0 && (p + q).is_finite()) {
        return Err(Error::InvalidParameter(format!("need p, q >= 0 with p + q > 0, got p = {p}, q = {q}")));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidParameter("a Bonferroni mean needs at least two inputs".into()));
    }
    Ok(())
}

fn bonferroni(p: f64, q: f64, xs: &[Pfn], exponent: impl Fn(usize, usize) -> f64) -> LegacyTriple {
    let n = xs.len();
    let outer = |inner: &dyn Fn(&Pfn) -> f64| {
        let mut prod = 1.0;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                prod *= (1.0 - inner(&xs[i]).powf(p) * inner(&xs[j]).powf(q)).powf(exponent(i, j));
            }
        }
        prod
    };
    let e = 1.0 / (p + q);
    LegacyTriple::new(
        (1.0 - outer(&|x| x.mu())).powf(e),
        1.0 - (1.0 - outer(&|x| 1.0 - x.eta())).powf(e),
        1.0 - (1.0 - outer(&|x| 1.0 - x.nu())).powf(e),
    )
}

/// Bonferroni mean over ordered pairs `i != j`.
pub fn pfbm(p: f64, q: f64, xs: &[Pfn]) -> Result<LegacyTriple> {
    check_bonferroni(p, q, xs)?;
    let n = xs.len() as f64;
    finite(bonferroni(p, q, xs, |_, _| 1.0 / (n * (n - 1.0))), "pfbm")
}

/// Normalized weighted Bonferroni mean; pair `(i, j)` carries exponent
/// `w_i w_j / (1 - w_i)`.
pub fn pfnwbm(p: f64, q: f64, w: &Weights, xs: &[Pfn]) -> Result<LegacyTriple> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::InvalidParameter(format!("need p, q > 0, got p = {p}, q = {q}")));
    }
    check_bonferroni(p, q, xs)?;
    check_len(w, xs)?;
    let w = w.as_slice();
    finite(bonferroni(p, q, xs, |i, j| w[i] * w[j] / (1.0 - w[i])), "pfnwbm")
}

/// Operator ids accepted by [`closure_check`].
pub const OPERATOR_IDS: &[&str] = &[
    "garg-add",
    "garg-mul",
    "garg-scalar",
    "garg-power",
    "ashraf-mul",
    "ashraf-power",
    "dombi-add",
    "dombi-mul",
    "dombi-scalar",
    "dombi-power",
    "einstein-add",
    "einstein-mul",
    "einstein-scalar",
    "einstein-power",
    "wei-meet",
    "wei-join",
    "wei-add",
    "wei-mul",
    "wei-scalar",
    "wei-power",
    "wei-pfwa",
    "wei-pfwg",
    "hamacher-add",
    "hamacher-mul",
    "hamacher-scalar",
    "hamacher-power",
    "lin-iol-add",
    "lin-iol-mul",
    "lin-iol-scalar",
    "lin-iol-power",
    "pfmm",
    "pfwmm",
    "pfbm",
    "pfnwbm",
    "interactional-add",
    "interactional-mul",
    "interactional-scalar",
    "interactional-power",
];

/// True for the registry's legacy operators, false for the interactional
/// laws (and for unknown ids).
pub fn is_legacy(operator_id: &str) -> bool {
    OPERATOR_IDS.contains(&operator_id) && !operator_id.starts_with("interactional-")
}

/// Operands and parameters of one closure check. Which fields are needed
/// depends on the operator.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClosureInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<TnormFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    pub operands: Vec<Pfn>,
}

impl ClosureInputs {
    pub fn pair(a: Pfn, b: Pfn) -> Self {
        ClosureInputs { operands: vec![a, b], ..Default::default() }
    }

    pub fn scaled(lambda: f64, x: Pfn) -> Self {
        ClosureInputs { lambda: Some(lambda), operands: vec![x], ..Default::default() }
    }

    pub fn with_family(mut self, f: TnormFamily) -> Self {
        self.family = Some(f);
        self
    }

    pub fn with_gamma(mut self, g: f64) -> Self {
        self.gamma = Some(g);
        self
    }

    pub fn with_weights(mut self, w: Vec<f64>) -> Self {
        self.weights = Some(w);
        self
    }

    pub fn with_params(mut self, p: Vec<f64>) -> Self {
        self.params = Some(p);
        self
    }

    fn operands(&self, variant: Variant) -> Result<Operands> {
        let arity = if variant.is_binary() { 2 } else { 1 };
        if self.operands.len() != arity {
            return Err(Error::InvalidParameter(format!(
                "{} takes {arity} operand(s), got {}",
                variant.name(),
                self.operands.len()
            )));
        }
        if variant.is_binary() {
            Ok(Operands::Pair(self.operands[0], self.operands[1]))
        } else {
            let lambda = self.lambda.ok_or_else(|| Error::InvalidParameter("missing lambda".into()))?;
            Ok(Operands::Scaled { lambda, x: self.operands[0] })
        }
    }

    fn family(&self) -> Result<TnormFamily> {
        self.family.ok_or_else(|| Error::InvalidParameter("missing t-norm family".into()))
    }

    fn gamma(&self, family: &'static str) -> Result<f64> {
        self.gamma.ok_or(Error::MissingParam { family })
    }

    fn weights(&self) -> Result<Weights> {
        match &self.weights {
            Some(w) => Weights::new(w.clone()),
            None => Weights::uniform(self.operands.len()),
        }
    }

    fn params(&self, len: usize) -> Result<&[f64]> {
        match &self.params {
            Some(p) if p.len() == len => Ok(p),
            Some(p) => Err(Error::LengthMismatch { left: p.len(), right: len }),
            None => Err(Error::InvalidParameter("missing mean parameters".into())),
        }
    }
}

/// Result of running one operator on one input set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub operator_id: String,
    pub inputs: serde_json::Value,
    pub output: LegacyTriple,
    pub component_sum: f64,
    pub is_pfn: bool,
}

fn parse_variant(s: &str) -> Option<Variant> {
    Some(match s {
        "meet" => Variant::Meet,
        "join" => Variant::Join,
        "add" => Variant::Add,
        "mul" => Variant::Mul,
        "scalar" => Variant::Scalar,
        "power" => Variant::Power,
        _ => return None,
    })
}

/// Evaluates the operator named by `operator_id` on `inputs`.
pub fn evaluate(operator_id: &str, inputs: &ClosureInputs) -> Result<LegacyTriple> {
    if !OPERATOR_IDS.contains(&operator_id) {
        return Err(Error::UnknownOperator(operator_id.to_string()));
    }
    let xs = &inputs.operands;
    match operator_id {
        "wei-pfwa" => return wei_pfwa(&inputs.weights()?, xs),
        "wei-pfwg" => return wei_pfwg(&inputs.weights()?, xs),
        "pfmm" => return pfmm(inputs.params(xs.len())?, xs),
        "pfwmm" => return pfwmm(inputs.params(xs.len())?, &inputs.weights()?, xs),
        "pfbm" => {
            let pq = inputs.params(2)?;
            return pfbm(pq[0], pq[1], xs);
        }
        "pfnwbm" => {
            let pq = inputs.params(2)?;
            return pfnwbm(pq[0], pq[1], &inputs.weights()?, xs);
        }
        _ => {}
    }
    let (family, variant) = operator_id.rsplit_once('-').expect("registered ids contain a dash");
    let variant = parse_variant(variant).expect("registered ids end in a variant");
    let ops = inputs.operands(variant)?;
    match family {
        "garg" => garg_ops(variant, &inputs.family()?, ops),
        "ashraf" => ashraf_ops(variant, &inputs.family()?, ops),
        "dombi" => dombi_ops_jspy(variant, inputs.gamma("dombi")?, ops),
        "einstein" => einstein_ops_kaa(variant, ops),
        "wei" => wei_ops(variant, ops),
        "hamacher" => hamacher_ops_wei(variant, inputs.gamma("hamacher")?, ops),
        "lin-iol" => lin_iol_ops(variant, ops),
        "interactional" => {
            let f = inputs.family()?;
            let out = match ops {
                Operands::Pair(a, b) if variant == Variant::Add => pfn_add(&f, &a, &b)?,
                Operands::Pair(a, b) => pfn_mul(&f, &a, &b)?,
                Operands::Scaled { lambda, x } if variant == Variant::Scalar => scalar_mul(&f, lambda, &x)?,
                Operands::Scaled { lambda, x } => pfn_pow(&f, lambda, &x)?,
            };
            Ok(out.into())
        }
        _ => unreachable!("registered family {family}"),
    }
}

/// Runs an operator and records whether its output is a PFN.
pub fn closure_check(operator_id: &str, inputs: &ClosureInputs) -> Result<ClosureReport> {
    let output = evaluate(operator_id, inputs)?;
    Ok(ClosureReport {
        operator_id: operator_id.to_string(),
        inputs: serde_json::to_value(inputs).map_err(|e| Error::Internal(e.to_string()))?,
        output,
        component_sum: output.sum(),
        is_pfn: output.is_pfn(),
    })
}

fn pfn(mu: f64, eta: f64, nu: f64) -> Pfn {
    Pfn::new(mu, eta, nu).expect("fixture is a PFN")
}

/// Bundled counterexample inputs for an operator; empty when none exist.
pub fn paper_examples(operator_id: &str) -> Result<Vec<ClosureInputs>> {
    if !OPERATOR_IDS.contains(&operator_id) {
        return Err(Error::UnknownOperator(operator_id.to_string()));
    }
    let pw = TnormFamily::Piecewise;
    let half_quarter = pfn(0.5, 0.25, 0.25);
    let alpha = pfn(0.25, 0.25, 0.5);
    let (left, right) = (pfn(0.25, 0.75, 0.0), pfn(0.25, 0.0, 0.75));
    let zero_half = pfn(0.0, 0.5, 0.5);
    let (g1, g2) = (pfn(0.0, 0.9, 0.1), pfn(0.0, 0.1, 0.9));
    let halves = vec![0.5, 0.5];
    let interactional_pairs = [(half_quarter, half_quarter), (left, right), (zero_half, zero_half), (g1, g2)];
    let product = TnormFamily::Product;

    Ok(match operator_id {
        "garg-add" | "garg-mul" => vec![ClosureInputs::pair(half_quarter, half_quarter).with_family(pw)],
        "garg-scalar" => vec![ClosureInputs::scaled(0.5, half_quarter).with_family(pw)],
        "garg-power" => vec![ClosureInputs::scaled(0.5, pfn(0.25, 0.5, 0.25)).with_family(pw)],
        "ashraf-mul" => vec![ClosureInputs::pair(alpha, alpha).with_family(pw)],
        "ashraf-power" => vec![ClosureInputs::scaled(0.5, alpha).with_family(pw)],
        "dombi-mul" => vec![ClosureInputs::pair(left, right).with_gamma(1.0)],
        "hamacher-mul" => vec![ClosureInputs::pair(left, right).with_gamma(2.0)],
        "einstein-mul" => vec![ClosureInputs::pair(left, right)],
        "einstein-scalar" => vec![ClosureInputs::scaled(0.5, zero_half)],
        "wei-meet" => vec![ClosureInputs::pair(pfn(0.0, 1.0, 0.0), pfn(0.0, 0.0, 1.0))],
        "wei-scalar" => vec![ClosureInputs::scaled(0.5, zero_half)],
        "wei-power" => vec![ClosureInputs::scaled(2.0, zero_half)],
        "wei-pfwa" => vec![ClosureInputs::pair(pfn(0.5, 0.2, 0.2), pfn(0.3, 0.1, 0.1)).with_weights(halves)],
        "wei-pfwg" => vec![ClosureInputs::pair(g1, g2).with_weights(halves)],
        "lin-iol-add" | "lin-iol-mul" => vec![ClosureInputs::pair(zero_half, zero_half)],
        "lin-iol-scalar" => vec![ClosureInputs::scaled(2.0, zero_half)],
        "pfmm" => vec![ClosureInputs::pair(g1, g2).with_params(halves)],
        "pfwmm" => vec![ClosureInputs::pair(g1, g2).with_params(halves.clone()).with_weights(halves)],
        "pfbm" => vec![ClosureInputs::pair(g1, g2).with_params(halves)],
        "pfnwbm" => vec![ClosureInputs::pair(g1, g2).with_params(halves.clone()).with_weights(halves)],
        "interactional-add" | "interactional-mul" => interactional_pairs
            .iter()
            .map(|&(a, b)| ClosureInputs::pair(a, b).with_family(product))
            .collect(),
        "interactional-scalar" => [(0.5, zero_half), (0.5, half_quarter), (2.0, zero_half)]
            .iter()
            .map(|&(l, x)| ClosureInputs::scaled(l, x).with_family(product))
            .collect(),
        "interactional-power" => [(2.0, zero_half), (0.5, pfn(0.25, 0.5, 0.25)), (0.5, alpha)]
            .iter()
            .map(|&(l, x)| ClosureInputs::scaled(l, x).with_family(product))
            .collect(),
        _ => Vec::new(),
    })
}

const SAMPLE_LAMBDAS: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];
const SAMPLE_INTEGER_LAMBDAS: [f64; 4] = [1.0, 2.0, 3.0, 5.0];

/// Draws a random input set for `operator_id`.
///
/// Generator-based operators default to the piecewise family (legacy) or
/// the product family (interactional); Dombi uses `gamma = 1` and Hamacher
/// `gamma = 2`. Mean-type operators draw two to four operands.
pub fn random_inputs<R: Rng + ?Sized>(operator_id: &str, rng: &mut R) -> Result<ClosureInputs> {
    if !OPERATOR_IDS.contains(&operator_id) {
        return Err(Error::UnknownOperator(operator_id.to_string()));
    }
    let mean_type = ["wei-pfwa", "wei-pfwg", "pfmm", "pfwmm", "pfbm", "pfnwbm"].contains(&operator_id);
    if mean_type {
        let n = rng.gen_range(2..=4);
        let operands: Vec<Pfn> = (0..n).map(|_| sampling::sample_pfn(rng)).collect();
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let weights = Some(raw.iter().map(|r| r / total).collect());
        let params = match operator_id {
            "pfmm" | "pfwmm" => Some((0..n).map(|_| rng.gen_range(0.1..2.0)).collect()),
            "pfbm" | "pfnwbm" => Some(vec![rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0)]),
            _ => None,
        };
        return Ok(ClosureInputs { weights, params, operands, ..Default::default() });
    }
    let (family, variant) = operator_id.rsplit_once('-').expect("registered ids contain a dash");
    let variant = parse_variant(variant).expect("registered ids end in a variant");
    let mut inputs = if variant.is_binary() {
        ClosureInputs::pair(sampling::sample_pfn(rng), sampling::sample_pfn(rng))
    } else {
        let set: &[f64] = if family == "lin-iol" { &SAMPLE_INTEGER_LAMBDAS } else { &SAMPLE_LAMBDAS };
        ClosureInputs::scaled(set[rng.gen_range(0..set.len())], sampling::sample_pfn(rng))
    };
    match family {
        "garg" | "ashraf" => inputs.family = Some(TnormFamily::Piecewise),
        "interactional" => inputs.family = Some(TnormFamily::Product),
        "dombi" => inputs.gamma = Some(1.0),
        "hamacher" => inputs.gamma = Some(2.0),
        _ => {}
    }
    Ok(inputs)
}

/// Writes reports as CSV: `operator_id,inputs,a,b,c,sum,is_pfn`.
pub fn write_closure_csv<W: Write>(reports: &[ClosureReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Internal(format!("writing CSV: {e}"));
    w.write_record(["operator_id", "inputs", "a", "b", "c", "sum", "is_pfn"]).map_err(io)?;
    for r in reports {
        w.write_record([
            r.operator_id.clone(),
            r.inputs.to_string(),
            r.output.a.to_string(),
            r.output.b.to_string(),
            r.output.c.to_string(),
            r.component_sum.to_string(),
            r.is_pfn.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Internal(format!("writing CSV: {e}")))
}
