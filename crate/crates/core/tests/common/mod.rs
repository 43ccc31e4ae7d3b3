#![allow(dead_code)]

use picfuzz::{Pfn, TnormFamily};
use proptest::prelude::*;

/// Parameter grid per family; 25 points in total.
pub fn family_grid() -> Vec<TnormFamily> {
    let mut v = vec![TnormFamily::Product];
    v.extend([-10.0, -5.0, -2.0, -1.0, -0.5].map(TnormFamily::SchweizerSklar));
    v.extend([0.5, 1.0, 2.0, 5.0, 10.0].map(TnormFamily::Hamacher));
    v.extend([0.5, 2.0, 5.0, 10.0].map(TnormFamily::Frank));
    v.extend([0.5, 1.0, 2.0, 5.0, 10.0].map(TnormFamily::Dombi));
    v.extend([0.5, 1.0, 2.0, 5.0, 10.0].map(TnormFamily::AczelAlsina));
    v
}

/// The grid plus the piecewise family.
pub fn all_families() -> Vec<TnormFamily> {
    let mut v = family_grid();
    v.push(TnormFamily::Piecewise);
    v
}

pub fn max_dev(a: &Pfn, b: &Pfn) -> f64 {
    a.components().iter().zip(b.components()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn close(a: &Pfn, b: &Pfn, tol: f64) -> bool {
    max_dev(a, b) <= tol
}

/// `a` is below or equal to `b` in the admissible order, allowing `tol`
/// of component noise.
pub fn leq_w_tol(a: &Pfn, b: &Pfn, tol: f64) -> bool {
    a.cmp_admissible(b) != std::cmp::Ordering::Greater || close(a, b, tol)
}

pub fn pfn(mu: f64, eta: f64, nu: f64) -> Pfn {
    Pfn::new(mu, eta, nu).unwrap()
}

/// PFNs spread over the whole simplex, with a share of boundary points.
pub fn arb_pfn() -> impl Strategy<Value = Pfn> {
    let interior = (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b, r)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Pfn::new(lo * r, (hi - lo) * r, (1.0 - hi) * r).unwrap()
    });
    let boundary = prop::sample::select(vec![
        pfn(1.0, 0.0, 0.0),
        pfn(0.0, 1.0, 0.0),
        pfn(0.0, 0.0, 1.0),
        pfn(0.0, 0.0, 0.0),
        pfn(0.0, 0.5, 0.5),
        pfn(0.5, 0.5, 0.0),
        pfn(0.5, 0.0, 0.5),
        pfn(0.25, 0.75, 0.0),
        pfn(0.25, 0.0, 0.75),
    ]);
    prop_oneof![9 => interior, 1 => boundary]
}

/// Pairs ordered by the containment order: `(x, y)` with `x` below `y`.
pub fn arb_comparable() -> impl Strategy<Value = (Pfn, Pfn)> {
    (arb_pfn(), 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(y, a, b, c)| {
        let mu = a * y.mu();
        let eta = b * y.eta();
        let slack = (1.0 - mu - eta - y.nu()).max(0.0);
        let nu = (y.nu() + c * slack).min(1.0 - mu - eta).max(y.nu());
        (Pfn::new(mu, eta, nu).unwrap(), y)
    })
}

pub fn arb_family() -> impl Strategy<Value = TnormFamily> {
    prop::sample::select(all_families())
}

pub fn arb_strict_smooth_family() -> impl Strategy<Value = TnormFamily> {
    prop::sample::select(family_grid())
}
