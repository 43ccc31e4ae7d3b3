//! Seeded random PFN generation for fuzzing and property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pfn::Pfn;

/// Share of [`sample_pfn`] draws taken from [`boundary_pfn`].
pub const BOUNDARY_SHARE: f64 = 0.1;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the PFN simplex by rejection from the unit cube.
pub fn uniform_pfn<R: Rng + ?Sized>(rng: &mut R) -> Pfn {
    loop {
        let (mu, eta, nu): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
        if mu + eta + nu <= 1.0 {
            return Pfn::new(mu, eta, nu).expect("inside the simplex");
        }
    }
}

/// A PFN on the boundary of the simplex: a vertex, an edge point, a face
/// point with zero refusal, or a component at 0 or 1.
pub fn boundary_pfn<R: Rng + ?Sized>(rng: &mut R) -> Pfn {
    let t: f64 = rng.gen();
    let (mu, eta, nu) = match rng.gen_range(0..10) {
        0 => (1.0, 0.0, 0.0),
        1 => (0.0, 1.0, 0.0),
        2 => (0.0, 0.0, 1.0),
        3 => (0.0, 0.0, 0.0),
        4 => (t, 1.0 - t, 0.0),
        5 => (0.0, t, 1.0 - t),
        6 => (t, 0.0, 1.0 - t),
        7 => {
            let s: f64 = rng.gen::<f64>() * (1.0 - t);
            (t, s, 1.0 - t - s)
        }
        8 => (0.0, t * 0.5, t * 0.5),
        _ => (t * 0.5, 0.0, t * 0.5),
    };
    Pfn::new(mu, eta.max(0.0), nu.max(0.0)).expect("boundary point is a PFN")
}

/// Uniform draw mixed with boundary points at rate [`BOUNDARY_SHARE`].
pub fn sample_pfn<R: Rng + ?Sized>(rng: &mut R) -> Pfn {
    if rng.gen_bool(BOUNDARY_SHARE) {
        boundary_pfn(rng)
    } else {
        uniform_pfn(rng)
    }
}

/// A pair `(x, y)` with `x` below `y` in the component-wise order.
pub fn comparable_pair<R: Rng + ?Sized>(rng: &mut R) -> (Pfn, Pfn) {
    let y = sample_pfn(rng);
    let mu = rng.gen::<f64>() * y.mu();
    let eta = rng.gen::<f64>() * y.eta();
    let slack = (1.0 - mu - eta - y.nu()).max(0.0);
    let nu = (y.nu() + rng.gen::<f64>() * slack).min(1.0 - mu - eta).max(y.nu());
    let x = Pfn::new(mu, eta, nu).expect("shrunk point is a PFN");
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let a: Vec<Pfn> = (0..50).map({
            let mut r = seeded_rng(3);
            move |_| sample_pfn(&mut r)
        })
        .collect();
        let mut r = seeded_rng(3);
        let b: Vec<Pfn> = (0..50).map(|_| sample_pfn(&mut r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn pairs_are_comparable() {
        let mut r = seeded_rng(5);
        for _ in 0..10_000 {
            let (x, y) = comparable_pair(&mut r);
            assert!(x.leq_componentwise(&y), "{x} {y}");
        }
    }

    #[test]
    fn boundary_share_roughly_holds() {
        let mut r = seeded_rng(9);
        let on_edge = (0..20_000)
            .map(|_| sample_pfn(&mut r))
            .filter(|p| p.components().iter().any(|&c| c == 0.0 || c == 1.0))
            .count();
        assert!((1_000..3_500).contains(&on_edge), "{on_edge}");
    }
}
