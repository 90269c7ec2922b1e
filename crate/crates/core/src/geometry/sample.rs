//! Deterministic exact sampling: hit-and-run inside `Λ_{N,d}` and random
//! points of its affine hull.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::hrep::{HRep, Variant};
use crate::linalg::dot;
use crate::rational::{self, Rational};
use crate::tableau::{special_point, Params, Tableau};

/// Feasible parameter interval `[lo, hi]` of `x + t·u`.
fn chord(h: &HRep, x: &[Rational], u: &[Rational]) -> (Rational, Rational) {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for q in &h.inequalities {
        let rate = dot(&q.coeffs, u);
        if rate.is_zero() {
            continue;
        }
        let t = q.slack(x) / &rate;
        if rate.is_positive() {
            if hi.as_ref().is_none_or(|h| t < *h) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|l| t > *l) {
            lo = Some(t);
        }
    }
    (
        lo.expect("polytope is bounded"),
        hi.expect("polytope is bounded"),
    )
}

/// The multiple of `2^-k` in `[lo, hi]` with the smallest `k`, nearest to
/// the middle of the interval. Requires `lo < hi`.
fn dyadic_between(lo: &Rational, hi: &Rational) -> Rational {
    let mid = (lo + hi) / rational::int(2);
    let mut scale = Rational::one();
    loop {
        let v = (&mid * &scale).round() / &scale;
        if *lo <= v && v <= *hi {
            return v;
        }
        scale *= rational::int(2);
    }
}

/// `count` points of `Λ_{N,d}` with every reduced slack positive, from a
/// hit-and-run walk started at `λ̂`. Directions have integer entries in
/// `-3..=3`. Each step picks one of seven equal cells strictly inside the
/// chord and lands on the coarsest dyadic rational in it, so coordinates
/// stay dyadic along the walk.
pub fn sample_interior(p: Params, seed: u64, count: usize) -> Vec<Tableau> {
    let h = match HRep::new(p, Variant::FullReduced) {
        Ok(h) if h.dimension() > 0 => h,
        _ => return vec![special_point(p); count],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = h.coordinates(&special_point(p)).expect("λ̂ is in the hull");
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u: Vec<Rational> = loop {
            let u: Vec<i64> = (0..x.len()).map(|_| rng.random_range(-3..=3)).collect();
            if u.iter().any(|&v| v != 0) {
                break u.into_iter().map(rational::int).collect();
            }
        };
        let (lo, hi) = chord(&h, &x, &u);
        // Cell k of 1..=7 is [(2k-1)/16, (2k+1)/16] of the chord.
        let k: i64 = rng.random_range(1..=7);
        let step = (&hi - &lo) / rational::int(16);
        let t = dyadic_between(
            &(&lo + &step * rational::int(2 * k - 1)),
            &(&lo + &step * rational::int(2 * k + 1)),
        );
        for (xi, ui) in x.iter_mut().zip(&u) {
            *xi += &t * ui;
        }
        out.push(h.lift(&x));
    }
    out
}

/// `count` points of the affine hull whose free coordinates are multiples
/// of `1/4` drawn uniformly from `[-1, N+1]`. Most fall outside the
/// polytope once the dimension grows.
pub fn sample_affine_hull(p: Params, seed: u64, count: usize) -> Vec<Tableau> {
    let h = match HRep::new(p, Variant::FullReduced) {
        Ok(h) => h,
        Err(_) => return vec![special_point(p); count],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 4 * (p.n() as i64 + 1);
    (0..count)
        .map(|_| {
            let x: Vec<Rational> = (0..h.dimension())
                .map(|_| rational::ratio(rng.random_range(-4..=top), 4))
                .collect();
            h.lift(&x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::reduced_inequalities;
    use crate::validate::{in_affine_hull, validate_full};

    fn p(n: usize, d: usize) -> Params {
        Params::new(n, d).unwrap()
    }

    #[test]
    fn interior_samples_valid_and_deterministic() {
        let s = sample_interior(p(5, 2), 7, 10);
        assert_eq!(s.len(), 10);
        assert!(s.iter().all(|t| validate_full(t).valid));
        assert_eq!(s, sample_interior(p(5, 2), 7, 10));
        assert_ne!(s, sample_interior(p(5, 2), 8, 10));
    }

    #[test]
    fn strictly_interior() {
        let t = &sample_interior(p(6, 4), 1, 1)[0];
        assert!(reduced_inequalities(p(6, 4))
            .iter()
            .all(|c| c.slack(t).is_positive()));
    }

    #[test]
    fn point_polytopes_repeat() {
        let s = sample_interior(p(6, 1), 3, 4);
        assert!(s.iter().all(|t| *t == special_point(p(6, 1))));
        assert_eq!(sample_interior(p(4, 4), 3, 2).len(), 2);
    }

    #[test]
    fn long_walk_keeps_small_denominators() {
        let s = sample_interior(p(7, 3), 11, 500);
        let last = s.last().unwrap();
        assert!(validate_full(last).valid);
        assert!(last.entries().iter().all(|v| v.denom().bits() < 64));
        assert!(last.entries().iter().all(|v| v.denom().magnitude().count_ones() == 1));
    }

    #[test]
    fn dyadic() {
        let r = rational::ratio;
        assert_eq!(dyadic_between(&r(1, 3), &r(2, 3)), r(1, 2));
        assert_eq!(dyadic_between(&r(-3, 2), &r(7, 5)), r(0, 1));
        assert_eq!(dyadic_between(&r(1, 10), &r(1, 7)), r(1, 8));
    }

    #[test]
    fn hull_samples_in_hull() {
        let s = sample_affine_hull(p(6, 3), 2, 50);
        assert!(s.iter().all(in_affine_hull));
        assert!(s.iter().any(|t| !validate_full(t).valid));
    }
}
