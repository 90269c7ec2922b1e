use eigensteps::condition::{reduced_inequalities, superfluous_conditions};
use eigensteps::frames::{eigensteps_of_frame, frame_operator, harmonic_frame, reverse_frame, FrameMatrix};
use eigensteps::geometry::{sample_affine_hull, witness, HRep, Variant};
use eigensteps::maps::{phi, psi};
use eigensteps::oracle::{Constraint, LinearProgram, LpStatus};
use eigensteps::rational::{self, Rational};
use eigensteps::{
    check_identities, sample_interior, special_point, validate_full, validate_reduced, Params,
    Tableau,
};
use nalgebra::DMatrix;
use num_traits::Signed;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (3usize..9).prop_flat_map(|n| (Just(n), 1..n)).prop_map(|(n, d)| Params::new(n, d).unwrap())
}

fn geometric_params() -> impl Strategy<Value = Params> {
    (5usize..9)
        .prop_flat_map(|n| (Just(n), 2..=n - 2))
        .prop_map(|(n, d)| Params::new(n, d).unwrap())
}

/// A sampled point of `Λ_{N,d}` with a few entries nudged by small dyadic
/// amounts; the result may or may not lie in the affine hull.
fn perturbed(p: Params, seed: u64, nudges: &[(usize, usize, i64)]) -> Tableau {
    let mut t = sample_interior(p, seed, 3).pop().unwrap();
    for &(i, col, k) in nudges {
        let (i, col) = (1 + i % p.d(), col % p.cols());
        let v = t.get(i, col) + rational::ratio(k, 2);
        t.set(i, col, v);
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_and_reduced_agree(
        p in params(),
        seed in 0u64..1000,
        nudges in prop::collection::vec((0usize..8, 0usize..9, -3i64..=3), 0..3),
    ) {
        let t = perturbed(p, seed, &nudges);
        prop_assert_eq!(validate_full(&t).valid, validate_reduced(&t).valid);
    }

    #[test]
    fn valid_points_are_bounded_and_monotone(p in params(), seed in 0u64..1000) {
        let n = rational::from_usize(p.n());
        for t in sample_interior(p, seed, 4) {
            prop_assert!(validate_full(&t).valid);
            for i in 1..=p.d() {
                for col in 0..=p.n() {
                    let v = t.get(i, col);
                    prop_assert!(!v.is_negative() && *v <= n);
                    if p.in_zero_triangle(i, col) {
                        prop_assert_eq!(v, &rational::int(0));
                    }
                    if p.in_full_triangle(i, col) {
                        prop_assert_eq!(v, &n);
                    }
                    if col < p.n() {
                        prop_assert!(v <= t.get(i, col + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn maps_preserve_membership(p in params(), seed in 0u64..1000) {
        let samples = sample_interior(p, seed, 5);
        prop_assert!(check_identities(p, &samples).unwrap());
        for t in &samples {
            prop_assert!(validate_full(&phi(t)).valid);
            prop_assert!(validate_full(&psi(t).unwrap()).valid);
        }
    }

    #[test]
    fn phi_is_an_involution_everywhere(
        p in params(),
        entries in prop::collection::vec(-20i64..20, 100),
    ) {
        let t = Tableau::from_fn(p, |i, col| rational::ratio(entries[(i * 11 + col) % 100], 3));
        prop_assert_eq!(phi(&phi(&t)), t);
    }

    #[test]
    fn hrep_variants_agree(p in geometric_params(), seed in 0u64..1000) {
        let full = HRep::new(p, Variant::FullReduced).unwrap();
        let lean = HRep::new(p, Variant::NonRedundant).unwrap();
        for t in sample_affine_hull(p, seed, 20) {
            prop_assert_eq!(full.contains(&t), lean.contains(&t));
            prop_assert_eq!(full.contains(&t), validate_full(&t).valid);
        }
    }

    #[test]
    fn dropped_inequalities_hold_on_samples(p in geometric_params(), seed in 0u64..1000) {
        let dropped = superfluous_conditions(p);
        let conds: Vec<_> = reduced_inequalities(p)
            .into_iter()
            .filter(|c| dropped.contains(&c.id))
            .collect();
        let d = rational::from_usize(p.d());
        for t in sample_interior(p, seed, 10) {
            prop_assert!(conds.iter().all(|c| !c.slack(&t).is_negative()));
            prop_assert!(*t.get(2, 2) <= d);
        }
    }
}

#[test]
fn witnesses_violate_exactly_their_target() {
    for n in 5..9 {
        for d in 2..=n - 2 {
            let p = Params::new(n, d).unwrap();
            let skip = superfluous_conditions(p);
            let conds = reduced_inequalities(p);
            for c in conds.iter().filter(|c| !skip.contains(&c.id)) {
                let w = witness(p, c.id).unwrap();
                assert_eq!(validate_reduced(&w.tableau).violated_ids(), vec![c.id]);
                // The witness certifies the "violate only this one" LP.
                let h = HRep::new(p, Variant::FullReduced).unwrap();
                let x = h.coordinates(&w.tableau).unwrap();
                let mut lp = LinearProgram::new(h.dimension());
                for q in &h.inequalities {
                    if q.id == c.id {
                        lp.push(Constraint::ge(q.coeffs.clone(), &q.rhs + rational::int(1)));
                    } else {
                        lp.push(Constraint::le(q.coeffs.clone(), q.rhs.clone()));
                    }
                }
                assert!(lp.constraints().iter().all(|k| k.holds(&x)), "({n},{d}) {}", c.id);
                assert_eq!(lp.feasible().status, LpStatus::Feasible);
            }
        }
    }
}

#[test]
fn special_point_slacks_up_to_twelve() {
    for n in 2..=12 {
        for d in 1..n {
            let report = validate_reduced(&special_point(Params::new(n, d).unwrap()));
            assert!(report.valid);
            assert!(report.slacks.iter().all(|(_, s)| *s == Rational::from_integer(1.into())));
        }
    }
}

#[test]
fn tightness_decomposes_along_the_frame() {
    for (n, d) in [(5, 2), (6, 3), (7, 4), (9, 5)] {
        let p = Params::new(n, d).unwrap();
        let f = harmonic_frame(p).unwrap();
        let r = reverse_frame(&f);
        for k in 0..=n {
            let head = FrameMatrix::new(f.matrix().columns(0, k).into_owned()).unwrap();
            let tail = FrameMatrix::new(r.matrix().columns(0, n - k).into_owned()).unwrap();
            let sum = frame_operator(&head) + frame_operator(&tail);
            assert!((sum - DMatrix::identity(d, d) * n as f64).amax() < 1e-9);
        }
    }
}

#[test]
fn correspondences_across_harmonic_family() {
    use eigensteps::frames::{verify_phi_correspondence, verify_psi_correspondence};
    for n in 4..=10 {
        for d in 2..=n - 2 {
            let f = harmonic_frame(Params::new(n, d).unwrap()).unwrap();
            let lam = eigensteps_of_frame(&f).unwrap();
            assert!(lam.interlaces(1e-8));
            assert!(verify_phi_correspondence(&f, 1e-7).unwrap());
            assert!(verify_psi_correspondence(&f, 1e-7).unwrap());
        }
    }
}
