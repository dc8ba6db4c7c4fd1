//! Invariants over randomly generated states, constellations and rotations.

use majorana::convert::{constellation_from_state, rotate_state, state_from_constellation};
use majorana::io::{parse_document, state_to_json, Document};
use majorana::multipoles::{multipoles_from_state, stokes_moment_z};
use majorana::{state_equiv, Constellation, RotationSU2, SpinLabel, SpinState, Star};
use num_complex::Complex64;
use proptest::prelude::*;

fn spin() -> impl Strategy<Value = SpinLabel> {
    (1u32..=14).prop_map(SpinLabel::new)
}

fn state() -> impl Strategy<Value = SpinState> {
    spin().prop_flat_map(|s| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), s.dim())
            .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
            .prop_map(move |v| {
                let amps: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                SpinState::new(s, amps.into_iter().map(|a| a / norm).collect()).unwrap()
            })
    })
}

fn star() -> impl Strategy<Value = Star> {
    (-1.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(z, phi)| Star::from_angles(z.acos(), phi))
}

fn rotation() -> impl Strategy<Value = RotationSU2> {
    (star(), 0.0f64..std::f64::consts::TAU).prop_map(|(axis, angle)| RotationSU2::from_axis_angle(axis.unit_vector(), angle))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_rule_and_hermiticity(psi in state()) {
        let spectrum = multipoles_from_state(&psi);
        prop_assert!(spectrum.sum_rule_error() < 1e-12);
        prop_assert!(spectrum.hermiticity_error() < 1e-13);
        prop_assert!(spectrum.lengths().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn lengths_are_rotation_invariant(psi in state(), r in rotation()) {
        let a = multipoles_from_state(&psi);
        let b = multipoles_from_state(&rotate_state(&psi, &r));
        for (x, y) in a.lengths().iter().zip(b.lengths()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn rotating_state_rotates_stars(psi in state(), r in rotation()) {
        let stars = constellation_from_state(&psi).unwrap();
        let rotated = constellation_from_state(&rotate_state(&psi, &r)).unwrap();
        prop_assert!(stars.rotate(&r).match_distance(&rotated) < 1e-6);
    }

    #[test]
    fn state_round_trip(psi in state()) {
        let back = state_from_constellation(&constellation_from_state(&psi).unwrap()).unwrap();
        prop_assert!(state_equiv(&psi, &back, 1e-8).unwrap());
    }

    #[test]
    fn constellation_round_trip(stars in prop::collection::vec(star(), 1..=16)) {
        let c = Constellation::from_stars(stars);
        let back = constellation_from_state(&state_from_constellation(&c).unwrap()).unwrap();
        prop_assert!(c.match_distance(&back) < 1e-7);
    }

    #[test]
    fn global_phase_is_invisible(psi in state(), phase in 0.0f64..std::f64::consts::TAU) {
        let u = Complex64::from_polar(1.0, phase);
        let shifted = SpinState::new(psi.spin(), psi.amps().iter().map(|a| a * u).collect()).unwrap();
        prop_assert!(state_equiv(&psi, &shifted, 1e-12).unwrap());
        let a = multipoles_from_state(&psi);
        let b = multipoles_from_state(&shifted);
        for (x, y) in a.lengths().iter().zip(b.lengths()) {
            prop_assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact(psi in state()) {
        let Document::State(back) = parse_document(&state_to_json(&psi)).unwrap() else {
            panic!("state document expected");
        };
        prop_assert_eq!(back.amps(), psi.amps());
    }

    #[test]
    fn rotations_compose(a in rotation(), b in rotation(), s in star()) {
        let two_step = b.apply_star(&a.apply_star(&s));
        prop_assert!(a.then(&b).apply_star(&s).chordal(&two_step) < 1e-12);
        prop_assert!(a.inverse().apply_star(&a.apply_star(&s)).chordal(&s) < 1e-12);
    }

    #[test]
    fn stokes_moments_from_stars(stars in prop::collection::vec(star(), 1..=12)) {
        let c = Constellation::from_stars(stars);
        let psi = state_from_constellation(&c).unwrap();
        for n in 0..=4 {
            prop_assert!((stokes_moment_z(&c, n).unwrap() - psi.sz_moment(n)).abs() < 1e-9);
        }
    }
}
