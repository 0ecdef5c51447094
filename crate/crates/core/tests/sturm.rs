mod common;

use std::f64::consts::PI;

use osc_core::special::bessel_j;
use osc_core::sturm::*;
use osc_core::zeros::bessel_j_zeros;

fn j(nu: f64, t: f64) -> f64 {
    bessel_j(nu, t).unwrap().value
}

/// (√t J_ν(t))′ for integer ν ≥ 0.
fn sqrt_j_prime(nu: f64, t: f64) -> f64 {
    let jp = if nu == 0.0 {
        -j(1.0, t)
    } else {
        0.5 * (j(nu - 1.0, t) - j(nu + 1.0, t))
    };
    j(nu, t) / (2.0 * t.sqrt()) + t.sqrt() * jp
}

#[test]
fn midpoint_residual_within_tolerance() {
    for phi in [PhiSpec::constant(4.0), PhiSpec::bessel(2.0), common::rising_phi()] {
        let tr = solve_normal_form(&phi, (1.0, 0.0, 1.0), 60.0).unwrap();
        assert!(
            tr.max_midpoint_residual() <= tr.rtol(),
            "{}: {}",
            phi.label,
            tr.max_midpoint_residual()
        );
    }
}

#[test]
fn energy_is_conserved_for_constant_phi() {
    let tr = solve_normal_form(&PhiSpec::constant(4.0), (0.0, 0.0, 1.0), 50.0).unwrap();
    for (&u, &v) in tr.u_values().iter().zip(tr.u_prime_values()) {
        assert!((v * v + 4.0 * u * u - 1.0).abs() <= 1e-8);
    }
}

#[test]
fn bessel_normal_form_reproduces_zeros() {
    let t0: f64 = 0.5;
    for nu in [0.0, 1.0, 2.0] {
        let init = (t0, t0.sqrt() * j(nu, t0), sqrt_j_prime(nu, t0));
        let want = bessel_j_zeros(nu, 20, 1e-13).unwrap();
        let tr = solve_normal_form(&PhiSpec::bessel(nu), init, want[19] + 1.0).unwrap();
        let got = tr.detected_roots();
        assert!(got.len() >= 20, "nu={nu}");
        for k in 0..20 {
            assert!(
                (got[k] - want[k]).abs() <= 1e-7,
                "nu={nu} k={k}: {} vs {}",
                got[k],
                want[k]
            );
        }
    }
}

#[test]
fn root_count_grows_linearly() {
    for phi in [PhiSpec::constant(1.0), PhiSpec::bessel(0.0), common::rising_phi()] {
        for t1 in [20.0, 100.0, 300.0] {
            let tr = solve_normal_form(&phi, (1.0, 0.0, 1.0), t1).unwrap();
            let n = tr.detected_roots().len() as f64;
            assert!(n >= t1 / PI - 2.0, "{} T={t1}: {n}", phi.label);
        }
    }
}

#[test]
fn comparison_against_faster_oscillation() {
    let r = compare_solutions(&PhiSpec::constant(1.0), &PhiSpec::constant(4.0), (0.0, 0.0, 1.0), 30.0).unwrap();
    assert!(r.pass && r.interlacing_pairs_checked >= 8, "{r:?}");
}

#[test]
fn comparison_of_bessel_against_sine() {
    let z = bessel_j_zeros(2.0, 1, 1e-13).unwrap()[0];
    let r = compare_solutions(&PhiSpec::bessel(2.0), &PhiSpec::constant(1.0), (z, 0.0, 1.0), 60.0).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn small_perturbation_moves_first_root() {
    let eps = 1e-3;
    let r = compare_solutions(
        &PhiSpec::constant(1.0),
        &PhiSpec::constant(1.0 + eps),
        (0.0, 0.0, 1.0),
        10.0,
    )
    .unwrap();
    assert!(r.pass);
    let shift = r.first_root_v.unwrap() - r.first_root_w.unwrap();
    let want = PI * eps / 2.0;
    assert!((shift - want).abs() <= 0.1 * want, "{shift} vs {want}");
}

#[test]
fn classifier_on_declared_coefficients() {
    let c = classify_oscillation(&PhiSpec::constant(1.0));
    assert!(c.from_declared_asymptotics);
    assert_eq!(
        (c.a1, c.a2, c.a3, c.b1),
        (Criterion::Holds, Criterion::Holds, Criterion::Holds, Criterion::Holds)
    );
    // t²φ → 1/4 exactly at the origin: the strict inequality fails.
    let c = classify_oscillation(&PhiSpec::bessel(0.0));
    assert_eq!(
        (c.a1, c.b1, c.b2),
        (Criterion::Holds, Criterion::Fails, Criterion::Fails)
    );
    let c = classify_oscillation(&PhiSpec::bessel(1.0));
    assert_eq!(c.b1, Criterion::Holds);
}

#[test]
fn classifier_on_sampled_coefficients() {
    let c = classify_oscillation(&common::rising_phi());
    assert!(!c.from_declared_asymptotics);
    assert_eq!(
        (c.a1, c.a2, c.a3),
        (Criterion::Holds, Criterion::Holds, Criterion::Holds)
    );
    assert_eq!((c.b1, c.b2), (Criterion::Holds, Criterion::Holds));
    let phi = PhiSpec::new("1/t^2", |t: f64| 1.0 / (t * t), Monotonicity::StrictlyDecreasing, None);
    let c = classify_oscillation(&phi);
    assert_eq!(
        (c.a1, c.a2, c.a3),
        (Criterion::Holds, Criterion::Fails, Criterion::Holds)
    );
    assert_eq!(c.b1, Criterion::Fails);
}

#[test]
fn arch_convexity_examples() {
    let tr = solve_normal_form(&PhiSpec::constant(1.0), (0.0, 0.0, 1.0), 40.0).unwrap();
    assert!(check_arch_convexity(&tr, ConvexityMode::NonStrict, false).unwrap().pass);
    assert!(!check_arch_convexity(&tr, ConvexityMode::Strict, false).unwrap().pass);

    let z = bessel_j_zeros(2.0, 1, 1e-13).unwrap()[0];
    let tr = solve_normal_form(&PhiSpec::bessel(2.0), (z, 0.0, 1.0), 60.0).unwrap();
    let r = check_arch_convexity(&tr, ConvexityMode::Strict, false).unwrap();
    assert!(r.pass && r.roots.len() >= 15, "{}", r.worst_margin);
    assert!(!check_arch_convexity(&tr, ConvexityMode::NonStrict, true).unwrap().pass);

    // For ν = 0 the near-root amplitude margin decays like s²/k and drops
    // under the strict margin beyond t ≈ 45.
    let z = bessel_j_zeros(0.0, 1, 1e-13).unwrap()[0];
    let tr = solve_normal_form(&PhiSpec::bessel(0.0), (z, 0.0, 1.0), 40.0).unwrap();
    assert!(check_arch_convexity(&tr, ConvexityMode::Strict, true).unwrap().pass);
    assert!(!check_arch_convexity(&tr, ConvexityMode::NonStrict, false).unwrap().pass);
}
