mod common;

use std::f64::consts::PI;

use osc_core::sturm::PhiSpec;
use osc_core::transforms::KernelSpec;
use osc_core::zeros::*;

#[test]
fn spacing_shrinks_toward_pi() {
    for nu in [0.75, 1.0, 2.0, 5.0] {
        let z = bessel_j_zeros(nu, 51, 1e-12).unwrap();
        let d: Vec<f64> = z.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..d.len() - 1 {
            assert!(d[k] > d[k + 1], "nu={nu} k={k}");
        }
        assert!(d.iter().all(|&s| s > PI));
        assert!(d[49] - PI < 0.05, "nu={nu}: {}", d[49]);
    }
}

#[test]
fn spacing_grows_toward_pi_for_small_orders() {
    for nu in [0.0, 0.25] {
        let z = bessel_j_zeros(nu, 52, 1e-12).unwrap();
        let d: Vec<f64> = z.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..50 {
            assert!(d[k] <= d[k + 1] && d[k + 1] <= PI, "nu={nu} k={k}");
        }
    }
}

/// Frozen from a fit over k = 10..100 for ν ∈ {0, 1, 2.5}; the remainder is
/// (4ν² − 1)/(8β) with β ≈ kπ, so k·|error| stays near (4ν² − 1)/(8π).
const MCMAHON_C: f64 = 1.0;

#[test]
fn mcmahon_remainder_is_order_one_over_k() {
    for nu in [0.0, 1.0, 2.5] {
        let z = bessel_j_zeros(nu, 100, 1e-12).unwrap();
        for k in 10..=100 {
            let r = (z[k - 1] - mcmahon_estimate(nu, k)).abs() * k as f64;
            assert!(r <= MCMAHON_C, "nu={nu} k={k}: {r}");
        }
    }
}

#[test]
fn sturm_box_bound_on_ode_kernel() {
    // 1 < φ < 2 everywhere, so π/√2 < Δ_k < π.
    let k = common::ode_kernel();
    let s = enumerate_zeros(&k, 60, 1e-12).unwrap();
    let phi = common::rising_phi();
    for (i, w) in s.zeros.windows(2).enumerate() {
        let (m, mm) = (phi.eval(w[0]), phi.eval(w[1]));
        let d = w[1] - w[0];
        assert!(PI / mm.sqrt() < d && d < PI / m.sqrt(), "arch {i}: {d}");
    }
}

#[test]
fn kernel_zero_sets() {
    let s = enumerate_zeros(&KernelSpec::bessel_sqrt(0.5).unwrap(), 5, 1e-13).unwrap();
    for (k, z) in s.zeros.iter().enumerate() {
        assert!((z - (k + 1) as f64 * PI).abs() < 1e-12);
    }
    // √t J_ν(t^α) vanishes at j_{ν,k}^{1/α}.
    let s = enumerate_zeros(&KernelSpec::scaled_bessel(0.5, 2.0).unwrap(), 5, 1e-13).unwrap();
    for (k, z) in s.zeros.iter().enumerate() {
        assert!((z * z - (k + 1) as f64 * PI).abs() < 1e-11);
    }
    let s = enumerate_zeros(&KernelSpec::bessel_sqrt(1.0).unwrap(), 1, 1e-13).unwrap();
    assert!((s.zeros[0] - 3.831_705_970_207_512).abs() < 1e-12);
    let s = enumerate_zeros(&KernelSpec::bessel_sqrt(-0.9).unwrap(), 1, 1e-13).unwrap();
    assert!((s.zeros[0] - 0.647_830_880_750_377_2).abs() < 1e-12);
    let s = enumerate_zeros(&KernelSpec::ode(PhiSpec::constant(4.0), 1.0, 10.0).unwrap(), 3, 1e-12).unwrap();
    for (k, z) in s.zeros.iter().enumerate() {
        assert!((z - (k + 1) as f64 * PI / 2.0).abs() < 1e-8);
    }
}

#[test]
fn ode_kernel_span_limits_zero_count() {
    let k = KernelSpec::ode(PhiSpec::constant(1.0), 1.0, 10.0).unwrap();
    assert!(enumerate_zeros(&k, 5, 1e-12).is_err());
}
