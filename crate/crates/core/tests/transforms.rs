mod common;

use common::{alternating_catalog, oracle_catalog, profile};
use osc_core::positivity::build_g;
use osc_core::special::bessel_j;
use osc_core::transforms::*;
use osc_core::zeros::bessel_j_zero;
use osc_core::Error;

const TOL: f64 = 1e-10;

#[test]
fn oracle_agrees_on_catalog() {
    let cat = oracle_catalog();
    assert!(cat.len() >= 12);
    for t in &cat {
        let v = transform_eval(&t.kernel, &t.f, t.x, TOL).unwrap().value;
        let o = brute_force_oracle(&t.kernel, &t.f, t.x, TOL).unwrap();
        assert!((v - o).abs() <= 5.0 * 2.0 * TOL, "{}: {v} vs oracle {o}", t.name);
    }
}

#[test]
fn arch_terms_decrease_and_tail_bounds_hold() {
    let n = 30;
    for t in alternating_catalog() {
        let s = arch_series(&t.kernel, &t.f, t.x, n + 20).unwrap();
        let a0 = s.terms[0];
        for (k, w) in s.terms.windows(2).enumerate() {
            assert!(
                w[0] >= w[1] - 1e-12 * a0,
                "{}: A_{k} = {} < A_{} = {}",
                t.name,
                w[0],
                k + 1,
                w[1]
            );
        }
        let (v_n, bound_n, _) = s.estimate(n);
        let (v_m, _, _) = s.estimate(n + 20);
        assert!(
            (v_n - v_m).abs() <= bound_n,
            "{}: drift {} > bound {bound_n}",
            t.name,
            (v_n - v_m).abs()
        );
    }
}

#[test]
fn scaling_covariance() {
    // (Uf)(x) = (1/x)(Ug)(1) with g(t) = f(t/x).
    let cases = [
        (KernelSpec::Sine, profile("exp_decay", "b=1"), 2.0),
        (
            KernelSpec::bessel_sqrt(1.0).unwrap(),
            profile("rational", "gamma=0,delta=1,a=1"),
            0.5,
        ),
        (
            KernelSpec::scaled_bessel(0.5, 2.0).unwrap(),
            profile("exp_decay", "b=1,beta=0.5"),
            1.5,
        ),
    ];
    for (k, f, x) in cases {
        let direct = transform_eval(&k, &f, x, TOL).unwrap().value;
        let fe = f.evaluator();
        let g = ProfileFunction::new("f(t/x)", move |t| fe(t / x)).with_singular_exponent(f.singular_exponent);
        let substituted = transform_eval(&k, &g, 1.0, TOL * x).unwrap().value / x;
        assert!(
            (direct - substituted).abs() < 1e-9,
            "{}: {direct} vs {substituted}",
            k.label()
        );
    }
}

#[test]
fn order_reduction_identity() {
    let f = profile("exp_decay", "b=1");
    for nu in [0.0, 1.0] {
        let g = build_g(nu, &f).unwrap();
        for x in [0.5, 1.0, 2.0] {
            let lhs = x * hankel_transform(nu, &f, x, 1e-12).unwrap();
            let rhs = hankel_transform(nu + 1.0, &g, x, 1e-12).unwrap();
            assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs(), "nu={nu} x={x}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn first_arch_values() {
    use std::f64::consts::PI;
    let one = profile("indicator", "c=3.141592653589793");
    assert!((arch_integral(&KernelSpec::Sine, &one, 1.0, 0, &[PI]).unwrap() - 2.0).abs() < 1e-12);
    let j11 = bessel_j_zero(1.0, 1, 1e-13).unwrap();
    let f = profile("power", "beta=0.5");
    let a0 = arch_integral(&KernelSpec::bessel_sqrt(1.0).unwrap(), &f, 1.0, 0, &[j11]).unwrap();
    let want = 1.0 - bessel_j(0.0, j11).unwrap().value;
    assert!((a0 - want).abs() < 1e-12, "{a0} vs {want}");
}

#[test]
fn closed_form_examples() {
    let v = fourier_sine(&profile("rational", "gamma=1,delta=1,a=1"), 1.0, TOL).unwrap();
    assert!((v - 0.992_932_651_899_435_7).abs() < 1e-9);
    let v = fourier_sine(&profile("power", "beta=0.5"), 1.0, TOL).unwrap();
    assert!((v - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-9);
    let v = hankel_transform(1.0, &profile("power", "beta=0.5"), 2.0, TOL).unwrap();
    assert!((v - 0.5f64.sqrt()).abs() < 1e-9);
    let v = fourier_sine(&profile("exp_decay", "b=1"), 1.0, TOL).unwrap();
    assert!((v - 0.5).abs() < 1e-9);
    let v = fourier_cosine(&profile("exp_decay", "b=1"), 0.5, TOL).unwrap();
    assert!((v - 0.8).abs() < 1e-9);
    let v = fourier_cosine(&profile("shifted_power", "a=1,lambda=2"), 1.0, TOL).unwrap();
    assert!(v > 0.0);
}

#[test]
fn y_transform_signs_and_oracle() {
    let f = profile("exp_decay", "b=1,beta=0.25");
    let neg = y_transform(0.75, &f, 1.0, TOL).unwrap();
    let pos = y_transform(-0.75, &f, 1.0, TOL).unwrap();
    assert!(neg < 0.0 && pos > 0.0, "{neg} {pos}");
    let o = brute_force_oracle(&KernelSpec::neumann_sqrt(-0.75).unwrap(), &f, 1.0, TOL).unwrap();
    assert!((pos - o).abs() < 1e-9);
}

#[test]
fn non_integrable_profile_is_a_divergence() {
    let f = profile("power", "beta=3");
    let r = hankel_transform(1.0, &f, 1.0, TOL);
    assert!(matches!(r, Err(Error::Divergence(_))), "{r:?}");
}
