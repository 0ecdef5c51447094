mod common;

use common::{certification_catalog as catalog, ingredient_sets, profile};
use osc_core::positivity::*;
use osc_core::transforms::{hankel_transform, ProfileFunction};
use osc_core::validation::hankel_power;

const GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const TOL: f64 = 1e-10;

#[test]
fn no_certificate_contradicts_its_theorem() {
    let mut certified = 0;
    for f in catalog() {
        for (th, ing) in ingredient_sets() {
            let c = certify(th, &ing, &f, &GRID, TOL).unwrap();
            assert_ne!(
                c.verdict,
                Verdict::HypothesisHoldsButNumericViolation,
                "{th} {} {:?}: {:?}",
                f.label,
                ing.nu,
                c.cause
            );
            if matches!(c.verdict, Verdict::CertifiedPositive | Verdict::CertifiedNegative) {
                certified += 1;
                for v in c.values.iter().flatten() {
                    assert_eq!(v.signum() as i8, c.expected_sign);
                }
            }
        }
    }
    assert!(certified >= 40, "only {certified} certificates issued");
}

#[test]
fn y_certificates_follow_the_order_split() {
    let f = profile("exp_decay", "b=1,beta=0.5");
    let c = certify(TheoremId::Y, &Ingredients::order(0.75), &f, &GRID, TOL).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedNegative, "{:?}", c.cause);
    let c = certify(TheoremId::Y, &Ingredients::order(-0.75), &f, &GRID, TOL).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedPositive, "{:?}", c.cause);
}

#[test]
fn power_law_closed_form_is_positive_and_matches() {
    let pairs = [(0.5, 1.0), (1.0, 0.5), (1.0, 2.0), (2.0, 3.0), (-0.5, 0.5), (0.0, 1.4)];
    let boundary = [(0.5, 2.0 - 1e-3), (1.0, 2.5 - 1e-3)];
    for (nu, beta) in pairs.into_iter().chain(boundary) {
        let f = profile("power", &format!("beta={beta}"));
        for x in [0.5, 1.0, 2.0] {
            let want = hankel_power(nu, beta, x).unwrap();
            assert!(want > 0.0);
            let got = hankel_transform(nu, &f, x, 1e-11).unwrap();
            assert!(
                (got - want).abs() <= 1e-8 * want,
                "nu={nu} beta={beta} x={x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn reduction_on_power_law_matches_closed_form() {
    let (nu, beta) = (0.5, 1.0);
    let f = profile("power", &format!("beta={beta}"));
    let r = reduce_order(nu, &f).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let got = hankel_transform(r.order, &r.g, x, 1e-11).unwrap() / x;
        let want = hankel_power(nu, beta, x).unwrap();
        assert!((got - want).abs() <= 1e-8 * want, "x={x}: {got} vs {want}");
    }
}

#[test]
fn f_at_minus_half_agrees_with_cosine_theorem() {
    for f in catalog() {
        let a = certify(TheoremId::F, &Ingredients::order(-0.5), &f, &GRID, TOL).unwrap();
        let b = certify(TheoremId::CT, &Ingredients::none(), &f, &GRID, TOL).unwrap();
        assert_eq!(a.verdict, b.verdict, "{}", f.label);
    }
}

#[test]
fn monotone_detector_has_no_false_negatives() {
    for (fam, params) in [
        ("exp_decay", "b=1"),
        ("exp_decay", "b=3,beta=1"),
        ("power", "beta=0.1"),
        ("power", "beta=2.5"),
        ("rational", "gamma=1,delta=2,a=0.5"),
        ("shifted_power", "a=0.2,lambda=3"),
        ("power_shifted", "beta=0.5,a=1,lambda=1"),
    ] {
        // Stripped of declarations so the sampled check alone decides.
        let f = profile(fam, params);
        let e = f.evaluator();
        let bare = ProfileFunction::new(f.label.clone(), move |t| e(t));
        let r = check_hypotheses(TheoremId::H1, &Ingredients::order(1.0), &bare).unwrap();
        assert_eq!(
            r.get("decreasing").unwrap().status,
            HypothesisStatus::VerifiedNumerically,
            "{}",
            f.label
        );
    }
    let f = profile("abs_sin_exp", "b=1");
    let e = f.evaluator();
    let bare = ProfileFunction::new(f.label.clone(), move |t| e(t));
    let r = check_hypotheses(TheoremId::H1, &Ingredients::order(1.0), &bare).unwrap();
    assert_eq!(r.get("decreasing").unwrap().status, HypothesisStatus::Violated);
}
