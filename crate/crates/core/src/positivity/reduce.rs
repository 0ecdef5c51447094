use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::graded_toward_zero;
use crate::transforms::ProfileFunction;

use super::checks::tends_to_zero;

/// g(t) = (ν+½)f(t)/t − f′(t) = −t^{ν+½} d/dt[t^{−ν−½} f(t)].
///
/// The derivative of g is attached when f″ is available. Declarations are
/// left empty apart from the support, so every property of g gets checked.
pub fn build_g(nu: f64, f: &ProfileFunction) -> Result<ProfileFunction> {
    let d = f
        .derivative_fn()
        .ok_or_else(|| Error::Capability(format!("profile {} has no derivative evaluator; g needs f'", f.label)))?;
    let c = nu + 0.5;
    let fe = f.evaluator();
    let support = f.support_upper();
    let (fe2, d2) = (fe.clone(), d.clone());
    let mut g = ProfileFunction::new(format!("g[nu={nu}]({})", f.label), move |t| c * fe(t) / t - d(t))
        .with_singular_exponent(f.singular_exponent + 1.0)
        .with_breakpoints(f.breakpoints.clone());
    if let Some(dd) = f.second_derivative_fn() {
        g = g.with_derivative(move |t| c * (d2(t) / t - fe2(t) / (t * t)) - dd(t));
    }
    g.declared.support_upper = support;
    Ok(g)
}

/// The order-raised pair (ν + 1, g) with the two sides of
/// ∫₀¹ t^{ν+3/2} g dt = −f(1) + (2ν+2) ∫₀¹ t^{ν+1/2} f dt.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub order: f64,
    pub g: ProfileFunction,
    pub identity_lhs: f64,
    pub identity_rhs: f64,
}

/// Agreement demanded between the two sides of the moment identity.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Raises the Hankel order by one: H_ν f = (1/x) H_{ν+1} g.
///
/// Requires t^{ν+3/2} f → 0 at 0+ (read off the singular exponent) and
/// f → 0 at infinity (declared, compact support, or sampled). The moment
/// identity is evaluated on both sides; a mismatch above 1e-8 means f′ does
/// not belong to f, or f jumps, and is reported as a precondition error.
pub fn reduce_order(nu: f64, f: &ProfileFunction) -> Result<Reduction> {
    let sigma = f.singular_exponent;
    if nu + 1.5 - sigma <= 0.0 {
        return Err(Error::Precondition(format!(
            "t^(nu+3/2) f(t) does not vanish at 0+ (nu = {nu}, singular exponent {sigma})"
        )));
    }
    let limit_ok = f.declared.limit_zero_at_infinity == Some(true)
        || f.support_upper().is_finite()
        || (f.declared.limit_zero_at_infinity.is_none() && tends_to_zero(&|t| f.eval(t)).0);
    if !limit_ok {
        return Err(Error::Precondition(format!(
            "profile {} does not tend to 0 at infinity",
            f.label
        )));
    }
    let g = build_g(nu, f)?;
    let lhs_integrand = |t: f64| t.powf(nu + 1.5) * g.eval(t);
    let rhs_integrand = |t: f64| t.powf(nu + 0.5) * f.eval(t);
    let lhs = graded_toward_zero(&lhs_integrand, 1.0, nu + 0.5 - sigma, 1e-13, 1e-12)?;
    let moment = graded_toward_zero(&rhs_integrand, 1.0, nu + 0.5 - sigma, 1e-13, 1e-12)?;
    let rhs = -f.eval(1.0) + (2.0 * nu + 2.0) * moment;
    if !((lhs - rhs).abs() <= IDENTITY_TOL * rhs.abs().max(1.0)) {
        return Err(Error::Precondition(format!(
            "moment identity fails for {}: {lhs} vs {rhs}",
            f.label
        )));
    }
    Ok(Reduction {
        order: nu + 1.0,
        g,
        identity_lhs: lhs,
        identity_rhs: rhs,
    })
}

/// Serializable summary of a reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub order: f64,
    pub identity_lhs: f64,
    pub identity_rhs: f64,
}

impl From<&Reduction> for ReductionSummary {
    fn from(r: &Reduction) -> Self {
        ReductionSummary {
            order: r.order,
            identity_lhs: r.identity_lhs,
            identity_rhs: r.identity_rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FunctionCatalogEntry;

    #[test]
    fn g_of_exponential() {
        let f = FunctionCatalogEntry::parse("exp_decay", "b=1").unwrap().profile();
        let g = build_g(0.0, &f).unwrap();
        for t in [0.1f64, 1.0, 3.0] {
            let want = (-t).exp() * (0.5 / t + 1.0);
            assert!((g.eval(t) - want).abs() < 1e-14 * want);
        }
        let g = build_g(
            -0.75,
            &FunctionCatalogEntry::parse("exp_decay", "b=2").unwrap().profile(),
        )
        .unwrap();
        let t: f64 = 0.5;
        let want = (-2.0 * t).exp() * (-0.25 / t + 2.0);
        assert!((g.eval(t) - want).abs() < 1e-14);
    }

    #[test]
    fn g_of_power() {
        let (nu, beta) = (0.3, 0.7);
        let f = FunctionCatalogEntry::parse("power", &format!("beta={beta}"))
            .unwrap()
            .profile();
        let g = build_g(nu, &f).unwrap();
        for t in [0.2f64, 1.0, 5.0] {
            let want = (nu + beta + 0.5) * t.powf(-beta - 1.0);
            assert!((g.eval(t) - want).abs() < 1e-13 * want);
        }
        // g′ from the composed formula against a central difference.
        let h = 1e-6;
        let fd = (g.eval(1.0 + h) - g.eval(1.0 - h)) / (2.0 * h);
        assert!((g.derivative(1.0).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn missing_derivative_is_a_capability_error() {
        let f = ProfileFunction::new("bare", |t: f64| (-t).exp());
        assert!(matches!(build_g(0.0, &f), Err(Error::Capability(_))));
    }

    #[test]
    fn moment_identity_for_exponential() {
        let f = FunctionCatalogEntry::parse("exp_decay", "b=1").unwrap().profile();
        let r = reduce_order(0.0, &f).unwrap();
        assert_eq!(r.order, 1.0);
        assert!((r.identity_lhs - r.identity_rhs).abs() < 1e-10);
    }

    #[test]
    fn zero_reduces_to_zero() {
        let r = reduce_order(0.5, &ProfileFunction::zero()).unwrap();
        assert_eq!(r.g.eval(0.7), 0.0);
        assert_eq!(r.identity_lhs, 0.0);
    }

    #[test]
    fn jump_breaks_the_identity() {
        let f = FunctionCatalogEntry::parse("indicator", "c=0.5").unwrap().profile();
        assert!(matches!(reduce_order(0.0, &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn boundary_condition_at_origin() {
        let f = FunctionCatalogEntry::parse("power", "beta=1.6").unwrap().profile();
        assert!(matches!(reduce_order(0.0, &f), Err(Error::Precondition(_))));
    }
}
