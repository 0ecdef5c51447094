//! Hypothesis checks and grid-corroborated positivity certificates for the
//! transform positivity theorems.

mod checks;
mod reduce;

pub use checks::{LIMIT_DOUBLINGS, NONZERO_POINTS, SAMPLES, T_MAX, T_MIN};
pub use reduce::{build_g, reduce_order, Reduction, ReductionSummary, IDENTITY_TOL};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sturm::{classify_oscillation, Criterion, Monotonicity};
use crate::transforms::{transform_eval, KernelSpec, ProfileFunction};

use checks::Outcome;

/// The positivity results a certificate can be issued under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// General kernel, φ strictly increasing, f decreasing.
    M1,
    /// General kernel, φ increasing, f strictly decreasing on its support.
    M3,
    /// Fourier sine transform.
    T,
    /// Fourier cosine transform.
    CT,
    /// Hankel transform, ν > 1/2.
    H1,
    /// Hankel transform, 0 < ν < 1/2.
    H2,
    /// Hankel transform through g, ν > −1 (cases by the sign of ν + 1/2).
    F,
    /// Y-transform, 1/2 < |ν| < 1.
    Y,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::M1,
        TheoremId::M3,
        TheoremId::T,
        TheoremId::CT,
        TheoremId::H1,
        TheoremId::H2,
        TheoremId::F,
        TheoremId::Y,
    ];

    pub fn needs_order(self) -> bool {
        matches!(self, TheoremId::H1 | TheoremId::H2 | TheoremId::F | TheoremId::Y)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown theorem '{s}' (expected M1, M3, T, CT, H1, H2, F or Y)"
                ))
            })
    }
}

/// The branch of theorem F selected by ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FCase {
    /// ν > −1/2: g nonnegative, decreasing, tending to 0.
    I,
    /// ν = −1/2: f strictly decreasing and convex on its support.
    Ii,
    /// ν < −1/2: g nonnegative with t^{−3/2−3ν} g decreasing.
    Iii,
}

impl FCase {
    pub fn for_order(nu: f64) -> FCase {
        if nu > -0.5 {
            FCase::I
        } else if nu == -0.5 {
            FCase::Ii
        } else {
            FCase::Iii
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    VerifiedNumerically,
    Declared,
    Violated,
}

/// One hypothesis with how it was established.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: HypothesisStatus,
    pub evidence: String,
    /// Sample points, values or integrals behind the decision.
    pub data: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: TheoremId,
    pub case: Option<FCase>,
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn any_violated(&self) -> bool {
        self.checks.iter().any(|c| c.status == HypothesisStatus::Violated)
    }

    pub fn violated(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| c.status == HypothesisStatus::Violated)
    }

    pub fn get(&self, name: &str) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Kernel parameters a theorem may need: the order ν, the exponent α of a
/// scaled Bessel kernel, or an explicit kernel for M1/M3.
#[derive(Debug, Clone, Default)]
pub struct Ingredients {
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub kernel: Option<KernelSpec>,
}

impl Ingredients {
    pub fn none() -> Self {
        Ingredients::default()
    }

    pub fn order(nu: f64) -> Self {
        Ingredients {
            nu: Some(nu),
            ..Default::default()
        }
    }

    pub fn scaled(nu: f64, alpha: f64) -> Self {
        Ingredients {
            nu: Some(nu),
            alpha: Some(alpha),
            kernel: None,
        }
    }

    pub fn kernel(kernel: KernelSpec) -> Self {
        Ingredients {
            kernel: Some(kernel),
            ..Default::default()
        }
    }

    fn require_order(&self, theorem: TheoremId) -> Result<f64> {
        match self.nu {
            Some(nu) if nu.is_finite() => Ok(nu),
            Some(nu) => domain(format!("theorem {theorem} needs a finite order, got {nu}")),
            None => domain(format!("theorem {theorem} needs the order nu")),
        }
    }

    /// The kernel whose transform the theorem speaks about.
    pub fn kernel_for(&self, theorem: TheoremId) -> Result<KernelSpec> {
        match theorem {
            TheoremId::M1 | TheoremId::M3 => {
                if let Some(k) = &self.kernel {
                    return Ok(k.clone());
                }
                match (self.nu, self.alpha) {
                    (Some(nu), Some(alpha)) => KernelSpec::scaled_bessel(nu, alpha),
                    (Some(nu), None) => KernelSpec::bessel_sqrt(nu),
                    (None, Some(_)) => domain("alpha given without nu"),
                    (None, None) => Ok(KernelSpec::Sine),
                }
            }
            TheoremId::T => Ok(KernelSpec::Sine),
            TheoremId::CT => Ok(KernelSpec::Cosine),
            TheoremId::H1 | TheoremId::H2 | TheoremId::F => KernelSpec::bessel_sqrt(self.require_order(theorem)?),
            TheoremId::Y => KernelSpec::neumann_sqrt(self.require_order(theorem)?),
        }
    }
}

struct Builder {
    checks: Vec<HypothesisCheck>,
}

impl Builder {
    fn push(&mut self, name: &str, status: HypothesisStatus, evidence: String, data: Vec<f64>) {
        self.checks.push(HypothesisCheck {
            name: name.into(),
            status,
            evidence,
            data,
        });
    }

    fn outcome(&mut self, name: &str, o: Outcome) {
        let status = if o.pass {
            HypothesisStatus::VerifiedNumerically
        } else {
            HypothesisStatus::Violated
        };
        self.push(name, status, o.evidence, o.data);
    }

    /// A property the profile may declare: a declared `false` is a
    /// violation; otherwise the sampled check runs and a contradiction is a
    /// violation; a confirmed declaration keeps status `declared`.
    fn property(&mut self, name: &str, declared: Option<bool>, check: impl FnOnce() -> Outcome) {
        if declared == Some(false) {
            self.push(name, HypothesisStatus::Violated, "declared false".into(), vec![]);
            return;
        }
        let o = check();
        match (o.pass, declared) {
            (false, _) => self.push(name, HypothesisStatus::Violated, o.evidence, o.data),
            (true, Some(true)) => self.push(
                name,
                HypothesisStatus::Declared,
                format!("declared; sampling agrees ({})", o.evidence),
                o.data,
            ),
            (true, _) => self.push(name, HypothesisStatus::VerifiedNumerically, o.evidence, o.data),
        }
    }

    fn range(&mut self, name: &str, ok: bool, detail: String) {
        let status = if ok {
            HypothesisStatus::VerifiedNumerically
        } else {
            HypothesisStatus::Violated
        };
        self.push(name, status, detail, vec![]);
    }
}

fn weighted(f: &ProfileFunction, power: f64) -> impl Fn(f64) -> f64 + '_ {
    move |t| t.powf(power) * f.eval(t)
}

fn add_nonnegative(b: &mut Builder, f: &ProfileFunction) {
    b.property("nonnegative", f.declared.nonnegative, || {
        checks::nonnegative(&|t| f.eval(t), f64::INFINITY)
    });
}

fn add_decreasing(b: &mut Builder, f: &ProfileFunction) {
    b.property("decreasing", f.declared.decreasing, || {
        checks::decreasing(&|t| f.eval(t), f64::INFINITY, false)
    });
}

fn add_strictly_decreasing(b: &mut Builder, f: &ProfileFunction) {
    b.property(
        "strictly_decreasing_on_support",
        f.declared.strictly_decreasing_on_support,
        || checks::decreasing(&|t| f.eval(t), f.support_upper(), true),
    );
}

fn add_convex(b: &mut Builder, f: &ProfileFunction) {
    b.property("convex_on_support", f.declared.convex, || {
        checks::convex(&|t| f.eval(t), f.support_upper())
    });
}

fn add_not_zero(b: &mut Builder, name: &str, f: &ProfileFunction) {
    b.outcome(name, checks::not_identically_zero(&|t| f.eval(t), f.support_upper()));
}

fn add_limit(b: &mut Builder, name: &str, f: &ProfileFunction, declared: Option<bool>) {
    b.property(name, declared, || {
        if f.support_upper().is_finite() {
            return Outcome {
                pass: true,
                evidence: format!("compact support (0, {}]", f.support_upper()),
                data: vec![],
            };
        }
        let (pass, evidence) = checks::tends_to_zero(&|t| f.eval(t));
        Outcome {
            pass,
            evidence,
            data: vec![],
        }
    });
}

fn add_integrable(b: &mut Builder, f: &ProfileFunction, q: f64) {
    b.outcome(
        "integrable_at_origin",
        checks::integrable_near_zero(&|t| f.eval(t), q, f.singular_exponent),
    );
}

/// Smoothness is taken from the profile: it needs a derivative evaluator
/// and must be continuous at its breakpoints and at a finite support end.
fn add_sectionally_smooth(b: &mut Builder, f: &ProfileFunction) {
    if !f.has_derivative() {
        b.push(
            "sectionally_smooth",
            HypothesisStatus::Violated,
            "no derivative evaluator attached".into(),
            vec![],
        );
        return;
    }
    let mut jumps = Vec::new();
    let s = f.support_upper();
    if s.is_finite() {
        let left = f.eval(s);
        if left.abs() > 1e-12 {
            jumps.push((s, left));
        }
    }
    for &p in &f.breakpoints {
        let h = 1e-9 * p.max(1.0);
        let jump = f.eval(p + h) - f.eval(p - h);
        if jump.abs() > 1e-6 * f.eval(p).abs().max(1e-300) && jump.abs() > 1e-12 {
            jumps.push((p, jump));
        }
    }
    if let Some(&(p, j)) = jumps.first() {
        b.push(
            "sectionally_smooth",
            HypothesisStatus::Violated,
            format!("profile jumps by {j:e} at t = {p}"),
            vec![p, j],
        );
    } else {
        b.push(
            "sectionally_smooth",
            HypothesisStatus::Declared,
            format!("derivative evaluator with {} declared breakpoints", f.breakpoints.len()),
            f.breakpoints.clone(),
        );
    }
}

fn add_kernel_checks(b: &mut Builder, kernel: &KernelSpec, strict: bool) {
    let vanishes = kernel.supports_arch_decomposition() && kernel.leading_exponent() > 0.0;
    b.range(
        "kernel_vanishes_at_origin",
        vanishes,
        format!("{} ~ t^{} at 0+", kernel.label(), kernel.leading_exponent()),
    );
    let phi = kernel.phi();
    let name = if strict {
        "phi_strictly_increasing"
    } else {
        "phi_increasing"
    };
    let declared_ok = if strict {
        phi.monotonicity == Monotonicity::StrictlyIncreasing
    } else {
        phi.monotonicity.is_increasing()
    };
    if declared_ok {
        match phi.spot_check_monotonicity(T_MIN, T_MAX) {
            Ok(()) => b.push(
                name,
                HypothesisStatus::Declared,
                format!("phi declared {:?}", phi.monotonicity),
                vec![],
            ),
            Err(e) => b.push(name, HypothesisStatus::Violated, e.to_string(), vec![]),
        }
    } else if phi.monotonicity == Monotonicity::None {
        let o = checks::decreasing(&|t| -phi.eval(t), f64::INFINITY, strict);
        b.outcome(name, o);
    } else {
        b.push(
            name,
            HypothesisStatus::Violated,
            format!("phi declared {:?}", phi.monotonicity),
            vec![],
        );
    }
    let c = classify_oscillation(&phi);
    let osc = [c.a1, c.a2, c.a3].contains(&Criterion::Holds);
    let status = match (osc, c.from_declared_asymptotics) {
        (false, _) => HypothesisStatus::Violated,
        (true, true) => HypothesisStatus::Declared,
        (true, false) => HypothesisStatus::VerifiedNumerically,
    };
    b.push(
        "oscillatory_at_infinity",
        status,
        format!("a1 = {:?}, a2 = {:?}, a3 = {:?}", c.a1, c.a2, c.a3),
        vec![],
    );
}

fn add_g_checks(b: &mut Builder, nu_g: f64, f: &ProfileFunction, case_i: bool, weight: f64) {
    let g = match build_g(nu_g, f) {
        Ok(g) => g,
        Err(e) => {
            b.push("g_nonnegative", HypothesisStatus::Violated, e.to_string(), vec![]);
            return;
        }
    };
    b.outcome("g_nonnegative", checks::nonnegative(&|t| g.eval(t), f64::INFINITY));
    add_not_zero(b, "g_not_identically_zero", &g);
    if case_i {
        b.outcome("g_decreasing", checks::decreasing(&|t| g.eval(t), f64::INFINITY, false));
        add_limit(b, "g_tends_to_zero", &g, None);
    } else {
        let name = format!("t^{weight} g decreasing");
        b.outcome(&name, checks::decreasing(&weighted(&g, weight), f64::INFINITY, false));
    }
}

/// Runs the hypothesis list of `theorem` on f.
pub fn check_hypotheses(theorem: TheoremId, ing: &Ingredients, f: &ProfileFunction) -> Result<HypothesisReport> {
    let nu = if theorem.needs_order() {
        Some(ing.require_order(theorem)?)
    } else {
        None
    };
    let mut b = Builder { checks: Vec::new() };
    let mut case = None;
    match theorem {
        TheoremId::M1 | TheoremId::M3 => {
            let kernel = ing.kernel_for(theorem)?;
            let strict = theorem == TheoremId::M1;
            add_kernel_checks(&mut b, &kernel, strict);
            add_nonnegative(&mut b, f);
            if strict {
                add_decreasing(&mut b, f);
                add_not_zero(&mut b, "not_identically_zero", f);
            } else {
                add_strictly_decreasing(&mut b, f);
            }
            add_integrable(&mut b, f, kernel.leading_exponent());
            b.push(
                "arch_terms_vanish",
                HypothesisStatus::Declared,
                "monitored during evaluation; terms that fail to decay abort the certificate".into(),
                vec![],
            );
        }
        TheoremId::T => {
            add_nonnegative(&mut b, f);
            add_strictly_decreasing(&mut b, f);
            add_integrable(&mut b, f, 1.0);
            add_limit(&mut b, "tends_to_zero", f, f.declared.limit_zero_at_infinity);
        }
        TheoremId::CT => {
            add_nonnegative(&mut b, f);
            add_sectionally_smooth(&mut b, f);
            add_strictly_decreasing(&mut b, f);
            add_convex(&mut b, f);
            add_integrable(&mut b, f, 0.0);
            add_limit(&mut b, "tends_to_zero", f, f.declared.limit_zero_at_infinity);
        }
        TheoremId::H1 | TheoremId::H2 => {
            let nu = nu.unwrap();
            if theorem == TheoremId::H1 {
                b.range("order_range", nu > 0.5, format!("nu = {nu} must exceed 1/2"));
            } else {
                b.range(
                    "order_range",
                    nu > 0.0 && nu < 0.5,
                    format!("nu = {nu} must lie in (0, 1/2)"),
                );
            }
            add_nonnegative(&mut b, f);
            add_not_zero(&mut b, "not_identically_zero", f);
            if theorem == TheoremId::H1 {
                add_decreasing(&mut b, f);
                add_limit(&mut b, "tends_to_zero", f, f.declared.limit_zero_at_infinity);
            } else {
                let w = 1.5 - 3.0 * nu;
                let name = format!("t^{w} f decreasing");
                b.outcome(&name, checks::decreasing(&weighted(f, w), f64::INFINITY, false));
            }
            add_integrable(&mut b, f, nu + 0.5);
        }
        TheoremId::F => {
            let nu = nu.unwrap();
            let c = FCase::for_order(nu);
            case = Some(c);
            b.range("order_range", nu > -1.0, format!("nu = {nu} must exceed -1"));
            add_nonnegative(&mut b, f);
            add_decreasing(&mut b, f);
            add_sectionally_smooth(&mut b, f);
            add_integrable(&mut b, f, nu + 0.5);
            add_limit(&mut b, "tends_to_zero", f, f.declared.limit_zero_at_infinity);
            add_not_zero(&mut b, "not_identically_zero", f);
            match c {
                FCase::I => add_g_checks(&mut b, nu, f, true, 0.0),
                FCase::Ii => {
                    add_strictly_decreasing(&mut b, f);
                    add_convex(&mut b, f);
                }
                FCase::Iii => add_g_checks(&mut b, nu, f, false, -1.5 - 3.0 * nu),
            }
        }
        TheoremId::Y => {
            let nu = nu.unwrap();
            let m = nu.abs();
            b.range(
                "order_range",
                m > 0.5 && m < 1.0,
                format!("|nu| = {m} must lie in (1/2, 1)"),
            );
            add_nonnegative(&mut b, f);
            add_decreasing(&mut b, f);
            add_not_zero(&mut b, "not_identically_zero", f);
            add_sectionally_smooth(&mut b, f);
            add_integrable(&mut b, f, 0.5 - m);
            add_limit(&mut b, "tends_to_zero", f, f.declared.limit_zero_at_infinity);
            add_g_checks(&mut b, -m, f, false, -1.5 + 3.0 * m);
        }
    }
    Ok(HypothesisReport {
        theorem,
        case,
        checks: b.checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedPositive,
    CertifiedNegative,
    NotCertified,
    /// Hypotheses hold but the grid shows the opposite sign beyond the error
    /// bound: a contradiction of the theorem, treated as a hard failure.
    HypothesisHoldsButNumericViolation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::CertifiedPositive => "certified_positive",
            Verdict::CertifiedNegative => "certified_negative",
            Verdict::NotCertified => "not_certified",
            Verdict::HypothesisHoldsButNumericViolation => "hypothesis_holds_but_numeric_violation",
        };
        f.write_str(s)
    }
}

/// Hypothesis checks paired with transform values on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub theorem: TheoremId,
    pub case: Option<FCase>,
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub kernel: String,
    pub profile: String,
    pub hypotheses: HypothesisReport,
    pub grid: Vec<f64>,
    /// Transform values; `None` where evaluation failed or was skipped.
    pub values: Vec<Option<f64>>,
    pub tail_bounds: Vec<Option<f64>>,
    pub min_value: Option<f64>,
    /// +1 when the theorem asserts positivity, −1 for negativity.
    pub expected_sign: i8,
    pub verdict: Verdict,
    pub cause: Option<String>,
}

/// The sign a theorem asserts: negative only for the Y-transform with ν > 0.
pub fn expected_sign(theorem: TheoremId, nu: Option<f64>) -> i8 {
    match (theorem, nu) {
        (TheoremId::Y, Some(nu)) if nu > 0.0 => -1,
        _ => 1,
    }
}

/// Checks the hypotheses of `theorem` and, when none is violated,
/// evaluates the transform at every grid point. A point supports the
/// theorem when sign·value > tail_bound and contradicts it when
/// sign·value < −tail_bound.
pub fn certify(
    theorem: TheoremId,
    ing: &Ingredients,
    f: &ProfileFunction,
    grid: &[f64],
    tol: f64,
) -> Result<PositivityCertificate> {
    if grid.is_empty() {
        return domain("certification grid is empty");
    }
    if let Some(&x) = grid.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return domain(format!("grid points must be finite and positive, got {x}"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let hypotheses = check_hypotheses(theorem, ing, f)?;
    let sign = expected_sign(theorem, ing.nu);
    let mut cert = PositivityCertificate {
        theorem,
        case: hypotheses.case,
        nu: ing.nu,
        alpha: ing.alpha,
        kernel: String::new(),
        profile: f.label.clone(),
        hypotheses,
        grid: grid.to_vec(),
        values: vec![None; grid.len()],
        tail_bounds: vec![None; grid.len()],
        min_value: None,
        expected_sign: sign,
        verdict: Verdict::NotCertified,
        cause: None,
    };
    if cert.hypotheses.any_violated() {
        let names: Vec<&str> = cert.hypotheses.violated().map(|c| c.name.as_str()).collect();
        cert.cause = Some(format!("hypotheses violated: {}", names.join(", ")));
        if let Ok(k) = ing.kernel_for(theorem) {
            cert.kernel = k.label();
        }
        return Ok(cert);
    }
    let kernel = ing.kernel_for(theorem)?;
    cert.kernel = kernel.label();

    let results: Vec<Result<(f64, f64)>> = grid
        .par_iter()
        .map(|&x| transform_eval(&kernel, f, x, tol).map(|r| (r.value, r.tail_bound)))
        .collect();

    let mut contradiction = None;
    let mut failure = None;
    let mut inconclusive = None;
    for (i, r) in results.into_iter().enumerate() {
        let x = grid[i];
        match r {
            Ok((v, bound)) => {
                cert.values[i] = Some(v);
                cert.tail_bounds[i] = Some(bound);
                let s = f64::from(sign) * v;
                if s < -bound {
                    contradiction.get_or_insert(format!("value {v:e} at x = {x} has the wrong sign (bound {bound:e})"));
                } else if !(s > bound) {
                    inconclusive.get_or_insert(format!(
                        "|value| {:e} at x = {x} does not exceed its bound {bound:e}",
                        v.abs()
                    ));
                }
            }
            Err(e) => {
                failure.get_or_insert(format!("transform failed at x = {x}: {e}"));
            }
        }
    }
    cert.min_value = cert.values.iter().flatten().copied().reduce(f64::min);
    (cert.verdict, cert.cause) = if let Some(c) = contradiction {
        (Verdict::HypothesisHoldsButNumericViolation, Some(c))
    } else if let Some(c) = failure.or(inconclusive) {
        (Verdict::NotCertified, Some(c))
    } else if sign > 0 {
        (Verdict::CertifiedPositive, None)
    } else {
        (Verdict::CertifiedNegative, None)
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FunctionCatalogEntry;

    fn entry(family: &str, params: &str) -> ProfileFunction {
        FunctionCatalogEntry::parse(family, params).unwrap().profile()
    }

    #[test]
    fn sine_rational_passes() {
        let f = entry("rational", "gamma=1,delta=1,a=1");
        let r = check_hypotheses(TheoremId::T, &Ingredients::none(), &f).unwrap();
        assert!(!r.any_violated(), "{r:?}");
    }

    #[test]
    fn h1_with_strong_singularity_fails_integrability() {
        let f = entry("power", "beta=3");
        let r = check_hypotheses(TheoremId::H1, &Ingredients::order(1.0), &f).unwrap();
        assert_eq!(
            r.get("integrable_at_origin").unwrap().status,
            HypothesisStatus::Violated
        );
    }

    #[test]
    fn cosine_of_exponential_passes() {
        let f = entry("exp_decay", "b=1");
        let r = check_hypotheses(TheoremId::CT, &Ingredients::none(), &f).unwrap();
        assert!(!r.any_violated(), "{r:?}");
    }

    #[test]
    fn order_is_required() {
        let f = entry("exp_decay", "b=1");
        assert!(check_hypotheses(TheoremId::H1, &Ingredients::none(), &f).is_err());
    }

    #[test]
    fn h1_certificate() {
        let f = entry("rational", "gamma=0,delta=1,a=1");
        let c = certify(
            TheoremId::H1,
            &Ingredients::order(1.0),
            &f,
            &[0.5, 1.0, 2.0, 5.0],
            1e-10,
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedPositive, "{c:?}");
        assert!(c.min_value.unwrap() > 0.0);
    }

    #[test]
    fn f_case_iii_power() {
        let f = entry("power", "beta=0.5");
        let c = certify(TheoremId::F, &Ingredients::order(-0.75), &f, &[1.0], 1e-10).unwrap();
        assert_eq!(c.case, Some(FCase::Iii));
        assert_eq!(c.verdict, Verdict::CertifiedPositive, "{c:?}");
    }

    #[test]
    fn y_signs() {
        let f = entry("exp_decay", "b=1,beta=0.5");
        let neg = certify(TheoremId::Y, &Ingredients::order(0.75), &f, &[0.5, 1.0, 2.0], 1e-10).unwrap();
        assert_eq!(neg.verdict, Verdict::CertifiedNegative, "{neg:?}");
        let pos = certify(TheoremId::Y, &Ingredients::order(-0.75), &f, &[0.5, 1.0, 2.0], 1e-10).unwrap();
        assert_eq!(pos.verdict, Verdict::CertifiedPositive, "{pos:?}");
    }

    #[test]
    fn y_rejects_quarter_power_exponential() {
        let f = entry("exp_decay", "b=1,beta=0.25");
        let c = certify(TheoremId::Y, &Ingredients::order(0.75), &f, &[1.0], 1e-10).unwrap();
        assert_eq!(c.verdict, Verdict::NotCertified);
        assert_eq!(
            c.hypotheses.get("t^0.75 g decreasing").unwrap().status,
            HypothesisStatus::Violated
        );
    }

    #[test]
    fn zero_profile_is_not_certified() {
        let c = certify(
            TheoremId::H1,
            &Ingredients::order(1.0),
            &ProfileFunction::zero(),
            &[1.0],
            1e-10,
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::NotCertified);
    }

    #[test]
    fn non_monotone_control_is_flagged() {
        let f = entry("abs_sin_exp", "b=1");
        let r = check_hypotheses(TheoremId::H1, &Ingredients::order(1.0), &f).unwrap();
        assert_eq!(r.get("decreasing").unwrap().status, HypothesisStatus::Violated);
    }

    #[test]
    fn certificate_round_trips_through_json() {
        let f = entry("exp_decay", "b=1");
        let c = certify(TheoremId::T, &Ingredients::none(), &f, &[1.0], 1e-10).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"verdict\":\"certified_positive\""));
        let back: PositivityCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("ct".parse::<TheoremId>().unwrap(), TheoremId::CT);
        assert!("Z".parse::<TheoremId>().is_err());
    }
}
