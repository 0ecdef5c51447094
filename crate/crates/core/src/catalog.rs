//! Built-in parametric profile families with analytically derived
//! declarations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::transforms::{Declarations, ProfileFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// t^{−β} e^{−bt}
    ExpDecay,
    /// t^{−β}
    Power,
    /// t^{−γ} (t² + a²)^{−δ}
    Rational,
    /// (t + a)^{−λ}
    ShiftedPower,
    /// t^{−β} (t + a)^{−λ}
    PowerShifted,
    /// |sin t| e^{−bt}; a non-monotone control
    AbsSinExp,
    /// 1 on (0, c], 0 after
    Indicator,
    /// f ≡ 0
    Zero,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::ExpDecay,
        Family::Power,
        Family::Rational,
        Family::ShiftedPower,
        Family::PowerShifted,
        Family::AbsSinExp,
        Family::Indicator,
        Family::Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExpDecay => "exp_decay",
            Family::Power => "power",
            Family::Rational => "rational",
            Family::ShiftedPower => "shifted_power",
            Family::PowerShifted => "power_shifted",
            Family::AbsSinExp => "abs_sin_exp",
            Family::Indicator => "indicator",
            Family::Zero => "zero",
        }
    }

    /// Parameter names with defaults (`None` = required).
    pub fn parameters(self) -> &'static [(&'static str, Option<f64>)] {
        match self {
            Family::ExpDecay => &[("b", Some(1.0)), ("beta", Some(0.0))],
            Family::Power => &[("beta", None)],
            Family::Rational => &[("gamma", None), ("delta", None), ("a", Some(1.0))],
            Family::ShiftedPower => &[("a", Some(1.0)), ("lambda", None)],
            Family::PowerShifted => &[("beta", None), ("a", Some(1.0)), ("lambda", None)],
            Family::AbsSinExp => &[("b", Some(1.0))],
            Family::Indicator => &[("c", None)],
            Family::Zero => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.iter().copied().find(|f| f.name() == s).ok_or_else(|| {
            Error::Domain(format!(
                "unknown function family '{s}' (expected one of: {})",
                Family::ALL.map(|f| f.name()).join(", ")
            ))
        })
    }
}

/// A family with concrete parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionCatalogEntry {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
}

impl FunctionCatalogEntry {
    /// Builds an entry from `name=value` pairs; missing parameters take
    /// their defaults, unknown names are rejected.
    pub fn new(family: Family, given: &[(&str, f64)]) -> Result<Self> {
        let mut params = BTreeMap::new();
        for (name, v) in given {
            if !family.parameters().iter().any(|(n, _)| n == name) {
                return domain(format!("family {family} has no parameter '{name}'"));
            }
            if !v.is_finite() {
                return domain(format!("parameter {name} must be finite"));
            }
            params.insert(name.to_string(), *v);
        }
        for (name, default) in family.parameters() {
            if !params.contains_key(*name) {
                match default {
                    Some(d) => {
                        params.insert(name.to_string(), *d);
                    }
                    None => return domain(format!("family {family} needs parameter '{name}'")),
                }
            }
        }
        let entry = FunctionCatalogEntry { family, params };
        entry.validate()?;
        Ok(entry)
    }

    /// Parses `"b=1,beta=0.5"` (empty string for none).
    pub fn parse(family: &str, params: &str) -> Result<Self> {
        let family: Family = family.parse()?;
        let mut given = Vec::new();
        let owned: Vec<(String, f64)> = params
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|kv| {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Domain(format!("parameter '{kv}' is not name=value")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("parameter '{kv}' has a non-numeric value")))?;
                Ok((k.trim().to_string(), v))
            })
            .collect::<Result<_>>()?;
        for (k, v) in &owned {
            given.push((k.as_str(), *v));
        }
        FunctionCatalogEntry::new(family, &given)
    }

    pub fn get(&self, name: &str) -> f64 {
        self.params[name]
    }

    fn validate(&self) -> Result<()> {
        let p = |n: &str| self.params[n];
        let bad = |msg: String| domain(format!("{}: {msg}", self.family));
        match self.family {
            Family::ExpDecay | Family::AbsSinExp => {
                if !(p("b") > 0.0) {
                    return bad(format!("b must be > 0, got {}", p("b")));
                }
                if self.family == Family::ExpDecay && !(p("beta") >= 0.0 && p("beta") < 2.0) {
                    return bad(format!("beta must lie in [0, 2), got {}", p("beta")));
                }
            }
            Family::Power => {
                if !(p("beta") > 0.0) {
                    return bad(format!("beta must be > 0, got {}", p("beta")));
                }
            }
            Family::Rational => {
                if !(p("gamma") >= 0.0 && p("delta") >= 0.0 && p("a") > 0.0) {
                    return bad("needs gamma >= 0, delta >= 0, a > 0".into());
                }
                if p("gamma") + p("delta") == 0.0 {
                    return bad("gamma and delta cannot both vanish".into());
                }
            }
            Family::ShiftedPower => {
                if !(p("a") > 0.0 && p("lambda") > 0.0) {
                    return bad("needs a > 0 and lambda > 0".into());
                }
            }
            Family::PowerShifted => {
                if !(p("beta") >= 0.0 && p("a") > 0.0 && p("lambda") > 0.0) {
                    return bad("needs beta >= 0, a > 0, lambda > 0".into());
                }
            }
            Family::Indicator => {
                if !(p("c") > 0.0) {
                    return bad(format!("c must be > 0, got {}", p("c")));
                }
            }
            Family::Zero => {}
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.family.name().to_string();
        }
        let inner: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}{{{}}}", self.family, inner.join(","))
    }

    /// The profile with derivative evaluators and declarations.
    pub fn profile(&self) -> ProfileFunction {
        let label = self.label();
        let full = |nonneg, dec, strict, convex| Declarations {
            nonnegative: Some(nonneg),
            decreasing: Some(dec),
            strictly_decreasing_on_support: Some(strict),
            convex,
            support_upper: f64::INFINITY,
            limit_zero_at_infinity: Some(true),
        };
        match self.family {
            Family::ExpDecay => {
                let (b, beta) = (self.get("b"), self.get("beta"));
                let f = move |t: f64| t.powf(-beta) * (-b * t).exp();
                ProfileFunction::new(label, f)
                    .with_derivative(move |t| -f(t) * (beta / t + b))
                    .with_second_derivative(move |t| f(t) * ((beta / t + b).powi(2) + beta / (t * t)))
                    .with_singular_exponent(beta)
                    .with_declarations(full(true, true, true, Some(true)))
            }
            Family::Power => {
                let beta = self.get("beta");
                ProfileFunction::new(label, move |t: f64| t.powf(-beta))
                    .with_derivative(move |t| -beta * t.powf(-beta - 1.0))
                    .with_second_derivative(move |t| beta * (beta + 1.0) * t.powf(-beta - 2.0))
                    .with_singular_exponent(beta)
                    .with_declarations(full(true, true, true, Some(true)))
            }
            Family::Rational => {
                let (g, d, a) = (self.get("gamma"), self.get("delta"), self.get("a"));
                let a2 = a * a;
                let f = move |t: f64| t.powf(-g) * (t * t + a2).powf(-d);
                let l = move |t: f64| g / t + 2.0 * d * t / (t * t + a2);
                let dl = move |t: f64| -g / (t * t) + 2.0 * d * (a2 - t * t) / (t * t + a2).powi(2);
                // Convex whenever δ = 0; otherwise left to sampling.
                let convex = if d == 0.0 { Some(true) } else { None };
                ProfileFunction::new(label, f)
                    .with_derivative(move |t| -f(t) * l(t))
                    .with_second_derivative(move |t| f(t) * (l(t).powi(2) - dl(t)))
                    .with_singular_exponent(g)
                    .with_declarations(full(true, true, true, convex))
            }
            Family::ShiftedPower => {
                let (a, lam) = (self.get("a"), self.get("lambda"));
                ProfileFunction::new(label, move |t: f64| (t + a).powf(-lam))
                    .with_derivative(move |t| -lam * (t + a).powf(-lam - 1.0))
                    .with_second_derivative(move |t| lam * (lam + 1.0) * (t + a).powf(-lam - 2.0))
                    .with_declarations(full(true, true, true, Some(true)))
            }
            Family::PowerShifted => {
                let (beta, a, lam) = (self.get("beta"), self.get("a"), self.get("lambda"));
                let f = move |t: f64| t.powf(-beta) * (t + a).powf(-lam);
                let l = move |t: f64| beta / t + lam / (t + a);
                let dl = move |t: f64| -beta / (t * t) - lam / (t + a).powi(2);
                ProfileFunction::new(label, f)
                    .with_derivative(move |t| -f(t) * l(t))
                    .with_second_derivative(move |t| f(t) * (l(t).powi(2) - dl(t)))
                    .with_singular_exponent(beta)
                    .with_declarations(full(true, true, true, Some(true)))
            }
            Family::AbsSinExp => {
                let b = self.get("b");
                let f = move |t: f64| t.sin().abs() * (-b * t).exp();
                let breaks: Vec<f64> = (1..=64).map(|k| k as f64 * std::f64::consts::PI).collect();
                ProfileFunction::new(label, f)
                    .with_derivative(move |t| {
                        let s = t.sin().signum();
                        (-b * t).exp() * s * (t.cos() - b * t.sin())
                    })
                    .with_singular_exponent(-1.0)
                    .with_breakpoints(breaks)
                    .with_declarations(Declarations {
                        nonnegative: Some(true),
                        limit_zero_at_infinity: Some(true),
                        ..Declarations::default()
                    })
            }
            Family::Indicator => {
                let c = self.get("c");
                ProfileFunction::new(label, |_| 1.0)
                    .with_derivative(|_| 0.0)
                    .with_second_derivative(|_| 0.0)
                    .with_declarations(Declarations {
                        nonnegative: Some(true),
                        decreasing: Some(true),
                        strictly_decreasing_on_support: Some(false),
                        convex: Some(true),
                        support_upper: c,
                        limit_zero_at_infinity: Some(true),
                    })
            }
            Family::Zero => {
                let mut z = ProfileFunction::zero();
                z.label = label;
                z
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let e = FunctionCatalogEntry::parse("exp_decay", "b=2").unwrap();
        assert_eq!(e.get("beta"), 0.0);
        assert_eq!(e.label(), "exp_decay{b=2,beta=0}");
        assert!(FunctionCatalogEntry::parse("power", "").is_err());
        assert!(FunctionCatalogEntry::parse("power", "beta=0").is_err());
        assert!(FunctionCatalogEntry::parse("power", "b=1,beta=1").is_err());
        assert!(FunctionCatalogEntry::parse("nope", "").is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let entries = [
            FunctionCatalogEntry::parse("exp_decay", "b=1.5,beta=0.3").unwrap(),
            FunctionCatalogEntry::parse("power", "beta=0.7").unwrap(),
            FunctionCatalogEntry::parse("rational", "gamma=1,delta=0.5,a=2").unwrap(),
            FunctionCatalogEntry::parse("shifted_power", "a=1,lambda=2").unwrap(),
            FunctionCatalogEntry::parse("power_shifted", "beta=0.5,a=1,lambda=1").unwrap(),
        ];
        for e in entries {
            let f = e.profile();
            let d2 = f.second_derivative_fn().unwrap();
            for t in [0.3, 1.0, 2.7] {
                let h = 1e-5;
                let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
                let d = f.derivative(t).unwrap();
                assert!((fd - d).abs() < 1e-7 * d.abs().max(1.0), "{} at {t}", e.label());
                let fd2 = (f.derivative(t + h).unwrap() - f.derivative(t - h).unwrap()) / (2.0 * h);
                assert!(
                    (fd2 - d2(t)).abs() < 1e-6 * d2(t).abs().max(1.0),
                    "{} f'' at {t}",
                    e.label()
                );
            }
            f.spot_check_declarations(1e-4, 100.0).unwrap();
        }
    }
}
