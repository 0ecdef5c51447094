use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{adaptive_gl, graded_toward_zero};
use crate::zeros::ZeroCursor;

use super::kernel::KernelSpec;
use super::profile::ProfileFunction;

/// Relative tolerance of the per-arch Gauss–Legendre bisection.
pub const ARCH_REL_TOL: f64 = 1e-12;
/// Raw terms kept ahead of the Euler-transformed tail.
pub const EULER_HEAD: usize = 8;
/// Hard cap on the number of arches.
pub const MAX_TERMS: usize = 10_000;
const BATCH: usize = 16;
const ZERO_TOL: f64 = 1e-13;
/// Longest tail fed to the Euler transformation.
const EULER_SPAN: usize = 400;

/// How a series estimate was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summation {
    /// Partial sum; the first omitted term bounds the error.
    Raw,
    /// Euler transformation of the tail beyond the first 8 terms.
    Euler,
    /// The profile's support ended; the sum is finite.
    Exact,
}

/// The arch decomposition x(Uf)(x) = Σ(−1)^k A_k of one transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchSeries {
    pub kernel: String,
    pub x: f64,
    /// ζ_1, ζ_2, … in the kernel's own variable; ζ_0 = 0 is implicit.
    pub zeros: Vec<f64>,
    /// A_k = ∫_{ζ_k}^{ζ_{k+1}} f(t/x)|u(t)| dt.
    pub terms: Vec<f64>,
    /// Set when the profile's support ends inside the computed arches, so
    /// every later term is exactly zero.
    pub terminated: bool,
    pub partial_sum: f64,
    pub accelerated_sum: f64,
    /// Bound on |x(Uf)(x) − accelerated_sum|.
    pub tail_bound: f64,
    pub summation: Summation,
    pub n_terms: usize,
    /// Indices k with A_{k+1} > A_k + 1e-12·A_0.
    pub increases: Vec<usize>,
}

impl ArchSeries {
    pub fn signs(&self) -> Vec<f64> {
        (0..self.terms.len())
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
            .collect()
    }

    /// Estimate of Σ(−1)^k A_k and its error bound using the first `m`
    /// terms only. Both are in units of x(Uf)(x).
    pub fn estimate(&self, m: usize) -> (f64, f64, Summation) {
        estimate(
            &self.terms[..m.min(self.terms.len())],
            self.terminated && m >= self.terms.len(),
        )
    }
}

fn alternating(terms: &[f64]) -> f64 {
    terms
        .iter()
        .enumerate()
        .map(|(k, a)| if k % 2 == 0 { *a } else { -*a })
        .sum()
}

/// Euler-transformed value of Σ_j (−1)^j a_j from finitely many a_j,
/// returned with the magnitudes of the last two transformed terms.
fn euler_tail(a: &[f64]) -> (f64, f64) {
    let mut diffs = a.to_vec();
    let mut sum = 0.0;
    let mut last = [0.0f64; 2];
    let mut scale = 0.5;
    for n in 0..a.len() {
        let term = scale * diffs[0] * if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += term;
        last = [last[1], term.abs()];
        scale *= 0.5;
        for i in 0..diffs.len() - 1 - n {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
    }
    (sum, last[0] + last[1])
}

/// Error carried by the terms themselves: the Euler weights are bounded by
/// one in magnitude, so term errors of a few ulps add up to at most this.
fn roundoff_floor(terms: &[f64]) -> f64 {
    16.0 * f64::EPSILON * terms.iter().map(|a| a.abs()).sum::<f64>()
}

fn estimate(terms: &[f64], terminated: bool) -> (f64, f64, Summation) {
    let m = terms.len();
    if m == 0 {
        return (0.0, f64::INFINITY, Summation::Raw);
    }
    if terminated {
        return (alternating(terms), 0.0, Summation::Exact);
    }
    let raw = (
        alternating(&terms[..m - 1]),
        terms[m - 1] + roundoff_floor(&terms[..m - 1]),
        Summation::Raw,
    );
    if m < EULER_HEAD + 3 {
        return raw;
    }
    let head = alternating(&terms[..EULER_HEAD]);
    let sign = if EULER_HEAD.is_multiple_of(2) { 1.0 } else { -1.0 };
    let tail_end = m.min(EULER_HEAD + EULER_SPAN);
    let (tail, bound) = euler_tail(&terms[EULER_HEAD..tail_end]);
    let euler = (
        head + sign * tail,
        bound + roundoff_floor(&terms[..tail_end]),
        Summation::Euler,
    );
    if euler.1 < raw.1 {
        euler
    } else {
        raw
    }
}

/// A_k for the arch [ζ_k, ζ_{k+1}] (ζ_0 = 0), in the kernel's variable.
///
/// `zeros` holds ζ_1, ζ_2, … and must cover index k + 1. The arch adjacent
/// to the origin is integrated on a mesh graded toward 0 whenever the
/// integrand has a fractional or singular leading power there.
pub fn arch_integral(kernel: &KernelSpec, f: &ProfileFunction, x: f64, k: usize, zeros: &[f64]) -> Result<f64> {
    arch_integral_tol(kernel, f, x, k, zeros, 1e-12)
}

fn arch_integral_tol(
    kernel: &KernelSpec,
    f: &ProfileFunction,
    x: f64,
    k: usize,
    zeros: &[f64],
    abs_tol: f64,
) -> Result<f64> {
    if zeros.len() < k + 1 {
        return Err(Error::Precondition(format!(
            "arch {k} needs {} zeros, {} supplied",
            k + 1,
            zeros.len()
        )));
    }
    let lo = if k == 0 { 0.0 } else { zeros[k - 1] };
    let mut hi = zeros[k];
    let support = f.support_upper() * x;
    if lo >= support {
        return Ok(0.0);
    }
    hi = hi.min(support);
    let g = |t: f64| f.eval(t / x) * kernel.eval(t).abs();

    // Cell boundaries: arch ends plus profile breakpoints mapped to t.
    let mut cuts = vec![lo];
    cuts.extend(f.breakpoints.iter().map(|b| b * x).filter(|&b| b > lo && b < hi));
    cuts.push(hi);

    let mut total = 0.0;
    for (i, w) in cuts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let piece = if k == 0 && i == 0 {
            let exponent = kernel.leading_exponent() - f.singular_exponent;
            if exponent <= -1.0 {
                return Err(Error::Divergence(format!(
                    "f(t)u(t) ~ t^{exponent} near 0 is not integrable for {}",
                    kernel.label()
                )));
            }
            if exponent.fract() == 0.0 && exponent >= 0.0 {
                adaptive_gl(&g, a, b, ARCH_REL_TOL)?
            } else {
                graded_toward_zero(&g, b, exponent, abs_tol, ARCH_REL_TOL)?
            }
        } else {
            adaptive_gl(&g, a, b, ARCH_REL_TOL)?
        };
        total += piece;
    }
    if !total.is_finite() {
        return Err(Error::Divergence(format!("arch {k} integral is not finite")));
    }
    Ok(total.max(0.0))
}

/// Computes exactly `count` arch terms (fewer if the support ends first).
pub fn arch_series(kernel: &KernelSpec, f: &ProfileFunction, x: f64, count: usize) -> Result<ArchSeries> {
    let mut builder = SeriesBuilder::new(kernel, f, x, 1e-12)?;
    builder.extend_to(count)?;
    Ok(builder.finish())
}

struct SeriesBuilder<'a> {
    kernel: &'a KernelSpec,
    f: &'a ProfileFunction,
    x: f64,
    cursor: ZeroCursor,
    terms: Vec<f64>,
    terminated: bool,
    quad_tol: f64,
}

impl<'a> SeriesBuilder<'a> {
    fn new(kernel: &'a KernelSpec, f: &'a ProfileFunction, x: f64, quad_tol: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("transform needs finite x > 0, got {x}")));
        }
        if !kernel.supports_arch_decomposition() {
            return Err(Error::Capability(format!(
                "{} is not arch-decomposed directly",
                kernel.label()
            )));
        }
        Ok(SeriesBuilder {
            kernel,
            f,
            x,
            cursor: ZeroCursor::new(kernel.clone(), ZERO_TOL)?,
            terms: Vec::new(),
            terminated: false,
            quad_tol,
        })
    }

    fn extend_to(&mut self, count: usize) -> Result<()> {
        let support = self.f.support_upper() * self.x;
        while self.terms.len() < count && !self.terminated {
            let start = self.terms.len();
            let end = (start + BATCH).min(count);
            self.cursor.ensure(end)?;
            let zeros = self.cursor.zeros();
            let (kernel, f, x, tol) = (self.kernel, self.f, self.x, self.quad_tol);
            let batch: Vec<f64> = (start..end)
                .into_par_iter()
                .map(|k| arch_integral_tol(kernel, f, x, k, zeros, tol))
                .collect::<Result<_>>()?;
            for (k, a) in (start..end).zip(batch) {
                self.terms.push(a);
                if zeros[k] >= support {
                    self.terminated = true;
                    break;
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> ArchSeries {
        let n = self.terms.len();
        let (acc, bound, summation) = estimate(&self.terms, self.terminated);
        let a0 = self.terms.first().copied().unwrap_or(0.0);
        let increases = self
            .terms
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0] + 1e-12 * a0)
            .map(|(k, _)| k)
            .collect();
        let zeros = self.cursor.zeros()[..n.min(self.cursor.zeros().len())].to_vec();
        ArchSeries {
            kernel: self.kernel.label(),
            x: self.x,
            zeros,
            partial_sum: alternating(&self.terms),
            terms: self.terms,
            terminated: self.terminated,
            accelerated_sum: acc,
            tail_bound: bound,
            summation,
            n_terms: n,
            increases,
        }
    }
}

/// Result of one transform evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub x: f64,
    pub value: f64,
    /// Bound on |value − (Uf)(x)| from the series tails.
    pub tail_bound: f64,
    /// One series per arch-decomposed transform entering the value.
    pub series: Vec<ArchSeries>,
    pub warnings: Vec<String>,
}

impl TransformResult {
    pub fn n_arches(&self) -> usize {
        self.series.iter().map(|s| s.n_terms).sum()
    }
}

/// (Uf)(x) by arch decomposition for kernels that vanish at 0+.
pub(crate) fn arch_transform(kernel: &KernelSpec, f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if f.declared.limit_zero_at_infinity == Some(false) && f.support_upper().is_infinite() {
        return Err(Error::Divergence(format!(
            "profile {} does not tend to 0, so the arch terms cannot vanish",
            f.label
        )));
    }
    let mut b = SeriesBuilder::new(kernel, f, x, 1e-3 * tol * x)?;
    let target = tol * x;
    let mut count = EULER_HEAD + 4;
    loop {
        b.extend_to(count)?;
        let (_, bound, _) = estimate(&b.terms, b.terminated);
        let decaying = {
            let t = &b.terms;
            // (P2) monitor: terms must shrink for the tail estimate to mean
            // anything.
            t.len() <= EULER_HEAD || t[t.len() - 1] < (1.0 - 1e-3) * t[EULER_HEAD - 1] || t[EULER_HEAD - 1] == 0.0
        };
        if b.terminated || (bound <= target && decaying) {
            break;
        }
        if b.terms.len() >= MAX_TERMS {
            let t = &b.terms;
            let tail = t[t.len() - 1];
            let mid = t[t.len() / 2];
            return Err(if tail > 0.5 * mid {
                Error::Divergence(format!(
                    "arch terms do not tend to zero for {} (A_{} = {tail:e})",
                    f.label,
                    t.len() - 1
                ))
            } else {
                Error::IterationLimit(format!(
                    "tail bound {:e} still above {target:e} after {MAX_TERMS} arches",
                    bound
                ))
            });
        }
        count = (count + count / 2).min(MAX_TERMS);
    }
    let series = b.finish();
    let mut warnings = Vec::new();
    if !series.increases.is_empty() {
        warnings.push(format!(
            "arch terms increase at {} indices (first k = {}); monotone decrease is not guaranteed for this profile",
            series.increases.len(),
            series.increases[0]
        ));
    }
    Ok(TransformResult {
        x,
        value: series.accelerated_sum / x,
        tail_bound: series.tail_bound / x,
        series: vec![series],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn euler_sums_log_two() {
        let a: Vec<f64> = (1..40).map(|k| 1.0 / k as f64).collect();
        let (v, bound) = euler_tail(&a);
        assert!((v - 2f64.ln()).abs() < 1e-10, "{v}");
        assert!(bound < 1e-10);
    }

    #[test]
    fn sine_arch_of_constant() {
        let f = ProfileFunction::new("one", |_| 1.0);
        let a = arch_integral(&KernelSpec::Sine, &f, 1.0, 0, &[PI]).unwrap();
        assert!((a - 2.0).abs() < 1e-13);
        let g = ProfileFunction::new("exp", |t: f64| (-t).exp());
        let a = arch_integral(&KernelSpec::Sine, &g, 1.0, 0, &[PI]).unwrap();
        assert!((a - 0.5 * (1.0 + (-PI).exp())).abs() < 1e-13);
    }

    #[test]
    fn non_integrable_arch_zero() {
        let f = ProfileFunction::new("t^-2.5", |t: f64| t.powf(-2.5)).with_singular_exponent(2.5);
        assert!(matches!(
            arch_integral(&KernelSpec::Sine, &f, 1.0, 0, &[PI]),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn constant_profile_is_rejected_by_the_monitor() {
        let f = ProfileFunction::new("one", |_| 1.0);
        let r = arch_transform(&KernelSpec::Sine, &f, 1.0, 1e-8);
        assert!(matches!(r, Err(Error::Divergence(_))), "{r:?}");
    }
}
