use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::special::{bessel_y, sqrt_bessel_j};
use crate::sturm::{solve_normal_form, PhiSpec, Trajectory};

/// Kernel given by a computed solution of u″ + φu = 0 started from
/// u(0) = 0, u′(0) > 0.
#[derive(Clone)]
pub struct OdeKernel {
    pub phi: PhiSpec,
    pub init: (f64, f64, f64),
    trajectory: Arc<Trajectory>,
}

impl OdeKernel {
    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }
}

impl fmt::Debug for OdeKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OdeKernel")
            .field("phi", &self.phi.label)
            .field("init", &self.init)
            .field("span", &self.trajectory.span())
            .finish()
    }
}

/// A kernel u(t) of the transform (Uf)(x) = ∫₀^∞ f(t)u(xt)dt.
#[derive(Debug, Clone)]
pub enum KernelSpec {
    /// u(t) = sin t.
    Sine,
    /// u(t) = cos t. Never arch-decomposed: evaluated through −f′ and the
    /// sine kernel.
    Cosine,
    /// u(t) = √t J_ν(t).
    BesselSqrt {
        nu: f64,
    },
    /// u(t) = √t J_ν(t^α).
    ScaledBessel {
        nu: f64,
        alpha: f64,
    },
    /// u(t) = √t Y_ν(t). Evaluated through two Hankel transforms.
    NeumannSqrt {
        nu: f64,
    },
    Ode(OdeKernel),
}

/// Orders accepted by the Bessel kernels.
pub const KERNEL_MAX_ORDER: f64 = 30.0;

impl KernelSpec {
    pub fn bessel_sqrt(nu: f64) -> Result<Self> {
        if !(nu > -1.0 && nu <= KERNEL_MAX_ORDER) {
            return domain(format!("Hankel kernel needs -1 < nu <= {KERNEL_MAX_ORDER}, got {nu}"));
        }
        Ok(KernelSpec::BesselSqrt { nu })
    }

    pub fn scaled_bessel(nu: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return domain(format!("scaled kernel needs alpha > 1, got {alpha}"));
        }
        if !(nu > 0.0 && nu <= KERNEL_MAX_ORDER) {
            return domain(format!("scaled kernel needs 0 < nu <= {KERNEL_MAX_ORDER}, got {nu}"));
        }
        Ok(KernelSpec::ScaledBessel { nu, alpha })
    }

    pub fn neumann_sqrt(nu: f64) -> Result<Self> {
        if !(nu.abs() > 0.5 && nu.abs() < 1.0) {
            return domain(format!("Neumann kernel needs 1/2 < |nu| < 1, got {nu}"));
        }
        Ok(KernelSpec::NeumannSqrt { nu })
    }

    /// Kernel from the solution of u″ + φu = 0 with u(0) = 0, u′(0) > 0,
    /// integrated up to `t_end`.
    pub fn ode(phi: PhiSpec, slope: f64, t_end: f64) -> Result<Self> {
        if !(slope > 0.0) {
            return domain(format!("ODE kernel needs u'(0) > 0, got {slope}"));
        }
        let init = (0.0, 0.0, slope);
        let trajectory = solve_normal_form(&phi, init, t_end)?;
        Ok(KernelSpec::Ode(OdeKernel {
            phi,
            init,
            trajectory: Arc::new(trajectory),
        }))
    }

    pub fn label(&self) -> String {
        match self {
            KernelSpec::Sine => "sine".into(),
            KernelSpec::Cosine => "cosine".into(),
            KernelSpec::BesselSqrt { nu } => format!("bessel_sqrt(nu={nu})"),
            KernelSpec::ScaledBessel { nu, alpha } => {
                format!("scaled_bessel(nu={nu},alpha={alpha})")
            }
            KernelSpec::NeumannSqrt { nu } => format!("neumann_sqrt(nu={nu})"),
            KernelSpec::Ode(k) => format!("ode({})", k.phi.label),
        }
    }

    /// u(t) for t ≥ 0. ODE kernels return NaN beyond their span.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            KernelSpec::Sine => t.sin(),
            KernelSpec::Cosine => t.cos(),
            KernelSpec::BesselSqrt { nu } => sqrt_bessel_j(*nu, t),
            KernelSpec::ScaledBessel { nu, alpha } => {
                if t == 0.0 {
                    0.0
                } else {
                    t.sqrt() * sqrt_bessel_j(*nu, t.powf(*alpha)) / t.powf(0.5 * alpha)
                }
            }
            KernelSpec::NeumannSqrt { nu } => {
                if t == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    bessel_y(*nu, t).map(|r| t.sqrt() * r.value).unwrap_or(f64::NAN)
                }
            }
            KernelSpec::Ode(k) => {
                let (lo, hi) = k.trajectory.span();
                if t < lo || t > hi {
                    f64::NAN
                } else {
                    k.trajectory.eval(t)
                }
            }
        }
    }

    /// Exponent p with u(t) ~ c·t^p as t → 0+.
    pub fn leading_exponent(&self) -> f64 {
        match self {
            KernelSpec::Sine | KernelSpec::Ode(_) => 1.0,
            KernelSpec::Cosine => 0.0,
            KernelSpec::BesselSqrt { nu } => nu + 0.5,
            KernelSpec::ScaledBessel { nu, alpha } => alpha * nu + 0.5,
            KernelSpec::NeumannSqrt { nu } => 0.5 - nu.abs(),
        }
    }

    /// Coefficient φ of the normal form the kernel satisfies.
    pub fn phi(&self) -> PhiSpec {
        match self {
            KernelSpec::Sine | KernelSpec::Cosine => PhiSpec::constant(1.0),
            KernelSpec::BesselSqrt { nu } | KernelSpec::NeumannSqrt { nu } => PhiSpec::bessel(*nu),
            KernelSpec::ScaledBessel { nu, alpha } => PhiSpec::scaled_bessel(*nu, *alpha),
            KernelSpec::Ode(k) => k.phi.clone(),
        }
    }

    /// Whether the kernel vanishes at 0+ and is positive before its first
    /// zero, as the arch decomposition requires.
    pub fn supports_arch_decomposition(&self) -> bool {
        !matches!(self, KernelSpec::Cosine | KernelSpec::NeumannSqrt { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate_parameters() {
        assert!(KernelSpec::bessel_sqrt(-1.0).is_err());
        assert!(KernelSpec::scaled_bessel(0.25, 1.0).is_err());
        assert!(KernelSpec::scaled_bessel(-0.25, 2.0).is_err());
        assert!(KernelSpec::neumann_sqrt(0.5).is_err());
        assert!(KernelSpec::neumann_sqrt(-0.75).is_ok());
    }

    #[test]
    fn scaled_kernel_matches_definition() {
        let k = KernelSpec::scaled_bessel(0.25, 2.0).unwrap();
        let t: f64 = 1.7;
        let direct = t.sqrt() * crate::special::bessel_j(0.25, t * t).unwrap().value;
        assert!((k.eval(t) - direct).abs() < 1e-14);
    }

    #[test]
    fn ode_kernel_tracks_sine() {
        let k = KernelSpec::ode(PhiSpec::constant(1.0), 1.0, 12.0).unwrap();
        assert!((k.eval(2.0) - 2f64.sin()).abs() < 1e-9);
        assert!(k.eval(13.0).is_nan());
    }
}
