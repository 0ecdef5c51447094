use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::ode::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexityMode {
    Strict,
    NonStrict,
}

impl ConvexityMode {
    fn accepts(self, margin: f64) -> bool {
        match self {
            ConvexityMode::Strict => margin > STRICT_MARGIN,
            ConvexityMode::NonStrict => margin >= -NON_STRICT_SLACK,
        }
    }
}

/// Relative margin a strict comparison must clear.
pub const STRICT_MARGIN: f64 = 1e-10;
/// Relative slack tolerated by a non-strict comparison.
pub const NON_STRICT_SLACK: f64 = 1e-9;
const GRID: usize = 64;

/// Spacing and arch-domination check around one interior root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootCheck {
    pub index: usize,
    pub root: f64,
    pub spacing_before: f64,
    pub spacing_after: f64,
    /// (before − after)/after, sign-flipped when reversed.
    pub spacing_margin: f64,
    /// Smallest of (|u(ζ−s)| − |u(ζ+s)|)/max(|u(ζ−s)|, |u(ζ+s)|) over the
    /// grid, sign-flipped when reversed.
    pub worst_amplitude_margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub mode: ConvexityMode,
    pub reversed: bool,
    pub roots: Vec<RootCheck>,
    pub worst_margin: f64,
    pub pass: bool,
}

/// Checks that consecutive spacings shrink and each arch dominates the next
/// (or the opposite when `reversed`, the decreasing-φ case).
///
/// Margins are relative: the amplitude margin at offset s is normalised by
/// the larger of the two compared magnitudes, because both vanish at the
/// root and their difference shrinks like s⁴ there.
pub fn check_arch_convexity(traj: &Trajectory, mode: ConvexityMode, reversed: bool) -> Result<ConvexityReport> {
    // A zero at the initial time plays the role of ζ_0.
    let mut roots = Vec::with_capacity(traj.detected_roots().len() + 1);
    if traj.u_values()[0] == 0.0 {
        roots.push(traj.grid()[0]);
    }
    roots.extend_from_slice(traj.detected_roots());
    if roots.len() < 3 {
        return Err(Error::Precondition(format!(
            "arch convexity needs at least 3 roots, trajectory has {}",
            roots.len()
        )));
    }
    let sign = if reversed { -1.0 } else { 1.0 };
    let mut checks = Vec::with_capacity(roots.len() - 2);
    for k in 1..roots.len() - 1 {
        let z = roots[k];
        let before = z - roots[k - 1];
        let after = roots[k + 1] - z;
        let spacing_margin = sign * (before - after) / after;
        let reach = before.min(after);
        let mut worst = f64::INFINITY;
        for j in 1..=GRID {
            let s = reach * j as f64 / (GRID + 1) as f64;
            let left = traj.eval(z - s).abs();
            let right = traj.eval(z + s).abs();
            let scale = left.max(right);
            let m = if scale > 0.0 {
                sign * (left - right) / scale
            } else {
                0.0
            };
            worst = worst.min(m);
        }
        let pass = mode.accepts(spacing_margin) && mode.accepts(worst);
        checks.push(RootCheck {
            index: k,
            root: z,
            spacing_before: before,
            spacing_after: after,
            spacing_margin,
            worst_amplitude_margin: worst,
            pass,
        });
    }
    let worst_margin = checks
        .iter()
        .map(|c| c.spacing_margin.min(c.worst_amplitude_margin))
        .fold(f64::INFINITY, f64::min);
    let pass = checks.iter().all(|c| c.pass);
    Ok(ConvexityReport {
        mode,
        reversed,
        roots: checks,
        worst_margin,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturm::{solve_normal_form, PhiSpec};

    #[test]
    fn sine_is_convex_with_equality() {
        let traj = solve_normal_form(&PhiSpec::constant(1.0), (0.0, 0.0, 1.0), 20.0).unwrap();
        let r = check_arch_convexity(&traj, ConvexityMode::NonStrict, false).unwrap();
        assert!(r.pass);
        assert!(r.worst_margin.abs() <= 1e-9, "{}", r.worst_margin);
        let r = check_arch_convexity(&traj, ConvexityMode::Strict, false).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn too_few_roots() {
        let traj = solve_normal_form(&PhiSpec::constant(1.0), (0.0, 0.0, 1.0), 7.0).unwrap();
        assert!(check_arch_convexity(&traj, ConvexityMode::NonStrict, false).is_ok());
        let traj = solve_normal_form(&PhiSpec::constant(1.0), (0.5, 1.0, 0.0), 5.0).unwrap();
        assert!(matches!(
            check_arch_convexity(&traj, ConvexityMode::Strict, false),
            Err(Error::Precondition(_))
        ));
    }
}
