//! Dormand–Prince 5(4) integration of u″ + φ(t)u = 0 with quintic Hermite
//! dense output and root events.

use crate::error::{Error, Result};
use crate::zeros::refine_zero;

use super::phi::PhiSpec;

/// Tolerances of the normal-form integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// A computed solution of the normal form on `[grid[0], grid[last]]`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    phi: PhiSpec,
    grid: Vec<f64>,
    u: Vec<f64>,
    up: Vec<f64>,
    upp: Vec<f64>,
    roots: Vec<f64>,
    rtol: f64,
}

/// Quintic Hermite coefficients on one step, in the local variable
/// s = (t − t_i)/h.
fn hermite(u0: f64, d0: f64, s0: f64, u1: f64, d1: f64, s1: f64, h: f64) -> [f64; 6] {
    let c0 = u0;
    let c1 = h * d0;
    let c2 = 0.5 * h * h * s0;
    let a = u1 - (c0 + c1 + c2);
    let b = h * d1 - (c1 + 2.0 * c2);
    let c = h * h * s1 - 2.0 * c2;
    [
        c0,
        c1,
        c2,
        10.0 * a - 4.0 * b + 0.5 * c,
        -15.0 * a + 7.0 * b - c,
        6.0 * a - 3.0 * b + 0.5 * c,
    ]
}

impl Trajectory {
    pub fn phi(&self) -> &PhiSpec {
        &self.phi
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn u_values(&self) -> &[f64] {
        &self.u
    }

    pub fn u_prime_values(&self) -> &[f64] {
        &self.up
    }

    /// Roots of u strictly after the initial time, ascending.
    pub fn detected_roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn span(&self) -> (f64, f64) {
        (self.grid[0], *self.grid.last().expect("non-empty grid"))
    }

    fn cell(&self, t: f64) -> usize {
        let n = self.grid.len();
        if n < 2 {
            return 0;
        }
        match self.grid.binary_search_by(|g| g.total_cmp(&t)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    fn coefficients(&self, i: usize) -> ([f64; 6], f64) {
        let h = self.grid[i + 1] - self.grid[i];
        (
            hermite(
                self.u[i],
                self.up[i],
                self.upp[i],
                self.u[i + 1],
                self.up[i + 1],
                self.upp[i + 1],
                h,
            ),
            h,
        )
    }

    /// Dense output (u, u′, u″) at `t`, clamped to the span.
    pub fn eval_all(&self, t: f64) -> (f64, f64, f64) {
        if self.grid.len() < 2 {
            return (self.u[0], self.up[0], self.upp[0]);
        }
        let (lo, hi) = self.span();
        let t = t.clamp(lo, hi);
        let i = self.cell(t);
        let (c, h) = self.coefficients(i);
        let s = (t - self.grid[i]) / h;
        let u = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
        let du = c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
        let ddu = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
        (u, du / h, ddu / (h * h))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_all(t).0
    }

    pub fn eval_prime(&self, t: f64) -> f64 {
        self.eval_all(t).1
    }

    /// Largest scaled residual |u″ + φu| / (1 + |u|) over step midpoints.
    pub fn max_midpoint_residual(&self) -> f64 {
        self.grid
            .windows(2)
            .map(|w| {
                let m = 0.5 * (w[0] + w[1]);
                let (u, _, upp) = self.eval_all(m);
                (upp + self.phi.eval(m) * u).abs() / (1.0 + u.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Tolerance the trajectory was computed with.
    pub fn rtol(&self) -> f64 {
        self.rtol
    }
}

/// Integrates u″ + φu = 0 from `init = (t0, u0, u0′)` to `t1` with the
/// default tolerances.
pub fn solve_normal_form(phi: &PhiSpec, init: (f64, f64, f64), t1: f64) -> Result<Trajectory> {
    solve_normal_form_with(phi, init, t1, OdeOptions::default())
}

pub fn solve_normal_form_with(phi: &PhiSpec, init: (f64, f64, f64), t1: f64, opts: OdeOptions) -> Result<Trajectory> {
    let (t0, u0, v0) = init;
    if !(t0 >= 0.0) || !(t1 > t0) || !t1.is_finite() {
        return Err(Error::Domain(format!(
            "integration span must satisfy 0 <= t0 < t1, got ({t0}, {t1})"
        )));
    }
    if !u0.is_finite() || !v0.is_finite() {
        return Err(Error::Domain("initial values must be finite".into()));
    }
    let eval_phi = |t: f64| -> Result<f64> {
        let p = phi.eval(t);
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::Domain(format!("phi is not finite at t = {t}")))
        }
    };
    // Step cap keeping the dense-output residual below rtol: the quintic
    // Hermite error in u″ at a midpoint is about h⁴|φ|³/1920 for an
    // oscillation of frequency √|φ|.
    let h_cap = |p: f64| 0.8 * (1920.0 * opts.rtol / p.abs().max(1.0).powi(3)).powf(0.25);

    let mut t = t0;
    let mut y = [u0, v0];
    let mut p0 = eval_phi(t0)?;
    let mut grid = vec![t0];
    let mut us = vec![u0];
    let mut ups = vec![v0];
    let mut upps = vec![-p0 * u0];
    let mut h = h_cap(p0).min(t1 - t0);
    let mut k = [[0.0f64; 2]; 7];
    k[0] = [y[1], -p0 * y[0]];
    for _ in 0..opts.max_steps {
        if t >= t1 {
            break;
        }
        h = h.min(t1 - t).min(h_cap(p0));
        if h < 1e-12 * t.abs().max(1.0) {
            return Err(Error::Stiffness {
                t,
                detail: format!("step size {h:e} below the floor"),
            });
        }
        for s in 1..7 {
            let mut yi = y;
            for j in 0..s {
                yi[0] += h * A[s][j] * k[j][0];
                yi[1] += h * A[s][j] * k[j][1];
            }
            let ps = eval_phi(t + C[s] * h)?;
            k[s] = [yi[1], -ps * yi[0]];
        }
        let mut y5 = y;
        let mut err = [0.0f64; 2];
        for s in 0..7 {
            y5[0] += h * B5[s] * k[s][0];
            y5[1] += h * B5[s] * k[s][1];
            err[0] += h * (B5[s] - B4[s]) * k[s][0];
            err[1] += h * (B5[s] - B4[s]) * k[s][1];
        }
        let mut norm = 0.0f64;
        for i in 0..2 {
            let sc = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            norm = norm.max((err[i] / sc).abs());
        }
        if !norm.is_finite() {
            return Err(Error::Stiffness {
                t,
                detail: "non-finite step".into(),
            });
        }
        if norm <= 1.0 {
            // The dense output must satisfy the equation at the step midpoint
            // as well; the error estimate alone misses rapid changes of φ.
            let p1 = eval_phi(t + h)?;
            let c = hermite(y[0], y[1], -p0 * y[0], y5[0], y5[1], -p1 * y5[0], h);
            let um = c[0] + 0.5 * (c[1] + 0.5 * (c[2] + 0.5 * (c[3] + 0.5 * (c[4] + 0.5 * c[5]))));
            let uppm = (2.0 * c[2] + 0.5 * (6.0 * c[3] + 0.5 * (12.0 * c[4] + 0.5 * 20.0 * c[5]))) / (h * h);
            let residual = (uppm + eval_phi(t + 0.5 * h)? * um).abs() / (1.0 + um.abs());
            if residual > 0.5 * opts.rtol {
                h *= 0.5;
                continue;
            }
            let t_new = if t1 - (t + h) < 1e-14 * t1.abs().max(1.0) {
                t1
            } else {
                t + h
            };
            t = t_new;
            y = y5;
            p0 = eval_phi(t)?;
            grid.push(t);
            us.push(y[0]);
            ups.push(y[1]);
            upps.push(-p0 * y[0]);
            // First-same-as-last: the seventh stage is the derivative at t.
            k[0] = [y[1], -p0 * y[0]];
            let fac = if norm == 0.0 {
                5.0
            } else {
                (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= fac;
        } else {
            h *= (0.9 * norm.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    if t < t1 {
        return Err(Error::IterationLimit(format!(
            "integration stopped at t = {t} before {t1}"
        )));
    }
    let mut traj = Trajectory {
        phi: phi.clone(),
        grid,
        u: us,
        up: ups,
        upp: upps,
        roots: Vec::new(),
        rtol: opts.rtol,
    };
    traj.roots = locate_roots(&traj)?;
    Ok(traj)
}

fn locate_roots(traj: &Trajectory) -> Result<Vec<f64>> {
    let mut roots: Vec<f64> = Vec::new();
    let n = traj.grid.len();
    for i in 0..n - 1 {
        let (a, b) = (traj.grid[i], traj.grid[i + 1]);
        let (ua, ub) = (traj.u[i], traj.u[i + 1]);
        let root = if ub == 0.0 {
            Some(b)
        } else if ua != 0.0 && ua * ub < 0.0 {
            let tol = 1e-14 * b.abs().max(1.0);
            Some(refine_zero(|t| traj.eval(t), (a, b), tol)?)
        } else {
            None
        };
        if let Some(r) = root {
            if r > traj.grid[0] {
                roots.push(r);
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_phi_gives_sine() {
        let phi = PhiSpec::constant(1.0);
        let traj = solve_normal_form(&phi, (0.0, 0.0, 1.0), 10.0).unwrap();
        let r = traj.detected_roots();
        assert_eq!(r.len(), 3);
        for (k, z) in r.iter().enumerate() {
            assert!((z - (k + 1) as f64 * PI).abs() < 1e-8, "{z}");
        }
        assert!((traj.eval(1.0) - 1f64.sin()).abs() < 1e-9);
        assert!(traj.max_midpoint_residual() <= 1e-10);
    }

    #[test]
    fn dense_output_reproduces_grid_values() {
        let phi = PhiSpec::constant(4.0);
        let traj = solve_normal_form(&phi, (0.0, 1.0, 0.0), 3.0).unwrap();
        let g = traj.grid()[17];
        assert_eq!(traj.eval(g), traj.u_values()[17]);
    }

    #[test]
    fn infinite_phi_at_start_is_rejected() {
        let phi = PhiSpec::bessel(2.0);
        assert!(solve_normal_form(&phi, (0.0, 0.0, 0.0), 1.0).is_err());
    }
}
