//! Residual checks and brute-force referees.
//!
//! Nothing here calls into the connection or dam solver formulas: every
//! quantity is recomputed from the jump relations, the energy expressions and
//! a plain bisection, so a bug in the solver path does not hide itself.

use serde::{Deserialize, Serialize};

use crate::connection::Connection;
use crate::damsolver::{Branch, DamProblem, DamSolution};
use crate::error::{Error, Result};
use crate::sampler::SolutionField;

/// Relative tolerance for algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-9;
/// Tolerance on the mass-flux identity, relative to `max(1, h0 u0)`.
pub const MASS_FLUX_TOL: f64 = 1e-12;
/// Slack on the surface-level inequality.
pub const ENTROPY_TOL: f64 = 1e-12;
/// Downstream Froude numbers below `1 - FROUDE_TOL` fail.
pub const FROUDE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhDefect {
    pub mass: f64,
    pub momentum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `|h1 u1 - h0 u0| / max(1, |h0 u0|)`.
    pub mass_flux: f64,
    /// Momentum jump plus bed source, relative to the largest term.
    pub momentum_source: f64,
    /// Backward-shock residuals; only present for full solutions.
    pub rankine_hugoniot: Option<RhDefect>,
    pub chi_in_bounds: bool,
    pub entropy: bool,
    /// `None` when the downstream side is dry.
    pub froude_right: Option<f64>,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl ResidualReport {
    /// Report for a problem with nothing to check.
    pub fn trivial() -> Self {
        ResidualReport {
            mass_flux: 0.0,
            momentum_source: 0.0,
            rankine_hugoniot: None,
            chi_in_bounds: true,
            entropy: true,
            froude_right: None,
            passed: true,
            failures: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        let mut failures = Vec::new();
        if !(self.mass_flux <= MASS_FLUX_TOL) {
            failures.push("mass_flux".to_string());
        }
        if !(self.momentum_source <= ALGEBRAIC_TOL) {
            failures.push("momentum_source".to_string());
        }
        if let Some(rh) = self.rankine_hugoniot {
            if !(rh.mass <= ALGEBRAIC_TOL && rh.momentum <= ALGEBRAIC_TOL) {
                failures.push("rankine_hugoniot".to_string());
            }
        }
        if !self.chi_in_bounds {
            failures.push("chi_in_bounds".to_string());
        }
        if !self.entropy {
            failures.push("entropy".to_string());
        }
        if let Some(fr) = self.froude_right {
            if !(fr >= 1.0 - FROUDE_TOL) {
                failures.push("froude_right".to_string());
            }
        }
        self.passed = failures.is_empty();
        self.failures = failures;
        self
    }
}

/// Checks the jump relations, strip-depth bounds, surface-level condition and
/// downstream Froude number of a connection.
pub fn check_connection(c: &Connection) -> ResidualReport {
    let g = c.step.g();
    let (b0, b1) = (c.step.b0(), c.step.b1());
    let (h0, u0) = (c.left.h(), c.left.u());
    let (h1, u1) = (c.right.h(), if c.right.is_vacuum() { 0.0 } else { c.right.u() });

    let q0 = h0 * u0;
    let q1 = h1 * u1;
    let mass_flux = (q1 - q0).abs() / q0.abs().max(1.0);

    let p1 = h1 * u1 * u1 + 0.5 * g * h1 * h1;
    let p0 = h0 * u0 * u0 + 0.5 * g * h0 * h0;
    let source = g * (b1 - b0) * c.chi;
    let momentum_scale = p1.abs().max(p0.abs()).max(source.abs()).max(1e-300);
    let momentum_source = (p1 - p0 + source).abs() / momentum_scale;

    // Upper bound on chi from A³ >= 27 B²/4 for x³ - A x + B.
    let a_free = h0 * h0 + 2.0 / g * h0 * u0 * u0;
    let chi_max = (a_free - 3.0 * (u0 * u0 * h0 * h0 / g).powf(2.0 / 3.0)) / (2.0 * (b1 - b0));
    let slack = 1e-9 * (1.0 + chi_max.abs());
    let chi_in_bounds = c.chi >= -slack && c.chi <= chi_max + slack;

    let entropy = h1 + b1 <= h0 + b0 + ENTROPY_TOL;
    let froude_right = (h1 > 0.0).then(|| u1 / (g * h1).sqrt());

    ResidualReport {
        mass_flux,
        momentum_source,
        rankine_hugoniot: None,
        chi_in_bounds,
        entropy,
        froude_right,
        passed: false,
        failures: Vec::new(),
    }
    .finish()
}

/// Rankine–Hugoniot residuals of the backward shock `(h_l, u_l) -> (h0, u0)` at speed `c1`.
pub fn shock_residuals(hl: f64, ul: f64, h0: f64, u0: f64, c1: f64, g: f64) -> RhDefect {
    let dm = h0 - hl;
    let dq = h0 * u0 - hl * ul;
    let dp = h0 * u0 * u0 + 0.5 * g * h0 * h0 - hl * ul * ul - 0.5 * g * hl * hl;
    let mass_scale = 1.0f64.max((c1 * h0).abs()).max((c1 * hl).abs()).max((h0 * u0).abs()).max((hl * ul).abs());
    let mom_scale = 1.0f64
        .max((c1 * h0 * u0).abs())
        .max((c1 * hl * ul).abs())
        .max(h0 * u0 * u0 + 0.5 * g * h0 * h0)
        .max(hl * ul * ul + 0.5 * g * hl * hl);
    RhDefect { mass: (c1 * dm - dq).abs() / mass_scale, momentum: (c1 * dq - dp).abs() / mom_scale }
}

/// Connection checks plus the backward shock of a full solution.
pub fn check_solution(sol: &DamSolution) -> ResidualReport {
    let mut report = check_connection(&sol.connection);
    let l = sol.problem.left();
    let g = sol.problem.gravity().value();
    report.rankine_hugoniot =
        Some(shock_residuals(l.h(), l.u(), sol.upstream.h(), sol.upstream.u(), sol.c1, g));
    report.finish()
}

// Independent re-derivation of the dam problem quantities.

fn ref_u0_c1(h0: f64, hl: f64, ul: f64, g: f64) -> (f64, f64) {
    let s = (0.5 * g * (1.0 / h0 + 1.0 / hl)).sqrt();
    (ul - s * (h0 - hl), ul - s * h0)
}

fn ref_eta(h: f64, u: f64, b: f64, g: f64) -> f64 {
    0.5 * h * u * u + 0.5 * g * h * h + b * h
}

/// Largest root of `u0(h0) = 0` above `h_l`, by bisection on the shock curve.
pub fn ref_h_under(hl: f64, ul: f64, g: f64) -> f64 {
    let u0 = |h: f64| ref_u0_c1(h, hl, ul, g).0;
    let mut hi = 2.0 * hl;
    while u0(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = hl;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if u0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lower end of the feasible `h0` range: where the shock speed vanishes, or `h_l`.
pub fn ref_h_tilde(hl: f64, ul: f64, g: f64) -> f64 {
    let c = |h: f64| ref_u0_c1(h, hl, ul, g).1;
    if c(hl) <= 0.0 {
        return hl;
    }
    let (mut lo, mut hi) = (hl, 2.0 * hl);
    while c(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if c(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `E(h0)` on `branch` with all admissibility conditions enforced; `None` if infeasible.
pub fn ref_energy(h0: f64, branch: Branch, problem: &DamProblem) -> Option<f64> {
    let l = problem.left();
    let (hl, ul) = (l.h(), l.u());
    let step = problem.step();
    let (b0, b1, jump) = (step.b0(), step.b1(), step.jump());
    let g = step.g();
    let (u0, c1) = ref_u0_c1(h0, hl, ul, g);
    if u0 < -1e-12 || c1 > 1e-12 {
        return None;
    }
    let u0 = u0.max(0.0);
    let q = h0 * u0;
    let critical = (q * q / g).cbrt();
    let h1 = match branch {
        Branch::M1 => {
            if critical > h0 - jump + ENTROPY_TOL {
                return None;
            }
            critical
        }
        Branch::M2 => {
            let h1 = h0 - jump;
            let y = u0 * u0 / (g * h0);
            // Saturated only where the critical depth breaks the surface condition,
            // and only with a non-negative strip depth.
            if h1 <= 0.0 || critical < h1 || y > 1.0 {
                return None;
            }
            let chi = ((1.0 + 2.0 * y) * h0 * h0 - h1 * h1 - 2.0 * y * h0 * h0 * h0 / h1) / (2.0 * jump);
            if chi < -1e-12 {
                return None;
            }
            h1
        }
    };
    let shock = -c1 * (ref_eta(h0, u0, b0, g) - ref_eta(hl, ul, b0, g));
    let outflow = if h1 > 0.0 {
        let u1 = q / h1;
        q * (0.5 * u1 * u1 + g * (h1 + b1))
    } else {
        0.0
    };
    Some(shock + outflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMin {
    pub h0: f64,
    pub energy: f64,
    pub branch: Branch,
    /// Grid spacing used.
    pub cell: f64,
}

/// Exhaustive minimum of `E` over an `n`-point uniform grid of `[h_tilde, h_under]`,
/// both branches. `None` when no grid point is feasible.
pub fn grid_min_e(problem: &DamProblem, n: usize) -> Result<Option<GridMin>> {
    if n < 64 {
        return Err(Error::domain(format!("grid needs at least 64 points, got {n}")));
    }
    let l = problem.left();
    let g = problem.gravity().value();
    let lo = ref_h_tilde(l.h(), l.u(), g);
    let hi = ref_h_under(l.h(), l.u(), g);
    let cell = (hi - lo) / (n - 1) as f64;
    let mut best: Option<GridMin> = None;
    for i in 0..n {
        let h0 = if i + 1 == n { hi } else { lo + cell * i as f64 };
        for branch in [Branch::M1, Branch::M2] {
            if let Some(e) = ref_energy(h0, branch, problem) {
                if best.is_none_or(|b| e < b.energy) {
                    best = Some(GridMin { h0, energy: e, branch, cell });
                }
            }
        }
    }
    Ok(best)
}

/// `|(∫h(t+dt) - ∫h(t-dt)) / (2 dt) - (hu(a) - hu(b))|` on `[a, b]`.
///
/// The integral is split at the field's breakpoints and each smooth piece gets
/// a composite midpoint rule; `cells` is the total number of cells, shared
/// between pieces by length at time `t`.
pub fn mass_balance(field: &SolutionField, a: f64, b: f64, t: f64, dt: f64, cells: usize) -> Result<f64> {
    if !(b > a) {
        return Err(Error::domain("mass balance interval must have b > a"));
    }
    if !(t > 0.0) || !(dt > 0.0) || dt >= t {
        return Err(Error::domain("need 0 < dt < t"));
    }
    let cells = cells.max(1);
    let pieces = |time: f64| -> Vec<(f64, f64)> {
        let mut cuts: Vec<f64> = field.breakpoints(time).into_iter().filter(|&x| x > a && x < b).collect();
        cuts.insert(0, a);
        cuts.push(b);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    };
    let base = pieces(t);
    let counts: Vec<usize> = base
        .iter()
        .map(|(p, q)| ((cells as f64) * (q - p) / (b - a)).ceil().max(1.0) as usize)
        .collect();

    let integral = |time: f64| -> Result<f64> {
        let parts = pieces(time);
        if parts.len() != counts.len() {
            return Err(Error::domain("a breakpoint crosses an interval end within dt; shrink dt"));
        }
        let mut total = 0.0;
        for ((p, q), &n) in parts.iter().zip(&counts) {
            let w = (q - p) / n as f64;
            let mut s = 0.0;
            for k in 0..n {
                s += field.sample(p + w * (k as f64 + 0.5), time)?.h;
            }
            total += s * w;
        }
        Ok(total)
    };

    let rate = (integral(t + dt)? - integral(t - dt)?) / (2.0 * dt);
    let flux = |x: f64| -> Result<f64> {
        let s = field.sample(x, t)?;
        Ok(s.h * s.u)
    };
    Ok((rate - (flux(a)? - flux(b)?)).abs())
}
