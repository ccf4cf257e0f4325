//! Dam break onto a dry raised bed.
//!
//! Water at `(h_l, u_l)`, `u_l > 0`, meets a step up to `b1 > b0` with vacuum
//! beyond it. Any solution that passes the step is a backward shock to
//! `(h0, u0)`, the stationary connection to `(h1, u1)`, and a family-1
//! rarefaction into the dry bed. Everything is parameterized by `h0`:
//!
//! * `h0 >= h_tilde` keeps the shock speed non-positive,
//! * `h0 <= h_under` keeps `u0 >= 0` (`h_under` is the top root of the cubic `f`),
//! * on the cube-root branch the surface condition holds for `h0 >= h_hat`.
//!
//! The chosen `h0` minimizes the energy production `E(h0)` over both
//! connection branches. If `h_under < [b]` nothing passes the step.

use serde::{Deserialize, Serialize};

use crate::connection::{connect_on_branch, critical_depth, Connection, ConnectionBranch};
use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::leftwaves::{classify_left, tilde_h, LeftWavePattern};
use crate::search::scan_and_refine;
use crate::state::{eta, flux_q, BedStep, Gravity, State};

/// Separates the no-flow, still-water and flowing regimes when comparing `h_under` with `[b]`.
pub const REGIME_TOL: f64 = 1e-10;

/// Coarse scan resolution before golden-section refinement.
pub const SCAN_POINTS: usize = 1024;

const HAT_TOL: f64 = 1e-13;
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DamProblem {
    left: State,
    step: BedStep,
}

impl DamProblem {
    pub fn new(h_l: f64, u_l: f64, b0: f64, b1: f64, g: f64) -> Result<Self> {
        let g = Gravity::new(g)?;
        Self::from_parts(State::new(h_l, u_l)?, BedStep::new(b0, b1, g)?)
    }

    pub fn from_parts(left: State, step: BedStep) -> Result<Self> {
        if !(left.h() > 0.0) {
            return Err(Error::domain(format!("h_l must be positive, got {}", left.h())));
        }
        if !(left.u() > 0.0) {
            return Err(Error::domain(format!("u_l must be positive, got {}", left.u())));
        }
        Ok(DamProblem { left, step })
    }

    pub fn left(&self) -> State {
        self.left
    }

    pub fn step(&self) -> BedStep {
        self.step
    }

    pub fn gravity(&self) -> Gravity {
        self.step.gravity()
    }
}

/// Which connection branch produced the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    M1,
    M2,
}

impl Branch {
    pub fn connection_branch(self) -> ConnectionBranch {
        match self {
            Branch::M1 => ConnectionBranch::CubeRoot,
            Branch::M2 => ConnectionBranch::EntropySaturated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleInterval {
    pub h_tilde: f64,
    pub h_under: f64,
    pub h_hat: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DamSolution {
    pub problem: DamProblem,
    /// `(h0, u0)` between the backward shock and the step.
    pub upstream: State,
    /// Backward shock speed.
    pub c1: f64,
    pub connection: Connection,
    /// Dry-front speed `u1 + 2√(g h1)`.
    pub u_m: f64,
    /// `u1 + √(g h1)`, kept for comparison with the single-root form.
    pub u_m_single: f64,
    pub branch: Branch,
    pub energy: f64,
    pub m1: f64,
    pub m2: Option<f64>,
    /// Set when both branches reach the same minimum; `M1` is reported.
    pub tie: bool,
    pub interval: FeasibleInterval,
    pub left_pattern: LeftWavePattern,
}

impl DamSolution {
    pub fn downstream(&self) -> State {
        self.connection.right
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoFlowReason {
    /// `h_under < [b]`: no admissible solution passes the step.
    JumpExceedsHbar,
    /// `h_under = [b]`: the shocked water comes to rest at the step.
    RestState,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoFlow {
    pub problem: DamProblem,
    pub reason: NoFlowReason,
    pub h_under: f64,
    /// For `RestState`: the still water `(h_under, 0)` and the shock speed reaching it.
    pub rest: Option<(State, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DamOutcome {
    Flow(DamSolution),
    NoFlow(NoFlow),
}

/// Velocity behind the backward shock and its speed, for `h0 >= h_l`.
pub fn u0_and_c1(h0: f64, h_l: f64, u_l: f64, g: Gravity) -> Result<(f64, f64)> {
    if !(h_l > 0.0) {
        return Err(Error::domain("h_l must be positive"));
    }
    if !(h0 >= h_l * (1.0 - 1e-12)) {
        return Err(Error::domain(format!("h0 = {h0} is below h_l = {h_l}")));
    }
    let h0 = h0.max(h_l);
    let s = (g.value() / 2.0 * (1.0 / h0 + 1.0 / h_l)).sqrt();
    Ok((u_l - s * (h0 - h_l), u_l - s * h0))
}

/// `f(h0) = h0³ - h_l h0² - (h_l² + (2/g) u_l² h_l) h0 + h_l³`; `u0 >= 0` iff `f(h0) <= 0`.
pub fn f_cubic(h_l: f64, u_l: f64, g: Gravity) -> Cubic {
    let g = g.value();
    Cubic::new(1.0, -h_l, -(h_l * h_l + 2.0 / g * u_l * u_l * h_l), h_l * h_l * h_l)
}

/// Largest root of `f`, where the flow behind the shock stops.
pub fn underline_h(h_l: f64, u_l: f64, g: Gravity) -> f64 {
    // f(h_l) = -(2/g) u_l² h_l² < 0, so a root above h_l always exists for u_l > 0.
    f_cubic(h_l, u_l, g).largest_root_above(h_l).unwrap_or(h_l)
}

fn upstream_velocity(h0: f64, problem: &DamProblem) -> Result<(f64, f64)> {
    let l = problem.left;
    let (u0, c1) = u0_and_c1(h0, l.h(), l.u(), problem.gravity())?;
    // u0 is only negative past h_under; rounding at h_under itself is clamped.
    let tiny = 1e-12 * (1.0 + l.u());
    let u0 = if u0 < 0.0 && u0 > -tiny { 0.0 } else { u0 };
    Ok((u0, c1))
}

/// `r(h0) = ∛(h0² u0²/g) - h0 + [b]`; the cube-root connection is entropic iff `r <= 0`.
pub fn r_of_h0(h0: f64, problem: &DamProblem) -> Result<f64> {
    let (u0, _) = upstream_velocity(h0, problem)?;
    Ok(critical_depth(h0, u0, problem.step.g()) - h0 + problem.step.jump())
}

/// Root of the decreasing function `r` in `(h_tilde, h_under]`, if `r(h_tilde) > 0`.
///
/// Returns the upper end of the final bracket, so `r(h_hat) <= 0`.
pub fn hat_h(problem: &DamProblem, h_tilde: f64, h_under: f64) -> Result<Option<f64>> {
    let r = |h: f64| r_of_h0(h, problem);
    if r(h_tilde)? <= 0.0 {
        return Ok(None);
    }
    if r(h_under)? > 0.0 {
        // Only when [b] > h_under; callers handle that regime before asking.
        return Ok(None);
    }
    let (mut lo, mut hi) = (h_tilde, h_under);
    while hi - lo > HAT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if r(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

pub fn feasible_interval(problem: &DamProblem) -> Result<FeasibleInterval> {
    let l = problem.left;
    let g = problem.gravity();
    let h_tilde = tilde_h(l.h(), l.u(), g);
    let h_under = underline_h(l.h(), l.u(), g);
    let h_hat = if h_under >= problem.step.jump() { hat_h(problem, h_tilde, h_under)? } else { None };
    Ok(FeasibleInterval { h_tilde, h_under, h_hat })
}

/// `H~(h) = -c1(h) (η(h, u0(h)) - η(h_l, u_l))`, the shock part of `E`.
pub fn shock_energy_term(h0: f64, problem: &DamProblem) -> Result<f64> {
    let (u0, c1) = upstream_velocity(h0, problem)?;
    let g = problem.gravity();
    let b0 = problem.step.b0();
    let up = State::new(h0, u0)?;
    Ok(-c1 * (eta(&up, b0, g) - eta(&problem.left, b0, g)))
}

/// Connection at `h0` on `branch`, with the upstream velocity from the shock curve.
pub fn connection_at(h0: f64, branch: Branch, problem: &DamProblem) -> Result<Connection> {
    let (u0, _) = upstream_velocity(h0, problem)?;
    if u0 < 0.0 {
        return Err(Error::domain(format!("h0 = {h0} is beyond h_under: u0 = {u0} < 0")));
    }
    connect_on_branch(h0, u0, &problem.step, branch.connection_branch())
}

/// Energy production `E(h0)` with the downstream depth fixed by `branch`.
pub fn energy_e(h0: f64, branch: Branch, problem: &DamProblem) -> Result<f64> {
    let l = problem.left;
    let g = problem.gravity();
    let h_tilde = tilde_h(l.h(), l.u(), g);
    let h_under = underline_h(l.h(), l.u(), g);
    let slack = 1e-12 * h_under.max(1.0);
    if !(h0 >= h_tilde - slack && h0 <= h_under + slack) {
        return Err(Error::domain(format!("h0 = {h0} outside [{h_tilde}, {h_under}]")));
    }
    let conn = connection_at(h0, branch, problem)?;
    Ok(shock_energy_term(h0, problem)? + flux_q(&conn.right, problem.step.b1(), g))
}

fn minimize_branch(problem: &DamProblem, branch: Branch, lo: f64, hi: f64) -> Option<(f64, f64)> {
    scan_and_refine(|h| energy_e(h, branch, problem).unwrap_or(f64::NAN), lo, hi, SCAN_POINTS)
}

/// Solves the dam-break problem.
pub fn solve_dam(problem: &DamProblem) -> Result<DamOutcome> {
    let l = problem.left;
    let g = problem.gravity();
    let jump = problem.step.jump();
    let h_under = underline_h(l.h(), l.u(), g);

    if h_under < jump - REGIME_TOL {
        return Ok(DamOutcome::NoFlow(NoFlow {
            problem: *problem,
            reason: NoFlowReason::JumpExceedsHbar,
            h_under,
            rest: None,
        }));
    }
    if (h_under - jump).abs() <= REGIME_TOL {
        let (_, c1) = u0_and_c1(h_under, l.h(), l.u(), g)?;
        return Ok(DamOutcome::NoFlow(NoFlow {
            problem: *problem,
            reason: NoFlowReason::RestState,
            h_under,
            rest: Some((State::new(h_under, 0.0)?, c1)),
        }));
    }

    let interval = feasible_interval(problem)?;
    let m1_lo = interval.h_hat.map_or(interval.h_tilde, |hh| hh.max(interval.h_tilde));
    let (h_m, m1) = minimize_branch(problem, Branch::M1, m1_lo, interval.h_under)
        .ok_or_else(|| Error::domain("cube-root branch has no feasible point"))?;
    let m2 = interval
        .h_hat
        .and_then(|hh| minimize_branch(problem, Branch::M2, interval.h_tilde, hh));

    let (branch, h0, energy, tie) = match m2 {
        Some((h_n, e2)) if e2 < m1 - TIE_TOL * (1.0 + m1.abs()) => (Branch::M2, h_n, e2, false),
        Some((_, e2)) if (e2 - m1).abs() <= TIE_TOL * (1.0 + m1.abs()) => (Branch::M1, h_m, m1, true),
        _ => (Branch::M1, h_m, m1, false),
    };

    let (u0, c1) = upstream_velocity(h0, problem)?;
    let connection = connection_at(h0, branch, problem)?;
    let right = connection.right;
    let c_right = (g.value() * right.h()).sqrt();
    let left_pattern = classify_left(l.h(), l.u(), h0, u0, g)?;

    Ok(DamOutcome::Flow(DamSolution {
        problem: *problem,
        upstream: State::new(h0, u0)?,
        c1,
        connection,
        u_m: right.u() + 2.0 * c_right,
        u_m_single: right.u() + c_right,
        branch,
        energy,
        m1,
        m2: m2.map(|(_, e)| e),
        tie,
        interval,
        left_pattern,
    }))
}
