//! The stationary shadow-wave connection across the bed step.
//!
//! A connection links `(h0, u0)` at `x = 0-` to `(h1, u1)` at `x = 0+` through a
//! zero-speed strip of depth `chi` and velocity 0. Mass flux is continuous,
//! `h1 u1 = h0 u0`, and the momentum jump is balanced by the bed source:
//!
//! ```text
//! h1 u1² + g h1²/2 - h0 u0² - g h0²/2 = -g [b] chi
//! ```
//!
//! Among the admissible `h1` the one minimizing the energy flux leaving the
//! strip is selected, subject to `h1 + b1 <= h0 + b0`.

use serde::{Deserialize, Serialize};

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::state::{flux_q, BedStep, State};

/// Slack on the surface-level inequality `h1 + b1 <= h0 + b0`.
pub const ENTROPY_TOL: f64 = 1e-12;

/// Relative slack used when snapping a computed chi into `[0, chi_bar]`.
const CHI_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectionBranch {
    /// `h1 = ∛(h0² u0² / g)`, the stationary point of the outgoing energy flux.
    CubeRoot,
    /// `h1 = h0 - [b]`, the surface-level constraint is active.
    EntropySaturated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    pub left: State,
    pub right: State,
    pub chi: f64,
    pub branch: ConnectionBranch,
    pub step: BedStep,
}

/// Upper bound on the strip depth and the flow parameter `y = u0²/(g h0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiBound {
    pub chi_bar: f64,
    pub y: f64,
}

fn flow_parameter(h0: f64, u0: f64, g: f64) -> f64 {
    u0 * u0 / (g * h0)
}

/// Strip depth that balances the momentum jump for the given `h1`. May be
/// negative; the caller decides what to do with that.
pub fn chi_of_h1(h0: f64, u0: f64, h1: f64, step: &BedStep) -> Result<f64> {
    if !(h0 > 0.0) {
        return Err(Error::domain(format!("h0 must be positive, got {h0}")));
    }
    if !(h1 > 0.0) {
        return Err(Error::domain(format!("h1 must be positive, got {h1}")));
    }
    let y = flow_parameter(h0, u0, step.g());
    let num = (1.0 + 2.0 * y) * h0 * h0 - h1 * h1 - 2.0 * y * h0 * h0 * h0 / h1;
    Ok(num / (2.0 * step.jump()))
}

/// `chi_bar = h0²/(2[b]) · (1 + 2y - 3 y^(2/3))`.
///
/// The factor in parentheses has minimum 0 at `y = 1`, so the bound is never
/// negative.
pub fn chi_bar(h0: f64, u0: f64, step: &BedStep) -> Result<ChiBound> {
    if !(h0 > 0.0) {
        return Err(Error::domain(format!("h0 must be positive, got {h0}")));
    }
    let y = flow_parameter(h0, u0, step.g());
    let factor = (1.0 + 2.0 * y - 3.0 * y.cbrt().powi(2)).max(0.0);
    Ok(ChiBound { chi_bar: h0 * h0 / (2.0 * step.jump()) * factor, y })
}

/// The cubic `x³ - A x + B` whose positive roots are the `h1` compatible with
/// the jump relations at strip depth `chi`.
pub fn h1_cubic(h0: f64, u0: f64, step: &BedStep, chi: f64) -> Cubic {
    let g = step.g();
    let a = h0 * h0 + 2.0 / g * h0 * u0 * u0 - 2.0 * step.jump() * chi;
    let b = 2.0 * h0 * h0 * u0 * u0 / g;
    Cubic::new(1.0, 0.0, -a, b)
}

/// Positive roots of the `h1` cubic, ascending.
pub fn h1_candidates(h0: f64, u0: f64, step: &BedStep, chi: f64) -> Result<Vec<f64>> {
    if !(chi >= 0.0) {
        return Err(Error::domain(format!("strip depth must be non-negative, got {chi}")));
    }
    let bound = chi_bar(h0, u0, step)?;
    if chi > bound.chi_bar * (1.0 + CHI_SNAP) + CHI_SNAP {
        return Err(Error::EmptyFeasible { chi, chi_bar: bound.chi_bar });
    }
    Ok(h1_cubic(h0, u0, step, chi).real_roots().into_iter().filter(|&r| r > 0.0).collect())
}

/// Surface-level condition `h1 <= h0 - [b]`.
pub fn entropy_ok(h0: f64, h1: f64, step: &BedStep) -> bool {
    h1 <= h0 - step.jump() + ENTROPY_TOL
}

/// Critical depth `∛(h0² u0² / g)`.
pub fn critical_depth(h0: f64, u0: f64, g: f64) -> f64 {
    (h0 * h0 * u0 * u0 / g).cbrt()
}

/// Whether a saturated connection `h1 = h0 - [b]` has a non-negative strip depth:
/// `y <= 1` and `[b] <= (h0/2)(3 - √(1 + 8y))`.
pub fn saturated_exists(h0: f64, u0: f64, step: &BedStep) -> bool {
    let y = flow_parameter(h0, u0, step.g());
    y <= 1.0 && step.jump() <= h0 / 2.0 * (3.0 - (1.0 + 8.0 * y).sqrt()) * (1.0 + 1e-12)
}

/// Builds the connection on a prescribed branch and checks it is admissible.
///
/// `u0 = 0` is allowed: the cube-root branch then gives the dry right state
/// `h1 = 0` with `chi = h0²/(2[b])`.
pub fn connect_on_branch(h0: f64, u0: f64, step: &BedStep, branch: ConnectionBranch) -> Result<Connection> {
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(Error::domain(format!("h0 must be positive, got {h0}")));
    }
    if !(u0 >= 0.0) || !u0.is_finite() {
        return Err(Error::domain(format!("u0 must be non-negative, got {u0}")));
    }
    let jump = step.jump();
    let g = step.g();
    let bound = chi_bar(h0, u0, step)?;

    let h1 = match branch {
        ConnectionBranch::CubeRoot => critical_depth(h0, u0, g),
        ConnectionBranch::EntropySaturated => {
            // Only where the cube-root depth breaks the surface condition;
            // elsewhere the saturated state is subcritical.
            let h1 = (h0 - jump).max(0.0);
            if !saturated_exists(h0, u0, step) || critical_depth(h0, u0, g) < h1 - ENTROPY_TOL {
                return Err(Error::NoEntropicConnection { h0, u0 });
            }
            h1
        }
    };
    if !entropy_ok(h0, h1, step) {
        return Err(Error::NoEntropicConnection { h0, u0 });
    }

    let (right, raw_chi) = if h1 == 0.0 {
        if u0 != 0.0 {
            return Err(Error::NoEntropicConnection { h0, u0 });
        }
        (State::VACUUM, h0 * h0 / (2.0 * jump))
    } else {
        (State::new(h1, h0 * u0 / h1)?, chi_of_h1(h0, u0, h1, step)?)
    };

    let slack = CHI_SNAP * (1.0 + bound.chi_bar);
    if raw_chi < -slack || raw_chi > bound.chi_bar + slack {
        return Err(Error::NoEntropicConnection { h0, u0 });
    }
    let chi = raw_chi.clamp(0.0, bound.chi_bar);

    Ok(Connection { left: State::new(h0, u0)?, right, chi, branch, step: *step })
}

/// The energy-production minimizing connection for the upstream state `(h0, u0)`.
///
/// The cube-root depth is taken when it satisfies the surface-level condition
/// (ties go to it); otherwise the condition is saturated, which requires
/// `y <= 1` and `[b] <= (h0/2)(3 - √(1 + 8y))`.
pub fn optimal_connection(h0: f64, u0: f64, step: &BedStep) -> Result<Connection> {
    if !(h0 >= step.jump()) {
        return Err(Error::domain(format!(
            "upstream depth {h0} must exceed the step height {}",
            step.jump()
        )));
    }
    if u0 > 0.0 && h0 == step.jump() {
        return Err(Error::domain("a moving upstream state needs h0 > [b]"));
    }
    let hbar = critical_depth(h0, u0, step.g());
    if entropy_ok(h0, hbar, step) {
        connect_on_branch(h0, u0, step, ConnectionBranch::CubeRoot)
    } else {
        connect_on_branch(h0, u0, step, ConnectionBranch::EntropySaturated)
    }
}

impl Connection {
    /// `Q(h1, u1; b1) - Q(h0, u0; b0)` in the zero-width limit of the strip.
    pub fn local_energy_production(&self) -> f64 {
        let g = self.step.gravity();
        flux_q(&self.right, self.step.b1(), g) - flux_q(&self.left, self.step.b0(), g)
    }
}

/// Free-function form of [`Connection::local_energy_production`].
pub fn local_energy_production(c: &Connection) -> f64 {
    c.local_energy_production()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{froude, Gravity};

    const U0_REF: f64 = 0.487_250_360_987_263;

    fn step(jump: f64) -> BedStep {
        BedStep::new(0.0, jump, Gravity::STANDARD).unwrap()
    }

    #[test]
    fn chi_of_h1_examples() {
        let s = step(0.2);
        assert!(chi_of_h1(1.3, 0.7, 1.3, &s).unwrap().abs() < 1e-12);
        let chi = chi_of_h1(1.0, 0.0, 0.6, &s).unwrap();
        assert!((chi - (1.0 - 0.36) / 0.4).abs() < 1e-15);
        assert!(chi_of_h1(1.0, 1.0, 0.0, &s).is_err());

        let hbar = critical_depth(1.17, U0_REF, 9.81);
        let chi = chi_of_h1(1.17, U0_REF, hbar, &s).unwrap();
        assert!((chi - 2.790197700).abs() < 1e-8);
        // Plug back into the h1 cubic.
        let c = h1_cubic(1.17, U0_REF, &s, chi);
        assert!(c.eval(hbar).abs() <= 1e-10);
    }

    #[test]
    fn chi_bar_examples() {
        let s = step(0.2);
        assert!((chi_bar(1.5, 0.0, &s).unwrap().chi_bar - 1.5 * 1.5 / 0.4).abs() < 1e-14);
        let critical = chi_bar(1.5, (9.81f64 * 1.5).sqrt(), &s).unwrap();
        assert!(critical.chi_bar.abs() < 1e-12);
        let b = chi_bar(1.17, U0_REF, &s).unwrap();
        assert!((b.chi_bar - 2.790197700).abs() < 1e-8);
    }

    #[test]
    fn h1_candidate_examples() {
        let s = step(0.2);
        assert_eq!(h1_candidates(1.3, 0.0, &s, 0.0).unwrap(), vec![1.3]);

        let roots = h1_candidates(1.17, U0_REF, &s, 1.0).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.06487456).abs() < 1e-7);
        assert!((roots[1] - 0.97868787).abs() < 1e-7);
        assert!(roots[0] < 0.58467387 && roots[1] > 0.58467387);

        let bar = chi_bar(1.17, U0_REF, &s).unwrap().chi_bar;
        let tangent = h1_candidates(1.17, U0_REF, &s, bar).unwrap();
        assert_eq!(tangent.len(), 2, "{tangent:?}");
        let x_e = critical_depth(1.17, U0_REF, 9.81);
        assert!((tangent[0] - x_e).abs() < 1e-6 && (tangent[1] - x_e).abs() < 1e-6);

        assert!(matches!(h1_candidates(1.17, U0_REF, &s, bar + 0.1), Err(Error::EmptyFeasible { .. })));
    }

    #[test]
    fn entropy_examples() {
        let s = step(0.2);
        assert!(entropy_ok(1.0, 0.5, &s));
        assert!(!entropy_ok(1.0, 0.9, &s));
        assert!(entropy_ok(1.17, 0.3212, &s));
    }

    #[test]
    fn optimal_connection_cube_root_case() {
        let s = step(0.2);
        let c = optimal_connection(1.17, U0_REF, &s).unwrap();
        assert_eq!(c.branch, ConnectionBranch::CubeRoot);
        assert!((c.right.h() - 0.3211705275).abs() < 1e-9);
        assert!((c.right.u() - 1.7750163028).abs() < 1e-9);
        assert!((c.chi - 2.790197700).abs() < 1e-8);
        assert!((froude(&c.right, Gravity::STANDARD).unwrap() - 1.0).abs() < 1e-12);
        assert!((c.local_energy_production() + 2.798184837).abs() < 1e-8);
    }

    #[test]
    fn optimal_connection_saturated_case() {
        // y = 0.05, critical depth ≈ 0.368 h0 > h0 - [b] once [b] is large.
        let s = step(0.7);
        let h0 = 1.0;
        let u0 = (0.05f64 * 9.81).sqrt();
        assert!(critical_depth(h0, u0, 9.81) > h0 - 0.7);
        let c = optimal_connection(h0, u0, &s).unwrap();
        assert_eq!(c.branch, ConnectionBranch::EntropySaturated);
        assert_eq!(c.right.h(), h0 - 0.7);
        assert!(c.chi >= 0.0 && c.chi <= chi_bar(h0, u0, &s).unwrap().chi_bar);
        assert!(froude(&c.right, Gravity::STANDARD).unwrap() >= 1.0);
    }

    #[test]
    fn supercritical_without_room_has_no_connection() {
        // y = 2 > 1: the critical depth exceeds h0 and saturation is infeasible.
        let s = step(0.2);
        let u0 = (2.0f64 * 9.81).sqrt();
        assert!(matches!(optimal_connection(1.0, u0, &s), Err(Error::NoEntropicConnection { .. })));
    }

    #[test]
    fn still_water_connection() {
        let s = step(0.4);
        let c = optimal_connection(1.0, 0.0, &s).unwrap();
        assert!(c.right.is_vacuum());
        assert!((c.chi - 1.0 / 0.8).abs() < 1e-15);
        assert_eq!(c.local_energy_production(), 0.0);
        assert!(optimal_connection(0.3, 0.1, &s).is_err());
    }

    #[test]
    fn zero_production_for_identical_states() {
        let s = step(0.2);
        let l = State::new(1.0, 0.5).unwrap();
        let c = Connection { left: l, right: l, chi: 0.0, branch: ConnectionBranch::CubeRoot, step: s };
        // Only the bed term g u h [b] survives.
        assert!((c.local_energy_production() - 9.81 * 0.5 * 0.2).abs() < 1e-14);
    }
}
