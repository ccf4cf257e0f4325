//! Shock and rarefaction curves of the flat-bed shallow-water system.
//!
//! All curves are parameterized by the depth `h` of the state reached from a
//! given `left` state. Rarefactions use the Riemann invariants `u ± 2√(gh)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Gravity, State};

/// Zero-strength waves are accepted when `h` misses `h_l` by at most this
/// much (relative to `max(1, h_l)`).
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveFamily {
    One,
    Two,
}

/// Characteristic speeds `(u - √(gh), u + √(gh))`.
pub fn char_speeds(s: &State, g: Gravity) -> (f64, f64) {
    let c = (g.value() * s.h()).sqrt();
    (s.u() - c, s.u() + c)
}

fn check_side(fam: WaveFamily, h: f64, left: &State, shock: bool) -> Result<()> {
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::domain(format!("wave curve depth must be finite and non-negative, got {h}")));
    }
    let hl = left.h();
    let slack = BOUNDARY_TOL * hl.max(1.0);
    // Shocks: S1 compresses (h > h_l), S2 expands. Rarefactions are the reverse.
    let wants_deeper = matches!((fam, shock), (WaveFamily::One, true) | (WaveFamily::Two, false));
    let ok = if wants_deeper { h >= hl - slack } else { h <= hl + slack };
    if ok {
        Ok(())
    } else {
        let kind = if shock { "shock" } else { "rarefaction" };
        Err(Error::domain(format!(
            "depth {h} lies on the wrong side of h_l = {hl} for a family-{} {kind}",
            match fam {
                WaveFamily::One => 1,
                WaveFamily::Two => 2,
            }
        )))
    }
}

/// Velocity on the Hugoniot locus through `left` at depth `h`.
pub fn hugoniot_u(fam: WaveFamily, h: f64, left: &State, g: Gravity) -> Result<f64> {
    check_side(fam, h, left, true)?;
    if h == 0.0 || left.is_vacuum() {
        return Err(Error::domain("shock curves need positive depths on both sides"));
    }
    let (hl, ul) = (left.h(), left.u());
    let s = (g.value() / 2.0 * (1.0 / h + 1.0 / hl)).sqrt();
    Ok(match fam {
        WaveFamily::One => ul - s * (h - hl),
        WaveFamily::Two => ul - s * (hl - h),
    })
}

/// Rankine–Hugoniot speed of the shock from `left` to depth `h`.
pub fn shock_speed(fam: WaveFamily, h: f64, left: &State, g: Gravity) -> Result<f64> {
    check_side(fam, h, left, true)?;
    if h == 0.0 || left.is_vacuum() {
        return Err(Error::domain("shock curves need positive depths on both sides"));
    }
    let (hl, ul) = (left.h(), left.u());
    let a = (g.value() * (h + hl) * h / (2.0 * hl)).sqrt();
    Ok(match fam {
        WaveFamily::One => ul - a,
        WaveFamily::Two => ul + a,
    })
}

/// Velocity on the rarefaction curve through `left` at depth `h`.
pub fn rarefaction_u(fam: WaveFamily, h: f64, left: &State, g: Gravity) -> Result<f64> {
    check_side(fam, h, left, false)?;
    let g = g.value();
    let jump = 2.0 * ((g * left.h()).sqrt() - (g * h).sqrt());
    Ok(match fam {
        WaveFamily::One => left.u() + jump,
        WaveFamily::Two => left.u() - jump,
    })
}

/// A centered rarefaction fan issued from `left`, with its Riemann invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanParams {
    pub family: WaveFamily,
    pub left: State,
    /// `u + 2√(gh)` for family 1, `u - 2√(gh)` for family 2.
    pub invariant: f64,
}

impl FanParams {
    pub fn new(family: WaveFamily, left: State, g: Gravity) -> Result<Self> {
        if left.is_vacuum() {
            return Err(Error::domain("a rarefaction fan cannot start from vacuum"));
        }
        let c = (g.value() * left.h()).sqrt();
        let invariant = match family {
            WaveFamily::One => left.u() + 2.0 * c,
            WaveFamily::Two => left.u() - 2.0 * c,
        };
        Ok(FanParams { family, left, invariant })
    }

    /// Speed of the fan edge attached to `left`.
    pub fn foot_speed(&self, g: Gravity) -> f64 {
        let (l1, l2) = char_speeds(&self.left, g);
        match self.family {
            WaveFamily::One => l1,
            WaveFamily::Two => l2,
        }
    }

    /// Admissible similarity range. Family 1 ends at the dry front `ξ = J`;
    /// family 2 is unbounded above since the far state is not stored.
    pub fn range(&self, g: Gravity) -> (f64, f64) {
        match self.family {
            WaveFamily::One => (self.foot_speed(g), self.invariant),
            WaveFamily::Two => (self.foot_speed(g), f64::INFINITY),
        }
    }
}

/// State inside the fan at similarity coordinate `xi = x/t`.
///
/// Family 1 uses `√(gh) = (J - ξ)/3`, `u = (J + 2ξ)/3`; at `ξ = J` the result
/// is vacuum.
pub fn fan_state(xi: f64, fp: &FanParams, g: Gravity) -> Result<State> {
    let (lo, hi) = fp.range(g);
    let slack = BOUNDARY_TOL * (1.0 + lo.abs().max(fp.invariant.abs()));
    if !(xi >= lo - slack && xi <= hi + slack) {
        return Err(Error::domain(format!("xi = {xi} lies outside the fan range [{lo}, {hi}]")));
    }
    let j = fp.invariant;
    let c = match fp.family {
        WaveFamily::One => ((j - xi) / 3.0).max(0.0),
        WaveFamily::Two => ((xi - j) / 3.0).max(0.0),
    };
    State::new(c * c / g.value(), (j + 2.0 * xi) / 3.0)
}
