//! Negative-speed wave patterns joining `(h_l, u_l)` to the upstream state
//! `(h0, u0)` at the step, for `u_l >= 0`.
//!
//! Only a single backward shock, or a backward shock followed by a forward
//! rarefaction, can stay on `x < 0`. Every pattern built from rarefactions
//! alone is ruled out for non-negative `u_l`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::bisect;
use crate::state::{Gravity, State};
use crate::wavecurves::{char_speeds, hugoniot_u, shock_speed, WaveFamily};

/// Boundary slack for the strict inequalities of the classification.
pub const CLASSIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    S1Only,
    S1ThenR2,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LeftWavePattern {
    S1Only { s1_speed: f64 },
    S1ThenR2 { intermediate: State, s1_speed: f64 },
    None,
}

impl LeftWavePattern {
    pub fn kind(&self) -> PatternKind {
        match self {
            LeftWavePattern::S1Only { .. } => PatternKind::S1Only,
            LeftWavePattern::S1ThenR2 { .. } => PatternKind::S1ThenR2,
            LeftWavePattern::None => PatternKind::None,
        }
    }

    pub fn s1_speed(&self) -> Option<f64> {
        match *self {
            LeftWavePattern::S1Only { s1_speed } | LeftWavePattern::S1ThenR2 { s1_speed, .. } => Some(s1_speed),
            LeftWavePattern::None => None,
        }
    }
}

/// Smallest `h0` for which the backward shock from `(h_l, u_l)` does not move right.
pub fn tilde_h(h_l: f64, u_l: f64, g: Gravity) -> f64 {
    let z = u_l * u_l / (g.value() * h_l);
    if z > 1.0 {
        h_l / 2.0 * ((1.0 + 8.0 * z).sqrt() - 1.0)
    } else {
        h_l
    }
}

/// Shock depth bound `(h_l/2)(√(1 + 8z) - 1)` without the `max` against `h_l`.
fn shock_stop_depth(h_l: f64, u_l: f64, g: Gravity) -> f64 {
    let z = u_l * u_l / (g.value() * h_l);
    h_l / 2.0 * ((1.0 + 8.0 * z).sqrt() - 1.0)
}

/// Velocity behind a single backward shock reaching depth `h0 >= h_l`.
pub fn s1_only_u0(h0: f64, h_l: f64, u_l: f64, g: Gravity) -> Result<f64> {
    let left = State::new(h_l, u_l)?;
    hugoniot_u(WaveFamily::One, h0, &left, g)
}

/// Decides which negative-speed pattern, if any, joins `(h_l, u_l)` to `(h0, u0)`.
pub fn classify_left(h_l: f64, u_l: f64, h0: f64, u0: f64, g: Gravity) -> Result<LeftWavePattern> {
    if u_l < 0.0 {
        return Err(Error::Unsupported(format!("left velocity must be non-negative, got {u_l}")));
    }
    if !(h_l > 0.0) || !(h0 > 0.0) {
        return Err(Error::domain("left and upstream depths must be positive"));
    }
    let left = State::new(h_l, u_l)?;
    let scale_h = h_l.max(h0).max(1.0);
    let scale_u = 1.0 + u_l.abs() + u0.abs() + (g.value() * scale_h).sqrt();
    let tol_h = CLASSIFY_TOL * scale_h;
    let tol_u = CLASSIFY_TOL * scale_u;

    if h0 < h_l - tol_h {
        return Ok(LeftWavePattern::None);
    }

    // Single S1, including the zero-strength limit h0 = h_l.
    let s1_u = hugoniot_u(WaveFamily::One, h0.max(h_l), &left, g)?;
    if (u0 - s1_u).abs() <= tol_u {
        let c = shock_speed(WaveFamily::One, h0.max(h_l), &left, g)?;
        let depth_ok = h0 >= shock_stop_depth(h_l, u_l, g) - tol_h;
        if depth_ok && c <= tol_u {
            return Ok(LeftWavePattern::S1Only { s1_speed: c });
        }
        return Ok(LeftWavePattern::None);
    }

    // S1 to (h*, u*) followed by an R2 up to (h0, u0); all speeds negative.
    let lambda2_0 = u0 + (g.value() * h0).sqrt();
    if !(h0 > h_l + tol_h) || !(u0 > s1_u) || !(lambda2_0 < 0.0) {
        return Ok(LeftWavePattern::None);
    }
    let sg = g.value().sqrt();
    let u0_through = |hs: f64| -> f64 {
        let us = hugoniot_u(WaveFamily::One, hs, &left, g).unwrap_or(f64::NAN);
        us - sg * hs.sqrt() + sg * h0.sqrt() - u0
    };
    // u0_through is decreasing in h*: positive at h_l (u0 < u_l + √g(√h0 - √h_l) as
    // λ2(h0,u0) < 0 <= u_l) and equal to s1_u - u0 < 0 at h0.
    let Some(hs) = bisect(u0_through, h_l, h0, 1e-14 * scale_h) else {
        return Ok(LeftWavePattern::None);
    };
    let us = hugoniot_u(WaveFamily::One, hs, &left, g)?;
    let intermediate = State::new(hs, us)?;
    let c = shock_speed(WaveFamily::One, hs, &left, g)?;
    let (_, lambda2_s) = char_speeds(&intermediate, g);
    if c <= tol_u && c <= lambda2_s + tol_u && lambda2_s <= lambda2_0 + tol_u {
        Ok(LeftWavePattern::S1ThenR2 { intermediate, s1_speed: c })
    } else {
        Ok(LeftWavePattern::None)
    }
}
