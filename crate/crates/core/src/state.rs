//! Point states, gravity, the bed step, and the energy density/flux pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gravitational acceleration in m/s².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gravity(f64);

impl Gravity {
    pub const STANDARD: Gravity = Gravity(9.81);

    pub fn new(g: f64) -> Result<Self> {
        if g.is_finite() && g > 0.0 {
            Ok(Gravity(g))
        } else {
            Err(Error::domain(format!("gravity must be positive and finite, got {g}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Gravity {
    fn default() -> Self {
        Gravity::STANDARD
    }
}

/// Flow depth and velocity at a point.
///
/// A zero depth is vacuum. The velocity passed in is kept (a dry front still
/// has a speed); field samplers report vacuum velocity as 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    h: f64,
    u: f64,
}

impl State {
    pub fn new(h: f64, u: f64) -> Result<Self> {
        if !h.is_finite() || !u.is_finite() {
            return Err(Error::domain(format!("non-finite state (h = {h}, u = {u})")));
        }
        if h < 0.0 {
            return Err(Error::NegativeDepth(h));
        }
        Ok(State { h, u })
    }

    pub const VACUUM: State = State { h: 0.0, u: 0.0 };

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn u(&self) -> f64 {
        self.u
    }

    #[inline]
    pub fn is_vacuum(&self) -> bool {
        self.h == 0.0
    }

    /// Discharge per unit width, h·u.
    #[inline]
    pub fn discharge(&self) -> f64 {
        self.h * self.u
    }
}

/// A single step in the bed at x = 0, rising from `b0` to `b1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BedStep {
    b0: f64,
    b1: f64,
    g: Gravity,
}

impl BedStep {
    pub fn new(b0: f64, b1: f64, g: Gravity) -> Result<Self> {
        if !b0.is_finite() || !b1.is_finite() {
            return Err(Error::domain("bed levels must be finite"));
        }
        if b1 <= b0 {
            return Err(Error::domain(format!(
                "bed must rise across the step (b0 = {b0}, b1 = {b1})"
            )));
        }
        Ok(BedStep { b0, b1, g })
    }

    #[inline]
    pub fn b0(&self) -> f64 {
        self.b0
    }

    #[inline]
    pub fn b1(&self) -> f64 {
        self.b1
    }

    /// Step height `b1 - b0`, always positive.
    #[inline]
    pub fn jump(&self) -> f64 {
        self.b1 - self.b0
    }

    #[inline]
    pub fn gravity(&self) -> Gravity {
        self.g
    }

    #[inline]
    pub fn g(&self) -> f64 {
        self.g.value()
    }
}

/// Energy density together with its flux at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyPair {
    pub eta: f64,
    pub q: f64,
}

impl EnergyPair {
    pub fn at(s: &State, b: f64, g: Gravity) -> Self {
        EnergyPair { eta: eta(s, b, g), q: flux_q(s, b, g) }
    }
}

/// Energy density `h u²/2 + g h²/2 + b h`.
pub fn eta(s: &State, b: f64, g: Gravity) -> f64 {
    let (h, u) = (s.h, s.u);
    h * u * u / 2.0 + g.value() * h * h / 2.0 + b * h
}

/// Energy flux `g u h (h + b) + h u³/2`.
pub fn flux_q(s: &State, b: f64, g: Gravity) -> f64 {
    let (h, u) = (s.h, s.u);
    g.value() * u * h * (h + b) + h * u * u * u / 2.0
}

/// Froude number `u / sqrt(g h)`.
pub fn froude(s: &State, g: Gravity) -> Result<f64> {
    if s.is_vacuum() {
        return Err(Error::domain("Froude number is undefined in vacuum"));
    }
    Ok(s.u / (g.value() * s.h).sqrt())
}
