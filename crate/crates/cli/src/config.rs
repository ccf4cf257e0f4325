use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    pub t: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub h_l: f64,
    pub u_l: f64,
    pub b0: f64,
    pub b1: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    #[serde(default)]
    pub sample: Option<SampleConfig>,
    #[serde(default)]
    pub epsilon: Option<f64>,
}

fn default_g() -> f64 {
    damstep::Gravity::STANDARD.value()
}

impl ProblemConfig {
    /// Reads and validates a config. Syntax and schema problems are parse
    /// errors; values out of range are domain errors.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ProblemConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Domain(msg));
        if !(self.h_l > 0.0) {
            return bad(format!("h_l must be positive, got {}", self.h_l));
        }
        if !(self.u_l > 0.0) {
            return bad(format!("u_l must be positive, got {}", self.u_l));
        }
        if !(self.b1 > self.b0) {
            return bad(format!("b1 must exceed b0, got b0 = {}, b1 = {}", self.b0, self.b1));
        }
        if !(self.g > 0.0) {
            return bad(format!("g must be positive, got {}", self.g));
        }
        if let Some(eps) = self.epsilon {
            if !(eps > 0.0) {
                return bad(format!("epsilon must be positive, got {eps}"));
            }
        }
        if let Some(s) = self.sample {
            if !(s.t > 0.0) {
                return bad(format!("sample.t must be positive, got {}", s.t));
            }
            if s.n == 0 || !(s.x_min <= s.x_max) || (s.n > 1 && s.x_min == s.x_max) {
                return bad("sample grid needs n >= 1 and x_min < x_max".to_string());
            }
        }
        Ok(())
    }

    pub fn problem(&self) -> Result<damstep::DamProblem, CliError> {
        damstep::DamProblem::new(self.h_l, self.u_l, self.b0, self.b1, self.g).map_err(CliError::from)
    }

    pub fn set(&mut self, key: Key, value: f64) {
        match key {
            Key::HL => self.h_l = value,
            Key::UL => self.u_l = value,
            Key::B0 => self.b0 = value,
            Key::B1 => self.b1 = value,
            Key::G => self.g = value,
        }
    }
}

/// Config fields a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Key {
    #[value(name = "h_l")]
    HL,
    #[value(name = "u_l")]
    UL,
    #[value(name = "b0")]
    B0,
    #[value(name = "b1")]
    B1,
    #[value(name = "g")]
    G,
}

impl Key {
    pub fn name(self) -> &'static str {
        match self {
            Key::HL => "h_l",
            Key::UL => "u_l",
            Key::B0 => "b0",
            Key::B1 => "b1",
            Key::G => "g",
        }
    }
}

/// A `xmin:xmax:n` sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.x_min];
        }
        let dx = (self.x_max - self.x_min) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i + 1 == self.n { self.x_max } else { self.x_min + dx * i as f64 })
            .collect()
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected xmin:xmax:n, got {s:?}"));
    };
    let x_min: f64 = a.trim().parse().map_err(|e| format!("bad xmin {a:?}: {e}"))?;
    let x_max: f64 = b.trim().parse().map_err(|e| format!("bad xmax {b:?}: {e}"))?;
    let n: usize = n.trim().parse().map_err(|e| format!("bad n {n:?}: {e}"))?;
    if !x_min.is_finite() || !x_max.is_finite() {
        return Err("grid bounds must be finite".to_string());
    }
    if n == 0 {
        return Err("grid needs at least one point".to_string());
    }
    if n > 1 && !(x_min < x_max) {
        return Err(format!("grid needs xmin < xmax, got {x_min}:{x_max}"));
    }
    Ok(Grid { x_min, x_max, n })
}
