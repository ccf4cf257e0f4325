//! Pointwise evaluation of self-similar dam-break fields.

use serde::{Deserialize, Serialize};

use crate::damsolver::{DamOutcome, DamSolution, NoFlow, NoFlowReason};
use crate::error::{Error, Result};
use crate::state::{eta, BedStep, Gravity, State};
use crate::wavecurves::{char_speeds, fan_state, FanParams, WaveFamily};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub h: f64,
    /// 0 in vacuum.
    pub u: f64,
    pub b: f64,
    /// True exactly at the bed step, where the right-hand limit is reported.
    pub interface: bool,
}

impl Sample {
    fn of(s: State, b: f64) -> Self {
        let u = if s.is_vacuum() { 0.0 } else { s.u() };
        Sample { h: s.h(), u, b, interface: false }
    }

    pub fn energy(&self, g: Gravity) -> f64 {
        // Sample states are valid by construction.
        let s = State::new(self.h, self.u).unwrap_or(State::VACUUM);
        eta(&s, self.b, g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum Piece {
    Constant(State),
    Fan(FanParams),
}

/// A region `lo <= x/t < hi` on one side of the step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Region {
    lo: f64,
    hi: f64,
    piece: Piece,
}

/// The solution `(h, u, b)(x, t)` as a list of similarity regions.
///
/// Left of the step the regions are ordered in `x/t` up to 0; right of it from
/// 0 upward. Constant-speed breakpoints make every region a wedge in `(x, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionField {
    step: BedStep,
    left_regions: Vec<Region>,
    right_regions: Vec<Region>,
    /// Strip depth of the connection, when there is one.
    chi: Option<f64>,
}

impl SolutionField {
    pub fn from_solution(sol: &DamSolution) -> Result<Self> {
        let p = sol.problem;
        let g = p.gravity();
        let right = sol.connection.right;
        let lambda1 = char_speeds(&right, g).0;
        let fan = FanParams::new(WaveFamily::One, right, g)?;
        Ok(SolutionField {
            step: p.step(),
            left_regions: vec![
                Region { lo: f64::NEG_INFINITY, hi: sol.c1, piece: Piece::Constant(p.left()) },
                Region { lo: sol.c1, hi: 0.0, piece: Piece::Constant(sol.upstream) },
            ],
            right_regions: vec![
                Region { lo: 0.0, hi: lambda1, piece: Piece::Constant(right) },
                Region { lo: lambda1, hi: sol.u_m, piece: Piece::Fan(fan) },
                Region { lo: sol.u_m, hi: f64::INFINITY, piece: Piece::Constant(State::VACUUM) },
            ],
            chi: Some(sol.connection.chi),
        })
    }

    /// Still water behind the step for `RestState`; the initial data otherwise.
    pub fn from_no_flow(nf: &NoFlow) -> Self {
        let p = nf.problem;
        let left_regions = match (nf.reason, nf.rest) {
            (NoFlowReason::RestState, Some((rest, c1))) => vec![
                Region { lo: f64::NEG_INFINITY, hi: c1, piece: Piece::Constant(p.left()) },
                Region { lo: c1, hi: 0.0, piece: Piece::Constant(rest) },
            ],
            _ => vec![Region { lo: f64::NEG_INFINITY, hi: 0.0, piece: Piece::Constant(p.left()) }],
        };
        let chi = nf.rest.map(|(rest, _)| rest.h() * rest.h() / (2.0 * p.step().jump()));
        SolutionField {
            step: p.step(),
            left_regions,
            right_regions: vec![Region {
                lo: 0.0,
                hi: f64::INFINITY,
                piece: Piece::Constant(State::VACUUM),
            }],
            chi,
        }
    }

    pub fn from_outcome(out: &DamOutcome) -> Result<Self> {
        match out {
            DamOutcome::Flow(sol) => Self::from_solution(sol),
            DamOutcome::NoFlow(nf) => Ok(Self::from_no_flow(nf)),
        }
    }

    pub fn gravity(&self) -> Gravity {
        self.step.gravity()
    }

    pub fn step(&self) -> BedStep {
        self.step
    }

    pub fn chi(&self) -> Option<f64> {
        self.chi
    }

    fn eval_piece(&self, piece: &Piece, xi: f64) -> Result<State> {
        match piece {
            Piece::Constant(s) => Ok(*s),
            Piece::Fan(fp) => fan_state(xi, fp, self.gravity()),
        }
    }

    /// `(h, u, b)` at `(x, t)`.
    pub fn sample(&self, x: f64, t: f64) -> Result<Sample> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("sampling time must be positive, got {t}")));
        }
        if !x.is_finite() {
            return Err(Error::domain("sampling position must be finite"));
        }
        if x == 0.0 {
            let first = &self.right_regions[0];
            let s = self.eval_piece(&first.piece, 0.0)?;
            return Ok(Sample { interface: true, ..Sample::of(s, self.step.b1()) });
        }
        let xi = x / t;
        let (regions, b) = if x < 0.0 {
            (&self.left_regions, self.step.b0())
        } else {
            (&self.right_regions, self.step.b1())
        };
        // Left regions are half-open on the right ([c1, 0) holds h0); the fan
        // is closed at both ends on the right side.
        let region = if x < 0.0 {
            regions.iter().find(|r| xi < r.hi).unwrap_or(regions.last().unwrap())
        } else {
            regions
                .iter()
                .find(|r| match r.piece {
                    Piece::Fan(_) => xi <= r.hi,
                    Piece::Constant(_) => xi < r.hi,
                })
                .unwrap_or(regions.last().unwrap())
        };
        let s = self.eval_piece(&region.piece, xi.clamp(region.lo, region.hi))?;
        Ok(Sample::of(s, b))
    }

    /// Positions at time `t` where the field is not smooth, ascending.
    pub fn breakpoints(&self, t: f64) -> Vec<f64> {
        let mut xs: Vec<f64> = self
            .left_regions
            .iter()
            .chain(&self.right_regions)
            .flat_map(|r| [r.lo * t, r.hi * t])
            .filter(|x| x.is_finite())
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = xs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * scale);
        xs
    }

    /// Like [`sample`](Self::sample) but inside the strip `(-εt/2, εt/2]` it
    /// returns the shadow-wave state `(chi, 0)` on a linear bed ramp from b0 to b1.
    pub fn shadow_sample(&self, x: f64, t: f64, epsilon: f64) -> Result<Sample> {
        if !(epsilon > 0.0) {
            return Err(Error::domain(format!("epsilon must be positive, got {epsilon}")));
        }
        let half = epsilon * t / 2.0;
        match self.chi {
            Some(chi) if x > -half && x <= half && t > 0.0 => {
                let frac = (x + half) / (epsilon * t);
                let b = self.step.b0() + self.step.jump() * frac;
                Ok(Sample { h: chi, u: 0.0, b, interface: false })
            }
            _ => self.sample(x, t),
        }
    }

    /// Shadow-wave profile at each abscissa.
    pub fn shadow_profile(&self, epsilon: f64, t: f64, xs: &[f64]) -> Result<Vec<(f64, Sample)>> {
        xs.iter().map(|&x| Ok((x, self.shadow_sample(x, t, epsilon)?))).collect()
    }
}

pub fn sample(sol: &DamSolution, x: f64, t: f64) -> Result<Sample> {
    SolutionField::from_solution(sol)?.sample(x, t)
}

pub fn shadow_profile(sol: &DamSolution, epsilon: f64, t: f64, xs: &[f64]) -> Result<Vec<(f64, Sample)>> {
    SolutionField::from_solution(sol)?.shadow_profile(epsilon, t, xs)
}
