//! Number formatting shared by the JSON and CSV writers.

use serde::Serialize;

use damstep::verify::ResidualReport;
use damstep::{Branch, DamOutcome, DamSolution, NoFlow, NoFlowReason};

/// Rounds to 12 significant digits. `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Plain decimal text of a value rounded to 12 significant digits.
pub fn fmt12(x: f64) -> String {
    let r = round12(x);
    let a = r.abs();
    if a != 0.0 && !(1e-6..1e16).contains(&a) {
        // Keep very small and very large values readable.
        let s = format!("{r:.11e}");
        let (mant, exp) = s.split_once('e').unwrap();
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        return format!("{mant}e{exp}");
    }
    format!("{r}")
}

pub fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::M1 => "M1",
        Branch::M2 => "M2",
    }
}

pub fn reason_name(r: NoFlowReason) -> &'static str {
    match r {
        NoFlowReason::JumpExceedsHbar => "jump_exceeds_hbar",
        NoFlowReason::RestState => "rest_state",
    }
}

#[derive(Debug, Serialize)]
pub struct IntervalOut {
    pub h_tilde: f64,
    pub h_under: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_hat: Option<f64>,
}

/// What `solve` prints.
#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub struct SolutionSummary {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    pub h0: Option<f64>,
    pub u0: Option<f64>,
    pub c1: Option<f64>,
    pub h1: Option<f64>,
    pub u1: Option<f64>,
    pub chi: Option<f64>,
    pub chi_bar: Option<f64>,
    pub u_m: Option<f64>,
    pub u_m_single: Option<f64>,
    pub froude_right: Option<f64>,
    pub branch: Option<&'static str>,
    #[serde(rename = "E")]
    pub energy: Option<f64>,
    pub m1: Option<f64>,
    pub m2: Option<f64>,
    pub tie_flag: bool,
    pub left_pattern: Option<&'static str>,
    pub interval: IntervalOut,
}

impl SolutionSummary {
    pub fn from_outcome(out: &DamOutcome) -> Self {
        match out {
            DamOutcome::Flow(s) => Self::flow(s),
            DamOutcome::NoFlow(nf) => Self::no_flow(nf),
        }
    }

    fn flow(s: &DamSolution) -> Self {
        let c = &s.connection;
        let g = s.problem.gravity();
        let step = s.problem.step();
        let chi_bar = damstep::connection::chi_bar(c.left.h(), c.left.u(), &step).ok().map(|b| round12(b.chi_bar));
        let r = |x: f64| Some(round12(x));
        SolutionSummary {
            status: "flow",
            reason: None,
            h0: r(s.upstream.h()),
            u0: r(s.upstream.u()),
            c1: r(s.c1),
            h1: r(c.right.h()),
            u1: r(if c.right.is_vacuum() { 0.0 } else { c.right.u() }),
            chi: r(c.chi),
            chi_bar,
            u_m: r(s.u_m),
            u_m_single: r(s.u_m_single),
            froude_right: damstep::froude(&c.right, g).ok().map(round12),
            branch: Some(branch_name(s.branch)),
            energy: r(s.energy),
            m1: r(s.m1),
            m2: s.m2.map(round12),
            tie_flag: s.tie,
            left_pattern: Some(match s.left_pattern.kind() {
                damstep::PatternKind::S1Only => "S1Only",
                damstep::PatternKind::S1ThenR2 => "S1ThenR2",
                damstep::PatternKind::None => "None",
            }),
            interval: IntervalOut {
                h_tilde: round12(s.interval.h_tilde),
                h_under: round12(s.interval.h_under),
                h_hat: s.interval.h_hat.map(round12),
            },
        }
    }

    fn no_flow(nf: &NoFlow) -> Self {
        let p = nf.problem;
        let l = p.left();
        let h_tilde = damstep::leftwaves::tilde_h(l.h(), l.u(), p.gravity());
        let rest = nf.rest;
        SolutionSummary {
            status: "no_flow",
            reason: Some(reason_name(nf.reason)),
            h0: rest.map(|(s, _)| round12(s.h())),
            u0: rest.map(|_| 0.0),
            c1: rest.map(|(_, c1)| round12(c1)),
            h1: rest.map(|_| 0.0),
            u1: rest.map(|_| 0.0),
            chi: None,
            chi_bar: None,
            u_m: None,
            u_m_single: None,
            froude_right: None,
            branch: None,
            energy: None,
            m1: None,
            m2: None,
            tie_flag: false,
            left_pattern: None,
            interval: IntervalOut { h_tilde: round12(h_tilde), h_under: round12(nf.h_under), h_hat: None },
        }
    }
}

/// What `verify` prints.
#[derive(Debug, Serialize)]
pub struct VerifyOut {
    pub status: &'static str,
    pub passed: bool,
    pub mass_flux: f64,
    pub momentum_source: f64,
    pub rankine_hugoniot_mass: Option<f64>,
    pub rankine_hugoniot_momentum: Option<f64>,
    pub chi_in_bounds: bool,
    pub entropy: bool,
    pub froude_right: Option<f64>,
    pub failures: Vec<String>,
}

impl VerifyOut {
    pub fn new(status: &'static str, r: &ResidualReport) -> Self {
        VerifyOut {
            status,
            passed: r.passed,
            mass_flux: round12(r.mass_flux),
            momentum_source: round12(r.momentum_source),
            rankine_hugoniot_mass: r.rankine_hugoniot.map(|d| round12(d.mass)),
            rankine_hugoniot_momentum: r.rankine_hugoniot.map(|d| round12(d.momentum)),
            chi_in_bounds: r.chi_in_bounds,
            entropy: r.entropy,
            froude_right: r.froude_right.map(round12),
            failures: r.failures.clone(),
        }
    }
}
