//! Real roots of cubic polynomials.
//!
//! Roots come from the closed form (trigonometric when all three are real,
//! Cardano otherwise) and are then polished by Newton steps on the original
//! coefficients. Near-double roots are detected with a relative window on the
//! discriminant, so a tangency is reported as a repeated root rather than lost
//! to rounding.

use serde::{Deserialize, Serialize};

/// Polish tolerance relative to the size of the terms at the root.
pub const ROOT_TOL: f64 = 1e-12;

/// Relative discriminant window inside which two roots are treated as one double root.
pub const DOUBLE_ROOT_WINDOW: f64 = 1e-9;

const NEWTON_STEPS: usize = 3;

/// `c3 x³ + c2 x² + c1 x + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cubic {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Cubic {
    /// Panics if `c3` is zero or any coefficient is not finite.
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        assert!(c3 != 0.0, "leading coefficient of a cubic must be non-zero");
        assert!(
            [c3, c2, c1, c0].iter().all(|c| c.is_finite()),
            "cubic coefficients must be finite"
        );
        Cubic { c3, c2, c1, c0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    /// Sum of the absolute values of the terms at `x`; the natural scale of
    /// rounding error when evaluating the polynomial there.
    pub fn term_magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.c3.abs() * ax * ax * ax + self.c2.abs() * ax * ax + self.c1.abs() * ax + self.c0.abs()
    }

    /// Residual bound a polished root is expected to meet.
    pub fn tolerance_at(&self, x: f64) -> f64 {
        ROOT_TOL * self.term_magnitude(x).max(1.0)
    }

    /// Classical discriminant: positive for three distinct real roots,
    /// negative for one real root and a complex pair.
    pub fn discriminant(&self) -> f64 {
        let (a, b, c, d) = (self.c3, self.c2, self.c1, self.c0);
        18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c
            - 27.0 * a * a * d * d
    }

    /// All real roots in ascending order, repeated roots listed with multiplicity.
    pub fn real_roots(&self) -> Vec<f64> {
        // Monic x³ + a x² + b x + c, shifted to t³ + p t + q with x = t - a/3.
        let a = self.c2 / self.c3;
        let b = self.c1 / self.c3;
        let c = self.c0 / self.c3;
        let shift = a / 3.0;
        let p = b - a * a / 3.0;
        let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

        let half_q = q / 2.0;
        let third_p = p / 3.0;
        let disc = half_q * half_q + third_p * third_p * third_p;
        let scale = (half_q * half_q).max(third_p.abs().powi(3));

        let mut roots: Vec<f64> = if scale == 0.0 {
            vec![-shift; 3]
        } else if disc > DOUBLE_ROOT_WINDOW * scale {
            let sq = disc.sqrt();
            // Pick the sign that avoids cancellation.
            let big = (-half_q - sq.copysign(half_q)).cbrt();
            let t = if big == 0.0 { 0.0 } else { big - third_p / big };
            vec![t - shift]
        } else if p >= 0.0 {
            // Only reachable with disc ~ 0 and p ~ 0: a triple root.
            vec![-shift; 3]
        } else {
            let m = 2.0 * (-third_p).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let two_pi_3 = 2.0 * std::f64::consts::PI / 3.0;
            (0..3).map(|k| m * (theta - two_pi_3 * k as f64).cos() - shift).collect()
        };

        for r in roots.iter_mut() {
            *r = self.polish(*r);
        }
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        roots
    }

    /// Largest real root strictly above `lo`, if any.
    pub fn largest_root_above(&self, lo: f64) -> Option<f64> {
        self.real_roots().into_iter().rfind(|&r| r > lo)
    }

    fn polish(&self, mut x: f64) -> f64 {
        for _ in 0..NEWTON_STEPS {
            let fx = self.eval(x);
            if fx == 0.0 {
                break;
            }
            let dfx = self.derivative(x);
            if dfx == 0.0 || !dfx.is_finite() {
                break;
            }
            let next = x - fx / dfx;
            if !next.is_finite() || self.eval(next).abs() >= fx.abs() {
                break;
            }
            x = next;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Sign-change bisection on the polynomial, used as the independent oracle.
    fn bisect(c: &Cubic, mut lo: f64, mut hi: f64) -> f64 {
        let mut flo = c.eval(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = c.eval(mid);
            if (fm > 0.0) == (flo > 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn eq_f(hl: f64, ul: f64, g: f64) -> Cubic {
        Cubic::new(1.0, -hl, -(hl * hl + 2.0 / g * ul * ul * hl), hl * hl * hl)
    }

    fn assert_roots(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn factored_examples() {
        assert_roots(&Cubic::new(1.0, 0.0, -1.0, 0.0).real_roots(), &[-1.0, 0.0, 1.0], 1e-14);
        assert_roots(&Cubic::new(1.0, 0.0, -3.0, 2.0).real_roots(), &[-2.0, 1.0, 1.0], 1e-7);
        assert_roots(&Cubic::new(2.0, -6.0, 6.0, -2.0).real_roots(), &[1.0, 1.0, 1.0], 1e-12);
        assert_roots(&Cubic::new(1.0, 0.0, 0.0, 1.0).real_roots(), &[-1.0], 1e-14);
        assert_roots(&Cubic::new(1.0, 0.0, 0.0, 0.0).real_roots(), &[0.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn largest_root_thresholds() {
        let c = Cubic::new(1.0, 0.0, -1.0, 0.0);
        assert_eq!(c.largest_root_above(0.0), Some(1.0));
        assert_eq!(c.largest_root_above(2.0), None);
    }

    #[test]
    fn dam_cubic_matches_bisection() {
        let c = eq_f(1.0, 1.0, 9.81);
        let roots = c.real_roots();
        assert_eq!(roots.len(), 3);
        assert!(roots[0] < 0.0 && roots[1] > 0.0 && roots[1] < 1.0 && roots[2] > 1.0);
        // f(h_l) < 0 and f grows without bound, so [h_l, 12] brackets the top root here.
        let oracle = bisect(&c, 1.0, 12.0);
        let top = c.largest_root_above(1.0).unwrap();
        assert!((top - oracle).abs() < 1e-12);
        assert!((top - 1.341781).abs() < 1e-6);
        for r in roots {
            assert!(c.eval(r).abs() <= c.tolerance_at(r));
        }
    }
}
