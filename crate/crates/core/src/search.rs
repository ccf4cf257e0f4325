//! Scalar root bracketing and bounded minimization.

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping at width `tol`.
///
/// Returns `None` when the endpoints do not bracket a root.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[a, b]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimum of `f` over `[lo, hi]`: a uniform scan of `n` points followed by
/// golden-section refinement inside the best cell pair. Points where `f` is
/// not finite count as infeasible. Returns `None` if no scanned point is feasible.
pub fn scan_and_refine<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Option<(f64, f64)> {
    if hi <= lo {
        let v = f(lo);
        return v.is_finite().then_some((lo, v));
    }
    let n = n.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i + 1 == n { hi } else { lo + step * i as f64 };

    let mut best: Option<(usize, f64)> = None;
    for i in 0..n {
        let v = f(at(i));
        if v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
            best = Some((i, v));
        }
    }
    let (i, v) = best?;
    let (mut x_best, mut v_best) = (at(i), v);

    let a = at(i.saturating_sub(1));
    let b = at((i + 1).min(n - 1));
    let tol = 1e-13 * (1.0 + lo.abs().max(hi.abs()));
    let guarded = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            f64::INFINITY
        }
    };
    let (x, fx) = golden_section(guarded, a, b, tol);
    if fx < v_best {
        x_best = x;
        v_best = fx;
    }
    Some((x_best, v_best))
}
