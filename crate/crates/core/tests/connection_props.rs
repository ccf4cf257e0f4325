use damstep::connection::{chi_bar, chi_of_h1, critical_depth, h1_candidates, optimal_connection};
use damstep::cubic::Cubic;
use damstep::{froude, BedStep, ConnectionBranch, Gravity};
use proptest::prelude::*;

/// Admissible upstream data: `y <= 1` and a step no higher than the saturated limit.
fn admissible() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.5f64..20.0, 0.05f64..10.0, 1e-3f64..1.0, 1e-3f64..1.0).prop_map(|(g, h0, y, frac)| {
        let u0 = (y * g * h0).sqrt();
        let jmax = h0 / 2.0 * (3.0 - (1.0 + 8.0 * y).sqrt());
        (g, h0, u0, (frac * jmax).max(1e-9))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn jump_relations_hold((g, h0, u0, jump) in admissible()) {
        let step = BedStep::new(0.0, jump, Gravity::new(g).unwrap()).unwrap();
        let c = optimal_connection(h0, u0, &step).unwrap();
        let (h1, u1) = (c.right.h(), c.right.u());
        prop_assert!((h1 * u1 - h0 * u0).abs() <= 1e-12 * (h0 * u0).max(1.0));
        let p1 = h1 * u1 * u1 + g * h1 * h1 / 2.0;
        let p0 = h0 * u0 * u0 + g * h0 * h0 / 2.0;
        let src = g * jump * c.chi;
        prop_assert!((p1 - p0 + src).abs() <= 1e-9 * p0.max(p1).max(src));
        let bound = chi_bar(h0, u0, &step).unwrap().chi_bar;
        prop_assert!(c.chi >= 0.0 && c.chi <= bound);
        prop_assert!(h1 + jump <= h0 + 1e-12);
        // The g-part of the energy flux does not grow across the step.
        prop_assert!(g * (u1 * h1 * (h1 + jump) - u0 * h0 * h0) <= 1e-9 * g * u0 * h0 * h0);
        let fr = froude(&c.right, step.gravity()).unwrap();
        match c.branch {
            ConnectionBranch::CubeRoot => prop_assert!((fr - 1.0).abs() <= 1e-10),
            ConnectionBranch::EntropySaturated => prop_assert!(fr >= 1.0 - 1e-10),
        }
    }

    #[test]
    fn returned_depth_minimizes_outgoing_flux((g, h0, u0, jump) in admissible()) {
        let step = BedStep::new(0.0, jump, Gravity::new(g).unwrap()).unwrap();
        let c = optimal_connection(h0, u0, &step).unwrap();
        let q = h0 * u0;
        let part = |h1: f64| g * q * (h1 + jump) + q * q * q / (2.0 * h1 * h1);
        let top = h0 - jump;
        let grid_min = (1..=4096)
            .map(|i| top * i as f64 / 4096.0)
            .filter(|&h1| chi_of_h1(h0, u0, h1, &step).unwrap() >= 0.0)
            .map(part)
            .fold(f64::INFINITY, f64::min);
        prop_assert!(part(c.right.h()) <= grid_min * (1.0 + 1e-12));
    }

    #[test]
    fn chi_bar_is_nonnegative(g in 0.5f64..20.0, h0 in 0.01f64..10.0, y in 0.0f64..5.0, jump in 0.01f64..3.0) {
        let step = BedStep::new(0.0, jump, Gravity::new(g).unwrap()).unwrap();
        let b = chi_bar(h0, (y * g * h0).sqrt(), &step).unwrap();
        prop_assert!(b.chi_bar >= 0.0);
    }

    #[test]
    fn candidates_solve_the_cubic((g, h0, u0, jump) in admissible(), frac in 0.0f64..1.0) {
        let step = BedStep::new(0.0, jump, Gravity::new(g).unwrap()).unwrap();
        let chi = frac * chi_bar(h0, u0, &step).unwrap().chi_bar;
        for h1 in h1_candidates(h0, u0, &step, chi).unwrap() {
            let back = chi_of_h1(h0, u0, h1, &step).unwrap();
            prop_assert!((back - chi).abs() <= 1e-7 * (1.0 + chi), "{back} vs {chi}");
        }
    }

    #[test]
    fn cubic_root_count_matches_discriminant(a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0) {
        let p = Cubic::new(1.0, a, b, c);
        let roots = p.real_roots();
        let d = p.discriminant();
        let scale = 1.0 + a.abs().powi(6) + b.abs().powi(3) + c.abs().powi(2);
        if d > 1e-6 * scale {
            prop_assert_eq!(roots.len(), 3);
        } else if d < -1e-6 * scale {
            prop_assert_eq!(roots.len(), 1);
        }
        for &r in &roots {
            prop_assert!(p.eval(r).abs() <= 1e-9 * p.term_magnitude(r).max(1.0));
        }
        prop_assert!(roots.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn saturated_branch_needs_small_flow_parameter() {
    let step = BedStep::new(0.0, 0.9, Gravity::STANDARD).unwrap();
    // y = 2: the cube-root depth exceeds h0 and saturation is impossible.
    let u0 = (2.0f64 * 9.81).sqrt();
    assert!(critical_depth(1.0, u0, 9.81) > 1.0);
    assert!(optimal_connection(1.0, u0, &step).is_err());
}
