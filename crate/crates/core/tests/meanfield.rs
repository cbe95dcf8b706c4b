use depol_core::kernels::CutoffProfile;
use depol_core::meanfield::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn residual(s2: f64, input: &DispersionInput) -> f64 {
    dispersion(Complex64::new(s2, 0.0), input).unwrap().norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn roots_zero_the_dispersion_function(
        log_omega in 12.0f64..16.0,
        log_ratio in -1.0f64..1.0,
        density in 1e-3f64..10.0,
        varsigma in 0.0f64..5.0,
    ) {
        let omega = 10f64.powf(log_omega);
        let input = DispersionInput::new(omega, omega * 10f64.powf(log_ratio), density, varsigma).unwrap();
        let b = branch_frequencies(&input).unwrap();
        prop_assert!(b.s2_plus >= b.s2_minus);
        prop_assert!(residual(b.s2_plus, &input) <= 1e-10);
        prop_assert!(residual(b.s2_minus, &input) <= 1e-10);
        prop_assert_eq!(b.stable, b.s2_plus <= 0.0);
    }

    #[test]
    fn closed_form_matches_general_route(
        log_omega in 12.0f64..16.0,
        log_ratio in -1.0f64..1.0,
        density in 0.0f64..10.0,
    ) {
        let omega = 10f64.powf(log_omega);
        let input = DispersionInput::new(omega, omega * 10f64.powf(log_ratio), density, 2.0 * density / 3.0).unwrap();
        let a = branch_frequencies(&input).unwrap();
        let c = branch_frequencies_closed_form(&input).unwrap();
        let unit = input.frequency_unit();
        prop_assert!((a.s2_minus - c.s2_minus).abs() <= 1e-10 * a.s2_minus.abs());
        // the upper root passes through zero, so compare on the natural scale ωΩ there
        prop_assert!((a.s2_plus - c.s2_plus).abs() <= 1e-10 * a.s2_plus.abs().max(1e-6 * unit));
    }

    #[test]
    fn shift_is_linear_in_density(j in 0.0f64..1.0, g0 in 0.0f64..1.0, r in 0.0f64..20.0, scale in 0.0f64..5.0) {
        let c = ContactStrength { overlap: j, g_at_origin: g0 };
        let lhs = c.shift(scale * r).unwrap();
        let rhs = scale * c.shift(r).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs().max(1.0));
    }
}

#[test]
fn upper_branch_softens_and_crosses_at_criticality() {
    let profile = CutoffProfile::gaussian(2.5e-8).unwrap();
    let g = RadialDistribution::hard_step(0.02 * 2.5e-8).unwrap();
    let contact = ContactStrength::from_model(&g, &profile).unwrap();
    let nc = critical_density_ratio(&contact).unwrap();
    for log_ratio in [-1.5, 0.0, 1.5] {
        let omega = 2.4e15;
        let mode = omega * 10f64.powf(log_ratio);
        let mut previous = f64::NEG_INFINITY;
        let mut crossing = None;
        for i in 0..=400 {
            let r = 4.0 * i as f64 / 400.0;
            let b = branch_frequencies(&DispersionInput::self_consistent(omega, mode, r, &contact).unwrap()).unwrap();
            assert!(b.s2_plus > previous, "not increasing at r = {r}");
            if crossing.is_none() && previous <= 0.0 && b.s2_plus > 0.0 {
                crossing = Some(r);
            }
            previous = b.s2_plus;
        }
        let crossing = crossing.unwrap();
        assert!(crossing >= nc && crossing - nc <= 0.01 + 1e-12);
        let bisected = critical_density_by_bisection(&contact, omega, mode).unwrap();
        assert!((bisected - nc).abs() <= 1e-9 * nc);
    }
}

#[test]
fn bare_model_recovers_dicke_point() {
    let c = ContactStrength::none();
    assert_eq!(critical_density_ratio(&c).unwrap(), 1.0);
    let b = critical_density_by_bisection(&c, 1e15, 3e15).unwrap();
    assert!((b - 1.0).abs() <= 1e-9);
}

#[test]
fn classification_brackets_the_critical_ratio() {
    let contact = ContactStrength { overlap: 1.0, g_at_origin: 0.0 };
    let nc = critical_density_ratio(&contact).unwrap();
    assert!((nc - 3.0).abs() < 1e-15);
    for (r, stable) in [(0.5 * nc, true), (0.999 * nc, true), (1.001 * nc, false), (2.0 * nc, false)] {
        let b = branch_frequencies(&DispersionInput::self_consistent(1e15, 1e15, r, &contact).unwrap()).unwrap();
        assert_eq!(b.stable, stable, "r = {r}");
    }
}
