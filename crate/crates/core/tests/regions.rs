use std::f64::consts::{FRAC_PI_4, PI};

use defectwalk_core::spectrum::{chi_pm, classify, distance_to_sigma, z_pm};
use defectwalk_core::{ComplexScalar, RegionLabel};
use proptest::prelude::*;

fn polar(r: f64, theta: f64) -> ComplexScalar {
    ComplexScalar::from_polar(r, theta)
}

fn on_sigma() -> impl Strategy<Value = ComplexScalar> {
    (FRAC_PI_4..3.0 * FRAC_PI_4, prop::bool::ANY)
        .prop_map(|(theta, lower)| polar(1.0, if lower { theta + PI } else { theta }))
}

/// Annulus points at least 1e-3 away from the unit-circle arcs and the imaginary axis.
fn off_sigma() -> impl Strategy<Value = ComplexScalar> {
    (0.05f64..5.0, -PI..PI)
        .prop_map(|(r, t)| polar(r, t))
        .prop_filter("clear of Σ and iℝ", |z| {
            distance_to_sigma(*z) > 1e-3 && z.re.abs() > 1e-3
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn roots_multiply_to_one(z in off_sigma()) {
        let (zp, zm) = z_pm(z).unwrap();
        prop_assert!((zp * zm - 1.0).norm() < 1e-13);
        // the pair must also reproduce the trace √2(λ + 1/λ) of the bulk step
        let trace = std::f64::consts::SQRT_2 * (z + z.inv());
        prop_assert!((zp + zm - trace).norm() < 1e-13 * trace.norm().max(1.0));
    }

    #[test]
    fn chirality_ratios_multiply_to_minus_one(z in off_sigma()) {
        let (cp, cm) = chi_pm(z).unwrap();
        prop_assert!((cp[1] * cm[1] + 1.0).norm() < 1e-13);
        let diff = std::f64::consts::SQRT_2 * (z.inv() - z);
        prop_assert!((cp[1] + cm[1] - diff).norm() < 1e-13 * diff.norm().max(1.0));
    }

    #[test]
    fn unit_modulus_on_sigma(z in on_sigma()) {
        let (zp, zm) = z_pm(z).unwrap();
        prop_assert!((zp.norm() - 1.0).abs() < 1e-10);
        prop_assert!((zp * zm - 1.0).norm() < 1e-13);
        prop_assert!(classify(z).unwrap().in_essential_spectrum());
    }

    #[test]
    fn modulus_dichotomy(z in off_sigma()) {
        let (zp, _) = z_pm(z).unwrap();
        match classify(z).unwrap() {
            RegionLabel::XiPlus => prop_assert!(zp.norm() > 1.0),
            RegionLabel::XiMinus => prop_assert!(zp.norm() < 1.0),
            other => prop_assert!(false, "{z} classified as {other}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn imaginary_axis(t in -5.0f64..5.0) {
        prop_assume!(t.abs() > 1e-3 && (t.abs() - 1.0).abs() > 1e-3);
        let z = ComplexScalar::new(0.0, t);
        let (zp, _) = z_pm(z).unwrap();
        let expected = if (-1.0 < t && t < 0.0) || t > 1.0 {
            RegionLabel::XiPlus
        } else {
            RegionLabel::XiMinus
        };
        prop_assert_eq!(classify(z).unwrap(), expected);
        match expected {
            RegionLabel::XiPlus => prop_assert!(zp.norm() > 1.0),
            _ => prop_assert!(zp.norm() < 1.0),
        }
    }
}

#[test]
fn right_half_plane_is_plus_region() {
    assert_eq!(
        classify(ComplexScalar::new(2.0, 0.3)).unwrap(),
        RegionLabel::XiPlus
    );
    assert_eq!(
        classify(ComplexScalar::new(-0.3, 0.1)).unwrap(),
        RegionLabel::XiMinus
    );
    assert_eq!(
        classify(polar(1.0, FRAC_PI_4)).unwrap(),
        RegionLabel::Sigma0
    );
}
