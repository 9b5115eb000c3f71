use defectwalk_core::spectrum::{
    classify_with, collinearity_factor, dependence_minus, dependence_plus, eigenvalues,
    eigenvector_by_index, modulus_sqr_identity, r_minus, r_plus, transfer_solution,
};
use defectwalk_core::walk::{apply_u, eigen_residual};
use defectwalk_core::{DefectParameter, EigenvectorProfile, Family, RegionLabel, Tolerances};
use proptest::prelude::*;

const GRID: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.5, 0.9, 1.5, 2.0, 3.0];

fn om(w: f64) -> DefectParameter {
    DefectParameter::new(w).unwrap()
}

fn defect_omega() -> impl Strategy<Value = f64> {
    prop_oneof![-20.0f64..-1e-3, 1e-3f64..20.0]
        .prop_filter("not homogeneous", |w| (w - 1.0).abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn quadruple_symmetry(w in defect_omega()) {
        let q = eigenvalues(om(w)).unwrap();
        let l1 = q.lambdas[0];
        prop_assert!((q.lambdas[1] + l1.conj()).norm() < 1e-14);
        prop_assert!((q.lambdas[2] + l1).norm() < 1e-14);
        prop_assert!((q.lambdas[3] - l1.conj()).norm() < 1e-14);
    }

    #[test]
    fn modulus_identity(w in defect_omega()) {
        let o = om(w);
        let lhs = r_plus(o).powi(2) + r_minus(o).powi(2);
        prop_assert!((lhs - modulus_sqr_identity(o)).abs() < 1e-12 * lhs.max(1.0));
    }

    #[test]
    fn off_the_unit_circle_unless_minus_one(w in defect_omega()) {
        prop_assume!((w + 1.0).abs() > 1e-3);
        // |λ|² - 1 is only cubic in ω - 1, so compare sides rather than a gap
        let m = eigenvalues(om(w)).unwrap().lambdas[0].norm();
        prop_assert!(m != 1.0);
        prop_assert_eq!(m > 1.0, w.abs() > 1.0);
    }

    #[test]
    fn eigenvalues_sit_in_the_right_region(w in defect_omega()) {
        // near ω = 1 the eigenvalues come within the default circle slack of Σ
        let exact = Tolerances { circle: 0.0, ..Tolerances::default() };
        let q = eigenvalues(om(w)).unwrap();
        for (b, l) in q.branches().iter().zip(q.lambdas) {
            let want = match b.family {
                Family::PlusFamily => RegionLabel::XiPlus,
                Family::MinusFamily => RegionLabel::XiMinus,
            };
            prop_assert_eq!(classify_with(l, &exact).unwrap(), want);
        }
    }

    #[test]
    fn dependence_vanishes_at_eigenvalues(w in defect_omega()) {
        let o = om(w);
        let q = eigenvalues(o).unwrap();
        for (b, l) in q.branches().iter().zip(q.lambdas) {
            let d = match b.family {
                Family::PlusFamily => dependence_plus(l, o).unwrap(),
                Family::MinusFamily => dependence_minus(l, o).unwrap(),
            };
            prop_assert!(d.det.norm() < 1e-9, "omega {} index {} det {}", w, b.index, d.det);
            prop_assert!(d.discrepancy() < 1e-9);
        }
    }
}

#[test]
fn minus_one_is_on_the_unit_circle() {
    let q = eigenvalues(om(-1.0)).unwrap();
    for l in q.lambdas {
        assert!((l.norm() - 1.0).abs() < 1e-15);
        assert!((l.re.abs() - 3.0 / 10f64.sqrt()).abs() < 1e-15);
        assert!((l.im.abs() - 1.0 / 10f64.sqrt()).abs() < 1e-15);
    }
}

#[test]
fn omega_two_reference_values() {
    let l = eigenvalues(om(2.0)).unwrap().lambdas[0];
    assert!((l.re - 0.6576135126604957).abs() < 1e-15);
    assert!((l.im - 0.912390010923879).abs() < 1e-15);
    assert!((l.norm() - 1.1246826503806981).abs() < 1e-15);
}

#[test]
fn collinearity_factor_is_the_defect_amplitude() {
    for w in GRID {
        for index in 1..=4 {
            let p = EigenvectorProfile::new(om(w), index).unwrap();
            let (gamma, misfit) = collinearity_factor(p.lambda, om(w), p.branch.family).unwrap();
            assert!(misfit < 1e-10, "omega {w} index {index}");
            assert!(
                (gamma - p.defect_amplitude).norm() < 1e-10,
                "omega {w} index {index}"
            );
        }
    }
}

#[test]
fn transfer_solution_solves_the_eigen_equation() {
    for w in GRID {
        for index in 1..=4 {
            let p = EigenvectorProfile::new(om(w), index).unwrap();
            // (JΨ)(0) = (Ψ_L(-1), Ψ_R(0))
            let seed = [1.0.into(), p.kappa];
            // forward iteration picks up the growing mode from roundoff, so
            // compare on a short window only
            let short = transfer_solution(p.lambda, om(w), seed, 6).unwrap();
            let closed = p.wave(6).unwrap();
            let diff = short.combine(1.0.into(), &closed, (-1.0).into()).unwrap();
            let rel = diff.norm() / closed.norm();
            assert!(rel < 1e-10, "omega {w} index {index}: {rel}");
            let psi = transfer_solution(p.lambda, om(w), seed, 24).unwrap();
            let r = eigen_residual(&psi, om(w), p.lambda);
            assert!(r.interior / psi.norm() < 1e-10);
        }
    }
}

#[test]
fn eigenvectors_have_small_interior_residual() {
    for w in GRID {
        let q = eigenvalues(om(w)).unwrap();
        for (index, l) in q.iter() {
            let psi = eigenvector_by_index(om(w), index, 64).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            let r = eigen_residual(&psi, om(w), l);
            assert!(
                r.interior < 1e-10,
                "omega {w} index {index}: {}",
                r.interior
            );
            let image = apply_u(&psi, om(w));
            assert!((image.get(0).1 - l * psi.get(0).1).norm() < 1e-12);
        }
    }
}
