use defectwalk_core::oracle::newton::find_eigenvalues_numeric;
use defectwalk_core::oracle::power::default_seed;
use defectwalk_core::oracle::{
    build_dense, dominant_eigenvalue, highprec_check, residual_decay, GridSpec,
};
use defectwalk_core::spectrum::{distance_to_sigma, eigenvalues};
use defectwalk_core::walk::apply_u;
use defectwalk_core::{ComplexScalar, DefectParameter, Family, RegionLabel, WaveFunction};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GRID: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.5, 0.9, 1.5, 2.0, 3.0];

fn om(w: f64) -> DefectParameter {
    DefectParameter::new(w).unwrap()
}

fn random_state(rng: &mut StdRng, window: usize) -> WaveFunction {
    WaveFunction::from_fn(window, |_| {
        (
            ComplexScalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ComplexScalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    })
    .unwrap()
}

#[test]
fn dense_matches_functional_operator() {
    let mut rng = StdRng::seed_from_u64(7);
    for (w, n) in [(2.0, 5), (-1.0, 12), (0.5, 1), (1.0, 8), (-3.0, 20)] {
        let op = build_dense(om(w), n).unwrap();
        for _ in 0..100 {
            let v = random_state(&mut rng, n);
            let a = op.apply(&v).unwrap();
            let b = apply_u(&v, om(w));
            let diff = a.combine(1.0.into(), &b, (-1.0).into()).unwrap();
            assert!(diff.norm() < 1e-14, "omega {w} window {n}");
        }
    }
}

#[test]
fn newton_roots_equal_closed_form() {
    for w in GRID {
        let numeric = find_eigenvalues_numeric(om(w), &GridSpec::default()).unwrap();
        let quad = eigenvalues(om(w)).unwrap();
        assert_eq!(numeric.roots.len(), 4, "omega {w}");
        for r in &numeric.roots {
            assert!(quad.nearest(r.root).1 < 1e-8, "omega {w}: {}", r.root);
            let want = match r.condition {
                Family::PlusFamily => RegionLabel::XiPlus,
                Family::MinusFamily => RegionLabel::XiMinus,
            };
            assert_eq!(r.region, Some(want));
        }
        for l in quad.lambdas {
            assert!(numeric.roots.iter().any(|r| (r.root - l).norm() < 1e-8));
        }
    }
}

#[test]
fn minus_one_roots_are_rational_over_sqrt10() {
    let numeric = find_eigenvalues_numeric(om(-1.0), &GridSpec::default()).unwrap();
    let (a, b) = (3.0 / 10f64.sqrt(), 1.0 / 10f64.sqrt());
    let mut signs: Vec<(bool, bool)> = numeric
        .roots
        .iter()
        .map(|r| (r.root.re > 0.0, r.root.im > 0.0))
        .collect();
    signs.sort();
    signs.dedup();
    assert_eq!(signs.len(), 4);
    for r in &numeric.roots {
        assert!((r.root.re.abs() - a).abs() < 1e-8);
        assert!((r.root.im.abs() - b).abs() < 1e-8);
    }
}

#[test]
fn roots_approach_coalescence_points_near_homogeneous() {
    let gap = |w: f64| {
        find_eigenvalues_numeric(om(w), &GridSpec::default())
            .unwrap()
            .roots
            .iter()
            .map(|r| distance_to_sigma(r.root))
            .fold(0.0, f64::max)
    };
    let (far, mid, near) = (gap(0.5), gap(0.9), gap(0.97));
    assert!(far > mid && mid > near, "{far} {mid} {near}");
    assert!(mid < 0.01);
}

#[test]
fn power_iteration_modulus() {
    let target = eigenvalues(om(2.0)).unwrap().lambdas[0].norm();
    let err = |n: usize| {
        let op = build_dense(om(2.0), n).unwrap();
        let est = dominant_eigenvalue(&op, &default_seed(op.dimension()), 2000).unwrap();
        (est.modulus - target).abs()
    };
    let (e16, e32, e64) = (err(16), err(32), err(64));
    assert!(e64 < 1e-6, "{e64}");
    assert!(e16 > e32 && e32 > e64, "{e16} {e32} {e64}");
}

#[test]
fn power_iteration_phase_does_not_settle() {
    let op = build_dense(om(2.0), 32).unwrap();
    let est = dominant_eigenvalue(&op, &default_seed(op.dimension()), 500).unwrap();
    assert!(!est.phase_settled);
    assert!(est.modulus_change < 1e-8);
}

#[test]
fn highprec_passes_on_grid() {
    for w in GRID {
        let r = highprec_check(om(w)).unwrap();
        assert!(r.passed, "omega {w}");
        for name in ["sign-inequality", "modulus-identity"] {
            assert!(r.get(name).unwrap().passed);
        }
    }
}

#[test]
fn residual_decay_on_grid() {
    for w in GRID {
        for index in 1..=4 {
            let fit = residual_decay(om(w), index, &[16, 32, 64, 128]).unwrap();
            assert!(fit.is_decreasing(), "omega {w} index {index}");
            assert!(fit.within(0.1), "omega {w} index {index}: {fit:?}");
        }
    }
}
