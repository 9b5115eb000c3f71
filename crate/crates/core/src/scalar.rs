//! Complex scalars and the branch-consistent square root.
//!
//! Every square root in the crate goes through [`principal_sqrt`]: the branch
//! cut sits on the negative real axis and `√(-r) = i√r`. Signed zeros in the
//! imaginary part are normalized to `+0.0` on entry, so `-1 - 0i` also maps
//! to `+i`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

pub const I: ComplexScalar = Complex64::new(0.0, 1.0);

pub fn check_finite(z: ComplexScalar, what: &'static str) -> Result<ComplexScalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

#[inline]
fn clear_negative_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Square root with argument taken in `(-π, π]`, evaluated in polar form.
///
/// The result has `Re ≥ 0`, and `Im ≥ 0` whenever `Re = 0`.
pub fn principal_sqrt(z: ComplexScalar) -> Result<ComplexScalar> {
    let z = check_finite(z, "principal_sqrt")?;
    let (re, im) = (clear_negative_zero(z.re), clear_negative_zero(z.im));
    if re == 0.0 && im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let modulus = re.hypot(im).sqrt();
    let theta = im.atan2(re);
    if theta == std::f64::consts::PI {
        return Ok(Complex64::new(0.0, modulus));
    }
    let half = 0.5 * theta;
    Ok(Complex64::new(modulus * half.cos(), modulus * half.sin()))
}

/// Square root of `a + bi` from the Cartesian radicals
/// `√((a+|z|)/2) ± i√((-a+|z|)/2)`, with `+` iff `b ≥ 0`.
///
/// The smaller of the two radicals is recovered through
/// `√((a+|z|)/2)·√((-a+|z|)/2) = |b|/2`, which avoids cancellation when
/// `|b| ≪ |a|`.
pub fn sqrt_cartesian(a: f64, b: f64) -> Result<ComplexScalar> {
    check_finite(Complex64::new(a, b), "sqrt_cartesian")?;
    let (a, b) = (clear_negative_zero(a), clear_negative_zero(b));
    if a == 0.0 && b == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = a.hypot(b);
    let (re, im_mag) = if a >= 0.0 {
        let re = (0.5 * (a + r)).sqrt();
        (re, b.abs() / (2.0 * re))
    } else {
        let im = (0.5 * (r - a)).sqrt();
        (b.abs() / (2.0 * im), im)
    };
    let im = if b >= 0.0 { im_mag } else { -im_mag };
    Ok(Complex64::new(re, im))
}

/// `|a - b| ≤ tol · max(1, |a|, |b|)`.
pub fn approx_eq(a: ComplexScalar, b: ComplexScalar, tol: f64) -> bool {
    let scale = 1f64.max(a.norm()).max(b.norm());
    (a - b).norm() <= tol * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex64::new(re, im)
    }

    // The radicals exactly as written, no rearrangement.
    fn literal_radicals(a: f64, b: f64) -> ComplexScalar {
        let r = (a * a + b * b).sqrt();
        let re = ((a + r) / 2.0).sqrt();
        let im = ((-a + r) / 2.0).sqrt();
        if b >= 0.0 {
            c(re, im)
        } else {
            c(re, -im)
        }
    }

    #[test]
    fn principal_examples() {
        assert_eq!(principal_sqrt(c(-1.0, 0.0)).unwrap(), c(0.0, 1.0));
        assert_eq!(principal_sqrt(c(-1.0, -0.0)).unwrap(), c(0.0, 1.0));
        assert_eq!(principal_sqrt(c(4.0, 0.0)).unwrap(), c(2.0, 0.0));
        assert_eq!(principal_sqrt(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let w = principal_sqrt(c(0.0, 2.0)).unwrap();
        assert!((w - c(1.0, 1.0)).norm() < 1e-15);
        assert!((w - literal_radicals(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn cartesian_examples() {
        assert_eq!(sqrt_cartesian(-1.0, 0.0).unwrap(), c(0.0, 1.0));
        assert_eq!(sqrt_cartesian(0.0, 2.0).unwrap(), c(1.0, 1.0));
        let w = sqrt_cartesian(3.0, -4.0).unwrap();
        assert_eq!(w, c(2.0, -1.0));
        assert_eq!(w * w, c(3.0, -4.0));
        assert_eq!(literal_radicals(3.0, -4.0), c(2.0, -1.0));
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            principal_sqrt(c(f64::NAN, 0.0)),
            Err(Error::NonFinite("principal_sqrt"))
        );
        assert!(principal_sqrt(c(0.0, f64::INFINITY)).is_err());
        assert!(sqrt_cartesian(f64::NEG_INFINITY, 1.0).is_err());
    }

    #[test]
    fn negative_real_axis_takes_plus_i() {
        for r in [1e-300, 1e-8, 0.5, 2.0, 1e8, 1e300] {
            let p = principal_sqrt(c(-r, 0.0)).unwrap();
            let q = sqrt_cartesian(-r, -0.0).unwrap();
            assert_eq!(p.re, 0.0);
            assert!(p.im > 0.0);
            assert_eq!(p, q);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4096))]

        #[test]
        fn squares_back(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            prop_assume!(re != 0.0 || im != 0.0);
            let z = c(re, im);
            let w = principal_sqrt(z).unwrap();
            prop_assert!((w * w - z).norm() <= 1e-14 * z.norm());
            prop_assert!(w.re >= 0.0);
            if w.re == 0.0 {
                prop_assert!(w.im >= 0.0);
            }
        }

        #[test]
        fn two_formulations_agree(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            let p = principal_sqrt(c(re, im)).unwrap();
            let q = sqrt_cartesian(re, im).unwrap();
            prop_assert!((p - q).norm() <= 1e-14 * p.norm().max(f64::MIN_POSITIVE));
            prop_assert_eq!(p.im >= 0.0, q.im >= 0.0);
        }
    }
}
