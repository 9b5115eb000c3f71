//! The closed forms re-derived in 256-bit fixed point.
//!
//! `R±`, the quadruple and the transfer-matrix ratios are recomputed from
//! `ω` alone with [`Fixed`] arithmetic, then tested against the identities
//! they must satisfy. Vanishing identities are held to `1e-40`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracle::fixed::{Fixed, FixedComplex};
use crate::oracle::Fault;
use crate::spectrum::{r_minus, r_plus, DefectParameter};

pub const IDENTITY_TOL: f64 = 1e-40;
/// Allowed gap between the double-precision `R±` and the extended values.
pub const DOUBLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// `value` is an error magnitude and must stay below `tolerance`.
    Vanishes,
    /// `value` must be strictly positive.
    Positive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub kind: CheckKind,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityCheck {
    fn vanishes(name: impl Into<String>, error: &Fixed, tolerance: f64) -> Self {
        let value = error.to_f64();
        Self {
            name: name.into(),
            kind: CheckKind::Vanishes,
            value,
            tolerance,
            passed: *error < tolerance,
        }
    }

    fn positive(name: impl Into<String>, v: &Fixed) -> Self {
        Self {
            name: name.into(),
            kind: CheckKind::Positive,
            value: v.to_f64(),
            tolerance: 0.0,
            passed: v.signum() > 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HighPrecReport {
    pub omega: f64,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

impl HighPrecReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn highprec_check(omega: DefectParameter) -> Result<HighPrecReport> {
    highprec_check_with(omega, None)
}

struct Radicals {
    r_plus: Fixed,
    r_minus: Fixed,
    /// `(ω-1)⁴ + (ω²-ω+1)²`
    quartic: Fixed,
    /// `4(ω-½)² + 1`
    denom: Fixed,
}

fn radicals(w: &Fixed, fault: Option<Fault>) -> Result<Radicals> {
    let one = Fixed::from_int(1);
    let wm1 = w - &one;
    let q = &(&w.square() - w) + &one;
    let quartic = &wm1.square().square() + &q.square();
    let inner = (&w.square() * &quartic).sqrt()?;
    let half = one.half();
    let denom = &(&Fixed::from_int(4) * &(w - &half).square()) + &one;
    let lead = &(w * &wm1) * &wm1;
    let r_plus = (&(&lead + &inner) / &denom).sqrt()?;
    let r_minus = match fault {
        Some(Fault::RMinusSign) => r_plus.clone(),
        None => (&(&inner - &lead) / &denom).sqrt()?,
    };
    Ok(Radicals {
        r_plus,
        r_minus,
        quartic,
        denom,
    })
}

/// `κ₊(λ) = (-λ + λ⁻¹ + √(λ² + λ⁻²))/√2` and the root itself.
fn kappa_plus(lambda: &FixedComplex, sqrt2: &Fixed) -> Result<(FixedComplex, FixedComplex)> {
    let inv = lambda.inv()?;
    let root = lambda.mul(lambda).add(&inv.mul(&inv)).sqrt()?;
    let num = lambda.neg().add(&inv).add(&root);
    Ok((FixedComplex::new(&num.re / sqrt2, &num.im / sqrt2), root))
}

pub fn highprec_check_with(omega: DefectParameter, fault: Option<Fault>) -> Result<HighPrecReport> {
    let omega = omega.require_defect()?;
    let w = Fixed::from_f64(omega.value())?;
    let sgn = Fixed::from_int(if omega.value() > 0.0 { 1 } else { -1 });
    let one = Fixed::from_int(1);
    let two = Fixed::from_int(2);
    let sqrt2 = two.sqrt()?;
    let Radicals {
        r_plus: rp,
        r_minus: rm,
        quartic,
        denom,
    } = radicals(&w, fault)?;
    let mut checks = Vec::new();

    // double-precision R± against the extended ones
    checks.push(IdentityCheck::vanishes(
        "r-plus-double",
        &(&rp - &Fixed::from_f64(r_plus(omega))?).abs(),
        DOUBLE_TOL,
    ));
    checks.push(IdentityCheck::vanishes(
        "r-minus-double",
        &(&rm - &Fixed::from_f64(r_minus(omega))?).abs(),
        DOUBLE_TOL,
    ));

    // (ω-1)⁴ + (ω²-ω+1)² = (ω²-2ω+2)(2ω²-2ω+1)
    let a = &(&w.square() - &(&two * &w)) + &two;
    let b = &(&(&two * &w.square()) - &(&two * &w)) + &one;
    checks.push(IdentityCheck::vanishes(
        "quartic-factorization",
        &(&quartic - &(&a * &b)).abs(),
        IDENTITY_TOL,
    ));

    // R₋² + R₊² = sgn(ω)·ω·√(a/b)
    let modulus_sqr = &(&sgn * &w) * &(&a / &b).sqrt()?;
    checks.push(IdentityCheck::vanishes(
        "modulus-identity",
        &(&(&rp.square() + &rm.square()) - &modulus_sqr).abs(),
        IDENTITY_TOL,
    ));

    // R₊R₋ = |ω(ω²-ω+1)| / (4(ω-½)²+1)
    let q = &(&w.square() - &w) + &one;
    checks.push(IdentityCheck::vanishes(
        "product-identity",
        &(&(&rp * &rm) - &(&(&w * &q).abs() / &denom)).abs(),
        IDENTITY_TOL,
    ));

    // sign inequality needed for the candidate roots to satisfy the equation
    let ineq = &(&w - &one) * &(&(&(&sgn * &w.square()) * &a.sqrt()?) - &b.sqrt()?);
    checks.push(IdentityCheck::positive("sign-inequality", &ineq));

    let l1 = FixedComplex::new(rm.clone(), rp.clone());
    let quad = [
        l1.clone(),
        FixedComplex::new(-&rm, rp.clone()),
        l1.neg(),
        l1.conj(),
    ];
    let wc = FixedComplex::real(w.clone());
    for (k, lambda) in quad.iter().enumerate() {
        let index = k + 1;
        let plus_family = !lambda.re.is_negative();
        let upper = lambda.im.signum() * sgn.signum() > 0;
        let s = if upper { one.clone() } else { -&one };
        let (kappa, root) = kappa_plus(lambda, &sqrt2)?;
        let inv = lambda.inv()?;
        let tail = lambda.sub(&inv);
        let (ratio, expected, rhs, name) = if plus_family {
            // Λ₁ = (ω/λ)κ₊ = (-1 - s·i)/√2
            let ratio = wc.div(lambda)?.mul(&kappa);
            let expected = FixedComplex::new(-&one, -&s).scale(&sqrt2.recip()?);
            let lead = FixedComplex::new(-&one, -&s).mul(lambda).div(&wc)?;
            (ratio, expected, lead.add(&tail), "ratio-plus")
        } else {
            // Λ₂ = (λ/ω)κ₊ = (1 + s·i)/√2
            let ratio = lambda.div(&wc)?.mul(&kappa);
            let expected = FixedComplex::new(one.clone(), s.clone()).scale(&sqrt2.recip()?);
            let lead = FixedComplex::new(one.clone(), s.clone())
                .mul(&wc)
                .div(lambda)?;
            (ratio, expected, lead.add(&tail), "ratio-minus")
        };
        checks.push(IdentityCheck::vanishes(
            format!("{name}-{index}"),
            &ratio.dist(&expected),
            IDENTITY_TOL,
        ));
        checks.push(IdentityCheck::vanishes(
            format!("root-equation-{index}"),
            &root.dist(&rhs),
            IDENTITY_TOL,
        ));
        checks.push(IdentityCheck::positive(
            format!("root-branch-{index}"),
            &rhs.re,
        ));
    }

    if omega.value() == -1.0 {
        // λ = (±3 ± i)/√10
        let sqrt10 = Fixed::from_int(10).sqrt()?;
        let re = &Fixed::from_int(3) / &sqrt10;
        let im = &one / &sqrt10;
        let err = &(&rm - &re).abs() + &(&rp - &im).abs();
        checks.push(IdentityCheck::vanishes(
            "rational-over-sqrt10",
            &err,
            IDENTITY_TOL,
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(HighPrecReport {
        omega: omega.value(),
        checks,
        passed,
    })
}
