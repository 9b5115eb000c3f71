//! Binary fixed-point reals and complexes with 256 fractional bits
//! (about 77 decimal digits after the point).
//!
//! Only what the identity checks need: ring operations, division and square
//! roots. Products and quotients truncate, so every operation carries an
//! absolute error of a few units of `2^-256`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Float, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::ComplexScalar;

pub const FRAC_BITS: usize = 256;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Fixed(BigInt::from(n) << FRAC_BITS)
    }

    /// Exact: every finite double is a dyadic rational.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFinite("fixed-point conversion"));
        }
        let (mantissa, exponent, sign) = x.integer_decode();
        let mut raw = BigInt::from(mantissa);
        let shift = exponent as i64 + FRAC_BITS as i64;
        raw = if shift >= 0 {
            raw << shift as usize
        } else {
            raw >> (-shift) as usize
        };
        Ok(Fixed(if sign < 0 { -raw } else { raw }))
    }

    pub fn to_f64(&self) -> f64 {
        // scaling by a power of two is exact, so this rounds once
        self.0.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(FRAC_BITS as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Minus
    }

    pub fn signum(&self) -> i32 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Degenerate(
                "square root of a negative fixed-point value",
            ));
        }
        Ok(Fixed((&self.0 << FRAC_BITS).sqrt()))
    }

    pub fn recip(&self) -> Result<Self> {
        Fixed::from_int(1).checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Fixed) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Degenerate("fixed-point division by zero"));
        }
        Ok(Fixed((&self.0 << FRAC_BITS) / &rhs.0))
    }

    pub fn half(&self) -> Self {
        Fixed(&self.0 >> 1usize)
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({:e})", self.to_f64())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a> $trait<&'a Fixed> for &'a Fixed {
            type Output = Fixed;
            fn $method(self, rhs: &'a Fixed) -> Fixed {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait for Fixed {
            type Output = Fixed;
            fn $method(self, rhs: Fixed) -> Fixed {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Fixed(&a.0 + &b.0));
forward_binop!(Sub, sub, |a, b| Fixed(&a.0 - &b.0));
forward_binop!(Mul, mul, |a, b| Fixed((&a.0 * &b.0) >> FRAC_BITS));
// panics on zero like the integer operators; use `checked_div` otherwise
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("fixed-point division by zero"));

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-self.0)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedComplex {
    pub re: Fixed,
    pub im: Fixed,
}

impl FixedComplex {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        Self { re, im }
    }

    pub fn real(re: Fixed) -> Self {
        Self {
            re,
            im: Fixed::zero(),
        }
    }

    pub fn from_c64(z: ComplexScalar) -> Result<Self> {
        Ok(Self::new(Fixed::from_f64(z.re)?, Fixed::from_f64(z.im)?))
    }

    pub fn to_c64(&self) -> ComplexScalar {
        ComplexScalar::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn scale(&self, k: &Fixed) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn norm_sqr(&self) -> Fixed {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Result<Fixed> {
        self.norm_sqr().sqrt()
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(Self::new(
            self.re.checked_div(&d)?,
            (-&self.im).checked_div(&d)?,
        ))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Principal branch, `arg ∈ (-π, π]`.
    pub fn sqrt(&self) -> Result<Self> {
        let r = self.abs()?;
        if r.is_zero() {
            return Ok(Self::real(Fixed::zero()));
        }
        // take the large component from the well-conditioned radical
        if !self.re.is_negative() {
            let x = (&r + &self.re).half().sqrt()?;
            let y = self.im.checked_div(&(&x + &x))?;
            Ok(Self::new(x, y))
        } else {
            let y = (&r - &self.re).half().sqrt()?;
            let x = self.im.abs().checked_div(&(&y + &y))?;
            let y = if self.im.is_negative() { -y } else { y };
            Ok(Self::new(x, y))
        }
    }

    /// `|Δre| + |Δim|`, an upper bound on `|self - o|`. Squaring a difference
    /// near the resolution would underflow to zero, so the modulus is avoided.
    pub fn dist(&self, o: &Self) -> Fixed {
        let d = self.sub(o);
        &d.re.abs() + &d.im.abs()
    }
}

impl PartialOrd<f64> for Fixed {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        Fixed::from_f64(*other).ok().map(|o| self.cmp(&o))
    }
}

impl PartialEq<f64> for Fixed {
    fn eq(&self, other: &f64) -> bool {
        Fixed::from_f64(*other).map(|o| *self == o).unwrap_or(false)
    }
}
