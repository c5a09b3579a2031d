//! Complex arithmetic over `MPReal`, with the principal branch of the
//! logarithm: log z = log|z| + i·arg z, −π < arg z ≤ π.

use super::{guarded, MPError, MPReal};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number with matching-precision real and imaginary parts.
#[derive(Clone)]
pub struct MPComplex {
    re: MPReal,
    im: MPReal,
}

impl MPComplex {
    pub fn new(re: MPReal, im: MPReal) -> MPComplex {
        let prec = re.precision().max(im.precision());
        MPComplex { re: re.with_prec(prec), im: im.with_prec(prec) }
    }

    pub fn from_real(re: MPReal) -> MPComplex {
        let prec = re.precision();
        MPComplex { re, im: MPReal::zero(prec) }
    }

    pub fn zero(prec: u32) -> MPComplex {
        MPComplex { re: MPReal::zero(prec), im: MPReal::zero(prec) }
    }

    pub fn one(prec: u32) -> MPComplex {
        MPComplex { re: MPReal::from_i64(1, prec), im: MPReal::zero(prec) }
    }

    pub fn i(prec: u32) -> MPComplex {
        MPComplex { re: MPReal::zero(prec), im: MPReal::from_i64(1, prec) }
    }

    pub fn re(&self) -> &MPReal {
        &self.re
    }

    pub fn im(&self) -> &MPReal {
        &self.im
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> MPComplex {
        MPComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale_real(&self, s: &MPReal) -> MPComplex {
        MPComplex { re: &self.re * s, im: &self.im * s }
    }

    pub fn mul_i(&self) -> MPComplex {
        MPComplex { re: -&self.im, im: self.re.clone() }
    }

    /// |z| = √(re² + im²).
    pub fn abs(&self, prec: u32) -> MPReal {
        let wp = guarded(prec);
        let re = self.re.with_prec(wp);
        let im = self.im.with_prec(wp);
        (&(&re * &re) + &(&im * &im))
            .sqrt(prec)
            .expect("sum of squares is non-negative")
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self, prec: u32) -> MPReal {
        MPReal::atan2(&self.im, &self.re, prec)
    }

    /// Complex exponential.
    pub fn exp(&self, prec: u32) -> MPComplex {
        let wp = guarded(prec);
        let r = self.re.exp(wp);
        let (s, c) = self.im.sin_cos(wp);
        MPComplex { re: (&r * &c).with_prec(prec), im: (&r * &s).with_prec(prec) }
    }

    /// Principal logarithm: log|z| + i·arg z with −π < arg z ≤ π.
    /// Errors on z = 0.
    pub fn ln(&self, prec: u32) -> Result<MPComplex, MPError> {
        if self.is_zero() {
            return Err(MPError::LogDomain);
        }
        let wp = guarded(prec);
        let modulus = self.abs(wp);
        Ok(MPComplex {
            re: modulus.ln(prec)?,
            im: self.arg(prec),
        })
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, n: i64, prec: u32) -> MPComplex {
        if n == 0 {
            return MPComplex::one(prec);
        }
        let wp = prec + 2 * (64 - n.unsigned_abs().leading_zeros()) + 16;
        let mut base = MPComplex {
            re: self.re.with_prec(wp),
            im: self.im.with_prec(wp),
        };
        let mut acc = MPComplex::one(wp);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            acc = &MPComplex::one(wp) / &acc;
        }
        MPComplex {
            re: acc.re.with_prec(prec),
            im: acc.im.with_prec(prec),
        }
    }

    /// e^{2πi/n}, the primitive n-th root of unity.
    pub fn root_of_unity(n: u32, prec: u32) -> MPComplex {
        assert!(n >= 1, "root of unity order must be at least 1");
        let wp = guarded(prec);
        let theta = MPReal::pi(wp).mul_pow2(1).div_i64(n as i64);
        let (s, c) = theta.sin_cos(prec);
        MPComplex { re: c, im: s }
    }

    pub fn with_prec(&self, prec: u32) -> MPComplex {
        MPComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        if self.im.is_zero() {
            return self.re.to_decimal(digits);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        format!(
            "{} {} {}i",
            self.re.to_decimal(digits),
            sign,
            self.im.abs().to_decimal(digits)
        )
    }
}

impl MPReal {
    /// Principal arccosine in [0, π], computed through the complex
    /// logarithm: acos x = −i·log(x + i·√(1−x²)).
    pub fn acos(&self, prec: u32) -> Result<MPReal, MPError> {
        let wp = guarded(prec) + 8;
        let one = MPReal::from_i64(1, wp);
        let x = self.with_prec(wp);
        if x.abs() > one {
            return Err(MPError::AcosDomain);
        }
        // 1−x² as (1−x)(1+x) keeps accuracy near the endpoints
        let s = (&(&one - &x) * &(&one + &x)).sqrt(wp)?;
        let z = MPComplex::new(x, s);
        let w = z.ln(wp)?.mul_i();
        // −i·log z = arg − i·log|z| and |z| = 1, so the result is real
        debug_assert!(w.im().abs_below_pow2(-(prec as i64)));
        Ok((-w.re()).with_prec(prec))
    }
}

impl Add for &MPComplex {
    type Output = MPComplex;
    fn add(self, rhs: &MPComplex) -> MPComplex {
        MPComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &MPComplex {
    type Output = MPComplex;
    fn sub(self, rhs: &MPComplex) -> MPComplex {
        MPComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &MPComplex {
    type Output = MPComplex;
    fn mul(self, rhs: &MPComplex) -> MPComplex {
        MPComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div for &MPComplex {
    type Output = MPComplex;
    fn div(self, rhs: &MPComplex) -> MPComplex {
        assert!(!rhs.is_zero(), "division by complex zero");
        let d = &(&rhs.re * &rhs.re) + &(&rhs.im * &rhs.im);
        let num = self * &rhs.conj();
        MPComplex { re: &num.re / &d, im: &num.im / &d }
    }
}

impl Neg for &MPComplex {
    type Output = MPComplex;
    fn neg(self) -> MPComplex {
        MPComplex { re: -&self.re, im: -&self.im }
    }
}

macro_rules! owned_op {
    ($trait:ident, $method:ident) => {
        impl $trait for MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: MPComplex) -> MPComplex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MPComplex> for MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: &MPComplex) -> MPComplex {
                (&self).$method(rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
owned_op!(Div, div);

impl fmt::Display for MPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = 1 + (self.precision() as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for MPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(12))
    }
}
