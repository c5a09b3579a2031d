//! Arbitrary-precision real and complex arithmetic.
//!
//! `MPReal` is a binary floating-point value `mantissa · 2^exp` whose
//! mantissa is kept at exactly `prec` significant bits (round to nearest,
//! ties away from zero), so every primitive operation is accurate to
//! within one unit in the last place. Field operations return results at
//! the maximum of the input precisions; transcendental functions take an
//! explicit target precision and internally carry roughly 10% extra
//! working bits plus a constant guard, which keeps the documented 1-ulp
//! contract honest without interval arithmetic.
//!
//! There is no global state of any kind: precision travels with values
//! and arguments, and all functions are pure.

mod complex;
mod functions;
mod gamma;

pub use complex::MPComplex;
pub use gamma::{digamma_real, gamma_complex, gamma_real, GammaTable};


use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Errors surfaced by kernel operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MPError {
    /// log/ln of zero or of a negative real.
    LogDomain,
    /// Square or n-th root of a negative real.
    RootDomain,
    /// acos argument outside [−1, 1].
    AcosDomain,
    /// agm of a non-positive value.
    AgmDomain,
    /// Gamma evaluated at a non-positive integer (within resolution).
    GammaPole,
    /// Division by zero.
    DivisionByZero,
    /// Decimal parse failure; carries the offending text.
    Parse(String),
}

impl fmt::Display for MPError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MPError::LogDomain => write!(f, "logarithm of zero or negative real"),
            MPError::RootDomain => write!(f, "root of negative real"),
            MPError::AcosDomain => write!(f, "acos argument outside [-1, 1]"),
            MPError::AgmDomain => write!(f, "agm requires positive arguments"),
            MPError::GammaPole => write!(f, "gamma pole at non-positive integer"),
            MPError::DivisionByZero => write!(f, "division by zero"),
            MPError::Parse(s) => write!(f, "cannot parse decimal number from {s:?}"),
        }
    }
}

impl std::error::Error for MPError {}

/// Minimum representable precision in bits.
pub const MIN_PREC: u32 = 16;

/// Internal working precision for a requested target precision.
pub(crate) fn guarded(prec: u32) -> u32 {
    prec + prec / 8 + 32
}

/// An arbitrary-precision binary floating-point number.
///
/// Invariant: either `mant` is zero, or `2^(prec−1) ≤ |mant| < 2^prec`.
/// The represented value is `mant · 2^exp`.
#[derive(Clone)]
pub struct MPReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl MPReal {
    // ---- Construction ----

    pub(crate) fn normalized(mut mant: BigInt, mut exp: i64, prec: u32) -> MPReal {
        let prec = prec.max(MIN_PREC);
        if mant.is_zero() {
            return MPReal { mant, exp: 0, prec };
        }
        let bits = mant.magnitude().bits();
        let target = prec as u64;
        if bits > target {
            // round to nearest, ties away from zero, on the magnitude
            let shift = bits - target;
            let (sign, mut mag) = mant.into_parts();
            mag += num_bigint::BigUint::from(1u32) << (shift - 1);
            mag >>= shift;
            exp += shift as i64;
            // rounding can carry into one extra bit
            if mag.bits() > target {
                mag >>= 1;
                exp += 1;
            }
            mant = BigInt::from_biguint(sign, mag);
        } else if bits < target {
            let shift = target - bits;
            mant <<= shift;
            exp -= shift as i64;
        }
        MPReal { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> MPReal {
        MPReal { mant: BigInt::zero(), exp: 0, prec: prec.max(MIN_PREC) }
    }

    pub fn from_i64(v: i64, prec: u32) -> MPReal {
        MPReal::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> MPReal {
        MPReal::normalized(v.clone(), 0, prec)
    }

    /// Exact ratio of big integers rounded to `prec` bits.
    pub fn from_bigint_ratio(num: &BigInt, den: &BigInt, prec: u32) -> MPReal {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return MPReal::zero(prec);
        }
        let prec = prec.max(MIN_PREC);
        let nb = num.magnitude().bits() as i64;
        let db = den.magnitude().bits() as i64;
        let shift = (prec as i64 + 2 + db - nb).max(0) as u64;
        let q = (num << shift) / den;
        MPReal::normalized(q, -(shift as i64), prec)
    }

    pub fn from_rational(r: &crate::exact::Rational, prec: u32) -> MPReal {
        MPReal::from_bigint_ratio(r.numerator(), r.denominator(), prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> MPReal {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return MPReal::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), exponent - 1075)
        };
        MPReal::normalized(BigInt::from(sign * mant as i64), exp, prec)
    }

    // ---- Accessors ----

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// floor(log2 |x|) for x ≠ 0: the exponent of the leading bit.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.magnitude().bits() as i64 - 1)
        }
    }

    /// 2^k at the given precision.
    pub fn pow2(k: i64, prec: u32) -> MPReal {
        MPReal::normalized(BigInt::from(1), k, prec)
    }

    /// True when |self| < 2^k.
    pub fn abs_below_pow2(&self, k: i64) -> bool {
        match self.magnitude_exp() {
            None => true,
            Some(m) => m < k,
        }
    }

    // ---- Precision management ----

    /// Re-round to a (possibly different) precision.
    pub fn with_prec(&self, prec: u32) -> MPReal {
        MPReal::normalized(self.mant.clone(), self.exp, prec)
    }

    // ---- Arithmetic helpers ----

    pub fn abs(&self) -> MPReal {
        MPReal { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Exact multiplication by 2^k.
    pub fn mul_pow2(&self, k: i64) -> MPReal {
        if self.is_zero() {
            return self.clone();
        }
        MPReal { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn mul_i64(&self, k: i64) -> MPReal {
        MPReal::normalized(&self.mant * k, self.exp, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> MPReal {
        assert!(k != 0, "division by zero");
        if self.is_zero() {
            return self.clone();
        }
        let shift = self.prec as i64 + 4 + 64;
        let q = (&self.mant << shift as u64) / k;
        MPReal::normalized(q, self.exp - shift, self.prec)
    }

    fn add_impl(&self, rhs: &MPReal, negate_rhs: bool) -> MPReal {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            let r = rhs.with_prec(prec);
            return if negate_rhs { -&r } else { r };
        }
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        // If the operands' bit ranges are disjoint by more than the result
        // precision, the smaller only perturbs the last place.
        let top_a = self.magnitude_exp().unwrap();
        let top_b = rhs.magnitude_exp().unwrap();
        let gap_cap = prec as i64 + 4;
        if top_a - top_b > gap_cap && self.exp - top_b > 2 {
            return self.with_prec(prec);
        }
        if top_b - top_a > gap_cap && rhs.exp - top_a > 2 {
            let r = rhs.with_prec(prec);
            return if negate_rhs { -&r } else { r };
        }
        let common = self.exp.min(rhs.exp);
        let ma = &self.mant << (self.exp - common) as u64;
        let mb = &rhs.mant << (rhs.exp - common) as u64;
        let sum = if negate_rhs { ma - mb } else { ma + mb };
        MPReal::normalized(sum, common, prec)
    }

    /// Comparison of represented values (exact).
    pub fn cmp_value(&self, rhs: &MPReal) -> Ordering {
        let diff = self.add_impl(rhs, true);
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn min_value(self, rhs: MPReal) -> MPReal {
        if self.cmp_value(&rhs) == Ordering::Greater {
            rhs
        } else {
            self
        }
    }

    pub fn max_value(self, rhs: MPReal) -> MPReal {
        if self.cmp_value(&rhs) == Ordering::Less {
            rhs
        } else {
            self
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_int(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        let (sign, mut mag) = self.mant.clone().into_parts();
        mag += num_bigint::BigUint::from(1u32) << (shift - 1);
        mag >>= shift;
        BigInt::from_biguint(sign, mag)
    }

    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        // BigInt shr truncates toward negative infinity, which is floor
        &self.mant >> shift
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        let keep = 53.min(bits);
        let top: BigInt = &self.mant >> (bits - keep);
        let top_f = top.to_f64().unwrap_or(0.0);
        top_f * 2f64.powi((self.exp + (bits - keep) as i64) as i32)
    }

    // ---- Decimal I/O ----

    /// Render with exactly `digits` significant decimal digits.
    /// Plain notation for moderate exponents, otherwise scientific.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        // decimal exponent: first estimate from bit length, then correct
        let mag2 = self.magnitude_exp().unwrap();
        let mut dec_exp = (mag2 as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let (mut scaled, carry_adjust);
        loop {
            // scaled = round(|x| · 10^(digits−1−dec_exp)) as an integer
            let s = digits as i64 - 1 - dec_exp;
            scaled = scale_decimal(BigInt::from(self.mant.magnitude().clone()), self.exp, s);
            let lo = pow10(digits as u32 - 1);
            let hi = pow10(digits as u32);
            if scaled < lo {
                dec_exp -= 1;
                continue;
            }
            if scaled >= hi {
                // e.g. 999.96 rounding up to 1000.0
                carry_adjust = true;
                dec_exp += 1;
            } else {
                carry_adjust = false;
            }
            break;
        }
        if carry_adjust {
            let s = digits as i64 - 1 - dec_exp;
            scaled = scale_decimal(BigInt::from(self.mant.magnitude().clone()), self.exp, s);
        }
        let digits_str = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        // plain notation when the decimal point lands nearby
        if -4 <= dec_exp && dec_exp < digits as i64 + 6 {
            if dec_exp >= digits as i64 - 1 {
                let zeros = dec_exp as usize - (digits - 1);
                return format!("{sign}{digits_str}{}", "0".repeat(zeros));
            }
            if dec_exp >= 0 {
                let split = dec_exp as usize + 1;
                return format!("{sign}{}.{}", &digits_str[..split], &digits_str[split..]);
            }
            let zeros = (-dec_exp - 1) as usize;
            return format!("{sign}0.{}{digits_str}", "0".repeat(zeros));
        }
        if digits == 1 {
            format!("{sign}{digits_str}e{dec_exp}")
        } else {
            format!("{sign}{}.{}e{dec_exp}", &digits_str[..1], &digits_str[1..])
        }
    }

    /// Parse a decimal literal `[+-]ddd[.ddd][e[+-]ddd]` at the given
    /// precision.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<MPReal, MPError> {
        let t = s.trim();
        let err = || MPError::Parse(s.to_string());
        let (mantissa_part, exp_part) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t, None),
        };
        let e10: i64 = match exp_part {
            Some(p) => p.parse().map_err(|_| err())?,
            None => 0,
        };
        let (sign, body) = match mantissa_part.strip_prefix('-') {
            Some(b) => (-1i32, b),
            None => (1, mantissa_part.strip_prefix('+').unwrap_or(mantissa_part)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let all = format!("{int_part}{frac_part}");
        if !all.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits: BigInt = all.parse().map_err(|_| err())?;
        let scale = frac_part.len() as i64 - e10;
        let num = if sign < 0 { -digits } else { digits };
        let value = if scale >= 0 {
            MPReal::from_bigint_ratio(&num, &pow10_big(scale as u64), prec)
        } else {
            MPReal::from_bigint(&(num * pow10_big((-scale) as u64)), prec)
        };
        Ok(value)
    }
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

fn pow10_big(k: u64) -> BigInt {
    BigInt::from(10).pow(k as u32)
}

/// round(|m|·2^e·10^s) for a non-negative mantissa.
fn scale_decimal(m: BigInt, e: i64, s: i64) -> BigInt {
    let mut num = m;
    let mut den = BigInt::from(1);
    if s >= 0 {
        num *= pow10_big(s as u64);
    } else {
        den *= pow10_big((-s) as u64);
    }
    if e >= 0 {
        num <<= e as u64;
    } else {
        den <<= (-e) as u64;
    }
    // rounded division
    (num * 2 + &den) / (den * 2)
}

impl Add for &MPReal {
    type Output = MPReal;
    fn add(self, rhs: &MPReal) -> MPReal {
        self.add_impl(rhs, false)
    }
}

impl Sub for &MPReal {
    type Output = MPReal;
    fn sub(self, rhs: &MPReal) -> MPReal {
        self.add_impl(rhs, true)
    }
}

impl Mul for &MPReal {
    type Output = MPReal;
    fn mul(self, rhs: &MPReal) -> MPReal {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return MPReal::zero(prec);
        }
        MPReal::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl Div for &MPReal {
    type Output = MPReal;
    fn div(self, rhs: &MPReal) -> MPReal {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return MPReal::zero(prec);
        }
        let shift = prec as i64 + 4 + rhs.mant.magnitude().bits() as i64
            - self.mant.magnitude().bits() as i64;
        let shift = shift.max(0);
        let q = (&self.mant << shift as u64) / &rhs.mant;
        MPReal::normalized(q, self.exp - rhs.exp - shift, prec)
    }
}

impl Neg for &MPReal {
    type Output = MPReal;
    fn neg(self) -> MPReal {
        MPReal { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

macro_rules! owned_op {
    ($trait:ident, $method:ident) => {
        impl $trait for MPReal {
            type Output = MPReal;
            fn $method(self, rhs: MPReal) -> MPReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MPReal> for MPReal {
            type Output = MPReal;
            fn $method(self, rhs: &MPReal) -> MPReal {
                (&self).$method(rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
owned_op!(Div, div);

impl Neg for MPReal {
    type Output = MPReal;
    fn neg(self) -> MPReal {
        -&self
    }
}

impl PartialEq for MPReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for MPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for MPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = 1 + (self.prec as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for MPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{} bits]", self.to_decimal(12), self.prec)
    }
}
