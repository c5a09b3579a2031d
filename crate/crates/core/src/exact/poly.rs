//! Dense univariate polynomials with `Rational` coefficients.
//!
//! Coefficients are stored in ascending degree order. Invariant: the
//! vector is empty for the zero polynomial, and the last element is
//! nonzero otherwise.

use super::{ExactError, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    fn normalized(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::normalized(vec![c])
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// Build from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Poly::normalized(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with deg(0) = None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest-order nonzero coefficient, if any.
    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from_int(i as i64) * c)
            .collect();
        Poly::normalized(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::normalized(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &lead;
            let shift = rd - dd;
            q[shift] = factor.clone();
            // rem -= factor * x^shift * d
            let mut sub = vec![Rational::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &factor));
            rem = rem - Poly::normalized(sub);
        }
        Ok((Poly::normalized(q), rem))
    }

    /// Monic gcd via the Euclidean algorithm. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scale so the leading coefficient is 1 (zero polynomial unchanged).
    pub fn make_monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = lead.recip().expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::normalized(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::normalized(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::normalized(coeffs)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::normalized(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.signum() < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.signum() < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != Rational::one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[(1, 1), (0, 1), (3, 2), (1, 1)]);
        let b = p(&[(2, 1), (1, 1)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        // (x−1)(x+2) and (x−1)(x−3) share x−1
        let f = p(&[(-2, 1), (1, 1), (1, 1)]);
        let g = p(&[(3, 1), (-4, 1), (1, 1)]);
        assert_eq!(f.gcd(&g), p(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn derivative_and_eval() {
        // d/dt (t^2 − t) = 2t − 1
        let f = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(f.derivative(), p(&[(-1, 1), (2, 1)]));
        assert_eq!(f.eval(&rat(1, 2)), rat(-1, 4));
    }

    #[test]
    fn display_is_readable() {
        let f = p(&[(-5, 36), (1, 1), (-1, 1)]);
        assert_eq!(f.to_string(), "-t^2 + t - 5/36");
    }
}
