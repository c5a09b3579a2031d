//! Rational functions in one variable over the rationals.
//!
//! Always stored fully reduced (numerator and denominator coprime) with a
//! monic denominator, so equality is plain structural equality.

use super::poly::Poly;
use super::{ExactError, Rational};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Build num/den, reducing by the gcd and making the denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num: Poly::zero(), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd nonzero");
        let lead = den.leading_coeff().expect("den nonzero").clone();
        let inv = lead.recip().expect("leading coefficient nonzero");
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv).make_monic() })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when this is a polynomial (denominator 1).
    pub fn is_poly(&self) -> bool {
        self.den == Poly::one()
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RationalFunction::new(num, den).expect("den nonzero")
    }

    /// Evaluate at a rational point; errors on a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// True when the denominator divides a power of t(1−t), i.e. all its
    /// roots lie in {0, 1}.
    pub fn denominator_supported_on_unit_pair(&self) -> bool {
        let mut d = self.den.clone();
        let t = Poly::x();
        let t_minus_1 = Poly::from_coeffs(vec![-Rational::one(), Rational::one()]);
        for factor in [&t, &t_minus_1] {
            loop {
                let (q, r) = d.div_rem(factor).expect("factor nonzero");
                if r.is_zero() {
                    d = q;
                } else {
                    break;
                }
            }
        }
        d.degree() == Some(0)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("dens nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("dens nonzero")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("dens nonzero")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("dens nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn poly_from(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&n| Rational::from_int(n)).collect())
    }

    #[test]
    fn reduction_is_canonical() {
        // (2t² − 2) / (4t − 4) = (t + 1) / 2
        let f = RationalFunction::new(poly_from(&[-2, 0, 2]), poly_from(&[-4, 4])).unwrap();
        assert!(f.is_poly());
        assert_eq!(f.numerator(), &Poly::from_coeffs(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn denominator_support_check() {
        // 1 / (t²(1−t)) is supported on {0, 1}
        let den = &(&Poly::x() * &Poly::x()) * &poly_from(&[1, -1]);
        let f = RationalFunction::new(Poly::one(), den).unwrap();
        assert!(f.denominator_supported_on_unit_pair());
        // 1 / (t − 2) is not
        let g = RationalFunction::new(Poly::one(), poly_from(&[-2, 1])).unwrap();
        assert!(!g.denominator_supported_on_unit_pair());
    }

    proptest! {
        #[test]
        fn mul_then_div_recovers(fa in proptest::collection::vec(-6i64..6, 1..4),
                                 fb in proptest::collection::vec(-6i64..6, 1..4),
                                 ga in proptest::collection::vec(-6i64..6, 1..4),
                                 gb in proptest::collection::vec(-6i64..6, 1..4)) {
            let f = RationalFunction::new(poly_from(&fa), poly_from(&[1]))
                .unwrap() + RationalFunction::new(poly_from(&fb), poly_from(&[2, 1])).unwrap();
            let g = RationalFunction::new(poly_from(&ga), poly_from(&[1]))
                .unwrap() + RationalFunction::new(poly_from(&gb), poly_from(&[0, 0, 1])).unwrap();
            prop_assume!(!g.is_zero());
            let back = &(&f * &g) / &g;
            prop_assert_eq!(back, f);
        }
    }
}
