//! Exact rational arithmetic, fractional parts, and the interlacing
//! eligibility condition on hypergeometric parameter triples.
//!
//! Everything in this module is exact: no floating point enters any
//! computation. `Rational` wraps an arbitrary-precision reduced fraction,
//! `HGTriple` is a validated parameter triple (a, b, q), and
//! `condition_holds` decides the fractional-part identity
//!
//! ```text
//! {s·q} + {s·(−q+a)} + {s·(−q+b)} + {s·(q−a−b)} = 2
//! ```
//!
//! for every residue s coprime to the least common denominator of a, b, q.

pub mod poly;
pub mod ratfunc;

pub use poly::Poly;
pub use ratfunc::RationalFunction;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Errors from exact-arithmetic operations and constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// A rational failed to parse; carries the offending text.
    Parse(String),
    /// Denominator zero in `Rational::new`.
    ZeroDenominator,
    /// An `HGTriple` precondition failed; names the violated condition.
    IntegerParameter(&'static str),
    /// `e_part_eligibility` called with d not dividing l.
    NotADivisor { l: i64, d: i64 },
    /// Division by the zero polynomial / rational function.
    DivisionByZero,
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::Parse(s) => write!(f, "cannot parse rational from {s:?}"),
            ExactError::ZeroDenominator => write!(f, "denominator must be nonzero"),
            ExactError::IntegerParameter(which) => {
                write!(f, "precondition violated: {which} must not be an integer")
            }
            ExactError::NotADivisor { l, d } => write!(f, "{d} does not divide {l}"),
            ExactError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ExactError {}

/// An exact rational number, always stored reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `num/den`, reducing to lowest terms. Errors when `den = 0`.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Result<Self, ExactError> {
        let den: BigInt = den.into();
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when this is an integer ≤ 0 (a pole of the Gamma function).
    pub fn is_nonpositive_integer(&self) -> bool {
        self.0.is_integer() && !self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rational, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Fractional part {x} = x − ⌊x⌋, always in [0, 1).
    pub fn frac(&self) -> Rational {
        Rational(&self.0 - BigRational::from_integer(self.0.floor().to_integer()))
    }

    /// Signum as an integer −1, 0, 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Parses the exact forms `p` and `p/q` (optionally signed).
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let t = s.trim();
        let parse_int = |p: &str| BigInt::from_str(p).map_err(|_| ExactError::Parse(s.into()));
        match t.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(t)?))),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(ExactError::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Shorthand used throughout the crate and its tests: `rat(1, 6)` = 1/6.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

/// A parameter triple (a, b, q) validated for the eligibility condition:
/// none of a, b, q, q−a, q−b, q−a−b is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGTriple {
    a: Rational,
    b: Rational,
    q: Rational,
}

impl HGTriple {
    pub fn new(a: Rational, b: Rational, q: Rational) -> Result<Self, ExactError> {
        if a.is_integer() {
            return Err(ExactError::IntegerParameter("a"));
        }
        if b.is_integer() {
            return Err(ExactError::IntegerParameter("b"));
        }
        if q.is_integer() {
            return Err(ExactError::IntegerParameter("q"));
        }
        if (&q - &a).is_integer() {
            return Err(ExactError::IntegerParameter("q-a"));
        }
        if (&q - &b).is_integer() {
            return Err(ExactError::IntegerParameter("q-b"));
        }
        if (&(&q - &a) - &b).is_integer() {
            return Err(ExactError::IntegerParameter("q-a-b"));
        }
        Ok(HGTriple { a, b, q })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }
}

impl fmt::Display for HGTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.q)
    }
}

/// Outcome of the eligibility check: the verdict plus every residue
/// examined with its fractional-part sum.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub holds: bool,
    /// Every (s, Σ) evaluated, s running over [1, L) coprime to L.
    pub witnesses: Vec<(u64, Rational)>,
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Least common multiple of the denominators of a, b, q.
pub fn parameter_lcm(t: &HGTriple) -> u64 {
    let l = lcm_big(
        &lcm_big(t.a.denominator(), t.b.denominator()),
        t.q.denominator(),
    );
    use num_traits::ToPrimitive;
    l.to_u64().expect("parameter denominators fit in u64")
}

/// Decide whether {sq}+{s(−q+a)}+{s(−q+b)}+{s(q−a−b)} = 2 for every s
/// in [1, L) coprime to L, where L is the lcm of the parameter
/// denominators. One period suffices: {sx} depends only on s modulo the
/// denominator of x.
pub fn condition_holds(t: &HGTriple) -> ConditionReport {
    let l = parameter_lcm(t);
    let two = Rational::from_int(2);
    let parts = [
        t.q.clone(),
        &t.a - &t.q,
        &t.b - &t.q,
        &(&t.q - &t.a) - &t.b,
    ];
    let mut holds = true;
    let mut witnesses = Vec::new();
    for s in 1..l {
        if s.gcd(&l) != 1 {
            continue;
        }
        let sr = Rational::from_int(s as i64);
        let sum = parts
            .iter()
            .map(|x| (&sr * x).frac())
            .fold(Rational::zero(), |acc, v| acc + v);
        if sum != two {
            holds = false;
        }
        witnesses.push((s, sum));
    }
    ConditionReport { holds, witnesses }
}

/// Word-sized mirror of `condition_holds` used by the eligibility scan.
/// {s·n/d} = ((s·n) mod d)/d, so the whole check runs in i128 arithmetic
/// once the four part fractions are extracted.
fn condition_holds_fast(t: &HGTriple) -> bool {
    use num_traits::ToPrimitive;
    let parts = [
        t.q.clone(),
        &t.a - &t.q,
        &t.b - &t.q,
        &(&t.q - &t.a) - &t.b,
    ];
    let nd: Vec<(i128, i128)> = parts
        .iter()
        .map(|x| {
            (
                x.numerator().to_i128().expect("small numerator"),
                x.denominator().to_i128().expect("small denominator"),
            )
        })
        .collect();
    let l = parameter_lcm(t) as i128;
    for s in 1..l {
        if (s as u64).gcd(&(l as u64)) != 1 {
            continue;
        }
        // Σ {s·nᵢ/dᵢ} = 2  ⇔  Σ ((s·nᵢ) mod dᵢ)·(L/dᵢ) = 2·L
        let sum: i128 = nd
            .iter()
            .map(|&(n, d)| (s * n).rem_euclid(d) * (l / d))
            .sum();
        if sum != 2 * l {
            return false;
        }
    }
    true
}

/// All reduced q = k/l with 1 ≤ l ≤ `max_denominator` and 0 < q < 1 for
/// which the condition holds with the given a, b. Values of q violating
/// the triple preconditions are skipped, not reported as failures.
/// Ordered by (denominator, numerator).
pub fn eligible_q_values(a: &Rational, b: &Rational, max_denominator: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for l in 1..=max_denominator {
        for k in 1..l {
            if k.gcd(&l) != 1 {
                continue;
            }
            let q = rat(k as i64, l as i64);
            let Ok(triple) = HGTriple::new(a.clone(), b.clone(), q.clone()) else {
                continue;
            };
            if condition_holds_fast(&triple) {
                out.push(q);
            }
        }
    }
    out
}

/// Dimension and log-case verdict for the e-part cut out of the family
/// with parameter l by a projector of kernel size d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EPartEligibility {
    /// 1 unless l/d ∈ {1, 6}, in which case 0.
    pub dimension: u8,
    /// True exactly when 2 ≤ l/d ≤ 5.
    pub log_case: bool,
}

/// Eligibility of the (l, d) e-part: dimension vanishes iff l/d ∈ {1, 6},
/// and the log case occurs iff 2 ≤ l/d ≤ 5.
pub fn e_part_eligibility(l: i64, d: i64) -> Result<EPartEligibility, ExactError> {
    if d < 1 || l < 1 || l % d != 0 {
        return Err(ExactError::NotADivisor { l, d });
    }
    let ratio = l / d;
    Ok(EPartEligibility {
        dimension: if ratio == 1 || ratio == 6 { 0 } else { 1 },
        log_case: (2..=5).contains(&ratio),
    })
}
