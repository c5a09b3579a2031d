//! Evaluation of ₂F₁ and ₃F₂ (and small pFq) at arguments in [0, 1], the
//! delicate unit-argument case included, by two independent methods:
//! direct/accelerated summation and the integral (Euler) transform
//! computed with tanh-sinh quadrature.

mod gauss2f1;
mod levin;
mod quad;

pub use gauss2f1::Gauss2F1;
pub use quad::{tanh_sinh_01, QuadResult};

use crate::exact::{ExactError, Rational};
use crate::mpnum::{guarded, GammaTable, MPError, MPReal};
use gauss2f1::PochhammerCounters;
use levin::LevinU;
use std::fmt;

#[derive(Clone, Debug)]
pub enum HyperError {
    /// Parameter combination outside the operation's domain.
    InvalidParameters(String),
    /// Series diverges (argument/excess preconditions violated).
    DivergentSeries(String),
    /// Quadrature failed to reach the requested precision.
    QuadratureNonConvergence { achieved_digits: i64 },
    Kernel(MPError),
    Exact(ExactError),
}

impl fmt::Display for HyperError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperError::InvalidParameters(s) => write!(f, "invalid parameters: {s}"),
            HyperError::DivergentSeries(s) => write!(f, "divergent series: {s}"),
            HyperError::QuadratureNonConvergence { achieved_digits } => {
                write!(f, "quadrature did not converge; achieved ~{achieved_digits} digits")
            }
            HyperError::Kernel(e) => write!(f, "kernel error: {e}"),
            HyperError::Exact(e) => write!(f, "exact arithmetic error: {e}"),
        }
    }
}

impl std::error::Error for HyperError {}

impl From<MPError> for HyperError {
    fn from(e: MPError) -> Self {
        HyperError::Kernel(e)
    }
}

impl From<ExactError> for HyperError {
    fn from(e: ExactError) -> Self {
        HyperError::Exact(e)
    }
}

/// Parameters and argument of a generalized hypergeometric series
/// ₚ₊₁Fₚ(a₁..a_{p+1}; b₁..b_p; x) with x ∈ [0, 1].
#[derive(Clone, Debug)]
pub struct HGSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: MPReal,
}

impl HGSpec {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        argument: MPReal,
    ) -> Result<HGSpec, HyperError> {
        for b in &lower {
            if b.is_nonpositive_integer() {
                return Err(HyperError::InvalidParameters(format!(
                    "lower parameter {b} is a non-positive integer"
                )));
            }
        }
        if argument.is_negative() || argument > MPReal::from_i64(1, argument.precision()) {
            return Err(HyperError::InvalidParameters(
                "argument must lie in [0, 1]".into(),
            ));
        }
        let spec = HGSpec { upper, lower, argument };
        if spec.at_unit_argument() && spec.excess().signum() <= 0 {
            return Err(HyperError::DivergentSeries(format!(
                "series at x = 1 requires parameter excess σ > 0, got σ = {}",
                spec.excess()
            )));
        }
        Ok(spec)
    }

    /// Parameter excess σ = Σ lower − Σ upper.
    pub fn excess(&self) -> Rational {
        let su = self
            .upper
            .iter()
            .fold(Rational::zero(), |acc, r| acc + r);
        let sl = self
            .lower
            .iter()
            .fold(Rational::zero(), |acc, r| acc + r);
        sl - su
    }

    pub fn at_unit_argument(&self) -> bool {
        self.argument == MPReal::from_i64(1, self.argument.precision())
    }

    /// The ₃F₂(a, b, q; a+b, q+1; 1) spec of the unit-argument family.
    pub fn family_3f2(a: &Rational, b: &Rational, q: &Rational, prec: u32) -> Result<HGSpec, HyperError> {
        HGSpec::new(
            vec![a.clone(), b.clone(), q.clone()],
            vec![a + b, q + &Rational::one()],
            MPReal::from_i64(1, prec),
        )
    }
}

/// Outcome of a series evaluation: the raw partial sum with its tail
/// bound, and (at unit argument) the sequence-accelerated estimate with
/// its heuristic error.
pub struct SeriesReport {
    pub value: MPReal,
    pub raw_partial: MPReal,
    pub raw_tail_bound: Option<MPReal>,
    pub accelerated: Option<MPReal>,
    pub est_error: MPReal,
    pub terms_used: usize,
}

impl SeriesReport {
    pub fn achieved_digits(&self) -> i64 {
        if self.est_error.is_zero() {
            return (self.value.precision() as f64 * std::f64::consts::LOG10_2) as i64;
        }
        let scale = self.value.abs().max_value(MPReal::from_i64(1, self.value.precision()));
        match (&self.est_error / &scale).magnitude_exp() {
            None => (self.value.precision() as f64 * std::f64::consts::LOG10_2) as i64,
            Some(m) => (-(m as f64) * std::f64::consts::LOG10_2) as i64,
        }
    }
}

/// Sum the pFq series. For argument < 1 the truncation error is bounded
/// by the first omitted term times r/(1−r) with r the observed term
/// ratio bound; at argument 1 (σ > 0) the partial sums are fed through
/// the Levin u-transform and both estimates are reported.
pub fn phg_series(spec: &HGSpec, prec: u32) -> Result<SeriesReport, HyperError> {
    if spec.at_unit_argument() {
        phg_series_accelerated(spec, prec)
    } else {
        phg_series_direct(spec, prec)
    }
}

/// Convenience wrapper returning just the value.
pub fn phg_series_value(spec: &HGSpec, prec: u32) -> Result<MPReal, HyperError> {
    Ok(phg_series(spec, prec)?.value.with_prec(prec))
}

fn phg_series_direct(spec: &HGSpec, prec: u32) -> Result<SeriesReport, HyperError> {
    let wp = guarded(prec) + 16;
    let x = spec.argument.with_prec(wp);
    let upper: Vec<&Rational> = spec.upper.iter().collect();
    let lower: Vec<&Rational> = spec.lower.iter().collect();
    let counters = PochhammerCounters::new(&upper, &lower);
    let mut term = MPReal::from_i64(1, wp);
    let mut sum = term.clone();
    let mut n: i64 = 0;
    let max_terms: i64 = 4_000_000;
    let (value, tail) = loop {
        let (num, den) = counters.step(n);
        term = (&term * &x).mul_i64(num).div_i64(den * (n + 1));
        n += 1;
        if term.is_zero() {
            break (sum.clone(), MPReal::zero(wp));
        }
        sum = &sum + &term;
        // past n ≫ parameters the ratio is below (1+ε)·x; bound the tail
        // geometrically once terms are negligible
        if n > 8 && term.abs_below_pow2(-(wp as i64 + 4)) {
            let ratio_bound = {
                let (num, den) = counters.step(n);
                (&x.abs().mul_i64(num.abs())).div_i64(den.abs() * (n + 1))
            };
            let one = MPReal::from_i64(1, wp);
            if ratio_bound < one {
                let tail = &(&term.abs() * &ratio_bound) / &(&one - &ratio_bound);
                break (sum.clone(), tail);
            }
        }
        if n >= max_terms {
            return Err(HyperError::DivergentSeries(
                "series did not reach tolerance within the term budget".into(),
            ));
        }
    };
    Ok(SeriesReport {
        value: value.with_prec(prec),
        raw_partial: value,
        raw_tail_bound: Some(tail.clone()),
        accelerated: None,
        est_error: tail,
        terms_used: n as usize,
    })
}

fn phg_series_accelerated(spec: &HGSpec, prec: u32) -> Result<SeriesReport, HyperError> {
    let digits = (prec as f64 * std::f64::consts::LOG10_2) as usize;
    let max_terms: usize = (40 + 5 * digits).min(500);
    let wp = guarded(prec) + 3 * max_terms as u32 + 64;
    let upper: Vec<&Rational> = spec.upper.iter().collect();
    let lower: Vec<&Rational> = spec.lower.iter().collect();
    let counters = PochhammerCounters::new(&upper, &lower);
    let mut term = MPReal::from_i64(1, wp);
    let mut partial = term.clone();
    let mut levin = LevinU::new(wp);
    levin.push(&partial, &term);
    let mut best: Option<MPReal> = None;
    let mut diffs: Vec<MPReal> = Vec::new();
    let mut n: i64 = 0;
    let tol_exp = -(prec as i64) - 8;
    let mut terms_used = 1;
    loop {
        let (num, den) = counters.step(n);
        term = term.mul_i64(num).div_i64(den * (n + 1));
        n += 1;
        terms_used += 1;
        partial = &partial + &term;
        if term.is_zero() {
            best = Some(partial.clone());
            diffs.push(MPReal::zero(wp));
            break;
        }
        if let Some(t) = levin.push(&partial, &term) {
            if let Some(prev) = &best {
                let scale = t.abs().max_value(MPReal::from_i64(1, wp));
                let diff = (&t - prev).abs();
                diffs.push((&diff / &scale).with_prec(64));
                let m = diffs.len();
                if m >= 2
                    && diffs[m - 1].abs_below_pow2(tol_exp)
                    && diffs[m - 2].abs_below_pow2(tol_exp)
                    && n > 12
                {
                    best = Some(t);
                    break;
                }
            }
            best = Some(t);
        }
        if terms_used >= max_terms {
            break;
        }
    }
    let accelerated = best.expect("at least two terms pushed");
    // heuristic error: the last two consecutive transform differences
    let est_error = diffs
        .iter()
        .rev()
        .take(2)
        .fold(MPReal::zero(wp), |acc, d| acc.max_value(d.clone()))
        .mul_pow2(2)
        * accelerated.abs().max_value(MPReal::from_i64(1, wp));
    Ok(SeriesReport {
        value: accelerated.clone().with_prec(prec),
        raw_partial: partial,
        raw_tail_bound: None,
        accelerated: Some(accelerated),
        est_error,
        terms_used,
    })
}

/// Gauss summation ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)),
/// requiring c − a − b > 0.
pub fn gauss_sum(a: &Rational, b: &Rational, c: &Rational, prec: u32) -> Result<MPReal, HyperError> {
    let excess = &(c - a) - b;
    if excess.signum() <= 0 {
        return Err(HyperError::DivergentSeries(format!(
            "Gauss summation requires c − a − b > 0, got {excess}"
        )));
    }
    if c.is_nonpositive_integer() {
        return Err(HyperError::InvalidParameters(format!(
            "c = {c} is a non-positive integer"
        )));
    }
    let wp = guarded(prec) + 16;
    // poles of Γ in the denominator give an exact zero
    if (c - a).is_nonpositive_integer() || (c - b).is_nonpositive_integer() {
        return Ok(MPReal::zero(prec));
    }
    let table = GammaTable::new(wp);
    let g = |r: &Rational| table.gamma_real(&MPReal::from_rational(r, wp));
    let num = &g(c)? * &g(&excess)?;
    let den = &g(&(c - a))? * &g(&(c - b))?;
    Ok((&num / &den).with_prec(prec))
}

/// Result of the integral-transform evaluation.
pub struct EulerResult {
    pub value: MPReal,
    pub achieved_digits: i64,
    pub quadrature_levels: u32,
    pub integrand_evals: usize,
}

/// ₃F₂(a, b, q; a+b, q+1; 1) = q·∫₀¹ t^{q−1}·₂F₁(a, b; a+b; t) dt.
///
/// The t = 1 endpoint carries the logarithmic ₂F₁ singularity and t = 0
/// the t^{q−1} power: both integrable and absorbed by the
/// double-exponential substitution.
pub fn euler_transform_3f2(
    a: &Rational,
    b: &Rational,
    q: &Rational,
    prec: u32,
) -> Result<EulerResult, HyperError> {
    if q.signum() <= 0 {
        return Err(HyperError::InvalidParameters(format!(
            "q must be positive, got {q}"
        )));
    }
    if (a + b).is_nonpositive_integer() {
        return Err(HyperError::InvalidParameters(format!(
            "a + b = {} is a non-positive integer",
            a + b
        )));
    }
    if a.is_nonpositive_integer() || b.is_nonpositive_integer() {
        return Err(HyperError::InvalidParameters(
            "terminating upper parameter: use the direct series instead".into(),
        ));
    }
    let wp = guarded(prec) + 16;
    let f21 = Gauss2F1::new(a.clone(), b.clone(), a + b, wp)?;
    let q_minus_1 = MPReal::from_rational(&(q - &Rational::one()), wp);
    let integrand = move |t: &MPReal, omt: &MPReal| -> Result<MPReal, HyperError> {
        let power = if q_minus_1.is_zero() {
            MPReal::from_i64(1, wp)
        } else {
            (&q_minus_1 * &t.ln(wp)?).exp(wp)
        };
        Ok(&power * &f21.eval(t, omt)?)
    };
    let quad = tanh_sinh_01(&integrand, prec + 8)?;
    let achieved = quad.achieved_digits();
    let requested = (prec as f64 * std::f64::consts::LOG10_2) as i64;
    if achieved < requested {
        return Err(HyperError::QuadratureNonConvergence { achieved_digits: achieved });
    }
    Ok(EulerResult {
        value: (&quad.value * &MPReal::from_rational(q, wp)).with_prec(prec),
        achieved_digits: achieved,
        quadrature_levels: quad.levels,
        integrand_evals: quad.evals,
    })
}

/// Residual of u = ₂F₁(a, b; c; t₀) in the hypergeometric ODE
/// t(1−t)u″ + (c − (a+b+1)t)u′ − ab·u = 0, with u, u′, u″ summed by the
/// term-wise differentiated series.
pub fn hg2f1_ode_residual(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    t0: &MPReal,
    prec: u32,
) -> Result<MPReal, HyperError> {
    if !t0.is_positive() || *t0 >= MPReal::from_i64(1, t0.precision()) {
        return Err(HyperError::InvalidParameters(
            "ODE residual requires 0 < t0 < 1".into(),
        ));
    }
    if c.is_nonpositive_integer() {
        return Err(HyperError::InvalidParameters(format!(
            "c = {c} is a non-positive integer"
        )));
    }
    let wp = guarded(prec) + 32;
    let t = t0.with_prec(wp);
    let counters = PochhammerCounters::new(&[a, b], &[c]);
    let mut term = MPReal::from_i64(1, wp); // (a)_n(b)_n/((c)_n n!) · t^n
    let mut u = term.clone();
    let mut u1 = MPReal::zero(wp);
    let mut u2 = MPReal::zero(wp);
    let inv_t = MPReal::from_i64(1, wp) / &t;
    let inv_t2 = &inv_t * &inv_t;
    let mut n: i64 = 0;
    loop {
        let (num, den) = counters.step(n);
        term = (&term * &t).mul_i64(num).div_i64(den * (n + 1));
        n += 1;
        u = &u + &term;
        u1 = &u1 + &(&term * &inv_t).mul_i64(n);
        if n >= 2 {
            u2 = &u2 + &(&term * &inv_t2).mul_i64(n * (n - 1));
        }
        if n > 8 && (&term * &inv_t2).mul_i64(n * n).abs_below_pow2(-(wp as i64 + 4)) {
            break;
        }
        if n > 80_000_000 {
            return Err(HyperError::DivergentSeries("ODE residual series too slow".into()));
        }
    }
    // t(1−t)·u″ + (c − (a+b+1)t)·u′ − ab·u
    let one = MPReal::from_i64(1, wp);
    let p2 = &t * &(&one - &t);
    let apb1 = MPReal::from_rational(&(&(a + b) + &Rational::one()), wp);
    let p1 = &MPReal::from_rational(c, wp) - &(&apb1 * &t);
    let p0 = MPReal::from_rational(&(a * b), wp);
    let residual = &(&(&p2 * &u2) + &(&p1 * &u1)) - &(&p0 * &u);
    Ok(residual.with_prec(prec))
}

#[cfg(test)]
mod tests;
