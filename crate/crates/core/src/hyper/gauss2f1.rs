//! Pointwise evaluation of the Gauss function ₂F₁(a, b; c; t) on (0, 1)
//! with rational parameters.
//!
//! For t ≤ 1/2 the defining series converges at a bit per term or
//! better. For t > 1/2 in the balanced case c = a + b (the only case the
//! unit-argument pipeline meets), evaluation switches to the logarithmic
//! connection expansion around t = 1:
//!
//! ```text
//! ₂F₁(a,b;a+b;t) = Γ(a+b)/(Γ(a)Γ(b)) · Σ_{n≥0} (a)_n(b)_n/(n!)²
//!                  · [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln(1−t)] · (1−t)^n
//! ```
//!
//! The digamma values are precomputed once per evaluator, and the n-th
//! coefficient follows by the recurrences ψ(x+n+1) = ψ(x+n) + 1/(x+n).

use super::HyperError;
use crate::exact::Rational;
use crate::mpnum::{guarded, GammaTable, MPReal};

pub struct Gauss2F1 {
    a: Rational,
    b: Rational,
    c: Rational,
    wp: u32,
    /// Set when c = a + b, enabling the connection expansion.
    log_case: Option<LogCaseData>,
}

struct LogCaseData {
    /// Γ(a+b)/(Γ(a)Γ(b)).
    prefactor: MPReal,
    /// 2ψ(1) − ψ(a) − ψ(b).
    h0: MPReal,
}

impl Gauss2F1 {
    pub fn new(a: Rational, b: Rational, c: Rational, prec: u32) -> Result<Gauss2F1, HyperError> {
        if c.is_nonpositive_integer() {
            return Err(HyperError::InvalidParameters(format!(
                "lower parameter c = {c} is a non-positive integer"
            )));
        }
        let wp = guarded(prec) + 16;
        let balanced = &(&a + &b) - &c;
        let log_case = if balanced.is_zero() {
            if a.is_nonpositive_integer() || b.is_nonpositive_integer() {
                None // terminating series; the direct sum handles it
            } else {
                let table = GammaTable::new(wp);
                let ga = table.gamma_real(&MPReal::from_rational(&a, wp))?;
                let gb = table.gamma_real(&MPReal::from_rational(&b, wp))?;
                let gc = table.gamma_real(&MPReal::from_rational(&c, wp))?;
                let psi_a = table.digamma_real(&MPReal::from_rational(&a, wp))?;
                let psi_b = table.digamma_real(&MPReal::from_rational(&b, wp))?;
                let psi_1 = table.digamma_real(&MPReal::from_i64(1, wp))?;
                Some(LogCaseData {
                    prefactor: &gc / &(&ga * &gb),
                    h0: &psi_1.mul_pow2(1) - &(&psi_a + &psi_b),
                })
            }
        } else {
            None
        };
        Ok(Gauss2F1 { a, b, c, wp, log_case })
    }

    pub fn working_precision(&self) -> u32 {
        self.wp
    }

    /// Evaluate at t given both t and 1−t (each accurate in its own
    /// scale, as the quadrature provides them).
    pub fn eval(&self, t: &MPReal, one_minus_t: &MPReal) -> Result<MPReal, HyperError> {
        if t.is_negative() || one_minus_t.is_negative() {
            return Err(HyperError::InvalidParameters(
                "2F1 evaluation requires 0 ≤ t < 1 here".into(),
            ));
        }
        if t.cmp_value(one_minus_t) != std::cmp::Ordering::Greater {
            Ok(self.eval_series(t))
        } else if let Some(log_data) = &self.log_case {
            self.eval_log_connection(one_minus_t, log_data)
        } else if one_minus_t.abs_below_pow2(-6) {
            Err(HyperError::InvalidParameters(format!(
                "2F1({}, {}; {}; t) too close to t = 1 for the direct series \
                 and c ≠ a+b rules out the logarithmic expansion",
                self.a, self.b, self.c
            )))
        } else {
            Ok(self.eval_series(t))
        }
    }

    /// Defining series Σ (a)_n(b)_n/((c)_n n!) tⁿ.
    fn eval_series(&self, t: &MPReal) -> MPReal {
        let wp = self.wp;
        let t = t.with_prec(wp);
        let mut term = MPReal::from_i64(1, wp);
        let mut sum = term.clone();
        let counters = PochhammerCounters::new(&[&self.a, &self.b], &[&self.c]);
        let mut n: i64 = 0;
        loop {
            let (num, den) = counters.step(n);
            term = (&term * &t).mul_i64(num).div_i64(den * (n + 1));
            n += 1;
            if term.abs_below_pow2(-(wp as i64 + 4)) && n > 4 {
                break;
            }
            sum = &sum + &term;
        }
        sum
    }

    /// Logarithmic connection expansion in w = 1−t (requires c = a+b).
    fn eval_log_connection(&self, w: &MPReal, data: &LogCaseData) -> Result<MPReal, HyperError> {
        let wp = self.wp;
        let w = w.with_prec(wp);
        let neg_ln_w = -&w.ln(wp)?;
        // r_n = (a)_n(b)_n/(n!)², h_n = 2ψ(n+1) − ψ(a+n) − ψ(b+n)
        let mut r = MPReal::from_i64(1, wp);
        let mut h = data.h0.clone();
        let mut w_pow = MPReal::from_i64(1, wp);
        let mut sum = MPReal::zero(wp);
        let (na, da) = rational_parts(&self.a);
        let (nb, db) = rational_parts(&self.b);
        let mut n: i64 = 0;
        loop {
            let term = &(&h + &neg_ln_w) * &(&r * &w_pow);
            sum = &sum + &term;
            if n > 4 && (&r * &w_pow).abs_below_pow2(-(wp as i64 + 4)) {
                break;
            }
            // advance to n+1
            let pa = na + n * da;
            let pb = nb + n * db;
            r = r
                .mul_i64(pa)
                .mul_i64(pb)
                .div_i64(da * db)
                .div_i64((n + 1) * (n + 1));
            let inv_a = MPReal::from_i64(da, wp).div_i64(pa);
            let inv_b = MPReal::from_i64(db, wp).div_i64(pb);
            let two_inv = MPReal::from_i64(2, wp).div_i64(n + 1);
            h = &(&h + &two_inv) - &(&inv_a + &inv_b);
            w_pow = &w_pow * &w;
            n += 1;
        }
        Ok(&data.prefactor * &sum)
    }
}

fn rational_parts(r: &Rational) -> (i64, i64) {
    use num_traits::ToPrimitive;
    (
        r.numerator().to_i64().expect("parameter numerator fits i64"),
        r.denominator().to_i64().expect("parameter denominator fits i64"),
    )
}

/// Incremental numerator/denominator factors for hypergeometric terms:
/// step(n) returns (Π(aᵢ+n) numerator scale, denominator scale) such that
/// term_{n+1} = term_n · x · num/(den·(n+1)).
pub(crate) struct PochhammerCounters {
    upper: Vec<(i64, i64)>,
    lower: Vec<(i64, i64)>,
}

impl PochhammerCounters {
    pub fn new(upper: &[&Rational], lower: &[&Rational]) -> PochhammerCounters {
        PochhammerCounters {
            upper: upper.iter().map(|r| rational_parts(r)).collect(),
            lower: lower.iter().map(|r| rational_parts(r)).collect(),
        }
    }

    /// Multiplicative factor (num, den) at step n; caller divides by the
    /// extra (n+1) for the factorial.
    pub fn step(&self, n: i64) -> (i64, i64) {
        let mut num: i64 = 1;
        let mut den: i64 = 1;
        for &(p, d) in &self.upper {
            num *= p + n * d;
            den *= d;
        }
        for &(p, d) in &self.lower {
            den *= p + n * d;
            num *= d;
        }
        (num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close(a: &MPReal, b: &MPReal, bits: i64) -> bool {
        let scale = a.abs().max_value(b.abs()).max_value(MPReal::from_i64(1, a.precision()));
        (a - b).abs() < scale.mul_pow2(-bits)
    }

    #[test]
    fn series_at_zero_is_one() {
        let p = 160;
        let f = Gauss2F1::new(rat(1, 6), rat(5, 6), rat(1, 1), p).unwrap();
        let v = f
            .eval(&MPReal::zero(p), &MPReal::from_i64(1, p))
            .unwrap();
        assert!(close(&v, &MPReal::from_i64(1, p), p as i64 - 4));
    }

    #[test]
    fn log_connection_matches_series_at_half() {
        // both branches are valid at t slightly above/below 1/2 and must agree
        let p = 256;
        let f = Gauss2F1::new(rat(1, 6), rat(5, 6), rat(1, 1), p).unwrap();
        let wp = f.working_precision();
        for (n, d) in [(1, 2), (33, 64), (17, 32)] {
            let t = MPReal::from_rational(&rat(n, d), wp);
            let omt = MPReal::from_rational(&rat(d - n, d), wp);
            let direct = f.eval_series(&t);
            let connected = f
                .eval_log_connection(&omt, f.log_case.as_ref().unwrap())
                .unwrap();
            assert!(
                close(&direct, &connected, p as i64 - 6),
                "mismatch at t={n}/{d}: {} vs {}",
                direct.to_decimal(30),
                connected.to_decimal(30)
            );
        }
    }

    #[test]
    fn elliptic_special_value() {
        // ₂F₁(1/2, 1/2; 1; m) = 2K(√m)/π with K from the AGM:
        // K(k) = π/(2·agm(1, √(1−k²)))
        let p = 256;
        let f = Gauss2F1::new(rat(1, 2), rat(1, 2), rat(1, 1), p).unwrap();
        let t = MPReal::from_rational(&rat(3, 4), p + 32);
        let omt = MPReal::from_rational(&rat(1, 4), p + 32);
        let got = f.eval(&t, &omt).unwrap();
        let want = {
            let wp = p + 32;
            let kprime = omt.sqrt(wp).unwrap();
            let agm = MPReal::agm(&MPReal::from_i64(1, wp), &kprime, wp).unwrap();
            MPReal::from_i64(1, wp) / agm
        };
        assert!(close(&got, &want, p as i64 - 8));
    }

    #[test]
    fn deep_endpoint_evaluation() {
        // near t = 1 the connection series needs only a few terms and the
        // value grows like −ln(1−t)/(2π) for the (1/6, 5/6; 1) family
        let p = 224;
        let f = Gauss2F1::new(rat(1, 6), rat(5, 6), rat(1, 1), p).unwrap();
        let wp = f.working_precision();
        let omt = MPReal::pow2(-120, wp);
        let t = &MPReal::from_i64(1, wp) - &omt;
        let v = f.eval(&t, &omt).unwrap();
        // Γ(1/6)Γ(5/6) = π/sin(π/6) = 2π, so the leading term is 120·ln2/(2π)
        let lead = &MPReal::ln2(wp).mul_i64(120) / &MPReal::pi(wp).mul_pow2(1);
        assert!((&v - &lead).abs() < MPReal::from_i64(1, wp));
    }
}
