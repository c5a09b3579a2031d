//! Tanh-sinh (double-exponential) quadrature over (0, 1).
//!
//! The substitution x = (1 + tanh((π/2)·sinh u))/2 maps (0,1) onto the
//! real line and makes the weights decay doubly exponentially, so
//! integrable endpoint singularities (inverse powers, logarithms) need no
//! special treatment. Integrands receive both x and 1−x: near either
//! endpoint the small distance is computed from the exponential form
//! directly, never by cancellation.

use super::HyperError;
use crate::mpnum::{guarded, MPReal};

pub struct QuadResult {
    pub value: MPReal,
    /// |I_m − I_{m−1}| for the last two levels: a conservative bound.
    pub err_estimate: MPReal,
    pub levels: u32,
    pub evals: usize,
}

impl QuadResult {
    /// Decimal digits certified by the error estimate, relative to the value.
    pub fn achieved_digits(&self) -> i64 {
        if self.err_estimate.is_zero() {
            return (self.value.precision() as f64 * std::f64::consts::LOG10_2) as i64;
        }
        let scale = self
            .value
            .abs()
            .max_value(MPReal::from_i64(1, self.value.precision()));
        let rel = &self.err_estimate / &scale;
        match rel.magnitude_exp() {
            None => (self.value.precision() as f64 * std::f64::consts::LOG10_2) as i64,
            Some(m) => (-(m as f64) * std::f64::consts::LOG10_2) as i64,
        }
    }
}

struct Node {
    x: MPReal,
    one_minus_x: MPReal,
    /// Weight without the step factor h.
    w: MPReal,
}

/// Abscissa and weight at parameter u > 0. Returns the node pair
/// (x(u), x(−u)) shares the weight by symmetry.
fn node_at(u: &MPReal, pi_half: &MPReal, wp: u32) -> (Node, Node) {
    let e = u.exp(wp);
    let einv = MPReal::from_i64(1, wp) / &e;
    let cosh = (&e + &einv).mul_pow2(-1);
    let sinh = (&e - &einv).mul_pow2(-1);
    let theta = pi_half * &sinh;
    let g = theta.mul_pow2(1).exp(wp); // e^{2θ}
    let one = MPReal::from_i64(1, wp);
    let far = &one / &(&one + &(&one / &g)); // x(u) = 1/(1+e^{−2θ})
    let near = &one / &(&one + &g); //          x(−u) = 1/(1+e^{2θ})
    // dx/du = (π/2)·cosh u · 2·x(1−x)
    let w = &(pi_half * &cosh).mul_pow2(1) * &(&far * &near);
    (
        Node { x: far.clone(), one_minus_x: near.clone(), w: w.clone() },
        Node { x: near, one_minus_x: far, w },
    )
}

/// Integrate f over (0, 1), doubling the node density until two
/// successive levels agree to the target precision or the level cap is
/// reached. The integrand takes (x, 1−x).
pub fn tanh_sinh_01<F>(f: &F, prec: u32) -> Result<QuadResult, HyperError>
where
    F: Fn(&MPReal, &MPReal) -> Result<MPReal, HyperError>,
{
    let wp = guarded(prec) + 8;
    let pi_half = MPReal::pi(wp).mul_pow2(-1);
    let tiny_exp = -(wp as i64) - 6; // relative negligibility for strip truncation
    let max_level: u32 = 14;
    let u_cap = MPReal::from_i64(12, wp);

    let mut evals: usize = 0;
    // running sum of w·f over all nodes placed so far
    let mut total = {
        let half = MPReal::pow2(-1, wp);
        let center_w = pi_half.mul_pow2(-1); // (π/2)·2·(1/2)(1/2)
        evals += 1;
        &center_w * &f(&half, &half)?
    };
    let mut value_prev: Option<MPReal> = None;
    let mut diff_prev: Option<MPReal> = None;
    let mut result = None;

    for level in 0..=max_level {
        let h = MPReal::pow2(-(level as i64), wp);
        // new nodes at odd multiples of h (all multiples at level 0)
        let stride = if level == 0 { 1u64 } else { 2 };
        let start = 1u64;
        let mut k = start;
        let mut negligible_run = 0;
        loop {
            let u = h.mul_i64(k as i64);
            if u.cmp_value(&u_cap) == std::cmp::Ordering::Greater {
                break;
            }
            let (right, left) = node_at(&u, &pi_half, wp);
            let mut contribution = MPReal::zero(wp);
            for node in [right, left] {
                evals += 1;
                let fx = f(&node.x, &node.one_minus_x)?;
                contribution = &contribution + &(&node.w * &fx);
            }
            total = &total + &contribution;
            let scale = total.abs().max_value(MPReal::from_i64(1, wp));
            if (&contribution / &scale).abs_below_pow2(tiny_exp) {
                negligible_run += 1;
                if negligible_run >= 3 && k as f64 * h.to_f64() > 1.0 {
                    break;
                }
            } else {
                negligible_run = 0;
            }
            k += stride;
        }
        let value = &h * &total;
        if let Some(prev) = &value_prev {
            let diff = (&value - prev).abs();
            let scale = value.abs().max_value(MPReal::from_i64(1, wp));
            if (&diff / &scale).abs_below_pow2(-(prec as i64) - 6) {
                result = Some(QuadResult {
                    value,
                    err_estimate: diff,
                    levels: level,
                    evals,
                });
                break;
            }
            diff_prev = Some(diff);
        }
        value_prev = Some(value);
    }

    match result {
        Some(r) => Ok(r),
        None => {
            // level cap hit: report what was achieved
            let value = value_prev.expect("at least one level ran");
            let err = diff_prev.unwrap_or_else(|| MPReal::from_i64(1, wp));
            let partial = QuadResult { value, err_estimate: err, levels: max_level, evals };
            Err(HyperError::QuadratureNonConvergence {
                achieved_digits: partial.achieved_digits(),
            })
        }
    }
}
