//! Elementary transcendental functions on `MPReal`.
//!
//! Strategy shared by the series-based functions: reduce the argument
//! until the series converges at several bits per term (square roots or
//! halvings, roughly √prec of them), sum the Taylor/atanh series at an
//! elevated working precision, then undo the reduction with exact
//! power-of-two shifts. π comes from the Gauss–Legendre AGM iteration and
//! ln 2 from the atanh(1/3) series.

use super::{guarded, MPError, MPReal};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn isqrt_u32(n: u32) -> u32 {
    (n as f64).sqrt() as u32
}

impl MPReal {
    /// Square root; errors on negative input.
    pub fn sqrt(&self, prec: u32) -> Result<MPReal, MPError> {
        if self.is_negative() {
            return Err(MPError::RootDomain);
        }
        if self.is_zero() {
            return Ok(MPReal::zero(prec));
        }
        let target = 2 * (prec as u64 + 4);
        let bits = self.mant.magnitude().bits();
        let mut shift = target.saturating_sub(bits);
        // keep the shifted exponent even so it halves exactly
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift;
        let root = m.sqrt();
        Ok(MPReal::normalized(
            BigInt::from(root),
            (self.exp - shift as i64) / 2,
            prec,
        ))
    }

    /// Integer power by binary exponentiation; `n` may be negative.
    pub fn powi(&self, n: i64, prec: u32) -> MPReal {
        if n == 0 {
            return MPReal::from_i64(1, prec);
        }
        let wp = prec + 2 * (64 - n.unsigned_abs().leading_zeros()) + 16;
        let mut base = self.with_prec(wp);
        let mut e = n.unsigned_abs();
        let mut acc = MPReal::from_i64(1, wp);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            acc = MPReal::from_i64(1, wp) / acc;
        }
        acc.with_prec(prec)
    }

    /// π by the Gauss–Legendre AGM iteration (quadratically convergent).
    pub fn pi(prec: u32) -> MPReal {
        let wp = guarded(prec) + 16;
        let one = MPReal::from_i64(1, wp);
        let mut a = one.clone();
        let mut b = (MPReal::from_i64(1, wp) / MPReal::from_i64(2, wp))
            .sqrt(wp)
            .expect("positive");
        let mut t = MPReal::pow2(-2, wp);
        let mut p: i64 = 0;
        loop {
            let an = (&a + &b).mul_pow2(-1);
            let diff = &a - &an;
            let bn = (&a * &b).sqrt(wp).expect("positive");
            t = &t - &(&diff * &diff).mul_pow2(p);
            p += 1;
            a = an;
            b = bn;
            if (&a - &b).abs_below_pow2(-((wp as i64 + 8) / 2)) {
                break;
            }
        }
        let s = &a + &b;
        ((&s * &s) / t.mul_pow2(2)).with_prec(prec)
    }

    /// ln 2 = 2·atanh(1/3).
    pub fn ln2(prec: u32) -> MPReal {
        let wp = guarded(prec) + 8;
        let third = MPReal::from_i64(1, wp) / MPReal::from_i64(3, wp);
        let mut power = third.clone();
        let mut sum = third;
        let mut k: i64 = 1;
        loop {
            power = power.div_i64(9);
            let term = power.div_i64(2 * k + 1);
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        sum.mul_pow2(1).with_prec(prec)
    }

    /// e^x. Argument reduction by ln 2 and binary halving, then Taylor.
    pub fn exp(&self, prec: u32) -> MPReal {
        if self.is_zero() {
            return MPReal::from_i64(1, prec);
        }
        let halvings = isqrt_u32(prec).max(4);
        let wp = guarded(prec) + 2 * halvings + 16;
        let x = self.with_prec(wp);
        let ln2 = MPReal::ln2(wp + 64);
        let n = (&x / &ln2).round_to_int();
        let n_i64 = n.to_i64().expect("exponent within range");
        let r = (&x - &ln2.mul_i64(n_i64)).with_prec(wp);
        // r/2^m, Taylor, then m squarings
        let r2 = r.mul_pow2(-(halvings as i64));
        let mut term = MPReal::from_i64(1, wp);
        let mut sum = term.clone();
        let mut k: i64 = 1;
        loop {
            term = (&term * &r2).div_i64(k);
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        for _ in 0..halvings {
            sum = &sum * &sum;
        }
        sum.mul_pow2(n_i64).with_prec(prec)
    }

    /// Natural logarithm; errors on x ≤ 0. Reduction: mantissa into
    /// [3/4, 3/2), √prec square roots, then the atanh series.
    pub fn ln(&self, prec: u32) -> Result<MPReal, MPError> {
        if self.is_zero() || self.is_negative() {
            return Err(MPError::LogDomain);
        }
        let reductions = isqrt_u32(prec).max(4);
        let wp = guarded(prec) + 2 * reductions + 16;
        // x = m · 2^e with m in [1, 2)
        let bits = self.mant.magnitude().bits() as i64;
        let mut e = self.exp + bits - 1;
        let mut m = MPReal::normalized(self.mant.clone(), -(bits - 1), wp);
        let three_halves = MPReal::from_rational(&crate::exact::rat(3, 2), wp);
        if m.cmp_value(&three_halves) != std::cmp::Ordering::Less {
            m = m.mul_pow2(-1);
            e += 1;
        }
        if m == MPReal::from_i64(1, wp) && e == 0 {
            return Ok(MPReal::zero(prec));
        }
        let mut y = m;
        for _ in 0..reductions {
            y = y.sqrt(wp).expect("positive");
        }
        let one = MPReal::from_i64(1, wp);
        let t = (&y - &one) / (&y + &one);
        let t2 = &t * &t;
        let mut power = t.clone();
        let mut sum = t;
        let mut j: i64 = 1;
        loop {
            power = &power * &t2;
            let term = power.div_i64(2 * j + 1);
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            sum = &sum + &term;
            j += 1;
        }
        let ln_m = sum.mul_pow2(reductions as i64 + 1);
        let ln2 = MPReal::ln2(wp + 64);
        Ok((&ln_m + &ln2.mul_i64(e)).with_prec(prec))
    }

    /// Principal arctangent in (−π/2, π/2).
    pub fn atan(&self, prec: u32) -> MPReal {
        if self.is_zero() {
            return MPReal::zero(prec);
        }
        let halvings = isqrt_u32(prec).max(4);
        let wp = guarded(prec) + 2 * halvings + 16;
        let one = MPReal::from_i64(1, wp);
        let x = self.with_prec(wp);
        let (x, flip) = if x.abs() > one {
            (&one / &x, true)
        } else {
            (x, false)
        };
        let mut y = x;
        for _ in 0..halvings {
            let hyp = (&one + &(&y * &y)).sqrt(wp).expect("positive");
            y = &y / &(&one + &hyp);
        }
        let y2 = &y * &y;
        let mut power = y.clone();
        let mut sum = y;
        let mut j: i64 = 1;
        loop {
            power = -&(&power * &y2);
            let term = power.div_i64(2 * j + 1);
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            sum = &sum + &term;
            j += 1;
        }
        let mut r = sum.mul_pow2(halvings as i64);
        if flip {
            let half_pi = MPReal::pi(wp).mul_pow2(-1);
            r = if self.is_positive() { &half_pi - &r } else { -&(&half_pi + &r) };
        }
        r.with_prec(prec)
    }

    /// Principal argument of the point (x, y): atan2(y, x) ∈ (−π, π],
    /// with the convention atan2(0, x<0) = +π.
    pub fn atan2(y: &MPReal, x: &MPReal, prec: u32) -> MPReal {
        let wp = guarded(prec);
        if y.is_zero() {
            return if x.is_negative() {
                MPReal::pi(prec)
            } else {
                MPReal::zero(prec)
            };
        }
        if x.is_zero() {
            let half_pi = MPReal::pi(wp).mul_pow2(-1);
            return if y.is_positive() { half_pi.with_prec(prec) } else { (-&half_pi).with_prec(prec) };
        }
        let base = (y / x).atan(wp);
        let r = if x.is_positive() {
            base
        } else if y.is_positive() {
            &base + &MPReal::pi(wp)
        } else {
            &base - &MPReal::pi(wp)
        };
        r.with_prec(prec)
    }

    /// Simultaneous sine and cosine with argument reduction by π/2.
    pub fn sin_cos(&self, prec: u32) -> (MPReal, MPReal) {
        let mag = self.magnitude_exp().unwrap_or(0).max(0) as u32;
        let wp = guarded(prec) + 2 * mag + 16;
        let x = self.with_prec(wp);
        let half_pi = MPReal::pi(wp + 2 * mag + 8).mul_pow2(-1);
        let n = (&x / &half_pi).round_to_int();
        let n_i64 = n.to_i64().expect("argument within reduction range");
        let r = &x - &half_pi.mul_i64(n_i64);
        // Taylor for sin and cos on |r| ≤ π/4
        let r2 = &r * &r;
        let mut sterm = r.clone();
        let mut s = r;
        let mut k: i64 = 1;
        loop {
            sterm = -&(&sterm * &r2).div_i64(2 * k * (2 * k + 1));
            if sterm.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            s = &s + &sterm;
            k += 1;
        }
        let mut cterm = MPReal::from_i64(1, wp);
        let mut c = cterm.clone();
        let mut k: i64 = 1;
        loop {
            cterm = -&(&cterm * &r2).div_i64(2 * k * (2 * k - 1));
            if cterm.abs_below_pow2(-(wp as i64 + 2)) {
                break;
            }
            c = &c + &cterm;
            k += 1;
        }
        let (s, c) = match n_i64.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -&s),
            2 => (-&s, -&c),
            _ => (-&c, s),
        };
        (s.with_prec(prec), c.with_prec(prec))
    }

    pub fn sin(&self, prec: u32) -> MPReal {
        self.sin_cos(prec).0
    }

    pub fn cos(&self, prec: u32) -> MPReal {
        self.sin_cos(prec).1
    }

    /// Arithmetic–geometric mean of two positive numbers.
    pub fn agm(a: &MPReal, b: &MPReal, prec: u32) -> Result<MPReal, MPError> {
        if !a.is_positive() || !b.is_positive() {
            return Err(MPError::AgmDomain);
        }
        let wp = guarded(prec) + 8;
        let mut x = a.with_prec(wp);
        let mut y = b.with_prec(wp);
        loop {
            let diff = &x - &y;
            if diff
                .abs()
                .cmp_value(&x.abs().mul_pow2(-(wp as i64 - 2)))
                != std::cmp::Ordering::Greater
            {
                break;
            }
            let xn = (&x + &y).mul_pow2(-1);
            let yn = (&x * &y).sqrt(wp)?;
            x = xn;
            y = yn;
        }
        Ok(((&x + &y).mul_pow2(-1)).with_prec(prec))
    }

    /// Positive n-th root of a non-negative number: exp(ln x / n)
    /// followed by one Newton correction.
    pub fn nth_root(&self, n: u32, prec: u32) -> Result<MPReal, MPError> {
        assert!(n >= 1, "root order must be at least 1");
        if self.is_negative() {
            return Err(MPError::RootDomain);
        }
        if self.is_zero() {
            return Ok(MPReal::zero(prec));
        }
        if n == 1 {
            return Ok(self.with_prec(prec));
        }
        if n == 2 {
            return self.sqrt(prec);
        }
        let wp = guarded(prec) + 16;
        let x = self.with_prec(wp);
        let y0 = x.ln(wp)?.div_i64(n as i64).exp(wp);
        // Newton: y ← y − (yⁿ − x)/(n·yⁿ⁻¹)
        let yn1 = y0.powi(n as i64 - 1, wp);
        let yn = &yn1 * &y0;
        let correction = (&yn - &x) / &yn1.mul_i64(n as i64);
        Ok((&y0 - &correction).with_prec(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close(a: &MPReal, b: &MPReal, bits: i64) -> bool {
        let scale = a.abs().max_value(b.abs()).max_value(MPReal::from_i64(1, a.precision()));
        let bound = scale.mul_pow2(-bits);
        (a - b).abs() < bound
    }

    #[test]
    fn pi_matches_machin() {
        // independent route: π = 16·atan(1/5) − 4·atan(1/239)
        let p = 320;
        let pi = MPReal::pi(p);
        let fifth = MPReal::from_rational(&rat(1, 5), p + 32);
        let inv239 = MPReal::from_rational(&rat(1, 239), p + 32);
        let machin = &fifth.atan(p + 16).mul_i64(16) - &inv239.atan(p + 16).mul_i64(4);
        assert!(close(&pi, &machin, p as i64 - 4));
    }

    #[test]
    fn exp_ln_inverse_pair() {
        let p = 256;
        for v in [(3, 2), (1, 7), (355, 113), (1, 1)] {
            let x = MPReal::from_rational(&rat(v.0, v.1), p);
            let back = x.exp(p + 16).ln(p).unwrap();
            assert!(close(&x, &back, p as i64 - 4), "exp/ln failed for {v:?}");
        }
        // and the other way
        let x = MPReal::from_i64(10, p);
        let back = x.ln(p + 16).unwrap().exp(p);
        assert!(close(&x, &back, p as i64 - 4));
    }

    #[test]
    fn ln_of_one_is_zero() {
        let one = MPReal::from_i64(1, 128);
        assert!(one.ln(128).unwrap().is_zero());
        assert!(MPReal::from_i64(-3, 64).ln(64).is_err());
        assert!(MPReal::zero(64).ln(64).is_err());
    }

    #[test]
    fn ln2_consistent_with_ln() {
        let p = 300;
        let two = MPReal::from_i64(2, p);
        assert!(close(&MPReal::ln2(p), &two.ln(p).unwrap(), p as i64 - 4));
    }

    #[test]
    fn atan_of_one_is_quarter_pi() {
        let p = 256;
        let one = MPReal::from_i64(1, p);
        let got = one.atan(p);
        let want = MPReal::pi(p).mul_pow2(-2);
        assert!(close(&got, &want, p as i64 - 4));
    }

    #[test]
    fn atan_stability_across_precision() {
        // atan at 128 bits agrees with the same value at 512 bits
        let arg128 = {
            let w = 160;
            let c2 = MPReal::from_i64(2, w).nth_root(3, w).unwrap();
            let c4 = MPReal::from_i64(4, w).nth_root(3, w).unwrap();
            let den = &(&MPReal::from_i64(3, w) + &c2) + &c4.mul_i64(3);
            (&MPReal::from_i64(3, w) / &den).atan(128)
        };
        let arg512 = {
            let w = 560;
            let c2 = MPReal::from_i64(2, w).nth_root(3, w).unwrap();
            let c4 = MPReal::from_i64(4, w).nth_root(3, w).unwrap();
            let den = &(&MPReal::from_i64(3, w) + &c2) + &c4.mul_i64(3);
            (&MPReal::from_i64(3, w) / &den).atan(512)
        };
        assert!(arg512.is_positive());
        assert!(arg512 < MPReal::pi(512).mul_pow2(-1));
        assert!(close(&arg128, &arg512, 124));
    }

    #[test]
    fn sin_cos_basic_identities() {
        let p = 256;
        let x = MPReal::from_rational(&rat(7, 5), p);
        let (s, c) = x.sin_cos(p);
        let unit = &(&s * &s) + &(&c * &c);
        assert!(close(&unit, &MPReal::from_i64(1, p), p as i64 - 6));
        // sin(π) ≈ 0, cos(π) ≈ −1
        let (sp, cp) = MPReal::pi(p + 16).sin_cos(p);
        assert!(sp.abs_below_pow2(-(p as i64 - 8)));
        assert!(close(&cp, &MPReal::from_i64(-1, p), p as i64 - 6));
    }

    #[test]
    fn agm_fixed_point_and_pi_relation() {
        let p = 256;
        let one = MPReal::from_i64(1, p);
        assert_eq!(MPReal::agm(&one, &one, p).unwrap(), one);
        for v in [(3, 1), (7, 2), (1, 10)] {
            let x = MPReal::from_rational(&rat(v.0, v.1), p);
            let g = MPReal::agm(&x, &x, p).unwrap();
            assert!(close(&g, &x, p as i64 - 4));
        }
        assert!(MPReal::agm(&one, &MPReal::from_i64(-1, p), p).is_err());
        // agm(1, 1/√2) relates to the lemniscate: π appears in GL iteration,
        // already covered by pi_matches_machin; here check agm symmetry
        let a = MPReal::from_rational(&rat(5, 3), p);
        let b = MPReal::from_rational(&rat(2, 7), p);
        let g1 = MPReal::agm(&a, &b, p).unwrap();
        let g2 = MPReal::agm(&b, &a, p).unwrap();
        assert!(close(&g1, &g2, p as i64 - 2));
    }

    #[test]
    fn nth_root_defining_property() {
        let p = 256;
        let x = MPReal::from_i64(24, p);
        let r = (MPReal::from_i64(1, p) / x).nth_root(10, p).unwrap();
        let tenth = r.powi(10, p).mul_i64(24);
        assert!(close(&tenth, &MPReal::from_i64(1, p), p as i64 - 6));
        assert!(MPReal::from_i64(-2, p).nth_root(3, p).is_err());
    }

    #[test]
    fn sqrt_rounds_correctly() {
        let p = 200;
        let two = MPReal::from_i64(2, p);
        let s = two.sqrt(p).unwrap();
        assert!(close(&(&s * &s), &two, p as i64 - 3));
    }

    #[test]
    fn precision_doubling_stability() {
        // re-evaluation at twice the precision moves results by less than
        // the coarse error bound
        let p = 192;
        let x = MPReal::from_rational(&rat(13, 7), 2 * p);
        for (f, g) in [
            (x.exp(p), x.exp(2 * p)),
            (x.ln(p).unwrap(), x.ln(2 * p).unwrap()),
            (x.atan(p), x.atan(2 * p)),
            (x.sqrt(p).unwrap(), x.sqrt(2 * p).unwrap()),
        ] {
            assert!(close(&f, &g, p as i64 - 2));
        }
    }
}
