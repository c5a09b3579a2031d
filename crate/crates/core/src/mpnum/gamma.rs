//! Gamma and digamma via argument shift and the Stirling asymptotic
//! series, with reflection for arguments left of 1/2.
//!
//! The Bernoulli numbers feeding the series are generated exactly from
//! tangent numbers (an all-positive integer recurrence, so no
//! cancellation), as B_{2k} = (−1)^{k−1}·2k·T_k / (4^k(4^k−1)). For real
//! z ≥ R the truncation error of the Stirling series is bounded by the
//! first omitted term; for complex z the shift also enforces
//! Re z ≥ |Im z| (so |arg z| ≤ π/4) and the tolerance carries the
//! sec(arg/2)^{2k+2} growth factor.

use super::{guarded, MPComplex, MPError, MPReal};
use num_bigint::BigInt;
use num_traits::One;

/// Tangent numbers T_1..T_n by the Knuth–Buckholtz triangle.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = Vec::with_capacity(n);
    t.push(BigInt::one());
    for k in 2..=n {
        let prev = t[k - 2].clone();
        t.push(prev * (k as i64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = &t[j - 2] * (j - k) as i64;
            let b = &t[j - 1] * (j - k + 2) as i64;
            t[j - 1] = a + b;
        }
    }
    t
}

/// Precomputed Stirling-series coefficients at one working precision.
/// Build once and reuse when evaluating many Gamma values.
pub struct GammaTable {
    prec: u32,
    wp: u32,
    /// Minimum real part after shifting.
    shift_target: u32,
    /// c_k = B_{2k}/(2k(2k−1)) for ln Γ.
    ln_coeffs: Vec<MPReal>,
    /// d_k = B_{2k}/(2k) for ψ.
    psi_coeffs: Vec<MPReal>,
    ln_two_pi_half: MPReal,
    pi: MPReal,
}

impl GammaTable {
    pub fn new(prec: u32) -> GammaTable {
        let wp = guarded(prec) + 32;
        let shift_target = ((wp as f64 * 0.175).ceil() as u32).max(24) + 8;
        let terms = shift_target as usize + 24;
        let tangents = tangent_numbers(terms);
        let mut ln_coeffs = Vec::with_capacity(terms);
        let mut psi_coeffs = Vec::with_capacity(terms);
        let four = BigInt::from(4);
        let mut four_k = BigInt::one();
        for (i, t_k) in tangents.iter().enumerate() {
            let k = (i + 1) as i64;
            four_k *= &four;
            let base = &four_k * (&four_k - BigInt::one());
            let num = if k % 2 == 1 { t_k.clone() } else { -t_k };
            ln_coeffs.push(MPReal::from_bigint_ratio(&num, &(&base * (2 * k - 1)), wp));
            psi_coeffs.push(MPReal::from_bigint_ratio(&num, &base, wp));
        }
        let pi = MPReal::pi(wp);
        let ln_two_pi_half = pi
            .mul_pow2(1)
            .ln(wp)
            .expect("2π is positive")
            .mul_pow2(-1);
        GammaTable { prec, wp, shift_target, ln_coeffs, psi_coeffs, ln_two_pi_half, pi }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn is_near_nonpositive_integer(&self, x: &MPReal) -> bool {
        if x.is_positive() && *x > MPReal::from_rational(&crate::exact::rat(1, 2), 64) {
            return false;
        }
        let n = x.round_to_int();
        if n > num_traits::Zero::zero() {
            return false;
        }
        let diff = x - &MPReal::from_bigint(&n, self.wp);
        diff.abs_below_pow2(-(self.wp as i64) + 12)
    }

    /// ln Γ(z) for real z ≥ shift_target.
    fn ln_gamma_shifted(&self, z: &MPReal) -> MPReal {
        let wp = self.wp;
        let half = MPReal::pow2(-1, wp);
        let mut acc = &(&(z - &half) * &z.ln(wp).expect("z positive")) - z;
        acc = &acc + &self.ln_two_pi_half;
        let inv = MPReal::from_i64(1, wp) / z;
        let inv2 = &inv * &inv;
        let mut power = inv;
        for c in &self.ln_coeffs {
            let term = c * &power;
            acc = &acc + &term;
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                return acc;
            }
            power = &power * &inv2;
        }
        unreachable!("Stirling series did not reach tolerance; shift target too small")
    }

    /// Γ(x) for real x; errors at non-positive integers.
    pub fn gamma_real(&self, x: &MPReal) -> Result<MPReal, MPError> {
        let wp = self.wp;
        let x = x.with_prec(wp);
        if self.is_near_nonpositive_integer(&x) {
            return Err(MPError::GammaPole);
        }
        if x < MPReal::pow2(-1, wp) {
            // Γ(x) = π / (sin(πx)·Γ(1−x))
            let s = sin_pi(&x, wp);
            let g = self.gamma_real(&(&MPReal::from_i64(1, wp) - &x))?;
            return Ok((&self.pi / &(&s * &g)).with_prec(self.prec));
        }
        let r = MPReal::from_i64(self.shift_target as i64, wp);
        let steps = if x < r {
            (&r - &x).floor_to_int() + 1
        } else {
            num_traits::Zero::zero()
        };
        let steps = num_traits::ToPrimitive::to_i64(&steps).expect("bounded shift") as u32;
        let z = &x + &MPReal::from_i64(steps as i64, wp);
        let ln_gamma = self.ln_gamma_shifted(&z);
        let mut result = ln_gamma.exp(wp);
        if steps > 0 {
            let mut product = x.clone();
            for j in 1..steps {
                product = &product * &(&x + &MPReal::from_i64(j as i64, wp));
            }
            result = &result / &product;
        }
        Ok(result.with_prec(self.prec))
    }

    /// Γ(z) for complex z; reflection for Re z < 1/2, shift until
    /// Re z ≥ max(shift target, |Im z|).
    pub fn gamma_complex(&self, z: &MPComplex) -> Result<MPComplex, MPError> {
        let wp = self.wp;
        let z = z.with_prec(wp);
        if z.im().abs_below_pow2(-(wp as i64) + 12) && self.is_near_nonpositive_integer(z.re()) {
            return Err(MPError::GammaPole);
        }
        if *z.re() < MPReal::pow2(-1, wp) {
            let one = MPComplex::one(wp);
            let s = sin_pi_complex(&z, wp);
            if s.is_zero() {
                return Err(MPError::GammaPole);
            }
            let g = self.gamma_complex(&(&one - &z))?;
            let denom = &s * &g;
            return Ok((&MPComplex::from_real(self.pi.clone()) / &denom).with_prec(self.prec));
        }
        let r = MPReal::from_i64(self.shift_target as i64, wp).max_value(z.im().abs());
        let steps = if *z.re() < r {
            num_traits::ToPrimitive::to_i64(&(&r - z.re()).floor_to_int())
                .expect("bounded shift") as u32
                + 1
        } else {
            0
        };
        let zs = &z + &MPComplex::from_real(MPReal::from_i64(steps as i64, wp));
        // ln Γ with the sec(arg/2) factor folded into the tolerance
        let half = MPComplex::from_real(MPReal::pow2(-1, wp));
        let mut acc = &(&(&zs - &half) * &zs.ln(wp)?) - &zs;
        acc = &acc + &MPComplex::from_real(self.ln_two_pi_half.clone());
        let inv = &MPComplex::one(wp) / &zs;
        let inv2 = &inv * &inv;
        let mut power = inv;
        let mut converged = false;
        for (k, c) in self.ln_coeffs.iter().enumerate() {
            let term = power.scale_real(c);
            acc = &acc + &term;
            let tol_exp = -(wp as i64 + 2) - (k as i64 / 4 + 1);
            if term.re().abs_below_pow2(tol_exp) && term.im().abs_below_pow2(tol_exp) {
                converged = true;
                break;
            }
            power = &power * &inv2;
        }
        assert!(converged, "complex Stirling series did not reach tolerance");
        let mut result = acc.exp(wp);
        if steps > 0 {
            let mut product = z.clone();
            for j in 1..steps {
                product = &product * &(&z + &MPComplex::from_real(MPReal::from_i64(j as i64, wp)));
            }
            result = &result / &product;
        }
        Ok(result.with_prec(self.prec))
    }

    /// ψ(x) = Γ'(x)/Γ(x) for real x; errors at non-positive integers.
    pub fn digamma_real(&self, x: &MPReal) -> Result<MPReal, MPError> {
        let wp = self.wp;
        let x = x.with_prec(wp);
        if self.is_near_nonpositive_integer(&x) {
            return Err(MPError::GammaPole);
        }
        if x < MPReal::pow2(-1, wp) {
            // ψ(x) = ψ(1−x) − π·cot(πx)
            let s = sin_pi(&x, wp);
            let c = cos_pi(&x, wp);
            let cot = &c / &s;
            let rest = self.digamma_real(&(&MPReal::from_i64(1, wp) - &x))?;
            return Ok((&rest - &(&self.pi * &cot)).with_prec(self.prec));
        }
        let r = MPReal::from_i64(self.shift_target as i64, wp);
        let steps = if x < r {
            num_traits::ToPrimitive::to_i64(&(&r - &x).floor_to_int()).expect("bounded") as u32 + 1
        } else {
            0
        };
        let z = &x + &MPReal::from_i64(steps as i64, wp);
        // ψ(z) = ln z − 1/(2z) − Σ d_k z^{−2k}
        let inv = MPReal::from_i64(1, wp) / &z;
        let inv2 = &inv * &inv;
        let mut acc = &z.ln(wp)? - &inv.mul_pow2(-1);
        let mut power = inv2.clone();
        let mut converged = false;
        for d in &self.psi_coeffs {
            let term = d * &power;
            acc = &acc - &term;
            if term.abs_below_pow2(-(wp as i64 + 2)) {
                converged = true;
                break;
            }
            power = &power * &inv2;
        }
        assert!(converged, "digamma series did not reach tolerance");
        // undo the shift: ψ(x) = ψ(z) − Σ_{j<steps} 1/(x+j)
        if steps > 0 {
            let mut correction = MPReal::zero(wp);
            for j in 0..steps {
                let denom = &x + &MPReal::from_i64(j as i64, wp);
                correction = &correction + &(MPReal::from_i64(1, wp) / denom);
            }
            acc = &acc - &correction;
        }
        Ok(acc.with_prec(self.prec))
    }
}

/// sin(πx) with exact integer reduction: sin(π(n+f)) = (−1)^n sin(πf).
pub(crate) fn sin_pi(x: &MPReal, prec: u32) -> MPReal {
    let mag = x.magnitude_exp().unwrap_or(0).max(0) as u32;
    let wp = guarded(prec) + mag + 8;
    let x = x.with_prec(wp);
    let n = x.floor_to_int();
    let f = &x - &MPReal::from_bigint(&n, wp);
    // fold [0,1) onto [0,1/2] where sin(πf) = sin(π(1−f))
    let half = MPReal::pow2(-1, wp);
    let arg = if f > half {
        &MPReal::from_i64(1, wp) - &f
    } else {
        f
    };
    let s = (&MPReal::pi(wp) * &arg).sin(wp);
    let negate = n.bit(0);
    let s = if negate { -&s } else { s };
    s.with_prec(prec)
}

/// cos(πx) = sin(π(x + 1/2)).
pub(crate) fn cos_pi(x: &MPReal, prec: u32) -> MPReal {
    let wp = guarded(prec) + 8;
    sin_pi(&(&x.with_prec(wp) + &MPReal::pow2(-1, wp)), prec)
}

/// sin(πz) for complex z via sin(a+bi) = sin a·cosh b + i·cos a·sinh b.
fn sin_pi_complex(z: &MPComplex, prec: u32) -> MPComplex {
    let wp = guarded(prec) + 8;
    if z.im().is_zero() {
        return MPComplex::from_real(sin_pi(z.re(), prec));
    }
    let s = sin_pi(z.re(), wp);
    let c = cos_pi(z.re(), wp);
    let b = &MPReal::pi(wp) * z.im();
    let e = b.exp(wp);
    let einv = MPReal::from_i64(1, wp) / &e;
    let cosh = (&e + &einv).mul_pow2(-1);
    let sinh = (&e - &einv).mul_pow2(-1);
    MPComplex::new((&s * &cosh).with_prec(prec), (&c * &sinh).with_prec(prec))
}

/// Γ(x) for real x at the requested precision.
pub fn gamma_real(x: &MPReal, prec: u32) -> Result<MPReal, MPError> {
    GammaTable::new(prec).gamma_real(x)
}

/// Γ(z) for complex z at the requested precision.
pub fn gamma_complex(z: &MPComplex, prec: u32) -> Result<MPComplex, MPError> {
    GammaTable::new(prec).gamma_complex(z)
}

/// ψ(x) for real x at the requested precision.
pub fn digamma_real(x: &MPReal, prec: u32) -> Result<MPReal, MPError> {
    GammaTable::new(prec).digamma_real(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn mp(n: i64, d: i64, p: u32) -> MPReal {
        MPReal::from_rational(&rat(n, d), p)
    }

    fn close(a: &MPReal, b: &MPReal, bits: i64) -> bool {
        let scale = a.abs().max_value(b.abs());
        if scale.is_zero() {
            return true;
        }
        (a - b).abs_below_pow2(scale.magnitude_exp().unwrap() - bits)
    }

    #[test]
    fn tangent_numbers_match_known_values() {
        let t = tangent_numbers(6);
        let expect: Vec<i64> = vec![1, 2, 16, 272, 7936, 353792];
        for (a, b) in t.iter().zip(expect) {
            assert_eq!(a, &BigInt::from(b));
        }
    }

    #[test]
    fn gamma_at_half_is_sqrt_pi() {
        let p = 256;
        let g = gamma_real(&mp(1, 2, p), p).unwrap();
        let sqrt_pi = MPReal::pi(p + 8).sqrt(p).unwrap();
        assert!(close(&g, &sqrt_pi, p as i64 - 4));
        // literal digits from the reflection formula at 1/2
        assert_eq!(g.to_decimal(20), "1.7724538509055160273");
    }

    #[test]
    fn gamma_at_small_integers() {
        let p = 192;
        for (n, f) in [(1i64, 1i64), (2, 1), (3, 2), (4, 6), (5, 24), (8, 5040)] {
            let g = gamma_real(&MPReal::from_i64(n, p), p).unwrap();
            assert!(close(&g, &MPReal::from_i64(f, p), p as i64 - 4), "Γ({n})");
        }
    }

    #[test]
    fn gamma_quotient_three_sqrt_three_over_four() {
        // Γ(3/2)Γ(1/2)/(Γ(4/3)Γ(2/3)) = 3√3/4 via Γ(1/3)Γ(2/3) = 2π/√3
        let p = 320;
        let t = GammaTable::new(p);
        let num = &t.gamma_real(&mp(3, 2, p)).unwrap() * &t.gamma_real(&mp(1, 2, p)).unwrap();
        let den = &t.gamma_real(&mp(4, 3, p)).unwrap() * &t.gamma_real(&mp(2, 3, p)).unwrap();
        let got = &num / &den;
        let want = &MPReal::from_i64(3, p + 8).sqrt(p + 8).unwrap().mul_i64(3)
            / &MPReal::from_i64(4, p + 8);
        assert!(close(&got, &want, p as i64 - 6));
        assert!(got.to_decimal(21).starts_with("1.2990381056766579701"));
    }

    #[test]
    fn gamma_pole_and_reflection() {
        let p = 160;
        assert_eq!(gamma_real(&MPReal::zero(p), p), Err(MPError::GammaPole));
        assert_eq!(gamma_real(&MPReal::from_i64(-3, p), p), Err(MPError::GammaPole));
        // Γ(−1/2) = −2√π
        let g = gamma_real(&mp(-1, 2, p), p).unwrap();
        let want = -&MPReal::pi(p + 8).sqrt(p).unwrap().mul_i64(2);
        assert!(close(&g, &want, p as i64 - 4));
    }

    #[test]
    fn functional_equation_at_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260809);
        let p = 224;
        let t = GammaTable::new(p);
        for _ in 0..50 {
            let num = rng.gen_range(1..20000i64);
            let den = rng.gen_range(1..2000i64);
            let x = mp(num, den, p);
            if x >= MPReal::from_i64(10, p) || t.is_near_nonpositive_integer(&x) {
                continue;
            }
            let lhs = t.gamma_real(&(&x + &MPReal::from_i64(1, p))).unwrap();
            let rhs = &x * &t.gamma_real(&x).unwrap();
            assert!(close(&lhs, &rhs, p as i64 - 10), "x = {num}/{den}");
        }
    }

    #[test]
    fn reflection_identity_at_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let p = 224;
        let t = GammaTable::new(p);
        let pi = MPReal::pi(p);
        for _ in 0..50 {
            let num = rng.gen_range(-4000..4000i64);
            let den = rng.gen_range(2..500i64);
            let x = mp(num, den, p);
            if t.is_near_nonpositive_integer(&x)
                || t.is_near_nonpositive_integer(&(&MPReal::from_i64(1, p) - &x))
                || x.round_to_int() == x.floor_to_int() && (&x - &MPReal::from_bigint(&x.floor_to_int(), p)).is_zero()
            {
                continue;
            }
            let lhs = &(&t.gamma_real(&x).unwrap()
                * &t.gamma_real(&(&MPReal::from_i64(1, p) - &x)).unwrap())
                * &sin_pi(&x, p);
            assert!(close(&lhs, &pi, p as i64 - 12), "x = {num}/{den}");
        }
    }

    #[test]
    fn complex_gamma_agrees_with_real_on_the_axis() {
        let p = 224;
        let t = GammaTable::new(p);
        for v in [(1, 6), (5, 6), (7, 3), (-5, 4)] {
            let x = mp(v.0, v.1, p);
            let zr = t.gamma_real(&x).unwrap();
            let zc = t.gamma_complex(&MPComplex::from_real(x)).unwrap();
            assert!(close(&zr, zc.re(), p as i64 - 8));
            assert!(zc.im().abs_below_pow2(zr.magnitude_exp().unwrap() - (p as i64 - 10)));
        }
    }

    #[test]
    fn complex_gamma_conjugation_symmetry() {
        // Γ(conj z) = conj Γ(z)
        let p = 192;
        let t = GammaTable::new(p);
        let z = MPComplex::new(mp(1, 3, p), mp(5, 7, p));
        let a = t.gamma_complex(&z).unwrap();
        let b = t.gamma_complex(&z.conj()).unwrap();
        assert!(close(a.re(), b.re(), p as i64 - 8));
        assert!(close(&-a.im(), b.im(), p as i64 - 8));
    }

    #[test]
    fn digamma_recurrence_and_known_value() {
        let p = 224;
        let t = GammaTable::new(p);
        // ψ(x+1) = ψ(x) + 1/x
        let x = mp(3, 7, p);
        let lhs = t.digamma_real(&(&x + &MPReal::from_i64(1, p))).unwrap();
        let rhs = &t.digamma_real(&x).unwrap() + &(MPReal::from_i64(1, p) / &x);
        assert!(close(&lhs, &rhs, p as i64 - 8));
        // ψ(1/2) = −γ − 2 ln 2; check ψ(1/2) − ψ(1) = −2 ln 2
        let d = &t.digamma_real(&mp(1, 2, p)).unwrap() - &t.digamma_real(&mp(1, 1, p)).unwrap();
        let want = -&MPReal::ln2(p).mul_i64(2);
        assert!(close(&d, &want, p as i64 - 8));
    }
}
