use super::*;
use crate::exact::rat;
use crate::mpnum::MPComplex;

fn close_digits(a: &MPReal, b: &MPReal, digits: i64) -> bool {
    let p = a.precision().max(b.precision());
    let scale = a.abs().max_value(b.abs()).max_value(MPReal::from_i64(1, p));
    let tol = MPReal::parse_decimal(&format!("1e-{digits}"), p).unwrap();
    (a - b).abs() < &scale * &tol
}

fn digits_to_bits(d: u32) -> u32 {
    (d as f64 * 3.33).ceil() as u32 + 16
}

#[test]
fn series_at_zero_is_one() {
    let p = 128;
    let spec = HGSpec::new(
        vec![rat(1, 6), rat(5, 6)],
        vec![rat(1, 1)],
        MPReal::zero(p),
    )
    .unwrap();
    let v = phg_series_value(&spec, p).unwrap();
    assert_eq!(v, MPReal::from_i64(1, p));
}

#[test]
fn gauss_closed_form_matches_series_at_one() {
    // ₂F₁(1/6, 5/6; 3/2; 1) = 3√3/4, forty digits
    let p = digits_to_bits(45);
    let v = gauss_sum(&rat(1, 6), &rat(5, 6), &rat(3, 2), p).unwrap();
    let want = {
        let w = p + 16;
        MPReal::from_i64(3, w).sqrt(w).unwrap().mul_i64(3).div_i64(4)
    };
    assert!(close_digits(&v, &want, 40));
    // and the direct accelerated series agrees
    let spec = HGSpec::new(
        vec![rat(1, 6), rat(5, 6)],
        vec![rat(3, 2)],
        MPReal::from_i64(1, p),
    )
    .unwrap();
    let series = phg_series(&spec, p).unwrap();
    assert!(close_digits(&series.value, &v, 30));
}

#[test]
fn gauss_sum_rejects_divergent_and_degenerate() {
    assert!(matches!(
        gauss_sum(&rat(1, 2), &rat(1, 2), &rat(1, 2), 128),
        Err(HyperError::DivergentSeries(_))
    ));
    // a = 0 gives the empty product: value 1
    let v = gauss_sum(&rat(0, 1), &rat(1, 3), &rat(7, 5), 128).unwrap();
    assert!(close_digits(&v, &MPReal::from_i64(1, 128), 35));
    // c − a a non-positive integer zeroes the quotient
    let v = gauss_sum(&rat(5, 2), &rat(-3, 2), &rat(3, 2), 128);
    assert!(v.unwrap().is_zero());
}

#[test]
fn main_family_value_against_log_closed_form() {
    // ₃F₂(1/6, 5/6, 1/2; 1, 3/2; 1) = (3√3/2π)·log(2+√3)
    let p = digits_to_bits(40);
    let spec = HGSpec::family_3f2(&rat(1, 6), &rat(5, 6), &rat(1, 2), p).unwrap();
    let series = phg_series(&spec, p).unwrap();
    let want = {
        let w = p + 32;
        let sqrt3 = MPReal::from_i64(3, w).sqrt(w).unwrap();
        let arg = &MPReal::from_i64(2, w) + &sqrt3;
        let log = MPComplex::from_real(arg).ln(w).unwrap();
        &(&sqrt3.mul_i64(3) * log.re()) / &MPReal::pi(w).mul_pow2(1)
    };
    assert!(
        close_digits(&series.value, &want, 30),
        "series {} vs closed form {}",
        series.value.to_decimal(40),
        want.to_decimal(40)
    );
    assert!(series.value.to_decimal(20).starts_with("1.08911541394284"));
    // the Euler transform is the precision workhorse: 40+ digits here
    let euler = euler_transform_3f2(&rat(1, 6), &rat(5, 6), &rat(1, 2), p).unwrap();
    assert!(close_digits(&euler.value, &want, 38));
}

#[test]
fn euler_and_series_cross_method_agreement() {
    let p = digits_to_bits(36);
    for q in [rat(1, 2), rat(1, 3), rat(1, 5)] {
        let spec = HGSpec::family_3f2(&rat(1, 6), &rat(5, 6), &q, p).unwrap();
        let series = phg_series(&spec, p).unwrap();
        let euler = euler_transform_3f2(&rat(1, 6), &rat(5, 6), &q, p).unwrap();
        assert!(
            close_digits(&series.value, &euler.value, 30),
            "q = {q}: series {} vs euler {}",
            series.value.to_decimal(40),
            euler.value.to_decimal(40)
        );
    }
}

#[test]
fn euler_transform_with_integer_q() {
    // q = 1: ₃F₂(1/6, 5/6, 1; 1, 2; 1), series vs quadrature
    let p = digits_to_bits(30);
    let euler = euler_transform_3f2(&rat(1, 6), &rat(5, 6), &rat(1, 1), p).unwrap();
    let spec = HGSpec::new(
        vec![rat(1, 6), rat(5, 6), rat(1, 1)],
        vec![rat(1, 1), rat(2, 1)],
        MPReal::from_i64(1, p),
    )
    .unwrap();
    let series = phg_series(&spec, p).unwrap();
    assert!(close_digits(&euler.value, &series.value, 25));
}

#[test]
fn euler_transform_with_large_q() {
    // q = 10, a = b = 1/4: the integrand mass concentrates at t = 1
    let p = digits_to_bits(30);
    let euler = euler_transform_3f2(&rat(1, 4), &rat(1, 4), &rat(10, 1), p).unwrap();
    let spec = HGSpec::new(
        vec![rat(1, 4), rat(1, 4), rat(10, 1)],
        vec![rat(1, 2), rat(11, 1)],
        MPReal::from_i64(1, p),
    )
    .unwrap();
    let series = phg_series(&spec, p).unwrap();
    assert!(
        close_digits(&euler.value, &series.value, 25),
        "euler {} vs series {}",
        euler.value.to_decimal(35),
        series.value.to_decimal(35)
    );
}

#[test]
fn unit_argument_preconditions() {
    let p = 128;
    // σ = 0 diverges at x = 1
    assert!(matches!(
        HGSpec::new(
            vec![rat(1, 2), rat(1, 2), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
            MPReal::from_i64(1, p),
        ),
        Err(HyperError::DivergentSeries(_))
    ));
    // non-positive-integer lower parameter rejected
    assert!(matches!(
        HGSpec::new(vec![rat(1, 2)], vec![rat(-2, 1)], MPReal::zero(p)),
        Err(HyperError::InvalidParameters(_))
    ));
    // q ≤ 0 rejected by the Euler transform
    assert!(euler_transform_3f2(&rat(1, 6), &rat(5, 6), &rat(-1, 2), p).is_err());
}

#[test]
fn ode_residual_for_paper_equation() {
    // (t−t²)u″ + (1−2t)u′ − (5/36)u = 0 for u = ₂F₁(1/6, 5/6; 1; t)
    let p = 200;
    for (n, d) in [(1i64, 4i64), (9, 10)] {
        let t0 = MPReal::from_rational(&rat(n, d), p);
        let r = hg2f1_ode_residual(&rat(1, 6), &rat(5, 6), &rat(1, 1), &t0, p).unwrap();
        assert!(
            r.abs() < MPReal::parse_decimal("1e-40", p).unwrap(),
            "residual at t0={n}/{d}: {}",
            r.to_decimal(6)
        );
    }
}

#[test]
fn ode_residual_generic_parameters() {
    let p = 192;
    let t0 = MPReal::from_rational(&rat(1, 2), p);
    let r = hg2f1_ode_residual(&rat(2, 7), &rat(3, 5), &rat(11, 6), &t0, p).unwrap();
    assert!(r.abs() < MPReal::parse_decimal("1e-40", p).unwrap());
    assert!(hg2f1_ode_residual(&rat(1, 6), &rat(5, 6), &rat(1, 1), &MPReal::from_i64(2, p), p).is_err());
}

#[test]
fn ode_residual_by_finite_differences_oracle() {
    // independent check of the term-wise derivatives: second differences
    // of the series evaluation satisfy the same ODE coarsely
    let p = 320;
    let f = Gauss2F1::new(rat(1, 6), rat(5, 6), rat(1, 1), p).unwrap();
    let wp = f.working_precision();
    let h = MPReal::pow2(-40, wp);
    let t0 = MPReal::from_rational(&rat(2, 5), wp);
    let at = |t: &MPReal| {
        let omt = &MPReal::from_i64(1, wp) - t;
        f.eval(t, &omt).unwrap()
    };
    let fm = at(&(&t0 - &h));
    let f0 = at(&t0);
    let fp = at(&(&t0 + &h));
    let u1 = (&fp - &fm) / h.mul_pow2(1);
    let u2 = &(&(&fp + &fm) - &f0.mul_pow2(1)) / &(&h * &h);
    let one = MPReal::from_i64(1, wp);
    let lhs = &(&(&(&t0 * &(&one - &t0)) * &u2)
        + &(&(&one - &t0.mul_pow2(1)) * &u1))
        - &f0.mul_i64(5).div_i64(36);
    assert!(
        lhs.abs() < MPReal::parse_decimal("1e-15", wp).unwrap(),
        "finite-difference residual {}",
        lhs.to_decimal(6)
    );
}

#[test]
fn series_gauss_agreement_on_random_draws() {
    // 20 random convergent draws: series at x=1 vs the Gamma closed form
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let p = digits_to_bits(34);
    let mut checked = 0;
    while checked < 20 {
        let a = rat(rng.gen_range(1..12), rng.gen_range(2..9));
        let b = rat(rng.gen_range(1..12), rng.gen_range(2..9));
        let margin = rat(rng.gen_range(1..8), 4); // c − a − b ∈ [1/4, 2)
        let c = &(&a + &b) + &margin;
        if c.is_nonpositive_integer() {
            continue;
        }
        let closed = gauss_sum(&a, &b, &c, p).unwrap();
        let spec = HGSpec::new(vec![a.clone(), b.clone()], vec![c.clone()], MPReal::from_i64(1, p)).unwrap();
        let series = phg_series(&spec, p).unwrap();
        assert!(
            close_digits(&series.value, &closed, 30),
            "draw a={a} b={b} c={c}: {} vs {}",
            series.value.to_decimal(36),
            closed.to_decimal(36)
        );
        checked += 1;
    }
}

#[test]
fn family_value_monotone_in_q() {
    // F(q) = q·Σ cₙ/(q+n) with positive cₙ grows with q: each integrand
    // weight q/(q+n) does. Checked on the grid q = k/5.
    let p = digits_to_bits(25);
    let mut prev: Option<MPReal> = None;
    for k in 1..=4 {
        let spec = HGSpec::family_3f2(&rat(1, 6), &rat(5, 6), &rat(k, 5), p).unwrap();
        let v = phg_series(&spec, p).unwrap().value;
        if let Some(prev) = &prev {
            assert!(*prev < v, "F(k/5) should increase with k");
        }
        prev = Some(v);
    }
}

#[test]
fn precision_scaling_of_series() {
    let p = digits_to_bits(30);
    let spec1 = HGSpec::family_3f2(&rat(1, 6), &rat(5, 6), &rat(2, 5), p).unwrap();
    let spec2 = HGSpec::family_3f2(&rat(1, 6), &rat(5, 6), &rat(2, 5), 2 * p).unwrap();
    let v1 = phg_series(&spec1, p).unwrap();
    let v2 = phg_series(&spec2, 2 * p).unwrap();
    let err = (&v1.value - &v2.value).abs();
    assert!(&err * &MPReal::from_i64(4, p) < v1.est_error.max_value(MPReal::pow2(-(p as i64), p)) * MPReal::from_i64(8, p));
    assert!(close_digits(&v1.value, &v2.value, 28));
}
