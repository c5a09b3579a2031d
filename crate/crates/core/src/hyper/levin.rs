//! Levin u-transformation for slowly convergent series.
//!
//! Incremental form of the Weniger recurrences: one array slot per
//! partial sum, updated in place as terms arrive, so the deepest
//! transform T_N^{(0)} is always available at the head. Remainder
//! estimates are ω_n = (β+n)·a_n with β = 1 (the u variant), suited to
//! the polynomially decaying tails this crate meets at unit argument.

use crate::mpnum::MPReal;

pub struct LevinU {
    beta: i64,
    num: Vec<MPReal>,
    den: Vec<MPReal>,
    count: usize,
    wp: u32,
}

impl LevinU {
    pub fn new(wp: u32) -> LevinU {
        LevinU { beta: 1, num: Vec::new(), den: Vec::new(), count: 0, wp }
    }

    /// Feed the next partial sum S_n and its term a_n; returns the
    /// current best transform when at least two terms have arrived.
    pub fn push(&mut self, partial_sum: &MPReal, term: &MPReal) -> Option<MPReal> {
        let wp = self.wp;
        let n = self.count as i64;
        let omega = term.with_prec(wp).mul_i64(self.beta + n);
        if omega.is_zero() {
            // series terminated; the partial sum is exact
            return Some(partial_sum.clone());
        }
        self.num.push(&partial_sum.with_prec(wp) / &omega);
        self.den.push(&MPReal::from_i64(1, wp) / &omega);
        // fold the new column down to position 0; the factors
        // b^{(j)}_k = (β+j)(β+n−1)^{k−1}/(β+n)^k with k = n−1−j share the
        // ratio g = (β+n−1)/(β+n), so each step needs one multiplication
        if self.count > 0 {
            let g = MPReal::from_i64(self.beta + n - 1, wp).div_i64(self.beta + n);
            let mut g_pow = MPReal::from_i64(1, wp); // g^k
            for j in (0..self.count).rev() {
                let b = g_pow.mul_i64(self.beta + j as i64).div_i64(self.beta + n - 1);
                self.num[j] = &self.num[j + 1] - &(&b * &self.num[j]);
                self.den[j] = &self.den[j + 1] - &(&b * &self.den[j]);
                g_pow = &g_pow * &g;
            }
        }
        self.count += 1;
        if self.count < 2 || self.den[0].is_zero() {
            None
        } else {
            Some(&self.num[0] / &self.den[0])
        }
    }
}
