//! Truncated Laurent series in the regulator over the exact coefficient
//! ring, and the expansion of closed-form values into them.
//!
//! Window semantics: coefficients are exact for powers in `lo..=hi`; the
//! value is certified to have no content below `lo` (constructors only
//! produce series whose floor is a proven pole bound), and powers above
//! `hi` are unknown.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::{max, min};
use num_traits::{One, Zero};

use crate::rat::{rat_i, Rat};
use crate::toymodel::ring::Poly;
use crate::toymodel::scaled::ScaledSum;
use crate::toymodel::ModelError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsSeries {
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, Poly>,
}

impl EpsSeries {
    pub fn zero(lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        EpsSeries {
            lo,
            hi,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// The coefficient of the given power. Powers below the floor are
    /// certified zero; asking above the ceiling is a caller bug.
    pub fn coeff(&self, k: i64) -> Poly {
        assert!(k <= self.hi, "coefficient {k} above the known window");
        self.coeffs.get(&k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &Poly)> {
        self.coeffs.iter()
    }

    pub fn set_coeff(&mut self, k: i64, p: Poly) {
        assert!(k >= self.lo && k <= self.hi);
        if p.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, p);
        }
    }

    pub fn add_coeff(&mut self, k: i64, p: &Poly) {
        let cur = self.coeffs.remove(&k).unwrap_or_else(Poly::zero);
        self.set_coeff(k, cur.add(p));
    }

    /// Lowest power with a nonzero stored coefficient; just past the
    /// ceiling when the series is zero on its window.
    fn support_lo(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.hi + 1)
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &EpsSeries) -> EpsSeries {
        let lo = min(self.lo, other.lo);
        let hi = min(self.hi, other.hi);
        let mut out = EpsSeries::zero(lo, hi);
        for (k, p) in &self.coeffs {
            if *k <= hi {
                out.add_coeff(*k, p);
            }
        }
        for (k, p) in &other.coeffs {
            if *k <= hi {
                out.add_coeff(*k, p);
            }
        }
        out
    }

    pub fn neg(&self) -> EpsSeries {
        EpsSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &EpsSeries) -> EpsSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rat) -> EpsSeries {
        if q.is_zero() {
            return EpsSeries::zero(self.lo, self.hi);
        }
        EpsSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|(k, p)| (*k, p.scale(q))).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> EpsSeries {
        let mut out = EpsSeries::zero(self.lo, self.hi);
        for (k, c) in &self.coeffs {
            out.set_coeff(*k, c.mul(p));
        }
        out
    }

    /// Product with truncation bookkeeping based on the supports: the
    /// unknown tails start above `hi`, so the product is exact up to
    /// `min(eff1 + hi2, eff2 + hi1, hi1 + hi2 + 1)`.
    pub fn mul(&self, other: &EpsSeries) -> EpsSeries {
        let e1 = self.support_lo();
        let e2 = other.support_lo();
        let lo = max(self.lo + other.lo, e1 + e2).min(self.hi + other.hi);
        let hi = min(min(e1 + other.hi, e2 + self.hi), self.hi + other.hi + 1);
        if hi < lo {
            // one side is zero on a window that starves the product;
            // the value is exactly zero wherever both are known
            return EpsSeries::zero(
                min(self.lo + other.lo, hi),
                hi.max(min(self.lo + other.lo, hi)),
            );
        }
        let mut out = EpsSeries::zero(lo, hi);
        for (k1, p1) in &self.coeffs {
            for (k2, p2) in &other.coeffs {
                let k = k1 + k2;
                if k >= lo && k <= hi {
                    out.add_coeff(k, &p1.mul(p2));
                }
            }
        }
        out
    }

    /// Keeps strictly negative powers. The result is exact everywhere on
    /// the window (nonnegative coefficients become known zeros).
    pub fn pole_part(&self) -> EpsSeries {
        EpsSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k < 0)
                .map(|(k, p)| (*k, p.clone()))
                .collect(),
        }
    }

    /// Extends the ceiling; sound only when the value is known to be an
    /// exact Laurent polynomial on the current window (pole parts are).
    pub(crate) fn extend_hi(&self, hi: i64) -> EpsSeries {
        EpsSeries {
            lo: self.lo,
            hi: max(self.hi, hi),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Widens the floor with certified zeros.
    pub(crate) fn pad_lo(&self, lo: i64) -> EpsSeries {
        EpsSeries {
            lo: min(self.lo, lo),
            hi: self.hi,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Clips to a requested window (which must be covered).
    pub(crate) fn clip(&self, lo: i64, hi: i64) -> EpsSeries {
        assert!(self.lo <= lo && hi <= self.hi, "window not covered");
        EpsSeries {
            lo,
            hi,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k >= lo && **k <= hi)
                .map(|(k, p)| (*k, p.clone()))
                .collect(),
        }
    }

    /// True when every strictly negative coefficient is exactly zero.
    /// Needs the window to reach -1 (or a floor already at or above 0).
    pub fn is_finite(&self) -> Result<bool, ModelError> {
        if self.lo >= 0 {
            return Ok(true);
        }
        if self.hi < -1 {
            return Err(ModelError::WindowTooSmall {
                needed_lo: -1,
                requested_lo: self.hi,
            });
        }
        Ok(self.coeffs.range(..0).next().is_none())
    }

    /// Substitutes L = 0 in every coefficient.
    pub fn subst_l_zero(&self) -> EpsSeries {
        let mut out = EpsSeries::zero(self.lo, self.hi);
        for (k, p) in &self.coeffs {
            out.set_coeff(*k, p.subst_l_zero());
        }
        out
    }

    /// True when no coefficient in the window depends on L.
    pub fn is_l_free(&self) -> bool {
        self.coeffs.values().all(Poly::is_l_free)
    }

    pub fn is_gamma_e_free(&self) -> bool {
        self.coeffs.values().all(Poly::is_gamma_e_free)
    }
}

/// Identical pole parts, coefficientwise as exact polynomials.
pub fn equivalent(a: &EpsSeries, b: &EpsSeries) -> Result<bool, ModelError> {
    a.sub(b).is_finite()
}

/// Expands a closed-form value into its Laurent series on the window.
///
/// `Gamma(1+z)` factors expand through
/// `ln Gamma(1+z) = -gammaE z + sum_{n>=2} (-1)^n zeta(n) z^n / n`,
/// carried symbolically; `c^{-n eps}` contributes powers of `L`.
pub fn expand(s: &ScaledSum, lo: i64, hi: i64) -> EpsSeries {
    let lo = min(lo, s.pole_bound());
    let mut out = EpsSeries::zero(lo, hi);
    for (key, rat) in s.terms() {
        // rational part: exact Laurent coefficients
        let rat_terms = rat.laurent(lo, hi);
        if rat_terms.is_empty() {
            continue;
        }
        let v = rat_terms.first().map(|(k, _)| *k).unwrap_or(0);
        let orders = (hi - v) as usize;

        // log of the Gamma content, as a power series with Poly coefficients
        let mut log_series: Vec<Poly> = alloc::vec![Poly::zero(); orders + 1];
        if orders >= 1 {
            let mut linear = Rat::zero();
            for (alpha, e) in key.gammas.factors() {
                linear += alpha * rat_i(*e);
            }
            if !linear.is_zero() {
                log_series[1] = Poly::symbol_gamma_e().scale(&-linear);
            }
            for (n, slot) in log_series.iter_mut().enumerate().skip(2) {
                let mut acc = Rat::zero();
                for (alpha, e) in key.gammas.factors() {
                    acc += pow_rat(alpha, n as u32) * rat_i(*e);
                }
                if acc.is_zero() {
                    continue;
                }
                let sign = if n % 2 == 0 { rat_i(1) } else { rat_i(-1) };
                *slot = Poly::symbol_zeta(n as u32).scale(&(sign * acc / rat_i(n as i64)));
            }
        }
        let gamma_series = exp_series(&log_series, orders);

        // scale factor c^{p - n eps} = c^p * exp(-n eps L)
        let mut scale_series: Vec<Poly> = alloc::vec![Poly::zero(); orders + 1];
        let mut fact = rat_i(1);
        let mut l_pow = Poly::c_power(key.cpow);
        for (k, entry) in scale_series.iter_mut().enumerate() {
            if k > 0 {
                fact *= rat_i(k as i64);
                l_pow = l_pow.mul(&Poly::symbol_l());
            }
            let coeff = pow_rat(&-&key.slope, k as u32) / &fact;
            *entry = l_pow.scale(&coeff);
        }

        let correction = mul_series(&gamma_series, &scale_series, orders);
        for (k, c) in rat_terms {
            for (m, p) in correction.iter().enumerate() {
                let power = k + m as i64;
                if power > hi {
                    break;
                }
                if !p.is_zero() {
                    out.add_coeff(power, &p.scale(&c));
                }
            }
        }
    }
    out
}

fn pow_rat(q: &Rat, n: u32) -> Rat {
    let mut acc = rat_i(1);
    for _ in 0..n {
        acc *= q;
    }
    acc
}

fn mul_series(a: &[Poly], b: &[Poly], orders: usize) -> Vec<Poly> {
    let mut out = alloc::vec![Poly::zero(); orders + 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            if i + j > orders {
                break;
            }
            if !q.is_zero() {
                out[i + j] = out[i + j].add(&p.mul(q));
            }
        }
    }
    out
}

/// `exp` of a series with zero constant term.
fn exp_series(log: &[Poly], orders: usize) -> Vec<Poly> {
    debug_assert!(log.first().map(Poly::is_zero).unwrap_or(true));
    let mut out = alloc::vec![Poly::zero(); orders + 1];
    out[0] = Poly::one();
    let mut power = out.clone();
    let mut fact = rat_i(1);
    for m in 1..=orders {
        power = mul_series(&power, log, orders);
        fact *= rat_i(m as i64);
        if power.iter().all(Poly::is_zero) {
            break;
        }
        let inv = Rat::one() / &fact;
        for (k, p) in power.iter().enumerate() {
            if !p.is_zero() {
                out[k] = out[k].add(&p.scale(&inv));
            }
        }
    }
    out
}
