//! Polynomials and rational functions of the regulator over Q.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_i, Rat};

/// Dense polynomial in the regulator, rational coefficients, no trailing
/// zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EpsPoly {
    coeffs: Vec<Rat>,
}

impl EpsPoly {
    pub fn zero() -> Self {
        EpsPoly::default()
    }

    pub fn one() -> Self {
        EpsPoly::constant(rat_i(1))
    }

    pub fn constant(q: Rat) -> Self {
        EpsPoly::from_coeffs(vec![q])
    }

    /// `a + b*eps`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        EpsPoly::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        EpsPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Order of vanishing at eps = 0; degree+1 convention not needed, the
    /// zero polynomial reports 0.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divides out `eps^k`; caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> EpsPoly {
        EpsPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn add(&self, other: &EpsPoly) -> EpsPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        EpsPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> EpsPoly {
        EpsPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &EpsPoly) -> EpsPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &EpsPoly) -> EpsPoly {
        if self.is_zero() || other.is_zero() {
            return EpsPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, q: &Rat) -> EpsPoly {
        EpsPoly::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Polynomial remainder of self by other (other nonzero).
    fn rem(&self, other: &EpsPoly) -> EpsPoly {
        let mut r = self.clone();
        let d = other.degree();
        let lead = other.coeffs.last().unwrap().clone();
        while !r.is_zero() && r.degree() >= d {
            let k = r.degree() - d;
            let q = r.coeffs.last().unwrap() / &lead;
            let mut sub = vec![Rat::zero(); k];
            sub.extend(other.coeffs.iter().map(|c| c * &q));
            r = r.sub(&EpsPoly::from_coeffs(sub));
        }
        r
    }

    /// Monic gcd via Euclid.
    fn gcd(a: &EpsPoly, b: &EpsPoly) -> EpsPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn monic(&self) -> EpsPoly {
        match self.coeffs.last() {
            None => EpsPoly::zero(),
            Some(lead) => {
                let inv = Rat::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Power-series inverse to order `n` (constant term nonzero).
    fn series_inverse(&self, n: usize) -> Vec<Rat> {
        let a0 = self.coeff(0);
        assert!(!a0.is_zero(), "series inverse needs a unit constant term");
        let inv0 = Rat::one() / &a0;
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += self.coeff(i) * &out[k - i];
            }
            out[k] = -(acc * &inv0);
        }
        out
    }

    pub fn eval_f64(&self, eps: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * eps + rat_to_f64(c);
        }
        acc
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    let to_f64 = |x: &num_bigint::BigInt| -> f64 {
        // exactness beyond f64 range is not needed for diagnostics
        let s = alloc::string::ToString::to_string(x);
        s.parse::<f64>().unwrap_or(f64::NAN)
    };
    to_f64(q.numer()) / to_f64(q.denom())
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag.is_one() {
                        f.write_str("eps")?;
                    } else {
                        write!(f, "{mag}*eps")?;
                    }
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A rational function of the regulator in lowest terms, denominator
/// monic and nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFn {
    num: EpsPoly,
    den: EpsPoly,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: EpsPoly::zero(),
            den: EpsPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn::from_poly(EpsPoly::one())
    }

    pub fn constant(q: Rat) -> Self {
        RatFn::from_poly(EpsPoly::constant(q))
    }

    pub fn from_poly(p: EpsPoly) -> Self {
        RatFn {
            num: p,
            den: EpsPoly::one(),
        }
    }

    pub fn new(num: EpsPoly, den: EpsPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = EpsPoly::gcd(&num, &den);
        let (mut num, mut den) = (num, den);
        if g.degree() > 0 || !g.coeff(0).is_one() {
            num = div_exact(&num, &g);
            den = div_exact(&den, &g);
        }
        // monic denominator convention
        let lead = den.coeffs.last().unwrap().clone();
        if !lead.is_one() {
            let inv = Rat::one() / &lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }

    /// `1 / (q * eps)`.
    pub fn inv_linear(q: Rat) -> Self {
        RatFn::new(EpsPoly::one(), EpsPoly::linear(Rat::zero(), q))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &EpsPoly {
        &self.num
    }

    pub fn den(&self) -> &EpsPoly {
        &self.den
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, q: &Rat) -> RatFn {
        if q.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    /// Lowest exponent of the Laurent expansion at eps = 0 (0 for the
    /// zero function).
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.num.valuation() as i64 - self.den.valuation() as i64
    }

    /// Exact Laurent coefficients on the window `lo..=hi`.
    pub fn laurent(&self, lo: i64, hi: i64) -> Vec<(i64, Rat)> {
        if self.is_zero() || hi < lo {
            return Vec::new();
        }
        let vn = self.num.valuation();
        let vd = self.den.valuation();
        let shift = vn as i64 - vd as i64;
        let num = self.num.shift_down(vn);
        let den = self.den.shift_down(vd);
        if hi < shift {
            return Vec::new();
        }
        let order = (hi - shift) as usize;
        let den_inv = den.series_inverse(order);
        let mut out = Vec::new();
        for k in 0..=order {
            let mut c = Rat::zero();
            for i in 0..=k {
                c += num.coeff(i) * &den_inv[k - i];
            }
            let e = shift + k as i64;
            if e >= lo && !c.is_zero() {
                out.push((e, c));
            }
        }
        out
    }

    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.num.eval_f64(eps) / self.den.eval_f64(eps)
    }
}

fn div_exact(a: &EpsPoly, b: &EpsPoly) -> EpsPoly {
    // long division, exact by construction
    let mut r = a.clone();
    let d = b.degree();
    let lead = b.coeffs.last().unwrap().clone();
    let mut q = vec![Rat::zero(); a.coeffs.len().saturating_sub(d)];
    while !r.is_zero() && r.degree() >= d && !q.is_empty() {
        let k = r.degree() - d;
        let c = r.coeffs.last().unwrap() / &lead;
        q[k] = c.clone();
        let mut sub = vec![Rat::zero(); k];
        sub.extend(b.coeffs.iter().map(|x| x * &c));
        r = r.sub(&EpsPoly::from_coeffs(sub));
    }
    debug_assert!(r.is_zero(), "non-exact polynomial division");
    EpsPoly::from_coeffs(q)
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
