//! Floating-point evaluation of the exact objects, for oracle
//! comparisons and diagnostics.

use renorm_core::toymodel::epsfn::rat_to_f64;
use renorm_core::toymodel::ring::Poly;
use renorm_core::toymodel::{EpsSeries, ScaledSum};

pub const GAMMA_E: f64 = 0.577_215_664_901_532_9;

/// Lanczos approximation, good to ~1e-13 relative over the reals.
pub fn gamma(x: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const P: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut t = P[0];
    for (i, p) in P.iter().enumerate().skip(1) {
        t += p / (x + i as f64);
    }
    let w = x + 7.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * t
}

pub fn beta(a: f64, b: f64) -> f64 {
    gamma(a) * gamma(b) / gamma(a + b)
}

/// Riemann zeta at integer argument n >= 2, by direct summation with an
/// Euler-Maclaurin tail.
pub fn zeta(n: u32) -> f64 {
    let n = n as i32;
    let cut = 200u64;
    let mut s = 0.0;
    for k in 1..cut {
        s += (k as f64).powi(-n);
    }
    let big = cut as f64;
    // integral tail + correction terms
    s += big.powi(1 - n) / (n as f64 - 1.0);
    s += 0.5 * big.powi(-n);
    s += (n as f64) / 12.0 * big.powi(-n - 1);
    s -= (n as f64) * ((n + 1) * (n + 2)) as f64 / 720.0 * big.powi(-n - 3);
    s
}

/// Evaluates a coefficient-ring polynomial at a concrete scale.
pub fn poly_eval(p: &Poly, c: f64) -> f64 {
    let ell = c.ln();
    let mut acc = 0.0;
    for (m, q) in p.terms() {
        let mut v = rat_to_f64(q);
        v *= c.powi(m.cpow as i32);
        v *= ell.powi(m.lpow as i32);
        v *= GAMMA_E.powi(m.gepow as i32);
        for (n, pw) in &m.zetas {
            v *= zeta(*n).powi(*pw as i32);
        }
        acc += v;
    }
    acc
}

/// Evaluates a truncated series at concrete `eps` and `c`.
pub fn series_eval(s: &EpsSeries, eps: f64, c: f64) -> f64 {
    let mut acc = 0.0;
    for (k, p) in s.coeffs() {
        acc += poly_eval(p, c) * eps.powi(*k as i32);
    }
    acc
}

/// Evaluates an exact closed form at concrete `eps` and `c`.
pub fn scaled_eval(s: &ScaledSum, eps: f64, c: f64) -> f64 {
    let mut acc = 0.0;
    for (key, rat) in s.terms() {
        let mut v = rat.eval_f64(eps);
        for (alpha, e) in key.gammas.factors() {
            v *= gamma(1.0 + rat_to_f64(alpha) * eps).powi(*e as i32);
        }
        let exponent = key.cpow as f64 - rat_to_f64(&key.slope) * eps;
        v *= c.powf(exponent);
        acc += v;
    }
    acc
}
