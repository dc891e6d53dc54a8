//! Numeric quadrature of the defining integrals, independent of the
//! closed forms: the oracle recurses through the nested integrals and
//! never consults the Beta-function evaluation path.

use renorm_core::letters::DivDegree;
use renorm_core::words::{Ipw, Word};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(
        "quadrature did not reach the requested tolerance (estimate {estimate}, error {error})"
    )]
    NoConvergence { estimate: f64, error: f64 },
    #[error("integral diverges for these parameters: {0}")]
    Divergent(String),
    #[error("oracle depth limit is 3, word has depth {0}")]
    TooDeep(usize),
    #[error("the {model} oracle does not evaluate `{word}`: {reason}")]
    Unsupported {
        model: &'static str,
        word: String,
        reason: String,
    },
}

/// Tanh-sinh quadrature on a finite interval. Handles integrable
/// endpoint singularities.
pub fn tanh_sinh(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64, OracleError> {
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    // abscissas measured from the nearer endpoint, to keep precision in
    // the singular regions
    let g = |t: f64| -> (f64, f64) {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let delta = half * 2.0 * e / (1.0 + e);
        let x = if u >= 0.0 { b - delta } else { a + delta };
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() * sech2;
        (x, w)
    };
    let t_max = 4.8;
    let mut h = 1.0;
    let add_nodes = |sum: &mut f64, h: f64, step: usize, start: usize| {
        let mut k = start;
        while (k as f64) * h <= t_max {
            for s in [1.0, -1.0] {
                let (x, w) = g(s * k as f64 * h);
                if w.is_finite() && w.abs() > 0.0 && x > a.min(b) && x < a.max(b) {
                    let v = f(x);
                    if v.is_finite() {
                        *sum += v * w;
                    }
                }
            }
            k += step;
        }
    };
    let mut sum = {
        let (x, w) = g(0.0);
        f(x) * w
    };
    add_nodes(&mut sum, h, 1, 1);
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for level in 0..11 {
        let prev = estimate;
        h *= 0.5;
        // the new nodes are the odd multiples of the refined step
        add_nodes(&mut sum, h, 2, 1);
        estimate = sum * h;
        err = (estimate - prev).abs();
        if level >= 2 && err <= rel_tol * estimate.abs().max(1e-300) {
            return Ok(estimate);
        }
    }
    if estimate.is_finite() && err <= 1e3 * rel_tol * estimate.abs().max(1e-300) {
        return Ok(estimate);
    }
    Err(OracleError::NoConvergence {
        estimate,
        error: err,
    })
}

/// `int_0^1 f(u) du` convenience.
fn unit_interval(f: &dyn Fn(f64) -> f64, rel_tol: f64) -> Result<f64, OracleError> {
    tanh_sinh(f, 0.0, 1.0, rel_tol)
}

/// Bare word value in the iterated model:
/// `(Xx_j)[c] = int_c^inf y^(-1-j eps) X[y] dy`, computed recursively.
///
/// The tail is removed exactly by `y = c * u^(-1/(j eps))`, turning each
/// level into a bounded integral over the unit interval.
pub fn iterated_bare(w: &Word, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    check_depth(w)?;
    let mut acc = 1.0;
    for t in w.factors() {
        acc *= iterated_bare_ipw(t, eps, c, rel_tol)?;
    }
    Ok(acc)
}

fn iterated_bare_ipw(t: &Ipw, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    if t.root().degree() != DivDegree::Log {
        return Err(OracleError::Unsupported {
            model: "iterated",
            word: t.to_string(),
            reason: "linear letters are outside the iterated model".into(),
        });
    }
    let j = t.root().loops() as f64;
    if eps <= 0.0 {
        return Err(OracleError::Divergent(format!(
            "bare iterated word {t} needs eps > 0"
        )));
    }
    let inner_tol = (rel_tol * 0.1).max(1e-12);
    let children = t.children().to_vec();
    let f = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let y = c * u.powf(-1.0 / (j * eps));
        let mut prod = 1.0;
        for ch in &children {
            match iterated_bare_ipw(ch, eps, y, inner_tol) {
                Ok(v) => prod *= v,
                Err(_) => return f64::NAN,
            }
        }
        prod
    };
    let integral = unit_interval(&f, rel_tol)?;
    Ok(c.powf(-j * eps) / (j * eps) * integral)
}

/// Renormalized word value in the iterated model:
/// `-int_1^c y^(-1-j eps) prod(renormalized children)[y] dy`, applied
/// recursively; finite for every `eps >= 0`.
pub fn iterated_renormalized(w: &Word, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    check_depth(w)?;
    let mut acc = 1.0;
    for t in w.factors() {
        acc *= iterated_renorm_ipw(t, eps, c, rel_tol)?;
    }
    Ok(acc)
}

fn iterated_renorm_ipw(t: &Ipw, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    let j = t.root().loops() as f64;
    let inner_tol = (rel_tol * 0.1).max(1e-12);
    let children = t.children().to_vec();
    let f = |y: f64| -> f64 {
        let mut prod = 1.0;
        for ch in &children {
            match iterated_renorm_ipw(ch, eps, y, inner_tol) {
                Ok(v) => prod *= v,
                Err(_) => return f64::NAN,
            }
        }
        y.powf(-1.0 - j * eps) * prod
    };
    Ok(-tanh_sinh(&f, 1.0, c, rel_tol)?)
}

/// Bare word value in the propagator model:
/// `(Xx)[c] = int_0^inf y^(d-j eps) (y+c)^(-1) X[y+c] dy`.
///
/// Split at `y = c`; the far tail `y = c/t` carries the exact power
/// substitution `t = u^(1/e_t)` with `e_t = (total weight) eps - d`,
/// which is also the convergence condition.
pub fn propagator_bare(w: &Word, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    check_depth(w)?;
    let mut acc = 1.0;
    for t in w.factors() {
        acc *= propagator_bare_ipw(t, eps, c, rel_tol)?;
    }
    Ok(acc)
}

fn propagator_bare_ipw(t: &Ipw, eps: f64, c: f64, rel_tol: f64) -> Result<f64, OracleError> {
    let j = t.root().loops() as f64;
    let d = t.root().degree().as_i64() as f64;
    let sigma = t.loop_order() as f64;
    let e_t = sigma * eps - d;
    if e_t <= 0.0 {
        return Err(OracleError::Divergent(format!(
            "propagator word {t} converges only for eps > {}",
            d / sigma
        )));
    }
    let inner_tol = (rel_tol * 0.1).max(1e-12);
    let children = t.children().to_vec();
    let content = move |scale: f64, tol: f64| -> f64 {
        let mut prod = 1.0;
        for ch in &children {
            match propagator_bare_ipw(ch, eps, scale, tol) {
                Ok(v) => prod *= v,
                Err(_) => return f64::NAN,
            }
        }
        prod
    };
    // near part: y in [0, c]
    let near = tanh_sinh(
        &|y: f64| y.powf(d - j * eps) / (y + c) * content(y + c, inner_tol),
        0.0,
        c,
        rel_tol,
    )?;
    // far part: y = c/t, then t = u^(1/e_t)
    let far_integrand = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let t_var = u.powf(1.0 / e_t);
        let y = c / t_var;
        // g(y) * c / t^2 * t^(1 - e_t), with the u-substitution Jacobian 1/e_t
        let g = y.powf(d - j * eps) / (y + c) * content(y + c, inner_tol);
        g * c / t_var.powi(2) * t_var.powf(1.0 - e_t)
    };
    let far = unit_interval(&far_integrand, rel_tol)? / e_t;
    Ok(near + far)
}

/// The four-term overlap combination of the linear model, as a single
/// convergent double integral:
/// `J2(c) - int y^(1-j1 e)/(y+c) I_{j2}(y) - (j1<->j2) + J2(0)`,
/// with all pieces written over the same two integration variables so
/// the divergent large-momentum asymptotics cancel pointwise.
pub fn overlap_combination(
    j1: u32,
    j2: u32,
    eps: f64,
    c: f64,
    rel_tol: f64,
) -> Result<f64, OracleError> {
    let (a1, a2) = (j1 as f64 * eps, j2 as f64 * eps);
    let integrand = move |x1: f64, x2: f64| -> f64 {
        let t1 = x1.powf(1.0 - a1) * x2.powf(1.0 - a2) / ((x1 + c) * (x1 + x2) * (x2 + c));
        let t2 = x1.powf(1.0 - a1) * x2.powf(-a2) / ((x1 + c) * (x1 + x2));
        let t3 = x1.powf(-a1) * x2.powf(1.0 - a2) / ((x2 + c) * (x1 + x2));
        let t4 = x1.powf(1.0 - a1) * x2.powf(1.0 - a2) / (x1 * x2 * (x1 + x2));
        t1 - t2 - t3 + t4
    };
    // map both axes to (0,1) by x = u/(1-u)
    let outer = |u1: f64| -> f64 {
        if u1 <= 0.0 || u1 >= 1.0 {
            return 0.0;
        }
        let x1 = u1 / (1.0 - u1);
        let jac1 = (1.0 - u1).powi(-2);
        let inner = |u2: f64| -> f64 {
            if u2 <= 0.0 || u2 >= 1.0 {
                return 0.0;
            }
            let x2 = u2 / (1.0 - u2);
            let jac2 = (1.0 - u2).powi(-2);
            integrand(x1, x2) * jac2
        };
        match unit_interval(&inner, rel_tol * 0.2) {
            Ok(v) => v * jac1,
            Err(_) => f64::NAN,
        }
    };
    unit_interval(&outer, rel_tol)
}

fn check_depth(w: &Word) -> Result<(), OracleError> {
    let depth = w.depth();
    if depth > 3 {
        return Err(OracleError::TooDeep(depth));
    }
    Ok(())
}
