//! Evaluation of algebra elements under a model and a scheme.
//!
//! The momentum and identity schemes are closed under the exact
//! closed-form representation, so expressions evaluate exactly and are
//! expanded once at the end. The MS scheme takes pole parts of series,
//! which are exact Laurent polynomials; mixed products stay exact on any
//! requested window.

use alloc::vec::Vec;

use crate::algebra::{Expr, Factor, Monomial};
use crate::letters::{Alphabet, DivDegree, Letter};
use crate::words::{Ipw, Word};

use super::scaled::{eval_ipw, Model, ScaledSum};
use super::series::{expand, EpsSeries};
use super::ModelError;

/// Renormalization schemes for the formal operator R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Drops the epsilon-dependent scaling of every term, keeping the
    /// polynomial scale power: evaluation at c = 1 on logarithmic values,
    /// extended homogeneously to the linear sector.
    Momentum,
    /// Keeps the strictly negative powers of the series.
    Ms,
    /// R = id.
    Identity,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Momentum => "momentum",
            Scheme::Ms => "ms",
            Scheme::Identity => "identity",
        }
    }
}

/// Requested expansion window `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        Window { lo, hi }
    }

    /// The default window for a word of the given length: the pole order
    /// is bounded by the length, and four finite orders are kept.
    pub fn default_for_length(len: usize) -> Self {
        Window {
            lo: -(len as i64),
            hi: 4,
        }
    }
}

/// Exact closed-form evaluation. Only the momentum and identity schemes
/// are closed under the representation.
pub fn eval_expr_exact(e: &Expr, model: Model, scheme: Scheme) -> Result<ScaledSum, ModelError> {
    if scheme == Scheme::Ms {
        return Err(ModelError::SchemeNotClosedForm);
    }
    let mut out = ScaledSum::zero();
    for (m, q) in e.terms() {
        out = out.add(&eval_monomial_exact(m, model, scheme)?.scale(q));
    }
    Ok(out)
}

fn eval_monomial_exact(
    m: &Monomial,
    model: Model,
    scheme: Scheme,
) -> Result<ScaledSum, ModelError> {
    let mut out = ScaledSum::one();
    for f in m.factors() {
        let v = match f {
            Factor::Bare(t) => eval_ipw(t, model)?,
            Factor::R(inner) => {
                let v = eval_monomial_exact(inner, model, scheme)?;
                match scheme {
                    Scheme::Momentum => v.momentum(),
                    Scheme::Identity => v,
                    Scheme::Ms => unreachable!(),
                }
            }
        };
        out = out.mul(&v);
    }
    Ok(out)
}

/// Evaluates an expression to its Laurent expansion on the window.
///
/// Fails with [`ModelError::WindowTooSmall`] when the window floor lies
/// above the certified pole bound of the value, rather than silently
/// truncating poles.
pub fn eval_expr(
    e: &Expr,
    model: Model,
    scheme: Scheme,
    window: Window,
) -> Result<EpsSeries, ModelError> {
    match scheme {
        Scheme::Momentum | Scheme::Identity => {
            let exact = eval_expr_exact(e, model, scheme)?;
            let bound = exact.pole_bound();
            if window.lo > bound && !exact.is_zero() {
                return Err(ModelError::WindowTooSmall {
                    needed_lo: bound,
                    requested_lo: window.lo,
                });
            }
            Ok(expand(&exact, window.lo, window.hi).clip(window.lo, window.hi))
        }
        Scheme::Ms => {
            // a generous ceiling for internal pole-part factors
            let max_len = e.terms().map(|(m, _)| m.length() as i64).max().unwrap_or(0);
            let glob_hi = window.hi + max_len + 2;
            let mut out = EpsSeries::zero(window.lo, window.hi);
            for (m, q) in e.terms() {
                let val = eval_monomial_ms(m, model, glob_hi)?;
                let bound = val.pole_bound();
                if window.lo > bound {
                    return Err(ModelError::WindowTooSmall {
                        needed_lo: bound,
                        requested_lo: window.lo,
                    });
                }
                let series = val.into_series(window.lo, window.hi)?;
                out = out.add(&series.scale(q));
            }
            Ok(out)
        }
    }
}

/// A partially evaluated monomial: an exact closed-form factor times
/// already-expanded exact Laurent polynomials (MS pole parts).
struct MonoVal {
    exact: ScaledSum,
    polys: Vec<EpsSeries>,
}

impl MonoVal {
    fn pole_bound(&self) -> i64 {
        if self.exact.is_zero() {
            return 0;
        }
        self.exact.pole_bound()
            + self
                .polys
                .iter()
                .map(|p| p.coeffs().next().map(|(k, _)| *k).unwrap_or(0))
                .sum::<i64>()
    }

    fn into_series(self, lo: i64, hi: i64) -> Result<EpsSeries, ModelError> {
        let poly_offset: i64 = self
            .polys
            .iter()
            .map(|p| p.coeffs().next().map(|(k, _)| *k).unwrap_or(0))
            .sum();
        let mut cur = expand(
            &self.exact,
            lo - poly_offset.min(0),
            hi - poly_offset.min(0),
        );
        for p in &self.polys {
            cur = cur.mul(p);
        }
        if cur.hi() < hi {
            return Err(ModelError::WindowTooSmall {
                needed_lo: cur.hi(),
                requested_lo: hi,
            });
        }
        Ok(cur.pad_lo(lo).clip(lo, hi))
    }
}

fn eval_monomial_ms(m: &Monomial, model: Model, glob_hi: i64) -> Result<MonoVal, ModelError> {
    let mut exact = ScaledSum::one();
    let mut polys = Vec::new();
    for f in m.factors() {
        match f {
            Factor::Bare(t) => exact = exact.mul(&eval_ipw(t, model)?),
            Factor::R(inner) => {
                let val = eval_monomial_ms(inner, model, glob_hi)?;
                let bound = val.pole_bound();
                if bound >= 0 {
                    // no poles: the MS image is zero; zero absorbs the term
                    exact = ScaledSum::zero();
                    continue;
                }
                let series = val.into_series(bound, -1)?;
                polys.push(series.pole_part().extend_hi(glob_hi));
            }
        }
    }
    Ok(MonoVal { exact, polys })
}

/// The resolved overlap words of the linear-divergence model:
/// `X_o = ((I_{j1}) J_{j2}) + ((I_{j2}) J_{j1})`, with logarithmic
/// letters `I` of weight j1, j2 and linear letters `J`.
pub fn resolve_overlap(j1: u32, j2: u32) -> (Alphabet, Expr) {
    let mk = |prefix: &str, j: u32, d: DivDegree| {
        Letter::new(&alloc::format!("{prefix}{j}"), j, d).expect("valid overlap letter")
    };
    let mut letters = alloc::vec![mk("I", j1, DivDegree::Log), mk("J", j2, DivDegree::Linear),];
    if j2 != j1 {
        letters.push(mk("I", j2, DivDegree::Log));
        letters.push(mk("J", j1, DivDegree::Linear));
    }
    let alphabet = Alphabet::strict(letters).expect("overlap alphabet");
    let nested = |ji: u32, jj: u32| {
        let inner = Ipw::leaf(mk("I", ji, DivDegree::Log));
        Ipw::new(mk("J", jj, DivDegree::Linear), alloc::vec![inner])
    };
    let x_o = Expr::from_word(&Word::from(nested(j1, j2)))
        .add(&Expr::from_word(&Word::from(nested(j2, j1))));
    (alphabet, x_o)
}

/// Pole-part equivalence compared grade by grade: words carry an hbar
/// power per letter, so expressions are never compared across grades.
pub fn equivalent_by_grade(
    a: &Expr,
    b: &Expr,
    model: Model,
    scheme: Scheme,
    window: Window,
) -> Result<bool, ModelError> {
    let mut grades = a.grades();
    grades.extend(b.grades());
    grades.sort_unstable();
    grades.dedup();
    for g in grades {
        let sa = eval_expr(&a.grade_part(g), model, scheme, window)?;
        let sb = eval_expr(&b.grade_part(g), model, scheme, window)?;
        if !super::series::equivalent(&sa, &sb)? {
            return Ok(false);
        }
    }
    Ok(true)
}
