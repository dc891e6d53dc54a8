//! Exact closed-form values: sums of `pref(eps) * c^(p - n*eps)` terms.
//!
//! Both toy models evaluate every word into this shape. Prefactors are
//! rational functions of the regulator times a product of Beta-function
//! factors; Beta factors are normalized immediately into
//! `Gamma(1 + a*eps)` content (which is regular at eps = 0) times a
//! rational function, so that equal values get equal normal forms.

use alloc::collections::BTreeMap;
use core::fmt;
use num_traits::Zero;

use crate::letters::DivDegree;
use crate::rat::{rat_i, Rat};
use crate::toymodel::epsfn::{EpsPoly, RatFn};
use crate::toymodel::ModelError;
use crate::words::{Ipw, Word};

/// A product of `Gamma(1 + a*eps)^e` factors, keyed by the slope `a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GammaProd {
    factors: BTreeMap<Rat, i64>,
}

impl GammaProd {
    pub fn one() -> Self {
        GammaProd::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, slope: Rat, exponent: i64) {
        if exponent == 0 || slope.is_zero() {
            return;
        }
        let e = self.factors.entry(slope.clone()).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.factors.remove(&slope);
        }
    }

    pub fn product(&self, other: &GammaProd) -> GammaProd {
        let mut out = self.clone();
        for (a, e) in &other.factors {
            out.push(a.clone(), *e);
        }
        out
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Rat, &i64)> {
        self.factors.iter()
    }
}

impl fmt::Display for GammaProd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "G(1+{a}eps)")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `B(a0 + a1*eps, b0 + b1*eps)` with integer offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaFactor {
    pub a0: i64,
    pub a1: Rat,
    pub b0: i64,
    pub b1: Rat,
}

impl BetaFactor {
    pub fn new(a0: i64, a1: Rat, b0: i64, b1: Rat) -> Self {
        BetaFactor { a0, a1, b0, b1 }
    }

    /// Splits the Beta function into a rational function of eps and
    /// regular Gamma content: `B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b)`.
    pub fn normalize(&self) -> Result<(RatFn, GammaProd), ModelError> {
        let mut rat = RatFn::one();
        let mut gammas = GammaProd::one();
        for (m, alpha, exp) in [
            (self.a0, self.a1.clone(), 1i64),
            (self.b0, self.b1.clone(), 1),
            (self.a0 + self.b0, &self.a1 + &self.b1, -1),
        ] {
            let (r, g) = gamma_shift(m, alpha.clone())?;
            rat = match exp {
                1 => rat.mul(&r),
                _ => rat.mul(&RatFn::new(r.den().clone(), r.num().clone())),
            };
            if let Some(slope) = g {
                gammas.push(slope, exp);
            }
        }
        Ok((rat, gammas))
    }
}

/// `Gamma(m + alpha*eps)` as a rational function times `Gamma(1 + alpha*eps)`.
fn gamma_shift(m: i64, alpha: Rat) -> Result<(RatFn, Option<Rat>), ModelError> {
    if alpha.is_zero() {
        if m >= 1 {
            let mut acc = rat_i(1);
            for i in 1..m {
                acc *= rat_i(i);
            }
            return Ok((RatFn::constant(acc), None));
        }
        return Err(ModelError::GammaPole { at: m });
    }
    // Gamma(m + d) = Gamma(1 + d) * prod_{i=1}^{m-1} (i + d)      (m >= 1)
    // Gamma(m + d) = Gamma(1 + d) / prod_{i=m}^{0} (i + d)        (m <= 0)
    let mut num = EpsPoly::one();
    let mut den = EpsPoly::one();
    if m >= 1 {
        for i in 1..m {
            num = num.mul(&EpsPoly::linear(rat_i(i), alpha.clone()));
        }
    } else {
        for i in m..=0 {
            den = den.mul(&EpsPoly::linear(rat_i(i), alpha.clone()));
        }
    }
    Ok((RatFn::new(num, den), Some(alpha)))
}

/// The exponent data of one term: `c^(p - slope*eps)` with Gamma content.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub cpow: i64,
    pub slope: Rat,
    pub gammas: GammaProd,
}

/// An exact value: a finite sum of `rat(eps) * gammas * c^(p - n*eps)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScaledSum {
    terms: BTreeMap<TermKey, RatFn>,
}

impl ScaledSum {
    pub fn zero() -> Self {
        ScaledSum::default()
    }

    pub fn one() -> Self {
        let mut s = ScaledSum::zero();
        s.add_term(
            TermKey {
                cpow: 0,
                slope: Rat::zero(),
                gammas: GammaProd::one(),
            },
            RatFn::one(),
        );
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &RatFn)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: TermKey, value: RatFn) {
        if value.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(RatFn::zero);
        *entry = entry.add(&value);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &ScaledSum) -> ScaledSum {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> ScaledSum {
        ScaledSum {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ScaledSum) -> ScaledSum {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rat) -> ScaledSum {
        if q.is_zero() {
            return ScaledSum::zero();
        }
        ScaledSum {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(q)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ScaledSum) -> ScaledSum {
        let mut out = ScaledSum::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                out.add_term(
                    TermKey {
                        cpow: k1.cpow + k2.cpow,
                        slope: &k1.slope + &k2.slope,
                        gammas: k1.gammas.product(&k2.gammas),
                    },
                    v1.mul(v2),
                );
            }
        }
        out
    }

    /// The momentum scheme: drops the `c^{-n eps}` scaling of every term,
    /// keeping the polynomial power `c^p`. On logarithmic (p = 0) values
    /// this is exactly evaluation at c = 1.
    pub fn momentum(&self) -> ScaledSum {
        let mut out = ScaledSum::zero();
        for (k, v) in &self.terms {
            out.add_term(
                TermKey {
                    cpow: k.cpow,
                    slope: Rat::zero(),
                    gammas: k.gammas.clone(),
                },
                v.clone(),
            );
        }
        out
    }

    /// A certified lower bound for the epsilon pole order of the value:
    /// Gamma(1 + a*eps) factors are regular, so only the rational parts
    /// contribute.
    pub fn pole_bound(&self) -> i64 {
        self.terms.values().map(RatFn::valuation).min().unwrap_or(0)
    }
}

impl fmt::Display for ScaledSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{v}]")?;
            if !k.gammas.is_one() {
                write!(f, "*{}", k.gammas)?;
            }
            if k.cpow != 0 || !k.slope.is_zero() {
                f.write_str("*c^(")?;
                if k.cpow != 0 {
                    write!(f, "{}", k.cpow)?;
                    if !k.slope.is_zero() {
                        write!(f, "-{}eps", k.slope)?;
                    }
                } else {
                    write!(f, "-{}eps", k.slope)?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

/// Which defining integrals realize the letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Letters are `int_0^infty y^(d - j*eps)/(y + c) X[y + c] dy`.
    Propagator,
    /// Letters are `int_c^infty y^(-1 - j*eps) X[y] dy`; logarithmic only.
    Iterated,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Propagator => "propagator",
            Model::Iterated => "iterated",
        }
    }
}

/// Evaluates a word to its exact closed form under the model.
pub fn eval_word(w: &Word, model: Model) -> Result<ScaledSum, ModelError> {
    let mut out = ScaledSum::one();
    for t in w.factors() {
        out = out.mul(&eval_ipw(t, model)?);
    }
    Ok(out)
}

/// Evaluates an iPW to its exact closed form under the model.
pub fn eval_ipw(t: &Ipw, model: Model) -> Result<ScaledSum, ModelError> {
    let mut content = ScaledSum::one();
    for child in t.children() {
        content = content.mul(&eval_ipw(child, model)?);
    }
    let j = rat_i(t.root().loops() as i64);
    match model {
        Model::Iterated => {
            if t.root().degree() != DivDegree::Log {
                return Err(ModelError::LinearLetterInIterated {
                    letter: t.root().name().into(),
                });
            }
            // q * y^{-n eps}  ->  q / ((j+n) eps) * c^{-(j+n) eps}
            let mut out = ScaledSum::zero();
            for (k, v) in content.terms() {
                debug_assert!(k.cpow == 0 && k.gammas.is_one());
                let total = &j + &k.slope;
                out.add_term(
                    TermKey {
                        cpow: 0,
                        slope: total.clone(),
                        gammas: GammaProd::one(),
                    },
                    v.mul(&RatFn::inv_linear(total)),
                );
            }
            Ok(out)
        }
        Model::Propagator => {
            let d = t.root().degree().as_i64();
            let mut out = ScaledSum::zero();
            for (k, v) in content.terms() {
                if k.cpow != 0 {
                    // linear content below another letter: the model only
                    // nests degree-0 content under a degree-1 root
                    return Err(ModelError::LinearContentNested {
                        word: alloc::format!("{t}"),
                    });
                }
                // q * (y+c)^{-1 - n eps}:
                //   int_0^infty y^{d - j eps} (y+c)^{-1 - n eps} dy
                //     = c^{d - (j+n) eps} B(1 + d - j eps, (j+n) eps - d)
                let n = &k.slope;
                let beta = BetaFactor::new(1 + d, -j.clone(), -d, &j + n);
                let (rat, gammas) = beta.normalize()?;
                out.add_term(
                    TermKey {
                        cpow: d,
                        slope: &j + n,
                        gammas: k.gammas.product(&gammas),
                    },
                    v.mul(&rat),
                );
            }
            Ok(out)
        }
    }
}

/// The renormalized value of a word in the iterated model, built from the
/// closed form of `-int_1^c y^(-1-j eps) (...) dy` applied recursively:
/// this is the single iterated integral all renormalized terms conspire
/// to. Multiplicative over factors; the empty word gives 1.
pub fn bar_eval(w: &Word) -> Result<ScaledSum, ModelError> {
    let mut out = ScaledSum::one();
    for t in w.factors() {
        out = out.mul(&bar_eval_ipw(t)?);
    }
    Ok(out)
}

fn bar_eval_ipw(t: &Ipw) -> Result<ScaledSum, ModelError> {
    if t.root().degree() != DivDegree::Log {
        return Err(ModelError::LinearLetterInIterated {
            letter: t.root().name().into(),
        });
    }
    let mut content = ScaledSum::one();
    for child in t.children() {
        content = content.mul(&bar_eval_ipw(child)?);
    }
    let j = rat_i(t.root().loops() as i64);
    // -int_1^c y^{-1-(j+n) eps} q dy
    //   = -q/((j+n) eps) + q/((j+n) eps) c^{-(j+n) eps}
    let mut out = ScaledSum::zero();
    for (k, v) in content.terms() {
        debug_assert!(k.cpow == 0 && k.gammas.is_one());
        let total = &j + &k.slope;
        let q = v.mul(&RatFn::inv_linear(total.clone()));
        out.add_term(
            TermKey {
                cpow: 0,
                slope: Rat::zero(),
                gammas: GammaProd::one(),
            },
            q.neg(),
        );
        out.add_term(
            TermKey {
                cpow: 0,
                slope: total,
                gammas: GammaProd::one(),
            },
            q,
        );
    }
    Ok(out)
}
