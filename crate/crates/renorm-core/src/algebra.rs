//! The free commutative Q-algebra on iPWs, extended by the formal
//! renormalization operator R, together with tensor squares and cubes
//! and the unit-killing projectors.
//!
//! R is never evaluated here; it is a formal wrapper. Renormalization
//! schemes give it meaning in the toy models.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_i, Rat};
use crate::words::{Ipw, Word};

/// One factor of a monomial: a bare iPW or a formal R applied to a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Bare(Ipw),
    R(Monomial),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Bare(t) => write!(f, "{t}"),
            Factor::R(m) => write!(f, "R[{m}]"),
        }
    }
}

/// A commutative product of factors; the empty product is the unit e.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<Factor>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn from_factors(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        Monomial { factors }
    }

    pub fn from_word(w: &Word) -> Self {
        Monomial::from_factors(w.factors().iter().cloned().map(Factor::Bare).collect())
    }

    pub fn from_ipw(t: Ipw) -> Self {
        Monomial {
            factors: vec![Factor::Bare(t)],
        }
    }

    /// Wraps a whole monomial in R; R applied to the unit is the unit.
    pub fn wrap_r(m: Monomial) -> Self {
        if m.is_unit() {
            Monomial::unit()
        } else {
            Monomial {
                factors: vec![Factor::R(m)],
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Monomial::from_factors(factors)
    }

    /// True if the monomial is a plain word (no R anywhere at top level).
    pub fn is_bare_word(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Bare(_)))
    }

    /// The word formed by the bare factors, if the monomial is R-free.
    pub fn as_word(&self) -> Option<Word> {
        if !self.is_bare_word() {
            return None;
        }
        Some(Word::from_factors(
            self.factors
                .iter()
                .map(|f| match f {
                    Factor::Bare(t) => t.clone(),
                    Factor::R(_) => unreachable!(),
                })
                .collect(),
        ))
    }

    /// Total letter count, including letters inside R wrappers.
    pub fn length(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Bare(t) => t.length(),
                Factor::R(m) => m.length(),
            })
            .sum()
    }

    /// Total loop order of every letter inside, including inside R.
    pub fn grade(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Bare(t) => t.loop_order(),
                Factor::R(m) => m.grade(),
            })
            .sum()
    }

    /// Removes every R wrapper, leaving the underlying bare word.
    pub fn erase_r(&self) -> Monomial {
        let mut factors = Vec::new();
        collect_bare(self, &mut factors);
        Monomial::from_factors(factors)
    }
}

fn collect_bare(m: &Monomial, out: &mut Vec<Factor>) {
    for f in &m.factors {
        match f {
            Factor::Bare(t) => out.push(Factor::Bare(t.clone())),
            Factor::R(inner) => collect_bare(inner, out),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("e");
        }
        // R factors first, bare words after, as in prod R[X_i] prod Y_j
        for factor in &self.factors {
            if matches!(factor, Factor::R(_)) {
                write!(f, "{factor}")?;
            }
        }
        for factor in &self.factors {
            if matches!(factor, Factor::Bare(_)) {
                write!(f, "{factor}")?;
            }
        }
        Ok(())
    }
}

/// A Q-linear combination of monomials, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rat>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn unit() -> Self {
        Expr::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, rat_i(1));
        Expr { terms }
    }

    pub fn from_word(w: &Word) -> Self {
        Expr::from_monomial(Monomial::from_word(w))
    }

    pub fn from_ipw(t: Ipw) -> Self {
        Expr::from_monomial(Monomial::from_ipw(t))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, q: Rat) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rat) -> Expr {
        if q.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Bilinear commutative product.
    pub fn mul(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                out.add_term(m1.product(m2), q1 * q2);
            }
        }
        out
    }

    /// The counit: coefficient of the empty monomial.
    pub fn counit(&self) -> Rat {
        self.coefficient(&Monomial::unit())
    }

    /// Wraps each monomial in R, linearly; R of the unit is the unit.
    pub fn apply_r(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, q) in &self.terms {
            out.add_term(Monomial::wrap_r(m.clone()), q.clone());
        }
        out
    }

    /// Removes all R wrappers, linearly.
    pub fn erase_r(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, q) in &self.terms {
            out.add_term(m.erase_r(), q.clone());
        }
        out
    }

    /// Rewrites `R[prod R[X_i] prod Y_j] -> R[prod X_i prod Y_j]`
    /// exhaustively, to the normal form in which the argument of every R
    /// is a bare word.
    pub fn cond_rewrite(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, q) in &self.terms {
            out.add_term(cond_rewrite_monomial(m), q.clone());
        }
        out
    }

    /// Restriction to monomials of the given grade.
    pub fn grade_part(&self, grade: u64) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.grade() == grade)
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    /// All grades present in the expression.
    pub fn grades(&self) -> Vec<u64> {
        let mut g: Vec<u64> = self.terms.keys().map(Monomial::grade).collect();
        g.sort_unstable();
        g.dedup();
        g
    }
}

fn cond_rewrite_monomial(m: &Monomial) -> Monomial {
    let factors = m
        .factors()
        .iter()
        .map(|f| match f {
            Factor::Bare(t) => Factor::Bare(t.clone()),
            Factor::R(inner) => Factor::R(inner.erase_r()),
        })
        .collect();
    Monomial::from_factors(factors)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = q.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// An element of the tensor square, as a linear combination of
/// monomial pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(Monomial, Monomial), Rat>,
}

/// An element of the tensor cube.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Rat>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Tensor2::default()
    }

    pub fn of(left: Monomial, right: Monomial) -> Self {
        let mut t = Tensor2::zero();
        t.add_term(left, right, rat_i(1));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, q: Rat) {
        if q.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        for ((l, r), q) in &other.terms {
            out.add_term(l.clone(), r.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Tensor2 {
        Tensor2 {
            terms: self.terms.iter().map(|(k, q)| (k.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rat) -> Tensor2 {
        if q.is_zero() {
            return Tensor2::zero();
        }
        Tensor2 {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect(),
        }
    }

    /// Componentwise product: `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((l1, r1), q1) in &self.terms {
            for ((l2, r2), q2) in &other.terms {
                out.add_term(l1.product(l2), r1.product(r2), q1 * q2);
            }
        }
        out
    }

    /// Swaps the tensor legs.
    pub fn flip(&self) -> Tensor2 {
        Tensor2 {
            terms: self
                .terms
                .iter()
                .map(|((l, r), q)| ((r.clone(), l.clone()), q.clone()))
                .collect(),
        }
    }

    /// The multiplication map m: multiplies the two legs together.
    pub fn mul_legs(&self) -> Expr {
        let mut out = Expr::zero();
        for ((l, r), q) in &self.terms {
            out.add_term(l.product(r), q.clone());
        }
        out
    }

    /// Applies a linear map (given on monomials) to the left leg.
    pub fn map_left(&self, f: impl Fn(&Monomial) -> Expr) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((l, r), q) in &self.terms {
            for (m, c) in f(l).terms() {
                out.add_term(m.clone(), r.clone(), q * c);
            }
        }
        out
    }

    /// Applies a linear map (given on monomials) to the right leg.
    pub fn map_right(&self, f: impl Fn(&Monomial) -> Expr) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((l, r), q) in &self.terms {
            for (m, c) in f(r).terms() {
                out.add_term(l.clone(), m.clone(), q * c);
            }
        }
        out
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, r), q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = q.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{l} (x) {r}")?;
        }
        Ok(())
    }
}

impl Tensor3 {
    pub fn zero() -> Self {
        Tensor3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Monomial, q: Rat) {
        if q.is_zero() {
            return;
        }
        let key = (a, b, c);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        for ((a, b, c), q) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Tensor3 {
        Tensor3 {
            terms: self.terms.iter().map(|(k, q)| (k.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        self.add(&other.neg())
    }
}

impl fmt::Display for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b, c), q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = q.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{a} (x) {b} (x) {c}")?;
        }
        Ok(())
    }
}

/// P_L = (id - E.counit) (x) id: kills terms whose left leg is the unit.
pub fn project_left(t: &Tensor2) -> Tensor2 {
    Tensor2 {
        terms: t
            .terms
            .iter()
            .filter(|((l, _), _)| !l.is_unit())
            .map(|(k, q)| (k.clone(), q.clone()))
            .collect(),
    }
}

/// P_R = id (x) (id - E.counit): kills terms whose right leg is the unit.
pub fn project_right(t: &Tensor2) -> Tensor2 {
    Tensor2 {
        terms: t
            .terms
            .iter()
            .filter(|((_, r), _)| !r.is_unit())
            .map(|(k, q)| (k.clone(), q.clone()))
            .collect(),
    }
}

/// P_2: kills terms with the unit on either leg.
pub fn project_2(t: &Tensor2) -> Tensor2 {
    Tensor2 {
        terms: t
            .terms
            .iter()
            .filter(|((l, r), _)| !l.is_unit() && !r.is_unit())
            .map(|(k, q)| (k.clone(), q.clone()))
            .collect(),
    }
}

/// P_3: kills terms with the unit on any of the three legs.
pub fn project_3(t: &Tensor3) -> Tensor3 {
    Tensor3 {
        terms: t
            .terms
            .iter()
            .filter(|((a, b, c), _)| !a.is_unit() && !b.is_unit() && !c.is_unit())
            .map(|(k, q)| (k.clone(), q.clone()))
            .collect(),
    }
}

/// Parses an expression of words, for tests and the CLI: terms separated
/// by `+`/`-`, each an optional rational coefficient followed by a word
/// or `e`. R brackets are not accepted here; this is input plumbing for
/// linear combinations of words only.
pub fn parse_word_expr(
    text: &str,
    alphabet: &crate::letters::Alphabet,
) -> Result<Expr, crate::words::ParseError> {
    let mut out = Expr::zero();
    let mut rest = text.trim();
    let mut sign = rat_i(1);
    let mut first = true;
    while !rest.is_empty() {
        if rest.starts_with('+') {
            sign = rat_i(1);
            rest = rest[1..].trim_start();
        } else if rest.starts_with('-') {
            sign = rat_i(-1);
            rest = rest[1..].trim_start();
        } else if !first {
            return Err(crate::words::ParseError::Unexpected { col: 1 });
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let piece = rest[..end].trim();
        rest = rest[end..].trim_start();
        if piece == "e" {
            out.add_term(Monomial::unit(), sign.clone());
        } else {
            let w = crate::words::parse_word(piece, alphabet)?;
            out.add_term(Monomial::from_word(&w), sign.clone());
        }
    }
    Ok(out)
}
