//! The exact coefficient ring for epsilon expansions: polynomials over Q
//! in the commuting symbols `c^p` (integer scale powers), `L = ln c`,
//! `gammaE` and `zeta2, zeta3, ...`.
//!
//! `c^p` and `L^k` are kept as independent monomials; the functions
//! `c^p L^k` are linearly independent over Q, so zero tests stay exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_i, Rat};

/// A monomial in the coefficient symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffMono {
    /// Power of the scale c (from linear divergences).
    pub cpow: i64,
    /// Power of L = ln c.
    pub lpow: u32,
    /// Power of the Euler-Mascheroni constant.
    pub gepow: u32,
    /// Zeta values: sorted (n, power) pairs with n >= 2, power >= 1.
    pub zetas: Vec<(u32, u32)>,
}

impl CoeffMono {
    pub fn is_constant(&self) -> bool {
        self == &CoeffMono::default()
    }

    fn product(&self, other: &CoeffMono) -> CoeffMono {
        let mut zetas: BTreeMap<u32, u32> = self.zetas.iter().copied().collect();
        for (n, p) in &other.zetas {
            *zetas.entry(*n).or_insert(0) += p;
        }
        CoeffMono {
            cpow: self.cpow + other.cpow,
            lpow: self.lpow + other.lpow,
            gepow: self.gepow + other.gepow,
            zetas: zetas.into_iter().collect(),
        }
    }
}

impl fmt::Display for CoeffMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.cpow != 0 {
            parts.push(if self.cpow == 1 {
                "c".into()
            } else {
                alloc::format!("c^{}", self.cpow)
            });
        }
        if self.lpow > 0 {
            parts.push(if self.lpow == 1 {
                "L".into()
            } else {
                alloc::format!("L^{}", self.lpow)
            });
        }
        if self.gepow > 0 {
            parts.push(if self.gepow == 1 {
                "gammaE".into()
            } else {
                alloc::format!("gammaE^{}", self.gepow)
            });
        }
        for (n, p) in &self.zetas {
            parts.push(if *p == 1 {
                alloc::format!("zeta{n}")
            } else {
                alloc::format!("zeta{n}^{p}")
            });
        }
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial in the coefficient symbols with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<CoeffMono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(rat_i(1))
    }

    pub fn constant(q: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(CoeffMono::default(), q);
        p
    }

    pub fn symbol_l() -> Self {
        let mut p = Poly::zero();
        p.add_term(
            CoeffMono {
                lpow: 1,
                ..CoeffMono::default()
            },
            rat_i(1),
        );
        p
    }

    pub fn symbol_gamma_e() -> Self {
        let mut p = Poly::zero();
        p.add_term(
            CoeffMono {
                gepow: 1,
                ..CoeffMono::default()
            },
            rat_i(1),
        );
        p
    }

    pub fn symbol_zeta(n: u32) -> Self {
        debug_assert!(n >= 2);
        let mut p = Poly::zero();
        p.add_term(
            CoeffMono {
                zetas: alloc::vec![(n, 1)],
                ..CoeffMono::default()
            },
            rat_i(1),
        );
        p
    }

    pub fn c_power(p: i64) -> Self {
        let mut out = Poly::zero();
        out.add_term(
            CoeffMono {
                cpow: p,
                ..CoeffMono::default()
            },
            rat_i(1),
        );
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffMono, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: CoeffMono, q: Rat) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                out.add_term(m1.product(m2), q1 * q2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rat) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Substitutes L = 0 (evaluation of the logarithms at c = 1), keeping
    /// the polynomial scale powers.
    pub fn subst_l_zero(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.lpow == 0)
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    /// True when no term carries an L power.
    pub fn is_l_free(&self) -> bool {
        self.terms.keys().all(|m| m.lpow == 0)
    }

    /// True when no term carries gammaE.
    pub fn is_gamma_e_free(&self) -> bool {
        self.terms.keys().all(|m| m.gepow == 0)
    }
}

impl fmt::Display for Poly {
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
            if m.is_constant() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
