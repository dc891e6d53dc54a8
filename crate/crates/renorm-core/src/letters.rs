//! Letters and alphabets.
//!
//! A letter stands for a primitive divergence: it carries a loop order
//! (its grade in `hbar`) and a divergence degree, 0 for logarithmic
//! letters and 1 for linearly divergent ones.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Divergence degree of a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivDegree {
    /// Logarithmic divergence (degree 0), the `I`-type letters.
    Log,
    /// Linear divergence (degree 1), the `J`-type letters.
    Linear,
}

impl DivDegree {
    pub fn as_i64(self) -> i64 {
        match self {
            DivDegree::Log => 0,
            DivDegree::Linear => 1,
        }
    }

    pub fn from_i64(d: i64) -> Option<Self> {
        match d {
            0 => Some(DivDegree::Log),
            1 => Some(DivDegree::Linear),
            _ => None,
        }
    }
}

/// A primitive divergence: name, loop order and divergence degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    name: String,
    loops: u32,
    degree: DivDegree,
}

impl Letter {
    /// Creates a letter. Loop orders start at 1.
    pub fn new(name: &str, loops: u32, degree: DivDegree) -> Result<Self, AlphabetError> {
        if !is_valid_name(name) {
            return Err(AlphabetError::BadName(name.to_string()));
        }
        if loops == 0 {
            return Err(AlphabetError::ZeroLoops(name.to_string()));
        }
        Ok(Letter {
            name: name.to_string(),
            loops,
            degree,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn degree(&self) -> DivDegree {
        self.degree
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Letter names are identifiers: `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A registry of letters, keyed by name.
///
/// A strict alphabet rejects undeclared letters at parse time. An open
/// alphabet (the CLI default when no alphabet file is given) accepts any
/// identifier and assigns it one loop and logarithmic degree.
#[derive(Debug, Clone)]
pub struct Alphabet {
    letters: BTreeMap<String, Letter>,
    open: bool,
}

impl Alphabet {
    /// Strict alphabet containing exactly the given letters.
    pub fn strict(letters: impl IntoIterator<Item = Letter>) -> Result<Self, AlphabetError> {
        let mut map = BTreeMap::new();
        for l in letters {
            if map.insert(l.name.clone(), l.clone()).is_some() {
                return Err(AlphabetError::Duplicate(l.name));
            }
        }
        Ok(Alphabet {
            letters: map,
            open: false,
        })
    }

    /// Open alphabet: any identifier resolves to a fresh one-loop log letter.
    pub fn open() -> Self {
        Alphabet {
            letters: BTreeMap::new(),
            open: true,
        }
    }

    /// Convenience: strict single-letter alphabet {x1} with N=1, degree 0.
    pub fn single() -> Self {
        Alphabet::strict([Letter::new("x1", 1, DivDegree::Log).unwrap()]).unwrap()
    }

    /// Convenience: strict alphabet {x1 (N=1), x2 (N=2)}, both logarithmic.
    pub fn two_letter() -> Self {
        Alphabet::strict([
            Letter::new("x1", 1, DivDegree::Log).unwrap(),
            Letter::new("x2", 2, DivDegree::Log).unwrap(),
        ])
        .unwrap()
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty() && !self.open
    }

    /// Looks a name up, minting a default letter in open mode.
    pub fn resolve(&self, name: &str) -> Option<Letter> {
        if let Some(l) = self.letters.get(name) {
            return Some(l.clone());
        }
        if self.open && is_valid_name(name) {
            return Some(Letter {
                name: name.to_string(),
                loops: 1,
                degree: DivDegree::Log,
            });
        }
        None
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.letters.values()
    }

    /// Letters sorted by name, as a vector.
    pub fn to_vec(&self) -> Vec<Letter> {
        self.letters.values().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    BadName(String),
    ZeroLoops(String),
    Duplicate(String),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::BadName(n) => write!(f, "invalid letter name `{n}`"),
            AlphabetError::ZeroLoops(n) => write!(f, "letter `{n}` must have loop order >= 1"),
            AlphabetError::Duplicate(n) => write!(f, "duplicate letter `{n}` in alphabet"),
        }
    }
}
