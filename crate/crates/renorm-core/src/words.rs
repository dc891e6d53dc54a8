//! Parenthesized words.
//!
//! An irreducible parenthesized word (iPW) is an unordered rooted tree
//! with a letter at every node; it renders as `(<children...><root>)`,
//! with the root letter rightmost. A word is a commutative multiset of
//! iPWs, the empty multiset being the unit `e = ()`.
//!
//! Canonical form: children of every node are kept sorted by the total
//! order `(root letter name, child list)`, applied recursively, so that
//! structural equality is plain equality and rendering is deterministic.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::letters::{Alphabet, Letter};

/// Irreducible parenthesized word: a rooted tree of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ipw {
    root: Letter,
    children: Vec<Ipw>,
}

impl Ipw {
    /// Builds the canonical tree with the given root and children.
    pub fn new(root: Letter, mut children: Vec<Ipw>) -> Self {
        children.sort();
        Ipw { root, children }
    }

    pub fn leaf(root: Letter) -> Self {
        Ipw {
            root,
            children: Vec::new(),
        }
    }

    pub fn root(&self) -> &Letter {
        &self.root
    }

    pub fn children(&self) -> &[Ipw] {
        &self.children
    }

    /// The children as a word (the `X` in `(Xx)`).
    pub fn children_word(&self) -> Word {
        Word::from_factors(self.children.clone())
    }

    /// Number of letters.
    pub fn length(&self) -> usize {
        1 + self.children.iter().map(Ipw::length).sum::<usize>()
    }

    /// Maximum number of nested divergences, counting the root.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Ipw::depth).max().unwrap_or(0)
    }

    /// Total loop order of all letters in the tree.
    pub fn loop_order(&self) -> u64 {
        self.root.loops() as u64 + self.children.iter().map(Ipw::loop_order).sum::<u64>()
    }

    /// True when depth equals length: a chain `((..(x)x)..x)`.
    pub fn is_strictly_nested(&self) -> bool {
        self.depth() == self.length()
    }
}

impl fmt::Display for Ipw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        write!(f, "{})", self.root)
    }
}

/// A commutative multiset of iPWs. The empty word is the algebra unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    factors: Vec<Ipw>,
}

impl Word {
    /// The empty word `e = ()`.
    pub fn unit() -> Self {
        Word::default()
    }

    pub fn from_factors(mut factors: Vec<Ipw>) -> Self {
        factors.sort();
        Word { factors }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Ipw] {
        &self.factors
    }

    /// Commutative product of two words (multiset union).
    pub fn product(&self, other: &Word) -> Word {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Word::from_factors(factors)
    }

    pub fn length(&self) -> usize {
        self.factors.iter().map(Ipw::length).sum()
    }

    /// Maximum factor depth; 0 for the unit.
    pub fn depth(&self) -> usize {
        self.factors.iter().map(Ipw::depth).max().unwrap_or(0)
    }

    pub fn loop_order(&self) -> u64 {
        self.factors.iter().map(Ipw::loop_order).sum()
    }
}

impl From<Ipw> for Word {
    fn from(t: Ipw) -> Self {
        Word { factors: vec![t] }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("()");
        }
        for t in &self.factors {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parse failure with a 1-based column position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// An opening bracket without a match, or a stray closing bracket.
    Unbalanced { col: usize },
    /// `()` somewhere other than as the entire word.
    EmptyBrackets { col: usize },
    /// A bracket closed before its letter, e.g. `((x1))`.
    MissingLetter { col: usize },
    /// A token that cannot start or continue a word at this position.
    Unexpected { col: usize },
    /// An identifier not declared in the alphabet.
    UnknownLetter { name: String, col: usize },
    /// A character outside the word grammar.
    BadChar { ch: char, col: usize },
    /// Empty input.
    Empty,
}

impl ParseError {
    pub fn column(&self) -> Option<usize> {
        match self {
            ParseError::Unbalanced { col }
            | ParseError::EmptyBrackets { col }
            | ParseError::MissingLetter { col }
            | ParseError::Unexpected { col }
            | ParseError::UnknownLetter { col, .. }
            | ParseError::BadChar { col, .. } => Some(*col),
            ParseError::Empty => None,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Unbalanced { col } => write!(f, "unbalanced bracket at column {col}"),
            ParseError::EmptyBrackets { col } => write!(
                f,
                "empty brackets at column {col} (the empty word `()` must stand alone)"
            ),
            ParseError::MissingLetter { col } => {
                write!(f, "missing letter before `)` at column {col}")
            }
            ParseError::Unexpected { col } => write!(f, "unexpected token at column {col}"),
            ParseError::UnknownLetter { name, col } => {
                write!(f, "letter `{name}` at column {col} is not in the alphabet")
            }
            ParseError::BadChar { ch, col } => {
                write!(f, "character `{ch}` at column {col} is not part of a word")
            }
            ParseError::Empty => f.write_str("empty input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '(' => out.push((Token::Open, col)),
            ')' => out.push((Token::Close, col)),
            c if c.is_whitespace() => {}
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let name: String = chars[start..=i].iter().collect();
                out.push((Token::Ident(name), start + 1));
            }
            _ => return Err(ParseError::BadChar { ch: c, col }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    alphabet: &'a Alphabet,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn ipw(&mut self) -> Result<Ipw, ParseError> {
        let open_col = match self.peek() {
            Some((Token::Open, col)) => *col,
            Some((_, col)) => return Err(ParseError::Unexpected { col: *col }),
            None => return Err(ParseError::Unbalanced { col: self.end_col }),
        };
        self.pos += 1;
        let mut children = Vec::new();
        loop {
            match self.peek() {
                Some((Token::Open, _)) => children.push(self.ipw()?),
                Some((Token::Ident(name), col)) => {
                    let (name, col) = (name.clone(), *col);
                    self.pos += 1;
                    let root = self
                        .alphabet
                        .resolve(&name)
                        .ok_or(ParseError::UnknownLetter { name, col })?;
                    return match self.peek() {
                        Some((Token::Close, _)) => {
                            self.pos += 1;
                            Ok(Ipw::new(root, children))
                        }
                        Some((_, col)) => Err(ParseError::Unexpected { col: *col }),
                        None => Err(ParseError::Unbalanced { col: self.end_col }),
                    };
                }
                Some((Token::Close, col)) => {
                    return Err(if children.is_empty() {
                        ParseError::EmptyBrackets { col: open_col }
                    } else {
                        ParseError::MissingLetter { col: *col }
                    });
                }
                None => return Err(ParseError::Unbalanced { col: self.end_col }),
            }
        }
    }
}

/// Parses a word in canonical or any equivalent factor/sibling order.
///
/// The literal `()` parses to the unit only when it is the entire input.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    if tokens.len() == 2 && tokens[0].0 == Token::Open && tokens[1].0 == Token::Close {
        return Ok(Word::unit());
    }
    let end_col = text.chars().count();
    let mut p = Parser {
        tokens,
        pos: 0,
        alphabet,
        end_col,
    };
    let mut factors = Vec::new();
    factors.push(p.ipw()?);
    while let Some((tok, col)) = p.peek() {
        match tok {
            Token::Open => factors.push(p.ipw()?),
            _ => return Err(ParseError::Unexpected { col: *col }),
        }
    }
    Ok(Word::from_factors(factors))
}

/// Parses a single iPW (rejects the unit and reducible words).
pub fn parse_ipw(text: &str, alphabet: &Alphabet) -> Result<Ipw, ParseError> {
    let w = parse_word(text, alphabet)?;
    match w.factors() {
        [t] => Ok(t.clone()),
        _ => Err(ParseError::Unexpected { col: 1 }),
    }
}

/// All decompositions of `t` into (subword, quotient) pairs.
///
/// One entry per antichain of proper subtree occurrences (no chosen
/// occurrence an ancestor of another): the subword is the product of the
/// chosen subtrees and the quotient is `t` with them deleted, the parent
/// keeping its letter. The improper pairs `(e, t)` and `(t, e)` are
/// included. Occurrences, not shapes, are counted, so symmetric trees
/// produce repeated pairs; that multiplicity is what the coproduct needs.
pub fn subword_decompositions(t: &Ipw) -> Vec<(Word, Word)> {
    // For one subtree: ways to pick an antichain inside it, where the
    // subtree itself may be picked (consuming it entirely).
    fn options(t: &Ipw) -> Vec<(Vec<Ipw>, Option<Ipw>)> {
        let mut out = vec![(vec![t.clone()], None)];
        for (picked, kept) in combine(t.children()) {
            out.push((picked, Some(Ipw::new(t.root().clone(), kept))));
        }
        out
    }

    // Cartesian product of per-child options.
    fn combine(children: &[Ipw]) -> Vec<(Vec<Ipw>, Vec<Ipw>)> {
        let mut acc: Vec<(Vec<Ipw>, Vec<Ipw>)> = vec![(Vec::new(), Vec::new())];
        for c in children {
            let opts = options(c);
            let mut next = Vec::with_capacity(acc.len() * opts.len());
            for (picked, kept) in &acc {
                for (p, k) in &opts {
                    let mut picked = picked.clone();
                    picked.extend(p.iter().cloned());
                    let mut kept = kept.clone();
                    if let Some(k) = k {
                        kept.push(k.clone());
                    }
                    next.push((picked, kept));
                }
            }
            acc = next;
        }
        acc
    }

    let mut out: Vec<(Word, Word)> = combine(t.children())
        .into_iter()
        .map(|(picked, kept)| {
            (
                Word::from_factors(picked),
                Word::from(Ipw::new(t.root().clone(), kept)),
            )
        })
        .collect();
    out.push((Word::from(t.clone()), Word::unit()));
    out.sort();
    out
}

/// All canonical iPWs with exactly `k` letters over the given letters.
pub fn enumerate_ipws(k: usize, alphabet: &Alphabet) -> Vec<Ipw> {
    assert!(k >= 1, "iPWs have at least one letter");
    let letters = alphabet.to_vec();
    let mut by_size: Vec<Vec<Ipw>> = vec![Vec::new()];
    for size in 1..=k {
        let pool = pool_upto(&by_size);
        let mut level = Vec::new();
        for root in &letters {
            for children in multisets(size - 1, &pool, 0) {
                level.push(Ipw::new(root.clone(), children));
            }
        }
        level.sort();
        by_size.push(level);
    }
    by_size.pop().unwrap()
}

/// All canonical words with exactly `k` letters (k = 0 gives the unit).
pub fn enumerate_words(k: usize, alphabet: &Alphabet) -> Vec<Word> {
    let mut by_size: Vec<Vec<Ipw>> = vec![Vec::new()];
    for size in 1..=k {
        let pool = pool_upto(&by_size);
        let letters = alphabet.to_vec();
        let mut level = Vec::new();
        for root in &letters {
            for children in multisets(size - 1, &pool, 0) {
                level.push(Ipw::new(root.clone(), children));
            }
        }
        level.sort();
        by_size.push(level);
    }
    let pool = pool_upto(&by_size);
    let mut words: Vec<Word> = multisets(k, &pool, 0)
        .into_iter()
        .map(Word::from_factors)
        .collect();
    words.sort();
    words.dedup();
    words
}

fn pool_upto(by_size: &[Vec<Ipw>]) -> Vec<(usize, Ipw)> {
    let mut pool = Vec::new();
    for (size, trees) in by_size.iter().enumerate().skip(1) {
        pool.extend(trees.iter().map(|t| (size, t.clone())));
    }
    pool
}

/// Multisets from `pool` whose sizes sum to `budget`, as sorted vectors.
fn multisets(budget: usize, pool: &[(usize, Ipw)], from: usize) -> Vec<Vec<Ipw>> {
    if budget == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in from..pool.len() {
        let (size, t) = &pool[i];
        if *size > budget {
            continue;
        }
        for mut rest in multisets(budget - size, pool, i) {
            rest.push(t.clone());
            out.push(rest);
        }
    }
    out
}

/// Counts distinct iPW shapes by brute force: every ordered tree over the
/// alphabet is generated and deduplicated through the canonical form.
/// Exponential; independent of [`enumerate_ipws`], for cross-checking.
pub fn brute_force_ipw_count(k: usize, alphabet: &Alphabet) -> usize {
    fn ordered_trees(k: usize, letters: &[Letter]) -> Vec<Ipw> {
        let mut out = Vec::new();
        for root in letters {
            for children in compositions(k - 1, letters) {
                out.push(Ipw {
                    root: root.clone(),
                    children,
                });
            }
        }
        out
    }
    // Ordered sequences of ordered trees with total size `budget`.
    fn compositions(budget: usize, letters: &[Letter]) -> Vec<Vec<Ipw>> {
        if budget == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=budget {
            for t in ordered_trees(first, letters) {
                for rest in compositions(budget - first, letters) {
                    let mut seq = vec![t.clone()];
                    seq.extend(rest);
                    out.push(seq);
                }
            }
        }
        out
    }

    let letters = alphabet.to_vec();
    let canon: BTreeSet<Ipw> = ordered_trees(k, &letters)
        .into_iter()
        .map(|t| canonicalize(&t))
        .collect();
    canon.len()
}

fn canonicalize(t: &Ipw) -> Ipw {
    Ipw::new(
        t.root.clone(),
        t.children.iter().map(canonicalize).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::DivDegree;
    use alloc::format;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn alpha() -> Alphabet {
        Alphabet::open()
    }

    fn w(text: &str) -> Word {
        parse_word(text, &alpha()).unwrap()
    }

    fn t(text: &str) -> Ipw {
        parse_ipw(text, &alpha()).unwrap()
    }

    #[test]
    fn unit_parses_and_renders() {
        assert_eq!(w("()"), Word::unit());
        assert_eq!(Word::unit().to_string(), "()");
    }

    #[test]
    fn two_loop_class_parses() {
        let v = t("((x1)x1)");
        assert_eq!(v.root().name(), "x1");
        assert_eq!(v.children().len(), 1);
        assert_eq!(v.children()[0], t("(x1)"));
    }

    #[test]
    fn disjoint_factors_commute() {
        assert_eq!(w("((x1)(x2)x3)"), w("((x2)(x1)x3)"));
        assert_eq!(w("(x1)(x2)"), w("(x2)(x1)"));
    }

    #[test]
    fn canonical_render_sorts_children() {
        assert_eq!(w("((x2)(x1)x3)").to_string(), "((x1)(x2)x3)");
    }

    #[test]
    fn lengths() {
        assert_eq!(Word::unit().length(), 0);
        assert_eq!(w("((x)x)").length(), 2);
        assert_eq!(w("(((x)x)x)((x)x)").length(), 5);
    }

    #[test]
    fn depths_from_the_four_examples() {
        // (x), ((x)x), ((x)(x)x), (((x)x)x) have depths 1, 2, 2, 3.
        assert_eq!(t("(x)").depth(), 1);
        assert_eq!(t("((x)x)").depth(), 2);
        assert_eq!(t("((x)(x)x)").depth(), 2);
        assert_eq!(t("(((x)x)x)").depth(), 3);
        assert!(t("(((x)x)x)").is_strictly_nested());
        assert!(!t("((x)(x)x)").is_strictly_nested());
    }

    #[test]
    fn loop_orders_add() {
        let alpha = Alphabet::two_letter();
        assert_eq!(Word::unit().loop_order(), 0);
        assert_eq!(parse_word("((x1)x2)", &alpha).unwrap().loop_order(), 3);
        assert_eq!(parse_word("(x1)(x1)", &alpha).unwrap().loop_order(), 2);
    }

    #[test]
    fn strict_alphabet_rejects_unknown_letters() {
        let alpha = Alphabet::single();
        assert_eq!(
            parse_word("(y)", &alpha),
            Err(ParseError::UnknownLetter {
                name: "y".into(),
                col: 2
            })
        );
    }

    #[test]
    fn parse_error_positions() {
        assert_eq!(
            parse_word("((x1", &alpha()),
            Err(ParseError::Unbalanced { col: 4 })
        );
        assert_eq!(
            parse_word("(())", &alpha()),
            Err(ParseError::EmptyBrackets { col: 2 })
        );
        assert_eq!(
            parse_word("((x1))", &alpha()),
            Err(ParseError::MissingLetter { col: 6 })
        );
        assert_eq!(
            parse_word("(x1 x2)", &alpha()),
            Err(ParseError::Unexpected { col: 5 })
        );
        assert_eq!(
            parse_word("(x1))", &alpha()),
            Err(ParseError::Unexpected { col: 5 })
        );
        assert_eq!(
            parse_word("(x1)x2", &alpha()),
            Err(ParseError::Unexpected { col: 5 })
        );
        assert_eq!(
            parse_word("(x|)", &alpha()),
            Err(ParseError::BadChar { ch: '|', col: 3 })
        );
        assert_eq!(parse_word("  ", &alpha()), Err(ParseError::Empty));
    }

    #[test]
    fn whitespace_between_tokens_is_ignored() {
        assert_eq!(w(" ( ( x1 ) x2 ) "), w("((x1)x2)"));
    }

    #[test]
    fn subwords_of_a_single_letter() {
        let v = t("(x)");
        let got = subword_decompositions(&v);
        assert_eq!(
            got,
            vec![
                (Word::unit(), Word::from(v.clone())),
                (Word::from(v), Word::unit()),
            ]
        );
    }

    #[test]
    fn subwords_of_the_nested_chain() {
        let got = subword_decompositions(&t("(((xi)xj)xk)"));
        let expect = vec![
            (w("()"), w("(((xi)xj)xk)")),
            (w("((xi)xj)"), w("(xk)")),
            (w("(xi)"), w("((xj)xk)")),
            (w("(((xi)xj)xk)"), w("()")),
        ];
        assert_eq!(sorted(got), sorted(expect));
    }

    #[test]
    fn subwords_of_two_disjoint_children() {
        let got = subword_decompositions(&t("((xi)(xj)xk)"));
        let expect = vec![
            (w("()"), w("((xi)(xj)xk)")),
            (w("(xi)"), w("((xj)xk)")),
            (w("(xj)"), w("((xi)xk)")),
            (w("(xi)(xj)"), w("(xk)")),
            (w("((xi)(xj)xk)"), w("()")),
        ];
        assert_eq!(sorted(got), sorted(expect));
    }

    fn sorted(mut v: Vec<(Word, Word)>) -> Vec<(Word, Word)> {
        v.sort();
        v
    }

    /// Brute-force antichain generator over subtree occurrence paths.
    fn antichains_by_paths(t: &Ipw) -> Vec<(Word, Word)> {
        type Path = Vec<usize>;
        fn collect(t: &Ipw, here: Path, out: &mut Vec<(Path, Ipw)>) {
            for (i, c) in t.children().iter().enumerate() {
                let mut p = here.clone();
                p.push(i);
                out.push((p.clone(), c.clone()));
                collect(c, p, out);
            }
        }
        fn delete(t: &Ipw, here: &[usize], chosen: &[Path]) -> Ipw {
            let mut kept = Vec::new();
            for (i, c) in t.children().iter().enumerate() {
                let mut p = here.to_vec();
                p.push(i);
                if chosen.contains(&p) {
                    continue;
                }
                kept.push(delete(c, &p, chosen));
            }
            Ipw::new(t.root().clone(), kept)
        }

        let mut occ = Vec::new();
        collect(t, Vec::new(), &mut occ);
        let n = occ.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let chosen: Vec<&(Path, Ipw)> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &occ[i])
                .collect();
            let ancestor_free = chosen.iter().all(|(p, _)| {
                chosen
                    .iter()
                    .all(|(q, _)| p == q || !(q.len() < p.len() && p[..q.len()] == q[..]))
            });
            if !ancestor_free {
                continue;
            }
            let picked = Word::from_factors(chosen.iter().map(|(_, t)| t.clone()).collect());
            let paths: Vec<Path> = chosen.iter().map(|(p, _)| p.clone()).collect();
            out.push((picked, Word::from(delete(t, &[], &paths))));
        }
        out.push((Word::from(t.clone()), Word::unit()));
        out.sort();
        out
    }

    #[test]
    fn subwords_match_brute_force_up_to_length_6() {
        let alpha = Alphabet::two_letter();
        for k in 1..=6 {
            for t in enumerate_ipws(k, &Alphabet::single()) {
                assert_eq!(subword_decompositions(&t), antichains_by_paths(&t));
            }
        }
        for k in 1..=4 {
            for t in enumerate_ipws(k, &alpha) {
                assert_eq!(subword_decompositions(&t), antichains_by_paths(&t));
            }
        }
    }

    #[test]
    fn symmetric_tree_decompositions_carry_multiplicity() {
        // ((x)(x)x) has two occurrences of the subtree (x).
        let got = subword_decompositions(&t("((x)(x)x)"));
        let single = got
            .iter()
            .filter(|(u, q)| *u == w("(x)") && *q == w("((x)x)"))
            .count();
        assert_eq!(single, 2);
    }

    #[test]
    fn enumeration_counts_single_letter() {
        let alpha = Alphabet::single();
        let counts: Vec<usize> = (1..=7).map(|k| enumerate_ipws(k, &alpha).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn enumeration_k3_lists_both_shapes() {
        let alpha = Alphabet::single();
        let got = enumerate_ipws(3, &alpha);
        assert_eq!(got.len(), 2);
        let rendered: Vec<String> = got.iter().map(|t| format!("{t}")).collect();
        assert!(rendered.contains(&"(((x1)x1)x1)".to_string()));
        assert!(rendered.contains(&"((x1)(x1)x1)".to_string()));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let alpha = Alphabet::single();
        for k in 1..=7 {
            assert_eq!(
                enumerate_ipws(k, &alpha).len(),
                brute_force_ipw_count(k, &alpha)
            );
        }
        let two = Alphabet::two_letter();
        for k in 1..=4 {
            assert_eq!(
                enumerate_ipws(k, &two).len(),
                brute_force_ipw_count(k, &two)
            );
        }
    }

    #[test]
    fn enumerated_words_include_products() {
        let alpha = Alphabet::single();
        assert_eq!(enumerate_words(0, &alpha), vec![Word::unit()]);
        // length 2: ((x1)x1) and (x1)(x1)
        assert_eq!(enumerate_words(2, &alpha).len(), 2);
        // length 3: 2 irreducible + ((x1)x1)(x1) + (x1)(x1)(x1)
        assert_eq!(enumerate_words(3, &alpha).len(), 4);
    }

    #[test]
    fn enumerated_ipws_survive_round_trip_and_are_distinct() {
        let alpha = Alphabet::single();
        for k in 1..=7 {
            let all = enumerate_ipws(k, &alpha);
            let mut seen = BTreeSet::new();
            for t in &all {
                assert_eq!(t.length(), k);
                let rendered = format!("{t}");
                assert!(seen.insert(rendered.clone()));
                assert_eq!(parse_ipw(&rendered, &alpha).unwrap(), *t);
            }
        }
    }

    fn ab_alpha() -> Alphabet {
        Alphabet::strict([
            Letter::new("a", 1, DivDegree::Log).unwrap(),
            Letter::new("b", 2, DivDegree::Log).unwrap(),
        ])
        .unwrap()
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        prop_oneof![
            Just(Letter::new("a", 1, DivDegree::Log).unwrap()),
            Just(Letter::new("b", 2, DivDegree::Log).unwrap()),
        ]
    }

    fn arb_ipw() -> impl Strategy<Value = Ipw> {
        arb_letter()
            .prop_map(Ipw::leaf)
            .prop_recursive(3, 12, 3, |inner| {
                (arb_letter(), prop::collection::vec(inner, 0..3))
                    .prop_map(|(root, children)| Ipw::new(root, children))
            })
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_ipw(), 0..3).prop_map(Word::from_factors)
    }

    /// Renders with child and factor order scrambled by `seed`.
    fn scrambled_render(w: &Word, seed: u64) -> String {
        fn render_tree(t: &Ipw, seed: &mut u64, out: &mut String) {
            out.push('(');
            let mut idx: Vec<usize> = (0..t.children().len()).collect();
            // xorshift-driven rotation
            *seed ^= *seed << 13;
            *seed ^= *seed >> 7;
            *seed ^= *seed << 17;
            if !idx.is_empty() {
                let r = (*seed as usize) % idx.len();
                idx.rotate_left(r);
            }
            for i in idx {
                render_tree(&t.children()[i], seed, out);
            }
            out.push_str(t.root().name());
            out.push(')');
        }
        if w.is_unit() {
            return "()".to_string();
        }
        let mut s = seed;
        let mut out = String::new();
        let mut idx: Vec<usize> = (0..w.factors().len()).collect();
        idx.rotate_left((seed as usize) % w.factors().len().max(1));
        for i in idx {
            render_tree(&w.factors()[i], &mut s, &mut out);
        }
        out
    }

    proptest! {
        #[test]
        fn round_trip(word in arb_word()) {
            let rendered = word.to_string();
            prop_assert_eq!(parse_word(&rendered, &ab_alpha()).unwrap(), word);
        }

        #[test]
        fn sibling_permutation_is_invisible(word in arb_word(), seed in any::<u64>()) {
            let scrambled = scrambled_render(&word, seed);
            prop_assert_eq!(parse_word(&scrambled, &ab_alpha()).unwrap(), word);
        }

        #[test]
        fn length_additive_over_products(a in arb_word(), b in arb_word()) {
            prop_assert_eq!(a.product(&b).length(), a.length() + b.length());
            prop_assert_eq!(a.product(&b).loop_order(), a.loop_order() + b.loop_order());
        }

        #[test]
        fn depth_at_most_length(t in arb_ipw()) {
            prop_assert!(t.depth() <= t.length());
            prop_assert_eq!(t.depth() == t.length(), t.is_strictly_nested());
        }
    }
}
