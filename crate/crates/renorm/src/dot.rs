//! Graphviz rendering of words as rooted trees: nesting becomes edges,
//! one tree per reducible factor.

use renorm_core::words::{Ipw, Word};
use std::fmt::Write;

pub fn word_to_dot(w: &Word) -> String {
    let mut out = String::from("digraph word {\n  node [shape=circle];\n");
    let mut counter = 0usize;
    for t in w.factors() {
        render(t, &mut counter, None, &mut out);
    }
    if w.is_unit() {
        out.push_str("  e [label=\"e\", shape=plaintext];\n");
    }
    out.push_str("}\n");
    out
}

fn render(t: &Ipw, counter: &mut usize, parent: Option<usize>, out: &mut String) {
    let id = *counter;
    *counter += 1;
    let _ = writeln!(out, "  n{id} [label=\"{}\"];", t.root().name());
    if let Some(p) = parent {
        let _ = writeln!(out, "  n{p} -> n{id};");
    }
    for c in t.children() {
        render(c, counter, Some(id), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use renorm_core::letters::Alphabet;
    use renorm_core::words::parse_word;

    #[test]
    fn renders_edges_for_nesting() {
        let w = parse_word("((x1)x2)", &Alphabet::open()).unwrap();
        let dot = word_to_dot(&w);
        assert!(dot.contains("n0 [label=\"x2\"]"));
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 [label=\"x1\"]"));
    }

    #[test]
    fn unit_renders_a_placeholder() {
        let w = parse_word("()", &Alphabet::open()).unwrap();
        assert!(word_to_dot(&w).contains("label=\"e\""));
    }
}
