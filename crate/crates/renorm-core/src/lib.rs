//! The Hopf algebra of renormalization on parenthesized words.
//!
//! Words with brackets encode the forest structure of nested and
//! disjoint divergences; this crate implements the algebraic machinery
//! on them — coproduct, antipode, counit, the forest formula — and two
//! analytically solvable toy models in which every word evaluates to an
//! exact closed form and a truncated Laurent series in the regulator.
//!
//! Everything works over exact rationals, allocates but never touches
//! the operating system, and is deterministic: all collections iterate
//! in canonical order.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod hopf;
pub mod letters;
pub mod rat;
pub mod toymodel;
pub mod words;
