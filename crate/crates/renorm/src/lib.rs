//! Command-line front end, file formats, and the numeric quadrature
//! oracle for the word engine in `renorm-core`.

pub mod alphabet_file;
pub mod checks;
pub mod dot;
pub mod json;
pub mod numeric;
pub mod oracle;
