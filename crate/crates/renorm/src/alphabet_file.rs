//! Alphabet files: `{"letters":[{"name":"x1","loops":1,"degree":0}, ...]}`.

use renorm_core::letters::{Alphabet, DivDegree, Letter};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Deserialize)]
struct AlphabetFile {
    letters: Vec<LetterSpec>,
}

#[derive(Debug, Deserialize)]
struct LetterSpec {
    name: String,
    #[serde(default = "default_loops")]
    loops: u32,
    #[serde(default)]
    degree: i64,
}

fn default_loops() -> u32 {
    1
}

#[derive(Debug, Error)]
pub enum AlphabetFileError {
    #[error("cannot read alphabet file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("alphabet file {path} is not valid JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("alphabet file {path}: degree {degree} of `{name}` is not 0 or 1")]
    BadDegree {
        path: String,
        name: String,
        degree: i64,
    },
    #[error("alphabet file {path}: {message}")]
    BadLetter { path: String, message: String },
}

/// Loads a strict alphabet from a JSON file.
pub fn load(path: &Path) -> Result<Alphabet, AlphabetFileError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| AlphabetFileError::Io {
        path: display.clone(),
        source,
    })?;
    let file: AlphabetFile =
        serde_json::from_str(&text).map_err(|source| AlphabetFileError::Json {
            path: display.clone(),
            source,
        })?;
    let mut letters = Vec::with_capacity(file.letters.len());
    for spec in file.letters {
        let degree =
            DivDegree::from_i64(spec.degree).ok_or_else(|| AlphabetFileError::BadDegree {
                path: display.clone(),
                name: spec.name.clone(),
                degree: spec.degree,
            })?;
        letters.push(Letter::new(&spec.name, spec.loops, degree).map_err(|e| {
            AlphabetFileError::BadLetter {
                path: display.clone(),
                message: e.to_string(),
            }
        })?);
    }
    Alphabet::strict(letters).map_err(|e| AlphabetFileError::BadLetter {
        path: display,
        message: e.to_string(),
    })
}

/// The alphabet used when no file is given: open, any identifier gets
/// one loop and logarithmic degree.
pub fn default_alphabet() -> Alphabet {
    Alphabet::open()
}
