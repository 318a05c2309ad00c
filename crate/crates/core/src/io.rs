//! Text and JSON forms of complexes and move sequences.
//!
//! A complex is written one facet per line, labels in increasing order
//! separated by single spaces, facets in lexicographic order. Blank lines and
//! lines starting with `#` are skipped on input.

use std::path::Path;

use crate::complex::{Complex, Face};
use crate::connectivity::MoveSequence;
use crate::error::{Error, Result};

pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut faces = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let labels = trimmed
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| parse_err(format!("{t:?} is not a vertex label"))))
            .collect::<Result<Vec<u32>>>()?;
        let face = Face::new(labels).map_err(|e| parse_err(e.to_string()))?;
        faces.push(face);
    }
    Ok(Complex::from_faces(faces))
}

pub fn serialize_complex(complex: &Complex) -> String {
    let mut facets: Vec<&Face> = complex.facets().iter().collect();
    facets.sort();
    let mut out = String::new();
    for f in facets {
        let line: Vec<String> = f.vertices().iter().map(|v| v.0.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_complex(path: &Path) -> Result<Complex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn parse_sequence(json: &str) -> Result<MoveSequence> {
    serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn sequence_to_json(seq: &MoveSequence) -> String {
    serde_json::to_string(seq).expect("sequences serialize")
}

/// A face given as comma-separated labels, e.g. `1,2,3`.
pub fn parse_face_arg(arg: &str) -> Result<Face> {
    let labels = arg
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidArgument(format!("{t:?} is not a vertex label"))))
        .collect::<Result<Vec<u32>>>()?;
    Face::new(labels)
}
