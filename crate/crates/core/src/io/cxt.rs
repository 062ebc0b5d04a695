//! Burmeister CXT text format.
//!
//! ```text
//! B
//! <name, may be empty>
//! <number of objects>
//! <number of attributes>
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row per object over {'.', 'X'}>
//! ```

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::classification::Classification;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CxtError {
    #[error("line {line}: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("expected {expected} lines after the header, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {0}: row has the wrong length")]
    BadRowLength(usize),
    #[error("line {0}, column {1}: expected '.' or 'X'")]
    BadChar(usize, usize),
    #[error(transparent)]
    Context(#[from] crate::error::Error),
}

pub fn parse_cxt(text: &str) -> Result<Classification, CxtError> {
    let mut lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    // the final newline leaves one empty piece; other blank lines can be rows of a context without attributes
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let header = |i: usize| lines.get(i).copied();
    if header(0) != Some("B") {
        return Err(CxtError::BadHeader {
            line: 1,
            reason: "first line must be `B`".into(),
        });
    }
    if header(1).is_none() {
        return Err(CxtError::BadHeader {
            line: 2,
            reason: "missing name line".into(),
        });
    }
    let count = |i: usize| -> Result<usize, CxtError> {
        let raw = header(i).ok_or_else(|| CxtError::BadHeader {
            line: i + 1,
            reason: "missing count".into(),
        })?;
        raw.trim().parse().map_err(|_| CxtError::BadHeader {
            line: i + 1,
            reason: format!("`{raw}` is not a count"),
        })
    };
    let g = count(2)?;
    let m = count(3)?;
    let body = &lines[4..];
    let expected = 2 * g + m;
    if body.len() != expected {
        return Err(CxtError::CountMismatch {
            expected,
            found: body.len(),
        });
    }
    let objects: Vec<String> = body[..g].iter().map(|s| s.to_string()).collect();
    let attributes: Vec<String> = body[g..g + m].iter().map(|s| s.to_string()).collect();
    let mut incidence = BitMatrix::new(g, m);
    for (i, row) in body[g + m..].iter().enumerate() {
        let line = 5 + g + m + i;
        let chars: Vec<char> = row.chars().collect();
        if let Some(col) = chars.iter().position(|c| *c != '.' && *c != 'X') {
            if col < m {
                return Err(CxtError::BadChar(line, col + 1));
            }
        }
        if chars.len() != m {
            return Err(CxtError::BadRowLength(line));
        }
        for (j, c) in chars.iter().enumerate() {
            incidence.set(i, j, *c == 'X');
        }
    }
    Ok(Classification::from_matrix(objects, attributes, incidence)?)
}

/// Canonical form: LF endings, empty name line.
pub fn emit_cxt(a: &Classification) -> String {
    let mut out = format!("B\n\n{}\n{}\n", a.n_instances(), a.n_types());
    for l in a.instances().iter().chain(a.types()) {
        out.push_str(l);
        out.push('\n');
    }
    for x in 0..a.n_instances() {
        out.extend((0..a.n_types()).map(|y| if a.holds(x, y) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}
