//! The activation TSV: one row per endpoint, bit-exact.
//!
//! ```text
//! corpus<TAB>endpoint<TAB>A<TAB>T ... <TAB>M<TAB>activated_dims
//! ```
//!
//! Cells are ASCII `0`/`1`, `activated_dims` is the decimal row weight,
//! lines end in LF and the encoding is UTF-8.

use std::io::{self, BufRead, Write};

use crate::dimension::{ActivationVector, Dimension};
use crate::gf2::{ActivationMatrix, MatrixError, RowLabel};

#[derive(Debug, thiserror::Error)]
pub enum TsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub fn header() -> String {
    let mut cols = vec!["corpus".to_string(), "endpoint".to_string()];
    cols.extend(Dimension::ALL.iter().map(|d| d.to_string()));
    cols.push("activated_dims".to_string());
    cols.join("\t")
}

pub fn write_activation_tsv<W: Write>(matrix: &ActivationMatrix, out: &mut W) -> io::Result<()> {
    out.write_all(header().as_bytes())?;
    out.write_all(b"\n")?;
    let mut line = String::new();
    for (label, row) in matrix.iter() {
        line.clear();
        line.push_str(&label.corpus);
        line.push('\t');
        line.push_str(&label.endpoint);
        for d in Dimension::ALL {
            line.push('\t');
            line.push(if row.get(d) { '1' } else { '0' });
        }
        line.push('\t');
        line.push_str(&row.weight().to_string());
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn to_tsv_string(matrix: &ActivationMatrix) -> String {
    let mut buf = Vec::new();
    write_activation_tsv(matrix, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("tsv is utf-8")
}

/// Parses an activation TSV, checking the header, each cell, and that
/// `activated_dims` equals the row weight.
pub fn read_activation_tsv<R: BufRead>(input: R) -> Result<ActivationMatrix, TsvError> {
    let mut lines = input.lines();
    let expected = header();
    match lines.next().transpose()? {
        Some(h) if h == expected => {}
        _ => {
            return Err(TsvError::Format {
                line: 1,
                reason: "missing or unexpected header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        let err = |reason: String| TsvError::Format {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 17 {
            return Err(err(format!("expected 17 fields, found {}", fields.len())));
        }
        let mut row = ActivationVector::ZERO;
        for (d, cell) in Dimension::ALL.iter().zip(&fields[2..16]) {
            match *cell {
                "1" => row.set(*d),
                "0" => {}
                other => return Err(err(format!("column {d}: expected 0 or 1, found `{other}`"))),
            }
        }
        let count: u32 = fields[16]
            .parse()
            .map_err(|_| err(format!("bad activated_dims `{}`", fields[16])))?;
        if count != row.weight() {
            return Err(err(format!(
                "activated_dims {count} disagrees with row weight {}",
                row.weight()
            )));
        }
        rows.push(row);
        labels.push(RowLabel::new(fields[0], fields[1]));
    }
    Ok(ActivationMatrix::new(rows, labels)?)
}
