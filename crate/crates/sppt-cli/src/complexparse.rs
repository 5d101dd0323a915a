//! Parsing of complex matrices from command-line strings.
//!
//! Matrix syntax: rows separated by ';', entries by ','. An entry is a real
//! number, an imaginary number with an `i` suffix, or a sum like `0.2+0.4i`.

use sppt_core::{C64, ComplexMatrix};

/// Parse an `n x n` complex matrix.
pub fn parse_complex_matrix(text: &str, n: usize) -> Result<ComplexMatrix, String> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != n {
        return Err(format!("expected {n} rows separated by ';', got {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != n {
            return Err(format!(
                "row {r} has {} entries, expected {n}",
                cells.len()
            ));
        }
        for cell in cells {
            entries.push(parse_complex(cell)?);
        }
    }
    Ok(ComplexMatrix::new(n, n, entries))
}

/// Parse a comma-separated list of reals.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .map_err(|_| format!("not a real number: {s:?}"))
        })
        .collect()
}

/// Parse one complex entry: `1.5`, `-2i`, `i`, `0.2+0.4i`, `1-i`, ...
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex entry".to_string());
    }
    if let Some(imag_part) = s.strip_suffix(['i', 'j']) {
        // Split a trailing imaginary term off an optional real prefix: the
        // split sign is the last '+'/'-' that is neither leading nor part of
        // an exponent.
        if let Some(pos) = split_sign_position(imag_part) {
            let re = parse_real(&imag_part[..pos])?;
            let im = parse_signed_unit(&imag_part[pos..])?;
            return Ok(C64::new(re, im));
        }
        return Ok(C64::new(0.0, parse_signed_unit(imag_part)?));
    }
    Ok(C64::new(parse_real(&s)?, 0.0))
}

fn split_sign_position(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    (1..s.len()).rev().find(|&k| {
        (bytes[k] == b'+' || bytes[k] == b'-')
            && bytes[k - 1] != b'e'
            && bytes[k - 1] != b'E'
    })
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
}

/// `""`, `"+"`, `"-"` mean 1, 1, -1; anything else is parsed as a float
/// with an optional sign.
fn parse_signed_unit(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => parse_real(other),
    }
}
