//! Text dump format: one line per row, entries `a+bi` separated by tabs.

use super::{c, ComplexMatrix, NumericError, C64};

fn format_entry(z: C64) -> String {
    // Debug formatting is the shortest round-trip form and switches to
    // exponent notation for very large or small magnitudes.
    if z.im.is_sign_negative() {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|&z| format_entry(z)).collect();
        out.push_str(&line.join("\t"));
        out.push('\n');
    }
    out
}

fn parse_entry(token: &str) -> Result<C64, NumericError> {
    let err = || NumericError::Parse(format!("bad complex entry {token:?}"));
    let body = token.trim().strip_suffix('i').ok_or_else(err)?;
    // The separator is the last '+' or '-' that is not a leading sign and not
    // part of an exponent such as `1e-5`.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(err)?;
    let re: f64 = body[..split].parse().map_err(|_| err())?;
    let im: f64 = body[split..].parse().map_err(|_| err())?;
    Ok(c(re, im))
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, NumericError> {
    let rows: Vec<Vec<C64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').map(parse_entry).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(NumericError::Parse("rows have different lengths".into()));
    }
    let flat: Vec<C64> = rows.into_iter().flatten().collect();
    Ok(ComplexMatrix::from_row_slice(flat.len() / ncols.max(1), ncols, &flat))
}
