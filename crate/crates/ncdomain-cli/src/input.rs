//! Input plumbing: `@file` indirection, complex-number lists, and the JSON
//! matrix/tuple formats accepted on the command line.

use ncdomain::fock::{CMat, OperatorTuple};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// Inline text, or the contents of `path` when the argument is `@path`.
pub fn resolve_text(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?
            .trim()
            .to_string())
    } else {
        Ok(arg.to_string())
    }
}

/// Parses `a`, `bi`, or `a+bi` (also with `-`). No exponent forms.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::Input("empty complex literal".into()));
    }
    let bad = |()| CliError::Input(format!("invalid complex literal '{text}'"));
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad(()));
    }
    let body = &s[..s.len() - 1];
    // split before the sign of the imaginary part, if a real part exists
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad(()))?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad(()))?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated complex coordinates.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',').map(parse_complex).collect()
}

/// JSON matrix: array of rows, each entry a `[re, im]` pair.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMat, CliError> {
    let converted = rows
        .iter()
        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    CMat::from_rows(converted).map_err(|e| CliError::Input(e.to_string()))
}

/// JSON operator tuple: `{"mats": [<matrix>, ..]}`.
#[derive(Deserialize)]
pub struct TupleJson {
    pub mats: Vec<MatrixJson>,
}

pub fn tuple_from_json(text: &str) -> Result<OperatorTuple, CliError> {
    let parsed: TupleJson =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("tuple JSON: {e}")))?;
    let mats = parsed
        .mats
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    OperatorTuple::new(mats).map_err(|e| CliError::Input(e.to_string()))
}

pub fn unitary_from_json(text: &str) -> Result<CMat, CliError> {
    let rows: MatrixJson =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("matrix JSON: {e}")))?;
    matrix_from_json(&rows)
}

/// Short human form `a+bi` with shortest-round-trip floats.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literal_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("0.3i").unwrap(), Complex64::new(0.0, 0.3));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(
            parse_complex("0.5+0.2i").unwrap(),
            Complex64::new(0.5, 0.2)
        );
        assert_eq!(
            parse_complex(" 1 - 0.75i ").unwrap(),
            Complex64::new(1.0, -0.75)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn complex_list() {
        let v = parse_complex_list("1,0.5i,-0.3-0.4i").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[2], Complex64::new(-0.3, -0.4));
    }

    #[test]
    fn formats_round_trip_visually() {
        assert_eq!(format_complex(Complex64::new(0.5, 0.0)), "0.5");
        assert_eq!(format_complex(Complex64::new(0.0, -0.25)), "-0.25i");
        assert_eq!(format_complex(Complex64::new(1.5, 2.0)), "1.5+2i");
        assert_eq!(format_complex(Complex64::new(1.5, -2.0)), "1.5-2i");
    }
}
