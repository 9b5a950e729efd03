//! Text formats: the network DSL, PBN and state-map JSON, DOT and CSV.

pub mod csv;
pub mod dot;
pub mod dsl;
pub mod json;

use std::path::Path;

use crate::error::{Error, Result};

pub use self::csv::{matrix_from_csv, matrix_to_csv};
pub use dot::{export_dot, matrix_to_dot};
pub use dsl::{parse_network, parse_network_raw, serialize_network};
pub use json::{parse_pbn_json, parse_state_map_json, pbn_to_json, state_map_to_json};

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Split `{:e}` output into mantissa digits (no dot) and decimal exponent.
fn sci_parts(x: f64, sig: usize) -> (String, i32) {
    let s = format!("{:.*e}", sig - 1, x.abs());
    let (mant, exp) = s.split_once('e').expect("exponent form");
    (
        mant.replace('.', ""),
        exp.parse().expect("integer exponent"),
    )
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// C-style `%.{sig}g`.
pub fn fmt_g(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (_, exp) = sci_parts(x, sig);
    if exp < -4 || exp >= sig as i32 {
        let s = format!("{:.*e}", sig - 1, x);
        let (mant, e) = s.split_once('e').expect("exponent form");
        let e: i32 = e.parse().expect("integer exponent");
        let sign = if e < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mant.to_string()), sign, e.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{:.*}", decimals, x))
    }
}

/// `%.6g` with a leading `0.` shortened to `.`, as in `.33`.
pub fn prob_label(x: f64) -> String {
    let s = fmt_g(x, 6);
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

/// Positional decimal with 17 significant digits, trailing zeros dropped.
/// Parsing the result recovers `x` exactly.
pub fn fmt_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let (_, exp) = sci_parts(x, 17);
    let decimals = (16 - exp).max(0) as usize;
    trim_fraction(format!("{:.*}", decimals, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        assert_eq!(fmt_g(0.33, 6), "0.33");
        assert_eq!(fmt_g(1.0, 6), "1");
        assert_eq!(fmt_g(0.0001234567, 6), "0.000123457");
        assert_eq!(fmt_g(0.00001, 6), "1e-05");
        assert_eq!(fmt_g(1234567.0, 6), "1.23457e+06");
        assert_eq!(fmt_g(0.67, 6), "0.67");
        assert_eq!(fmt_g(0.1 + 0.2, 6), "0.3");
        assert_eq!(fmt_g(0.11, 10), "0.11");
        assert_eq!(fmt_g(0.0050000000000000044, 10), "0.005");
    }

    #[test]
    fn probability_labels() {
        assert_eq!(prob_label(0.33), ".33");
        assert_eq!(prob_label(1.0), "1");
        assert_eq!(prob_label(0.46 + 0.21), ".67");
    }

    #[test]
    fn sig17_round_trips() {
        for x in [0.46, 0.1 + 0.2, 1.0, 1.0 / 3.0, 0.7 * 0.3, 1e-20, 0.5] {
            let s = fmt_sig17(x);
            assert!(!s.contains('e'), "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_sig17(0.5), "0.5");
        assert_eq!(fmt_sig17(1.0), "1");
    }
}
