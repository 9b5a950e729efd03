//! Matrix CSV: a header row of state ids, then one row of entries per state.
//! Entries use the shortest decimal that parses back to the same value.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::markov::StochasticMatrix;

pub fn matrix_to_csv(t: &StochasticMatrix) -> Result<String> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(t.order())?;
    for row in t.rows() {
        w.write_record(row.iter().map(|x| format!("{x}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn matrix_from_csv(text: &str) -> Result<StochasticMatrix> {
    let mut r = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let order: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let n = order.len();
    let mut entries = Array2::zeros((n, n));
    let mut rows = 0;
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if i >= n {
            return Err(Error::invalid(format!("more than {n} matrix rows")));
        }
        if rec.len() != n {
            return Err(Error::invalid(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                rec.len()
            )));
        }
        for (j, field) in rec.iter().enumerate() {
            entries[[i, j]] = field.trim().parse::<f64>().map_err(|_| {
                Error::invalid(format!(
                    "row {}, column {}: bad number `{field}`",
                    i + 1,
                    j + 1
                ))
            })?;
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: rows,
        });
    }
    StochasticMatrix::new(order, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_ids_with_commas() {
        let t = StochasticMatrix::from_rows(
            vec!["(0,0)".into(), "(0,1)".into()],
            &[vec![1.0 / 3.0, 2.0 / 3.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let text = matrix_to_csv(&t).unwrap();
        assert!(text.starts_with("\"(0,0)\",\"(0,1)\"\n"));
        assert_eq!(matrix_from_csv(&text).unwrap(), t);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matrix_from_csv("a,b\n1,0\n1\n").is_err());
        assert!(matrix_from_csv("a,b\n1,0\n").is_err());
    }
}
