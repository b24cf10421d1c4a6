//! CSV and JSON emission of reports, with readers for round trips.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{Classification, HullReport};

/// Flat view of a [`HullReport`] for CSV; the hull basis is dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullCsvRow {
    pub p: u64,
    pub h: usize,
    pub m: usize,
    pub k: usize,
    pub e: usize,
    pub dim_formula: usize,
    pub dim_oracle: usize,
    pub agree: bool,
    pub classification: Classification,
    pub formula_applicable: bool,
}

impl From<&HullReport> for HullCsvRow {
    fn from(r: &HullReport) -> Self {
        HullCsvRow {
            p: r.p,
            h: r.h,
            m: r.m,
            k: r.k,
            e: r.e,
            dim_formula: r.dim_formula,
            dim_oracle: r.dim_oracle,
            agree: r.agree,
            classification: r.classification,
            formula_applicable: r.formula_applicable,
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn write_csv<T: Serialize>(rows: &[T], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_csv<T: DeserializeOwned>(input: impl Read) -> Result<Vec<T>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(io_err))
        .collect()
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(io_err)
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(io_err)
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eaqecc::{table_generate, EaqeccRow, TABLE1};

    fn sample_reports() -> Vec<HullReport> {
        (0..4)
            .map(|e| HullReport {
                p: 2,
                h: 1,
                m: 4,
                k: 2,
                e,
                dim_formula: [0, 1, 2, 1][e],
                dim_oracle: [0, 1, 2, 1][e],
                agree: true,
                classification: [
                    Classification::Lcd,
                    Classification::Generic,
                    Classification::SelfDual,
                    Classification::Generic,
                ][e],
                formula_applicable: true,
                hull_basis: (e == 0).then(Vec::new),
            })
            .collect()
    }

    #[test]
    fn hull_csv_round_trip() {
        let rows: Vec<HullCsvRow> = sample_reports().iter().map(HullCsvRow::from).collect();
        let text = to_csv_string(&rows).unwrap();
        assert!(text.starts_with(
            "p,h,m,k,e,dim_formula,dim_oracle,agree,classification,formula_applicable\n"
        ));
        assert!(text.contains("2,1,4,2,2,2,2,true,self-dual,true"));
        let back: Vec<HullCsvRow> = read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn hull_json_round_trip() {
        let reports = sample_reports();
        let text = to_json_string(&reports).unwrap();
        let back: Vec<HullReport> = from_json_str(&text).unwrap();
        assert_eq!(back, reports);
    }

    #[test]
    fn eaqecc_round_trips() {
        let rows = table_generate(&TABLE1).unwrap();
        let csv_text = to_csv_string(&rows).unwrap();
        assert!(csv_text.starts_with(
            "p,m,e,k,hull_dim,n,k_q,d,c,singleton_equality,regime_validated,exceeds_grs_threshold,grs_threshold,h\n"
        ));
        assert_eq!(read_csv::<EaqeccRow>(csv_text.as_bytes()).unwrap(), rows);
        let json = to_json_string(&rows).unwrap();
        assert_eq!(from_json_str::<Vec<EaqeccRow>>(&json).unwrap(), rows);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(
            read_csv::<HullCsvRow>("p,h\n2,x\n".as_bytes()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            from_json_str::<HullReport>("{"),
            Err(Error::Parse(_))
        ));
    }
}
