//! Rendering of command results. Everything written here is a pure function
//! of the command's inputs, so identical invocations give identical bytes.

use std::collections::BTreeMap;

use bellkit::congruence::CongruenceReport;
use bellkit::scalar::format_rational;
use bellkit::{Polynomial, Rational};
use serde::Serialize;

use crate::args::Format;

pub type Params = BTreeMap<&'static str, String>;

/// A sequence of values starting at index `start`.
#[derive(Debug, Serialize)]
pub struct SequenceRecord {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub driver: Option<String>,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked_paths: Option<Vec<&'static str>>,
    pub limit: usize,
    pub start: usize,
    pub values: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub preset: &'static str,
    pub params: Params,
    pub report: CongruenceReport,
}

/// The polynomial form `{"family", "n", "params", "coeffs"}`.
#[derive(Debug, Serialize)]
pub struct PolyRecord {
    pub family: &'static str,
    pub n: usize,
    pub params: Params,
    pub coeffs: Vec<String>,
}

pub fn exact_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// Fifteen significant digits in scientific notation.
pub fn float_string(v: f64) -> String {
    // no "-0" in output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.14e}")
}

pub fn float_strings(values: &[f64]) -> Vec<String> {
    values.iter().copied().map(float_string).collect()
}

pub fn poly_record(family: &'static str, n: usize, params: &Params, p: &Polynomial) -> PolyRecord {
    PolyRecord {
        family,
        n,
        params: params.clone(),
        coeffs: exact_strings(p.coeffs()),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn csv_rows<'a>(header: &str, rows: impl Iterator<Item = (String, &'a str)>) -> String {
    let mut s = format!("{header}\n");
    for (index, value) in rows {
        s.push_str(&index);
        s.push(',');
        s.push_str(value);
        s.push('\n');
    }
    s
}

pub fn render_sequence(record: &SequenceRecord, format: Format) -> String {
    match format {
        Format::Json => json(record),
        Format::Csv => csv_rows(
            "index,value",
            record
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| ((record.start + i).to_string(), v.as_str())),
        ),
    }
}

/// CSV lists the violations only; the verdict is carried by the exit code.
pub fn render_verify(record: &VerifyRecord, format: Format) -> String {
    match format {
        Format::Json => json(record),
        Format::Csv => csv_rows(
            "index,value",
            record
                .report
                .violations
                .iter()
                .map(|v| (v.n.to_string(), v.residue.as_str())),
        ),
    }
}

pub fn render_poly(record: &PolyRecord, format: Format) -> String {
    match format {
        Format::Json => json(record),
        Format::Csv => csv_rows(
            "index,value",
            record
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i.to_string(), c.as_str())),
        ),
    }
}

pub fn render_poly_table(records: &[PolyRecord], format: Format) -> String {
    match format {
        Format::Json => json(&records),
        Format::Csv => {
            let mut s = String::from("n,index,value\n");
            for r in records {
                for (i, c) in r.coeffs.iter().enumerate() {
                    s.push_str(&format!("{},{i},{c}\n", r.n));
                }
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bellkit::scalar::frac;

    #[test]
    fn csv_sequence() {
        let rec = SequenceRecord {
            command: "exponents",
            driver: Some("epsilon".into()),
            params: Params::new(),
            path: None,
            checked_paths: None,
            limit: 2,
            start: 1,
            values: exact_strings(&[frac(1, 1), frac(-1, 2)]),
        };
        assert_eq!(render_sequence(&rec, Format::Csv), "index,value\n1,1\n2,-1/2\n");
        let js = render_sequence(&rec, Format::Json);
        assert!(js.ends_with("}\n"));
        assert!(!js.contains("path"));
    }

    #[test]
    fn float_rendering() {
        assert_eq!(float_string(-std::f64::consts::LN_2 / 2.0), "-3.46573590279973e-1");
        assert_eq!(float_string(1.0), "1.00000000000000e0");
        assert_eq!(float_string(0.0), "0.00000000000000e0");
        assert_eq!(float_string(-0.0), "0.00000000000000e0");
    }
}
