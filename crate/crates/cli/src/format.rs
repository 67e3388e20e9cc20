//! Number formatting and the CSV/JSON emitters shared by the commands.

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `x` with 12 significant digits, `%g` style: fixed notation for moderate
/// exponents, scientific otherwise, trailing zeros removed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn opt_sig12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Basis vectors as a compact nested list with [`sig12`] entries.
pub fn basis_cell(basis: &[Vec<[f64; 2]>]) -> String {
    let vectors: Vec<String> = basis
        .iter()
        .map(|v| {
            let entries: Vec<String> = v.iter().map(|[re, im]| format!("[{},{}]", sig12(*re), sig12(*im))).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", vectors.join(","))
}

/// Renders `rows` under `header` as CSV text.
pub fn csv_table<I, R, S>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
