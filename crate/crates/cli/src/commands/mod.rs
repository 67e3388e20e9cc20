pub mod eccc;
pub mod explore;
pub mod fig1;
pub mod qkd;
pub mod validate;

use ::eccc::quantum::OrthonormalBasis;

use crate::CliError;

/// Parses `x` or an inclusive range `a..b` walked in steps of `step`.
pub fn parse_sweep(spec: &str, step: f64) -> Result<Vec<f64>, CliError> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number: {s:?}")))
    };
    let Some((a, b)) = spec.split_once("..") else {
        return Ok(vec![num(spec)?]);
    };
    let (a, b) = (num(a)?, num(b)?);
    if !(step > 0.0) {
        return Err(CliError::Usage(format!("step must be positive, got {step}")));
    }
    if !(a <= b) {
        return Err(CliError::Usage(format!("empty range {spec:?}")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| (a + k as f64 * step).min(b)).collect())
}

/// Basis vectors as `[re, im]` pairs, one list per vector.
pub fn basis_entries(b: &OrthonormalBasis) -> Vec<Vec<[f64; 2]>> {
    b.vectors()
        .iter()
        .map(|v| v.amplitudes().iter().map(|z| [z.re, z.im]).collect())
        .collect()
}
