//! Parameter grids given on the command line.

use crate::error::{CliError, Result};

/// `steps` evenly spaced values from `from` to `to`, both included.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Usage("sweep bounds must be finite".into()));
    }
    match steps {
        0 => Err(CliError::Usage("need at least one step".into())),
        1 => Ok(vec![from]),
        n => Ok((0..n)
            .map(|i| {
                if i + 1 == n {
                    to
                } else {
                    from + (to - from) * i as f64 / (n - 1) as f64
                }
            })
            .collect()),
    }
}

/// `count` values spaced evenly in `log10` between two positive ends.
pub fn logspace(from: f64, to: f64, count: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && to > 0.0) {
        return Err(CliError::Usage("log grid ends must be positive".into()));
    }
    Ok(linspace(from.log10(), to.log10(), count)?
        .into_iter()
        .map(|e| 10f64.powf(e))
        .collect())
}

/// Grid of damping values: either a comma list (`0,0.01,0.1`) or
/// `log:FROM:TO:COUNT`, optionally prefixed by `0+` to add the undamped
/// point. Values must be non-negative.
pub fn parse_c_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    let (with_zero, body) = match text.strip_prefix("0+") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let mut values = if let Some(spec) = body.strip_prefix("log:") {
        let parts: Vec<&str> = spec.split(':').collect();
        let [from, to, count] = parts.as_slice() else {
            return Err(CliError::Usage(format!(
                "log grid must be log:FROM:TO:COUNT, got '{body}'"
            )));
        };
        logspace(num(from)?, num(to)?, count.trim().parse().map_err(|_| bad(count))?)?
    } else {
        body.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>>>()?
    };
    if with_zero {
        values.insert(0, 0.0);
    }
    if values.is_empty() {
        return Err(CliError::Usage("empty c grid".into()));
    }
    if let Some(c) = values.iter().find(|c| !(**c >= 0.0 && c.is_finite())) {
        return Err(CliError::Usage(format!("c must be non-negative, got {c}")));
    }
    Ok(values)
}

/// Default splitting grid: the undamped point plus 12 points from 1e-4 to 0.5.
pub fn default_c_grid() -> Vec<f64> {
    parse_c_grid("0+log:1e-4:0.5:12").expect("static grid")
}

fn num(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| bad(s))
}

fn bad(s: &str) -> CliError {
    CliError::Usage(format!("not a number: '{}'", s.trim()))
}
