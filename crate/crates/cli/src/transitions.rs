//! Reader for `n_upper,n_lower,frequency_ghz[,weight]` files.

use std::path::Path;

use rydberg1d_core::fit::{Transition, TransitionSet};

use crate::error::CliError;

const HEADER: [&str; 3] = ["n_upper", "n_lower", "frequency_ghz"];

pub fn read_transitions(path: &Path) -> Result<TransitionSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_transitions(&text, &path.display().to_string())
}

pub fn parse_transitions(text: &str, origin: &str) -> Result<TransitionSet, CliError> {
    let parse_err = |line: u64, message: String| CliError::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut records = Vec::new();
    let mut seen_header = false;
    for (index, raw) in text.lines().enumerate() {
        let line = index as u64 + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if !seen_header {
            let ok = (3..=4).contains(&row.len())
                && row[..3] == HEADER
                && row.get(3).is_none_or(|w| *w == "weight");
            if !ok {
                return Err(parse_err(
                    line,
                    format!(
                        "expected header `n_upper,n_lower,frequency_ghz[,weight]`, found `{}`",
                        row.join(",")
                    ),
                ));
            }
            seen_header = true;
            continue;
        }
        if !(3..=4).contains(&row.len()) {
            return Err(parse_err(
                line,
                format!("expected 3 or 4 fields, found {}", row.len()),
            ));
        }
        let level = |i: usize, name: &str| -> Result<u32, CliError> {
            match row[i].parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(parse_err(
                    line,
                    format!("{name} must be an integer >= 1, found `{}`", row[i]),
                )),
            }
        };
        let positive = |i: usize, name: &str| -> Result<f64, CliError> {
            match row[i].parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
                _ => Err(parse_err(
                    line,
                    format!("{name} must be a positive number, found `{}`", row[i]),
                )),
            }
        };
        let n_upper = level(0, "n_upper")?;
        let n_lower = level(1, "n_lower")?;
        if n_upper <= n_lower {
            return Err(parse_err(
                line,
                format!("n_upper {n_upper} must exceed n_lower {n_lower}"),
            ));
        }
        let frequency = positive(2, "frequency_ghz")?;
        let weight = if row.len() == 4 {
            positive(3, "weight")?
        } else {
            1.0
        };
        records.push(Transition::weighted(n_upper, n_lower, frequency, weight));
    }
    if records.is_empty() {
        return Err(CliError::Usage(format!("{origin}: no transitions found")));
    }
    Ok(TransitionSet::new(records)?)
}
