//! Deterministic machine-readable reports: fixed field order, floats
//! rounded to 12 significant digits, atomic file writes.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Round to 12 significant digits (round-half-even, via the exact decimal
/// formatter) so identical configurations produce byte-identical reports.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

/// 12-significant-digit text form used in CSV output.
pub fn fmt_sig12(x: f64) -> String {
    let mut s = format!("{}", round_sig12(x));
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

#[derive(Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub results: Vec<ResultRow>,
    pub checks: Vec<Check>,
}

/// Echo of the effective configuration, defaults resolved.
#[derive(Serialize)]
pub struct ConfigEcho {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(rename = "Mlambda", skip_serializing_if = "Option::is_none")]
    pub m_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_max: Option<f64>,
    pub format: String,
}

impl ConfigEcho {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            scenario: None,
            m: None,
            alpha: None,
            eta: None,
            m_lambda: None,
            rho0: None,
            n: None,
            l: None,
            exact: None,
            oracle: None,
            grid_points: None,
            rho_max: None,
            format: "json".to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct ResultRow {
    pub n: u32,
    pub l: i32,
    pub frequency: f64,
    pub energy: f64,
    pub oracle_energy: Option<f64>,
    pub rel_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResultRow {
    pub fn rounded(mut self) -> Self {
        self.frequency = round_sig12(self.frequency);
        self.energy = round_sig12(self.energy);
        self.oracle_energy = self.oracle_energy.map(round_sig12);
        self.rel_dev = self.rel_dev.map(round_sig12);
        self
    }
}

/// One verification check. `pass` already encodes the comparison direction:
/// tolerance is an upper bound on `measured` for agreement checks and a
/// lower bound for separation checks (names ending in `_exceeds`).
#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn upper(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: measured <= tolerance,
            measured: round_sig12(measured),
            tolerance,
        }
    }

    pub fn lower(name: &str, measured: f64, threshold: f64) -> Self {
        Self {
            name: format!("{name}_exceeds"),
            pass: measured > threshold,
            measured: round_sig12(measured),
            tolerance: threshold,
        }
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

/// Write via a temp file in the same directory, then rename.
pub fn emit(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            let tmp = p.with_file_name(format!(
                "{}.tmp",
                p.file_name().and_then(|s| s.to_str()).unwrap_or("out")
            ));
            fs::write(&tmp, content)?;
            fs::rename(&tmp, p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable_and_twelve_digits() {
        assert_eq!(round_sig12(2.0 / 3.0), 0.666666666667);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(4.0), 4.0);
        let x = 3.334_490_071_622_270_5;
        assert_eq!(round_sig12(x), 3.33449007162);
        assert_eq!(round_sig12(round_sig12(x)), round_sig12(x));
    }

    #[test]
    fn csv_float_form() {
        assert_eq!(fmt_sig12(4.0), "4.0");
        assert_eq!(fmt_sig12(2.0 / 3.0), "0.666666666667");
    }
}
