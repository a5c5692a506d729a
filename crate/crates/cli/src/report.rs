//! Reports: the inputs, the results, and for inequalities the bound with a
//! `satisfied` flag. Maps are ordered, so fixed inputs give identical bytes.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::{CliError, CliResult};

/// One line of an alpha sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
    /// An inequality failed or a counterexample was found.
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            bound: None,
            satisfied: None,
            violation: false,
            residuals: None,
            sweep: None,
            wall_time_s: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    /// Records an inequality outcome; a failed one marks the report as a violation.
    pub fn inequality(&mut self, bound: f64, satisfied: bool) -> &mut Self {
        self.bound = Some(bound);
        self.satisfied = Some(satisfied);
        self.violation |= !satisfied;
        self
    }

    /// 0 when everything held, 2 on a violation or counterexample.
    pub fn exit_code(&self) -> u8 {
        if self.violation {
            2
        } else {
            0
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> CliResult<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let rows = self
                    .sweep
                    .as_ref()
                    .ok_or_else(|| CliError::Config(format!("csv output is only available for alpha sweeps, not {}", self.command)))?;
                let mut w = csv::Writer::from_writer(out);
                for row in rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_sweep_header() {
        let mut r = Report::new("ialpha-sweep");
        r.sweep = Some(vec![SweepRow { alpha: 0.5, value: 0.48, bound: 0.479 }]);
        let mut buf = Vec::new();
        r.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "alpha,value,bound\n0.5,0.48,0.479\n");
    }

    #[test]
    fn failed_inequality_sets_exit_code() {
        let mut r = Report::new("bs-check");
        assert_eq!(r.exit_code(), 0);
        r.inequality(1.0, false);
        assert_eq!(r.exit_code(), 2);
        assert!(Report::new("abstime").write(Format::Csv, &mut Vec::new()).is_err());
    }
}
