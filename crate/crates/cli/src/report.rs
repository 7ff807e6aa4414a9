use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::Failure;

/// Envelope around every command's payload. The payload fields are inlined so
/// that `components` reports carry `n`, `component_count`, ... at top level.
#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: &'static str,
    pub version: &'static str,
    pub argv: Vec<String>,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: f64,
    #[serde(flatten)]
    pub result: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(
        command: &'static str,
        argv: Vec<String>,
        inputs: serde_json::Value,
        seed: Option<u64>,
        start: Instant,
        result: T,
    ) -> Self {
        RunReport {
            command,
            version: env!("CARGO_PKG_VERSION"),
            argv,
            inputs,
            seed,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            result,
        }
    }
}

/// Writes through a sibling temporary file and a rename, so readers never see
/// a partial report.
fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::Output(e.to_string());
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).map_err(fail)
        }
        Some(path) => {
            let name = path.file_name().ok_or_else(|| Failure::Input(format!("bad output path {}", path.display())))?;
            let tmp = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
            fs::write(&tmp, bytes).map_err(fail)?;
            fs::rename(&tmp, path).map_err(|e| {
                let _ = fs::remove_file(&tmp);
                fail(e)
            })
        }
    }
}

pub fn write_report<T: Serialize>(report: &RunReport<T>, out: Option<&Path>) -> Result<(), Failure> {
    let mut bytes = serde_json::to_vec_pretty(report).map_err(|e| Failure::Output(e.to_string()))?;
    bytes.push(b'\n');
    emit(&bytes, out)
}

pub fn write_csv<T: Serialize>(rows: &[T], out: Option<&Path>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Output(e.to_string()))?;
    emit(&bytes, out)
}
