use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::commands::Failure;

pub fn version_line(command: &str, params: &[(&str, String)]) -> String {
    let mut line = format!("# defectwalk {} {command}", env!("CARGO_PKG_VERSION"));
    for (k, v) in params {
        let _ = write!(line, " {k}={v}");
    }
    line
}

/// 17 significant digits, enough to round-trip any double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes the whole buffer in one go, to `path` or stdout.
pub fn emit(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io(e.to_string()))
        }
    }
}
