//! Files and formatting shared by the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use tachyon_core::fmt::g15;

use crate::error::{CliError, CliResult};

pub const OUT_DIR_ENV: &str = "TACHYON_OUT_DIR";

pub struct Output {
    dir: PathBuf,
}

impl Output {
    /// Flag first, then the environment, then the working directory.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        Output { dir }
    }

    pub fn write(&self, name: &str, contents: &str) -> CliResult<PathBuf> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(io(&path))?;
        Ok(path)
    }
}

/// Rounds every float to 15 significant digits so JSON and CSV agree.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            g15(x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON with sorted keys (serde_json's map is ordered by key).
pub fn json_pretty<T: Serialize>(value: &T) -> String {
    let v = round_floats(serde_json::to_value(value).expect("serializable value"));
    let mut s = serde_json::to_string_pretty(&v).expect("json text");
    s.push('\n');
    s
}

/// One compact JSON object per line.
pub fn json_lines<T: Serialize>(items: &[T]) -> String {
    items
        .iter()
        .map(|it| {
            let v = round_floats(serde_json::to_value(it).expect("serializable value"));
            serde_json::to_string(&v).expect("json text") + "\n"
        })
        .collect()
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(g15).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn uniform(halfwidth: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(halfwidth > 0.0 && step > 0.0 && halfwidth / step <= 1e6) {
        return Err(CliError::Usage(format!(
            "bad grid: halfwidth {halfwidth}, step {step}"
        )));
    }
    Ok(tachyon_core::basis::GridFunction::uniform_nodes(
        halfwidth, step,
    ))
}
