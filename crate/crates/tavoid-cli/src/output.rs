//! Output plumbing: format selection, the stdout-or-file sink, and the
//! uniform table renderer. Every byte written is a pure function of the
//! command-line inputs, so repeated runs produce identical output.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Renders a serializable payload in the requested format. `table` receives
/// the rows lazily so commands only build what is printed.
pub fn render<T: serde::Serialize>(
    format: Format,
    payload: &T,
    table: impl FnOnce() -> String,
) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(payload).expect("serializable payload");
            s.push('\n');
            s
        }
        Format::Table => table(),
    }
}

/// Writes the rendered output to `--out` when given, standard output
/// otherwise.
pub fn emit(out: &Option<PathBuf>, rendered: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    }
}

/// A `label: value` line.
pub fn kv(label: &str, value: impl std::fmt::Display) -> String {
    format!("{label}: {value}\n")
}

/// A check/item line in the fixed `[PASS]`/`[FAIL]` form.
pub fn status_line(passed: bool, name: &str, detail: &str) -> String {
    let tag = if passed { "PASS" } else { "FAIL" };
    if detail.is_empty() {
        format!("[{tag}] {name}\n")
    } else {
        format!("[{tag}] {name} — {detail}\n")
    }
}
