use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};
use zpg_core::report::{overall, Check, Status};
use zpg_core::suites::SuiteConfig;

use crate::commands::CliError;
use crate::Format;

/// What a command produced, before rendering.
pub struct Outcome {
    pub checks: Vec<Check>,
    /// Machine-readable results (invariants, matrices, file contents).
    pub data: Value,
    /// Human-readable body printed above the check list.
    pub text: String,
}

impl Outcome {
    pub fn new(text: String, data: Value) -> Self {
        Self {
            checks: Vec::new(),
            data,
            text,
        }
    }

    pub fn status(&self) -> Status {
        overall(&self.checks)
    }

    /// No timing here, so two runs with the same arguments agree byte for byte.
    pub fn render_machine(&self, args: &[String], cfg: &SuiteConfig) -> String {
        let report = json!({
            "command": args,
            "config": cfg,
            "status": self.status(),
            "checks": self.checks,
            "data": self.data,
        });
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self, elapsed: Duration) -> String {
        let mut out = self.text.clone();
        if !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}", c.status.label(), c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "status: {} ({:.2}s)\n",
            self.status().label(),
            elapsed.as_secs_f64()
        ));
        out
    }
}

pub fn emit(rendered: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, rendered),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::plain(format!("cannot write {}: {e}", path.display())))
}

pub fn render(
    outcome: &Outcome,
    format: Format,
    args: &[String],
    cfg: &SuiteConfig,
    elapsed: Duration,
) -> String {
    match format {
        Format::Text => outcome.render_text(elapsed),
        Format::Machine => outcome.render_machine(args, cfg),
    }
}
