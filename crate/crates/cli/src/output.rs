use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use bec_core::verify::{Verdict, VerificationReport};
use bec_core::{Error, Result};
use serde_json::{json, Value};

use crate::args::Global;

/// Provenance embedded in every result file.
pub fn run_record(command: &str, global: &Global) -> Value {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "command": command,
        "parameters": argv,
        "seed": global.seed,
        "timestamp": timestamp,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "outputs": global.out.as_ref().map(|p| vec![p.display().to_string()]).unwrap_or_default(),
    })
}

/// What a command produced.
pub enum Product {
    /// Human-readable text with a JSON twin.
    Value {
        text: String,
        json: Value,
    },
    /// A CSV table; `json` is used with `--json`.
    Csv {
        csv: String,
        json: Value,
    },
    /// A generator matrix in the text format.
    Code {
        text: String,
    },
    Report(VerificationReport),
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    // write then rename, so a partial file is never left behind
    let tmp = path.with_extension("tmp-write");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_out(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn with_run(mut json: Value, record: Value) -> Value {
    match json {
        Value::Object(ref mut m) => {
            m.insert("run".into(), record);
            json
        }
        other => json!({"result": other, "run": record}),
    }
}

fn comment_block(record: &Value) -> String {
    format!("# run: {record}\n")
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut s = format!("{}: {}\n", r.claim_id, r.verdict);
    for h in &r.hypotheses {
        s.push_str(&format!("  hypothesis {}: {}\n", h.name, h.outcome));
    }
    for c in &r.checks {
        s.push_str(&format!("  check {}: {}\n", c.name, c.outcome));
    }
    for i in &r.intermediates {
        let margin = i.margin.map(|m| format!(" +/- {m}")).unwrap_or_default();
        s.push_str(&format!(
            "  {} = {}{} ({:?})\n",
            i.name, i.value, margin, i.kind
        ));
    }
    s.push_str(&format!("  {}\n", r.narrative));
    s
}

/// Prints or writes the product and returns the exit status.
pub fn emit(product: Product, command: &str, global: &Global) -> Result<u8> {
    let record = run_record(command, global);
    let status = match &product {
        Product::Report(r) => match r.verdict {
            Verdict::Pass | Verdict::NotApplicable => 0,
            Verdict::Fail | Verdict::Inconclusive => 1,
        },
        _ => 0,
    };
    let summary = match &product {
        Product::Report(r) => Some(format!("{}: {}", r.claim_id, r.verdict)),
        _ => None,
    };
    let (to_file, to_stdout) = match product {
        Product::Value { text, json } => {
            let file =
                serde_json::to_string_pretty(&with_run(json.clone(), record)).expect("json") + "\n";
            let out = if global.json {
                serde_json::to_string_pretty(&json).expect("json") + "\n"
            } else {
                text
            };
            (file, out)
        }
        Product::Csv { csv, json } => {
            let file = if global.json {
                serde_json::to_string_pretty(&with_run(json.clone(), record)).expect("json") + "\n"
            } else {
                comment_block(&record) + &csv
            };
            let out = if global.json {
                serde_json::to_string_pretty(&json).expect("json") + "\n"
            } else {
                csv
            };
            (file, out)
        }
        Product::Code { text } => (comment_block(&record) + &text, text),
        Product::Report(r) => {
            let json = r.to_json();
            let file =
                serde_json::to_string_pretty(&with_run(json.clone(), record)).expect("json") + "\n";
            let out = if global.json {
                serde_json::to_string_pretty(&json).expect("json") + "\n"
            } else {
                report_text(&r)
            };
            (file, out)
        }
    };
    match &global.out {
        Some(path) => {
            write_file(path, &to_file).map_err(|e| match e {
                Error::Io(io) => Error::Input(format!("cannot write {}: {io}", path.display())),
                other => other,
            })?;
            match &summary {
                Some(line) => print_out(&format!("{line}\n"))?,
                None => print_out(&format!("wrote {}\n", path.display()))?,
            }
        }
        None => print_out(&to_stdout)?,
    }
    Ok(status)
}
