//! Generator-matrix text format.
//!
//! ```text
//! # optional comment lines
//! k N
//! <k lines of exactly N characters from {0,1}>
//! ```
//!
//! A comment of the form `# origin: RM(n,d)` marks a Reed–Muller code. The
//! marker is only honoured when the matrix equals the RM(n, d) generator.

use std::fs;
use std::path::Path;

use super::{rm_code, LinearCode, RmParams};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn parse_origin(comment: &str) -> Option<RmParams> {
    let rest = comment.trim().strip_prefix("origin:")?.trim();
    let inner = rest.strip_prefix("RM(")?.strip_suffix(')')?;
    let (n, d) = inner.split_once(',')?;
    RmParams::new(n.trim().parse().ok()?, d.trim().parse().ok()?).ok()
}

/// Parses the text format. Line numbers in errors are 1-based.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut origin = None;
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<String> = Vec::new();
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        if let Some(comment) = line.strip_prefix('#') {
            origin = origin.or_else(|| parse_origin(comment));
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    [k, n] => k.parse::<usize>().ok().zip(n.parse::<usize>().ok()),
                    _ => None,
                };
                let Some((k, n)) = parsed else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected header `k N`, found {line:?}"),
                    });
                };
                header = Some((k, n));
            }
            Some((k, n)) => {
                if rows.len() == k {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("more than k = {k} rows"),
                    });
                }
                if line.len() != n {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("row has length {}, expected N = {n}", line.len()),
                    });
                }
                if let Some(bad) = line.chars().find(|c| *c != '0' && *c != '1') {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("invalid character {bad:?}"),
                    });
                }
                rows.push(line.to_string());
            }
        }
    }
    let Some((k, n)) = header else {
        return Err(Error::Parse {
            line: last_line,
            message: "missing header `k N`".into(),
        });
    };
    if rows.len() != k {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected {k} rows, found {}", rows.len()),
        });
    }
    let mut g = BitMatrix::from_bit_strings(&rows)?;
    if k == 0 {
        g = BitMatrix::zeros(0, n);
    }
    let code = LinearCode::new(g).map_err(|e| Error::Parse {
        line: last_line,
        message: e.to_string(),
    })?;
    match origin {
        Some(params) if params.n < 24 => {
            let rm = rm_code(params, &Budgets::default())?;
            if rm.generator() == code.generator() {
                return Ok(rm);
            }
            Ok(code)
        }
        _ => Ok(code),
    }
}

/// Renders a code in the text format, preceded by `# ` comment lines.
pub fn format_code(code: &LinearCode, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            out.push_str(format!("# {line}").trim_end());
            out.push('\n');
        }
    }
    if let Some(p) = code.rm_params() {
        out.push_str(&format!("# origin: {p}\n"));
    }
    let g = code.generator();
    out.push_str(&format!("{} {}\n", g.rows(), g.cols()));
    for i in 0..g.rows() {
        out.push_str(&g.row_string(i));
        out.push('\n');
    }
    out
}

pub fn load_code(path: impl AsRef<Path>) -> Result<LinearCode> {
    parse_code(&fs::read_to_string(path)?)
}

pub fn save_code(code: &LinearCode, path: impl AsRef<Path>, comments: &[String]) -> Result<()> {
    fs::write(path, format_code(code, comments))?;
    Ok(())
}
