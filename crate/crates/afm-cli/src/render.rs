//! Output assembly: significant-digit text formatting, aligned tables, CSV
//! rows with shortest round-trip floats, and artifact writing with the
//! AFM_OUTPUT_DIR directory override.

use std::path::{Path, PathBuf};

use crate::config::RunConfig;

/// `digits` significant digits, plain decimal inside [1e-4, 10^digits),
/// scientific outside. Deterministic for equal inputs.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let d = digits as i32;
    if mag < -4 || mag >= d {
        format!("{:.*e}", digits - 1, x)
    } else {
        format!("{:.*}", (d - 1 - mag).max(0) as usize, x)
    }
}

/// Header row plus data rows, right-aligned to the widest cell per column.
pub fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&" ".repeat(w - cell.len()));
            out.push_str(cell);
        }
        out.push('\n');
    };
    emit(&mut out, &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        emit(&mut out, row);
    }
    out
}

pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Relative `--output` paths land in $AFM_OUTPUT_DIR when it is set.
fn resolve_output(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("AFM_OUTPUT_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(cfg: &RunConfig, body: &str) -> std::io::Result<()> {
    match &cfg.output {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, body)
        }
    }
}
