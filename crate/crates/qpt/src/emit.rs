//! CSV and JSON emission for sweeps, maps, and diagnostics reports.
//!
//! CSV columns are fixed: `two_omega_t,eig1,eig2,eig3,eig4,min_eig,is_cp,
//! tp_residual`, floats printed with 12 significant digits, `is_cp` as 0/1,
//! one header row, newline-terminated rows. Emission is deterministic, so
//! identical runs produce byte-identical files.

use std::io::{self, Write};

use serde_json::{json, Value};

use crate::scenario::{ScenarioConfig, SweepResult};
use crate::tomography::{DiagnosticsReport, ProcessMap};

/// Format with 12 significant digits: fixed notation in a moderate exponent
/// range with trailing zeros trimmed, scientific otherwise.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.11e}");
        // "d.dddddddddddEsNN": trim zeros in the mantissa.
        match s.split_once('e') {
            Some((mantissa, e)) => format!("{}e{}", trim_zeros(mantissa.to_string()), e),
            None => s,
        }
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub const SWEEP_CSV_HEADER: &str = "two_omega_t,eig1,eig2,eig3,eig4,min_eig,is_cp,tp_residual";

/// Sweep rows as CSV.
pub fn write_sweep_csv<W: Write>(mut w: W, result: &SweepResult) -> io::Result<()> {
    writeln!(w, "{SWEEP_CSV_HEADER}")?;
    for row in &result.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_float(row.two_omega_t),
            fmt_float(row.eigenvalues[0]),
            fmt_float(row.eigenvalues[1]),
            fmt_float(row.eigenvalues[2]),
            fmt_float(row.eigenvalues[3]),
            fmt_float(row.min_eig),
            u8::from(row.is_cp),
            fmt_float(row.tp_residual),
        )?;
    }
    Ok(())
}

/// Sweep as a JSON object with the config and one object per row.
pub fn sweep_to_json(result: &SweepResult) -> Value {
    let rows: Vec<Value> = result
        .rows
        .iter()
        .map(|r| {
            json!({
                "two_omega_t": r.two_omega_t,
                "eig1": r.eigenvalues[0],
                "eig2": r.eigenvalues[1],
                "eig3": r.eigenvalues[2],
                "eig4": r.eigenvalues[3],
                "min_eig": r.min_eig,
                "is_cp": r.is_cp,
                "tp_residual": r.tp_residual,
            })
        })
        .collect();
    json!({
        "config": result.config,
        "rows": rows,
    })
}

/// B form as nested arrays of `{"re": .., "im": ..}`.
pub fn map_entries_json(map: &ProcessMap) -> Value {
    let b = map.b_form();
    let n = b.dim();
    let rows: Vec<Value> = (0..n)
        .map(|r| {
            let cols: Vec<Value> = (0..n)
                .map(|c| {
                    let z = b.get(r, c);
                    json!({"re": z.re, "im": z.im})
                })
                .collect();
            Value::Array(cols)
        })
        .collect();
    Value::Array(rows)
}

/// Single-time map dump as JSON.
pub fn map_to_json(cfg: &ScenarioConfig, two_omega_t: f64, map: &ProcessMap) -> Value {
    json!({
        "config": cfg,
        "two_omega_t": two_omega_t,
        "map": map_entries_json(map),
    })
}

/// Single-time map dump as long-format CSV: one row per entry.
pub fn write_map_csv<W: Write>(mut w: W, map: &ProcessMap) -> io::Result<()> {
    writeln!(w, "row,col,re,im")?;
    let b = map.b_form();
    for r in 0..b.dim() {
        for c in 0..b.dim() {
            let z = b.get(r, c);
            writeln!(w, "{},{},{},{}", r, c, fmt_float(z.re), fmt_float(z.im))?;
        }
    }
    Ok(())
}

/// Diagnostics report as JSON.
pub fn report_to_json(cfg: &ScenarioConfig, two_omega_t: f64, report: &DiagnosticsReport) -> Value {
    json!({
        "config": cfg,
        "two_omega_t": two_omega_t,
        "report": report,
    })
}

/// Diagnostics report as human-readable text.
pub fn write_report_text<W: Write>(
    mut w: W,
    cfg: &ScenarioConfig,
    two_omega_t: f64,
    report: &DiagnosticsReport,
) -> io::Result<()> {
    writeln!(w, "scenario: {}", cfg.scenario.name())?;
    writeln!(w, "two_omega_t: {}", fmt_float(two_omega_t))?;
    writeln!(
        w,
        "cp_min_eigenvalue: {}",
        fmt_float(report.cp_min_eigenvalue)
    )?;
    writeln!(w, "is_cp: {}", report.is_cp)?;
    writeln!(w, "tp_residual: {}", fmt_float(report.tp_residual))?;
    writeln!(w, "probes: {}", report.linearity.len())?;
    for probe in &report.linearity {
        writeln!(
            w,
            "  {}: residual {}, predicted_min_eig {}",
            probe.label,
            fmt_float(probe.residual),
            fmt_float(probe.predicted_min_eigenvalue),
        )?;
    }
    Ok(())
}
