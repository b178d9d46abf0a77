//! Text and structured rendering of reports.

use std::fmt::Write as _;

use curvature_core::checks::{CheckReport, Verdict};
use curvature_core::tensors::ValidationReport;
use serde::Serialize;

use crate::spectrum::SpectrumReport;

pub const REPORT_FORMAT_VERSION: u32 = 1;
const DISCLAIMER: &str = "note: a PASS from a sampled check is evidence on a finite sample, not a proof";

/// Top-level object of every structured report.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub format_version: u32,
    pub command: &'a str,
    pub report: &'a T,
}

pub fn structured<T: Serialize>(command: &str, report: &T) -> String {
    let env = Envelope {
        format_version: REPORT_FORMAT_VERSION,
        command,
        report,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

/// Plain notation for moderate magnitudes, exponent notation otherwise.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn complex(z: [f64; 2]) -> String {
    match z {
        [re, 0.0] => num(re),
        [re, im] if im < 0.0 => format!("{}-{}i", num(re), num(-im)),
        [re, im] => format!("{}+{}i", num(re), num(im)),
    }
}

fn vector(v: &[[f64; 2]]) -> String {
    format!("({})", v.iter().map(|z| complex(*z)).collect::<Vec<_>>().join(", "))
}

fn list(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", "))
}

pub fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

pub fn check_text(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "check: {}", r.check);
    let _ = writeln!(out, "verdict: {}", verdict_word(r.verdict));
    let _ = writeln!(out, "{DISCLAIMER}");
    match r.seed {
        Some(seed) => {
            let _ = writeln!(
                out,
                "seed: {seed}  samples: {}  tolerance: {:e}",
                r.samples, r.tolerance
            );
        }
        None => {
            let _ = writeln!(out, "points: {}  tolerance: {:e}", r.samples, r.tolerance);
        }
    }
    if !r.fitted.is_empty() {
        let _ = writeln!(out, "fitted:");
        for (k, v) in &r.fitted {
            let _ = writeln!(out, "  {k} = {}", list(v));
        }
    }
    if !r.residuals.is_empty() {
        let _ = writeln!(out, "residuals:");
        for (k, v) in &r.residuals {
            let _ = writeln!(out, "  {k} = {v:e}");
        }
    }
    if !r.series.is_empty() {
        let _ = writeln!(out, "series:");
        for (k, v) in &r.series {
            let _ = writeln!(out, "  {k} = {}", list(v));
        }
    }
    if !r.witnesses.is_empty() {
        let _ = writeln!(out, "witnesses:");
        for (n, w) in r.witnesses.iter().enumerate() {
            let _ = writeln!(out, "  [{}] {}", n + 1, w.label);
            for v in &w.vectors {
                let _ = writeln!(out, "      vector {}", vector(v));
            }
            for (k, v) in &w.values {
                let _ = writeln!(out, "      {k} = {}", num(*v));
            }
        }
    }
    for note in &r.notes {
        let _ = writeln!(out, "- {note}");
    }
    out
}

pub fn validation_text(r: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "validate: {}", r.kind);
    let _ = writeln!(out, "verdict: {}", if r.passed { "PASS" } else { "FAIL" });
    let _ = writeln!(
        out,
        "scale (max |component|): {}  tolerance (relative): {:e}",
        num(r.scale),
        r.tol
    );
    for id in &r.identities {
        let _ = writeln!(
            out,
            "  {:<16} {}  relative {:e}  absolute {:e}  worst index {:?}",
            id.identity,
            if id.passed { "ok  " } else { "FAIL" },
            id.relative,
            id.residual,
            id.worst_index
        );
    }
    out
}

pub fn spectrum_text(r: &SpectrumReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "operator: {}", r.operator);
    for v in &r.vectors {
        let _ = writeln!(out, "  at {}", vector(v));
    }
    let _ = writeln!(out, "trace powers: {}", vector(&r.trace_powers));
    let _ = writeln!(out, "charpoly (leading first): {}", vector(&r.charpoly));
    let _ = writeln!(out, "eigenvalues (reporting only): {}", vector(&r.eigenvalues));
    let _ = writeln!(out, "self-adjoint residual: {:e}", r.self_adjoint_residual);
    let _ = writeln!(out, "newton residual: {:e}", r.newton_residual);
    let _ = writeln!(out, "matrix (column i is the image of e_i):");
    for row in &r.matrix {
        let _ = writeln!(out, "  {}", vector(row));
    }
    out
}
