//! Report documents and their JSON, CSV and text renderings.
//!
//! JSON is canonical. Field order is fixed by the struct definitions and
//! floats use shortest round-trip digits, so equal inputs render to equal
//! bytes.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use super::complex::format_complex;
use super::Format;
use crate::homology::HomologyProfile;
use crate::numkit::Tolerances;
use crate::spectra::{MatchReport, SpectraReport, SpectrumSet};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub type Point = [f64; 2];

fn point(z: Complex64) -> Point {
    [z.re, z.im]
}

fn points(s: &SpectrumSet) -> Vec<Point> {
    s.points().iter().copied().map(point).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceInfo {
    pub n: usize,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectraSets {
    pub sp: Vec<Point>,
    pub sigma_delta_0: Vec<Point>,
    pub sigma_delta_1: Vec<Point>,
    pub sigma_delta_2: Vec<Point>,
    pub sigma_pi_0: Vec<Point>,
    pub sigma_pi_1: Vec<Point>,
    pub sigma_pi_2: Vec<Point>,
}

impl SpectraSets {
    pub fn from_report(r: &SpectraReport) -> Self {
        Self {
            sp: points(&r.sp),
            sigma_delta_0: points(&r.sigma_delta_0),
            sigma_delta_1: points(&r.sigma_delta_1),
            sigma_delta_2: points(&r.sigma_delta_2),
            sigma_pi_0: points(&r.sigma_pi_0),
            sigma_pi_1: points(&r.sigma_pi_1),
            sigma_pi_2: points(&r.sigma_pi_2),
        }
    }

    pub fn named(&self) -> [(&'static str, &Vec<Point>); 7] {
        [
            ("sp", &self.sp),
            ("sigma_delta_0", &self.sigma_delta_0),
            ("sigma_delta_1", &self.sigma_delta_1),
            ("sigma_delta_2", &self.sigma_delta_2),
            ("sigma_pi_0", &self.sigma_pi_0),
            ("sigma_pi_1", &self.sigma_pi_1),
            ("sigma_pi_2", &self.sigma_pi_2),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub relation_residual: f64,
    pub nilpotency_index: usize,
    /// Largest `|d₀d₁|` over the points the run evaluated.
    pub chain_residual_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
}

/// Joint `sp` from the `y² = 0` formulas, present only for such pairs.
#[derive(Clone, Debug, Serialize)]
pub struct Specializations {
    pub y2zero: Vec<Point>,
    pub triangular: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectraDoc {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub method: &'static str,
    pub tolerances: Tolerances,
    pub spectra: SpectraSets,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specializations: Option<Specializations>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Betti {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyDiagnostics {
    pub relation_residual: f64,
    pub nilpotency_index: usize,
    pub chain_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyDoc {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub method: &'static str,
    pub tolerances: Tolerances,
    pub lambda: Point,
    pub homology: Betti,
    pub diagnostics: HomologyDiagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

impl HomologyDoc {
    pub fn betti(h: &HomologyProfile) -> Betti {
        Betti {
            h0: h.h0,
            h1: h.h1,
            h2: h.h2,
            rank_d0: h.rank_d0,
            rank_d1: h.rank_d1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Checks {
    pub relation_residual: f64,
    pub relation_bound: f64,
    pub nilpotency_index: usize,
    pub y2_zero: bool,
    pub ker_y_dim: usize,
    pub ran_y_dim: usize,
    pub invariance_ker_residual: f64,
    pub invariance_ran_residual: f64,
    pub invariance_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckDoc {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub method: &'static str,
    pub tolerances: Tolerances,
    pub valid: bool,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetDiff {
    pub matched: bool,
    pub theorem_only: Vec<Point>,
    pub oracle_only: Vec<Point>,
}

impl SetDiff {
    pub fn from_match(m: &MatchReport) -> Self {
        Self {
            matched: m.matched,
            theorem_only: m.unmatched_left.iter().copied().map(point).collect(),
            oracle_only: m.unmatched_right.iter().copied().map(point).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareDoc {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub method: &'static str,
    pub tolerances: Tolerances,
    pub matched: bool,
    /// Per-set differences, in the order of [`SpectraSets::named`].
    pub diff: Vec<(String, SetDiff)>,
    pub theorem: SpectraSets,
    pub oracle: SpectraSets,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratedDoc {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub method: &'static str,
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorDoc {
    pub schema_version: u32,
    pub error: ErrorBody,
}

/// Anything the CLI can print.
#[derive(Clone, Debug)]
pub enum Report {
    Check(CheckDoc),
    Spectra(SpectraDoc),
    Homology(HomologyDoc),
    Compare(CompareDoc),
    Generated(GeneratedDoc),
    /// A raw instance file, printed verbatim when `generate` has no `--out`.
    Instance(String),
    Error(ErrorDoc),
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn csv_num(v: f64) -> String {
    format!("{v}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fmt_points(ps: &[Point]) -> String {
    if ps.is_empty() {
        return "{}".into();
    }
    let inner: Vec<String> = ps.iter().map(|p| format_complex(Complex64::new(p[0], p[1]))).collect();
    format!("{{{}}}", inner.join(", "))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "default".to_string(), |v| format!("{v:e}"))
}

fn text_header(out: &mut String, method: &str, instance: &InstanceInfo, tol: &Tolerances) {
    let _ = writeln!(out, "method: {method}");
    let _ = writeln!(out, "instance: n = {}, hash = {}", instance.n, instance.hash);
    let _ = writeln!(
        out,
        "tolerances: rank_rel_tol = {}, match_tol = {:e}, residual_tol = {}",
        fmt_opt(tol.rank_rel_tol),
        tol.match_tol,
        fmt_opt(tol.residual_tol)
    );
}

fn text_sets(out: &mut String, sets: &SpectraSets) {
    for (name, ps) in sets.named() {
        let _ = writeln!(out, "  {name:<14} {}", fmt_points(ps));
    }
}

fn text_timestamp(out: &mut String, ts: Option<u64>) {
    if let Some(t) = ts {
        let _ = writeln!(out, "timestamp_unix: {t}");
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Report::Check(d) => json(d),
            Report::Spectra(d) => json(d),
            Report::Homology(d) => json(d),
            Report::Compare(d) => json(d),
            Report::Generated(d) => json(d),
            Report::Instance(s) => s.clone(),
            Report::Error(d) => json(d),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Check(d) => {
                let c = &d.checks;
                out.push_str("key,value\n");
                for (k, v) in [
                    ("valid", d.valid.to_string()),
                    ("n", d.instance.n.to_string()),
                    ("relation_residual", csv_num(c.relation_residual)),
                    ("relation_bound", csv_num(c.relation_bound)),
                    ("nilpotency_index", c.nilpotency_index.to_string()),
                    ("y2_zero", c.y2_zero.to_string()),
                    ("ker_y_dim", c.ker_y_dim.to_string()),
                    ("ran_y_dim", c.ran_y_dim.to_string()),
                    ("invariance_ker_residual", csv_num(c.invariance_ker_residual)),
                    ("invariance_ran_residual", csv_num(c.invariance_ran_residual)),
                    ("invariance_bound", csv_num(c.invariance_bound)),
                ] {
                    let _ = writeln!(out, "{k},{v}");
                }
            }
            Report::Spectra(d) => {
                out.push_str("set,re,im\n");
                for (name, ps) in d.spectra.named() {
                    for p in ps {
                        let _ = writeln!(out, "{name},{},{}", csv_num(p[0]), csv_num(p[1]));
                    }
                }
                if let Some(s) = &d.specializations {
                    for (name, ps) in [("sp_y2zero", &s.y2zero), ("sp_triangular", &s.triangular)] {
                        for p in ps {
                            let _ = writeln!(out, "{name},{},{}", csv_num(p[0]), csv_num(p[1]));
                        }
                    }
                }
            }
            Report::Homology(d) => {
                let h = &d.homology;
                out.push_str("lambda_re,lambda_im,h0,h1,h2,rank_d0,rank_d1,chain_residual\n");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    csv_num(d.lambda[0]),
                    csv_num(d.lambda[1]),
                    h.h0,
                    h.h1,
                    h.h2,
                    h.rank_d0,
                    h.rank_d1,
                    csv_num(d.diagnostics.chain_residual)
                );
            }
            Report::Compare(d) => {
                out.push_str("set,source,re,im,matched\n");
                for (((name, diff), (_, t)), (_, o)) in d.diff.iter().zip(d.theorem.named()).zip(d.oracle.named()) {
                    for (source, ps, only) in [("theorem", t, &diff.theorem_only), ("oracle", o, &diff.oracle_only)] {
                        for p in ps {
                            let _ = writeln!(
                                out,
                                "{name},{source},{},{},{}",
                                csv_num(p[0]),
                                csv_num(p[1]),
                                !only.contains(p)
                            );
                        }
                    }
                }
            }
            Report::Generated(d) => {
                out.push_str("path,n,hash\n");
                let _ = writeln!(out, "{},{},{}", csv_field(&d.path), d.instance.n, d.instance.hash);
            }
            Report::Instance(s) => out.push_str(s),
            Report::Error(d) => {
                out.push_str("kind,exit_code,message\n");
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    d.error.kind,
                    d.error.exit_code,
                    csv_field(&d.error.message)
                );
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Check(d) => {
                text_header(&mut out, d.method, &d.instance, &d.tolerances);
                let c = &d.checks;
                let _ = writeln!(out, "valid: {}", d.valid);
                let _ = writeln!(
                    out,
                    "relation residual: {:e} (bound {:e})",
                    c.relation_residual, c.relation_bound
                );
                let _ = writeln!(out, "nilpotency index: {}", c.nilpotency_index);
                let _ = writeln!(out, "y^2 = 0: {}", c.y2_zero);
                let _ = writeln!(out, "dim Ker(y) = {}, dim R(y) = {}", c.ker_y_dim, c.ran_y_dim);
                let _ = writeln!(
                    out,
                    "invariance residuals: Ker(y) {:e}, R(y) {:e} (bound {:e})",
                    c.invariance_ker_residual, c.invariance_ran_residual, c.invariance_bound
                );
                text_timestamp(&mut out, d.timestamp_unix);
            }
            Report::Spectra(d) => {
                text_header(&mut out, d.method, &d.instance, &d.tolerances);
                out.push_str("spectra:\n");
                text_sets(&mut out, &d.spectra);
                if let Some(s) = &d.specializations {
                    let _ = writeln!(out, "  {:<14} {}", "sp (y2zero)", fmt_points(&s.y2zero));
                    let _ = writeln!(out, "  {:<14} {}", "sp (triang.)", fmt_points(&s.triangular));
                }
                let g = &d.diagnostics;
                let _ = writeln!(
                    out,
                    "diagnostics: relation residual {:e}, nilpotency index {}, max chain residual {:e}",
                    g.relation_residual, g.nilpotency_index, g.chain_residual_max
                );
                if let Some(c) = g.candidates {
                    let _ = writeln!(out, "candidates evaluated: {c}");
                }
                text_timestamp(&mut out, d.timestamp_unix);
            }
            Report::Homology(d) => {
                text_header(&mut out, d.method, &d.instance, &d.tolerances);
                let h = &d.homology;
                let _ = writeln!(
                    out,
                    "lambda: {}",
                    format_complex(Complex64::new(d.lambda[0], d.lambda[1]))
                );
                let _ = writeln!(out, "h0 = {}, h1 = {}, h2 = {}", h.h0, h.h1, h.h2);
                let _ = writeln!(out, "rank d0 = {}, rank d1 = {}", h.rank_d0, h.rank_d1);
                let _ = writeln!(out, "chain residual: {:e}", d.diagnostics.chain_residual);
                text_timestamp(&mut out, d.timestamp_unix);
            }
            Report::Compare(d) => {
                text_header(&mut out, d.method, &d.instance, &d.tolerances);
                let _ = writeln!(out, "matched: {}", d.matched);
                for (name, diff) in &d.diff {
                    if diff.matched {
                        let _ = writeln!(out, "  {name:<14} ok");
                    } else {
                        let _ = writeln!(
                            out,
                            "  {name:<14} MISMATCH theorem only {}, oracle only {}",
                            fmt_points(&diff.theorem_only),
                            fmt_points(&diff.oracle_only)
                        );
                    }
                }
                out.push_str("theorem:\n");
                text_sets(&mut out, &d.theorem);
                out.push_str("oracle:\n");
                text_sets(&mut out, &d.oracle);
                text_timestamp(&mut out, d.timestamp_unix);
            }
            Report::Generated(d) => {
                let _ = writeln!(
                    out,
                    "wrote {} (n = {}, hash = {})",
                    d.path, d.instance.n, d.instance.hash
                );
            }
            Report::Instance(s) => out.push_str(s),
            Report::Error(d) => {
                let _ = writeln!(out, "error[{}]: {}", d.error.kind, d.error.message);
            }
        }
        out
    }

    /// Point sets for `--plot`, as `(label, points)`.
    pub fn plot_series(&self) -> Option<Vec<(String, Vec<Point>)>> {
        let named = |prefix: &str, s: &SpectraSets| -> Vec<(String, Vec<Point>)> {
            s.named()
                .into_iter()
                .map(|(n, ps)| (format!("{prefix}{n}"), ps.clone()))
                .collect()
        };
        match self {
            Report::Spectra(d) => Some(named("", &d.spectra)),
            Report::Compare(d) => {
                let mut v = named("theorem ", &d.theorem);
                v.extend(named("oracle ", &d.oracle));
                Some(v)
            }
            _ => None,
        }
    }
}
