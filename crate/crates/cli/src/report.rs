//! The per-run report document and CSV plot-data emission.

use std::io::Write;
use std::path::{Path, PathBuf};

use eikonal_core::classify::{Conclusion, HelixVerdict, TheoremReport};
use eikonal_core::numerics::constancy::ConstancyReport;

use crate::config::AnalysisConfig;
use crate::json::{fmt_f64, Value};

pub const TOOL_NAME: &str = "eikonal";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One sampled quantity, plottable as (s, value) pairs.
#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

/// Everything one analysis run produces. Serialization order is fixed, so
/// identical configs give byte-identical documents.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub config: AnalysisConfig,
    pub causal_kind: String,
    pub convention: String,
    pub speed: ConstancyReport,
    pub eikonal: ConstancyReport,
    pub kappa: ConstancyReport,
    pub tau: ConstancyReport,
    pub epsilons: Option<(i8, i8, i8)>,
    pub frame_ode_residual: f64,
    pub darboux_rotation_residual: f64,
    /// `(check name, verdict)` in execution order.
    pub definitions: Vec<(String, HelixVerdict)>,
    pub theorems: Vec<(String, TheoremReport)>,
    /// Checks requested but not applicable to the causal kind.
    pub skipped: Vec<(String, String)>,
    pub s_grid: Vec<f64>,
    pub series: Vec<Series>,
}

fn constancy_json(r: &ConstancyReport) -> Value {
    let mut v = Value::obj();
    v.push("n_samples", Value::Int(r.n_samples as i64));
    v.push("center", Value::Num(r.center));
    v.push("max_abs_dev", Value::Num(r.max_abs_dev));
    v.push("scale", Value::Num(r.scale));
    v.push("is_constant", Value::Bool(r.is_constant));
    v.push("is_nonzero", Value::Bool(r.is_nonzero));
    v
}

fn verdict_json(v: &HelixVerdict) -> Value {
    let mut o = Value::obj();
    o.push("definition", Value::Str(v.definition.clone()));
    o.push("holds", Value::Bool(v.holds()));
    o.push("admissible", Value::Bool(v.admissible));
    o.push("report", constancy_json(&v.report));
    o
}

fn conclusion_json(c: &Conclusion) -> Value {
    let mut o = Value::obj();
    match c {
        Conclusion::Residual(r) => {
            o.push("kind", Value::Str("residual".into()));
            o.push("value", Value::Num(*r));
        }
        Conclusion::Report(r) => {
            o.push("kind", Value::Str("constancy".into()));
            o.push("report", constancy_json(r));
        }
        Conclusion::Holds(b) => {
            o.push("kind", Value::Str("holds".into()));
            o.push("value", Value::Bool(*b));
        }
        Conclusion::Unreachable(why) => {
            o.push("kind", Value::Str("unreachable".into()));
            o.push("reason", Value::Str((*why).into()));
        }
    }
    o
}

fn theorem_json(t: &TheoremReport) -> Value {
    let mut o = Value::obj();
    o.push("theorem", Value::Str(t.theorem.clone()));
    o.push("vacuous", Value::Bool(t.vacuous));
    let mut hyp = Value::obj();
    for (name, ok) in &t.hypotheses {
        hyp.push(name, Value::Bool(*ok));
    }
    o.push("hypotheses", hyp);
    let mut con = Value::obj();
    for (name, c) in &t.conclusions {
        con.push(name, conclusion_json(c));
    }
    o.push("conclusions", con);
    if !t.notes.is_empty() {
        let mut notes = Value::obj();
        for (name, v) in &t.notes {
            notes.push(name, Value::Num(*v));
        }
        o.push("notes", notes);
    }
    o
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        let mut root = Value::obj();
        let mut tool = Value::obj();
        tool.push("name", Value::Str(TOOL_NAME.into()));
        tool.push("version", Value::Str(TOOL_VERSION.into()));
        root.push("tool", tool);
        root.push("config", Value::Str(self.config.serialize()));
        root.push("causal_kind", Value::Str(self.causal_kind.clone()));
        root.push("convention", Value::Str(self.convention.clone()));
        root.push("speed", constancy_json(&self.speed));
        root.push("eikonal", constancy_json(&self.eikonal));
        let mut frame = Value::obj();
        frame.push("kappa", constancy_json(&self.kappa));
        frame.push("tau", constancy_json(&self.tau));
        if let Some((e1, e2, e3)) = self.epsilons {
            frame.push(
                "epsilons",
                Value::Arr(vec![
                    Value::Int(e1 as i64),
                    Value::Int(e2 as i64),
                    Value::Int(e3 as i64),
                ]),
            );
        }
        root.push("frame", frame);
        let mut residuals = Value::obj();
        residuals.push("frame_ode", Value::Num(self.frame_ode_residual));
        residuals.push("darboux_rotation", Value::Num(self.darboux_rotation_residual));
        root.push("residuals", residuals);
        let mut defs = Value::obj();
        for (name, v) in &self.definitions {
            defs.push(name, verdict_json(v));
        }
        root.push("definitions", defs);
        let mut thms = Value::obj();
        for (name, t) in &self.theorems {
            thms.push(name, theorem_json(t));
        }
        root.push("theorems", thms);
        if !self.skipped.is_empty() {
            let mut sk = Value::obj();
            for (name, why) in &self.skipped {
                sk.push(name, Value::Str(why.clone()));
            }
            root.push("skipped", sk);
        }
        let mut series = Value::obj();
        series.push("s", Value::num_array(&self.s_grid));
        for col in &self.series {
            series.push(&col.name, Value::num_array(&col.values));
        }
        root.push("series", series);
        root
    }

    pub fn render(&self) -> String {
        self.to_json().render()
    }
}

/// Write one CSV per series into `dir`; returns the file paths.
pub fn emit_plot_data(report: &RunReport, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for col in &report.series {
        let file_name: String = col
            .name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let path = dir.join(format!("{file_name}.csv"));
        let mut f = std::fs::File::create(&path)?;
        writeln!(f, "s,{} [convention={}]", col.name, report.convention)?;
        for (s, v) in report.s_grid.iter().zip(&col.values) {
            writeln!(f, "{},{}", fmt_f64(*s), fmt_f64(*v))?;
        }
        written.push(path);
    }
    Ok(written)
}
