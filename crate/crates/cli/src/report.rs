//! Report assembly and emission (JSON or a text table).

use serde::Serialize;

use greyrank_core::{MethodResult, NormalizedMatrix, WeightBundle};

use crate::problem::ProblemFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Serialize)]
pub struct ReportFile {
    pub schema: u32,
    /// Echo of the input with every default materialized.
    pub problem: ProblemFile,
    pub normalized: NormalizedMatrix,
    pub weights: WeightBundle,
    pub methods: Vec<MethodResult>,
    pub borda_scores: Vec<f64>,
    pub final_ranks: Vec<usize>,
    /// Plan names, best first.
    pub final_order: Vec<String>,
    /// Every design-decision default or fallback that fired during the run.
    pub trace: Vec<String>,
}

pub fn emit_report(report: &ReportFile, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        ReportFormat::Table => render_table(report),
    }
}

fn method_label(result: &MethodResult) -> &'static str {
    match result.method {
        greyrank_core::Method::Topsis => "TOPSIS C",
        greyrank_core::Method::IncidenceApproach => "approach C'",
        greyrank_core::Method::IncidenceMembership => "membership u",
    }
}

fn render_table(report: &ReportFile) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let plans = report.normalized.plans();
    let name_width = plans.iter().map(String::len).max().unwrap_or(4).max(4);

    writeln!(out, "Final ranking (weighted Borda over 3 methods)").unwrap();
    writeln!(out, "  order: {}", report.final_order.join(" > ")).unwrap();
    writeln!(out).unwrap();

    write!(out, "  {:<name_width$}", "plan").unwrap();
    for method in &report.methods {
        write!(out, "  {:>14}", method_label(method)).unwrap();
    }
    writeln!(out, "  {:>12}  {:>5}", "borda", "rank").unwrap();
    for (i, plan) in plans.iter().enumerate() {
        write!(out, "  {plan:<name_width$}").unwrap();
        for method in &report.methods {
            write!(out, "  {:>14.4}", method.scores[i]).unwrap();
        }
        writeln!(
            out,
            "  {:>12.4}  {:>5}",
            report.borda_scores[i], report.final_ranks[i]
        )
        .unwrap();
    }

    writeln!(out).unwrap();
    writeln!(out, "Final interval weights").unwrap();
    for (attr, w) in report
        .normalized
        .attributes()
        .iter()
        .zip(&report.weights.final_weights)
    {
        writeln!(out, "  {:<8} [{:.4}, {:.4}]", attr.name, w.lo(), w.hi()).unwrap();
    }

    writeln!(out).unwrap();
    writeln!(out, "AHP consistency").unwrap();
    for c in &report.weights.ahp_consistency {
        writeln!(
            out,
            "  expert {}: lambda_max = {:.4}, CR = {:.4}{}",
            c.expert,
            c.lambda_max,
            c.consistency_ratio,
            if c.acceptable { "" } else { "  (above 0.1)" }
        )
        .unwrap();
    }

    writeln!(out).unwrap();
    writeln!(out, "Decision trace").unwrap();
    if report.trace.is_empty() {
        writeln!(out, "  no fallbacks fired").unwrap();
    } else {
        for event in &report.trace {
            writeln!(out, "  - {event}").unwrap();
        }
    }
    out
}
