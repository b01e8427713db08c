use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use yao_core::equalizer::{EqualizerSolution, SupportSearch};
use yao_core::{Certificate, MixedStrategy, RatioMatrix, SolveResult};

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_digest: String,
    pub settings: Settings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equalizers: Option<EqualizerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &'static str, input_digest: String, settings: Settings) -> Self {
        Report {
            tool: "yao",
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest,
            settings,
            problem: None,
            solve: None,
            bound: None,
            certificates: Vec::new(),
            equalizers: None,
            sweep: None,
            timing_ms: 0.0,
        }
    }

    /// Pretty JSON. Fails if any number is non-finite (those serialize as null).
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        if let Some(path) = find_null(&value, "$") {
            bail!("report field {path} is not a finite number");
        }
        let mut text = serde_json::to_string_pretty(&value)?;
        text.push('\n');
        Ok(text)
    }
}

fn find_null(v: &Value, path: &str) -> Option<String> {
    match v {
        Value::Null => Some(path.to_string()),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .find_map(|(i, x)| find_null(x, &format!("{path}[{i}]"))),
        Value::Object(map) => map.iter().find_map(|(k, x)| find_null(x, &format!("{path}.{k}"))),
        _ => None,
    }
}

pub fn digest(text: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Serialize)]
pub struct Settings {
    pub tol: f64,
    pub solver_tol: f64,
    pub method: &'static str,
    pub fp_iters: usize,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Weight {
    pub label: String,
    pub weight: f64,
}

pub fn weights(s: &MixedStrategy) -> Vec<Weight> {
    s.labels()
        .iter()
        .zip(s.weights())
        .map(|(label, &weight)| Weight { label: label.clone(), weight })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ProblemSummary {
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub r_min: f64,
    pub r_max: f64,
    pub ratio_at_least_one: bool,
    /// `[dominant, dominated]` label pairs.
    pub dominated_rows: Vec<[String; 2]>,
    pub dominated_cols: Vec<[String; 2]>,
}

impl ProblemSummary {
    pub fn of(r: &RatioMatrix) -> Self {
        let d = r.validate();
        let pairs = |labels: &[String], doms: &[yao_core::game::Dominance]| {
            doms.iter()
                .map(|d| [labels[d.dominant].clone(), labels[d.dominated].clone()])
                .collect()
        };
        ProblemSummary {
            rows: d.rows,
            cols: d.cols,
            row_labels: r.row_labels().to_vec(),
            col_labels: r.col_labels().to_vec(),
            r_min: d.min_entry,
            r_max: d.max_entry,
            ratio_at_least_one: d.ratio_at_least_one,
            dominated_rows: pairs(r.row_labels(), &d.dominated_rows),
            dominated_cols: pairs(r.col_labels(), &d.dominated_cols),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveSummary {
    pub method: &'static str,
    pub value: f64,
    pub upper: f64,
    pub lower: f64,
    pub gap: f64,
    pub iterations: usize,
    pub primal_degenerate: bool,
    pub multiple_optima_possible: bool,
    pub f_star: Vec<Weight>,
    pub g_star: Vec<Weight>,
}

impl SolveSummary {
    pub fn of(res: &SolveResult) -> Self {
        SolveSummary {
            method: res.method.name(),
            value: res.value,
            upper: res.upper,
            lower: res.lower,
            gap: res.gap,
            iterations: res.iterations,
            primal_degenerate: res.diagnostics.primal_degenerate,
            multiple_optima_possible: res.diagnostics.multiple_optima_possible,
            f_star: weights(&res.f_star),
            g_star: weights(&res.g_star),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundSummary {
    /// `min_s U_g(s)`.
    pub lower_bound: f64,
    pub best_response: String,
    pub g: Vec<Weight>,
}

#[derive(Debug, Serialize)]
pub struct TightnessSummary {
    pub lower_slack: f64,
    pub upper_slack: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Serialize)]
pub struct CertificateSummary {
    pub kind: &'static str,
    pub passed: bool,
    pub witnessed_constant: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub f_support: Vec<String>,
    pub g_support: Vec<String>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<TightnessSummary>,
    pub details: String,
}

impl CertificateSummary {
    pub fn of(c: &Certificate) -> Self {
        CertificateSummary {
            kind: c.kind.name(),
            passed: c.passed,
            witnessed_constant: c.witnessed_constant,
            max_deviation: c.max_deviation,
            tolerance: c.tolerance,
            f_support: c.f_support.clone(),
            g_support: c.g_support.clone(),
            violations: c.violations.iter().map(ToString::to_string).collect(),
            tightness: c.tightness.map(|t| TightnessSummary {
                lower_slack: t.lower_slack,
                upper_slack: t.upper_slack,
                within_tolerance: t.within_tolerance,
            }),
            details: c.details.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EqualizerOutcome {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub support: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strategy: Vec<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EqualizerOutcome {
    pub fn of(res: &yao_core::Result<EqualizerSolution>) -> Self {
        match res {
            Ok(sol) => EqualizerOutcome {
                ok: true,
                constant: Some(sol.constant),
                residual: Some(sol.residual),
                unique: Some(sol.unique),
                support: sol.support.iter().map(|&i| sol.strategy.labels()[i].clone()).collect(),
                strategy: weights(&sol.strategy),
                error: None,
            },
            Err(e) => EqualizerOutcome::failed(e.to_string()),
        }
    }

    pub fn failed(error: String) -> Self {
        EqualizerOutcome {
            ok: false,
            constant: None,
            residual: None,
            unique: None,
            support: Vec::new(),
            strategy: Vec::new(),
            error: Some(error),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EqualizerReport {
    pub mode: &'static str,
    pub f: EqualizerOutcome,
    pub g: EqualizerOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_tried: Option<usize>,
    /// Other accepted `[row support, column support]` pairs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alternates: Vec<[Vec<String>; 2]>,
}

impl EqualizerReport {
    pub fn from_search(r: &RatioMatrix, res: &yao_core::Result<SupportSearch>) -> Self {
        match res {
            Ok(s) => EqualizerReport {
                mode: "search",
                f: EqualizerOutcome::of(&Ok(s.f.clone())),
                g: EqualizerOutcome::of(&Ok(s.g.clone())),
                candidates_tried: Some(s.candidates_tried),
                alternates: s
                    .alternates
                    .iter()
                    .map(|(rows, cols)| {
                        [
                            rows.iter().map(|&i| r.row_labels()[i].clone()).collect(),
                            cols.iter().map(|&j| r.col_labels()[j].clone()).collect(),
                        ]
                    })
                    .collect(),
            },
            Err(e) => EqualizerReport {
                mode: "search",
                f: EqualizerOutcome::failed(e.to_string()),
                g: EqualizerOutcome::failed(e.to_string()),
                candidates_tried: None,
                alternates: Vec::new(),
            },
        }
    }

    pub fn all_ok(&self) -> bool {
        self.f.ok && self.g.ok
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub buy_cost: u64,
    pub horizon: u64,
    pub value: f64,
    pub closed_form: f64,
    pub abs_error: f64,
    pub gap: f64,
    pub iterations: usize,
}
