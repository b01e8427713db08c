//! Problem instances: ski rental, seeded random matrices, grid discretizations
//! of parametric cost functions, and the JSON problem file format.

use std::path::Path;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{numbered_labels, ratio_from_costs, CostModel, MixedStrategy, RatioMatrix, RATIO_FLOOR_SLACK};

/// Discrete ski rental: buying costs `buy_cost` days of rent, and the season
/// lasts at most `horizon` days.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkiRentalSpec {
    pub buy_cost: u64,
    pub horizon: u64,
}

impl SkiRentalSpec {
    pub fn new(buy_cost: u64, horizon: u64) -> Result<Self> {
        if buy_cost < 1 {
            return Err(Error::InvalidSpec("ski rental buy cost must be at least 1".into()));
        }
        if horizon < buy_cost {
            return Err(Error::InvalidSpec(format!(
                "ski rental horizon {horizon} is shorter than the buy cost {buy_cost}"
            )));
        }
        Ok(SkiRentalSpec { buy_cost, horizon })
    }
}

fn grid_label(prefix: &str, x: f64) -> String {
    format!("{prefix}={x}")
}

/// Ski rental costs.
///
/// Algorithm `s` in `1..=B` rents for `s - 1` days and buys on the morning of
/// day `s`. Input `p` in `1..=N` is the number of days skied. Online cost is `p`
/// if the season ends before the purchase (`p <= s - 1`), else `s - 1 + B`.
/// Offline cost is `min(p, B)`. Buying later than day `B` is dominated and
/// not generated.
pub fn ski_rental(spec: &SkiRentalSpec) -> Result<CostModel> {
    let spec = SkiRentalSpec::new(spec.buy_cost, spec.horizon)?;
    let b = spec.buy_cost as f64;
    let s_grid: Vec<f64> = (1..=spec.buy_cost).map(|s| s as f64).collect();
    let p_grid: Vec<f64> = (1..=spec.horizon).map(|p| p as f64).collect();
    grid_from_fn(
        &s_grid,
        &p_grid,
        |s, p| if p <= s - 1.0 { p } else { s - 1.0 + b },
        |p| p.min(b),
    )
}

/// Optimal randomized competitive ratio of discrete ski rental with buy cost `b`
/// (for any horizon of at least `b` days): `1 / (1 - (1 - 1/b)^b)`.
pub fn ski_rental_closed_form(b: u64) -> f64 {
    let b = b as f64;
    1.0 / (1.0 - (1.0 - 1.0 / b).powf(b))
}

/// Tabulated costs on parameter grids. Labels are `s=<x>` and `p=<y>`.
pub fn grid_discretize(
    s_grid: &[f64],
    p_grid: &[f64],
    cost_table: &[Vec<f64>],
    offline_table: &[f64],
) -> Result<CostModel> {
    if s_grid.is_empty() || p_grid.is_empty() {
        return Err(Error::Empty("grid"));
    }
    if cost_table.len() != s_grid.len() {
        return Err(Error::DimensionMismatch {
            what: "cost table rows",
            expected: s_grid.len(),
            found: cost_table.len(),
        });
    }
    if let Some(row) = cost_table.iter().find(|row| row.len() != p_grid.len()) {
        return Err(Error::DimensionMismatch {
            what: "cost table columns",
            expected: p_grid.len(),
            found: row.len(),
        });
    }
    if offline_table.len() != p_grid.len() {
        return Err(Error::DimensionMismatch {
            what: "offline table length",
            expected: p_grid.len(),
            found: offline_table.len(),
        });
    }
    if let Some((col, &value)) = offline_table.iter().enumerate().find(|(_, &c)| !(c > 0.0)) {
        return Err(Error::ZeroOfflineCost { col, value });
    }
    CostModel::new(
        s_grid.iter().map(|&s| grid_label("s", s)).collect(),
        p_grid.iter().map(|&p| grid_label("p", p)).collect(),
        cost_table.to_vec(),
        offline_table.to_vec(),
    )
}

/// [`grid_discretize`] with the tables evaluated from cost functions.
pub fn grid_from_fn(
    s_grid: &[f64],
    p_grid: &[f64],
    online: impl Fn(f64, f64) -> f64,
    offline: impl Fn(f64) -> f64,
) -> Result<CostModel> {
    let table: Vec<Vec<f64>> = s_grid
        .iter()
        .map(|&s| p_grid.iter().map(|&p| online(s, p)).collect())
        .collect();
    let off: Vec<f64> = p_grid.iter().map(|&p| offline(p)).collect();
    grid_discretize(s_grid, p_grid, &table, &off)
}

/// Seeded generator used for every random instance.
///
/// xoshiro256** (Blackman and Vigna) seeded by expanding the `u64` seed with
/// SplitMix64 (increment `0x9e3779b97f4a7c15`). Uniform reals use the top 53
/// bits of each output: `(x >> 11) * 2^-53`.
#[derive(Debug, Clone)]
pub struct PortableRng(Xoshiro256StarStar);

impl PortableRng {
    pub fn new(seed: u64) -> Self {
        PortableRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// A `rows x cols` matrix with entries uniform on `[lo, hi]`, drawn row-major.
pub fn random_instance(rows: usize, cols: usize, lo: f64, hi: f64, seed: u64) -> Result<RatioMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidSpec(format!("random instance needs positive dimensions, got {rows}x{cols}")));
    }
    if !(1.0 <= lo && lo <= hi && hi.is_finite()) {
        return Err(Error::InvalidRange { lo, hi });
    }
    let mut rng = PortableRng::new(seed);
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| lo + (hi - lo) * rng.next_f64()).collect())
        .collect();
    RatioMatrix::new(numbered_labels("s", rows), numbered_labels("p", cols), data)
}

/// A random distribution over `labels`, uniform on the simplex.
pub fn random_mixed_strategy(labels: Vec<String>, rng: &mut PortableRng) -> Result<MixedStrategy> {
    let weights = (0..labels.len()).map(|_| -(1.0 - rng.next_f64()).ln()).collect();
    MixedStrategy::normalized(labels, weights)
}

/// On-disk problem description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemFile {
    Ratio {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        row_labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        col_labels: Option<Vec<String>>,
        ratio: Vec<Vec<f64>>,
        #[serde(default)]
        raw_game: bool,
    },
    Costs {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        row_labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        col_labels: Option<Vec<String>>,
        cost_on: Vec<Vec<f64>>,
        cost_off: Vec<f64>,
        #[serde(default)]
        raw_game: bool,
    },
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Ratio { matrix: RatioMatrix, raw_game: bool },
    Costs { model: CostModel, raw_game: bool },
}

impl Problem {
    pub fn ratio_matrix(&self) -> Result<RatioMatrix> {
        match self {
            Problem::Ratio { matrix, .. } => Ok(matrix.clone()),
            Problem::Costs { model, raw_game } => ratio_from_costs(model, *raw_game),
        }
    }

    pub fn to_problem_file(&self) -> ProblemFile {
        match self {
            Problem::Ratio { matrix, raw_game } => ProblemFile::Ratio {
                row_labels: Some(matrix.row_labels().to_vec()),
                col_labels: Some(matrix.col_labels().to_vec()),
                ratio: matrix.to_rows(),
                raw_game: *raw_game,
            },
            Problem::Costs { model, raw_game } => ProblemFile::Costs {
                row_labels: Some(model.row_labels.clone()),
                col_labels: Some(model.col_labels.clone()),
                cost_on: model.cost_on.clone(),
                cost_off: model.cost_off.clone(),
                raw_game: *raw_game,
            },
        }
    }

    /// Canonical pretty-printed JSON text of the problem file.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_problem_file()).expect("problem files serialize");
        text.push('\n');
        text
    }
}

fn labels_or_default(labels: Option<Vec<String>>, prefix: &str, n: usize) -> Vec<String> {
    labels.unwrap_or_else(|| numbered_labels(prefix, n))
}

impl TryFrom<ProblemFile> for Problem {
    type Error = Error;

    fn try_from(file: ProblemFile) -> Result<Self> {
        match file {
            ProblemFile::Ratio {
                row_labels,
                col_labels,
                ratio,
                raw_game,
            } => {
                let m = ratio.len();
                let n = ratio.first().map_or(0, Vec::len);
                let matrix = RatioMatrix::new(
                    labels_or_default(row_labels, "s", m),
                    labels_or_default(col_labels, "p", n),
                    ratio,
                )?;
                if !raw_game {
                    for s in 0..matrix.rows() {
                        for p in 0..matrix.cols() {
                            let value = matrix.get(s, p);
                            if value < 1.0 - RATIO_FLOOR_SLACK {
                                return Err(Error::SubUnitRatio { row: s, col: p, value });
                            }
                        }
                    }
                }
                Ok(Problem::Ratio { matrix, raw_game })
            }
            ProblemFile::Costs {
                row_labels,
                col_labels,
                cost_on,
                cost_off,
                raw_game,
            } => {
                let m = cost_on.len();
                let n = cost_off.len();
                let model = CostModel::new(
                    labels_or_default(row_labels, "s", m),
                    labels_or_default(col_labels, "p", n),
                    cost_on,
                    cost_off,
                )?;
                // Surface value errors (zero offline cost, R < 1) at load time.
                ratio_from_costs(&model, raw_game)?;
                Ok(Problem::Costs { model, raw_game })
            }
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn from_str(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(parse_error)?;
    Problem::try_from(file)
}

pub fn from_file(path: impl AsRef<Path>) -> Result<Problem> {
    from_str(&std::fs::read_to_string(path)?)
}

pub fn to_file(problem: &Problem, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, problem.to_json())?;
    Ok(())
}
