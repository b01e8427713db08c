//! Exact and iterative solvers for the finite game `min_f max_g H(f, g)`.

mod fictitious;
mod simplex;

pub use fictitious::fictitious_play;

use crate::error::{Error, Result};
use crate::game::{MixedStrategy, RatioMatrix};

/// Relative slack under which two expected ratios count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SimplexLp,
    FictitiousPlay,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SimplexLp => "simplex_lp",
            Method::FictitiousPlay => "fictitious_play",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Feasibility and optimality tolerance.
    pub tolerance: f64,
    pub max_pivots: usize,
    pub method: Method,
    pub fp_iterations: usize,
    /// Recorded with fictitious-play results. Play itself breaks ties by lowest
    /// index, so the seed does not change the trajectory.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-9,
            max_pivots: 10_000,
            method: Method::SimplexLp,
            fp_iterations: 100_000,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_pivots == 0 {
            return Err(Error::InvalidConfig("max_pivots must be positive".into()));
        }
        if self.fp_iterations == 0 {
            return Err(Error::InvalidConfig("fp_iterations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveDiagnostics {
    /// The final simplex basis has a basic variable at zero.
    pub primal_degenerate: bool,
    /// A nonbasic reduced cost is zero: other optimal vertices may exist.
    pub multiple_optima_possible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// The game value, i.e. the optimal randomized competitive ratio.
    pub value: f64,
    /// Optimal randomized algorithm.
    pub f_star: MixedStrategy,
    /// Optimal randomized input.
    pub g_star: MixedStrategy,
    /// `max_p V_{f*}(p)`: the competitive ratio `f*` guarantees.
    pub upper: f64,
    /// `min_s U_{g*}(s)`: the lower bound `g*` certifies.
    pub lower: f64,
    pub gap: f64,
    /// Simplex pivots or fictitious-play rounds.
    pub iterations: usize,
    pub method: Method,
    pub diagnostics: SolveDiagnostics,
}

/// Solves the game with the configured method.
pub fn solve(r: &RatioMatrix, config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    match config.method {
        Method::SimplexLp => solve_lp(r, config),
        Method::FictitiousPlay => fictitious_play(r, config),
    }
}

pub(crate) fn check_finite(r: &RatioMatrix) -> Result<()> {
    match r.first_non_finite() {
        Some((row, col)) => Err(Error::NonFiniteEntry { row, col }),
        None => Ok(()),
    }
}

fn solve_lp(r: &RatioMatrix, config: &SolverConfig) -> Result<SolveResult> {
    check_finite(r)?;
    let (m, n) = (r.rows(), r.cols());
    let lo = r.min_entry();
    let span = r.max_entry() - lo;
    // Affine map onto [1, 2]; the strategies are unaffected and the value maps back.
    let shift = |x: f64| if span > 0.0 { 1.0 + (x - lo) / span } else { 1.0 };

    // One constraint per input p over the algorithm weights x_s.
    let mut a = Vec::with_capacity(m * n);
    for p in 0..n {
        for s in 0..m {
            a.push(shift(r.get(s, p)));
        }
    }
    let lp = simplex::solve_packing_lp(&a, n, m, config.tolerance, config.max_pivots)?;

    let f_star = MixedStrategy::normalized(r.row_labels().to_vec(), lp.primal)?;
    let g_star = MixedStrategy::normalized(r.col_labels().to_vec(), lp.dual)?;
    let shifted_value = 1.0 / lp.objective;
    let value = if span > 0.0 { lo + (shifted_value - 1.0) * span } else { lo };
    finish(
        r,
        value,
        f_star,
        g_star,
        lp.pivots,
        Method::SimplexLp,
        SolveDiagnostics {
            primal_degenerate: lp.primal_degenerate,
            multiple_optima_possible: lp.dual_degenerate,
        },
    )
}

pub(crate) fn finish(
    r: &RatioMatrix,
    value: f64,
    f_star: MixedStrategy,
    g_star: MixedStrategy,
    iterations: usize,
    method: Method,
    diagnostics: SolveDiagnostics,
) -> Result<SolveResult> {
    let upper = max_of(&r.v_vector(&f_star)?);
    let lower = min_of(&r.u_vector(&g_star)?);
    Ok(SolveResult {
        value,
        f_star,
        g_star,
        upper,
        lower,
        gap: upper - lower,
        iterations,
        method,
        diagnostics,
    })
}

pub(crate) fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn tie_slack(x: f64) -> f64 {
    TIE_TOLERANCE * x.abs().max(1.0)
}

/// Lowest index whose value is within the tie tolerance of the minimum.
pub(crate) fn argmin_lowest(values: &[f64]) -> usize {
    let best = min_of(values);
    values.iter().position(|&v| v <= best + tie_slack(best)).unwrap_or(0)
}

/// Lowest index whose value is within the tie tolerance of the maximum.
pub(crate) fn argmax_lowest(values: &[f64]) -> usize {
    let best = max_of(values);
    values.iter().position(|&v| v >= best - tie_slack(best)).unwrap_or(0)
}

/// Best deterministic algorithm against `g`: `argmin_s U_g(s)`, ties to the lowest row.
pub fn best_response_row(r: &RatioMatrix, g: &MixedStrategy) -> Result<(String, f64)> {
    let u = r.u_vector(g)?;
    let i = argmin_lowest(&u);
    Ok((r.row_labels()[i].clone(), u[i]))
}

/// Worst deterministic input against `f`: `argmax_p V_f(p)`, ties to the lowest column.
pub fn best_response_col(r: &RatioMatrix, f: &MixedStrategy) -> Result<(String, f64)> {
    let v = r.v_vector(f)?;
    let i = argmax_lowest(&v);
    Ok((r.col_labels()[i].clone(), v[i]))
}
