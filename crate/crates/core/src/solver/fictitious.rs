use super::{argmax_lowest, argmin_lowest, check_finite, finish, Method, SolveDiagnostics, SolveResult, SolverConfig};
use crate::error::Result;
use crate::game::{MixedStrategy, RatioMatrix};

/// Alternating fictitious play.
///
/// Both players open with index 0. Each later round the algorithm player
/// best-responds to the empirical input mixture, then the adversary
/// best-responds to the updated algorithm mixture. The returned strategies are
/// the empirical frequencies after `fp_iterations` rounds; `upper`, `lower`
/// and `gap` are evaluated exactly on them and `value` is their midpoint.
pub fn fictitious_play(r: &RatioMatrix, config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    check_finite(r)?;
    let (m, n) = (r.rows(), r.cols());
    // row_payoff[s]: sum over adversary plays of R(s, p_t).
    // col_payoff[p]: sum over algorithm plays of R(s_t, p).
    let mut row_payoff = vec![0.0; m];
    let mut col_payoff = vec![0.0; n];
    let mut row_counts = vec![0u64; m];
    let mut col_counts = vec![0u64; n];

    let play_row = |s: usize, col_payoff: &mut [f64], counts: &mut [u64]| {
        counts[s] += 1;
        for (acc, &x) in col_payoff.iter_mut().zip(r.row(s)) {
            *acc += x;
        }
    };
    let play_col = |p: usize, row_payoff: &mut [f64], counts: &mut [u64]| {
        counts[p] += 1;
        for (s, acc) in row_payoff.iter_mut().enumerate() {
            *acc += r.get(s, p);
        }
    };

    play_row(0, &mut col_payoff, &mut row_counts);
    play_col(0, &mut row_payoff, &mut col_counts);
    for _ in 1..config.fp_iterations {
        let s = argmin_lowest(&row_payoff);
        play_row(s, &mut col_payoff, &mut row_counts);
        let p = argmax_lowest(&col_payoff);
        play_col(p, &mut row_payoff, &mut col_counts);
    }

    let t = config.fp_iterations as f64;
    let f = MixedStrategy::normalized(
        r.row_labels().to_vec(),
        row_counts.iter().map(|&c| c as f64 / t).collect(),
    )?;
    let g = MixedStrategy::normalized(
        r.col_labels().to_vec(),
        col_counts.iter().map(|&c| c as f64 / t).collect(),
    )?;
    let mut res = finish(r, 0.0, f, g, config.fp_iterations, Method::FictitiousPlay, SolveDiagnostics::default())?;
    res.value = 0.5 * (res.upper + res.lower);
    Ok(res)
}
