//! Equalizing strategies: pick `f` so that `V_f(p)` is the same constant `C`
//! for every input (or `g` so that `U_g(s)` is), subject to unit mass.
//!
//! Each system is linear in the weights and `C`. It is solved through an SVD in
//! the least-squares sense, so consistent overdetermined systems (many inputs
//! equalizing at once) are handled, and then screened for consistency and sign.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Infeasibility, Result};
use crate::game::{MixedStrategy, RatioMatrix};
use crate::verify::{certify_saddle, DEFAULT_CERT_TOLERANCE};

/// Maximum accepted deviation of the equalized functional from its constant.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Weights below `-NEGATIVE_MASS_TOLERANCE` reject a solution; smaller negatives are clamped.
pub const NEGATIVE_MASS_TOLERANCE: f64 = 1e-12;
/// Largest number of candidate support pairs [`support_search`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EqualizerSolution {
    pub strategy: MixedStrategy,
    /// The common value of the equalized functional.
    pub constant: f64,
    /// Largest deviation of the equalized functional from `constant` over the equalized indices.
    pub residual: f64,
    /// Indices the strategy was allowed to use.
    pub support: Vec<usize>,
    /// Whether the linear system had a unique solution. When false the
    /// minimum-norm solution was taken.
    pub unique: bool,
}

/// Finds `f` with `V_f(p) = C` for every input.
pub fn full_support_equalizer_f(r: &RatioMatrix) -> Result<EqualizerSolution> {
    let rows: Vec<usize> = (0..r.rows()).collect();
    let cols: Vec<usize> = (0..r.cols()).collect();
    equalize_rows(r, &rows, &cols)
}

/// Finds `g` with `U_g(s) = C` for every algorithm.
pub fn full_support_equalizer_g(r: &RatioMatrix) -> Result<EqualizerSolution> {
    full_support_equalizer_f(&r.transpose())
}

/// Weights on rows `active` making `V_f` constant over `targets`.
///
/// Unknowns are the active weights and `C`; equations are one per target column
/// plus unit mass. The returned strategy is over all rows of `r`.
fn equalize_rows(r: &RatioMatrix, active: &[usize], targets: &[usize]) -> Result<EqualizerSolution> {
    crate::solver::check_finite(r)?;
    let k = active.len();
    let eqs = targets.len() + 1;
    let a = DMatrix::from_fn(eqs, k + 1, |e, u| match (e < targets.len(), u < k) {
        (true, true) => r.get(active[u], targets[e]),
        (true, false) => -1.0,
        (false, true) => 1.0,
        (false, false) => 0.0,
    });
    let mut b = DVector::zeros(eqs);
    b[eqs - 1] = 1.0;

    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let eps = 1e-10 * sigma_max.max(1.0);
    let rank = svd.rank(eps);
    let x = svd
        .solve(&b, eps)
        .map_err(|e| Error::InvalidConfig(format!("svd solve failed: {e}")))?;

    let ls_residual = (&a * &x - &b).amax();
    if !(ls_residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::NoFeasibleEqualizer(Infeasibility::Inconsistent { residual: ls_residual }));
    }
    let unique = rank == k + 1;
    if let Some((i, &w)) = x.as_slice()[..k]
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .filter(|(_, w)| **w < -NEGATIVE_MASS_TOLERANCE)
    {
        return Err(if unique {
            Error::NoFeasibleEqualizer(Infeasibility::NegativeMass { index: active[i], weight: w })
        } else {
            Error::SingularSystem { rank, unknowns: k + 1 }
        });
    }

    let mut weights = vec![0.0; r.rows()];
    for (u, &row) in active.iter().enumerate() {
        weights[row] = x[u];
    }
    let strategy = MixedStrategy::normalized(r.row_labels().to_vec(), weights)?;
    let constant = x[k];
    let residual = targets
        .iter()
        .map(|&p| {
            let v: f64 = active.iter().map(|&s| strategy.weights()[s] * r.get(s, p)).sum();
            (v - constant).abs()
        })
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::NoFeasibleEqualizer(Infeasibility::Inconsistent { residual }));
    }
    Ok(EqualizerSolution {
        strategy,
        constant,
        residual,
        support: active.to_vec(),
        unique,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportSearch {
    pub f: EqualizerSolution,
    pub g: EqualizerSolution,
    /// Further accepted (row support, column support) pairs of the same size.
    pub alternates: Vec<(Vec<usize>, Vec<usize>)>,
    pub candidates_tried: usize,
}

const MAX_ALTERNATES: usize = 16;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Number of square support pairs of size `1..=max_support`.
pub fn support_candidate_count(rows: usize, cols: usize, max_support: usize) -> u128 {
    (1..=max_support.min(rows).min(cols))
        .map(|k| binomial(rows, k).saturating_mul(binomial(cols, k)))
        .fold(0u128, u128::saturating_add)
}

/// Enumerates equal-size support pairs by ascending size, then
/// lexicographically (row subset outer, column subset inner), and returns the
/// first pair whose restricted equalizers are nonnegative, share a constant
/// and form a saddle point of the whole game.
pub fn support_search(r: &RatioMatrix, max_support: usize) -> Result<SupportSearch> {
    crate::solver::check_finite(r)?;
    let candidates = support_candidate_count(r.rows(), r.cols(), max_support);
    if candidates > ENUMERATION_LIMIT {
        return Err(Error::EnumerationRefused {
            candidates,
            limit: ENUMERATION_LIMIT,
        });
    }
    let rt = r.transpose();
    let mut tried = 0;
    for k in 1..=max_support.min(r.rows()).min(r.cols()) {
        let mut found: Option<SupportSearch> = None;
        for rows in (0..r.rows()).combinations(k) {
            for cols in (0..r.cols()).combinations(k) {
                if found.as_ref().is_some_and(|s| s.alternates.len() >= MAX_ALTERNATES) {
                    break;
                }
                tried += 1;
                let Some((f, g)) = try_support(r, &rt, &rows, &cols)? else {
                    continue;
                };
                match found.as_mut() {
                    None => {
                        found = Some(SupportSearch {
                            f,
                            g,
                            alternates: Vec::new(),
                            candidates_tried: 0,
                        })
                    }
                    Some(s) => s.alternates.push((rows.clone(), cols.clone())),
                }
            }
        }
        if let Some(mut s) = found {
            s.candidates_tried = tried;
            return Ok(s);
        }
    }
    Err(Error::NoSupportFound { max_support })
}

fn try_support(
    r: &RatioMatrix,
    rt: &RatioMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Result<Option<(EqualizerSolution, EqualizerSolution)>> {
    let f = match equalize_rows(r, rows, cols) {
        Ok(f) => f,
        Err(Error::NoFeasibleEqualizer(_) | Error::SingularSystem { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let g = match equalize_rows(rt, cols, rows) {
        Ok(g) => g,
        Err(Error::NoFeasibleEqualizer(_) | Error::SingularSystem { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if (f.constant - g.constant).abs() > RESIDUAL_TOLERANCE {
        return Ok(None);
    }
    let cert = certify_saddle(r, &f.strategy, &g.strategy, DEFAULT_CERT_TOLERANCE)?;
    Ok(cert.passed.then_some((f, g)))
}
