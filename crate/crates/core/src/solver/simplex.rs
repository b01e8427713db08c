//! Dense tableau simplex for `max 1'x  s.t.  A x <= 1, x >= 0` with `A > 0`.
//!
//! This is the normalized matrix-game program: with `A` the transposed payoff
//! matrix shifted to be strictly positive, an optimal `x` rescaled to unit mass
//! is the minimizing player's strategy, and the optimal duals rescaled the same
//! way are the maximizing player's strategy. The origin is feasible, so no
//! phase one is needed, and `A > 0` keeps the program bounded.
//!
//! Entering and leaving variables follow Bland's rule (smallest index), which
//! rules out cycling and makes the reached vertex a function of the input only.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub primal: Vec<f64>,
    pub dual: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
    /// Some basic variable sits at zero at the optimum.
    pub primal_degenerate: bool,
    /// Some nonbasic variable has a zero reduced cost, so the optimum may not be unique.
    pub dual_degenerate: bool,
}

/// `a` is row-major with `constraints` rows and `vars` columns; all entries positive.
pub(crate) fn solve_packing_lp(
    a: &[f64],
    constraints: usize,
    vars: usize,
    tol: f64,
    max_pivots: usize,
) -> Result<LpSolution> {
    debug_assert_eq!(a.len(), constraints * vars);
    let width = vars + constraints + 1; // structural, slack, rhs
    let rhs = width - 1;
    let mut tab = vec![0.0; constraints * width];
    for i in 0..constraints {
        let row = &mut tab[i * width..(i + 1) * width];
        row[..vars].copy_from_slice(&a[i * vars..(i + 1) * vars]);
        row[vars + i] = 1.0;
        row[rhs] = 1.0;
    }
    // Reduced costs c_j - z_j; last slot holds the negated objective.
    let mut obj = vec![0.0; width];
    obj[..vars].iter_mut().for_each(|c| *c = 1.0);
    let mut basis: Vec<usize> = (vars..vars + constraints).collect();

    let mut pivots = 0;
    while let Some(enter) = (0..width - 1).find(|&j| obj[j] > tol) {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..constraints {
            let coef = tab[i * width + enter];
            if coef <= tol {
                continue;
            }
            let ratio = tab[i * width + rhs] / coef;
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => {
                    let slack = 1e-12 * best_ratio.abs().max(1.0);
                    if ratio < best_ratio - slack
                        || (ratio <= best_ratio + slack && basis[i] < basis[best])
                    {
                        Some((i, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        // Unreachable for positive constraint matrices.
        let (pr, _) = leave.ok_or_else(|| Error::InvalidConfig("linear program is unbounded".into()))?;
        if pivots == max_pivots {
            return Err(Error::PivotLimitExceeded { limit: max_pivots });
        }
        pivot(&mut tab, &mut obj, width, constraints, pr, enter);
        basis[pr] = enter;
        pivots += 1;
    }

    let mut primal = vec![0.0; vars];
    let mut primal_degenerate = false;
    for (i, &b) in basis.iter().enumerate() {
        let value = tab[i * width + rhs];
        if value.abs() <= tol {
            primal_degenerate = true;
        }
        if b < vars {
            primal[b] = value;
        }
    }
    let dual: Vec<f64> = (0..constraints).map(|i| -obj[vars + i]).collect();
    let dual_degenerate = (0..width - 1)
        .filter(|j| !basis.contains(j))
        .any(|j| obj[j].abs() <= tol);
    Ok(LpSolution {
        primal,
        dual,
        objective: -obj[rhs],
        pivots,
        primal_degenerate,
        dual_degenerate,
    })
}

fn pivot(tab: &mut [f64], obj: &mut [f64], width: usize, constraints: usize, pr: usize, pc: usize) {
    let p = tab[pr * width + pc];
    for v in &mut tab[pr * width..(pr + 1) * width] {
        *v /= p;
    }
    tab[pr * width + pc] = 1.0;
    let pivot_row: Vec<f64> = tab[pr * width..(pr + 1) * width].to_vec();
    for i in 0..constraints {
        if i == pr {
            continue;
        }
        let factor = tab[i * width + pc];
        if factor == 0.0 {
            continue;
        }
        let row = &mut tab[i * width..(i + 1) * width];
        for (v, &pv) in row.iter_mut().zip(&pivot_row) {
            *v -= factor * pv;
        }
        row[pc] = 0.0;
    }
    let factor = obj[pc];
    for (v, &pv) in obj.iter_mut().zip(&pivot_row) {
        *v -= factor * pv;
    }
    obj[pc] = 0.0;
}
