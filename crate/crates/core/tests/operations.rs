//! Worked instances checked against hand results and an independent
//! vertex-enumeration oracle.

use yao_core::equalizer::{full_support_equalizer_f, full_support_equalizer_g, support_search};
use yao_core::problems::{ski_rental, SkiRentalSpec};
use yao_core::verify::{check_sufficient, Violation};
use yao_core::{fictitious_play, ratio_from_costs, solve, MixedStrategy, RatioMatrix, SolverConfig};

/// Dense Gaussian elimination with partial pivoting; `None` when singular.
fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// `min t  s.t.  sum_s f_s R(s, p) <= t,  sum f = 1,  f >= 0`, by visiting every
/// basic solution: choose `m` tight constraints among the `n` column
/// constraints and `m` sign constraints, solve, keep feasible points.
fn vertex_enumeration_value(r: &RatioMatrix) -> (f64, Vec<f64>) {
    let (m, n) = (r.rows(), r.cols());
    let mut best = (f64::INFINITY, vec![]);
    for tight in combinations(n + m, m) {
        // unknowns: f_1..f_m, t
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &c in &tight {
            let mut row = vec![0.0; m + 1];
            if c < n {
                for s in 0..m {
                    row[s] = r.get(s, c);
                }
                row[m] = -1.0;
            } else {
                row[c - n] = 1.0;
            }
            a.push(row);
            b.push(0.0);
        }
        let mut norm = vec![1.0; m + 1];
        norm[m] = 0.0;
        a.push(norm);
        b.push(1.0);
        let Some(x) = gauss_solve(a, b) else { continue };
        let (f, t) = (&x[..m], x[m]);
        let feasible = f.iter().all(|&w| w >= -1e-12)
            && (0..n).all(|p| (0..m).map(|s| f[s] * r.get(s, p)).sum::<f64>() <= t + 1e-12);
        if feasible && t < best.0 {
            best = (t, f.to_vec());
        }
    }
    best
}

fn ski(b: u64, n: u64) -> RatioMatrix {
    ratio_from_costs(&ski_rental(&SkiRentalSpec::new(b, n).unwrap()).unwrap(), false).unwrap()
}

#[test]
fn oracle_agrees_on_hand_examples() {
    let (v, f) = vertex_enumeration_value(&RatioMatrix::from_rows(vec![vec![1.0, 3.0], vec![2.0, 1.0]]).unwrap());
    assert!((v - 5.0 / 3.0).abs() < 1e-12);
    assert!((f[0] - 1.0 / 3.0).abs() < 1e-12);
    let (v, _) = vertex_enumeration_value(&RatioMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap());
    assert!((v - 2.0).abs() < 1e-12);
}

#[test]
fn ski_rental_b4_n8_against_oracles() {
    let r = ski(4, 8);
    let (oracle_value, oracle_f) = vertex_enumeration_value(&r);
    // frozen from the oracle: 256/175 with f = (27, 36, 48, 64)/175
    assert!((oracle_value - 256.0 / 175.0).abs() < 1e-12);
    let expected_f = [27.0 / 175.0, 36.0 / 175.0, 48.0 / 175.0, 64.0 / 175.0];
    for (a, b) in oracle_f.iter().zip(expected_f) {
        assert!((a - b).abs() < 1e-12);
    }

    let res = solve(&r, &SolverConfig::default()).unwrap();
    assert!((res.value - 256.0 / 175.0).abs() < 1e-9);
    for (a, b) in res.f_star.weights().iter().zip(expected_f) {
        assert!((a - b).abs() < 1e-7);
    }

    let fp = fictitious_play(&r, &SolverConfig::default()).unwrap();
    assert!((fp.value - 256.0 / 175.0).abs() < 5e-3);

    let eq = full_support_equalizer_f(&r).unwrap();
    assert!((eq.constant - 256.0 / 175.0).abs() < 1e-8);
    for (a, b) in eq.strategy.weights().iter().zip(expected_f) {
        assert!((a - b).abs() < 1e-8);
    }
    // all eight inputs are equalized
    let v = r.v_vector(&eq.strategy).unwrap();
    assert!(v.iter().all(|x| (x - 256.0 / 175.0).abs() < 1e-12));
}

#[test]
fn ski_rental_oracle_across_sizes() {
    for (b, n) in [(2, 2), (3, 4), (3, 6), (5, 5), (5, 7)] {
        let r = ski(b, n);
        let (oracle, _) = vertex_enumeration_value(&r);
        let res = solve(&r, &SolverConfig::default()).unwrap();
        assert!((oracle - res.value).abs() < 1e-10, "B={b} N={n}");
    }
}

#[test]
fn random_matrices_match_oracle() {
    for seed in 0..40 {
        let m = 1 + seed as usize % 4;
        let n = 1 + (seed as usize / 4) % 5;
        let r = yao_core::problems::random_instance(m, n, 1.0, 10.0, seed).unwrap();
        let (oracle, _) = vertex_enumeration_value(&r);
        let res = solve(&r, &SolverConfig::default()).unwrap();
        assert!((oracle - res.value).abs() < 1e-10, "seed {seed}: {oracle} vs {}", res.value);
    }
}

#[test]
fn ski_rental_b2_n2_ratios() {
    assert_eq!(ski(2, 2).to_rows(), vec![vec![2.0, 1.0], vec![1.0, 1.5]]);
}

#[test]
fn sufficient_condition_needs_both_sides_on_ski_rental() {
    let r = ski(4, 8);
    let f = MixedStrategy::new(
        r.row_labels().to_vec(),
        vec![27.0 / 175.0, 36.0 / 175.0, 48.0 / 175.0, 64.0 / 175.0],
    )
    .unwrap();
    let g = MixedStrategy::uniform(r.col_labels().to_vec()).unwrap();
    let cert = check_sufficient(&r, &f, &g, 1e-6).unwrap();
    assert!(!cert.passed);
    // V_f is constant, U_g is not
    assert!(matches!(cert.violations[..], [Violation::InputNotEqualizing { .. }]));
}

#[test]
fn ski_rental_support_search_matches_lp() {
    let r = ski(4, 8);
    let found = support_search(&r, 4).unwrap();
    assert!((found.f.constant - 256.0 / 175.0).abs() < 1e-8);
    assert_eq!(found.f.support, vec![0, 1, 2, 3]);
    assert_eq!(found.g.support, vec![0, 1, 2, 3]);
}

#[test]
fn both_equalizers_on_two_by_two_certify_the_value() {
    let r = RatioMatrix::from_rows(vec![vec![1.0, 3.0], vec![2.0, 1.0]]).unwrap();
    let f = full_support_equalizer_f(&r).unwrap();
    let g = full_support_equalizer_g(&r).unwrap();
    let cert = check_sufficient(&r, &f.strategy, &g.strategy, 1e-6).unwrap();
    assert!(cert.passed);
    assert!((cert.witnessed_constant - 5.0 / 3.0).abs() < 1e-9);
    assert!((f.constant - g.constant).abs() < 1e-8);
}
