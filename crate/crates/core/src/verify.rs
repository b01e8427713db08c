//! Optimality certificates for a (matrix, algorithm, input) triple.
//!
//! * [`yao_lower_bound`]: any input distribution `g` gives the lower bound
//!   `min_s U_g(s)` on the competitive ratio of every randomized algorithm.
//! * [`check_sufficient`]: `V_f` constant over all inputs and `U_g` constant
//!   over all algorithms. Both constants then equal `H(f, g)`, and `f` is optimal.
//! * [`check_necessary`]: at an optimum that meets the lower bound, `U_g` is
//!   constant on the support of `f` and `V_f` is constant on the support of `g`.
//! * [`certify_saddle`]: each side is a best response to the other, so the
//!   lower bound from `g` is tight and equals the ratio guaranteed by `f`.

use std::fmt::Write as _;

use crate::error::Result;
use crate::game::{MixedStrategy, RatioMatrix};
use crate::solver::{argmax_lowest, argmin_lowest, max_of, min_of};

/// Default tolerance for certificate checks.
pub const DEFAULT_CERT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    YaoBound,
    Sufficient,
    Necessary,
    Saddle,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::YaoBound => "yao_bound",
            CertificateKind::Sufficient => "sufficient",
            CertificateKind::Necessary => "necessary",
            CertificateKind::Saddle => "saddle",
        }
    }
}

/// A concrete reason a certificate did not pass.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `V_f` varies by `spread` over the checked inputs.
    AlgorithmNotEqualizing { spread: f64 },
    /// `U_g` varies by `spread` over the checked algorithms.
    InputNotEqualizing { spread: f64 },
    /// `f` is not a best response to `g`: `best_row` achieves `best_value < h`.
    AlgorithmNotBestResponse { best_row: String, best_value: f64, h: f64 },
    /// `g` is not a best response to `f`: `best_col` achieves `best_value > h`.
    InputNotBestResponse { best_col: String, best_value: f64, h: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AlgorithmNotEqualizing { spread } => {
                write!(f, "V_f is not constant (spread {spread:e})")
            }
            Violation::InputNotEqualizing { spread } => {
                write!(f, "U_g is not constant (spread {spread:e})")
            }
            Violation::AlgorithmNotBestResponse { best_row, best_value, h } => write!(
                f,
                "f is not a best response to g: {best_row} attains {best_value} < H = {h}"
            ),
            Violation::InputNotBestResponse { best_col, best_value, h } => write!(
                f,
                "g is not a best response to f: {best_col} attains {best_value} > H = {h}"
            ),
        }
    }
}

/// How far `min_s U_g` and `max_p V_f` sit from `H(f, g)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tightness {
    /// `H - min_s U_g(s)`, zero when `f` is a best response.
    pub lower_slack: f64,
    /// `max_p V_f(p) - H`, zero when `g` is a best response.
    pub upper_slack: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub passed: bool,
    /// The common constant (or bound) the certificate witnesses.
    pub witnessed_constant: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub f_support: Vec<String>,
    pub g_support: Vec<String>,
    pub violations: Vec<Violation>,
    /// Only reported by [`check_necessary`].
    pub tightness: Option<Tightness>,
    pub details: String,
}

fn spread(values: impl IntoIterator<Item = f64>) -> f64 {
    let (lo, hi) = values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo > hi {
        0.0
    } else {
        hi - lo
    }
}

/// `min_s U_g(s)`: a lower bound on the competitive ratio of every randomized algorithm.
pub fn yao_lower_bound(r: &RatioMatrix, g: &MixedStrategy) -> Result<f64> {
    Ok(min_of(&r.u_vector(g)?))
}

/// `max_p V_f(p) - min_s U_g(s)`; nonnegative up to rounding for any pair.
pub fn gap(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy) -> Result<f64> {
    Ok(max_of(&r.v_vector(f)?) - yao_lower_bound(r, g)?)
}

struct Functionals {
    u: Vec<f64>,
    v: Vec<f64>,
    h: f64,
    f_support: Vec<usize>,
    g_support: Vec<usize>,
}

fn functionals(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy) -> Result<Functionals> {
    let u = r.u_vector(g)?;
    let v = r.v_vector(f)?;
    let h = u.iter().zip(f.weights()).map(|(u, w)| u * w).sum();
    Ok(Functionals {
        u,
        v,
        h,
        f_support: f.support(),
        g_support: g.support(),
    })
}

fn certificate(
    kind: CertificateKind,
    tol: f64,
    constant: f64,
    max_deviation: f64,
    f: &MixedStrategy,
    g: &MixedStrategy,
    violations: Vec<Violation>,
    tightness: Option<Tightness>,
    mut details: String,
) -> Certificate {
    let passed = violations.is_empty() && max_deviation <= tol && constant.is_finite();
    for v in &violations {
        let _ = write!(details, "; {v}");
    }
    Certificate {
        kind,
        passed,
        witnessed_constant: constant,
        max_deviation,
        tolerance: tol,
        f_support: f.support_labels(),
        g_support: g.support_labels(),
        violations,
        tightness,
        details,
    }
}

/// Both functionals constant over the whole strategy and input sets.
///
/// The two constants are the `g`-weighted mean of `V_f` and the `f`-weighted
/// mean of `U_g`. Both are `H(f, g)`, and their difference is checked too.
pub fn check_sufficient(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy, tol: f64) -> Result<Certificate> {
    let fx = functionals(r, f, g)?;
    let c_alg: f64 = fx.v.iter().zip(g.weights()).map(|(v, w)| v * w).sum();
    let c_input = fx.h;
    let v_spread = spread(fx.v.iter().copied());
    let u_spread = spread(fx.u.iter().copied());
    let mut violations = Vec::new();
    if v_spread > tol {
        violations.push(Violation::AlgorithmNotEqualizing { spread: v_spread });
    }
    if u_spread > tol {
        violations.push(Violation::InputNotEqualizing { spread: u_spread });
    }
    let constants_gap = (c_alg - c_input).abs();
    let details = format!("C1 (U_g) = {c_input}, C2 (V_f) = {c_alg}, |C1 - C2| = {constants_gap:e}");
    Ok(certificate(
        CertificateKind::Sufficient,
        tol,
        0.5 * (c_alg + c_input),
        v_spread.max(u_spread).max(constants_gap),
        f,
        g,
        violations,
        None,
        details,
    ))
}

/// `U_g` constant on the support of `f` and `V_f` constant on the support of `g`.
///
/// Also reports how far `min_s U_g` and `max_p V_f` (over everything, not just
/// the supports) are from `H(f, g)`; pass/fail depends on the support checks only.
pub fn check_necessary(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy, tol: f64) -> Result<Certificate> {
    let fx = functionals(r, f, g)?;
    let u_spread = spread(fx.f_support.iter().map(|&s| fx.u[s]));
    let v_spread = spread(fx.g_support.iter().map(|&p| fx.v[p]));
    let mut violations = Vec::new();
    if u_spread > tol {
        violations.push(Violation::InputNotEqualizing { spread: u_spread });
    }
    if v_spread > tol {
        violations.push(Violation::AlgorithmNotEqualizing { spread: v_spread });
    }
    let lower_slack = fx.h - min_of(&fx.u);
    let upper_slack = max_of(&fx.v) - fx.h;
    let tightness = Tightness {
        lower_slack,
        upper_slack,
        within_tolerance: lower_slack.abs() <= tol && upper_slack.abs() <= tol,
    };
    let details = format!(
        "H = {}, H - min U_g = {lower_slack:e}, max V_f - H = {upper_slack:e}{}",
        fx.h,
        if tightness.within_tolerance { "" } else { " (pair is not a tight optimum)" }
    );
    Ok(certificate(
        CertificateKind::Necessary,
        tol,
        fx.h,
        u_spread.max(v_spread),
        f,
        g,
        violations,
        Some(tightness),
        details,
    ))
}

/// Mutual best responses: `H <= min_s U_g + tol` and `H >= max_p V_f - tol`.
pub fn certify_saddle(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy, tol: f64) -> Result<Certificate> {
    let fx = functionals(r, f, g)?;
    let best_row = argmin_lowest(&fx.u);
    let best_col = argmax_lowest(&fx.v);
    let lower_slack = fx.h - min_of(&fx.u);
    let upper_slack = max_of(&fx.v) - fx.h;
    let mut violations = Vec::new();
    if lower_slack > tol {
        violations.push(Violation::AlgorithmNotBestResponse {
            best_row: r.row_labels()[best_row].clone(),
            best_value: fx.u[best_row],
            h: fx.h,
        });
    }
    if upper_slack > tol {
        violations.push(Violation::InputNotBestResponse {
            best_col: r.col_labels()[best_col].clone(),
            best_value: fx.v[best_col],
            h: fx.h,
        });
    }
    let details = format!(
        "H = {}, lower bound min U_g = {}, guarantee max V_f = {}",
        fx.h, fx.u[best_row], fx.v[best_col]
    );
    Ok(certificate(
        CertificateKind::Saddle,
        tol,
        fx.h,
        lower_slack.max(upper_slack).max(0.0),
        f,
        g,
        violations,
        None,
        details,
    ))
}

/// The lower bound from `g` wrapped as a certificate; it always passes when finite.
pub fn yao_bound_certificate(r: &RatioMatrix, f: &MixedStrategy, g: &MixedStrategy, tol: f64) -> Result<Certificate> {
    let bound = yao_lower_bound(r, g)?;
    let guarantee = max_of(&r.v_vector(f)?);
    let details = format!("every randomized algorithm has ratio >= {bound}; f guarantees {guarantee}");
    Ok(certificate(CertificateKind::YaoBound, tol, bound, 0.0, f, g, Vec::new(), None, details))
}

pub fn certify(
    kind: CertificateKind,
    r: &RatioMatrix,
    f: &MixedStrategy,
    g: &MixedStrategy,
    tol: f64,
) -> Result<Certificate> {
    match kind {
        CertificateKind::YaoBound => yao_bound_certificate(r, f, g, tol),
        CertificateKind::Sufficient => check_sufficient(r, f, g, tol),
        CertificateKind::Necessary => check_necessary(r, f, g, tol),
        CertificateKind::Saddle => certify_saddle(r, f, g, tol),
    }
}
