//! Cost tables, ratio matrices and the expected-ratio functionals.
//!
//! A [`RatioMatrix`] holds `R(s, p) = cost_on(s, p) / cost_off(p)` for a finite
//! set of deterministic algorithms `s` (rows) and inputs `p` (columns). Mixed
//! strategies over rows are the randomized algorithm `f`, mixed strategies over
//! columns are the randomized input `g`. Three expectations are defined on top:
//!
//! * `U_g(s) = sum_p R(s, p) g(p)`: deterministic algorithm against random input,
//! * `V_f(p) = sum_s R(s, p) f(s)`: random algorithm against deterministic input,
//! * `H(f, g) = sum_s sum_p f(s) R(s, p) g(p)`.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Weights at or below this are treated as outside a strategy's support.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

/// Slack allowed below 1 for ratios derived from cost tables.
pub const RATIO_FLOOR_SLACK: f64 = 1e-12;

/// Allowed deviation of a strategy's total mass from 1.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Labels `prefix1, prefix2, ...`.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Online and offline cost tables over finite algorithm and input sets.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// `cost_on[s][p]`: cost paid by algorithm `s` on input `p`.
    pub cost_on: Vec<Vec<f64>>,
    /// `cost_off[p]`: optimal offline cost of input `p`.
    pub cost_off: Vec<f64>,
}

impl CostModel {
    /// Checks shapes and labels. Cost values are checked by [`ratio_from_costs`].
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cost_on: Vec<Vec<f64>>,
        cost_off: Vec<f64>,
    ) -> Result<Self> {
        let model = CostModel {
            row_labels,
            col_labels,
            cost_on,
            cost_off,
        };
        model.check_shape()?;
        Ok(model)
    }

    fn check_shape(&self) -> Result<()> {
        if self.row_labels.is_empty() || self.col_labels.is_empty() {
            return Err(Error::Empty("cost model"));
        }
        if self.cost_on.len() != self.row_labels.len() {
            return Err(Error::DimensionMismatch {
                what: "cost_on rows",
                expected: self.row_labels.len(),
                found: self.cost_on.len(),
            });
        }
        for row in &self.cost_on {
            if row.len() != self.col_labels.len() {
                return Err(Error::DimensionMismatch {
                    what: "cost_on columns",
                    expected: self.col_labels.len(),
                    found: row.len(),
                });
            }
        }
        if self.cost_off.len() != self.col_labels.len() {
            return Err(Error::DimensionMismatch {
                what: "cost_off length",
                expected: self.col_labels.len(),
                found: self.cost_off.len(),
            });
        }
        check_unique(&self.row_labels)?;
        check_unique(&self.col_labels)
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }
}

/// Divides every online cost by the offline cost of its column.
///
/// Unless `raw_game` is set, every resulting ratio must be at least
/// `1 - RATIO_FLOOR_SLACK`.
pub fn ratio_from_costs(model: &CostModel, raw_game: bool) -> Result<RatioMatrix> {
    model.check_shape()?;
    for (col, &off) in model.cost_off.iter().enumerate() {
        if !(off > 0.0) || !off.is_finite() {
            return Err(Error::ZeroOfflineCost { col, value: off });
        }
    }
    let mut data = Vec::with_capacity(model.rows() * model.cols());
    for (row, costs) in model.cost_on.iter().enumerate() {
        for (col, (&on, &off)) in costs.iter().zip(&model.cost_off).enumerate() {
            let value = on / off;
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { row, col });
            }
            if !raw_game && value < 1.0 - RATIO_FLOOR_SLACK {
                return Err(Error::SubUnitRatio { row, col, value });
            }
            data.push(value);
        }
    }
    Ok(RatioMatrix {
        row_labels: model.row_labels.clone(),
        col_labels: model.col_labels.clone(),
        rows: model.rows(),
        cols: model.cols(),
        data,
    })
}

/// The matrix `R(s, p)` with labelled rows (algorithms) and columns (inputs).
#[derive(Debug, Clone, PartialEq)]
pub struct RatioMatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RatioMatrix {
    /// Builds a matrix from row vectors. Every entry must be finite.
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self::new_unvalidated(row_labels, col_labels, rows)?;
        if let Some((row, col)) = m.first_non_finite() {
            return Err(Error::NonFiniteEntry { row, col });
        }
        Ok(m)
    }

    /// Like [`RatioMatrix::new`] with generated labels `s1..` and `p1..`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        Self::new(numbered_labels("s", m), numbered_labels("p", n), rows)
    }

    /// Shape and label checks only; entries may be NaN or infinite. Meant for
    /// feeding [`RatioMatrix::validate`]. Solvers reject such matrices.
    pub fn new_unvalidated(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(Error::Empty("ratio matrix"));
        }
        if rows.len() != row_labels.len() {
            return Err(Error::DimensionMismatch {
                what: "ratio rows",
                expected: row_labels.len(),
                found: rows.len(),
            });
        }
        let cols = col_labels.len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "ratio columns",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        check_unique(&row_labels)?;
        check_unique(&col_labels)?;
        Ok(RatioMatrix {
            rows: row_labels.len(),
            cols,
            row_labels,
            col_labels,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Entrywise map, labels preserved.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> RatioMatrix {
        RatioMatrix {
            data: self.data.iter().map(|&x| f(x)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> RatioMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        RatioMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Reorders rows and columns: new row `i` is old row `row_order[i]`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> RatioMatrix {
        assert_eq!(row_order.len(), self.rows);
        assert_eq!(col_order.len(), self.cols);
        let mut data = Vec::with_capacity(self.data.len());
        for &r in row_order {
            for &c in col_order {
                data.push(self.get(r, c));
            }
        }
        RatioMatrix {
            row_labels: row_order.iter().map(|&r| self.row_labels[r].clone()).collect(),
            col_labels: col_order.iter().map(|&c| self.col_labels[c].clone()).collect(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_finite())
            .map(|i| (i / self.cols, i % self.cols))
    }

    pub fn row_index(&self, label: &str) -> Result<usize> {
        self.row_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown strategy `{label}`")))
    }

    pub fn col_index(&self, label: &str) -> Result<usize> {
        self.col_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown input `{label}`")))
    }

    pub(crate) fn check_row_strategy(&self, f: &MixedStrategy) -> Result<()> {
        if f.labels() != self.row_labels.as_slice() {
            return Err(Error::LabelMismatch(
                "algorithm distribution labels differ from the matrix rows".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_col_strategy(&self, g: &MixedStrategy) -> Result<()> {
        if g.labels() != self.col_labels.as_slice() {
            return Err(Error::LabelMismatch(
                "input distribution labels differ from the matrix columns".into(),
            ));
        }
        Ok(())
    }

    /// `U_g(s)` for every row.
    pub fn u_vector(&self, g: &MixedStrategy) -> Result<Vec<f64>> {
        self.check_col_strategy(g)?;
        Ok((0..self.rows)
            .map(|s| self.row(s).iter().zip(g.weights()).map(|(r, w)| r * w).sum())
            .collect())
    }

    /// `V_f(p)` for every column.
    pub fn v_vector(&self, f: &MixedStrategy) -> Result<Vec<f64>> {
        self.check_row_strategy(f)?;
        let mut v = vec![0.0; self.cols];
        for (s, &w) in f.weights().iter().enumerate() {
            for (acc, r) in v.iter_mut().zip(self.row(s)) {
                *acc += r * w;
            }
        }
        Ok(v)
    }

    /// Expected ratio of deterministic algorithm `s` against random input `g`.
    pub fn expected_ratio_u(&self, g: &MixedStrategy, s: &str) -> Result<f64> {
        let row = self.row_index(s)?;
        Ok(self.u_vector(g)?[row])
    }

    /// Expected ratio of random algorithm `f` against deterministic input `p`.
    pub fn expected_ratio_v(&self, f: &MixedStrategy, p: &str) -> Result<f64> {
        let col = self.col_index(p)?;
        Ok(self.v_vector(f)?[col])
    }

    /// `H(f, g)`, summing over columns first: `sum_s f(s) U_g(s)`.
    pub fn bilinear_value(&self, f: &MixedStrategy, g: &MixedStrategy) -> Result<f64> {
        self.check_row_strategy(f)?;
        let u = self.u_vector(g)?;
        Ok(u.iter().zip(f.weights()).map(|(u, w)| u * w).sum())
    }

    /// `H(f, g)`, summing over rows first: `sum_p g(p) V_f(p)`.
    pub fn bilinear_value_col_first(&self, f: &MixedStrategy, g: &MixedStrategy) -> Result<f64> {
        self.check_col_strategy(g)?;
        let v = self.v_vector(f)?;
        Ok(v.iter().zip(g.weights()).map(|(v, w)| v * w).sum())
    }

    /// Worst-case ratio of deterministic algorithm `s`.
    pub fn deterministic_cr(&self, s: &str) -> Result<f64> {
        let row = self.row_index(s)?;
        Ok(self.row(row).iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn validate(&self) -> Diagnostics {
        let mut non_finite = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_finite() {
                    non_finite.push((r, c));
                }
            }
        }
        let finite = self.data.iter().copied().filter(|x| x.is_finite());
        let min = finite.clone().fold(f64::INFINITY, f64::min);
        let max = finite.fold(f64::NEG_INFINITY, f64::max);

        // Rows are minimized: row a dominates b when it is never worse.
        let mut dominated_rows = Vec::new();
        for b in 0..self.rows {
            for a in 0..self.rows {
                if a == b {
                    continue;
                }
                let weakly = (0..self.cols).all(|c| self.get(a, c) <= self.get(b, c));
                let identical = (0..self.cols).all(|c| self.get(a, c) == self.get(b, c));
                if weakly && (!identical || a < b) {
                    dominated_rows.push(Dominance { dominant: a, dominated: b });
                }
            }
        }
        // Columns are maximized by the adversary.
        let mut dominated_cols = Vec::new();
        for b in 0..self.cols {
            for a in 0..self.cols {
                if a == b {
                    continue;
                }
                let weakly = (0..self.rows).all(|r| self.get(r, a) >= self.get(r, b));
                let identical = (0..self.rows).all(|r| self.get(r, a) == self.get(r, b));
                if weakly && (!identical || a < b) {
                    dominated_cols.push(Dominance { dominant: a, dominated: b });
                }
            }
        }
        Diagnostics {
            rows: self.rows,
            cols: self.cols,
            min_entry: min,
            max_entry: max,
            ratio_at_least_one: non_finite.is_empty() && min >= 1.0 - RATIO_FLOOR_SLACK,
            non_finite,
            dominated_rows,
            dominated_cols,
        }
    }
}

/// `dominant` is weakly better than `dominated` against every opponent choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    pub dominant: usize,
    pub dominated: usize,
}

/// Report produced by [`RatioMatrix::validate`]. Nothing here alters the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub rows: usize,
    pub cols: usize,
    /// Smallest finite entry.
    pub min_entry: f64,
    /// Largest finite entry.
    pub max_entry: f64,
    pub ratio_at_least_one: bool,
    pub non_finite: Vec<(usize, usize)>,
    pub dominated_rows: Vec<Dominance>,
    pub dominated_cols: Vec<Dominance>,
}

impl Diagnostics {
    pub fn has_non_finite(&self) -> bool {
        !self.non_finite.is_empty()
    }
}

/// A probability distribution over a finite, labelled set.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl MixedStrategy {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                what: "strategy weights",
                expected: labels.len(),
                found: weights.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::InvalidStrategy("empty label set".into()));
        }
        check_unique(&labels)?;
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidStrategy(format!(
                "weight {w} for `{}` is not a nonnegative number",
                labels[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidStrategy(format!("weights sum to {total}, not 1")));
        }
        if weights.iter().all(|&w| w <= SUPPORT_THRESHOLD) {
            return Err(Error::InvalidStrategy("empty support".into()));
        }
        Ok(MixedStrategy { labels, weights })
    }

    /// Clamps negatives to zero and rescales to unit mass.
    pub fn normalized(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        let clamped: Vec<f64> = weights.iter().map(|&w| w.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidStrategy("no positive mass to normalize".into()));
        }
        Self::new(labels, clamped.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        Self::new(labels, vec![1.0 / n as f64; n])
    }

    pub fn point_mass(labels: Vec<String>, at: &str) -> Result<Self> {
        let idx = labels
            .iter()
            .position(|l| l == at)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown label `{at}`")))?;
        Self::point_mass_at(labels, idx)
    }

    pub fn point_mass_at(labels: Vec<String>, idx: usize) -> Result<Self> {
        let mut weights = vec![0.0; labels.len()];
        *weights
            .get_mut(idx)
            .ok_or_else(|| Error::InvalidStrategy(format!("index {idx} out of range")))? = 1.0;
        Self::new(labels, weights)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.weights[i])
    }

    /// Indices with weight above [`SUPPORT_THRESHOLD`].
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > SUPPORT_THRESHOLD)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn support_labels(&self) -> Vec<String> {
        self.support().into_iter().map(|i| self.labels[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RatioMatrix {
        RatioMatrix::from_rows(vec![vec![1.0, 3.0], vec![2.0, 1.0]]).unwrap()
    }

    fn dist(labels: &[String], w: &[f64]) -> MixedStrategy {
        MixedStrategy::new(labels.to_vec(), w.to_vec()).unwrap()
    }

    fn labels(p: &str, n: usize) -> Vec<String> {
        numbered_labels(p, n)
    }

    #[test]
    fn ski_rental_b2_ratio() {
        let model = CostModel::new(
            labels("s", 2),
            labels("p", 2),
            vec![vec![2.0, 2.0], vec![1.0, 3.0]],
            vec![1.0, 2.0],
        )
        .unwrap();
        let r = ratio_from_costs(&model, false).unwrap();
        assert_eq!(r.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 1.5]]);
        assert_eq!(r.row_labels(), model.row_labels.as_slice());
    }

    #[test]
    fn identity_costs_give_all_ones() {
        let off = vec![3.0, 0.5, 7.0];
        let model = CostModel::new(labels("s", 2), labels("p", 3), vec![off.clone(), off.clone()], off).unwrap();
        let r = ratio_from_costs(&model, false).unwrap();
        assert!(r.to_rows().iter().flatten().all(|&x| x == 1.0));
    }

    #[test]
    fn zero_offline_cost_rejected() {
        let model = CostModel::new(labels("s", 1), labels("p", 2), vec![vec![1.0, 1.0]], vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            ratio_from_costs(&model, false),
            Err(Error::ZeroOfflineCost { col: 1, .. })
        ));
    }

    #[test]
    fn sub_unit_ratio_needs_raw_flag() {
        let model = CostModel::new(labels("s", 1), labels("p", 1), vec![vec![0.5]], vec![1.0]).unwrap();
        assert!(matches!(ratio_from_costs(&model, false), Err(Error::SubUnitRatio { .. })));
        assert_eq!(ratio_from_costs(&model, true).unwrap().get(0, 0), 0.5);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            CostModel::new(labels("s", 2), labels("p", 2), vec![vec![1.0, 1.0]], vec![1.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            RatioMatrix::from_rows(vec![vec![1.0, 2.0], vec![1.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            RatioMatrix::new(vec!["a".into(), "a".into()], labels("p", 1), vec![vec![1.0], vec![1.0]]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            RatioMatrix::from_rows(vec![vec![f64::NAN]]),
            Err(Error::NonFiniteEntry { row: 0, col: 0 })
        ));
    }

    #[test]
    fn u_examples() {
        let r = small();
        let cols = r.col_labels().to_vec();
        let uniform = MixedStrategy::uniform(cols.clone()).unwrap();
        assert_eq!(r.expected_ratio_u(&uniform, "s1").unwrap(), 2.0);
        let point = MixedStrategy::point_mass(cols.clone(), "p2").unwrap();
        assert_eq!(r.expected_ratio_u(&point, "s1").unwrap(), 3.0);
        let g = dist(&cols, &[2.0 / 3.0, 1.0 / 3.0]);
        assert!((r.expected_ratio_u(&g, "s2").unwrap() - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn v_examples() {
        let r = small();
        let rows = r.row_labels().to_vec();
        let f = dist(&rows, &[1.0 / 3.0, 2.0 / 3.0]);
        assert!((r.expected_ratio_v(&f, "p1").unwrap() - 5.0 / 3.0).abs() < 1e-15);
        let point = MixedStrategy::point_mass(rows.clone(), "s2").unwrap();
        assert_eq!(r.expected_ratio_v(&point, "p2").unwrap(), 1.0);
        let uniform = MixedStrategy::uniform(rows).unwrap();
        assert_eq!(r.expected_ratio_v(&uniform, "p2").unwrap(), 2.0);
    }

    #[test]
    fn h_examples() {
        let r = small();
        let (rows, cols) = (r.row_labels().to_vec(), r.col_labels().to_vec());
        let f = MixedStrategy::point_mass(rows.clone(), "s1").unwrap();
        let g = MixedStrategy::point_mass(cols.clone(), "p2").unwrap();
        assert_eq!(r.bilinear_value(&f, &g).unwrap(), 3.0);

        let f = dist(&rows, &[1.0 / 3.0, 2.0 / 3.0]);
        let g = dist(&cols, &[2.0 / 3.0, 1.0 / 3.0]);
        assert!((r.bilinear_value(&f, &g).unwrap() - 5.0 / 3.0).abs() < 1e-15);

        let f = MixedStrategy::uniform(rows).unwrap();
        let g = MixedStrategy::uniform(cols).unwrap();
        assert_eq!(r.bilinear_value(&f, &g).unwrap(), 1.75);
        assert_eq!(r.bilinear_value_col_first(&f, &g).unwrap(), 1.75);
    }

    #[test]
    fn deterministic_cr_is_row_max() {
        let r = small();
        assert_eq!(r.deterministic_cr("s1").unwrap(), 3.0);
        assert_eq!(r.deterministic_cr("s2").unwrap(), 2.0);
        let ones = RatioMatrix::from_rows(vec![vec![1.0; 3]; 2]).unwrap();
        assert_eq!(ones.deterministic_cr("s2").unwrap(), 1.0);
        assert!(matches!(r.deterministic_cr("s9"), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn label_mismatch_on_wrong_side() {
        let r = small();
        let f = MixedStrategy::uniform(r.row_labels().to_vec()).unwrap();
        assert!(matches!(r.u_vector(&f), Err(Error::LabelMismatch(_))));
        let g = MixedStrategy::uniform(r.col_labels().to_vec()).unwrap();
        assert!(matches!(r.v_vector(&g), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn validate_reports_dominance() {
        let r = RatioMatrix::from_rows(vec![vec![1.0, 2.0], vec![1.0, 3.0]]).unwrap();
        let d = r.validate();
        assert_eq!(d.dominated_rows, vec![Dominance { dominant: 0, dominated: 1 }]);
        assert!(d.ratio_at_least_one);
        assert_eq!((d.min_entry, d.max_entry), (1.0, 3.0));
    }

    #[test]
    fn validate_flags_nan() {
        let r = RatioMatrix::new_unvalidated(labels("s", 1), labels("p", 2), vec![vec![1.0, f64::NAN]]).unwrap();
        let d = r.validate();
        assert!(d.has_non_finite());
        assert_eq!(d.non_finite, vec![(0, 1)]);
        assert!(!d.ratio_at_least_one);
    }

    #[test]
    fn strategy_invariants() {
        let l = labels("s", 2);
        assert!(MixedStrategy::new(l.clone(), vec![0.5, 0.6]).is_err());
        assert!(MixedStrategy::new(l.clone(), vec![-0.1, 1.1]).is_err());
        assert!(MixedStrategy::new(l.clone(), vec![1.0]).is_err());
        let s = MixedStrategy::new(l.clone(), vec![1.0 - 1e-12, 1e-12]).unwrap();
        assert_eq!(s.support(), vec![0]);
        let n = MixedStrategy::normalized(l, vec![2.0, -1e-15]).unwrap();
        assert_eq!(n.weights(), &[1.0, 0.0]);
    }
}
