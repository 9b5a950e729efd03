//! Transition matrices and the chain-level analyses built on them: powers,
//! stationary distributions, recurrent classes and distances between chains.

use ndarray::{Array1, Array2, Axis};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::network::{Prn, PROB_TOLERANCE};

/// Slack added to every `<= epsilon` comparison so that bounds attained
/// exactly in decimal arithmetic are not lost to binary rounding.
pub const EPSILON_SLACK: f64 = 1e-12;

/// Entries at or below this magnitude count as zero when comparing supports.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Row sums of a difference of two stochastic matrices must vanish to this.
pub const ROW_SUM_TOLERANCE: f64 = 1e-8;

/// A row-stochastic matrix over an ordered state set.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    order: Vec<String>,
    entries: Array2<f64>,
}

impl StochasticMatrix {
    /// Validates squareness, entry range and row sums (tolerance 1e-9).
    pub fn new(order: Vec<String>, entries: Array2<f64>) -> Result<Self> {
        let n = order.len();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: entries.nrows().max(entries.ncols()),
            });
        }
        for ((u, v), &x) in entries.indexed_iter() {
            if !x.is_finite() || !(-PROB_TOLERANCE..=1.0 + PROB_TOLERANCE).contains(&x) {
                return Err(Error::invalid(format!(
                    "entry ({}, {}) = {x} is not a probability",
                    order[u], order[v]
                )));
            }
        }
        for (u, row) in entries.axis_iter(Axis(0)).enumerate() {
            let total = row.sum();
            if (total - 1.0).abs() > PROB_TOLERANCE {
                return Err(Error::invalid(format!("row {} sums to {total}", order[u])));
            }
        }
        Ok(StochasticMatrix { order, entries })
    }

    pub fn from_rows(order: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let n = order.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let entries = Array2::from_shape_vec((n, n), flat).expect("shape checked");
        Self::new(order, entries)
    }

    /// Identity matrix on the given states.
    pub fn identity(order: Vec<String>) -> Self {
        let n = order.len();
        StochasticMatrix {
            order,
            entries: Array2::eye(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entries[[u, v]]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.outer_iter().map(|r| r.to_vec()).collect()
    }

    /// Matrix with rows and columns reordered to `ids`, which must be a
    /// permutation of the current order.
    pub fn reorder<S: AsRef<str>>(&self, ids: &[S]) -> Result<Self> {
        if ids.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: ids.len(),
            });
        }
        let mut perm = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            let i = self
                .order
                .iter()
                .position(|s| s == id)
                .ok_or_else(|| Error::invalid(format!("unknown state `{id}`")))?;
            if perm.contains(&i) {
                return Err(Error::invalid(format!("state `{id}` repeated")));
            }
            perm.push(i);
        }
        Ok(self.select(&perm))
    }

    /// Submatrix on `indices` (rows and columns), in the given order.
    pub(crate) fn select(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let entries =
            Array2::from_shape_fn((n, n), |(i, j)| self.entries[[indices[i], indices[j]]]);
        StochasticMatrix {
            order: indices.iter().map(|&i| self.order[i].clone()).collect(),
            entries,
        }
    }

    /// Entries `self[map[u], map[v]]` indexed by the source states `source_order`.
    /// `map` must be a bijection onto this matrix's states.
    pub fn pull_back(&self, map: &[usize], source_order: Vec<String>) -> Result<Self> {
        if map.len() != self.dim() || source_order.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: map.len(),
            });
        }
        let mut seen = vec![false; self.dim()];
        for &m in map {
            if m >= self.dim() || std::mem::replace(&mut seen[m], true) {
                return Err(Error::invalid("pull-back map is not a bijection"));
            }
        }
        let mut m = self.select(map);
        m.order = source_order;
        Ok(m)
    }

    fn product(&self, other: &StochasticMatrix) -> StochasticMatrix {
        StochasticMatrix {
            order: self.order.clone(),
            entries: self.entries.dot(&other.entries),
        }
    }
}

/// A probability vector over ordered states.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub order: Vec<String>,
    pub weights: Vec<f64>,
}

impl Distribution {
    pub fn max_distance(&self, other: &Distribution) -> Result<f64> {
        if self.weights.len() != other.weights.len() {
            return Err(Error::DimensionMismatch {
                left: self.weights.len(),
                right: other.weights.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// `p(u, v)` = total probability of the functions sending `u` to `v`.
pub fn transition_matrix(prn: &Prn) -> StochasticMatrix {
    let n = prn.len();
    let mut entries = Array2::zeros((n, n));
    for (f, &p) in prn.functions().iter().zip(prn.probs()) {
        for u in 0..n {
            entries[[u, f.apply(u)]] += p;
        }
    }
    StochasticMatrix {
        order: prn.states().to_vec(),
        entries,
    }
}

/// `T^n` by binary exponentiation; `n >= 1`.
pub fn matrix_power(t: &StochasticMatrix, n: u32) -> Result<StochasticMatrix> {
    if n == 0 {
        return Err(Error::invalid("matrix power exponent must be at least 1"));
    }
    let mut result: Option<StochasticMatrix> = None;
    let mut base = t.clone();
    let mut e = n;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => r.product(&base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.product(&base);
    }
    Ok(result.expect("n >= 1"))
}

/// Largest absolute entry of `T1 - T2`.
pub fn matrix_distance(t1: &StochasticMatrix, t2: &StochasticMatrix) -> Result<f64> {
    check_same_dim(t1, t2)?;
    Ok(max_abs_diff(&t1.entries, &t2.entries))
}

fn check_same_dim(t1: &StochasticMatrix, t2: &StochasticMatrix) -> Result<()> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch {
            left: t1.dim(),
            right: t2.dim(),
        });
    }
    Ok(())
}

fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Closed strongly connected components of the support digraph, each sorted,
/// ordered by smallest member.
pub fn recurrent_classes(t: &StochasticMatrix) -> Vec<Vec<usize>> {
    let n = t.dim();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for ((u, v), &x) in t.entries.indexed_iter() {
        if x > 0.0 {
            graph.add_edge(nodes[u], nodes[v], ());
        }
    }
    let mut component = vec![0usize; n];
    let sccs = tarjan_scc(&graph);
    for (c, scc) in sccs.iter().enumerate() {
        for node in scc {
            component[node.index()] = c;
        }
    }
    let mut classes: Vec<Vec<usize>> = sccs
        .iter()
        .enumerate()
        .filter(|(c, scc)| {
            scc.iter().all(|node| {
                let u = node.index();
                (0..n).all(|v| t.entries[[u, v]] <= 0.0 || component[v] == *c)
            })
        })
        .map(|(_, scc)| {
            let mut members: Vec<usize> = scc.iter().map(|n| n.index()).collect();
            members.sort_unstable();
            members
        })
        .collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

pub const DEFAULT_STEADY_TOL: f64 = 1e-12;
pub const DEFAULT_STEADY_MAX_ITER: usize = 1_000_000;

/// The unique stationary distribution of a chain with one recurrent class.
///
/// Transient states carry no stationary mass, so the iteration runs on the
/// closed class alone. It iterates the lazy chain `(I + T) / 2` from the
/// uniform distribution; the lazy chain has the same stationary distribution
/// and is aperiodic, so periodic classes converge too. Stops once successive
/// iterates differ by less than `tol` in max norm.
pub fn steady_state(t: &StochasticMatrix, tol: f64, max_iter: usize) -> Result<Distribution> {
    let classes = recurrent_classes(t);
    if classes.len() != 1 {
        return Err(Error::MultipleRecurrentClasses(
            classes
                .iter()
                .map(|c| c.iter().map(|&i| t.order[i].clone()).collect())
                .collect(),
        ));
    }
    let class = &classes[0];
    let sub = t.entries.select(Axis(0), class).select(Axis(1), class);
    let k = class.len();
    let mut x = Array1::from_elem(k, 1.0 / k as f64);
    for _ in 0..max_iter {
        let step = x.dot(&sub);
        let next = (&x + &step) * 0.5;
        let delta = next
            .iter()
            .zip(x.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if delta < tol {
            let total = x.sum();
            let mut weights = vec![0.0; t.dim()];
            for (&i, w) in class.iter().zip(x.iter()) {
                weights[i] = (w / total).max(0.0);
            }
            return Ok(Distribution {
                order: t.order.clone(),
                weights,
            });
        }
    }
    Err(Error::NoConvergence(max_iter))
}

/// Unique stationary distribution if the chain has exactly one recurrent class.
fn unique_stationary(t: &StochasticMatrix) -> Option<Distribution> {
    steady_state(t, DEFAULT_STEADY_TOL, DEFAULT_STEADY_MAX_ITER).ok()
}

/// Differences between the `n`-th powers of two chains.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerDiff {
    pub n: u32,
    /// Largest `|t_ij|` of `T1^n - T2^n`.
    pub max_abs: f64,
    /// Largest `|sum_j t_ij|` over rows.
    pub max_row_sum: f64,
    /// Largest `|sum_i t_ij|` over columns; informational.
    pub max_col_sum: f64,
    /// Whether `T1^n` and `T2^n` have the same zero pattern.
    pub support_equal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainDistanceReport {
    pub epsilon: f64,
    /// Equal to `per_power[0].max_abs`.
    pub epsilon_observed: f64,
    pub per_power: Vec<PowerDiff>,
    /// Every row of every difference sums to zero within 1e-8.
    pub row_sum_zero: bool,
    /// `|pi1 - pi2|` when both chains have a unique stationary distribution.
    pub stationary_distance: Option<f64>,
    pub verdict: bool,
}

impl ChainDistanceReport {
    pub fn support_equal_per_power(&self) -> Vec<bool> {
        self.per_power.iter().map(|p| p.support_equal).collect()
    }

    pub fn max_over_powers(&self) -> f64 {
        self.per_power.iter().map(|p| p.max_abs).fold(0.0, f64::max)
    }
}

fn power_diffs(t1: &StochasticMatrix, t2: &StochasticMatrix, count: u32) -> Vec<PowerDiff> {
    let mut p1 = t1.clone();
    let mut p2 = t2.clone();
    let mut out = Vec::with_capacity(count as usize);
    for n in 1..=count {
        if n > 1 {
            p1 = p1.product(t1);
            p2 = p2.product(t2);
        }
        let diff = &p1.entries - &p2.entries;
        let max_abs = diff.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let max_row_sum = diff
            .sum_axis(Axis(1))
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        let max_col_sum = diff
            .sum_axis(Axis(0))
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        let support_equal = p1
            .entries
            .iter()
            .zip(p2.entries.iter())
            .all(|(a, b)| (a.abs() > SUPPORT_THRESHOLD) == (b.abs() > SUPPORT_THRESHOLD));
        out.push(PowerDiff {
            n,
            max_abs,
            max_row_sum,
            max_col_sum,
            support_equal,
        });
    }
    out
}

/// Entrywise distance between `T1^n` and `T2^n` for `n = 1..=max_power`, plus
/// the distance between stationary distributions when both are unique. The
/// verdict holds when every observed value is at most `epsilon`.
pub fn verify_power_bound(
    t1: &StochasticMatrix,
    t2: &StochasticMatrix,
    epsilon: f64,
    max_power: u32,
) -> Result<ChainDistanceReport> {
    check_same_dim(t1, t2)?;
    if max_power == 0 {
        return Err(Error::invalid("max power must be at least 1"));
    }
    let per_power = power_diffs(t1, t2, max_power);
    let stationary_distance = match (unique_stationary(t1), unique_stationary(t2)) {
        (Some(a), Some(b)) => Some(a.max_distance(&b)?),
        _ => None,
    };
    let bound = epsilon + EPSILON_SLACK;
    let verdict = per_power.iter().all(|p| p.max_abs <= bound)
        && stationary_distance.is_none_or(|d| d <= bound);
    Ok(ChainDistanceReport {
        epsilon,
        epsilon_observed: per_power[0].max_abs,
        row_sum_zero: per_power.iter().all(|p| p.max_row_sum <= ROW_SUM_TOLERANCE),
        per_power,
        stationary_distance,
        verdict,
    })
}

/// Similarity of two discrete-time chains over powers `1..=max_power`: every
/// difference entry at most `epsilon`, every difference row summing to zero,
/// and identical zero patterns at each power.
pub fn tdmc_similarity(
    t1: &StochasticMatrix,
    t2: &StochasticMatrix,
    epsilon: f64,
    max_power: u32,
) -> Result<ChainDistanceReport> {
    check_same_dim(t1, t2)?;
    if max_power == 0 {
        return Err(Error::invalid("max power must be at least 1"));
    }
    let per_power = power_diffs(t1, t2, max_power);
    let bound = epsilon + EPSILON_SLACK;
    let row_sum_zero = per_power.iter().all(|p| p.max_row_sum <= ROW_SUM_TOLERANCE);
    let verdict = row_sum_zero
        && per_power
            .iter()
            .all(|p| p.max_abs <= bound && p.support_equal);
    Ok(ChainDistanceReport {
        epsilon,
        epsilon_observed: per_power[0].max_abs,
        per_power,
        row_sum_zero,
        stationary_distance: None,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    fn m(rows: &[&[f64]]) -> StochasticMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        StochasticMatrix::from_rows(ids(rows.len()), &rows).unwrap()
    }

    #[test]
    fn rejects_non_stochastic_rows() {
        let rows = vec![vec![0.5, 0.4], vec![0.0, 1.0]];
        assert!(StochasticMatrix::from_rows(ids(2), &rows).is_err());
        let neg = vec![vec![1.2, -0.2], vec![0.0, 1.0]];
        assert!(StochasticMatrix::from_rows(ids(2), &neg).is_err());
    }

    #[test]
    fn first_power_is_the_matrix() {
        let t = m(&[&[0.3, 0.7], &[0.6, 0.4]]);
        assert_eq!(matrix_power(&t, 1).unwrap(), t);
        assert!(matrix_power(&t, 0).is_err());
    }

    #[test]
    fn binary_power_matches_repeated_product() {
        let t = m(&[&[0.3, 0.7, 0.0], &[0.1, 0.4, 0.5], &[0.2, 0.2, 0.6]]);
        let mut slow = t.clone();
        for _ in 1..13 {
            slow = slow.product(&t);
        }
        let fast = matrix_power(&t, 13).unwrap();
        assert!(matrix_distance(&fast, &slow).unwrap() < 1e-14);
        for row in fast.entries().outer_iter() {
            assert_abs_diff_eq!(row.sum(), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn identity_powers_and_classes() {
        let id = StochasticMatrix::identity(ids(3));
        assert_eq!(matrix_power(&id, 7).unwrap(), id);
        assert_eq!(recurrent_classes(&id), vec![vec![0], vec![1], vec![2]]);
        assert!(matches!(
            steady_state(&id, 1e-12, 100),
            Err(Error::MultipleRecurrentClasses(c)) if c.len() == 3
        ));
    }

    #[test]
    fn distance_needs_equal_dimensions() {
        let a = StochasticMatrix::identity(ids(2));
        let b = StochasticMatrix::identity(ids(3));
        assert!(matches!(
            matrix_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(matrix_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn periodic_chain_converges() {
        let flip = m(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let pi = steady_state(&flip, 1e-12, 10_000).unwrap();
        assert_abs_diff_eq!(pi.weights[0], 0.5, epsilon = 1e-12);
        let cycle = m(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]);
        let pi = steady_state(&cycle, 1e-12, 10_000).unwrap();
        for w in pi.weights {
            assert_abs_diff_eq!(w, 1.0 / 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn two_state_stationary() {
        // pi = (b, a) / (a + b) for [[1-a, a], [b, 1-b]]
        let t = m(&[&[0.8, 0.2], &[0.3, 0.7]]);
        let pi = steady_state(&t, 1e-13, 100_000).unwrap();
        assert_abs_diff_eq!(pi.weights[0], 0.6, epsilon = 1e-11);
        assert_abs_diff_eq!(pi.weights[1], 0.4, epsilon = 1e-11);
    }

    #[test]
    fn transient_states_are_not_recurrent() {
        let t = m(&[&[0.5, 0.5, 0.0], &[0.0, 0.2, 0.8], &[0.0, 0.6, 0.4]]);
        assert_eq!(recurrent_classes(&t), vec![vec![1, 2]]);
    }

    #[test]
    fn non_convergence_is_reported() {
        let t = m(&[&[0.999, 0.001], &[0.002, 0.998]]);
        assert!(matches!(
            steady_state(&t, 1e-15, 3),
            Err(Error::NoConvergence(3))
        ));
    }

    #[test]
    fn self_comparison_is_zero() {
        let t = m(&[&[0.3, 0.7], &[0.6, 0.4]]);
        let r = verify_power_bound(&t, &t, 1e-6, 5).unwrap();
        assert!(r.verdict);
        assert!(r.per_power.iter().all(|p| p.max_abs == 0.0));
        let s = tdmc_similarity(&t, &t, 0.0, 5).unwrap();
        assert!(s.verdict);
    }

    #[test]
    fn support_mismatch_breaks_similarity() {
        let a = m(&[&[1.0, 0.0], &[0.5, 0.5]]);
        let b = m(&[&[0.99, 0.01], &[0.5, 0.5]]);
        let s = tdmc_similarity(&a, &b, 0.05, 3).unwrap();
        assert!(!s.support_equal_per_power()[0]);
        assert!(!s.verdict);
        let r = verify_power_bound(&a, &b, 0.05, 3).unwrap();
        assert!(r.per_power.iter().all(|p| p.max_abs <= 0.05));
    }

    #[test]
    fn reorder_permutes_rows_and_columns() {
        let t = m(&[&[0.3, 0.7], &[0.6, 0.4]]);
        let r = t.reorder(&["s1", "s0"]).unwrap();
        assert_eq!(r.rows(), vec![vec![0.4, 0.6], vec![0.7, 0.3]]);
        assert!(t.reorder(&["s1", "s1"]).is_err());
        assert!(t.reorder(&["s1", "zz"]).is_err());
    }
}
