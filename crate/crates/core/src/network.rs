//! Network value types: finite dynamical systems, probabilistic regulatory
//! networks and gene-level probabilistic Boolean networks.
//!
//! A [`Prn`] is a finite ordered state set, a list of total functions on it and
//! one selection probability per function. Networks are immutable once built;
//! every constructor goes through [`validate_prn`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance for `sum(probs) == 1` checks.
pub const PROB_TOLERANCE: f64 = 1e-9;

/// Default cap on the number of composite functions produced by
/// [`expand_pbn`] and [`Prn::from_independent_rows`].
pub const DEFAULT_EXPANSION_CAP: u64 = 1_000_000;

/// Label for a tuple of small digits: `"1"` for one coordinate, `"(0,1,1)"` otherwise.
pub fn tuple_label(digits: &[u32]) -> String {
    match digits {
        [d] => d.to_string(),
        _ => {
            let inner: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

/// Digits of `index` in base `radix`, most significant first, padded to `width`.
pub(crate) fn digits_of(mut index: usize, radix: usize, width: usize) -> Vec<u32> {
    let mut out = vec![0u32; width];
    for slot in out.iter_mut().rev() {
        *slot = (index % radix) as u32;
        index /= radix;
    }
    out
}

pub(crate) fn index_of(digits: &[u32], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d as usize)
}

/// A state of a network: its identifier and its position in the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct State<'a> {
    pub id: &'a str,
    pub index: usize,
}

/// A named total function on the states of a network, given as an index table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Function {
    pub name: String,
    pub table: Vec<usize>,
}

impl Function {
    pub fn new(name: impl Into<String>, table: Vec<usize>) -> Self {
        Function {
            name: name.into(),
            table,
        }
    }

    #[inline]
    pub fn apply(&self, state: usize) -> usize {
        self.table[state]
    }
}

/// A finite dynamical system `(X, f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fds {
    name: String,
    states: Vec<String>,
    map: Vec<usize>,
}

impl Fds {
    pub fn new(name: impl Into<String>, states: Vec<String>, map: Vec<usize>) -> Result<Self> {
        let name = name.into();
        if states.is_empty() {
            return Err(Error::invalid(format!("FDS `{name}` has no states")));
        }
        if map.len() != states.len() {
            return Err(Error::invalid(format!(
                "FDS `{name}` map has {} entries for {} states",
                map.len(),
                states.len()
            )));
        }
        if let Some((u, &v)) = map.iter().enumerate().find(|(_, &v)| v >= states.len()) {
            return Err(Error::invalid(format!(
                "FDS `{name}` maps state {} to out-of-range index {v}",
                states[u]
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = states.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::invalid(format!(
                "FDS `{name}` repeats state `{dup}`"
            )));
        }
        Ok(Fds { name, states, map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, state: usize) -> usize {
        self.map[state]
    }

    /// The single-function network with probability 1.
    pub fn to_prn(&self) -> Result<Prn> {
        RawPrn {
            name: self.name.clone(),
            states: self.states.clone(),
            functions: vec![Function::new(self.name.clone(), self.map.clone())],
            probs: vec![1.0],
        }
        .build()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub severity: Severity,
    pub message: String,
    pub location: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {}",
            self.severity, self.location, self.message
        )
    }
}

/// Outcome of [`validate_prn`]; `ok()` holds iff no issue has error severity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.issues.iter().all(|i| i.severity != Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    fn push(
        &mut self,
        severity: Severity,
        location: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.issues.push(Issue {
            severity,
            message: message.into(),
            location: location.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for issue in &self.issues {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{issue}")?;
        }
        if first {
            f.write_str("no issues")?;
        }
        Ok(())
    }
}

/// Unvalidated network data. Turn it into a [`Prn`] with [`RawPrn::build`].
#[derive(Debug, Clone, PartialEq)]
pub struct RawPrn {
    pub name: String,
    pub states: Vec<String>,
    pub functions: Vec<Function>,
    pub probs: Vec<f64>,
}

impl RawPrn {
    pub fn build(self) -> Result<Prn> {
        let report = validate_prn(&self);
        if !report.ok() {
            return Err(Error::Validation(report));
        }
        let index = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Prn {
            name: self.name,
            states: self.states,
            index,
            functions: self.functions,
            probs: self.probs,
        })
    }
}

/// Tokens must survive the line-oriented text format.
fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('#') && !s.contains("->")
}

/// Check every network invariant and list the violations.
pub fn validate_prn(raw: &RawPrn) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = raw.states.len();

    if !is_token(&raw.name) {
        report.push(
            Severity::Error,
            "network",
            format!("invalid network name `{}`", raw.name),
        );
    }
    if n == 0 {
        report.push(Severity::Error, "states", "network has no states");
    }
    let mut seen = HashSet::new();
    for (i, s) in raw.states.iter().enumerate() {
        if !is_token(s) {
            report.push(
                Severity::Error,
                format!("state #{i}"),
                format!("invalid state id `{s}`"),
            );
        }
        if !seen.insert(s.as_str()) {
            report.push(
                Severity::Error,
                format!("state #{i}"),
                format!("duplicate state id `{s}`"),
            );
        }
    }

    if raw.functions.is_empty() {
        report.push(Severity::Error, "functions", "network has no functions");
    }
    if raw.probs.len() != raw.functions.len() {
        report.push(
            Severity::Error,
            "probabilities",
            format!(
                "{} probabilities for {} functions",
                raw.probs.len(),
                raw.functions.len()
            ),
        );
    }

    let mut names = HashSet::new();
    let mut tables: HashMap<&[usize], &str> = HashMap::new();
    for f in &raw.functions {
        let loc = format!("function `{}`", f.name);
        if !is_token(&f.name) {
            report.push(Severity::Error, loc.clone(), "invalid function name");
        }
        if !names.insert(f.name.as_str()) {
            report.push(Severity::Error, loc.clone(), "duplicate function name");
        }
        if f.table.len() != n {
            report.push(
                Severity::Error,
                loc.clone(),
                format!("table has {} entries for {n} states", f.table.len()),
            );
        }
        for (u, &v) in f.table.iter().enumerate() {
            if v >= n {
                let from = raw.states.get(u).map(String::as_str).unwrap_or("?");
                report.push(
                    Severity::Error,
                    loc.clone(),
                    format!("state `{from}` maps to out-of-range index {v}"),
                );
            }
        }
        if let Some(other) = tables.insert(&f.table, &f.name) {
            report.push(
                Severity::Warning,
                loc.clone(),
                format!("same table as function `{other}`"),
            );
        }
    }

    for (f, &p) in raw.functions.iter().zip(&raw.probs) {
        let loc = format!("function `{}`", f.name);
        if !p.is_finite() || p <= 0.0 || p > 1.0 + PROB_TOLERANCE {
            report.push(
                Severity::Error,
                loc,
                format!("probability {p} is outside (0, 1]"),
            );
        }
    }
    if !raw.probs.is_empty() && raw.probs.iter().all(|p| p.is_finite()) {
        let total: f64 = raw.probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            report.push(
                Severity::Error,
                "probabilities",
                format!("probabilities sum to {total}"),
            );
        }
    }
    report
}

/// A probabilistic regulatory network `(X, F, C)`.
#[derive(Debug, Clone)]
pub struct Prn {
    name: String,
    states: Vec<String>,
    index: HashMap<String, usize>,
    functions: Vec<Function>,
    probs: Vec<f64>,
}

impl PartialEq for Prn {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.states == other.states
            && self.functions == other.functions
            && self.probs == other.probs
    }
}

impl Prn {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state(&self, index: usize) -> State<'_> {
        State {
            id: &self.states[index],
            index,
        }
    }

    pub fn state_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn functions(&self) -> &[Function] {
        &self.functions
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn function_count(&self) -> usize {
        self.functions.len()
    }

    /// Copy with a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Result<Prn> {
        let mut raw = self.to_raw();
        raw.name = name.into();
        raw.build()
    }

    pub fn to_raw(&self) -> RawPrn {
        RawPrn {
            name: self.name.clone(),
            states: self.states.clone(),
            functions: self.functions.clone(),
            probs: self.probs.clone(),
        }
    }

    /// Each function as a deterministic system over the same states.
    pub fn systems(&self) -> Vec<(Fds, f64)> {
        self.functions
            .iter()
            .zip(&self.probs)
            .map(|(f, &p)| {
                (
                    Fds {
                        name: f.name.clone(),
                        states: self.states.clone(),
                        map: f.table.clone(),
                    },
                    p,
                )
            })
            .collect()
    }

    /// Realize a row-stochastic matrix as a network in which every state
    /// chooses its successor independently: one function per element of the
    /// product of the row supports, weighted by the product of the chosen
    /// entries. The resulting transition matrix reproduces `rows` exactly.
    pub fn from_independent_rows(
        name: impl Into<String>,
        states: Vec<String>,
        rows: &[Vec<f64>],
        cap: u64,
    ) -> Result<Prn> {
        let n = states.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        let mut supports = Vec::with_capacity(n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > PROB_TOLERANCE || row.iter().any(|&x| x < 0.0) {
                return Err(Error::invalid(format!(
                    "row {} is not a probability vector (sum {total})",
                    states[u]
                )));
            }
            let support: Vec<(usize, f64)> = row
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0.0)
                .map(|(v, &x)| (v, x))
                .collect();
            supports.push(support);
        }
        let count = supports
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
        if count > cap as u128 {
            return Err(Error::Capacity {
                what: "independent-row realization".into(),
                needed: count,
                cap: cap as u128,
            });
        }

        let mut functions = Vec::with_capacity(count as usize);
        let mut probs = Vec::with_capacity(count as usize);
        let mut choice = vec![0usize; n];
        for k in 0..count as usize {
            let table = choice
                .iter()
                .enumerate()
                .map(|(u, &c)| supports[u][c].0)
                .collect();
            let p = choice
                .iter()
                .enumerate()
                .map(|(u, &c)| supports[u][c].1)
                .product();
            functions.push(Function::new(format!("g{}", k + 1), table));
            probs.push(p);
            // odometer, last state fastest
            for u in (0..n).rev() {
                choice[u] += 1;
                if choice[u] < supports[u].len() {
                    break;
                }
                choice[u] = 0;
            }
        }
        RawPrn {
            name: name.into(),
            states,
            functions,
            probs,
        }
        .build()
    }
}

/// One predictor of a gene: its truth table over `{0,1}^n` and its selection
/// probability.
#[derive(Debug, Clone, PartialEq)]
pub struct Predictor {
    pub table: Vec<bool>,
    pub prob: f64,
}

/// A gene-level probabilistic Boolean network with independent predictor
/// selection per gene. Gene 0 is the most significant coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Pbn {
    n: usize,
    genes: Vec<Vec<Predictor>>,
}

/// Largest supported gene count (`2^n` states are materialized).
pub const MAX_GENES: usize = 24;

impl Pbn {
    pub fn new(n: usize, genes: Vec<Vec<Predictor>>) -> Result<Pbn> {
        if n == 0 || n > MAX_GENES {
            return Err(Error::invalid(format!(
                "gene count {n} outside 1..={MAX_GENES}"
            )));
        }
        if genes.len() != n {
            return Err(Error::invalid(format!(
                "{} predictor lists for {n} genes",
                genes.len()
            )));
        }
        let width = 1usize << n;
        for (i, preds) in genes.iter().enumerate() {
            if preds.is_empty() {
                return Err(Error::invalid(format!("gene {} has no predictors", i + 1)));
            }
            for (j, p) in preds.iter().enumerate() {
                if p.table.len() != width {
                    return Err(Error::invalid(format!(
                        "gene {} predictor {} has {} entries, expected {width}",
                        i + 1,
                        j + 1,
                        p.table.len()
                    )));
                }
                if !p.prob.is_finite() || p.prob <= 0.0 || p.prob > 1.0 + PROB_TOLERANCE {
                    return Err(Error::invalid(format!(
                        "gene {} predictor {} has probability {} outside (0, 1]",
                        i + 1,
                        j + 1,
                        p.prob
                    )));
                }
            }
            let total: f64 = preds.iter().map(|p| p.prob).sum();
            if (total - 1.0).abs() > PROB_TOLERANCE {
                return Err(Error::invalid(format!(
                    "gene {} selection probabilities sum to {total}",
                    i + 1
                )));
            }
        }
        Ok(Pbn { n, genes })
    }

    pub fn gene_count(&self) -> usize {
        self.n
    }

    pub fn genes(&self) -> &[Vec<Predictor>] {
        &self.genes
    }

    /// Number of composite network functions, saturating.
    pub fn combination_count(&self) -> u128 {
        self.genes
            .iter()
            .fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128))
    }
}

/// State ids of `{0,1}^n` in lexicographic order.
pub fn boolean_state_ids(n: usize) -> Vec<String> {
    (0..1usize << n)
        .map(|k| tuple_label(&digits_of(k, 2, n)))
        .collect()
}

/// Expand a gene-level network into its flat network: one function per
/// combination of predictor choices, with probability equal to the product of
/// the chosen selection probabilities.
pub fn expand_pbn(pbn: &Pbn, cap: u64) -> Result<Prn> {
    let n = pbn.n;
    let count = pbn.combination_count();
    if count > cap as u128 {
        return Err(Error::Capacity {
            what: "PBN expansion".into(),
            needed: count,
            cap: cap as u128,
        });
    }
    let size = 1usize << n;
    let mut functions = Vec::with_capacity(count as usize);
    let mut probs = Vec::with_capacity(count as usize);
    let mut k = vec![0usize; n];
    for _ in 0..count {
        let table = (0..size)
            .map(|u| {
                k.iter().enumerate().fold(0usize, |acc, (gene, &choice)| {
                    let bit = pbn.genes[gene][choice].table[u] as usize;
                    acc | (bit << (n - 1 - gene))
                })
            })
            .collect();
        let name = format!(
            "f_{}",
            k.iter()
                .map(|c| (c + 1).to_string())
                .collect::<Vec<_>>()
                .join("_")
        );
        let p = k
            .iter()
            .enumerate()
            .map(|(gene, &choice)| pbn.genes[gene][choice].prob)
            .product();
        functions.push(Function::new(name, table));
        probs.push(p);
        for gene in (0..n).rev() {
            k[gene] += 1;
            if k[gene] < pbn.genes[gene].len() {
                break;
            }
            k[gene] = 0;
        }
    }
    RawPrn {
        name: "pbn".into(),
        states: boolean_state_ids(n),
        functions,
        probs,
    }
    .build()
}

/// A labelled arc of the state space: `from -> to` via `function`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub function: usize,
    pub prob: f64,
}

/// The weighted state-space digraph. Parallel arcs are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    pub states: Vec<String>,
    pub arcs: Vec<Arc>,
}

impl WeightedDigraph {
    pub fn out_arcs(&self, from: usize) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.from == from)
    }
}

/// One arc per (state, function), ordered by source state then function.
pub fn state_space(prn: &Prn) -> WeightedDigraph {
    let arcs = (0..prn.len())
        .flat_map(|u| {
            prn.functions
                .iter()
                .zip(&prn.probs)
                .enumerate()
                .map(move |(i, (f, &p))| Arc {
                    from: u,
                    to: f.apply(u),
                    function: i,
                    prob: p,
                })
        })
        .collect();
    WeightedDigraph {
        states: prn.states.clone(),
        arcs,
    }
}
