//! Reference networks used by the fixtures, tests and examples.
//!
//! Probabilities are short decimal literals, so the networks here and the
//! files under `fixtures/` agree bit for bit.

use crate::algebra::{product, superpose, Combiner, ProductNetwork};
use crate::error::Result;
use crate::linfield::{linear_prn, z2_squared_catalog, z3_catalog};
use crate::markov::StochasticMatrix;
use crate::morphisms::StateMap;
use crate::network::{boolean_state_ids, Fds, Function, Prn, RawPrn, DEFAULT_EXPANSION_CAP};
use crate::subnet::induced_subnetwork;

fn build(name: &str, states: Vec<String>, fns: &[(&str, &[usize], f64)]) -> Prn {
    RawPrn {
        name: name.into(),
        states,
        functions: fns
            .iter()
            .map(|(n, t, _)| Function::new(*n, t.to_vec()))
            .collect(),
        probs: fns.iter().map(|(_, _, p)| *p).collect(),
    }
    .build()
    .expect("catalog network is valid")
}

fn rows(r: &[[f64; 4]]) -> Vec<Vec<f64>> {
    r.iter().map(|row| row.to_vec()).collect()
}

/// `{0,1}^2` with `(x,y)`, `(x,0)`, `(1,y)`, `(1,0)` chosen with
/// probabilities .46, .21, .22, .11.
pub fn xbar() -> Prn {
    // states (0,0) (0,1) (1,0) (1,1)
    build(
        "xbar",
        boolean_state_ids(2),
        &[
            ("f1", &[0, 1, 2, 3], 0.46),
            ("f2", &[0, 0, 2, 2], 0.21),
            ("f3", &[2, 3, 2, 3], 0.22),
            ("f4", &[2, 2, 2, 2], 0.11),
        ],
    )
}

/// The first three functions of [`xbar`] with probabilities .47, .28, .25.
pub fn x1() -> Prn {
    build(
        "x1",
        boolean_state_ids(2),
        &[
            ("f1", &[0, 1, 2, 3], 0.47),
            ("f2", &[0, 0, 2, 2], 0.28),
            ("f3", &[2, 3, 2, 3], 0.25),
        ],
    )
}

/// `(x, y) -> (xy, y)` as a one-function network.
pub fn fds_x() -> Prn {
    build("fdsx", boolean_state_ids(2), &[("f1", &[0, 1, 0, 3], 1.0)])
}

/// `(x, y) -> (x, (x + 1) y)` as a one-function network.
pub fn fds_y() -> Prn {
    build("fdsy", boolean_state_ids(2), &[("f2", &[0, 1, 2, 2], 1.0)])
}

/// The bijection `(1,0)->(1,1)`, `(0,0)->(1,0)`, `(0,1)->(0,0)`,
/// `(1,1)->(0,1)` between [`fds_x`] and [`fds_y`].
pub fn fds_iso() -> StateMap {
    StateMap::from_ids(
        &fds_x(),
        &fds_y(),
        [
            ("(1,0)", "(1,1)"),
            ("(0,0)", "(1,0)"),
            ("(0,1)", "(0,0)"),
            ("(1,1)", "(0,1)"),
        ],
    )
    .expect("valid map")
}

/// Eight states of `{0,1}^3` ordered with the last coordinate slowest.
pub fn layered_cube_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for z in 0..2 {
        for x in 0..2 {
            for y in 0..2 {
                ids.push(format!("({x},{y},{z})"));
            }
        }
    }
    ids
}

const CHAIN4_ROWS: [[f64; 4]; 4] = [
    [0.0, 0.549, 0.451, 0.0],
    [0.0, 0.338, 0.0, 0.662],
    [0.111, 0.445, 0.444, 0.0],
    [0.0, 0.013, 0.0, 0.987],
];

const CHAIN4_ROUNDED_ROWS: [[f64; 4]; 4] = [
    [0.0, 0.55, 0.45, 0.0],
    [0.0, 0.34, 0.0, 0.66],
    [0.11, 0.45, 0.44, 0.0],
    [0.0, 0.01, 0.0, 0.99],
];

const T_PHI_ROWS: [[f64; 4]; 4] = [
    [0.0, 0.544, 0.456, 0.0],
    [0.0, 0.337, 0.0, 0.663],
    [0.113, 0.448, 0.439, 0.0],
    [0.0, 0.011, 0.0, 0.989],
];

const CHAIN8_ROWS: [[f64; 8]; 8] = [
    [0.0, 0.451, 0.549, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.378, 0.0, 0.622, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.995, 0.0, 0.0, 0.005, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.998, 0.0, 0.002, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.544, 0.456, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.337, 0.0, 0.663],
    [0.0, 0.0, 0.0, 0.0, 0.113, 0.448, 0.439, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.011, 0.0, 0.989],
];

/// Four-state chain whose states choose successors independently.
pub fn chain4() -> Prn {
    Prn::from_independent_rows(
        "chain4",
        boolean_state_ids(2),
        &rows(&CHAIN4_ROWS),
        DEFAULT_EXPANSION_CAP,
    )
    .expect("valid rows")
}

/// [`chain4`] with every entry rounded to two decimals; same arcs.
pub fn chain4_rounded() -> Prn {
    Prn::from_independent_rows(
        "chain4r",
        boolean_state_ids(2),
        &rows(&CHAIN4_ROUNDED_ROWS),
        DEFAULT_EXPANSION_CAP,
    )
    .expect("valid rows")
}

/// Transition matrix of the last-coordinate-one layer of [`chain8`].
pub fn t_phi() -> StochasticMatrix {
    StochasticMatrix::from_rows(boolean_state_ids(2), &rows(&T_PHI_ROWS)).expect("valid rows")
}

/// Eight-state chain on [`layered_cube_ids`] whose top layer carries
/// [`t_phi`] and is invariant.
pub fn chain8() -> Prn {
    let r: Vec<Vec<f64>> = CHAIN8_ROWS.iter().map(|row| row.to_vec()).collect();
    Prn::from_independent_rows("chain8", layered_cube_ids(), &r, DEFAULT_EXPANSION_CAP)
        .expect("valid rows")
}

/// Variant of [`chain8`] in which every function treats `(x,y,0)` exactly
/// like `(x,y,1)`, so `(x,y,z) -> (x,y,1)` is a projection.
pub fn chain8_projectable() -> Prn {
    let top = Prn::from_independent_rows(
        "top",
        boolean_state_ids(2),
        &rows(&T_PHI_ROWS),
        DEFAULT_EXPANSION_CAP,
    )
    .expect("valid rows");
    let functions = top
        .functions()
        .iter()
        .map(|f| {
            let layer: Vec<usize> = f.table.iter().map(|&v| v + 4).collect();
            Function::new(
                f.name.clone(),
                layer.iter().chain(&layer).copied().collect(),
            )
        })
        .collect();
    RawPrn {
        name: "chain8p".into(),
        states: layered_cube_ids(),
        functions,
        probs: top.probs().to_vec(),
    }
    .build()
    .expect("valid network")
}

/// The invariant top layer of [`chain8`] as a network of its own.
pub fn chain8_top() -> Prn {
    let net = chain8();
    induced_subnetwork(&net, &[4, 5, 6, 7])
        .and_then(|p| p.renamed("chain8top"))
        .expect("top layer is invariant")
}

/// `(x, y) -> (x, y, 1)` from a four-state chain into an eight-state one.
pub fn lift(source: &Prn, target: &Prn) -> StateMap {
    StateMap::new(source, target, vec![4, 5, 6, 7]).expect("valid map")
}

/// `(x, y, z) -> (x, y, 1)` on an eight-state layered network.
pub fn flatten(net: &Prn) -> StateMap {
    StateMap::new(net, net, vec![4, 5, 6, 7, 4, 5, 6, 7]).expect("valid map")
}

/// Four states: `(1,1)` stays with .6 or drops to `(1,0)`; `(1,0)` stays
/// with .4 or drops to `(0,0)`; the rest are fixed.
pub fn decay4() -> Prn {
    build(
        "decay4",
        boolean_state_ids(2),
        &[("f1", &[0, 1, 0, 3], 0.6), ("f2", &[0, 1, 2, 2], 0.4)],
    )
}

/// The four systems on `{0,1}`: identity, constant 1, constant 0, negation.
pub fn l_systems() -> [Fds; 4] {
    let s = || vec!["0".to_string(), "1".to_string()];
    [
        Fds::new("L1", s(), vec![0, 1]).expect("valid"),
        Fds::new("L2", s(), vec![1, 1]).expect("valid"),
        Fds::new("L3", s(), vec![0, 0]).expect("valid"),
        Fds::new("L4", s(), vec![1, 0]).expect("valid"),
    ]
}

/// Superposition of `L_i` (1-based) with the given probabilities.
pub fn l_network(which: &[(usize, f64)]) -> Result<Prn> {
    let all = l_systems();
    let name: String = which.iter().map(|(i, _)| format!("L{i}")).collect();
    superpose(
        name,
        &which
            .iter()
            .map(|&(i, p)| (all[i - 1].clone(), p))
            .collect::<Vec<_>>(),
    )
}

/// `L1L2 x L1L3` with probabilities `(p1, p2)` and `(q1, q3)`.
pub fn l1l2_times_l1l3(
    p1: f64,
    p2: f64,
    q1: f64,
    q3: f64,
    combiner: &Combiner,
) -> Result<ProductNetwork> {
    let a = l_network(&[(1, p1), (2, p2)])?;
    let b = l_network(&[(1, q1), (3, q3)])?;
    product(&a, &b, combiner)
}

/// Superposition of `A_i` and `A_j` (1-based) on `GF(2)^2`.
pub fn a_pair(i: usize, j: usize, pi: f64, pj: f64) -> Result<Prn> {
    let cat = z2_squared_catalog();
    linear_prn(
        format!("A{i}A{j}"),
        &[
            (format!("A{i}"), cat[i - 1].clone(), pi),
            (format!("A{j}"), cat[j - 1].clone(), pj),
        ],
    )
}

/// Superposition of the maps `x`, `2x`, `0` of GF(3) (1-based) on `{0,1,2}`.
pub fn z3_network(which: &[(usize, f64)]) -> Result<Prn> {
    let cat = z3_catalog();
    let name: String = which.iter().map(|(i, _)| format!("f{i}")).collect();
    linear_prn(
        format!("z3{name}"),
        &which
            .iter()
            .map(|&(i, p)| (format!("f{i}"), cat[i - 1].clone(), p))
            .collect::<Vec<_>>(),
    )
}

/// Three-gene network with fixed points `(0,0,0)` and `(1,1,1)` and a
/// five-state invariant core.
pub fn three_gene() -> Prn {
    // states (0,0,0) (0,0,1) (0,1,0) (0,1,1) (1,0,0) (1,0,1) (1,1,0) (1,1,1)
    build(
        "threegene",
        boolean_state_ids(3),
        &[
            ("f", &[0, 0, 4, 7, 6, 4, 2, 7], 0.5),
            ("g", &[0, 0, 4, 7, 5, 7, 2, 7], 0.5),
        ],
    )
}

/// The invariant core of [`three_gene`], in the order
/// `(1,0,0) (0,1,0) (1,1,0) (1,0,1) (1,1,1)`.
pub fn three_gene_core_ids() -> [&'static str; 5] {
    ["(1,0,0)", "(0,1,0)", "(1,1,0)", "(1,0,1)", "(1,1,1)"]
}

/// Every reference network with its fixture file stem.
pub fn corpus() -> Vec<(&'static str, Prn)> {
    let l = |w: &[(usize, f64)]| l_network(w).expect("valid");
    let a = |i, j| a_pair(i, j, 0.5, 0.5).expect("valid");
    let z3 = |w: &[(usize, f64)]| z3_network(w).expect("valid");
    vec![
        ("xbar", xbar()),
        ("x1", x1()),
        ("fds-x", fds_x()),
        ("fds-y", fds_y()),
        ("chain4", chain4()),
        ("chain4-rounded", chain4_rounded()),
        ("chain8", chain8()),
        ("chain8-projectable", chain8_projectable()),
        ("chain8-top", chain8_top()),
        ("decay4", decay4()),
        ("l1l2", l(&[(1, 0.6), (2, 0.4)])),
        ("l1l3", l(&[(1, 0.7), (3, 0.3)])),
        ("l1l4", l(&[(1, 0.5), (4, 0.5)])),
        ("l-all", l(&[(1, 0.1), (2, 0.2), (3, 0.3), (4, 0.4)])),
        (
            "l1l2-x-l1l3",
            l1l2_times_l1l3(0.6, 0.4, 0.7, 0.3, &Combiner::Product)
                .expect("valid")
                .network,
        ),
        ("a1a2", a(1, 2)),
        ("a1a3", a(1, 3)),
        ("a1a4", a(1, 4)),
        ("a2a3", a(2, 3)),
        ("a2a4", a(2, 4)),
        ("a3a4", a(3, 4)),
        ("z3-f1f2", z3(&[(1, 0.6), (2, 0.4)])),
        ("z3-f1f3", z3(&[(1, 0.6), (3, 0.4)])),
        ("z3-f2f3", z3(&[(2, 0.6), (3, 0.4)])),
        ("z3-f1f2f3", z3(&[(1, 0.5), (2, 0.3), (3, 0.2)])),
        ("three-gene", three_gene()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate_prn;

    #[test]
    fn corpus_is_valid_and_uniquely_named() {
        let c = corpus();
        let mut stems: Vec<_> = c.iter().map(|(s, _)| *s).collect();
        stems.sort();
        stems.dedup();
        assert_eq!(stems.len(), c.len());
        for (_, net) in &c {
            assert!(validate_prn(&net.to_raw()).ok());
        }
    }

    #[test]
    fn chain_sizes() {
        assert_eq!(chain4().function_count(), 24);
        assert_eq!(chain8().function_count(), 384);
        assert_eq!(chain8_projectable().function_count(), 24);
    }
}
