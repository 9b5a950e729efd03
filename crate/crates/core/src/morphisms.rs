//! Homomorphisms, epsilon-homomorphisms and isomorphisms between networks.
//!
//! A state map `phi: X1 -> X2` is a homomorphism when every source function
//! `f_i` has a target witness `g_j` with `phi . f_i = g_j . phi` (condition 1)
//! and every source arc `u -> f_i(u)` lands on an arc `phi(u) -> phi(f_i(u))`
//! of positive weight in the target (condition 2).
//!
//! The epsilon of a homomorphism compares transition probabilities along the
//! map. Two families of terms are measured and the larger one is reported:
//!
//! * each source arc individually, `|p1(u, v) - p2(phi(u), phi(v))|` for
//!   `p1(u, v) > 0`;
//! * each target arc `phi(u) -> w` whose fibre receives no source arc out of
//!   `u`, at its full weight `p2(phi(u), w)`.
//!
//! For a bijection this is the entrywise max-norm distance between `T1` and
//! the pulled-back `T2`. Unlike the fibre-mass or all-pairs variants it
//! satisfies `eps(psi . phi) <= eps(phi) + eps(psi)`.

use std::collections::HashMap;
use std::fmt;

use ndarray::Array2;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::markov::{transition_matrix, EPSILON_SLACK};
use crate::network::{Function, Prn};

/// Probabilities closer than this count as equal for isomorphism.
pub const ISO_TOLERANCE: f64 = 1e-9;

/// Default number of candidate maps an enumeration may examine.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

const PARALLEL_THRESHOLD: u128 = 4096;

/// Identity of a network as seen by a state map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetworkId {
    pub name: String,
    pub size: usize,
}

impl NetworkId {
    pub fn of(prn: &Prn) -> Self {
        NetworkId {
            name: prn.name().to_string(),
            size: prn.len(),
        }
    }
}

impl fmt::Display for NetworkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} states)", self.name, self.size)
    }
}

/// A total map from the states of one network to the states of another.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateMap {
    pub source: NetworkId,
    pub target: NetworkId,
    map: Vec<usize>,
}

impl StateMap {
    pub fn new(source: &Prn, target: &Prn, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::invalid(format!(
                "state map has {} entries for {} source states",
                map.len(),
                source.len()
            )));
        }
        if let Some((u, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.len()) {
            return Err(Error::invalid(format!(
                "state `{}` maps to out-of-range index {v}",
                source.states()[u]
            )));
        }
        Ok(StateMap {
            source: NetworkId::of(source),
            target: NetworkId::of(target),
            map,
        })
    }

    /// Build from state ids; every source state must be mapped.
    pub fn from_ids<S: AsRef<str>>(
        source: &Prn,
        target: &Prn,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (from, to) in pairs {
            let (from, to) = (from.as_ref(), to.as_ref());
            let u = source
                .state_index(from)
                .ok_or_else(|| Error::invalid(format!("unknown source state `{from}`")))?;
            let v = target
                .state_index(to)
                .ok_or_else(|| Error::invalid(format!("unknown target state `{to}`")))?;
            if map[u].replace(v).is_some() {
                return Err(Error::invalid(format!(
                    "source state `{from}` mapped twice"
                )));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(u, v)| {
                v.ok_or_else(|| {
                    Error::invalid(format!(
                        "source state `{}` is not mapped",
                        source.states()[u]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StateMap::new(source, target, map)
    }

    pub fn identity(net: &Prn) -> Self {
        StateMap {
            source: NetworkId::of(net),
            target: NetworkId::of(net),
            map: (0..net.len()).collect(),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, u: usize) -> usize {
        self.map[u]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<StateMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (u, &v) in self.map.iter().enumerate() {
            inv[v] = u;
        }
        Some(StateMap {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    /// `next . self`.
    pub fn then(&self, next: &StateMap) -> Result<StateMap> {
        if self.target != next.source {
            return Err(Error::NetworkMismatch {
                expected: self.target.to_string(),
                found: next.source.to_string(),
            });
        }
        Ok(StateMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        })
    }

    /// Image as a sorted, deduplicated list of target indices.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `(source id, target id)` pairs in source order.
    pub fn id_pairs<'a>(&'a self, source: &'a Prn, target: &'a Prn) -> Vec<(&'a str, &'a str)> {
        self.map
            .iter()
            .enumerate()
            .map(|(u, &v)| (source.states()[u].as_str(), target.states()[v].as_str()))
            .collect()
    }
}

/// For each source function index, the chosen target witness index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionCorrespondence(pub Vec<usize>);

impl FunctionCorrespondence {
    pub fn witness(&self, i: usize) -> usize {
        self.0[i]
    }
}

/// A source function `function` at state `state` whose arc to `image`
/// has no matching target arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub function: usize,
    pub state: usize,
    pub image: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphismCertificate {
    pub state_map: StateMap,
    pub correspondence: Option<FunctionCorrespondence>,
    pub holds_condition1: bool,
    pub holds_condition2: bool,
    /// Present when both conditions hold.
    pub epsilon: Option<f64>,
    pub bijective: bool,
    pub is_isomorphism: bool,
    pub counterexample: Option<Counterexample>,
}

impl MorphismCertificate {
    pub fn holds(&self) -> bool {
        self.holds_condition1 && self.holds_condition2
    }
}

/// Smallest-index witness for every source function, or the counterexample
/// for the first function without one.
fn find_witnesses(
    src: &[Function],
    dst: &[Function],
    map: &[usize],
) -> std::result::Result<Vec<usize>, Counterexample> {
    let mut witnesses = Vec::with_capacity(src.len());
    for (i, f) in src.iter().enumerate() {
        let found = dst.iter().position(|g| {
            f.table
                .iter()
                .enumerate()
                .all(|(u, &fu)| map[fu] == g.table[map[u]])
        });
        match found {
            Some(j) => witnesses.push(j),
            None => {
                // report where the best-agreeing candidate breaks
                let mut best: Option<(usize, usize)> = None;
                for g in dst {
                    let agree = f
                        .table
                        .iter()
                        .enumerate()
                        .filter(|&(u, &fu)| map[fu] == g.table[map[u]])
                        .count();
                    let first_bad = f
                        .table
                        .iter()
                        .enumerate()
                        .find(|&(u, &fu)| map[fu] != g.table[map[u]])
                        .map(|(u, _)| u)
                        .unwrap_or(0);
                    if best.is_none_or(|(a, _)| agree > a) {
                        best = Some((agree, first_bad));
                    }
                }
                let state = best.map_or(0, |(_, u)| u);
                return Err(Counterexample {
                    function: i,
                    state,
                    image: f.table[state],
                });
            }
        }
    }
    Ok(witnesses)
}

/// Precomputed transition matrices for repeated checks between two networks.
pub struct Checker<'a> {
    src: &'a Prn,
    dst: &'a Prn,
    t_src: Array2<f64>,
    t_dst: Array2<f64>,
}

impl<'a> Checker<'a> {
    pub fn new(src: &'a Prn, dst: &'a Prn) -> Self {
        Checker {
            src,
            dst,
            t_src: transition_matrix(src).entries().clone(),
            t_dst: transition_matrix(dst).entries().clone(),
        }
    }

    /// Conditions (1) and (2) only; cheap pre-filter for enumeration.
    fn conditions_hold(&self, map: &[usize]) -> bool {
        find_witnesses(self.src.functions(), self.dst.functions(), map).is_ok()
    }

    fn inverse_holds(&self, map: &[usize]) -> bool {
        let n = map.len();
        if n != self.dst.len() {
            return false;
        }
        let mut inv = vec![usize::MAX; n];
        for (u, &v) in map.iter().enumerate() {
            if inv[v] != usize::MAX {
                return false;
            }
            inv[v] = u;
        }
        find_witnesses(self.dst.functions(), self.src.functions(), &inv).is_ok()
    }

    /// Largest discrepancy along source arcs, or from a target arc out of
    /// `phi(u)` whose fibre receives no source arc out of `u`.
    fn epsilon(&self, map: &[usize]) -> f64 {
        let n = self.src.len();
        let m = self.dst.len();
        let mut eps: f64 = 0.0;
        let mut hit = vec![false; m];
        for u in 0..n {
            hit.iter_mut().for_each(|h| *h = false);
            let pu = map[u];
            for v in 0..n {
                let p = self.t_src[[u, v]];
                if p > 0.0 {
                    eps = eps.max((p - self.t_dst[[pu, map[v]]]).abs());
                    hit[map[v]] = true;
                }
            }
            for (w, _) in hit.iter().enumerate().filter(|(_, &h)| !h) {
                eps = eps.max(self.t_dst[[pu, w]]);
            }
        }
        eps
    }

    /// Full certificate for `map`.
    pub fn check(&self, map: &[usize]) -> MorphismCertificate {
        let state_map = StateMap {
            source: NetworkId::of(self.src),
            target: NetworkId::of(self.dst),
            map: map.to_vec(),
        };
        let bijective = state_map.is_bijective();
        match find_witnesses(self.src.functions(), self.dst.functions(), map) {
            Ok(witnesses) => {
                // with a witness, every source arc u -> f_i(u) is carried by
                // g_j at phi(u) with weight d_j > 0, so condition (2) holds;
                // verify it at the aggregate level anyway
                let cond2 = self.src.functions().iter().all(|f| {
                    (0..self.src.len()).all(|u| self.t_dst[[map[u], map[f.apply(u)]]] > 0.0)
                });
                let epsilon = self.epsilon(map);
                let is_isomorphism =
                    bijective && cond2 && epsilon <= ISO_TOLERANCE && self.inverse_holds(map);
                MorphismCertificate {
                    state_map,
                    correspondence: Some(FunctionCorrespondence(witnesses)),
                    holds_condition1: true,
                    holds_condition2: cond2,
                    epsilon: cond2.then_some(epsilon),
                    bijective,
                    is_isomorphism,
                    counterexample: None,
                }
            }
            Err(counterexample) => {
                let cond2 = self.src.functions().iter().all(|f| {
                    (0..self.src.len()).all(|u| self.t_dst[[map[u], map[f.apply(u)]]] > 0.0)
                });
                MorphismCertificate {
                    state_map,
                    correspondence: None,
                    holds_condition1: false,
                    holds_condition2: cond2,
                    epsilon: None,
                    bijective,
                    is_isomorphism: false,
                    counterexample: Some(counterexample),
                }
            }
        }
    }
}

fn check_map_networks(phi: &StateMap, src: &Prn, dst: &Prn) -> Result<()> {
    let (s, d) = (NetworkId::of(src), NetworkId::of(dst));
    if phi.source != s {
        return Err(Error::NetworkMismatch {
            expected: s.to_string(),
            found: phi.source.to_string(),
        });
    }
    if phi.target != d {
        return Err(Error::NetworkMismatch {
            expected: d.to_string(),
            found: phi.target.to_string(),
        });
    }
    Ok(())
}

/// Certify `phi` as a homomorphism from `src` to `dst`.
pub fn check_homomorphism(src: &Prn, dst: &Prn, phi: &StateMap) -> Result<MorphismCertificate> {
    check_map_networks(phi, src, dst)?;
    Ok(Checker::new(src, dst).check(phi.as_slice()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumOptions {
    pub bijective_only: bool,
    pub injective_only: bool,
    /// Also require the inverse map to be a homomorphism (implies bijective).
    pub require_inverse_hom: bool,
    pub max_epsilon: Option<f64>,
    pub cap: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            bijective_only: false,
            injective_only: false,
            require_inverse_hom: false,
            max_epsilon: None,
            cap: DEFAULT_ENUM_CAP,
        }
    }
}

/// Number of candidate maps the enumeration would examine (saturating).
pub fn candidate_count(src_size: usize, dst_size: usize, opts: &EnumOptions) -> u128 {
    let (n, m) = (src_size as u128, dst_size as u128);
    if opts.bijective_only || opts.require_inverse_hom {
        if n != m {
            return 0;
        }
        (1..=n).fold(1u128, |acc, k| acc.saturating_mul(k))
    } else if opts.injective_only {
        if n > m {
            return 0;
        }
        (0..n).fold(1u128, |acc, k| acc.saturating_mul(m - k))
    } else {
        (0..n).fold(1u128, |acc, _| acc.saturating_mul(m))
    }
}

/// Depth-first walk over maps in lexicographic order; `visit` sees each
/// complete map.
fn walk_maps(
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    n: usize,
    m: usize,
    injective: bool,
    visit: &mut dyn FnMut(&[usize]),
) {
    if prefix.len() == n {
        visit(prefix);
        return;
    }
    for v in 0..m {
        if injective && used[v] {
            continue;
        }
        prefix.push(v);
        if injective {
            used[v] = true;
        }
        walk_maps(prefix, used, n, m, injective, visit);
        if injective {
            used[v] = false;
        }
        prefix.pop();
    }
}

/// Every map `src -> dst` passing [`check_homomorphism`] and the filters in
/// `opts`, in lexicographic order of the index vector.
pub fn enumerate_homomorphisms(
    src: &Prn,
    dst: &Prn,
    opts: &EnumOptions,
) -> Result<Vec<MorphismCertificate>> {
    let count = candidate_count(src.len(), dst.len(), opts);
    if count > opts.cap as u128 {
        return Err(Error::Capacity {
            what: "homomorphism enumeration".into(),
            needed: count,
            cap: opts.cap as u128,
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let checker = Checker::new(src, dst);
    let n = src.len();
    let m = dst.len();
    let injective = opts.bijective_only || opts.injective_only || opts.require_inverse_hom;
    let bound = opts.max_epsilon.map(|e| e + EPSILON_SLACK);

    // partition on the image of the first state; each block is already in
    // lexicographic order, and blocks are concatenated in order
    let search = |first: usize| {
        let mut found = Vec::new();
        let mut prefix = vec![first];
        let mut used = vec![false; m];
        used[first] = true;
        walk_maps(&mut prefix, &mut used, n, m, injective, &mut |map| {
            if !checker.conditions_hold(map) {
                return;
            }
            if opts.require_inverse_hom && !checker.inverse_holds(map) {
                return;
            }
            let cert = checker.check(map);
            if !cert.holds() {
                return;
            }
            if let (Some(b), Some(e)) = (bound, cert.epsilon) {
                if e > b {
                    return;
                }
            }
            found.push(cert);
        });
        found
    };
    // thread start-up dominates tiny searches
    let blocks: Vec<Vec<MorphismCertificate>> = if count <= PARALLEL_THRESHOLD {
        (0..m).map(search).collect()
    } else {
        (0..m).into_par_iter().map(search).collect()
    };
    Ok(blocks.into_iter().flatten().collect())
}

/// `phi2 . phi1` with the correspondence composed function-wise.
pub fn compose_morphisms(
    x1: &Prn,
    x2: &Prn,
    x3: &Prn,
    phi1: &MorphismCertificate,
    phi2: &MorphismCertificate,
) -> Result<MorphismCertificate> {
    check_map_networks(&phi1.state_map, x1, x2)?;
    check_map_networks(&phi2.state_map, x2, x3)?;
    let (c1, c2) = match (&phi1.correspondence, &phi2.correspondence) {
        (Some(c1), Some(c2)) if phi1.holds() && phi2.holds() => (c1, c2),
        _ => {
            return Err(Error::NotHomomorphism(
                "both inputs must satisfy conditions (1) and (2)".into(),
            ))
        }
    };
    let map = phi1.state_map.then(&phi2.state_map)?;
    let composed: Vec<usize> = c1.0.iter().map(|&j| c2.witness(j)).collect();

    // the composed witnesses must intertwine the composed map
    for (i, &t) in composed.iter().enumerate() {
        let f = &x1.functions()[i];
        let q = &x3.functions()[t];
        if let Some(u) = (0..x1.len()).find(|&u| map.apply(f.apply(u)) != q.apply(map.apply(u))) {
            return Err(Error::NotHomomorphism(format!(
                "composed witness for `{}` fails at `{}`",
                f.name,
                x1.states()[u]
            )));
        }
    }
    let mut cert = Checker::new(x1, x3).check(map.as_slice());
    cert.correspondence = Some(FunctionCorrespondence(composed));
    Ok(cert)
}

/// Outcome of [`is_projection`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionCheck {
    pub is_projection: bool,
    pub idempotent: bool,
    pub image: Vec<usize>,
    pub certificate: MorphismCertificate,
}

/// An endomorphism `pi` with `pi . pi = pi`.
pub fn is_projection(net: &Prn, pi: &StateMap) -> Result<ProjectionCheck> {
    check_map_networks(pi, net, net)?;
    let certificate = check_homomorphism(net, net, pi)?;
    let idempotent = (0..net.len()).all(|x| pi.apply(pi.apply(x)) == pi.apply(x));
    Ok(ProjectionCheck {
        is_projection: certificate.holds() && idempotent,
        idempotent,
        image: pi.image(),
        certificate,
    })
}

/// Human-readable description of a counterexample.
pub fn describe_counterexample(src: &Prn, c: &Counterexample) -> String {
    format!(
        "function `{}` at `{}` -> `{}` has no matching target arc",
        src.functions()[c.function].name,
        src.states()[c.state],
        src.states()[c.image]
    )
}

/// Map from source ids to target ids, for serialization.
pub fn map_to_ids(map: &StateMap, src: &Prn, dst: &Prn) -> HashMap<String, String> {
    map.id_pairs(src, dst)
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::RawPrn;

    fn net(name: &str, n: usize, fns: &[(&[usize], f64)]) -> Prn {
        RawPrn {
            name: name.into(),
            states: (0..n).map(|i| format!("s{i}")).collect(),
            functions: fns
                .iter()
                .enumerate()
                .map(|(i, (t, _))| Function::new(format!("f{}", i + 1), t.to_vec()))
                .collect(),
            probs: fns.iter().map(|(_, p)| *p).collect(),
        }
        .build()
        .unwrap()
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let x = net("x", 3, &[(&[1, 2, 0], 0.3), (&[0, 0, 2], 0.7)]);
        let cert = check_homomorphism(&x, &x, &StateMap::identity(&x)).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.epsilon, Some(0.0));
        assert!(cert.is_isomorphism);
        assert_eq!(cert.correspondence.unwrap().0, vec![0, 1]);
    }

    #[test]
    fn failing_map_reports_counterexample() {
        // 2-cycle vs two fixed points: no map intertwines a swap with identity
        let swap = net("swap", 2, &[(&[1, 0], 1.0)]);
        let fixed = net("fixed", 2, &[(&[0, 1], 1.0)]);
        let phi = StateMap::new(&swap, &fixed, vec![0, 1]).unwrap();
        let cert = check_homomorphism(&swap, &fixed, &phi).unwrap();
        assert!(!cert.holds_condition1);
        assert!(!cert.holds());
        assert!(cert.counterexample.is_some());
        assert!(cert.epsilon.is_none());
    }

    #[test]
    fn witness_ties_pick_smallest_index() {
        let x = net("x", 2, &[(&[0, 1], 1.0)]);
        let y = net("y", 2, &[(&[0, 0], 0.2), (&[0, 1], 0.4), (&[0, 1], 0.4)]);
        let cert =
            check_homomorphism(&x, &y, &StateMap::identity(&x).clone_into_target(&y)).unwrap();
        assert_eq!(cert.correspondence.unwrap().0, vec![1]);
    }

    impl StateMap {
        fn clone_into_target(&self, target: &Prn) -> StateMap {
            StateMap {
                source: self.source.clone(),
                target: NetworkId::of(target),
                map: self.map.clone(),
            }
        }
    }

    #[test]
    fn mismatched_networks_are_rejected() {
        let x = net("x", 2, &[(&[0, 1], 1.0)]);
        let y = net("y", 2, &[(&[0, 1], 1.0)]);
        let phi = StateMap::identity(&x);
        assert!(matches!(
            check_homomorphism(&y, &y, &phi),
            Err(Error::NetworkMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_contains_identity_and_respects_cap() {
        let x = net("x", 3, &[(&[1, 2, 2], 0.5), (&[0, 0, 2], 0.5)]);
        let all = enumerate_homomorphisms(&x, &x, &EnumOptions::default()).unwrap();
        assert!(all.iter().any(|c| c.state_map.as_slice() == [0, 1, 2]));
        // lexicographic order
        for w in all.windows(2) {
            assert!(w[0].state_map.as_slice() < w[1].state_map.as_slice());
        }
        let opts = EnumOptions {
            cap: 26,
            ..EnumOptions::default()
        };
        assert!(matches!(
            enumerate_homomorphisms(&x, &x, &opts),
            Err(Error::Capacity { needed: 27, .. })
        ));
    }

    #[test]
    fn candidate_counts() {
        let o = EnumOptions::default();
        assert_eq!(candidate_count(3, 4, &o), 64);
        let inj = EnumOptions {
            injective_only: true,
            ..o.clone()
        };
        assert_eq!(candidate_count(3, 4, &inj), 24);
        let bij = EnumOptions {
            bijective_only: true,
            ..o
        };
        assert_eq!(candidate_count(4, 4, &bij), 24);
        assert_eq!(candidate_count(3, 4, &bij), 0);
    }

    #[test]
    fn swap_is_not_a_projection() {
        let x = net("x", 2, &[(&[0, 1], 1.0)]);
        let swap = StateMap::new(&x, &x, vec![1, 0]).unwrap();
        let p = is_projection(&x, &swap).unwrap();
        assert!(p.certificate.holds());
        assert!(!p.idempotent);
        assert!(!p.is_projection);
        let id = is_projection(&x, &StateMap::identity(&x)).unwrap();
        assert!(id.is_projection);
        assert_eq!(id.image, vec![0, 1]);
    }

    #[test]
    fn composition_rejects_non_homomorphisms() {
        let swap = net("swap", 2, &[(&[1, 0], 1.0)]);
        let fixed = net("fixed", 2, &[(&[0, 1], 1.0)]);
        let bad = check_homomorphism(
            &swap,
            &fixed,
            &StateMap::new(&swap, &fixed, vec![0, 1]).unwrap(),
        )
        .unwrap();
        let id = check_homomorphism(&fixed, &fixed, &StateMap::identity(&fixed)).unwrap();
        assert!(compose_morphisms(&swap, &fixed, &fixed, &bad, &id).is_err());
    }

    #[test]
    fn collapsed_arcs_compare_individually() {
        // two states collapse onto one
        let x = net("x", 2, &[(&[1, 0], 0.5), (&[0, 1], 0.5)]);
        let one = net("one", 1, &[(&[0], 1.0)]);
        let phi = StateMap::new(&x, &one, vec![0, 0]).unwrap();
        let cert = check_homomorphism(&x, &one, &phi).unwrap();
        assert!(cert.holds());
        // individual arcs differ by 0.5 although the row totals agree
        assert_eq!(cert.epsilon, Some(0.5));
        assert!(!cert.bijective);
    }

    #[test]
    fn unmatched_target_arc_counts_in_full() {
        let x = net("x", 2, &[(&[0, 1], 1.0)]);
        let y = net("y", 2, &[(&[0, 1], 0.75), (&[1, 1], 0.25)]);
        let cert = check_homomorphism(&x, &y, &StateMap::new(&x, &y, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(cert.epsilon, Some(0.25));
        assert!(!cert.is_isomorphism);
    }
}
