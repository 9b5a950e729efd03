//! Building networks from networks: sum (coproduct), product and
//! superposition, plus checkers for the mediating morphisms of the product
//! and coproduct.

use crate::error::{Error, Result};
use crate::morphisms::{
    check_homomorphism, enumerate_homomorphisms, EnumOptions, MorphismCertificate, StateMap,
    DEFAULT_ENUM_CAP,
};
use crate::network::{Fds, Function, Prn, RawPrn, PROB_TOLERANCE};

/// Suffixes tagging the two halves of a disjoint union.
pub const SUM_TAGS: [&str; 2] = ["·0", "·1"];

/// How the probability of a product function `h_ij` is derived.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Combiner {
    /// `c_i * d_j`.
    #[default]
    Product,
    /// `(c_i + d_j) / (n + m)`, the pairwise average rescaled to sum to one.
    Average,
    /// Explicit `n x m` table of probabilities.
    Table(Vec<Vec<f64>>),
}

impl Combiner {
    pub fn probabilities(&self, c: &[f64], d: &[f64]) -> Result<Vec<f64>> {
        let (n, m) = (c.len(), d.len());
        let probs: Vec<f64> = match self {
            Combiner::Product => c
                .iter()
                .flat_map(|ci| d.iter().map(move |dj| ci * dj))
                .collect(),
            Combiner::Average => {
                let k = (n + m) as f64;
                c.iter()
                    .flat_map(|ci| d.iter().map(move |dj| (ci + dj) / k))
                    .collect()
            }
            Combiner::Table(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != m) {
                    return Err(Error::invalid(format!("combiner table must be {n}x{m}")));
                }
                rows.iter().flatten().copied().collect()
            }
        };
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::invalid(format!(
                "combined probabilities sum to {total}"
            )));
        }
        Ok(probs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumNetwork {
    pub network: Prn,
    pub iota1: StateMap,
    pub iota2: StateMap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductNetwork {
    pub network: Prn,
    pub pi1: StateMap,
    pub pi2: StateMap,
}

/// Disjoint union; `h_ij` acts as `f_i` on the first part and `g_j` on the
/// second, with probability `c_i * d_j`. The transition matrix is
/// `diag(T1, T2)`.
pub fn sum(x1: &Prn, x2: &Prn) -> Result<SumNetwork> {
    let n1 = x1.len();
    let states: Vec<String> = x1
        .states()
        .iter()
        .map(|s| format!("{s}{}", SUM_TAGS[0]))
        .chain(x2.states().iter().map(|s| format!("{s}{}", SUM_TAGS[1])))
        .collect();
    let mut functions = Vec::new();
    let mut probs = Vec::new();
    for (f, c) in x1.functions().iter().zip(x1.probs()) {
        for (g, d) in x2.functions().iter().zip(x2.probs()) {
            let table = f
                .table
                .iter()
                .copied()
                .chain(g.table.iter().map(|&v| v + n1))
                .collect();
            functions.push(Function::new(format!("{}+{}", f.name, g.name), table));
            probs.push(c * d);
        }
    }
    let network = RawPrn {
        name: format!("{}+{}", x1.name(), x2.name()),
        states,
        functions,
        probs,
    }
    .build()?;
    let iota1 = StateMap::new(x1, &network, (0..n1).collect())?;
    let iota2 = StateMap::new(x2, &network, (n1..n1 + x2.len()).collect())?;
    Ok(SumNetwork {
        network,
        iota1,
        iota2,
    })
}

/// Cartesian product with `h_ij(a, b) = (f_i(a), g_j(b))`; pairs are ordered
/// lexicographically.
pub fn product(x1: &Prn, x2: &Prn, combiner: &Combiner) -> Result<ProductNetwork> {
    let m = x2.len();
    let probs = combiner.probabilities(x1.probs(), x2.probs())?;
    let states: Vec<String> = x1
        .states()
        .iter()
        .flat_map(|a| x2.states().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let mut functions = Vec::new();
    for f in x1.functions() {
        for g in x2.functions() {
            let table = (0..x1.len() * m)
                .map(|k| f.apply(k / m) * m + g.apply(k % m))
                .collect();
            functions.push(Function::new(format!("{}*{}", f.name, g.name), table));
        }
    }
    let network = RawPrn {
        name: format!("{}*{}", x1.name(), x2.name()),
        states,
        functions,
        probs,
    }
    .build()?;
    let pi1 = StateMap::new(&network, x1, (0..network.len()).map(|k| k / m).collect())?;
    let pi2 = StateMap::new(&network, x2, (0..network.len()).map(|k| k % m).collect())?;
    Ok(ProductNetwork { network, pi1, pi2 })
}

/// Network choosing among deterministic systems on a common state set.
pub fn superpose(name: impl Into<String>, systems: &[(Fds, f64)]) -> Result<Prn> {
    let first = systems
        .first()
        .ok_or_else(|| Error::invalid("superposition needs at least one system"))?;
    let states = first.0.states().to_vec();
    for (fds, _) in systems {
        if fds.states() != states.as_slice() {
            return Err(Error::invalid(format!(
                "system `{}` is defined on a different state set than `{}`",
                fds.name(),
                first.0.name()
            )));
        }
    }
    RawPrn {
        name: name.into(),
        states,
        functions: systems
            .iter()
            .map(|(fds, _)| Function::new(fds.name(), fds.map().to_vec()))
            .collect(),
        probs: systems.iter().map(|(_, p)| *p).collect(),
    }
    .build()
}

/// A constructed mediating morphism and what was verified about it.
#[derive(Debug, Clone, PartialEq)]
pub struct Mediating {
    pub certificate: MorphismCertificate,
    /// The triangle identities hold as state maps.
    pub triangles_hold: bool,
    /// Number of homomorphisms satisfying the triangle identities, found by
    /// brute force; `None` when the search space exceeds the cap.
    pub competitors: Option<usize>,
}

impl Mediating {
    pub fn exists(&self) -> bool {
        self.certificate.holds() && self.triangles_hold
    }

    pub fn unique(&self) -> Option<bool> {
        self.competitors.map(|k| k == 1)
    }
}

fn require_hom(cert: &MorphismCertificate, what: &str) -> Result<()> {
    if cert.holds() {
        Ok(())
    } else {
        Err(Error::NotHomomorphism(format!(
            "{what} is not a homomorphism"
        )))
    }
}

fn count_competitors(
    src: &Prn,
    dst: &Prn,
    cap: u64,
    triangles: impl Fn(&[usize]) -> bool,
) -> Result<Option<usize>> {
    let opts = EnumOptions {
        cap,
        ..EnumOptions::default()
    };
    match enumerate_homomorphisms(src, dst, &opts) {
        Ok(all) => Ok(Some(
            all.iter()
                .filter(|c| triangles(c.state_map.as_slice()))
                .count(),
        )),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `delta(x) = (delta1(x), delta2(x))` into the product of the targets.
pub fn mediating_product_morphism(
    x: &Prn,
    x1: &Prn,
    x2: &Prn,
    delta1: &MorphismCertificate,
    delta2: &MorphismCertificate,
    prod: &ProductNetwork,
    cap: Option<u64>,
) -> Result<Mediating> {
    require_hom(delta1, "delta1")?;
    require_hom(delta2, "delta2")?;
    for (factor, pi) in [(x1, &prod.pi1), (x2, &prod.pi2)] {
        if pi.target.name != factor.name() || pi.target.size != factor.len() {
            return Err(Error::NetworkMismatch {
                expected: pi.target.to_string(),
                found: format!("{} ({} states)", factor.name(), factor.len()),
            });
        }
    }
    let m = x2.len();
    let map: Vec<usize> = (0..x.len())
        .map(|u| delta1.state_map.apply(u) * m + delta2.state_map.apply(u))
        .collect();
    let delta = StateMap::new(x, &prod.network, map)?;
    let certificate = check_homomorphism(x, &prod.network, &delta)?;
    let tri = |map: &[usize]| {
        (0..x.len()).all(|u| {
            prod.pi1.apply(map[u]) == delta1.state_map.apply(u)
                && prod.pi2.apply(map[u]) == delta2.state_map.apply(u)
        })
    };
    let triangles_hold = tri(delta.as_slice());
    let competitors = count_competitors(x, &prod.network, cap.unwrap_or(DEFAULT_ENUM_CAP), tri)?;
    Ok(Mediating {
        certificate,
        triangles_hold,
        competitors,
    })
}

/// `gamma` defined piecewise on the disjoint union.
///
/// Existence is checked, not assumed: when `gamma1` and `gamma2` need
/// different target witnesses on overlapping images, no single target
/// function can serve every `h_ij` and the certificate fails condition (1).
pub fn mediating_coproduct_morphism(
    x1: &Prn,
    x: &Prn,
    gamma1: &MorphismCertificate,
    gamma2: &MorphismCertificate,
    sum: &SumNetwork,
    cap: Option<u64>,
) -> Result<Mediating> {
    require_hom(gamma1, "gamma1")?;
    require_hom(gamma2, "gamma2")?;
    let n1 = x1.len();
    let map: Vec<usize> = (0..sum.network.len())
        .map(|u| {
            if u < n1 {
                gamma1.state_map.apply(u)
            } else {
                gamma2.state_map.apply(u - n1)
            }
        })
        .collect();
    let gamma = StateMap::new(&sum.network, x, map)?;
    let certificate = check_homomorphism(&sum.network, x, &gamma)?;
    let tri = |map: &[usize]| {
        (0..sum.network.len()).all(|u| {
            let expected = if u < n1 {
                gamma1.state_map.apply(u)
            } else {
                gamma2.state_map.apply(u - n1)
            };
            map[u] == expected
        })
    };
    let triangles_hold = tri(gamma.as_slice())
        && (0..n1).all(|u| gamma.apply(sum.iota1.apply(u)) == gamma1.state_map.apply(u))
        && (0..sum.iota2.source.size)
            .all(|u| gamma.apply(sum.iota2.apply(u)) == gamma2.state_map.apply(u));
    let competitors = count_competitors(&sum.network, x, cap.unwrap_or(DEFAULT_ENUM_CAP), tri)?;
    Ok(Mediating {
        certificate,
        triangles_hold,
        competitors,
    })
}

/// First injective homomorphism from `net` into `a x b`, if any.
pub fn embeds_in_product(
    net: &Prn,
    a: &Prn,
    b: &Prn,
    combiner: &Combiner,
    cap: u64,
) -> Result<Option<MorphismCertificate>> {
    let prod = product(a, b, combiner)?;
    let opts = EnumOptions {
        injective_only: true,
        cap,
        ..EnumOptions::default()
    };
    Ok(enumerate_homomorphisms(net, &prod.network, &opts)?
        .into_iter()
        .next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::transition_matrix;

    fn two_state(name: &str, fns: &[(&[usize], f64)]) -> Prn {
        RawPrn {
            name: name.into(),
            states: vec!["0".into(), "1".into()],
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
    fn average_combiner_is_normalised() {
        let p = Combiner::Average
            .probabilities(&[0.5, 0.5], &[0.2, 0.3, 0.5])
            .unwrap();
        assert_eq!(p.len(), 6);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((p[0] - 0.7 / 5.0).abs() < 1e-15);
    }

    #[test]
    fn table_combiner_checks_shape_and_sum() {
        let bad = Combiner::Table(vec![vec![0.5, 0.5]]);
        assert!(bad.probabilities(&[1.0], &[0.5, 0.4, 0.1]).is_err());
        let short = Combiner::Table(vec![vec![0.5, 0.4]]);
        assert!(short.probabilities(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn sum_is_block_diagonal_with_tagged_states() {
        let a = two_state("a", &[(&[0, 0], 0.4), (&[1, 1], 0.6)]);
        let b = two_state("b", &[(&[1, 0], 1.0)]);
        let s = sum(&a, &b).unwrap();
        assert_eq!(s.network.states(), ["0·0", "1·0", "0·1", "1·1"]);
        let t = transition_matrix(&s.network);
        assert_eq!(t.rows()[0], vec![0.4, 0.6, 0.0, 0.0]);
        assert_eq!(t.rows()[2], vec![0.0, 0.0, 0.0, 1.0]);
        let i1 = check_homomorphism(&a, &s.network, &s.iota1).unwrap();
        assert!(i1.holds());
        assert_eq!(i1.epsilon, Some(0.0));
    }

    #[test]
    fn superpose_rejects_different_state_sets() {
        let f = Fds::new("f", vec!["a".into()], vec![0]).unwrap();
        let g = Fds::new("g", vec!["b".into()], vec![0]).unwrap();
        assert!(superpose("x", &[(f.clone(), 0.5), (g, 0.5)]).is_err());
        assert!(superpose("x", &[(f, 1.0)]).is_ok());
    }

    #[test]
    fn diagonal_into_square_is_mediating() {
        let l12 = two_state("L1L2", &[(&[0, 1], 0.5), (&[1, 1], 0.5)]);
        let prod = product(&l12, &l12, &Combiner::Product).unwrap();
        let id = check_homomorphism(&l12, &l12, &StateMap::identity(&l12)).unwrap();
        let med = mediating_product_morphism(&l12, &l12, &l12, &id, &id, &prod, None).unwrap();
        assert!(med.exists());
        assert_eq!(med.certificate.state_map.as_slice(), &[0, 3]);
        assert_eq!(med.unique(), Some(true));
    }

    #[test]
    fn fold_map_fails_when_witnesses_disagree() {
        let x = two_state("x", &[(&[0, 0], 0.5), (&[1, 1], 0.5)]);
        let s = sum(&x, &x).unwrap();
        let id = check_homomorphism(&x, &x, &StateMap::identity(&x)).unwrap();
        let med = mediating_coproduct_morphism(&x, &x, &id, &id, &s, None).unwrap();
        assert!(med.triangles_hold);
        assert!(!med.certificate.holds_condition1);
        assert_eq!(med.competitors, Some(0));
    }
}
