//! Invariant subnetworks (sub-PRNs), their lattice, and restrictions.
//!
//! A non-empty subset is invariant when every function maps it into itself.
//! Invariant sets are exactly the non-empty unions of forward closures of
//! single states, which is how the family is generated here.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::markov::{recurrent_classes, transition_matrix};
use crate::morphisms::{is_projection, StateMap};
use crate::network::{Function, Prn, RawPrn};

/// Default limit on the number of invariant sets generated.
pub const DEFAULT_SUBNET_CAP: usize = 1 << 20;

/// Families up to this size get an exhaustive pairwise lattice check.
const PAIRWISE_LATTICE_LIMIT: usize = 1024;

/// Largest network the raw subset scan accepts.
pub const MAX_SCAN_STATES: usize = 20;

fn check_subset(prn: &Prn, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::invalid("subset must be non-empty"));
    }
    if let Some(&bad) = subset.iter().find(|&&u| u >= prn.len()) {
        return Err(Error::invalid(format!("state index {bad} out of range")));
    }
    Ok(())
}

/// Every function maps `subset` into itself.
pub fn is_invariant(prn: &Prn, subset: &[usize]) -> Result<bool> {
    check_subset(prn, subset)?;
    let mut member = vec![false; prn.len()];
    subset.iter().for_each(|&u| member[u] = true);
    Ok(prn
        .functions()
        .iter()
        .all(|f| subset.iter().all(|&u| member[f.apply(u)])))
}

/// Resolve state ids to sorted, deduplicated indices.
pub fn subset_from_ids<S: AsRef<str>>(prn: &Prn, ids: &[S]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = ids
        .iter()
        .map(|id| {
            prn.state_index(id.as_ref())
                .ok_or_else(|| Error::invalid(format!("unknown state `{}`", id.as_ref())))
        })
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

pub fn subset_ids(prn: &Prn, subset: &[usize]) -> Vec<String> {
    subset.iter().map(|&u| prn.states()[u].clone()).collect()
}

/// Smallest invariant set containing `seed`, sorted.
pub fn closure(prn: &Prn, seed: usize) -> Vec<usize> {
    let mut seen = vec![false; prn.len()];
    let mut stack = vec![seed];
    seen[seed] = true;
    while let Some(u) = stack.pop() {
        for f in prn.functions() {
            let v = f.apply(u);
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..prn.len()).filter(|&u| seen[u]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnetReport {
    /// Every invariant set, sorted by size and then lexicographically.
    pub invariant_sets: Vec<Vec<usize>>,
    /// Invariant sets with no proper invariant subset.
    pub irreducible_sets: Vec<Vec<usize>>,
    /// Unions and non-empty intersections stay in the family.
    pub lattice_closed: bool,
}

fn sort_family(family: &mut [Vec<usize>]) {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let sb: HashSet<usize> = b.iter().copied().collect();
    a.iter().copied().filter(|u| sb.contains(u)).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let sb: HashSet<usize> = b.iter().copied().collect();
    a.iter().all(|u| sb.contains(u))
}

/// All invariant subnetworks, generated from singleton closures.
pub fn invariant_subnetworks(prn: &Prn, cap: usize) -> Result<SubnetReport> {
    let mut generators: Vec<Vec<usize>> = (0..prn.len())
        .into_par_iter()
        .map(|u| closure(prn, u))
        .collect();
    sort_family(&mut generators);
    generators.dedup();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut family: Vec<Vec<usize>> = Vec::new();
    for g in &generators {
        let mut fresh = Vec::new();
        if seen.insert(g.clone()) {
            fresh.push(g.clone());
        }
        for s in &family {
            let u = union(s, g);
            if seen.insert(u.clone()) {
                fresh.push(u);
            }
        }
        family.extend(fresh);
        if family.len() > cap {
            return Err(Error::Capacity {
                what: "invariant subnetworks".into(),
                needed: family.len() as u128,
                cap: cap as u128,
            });
        }
    }
    sort_family(&mut family);

    // minimal sets are minimal closures
    let irreducible_sets: Vec<Vec<usize>> = generators
        .iter()
        .filter(|g| {
            !generators
                .iter()
                .any(|h| h.len() < g.len() && is_subset(h, g))
        })
        .cloned()
        .collect();

    let lattice_closed = lattice_closed(&family, &generators, &seen);
    Ok(SubnetReport {
        invariant_sets: family,
        irreducible_sets,
        lattice_closed,
    })
}

fn lattice_closed(
    family: &[Vec<usize>],
    generators: &[Vec<usize>],
    members: &HashSet<Vec<usize>>,
) -> bool {
    let closed = |a: &Vec<usize>, b: &Vec<usize>| {
        let i = intersection(a, b);
        members.contains(&union(a, b)) && (i.is_empty() || members.contains(&i))
    };
    if family.len() <= PAIRWISE_LATTICE_LIMIT {
        family
            .par_iter()
            .enumerate()
            .all(|(k, a)| family[k..].iter().all(|b| closed(a, b)))
    } else {
        // every member is a union of generators, so meets and joins against
        // the generators decide closure for the rest
        family
            .par_iter()
            .all(|a| generators.iter().all(|g| closed(a, g)))
    }
}

/// Every non-empty invariant subset by checking all `2^n - 1` candidates.
pub fn invariant_subsets_by_scan(prn: &Prn) -> Result<Vec<Vec<usize>>> {
    let n = prn.len();
    if n > MAX_SCAN_STATES {
        return Err(Error::Capacity {
            what: "subset scan".into(),
            needed: 1u128 << n,
            cap: 1u128 << MAX_SCAN_STATES,
        });
    }
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter_map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            is_invariant(prn, &subset)
                .ok()
                .filter(|&ok| ok)
                .map(|_| subset)
        })
        .collect();
    sort_family(&mut out);
    Ok(out)
}

/// Restriction to an invariant subset; states keep parent order.
pub fn induced_subnetwork(prn: &Prn, subset: &[usize]) -> Result<Prn> {
    if !is_invariant(prn, subset)? {
        return Err(Error::NotInvariant(format!(
            "{{{}}} is not closed under every function",
            subset_ids(prn, subset).join(", ")
        )));
    }
    let sorted: Vec<usize> = subset
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut local = vec![usize::MAX; prn.len()];
    for (k, &u) in sorted.iter().enumerate() {
        local[u] = k;
    }
    RawPrn {
        name: format!("{}-sub", prn.name()),
        states: subset_ids(prn, &sorted),
        functions: prn
            .functions()
            .iter()
            .map(|f| {
                Function::new(
                    f.name.clone(),
                    sorted.iter().map(|&u| local[f.apply(u)]).collect(),
                )
            })
            .collect(),
        probs: prn.probs().to_vec(),
    }
    .build()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionImage {
    pub image: Vec<usize>,
    pub invariant: bool,
    /// Every recurrent class of the chain lies inside the image.
    pub contains_recurrent_classes: bool,
}

/// Image of a projection, whether it is invariant, and whether it holds
/// every recurrent class.
pub fn projection_image_subnetwork(net: &Prn, pi: &StateMap) -> Result<ProjectionImage> {
    let check = is_projection(net, pi)?;
    if !check.is_projection {
        let why = if !check.idempotent {
            "map is not idempotent"
        } else {
            "map is not a homomorphism"
        };
        return Err(Error::NotProjection(why.into()));
    }
    let invariant = is_invariant(net, &check.image)?;
    let contains_recurrent_classes = recurrent_classes(&transition_matrix(net))
        .iter()
        .all(|class| is_subset(class, &check.image));
    Ok(ProjectionImage {
        image: check.image,
        invariant,
        contains_recurrent_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, fns: &[&[usize]]) -> Prn {
        let k = fns.len() as f64;
        RawPrn {
            name: "t".into(),
            states: (0..n).map(|i| format!("s{i}")).collect(),
            functions: fns
                .iter()
                .enumerate()
                .map(|(i, t)| Function::new(format!("f{i}"), t.to_vec()))
                .collect(),
            probs: vec![1.0 / k; fns.len()],
        }
        .build()
        .unwrap()
    }

    #[test]
    fn empty_subset_is_an_error() {
        let x = net(2, &[&[0, 1]]);
        assert!(is_invariant(&x, &[]).is_err());
    }

    #[test]
    fn identity_network_has_every_subset() {
        let x = net(4, &[&[0, 1, 2, 3]]);
        let rep = invariant_subnetworks(&x, DEFAULT_SUBNET_CAP).unwrap();
        assert_eq!(rep.invariant_sets.len(), 15);
        assert_eq!(
            rep.irreducible_sets,
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        assert!(rep.lattice_closed);
    }

    #[test]
    fn closure_family_matches_scan() {
        let x = net(5, &[&[1, 2, 0, 4, 4], &[0, 0, 3, 3, 2]]);
        let rep = invariant_subnetworks(&x, DEFAULT_SUBNET_CAP).unwrap();
        assert_eq!(rep.invariant_sets, invariant_subsets_by_scan(&x).unwrap());
    }

    #[test]
    fn family_cap_is_enforced() {
        let x = net(6, &[&[0, 1, 2, 3, 4, 5]]);
        assert!(matches!(
            invariant_subnetworks(&x, 10),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn induced_requires_invariance() {
        let x = net(3, &[&[1, 1, 0]]);
        assert!(matches!(
            induced_subnetwork(&x, &[2]),
            Err(Error::NotInvariant(_))
        ));
        let sub = induced_subnetwork(&x, &[1]).unwrap();
        assert_eq!(sub.states(), ["s1"]);
        assert_eq!(sub.functions()[0].table, vec![0]);
    }

    #[test]
    fn constant_projection_onto_fixed_point() {
        let x = net(3, &[&[1, 1, 0], &[2, 1, 1]]);
        let pi = StateMap::new(&x, &x, vec![1, 1, 1]).unwrap();
        let img = projection_image_subnetwork(&x, &pi).unwrap();
        assert_eq!(img.image, vec![1]);
        assert!(img.invariant);
        assert!(img.contains_recurrent_classes);
    }

    #[test]
    fn non_projection_is_an_error() {
        let x = net(2, &[&[0, 1]]);
        let swap = StateMap::new(&x, &x, vec![1, 0]).unwrap();
        assert!(matches!(
            projection_image_subnetwork(&x, &swap),
            Err(Error::NotProjection(_))
        ));
    }
}
