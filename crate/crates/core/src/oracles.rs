//! Brute-force oracles used to cross-check the decision procedures.
//!
//! Nothing here calls the structural shortcuts it checks: the searches use
//! only group multiplication, inversion and bounded enumeration.

use std::collections::{BTreeSet, HashSet};

use crate::vc::{VcClass, VcElement, VcGroup};

const POWER_CAP: usize = 256;
const CLOSURE_CAP: usize = 1024;

/// Order of `x` found by repeated multiplication, if it is at most
/// `POWER_CAP`.
pub fn torsion_order(g: &VcGroup, x: &VcElement) -> Option<usize> {
    let e = g.identity();
    let mut y = *x;
    for k in 1..=POWER_CAP {
        if y == e {
            return Some(k);
        }
        y = g.mul(&y, x);
    }
    None
}

/// Subgroup generated by `seeds`, or `None` once it grows past the cap.
pub fn closure(g: &VcGroup, seeds: &[VcElement]) -> Option<HashSet<VcElement>> {
    let mut set: HashSet<VcElement> = HashSet::from([g.identity()]);
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for s in seeds {
            let y = g.mul(&x, s);
            if set.insert(y) {
                if set.len() > CLOSURE_CAP {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(set)
}

/// Normal closure of `seeds` under conjugation by the canonical generators.
pub fn normal_closure(g: &VcGroup, seeds: &[VcElement]) -> Option<HashSet<VcElement>> {
    let mut conjugators = g.generators();
    conjugators.extend(g.generators().iter().map(|s| g.inv(s)));
    let mut gens: Vec<VcElement> = seeds.to_vec();
    loop {
        let h = closure(g, &gens)?;
        let missing: Vec<VcElement> = h
            .iter()
            .flat_map(|x| conjugators.iter().map(move |s| (s, x)))
            .map(|(s, x)| g.conjugate(s, x))
            .filter(|c| !h.contains(c))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if missing.is_empty() {
            return Some(h);
        }
        gens.extend(missing);
    }
}

/// Result of the torsion-ball search for the maximal finite normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteNormalSearch {
    pub maximum: BTreeSet<VcElement>,
    pub class: VcClass,
    /// Every finite normal subgroup found is contained in the maximum.
    pub unique_maximum: bool,
    pub candidates: usize,
}

/// Enumerates the normal closures of the torsion elements in the
/// radius-`radius` ball, keeps the finite ones and joins them.
pub fn max_finite_normal_search(g: &VcGroup, radius: usize) -> Option<FiniteNormalSearch> {
    let ball = g.ball(radius);
    let torsion: Vec<VcElement> = ball.iter().copied().filter(|x| torsion_order(g, x).is_some()).collect();
    let mut finite_normals: Vec<HashSet<VcElement>> = Vec::new();
    for x in &torsion {
        if finite_normals.iter().any(|n| n.contains(x)) {
            continue;
        }
        if let Some(n) = normal_closure(g, &[*x]) {
            finite_normals.push(n);
        }
    }
    let all: Vec<VcElement> = finite_normals.iter().flatten().copied().collect();
    let maximum = normal_closure(g, &all)?;
    let unique_maximum = finite_normals.iter().all(|n| n.is_subset(&maximum));
    let class = if torsion.len() == ball.len() {
        VcClass::Finite
    } else if torsion.iter().any(|x| !maximum.contains(x)) {
        VcClass::Nonorientable
    } else {
        VcClass::Orientable
    };
    Some(FiniteNormalSearch {
        maximum: maximum.into_iter().collect(),
        class,
        unique_maximum,
        candidates: finite_normals.len(),
    })
}
