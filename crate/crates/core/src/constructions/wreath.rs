//! Embedding of an infinite virtually cyclic group into `Z ≀ S_m`.
//!
//! With `⟨t⟩` normal of index `m` and left transversal `r_0, …, r_{m-1}`,
//! `g` maps to `(a, σ)` where `g·r_j = r_{σ(j)}·t^{a_j}`.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;

use crate::vc::{normal_cyclic_finder, verify_normal_cyclic, NormalCyclic, VcElement, VcError, VcGroup};

/// An element `(a, σ)` of `Z^m ⋊ S_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub vector: Vec<i64>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn identity(m: usize) -> Self {
        WreathElement { vector: vec![0; m], perm: (0..m).collect() }
    }

    /// `(a, σ)(b, τ) = (c, σ∘τ)` with `c_j = a_{τ(j)} + b_j`.
    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        WreathElement {
            vector: other.perm.iter().zip(&other.vector).map(|(&tj, &bj)| self.vector[tj] + bj).collect(),
            perm: other.perm.iter().map(|&tj| self.perm[tj]).collect(),
        }
    }

    /// Order of the permutation part.
    pub fn perm_order(&self) -> usize {
        let mut x = self.perm.clone();
        let mut k = 1;
        while x.iter().enumerate().any(|(i, &j)| i != j) {
            x = x.iter().map(|&j| self.perm[j]).collect();
            k += 1;
        }
        k
    }
}

/// Data of the embedding `G → Z ≀ S_m`.
#[derive(Clone, Debug)]
pub struct WreathEmbedding {
    pub group: Arc<VcGroup>,
    pub t: VcElement,
    pub m: usize,
    pub transversal: Vec<VcElement>,
    /// Images of the generators of `G`.
    pub generator_images: Vec<(VcElement, WreathElement)>,
}

/// Embeds `G` using the normal cyclic subgroup `⟨t⟩`.
pub fn wreath_embed(g: Arc<VcGroup>, nc: &NormalCyclic) -> Result<WreathEmbedding, VcError> {
    verify_normal_cyclic(&g, &nc.t)?;
    let len = nc.t.dih.shift.unsigned_abs() as i64;
    let flips: &[bool] = if g.class() == crate::vc::VcClass::Nonorientable { &[false, true] } else { &[false] };
    let mut transversal = Vec::new();
    for &flip in flips {
        for n in 0..len {
            for fin in g.kernel().elements() {
                transversal.push(VcElement::nonorientable(fin, n, flip));
            }
        }
    }
    if transversal.len() != nc.index {
        return Err(VcError::NotNormal(format!("transversal has {} cosets, expected {}", transversal.len(), nc.index)));
    }
    let mut emb = WreathEmbedding { group: g.clone(), t: nc.t, m: nc.index, transversal, generator_images: Vec::new() };
    emb.generator_images = g.generators().into_iter().map(|s| (s, emb.apply(&s))).collect();
    Ok(emb)
}

/// Convenience wrapper running [`normal_cyclic_finder`] first.
pub fn wreath_embed_group(g: Arc<VcGroup>) -> Result<WreathEmbedding, VcError> {
    let nc = normal_cyclic_finder(&g)?;
    wreath_embed(g, &nc)
}

impl WreathEmbedding {
    /// `y = r_j · t^q`.
    pub fn decompose(&self, y: &VcElement) -> (usize, i64) {
        let g = &self.group;
        let len = self.t.dih.shift.abs();
        let step = g.mul(y, &g.inv(&self.t)).dih.shift - y.dih.shift;
        let rem = y.dih.shift.rem_euclid(len);
        let q = (rem - y.dih.shift) / step;
        let r = g.mul(y, &g.pow(&self.t, -q));
        let j = self.transversal.iter().position(|x| *x == r).expect("transversal covers every coset");
        (j, q)
    }

    pub fn apply(&self, x: &VcElement) -> WreathElement {
        let mut vector = Vec::with_capacity(self.m);
        let mut perm = Vec::with_capacity(self.m);
        for r in &self.transversal {
            let (j, q) = self.decompose(&self.group.mul(x, r));
            perm.push(j);
            vector.push(q);
        }
        WreathElement { vector, perm }
    }

    /// Checks `f(xy) = f(x)f(y)` on `pairs` random pairs.
    pub fn check_homomorphism<R: Rng + ?Sized>(&self, rng: &mut R, pairs: usize) -> Result<(), (VcElement, VcElement)> {
        for _ in 0..pairs {
            let x = self.group.random_element(rng, 6);
            let y = self.group.random_element(rng, 6);
            if self.apply(&self.group.mul(&x, &y)) != self.apply(&x).mul(&self.apply(&y)) {
                return Err((x, y));
            }
        }
        Ok(())
    }

    /// Distinct images on the word-metric ball of the given radius.
    pub fn injective_on_ball(&self, radius: usize) -> bool {
        let ball = self.group.ball(radius);
        let images: HashSet<WreathElement> = ball.iter().map(|x| self.apply(x)).collect();
        images.len() == ball.len()
    }
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::fixtures;

    fn embed(g: VcGroup) -> WreathEmbedding {
        wreath_embed_group(Arc::new(g)).unwrap()
    }

    #[test]
    fn integers() {
        let e = embed(VcGroup::integers());
        assert_eq!(e.m, 1);
        for n in -5..=5 {
            assert_eq!(e.apply(&VcElement::orientable(0, n)), WreathElement { vector: vec![n], perm: vec![0] });
        }
    }

    #[test]
    fn infinite_dihedral() {
        let g = VcGroup::infinite_dihedral();
        let e = embed(g.clone());
        assert_eq!(e.m, 2);
        assert_eq!(e.apply(&g.reflection_a()), WreathElement { vector: vec![0, 0], perm: vec![1, 0] });
        assert_eq!(e.apply(&g.t()), WreathElement { vector: vec![1, -1], perm: vec![0, 1] });
    }

    #[test]
    fn product_with_z2_has_small_permutations() {
        let g = VcGroup::product_with_z(Arc::new(crate::finite::FiniteGroup::cyclic(2)));
        let e = embed(g.clone());
        assert_eq!(e.m, 2);
        for x in g.ball(4) {
            assert!(e.apply(&x).perm_order() <= 2);
        }
    }

    #[test]
    fn corpus_embeddings() {
        let mut rng = StdRng::seed_from_u64(7);
        let infinite: Vec<VcGroup> = fixtures::vc_corpus().into_iter().filter(|g| !g.is_finite()).collect();
        assert!(infinite.len() >= 10);
        for g in infinite {
            let e = embed(g);
            assert_eq!(e.apply(&e.group.identity()), WreathElement::identity(e.m));
            e.check_homomorphism(&mut rng, 50).unwrap();
            assert!(e.injective_on_ball(3));
        }
    }
}
