//! Virtually cyclic groups in canonical form.
//!
//! Every group handled here is an extension of a quotient model `Q` (trivial,
//! `Z` or the infinite dihedral group) by a finite normal subgroup `K`, and
//! every element is written uniquely as `k · σ(q)` with `k ∈ K` and `σ` a
//! fixed section of `Q`:
//!
//! * finite: `K = G`, `Q` trivial;
//! * orientable: `G = F ⋊_α Z`, `σ(n) = t^n`;
//! * nonorientable: `G = A ∗_C B` with `[A:C] = [B:C] = 2`, `K = C`,
//!   `Q = D∞`, and `σ` sends a dihedral element to the reduced alternating
//!   word in the chosen reflections `a ∈ A∖C`, `b ∈ B∖C`.
//!
//! `K` is the maximal finite normal subgroup in all three cases.

mod dihedral;
mod hom;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dihedral::Dihedral;
pub(crate) use dihedral::{AltWord, Letter};
pub use hom::{
    induced_hom_on_quotients, induced_hom_mod_cyclic, preimage_of_subgroup, GeneratorImages, QuotientImage, VcHom,
};

use crate::finite::{permutation_order, FiniteError, FiniteGroup, FiniteHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcError {
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error("alpha is not an automorphism of the finite part")]
    NotAutomorphism,
    #[error("embedding of C into {which} is not injective")]
    EmbeddingNotInjective { which: char },
    #[error("C does not have index 2 in {which}")]
    NotIndexTwo { which: char },
    #[error("reflection representative of {which} lies in the image of C")]
    ReflectionInSubgroup { which: char },
    #[error("embedding of C into {which} has the wrong source or target")]
    EmbeddingMismatch { which: char },
    #[error("element {0:?} is not an element of this group")]
    ElementOutOfRange(VcElement),
    #[error("group is neither Z nor the infinite dihedral group")]
    NotZorDinfty,
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("induced map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("preimage of the finite subgroup is infinite")]
    PreimageNotFinite,
    #[error("group is finite")]
    GroupFinite,
    #[error("cyclic subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("coset enumeration cap {cap} exceeded")]
    CosetCapExceeded { cap: usize },
    #[error("homomorphism is not injective")]
    NotInjective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VcClass {
    Finite,
    Orientable,
    Nonorientable,
}

impl fmt::Display for VcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VcClass::Finite => "finite",
            VcClass::Orientable => "orientable",
            VcClass::Nonorientable => "nonorientable",
        })
    }
}

/// `k · σ(dih)`: a finite-part index and a dihedral word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VcElement {
    pub fin: usize,
    pub dih: Dihedral,
}

impl VcElement {
    pub const fn finite(fin: usize) -> Self {
        VcElement { fin, dih: Dihedral::IDENTITY }
    }

    pub const fn orientable(fin: usize, n: i64) -> Self {
        VcElement { fin, dih: Dihedral::translation(n) }
    }

    pub const fn nonorientable(fin: usize, n: i64, flip: bool) -> Self {
        VcElement { fin, dih: Dihedral::new(n, flip) }
    }

    /// Key of the fixed total order used for canonical coset
    /// representatives: translation length, then sign, then the dihedral
    /// bit, then the finite part.
    pub fn order_key(&self) -> (u64, bool, bool, usize) {
        (self.dih.shift.unsigned_abs(), self.dih.shift < 0, self.dih.flip, self.fin)
    }
}

impl fmt::Debug for VcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}|{:?}>", self.fin, self.dih)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementOrder {
    Finite(usize),
    Infinite,
}

/// Data of a nonorientable group `A ∗_C B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Amalgam {
    pub a: Arc<FiniteGroup>,
    pub b: Arc<FiniteGroup>,
    pub c_in_a: FiniteHom,
    pub c_in_b: FiniteHom,
    pub refl_a: usize,
    pub refl_b: usize,
    phi_a: Vec<usize>,
    phi_b: Vec<usize>,
    sq_a: usize,
    sq_b: usize,
    /// Powers of conjugation by `ba` on C.
    psi: Vec<Vec<usize>>,
    /// Powers of conjugation by `ab` on C.
    psi_bar: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Shape {
    Finite,
    Orientable { alpha: Vec<usize>, alpha_powers: Vec<Vec<usize>> },
    Nonorientable(Box<Amalgam>),
}

/// A virtually cyclic group in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct VcGroup {
    kernel: Arc<FiniteGroup>,
    shape: Shape,
}

impl fmt::Debug for VcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VcGroup({}, |K|={})", self.class(), self.kernel.order())
    }
}

fn powers_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let order = permutation_order(perm);
    let mut out = Vec::with_capacity(order);
    let mut current: Vec<usize> = (0..perm.len()).collect();
    for _ in 0..order {
        out.push(current.clone());
        current = current.iter().map(|&x| perm[x]).collect();
    }
    out
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

impl VcGroup {
    pub fn finite(f: Arc<FiniteGroup>) -> Self {
        VcGroup { kernel: f, shape: Shape::Finite }
    }

    /// `F ⋊_α Z` where `t f t⁻¹ = α(f)`.
    pub fn orientable(f: Arc<FiniteGroup>, alpha: Vec<usize>) -> Result<Self, VcError> {
        let hom = FiniteHom::new(f.clone(), f.clone(), alpha.clone()).map_err(|_| VcError::NotAutomorphism)?;
        if !hom.is_injective() {
            return Err(VcError::NotAutomorphism);
        }
        let alpha_powers = powers_of(&alpha);
        Ok(VcGroup { kernel: f, shape: Shape::Orientable { alpha, alpha_powers } })
    }

    /// `A ∗_C B` with both embeddings of index two and chosen reflections.
    pub fn nonorientable(
        c_in_a: FiniteHom,
        c_in_b: FiniteHom,
        refl_a: usize,
        refl_b: usize,
    ) -> Result<Self, VcError> {
        let c = c_in_a.source().clone();
        if c_in_b.source() != &c {
            return Err(VcError::EmbeddingMismatch { which: 'B' });
        }
        let (a, b) = (c_in_a.target().clone(), c_in_b.target().clone());
        let conj_and_square = |emb: &FiniteHom, g: &FiniteGroup, r: usize, which: char| {
            if !emb.is_injective() {
                return Err(VcError::EmbeddingNotInjective { which });
            }
            if g.order() != 2 * c.order() {
                return Err(VcError::NotIndexTwo { which });
            }
            if r >= g.order() {
                return Err(VcError::ReflectionInSubgroup { which });
            }
            let image = emb.properties().image;
            if image.contains(r) {
                return Err(VcError::ReflectionInSubgroup { which });
            }
            // index two forces normality; checked anyway
            if !crate::finite::is_normal(g, &image) {
                return Err(VcError::NotIndexTwo { which });
            }
            let back = |y: usize| emb.preimage(y).expect("normal image");
            let phi: Vec<usize> = c.elements().map(|x| back(g.mul(g.mul(r, emb.apply(x)), g.inv(r)))).collect();
            Ok((phi, back(g.mul(r, r))))
        };
        let (phi_a, sq_a) = conj_and_square(&c_in_a, &a, refl_a, 'A')?;
        let (phi_b, sq_b) = conj_and_square(&c_in_b, &b, refl_b, 'B')?;
        let psi = powers_of(&compose(&phi_b, &phi_a));
        let psi_bar = powers_of(&compose(&phi_a, &phi_b));
        Ok(VcGroup {
            kernel: c,
            shape: Shape::Nonorientable(Box::new(Amalgam {
                a,
                b,
                c_in_a,
                c_in_b,
                refl_a,
                refl_b,
                phi_a,
                phi_b,
                sq_a,
                sq_b,
                psi,
                psi_bar,
            })),
        })
    }

    pub fn trivial() -> Self {
        Self::finite(Arc::new(FiniteGroup::trivial()))
    }

    pub fn cyclic(n: usize) -> Self {
        Self::finite(Arc::new(FiniteGroup::cyclic(n)))
    }

    /// The infinite cyclic group, as `{1} ⋊ Z`.
    pub fn integers() -> Self {
        Self::orientable(Arc::new(FiniteGroup::trivial()), vec![0]).expect("trivial automorphism")
    }

    /// `F × Z`.
    pub fn product_with_z(f: Arc<FiniteGroup>) -> Self {
        let alpha = f.elements().collect();
        Self::orientable(f, alpha).expect("identity automorphism")
    }

    /// `Z/2 ∗ Z/2` over the trivial group.
    pub fn infinite_dihedral() -> Self {
        let c = Arc::new(FiniteGroup::trivial());
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let emb = FiniteHom::new(c, z2, vec![0]).expect("trivial map");
        Self::nonorientable(emb.clone(), emb, 1, 1).expect("D∞ data")
    }

    pub fn class(&self) -> VcClass {
        match self.shape {
            Shape::Finite => VcClass::Finite,
            Shape::Orientable { .. } => VcClass::Orientable,
            Shape::Nonorientable(_) => VcClass::Nonorientable,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.class() == VcClass::Finite
    }

    /// The finite part `K`; the maximal finite normal subgroup.
    pub fn kernel(&self) -> &Arc<FiniteGroup> {
        &self.kernel
    }

    pub fn alpha(&self) -> Option<&[usize]> {
        match &self.shape {
            Shape::Orientable { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn amalgam(&self) -> Option<&Amalgam> {
        match &self.shape {
            Shape::Nonorientable(am) => Some(am),
            _ => None,
        }
    }

    /// Order of the automorphism by which the cyclic direction acts
    /// (1 for finite groups).
    pub fn twist_order(&self) -> usize {
        match &self.shape {
            Shape::Finite => 1,
            Shape::Orientable { alpha_powers, .. } => alpha_powers.len(),
            Shape::Nonorientable(am) => am.psi.len(),
        }
    }

    pub fn is_z_model(&self) -> bool {
        self.class() == VcClass::Orientable && self.kernel.order() == 1
    }

    pub fn is_dinfty_model(&self) -> bool {
        self.class() == VcClass::Nonorientable && self.kernel.order() == 1
    }

    pub fn identity(&self) -> VcElement {
        VcElement::finite(self.kernel.identity())
    }

    pub fn contains(&self, x: &VcElement) -> bool {
        x.fin < self.kernel.order()
            && match self.shape {
                Shape::Finite => x.dih.is_identity(),
                Shape::Orientable { .. } => !x.dih.flip,
                Shape::Nonorientable(_) => true,
            }
    }

    pub fn check(&self, x: &VcElement) -> Result<(), VcError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(VcError::ElementOutOfRange(*x))
        }
    }

    /// Canonical generators: generators of `K`, then `t` (orientable) or
    /// `a`, `b` (nonorientable).
    pub fn generators(&self) -> Vec<VcElement> {
        let mut gens: Vec<VcElement> = self.kernel.generators().iter().map(|&k| VcElement::finite(k)).collect();
        let e = self.kernel.identity();
        match self.shape {
            Shape::Finite => {}
            Shape::Orientable { .. } => gens.push(self.t()),
            Shape::Nonorientable(_) => {
                gens.push(VcElement::nonorientable(e, 0, true));
                gens.push(VcElement::nonorientable(e, 1, true));
            }
        }
        gens
    }

    /// The section of the generating translation: `t` or `ba`.
    pub fn t(&self) -> VcElement {
        VcElement::orientable(self.kernel.identity(), 1)
    }

    pub fn reflection_a(&self) -> VcElement {
        VcElement::nonorientable(self.kernel.identity(), 0, true)
    }

    pub fn reflection_b(&self) -> VcElement {
        VcElement::nonorientable(self.kernel.identity(), 1, true)
    }

    /// `σ(q) k σ(q)⁻¹`, as an automorphism of `K`.
    pub(crate) fn conj(&self, q: Dihedral, k: usize) -> usize {
        match &self.shape {
            Shape::Finite => k,
            Shape::Orientable { alpha_powers, .. } => {
                alpha_powers[q.shift.rem_euclid(alpha_powers.len() as i64) as usize][k]
            }
            Shape::Nonorientable(am) => am.conj_word(q.word(), k),
        }
    }

    /// The `K`-valued cocycle `σ(p)σ(q) = κ(p,q) σ(pq)`.
    fn cocycle(&self, p: Dihedral, q: Dihedral) -> usize {
        match &self.shape {
            Shape::Nonorientable(am) => am.cocycle(&self.kernel, p, q),
            _ => self.kernel.identity(),
        }
    }

    pub fn mul(&self, x: &VcElement, y: &VcElement) -> VcElement {
        let k = self.kernel.mul(x.fin, self.conj(x.dih, y.fin));
        VcElement { fin: self.kernel.mul(k, self.cocycle(x.dih, y.dih)), dih: x.dih * y.dih }
    }

    pub fn inv(&self, x: &VcElement) -> VcElement {
        let dih = x.dih.inv();
        // solve x.fin · conj(x.dih, k) · κ(x.dih, dih) = 1 for k
        let kappa = self.cocycle(x.dih, dih);
        let want = self.kernel.mul(self.kernel.inv(x.fin), self.kernel.inv(kappa));
        let fin = self
            .kernel
            .elements()
            .find(|&k| self.conj(x.dih, k) == want)
            .expect("conjugation is a bijection");
        VcElement { fin, dih }
    }

    pub fn pow(&self, x: &VcElement, n: i64) -> VcElement {
        let mut base = if n < 0 { self.inv(x) } else { *x };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a VcElement>) -> VcElement {
        xs.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn conjugate(&self, g: &VcElement, x: &VcElement) -> VcElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Exact element order. Translations of nonzero length have infinite
    /// order; everything else is torsion and its order is found by iteration.
    pub fn order(&self, x: &VcElement) -> ElementOrder {
        if x.dih.has_infinite_order() {
            return ElementOrder::Infinite;
        }
        let bound = 2 * self.kernel.order() * self.twist_order().max(1);
        let e = self.identity();
        let mut y = *x;
        for k in 1..=bound {
            if y == e {
                return ElementOrder::Finite(k);
            }
            y = self.mul(&y, x);
        }
        panic!("torsion element {x:?} exceeded the order bound {bound}");
    }

    /// The maximal finite normal subgroup together with the trichotomy class.
    pub fn max_finite_normal(&self) -> MaxFiniteNormal {
        MaxFiniteNormal {
            class: self.class(),
            members: self.kernel.elements().map(VcElement::finite).collect(),
        }
    }

    /// Quotient model `G / K` and its group.
    pub fn quotient_model(&self) -> QuotientModel {
        match self.class() {
            VcClass::Finite => QuotientModel::Trivial,
            VcClass::Orientable => QuotientModel::Z,
            VcClass::Nonorientable => QuotientModel::Dinfty,
        }
    }

    /// Projection `G → G/K` onto the quotient model: `k σ(q) ↦ q`.
    pub fn project_max_finite(&self, x: &VcElement) -> VcElement {
        VcElement { fin: 0, dih: x.dih }
    }

    /// The unique maximal infinite cyclic subgroup of `Z` or `D∞`.
    pub fn max_infinite_cyclic(&self) -> Result<CyclicSubgroup, VcError> {
        if self.is_z_model() {
            Ok(CyclicSubgroup::Whole)
        } else if self.is_dinfty_model() {
            Ok(CyclicSubgroup::Translations)
        } else {
            Err(VcError::NotZorDinfty)
        }
    }

    /// Projection of `Z` or `D∞` onto its quotient by the maximal infinite
    /// cyclic subgroup (trivial or `Z/2`).
    pub fn project_max_cyclic(&self, x: &VcElement) -> Result<VcElement, VcError> {
        match self.max_infinite_cyclic()? {
            CyclicSubgroup::Whole => Ok(VcElement::finite(0)),
            CyclicSubgroup::Translations => Ok(VcElement::finite(usize::from(x.dih.flip))),
        }
    }

    pub fn quotient_mod_cyclic(&self) -> Result<Arc<VcGroup>, VcError> {
        Ok(Arc::new(match self.max_infinite_cyclic()? {
            CyclicSubgroup::Whole => VcGroup::trivial(),
            CyclicSubgroup::Translations => VcGroup::cyclic(2),
        }))
    }

    /// Elements of word length at most `radius` over the canonical
    /// generators and their inverses, in BFS order.
    pub fn ball(&self, radius: usize) -> Vec<VcElement> {
        let mut steps = self.generators();
        steps.extend(self.generators().iter().map(|g| self.inv(g)));
        let mut seen: HashSet<VcElement> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut frontier = VecDeque::from([(self.identity(), 0usize)]);
        while let Some((x, d)) = frontier.pop_front() {
            if d == radius {
                continue;
            }
            for s in &steps {
                let y = self.mul(&x, s);
                if seen.insert(y) {
                    out.push(y);
                    frontier.push_back((y, d + 1));
                }
            }
        }
        out
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_shift: i64) -> VcElement {
        let fin = rng.gen_range(0..self.kernel.order());
        match self.shape {
            Shape::Finite => VcElement::finite(fin),
            Shape::Orientable { .. } => VcElement::orientable(fin, rng.gen_range(-max_shift..=max_shift)),
            Shape::Nonorientable(_) => {
                VcElement::nonorientable(fin, rng.gen_range(-max_shift..=max_shift), rng.gen_bool(0.5))
            }
        }
    }

    /// Elements enumerated in [`VcElement::order_key`] order with
    /// `|shift| <= max_abs` (all elements when finite).
    pub(crate) fn elements_up_to(&self, max_abs: u64) -> impl Iterator<Item = VcElement> + '_ {
        let (shifts, flips): (u64, &'static [bool]) = match self.shape {
            Shape::Finite => (0, &[false]),
            Shape::Orientable { .. } => (max_abs, &[false]),
            Shape::Nonorientable(_) => (max_abs, &[false, true]),
        };
        let order = self.kernel.order();
        (0..=shifts).flat_map(move |abs| {
            let signs: &'static [i64] = if abs == 0 { &[1] } else { &[1, -1] };
            signs.iter().flat_map(move |&sign| {
                flips.iter().flat_map(move |&flip| {
                    (0..order).map(move |fin| VcElement::nonorientable(fin, sign * abs as i64, flip))
                })
            })
        })
    }
}

impl Amalgam {
    fn conj_word(&self, w: AltWord, k: usize) -> usize {
        let j = (w.len / 2) as usize;
        match (w.first, w.len % 2) {
            (_, _) if w.len == 0 => k,
            (Letter::B, 0) => self.psi[j % self.psi.len()][k],
            (Letter::A, 0) => self.psi_bar[j % self.psi_bar.len()][k],
            (Letter::B, _) => self.psi[j % self.psi.len()][self.phi_b[k]],
            (Letter::A, _) => self.psi_bar[j % self.psi_bar.len()][self.phi_a[k]],
        }
    }

    fn square(&self, l: Letter) -> usize {
        match l {
            Letter::A => self.sq_a,
            Letter::B => self.sq_b,
        }
    }

    /// Cancels `xx` pairs at the junction of the two reduced words,
    /// collecting the squares moved to the left.
    fn cocycle(&self, c: &FiniteGroup, p: Dihedral, q: Dihedral) -> usize {
        let mut acc = c.identity();
        let (mut left, mut right) = (p.word(), q.word());
        while right.len > 0 {
            match left.last() {
                Some(l) if l == right.first => {
                    left = left.drop_last();
                    right = right.drop_first();
                    acc = c.mul(acc, self.conj_word(left, self.square(l)));
                }
                _ => break,
            }
        }
        acc
    }

    /// Coordinates of an element of `A` in the amalgam.
    pub fn embed_a(&self, x: usize) -> VcElement {
        embed_factor(&self.c_in_a, &self.a, self.refl_a, x, 0)
    }

    pub fn embed_b(&self, x: usize) -> VcElement {
        embed_factor(&self.c_in_b, &self.b, self.refl_b, x, 1)
    }
}

fn embed_factor(emb: &FiniteHom, g: &FiniteGroup, refl: usize, x: usize, shift: i64) -> VcElement {
    match emb.preimage(x) {
        Some(c) => VcElement::finite(c),
        None => {
            let c = emb.preimage(g.mul(x, g.inv(refl))).expect("index two");
            VcElement::nonorientable(c, shift, true)
        }
    }
}

/// Result of the trichotomy: the maximal finite normal subgroup (as elements)
/// and the class of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFiniteNormal {
    pub class: VcClass,
    pub members: Vec<VcElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientModel {
    Trivial,
    Z,
    Dinfty,
}

impl QuotientModel {
    pub fn group(self) -> VcGroup {
        match self {
            QuotientModel::Trivial => VcGroup::trivial(),
            QuotientModel::Z => VcGroup::integers(),
            QuotientModel::Dinfty => VcGroup::infinite_dihedral(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclicSubgroup {
    /// All of `Z`.
    Whole,
    /// `{(n, 0)}` inside `D∞`.
    Translations,
}

impl CyclicSubgroup {
    pub fn contains(self, x: &VcElement) -> bool {
        match self {
            CyclicSubgroup::Whole => true,
            CyclicSubgroup::Translations => !x.dih.flip,
        }
    }
}

/// A generator `t` of a normal infinite cyclic subgroup of finite index `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalCyclic {
    pub t: VcElement,
    pub index: usize,
}

/// Finds a normal infinite cyclic subgroup of finite index.
///
/// For `F ⋊_α Z` this is `⟨t^k⟩` with `k` the order of `α`. For `A ∗_C B`
/// the translation `(ba)^k` is raised until it centralises `C` and is
/// inverted by both reflections.
pub fn normal_cyclic_finder(g: &VcGroup) -> Result<NormalCyclic, VcError> {
    let k_order = g.kernel().order();
    let e = g.kernel().identity();
    let t = match g.class() {
        VcClass::Finite => return Err(VcError::GroupFinite),
        VcClass::Orientable => VcElement::orientable(e, g.twist_order() as i64),
        VcClass::Nonorientable => {
            let base = g.twist_order() as i64;
            let fits = |t: &VcElement| {
                let t_inv = g.inv(t);
                g.kernel().elements().all(|c| g.conjugate(t, &VcElement::finite(c)) == VcElement::finite(c))
                    && g.conjugate(&g.reflection_a(), t) == t_inv
                    && g.conjugate(&g.reflection_b(), t) == t_inv
            };
            (1..=2 * k_order as i64)
                .map(|j| VcElement::nonorientable(e, base * j, false))
                .find(fits)
                .ok_or_else(|| VcError::NotNormal("no power of ba is normal within the search bound".into()))?
        }
    };
    verify_normal_cyclic(g, &t)?;
    let flips = if g.class() == VcClass::Nonorientable { 2 } else { 1 };
    Ok(NormalCyclic { t, index: flips * k_order * t.dih.shift.unsigned_abs() as usize })
}

/// Conjugating `t` by every generator and inverse must give `t` or `t⁻¹`.
pub fn verify_normal_cyclic(g: &VcGroup, t: &VcElement) -> Result<(), VcError> {
    if t.fin != g.kernel().identity() || !t.dih.has_infinite_order() {
        return Err(VcError::NotNormal(format!("{t:?} is not a pure translation")));
    }
    let t_inv = g.inv(t);
    for s in g.generators() {
        for s in [s, g.inv(&s)] {
            let c = g.conjugate(&s, t);
            if c != *t && c != t_inv {
                return Err(VcError::NotNormal(format!("{s:?} conjugates {t:?} to {c:?}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
