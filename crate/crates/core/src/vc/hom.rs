use std::collections::HashMap;
use std::sync::Arc;

use super::{Dihedral, VcClass, VcElement, VcError, VcGroup};

/// Images of the canonical generators of a source group.
///
/// `finite` pairs a finite-part element with its image; the listed elements
/// must generate the finite part. `t` is required for orientable sources,
/// `a` and `b` for nonorientable ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorImages {
    pub finite: Vec<(usize, VcElement)>,
    pub t: Option<VcElement>,
    pub a: Option<VcElement>,
    pub b: Option<VcElement>,
}

impl GeneratorImages {
    pub fn orientable(finite: Vec<(usize, VcElement)>, t: VcElement) -> Self {
        GeneratorImages { finite, t: Some(t), ..Default::default() }
    }

    pub fn nonorientable(finite: Vec<(usize, VcElement)>, a: VcElement, b: VcElement) -> Self {
        GeneratorImages { finite, a: Some(a), b: Some(b), ..Default::default() }
    }
}

/// A validated homomorphism between virtually cyclic groups.
#[derive(Clone, Debug)]
pub struct VcHom {
    source: Arc<VcGroup>,
    target: Arc<VcGroup>,
    gens: GeneratorImages,
    fin_images: Vec<VcElement>,
    fin_lookup: HashMap<VcElement, usize>,
    // images of the section generators: t, or a, b, ba, ab
    t: Option<VcElement>,
    a: Option<VcElement>,
    b: Option<VcElement>,
    ba: Option<VcElement>,
    ab: Option<VcElement>,
}

impl PartialEq for VcHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.fin_images == other.fin_images
            && self.t == other.t
            && self.a == other.a
            && self.b == other.b
    }
}

/// How an injective map between infinite groups acts on quotient models:
/// the image of the generating translation is a translation by `m`, and for
/// nonorientable sources the image of `a` is the reflection `(p, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientImage {
    pub m: i64,
    pub p: Option<i64>,
}

impl VcHom {
    pub fn new(source: Arc<VcGroup>, target: Arc<VcGroup>, gens: GeneratorImages) -> Result<Self, VcError> {
        let k = source.kernel().clone();
        for (g, img) in &gens.finite {
            if *g >= k.order() {
                return Err(VcError::ElementOutOfRange(VcElement::finite(*g)));
            }
            target.check(img)?;
        }
        for img in [gens.t, gens.a, gens.b].iter().flatten() {
            target.check(img)?;
        }
        let missing = |what: &str| VcError::RelationViolated(format!("missing image of {what}"));
        let extra = |what: &str| VcError::RelationViolated(format!("unexpected image of {what}"));
        match source.class() {
            VcClass::Finite => {
                if gens.t.is_some() {
                    return Err(extra("t"));
                }
                if gens.a.is_some() || gens.b.is_some() {
                    return Err(extra("a reflection"));
                }
            }
            VcClass::Orientable => {
                if gens.t.is_none() {
                    return Err(missing("t"));
                }
                if gens.a.is_some() || gens.b.is_some() {
                    return Err(extra("a reflection"));
                }
            }
            VcClass::Nonorientable => {
                if gens.a.is_none() || gens.b.is_none() {
                    return Err(missing("a and b"));
                }
                if gens.t.is_some() {
                    return Err(extra("t"));
                }
            }
        }

        // extend to the finite part along BFS words
        let listed: Vec<usize> = gens.finite.iter().map(|(g, _)| *g).collect();
        let parent = k.spanning_words(&listed);
        let mut fin_images = vec![None; k.order()];
        fin_images[k.identity()] = Some(target.identity());
        let mut order: Vec<usize> = vec![k.identity()];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (g, img) in &gens.finite {
                let y = k.mul(x, *g);
                if fin_images[y].is_none() && parent[y] == Some((x, *g)) {
                    fin_images[y] = Some(target.mul(&fin_images[x].expect("visited"), img));
                    order.push(y);
                }
            }
            i += 1;
        }
        let fin_images: Vec<VcElement> = fin_images
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| VcError::RelationViolated("listed finite generators do not generate the finite part".into()))?;
        for (g, img) in &gens.finite {
            if fin_images[*g] != *img {
                return Err(VcError::RelationViolated(format!("finite part: inconsistent image for generator {g}")));
            }
        }
        for x in k.elements() {
            for y in k.elements() {
                if fin_images[k.mul(x, y)] != target.mul(&fin_images[x], &fin_images[y]) {
                    return Err(VcError::RelationViolated(format!("finite part: f({x}*{y}) != f({x})*f({y})")));
                }
            }
        }
        let mut fin_lookup = HashMap::new();
        for (x, img) in fin_images.iter().enumerate() {
            fin_lookup.entry(*img).or_insert(x);
        }

        let (ba, ab) = match (gens.a, gens.b) {
            (Some(a), Some(b)) => (Some(target.mul(&b, &a)), Some(target.mul(&a, &b))),
            _ => (None, None),
        };
        let hom = VcHom {
            source: source.clone(),
            target: target.clone(),
            fin_images,
            fin_lookup,
            t: gens.t,
            a: gens.a,
            b: gens.b,
            ba,
            ab,
            gens,
        };
        hom.check_section_relations()?;
        Ok(hom)
    }

    /// Checks `s k s⁻¹ = conj_s(k)` for every section generator `s` and every
    /// `k`, and `a² , b²` against their values in the finite part.
    fn check_section_relations(&self) -> Result<(), VcError> {
        let (src, tgt) = (&*self.source, &*self.target);
        let mut section_gens: Vec<(&str, VcElement, VcElement)> = Vec::new();
        if let Some(t) = self.t {
            section_gens.push(("t", src.t(), t));
        }
        if let (Some(a), Some(b)) = (self.a, self.b) {
            section_gens.push(("a", src.reflection_a(), a));
            section_gens.push(("b", src.reflection_b(), b));
        }
        for (name, s, img) in &section_gens {
            let img_inv = tgt.inv(img);
            for k in src.kernel().elements() {
                let conj = src.conjugate(s, &VcElement::finite(k));
                debug_assert!(conj.dih.is_identity());
                let lhs = tgt.mul(&tgt.mul(img, &self.fin_images[k]), &img_inv);
                if lhs != self.fin_images[conj.fin] {
                    return Err(VcError::RelationViolated(format!("{name}·{k}·{name}⁻¹ is not preserved")));
                }
            }
            if *name != "t" {
                let sq = src.mul(s, s);
                if tgt.mul(img, img) != self.fin_images[sq.fin] {
                    return Err(VcError::RelationViolated(format!("{name}² is not preserved")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(g: Arc<VcGroup>) -> Self {
        let gens = canonical_images(&g, |x| *x);
        VcHom::new(g.clone(), g, gens).expect("identity is a homomorphism")
    }

    pub fn source(&self) -> &Arc<VcGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VcGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &GeneratorImages {
        &self.gens
    }

    fn section_image(&self, d: Dihedral) -> VcElement {
        let tgt = &*self.target;
        match self.source.class() {
            VcClass::Finite => tgt.identity(),
            VcClass::Orientable => tgt.pow(&self.t.expect("orientable source"), d.shift),
            VcClass::Nonorientable => {
                let (ba, ab) = (self.ba.expect("reflections"), self.ab.expect("reflections"));
                let n = d.shift;
                match (d.flip, n) {
                    (false, n) if n >= 0 => tgt.pow(&ba, n),
                    (false, n) => tgt.pow(&ab, -n),
                    (true, n) if n >= 1 => tgt.mul(&tgt.pow(&ba, n - 1), &self.b.expect("b")),
                    (true, n) => tgt.mul(&tgt.pow(&ab, -n), &self.a.expect("a")),
                }
            }
        }
    }

    pub fn apply(&self, x: &VcElement) -> VcElement {
        debug_assert!(self.source.contains(x));
        self.target.mul(&self.fin_images[x.fin], &self.section_image(x.dih))
    }

    /// Image of the generating translation `t` (or `ba`), if the source is
    /// infinite.
    pub fn translation_image(&self) -> Option<VcElement> {
        match self.source.class() {
            VcClass::Finite => None,
            VcClass::Orientable => self.t,
            VcClass::Nonorientable => self.ba,
        }
    }

    pub fn is_injective_on_finite_part(&self) -> bool {
        let e = self.target.identity();
        self.source.kernel().elements().all(|k| k == self.source.kernel().identity() || self.fin_images[k] != e)
    }

    /// Injective iff injective on the maximal finite normal subgroup and
    /// (for infinite sources) the generating translation maps to an element
    /// of nonzero translation length.
    pub fn is_injective(&self) -> bool {
        self.is_injective_on_finite_part()
            && self.translation_image().is_none_or(|t| t.dih.has_infinite_order())
    }

    /// A nontrivial kernel element, when one exists.
    pub fn kernel_witness(&self) -> Option<VcElement> {
        let e = self.target.identity();
        let k = self.source.kernel();
        if let Some(x) = k.elements().find(|&x| x != k.identity() && self.fin_images[x] == e) {
            return Some(VcElement::finite(x));
        }
        let t_img = self.translation_image()?;
        match self.target.order(&t_img) {
            super::ElementOrder::Infinite => None,
            super::ElementOrder::Finite(j) => Some(self.source.pow(&self.source.t(), j as i64)),
        }
    }

    pub fn quotient_image(&self) -> Option<QuotientImage> {
        match self.source.class() {
            VcClass::Finite => None,
            VcClass::Orientable => Some(QuotientImage { m: self.t?.dih.shift, p: None }),
            VcClass::Nonorientable => {
                let (a, b) = (self.a?, self.b?);
                Some(QuotientImage { m: b.dih.shift - a.dih.shift, p: Some(a.dih.shift) })
            }
        }
    }

    /// `[target : image]`, or `None` when infinite. Requires injectivity.
    pub fn index_of_image(&self) -> Option<u64> {
        let (src, tgt) = (&*self.source, &*self.target);
        let (ks, kt) = (src.kernel().order() as u64, tgt.kernel().order() as u64);
        match (src.is_finite(), tgt.is_finite()) {
            (true, true) => Some(kt / ks),
            (true, false) => None,
            (false, true) => unreachable!("infinite group injected into a finite one"),
            (false, false) => {
                let m = self.quotient_image().expect("infinite source").m.unsigned_abs();
                let quotient_index = match (src.class(), tgt.class()) {
                    (VcClass::Orientable, VcClass::Nonorientable) => 2 * m,
                    _ => m,
                };
                Some(quotient_index * kt / ks)
            }
        }
    }

    /// The unique `s` with `f(s) = y`, if any. Requires injectivity.
    pub fn preimage(&self, y: &VcElement) -> Option<VcElement> {
        let src = &*self.source;
        let dih = match src.class() {
            VcClass::Finite => Dihedral::IDENTITY,
            VcClass::Orientable => {
                let m = self.t?.dih;
                if m.flip || m.shift == 0 || y.dih.flip || y.dih.shift % m.shift != 0 {
                    return None;
                }
                Dihedral::translation(y.dih.shift / m.shift)
            }
            VcClass::Nonorientable => {
                let (a, b) = (self.a?.dih, self.b?.dih);
                if !a.flip || !b.flip {
                    return None;
                }
                let m = b.shift - a.shift;
                let offset = if y.dih.flip { y.dih.shift - a.shift } else { y.dih.shift };
                if m == 0 || offset % m != 0 {
                    return None;
                }
                Dihedral::new(offset / m, y.dih.flip)
            }
        };
        let rest = self.target.mul(y, &self.target.inv(&self.section_image(dih)));
        self.fin_lookup.get(&rest).map(|&fin| VcElement { fin, dih })
    }

    pub fn in_image(&self, y: &VcElement) -> bool {
        self.preimage(y).is_some()
    }

    /// Canonical representative `r` of the left coset `x · f(source)` and
    /// the `s` with `x = r · f(s)`. The representative is the least element
    /// of the coset in [`VcElement::order_key`] order.
    pub fn left_coset_rep(&self, x: &VcElement, cap: usize) -> Result<(VcElement, VcElement), VcError> {
        let (src, tgt) = (&*self.source, &*self.target);
        if src.is_finite() {
            let (r, s) = src
                .kernel()
                .elements()
                .map(|s| (tgt.mul(x, &self.fin_images[s]), s))
                .min_by_key(|(y, _)| y.order_key())
                .expect("nonempty group");
            return Ok((r, VcElement::finite(src.kernel().inv(s))));
        }
        let bound = self.quotient_image().expect("infinite source").m.unsigned_abs();
        for (count, y) in tgt.elements_up_to(bound).enumerate() {
            if count >= cap {
                return Err(VcError::CosetCapExceeded { cap });
            }
            if let Some(s) = self.preimage(&tgt.mul(&tgt.inv(&y), x)) {
                return Ok((y, s));
            }
        }
        unreachable!("every coset of a finite-index image meets the search box")
    }

    /// Canonical left transversal of the image, in order. For images of
    /// infinite index the enumeration stops at `cap` representatives and
    /// reports truncation.
    pub fn left_transversal(&self, cap: usize) -> Result<(Vec<VcElement>, bool), VcError> {
        let (src, tgt) = (&*self.source, &*self.target);
        let bound = match (src.is_finite(), tgt.is_finite()) {
            (false, _) => self.quotient_image().expect("infinite source").m.unsigned_abs(),
            (true, true) => 0,
            (true, false) => u64::MAX,
        };
        let mut reps = Vec::new();
        for x in tgt.elements_up_to(bound) {
            if self.left_coset_rep(&x, usize::MAX)?.0 == x {
                if reps.len() == cap {
                    return Ok((reps, true));
                }
                reps.push(x);
            }
        }
        Ok((reps, false))
    }

    /// Brute-force injectivity on the radius-`radius` ball of the source.
    pub fn injective_on_ball(&self, radius: usize) -> bool {
        let mut seen = HashMap::new();
        for x in self.source.ball(radius) {
            if let Some(prev) = seen.insert(self.apply(&x), x) {
                if prev != x {
                    return false;
                }
            }
        }
        true
    }

    pub fn compose(&self, after: &VcHom) -> Result<VcHom, VcError> {
        let gens = canonical_images(&self.source, |x| after.apply(&self.apply(x)));
        VcHom::new(self.source.clone(), after.target.clone(), gens)
    }
}

/// Generator images of `f` on the canonical generators of `g`.
pub(crate) fn canonical_images(g: &VcGroup, f: impl Fn(&VcElement) -> VcElement) -> GeneratorImages {
    let finite = g.kernel().generators().iter().map(|&k| (k, f(&VcElement::finite(k)))).collect();
    match g.class() {
        VcClass::Finite => GeneratorImages { finite, ..Default::default() },
        VcClass::Orientable => GeneratorImages::orientable(finite, f(&g.t())),
        VcClass::Nonorientable => GeneratorImages::nonorientable(finite, f(&g.reflection_a()), f(&g.reflection_b())),
    }
}

/// `f⁻¹(S)` for `S` the maximal finite normal subgroup of the target, as a
/// list of source finite-part elements.
pub fn preimage_of_subgroup(f: &VcHom) -> Result<Vec<VcElement>, VcError> {
    if let Some(t) = f.translation_image() {
        if !t.dih.has_infinite_order() {
            return Err(VcError::PreimageNotFinite);
        }
    }
    let src = f.source();
    let members: Vec<VcElement> = src
        .kernel()
        .elements()
        .map(VcElement::finite)
        .filter(|x| f.apply(x).dih.is_identity())
        .collect();
    Ok(members)
}

/// The map induced on quotients by maximal finite normal subgroups:
/// `G_s / f⁻¹(K_t) → G_t / K_t`, between quotient models.
pub fn induced_hom_on_quotients(f: &VcHom) -> Result<VcHom, VcError> {
    let (src, tgt) = (f.source(), f.target());
    for k in src.kernel().elements() {
        let img = f.apply(&VcElement::finite(k));
        if !img.dih.is_identity() {
            return Err(VcError::NotWellDefined(format!(
                "finite-part element {k} maps to {img:?} outside the maximal finite normal subgroup"
            )));
        }
    }
    let qs = Arc::new(src.quotient_model().group());
    let qt = Arc::new(tgt.quotient_model().group());
    let gens = canonical_images(&qs, |x| {
        let lifted = VcElement { fin: src.kernel().identity(), dih: x.dih };
        tgt.project_max_finite(&f.apply(&lifted))
    });
    VcHom::new(qs, qt, gens)
}

/// The map induced on quotients by maximal infinite cyclic subgroups, for
/// `f` between `Z`/`D∞` models.
pub fn induced_hom_mod_cyclic(f: &VcHom) -> Result<VcHom, VcError> {
    let (src, tgt) = (f.source(), f.target());
    let cyc_src = src.max_infinite_cyclic()?;
    let cyc_tgt = tgt.max_infinite_cyclic()?;
    let t_img = f.apply(&src.t());
    if !cyc_tgt.contains(&t_img) {
        return Err(VcError::NotWellDefined(format!(
            "translation maps to {t_img:?} outside the maximal infinite cyclic subgroup"
        )));
    }
    let qs = src.quotient_mod_cyclic()?;
    let qt = tgt.quotient_mod_cyclic()?;
    let finite = match cyc_src {
        super::CyclicSubgroup::Whole => Vec::new(),
        super::CyclicSubgroup::Translations => {
            vec![(1, tgt.project_max_cyclic(&f.apply(&src.reflection_a()))?)]
        }
    };
    VcHom::new(qs, qt, GeneratorImages { finite, ..Default::default() })
}
