use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;
use crate::fixtures;
use crate::oracles;

fn z() -> Arc<VcGroup> {
    Arc::new(VcGroup::integers())
}

fn dinf() -> Arc<VcGroup> {
    Arc::new(VcGroup::infinite_dihedral())
}

fn z_times_z2() -> Arc<VcGroup> {
    Arc::new(VcGroup::product_with_z(Arc::new(FiniteGroup::cyclic(2))))
}

fn z3_inversion() -> Arc<VcGroup> {
    Arc::new(VcGroup::orientable(Arc::new(FiniteGroup::cyclic(3)), vec![0, 2, 1]).unwrap())
}

/// Orientable multiplication by rewriting: expand `(f, n)` into the letter
/// sequence `f t^n`, then bubble every finite letter left past `t^{±1}`
/// using `t f = α(f) t` and `t⁻¹ f = α⁻¹(f) t⁻¹`.
fn orientable_by_rewriting(g: &VcGroup, x: &VcElement, y: &VcElement) -> VcElement {
    #[derive(Clone, Copy, PartialEq)]
    enum L {
        F(usize),
        T(i64),
    }
    let alpha = g.alpha().unwrap();
    let f = g.kernel();
    let alpha_inv: Vec<usize> = f.elements().map(|k| alpha.iter().position(|&a| a == k).unwrap()).collect();
    let mut word = vec![L::F(x.fin)];
    word.extend(std::iter::repeat_n(L::T(x.dih.shift.signum()), x.dih.shift.unsigned_abs() as usize));
    word.push(L::F(y.fin));
    word.extend(std::iter::repeat_n(L::T(y.dih.shift.signum()), y.dih.shift.unsigned_abs() as usize));
    loop {
        let Some(i) = (0..word.len().saturating_sub(1)).find(|&i| matches!((word[i], word[i + 1]), (L::T(_), L::F(_)))) else {
            break;
        };
        let (L::T(s), L::F(k)) = (word[i], word[i + 1]) else { unreachable!() };
        word[i] = L::F(if s > 0 { alpha[k] } else { alpha_inv[k] });
        word[i + 1] = L::T(s);
    }
    let mut fin = f.identity();
    let mut n = 0;
    for l in word {
        match l {
            L::F(k) => fin = f.mul(fin, k),
            L::T(s) => n += s,
        }
    }
    VcElement::orientable(fin, n)
}

#[test]
fn identity_and_dinfty_reflection() {
    let g = dinf();
    let x = VcElement::nonorientable(0, 5, true);
    assert_eq!(g.mul(&g.identity(), &x), x);
    let s = VcElement::nonorientable(0, 0, true);
    assert_eq!(g.mul(&s, &s), g.identity());
}

#[test]
fn orientable_product_cancels() {
    let g = z_times_z2();
    let x = VcElement::orientable(1, 3);
    let y = VcElement::orientable(1, -3);
    assert_eq!(g.mul(&x, &y), g.identity());
    assert_eq!(orientable_by_rewriting(&g, &x, &y), g.identity());
}

#[test]
fn orientable_multiplication_matches_rewriting() {
    let mut rng = StdRng::seed_from_u64(7);
    for g in [z_times_z2(), z3_inversion(), Arc::new(fixtures::s3_twisted_by_conjugation())] {
        for _ in 0..200 {
            let x = g.random_element(&mut rng, 4);
            let y = g.random_element(&mut rng, 4);
            assert_eq!(g.mul(&x, &y), orientable_by_rewriting(&g, &x, &y));
        }
    }
}

#[test]
fn factor_embeddings_are_homomorphisms() {
    for g in fixtures::vc_corpus().into_iter().filter(|g| g.class() == VcClass::Nonorientable) {
        let am = g.amalgam().unwrap();
        for x in am.a.elements() {
            for y in am.a.elements() {
                assert_eq!(g.mul(&am.embed_a(x), &am.embed_a(y)), am.embed_a(am.a.mul(x, y)));
            }
        }
        for x in am.b.elements() {
            for y in am.b.elements() {
                assert_eq!(g.mul(&am.embed_b(x), &am.embed_b(y)), am.embed_b(am.b.mul(x, y)));
            }
        }
        assert_eq!(am.embed_a(am.refl_a), g.reflection_a());
        assert_eq!(am.embed_b(am.refl_b), g.reflection_b());
    }
}

#[test]
fn group_axioms_on_corpus() {
    let mut rng = StdRng::seed_from_u64(11);
    for g in fixtures::vc_corpus() {
        for _ in 0..100 {
            let (x, y, w) = (g.random_element(&mut rng, 3), g.random_element(&mut rng, 3), g.random_element(&mut rng, 3));
            assert_eq!(g.mul(&g.mul(&x, &y), &w), g.mul(&x, &g.mul(&y, &w)), "{g:?}");
            assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
            assert_eq!(g.mul(&g.inv(&x), &x), g.identity());
            assert_eq!(g.project_max_finite(&g.mul(&x, &y)).dih, x.dih * y.dih);
        }
    }
}

#[test]
fn element_orders() {
    assert_eq!(dinf().order(&dinf().identity()), ElementOrder::Finite(1));
    let g = dinf();
    let r = VcElement::nonorientable(0, 5, true);
    assert_eq!(g.mul(&r, &r), g.identity());
    assert_eq!(g.order(&r), ElementOrder::Finite(2));
    assert_eq!(z3_inversion().order(&VcElement::orientable(1, 0)), ElementOrder::Finite(3));
    assert_eq!(z3_inversion().order(&VcElement::orientable(1, 1)), ElementOrder::Infinite);
}

#[test]
fn trichotomy_examples() {
    let z6 = VcGroup::cyclic(6);
    let m = z6.max_finite_normal();
    assert_eq!(m.class, VcClass::Finite);
    assert_eq!(m.members.len(), 6);

    let m = z().max_finite_normal();
    assert_eq!((m.class, m.members.len()), (VcClass::Orientable, 1));

    let m = dinf().max_finite_normal();
    assert_eq!((m.class, m.members.len()), (VcClass::Nonorientable, 1));
    let search = oracles::max_finite_normal_search(&dinf(), 4).unwrap();
    assert_eq!(search.maximum.len(), 1);
    assert_eq!(search.class, VcClass::Nonorientable);
}

#[test]
fn quotient_by_max_finite_has_kernel_k() {
    assert_eq!(VcGroup::cyclic(4).quotient_model(), QuotientModel::Trivial);
    let g = z_times_z2();
    assert_eq!(g.quotient_model(), QuotientModel::Z);
    // fibre of 0 under (f, n) ↦ n is exactly the finite part, all torsion
    for x in g.ball(4) {
        let in_kernel = g.project_max_finite(&x).dih.is_identity();
        assert_eq!(in_kernel, x.dih.shift == 0);
        if in_kernel {
            assert!(matches!(g.order(&x), ElementOrder::Finite(_)));
        }
    }
    assert_eq!(dinf().quotient_model(), QuotientModel::Dinfty);
}

#[test]
fn max_infinite_cyclic_subgroups() {
    assert_eq!(z().max_infinite_cyclic(), Ok(CyclicSubgroup::Whole));
    assert_eq!(dinf().max_infinite_cyclic(), Ok(CyclicSubgroup::Translations));
    assert_eq!(VcGroup::cyclic(2).max_infinite_cyclic(), Err(VcError::NotZorDinfty));
    assert_eq!(z_times_z2().max_infinite_cyclic(), Err(VcError::NotZorDinfty));

    let g = dinf();
    let mut rng = StdRng::seed_from_u64(3);
    let mut sampled = 0;
    while sampled < 100 {
        let x = g.random_element(&mut rng, 20);
        if g.order(&x) != ElementOrder::Infinite {
            continue;
        }
        sampled += 1;
        for k in -3..=3 {
            assert!(CyclicSubgroup::Translations.contains(&g.pow(&x, k)));
        }
    }
}

fn dinf_doubling() -> VcHom {
    // t = ba ↦ (2,0), s = a ↦ (1,1), hence b = t·a ↦ (3,1)
    let g = dinf();
    VcHom::new(
        g.clone(),
        g,
        GeneratorImages::nonorientable(vec![], VcElement::nonorientable(0, 1, true), VcElement::nonorientable(0, 3, true)),
    )
    .unwrap()
}

#[test]
fn hom_examples() {
    for g in fixtures::vc_corpus().into_iter().take(20) {
        let g = Arc::new(g);
        let id = VcHom::identity(g.clone());
        assert!(id.is_injective());
        for x in g.ball(2) {
            assert_eq!(id.apply(&x), x);
        }
    }

    let f = dinf_doubling();
    let t = f.source().t();
    assert_eq!(f.apply(&t), VcElement::nonorientable(0, 2, false));
    let s = f.source().reflection_a();
    // s t s = t⁻¹ survives
    let lhs = f.target().mul(&f.target().mul(&f.apply(&s), &f.apply(&t)), &f.apply(&s));
    assert_eq!(lhs, f.target().inv(&f.apply(&t)));

    let g = VcHom::new(z(), z_times_z2(), GeneratorImages::orientable(vec![], VcElement::orientable(1, 1))).unwrap();
    assert_eq!(z_times_z2().order(&g.apply(&z().t())), ElementOrder::Infinite);

    let bad = VcHom::new(
        Arc::new(VcGroup::cyclic(2)),
        z(),
        GeneratorImages { finite: vec![(1, VcElement::orientable(0, 1))], ..Default::default() },
    );
    assert!(matches!(bad, Err(VcError::RelationViolated(_))));

    // a ↦ a, b ↦ a⁻... a reflection must square to the identity in D∞
    let bad = VcHom::new(
        dinf(),
        dinf(),
        GeneratorImages::nonorientable(vec![], VcElement::nonorientable(0, 1, false), VcElement::nonorientable(0, 0, true)),
    );
    assert!(matches!(bad, Err(VcError::RelationViolated(_))));
}

#[test]
fn injectivity_decision_and_ball_oracle() {
    let id = VcHom::identity(dinf());
    assert!(id.is_injective() && id.injective_on_ball(8));

    let kill = VcHom::new(z(), z(), GeneratorImages::orientable(vec![], VcElement::orientable(0, 0))).unwrap();
    assert!(!kill.is_injective());
    assert!(!kill.injective_on_ball(8));
    assert!(kill.kernel_witness().is_some());

    let f = dinf_doubling();
    assert!(f.is_injective());
    assert!(f.injective_on_ball(8));

    // Z×Z/2 → Z, (f, n) ↦ n kills the Z/2
    let proj = VcHom::new(z_times_z2(), z(), GeneratorImages::orientable(vec![(1, VcElement::orientable(0, 0))], VcElement::orientable(0, 1))).unwrap();
    assert!(!proj.is_injective());
    assert!(!proj.injective_on_ball(8));
    assert_eq!(proj.kernel_witness(), Some(VcElement::orientable(1, 0)));
}

#[test]
fn preimages_of_max_finite_normal() {
    let id = VcHom::identity(dinf());
    assert_eq!(preimage_of_subgroup(&id).unwrap(), vec![dinf().identity()]);

    let f = VcHom::new(z(), z_times_z2(), GeneratorImages::orientable(vec![], VcElement::orientable(1, 1))).unwrap();
    assert_eq!(preimage_of_subgroup(&f).unwrap(), vec![z().identity()]);

    let id = VcHom::identity(z_times_z2());
    assert_eq!(preimage_of_subgroup(&id).unwrap(), vec![VcElement::finite(0), VcElement::finite(1)]);

    let kill = VcHom::new(z(), z(), GeneratorImages::orientable(vec![], VcElement::orientable(0, 0))).unwrap();
    assert_eq!(preimage_of_subgroup(&kill), Err(VcError::PreimageNotFinite));
}

#[test]
fn induced_maps_on_quotients() {
    let f = dinf_doubling();
    let q = induced_hom_on_quotients(&f).unwrap();
    assert!(q.is_injective());
    assert_eq!(q.apply(&q.source().t()), VcElement::nonorientable(0, 2, false));

    let c = induced_hom_mod_cyclic(&f).unwrap();
    assert_eq!(c.source().kernel().order(), 2);
    assert_eq!(c.apply(&VcElement::finite(1)), VcElement::finite(1));
    assert!(c.is_injective());

    let g = VcHom::new(z(), z_times_z2(), GeneratorImages::orientable(vec![], VcElement::orientable(1, 1))).unwrap();
    let q = induced_hom_on_quotients(&g).unwrap();
    assert_eq!(q.apply(&VcElement::orientable(0, 5)), VcElement::orientable(0, 5));
    assert!(q.is_injective());

    // a map sending the finite part outside the target's finite part
    let to_reflection = VcHom::new(
        Arc::new(VcGroup::cyclic(2)),
        dinf(),
        GeneratorImages { finite: vec![(1, VcElement::nonorientable(0, 0, true))], ..Default::default() },
    )
    .unwrap();
    assert!(matches!(induced_hom_on_quotients(&to_reflection), Err(VcError::NotWellDefined(_))));
}

#[test]
fn preimage_and_coset_reps_agree_with_search() {
    let maps = [
        dinf_doubling(),
        VcHom::new(z(), z(), GeneratorImages::orientable(vec![], VcElement::orientable(0, 3))).unwrap(),
        VcHom::new(z(), z_times_z2(), GeneratorImages::orientable(vec![], VcElement::orientable(1, 2))).unwrap(),
        VcHom::new(z(), dinf(), GeneratorImages::orientable(vec![], VcElement::nonorientable(0, -2, false))).unwrap(),
    ];
    for f in &maps {
        let (src, tgt) = (f.source(), f.target());
        let image: Vec<(VcElement, VcElement)> = src.ball(10).into_iter().map(|s| (f.apply(&s), s)).collect();
        for y in tgt.ball(3) {
            let found = image.iter().find(|(fy, _)| *fy == y).map(|(_, s)| *s);
            assert_eq!(f.preimage(&y), found, "{y:?}");
        }
        let (reps, truncated) = f.left_transversal(10_000).unwrap();
        assert!(!truncated);
        assert_eq!(reps.len() as u64, f.index_of_image().unwrap());
        for x in tgt.ball(4) {
            let (r, s) = f.left_coset_rep(&x, 10_000).unwrap();
            assert_eq!(tgt.mul(&r, &f.apply(&s)), x);
            assert!(reps.contains(&r));
            // nothing smaller in the coset within the search window
            for (fy, _) in &image {
                assert!(tgt.mul(&x, fy).order_key() >= r.order_key());
            }
        }
    }
}

#[test]
fn infinite_index_transversal_truncates() {
    let f = VcHom::new(Arc::new(VcGroup::trivial()), z(), GeneratorImages::default()).unwrap();
    assert_eq!(f.index_of_image(), None);
    let (reps, truncated) = f.left_transversal(5).unwrap();
    assert!(truncated);
    assert_eq!(reps.len(), 5);
    assert_eq!(reps[0], z().identity());
}

#[test]
fn normal_cyclic_subgroups() {
    let nc = normal_cyclic_finder(&z()).unwrap();
    assert_eq!((nc.t, nc.index), (VcElement::orientable(0, 1), 1));
    let nc = normal_cyclic_finder(&z_times_z2()).unwrap();
    assert_eq!((nc.t, nc.index), (VcElement::orientable(0, 1), 2));
    let nc = normal_cyclic_finder(&dinf()).unwrap();
    assert_eq!((nc.t, nc.index), (VcElement::nonorientable(0, 1, false), 2));
    assert_eq!(normal_cyclic_finder(&VcGroup::cyclic(3)), Err(VcError::GroupFinite));
    for g in fixtures::vc_corpus().into_iter().filter(|g| !g.is_finite()) {
        let nc = normal_cyclic_finder(&g).unwrap();
        assert!(verify_normal_cyclic(&g, &nc.t).is_ok());
    }
}

#[test]
fn bad_nonorientable_data_is_rejected() {
    let c = Arc::new(FiniteGroup::cyclic(2));
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let emb = FiniteHom::new(c.clone(), z4.clone(), vec![0, 2]).unwrap();
    assert_eq!(VcGroup::nonorientable(emb.clone(), emb.clone(), 2, 1), Err(VcError::ReflectionInSubgroup { which: 'A' }));
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let small = FiniteHom::new(c.clone(), z2, vec![0, 1]).unwrap();
    assert_eq!(VcGroup::nonorientable(emb, small, 1, 1), Err(VcError::NotIndexTwo { which: 'B' }));
    assert_eq!(VcGroup::orientable(z4, vec![0, 0, 0, 0]), Err(VcError::NotAutomorphism));
}
