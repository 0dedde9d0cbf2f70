use std::sync::Arc;

use ggk_core::constructions::certificate::mutate;
use ggk_core::constructions::wreath::wreath_embed_group;
use ggk_core::constructions::{certify_fjcw, check_certificate, quotient_by_max_finite_normal};
use ggk_core::doc::InputDocument;
use ggk_core::fixtures;
use ggk_core::gog::{infinite_edge_reduction, GraphOfGroups};
use ggk_core::pi1::{inverse_word, random_word, reduce, reduce_with_strategy, Strategy};
use ggk_core::tree::{act, TreeVertex};
use ggk_core::vc::VcGroup;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn corpus() -> Vec<VcGroup> {
    fixtures::vc_corpus()
}

fn gogs() -> Vec<GraphOfGroups> {
    fixtures::gog_corpus()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(idx in 0usize..1000, seed in any::<u64>()) {
        let groups = corpus();
        let g = &groups[idx % groups.len()];
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y, z) = (g.random_element(&mut rng, 6), g.random_element(&mut rng, 6), g.random_element(&mut rng, 6));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        prop_assert_eq!(g.mul(&g.identity(), &x), x);
    }

    #[test]
    fn reduce_is_canonical(idx in 0usize..1000, seed in any::<u64>(), len in 0usize..=12) {
        let all = gogs();
        let gog = &all[idx % all.len()];
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random_word(gog, &mut rng, len, 4);
        let nf = reduce(gog, &w).unwrap();
        prop_assert_eq!(&reduce(gog, &nf.to_word(gog)).unwrap(), &nf);
        prop_assert_eq!(&reduce_with_strategy(gog, &w, Strategy::Rightmost).unwrap(), &nf);
        let mut ww = w.clone();
        ww.extend(inverse_word(gog, &w));
        prop_assert!(reduce(gog, &ww).unwrap().is_identity(gog));
    }

    #[test]
    fn action_is_a_left_action(idx in 0usize..1000, seed in any::<u64>()) {
        let all = gogs();
        let gog = &all[idx % all.len()];
        let mut rng = StdRng::seed_from_u64(seed);
        let x = TreeVertex::base(gog, gog.vertex_count() - 1).unwrap();
        let u = random_word(gog, &mut rng, 5, 3);
        let v = random_word(gog, &mut rng, 5, 3);
        let mut uv = u.clone();
        uv.extend(v.iter().copied());
        prop_assert_eq!(act(gog, &uv, &x).unwrap(), act(gog, &u, &act(gog, &v, &x).unwrap()).unwrap());
        let back = act(gog, &inverse_word(gog, &u), &act(gog, &u, &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn wreath_is_a_homomorphism(idx in 0usize..1000, seed in any::<u64>()) {
        let groups: Vec<VcGroup> = corpus().into_iter().filter(|g| !g.is_finite()).collect();
        let g = Arc::new(groups[idx % groups.len()].clone());
        let e = wreath_embed_group(g.clone()).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y) = (g.random_element(&mut rng, 8), g.random_element(&mut rng, 8));
        prop_assert_eq!(e.apply(&g.mul(&x, &y)), e.apply(&x).mul(&e.apply(&y)));
    }

    #[test]
    fn mutated_certificates_are_rejected(idx in 0usize..1000, seed in any::<u64>(), kind in 0usize..mutate::KINDS, rehash in any::<bool>()) {
        let all = gogs();
        let c = certify_fjcw(&all[idx % all.len()]).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert!(check_certificate(&mutate::mutate(&c, &mut rng, kind, rehash)).is_err());
    }
}

#[test]
fn documents_round_trip() {
    for gog in gogs() {
        let text = InputDocument::from_gog(&gog).to_json_pretty();
        let again = InputDocument::from_json(&text).unwrap().to_gog().unwrap();
        assert_eq!(InputDocument::from_gog(&again).to_json_pretty(), text);
    }
}

#[test]
fn quotients_of_reduction_pieces_are_torsion_free_models() {
    for gog in gogs() {
        for piece in infinite_edge_reduction(&gog).0 {
            if (0..piece.vertex_count()).any(|v| piece.vertex_group(v).is_finite()) {
                continue;
            }
            let res = quotient_by_max_finite_normal(&piece).unwrap();
            for v in 0..piece.vertex_count() {
                let g = res.gog.vertex_group(v);
                assert!(g.is_z_model() || g.is_dinfty_model());
            }
        }
    }
}
