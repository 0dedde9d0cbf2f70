//! Sample groups and graphs of groups used by tests, examples and the CLI.

use std::sync::Arc;

use crate::finite::{FiniteGroup, FiniteHom};
use crate::gog::{GogSpec, GraphOfGroups};
use crate::vc::{GeneratorImages, VcElement, VcGroup};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Z/n ⋊ Z` with `t` acting by multiplication by the unit `u`.
pub fn cyclic_twisted(n: usize, u: usize) -> VcGroup {
    let alpha = (0..n).map(|k| (u * k) % n).collect();
    VcGroup::orientable(Arc::new(FiniteGroup::cyclic(n)), alpha).expect("unit gives an automorphism")
}

/// `S3 ⋊ Z` with `t` acting by conjugation by a transposition.
pub fn s3_twisted_by_conjugation() -> VcGroup {
    let s3 = Arc::new(FiniteGroup::dihedral(3));
    let r = 3;
    let alpha = s3.elements().map(|x| s3.mul(s3.mul(r, x), s3.inv(r))).collect();
    VcGroup::orientable(s3, alpha).expect("inner automorphism")
}

/// Index-two overgroups of `Z/n`, as `(embedding, reflection)`:
/// `Z/2n`, the dihedral group of order `2n`, and `Z/n × Z/2`.
pub fn index_two_extensions(n: usize) -> Vec<(FiniteHom, usize)> {
    let c = Arc::new(FiniteGroup::cyclic(n));
    let z2n = Arc::new(FiniteGroup::cyclic(2 * n));
    let dn = Arc::new(FiniteGroup::dihedral(n));
    let prod = Arc::new(FiniteGroup::direct_product(&c, &FiniteGroup::cyclic(2)));
    vec![
        (FiniteHom::new(c.clone(), z2n, (0..n).map(|k| 2 * k).collect()).expect("doubling"), 1),
        (FiniteHom::new(c.clone(), dn, (0..n).collect()).expect("rotations"), n),
        (FiniteHom::new(c, prod, (0..n).map(|k| 2 * k).collect()).expect("first factor"), 1),
    ]
}

/// `A ∗_{Z/n} B` for the `i`-th and `j`-th extensions of
/// [`index_two_extensions`].
pub fn cyclic_amalgam(n: usize, i: usize, j: usize) -> VcGroup {
    let ext = index_two_extensions(n);
    let (ea, ra) = ext[i].clone();
    let (eb, rb) = ext[j].clone();
    VcGroup::nonorientable(ea, eb, ra, rb).expect("index-two data")
}

/// `S3 ∗_{Z/3} S3`, both copies containing `Z/3` as the rotations.
pub fn s3_amalgam() -> VcGroup {
    cyclic_amalgam(3, 1, 1)
}

/// A corpus of virtually cyclic groups with finite part of order at most 16.
pub fn vc_corpus() -> Vec<VcGroup> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(VcGroup::cyclic(n));
    }
    out.push(VcGroup::finite(Arc::new(FiniteGroup::dihedral(3))));
    out.push(VcGroup::finite(Arc::new(FiniteGroup::dihedral(4))));
    out.push(VcGroup::finite(Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)))));
    for n in 1..=8 {
        for u in (1..=n.max(1)).filter(|&u| u < n.max(2) && gcd(u, n) == 1) {
            out.push(cyclic_twisted(n, u));
        }
    }
    out.push(s3_twisted_by_conjugation());
    out.push(VcGroup::product_with_z(Arc::new(FiniteGroup::dihedral(4))));
    out.push(VcGroup::product_with_z(Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)))));
    out.push(VcGroup::product_with_z(Arc::new(FiniteGroup::cyclic(16))));
    for n in 1..=4 {
        for i in 0..3 {
            for j in 0..3 {
                out.push(cyclic_amalgam(n, i, j));
            }
        }
    }
    out.push(cyclic_amalgam(8, 1, 2));
    out
}

fn z_images(t: VcElement) -> GeneratorImages {
    GeneratorImages::orientable(vec![], t)
}

fn none() -> GeneratorImages {
    GeneratorImages::default()
}

fn build(spec: GogSpec) -> GraphOfGroups {
    GraphOfGroups::new(spec).expect("fixture is valid")
}

pub fn single_vertex(g: VcGroup) -> GraphOfGroups {
    build(GogSpec::default().vertex("v", g))
}

/// Loop `l` on `v` with edge group `e`, both monos given by `images`.
pub fn build_loop(v: VcGroup, e: VcGroup, images: GeneratorImages) -> GraphOfGroups {
    build(GogSpec::default().vertex("v", v).edge("l", "v", "v", e, images.clone(), images))
}

/// Loop `l` on `v = Z` with `α_l(t) = t²`, `α_l̄(t) = t³`.
pub fn bs23() -> GraphOfGroups {
    build(GogSpec::default().vertex("v", VcGroup::integers()).edge(
        "l",
        "v",
        "v",
        VcGroup::integers(),
        z_images(VcElement::orientable(0, 2)),
        z_images(VcElement::orientable(0, 3)),
    ))
}

/// `Z/2 ∗ Z/3`: vertices `a`, `b`, edge `e` with trivial group.
pub fn z2z3() -> GraphOfGroups {
    build(
        GogSpec::default()
            .vertex("a", VcGroup::cyclic(2))
            .vertex("b", VcGroup::cyclic(3))
            .edge("e", "a", "b", VcGroup::trivial(), none(), none()),
    )
}

/// `Z/2 ∗ Z/2` over the trivial group.
pub fn dinf() -> GraphOfGroups {
    build(
        GogSpec::default()
            .vertex("a", VcGroup::cyclic(2))
            .vertex("b", VcGroup::cyclic(2))
            .edge("e", "a", "b", VcGroup::trivial(), none(), none()),
    )
}

/// Loop on a `D∞` vertex with edge group `D∞`: one side sends
/// `a ↦ (1,1)`, `b ↦ (3,1)` (so `t = ba ↦ (2,0)`), the other is the
/// identity.
pub fn dinf_loop() -> GraphOfGroups {
    let d = VcGroup::infinite_dihedral();
    build(GogSpec::default().vertex("v", d.clone()).edge(
        "l",
        "v",
        "v",
        d,
        GeneratorImages::nonorientable(vec![], VcElement::nonorientable(0, 1, true), VcElement::nonorientable(0, 3, true)),
        GeneratorImages::nonorientable(vec![], VcElement::nonorientable(0, 0, true), VcElement::nonorientable(0, 1, true)),
    ))
}

/// Two `Z` vertices `u`, `w` joined by `x: (t | t)`, `y: (t² | t)`,
/// `z: (t | t³)`.
pub fn theta() -> GraphOfGroups {
    let z = VcGroup::integers;
    let t = |n| z_images(VcElement::orientable(0, n));
    build(
        GogSpec::default()
            .vertex("u", z())
            .vertex("w", z())
            .edge("x", "u", "w", z(), t(1), t(1))
            .edge("y", "u", "w", z(), t(2), t(1))
            .edge("z", "u", "w", z(), t(1), t(3)),
    )
}

/// Theta graph whose edge `y` has trivial group.
pub fn theta_mixed() -> GraphOfGroups {
    let z = VcGroup::integers;
    let t = |n| z_images(VcElement::orientable(0, n));
    build(
        GogSpec::default()
            .vertex("u", z())
            .vertex("w", z())
            .edge("x", "u", "w", z(), t(1), t(1))
            .edge("y", "u", "w", VcGroup::trivial(), none(), none())
            .edge("z", "u", "w", z(), t(2), t(3)),
    )
}

/// Loop with trivial vertex and edge groups.
pub fn trivial_loop() -> GraphOfGroups {
    build(GogSpec::default().vertex("v", VcGroup::trivial()).edge("l", "v", "v", VcGroup::trivial(), none(), none()))
}

/// Loop with trivial edge group on a `Z` vertex.
pub fn trivial_loop_on_z() -> GraphOfGroups {
    build(GogSpec::default().vertex("v", VcGroup::integers()).edge("l", "v", "v", VcGroup::trivial(), none(), none()))
}

/// Loop on `Z × Z/2` with edge group `Z`: `t ↦ (1,1)` and `t ↦ (0,2)`.
pub fn zz2_loop() -> GraphOfGroups {
    build(GogSpec::default().vertex("v", VcGroup::product_with_z(Arc::new(FiniteGroup::cyclic(2)))).edge(
        "l",
        "v",
        "v",
        VcGroup::integers(),
        z_images(VcElement::orientable(1, 1)),
        z_images(VcElement::orientable(0, 2)),
    ))
}

/// Path `p — q — r` with vertex groups `Z × Z/2`, `Z/3 ⋊ Z` (inversion)
/// and `S3 ∗_{Z/3} S3`, and edge groups `Z`.
pub fn mixed() -> GraphOfGroups {
    build(
        GogSpec::default()
            .vertex("p", VcGroup::product_with_z(Arc::new(FiniteGroup::cyclic(2))))
            .vertex("q", cyclic_twisted(3, 2))
            .vertex("r", s3_amalgam())
            .edge(
                "pq",
                "p",
                "q",
                VcGroup::integers(),
                z_images(VcElement::orientable(1, 1)),
                z_images(VcElement::orientable(0, 2)),
            )
            .edge(
                "qr",
                "q",
                "r",
                VcGroup::integers(),
                z_images(VcElement::orientable(1, 1)),
                z_images(VcElement::nonorientable(0, 1, false)),
            ),
    )
}

/// Loop on `S3 ∗_{Z/3} S3` with the same edge group; one mono is the
/// identity, the other fixes `Z/3` and `a` and sends `b ↦ aba`.
pub fn amalgam_loop() -> GraphOfGroups {
    let g = s3_amalgam();
    let (a, b) = (g.reflection_a(), g.reflection_b());
    let aba = g.product([&a, &b, &a]);
    let c = vec![(1, VcElement::finite(1))];
    build(GogSpec::default().vertex("v", g.clone()).edge(
        "l",
        "v",
        "v",
        g,
        GeneratorImages::nonorientable(c.clone(), a, b),
        GeneratorImages::nonorientable(c, a, aba),
    ))
}

/// Named fixtures, for the CLI examples.
pub fn named_gogs() -> Vec<(&'static str, GraphOfGroups)> {
    vec![
        ("single_z", single_vertex(VcGroup::integers())),
        ("single_z6", single_vertex(VcGroup::cyclic(6))),
        ("bs23", bs23()),
        ("z2z3", z2z3()),
        ("dinf", dinf()),
        ("dinf_loop", dinf_loop()),
        ("theta", theta()),
        ("theta_mixed", theta_mixed()),
        ("trivial_loop", trivial_loop()),
        ("trivial_loop_on_z", trivial_loop_on_z()),
        ("zz2_loop", zz2_loop()),
        ("mixed", mixed()),
        ("amalgam_loop", amalgam_loop()),
    ]
}

/// Every graph-of-groups fixture.
pub fn gog_corpus() -> Vec<GraphOfGroups> {
    named_gogs().into_iter().map(|(_, g)| g).collect()
}
