//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ggk_core::constructions::certificate::mutate;
use ggk_core::constructions::wreath::wreath_embed_group;
use ggk_core::constructions::{
    certify_fjcw, check_certificate, induced_monos, kernel_vertex_stabilizer_class, proper_cocompact_check,
    quotient_by_max_finite_normal, quotient_by_max_infinite_cyclic, verify_edge_kernel_is_max_finite_normal,
    StabilizerKernel,
};
use ggk_core::doc::InputDocument;
use ggk_core::fixtures;
use ggk_core::gog::{infinite_edge_reduction, GraphOfGroups};
use ggk_core::oracles::max_finite_normal_search;
use ggk_core::pi1::{inverse_word, random_word, reduce, reduce_with_strategy, InducedHom, Strategy};
use ggk_core::tree::{ball, expected_degree, quotient_ball_by_kernel, stabilizer_witness, universal_cover_encoding};
use ggk_core::vc::{VcElement, VcGroup};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn trichotomy() -> Outcome {
    let start = Instant::now();
    let corpus = fixtures::vc_corpus();
    ensure(corpus.len() >= 50, || format!("corpus has {} groups", corpus.len()))?;
    for (i, g) in corpus.iter().enumerate() {
        ensure(g.kernel().order() <= 16, || format!("group {i} has a large finite part"))?;
        let m = g.max_finite_normal();
        let search = max_finite_normal_search(g, 4).ok_or_else(|| format!("group {i}: oracle found no finite maximum"))?;
        let members: BTreeSet<VcElement> = m.members.iter().copied().collect();
        ensure(search.unique_maximum && search.maximum == members, || format!("group {i}: F differs from oracle"))?;
        ensure(search.class == m.class && m.class == g.class(), || format!("group {i}: class mismatch"))?;
    }
    let classes: BTreeSet<String> = corpus.iter().map(|g| format!("{:?}", g.class())).collect();
    ensure(classes.len() == 3, || "not all three variants present".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} groups, {:.1?}", corpus.len(), start.elapsed()))
}

fn normal_forms() -> Outcome {
    let start = Instant::now();
    let named = fixtures::named_gogs();
    for required in ["bs23", "z2z3", "dinf_loop", "theta", "mixed"] {
        ensure(named.iter().any(|(n, _)| *n == required), || format!("missing fixture {required}"))?;
    }
    let mut rng = StdRng::seed_from_u64(2024);
    for (name, gog) in &named {
        for rel in gog.presentation().relations {
            let mut w = rel.lhs.clone();
            w.extend(inverse_word(gog, &rel.rhs));
            let nf = reduce(gog, &w).map_err(|e| format!("{name}: {e}"))?;
            ensure(nf.is_identity(gog), || format!("{name}: relation does not reduce to 1"))?;
        }
        for _ in 0..1000 {
            let len = rand::Rng::gen_range(&mut rng, 0..=12);
            let w = random_word(gog, &mut rng, len, 4);
            let left = reduce_with_strategy(gog, &w, Strategy::Leftmost).map_err(|e| format!("{name}: {e}"))?;
            let right = reduce_with_strategy(gog, &w, Strategy::Rightmost).map_err(|e| format!("{name}: {e}"))?;
            ensure(left == right, || format!("{name}: strategies disagree"))?;
            let again = reduce(gog, &left.to_word(gog)).map_err(|e| format!("{name}: {e}"))?;
            ensure(again == left, || format!("{name}: reduce is not idempotent"))?;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} fixtures x 1000 words, {:.1?}", named.len(), start.elapsed()))
}

fn ball_structure() -> Outcome {
    let gog = fixtures::dinf();
    for r in 0..=5 {
        let b = ball(&gog, 0, r, 8).map_err(|e| e.to_string())?;
        ensure(b.len() == 2 * r + 1 && b.is_tree(), || format!("D-infinity ball of radius {r} has {} vertices", b.len()))?;
        ensure(b.interior().all(|i| b.degree(i) == 2), || "D-infinity ball is not a path".into())?;
    }
    let gog = fixtures::z2z3();
    let b = ball(&gog, 0, 4, 8).map_err(|e| e.to_string())?;
    for i in b.interior() {
        let want = expected_degree(&gog, b.vertices[i].label);
        ensure(want == Some(b.degree(i) as u64), || format!("degree mismatch at {}", b.vertices[i].display(&gog)))?;
    }
    let mut rng = StdRng::seed_from_u64(3);
    let mut checked = 0;
    for (name, gog) in [("dinf", fixtures::dinf()), ("z2z3", fixtures::z2z3())] {
        let b = ball(&gog, 0, 3, 8).map_err(|e| e.to_string())?;
        for x in &b.vertices {
            stabilizer_witness(&gog, x, &mut rng).map_err(|e| format!("{name}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("paths r<=5, degrees, {checked} stabilizers"))
}

fn kernel_quotient_is_tree() -> Outcome {
    let start = Instant::now();
    let r = 4;
    for (name, gog) in fixtures::named_gogs() {
        let b = ball(&gog, gog.root(), r, 3).map_err(|e| format!("{name}: {e}"))?;
        let q = quotient_ball_by_kernel(&gog, &b, &InducedHom::PhiFree).map_err(|e| format!("{name}: {e}"))?.truncate(r);
        ensure(q.is_tree(), || format!("{name}: quotient ball is not a tree"))?;
        ensure(q.rooted_encoding() == Some(universal_cover_encoding(&gog, gog.root(), r)), || {
            format!("{name}: quotient ball is not the universal cover ball")
        })?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("all fixtures at radius 4, {:.1?}", start.elapsed()))
}

/// Reduction pieces with only infinite vertex groups.
fn infinite_pieces() -> Vec<GraphOfGroups> {
    fixtures::gog_corpus()
        .iter()
        .flat_map(|g| infinite_edge_reduction(g).0)
        .filter(|g| (0..g.vertex_count()).all(|v| !g.vertex_group(v).is_finite()))
        .collect()
}

fn finite_quotient() -> Outcome {
    let pieces = infinite_pieces();
    let mut edges = 0;
    for (i, gog) in pieces.iter().enumerate() {
        let res = quotient_by_max_finite_normal(gog).map_err(|e| format!("piece {i}: {e}"))?;
        for v in 0..gog.vertex_count() {
            let g = res.gog.vertex_group(v);
            ensure(g.is_z_model() || g.is_dinfty_model(), || format!("piece {i}: vertex group is not Z or D-infinity"))?;
            let want: Vec<VcElement> = {
                let mut m = gog.vertex_group(v).max_finite_normal().members;
                m.sort_by_key(VcElement::order_key);
                m
            };
            let got = kernel_vertex_stabilizer_class(gog, &res.q, v).map_err(|e| e.to_string())?;
            ensure(got == StabilizerKernel::FiniteEqualTo(want), || format!("piece {i}: kernel at vertex {v} is {got:?}"))?;
        }
        for o in 0..2 * gog.edge_count() {
            verify_edge_kernel_is_max_finite_normal(gog, o).map_err(|e| format!("piece {i}: {e}"))?;
            edges += 1;
        }
        for h in induced_monos(&res) {
            ensure(h.is_injective() && h.injective_on_ball(8), || format!("piece {i}: induced mono not injective"))?;
        }
    }
    Ok(format!("{} pieces, {edges} oriented edges", pieces.len()))
}

fn cyclic_quotient() -> Outcome {
    let mut inputs: Vec<GraphOfGroups> = infinite_pieces()
        .into_iter()
        .filter(|g| (0..g.vertex_count()).all(|v| g.vertex_group(v).is_z_model() || g.vertex_group(v).is_dinfty_model()))
        .collect();
    for g in infinite_pieces() {
        inputs.push(Arc::unwrap_or_clone(quotient_by_max_finite_normal(&g).map_err(|e| e.to_string())?.gog));
    }
    for (i, gog) in inputs.iter().enumerate() {
        let res = quotient_by_max_infinite_cyclic(gog).map_err(|e| format!("input {i}: {e}"))?;
        for v in 0..gog.vertex_count() {
            let g = res.gog.vertex_group(v);
            ensure(g.is_finite() && g.kernel().order() <= 2, || format!("input {i}: vertex group not trivial or Z/2"))?;
            let class = kernel_vertex_stabilizer_class(gog, &res.q, v).map_err(|e| e.to_string())?;
            ensure(matches!(class, StabilizerKernel::InfiniteCyclic(_)), || format!("input {i}: kernel {class:?}"))?;
        }
        for h in induced_monos(&res) {
            ensure(h.is_injective() && h.injective_on_ball(8), || format!("input {i}: induced mono not injective"))?;
        }
        let report = proper_cocompact_check(&res.gog, 3).map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("input {i}: {report:?}"))?;
    }
    Ok(format!("{} inputs", inputs.len()))
}

fn wreath() -> Outcome {
    let groups: Vec<VcGroup> = fixtures::vc_corpus().into_iter().filter(|g| !g.is_finite()).collect();
    ensure(groups.len() >= 10, || format!("only {} infinite groups", groups.len()))?;
    let mut rng = StdRng::seed_from_u64(4);
    for (i, g) in groups.iter().enumerate() {
        let e = wreath_embed_group(Arc::new(g.clone())).map_err(|e| format!("group {i}: {e}"))?;
        e.check_homomorphism(&mut rng, 200).map_err(|(x, y)| format!("group {i}: law fails on {x:?}, {y:?}"))?;
        ensure(e.injective_on_ball(6), || format!("group {i}: not injective on the radius-6 ball"))?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn certificates() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(5);
    let mut rejected = 0;
    let corpus = fixtures::named_gogs();
    for (name, gog) in &corpus {
        let c = certify_fjcw(gog).map_err(|e| format!("{name}: {e}"))?;
        check_certificate(&c).map_err(|e| format!("{name}: {e}"))?;
        for k in 0..20 {
            let m = mutate::mutate(&c, &mut rng, k, k % 2 == 1);
            ensure(m != c && check_certificate(&m).is_err(), || format!("{name}: mutation {k} accepted"))?;
            rejected += 1;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} certificates, {rejected}/{} mutations rejected, {:.1?}", corpus.len(), 20 * corpus.len(), start.elapsed()))
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn ggk(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ggk")).args(args).output().expect("runs ggk");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn cli() -> Outcome {
    let dir = fixture_dir();
    let mut files = 0;
    for entry in fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let p = entry.map_err(|e| e.to_string())?.path();
        if p.extension().is_some_and(|e| e == "json") {
            let text = fs::read_to_string(&p).map_err(|e| e.to_string())?;
            let doc = InputDocument::from_json(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            let gog = doc.to_gog().map_err(|e| format!("{}: {e}", p.display()))?;
            let again = InputDocument::from_gog(&gog).to_json_pretty();
            ensure(format!("{again}\n") == text, || format!("{}: round trip changed the document", p.display()))?;
            files += 1;
        }
    }
    let bs23 = dir.join("bs23.json");
    let (code, out) = ggk(&["reduce", path(&bs23), "--word", "e(l);g(v,[0,3]);E(l)"]);
    ensure(code == 0 && out == "g(v,[0,2])\n", || format!("reduce printed {out:?} with exit {code}"))?;
    let (code, _) = ggk(&["validate", path(&bs23)]);
    ensure(code == 0, || format!("validate exit {code}"))?;
    let bad = dir.join("invalid").join("non_injective.json");
    let (code, _) = ggk(&["validate", path(&bad)]);
    ensure(code == 1, || format!("invalid document exit {code}"))?;
    let (code, out) = ggk(&["check", path(&bs23), "--lemma", "tree", "--radius", "4"]);
    ensure(code == 0 && out.contains("quotient ball is a tree, matches universal cover"), || format!("check exit {code}"))?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cert = tmp.path().join("cert.json");
    let (code, _) = ggk(&["certify", path(&bs23), "--out", path(&cert)]);
    ensure(code == 0, || format!("certify exit {code}"))?;
    let (code, _) = ggk(&["check-cert", path(&cert)]);
    ensure(code == 0, || format!("check-cert exit {code}"))?;
    let text = fs::read_to_string(&cert).map_err(|e| e.to_string())?;
    fs::write(&cert, text.replacen("\"R5\"", "\"R6\"", 1)).map_err(|e| e.to_string())?;
    let (code, _) = ggk(&["check-cert", path(&cert)]);
    ensure(code == 2, || format!("tampered certificate exit {code}"))?;
    Ok(format!("{files} fixture files, reduce example, exit codes 0/1/2"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trichotomy of virtually cyclic groups", trichotomy),
        ("normal forms: relations, idempotence, confluence", normal_forms),
        ("Bass-Serre ball structure", ball_structure),
        ("kernel quotient of the tree is a tree", kernel_quotient_is_tree),
        ("quotient by maximal finite normal subgroups", finite_quotient),
        ("quotient by maximal infinite cyclic subgroups", cyclic_quotient),
        ("wreath embedding", wreath),
        ("certificates", certificates),
        ("command line", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
