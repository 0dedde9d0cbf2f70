//! Derivation certificates for the inheritance rules of the FJCw predicate.
//!
//! A certificate is a DAG of claims. Each node names a rule, its premises
//! and the side conditions that were checked when the node was emitted.
//! Node hashes cover the premise hashes, so a change anywhere below a node
//! changes every hash above it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{
    kernel_vertex_stabilizer_class, proper_cocompact_check, quotient_by_max_finite_normal,
    quotient_by_max_infinite_cyclic, verify_edge_kernel_is_max_finite_normal, ConstructionError, StabilizerKernel,
};
use crate::doc::digest;
use crate::gog::{GraphOfGroups, Split};
use crate::pi1::InducedHom;
use crate::tree::{ball, quotient_ball_by_kernel, universal_cover_encoding};

/// Radius of the balls behind geometric side conditions.
pub const SIDE_RADIUS: usize = 3;
/// Cosets taken per incident edge in those balls.
pub const SIDE_BRANCH_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Subgroups.
    R1a,
    /// Finite-index overgroups.
    R1b,
    /// Direct products.
    R2,
    /// Directed colimits.
    R3,
    /// Extensions `1 → K → G → Q → 1`.
    R4,
    /// CAT(0) groups.
    R5,
    /// Solvable groups.
    R6,
    /// Graphs of abelian groups.
    R7,
    /// Amalgams and HNN extensions over finite groups.
    R8,
    /// Finite groups.
    Axiom,
    /// Exhaustive case split.
    Cases,
}

pub const ALL_RULES: [Rule; 11] =
    [Rule::R1a, Rule::R1b, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R8, Rule::Axiom, Rule::Cases];

/// The group a claim is about. Group fields hold document digests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    /// `π₁(Γ,𝒢)`.
    Gog { group: String },
    Finite { group: String, order: usize },
    AmalgamOverFinite { group: String, edge: String, left: String, right: String },
    HnnOverFinite { group: String, edge: String, base: String },
    /// `group` with a map onto `π₁` of `quotient`.
    ExtensionWithHom { group: String, quotient: String, map: String },
    /// `Ker(q)`; `quotient` is `free` for the map to `π₁(Γ)`.
    Kernel { group: String, quotient: String },
    /// `q⁻¹(C)` for every infinite cyclic `C`, optionally restricted to a
    /// branch of the case split.
    Preimage { group: String, quotient: String, branch: Option<String> },
    /// Subgroup of the group claimed by the premise.
    Subgroup { group: String, quotient: String, within: String },
    Colimit { group: String, quotient: String },
}

impl Term {
    /// Digest of the whole group, for terms that name one.
    fn whole(&self) -> Option<&str> {
        match self {
            Term::Gog { group }
            | Term::Finite { group, .. }
            | Term::AmalgamOverFinite { group, .. }
            | Term::HnnOverFinite { group, .. }
            | Term::ExtensionWithHom { group, .. } => Some(group),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub claim: Term,
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub side: BTreeMap<String, Value>,
    pub side_hash: String,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Digest of the certified graph of groups.
    pub subject: String,
    pub root: usize,
    pub root_hash: String,
    pub nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("node {node}: rule shape mismatch: {reason}")]
    RuleShapeMismatch { node: usize, reason: String },
    #[error("node {node}: side condition failed: {reason}")]
    SideConditionFailed { node: usize, reason: String },
    #[error("cycle through node {0}")]
    CycleDetected(usize),
    #[error("node {0}: hash mismatch")]
    HashMismatch(usize),
    #[error("node {node}: bad reference: {reason}")]
    BadReference { node: usize, reason: String },
    #[error("construction failed: {0}")]
    Construction(#[from] ConstructionError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

fn sha(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

fn side_hash(side: &BTreeMap<String, Value>) -> String {
    sha(&json!(side))
}

fn node_hash(node: &Node, premise_hashes: &[&str]) -> String {
    sha(&json!({
        "id": node.id,
        "claim": node.claim,
        "rule": node.rule,
        "premises": node.premises.iter().zip(premise_hashes).map(|(p, h)| json!([p, h])).collect::<Vec<_>>(),
        "side": node.side,
        "side_hash": node.side_hash,
    }))
}

impl Certificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(s).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    /// Recomputes every side hash and node hash bottom-up. Premises that
    /// point forward or form cycles are hashed as empty.
    pub fn rehash(&mut self) {
        for i in 0..self.nodes.len() {
            self.nodes[i].side_hash = side_hash(&self.nodes[i].side);
            let hashes: Vec<String> = self.nodes[i]
                .premises
                .iter()
                .map(|&p| if p < i { self.nodes[p].hash.clone() } else { String::new() })
                .collect();
            let refs: Vec<&str> = hashes.iter().map(String::as_str).collect();
            self.nodes[i].hash = node_hash(&self.nodes[i], &refs);
        }
        if let Some(root) = self.nodes.get(self.root) {
            self.root_hash = root.hash.clone();
        }
    }
}

struct Builder {
    nodes: Vec<Node>,
}

impl Builder {
    fn push(&mut self, claim: Term, rule: Rule, premises: Vec<usize>, side: BTreeMap<String, Value>) -> usize {
        let id = self.nodes.len();
        let premise_hashes: Vec<&str> = premises.iter().map(|&p| self.nodes[p].hash.as_str()).collect();
        let mut node = Node { id, claim, rule, premises: premises.clone(), side_hash: side_hash(&side), side, hash: String::new() };
        node.hash = node_hash(&node, &premise_hashes);
        self.nodes.push(node);
        id
    }

    fn certify(&mut self, gog: &GraphOfGroups) -> Result<usize, CertificateError> {
        let d = digest(gog);
        if let Some(geo) = (0..gog.edge_count()).find(|&e| gog.edge_group(e).is_finite()) {
            let side = BTreeMap::from([
                ("edge_group_order".into(), json!(gog.edge_group(geo).kernel().order())),
                ("edge_group_finite".into(), json!(true)),
            ]);
            return Ok(match gog.split_along_finite_edge(gog.edge_id(geo)).map_err(ConstructionError::from)? {
                Split::Amalgam { edge, left, right, .. } => {
                    let l = self.certify(&left)?;
                    let r = self.certify(&right)?;
                    let claim = Term::AmalgamOverFinite { group: d, edge, left: digest(&left), right: digest(&right) };
                    self.push(claim, Rule::R8, vec![l, r], side)
                }
                Split::Hnn { edge, base, .. } => {
                    let b = self.certify(&base)?;
                    self.push(Term::HnnOverFinite { group: d, edge, base: digest(&base) }, Rule::R8, vec![b], side)
                }
            });
        }
        if gog.edge_count() == 0 && gog.vertex_group(0).is_finite() {
            let order = gog.vertex_group(0).kernel().order();
            let side = BTreeMap::from([("finite_order".into(), json!(order))]);
            return Ok(self.push(Term::Finite { group: d, order }, Rule::Axiom, vec![], side));
        }
        if (0..gog.vertex_count()).all(|v| gog.vertex_group(v).is_z_model() || gog.vertex_group(v).is_dinfty_model()) {
            self.case_z(gog, d)
        } else {
            self.general(gog, d)
        }
    }

    /// Quotient by the maximal infinite cyclic subgroups.
    fn case_z(&mut self, gog: &GraphOfGroups, d: String) -> Result<usize, CertificateError> {
        let res = quotient_by_max_infinite_cyclic(gog)?;
        let qd = digest(&res.gog);
        let radius = SIDE_RADIUS.max(gog.vertex_count());
        let report = proper_cocompact_check(&res.gog, radius)?;
        if !report.holds() {
            return Err(ConstructionError::ClaimViolated {
                message: format!("quotient action is not proper and cocompact: {report:?}"),
                witnesses: vec![],
            }
            .into());
        }
        let q_side = BTreeMap::from([
            ("vertex_groups_finite".into(), json!(true)),
            ("ball_radius".into(), json!(report.radius)),
            ("ball_vertices".into(), json!(report.ball_vertices)),
            ("max_stabilizer_order".into(), json!(report.max_stabilizer_order)),
            ("quotient_matches_graph".into(), json!(report.matches_graph)),
        ]);
        let q = self.push(Term::Gog { group: qd.clone() }, Rule::R5, vec![], q_side);

        let mut classes = Vec::new();
        for v in 0..gog.vertex_count() {
            match kernel_vertex_stabilizer_class(gog, &res.q, v)? {
                StabilizerKernel::InfiniteCyclic(_) => classes.push(json!("infinite-cyclic")),
                StabilizerKernel::FiniteEqualTo(m) => {
                    return Err(ConstructionError::ClaimViolated {
                        message: format!("finite kernel at vertex {}", gog.vertex_id(v)),
                        witnesses: m,
                    }
                    .into())
                }
            }
        }
        let k_side = BTreeMap::from([("vertex_kernels".into(), json!(classes))]);
        let k = self.push(Term::Kernel { group: d.clone(), quotient: qd.clone() }, Rule::R7, vec![], k_side.clone());
        let mut p_side = k_side;
        p_side.insert("quotient_vertex_groups_finite".into(), json!(true));
        let p = self.push(Term::Preimage { group: d.clone(), quotient: qd.clone(), branch: None }, Rule::R7, vec![], p_side);
        let side = BTreeMap::from([("induced_monos_injective".into(), json!(true))]);
        Ok(self.push(Term::ExtensionWithHom { group: d, quotient: qd, map: "max-cyclic".into() }, Rule::R4, vec![q, k, p], side))
    }

    /// Quotient by the maximal finite normal subgroups, then `case_z`.
    fn general(&mut self, gog: &GraphOfGroups, d: String) -> Result<usize, CertificateError> {
        let res = quotient_by_max_finite_normal(gog)?;
        for o in 0..2 * gog.edge_count() {
            verify_edge_kernel_is_max_finite_normal(gog, o)?;
        }
        let qd = digest(&res.gog);
        let q = self.certify(&res.gog)?;

        let mut orders = Vec::new();
        for v in 0..gog.vertex_count() {
            match kernel_vertex_stabilizer_class(gog, &res.q, v)? {
                StabilizerKernel::FiniteEqualTo(m) => orders.push(m.len()),
                StabilizerKernel::InfiniteCyclic(t) => {
                    return Err(ConstructionError::ClaimViolated {
                        message: format!("infinite kernel at vertex {}", gog.vertex_id(v)),
                        witnesses: vec![t],
                    }
                    .into())
                }
            }
        }
        let finite_side = BTreeMap::from([
            ("stabilizers".into(), json!("finite")),
            ("vertex_kernel_orders".into(), json!(orders)),
        ]);
        let k = self.push(Term::Kernel { group: d.clone(), quotient: qd.clone() }, Rule::R3, vec![], finite_side.clone());

        let pa = self.push(
            Term::Preimage { group: d.clone(), quotient: qd.clone(), branch: Some("meets-no-vertex-conjugate".into()) },
            Rule::R3,
            vec![],
            finite_side,
        );
        let b = ball(gog, gog.root(), SIDE_RADIUS, SIDE_BRANCH_CAP).map_err(ConstructionError::from)?;
        let qb = quotient_ball_by_kernel(gog, &b, &InducedHom::PhiFree).map_err(ConstructionError::from)?.truncate(SIDE_RADIUS);
        let is_tree = qb.is_tree() && qb.rooted_encoding() == Some(universal_cover_encoding(gog, gog.root(), SIDE_RADIUS));
        if !is_tree {
            return Err(ConstructionError::ClaimViolated {
                message: "kernel of the map to the free group has a non-tree quotient".into(),
                witnesses: vec![],
            }
            .into());
        }
        let free_side = BTreeMap::from([
            ("quotient_is_tree".into(), json!(true)),
            ("ball_radius".into(), json!(SIDE_RADIUS)),
            ("stabilizers".into(), json!("virtually-cyclic")),
        ]);
        let kf = self.push(Term::Kernel { group: d.clone(), quotient: "free".into() }, Rule::R3, vec![], free_side);
        let sub_side = BTreeMap::from([("finite_index_reduction".into(), json!(true))]);
        let pb = self.push(
            Term::Preimage { group: d.clone(), quotient: qd.clone(), branch: Some("meets-vertex-conjugate".into()) },
            Rule::R1a,
            vec![kf],
            sub_side,
        );
        let p = self.push(Term::Preimage { group: d.clone(), quotient: qd.clone(), branch: None }, Rule::Cases, vec![pa, pb], BTreeMap::new());
        let side = BTreeMap::from([
            ("induced_monos_injective".into(), json!(true)),
            ("edge_kernels_max_finite_normal".into(), json!(true)),
        ]);
        Ok(self.push(Term::ExtensionWithHom { group: d, quotient: qd, map: "max-finite".into() }, Rule::R4, vec![q, k, p], side))
    }
}

/// Emits a derivation of FJCw for `π₁` of `gog`.
pub fn certify_fjcw(gog: &GraphOfGroups) -> Result<Certificate, CertificateError> {
    let mut b = Builder { nodes: Vec::new() };
    let root = b.certify(gog)?;
    Ok(Certificate { subject: digest(gog), root, root_hash: b.nodes[root].hash.clone(), nodes: b.nodes })
}

/// Summary of an accepted certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub nodes: usize,
    pub rules: BTreeMap<Rule, usize>,
}

/// Checks ids, references, acyclicity, hashes and every rule schema.
pub fn check_certificate(c: &Certificate) -> Result<CertificateReport, CertificateError> {
    let n = c.nodes.len();
    if c.root >= n {
        return Err(CertificateError::BadReference { node: c.root, reason: "root out of range".into() });
    }
    for (i, node) in c.nodes.iter().enumerate() {
        if node.id != i {
            return Err(CertificateError::BadReference { node: i, reason: format!("stored id {}", node.id) });
        }
        if let Some(&p) = node.premises.iter().find(|&&p| p >= n) {
            return Err(CertificateError::BadReference { node: i, reason: format!("premise {p} out of range") });
        }
    }
    check_acyclic(c)?;
    for (i, node) in c.nodes.iter().enumerate() {
        if node.side_hash != side_hash(&node.side) {
            return Err(CertificateError::HashMismatch(i));
        }
        let hashes: Vec<&str> = node.premises.iter().map(|&p| c.nodes[p].hash.as_str()).collect();
        if node.hash != node_hash(node, &hashes) {
            return Err(CertificateError::HashMismatch(i));
        }
    }
    if c.root_hash != c.nodes[c.root].hash {
        return Err(CertificateError::HashMismatch(c.root));
    }
    let mut reachable = vec![false; n];
    let mut stack = vec![c.root];
    while let Some(i) = stack.pop() {
        if !std::mem::replace(&mut reachable[i], true) {
            stack.extend(&c.nodes[i].premises);
        }
    }
    if let Some(i) = reachable.iter().position(|r| !r) {
        return Err(CertificateError::BadReference { node: i, reason: "unreachable from the root".into() });
    }
    if c.nodes[c.root].claim.whole() != Some(c.subject.as_str()) {
        return Err(CertificateError::RuleShapeMismatch { node: c.root, reason: "root does not claim the subject".into() });
    }
    let mut rules = BTreeMap::new();
    for (i, node) in c.nodes.iter().enumerate() {
        check_node(c, i)?;
        *rules.entry(node.rule).or_insert(0) += 1;
    }
    Ok(CertificateReport { nodes: n, rules })
}

fn check_acyclic(c: &Certificate) -> Result<(), CertificateError> {
    // 0 unvisited, 1 on the stack, 2 done
    let mut state = vec![0u8; c.nodes.len()];
    fn visit(c: &Certificate, i: usize, state: &mut [u8]) -> Result<(), CertificateError> {
        match state[i] {
            1 => return Err(CertificateError::CycleDetected(i)),
            2 => return Ok(()),
            _ => {}
        }
        state[i] = 1;
        for &p in &c.nodes[i].premises {
            visit(c, p, state)?;
        }
        state[i] = 2;
        Ok(())
    }
    for i in 0..c.nodes.len() {
        visit(c, i, &mut state)?;
    }
    Ok(())
}

/// Side-condition keys of each schema, sorted.
fn expected_keys(rule: Rule, claim: &Term) -> &'static [&'static str] {
    match (rule, claim) {
        (Rule::Axiom, _) => &["finite_order"],
        (Rule::R8, _) => &["edge_group_finite", "edge_group_order"],
        (Rule::R4, Term::ExtensionWithHom { map, .. }) if map == "max-finite" => {
            &["edge_kernels_max_finite_normal", "induced_monos_injective"]
        }
        (Rule::R4, _) => &["induced_monos_injective"],
        (Rule::R5, _) => &["ball_radius", "ball_vertices", "max_stabilizer_order", "quotient_matches_graph", "vertex_groups_finite"],
        (Rule::R7, Term::Preimage { .. }) => &["quotient_vertex_groups_finite", "vertex_kernels"],
        (Rule::R7, _) => &["vertex_kernels"],
        (Rule::R3, Term::Kernel { quotient, .. }) if quotient == "free" => &["ball_radius", "quotient_is_tree", "stabilizers"],
        (Rule::R3, _) => &["stabilizers", "vertex_kernel_orders"],
        (Rule::R1a, Term::Preimage { .. }) => &["finite_index_reduction"],
        (Rule::R1b, _) => &["index"],
        (Rule::R6, _) => &["solvable"],
        (Rule::R1a | Rule::R2 | Rule::Cases, _) => &[],
    }
}

fn check_node(c: &Certificate, i: usize) -> Result<(), CertificateError> {
    let node = &c.nodes[i];
    let premises: Vec<&Term> = node.premises.iter().map(|&p| &c.nodes[p].claim).collect();
    let shape = |reason: &str| Err(CertificateError::RuleShapeMismatch { node: i, reason: reason.into() });
    let side_fail = |key: &str| Err(CertificateError::SideConditionFailed { node: i, reason: key.into() });
    let side = |key: &str| node.side.get(key);
    let is_true = |key: &str| side(key) == Some(&json!(true));
    let positive = |key: &str| side(key).and_then(Value::as_u64).is_some_and(|x| x > 0);
    let arity = |k: usize| premises.len() == k;
    let keys: Vec<&str> = node.side.keys().map(String::as_str).collect();
    if keys != expected_keys(node.rule, &node.claim) {
        return Err(CertificateError::SideConditionFailed { node: i, reason: format!("unexpected side keys {keys:?}") });
    }

    match (node.rule, &node.claim) {
        (Rule::Axiom, Term::Finite { order, .. }) => {
            if !arity(0) {
                return shape("axiom with premises");
            }
            if side("finite_order").and_then(Value::as_u64) != Some(*order as u64) || *order == 0 {
                return side_fail("finite_order");
            }
        }
        (Rule::R8, Term::AmalgamOverFinite { left, right, .. }) => {
            if !arity(2) || premises[0].whole() != Some(left) || premises[1].whole() != Some(right) {
                return shape("amalgam needs both factors");
            }
            if !positive("edge_group_order") || !is_true("edge_group_finite") {
                return side_fail("edge_group_order");
            }
        }
        (Rule::R8, Term::HnnOverFinite { base, .. }) => {
            if !arity(1) || premises[0].whole() != Some(base) {
                return shape("HNN extension needs its base");
            }
            if !positive("edge_group_order") || !is_true("edge_group_finite") {
                return side_fail("edge_group_order");
            }
        }
        (Rule::R4, Term::ExtensionWithHom { group, quotient, map }) => {
            let kernel = Term::Kernel { group: group.clone(), quotient: quotient.clone() };
            let preimage = Term::Preimage { group: group.clone(), quotient: quotient.clone(), branch: None };
            if !arity(3) || premises[0].whole() != Some(quotient) || *premises[1] != kernel || *premises[2] != preimage {
                return shape("extension needs quotient, kernel and preimages");
            }
            if !is_true("induced_monos_injective") {
                return side_fail("induced_monos_injective");
            }
            if map == "max-finite" && !is_true("edge_kernels_max_finite_normal") {
                return side_fail("edge_kernels_max_finite_normal");
            }
            if map != "max-finite" && map != "max-cyclic" {
                return shape("unknown quotient map");
            }
        }
        (Rule::R5, Term::Gog { .. }) => {
            if !arity(0) {
                return shape("CAT(0) leaf with premises");
            }
            for key in ["vertex_groups_finite", "quotient_matches_graph"] {
                if !is_true(key) {
                    return side_fail(key);
                }
            }
            if !positive("ball_radius") || !positive("ball_vertices") || !positive("max_stabilizer_order") {
                return side_fail("max_stabilizer_order");
            }
        }
        (Rule::R7, Term::Kernel { .. } | Term::Preimage { branch: None, .. }) => {
            if !arity(0) {
                return shape("graph-of-abelian leaf with premises");
            }
            let kernels = side("vertex_kernels").and_then(Value::as_array);
            if !kernels.is_some_and(|k| !k.is_empty() && k.iter().all(|x| x == "infinite-cyclic")) {
                return side_fail("vertex_kernels");
            }
            if matches!(node.claim, Term::Preimage { .. }) && !is_true("quotient_vertex_groups_finite") {
                return side_fail("quotient_vertex_groups_finite");
            }
        }
        (Rule::R3, Term::Kernel { quotient, .. } | Term::Preimage { quotient, branch: Some(_), .. } | Term::Colimit { quotient, .. }) => {
            if !arity(0) {
                return shape("colimit leaf with premises");
            }
            if quotient == "free" {
                if !is_true("quotient_is_tree") || side("stabilizers") != Some(&json!("virtually-cyclic")) {
                    return side_fail("quotient_is_tree");
                }
            } else if side("stabilizers") != Some(&json!("finite")) {
                return side_fail("stabilizers");
            } else if !side("vertex_kernel_orders")
                .and_then(Value::as_array)
                .is_some_and(|a| !a.is_empty() && a.iter().all(|x| x.as_u64().is_some_and(|k| k > 0)))
            {
                return side_fail("vertex_kernel_orders");
            }
        }
        (Rule::R1a, Term::Preimage { group, branch: Some(_), .. } | Term::Subgroup { group, .. }) => {
            let ok = arity(1)
                && match premises[0] {
                    Term::Kernel { group: g, .. } | Term::Subgroup { group: g, .. } => g == group,
                    t => t.whole() == Some(group),
                };
            if !ok {
                return shape("subgroup needs its ambient group");
            }
            if matches!(node.claim, Term::Preimage { .. }) && !is_true("finite_index_reduction") {
                return side_fail("finite_index_reduction");
            }
        }
        (Rule::R1b, _) => {
            if !arity(1) {
                return shape("finite-index overgroup needs one premise");
            }
            if !positive("index") {
                return side_fail("index");
            }
        }
        (Rule::R2, _) => {
            if !arity(2) {
                return shape("product needs two factors");
            }
        }
        (Rule::R6, _) => {
            if !arity(0) || !is_true("solvable") {
                return shape("solvable leaf");
            }
        }
        (Rule::Cases, Term::Preimage { group, quotient, branch: None }) => {
            let mut branches = Vec::new();
            for p in &premises {
                match p {
                    Term::Preimage { group: g, quotient: q, branch: Some(b) } if g == group && q == quotient => {
                        branches.push(b.clone())
                    }
                    _ => return shape("case premise is not a branch of the same preimage"),
                }
            }
            branches.sort();
            branches.dedup();
            if branches.len() != 2 || branches.len() != premises.len() {
                return shape("case split needs both branches");
            }
        }
        _ => return shape("rule does not apply to this claim"),
    }
    Ok(())
}

/// Random single-node mutations, for tests of [`check_certificate`].
pub mod mutate {
    use rand::seq::SliceRandom;
    use rand::Rng;
    use serde_json::json;

    use super::{Certificate, Term, ALL_RULES};

    pub const KINDS: usize = 8;

    /// Applies mutation `kind` to a random node; with `rehash` the whole
    /// DAG is rehashed afterwards, so only schema checks can catch it.
    /// Every mutation changes the certificate.
    pub fn mutate<R: Rng + ?Sized>(c: &Certificate, rng: &mut R, kind: usize, rehash: bool) -> Certificate {
        let mut m = c.clone();
        let i = rng.gen_range(0..m.nodes.len());
        let n = m.nodes.len();
        let node = &mut m.nodes[i];
        match kind % KINDS {
            0 => {
                let others: Vec<_> = ALL_RULES.iter().filter(|&&r| r != node.rule).collect();
                node.rule = **others.choose(rng).expect("several rules");
            }
            1 => {
                if node.premises.is_empty() {
                    node.premises.push(i);
                } else {
                    let k = rng.gen_range(0..node.premises.len());
                    node.premises.remove(k);
                }
            }
            2 => node.premises.push(i),
            3 => match &mut node.claim {
                Term::Gog { group }
                | Term::Finite { group, .. }
                | Term::AmalgamOverFinite { group, .. }
                | Term::HnnOverFinite { group, .. }
                | Term::ExtensionWithHom { group, .. }
                | Term::Kernel { group, .. }
                | Term::Preimage { group, .. }
                | Term::Subgroup { group, .. }
                | Term::Colimit { group, .. } => group.push('0'),
            },
            4 => {
                if let Some(k) = node.side.keys().cloned().collect::<Vec<_>>().choose(rng) {
                    node.side.insert(k.clone(), json!(false));
                } else {
                    node.side.insert("forged".into(), json!(true));
                }
            }
            5 if !rehash => node.hash = "0".repeat(64),
            5 | 6 if node.side.is_empty() => {
                node.side.insert("forged".into(), json!(true));
            }
            5 | 6 => node.side.clear(),
            _ => {
                if node.premises.is_empty() {
                    node.premises.push((i + 1) % n);
                } else {
                    node.premises.reverse();
                    node.premises.push(node.premises[0]);
                }
            }
        }
        if rehash {
            m.rehash();
        }
        m
    }
}
