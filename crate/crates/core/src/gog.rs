//! Graphs of groups: data model, validation, spanning trees, presentations
//! and splittings along finite edge groups.
//!
//! Edges are stored once per geometric edge. An oriented edge is an index
//! `o` with geometric edge `o / 2`; even indices run `from → to`, odd ones
//! the other way, and `bar(o) = o ^ 1`. The mono of `o` maps the edge group
//! into the vertex group at `ι(o)`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::pi1::{format_word, Token};
use crate::vc::{GeneratorImages, VcClass, VcElement, VcError, VcGroup, VcHom};

/// Default cap on lazily enumerated coset transversals.
pub const DEFAULT_COSET_CAP: usize = 10_000;

/// Reads `GGK_COSET_CAP`, falling back to [`DEFAULT_COSET_CAP`].
pub fn coset_cap_from_env() -> usize {
    std::env::var("GGK_COSET_CAP").ok().and_then(|s| s.parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_COSET_CAP)
}

pub const fn bar(o: usize) -> usize {
    o ^ 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    From,
    To,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::From => "mono_from",
            Side::To => "mono_to",
        })
    }
}

/// One violated invariant of a graph of groups.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Issue {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {edge}, {side}: {error}")]
    BadMono { edge: String, side: Side, error: VcError },
    #[error("edge {edge}, {side}: not injective, {witness:?} lies in the kernel")]
    NonInjectiveMono { edge: String, side: Side, witness: VcElement },
    #[error("graph is disconnected: components {components:?}")]
    Disconnected { components: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GogError {
    #[error("invalid graph of groups: {0}")]
    Invalid(Issue),
    #[error("graph is disconnected: components {0:?}")]
    Disconnected(Vec<Vec<String>>),
    #[error("edge group of {0} is not finite")]
    EdgeGroupNotFinite(String),
    #[error("no edge with id {0}")]
    UnknownEdge(String),
    #[error("no vertex with id {0}")]
    UnknownVertex(String),
}

/// All problems found in a candidate graph of groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct VertexSpec {
    pub id: String,
    pub group: Arc<VcGroup>,
}

/// A geometric edge with both monos: `mono_from` into `from` (for the
/// forward orientation) and `mono_to` into `to` (for the reverse one).
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub group: Arc<VcGroup>,
    pub mono_from: GeneratorImages,
    pub mono_to: GeneratorImages,
}

/// Unvalidated input for [`GraphOfGroups::new`].
#[derive(Clone, Debug, Default)]
pub struct GogSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

impl GogSpec {
    pub fn vertex(mut self, id: &str, group: VcGroup) -> Self {
        self.vertices.push(VertexSpec { id: id.into(), group: Arc::new(group) });
        self
    }

    pub fn edge(
        mut self,
        id: &str,
        from: &str,
        to: &str,
        group: VcGroup,
        mono_from: GeneratorImages,
        mono_to: GeneratorImages,
    ) -> Self {
        self.edges.push(EdgeSpec {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            group: Arc::new(group),
            mono_from,
            mono_to,
        });
        self
    }
}

/// Underlying graph: vertex ids and geometric edges `(id, from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(String, usize, usize)>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, usize, usize)>) -> Self {
        Graph { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, geo: usize) -> &str {
        &self.edges[geo].0
    }

    pub fn iota(&self, o: usize) -> usize {
        let (_, from, to) = &self.edges[o / 2];
        if o % 2 == 0 {
            *from
        } else {
            *to
        }
    }

    pub fn tau(&self, o: usize) -> usize {
        self.iota(bar(o))
    }

    /// Oriented edges starting at `v`, in index order.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..2 * self.edges.len()).filter(|&o| self.iota(o) == v).collect()
    }

    /// Connected components (vertex indices, sorted) after removing the
    /// geometric edges in `skip`.
    pub fn components_without(&self, skip: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for o in self.out_edges(v) {
                    let w = self.tau(o);
                    if !skip.contains(&(o / 2)) && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&BTreeSet::new())
    }

    fn component_ids(&self, comps: &[Vec<usize>]) -> Vec<Vec<String>> {
        comps.iter().map(|c| c.iter().map(|&v| self.vertices[v].clone()).collect()).collect()
    }

    /// Index of the lexicographically least vertex id.
    pub fn least_vertex(&self) -> usize {
        (0..self.vertices.len()).min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b])).expect("nonempty graph")
    }
}

/// A maximal tree, as a set of geometric edge indices, with the tree path
/// from the root to every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub edges: BTreeSet<usize>,
    paths: Vec<Vec<usize>>,
}

impl SpanningTree {
    pub fn contains(&self, geo: usize) -> bool {
        self.edges.contains(&geo)
    }

    /// Oriented edges from the root to `v` along the tree.
    pub fn path(&self, v: usize) -> &[usize] {
        &self.paths[v]
    }
}

/// Breadth-first tree from the lexicographically least vertex, scanning
/// incident edges in lexicographic order of their ids.
pub fn spanning_tree(graph: &Graph) -> Result<SpanningTree, GogError> {
    let comps = graph.components();
    if comps.len() > 1 {
        return Err(GogError::Disconnected(graph.component_ids(&comps)));
    }
    let root = graph.least_vertex();
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; graph.vertex_count()];
    paths[root] = Some(Vec::new());
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let mut out = graph.out_edges(v);
        out.sort_by(|&a, &b| graph.edge_id(a / 2).cmp(graph.edge_id(b / 2)).then(a.cmp(&b)));
        for o in out {
            let w = graph.tau(o);
            if paths[w].is_none() {
                let mut p = paths[v].clone().expect("visited");
                p.push(o);
                paths[w] = Some(p);
                edges.insert(o / 2);
                queue.push_back(w);
            }
        }
    }
    Ok(SpanningTree { root, edges, paths: paths.into_iter().map(|p| p.expect("connected")).collect() })
}

/// Collects every violated invariant of `spec`.
pub fn validate(spec: &GogSpec) -> ValidationReport {
    let mut issues = Vec::new();
    if spec.vertices.is_empty() {
        issues.push(Issue::Empty);
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, v) in spec.vertices.iter().enumerate() {
        if index.insert(&v.id, i).is_some() {
            issues.push(Issue::DuplicateVertex(v.id.clone()));
        }
    }
    let mut edge_ids = BTreeSet::new();
    let mut geo = Vec::new();
    for e in &spec.edges {
        if !edge_ids.insert(e.id.as_str()) {
            issues.push(Issue::DuplicateEdge(e.id.clone()));
        }
        let ends: Vec<Option<usize>> = [&e.from, &e.to]
            .iter()
            .map(|v| {
                let found = index.get(v.as_str()).copied();
                if found.is_none() {
                    issues.push(Issue::UnknownVertex { edge: e.id.clone(), vertex: (*v).clone() });
                }
                found
            })
            .collect();
        let (Some(from), Some(to)) = (ends[0], ends[1]) else { continue };
        geo.push((e.id.clone(), from, to));
        for (side, target, images) in [(Side::From, from, &e.mono_from), (Side::To, to, &e.mono_to)] {
            match VcHom::new(e.group.clone(), spec.vertices[target].group.clone(), images.clone()) {
                Err(error) => issues.push(Issue::BadMono { edge: e.id.clone(), side, error }),
                Ok(h) => {
                    if let Some(witness) = h.kernel_witness() {
                        issues.push(Issue::NonInjectiveMono { edge: e.id.clone(), side, witness });
                    }
                }
            }
        }
    }
    if !spec.vertices.is_empty() {
        let graph = Graph::new(spec.vertices.iter().map(|v| v.id.clone()).collect(), geo);
        let comps = graph.components();
        if comps.len() > 1 {
            issues.push(Issue::Disconnected { components: graph.component_ids(&comps) });
        }
    }
    ValidationReport { issues }
}

/// A validated graph of virtually cyclic groups with a fixed maximal tree.
#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    spec: GogSpec,
    graph: Graph,
    vertex_groups: Vec<Arc<VcGroup>>,
    edge_groups: Vec<Arc<VcGroup>>,
    monos: Vec<VcHom>,
    tree: SpanningTree,
    coset_cap: usize,
}

impl GraphOfGroups {
    /// Validates strictly: the first issue found is returned as the error.
    pub fn new(spec: GogSpec) -> Result<Self, GogError> {
        if let Some(issue) = validate(&spec).issues.into_iter().next() {
            return Err(GogError::Invalid(issue));
        }
        let index: HashMap<&str, usize> = spec.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let geo: Vec<(String, usize, usize)> =
            spec.edges.iter().map(|e| (e.id.clone(), index[e.from.as_str()], index[e.to.as_str()])).collect();
        let graph = Graph::new(spec.vertices.iter().map(|v| v.id.clone()).collect(), geo);
        let vertex_groups: Vec<Arc<VcGroup>> = spec.vertices.iter().map(|v| v.group.clone()).collect();
        let edge_groups: Vec<Arc<VcGroup>> = spec.edges.iter().map(|e| e.group.clone()).collect();
        let mut monos = Vec::with_capacity(2 * spec.edges.len());
        for (i, e) in spec.edges.iter().enumerate() {
            for (o, images) in [(2 * i, &e.mono_from), (2 * i + 1, &e.mono_to)] {
                let target = vertex_groups[graph.iota(o)].clone();
                monos.push(VcHom::new(e.group.clone(), target, images.clone()).expect("validated"));
            }
        }
        let tree = spanning_tree(&graph)?;
        Ok(GraphOfGroups { spec, graph, vertex_groups, edge_groups, monos, tree, coset_cap: coset_cap_from_env() })
    }

    pub fn with_coset_cap(mut self, cap: usize) -> Self {
        self.coset_cap = cap.max(1);
        self
    }

    pub fn coset_cap(&self) -> usize {
        self.coset_cap
    }

    pub fn spec(&self) -> &GogSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        self.graph.vertex_id(v)
    }

    pub fn edge_id(&self, geo: usize) -> &str {
        self.graph.edge_id(geo)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        (0..self.vertex_count()).find(|&v| self.vertex_id(v) == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        (0..self.edge_count()).find(|&e| self.edge_id(e) == id)
    }

    pub fn iota(&self, o: usize) -> usize {
        self.graph.iota(o)
    }

    pub fn tau(&self, o: usize) -> usize {
        self.graph.tau(o)
    }

    pub fn vertex_group(&self, v: usize) -> &Arc<VcGroup> {
        &self.vertex_groups[v]
    }

    /// Edge group of the geometric edge `geo`.
    pub fn edge_group(&self, geo: usize) -> &Arc<VcGroup> {
        &self.edge_groups[geo]
    }

    /// `α_o : G_e → G_{ι(o)}` for the oriented edge `o`.
    pub fn mono(&self, o: usize) -> &VcHom {
        &self.monos[o]
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.tree.root
    }

    pub fn is_tree_edge(&self, o: usize) -> bool {
        self.tree.contains(o / 2)
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        self.graph.out_edges(v)
    }

    /// π₁ presentation relative to the maximal tree.
    pub fn presentation(&self) -> Presentation {
        let mut generators = Vec::new();
        for v in 0..self.vertex_count() {
            for x in self.vertex_group(v).generators() {
                generators.push(Token::Vertex(v, x));
            }
        }
        for geo in 0..self.edge_count() {
            if !self.tree.contains(geo) {
                generators.push(Token::Edge(2 * geo));
            }
        }
        let mut relations = Vec::new();
        for geo in 0..self.edge_count() {
            let o = 2 * geo;
            let keep = !self.tree.contains(geo);
            for s in self.edge_group(geo).generators() {
                let mut lhs = Vec::new();
                if keep {
                    lhs.push(Token::Edge(o));
                }
                lhs.push(Token::Vertex(self.tau(o), self.mono(bar(o)).apply(&s)));
                if keep {
                    lhs.push(Token::Edge(bar(o)));
                }
                relations.push(Relation { lhs, rhs: vec![Token::Vertex(self.iota(o), self.mono(o).apply(&s))] });
            }
        }
        Presentation { generators, relations }
    }

    /// Restriction to the given vertices and geometric edges.
    fn restrict(&self, vertices: &[usize], edges: &[usize]) -> GraphOfGroups {
        let spec = GogSpec {
            vertices: vertices.iter().map(|&v| self.spec.vertices[v].clone()).collect(),
            edges: edges.iter().map(|&e| self.spec.edges[e].clone()).collect(),
        };
        GraphOfGroups::new(spec).expect("restriction of a valid graph of groups").with_coset_cap(self.coset_cap)
    }

    /// Splits along the edge `id`, whose group must be finite.
    pub fn split_along_finite_edge(&self, id: &str) -> Result<Split, GogError> {
        let geo = self.edge_index(id).ok_or_else(|| GogError::UnknownEdge(id.into()))?;
        if !self.edge_group(geo).is_finite() {
            return Err(GogError::EdgeGroupNotFinite(id.into()));
        }
        let rest: Vec<usize> = (0..self.edge_count()).filter(|&e| e != geo).collect();
        let comps = self.graph.components_without(&BTreeSet::from([geo]));
        let edges_within =
            |c: &[usize]| -> Vec<usize> { rest.iter().copied().filter(|&e| c.contains(&self.iota(2 * e))).collect() };
        let edge_group = self.edge_group(geo).clone();
        if comps.len() == 1 {
            Ok(Split::Hnn {
                edge: id.into(),
                base: self.restrict(&comps[0], &rest),
                edge_group,
                mono_from: self.mono(2 * geo).clone(),
                mono_to: self.mono(2 * geo + 1).clone(),
            })
        } else {
            let from = self.iota(2 * geo);
            let (left, right) = if comps[0].contains(&from) { (&comps[0], &comps[1]) } else { (&comps[1], &comps[0]) };
            Ok(Split::Amalgam {
                edge: id.into(),
                left: self.restrict(left, &edges_within(left)),
                right: self.restrict(right, &edges_within(right)),
                edge_group,
                into_left: self.mono(2 * geo).clone(),
                into_right: self.mono(2 * geo + 1).clone(),
            })
        }
    }

    pub fn has_finite_edge_group(&self) -> bool {
        self.edge_groups.iter().any(|g| g.is_finite())
    }

    /// Graphviz rendering of the underlying graph with group labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gog {\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!(
                "  \"{}\" [label=\"{}: {}\"];\n",
                dot_escape(self.vertex_id(v)),
                dot_escape(self.vertex_id(v)),
                describe_group(self.vertex_group(v))
            ));
        }
        for geo in 0..self.edge_count() {
            let style = if self.tree.contains(geo) { ", style=bold" } else { "" };
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}: {}\"{}];\n",
                dot_escape(self.vertex_id(self.iota(2 * geo))),
                dot_escape(self.vertex_id(self.tau(2 * geo))),
                dot_escape(self.edge_id(geo)),
                describe_group(self.edge_group(geo)),
                style
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Short human-readable description of a virtually cyclic group.
pub fn describe_group(g: &VcGroup) -> String {
    let k = g.kernel().order();
    match g.class() {
        VcClass::Finite if k == 1 => "1".into(),
        VcClass::Finite => format!("finite({k})"),
        VcClass::Orientable if k == 1 => "Z".into(),
        VcClass::Orientable => format!("{k}-by-Z"),
        VcClass::Nonorientable if k == 1 => "Dinf".into(),
        VcClass::Nonorientable => format!("{k}-by-Dinf"),
    }
}

/// `lhs = rhs`, an instance of `e·α_ē(s)·ē = α_e(s)` with tree-edge symbols
/// removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<Token>,
    pub rhs: Vec<Token>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Token>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn render(&self, gog: &GraphOfGroups) -> String {
        let gens: Vec<String> = self.generators.iter().map(|t| format_word(gog, std::slice::from_ref(t))).collect();
        let mut out = format!("generators: {}\n", if gens.is_empty() { "none".into() } else { gens.join(" ") });
        if self.relations.is_empty() {
            out.push_str("relations: none\n");
        } else {
            out.push_str("relations:\n");
            for r in &self.relations {
                out.push_str(&format!("  {} = {}\n", format_word(gog, &r.lhs), format_word(gog, &r.rhs)));
            }
        }
        out
    }
}

/// Result of cutting a finite edge.
#[derive(Clone, Debug)]
pub enum Split {
    Amalgam {
        edge: String,
        left: GraphOfGroups,
        right: GraphOfGroups,
        edge_group: Arc<VcGroup>,
        into_left: VcHom,
        into_right: VcHom,
    },
    Hnn {
        edge: String,
        base: GraphOfGroups,
        edge_group: Arc<VcGroup>,
        mono_from: VcHom,
        mono_to: VcHom,
    },
}

/// How a graph of groups decomposes along its finite edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Index into the list of leaves.
    Leaf(usize),
    Amalgam { edge: String, left: Box<Decomposition>, right: Box<Decomposition> },
    Hnn { edge: String, base: Box<Decomposition> },
}

impl Decomposition {
    pub fn split_count(&self) -> usize {
        match self {
            Decomposition::Leaf(_) => 0,
            Decomposition::Amalgam { left, right, .. } => 1 + left.split_count() + right.split_count(),
            Decomposition::Hnn { base, .. } => 1 + base.split_count(),
        }
    }
}

/// Cuts finite edges (least id first) until every leaf has only infinite
/// edge groups.
pub fn infinite_edge_reduction(gog: &GraphOfGroups) -> (Vec<GraphOfGroups>, Decomposition) {
    let mut leaves = Vec::new();
    let tree = reduce_into(gog, &mut leaves);
    (leaves, tree)
}

fn reduce_into(gog: &GraphOfGroups, leaves: &mut Vec<GraphOfGroups>) -> Decomposition {
    let finite = (0..gog.edge_count())
        .filter(|&e| gog.edge_group(e).is_finite())
        .min_by(|&a, &b| gog.edge_id(a).cmp(gog.edge_id(b)));
    let Some(geo) = finite else {
        leaves.push(gog.clone());
        return Decomposition::Leaf(leaves.len() - 1);
    };
    match gog.split_along_finite_edge(gog.edge_id(geo)).expect("finite edge") {
        Split::Amalgam { edge, left, right, .. } => {
            let left = Box::new(reduce_into(&left, leaves));
            let right = Box::new(reduce_into(&right, leaves));
            Decomposition::Amalgam { edge, left, right }
        }
        Split::Hnn { edge, base, .. } => Decomposition::Hnn { edge, base: Box::new(reduce_into(&base, leaves)) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_vertex_is_valid_with_empty_tree() {
        let gog = fixtures::single_vertex(VcGroup::integers());
        assert!(gog.tree().edges.is_empty());
        assert_eq!(gog.presentation().render(&gog), "generators: g(v,[0,1])\nrelations: none\n");
    }

    #[test]
    fn bs23_is_valid_and_presented() {
        let gog = fixtures::bs23();
        assert!(gog.tree().edges.is_empty());
        let p = gog.presentation();
        assert_eq!(p.render(&gog), "generators: g(v,[0,1]) e(l)\nrelations:\n  e(l);g(v,[0,3]);E(l) = g(v,[0,2])\n");
    }

    #[test]
    fn killing_the_generator_is_reported() {
        let spec = GogSpec::default().vertex("v", VcGroup::integers()).edge(
            "l",
            "v",
            "v",
            VcGroup::integers(),
            GeneratorImages::orientable(vec![], VcElement::orientable(0, 0)),
            GeneratorImages::orientable(vec![], VcElement::orientable(0, 1)),
        );
        let report = validate(&spec);
        assert_eq!(
            report.issues,
            vec![Issue::NonInjectiveMono { edge: "l".into(), side: Side::From, witness: VcElement::orientable(0, 1) }]
        );
        assert!(matches!(GraphOfGroups::new(spec), Err(GogError::Invalid(Issue::NonInjectiveMono { .. }))));
    }

    #[test]
    fn structural_problems_are_all_listed() {
        let spec = GogSpec::default()
            .vertex("a", VcGroup::trivial())
            .vertex("a", VcGroup::trivial())
            .vertex("b", VcGroup::trivial())
            .edge("x", "a", "zz", VcGroup::trivial(), GeneratorImages::default(), GeneratorImages::default());
        let issues = validate(&spec).issues;
        assert!(issues.contains(&Issue::DuplicateVertex("a".into())));
        assert!(issues.contains(&Issue::UnknownVertex { edge: "x".into(), vertex: "zz".into() }));
        assert!(issues.iter().any(|i| matches!(i, Issue::Disconnected { .. })));
    }

    #[test]
    fn spanning_tree_choices() {
        let loop_only = fixtures::bs23();
        assert!(loop_only.tree().edges.is_empty());
        let theta = fixtures::theta();
        assert_eq!(theta.tree().edges, BTreeSet::from([theta.edge_index("x").unwrap()]));
        let g = Graph::new(vec!["b".into(), "a".into(), "c".into()], vec![("q".into(), 0, 2), ("p".into(), 1, 0)]);
        let t = spanning_tree(&g).unwrap();
        assert_eq!(t.root, 1);
        assert_eq!(t.path(2), &[2, 0]);
        let g = Graph::new(vec!["a".into(), "b".into()], vec![]);
        assert!(matches!(spanning_tree(&g), Err(GogError::Disconnected(_))));
    }

    #[test]
    fn presentation_is_deterministic() {
        for gog in fixtures::gog_corpus() {
            assert_eq!(gog.presentation().render(&gog), gog.clone().presentation().render(&gog));
        }
    }

    #[test]
    fn splits() {
        let z2z3 = fixtures::z2z3();
        match z2z3.split_along_finite_edge("e").unwrap() {
            Split::Amalgam { left, right, edge_group, .. } => {
                assert_eq!(left.vertex_group(0).kernel().order(), 2);
                assert_eq!(right.vertex_group(0).kernel().order(), 3);
                assert_eq!(edge_group.kernel().order(), 1);
            }
            other => panic!("{other:?}"),
        }
        let hnn = fixtures::trivial_loop_on_z();
        assert!(matches!(hnn.split_along_finite_edge("l").unwrap(), Split::Hnn { .. }));
        assert_eq!(fixtures::bs23().split_along_finite_edge("l").unwrap_err(), GogError::EdgeGroupNotFinite("l".into()));
    }

    #[test]
    fn edge_reduction() {
        let (leaves, tree) = infinite_edge_reduction(&fixtures::bs23());
        assert_eq!((leaves.len(), tree), (1, Decomposition::Leaf(0)));

        let (leaves, tree) = infinite_edge_reduction(&fixtures::z2z3());
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().all(|l| l.vertex_count() == 1));
        assert_eq!(tree.split_count(), 1);

        let (leaves, tree) = infinite_edge_reduction(&fixtures::theta_mixed());
        assert_eq!(leaves.len(), 1);
        assert_eq!(tree.split_count(), 1);
        assert!(matches!(tree, Decomposition::Hnn { .. }));

        for gog in fixtures::gog_corpus() {
            let (leaves, _) = infinite_edge_reduction(&gog);
            let mut seen: Vec<String> =
                leaves.iter().flat_map(|l| (0..l.vertex_count()).map(|v| l.vertex_id(v).to_string())).collect();
            seen.sort();
            let mut all: Vec<String> = (0..gog.vertex_count()).map(|v| gog.vertex_id(v).to_string()).collect();
            all.sort();
            assert_eq!(seen, all);
            assert!(leaves.iter().all(|l| !l.has_finite_edge_group()));
        }
    }
}
