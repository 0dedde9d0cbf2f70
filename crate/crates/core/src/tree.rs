//! Finite balls in the Bass–Serre tree, the action on them, stabilizers and
//! quotients by the kernels of induced maps.
//!
//! A tree vertex `gG_v` is stored as the reduced groupoid path from the
//! root to `v` with its last element set to the identity; two paths give
//! the same vertex exactly when their normal forms agree in this form.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::Rng;
use thiserror::Error;

use crate::gog::{bar, dot_escape, GraphOfGroups};
use crate::pi1::{
    apply_phi, inverse_word, membership_in_vertex_group, random_word, reduce, reduce_steps, FreeWord, InducedHom,
    NormalForm, Pi1Error, Step, Token,
};
use crate::vc::VcError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error("enumeration cap {0} leaves no room for a single neighbour")]
    EnumerationCapExceeded(usize),
    #[error("stabilizer check failed: {0}")]
    StabilizerCheckFailed(String),
    #[error("ball is not a tree: {0}")]
    NotATree(String),
}

impl From<VcError> for TreeError {
    fn from(e: VcError) -> Self {
        TreeError::Pi1(e.into())
    }
}

/// A vertex `gG_v` of the Bass–Serre tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub label: usize,
    pub path: NormalForm,
}

impl TreeVertex {
    fn from_path(gog: &GraphOfGroups, mut path: NormalForm) -> Self {
        let label = path.end(gog);
        path = normalize_last(gog, path);
        TreeVertex { label, path }
    }

    /// The vertex `γ_v G_v` reached from the root along the maximal tree.
    pub fn base(gog: &GraphOfGroups, v: usize) -> Result<Self, TreeError> {
        let steps: Vec<Step> = gog.tree().path(v).iter().map(|&o| Step::Edge(o)).collect();
        Ok(Self::from_path(gog, reduce_steps(gog, gog.root(), &steps)?))
    }

    /// Representative `g` of `gG_v`, as a word relative to the maximal tree.
    pub fn representative(&self, gog: &GraphOfGroups) -> Vec<Token> {
        self.path.to_word(gog)
    }

    pub fn display(&self, gog: &GraphOfGroups) -> String {
        format!("{}/{}", gog.vertex_id(self.label), self.path.display(gog))
    }
}

fn normalize_last(gog: &GraphOfGroups, mut path: NormalForm) -> NormalForm {
    let v = path.end(gog);
    let top = path.last_elem();
    path.push_elem(gog, &gog.vertex_group(v).inv(&top));
    path
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallEdge {
    pub parent: usize,
    pub child: usize,
    /// Oriented edge of the graph, read from parent to child.
    pub edge: usize,
}

/// The radius-`r` ball around a base vertex, in breadth-first order.
#[derive(Clone, Debug)]
pub struct TreeBall {
    pub radius: usize,
    pub vertices: Vec<TreeVertex>,
    pub depth: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub edges: Vec<BallEdge>,
    /// Set when a transversal at this vertex was cut off by the cap.
    pub truncated: Vec<bool>,
}

/// Breadth-first enumeration of the ball of radius `r` around `γ_{v0} G_{v0}`.
/// At most `branch_cap` cosets are taken per incident edge.
pub fn ball(gog: &GraphOfGroups, v0: usize, r: usize, branch_cap: usize) -> Result<TreeBall, TreeError> {
    if branch_cap == 0 {
        return Err(TreeError::EnumerationCapExceeded(branch_cap));
    }
    let mut transversals: HashMap<usize, (Vec<_>, bool)> = HashMap::new();
    let base = TreeVertex::base(gog, v0)?;
    let mut out = TreeBall {
        radius: r,
        vertices: vec![base.clone()],
        depth: vec![0],
        parent: vec![None],
        edges: Vec::new(),
        truncated: vec![false],
    };
    let mut index: HashMap<TreeVertex, usize> = HashMap::from([(base, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if out.depth[i] == r {
            continue;
        }
        let x = out.vertices[i].clone();
        for o in gog.out_edges(x.label) {
            if !transversals.contains_key(&o) {
                transversals.insert(o, gog.mono(o).left_transversal(branch_cap)?);
            }
            let (reps, cut) = &transversals[&o];
            out.truncated[i] |= *cut;
            for rep in reps {
                let mut p = x.path.clone();
                p.push_elem(gog, rep);
                p.push_edge(gog, o)?;
                let y = TreeVertex::from_path(gog, p);
                if y.path.edges().len() < x.path.edges().len() {
                    let parent = out.parent[i].map(|p| &out.vertices[p]);
                    if parent != Some(&y) {
                        return Err(TreeError::NotATree(format!("backtrack from {} misses its parent", x.display(gog))));
                    }
                    continue;
                }
                if index.contains_key(&y) {
                    return Err(TreeError::NotATree(format!("{} reached twice", y.display(gog))));
                }
                let j = out.vertices.len();
                index.insert(y.clone(), j);
                out.vertices.push(y);
                out.depth.push(out.depth[i] + 1);
                out.parent.push(Some(i));
                out.truncated.push(false);
                out.edges.push(BallEdge { parent: i, child: j, edge: o });
                queue.push_back(j);
            }
        }
    }
    Ok(out)
}

impl TreeBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.parent == i || e.child == i).count()
    }

    pub fn is_tree(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.parent, e.child)).collect();
        is_tree(self.len(), &pairs)
    }

    /// Vertices whose full neighbourhood was enumerated.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.depth[i] < self.radius && !self.truncated[i])
    }

    pub fn to_dot(&self, gog: &GraphOfGroups) -> String {
        let mut out = String::from("graph ball {\n");
        for (i, x) in self.vertices.iter().enumerate() {
            let style = if self.truncated[i] { ", style=dashed" } else { "" };
            out.push_str(&format!("  n{i} [label=\"{}\"{style}];\n", dot_escape(&x.display(gog))));
        }
        for e in &self.edges {
            out.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.parent, e.child, dot_escape(gog.edge_id(e.edge / 2))));
        }
        out.push_str("}\n");
        out
    }
}

/// `Σ_{ι(o) = v} [G_v : α_o(G_e)]`, or `None` if some index is infinite.
pub fn expected_degree(gog: &GraphOfGroups, v: usize) -> Option<u64> {
    gog.out_edges(v).into_iter().map(|o| gog.mono(o).index_of_image()).sum()
}

/// `w · x`.
pub fn act(gog: &GraphOfGroups, w: &[Token], x: &TreeVertex) -> Result<TreeVertex, TreeError> {
    let mut p = reduce(gog, w)?;
    p.append(gog, &x.path)?;
    Ok(TreeVertex::from_path(gog, p))
}

/// `Stab(x) = g G_v g⁻¹`, checked on random samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerWitness {
    pub conjugator: Vec<Token>,
    pub label: usize,
    pub fixed_checked: usize,
    pub moved_checked: usize,
}

pub fn stabilizer_witness<R: Rng + ?Sized>(
    gog: &GraphOfGroups,
    x: &TreeVertex,
    rng: &mut R,
) -> Result<StabilizerWitness, TreeError> {
    let g = x.representative(gog);
    let g_inv = inverse_word(gog, &g);
    let v = x.label;
    let conj = |h: Token| -> Vec<Token> {
        let mut w = g.clone();
        w.push(h);
        w.extend(g_inv.iter().copied());
        w
    };
    for _ in 0..50 {
        let h = gog.vertex_group(v).random_element(rng, 5);
        let w = conj(Token::Vertex(v, h));
        if act(gog, &w, x)? != *x {
            return Err(TreeError::StabilizerCheckFailed(format!("conjugate of {h:?} moves {}", x.display(gog))));
        }
    }
    let mut moved = 0;
    for _ in 0..2000 {
        if moved == 50 {
            break;
        }
        let len = rng.gen_range(1..=6);
        let w = random_word(gog, rng, len, 3);
        let mut c = g_inv.clone();
        c.extend(w.iter().copied());
        c.extend(g.iter().copied());
        if membership_in_vertex_group(gog, &c, v)?.is_some() {
            continue;
        }
        if act(gog, &w, x)? == *x {
            return Err(TreeError::StabilizerCheckFailed(format!("a non-member fixes {}", x.display(gog))));
        }
        moved += 1;
    }
    Ok(StabilizerWitness { conjugator: g, label: v, fixed_checked: 50, moved_checked: moved })
}

/// Key of a vertex class in a quotient ball.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassKey {
    /// Label and `φ`-image of the representative.
    Free(usize, FreeWord),
    /// Label and the image vertex in the target tree.
    Coset(usize, NormalForm),
}

/// Image of a ball under `Ker(h) \ X`.
#[derive(Clone, Debug)]
pub struct QuotientBall {
    pub keys: Vec<ClassKey>,
    pub labels: Vec<usize>,
    /// `(from, to, geometric edge)`, oriented along the edge.
    pub edges: Vec<(usize, usize, usize)>,
    /// Class of the ball's base vertex.
    pub base: usize,
}

fn class_key(gog: &GraphOfGroups, h: &InducedHom, x: &TreeVertex) -> Result<ClassKey, TreeError> {
    match h {
        InducedHom::PhiFree => Ok(ClassKey::Free(x.label, apply_phi(gog, &x.path.to_word(gog)))),
        InducedHom::QQuotient { target, projection } => {
            let w = h.map_tokens(gog, &x.path.to_word(gog), *projection);
            let image = TreeVertex::from_path(target, reduce(target, &w)?);
            Ok(ClassKey::Coset(x.label, image.path))
        }
    }
}

/// Identifies ball vertices with the same image class.
pub fn quotient_ball_by_kernel(gog: &GraphOfGroups, b: &TreeBall, h: &InducedHom) -> Result<QuotientBall, TreeError> {
    let mut index: HashMap<ClassKey, usize> = HashMap::new();
    let mut keys = Vec::new();
    let mut labels = Vec::new();
    let mut class_of = Vec::with_capacity(b.len());
    for x in &b.vertices {
        let key = class_key(gog, h, x)?;
        let id = *index.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            labels.push(x.label);
            keys.len() - 1
        });
        class_of.push(id);
    }
    let mut edges = BTreeSet::new();
    for e in &b.edges {
        let (p, c) = (class_of[e.parent], class_of[e.child]);
        edges.insert(if e.edge % 2 == 0 { (p, c, e.edge / 2) } else { (c, p, e.edge / 2) });
    }
    Ok(QuotientBall { keys, labels, edges: edges.into_iter().collect(), base: class_of[0] })
}

impl QuotientBall {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_tree(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b, _)| (a, b)).collect();
        is_tree(self.len(), &pairs)
    }

    fn distances(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[self.base] = Some(0);
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && dist[y].is_none() {
                        dist[y] = Some(dist[v].expect("visited") + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        dist
    }

    /// Restriction to the classes within distance `r` of the base class.
    pub fn truncate(&self, r: usize) -> QuotientBall {
        let dist = self.distances();
        let keep: Vec<usize> = (0..self.len()).filter(|&i| dist[i].is_some_and(|d| d <= r)).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        QuotientBall {
            keys: keep.iter().map(|&i| self.keys[i].clone()).collect(),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|&(a, b, g)| Some((*new_index.get(&a)?, *new_index.get(&b)?, g)))
                .collect(),
            base: new_index[&self.base],
        }
    }

    /// Canonical string of the rooted, labelled tree; `None` if the ball is
    /// not a tree.
    pub fn rooted_encoding(&self) -> Option<String> {
        if !self.is_tree() {
            return None;
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.len()];
        for &(a, b, g) in &self.edges {
            adj[a].push((b, 2 * g));
            adj[b].push((a, 2 * g + 1));
        }
        Some(encode(&adj, &self.labels, self.base, None))
    }

    pub fn to_dot(&self, gog: &GraphOfGroups) -> String {
        let mut out = String::from("graph quotient {\n");
        for (i, &v) in self.labels.iter().enumerate() {
            let key = match &self.keys[i] {
                ClassKey::Free(_, w) => w.display(gog),
                ClassKey::Coset(_, p) => p.display(gog),
            };
            out.push_str(&format!("  n{i} [label=\"{}/{}\"];\n", dot_escape(gog.vertex_id(v)), dot_escape(&key)));
        }
        for &(a, b, g) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b} [label=\"{}\"];\n", dot_escape(gog.edge_id(g))));
        }
        out.push_str("}\n");
        out
    }
}

fn encode(adj: &[Vec<(usize, usize)>], labels: &[usize], v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|(w, _)| Some(*w) != parent)
        .map(|&(w, o)| format!("{o}:{}", encode(adj, labels, w, Some(v))))
        .collect();
    children.sort();
    format!("({}{})", labels[v], children.concat())
}

/// Connected with `|E| = |V| - 1`.
pub fn is_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if w < n && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical encoding of the radius-`r` ball around `v0` in the universal
/// cover of the underlying graph, built from non-backtracking edge paths.
pub fn universal_cover_encoding(gog: &GraphOfGroups, v0: usize, r: usize) -> String {
    fn go(gog: &GraphOfGroups, v: usize, last: Option<usize>, left: usize) -> String {
        let mut children: Vec<String> = if left == 0 {
            Vec::new()
        } else {
            gog.out_edges(v)
                .into_iter()
                .filter(|&o| Some(bar(o)) != last)
                .map(|o| format!("{o}:{}", go(gog, gog.tau(o), Some(o), left - 1)))
                .collect()
        };
        children.sort();
        format!("({v}{})", children.concat())
    }
    go(gog, v0, None, r)
}
