//! Words in the fundamental group, normal forms and induced maps.
//!
//! Words are over the presentation relative to the maximal tree. Internally
//! each word is turned into a loop at the root of the tree (a groupoid path
//! `g₀ e₁ g₁ … eₙ gₙ`) by inserting tree paths, and reduced to the unique
//! path in which no pinch `e·α_ē(s)·ē` remains and every `g_{i-1}` is the
//! least element of its coset `g_{i-1}·α_{e_i}(G_e)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::doc::{element_from_json, format_element};
use crate::gog::{bar, GraphOfGroups};
use crate::vc::{VcElement, VcError, VcGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// An element of the vertex group at the given vertex.
    Vertex(usize, VcElement),
    /// An oriented edge.
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("token type mismatch: {0}")]
    TokenTypeMismatch(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("edge coset enumeration cap {0} exceeded")]
    EdgeCosetEnumerationCapExceeded(usize),
    #[error("projection mismatch: {0}")]
    ProjectionMismatch(String),
    #[error(transparent)]
    Vc(VcError),
}

impl From<VcError> for Pi1Error {
    fn from(e: VcError) -> Self {
        match e {
            VcError::CosetCapExceeded { cap } => Pi1Error::EdgeCosetEnumerationCapExceeded(cap),
            other => Pi1Error::Vc(other),
        }
    }
}

pub fn format_token(gog: &GraphOfGroups, t: &Token) -> String {
    match *t {
        Token::Vertex(v, x) => format!("g({},{})", gog.vertex_id(v), format_element(gog.vertex_group(v), &x)),
        Token::Edge(o) if o % 2 == 0 => format!("e({})", gog.edge_id(o / 2)),
        Token::Edge(o) => format!("E({})", gog.edge_id(o / 2)),
    }
}

/// Tokens joined by `;`, or `1` for the empty word.
pub fn format_word(gog: &GraphOfGroups, w: &[Token]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|t| format_token(gog, t)).collect::<Vec<_>>().join(";")
}

/// Parses `g(v,ELT)`, `e(ID)` and `E(ID)` tokens separated by `;`. The
/// empty string and `1` denote the empty word.
pub fn parse_word(gog: &GraphOfGroups, s: &str) -> Result<Vec<Token>, Pi1Error> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split(';').map(|t| parse_token(gog, t.trim())).collect()
}

fn parse_token(gog: &GraphOfGroups, t: &str) -> Result<Token, Pi1Error> {
    let bad = || Pi1Error::Parse(format!("malformed token {t:?}"));
    let inner = |prefix: &str| t.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    if let Some(body) = inner("g(") {
        let (id, elt) = body.split_once(',').ok_or_else(bad)?;
        let v = gog.vertex_index(id.trim()).ok_or_else(|| Pi1Error::Parse(format!("unknown vertex {id:?}")))?;
        let value: serde_json::Value = serde_json::from_str(elt).map_err(|e| Pi1Error::Parse(format!("{t:?}: {e}")))?;
        let x = element_from_json(gog.vertex_group(v), &value)
            .map_err(|m| Pi1Error::TokenTypeMismatch(format!("{t:?}: {m}")))?;
        return Ok(Token::Vertex(v, x));
    }
    for (prefix, reverse) in [("e(", false), ("E(", true)] {
        if let Some(id) = inner(prefix) {
            let geo = gog.edge_index(id.trim()).ok_or_else(|| Pi1Error::Parse(format!("unknown edge {id:?}")))?;
            return Ok(Token::Edge(2 * geo + usize::from(reverse)));
        }
    }
    Err(bad())
}

pub fn check_word(gog: &GraphOfGroups, w: &[Token]) -> Result<(), Pi1Error> {
    for t in w {
        match *t {
            Token::Vertex(v, x) => {
                if v >= gog.vertex_count() || !gog.vertex_group(v).contains(&x) {
                    return Err(Pi1Error::TokenTypeMismatch(format!("{x:?} is not in the group at vertex {v}")));
                }
            }
            Token::Edge(o) => {
                if o >= 2 * gog.edge_count() {
                    return Err(Pi1Error::TokenTypeMismatch(format!("no oriented edge {o}")));
                }
            }
        }
    }
    Ok(())
}

pub fn inverse_word(gog: &GraphOfGroups, w: &[Token]) -> Vec<Token> {
    w.iter()
        .rev()
        .map(|t| match *t {
            Token::Vertex(v, x) => Token::Vertex(v, gog.vertex_group(v).inv(&x)),
            Token::Edge(o) => Token::Edge(bar(o)),
        })
        .collect()
}

/// A reduced groupoid path `g₀ e₁ g₁ … eₙ gₙ` starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    start: usize,
    elems: Vec<VcElement>,
    edges: Vec<usize>,
}

impl NormalForm {
    pub fn trivial(gog: &GraphOfGroups, start: usize) -> Self {
        NormalForm { start, elems: vec![gog.vertex_group(start).identity()], edges: Vec::new() }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn elems(&self) -> &[VcElement] {
        &self.elems
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn end(&self, gog: &GraphOfGroups) -> usize {
        self.edges.last().map_or(self.start, |&o| gog.tau(o))
    }

    pub fn last_elem(&self) -> VcElement {
        *self.elems.last().expect("never empty")
    }

    pub fn is_identity(&self, gog: &GraphOfGroups) -> bool {
        self.edges.is_empty() && self.elems[0] == gog.vertex_group(self.start).identity()
    }

    /// Vertex of the path before `e_{i+1}`, i.e. where `g_i` lives.
    fn vertex_at(&self, gog: &GraphOfGroups, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            gog.tau(self.edges[i - 1])
        }
    }

    pub fn push_elem(&mut self, gog: &GraphOfGroups, x: &VcElement) {
        let v = self.end(gog);
        let top = self.elems.last_mut().expect("never empty");
        *top = gog.vertex_group(v).mul(top, x);
    }

    /// Appends the edge `o`, which must start where the path ends.
    pub fn push_edge(&mut self, gog: &GraphOfGroups, o: usize) -> Result<(), Pi1Error> {
        let here = self.end(gog);
        if gog.iota(o) != here {
            return Err(Pi1Error::TokenTypeMismatch(format!("edge {o} does not start at vertex {here}")));
        }
        let top = self.last_elem();
        if let Some(&last) = self.edges.last() {
            if last == bar(o) {
                if let Some(s) = gog.mono(o).preimage(&top) {
                    // last·α_o(s)·o = α_last(s)
                    self.edges.pop();
                    self.elems.pop();
                    let img = gog.mono(last).apply(&s);
                    self.push_elem(gog, &img);
                    return Ok(());
                }
            }
        }
        let (r, s) = gog.mono(o).left_coset_rep(&top, gog.coset_cap())?;
        *self.elems.last_mut().expect("never empty") = r;
        self.edges.push(o);
        self.elems.push(gog.mono(bar(o)).apply(&s));
        Ok(())
    }

    /// Appends a path starting where this one ends.
    pub fn append(&mut self, gog: &GraphOfGroups, other: &NormalForm) -> Result<(), Pi1Error> {
        self.push_elem(gog, &other.elems[0]);
        for (i, &o) in other.edges.iter().enumerate() {
            self.push_edge(gog, o)?;
            self.push_elem(gog, &other.elems[i + 1]);
        }
        Ok(())
    }

    pub fn inverse(&self, gog: &GraphOfGroups) -> Result<NormalForm, Pi1Error> {
        let end = self.end(gog);
        let mut out = NormalForm::trivial(gog, end);
        for i in (0..self.edges.len()).rev() {
            out.push_elem(gog, &gog.vertex_group(self.vertex_at(gog, i + 1)).inv(&self.elems[i + 1]));
            out.push_edge(gog, bar(self.edges[i]))?;
        }
        out.push_elem(gog, &gog.vertex_group(self.start).inv(&self.elems[0]));
        Ok(out)
    }

    /// Relative to the maximal tree: tree edges and identity elements
    /// dropped.
    pub fn to_word(&self, gog: &GraphOfGroups) -> Vec<Token> {
        let mut out = Vec::new();
        for (i, x) in self.elems.iter().enumerate() {
            let v = self.vertex_at(gog, i);
            if *x != gog.vertex_group(v).identity() {
                out.push(Token::Vertex(v, *x));
            }
            if let Some(&o) = self.edges.get(i) {
                if !gog.is_tree_edge(o) {
                    out.push(Token::Edge(o));
                }
            }
        }
        out
    }

    pub fn display(&self, gog: &GraphOfGroups) -> String {
        format_word(gog, &self.to_word(gog))
    }
}

/// One step of a groupoid path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Elem(VcElement),
    Edge(usize),
}

/// The loop at `start` spelling `w`: tree paths are inserted between
/// tokens, and the walk returns to `start` along the tree.
pub fn word_to_steps(gog: &GraphOfGroups, start: usize, w: &[Token]) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut here = start;
    let walk = |steps: &mut Vec<Step>, from: usize, to: usize| {
        if from != to {
            steps.extend(gog.tree().path(from).iter().rev().map(|&o| Step::Edge(bar(o))));
            steps.extend(gog.tree().path(to).iter().map(|&o| Step::Edge(o)));
        }
    };
    for t in w {
        match *t {
            Token::Vertex(v, x) => {
                walk(&mut steps, here, v);
                steps.push(Step::Elem(x));
                here = v;
            }
            Token::Edge(o) => {
                walk(&mut steps, here, gog.iota(o));
                steps.push(Step::Edge(o));
                here = gog.tau(o);
            }
        }
    }
    walk(&mut steps, here, start);
    steps
}

pub fn reduce_steps(gog: &GraphOfGroups, start: usize, steps: &[Step]) -> Result<NormalForm, Pi1Error> {
    let mut nf = NormalForm::trivial(gog, start);
    for s in steps {
        match *s {
            Step::Elem(x) => nf.push_elem(gog, &x),
            Step::Edge(o) => nf.push_edge(gog, o)?,
        }
    }
    Ok(nf)
}

/// Normal form of `w` as a loop at the root.
pub fn reduce(gog: &GraphOfGroups, w: &[Token]) -> Result<NormalForm, Pi1Error> {
    check_word(gog, w)?;
    reduce_steps(gog, gog.root(), &word_to_steps(gog, gog.root(), w))
}

/// Which pinch to remove first in [`reduce_with_strategy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Independent reduction: remove pinches one at a time in the chosen order,
/// then move every element to its canonical coset representative from left
/// to right.
pub fn reduce_with_strategy(gog: &GraphOfGroups, w: &[Token], strategy: Strategy) -> Result<NormalForm, Pi1Error> {
    check_word(gog, w)?;
    let root = gog.root();
    let mut elems = vec![gog.vertex_group(root).identity()];
    let mut edges: Vec<usize> = Vec::new();
    let mut here = root;
    for s in word_to_steps(gog, root, w) {
        match s {
            Step::Elem(x) => {
                let top = elems.last_mut().expect("never empty");
                *top = gog.vertex_group(here).mul(top, &x);
            }
            Step::Edge(o) => {
                edges.push(o);
                here = gog.tau(o);
                elems.push(gog.vertex_group(here).identity());
            }
        }
    }
    let vertex_before = |edges: &[usize], i: usize| if i == 0 { root } else { gog.tau(edges[i - 1]) };
    loop {
        let pinch = |i: &usize| {
            let i = *i;
            edges[i + 1] == bar(edges[i]) && gog.mono(edges[i + 1]).preimage(&elems[i + 1]).is_some()
        };
        let n = edges.len();
        let found = match strategy {
            Strategy::Leftmost => (0..n.saturating_sub(1)).find(pinch),
            Strategy::Rightmost => (0..n.saturating_sub(1)).rev().find(pinch),
        };
        let Some(i) = found else { break };
        let s = gog.mono(edges[i + 1]).preimage(&elems[i + 1]).expect("pinch");
        let g = gog.vertex_group(vertex_before(&edges, i));
        let merged = g.mul(&g.mul(&elems[i], &gog.mono(edges[i]).apply(&s)), &elems[i + 2]);
        elems.splice(i..i + 3, [merged]);
        edges.drain(i..i + 2);
    }
    for i in 0..edges.len() {
        let (r, s) = gog.mono(edges[i]).left_coset_rep(&elems[i], gog.coset_cap())?;
        elems[i] = r;
        let next = gog.vertex_group(gog.tau(edges[i]));
        elems[i + 1] = next.mul(&gog.mono(bar(edges[i])).apply(&s), &elems[i + 1]);
    }
    Ok(NormalForm { start: root, elems, edges })
}

pub fn pi1_eq(gog: &GraphOfGroups, u: &[Token], v: &[Token]) -> Result<bool, Pi1Error> {
    let mut w = u.to_vec();
    w.extend(inverse_word(gog, v));
    Ok(reduce(gog, &w)?.is_identity(gog))
}

/// The element of `G_v` equal to `w`, if `w` lies in the image of the
/// canonical inclusion of `G_v`.
pub fn membership_in_vertex_group(gog: &GraphOfGroups, w: &[Token], v: usize) -> Result<Option<VcElement>, Pi1Error> {
    check_word(gog, w)?;
    // w ∈ G_v iff γ_v⁻¹ · loop(w) · γ_v is a single element at v
    let path = gog.tree().path(v);
    let mut steps: Vec<Step> = path.iter().rev().map(|&o| Step::Edge(bar(o))).collect();
    steps.extend(word_to_steps(gog, gog.root(), w));
    steps.extend(path.iter().map(|&o| Step::Edge(o)));
    let nf = reduce_steps(gog, v, &steps)?;
    Ok(nf.edges.is_empty().then(|| nf.elems[0]))
}

/// A random word of `len` tokens; vertex elements have translation length
/// at most `max_shift`.
pub fn random_word<R: Rng + ?Sized>(gog: &GraphOfGroups, rng: &mut R, len: usize, max_shift: i64) -> Vec<Token> {
    (0..len)
        .map(|_| {
            if gog.edge_count() > 0 && rng.gen_bool(0.5) {
                Token::Edge(rng.gen_range(0..2 * gog.edge_count()))
            } else {
                let v = rng.gen_range(0..gog.vertex_count());
                Token::Vertex(v, gog.vertex_group(v).random_element(rng, max_shift))
            }
        })
        .collect()
}

/// Freely reduced word over the non-tree edges; letters are oriented edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<usize>);

impl FreeWord {
    pub fn push(&mut self, o: usize) {
        if self.0.last() == Some(&bar(o)) {
            self.0.pop();
        } else {
            self.0.push(o);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &o in &other.0 {
            out.push(o);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn display(&self, gog: &GraphOfGroups) -> String {
        let tokens: Vec<Token> = self.0.iter().map(|&o| Token::Edge(o)).collect();
        format_word(gog, &tokens)
    }
}

/// `φ`: kills every vertex group and every tree edge.
pub fn apply_phi(gog: &GraphOfGroups, w: &[Token]) -> FreeWord {
    let mut out = FreeWord::default();
    for t in w {
        if let Token::Edge(o) = *t {
            if !gog.is_tree_edge(o) {
                out.push(o);
            }
        }
    }
    out
}

/// Per-vertex projection used by a quotient construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `G_v → G_v / F_v`.
    MaxFinite,
    /// `G_v → G_v / C_v` for the maximal infinite cyclic `C_v` of `Z` or `D∞`.
    MaxCyclic,
}

impl Projection {
    pub fn codomain(self, g: &VcGroup) -> Result<VcGroup, VcError> {
        match self {
            Projection::MaxFinite => Ok(g.quotient_model().group()),
            Projection::MaxCyclic => g.quotient_mod_cyclic().map(|q| (*q).clone()),
        }
    }

    pub fn apply(self, g: &VcGroup, x: &VcElement) -> VcElement {
        match self {
            Projection::MaxFinite => g.project_max_finite(x),
            Projection::MaxCyclic => g.project_max_cyclic(x).expect("Z or D∞ vertex group"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum InducedHom {
    /// `π₁(Γ,𝒢) → π₁(Γ)`.
    PhiFree,
    /// Token-wise projection onto a quotient graph of groups on the same
    /// graph.
    QQuotient { target: Arc<GraphOfGroups>, projection: Projection },
}

impl InducedHom {
    /// Checks that `target` is `source` with every vertex and edge group
    /// replaced by its projection.
    pub fn q_induced(source: &GraphOfGroups, target: Arc<GraphOfGroups>, projection: Projection) -> Result<Self, Pi1Error> {
        let mismatch = |m: String| Err(Pi1Error::ProjectionMismatch(m));
        if source.graph() != target.graph() {
            return mismatch("graphs differ".into());
        }
        for v in 0..source.vertex_count() {
            let want = projection.codomain(source.vertex_group(v)).map_err(|e| Pi1Error::ProjectionMismatch(e.to_string()))?;
            if **target.vertex_group(v) != want {
                return mismatch(format!("vertex {} does not carry the projected group", source.vertex_id(v)));
            }
        }
        Ok(InducedHom::QQuotient { target, projection })
    }

    pub fn apply_q(&self, source: &GraphOfGroups, w: &[Token]) -> Result<NormalForm, Pi1Error> {
        let InducedHom::QQuotient { target, projection } = self else {
            return Err(Pi1Error::ProjectionMismatch("not a quotient map".into()));
        };
        reduce(target, &self.map_tokens(source, w, *projection))
    }

    pub(crate) fn map_tokens(&self, source: &GraphOfGroups, w: &[Token], projection: Projection) -> Vec<Token> {
        w.iter()
            .map(|t| match *t {
                Token::Vertex(v, x) => Token::Vertex(v, projection.apply(source.vertex_group(v), &x)),
                Token::Edge(o) => Token::Edge(o),
            })
            .collect()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::fixtures;

    fn w(gog: &GraphOfGroups, s: &str) -> Vec<Token> {
        parse_word(gog, s).unwrap()
    }

    #[test]
    fn edge_then_inverse_cancels() {
        let gog = fixtures::bs23();
        assert!(reduce(&gog, &w(&gog, "e(l);E(l)")).unwrap().is_identity(&gog));
        assert_eq!(reduce(&gog, &[]).unwrap().display(&gog), "1");
    }

    #[test]
    fn bs23_relation_instances() {
        let gog = fixtures::bs23();
        assert_eq!(reduce(&gog, &w(&gog, "e(l);g(v,[0,3]);E(l)")).unwrap().display(&gog), "g(v,[0,2])");
        assert_eq!(reduce(&gog, &w(&gog, "e(l);g(v,[0,6]);E(l)")).unwrap().display(&gog), "g(v,[0,4])");
        assert!(pi1_eq(&gog, &w(&gog, "e(l);g(v,[0,3]);E(l)"), &w(&gog, "g(v,[0,2])")).unwrap());
        assert!(!pi1_eq(&gog, &w(&gog, "g(v,[0,1])"), &w(&gog, "g(v,[0,2])")).unwrap());
        let u = w(&gog, "g(v,[0,5]);e(l);g(v,[0,1])");
        assert!(pi1_eq(&gog, &u, &u).unwrap());
    }

    #[test]
    fn rewriting_oracle_agrees_on_bs23() {
        // e x^{3k} E → x^{2k} applied repeatedly, innermost first
        let gog = fixtures::bs23();
        for k in -3..=3 {
            let word = w(&gog, &format!("e(l);e(l);g(v,[0,{}]);E(l);E(l)", 9 * k));
            let expected = if k == 0 { "1".to_string() } else { format!("g(v,[0,{}])", 4 * k) };
            assert_eq!(reduce(&gog, &word).unwrap().display(&gog), expected);
        }
    }

    #[test]
    fn parse_errors() {
        let gog = fixtures::bs23();
        assert!(matches!(parse_word(&gog, "g(v,[0,1,2])"), Err(Pi1Error::TokenTypeMismatch(_))));
        assert!(matches!(parse_word(&gog, "g(w,[0,1])"), Err(Pi1Error::Parse(_))));
        assert!(matches!(parse_word(&gog, "x(l)"), Err(Pi1Error::Parse(_))));
        assert_eq!(parse_word(&gog, "E(l)").unwrap(), vec![Token::Edge(1)]);
    }

    #[test]
    fn membership() {
        let gog = fixtures::bs23();
        assert_eq!(membership_in_vertex_group(&gog, &w(&gog, "g(v,[0,4])"), 0).unwrap(), Some(VcElement::orientable(0, 4)));
        assert_eq!(membership_in_vertex_group(&gog, &w(&gog, "e(l)"), 0).unwrap(), None);
        assert_eq!(
            membership_in_vertex_group(&gog, &w(&gog, "e(l);g(v,[0,3]);E(l)"), 0).unwrap(),
            Some(VcElement::orientable(0, 2))
        );

        let z2z3 = fixtures::z2z3();
        let word = w(&z2z3, "g(a,1);g(b,1);g(a,1)");
        let nf = reduce(&z2z3, &word).unwrap();
        assert_eq!(nf.to_word(&z2z3).len(), 3);
        for v in 0..2 {
            assert_eq!(membership_in_vertex_group(&z2z3, &word, v).unwrap(), None);
        }
        // a vertex element away from the root is recognised at its own vertex
        let b = z2z3.vertex_index("b").unwrap();
        assert_eq!(membership_in_vertex_group(&z2z3, &w(&z2z3, "g(b,2)"), b).unwrap(), Some(VcElement::finite(2)));
    }

    #[test]
    fn phi_examples() {
        let gog = fixtures::bs23();
        assert!(apply_phi(&gog, &w(&gog, "g(v,[0,5])")).is_empty());
        assert_eq!(apply_phi(&gog, &w(&gog, "e(l)")), FreeWord(vec![0]));
        assert!(apply_phi(&gog, &w(&gog, "e(l);g(v,[0,3]);E(l)")).is_empty());
    }

    #[test]
    fn vertex_groups_inject() {
        let mut rng = StdRng::seed_from_u64(5);
        for gog in fixtures::gog_corpus() {
            for _ in 0..20 {
                let v = rng.gen_range(0..gog.vertex_count());
                let x = gog.vertex_group(v).random_element(&mut rng, 4);
                assert_eq!(membership_in_vertex_group(&gog, &[Token::Vertex(v, x)], v).unwrap(), Some(x));
            }
        }
    }

    #[test]
    fn strategies_agree_and_reduce_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(9);
        for gog in fixtures::gog_corpus() {
            for _ in 0..50 {
                let len = rng.gen_range(0..=12);
                let word = random_word(&gog, &mut rng, len, 3);
                let nf = reduce(&gog, &word).unwrap();
                assert_eq!(reduce_with_strategy(&gog, &word, Strategy::Leftmost).unwrap(), nf);
                assert_eq!(reduce_with_strategy(&gog, &word, Strategy::Rightmost).unwrap(), nf);
                assert_eq!(reduce(&gog, &nf.to_word(&gog)).unwrap(), nf);
            }
        }
    }

    #[test]
    fn inverse_and_append() {
        let mut rng = StdRng::seed_from_u64(13);
        for gog in fixtures::gog_corpus() {
            for _ in 0..20 {
                let u = random_word(&gog, &mut rng, 6, 3);
                let mut nf = reduce(&gog, &u).unwrap();
                let inv = nf.inverse(&gog).unwrap();
                assert_eq!(inv, reduce(&gog, &inverse_word(&gog, &u)).unwrap());
                nf.append(&gog, &inv).unwrap();
                assert!(nf.is_identity(&gog));
            }
        }
    }
}
