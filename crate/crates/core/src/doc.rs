//! JSON input documents and element encodings.
//!
//! Elements are encoded by group class: finite → `k`, orientable →
//! `[f, n]`, nonorientable → `[c, [n, eps]]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::finite::{FiniteGroup, FiniteHom};
use crate::gog::{validate, EdgeSpec, GogError, GogSpec, GraphOfGroups, Issue, VertexSpec};
use crate::vc::{Dihedral, GeneratorImages, VcClass, VcElement, VcError, VcGroup, VcHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation error: {0}")]
    Validation(Issue),
    #[error(transparent)]
    Gog(#[from] GogError),
}

fn schema(path: impl Into<String>, message: impl ToString) -> DocError {
    DocError::Schema { path: path.into(), message: message.to_string() }
}

pub fn element_to_json(g: &VcGroup, x: &VcElement) -> Value {
    match g.class() {
        VcClass::Finite => json!(x.fin),
        VcClass::Orientable => json!([x.fin, x.dih.shift]),
        VcClass::Nonorientable => json!([x.fin, [x.dih.shift, u8::from(x.dih.flip)]]),
    }
}

pub fn format_element(g: &VcGroup, x: &VcElement) -> String {
    element_to_json(g, x).to_string()
}

pub fn element_from_json(g: &VcGroup, v: &Value) -> Result<VcElement, String> {
    let int = |v: &Value| v.as_i64().ok_or_else(|| format!("expected an integer, found {v}"));
    let index = |v: &Value| v.as_u64().map(|n| n as usize).ok_or_else(|| format!("expected an index, found {v}"));
    let pair = |v: &Value| -> Result<(Value, Value), String> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((a.clone(), b.clone())),
            _ => Err(format!("expected a pair, found {v}")),
        }
    };
    let x = match g.class() {
        VcClass::Finite => VcElement::finite(index(v)?),
        VcClass::Orientable => {
            let (f, n) = pair(v)?;
            VcElement::orientable(index(&f)?, int(&n)?)
        }
        VcClass::Nonorientable => {
            let (c, d) = pair(v)?;
            let (n, eps) = pair(&d)?;
            let flip = match int(&eps)? {
                0 => false,
                1 => true,
                e => return Err(format!("dihedral bit must be 0 or 1, found {e}")),
            };
            VcElement { fin: index(&c)?, dih: Dihedral::new(int(&n)?, flip) }
        }
    };
    g.check(&x).map_err(|e| e.to_string())?;
    Ok(x)
}

/// A finite group: a Cayley table or permutation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm_gens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDoc {
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perm_gens: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
    Orientable {
        finite_part: FiniteDoc,
        alpha: Vec<usize>,
    },
    Nonorientable {
        #[serde(rename = "C")]
        c: FiniteDoc,
        #[serde(rename = "A")]
        a: FiniteDoc,
        #[serde(rename = "B")]
        b: FiniteDoc,
        #[serde(rename = "C_in_A")]
        c_in_a: Vec<usize>,
        #[serde(rename = "C_in_B")]
        c_in_b: Vec<usize>,
        refl_a: usize,
        refl_b: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub group: GroupDoc,
}

/// Images of generators; elements use the target's encoding.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    #[serde(default)]
    pub finite: Vec<(usize, Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub group: GroupDoc,
    pub mono_from: HomDoc,
    pub mono_to: HomDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

fn finite_from_parts(
    path: &str,
    table: &Option<Vec<Vec<usize>>>,
    perm_gens: &Option<Vec<Vec<usize>>>,
    generators: &Option<Vec<usize>>,
) -> Result<FiniteGroup, DocError> {
    let group = match (table, perm_gens) {
        (Some(t), None) => match generators {
            Some(gens) => FiniteGroup::from_table_with_gens(t.clone(), gens.clone()),
            None => FiniteGroup::from_table(t.clone()),
        },
        (None, Some(p)) if generators.is_none() => FiniteGroup::from_perm_gens(p),
        (None, Some(_)) => return Err(schema(path, "generators only accompany a table")),
        _ => return Err(schema(path, "give exactly one of table or perm_gens")),
    };
    group.map_err(|e| schema(path, e))
}

fn finite_doc(path: &str, d: &FiniteDoc) -> Result<Arc<FiniteGroup>, DocError> {
    if let Some(kind) = &d.kind {
        if kind != "finite" {
            return Err(schema(format!("{path}.kind"), "finite part must have kind finite"));
        }
    }
    finite_from_parts(path, &d.table, &d.perm_gens, &d.generators).map(Arc::new)
}

pub fn group_from_doc(path: &str, d: &GroupDoc) -> Result<VcGroup, DocError> {
    let vc = |e: VcError| schema(path, e);
    match d {
        GroupDoc::Finite { table, perm_gens, generators } => {
            Ok(VcGroup::finite(Arc::new(finite_from_parts(path, table, perm_gens, generators)?)))
        }
        GroupDoc::Orientable { finite_part, alpha } => {
            let f = finite_doc(&format!("{path}.finite_part"), finite_part)?;
            VcGroup::orientable(f, alpha.clone()).map_err(vc)
        }
        GroupDoc::Nonorientable { c, a, b, c_in_a, c_in_b, refl_a, refl_b } => {
            let c = finite_doc(&format!("{path}.C"), c)?;
            let a = finite_doc(&format!("{path}.A"), a)?;
            let b = finite_doc(&format!("{path}.B"), b)?;
            let ea = FiniteHom::new(c.clone(), a, c_in_a.clone()).map_err(|e| schema(format!("{path}.C_in_A"), e))?;
            let eb = FiniteHom::new(c, b, c_in_b.clone()).map_err(|e| schema(format!("{path}.C_in_B"), e))?;
            VcGroup::nonorientable(ea, eb, *refl_a, *refl_b).map_err(vc)
        }
    }
}

fn finite_to_doc(g: &FiniteGroup, kind: bool) -> FiniteDoc {
    FiniteDoc {
        kind: kind.then(|| "finite".to_string()),
        table: Some(g.rows()),
        perm_gens: None,
        generators: g.has_explicit_generators().then(|| g.generators().to_vec()),
    }
}

/// Canonical encoding: Cayley tables, explicit generators when present.
pub fn group_to_doc(g: &VcGroup) -> GroupDoc {
    match g.class() {
        VcClass::Finite => {
            let f = finite_to_doc(g.kernel(), false);
            GroupDoc::Finite { table: f.table, perm_gens: None, generators: f.generators }
        }
        VcClass::Orientable => GroupDoc::Orientable {
            finite_part: finite_to_doc(g.kernel(), true),
            alpha: g.alpha().expect("orientable").to_vec(),
        },
        VcClass::Nonorientable => {
            let am = g.amalgam().expect("nonorientable");
            GroupDoc::Nonorientable {
                c: finite_to_doc(g.kernel(), true),
                a: finite_to_doc(&am.a, true),
                b: finite_to_doc(&am.b, true),
                c_in_a: am.c_in_a.images().to_vec(),
                c_in_b: am.c_in_b.images().to_vec(),
                refl_a: am.refl_a,
                refl_b: am.refl_b,
            }
        }
    }
}

pub fn hom_from_doc(path: &str, d: &HomDoc, target: &VcGroup) -> Result<GeneratorImages, DocError> {
    let elt = |p: String, v: &Value| element_from_json(target, v).map_err(|m| schema(p, m));
    let finite = d
        .finite
        .iter()
        .enumerate()
        .map(|(i, (k, v))| Ok((*k, elt(format!("{path}.finite[{i}]"), v)?)))
        .collect::<Result<Vec<_>, DocError>>()?;
    let opt = |name: &str, v: &Option<Value>| v.as_ref().map(|v| elt(format!("{path}.{name}"), v)).transpose();
    Ok(GeneratorImages { finite, t: opt("t", &d.t)?, a: opt("a", &d.a)?, b: opt("b", &d.b)? })
}

/// Canonical encoding: the image of every finite-part element, then the
/// section generators.
pub fn hom_to_doc(h: &VcHom) -> HomDoc {
    let (src, tgt) = (h.source(), h.target());
    let enc = |x: &VcElement| element_to_json(tgt, &h.apply(x));
    let finite = src.kernel().elements().map(|k| (k, enc(&VcElement::finite(k)))).collect();
    let (t, a, b) = match src.class() {
        VcClass::Finite => (None, None, None),
        VcClass::Orientable => (Some(enc(&src.t())), None, None),
        VcClass::Nonorientable => (None, Some(enc(&src.reflection_a())), Some(enc(&src.reflection_b()))),
    };
    HomDoc { finite, t, a, b }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e))
    }

    /// Builds the unvalidated specification.
    pub fn to_spec(&self) -> Result<GogSpec, DocError> {
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let group = group_from_doc(&format!("vertices[{i}].group"), &v.group)?;
            vertices.push(VertexSpec { id: v.id.clone(), group: Arc::new(group) });
        }
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let group = group_from_doc(&format!("edges[{i}].group"), &e.group)?;
            let target = |id: &str, side: &str| {
                vertices
                    .iter()
                    .find(|v| v.id == id)
                    .map(|v| v.group.clone())
                    .ok_or_else(|| schema(format!("edges[{i}].{side}"), format!("unknown vertex {id}")))
            };
            let from_group = target(&e.from, "from")?;
            let to_group = target(&e.to, "to")?;
            edges.push(EdgeSpec {
                id: e.id.clone(),
                from: e.from.clone(),
                to: e.to.clone(),
                group: Arc::new(group),
                mono_from: hom_from_doc(&format!("edges[{i}].mono_from"), &e.mono_from, &from_group)?,
                mono_to: hom_from_doc(&format!("edges[{i}].mono_to"), &e.mono_to, &to_group)?,
            });
        }
        Ok(GogSpec { vertices, edges })
    }

    /// Parses and validates strictly.
    pub fn to_gog(&self) -> Result<GraphOfGroups, DocError> {
        let spec = self.to_spec()?;
        if let Some(issue) = validate(&spec).issues.into_iter().next() {
            return Err(DocError::Validation(issue));
        }
        Ok(GraphOfGroups::new(spec)?)
    }

    /// Canonical document of a graph of groups.
    pub fn from_gog(gog: &GraphOfGroups) -> Self {
        let vertices = (0..gog.vertex_count())
            .map(|v| VertexDoc { id: gog.vertex_id(v).into(), group: group_to_doc(gog.vertex_group(v)) })
            .collect();
        let edges = (0..gog.edge_count())
            .map(|e| EdgeDoc {
                id: gog.edge_id(e).into(),
                from: gog.vertex_id(gog.iota(2 * e)).into(),
                to: gog.vertex_id(gog.tau(2 * e)).into(),
                group: group_to_doc(gog.edge_group(e)),
                mono_from: hom_to_doc(gog.mono(2 * e)),
                mono_to: hom_to_doc(gog.mono(2 * e + 1)),
            })
            .collect();
        InputDocument { vertices, edges }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_json_compact(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// SHA-256 of the compact canonical document, in hex.
pub fn digest(gog: &GraphOfGroups) -> String {
    hex::encode(Sha256::digest(InputDocument::from_gog(gog).to_json_compact().as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn element_encodings_round_trip() {
        for g in fixtures::vc_corpus().into_iter().take(40) {
            for x in g.ball(2) {
                let v = element_to_json(&g, &x);
                assert_eq!(element_from_json(&g, &v), Ok(x));
            }
        }
        let d = VcGroup::infinite_dihedral();
        assert_eq!(format_element(&d, &VcElement::nonorientable(0, -2, true)), "[0,[-2,1]]");
        assert!(element_from_json(&d, &json!([0, [1, 2]])).is_err());
        assert!(element_from_json(&VcGroup::integers(), &json!([1, 0])).is_err());
    }

    #[test]
    fn minimal_document() {
        let doc = InputDocument::from_json(r#"{"vertices":[{"id":"v","group":{"kind":"finite","table":[[0]]}}]}"#)
            .unwrap();
        let gog = doc.to_gog().unwrap();
        assert_eq!(gog.vertex_count(), 1);
        assert_eq!(gog.edge_count(), 0);
    }

    #[test]
    fn perm_gens_are_accepted() {
        let text = r#"{"vertices":[{"id":"v","group":{"kind":"finite","perm_gens":[[1,0,2],[1,2,0]]}}]}"#;
        let gog = InputDocument::from_json(text).unwrap().to_gog().unwrap();
        assert_eq!(gog.vertex_group(0).kernel().order(), 6);
    }

    #[test]
    fn round_trip_is_a_fixpoint() {
        for gog in fixtures::gog_corpus() {
            let doc = InputDocument::from_gog(&gog);
            let again = InputDocument::from_json(&doc.to_json_pretty()).unwrap().to_gog().unwrap();
            assert_eq!(InputDocument::from_gog(&again), doc);
            assert_eq!(digest(&again), digest(&gog));
        }
    }

    #[test]
    fn schema_errors_carry_paths() {
        let text = r#"{"vertices":[{"id":"v","group":{"kind":"finite","table":[[0,1],[1,1]]}}]}"#;
        let err = InputDocument::from_json(text).unwrap().to_gog().unwrap_err();
        assert!(matches!(err, DocError::Schema { ref path, .. } if path == "vertices[0].group"), "{err}");
        assert!(matches!(InputDocument::from_json("{\"vertices\": 3}"), Err(DocError::Schema { .. })));
    }

    #[test]
    fn killing_mono_is_a_validation_error() {
        let text = r#"{"vertices":[{"id":"v","group":{"kind":"orientable","finite_part":{"table":[[0]]},"alpha":[0]}}],
          "edges":[{"id":"l","from":"v","to":"v","group":{"kind":"orientable","finite_part":{"table":[[0]]},"alpha":[0]},
                    "mono_from":{"t":[0,0]},"mono_to":{"t":[0,1]}}]}"#;
        let err = InputDocument::from_json(text).unwrap().to_gog().unwrap_err();
        assert!(matches!(err, DocError::Validation(Issue::NonInjectiveMono { .. })), "{err}");
    }
}
