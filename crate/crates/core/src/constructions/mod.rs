//! Quotient graphs of groups, their checks, the wreath embedding and
//! certificates.

pub mod certificate;
pub mod wreath;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::gog::{EdgeSpec, GogError, GogSpec, GraphOfGroups, Side, VertexSpec};
use crate::pi1::{InducedHom, Pi1Error, Projection};
use crate::tree::{ball, TreeError};
use crate::vc::{induced_hom_mod_cyclic, induced_hom_on_quotients, preimage_of_subgroup, VcElement, VcError, VcHom};

pub use certificate::{certify_fjcw, check_certificate, Certificate, CertificateError};
pub use wreath::{wreath_embed, WreathElement, WreathEmbedding};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("edge {0} has a finite group")]
    FiniteEdgeGroup(String),
    #[error("vertex {0} has a finite group")]
    FiniteVertexGroup(String),
    #[error("vertex {0} is neither Z nor the infinite dihedral group")]
    VertexNotZorDinfty(String),
    #[error("edge {0} is neither Z nor the infinite dihedral group")]
    EdgeNotZorDinfty(String),
    #[error("induced map on edge {edge} ({side:?} side) is not injective")]
    InducedMapNotInjective { edge: String, side: Side },
    #[error("claim violated: {message}; witnesses {witnesses:?}")]
    ClaimViolated { message: String, witnesses: Vec<VcElement> },
    #[error("not a quotient map")]
    NotAQuotient,
    #[error(transparent)]
    Vc(#[from] VcError),
    #[error(transparent)]
    Gog(#[from] GogError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A quotient graph of groups on the same graph, with the induced map.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub gog: Arc<GraphOfGroups>,
    /// Applied to every vertex and edge group.
    pub projection: Projection,
    pub q: InducedHom,
}

fn sides(geo: usize) -> [(usize, Side); 2] {
    [(2 * geo, Side::From), (2 * geo + 1, Side::To)]
}

fn quotient(gog: &GraphOfGroups, projection: Projection) -> Result<QuotientResult, ConstructionError> {
    if let Some(geo) = (0..gog.edge_count()).find(|&e| gog.edge_group(e).is_finite()) {
        return Err(ConstructionError::FiniteEdgeGroup(gog.edge_id(geo).to_string()));
    }
    let mut spec = GogSpec::default();
    for v in 0..gog.vertex_count() {
        let g = gog.vertex_group(v);
        let id = gog.vertex_id(v).to_string();
        let group = match projection {
            Projection::MaxFinite if g.is_finite() => return Err(ConstructionError::FiniteVertexGroup(id)),
            Projection::MaxCyclic if !(g.is_z_model() || g.is_dinfty_model()) => {
                return Err(ConstructionError::VertexNotZorDinfty(id))
            }
            _ => projection.codomain(g)?,
        };
        spec.vertices.push(VertexSpec { id, group: Arc::new(group) });
    }
    for geo in 0..gog.edge_count() {
        let g = gog.edge_group(geo);
        let id = gog.edge_id(geo).to_string();
        if projection == Projection::MaxCyclic && !(g.is_z_model() || g.is_dinfty_model()) {
            return Err(ConstructionError::EdgeNotZorDinfty(id));
        }
        let mut induced = Vec::with_capacity(2);
        for (o, side) in sides(geo) {
            let h = match projection {
                Projection::MaxFinite => induced_hom_on_quotients(gog.mono(o))?,
                Projection::MaxCyclic => induced_hom_mod_cyclic(gog.mono(o))?,
            };
            if !h.is_injective() {
                return Err(ConstructionError::InducedMapNotInjective { edge: id, side });
            }
            induced.push(h);
        }
        spec.edges.push(EdgeSpec {
            id,
            from: gog.vertex_id(gog.iota(2 * geo)).to_string(),
            to: gog.vertex_id(gog.tau(2 * geo)).to_string(),
            group: induced[0].source().clone(),
            mono_from: induced[0].generator_images().clone(),
            mono_to: induced[1].generator_images().clone(),
        });
    }
    let target = Arc::new(GraphOfGroups::new(spec)?.with_coset_cap(gog.coset_cap()));
    let q = InducedHom::q_induced(gog, target.clone(), projection)?;
    Ok(QuotientResult { gog: target, projection, q })
}

/// `G′_v = G_v / F_v`, `G′_e = G_e / α_e⁻¹(F_{ι(e)})`. Every group must be
/// infinite.
pub fn quotient_by_max_finite_normal(gog: &GraphOfGroups) -> Result<QuotientResult, ConstructionError> {
    quotient(gog, Projection::MaxFinite)
}

/// `G″_v = G_v / C_v` for the maximal infinite cyclic `C_v`; vertex and edge
/// groups must be `Z` or `D∞` models and edge groups infinite.
pub fn quotient_by_max_infinite_cyclic(gog: &GraphOfGroups) -> Result<QuotientResult, ConstructionError> {
    quotient(gog, Projection::MaxCyclic)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeKernelReport {
    pub edge: usize,
    /// `α_e⁻¹(F_{ι(e)})`.
    pub preimage: Vec<VcElement>,
    /// `F_e`.
    pub max_finite_normal: Vec<VcElement>,
}

/// Checks `α_o⁻¹(F_{ι(o)}) = F_e` for the oriented edge `o`.
pub fn verify_edge_kernel_is_max_finite_normal(
    gog: &GraphOfGroups,
    o: usize,
) -> Result<EdgeKernelReport, ConstructionError> {
    let h = gog.mono(o);
    let target_f: BTreeSet<VcElement> = h.target().max_finite_normal().members.into_iter().collect();
    let preimage: BTreeSet<VcElement> = preimage_of_subgroup(h)?.into_iter().collect();
    let boxed: BTreeSet<VcElement> =
        h.source().elements_up_to(3).filter(|x| target_f.contains(&h.apply(x))).collect();
    let f_e: BTreeSet<VcElement> = h.source().max_finite_normal().members.into_iter().collect();
    if preimage != f_e || boxed != f_e {
        let witnesses = preimage.symmetric_difference(&f_e).chain(boxed.symmetric_difference(&f_e)).copied().collect();
        return Err(ConstructionError::ClaimViolated {
            message: format!("preimage of F at edge {} differs from F_e", gog.edge_id(o / 2)),
            witnesses,
        });
    }
    Ok(EdgeKernelReport { edge: o, preimage: preimage.into_iter().collect(), max_finite_normal: f_e.into_iter().collect() })
}

/// `Ker(q) ∩ G_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerKernel {
    FiniteEqualTo(Vec<VcElement>),
    InfiniteCyclic(VcElement),
}

/// Computes `{x ∈ G_v : q(x) = 1}` from the vertex projection and
/// classifies it.
pub fn kernel_vertex_stabilizer_class(
    source: &GraphOfGroups,
    q: &InducedHom,
    v: usize,
) -> Result<StabilizerKernel, ConstructionError> {
    let InducedHom::QQuotient { target, projection } = q else {
        return Err(ConstructionError::NotAQuotient);
    };
    let g = source.vertex_group(v);
    let one = target.vertex_group(v).identity();
    const BOX: u64 = 4;
    let mut members: Vec<VcElement> = g.elements_up_to(BOX).filter(|x| projection.apply(g, x) == one).collect();
    members.sort_by_key(VcElement::order_key);
    let Some(gen) = members.iter().find(|x| x.dih.has_infinite_order()).copied() else {
        return Ok(StabilizerKernel::FiniteEqualTo(members));
    };
    let gen = if gen.dih.shift < 0 { g.inv(&gen) } else { gen };
    let step = gen.dih.shift.unsigned_abs();
    let mut powers: Vec<VcElement> = (-((BOX / step) as i64)..=(BOX / step) as i64).map(|k| g.pow(&gen, k)).collect();
    powers.sort_by_key(VcElement::order_key);
    if powers != members {
        return Err(ConstructionError::ClaimViolated {
            message: format!("kernel at vertex {} is not cyclic", source.vertex_id(v)),
            witnesses: members,
        });
    }
    Ok(StabilizerKernel::InfiniteCyclic(gen))
}

/// Ball data behind the proper and cocompact action on the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperCocompactReport {
    pub radius: usize,
    pub ball_vertices: usize,
    /// Largest stabilizer order in the ball; `None` if one is infinite.
    pub max_stabilizer_order: Option<usize>,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub matches_graph: bool,
}

impl ProperCocompactReport {
    pub fn holds(&self) -> bool {
        self.max_stabilizer_order.is_some() && self.matches_graph
    }
}

/// Stabilizers of the radius-`r` ball and its image in `Γ`.
pub fn proper_cocompact_check(gog: &GraphOfGroups, radius: usize) -> Result<ProperCocompactReport, ConstructionError> {
    let b = ball(gog, gog.root(), radius, gog.coset_cap())?;
    let mut max_order = Some(1);
    for x in &b.vertices {
        let g = gog.vertex_group(x.label);
        max_order = match (max_order, g.is_finite()) {
            (Some(m), true) => Some(m.max(g.kernel().order())),
            _ => None,
        };
    }
    let labels: BTreeSet<usize> = b.vertices.iter().map(|x| x.label).collect();
    let geos: BTreeSet<usize> = b.edges.iter().map(|e| e.edge / 2).collect();
    Ok(ProperCocompactReport {
        radius,
        ball_vertices: b.len(),
        max_stabilizer_order: max_order,
        quotient_vertices: labels.len(),
        quotient_edges: geos.len(),
        matches_graph: labels.len() == gog.vertex_count() && geos.len() == gog.edge_count(),
    })
}

/// Every induced edge mono of a quotient, for both orientations.
pub fn induced_monos(result: &QuotientResult) -> Vec<&VcHom> {
    (0..2 * result.gog.edge_count()).map(|o| result.gog.mono(o)).collect()
}
