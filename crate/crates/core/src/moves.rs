//! The atomic moves: stellar subdivision, edge subdivision, inverse edge
//! subdivision and edge contraction, with the predicates that govern them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};

/// One atomic transition between complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    StellarSubdiv { face: Face, new_vertex: VertexId },
    EdgeSubdiv { edge: Face, new_vertex: VertexId },
    InverseEdgeSubdiv { removed_vertex: VertexId, recreated_edge: Face },
    Contract { edge: Face, new_vertex: VertexId },
}

impl Move {
    pub fn apply(&self, complex: &Complex) -> Result<Complex> {
        match self {
            Move::StellarSubdiv { face, new_vertex } => stellar_subdivide(complex, face, *new_vertex),
            Move::EdgeSubdiv { edge, new_vertex } => edge_subdivide(complex, edge, *new_vertex),
            Move::InverseEdgeSubdiv { removed_vertex, recreated_edge } => {
                let (a, b) = endpoints(recreated_edge)?;
                inverse_edge_subdivide(complex, *removed_vertex, a, b)
            }
            Move::Contract { edge, new_vertex } => {
                let (a, b) = endpoints(edge)?;
                contract_edge(complex, a, b, *new_vertex)
            }
        }
    }

    /// The move undoing this one, for the two subdivision kinds.
    pub fn inverse(&self) -> Option<Move> {
        match self {
            Move::EdgeSubdiv { edge, new_vertex } => {
                Some(Move::InverseEdgeSubdiv { removed_vertex: *new_vertex, recreated_edge: edge.clone() })
            }
            Move::InverseEdgeSubdiv { removed_vertex, recreated_edge } => {
                Some(Move::EdgeSubdiv { edge: recreated_edge.clone(), new_vertex: *removed_vertex })
            }
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::StellarSubdiv { .. } => "StellarSubdiv",
            Move::EdgeSubdiv { .. } => "EdgeSubdiv",
            Move::InverseEdgeSubdiv { .. } => "InverseEdgeSubdiv",
            Move::Contract { .. } => "Contract",
        }
    }

    pub fn to_record(&self) -> MoveRecord {
        let kind = self.kind().to_string();
        match self {
            Move::StellarSubdiv { face, new_vertex } => {
                MoveRecord { kind, face: Some(face.clone()), new: Some(*new_vertex), removed: None, edge: None }
            }
            Move::EdgeSubdiv { edge, new_vertex } | Move::Contract { edge, new_vertex } => {
                MoveRecord { kind, face: Some(edge.clone()), new: Some(*new_vertex), removed: None, edge: None }
            }
            Move::InverseEdgeSubdiv { removed_vertex, recreated_edge } => MoveRecord {
                kind,
                face: None,
                new: None,
                removed: Some(*removed_vertex),
                edge: Some(recreated_edge.clone()),
            },
        }
    }
}

/// Wire form of a [`Move`]: `{"kind", "face", "new", "removed", "edge"}`, absent fields omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Face>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new: Option<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<Face>,
}

impl TryFrom<MoveRecord> for Move {
    type Error = Error;

    fn try_from(r: MoveRecord) -> Result<Move> {
        let missing = |field: &str| Error::Malformed(format!("{} record without \"{field}\"", r.kind));
        match r.kind.as_str() {
            "StellarSubdiv" => Ok(Move::StellarSubdiv {
                face: r.face.clone().ok_or_else(|| missing("face"))?,
                new_vertex: r.new.ok_or_else(|| missing("new"))?,
            }),
            "EdgeSubdiv" => Ok(Move::EdgeSubdiv {
                edge: r.face.clone().ok_or_else(|| missing("face"))?,
                new_vertex: r.new.ok_or_else(|| missing("new"))?,
            }),
            "Contract" => Ok(Move::Contract {
                edge: r.face.clone().ok_or_else(|| missing("face"))?,
                new_vertex: r.new.ok_or_else(|| missing("new"))?,
            }),
            "InverseEdgeSubdiv" => Ok(Move::InverseEdgeSubdiv {
                removed_vertex: r.removed.ok_or_else(|| missing("removed"))?,
                recreated_edge: r.edge.clone().ok_or_else(|| missing("edge"))?,
            }),
            other => Err(Error::Malformed(format!("unknown move kind {other:?}"))),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let record = MoveRecord::deserialize(deserializer)?;
        Move::try_from(record).map_err(serde::de::Error::custom)
    }
}

fn endpoints(edge: &Face) -> Result<(VertexId, VertexId)> {
    match edge.vertices() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::InvalidArgument(format!("{edge} is not a two-element face"))),
    }
}

fn require_fresh(complex: &Complex, v: VertexId) -> Result<()> {
    if complex.has_vertex(v) {
        Err(Error::VertexExists(v))
    } else {
        Ok(())
    }
}

fn require_edge(complex: &Complex, a: VertexId, b: VertexId) -> Result<Face> {
    if a == b || !complex.has_edge(a, b) {
        return Err(Error::NotAnEdge(Face::from_vertices([a, b]).unwrap_or_else(|_| Face::vertex(a))));
    }
    Ok(Face::edge(a, b))
}

/// `stellar_Δ(F) = {T ∈ Δ : F ⊄ T} ∪ ({v} ∗ ∂F ∗ lk_Δ(F))`.
pub fn stellar_subdivide(complex: &Complex, face: &Face, v: VertexId) -> Result<Complex> {
    if face.is_empty() || !complex.contains_face(face) {
        return Err(Error::NotAFace(face.clone()));
    }
    require_fresh(complex, v)?;
    let mut facets = Vec::with_capacity(complex.facets().len() + face.len());
    for g in complex.facets() {
        if face.is_subset(g) {
            for &u in face.vertices() {
                facets.push(g.without(u).with(v));
            }
        } else {
            facets.push(g.clone());
        }
    }
    Ok(Complex::from_antichain(facets))
}

/// Stellar subdivision at a two-element face.
pub fn edge_subdivide(complex: &Complex, edge: &Face, v: VertexId) -> Result<Complex> {
    if edge.len() != 2 {
        return Err(Error::InvalidArgument(format!("{edge} is not an edge")));
    }
    if !complex.contains_face(edge) {
        return Err(Error::NotAnEdge(edge.clone()));
    }
    stellar_subdivide(complex, edge, v)
}

/// Checks that `lk(v) = ({a} ⊔ {b}) ∗ L` and `{a,b} ∉ Δ`, returning the facets of `L`.
pub fn inverse_split(complex: &Complex, v: VertexId, a: VertexId, b: VertexId) -> Result<Vec<Face>> {
    let fail = |reason: String| Error::NotInvertible { vertex: v, reason };
    if !complex.has_vertex(v) {
        return Err(fail(format!("{v} is not a vertex")));
    }
    if a == b || a == v || b == v {
        return Err(fail("the recreated edge needs two vertices other than the removed one".into()));
    }
    if complex.has_edge(a, b) {
        return Err(fail(format!("{} is already an edge", Face::edge(a, b))));
    }
    let link = complex.link(&Face::vertex(v))?;
    let mut with_a = BTreeSet::new();
    let mut with_b = BTreeSet::new();
    for f in link.facets() {
        match (f.contains(a), f.contains(b)) {
            (true, false) => {
                with_a.insert(f.without(a));
            }
            (false, true) => {
                with_b.insert(f.without(b));
            }
            (true, true) => return Err(fail(format!("link facet {f} contains both {a} and {b}"))),
            (false, false) => return Err(fail(format!("link facet {f} contains neither {a} nor {b}"))),
        }
    }
    if with_a != with_b {
        return Err(fail(format!("deleting {a} and deleting {b} from the link give different complexes")));
    }
    Ok(with_a.into_iter().collect())
}

/// Removes `v` and recreates the edge `{a, b}`; exact inverse of subdividing `{a, b}` at `v`.
pub fn inverse_edge_subdivide(complex: &Complex, v: VertexId, a: VertexId, b: VertexId) -> Result<Complex> {
    let base = inverse_split(complex, v, a, b)?;
    let ab = Face::edge(a, b);
    let mut facets: Vec<Face> = complex.facets().iter().filter(|f| !f.contains(v)).cloned().collect();
    facets.extend(base.iter().map(|t| t.union(&ab)));
    Ok(Complex::from_antichain(facets))
}

/// `Δ/{a,b}` with the merged vertex labelled `v`.
pub fn contract_edge(complex: &Complex, a: VertexId, b: VertexId, v: VertexId) -> Result<Complex> {
    let ab = require_edge(complex, a, b)?;
    require_fresh(complex, v)?;
    let mut facets = Vec::with_capacity(complex.facets().len());
    let mut merged = Vec::new();
    for g in complex.facets() {
        if g.is_disjoint(&ab) {
            facets.push(g.clone());
        } else {
            merged.push(g.difference(&ab).with(v));
        }
    }
    facets.extend(crate::complex::maximal_faces(merged));
    Ok(Complex::from_antichain(facets))
}

/// `lk({a,b}) = lk(a) ∩ lk(b)` as face sets.
pub fn satisfies_link_condition(complex: &Complex, a: VertexId, b: VertexId) -> Result<bool> {
    let ab = require_edge(complex, a, b)?;
    let link_b = complex.link(&Face::vertex(b))?;
    for g in complex.facets_containing(&Face::vertex(a)) {
        let rest = g.without(a).without(b);
        for t in std::iter::once(Face::empty()).chain(rest.nonempty_subsets()) {
            if link_b.contains_face(&t) && !complex.contains_face(&t.union(&ab)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `{a,b}` lies in no induced 4-cycle `a–b–x–y` of the skeleton.
pub fn is_admissible(complex: &Complex, a: VertexId, b: VertexId) -> Result<bool> {
    require_edge(complex, a, b)?;
    Ok(admissible_in_graph(complex, a, b))
}

fn admissible_in_graph(complex: &Complex, a: VertexId, b: VertexId) -> bool {
    let g = complex.skeleton();
    let (ia, ib) = (g.index_of(a).expect("vertex"), g.index_of(b).expect("vertex"));
    let na = g.neighbor_bits(a);
    let nb = g.neighbor_bits(b);
    let mut only_b = nb.clone();
    only_b.difference_with(na);
    only_b.set(ia, false);
    let mut only_a = na.clone();
    only_a.difference_with(nb);
    only_a.set(ib, false);
    for x in only_b.ones() {
        if !g.neighbor_bits_idx(x).is_disjoint(&only_a) {
            return false;
        }
    }
    true
}

/// Edges `(a, b)`, `a < b`, whose contraction is admissible.
pub fn admissible_edges(complex: &Complex) -> Vec<(VertexId, VertexId)> {
    complex.skeleton().edges().into_iter().filter(|&(a, b)| admissible_in_graph(complex, a, b)).collect()
}

/// Triples `(v, a, b)`, `a < b`, for which `inverse_edge_subdivide(Δ, v, a, b)` succeeds.
pub fn invertible_triples(complex: &Complex) -> Vec<(VertexId, VertexId, VertexId)> {
    let g = complex.skeleton();
    let mut out = Vec::new();
    for &v in complex.vertices() {
        let nbrs: Vec<VertexId> = g.neighbors(v).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.has_edge(a, b) && inverse_split(complex, v, a, b).is_ok() {
                    out.push((v, a, b));
                }
            }
        }
    }
    out
}

/// Every move available at a complex, grouped by kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveMenu {
    pub subdividable: Vec<(VertexId, VertexId)>,
    pub admissible: Vec<(VertexId, VertexId)>,
    pub invertible: Vec<(VertexId, VertexId, VertexId)>,
}

pub fn list_moves(complex: &Complex) -> MoveMenu {
    MoveMenu {
        subdividable: complex.skeleton().edges(),
        admissible: admissible_edges(complex),
        invertible: invertible_triples(complex),
    }
}
