//! Sequences of edge subdivisions and their inverses: the flagness deficit,
//! the edge-move connection across a stellar subdivision, and the
//! valley-replacement procedure that makes every complex of a sequence flag.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::barycentric::{plan_backtrack_from, Policy};
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::moves::{edge_subdivide, stellar_subdivide, Move};

/// Complexes `Δ₀ … Δ_t` joined by edge subdivisions and inverse edge
/// subdivisions, each move taking `Δ_i` exactly to `Δ_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct MoveSequence {
    complexes: Vec<Complex>,
    moves: Vec<Move>,
}

#[derive(Deserialize)]
struct RawSequence {
    complexes: Vec<Complex>,
    moves: Vec<Move>,
}

impl TryFrom<RawSequence> for MoveSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<MoveSequence> {
        MoveSequence::new(raw.complexes, raw.moves)
    }
}

impl MoveSequence {
    /// Validates that every move is a (possibly inverse) edge subdivision
    /// taking each complex exactly to the next.
    pub fn new(complexes: Vec<Complex>, moves: Vec<Move>) -> Result<MoveSequence> {
        if complexes.len() != moves.len() + 1 {
            return Err(Error::InvalidSequence {
                index: 0,
                reason: format!("{} complexes for {} moves", complexes.len(), moves.len()),
            });
        }
        for (index, m) in moves.iter().enumerate() {
            check_step(&complexes[index], m, &complexes[index + 1], index)?;
        }
        Ok(MoveSequence { complexes, moves })
    }

    pub fn trivial(start: Complex) -> MoveSequence {
        MoveSequence { complexes: vec![start], moves: Vec::new() }
    }

    pub fn from_moves(start: Complex, moves: Vec<Move>) -> Result<MoveSequence> {
        let mut seq = MoveSequence::trivial(start);
        for m in moves {
            seq.push(m)?;
        }
        Ok(seq)
    }

    /// Applies `m` to the last complex.
    pub fn push(&mut self, m: Move) -> Result<()> {
        let index = self.moves.len();
        if !matches!(m, Move::EdgeSubdiv { .. } | Move::InverseEdgeSubdiv { .. }) {
            return Err(Error::InvalidSequence { index, reason: format!("{} is not an edge move", m.kind()) });
        }
        let next = m.apply(self.end()).map_err(|e| Error::InvalidSequence { index, reason: e.to_string() })?;
        self.complexes.push(next);
        self.moves.push(m);
        Ok(())
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of moves.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn start(&self) -> &Complex {
        &self.complexes[0]
    }

    pub fn end(&self) -> &Complex {
        self.complexes.last().expect("at least one complex")
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(mut self, other: MoveSequence) -> Result<MoveSequence> {
        if self.end() != other.start() {
            return Err(Error::InvalidSequence { index: self.len(), reason: "concatenated pieces do not meet".into() });
        }
        self.complexes.extend(other.complexes.into_iter().skip(1));
        self.moves.extend(other.moves);
        Ok(self)
    }

    /// The same path walked backwards.
    pub fn reversed(&self) -> MoveSequence {
        let complexes = self.complexes.iter().rev().cloned().collect();
        let moves = self.moves.iter().rev().map(|m| m.inverse().expect("edge moves are invertible")).collect();
        MoveSequence { complexes, moves }
    }

    /// Complexes `from..=to` and the moves between them.
    pub fn slice(&self, from: usize, to: usize) -> MoveSequence {
        MoveSequence { complexes: self.complexes[from..=to].to_vec(), moves: self.moves[from..to].to_vec() }
    }

    /// Largest vertex label used anywhere in the sequence.
    pub fn max_label(&self) -> Option<VertexId> {
        self.complexes.iter().filter_map(|c| c.vertices().last().copied()).max()
    }
}

fn check_step(from: &Complex, m: &Move, to: &Complex, index: usize) -> Result<()> {
    if !matches!(m, Move::EdgeSubdiv { .. } | Move::InverseEdgeSubdiv { .. }) {
        return Err(Error::InvalidSequence { index, reason: format!("{} is not an edge move", m.kind()) });
    }
    let got = m.apply(from).map_err(|e| Error::InvalidSequence { index, reason: e.to_string() })?;
    if &got != to {
        return Err(Error::InvalidSequence { index, reason: "move result differs from the next complex".into() });
    }
    Ok(())
}

/// `d(Δ)`: the total size of the missing faces with more than two vertices.
/// Zero exactly on flag complexes.
pub fn d_measure(complex: &Complex) -> u64 {
    complex.missing_faces(3).iter().map(|f| f.len() as u64).sum()
}

/// `d(α)`, ordered with `Bottom` below every pair and pairs lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DAlpha {
    Bottom,
    Pair { max: u64, mult: u64 },
}

impl std::fmt::Display for DAlpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DAlpha::Bottom => write!(f, "0̂"),
            DAlpha::Pair { max, mult } => write!(f, "({max}, {mult})"),
        }
    }
}

fn d_alpha_of(values: &[u64]) -> DAlpha {
    let max = values.iter().copied().max().unwrap_or(0);
    if max == 0 {
        DAlpha::Bottom
    } else {
        DAlpha::Pair { max, mult: values.iter().filter(|&&d| d == max).count() as u64 }
    }
}

pub fn d_alpha(seq: &MoveSequence) -> DAlpha {
    let values: Vec<u64> = seq.complexes.iter().map(d_measure).collect();
    d_alpha_of(&values)
}

/// The two halves of an edge-move connection between `Δ` and `stellar(Δ, F)`.
#[derive(Clone, Debug, Serialize)]
pub struct StellarConnection {
    /// From `Δ`: barycentric subdivision of the closed simplex on `F`.
    pub forward: MoveSequence,
    /// From `stellar(Δ, F)`: barycentric subdivision of `∂F`.
    pub backward: MoveSequence,
    /// Label of the stellar apex, also the vertex standing for `F` in `forward`.
    pub apex: VertexId,
}

impl StellarConnection {
    /// The path `Δ → common refinement → stellar(Δ, F)`.
    pub fn path(&self) -> Result<MoveSequence> {
        self.forward.clone().concat(self.backward.reversed())
    }
}

/// Connects `Δ` and `stellar(Δ, F)` through a common refinement reached by
/// edge subdivisions from both sides. Vertices standing for the same face of
/// `F̄` carry the same label on both sides, so the ends are equal.
pub fn connect_stellar(complex: &Complex, face: &Face) -> Result<StellarConnection> {
    if face.len() < 2 || !complex.contains_face(face) {
        return Err(Error::NotAFace(face.clone()));
    }
    let first = complex.fresh_vertex();
    let closed = Complex::simplex(face.clone());
    let plan = plan_backtrack_from(&closed, Policy::Ascending, first)?;
    let label: HashMap<Face, VertexId> = plan.steps.iter().map(|s| (s.original_face.clone(), s.new_vertex)).collect();
    let forward = MoveSequence::from_moves(complex.clone(), plan.moves())?;

    let apex = label[face];
    let stellar = stellar_subdivide(complex, face, apex)?;
    let boundary = Complex::from_faces(face.boundary_facets());
    let inner = plan_backtrack_from(&boundary, Policy::Ascending, first)?;
    let mut rename: HashMap<VertexId, VertexId> = HashMap::new();
    let mut moves = Vec::with_capacity(inner.steps.len());
    for s in &inner.steps {
        let v = label[&s.original_face];
        rename.insert(s.new_vertex, v);
        let edge = s.edge.map(|u| rename.get(&u).copied().unwrap_or(u))?;
        moves.push(Move::EdgeSubdiv { edge, new_vertex: v });
    }
    let backward = MoveSequence::from_moves(stellar, moves)?;
    if forward.end() != backward.end() {
        return Err(Error::InvalidSequence {
            index: backward.len(),
            reason: "the two refinements of the stellar subdivision differ".into(),
        });
    }
    Ok(StellarConnection { forward, backward, apex })
}

/// Both subdivisions at once: `(sd(Δ, e₁@p), sd(sd(Δ, e₁@p), e@w), sd(Δ, e@w))`,
/// for edges `e₁ ≠ e` lying in no common triangle of `Δ`.
pub fn commute_subdivisions(
    delta: &Complex,
    e1: &Face,
    p: VertexId,
    e: &Face,
    w: VertexId,
) -> Result<MoveSequence> {
    if e1 == e {
        return Err(Error::WrongCase(format!("{e} is subdivided on both sides")));
    }
    let joint = e1.union(e);
    if joint.len() == 3 && delta.contains_face(&joint) {
        return Err(Error::WrongCase(format!("{e1} and {e} span the triangle {joint}")));
    }
    let before = edge_subdivide(delta, e1, p)?;
    let seq = MoveSequence::from_moves(
        before,
        vec![
            Move::EdgeSubdiv { edge: e.clone(), new_vertex: w },
            Move::InverseEdgeSubdiv { removed_vertex: p, recreated_edge: e1.clone() },
        ],
    )?;
    if seq.end() != &edge_subdivide(delta, e, w)? {
        return Err(Error::WrongCase("the subdivisions do not commute".into()));
    }
    Ok(seq)
}

/// Vertices `(a, b, c)` of a triangle `T ⊇ e₁ ∪ e` with `e₁ = {a, b}`, `e = {b, c}`.
fn gadget_corners(t: &Face, e1: &Face, e: &Face) -> Result<(VertexId, VertexId, VertexId)> {
    if t.len() != 3 || e1.len() != 2 || e.len() != 2 {
        return Err(Error::Gadget(format!("need a triangle and two edges, got {t}, {e1}, {e}")));
    }
    if e1 == e || !e1.is_subset(t) || !e.is_subset(t) {
        return Err(Error::Gadget(format!("{e1} and {e} must be distinct edges of {t}")));
    }
    let b = e1.intersection(e).vertices()[0];
    let a = e1.without(b).vertices()[0];
    let c = e.without(b).vertices()[0];
    Ok((a, b, c))
}

/// For each of the four gadget complexes after the start, a chain of edge
/// subdivisions from `Δ` that reaches it and includes `e`.
pub fn gadget_derivations(
    t: &Face,
    e1: &Face,
    p: VertexId,
    e: &Face,
    w: VertexId,
    x: VertexId,
) -> Result<[Vec<Move>; 4]> {
    let (_, _, c) = gadget_corners(t, e1, e)?;
    let sd = |edge: &Face, v: VertexId| Move::EdgeSubdiv { edge: edge.clone(), new_vertex: v };
    Ok([
        vec![sd(e1, p), sd(e, w)],
        vec![sd(e1, p), sd(e, w), sd(&Face::edge(p, c), x)],
        vec![sd(e, w), sd(e1, p)],
        vec![sd(e, w)],
    ])
}

/// Five complexes from `sd(Δ, e₁@p)` to `sd(Δ, e@w)` through the triangle
/// `T = {a, b, c}`, where `e₁ = {a, b}` and `e = {b, c}`:
/// subdivide `e` at `w`, subdivide `{p, c}` at `x`, remove `x` recreating
/// `{a, w}`, remove `p` recreating `{a, b}`.
///
/// Every intermediate complex is checked against its derivation from `Δ`.
pub fn case2_gadget(
    delta: &Complex,
    t: &Face,
    e1: &Face,
    p: VertexId,
    e: &Face,
    w: VertexId,
    x: VertexId,
) -> Result<MoveSequence> {
    let (a, b, c) = gadget_corners(t, e1, e)?;
    if !delta.contains_face(t) {
        return Err(Error::Gadget(format!("{t} is not a face")));
    }
    if p == w || p == x || w == x || [p, w, x].iter().any(|&v| delta.has_vertex(v)) {
        return Err(Error::Gadget("new labels must be distinct and fresh".into()));
    }
    let start = edge_subdivide(delta, e1, p)?;
    let moves = vec![
        Move::EdgeSubdiv { edge: e.clone(), new_vertex: w },
        Move::EdgeSubdiv { edge: Face::edge(p, c), new_vertex: x },
        Move::InverseEdgeSubdiv { removed_vertex: x, recreated_edge: Face::edge(a, w) },
        Move::InverseEdgeSubdiv { removed_vertex: p, recreated_edge: Face::edge(a, b) },
    ];
    let seq = MoveSequence::from_moves(start, moves).map_err(|err| Error::Gadget(err.to_string()))?;
    for (j, derivation) in gadget_derivations(t, e1, p, e, w, x)?.into_iter().enumerate() {
        let rebuilt = MoveSequence::from_moves(delta.clone(), derivation)?;
        if rebuilt.end() != &seq.complexes[j + 1] {
            return Err(Error::Gadget(format!("complex {} does not match its derivation", j + 1)));
        }
    }
    Ok(seq)
}

/// The piece from `sd(Δ, e_side@p)` to `sd(Δ, e@w)`.
fn side_replacement(
    delta: &Complex,
    e_side: &Face,
    p: VertexId,
    e: &Face,
    w: VertexId,
    next_label: &mut VertexId,
) -> Result<MoveSequence> {
    let joint = e_side.union(e);
    if joint.len() == 3 && delta.contains_face(&joint) {
        let x = *next_label;
        *next_label = x.next();
        case2_gadget(delta, &joint, e_side, p, e, w, x)
    } else {
        commute_subdivisions(delta, e_side, p, e, w)
    }
}

fn valley_edges(seq: &MoveSequence, i: usize) -> ((Face, VertexId), (Face, VertexId)) {
    let left = match &seq.moves[i - 1] {
        Move::InverseEdgeSubdiv { removed_vertex, recreated_edge } => (recreated_edge.clone(), *removed_vertex),
        _ => unreachable!("valley checked"),
    };
    let right = match &seq.moves[i] {
        Move::EdgeSubdiv { edge, new_vertex } => (edge.clone(), *new_vertex),
        _ => unreachable!("valley checked"),
    };
    (left, right)
}

/// Lexicographically least edge, avoiding `avoid` when possible, of the
/// lexicographically least largest missing face with more than two vertices.
pub fn choose_missing_edge(complex: &Complex, avoid: &[&Face]) -> Option<Face> {
    let missing = complex.missing_faces(3);
    let size = missing.iter().map(Face::len).max()?;
    let face = missing.into_iter().find(|f| f.len() == size)?;
    let edges = face.edges();
    edges.iter().find(|e| !avoid.contains(e)).or(edges.first()).cloned()
}

/// Replaces the valley at `i` using the edge `e` of `Δ_i`.
///
/// When `e` equals a valley edge the corresponding side is left as it is,
/// with the middle complex taken to be that neighbour.
pub fn replace_valley(seq: &MoveSequence, i: usize, e: &Face, next_label: &mut VertexId) -> Result<MoveSequence> {
    if i == 0 || i >= seq.len() {
        return Err(Error::InvalidSequence { index: i, reason: "not an interior position".into() });
    }
    if !is_valley(seq, i) {
        return Err(Error::InvalidSequence { index: i, reason: "not a valley".into() });
    }
    let delta = &seq.complexes[i];
    if e.len() != 2 || !delta.contains_face(e) {
        return Err(Error::NotAnEdge(e.clone()));
    }
    let ((e1, p), (e2, q)) = valley_edges(seq, i);
    if *e == e1 && *e == e2 {
        return Err(Error::WrongCase(format!("{e} is subdivided on both sides of the valley")));
    }
    let w = if *e == e1 {
        p
    } else if *e == e2 {
        q
    } else {
        let w = *next_label;
        *next_label = w.next();
        w
    };
    let left = if *e == e1 {
        MoveSequence::trivial(seq.complexes[i - 1].clone())
    } else {
        side_replacement(delta, &e1, p, e, w, next_label)?
    };
    let right = if *e == e2 {
        MoveSequence::trivial(seq.complexes[i + 1].clone())
    } else {
        side_replacement(delta, &e2, q, e, w, next_label)?.reversed()
    };
    seq.slice(0, i - 1).concat(left)?.concat(right)?.concat(seq.slice(i + 1, seq.len()))
}

/// A flag sequence together with `d(α)` before the first and after every
/// replacement.
#[derive(Clone, Debug, Serialize)]
pub struct FlagifyOutcome {
    pub sequence: MoveSequence,
    pub history: Vec<DAlpha>,
}

/// Rewrites `α`, keeping its endpoints, until every complex is flag.
pub fn flagify_sequence(seq: &MoveSequence) -> Result<MoveSequence> {
    flagify_with_history(seq).map(|o| o.sequence)
}

pub fn flagify_with_history(seq: &MoveSequence) -> Result<FlagifyOutcome> {
    if !seq.start().is_flag() || !seq.end().is_flag() {
        return Err(Error::NonFlagEndpoints);
    }
    let mut current = seq.clone();
    let mut d: Vec<u64> = current.complexes.iter().map(d_measure).collect();
    let mut next_label = current.max_label().map_or(VertexId(0), VertexId::next);
    let mut history = vec![d_alpha_of(&d)];
    while let DAlpha::Pair { max, .. } = *history.last().expect("non-empty") {
        let before = *history.last().expect("non-empty");
        let (replaced, next_d) = collapse_backtrack(&current, &d, max)
            .or_else(|| improve_valley(&current, &d, max, before, &mut next_label))
            .or_else(|| swap_moves(&current, &d, max, before))
            .ok_or_else(|| Error::InvalidSequence {
                index: 0,
                reason: format!("no valley replacement lowers d(α) below {before}"),
            })?;
        let value = d_alpha_of(&next_d);
        debug_assert!(value < before);
        current = replaced;
        d = next_d;
        history.push(value);
    }
    Ok(FlagifyOutcome { sequence: current, history })
}

/// Drops a detour `Δ_{i-1} → Δ_i → Δ_{i-1}` through a complex of maximal deficit.
fn collapse_backtrack(seq: &MoveSequence, d: &[u64], max: u64) -> Option<(MoveSequence, Vec<u64>)> {
    let i = (1..seq.len()).find(|&i| d[i] == max && seq.complexes[i - 1] == seq.complexes[i + 1])?;
    let out = seq.slice(0, i - 1).concat(seq.slice(i + 1, seq.len())).ok()?;
    let mut next_d = d[..i].to_vec();
    next_d.extend_from_slice(&d[i + 2..]);
    Some((out, next_d))
}

/// First valley of maximal deficit, in index order, with a missing-face edge
/// whose replacement lowers `d(α)`. Edges are tried in the order of
/// [`missing_edge_candidates`].
fn improve_valley(
    seq: &MoveSequence,
    d: &[u64],
    max: u64,
    before: DAlpha,
    next_label: &mut VertexId,
) -> Option<(MoveSequence, Vec<u64>)> {
    for i in (1..seq.len()).filter(|&i| is_valley(seq, i) && d[i] == max) {
        let ((e1, _), (e2, _)) = valley_edges(seq, i);
        let mut candidates = missing_edge_candidates(&seq.complexes[i], &[&e1, &e2]);
        for side in [e1.clone(), e2.clone()] {
            if !candidates.contains(&side) {
                candidates.push(side);
            }
        }
        for e in candidates {
            let mut label = *next_label;
            let Ok(replaced) = replace_valley(seq, i, &e, &mut label) else { continue };
            let inserted = replaced.complexes.len() + 1 - seq.complexes.len();
            let mut next_d = d[..i].to_vec();
            next_d.extend(replaced.complexes[i..i + inserted].iter().map(d_measure));
            next_d.extend_from_slice(&d[i + 1..]);
            if d_alpha_of(&next_d) < before {
                *next_label = label;
                return Some((replaced, next_d));
            }
        }
    }
    None
}

/// Exchanges the two moves around a position of maximal deficit when they
/// commute and the new middle complex lowers `d(α)`.
fn swap_moves(seq: &MoveSequence, d: &[u64], max: u64, before: DAlpha) -> Option<(MoveSequence, Vec<u64>)> {
    for i in (1..seq.len()).filter(|&i| d[i] == max) {
        let (m1, m2) = (&seq.moves[i - 1], &seq.moves[i]);
        let Ok(middle) = m2.apply(&seq.complexes[i - 1]) else { continue };
        if m1.apply(&middle).ok().as_ref() != Some(&seq.complexes[i + 1]) {
            continue;
        }
        let mut next_d = d.to_vec();
        next_d[i] = d_measure(&middle);
        if d_alpha_of(&next_d) < before {
            let mut complexes = seq.complexes.clone();
            let mut moves = seq.moves.clone();
            complexes[i] = middle;
            moves.swap(i - 1, i);
            return Some((MoveSequence { complexes, moves }, next_d));
        }
    }
    None
}

fn is_valley(seq: &MoveSequence, i: usize) -> bool {
    matches!(seq.moves[i - 1], Move::InverseEdgeSubdiv { .. }) && matches!(seq.moves[i], Move::EdgeSubdiv { .. })
}

/// Every edge of a missing face with more than two vertices: the choice of
/// [`choose_missing_edge`] first, then larger faces before smaller ones and
/// lexicographic order within a size.
pub fn missing_edge_candidates(complex: &Complex, avoid: &[&Face]) -> Vec<Face> {
    let mut missing: Vec<Face> = complex.missing_faces(3).into_iter().collect();
    missing.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut out: Vec<Face> = choose_missing_edge(complex, avoid).into_iter().collect();
    for face in &missing {
        for e in face.edges() {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}
