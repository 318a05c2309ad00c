//! Immutable simplicial complexes stored by their facets.
//!
//! A [`Complex`] keeps only its inclusion-maximal faces. Every other face is
//! materialized on demand. Two degenerate complexes are distinguished: the
//! *empty* complex has no faces at all, while the *void* complex `{∅}` has the
//! empty face as its only facet (it is, for instance, the link of a facet).

mod graph;
mod iso;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use graph::{clique_complex, Graph};

/// Label of a vertex. Labels inside one complex are distinct but need not be
/// contiguous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl From<u32> for VertexId {
    fn from(label: u32) -> Self {
        VertexId(label)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl VertexId {
    pub fn next(self) -> VertexId {
        VertexId(self.0 + 1)
    }
}

type FaceVec = SmallVec<[VertexId; 8]>;

/// A face: a strictly increasing list of vertices. The empty face is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(FaceVec);

impl Face {
    pub fn empty() -> Face {
        Face(FaceVec::new())
    }

    /// Builds a face from labels in any order. Repeated labels are rejected.
    pub fn new<I: IntoIterator<Item = u32>>(labels: I) -> Result<Face> {
        Face::from_vertices(labels.into_iter().map(VertexId))
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Face> {
        let mut v: FaceVec = vertices.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("vertex {} repeated in a face", w[0])));
        }
        Ok(Face(v))
    }

    pub fn vertex(v: VertexId) -> Face {
        let mut f = FaceVec::new();
        f.push(v);
        Face(f)
    }

    /// The edge `{a, b}`.
    ///
    /// Panics if `a == b`.
    pub fn edge(a: VertexId, b: VertexId) -> Face {
        assert_ne!(a, b, "an edge needs two distinct vertices");
        let mut f = FaceVec::new();
        if a < b {
            f.push(a);
            f.push(b);
        } else {
            f.push(b);
            f.push(a);
        }
        Face(f)
    }

    pub(crate) fn from_sorted(v: FaceVec) -> Face {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn labels(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = FaceVec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Face(out)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn with(&self, v: VertexId) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Codimension-one faces, in the order obtained by dropping each vertex in turn.
    pub fn boundary_facets(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).map(move |i| {
            let mut out = self.0.clone();
            out.remove(i);
            Face(out)
        })
    }

    /// All subsets of size `k`, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<Face> {
        let n = self.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// All non-empty subsets.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.len();
        assert!(n < 32, "face too large to enumerate subsets");
        (1u32..(1u32 << n)).map(move |mask| {
            Face((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }

    pub fn edges(&self) -> Vec<Face> {
        self.subsets_of_size(2)
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Face> {
        Face::from_vertices(self.0.iter().map(|&v| f(v)))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|v| v.0))
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<u32>::deserialize(deserializer)?;
        Face::new(labels).map_err(serde::de::Error::custom)
    }
}

/// A finite abstract simplicial complex, stored as an antichain of facets.
pub struct Complex {
    facets: Vec<Face>,
    vertices: Vec<VertexId>,
    skeleton: OnceLock<Graph>,
    incidence: OnceLock<HashMap<VertexId, Vec<u32>>>,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            facets: self.facets.clone(),
            vertices: self.vertices.clone(),
            skeleton: self.skeleton.clone(),
            incidence: OnceLock::new(),
        }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex").field("facets", &self.facets).finish()
    }
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.facets.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let facets = Vec::<Face>::deserialize(deserializer)?;
        Ok(Complex::from_faces(facets))
    }
}

/// Keeps only the inclusion-maximal members, sorted and deduplicated.
pub(crate) fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && f.is_subset(k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl Complex {
    /// The complex with no faces at all.
    pub fn empty() -> Complex {
        Complex::from_antichain(Vec::new())
    }

    /// The complex `{∅}`.
    pub fn void() -> Complex {
        Complex::from_antichain(vec![Face::empty()])
    }

    /// The full simplex on the vertices of `face`.
    pub fn simplex(face: Face) -> Complex {
        Complex::from_antichain(vec![face])
    }

    /// Builds a complex from raw label lists; non-maximal members are absorbed.
    pub fn from_facets<I, F>(faces: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        let faces = faces.into_iter().map(Face::new).collect::<Result<Vec<_>>>()?;
        Ok(Complex::from_faces(faces))
    }

    pub fn from_faces<I: IntoIterator<Item = Face>>(faces: I) -> Complex {
        Complex::from_antichain(maximal_faces(faces.into_iter().collect()))
    }

    /// `facets` must already be an antichain; it is sorted here.
    pub(crate) fn from_antichain(mut facets: Vec<Face>) -> Complex {
        facets.sort_unstable();
        facets.dedup();
        let mut vertices: Vec<VertexId> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Complex { facets, vertices, skeleton: OnceLock::new(), incidence: OnceLock::new() }
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// `None` for the empty complex (dimension −∞), `Some(-1)` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(Face::dim).max()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_void(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Smallest label strictly above every vertex.
    pub fn fresh_vertex(&self) -> VertexId {
        self.vertices.last().map_or(VertexId(0), |v| v.next())
    }

    fn incidence(&self) -> &HashMap<VertexId, Vec<u32>> {
        self.incidence.get_or_init(|| {
            let mut map: HashMap<VertexId, Vec<u32>> = HashMap::with_capacity(self.vertices.len());
            for (i, f) in self.facets.iter().enumerate() {
                for &v in f.vertices() {
                    map.entry(v).or_default().push(i as u32);
                }
            }
            map
        })
    }

    /// Facets containing `face`, in sorted order.
    pub fn facets_containing<'a>(&'a self, face: &'a Face) -> Box<dyn Iterator<Item = &'a Face> + 'a> {
        if face.is_empty() {
            return Box::new(self.facets.iter());
        }
        let inc = self.incidence();
        let Some(best) = face.vertices().iter().map(|v| inc.get(v)).min_by_key(|l| l.map_or(0, |l| l.len())).flatten()
        else {
            return Box::new(std::iter::empty());
        };
        Box::new(best.iter().map(move |&i| &self.facets[i as usize]).filter(move |f| face.is_subset(f)))
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        if face.is_empty() {
            return !self.is_empty();
        }
        self.facets_containing(face).next().is_some()
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        self.facets.binary_search(face).is_ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.skeleton().has_edge(a, b)
    }

    /// All faces of dimension `k`.
    pub fn faces_of_dim(&self, k: usize) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() > k {
                out.extend(f.subsets_of_size(k + 1));
            }
        }
        out
    }

    /// Every non-empty face.
    pub fn all_faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.nonempty_subsets());
        }
        out
    }

    /// Number of faces in each dimension 0, 1, …, dim.
    pub fn face_counts(&self) -> Vec<u64> {
        let Some(dim) = self.dim() else { return Vec::new() };
        if dim < 0 {
            return Vec::new();
        }
        let mut seen: HashSet<Face> = HashSet::new();
        let mut counts = vec![0u64; dim as usize + 1];
        for f in &self.facets {
            for s in f.nonempty_subsets() {
                let k = s.len() - 1;
                if seen.insert(s) {
                    counts[k] += 1;
                }
            }
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The 1-skeleton graph, cached on first use.
    pub fn skeleton(&self) -> &Graph {
        self.skeleton.get_or_init(|| Graph::from_complex(self))
    }

    /// `lk(F) = {T : T ∩ F = ∅, T ∪ F ∈ Δ}`.
    pub fn link(&self, face: &Face) -> Result<Complex> {
        let facets: Vec<Face> = self.facets_containing(face).map(|g| g.difference(face)).collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(Complex::from_antichain(facets))
    }

    /// Closed star of a face, as a subcomplex.
    pub fn star(&self, face: &Face) -> Result<Complex> {
        let facets: Vec<Face> = self.facets_containing(face).cloned().collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(Complex::from_antichain(facets))
    }

    /// Join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &Complex) -> Result<Complex> {
        if let Some(v) = self.vertices.iter().find(|v| other.has_vertex(**v)) {
            return Err(Error::LabelCollision(*v));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(b));
            }
        }
        Ok(Complex::from_antichain(facets))
    }

    /// Induced subcomplex on the vertex set `w`.
    pub fn induced<I: IntoIterator<Item = VertexId>>(&self, w: I) -> Complex {
        let keep: BTreeSet<VertexId> = w.into_iter().collect();
        if self.is_empty() {
            return Complex::empty();
        }
        let faces: Vec<Face> = self
            .facets
            .iter()
            .map(|f| Face::from_sorted(f.vertices().iter().copied().filter(|v| keep.contains(v)).collect()))
            .collect();
        Complex::from_faces(faces)
    }

    /// All `F ∉ Δ` with `∂F ⊆ Δ` and `|F| ≥ min_size`.
    pub fn missing_faces(&self, min_size: usize) -> BTreeSet<Face> {
        let min_size = min_size.max(2);
        let mut out = BTreeSet::new();
        let g = self.skeleton();
        let n = g.vertices().len();
        if min_size <= 2 {
            for i in 0..n {
                for j in i + 1..n {
                    if !g.adjacent_idx(i, j) {
                        out.insert(Face::edge(g.vertices()[i], g.vertices()[j]));
                    }
                }
            }
        }
        let Some(dim) = self.dim() else { return out };
        let max_size = (dim + 2).max(0) as usize;
        let mut prev: HashSet<Face> = self.faces_of_dim(1).into_iter().collect();
        for k in 3..=max_size {
            let mut current: HashSet<Face> = HashSet::new();
            for s in &prev {
                let top = *s.vertices().last().expect("non-empty face");
                let mut common = g.neighbor_bits(s.vertices()[0]).clone();
                for v in &s.vertices()[1..] {
                    common.intersect_with(g.neighbor_bits(*v));
                }
                for wi in common.ones() {
                    let w = g.vertices()[wi];
                    if w <= top {
                        continue;
                    }
                    let cand = s.with(w);
                    if self.contains_face(&cand) {
                        current.insert(cand);
                    } else if k >= min_size && cand.boundary_facets().all(|b| prev.contains(&b)) {
                        out.insert(cand);
                    }
                }
            }
            prev = current;
            if prev.is_empty() {
                break;
            }
        }
        out
    }

    /// True iff every minimal non-face has size two.
    pub fn is_flag(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        &clique_complex(self.skeleton()) == self
    }

    /// Renames vertices; the map must be injective on the vertex set.
    pub fn relabel(&self, map: &HashMap<VertexId, VertexId>) -> Result<Complex> {
        let image = |v: VertexId| *map.get(&v).unwrap_or(&v);
        let facets = self.facets.iter().map(|f| f.map(image)).collect::<Result<Vec<_>>>()?;
        let mut seen: HashMap<VertexId, VertexId> = HashMap::new();
        for &v in &self.vertices {
            if let Some(prev) = seen.insert(image(v), v) {
                return Err(Error::LabelCollision(prev));
            }
        }
        Ok(Complex::from_antichain(facets))
    }

    /// A vertex bijection carrying the facets of `self` onto those of `other`, if one exists.
    pub fn is_isomorphic(&self, other: &Complex) -> Option<BTreeMap<VertexId, VertexId>> {
        iso::find_isomorphism(self, other)
    }
}
