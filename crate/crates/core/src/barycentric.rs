//! Barycentric subdivision, directly and as a schedule of edge subdivisions
//! produced by a depth-first walk on the face poset.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::moves::{edge_subdivide, Move};
use crate::rng::SeededRng;

/// A subdivision together with the face of the source each vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSubdivision {
    pub complex: Complex,
    pub origin: BTreeMap<VertexId, Face>,
}

impl LabeledSubdivision {
    /// Vertex standing for `face`, if any.
    pub fn vertex_of(&self, face: &Face) -> Option<VertexId> {
        self.origin.iter().find(|(_, f)| *f == face).map(|(v, _)| *v)
    }

    /// True iff identifying vertices through their origin faces turns `self`
    /// into exactly `other`.
    pub fn matches(&self, other: &LabeledSubdivision) -> bool {
        let by_face: HashMap<&Face, VertexId> = other.origin.iter().map(|(v, f)| (f, *v)).collect();
        let mut map = HashMap::new();
        for (v, f) in &self.origin {
            match by_face.get(f) {
                Some(&w) => map.insert(*v, w),
                None => return false,
            };
        }
        if map.len() != self.complex.num_vertices() {
            return false;
        }
        self.complex.relabel(&map).is_ok_and(|c| c == other.complex)
    }
}

fn sorted_nonempty_faces(complex: &Complex) -> Vec<Face> {
    let mut faces: Vec<Face> = complex.all_faces().into_iter().collect();
    faces.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    faces
}

/// The order complex of the face poset.
///
/// Vertex faces `{v}` keep the label `v`; larger faces get labels above the
/// current maximum, in order of size and then lexicographically.
pub fn barycentric(complex: &Complex) -> Result<LabeledSubdivision> {
    if complex.is_empty() {
        return Err(Error::InvalidArgument("barycentric subdivision of the empty complex".into()));
    }
    let mut next = complex.fresh_vertex();
    let mut label: HashMap<Face, VertexId> = HashMap::new();
    let mut origin = BTreeMap::new();
    for face in sorted_nonempty_faces(complex) {
        let v = if face.len() == 1 {
            face.vertices()[0]
        } else {
            let v = next;
            next = next.next();
            v
        };
        label.insert(face.clone(), v);
        origin.insert(v, face);
    }
    let mut chains = Vec::new();
    for facet in complex.facets() {
        let mut order: Vec<VertexId> = facet.vertices().to_vec();
        for_each_permutation(&mut order, 0, &mut |perm| {
            let chain = (1..=perm.len()).map(|k| {
                let prefix = Face::from_vertices(perm[..k].iter().copied()).expect("distinct");
                label[&prefix]
            });
            chains.push(Face::from_vertices(chain).expect("distinct labels"));
        });
    }
    let complex = if chains.is_empty() { Complex::void() } else { Complex::from_faces(chains) };
    Ok(LabeledSubdivision { complex, origin })
}

fn for_each_permutation(items: &mut [VertexId], k: usize, visit: &mut impl FnMut(&[VertexId])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// One scheduled edge subdivision and the source face its new vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub edge: Face,
    #[serde(rename = "new")]
    pub new_vertex: VertexId,
    #[serde(rename = "face")]
    pub original_face: Face,
}

impl PlanStep {
    pub fn to_move(&self) -> Move {
        Move::EdgeSubdiv { edge: self.edge.clone(), new_vertex: self.new_vertex }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BacktrackPlan {
    pub source: Complex,
    pub steps: Vec<PlanStep>,
}

impl BacktrackPlan {
    pub fn moves(&self) -> Vec<Move> {
        self.steps.iter().map(PlanStep::to_move).collect()
    }
}

/// How the depth-first walk orders roots and children.
pub enum Policy<'a> {
    /// Ascending vertex labels.
    Ascending,
    /// Listed vertices first, in the given order; the rest ascending.
    Priority(&'a [VertexId]),
    Random(&'a mut SeededRng),
}

impl Policy<'_> {
    fn order(&mut self, mut candidates: Vec<VertexId>) -> Vec<VertexId> {
        match self {
            Policy::Ascending => {}
            Policy::Priority(list) => {
                let rank = |v: &VertexId| list.iter().position(|x| x == v).unwrap_or(list.len());
                candidates.sort_by_key(|v| (rank(v), *v));
            }
            Policy::Random(rng) => rng.shuffle(&mut candidates),
        }
        candidates
    }
}

struct Walk<'c, 'p> {
    complex: &'c Complex,
    policy: Policy<'p>,
    visited: BTreeSet<Face>,
    steps: Vec<PlanStep>,
    next: VertexId,
}

impl Walk<'_, '_> {
    fn children(&mut self, face: &Face) -> Vec<VertexId> {
        let mut ws = BTreeSet::new();
        for g in self.complex.facets_containing(face) {
            ws.extend(g.vertices().iter().copied().filter(|w| !face.contains(*w)));
        }
        self.policy.order(ws.into_iter().collect())
    }

    /// Visits `face`, whose barycenter is the vertex `apex`.
    fn descend(&mut self, face: &Face, apex: VertexId) {
        for w in self.children(face) {
            let child = face.with(w);
            if !self.visited.insert(child.clone()) {
                continue;
            }
            let new_vertex = self.next;
            self.next = new_vertex.next();
            self.steps.push(PlanStep { edge: Face::edge(apex, w), new_vertex, original_face: child.clone() });
            self.descend(&child, new_vertex);
        }
    }
}

/// Depth-first walk on the face poset: entering `G ∪ {w}` from `G` subdivides
/// the edge between `w` and the vertex standing for `G`.
pub fn plan_backtrack(complex: &Complex, policy: Policy<'_>) -> Result<BacktrackPlan> {
    plan_backtrack_from(complex, policy, complex.fresh_vertex())
}

/// As [`plan_backtrack`], numbering new vertices upward from `first`.
pub fn plan_backtrack_from(complex: &Complex, policy: Policy<'_>, first: VertexId) -> Result<BacktrackPlan> {
    if complex.is_empty() {
        return Err(Error::InvalidArgument("cannot plan on the empty complex".into()));
    }
    if first < complex.fresh_vertex() {
        return Err(Error::InvalidArgument(format!("first new label {first} is not above every vertex")));
    }
    let mut walk = Walk { complex, policy, visited: BTreeSet::new(), steps: Vec::new(), next: first };
    let roots = walk.policy.order(complex.vertices().to_vec());
    for v in roots {
        let root = Face::vertex(v);
        walk.visited.insert(root.clone());
        walk.descend(&root, v);
    }
    Ok(BacktrackPlan { source: complex.clone(), steps: walk.steps })
}

/// Performs the steps in order.
pub fn apply_plan(plan: &BacktrackPlan) -> Result<LabeledSubdivision> {
    let mut complex = plan.source.clone();
    let mut origin: BTreeMap<VertexId, Face> =
        plan.source.vertices().iter().map(|&v| (v, Face::vertex(v))).collect();
    for (step, s) in plan.steps.iter().enumerate() {
        complex = edge_subdivide(&complex, &s.edge, s.new_vertex)
            .map_err(|e| Error::InvalidPlan { step, reason: e.to_string() })?;
        origin.insert(s.new_vertex, s.original_face.clone());
    }
    Ok(LabeledSubdivision { complex, origin })
}

/// The first condition a plan fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanViolation {
    /// A face of dimension > 0 is barycentred zero or several times, or a
    /// step names something that is not such a face.
    Coverage { face: Face, count: usize },
    /// The step's new label is already a vertex.
    StaleLabel { step: usize, vertex: VertexId },
    MissingEdge { step: usize, edge: Face },
    /// The barycenter of the original face is not strictly inside the segment.
    Barycenter { step: usize },
    /// `f3` contains the incomparable `f1`, `f2` but comes after both.
    Order { f1: Face, f2: Face, f3: Face },
}

impl std::fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlanViolation::Coverage { face, count } => write!(f, "face {face} is covered {count} times"),
            PlanViolation::StaleLabel { step, vertex } => write!(f, "step {step}: vertex {vertex} already exists"),
            PlanViolation::MissingEdge { step, edge } => write!(f, "step {step}: edge {edge} is absent"),
            PlanViolation::Barycenter { step } => {
                write!(f, "step {step}: barycenter of the original face is not inside the subdivided edge")
            }
            PlanViolation::Order { f1, f2, f3 } => write!(f, "{f3} appears after both {f1} and {f2}"),
        }
    }
}

type Point = Vec<Ratio<i64>>;

fn barycenter(face: &Face, coordinate: &HashMap<VertexId, usize>, dim: usize) -> Point {
    let mut p = vec![Ratio::from_integer(0); dim];
    let weight = Ratio::new(1, face.len() as i64);
    for v in face.vertices() {
        p[coordinate[v]] += weight;
    }
    p
}

/// True iff `p = t·x + (1 − t)·y` for some `0 < t < 1`.
fn strictly_between(p: &Point, x: &Point, y: &Point) -> bool {
    let Some(k) = (0..p.len()).find(|&k| x[k] != y[k]) else {
        return false;
    };
    let t = (p[k] - y[k]) / (x[k] - y[k]);
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    t > zero && t < one && (0..p.len()).all(|k| p[k] == t * x[k] + (one - t) * y[k])
}

/// Checks coverage, label freshness, edge existence, the barycenter
/// condition (source vertices at the standard basis, exact arithmetic) and
/// the order condition on incomparable pairs of subfaces.
#[allow(clippy::result_large_err)] // violations carry the offending faces for reporting
pub fn verify_plan(plan: &BacktrackPlan) -> std::result::Result<(), PlanViolation> {
    let source = &plan.source;
    let targets: BTreeSet<Face> = source.all_faces().into_iter().filter(|f| f.len() > 1).collect();
    let mut count: BTreeMap<Face, usize> = targets.iter().map(|f| (f.clone(), 0)).collect();
    for s in &plan.steps {
        *count.entry(s.original_face.clone()).or_insert(0) += 1;
    }
    for (face, &c) in &count {
        if c != 1 || !targets.contains(face) {
            return Err(PlanViolation::Coverage { face: face.clone(), count: c });
        }
    }

    let coordinate: HashMap<VertexId, usize> = source.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let dim = coordinate.len();
    let mut position: HashMap<VertexId, Point> =
        source.vertices().iter().map(|&v| (v, barycenter(&Face::vertex(v), &coordinate, dim))).collect();
    let mut complex = source.clone();
    for (step, s) in plan.steps.iter().enumerate() {
        if complex.has_vertex(s.new_vertex) {
            return Err(PlanViolation::StaleLabel { step, vertex: s.new_vertex });
        }
        let Ok(next) = edge_subdivide(&complex, &s.edge, s.new_vertex) else {
            return Err(PlanViolation::MissingEdge { step, edge: s.edge.clone() });
        };
        let p = barycenter(&s.original_face, &coordinate, dim);
        let [x, y] = s.edge.vertices() else { unreachable!("edge_subdivide accepted a non-edge") };
        if !strictly_between(&p, &position[x], &position[y]) {
            return Err(PlanViolation::Barycenter { step });
        }
        position.insert(s.new_vertex, p);
        complex = next;
    }

    let when: HashMap<&Face, usize> = plan.steps.iter().enumerate().map(|(i, s)| (&s.original_face, i)).collect();
    for f3 in &targets {
        let subs: Vec<Face> = f3.nonempty_subsets().filter(|g| g.len() > 1 && g != f3).collect();
        for (k, f1) in subs.iter().enumerate() {
            for f2 in &subs[k + 1..] {
                if f1.is_subset(f2) || f2.is_subset(f1) {
                    continue;
                }
                if when[f3] > when[f1] && when[f3] > when[f2] {
                    return Err(PlanViolation::Order { f1: f1.clone(), f2: f2.clone(), f3: f3.clone() });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_complex, random_complex, simplex_boundary};

    fn f(labels: &[u32]) -> Face {
        Face::new(labels.iter().copied()).unwrap()
    }

    fn solid_triangle() -> Complex {
        Complex::from_facets([[0, 1, 2]]).unwrap()
    }

    fn two_triangles() -> Complex {
        Complex::from_facets([[0, 1, 2], [1, 2, 3]]).unwrap()
    }

    fn step(edge: [u32; 2], new: u32, face: &[u32]) -> PlanStep {
        PlanStep { edge: f(&edge), new_vertex: VertexId(new), original_face: f(face) }
    }

    #[test]
    fn barycentric_examples() {
        let hex = barycentric(&cycle_complex(3).unwrap()).unwrap();
        assert!(hex.complex.is_isomorphic(&cycle_complex(6).unwrap()).is_some());
        let tri = barycentric(&solid_triangle()).unwrap();
        assert_eq!(tri.complex.num_vertices(), 7);
        assert_eq!(tri.complex.facets().len(), 6);
        let fig = barycentric(&two_triangles()).unwrap();
        assert_eq!(fig.complex.num_vertices(), 11);
        assert_eq!(fig.vertex_of(&f(&[1, 2])), Some(VertexId(6)));
        assert!(barycentric(&Complex::empty()).is_err());
    }

    #[test]
    fn barycentric_chains_are_chains() {
        let sub = barycentric(&simplex_boundary(4).unwrap()).unwrap();
        for facet in sub.complex.facets() {
            let mut faces: Vec<&Face> = facet.vertices().iter().map(|v| &sub.origin[v]).collect();
            faces.sort_by_key(|x| x.len());
            assert!(faces.windows(2).all(|w| w[0].is_subset(w[1]) && w[0].len() + 1 == w[1].len()));
        }
        assert_eq!(sub.complex.face_counts(), vec![14, 36, 24]);
    }

    #[test]
    fn single_edge_plan() {
        let edge = Complex::from_facets([[1, 2]]).unwrap();
        let plan = plan_backtrack(&edge, Policy::Ascending).unwrap();
        assert_eq!(plan.steps, vec![step([1, 2], 3, &[1, 2])]);
    }

    #[test]
    fn figure_plan_order() {
        let plan = plan_backtrack(&two_triangles(), Policy::Priority(&[1, 2, 0, 3].map(VertexId))).unwrap();
        let faces: Vec<Vec<u32>> = plan.steps.iter().map(|s| s.original_face.labels()).collect();
        let expected: Vec<Vec<u32>> =
            vec![vec![1, 2], vec![0, 1, 2], vec![1, 2, 3], vec![0, 1], vec![1, 3], vec![0, 2], vec![2, 3]];
        assert_eq!(faces, expected);
        assert_eq!(plan.steps[1].edge, f(&[0, 4]));
        verify_plan(&plan).unwrap();
        let out = apply_plan(&plan).unwrap();
        assert_eq!(out.complex.num_vertices(), 11);
        assert!(out.matches(&barycentric(&two_triangles()).unwrap()));
    }

    #[test]
    fn plans_for_small_complexes() {
        let c3 = apply_plan(&plan_backtrack(&cycle_complex(3).unwrap(), Policy::Ascending).unwrap()).unwrap();
        assert!(c3.complex.is_isomorphic(&cycle_complex(6).unwrap()).is_some());
        assert_eq!(c3.origin.values().filter(|f| f.len() == 2).count(), 3);
        let plan = plan_backtrack(&solid_triangle(), Policy::Ascending).unwrap();
        assert_eq!(plan.steps.len(), 4);
        let out = apply_plan(&plan).unwrap();
        assert!(out.complex.is_isomorphic(&barycentric(&solid_triangle()).unwrap().complex).is_some());
    }

    #[test]
    fn random_plans_are_valid_and_match() {
        let mut shape = SeededRng::new(21, 0);
        let mut choice = SeededRng::new(21, 1);
        for _ in 0..15 {
            let c = random_complex(&mut shape, 6, 3, 4);
            let direct = barycentric(&c).unwrap();
            for _ in 0..3 {
                let plan = plan_backtrack(&c, Policy::Random(&mut choice)).unwrap();
                verify_plan(&plan).unwrap();
                let out = apply_plan(&plan).unwrap();
                assert_eq!(out.complex.num_vertices(), c.all_faces().len());
                assert!(out.matches(&direct));
            }
        }
    }

    #[test]
    fn order_violation_is_reported() {
        let plan = BacktrackPlan {
            source: solid_triangle(),
            steps: vec![
                step([0, 1], 3, &[0, 1]),
                step([0, 2], 4, &[0, 2]),
                step([2, 3], 5, &[0, 1, 2]),
                step([1, 2], 6, &[1, 2]),
            ],
        };
        assert_eq!(
            verify_plan(&plan),
            Err(PlanViolation::Order { f1: f(&[0, 1]), f2: f(&[0, 2]), f3: f(&[0, 1, 2]) })
        );
        // the complex is still a subdivision, just not the barycentric one
        assert!(apply_plan(&plan).is_ok());
    }

    #[test]
    fn barycenter_violation_is_reported() {
        let plan = BacktrackPlan {
            source: solid_triangle(),
            steps: vec![
                step([0, 1], 3, &[0, 1]),
                step([1, 2], 4, &[1, 2]),
                step([0, 2], 5, &[0, 2]),
                step([3, 4], 6, &[0, 1, 2]),
            ],
        };
        assert_eq!(verify_plan(&plan), Err(PlanViolation::Barycenter { step: 3 }));
    }

    #[test]
    fn structural_violations_are_reported() {
        let mut plan = plan_backtrack(&solid_triangle(), Policy::Ascending).unwrap();
        let last = plan.steps.pop().unwrap();
        assert_eq!(verify_plan(&plan), Err(PlanViolation::Coverage { face: last.original_face, count: 0 }));

        let mut plan = plan_backtrack(&solid_triangle(), Policy::Ascending).unwrap();
        plan.steps[1].new_vertex = VertexId(0);
        assert_eq!(verify_plan(&plan), Err(PlanViolation::StaleLabel { step: 1, vertex: VertexId(0) }));

        let mut plan = plan_backtrack(&solid_triangle(), Policy::Ascending).unwrap();
        plan.steps[1].edge = f(&[0, 9]);
        assert_eq!(verify_plan(&plan), Err(PlanViolation::MissingEdge { step: 1, edge: f(&[0, 9]) }));
        assert!(matches!(apply_plan(&plan), Err(Error::InvalidPlan { step: 1, .. })));
    }

    #[test]
    fn plan_steps_serialize() {
        let s = step([1, 2], 3, &[1, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"edge":[1,2],"new":3,"face":[1,2]}"#);
    }
}
