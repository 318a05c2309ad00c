//! Seeded random walk over flag spheres.
//!
//! The walk starts at an octahedral sphere and alternates, at random, between
//! edge subdivisions and contractions of edges in no induced 4-cycle. Both
//! moves keep a flag sphere a flag sphere, and together they reach every flag
//! PL-sphere of the dimension. After each move the walk checks γ₂ ≥ 0, the
//! upper bounds by Turán clique counts, and, whenever γ₂ = 0, whether greedy
//! contraction ends at the octahedral sphere.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::generators::{is_octahedral, octahedral_sphere};
use crate::invariants::{closed_forms_from_counts, conjecture_bounds, f_vector, link_gamma1, ClosedForms};
use crate::moves::{admissible_edges, contract_edge, inverse_edge_subdivide, invertible_triples, Move};
use crate::rng::SeededRng;

/// RNG stream deciding between subdivision and contraction.
pub const MOVE_STREAM: u64 = 0;
/// RNG stream choosing the edge a move acts on.
pub const EDGE_STREAM: u64 = 1;
/// RNG stream for greedy contraction at γ₂ = 0 states.
pub const GREEDY_STREAM: u64 = 2;

/// Steps between spot checks that inverse edge subdivisions are admissible contractions.
pub const SOUNDNESS_INTERVAL: u64 = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorerConfig {
    /// Dimension of the spheres; the walk starts at `octahedral_sphere(sphere_dim + 1)`.
    pub sphere_dim: u32,
    pub steps: u64,
    pub seed: u64,
    pub p_subdivide: Ratio<u64>,
    /// Subdivisions are suppressed at this many vertices.
    pub max_vertices: usize,
    pub trace_path: Option<PathBuf>,
}

impl ExplorerConfig {
    pub fn new(sphere_dim: u32, steps: u64, seed: u64) -> ExplorerConfig {
        ExplorerConfig {
            sphere_dim,
            steps,
            seed,
            p_subdivide: Ratio::new(1, 2),
            max_vertices: 64,
            trace_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sphere_dim < 2 {
            return Err(Error::InvalidArgument(format!("sphere dimension must be at least 2, got {}", self.sphere_dim)));
        }
        let p = self.p_subdivide;
        if *p.numer() == 0 || p.numer() >= p.denom() {
            return Err(Error::InvalidArgument(format!("subdivision probability {p} is not in (0, 1)")));
        }
        let start = 2 * (self.sphere_dim as usize + 1);
        if self.max_vertices < start {
            return Err(Error::InvalidArgument(format!(
                "vertex cap {} is below the {start} vertices of the starting sphere",
                self.max_vertices
            )));
        }
        Ok(())
    }

    fn d(&self) -> i64 {
        self.sphere_dim as i64 + 1
    }
}

/// The two per-step streams.
#[derive(Clone, Debug)]
pub struct StepRngs {
    pub move_type: SeededRng,
    pub edge: SeededRng,
}

impl StepRngs {
    pub fn new(seed: u64) -> StepRngs {
        StepRngs { move_type: SeededRng::new(seed, MOVE_STREAM), edge: SeededRng::new(seed, EDGE_STREAM) }
    }
}

/// A random move: subdivision with probability `p`, otherwise contraction.
/// The boolean reports whether the drawn kind had to be replaced by the other.
pub fn random_step(
    complex: &Complex,
    p_subdivide: Ratio<u64>,
    max_vertices: usize,
    rngs: &mut StepRngs,
) -> Result<(Complex, Move, bool)> {
    let want_subdivide = rngs.move_type.chance(*p_subdivide.numer(), *p_subdivide.denom());
    step_of_kind(complex, want_subdivide, max_vertices, &mut rngs.edge)
}

/// A move of the requested kind when one is available, else of the other kind.
pub fn step_of_kind(
    complex: &Complex,
    want_subdivide: bool,
    max_vertices: usize,
    edge_rng: &mut SeededRng,
) -> Result<(Complex, Move, bool)> {
    let can_subdivide = complex.num_vertices() < max_vertices && complex.skeleton().num_edges() > 0;
    let admissible = if want_subdivide && can_subdivide { Vec::new() } else { admissible_edges(complex) };
    let subdivide = if want_subdivide { can_subdivide || admissible.is_empty() } else { admissible.is_empty() };
    let fallback = subdivide != want_subdivide;
    let v = complex.fresh_vertex();
    if subdivide {
        if !can_subdivide {
            return Err(Error::InvalidArgument("no admissible edge and the vertex cap blocks subdivision".into()));
        }
        let edges = complex.skeleton().edges();
        let (a, b) = edges[edge_rng.index(edges.len())];
        let m = Move::EdgeSubdiv { edge: Face::edge(a, b), new_vertex: v };
        Ok((m.apply(complex)?, m, fallback))
    } else {
        let (a, b) = admissible[edge_rng.index(admissible.len())];
        let m = Move::Contract { edge: Face::edge(a, b), new_vertex: v };
        Ok((m.apply(complex)?, m, fallback))
    }
}

fn gamma_forms(complex: &Complex, d: i64) -> ClosedForms {
    closed_forms_from_counts(d, complex.num_vertices() as i64, complex.skeleton().num_edges() as i64)
}

/// One contraction performed by [`greedy_contract_to_octahedral`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyContraction {
    pub edge: Face,
    pub link_octahedral: bool,
    /// γ₂ before equals γ₂ after plus γ₁ of the edge link.
    pub identity_holds: bool,
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub complex: Complex,
    pub contractions: Vec<GreedyContraction>,
    pub octahedral: bool,
}

/// Contracts uniformly chosen admissible edges until none is left.
pub fn greedy_contract_to_octahedral(complex: &Complex, rng: &mut SeededRng) -> Result<GreedyOutcome> {
    let d = complex.dim().map_or(0, |k| k as i64 + 1);
    let mut current = complex.clone();
    let mut contractions = Vec::new();
    loop {
        let admissible = admissible_edges(&current);
        if admissible.is_empty() {
            break;
        }
        let (a, b) = admissible[rng.index(admissible.len())];
        let edge = Face::edge(a, b);
        let link_octahedral = is_octahedral(&current.link(&edge)?);
        let before = gamma_forms(&current, d).gamma2;
        let lk_gamma1 = link_gamma1(&current, &edge)?;
        let next = contract_edge(&current, a, b, current.fresh_vertex())?;
        let identity_holds = before == gamma_forms(&next, d).gamma2 + lk_gamma1;
        contractions.push(GreedyContraction { edge, link_octahedral, identity_holds });
        current = next;
    }
    let octahedral = is_octahedral(&current);
    Ok(GreedyOutcome { complex: current, contractions, octahedral })
}

/// Checks that a walk state is a flag pseudomanifold of the right dimension
/// and Euler characteristic.
pub fn check_sphere_state(complex: &Complex, sphere_dim: u32) -> Result<()> {
    let fail = |what: &str| Err(Error::InvalidArgument(format!("walk state is not {what}")));
    if complex.dim() != Some(sphere_dim as isize) || !complex.is_pure() {
        return fail("pure of the walk dimension");
    }
    if !complex.is_flag() {
        return fail("flag");
    }
    let mut ridges: HashMap<Face, u32> = HashMap::new();
    for f in complex.facets() {
        for r in f.boundary_facets() {
            *ridges.entry(r).or_default() += 1;
        }
    }
    if ridges.values().any(|&c| c != 2) {
        return fail("a pseudomanifold");
    }
    let expected = if sphere_dim.is_multiple_of(2) { 2 } else { 0 };
    if complex.euler_characteristic() != expected {
        return fail("of sphere Euler characteristic");
    }
    Ok(())
}

/// Everything needed to re-check a finding: the state, and the moves leading
/// to it from `octahedral_sphere(sphere_dim + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub step: u64,
    pub kind: String,
    pub detail: String,
    pub facets: Vec<Face>,
    pub moves: Vec<Move>,
}

/// A γ₂ = 0 state and what greedy contraction made of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityEvent {
    pub step: u64,
    pub f: Vec<u64>,
    pub num_facets: usize,
    pub contractions: usize,
    pub links_octahedral: Vec<bool>,
    pub final_octahedral: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub checked: u64,
    pub failures: Vec<Certificate>,
}

/// Comparisons of γ_i with the Turán clique counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundTally {
    pub checked: u64,
    /// Even `d`, where the bound and its equality case are conjectured.
    pub in_scope: bool,
    pub equality_states: u64,
    pub balanced_join_states: u64,
    /// Largest `γ_i − bound` seen.
    pub max_excess: Option<i64>,
    pub violations: Vec<Certificate>,
    pub equality_mismatches: Vec<Certificate>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessTally {
    pub states_checked: u64,
    pub inverse_moves_checked: u64,
    pub failures: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub sphere_dim: u32,
    pub seed: u64,
    pub steps_requested: u64,
    pub steps_taken: u64,
    pub p_subdivide: String,
    pub max_vertices: usize,
    /// Always "bounded": the vertex cap restricts the reachable spheres.
    pub exploration: String,
    pub subdivisions: u64,
    pub contractions: u64,
    pub fallbacks: u64,
    pub max_vertices_seen: usize,
    pub final_f: Vec<u64>,
    pub gamma2_min: i64,
    pub gamma2_max: i64,
    pub gamma2_violations: Vec<Certificate>,
    pub gamma1_zero_states: u64,
    pub gamma1_zero_non_octahedral: Vec<Certificate>,
    pub equality_events: Vec<EqualityEvent>,
    pub greedy_stuck: Vec<Certificate>,
    pub contraction_identity: IdentityTally,
    pub bound_checks: BoundTally,
    pub soundness: SoundnessTally,
}

impl WalkReport {
    /// Findings that would refute a conjectured inequality or equality case.
    pub fn counterexamples(&self) -> usize {
        self.gamma2_violations.len() + self.bound_checks.violations.len() + self.bound_checks.equality_mismatches.len()
    }

    /// Counterexamples plus anything else contrary to expectation, including
    /// greedy runs stuck away from the octahedral sphere.
    pub fn contrary_findings(&self) -> usize {
        self.counterexamples()
            + self.greedy_stuck.len()
            + self.gamma1_zero_non_octahedral.len()
            + self.contraction_identity.failures.len()
            + self.soundness.failures.len()
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.gamma2_violations
            .iter()
            .chain(&self.bound_checks.violations)
            .chain(&self.bound_checks.equality_mismatches)
            .chain(&self.greedy_stuck)
            .chain(&self.gamma1_zero_non_octahedral)
            .chain(&self.contraction_identity.failures)
            .chain(&self.soundness.failures)
    }
}

#[derive(Serialize)]
struct TraceRecord<'a> {
    step: u64,
    #[serde(rename = "move")]
    mv: &'a Move,
    f: &'a [u64],
    gamma1: i64,
    gamma2: i64,
    event: Option<&'static str>,
}

struct Walk<'a> {
    config: &'a ExplorerConfig,
    log: Vec<Move>,
    greedy_rng: SeededRng,
    report: WalkReport,
}

impl Walk<'_> {
    fn certificate(&self, step: u64, kind: &str, detail: String, complex: &Complex) -> Certificate {
        Certificate { step, kind: kind.into(), detail, facets: complex.facets().to_vec(), moves: self.log.clone() }
    }

    /// Runs the per-state checks and returns the trace event tag.
    fn visit(&mut self, step: u64, state: &Complex, forms: ClosedForms) -> Result<Option<&'static str>> {
        check_sphere_state(state, self.config.sphere_dim)?;
        let r = &mut self.report;
        r.max_vertices_seen = r.max_vertices_seen.max(state.num_vertices());
        r.gamma2_min = r.gamma2_min.min(forms.gamma2);
        r.gamma2_max = r.gamma2_max.max(forms.gamma2);
        let mut event = None;
        if forms.gamma1 == 0 {
            self.report.gamma1_zero_states += 1;
            if !is_octahedral(state) {
                let c = self.certificate(step, "gamma1_zero_non_octahedral", "γ₁ = 0 but not octahedral".into(), state);
                self.report.gamma1_zero_non_octahedral.push(c);
            }
        }
        if forms.gamma2 < 0 {
            let c = self.certificate(step, "gamma2_negative", format!("γ₂ = {}", forms.gamma2), state);
            self.report.gamma2_violations.push(c);
            event = Some("violation");
        } else if forms.gamma2 == 0 {
            let outcome = greedy_contract_to_octahedral(state, &mut self.greedy_rng)?;
            self.report.contraction_identity.checked += outcome.contractions.len() as u64;
            if outcome.contractions.iter().any(|c| !c.identity_holds) {
                let c = self.certificate(step, "contraction_identity", "during greedy contraction".into(), state);
                self.report.contraction_identity.failures.push(c);
            }
            if !outcome.octahedral {
                let detail = format!(
                    "greedy contraction stuck at a non-octahedral sphere with facets {:?}",
                    outcome.complex.facets()
                );
                let c = self.certificate(step, "greedy_stuck", detail, state);
                self.report.greedy_stuck.push(c);
            }
            self.report.equality_events.push(EqualityEvent {
                step,
                f: state.face_counts(),
                num_facets: state.facets().len(),
                contractions: outcome.contractions.len(),
                links_octahedral: outcome.contractions.iter().map(|c| c.link_octahedral).collect(),
                final_octahedral: outcome.octahedral,
            });
            event = Some("equality");
        }
        if self.config.d() >= 4 {
            self.check_bounds(step, state)?;
        }
        if step.is_multiple_of(SOUNDNESS_INTERVAL) {
            self.check_soundness(step, state)?;
        }
        Ok(event)
    }

    fn check_bounds(&mut self, step: u64, state: &Complex) -> Result<()> {
        let bounds = conjecture_bounds(state)?;
        let tally = &mut self.report.bound_checks;
        tally.checked += 1;
        tally.in_scope = bounds.in_scope;
        tally.equality_states += u64::from(bounds.any_equality());
        tally.balanced_join_states += u64::from(bounds.balanced_join);
        for e in &bounds.entries {
            let excess = e.gamma - e.bound;
            tally.max_excess = Some(tally.max_excess.map_or(excess, |m| m.max(excess)));
        }
        if bounds.in_scope && bounds.violated() {
            let c = self.certificate(step, "bound_violation", format!("{:?}", bounds.entries), state);
            self.report.bound_checks.violations.push(c);
        }
        if bounds.equality_mismatch() {
            let detail = format!("entries {:?}, cycle lengths {:?}", bounds.entries, bounds.cycle_lengths);
            let c = self.certificate(step, "equality_mismatch", detail, state);
            self.report.bound_checks.equality_mismatches.push(c);
        }
        Ok(())
    }

    /// Every available inverse edge subdivision with a flag result must be an
    /// admissible contraction producing the same complex.
    fn check_soundness(&mut self, step: u64, state: &Complex) -> Result<()> {
        self.report.soundness.states_checked += 1;
        for (v, a, b) in invertible_triples(state) {
            let inverse = inverse_edge_subdivide(state, v, a, b)?;
            if !inverse.is_flag() {
                continue;
            }
            self.report.soundness.inverse_moves_checked += 1;
            let admissible = crate::moves::is_admissible(state, v, a)?;
            let merged = contract_edge(state, v, a, state.fresh_vertex())?;
            let renamed = merged.relabel(&HashMap::from([(state.fresh_vertex(), a)]))?;
            if !admissible || renamed != inverse {
                let detail = format!("removing {v} to recreate {{{a},{b}}}");
                let c = self.certificate(step, "inverse_not_admissible", detail, state);
                self.report.soundness.failures.push(c);
            }
        }
        Ok(())
    }
}

/// Runs one walk.
pub fn run(config: &ExplorerConfig) -> Result<WalkReport> {
    config.validate()?;
    let d = config.d();
    let mut state = octahedral_sphere(d as u32);
    let mut rngs = StepRngs::new(config.seed);
    let forms = gamma_forms(&state, d);
    let mut walk = Walk {
        config,
        log: Vec::new(),
        greedy_rng: SeededRng::new(config.seed, GREEDY_STREAM),
        report: WalkReport {
            sphere_dim: config.sphere_dim,
            seed: config.seed,
            steps_requested: config.steps,
            steps_taken: 0,
            p_subdivide: config.p_subdivide.to_string(),
            max_vertices: config.max_vertices,
            exploration: "bounded".into(),
            subdivisions: 0,
            contractions: 0,
            fallbacks: 0,
            max_vertices_seen: 0,
            final_f: Vec::new(),
            gamma2_min: forms.gamma2,
            gamma2_max: forms.gamma2,
            gamma2_violations: Vec::new(),
            gamma1_zero_states: 0,
            gamma1_zero_non_octahedral: Vec::new(),
            equality_events: Vec::new(),
            greedy_stuck: Vec::new(),
            contraction_identity: IdentityTally::default(),
            bound_checks: BoundTally::default(),
            soundness: SoundnessTally::default(),
        },
    };
    let mut trace = config.trace_path.as_deref().map(open_trace).transpose()?;
    walk.visit(0, &state, forms)?;
    for step in 1..=config.steps {
        let before = gamma_forms(&state, d);
        let (next, mv, fallback) = random_step(&state, config.p_subdivide, config.max_vertices, &mut rngs)?;
        let forms = gamma_forms(&next, d);
        walk.report.fallbacks += u64::from(fallback);
        match &mv {
            Move::Contract { edge, .. } => {
                walk.report.contractions += 1;
                walk.report.contraction_identity.checked += 1;
                if before.gamma2 != forms.gamma2 + link_gamma1(&state, edge)? {
                    let c = walk.certificate(step, "contraction_identity", format!("contracting {edge}"), &state);
                    walk.report.contraction_identity.failures.push(c);
                }
            }
            _ => walk.report.subdivisions += 1,
        }
        walk.log.push(mv.clone());
        let event = walk.visit(step, &next, forms)?;
        if let Some(out) = trace.as_mut() {
            let f = f_vector(&next);
            let record =
                TraceRecord { step, mv: &mv, f: f.entries(), gamma1: forms.gamma1, gamma2: forms.gamma2, event };
            serde_json::to_writer(&mut *out, &record).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        state = next;
        walk.report.steps_taken = step;
    }
    if let Some(mut out) = trace {
        out.flush()?;
    }
    walk.report.final_f = state.face_counts();
    Ok(walk.report)
}

fn open_trace(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Independent walks with seeds `seed, seed + 1, …`, run in parallel and
/// returned in seed order. With a trace path, walk `k` writes to `path.k`.
pub fn run_walks(config: &ExplorerConfig, walks: usize) -> Result<Vec<WalkReport>> {
    (0..walks)
        .into_par_iter()
        .map(|k| {
            let mut c = config.clone();
            c.seed = config.seed.wrapping_add(k as u64);
            if walks > 1 {
                c.trace_path = config.trace_path.as_ref().map(|p| {
                    let mut s = p.clone().into_os_string();
                    s.push(format!(".{k}"));
                    PathBuf::from(s)
                });
            }
            run(&c)
        })
        .collect()
}

/// Replays a certificate's move log from the starting octahedral sphere.
pub fn replay(sphere_dim: u32, moves: &[Move]) -> Result<Complex> {
    let mut c = octahedral_sphere(sphere_dim + 1);
    for m in moves {
        c = m.apply(&c)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::join_of_cycles;
    use crate::invariants::closed_form_invariants;

    #[test]
    fn octahedron_contraction_falls_back_to_subdivision() {
        let oct = octahedral_sphere(3);
        assert!(admissible_edges(&oct).is_empty());
        let mut rng = SeededRng::new(1, EDGE_STREAM);
        let (next, m, fallback) = step_of_kind(&oct, false, 64, &mut rng).unwrap();
        assert!(fallback);
        assert!(matches!(m, Move::EdgeSubdiv { .. }));
        assert_eq!(next.num_vertices(), 7);
    }

    #[test]
    fn contraction_on_join_of_five_cycles_uses_a_cycle_edge() {
        let c55 = join_of_cycles(&[5, 5], false).unwrap();
        assert_eq!(admissible_edges(&c55).len(), 10);
        for seed in 0..10 {
            let mut rng = SeededRng::new(seed, EDGE_STREAM);
            let (next, m, fallback) = step_of_kind(&c55, false, 64, &mut rng).unwrap();
            assert!(!fallback);
            let Move::Contract { edge, .. } = &m else { panic!("expected a contraction") };
            let [a, b] = edge.vertices() else { panic!("edge") };
            assert_eq!((a.0 - 1) / 5, (b.0 - 1) / 5, "both ends in one cycle");
            assert_eq!(next.num_vertices(), 9);
        }
    }

    #[test]
    fn vertex_cap_suppresses_subdivision() {
        let c55 = join_of_cycles(&[5, 5], false).unwrap();
        let mut rng = SeededRng::new(3, EDGE_STREAM);
        let (_, m, fallback) = step_of_kind(&c55, true, 10, &mut rng).unwrap();
        assert!(fallback);
        assert!(matches!(m, Move::Contract { .. }));
        let oct = octahedral_sphere(3);
        assert!(step_of_kind(&oct, true, 6, &mut rng).is_err());
    }

    #[test]
    fn first_move_is_reproducible() {
        let start = octahedral_sphere(4);
        let draw = || random_step(&start, Ratio::new(1, 2), 64, &mut StepRngs::new(99)).unwrap().1;
        assert_eq!(draw(), draw());
    }

    #[test]
    fn greedy_on_joins() {
        let mut rng = SeededRng::new(5, GREEDY_STREAM);
        let c54 = join_of_cycles(&[5, 4], false).unwrap();
        assert_eq!(closed_form_invariants(&c54).unwrap().gamma2, 0);
        let out = greedy_contract_to_octahedral(&c54, &mut rng).unwrap();
        assert!(out.octahedral);
        assert_eq!(out.contractions.len(), 1);
        assert!(out.contractions[0].link_octahedral && out.contractions[0].identity_holds);
        let oct = greedy_contract_to_octahedral(&octahedral_sphere(4), &mut rng).unwrap();
        assert!(oct.octahedral && oct.contractions.is_empty());
        let c55 = greedy_contract_to_octahedral(&join_of_cycles(&[5, 5], false).unwrap(), &mut rng).unwrap();
        assert!(c55.contractions.iter().all(|c| c.identity_holds));
    }

    #[test]
    fn zero_steps_reports_the_start() {
        let r = run(&ExplorerConfig::new(3, 0, 1)).unwrap();
        assert_eq!(r.steps_taken, 0);
        assert_eq!((r.gamma2_min, r.gamma2_max), (0, 0));
        assert_eq!(r.gamma1_zero_states, 1);
        assert_eq!(r.equality_events.len(), 1);
        assert!(r.equality_events[0].final_octahedral);
        assert_eq!(r.contrary_findings(), 0);
        assert_eq!(r.final_f, vec![8, 24, 32, 16]);
    }

    #[test]
    fn short_walks_are_clean_and_deterministic() {
        for dim in [2, 3, 4] {
            let mut config = ExplorerConfig::new(dim, 300, 11);
            config.max_vertices = 24;
            let a = run(&config).unwrap();
            let b = run(&config).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
            assert_eq!(a.contrary_findings(), 0, "dim {dim}");
            assert_eq!(a.subdivisions + a.contractions, 300);
            assert!(a.max_vertices_seen <= 24);
        }
    }

    #[test]
    fn state_checks_reject_non_spheres() {
        assert!(check_sphere_state(&octahedral_sphere(3), 2).is_ok());
        assert!(check_sphere_state(&octahedral_sphere(3), 3).is_err());
        let disk = Complex::from_facets([[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 2]]).unwrap();
        assert!(check_sphere_state(&disk, 2).is_err());
        assert!(check_sphere_state(&crate::generators::simplex_boundary(4).unwrap(), 2).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(ExplorerConfig::new(1, 1, 0).validate().is_err());
        let mut c = ExplorerConfig::new(3, 1, 0);
        c.p_subdivide = Ratio::new(1, 1);
        assert!(c.validate().is_err());
        c.p_subdivide = Ratio::new(1, 3);
        c.max_vertices = 7;
        assert!(c.validate().is_err());
    }

    #[test]
    fn replay_reproduces_walk_states() {
        let mut rngs = StepRngs::new(4);
        let mut state = octahedral_sphere(3);
        let mut log = Vec::new();
        for _ in 0..40 {
            let (next, m, _) = random_step(&state, Ratio::new(1, 2), 20, &mut rngs).unwrap();
            log.push(m);
            state = next;
        }
        assert_eq!(replay(2, &log).unwrap(), state);
    }
}
