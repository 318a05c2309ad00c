//! Randomized properties of the moves, subdivisions, sequences and walk.

use std::collections::BTreeSet;

use proptest::prelude::*;

use flagstellar::barycentric::{apply_plan, barycentric, plan_backtrack, verify_plan, Policy};
use flagstellar::connectivity::{connect_stellar, d_measure, flagify_with_history, MoveSequence};
use flagstellar::explorer::{check_sphere_state, random_step, StepRngs};
use flagstellar::generators::{is_octahedral, octahedral_sphere, random_flag_complex};
use flagstellar::invariants::{closed_form_invariants, link_gamma1};
use flagstellar::io::{parse_complex, serialize_complex};
use flagstellar::moves::{admissible_edges, contract_edge, edge_subdivide, inverse_edge_subdivide, is_admissible};
use flagstellar::rng::SeededRng;
use flagstellar::{Complex, Face, VertexId};
use num_rational::Ratio;

fn complex_strategy(max_label: u32, max_size: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(prop::collection::btree_set(1..=max_label, 1..=max_size), 1..8)
        .prop_map(|faces| Complex::from_faces(faces.into_iter().map(|f| Face::new(f).unwrap())))
}

fn flag_strategy() -> impl Strategy<Value = Complex> {
    (any::<u64>(), 3u32..9).prop_map(|(seed, n)| random_flag_complex(&mut SeededRng::new(seed, 0), n, 1, 2))
}

fn edges(c: &Complex) -> Vec<Face> {
    c.skeleton().edges().into_iter().map(|(a, b)| Face::edge(a, b)).collect()
}

/// Missing faces of size > 2 after subdividing `{a,b}` at `v`, predicted from
/// the faces of the original complex: the old ones avoiding `{a,b}`, plus
/// `F ∪ {v}` for every face `F` (|F| ≥ 2, disjoint from `{a,b}`) with
/// `F ∪ {a,b}` absent but `(F − x) ∪ {a,b}` present for every `x ∈ F`.
fn predicted_missing(c: &Complex, a: VertexId, b: VertexId, v: VertexId) -> BTreeSet<Face> {
    let ab = Face::edge(a, b);
    let mut out: BTreeSet<Face> = c.missing_faces(3).into_iter().filter(|m| !ab.is_subset(m)).collect();
    for f in c.all_faces() {
        if f.len() < 2 || !f.is_disjoint(&ab) || c.contains_face(&f.union(&ab)) {
            continue;
        }
        if f.vertices().iter().all(|&x| c.contains_face(&f.without(x).union(&ab))) {
            out.insert(f.with(v));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subdivide_then_inverse_is_identity(c in complex_strategy(7, 4), pick in any::<prop::sample::Index>()) {
        let es = edges(&c);
        prop_assume!(!es.is_empty());
        let e = &es[pick.index(es.len())];
        let v = c.fresh_vertex();
        let sub = edge_subdivide(&c, e, v).unwrap();
        let [a, b] = e.vertices() else { unreachable!() };
        prop_assert_eq!(inverse_edge_subdivide(&sub, v, *a, *b).unwrap(), c);
    }

    #[test]
    fn missing_face_transport(c in complex_strategy(7, 4), pick in any::<prop::sample::Index>()) {
        let es = edges(&c);
        prop_assume!(!es.is_empty());
        let e = &es[pick.index(es.len())];
        let [a, b] = *e.vertices() else { unreachable!() };
        let v = c.fresh_vertex();
        let sub = edge_subdivide(&c, e, v).unwrap();
        prop_assert_eq!(sub.missing_faces(3), predicted_missing(&c, a, b, v));
    }

    #[test]
    fn subdivision_keeps_flagness(c in flag_strategy(), pick in any::<prop::sample::Index>()) {
        let es = edges(&c);
        prop_assume!(!es.is_empty());
        let e = &es[pick.index(es.len())];
        prop_assert!(edge_subdivide(&c, e, c.fresh_vertex()).unwrap().is_flag());
    }

    #[test]
    fn contraction_flag_iff_admissible(c in flag_strategy()) {
        for e in edges(&c) {
            let [a, b] = *e.vertices() else { unreachable!() };
            let contracted = contract_edge(&c, a, b, c.fresh_vertex()).unwrap();
            prop_assert_eq!(is_admissible(&c, a, b).unwrap(), contracted.is_flag(), "edge {}", e);
        }
    }

    #[test]
    fn random_plans_give_the_barycentric_subdivision(c in complex_strategy(6, 4), seed in any::<u64>()) {
        let plan = plan_backtrack(&c, Policy::Random(&mut SeededRng::new(seed, 0))).unwrap();
        prop_assert!(verify_plan(&plan).is_ok());
        let out = apply_plan(&plan).unwrap();
        prop_assert!(out.matches(&barycentric(&c).unwrap()));
        prop_assert!(out.complex.is_flag());
    }

    #[test]
    fn stellar_connection_meets_in_the_middle(c in complex_strategy(6, 4), pick in any::<prop::sample::Index>()) {
        let faces: Vec<Face> = c.all_faces().into_iter().filter(|f| f.len() >= 2).collect();
        prop_assume!(!faces.is_empty());
        let conn = connect_stellar(&c, &faces[pick.index(faces.len())]).unwrap();
        prop_assert_eq!(conn.forward.end(), conn.backward.end());
        prop_assert_eq!(conn.forward.start(), &c);
        let path = conn.path().unwrap();
        prop_assert!(MoveSequence::new(path.complexes().to_vec(), path.moves().to_vec()).is_ok());
    }

    #[test]
    fn canonical_text_round_trip(c in complex_strategy(9, 4)) {
        let text = serialize_complex(&c);
        prop_assert_eq!(&parse_complex(&text).unwrap(), &c);
        prop_assert_eq!(serialize_complex(&parse_complex(&text).unwrap()), text);
    }

    #[test]
    fn octahedral_recognition_matches_isomorphism(c in flag_strategy()) {
        let n = c.num_vertices() as u32;
        let iso = n.is_multiple_of(2) && c.is_isomorphic(&octahedral_sphere(n / 2)).is_some();
        prop_assert_eq!(is_octahedral(&c), iso);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn walk_states_stay_flag_spheres(seed in any::<u64>(), dim in 2u32..=4) {
        let mut rngs = StepRngs::new(seed);
        let mut state = octahedral_sphere(dim + 1);
        let d = dim as i64 + 1;
        for _ in 0..30 {
            let (next, m, _) = random_step(&state, Ratio::new(1, 2), 20, &mut rngs).unwrap();
            check_sphere_state(&next, dim).unwrap();
            let gamma2_after = closed_form_invariants(&next).unwrap().gamma2;
            if let flagstellar::moves::Move::Contract { edge, .. } = &m {
                let before = closed_form_invariants(&state).unwrap().gamma2;
                prop_assert_eq!(before, gamma2_after + link_gamma1(&state, edge).unwrap());
            }
            prop_assert!(gamma2_after >= 0);
            prop_assert_eq!(closed_form_invariants(&next).unwrap().gamma1, next.num_vertices() as i64 - 2 * d);
            state = next;
        }
        for (a, b) in admissible_edges(&state) {
            prop_assert!(contract_edge(&state, a, b, state.fresh_vertex()).unwrap().is_flag());
        }
    }

    #[test]
    fn flagify_output_is_sound(seed in any::<u64>(), n in 6u32..9) {
        let c = random_flag_complex(&mut SeededRng::new(seed, 0), n, 2, 3);
        let faces: Vec<Face> = c.all_faces().into_iter().filter(|f| f.len() >= 3).collect();
        prop_assume!(!faces.is_empty());
        let face = &faces[(seed % faces.len() as u64) as usize];
        let path = connect_stellar(&c, face).unwrap().path().unwrap();
        let round_trip = path.clone().concat(path.reversed()).unwrap();
        let out = flagify_with_history(&round_trip).unwrap();
        prop_assert!(out.sequence.complexes().iter().all(|x| d_measure(x) == 0));
        prop_assert_eq!(out.sequence.start(), round_trip.start());
        prop_assert_eq!(out.sequence.end(), round_trip.end());
        prop_assert!(out.history.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(MoveSequence::new(out.sequence.complexes().to_vec(), out.sequence.moves().to_vec()).is_ok());
    }
}
