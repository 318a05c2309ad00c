//! Exact isomorphism test for small complexes: colour refinement on the
//! skeleton seeded with local face statistics, then backtracking.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Complex, Face, VertexId};

type Colour = u32;

struct Side<'a> {
    complex: &'a Complex,
    facet_set: HashSet<&'a Face>,
    colours: Vec<Colour>,
}

fn initial_signature(c: &Complex, v: VertexId) -> Vec<u64> {
    let g = c.skeleton();
    let mut sig = vec![g.degree(v) as u64];
    let vf = Face::vertex(v);
    let mut sizes: Vec<u64> = c.facets_containing(&vf).map(|f| f.len() as u64).collect();
    sizes.sort_unstable();
    sig.push(sizes.len() as u64);
    sig.extend(sizes);
    sig.push(u64::MAX);
    if let Ok(link) = c.link(&vf) {
        sig.extend(link.face_counts());
    }
    sig
}

/// Refines both colourings with a shared palette until the partition stops changing.
fn refine(a: &mut Side<'_>, b: &mut Side<'_>) {
    let mut classes = usize::MAX;
    loop {
        let mut palette: HashMap<(Colour, Vec<Colour>), Colour> = HashMap::new();
        let recolour = |side: &Side<'_>, palette: &mut HashMap<(Colour, Vec<Colour>), Colour>| -> Vec<Colour> {
            let g = side.complex.skeleton();
            (0..g.vertices().len())
                .map(|i| {
                    let mut nb: Vec<Colour> = g.neighbor_bits_idx(i).ones().map(|j| side.colours[j]).collect();
                    nb.sort_unstable();
                    let key = (side.colours[i], nb);
                    let next = palette.len() as Colour;
                    *palette.entry(key).or_insert(next)
                })
                .collect()
        };
        let na = recolour(a, &mut palette);
        let nb = recolour(b, &mut palette);
        a.colours = na;
        b.colours = nb;
        if palette.len() == classes {
            return;
        }
        classes = palette.len();
    }
}

fn histogram(colours: &[Colour]) -> BTreeMap<Colour, usize> {
    let mut h = BTreeMap::new();
    for &c in colours {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

pub(super) fn find_isomorphism(x: &Complex, y: &Complex) -> Option<BTreeMap<VertexId, VertexId>> {
    if x.num_vertices() != y.num_vertices() || x.facets().len() != y.facets().len() {
        return None;
    }
    let mut sx: Vec<usize> = x.facets().iter().map(Face::len).collect();
    let mut sy: Vec<usize> = y.facets().iter().map(Face::len).collect();
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy || x.face_counts() != y.face_counts() {
        return None;
    }
    if x.is_empty() || x.is_void() {
        return Some(BTreeMap::new());
    }

    let mut palette: HashMap<Vec<u64>, Colour> = HashMap::new();
    let mut seed = |c: &Complex| -> Vec<Colour> {
        c.vertices()
            .iter()
            .map(|&v| {
                let next = palette.len() as Colour;
                *palette.entry(initial_signature(c, v)).or_insert(next)
            })
            .collect()
    };
    let cx = seed(x);
    let cy = seed(y);
    let mut a = Side { complex: x, facet_set: x.facets().iter().collect(), colours: cx };
    let mut b = Side { complex: y, facet_set: y.facets().iter().collect(), colours: cy };
    refine(&mut a, &mut b);
    if histogram(&a.colours) != histogram(&b.colours) {
        return None;
    }

    let order = search_order(&a);
    let n = x.num_vertices();
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if backtrack(&a, &b, &order, 0, &mut image, &mut used) {
        let gx = x.skeleton();
        let gy = y.skeleton();
        Some(
            image
                .iter()
                .enumerate()
                .map(|(i, j)| (gx.vertices()[i], gy.vertices()[j.expect("complete mapping")]))
                .collect(),
        )
    } else {
        None
    }
}

/// Vertices ordered so that each one (after the first of its component) has
/// an already-placed neighbour; rarer colours first.
fn search_order(a: &Side<'_>) -> Vec<usize> {
    let g = a.complex.skeleton();
    let n = g.vertices().len();
    let hist = histogram(&a.colours);
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| (links[i], std::cmp::Reverse(hist[&a.colours[i]]), std::cmp::Reverse(i)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for j in g.neighbor_bits_idx(next).ones() {
            links[j] += 1;
        }
    }
    order
}

fn backtrack(
    a: &Side<'_>,
    b: &Side<'_>,
    order: &[usize],
    depth: usize,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let ga = a.complex.skeleton();
    let gb = b.complex.skeleton();
    let i = order[depth];
    for j in 0..gb.vertices().len() {
        if used[j] || b.colours[j] != a.colours[i] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&k| {
            let jk = image[k].expect("assigned");
            ga.adjacent_idx(i, k) == gb.adjacent_idx(j, jk)
        });
        if !consistent {
            continue;
        }
        image[i] = Some(j);
        used[j] = true;
        if facets_consistent(a, b, i, image) && backtrack(a, b, order, depth + 1, image, used) {
            return true;
        }
        image[i] = None;
        used[j] = false;
    }
    false
}

/// Every facet through vertex `i` whose vertices are all mapped must land on a facet.
fn facets_consistent(a: &Side<'_>, b: &Side<'_>, i: usize, image: &[Option<usize>]) -> bool {
    let ga = a.complex.skeleton();
    let gb = b.complex.skeleton();
    let v = ga.vertices()[i];
    let vf = Face::vertex(v);
    for f in a.complex.facets_containing(&vf) {
        let mapped: Option<Vec<VertexId>> = f
            .vertices()
            .iter()
            .map(|w| image[ga.index_of(*w).expect("vertex")].map(|j| gb.vertices()[j]))
            .collect();
        if let Some(m) = mapped {
            let face = Face::from_vertices(m).expect("injective mapping");
            if !b.facet_set.contains(&face) {
                return false;
            }
        }
    }
    true
}
