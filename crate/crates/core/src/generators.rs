//! Canonical complexes: cross-polytope boundaries, simplex boundaries,
//! cycles and joins of cycles.

use crate::complex::{clique_complex, Complex, Face, Graph, VertexId};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Boundary of the `d`-dimensional cross polytope.
///
/// Vertex `i` and its antipode `i + d` (written `i′`) are the only non-adjacent
/// pairs; facets pick one of `{i, i′}` for every `i` in `1..=d`.
pub fn octahedral_sphere(d: u32) -> Complex {
    let mut facets = Vec::with_capacity(1 << d);
    for mask in 0u64..(1u64 << d) {
        let face = Face::new((1..=d).map(|i| if mask & (1 << (i - 1)) == 0 { i } else { i + d }))
            .expect("distinct labels");
        facets.push(face);
    }
    Complex::from_faces(facets)
}

/// Boundary of the simplex on vertices `1..=n`.
pub fn simplex_boundary(n: u32) -> Result<Complex> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("simplex boundary needs n ≥ 2, got {n}")));
    }
    let all = Face::new(1..=n)?;
    Ok(Complex::from_faces(all.boundary_facets()))
}

/// The `n`-cycle on `1..=n` as a 1-dimensional complex.
pub fn cycle_complex(n: u32) -> Result<Complex> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Ok(cycle_on(1, n))
}

fn cycle_on(first: u32, n: u32) -> Complex {
    Complex::from_faces((0..n).map(|i| Face::edge(VertexId(first + i), VertexId(first + (i + 1) % n))))
}

/// Iterated join of cycles on consecutive label blocks, starting at 1.
///
/// Cycles shorter than 4 break flagness and are rejected unless `allow_short`.
pub fn join_of_cycles(lengths: &[u32], allow_short: bool) -> Result<Complex> {
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("need at least one cycle".into()));
    }
    let mut out = Complex::void();
    let mut next = 1;
    for &n in lengths {
        if n < 3 || (n < 4 && !allow_short) {
            return Err(Error::InvalidArgument(format!("cycle length {n} is too short")));
        }
        out = out.join(&cycle_on(next, n))?;
        next += n;
    }
    Ok(out)
}

/// True iff the non-adjacency relation of the skeleton is a perfect matching
/// and the complex is the clique complex of its skeleton.
pub fn is_octahedral(complex: &Complex) -> bool {
    if complex.is_empty() {
        return false;
    }
    let g = complex.skeleton();
    let n = g.vertices().len();
    if !n.is_multiple_of(2) {
        return false;
    }
    let matched = g.vertices().iter().all(|&v| g.degree(v) + 2 == n);
    matched && complex.is_flag()
}

/// Random complex on vertices `1..=n`: `draws` random faces with between one
/// and `max_dim + 1` vertices, closed under inclusion. Vertices that no draw
/// touches are added as isolated points.
pub fn random_complex(rng: &mut SeededRng, n: u32, max_dim: u32, draws: usize) -> Complex {
    let mut faces: Vec<Face> = (1..=n).map(|i| Face::vertex(VertexId(i))).collect();
    let max_size = (max_dim as usize + 1).min(n as usize);
    for _ in 0..draws {
        let size = 1 + rng.index(max_size);
        let mut pool: Vec<u32> = (1..=n).collect();
        rng.shuffle(&mut pool);
        faces.push(Face::new(pool[..size].iter().copied()).expect("distinct labels"));
    }
    Complex::from_faces(faces)
}

/// Clique complex of an Erdős–Rényi graph on `1..=n` with edge probability `num/den`.
pub fn random_flag_complex(rng: &mut SeededRng, n: u32, num: u64, den: u64) -> Complex {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.chance(num, den) {
                edges.push((VertexId(a), VertexId(b)));
            }
        }
    }
    let g = Graph::new((1..=n).map(VertexId), edges).expect("no loops");
    clique_complex(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedral_face_counts() {
        assert_eq!(octahedral_sphere(1).face_counts(), vec![2]);
        assert_eq!(octahedral_sphere(3).face_counts(), vec![6, 12, 8]);
        assert_eq!(octahedral_sphere(4).face_counts(), vec![8, 24, 32, 16]);
    }

    #[test]
    fn octahedral_is_iterated_join_of_zero_spheres() {
        for d in 1..=5u32 {
            let mut j = Complex::void();
            for i in 1..=d {
                j = j.join(&Complex::from_facets([[i], [i + d]]).unwrap()).unwrap();
            }
            assert_eq!(j, octahedral_sphere(d));
        }
    }

    #[test]
    fn simplex_boundaries() {
        assert_eq!(simplex_boundary(2).unwrap(), Complex::from_facets([[1], [2]]).unwrap());
        assert_eq!(simplex_boundary(3).unwrap(), cycle_complex(3).unwrap());
        assert_eq!(simplex_boundary(4).unwrap().face_counts(), vec![4, 6, 4]);
        assert!(simplex_boundary(1).is_err());
    }

    #[test]
    fn cycles() {
        assert!(cycle_complex(4).unwrap().is_flag());
        assert!(!cycle_complex(3).unwrap().is_flag());
        assert_eq!(cycle_complex(5).unwrap().facets().len(), 5);
        assert!(cycle_complex(2).is_err());
    }

    #[test]
    fn joins_of_cycles() {
        let c44 = join_of_cycles(&[4, 4], false).unwrap();
        assert!(c44.is_isomorphic(&octahedral_sphere(4)).is_some());
        assert_eq!(join_of_cycles(&[5, 5], false).unwrap().face_counts(), vec![10, 35, 50, 25]);
        assert!(join_of_cycles(&[3, 4], false).is_err());
        assert!(join_of_cycles(&[3, 4], true).is_ok());
        assert!(join_of_cycles(&[], false).is_err());
    }

    #[test]
    fn octahedral_recognition() {
        for d in 1..=6 {
            assert!(is_octahedral(&octahedral_sphere(d)));
        }
        assert!(!is_octahedral(&join_of_cycles(&[5, 5], false).unwrap()));
        let oct = octahedral_sphere(3);
        let sub = crate::moves::edge_subdivide(&oct, &Face::new([1, 2]).unwrap(), VertexId(7)).unwrap();
        assert!(!is_octahedral(&sub));
        assert!(!is_octahedral(&simplex_boundary(4).unwrap()));
    }
}
