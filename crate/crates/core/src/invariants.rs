//! Face-number invariants of spheres: f-, h- and γ-vectors, the closed forms
//! for g₂, γ₁, γ₂, Turán clique counts and the upper-bound comparisons.

use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::generators::cycle_complex;

/// `f₋₁ = 1, f₀, …, f_{d−1}`, where `d − 1` is the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    entries: Vec<u64>,
}

impl FVector {
    /// Builds from `f₋₁, f₀, …`; the first entry must be 1.
    pub fn new(entries: Vec<u64>) -> Result<FVector> {
        if entries.first() != Some(&1) {
            return Err(Error::InvalidArgument("f-vector must start with f₋₁ = 1".into()));
        }
        Ok(FVector { entries })
    }

    /// `d`, one more than the dimension.
    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    /// `f_i` for `i ≥ −1`; zero beyond the top dimension.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1).ok().and_then(|k| self.entries.get(k)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

/// Face numbers by enumeration. The empty complex has no faces at all and is
/// reported like the void complex, as `(1)`.
pub fn f_vector(complex: &Complex) -> FVector {
    FVector { entries: std::iter::once(1).chain(complex.face_counts()).collect() }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc as i64
}

/// `h_k = Σ_{j≤k} (−1)^{k−j} C(d−j, k−j) f_{j−1}` for `k = 0..=d`.
pub fn h_vector(f: &FVector) -> Vec<i64> {
    let d = f.d() as i64;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - j, k - j) * f.get(j as isize - 1) as i64
                })
                .sum()
        })
        .collect()
}

/// The γ-vector of a symmetric h-vector, by top-down elimination against the
/// basis `t^i (1+t)^{d−2i}`.
pub fn gamma_vector(h: &[i64]) -> Result<Vec<i64>> {
    let n = h.len();
    if n == 0 || (0..n).any(|i| h[i] != h[n - 1 - i]) {
        return Err(Error::NotASphere(h.to_vec()));
    }
    let d = (n - 1) as i64;
    let mut gamma: Vec<i64> = Vec::with_capacity(n / 2 + 1);
    for i in 0..=d / 2 {
        let earlier: i64 = gamma.iter().enumerate().map(|(j, &g)| g * binomial(d - 2 * j as i64, i - j as i64)).sum();
        gamma.push(h[i as usize] - earlier);
    }
    Ok(gamma)
}

/// g₂, γ₁ and γ₂ from the closed formulas in `f₀`, `f₁` and `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForms {
    pub g2: i64,
    pub gamma1: i64,
    pub gamma2: i64,
}

/// Requires a non-empty pure complex; `d` is its dimension plus one.
pub fn closed_form_invariants(complex: &Complex) -> Result<ClosedForms> {
    let dim = complex.dim().ok_or(Error::NotPure)?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let d = dim as i64 + 1;
    let counts = complex.face_counts();
    let f0 = counts.first().copied().unwrap_or(0) as i64;
    let f1 = counts.get(1).copied().unwrap_or(0) as i64;
    Ok(closed_forms_from_counts(d, f0, f1))
}

pub fn closed_forms_from_counts(d: i64, f0: i64, f1: i64) -> ClosedForms {
    ClosedForms {
        g2: f1 - d * f0 + binomial(d + 1, 2),
        gamma1: f0 - 2 * d,
        gamma2: f1 - (2 * d - 3) * f0 + 2 * d * (d - 2),
    }
}

/// Everything the `invariants` command reports about a sphere candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub f: FVector,
    pub h: Vec<i64>,
    pub gamma: Vec<i64>,
    pub g2: i64,
    pub gamma1: i64,
    pub gamma2: i64,
    pub sphere_dim: isize,
}

pub fn gamma_report(complex: &Complex) -> Result<GammaReport> {
    let closed = closed_form_invariants(complex)?;
    let f = f_vector(complex);
    let h = h_vector(&f);
    let gamma = gamma_vector(&h)?;
    Ok(GammaReport {
        sphere_dim: f.d() as isize - 1,
        f,
        h,
        gamma,
        g2: closed.g2,
        gamma1: closed.gamma1,
        gamma2: closed.gamma2,
    })
}

/// Sizes of the `r` parts of the Turán graph `T(r, n)`.
pub fn turan_parts(r: u64, n: u64) -> Vec<u64> {
    if r == 0 {
        return Vec::new();
    }
    (0..r).map(|k| n / r + u64::from(k < n % r)).collect()
}

/// Number of `i`-cliques of `T(r, n)`: the elementary symmetric polynomial
/// `e_i` of the part sizes. Zero for `i > r`.
pub fn turan_count(r: u64, n: u64, i: u64) -> u64 {
    if i > r {
        return 0;
    }
    let mut e = vec![0u64; i as usize + 1];
    e[0] = 1;
    for p in turan_parts(r, n) {
        for k in (1..e.len()).rev() {
            e[k] += e[k - 1] * p;
        }
    }
    e[i as usize]
}

/// One row of the upper-bound comparison `γ_i ≤ f_{i−1}(⌊d/2⌋, n − 2d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub i: usize,
    pub gamma: i64,
    pub bound: i64,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub d: usize,
    pub n: usize,
    pub entries: Vec<BoundEntry>,
    /// Cycle lengths when the complex is a join of `d/2` cycles.
    pub cycle_lengths: Option<Vec<usize>>,
    /// Join of `d/2` cycles whose lengths differ by at most one.
    pub balanced_join: bool,
    /// Even `d ≥ 4`; otherwise equality analysis is not meaningful.
    pub in_scope: bool,
}

impl BoundsReport {
    pub fn violated(&self) -> bool {
        self.entries.iter().any(|e| e.gamma > e.bound)
    }

    pub fn any_equality(&self) -> bool {
        self.entries.iter().any(|e| e.equality)
    }

    /// In scope and the equality pattern disagrees with the structure test.
    pub fn equality_mismatch(&self) -> bool {
        self.in_scope && self.any_equality() != self.balanced_join
    }
}

pub fn conjecture_bounds(complex: &Complex) -> Result<BoundsReport> {
    let report = gamma_report(complex)?;
    let d = report.f.d();
    let n = complex.num_vertices();
    let half = (d / 2) as u64;
    let excess = n.saturating_sub(2 * d) as u64;
    let entries = (2..=d / 2)
        .map(|i| {
            let gamma = report.gamma[i];
            let bound = turan_count(half, excess, i as u64) as i64;
            BoundEntry { i, gamma, bound, equality: gamma == bound }
        })
        .collect();
    let cycle_lengths = join_cycle_lengths(complex).filter(|l| l.len() == d / 2 && 2 * l.len() == d);
    let balanced_join = cycle_lengths
        .as_ref()
        .is_some_and(|l| l.iter().max().unwrap_or(&0) - l.iter().min().unwrap_or(&0) <= 1);
    Ok(BoundsReport { d, n, entries, cycle_lengths, balanced_join, in_scope: d >= 4 && d % 2 == 0 })
}

/// If the complex is a join of cycles (each of length ≥ 4), their lengths in
/// ascending order.
///
/// The skeleton of a join is the graph join, so the factors show up as
/// components of the complement graph: a cycle of length ≥ 5 has connected
/// complement, while a 4-cycle splits into two 0-spheres.
pub fn join_cycle_lengths(complex: &Complex) -> Option<Vec<usize>> {
    if complex.is_empty() || complex.is_void() || !complex.is_flag() {
        return None;
    }
    let mut lengths = Vec::new();
    let mut zero_spheres = 0;
    for comp in complex.skeleton().complement_components() {
        let sub = complex.induced(comp.iter().copied());
        match comp.len() {
            2 if sub.facets().len() == 2 => zero_spheres += 1,
            m if m >= 5 => {
                let cycle = cycle_complex(m as u32).ok()?;
                sub.is_isomorphic(&cycle)?;
                lengths.push(m);
            }
            _ => return None,
        }
    }
    if zero_spheres % 2 != 0 {
        return None;
    }
    lengths.extend(std::iter::repeat_n(4, zero_spheres / 2));
    lengths.sort_unstable();
    Some(lengths)
}

/// γ₁ of a link `lk(F)` viewed as a sphere of dimension `dim − |F|`, where
/// `dim` is the dimension of the ambient sphere.
pub fn link_gamma1(complex: &Complex, face: &Face) -> Result<i64> {
    let d = complex.dim().ok_or(Error::NotPure)? + 1 - face.len() as isize;
    let link = complex.link(face)?;
    Ok(link.num_vertices() as i64 - 2 * d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Graph, VertexId};
    use crate::generators::{join_of_cycles, octahedral_sphere, simplex_boundary};
    use crate::moves::contract_edge;

    fn h_of(c: &Complex) -> Vec<i64> {
        h_vector(&f_vector(c))
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(&octahedral_sphere(3)).entries(), &[1, 6, 12, 8]);
        assert_eq!(f_vector(&join_of_cycles(&[5, 5], false).unwrap()).entries(), &[1, 10, 35, 50, 25]);
        assert_eq!(f_vector(&simplex_boundary(4).unwrap()).entries(), &[1, 4, 6, 4]);
        assert_eq!(f_vector(&octahedral_sphere(3)).get(-1), 1);
        assert_eq!(f_vector(&octahedral_sphere(3)).get(7), 0);
        assert!(FVector::new(vec![2, 3]).is_err());
    }

    #[test]
    fn h_vectors() {
        let oct = h_of(&octahedral_sphere(3));
        assert_eq!(oct, vec![1, 3, 3, 1]);
        assert_eq!(oct.iter().sum::<i64>(), 8);
        assert_eq!(h_of(&join_of_cycles(&[5, 5], false).unwrap()), vec![1, 6, 11, 6, 1]);
        for n in 2..8 {
            assert!(h_of(&simplex_boundary(n).unwrap()).iter().all(|&x| x == 1));
        }
    }

    /// Expands `Σ γ_i t^i (1+t)^{d−2i}` back into h.
    fn expand(gamma: &[i64], d: usize) -> Vec<i64> {
        let mut h = vec![0i64; d + 1];
        for (i, &g) in gamma.iter().enumerate() {
            for k in 0..=d - 2 * i {
                h[i + k] += g * binomial((d - 2 * i) as i64, k as i64);
            }
        }
        h
    }

    #[test]
    fn gamma_vectors() {
        assert_eq!(gamma_vector(&[1, 3, 3, 1]).unwrap(), vec![1, 0]);
        assert_eq!(gamma_vector(&[1, 6, 11, 6, 1]).unwrap(), vec![1, 2, 1]);
        assert_eq!(gamma_vector(&[1, 1, 1, 1]).unwrap(), vec![1, -2]);
        assert!(matches!(gamma_vector(&[1, 2, 1, 1]), Err(Error::NotASphere(_))));
        for h in [vec![1, 4, 1], vec![1, 7, 20, 7, 1], vec![1, 9, 9, 1], vec![1]] {
            let g = gamma_vector(&h).unwrap();
            assert_eq!(expand(&g, h.len() - 1), h);
        }
    }

    #[test]
    fn closed_forms() {
        let c = closed_form_invariants(&octahedral_sphere(3)).unwrap();
        assert_eq!(c, ClosedForms { g2: 0, gamma1: 0, gamma2: 0 });
        let c = closed_form_invariants(&octahedral_sphere(4)).unwrap();
        assert_eq!((c.gamma1, c.gamma2), (0, 0));
        let c55 = join_of_cycles(&[5, 5], false).unwrap();
        assert_eq!(closed_form_invariants(&c55).unwrap().gamma2, 1);
        let mixed = Complex::from_facets(vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(closed_form_invariants(&mixed), Err(Error::NotPure));
        assert_eq!(closed_form_invariants(&Complex::empty()), Err(Error::NotPure));
    }

    #[test]
    fn closed_forms_agree_with_elimination() {
        let spheres = [
            octahedral_sphere(2),
            octahedral_sphere(4),
            octahedral_sphere(5),
            join_of_cycles(&[5, 7], false).unwrap(),
            join_of_cycles(&[4, 5, 6], false).unwrap(),
            simplex_boundary(6).unwrap(),
        ];
        for s in &spheres {
            let r = gamma_report(s).unwrap();
            assert_eq!(r.gamma[1], r.gamma1);
            if r.gamma.len() > 2 {
                assert_eq!(r.gamma[2], r.gamma2);
            }
        }
    }

    #[test]
    fn g2_vanishes_on_two_spheres() {
        for s in [octahedral_sphere(3), simplex_boundary(4).unwrap(), join_of_cycles(&[7], false).unwrap().join(&Complex::from_facets([[20], [21]]).unwrap()).unwrap()] {
            assert_eq!(closed_form_invariants(&s).unwrap().g2, 0);
        }
    }

    /// Counts `i`-cliques of the complete multipartite graph by brute force.
    fn turan_brute(r: u64, n: u64, i: u64) -> u64 {
        let parts = turan_parts(r, n);
        let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(k, &p)| std::iter::repeat_n(k, p as usize)).collect();
        let mut edges = Vec::new();
        for a in 0..part_of.len() {
            for b in a + 1..part_of.len() {
                if part_of[a] != part_of[b] {
                    edges.push((VertexId(a as u32), VertexId(b as u32)));
                }
            }
        }
        let g = Graph::new((0..n as u32).map(VertexId), edges).unwrap();
        g.clique_counts().get(i as usize).copied().unwrap_or(0)
    }

    #[test]
    fn turan_counts() {
        assert_eq!(turan_count(2, 5, 2), 6);
        assert_eq!(turan_count(3, 7, 2), 16);
        assert_eq!(turan_count(3, 7, 3), 12);
        assert_eq!(turan_count(2, 2, 2), 1);
        assert_eq!(turan_count(2, 0, 2), 0);
        assert_eq!(turan_count(2, 9, 3), 0);
        for r in 1..=4 {
            for n in r..=10 {
                for i in 1..=r {
                    assert_eq!(turan_count(r, n, i), turan_brute(r, n, i), "T({r},{n}) i={i}");
                }
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let c55 = conjecture_bounds(&join_of_cycles(&[5, 5], false).unwrap()).unwrap();
        assert_eq!(c55.entries, vec![BoundEntry { i: 2, gamma: 1, bound: 1, equality: true }]);
        assert!(c55.balanced_join && c55.in_scope && !c55.equality_mismatch());

        let c64 = conjecture_bounds(&join_of_cycles(&[6, 4], false).unwrap()).unwrap();
        assert_eq!(c64.entries, vec![BoundEntry { i: 2, gamma: 0, bound: 1, equality: false }]);
        assert_eq!(c64.cycle_lengths, Some(vec![4, 6]));
        assert!(!c64.balanced_join && !c64.equality_mismatch());

        let oct = conjecture_bounds(&octahedral_sphere(4)).unwrap();
        assert_eq!(oct.entries, vec![BoundEntry { i: 2, gamma: 0, bound: 0, equality: true }]);
        assert_eq!(oct.cycle_lengths, Some(vec![4, 4]));
        assert!(oct.balanced_join);

        let odd = conjecture_bounds(&octahedral_sphere(5)).unwrap();
        assert!(!odd.in_scope && odd.cycle_lengths.is_none());
    }

    #[test]
    fn join_detection() {
        assert_eq!(join_cycle_lengths(&join_of_cycles(&[5, 4, 7], false).unwrap()), Some(vec![4, 5, 7]));
        assert_eq!(join_cycle_lengths(&octahedral_sphere(6)), Some(vec![4, 4, 4]));
        assert_eq!(join_cycle_lengths(&octahedral_sphere(3)), None);
        assert_eq!(join_cycle_lengths(&simplex_boundary(4).unwrap()), None);
        let sub = crate::moves::edge_subdivide(&octahedral_sphere(4), &Face::new([1, 2]).unwrap(), VertexId(9)).unwrap();
        assert_eq!(join_cycle_lengths(&sub), Some(vec![4, 5]));
        let star = crate::moves::stellar_subdivide(&octahedral_sphere(4), &Face::new([1, 2, 3]).unwrap(), VertexId(9)).unwrap();
        assert_eq!(join_cycle_lengths(&star), None);
    }

    #[test]
    fn contraction_identity_on_c5_join_c5() {
        let k = join_of_cycles(&[5, 5], false).unwrap();
        let edge = Face::new([1, 2]).unwrap();
        let after = contract_edge(&k, VertexId(1), VertexId(2), VertexId(11)).unwrap();
        assert!(after.is_isomorphic(&join_of_cycles(&[4, 5], false).unwrap()).is_some());
        let before = closed_form_invariants(&k).unwrap().gamma2;
        let rest = closed_form_invariants(&after).unwrap().gamma2;
        assert_eq!((before, rest, link_gamma1(&k, &edge).unwrap()), (1, 0, 1));
    }
}
