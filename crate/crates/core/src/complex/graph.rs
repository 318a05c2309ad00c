use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{Complex, Face, VertexId};
use crate::error::{Error, Result};

/// A simple undirected graph on labelled vertices, with bitset adjacency.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adjacency: Vec<FixedBitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph; repeated edges collapse, loops are rejected and edge
    /// endpoints are added to the vertex set.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
        let mut all: Vec<VertexId> = vertices.into_iter().collect();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Malformed(format!("loop at vertex {a}")));
            }
            all.push(a);
            all.push(b);
        }
        all.sort_unstable();
        all.dedup();
        let mut g = Graph::with_vertices(all);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        Ok(g)
    }

    fn with_vertices(vertices: Vec<VertexId>) -> Graph {
        let n = vertices.len();
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Graph { vertices, index, adjacency: vec![FixedBitSet::with_capacity(n); n] }
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId) {
        let (i, j) = (self.index[&a], self.index[&b]);
        self.adjacency[i].insert(j);
        self.adjacency[j].insert(i);
    }

    pub(crate) fn from_complex(complex: &Complex) -> Graph {
        let mut g = Graph::with_vertices(complex.vertices().to_vec());
        for f in complex.facets() {
            let idx: Vec<usize> = f.vertices().iter().map(|v| g.index[v]).collect();
            for (k, &i) in idx.iter().enumerate() {
                for &j in &idx[k + 1..] {
                    g.adjacency[i].insert(j);
                    g.adjacency[j].insert(i);
                }
            }
        }
        g
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&i), Some(&j)) => self.adjacency[i].contains(j),
            _ => false,
        }
    }

    pub(crate) fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// Neighbour set of `v` as a bitset over vertex indices.
    ///
    /// Panics if `v` is not a vertex.
    pub fn neighbor_bits(&self, v: VertexId) -> &FixedBitSet {
        &self.adjacency[self.index[&v]]
    }

    pub(crate) fn neighbor_bits_idx(&self, i: usize) -> &FixedBitSet {
        &self.adjacency[i]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbor_bits(v).ones().map(move |i| self.vertices[i])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbor_bits(v).count_ones(..)
    }

    /// Edges as ordered pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (i, row) in self.adjacency.iter().enumerate() {
            for j in row.ones().filter(|&j| j > i) {
                out.push((self.vertices[i], self.vertices[j]));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Connected components of the complement graph, each sorted.
    pub fn complement_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(self.vertices[i]);
                for j in 0..n {
                    if j != i && !self.adjacency[i].contains(j) && !seen.contains(j) {
                        seen.insert(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximal cliques, via Bron–Kerbosch with pivoting.
    pub fn maximal_cliques(&self) -> Vec<Face> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, x, &mut out);
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Face>) {
        if p.is_clear() && x.is_clear() {
            out.push(Face::from_sorted({
                let mut v: Vec<VertexId> = r.iter().map(|&i| self.vertices[i]).collect();
                v.sort_unstable();
                v.into_iter().collect()
            }));
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| self.adjacency[u].intersection(&p).count())
            .expect("p or x non-empty");
        let mut candidates = p.clone();
        candidates.difference_with(&self.adjacency[pivot]);
        for v in candidates.ones() {
            let mut np = p.clone();
            np.intersect_with(&self.adjacency[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adjacency[v]);
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }

    /// Number of cliques of each size 0, 1, 2, …; entry 0 counts the empty clique.
    pub fn clique_counts(&self) -> Vec<u64> {
        let n = self.vertices.len();
        let mut counts = vec![1u64];
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        self.count_cliques(&all, 1, &mut counts);
        counts
    }

    fn count_cliques(&self, candidates: &FixedBitSet, size: usize, counts: &mut Vec<u64>) {
        for v in candidates.ones() {
            if counts.len() <= size {
                counts.push(0);
            }
            counts[size] += 1;
            let mut next = candidates.clone();
            next.intersect_with(&self.adjacency[v]);
            next.remove_range(..v + 1);
            if !next.is_clear() {
                self.count_cliques(&next, size + 1, counts);
            }
        }
    }
}

/// The complex whose faces are the cliques of `graph`.
pub fn clique_complex(graph: &Graph) -> Complex {
    Complex::from_antichain(graph.maximal_cliques())
}
