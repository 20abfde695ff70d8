//! Finite simple digraphs with strong-connectivity queries, exact flow
//! oracles for vertex and edge connectivity, and brute-force atoms.

mod atoms;
mod flow;

pub use atoms::{
    atoms_bruteforce, e_atoms_bruteforce, AtomKind, AtomSet, Side, DEFAULT_BRUTEFORCE_CAP,
};
pub use flow::{
    edge_connectivity, local_vertex_connectivity, vertex_connectivity,
    vertex_connectivity_transitive, CutCertificate, CutKind,
};

use crate::error::{Error, Result};

/// A digraph without loops or parallel edges. Out-neighbor lists are kept
/// sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborSet {
    pub neighbors: Vec<usize>,
    pub is_part: bool,
}

impl Digraph {
    pub fn from_adjacency(mut out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}->{v} out of range for {n} vertices"
                )));
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("parallel edges out of {u}")));
            }
        }
        Ok(Self { out })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidArgument(format!("vertex {u} out of range")));
            }
            out[u].push(v);
        }
        Self::from_adjacency(out)
    }

    /// Directed cycle `0 → 1 → … → n-1 → 0`.
    pub fn cycle(n: usize) -> Self {
        Self {
            out: (0..n)
                .map(|i| if n > 1 { vec![(i + 1) % n] } else { vec![] })
                .collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            out: (0..n)
                .map(|i| (0..n).filter(|&j| j != i).collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.out.iter().all(|l| l.len() + 1 == n)
    }

    pub fn transpose(&self) -> Self {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (u, v) in self.edges() {
            out[v].push(u);
        }
        // sources are visited in ascending order, so lists are already sorted
        Self { out }
    }

    fn reach(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertex_count() <= 1 {
            return true;
        }
        self.reach(0).iter().all(|&b| b) && self.transpose().reach(0).iter().all(|&b| b)
    }

    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let t = self.transpose();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in self.out[u].iter().chain(&t.out[u]) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&b| b)
    }

    /// Strongly connected components (Kosaraju), each sorted, listed in
    /// order of their smallest vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((u, i)) = stack.last_mut() {
                let u = *u;
                if let Some(&v) = self.out[u].get(*i) {
                    *i += 1;
                    if !seen[v] {
                        seen[v] = true;
                        stack.push((v, 0));
                    }
                } else {
                    order.push(u);
                    stack.pop();
                }
            }
        }
        let t = self.transpose();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in &t.out[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Out-neighbors of `set` outside `set`, and whether `set` is a part
    /// (i.e. `set ∪ N(set)` misses some vertex).
    pub fn neighbor_set(&self, set: &[usize]) -> NeighborSet {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in set {
            inside[v] = true;
        }
        let mut mark = vec![false; n];
        for &u in set {
            for &v in &self.out[u] {
                if !inside[v] {
                    mark[v] = true;
                }
            }
        }
        let neighbors: Vec<usize> = (0..n).filter(|&v| mark[v]).collect();
        let covered = inside.iter().filter(|&&b| b).count() + neighbors.len();
        NeighborSet {
            is_part: covered < n,
            neighbors,
        }
    }

    /// Number of edges leaving `set`.
    pub fn out_edge_count(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.vertex_count()];
        for &v in set {
            inside[v] = true;
        }
        set.iter()
            .map(|&u| self.out[u].iter().filter(|&&v| !inside[v]).count())
            .sum()
    }

    /// Subgraph induced on the complement of `removed`, with vertices
    /// renumbered in ascending order.
    pub fn without_vertices(&self, removed: &[usize]) -> (Self, Vec<usize>) {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in removed {
            gone[v] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let out = kept
            .iter()
            .map(|&u| {
                self.out[u]
                    .iter()
                    .filter(|&&v| !gone[v])
                    .map(|&v| new_id[v])
                    .collect()
            })
            .collect();
        (Self { out }, kept)
    }

    /// True iff `t` is reachable from `s` using edges not in `removed`.
    pub fn reachable_avoiding_edges(&self, s: usize, t: usize, removed: &[(usize, usize)]) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            if u == t {
                return true;
            }
            for &v in &self.out[u] {
                if !seen[v] && !removed.contains(&(u, v)) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}
