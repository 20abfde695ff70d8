use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{edge_connectivity, vertex_connectivity, Digraph};
use crate::error::{Error, Result};

/// Default number of candidate subsets a brute-force scan may evaluate
/// (the full subset lattice of an 18-vertex digraph).
pub const DEFAULT_BRUTEFORCE_CAP: usize = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    Atom,
    EAtom,
}

/// Which digraph the atoms belong to: the digraph itself or its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Forward,
    Transpose,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Forward => Side::Transpose,
            Side::Transpose => Side::Forward,
        }
    }
}

/// Every minimum-cardinality atom (or e-atom) of a digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomSet {
    pub kind: AtomKind,
    pub side: Side,
    /// `κ` for atoms, `λ` for e-atoms.
    pub boundary: usize,
    pub members: Vec<Vec<usize>>,
}

impl AtomSet {
    pub fn atom_size(&self) -> usize {
        self.members.first().map_or(0, Vec::len)
    }

    pub fn containing(&self, v: usize) -> Option<&[usize]> {
        self.members
            .iter()
            .find(|m| m.binary_search(&v).is_ok())
            .map(Vec::as_slice)
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.members.iter().flatten().all(|v| seen.insert(*v))
    }

    /// True iff the members partition `0..n`.
    pub fn partitions(&self, n: usize) -> bool {
        self.pairwise_disjoint() && self.members.iter().map(Vec::len).sum::<usize>() == n
    }
}

/// Scans vertex subsets in order of increasing size and collects those of
/// the first size at which `accept` holds. Fails once more than `cap`
/// subsets have been evaluated.
fn layered_scan(
    n: usize,
    max_size: usize,
    cap: usize,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Result<Vec<Vec<usize>>> {
    let mut evaluated = 0usize;
    for size in 1..=max_size {
        let mut found = Vec::new();
        for subset in (0..n).combinations(size) {
            evaluated += 1;
            if evaluated > cap {
                return Err(Error::BruteForceCap { cap });
            }
            if accept(&subset) {
                found.push(subset);
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(Vec::new())
}

/// All minimum-size parts `A` with `|N(A)| = κ`.
///
/// `κ` comes from the flow oracle; the scan also asserts that no part has
/// fewer than `κ` neighbors. Subsets are evaluated smallest first, so the
/// cost depends on the atom size rather than on `2^n`.
pub fn atoms_bruteforce(g: &Digraph, cap: usize) -> Result<AtomSet> {
    let (kappa, _) = vertex_connectivity(g)?;
    if g.is_complete() {
        return Err(Error::CompleteDigraph);
    }
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    let mut mark = vec![usize::MAX; n];
    let mut stamp = 0usize;
    let mut violation = None;
    let members = layered_scan(n, n - 1, cap, |subset| {
        stamp += 1;
        for &v in subset {
            inside[v] = true;
        }
        let mut count = 0;
        for &u in subset {
            for &v in g.out_neighbors(u) {
                if !inside[v] && mark[v] != stamp {
                    mark[v] = stamp;
                    count += 1;
                }
            }
        }
        for &v in subset {
            inside[v] = false;
        }
        let is_part = subset.len() + count < n;
        if is_part && count < kappa {
            violation = Some(subset.to_vec());
        }
        is_part && count == kappa
    })?;
    if let Some(bad) = violation {
        return Err(Error::Inconsistent(format!(
            "part {bad:?} has fewer than κ = {kappa} neighbors"
        )));
    }
    if members.is_empty() {
        return Err(Error::Inconsistent(format!(
            "no part achieves κ = {kappa} in a non-complete digraph"
        )));
    }
    Ok(AtomSet {
        kind: AtomKind::Atom,
        side: Side::Forward,
        boundary: kappa,
        members,
    })
}

/// All minimum-size nonempty proper subsets with exactly `λ` outgoing edges.
pub fn e_atoms_bruteforce(g: &Digraph, cap: usize) -> Result<AtomSet> {
    let (lambda, _) = edge_connectivity(g)?;
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    let mut violation = None;
    let members = layered_scan(n, n.saturating_sub(1), cap, |subset| {
        for &v in subset {
            inside[v] = true;
        }
        let count: usize = subset
            .iter()
            .map(|&u| g.out_neighbors(u).iter().filter(|&&v| !inside[v]).count())
            .sum();
        for &v in subset {
            inside[v] = false;
        }
        if count < lambda {
            violation = Some(subset.to_vec());
        }
        count == lambda
    })?;
    if let Some(bad) = violation {
        return Err(Error::Inconsistent(format!(
            "set {bad:?} has fewer than λ = {lambda} outgoing edges"
        )));
    }
    Ok(AtomSet {
        kind: AtomKind::EAtom,
        side: Side::Forward,
        boundary: lambda,
        members,
    })
}
