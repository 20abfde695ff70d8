//! Group-theoretic vertex connectivity of Cayley coset digraphs.
//!
//! When the atoms of a Cayley coset digraph are small enough to partition
//! the vertex set, the atom through the base vertex `H` is `⟨H, S₀⟩/H` for
//! the generators `S₀` it contains, and its neighbors are
//! `(⋃A₀)·S₁·H / H` with `S₁ = S ∖ S₀`. The digraph or its transpose always
//! satisfies the size condition, so scanning the subgroups `⟨H, S₀⟩` on both
//! sides yields `κ` without any flow computation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coset::CosetDigraph;
use crate::digraph::{atoms_bruteforce, AtomSet, Side};
use crate::error::{Error, Result};
use crate::perm::Subgroup;

/// Largest connection set the `2^|S|` subset scan accepts.
pub const MAX_SCAN_GENERATORS: usize = 12;

/// The vertex set `⟨H, S₀⟩/H` for a generator subset closed under
/// membership (every generator lying in the subgroup belongs to `S₀`).
#[derive(Clone, Debug)]
pub struct AtomCandidate {
    pub s0: Vec<usize>,
    pub s0_labels: Vec<String>,
    pub subgroup: Subgroup,
    pub vertex_set: Vec<usize>,
    pub is_part: bool,
    pub neighbor_count: usize,
}

#[derive(Clone, Debug)]
pub struct AtomAnalysis {
    pub side: Side,
    pub vertex_count: usize,
    pub degree: usize,
    pub kappa_group: usize,
    pub candidates: Vec<AtomCandidate>,
    /// Indices into `candidates` of the smallest parts achieving `kappa_group`.
    pub winning: Vec<usize>,
    pub size_assumption_ok: bool,
    pub oracle_kappa: Option<usize>,
}

impl AtomAnalysis {
    pub fn winning_candidates(&self) -> impl Iterator<Item = &AtomCandidate> {
        self.winning.iter().map(|&i| &self.candidates[i])
    }

    pub fn atom_size(&self) -> Option<usize> {
        self.winning_candidates().next().map(|c| c.vertex_set.len())
    }
}

/// `κ` computed on both `𝒢` and `𝒢*`.
#[derive(Clone, Debug)]
pub struct GroupKappa {
    pub forward: AtomAnalysis,
    pub transpose: AtomAnalysis,
    pub kappa: usize,
}

impl GroupKappa {
    pub fn side(&self, side: Side) -> &AtomAnalysis {
        match side {
            Side::Forward => &self.forward,
            Side::Transpose => &self.transpose,
        }
    }

    /// Records the flow-oracle value on both sides.
    pub fn set_oracle(&mut self, oracle: usize) {
        self.forward.oracle_kappa = Some(oracle);
        self.transpose.oracle_kappa = Some(oracle);
    }

    pub fn agrees_with_oracle(&self) -> Option<bool> {
        self.forward.oracle_kappa.map(|o| o == self.kappa)
    }
}

/// Every subgroup `⟨H, S₀⟩ ≠ G` with its group-theoretic neighbor count,
/// cross-checked against the digraph.
pub fn subgroup_atom_scan(cd: &CosetDigraph) -> Result<Vec<AtomCandidate>> {
    if !cd.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = cd.generators().len();
    if k > MAX_SCAN_GENERATORS {
        return Err(Error::TooManyGenerators {
            count: k,
            max: MAX_SCAN_GENERATORS,
        });
    }
    let n = cd.vertex_count();
    let group = cd.group();
    let gen_ords: Vec<usize> = cd
        .generators()
        .iter()
        .map(|g| group.ordinal(&g.perm).expect("generator in G"))
        .collect();
    let mut seen: BTreeMap<u32, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let picked: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let subgroup = cd.subgroup_with(&picked);
        if subgroup.is_whole() {
            continue;
        }
        let closed: u32 = (0..k)
            .filter(|&i| subgroup.contains_ordinal(gen_ords[i]))
            .fold(0, |m, i| m | 1 << i);
        if seen.insert(closed, ()).is_some() {
            continue;
        }
        let s0: Vec<usize> = (0..k).filter(|&i| closed >> i & 1 == 1).collect();
        let s1: Vec<usize> = (0..k).filter(|&i| closed >> i & 1 == 0).collect();
        let vertex_set = cd.cosets_inside(&subgroup);
        let neighbors: BTreeSet<usize> = subgroup
            .member_ordinals()
            .iter()
            .flat_map(|&u| s1.iter().map(move |&j| (u, j)))
            .map(|(u, j)| cd.vertex_of_ordinal(group.mul(u, gen_ords[j])))
            .collect();
        let neighbor_count = neighbors.len();
        let is_part = vertex_set.len() + neighbor_count < n;

        let direct = cd.graph().neighbor_set(&vertex_set);
        if direct.neighbors.len() != neighbor_count || direct.is_part != is_part {
            return Err(Error::Inconsistent(format!(
                "subgroup candidate {s0:?}: (⋃A)S₁H/H has {neighbor_count} cosets, digraph has {}",
                direct.neighbors.len()
            )));
        }
        out.push(AtomCandidate {
            s0_labels: s0
                .iter()
                .map(|&i| cd.generators()[i].label.clone())
                .collect(),
            s0,
            subgroup,
            vertex_set,
            is_part,
            neighbor_count,
        });
    }
    Ok(out)
}

fn analyze_side(cd: &CosetDigraph, side: Side) -> Result<AtomAnalysis> {
    let candidates = subgroup_atom_scan(cd)?;
    let degree = cd.degree();
    let kappa_group = candidates
        .iter()
        .filter(|c| c.is_part)
        .map(|c| c.neighbor_count)
        .min()
        .map_or(degree, |m| m.min(degree));
    let best_size = candidates
        .iter()
        .filter(|c| c.is_part && c.neighbor_count == kappa_group)
        .map(|c| c.vertex_set.len())
        .min();
    let winning = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.is_part && c.neighbor_count == kappa_group && Some(c.vertex_set.len()) == best_size
        })
        .map(|(i, _)| i)
        .collect();
    Ok(AtomAnalysis {
        side,
        vertex_count: cd.vertex_count(),
        degree,
        kappa_group,
        candidates,
        winning,
        size_assumption_ok: false,
        oracle_kappa: None,
    })
}

/// `κ = min(d, min |N(⟨H,S₀⟩/H)|)` over part-forming candidates on both
/// `𝒢` and `𝒢*`. A side satisfies the size assumption when it attains `κ`
/// with a candidate of size at most `(n − κ)/2`; at least one side must.
pub fn kappa_group_theoretic(cd: &CosetDigraph) -> Result<GroupKappa> {
    let mut forward = analyze_side(cd, Side::Forward)?;
    let mut transpose = analyze_side(&cd.transpose_spec()?, Side::Transpose)?;
    let kappa = forward.kappa_group.min(transpose.kappa_group);
    let n = cd.vertex_count();
    let complete = cd.graph().is_complete();
    for a in [&mut forward, &mut transpose] {
        a.size_assumption_ok = complete
            || (a.kappa_group == kappa && a.atom_size().is_some_and(|s| 2 * s <= n - kappa));
    }
    if !forward.size_assumption_ok && !transpose.size_assumption_ok {
        return Err(Error::Inconsistent(
            "neither the digraph nor its transpose has a small subgroup atom".into(),
        ));
    }
    Ok(GroupKappa {
        forward,
        transpose,
        kappa,
    })
}

/// Structural checks on brute-force atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomTheoryReport {
    pub side: Side,
    pub kappa: usize,
    pub atom_size: usize,
    pub atom_count: usize,
    pub size_assumption_ok: bool,
    pub partition_ok: bool,
    pub base_atom: Vec<usize>,
    pub s0_labels: Vec<String>,
    pub base_union_is_subgroup: bool,
    pub base_union_is_generated: bool,
    pub induced_edges_use_s0: bool,
    pub atoms_are_translates: bool,
    pub neighbor_count: usize,
    pub neighbor_multiple_ok: bool,
    pub neighbor_lower_bound_ok: bool,
    pub smaller_than_degree_ok: bool,
}

impl AtomTheoryReport {
    pub fn all_ok(&self) -> bool {
        self.size_assumption_ok
            && self.partition_ok
            && self.base_union_is_subgroup
            && self.base_union_is_generated
            && self.induced_edges_use_s0
            && self.atoms_are_translates
            && self.neighbor_multiple_ok
            && self.neighbor_lower_bound_ok
            && self.smaller_than_degree_ok
    }
}

/// Brute-force atoms on a side meeting the size assumption (chosen via the
/// subgroup scan, forward preferred), with the atom-structure facts checked
/// directly on them.
pub fn verify_atom_theory(cd: &CosetDigraph, cap: usize) -> Result<(AtomSet, AtomTheoryReport)> {
    if cd.graph().is_complete() {
        return Err(Error::CompleteDigraph);
    }
    let gk = kappa_group_theoretic(cd)?;
    let side = if gk.forward.size_assumption_ok {
        Side::Forward
    } else {
        Side::Transpose
    };
    let transposed;
    let side_cd = match side {
        Side::Forward => cd,
        Side::Transpose => {
            transposed = cd.transpose_spec()?;
            &transposed
        }
    };
    let mut atoms = atoms_bruteforce(side_cd.graph(), cap)?;
    atoms.side = side;
    Ok((atoms.clone(), check_atoms(side_cd, &atoms)))
}

/// The atom-structure checks on an explicit atom set of `cd`'s digraph.
pub fn check_atoms(cd: &CosetDigraph, atoms: &AtomSet) -> AtomTheoryReport {
    let n = cd.vertex_count();
    let kappa = atoms.boundary;
    let group = cd.group();
    let base = cd.base_vertex();
    let a0: Vec<usize> = atoms
        .containing(base)
        .map(<[usize]>::to_vec)
        .unwrap_or_default();
    let in_a0 = |v: usize| a0.binary_search(&v).is_ok();

    let union: Vec<usize> = (0..group.order())
        .filter(|&x| in_a0(cd.vertex_of_ordinal(x)))
        .collect();
    let base_union_is_subgroup = !union.is_empty()
        && union.iter().all(|&x| {
            union
                .iter()
                .all(|&y| in_a0(cd.vertex_of_ordinal(group.mul(x, y))))
        });

    let k = cd.generators().len();
    let s0: Vec<usize> = (0..k)
        .filter(|&i| in_a0(cd.vertex_of(&cd.generators()[i].perm).expect("in G")))
        .collect();
    let s1: Vec<usize> = (0..k).filter(|i| !s0.contains(i)).collect();
    let generated = cd.subgroup_with(&s0);
    let base_union_is_generated = cd.cosets_inside(&generated) == a0;

    let induced_edges_use_s0 = cd
        .labeled_edges()
        .filter(|&(u, v, _)| in_a0(u) && in_a0(v))
        .all(|(_, _, j)| s0.contains(&j));

    let a0_set: BTreeSet<usize> = a0.iter().copied().collect();
    let atoms_are_translates = atoms.members.iter().all(|b| {
        let g = &cd.vertices()[b[0]];
        cd.translation(g).is_ok_and(|phi| {
            let image: BTreeSet<usize> = a0_set.iter().map(|&v| phi[v]).collect();
            image.iter().copied().eq(b.iter().copied())
        })
    });

    let neighbor_count = cd.graph().neighbor_set(&a0).neighbors.len();
    let size = a0.len();
    let d = cd.degree();
    AtomTheoryReport {
        side: atoms.side,
        kappa,
        atom_size: atoms.atom_size(),
        atom_count: atoms.members.len(),
        size_assumption_ok: 2 * atoms.atom_size() <= n - kappa,
        partition_ok: atoms.partitions(n),
        s0_labels: s0
            .iter()
            .map(|&i| cd.generators()[i].label.clone())
            .collect(),
        base_atom: a0,
        base_union_is_subgroup,
        base_union_is_generated,
        induced_edges_use_s0,
        atoms_are_translates,
        neighbor_count,
        neighbor_multiple_ok: size > 0 && neighbor_count.is_multiple_of(size),
        neighbor_lower_bound_ok: neighbor_count >= size.max(cd.degree_of(&s1)),
        smaller_than_degree_ok: d <= 1 || size < d,
    }
}
