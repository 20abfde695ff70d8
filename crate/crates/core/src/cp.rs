//! Cycle-prefix digraphs `CP(n, k) = 𝒢(S_n, H_k, {γ(2), …, γ(n−k+1)})`.
//!
//! `γ(j)` has one-line form `j 1 2 … (j−1) (j+1) … n`, and `H_k` is the
//! pointwise stabilizer of `1, …, n−k`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::coset::{CosetDigraph, CosetDigraphSpec, Generator};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Subgroup, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpParams {
    pub n: usize,
    pub k: usize,
}

impl CpParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 1 || k > n - 1 {
            return Err(Error::CpParams { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn vertex_count(&self) -> usize {
        factorial(self.n) / factorial(self.k)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `γ(j)` on `n` points.
pub fn gamma(j: usize, n: usize) -> Result<Permutation> {
    if j < 2 || j > n {
        return Err(Error::InvalidArgument(format!(
            "γ({j}) needs 2 ≤ j ≤ n = {n}"
        )));
    }
    let mut images = Vec::with_capacity(n);
    images.push(j);
    images.extend(1..j);
    images.extend(j + 1..=n);
    Permutation::from_images(&images)
}

pub fn gamma_label(j: usize) -> String {
    format!("γ({j})")
}

fn transposition(a: usize, b: usize, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.swap(a - 1, b - 1);
    Permutation::from_images(&images).expect("transposition")
}

pub fn cp_spec(p: CpParams) -> CosetDigraphSpec {
    let n = p.n;
    let mut long_cycle: Vec<usize> = (2..=n).collect();
    long_cycle.push(1);
    CosetDigraphSpec {
        degree: n,
        group_generators: vec![
            transposition(1, 2, n),
            Permutation::from_images(&long_cycle).expect("n-cycle"),
        ],
        subgroup_generators: (n - p.k + 1..n)
            .map(|i| transposition(i, i + 1, n))
            .collect(),
        connection_set: (2..=n - p.k + 1)
            .map(|j| Generator::new(gamma_label(j), gamma(j, n).expect("2 ≤ j ≤ n")))
            .collect(),
    }
}

pub fn cp_build(p: CpParams) -> Result<CosetDigraph> {
    cp_build_with_cap(p, DEFAULT_ENUMERATION_CAP)
}

pub fn cp_build_with_cap(p: CpParams, cap: usize) -> Result<CosetDigraph> {
    let cd = CosetDigraph::build_with_cap(cp_spec(p), cap)?;
    let fixes_prefix = cd
        .subgroup()
        .elements()
        .all(|h| (1..=p.n - p.k).all(|i| h.apply(i) == i));
    if !fixes_prefix || cd.subgroup().order() != factorial(p.k) {
        return Err(Error::Inconsistent(format!(
            "H_{} does not match the pointwise stabilizer of 1..{}",
            p.k,
            p.n - p.k
        )));
    }
    Ok(cd)
}

/// `d_{γ(i)} = 1` for `2 ≤ i ≤ n−k` and `d_{γ(n−k+1)} = k`.
pub fn cp_degree_profile(p: CpParams) -> Vec<(String, usize)> {
    (2..=p.n - p.k + 1)
        .map(|j| (gamma_label(j), if j == p.n - p.k + 1 { p.k } else { 1 }))
        .collect()
}

/// Indices of `γ(2), …, γ(n−k)` in a built `CP(n, k)`.
fn prefix_indices(p: CpParams) -> Vec<usize> {
    (0..p.n - p.k - 1).collect()
}

/// `G' = ⟨H_k, γ(2), …, γ(n−k)⟩`.
pub fn prefix_subgroup(cd: &CosetDigraph, p: CpParams) -> Subgroup {
    cd.subgroup_with(&prefix_indices(p))
}

/// Checks `|F·γ(n−k+1)·H / H| = |F/H| · k` by enumeration, for a subgroup
/// `H_k ≤ F ≤ G'`.
pub fn verify_neighbor_multiplier(cd: &CosetDigraph, p: CpParams, f: &Subgroup) -> Result<bool> {
    let g_prime = prefix_subgroup(cd, p);
    if !cd.subgroup().is_subgroup_of(f) || !f.is_subgroup_of(&g_prime) {
        return Err(Error::InvalidArgument("F must satisfy H_k ≤ F ≤ G'".into()));
    }
    let last = gamma(p.n - p.k + 1, p.n)?;
    let group = cd.group();
    let s = group.require(&last)?;
    let targets: std::collections::BTreeSet<usize> = f
        .member_ordinals()
        .iter()
        .map(|&x| cd.vertex_of_ordinal(group.mul(x, s)))
        .collect();
    let f_cosets = f.order() / cd.subgroup().order();
    Ok(targets.len() == f_cosets * p.k)
}

/// Structural facts about the prefix subdigraph `𝒢'` of `CP(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixReport {
    pub normalizer_ok: bool,
    pub prefix_cosets: usize,
    pub isomorphic_to_cp_n_minus_k_1: bool,
}

/// Vertex bijection `a → b` found by following generator labels from the
/// base vertices, verified to preserve labeled edges. Requires every
/// generator of both digraphs to have `d_s = 1` and identical label lists.
pub fn labeled_bfs_isomorphism(a: &CosetDigraph, b: &CosetDigraph) -> Option<Vec<usize>> {
    if a.labels() != b.labels()
        || a.vertex_count() != b.vertex_count()
        || a.generators()
            .iter()
            .chain(b.generators())
            .any(|g| g.d != 1)
    {
        return None;
    }
    let n = a.vertex_count();
    let k = a.generators().len();
    // successor tables: succ[v][j] is the unique j-labeled out-neighbor
    let succ = |cd: &CosetDigraph| -> Vec<Vec<usize>> {
        let mut t = vec![vec![usize::MAX; k]; n];
        for (u, v, j) in cd.labeled_edges() {
            t[u][j] = v;
        }
        t
    };
    let (sa, sb) = (succ(a), succ(b));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.base_vertex()] = b.base_vertex();
    used[b.base_vertex()] = true;
    let mut queue = VecDeque::from([a.base_vertex()]);
    while let Some(u) = queue.pop_front() {
        for j in 0..k {
            let (v, w) = (sa[u][j], sb[map[u]][j]);
            if map[v] == usize::MAX {
                if used[w] {
                    return None;
                }
                map[v] = w;
                used[w] = true;
                queue.push_back(v);
            } else if map[v] != w {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    let preserved = a
        .labeled_edges()
        .all(|(u, v, j)| b.edge_label(map[u], map[v]) == Some(j));
    (preserved && a.graph().edge_count() == b.graph().edge_count()).then_some(map)
}

/// Checks, for `1 < k < n−1`: every `γ(j)` with `j ≤ n−k` normalizes `H_k`;
/// `|G'/H_k| = (n−k)!`; and `𝒢(G', H_k, {γ(2), …, γ(n−k)})` is isomorphic
/// to `CP(n−k, 1)` by a label-preserving map.
pub fn verify_prefix_structure(p: CpParams) -> Result<PrefixReport> {
    if !(1 < p.k && p.k < p.n - 1) {
        return Err(Error::CpParams { n: p.n, k: p.k });
    }
    let cd = cp_build(p)?;
    let normalizer_ok = (2..=p.n - p.k)
        .map(|j| gamma(j, p.n))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|g| cd.subgroup().is_normalized_by(g));
    let prefix = cd.restricted_to(&prefix_indices(p))?;
    let prefix_cosets = prefix.vertex_count();
    let small = cp_build(CpParams::new(p.n - p.k, 1)?)?;
    let isomorphic = labeled_bfs_isomorphism(&prefix, &small).is_some();
    let report = PrefixReport {
        normalizer_ok,
        prefix_cosets,
        isomorphic_to_cp_n_minus_k_1: isomorphic,
    };
    if !normalizer_ok || prefix_cosets != factorial(p.n - p.k) || !isomorphic {
        return Err(Error::Inconsistent(format!(
            "prefix structure of CP({}, {}) fails: {report:?}",
            p.n, p.k
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vertex_connectivity;

    #[test]
    fn gamma_one_line_forms() {
        assert_eq!(gamma(2, 4).unwrap().to_cycle_string(), "(1 2)");
        assert_eq!(gamma(3, 4).unwrap().images(), vec![3, 1, 2, 4]);
        for n in 2..8 {
            let mut expect = vec![n];
            expect.extend(1..n);
            assert_eq!(gamma(n, n).unwrap().images(), expect);
        }
        assert!(gamma(1, 4).is_err());
        assert!(gamma(5, 4).is_err());
    }

    #[test]
    fn params_are_validated() {
        assert!(CpParams::new(1, 1).is_err());
        assert!(CpParams::new(4, 0).is_err());
        assert!(CpParams::new(4, 4).is_err());
        assert_eq!(CpParams::new(4, 2).unwrap().vertex_count(), 12);
    }

    #[test]
    fn cp_4_2_shape() {
        let p = CpParams::new(4, 2).unwrap();
        let cd = cp_build(p).unwrap();
        assert_eq!(cd.vertex_count(), 12);
        assert_eq!(cd.degree(), 3);
        assert_eq!(cd.degrees(), cp_degree_profile(p));
        assert_eq!(
            cp_degree_profile(p),
            vec![("γ(2)".to_string(), 1), ("γ(3)".to_string(), 2)]
        );
        assert_eq!(cd.labels().len(), 2);
    }

    #[test]
    fn profile_formula_examples() {
        assert_eq!(
            cp_degree_profile(CpParams::new(5, 3).unwrap()),
            vec![("γ(2)".to_string(), 1), ("γ(3)".to_string(), 3)]
        );
        assert!(cp_degree_profile(CpParams::new(5, 1).unwrap())
            .iter()
            .all(|(_, d)| *d == 1));
    }

    #[test]
    fn cp_n_n_minus_1_is_complete() {
        for n in 2..6 {
            let cd = cp_build(CpParams::new(n, n - 1).unwrap()).unwrap();
            assert_eq!(cd.vertex_count(), n);
            assert!(cd.graph().is_complete());
        }
    }

    #[test]
    fn cp_n_1_is_a_cayley_digraph() {
        let cd = cp_build(CpParams::new(4, 1).unwrap()).unwrap();
        assert!(cd.subgroup().is_trivial());
        assert_eq!(cd.vertex_count(), 24);
    }

    #[test]
    fn last_generator_with_h_generates_sn() {
        // k = 1 gives H trivial and a cyclic ⟨γ(n)⟩
        for n in 3..7 {
            for k in 2..n {
                let p = CpParams::new(n, k).unwrap();
                let cd = cp_build(p).unwrap();
                let last = cd.labels().len() - 1;
                assert!(cd.subgroup_with(&[last]).is_whole(), "CP({n},{k})");
            }
        }
    }

    #[test]
    fn neighbor_multiplier() {
        let p = CpParams::new(4, 2).unwrap();
        let cd = cp_build(p).unwrap();
        assert!(verify_neighbor_multiplier(&cd, p, cd.subgroup()).unwrap());
        let f = cd.subgroup_with(&[0]);
        assert_eq!(f.order() / cd.subgroup().order(), 2);
        assert!(verify_neighbor_multiplier(&cd, p, &f).unwrap());

        let p = CpParams::new(5, 2).unwrap();
        let cd = cp_build(p).unwrap();
        let g_prime = prefix_subgroup(&cd, p);
        assert_eq!(g_prime.order() / cd.subgroup().order(), 6);
        assert!(verify_neighbor_multiplier(&cd, p, &g_prime).unwrap());

        let whole = Subgroup::whole(cd.group());
        assert!(verify_neighbor_multiplier(&cd, p, &whole).is_err());
    }

    #[test]
    fn prefix_structure() {
        let r = verify_prefix_structure(CpParams::new(5, 2).unwrap()).unwrap();
        assert_eq!(r.prefix_cosets, 6);
        let r = verify_prefix_structure(CpParams::new(4, 2).unwrap()).unwrap();
        assert_eq!(r.prefix_cosets, 2);
        for n in 4..=6 {
            for k in 2..n - 1 {
                assert!(verify_prefix_structure(CpParams::new(n, k).unwrap()).is_ok());
            }
        }
        assert!(verify_prefix_structure(CpParams::new(5, 1).unwrap()).is_err());
    }

    #[test]
    fn small_cp_connectivity() {
        let cd = cp_build(CpParams::new(4, 2).unwrap()).unwrap();
        assert_eq!(vertex_connectivity(cd.graph()).unwrap().0, 3);
    }
}
