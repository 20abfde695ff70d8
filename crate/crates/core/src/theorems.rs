//! Hypothesis checkers for the decomposition theorem and its corollaries.
//!
//! Each checker evaluates the hypotheses in a fixed order, records a witness
//! for every failure, and verifies the conclusion with the flow oracle. A
//! report with `applicable && !consistent` means a conclusion failed even
//! though every hypothesis held.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coset::CosetDigraph;
use crate::digraph::{e_atoms_bruteforce, edge_connectivity, vertex_connectivity};
use crate::error::{Error, Result};
use crate::perm::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "decomposition")]
    Decomposition,
    #[serde(rename = "corollary1")]
    Corollary1,
    #[serde(rename = "corollary1_1")]
    Corollary1_1,
    #[serde(rename = "hierarchical_gen")]
    HierarchicalGen,
    #[serde(rename = "hier1")]
    Hier1,
    #[serde(rename = "hierarchical_cayley")]
    HierarchicalCayley,
    #[serde(rename = "hierarchical_gen_c")]
    HierarchicalGenC,
    #[serde(rename = "edgec")]
    Edgec,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Decomposition,
        TheoremId::Corollary1,
        TheoremId::Corollary1_1,
        TheoremId::HierarchicalGen,
        TheoremId::Hier1,
        TheoremId::HierarchicalCayley,
        TheoremId::HierarchicalGenC,
        TheoremId::Edgec,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Decomposition => "decomposition",
            TheoremId::Corollary1 => "corollary1",
            TheoremId::Corollary1_1 => "corollary1_1",
            TheoremId::HierarchicalGen => "hierarchical_gen",
            TheoremId::Hier1 => "hier1",
            TheoremId::HierarchicalCayley => "hierarchical_cayley",
            TheoremId::HierarchicalGenC => "hierarchical_gen_c",
            TheoremId::Edgec => "edgec",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub description: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn new(description: impl Into<String>, witness: Option<String>) -> Self {
        Self {
            description: description.into(),
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem_id: TheoremId,
    pub hypotheses: Vec<Condition>,
    pub applicable: bool,
    pub implied_bound: Option<usize>,
    pub computed_kappa: Option<usize>,
    pub computed_lambda: Option<usize>,
    /// Conclusions checked against the oracle; empty when not applicable.
    pub conclusions: Vec<Condition>,
    pub consistent: bool,
}

impl HypothesisReport {
    fn finish(
        theorem_id: TheoremId,
        hypotheses: Vec<Condition>,
        implied_bound: Option<usize>,
        computed_kappa: Option<usize>,
        computed_lambda: Option<usize>,
        conclusions: impl FnOnce() -> Vec<Condition>,
    ) -> Self {
        let applicable = hypotheses.iter().all(|h| h.holds);
        let conclusions = if applicable {
            conclusions()
        } else {
            Vec::new()
        };
        let consistent = conclusions.iter().all(|c| c.holds);
        Self {
            theorem_id,
            hypotheses,
            applicable,
            implied_bound: if applicable { implied_bound } else { None },
            computed_kappa,
            computed_lambda,
            conclusions,
            consistent,
        }
    }

    /// Witnesses of the failed hypotheses, in evaluation order.
    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.hypotheses.iter().filter(|h| !h.holds)
    }
}

/// `κ` by the flow oracle (`n − 1` for a complete digraph).
pub fn oracle_kappa(cd: &CosetDigraph) -> Result<usize> {
    Ok(vertex_connectivity(cd.graph())?.0)
}

fn require_connected(cd: &CosetDigraph) -> Result<()> {
    if cd.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn label(cd: &CosetDigraph, i: usize) -> &str {
    &cd.generators()[i].label
}

fn labels(cd: &CosetDigraph, idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| label(cd, i))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Resolves label blocks and checks they partition the deduped connection set.
fn resolve_partition<S: AsRef<str>>(
    cd: &CosetDigraph,
    blocks: &[&[S]],
    allow_empty: bool,
) -> Result<Vec<Vec<usize>>> {
    let resolved: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| cd.resolve_labels(b))
        .collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    for (bi, block) in resolved.iter().enumerate() {
        if block.is_empty() && !allow_empty {
            return Err(Error::NotAPartition(format!("block {} is empty", bi + 1)));
        }
        for &i in block {
            if !seen.insert(i) {
                return Err(Error::NotAPartition(format!(
                    "generator {} appears more than once",
                    label(cd, i)
                )));
            }
        }
    }
    if let Some(missing) = (0..cd.generators().len()).find(|i| !seen.contains(i)) {
        return Err(Error::NotAPartition(format!(
            "generator {} is not covered",
            label(cd, missing)
        )));
    }
    Ok(resolved)
}

/// First pair `r, s` of `block` with `K r K = K s K` but `⟨H,r⟩ ≠ ⟨H,s⟩`.
/// Double cosets are enumerated in full.
fn double_coset_clash(cd: &CosetDigraph, k: &Subgroup, block: &[usize]) -> Option<(usize, usize)> {
    let masks: Vec<Vec<bool>> = block
        .iter()
        .map(|&i| {
            k.double_coset_ordinals(&cd.generators()[i].perm)
                .expect("generators belong to G")
        })
        .collect();
    for a in 0..block.len() {
        for b in a + 1..block.len() {
            if masks[a] == masks[b]
                && cd.subgroup_with(&block[a..=a]) != cd.subgroup_with(&block[b..=b])
            {
                return Some((block[a], block[b]));
            }
        }
    }
    None
}

/// `κ(𝒢) ≥ min(|V(𝒢')|, κ(𝒢') + d_{R₂})` with `𝒢' = 𝒢(⟨H,R₁⟩, H, R₁)`.
pub fn check_decomposition<S: AsRef<str>>(
    cd: &CosetDigraph,
    r1: &[S],
    r2: &[S],
) -> Result<HypothesisReport> {
    require_connected(cd)?;
    let blocks = resolve_partition(cd, &[r1, r2], true)?;
    let (r1, r2) = (&blocks[0], &blocks[1]);
    let g_prime = cd.subgroup_with(r1);

    let inside = r2
        .iter()
        .find(|&&i| g_prime.contains(&cd.generators()[i].perm))
        .map(|&i| label(cd, i).to_string());
    let clash = double_coset_clash(cd, &g_prime, r2)
        .map(|(r, s)| format!("({}, {})", label(cd, r), label(cd, s)));
    let hypotheses = vec![
        Condition::new("G' = ⟨H,R1⟩ contains no member of R2", inside),
        Condition::new("r, s ∈ R2 with G'rG' = G'sG' implies ⟨H,r⟩ = ⟨H,s⟩", clash),
    ];
    let kappa = oracle_kappa(cd)?;
    let bound = if hypotheses.iter().all(|h| h.holds) {
        let sub = cd.restricted_to(r1)?;
        let sub_kappa = oracle_kappa(&sub)?;
        Some(sub.vertex_count().min(sub_kappa + cd.degree_of(r2)))
    } else {
        None
    };
    Ok(HypothesisReport::finish(
        TheoremId::Decomposition,
        hypotheses,
        bound,
        Some(kappa),
        None,
        || {
            let b = bound.expect("applicable");
            vec![Condition::new(
                format!("κ(𝒢) ≥ {b}"),
                (kappa < b).then(|| format!("κ(𝒢) = {kappa}")),
            )]
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerVariant {
    Corollary1,
    Corollary1_1,
}

/// The tower `G_i = ⟨H, S₁, …, S_i⟩` over an ordered partition of `S`.
pub fn check_tower<S: AsRef<str>>(
    cd: &CosetDigraph,
    partition: &[Vec<S>],
    variant: TowerVariant,
) -> Result<HypothesisReport> {
    require_connected(cd)?;
    let refs: Vec<&[S]> = partition.iter().map(Vec::as_slice).collect();
    let blocks = resolve_partition(cd, &refs, false)?;
    let k = blocks.len();
    let mut prefix = Vec::new();
    let mut towers = Vec::with_capacity(k);
    let mut cumulative = Vec::with_capacity(k);
    for block in &blocks {
        prefix.extend_from_slice(block);
        towers.push(cd.subgroup_with(&prefix));
        cumulative.push(cd.degree_of(&prefix));
    }
    let block_degree = |i: usize| cd.degree_of(&blocks[i]);
    let index = |g: &Subgroup| g.order() / cd.subgroup().order();

    let mut hypotheses = Vec::new();
    let repeated = (0..k.saturating_sub(1))
        .find(|&i| towers[i] == towers[i + 1])
        .map(|i| format!("G_{} = G_{}", i + 1, i + 2));
    hypotheses.push(Condition::new("the G_i are distinct", repeated));

    let clash = (0..k.saturating_sub(1)).find_map(|i| {
        double_coset_clash(cd, &towers[i], &blocks[i + 1])
            .map(|(r, s)| format!("({}, {}) in S_{}", label(cd, r), label(cd, s), i + 2))
    });
    hypotheses.push(Condition::new(
        "r, s ∈ S_{i+1} with G_i r G_i = G_i s G_i implies ⟨H,r⟩ = ⟨H,s⟩",
        clash,
    ));

    let first = cd.restricted_to(&blocks[0])?;
    let first_kappa = oracle_kappa(&first)?;
    hypotheses.push(Condition::new(
        "κ(𝒢(G_1,H,S_1)) = d_1",
        (first_kappa != cumulative[0])
            .then(|| format!("κ = {first_kappa}, d_1 = {}", cumulative[0])),
    ));

    match variant {
        TowerVariant::Corollary1 => {
            let short = (0..k.saturating_sub(1))
                .find(|&i| index(&towers[i]) < cumulative[i + 1])
                .map(|i| {
                    format!(
                        "|G_{}/H| = {} < d_{} = {}",
                        i + 1,
                        index(&towers[i]),
                        i + 2,
                        cumulative[i + 1]
                    )
                });
            hypotheses.push(Condition::new("|G_i/H| ≥ d_{i+1}", short));
        }
        TowerVariant::Corollary1_1 => {
            let short = (k >= 2 && index(&towers[0]) < cumulative[1])
                .then(|| format!("|G_1/H| = {} < d_2 = {}", index(&towers[0]), cumulative[1]));
            hypotheses.push(Condition::new("|G_1/H| ≥ d_2", short));
            let steep = (0..k.saturating_sub(1))
                .find(|&i| block_degree(i + 1) > cumulative[i])
                .map(|i| {
                    format!(
                        "d_S_{} = {} > d_{} = {}",
                        i + 2,
                        block_degree(i + 1),
                        i + 1,
                        cumulative[i]
                    )
                });
            hypotheses.push(Condition::new("d_{S_{i+1}} ≤ d_i", steep));
        }
    }

    let d = cd.degree();
    let kappa = oracle_kappa(cd)?;
    let id = match variant {
        TowerVariant::Corollary1 => TheoremId::Corollary1,
        TowerVariant::Corollary1_1 => TheoremId::Corollary1_1,
    };
    Ok(HypothesisReport::finish(
        id,
        hypotheses,
        Some(d),
        Some(kappa),
        None,
        || {
            vec![Condition::new(
                format!("κ(𝒢) = d_S = {d}"),
                (kappa != d).then(|| format!("κ(𝒢) = {kappa}")),
            )]
        },
    ))
}

/// The first position at which the chain `⟨H, s₁, …, s_i⟩` fails to grow.
fn chain_stall(cd: &CosetDigraph, ordering: &[usize]) -> Option<usize> {
    let mut current = cd.subgroup().clone();
    for (i, &s) in ordering.iter().enumerate() {
        let next = cd.subgroup_with(&ordering[..=i]);
        if i > 0 && next == current {
            return Some(s);
        }
        current = next;
    }
    None
}

/// The lexicographically first (in connection-set order) ordering whose
/// prefix subgroups strictly grow, if any.
pub fn hierarchical_order_search(cd: &CosetDigraph) -> Option<Vec<usize>> {
    fn dfs(
        cd: &CosetDigraph,
        current: &Subgroup,
        order: &mut Vec<usize>,
        used: u64,
        dead: &mut BTreeSet<u64>,
    ) -> bool {
        let k = cd.generators().len();
        if order.len() == k {
            return true;
        }
        if dead.contains(&used) {
            return false;
        }
        for s in 0..k {
            if used >> s & 1 == 1 {
                continue;
            }
            let next = current
                .join(std::slice::from_ref(&cd.generators()[s].perm))
                .expect("generator in G");
            if !order.is_empty() && next == *current {
                continue;
            }
            order.push(s);
            if dfs(cd, &next, order, used | 1 << s, dead) {
                return true;
            }
            order.pop();
        }
        dead.insert(used);
        false
    }
    let k = cd.generators().len();
    assert!(k <= 64, "at most 64 generators");
    let mut order = Vec::with_capacity(k);
    let mut dead = BTreeSet::new();
    dfs(cd, cd.subgroup(), &mut order, 0, &mut dead).then_some(order)
}

/// True iff no proper subset of `S` together with `H` generates `G`.
pub fn is_minimal(cd: &CosetDigraph) -> bool {
    let k = cd.generators().len();
    (0..k).all(|skip| {
        let rest: Vec<usize> = (0..k).filter(|&i| i != skip).collect();
        !cd.subgroup_with(&rest).is_whole()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HierarchicalVariant {
    Standard,
    Hier1,
}

fn resolve_ordering<S: AsRef<str>>(cd: &CosetDigraph, ordering: &[S]) -> Result<Vec<usize>> {
    let idx = cd.resolve_labels(ordering)?;
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    if distinct.len() != idx.len() || idx.len() != cd.generators().len() {
        return Err(Error::InvalidOrdering(format!(
            "expected each of {} exactly once",
            cd.labels().join(", ")
        )));
    }
    Ok(idx)
}

/// Hierarchical generators with `d_{s_{i+1}} ≤ d_i` and either
/// `|G_1/H| ≥ d_2` or `Hs₁⁻¹H ≠ Hs₁H`; concludes `κ = d`.
pub fn check_hierarchical_gen<S: AsRef<str>>(
    cd: &CosetDigraph,
    ordering: &[S],
    variant: HierarchicalVariant,
) -> Result<HypothesisReport> {
    require_connected(cd)?;
    let order = resolve_ordering(cd, ordering)?;
    let k = order.len();
    let d_of = |i: usize| cd.generators()[order[i]].d;
    let cumulative: Vec<usize> = (0..k)
        .scan(0, |acc, i| {
            *acc += d_of(i);
            Some(*acc)
        })
        .collect();

    let mut hypotheses = vec![Condition::new(
        "⟨H,s_1,…,s_i⟩ are distinct",
        chain_stall(cd, &order)
            .map(|s| format!("adding {} does not grow the subgroup", label(cd, s))),
    )];
    let steep = (0..k.saturating_sub(1))
        .find(|&i| d_of(i + 1) > cumulative[i])
        .map(|i| {
            format!(
                "d_{} = {} > d_{} = {}",
                label(cd, order[i + 1]),
                d_of(i + 1),
                i + 1,
                cumulative[i]
            )
        });
    hypotheses.push(Condition::new("d_{s_{i+1}} ≤ d_i", steep));

    let s1 = &cd.generators()[order[0]].perm;
    match variant {
        HierarchicalVariant::Standard => {
            let g1 = cd.subgroup_with(&order[..1]).order() / cd.subgroup().order();
            let short = (k >= 2 && g1 < cumulative[1])
                .then(|| format!("|G_1/H| = {g1} < d_2 = {}", cumulative[1]));
            hypotheses.push(Condition::new("|G_1/H| ≥ d_2", short));
        }
        HierarchicalVariant::Hier1 => {
            let h = cd.subgroup();
            let same = h.double_coset(s1) == h.double_coset(&s1.inverse());
            hypotheses.push(Condition::new(
                "Hs_1^{-1}H ≠ Hs_1H",
                same.then(|| label(cd, order[0]).to_string()),
            ));
        }
    }
    let d = cd.degree();
    let kappa = oracle_kappa(cd)?;
    let id = match variant {
        HierarchicalVariant::Standard => TheoremId::HierarchicalGen,
        HierarchicalVariant::Hier1 => TheoremId::Hier1,
    };
    Ok(HypothesisReport::finish(
        id,
        hypotheses,
        Some(d),
        Some(kappa),
        None,
        || {
            vec![Condition::new(
                format!("κ(𝒢) = d(𝒢) = {d}"),
                (kappa != d).then(|| format!("κ(𝒢) = {kappa}")),
            )]
        },
    ))
}

/// A hierarchical Cayley digraph (trivial `H`) has `κ = |S|`.
pub fn verify_hierarchical_cayley(cd: &CosetDigraph) -> Result<HypothesisReport> {
    if !cd.subgroup().is_trivial() {
        return Err(Error::NontrivialSubgroup);
    }
    require_connected(cd)?;
    let order = hierarchical_order_search(cd).ok_or(Error::NotHierarchical)?;
    let hypotheses = vec![
        Condition::new("H = {e}", None),
        Condition::new(
            format!("hierarchical in the order {}", labels(cd, &order)),
            None,
        ),
    ];
    let s = cd.generators().len();
    let kappa = oracle_kappa(cd)?;
    Ok(HypothesisReport::finish(
        TheoremId::HierarchicalCayley,
        hypotheses,
        Some(s),
        Some(kappa),
        None,
        || {
            vec![Condition::new(
                format!("κ(𝒢) = |S| = {s}"),
                (kappa != s).then(|| format!("κ(𝒢) = {kappa}")),
            )]
        },
    ))
}

/// `𝒢(G, {e}, S ∪ S')` with `S' ⊆ S⁻¹` of elements of order at least 3,
/// `S` hierarchical in the given order and `|⟨s₁,s₂⟩| ≠ 4`; concludes
/// `κ = |S ∪ S'|`.
pub fn check_hierarchical_gen_c<S: AsRef<str>>(
    cd: &CosetDigraph,
    s: &[S],
    s_prime: &[S],
) -> Result<HypothesisReport> {
    if !cd.subgroup().is_trivial() {
        return Err(Error::NontrivialSubgroup);
    }
    require_connected(cd)?;
    let blocks = resolve_partition(cd, &[s, s_prime], true)?;
    let (s, s_prime) = (&blocks[0], &blocks[1]);
    if s.is_empty() {
        return Err(Error::NotAPartition("S is empty".into()));
    }
    let perm = |i: usize| &cd.generators()[i].perm;

    let not_inverse = s_prime
        .iter()
        .find(|&&t| !s.iter().any(|&u| *perm(u) == perm(t).inverse()))
        .map(|&t| label(cd, t).to_string());
    let short_order = s_prime
        .iter()
        .find(|&&t| perm(t).order() < 3)
        .map(|&t| format!("{} has order {}", label(cd, t), perm(t).order()));
    let stall =
        chain_stall(cd, s).map(|x| format!("adding {} does not grow the subgroup", label(cd, x)));
    let klein = (s.len() >= 2)
        .then(|| cd.subgroup_with(&s[..2]).order())
        .filter(|&o| o == 4)
        .map(|_| format!("|⟨{}, {}⟩| = 4", label(cd, s[0]), label(cd, s[1])));
    let hypotheses = vec![
        Condition::new("S' ⊆ S^{-1}", not_inverse),
        Condition::new("elements of S' have order at least 3", short_order),
        Condition::new("𝒢(G,{e},S) is hierarchical in the given order", stall),
        Condition::new("|⟨s_1,s_2⟩| ≠ 4", klein),
    ];
    let total = cd.generators().len();
    let kappa = oracle_kappa(cd)?;
    Ok(HypothesisReport::finish(
        TheoremId::HierarchicalGenC,
        hypotheses,
        Some(total),
        Some(kappa),
        None,
        || {
            vec![Condition::new(
                format!("κ(𝒢) = |S ∪ S'| = {total}"),
                (kappa != total).then(|| format!("κ(𝒢) = {kappa}")),
            )]
        },
    ))
}

/// `λ = d` on a connected Cayley coset digraph, with singleton e-atoms.
pub fn verify_edge_connectivity(
    cd: &CosetDigraph,
    bruteforce_cap: usize,
) -> Result<HypothesisReport> {
    require_connected(cd)?;
    let d = cd.degree();
    let (lambda, _) = edge_connectivity(cd.graph())?;
    let e_atoms = e_atoms_bruteforce(cd.graph(), bruteforce_cap)?;
    let hypotheses = vec![Condition::new(
        "𝒢 is a connected Cayley coset digraph",
        None,
    )];
    Ok(HypothesisReport::finish(
        TheoremId::Edgec,
        hypotheses,
        Some(d),
        None,
        Some(lambda),
        || {
            vec![
                Condition::new(
                    format!("λ(𝒢) = d = {d}"),
                    (lambda != d).then(|| format!("λ(𝒢) = {lambda}")),
                ),
                Condition::new(
                    "every e-atom is a singleton",
                    (e_atoms.atom_size() != 1)
                        .then(|| format!("e-atoms have size {}", e_atoms.atom_size())),
                ),
            ]
        },
    ))
}
