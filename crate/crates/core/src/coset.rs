//! Cayley coset digraphs `𝒢(G, H, S)`.
//!
//! Vertices are the left cosets `gH`, identified by their lexicographically
//! minimal element and ordered by it, so the coset `H` itself is always
//! vertex 0. There is an edge `gH → g'H` labeled `s` whenever `g'H ⊆ gHsH`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::perm::{CosetTable, GroupContext, Permutation, Subgroup, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub perm: Permutation,
}

impl Generator {
    /// A generator labeled by its cycle notation.
    pub fn unlabeled(perm: Permutation) -> Self {
        Self {
            label: perm.to_cycle_string(),
            perm,
        }
    }

    pub fn new(label: impl Into<String>, perm: Permutation) -> Self {
        Self {
            label: label.into(),
            perm,
        }
    }
}

/// Group data from which a Cayley coset digraph is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDigraphSpec {
    pub degree: usize,
    pub group_generators: Vec<Permutation>,
    pub subgroup_generators: Vec<Permutation>,
    pub connection_set: Vec<Generator>,
}

/// A surviving connection-set element with its out-degree contribution `d_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionGenerator {
    pub label: String,
    pub perm: Permutation,
    pub d: usize,
}

#[derive(Clone, Debug)]
pub struct CosetDigraph {
    spec: CosetDigraphSpec,
    group: Arc<GroupContext>,
    subgroup: Subgroup,
    generators: Vec<ConnectionGenerator>,
    cosets: CosetTable,
    graph: Digraph,
    /// Generator index of every edge, parallel to the adjacency lists.
    labels: Vec<Vec<usize>>,
}

/// Outcome of the group-theoretic connectivity test.
#[derive(Clone, Debug)]
pub struct GenerationConnectivity {
    pub connected: bool,
    pub generated: Subgroup,
    /// Vertex sets `(g⟨H,S⟩)/H`, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

/// Keeps one representative per double coset `HsH`, first occurrence
/// winning. Returns the indices of the survivors in `connection_set`.
pub fn dedupe_generators(h: &Subgroup, connection_set: &[Generator]) -> Result<Vec<usize>> {
    let mut kept: Vec<(usize, BTreeSet<Permutation>)> = Vec::new();
    for (i, g) in connection_set.iter().enumerate() {
        if h.contains(&g.perm) {
            return Err(Error::GeneratorInSubgroup(g.label.clone()));
        }
        if kept.iter().any(|(_, dc)| dc.contains(&g.perm)) {
            continue;
        }
        kept.push((i, h.double_coset(&g.perm)));
    }
    Ok(kept.into_iter().map(|(i, _)| i).collect())
}

impl CosetDigraph {
    pub fn build(spec: CosetDigraphSpec) -> Result<Self> {
        Self::build_with_cap(spec, DEFAULT_ENUMERATION_CAP)
    }

    pub fn build_with_cap(spec: CosetDigraphSpec, cap: usize) -> Result<Self> {
        let n = spec.degree;
        let all = spec
            .subgroup_generators
            .iter()
            .chain(spec.connection_set.iter().map(|g| &g.perm));
        for p in spec.group_generators.iter().chain(all.clone()) {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
        }
        let group = GroupContext::enumerate(n, &spec.group_generators, cap)?;
        for p in all {
            group.require(p)?;
        }
        let subgroup = Subgroup::generated(&group, &spec.subgroup_generators)?;
        let survivors = dedupe_generators(&subgroup, &spec.connection_set)?;
        let generators = survivors
            .iter()
            .map(|&i| {
                let g = &spec.connection_set[i];
                Ok(ConnectionGenerator {
                    label: g.label.clone(),
                    perm: g.perm.clone(),
                    d: subgroup.double_coset_index(&g.perm)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let cosets = subgroup.left_cosets();
        let gen_ords: Vec<usize> = generators
            .iter()
            .map(|g| group.ordinal(&g.perm).expect("checked above"))
            .collect();
        let mut out = Vec::with_capacity(cosets.len());
        let mut labels = Vec::with_capacity(cosets.len());
        for (v, rep) in cosets.reps.iter().enumerate() {
            let g = group.ordinal(rep).expect("coset reps are group elements");
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for (j, (&s, gen)) in gen_ords.iter().zip(&generators).enumerate() {
                let targets: BTreeSet<usize> = subgroup
                    .member_ordinals()
                    .iter()
                    .map(|&h| cosets.coset_of(group.mul(group.mul(g, h), s)))
                    .collect();
                if targets.len() != gen.d {
                    return Err(Error::Inconsistent(format!(
                        "vertex {v} has {} out-neighbors via {} but d_s = {}",
                        targets.len(),
                        gen.label,
                        gen.d
                    )));
                }
                edges.extend(targets.into_iter().map(|t| (t, j)));
            }
            edges.sort_unstable();
            out.push(edges.iter().map(|&(t, _)| t).collect());
            labels.push(edges.iter().map(|&(_, j)| j).collect());
        }
        let graph = Digraph::from_adjacency(out)
            .map_err(|e| Error::Inconsistent(format!("built digraph is not simple: {e}")))?;
        Ok(Self {
            spec,
            group,
            subgroup,
            generators,
            cosets,
            graph,
            labels,
        })
    }

    pub fn spec(&self) -> &CosetDigraphSpec {
        &self.spec
    }

    pub fn group(&self) -> &Arc<GroupContext> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Connection set after double-coset deduplication.
    pub fn generators(&self) -> &[ConnectionGenerator] {
        &self.generators
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// `(label, d_s)` in generator order.
    pub fn degrees(&self) -> Vec<(String, usize)> {
        self.generators
            .iter()
            .map(|g| (g.label.clone(), g.d))
            .collect()
    }

    /// Out-degree `d = Σ d_s`.
    pub fn degree(&self) -> usize {
        self.generators.iter().map(|g| g.d).sum()
    }

    pub fn degree_of(&self, generator_indices: &[usize]) -> usize {
        generator_indices
            .iter()
            .map(|&i| self.generators[i].d)
            .sum()
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.cosets.len()
    }

    /// Canonical coset representatives in vertex order.
    pub fn vertices(&self) -> &[Permutation] {
        &self.cosets.reps
    }

    pub fn base_vertex(&self) -> usize {
        self.cosets.coset_of(0)
    }

    pub fn coset_table(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn vertex_of(&self, g: &Permutation) -> Option<usize> {
        self.group.ordinal(g).map(|i| self.cosets.coset_of(i))
    }

    pub(crate) fn vertex_of_ordinal(&self, ordinal: usize) -> usize {
        self.cosets.coset_of(ordinal)
    }

    /// Generator index labeling the edge `u → v`.
    pub fn edge_label(&self, u: usize, v: usize) -> Option<usize> {
        let pos = self.graph.out_neighbors(u).binary_search(&v).ok()?;
        Some(self.labels[u][pos])
    }

    /// `(u, v, generator index)` for every edge, in adjacency order.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.graph
                .out_neighbors(u)
                .iter()
                .zip(&self.labels[u])
                .map(move |(&v, &j)| (u, v, j))
        })
    }

    /// The edge class `E_s` of the named generator.
    pub fn edge_class(&self, label: &str) -> Option<Vec<(usize, usize)>> {
        let j = self.label_index(label)?;
        Some(
            self.labeled_edges()
                .filter(|&(_, _, k)| k == j)
                .map(|(u, v, _)| (u, v))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_strongly_connected()
    }

    /// `⟨H, S⟩`.
    pub fn generated_subgroup(&self) -> Subgroup {
        let perms: Vec<Permutation> = self.generators.iter().map(|g| g.perm.clone()).collect();
        self.subgroup.join(&perms).expect("generators belong to G")
    }

    /// `⟨H, S'⟩` for a subset of generator indices.
    pub fn subgroup_with(&self, generator_indices: &[usize]) -> Subgroup {
        let perms: Vec<Permutation> = generator_indices
            .iter()
            .map(|&i| self.generators[i].perm.clone())
            .collect();
        self.subgroup.join(&perms).expect("generators belong to G")
    }

    /// Vertices `K/H` for a subgroup `K ⊇ H`, ascending.
    pub fn cosets_inside(&self, k: &Subgroup) -> Vec<usize> {
        let set: BTreeSet<usize> = k
            .member_ordinals()
            .iter()
            .map(|&x| self.vertex_of_ordinal(x))
            .collect();
        set.into_iter().collect()
    }

    /// Connectivity decided group-theoretically: connected iff `⟨H,S⟩ = G`,
    /// with components `(g⟨H,S⟩)/H`. Cross-checked against the strongly
    /// connected components of the digraph.
    pub fn generation_connectivity(&self) -> Result<GenerationConnectivity> {
        let generated = self.generated_subgroup();
        let k_cosets = generated.left_cosets();
        let mut blocks: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k_cosets.len()];
        for x in 0..self.group.order() {
            blocks[k_cosets.coset_of(x)].insert(self.vertex_of_ordinal(x));
        }
        let mut components: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect();
        components.sort_by_key(|c| c[0]);
        let connected = generated.is_whole();
        if components != self.graph.strongly_connected_components()
            || connected != self.graph.is_strongly_connected()
        {
            return Err(Error::Inconsistent(
                "group-theoretic components differ from strongly connected components".into(),
            ));
        }
        Ok(GenerationConnectivity {
            connected,
            generated,
            components,
        })
    }

    /// The vertex map `φ_g: xH ↦ gxH`.
    pub fn translation(&self, g: &Permutation) -> Result<Vec<usize>> {
        let g = self.group.require(g)?;
        Ok(self
            .cosets
            .reps
            .iter()
            .map(|rep| {
                let x = self.group.ordinal(rep).expect("rep in G");
                self.vertex_of_ordinal(self.group.mul(g, x))
            })
            .collect())
    }

    /// True iff `φ_g` is a bijection preserving every edge class `E_s`.
    pub fn verify_automorphism(&self, g: &Permutation) -> Result<bool> {
        let phi = self.translation(g)?;
        let mut hit = vec![false; phi.len()];
        for &v in &phi {
            if std::mem::replace(&mut hit[v], true) {
                return Ok(false);
            }
        }
        Ok(self
            .labeled_edges()
            .all(|(u, v, j)| self.edge_label(phi[u], phi[v]) == Some(j)))
    }

    /// `𝒢(G, H, S⁻¹)`, whose digraph is the transpose of this one on the
    /// same vertex labeling. Labels gain a `^-1` suffix.
    pub fn transpose_spec(&self) -> Result<CosetDigraph> {
        let spec = CosetDigraphSpec {
            degree: self.spec.degree,
            group_generators: self.spec.group_generators.clone(),
            subgroup_generators: self.spec.subgroup_generators.clone(),
            connection_set: self
                .generators
                .iter()
                .map(|g| Generator::new(format!("{}^-1", g.label), g.perm.inverse()))
                .collect(),
        };
        Self::build_with_cap(spec, self.group.order().max(1))
    }

    /// `𝒢(⟨H, R⟩, H, R)` for a subset `R` of the generators, given by index.
    pub fn restricted_to(&self, generator_indices: &[usize]) -> Result<CosetDigraph> {
        let mut group_generators = self.spec.subgroup_generators.clone();
        group_generators.extend(
            generator_indices
                .iter()
                .map(|&i| self.generators[i].perm.clone()),
        );
        let spec = CosetDigraphSpec {
            degree: self.spec.degree,
            group_generators,
            subgroup_generators: self.spec.subgroup_generators.clone(),
            connection_set: generator_indices
                .iter()
                .map(|&i| {
                    let g = &self.generators[i];
                    Generator::new(g.label.clone(), g.perm.clone())
                })
                .collect(),
        };
        Self::build_with_cap(spec, self.group.order().max(1))
    }

    /// Resolves labels to generator indices.
    pub fn resolve_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                self.label_index(l.as_ref()).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "unknown generator label {:?}; known: {}",
                        l.as_ref(),
                        self.labels().join(", ")
                    ))
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn cayley(n: usize, group: &[&str], conn: &[(&str, &str)]) -> CosetDigraph {
        CosetDigraph::build(CosetDigraphSpec {
            degree: n,
            group_generators: group.iter().map(|t| p(t, n)).collect(),
            subgroup_generators: vec![],
            connection_set: conn
                .iter()
                .map(|(l, t)| Generator::new(*l, p(t, n)))
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn z4_is_a_directed_4_cycle() {
        let cd = cayley(4, &["(1 2 3 4)"], &[("r", "(1 2 3 4)")]);
        assert_eq!(cd.vertex_count(), 4);
        assert_eq!(cd.degree(), 1);
        assert!(cd.is_connected());
        let (k, _) = crate::digraph::vertex_connectivity(cd.graph()).unwrap();
        assert_eq!(k, 1);
        assert_eq!(cd.graph().edge_count(), 4);
    }

    #[test]
    fn dedupe_keeps_first_per_double_coset() {
        let s4 = GroupContext::enumerate(4, &[p("(1 2)", 4), p("(1 2 3 4)", 4)], 100).unwrap();
        let t = Subgroup::trivial(&s4);
        let gens = vec![
            Generator::unlabeled(p("(1 2)", 4)),
            Generator::unlabeled(p("(2 3)", 4)),
        ];
        assert_eq!(dedupe_generators(&t, &gens).unwrap(), vec![0, 1]);

        let h = Subgroup::generated(&s4, &[p("(3 4)", 4)]).unwrap();
        let s = p("(1 2 3)", 4);
        let hsh = p("(3 4)", 4).then(&s).then(&p("(3 4)", 4));
        let gens = vec![Generator::new("s", s), Generator::new("t", hsh)];
        assert_eq!(dedupe_generators(&h, &gens).unwrap(), vec![0]);

        let bad = vec![Generator::new("h", p("(3 4)", 4))];
        assert_eq!(
            dedupe_generators(&h, &bad).unwrap_err(),
            Error::GeneratorInSubgroup("h".into())
        );
    }

    #[test]
    fn disconnected_components_are_cosets() {
        let cd = cayley(6, &["(1 2 3 4 5 6)"], &[("r2", "(1 3 5)(2 4 6)")]);
        let gc = cd.generation_connectivity().unwrap();
        assert!(!gc.connected);
        assert_eq!(gc.generated.order(), 3);
        assert_eq!(gc.components.len(), 2);
        for c in &gc.components {
            assert_eq!(c.len(), 3);
        }
    }

    #[test]
    fn empty_connection_set() {
        let cd = cayley(3, &["(1 2 3)"], &[]);
        let gc = cd.generation_connectivity().unwrap();
        assert!(!gc.connected);
        assert_eq!(gc.components, vec![vec![0], vec![1], vec![2]]);

        let trivial = cayley(3, &[], &[]);
        assert!(trivial.generation_connectivity().unwrap().connected);
    }

    #[test]
    fn rejects_out_of_group_and_in_subgroup_generators() {
        let err = CosetDigraph::build(CosetDigraphSpec {
            degree: 4,
            group_generators: vec![p("(1 2 3 4)", 4)],
            subgroup_generators: vec![],
            connection_set: vec![Generator::unlabeled(p("(1 2)", 4))],
        })
        .unwrap_err();
        assert!(matches!(err, Error::NotInGroup(_)));

        let err = CosetDigraph::build(CosetDigraphSpec {
            degree: 4,
            group_generators: vec![p("(1 2 3 4)", 4)],
            subgroup_generators: vec![p("(1 3)(2 4)", 4)],
            connection_set: vec![Generator::unlabeled(p("(1 3)(2 4)", 4))],
        })
        .unwrap_err();
        assert!(matches!(err, Error::GeneratorInSubgroup(_)));
    }

    #[test]
    fn translations_are_automorphisms() {
        let cd = cayley(
            4,
            &["(1 2)", "(1 2 3 4)"],
            &[("a", "(1 2)"), ("b", "(1 2 3 4)")],
        );
        assert!(cd.verify_automorphism(&Permutation::identity(4)).unwrap());
        for g in cd.group().elements() {
            assert!(cd.verify_automorphism(g).unwrap());
            assert_eq!(
                cd.translation(g).unwrap()[cd.base_vertex()],
                cd.vertex_of(g).unwrap()
            );
        }
    }

    #[test]
    fn transpose_spec_matches_graph_transpose() {
        let cd = cayley(
            4,
            &["(1 2)", "(1 2 3 4)"],
            &[("a", "(1 2)"), ("b", "(1 2 3 4)")],
        );
        let t = cd.transpose_spec().unwrap();
        assert_eq!(t.vertices(), cd.vertices());
        assert_eq!(t.graph(), &cd.graph().transpose());
        let mut d1: Vec<usize> = cd.generators().iter().map(|g| g.d).collect();
        let mut d2: Vec<usize> = t.generators().iter().map(|g| g.d).collect();
        d1.sort();
        d2.sort();
        assert_eq!(d1, d2);
    }

    #[test]
    fn symmetric_connection_set_gives_symmetric_digraph() {
        let cd = cayley(
            4,
            &["(1 2)", "(2 3)", "(3 4)"],
            &[("x", "(1 2)"), ("y", "(2 3)"), ("z", "(3 4)")],
        );
        assert_eq!(cd.transpose_spec().unwrap().graph(), cd.graph());
        assert_eq!(cd.graph(), &cd.graph().transpose());
    }

    #[test]
    fn edges_follow_the_double_coset_criterion() {
        // H = ⟨(3 4)⟩ in S_4 with a nontrivial d_s
        let cd = CosetDigraph::build(CosetDigraphSpec {
            degree: 4,
            group_generators: vec![p("(1 2)", 4), p("(1 2 3 4)", 4)],
            subgroup_generators: vec![p("(3 4)", 4)],
            connection_set: vec![
                Generator::new("g2", p("(1 2)", 4)),
                Generator::new("g3", p("(1 3 2)", 4)),
            ],
        })
        .unwrap();
        assert_eq!(cd.vertex_count(), 12);
        assert_eq!(cd.degrees(), vec![("g2".into(), 1), ("g3".into(), 2)]);
        let h = cd.subgroup();
        for u in 0..12 {
            assert_eq!(cd.graph().out_neighbors(u).len(), 3);
            for v in 0..12 {
                let q = cd.vertices()[u].left_quotient(&cd.vertices()[v]);
                let expect = cd
                    .generators()
                    .iter()
                    .position(|g| h.double_coset(&g.perm).contains(&q));
                assert_eq!(cd.edge_label(u, v), expect, "edge {u}->{v}");
            }
        }
        let classes: usize = cd
            .labels()
            .iter()
            .map(|l| cd.edge_class(l).unwrap().len())
            .sum();
        assert_eq!(classes, cd.graph().edge_count());
    }
}
