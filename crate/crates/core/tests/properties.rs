use std::collections::BTreeMap;

use proptest::prelude::*;

use coset_core::atom_analysis::{kappa_group_theoretic, verify_atom_theory};
use coset_core::coset::{CosetDigraph, CosetDigraphSpec, Generator};
use coset_core::digraph::{
    e_atoms_bruteforce, edge_connectivity, vertex_connectivity, vertex_connectivity_transitive,
    DEFAULT_BRUTEFORCE_CAP,
};
use coset_core::perm::Permutation;
use coset_core::theorems::{check_decomposition, check_tower, TowerVariant};
use coset_core::Error;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

/// `(n, H generators, S)` on 3 to 5 points.
fn raw_spec() -> impl Strategy<Value = (usize, Vec<Permutation>, Vec<Permutation>)> {
    (3usize..=5).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(perm(n), 0..=1),
            prop::collection::vec(perm(n), 1..=3),
        )
    })
}

/// `G = ⟨H, S⟩`, so the digraph is connected.
fn connected(n: usize, h: &[Permutation], s: &[Permutation]) -> Option<CosetDigraph> {
    let mut group_generators = h.to_vec();
    group_generators.extend(s.iter().cloned());
    CosetDigraph::build(CosetDigraphSpec {
        degree: n,
        group_generators,
        subgroup_generators: h.to_vec(),
        connection_set: s.iter().cloned().map(Generator::unlabeled).collect(),
    })
    .ok()
}

/// `G = S_n`, so `⟨H, S⟩` may be proper.
fn in_symmetric(n: usize, h: &[Permutation], s: &[Permutation]) -> Option<CosetDigraph> {
    let cycle: Vec<usize> = (2..=n).chain([1]).collect();
    let swap: Vec<usize> = [2, 1].into_iter().chain(3..=n).collect();
    CosetDigraph::build(CosetDigraphSpec {
        degree: n,
        group_generators: vec![
            Permutation::from_images(&swap).unwrap(),
            Permutation::from_images(&cycle).unwrap(),
        ],
        subgroup_generators: h.to_vec(),
        connection_set: s.iter().cloned().map(Generator::unlabeled).collect(),
    })
    .ok()
}

fn multiset(cd: &CosetDigraph) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for g in cd.generators() {
        *m.entry(g.d).or_insert(0) += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_theoretic_kappa_matches_oracle((n, h, s) in raw_spec()) {
        let Some(cd) = connected(n, &h, &s) else { return Ok(()) };
        let (oracle, _) = vertex_connectivity(cd.graph()).unwrap();
        prop_assert_eq!(kappa_group_theoretic(&cd).unwrap().kappa, oracle);
        prop_assert_eq!(vertex_connectivity_transitive(cd.graph(), cd.base_vertex()).unwrap(), oracle);
    }

    #[test]
    fn whitney_chain_and_edge_connectivity((n, h, s) in raw_spec()) {
        let Some(cd) = connected(n, &h, &s) else { return Ok(()) };
        let (kappa, _) = vertex_connectivity(cd.graph()).unwrap();
        let (lambda, cert) = edge_connectivity(cd.graph()).unwrap();
        prop_assert!(kappa <= lambda && lambda <= cd.graph().min_out_degree());
        prop_assert_eq!(lambda, cd.degree());
        prop_assert_eq!(cert.edges.len(), lambda);
        let e = e_atoms_bruteforce(cd.graph(), DEFAULT_BRUTEFORCE_CAP).unwrap();
        prop_assert_eq!(e.atom_size(), 1);
    }

    #[test]
    fn inverse_generators_have_the_same_degrees((n, h, s) in raw_spec()) {
        let Some(cd) = connected(n, &h, &s) else { return Ok(()) };
        let star = cd.transpose_spec().unwrap();
        prop_assert_eq!(multiset(&cd), multiset(&star));
        prop_assert_eq!(star.graph(), &cd.graph().transpose());
    }

    #[test]
    fn strong_iff_weak_iff_generating((n, h, s) in raw_spec()) {
        let Some(cd) = in_symmetric(n, &h, &s) else { return Ok(()) };
        let strong = cd.graph().is_strongly_connected();
        prop_assert_eq!(strong, cd.graph().is_weakly_connected());
        let gc = cd.generation_connectivity().unwrap();
        prop_assert_eq!(strong, gc.connected);
        let sizes: Vec<usize> = gc.components.iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().all(|&c| c == gc.generated.order() / cd.subgroup().order()));
    }

    #[test]
    fn translations_are_automorphisms((n, h, s) in raw_spec(), pick in any::<prop::sample::Index>()) {
        let Some(cd) = in_symmetric(n, &h, &s) else { return Ok(()) };
        let g = pick.get(cd.group().elements()).clone();
        prop_assert!(cd.verify_automorphism(&g).unwrap());
    }

    #[test]
    fn atom_structure((n, h, s) in raw_spec()) {
        let Some(cd) = connected(n, &h, &s) else { return Ok(()) };
        match verify_atom_theory(&cd, DEFAULT_BRUTEFORCE_CAP) {
            Ok((atoms, report)) => {
                prop_assert!(report.all_ok(), "{:?}", report);
                prop_assert!(atoms.pairwise_disjoint());
            }
            Err(Error::CompleteDigraph) | Err(Error::BruteForceCap { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn decomposition_and_tower_never_overshoot((n, h, s) in raw_spec(), mask in any::<u8>()) {
        let Some(cd) = connected(n, &h, &s) else { return Ok(()) };
        let labels = cd.labels();
        let (r1, r2): (Vec<String>, Vec<String>) = {
            let mut r1 = Vec::new();
            let mut r2 = Vec::new();
            for (i, l) in labels.iter().enumerate() {
                if mask >> i & 1 == 1 { r1.push(l.clone()) } else { r2.push(l.clone()) }
            }
            (r1, r2)
        };
        let (kappa, _) = vertex_connectivity(cd.graph()).unwrap();
        let r = check_decomposition(&cd, &r1, &r2).unwrap();
        prop_assert!(r.consistent);
        if let Some(bound) = r.implied_bound {
            prop_assert!(kappa >= bound);
        }
        for h in r.hypotheses.iter().filter(|h| !h.holds) {
            prop_assert!(h.witness.is_some());
        }

        let blocks: Vec<Vec<String>> = labels.iter().map(|l| vec![l.clone()]).collect();
        for variant in [TowerVariant::Corollary1, TowerVariant::Corollary1_1] {
            let t = check_tower(&cd, &blocks, variant).unwrap();
            if t.applicable {
                prop_assert_eq!(kappa, cd.degree());
            }
            prop_assert!(t.consistent);
        }
    }
}
