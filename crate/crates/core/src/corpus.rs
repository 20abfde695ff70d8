//! A fixed set of small Cayley coset digraphs used for cross-validation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coset::{CosetDigraph, CosetDigraphSpec, Generator};
use crate::cp::{cp_spec, CpParams};
use crate::error::Result;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub spec: CosetDigraphSpec,
}

impl CorpusInstance {
    fn new(name: impl Into<String>, spec: CosetDigraphSpec) -> Self {
        Self {
            name: name.into(),
            spec,
        }
    }

    pub fn build(&self) -> Result<CosetDigraph> {
        CosetDigraph::build(self.spec.clone())
    }
}

fn p(text: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(text, n).expect("corpus permutation")
}

fn cayley(n: usize, group: &[&str], conn: &[(&str, &str)]) -> CosetDigraphSpec {
    CosetDigraphSpec {
        degree: n,
        group_generators: group.iter().map(|t| p(t, n)).collect(),
        subgroup_generators: vec![],
        connection_set: conn
            .iter()
            .map(|(l, t)| Generator::new(*l, p(t, n)))
            .collect(),
    }
}

/// `𝒢(S_n, {e}, {a, b, ba})` with `a = (1 2)`, `b = (1 2 … n)`.
pub fn paper_example(n: usize) -> CosetDigraphSpec {
    let a = p("(1 2)", n);
    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let b = p(&format!("({})", cycle.join(" ")), n);
    let ba = b.then(&a);
    CosetDigraphSpec {
        degree: n,
        group_generators: vec![a.clone(), b.clone()],
        subgroup_generators: vec![],
        connection_set: vec![
            Generator::new("a", a),
            Generator::new("b", b),
            Generator::new("ba", ba),
        ],
    }
}

pub const Q8_I: &str = "(1 2 4 7)(3 6 8 5)";
pub const Q8_J: &str = "(1 3 4 8)(2 5 7 6)";

/// The quaternion group in its regular representation, `S = {i, j}`.
pub fn quaternion() -> CosetDigraphSpec {
    cayley(8, &[Q8_I, Q8_J], &[("i", Q8_I), ("j", Q8_J)])
}

pub fn dihedral4() -> CosetDigraphSpec {
    cayley(
        4,
        &["(1 2 3 4)", "(1 3)"],
        &[("r", "(1 2 3 4)"), ("f", "(1 3)")],
    )
}

pub fn dihedral5() -> CosetDigraphSpec {
    cayley(
        5,
        &["(1 2 3 4 5)", "(2 5)(3 4)"],
        &[("r", "(1 2 3 4 5)"), ("f", "(2 5)(3 4)")],
    )
}

pub fn elementary_abelian8() -> CosetDigraphSpec {
    let gens = ["(1 2)", "(3 4)", "(5 6)"];
    cayley(6, &gens, &[("x", gens[0]), ("y", gens[1]), ("z", gens[2])])
}

pub fn s4_transposition_cycle() -> CosetDigraphSpec {
    cayley(
        4,
        &["(1 2)", "(1 2 3 4)"],
        &[("t", "(1 2)"), ("c", "(1 2 3 4)")],
    )
}

pub fn s4_adjacent_transpositions() -> CosetDigraphSpec {
    let gens = ["(1 2)", "(2 3)", "(3 4)"];
    cayley(
        4,
        &gens,
        &[("s1", gens[0]), ("s2", gens[1]), ("s3", gens[2])],
    )
}

/// `𝒢(S_4, ⟨(1 2)⟩, {(3 4)})`: `⟨H, S⟩` has order 4, so the digraph splits
/// into six components of two cosets each.
pub fn disconnected_example() -> CosetDigraphSpec {
    CosetDigraphSpec {
        degree: 4,
        group_generators: vec![p("(1 2)", 4), p("(1 2 3 4)", 4)],
        subgroup_generators: vec![p("(1 2)", 4)],
        connection_set: vec![Generator::new("u", p("(3 4)", 4))],
    }
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffled images")
}

/// A seeded random spec on 4 or 5 points with `G = ⟨H, S⟩` and at most 60
/// vertices. Draws are repeated until the spec builds.
pub fn random_spec(seed: u64) -> CosetDigraphSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 4 + (seed % 2) as usize;
    loop {
        let h = random_perm(&mut rng, n);
        let count = rng.gen_range(2..=3);
        let conn: Vec<Permutation> = (0..count).map(|_| random_perm(&mut rng, n)).collect();
        let mut group_generators = vec![h.clone()];
        group_generators.extend(conn.iter().cloned());
        let spec = CosetDigraphSpec {
            degree: n,
            group_generators,
            subgroup_generators: vec![h],
            connection_set: conn.into_iter().map(Generator::unlabeled).collect(),
        };
        if let Ok(cd) = CosetDigraph::build(spec.clone()) {
            if cd.vertex_count() >= 3 && cd.vertex_count() <= 60 {
                return spec;
            }
        }
    }
}

pub const RANDOM_SEEDS: [u64; 3] = [11, 12, 13];

/// The cross-validation corpus. Every instance is connected.
pub fn corpus() -> Vec<CorpusInstance> {
    let mut out = vec![
        CorpusInstance::new("paper-example-s4", paper_example(4)),
        CorpusInstance::new("paper-example-s5", paper_example(5)),
    ];
    for (n, k) in [(3, 1), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (6, 3)] {
        let params = CpParams::new(n, k).expect("valid parameters");
        out.push(CorpusInstance::new(format!("cp-{n}-{k}"), cp_spec(params)));
    }
    out.push(CorpusInstance::new("q8", quaternion()));
    out.push(CorpusInstance::new("d4", dihedral4()));
    out.push(CorpusInstance::new("d5", dihedral5()));
    out.push(CorpusInstance::new("z2-cubed", elementary_abelian8()));
    out.push(CorpusInstance::new(
        "s4-transposition-cycle",
        s4_transposition_cycle(),
    ));
    out.push(CorpusInstance::new(
        "s4-adjacent",
        s4_adjacent_transpositions(),
    ));
    for seed in RANDOM_SEEDS {
        out.push(CorpusInstance::new(
            format!("random-{seed}"),
            random_spec(seed),
        ));
    }
    out
}
