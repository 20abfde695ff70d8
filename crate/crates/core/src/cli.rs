//! The `cosetconn` command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 internal inconsistency,
//! 3 theorem hypotheses not satisfied.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::atom_analysis::{kappa_group_theoretic, GroupKappa};
use crate::coset::{CosetDigraph, CosetDigraphSpec, Generator};
use crate::cp::{cp_build_with_cap, cp_spec, CpParams};
use crate::digraph::{
    atoms_bruteforce, edge_connectivity, vertex_connectivity, AtomSet, Side, DEFAULT_BRUTEFORCE_CAP,
};
use crate::error::{Error, Result};
use crate::perm::{Permutation, DEFAULT_ENUMERATION_CAP};
use crate::theorems::{
    check_decomposition, check_hierarchical_gen, check_hierarchical_gen_c, check_tower,
    hierarchical_order_search, verify_edge_connectivity, verify_hierarchical_cayley,
    HierarchicalVariant, HypothesisReport, TheoremId, TowerVariant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;

pub const ENUM_CAP_VAR: &str = "COSET_ENUM_CAP";

/// Largest digraph on which `analyze` runs the vertex-connectivity oracle
/// and the brute-force atom scans (`7!/3!`, the largest cycle-prefix
/// instance kept in the full-verification envelope).
pub const ORACLE_VERTEX_LIMIT: usize = 840;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub perm: String,
}

/// Input document: either the explicit group data or `{"family": "cp", "n", "k"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection_set: Option<Vec<GeneratorDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settings: Option<Settings>,
}

pub enum ResolvedSpec {
    Explicit(CosetDigraphSpec),
    Cp(CpParams),
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("invalid spec document: {e}")))
    }

    pub fn from_spec(spec: &CosetDigraphSpec) -> Self {
        Self {
            degree: Some(spec.degree),
            group_generators: Some(
                spec.group_generators
                    .iter()
                    .map(Permutation::to_cycle_string)
                    .collect(),
            ),
            subgroup_generators: Some(
                spec.subgroup_generators
                    .iter()
                    .map(Permutation::to_cycle_string)
                    .collect(),
            ),
            connection_set: Some(
                spec.connection_set
                    .iter()
                    .map(|g| GeneratorDoc {
                        label: Some(g.label.clone()),
                        perm: g.perm.to_cycle_string(),
                    })
                    .collect(),
            ),
            ..Self::default()
        }
    }

    pub fn resolve(&self) -> Result<ResolvedSpec> {
        let explicit = self.degree.is_some()
            || self.group_generators.is_some()
            || self.subgroup_generators.is_some()
            || self.connection_set.is_some();
        let family = self.family.is_some() || self.n.is_some() || self.k.is_some();
        match (explicit, family) {
            (true, true) => Err(Error::InvalidArgument(
                "spec mixes explicit group data with a family shorthand".into(),
            )),
            (false, false) => Err(Error::InvalidArgument("spec is empty".into())),
            (false, true) => {
                match self.family.as_deref() {
                    Some("cp") => {}
                    Some(other) => {
                        return Err(Error::InvalidArgument(format!("unknown family {other:?}")))
                    }
                    None => return Err(Error::InvalidArgument("missing field family".into())),
                }
                let (Some(n), Some(k)) = (self.n, self.k) else {
                    return Err(Error::InvalidArgument("family cp needs n and k".into()));
                };
                Ok(ResolvedSpec::Cp(CpParams::new(n, k)?))
            }
            (true, false) => {
                let missing = |f: &str| Error::InvalidArgument(format!("missing field {f}"));
                let degree = self.degree.ok_or_else(|| missing("degree"))?;
                let parse = |texts: &[String]| -> Result<Vec<Permutation>> {
                    texts
                        .iter()
                        .map(|t| Permutation::parse_cycles(t, degree))
                        .collect()
                };
                let group_generators = parse(
                    self.group_generators
                        .as_ref()
                        .ok_or_else(|| missing("group_generators"))?,
                )?;
                let subgroup_generators =
                    parse(self.subgroup_generators.as_deref().unwrap_or_default())?;
                let connection_set = self
                    .connection_set
                    .as_ref()
                    .ok_or_else(|| missing("connection_set"))?
                    .iter()
                    .map(|g| {
                        let perm = Permutation::parse_cycles(&g.perm, degree)?;
                        Ok(match &g.label {
                            Some(l) => Generator::new(l.clone(), perm),
                            None => Generator::unlabeled(perm),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ResolvedSpec::Explicit(CosetDigraphSpec {
                    degree,
                    group_generators,
                    subgroup_generators,
                    connection_set,
                }))
            }
        }
    }

    pub fn bruteforce_cap(&self) -> usize {
        self.settings
            .as_ref()
            .and_then(|s| s.bruteforce_cap)
            .unwrap_or(DEFAULT_BRUTEFORCE_CAP)
    }

    /// Enumeration cap: the environment override, then the spec setting,
    /// then the default.
    pub fn enumeration_cap(&self, env_override: Option<&str>) -> Result<usize> {
        if let Some(text) = env_override {
            return text.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{ENUM_CAP_VAR}={text:?} is not a count"))
            });
        }
        Ok(self
            .settings
            .as_ref()
            .and_then(|s| s.enumeration_cap)
            .unwrap_or(DEFAULT_ENUMERATION_CAP))
    }

    pub fn build(&self, enumeration_cap: usize) -> Result<CosetDigraph> {
        match self.resolve()? {
            ResolvedSpec::Explicit(spec) => CosetDigraph::build_with_cap(spec, enumeration_cap),
            ResolvedSpec::Cp(p) => cp_build_with_cap(p, enumeration_cap),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub label: String,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub vertex_count: usize,
    pub degree: usize,
    pub degrees: Vec<DegreeEntry>,
    pub connected: bool,
    /// Vertex sets of the components; present only when disconnected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaSection {
    /// Absent beyond [`ORACLE_VERTEX_LIMIT`] vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    pub group_theoretic: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceAtoms {
    pub size: usize,
    pub count: usize,
    /// Canonical representatives of the cosets in the atom through `H`.
    pub base_atom: Vec<String>,
    pub members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomSide {
    pub group_kappa: usize,
    pub size_assumption_ok: bool,
    /// Generators inside the smallest subgroup candidate attaining `κ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<BruteForceAtoms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomsSection {
    pub forward: AtomSide,
    pub transpose: AtomSide,
    /// Whether brute-force atoms partition `V` on every side meeting the
    /// size assumption; absent when no such side was enumerated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub instance: InstanceSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<AtomsSection>,
    /// Stage durations in microseconds, only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Stopwatch {
    enabled: bool,
    last: Instant,
    stages: BTreeMap<String, u64>,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            last: Instant::now(),
            stages: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages
            .insert(stage.to_string(), (now - self.last).as_micros() as u64);
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, u64>> {
        self.enabled.then_some(self.stages)
    }
}

fn atom_side(
    cd: &CosetDigraph,
    gk: &GroupKappa,
    side: Side,
    cap: usize,
) -> Result<(AtomSide, Option<AtomSet>)> {
    let analysis = gk.side(side);
    let s0 = analysis
        .winning_candidates()
        .next()
        .map(|c| c.s0_labels.clone());
    let transposed;
    let side_cd = match side {
        Side::Forward => cd,
        Side::Transpose => {
            transposed = cd.transpose_spec()?;
            &transposed
        }
    };
    let scanned = if cd.vertex_count() <= ORACLE_VERTEX_LIMIT {
        atoms_bruteforce(side_cd.graph(), cap)
    } else {
        Err(Error::InvalidArgument(format!(
            "skipped: more than {ORACLE_VERTEX_LIMIT} vertices"
        )))
    };
    let (bruteforce, note, atoms) = match scanned {
        Ok(atoms) => {
            let base_atom = atoms
                .containing(side_cd.base_vertex())
                .unwrap_or_default()
                .iter()
                .map(|&v| side_cd.vertices()[v].to_cycle_string())
                .collect();
            let summary = BruteForceAtoms {
                size: atoms.atom_size(),
                count: atoms.members.len(),
                base_atom,
                members: atoms.members.clone(),
            };
            (Some(summary), None, Some(atoms))
        }
        Err(
            e @ (Error::CompleteDigraph | Error::BruteForceCap { .. } | Error::InvalidArgument(_)),
        ) => (None, Some(e.to_string()), None),
        Err(e) => return Err(e),
    };
    Ok((
        AtomSide {
            group_kappa: analysis.kappa_group,
            size_assumption_ok: analysis.size_assumption_ok,
            s0,
            bruteforce,
            note,
        },
        atoms,
    ))
}

/// The full analysis pipeline: degrees, connectivity, `κ` by both methods,
/// `λ`, and brute-force atoms on both sides within the subset budget.
pub fn analyze(cd: &CosetDigraph, bruteforce_cap: usize, timings: bool) -> Result<AnalysisReport> {
    let mut clock = Stopwatch::new(timings);
    let gc = cd.generation_connectivity()?;
    let instance = InstanceSummary {
        group_order: cd.group().order(),
        subgroup_order: cd.subgroup().order(),
        vertex_count: cd.vertex_count(),
        degree: cd.degree(),
        degrees: cd
            .degrees()
            .into_iter()
            .map(|(label, d)| DegreeEntry { label, d })
            .collect(),
        connected: gc.connected,
        components: (!gc.connected).then_some(gc.components),
    };
    clock.lap("connectivity");
    if !instance.connected {
        return Ok(AnalysisReport {
            instance,
            kappa: None,
            lambda: None,
            atoms: None,
            timings: clock.finish(),
        });
    }
    let n = cd.vertex_count();
    let oracle = if n <= ORACLE_VERTEX_LIMIT {
        Some(vertex_connectivity(cd.graph())?.0)
    } else {
        None
    };
    clock.lap("kappa_oracle");
    let mut gk = kappa_group_theoretic(cd)?;
    if let Some(o) = oracle {
        gk.set_oracle(o);
    }
    clock.lap("kappa_group_theoretic");
    let (lambda, _) = edge_connectivity(cd.graph())?;
    clock.lap("lambda");

    let (forward, fa) = atom_side(cd, &gk, Side::Forward, bruteforce_cap)?;
    let (transpose, ta) = atom_side(cd, &gk, Side::Transpose, bruteforce_cap)?;
    let checked: Vec<bool> = [(&forward, &fa), (&transpose, &ta)]
        .into_iter()
        .filter(|(side, _)| side.size_assumption_ok)
        .filter_map(|(_, atoms)| atoms.as_ref().map(|a| a.partitions(n)))
        .collect();
    let partition_ok = (!checked.is_empty()).then(|| checked.iter().all(|&b| b));
    clock.lap("atoms");

    Ok(AnalysisReport {
        instance,
        kappa: Some(KappaSection {
            oracle,
            group_theoretic: gk.kappa,
            agree: gk.agrees_with_oracle(),
        }),
        lambda: Some(lambda),
        atoms: Some(AtomsSection {
            forward,
            transpose,
            partition_ok,
        }),
        timings: clock.finish(),
    })
}

/// Splits `"a,b|c"` into label blocks.
pub fn parse_blocks(text: &str) -> Vec<Vec<String>> {
    text.split('|').map(parse_list).collect()
}

pub fn parse_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct CheckArgs {
    pub partition: Option<String>,
    pub order: Option<String>,
    pub sprime: Option<String>,
}

/// Runs one theorem checker. Missing arguments default to: the last
/// generator as `R2` (decomposition), singleton blocks in spec order (tower),
/// the first hierarchical ordering or else spec order (hierarchical), and
/// an empty `S'`.
pub fn check(
    theorem: TheoremId,
    cd: &CosetDigraph,
    args: &CheckArgs,
    bruteforce_cap: usize,
) -> Result<HypothesisReport> {
    let labels = cd.labels();
    let require_blocks = |expected: Option<usize>| -> Result<Vec<Vec<String>>> {
        let blocks = match &args.partition {
            Some(text) => parse_blocks(text),
            None => match expected {
                Some(2) => {
                    let (last, rest) = labels
                        .split_last()
                        .ok_or_else(|| Error::InvalidArgument("connection set is empty".into()))?;
                    vec![rest.to_vec(), vec![last.clone()]]
                }
                _ => labels.iter().map(|l| vec![l.clone()]).collect(),
            },
        };
        if let Some(e) = expected {
            if blocks.len() != e {
                return Err(Error::InvalidArgument(format!(
                    "--partition needs exactly {e} blocks separated by '|'"
                )));
            }
        }
        Ok(blocks)
    };
    let ordering = || -> Vec<String> {
        match &args.order {
            Some(text) => parse_list(text),
            None => hierarchical_order_search(cd)
                .map(|o| o.into_iter().map(|i| labels[i].clone()).collect())
                .unwrap_or_else(|| labels.clone()),
        }
    };
    match theorem {
        TheoremId::Decomposition => {
            let blocks = require_blocks(Some(2))?;
            check_decomposition(cd, &blocks[0], &blocks[1])
        }
        TheoremId::Corollary1 => check_tower(cd, &require_blocks(None)?, TowerVariant::Corollary1),
        TheoremId::Corollary1_1 => {
            check_tower(cd, &require_blocks(None)?, TowerVariant::Corollary1_1)
        }
        TheoremId::HierarchicalGen => {
            check_hierarchical_gen(cd, &ordering(), HierarchicalVariant::Standard)
        }
        TheoremId::Hier1 => check_hierarchical_gen(cd, &ordering(), HierarchicalVariant::Hier1),
        TheoremId::HierarchicalCayley => verify_hierarchical_cayley(cd),
        TheoremId::HierarchicalGenC => {
            let s_prime = args.sprime.as_deref().map(parse_list).unwrap_or_default();
            let s = match &args.order {
                Some(text) => parse_list(text),
                None => labels
                    .iter()
                    .filter(|l| !s_prime.contains(l))
                    .cloned()
                    .collect(),
            };
            check_hierarchical_gen_c(cd, &s, &s_prime)
        }
        TheoremId::Edgec => verify_edge_connectivity(cd, bruteforce_cap),
    }
}

fn escape_dot(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(cd: &CosetDigraph) -> String {
    let mut out = String::from("digraph coset {\n");
    for (v, rep) in cd.vertices().iter().enumerate() {
        out.push_str(&format!(
            "  {v} [label=\"{}\"];\n",
            escape_dot(&rep.to_cycle_string())
        ));
    }
    for (u, v, j) in cd.labeled_edges() {
        out.push_str(&format!(
            "  {u} -> {v} [label=\"{}\"];\n",
            escape_dot(&cd.generators()[j].label)
        ));
    }
    out.push_str("}\n");
    out
}

pub fn export_edges(cd: &CosetDigraph) -> String {
    cd.labeled_edges()
        .map(|(u, v, j)| format!("{u} {v} {}\n", cd.generators()[j].label))
        .collect()
}

#[derive(Parser, Debug)]
#[command(
    name = "cosetconn",
    version,
    about = "Connectivity of Cayley coset digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the digraph and report degrees, κ, λ and atoms as JSON.
    Analyze {
        spec: PathBuf,
        /// Include stage timings (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Check a theorem's hypotheses and verify its conclusion.
    Check {
        theorem: String,
        spec: PathBuf,
        /// Label blocks, e.g. "a,b|c".
        #[arg(long)]
        partition: Option<String>,
        /// Generator ordering, e.g. "s1,s2,s3".
        #[arg(long)]
        order: Option<String>,
        /// The set S' for hierarchical_gen_c.
        #[arg(long)]
        sprime: Option<String>,
    },
    /// Write the digraph as DOT or as "u v label" lines.
    Export {
        spec: PathBuf,
        #[arg(long)]
        format: String,
    },
    /// Analyze the cycle-prefix digraph CP(n, k), or print its spec.
    Cp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        emit_spec: bool,
        #[arg(long)]
        timings: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => EXIT_INCONSISTENT,
            Error::NontrivialSubgroup | Error::NotHierarchical | Error::Disconnected => {
                EXIT_HYPOTHESES
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(
    path: &Path,
    env_cap: Option<&str>,
) -> std::result::Result<(SpecDocument, CosetDigraph), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let doc = SpecDocument::parse(&text)?;
    let cap = doc.enumeration_cap(env_cap)?;
    let cd = doc.build(cap)?;
    Ok((doc, cd))
}

fn summarize(report: &AnalysisReport) -> String {
    let i = &report.instance;
    let mut line = format!(
        "|G| = {}, |H| = {}, |V| = {}, d = {}",
        i.group_order, i.subgroup_order, i.vertex_count, i.degree
    );
    match (&report.kappa, report.lambda) {
        (Some(k), Some(l)) => match k.oracle {
            Some(o) => line.push_str(&format!(
                ", κ = {o} (group-theoretic {}{}), λ = {l}",
                k.group_theoretic,
                if k.agree == Some(false) {
                    ", DISAGREES"
                } else {
                    ""
                }
            )),
            None => line.push_str(&format!(
                ", κ = {} (group-theoretic; oracle skipped), λ = {l}",
                k.group_theoretic
            )),
        },
        _ => line.push_str(&format!(
            ", disconnected ({} components)",
            i.components.as_ref().map_or(0, Vec::len)
        )),
    }
    line
}

fn emit_analysis(
    cd: &CosetDigraph,
    cap: usize,
    timings: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let report = analyze(cd, cap, timings)?;
    let _ = writeln!(out, "{}", report.to_json());
    let _ = writeln!(err, "{}", summarize(&report));
    Ok(match &report.kappa {
        Some(k) if k.agree == Some(false) => EXIT_INCONSISTENT,
        _ => EXIT_OK,
    })
}

fn dispatch(
    cli: Cli,
    env_cap: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    match cli.command {
        Command::Analyze { spec, timings } => {
            let (doc, cd) = load(&spec, env_cap)?;
            emit_analysis(&cd, doc.bruteforce_cap(), timings, out, err)
        }
        Command::Check {
            theorem,
            spec,
            partition,
            order,
            sprime,
        } => {
            let theorem: TheoremId = theorem.parse()?;
            let (doc, cd) = load(&spec, env_cap)?;
            let args = CheckArgs {
                partition,
                order,
                sprime,
            };
            let report = check(theorem, &cd, &args, doc.bruteforce_cap())?;
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            for h in report.failures() {
                let _ = writeln!(
                    err,
                    "hypothesis fails: {} (witness: {})",
                    h.description,
                    h.witness.as_deref().unwrap_or("-")
                );
            }
            Ok(if !report.applicable {
                EXIT_HYPOTHESES
            } else if !report.consistent {
                let _ = writeln!(err, "conclusion fails although all hypotheses hold");
                EXIT_INCONSISTENT
            } else {
                EXIT_OK
            })
        }
        Command::Export { spec, format } => {
            if format != "dot" && format != "edges" {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: format!("unknown export format {format:?} (expected dot or edges)"),
                });
            }
            let (_, cd) = load(&spec, env_cap)?;
            let text = if format == "dot" {
                export_dot(&cd)
            } else {
                export_edges(&cd)
            };
            let _ = out.write_all(text.as_bytes());
            Ok(EXIT_OK)
        }
        Command::Cp {
            n,
            k,
            emit_spec,
            timings,
        } => {
            let params = CpParams::new(n, k)?;
            if emit_spec {
                let doc = SpecDocument::from_spec(&cp_spec(params));
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("spec serializes")
                );
                return Ok(EXIT_OK);
            }
            let cap = SpecDocument::default().enumeration_cap(env_cap)?;
            let cd = cp_build_with_cap(params, cap)?;
            emit_analysis(&cd, DEFAULT_BRUTEFORCE_CAP, timings, out, err)
        }
    }
}

/// Parses arguments and runs a command; returns the process exit code.
pub fn run<I, T>(args: I, env_cap: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_INPUT,
            };
        }
    };
    match dispatch(cli, env_cap, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
