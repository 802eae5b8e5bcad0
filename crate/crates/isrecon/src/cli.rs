//! Command-line front end. One thin binary dispatches here; all command
//! logic lives in the library so it stays testable.
//!
//! Exit codes: 0 = yes, 1 = no / probably-no, 2 = error, 3 = exhausted
//! budget or resource cap. Scripts can rely on 1 meaning a genuine
//! negative and 3 meaning "ran out of budget, answer unknown".

use crate::bench::{run_bench, BenchConfig, Suite};
use crate::covering::{
    exact_family, modulator_family, sampled_family, sampled_family_verified, verify_cover,
    CoverCheck, CoveringFamily, FamilyMode, DEFAULT_ENUMERATION_CAP, DEFAULT_FAMILY_CAP,
    DEFAULT_VERIFIED_ROUND_CAP,
};
use crate::error::{Error, Result};
use crate::formats::{
    family_from_json, family_to_json, parse_dimacs, sequence_to_json, AnswerKind, GraphFile,
    InstanceFile, ResultFile, ResultStats,
};
use crate::fpt::{solve_opt, OptOutcome, SolveOptions, DEFAULT_GUESS_CAP};
use crate::gadgets::{gen_tjo_gadget, gen_tso_gadget, tjo_witness, tso_witness, MulticoloredGraph};
use crate::graph::VertexSet;
use crate::oracle::{bfs_witness, OracleOptions};
use crate::separation::{default_trials, solve_separation, ColoringStrategy, SepOutcome, SeparationOptions};
use crate::sequence::{validate_sequence_bounded, Instance, LengthBound, ReconfigSequence, Rule};
use crate::tjr::{solve_tjr, TjrOutcome};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "isrecon",
    about = "Independent-set reconfiguration: solvers, covering families, gadget generators",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide an instance and print a result file to stdout.
    Solve(SolveArgs),
    /// Generate a hardness-gadget instance from a source graph.
    Gen(GenArgs),
    /// Construct (and optionally verify) an independence covering family.
    Family(FamilyArgs),
    /// Run a benchmark suite and write a CSV.
    Bench(BenchArgs),
    /// Re-validate the sequence inside a result file against an instance.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Token sliding, at most ell moves.
    Tso,
    /// Token jumping, at most ell moves.
    Tjo,
    /// Token jumping reachability (ell ignored).
    Tjr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Fpt,
    Oracle,
    Separation,
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = Algo::Fpt)]
    pub algo: Algo,
    /// exact | sampled | modulator | path to a family JSON file
    #[arg(long, default_value = "exact")]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub guess_cap: Option<u64>,
    /// Monte-Carlo trial count for the separation solver.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Iterate all 2^|H| colorings instead of sampling (separation only).
    #[arg(long)]
    pub exhaustive: bool,
    /// Sampling rounds for --family sampled; omitting it runs the
    /// sample-then-verify loop.
    #[arg(long)]
    pub rounds: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Include wall-clock time in the result (breaks byte-for-byte
    /// reproducibility).
    #[arg(long)]
    pub timing: bool,
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetArg {
    Tso,
    Tjo,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub gadget: GadgetArg,
    #[arg(long)]
    pub k: usize,
    /// Comma-separated clique vertices; emits the constructive witness.
    #[arg(long)]
    pub witness: Option<String>,
    /// Instance output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Layout sidecar path (defaults to `<out>.layout.json`).
    #[arg(long)]
    pub layout_out: Option<PathBuf>,
    /// Witness output path (defaults to `<out>.witness.json`).
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    /// Treat the source as a DIMACS edge list instead of JSON.
    #[arg(long)]
    pub dimacs: bool,
    pub source: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyModeArg {
    Exact,
    Sampled,
    Modulator,
}

#[derive(Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub mode: FamilyModeArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub rounds: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Degeneracy bound for sampling (defaults to the graph's degeneracy).
    #[arg(long)]
    pub d: Option<usize>,
    /// Check the covering property; exit 0 iff it holds.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long)]
    pub dimacs: bool,
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    RandomDegenerate,
    Gadgets,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::RandomDegenerate)]
    pub suite: SuiteArg,
    /// Comma-separated instance sizes.
    #[arg(long, default_value = "6,8,10")]
    pub sizes: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub timing: bool,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    pub instance: PathBuf,
    pub result: PathBuf,
}

pub fn run() -> u8 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

pub fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceExceeded { .. } => 3,
        _ => 2,
    }
}

pub fn dispatch(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Solve(args) => cmd_solve(&args),
        Command::Gen(args) => cmd_gen(&args),
        Command::Family(args) => cmd_family(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

struct SolveOutput {
    answer: AnswerKind,
    sequence: Option<ReconfigSequence>,
    stats: ResultStats,
    warnings: Vec<String>,
}

fn cmd_solve(args: &SolveArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.input)?;
    let inst = InstanceFile::parse(&text)?.to_instance()?;
    let start = Instant::now();
    let mut out = solve_dispatch(args, &inst)?;

    // hard gate: no yes leaves the process without re-validation
    if out.answer == AnswerKind::Yes {
        let seq = out.sequence.as_ref().expect("yes answers carry a sequence");
        let bound = match args.variant {
            Variant::Tjr => LengthBound::Unbounded,
            _ => LengthBound::AtMost(inst.ell),
        };
        let rule = variant_rule(args.variant);
        if let Err(v) = validate_sequence_bounded(&inst, seq, rule, bound) {
            return Err(Error::Internal(format!("emitted sequence failed validation: {v}")));
        }
    }

    out.stats.seed = Some(args.seed);
    if args.timing {
        out.stats.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    let file = ResultFile {
        answer: out.answer,
        sequence: out.sequence.as_ref().map(sequence_to_json),
        stats: out.stats,
        warnings: out.warnings,
    };
    print!("{}", file.emit());
    Ok(out.answer.exit_code())
}

fn variant_rule(variant: Variant) -> Rule {
    match variant {
        Variant::Tso => Rule::Slide,
        Variant::Tjo | Variant::Tjr => Rule::Jump,
    }
}

fn solve_dispatch(args: &SolveArgs, inst: &Instance) -> Result<SolveOutput> {
    let rule = variant_rule(args.variant);

    // degenerate cases are decided before any solver runs
    let trivial = match args.variant {
        Variant::Tjr => (inst.source == inst.target).then_some(true),
        _ => inst.trivial_answer(),
    };
    if let Some(yes) = trivial {
        return Ok(SolveOutput {
            answer: if yes { AnswerKind::Yes } else { AnswerKind::No },
            sequence: yes.then(|| ReconfigSequence::trivial(inst.source.clone())),
            stats: ResultStats::default(),
            warnings: vec![],
        });
    }

    match (args.variant, args.algo) {
        (Variant::Tjr, Algo::Separation) => {
            Err(Error::invalid_input("the separation solver handles tso and tjo, not tjr"))
        }
        (_, Algo::Oracle) => {
            let opts = OracleOptions {
                max_depth: match args.variant {
                    Variant::Tjr => None,
                    _ => Some(inst.ell),
                },
                ..OracleOptions::default()
            };
            let (witness, nodes) = bfs_witness(inst, rule, &opts)?;
            Ok(SolveOutput {
                answer: if witness.is_some() { AnswerKind::Yes } else { AnswerKind::No },
                sequence: witness,
                stats: ResultStats { nodes_expanded: nodes, ..Default::default() },
                warnings: vec![],
            })
        }
        (Variant::Tso | Variant::Tjo, Algo::Fpt) => {
            let mut warnings = Vec::new();
            let fam = resolve_family(args, inst, &mut warnings)?;
            if !fam.verified {
                warnings.push("covering family is unverified; a \"no\" answer is not guaranteed complete".into());
            }
            let opts = SolveOptions {
                guess_cap: args.guess_cap.unwrap_or(DEFAULT_GUESS_CAP),
                threads: args.threads,
            };
            let report = solve_opt(inst, &fam, rule, &opts)?;
            let (answer, sequence) = match report.outcome {
                OptOutcome::Yes(seq) => (AnswerKind::Yes, Some(seq)),
                OptOutcome::No => (AnswerKind::No, None),
                OptOutcome::BudgetExceeded => (AnswerKind::BudgetExceeded, None),
            };
            Ok(SolveOutput {
                answer,
                sequence,
                stats: ResultStats {
                    guesses: report.stats.guesses,
                    frontier_peak: report.stats.frontier_peak,
                    nodes_expanded: report.stats.steps,
                    ..Default::default()
                },
                warnings,
            })
        }
        (Variant::Tjr, Algo::Fpt) => {
            let mut warnings = Vec::new();
            let fam = resolve_family(args, inst, &mut warnings)?;
            let report = solve_tjr(inst, &fam)?;
            if report.unverified_family {
                warnings.push("covering family is unverified; a \"no\" answer is not guaranteed complete".into());
            }
            let (answer, sequence) = match report.outcome {
                TjrOutcome::Yes(seq) => (AnswerKind::Yes, Some(seq)),
                TjrOutcome::No => (AnswerKind::No, None),
            };
            Ok(SolveOutput {
                answer,
                sequence,
                stats: ResultStats {
                    frontier_peak: report.meta_nodes,
                    nodes_expanded: report.meta_edges as u64,
                    ..Default::default()
                },
                warnings,
            })
        }
        (Variant::Tso | Variant::Tjo, Algo::Separation) => {
            let m = inst
                .modulator
                .clone()
                .ok_or_else(|| Error::invalid_input("the separation solver needs a modulator in the instance"))?;
            let strategy = if args.exhaustive {
                ColoringStrategy::Exhaustive
            } else {
                ColoringStrategy::Randomized {
                    trials: args.trials.unwrap_or_else(|| default_trials(inst, &m)),
                    seed: args.seed,
                }
            };
            let opts = SeparationOptions { strategy, ..Default::default() };
            let report = solve_separation(inst, &m, rule, &opts)?;
            let (answer, sequence) = match report.outcome {
                SepOutcome::Yes(seq) => (AnswerKind::Yes, Some(seq)),
                SepOutcome::ProbablyNo => (AnswerKind::ProbablyNo, None),
            };
            Ok(SolveOutput {
                answer,
                sequence,
                stats: ResultStats {
                    guesses: report.colorings,
                    nodes_expanded: report.reductions,
                    ..Default::default()
                },
                warnings: vec![],
            })
        }
    }
}

fn resolve_family(args: &SolveArgs, inst: &Instance, warnings: &mut Vec<String>) -> Result<CoveringFamily> {
    let g = &inst.graph;
    let k = inst.k;
    match args.family.as_str() {
        "exact" => exact_family(g, k, DEFAULT_FAMILY_CAP),
        "sampled" => {
            let d = g.degeneracy_order().degeneracy;
            match args.rounds {
                None => sampled_family_verified(g, k, d, args.seed, DEFAULT_VERIFIED_ROUND_CAP, DEFAULT_ENUMERATION_CAP),
                Some(rounds) => {
                    let mut fam = sampled_family(g, k, d, rounds, args.seed)?;
                    match verify_cover(g, k, &fam, DEFAULT_ENUMERATION_CAP) {
                        Ok(CoverCheck::Ok) => fam.verified = true,
                        Ok(CoverCheck::Missing(w)) => {
                            warnings.push(format!("sampled family misses independent set {w:?}"));
                        }
                        Err(Error::ResourceExceeded { .. }) => {
                            warnings.push("covering verification hit its enumeration cap".into());
                        }
                        Err(e) => return Err(e),
                    }
                    Ok(fam)
                }
            }
        }
        "modulator" => {
            let m = inst
                .modulator
                .clone()
                .ok_or_else(|| Error::invalid_input("--family modulator needs a modulator in the instance"))?;
            let rest: VertexSet = (0..g.vertex_count()).filter(|v| !m.contains(*v)).collect();
            let (gh, _) = g.induced_subgraph(&rest)?;
            let d = gh.degeneracy_order().degeneracy;
            modulator_family(g, &m, k, d, FamilyMode::Exact)
        }
        path => {
            let text = fs::read_to_string(Path::new(path))
                .map_err(|e| Error::InvalidInput(format!("cannot read family file {path}: {e}")))?;
            let mut fam = family_from_json(g, k, &text)?;
            match verify_cover(g, k, &fam, DEFAULT_ENUMERATION_CAP) {
                Ok(CoverCheck::Ok) => fam.verified = true,
                Ok(CoverCheck::Missing(w)) => {
                    warnings.push(format!("loaded family misses independent set {w:?}"));
                }
                Err(Error::ResourceExceeded { .. }) => {
                    warnings.push("covering verification hit its enumeration cap".into());
                }
                Err(e) => return Err(e),
            }
            Ok(fam)
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.source)?;
    let gf = if args.dimacs { parse_dimacs(&text)? } else { GraphFile::parse(&text)? };
    let graph = gf.to_graph()?;

    let (inst, layout) = match args.gadget {
        GadgetArg::Tso => {
            let colors = gf
                .colors
                .clone()
                .ok_or_else(|| Error::invalid_input("the sliding gadget needs a \"colors\" array in the source"))?;
            let mc = MulticoloredGraph::new(graph, colors, args.k)?;
            gen_tso_gadget(&mc, args.k)?
        }
        GadgetArg::Tjo => gen_tjo_gadget(&graph, args.k)?,
    };

    let instance_file = InstanceFile::from_instance(&inst);
    match &args.out {
        Some(path) => fs::write(path, instance_file.emit())?,
        None => print!("{}", instance_file.emit()),
    }

    let layout_path = args
        .layout_out
        .clone()
        .or_else(|| args.out.as_ref().map(|p| sidecar(p, "layout.json")));
    if let Some(path) = layout_path {
        let mut s = serde_json::to_string(&layout).expect("layout serialization");
        s.push('\n');
        fs::write(path, s)?;
    }

    if let Some(list) = &args.witness {
        let clique = parse_id_list(list)?;
        let witness = match args.gadget {
            GadgetArg::Tso => tso_witness(&inst, &layout, &clique)?,
            GadgetArg::Tjo => tjo_witness(&inst, &layout, &clique)?,
        };
        let path = args
            .witness_out
            .clone()
            .or_else(|| args.out.as_ref().map(|p| sidecar(p, "witness.json")))
            .ok_or_else(|| Error::invalid_input("--witness needs --witness-out (or --out to derive it)"))?;
        let rf = ResultFile {
            answer: AnswerKind::Yes,
            sequence: Some(sequence_to_json(&witness)),
            stats: ResultStats::default(),
            warnings: vec![],
        };
        fs::write(path, rf.emit())?;
    }
    Ok(0)
}

fn sidecar(base: &Path, suffix: &str) -> PathBuf {
    let mut os = base.as_os_str().to_owned();
    os.push(".");
    os.push(suffix);
    PathBuf::from(os)
}

fn parse_id_list(text: &str) -> Result<VertexSet> {
    let ids = text
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad vertex id {part:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexSet::new(ids))
}

fn cmd_family(args: &FamilyArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.input)?;
    let cap = args.cap.unwrap_or(DEFAULT_FAMILY_CAP);
    let (graph, modulator) = if args.mode == FamilyModeArg::Modulator {
        let inst = InstanceFile::parse(&text)?.to_instance()?;
        let m = inst
            .modulator
            .clone()
            .ok_or_else(|| Error::invalid_input("--mode modulator needs a modulator in the instance file"))?;
        (inst.graph, Some(m))
    } else {
        let gf = if args.dimacs { parse_dimacs(&text)? } else { GraphFile::parse(&text)? };
        (gf.to_graph()?, None)
    };

    let fam = match args.mode {
        FamilyModeArg::Exact => exact_family(&graph, args.k, cap)?,
        FamilyModeArg::Sampled => {
            let d = args.d.unwrap_or_else(|| graph.degeneracy_order().degeneracy);
            sampled_family(&graph, args.k, d, args.rounds.unwrap_or(128), args.seed)?
        }
        FamilyModeArg::Modulator => {
            let m = modulator.expect("checked above");
            let rest: VertexSet = (0..graph.vertex_count()).filter(|v| !m.contains(*v)).collect();
            let (gh, _) = graph.induced_subgraph(&rest)?;
            let d = args.d.unwrap_or_else(|| gh.degeneracy_order().degeneracy);
            let inner = match args.rounds {
                Some(rounds) => FamilyMode::Sampled { rounds, seed: args.seed },
                None => FamilyMode::Exact,
            };
            modulator_family(&graph, &m, args.k, d, inner)?
        }
    };
    print!("{}", family_to_json(&fam));
    if args.verify {
        match verify_cover(&graph, args.k, &fam, args.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))? {
            CoverCheck::Ok => Ok(0),
            CoverCheck::Missing(w) => {
                eprintln!("uncovered independent set: {:?}", w.as_slice());
                Ok(1)
            }
        }
    } else {
        Ok(0)
    }
}

fn cmd_bench(args: &BenchArgs) -> Result<u8> {
    let sizes = args
        .sizes
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad size {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let cfg = BenchConfig {
        suite: match args.suite {
            SuiteArg::RandomDegenerate => Suite::RandomDegenerate,
            SuiteArg::Gadgets => Suite::Gadgets,
        },
        sizes,
        seed: args.seed,
        timing: args.timing,
        reps: args.reps,
    };
    let mut out = Vec::new();
    run_bench(&cfg, &mut out)?;
    fs::write(&args.out, out)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let inst = InstanceFile::parse(&fs::read_to_string(&args.instance)?)?.to_instance()?;
    let result = ResultFile::parse(&fs::read_to_string(&args.result)?)?;
    if result.answer != AnswerKind::Yes {
        println!("nothing to verify: answer is not \"yes\"");
        return Ok(0);
    }
    let seq = result
        .sequence()?
        .ok_or_else(|| Error::invalid_input("result file answers yes but carries no sequence"))?;
    let rule = variant_rule(args.variant);
    let bound = match args.variant {
        Variant::Tjr => LengthBound::Unbounded,
        _ => LengthBound::AtMost(inst.ell),
    };
    match validate_sequence_bounded(&inst, &seq, rule, bound) {
        Ok(()) => {
            println!("sequence of {} moves validates", seq.move_count());
            Ok(0)
        }
        Err(v) => {
            eprintln!("sequence rejected: {v}");
            Ok(1)
        }
    }
}
