//! Command-line front end: solve instances from Newick files, verify
//! against the exhaustive reference solver, or generate random instances.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 infeasible
//! input, 4 verification mismatch.

use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use supertree::generate::{generate, GenConfig};
use supertree::newick::parse_shape;
use supertree::oracle::{
    brute_masp_capped, brute_mcsp_capped, MAX_ROOTED_LABELS, MAX_UNROOTED_LABELS,
};
use supertree::tree::{is_agreement_supertree, is_compatible_supertree};
use supertree::{
    masp::masp_with, mcsp::mcsp_with, Mode, ProblemInstance, SolveError, SolveOptions,
    SupertreeResult, SupertreeWitness, TreeSet,
};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Masp,
    Mcsp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rooted,
    Unrooted,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rooted => Mode::Rooted,
            ModeArg::Unrooted => Mode::Unrooted,
        }
    }
}

/// Exact maximum agreement / compatible supertree solver.
#[derive(Debug, Parser)]
#[command(name = "supertree", disable_help_flag = false)]
struct Cli {
    /// Problem to solve (required unless generating).
    #[arg(long, value_enum)]
    problem: Option<Problem>,

    /// Whether the input trees are rooted or unrooted.
    #[arg(long, value_enum)]
    mode: ModeArg,

    /// Input file: one Newick expression per line ('#' lines ignored).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Cross-check the answer against the exhaustive reference solver.
    #[arg(long)]
    verify: bool,

    /// Print solver statistics as JSON on stderr.
    #[arg(long)]
    stats: bool,

    /// Print every memoized state with its value on stderr.
    #[arg(long)]
    dump_states: bool,

    /// Generate a random instance instead of solving (prints it to stdout).
    #[arg(long)]
    seed: Option<u64>,

    /// Number of trees to generate.
    #[arg(long = "gen-k", default_value_t = 2)]
    gen_k: usize,

    /// Size of the label universe to generate over.
    #[arg(long = "gen-n", default_value_t = 6)]
    gen_n: usize,

    /// Maximum node degree of generated trees.
    #[arg(long = "gen-d", default_value_t = 3)]
    gen_d: usize,

    /// Override the reference solver's label-count cap for --verify.
    #[arg(long = "oracle-cap")]
    oracle_cap: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), (u8, String)> {
    if let Some(seed) = cli.seed {
        if cli.input.is_some() || cli.problem.is_some() {
            return Err((
                EXIT_USAGE,
                "--seed generates an instance; --input/--problem do not apply".into(),
            ));
        }
        let cfg = GenConfig {
            seed,
            k: cli.gen_k,
            n: cli.gen_n,
            max_degree: cli.gen_d,
            mode: cli.mode.into(),
        };
        let g = generate(&cfg).map_err(|e| (EXIT_USAGE, e.to_string()))?;
        for line in &g.texts {
            println!("{line}");
        }
        return Ok(());
    }

    let problem = cli
        .problem
        .ok_or((EXIT_USAGE, "--problem is required when solving".to_string()))?;
    let input = cli
        .input
        .as_ref()
        .ok_or((EXIT_USAGE, "--input is required when solving".to_string()))?;
    let mode: Mode = cli.mode.into();
    let inst = load_instance(input, mode)?;

    if cli.verify {
        let cap = cli.oracle_cap.unwrap_or(match mode {
            Mode::Rooted => MAX_ROOTED_LABELS,
            Mode::Unrooted => MAX_UNROOTED_LABELS,
        });
        if inst.n() > cap {
            return Err((
                EXIT_USAGE,
                format!(
                    "--verify needs at most {cap} labels (instance has {}); raise --oracle-cap deliberately",
                    inst.n()
                ),
            ));
        }
    }

    let opts = SolveOptions {
        collect_dump: cli.dump_states,
    };
    let result = match problem {
        Problem::Masp => masp_with(&inst, &opts),
        Problem::Mcsp => mcsp_with(&inst, &opts),
    }
    .map_err(|e| {
        let code = match e {
            SolveError::EmptyTree(_) | SolveError::DegenerateUnrootedTree(_) => EXIT_INFEASIBLE,
            SolveError::NoTrees => EXIT_PARSE,
        };
        (code, e.to_string())
    })?;

    println!("size={}", result.size);
    println!("{}", result.witness.to_newick(&inst.universe));

    if cli.stats {
        let s = &result.stats;
        let json = serde_json::json!({
            "states_visited": s.states_visited,
            "transitions_explored": s.transitions_explored,
            "memo_entries": s.memo_entries,
            "wall_ms": s.wall.as_secs_f64() * 1e3,
        });
        eprintln!("{json}");
    }
    if let Some(dump) = &result.dump {
        for line in dump {
            eprintln!("{line}");
        }
    }
    if cli.verify {
        verify(&inst, problem, &result, cli.oracle_cap)?;
    }
    Ok(())
}

fn load_instance(path: &PathBuf, mode: Mode) -> Result<ProblemInstance, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let mut lines: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push((i + 1, trimmed));
        }
    }
    if lines.is_empty() {
        return Err((EXIT_PARSE, format!("{}: no trees in input", path.display())));
    }
    // first pass for position-accurate syntax errors, per line
    for (lineno, body) in &lines {
        if let Err(e) = parse_shape(body) {
            let col = match e {
                supertree::newick::NewickError::Syntax { pos, .. } => pos + 1,
                _ => 1,
            };
            return Err((
                EXIT_PARSE,
                format!("{}:{lineno}:{col}: {e}", path.display()),
            ));
        }
    }
    let texts: Vec<&str> = lines.iter().map(|(_, b)| *b).collect();
    ProblemInstance::from_newick(&texts, mode)
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn verify(
    inst: &ProblemInstance,
    problem: Problem,
    result: &SupertreeResult,
    cap: Option<usize>,
) -> Result<(), (u8, String)> {
    let reference = match (problem, cap) {
        (Problem::Masp, Some(c)) => brute_masp_capped(inst, c),
        (Problem::Masp, None) => brute_masp_capped(
            inst,
            match inst.mode() {
                Mode::Rooted => MAX_ROOTED_LABELS,
                Mode::Unrooted => MAX_UNROOTED_LABELS,
            },
        ),
        (Problem::Mcsp, Some(c)) => brute_mcsp_capped(inst, c),
        (Problem::Mcsp, None) => brute_mcsp_capped(
            inst,
            match inst.mode() {
                Mode::Rooted => MAX_ROOTED_LABELS,
                Mode::Unrooted => MAX_UNROOTED_LABELS,
            },
        ),
    };
    if reference.size != result.size {
        return Err((
            EXIT_MISMATCH,
            format!(
                "verification failed: solver size {} != reference size {}",
                result.size, reference.size
            ),
        ));
    }
    let witness_ok = match (&result.witness, &inst.trees) {
        (SupertreeWitness::Rooted(w), TreeSet::Rooted(trees)) => match problem {
            Problem::Masp => is_agreement_supertree(w, trees),
            Problem::Mcsp => is_compatible_supertree(w, trees),
        },
        (SupertreeWitness::Unrooted(w), TreeSet::Unrooted(trees)) => match problem {
            Problem::Masp => is_agreement_supertree(w, trees),
            Problem::Mcsp => is_compatible_supertree(w, trees),
        },
        _ => false,
    };
    if !witness_ok {
        return Err((
            EXIT_MISMATCH,
            "verification failed: witness rejected by the independent checker".into(),
        ));
    }
    eprintln!("verified: size matches the exhaustive reference solver");
    Ok(())
}
