//! ICCMA-style command line front end.
//!
//! Results go to the output stream, diagnostics and traces to the error
//! stream. Exit codes: 0 success, 2 usage error, 3 malformed instance,
//! 4 unknown query argument, 5 unreadable file, 6 instance too large for
//! the brute-force oracle.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::af::{parse_af, ArgumentationFramework, Extension, Format};
use crate::error::SolveError;
use crate::generate::RandomAf;
use crate::oracle::{self, SemanticsKind};
use crate::solver::{self, Answer, Task, TaskSpec};
use crate::state::{MatrixState, Mode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_UNKNOWN_ARGUMENT: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_TOO_LARGE: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Apx,
    Iccma,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Apx => Format::Apx,
            FormatArg::Iccma => Format::Iccma,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "afmatrix",
    version,
    about = "Stable and complete extensions of abstract argumentation frameworks",
    args_conflicts_with_subcommands = true
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Problem to solve, e.g. EE-ST or DC-CO
    #[arg(long, short = 'p')]
    pub problem: Option<String>,

    /// Instance file
    #[arg(long, short = 'f')]
    pub file: Option<PathBuf>,

    /// Query argument for DC and DS problems
    #[arg(long, short = 'a')]
    pub arg: Option<String>,

    /// Instance format; detected from the content when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Stop enumeration after this many extensions
    #[arg(long)]
    pub limit: Option<usize>,

    /// Dump every visited matrix state to stderr
    #[arg(long)]
    pub trace: bool,

    /// Answer with the brute-force reference semantics instead
    #[arg(long, hide = true)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a seeded random instance in apx format
    Gen {
        #[arg(long, short = 'n')]
        n: usize,
        /// Probability of each attack between distinct arguments
        #[arg(long, short = 'p', default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each self-attack
        #[arg(long, default_value_t = 0.0)]
        self_attack: f64,
    },
    /// List supported problems
    Supports,
    /// Solve a seeded random instance and report timing and search counters
    Bench {
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, short = 'p', default_value_t = 0.05)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        self_attack: f64,
        #[arg(long, default_value = "EE-ST")]
        problem: String,
    },
}

/// A failure carrying its exit code and one-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::UnknownQueryArgument(_) => EXIT_UNKNOWN_ARGUMENT,
            SolveError::TooLarge { .. } => EXIT_TOO_LARGE,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

/// Runs the command line with the given arguments (program name first) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&config, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::new(EXIT_IO, e.to_string());
    match &config.command {
        Some(Command::Supports) => {
            for p in TaskSpec::ALL_PROBLEMS {
                writeln!(out, "{p}").map_err(io)?;
            }
            Ok(())
        }
        Some(Command::Gen {
            n,
            p,
            seed,
            self_attack,
        }) => {
            check_probability(*p)?;
            check_probability(*self_attack)?;
            let af = RandomAf::new(*n, *p, *seed)
                .with_self_attacks(*self_attack)
                .build();
            write!(out, "{}", af.to_apx()).map_err(io)
        }
        Some(Command::Bench {
            n,
            p,
            seed,
            self_attack,
            problem,
        }) => {
            check_probability(*p)?;
            check_probability(*self_attack)?;
            let task = TaskSpec::parse(problem, None)?;
            let af = RandomAf::new(*n, *p, *seed)
                .with_self_attacks(*self_attack)
                .build();
            let start = Instant::now();
            let result = solver::solve(&af, &task)?;
            let elapsed = start.elapsed();
            let count = match &result.answer {
                Answer::Extensions(v) => v.len(),
                Answer::Witness(w) => usize::from(w.is_some()),
                Answer::Decision(_) => 0,
            };
            writeln!(
                out,
                "problem={} n={} p={} seed={} attacks={} extensions={} elapsed_ms={:.3}",
                task.problem(),
                n,
                p,
                seed,
                af.attack_count(),
                count,
                elapsed.as_secs_f64() * 1e3
            )
            .map_err(io)?;
            writeln!(out, "{}", result.stats).map_err(io)
        }
        None => solve_instance(config, out, err),
    }
}

fn check_probability(p: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_USAGE,
            format!("probability {p} outside [0, 1]"),
        ))
    }
}

fn solve_instance(
    config: &CliConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let problem = config
        .problem
        .as_deref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "missing --problem"))?;
    let path = config
        .file
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "missing --file"))?;
    let task = TaskSpec::parse(problem, config.arg.clone())?;

    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    let format = config
        .format
        .map(Format::from)
        .unwrap_or_else(|| Format::detect(&text));
    let af = parse_af(&text, format).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;

    let answer = if config.oracle {
        oracle_answer(&af, &task)?
    } else if task.task == Task::EE && config.limit.is_some() {
        Answer::Extensions(solver::enumerate(&af, task.semantics, config.limit).extensions)
    } else if config.trace {
        let mut count = 0usize;
        let mut hook = |s: &MatrixState<'_>| {
            let _ = writeln!(err, "state {count}: {}", s.dump());
            let _ = write!(err, "{}", s.render_matrix());
            count += 1;
        };
        solver::solve_traced(&af, &task, Some(&mut hook))?.answer
    } else {
        solver::solve(&af, &task)?.answer
    };

    let text = render_answer(&af, &answer);
    writeln!(out, "{text}").map_err(|e| Failure::new(EXIT_IO, e.to_string()))
}

fn oracle_answer(af: &ArgumentationFramework, task: &TaskSpec) -> Result<Answer, Failure> {
    let query = solver::resolve_query(af, task)?;
    let kind = match task.semantics {
        Mode::Stable => SemanticsKind::Stable,
        Mode::Complete => SemanticsKind::Complete,
    };
    let family: BTreeSet<Extension> = oracle::enumerate_brute(af, kind)?;
    Ok(match task.task {
        Task::SE => Answer::Witness(family.iter().next().cloned()),
        Task::EE => Answer::Extensions(family.into_iter().collect()),
        Task::DC => {
            let q = query.expect("DC carries a query");
            Answer::Decision(family.iter().any(|e| e.contains(q)))
        }
        Task::DS => {
            let q = query.expect("DS carries a query");
            Answer::Decision(family.iter().all(|e| e.contains(q)))
        }
    })
}

/// Output grammar: `[a,c]` or `NO` for SE, `[[a,c],[b,d]]` for EE (sorted
/// by rendered extension), `YES` / `NO` for decisions.
pub fn render_answer(af: &ArgumentationFramework, answer: &Answer) -> String {
    match answer {
        Answer::Witness(Some(e)) => af.render_extension(e),
        Answer::Witness(None) => "NO".to_string(),
        Answer::Extensions(all) => {
            let mut rendered: Vec<String> = all.iter().map(|e| af.render_extension(e)).collect();
            rendered.sort();
            format!("[{}]", rendered.join(","))
        }
        Answer::Decision(true) => "YES".to_string(),
        Answer::Decision(false) => "NO".to_string(),
    }
}
