use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use super::corpus::{load_corpus_dir, run_corpus, selftest};
use super::report::{chartable_data, classes_data, GroupEcho, Report, SpaceEcho};
use super::spec::resolve_group_arg;
use crate::center::CenterData;
use crate::iso::{
    candidate_checks, search_all_candidates, search_integral_isomorphisms, space_sizes, verify_c4, verify_csc,
    verify_nilpotent_theorem, Check, IsoError, IsoProblem, SearchOptions, Verification, DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(
    name = "centrum",
    version,
    about = "Centers of integral group rings and their isomorphisms"
)]
struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Largest search space to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes and structure constants.
    Classes { spec: String },
    /// Character table.
    Chartable { spec: String },
    /// Integral isomorphisms between the centers of two groups.
    Iso {
        src: String,
        dst: String,
        /// Report every candidate in the pruned space, integral or not.
        #[arg(long)]
        all: bool,
    },
    /// Class sum correspondence for every integral isomorphism.
    VerifyCsc { src: String, dst: String },
    /// Monomiality and upper central series matching for nilpotent groups.
    VerifyNilpotent { src: String, dst: String },
    /// Isomorphic centers versus identical character tables.
    VerifyC4 { src: String, dst: String },
    /// Every check over the group files of a directory.
    Corpus {
        dir: PathBuf,
        /// Also load the files under `<dir>/extended`.
        #[arg(long)]
        extended: bool,
    },
    /// Every invariant on the builtin corpus.
    Selftest,
}

enum Failure {
    Input(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<IsoError> for Failure {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::SearchSpaceExceeded { .. } => Failure::Budget(e.to_string()),
            IsoError::NotNilpotent(_) | IsoError::Incompatible(..) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn load(arg: &str) -> Result<CenterData, Failure> {
    let (name, group) = resolve_group_arg(arg).map_err(|e| Failure::Input(e.to_string()))?;
    CenterData::new(name, group).map_err(|e| Failure::Internal(e.to_string()))
}

fn announce_space(src: &CenterData, dst: &CenterData, options: &SearchOptions, report: &mut Report) {
    let Ok(problem) = IsoProblem::new(src, dst) else {
        return;
    };
    let (degree_pruned, visited) = space_sizes(&problem, options);
    eprintln!("search space: {degree_pruned} after degree prunes, {visited} to visit");
    report.conductor = Some(problem.conductor());
    report.search_space = Some(SpaceEcho { degree_pruned, visited });
}

fn pair_report(
    command: &str,
    src: &CenterData,
    dst: &CenterData,
    options: &SearchOptions,
    run: fn(&CenterData, &CenterData, &SearchOptions) -> Result<Verification, IsoError>,
) -> Result<Report, Failure> {
    let mut report = Report::new(command);
    report.groups = vec![GroupEcho::of(src), GroupEcho::of(dst)];
    announce_space(src, dst, options, &mut report);
    let v = run(src, dst, options)?;
    report.candidates = v.candidates;
    report.checks = v.checks;
    Ok(report)
}

fn iso_report(src: &CenterData, dst: &CenterData, all: bool, options: &SearchOptions) -> Result<Report, Failure> {
    // the full listing shows the non-integral candidates the Galois prune
    // would skip
    let options = &SearchOptions {
        galois_prune: !all,
        ..*options
    };
    let mut report = Report::new(if all { "iso --all" } else { "iso" });
    report.groups = vec![GroupEcho::of(src), GroupEcho::of(dst)];
    announce_space(src, dst, options, &mut report);
    let Ok(problem) = IsoProblem::new(src, dst) else {
        report
            .checks
            .push(Check::pass("orders or class counts differ: no candidates"));
        return Ok(report);
    };
    report.candidates = if all {
        search_all_candidates(&problem, options)?
    } else {
        search_integral_isomorphisms(&problem, options)?.candidates
    };
    candidate_checks(&problem, &report.candidates, &mut report.checks);
    Ok(report)
}

fn execute(cli: &Cli, options: &SearchOptions) -> Result<Report, Failure> {
    match &cli.command {
        Command::Classes { spec } => {
            let g = load(spec)?;
            let mut r = Report::new("classes");
            r.groups = vec![GroupEcho::of(&g)];
            r.data = Some(classes_data(&g));
            Ok(r)
        }
        Command::Chartable { spec } => {
            let g = load(spec)?;
            let mut r = Report::new("chartable");
            r.groups = vec![GroupEcho::of(&g)];
            r.conductor = Some(g.table.conductor());
            r.data = Some(chartable_data(&g));
            let axioms = g.table.check_axioms(&g.algebra);
            r.checks.push(Check::from_bool(
                "character table axioms",
                axioms.is_ok(),
                || serde_json::json!({ "error": axioms.as_ref().err().map(ToString::to_string) }),
            ));
            Ok(r)
        }
        Command::Iso { src, dst, all } => iso_report(&load(src)?, &load(dst)?, *all, options),
        Command::VerifyCsc { src, dst } => pair_report("verify-csc", &load(src)?, &load(dst)?, options, verify_csc),
        Command::VerifyNilpotent { src, dst } => pair_report(
            "verify-nilpotent",
            &load(src)?,
            &load(dst)?,
            options,
            verify_nilpotent_theorem,
        ),
        Command::VerifyC4 { src, dst } => pair_report("verify-c4", &load(src)?, &load(dst)?, options, verify_c4),
        Command::Corpus { dir, extended } => {
            let loaded = load_corpus_dir(dir, *extended).map_err(|e| Failure::Input(e.to_string()))?;
            let groups = loaded
                .into_iter()
                .map(|(name, g)| CenterData::new(name, g).map_err(|e| Failure::Internal(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(run_corpus(
                if *extended { "corpus --extended" } else { "corpus" },
                &groups,
                options,
            ))
        }
        Command::Selftest => Ok(selftest(options)),
    }
}

/// Parses `argv` (program name first), runs the command, writes the
/// report, and returns the process exit code: 0 when every check passes,
/// 1 on a failed check, 2 on bad input, 3 when the search budget is
/// exceeded.
pub fn run_command<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    let options = SearchOptions {
        budget: cli.budget,
        threads: cli.threads.max(1),
        galois_prune: true,
    };
    let started = Instant::now();
    let report = match execute(&cli, &options) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return f.code();
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    let text = report.to_json();
    let written = match &cli.json {
        Some(path) => std::fs::write(path, &text).and_then(|()| {
            writeln!(
                out,
                "{}: {} checks, {} failed, {} candidates",
                report.command,
                report.checks.len(),
                report.failures(),
                report.candidates.len()
            )
        }),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if report.passed() {
        0
    } else {
        1
    }
}
