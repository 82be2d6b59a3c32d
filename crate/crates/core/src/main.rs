use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grouplat::harness::analysis::analyze;
use grouplat::harness::checks::{run_suite, Check};
use grouplat::harness::corpus::{builtin, corpus};
use grouplat::harness::groupfile::parse_group;
use grouplat::harness::report::{lattice_export, Format, Report};
use grouplat::{classify_t_pt_pst, Delta, Group, GroupClass, GroupError};

#[derive(Parser)]
#[command(name = "grouplat", version, about = "Subgroup lattices and chief-factor checks for small permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of one group.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Subgroup lattice with L_F / L_Delta membership.
    Lattice {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "central")]
        delta: String,
        #[arg(long, default_value = "nilpotent")]
        class: String,
        #[arg(long)]
        format: String,
    },
    /// Print T, PT, PST or NONE.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Run checks over corpus groups.
    Verify {
        /// Comma-separated check ids, optionally with a selector: THM-1.1ii[nilpotent].
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Comma-separated corpus names.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Built-in groups.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    builtin: Option<String>,
    file: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Failure {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn load(source: &Source) -> Result<Group, Failure> {
    if let Some(name) = &source.builtin {
        return builtin(name)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no built-in group named {name:?}")));
    }
    let path = source.file.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_group(&text).map_err(|e| match e {
        GroupError::Parse { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze { source, format } => {
            let g = load(&source)?;
            let a = analyze(&g)?;
            match format.parse::<Format>()? {
                Format::Text => print!("{}", a.to_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&a).expect("analysis serializes")
                ),
                Format::Dot => return Err(GroupError::UnsupportedFormat("dot".into()).into()),
            }
            Ok(true)
        }
        Command::Lattice {
            source,
            delta,
            class,
            format,
        } => {
            let g = load(&source)?;
            let delta: Delta = delta.parse()?;
            let class: GroupClass = class.parse()?;
            let format: Format = format.parse()?;
            print!("{}", lattice_export(&g, class, delta)?.render(format)?);
            Ok(true)
        }
        Command::Classify { source } => {
            let g = load(&source)?;
            println!("{}", classify_t_pt_pst(&g)?);
            Ok(true)
        }
        Command::Verify {
            checks,
            groups,
            max_order,
            format,
        } => {
            let format: Format = format.parse()?;
            let checks: Vec<Check> = if checks.is_empty() {
                Check::all()
            } else {
                checks
                    .iter()
                    .map(|c| c.parse())
                    .collect::<Result<_, GroupError>>()?
            };
            let mut selected: Vec<Group> = if groups.is_empty() {
                corpus().to_vec()
            } else {
                groups
                    .iter()
                    .map(|n| {
                        builtin(n)
                            .cloned()
                            .ok_or_else(|| Failure::Usage(format!("no built-in group named {n:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            if let Some(m) = max_order {
                selected.retain(|g| g.order() <= m);
            }
            let report = Report::new(run_suite(&selected, &checks));
            print!("{}", report.render(format)?);
            if format == Format::Json {
                println!();
            }
            let undecided = report.summary().undecided;
            if undecided > 0 {
                eprintln!("warning: {undecided} undecided cells");
            }
            Ok(!report.has_failures())
        }
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            for g in corpus() {
                println!("{:<8} order {:<3} degree {}", g.label(), g.order(), g.degree());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
