use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperreg_core::generators::FamilySpec;
use hyperreg_core::homology::Field;
use hyperreg_core::report::{InvariantReport, ReportOptions};
use hyperreg_core::verify::{self, Cmp, Suite, VerifyOptions};
use hyperreg_core::{Error, Hypergraph, Limits};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperreg", version, about = "Invariants of simple hypergraphs and checks of their theorems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: q, f2, f3, ...
    #[arg(long, default_value = "q")]
    field: String,
    /// Edge-count cap for the exact matching, bouquet and cycle searches.
    #[arg(long)]
    edge_cap: Option<usize>,
    /// Longest Berge cycle the cycle search accepts.
    #[arg(long)]
    cycle_limit: Option<usize>,
}

impl Common {
    fn field(&self) -> Result<Field, Error> {
        self.field.parse()
    }

    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(k) = self.edge_cap {
            l.matching_edges = k;
            l.bouquet_edges = k;
            l.cycle_edges = k;
        }
        if let Some(c) = self.cycle_limit {
            l.cycle_length = c;
        }
        l
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of one instance.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Leave out Betti numbers, reg, pd and the statements that need them.
        #[arg(long)]
        skip_homology: bool,
    },
    /// Evaluate one statement on one instance.
    Check {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        common: Common,
        /// Invert every comparison (harness self-test).
        #[arg(long)]
        self_test: bool,
    },
    /// Run a statement over a whole instance family.
    Verify {
        suite: String,
        /// Family spec as JSON, or a path to a JSON file.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for counterexample instance files.
        #[arg(long)]
        cex_dir: Option<PathBuf>,
        /// Invert every comparison (harness self-test).
        #[arg(long)]
        self_test: bool,
        /// Skip the statements asserted alongside every suite.
        #[arg(long)]
        no_ambient: bool,
        /// Record elapsed time in the report.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the statements that `check` and `verify` accept.
    Suites,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { EXIT_CAP } else { EXIT_INPUT })
        }
    }
}

fn read_instance(path: &Path) -> Result<Hypergraph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Hypergraph::from_json_str(&text)
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Suites => {
            for s in Suite::ALL {
                println!("{:<18} {}", s.name(), s.statement());
            }
            Ok(0)
        }
        Command::Invariants {
            file,
            common,
            skip_homology,
        } => {
            let h = read_instance(&file)?;
            let opts = ReportOptions {
                field: common.field()?,
                limits: common.limits(),
                skip_homology,
            };
            let report = InvariantReport::build(&h, &opts)?;
            println!("{}", report.to_json_string());
            eprint!("{}", report.summary());
            Ok(report.exit_status() as u8)
        }
        Command::Check {
            file,
            theorem,
            common,
            self_test,
        } => {
            let suite: Suite = theorem.parse()?;
            let h = read_instance(&file)?;
            let cmp = if self_test { Cmp::planted() } else { Cmp::default() };
            let v = verify::check(&h, suite, common.field()?, &common.limits(), cmp)?;
            println!("{}", serde_json::to_string_pretty(&v).expect("verdict serializes"));
            eprintln!(
                "{suite}: hypotheses {}, conclusion {}",
                v.hypotheses_hold,
                v.conclusion_holds.map_or("not evaluated".to_owned(), |c| c.to_string())
            );
            Ok(if v.conclusion_holds == Some(false) { EXIT_VIOLATION } else { 0 })
        }
        Command::Verify {
            suite,
            family,
            jobs,
            out,
            cex_dir,
            self_test,
            no_ambient,
            timing,
            common,
        } => {
            let suite: Suite = suite.parse()?;
            let text = if family.trim_start().starts_with('{') {
                family
            } else {
                fs::read_to_string(&family).map_err(|e| Error::Parse(format!("{family}: {e}")))?
            };
            let spec = FamilySpec::from_json_str(&text)?;
            let opts = VerifyOptions {
                jobs,
                field: common.field()?,
                limits: common.limits(),
                self_test,
                ambient: !no_ambient,
                timing,
            };
            let mut report = verify::verify(suite, &spec, &opts)?;
            if !report.counterexamples.is_empty() {
                let dir = cex_dir.unwrap_or_else(|| match &out {
                    Some(o) => {
                        let mut name = o.file_stem().unwrap_or_default().to_os_string();
                        name.push("-counterexamples");
                        o.with_file_name(name)
                    }
                    None => PathBuf::from("counterexamples"),
                });
                for c in &mut report.counterexamples {
                    let path = dir.join(format!("{}-{}.json", c.suite, c.index));
                    let body = serde_json::to_string_pretty(&c.instance).expect("instance serializes");
                    write(&path, &body)?;
                    c.file = Some(path.display().to_string());
                    eprintln!(
                        "counterexample: hyperreg check {} --theorem {}",
                        path.display(),
                        c.suite
                    );
                }
            }
            let body = serde_json::to_string_pretty(&report).expect("report serializes");
            match &out {
                Some(path) => write(path, &body)?,
                None => println!("{body}"),
            }
            eprintln!(
                "{suite}: {} instances, {} tested, {} counterexamples, {} capped",
                report.instances_generated,
                report.instances_tested,
                report.counterexamples.len(),
                report.instances_capped
            );
            Ok(report.exit_status as u8)
        }
    }
}
