use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wittcalc::exact::poly_parse;
use wittcalc::suites::{run_suite, SuiteParams, SUITE_NAMES};
use wittcalc::wittm::{membership, v_ring, MembershipOptions};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "wittcalc",
    version,
    about = "Exact verification suites for the odd-slot tower, its Borel classes and the module M"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Run {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        /// Series degree, largest pairing size, Newton degree.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Tower truncation N; largest n in hgr-quotient.
        #[arg(long)]
        truncation: Option<usize>,
        /// Tower length L.
        #[arg(long)]
        tower_length: Option<usize>,
        /// Largest generator index j for m-module closure.
        #[arg(long)]
        j_max: Option<u32>,
        /// Largest |n| for m-module closure.
        #[arg(long)]
        n_window: Option<i64>,
        /// Restrict m-module to one check: f10-squared, closure or denominators.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Certify membership of a Laurent polynomial in v in the module M.
    Membership {
        poly: String,
        #[arg(long, default_value_t = 6)]
        j_max: u32,
        #[arg(long, default_value_t = 6)]
        n_window: i64,
        /// Solve in the single shift f_{j,shift}, without the lattice fallback.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { suite, max_degree, truncation, tower_length, j_max, n_window, check, format, out, jobs } => {
            let params = SuiteParams { max_degree, truncation, tower_length, j_max, n_window, check };
            run(&suite, &params, format, out, jobs)
        }
        Command::Membership { poly, j_max, n_window, shift, format } => {
            membership_cmd(&poly, MembershipOptions { j_max, n_window, shift }, format)
        }
    }
}

fn run(suite: &str, params: &SuiteParams, format: Format, out: Option<PathBuf>, jobs: usize) -> ExitCode {
    let pool = match rayon_pool(jobs) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let report = match pool.install(|| run_suite(suite, params)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let body = match format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report is plain data") + "\n",
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
            println!("suite {}: {} (report written to {})", report.suite, report.status, path.display());
        }
        None => print!("{body}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build()
}

fn membership_cmd(text: &str, opts: MembershipOptions, format: Format) -> ExitCode {
    if opts.n_window < 0 {
        eprintln!("error: --n-window must be non-negative");
        return ExitCode::from(EXIT_USAGE);
    }
    let g = match poly_parse(text, &v_ring()) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cert = membership(&g, opts);
    match format {
        Format::Text => print!("{}", cert.describe()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&cert).expect("certificate is plain data")),
    }
    if cert.is_member() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
