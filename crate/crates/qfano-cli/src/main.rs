use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qfano::enumerate::FilterConfig;
use qfano::link::SearchCaps;
use qfano::rational::parse_rational;

use qfano_cli::commands::{self, CliError};
use qfano_cli::output::{self, Format as OutFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(
    name = "qfano",
    version,
    about = "Exact numerics for Q-Fano threefolds: candidate enumeration, \
             orbifold Riemann-Roch dimension tables, Sarkisov-link analysis \
             and model verification",
    after_help = "Set FANO_DATA_DIR to override the bundled status table and \
                  model registry. Exit codes: 0 success, 1 verification \
                  failure, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FilterFlags {
    /// Bound on q^3 A^3
    #[arg(long, default_value = "100")]
    max_cube: String,
    /// Integrality scan multiplier (range |k| <= 12 N m)
    #[arg(long, default_value_t = 12)]
    scan_multiplier: u32,
    /// Drop the chi(kA) >= 0 filter
    #[arg(long)]
    no_nonneg: bool,
    /// Drop the monotone-when-effective filter
    #[arg(long)]
    no_monotone: bool,
    /// Drop the intermediate vanishing filter chi(mA) = 0 for -q < m < 0
    #[arg(long)]
    no_vanishing: bool,
    /// Drop the degree bound 8q A^3 <= 9 A.c2
    #[arg(long)]
    no_degree_bound: bool,
}

impl FilterFlags {
    fn config(&self) -> Result<FilterConfig, CliError> {
        Ok(FilterConfig {
            max_anticanonical_cube: parse_rational(&self.max_cube)
                .map_err(|e| CliError(e.to_string()))?,
            integrality_scan_multiplier: self.scan_multiplier,
            require_nonneg: !self.no_nonneg,
            require_monotone_when_effective: !self.no_monotone,
            require_intermediate_vanishing: !self.no_vanishing,
            require_degree_c2_bound: !self.no_degree_bound,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the numerical candidates of a given Fano index
    Enumerate {
        /// Fano index q
        #[arg(long)]
        index: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Skip merging the shipped existence statuses (index 7 only)
        #[arg(long)]
        no_status: bool,
        #[command(flatten)]
        filters: FilterFlags,
    },
    /// Dimensions of the linear systems |kA| for given numerics
    Dims {
        #[arg(long)]
        index: u32,
        /// Basket string, e.g. 2,3:1,3:1,4:1
        #[arg(long)]
        basket: String,
        /// Degree A^3 as p/q
        #[arg(long)]
        a3: String,
        /// Largest multiple k to print (default: the index)
        #[arg(long)]
        max_k: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Analyze the Sarkisov-link system for a table case and blowup center
    Links {
        /// Case number in the index-7 table (1..=23)
        #[arg(long = "case")]
        case_no: usize,
        /// Center spec: `r=<index>` or `gorenstein:<alpha>`
        #[arg(long)]
        center: String,
        /// Discrepancy override for quotient centers (only 2/3 at r = 3)
        #[arg(long)]
        alpha: Option<String>,
        /// Threshold anchor system |k0 A|
        #[arg(long)]
        k0: Option<u32>,
        /// Comma-separated k values carried through the relations
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<u32>>,
        /// Impose the strict non-canonical premise beta_k0 > alpha
        #[arg(long)]
        not_canonical: bool,
        #[arg(long, default_value_t = 12)]
        max_e: u32,
        #[arg(long, default_value_t = 40)]
        max_s: i64,
        #[arg(long, default_value_t = 12)]
        max_m: i64,
        #[command(flatten)]
        filters: FilterFlags,
    },
    /// Survey candidates with dim |A| above a threshold across indices
    Survey {
        #[arg(long, default_value_t = 3)]
        from: u32,
        #[arg(long, default_value_t = 19)]
        to: u32,
        #[arg(long, default_value_t = 3)]
        threshold: i64,
        #[command(flatten)]
        filters: FilterFlags,
    },
    /// Check the model registry against the candidate table
    VerifyModels {
        #[command(flatten)]
        filters: FilterFlags,
    },
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let echo = command_echo();
    match cli.command {
        Command::Enumerate { index, format, no_status, filters } => {
            let cfg = filters.config()?;
            let (payload, tsv) = commands::cmd_enumerate(index, &cfg, !no_status)?;
            let format = if format == Format::Tsv { OutFormat::Tsv } else { OutFormat::Json };
            print!("{}", output::render(format, &echo, payload, tsv));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { index, basket, a3, max_k, format } => {
            let (payload, tsv) = commands::cmd_dims(index, &basket, &a3, max_k.unwrap_or(index))?;
            let format = if format == Format::Tsv { OutFormat::Tsv } else { OutFormat::Json };
            print!("{}", output::render(format, &echo, payload, tsv));
            Ok(ExitCode::SUCCESS)
        }
        Command::Links {
            case_no,
            center,
            alpha,
            k0,
            ks,
            not_canonical,
            max_e,
            max_s,
            max_m,
            filters,
        } => {
            let cfg = filters.config()?;
            let caps = SearchCaps { max_e, max_s, max_m };
            let (payload, _) = commands::cmd_links(
                case_no,
                &center,
                alpha.as_deref(),
                k0,
                ks,
                if not_canonical { Some(true) } else { None },
                caps,
                &cfg,
            )?;
            print!("{}", output::render(OutFormat::Json, &echo, payload, None));
            Ok(ExitCode::SUCCESS)
        }
        Command::Survey { from, to, threshold, filters } => {
            let cfg = filters.config()?;
            let (payload, _) = commands::cmd_survey(from, to, threshold, &cfg)?;
            print!("{}", output::render(OutFormat::Json, &echo, payload, None));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyModels { filters } => {
            let cfg = filters.config()?;
            let (payload, pass) = commands::cmd_verify_models(&cfg)?;
            print!("{}", output::render(OutFormat::Json, &echo, payload, None));
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
