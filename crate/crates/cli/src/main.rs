use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use grassqh::degree_zero::AVariant;
use grassqh_cli::acceptance::{run_all, Tier};
use grassqh_cli::commands::{self, CliResult};

/// Quantum cohomology of Grassmannians over ℚ and finite fields.
#[derive(Parser)]
#[command(name = "grassqh", version)]
struct Cli {
    /// Emit JSON where a command also has a text form.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum product A ∗ B in QH*(Gr(k,n); FIELD).
    Product {
        k: u32,
        n: u32,
        /// Q, GF(p) or GF(p^m).
        field: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Quantum Pieri product x_j ∗ ELEM (or the one-row class with --row).
    Pieri {
        k: u32,
        n: u32,
        field: String,
        j: u32,
        #[arg(allow_hyphen_values = true)]
        elem: String,
        /// Multiply by the single-row class of size j instead of the column class x_j.
        #[arg(long)]
        row: bool,
    },
    /// Matrix of the distinguished degree-zero element of QH*(Gr(2,n)) and its char poly.
    Matrix {
        n: u32,
        field: String,
        #[arg(long, value_enum, default_value_t = Variant::Primary)]
        variant: Variant,
    },
    /// Whether QH*(Gr(k,n)) is a graded field in characteristic CHAR, with the diameter verdict.
    Classify {
        k: u32,
        n: u32,
        /// 0 or a prime.
        char: String,
    },
    /// Orbits of {a, −a} under multiplication by p modulo n.
    Orbits { n: u64, p: u64 },
    /// Checks the evaluation maps at roots of unity: ideal vanishing and multiplicativity.
    Evcheck {
        k: u32,
        n: u32,
        field: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gelfand-Cetlin map and disk potential.
    Gc {
        #[command(subcommand)]
        command: GcCommand,
    },
    /// Runs the fast tier of the acceptance checks (the full tier with --full).
    Selftest {
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum GcCommand {
    /// Gelfand-Cetlin values of seeded random frames.
    Map {
        k: u32,
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use frames closed under the quaternionic structure (k, n even).
        #[arg(long)]
        quaternionic: bool,
        /// Number of consecutive seeds.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Critical point of the disk potential by Newton's method in log coordinates.
    Critical {
        k: u32,
        n: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Primary,
    Shifted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn run(cli: Cli) -> Result<ExitCode, commands::CliError> {
    let json = cli.json;
    let out: CliResult = match cli.command {
        Command::Product { k, n, field, a, b } => commands::product(k, n, &field, &a, &b, json),
        Command::Pieri { k, n, field, j, elem, row } => commands::pieri(k, n, &field, j, &elem, row, json),
        Command::Matrix { n, field, variant } => {
            let v = match variant {
                Variant::Primary => AVariant::Primary,
                Variant::Shifted => AVariant::Shifted,
            };
            commands::matrix(n, &field, v, json)
        }
        Command::Classify { k, n, char } => commands::classify(k, n, &char),
        Command::Orbits { n, p } => commands::orbits(n, p, json),
        Command::Evcheck { k, n, field, samples, seed } => commands::evcheck(k, n, &field, samples, seed),
        Command::Gc { command: GcCommand::Map { k, n, seed, quaternionic, count, format } } => {
            commands::gc_map_batch(k, n, seed, count, quaternionic, format == Format::Csv)
        }
        Command::Gc { command: GcCommand::Critical { k, n, tol } } => commands::gc_critical(k, n, tol),
        Command::Selftest { full } => {
            let outcomes = run_all(if full { Tier::Full } else { Tier::Fast });
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} of {} checks passed", outcomes.len() - failed, outcomes.len());
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) });
        }
    };
    println!("{}", out?);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
