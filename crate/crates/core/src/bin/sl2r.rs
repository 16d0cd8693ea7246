use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sl2r::cli_report::{run, Command, ExitStatus, Family, OutputFormat, RunConfig, Suite};
use sl2r::ModelPoint;

#[derive(Parser, Debug)]
#[command(name = "sl2r", version, about = "Geodesic and translation triangles in the SL2R model")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Solver tolerance (find-pi), recorded in the JSON meta object.
    #[arg(long, global = true, default_value_t = sl2r::cli_report::DEFAULT_TOL)]
    tol: f64,

    #[arg(long, global = true, default_value_t = sl2r::cli_report::DEFAULT_SEED)]
    seed: u64,

    /// Sample count for verify, points per axis for sweep.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Shortest geodesic between two chart points.
    Geodesic {
        #[arg(long, value_parser = parse_point)]
        to: ModelPoint,
        #[arg(long, value_parser = parse_point, default_value = "0,0,0")]
        from: ModelPoint,
    },
    /// Translation curve between two chart points.
    Translate {
        #[arg(long, value_parser = parse_point)]
        to: ModelPoint,
        #[arg(long, value_parser = parse_point, default_value = "0,0,0")]
        from: ModelPoint,
    },
    /// Geodesic and translation angles of a triangle.
    Triangle {
        #[arg(long, value_parser = parse_point, default_value = "0,0,0")]
        a1: ModelPoint,
        #[arg(long, value_parser = parse_point)]
        a2: ModelPoint,
        #[arg(long, value_parser = parse_point)]
        a3: ModelPoint,
    },
    /// Fibre-like right triangles A3 = (x3, 0, 0), A2 = (0, y2, 0).
    Table3 {
        #[arg(long, default_value_t = 0.2)]
        x3: f64,
        /// Comma-separated y2 values; defaults to the reference rows plus limit rows.
        #[arg(long, value_delimiter = ',')]
        y2: Option<Vec<f64>>,
    },
    /// Hyperbolic-like right triangles A2 = (0, y2, 0), A3 = (0, 0, z3).
    Table4 {
        #[arg(long, default_value_t = 0.5)]
        y2: f64,
        /// Comma-separated z3 values; defaults to the reference rows plus the limit row.
        #[arg(long, value_delimiter = ',')]
        z3: Option<Vec<f64>>,
    },
    /// Bisection for a geodesic triangle with angle sum pi.
    FindPi {
        #[arg(long, value_parser = parse_point, default_value = "0,0.5,0")]
        a2: ModelPoint,
        #[arg(long, value_parser = parse_point, default_value = "0,0,0.5")]
        a3h: ModelPoint,
        #[arg(long, value_parser = parse_point, default_value = "0.5,0,0")]
        a3f: ModelPoint,
    },
    /// Grid sweep of a right-angled family.
    Sweep {
        #[arg(long, value_parser = parse_family, default_value = "fibre")]
        family: Family,
        /// Fix y2 and sweep only the A3 parameter.
        #[arg(long)]
        y2: Option<f64>,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
    },
}

fn parse_point(s: &str) -> Result<ModelPoint, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("`{c}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, z] => Ok(ModelPoint::new(x, y, z)),
        _ => Err(format!("expected x,y,z but got {} values", v.len())),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn config(cli: Cli) -> RunConfig {
    let command = match cli.command {
        Cmd::Geodesic { to, from } => Command::Geodesic { from, to },
        Cmd::Translate { to, from } => Command::Translate { from, to },
        Cmd::Triangle { a1, a2, a3 } => Command::Triangle {
            vertices: [a1, a2, a3],
        },
        Cmd::Table3 { x3, y2 } => Command::Table3 { x3, y2_values: y2 },
        Cmd::Table4 { y2, z3 } => Command::Table4 { y2, z3_values: z3 },
        Cmd::FindPi { a2, a3h, a3f } => Command::FindPi {
            a2,
            a3_h: a3h,
            a3_f: a3f,
        },
        Cmd::Sweep { family, y2 } => Command::Sweep { family, y2 },
        Cmd::Verify { suite } => Command::Verify { suite },
    };
    RunConfig {
        command,
        tol: cli.tol,
        seed: cli.seed,
        n: cli.n,
        format: match cli.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        },
        out: cli.out,
    }
}

fn exit(status: ExitStatus) -> ExitCode {
    ExitCode::from(status.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit(ExitStatus::BadArguments)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = config(cli);
    let output = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("sl2r: {e}");
            return exit(e.status);
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.body) {
                eprintln!("sl2r: cannot write {}: {e}", path.display());
                return exit(ExitStatus::BadArguments);
            }
        }
        None => print!("{}", output.body),
    }
    exit(output.status)
}
