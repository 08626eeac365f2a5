//! `ogwalls`: walls, cones and Bayer-Macrì images for O'Grady-type Mukai vectors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ogrady_walls::arith::parse_rat;
use ogrady_walls::config::{OutputFormat, RunConfig};
use ogrady_walls::report::{bm_text, classify_text, cones_text, walls_text, BmReport, Bounds, ClassifyReport, ConesReport, WallsReport};
use ogrady_walls::slice::SlicePoint;
use ogrady_walls::svg::render_walls;
use ogrady_walls::{Error, MukaiVector};
use num_rational::BigRational;

const AFTER_HELP: &str = "\
Mukai vectors are written r,c,a and stand for (r, cH, a) with H^2 = 2d, so
the pairing is 2d*c*c' - r*a' - a*r'. Rationals are p, p/q or decimals.

Settings are read from --config, or else from the file named by
OGWALLS_CONFIG, as key=value lines (d, v, u_min, u_max, t_max, rank_bound,
ts_search_bound, format, out). Flags override the file.

Exit status: 0 on success, 1 on usage errors, 2 on mathematical errors.";

#[derive(Parser)]
#[command(name = "ogwalls", version, about = "Wall-and-chamber computations for O'Grady-type Mukai vectors on Picard-rank-one K3 surfaces", after_help = AFTER_HELP)]
struct Cli {
    /// key=value config file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// H^2 = 2d.
    #[arg(long)]
    d: Option<u64>,
    /// json, svg or text.
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the wall spanned by v and u.
    Classify {
        #[command(flatten)]
        common: Common,
        /// O'Grady-type vector r,c,a.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Second generator of the wall lattice.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Coordinate bound for the TS1 search.
        #[arg(long)]
        ts_bound: Option<u64>,
    },
    /// Movable and nef cones of M(2,0,-2).
    Cones {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate and classify the walls meeting a window of the (u,t) half-plane.
    Walls {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u_min: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u_max: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t_max: Option<String>,
        /// Largest |rank| of candidate classes.
        #[arg(long)]
        rank_bound: Option<u64>,
        #[arg(long)]
        ts_bound: Option<u64>,
        /// Omit the cone fan panel from SVG output.
        #[arg(long)]
        no_fan: bool,
    },
    /// Bayer-Macrì image of the stability condition at u + i t.
    Bm {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// JSON wall report from `walls`; locates the point relative to its walls.
        #[arg(long, value_name = "FILE")]
        walls: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_vector(s: &str) -> Result<MukaiVector, Failure> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn parse_q(name: &str, s: &str) -> Result<BigRational, Failure> {
    parse_rat(s).ok_or_else(|| usage(format!("--{name}: expected a rational, got `{s}`")))
}

fn apply_common(cfg: &mut RunConfig, c: &Common) -> Result<(), Failure> {
    if let Some(d) = c.d {
        cfg.d = d;
    }
    if let Some(f) = &c.format {
        cfg.output_format = f.parse().map_err(|e: Error| usage(e.to_string()))?;
    }
    if let Some(o) = &c.out {
        cfg.out_path = Some(o.clone());
    }
    Ok(())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), Failure> {
    match &cfg.out_path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Domain(Error::Io(format!("cannot write {p}: {e}")))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn no_svg(cfg: &RunConfig, cmd: &str) -> Result<(), Failure> {
    if cfg.output_format == OutputFormat::Svg {
        return Err(usage(format!("`{cmd}` has no SVG output; use json or text")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = RunConfig::load(cli.config.as_deref()).map_err(|e| usage(e.to_string()))?;
    match cli.command {
        Command::Classify { common, v, u, ts_bound } => {
            apply_common(&mut cfg, &common)?;
            if let Some(v) = v {
                cfg.vector = parse_vector(&v)?;
            }
            if let Some(b) = ts_bound {
                cfg.ts_search_bound = b;
            }
            no_svg(&cfg, "classify")?;
            let u = parse_vector(&u)?;
            let rep = ClassifyReport::compute(&cfg.vector, &u, cfg.d, cfg.ts_search_bound)?;
            let body = if cfg.output_format == OutputFormat::Text { classify_text(&rep) } else { json(&rep) };
            emit(&cfg, &body)
        }
        Command::Cones { common } => {
            apply_common(&mut cfg, &common)?;
            no_svg(&cfg, "cones")?;
            let rep = ConesReport::compute(cfg.d)?;
            let body = if cfg.output_format == OutputFormat::Text { cones_text(&rep) } else { json(&rep) };
            emit(&cfg, &body)
        }
        Command::Walls { common, v, u_min, u_max, t_max, rank_bound, ts_bound, no_fan } => {
            apply_common(&mut cfg, &common)?;
            if let Some(v) = v {
                cfg.vector = parse_vector(&v)?;
            }
            if let Some(x) = u_min {
                cfg.window.u_min = parse_q("u-min", &x)?;
            }
            if let Some(x) = u_max {
                cfg.window.u_max = parse_q("u-max", &x)?;
            }
            if let Some(x) = t_max {
                cfg.window.t_max = parse_q("t-max", &x)?;
            }
            if let Some(b) = rank_bound {
                cfg.rank_bound = b;
            }
            if let Some(b) = ts_bound {
                cfg.ts_search_bound = b;
            }
            let bounds = Bounds { rank_bound: cfg.rank_bound, ts_search_bound: cfg.ts_search_bound };
            let rep = WallsReport::compute(&cfg.vector, cfg.d, &cfg.window, bounds)?;
            let body = match cfg.output_format {
                OutputFormat::Json => json(&rep),
                OutputFormat::Text => walls_text(&rep),
                OutputFormat::Svg => render_walls(&rep, !no_fan)?,
            };
            emit(&cfg, &body)
        }
        Command::Bm { common, v, u, t, walls } => {
            apply_common(&mut cfg, &common)?;
            if let Some(v) = v {
                cfg.vector = parse_vector(&v)?;
            }
            no_svg(&cfg, "bm")?;
            let (u, t) = (parse_q("u", &u)?, parse_q("t", &t)?);
            let point = SlicePoint::new(u, t)?;
            let wall_report: Option<WallsReport> = match walls {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Some(serde_json::from_str(&text).map_err(|e| usage(format!("{}: not a wall report: {e}", path.display())))?)
                }
                None => None,
            };
            let rep = BmReport::compute(&cfg.vector, cfg.d, &point, wall_report.as_ref())?;
            let body = if cfg.output_format == OutputFormat::Text { bm_text(&rep) } else { json(&rep) };
            emit(&cfg, &body)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
