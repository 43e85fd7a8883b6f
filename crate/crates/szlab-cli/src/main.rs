//! `sz`: command-line front end for szlab.
//!
//! Exit codes: 0 on success, 1 when a requested check fails or a
//! computation produces no certificate, 2 on malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use szlab::config::RunConfig;
use szlab::disc::{lift, Point, SetGeometry};
use szlab::envelope::{envelope_ball, envelope_glued, envelope_rational, v_grid, EnvelopeResult, Family};
use szlab::functionals::{i_of, i_quadrature, j_of, nu_of, FunctionalValue};
use szlab::glue::{gluing_upper_bound, GluingSpec};
use szlab::hull::{hull_test, HullOptions, HullStatus};
use szlab::io::{from_json, to_json, DiscFile};
use szlab::oracle::{closed_form, pde_green, poly_lower};
use szlab::verify::{run_suite, Suite};
use szlab::Error;

#[derive(Parser)]
#[command(
    name = "sz",
    version,
    about = "Disc functionals and certified bounds for the Siciak-Zahariuta extremal function"
)]
struct Cli {
    /// Run configuration (JSON); flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Optimizer restarts.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Write the JSON or CSV artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "nu")]
    Nu,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionalMethod {
    Exact,
    Quadrature,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Pde,
    Poly,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J, I or ν on a disc file.
    Functional {
        #[arg(long)]
        disc: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "exact")]
        method: FunctionalMethod,
        /// Boundary samples for quadrature.
        #[arg(long, default_value_t = 1 << 16)]
        grid: usize,
    },
    /// Upper bound from a gluing spec; fails when the boundary leaves the set.
    Glue {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Best certified upper bound at one point.
    Envelope {
        #[arg(long)]
        set: PathBuf,
        /// `re,im` per coordinate, coordinates separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "ball,rational,glued")]
        families: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Envelope values on a planar grid, as CSV `re,im,value,family`.
    EnvelopeGrid {
        #[arg(long)]
        set: PathBuf,
        /// `re0:re1:n,im0:im1:n`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value = "ball,rational")]
        families: String,
        /// Boundary resolution of the membership checks.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Reference value of the extremal function.
    Oracle {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum)]
        method: OracleKind,
        /// PDE cells per side.
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// PDE outer radius; defaults to 4 × the diameter of the set.
        #[arg(long = "R")]
        radius: Option<f64>,
        /// Polynomial degree for `poly`.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Surface samples per primitive for `poly`.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Polynomial-hull membership test.
    Hull {
        #[arg(long)]
        compact: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Neighbourhood radii relative to the diameter, decreasing.
        #[arg(long, default_value = "0.1,0.05,0.02,0.01")]
        schedule: String,
    },
    /// Run the acceptance criteria and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "full")]
        suite: String,
    },
}

/// Why a run stopped.
enum Fail {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Input { .. } | Error::Config(_) => Fail::Input(e.to_string()),
            other => Fail::Check(other.to_string()),
        }
    }
}

type Run<T = ()> = Result<T, Fail>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Run<T> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn read_set(path: &Path, cfg: &RunConfig) -> Run<SetGeometry> {
    let x: SetGeometry = read_json(path)?;
    if x.tolerance() < cfg.tolerances.membership {
        return x
            .with_tolerance(cfg.tolerances.membership)
            .map_err(|e| Fail::Input(format!("{}: {e}", path.display())));
    }
    Ok(x)
}

fn parse_point(s: &str, dimension: usize) -> Run<Point> {
    let bad = || {
        Fail::Input(format!(
            "--point {s:?}: expected `re,im` per coordinate, separated by `;`"
        ))
    };
    let p = s
        .split(';')
        .map(|c| {
            let (re, im) = c.split_once(',').ok_or_else(bad)?;
            Ok(Complex64::new(
                re.trim().parse().map_err(|_| bad())?,
                im.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect::<Run<Point>>()?;
    if p.len() != dimension {
        return Err(Fail::Input(format!(
            "--point has {} coordinates, the set has dimension {dimension}",
            p.len()
        )));
    }
    Ok(p)
}

fn parse_families(s: &str) -> Run<Vec<Family>> {
    s.split(',').map(|f| f.parse::<Family>().map_err(Fail::from)).collect()
}

/// `a:b:n` → `n` equally spaced values from `a` to `b`.
fn parse_axis(s: &str) -> Run<Vec<f64>> {
    let bad = || Fail::Input(format!("--grid axis {s:?}: expected `start:end:count`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let (a, b): (f64, f64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((0..n)
        .map(|k| {
            if n == 1 {
                a
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        })
        .collect())
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Run {
    let mut text = to_json(value).map_err(Fail::from)?;
    text.push('\n');
    write_text(&text, out)
}

fn write_text(text: &str, out: Option<&Path>) -> Run {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Check(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(cli: &Cli) -> Run<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => read_json(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(b) = cli.budget {
        cfg.budget = b;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    Ok(cfg)
}

fn with_grid(mut cfg: RunConfig, grid: Option<usize>) -> Run<RunConfig> {
    if let Some(g) = grid {
        cfg.grid = g;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn functional(disc: &Path, which: Which, method: FunctionalMethod, grid: usize) -> Run<FunctionalValue> {
    let d: DiscFile = read_json(disc)?;
    let lifted = |d: &DiscFile| match d {
        DiscFile::Factored(f) => lift(f),
        DiscFile::Lifted(l) => Ok(l.clone()),
    };
    let v = match (which, method) {
        (Which::J, FunctionalMethod::Exact) => j_of(&lifted(&d)?)?,
        (Which::I, FunctionalMethod::Exact) => i_of(&lifted(&d)?)?,
        (Which::I, FunctionalMethod::Quadrature) => i_quadrature(&lifted(&d)?, grid)?,
        (Which::Nu, FunctionalMethod::Exact) => match &d {
            DiscFile::Factored(f) => nu_of(f),
            DiscFile::Lifted(_) => {
                return Err(Fail::Input("ν is defined on factored discs, not liftings".into()));
            }
        },
        (_, FunctionalMethod::Quadrature) => {
            return Err(Fail::Input("only I has a quadrature method".into()));
        }
    };
    Ok(v)
}

fn envelope(x: &SetGeometry, z: &Point, families: &[Family], degree: usize, cfg: &RunConfig) -> Run<EnvelopeResult> {
    let opts = cfg.envelope_options();
    let mut best: Option<EnvelopeResult> = None;
    let mut errors = Vec::new();
    for f in families {
        let r = match f {
            Family::Ball => envelope_ball(x, z, &opts),
            Family::Rational => envelope_rational(x, z, degree, cfg.budget, cfg.seed, &opts),
            Family::Glued => envelope_glued(x, z, cfg.budget, cfg.seed, &opts),
        };
        match r {
            Ok(r) if best.as_ref().is_none_or(|b| r.value < b.value) => best = Some(r),
            Ok(_) => {}
            Err(Error::Geometry(m)) => return Err(Fail::Input(m)),
            Err(e) => errors.push(format!("{f}: {e}")),
        }
    }
    best.ok_or_else(|| Fail::Check(format!("no family produced a certificate ({})", errors.join("; "))))
}

fn grid_csv(x: &SetGeometry, spec: &str, families: &[Family], cfg: &RunConfig) -> Run<String> {
    if x.dimension() != 1 {
        return Err(Fail::Input("envelope-grid needs a planar set".into()));
    }
    let (re, im) = spec
        .split_once(',')
        .ok_or_else(|| Fail::Input(format!("--grid {spec:?}: expected `re0:re1:n,im0:im1:n`")))?;
    let (re, im) = (parse_axis(re)?, parse_axis(im)?);
    let points: Vec<Point> = im
        .iter()
        .flat_map(|&b| re.iter().map(move |&a| vec![Complex64::new(a, b)]))
        .collect();
    let values = v_grid(x, &points, families, cfg.budget, cfg.seed, &cfg.envelope_options())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Fail::Check(e.to_string());
    w.write_record(["re", "im", "value", "family"]).map_err(csv_err)?;
    for p in &values {
        w.write_record([
            p.z[0].re.to_string(),
            p.z[0].im.to_string(),
            p.value.to_string(),
            p.family.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Fail::Check(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Fail::Check(e.to_string()))
}

fn run(cli: Cli) -> Run {
    let cfg = load_config(&cli)?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Functional {
            disc,
            which,
            method,
            grid,
        } => emit(&functional(&disc, which, method, grid)?, out),
        Command::Glue { spec, set, grid } => {
            let cfg = with_grid(cfg, grid)?;
            let spec: GluingSpec = read_json(&spec)?;
            let x = read_set(&set, &cfg)?;
            let b = gluing_upper_bound(&spec, &x, cfg.grid)?;
            emit(&b, out)?;
            if b.valid {
                Ok(())
            } else {
                Err(Fail::Check(format!(
                    "the glued boundary leaves the set (fraction inside {})",
                    b.boundary_report.fraction_inside
                )))
            }
        }
        Command::Envelope {
            set,
            point,
            families,
            degree,
            grid,
        } => {
            let cfg = with_grid(cfg, grid)?;
            let x = read_set(&set, &cfg)?;
            let z = parse_point(&point, x.dimension())?;
            let r = envelope(&x, &z, &parse_families(&families)?, degree, &cfg)?;
            if out.is_some() {
                eprintln!("{} ({})", r.value, r.family);
            }
            emit(&r, out)
        }
        Command::EnvelopeGrid {
            set,
            grid,
            families,
            resolution,
        } => {
            let cfg = with_grid(cfg, resolution)?;
            let x = read_set(&set, &cfg)?;
            write_text(&grid_csv(&x, &grid, &parse_families(&families)?, &cfg)?, out)
        }
        Command::Oracle {
            set,
            point,
            method,
            grid,
            radius,
            degree,
            samples,
        } => {
            let x = read_set(&set, &cfg)?;
            let z = parse_point(&point, x.dimension())?;
            let v = match method {
                OracleKind::Closed => closed_form(&x, &z)?,
                OracleKind::Pde => pde_green(&x, z[0], grid, radius.unwrap_or(4.0 * x.diameter()))?,
                OracleKind::Poly => poly_lower(&x.surface_samples(samples), &z, degree, cfg.budget, cfg.seed)?,
            };
            emit(&v, out)
        }
        Command::Hull {
            compact,
            point,
            eps,
            schedule,
        } => {
            let k: SetGeometry = read_json(&compact)?;
            let a = parse_point(&point, k.dimension())?;
            let schedule = schedule
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Fail::Input(format!("--schedule {schedule:?}: expected comma-separated numbers")))?;
            let opts = HullOptions {
                eps,
                schedule,
                envelope: cfg.envelope_options(),
                budget: cli.budget.unwrap_or(HullOptions::default().budget),
                seed: cfg.seed,
                ..HullOptions::default()
            };
            let v = hull_test(&k, &a, &opts);
            eprintln!("{:?}", v.status);
            emit(&v, out)?;
            if v.contradiction {
                return Err(Fail::Check("contradictory certificates".into()));
            }
            if v.status == HullStatus::Inconclusive
                && v.schedule
                    .iter()
                    .any(|l| l.error.as_deref() == Some("invalid hull input"))
            {
                return Err(Fail::Input("invalid hull input: check --eps and --schedule".into()));
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let rows = run_suite(suite);
            for r in &rows {
                println!("{r}");
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", rows.len() - failed, rows.len());
            if let Some(p) = out {
                fs::write(p, to_json(&rows)? + "\n").map_err(|e| Fail::Check(format!("{}: {e}", p.display())))?;
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(Fail::Check(format!("{failed} criteria failed")))
            }
        }
    }
}

fn threads() -> Run {
    let Ok(v) = std::env::var("SZ_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Fail::Input(format!("SZ_THREADS={v:?} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Fail::Check(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
