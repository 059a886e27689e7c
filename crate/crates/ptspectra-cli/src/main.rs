//! Command-line front end for the quartic-oscillator solvers.
//!
//! Subcommands: `spectrum` (shooting eigenvalues for a preset or custom
//! potential), `partition` (D = 0 partition functions, closed form or
//! quadrature), `mk` (perturbative series), `conjecture` (branch-average
//! suites), `contour` (Stokes-wedge geometry), `reproduce` (reference-table
//! recomputation with deviations).
//!
//! Exit status: 0 on success, 1 on numerical non-convergence, 2 on domain or
//! configuration errors. `PTSPECTRA_THREADS` caps the worker count.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptspectra::conjecture::{self, Suite};
use ptspectra::potential::{parse_key_value_spec, HamiltonianPreset, PotentialSpec, QuarticSign};
use ptspectra::reproduce::reproduce_table;
use ptspectra::shooting::{self, ScanOutcome, SecantOptions};
use ptspectra::stokes;
use ptspectra::zdim0::{self, PartitionCase, QuadMethod, QuadratureSpec};
use ptspectra::{Error, Result};
use render::{Cell, Format, Table};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "ptspectra", version, about = "Quartic-oscillator spectra and partition functions in the Hermitian and PT-symmetric phases")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Shorthand for --format json
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues by complex-contour shooting
    Spectrum(SpectrumArgs),
    /// Zero-dimensional partition functions
    Partition(PartitionArgs),
    /// Perturbative energy series of the massive oscillator
    Mk(MkArgs),
    /// Branch-average conjecture suites
    Conjecture(ConjectureArgs),
    /// Stokes-wedge contour geometry and ray polylines
    Contour(ContourArgs),
    /// Recompute a reference table and report deviations
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Preset name: v1..v6, massive-ao, massless-quartic, pt-inverted, anomaly
    #[arg(long)]
    preset: Option<String>,
    /// Plain-text key=value potential file (keys a, c1, c2, c4, delta, c4_sign)
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// Mass parameter of the preset (or of the raw delta family)
    #[arg(long)]
    m: Option<f64>,
    /// Coupling of the preset (or of the raw delta family)
    #[arg(long)]
    g: Option<f64>,
    /// Raw deformation family V = m^2 x^2/2 + (g/4) x^2 (ix)^delta
    #[arg(long)]
    delta: Option<f64>,
    /// Number of levels to locate
    #[arg(long, default_value_t = 5)]
    levels: usize,
    #[arg(long)]
    e_lo: Option<f64>,
    #[arg(long)]
    e_hi: Option<f64>,
    /// Truncation radius override
    #[arg(long)]
    r0: Option<f64>,
    /// Radial step override (default 5e-4)
    #[arg(long)]
    step: Option<f64>,
    /// |A| samples across the energy window
    #[arg(long, default_value_t = shooting::DEFAULT_SCAN_GRID)]
    grid: usize,
    #[arg(long)]
    tol_a: Option<f64>,
    #[arg(long)]
    tol_e: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Cross-check real-axis spectra against the oscillator-basis oracle
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct PartitionArgs {
    /// Case: Z1..Z8, Z2N5, Z2N6
    #[arg(long)]
    case: String,
    #[arg(long)]
    g: f64,
    /// Mass for the eps = g/m^4 cases and the multi-component family
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Multi-component index N (Z2N5/Z2N6)
    #[arg(long = "N", alias = "n")]
    n: Option<u32>,
    /// Evaluate the defining contour integral instead of the closed form
    #[arg(long)]
    quadrature: bool,
    /// Quadrature rule
    #[arg(long, value_enum, default_value_t = MethodArg::Simpson)]
    method: MethodArg,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Simpson,
    Gauss,
}

#[derive(Args)]
struct MkArgs {
    /// Level index k (q0 = 2k + 1)
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: f64,
    #[arg(long)]
    g: f64,
    /// Also print the one-instanton imaginary magnitude
    #[arg(long)]
    imag: bool,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Suite: d0-all, weak-energy, strong-energy, multicomponent
    #[arg(long)]
    suite: String,
}

#[derive(Args)]
struct ContourArgs {
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Points per ray in the emitted polylines
    #[arg(long, default_value_t = 65)]
    points: usize,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table id, 1..=5
    #[arg(long)]
    table: u8,
}

fn main() {
    if let Ok(threads) = std::env::var("PTSPECTRA_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    let format = match (cli.json, cli.format) {
        (true, _) => Format::Json,
        (false, Some(FormatArg::Json)) => Format::Json,
        (false, Some(FormatArg::Csv)) => Format::Csv,
        _ => Format::Human,
    };
    match dispatch(cli.command, format) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::Config(_)
        | Error::UnsupportedClosedForm(_)
        | Error::ContractViolation(_) => 2,
        _ => 1,
    }
}

fn emit(table: &Table, json_override: Option<Value>, format: Format) {
    match (format, json_override) {
        (Format::Json, Some(v)) => println!("{}", serde_json::to_string_pretty(&v).unwrap()),
        (f, _) => print!("{}", table.render(f)),
    }
}

fn dispatch(command: Command, format: Format) -> Result<i32> {
    match command {
        Command::Spectrum(args) => run_spectrum(args, format),
        Command::Partition(args) => run_partition(args, format),
        Command::Mk(args) => run_mk(args, format),
        Command::Conjecture(args) => run_conjecture(args, format),
        Command::Contour(args) => run_contour(args, format),
        Command::Reproduce(args) => run_reproduce(args, format),
    }
}

fn resolve_potential(args: &SpectrumArgs) -> Result<(PotentialSpec, String)> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        return Ok((parse_key_value_spec(&text)?, format!("config:{}", path.display())));
    }
    if let Some(name) = &args.preset {
        let preset = HamiltonianPreset::parse(name, args.m, args.g)?;
        return Ok((preset.to_spec()?, name.clone()));
    }
    if let Some(delta) = args.delta {
        let m = args.m.unwrap_or(0.0);
        let g = args
            .g
            .ok_or_else(|| Error::Config("raw --delta potential requires --g".into()))?;
        let p = PotentialSpec::new(1.0, 0.0, 0.5 * m * m, 0.25 * g, delta, QuarticSign::Plus)?;
        return Ok((p, format!("delta-family d={delta}")));
    }
    Err(Error::Config("give one of --preset, --config or --delta".into()))
}

/// Rough upper edge for a level window: harmonic ladder plus quartic growth
/// (sized for the PT phase, whose levels sit above the Hermitian ones).
fn default_window(p: &PotentialSpec, levels: usize) -> f64 {
    let l = levels as f64;
    let harmonic = (2.0 * l + 1.5) * (p.a * p.c2.max(0.0)).sqrt() * 2.0_f64.sqrt();
    let quartic = (5.5 * l + 4.0) * p.a.powf(2.0 / 3.0) * p.c4.powf(1.0 / 3.0);
    1.1 * (harmonic + quartic) + 1.0
}

fn scan_with(args: &SpectrumArgs, p: &PotentialSpec) -> Result<ScanOutcome> {
    let contour = stokes::build_contour(p, args.r0, args.step)?;
    let defaults = SecantOptions::default();
    let opts = SecantOptions {
        tol_a: args.tol_a.unwrap_or(defaults.tol_a),
        tol_e: args.tol_e.unwrap_or(defaults.tol_e),
        max_iter: args.max_iter.unwrap_or(defaults.max_iter),
    };
    let e_lo = args.e_lo.unwrap_or(0.01);
    let e_hi = args.e_hi.unwrap_or_else(|| default_window(p, args.levels));
    shooting::scan_levels(p, &contour, args.levels, e_lo, e_hi, args.grid, opts)
}

fn run_spectrum(args: SpectrumArgs, format: Format) -> Result<i32> {
    if args.levels == 0 {
        return Err(Error::Config("--levels must be >= 1".into()));
    }
    let (p, label) = resolve_potential(&args)?;
    let oracle = if args.oracle {
        if p.delta != 0.0 {
            return Err(Error::Config(
                "--oracle needs a real-axis potential (delta = 0)".into(),
            ));
        }
        let name = args.preset.as_deref().ok_or_else(|| {
            Error::Config("--oracle cross-checks presets; give --preset".into())
        })?;
        let preset = HamiltonianPreset::parse(name, args.m, args.g)?;
        Some(conjecture::oracle_levels(preset, args.levels)?)
    } else {
        None
    };
    let outcome = scan_with(&args, &p)?;

    let mut columns = vec!["potential", "a", "level", "energy", "residual", "iterations", "converged"];
    if oracle.is_some() {
        columns.push("oracle_energy");
    }
    let mut table = Table::new(columns);
    for (i, level) in outcome.levels.iter().enumerate() {
        let mut row = vec![
            Cell::Text(label.clone()),
            Cell::Num(p.a),
            Cell::Int(i as i64),
            Cell::Num(level.energy),
            Cell::Num(level.residual),
            Cell::Int(level.iterations as i64),
            Cell::Bool(level.converged),
        ];
        if let Some(oracle) = &oracle {
            row.push(oracle.get(i).map(|&e| Cell::Num(e)).unwrap_or(Cell::Null));
        }
        table.push(row);
    }
    emit(&table, None, format);
    if !outcome.complete {
        eprintln!(
            "error: found {} of {} requested levels in the window",
            outcome.levels.len(),
            args.levels
        );
        return Ok(1);
    }
    Ok(0)
}

fn parse_case(args: &PartitionArgs) -> Result<PartitionCase> {
    let g = args.g;
    let m = args.m;
    let eps = || -> f64 { g / m.powi(4) };
    let n = || -> Result<u32> {
        args.n
            .ok_or_else(|| Error::Config("multi-component cases require --n".into()))
    };
    Ok(match args.case.to_ascii_uppercase().as_str() {
        "Z1" => PartitionCase::Z1 { m, eps: eps() },
        "Z2" => PartitionCase::Z2 { m, eps: eps() },
        "Z3" => PartitionCase::Z3 { g },
        "Z4" => PartitionCase::Z4 { g },
        "Z5" => PartitionCase::Z5 { m, eps: eps() },
        "Z6" => PartitionCase::Z6 { m, eps: eps() },
        "Z7" => PartitionCase::Z7 { g },
        "Z8" => PartitionCase::Z8 { g },
        "Z2N5" => PartitionCase::Z2n5 { n: n()?, m, g },
        "Z2N6" => PartitionCase::Z2n6 { n: n()?, m, g },
        other => {
            return Err(Error::Config(format!(
                "unknown case '{other}' (expected Z1..Z8, Z2N5, Z2N6)"
            )))
        }
    })
}

fn run_partition(args: PartitionArgs, format: Format) -> Result<i32> {
    let case = parse_case(&args)?;
    let (value, method, est_error) = if args.quadrature {
        let spec = QuadratureSpec {
            abs_tol: args.abs_tol.unwrap_or(1e-10),
            r_max: args.r_max,
            method: match args.method {
                MethodArg::Simpson => QuadMethod::CompositeSimpson,
                MethodArg::Gauss => QuadMethod::GaussAdaptive,
            },
            ..Default::default()
        };
        let q = zdim0::z_quadrature(&case, &spec)?;
        let name = match args.method {
            MethodArg::Simpson => "composite-simpson",
            MethodArg::Gauss => "gauss-adaptive",
        };
        (q.value, name, q.est_error)
    } else {
        let v = zdim0::z_closed(&case)?;
        // closed forms are limited by the special-function accuracy
        (v, "closed-form", 1e-13 * v.norm())
    };
    let mut table = Table::new(vec!["case", "value_re", "value_im", "method", "est_error"]);
    table.push(vec![
        Cell::Text(case.label()),
        Cell::Num(value.re),
        Cell::Num(value.im),
        Cell::Text(method.into()),
        Cell::Num(est_error),
    ]);
    emit(&table, None, format);
    Ok(0)
}

fn run_mk(args: MkArgs, format: Format) -> Result<i32> {
    let real = ptspectra::mk_series::mk_energy_real(args.k, args.m, args.g)?;
    let mut columns = vec!["k", "q0", "m", "g", "energy_real"];
    if args.imag {
        columns.push("imag_magnitude");
    }
    let mut table = Table::new(columns);
    let mut row = vec![
        Cell::Int(args.k as i64),
        Cell::Int((2 * args.k + 1) as i64),
        Cell::Num(args.m),
        Cell::Num(args.g),
        Cell::Num(real),
    ];
    if args.imag {
        row.push(Cell::Num(ptspectra::mk_series::mk_energy_imag(args.k, args.m, args.g)?));
    }
    table.push(row);
    emit(&table, None, format);
    Ok(0)
}

fn run_conjecture(args: ConjectureArgs, format: Format) -> Result<i32> {
    let suite = Suite::parse(&args.suite)?;
    let reports = conjecture::run_report(suite)?;
    let mut table = Table::new(vec![
        "quantity",
        "case_label",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_gap",
        "rel_gap",
        "verdict",
        "tolerance",
        "regime",
        "log_form_gap",
        "cancelled_imag",
    ]);
    for r in &reports {
        table.push(vec![
            Cell::Text(format!("{:?}", r.quantity).to_lowercase()),
            Cell::Text(r.case_label.clone()),
            Cell::Num(r.lhs.re),
            Cell::Num(r.lhs.im),
            Cell::Num(r.rhs.re),
            Cell::Num(r.rhs.im),
            Cell::Num(r.abs_gap),
            Cell::Num(r.rel_gap),
            Cell::Text(format!("{:?}", r.verdict).to_lowercase()),
            Cell::Num(r.tolerance),
            Cell::Text(format!("{:?}", r.regime).to_lowercase()),
            r.log_form_gap.map(Cell::Num).unwrap_or(Cell::Null),
            r.cancelled_imag.map(Cell::Num).unwrap_or(Cell::Null),
        ]);
    }
    // JSON uses the report schema directly.
    let json = serde_json::to_value(&reports).map_err(|e| Error::Config(e.to_string()))?;
    emit(&table, Some(json), format);
    Ok(0)
}

fn run_contour(args: ContourArgs, format: Format) -> Result<i32> {
    if args.points < 2 {
        return Err(Error::Config("--points must be >= 2".into()));
    }
    let p = PotentialSpec::new(
        1.0,
        0.0,
        0.5 * args.m * args.m,
        0.25 * args.g,
        args.delta,
        QuarticSign::Plus,
    )?;
    let c = stokes::build_contour(&p, args.r0, args.step)?;
    let (left, right) = c.polylines(args.points);

    let mut table = Table::new(vec![
        "theta_l", "theta_r", "r0", "h", "steps", "ray", "point", "re", "im",
    ]);
    for (ray, line) in [("left", &left), ("right", &right)] {
        for (i, z) in line.iter().enumerate() {
            table.push(vec![
                Cell::Num(c.theta_l),
                Cell::Num(c.theta_r),
                Cell::Num(c.r0),
                Cell::Num(c.h),
                Cell::Int(c.steps() as i64),
                Cell::Text(ray.into()),
                Cell::Int(i as i64),
                Cell::Num(z.re),
                Cell::Num(z.im),
            ]);
        }
    }
    let to_pairs = |line: &[ptspectra::C64]| -> Value {
        Value::Array(line.iter().map(|z| serde_json::json!([z.re, z.im])).collect())
    };
    let json = serde_json::json!({
        "theta_l": c.theta_l,
        "theta_r": c.theta_r,
        "r0": c.r0,
        "h": c.h,
        "steps": c.steps(),
        "polyline_left": to_pairs(&left),
        "polyline_right": to_pairs(&right),
    });
    emit(&table, Some(json), format);
    Ok(0)
}

fn run_reproduce(args: ReproduceArgs, format: Format) -> Result<i32> {
    let report = reproduce_table(args.table)?;
    let mut table = Table::new(vec![
        "table",
        "row",
        "column",
        "computed",
        "reference",
        "abs_dev",
        "rel_dev",
        "within_printed",
        "level_index",
        "converged",
    ]);
    for c in &report.cells {
        table.push(vec![
            Cell::Int(report.table as i64),
            Cell::Text(c.row_label.clone()),
            Cell::Text(c.column_label.clone()),
            Cell::Num(c.computed),
            Cell::Num(c.reference),
            Cell::Num(c.abs_dev),
            Cell::Num(c.rel_dev),
            Cell::Bool(c.within_printed),
            c.level_index.map(|i| Cell::Int(i as i64)).unwrap_or(Cell::Null),
            Cell::Bool(c.converged),
        ]);
    }
    let json = serde_json::to_value(&report).map_err(|e| Error::Config(e.to_string()))?;
    emit(&table, Some(json), format);
    if format == Format::Human {
        println!(
            "max |dev| = {}, max rel dev = {}, elapsed = {:.2} s",
            render::sig6(report.max_abs_dev),
            render::sig6(report.max_rel_dev),
            report.elapsed_seconds
        );
    }
    Ok(if report.all_converged { 0 } else { 1 })
}
