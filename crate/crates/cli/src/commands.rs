use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coldecay_core::entanglement::{
    asymptotic_concurrence, concurrence, is_ppt_separable, min_partial_transpose_eigenvalue,
};
use coldecay_core::model::{evolve_series, evolve_states};
use coldecay_core::propagator::{
    asymptotic_params, asymptotic_state_for, c_max, evolve_bell_general,
    evolve_excited_ground_general, evolve_g1, grid_search_peak, t_gamma,
};
use coldecay_core::random::{random_density_matrix, seeded_rng};
use coldecay_core::series::uniform_grid;
use coldecay_core::states::{basis_state, bell, mems};
use coldecay_core::{
    BellState, ComplexMatrix4, DensityMatrix, IntegratorConfig, MemsDelta, ModelParams, Record,
    Symmetry, TimeSeries, C64,
};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::output::{series_table, Format, Report, Table};
use crate::statefile::StateFile;

#[derive(Debug, Parser)]
#[command(
    name = "coldecay",
    version,
    about = "Entanglement of two atoms under collective spontaneous emission"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence (and optionally ρ) along the evolution of a state.
    Evolve(EvolveArgs),
    /// Asymptotic state of the g = 1 dynamics: α, β, ρ_as and C(ρ_as).
    Asymptotic(ReportArgs),
    /// Curve data for the figures.
    Figure(FigureArgs),
    /// Peak time and height of the excited-ground concurrence for g < 1.
    Peak(PeakArgs),
    /// Concurrence, PPT test and purity of a state.
    Concurrence(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    /// closed form where one exists, RK4 otherwise
    #[default]
    Auto,
    ClosedForm,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// State file (JSON); `-` reads standard input.
    #[arg(required_unless_present = "seed")]
    pub state: Option<String>,
    /// Use a seeded random state instead of a file.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// End of the time grid [default: 5/γ₀]
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 501)]
    pub samples: usize,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Append the 32 real and imaginary parts of ρ(t) to each row.
    #[arg(long)]
    pub rho: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: Figure,
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    /// Exchange ratio γ/γ₀ [default: 1, or 0.99 for fig3]
    #[arg(long)]
    pub g: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// How the Φ⁺ curve of fig1 is computed.
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PeakArgs {
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Evolve(args) => {
            let table = cmd_evolve(&args)?;
            emit(&args.out, stdout, |w| table.write(args.out.format, w))
        }
        Command::Asymptotic(args) => {
            let report = cmd_asymptotic(&load_state(&args.state)?)?;
            emit(&args.out, stdout, |w| report.write(args.out.format, w))
        }
        Command::Figure(args) => {
            let table = cmd_figure(&args)?;
            emit(&args.out, stdout, |w| table.write(args.out.format, w))
        }
        Command::Peak(args) => {
            let report = cmd_peak(args.gamma0, args.g)?;
            emit(&args.out, stdout, |w| report.write(args.out.format, w))
        }
        Command::Concurrence(args) => {
            let report = cmd_concurrence(&load_state(&args.state)?)?;
            emit(&args.out, stdout, |w| report.write(args.out.format, w))
        }
    }
}

fn emit(
    out: &OutputArgs,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match &out.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => write(stdout)?,
    }
    Ok(())
}

pub struct LoadedState {
    pub rho: DensityMatrix,
    pub label: Value,
}

pub fn load_state(args: &StateArgs) -> Result<LoadedState> {
    let Some(path) = &args.state else {
        let seed = args.seed.expect("clap requires a state or a seed");
        let rho = random_density_matrix(&mut seeded_rng(seed));
        return Ok(LoadedState {
            rho,
            label: json!({ "random_seed": seed }),
        });
    };
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    let file = StateFile::parse(&text)?;
    let label = match &file {
        StateFile::Matrix(_) => json!("matrix"),
        StateFile::Family(f) => serde_json::to_value(f).expect("families serialize"),
    };
    Ok(LoadedState {
        rho: file.to_state()?,
        label,
    })
}

fn model(gamma0: f64, g: f64) -> Result<ModelParams> {
    ModelParams::new(gamma0, g).map_err(CliError::params)
}

fn grid(gamma0: f64, args: &GridArgs) -> Result<Vec<f64>> {
    let t_max = args.t_max.unwrap_or(5.0 / gamma0);
    uniform_grid(t_max, args.samples).map_err(CliError::params)
}

fn integrator(dt: f64) -> Result<IntegratorConfig> {
    IntegratorConfig::new(dt).map_err(CliError::params)
}

/// Which closed form, if any, covers `rho` under `params`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    G1,
    Stationary,
    ExcitedGround { swapped: bool },
    Bell(Symmetry),
}

const MATCH_TOL: f64 = 1e-12;

pub fn closed_form_for(rho: &DensityMatrix, params: &ModelParams) -> Option<ClosedForm> {
    if params.g() == 1.0 {
        return Some(ClosedForm::G1);
    }
    let candidates = [
        (basis_state(false, false), ClosedForm::Stationary),
        (
            basis_state(true, false),
            ClosedForm::ExcitedGround { swapped: false },
        ),
        (
            basis_state(false, true),
            ClosedForm::ExcitedGround { swapped: true },
        ),
        (bell(BellState::PsiPlus), ClosedForm::Bell(Symmetry::Plus)),
        (bell(BellState::PsiMinus), ClosedForm::Bell(Symmetry::Minus)),
    ];
    candidates
        .into_iter()
        .find(|(s, _)| s.max_abs_diff(rho) < MATCH_TOL)
        .map(|(_, c)| c)
}

/// Exchanges the roles of the two atoms.
pub fn swap_atoms(rho: &DensityMatrix) -> DensityMatrix {
    let perm = [0, 2, 1, 3];
    let p = ComplexMatrix4::from_fn(|j, k| C64::new(if perm[j] == k { 1.0 } else { 0.0 }, 0.0));
    rho.conjugate_by(&p)
}

fn closed_form_state(
    form: ClosedForm,
    rho0: &DensityMatrix,
    params: &ModelParams,
    t: f64,
) -> coldecay_core::Result<DensityMatrix> {
    match form {
        ClosedForm::G1 => evolve_g1(rho0, params.gamma0(), t),
        ClosedForm::Stationary => Ok(*rho0),
        ClosedForm::ExcitedGround { swapped } => {
            let rho = evolve_excited_ground_general(params.gamma0(), params.gamma(), t)?;
            Ok(if swapped { swap_atoms(&rho) } else { rho })
        }
        ClosedForm::Bell(sign) => evolve_bell_general(sign, params.gamma0(), params.gamma(), t),
    }
}

/// Evolves `rho0` over `grid`, choosing closed form or RK4 per `method`.
pub fn evolve(
    rho0: &DensityMatrix,
    params: &ModelParams,
    grid: &[f64],
    method: Method,
    dt: f64,
) -> Result<TimeSeries> {
    let form = closed_form_for(rho0, params);
    match (method, form) {
        (Method::ClosedForm, None) => Err(CliError::UnsupportedClosedForm { g: params.g() }),
        (Method::ClosedForm | Method::Auto, Some(form)) => {
            let mut series = TimeSeries::new("closed-form", params.gamma0(), params.g());
            for &t in grid {
                let rho = closed_form_state(form, rho0, params, t).map_err(CliError::params)?;
                let c = concurrence(&rho).map_err(CliError::params)?.value();
                series
                    .push(Record::with_state(t, c, rho))
                    .map_err(CliError::params)?;
            }
            Ok(series)
        }
        (Method::Rk4 | Method::Auto, _) => {
            evolve_series(rho0, params, grid, &integrator(dt)?).map_err(CliError::params)
        }
    }
}

fn base_metadata(scenario: Value, gamma0: f64, g: f64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("scenario".into(), scenario);
    m.insert("gamma0".into(), json!(gamma0));
    m.insert("g".into(), json!(g));
    m
}

pub fn cmd_evolve(args: &EvolveArgs) -> Result<Table> {
    let params = model(args.gamma0, args.g)?;
    let grid = grid(args.gamma0, &args.grid)?;
    let state = load_state(&args.state)?;
    let series = evolve(&state.rho, &params, &grid, args.method, args.grid.dt)?;
    let mut meta = base_metadata(state.label, args.gamma0, args.g);
    meta.insert("method".into(), json!(series.scenario));
    meta.insert(
        "grid".into(),
        json!({ "t_max": grid[grid.len() - 1], "samples": grid.len() }),
    );
    if series.scenario == "rk4" {
        meta.insert("dt".into(), json!(args.grid.dt));
    }
    Ok(series_table(&series, meta, args.rho))
}

pub fn cmd_asymptotic(state: &LoadedState) -> Result<Report> {
    let p = asymptotic_params(&state.rho);
    let rho_as = p.state().map_err(CliError::state)?;
    let mut report = Report {
        metadata: base_metadata(state.label.clone(), 1.0, 1.0),
        values: vec![],
    };
    report.num("alpha", p.alpha);
    report.num("beta_re", p.beta.re);
    report.num("beta_im", p.beta.im);
    report.num("concurrence", asymptotic_concurrence(&state.rho).value());
    report.matrix("rho_as", &rho_as);
    Ok(report)
}

pub fn cmd_concurrence(state: &LoadedState) -> Result<Report> {
    let mut report = Report {
        metadata: Map::new(),
        values: vec![],
    };
    report
        .metadata
        .insert("scenario".into(), state.label.clone());
    report.num(
        "concurrence",
        concurrence(&state.rho).map_err(CliError::state)?.value(),
    );
    report.flag("ppt_separable", is_ppt_separable(&state.rho));
    report.num(
        "min_partial_transpose_eigenvalue",
        min_partial_transpose_eigenvalue(&state.rho),
    );
    report.num("purity", state.rho.purity());
    Ok(report)
}

pub fn cmd_peak(gamma0: f64, g: f64) -> Result<Report> {
    let params = model(gamma0, g)?;
    let gamma = params.gamma();
    let t_star = t_gamma(gamma0, gamma).map_err(CliError::params)?;
    let c_star = c_max(gamma0, gamma).map_err(CliError::params)?;
    let step = t_star * 1e-5;
    let (t_grid, c_grid) =
        grid_search_peak(gamma0, gamma, 2.0 * t_star, step).map_err(CliError::params)?;
    let mut report = Report {
        metadata: base_metadata(json!("peak"), gamma0, g),
        values: vec![],
    };
    report.metadata.insert("grid_step".into(), json!(step));
    report.num("t_gamma", t_star);
    report.num("c_max", c_star);
    report.num("grid_t", t_grid);
    report.num("grid_c", c_grid);
    report.num("residual_t", (t_grid - t_star).abs());
    report.num("residual_c", (c_grid - c_star).abs());
    Ok(report)
}

pub fn cmd_figure(args: &FigureArgs) -> Result<Table> {
    let default_g = if args.which == Figure::Fig3 {
        0.99
    } else {
        1.0
    };
    let g = args.g.unwrap_or(default_g);
    let params = model(args.gamma0, g)?;
    let name = match args.which {
        Figure::Fig1 => "fig1",
        Figure::Fig2 => "fig2",
        Figure::Fig3 => "fig3",
    };
    let mut meta = base_metadata(json!(name), args.gamma0, g);
    match args.which {
        Figure::Fig1 => {
            let grid = grid(args.gamma0, &args.grid)?;
            let phi = evolve(
                &bell(BellState::PhiPlus),
                &params,
                &grid,
                args.method,
                args.grid.dt,
            )?;
            let psi = bell_curve(Symmetry::Plus, &params, &grid)?;
            meta.insert("phi_plus_method".into(), json!(phi.scenario));
            let mut table = Table::new(meta, &["t", "phi_plus", "psi_plus"]);
            for (r, c) in phi.records().iter().zip(psi) {
                table.push(vec![r.t, r.concurrence, c]);
            }
            Ok(table)
        }
        Figure::Fig2 => {
            let deltas = uniform_grid(1.0, args.grid.samples).map_err(CliError::params)?;
            let mut table = Table::new(meta, &["delta", "purity", "c_mems", "c_asymptotic"]);
            for delta in deltas {
                let rho = mems(MemsDelta::new(delta).map_err(CliError::params)?);
                let c = concurrence(&rho).map_err(CliError::params)?.value();
                let asym = asymptotic_state_for(&rho, &params);
                let c_as = concurrence(&asym).map_err(CliError::params)?.value();
                table.push(vec![delta, rho.purity(), c, c_as]);
            }
            Ok(table)
        }
        Figure::Fig3 => {
            let grid = grid(args.gamma0, &args.grid)?;
            let plus = bell_curve(Symmetry::Plus, &params, &grid)?;
            let minus = bell_curve(Symmetry::Minus, &params, &grid)?;
            let mut table = Table::new(meta, &["t", "plus", "minus"]);
            for ((&t, p), m) in grid.iter().zip(plus).zip(minus) {
                table.push(vec![t, p, m]);
            }
            Ok(table)
        }
    }
}

/// Wootters concurrence along the Ψ± decay.
fn bell_curve(sign: Symmetry, params: &ModelParams, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&t| {
            let rho = evolve_bell_general(sign, params.gamma0(), params.gamma(), t)
                .map_err(CliError::params)?;
            Ok(concurrence(&rho).map_err(CliError::params)?.value())
        })
        .collect()
}

/// Evolves with both methods and returns the largest concurrence gap.
pub fn method_gap(
    rho0: &DensityMatrix,
    params: &ModelParams,
    grid: &[f64],
    dt: f64,
) -> Result<f64> {
    let closed = evolve(rho0, params, grid, Method::ClosedForm, dt)?;
    let numeric = evolve_states(rho0, params, grid, &integrator(dt)?).map_err(CliError::params)?;
    let mut gap = 0.0f64;
    for (r, rho) in closed.records().iter().zip(&numeric) {
        gap = gap.max((r.concurrence - concurrence(rho).map_err(CliError::params)?.value()).abs());
    }
    Ok(gap)
}
