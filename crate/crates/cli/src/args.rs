use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reduced_eos::EosModel;

/// Reduced equations of state for combustion gases: calibration, sweeps and audits.
#[derive(Debug, Parser)]
#[command(name = "eos", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-point calibration from closed-bomb peak pressures.
    Calibrate(CalibrateArgs),
    /// Least-squares Cv(T) calibration from inert-diluted runs.
    CalibrateCvt(CalibrateCvtArgs),
    /// Closed-bomb flame temperature and peak pressure over loading densities.
    Sweep(SweepArgs),
    /// Mixture closed-bomb sweep over densities and mass fractions.
    MixSweep(MixSweepArgs),
    /// Thermodynamic consistency, convexity and sound-speed audit on a grid.
    Audit(AuditArgs),
    /// Full thermodynamic state at one point.
    State(StateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TwoPointModel {
    Na,
    Vo1,
}

impl From<TwoPointModel> for EosModel {
    fn from(m: TwoPointModel) -> Self {
        match m {
            TwoPointModel::Na => EosModel::Na,
            TwoPointModel::Vo1 => EosModel::Vo1,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Na,
    Vo1,
    #[value(name = "vo1cvt", alias = "vo1_cvt")]
    Vo1Cvt,
}

impl From<ModelArg> for EosModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Na => EosModel::Na,
            ModelArg::Vo1 => EosModel::Vo1,
            ModelArg::Vo1Cvt => EosModel::Vo1Cvt,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MixModel {
    Mna,
    Mvo1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InertArg {
    Argon,
    Xenon,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    pub model: TwoPointModel,
    /// CSV with header `rho_kg_m3,pmax_MPa` and exactly two rows.
    #[arg(long)]
    pub points: PathBuf,
    /// Flame temperature, K.
    #[arg(long)]
    pub tflame: f64,
    /// Specific-heat ratio.
    #[arg(long)]
    pub gamma: f64,
    /// Material name (defaults to the points file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Database file to add the record to (created if missing).
    #[arg(long)]
    pub db: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CalibrateCvtArgs {
    /// CSV with header `Y,T_flame_K`.
    #[arg(long)]
    pub runs: PathBuf,
    #[arg(long, value_enum)]
    pub inert: InertArg,
    /// Energy released per unit reactant mass, kJ/kg.
    #[arg(long = "es-i")]
    pub es_i: f64,
    /// Initial temperature of the charge, K.
    #[arg(long, default_value_t = reduced_eos::thermo::T0_REF)]
    pub t0: f64,
    /// Database holding the VO1 base record; the fitted record is added to it.
    #[arg(long)]
    pub db: Option<PathBuf>,
    /// VO1 record providing R, a, T_flame and the density range.
    #[arg(long)]
    pub base: Option<String>,
    /// Name of the fitted record (defaults to the base name).
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub material: String,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Loading densities LO:HI:STEP, kg/m³.
    #[arg(long)]
    pub rho: String,
    #[arg(long)]
    pub db: Option<PathBuf>,
    /// CSV keyed by `rho_kg_m3` whose other columns are appended as `ref_*`.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MixSweepArgs {
    /// `NAME:Y,NAME:Y,...`, or `NAME,NAME` together with --fraction-sweep.
    pub spec: String,
    #[arg(long, value_enum)]
    pub model: MixModel,
    /// Mixture densities as a list `A,B,...` or LO:HI:STEP, kg/m³.
    #[arg(long)]
    pub rho: String,
    /// Mass fractions LO:HI:STEP of the second of two components.
    #[arg(long = "fraction-sweep")]
    pub fraction_sweep: Option<String>,
    /// Assert that every component shares the sign of its oxygen balance.
    #[arg(long = "same-oxygen-balance")]
    pub same_oxygen_balance: bool,
    #[arg(long)]
    pub db: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    pub material: String,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Densities LO:HI:STEP, kg/m³.
    #[arg(long, default_value = "10:600:10")]
    pub rho: String,
    /// Temperatures LO:HI:STEP, K.
    #[arg(long = "T", default_value = "1500:4500:100")]
    pub t: String,
    #[arg(long)]
    pub db: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    pub material: String,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Density, kg/m³.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Temperature, K.
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Pressure, MPa.
    #[arg(long = "P")]
    pub p: Option<f64>,
    /// Specific internal energy, kJ/kg.
    #[arg(long)]
    pub e: Option<f64>,
    #[arg(long)]
    pub db: Option<PathBuf>,
}
