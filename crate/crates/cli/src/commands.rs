use std::io::Write;
use std::path::Path;

use reduced_eos::numerics::{convexity_audit_fd, maxwell_residual, sound_speed_fd_oracle, ConvexityReport};
use reduced_eos::{
    calibrate_cvt, calibrate_na, calibrate_vo1, mixture_flame_temperature, predict_closed_bomb, EntropyReference,
    EosError, EosModel, GasLaw, GasParams, InertGasParams, MixtureSpec, Mna, Mvo1, NobleAbel, ThermoState, Virial,
    VirialCvt,
};

use crate::args::{AuditArgs, CalibrateArgs, CalibrateCvtArgs, InertArg, MixModel, MixSweepArgs, StateArgs, SweepArgs};
use crate::db::{MaterialDatabase, MaterialRecord};
use crate::error::{CliError, Result};
use crate::format::{parse_range, parse_values, sig};
use crate::io::{load_closed_bomb_csv, load_inert_runs_csv, load_reference_csv};

/// Relative Maxwell residual tolerated by `audit`.
pub const AUDIT_MAXWELL_LIMIT: f64 = 1e-8;
/// Relative c² gap between closed form and oracle tolerated by `audit`.
pub const AUDIT_SOUND_SPEED_LIMIT: f64 = 1e-5;
/// Relative gap between the two oracle forms tolerated by `audit`.
pub const AUDIT_ORACLE_FORMS_LIMIT: f64 = 1e-6;

fn database(path: Option<&Path>) -> Result<MaterialDatabase> {
    match path {
        Some(p) => MaterialDatabase::load(p),
        None => Ok(MaterialDatabase::builtin()),
    }
}

fn line(out: &mut dyn Write, fields: &[String]) -> Result<()> {
    out.write_all(fields.join(",").as_bytes())?;
    out.write_all(b"\n")?;
    Ok(())
}

fn coefficient(law: &GasLaw) -> (&'static str, f64) {
    match *law {
        GasLaw::NobleAbel { covolume, .. } => ("b_m3_kg", covolume),
        GasLaw::Virial { a, .. } | GasLaw::VirialCvt { a, .. } => ("a_m3_kg", a),
    }
}

pub fn calibrate(args: &CalibrateArgs, out: &mut dyn Write) -> Result<()> {
    let points = load_closed_bomb_csv(&args.points)?;
    if points.len() != 2 {
        return Err(CliError::validation(format!(
            "exactly two points required, {} has {}",
            args.points.display(),
            points.len()
        )));
    }
    let model = EosModel::from(args.model);
    let fit = match model {
        EosModel::Na => calibrate_na(points[0], points[1], args.tflame, args.gamma)?,
        _ => calibrate_vo1(points[0], points[1], args.tflame, args.gamma)?,
    };
    let name = args.name.clone().unwrap_or_else(|| {
        args.points.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "unnamed".into())
    });
    let params = fit.with_name(name);
    let (key, value) = coefficient(&params.law);
    line(
        out,
        &["material", "model", "Cv_J_kgK", "R_J_kgK", "e_s_eff_kJ_kg", key, "W_g_mol", "rho_lo_kg_m3", "rho_hi_kg_m3"]
            .map(String::from),
    )?;
    line(
        out,
        &[
            params.name.clone(),
            model.to_string(),
            sig(params.constant_cv().unwrap_or(f64::NAN)),
            sig(params.r),
            sig(params.e_s_eff / 1e3),
            sig(value),
            sig(params.molar_mass()),
            sig(params.rho_range.lo),
            sig(params.rho_range.hi),
        ],
    )?;
    if let Some(path) = &args.db {
        let mut db = if path.exists() { MaterialDatabase::load(path)? } else { MaterialDatabase::default() };
        let mut record = MaterialRecord::new(params);
        record.source = Some("two-point closed-bomb calibration".into());
        db.upsert(record)?;
        db.save(path)?;
    }
    Ok(())
}

pub fn calibrate_cvt_cmd(args: &CalibrateCvtArgs, out: &mut dyn Write) -> Result<()> {
    let runs = load_inert_runs_csv(&args.runs)?;
    let inert = match args.inert {
        InertArg::Argon => InertGasParams::argon(),
        InertArg::Xenon => InertGasParams::xenon(),
    };
    let fit = calibrate_cvt(&runs, &inert, args.es_i * 1e3, args.t0)?;
    let mut header = vec!["Cv0_J_kgK", "c_J_kgK2", "q_kJ_kg", "residual_norm_kJ_kg", "condition"];
    let mut row = vec![sig(fit.cv0), sig(fit.c), sig(fit.q / 1e3), sig(fit.residual_norm / 1e3), sig(fit.condition)];
    let Some(base_name) = &args.base else {
        line(out, &header.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
        return line(out, &row);
    };
    let mut db = database(args.db.as_deref())?;
    let base = db.get(base_name, EosModel::Vo1)?.clone();
    let params = fit.to_params(&base.params)?.with_name(args.name.clone().unwrap_or_else(|| base.params.name.clone()));
    header.extend(["material", "R_J_kgK", "a_m3_kg", "e_s_eff_kJ_kg"]);
    row.extend([params.name.clone(), sig(params.r), sig(coefficient(&params.law).1), sig(params.e_s_eff / 1e3)]);
    line(out, &header.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
    line(out, &row)?;
    if let Some(path) = &args.db {
        let mut record = MaterialRecord::new(params);
        record.oxygen_balance = base.oxygen_balance;
        record.source = Some(format!("least-squares fit on {} dilutions", inert.name));
        db.upsert(record)?;
        db.save(path)?;
    }
    Ok(())
}

/// Frozen sound speed at (ρ, T, P) for any single-gas record.
fn sound_speed(params: &GasParams, rho: f64, t: f64, p: f64) -> std::result::Result<f64, EosError> {
    match params.law {
        GasLaw::NobleAbel { .. } => NobleAbel::try_from(params)?.sound_speed(p, rho),
        GasLaw::Virial { .. } => Ok(Virial::try_from(params)?.sound_speed(p, rho)),
        GasLaw::VirialCvt { .. } => Ok(sound_speed_fd_oracle(&VirialCvt::try_from(params)?, rho, t)?.c()),
    }
}

pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let db = database(args.db.as_deref())?;
    let record = db.get(&args.material, args.model.into())?;
    let params = &record.params;
    params.require_convex_convention()?;
    let densities = parse_range(&args.rho, "--rho")?;
    let reference = args.reference.as_deref().map(load_reference_csv).transpose()?;

    let mut header: Vec<String> =
        ["rho_kg_m3", "T_flame_K", "P_MPa", "extrapolated", "c_m_s"].map(String::from).to_vec();
    if let Some(r) = &reference {
        header.extend(r.columns.iter().map(|c| format!("ref_{c}")));
    }
    line(out, &header)?;

    let mut failure: Option<(usize, f64, EosError)> = None;
    for &rho in &densities {
        let result = predict_closed_bomb(params, rho)
            .and_then(|pred| sound_speed(params, rho, pred.t_flame, pred.p_max).map(|c| (pred, c)));
        let mut row = match result {
            Ok((pred, c)) => vec![
                sig(rho),
                sig(pred.t_flame),
                sig(pred.p_max / 1e6),
                u8::from(pred.extrapolated).to_string(),
                sig(c),
            ],
            Err(e) => {
                match &mut failure {
                    Some((n, _, _)) => *n += 1,
                    None => failure = Some((1, rho, e)),
                }
                vec![sig(rho), "error".into(), String::new(), String::new(), String::new()]
            }
        };
        if let Some(r) = &reference {
            match r.lookup(rho) {
                Some(fields) => row.extend(fields.iter().cloned()),
                None => row.extend(std::iter::repeat_n(String::new(), r.columns.len())),
            }
        }
        line(out, &row)?;
    }
    match failure {
        Some((failed, first_rho, source)) => Err(CliError::Rows { failed, first_rho, source }),
        None => Ok(()),
    }
}

struct MixPart {
    name: String,
    fraction: Option<f64>,
}

fn parse_mix_spec(spec: &str) -> Result<Vec<MixPart>> {
    spec.split(',')
        .map(|item| {
            let item = item.trim();
            match item.rsplit_once(':') {
                Some((name, y)) => {
                    let y = y
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("mass fraction '{y}' in '{item}' is not a number")))?;
                    Ok(MixPart { name: name.trim().to_string(), fraction: Some(y) })
                }
                None if !item.is_empty() => Ok(MixPart { name: item.to_string(), fraction: None }),
                None => Err(CliError::Usage(format!("empty component in mixture spec '{spec}'"))),
            }
        })
        .collect()
}

pub fn mix_sweep(args: &MixSweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if !args.same_oxygen_balance {
        return Err(CliError::validation(
            "the mixture laws only hold for components whose oxygen balances share one sign; \
             pass --same-oxygen-balance to assert this",
        ));
    }
    let db = database(args.db.as_deref())?;
    let model = match args.model {
        MixModel::Mna => EosModel::Na,
        MixModel::Mvo1 => EosModel::Vo1,
    };
    let parts = parse_mix_spec(&args.spec)?;
    let records = parts.iter().map(|p| db.get(&p.name, model).cloned()).collect::<Result<Vec<_>>>()?;
    for r in &records {
        r.params.require_convex_convention()?;
    }
    let signs: Vec<_> = records.iter().filter_map(|r| r.oxygen_balance).collect();
    if signs.windows(2).any(|w| w[0] != w[1]) {
        writeln!(
            err,
            "warning: the database records oxygen balances of different signs for this mixture; results are outside the validity of the mixture law"
        )?;
    }

    let fractions: Vec<Vec<f64>> = match &args.fraction_sweep {
        Some(range) => {
            if parts.len() != 2 || parts.iter().any(|p| p.fraction.is_some()) {
                return Err(CliError::Usage("--fraction-sweep needs exactly two names without fractions".into()));
            }
            parse_range(range, "--fraction-sweep")?.into_iter().map(|y| vec![1.0 - y, y]).collect()
        }
        None => {
            let ys = parts
                .iter()
                .map(|p| p.fraction)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Usage("give NAME:Y for every component or use --fraction-sweep".into()))?;
            vec![ys]
        }
    };
    let densities = parse_values(&args.rho, "--rho")?;

    let mut header: Vec<String> = records.iter().map(|r| format!("Y_{}", r.params.name)).collect();
    header.extend(["rho_kg_m3", "T_flame_K", "P_MPa", "c_m_s"].map(String::from));
    line(out, &header)?;

    for ys in &fractions {
        let spec = MixtureSpec::new(records.iter().zip(ys).map(|(r, &y)| (r.params.clone(), y)).collect(), true)?;
        let flame = mixture_flame_temperature(&spec)?;
        let t = flame.t_flame;
        for &rho in &densities {
            if !(rho > 0.0) {
                return Err(EosError::Domain(format!("mixture density must be positive, got {rho}")).into());
            }
            let (p, c) = match args.model {
                MixModel::Mna => {
                    let mna = Mna::new(&spec)?;
                    let p = mna.pressure_vt(1.0 / rho, t)?;
                    (p, mna.sound_speed(p, 1.0 / rho)?)
                }
                MixModel::Mvo1 => {
                    let mvo1 = Mvo1::new(&spec)?;
                    let p = mvo1.pressure(rho, t)?.p;
                    (p, mvo1.sound_speed(p, t)?)
                }
            };
            let mut row: Vec<String> = ys.iter().map(|&y| sig(y)).collect();
            row.extend([sig(rho), sig(t), sig(p / 1e6), sig(c)]);
            line(out, &row)?;
        }
    }
    Ok(())
}

/// Closed-form convexity, analytic c² and the thermodynamic surface of a record.
enum Kernel {
    Na(NobleAbel),
    Vo1(Virial),
    Cvt(VirialCvt),
}

impl Kernel {
    fn new(params: &GasParams) -> Result<Self> {
        Ok(match params.law {
            GasLaw::NobleAbel { .. } => Kernel::Na(NobleAbel::try_from(params)?),
            GasLaw::Virial { .. } => Kernel::Vo1(Virial::try_from(params)?),
            GasLaw::VirialCvt { .. } => Kernel::Cvt(VirialCvt::try_from(params)?),
        })
    }

    fn singular(&self, rho: f64) -> bool {
        matches!(self, Kernel::Na(na) if 1.0 / rho <= na.b)
    }

    fn surface(&self) -> &dyn reduced_eos::numerics::ThermoSurface {
        match self {
            Kernel::Na(k) => k,
            Kernel::Vo1(k) => k,
            Kernel::Cvt(k) => k,
        }
    }

    fn closed(&self, rho: f64, p: f64, t: f64) -> (ConvexityReport, Option<f64>) {
        match self {
            Kernel::Na(k) => (k.convexity(1.0 / rho, p, t), Some(k.gamma() * p / rho / (1.0 - rho * k.b))),
            Kernel::Vo1(k) => (k.convexity(rho, p, t), Some(k.sound_speed(p, rho).powi(2))),
            Kernel::Cvt(k) => (Virial::new(k.r, k.a, k.cv_at(t), k.q).convexity(rho, p, t), None),
        }
    }
}

#[derive(Default)]
struct AuditTally {
    points: usize,
    evaluated: usize,
    skipped: usize,
    max_maxwell: f64,
    maxwell_violations: usize,
    convexity_violations: usize,
    sign_mismatches: usize,
    max_c2_delta: Option<f64>,
    max_forms_delta: f64,
    sound_speed_violations: usize,
}

impl AuditTally {
    fn violations(&self) -> usize {
        self.maxwell_violations + self.convexity_violations + self.sign_mismatches + self.sound_speed_violations
    }
}

fn audit_point(kernel: &Kernel, rho: f64, t: f64, tally: &mut AuditTally) -> std::result::Result<(), EosError> {
    let surface = kernel.surface();
    let p = surface.pressure(rho, t)?;
    let maxwell = maxwell_residual(surface, rho, t)?;
    let (closed, c2) = kernel.closed(rho, p, t);
    let fd = convexity_audit_fd(surface, rho, t)?;
    let oracle = sound_speed_fd_oracle(surface, rho, t).ok();

    tally.evaluated += 1;
    tally.max_maxwell = tally.max_maxwell.max(maxwell);
    if !(maxwell <= AUDIT_MAXWELL_LIMIT) {
        tally.maxwell_violations += 1;
    }
    if !closed.convex || !closed.criteria_hold() || !fd.criteria_hold() {
        tally.convexity_violations += 1;
    }
    if closed.signs() != fd.signs() {
        tally.sign_mismatches += 1;
    }
    if let (Some(o), true) = (oracle, closed.convex && closed.criteria_hold()) {
        tally.max_forms_delta = tally.max_forms_delta.max(o.relative_disagreement());
        if o.relative_disagreement() > AUDIT_ORACLE_FORMS_LIMIT {
            tally.sound_speed_violations += 1;
        }
        if let Some(c2) = c2 {
            let delta = (c2 - o.c2_gibbs).abs() / o.c2_gibbs.abs();
            tally.max_c2_delta = Some(tally.max_c2_delta.unwrap_or(0.0).max(delta));
            if !(delta <= AUDIT_SOUND_SPEED_LIMIT) {
                tally.sound_speed_violations += 1;
            }
        }
    }
    Ok(())
}

pub fn audit(args: &AuditArgs, out: &mut dyn Write) -> Result<()> {
    let db = database(args.db.as_deref())?;
    let record = db.get(&args.material, args.model.into())?;
    let kernel = Kernel::new(&record.params)?;
    let densities = parse_range(&args.rho, "--rho")?;
    let temperatures = parse_range(&args.t, "--T")?;

    let mut tally = AuditTally::default();
    for &rho in &densities {
        for &t in &temperatures {
            tally.points += 1;
            if !(rho > 0.0 && t > 0.0) || kernel.singular(rho) || audit_point(&kernel, rho, t, &mut tally).is_err() {
                tally.skipped += 1;
            }
        }
    }

    let status = if tally.violations() == 0 && tally.evaluated > 0 { "pass" } else { "fail" };
    let rows: Vec<(&str, String)> = vec![
        ("material", record.params.name.clone()),
        ("model", record.params.model().to_string()),
        ("points", tally.points.to_string()),
        ("evaluated", tally.evaluated.to_string()),
        ("skipped_singular", tally.skipped.to_string()),
        ("max_maxwell_residual", sig(tally.max_maxwell)),
        ("maxwell_violations", tally.maxwell_violations.to_string()),
        ("convexity_violations", tally.convexity_violations.to_string()),
        ("convexity_sign_mismatches", tally.sign_mismatches.to_string()),
        ("max_sound_speed_delta", tally.max_c2_delta.map_or("n/a".into(), sig)),
        ("max_oracle_form_delta", sig(tally.max_forms_delta)),
        ("sound_speed_violations", tally.sound_speed_violations.to_string()),
        ("status", status.into()),
    ];
    line(out, &["check".into(), "value".into()])?;
    for (k, v) in rows {
        line(out, &[k.to_string(), v])?;
    }
    if status == "pass" {
        Ok(())
    } else if tally.evaluated == 0 {
        Err(CliError::Audit("no grid point could be evaluated".into()))
    } else {
        Err(CliError::Audit(format!("{} violation(s) over {} evaluated points", tally.violations(), tally.evaluated)))
    }
}

pub fn state(args: &StateArgs, out: &mut dyn Write) -> Result<()> {
    let db = database(args.db.as_deref())?;
    let record = db.get(&args.material, args.model.into())?;
    let params = &record.params;
    params.require_convex_convention()?;
    let reference = EntropyReference::default();
    enum Input {
        RhoT(f64, f64),
        PT(f64, f64),
        RhoE(f64, f64),
    }
    let input = match (args.rho, args.t, args.p, args.e) {
        (Some(rho), Some(t), None, None) => Input::RhoT(rho, t),
        (None, Some(t), Some(p), None) => Input::PT(p * 1e6, t),
        (Some(rho), None, None, Some(e)) => Input::RhoE(rho, e * 1e3),
        _ => return Err(CliError::Usage("give exactly one of --rho/--T, --P/--T or --rho/--e".into())),
    };
    let s: ThermoState = match Kernel::new(params)? {
        Kernel::Na(k) => match input {
            Input::RhoT(rho, t) => k.state_rho_t(rho, t, &reference)?,
            Input::PT(p, t) => k.state_p_t(p, t, &reference)?,
            Input::RhoE(rho, e) => k.state_rho_e(rho, e, &reference)?,
        },
        Kernel::Vo1(k) => match input {
            Input::RhoT(rho, t) => k.state_rho_t(rho, t, &reference)?,
            Input::PT(p, t) => k.state_p_t(p, t, &reference)?,
            Input::RhoE(rho, e) => k.state_rho_e(rho, e, &reference)?,
        },
        Kernel::Cvt(k) => match input {
            Input::RhoT(rho, t) => k.state_rho_t(rho, t)?,
            Input::PT(p, t) => k.state_p_t(p, t)?,
            Input::RhoE(rho, e) => k.state_rho_e(rho, e)?,
        },
    };
    line(
        out,
        &["P_MPa", "T_K", "rho_kg_m3", "v_m3_kg", "e_kJ_kg", "h_kJ_kg", "s_J_kgK", "c_m_s", "cp_J_kgK", "gamma"]
            .map(String::from),
    )?;
    line(
        out,
        &[
            sig(s.p / 1e6),
            sig(s.t),
            sig(s.rho),
            sig(s.v),
            sig(s.e / 1e3),
            sig(s.h / 1e3),
            s.s.map(sig).unwrap_or_default(),
            sig(s.c),
            sig(s.cp),
            sig(s.gamma),
        ],
    )
}
