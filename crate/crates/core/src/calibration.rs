//! Parameter determination from closed-bomb data: two-point NA/VO1 fits,
//! least-squares Cv(T) fits from diluted runs, and a molar-mass frozenness
//! screen.

use crate::error::{EosError, Result};
use crate::noble_abel::NobleAbel;
use crate::numerics::{lsq_fit_3, CVT_COLUMN_SCALE};
use crate::thermo::{ClosedBombPoint, DensityRange, EosModel, GasLaw, GasParams, InertGasParams, InertRunRecord};
use crate::virial::virial_pressure;
use crate::virial_cvt::VirialCvt;

/// |a|·ρ_max below which two-point data cannot be told apart from an ideal gas.
pub const IDEAL_GAS_TOLERANCE: f64 = 1e-9;

/// Default relative molar-mass spread accepted as frozen composition.
pub const DEFAULT_FROZEN_THRESHOLD: f64 = 0.01;

fn check_pair(p1: &ClosedBombPoint, p2: &ClosedBombPoint, t_flame: f64, gamma: f64) -> Result<()> {
    for p in [p1, p2] {
        if !(p.rho_load > 0.0 && p.p_max > 0.0) {
            return Err(EosError::validation("loading density and peak pressure must be positive"));
        }
    }
    if p1.rho_load == p2.rho_load {
        return Err(EosError::DegenerateData(format!("both points share the loading density {} kg/m³", p1.rho_load)));
    }
    if p1.p_max == p2.p_max {
        return Err(EosError::DegenerateData(format!("both points share the peak pressure {} Pa", p1.p_max)));
    }
    if !(t_flame.is_finite() && t_flame > 0.0) {
        return Err(EosError::validation(format!("flame temperature must be positive, got {t_flame}")));
    }
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(EosError::validation(format!("gamma must exceed 1, got {gamma}")));
    }
    Ok(())
}

fn range_of(p1: &ClosedBombPoint, p2: &ClosedBombPoint) -> DensityRange {
    DensityRange { lo: p1.rho_load.min(p2.rho_load), hi: p1.rho_load.max(p2.rho_load) }
}

/// Two-point Noble-Abel calibration. The returned record has an empty name.
pub fn calibrate_na(p1: ClosedBombPoint, p2: ClosedBombPoint, t_flame: f64, gamma: f64) -> Result<GasParams> {
    check_pair(&p1, &p2, t_flame, gamma)?;
    let (v1, v2) = (1.0 / p1.rho_load, 1.0 / p2.rho_load);
    let b = (p1.p_max * v1 - p2.p_max * v2) / (p1.p_max - p2.p_max);
    if b < 0.0 {
        return Err(EosError::validation(format!("negative covolume b = {b} m³/kg")));
    }
    if b >= v1.min(v2) {
        return Err(EosError::validation(format!("covolume b = {b} m³/kg reaches the specific volume of the data")));
    }
    let r = p1.p_max * (v1 - b) / t_flame;
    let cv = r / (gamma - 1.0);
    Ok(GasParams {
        name: String::new(),
        r,
        law: GasLaw::NobleAbel { covolume: b, cv },
        q: 0.0,
        e_s_eff: cv * t_flame,
        t_flame,
        gamma_cal: Some(gamma),
        rho_range: range_of(&p1, &p2),
    })
}

/// Two-point first-order virial calibration; Cv is evaluated at the mean
/// loading density.
pub fn calibrate_vo1(p1: ClosedBombPoint, p2: ClosedBombPoint, t_flame: f64, gamma: f64) -> Result<GasParams> {
    check_pair(&p1, &p2, t_flame, gamma)?;
    let (r1, r2) = (p1.rho_load, p2.rho_load);
    let (q1, q2) = (p1.p_max, p2.p_max);
    let cross = q1 * r2 * r2 - q2 * r1 * r1;
    let a = (q2 * r1 - q1 * r2) / cross;
    if (a * r1.max(r2)).abs() < IDEAL_GAS_TOLERANCE {
        return Err(EosError::validation("data indistinguishable from ideal gas (a = 0)"));
    }
    if a < 0.0 {
        return Err(EosError::validation(format!(
            "negative virial coefficient a = {a} m³/kg; the record would not be convex"
        )));
    }
    let r = cross / (t_flame * (r1 * r2 * r2 - r1 * r1 * r2));
    let mean = 0.5 * (r1 + r2);
    let ar = a * mean;
    let cv = r / (gamma - 1.0) * (1.0 + ar).powi(2) / (1.0 + 2.0 * ar);
    Ok(GasParams {
        name: String::new(),
        r,
        law: GasLaw::Virial { a, cv },
        q: 0.0,
        e_s_eff: cv * t_flame,
        t_flame,
        gamma_cal: Some(gamma),
        rho_range: range_of(&p1, &p2),
    })
}

/// Result of the least-squares Cv(T) fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvtFit {
    /// J/(kg·K)
    pub cv0: f64,
    /// J/(kg·K²)
    pub c: f64,
    /// J/kg
    pub q: f64,
    /// Euclidean residual of the energy balance, J/kg.
    pub residual_norm: f64,
    pub condition: f64,
}

impl CvtFit {
    /// Builds a Cv(T) record that keeps R, a, T_flame and the density range of
    /// a VO1 base record. The effective energy follows from the fitted Cv(T)
    /// at the base flame temperature.
    pub fn to_params(&self, base: &GasParams) -> Result<GasParams> {
        let a = match base.law {
            GasLaw::Virial { a, .. } | GasLaw::VirialCvt { a, .. } => a,
            GasLaw::NobleAbel { .. } => {
                return Err(EosError::ModelMismatch { expected: EosModel::Vo1, found: EosModel::Na })
            }
        };
        let kernel = VirialCvt::new(base.r, a, self.cv0, self.c, self.q);
        Ok(GasParams {
            name: base.name.clone(),
            r: base.r,
            law: GasLaw::VirialCvt { a, cv0: self.cv0, c: self.c },
            q: self.q,
            e_s_eff: kernel.effective_energy(base.t_flame),
            t_flame: base.t_flame,
            gamma_cal: None,
            rho_range: base.rho_range,
        })
    }
}

/// Fits (Cv0, c, q) to the energy balance of diluted runs,
/// Cv0·T + (c/2)·T² + q = e_s_i − ((1 − Y)/Y)·Cv_in·(T − T0).
///
/// `e_s_i` is the energy delivered per unit reactant mass and `t0` the initial
/// temperature of the charge.
pub fn calibrate_cvt(runs: &[InertRunRecord], inert: &InertGasParams, e_s_i: f64, t0: f64) -> Result<CvtFit> {
    if runs.len() < 3 {
        return Err(EosError::validation(format!("at least three runs are required, got {}", runs.len())));
    }
    inert.validate()?;
    if !e_s_i.is_finite() || !(t0.is_finite() && t0 > 0.0) {
        return Err(EosError::validation("e_s_i must be finite and T0 positive"));
    }
    let mut rows = Vec::with_capacity(runs.len());
    let mut targets = Vec::with_capacity(runs.len());
    for run in runs {
        if !(run.y > 0.0 && run.y <= 1.0) {
            return Err(EosError::validation(format!("mass fraction {} outside (0, 1]", run.y)));
        }
        if !(run.t_flame.is_finite() && run.t_flame > 0.0) {
            return Err(EosError::validation(format!("flame temperature {} must be positive", run.t_flame)));
        }
        let t = run.t_flame;
        rows.push([t, 0.5 * t * t, 1.0]);
        targets.push(e_s_i - (1.0 - run.y) / run.y * inert.cv * (t - t0));
    }
    let fit = lsq_fit_3(&rows, &targets, CVT_COLUMN_SCALE)?;
    Ok(CvtFit {
        cv0: fit.params[0],
        c: fit.params[1],
        q: fit.params[2],
        residual_norm: fit.residual_norm,
        condition: fit.condition,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozennessReport {
    pub frozen: bool,
    /// (max Ŵ − min Ŵ)/mean Ŵ
    pub max_rel_spread: f64,
}

/// Screens for frozen product composition across dilution runs from
/// `(Y, Ŵ)` pairs. The threshold is inclusive.
pub fn frozenness_check(molar_masses: &[(f64, f64)], threshold: f64) -> Result<FrozennessReport> {
    if molar_masses.len() < 2 {
        return Err(EosError::validation("at least two molar masses are required"));
    }
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &(_, w) in molar_masses {
        if !(w.is_finite() && w > 0.0) {
            return Err(EosError::validation(format!("molar mass {w} must be positive")));
        }
        lo = lo.min(w);
        hi = hi.max(w);
        sum += w;
    }
    let spread = (hi - lo) / (sum / molar_masses.len() as f64);
    Ok(FrozennessReport { frozen: spread <= threshold, max_rel_spread: spread })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedBombPrediction {
    /// K
    pub t_flame: f64,
    /// Pa
    pub p_max: f64,
    /// Loading density outside the calibration range.
    pub extrapolated: bool,
}

/// Flame temperature and peak pressure of a closed-bomb firing at `rho_load`.
pub fn predict_closed_bomb(params: &GasParams, rho_load: f64) -> Result<ClosedBombPrediction> {
    if !(rho_load.is_finite() && rho_load > 0.0) {
        return Err(EosError::domain(format!("loading density must be positive, got {rho_load}")));
    }
    let (t_flame, p_max) = match params.law {
        GasLaw::NobleAbel { covolume, cv } => {
            let t = params.e_s_eff / cv;
            let na = NobleAbel::new(params.r, covolume, cv, params.q);
            (t, na.pressure_vt(1.0 / rho_load, t)?)
        }
        GasLaw::Virial { a, cv } => {
            let t = params.e_s_eff / cv;
            if !(t > 0.0) {
                return Err(EosError::domain("non-positive flame temperature"));
            }
            (t, virial_pressure(params.r, a, rho_load, t))
        }
        GasLaw::VirialCvt { a, cv0, c } => {
            let kernel = VirialCvt::new(params.r, a, cv0, c, 0.0);
            let t = kernel.temperature(params.e_s_eff)?;
            (t, kernel.pressure(rho_load, t)?)
        }
    };
    Ok(ClosedBombPrediction { t_flame, p_max, extrapolated: !params.rho_range.contains(rho_load) })
}
