//! Finite-difference verifiers built on the thermal law P(ρ, T) and the
//! caloric law e(ρ, T) of an EOS, independent of any closed-form sound speed
//! or convexity expression.

use super::fd::{derivative, DENSITY_STEP_FLOOR, TEMPERATURE_STEP_FLOOR};
use crate::error::{EosError, Result};

/// Thermal and caloric laws expressed on the (ρ, T) plane.
pub trait ThermoSurface {
    /// Pa
    fn pressure(&self, rho: f64, t: f64) -> Result<f64>;
    /// J/kg
    fn energy(&self, rho: f64, t: f64) -> Result<f64>;
}

impl<S: ThermoSurface + ?Sized> ThermoSurface for &S {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        (**self).pressure(rho, t)
    }

    fn energy(&self, rho: f64, t: f64) -> Result<f64> {
        (**self).energy(rho, t)
    }
}

/// Adapter turning a pair of closures into a [`ThermoSurface`].
pub struct FnSurface<P, E> {
    pub pressure: P,
    pub energy: E,
}

impl<P, E> ThermoSurface for FnSurface<P, E>
where
    P: Fn(f64, f64) -> f64,
    E: Fn(f64, f64) -> f64,
{
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        Ok((self.pressure)(rho, t))
    }

    fn energy(&self, rho: f64, t: f64) -> Result<f64> {
        Ok((self.energy)(rho, t))
    }
}

/// Values and first partials of P and e at one (ρ, T) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePartials {
    pub rho: f64,
    pub t: f64,
    pub p: f64,
    pub e: f64,
    pub p_rho: f64,
    pub p_t: f64,
    pub e_rho: f64,
    pub e_t: f64,
}

pub fn surface_partials<S: ThermoSurface + ?Sized>(eos: &S, rho: f64, t: f64) -> Result<SurfacePartials> {
    Ok(SurfacePartials {
        rho,
        t,
        p: eos.pressure(rho, t)?,
        e: eos.energy(rho, t)?,
        p_rho: derivative(|r| eos.pressure(r, t), rho, DENSITY_STEP_FLOOR)?,
        p_t: derivative(|tt| eos.pressure(rho, tt), t, TEMPERATURE_STEP_FLOOR)?,
        e_rho: derivative(|r| eos.energy(r, t), rho, DENSITY_STEP_FLOOR)?,
        e_t: derivative(|tt| eos.energy(rho, tt), t, TEMPERATURE_STEP_FLOOR)?,
    })
}

impl SurfacePartials {
    /// (∂e/∂P)_ρ
    pub fn e_p_at_const_rho(&self) -> f64 {
        self.e_t / self.p_t
    }

    /// (∂e/∂ρ)_P
    pub fn e_rho_at_const_p(&self) -> f64 {
        self.e_rho - self.e_t * self.p_rho / self.p_t
    }

    /// Frozen sound speed from the Gibbs identity along an isentrope.
    pub fn c2_gibbs(&self) -> f64 {
        (self.p / (self.rho * self.rho) - self.e_rho_at_const_p()) / self.e_p_at_const_rho()
    }

    /// Cp = (∂h/∂T)_P with h = e + P/ρ.
    pub fn cp(&self) -> f64 {
        let h_t = self.e_t + self.p_t / self.rho;
        let h_rho = self.e_rho + self.p_rho / self.rho - self.p / (self.rho * self.rho);
        h_t - h_rho * self.p_t / self.p_rho
    }

    /// Sound speed as (Cp/Cv)·(∂P/∂ρ)_T.
    pub fn c2_isothermal(&self) -> f64 {
        self.cp() / self.e_t * self.p_rho
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoundSpeedOracle {
    /// c² = [P/ρ² − (∂e/∂ρ)_P] / (∂e/∂P)_ρ
    pub c2_gibbs: f64,
    /// c² = (Cp/Cv)·(∂P/∂ρ)_T
    pub c2_isothermal: f64,
    pub cv: f64,
    pub cp: f64,
}

impl SoundSpeedOracle {
    pub fn relative_disagreement(&self) -> f64 {
        (self.c2_gibbs - self.c2_isothermal).abs() / self.c2_gibbs.abs()
    }

    pub fn c(&self) -> f64 {
        self.c2_gibbs.sqrt()
    }
}

/// Frozen sound speed by finite differences, computed in both equivalent forms.
pub fn sound_speed_fd_oracle<S: ThermoSurface + ?Sized>(eos: &S, rho: f64, t: f64) -> Result<SoundSpeedOracle> {
    let d = surface_partials(eos, rho, t)?;
    let oracle = SoundSpeedOracle { c2_gibbs: d.c2_gibbs(), c2_isothermal: d.c2_isothermal(), cv: d.e_t, cp: d.cp() };
    if !(oracle.c2_gibbs.is_finite() && oracle.c2_isothermal.is_finite()) {
        return Err(EosError::Numerical(format!("non-finite sound speed estimate at rho = {rho}, T = {t}")));
    }
    Ok(oracle)
}

/// Relative Maxwell compatibility residual
/// |(∂e/∂v)_T − [T(∂P/∂T)_v − P]| / |P|, evaluated as
/// |ρ²(∂e/∂ρ)_T + T(∂P/∂T)_ρ − P| / |P|.
pub fn maxwell_residual<S: ThermoSurface + ?Sized>(eos: &S, rho: f64, t: f64) -> Result<f64> {
    let p = eos.pressure(rho, t)?;
    let e_rho = derivative(|r| eos.energy(r, t), rho, DENSITY_STEP_FLOOR)?;
    let p_t = derivative(|tt| eos.pressure(rho, tt), t, TEMPERATURE_STEP_FLOOR)?;
    Ok((rho * rho * e_rho + t * p_t - p).abs() / p.abs())
}

/// The four convexity criteria (a)–(d) and a verdict.
///
/// Required signs: (a) > 0, (b) > 0, (c) < 0, (d) > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityReport {
    pub convex: bool,
    pub criteria: [f64; 4],
}

impl ConvexityReport {
    pub fn from_criteria(criteria: [f64; 4]) -> Self {
        let mut report = ConvexityReport { convex: false, criteria };
        report.convex = report.criteria_hold();
        report
    }

    /// Whether every criterion has its required sign.
    pub fn criteria_hold(&self) -> bool {
        let [a, b, c, d] = self.criteria;
        a > 0.0 && b > 0.0 && c < 0.0 && d > 0.0
    }

    /// Sign pattern of the criteria, `true` meaning the required sign holds.
    pub fn signs(&self) -> [bool; 4] {
        let [a, b, c, d] = self.criteria;
        [a > 0.0, b > 0.0, c < 0.0, d > 0.0]
    }
}

/// Convexity criteria in density form, from finite-difference partials only.
pub fn convexity_audit_fd<S: ThermoSurface + ?Sized>(eos: &S, rho: f64, t: f64) -> Result<ConvexityReport> {
    let d = surface_partials(eos, rho, t)?;
    let rho2 = rho * rho;
    let rho2c2 = rho2 * d.c2_gibbs();
    let work = d.p - rho2 * d.e_rho;
    let a = rho2c2;
    let b = work / (d.p_t * d.e_t);
    let c = -work / d.e_t;
    let dd = work / (d.e_t * d.e_t) * (d.e_p_at_const_rho() * rho2c2 - work);
    Ok(ConvexityReport::from_criteria([a, b, c, dd]))
}
