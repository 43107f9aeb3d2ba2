//! Mixtures of gas products in pressure and temperature equilibrium.
//!
//! Noble-Abel components combine into a closed-form law (MNA) whose
//! coefficients are mass-fraction averages. Virial components (MVO1) need an
//! implicit solve for the common pressure.

use crate::error::{EosError, Result};
use crate::numerics::{solve_monotone, ThermoSurface};
use crate::thermo::{EosModel, GasLaw, GasParams, MASS_FRACTION_TOLERANCE, R_UNIVERSAL};
use crate::virial::virial_density;
use crate::virial_cvt::VirialCvt;

/// Relative tolerance on the MVO1 pressure.
pub const MVO1_TOLERANCE: f64 = 1e-12;
pub const MVO1_MAX_ITERATIONS: usize = 100;
/// Relative widening of the MVO1 pressure bracket.
pub const BRACKET_PADDING: f64 = 1e-9;

/// Gas products and their mass fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub components: Vec<(GasParams, f64)>,
    /// User declaration that every component shares the sign of its oxygen
    /// balance. It cannot be derived from the gas parameters.
    pub same_oxygen_balance: bool,
}

impl MixtureSpec {
    pub fn new(components: Vec<(GasParams, f64)>, same_oxygen_balance: bool) -> Result<Self> {
        let spec = MixtureSpec { components, same_oxygen_balance };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(EosError::validation("a mixture needs at least one component"));
        }
        let mut sum = 0.0;
        for (params, y) in &self.components {
            if !(*y >= 0.0 && *y <= 1.0) {
                return Err(EosError::validation(format!("mass fraction of {} is {y}, outside [0, 1]", params.name)));
            }
            params.validate()?;
            sum += y;
        }
        if (sum - 1.0).abs() > MASS_FRACTION_TOLERANCE {
            return Err(EosError::validation(format!("mass fractions sum to {sum}, not 1")));
        }
        Ok(())
    }

    fn require_model(&self, expected: EosModel) -> Result<()> {
        match self.components.iter().find(|(p, _)| p.model() != expected) {
            Some((p, _)) => Err(EosError::ModelMismatch { expected, found: p.model() }),
            None => Ok(()),
        }
    }
}

/// Mass-fraction weighted coefficients of the MNA law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MnaCoefficients {
    pub r_mix: f64,
    pub cv_mix: f64,
    pub q_mix: f64,
    pub b_mix: f64,
}

impl MnaCoefficients {
    /// Ŵ_mix = R̂/R_mix in g/mol.
    pub fn molar_mass(&self) -> f64 {
        R_UNIVERSAL / self.r_mix * 1e3
    }
}

pub fn mna_coefficients(mix: &MixtureSpec) -> Result<MnaCoefficients> {
    mix.validate()?;
    mix.require_model(EosModel::Na)?;
    let mut c = MnaCoefficients { r_mix: 0.0, cv_mix: 0.0, q_mix: 0.0, b_mix: 0.0 };
    for (p, y) in &mix.components {
        if let GasLaw::NobleAbel { covolume, cv } = p.law {
            c.r_mix += y * p.r;
            c.cv_mix += y * cv;
            c.q_mix += y * p.q;
            c.b_mix += y * covolume;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MnaState {
    /// Pa
    pub p: f64,
    /// K
    pub t: f64,
}

/// Noble-Abel mixture law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mna {
    pub coefficients: MnaCoefficients,
}

impl Mna {
    pub fn new(mix: &MixtureSpec) -> Result<Self> {
        Ok(Mna { coefficients: mna_coefficients(mix)? })
    }

    fn check_volume(&self, v: f64) -> Result<()> {
        if v > self.coefficients.b_mix {
            Ok(())
        } else {
            Err(EosError::domain(format!(
                "specific volume {v} m³/kg does not exceed the mixture covolume {} m³/kg",
                self.coefficients.b_mix
            )))
        }
    }

    pub fn temperature(&self, e: f64) -> Result<f64> {
        let k = &self.coefficients;
        if e > k.q_mix {
            Ok((e - k.q_mix) / k.cv_mix)
        } else {
            Err(EosError::domain(format!("internal energy {e} J/kg must exceed q_mix = {}", k.q_mix)))
        }
    }

    pub fn pressure_vt(&self, v: f64, t: f64) -> Result<f64> {
        self.check_volume(v)?;
        if !(t > 0.0) {
            return Err(EosError::domain(format!("temperature must be positive, got {t}")));
        }
        Ok(self.coefficients.r_mix * t / (v - self.coefficients.b_mix))
    }

    /// P = R_mix(e − q_mix)/(Cv_mix(v − b_mix)) with the common temperature.
    pub fn pressure(&self, v: f64, e: f64) -> Result<MnaState> {
        self.check_volume(v)?;
        let t = self.temperature(e)?;
        Ok(MnaState { p: self.pressure_vt(v, t)?, t })
    }

    /// c² = (1 + R_mix/Cv_mix)·P·v/(1 − b_mix/v).
    pub fn sound_speed(&self, p: f64, v: f64) -> Result<f64> {
        self.check_volume(v)?;
        let k = &self.coefficients;
        Ok(((1.0 + k.r_mix / k.cv_mix) * p * v / (1.0 - k.b_mix / v)).sqrt())
    }
}

impl ThermoSurface for Mna {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        self.pressure_vt(1.0 / rho, t)
    }

    fn energy(&self, _rho: f64, t: f64) -> Result<f64> {
        Ok(self.coefficients.cv_mix * t + self.coefficients.q_mix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct VirialComponent {
    y: f64,
    r: f64,
    a: f64,
    cv: f64,
}

impl VirialComponent {
    fn density(&self, p: f64, t: f64) -> Result<f64> {
        virial_density(self.r, self.a, p, t)
    }

    fn cp(&self, rho: f64) -> f64 {
        let ar = self.a * rho;
        self.cv + self.r * (1.0 + ar).powi(2) / (1.0 + 2.0 * ar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mvo1Solution {
    /// Pa
    pub p: f64,
    /// Density of each component at (P, T), in input order, kg/m³.
    pub component_densities: Vec<f64>,
    pub iterations: usize,
    /// Relative residual ρ_mix·|Σ Y_k/ρ_k − 1/ρ_mix|.
    pub residual: f64,
}

/// First-order virial mixture law.
#[derive(Debug, Clone, PartialEq)]
pub struct Mvo1 {
    components: Vec<VirialComponent>,
    pub cv_mix: f64,
    pub q_mix: f64,
}

impl Mvo1 {
    /// Requires VO1 components with a ≥ 0.
    pub fn new(mix: &MixtureSpec) -> Result<Self> {
        mix.validate()?;
        mix.require_model(EosModel::Vo1)?;
        let mut components = Vec::with_capacity(mix.components.len());
        let (mut cv_mix, mut q_mix) = (0.0, 0.0);
        for (p, y) in &mix.components {
            p.require_convex_convention()?;
            if let GasLaw::Virial { a, cv } = p.law {
                components.push(VirialComponent { y: *y, r: p.r, a, cv });
                cv_mix += y * cv;
                q_mix += y * p.q;
            }
        }
        Ok(Mvo1 { components, cv_mix, q_mix })
    }

    fn check_state(rho: f64, t: f64) -> Result<()> {
        if rho > 0.0 && t > 0.0 {
            Ok(())
        } else {
            Err(EosError::domain(format!("density and temperature must be positive, got rho = {rho}, T = {t}")))
        }
    }

    /// Bracket [ρ·min R·T, ρ·max R·T·(1 + max a·ρ·N)] of the common pressure,
    /// widened by [`BRACKET_PADDING`]: both ends are the root itself when all
    /// components coincide, and rounding may then put g on the wrong side.
    pub fn pressure_bracket(&self, rho: f64, t: f64) -> (f64, f64) {
        let active = self.components.iter().filter(|k| k.y > 0.0);
        let (mut r_min, mut r_max, mut a_max) = (f64::INFINITY, 0.0f64, 0.0f64);
        for k in active {
            r_min = r_min.min(k.r);
            r_max = r_max.max(k.r);
            a_max = a_max.max(k.a);
        }
        let n = self.components.len() as f64;
        (rho * r_min * t * (1.0 - BRACKET_PADDING), rho * r_max * t * (1.0 + a_max * rho * n) * (1.0 + BRACKET_PADDING))
    }

    /// g(P) = Σ Y_k/ρ_k(P, T) − 1/ρ_mix and dg/dP.
    fn residual(&self, p: f64, t: f64, rho: f64) -> (f64, f64) {
        let (mut v, mut dv) = (0.0, 0.0);
        for k in self.components.iter().filter(|k| k.y > 0.0) {
            match k.density(p, t) {
                Ok(rk) => {
                    v += k.y / rk;
                    dv -= k.y / (rk * rk * k.r * t * (1.0 + 2.0 * k.a * rk));
                }
                Err(_) => return (f64::NAN, f64::NAN),
            }
        }
        (v - 1.0 / rho, dv)
    }

    /// Common pressure at (ρ_mix, T), solved by safeguarded Newton.
    pub fn pressure(&self, rho: f64, t: f64) -> Result<Mvo1Solution> {
        Self::check_state(rho, t)?;
        let (lo, hi) = self.pressure_bracket(rho, t);
        let (r_bar, a_bar) = self.components.iter().fold((0.0, 0.0), |(r, a), k| (r + k.y * k.r, a + k.y * k.a));
        let guess = (rho * r_bar * t * (1.0 + a_bar * rho)).clamp(lo, hi);
        let sol =
            solve_monotone(|p| self.residual(p, t, rho), lo, hi, Some(guess), MVO1_TOLERANCE, MVO1_MAX_ITERATIONS)?;
        let component_densities = self.components.iter().map(|k| k.density(sol.root, t)).collect::<Result<Vec<_>>>()?;
        Ok(Mvo1Solution {
            p: sol.root,
            component_densities,
            iterations: sol.iterations,
            residual: (sol.residual * rho).abs(),
        })
    }

    pub fn temperature(&self, e: f64) -> Result<f64> {
        if e > self.q_mix {
            Ok((e - self.q_mix) / self.cv_mix)
        } else {
            Err(EosError::domain(format!("internal energy {e} J/kg must exceed q_mix = {}", self.q_mix)))
        }
    }

    pub fn pressure_from_energy(&self, rho: f64, e: f64) -> Result<Mvo1Solution> {
        let t = self.temperature(e)?;
        self.pressure(rho, t)
    }

    /// Mixture density Σ-inverse at (P, T) and the component densities.
    pub fn density(&self, p: f64, t: f64) -> Result<(f64, Vec<f64>)> {
        if !(p > 0.0 && t > 0.0) {
            return Err(EosError::domain("density needs positive P and T"));
        }
        let rhos = self.components.iter().map(|k| k.density(p, t)).collect::<Result<Vec<_>>>()?;
        let v: f64 = self.components.iter().zip(&rhos).map(|(k, r)| k.y / r).sum();
        Ok((1.0 / v, rhos))
    }

    /// Cp_mix = Σ Y_k·Cp_k(ρ_k).
    pub fn cp(&self, p: f64, t: f64) -> Result<f64> {
        let (_, rhos) = self.density(p, t)?;
        Ok(self.components.iter().zip(&rhos).map(|(k, &r)| k.y * k.cp(r)).sum())
    }

    /// c² = Cp_mix·P / (Cv_mix·ρ_mix²·Σ Y_k(1 + a_kρ_k)/(ρ_k(1 + 2a_kρ_k))).
    pub fn sound_speed(&self, p: f64, t: f64) -> Result<f64> {
        let (rho, rhos) = self.density(p, t)?;
        let mut cp = 0.0;
        let mut sum = 0.0;
        for (k, &rk) in self.components.iter().zip(&rhos) {
            let ar = k.a * rk;
            cp += k.y * k.cp(rk);
            sum += k.y * (1.0 + ar) / (rk * (1.0 + 2.0 * ar));
        }
        Ok((cp * p / (self.cv_mix * rho * rho * sum)).sqrt())
    }
}

impl ThermoSurface for Mvo1 {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        Mvo1::pressure(self, rho, t).map(|s| s.p)
    }

    fn energy(&self, _rho: f64, t: f64) -> Result<f64> {
        Ok(self.cv_mix * t + self.q_mix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureFlame {
    /// K
    pub t_flame: f64,
    /// Σ Y_k·e_s,eff,k, J/kg.
    pub e_s_eff: f64,
}

/// T_flame from the mixture effective energy. For Cv(T) components the
/// mixture caloric law Σ Y_k(Cv0_k·T + (c_k/2)·T²) is inverted.
pub fn mixture_flame_temperature(mix: &MixtureSpec) -> Result<MixtureFlame> {
    mix.validate()?;
    let (mut e, mut cv0, mut c) = (0.0, 0.0, 0.0);
    for (p, y) in &mix.components {
        e += y * p.e_s_eff;
        match p.law {
            GasLaw::NobleAbel { cv, .. } | GasLaw::Virial { cv, .. } => cv0 += y * cv,
            GasLaw::VirialCvt { cv0: k0, c: kc, .. } => {
                cv0 += y * k0;
                c += y * kc;
            }
        }
    }
    let t_flame = if c == 0.0 { e / cv0 } else { VirialCvt::new(1.0, 0.0, cv0, c, 0.0).temperature(e)? };
    Ok(MixtureFlame { t_flame, e_s_eff: e })
}
