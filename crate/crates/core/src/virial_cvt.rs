//! First-order virial gas with a linear specific heat Cv(T) = Cv0 + c·T.
//!
//! The thermal law is the constant-Cv one; only the caloric law changes:
//! e(T) = Cv0·T + (c/2)·T² + q.

use crate::error::{EosError, Result};
use crate::numerics::{sound_speed_fd_oracle, ThermoSurface};
use crate::thermo::{EosModel, GasLaw, GasParams, InertGasParams, ThermoState};
use crate::virial::{virial_density, virial_pressure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirialCvt {
    /// J/(kg·K)
    pub r: f64,
    /// m³/kg
    pub a: f64,
    /// J/(kg·K)
    pub cv0: f64,
    /// J/(kg·K²)
    pub c: f64,
    /// J/kg
    pub q: f64,
}

/// Reactive gas diluted by an inert gas at a common temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertMixtureState {
    /// J/kg
    pub e_mix: f64,
    /// Pa
    pub p: f64,
    /// J/(kg·K)
    pub r_mix: f64,
}

impl TryFrom<&GasParams> for VirialCvt {
    type Error = EosError;

    fn try_from(params: &GasParams) -> Result<Self> {
        params.expect_model(EosModel::Vo1Cvt)?;
        match params.law {
            GasLaw::VirialCvt { a, cv0, c } => Ok(VirialCvt { r: params.r, a, cv0, c, q: params.q }),
            _ => unreachable!("model checked above"),
        }
    }
}

impl VirialCvt {
    pub fn new(r: f64, a: f64, cv0: f64, c: f64, q: f64) -> Self {
        VirialCvt { r, a, cv0, c, q }
    }

    /// Cv0·T + (c/2)·T², the energy above q.
    pub fn effective_energy(&self, t: f64) -> f64 {
        self.cv0 * t + 0.5 * self.c * t * t
    }

    pub fn energy(&self, t: f64) -> f64 {
        self.effective_energy(t) + self.q
    }

    pub fn cv_at(&self, t: f64) -> f64 {
        self.cv0 + self.c * t
    }

    /// Positive root of (c/2)T² + Cv0·T = e − q, evaluated as
    /// 2(e − q)/(Cv0 + √(Cv0² + 2c(e − q))), which stays exact as c → 0.
    pub fn temperature(&self, e: f64) -> Result<f64> {
        let de = e - self.q;
        if !(de > 0.0) {
            return Err(EosError::domain(format!("internal energy {e} J/kg must exceed q = {} J/kg", self.q)));
        }
        let disc = self.cv0 * self.cv0 + 2.0 * self.c * de;
        if !(disc >= 0.0) {
            return Err(EosError::domain(format!("no real temperature for e − q = {de} J/kg with c = {}", self.c)));
        }
        Ok(2.0 * de / (self.cv0 + disc.sqrt()))
    }

    pub fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        if !(rho > 0.0 && t > 0.0) {
            return Err(EosError::domain(format!(
                "density and temperature must be positive, got rho = {rho}, T = {t}"
            )));
        }
        Ok(virial_pressure(self.r, self.a, rho, t))
    }

    pub fn density(&self, p: f64, t: f64) -> Result<f64> {
        if !(p > 0.0 && t > 0.0) {
            return Err(EosError::domain("density needs positive P and T"));
        }
        virial_density(self.r, self.a, p, t)
    }

    pub fn pressure_from_energy(&self, rho: f64, e: f64) -> Result<f64> {
        let t = self.temperature(e)?;
        self.pressure(rho, t)
    }

    /// P = ρR(1 + aρ)(−Cv0 + √(Cv0² + 2c(e − q)))/c, the textbook quadratic root.
    ///
    /// Loses digits for small c; kept as a cross-check of
    /// [`VirialCvt::pressure_from_energy`].
    pub fn pressure_from_energy_closed_form(&self, rho: f64, e: f64) -> Result<f64> {
        let de = e - self.q;
        if !(de > 0.0) {
            return Err(EosError::domain("internal energy must exceed q"));
        }
        let t = if self.c == 0.0 {
            de / self.cv0
        } else {
            (-self.cv0 + (self.cv0 * self.cv0 + 2.0 * self.c * de).sqrt()) / self.c
        };
        Ok(rho * self.r * (1.0 + self.a * rho) * t)
    }

    /// State of the reactive gas (mass fraction `y`) mixed with an inert gas.
    ///
    /// The virial correction uses the reactive coefficient a at the mixture
    /// density.
    pub fn inert_mixture_state(
        &self,
        inert: &InertGasParams,
        y: f64,
        rho_mix: f64,
        t: f64,
    ) -> Result<InertMixtureState> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(EosError::domain(format!("mass fraction {y} outside (0, 1]")));
        }
        if !(rho_mix > 0.0 && t > 0.0) {
            return Err(EosError::domain("mixture density and temperature must be positive"));
        }
        let r_mix = y * self.r + (1.0 - y) * inert.r();
        let e_inert = (1.0 - y) * (inert.cv * t + 0.5 * inert.c * t * t + inert.q);
        Ok(InertMixtureState {
            e_mix: y * self.energy(t) + e_inert,
            p: virial_pressure(r_mix, self.a, rho_mix, t),
            r_mix,
        })
    }

    /// State at (ρ, T). Cp, γ and c come from the finite-difference oracle;
    /// there is no entropy for this variant.
    pub fn state_rho_t(&self, rho: f64, t: f64) -> Result<ThermoState> {
        let p = self.pressure(rho, t)?;
        let oracle = sound_speed_fd_oracle(self, rho, t)?;
        let cv = self.cv_at(t);
        let ar = self.a * rho;
        let cp = cv + self.r * (1.0 + ar).powi(2) / (1.0 + 2.0 * ar);
        Ok(ThermoState {
            p,
            t,
            rho,
            v: 1.0 / rho,
            e: self.energy(t),
            h: self.energy(t) + p / rho,
            s: None,
            c: oracle.c(),
            cp,
            gamma: cp / cv,
        })
    }

    pub fn state_p_t(&self, p: f64, t: f64) -> Result<ThermoState> {
        let rho = self.density(p, t)?;
        self.state_rho_t(rho, t)
    }

    pub fn state_rho_e(&self, rho: f64, e: f64) -> Result<ThermoState> {
        let t = self.temperature(e)?;
        self.state_rho_t(rho, t)
    }
}

impl ThermoSurface for VirialCvt {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        VirialCvt::pressure(self, rho, t)
    }

    fn energy(&self, _rho: f64, t: f64) -> Result<f64> {
        Ok(VirialCvt::energy(self, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::maxwell_residual;
    use crate::virial::Virial;

    fn nc13() -> VirialCvt {
        VirialCvt::new(322.0, 0.002359, 1416.8, 0.0637, 0.0)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn energy_examples() {
        let g = nc13();
        assert!((g.effective_energy(3275.0) / 1e6 - 4.9816).abs() < 5e-5);
        assert!(rel(g.effective_energy(3275.0), 4980.7e3) < 2e-4);
        assert_eq!(g.effective_energy(0.0), 0.0);
        let flat = VirialCvt::new(322.0, 0.002359, 1640.5, 0.0, 0.0);
        assert!((flat.effective_energy(3275.0) / 1e3 - 5372.6).abs() < 0.1);
        // reference closure: q chosen so that e(T0) = 0
        let t0 = 298.15;
        let closed = VirialCvt { q: -g.effective_energy(t0), ..g };
        assert!(closed.energy(t0).abs() < 1e-9);
    }

    #[test]
    fn temperature_inverts_energy() {
        for c in [0.0, 1e-12, 0.0637] {
            let g = VirialCvt::new(322.0, 0.002359, 1416.8, c, -2e6);
            for i in 0..=47 {
                let t = 300.0 + 100.0 * i as f64;
                let back = g.temperature(g.energy(t)).unwrap();
                assert!(rel(back, t) < 1e-10, "c = {c}, T = {t}");
            }
        }
        let g = nc13();
        assert!((g.temperature(4.98163e6).unwrap() - 3275.0).abs() < 0.2);
        let flat = VirialCvt::new(322.0, 0.0, 1416.8, 0.0, 0.0);
        assert_eq!(flat.temperature(1416.8 * 2000.0).unwrap(), 2000.0);
        assert!(matches!(g.temperature(g.q), Err(EosError::Domain(_))));
    }

    #[test]
    fn pressure_from_energy_forms() {
        let g = nc13();
        let e = g.energy(3275.0);
        let p = g.pressure_from_energy(100.0, e).unwrap();
        assert!((p / 1e6 - 130.33).abs() < 0.005);
        assert!(rel(p, g.pressure_from_energy_closed_form(100.0, e).unwrap()) < 1e-12);
        let plain = VirialCvt::new(322.0, 0.0, 1416.8, 0.0, 0.0);
        assert!(rel(plain.pressure_from_energy(80.0, 3e6).unwrap(), 80.0 * 322.0 * 3e6 / 1416.8) < 1e-14);
        assert!(matches!(g.pressure_from_energy(100.0, 0.0), Err(EosError::Domain(_))));
    }

    #[test]
    fn thermal_law_is_shared_with_vo1() {
        let g = nc13();
        let v = Virial::new(g.r, g.a, 1640.5, 0.0);
        for rho in [10.0, 100.0, 400.0, 600.0] {
            for t in [1500.0, 3275.0, 4500.0] {
                assert_eq!(g.pressure(rho, t).unwrap().to_bits(), v.pressure(rho, t).unwrap().to_bits());
            }
        }
    }

    #[test]
    fn constant_cv_reduces_to_vo1() {
        let g = VirialCvt::new(322.0, 0.002359, 1640.5, 0.0, 1.5e5);
        let v = Virial::new(322.0, 0.002359, 1640.5, 1.5e5);
        let e = 5.2e6;
        assert!(rel(g.temperature(e).unwrap(), v.temperature(e).unwrap()) < 1e-12);
        assert!(rel(g.pressure_from_energy(120.0, e).unwrap(), v.pressure_from_energy(120.0, e).unwrap()) < 1e-12);
        let s = g.state_rho_t(120.0, 3000.0).unwrap();
        let r = v.state_rho_t(120.0, 3000.0, &Default::default()).unwrap();
        assert!(rel(s.cp, r.cp) < 1e-12);
        assert!(rel(s.c, r.c) < 1e-5);
    }

    #[test]
    fn inert_mixture() {
        let g = nc13();
        let argon = InertGasParams::argon();
        let pure = g.inert_mixture_state(&argon, 1.0, 100.0, 3275.0).unwrap();
        assert_eq!(pure.e_mix, g.energy(3275.0));
        assert_eq!(pure.p, g.pressure(100.0, 3275.0).unwrap());
        let half = g.inert_mixture_state(&argon, 0.5, 100.0, 3000.0).unwrap();
        assert!((half.r_mix - 265.1).abs() < 0.05, "{}", half.r_mix);
        let lean = g.inert_mixture_state(&argon, 0.15, 100.0, 1600.0).unwrap();
        assert!(lean.e_mix.is_finite() && lean.p > 0.0);
        assert!(g.inert_mixture_state(&argon, 0.0, 100.0, 1600.0).is_err());
        assert!(g.inert_mixture_state(&argon, 1.2, 100.0, 1600.0).is_err());
    }

    #[test]
    fn maxwell_compatible() {
        let g = nc13();
        for rho in [10.0, 200.0, 600.0] {
            for t in [1500.0, 3000.0, 4500.0] {
                assert!(maxwell_residual(&g, rho, t).unwrap() < 1e-8);
            }
        }
    }
}
