//! Noble-Abel gas: P(v, T) = RT/(v − b) with e(T) = Cv·T + q.

use crate::error::{EosError, Result};
use crate::numerics::{ConvexityReport, ThermoSurface};
use crate::thermo::{EntropyReference, EosModel, GasLaw, GasParams, ThermoState};

/// Parameters of the Noble-Abel kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NobleAbel {
    /// J/(kg·K)
    pub r: f64,
    /// Covolume, m³/kg.
    pub b: f64,
    /// J/(kg·K)
    pub cv: f64,
    /// J/kg
    pub q: f64,
}

/// Quantities that follow from (P, T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaDerived {
    pub v: f64,
    pub h: f64,
    pub cp: f64,
    pub gamma: f64,
    pub c: f64,
}

impl TryFrom<&GasParams> for NobleAbel {
    type Error = EosError;

    fn try_from(params: &GasParams) -> Result<Self> {
        params.expect_model(EosModel::Na)?;
        match params.law {
            GasLaw::NobleAbel { covolume, cv } => Ok(NobleAbel { r: params.r, b: covolume, cv, q: params.q }),
            _ => unreachable!("model checked above"),
        }
    }
}

impl NobleAbel {
    pub fn new(r: f64, b: f64, cv: f64, q: f64) -> Self {
        NobleAbel { r, b, cv, q }
    }

    /// γ = 1 + R/Cv, constant.
    pub fn gamma(&self) -> f64 {
        1.0 + self.r / self.cv
    }

    fn check_volume(&self, v: f64) -> Result<()> {
        if v > self.b {
            Ok(())
        } else {
            Err(EosError::domain(format!("specific volume {v} m³/kg does not exceed the covolume {} m³/kg", self.b)))
        }
    }

    fn check_temperature(t: f64) -> Result<()> {
        if t > 0.0 {
            Ok(())
        } else {
            Err(EosError::domain(format!("temperature must be positive, got {t} K")))
        }
    }

    pub fn pressure_vt(&self, v: f64, t: f64) -> Result<f64> {
        self.check_volume(v)?;
        Self::check_temperature(t)?;
        Ok(self.r * t / (v - self.b))
    }

    pub fn energy(&self, t: f64) -> f64 {
        self.cv * t + self.q
    }

    pub fn temperature(&self, e: f64) -> Result<f64> {
        if e > self.q {
            Ok((e - self.q) / self.cv)
        } else {
            Err(EosError::domain(format!("internal energy {e} J/kg must exceed q = {} J/kg", self.q)))
        }
    }

    pub fn pressure_ve(&self, v: f64, e: f64) -> Result<f64> {
        let t = self.temperature(e)?;
        self.pressure_vt(v, t)
    }

    /// v(P, T) = RT/P + b.
    pub fn volume(&self, p: f64, t: f64) -> f64 {
        self.r * t / p + self.b
    }

    /// c² = γ(P/ρ)/(1 − ρb).
    pub fn sound_speed(&self, p: f64, rho: f64) -> Result<f64> {
        self.check_volume(1.0 / rho)?;
        Ok((self.gamma() * p / rho / (1.0 - rho * self.b)).sqrt())
    }

    pub fn derived(&self, p: f64, t: f64) -> Result<NaDerived> {
        if !(p > 0.0) {
            return Err(EosError::domain(format!("pressure must be positive, got {p} Pa")));
        }
        Self::check_temperature(t)?;
        let v = self.volume(p, t);
        let cp = self.r + self.cv;
        Ok(NaDerived { v, h: cp * t + self.b * p + self.q, cp, gamma: cp / self.cv, c: self.sound_speed(p, 1.0 / v)? })
    }

    /// s = s0 − R ln(P/P0) + (Cv + R) ln(T/T0).
    ///
    /// Identical to −R ln P + (Cv + R) ln T + q′ with q′ fixed by the
    /// reference state; the ratio form returns s0 exactly at (P0, T0).
    pub fn entropy(&self, p: f64, t: f64, reference: &EntropyReference) -> Result<f64> {
        if !(p > 0.0 && t > 0.0) {
            return Err(EosError::domain("entropy needs positive P and T"));
        }
        Ok(reference.s0 - self.r * (p / reference.p0).ln() + (self.cv + self.r) * (t / reference.t0).ln())
    }

    /// Closed-form convexity criteria at a caller-supplied (P, T) and volume v.
    ///
    /// `convex` is the condition v > b; the criteria are
    /// (c²/v², P(v−b)/(R·Cv), −P/Cv, P²/(R·Cv)).
    pub fn convexity(&self, v: f64, p: f64, _t: f64) -> ConvexityReport {
        let rho = 1.0 / v;
        let c2 = self.gamma() * p / rho / (1.0 - rho * self.b);
        ConvexityReport {
            convex: v > self.b,
            criteria: [c2 / (v * v), p * (v - self.b) / (self.r * self.cv), -p / self.cv, p * p / (self.r * self.cv)],
        }
    }

    /// Full state from (ρ, T).
    pub fn state_rho_t(&self, rho: f64, t: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let v = 1.0 / rho;
        let p = self.pressure_vt(v, t)?;
        let d = self.derived(p, t)?;
        Ok(ThermoState {
            p,
            t,
            rho,
            v,
            e: self.energy(t),
            h: d.h,
            s: Some(self.entropy(p, t, reference)?),
            c: d.c,
            cp: d.cp,
            gamma: d.gamma,
        })
    }

    pub fn state_p_t(&self, p: f64, t: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let d = self.derived(p, t)?;
        self.state_rho_t(1.0 / d.v, t, reference)
    }

    pub fn state_rho_e(&self, rho: f64, e: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let t = self.temperature(e)?;
        self.state_rho_t(rho, t, reference)
    }
}

impl ThermoSurface for NobleAbel {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        self.pressure_vt(1.0 / rho, t)
    }

    fn energy(&self, _rho: f64, t: f64) -> Result<f64> {
        Ok(NobleAbel::energy(self, t))
    }
}
