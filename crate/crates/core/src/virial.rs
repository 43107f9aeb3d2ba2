//! First-order virial gas: P(ρ, T) = ρRT(1 + aρ) with e(T) = Cv·T + q.

use crate::error::{EosError, Result};
use crate::numerics::{ConvexityReport, ThermoSurface};
use crate::thermo::{EntropyReference, EosModel, GasLaw, GasParams, ThermoState};

/// Thermal law shared by the constant-Cv and Cv(T) virial variants.
#[inline]
pub(crate) fn virial_pressure(r: f64, a: f64, rho: f64, t: f64) -> f64 {
    rho * r * t * (1.0 + a * rho)
}

/// Positive root of ρRT(1 + aρ) = P, written as 2P / (RT(1 + √(1 + 4aP/RT))).
///
/// The rationalised form has no cancellation for small aP/RT and reduces to
/// P/(RT) at a = 0.
pub(crate) fn virial_density(r: f64, a: f64, p: f64, t: f64) -> Result<f64> {
    let rt = r * t;
    let disc = 1.0 + 4.0 * a * p / rt;
    if !(disc >= 0.0) || !disc.is_finite() {
        return Err(EosError::Numerical(format!("negative discriminant {disc} in virial density inversion")));
    }
    Ok(2.0 * p / (rt * (1.0 + disc.sqrt())))
}

/// Parameters of the constant-Cv first-order virial kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Virial {
    /// J/(kg·K)
    pub r: f64,
    /// m³/kg
    pub a: f64,
    /// J/(kg·K)
    pub cv: f64,
    /// J/kg
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vo1Derived {
    pub rho: f64,
    pub h: f64,
    pub cp: f64,
    pub gamma: f64,
    pub c: f64,
}

impl TryFrom<&GasParams> for Virial {
    type Error = EosError;

    fn try_from(params: &GasParams) -> Result<Self> {
        params.expect_model(EosModel::Vo1)?;
        match params.law {
            GasLaw::Virial { a, cv } => Ok(Virial { r: params.r, a, cv, q: params.q }),
            _ => unreachable!("model checked above"),
        }
    }
}

impl Virial {
    pub fn new(r: f64, a: f64, cv: f64, q: f64) -> Self {
        Virial { r, a, cv, q }
    }

    fn check_positive(rho: f64, t: f64) -> Result<()> {
        if rho > 0.0 && t > 0.0 {
            Ok(())
        } else {
            Err(EosError::domain(format!("density and temperature must be positive, got rho = {rho}, T = {t}")))
        }
    }

    pub fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        Self::check_positive(rho, t)?;
        Ok(virial_pressure(self.r, self.a, rho, t))
    }

    pub fn density(&self, p: f64, t: f64) -> Result<f64> {
        Self::check_positive(p, t)?;
        virial_density(self.r, self.a, p, t)
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

    pub fn pressure_from_energy(&self, rho: f64, e: f64) -> Result<f64> {
        let t = self.temperature(e)?;
        self.pressure(rho, t)
    }

    /// Cp = Cv + R(1 + aρ)²/(1 + 2aρ).
    pub fn cp(&self, rho: f64) -> f64 {
        let ar = self.a * rho;
        self.cv + self.r * (1.0 + ar).powi(2) / (1.0 + 2.0 * ar)
    }

    /// c² = (P/ρ)[(R/Cv)(1 + aρ) + (1 + 2aρ)/(1 + aρ)].
    pub fn sound_speed(&self, p: f64, rho: f64) -> f64 {
        let ar = self.a * rho;
        (p / rho * (self.r / self.cv * (1.0 + ar) + (1.0 + 2.0 * ar) / (1.0 + ar))).sqrt()
    }

    /// h(P, T) = Cv·T + 2aP/(−1 + √(1 + 4aP/RT)) + q, evaluated as
    /// Cv·T + RT(1 + √(1 + 4aP/RT))/2 + q.
    pub fn enthalpy_pt(&self, p: f64, t: f64) -> f64 {
        let rt = self.r * t;
        self.cv * t + 0.5 * rt * (1.0 + (1.0 + 4.0 * self.a * p / rt).sqrt()) + self.q
    }

    pub fn derived(&self, p: f64, t: f64) -> Result<Vo1Derived> {
        let rho = self.density(p, t)?;
        let cp = self.cp(rho);
        Ok(Vo1Derived { rho, h: self.cv * t + p / rho + self.q, cp, gamma: cp / self.cv, c: self.sound_speed(p, rho) })
    }

    fn entropy_potential(&self, p: f64, t: f64) -> f64 {
        let x = 4.0 * self.a * p / (self.r * t);
        let root = (1.0 + x).sqrt();
        // −1 + √(1+x) = x/(1 + √(1+x))
        root + 2.0 * (x / (1.0 + root)).ln()
    }

    /// s = s0 − (R/2)[φ(P, T) − φ(P0, T0)] + Cv ln(T/T0) with
    /// φ = √(1 + 4aP/RT) + 2 ln(−1 + √(1 + 4aP/RT)).
    ///
    /// Singular at a = 0; use the Noble-Abel kernel with b = 0 there.
    pub fn entropy(&self, p: f64, t: f64, reference: &EntropyReference) -> Result<f64> {
        if !(self.a > 0.0) {
            return Err(EosError::domain(format!(
                "virial entropy requires a > 0 (got {}); use the Noble-Abel kernel with b = 0",
                self.a
            )));
        }
        if !(p > 0.0 && t > 0.0) {
            return Err(EosError::domain("entropy needs positive P and T"));
        }
        let dphi = self.entropy_potential(p, t) - self.entropy_potential(reference.p0, reference.t0);
        Ok(reference.s0 - 0.5 * self.r * dphi + self.cv * (t / reference.t0).ln())
    }

    /// (∂s/∂P)_T = −4a²P / (RT²√(1+x)(−1+√(1+x))²), x = 4aP/RT.
    pub fn entropy_pressure_slope(&self, p: f64, t: f64) -> f64 {
        let x = 4.0 * self.a * p / (self.r * t);
        let root = (1.0 + x).sqrt();
        let m = x / (1.0 + root);
        -4.0 * self.a * self.a * p / (self.r * t * t * root * m * m)
    }

    /// Closed-form convexity criteria at (ρ, P, T). `convex` is 1 + aρ > 0.
    ///
    /// Criterion (d) carries the factor (1 + 2aρ) and is already negative for
    /// −1 < aρ < −1/2, so `criteria_hold()` can be false while `convex` is true.
    pub fn convexity(&self, rho: f64, p: f64, _t: f64) -> ConvexityReport {
        let ar = self.a * rho;
        let (r, cv) = (self.r, self.cv);
        ConvexityReport {
            convex: 1.0 + ar > 0.0,
            criteria: [
                rho * p * (r / cv * (1.0 + ar) + (1.0 + 2.0 * ar) / (1.0 + ar)),
                p / (rho * r * cv * (1.0 + ar)),
                -p / cv,
                p * p * (1.0 + 2.0 * ar) / (r * cv * (1.0 + ar).powi(2)),
            ],
        }
    }

    fn entropy_or_ideal(&self, p: f64, t: f64, reference: &EntropyReference) -> Result<Option<f64>> {
        if self.a > 0.0 {
            self.entropy(p, t, reference).map(Some)
        } else if self.a == 0.0 {
            crate::noble_abel::NobleAbel::new(self.r, 0.0, self.cv, self.q).entropy(p, t, reference).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn state_rho_t(&self, rho: f64, t: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let p = self.pressure(rho, t)?;
        let cp = self.cp(rho);
        Ok(ThermoState {
            p,
            t,
            rho,
            v: 1.0 / rho,
            e: self.energy(t),
            h: self.cv * t + p / rho + self.q,
            s: self.entropy_or_ideal(p, t, reference)?,
            c: self.sound_speed(p, rho),
            cp,
            gamma: cp / self.cv,
        })
    }

    pub fn state_p_t(&self, p: f64, t: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let rho = self.density(p, t)?;
        self.state_rho_t(rho, t, reference)
    }

    pub fn state_rho_e(&self, rho: f64, e: f64, reference: &EntropyReference) -> Result<ThermoState> {
        let t = self.temperature(e)?;
        self.state_rho_t(rho, t, reference)
    }
}

impl ThermoSurface for Virial {
    fn pressure(&self, rho: f64, t: f64) -> Result<f64> {
        Virial::pressure(self, rho, t)
    }

    fn energy(&self, _rho: f64, t: f64) -> Result<f64> {
        Ok(Virial::energy(self, t))
    }
}
