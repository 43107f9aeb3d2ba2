//! Shared domain types, physical constants and unit conventions.
//!
//! Everything in the library works in strict SI: Pa, K, kg/m³, m³/kg, J/kg and
//! J/(kg·K). Conversions to MPa and kJ/kg only happen at the CLI boundary.

use std::fmt;

use crate::error::{EosError, Result};

/// Universal gas constant, J/(mol·K) (CODATA 2018, exact).
pub const R_UNIVERSAL: f64 = 8.314462618;
/// Reference temperature for entropy and energy closures, K.
pub const T0_REF: f64 = 298.15;
/// Reference pressure for entropy, Pa.
pub const P0_REF: f64 = 101_325.0;

/// Tolerance on `Σ Y_k = 1` for mixture specifications.
pub const MASS_FRACTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalConstants {
    /// J/(mol·K)
    pub r_hat: f64,
    /// K
    pub t0_ref: f64,
    /// Pa
    pub p0_ref: f64,
}

pub fn universal_constants() -> UniversalConstants {
    UniversalConstants { r_hat: R_UNIVERSAL, t0_ref: T0_REF, p0_ref: P0_REF }
}

/// Molar mass in g/mol of a gas with specific gas constant `r` (J/(kg·K)).
pub fn molar_mass_g_per_mol(r: f64) -> f64 {
    1e3 * R_UNIVERSAL / r
}

/// Specific gas constant, J/(kg·K), of a gas with molar mass `w` in g/mol.
pub fn gas_constant_from_molar_mass(w_g_per_mol: f64) -> f64 {
    R_UNIVERSAL / (w_g_per_mol * 1e-3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EosModel {
    /// Noble-Abel, constant Cv.
    Na,
    /// First-order virial, constant Cv.
    Vo1,
    /// First-order virial with Cv(T) = Cv0 + c·T.
    Vo1Cvt,
}

impl EosModel {
    pub fn as_str(self) -> &'static str {
        match self {
            EosModel::Na => "NA",
            EosModel::Vo1 => "VO1",
            EosModel::Vo1Cvt => "VO1_CVT",
        }
    }
}

impl fmt::Display for EosModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EosModel {
    type Err = EosError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NA" => Ok(EosModel::Na),
            "VO1" => Ok(EosModel::Vo1),
            "VO1_CVT" | "VO1CVT" => Ok(EosModel::Vo1Cvt),
            other => Err(EosError::validation(format!("unknown model `{other}`"))),
        }
    }
}

/// Model-specific part of a gas-product parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GasLaw {
    NobleAbel {
        /// Covolume b, m³/kg.
        covolume: f64,
        /// J/(kg·K)
        cv: f64,
    },
    Virial {
        /// First virial coefficient a, m³/kg.
        a: f64,
        cv: f64,
    },
    VirialCvt {
        a: f64,
        /// Constant part of Cv(T), J/(kg·K).
        cv0: f64,
        /// Linear slope of Cv(T), J/(kg·K²).
        c: f64,
    },
}

impl GasLaw {
    pub fn model(&self) -> EosModel {
        match self {
            GasLaw::NobleAbel { .. } => EosModel::Na,
            GasLaw::Virial { .. } => EosModel::Vo1,
            GasLaw::VirialCvt { .. } => EosModel::Vo1Cvt,
        }
    }
}

/// Closed interval of loading densities over which a parameter set was adjusted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityRange {
    pub lo: f64,
    pub hi: f64,
}

impl DensityRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(EosError::validation(format!("density range [{lo}, {hi}] must satisfy lo < hi")));
        }
        Ok(DensityRange { lo, hi })
    }

    pub fn contains(&self, rho: f64) -> bool {
        rho >= self.lo && rho <= self.hi
    }
}

/// Calibrated constants of the gas products of one reactive material.
#[derive(Debug, Clone, PartialEq)]
pub struct GasParams {
    pub name: String,
    /// Specific gas constant R, J/(kg·K).
    pub r: f64,
    pub law: GasLaw,
    /// Reference energy constant q, J/kg.
    pub q: f64,
    /// Effective solid energy delivered to the gas, J/kg.
    pub e_s_eff: f64,
    /// Flame temperature used for calibration, K.
    pub t_flame: f64,
    /// Specific-heat ratio used for calibration, when known.
    pub gamma_cal: Option<f64>,
    pub rho_range: DensityRange,
}

impl GasParams {
    pub fn model(&self) -> EosModel {
        self.law.model()
    }

    /// Molar mass Ŵ = R̂/R in g/mol.
    pub fn molar_mass(&self) -> f64 {
        molar_mass_g_per_mol(self.r)
    }

    /// Constant specific heat for NA/VO1; `None` for the Cv(T) variant.
    pub fn constant_cv(&self) -> Option<f64> {
        match self.law {
            GasLaw::NobleAbel { cv, .. } | GasLaw::Virial { cv, .. } => Some(cv),
            GasLaw::VirialCvt { .. } => None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Checks the record invariants.
    ///
    /// A negative virial coefficient is accepted here: it is representable so
    /// that non-convex records can be audited. Callers that evaluate states
    /// should use [`GasParams::require_convex_convention`] as well.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(EosError::validation(format!("{}: {what}", self.name)));
        if !(self.r.is_finite() && self.r > 0.0) {
            return fail("R must be positive");
        }
        if !(self.t_flame.is_finite() && self.t_flame > 0.0) {
            return fail("T_flame must be positive");
        }
        if !self.q.is_finite() || !self.e_s_eff.is_finite() {
            return fail("q and e_s_eff must be finite");
        }
        if let Some(g) = self.gamma_cal {
            if !(g.is_finite() && g > 1.0) {
                return fail("gamma must exceed 1");
            }
        }
        if !(self.rho_range.lo.is_finite() && self.rho_range.hi.is_finite() && self.rho_range.lo < self.rho_range.hi) {
            return fail("rho_range must satisfy lo < hi");
        }
        match self.law {
            GasLaw::NobleAbel { covolume, cv } => {
                if !(cv.is_finite() && cv > 0.0) {
                    return fail("Cv must be positive");
                }
                if !(covolume.is_finite() && covolume >= 0.0) {
                    return fail("covolume b must be non-negative");
                }
            }
            GasLaw::Virial { a, cv } => {
                if !(cv.is_finite() && cv > 0.0) {
                    return fail("Cv must be positive");
                }
                if !a.is_finite() {
                    return fail("virial coefficient a must be finite");
                }
            }
            GasLaw::VirialCvt { a, cv0, c } => {
                if !(cv0.is_finite() && cv0 > 0.0) {
                    return fail("Cv0 must be positive");
                }
                if !a.is_finite() || !c.is_finite() {
                    return fail("a and c must be finite");
                }
            }
        }
        Ok(())
    }

    /// Rejects a negative virial coefficient (the convention that keeps VO1
    /// convex for every density).
    pub fn require_convex_convention(&self) -> Result<()> {
        match self.law {
            GasLaw::Virial { a, .. } | GasLaw::VirialCvt { a, .. } if a < 0.0 => Err(EosError::validation(format!(
                "{}: negative virial coefficient a = {a} is not admissible (a ≥ 0 keeps VO1 convex)",
                self.name
            ))),
            _ => Ok(()),
        }
    }

    pub(crate) fn expect_model(&self, expected: EosModel) -> Result<()> {
        if self.model() == expected {
            Ok(())
        } else {
            Err(EosError::ModelMismatch { expected, found: self.model() })
        }
    }
}

/// Inert diluent used to vary the flame temperature in Cv(T) calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct InertGasParams {
    pub name: String,
    /// J/(kg·K)
    pub cv: f64,
    /// g/mol
    pub molar_mass: f64,
    /// J/kg, zero for noble gases.
    pub q: f64,
    /// J/(kg·K²), zero for noble gases.
    pub c: f64,
}

impl InertGasParams {
    /// Noble gas: constant Cv and zero reference energy.
    pub fn noble(name: impl Into<String>, cv: f64, molar_mass: f64) -> Result<Self> {
        let inert = InertGasParams { name: name.into(), cv, molar_mass, q: 0.0, c: 0.0 };
        inert.validate()?;
        Ok(inert)
    }

    /// Argon: Cv = 312.2 J/(kg·K), Ŵ = 39.95 g/mol.
    pub fn argon() -> Self {
        InertGasParams { name: "Argon".into(), cv: 312.2, molar_mass: 39.95, q: 0.0, c: 0.0 }
    }

    /// Xenon: monatomic Cv = (3/2)·R̂/Ŵ with Ŵ = 131.293 g/mol.
    pub fn xenon() -> Self {
        let molar_mass = 131.293;
        InertGasParams {
            name: "Xenon".into(),
            cv: 1.5 * gas_constant_from_molar_mass(molar_mass),
            molar_mass,
            q: 0.0,
            c: 0.0,
        }
    }

    /// Specific gas constant R_in = R̂/Ŵ_in, J/(kg·K).
    pub fn r(&self) -> f64 {
        gas_constant_from_molar_mass(self.molar_mass)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cv.is_finite() && self.cv > 0.0) {
            return Err(EosError::validation("inert Cv must be positive"));
        }
        if !(self.molar_mass.is_finite() && self.molar_mass > 0.0) {
            return Err(EosError::validation("inert molar mass must be positive"));
        }
        Ok(())
    }
}

/// A consistent thermodynamic point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    /// Pa
    pub p: f64,
    /// K
    pub t: f64,
    /// kg/m³
    pub rho: f64,
    /// m³/kg
    pub v: f64,
    /// J/kg
    pub e: f64,
    /// J/kg
    pub h: f64,
    /// J/(kg·K); absent where no entropy expression exists.
    pub s: Option<f64>,
    /// m/s
    pub c: f64,
    /// J/(kg·K)
    pub cp: f64,
    pub gamma: f64,
}

/// One closed-bomb record: loading density and peak pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedBombPoint {
    /// kg/m³
    pub rho_load: f64,
    /// Pa
    pub p_max: f64,
}

impl ClosedBombPoint {
    pub fn new(rho_load: f64, p_max: f64) -> Result<Self> {
        if !(rho_load.is_finite() && rho_load > 0.0) {
            return Err(EosError::validation(format!("loading density must be positive, got {rho_load}")));
        }
        if !(p_max.is_finite() && p_max > 0.0) {
            return Err(EosError::validation(format!("peak pressure must be positive, got {p_max}")));
        }
        Ok(ClosedBombPoint { rho_load, p_max })
    }

    /// Convenience constructor from table units (kg/m³, MPa).
    pub fn from_mpa(rho_load: f64, p_max_mpa: f64) -> Result<Self> {
        Self::new(rho_load, p_max_mpa * 1e6)
    }
}

/// One diluted closed-bomb run used for Cv(T) fitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertRunRecord {
    /// Reactant mass fraction in (0, 1].
    pub y: f64,
    /// K
    pub t_flame: f64,
    pub rho_load: Option<f64>,
}

impl InertRunRecord {
    pub fn new(y: f64, t_flame: f64) -> Result<Self> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(EosError::validation(format!("reactant mass fraction must lie in (0, 1], got {y}")));
        }
        if !(t_flame.is_finite() && t_flame > 0.0) {
            return Err(EosError::validation(format!("flame temperature must be positive, got {t_flame}")));
        }
        Ok(InertRunRecord { y, t_flame, rho_load: None })
    }
}

/// Reference state (P0, T0, s0) that pins the entropy constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReference {
    pub p0: f64,
    pub t0: f64,
    pub s0: f64,
}

impl Default for EntropyReference {
    fn default() -> Self {
        EntropyReference { p0: P0_REF, t0: T0_REF, s0: 0.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let k = universal_constants();
        assert_eq!(k.r_hat, 8.314462618);
        assert_eq!(k.t0_ref, 298.15);
        assert_eq!(k.p0_ref, 101325.0);
    }

    #[test]
    fn nc13_vo1_molar_mass() {
        // R = 322.0 corresponds to 25.82 g/mol.
        let w = molar_mass_g_per_mol(322.0);
        assert!((w - 25.82).abs() < 0.005, "{w}");
    }

    #[test]
    fn molar_mass_round_trip() {
        for r in [100.0, 208.1, 322.0, 338.9, 4124.0] {
            let back = gas_constant_from_molar_mass(molar_mass_g_per_mol(r));
            assert!((back - r).abs() / r < 1e-14);
        }
    }

    #[test]
    fn argon_matches_monatomic_value() {
        let ar = InertGasParams::argon();
        assert!((ar.r() - 208.1).abs() < 0.05);
        assert!((1.5 * ar.r() - ar.cv).abs() < 0.1);
        let xe = InertGasParams::xenon();
        assert!((xe.cv - 95.0).abs() < 0.05, "{}", xe.cv);
    }

    #[test]
    fn rejects_bad_records() {
        assert!(ClosedBombPoint::new(0.0, 1e8).is_err());
        assert!(ClosedBombPoint::new(100.0, -5.0).is_err());
        assert!(InertRunRecord::new(0.0, 2000.0).is_err());
        assert!(InertRunRecord::new(1.0, 2000.0).is_ok());
        assert!(DensityRange::new(150.0, 100.0).is_err());
    }

    #[test]
    fn model_parse() {
        assert_eq!("na".parse::<EosModel>().unwrap(), EosModel::Na);
        assert_eq!("vo1cvt".parse::<EosModel>().unwrap(), EosModel::Vo1Cvt);
        assert!("bkw".parse::<EosModel>().is_err());
    }
}
