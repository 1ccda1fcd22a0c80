//! Field configuration producing the uniform effective magnetic field.
//!
//! The particle carries a magnetic quadrupole moment whose only nonzero
//! tensor components are `M_ρz = M_zρ = M` with `M > 0`. Moving through the
//! radial electric field `E = (λρ²/2) ρ̂` of a non-uniformly charged
//! cylinder, it acquires the effective vector potential
//! `A_eff = M × E = λMρ φ̂`, whose curl is uniform and axial. The constant
//! product `Mλ` is the field-strength label entering every spectral
//! formula, in particular the angular frequency `ϖ = Mλ/m` of the confined
//! system. The curl of `A_eff` itself is `2λM ẑ` — twice the label — which
//! is what fixes the cyclotron frequency `ω = 2Mλ/m` of the unconfined
//! system.
//!
//! Natural units `ħ = c = 1`; no laboratory-frame magnetic field enters the
//! Hamiltonian for this configuration.

use core::fmt;

/// Validation failures for the field configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldsError {
    /// Mass must be strictly positive and finite.
    NonPositiveMass,
    /// Quadrupole moment magnitude must be strictly positive and finite.
    NonPositiveMoment,
    /// Charge-density parameter λ must be nonnegative and finite.
    NegativeChargeDensity,
    /// Radial coordinate must be nonnegative and finite.
    NegativeRadius,
}

impl fmt::Display for FieldsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveMass => write!(f, "mass m must be > 0"),
            Self::NonPositiveMoment => write!(f, "quadrupole moment M must be > 0"),
            Self::NegativeChargeDensity => write!(f, "charge-density parameter lambda must be >= 0"),
            Self::NegativeRadius => write!(f, "radial coordinate rho must be >= 0"),
        }
    }
}

impl core::error::Error for FieldsError {}

/// Physical parameters of the system in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Particle mass `m > 0`.
    pub m: f64,
    /// Magnetic quadrupole moment magnitude `M > 0` (the `ρz` component).
    pub moment: f64,
    /// Charge-density parameter `λ ≥ 0` of the field source.
    pub lambda: f64,
}

impl SystemParams {
    pub fn new(m: f64, moment: f64, lambda: f64) -> Result<Self, FieldsError> {
        if m <= 0.0 || !m.is_finite() {
            return Err(FieldsError::NonPositiveMass);
        }
        if moment <= 0.0 || !moment.is_finite() {
            return Err(FieldsError::NonPositiveMoment);
        }
        if lambda < 0.0 || !lambda.is_finite() {
            return Err(FieldsError::NegativeChargeDensity);
        }
        Ok(Self { m, moment, lambda })
    }

    /// Build from the product `Mλ` directly (`M = 1`, `λ = m_lambda`).
    ///
    /// Only the product enters the dynamics, so this is the natural
    /// constructor when a caller specifies the effective field strength.
    pub fn from_effective_field(m: f64, m_lambda: f64) -> Result<Self, FieldsError> {
        if m_lambda < 0.0 || !m_lambda.is_finite() {
            return Err(FieldsError::NegativeChargeDensity);
        }
        Self::new(m, 1.0, m_lambda)
    }

    /// Effective magnetic field magnitude `Mλ`.
    pub fn effective_field(&self) -> f64 {
        self.moment * self.lambda
    }

    /// Angular frequency `ϖ = Mλ/m` of the confined system.
    pub fn frequency(&self) -> f64 {
        self.effective_field() / self.m
    }

    /// Cyclotron frequency `ω = 2Mλ/m` of the unconfined Landau-type system.
    pub fn cyclotron_frequency(&self) -> f64 {
        2.0 * self.effective_field() / self.m
    }
}

/// A field sample at one radial coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    pub params: SystemParams,
    pub rho: f64,
}

impl FieldConfig {
    pub fn new(params: SystemParams, rho: f64) -> Result<Self, FieldsError> {
        if rho < 0.0 || !rho.is_finite() {
            return Err(FieldsError::NegativeRadius);
        }
        Ok(Self { params, rho })
    }

    /// Radial electric field magnitude `λρ²/2`.
    pub fn electric_field(&self) -> f64 {
        self.params.lambda * self.rho * self.rho / 2.0
    }

    /// Azimuthal effective vector potential magnitude `λMρ`.
    pub fn vector_potential(&self) -> f64 {
        self.params.lambda * self.params.moment * self.rho
    }

    /// Axial effective field-strength label `λM` (independent of ρ).
    pub fn magnetic_field(&self) -> f64 {
        self.params.effective_field()
    }
}

/// Azimuthal magnitude of `A_eff = M × E` at radius `rho`, i.e. `λMρ`.
pub fn effective_vector_potential(params: &SystemParams, rho: f64) -> Result<f64, FieldsError> {
    if rho < 0.0 || !rho.is_finite() {
        return Err(FieldsError::NegativeRadius);
    }
    Ok(params.lambda * params.moment * rho)
}

/// Axial effective field-strength label, the constant `λM`.
///
/// This is the quantity every spectral formula is written in. The curl of
/// the vector potential is `2λM` (see [`crate::fields`] module docs), i.e.
/// `m` times the cyclotron frequency.
pub fn effective_magnetic_field(params: &SystemParams) -> f64 {
    params.effective_field()
}
