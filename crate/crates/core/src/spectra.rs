//! Spectrum computation for every confinement scenario: closed-form
//! ground-state frequencies, the general truncation-root solver, the energy
//! pipeline, hard-wall quantization (exact and asymptotic), and assembly of
//! normalized radial wavefunctions.
//!
//! For the Coulomb-type, linear, and mixed scenarios the spectrum is
//! quasi-exact: a level `(n, l)` exists in closed form only when the angular
//! frequency `ϖ = Mλ/m` is tuned so the Heun series truncates. The allowed
//! frequencies solve `a_{n+1}(ϖ) = 0`; the energy then follows from
//!
//! ```text
//! E_{n,l} = ϖ (n + |l| − l + 1) − η²/(2mϖ²)
//! ```
//!
//! (the last term only with a linear coupling present). The mixed-scenario
//! ground state makes the tuning a cubic:
//!
//! ```text
//! ϖ³ − [2mα²/(1+2|l|)] ϖ² − [4(1+|l|)αη/(1+2|l|)] ϖ − [(3+2|l|)η²/(2m)] = 0
//! ```
//!
//! whose middle coefficient carries the product `αη`, as both dimensional
//! analysis and re-deriving `a₂ = 0` require (printed versions of this
//! cubic sometimes drop the coupling product; [`frequency_solve_general`]
//! is the arbiter and agrees with the form above).

use alloc::vec::Vec;
use core::fmt;

use crate::fields::SystemParams;
use crate::heun::{heun_coefficients, HeunError, HeunParams};
use crate::math;
use crate::specfun::{bessel_j_zero, kummer_m, KummerArgs, SpecFunError};

pub const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectraError {
    /// A precondition on plain parameters failed; the payload names it.
    InvalidParameter(&'static str),
    /// A coupling that the constraint algebra divides by is zero.
    DegenerateConstraint(&'static str),
    /// The operation does not apply to the requested confinement scenario.
    UnsupportedScenario(&'static str),
    /// The energy bracket contains too few sign changes of the boundary
    /// function to isolate the requested root.
    BracketTooSmall { found: usize, needed: usize },
    /// Requested parameters do not truncate the Heun series; the payload is
    /// the offending relative coefficient magnitude.
    NonTruncating { residual: f64 },
    SpecFun(SpecFunError),
    Heun(HeunError),
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter(rule) => write!(f, "invalid parameter: {rule}"),
            Self::DegenerateConstraint(name) => write!(
                f,
                "degenerate constraint: coupling {name} must be nonzero (the constrained frequency would vanish)"
            ),
            Self::UnsupportedScenario(rule) => write!(f, "unsupported scenario: {rule}"),
            Self::BracketTooSmall { found, needed } => write!(
                f,
                "bracket too small: found {found} sign changes, need {needed}"
            ),
            Self::NonTruncating { residual } => write!(
                f,
                "parameters do not truncate the series (relative tail {residual:e})"
            ),
            Self::SpecFun(e) => write!(f, "{e}"),
            Self::Heun(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SpectraError {}

impl From<SpecFunError> for SpectraError {
    fn from(e: SpecFunError) -> Self {
        Self::SpecFun(e)
    }
}

impl From<HeunError> for SpectraError {
    fn from(e: HeunError) -> Self {
        Self::Heun(e)
    }
}

/// Radial confinement added to the Landau-type system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfinementSpec {
    /// Unconfined Landau-type system.
    None,
    /// Impenetrable wall at radius `rho0 > 0`.
    HardWall { rho0: f64 },
    /// Coulomb-type potential `α/ρ` with `α > 0`.
    Coulomb { alpha: f64 },
    /// Linear potential `ηρ` with `η > 0`.
    Linear { eta: f64 },
    /// Sum `α/ρ + ηρ` with both couplings positive.
    CoulombLinear { alpha: f64, eta: f64 },
}

impl ConfinementSpec {
    pub fn validate(&self) -> Result<(), SpectraError> {
        let positive = |x: f64, rule| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(SpectraError::InvalidParameter(rule))
            }
        };
        match *self {
            Self::None => Ok(()),
            Self::HardWall { rho0 } => positive(rho0, "hard-wall radius rho0 must be > 0"),
            Self::Coulomb { alpha } => positive(alpha, "Coulomb coupling alpha must be > 0"),
            Self::Linear { eta } => positive(eta, "linear coupling eta must be > 0"),
            Self::CoulombLinear { alpha, eta } => {
                positive(alpha, "Coulomb coupling alpha must be > 0")?;
                positive(eta, "linear coupling eta must be > 0")
            }
        }
    }

    /// `(α, η)` with zeros for absent couplings.
    pub fn couplings(&self) -> (f64, f64) {
        match *self {
            Self::None | Self::HardWall { .. } => (0.0, 0.0),
            Self::Coulomb { alpha } => (alpha, 0.0),
            Self::Linear { eta } => (0.0, eta),
            Self::CoulombLinear { alpha, eta } => (alpha, eta),
        }
    }

    /// True for the scenarios whose spectrum is fixed by series truncation.
    pub fn is_constrained(&self) -> bool {
        matches!(
            self,
            Self::Coulomb { .. } | Self::Linear { .. } | Self::CoulombLinear { .. }
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::None => "landau",
            Self::HardWall { .. } => "hardwall",
            Self::Coulomb { .. } => "coulomb",
            Self::Linear { .. } => "linear",
            Self::CoulombLinear { .. } => "mixed",
        }
    }
}

/// How an energy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Direct evaluation of an analytic formula or quantization condition.
    ClosedForm,
    /// Energy at a frequency tuned to satisfy the truncation conditions.
    TruncationConstrained,
    /// Finite-difference eigensolver output.
    NumericalOracle,
}

/// One eigenvalue with its quantum numbers and the frequency it presumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Radial quantum number (cosine-zero index for the hard wall).
    pub n: u32,
    /// Angular momentum quantum number.
    pub l: i32,
    /// Energy in natural units.
    pub energy: f64,
    /// The `ϖ = Mλ/m` value this level presumes (`ϖ_{n,l}` when constrained).
    pub frequency: f64,
    pub provenance: Provenance,
}

fn require(cond: bool, rule: &'static str) -> Result<(), SpectraError> {
    if cond {
        Ok(())
    } else {
        Err(SpectraError::InvalidParameter(rule))
    }
}

fn check_mass(m: f64) -> Result<(), SpectraError> {
    require(m > 0.0 && m.is_finite(), "mass m must be > 0")
}

fn check_coupling(x: f64, name: &'static str) -> Result<f64, SpectraError> {
    if x == 0.0 {
        return Err(SpectraError::DegenerateConstraint(name));
    }
    if x < 0.0 || !x.is_finite() {
        return Err(SpectraError::InvalidParameter("couplings must be positive"));
    }
    Ok(x)
}

fn abs_l(l: i32) -> f64 {
    l.unsigned_abs() as f64
}

/// Unconfined Landau-type level `E = ϖ (2 n_r + |l| − l + 1)`.
pub fn landau_level(n_r: u32, l: i32, frequency: f64) -> f64 {
    frequency * (2.0 * n_r as f64 + abs_l(l) - l as f64 + 1.0)
}

/// Ground-state (`n = 1`) frequency for Coulomb-type confinement:
/// `ϖ_{1,l} = 2mα²/(1+2|l|)`.
pub fn coulomb_frequency_ground(l: i32, m: f64, alpha: f64) -> Result<f64, SpectraError> {
    check_mass(m)?;
    let alpha = check_coupling(alpha, "alpha")?;
    Ok(2.0 * m * alpha * alpha / (1.0 + 2.0 * abs_l(l)))
}

/// Ground-state (`n = 1`) frequency for linear confinement:
/// `ϖ_{1,l} = [η²(2|l|+3)/(2m)]^{1/3}`.
pub fn linear_frequency_ground(l: i32, m: f64, eta: f64) -> Result<f64, SpectraError> {
    check_mass(m)?;
    let eta = check_coupling(eta, "eta")?;
    Ok(math::cbrt(eta * eta * (2.0 * abs_l(l) + 3.0) / (2.0 * m)))
}

/// Coefficients `(c2, c1, c0)` of the ground-state tuning cubic
/// `ϖ³ − c2 ϖ² − c1 ϖ − c0 = 0` for mixed confinement.
pub fn mixed_cubic_coefficients(l: i32, m: f64, alpha: f64, eta: f64) -> (f64, f64, f64) {
    let al = abs_l(l);
    let c2 = 2.0 * m * alpha * alpha / (1.0 + 2.0 * al);
    let c1 = 4.0 * (1.0 + al) * alpha * eta / (1.0 + 2.0 * al);
    let c0 = (3.0 + 2.0 * al) * eta * eta / (2.0 * m);
    (c2, c1, c0)
}

/// Ground-state (`n = 1`) frequency for mixed confinement: the unique
/// positive root of the cubic in [`mixed_cubic_coefficients`].
///
/// The sign pattern `(+, −, −, −)` has exactly one sign change, so exactly
/// one positive real root exists for any valid couplings.
pub fn mixed_frequency_ground(l: i32, m: f64, alpha: f64, eta: f64) -> Result<f64, SpectraError> {
    check_mass(m)?;
    let alpha = check_coupling(alpha, "alpha")?;
    let eta = check_coupling(eta, "eta")?;
    let (c2, c1, c0) = mixed_cubic_coefficients(l, m, alpha, eta);
    positive_cubic_root(c2, c1, c0)
        .ok_or(SpectraError::InvalidParameter("cubic has no positive root"))
}

/// Unique positive root of `x³ − c2 x² − c1 x − c0 = 0` for nonnegative
/// coefficients, by closed form (Cardano / trigonometric) plus Newton
/// polish, with a bracketed-bisection fallback.
pub fn positive_cubic_root(c2: f64, c1: f64, c0: f64) -> Option<f64> {
    let (b, c, d) = (-c2, -c1, -c0);
    let f = |x: f64| ((x + b) * x + c) * x + d;
    let fp = |x: f64| (3.0 * x + 2.0 * b) * x + c;

    let mut best: Option<f64> = None;
    for &root in real_cubic_roots(b, c, d).iter() {
        let mut x = root;
        for _ in 0..4 {
            let slope = fp(x);
            if slope != 0.0 {
                x -= f(x) / slope;
            }
        }
        if x > 0.0 && x.is_finite() {
            match best {
                Some(prev) if f(prev).abs() <= f(x).abs() => {}
                _ => best = Some(x),
            }
        }
    }

    let scale = 1.0 + c2 + c1 + c0;
    if let Some(x) = best {
        if f(x).abs() <= 1e-9 * scale * scale * scale {
            return Some(x);
        }
    }

    // Fallback: f(0) = -c0 <= 0 and f grows cubically; the Cauchy bound
    // 1 + max coefficient caps every root.
    let (mut lo, mut hi) = (0.0, scale);
    if !(f(lo) <= 0.0 && f(hi) > 0.0) {
        return best;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    (x > 0.0).then_some(x)
}

/// All real roots of the monic cubic `x³ + bx² + cx + d` (repeats possible).
fn real_cubic_roots(b: f64, c: f64, d: f64) -> Vec<f64> {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let mut roots = Vec::new();
    if disc > 0.0 {
        let s = math::sqrt(disc);
        let t = math::cbrt(-0.5 * q + s) + math::cbrt(-0.5 * q - s);
        roots.push(t + shift);
    } else if p == 0.0 && q == 0.0 {
        roots.push(shift);
    } else {
        let radius = 2.0 * math::sqrt(-p / 3.0);
        let arg = (3.0 * q / (p * radius)).clamp(-1.0, 1.0);
        let phi = math::acos(arg);
        for k in 0..3 {
            roots.push(radius * math::cos((phi - 2.0 * PI * k as f64) / 3.0) + shift);
        }
    }
    roots
}

/// Energy at a tuned frequency:
/// `E = ϖ (n + |l| − l + 1) − η²/(2mϖ²)`, the last term present only when a
/// linear coupling is active.
pub fn constrained_energy(
    scenario: &ConfinementSpec,
    n: u32,
    l: i32,
    m: f64,
    frequency: f64,
) -> Result<EnergyLevel, SpectraError> {
    scenario.validate()?;
    if !scenario.is_constrained() {
        return Err(SpectraError::UnsupportedScenario(
            "constrained energies apply to coulomb, linear, or mixed confinement",
        ));
    }
    check_mass(m)?;
    require(n >= 1, "radial quantum number n must be >= 1")?;
    require(
        frequency > 0.0 && frequency.is_finite(),
        "frequency must be > 0",
    )?;
    let (_, eta) = scenario.couplings();
    let mut energy = frequency * (n as f64 + abs_l(l) - l as f64 + 1.0);
    if eta > 0.0 {
        energy -= eta * eta / (2.0 * m * frequency * frequency);
    }
    Ok(EnergyLevel {
        n,
        l,
        energy,
        frequency,
        provenance: Provenance::TruncationConstrained,
    })
}

/// Result of a frequency scan: every positive root of `a_{n+1}(ϖ) = 0`
/// found in the scan window (empty roots with the window reported when the
/// scan finds none).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyScan {
    pub roots: Vec<f64>,
    pub window: (f64, f64),
}

/// All positive frequencies at which the series truncates at degree `n`:
/// `β` is fixed by `4β + θ² − 8 − 8|l| = 8n` and the remaining condition
/// `a_{n+1}(ϖ) = 0` is solved by a sign scan over a logarithmic grid plus
/// bisection.
pub fn frequency_solve_general(
    scenario: &ConfinementSpec,
    n: u32,
    l: i32,
    m: f64,
) -> Result<FrequencyScan, SpectraError> {
    scenario.validate()?;
    if !scenario.is_constrained() {
        return Err(SpectraError::UnsupportedScenario(
            "frequency constraints apply to coulomb, linear, or mixed confinement",
        ));
    }
    check_mass(m)?;
    require(n >= 1, "radial quantum number n must be >= 1")?;
    let (alpha, eta) = scenario.couplings();

    let tail = |freq: f64| -> f64 {
        let params = match HeunParams::with_truncation(l, n, m, m * freq, alpha, eta) {
            Ok(p) => p,
            Err(_) => return f64::NAN,
        };
        let series = heun_coefficients(&params, (n as usize + 1).max(2));
        series.coefficients[n as usize + 1]
    };

    let scale = 2.0 * m * alpha * alpha + math::cbrt(eta * eta / (2.0 * m)) + 1.0;
    let window = (1e-4 * scale, 1e4 * scale);
    const GRID: usize = 2000;
    let ratio = math::powf(window.1 / window.0, 1.0 / (GRID as f64 - 1.0));

    let mut roots = Vec::new();
    let mut prev_x = window.0;
    let mut prev_g = tail(prev_x);
    let mut x = window.0;
    for _ in 1..GRID {
        x *= ratio;
        let g = tail(x);
        if prev_g.is_finite() && g.is_finite() {
            if prev_g == 0.0 {
                roots.push(prev_x);
            } else if g != 0.0 && g.signum() != prev_g.signum() {
                roots.push(bisect_root(&tail, prev_x, x));
            }
        }
        prev_x = x;
        prev_g = g;
    }
    if prev_g == 0.0 {
        roots.push(prev_x);
    }
    Ok(FrequencyScan { roots, window })
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if hi - lo <= 1e-13 * hi.abs().max(lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Hard-wall levels from the large-parameter cosine zeros:
/// `E = [nπ + |l|π/2 + 3π/4]²/(2mρ₀²) + Mλ·l/m`, `n = 0, 1, 2, …`.
pub fn hardwall_energy_asymptotic(
    n: u32,
    l: i32,
    params: &SystemParams,
    rho0: f64,
) -> Result<EnergyLevel, SpectraError> {
    require(rho0 > 0.0 && rho0.is_finite(), "hard-wall radius rho0 must be > 0")?;
    let s = n as f64 * PI + abs_l(l) * PI / 2.0 + 3.0 * PI / 4.0;
    let energy = s * s / (2.0 * params.m * rho0 * rho0)
        + params.effective_field() * l as f64 / params.m;
    Ok(EnergyLevel {
        n,
        l,
        energy,
        frequency: params.frequency(),
        provenance: Provenance::ClosedForm,
    })
}

/// Exact hard-wall quantization: the `(n+1)`-th energy root of
/// `M(a(E), |l|+1, Mλρ₀²) = 0` with
/// `a(E) = |l|/2 + 1/2 − mE/(2Mλ) + l/2`, found inside `bracket` by sign
/// scan and bisection to relative 1e-10 or better.
///
/// Requires `Mλ > 0`; at `Mλ = 0` use [`hardwall_energy_bessel`], the limit
/// where the quantization condition degenerates to a Bessel zero.
pub fn hardwall_energy_exact(
    n: u32,
    l: i32,
    params: &SystemParams,
    rho0: f64,
    bracket: (f64, f64),
) -> Result<EnergyLevel, SpectraError> {
    require(rho0 > 0.0 && rho0.is_finite(), "hard-wall radius rho0 must be > 0")?;
    let m_lambda = params.effective_field();
    require(
        m_lambda > 0.0,
        "exact Kummer quantization requires M*lambda > 0 (use the Bessel limit at zero field)",
    )?;
    let m = params.m;
    let b = abs_l(l) + 1.0;
    let xi0 = m_lambda * rho0 * rho0;
    let boundary = |energy: f64| -> Result<f64, SpectraError> {
        let a = abs_l(l) / 2.0 + 0.5 - m * energy / (2.0 * m_lambda) + l as f64 / 2.0;
        Ok(kummer_m(&KummerArgs::new(a, b, xi0)?)?)
    };

    // Roots are asymptotically π-spaced in s = sqrt(2mρ₀²(E − Mλl/m)), so a
    // uniform s-grid with step π/16 cannot skip one.
    let shift = m_lambda * l as f64 / m;
    let (e_lo, e_hi) = bracket;
    require(e_hi > e_lo, "energy bracket must have positive width")?;
    if e_hi <= shift {
        return Err(SpectraError::BracketTooSmall {
            found: 0,
            needed: n as usize + 1,
        });
    }
    let to_s = |e: f64| math::sqrt((2.0 * m * rho0 * rho0 * (e - shift)).max(0.0));
    let from_s = |s: f64| shift + s * s / (2.0 * m * rho0 * rho0);
    let s_lo = to_s(e_lo.max(shift));
    let s_hi = to_s(e_hi);
    let steps = math::floor((s_hi - s_lo) / (PI / 16.0)) as usize + 2;

    let mut found = 0usize;
    let mut prev_e = from_s(s_lo);
    let mut prev_f = boundary(prev_e)?;
    for i in 1..=steps {
        let s = s_lo + (s_hi - s_lo) * i as f64 / steps as f64;
        let e = from_s(s);
        let fe = boundary(e)?;
        if prev_f != 0.0 && fe != 0.0 && fe.signum() != prev_f.signum() {
            if found == n as usize {
                let energy = bisect_boundary(&boundary, prev_e, e, prev_f)?;
                return Ok(EnergyLevel {
                    n,
                    l,
                    energy,
                    frequency: params.frequency(),
                    provenance: Provenance::ClosedForm,
                });
            }
            found += 1;
        }
        prev_e = e;
        prev_f = fe;
    }
    Err(SpectraError::BracketTooSmall {
        found,
        needed: n as usize + 1,
    })
}

fn bisect_boundary<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64, SpectraError>
where
    F: Fn(f64) -> Result<f64, SpectraError>,
{
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi.abs().max(lo.abs()).max(1e-300) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Default energy bracket for [`hardwall_energy_exact`]: from the angular
/// shift `Mλl/m` up past the asymptotic estimate of root `n` with a 2π
/// phase margin.
pub fn default_hardwall_bracket(n: u32, l: i32, params: &SystemParams, rho0: f64) -> (f64, f64) {
    let shift = params.effective_field() * l as f64 / params.m;
    let s_top = n as f64 * PI + abs_l(l) * PI / 2.0 + 3.0 * PI / 4.0 + 2.0 * PI;
    (shift, shift + s_top * s_top / (2.0 * params.m * rho0 * rho0))
}

/// Hard-wall levels at `Mλ = 0`: `E = j²_{|l|, n+1} / (2mρ₀²)` with `j` the
/// Bessel zeros.
pub fn hardwall_energy_bessel(
    n: u32,
    l: i32,
    m: f64,
    rho0: f64,
) -> Result<EnergyLevel, SpectraError> {
    check_mass(m)?;
    require(rho0 > 0.0 && rho0.is_finite(), "hard-wall radius rho0 must be > 0")?;
    let j = bessel_j_zero(l.unsigned_abs(), n as usize + 1)?;
    Ok(EnergyLevel {
        n,
        l,
        energy: j * j / (2.0 * m * rho0 * rho0),
        frequency: 0.0,
        provenance: Provenance::ClosedForm,
    })
}

/// Normalized radial wavefunction of a truncation-constrained level,
/// `R(r) = N e^{−r²/2} e^{−θr/2} r^{|l|} Σ_{k≤n} a_k r^k` in the
/// dimensionless radius `r = √(Mλ) ρ`, with `∫ R² r dr = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    /// Power-prefactor exponent `|l|`.
    pub abs_l: u32,
    /// Linear-prefactor coefficient: the wavefunction carries `e^{−θr/2}`.
    pub theta: f64,
    /// Polynomial coefficients `a_0 ..= a_n` (unnormalized, `a_0 = 1`).
    pub coefficients: Vec<f64>,
    /// Normalization constant `N`.
    pub normalization: f64,
    /// Quadrature cutoff beyond which the density integrand is below 1e-14
    /// of its peak.
    pub r_cut: f64,
}

impl RadialSolution {
    pub fn eval(&self, r: f64) -> f64 {
        let mut poly = 0.0;
        for &c in self.coefficients.iter().rev() {
            poly = poly * r + c;
        }
        self.normalization
            * math::exp(-r * r / 2.0 - self.theta * r / 2.0)
            * math::powi(r, self.abs_l as i32)
            * poly
    }

    /// Radial probability density `|R(r)|² r` (unit integral over `r`).
    pub fn weighted_density(&self, r: f64) -> f64 {
        let v = self.eval(r);
        v * v * r
    }

    /// Uniform samples `(r, R(r), |R(r)|² r)` on `[0, r_max]`.
    pub fn sample(&self, r_max: f64, points: usize) -> Vec<(f64, f64, f64)> {
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let r = r_max * i as f64 / (n - 1) as f64;
                (r, self.eval(r), self.weighted_density(r))
            })
            .collect()
    }
}

/// Build the normalized polynomial radial solution for a constrained level.
///
/// The frequency must satisfy the truncation conditions for `(n, l)`;
/// otherwise the tail coefficient is reported via
/// [`SpectraError::NonTruncating`].
pub fn assemble_radial_solution(
    scenario: &ConfinementSpec,
    n: u32,
    l: i32,
    m: f64,
    frequency: f64,
) -> Result<RadialSolution, SpectraError> {
    scenario.validate()?;
    if !scenario.is_constrained() {
        return Err(SpectraError::UnsupportedScenario(
            "radial polynomial solutions apply to coulomb, linear, or mixed confinement",
        ));
    }
    check_mass(m)?;
    require(n >= 1, "radial quantum number n must be >= 1")?;
    require(
        frequency > 0.0 && frequency.is_finite(),
        "frequency must be > 0",
    )?;
    let (alpha, eta) = scenario.couplings();
    let params = HeunParams::with_truncation(l, n, m, m * frequency, alpha, eta)?;
    let series = heun_coefficients(&params, n as usize + 10);
    if series.truncated_at != Some(n as usize) {
        let head = series.coefficients[..=n as usize]
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.abs()));
        let residual = series.coefficients[n as usize + 1].abs() / head.max(1.0);
        return Err(SpectraError::NonTruncating { residual });
    }

    let mut solution = RadialSolution {
        abs_l: l.unsigned_abs(),
        theta: params.theta,
        coefficients: series.coefficients[..=n as usize].to_vec(),
        normalization: 1.0,
        r_cut: 0.0,
    };

    // Quadrature cutoff: past the density peak, extend until the integrand
    // falls below 1e-14 of it.
    let mut peak = 0.0f64;
    let mut r = 0.0;
    while r <= 8.0 {
        peak = peak.max(solution.weighted_density(r));
        r += 0.05;
    }
    let mut r_cut = 8.0;
    while solution.weighted_density(r_cut) > 1e-14 * peak && r_cut < 100.0 {
        r_cut += 0.5;
    }
    solution.r_cut = r_cut;

    let norm_sq = simpson(|r| solution.weighted_density(r), 0.0, r_cut, 4096);
    require(
        norm_sq > 0.0 && norm_sq.is_finite(),
        "normalization integral must be positive",
    )?;
    solution.normalization = 1.0 / math::sqrt(norm_sq);
    Ok(solution)
}

/// Composite Simpson rule with `n` (even) intervals.
pub(crate) fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n.is_multiple_of(2) { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::truncation_conditions;

    fn assert_rel(actual: f64, expected: f64, tol: f64, msg: &str) {
        let rel = (actual - expected).abs() / expected.abs().max(1e-300);
        assert!(
            rel <= tol,
            "{msg}: got {actual}, want {expected}, rel err {rel:e}"
        );
    }

    #[test]
    fn cubic_root_known_cases() {
        // (x-2)(x+1)(x+3) = x^3 + 2x^2 - 5x - 6
        let r = positive_cubic_root(-2.0, 5.0, 6.0).unwrap();
        assert_rel(r, 2.0, 1e-14, "factored cubic");
        // x^3 = 8
        let r = positive_cubic_root(0.0, 0.0, 8.0).unwrap();
        assert_rel(r, 2.0, 1e-14, "pure cube");
        // degenerate linear/constant part
        let r = positive_cubic_root(3.0, 0.0, 0.0).unwrap();
        assert_rel(r, 3.0, 1e-14, "x^3 = 3x^2");
    }

    #[test]
    fn coulomb_ground_frequencies() {
        assert_rel(coulomb_frequency_ground(0, 1.0, 1.0).unwrap(), 2.0, 1e-15, "l=0");
        assert_rel(
            coulomb_frequency_ground(1, 1.0, 1.0).unwrap(),
            2.0 / 3.0,
            1e-15,
            "l=1",
        );
        assert_rel(
            coulomb_frequency_ground(-1, 1.0, 1.0).unwrap(),
            2.0 / 3.0,
            1e-15,
            "l=-1",
        );
        assert!(matches!(
            coulomb_frequency_ground(0, 1.0, 0.0),
            Err(SpectraError::DegenerateConstraint("alpha"))
        ));
    }

    /// Brute-force route: solve a2(nu) = 0 with beta = 4 + 2|l| directly on
    /// the recurrence, then map nu -> frequency via ϖ = 4mα²/ν².
    #[test]
    fn coulomb_ground_matches_truncation_root() {
        for l in [0i32, 1, -2, 3] {
            let (m, alpha) = (1.3, 0.8);
            let tl = 2.0 * l.unsigned_abs() as f64;
            let a2 = |nu: f64| {
                let p = HeunParams::new(2 * l.unsigned_abs(), 0.0, nu, 4.0 + tl);
                heun_coefficients(&p, 2).coefficients[2]
            };
            let (mut lo, mut hi) = (1e-6, 1e3);
            assert!(a2(lo) < 0.0 && a2(hi) > 0.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if a2(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let nu = 0.5 * (lo + hi);
            let freq_oracle = 4.0 * m * alpha * alpha / (nu * nu);
            let freq = coulomb_frequency_ground(l, m, alpha).unwrap();
            assert_rel(freq, freq_oracle, 1e-10, "nu-root route");
        }
    }

    #[test]
    fn linear_ground_frequencies() {
        assert_rel(
            linear_frequency_ground(0, 1.0, 1.0).unwrap(),
            1.144_714_242_553_331_9,
            1e-12,
            "l=0",
        );
        assert_rel(
            linear_frequency_ground(1, 1.0, 1.0).unwrap(),
            1.357_208_808_297_453_5,
            1e-12,
            "l=1",
        );
        assert_rel(
            linear_frequency_ground(-1, 1.0, 1.0).unwrap(),
            1.357_208_808_297_453_5,
            1e-12,
            "l=-1",
        );
        assert!(matches!(
            linear_frequency_ground(0, 1.0, 0.0),
            Err(SpectraError::DegenerateConstraint("eta"))
        ));
    }

    /// Brute-force route: solve a2(theta) = 0 with the energy constraint
    /// already folded in, then map theta -> frequency via
    /// (Mλ)³ = 4m²η²/θ².
    #[test]
    fn linear_ground_matches_truncation_root() {
        for l in [0i32, 2, -1] {
            let (m, eta) = (0.7, 1.4);
            let tl = 2.0 * l.unsigned_abs() as f64;
            let a2 = |theta: f64| {
                let beta = 4.0 + tl - theta * theta / 4.0;
                let p = HeunParams::new(2 * l.unsigned_abs(), theta, 0.0, beta);
                heun_coefficients(&p, 2).coefficients[2]
            };
            let (mut lo, mut hi) = (1e-6, 1e3);
            assert!(a2(lo) < 0.0 && a2(hi) > 0.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if a2(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let theta = 0.5 * (lo + hi);
            let m_lambda = math::cbrt(4.0 * m * m * eta * eta / (theta * theta));
            let freq_oracle = m_lambda / m;
            let freq = linear_frequency_ground(l, m, eta).unwrap();
            assert_rel(freq, freq_oracle, 1e-10, "theta-root route");
        }
    }

    #[test]
    fn mixed_ground_root_and_limits() {
        // Independent bracketing on the cubic itself.
        let (c2, c1, c0) = mixed_cubic_coefficients(0, 1.0, 1.0, 1.0);
        assert_eq!((c2, c1, c0), (2.0, 4.0, 1.5));
        let f = |x: f64| ((x - c2) * x - c1) * x - c0;
        let (mut lo, mut hi) = (1.0, 10.0);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let root = mixed_frequency_ground(0, 1.0, 1.0, 1.0).unwrap();
        assert_rel(root, oracle, 1e-10, "bracketing oracle");
        assert!((root - 3.3345).abs() < 5e-4, "root {root} near 3.3345");

        // eta -> 0 degenerates to the Coulomb form, alpha -> 0 to linear.
        let r = positive_cubic_root(2.0, 0.0, 0.0).unwrap();
        assert_rel(r, 2.0, 1e-14, "eta->0 exact");
        let r = positive_cubic_root(0.0, 0.0, 1.5).unwrap();
        assert_rel(r, math::cbrt(1.5), 1e-14, "alpha->0 exact");
    }

    #[test]
    fn mixed_limits_match_single_coupling_forms() {
        for l in -3i32..=3 {
            for m in [0.5, 1.0, 2.0] {
                let near_coulomb = mixed_frequency_ground(l, m, 1.0, 1e-8).unwrap();
                let coulomb = coulomb_frequency_ground(l, m, 1.0).unwrap();
                assert_rel(near_coulomb, coulomb, 1e-5, "eta->0 limit");

                let near_linear = mixed_frequency_ground(l, m, 1e-8, 1.0).unwrap();
                let linear = linear_frequency_ground(l, m, 1.0).unwrap();
                assert_rel(near_linear, linear, 1e-5, "alpha->0 limit");
            }
        }
    }

    #[test]
    fn mixed_cubic_has_single_positive_root() {
        for l in [0i32, 1, -2] {
            let (c2, c1, c0) = mixed_cubic_coefficients(l, 1.2, 0.9, 1.7);
            let roots = real_cubic_roots(-c2, -c1, -c0);
            let positive = roots.iter().filter(|r| **r > 0.0).count();
            assert_eq!(positive, 1, "sign pattern (+,-,-,-) gives one positive root");
        }
    }

    #[test]
    fn constrained_energy_examples() {
        let coulomb = ConfinementSpec::Coulomb { alpha: 1.0 };
        let e = constrained_energy(&coulomb, 1, 0, 1.0, 2.0).unwrap();
        assert_eq!(e.energy, 4.0);
        assert_eq!(e.provenance, Provenance::TruncationConstrained);

        let e = constrained_energy(&coulomb, 1, -1, 1.0, 2.0 / 3.0).unwrap();
        assert_rel(e.energy, 8.0 / 3.0, 1e-15, "l=-1");

        let linear = ConfinementSpec::Linear { eta: 1.0 };
        let freq = linear_frequency_ground(0, 1.0, 1.0).unwrap();
        let e = constrained_energy(&linear, 1, 0, 1.0, freq).unwrap();
        assert_rel(e.energy, 1.907_857_070_922_219_8, 1e-12, "linear ground");

        assert!(matches!(
            constrained_energy(&ConfinementSpec::None, 1, 0, 1.0, 1.0),
            Err(SpectraError::UnsupportedScenario(_))
        ));
        assert!(constrained_energy(&coulomb, 0, 0, 1.0, 2.0).is_err());
    }

    #[test]
    fn frequency_scan_matches_closed_forms() {
        for l in -3i32..=3 {
            let m = 1.0;
            let scan = frequency_solve_general(&ConfinementSpec::Coulomb { alpha: 1.0 }, 1, l, m)
                .unwrap();
            assert_eq!(scan.roots.len(), 1);
            assert_rel(
                scan.roots[0],
                coulomb_frequency_ground(l, m, 1.0).unwrap(),
                1e-9,
                "coulomb scan",
            );

            let scan = frequency_solve_general(&ConfinementSpec::Linear { eta: 1.0 }, 1, l, m)
                .unwrap();
            assert_eq!(scan.roots.len(), 1);
            assert_rel(
                scan.roots[0],
                linear_frequency_ground(l, m, 1.0).unwrap(),
                1e-9,
                "linear scan",
            );

            let mixed = ConfinementSpec::CoulombLinear { alpha: 1.0, eta: 1.0 };
            let scan = frequency_solve_general(&mixed, 1, l, m).unwrap();
            assert_eq!(scan.roots.len(), 1);
            assert_rel(
                scan.roots[0],
                mixed_frequency_ground(l, m, 1.0, 1.0).unwrap(),
                1e-9,
                "mixed scan",
            );
        }
    }

    #[test]
    fn frequency_scan_excited_roots_truncate() {
        let scenario = ConfinementSpec::CoulombLinear { alpha: 0.9, eta: 0.6 };
        let scan = frequency_solve_general(&scenario, 2, 1, 1.0).unwrap();
        assert!(!scan.roots.is_empty(), "n=2 should admit tuned frequencies");
        for &freq in &scan.roots {
            let p = HeunParams::with_truncation(1, 2, 1.0, freq, 0.9, 0.6).unwrap();
            let (c1, c2) = truncation_conditions(2, 1, &p);
            assert!(c1.abs() < 1e-12, "c1 = {c1}");
            assert!(c2.abs() < 1e-9, "c2 = {c2:e} at freq {freq}");
        }
    }

    #[test]
    fn hardwall_asymptotic_formula() {
        let params = SystemParams::new(1.0, 1.0, 0.0).unwrap();
        let e = hardwall_energy_asymptotic(0, 0, &params, 1.0).unwrap();
        assert_rel(e.energy, (3.0 * PI / 4.0).powi(2) / 2.0, 1e-15, "n=0 l=0");

        let params = SystemParams::new(1.0, 1.0, 0.01).unwrap();
        let e = hardwall_energy_asymptotic(0, 1, &params, 1.0).unwrap();
        assert_rel(
            e.energy,
            (5.0 * PI / 4.0).powi(2) / 2.0 + 0.01,
            1e-15,
            "n=0 l=1",
        );
    }

    #[test]
    fn hardwall_exact_approaches_bessel_limit() {
        let params = SystemParams::new(1.0, 1.0, 1e-6).unwrap();
        let bracket = default_hardwall_bracket(0, 0, &params, 1.0);
        let exact = hardwall_energy_exact(0, 0, &params, 1.0, bracket).unwrap();
        let bessel = hardwall_energy_bessel(0, 0, 1.0, 1.0).unwrap();
        assert_rel(exact.energy, bessel.energy, 1e-4, "Mlambda -> 0 limit");

        let asym = hardwall_energy_asymptotic(0, 0, &params, 1.0).unwrap();
        let dev = (asym.energy - exact.energy).abs() / exact.energy;
        assert!(dev < 0.05, "asymptotic within 5% (got {dev})");

        // Second root: sqrt(2E) near the second Bessel zero; 7π/4 within 0.5%.
        let bracket = default_hardwall_bracket(1, 0, &params, 1.0);
        let exact1 = hardwall_energy_exact(1, 0, &params, 1.0, bracket).unwrap();
        let s = (2.0 * exact1.energy).sqrt();
        assert_rel(s, 5.520_078_110_286_311, 2e-4, "second root vs j_0,2");
        let dev = (7.0 * PI / 4.0 - s).abs() / s;
        assert!(dev < 0.005, "asymptotic second root within 0.5% (got {dev})");
    }

    #[test]
    fn hardwall_exact_asymptotic_error_shrinks_with_n() {
        let params = SystemParams::new(1.0, 1.0, 0.01).unwrap();
        let mut prev = f64::INFINITY;
        for n in 0..3u32 {
            let bracket = default_hardwall_bracket(n, 0, &params, 1.0);
            let exact = hardwall_energy_exact(n, 0, &params, 1.0, bracket).unwrap();
            let asym = hardwall_energy_asymptotic(n, 0, &params, 1.0).unwrap();
            let err = (asym.energy - exact.energy).abs() / exact.energy;
            assert!(err < prev, "error should decrease with n (n={n}: {err})");
            prev = err;
        }
    }

    #[test]
    fn hardwall_bracket_too_small() {
        let params = SystemParams::new(1.0, 1.0, 0.01).unwrap();
        match hardwall_energy_exact(5, 0, &params, 1.0, (0.0, 1.0)) {
            Err(SpectraError::BracketTooSmall { found, needed }) => {
                assert_eq!(needed, 6);
                assert!(found < 6);
            }
            other => panic!("expected BracketTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn hardwall_bessel_levels() {
        let zeros = [2.404_825_557_695_773, 5.520_078_110_286_311, 8.653_727_912_911_013];
        for (n, j) in zeros.iter().enumerate() {
            let e = hardwall_energy_bessel(n as u32, 0, 1.0, 1.0).unwrap();
            assert_rel((2.0 * e.energy).sqrt(), *j, 1e-12, "sqrt(2E) = Bessel zero");
        }
        // rho0 scaling: E ~ 1/rho0^2
        let e = hardwall_energy_bessel(0, 0, 1.0, 2.0).unwrap();
        assert_rel(e.energy, zeros[0] * zeros[0] / 8.0, 1e-12, "rho0 = 2");
    }

    #[test]
    fn assembled_coulomb_ground_state() {
        let scenario = ConfinementSpec::Coulomb { alpha: 1.0 };
        let freq = coulomb_frequency_ground(0, 1.0, 1.0).unwrap();
        let sol = assemble_radial_solution(&scenario, 1, 0, 1.0, freq).unwrap();
        assert_eq!(sol.coefficients.len(), 2);
        assert_eq!(sol.coefficients[0], 1.0);
        assert_rel(sol.coefficients[1], core::f64::consts::SQRT_2, 1e-12, "a1 = sqrt(2)");
        assert_eq!(sol.abs_l, 0);
        assert!(sol.eval(0.0) > 0.0, "R(0) finite and positive for l = 0");

        // Independent normalization check: test-local Simpson at doubled
        // resolution.
        let steps = 8192usize;
        let h = sol.r_cut / steps as f64;
        let mut integral = sol.weighted_density(0.0) + sol.weighted_density(sol.r_cut);
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            integral += w * sol.weighted_density(i as f64 * h);
        }
        integral *= h / 3.0;
        assert_rel(integral, 1.0, 1e-8, "unit norm by independent quadrature");
    }

    #[test]
    fn assembled_power_prefactor() {
        let scenario = ConfinementSpec::Coulomb { alpha: 1.0 };
        let freq = coulomb_frequency_ground(2, 1.0, 1.0).unwrap();
        let sol = assemble_radial_solution(&scenario, 1, 2, 1.0, freq).unwrap();
        assert_eq!(sol.eval(0.0), 0.0, "R(0) = 0 for |l| >= 1");
        // Near the origin R ~ r^2.
        let (r1, r2) = (1e-4, 2e-4);
        let ratio = sol.eval(r1) / sol.eval(r2);
        assert!((ratio - 0.25).abs() < 0.01, "quadratic onset (ratio {ratio})");
    }

    #[test]
    fn assemble_rejects_untuned_frequency() {
        let scenario = ConfinementSpec::Coulomb { alpha: 1.0 };
        match assemble_radial_solution(&scenario, 1, 0, 1.0, 1.7) {
            Err(SpectraError::NonTruncating { residual }) => assert!(residual > 1e-12),
            other => panic!("expected NonTruncating, got {other:?}"),
        }
    }

    /// The assembled R(r) must satisfy the dimensionless radial equation
    /// R'' + R'/r − (l²/r² + r² + θr + ν/r − β) R = 0 with analytic
    /// derivatives.
    #[test]
    fn assembled_solution_satisfies_radial_equation() {
        let scenario = ConfinementSpec::CoulombLinear { alpha: 1.0, eta: 1.0 };
        let (m, l, n) = (1.0, 0i32, 1u32);
        let freq = mixed_frequency_ground(l, m, 1.0, 1.0).unwrap();
        let sol = assemble_radial_solution(&scenario, n, l, m, freq).unwrap();
        let p = HeunParams::with_truncation(l, n, m, m * freq, 1.0, 1.0).unwrap();
        for i in 1..=20 {
            let r = 0.2 * i as f64;
            let res = radial_residual(&sol, &p, l, r);
            assert!(res.abs() < 1e-9, "residual {res:e} at r = {r}");
        }
    }

    /// Analytic-residual helper shared with the acceptance suite's logic:
    /// derivatives of N e^{g(r)} Q(r) with g = −r²/2 − θr/2 and polynomial
    /// Q(r) = r^{|l|} P(r).
    fn radial_residual(sol: &RadialSolution, p: &HeunParams, l: i32, r: f64) -> f64 {
        // Q = r^{|l|} P(r) as coefficient vector
        let mut q = alloc::vec![0.0; sol.abs_l as usize];
        q.extend_from_slice(&sol.coefficients);
        let dq = poly_derivative(&q);
        let d2q = poly_derivative(&dq);
        let g1 = -r - sol.theta / 2.0;
        let g2 = -1.0;
        let e = math::exp(-r * r / 2.0 - sol.theta * r / 2.0) * sol.normalization;
        let q0 = poly_eval(&q, r);
        let q1 = poly_eval(&dq, r);
        let q2 = poly_eval(&d2q, r);
        let rr = e * q0;
        let r1 = e * (q1 + g1 * q0);
        let r2 = e * (q2 + 2.0 * g1 * q1 + (g2 + g1 * g1) * q0);
        let lf = l as f64;
        r2 + r1 / r
            - (lf * lf / (r * r) + r * r + p.theta * r + p.nu / r - p.beta) * rr
    }

    fn poly_eval(c: &[f64], r: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &k| acc * r + k)
    }

    fn poly_derivative(c: &[f64]) -> Vec<f64> {
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &k)| i as f64 * k)
            .collect()
    }

    #[test]
    fn degeneracy_breaking_between_l_signs() {
        let m = 1.0;
        for scenario in [
            ConfinementSpec::Coulomb { alpha: 1.0 },
            ConfinementSpec::Linear { eta: 1.0 },
            ConfinementSpec::CoulombLinear { alpha: 1.0, eta: 1.0 },
        ] {
            let solve = |l: i32| {
                let scan = frequency_solve_general(&scenario, 1, l, m).unwrap();
                constrained_energy(&scenario, 1, l, m, scan.roots[0])
                    .unwrap()
                    .energy
            };
            let diff = (solve(1) - solve(-1)).abs();
            assert!(diff > 1e-9, "{}: |E(+1)-E(-1)| = {diff}", scenario.label());
        }
    }
}
