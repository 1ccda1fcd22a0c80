//! Biconfluent Heun series engine.
//!
//! After the substitutions `r = √(Mλ) ρ` and
//! `R(r) = e^{−r²/2} e^{−θr/2} r^{|l|} H(r)`, the radial equation of every
//! confined scenario becomes one biconfluent Heun equation
//!
//! ```text
//! H'' + [(2|l|+1)/r − θ − 2r] H'
//!     + [β + θ²/4 − 2 − 2|l| − (θ(2|l|+1) + 2ν)/(2r)] H = 0
//! ```
//!
//! with the dimensionless couplings `θ = 2mη/(Mλ)^{3/2}` (linear),
//! `ν = 2mα/√(Mλ)` (Coulomb-type) and energy parameter
//! `β = (2mE + 2Mλl)/(Mλ)`. One Frobenius recurrence covers all scenarios;
//! `θ = 0` and `ν = 0` are its pure-Coulomb and pure-linear special cases.
//!
//! The series terminates to a degree-`n` polynomial exactly when both
//! truncation residuals of [`truncation_conditions`] vanish; that is the
//! quasi-exact-solvability mechanism the spectrum module exploits.

use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Relative size below which a trailing coefficient counts as zero when
/// detecting polynomial truncation.
pub const TRUNCATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeunError {
    /// Parameters require `Mλ > 0` (and `m > 0`) to be defined.
    UndefinedParameters,
    /// Series evaluation requested at a negative radius.
    NegativeRadius,
    /// Partial sums did not stabilize within the available coefficients.
    NotStabilized { partial: f64, terms: usize },
}

impl fmt::Display for HeunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UndefinedParameters => {
                write!(f, "theta, nu, beta require m > 0 and M*lambda > 0")
            }
            Self::NegativeRadius => write!(f, "series evaluation requires r >= 0"),
            Self::NotStabilized { partial, terms } => write!(
                f,
                "partial sums not stabilized after {terms} coefficients (partial {partial:e})"
            ),
        }
    }
}

impl core::error::Error for HeunError {}

/// Dimensionless parameters of the biconfluent Heun equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    /// `2|l|`, twice the magnitude of the angular momentum quantum number.
    pub abs2l: u32,
    /// Linear coupling `θ = 2mη/(Mλ)^{3/2}`.
    pub theta: f64,
    /// Coulomb coupling `ν = 2mα/√(Mλ)`.
    pub nu: f64,
    /// Energy parameter `β = (2mE + 2Mλl)/(Mλ)`.
    pub beta: f64,
}

impl HeunParams {
    pub fn new(abs2l: u32, theta: f64, nu: f64, beta: f64) -> Self {
        Self {
            abs2l,
            theta,
            nu,
            beta,
        }
    }

    /// Map physical couplings and an energy to the dimensionless set.
    pub fn from_physical(
        l: i32,
        m: f64,
        m_lambda: f64,
        alpha: f64,
        eta: f64,
        energy: f64,
    ) -> Result<Self, HeunError> {
        let (theta, nu) = dimensionless_couplings(m, m_lambda, alpha, eta)?;
        let beta = (2.0 * m * energy + 2.0 * m_lambda * l as f64) / m_lambda;
        Ok(Self {
            abs2l: 2 * l.unsigned_abs(),
            theta,
            nu,
            beta,
        })
    }

    /// Parameters with `β` fixed by the first truncation condition
    /// `4β + θ² − 8 − 8|l| = 8n`, i.e. `β = 2n + 2 + 2|l| − θ²/4`.
    pub fn with_truncation(
        l: i32,
        n: u32,
        m: f64,
        m_lambda: f64,
        alpha: f64,
        eta: f64,
    ) -> Result<Self, HeunError> {
        let (theta, nu) = dimensionless_couplings(m, m_lambda, alpha, eta)?;
        let abs2l = 2 * l.unsigned_abs();
        let beta = 2.0 * n as f64 + 2.0 + abs2l as f64 - theta * theta / 4.0;
        Ok(Self {
            abs2l,
            theta,
            nu,
            beta,
        })
    }
}

fn dimensionless_couplings(
    m: f64,
    m_lambda: f64,
    alpha: f64,
    eta: f64,
) -> Result<(f64, f64), HeunError> {
    if m <= 0.0 || m.is_nan() || m_lambda <= 0.0 || !m_lambda.is_finite() {
        return Err(HeunError::UndefinedParameters);
    }
    let root = math::sqrt(m_lambda);
    let theta = 2.0 * m * eta / (m_lambda * root);
    let nu = 2.0 * m * alpha / root;
    Ok((theta, nu))
}

/// Frobenius coefficients of the series `H(r) = Σ a_k r^k`, with detected
/// polynomial truncation if the trailing coefficients vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunSeries {
    pub params: HeunParams,
    /// `a_0 ..= a_kmax`, with `a_0 = 1`.
    pub coefficients: Vec<f64>,
    /// Degree `n ≥ 1` of a detected polynomial solution: the energy
    /// constraint `4β + θ² − 8 − 8|l| = 8n` holds for this integer and every
    /// coefficient past `a_n` is below [`TRUNCATION_TOL`] relative to the
    /// largest of `a_0 ..= a_n`.
    pub truncated_at: Option<usize>,
}

/// Generate `a_0 ..= a_kmax` from the unified recurrence
///
/// ```text
/// a_{k+2} = [θ(2k+3+2|l|) + 2ν] a_{k+1} / [2(k+2)(k+2+2|l|)]
///         − [4β + θ² − 8 − 8|l| − 8k] a_k / [4(k+2)(k+2+2|l|)]
/// ```
///
/// with `a_0 = 1` and `a_1 = θ/2 + ν/(1+2|l|)`.
///
/// `kmax` must be at least 2.
pub fn heun_coefficients(params: &HeunParams, kmax: usize) -> HeunSeries {
    assert!(kmax >= 2, "heun_coefficients requires kmax >= 2");
    let two_l = params.abs2l as f64;
    let theta = params.theta;
    let nu = params.nu;
    let beta = params.beta;

    let mut a = Vec::with_capacity(kmax + 1);
    a.push(1.0);
    a.push(theta / 2.0 + nu / (1.0 + two_l));
    for k in 0..=(kmax - 2) {
        let kf = k as f64;
        let denom = (kf + 2.0) * (kf + 2.0 + two_l);
        let up = (theta * (2.0 * kf + 3.0 + two_l) + 2.0 * nu) / (2.0 * denom);
        let down = (4.0 * beta + theta * theta - 8.0 - 4.0 * two_l - 8.0 * kf) / (4.0 * denom);
        a.push(up * a[k + 1] - down * a[k]);
    }

    let truncated_at = detect_truncation(params, &a);
    HeunSeries {
        params: *params,
        coefficients: a,
        truncated_at,
    }
}

/// A degree-`n` polynomial requires the energy constraint
/// `4β + θ² − 8 − 8|l| = 8n` to pick out an integer `n ≥ 1` *and* the
/// coefficient `a_{n+1}` (hence the whole tail) to vanish. Checking the
/// tail alone would misread any convergent series — the coefficients of an
/// entire function also decay below threshold eventually.
fn detect_truncation(params: &HeunParams, a: &[f64]) -> Option<usize> {
    let n_star = (4.0 * params.beta + params.theta * params.theta
        - 8.0
        - 4.0 * params.abs2l as f64)
        / 8.0;
    if n_star < 0.5 || n_star.is_nan() {
        return None;
    }
    let n = math::floor(n_star + 0.5);
    if (n_star - n).abs() > 1e-9 {
        return None;
    }
    let n = n as usize;
    if n + 1 >= a.len() {
        return None;
    }
    let head = a[..=n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let tol = TRUNCATION_TOL * head.max(1.0);
    if a[n + 1..].iter().all(|c| c.abs() <= tol) {
        Some(n)
    } else {
        None
    }
}

/// Evaluate `H(r)`. Truncated series are evaluated as exact polynomials;
/// otherwise partial sums must stabilize within the computed coefficients.
pub fn heun_eval(series: &HeunSeries, r: f64) -> Result<f64, HeunError> {
    if r < 0.0 || !r.is_finite() {
        return Err(HeunError::NegativeRadius);
    }
    if let Some(n) = series.truncated_at {
        let mut acc = 0.0;
        for &c in series.coefficients[..=n].iter().rev() {
            acc = acc * r + c;
        }
        return Ok(acc);
    }
    let mut sum = 0.0;
    let mut rk = 1.0;
    let mut small_streak = 0u32;
    for &c in series.coefficients.iter() {
        let term = c * rk;
        sum += term;
        rk *= r;
        if term.abs() <= 1e-15 * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(HeunError::NotStabilized {
        partial: sum,
        terms: series.coefficients.len(),
    })
}

/// Residuals of the two polynomial-truncation conditions for degree `n ≥ 1`:
///
/// * `c1 = 4β + θ² − 8 − 8|l| − 8n` (energy constraint), and
/// * `c2 = a_{n+1}` from the recurrence (frequency constraint).
///
/// Both must vanish for the series to become a degree-`n` polynomial. For
/// `θ = 0`, `c1` is four times the pure-Coulomb form `β − 2 − 2|l| − 2n`.
///
/// With `θ = ν = 0` (no confinement at all) `a_1 = 0`, so every odd
/// coefficient vanishes identically: odd-degree polynomial solutions do not
/// exist there and `c2` honestly reports the even-chain value instead of
/// fabricating a root.
pub fn truncation_conditions(n: u32, l: i32, params: &HeunParams) -> (f64, f64) {
    assert!(n >= 1, "truncation degree starts at n = 1");
    let abs2l = 2 * l.unsigned_abs();
    debug_assert_eq!(
        abs2l, params.abs2l,
        "angular momentum inconsistent with params"
    );
    let c1 = 4.0 * params.beta + params.theta * params.theta
        - 8.0
        - 4.0 * abs2l as f64
        - 8.0 * n as f64;
    let series = heun_coefficients(params, (n as usize + 1).max(2));
    let c2 = series.coefficients[n as usize + 1];
    (c1, c2)
}
