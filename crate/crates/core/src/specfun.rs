//! Real-argument special functions for the hard-wall scenario: the gamma
//! function, the Kummer confluent hypergeometric function `M(a, b, x)` by
//! power series, its large-`|a|` oscillatory approximation, and the Bessel
//! function `J_n` with its zeros (the `Mλ → 0` limit of the quantization
//! condition).
//!
//! # References
//! - DLMF 13 (confluent hypergeometric), DLMF 10 (Bessel)
//! - Abramowitz & Stegun 13.5.14 for the oscillatory form

use core::fmt;

use crate::math;

/// Hard cap on series terms before reporting non-convergence.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Relative size at which a series term counts as negligible.
///
/// Termination requires two consecutive below-threshold terms, so an
/// alternating series cannot stop on an accidental small term.
pub const SERIES_EPS: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecFunError {
    /// Argument outside the supported domain; the payload names the rule.
    Domain(&'static str),
    /// Series failed to converge; carries the partial sum and term count.
    NonConvergence { partial: f64, terms: usize },
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(rule) => write!(f, "domain error: {rule}"),
            Self::NonConvergence { partial, terms } => write!(
                f,
                "series did not converge after {terms} terms (partial sum {partial:e})"
            ),
        }
    }
}

impl core::error::Error for SpecFunError {}

// Lanczos approximation, g = 7, 9 terms. Relative error is a few ulps over
// the range used here (positive reals up to ~30).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive real arguments.
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if x <= 0.0 || x.is_nan() || x == f64::INFINITY {
        return Err(SpecFunError::Domain("gamma requires finite x > 0"));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        return core::f64::consts::PI
            / (math::sin(core::f64::consts::PI * x) * gamma_positive(1.0 - x));
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let base = z + LANCZOS_G + 0.5;
    let sqrt_two_pi = math::sqrt(2.0 * core::f64::consts::PI);
    sqrt_two_pi * math::powf(base, z + 0.5) * math::exp(-base) * sum
}

/// Arguments of the Kummer function `M(a, b, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    /// First parameter; large and negative in the hard-wall regime.
    pub a: f64,
    /// Second parameter; must avoid the poles at 0, -1, -2, ...
    pub b: f64,
    /// Argument; `x = Mλρ² ≥ 0` in all physical uses.
    pub x: f64,
}

impl KummerArgs {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self, SpecFunError> {
        if !a.is_finite() || !b.is_finite() || !x.is_finite() {
            return Err(SpecFunError::Domain("kummer arguments must be finite"));
        }
        if b <= 0.0 && b == math::floor(b) {
            return Err(SpecFunError::Domain(
                "kummer parameter b must not be zero or a negative integer",
            ));
        }
        Ok(Self { a, b, x })
    }
}

/// Kummer function of the first kind by direct power series,
/// `M(a, b, x) = Σ_k (a)_k / (b)_k · x^k / k!`.
pub fn kummer_m(args: &KummerArgs) -> Result<f64, SpecFunError> {
    let KummerArgs { a, b, x } = *args;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small_streak = 0u32;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * x;
        sum += term;
        if !sum.is_finite() {
            return Err(SpecFunError::NonConvergence {
                partial: sum,
                terms: k + 1,
            });
        }
        if term.abs() <= SERIES_EPS * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence {
        partial: sum,
        terms: MAX_SERIES_TERMS,
    })
}

/// Oscillatory large-`|a|` approximation of `M(a, b, x)`:
///
/// ```text
/// M(a, b, x) ≈ Γ(b)/√π · e^{x/2} · (bx/2 − ax)^{1/4 − b/2}
///              · cos(√(2bx − 4ax) − bπ/2 + π/4)
/// ```
///
/// valid for `a → −∞` with `b`, `x` bounded (A&S 13.5.14). Its zeros in the
/// energy variable give the hard-wall level formula.
pub fn kummer_m_asymptotic(args: &KummerArgs) -> Result<f64, SpecFunError> {
    let amp = kummer_asymptotic_envelope(args)?;
    let KummerArgs { a, b, x } = *args;
    let phase = math::sqrt(2.0 * b * x - 4.0 * a * x) - b * core::f64::consts::PI / 2.0
        + core::f64::consts::PI / 4.0;
    Ok(amp * math::cos(phase))
}

/// Amplitude prefactor of [`kummer_m_asymptotic`] (the `|cos| ≤ 1` envelope).
pub fn kummer_asymptotic_envelope(args: &KummerArgs) -> Result<f64, SpecFunError> {
    let KummerArgs { a, b, x } = *args;
    let arg = b * x / 2.0 - a * x;
    if arg <= 0.0 || arg.is_nan() {
        return Err(SpecFunError::Domain(
            "asymptotic form requires b*x/2 - a*x > 0",
        ));
    }
    let gamma_b = gamma_fn(b)?;
    Ok(gamma_b / math::sqrt(core::f64::consts::PI)
        * math::exp(x / 2.0)
        * math::powf(arg, 0.25 - b / 2.0))
}

/// Bessel function `J_order(x)` by power series, for integer order and
/// moderate argument (the hard-wall zero search stays below `x ≈ 40`).
pub fn bessel_j(order: u32, x: f64) -> Result<f64, SpecFunError> {
    if x < 0.0 || x.is_nan() || x == f64::INFINITY {
        return Err(SpecFunError::Domain("bessel_j requires finite x >= 0"));
    }
    let half = x / 2.0;
    // t_0 = (x/2)^order / order!
    let mut term = 1.0;
    for k in 1..=order {
        term *= half / k as f64;
    }
    let mut sum = term;
    let q = half * half;
    let mut small_streak = 0u32;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (kf + 1.0 + order as f64));
        sum += term;
        if term.abs() <= SERIES_EPS * (sum.abs() + 1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence {
        partial: sum,
        terms: MAX_SERIES_TERMS,
    })
}

/// `k`-th positive zero of `J_order` (`k ≥ 1`), by sign scan plus bisection.
pub fn bessel_j_zero(order: u32, k: usize) -> Result<f64, SpecFunError> {
    if k == 0 {
        return Err(SpecFunError::Domain("bessel zero index starts at 1"));
    }
    // J_order is positive on (0, j_{order,1}); zeros are ~π apart, so a 0.2
    // step cannot skip a sign change.
    let step = 0.2;
    let mut x_prev = order as f64 + 1e-3;
    let mut f_prev = bessel_j(order, x_prev)?;
    let mut found = 0usize;
    let mut x = x_prev;
    for _ in 0..100_000 {
        x += step;
        let fx = bessel_j(order, x)?;
        if f_prev != 0.0 && fx.signum() != f_prev.signum() {
            found += 1;
            if found == k {
                return bisect_bessel(order, x_prev, x);
            }
        }
        x_prev = x;
        f_prev = fx;
    }
    Err(SpecFunError::NonConvergence {
        partial: x,
        terms: 100_000,
    })
}

fn bisect_bessel(order: u32, mut lo: f64, mut hi: f64) -> Result<f64, SpecFunError> {
    let mut f_lo = bessel_j(order, lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * mid {
            break;
        }
        let f_mid = bessel_j(order, mid)?;
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
