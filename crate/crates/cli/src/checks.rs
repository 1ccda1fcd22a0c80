//! The `verify` subcommand's check suite: limit consistency, oracle
//! membership, truncation propagation, and hard-wall quantization, each
//! reported as a named pass/fail with the measured deviation.

use mqlandau_core::fields::SystemParams;
use mqlandau_core::heun::{heun_coefficients, HeunParams};
use mqlandau_core::oracle::{
    convergence_study, fd_eigenvalues, fd_hardwall_eigenvalues, BoundaryCondition, RadialGrid,
    RadialProblem,
};
use mqlandau_core::spectra::{
    assemble_radial_solution, constrained_energy, coulomb_frequency_ground,
    default_hardwall_bracket, frequency_solve_general, hardwall_energy_bessel,
    hardwall_energy_exact, linear_frequency_ground, mixed_frequency_ground, positive_cubic_root,
    ConfinementSpec,
};

use crate::config::CliError;
use crate::report::Check;

const PI: f64 = std::f64::consts::PI;

const L_SWEEP: [i32; 7] = [0, 1, -1, 2, -2, 3, -3];
const M_SWEEP: [f64; 3] = [0.5, 1.0, 2.0];
const COUPLING_SWEEP: [f64; 2] = [0.5, 1.0];

/// Deterministic 64-bit generator (SplitMix64) for the random sweeps.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn int_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn run_all() -> Result<Vec<Check>, CliError> {
    let mut checks = vec![
        coulomb_frequency_check()?,
        linear_frequency_check()?,
        mixed_cubic_vs_recurrence()?,
        mixed_cubic_limits()?,
        mixed_cubic_variant_disagrees()?,
        ground_state_energies()?,
    ];
    for scenario in ["coulomb", "linear", "mixed"] {
        checks.push(oracle_membership(scenario)?);
        checks.push(oracle_convergence(scenario)?);
    }
    let (lowest, spacing) = landau_limit()?;
    checks.push(lowest);
    checks.push(spacing);
    checks.push(hardwall_bessel()?);
    checks.push(hardwall_asymptotic_bounds()?);
    checks.push(hardwall_kummer_vs_oracle()?);
    let (tail, residual) = truncation_sweep()?;
    checks.push(tail);
    checks.push(residual);
    checks.push(degeneracy_margin()?);
    Ok(checks)
}

fn scenario_by_name(name: &str) -> ConfinementSpec {
    match name {
        "coulomb" => ConfinementSpec::Coulomb { alpha: 1.0 },
        "linear" => ConfinementSpec::Linear { eta: 1.0 },
        "mixed" => ConfinementSpec::CoulombLinear { alpha: 1.0, eta: 1.0 },
        _ => unreachable!(),
    }
}

fn coulomb_frequency_check() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for l in L_SWEEP {
        for m in M_SWEEP {
            for alpha in COUPLING_SWEEP {
                let scan =
                    frequency_solve_general(&ConfinementSpec::Coulomb { alpha }, 1, l, m)?;
                let closed = coulomb_frequency_ground(l, m, alpha)?;
                worst = worst.max(rel_dev(scan.roots[0], closed));
            }
        }
    }
    Ok(Check::upper("coulomb_frequency_scan_vs_closed_form", worst, 1e-9))
}

fn linear_frequency_check() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for l in L_SWEEP {
        for m in M_SWEEP {
            for eta in COUPLING_SWEEP {
                let scan = frequency_solve_general(&ConfinementSpec::Linear { eta }, 1, l, m)?;
                let closed = linear_frequency_ground(l, m, eta)?;
                worst = worst.max(rel_dev(scan.roots[0], closed));
            }
        }
    }
    Ok(Check::upper("linear_frequency_scan_vs_closed_form", worst, 1e-9))
}

fn mixed_cubic_vs_recurrence() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for (m, alpha, eta, l) in [(1.0, 1.0, 1.0, 0), (1.3, 0.7, 1.1, 1), (0.6, 1.4, 0.5, -2)] {
        let cubic = mixed_frequency_ground(l, m, alpha, eta)?;
        let scan =
            frequency_solve_general(&ConfinementSpec::CoulombLinear { alpha, eta }, 1, l, m)?;
        worst = worst.max(rel_dev(cubic, scan.roots[0]));
    }
    Ok(Check::upper("mixed_cubic_root_vs_recurrence", worst, 1e-8))
}

fn mixed_cubic_limits() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for l in [-2i32, 0, 1] {
        for m in M_SWEEP {
            worst = worst.max(rel_dev(
                mixed_frequency_ground(l, m, 1.0, 1e-8)?,
                coulomb_frequency_ground(l, m, 1.0)?,
            ));
            worst = worst.max(rel_dev(
                mixed_frequency_ground(l, m, 1e-8, 1.0)?,
                linear_frequency_ground(l, m, 1.0)?,
            ));
        }
    }
    Ok(Check::upper("mixed_cubic_limit_consistency", worst, 1e-5))
}

/// The cubic variant whose linear coefficient omits the coupling product
/// alpha*eta must land visibly away from the recurrence-based root.
fn mixed_cubic_variant_disagrees() -> Result<Check, CliError> {
    let mut min_disagreement = f64::INFINITY;
    for (alpha, eta) in [(1.0, 1e-8), (1e-8, 1.0), (1.0, 0.5)] {
        let scenario = ConfinementSpec::CoulombLinear { alpha, eta };
        let recurrence = frequency_solve_general(&scenario, 1, 0, 1.0)?.roots[0];
        let variant = positive_cubic_root(2.0 * alpha * alpha, 4.0, 1.5 * eta * eta)
            .ok_or_else(|| CliError::Numerical("variant cubic lost its root".into()))?;
        min_disagreement = min_disagreement.min(rel_dev(variant, recurrence));
    }
    Ok(Check::lower(
        "mixed_cubic_without_coupling_product_disagreement",
        min_disagreement,
        0.01,
    ))
}

fn ground_state_energies() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for m in M_SWEEP {
        for alpha in COUPLING_SWEEP {
            let scenario = ConfinementSpec::Coulomb { alpha };
            let freq = coulomb_frequency_ground(0, m, alpha)?;
            let level = constrained_energy(&scenario, 1, 0, m, freq)?;
            worst = worst.max(rel_dev(level.energy, 4.0 * m * alpha * alpha));
        }
    }
    let independent =
        2.0 * (1.5f64).powf(1.0 / 3.0) - 0.5 * (2.0f64 / 3.0).powf(2.0 / 3.0);
    let freq = linear_frequency_ground(0, 1.0, 1.0)?;
    let level = constrained_energy(&ConfinementSpec::Linear { eta: 1.0 }, 1, 0, 1.0, freq)?;
    worst = worst.max(rel_dev(level.energy, independent));
    Ok(Check::upper("ground_state_energy_closed_forms", worst, 1e-12))
}

fn oracle_membership(name: &str) -> Result<Check, CliError> {
    let scenario = scenario_by_name(name);
    let (alpha, eta) = scenario.couplings();
    let rho_max = if name == "mixed" { 7.0 } else { 8.0 };
    let mut worst = 0.0f64;
    for l in [0, 1, -1] {
        let freq = frequency_solve_general(&scenario, 1, l, 1.0)?.roots[0];
        let analytic = constrained_energy(&scenario, 1, l, 1.0, freq)?.energy;
        let problem = RadialProblem {
            l,
            m: 1.0,
            m_lambda: freq,
            alpha,
            eta,
            boundary: BoundaryCondition::Decay,
        };
        let grid = RadialGrid::new(rho_max, 4000)?;
        let best = fd_eigenvalues(&problem, &grid, 10)?
            .iter()
            .map(|lvl| rel_dev(lvl.energy, analytic))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    Ok(Check::upper(&format!("oracle_membership_{name}"), worst, 1e-3))
}

fn oracle_convergence(name: &str) -> Result<Check, CliError> {
    let scenario = scenario_by_name(name);
    let (alpha, eta) = scenario.couplings();
    let rho_max = if name == "mixed" { 7.0 } else { 8.0 };
    let freq = frequency_solve_general(&scenario, 1, 0, 1.0)?.roots[0];
    let analytic = constrained_energy(&scenario, 1, 0, 1.0, freq)?.energy;
    let problem = RadialProblem {
        l: 0,
        m: 1.0,
        m_lambda: freq,
        alpha,
        eta,
        boundary: BoundaryCondition::Decay,
    };
    let grids = [
        RadialGrid::new(rho_max, 1000)?,
        RadialGrid::new(rho_max, 2000)?,
        RadialGrid::new(rho_max, 4000)?,
    ];
    let report = convergence_study(&problem, &grids, 10, analytic)?;
    // Pass when the observed order sits in [1.5, 2.3].
    Ok(Check {
        name: format!("oracle_convergence_order_{name}"),
        pass: report.monotone && (1.5..=2.3).contains(&report.order),
        measured: crate::report::round_sig12(report.order),
        tolerance: 2.3,
    })
}

fn landau_limit() -> Result<(Check, Check), CliError> {
    let problem = RadialProblem {
        l: 0,
        m: 1.0,
        m_lambda: 1.0,
        alpha: 0.0,
        eta: 0.0,
        boundary: BoundaryCondition::Decay,
    };
    let grid = RadialGrid::new(8.0, 4000)?;
    let levels = fd_eigenvalues(&problem, &grid, 3)?;
    let lowest = (levels[0].energy - 1.0).abs();
    let spacing = (levels[1].energy - levels[0].energy - 2.0).abs();
    Ok((
        Check::upper("landau_limit_lowest_level", lowest, 1e-4),
        Check::upper("landau_limit_level_spacing", spacing, 1e-3),
    ))
}

fn hardwall_bessel() -> Result<Check, CliError> {
    let zeros = [
        2.404_825_557_695_773,
        5.520_078_110_286_311,
        8.653_727_912_911_013,
    ];
    let mut worst = 0.0f64;
    for (n, j) in zeros.iter().enumerate() {
        let level = hardwall_energy_bessel(n as u32, 0, 1.0, 1.0)?;
        worst = worst.max(rel_dev((2.0 * level.energy).sqrt(), *j));
    }
    Ok(Check::upper("hardwall_bessel_quantization", worst, 1e-6))
}

/// Asymptotic cosine-zero levels vs the exact Bessel zeros: deviations of
/// sqrt(2E) bounded by 2.1%, 0.5%, 0.3% and strictly decreasing. The
/// measured value is the worst deviation/bound ratio.
fn hardwall_asymptotic_bounds() -> Result<Check, CliError> {
    let zeros = [
        2.404_825_557_695_773,
        5.520_078_110_286_311,
        8.653_727_912_911_013,
    ];
    let bounds = [0.021, 0.005, 0.003];
    let mut devs = [0.0f64; 3];
    for n in 0..3 {
        let asym = n as f64 * PI + 3.0 * PI / 4.0;
        devs[n] = (asym - zeros[n]).abs() / zeros[n];
    }
    let decreasing = devs[0] > devs[1] && devs[1] > devs[2];
    let worst_ratio = devs
        .iter()
        .zip(bounds)
        .map(|(d, b)| d / b)
        .fold(0.0f64, f64::max);
    Ok(Check {
        name: "hardwall_asymptotic_error_bounds".to_string(),
        pass: decreasing && worst_ratio <= 1.0,
        measured: crate::report::round_sig12(worst_ratio),
        tolerance: 1.0,
    })
}

fn hardwall_kummer_vs_oracle() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for l in [0, 1] {
        let params = SystemParams::from_effective_field(1.0, 0.01)
            .map_err(|e| CliError::validation(e.to_string()))?;
        let bracket = default_hardwall_bracket(0, l, &params, 1.0);
        let exact = hardwall_energy_exact(0, l, &params, 1.0, bracket)?;
        let problem = RadialProblem {
            l,
            m: 1.0,
            m_lambda: 0.01,
            alpha: 0.0,
            eta: 0.0,
            boundary: BoundaryCondition::HardWall,
        };
        let grid = RadialGrid::new(1.0, 8000)?;
        let fd = fd_hardwall_eigenvalues(&problem, &grid, 1)?;
        worst = worst.max(rel_dev(exact.energy, fd[0].energy));
    }
    Ok(Check::upper("hardwall_kummer_vs_oracle", worst, 1e-4))
}

fn truncation_sweep() -> Result<(Check, Check), CliError> {
    let mut rng = SplitMix64(0x6d71_616e_6461_7521);
    let mut worst_tail = 0.0f64;
    let mut worst_residual = 0.0f64;
    for _ in 0..20 {
        let m = rng.uniform(0.5, 2.0);
        let alpha = rng.uniform(0.2, 2.0);
        let eta = rng.uniform(0.2, 2.0);
        let l = rng.int_inclusive(-3, 3) as i32;
        let freq = mixed_frequency_ground(l, m, alpha, eta)?;

        let params = HeunParams::with_truncation(l, 1, m, m * freq, alpha, eta)?;
        let series = heun_coefficients(&params, 11);
        let head = series.coefficients[0].abs().max(series.coefficients[1].abs());
        for k in 2..=11 {
            worst_tail = worst_tail.max(series.coefficients[k].abs() / head);
        }

        let scenario = ConfinementSpec::CoulombLinear { alpha, eta };
        let sol = assemble_radial_solution(&scenario, 1, l, m, freq)?;
        let mut q = vec![0.0; sol.abs_l as usize];
        q.extend_from_slice(&sol.coefficients);
        let dq: Vec<f64> = q.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
        let d2q: Vec<f64> = dq.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
        let eval = |c: &[f64], r: f64| c.iter().rev().fold(0.0, |acc, &k| acc * r + k);
        for i in 1..=20 {
            let r = 0.2 * i as f64;
            let g1 = -r - sol.theta / 2.0;
            let envelope = sol.normalization * (-r * r / 2.0 - sol.theta * r / 2.0).exp();
            let q0 = eval(&q, r);
            let q1 = eval(&dq, r);
            let q2 = eval(&d2q, r);
            let rr = envelope * q0;
            let r1 = envelope * (q1 + g1 * q0);
            let r2 = envelope * (q2 + 2.0 * g1 * q1 + (g1 * g1 - 1.0) * q0);
            let lf = l as f64;
            let residual = r2 + r1 / r
                - (lf * lf / (r * r) + r * r + params.theta * r + params.nu / r - params.beta)
                    * rr;
            worst_residual = worst_residual.max(residual.abs());
        }
    }
    Ok((
        Check::upper("truncation_tail_coefficients", worst_tail, 1e-12),
        Check::upper("radial_equation_residual", worst_residual, 1e-9),
    ))
}

fn degeneracy_margin() -> Result<Check, CliError> {
    let mut min_margin = f64::INFINITY;
    for name in ["coulomb", "linear", "mixed"] {
        let scenario = scenario_by_name(name);
        let energy = |l: i32| -> Result<f64, CliError> {
            let freq = frequency_solve_general(&scenario, 1, l, 1.0)?.roots[0];
            Ok(constrained_energy(&scenario, 1, l, 1.0, freq)?.energy)
        };
        min_margin = min_margin.min((energy(1)? - energy(-1)?).abs());
    }
    Ok(Check::lower("degeneracy_breaking_margin", min_margin, 1e-9))
}
