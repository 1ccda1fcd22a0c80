//! Bound-state spectra of a neutral particle carrying a magnetic quadrupole
//! moment in a uniform effective magnetic field, under four kinds of radial
//! confinement.
//!
//! A cylindrical charge distribution produces the electric field
//! `E = (λρ²/2) ρ̂`; a moving particle whose quadrupole tensor has the single
//! nonzero component `M_ρz = M_zρ = M` then sees the effective vector
//! potential `A_eff = M × E = λMρ φ̂`, i.e. a uniform axial field
//! `B_eff = λM ẑ` and Landau-type planar dynamics. Confining the particle
//! modifies that spectrum:
//!
//! * **hard wall** at `ρ₀` — quantization through zeros of the Kummer
//!   function ([`spectra::hardwall_energy_exact`]), with a large-parameter
//!   cosine approximation ([`spectra::hardwall_energy_asymptotic`]);
//! * **Coulomb-type** `α/ρ`, **linear** `ηρ`, and **Coulomb plus linear**
//!   potentials — the radial equation becomes a biconfluent Heun equation
//!   whose series solution ([`heun`]) terminates only when the effective
//!   angular frequency `ϖ = Mλ/m` is tuned to quantized values
//!   ([`spectra::frequency_solve_general`] and the closed ground-state
//!   forms).
//!
//! Every analytic level can be cross-checked against [`oracle`], a
//! brute-force finite-difference eigensolver that shares no code with the
//! special-function path.
//!
//! Natural units `ħ = c = 1` throughout; the axial momentum is fixed to
//! `k = 0`.
//!
//! The crate is `no_std`-compatible (enable the `libm` feature instead of
//! the default `std` one); it allocates but performs no IO.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("mqlandau-core needs either the `std` or the `libm` feature");

extern crate alloc;

pub(crate) mod math;

pub mod fields;
pub mod heun;
pub mod oracle;
pub mod specfun;
pub mod spectra;

pub use fields::{FieldConfig, SystemParams};
pub use heun::{HeunParams, HeunSeries};
pub use oracle::{BoundaryCondition, RadialGrid, RadialProblem};
pub use spectra::{ConfinementSpec, EnergyLevel, Provenance, RadialSolution};
