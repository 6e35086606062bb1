//! Bound states of a spinless particle carrying an electric quadrupole
//! moment, moving through an elastic medium that hosts a screw
//! dislocation, under a radial electric field E = (λ/ρ)ρ̂ and an axial
//! magnetic field B = (C_m/2)ρ²ẑ.
//!
//! The dislocation enters only through the torsion parameter β, which
//! shifts the angular momentum number ℓ → ℓ − βk. Two configurations are
//! covered: the bare field interaction (Case 1) and the same system with
//! an added static potential V(ρ) = C₁ρ² + C₂/ρ² + C₃ (Case 2). Both have
//! closed-form spectra and generalized-Laguerre eigenfunctions; the
//! [`oracle`] module cross-checks every closed form against an
//! independent finite-difference Sturm-Liouville eigensolver.
//!
//! Modules:
//! * [`params`] — physical parameters, effective couplings, the reduced
//!   radial problem.
//! * [`laguerre`] — generalized Laguerre polynomials, Γ, half-line
//!   quadrature.
//! * [`spectrum`] — closed-form energies and eigenfunctions.
//! * [`oracle`] — finite-difference eigensolver with Richardson
//!   extrapolation.
//! * [`sweep`] — parameter sweeps, CSV and SVG emission.

pub mod error;
pub mod laguerre;
pub mod oracle;
pub mod params;
pub mod spectrum;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{
    effective_couplings, effective_radial_potential, EffectiveCouplings, QuantumNumbers,
    RadialProblem, ScalarPotential, SystemParams,
};
pub use spectrum::{energy, energy_case1, energy_case2, eigenfunction, CaseTag, SpectralSolution};
