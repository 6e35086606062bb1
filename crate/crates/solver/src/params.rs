//! Physical parameters and the derived effective couplings.
//!
//! Natural units ħ = c = 1 throughout. The medium carries a screw
//! dislocation with torsion parameter β = b_z/2π; its only quantum
//! signature is the shift ℓ → ℓ − βk of the angular momentum number.
//! The radial problem reduces, after the Liouville substitution
//! u = √ρ·ψ, to
//!
//! ```text
//!     -u'' + [ (L² - 1/4)/ρ² + Ω²ρ² ] u = ε u
//! ```
//!
//! with L² and Ω collected in [`EffectiveCouplings`] and the transformed
//! eigenvalue related to the physical energy by an affine map (see
//! [`RadialProblem::eps_from_energy`]).

use crate::error::{Error, Result};

/// Constants of the medium and the particle.
///
/// `q` is the quadrupole constant (signed values are accepted even though
/// the underlying tensor definition assumes Q > 0; the spectrum formula
/// distinguishes Q·C_m from |Q·C_m|, so the sign is physically meaningful).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Particle mass, m > 0.
    pub m: f64,
    /// Quadrupole constant Q.
    pub q: f64,
    /// Linear electric charge density λ.
    pub lambda: f64,
    /// Magnetic-field constant C_m.
    pub cm: f64,
    /// Screw-dislocation parameter β = b_z/2π.
    pub beta: f64,
    /// Wave number k along the defect axis.
    pub k: f64,
}

impl SystemParams {
    pub fn new(m: f64, q: f64, lambda: f64, cm: f64, beta: f64, k: f64) -> Result<Self> {
        let p = SystemParams { m, q, lambda, cm, beta, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m", self.m),
            ("Q", self.q),
            ("lambda", self.lambda),
            ("Cm", self.cm),
            ("beta", self.beta),
            ("k", self.k),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidParameter(format!("m = {} must be > 0", self.m)));
        }
        Ok(())
    }

    /// Signed product Q·C_m. The energy formulas use both this and its
    /// absolute value, exactly as printed.
    pub fn qcm(&self) -> f64 {
        self.q * self.cm
    }
}

/// Coefficients of the Case-2 static potential V(ρ) = C₁ρ² + C₂/ρ² + C₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPotential {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl ScalarPotential {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, v) in [("C1", c1), ("C2", c2), ("C3", c3)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        Ok(ScalarPotential { c1, c2, c3 })
    }

    /// All-zero potential; Case 2 with this potential reduces to Case 1.
    pub fn zero() -> Self {
        ScalarPotential { c1: 0.0, c2: 0.0, c3: 0.0 }
    }
}

/// Radial quantum number n ≥ 0 and angular number ℓ ∈ ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: i32) -> Self {
        QuantumNumbers { n, l }
    }
}

/// Derived couplings of the reduced radial problem.
///
/// `lsq` is the effective squared angular term; the discrete spectrum
/// exists only for `lsq >= 0` (bound condition). `omega` sets the level
/// spacing 2Ω/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCouplings {
    /// Defect-shifted angular number ℓ − βk.
    pub shifted_l: f64,
    /// (ℓ−βk)² − 2mQλ, plus 2mC₂ in Case 2. Non-negative for valid states.
    pub lsq: f64,
    /// Oscillator strength: |QC_m| in Case 1, √(2mC₁ + Q²C_m²) in Case 2.
    pub omega: f64,
}

impl EffectiveCouplings {
    /// Angular index L = √lsq.
    pub fn angular_index(&self) -> f64 {
        self.lsq.sqrt()
    }
}

const COND_CASE1: &str = "(l - beta*k)^2 > 2*m*Q*lambda";
const COND_CASE2: &str = "(l - beta*k)^2 + 2*m*(C2 - Q*lambda) > 0";

/// Build the effective couplings for the given configuration.
///
/// `v = None` selects Case 1 (no static potential), `Some` selects Case 2.
pub fn effective_couplings(
    p: &SystemParams,
    v: Option<&ScalarPotential>,
    q: QuantumNumbers,
) -> Result<EffectiveCouplings> {
    p.validate()?;
    let shifted_l = q.l as f64 - p.beta * p.k;
    // Both cases share one arithmetic grouping (Case 1 is Case 2 with
    // C2 = 0) so the zero-potential reduction is bit-exact.
    let c2 = v.map_or(0.0, |v| v.c2);
    let lsq = shifted_l * shifted_l + 2.0 * p.m * (c2 - p.q * p.lambda);
    if lsq < 0.0 {
        let condition = if v.is_none() { COND_CASE1 } else { COND_CASE2 };
        return Err(Error::BoundConditionViolated { condition, lsq });
    }
    let omega = match v {
        // C1 = 0 collapses the radicand to (QC_m)² exactly, so take the
        // exact square root |QC_m| instead of sqrt(fl((QC_m)²)).
        None => p.qcm().abs(),
        Some(v) if v.c1 == 0.0 => p.qcm().abs(),
        Some(v) => {
            let radicand = 2.0 * p.m * v.c1 + p.qcm() * p.qcm();
            if radicand <= 0.0 {
                return Err(Error::NoConfinement);
            }
            radicand.sqrt()
        }
    };
    if omega == 0.0 {
        return Err(Error::NoConfinement);
    }
    Ok(EffectiveCouplings { shifted_l, lsq, omega })
}

/// The reduced one-dimensional radial problem: the symmetrized potential
/// W(ρ) plus the affine map between the transformed eigenvalue ε and the
/// physical energy 𝓔.
#[derive(Debug, Clone, Copy)]
pub struct RadialProblem {
    couplings: EffectiveCouplings,
    m: f64,
    k: f64,
    qcm: f64,
    c3: f64,
}

impl RadialProblem {
    pub fn new(p: &SystemParams, v: Option<&ScalarPotential>, q: QuantumNumbers) -> Result<Self> {
        let couplings = effective_couplings(p, v, q)?;
        Ok(RadialProblem {
            couplings,
            m: p.m,
            k: p.k,
            qcm: p.qcm(),
            c3: v.map_or(0.0, |v| v.c3),
        })
    }

    pub fn couplings(&self) -> &EffectiveCouplings {
        &self.couplings
    }

    /// Symmetrized potential W(ρ) = (L² − 1/4)/ρ² + Ω²ρ², for ρ > 0.
    pub fn w(&self, rho: f64) -> f64 {
        (self.couplings.lsq - 0.25) / (rho * rho)
            + self.couplings.omega * self.couplings.omega * rho * rho
    }

    /// The regular (non-centrifugal) part of W: Ω²ρ².
    pub fn confining_part(&self, rho: f64) -> f64 {
        self.couplings.omega * self.couplings.omega * rho * rho
    }

    /// ε = 2m𝓔 − k² − 2QC_m(ℓ−βk) − 2mC₃.
    pub fn eps_from_energy(&self, energy: f64) -> f64 {
        2.0 * self.m * energy
            - self.k * self.k
            - 2.0 * self.qcm * self.couplings.shifted_l
            - 2.0 * self.m * self.c3
    }

    /// Inverse of [`Self::eps_from_energy`].
    pub fn energy_from_eps(&self, eps: f64) -> f64 {
        (eps + self.k * self.k + 2.0 * self.qcm * self.couplings.shifted_l
            + 2.0 * self.m * self.c3)
            / (2.0 * self.m)
    }
}

/// Spec-level alias: the effective radial potential as a value you can call.
pub fn effective_radial_potential(
    p: &SystemParams,
    v: Option<&ScalarPotential>,
    q: QuantumNumbers,
) -> Result<RadialProblem> {
    RadialProblem::new(p, v, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn qn(n: u32, l: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l)
    }

    #[test]
    fn trivial_case1_couplings() {
        let p = SystemParams::new(1.0, 1.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let c = effective_couplings(&p, None, qn(0, 0)).unwrap();
        assert_eq!(c.shifted_l, 0.0);
        assert_eq!(c.lsq, 0.0);
        assert_eq!(c.omega, 1.0);
    }

    #[test]
    fn case2_couplings_fig1_at_q1() {
        let p = SystemParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap();
        let v = ScalarPotential::new(1.0, 1.0, 0.0).unwrap();
        let c = effective_couplings(&p, Some(&v), qn(0, 1)).unwrap();
        assert_eq!(c.shifted_l, 0.75);
        assert!((c.lsq - 0.5625).abs() < 1e-15);
        assert!((c.omega - 3.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn case1_bound_condition_violated() {
        let p = SystemParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap();
        let err = effective_couplings(&p, None, qn(0, 1)).unwrap_err();
        match err {
            Error::BoundConditionViolated { lsq, condition } => {
                assert!((lsq - (0.5625 - 2.0)).abs() < 1e-15);
                assert!(condition.contains("2*m*Q*lambda"));
            }
            other => panic!("expected BoundConditionViolated, got {other:?}"),
        }
    }

    #[test]
    fn no_confinement_when_omega_zero() {
        let p = SystemParams::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            effective_couplings(&p, None, qn(0, 0)),
            Err(Error::NoConfinement)
        ));
        // Case 2 with a negative radicand is equally unconfined.
        let v = ScalarPotential::new(-1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            effective_couplings(&p, Some(&v), qn(0, 0)),
            Err(Error::NoConfinement)
        ));
    }

    #[test]
    fn translation_property() {
        // Same l - beta*k: (1, 0.5) and (2, 2.5) at k = 0.5.
        let p1 = SystemParams::new(1.0, 1.0, 0.1, 1.0, 0.5, 0.5).unwrap();
        let p2 = SystemParams { beta: 2.5, ..p1 };
        let c1 = effective_couplings(&p1, None, qn(0, 1)).unwrap();
        let c2 = effective_couplings(&p2, None, qn(0, 2)).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn case2_zero_potential_equals_case1() {
        let p = SystemParams::new(1.3, 0.7, -0.2, 1.1, 0.4, 0.9).unwrap();
        let v = ScalarPotential::zero();
        let c1 = effective_couplings(&p, None, qn(0, 2)).unwrap();
        let c2 = effective_couplings(&p, Some(&v), qn(0, 2)).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn lsq_monotone_in_q_lambda() {
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let lambda = 0.02 * i as f64;
            let p = SystemParams::new(1.0, 1.0, lambda, 1.0, 0.5, 0.5).unwrap();
            let c = effective_couplings(&p, None, qn(0, 1)).unwrap();
            assert!(c.lsq < prev);
            prev = c.lsq;
        }
    }

    #[test]
    fn effective_potential_values() {
        // Case 1, L^2 = 0, Omega = 1, rho = 1: W = -1/4 + 1.
        let p = SystemParams::new(1.0, 1.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let rp = effective_radial_potential(&p, None, qn(0, 0)).unwrap();
        assert!((rp.w(1.0) - 0.75).abs() < 1e-15);

        // Case 2 at the Fig-1-style parameters, rho = 1.
        let p = SystemParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap();
        let v = ScalarPotential::new(1.0, 1.0, 1.0).unwrap();
        let rp = effective_radial_potential(&p, Some(&v), qn(0, 1)).unwrap();
        assert!((rp.w(1.0) - 3.3125).abs() < 1e-12);

        // Large rho: the confining term dominates.
        let rho = 1e4;
        assert!((rp.w(rho) / rp.confining_part(rho) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn eps_energy_roundtrip() {
        let p = SystemParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap();
        let v = ScalarPotential::new(1.0, 1.0, 1.0).unwrap();
        let rp = RadialProblem::new(&p, Some(&v), qn(1, 1)).unwrap();
        let e = 8.37;
        let back = rp.energy_from_eps(rp.eps_from_energy(e));
        assert!((back - e).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SystemParams::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(SystemParams::new(f64::NAN, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(ScalarPotential::new(f64::INFINITY, 0.0, 0.0).is_err());
    }
}
