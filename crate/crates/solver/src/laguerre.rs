//! Generalized Laguerre polynomials, the orthogonality norm, and
//! half-line quadrature used to cross-check closed-form normalizations.
//!
//! Only what the radial eigenfunctions need; this is not a general
//! special-function library.

use crate::error::{Error, Result};

/// Degree and upper index of L_n^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    pub n: u32,
    pub alpha: f64,
}

impl LaguerreSpec {
    /// `alpha > -1` is required for the orthogonality weight x^α e^{-x}
    /// to be integrable.
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::Domain(format!(
                "Laguerre index alpha = {alpha} must be finite and > -1"
            )));
        }
        Ok(LaguerreSpec { n, alpha })
    }

    /// Evaluate L_n^α(x) by the upward three-term recurrence
    /// (k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}, stable for the
    /// moderate degrees this crate needs.
    pub fn eval(&self, x: f64) -> f64 {
        let a = self.alpha;
        if self.n == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = 1.0 + a - x;
        for k in 1..self.n {
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Evaluate L_n^α(x); errors if `alpha <= -1`.
pub fn laguerre_eval(spec: LaguerreSpec, x: f64) -> f64 {
    spec.eval(x)
}

/// ∫₀^∞ x^α e^{-x} [L_n^α(x)]² dx = Γ(n+α+1)/n!.
pub fn laguerre_l2_norm(spec: LaguerreSpec) -> f64 {
    (ln_gamma(spec.n as f64 + spec.alpha + 1.0) - ln_factorial(spec.n)).exp()
}

/// ln n!.
pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

// Lanczos approximation, g = 7, nine coefficients. Relative error below
// 1e-13 on the arguments this crate uses (0 < x < 60).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // Reflection keeps the Lanczos argument away from zero.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + sum.ln()
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

// 32-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on
// the Legendre recurrence.
fn gauss_legendre_32() -> ([f64; 32], [f64; 32]) {
    const N: usize = 32;
    let mut nodes = [0.0; N];
    let mut weights = [0.0; N];
    for i in 0..N {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_N(x) and derivative via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..N {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// ∫₀^∞ f(ρ) dρ for integrands with Gaussian-type decay beyond
/// `decay_scale`.
///
/// Maps the half-line to (0,1) through ρ = s·t²/(1−t) and refines a
/// composite 32-point Gauss-Legendre rule until two successive refinements
/// agree to 1e-10 relative (with a small absolute floor so integrals that
/// vanish, e.g. orthogonality cross-terms, converge too). The quadratic
/// origin of the map softens algebraic endpoint behavior: an integrand
/// ρ^a picks up a Jacobian factor and becomes t^{2a+1}, smooth for every
/// a > −1/2.
pub fn halfline_quadrature<F: Fn(f64) -> f64>(f: F, decay_scale: f64) -> Result<f64> {
    if !(decay_scale > 0.0) || !decay_scale.is_finite() {
        return Err(Error::Domain(format!(
            "decay_scale = {decay_scale} must be finite and > 0"
        )));
    }
    let (nodes, weights) = gauss_legendre_32();
    let s = decay_scale;
    let mapped = |t: f64| {
        let om = 1.0 - t;
        let rho = s * t * t / om;
        f(rho) * s * t * (2.0 - t) / (om * om)
    };

    const REL_TOL: f64 = 1e-10;
    const ABS_FLOOR: f64 = 1e-12;
    const MAX_REFINEMENTS: usize = 14;

    let mut prev = f64::NAN;
    let mut last_delta = f64::NAN;
    for level in 0..=MAX_REFINEMENTS {
        let panels = 1usize << level;
        let hw = 0.5 / panels as f64;
        // Kahan-compensated panel sum; track the integral of |f| so the
        // stopping test stays meaningful for near-cancelling integrands.
        let mut total = 0.0;
        let mut comp = 0.0;
        let mut total_abs = 0.0;
        for p in 0..panels {
            let mid = (2 * p + 1) as f64 * hw;
            let mut acc = 0.0;
            let mut acc_abs = 0.0;
            for (x, w) in nodes.iter().zip(weights.iter()) {
                let v = w * mapped(mid + hw * x);
                acc += v;
                acc_abs += v.abs();
            }
            let y = acc * hw - comp;
            let t = total + y;
            comp = (t - total) - y;
            total = t;
            total_abs += acc_abs * hw;
        }
        if level > 0 {
            last_delta = (total - prev).abs();
            let scale = total.abs().max(total_abs).max(ABS_FLOOR / REL_TOL);
            if last_delta <= REL_TOL * scale {
                return Ok(total);
            }
        }
        prev = total;
    }
    Err(Error::NonConvergence {
        last_delta,
        refinements: MAX_REFINEMENTS,
    })
}
