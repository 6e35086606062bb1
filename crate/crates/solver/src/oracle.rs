//! Independent finite-difference Sturm-Liouville eigensolver; the
//! ground-truth generator the closed forms are checked against.
//!
//! Two discretizations are provided:
//!
//! * [`discretize`] — the plain three-point stencil on the Liouville form
//!   −u″ + W(ρ)u = εu with Dirichlet walls at `rho_min` and `rho_max`.
//!   Robust for regular potentials (box tests, spectral-shift identities),
//!   but the centrifugal singularity (L² − 1/4)/ρ² pollutes it with a
//!   wall error of order `rho_min^{2L}` — fatal below L = 1.
//! * [`discretize_weighted`] — factors the known endpoint behavior
//!   u ~ ρ^{L+1/2} out first and discretizes the remaining smooth factor
//!   in self-adjoint (finite-volume) form with weight ρ^{2L+1}, then
//!   symmetrizes back. This restores clean O(h²) convergence for every
//!   L ≥ 0, including the delicate L² < 1/4 regime, and is what the
//!   oracle pipeline [`solve`] uses.
//!
//! Eigenvalues come from Sturm-sequence counting plus bisection
//! (deterministic, index-exact), eigenvectors from shifted inverse
//! iteration, and the grid limit from Richardson extrapolation assuming
//! O(h²) error with the observed order checked against 2.

use crate::error::{Error, Result};
use crate::params::RadialProblem;

const MIN_POINTS: usize = 200;
const MAX_EIGENVALUES: usize = 12;

/// Discretization descriptor. `points` is the interior node count of the
/// coarsest level; each refinement level halves the spacing.
#[derive(Debug, Clone, Copy)]
pub struct RadialGrid {
    /// Inner cutoff (used by the plain stencil; the weighted scheme
    /// resolves the origin itself).
    pub rho_min: f64,
    /// Outer Dirichlet wall.
    pub rho_max: f64,
    /// Interior nodes at the coarsest level, >= 200.
    pub points: usize,
    /// Number of levels (h, h/2, h/4, ...), >= 2.
    pub refinement_levels: usize,
}

impl RadialGrid {
    pub fn new(rho_min: f64, rho_max: f64, points: usize, refinement_levels: usize) -> Result<Self> {
        if !(rho_min > 0.0 && rho_min < rho_max && rho_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < rho_min < rho_max, got [{rho_min}, {rho_max}]"
            )));
        }
        if points < MIN_POINTS {
            return Err(Error::GridTooCoarse { points, min: MIN_POINTS });
        }
        if refinement_levels < 2 {
            return Err(Error::InvalidParameter(format!(
                "refinement_levels = {refinement_levels} must be >= 2"
            )));
        }
        Ok(RadialGrid { rho_min, rho_max, points, refinement_levels })
    }

    /// Defaults for `count` bound states of `problem`: 2000 base points,
    /// 3 levels, outer wall where W exceeds ten times the highest
    /// eigenvalue estimate, inner cutoff at one base spacing.
    pub fn for_problem(problem: &RadialProblem, count: usize) -> Self {
        let c = problem.couplings();
        let big_l = c.angular_index();
        let eps_top = 2.0 * c.omega * (2.0 * count as f64 + 1.0 + big_l);
        let rho_max = (10.0 * eps_top).sqrt() / c.omega + 2.0 / c.omega.sqrt();
        let points = 2000;
        let rho_min = rho_max / (points as f64 + 1.0);
        RadialGrid { rho_min, rho_max, points, refinement_levels: 3 }
    }

    /// Spacing of the coarsest level (plain stencil).
    pub fn spacing(&self) -> f64 {
        (self.rho_max - self.rho_min) / (self.points as f64 + 1.0)
    }
}

/// Symmetric tridiagonal operator.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal must have n-1 entries");
        Tridiagonal { diag, off }
    }

    /// Plain stencil for −u″ + w(x)u on (a, b) with Dirichlet walls:
    /// diagonal 2/h² + w(x_i), off-diagonal −1/h².
    pub fn from_potential<F: Fn(f64) -> f64>(w: F, a: f64, b: f64, points: usize) -> Self {
        let h = (b - a) / (points as f64 + 1.0);
        let inv_h2 = 1.0 / (h * h);
        let diag = (1..=points)
            .map(|i| 2.0 * inv_h2 + w(a + i as f64 * h))
            .collect();
        let off = vec![-inv_h2; points - 1];
        Tridiagonal { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// A copy with `c` added to every diagonal entry (spectral shift).
    pub fn shifted(&self, c: f64) -> Self {
        Tridiagonal {
            diag: self.diag.iter().map(|d| d + c).collect(),
            off: self.off.clone(),
        }
    }

    /// Gershgorin bounds on the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo - 1.0, hi + 1.0)
    }

    /// y = (T - shift) x.
    fn apply_shifted(&self, shift: f64, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        for i in 0..n {
            let mut acc = (self.diag[i] - shift) * x[i];
            if i > 0 {
                acc += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.off[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }
}

/// Plain-stencil discretization of the radial problem on `grid`.
pub fn discretize(problem: &RadialProblem, grid: &RadialGrid) -> Result<Tridiagonal> {
    if grid.points < MIN_POINTS {
        return Err(Error::GridTooCoarse { points: grid.points, min: MIN_POINTS });
    }
    Ok(Tridiagonal::from_potential(
        |rho| problem.w(rho),
        grid.rho_min,
        grid.rho_max,
        grid.points,
    ))
}

/// Exponent-weighted discretization on `points` interior nodes i·h,
/// h = rho_max/(points+1).
///
/// With u = ρ^{L+1/2} v the problem becomes −(ρ^{2L+1} v′)′ + ρ^{2L+1} q v
/// = ε ρ^{2L+1} v with q(ρ) = Ω²ρ² and v analytic in ρ² at the origin.
/// Flux form with face weights, zero inner flux (v even), Dirichlet outer
/// wall, then a diagonal similarity back to a symmetric standard problem
/// whose eigenvectors are exactly the sampled u.
pub fn discretize_weighted(problem: &RadialProblem, grid: &RadialGrid) -> Result<Tridiagonal> {
    if grid.points < MIN_POINTS {
        return Err(Error::GridTooCoarse { points: grid.points, min: MIN_POINTS });
    }
    let n = grid.points;
    let h = grid.rho_max / (n as f64 + 1.0);
    let p = 2.0 * problem.couplings().angular_index() + 1.0;
    let w_at = |x: f64| x.powf(p);

    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    let inv_h2 = 1.0 / (h * h);
    let mut node_w = Vec::with_capacity(n);
    for i in 1..=n {
        node_w.push(w_at(i as f64 * h));
    }
    for i in 1..=n {
        let rho = i as f64 * h;
        let w_lo = w_at((i as f64 - 0.5) * h);
        let w_hi = w_at((i as f64 + 0.5) * h);
        let wi = node_w[i - 1];
        // Zero flux through the inner face of the first cell: v'(0) = 0.
        let flux = if i == 1 { w_hi } else { w_lo + w_hi };
        diag.push(flux * inv_h2 / wi + problem.confining_part(rho));
        if i < n {
            off.push(-w_hi * inv_h2 / (wi * node_w[i]).sqrt());
        }
    }
    Ok(Tridiagonal { diag, off })
}

/// Interior grid nodes of the weighted scheme at a given level.
pub fn weighted_nodes(grid: &RadialGrid, level: usize) -> Vec<f64> {
    let n = grid.points << level;
    let h = grid.rho_max / (n as f64 + 1.0);
    (1..=n).map(|i| i as f64 * h).collect()
}

/// Number of eigenvalues of `t` strictly below `lambda`, by the Sturm
/// sequence of LDLᵀ pivots.
pub fn sturm_count(t: &Tridiagonal, lambda: f64) -> usize {
    let n = t.n();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let mut q = t.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < 1e-300 {
            if q >= 0.0 { 1e-300 } else { -1e-300 }
        } else {
            q
        };
        q = (t.diag[i] - lambda) - t.off[i - 1] * t.off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` smallest eigenvalues, ascending, by index-exact bisection.
pub fn lowest_eigenvalues(t: &Tridiagonal, count: usize) -> Result<Vec<f64>> {
    if count > MAX_EIGENVALUES {
        return Err(Error::InvalidParameter(format!(
            "count = {count} exceeds the supported maximum {MAX_EIGENVALUES}"
        )));
    }
    let (lo, hi) = t.bounds();
    let mut out = Vec::with_capacity(count);
    for k in 0..count.min(t.n()) {
        let mut a = lo;
        let mut b = hi;
        let mut iterations = 0usize;
        loop {
            let mid = 0.5 * (a + b);
            if b - a < 4.0 * f64::EPSILON * mid.abs().max(1.0) || mid <= a || mid >= b {
                break;
            }
            if sturm_count(t, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
            iterations += 1;
            if iterations > 400 {
                return Err(Error::BisectionStall { index: k, width: b - a });
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

// Tridiagonal solve (T - shift) x = b with partial pivoting (one band of
// fill-in), the classic gtsv elimination. Returns None on a vanishing
// pivot. `dl` is reused as the second super-diagonal after its entry is
// consumed.
fn solve_shifted(t: &Tridiagonal, shift: f64, b: &mut [f64]) -> Option<()> {
    let n = t.n();
    let mut d: Vec<f64> = t.diag.iter().map(|v| v - shift).collect();
    let mut du: Vec<f64> = t.off.clone();
    let mut dl: Vec<f64> = t.off.clone();

    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                return None;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            if i < n - 2 {
                dl[i] = 0.0;
            }
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i < n - 2 {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            }
            du[i] = temp;
            let temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - fact * b[i];
        }
    }
    if d[n - 1] == 0.0 {
        return None;
    }
    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
    }
    Some(())
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

/// Interior sign changes of `u`, ignoring the decayed tail (entries below
/// 1e-10 of the peak are numerical noise, not nodes).
pub fn count_nodes(u: &[f64]) -> usize {
    let peak = u.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        return 0;
    }
    let cut = 1e-10 * peak;
    let mut changes = 0;
    let mut prev = 0.0;
    for &x in u {
        if x.abs() < cut {
            continue;
        }
        if prev != 0.0 && prev * x < 0.0 {
            changes += 1;
        }
        prev = x;
    }
    changes
}

/// Eigenvector of `t` for the isolated eigenvalue `eps`, by shifted
/// inverse iteration to residual ‖(T−ε)u‖/‖u‖ below 1e−9 (or the
/// rounding floor ~εₘ‖T‖ of the operator, whichever is larger). Returns
/// the normalized vector (positive near the inner end) and its node
/// count. A singular shifted solve is retried with a tiny offset before
/// giving up with `DegenerateShift`.
pub fn eigenvector(t: &Tridiagonal, eps: f64) -> Result<(Vec<f64>, usize)> {
    let n = t.n();
    let norm_t = t
        .diag
        .iter()
        .map(|d| d.abs())
        .fold(0.0_f64, f64::max)
        + 2.0 * t.off.iter().map(|o| o.abs()).fold(0.0_f64, f64::max);
    // Achievable residual floor for this operator.
    let tol = (1e-9_f64).max(30.0 * f64::EPSILON * norm_t);

    let mut shift = eps;
    let mut reshifts = 0;
    loop {
        let mut v: Vec<f64> = (0..n)
            .map(|i| if i % 2 == 0 { 1.0 } else { 0.5 })
            .collect();
        normalize(&mut v);
        let mut ok = true;
        for _ in 0..8 {
            if solve_shifted(t, shift, &mut v).is_none() {
                ok = false;
                break;
            }
            normalize(&mut v);
        }
        if ok {
            let mut r = vec![0.0; n];
            t.apply_shifted(eps, &v, &mut r);
            let res = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if res < tol {
                // Fix the sign: positive at the first significant entry.
                let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
                if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * peak) {
                    if *first < 0.0 {
                        for x in v.iter_mut() {
                            *x = -*x;
                        }
                    }
                }
                let nodes = count_nodes(&v);
                return Ok((v, nodes));
            }
        }
        reshifts += 1;
        if reshifts > 4 {
            return Err(Error::DegenerateShift { shift });
        }
        shift = eps + reshifts as f64 * 1e-10 * eps.abs().max(1.0);
    }
}

/// Richardson extrapolation of per-level eigenvalue lists (coarse to fine,
/// spacing halved each level) assuming O(h²) error.
#[derive(Debug, Clone)]
pub struct Extrapolated {
    /// Extrapolated eigenvalues.
    pub values: Vec<f64>,
    /// |finest − extrapolated| per eigenvalue.
    pub errors: Vec<f64>,
    /// Observed convergence order per eigenvalue (2.0 when already
    /// converged beyond measurement).
    pub orders: Vec<f64>,
}

pub fn extrapolate(levels: &[Vec<f64>]) -> Result<Extrapolated> {
    if levels.len() < 2 {
        return Err(Error::InvalidParameter(
            "extrapolation needs results at >= 2 grid resolutions".into(),
        ));
    }
    let count = levels.iter().map(|l| l.len()).min().unwrap_or(0);
    let mut values = Vec::with_capacity(count);
    let mut errors = Vec::with_capacity(count);
    let mut orders = Vec::with_capacity(count);
    let m = levels.len();
    for i in 0..count {
        let fine = levels[m - 1][i];
        let coarse = levels[m - 2][i];
        let ext = fine + (fine - coarse) / 3.0;
        let order = if m >= 3 {
            let d1 = levels[m - 3][i] - levels[m - 2][i];
            let d2 = levels[m - 2][i] - levels[m - 1][i];
            let floor = 1e-12 * fine.abs().max(1.0);
            if d2.abs() < floor || d1.abs() < floor {
                2.0 // converged below measurement noise
            } else if d1 / d2 <= 0.0 {
                return Err(Error::NonQuadraticConvergence { index: i, observed: f64::NAN });
            } else {
                (d1 / d2).log2()
            }
        } else {
            2.0
        };
        if (order - 2.0).abs() > 0.5 {
            return Err(Error::NonQuadraticConvergence { index: i, observed: order });
        }
        values.push(ext);
        errors.push((fine - ext).abs());
        orders.push(order);
    }
    Ok(Extrapolated { values, errors, orders })
}

/// Full oracle output: grid-limit eigenvalues in both the transformed (ε)
/// and physical (E) scales, finest-level eigenvectors with node counts,
/// and the extrapolation diagnostics.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Extrapolated transformed eigenvalues ε, ascending.
    pub eps: Vec<f64>,
    /// The same eigenvalues mapped to physical energies E.
    pub energies: Vec<f64>,
    /// Finest-level eigenvectors u(ρ), one per state, ‖u‖₂ = 1.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Interior sign changes per state.
    pub node_counts: Vec<usize>,
    /// |finest − extrapolated| per eigenvalue.
    pub extrapolation_error: Vec<f64>,
    /// Observed convergence order per eigenvalue.
    pub observed_order: Vec<f64>,
    /// Finest-level grid nodes the eigenvectors are sampled on.
    pub rho: Vec<f64>,
}

/// Run the oracle: weighted discretization at every refinement level,
/// index-exact eigenvalues, Richardson limit, eigenvectors at the finest
/// level.
pub fn solve(problem: &RadialProblem, grid: &RadialGrid, count: usize) -> Result<OracleResult> {
    let mut levels = Vec::with_capacity(grid.refinement_levels);
    let mut finest = None;
    for level in 0..grid.refinement_levels {
        let lg = RadialGrid {
            points: grid.points << level,
            ..*grid
        };
        let t = discretize_weighted(problem, &lg)?;
        levels.push(lowest_eigenvalues(&t, count)?);
        if level + 1 == grid.refinement_levels {
            finest = Some(t);
        }
    }
    let ext = extrapolate(&levels)?;
    let finest = finest.expect("at least two levels");
    let finest_eps = levels.last().expect("levels nonempty");

    let mut eigenvectors = Vec::with_capacity(count);
    let mut node_counts = Vec::with_capacity(count);
    for &e in finest_eps.iter() {
        let (u, nodes) = eigenvector(&finest, e)?;
        eigenvectors.push(u);
        node_counts.push(nodes);
    }
    let energies = ext.values.iter().map(|&e| problem.energy_from_eps(e)).collect();
    Ok(OracleResult {
        eps: ext.values,
        energies,
        eigenvectors,
        node_counts,
        extrapolation_error: ext.errors,
        observed_order: ext.orders,
        rho: weighted_nodes(grid, grid.refinement_levels - 1),
    })
}
