//! Parameter sweeps over the closed-form spectrum, with optional
//! finite-difference verification, CSV emission, and a self-contained
//! SVG plot.
//!
//! Sweep points that violate the bound condition (or lose confinement)
//! are emitted as status rows rather than aborting: a scan may cross a
//! validity boundary, e.g. growing Qλ in Case 1.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{solve, RadialGrid};
use crate::params::{QuantumNumbers, RadialProblem, ScalarPotential, SystemParams};
use crate::spectrum::energy;

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParam {
    Q,
    Cm,
    Beta,
    Lambda,
    K,
    C1,
    C2,
    C3,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::Q => "Q",
            SweptParam::Cm => "Cm",
            SweptParam::Beta => "beta",
            SweptParam::Lambda => "lambda",
            SweptParam::K => "k",
            SweptParam::C1 => "C1",
            SweptParam::C2 => "C2",
            SweptParam::C3 => "C3",
        }
    }

    fn needs_potential(self) -> bool {
        matches!(self, SweptParam::C1 | SweptParam::C2 | SweptParam::C3)
    }

    fn apply(
        self,
        base: &SystemParams,
        pot: Option<&ScalarPotential>,
        value: f64,
    ) -> (SystemParams, Option<ScalarPotential>) {
        let mut p = *base;
        let mut v = pot.copied();
        match self {
            SweptParam::Q => p.q = value,
            SweptParam::Cm => p.cm = value,
            SweptParam::Beta => p.beta = value,
            SweptParam::Lambda => p.lambda = value,
            SweptParam::K => p.k = value,
            SweptParam::C1 | SweptParam::C2 | SweptParam::C3 => {
                let v = v.as_mut().expect("validated: potential present");
                match self {
                    SweptParam::C1 => v.c1 = value,
                    SweptParam::C2 => v.c2 = value,
                    _ => v.c3 = value,
                }
            }
        }
        (p, v)
    }
}

impl FromStr for SweptParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(SweptParam::Q),
            "Cm" => Ok(SweptParam::Cm),
            "beta" => Ok(SweptParam::Beta),
            "lambda" => Ok(SweptParam::Lambda),
            "k" => Ok(SweptParam::K),
            "C1" => Ok(SweptParam::C1),
            "C2" => Ok(SweptParam::C2),
            "C3" => Ok(SweptParam::C3),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep parameter {other:?} (expected Q, Cm, beta, lambda, k, C1, C2 or C3)"
            ))),
        }
    }
}

/// A full sweep description.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub swept: SweptParam,
    pub from: f64,
    pub to: f64,
    /// Number of grid points (inclusive endpoints), >= 2.
    pub steps: usize,
    /// Radial quantum numbers to trace, one curve each.
    pub levels: Vec<u32>,
    pub base: SystemParams,
    pub potential: Option<ScalarPotential>,
    pub l: i32,
    /// Fill the oracle columns (coarser default grid).
    pub verify: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.from < self.to) {
            return Err(Error::InvalidParameter(format!(
                "sweep range must satisfy from < to, got [{}, {}]",
                self.from, self.to
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "steps = {} must be >= 2",
                self.steps
            )));
        }
        if self.levels.is_empty() {
            return Err(Error::InvalidParameter("levels must be non-empty".into()));
        }
        if self.swept.needs_potential() && self.potential.is_none() {
            return Err(Error::InvalidParameter(format!(
                "sweeping {} requires the Case-2 potential",
                self.swept.name()
            )));
        }
        Ok(())
    }
}

/// Validity marker of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    BoundViolated,
    NoConfinement,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowStatus::Ok => "ok",
            RowStatus::BoundViolated => "bound_condition_violated",
            RowStatus::NoConfinement => "no_confinement",
        };
        f.write_str(s)
    }
}

impl FromStr for RowStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(RowStatus::Ok),
            "bound_condition_violated" => Ok(RowStatus::BoundViolated),
            "no_confinement" => Ok(RowStatus::NoConfinement),
            other => Err(Error::InvalidParameter(format!("unknown row status {other:?}"))),
        }
    }
}

/// One (swept value, n) table entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: f64,
    pub n: u32,
    pub l: i32,
    pub energy_analytic: Option<f64>,
    pub energy_oracle: Option<f64>,
    pub rel_err: Option<f64>,
    pub status: RowStatus,
}

// Verification grid: coarser than the acceptance-grade default but still
// comfortably below 1e-6 after extrapolation.
fn verify_grid(problem: &RadialProblem, count: usize) -> RadialGrid {
    let mut g = RadialGrid::for_problem(problem, count);
    g.points = 500;
    g.rho_min = g.rho_max / 501.0;
    g
}

/// Evaluate the sweep. Rows appear in sweep order (outer: swept value,
/// inner: n level); invalid points become status rows. Fails with
/// `AllPointsInvalid` when no point satisfies its preconditions.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.steps * spec.levels.len());
    let mut any_ok = false;
    let max_n = spec.levels.iter().copied().max().unwrap_or(0);

    for i in 0..spec.steps {
        let t = i as f64 / (spec.steps - 1) as f64;
        let value = spec.from + (spec.to - spec.from) * t;
        let (p, v) = spec.swept.apply(&spec.base, spec.potential.as_ref(), value);

        // One oracle run per sweep point covers every requested level.
        let oracle_energies: Option<Vec<f64>> = if spec.verify {
            RadialProblem::new(&p, v.as_ref(), QuantumNumbers::new(0, spec.l))
                .ok()
                .and_then(|rp| {
                    let grid = verify_grid(&rp, max_n as usize + 1);
                    solve(&rp, &grid, max_n as usize + 1).ok().map(|r| r.energies)
                })
        } else {
            None
        };

        for &n in &spec.levels {
            let q = QuantumNumbers::new(n, spec.l);
            let row = match energy(&p, v.as_ref(), q) {
                Ok(e) => {
                    any_ok = true;
                    let e_oracle = oracle_energies.as_ref().and_then(|es| es.get(n as usize)).copied();
                    let rel = e_oracle.map(|eo| (eo - e).abs() / e.abs().max(f64::MIN_POSITIVE));
                    SweepRow {
                        param: spec.swept.name(),
                        value,
                        n,
                        l: spec.l,
                        energy_analytic: Some(e),
                        energy_oracle: e_oracle,
                        rel_err: rel,
                        status: RowStatus::Ok,
                    }
                }
                Err(Error::BoundConditionViolated { .. }) => SweepRow {
                    param: spec.swept.name(),
                    value,
                    n,
                    l: spec.l,
                    energy_analytic: None,
                    energy_oracle: None,
                    rel_err: None,
                    status: RowStatus::BoundViolated,
                },
                Err(Error::NoConfinement) => SweepRow {
                    param: spec.swept.name(),
                    value,
                    n,
                    l: spec.l,
                    energy_analytic: None,
                    energy_oracle: None,
                    rel_err: None,
                    status: RowStatus::NoConfinement,
                },
                Err(other) => return Err(other),
            };
            rows.push(row);
        }
    }
    if !any_ok {
        return Err(Error::AllPointsInvalid);
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "param,value,n,l,energy_analytic,energy_oracle,rel_err,status";

fn fmt_opt(v: Option<f64>) -> String {
    // `{}` on f64 prints the shortest representation that parses back
    // bit-exactly.
    v.map_or(String::new(), |x| format!("{x}"))
}

/// Render the table as CSV text (header + newline-terminated rows,
/// round-trip exact floats, deterministic order).
pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.param,
            r.value,
            r.n,
            r.l,
            fmt_opt(r.energy_analytic),
            fmt_opt(r.energy_oracle),
            fmt_opt(r.rel_err),
            r.status
        ));
    }
    out
}

/// Write the CSV table to `path`.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    fs::write(path, csv_string(rows)).map_err(|e| Error::io(path, e))
}

/// Read a CSV table written by [`emit_csv`] back, bit-exactly.
pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text).map_err(|reason| Error::Parse {
        path: path.display().to_string(),
        reason,
    })
}

fn parse_csv(text: &str) -> std::result::Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("bad header {other:?}")),
    }
    let intern = |s: &str| -> std::result::Result<&'static str, String> {
        for p in [
            SweptParam::Q,
            SweptParam::Cm,
            SweptParam::Beta,
            SweptParam::Lambda,
            SweptParam::K,
            SweptParam::C1,
            SweptParam::C2,
            SweptParam::C3,
        ] {
            if p.name() == s {
                return Ok(p.name());
            }
        }
        Err(format!("unknown param {s:?}"))
    };
    let parse_opt = |s: &str| -> std::result::Result<Option<f64>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse::<f64>().map(Some).map_err(|e| format!("{e}: {s:?}"))
        }
    };
    let mut rows = Vec::new();
    for (ln, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(format!("line {}: expected 8 fields, got {}", ln + 2, f.len()));
        }
        rows.push(SweepRow {
            param: intern(f[0])?,
            value: f[1].parse().map_err(|e| format!("line {}: {e}", ln + 2))?,
            n: f[2].parse().map_err(|e| format!("line {}: {e}", ln + 2))?,
            l: f[3].parse().map_err(|e| format!("line {}: {e}", ln + 2))?,
            energy_analytic: parse_opt(f[4])?,
            energy_oracle: parse_opt(f[5])?,
            rel_err: parse_opt(f[6])?,
            status: f[7].parse().map_err(|e: Error| format!("line {}: {e}", ln + 2))?,
        });
    }
    Ok(rows)
}

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 600.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 110.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 55.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Render one polyline per n level (gap rows break the line), with axes
/// and a legend, as a standalone SVG document.
pub fn svg_string(rows: &[SweepRow]) -> Result<String> {
    let ok_rows: Vec<&SweepRow> = rows
        .iter()
        .filter(|r| r.status == RowStatus::Ok && r.energy_analytic.is_some())
        .collect();
    if ok_rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in rows {
        x_min = x_min.min(r.value);
        x_max = x_max.max(r.value);
    }
    for r in &ok_rows {
        let e = r.energy_analytic.unwrap();
        y_min = y_min.min(e);
        y_max = y_max.max(e);
    }
    if y_max == y_min {
        y_max += 1.0;
        y_min -= 1.0;
    }
    if x_max == x_min {
        x_max += 1.0;
        x_min -= 1.0;
    }
    let pad = 0.04 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    let px = |v: f64| MARGIN_L + (v - x_min) / (x_max - x_min) * (SVG_W - MARGIN_L - MARGIN_R);
    let py = |e: f64| SVG_H - MARGIN_B - (e - y_min) / (y_max - y_min) * (SVG_H - MARGIN_T - MARGIN_B);

    let mut levels: Vec<u32> = rows.iter().map(|r| r.n).collect();
    levels.sort_unstable();
    levels.dedup();

    let param = rows[0].param;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" viewBox=\"0 0 {SVG_W} {SVG_H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        MARGIN_L,
        SVG_H - MARGIN_B,
        SVG_W - MARGIN_R,
        SVG_H - MARGIN_B
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        MARGIN_L,
        MARGIN_T,
        MARGIN_L,
        SVG_H - MARGIN_B
    ));
    // Tick labels at the extremes and midpoints.
    for frac in [0.0, 0.5, 1.0] {
        let xv = x_min + frac * (x_max - x_min);
        let yv = y_min + frac * (y_max - y_min);
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{:.4}</text>\n",
            px(xv),
            SVG_H - MARGIN_B + 18.0,
            xv
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>\n",
            MARGIN_L - 6.0,
            py(yv) + 4.0,
            yv
        ));
    }
    // Axis titles.
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{param}</text>\n",
        (MARGIN_L + SVG_W - MARGIN_R) / 2.0,
        SVG_H - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">E</text>\n",
        (MARGIN_T + SVG_H - MARGIN_B) / 2.0,
        (MARGIN_T + SVG_H - MARGIN_B) / 2.0
    ));

    for (ci, &n) in levels.iter().enumerate() {
        let color = PALETTE[ci % PALETTE.len()];
        // Break the polyline at every non-ok row: no interpolation across
        // invalid regions.
        let mut segment: Vec<(f64, f64)> = Vec::new();
        let flush = |seg: &mut Vec<(f64, f64)>, svg: &mut String| {
            if seg.len() >= 2 {
                let pts: Vec<String> =
                    seg.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                svg.push_str(&format!(
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                    pts.join(" ")
                ));
            }
            seg.clear();
        };
        for r in rows.iter().filter(|r| r.n == n) {
            match (r.status, r.energy_analytic) {
                (RowStatus::Ok, Some(e)) => segment.push((px(r.value), py(e))),
                _ => flush(&mut segment, &mut svg),
            }
        }
        flush(&mut segment, &mut svg);
        // Legend entry.
        let ly = MARGIN_T + 18.0 * ci as f64 + 10.0;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            SVG_W - MARGIN_R + 12.0,
            SVG_W - MARGIN_R + 36.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">n={n}</text>\n",
            SVG_W - MARGIN_R + 42.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Write the SVG plot to `path`.
pub fn emit_plot(rows: &[SweepRow], path: &Path) -> Result<()> {
    let svg = svg_string(rows)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_base() -> (SystemParams, ScalarPotential) {
        (
            SystemParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap(),
            ScalarPotential::new(1.0, 1.0, 1.0).unwrap(),
        )
    }

    fn fig2_spec(steps: usize) -> SweepSpec {
        let (base, pot) = fig_base();
        SweepSpec {
            swept: SweptParam::Cm,
            from: 0.5,
            to: 3.0,
            steps,
            levels: vec![1, 2, 3],
            base,
            potential: Some(pot),
            l: 1,
            verify: false,
        }
    }

    #[test]
    fn fig2_energies_increase_with_cm() {
        let rows = run_sweep(&fig2_spec(11)).unwrap();
        assert_eq!(rows.len(), 11 * 3);
        for n in 1..=3u32 {
            let es: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.energy_analytic.unwrap())
                .collect();
            assert_eq!(es.len(), 11);
            for w in es.windows(2) {
                assert!(w[1] > w[0], "n={n}: {w:?}");
            }
        }
        // Level ordering at every swept value.
        for chunk in rows.chunks(3) {
            assert!(chunk[0].energy_analytic < chunk[1].energy_analytic);
            assert!(chunk[1].energy_analytic < chunk[2].energy_analytic);
        }
    }

    #[test]
    fn fig1_sweep_has_gap_rows_past_validity() {
        let (base, pot) = fig_base();
        let spec = SweepSpec {
            swept: SweptParam::Q,
            from: 0.5,
            to: 3.0,
            steps: 11,
            levels: vec![1, 2, 3],
            base,
            potential: Some(pot),
            l: 1,
            verify: false,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 33);
        // Bound condition fails above Q = 1.28125.
        for r in &rows {
            let valid = 0.5625 + 2.0 * (1.0 - r.value) >= 0.0;
            if valid {
                assert_eq!(r.status, RowStatus::Ok, "Q={}", r.value);
            } else {
                assert_eq!(r.status, RowStatus::BoundViolated, "Q={}", r.value);
                assert!(r.energy_analytic.is_none());
            }
        }
    }

    #[test]
    fn degenerate_two_point_sweep() {
        let mut spec = fig2_spec(2);
        spec.from = 1.0;
        spec.to = 1.0 + 1e-12;
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 6);
        for n in 1..=3u32 {
            let es: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.energy_analytic.unwrap())
                .collect();
            assert!((es[0] - es[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn all_points_invalid() {
        let (base, _) = fig_base();
        let spec = SweepSpec {
            swept: SweptParam::Lambda,
            from: 5.0,
            to: 10.0,
            steps: 3,
            levels: vec![0],
            base,
            potential: None,
            l: 0,
            verify: false,
        };
        assert!(matches!(run_sweep(&spec), Err(Error::AllPointsInvalid)));
    }

    #[test]
    fn invalid_spec_rejected() {
        let mut spec = fig2_spec(5);
        spec.from = 3.0;
        spec.to = 0.5;
        assert!(spec.validate().is_err());
        let mut spec = fig2_spec(5);
        spec.steps = 1;
        assert!(spec.validate().is_err());
        let mut spec = fig2_spec(5);
        spec.swept = SweptParam::C1;
        spec.potential = None;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let rows = run_sweep(&fig2_spec(7)).unwrap();
        let dir = std::env::temp_dir().join(format!("qdefect-sweep-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.csv");
        emit_csv(&rows, &path).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(rows, back);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn empty_table_csv_has_header_only() {
        let text = csv_string(&[]);
        assert_eq!(text, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn svg_structure() {
        let rows = run_sweep(&fig2_spec(11)).unwrap();
        let svg = svg_string(&rows).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("n=1") && svg.contains("n=3"));
        // Vertex count equals ok-row count.
        let vertices: usize = svg
            .split("points=\"")
            .skip(1)
            .map(|s| s.split('"').next().unwrap().split(' ').count())
            .sum();
        assert_eq!(vertices, rows.len());
    }

    #[test]
    fn svg_breaks_at_gaps() {
        let (base, pot) = fig_base();
        // Sweep lambda across the Case-2 validity edge and back out of it:
        // only the low-lambda side is valid, so each n yields one segment,
        // but a mid-gap sweep would split. Use Q to create a trailing gap.
        let spec = SweepSpec {
            swept: SweptParam::Q,
            from: 0.5,
            to: 3.0,
            steps: 11,
            levels: vec![1],
            base,
            potential: Some(pot),
            l: 1,
            verify: false,
        };
        let rows = run_sweep(&spec).unwrap();
        let svg = svg_string(&rows).unwrap();
        let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
        assert!(ok < rows.len());
        let vertices: usize = svg
            .split("points=\"")
            .skip(1)
            .map(|s| s.split('"').next().unwrap().split(' ').count())
            .sum();
        assert_eq!(vertices, ok);
    }

    #[test]
    fn svg_empty_table_is_error() {
        assert!(matches!(svg_string(&[]), Err(Error::EmptyTable)));
        // Rows exist but none are plottable.
        let row = SweepRow {
            param: "Q",
            value: 1.0,
            n: 0,
            l: 0,
            energy_analytic: None,
            energy_oracle: None,
            rel_err: None,
            status: RowStatus::BoundViolated,
        };
        assert!(matches!(svg_string(&[row]), Err(Error::EmptyTable)));
    }

    #[test]
    fn verified_sweep_fills_oracle_columns() {
        let mut spec = fig2_spec(3);
        spec.levels = vec![0, 1];
        spec.verify = true;
        let rows = run_sweep(&spec).unwrap();
        for r in &rows {
            assert!(r.energy_oracle.is_some(), "{r:?}");
            assert!(r.rel_err.unwrap() < 1e-6, "{r:?}");
        }
    }
}
