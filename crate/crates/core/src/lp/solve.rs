//! Feasibility decisions, state reconstruction, and threshold location.

use num_complex::Complex64;

use super::simplex::phase_one;
use super::ReducedMatrix;
use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::exec;
use crate::orbits::OrbitTable;
use crate::StateVector;

/// Default tolerance on the phase-1 objective.
pub const DEFAULT_LP_TOL: f64 = 1e-9;

/// Result of one feasibility decision.
#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// A vertex solution when feasible.
    pub c: Option<Vec<f64>>,
    /// `max_mu |A c - d|` against the unscaled matrix (0 when infeasible).
    pub residual: f64,
    /// Phase-1 objective on the row-scaled system.
    pub certificate: f64,
}

/// Decides `A(theta) c = e_0`, `c >= 0` by phase-1 simplex. Rows are scaled
/// by their max absolute entry first (the `A'` variant grows like
/// `2^mu mu!`); the reported residual is in original units.
///
/// `theta = 0` is decided exactly: a sensing state exists iff there is a
/// single pair orbit.
pub fn solve_feasibility(mat: &ReducedMatrix, tol: f64) -> Result<FeasibilityResult> {
    let m = mat.num_rows();
    let n = mat.num_cols();
    if m == 0 || n == 0 {
        return Err(Error::invalid("empty feasibility system"));
    }
    if mat.theta.is_zero() {
        if m == 1 {
            let mut c = vec![0.0; n];
            c[0] = 1.0 / mat.rows[0][0];
            return Ok(FeasibilityResult {
                feasible: true,
                c: Some(c),
                residual: 0.0,
                certificate: 0.0,
            });
        }
        return Ok(FeasibilityResult {
            feasible: false,
            c: None,
            residual: 0.0,
            certificate: 1.0,
        });
    }

    let mut scaled = Vec::with_capacity(m);
    let mut d = Vec::with_capacity(m);
    for (mu, row) in mat.rows.iter().enumerate() {
        let scale = row.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let scale = if scale > 0.0 { scale } else { 1.0 };
        scaled.push(row.iter().map(|v| v / scale).collect::<Vec<f64>>());
        d.push(if mu == 0 { 1.0 / scale } else { 0.0 });
    }
    let outcome = phase_one(&scaled, &d)?;
    if outcome.objective < -100.0 * tol.max(1e-12) {
        // A sum of nonnegative variables cannot be negative; the tableau
        // drifted numerically.
        return Err(Error::SimplexStalled(outcome.iterations));
    }
    let feasible = outcome.objective <= tol;
    if !feasible {
        return Ok(FeasibilityResult {
            feasible: false,
            c: None,
            residual: 0.0,
            certificate: outcome.objective,
        });
    }
    let c = outcome.solution;
    // Validate the claimed vertex on the scaled system; a large violation
    // here means the pivoting lost accuracy, not that the answer is known.
    let mut scaled_residual = 0.0f64;
    for (row, &rhs) in scaled.iter().zip(&d) {
        let lhs: f64 = row.iter().zip(&c).map(|(a, x)| a * x).sum();
        scaled_residual = scaled_residual.max((lhs - rhs).abs());
    }
    let worst_negative = c.iter().cloned().fold(0.0f64, |acc, x| acc.min(x));
    if scaled_residual > 100.0 * tol.max(1e-12) || worst_negative < -100.0 * tol.max(1e-12) {
        return Err(Error::SimplexStalled(outcome.iterations));
    }
    let mut residual = 0.0f64;
    for (mu, row) in mat.rows.iter().enumerate() {
        let lhs: f64 = row.iter().zip(&c).map(|(a, x)| a * x).sum();
        let rhs = if mu == 0 { 1.0 } else { 0.0 };
        residual = residual.max((lhs - rhs).abs());
    }
    Ok(FeasibilityResult {
        feasible: true,
        c: Some(c),
        residual,
        certificate: outcome.objective,
    })
}

/// Reconstructs the explicit state with amplitude `sqrt(c_nu)` at every
/// bit-string of the `nu`-th orbit. The normalization row of the system
/// makes the result unit-norm; `tol` bounds both the allowed negative slack
/// in `c` and the norm defect before exact renormalization.
pub fn state_from_solution(c: &[f64], orbits: &OrbitTable, tol: f64) -> Result<StateVector> {
    if c.len() != orbits.string_orbits.len() {
        return Err(Error::SizeMismatch(format!(
            "{} coefficients for {} string orbits",
            c.len(),
            orbits.string_orbits.len()
        )));
    }
    let mut psi = StateVector::zero(orbits.n)?;
    for (nu, (&c_nu, orbit)) in c.iter().zip(&orbits.string_orbits).enumerate() {
        if c_nu < -tol {
            return Err(Error::NegativeCoefficient {
                index: nu,
                value: c_nu,
            });
        }
        let amp = Complex64::new(c_nu.max(0.0).sqrt(), 0.0);
        if amp.re == 0.0 {
            continue;
        }
        for &b in orbit.members()? {
            psi.amplitudes_mut()[b as usize] = amp;
        }
    }
    let defect = (psi.norm_sq() - 1.0).abs();
    if defect > tol.max(1e-9) {
        return Err(Error::NotNormalized(defect));
    }
    psi.normalize()?;
    Ok(psi)
}

/// Options for the threshold scan.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Number of coarse grid points on `[0, pi]`.
    pub steps: usize,
    /// Absolute tolerance on the bisected threshold.
    pub bisect_tol: f64,
    /// Feasibility tolerance handed to the solver.
    pub lp_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            steps: 512,
            bisect_tol: 1e-8,
            lp_tol: DEFAULT_LP_TOL,
        }
    }
}

/// Feasible `theta` regions found by the coarse scan, plus the bisected
/// lower edge of the first region.
#[derive(Clone, Debug)]
pub struct ThresholdScan {
    /// Maximal feasible grid runs as `(theta_lo, theta_hi)` at grid
    /// resolution.
    pub segments: Vec<(f64, f64)>,
    /// Lower edge of the first feasible segment, bisected to `bisect_tol`;
    /// `None` when no grid point is feasible.
    pub theta_star: Option<f64>,
}

/// Scans `[0, pi]` on a uniform grid and bisects the onset of the first
/// feasible segment. The symmetric and cyclic families provably have a
/// single feasible interval `[theta*, pi]`; for generic groups all grid
/// segments are reported and `theta_star` only localizes the first.
pub fn threshold_scan<F>(build: &F, opts: &ScanOptions) -> Result<ThresholdScan>
where
    F: Fn(Angle) -> Result<ReducedMatrix> + Sync,
{
    let steps = opts.steps.max(2);
    let grid: Vec<f64> = (0..steps)
        .map(|i| std::f64::consts::PI * i as f64 / (steps - 1) as f64)
        .collect();
    let verdicts: Vec<Result<bool>> = exec::map_indexed(steps, |i| {
        let mat = build(Angle::new(grid[i].min(std::f64::consts::PI))?)?;
        Ok(solve_feasibility(&mat, opts.lp_tol)?.feasible)
    });
    let feasible: Vec<bool> = verdicts.into_iter().collect::<Result<_>>()?;

    let mut segments = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &ok) in feasible.iter().enumerate() {
        match (ok, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                segments.push((grid[s], grid[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        segments.push((grid[s], grid[steps - 1]));
    }

    let theta_star = match feasible.iter().position(|&ok| ok) {
        None => None,
        Some(0) => Some(0.0),
        Some(k) => {
            let mut lo = grid[k - 1];
            let mut hi = grid[k];
            while hi - lo > opts.bisect_tol {
                let mid = 0.5 * (lo + hi);
                let mat = build(Angle::new(mid)?)?;
                if solve_feasibility(&mat, opts.lp_tol)?.feasible {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Some(hi)
        }
    };
    Ok(ThresholdScan {
        segments,
        theta_star,
    })
}
