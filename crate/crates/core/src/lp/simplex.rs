//! Phase-1 simplex for equality-constrained feasibility with sign
//! constraints, using Bland's anti-cycling rule throughout.
//!
//! The tableau is only trusted for pivot *choices*; once an optimal basis is
//! reached, the basic solution is recomputed from the pristine input by
//! dense LU so that accumulated elimination drift never contaminates the
//! reported solution or objective.

use crate::error::{Error, Result};

/// Minimum magnitude for an acceptable pivot element on the (row-scaled)
/// tableau; dividing by anything smaller amplifies rounding error past the
/// feasibility tolerance. Columns whose eligible entries are all below this
/// are numerically zero and are skipped.
const PIVOT_EPS: f64 = 1e-7;

/// Tie tolerance in the ratio test, used only to group near-equal ratios
/// before Bland's index rule breaks the tie.
const RATIO_TIE: f64 = 1e-12;

/// Hard iteration cap; Bland's rule terminates finitely, this is a backstop.
const MAX_ITERATIONS: usize = 20_000;

/// Outcome of minimizing the sum of artificial variables over
/// `{ A x = d, x >= 0 }`.
#[derive(Clone, Debug)]
pub struct PhaseOneOutcome {
    /// Optimal artificial objective; feasible iff this is (numerically) zero.
    pub objective: f64,
    /// Basic solution for the original variables at the optimum.
    pub solution: Vec<f64>,
    pub iterations: usize,
}

/// Runs phase-1 simplex on `A x = d`, `x >= 0`. Rows with negative right-hand
/// side are negated first so the artificial start is feasible.
pub fn phase_one(a: &[Vec<f64>], d: &[f64]) -> Result<PhaseOneOutcome> {
    let m = a.len();
    if m == 0 || d.len() != m {
        return Err(Error::invalid("simplex needs one rhs entry per row"));
    }
    let n = a[0].len();
    // Signed copies of the input, kept pristine for the final re-solve.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs: Vec<f64> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid("ragged constraint matrix"));
        }
        let sign = if d[i] < 0.0 { -1.0 } else { 1.0 };
        rows.push(row.iter().map(|&v| sign * v).collect());
        rhs.push(sign * d[i]);
    }

    // Tableau columns: n original, m artificial, then the rhs.
    let width = n + m + 1;
    let mut tab: Vec<Vec<f64>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut t = vec![0.0; width];
        t[..n].copy_from_slice(&rows[i]);
        t[n + i] = 1.0;
        t[width - 1] = rhs[i];
        tab.push(t);
    }
    // Objective row: minimize the artificial sum. Eliminating the basic
    // artificials leaves obj[j] = -sum_i tab[i][j] on original columns.
    let mut obj = vec![0.0; width];
    for t in &tab {
        for (j, o) in obj.iter_mut().enumerate() {
            if j < n || j == width - 1 {
                *o -= t[j];
            }
        }
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut iterations = 0;
    primal_loop(&mut tab, &mut obj, &mut basis, n, m, &mut iterations)?;

    // Refresh the basic solution from the pristine input. Elimination drift
    // can leave the reached basis one pivot short of a true vertex (an
    // exact basic value slightly negative); in that case rebuild the
    // tableau exactly at this basis, clear the negative entries with dual
    // steps, and resume the primal iteration.
    let mut values = solve_basis(&rows, &rhs, &basis, n)
        .unwrap_or_else(|| tab.iter().map(|t| t[width - 1]).collect());
    for _round in 0..4 {
        if values.iter().all(|&v| v >= -1e-9) {
            break;
        }
        let Some((fresh_tab, fresh_obj)) = rebuild_exact(&rows, &rhs, &basis, n) else {
            break;
        };
        tab = fresh_tab;
        obj = fresh_obj;
        dual_repair(&mut tab, &mut obj, &mut basis, &mut iterations)?;
        primal_loop(&mut tab, &mut obj, &mut basis, n, m, &mut iterations)?;
        values = solve_basis(&rows, &rhs, &basis, n)
            .unwrap_or_else(|| tab.iter().map(|t| t[width - 1]).collect());
    }

    let mut solution = vec![0.0; n];
    let mut objective = 0.0;
    for (&var, &value) in basis.iter().zip(&values) {
        if var < n {
            solution[var] = value;
        } else {
            objective += value;
        }
    }
    Ok(PhaseOneOutcome {
        objective,
        solution,
        iterations,
    })
}

fn primal_loop(
    tab: &mut [Vec<f64>],
    obj: &mut [f64],
    basis: &mut [usize],
    n: usize,
    m: usize,
    iterations: &mut usize,
) -> Result<()> {
    let width = n + m + 1;
    loop {
        // Bland: lowest-index improving column that admits a usable pivot.
        let mut chosen: Option<(usize, usize)> = None;
        #[allow(clippy::needless_range_loop)]
        for col in 0..n + m {
            if obj[col] >= -PIVOT_EPS {
                continue;
            }
            if let Some(row) = ratio_test(tab, basis, col, width) {
                chosen = Some((col, row));
                break;
            }
        }
        let Some((col, row)) = chosen else {
            return Ok(());
        };
        pivot(tab, obj, row, col, width);
        basis[row] = col;
        *iterations += 1;
        if *iterations > MAX_ITERATIONS {
            return Err(Error::SimplexStalled(*iterations));
        }
    }
}

/// Dual-simplex cleanup of negative basic values: pivot each offending row
/// on the column minimizing the dual ratio `obj[j] / -t[r][j]`, which keeps
/// the reduced costs nonnegative while restoring primal feasibility.
fn dual_repair(
    tab: &mut [Vec<f64>],
    obj: &mut [f64],
    basis: &mut [usize],
    iterations: &mut usize,
) -> Result<()> {
    let m = tab.len();
    let width = obj.len();
    for _ in 0..4 * m.max(4) {
        let Some((row, worst)) = tab
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t[width - 1]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return Ok(());
        };
        if worst >= -1e-9 {
            return Ok(());
        }
        let mut entering: Option<(usize, f64)> = None;
        for (j, &o) in obj.iter().take(width - 1).enumerate() {
            let t = tab[row][j];
            if t < -PIVOT_EPS {
                let ratio = o.max(0.0) / -t;
                if entering.is_none_or(|(_, best)| ratio < best) {
                    entering = Some((j, ratio));
                }
            }
        }
        let Some((col, _)) = entering else {
            return Err(Error::SimplexStalled(*iterations));
        };
        pivot(tab, obj, row, col, width);
        basis[row] = col;
        *iterations += 1;
    }
    Err(Error::SimplexStalled(*iterations))
}

/// Rebuilds the tableau exactly at the given basis: Gauss-Jordan reduces
/// `[B | A I d]` so the right block becomes `B^{-1} [A I d]`, then restores
/// the phase-1 objective row. Returns `None` for a singular basis.
fn rebuild_exact(
    rows: &[Vec<f64>],
    rhs: &[f64],
    basis: &[usize],
    n: usize,
) -> Option<(Vec<Vec<f64>>, Vec<f64>)> {
    let m = rows.len();
    let width = n + m + 1;
    let mut aug: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row = vec![0.0; m + width];
            for (k, &var) in basis.iter().enumerate() {
                row[k] = if var < n {
                    rows[i][var]
                } else if var - n == i {
                    1.0
                } else {
                    0.0
                };
            }
            row[m..m + n].copy_from_slice(&rows[i]);
            row[m + n + i] = 1.0;
            row[m + width - 1] = rhs[i];
            row
        })
        .collect();
    for col in 0..m {
        let (best_row, best_val) = (col..m)
            .map(|r| (r, aug[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if best_val < 1e-13 {
            return None;
        }
        aug.swap(col, best_row);
        let scale = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= scale;
        }
        let pivot_row = aug[col].clone();
        for (r, target) in aug.iter_mut().enumerate() {
            if r != col && target[col] != 0.0 {
                let factor = target[col];
                for (v, p) in target.iter_mut().zip(&pivot_row) {
                    *v -= p * factor;
                }
            }
        }
    }
    // B^{-1}[A I d] is the right block, but Gauss-Jordan may have permuted
    // the rows; row k of the block corresponds to basis slot of aug column
    // with the unit entry. After full reduction aug[k][k] = 1, so rows are
    // already aligned with basis order.
    let tab: Vec<Vec<f64>> = aug.into_iter().map(|row| row[m..].to_vec()).collect();
    // Reduced costs: c_j - c_B B^{-1} a_j with unit cost on artificials.
    let mut obj = vec![0.0; width];
    for j in 0..width {
        let mut value = if (n..n + m).contains(&j) { 1.0 } else { 0.0 };
        for (i, &var) in basis.iter().enumerate() {
            if var >= n {
                value -= tab[i][j];
            }
        }
        obj[j] = value;
    }
    // The rhs slot of the objective row tracks the negated objective.
    obj[width - 1] = -basis
        .iter()
        .zip(&tab)
        .filter(|(&var, _)| var >= n)
        .map(|(_, row)| row[width - 1])
        .sum::<f64>();
    Some((tab, obj))
}

fn ratio_test(tab: &[Vec<f64>], basis: &[usize], col: usize, width: usize) -> Option<usize> {
    let mut pivot_row: Option<usize> = None;
    let mut best = f64::INFINITY;
    for (i, t) in tab.iter().enumerate() {
        if t[col] > PIVOT_EPS {
            let ratio = t[width - 1] / t[col];
            match pivot_row {
                None => {
                    best = ratio;
                    pivot_row = Some(i);
                }
                Some(r) => {
                    let tie = RATIO_TIE * (1.0 + best.abs());
                    if ratio < best - tie || ((ratio - best).abs() <= tie && basis[i] < basis[r]) {
                        best = ratio;
                        pivot_row = Some(i);
                    }
                }
            }
        }
    }
    pivot_row
}

fn pivot(tab: &mut [Vec<f64>], obj: &mut [f64], row: usize, col: usize, _width: usize) {
    let scale = tab[row][col];
    for v in tab[row].iter_mut() {
        *v /= scale;
    }
    let pivot_row = tab[row].clone();
    for (i, t) in tab.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let factor = t[col];
        if factor != 0.0 {
            for (v, p) in t.iter_mut().zip(&pivot_row) {
                *v -= p * factor;
            }
            t[col] = 0.0;
        }
    }
    let factor = obj[col];
    if factor != 0.0 {
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            *v -= p * factor;
        }
        obj[col] = 0.0;
    }
}

/// Solves `B y = rhs` for the basis columns (original columns of the signed
/// input, identity columns for artificials) by LU with partial pivoting.
/// Returns `None` when the basis matrix is numerically singular.
fn solve_basis(rows: &[Vec<f64>], rhs: &[f64], basis: &[usize], n: usize) -> Option<Vec<f64>> {
    let m = rows.len();
    let mut mat = vec![vec![0.0f64; m + 1]; m];
    for (k, &var) in basis.iter().enumerate() {
        for i in 0..m {
            mat[i][k] = if var < n {
                rows[i][var]
            } else if var - n == i {
                1.0
            } else {
                0.0
            };
        }
    }
    for i in 0..m {
        mat[i][m] = rhs[i];
    }
    for col in 0..m {
        let (best_row, best_val) = (col..m)
            .map(|r| (r, mat[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if best_val < 1e-13 {
            return None;
        }
        mat.swap(col, best_row);
        let pivot_row = mat[col].clone();
        for (r, target) in mat.iter_mut().enumerate() {
            if r != col && target[col] != 0.0 {
                let factor = target[col] / pivot_row[col];
                for (v, p) in target.iter_mut().zip(&pivot_row).skip(col) {
                    *v -= p * factor;
                }
            }
        }
    }
    Some((0..m).map(|i| mat[i][m] / mat[i][i]).collect())
}
