//! Reduced feasibility systems `A(theta) c = d`, `c >= 0`.
//!
//! Rows are indexed by trajectory-pair orbits (row 0 = diagonal orbit,
//! right-hand side `d = e_0`), columns by bit-string orbits. A trajectory
//! sensing state exists at `theta` exactly when the system is feasible, and
//! any solution yields an explicit state with amplitude `sqrt(c_nu)` across
//! the `nu`-th string orbit.

mod simplex;
mod solve;

pub use simplex::phase_one;
pub use solve::{
    solve_feasibility, state_from_solution, threshold_scan, FeasibilityResult, ScanOptions,
    ThresholdScan,
};

use std::sync::Arc;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::cheby::{t_poly, IntPoly};
use crate::error::{Error, Result};
use crate::exec;
use crate::orbits::{binomial, generate_transitive_set, OrbitTable};
use crate::perm::PermutationGroup;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixVariant {
    /// Entries from the orbit eigenvalue sums (or their symmetric closed
    /// form).
    A,
    /// Row `mu` replaced by its `(mu-1)`-th derivative in `t = cos(theta)`;
    /// row-echelon with entries affine in `t`. Symmetric groups only.
    APrime,
}

impl std::fmt::Display for MatrixVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixVariant::A => write!(f, "A"),
            MatrixVariant::APrime => write!(f, "Aprime"),
        }
    }
}

/// A reduced feasibility matrix, tied to the orbit table that indexed its
/// rows and columns.
#[derive(Clone, Debug)]
pub struct ReducedMatrix {
    pub rows: Vec<Vec<f64>>,
    pub theta: Angle,
    pub variant: MatrixVariant,
    pub orbits: Arc<OrbitTable>,
}

impl ReducedMatrix {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Builds the orbit table for the symmetric group acting on the full
/// size-`m` trajectory set; reuse it across `theta` values when sweeping.
pub fn symmetric_orbit_table(n: usize, m: usize) -> Result<Arc<OrbitTable>> {
    let group = PermutationGroup::symmetric(n)?;
    let ts = generate_transitive_set(&group, m)?;
    OrbitTable::build(&group, &ts)
}

/// Builds the orbit table for the cyclic group acting on the `n` windows of
/// `m` consecutive qubits.
pub fn cyclic_orbit_table(n: usize, m: usize) -> Result<Arc<OrbitTable>> {
    let group = PermutationGroup::cyclic(n)?;
    let ts = generate_transitive_set(&group, m)?;
    OrbitTable::build(&group, &ts)
}

/// Assembles `A(theta)` from any orbit table by summing eigenphases over
/// each string orbit for a representative of each pair orbit. Entries must
/// come out real and representative-independent; violations indicate a
/// broken orbit computation and are reported as errors.
pub fn build_a_generic(orbits: &Arc<OrbitTable>, theta: Angle) -> Result<ReducedMatrix> {
    let string_orbits = &orbits.string_orbits;
    let pair_orbits = &orbits.pair_orbits;
    for so in string_orbits {
        so.members()?;
    }
    let cols = string_orbits.len();
    let entries = exec::map_indexed(pair_orbits.len() * cols, |idx| -> Result<f64> {
        let (mu, nu) = (idx / cols, idx % cols);
        let members = string_orbits[nu].members()?;
        let scale = members.len() as f64;
        let mut value: Option<f64> = None;
        for (t, t2) in &pair_orbits[mu].samples {
            let (m1, m2) = (t.mask(), t2.mask());
            let sum: Complex64 = members
                .iter()
                .map(|&b| {
                    let d = (b & m2).count_ones() as f64 - (b & m1).count_ones() as f64;
                    Complex64::cis(theta.theta() * d)
                })
                .sum();
            if sum.im.abs() > 1e-9 * scale.max(1.0) {
                return Err(Error::RepresentativeMismatch(sum.im.abs()));
            }
            match value {
                None => value = Some(sum.re),
                Some(prev) => {
                    if (prev - sum.re).abs() > 1e-9 * scale.max(1.0) {
                        return Err(Error::RepresentativeMismatch((prev - sum.re).abs()));
                    }
                }
            }
        }
        Ok(value.expect("pair orbit has at least one sample"))
    });
    let flat: Vec<f64> = entries.into_iter().collect::<Result<_>>()?;
    let rows = flat.chunks(cols).map(<[f64]>::to_vec).collect();
    Ok(ReducedMatrix {
        rows,
        theta,
        variant: MatrixVariant::A,
        orbits: Arc::clone(orbits),
    })
}

fn alpha(n: usize, nu: usize) -> f64 {
    if n.is_multiple_of(2) && 2 * nu == n {
        1.0
    } else {
        2.0
    }
}

fn alpha_int(n: usize, nu: usize) -> i128 {
    if n.is_multiple_of(2) && 2 * nu == n {
        1
    } else {
        2
    }
}

/// Number of pair orbits for the symmetric group: `m + 1` up to half
/// filling, `n - m + 1` beyond.
pub fn symmetric_num_rows(n: usize, m: usize) -> usize {
    m.min(n - m) + 1
}

/// Closed-form `A(theta)` for the symmetric group:
/// `A[mu][nu] = alpha_nu * sum_{i,i'} C(mu,i) C(mu,i') C(n-2mu, nu-i-i') cos((i-i') theta)`.
pub fn build_a_symmetric(n: usize, m: usize, theta: Angle) -> Result<ReducedMatrix> {
    let table = symmetric_orbit_table(n, m)?;
    build_a_symmetric_with(&table, theta)
}

/// Same as [`build_a_symmetric`] but reusing a previously built orbit table.
pub fn build_a_symmetric_with(orbits: &Arc<OrbitTable>, theta: Angle) -> Result<ReducedMatrix> {
    let n = orbits.n;
    let m = orbits.trajectories.member_size();
    let rows_n = symmetric_num_rows(n, m);
    let cols_n = n / 2 + 1;
    debug_assert_eq!(rows_n, orbits.pair_orbits.len());
    debug_assert_eq!(cols_n, orbits.string_orbits.len());
    let rows = (0..rows_n)
        .map(|mu| {
            (0..cols_n)
                .map(|nu| symmetric_entry(n, mu, nu, theta.theta()))
                .collect()
        })
        .collect();
    Ok(ReducedMatrix {
        rows,
        theta,
        variant: MatrixVariant::A,
        orbits: Arc::clone(orbits),
    })
}

fn symmetric_entry(n: usize, mu: usize, nu: usize, theta: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..=nu {
        for i2 in 0..=nu {
            let lower = i + i2;
            if lower > nu {
                continue;
            }
            let count = binomial(mu as u64, i as u64)
                * binomial(mu as u64, i2 as u64)
                * binomial((n - 2 * mu) as u64, (nu - lower) as u64);
            if count == 0 {
                continue;
            }
            sum += count as f64 * ((i as f64 - i2 as f64) * theta).cos();
        }
    }
    alpha(n, nu) * sum
}

/// The row-echelon variant `A'(t)`: row 0 of `A`, then
/// `A'[mu][nu] = 2^mu mu! alpha_nu * ( C(n-2mu, nu-mu) t
///              + (C(n-2mu, nu-mu+1) + C(n-2mu, nu-mu-1)) / 2 )`,
/// which vanishes for `nu < mu - 1`.
pub fn build_a_prime(n: usize, m: usize, theta: Angle) -> Result<ReducedMatrix> {
    let table = symmetric_orbit_table(n, m)?;
    build_a_prime_with(&table, theta)
}

pub fn build_a_prime_with(orbits: &Arc<OrbitTable>, theta: Angle) -> Result<ReducedMatrix> {
    let n = orbits.n;
    let m = orbits.trajectories.member_size();
    let rows_n = symmetric_num_rows(n, m);
    let cols_n = n / 2 + 1;
    let t = theta.t();
    let mut rows = Vec::with_capacity(rows_n);
    rows.push(
        (0..cols_n)
            .map(|nu| symmetric_entry(n, 0, nu, theta.theta()))
            .collect::<Vec<f64>>(),
    );
    for mu in 1..rows_n {
        let lead = 2f64.powi(mu as i32) * factorial(mu);
        let free = n - 2 * mu;
        rows.push(
            (0..cols_n)
                .map(|nu| {
                    if nu + 1 < mu {
                        return 0.0;
                    }
                    let linear = binom_signed(free, nu as isize - mu as isize);
                    let constant = 0.5
                        * (binom_signed(free, nu as isize - mu as isize + 1)
                            + binom_signed(free, nu as isize - mu as isize - 1));
                    lead * alpha(n, nu) * (linear * t + constant)
                })
                .collect(),
        );
    }
    Ok(ReducedMatrix {
        rows,
        theta,
        variant: MatrixVariant::APrime,
        orbits: Arc::clone(orbits),
    })
}

fn binom_signed(n: usize, k: isize) -> f64 {
    if k < 0 {
        0.0
    } else {
        binomial(n as u64, k as u64) as f64
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `A(t)` for the symmetric group as exact integer polynomials in
/// `t = cos(theta)`; the coefficient-level oracle for derivative identities.
pub fn a_symmetric_poly(n: usize, m: usize) -> Vec<Vec<IntPoly>> {
    let rows_n = symmetric_num_rows(n, m);
    let cols_n = n / 2 + 1;
    (0..rows_n)
        .map(|mu| {
            (0..cols_n)
                .map(|nu| {
                    let mut acc = IntPoly::zero();
                    for i in 0..=nu {
                        for i2 in 0..=nu {
                            if i + i2 > nu {
                                continue;
                            }
                            let count = binomial(mu as u64, i as u64)
                                * binomial(mu as u64, i2 as u64)
                                * binomial((n - 2 * mu) as u64, (nu - i - i2) as u64);
                            if count == 0 {
                                continue;
                            }
                            let k = i.abs_diff(i2);
                            acc = acc.add(&t_poly(k).scaled(count as i128));
                        }
                    }
                    acc.scaled(alpha_int(n, nu))
                })
                .collect()
        })
        .collect()
}

/// `A'(t)` as exact integer polynomials (each entry affine in `t`).
pub fn a_prime_symmetric_poly(n: usize, m: usize) -> Vec<Vec<IntPoly>> {
    let rows_n = symmetric_num_rows(n, m);
    let cols_n = n / 2 + 1;
    let a = a_symmetric_poly(n, m);
    let mut out = vec![a[0].clone()];
    for mu in 1..rows_n {
        let lead: i128 = (1i128 << mu) * (1..=mu as i128).product::<i128>();
        let free = n - 2 * mu;
        out.push(
            (0..cols_n)
                .map(|nu| {
                    if nu + 1 < mu {
                        return IntPoly::zero();
                    }
                    let linear = binom_i128(free, nu as isize - mu as isize);
                    let half_sum = binom_i128(free, nu as isize - mu as isize + 1)
                        + binom_i128(free, nu as isize - mu as isize - 1);
                    // lead * alpha * (linear t + half_sum / 2); the division
                    // is exact because lead carries a factor 2^mu, mu >= 1.
                    let scale = alpha_int(n, nu);
                    IntPoly::from_coeffs(vec![lead / 2 * half_sum * scale, lead * linear * scale])
                })
                .collect(),
        );
    }
    out
}

fn binom_i128(n: usize, k: isize) -> i128 {
    if k < 0 {
        0
    } else {
        binomial(n as u64, k as u64) as i128
    }
}
