//! Closed-form sensing-state families and threshold formulas for the
//! symmetric and cyclic trajectory sets.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::angle::Angle;
use crate::cheby::{chebyshev_t, chebyshev_w};
use crate::error::{Error, Result};
use crate::exec;
use crate::lp::{
    build_a_generic, build_a_symmetric_with, cyclic_orbit_table, symmetric_orbit_table,
    threshold_scan, ScanOptions,
};
use crate::orbits::{orbits_bitstrings, StringOrbit};
use crate::perm::{GroupKind, PermutationGroup};
use crate::state::check_statevector_width;
use crate::StateVector;

/// A closed-form threshold with its guarantees: every `theta >= theta_star`
/// admits a sensing state when `sufficient`; none below does when
/// `necessary`.
#[derive(Clone, Copy, Debug)]
pub struct ThresholdInfo {
    pub theta_star: f64,
    pub sufficient: bool,
    pub necessary: bool,
}

/// General symmetric-family bound `theta* = (n-1) pi / n`: always
/// sufficient, and necessary at half filling (`m` in
/// `{floor(n/2), ceil(n/2)}`).
pub fn threshold_sym(n: usize, m: usize) -> ThresholdInfo {
    let necessary = m == n / 2 || m == n.div_ceil(2);
    ThresholdInfo {
        theta_star: (n as f64 - 1.0) * PI / n as f64,
        sufficient: true,
        necessary,
    }
}

/// Exact threshold for single-qubit trajectories (`m = 1` or `n - 1`):
/// `arccos(-1 + 1/ceil(n/2))`.
pub fn threshold_sym_m1(n: usize) -> Result<f64> {
    if n <= 1 {
        return Err(Error::invalid("m = 1 threshold needs n > 1"));
    }
    Ok((-1.0 + 1.0 / n.div_ceil(2) as f64).acos())
}

/// Sufficient cyclic-family bound for `n = kappa * m` windows:
/// `arccos(-1 + 1/ceil(kappa/2))`. Whether it is also necessary is open.
pub fn threshold_cyc_multiple(kappa: usize) -> Result<f64> {
    if kappa <= 1 {
        return Err(Error::invalid("cyclic bound needs kappa > 1"));
    }
    Ok((-1.0 + 1.0 / kappa.div_ceil(2) as f64).acos())
}

/// Best closed-form threshold available for `(group, n, m)`, or `None` when
/// no formula applies (generic groups, cyclic with `m` not dividing `n`).
pub fn threshold_formula(kind: GroupKind, n: usize, m: usize) -> Option<ThresholdInfo> {
    match kind {
        GroupKind::Symmetric => Some(if m == 0 || m == n {
            ThresholdInfo {
                theta_star: 0.0,
                sufficient: true,
                necessary: true,
            }
        } else if m == 1 || m == n - 1 {
            ThresholdInfo {
                theta_star: threshold_sym_m1(n).ok()?,
                sufficient: true,
                necessary: true,
            }
        } else {
            threshold_sym(n, m)
        }),
        GroupKind::Cyclic => {
            if m == 0 || m == n {
                Some(ThresholdInfo {
                    theta_star: 0.0,
                    sufficient: true,
                    necessary: true,
                })
            } else if m != 0 && n.is_multiple_of(m) && n / m > 1 {
                Some(ThresholdInfo {
                    theta_star: threshold_cyc_multiple(n / m).ok()?,
                    sufficient: true,
                    necessary: false,
                })
            } else {
                None
            }
        }
        GroupKind::Generic => None,
    }
}

fn symmetric_string_orbits_for(n: usize) -> Result<Vec<StringOrbit>> {
    let group = PermutationGroup::symmetric(n)?;
    orbits_bitstrings(&group, n)
}

fn assemble_from_ratios(n: usize, ratios: &[f64], orbits: &[StringOrbit]) -> Result<StateVector> {
    let total: f64 = ratios
        .iter()
        .zip(orbits)
        .map(|(r, o)| r * o.size as f64)
        .sum();
    let mut psi = StateVector::zero(n)?;
    for (r, orbit) in ratios.iter().zip(orbits) {
        let amp = Complex64::new((r / total).sqrt(), 0.0);
        if amp.re == 0.0 {
            continue;
        }
        for &b in orbit.members()? {
            psi.amplitudes_mut()[b as usize] = amp;
        }
    }
    psi.normalize()?;
    Ok(psi)
}

/// The permutation- and flip-invariant state with orbit coefficients
/// `c_nu` proportional to `(-1)^(N-1-nu) T_{N-1-nu}(cos theta)` for even `n`
/// (the fourth-kind polynomials `W` for odd `n`). Within the guaranteed
/// region `theta >= (n-1) pi / n` this discriminates every `T_sym(n, m)`;
/// below it the constructor refuses.
pub fn construct_ts_sym(n: usize, m: usize, theta: Angle) -> Result<StateVector> {
    check_statevector_width(n)?;
    if m > n {
        return Err(Error::invalid(format!("m = {m} exceeds n = {n}")));
    }
    let threshold = threshold_sym(n, m).theta_star;
    if theta.theta() < threshold - 1e-12 {
        return Err(Error::BelowThreshold {
            theta: theta.theta(),
            threshold,
        });
    }
    let orbits = symmetric_string_orbits_for(n)?;
    let big_n = orbits.len();
    let t = theta.t();
    let ratios: Vec<f64> = (0..big_n)
        .map(|nu| {
            let k = big_n - 1 - nu;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let value = if n.is_multiple_of(2) {
                sign * chebyshev_t(k, t)
            } else {
                sign * chebyshev_w(k as isize, t)
            };
            // Exactly at the threshold one coefficient crosses zero;
            // tolerate the rounding.
            if value < 0.0 {
                debug_assert!(value > -1e-9, "coefficient {value} at nu={nu}");
                0.0
            } else {
                value
            }
        })
        .collect();
    assemble_from_ratios(n, &ratios, &orbits)
}

/// The two-coefficient state solving the `m = 1` family exactly: only the
/// extreme orbits `nu = 0` and `nu = N-1` are populated. Valid for
/// `theta >= arccos(-1 + 1/ceil(n/2))`.
pub fn construct_sym_m1(n: usize, theta: Angle) -> Result<StateVector> {
    check_statevector_width(n)?;
    if n <= 1 {
        return Err(Error::invalid("m = 1 construction needs n > 1"));
    }
    let threshold = threshold_sym_m1(n)?;
    if theta.theta() < threshold - 1e-12 {
        return Err(Error::BelowThreshold {
            theta: theta.theta(),
            threshold,
        });
    }
    let orbits = symmetric_string_orbits_for(n)?;
    let big_n = orbits.len();
    // Row mu = 1 of the symmetric system with only c_0, c_{N-1} nonzero:
    // A[1][0] c_0 + A[1][N-1] c_{N-1} = 0.
    let table = symmetric_orbit_table(n, 1)?;
    let mat = build_a_symmetric_with(&table, theta)?;
    let lead = mat.rows[1][0];
    let tail = mat.rows[1][big_n - 1];
    let mut ratios = vec![0.0; big_n];
    ratios[big_n - 1] = 1.0;
    ratios[0] = (-tail / lead).max(0.0);
    assemble_from_ratios(n, &ratios, &orbits)
}

/// Tensor-product state for the cyclic windows `T_cyc(n = kappa m, m)`:
/// each of the `m` columns `{c, c+m, ..., c+(kappa-1)m}` of the row-major
/// `kappa x m` array carries one copy of the `kappa`-qubit `m' = 1` state.
pub fn construct_ts_cyc(m: usize, kappa: usize, theta: Angle) -> Result<StateVector> {
    if m == 0 {
        return Err(Error::invalid("cyclic construction needs m > 0"));
    }
    if kappa <= 1 {
        return Err(Error::invalid("cyclic construction needs kappa > 1"));
    }
    let n = kappa * m;
    check_statevector_width(n)?;
    let column = construct_sym_m1(kappa, theta)?;
    let mut psi = StateVector::zero(n)?;
    for big_b in 0..(1u64 << n) {
        let mut amp = Complex64::ONE;
        for c in 1..=m {
            // Sub-index of column c, row-major layout: qubit (r-1)m + c.
            let mut sub = 0u64;
            for r in 1..=kappa {
                let qubit = (r - 1) * m + c;
                sub = (sub << 1) | ((big_b >> (n - qubit)) & 1);
            }
            amp *= column.amp(sub);
            if amp.norm_sqr() == 0.0 {
                break;
            }
        }
        psi.amplitudes_mut()[big_b as usize] = amp;
    }
    psi.normalize()?;
    Ok(psi)
}

/// One comparison row of a threshold sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub group: GroupKind,
    pub theta_formula: Option<f64>,
    pub theta_lp: Option<f64>,
    pub delta: Option<f64>,
}

/// Families covered by [`sweep_thresholds`].
#[derive(Clone, Copy, Debug)]
pub enum SweepFamily {
    /// Symmetric group at half filling, `m = floor(n/2)`.
    SymHalf,
    /// Symmetric group with single-qubit trajectories.
    SymM1,
    /// Cyclic windows with `n = kappa * m`.
    CycMultiple(usize),
}

/// Sweeps the closed-form threshold against the LP bisection over a range
/// of `n`, one row per instance. Rows are computed in parallel.
pub fn sweep_thresholds(
    family: SweepFamily,
    ns: impl IntoIterator<Item = usize>,
    opts: &ScanOptions,
) -> Result<Vec<SweepRow>> {
    let ns: Vec<usize> = ns.into_iter().collect();
    let rows = exec::map_indexed(ns.len(), |i| sweep_row(family, ns[i], opts));
    rows.into_iter().collect()
}

fn sweep_row(family: SweepFamily, n: usize, opts: &ScanOptions) -> Result<SweepRow> {
    match family {
        SweepFamily::SymHalf => {
            let m = n / 2;
            let table = symmetric_orbit_table(n, m)?;
            let scan = threshold_scan(&|theta| build_a_symmetric_with(&table, theta), opts)?;
            let formula = threshold_sym(n, m).theta_star;
            Ok(row(
                n,
                m,
                GroupKind::Symmetric,
                Some(formula),
                scan.theta_star,
            ))
        }
        SweepFamily::SymM1 => {
            let table = symmetric_orbit_table(n, 1)?;
            let scan = threshold_scan(&|theta| build_a_symmetric_with(&table, theta), opts)?;
            let formula = threshold_sym_m1(n)?;
            Ok(row(
                n,
                1,
                GroupKind::Symmetric,
                Some(formula),
                scan.theta_star,
            ))
        }
        SweepFamily::CycMultiple(kappa) => {
            if kappa <= 1 || !n.is_multiple_of(kappa) {
                return Err(Error::invalid(format!(
                    "n = {n} is not a multiple of kappa = {kappa}"
                )));
            }
            let m = n / kappa;
            let table = cyclic_orbit_table(n, m)?;
            let scan = threshold_scan(&|theta| build_a_generic(&table, theta), opts)?;
            let formula = threshold_cyc_multiple(kappa)?;
            Ok(row(n, m, GroupKind::Cyclic, Some(formula), scan.theta_star))
        }
    }
}

fn row(
    n: usize,
    m: usize,
    group: GroupKind,
    theta_formula: Option<f64>,
    theta_lp: Option<f64>,
) -> SweepRow {
    let delta = match (theta_formula, theta_lp) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };
    SweepRow {
        n,
        m,
        group,
        theta_formula,
        theta_lp,
        delta,
    }
}
