//! Dense statevector oracle for trajectory perturbations.
//!
//! Every trajectory perturbation is diagonal in the Z basis, so operators
//! are stored as real eigenphase arrays rather than matrices: the operator
//! sends `|b>` to `exp(i * phase[b]) |b>`. The Gram matrix of the perturbed
//! outputs decides, by brute force, whether a candidate state discriminates
//! a trajectory set.

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::exec;
use crate::perm::Permutation;
use crate::state::check_statevector_width;
use crate::{StateVector, Trajectory, TrajectorySet};

/// Default tolerance for orthogonality verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A Z-diagonal unitary stored by its eigenphase array.
#[derive(Clone, Debug)]
pub struct DiagonalPhaseOp {
    n: usize,
    phases: Vec<f64>,
}

impl DiagonalPhaseOp {
    pub fn identity(n: usize) -> Result<Self> {
        check_statevector_width(n)?;
        Ok(DiagonalPhaseOp {
            n,
            phases: vec![0.0; 1 << n],
        })
    }

    /// Eigenphases of the trajectory perturbation: qubit `k` in `T`
    /// contributes `+theta/2` when `j_k = 1` and `-theta/2` when `j_k = 0`.
    pub fn trajectory_phases(t: &Trajectory, theta: Angle, n: usize) -> Result<Self> {
        check_statevector_width(n)?;
        if t.n() != n {
            return Err(Error::SizeMismatch(format!(
                "trajectory on {} qubits, operator on {n}",
                t.n()
            )));
        }
        let mask = t.mask();
        let m = t.len() as f64;
        let half = theta.theta() / 2.0;
        let phases = exec::map_indexed(1 << n, move |b| {
            let ones = (b as u64 & mask).count_ones() as f64;
            half * (2.0 * ones - m)
        });
        Ok(DiagonalPhaseOp { n, phases })
    }

    /// The orthogonality operator for the ordered pair `(T, T')`, i.e.
    /// `R^dag(T) R^(T')`, with eigenphase `phi^(T') - phi^(T)`. For
    /// equal-size trajectories this reduces to
    /// `theta * (#ones in T' - #ones in T)`.
    pub fn pair_op(t: &Trajectory, t2: &Trajectory, theta: Angle, n: usize) -> Result<Self> {
        check_statevector_width(n)?;
        if t.n() != n || t2.n() != n {
            return Err(Error::SizeMismatch(
                "trajectory widths differ from operator".into(),
            ));
        }
        let (m1, m2) = (t.mask(), t2.mask());
        let offset = 0.5 * (t.len() as f64 - t2.len() as f64);
        let theta = theta.theta();
        let phases = exec::map_indexed(1 << n, move |b| {
            let b = b as u64;
            theta * ((b & m2).count_ones() as f64 - (b & m1).count_ones() as f64 + offset)
        });
        Ok(DiagonalPhaseOp { n, phases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn phase_at(&self, index: u64) -> f64 {
        self.phases[index as usize]
    }

    /// The adjoint (all eigenphases negated).
    pub fn adjoint(&self) -> Self {
        DiagonalPhaseOp {
            n: self.n,
            phases: self.phases.iter().map(|p| -p).collect(),
        }
    }

    /// Composition of two diagonal operators (phases add).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(
                "diagonal operator widths differ".into(),
            ));
        }
        Ok(DiagonalPhaseOp {
            n: self.n,
            phases: self
                .phases
                .iter()
                .zip(&other.phases)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Applies the operator: `a_b -> exp(i phase_b) a_b`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "state on {} qubits, operator on {}",
                psi.n(),
                self.n
            )));
        }
        let amps = psi
            .amplitudes()
            .iter()
            .zip(&self.phases)
            .map(|(a, p)| a * Complex64::cis(*p))
            .collect();
        StateVector::from_amplitudes(self.n, amps)
    }
}

/// `P_pi |j_1...j_n> = |j_{pi^-1(1)} ... j_{pi^-1(n)}>`: the amplitude at
/// the permuted string equals the input amplitude at the original string.
pub fn permutation_matrix_action(pi: &Permutation, psi: &StateVector) -> Result<StateVector> {
    if pi.n() != psi.n() {
        return Err(Error::SizeMismatch(format!(
            "permutation on {} symbols, state on {} qubits",
            pi.n(),
            psi.n()
        )));
    }
    let mut out = StateVector::zero(psi.n())?;
    for (b, amp) in psi.amplitudes().iter().enumerate() {
        out.amplitudes_mut()[pi.scatter_bits(b as u64) as usize] = *amp;
    }
    Ok(out)
}

/// The Gram matrix `G_ab = <psi| R^dag(T_a) R^(T_b) |psi>` of all perturbed
/// outputs.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    size: usize,
    entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.entries[a * self.size + b]
    }

    pub fn max_offdiag(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.size {
            for b in 0..self.size {
                if a != b {
                    worst = worst.max(self.get(a, b).norm());
                }
            }
        }
        worst
    }

    pub fn max_diag_deviation(&self) -> f64 {
        (0..self.size)
            .map(|a| (self.get(a, a) - Complex64::ONE).norm())
            .fold(0.0, f64::max)
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.get(a, b)).collect())
            .collect()
    }
}

/// Inner product `<u| R^dag(T_a) R^(T_b) |v>` evaluated by bucketing basis
/// states on the integer phase multiplier `p_b(x) - p_a(x)`.
fn pair_expectation(
    weights: &[Complex64],
    mask_a: u64,
    mask_b: u64,
    m: usize,
    cis: &[Complex64],
) -> Complex64 {
    let mut buckets = vec![Complex64::ZERO; 2 * m + 1];
    for (x, w) in weights.iter().enumerate() {
        if w.re == 0.0 && w.im == 0.0 {
            continue;
        }
        let x = x as u64;
        let d = (x & mask_b).count_ones() as isize - (x & mask_a).count_ones() as isize;
        buckets[(d + m as isize) as usize] += w;
    }
    buckets.iter().zip(cis).map(|(w, c)| w * c).sum()
}

fn cis_table(theta: f64, m: usize) -> Vec<Complex64> {
    (-(m as isize)..=m as isize)
        .map(|d| Complex64::cis(theta * d as f64))
        .collect()
}

fn check_state_vs_set(psi: &StateVector, ts: &TrajectorySet) -> Result<()> {
    if psi.n() != ts.n() {
        return Err(Error::SizeMismatch(format!(
            "state on {} qubits, trajectories on {}",
            psi.n(),
            ts.n()
        )));
    }
    let dev = (psi.norm_sq() - 1.0).abs();
    if dev > 1e-9 {
        return Err(Error::NotNormalized(dev));
    }
    Ok(())
}

/// Computes the full `|T| x |T|` Gram matrix; Hermitian by construction
/// (only the upper triangle is summed).
pub fn gram_matrix(psi: &StateVector, ts: &TrajectorySet, theta: Angle) -> Result<GramMatrix> {
    check_state_vs_set(psi, ts)?;
    let size = ts.len();
    let m = ts.member_size();
    let weights: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .map(|a| Complex64::new(a.norm_sqr(), 0.0))
        .collect();
    let cis = cis_table(theta.theta(), m);
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (a..size).map(move |b| (a, b)))
        .collect();
    let values = exec::map_indexed(pairs.len(), |i| {
        let (a, b) = pairs[i];
        pair_expectation(&weights, ts.get(a).mask(), ts.get(b).mask(), m, &cis)
    });
    let mut entries = vec![Complex64::ZERO; size * size];
    for (&(a, b), v) in pairs.iter().zip(values) {
        entries[a * size + b] = v;
        entries[b * size + a] = v.conj();
    }
    Ok(GramMatrix { size, entries })
}

/// Verdict of the brute-force check of the orthogonality criteria.
#[derive(Clone, Copy, Debug)]
pub struct TsReport {
    pub is_ts: bool,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
}

/// Checks `<psi| R^dag(T) R^(T') |psi> = delta_{T,T'}` for every pair. At
/// `theta = 0` no two distinct trajectories are distinguishable, so the
/// verdict short-circuits to `|T| == 1`.
pub fn verify_ts_state(
    psi: &StateVector,
    ts: &TrajectorySet,
    theta: Angle,
    tol: f64,
) -> Result<TsReport> {
    if theta.is_zero() {
        check_state_vs_set(psi, ts)?;
        let trivial = ts.len() == 1;
        return Ok(TsReport {
            is_ts: trivial,
            max_offdiag: if trivial { 0.0 } else { 1.0 },
            max_diag_dev: 0.0,
        });
    }
    let gram = gram_matrix(psi, ts, theta)?;
    let max_offdiag = gram.max_offdiag();
    let max_diag_dev = gram.max_diag_deviation();
    Ok(TsReport {
        is_ts: max_offdiag <= tol && max_diag_dev <= tol,
        max_offdiag,
        max_diag_dev,
    })
}

/// Verdict of the code-level check.
#[derive(Clone, Copy, Debug)]
pub struct CodeReport {
    pub is_ts_code: bool,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
}

/// Checks `<psi_i| R^dag(T) R^(T') |psi_j> = delta_{T,T'} delta_{i,j}` for
/// an orthonormal basis: every state in the span then discriminates the
/// trajectory set. The basis must be orthonormal within `tol`.
pub fn verify_ts_code(
    basis: &[StateVector],
    ts: &TrajectorySet,
    theta: Angle,
    tol: f64,
) -> Result<CodeReport> {
    if basis.is_empty() {
        return Err(Error::invalid("empty code basis"));
    }
    let mut ortho_dev = 0.0f64;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let target = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            ortho_dev = ortho_dev.max((u.inner(v)? - target).norm());
        }
    }
    if ortho_dev > tol.max(1e-12) {
        return Err(Error::NotOrthonormal(ortho_dev));
    }
    for v in basis {
        check_state_vs_set(v, ts)?;
    }
    if theta.is_zero() {
        let trivial = ts.len() == 1;
        return Ok(CodeReport {
            is_ts_code: trivial,
            max_offdiag: if trivial { 0.0 } else { 1.0 },
            max_diag_dev: 0.0,
        });
    }

    let k = basis.len();
    let size = ts.len();
    let m = ts.member_size();
    let cis = cis_table(theta.theta(), m);
    // Combined index (i, a) over basis states and trajectories; the
    // criterion is a Gram identity over all k * |T| outputs.
    let combined: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..size).map(move |a| (i, a)))
        .collect();
    let total = combined.len();
    let work: Vec<(usize, usize)> = (0..total)
        .flat_map(|p| (p..total).map(move |q| (p, q)))
        .collect();
    let values = exec::map_indexed(work.len(), |w| {
        let (p, q) = work[w];
        let (i, a) = combined[p];
        let (j, b) = combined[q];
        let weights: Vec<Complex64> = basis[i]
            .amplitudes()
            .iter()
            .zip(basis[j].amplitudes())
            .map(|(u, v)| u.conj() * v)
            .collect();
        pair_expectation(&weights, ts.get(a).mask(), ts.get(b).mask(), m, &cis)
    });
    let mut max_offdiag = 0.0f64;
    let mut max_diag_dev = 0.0f64;
    for (&(p, q), v) in work.iter().zip(values) {
        if p == q {
            max_diag_dev = max_diag_dev.max((v - Complex64::ONE).norm());
        } else {
            max_offdiag = max_offdiag.max(v.norm());
        }
    }
    Ok(CodeReport {
        is_ts_code: max_offdiag <= tol && max_diag_dev <= tol,
        max_offdiag,
        max_diag_dev,
    })
}
