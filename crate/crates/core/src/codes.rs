//! Worked sensing codes: the C4/C6 subcodes, the 8-qubit toric state, the
//! `[[n,1]]` logical code built from symmetric-family states, and
//! concatenation with repetition and Steane codes.

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::lp::{build_a_symmetric, solve_feasibility, state_from_solution};
use crate::orbits::generate_transitive_set;
use crate::pauli::PauliOperator;
use crate::perm::PermutationGroup;
use crate::sim::{gram_matrix, verify_ts_state, DiagonalPhaseOp, TsReport};
use crate::stab::{stabilizer_state, StabilizerGroup};
use crate::state::check_statevector_width;
use crate::{StateVector, Trajectory, TrajectorySet};

/// A stabilizer-built sensing state together with the trajectory set and
/// angle it discriminates.
#[derive(Clone, Debug)]
pub struct CodeFixture {
    pub name: &'static str,
    pub n: usize,
    pub group: StabilizerGroup,
    pub state: StateVector,
    pub trajectories: TrajectorySet,
    pub theta: Angle,
}

fn unique_state(group: &StabilizerGroup) -> Result<StateVector> {
    let space = stabilizer_state(group)?;
    if space.dimension() != 1 {
        return Err(Error::InvalidStabilizer(format!(
            "expected a 1-dimensional subcode, got {}",
            space.dimension()
        )));
    }
    Ok(space.basis.into_iter().next().expect("one vector"))
}

fn cyclic_windows(n: usize, m: usize) -> Result<TrajectorySet> {
    let group = PermutationGroup::cyclic(n)?;
    generate_transitive_set(&group, m)
}

/// The C4 subcode: `<-Z^(13), -Z^(24), X^(13), X^(24)>` pins the state
/// discriminating the four 2-qubit windows at `theta = pi/2`.
pub fn fixture_c4() -> Result<CodeFixture> {
    let n = 4;
    let group = StabilizerGroup::new(
        n,
        vec![
            PauliOperator::z_on(n, &[1, 3])?.neg(),
            PauliOperator::z_on(n, &[2, 4])?.neg(),
            PauliOperator::x_on(n, &[1, 3])?,
            PauliOperator::x_on(n, &[2, 4])?,
        ],
    )?;
    Ok(CodeFixture {
        name: "c4",
        n,
        state: unique_state(&group)?,
        group,
        trajectories: cyclic_windows(n, 2)?,
        theta: Angle::pi_fraction(1, 2)?,
    })
}

/// The C6 subcode: `<-Z^(14), -Z^(25), -Z^(36), X^(14), X^(25), X^(36)>`
/// against the six 3-qubit windows at `theta = pi/2`.
pub fn fixture_c6() -> Result<CodeFixture> {
    let n = 6;
    let pairs: [[usize; 2]; 3] = [[1, 4], [2, 5], [3, 6]];
    let mut gens = Vec::new();
    for p in &pairs {
        gens.push(PauliOperator::z_on(n, p)?.neg());
    }
    for p in &pairs {
        gens.push(PauliOperator::x_on(n, p)?);
    }
    let group = StabilizerGroup::new(n, gens)?;
    Ok(CodeFixture {
        name: "c6",
        n,
        state: unique_state(&group)?,
        group,
        trajectories: cyclic_windows(n, 3)?,
        theta: Angle::pi_fraction(1, 2)?,
    })
}

/// The four toric trajectories, hard-coded from the lattice layout.
pub fn toric_trajectories() -> Result<TrajectorySet> {
    TrajectorySet::new(
        8,
        vec![
            Trajectory::from_members(8, &[1, 3, 4, 5])?,
            Trajectory::from_members(8, &[5, 7, 8, 1])?,
            Trajectory::from_members(8, &[2, 4, 5, 7])?,
            Trajectory::from_members(8, &[3, 5, 8, 2])?,
        ],
    )
}

/// The 8-qubit toric state: the vertex/plaquette generators restricted to an
/// independent set, plus `-Z^(12)` and `-Z^(37)` to pin a one-dimensional
/// subcode.
pub fn fixture_toric() -> Result<CodeFixture> {
    let n = 8;
    let group = StabilizerGroup::new(
        n,
        vec![
            PauliOperator::x_on(n, &[1, 2, 4, 8])?,
            PauliOperator::x_on(n, &[3, 5, 6, 7])?,
            PauliOperator::x_on(n, &[4, 5, 6, 8])?,
            PauliOperator::z_on(n, &[1, 3, 4, 5])?,
            PauliOperator::z_on(n, &[2, 3, 4, 6])?,
            PauliOperator::z_on(n, &[5, 7, 8, 1])?,
            PauliOperator::z_on(n, &[1, 2])?.neg(),
            PauliOperator::z_on(n, &[3, 7])?.neg(),
        ],
    )?;
    Ok(CodeFixture {
        name: "toric",
        n,
        state: unique_state(&group)?,
        group,
        trajectories: toric_trajectories()?,
        theta: Angle::pi_fraction(1, 2)?,
    })
}

/// Applies the logical phase that negates every basis string of weight
/// greater than `floor(n/2)`.
pub fn apply_logical_z(psi: &StateVector) -> StateVector {
    let n = psi.n();
    let mut out = psi.clone();
    for (b, amp) in out.amplitudes_mut().iter_mut().enumerate() {
        if (b as u64).count_ones() as usize > n / 2 {
            *amp = -*amp;
        }
    }
    out
}

/// The `[[n,1]]` logical code spanned by a flip-symmetric sensing state and
/// its flip-antisymmetric partner. Only odd `n` supports the construction
/// (for even `n` the antisymmetric partner loses the middle weight class).
#[derive(Clone, Debug)]
pub struct CtsCode {
    pub n: usize,
    pub m: usize,
    pub theta: Angle,
    pub plus_l: StateVector,
    pub minus_l: StateVector,
    pub zero_l: StateVector,
    pub one_l: StateVector,
    pub x_l: PauliOperator,
    pub trajectories: TrajectorySet,
}

impl CtsCode {
    /// The computational logical basis `{|0_L>, |1_L>}`.
    pub fn basis(&self) -> [StateVector; 2] {
        [self.zero_l.clone(), self.one_l.clone()]
    }
}

pub fn build_cts_code(n: usize, m: usize, theta: Angle) -> Result<CtsCode> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "logical code construction needs odd n, got {n}"
        )));
    }
    check_statevector_width(n)?;
    let mat = build_a_symmetric(n, m, theta)?;
    let lp = solve_feasibility(&mat, 1e-9)?;
    let Some(c) = lp.c else {
        return Err(Error::invalid(format!(
            "no sensing state exists for T_sym({n},{m}) at theta = {}",
            theta.theta()
        )));
    };
    let plus_l = state_from_solution(&c, &mat.orbits, 1e-9)?;
    let minus_l = apply_logical_z(&plus_l);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero_l = plus_l.add(&minus_l)?.scaled(inv_sqrt2);
    let one_l = plus_l.sub(&minus_l)?.scaled(inv_sqrt2);
    let all: Vec<usize> = (1..=n).collect();
    Ok(CtsCode {
        n,
        m,
        theta,
        plus_l,
        minus_l,
        zero_l,
        one_l,
        x_l: PauliOperator::x_on(n, &all)?,
        trajectories: mat.orbits.trajectories.clone(),
    })
}

/// Output of a concatenation: the physical state, the induced physical
/// trajectory set, and the interaction strength at which it discriminates.
#[derive(Clone, Debug)]
pub struct ConcatOutput {
    pub state: StateVector,
    pub trajectories: TrajectorySet,
    pub theta: Angle,
}

/// Encodes each logical qubit of `psi` in an `n'`-qubit repetition code
/// (`|0> -> |0...0>`, `|1> -> |1...1>`). Logical trajectories become unions
/// of whole blocks, and the required interaction strength drops to
/// `theta / n'`.
pub fn concat_repetition(
    psi: &StateVector,
    logical_ts: &TrajectorySet,
    theta: Angle,
    n_prime: usize,
) -> Result<ConcatOutput> {
    if n_prime == 0 {
        return Err(Error::invalid("repetition block size must be positive"));
    }
    let n = psi.n();
    if logical_ts.n() != n {
        return Err(Error::SizeMismatch(
            "trajectory set width differs from state".into(),
        ));
    }
    let big_n = n * n_prime;
    check_statevector_width(big_n)?;
    // Basis-layout mask of each logical qubit's block.
    let block_masks: Vec<u64> = (1..=n)
        .map(|l| {
            let mut mask = 0u64;
            for k in (l - 1) * n_prime + 1..=l * n_prime {
                mask |= 1 << (big_n - k);
            }
            mask
        })
        .collect();
    let mut state = StateVector::zero(big_n)?;
    for (b, amp) in psi.amplitudes().iter().enumerate() {
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        let mut big_b = 0u64;
        for (l, mask) in block_masks.iter().enumerate() {
            if (b >> (n - 1 - l)) & 1 == 1 {
                big_b |= mask;
            }
        }
        state.amplitudes_mut()[big_b as usize] = *amp;
    }
    let trajectories = logical_ts
        .iter()
        .map(|t| {
            let members: Vec<usize> = t
                .members()
                .iter()
                .flat_map(|&l| (l - 1) * n_prime + 1..=l * n_prime)
                .collect();
            Trajectory::from_members(big_n, &members)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcatOutput {
        state,
        trajectories: TrajectorySet::new(big_n, trajectories)?,
        theta: theta.scaled_down(n_prime),
    })
}

/// Steane `[[7,1]]` code in the standard CSS convention: X- and Z-type
/// generators on the supports `{4,5,6,7}`, `{2,3,6,7}`, `{1,3,5,7}`;
/// logical operators are the transversal `X^(7)` and `Z^(7)`.
#[derive(Clone, Debug)]
pub struct SteaneCode {
    pub generators: Vec<PauliOperator>,
    pub zero_l: StateVector,
    pub one_l: StateVector,
    pub x_l: PauliOperator,
    pub z_l: PauliOperator,
}

pub const STEANE_SUPPORTS: [[usize; 4]; 3] = [[4, 5, 6, 7], [2, 3, 6, 7], [1, 3, 5, 7]];

pub fn steane_code() -> Result<SteaneCode> {
    let n = 7;
    let mut generators = Vec::with_capacity(6);
    for s in &STEANE_SUPPORTS {
        generators.push(PauliOperator::x_on(n, s)?);
    }
    for s in &STEANE_SUPPORTS {
        generators.push(PauliOperator::z_on(n, s)?);
    }
    let all: Vec<usize> = (1..=n).collect();
    let z_l = PauliOperator::z_on(n, &all)?;
    let x_l = PauliOperator::x_on(n, &all)?;
    let mut pinned = generators.clone();
    pinned.push(z_l);
    let zero_l = unique_state(&StabilizerGroup::new(n, pinned)?)?;
    let one_l = x_l.apply(&zero_l)?;
    Ok(SteaneCode {
        generators,
        zero_l,
        one_l,
        x_l,
        z_l,
    })
}

/// Encodes each logical qubit of `psi` in a Steane block. Applying
/// `R_Z(pi/2)` to all 7 qubits of a block acts as the logical
/// `R_Z^dag(pi/2)`, so whole-block physical trajectories at `theta = pi/2`
/// reproduce the logical discrimination (orthogonality is insensitive to
/// the conjugation).
pub fn concat_steane(psi: &StateVector, logical_ts: &TrajectorySet) -> Result<ConcatOutput> {
    let n = psi.n();
    if logical_ts.n() != n {
        return Err(Error::SizeMismatch(
            "trajectory set width differs from state".into(),
        ));
    }
    let big_n = 7 * n;
    check_statevector_width(big_n)?;
    let code = steane_code()?;
    let words = |which: u8| -> Vec<(u64, Complex64)> {
        let source = if which == 0 {
            &code.zero_l
        } else {
            &code.one_l
        };
        source
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(w, a)| (w as u64, *a))
            .collect()
    };
    let tables = [words(0), words(1)];
    let mut state = StateVector::zero(big_n)?;
    for (b, amp) in psi.amplitudes().iter().enumerate() {
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        // Odometer over one codeword choice per block.
        let choices: Vec<&[(u64, Complex64)]> = (0..n)
            .map(|l| tables[(b >> (n - 1 - l)) & 1].as_slice())
            .collect();
        let mut idx = vec![0usize; n];
        loop {
            let mut big_b = 0u64;
            let mut coeff = *amp;
            for l in 0..n {
                let (word, a) = choices[l][idx[l]];
                big_b |= word << (7 * (n - 1 - l));
                coeff *= a;
            }
            state.amplitudes_mut()[big_b as usize] += coeff;
            // Advance the odometer.
            let mut l = 0;
            while l < n {
                idx[l] += 1;
                if idx[l] < choices[l].len() {
                    break;
                }
                idx[l] = 0;
                l += 1;
            }
            if l == n {
                break;
            }
        }
    }
    let trajectories = logical_ts
        .iter()
        .map(|t| {
            let members: Vec<usize> = t
                .members()
                .iter()
                .flat_map(|&l| (l - 1) * 7 + 1..=l * 7)
                .collect();
            Trajectory::from_members(big_n, &members)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcatOutput {
        state,
        trajectories: TrajectorySet::new(big_n, trajectories)?,
        theta: Angle::pi_fraction(1, 2)?,
    })
}

/// Projective syndrome measurement and single-qubit recovery on a register
/// of Steane blocks. The state must be a definite syndrome eigenstate (true
/// whenever a code state was corrupted by at most one Pauli per block).
pub fn steane_syndrome_correct(psi: &StateVector, blocks: usize) -> Result<StateVector> {
    let big_n = psi.n();
    if big_n != 7 * blocks || blocks == 0 {
        return Err(Error::SizeMismatch(format!(
            "state on {big_n} qubits is not {blocks} Steane blocks"
        )));
    }
    let mut corrected = psi.clone();
    for block in 0..blocks {
        let offset = block * 7;
        let shift = |s: &[usize]| -> Vec<usize> { s.iter().map(|q| q + offset).collect() };
        let mut gens = Vec::with_capacity(6);
        for s in &STEANE_SUPPORTS {
            gens.push(PauliOperator::x_on(big_n, &shift(s))?);
        }
        for s in &STEANE_SUPPORTS {
            gens.push(PauliOperator::z_on(big_n, &shift(s))?);
        }
        let mut syndrome = Vec::with_capacity(6);
        for g in &gens {
            let expect = g.expectation(&corrected)?;
            if (expect.norm() - 1.0).abs() > 1e-6 {
                return Err(Error::invalid(format!(
                    "block {} is not in a definite syndrome state (|<g>| = {:.4})",
                    block + 1,
                    expect.norm()
                )));
            }
            syndrome.push(expect.re < 0.0);
        }
        // Match against every single-qubit candidate error on this block.
        let mut candidates: Vec<PauliOperator> = vec![PauliOperator::identity(big_n)?];
        for q in offset + 1..=offset + 7 {
            candidates.push(PauliOperator::x_on(big_n, &[q])?);
            candidates.push(PauliOperator::y_on(big_n, &[q])?);
            candidates.push(PauliOperator::z_on(big_n, &[q])?);
        }
        let matched = candidates.into_iter().find(|e| {
            gens.iter()
                .zip(&syndrome)
                .all(|(g, &bit)| g.anticommutes_with(e) == bit)
        });
        let Some(recovery) = matched else {
            return Err(Error::invalid(format!(
                "block {} syndrome matches no single-qubit error",
                block + 1
            )));
        };
        if !recovery.is_identity_up_to_phase() {
            corrected = recovery.apply(&corrected)?;
        }
    }
    Ok(corrected)
}

/// The logical Bell-like sensing state `(|01_L> + |10_L>)/sqrt(2)` used by
/// both concatenation demos.
pub fn logical_bell() -> Result<(StateVector, TrajectorySet, Angle)> {
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut psi = StateVector::zero(2)?;
    psi.amplitudes_mut()[0b01] = w;
    psi.amplitudes_mut()[0b10] = w;
    let ts = TrajectorySet::new(
        2,
        vec![
            Trajectory::from_members(2, &[1])?,
            Trajectory::from_members(2, &[2])?,
        ],
    )?;
    Ok((psi, ts, Angle::pi_fraction(1, 2)?))
}

/// Repetition-code demo: the two-block sensor distinguishing both blocks at
/// `theta = pi / (2 n')`.
pub fn repetition_demo(n_prime: usize, tol: f64) -> Result<(ConcatOutput, TsReport)> {
    let (psi, ts, theta) = logical_bell()?;
    let out = concat_repetition(&psi, &ts, theta, n_prime)?;
    let report = verify_ts_state(&out.state, &out.trajectories, out.theta, tol)?;
    Ok((out, report))
}

/// Outcome of the Steane noise-resilience demo.
#[derive(Clone, Debug)]
pub struct SteaneDemoReport {
    pub base: TsReport,
    pub errors_tested: usize,
    pub failures: usize,
    pub worst_offdiag: f64,
}

/// Builds the 14-qubit Steane-encoded sensor and exercises every
/// single-qubit X, Y, or Z error before the trajectory: after syndrome
/// correction the two trajectory outputs must stay orthogonal.
pub fn steane_demo(tol: f64) -> Result<SteaneDemoReport> {
    let (psi, ts, _) = logical_bell()?;
    let out = concat_steane(&psi, &ts)?;
    let base = verify_ts_state(&out.state, &out.trajectories, out.theta, tol)?;

    let n = out.state.n();
    let ops: Vec<DiagonalPhaseOp> = out
        .trajectories
        .iter()
        .map(|t| DiagonalPhaseOp::trajectory_phases(t, out.theta, n))
        .collect::<Result<_>>()?;
    let mut errors_tested = 0;
    let mut failures = 0;
    let mut worst = 0.0f64;
    for q in 1..=n {
        for kind in 0..3 {
            let error = match kind {
                0 => PauliOperator::x_on(n, &[q])?,
                1 => PauliOperator::y_on(n, &[q])?,
                _ => PauliOperator::z_on(n, &[q])?,
            };
            errors_tested += 1;
            let corrupted = error.apply(&out.state)?;
            let outputs: Vec<StateVector> = ops
                .iter()
                .map(|op| steane_syndrome_correct(&op.apply(&corrupted)?, 2))
                .collect::<Result<_>>()?;
            let mut ok = true;
            for (a, u) in outputs.iter().enumerate() {
                for v in outputs.iter().skip(a + 1) {
                    let overlap = u.inner(v)?.norm();
                    worst = worst.max(overlap);
                    if overlap > tol {
                        ok = false;
                    }
                }
            }
            if !ok {
                failures += 1;
            }
        }
    }
    Ok(SteaneDemoReport {
        base,
        errors_tested,
        failures,
        worst_offdiag: worst,
    })
}

/// Convenience wrapper used by fixtures and the CLI: Gram verdict of a
/// fixture state against its own trajectory set and angle.
pub fn verify_fixture(fx: &CodeFixture, tol: f64) -> Result<TsReport> {
    verify_ts_state(&fx.state, &fx.trajectories, fx.theta, tol)
}

/// Full Gram matrix of a fixture, for reporting.
pub fn fixture_gram(fx: &CodeFixture) -> Result<crate::sim::GramMatrix> {
    gram_matrix(&fx.state, &fx.trajectories, fx.theta)
}
