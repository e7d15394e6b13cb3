//! Stabilizer groups, code-space synthesis, and the projected
//! anticommutation criterion for trajectory discrimination.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sim::DiagonalPhaseOp;
use crate::{StateVector, Trajectory};

/// Cap for dense code-space synthesis.
pub const MAX_STABILIZER_QUBITS: usize = 14;

/// Cap on materialized code dimension.
pub const MAX_CODE_DIMENSION: usize = 64;

/// An abelian Pauli subgroup without `-I`, given by (possibly dependent)
/// Hermitian generators.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    /// Independent generators after symplectic elimination.
    reduced: Vec<PauliOperator>,
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidStabilizer("no generators".into()));
        }
        for g in &generators {
            if g.n() != n {
                return Err(Error::InvalidStabilizer(format!(
                    "generator {g} acts on {} qubits, group is on {n}",
                    g.n()
                )));
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidStabilizer(format!(
                    "generator {g} is not Hermitian"
                )));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidStabilizer(format!(
                        "generators {a} and {b} anticommute"
                    )));
                }
            }
        }
        let reduced = eliminate(n, &generators)?;
        Ok(StabilizerGroup {
            n,
            generators,
            reduced,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Independent generator set (the elimination result).
    pub fn reduced_generators(&self) -> &[PauliOperator] {
        &self.reduced
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Dimension of the joint `+1` eigenspace: `2^(n - rank)`.
    pub fn dimension(&self) -> usize {
        1 << (self.n - self.rank())
    }
}

/// Gaussian elimination over the symplectic bit representation, tracking
/// phases through actual group products. Returns the independent rows;
/// detecting `-I` (a dependent product with a leftover sign) is an error.
fn eliminate(n: usize, generators: &[PauliOperator]) -> Result<Vec<PauliOperator>> {
    let mut rows: Vec<PauliOperator> = generators.to_vec();
    let mut pivot_row = 0;
    let columns: Vec<(bool, u64)> = (0..n)
        .map(|i| (true, 1u64 << (n - 1 - i)))
        .chain((0..n).map(|i| (false, 1u64 << (n - 1 - i))))
        .collect();
    for (is_x, bit) in columns {
        let test = |p: &PauliOperator| {
            if is_x {
                p.x_mask() & bit != 0
            } else {
                p.z_mask() & bit != 0
            }
        };
        let Some(found) = (pivot_row..rows.len()).find(|&r| test(&rows[r])) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let pivot = rows[pivot_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && test(row) {
                *row = row.mul(&pivot)?;
            }
        }
        pivot_row += 1;
    }
    for row in &rows[pivot_row..] {
        debug_assert!(row.is_identity_up_to_phase());
        match row.phase_pow() {
            0 => {}
            2 => {
                return Err(Error::InvalidStabilizer(
                    "-I is in the generated group".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidStabilizer(
                    "group contains a non-Hermitian scalar".into(),
                ))
            }
        }
    }
    rows.truncate(pivot_row);
    Ok(rows)
}

/// An orthonormal basis of the joint `+1` eigenspace.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    pub n: usize,
    pub basis: Vec<StateVector>,
}

impl CodeSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Materializes the code space of a stabilizer group by projecting seed
/// basis states through `(I + g)/2` generator by generator.
///
/// Seeds are not scanned blindly: the pure-Z subgroup of the stabilizer
/// pins, as a linear system over GF(2), which basis strings survive the
/// projection at all, and distinct X-cosets of surviving strings give
/// orthogonal projections. The enumeration therefore touches exactly one
/// seed per basis vector.
pub fn stabilizer_state(group: &StabilizerGroup) -> Result<CodeSpace> {
    let n = group.n();
    if n > MAX_STABILIZER_QUBITS {
        return Err(Error::ResourceCap {
            what: "stabilizer code synthesis",
            n,
            cap: MAX_STABILIZER_QUBITS,
        });
    }
    let dim = group.dimension();
    if dim > MAX_CODE_DIMENSION {
        return Err(Error::ResourceCap {
            what: "code dimension",
            n: dim,
            cap: MAX_CODE_DIMENSION,
        });
    }

    // Re-eliminate prioritizing X bits so trailing rows are purely Z-type.
    let mut rows = group.reduced_generators().to_vec();
    let mut x_rank = 0;
    for i in 0..n {
        let bit = 1u64 << (n - 1 - i);
        let Some(found) = (x_rank..rows.len()).find(|&r| rows[r].x_mask() & bit != 0) else {
            continue;
        };
        rows.swap(x_rank, found);
        let pivot = rows[x_rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != x_rank && row.x_mask() & bit != 0 {
                *row = row.mul(&pivot)?;
            }
        }
        x_rank += 1;
    }
    let diagonal: Vec<&PauliOperator> = rows[x_rank..]
        .iter()
        .filter(|p| !p.is_identity_up_to_phase())
        .collect();

    // Solve z . b = p/2 (mod 2) for every diagonal element.
    let mut system: Vec<(u64, u64)> = diagonal
        .iter()
        .map(|p| (p.z_mask(), u64::from(p.phase_pow() / 2)))
        .collect();
    let mut pivots: Vec<u64> = Vec::new();
    let mut reduced_sys: Vec<(u64, u64)> = Vec::new();
    for i in 0..n {
        let bit = 1u64 << (n - 1 - i);
        let Some(pos) = system.iter().position(|&(z, _)| z & bit != 0) else {
            continue;
        };
        let row = system.swap_remove(pos);
        for other in system.iter_mut() {
            if other.0 & bit != 0 {
                other.0 ^= row.0;
                other.1 ^= row.1;
            }
        }
        for done in reduced_sys.iter_mut() {
            if done.0 & bit != 0 {
                done.0 ^= row.0;
                done.1 ^= row.1;
            }
        }
        pivots.push(bit);
        reduced_sys.push(row);
    }
    if system.iter().any(|&(z, s)| z == 0 && s != 0) {
        return Err(Error::InvalidStabilizer(
            "stabilizer space is zero-dimensional".into(),
        ));
    }
    let mut seed0 = 0u64;
    for (&(z, s), &bit) in reduced_sys.iter().zip(&pivots) {
        // After full reduction the pivot bit determines the row parity.
        let rest = z & !bit;
        let parity = (rest & seed0).count_ones() as u64 % 2;
        if parity ^ s != 0 {
            seed0 |= bit;
        }
    }
    // Free directions of the solution space.
    let pivot_mask: u64 = pivots.iter().copied().fold(0, |a, b| a | b);
    let free_bits: Vec<u64> = (0..n)
        .map(|i| 1u64 << (n - 1 - i))
        .filter(|bit| pivot_mask & bit == 0)
        .collect();
    // Each free choice must re-solve the pivot bits, so precompute, per free
    // bit, the pivot correction it induces.
    let free_dirs: Vec<u64> = free_bits
        .iter()
        .map(|&fb| {
            let mut dir = fb;
            for (&(z, _), &bit) in reduced_sys.iter().zip(&pivots) {
                if z & fb != 0 {
                    dir ^= bit;
                }
            }
            dir
        })
        .collect();

    // X-span echelon basis for coset bookkeeping.
    let mut x_basis: Vec<u64> = Vec::new();
    for row in group.reduced_generators() {
        let mut v = row.x_mask();
        for &b in &x_basis {
            if v & msb(b) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            x_basis.push(v);
            x_basis.sort_by_key(|&b| std::cmp::Reverse(msb(b)));
        }
    }
    let canonical = |mut v: u64| -> u64 {
        for &b in &x_basis {
            if v & msb(b) != 0 {
                v ^= b;
            }
        }
        v
    };

    let mut seen: HashSet<u64> = HashSet::new();
    let mut basis: Vec<StateVector> = Vec::with_capacity(dim);
    let combos = 1u64 << free_dirs.len().min(63);
    for counter in 0..combos {
        if basis.len() == dim {
            break;
        }
        let mut seed = seed0;
        for (j, dir) in free_dirs.iter().enumerate() {
            if counter >> j & 1 == 1 {
                seed ^= dir;
            }
        }
        if !seen.insert(canonical(seed)) {
            continue;
        }
        let mut v = StateVector::zero(n)?;
        v.amplitudes_mut()[seed as usize] = Complex64::ONE;
        for g in group.reduced_generators() {
            let gv = g.apply(&v)?;
            v = v.add(&gv)?.scaled(Complex64::new(0.5, 0.0));
        }
        let norm = v.norm();
        if norm < 1e-9 {
            return Err(Error::InvalidStabilizer(format!(
                "projection of seed {seed:0width$b} vanished",
                width = n
            )));
        }
        for a in v.amplitudes_mut() {
            *a /= norm;
        }
        basis.push(v);
    }
    if basis.len() != dim {
        return Err(Error::InvalidStabilizer(format!(
            "found {} basis vectors, expected {dim}",
            basis.len()
        )));
    }
    for v in &basis {
        for g in group.generators() {
            let gv = g.apply(v)?;
            let dev = gv.sub(v)?.norm();
            if dev > 1e-10 {
                return Err(Error::InvalidStabilizer(format!(
                    "basis vector moves under {g} by {dev:.2e}"
                )));
            }
        }
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if u.inner(v)?.norm() > 1e-10 {
                return Err(Error::InvalidStabilizer("basis is not orthogonal".into()));
            }
        }
    }
    Ok(CodeSpace { n, basis })
}

fn msb(v: u64) -> u64 {
    debug_assert!(v != 0);
    1u64 << (63 - v.leading_zeros())
}

/// Checks the projected anticommutation criterion
/// `{D, R^(T,T')} Pi_V = 0`, where `V` is the joint `+1` eigenspace of the
/// commuting Pauli list `v_spec` (the whole space when the list is empty).
/// `D` must commute with every element of `v_spec` so that `V` is preserved.
///
/// Evaluated by applying both operator orderings to a basis of `V`; no
/// dense matrices are formed.
pub fn projected_anticommutator_check(
    d: &PauliOperator,
    t: &Trajectory,
    t2: &Trajectory,
    theta: Angle,
    v_spec: &[PauliOperator],
) -> Result<bool> {
    let n = d.n();
    if t.n() != n || t2.n() != n {
        return Err(Error::SizeMismatch(
            "trajectory width differs from operator".into(),
        ));
    }
    for v in v_spec {
        if !d.commutes_with(v) {
            return Err(Error::invalid(format!(
                "D = {d} does not commute with V generator {v}"
            )));
        }
    }
    let op = DiagonalPhaseOp::pair_op(t, t2, theta, n)?;
    const TOL: f64 = 1e-10;

    if v_spec.is_empty() {
        // {D, R} e_b has norm |e^{i phi_b} + e^{i phi_{b xor x}}|.
        let x = d.x_mask();
        for b in 0..(1u64 << n) {
            let s = Complex64::cis(op.phase_at(b)) + Complex64::cis(op.phase_at(b ^ x));
            if s.norm() > TOL {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    // {D, R} Pi_V vanishes as an operator iff it kills every column
    // Pi_V e_b; projecting the computational basis spans V without
    // materializing an orthonormal basis for it.
    let group = StabilizerGroup::new(n, v_spec.to_vec())?;
    if n > MAX_STABILIZER_QUBITS {
        return Err(Error::ResourceCap {
            what: "projected anticommutator check",
            n,
            cap: MAX_STABILIZER_QUBITS,
        });
    }
    for b in 0..(1u64 << n) {
        let mut v = StateVector::zero(n)?;
        v.amplitudes_mut()[b as usize] = Complex64::ONE;
        for g in group.reduced_generators() {
            let gv = g.apply(&v)?;
            v = v.add(&gv)?.scaled(Complex64::new(0.5, 0.0));
        }
        if v.norm() < 1e-12 {
            continue;
        }
        let first = d.apply(&op.apply(&v)?)?;
        let second = op.apply(&d.apply(&v)?)?;
        if first.add(&second)?.norm() > TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BitString;

    fn pauli(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn computational_basis_stabilizer() {
        // <Z1, Z2, Z3> pins |000>.
        let group =
            StabilizerGroup::new(3, vec![pauli("ZII"), pauli("IZI"), pauli("IIZ")]).unwrap();
        assert_eq!(group.rank(), 3);
        let space = stabilizer_state(&group).unwrap();
        assert_eq!(space.dimension(), 1);
        assert!((space.basis[0].amp(0) - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn negated_z_selects_excited_strings() {
        // <-Z1, Z2> pins |10>.
        let group = StabilizerGroup::new(2, vec![pauli("-ZI"), pauli("IZ")]).unwrap();
        let space = stabilizer_state(&group).unwrap();
        assert_eq!(space.dimension(), 1);
        assert!((space.basis[0].amp(0b10) - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn ghz_from_xxx() {
        let group =
            StabilizerGroup::new(3, vec![pauli("XXX"), pauli("ZZI"), pauli("IZZ")]).unwrap();
        let space = stabilizer_state(&group).unwrap();
        assert_eq!(space.dimension(), 1);
        let v = &space.basis[0];
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.amp(0b000).norm() - w).abs() < 1e-12);
        assert!((v.amp(0b111).norm() - w).abs() < 1e-12);
    }

    #[test]
    fn c4_subcode_state() {
        let group = StabilizerGroup::new(
            4,
            vec![
                PauliOperator::z_on(4, &[1, 3]).unwrap().neg(),
                PauliOperator::z_on(4, &[2, 4]).unwrap().neg(),
                PauliOperator::x_on(4, &[1, 3]).unwrap(),
                PauliOperator::x_on(4, &[2, 4]).unwrap(),
            ],
        )
        .unwrap();
        let space = stabilizer_state(&group).unwrap();
        assert_eq!(space.dimension(), 1);
        let v = &space.basis[0];
        for s in ["0011", "1100", "0110", "1001"] {
            let idx = s.parse::<BitString>().unwrap().index();
            assert!((v.amp(idx).norm() - 0.5).abs() < 1e-12, "amp at {s}");
        }
        assert!(v.amp(0b0000).norm() < 1e-12);
    }

    #[test]
    fn rejects_anticommuting_and_minus_i() {
        assert!(matches!(
            StabilizerGroup::new(1, vec![pauli("X"), pauli("Z")]),
            Err(Error::InvalidStabilizer(_))
        ));
        // ZZ and -ZZ generate -I.
        assert!(matches!(
            StabilizerGroup::new(2, vec![pauli("ZZ"), pauli("-ZZ")]),
            Err(Error::InvalidStabilizer(_))
        ));
    }

    #[test]
    fn dependent_generators_reduce_rank() {
        let group = StabilizerGroup::new(2, vec![pauli("ZI"), pauli("IZ"), pauli("ZZ")]).unwrap();
        assert_eq!(group.rank(), 2);
        assert_eq!(group.dimension(), 1);
    }

    #[test]
    fn two_dimensional_code() {
        // <ZZ> on two qubits has a 2-dimensional +1 space.
        let group = StabilizerGroup::new(2, vec![pauli("ZZ")]).unwrap();
        let space = stabilizer_state(&group).unwrap();
        assert_eq!(space.dimension(), 2);
    }

    #[test]
    fn c4_anticommutation_case() {
        // D = X^(13), T = {1,2}, T' = {2,3}, V from -Z^(13), theta = pi/2.
        let d = PauliOperator::x_on(4, &[1, 3]).unwrap();
        let t = Trajectory::from_members(4, &[1, 2]).unwrap();
        let t2 = Trajectory::from_members(4, &[2, 3]).unwrap();
        let v = vec![PauliOperator::z_on(4, &[1, 3]).unwrap().neg()];
        let theta = Angle::pi_fraction(1, 2).unwrap();
        assert!(projected_anticommutator_check(&d, &t, &t2, theta, &v).unwrap());
        // Without the projection the anticommutator does not vanish.
        assert!(!projected_anticommutator_check(&d, &t, &t2, theta, &[]).unwrap());
    }

    #[test]
    fn pauli_case_reduces_to_plain_anticommutation() {
        // At theta = pi the pair operator is Pauli (up to phase): the
        // criterion with V = full space matches plain anticommutation with
        // Z on the symmetric difference.
        let t = Trajectory::from_members(3, &[1]).unwrap();
        let t2 = Trajectory::from_members(3, &[2]).unwrap();
        let diff_z = pauli("ZZI");
        let anti = pauli("XII");
        let comm = pauli("IIX");
        assert!(anti.anticommutes_with(&diff_z));
        assert!(comm.commutes_with(&diff_z));
        assert!(projected_anticommutator_check(&anti, &t, &t2, Angle::PI, &[]).unwrap());
        assert!(!projected_anticommutator_check(&comm, &t, &t2, Angle::PI, &[]).unwrap());
    }

    #[test]
    fn conjugation_consistency_with_sigma_action() {
        // D R^(T,T') D^dag has the phase array of R^{sigma_D(T,T')}.
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let n = rng.gen_range(2..=6);
            let theta = Angle::new(rng.gen_range(0.0..std::f64::consts::PI)).unwrap();
            let t = Trajectory::from_mask(n, rng.gen_range(0..(1u64 << n)));
            let t2 = Trajectory::from_mask(n, rng.gen_range(0..(1u64 << n)));
            let x = rng.gen_range(0..(1u64 << n));
            let d = PauliOperator::from_parts(n, x, rng.gen_range(0..(1u64 << n)), 0);
            let op = DiagonalPhaseOp::pair_op(&t, &t2, theta, n).unwrap();
            let (u, u2) = d.sigma().act_pair((t, t2));
            let conj = DiagonalPhaseOp::pair_op(&u, &u2, theta, n).unwrap();
            // (D R D^dag)|b> = e^{i phi_{b xor x}} |b>.
            for b in 0..(1u64 << n) {
                let lhs = op.phase_at(b ^ x);
                let rhs = conj.phase_at(b);
                let diff = (lhs - rhs).rem_euclid(2.0 * std::f64::consts::PI);
                assert!(
                    diff < 1e-9 || (2.0 * std::f64::consts::PI - diff) < 1e-9,
                    "phases differ: {lhs} vs {rhs}"
                );
            }
        }
    }
}
