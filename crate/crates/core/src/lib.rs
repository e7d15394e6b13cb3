//! Solver library for the quantum trajectory-sensing problem.
//!
//! A trajectory on an `n`-qubit sensor array is the subset of qubits an
//! incident particle intercepts; the particle rotates each intercepted qubit
//! by `R_Z(theta)`. A sensor state discriminates a set of trajectories in a
//! single projective measurement exactly when all perturbed outputs are
//! mutually orthogonal. This crate decides whether such a state exists for a
//! given `(n, trajectory set, theta)`, constructs one when it does, and
//! verifies candidates against a dense statevector oracle.
//!
//! The solver pipeline for a group-transitive trajectory set:
//!
//! 1. enumerate orbits of bit-strings and trajectory pairs under the
//!    symmetry group extended by the global bit-flip ([`orbits`]),
//! 2. assemble the reduced feasibility matrix `A(theta)` ([`lp`]),
//! 3. decide existence by phase-1 simplex and reconstruct an explicit state
//!    from a feasible solution ([`lp::solve_feasibility`],
//!    [`lp::state_from_solution`]),
//! 4. cross-check the result with the brute-force Gram-matrix oracle
//!    ([`sim::verify_ts_state`]).
//!
//! Closed-form state families and threshold formulas live in [`families`];
//! stabilizer-code sensors (C4, C6, the 8-qubit toric state) and
//! concatenation constructions live in [`stab`] and [`codes`].
//!
//! Basis convention, fixed across the crate: the basis index of the
//! bit-string `j_1 ... j_n` is `sum_k j_k * 2^(n-k)`, i.e. qubit 1 is the
//! most significant bit. Qubit indices are 1-based in every user-facing
//! format and 0-based internally.

pub mod angle;
pub mod bits;
pub mod cheby;
pub mod codes;
pub mod error;
pub mod exec;
pub mod families;
pub mod lp;
pub mod orbits;
pub mod pauli;
pub mod perm;
pub mod sim;
pub mod stab;
pub mod state;
pub mod trajectory;

pub use angle::Angle;
pub use bits::BitString;
pub use error::{Error, Result};
pub use state::StateVector;
pub use trajectory::{Trajectory, TrajectorySet};

/// Hard cap on qubit count for combinatorial paths (bit sets in one word).
pub const MAX_QUBITS: usize = 64;

/// Default cap for any path that allocates a dense `2^n` object.
pub const MAX_STATEVECTOR_QUBITS: usize = 24;
