//! Pauli operators in the symplectic representation.
//!
//! An operator is stored as `i^p * X^x * Z^z` with `x`, `z` bit masks in the
//! same basis layout as [`crate::BitString`] and the phase exponent `p`
//! tracked exactly modulo 4. A `Y` on qubit `k` sets both masks and
//! contributes one factor of `i`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bits::check_width;
use crate::error::{Error, Result};
use crate::perm::{Permutation, SwapElement};
use crate::{StateVector, Trajectory};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: u8,
    x: u64,
    z: u64,
    /// Exponent of the global `i` factor, mod 4.
    phase_pow: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(PauliOperator {
            n: n as u8,
            x: 0,
            z: 0,
            phase_pow: 0,
        })
    }

    /// `X` on the listed 1-based qubits.
    pub fn x_on(n: usize, qubits: &[usize]) -> Result<Self> {
        let t = Trajectory::from_members(n, qubits)?;
        Ok(PauliOperator {
            n: n as u8,
            x: t.mask(),
            z: 0,
            phase_pow: 0,
        })
    }

    /// `Z` on the listed qubits.
    pub fn z_on(n: usize, qubits: &[usize]) -> Result<Self> {
        let t = Trajectory::from_members(n, qubits)?;
        Ok(PauliOperator {
            n: n as u8,
            x: 0,
            z: t.mask(),
            phase_pow: 0,
        })
    }

    /// `Y` on the listed qubits.
    pub fn y_on(n: usize, qubits: &[usize]) -> Result<Self> {
        let t = Trajectory::from_members(n, qubits)?;
        Ok(PauliOperator {
            n: n as u8,
            x: t.mask(),
            z: t.mask(),
            phase_pow: (qubits.len() % 4) as u8,
        })
    }

    /// Builds directly from the symplectic components.
    pub fn from_parts(n: usize, x: u64, z: u64, phase_pow: u8) -> Self {
        PauliOperator {
            n: n as u8,
            x,
            z,
            phase_pow: phase_pow % 4,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase_pow(&self) -> u8 {
        self.phase_pow
    }

    /// The global scalar `i^p` as a complex number.
    pub fn scalar(&self) -> Complex64 {
        match self.phase_pow {
            0 => Complex64::ONE,
            1 => Complex64::I,
            2 => -Complex64::ONE,
            _ => -Complex64::I,
        }
    }

    /// Negated operator.
    pub fn neg(&self) -> Self {
        PauliOperator {
            phase_pow: (self.phase_pow + 2) % 4,
            ..*self
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// The qubit-swap image: the set of qubits receiving `X` or `Y`.
    pub fn sigma(&self) -> SwapElement {
        SwapElement::from_mask(self.n(), self.x)
    }

    /// Group product `self * other`.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.n != other.n {
            return Err(Error::SizeMismatch("pauli widths differ".into()));
        }
        // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1.
        let swap_sign = (self.z & other.x).count_ones() as u8 % 2;
        Ok(PauliOperator {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase_pow: (self.phase_pow + other.phase_pow + 2 * swap_sign) % 4,
        })
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        let cross = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        cross.is_multiple_of(2)
    }

    pub fn anticommutes_with(&self, other: &PauliOperator) -> bool {
        !self.commutes_with(other)
    }

    /// Hermitian (equivalently, squares to `+I`): the phase exponent must
    /// match the `Y` count parity.
    pub fn is_hermitian(&self) -> bool {
        u32::from(self.phase_pow) % 2 == (self.x & self.z).count_ones() % 2
    }

    /// `P_pi D P_pi^dag`: supports permute, the scalar is unchanged.
    pub fn conjugated_by_permutation(&self, pi: &Permutation) -> Result<PauliOperator> {
        if pi.n() != self.n() {
            return Err(Error::SizeMismatch(
                "permutation width differs from pauli".into(),
            ));
        }
        Ok(PauliOperator {
            n: self.n,
            x: pi.scatter_bits(self.x),
            z: pi.scatter_bits(self.z),
            phase_pow: self.phase_pow,
        })
    }

    /// Applies the operator to a dense state:
    /// `D |b> = i^p (-1)^{z . b} |b ^ x>`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.n() != self.n() {
            return Err(Error::SizeMismatch(format!(
                "state on {} qubits, pauli on {}",
                psi.n(),
                self.n
            )));
        }
        let scalar = self.scalar();
        let mut out = StateVector::zero(self.n())?;
        for (b, amp) in psi.amplitudes().iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            let b = b as u64;
            let sign = if (self.z & b).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            out.amplitudes_mut()[(b ^ self.x) as usize] = scalar * sign * amp;
        }
        Ok(out)
    }

    /// `<psi| D |psi>`.
    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64> {
        let applied = self.apply(psi)?;
        psi.inner(&applied)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y_count = (self.x & self.z).count_ones() as u8;
        let prefix_pow = (self.phase_pow + 4 - y_count % 4) % 4;
        let prefix = match prefix_pow {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}")?;
        let n = self.n();
        for k in 1..=n {
            let bit = 1u64 << (n - k);
            let c = match ((self.x & bit) != 0, (self.z & bit) != 0) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

/// Parses `-ZIZI`, `+XXXX`, `iXY`, `-iYI`, or bare `XXZZ`; the leftmost
/// letter is qubit 1.
impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut phase_pow, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3u8, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else {
            (0, s)
        };
        let n = rest.len();
        check_width(n)?;
        let mut x = 0u64;
        let mut z = 0u64;
        for (i, ch) in rest.chars().enumerate() {
            let bit = 1u64 << (n - 1 - i);
            match ch {
                'I' | 'i' => {}
                'X' | 'x' => x |= bit,
                'Z' | 'z' => z |= bit,
                'Y' | 'y' => {
                    x |= bit;
                    z |= bit;
                    phase_pow = (phase_pow + 1) % 4;
                }
                _ => {
                    return Err(Error::invalid(format!(
                        "pauli letters must be I/X/Y/Z, found {ch:?}"
                    )))
                }
            }
        }
        Ok(PauliOperator {
            n: n as u8,
            x,
            z,
            phase_pow,
        })
    }
}
