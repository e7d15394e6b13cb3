//! Dense complex statevectors over the `2^n` computational basis.

use num_complex::Complex64;
use std::fmt;

use crate::bits::check_width;
use crate::error::{Error, Result};
use crate::{BitString, MAX_STATEVECTOR_QUBITS};

/// A length-`2^n` amplitude vector indexed by bit-string in lexicographic
/// order (qubit 1 = most significant bit).
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

pub(crate) fn check_statevector_width(n: usize) -> Result<()> {
    check_width(n)?;
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::ResourceCap {
            what: "dense statevector",
            n,
            cap: MAX_STATEVECTOR_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// The all-zeros vector (not a valid quantum state until filled).
    pub fn zero(n: usize) -> Result<Self> {
        check_statevector_width(n)?;
        Ok(StateVector {
            n,
            amps: vec![Complex64::ZERO; 1 << n],
        })
    }

    /// The basis state `|j_1 ... j_n>`.
    pub fn basis_state(b: BitString) -> Result<Self> {
        let mut s = Self::zero(b.n())?;
        s.amps[b.index() as usize] = Complex64::ONE;
        Ok(s)
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_statevector_width(n)?;
        if amps.len() != 1 << n {
            return Err(Error::SizeMismatch(format!(
                "expected 2^{n} amplitudes, got {}",
                amps.len()
            )));
        }
        Ok(StateVector { n, amps })
    }

    /// Builds a state from sparse `(bit-string, amplitude)` components and
    /// normalizes it.
    pub fn from_components(n: usize, parts: &[(BitString, Complex64)]) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for (b, a) in parts {
            if b.n() != n {
                return Err(Error::SizeMismatch(format!(
                    "component {b} has width {}, state has {n}",
                    b.n()
                )));
            }
            s.amps[b.index() as usize] += a;
        }
        s.normalize()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amp(&self, index: u64) -> Complex64 {
        self.amps[index as usize]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "statevectors on {} and {} qubits",
                self.n, other.n
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::invalid("cannot normalize the zero vector"));
        }
        for a in &mut self.amps {
            *a /= norm;
        }
        Ok(())
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if self.n != other.n {
            return Err(Error::SizeMismatch("statevector widths differ".into()));
        }
        Ok(StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &StateVector) -> Result<StateVector> {
        self.add(&other.scaled(-Complex64::ONE))
    }

    /// Serializes as one `bit-string re im` triple per line, zero amplitudes
    /// omitted, ascending basis index.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let b = BitString::from_index(self.n, i as u64).expect("index in range");
            out.push_str(&format!("{b} {} {}\n", a.re, a.im));
        }
        out
    }

    /// Parses the [`StateVector::to_text`] format. Lines starting with `#`
    /// and blank lines are skipped; widths must agree across lines.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut parts: Vec<(BitString, Complex64)> = Vec::new();
        let mut n: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected `bits re im`, got {line:?}"),
                });
            }
            let b: BitString = fields[0].parse().map_err(|e: Error| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            match n {
                None => n = Some(b.n()),
                Some(w) if w != b.n() => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("width {} conflicts with earlier width {w}", b.n()),
                    })
                }
                _ => {}
            }
            let re: f64 = fields[1].parse().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad real part: {e}"),
            })?;
            let im: f64 = fields[2].parse().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad imaginary part: {e}"),
            })?;
            parts.push((b, Complex64::new(re, im)));
        }
        let n = n.ok_or_else(|| Error::invalid("state file has no amplitude lines"))?;
        let mut s = Self::zero(n)?;
        for (b, a) in parts {
            s.amps[b.index() as usize] += a;
        }
        Ok(s)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "StateVector(n={}, {} nonzero)",
            self.n,
            self.amps.iter().filter(|a| a.norm_sqr() > 0.0).count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize, i: u64, j: u64) -> StateVector {
        let mut s = StateVector::zero(n).unwrap();
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        s.amplitudes_mut()[i as usize] = w;
        s.amplitudes_mut()[j as usize] = w;
        s
    }

    #[test]
    fn norm_and_inner() {
        let s = bell(2, 1, 2); // (|01> + |10>)/sqrt(2)
        assert!(s.is_normalized(1e-12));
        let t = StateVector::basis_state("01".parse().unwrap()).unwrap();
        let ip = s.inner(&t).unwrap();
        assert!((ip.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn text_roundtrip_omits_zeros() {
        let s = bell(2, 1, 2);
        let text = s.to_text();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("01 "));
        let back = StateVector::from_text(&text).unwrap();
        assert!((back.sub(&s).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = StateVector::from_text("01 0.5 0.0\nbogus\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn statevector_width_cap() {
        assert!(StateVector::zero(25).is_err());
    }
}
