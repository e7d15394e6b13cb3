//! Trajectories (qubit subsets hit by the particle) and trajectory sets.

use std::fmt;
use std::str::FromStr;

use crate::bits::{check_width, full_mask};
use crate::error::{Error, Result};

/// A subset of the qubits `{1, ..., n}`, stored in the same bit layout as
/// [`crate::BitString`]: qubit `k` occupies bit `n - k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Trajectory {
    n: u8,
    mask: u64,
}

impl Trajectory {
    pub fn empty(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Trajectory {
            n: n as u8,
            mask: 0,
        })
    }

    /// Builds a trajectory from 1-based qubit indices.
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        check_width(n)?;
        let mut mask = 0u64;
        for &k in members {
            if k == 0 || k > n {
                return Err(Error::invalid(format!(
                    "qubit index {k} out of range 1..={n}"
                )));
            }
            mask |= 1 << (n - k);
        }
        Ok(Trajectory { n: n as u8, mask })
    }

    /// The generator trajectory `[m] = {1, ..., m}`.
    pub fn prefix(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::invalid(format!("m = {m} exceeds n = {n}")));
        }
        let members: Vec<usize> = (1..=m).collect();
        Self::from_members(n, &members)
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n == 64 || mask >> n == 0);
        Trajectory { n: n as u8, mask }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Bit mask in basis layout (bit `n - k` set iff qubit `k` is in the
    /// trajectory). `popcount(index & mask)` counts intercepted qubits in
    /// state `|1>`.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && k <= self.n() && (self.mask >> (self.n() - k)) & 1 == 1
    }

    /// Sorted 1-based member list.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&k| self.contains(k)).collect()
    }

    /// Degree of the pair `(self, other)`: `|self \ other|`. Symmetric in its
    /// arguments when both trajectories have the same size.
    pub fn pair_degree(&self, other: &Trajectory) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "trajectories on {} and {} qubits",
                self.n, other.n
            )));
        }
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(format!(
                "trajectory sizes {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok((self.mask & !other.mask).count_ones() as usize)
    }

    pub fn union(&self, other: &Trajectory) -> Trajectory {
        Trajectory {
            n: self.n,
            mask: self.mask | other.mask,
        }
    }

    pub fn complement(&self) -> Trajectory {
        Trajectory {
            n: self.n,
            mask: self.mask ^ full_mask(self.n()),
        }
    }
}

impl PartialOrd for Trajectory {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trajectory {
    /// For equal-size trajectories this is lexicographic order on the
    /// sorted member lists, e.g. `{1,2} < {1,3} < {2,3}`: the set containing
    /// the first qubit index where the two differ comes first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let diff = self.mask ^ other.mask;
        if diff == 0 {
            return std::cmp::Ordering::Equal;
        }
        // Highest differing bit = lowest differing qubit index.
        let top = 1u64 << (63 - diff.leading_zeros());
        if self.mask & top != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.members().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trajectory({self})")
    }
}

/// Parses `{1,3,4,5}` with 1-based indices. The ambient qubit count must be
/// supplied separately via [`Trajectory::from_members`]; this form defaults
/// to `n` = largest listed index and is mainly useful in tests.
impl FromStr for Trajectory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let members = parse_member_list(s)?;
        let n = members.iter().copied().max().unwrap_or(1);
        Trajectory::from_members(n, &members)
    }
}

/// Parses the brace list `{1,3,4}` into 1-based indices.
pub fn parse_member_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|rest| rest.strip_suffix('}'))
        .ok_or_else(|| Error::invalid(format!("expected {{...}}, got {s:?}")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::invalid(format!("bad index {tok:?}: {e}")))
        })
        .collect()
}

/// An ordered set of distinct, equally-sized trajectories.
#[derive(Clone, PartialEq, Eq)]
pub struct TrajectorySet {
    n: usize,
    trajectories: Vec<Trajectory>,
}

impl TrajectorySet {
    pub fn new(n: usize, trajectories: Vec<Trajectory>) -> Result<Self> {
        check_width(n)?;
        if trajectories.is_empty() {
            return Err(Error::invalid("trajectory set must be non-empty"));
        }
        let m = trajectories[0].len();
        let mut seen = std::collections::HashSet::new();
        for t in &trajectories {
            if t.n() != n {
                return Err(Error::SizeMismatch(format!(
                    "trajectory {t} lives on {} qubits, set is on {n}",
                    t.n()
                )));
            }
            if t.len() != m {
                return Err(Error::SizeMismatch(format!(
                    "all trajectories must have equal size; found {} and {m}",
                    t.len()
                )));
            }
            if !seen.insert(t.mask()) {
                return Err(Error::invalid(format!("duplicate trajectory {t}")));
            }
        }
        Ok(TrajectorySet { n, trajectories })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common size `m` of every member.
    pub fn member_size(&self) -> usize {
        self.trajectories[0].len()
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, a: usize) -> &Trajectory {
        &self.trajectories[a]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Trajectory> {
        self.trajectories.iter()
    }

    pub fn contains(&self, t: &Trajectory) -> bool {
        self.trajectories.iter().any(|u| u.mask() == t.mask())
    }

    /// Parses one `{...}` trajectory per line; blank lines and `#` comments
    /// are skipped.
    pub fn parse_lines(n: usize, text: &str) -> Result<Self> {
        let mut trajectories = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let members = parse_member_list(line).map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            let t = Trajectory::from_members(n, &members).map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            trajectories.push(t);
        }
        TrajectorySet::new(n, trajectories)
    }
}

impl fmt::Debug for TrajectorySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.trajectories.iter()).finish()
    }
}
