//! Orbit enumeration for bit-strings and trajectory pairs under the
//! symmetry group extended by the global bit-flip.
//!
//! Orbits of bit-strings index the columns of the reduced feasibility
//! matrix, orbits of trajectory pairs its rows. Symmetric and cyclic groups
//! get closed-form fast paths (weight classes and degree classes; necklaces
//! and window shifts); everything else falls back to breadth-first search
//! driven by the generator set plus the global flip, so the full group is
//! never materialized.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::perm::{GroupKind, Permutation, PermutationGroup};
use crate::{BitString, Trajectory, TrajectorySet, MAX_STATEVECTOR_QUBITS};

/// Cap on materialized pair-orbit members.
pub const PAIR_MEMBER_CAP: usize = 1 << 21;

/// One orbit `omega_nu` of bit-strings. Members are basis indices in
/// ascending order; they are materialized whenever `n` permits a dense
/// sweep, and absent for the large-`n` symmetric fast path.
#[derive(Clone, Debug)]
pub struct StringOrbit {
    pub representative: BitString,
    pub size: u64,
    pub members: Option<Vec<u64>>,
}

impl StringOrbit {
    pub fn members(&self) -> Result<&[u64]> {
        self.members.as_deref().ok_or(Error::ResourceCap {
            what: "materialized string orbit",
            n: self.representative.n(),
            cap: MAX_STATEVECTOR_QUBITS,
        })
    }
}

/// One orbit `Omega_mu` of ordered trajectory pairs. `samples` holds a few
/// known members (the representative first) for representative-independence
/// checks.
#[derive(Clone, Debug)]
pub struct PairOrbit {
    pub representative: (Trajectory, Trajectory),
    pub size: u64,
    pub members: Option<Vec<(Trajectory, Trajectory)>>,
    pub samples: Vec<(Trajectory, Trajectory)>,
}

/// Joint table of string orbits (column index `nu`) and pair orbits (row
/// index `mu`, with `mu = 0` the diagonal-pair orbit).
#[derive(Debug)]
pub struct OrbitTable {
    pub n: usize,
    pub kind: GroupKind,
    pub trajectories: TrajectorySet,
    pub string_orbits: Vec<StringOrbit>,
    pub pair_orbits: Vec<PairOrbit>,
}

impl OrbitTable {
    pub fn build(group: &PermutationGroup, ts: &TrajectorySet) -> Result<Arc<Self>> {
        let string_orbits = orbits_bitstrings(group, group.n())?;
        let pair_orbits = orbits_pairs(group, ts)?;
        Ok(Arc::new(OrbitTable {
            n: group.n(),
            kind: group.kind(),
            trajectories: ts.clone(),
            string_orbits,
            pair_orbits,
        }))
    }

    pub fn num_string_orbits(&self) -> usize {
        self.string_orbits.len()
    }

    pub fn num_pair_orbits(&self) -> usize {
        self.pair_orbits.len()
    }
}

// ---------------------------------------------------------------------------
// Bit-string orbits

/// Enumerates the orbits of all `2^n` bit-strings, fast-pathing the
/// symmetric case (weight classes joined with their complements). Returns
/// orbits sorted by representative, which for the symmetric path means
/// ascending weight class `nu`.
pub fn orbits_bitstrings(group: &PermutationGroup, n: usize) -> Result<Vec<StringOrbit>> {
    if group.n() != n {
        return Err(Error::SizeMismatch(format!(
            "group on {} symbols, strings of width {n}",
            group.n()
        )));
    }
    match group.kind() {
        GroupKind::Symmetric => symmetric_string_orbits(n),
        GroupKind::Cyclic | GroupKind::Generic => orbits_bitstrings_generic(group, n),
    }
}

/// Generator-driven BFS over all `2^n` strings; the reference route that the
/// fast paths are checked against.
pub fn orbits_bitstrings_generic(group: &PermutationGroup, n: usize) -> Result<Vec<StringOrbit>> {
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::ResourceCap {
            what: "generic string-orbit enumeration",
            n,
            cap: MAX_STATEVECTOR_QUBITS,
        });
    }
    let size = 1usize << n;
    let flip = full_mask(n);
    let mut visited = vec![false; size];
    let mut orbits = Vec::new();
    let mut queue: Vec<u64> = Vec::new();
    for seed in 0..size as u64 {
        if visited[seed as usize] {
            continue;
        }
        visited[seed as usize] = true;
        queue.clear();
        queue.push(seed);
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            let flipped = b ^ flip;
            if !visited[flipped as usize] {
                visited[flipped as usize] = true;
                queue.push(flipped);
            }
            for g in group.generators() {
                let image = g.scatter_bits(b);
                if !visited[image as usize] {
                    visited[image as usize] = true;
                    queue.push(image);
                }
            }
        }
        let mut members = queue.clone();
        members.sort_unstable();
        orbits.push(StringOrbit {
            representative: BitString::from_index(n, members[0])?,
            size: members.len() as u64,
            members: Some(members),
        });
    }
    Ok(orbits)
}

/// Symmetric fast path: `omega_nu` is the union of the weight-`nu` and
/// weight-`(n-nu)` classes, `nu = 0 ..= floor(n/2)`.
fn symmetric_string_orbits(n: usize) -> Result<Vec<StringOrbit>> {
    let count = symmetric_string_orbit_count(n) as usize;
    let mut orbits: Vec<StringOrbit> = (0..count)
        .map(|nu| {
            let size = if 2 * nu == n {
                binomial(n as u64, nu as u64)
            } else {
                2 * binomial(n as u64, nu as u64)
            };
            // Representative 0^(n-nu) 1^nu has index 2^nu - 1.
            let representative = BitString::from_index(n, (1u64 << nu) - 1).expect("in range");
            Ok(StringOrbit {
                representative,
                size,
                members: None,
            })
        })
        .collect::<Result<_>>()?;
    if n <= MAX_STATEVECTOR_QUBITS {
        let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); count];
        for b in 0..(1u64 << n) {
            let w = b.count_ones() as usize;
            buckets[w.min(n - w)].push(b);
        }
        for (orbit, bucket) in orbits.iter_mut().zip(buckets) {
            debug_assert_eq!(orbit.size as usize, bucket.len());
            orbit.members = Some(bucket);
        }
    }
    Ok(orbits)
}

/// `floor(n/2) + 1`.
pub fn symmetric_string_orbit_count(n: usize) -> u64 {
    n as u64 / 2 + 1
}

/// Number of binary necklaces of length `n` up to rotation and global flip:
/// `(1/n) * sum_{d | n} 2^(n/d - 1) * phi(2d)`.
pub fn cyclic_string_orbit_count(n: usize) -> u64 {
    let n = n as u128;
    let mut total: u128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += (1u128 << (n / d - 1)) * euler_phi(2 * d);
        }
    }
    (total / n) as u64
}

fn euler_phi(mut x: u128) -> u128 {
    let mut result = x;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

/// Exact binomial coefficient, valid through `n = 64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

// ---------------------------------------------------------------------------
// Trajectory-pair orbits

/// Enumerates the orbits of `T x T` under the group action plus the pair
/// swap. The trajectory set must be closed under every generator (checked;
/// violation is an error naming the offending generator and trajectory) and
/// transitive, so that the diagonal pairs form a single orbit, which is
/// placed first by convention.
pub fn orbits_pairs(group: &PermutationGroup, ts: &TrajectorySet) -> Result<Vec<PairOrbit>> {
    check_invariance(group, ts)?;
    match group.kind() {
        GroupKind::Symmetric => symmetric_pair_orbits(group.n(), ts),
        GroupKind::Cyclic => cyclic_pair_orbits(group.n(), ts),
        GroupKind::Generic => orbits_pairs_generic(group, ts),
    }
}

fn check_invariance(group: &PermutationGroup, ts: &TrajectorySet) -> Result<()> {
    let members: HashSet<u64> = ts.iter().map(|t| t.mask()).collect();
    for g in group.generators() {
        for t in ts.iter() {
            let image = g.act_trajectory(t);
            if !members.contains(&image.mask()) {
                return Err(Error::NotInvariant {
                    generator: g.to_string(),
                    trajectory: t.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// BFS over pairs, applying generators elementwise plus the global swap.
pub fn orbits_pairs_generic(
    group: &PermutationGroup,
    ts: &TrajectorySet,
) -> Result<Vec<PairOrbit>> {
    check_invariance(group, ts)?;
    let count = ts.len() * ts.len();
    if count > PAIR_MEMBER_CAP {
        return Err(Error::ResourceCap {
            what: "generic pair-orbit enumeration",
            n: count,
            cap: PAIR_MEMBER_CAP,
        });
    }
    let mut sorted: Vec<Trajectory> = ts.iter().copied().collect();
    sorted.sort();
    let mut visited: HashSet<(u64, u64)> = HashSet::with_capacity(count);
    let mut orbits = Vec::new();
    for a in &sorted {
        for b in &sorted {
            let seed = (*a, *b);
            if !visited.insert((a.mask(), b.mask())) {
                continue;
            }
            let mut queue = vec![seed];
            let mut head = 0;
            while head < queue.len() {
                let pair = queue[head];
                head += 1;
                let swapped = (pair.1, pair.0);
                if visited.insert((swapped.0.mask(), swapped.1.mask())) {
                    queue.push(swapped);
                }
                for g in group.generators() {
                    let image = g.act_pair(pair);
                    if visited.insert((image.0.mask(), image.1.mask())) {
                        queue.push(image);
                    }
                }
            }
            let mut members = queue;
            members.sort();
            let samples = members.iter().take(4).copied().collect();
            orbits.push(PairOrbit {
                representative: members[0],
                size: members.len() as u64,
                members: Some(members),
                samples,
            });
        }
    }
    finish_pair_orbits(orbits, ts)
}

/// Symmetric fast path: orbits are the degree classes `D_mu`,
/// `mu = 0 ..= min(m, n-m)`.
fn symmetric_pair_orbits(n: usize, ts: &TrajectorySet) -> Result<Vec<PairOrbit>> {
    let m = ts.member_size();
    let expected = binomial(n as u64, m as u64);
    if ts.len() as u64 != expected {
        return Err(Error::invalid(format!(
            "symmetric fast path needs the full size-{m} trajectory set ({expected} members), got {}",
            ts.len()
        )));
    }
    let max_degree = m.min(n - m);
    let materialize = ts.len() * ts.len() <= PAIR_MEMBER_CAP;
    let mut buckets: Vec<Vec<(Trajectory, Trajectory)>> = vec![Vec::new(); max_degree + 1];
    if materialize {
        for a in ts.iter() {
            for b in ts.iter() {
                buckets[a.pair_degree(b)?].push((*a, *b));
            }
        }
        for bucket in &mut buckets {
            bucket.sort();
        }
    }
    let cycle = Permutation::full_cycle(n);
    (0..=max_degree)
        .map(|mu| {
            let first: Vec<usize> = (1..=m).collect();
            let second: Vec<usize> = (1..=m - mu).chain(m + 1..=m + mu).collect();
            let rep = (
                Trajectory::from_members(n, &first)?,
                Trajectory::from_members(n, &second)?,
            );
            let size = binomial(n as u64, m as u64)
                * binomial(m as u64, mu as u64)
                * binomial((n - m) as u64, mu as u64);
            let mut samples = vec![rep, (rep.1, rep.0), cycle.act_pair(rep)];
            samples.dedup();
            Ok(PairOrbit {
                representative: rep,
                size,
                members: if materialize {
                    Some(std::mem::take(&mut buckets[mu]))
                } else {
                    None
                },
                samples,
            })
        })
        .collect()
}

/// Cyclic fast path: `Omega_mu` is the orbit of `([m], z^mu([m]))`,
/// `mu = 0 ..= floor(n/2)` for `0 < m < n`.
fn cyclic_pair_orbits(n: usize, ts: &TrajectorySet) -> Result<Vec<PairOrbit>> {
    let m = ts.member_size();
    if m == 0 || m == n {
        let t = *ts.get(0);
        return Ok(vec![PairOrbit {
            representative: (t, t),
            size: 1,
            members: Some(vec![(t, t)]),
            samples: vec![(t, t)],
        }]);
    }
    if ts.len() != n {
        return Err(Error::invalid(format!(
            "cyclic fast path needs all {n} windows, got {} trajectories",
            ts.len()
        )));
    }
    let z = Permutation::full_cycle(n);
    let windows: Vec<Trajectory> = {
        let mut w = Vec::with_capacity(n);
        let mut current = Trajectory::prefix(n, m)?;
        for _ in 0..n {
            w.push(current);
            current = z.act_trajectory(&current);
        }
        w
    };
    (0..=n / 2)
        .map(|mu| {
            let size = if mu == 0 || 2 * mu == n {
                n as u64
            } else {
                2 * n as u64
            };
            let mut members: Vec<(Trajectory, Trajectory)> = (0..n)
                .flat_map(|j| {
                    let fwd = (windows[j], windows[(j + mu) % n]);
                    let bwd = (windows[(j + mu) % n], windows[j]);
                    if fwd == bwd {
                        vec![fwd]
                    } else {
                        vec![fwd, bwd]
                    }
                })
                .collect();
            members.sort();
            members.dedup();
            debug_assert_eq!(members.len() as u64, size);
            let samples = members.iter().take(4).copied().collect();
            Ok(PairOrbit {
                representative: members[0],
                size,
                members: Some(members),
                samples,
            })
        })
        .collect()
}

/// Moves the diagonal orbit to index 0 (verifying that diagonal pairs form a
/// single orbit, i.e. that the set is transitive) and sorts the rest by
/// representative.
fn finish_pair_orbits(mut orbits: Vec<PairOrbit>, ts: &TrajectorySet) -> Result<Vec<PairOrbit>> {
    orbits.sort_by_key(|a| a.representative);
    let diag_count = orbits
        .iter()
        .filter(|o| o.representative.0 == o.representative.1)
        .count();
    if diag_count != 1 {
        return Err(Error::invalid(format!(
            "diagonal pairs split into {diag_count} orbits; trajectory set is not transitive"
        )));
    }
    let diag_pos = orbits
        .iter()
        .position(|o| o.size == ts.len() as u64 && o.representative.0 == o.representative.1)
        .ok_or_else(|| {
            Error::invalid("diagonal orbit does not cover every (T, T); set is not transitive")
        })?;
    let diag = orbits.remove(diag_pos);
    orbits.insert(0, diag);
    Ok(orbits)
}

// ---------------------------------------------------------------------------
// Transitive trajectory sets and Burnside bounds

/// Cap on generated trajectory-set size.
pub const TRAJECTORY_SET_CAP: usize = 1 << 20;

/// The orbit of the generator trajectory `[m] = {1..m}` under the group:
/// all `C(n,m)` subsets for the symmetric group, the `n` cyclic windows for
/// the cyclic group, a BFS orbit otherwise.
pub fn generate_transitive_set(group: &PermutationGroup, m: usize) -> Result<TrajectorySet> {
    let n = group.n();
    if m > n {
        return Err(Error::invalid(format!("m = {m} exceeds n = {n}")));
    }
    let trajectories = match group.kind() {
        GroupKind::Symmetric => {
            let count = binomial(n as u64, m as u64);
            if count as usize > TRAJECTORY_SET_CAP {
                return Err(Error::ResourceCap {
                    what: "symmetric trajectory set",
                    n: count as usize,
                    cap: TRAJECTORY_SET_CAP,
                });
            }
            all_subsets_of_size(n, m)?
        }
        GroupKind::Cyclic => {
            let z = Permutation::full_cycle(n);
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let mut current = Trajectory::prefix(n, m)?;
            for _ in 0..n.max(1) {
                if seen.insert(current.mask()) {
                    out.push(current);
                }
                current = z.act_trajectory(&current);
            }
            out.sort();
            out
        }
        GroupKind::Generic => {
            let seed = Trajectory::prefix(n, m)?;
            let mut seen = HashSet::new();
            seen.insert(seed.mask());
            let mut queue = vec![seed];
            let mut head = 0;
            while head < queue.len() {
                let t = queue[head];
                head += 1;
                for g in group.generators() {
                    let image = g.act_trajectory(&t);
                    if seen.insert(image.mask()) {
                        if queue.len() >= TRAJECTORY_SET_CAP {
                            return Err(Error::ResourceCap {
                                what: "trajectory-set orbit",
                                n: queue.len() + 1,
                                cap: TRAJECTORY_SET_CAP,
                            });
                        }
                        queue.push(image);
                    }
                }
            }
            queue.sort();
            queue
        }
    };
    TrajectorySet::new(n, trajectories)
}

/// Lexicographically ordered size-`m` subsets of `{1..n}`.
fn all_subsets_of_size(n: usize, m: usize) -> Result<Vec<Trajectory>> {
    if m == 0 {
        return Ok(vec![Trajectory::empty(n)?]);
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=m).collect();
    loop {
        out.push(Trajectory::from_members(n, &idx)?);
        // Advance to the next combination in lexicographic order.
        let mut i = m;
        while i > 0 && idx[i - 1] == n - (m - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Burnside-style sanity bounds on the orbit counts: `M <= |T|`,
/// `N <= 2^(n-1)`, `M >= (|T|^2 + |T|) / (2|G|)`, and
/// `N >= (2^(n-1) + |G| - 1) / |G|`.
#[derive(Clone, Copy, Debug)]
pub struct BurnsideBounds {
    pub lower_m: f64,
    pub upper_m: f64,
    pub lower_n: f64,
    pub upper_n: f64,
}

pub fn burnside_bounds(group: &PermutationGroup, ts: &TrajectorySet) -> Result<BurnsideBounds> {
    let order = group.order_f64()?;
    let t = ts.len() as f64;
    let half_space = (2f64).powi(group.n() as i32 - 1);
    Ok(BurnsideBounds {
        lower_m: (t * t + t) / (2.0 * order),
        upper_m: t,
        lower_n: (half_space + order - 1.0) / order,
        upper_n: half_space,
    })
}
