//! Permutations of the qubit labels, qubit-swap elements, and the combined
//! symmetry elements that act on bit-strings and trajectory pairs.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::{BitString, Trajectory};

/// A bijection on `{1, ..., n}`, stored as a 0-based image array:
/// `image[i] = j` means qubit `i+1` maps to qubit `j+1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds from a 1-based image array (`image[k-1]` is where qubit `k`
    /// goes).
    pub fn from_image_one_based(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in image {
            if j == 0 || j > n || seen[j - 1] {
                return Err(Error::InvalidPermutation {
                    n,
                    image: image.to_vec(),
                });
            }
            seen[j - 1] = true;
        }
        Ok(Permutation {
            image: image.iter().map(|&j| j - 1).collect(),
        })
    }

    /// The transposition `(a b)` with 1-based `a`, `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::invalid(format!(
                "bad transposition ({a} {b}) on [{n}]"
            )));
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a - 1, b - 1);
        Ok(Permutation { image })
    }

    /// The full cycle `(1 2 ... n)`.
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            image: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Builds from disjoint cycles in 1-based notation, e.g. `&[&[1,2],&[4,8]]`
    /// for `(1 2)(4 8)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from == 0 || from > n || to == 0 || to > n {
                    return Err(Error::invalid(format!("cycle index out of range 1..={n}")));
                }
                image[from - 1] = to - 1;
            }
        }
        let one_based: Vec<usize> = image.iter().map(|&j| j + 1).collect();
        Permutation::from_image_one_based(&one_based)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `pi(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.image[k - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0usize; self.n()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// Function composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            image: (0..self.n()).map(|i| self.image[other.image[i]]).collect(),
        }
    }

    /// Scatters the bits of a basis-layout word: output bit of qubit
    /// `pi(k)` equals input bit of qubit `k`. Works for both bit-strings and
    /// trajectory masks since they share the layout.
    pub fn scatter_bits(&self, bits: u64) -> u64 {
        let n = self.n();
        let mut out = 0u64;
        for i in 0..n {
            out |= ((bits >> (n - 1 - i)) & 1) << (n - 1 - self.image[i]);
        }
        out
    }

    /// Action on bit-strings: `pi(j_1...j_n) = j_{pi^-1(1)} ... j_{pi^-1(n)}`.
    pub fn act_bitstring(&self, b: BitString) -> BitString {
        debug_assert_eq!(self.n(), b.n());
        BitString::from_index(b.n(), self.scatter_bits(b.index())).expect("width preserved")
    }

    /// Action on trajectories: `pi(T) = { pi(k) : k in T }`.
    pub fn act_trajectory(&self, t: &Trajectory) -> Trajectory {
        debug_assert_eq!(self.n(), t.n());
        Trajectory::from_mask(t.n(), self.scatter_bits(t.mask()))
    }

    pub fn act_pair(&self, pair: (Trajectory, Trajectory)) -> (Trajectory, Trajectory) {
        (self.act_trajectory(&pair.0), self.act_trajectory(&pair.1))
    }

    /// One-based image array, the `--generators` file format.
    pub fn image_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&j| j + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let img = self.image_one_based();
        let strs: Vec<String> = img.iter().map(|j| j.to_string()).collect();
        write!(f, "[{}]", strs.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Parses a whitespace- or comma-separated 1-based image array.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image: Vec<usize> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::invalid(format!("bad image entry {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if image.is_empty() {
            return Err(Error::invalid("empty permutation image"));
        }
        Permutation::from_image_one_based(&image)
    }
}

/// A qubit-swap element: the subset of qubits exchanged between the two
/// trajectories of a pair (the image of a Pauli operator under the map that
/// keeps only its X/Y support). Composition is symmetric difference.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SwapElement {
    n: u8,
    mask: u64,
}

impl SwapElement {
    pub fn empty(n: usize) -> Self {
        SwapElement {
            n: n as u8,
            mask: 0,
        }
    }

    /// The global swap `[n]`.
    pub fn global(n: usize) -> Self {
        SwapElement {
            n: n as u8,
            mask: full_mask(n),
        }
    }

    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let t = Trajectory::from_members(n, members)?;
        Ok(SwapElement {
            n: n as u8,
            mask: t.mask(),
        })
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        SwapElement { n: n as u8, mask }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Symmetric difference; every element is its own inverse.
    pub fn compose(&self, other: &SwapElement) -> SwapElement {
        debug_assert_eq!(self.n, other.n);
        SwapElement {
            n: self.n,
            mask: self.mask ^ other.mask,
        }
    }

    /// Flips the bits of the string at the swapped positions.
    pub fn act_bitstring(&self, b: BitString) -> BitString {
        debug_assert_eq!(self.n(), b.n());
        BitString::from_index(b.n(), b.index() ^ self.mask).expect("width preserved")
    }

    /// Exchanges the swapped qubits between the two trajectories:
    /// `T -> (T \ s) U (T' & s)` and symmetrically. The global swap
    /// exchanges the whole pair.
    pub fn act_pair(&self, pair: (Trajectory, Trajectory)) -> (Trajectory, Trajectory) {
        let (t, u) = pair;
        debug_assert_eq!(self.n(), t.n());
        let new_t = (t.mask() & !self.mask) | (u.mask() & self.mask);
        let new_u = (u.mask() & !self.mask) | (t.mask() & self.mask);
        (
            Trajectory::from_mask(t.n(), new_t),
            Trajectory::from_mask(t.n(), new_u),
        )
    }

    /// `pi(s)` as a swap element.
    pub fn permuted(&self, pi: &Permutation) -> SwapElement {
        SwapElement {
            n: self.n,
            mask: pi.scatter_bits(self.mask),
        }
    }
}

/// An element `(s, pi)` of the symmetry group combining a qubit swap with a
/// permutation. The solver only ever uses the restricted swaps `{{}, [n]}`
/// (the global bit-flip), for which the semidirect product degenerates to a
/// direct one, but composition implements the general law
/// `(s, pi) . (s', pi') = (s ^ pi(s'), pi pi')`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TildeGroupElement {
    pub swap: SwapElement,
    pub perm: Permutation,
}

impl TildeGroupElement {
    pub fn new(flip: bool, perm: Permutation) -> Self {
        let n = perm.n();
        let swap = if flip {
            SwapElement::global(n)
        } else {
            SwapElement::empty(n)
        };
        TildeGroupElement { swap, perm }
    }

    pub fn identity(n: usize) -> Self {
        TildeGroupElement::new(false, Permutation::identity(n))
    }

    #[cfg(test)]
    pub(crate) fn with_swap(swap: SwapElement, perm: Permutation) -> Self {
        TildeGroupElement { swap, perm }
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn compose(&self, other: &TildeGroupElement) -> TildeGroupElement {
        TildeGroupElement {
            swap: self.swap.compose(&other.swap.permuted(&self.perm)),
            perm: self.perm.compose(&other.perm),
        }
    }

    /// `(s, pi)(j_1...j_n) = s[pi(j_1...j_n)]`.
    pub fn act_bitstring(&self, b: BitString) -> BitString {
        self.swap.act_bitstring(self.perm.act_bitstring(b))
    }

    /// `(s, pi)[(T, T')] = s[pi(T, T')]`.
    pub fn act_pair(&self, pair: (Trajectory, Trajectory)) -> (Trajectory, Trajectory) {
        self.swap.act_pair(self.perm.act_pair(pair))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    /// Full symmetric group, generated by `(1 2)` and `(1 2 ... n)`.
    Symmetric,
    /// Cyclic rotations, generated by `(1 2 ... n)`.
    Cyclic,
    /// Arbitrary generator list.
    Generic,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Symmetric => write!(f, "sym"),
            GroupKind::Cyclic => write!(f, "cyc"),
            GroupKind::Generic => write!(f, "generic"),
        }
    }
}

/// Cap on materialized element lists for generic groups.
pub const GROUP_ORDER_CAP: usize = 1 << 20;

/// A permutation group given by generators. The full element list is
/// materialized lazily and only for generic groups (symmetric and cyclic
/// orders come from closed forms).
pub struct PermutationGroup {
    n: usize,
    kind: GroupKind,
    generators: Vec<Permutation>,
    elements: OnceLock<Result<Vec<Permutation>>>,
}

impl PermutationGroup {
    pub fn symmetric(n: usize) -> Result<Self> {
        crate::bits::check_width(n)?;
        let generators = if n >= 2 {
            let mut g = vec![Permutation::transposition(n, 1, 2)?];
            if n > 2 {
                g.push(Permutation::full_cycle(n));
            }
            g
        } else {
            vec![]
        };
        Ok(PermutationGroup {
            n,
            kind: GroupKind::Symmetric,
            generators,
            elements: OnceLock::new(),
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        crate::bits::check_width(n)?;
        let generators = if n >= 2 {
            vec![Permutation::full_cycle(n)]
        } else {
            vec![]
        };
        Ok(PermutationGroup {
            n,
            kind: GroupKind::Cyclic,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// A generic group from explicit generators. Closure of the generated
    /// set is spot-checked on random products once elements materialize;
    /// `seed` keeps that check reproducible.
    pub fn from_generators(n: usize, generators: Vec<Permutation>, seed: u64) -> Result<Self> {
        crate::bits::check_width(n)?;
        for g in &generators {
            if g.n() != n {
                return Err(Error::SizeMismatch(format!(
                    "generator {g} acts on {} symbols, group is on {n}",
                    g.n()
                )));
            }
        }
        let group = PermutationGroup {
            n,
            kind: GroupKind::Generic,
            generators,
            elements: OnceLock::new(),
        };
        // Materialize eagerly: generic groups are only useful here when the
        // element list is small, and the spot check wants it anyway.
        let elems = group.elements()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..32.min(elems.len() * 2) {
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            let prod = a.compose(b);
            if !elems.contains(&prod) {
                return Err(Error::invalid(format!(
                    "group closure violated: {a} . {b} = {prod} not in enumerated set"
                )));
            }
            if !elems.contains(&a.inverse()) {
                return Err(Error::invalid(format!("inverse of {a} missing from group")));
            }
        }
        Ok(group)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Full element list via BFS closure, capped at [`GROUP_ORDER_CAP`].
    pub fn elements(&self) -> Result<&[Permutation]> {
        let res = self
            .elements
            .get_or_init(|| enumerate_elements(self.n, &self.generators));
        match res {
            Ok(v) => Ok(v),
            Err(e) => Err(Error::invalid(e.to_string())),
        }
    }

    /// `|G|` as a float (exact for every group small enough to matter).
    pub fn order_f64(&self) -> Result<f64> {
        match self.kind {
            GroupKind::Symmetric => Ok((1..=self.n).map(|k| k as f64).product()),
            GroupKind::Cyclic => Ok(self.n as f64),
            GroupKind::Generic => Ok(self.elements()?.len() as f64),
        }
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermutationGroup(n={}, kind={}, {} generators)",
            self.n,
            self.kind,
            self.generators.len()
        )
    }
}

fn enumerate_elements(n: usize, generators: &[Permutation]) -> Result<Vec<Permutation>> {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut order = Vec::new();
    let id = Permutation::identity(n);
    seen.insert(id.image_one_based());
    order.push(id);
    let mut frontier = 0;
    while frontier < order.len() {
        let current = order[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = g.compose(&current);
            if seen.insert(next.image_one_based()) {
                if order.len() >= GROUP_ORDER_CAP {
                    return Err(Error::ResourceCap {
                        what: "group element enumeration",
                        n: order.len() + 1,
                        cap: GROUP_ORDER_CAP,
                    });
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}
