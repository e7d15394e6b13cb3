//! Interaction strength `theta` in `[0, pi]`, with its cosine cached.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An angle in `[0, pi]` together with `t = cos(theta)`.
#[derive(Clone, Copy, PartialEq)]
pub struct Angle {
    theta: f64,
    t: f64,
}

impl Angle {
    pub const ZERO: Angle = Angle { theta: 0.0, t: 1.0 };
    pub const PI: Angle = Angle { theta: PI, t: -1.0 };

    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        Ok(Angle {
            theta,
            t: theta.cos(),
        })
    }

    /// `a * pi / b`, evaluated as one division to keep pi-rational inputs
    /// exact to the last ulp.
    pub fn pi_fraction(a: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::invalid("zero denominator in pi fraction"));
        }
        Self::new(a as f64 * PI / b as f64)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Cached `cos(theta)`.
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.theta == 0.0
    }

    /// `theta / k`, used by the repetition-code concatenation.
    pub fn scaled_down(&self, k: usize) -> Angle {
        let theta = self.theta / k as f64;
        Angle {
            theta,
            t: theta.cos(),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.theta)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({})", self.theta)
    }
}

/// Accepts plain radians (`2.356194`) or exact pi fractions (`3pi/4`, `pi/2`,
/// `pi`, `0`).
impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(idx) = s.find("pi") {
            let (num, rest) = s.split_at(idx);
            let rest = &rest[2..];
            let a: u64 = if num.is_empty() {
                1
            } else {
                num.parse()
                    .map_err(|_| Error::invalid(format!("bad pi multiple {num:?}")))?
            };
            let b: u64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('/')
                    .ok_or_else(|| Error::invalid(format!("expected /DENOM after pi in {s:?}")))?
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad pi denominator in {s:?}")))?
            };
            return Angle::pi_fraction(a, b);
        }
        let theta: f64 = s
            .parse()
            .map_err(|_| Error::invalid(format!("bad angle {s:?}")))?;
        Angle::new(theta)
    }
}
