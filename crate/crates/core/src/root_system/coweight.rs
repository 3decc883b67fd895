use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A coweight in the fundamental-coweight basis.
///
/// `coords[i]` is the pairing `<alpha_i, mu>` with the i-th simple root, so
/// dominance and simple reflections only read single coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(SmallVec<[i32; 4]>);

impl Coweight {
    pub fn new(coords: impl IntoIterator<Item = i32>) -> Self {
        Coweight(coords.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Coweight(SmallVec::from_elem(0, rank))
    }

    /// The i-th fundamental coweight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = Self::zero(rank);
        c.0[i] = 1;
        c
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of the fundamental-coweight coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|&c| c as i64).sum()
    }

    pub fn scaled(&self, k: i32) -> Self {
        Coweight(self.0.iter().map(|&c| c * k).collect())
    }

    /// Parse a comma separated list of integers, checking the rank.
    pub fn parse_with_rank(s: &str, rank: usize) -> Result<Self> {
        let mu: Coweight = s.parse()?;
        if mu.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: mu.rank() });
        }
        Ok(mu)
    }
}

impl FromStr for Coweight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        if trimmed.trim().is_empty() {
            return Err(Error::ParseCoweight(s.to_string()));
        }
        trimmed
            .split(',')
            .map(|part| part.trim().parse::<i32>())
            .collect::<Result<SmallVec<_>, _>>()
            .map(Coweight)
            .map_err(|_| Error::ParseCoweight(s.to_string()))
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a Coweight> for &'a Coweight {
    type Output = Coweight;

    fn add(self, rhs: &'a Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Coweight> for &'a Coweight {
    type Output = Coweight;

    fn sub(self, rhs: &'a Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Coweight {
    type Output = Coweight;

    fn neg(self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Coweight {
    type Output = Coweight;

    fn add(self, rhs: Coweight) -> Coweight {
        &self + &rhs
    }
}

impl Sub for Coweight {
    type Output = Coweight;

    fn sub(self, rhs: Coweight) -> Coweight {
        &self - &rhs
    }
}

impl Neg for Coweight {
    type Output = Coweight;

    fn neg(self) -> Coweight {
        -&self
    }
}

/// All coweights with coordinates in `[-radius, radius]`, in lexicographic
/// order, subsampled to at most `cap` entries at evenly spaced indices.
pub fn coweight_box(rank: usize, radius: i32, cap: usize) -> Vec<Coweight> {
    let side = (2 * radius + 1) as usize;
    let total = side.pow(rank as u32);
    let pick = |index: usize| {
        let mut rest = index;
        let mut coords = SmallVec::<[i32; 4]>::from_elem(0, rank);
        for slot in coords.iter_mut().rev() {
            *slot = (rest % side) as i32 - radius;
            rest /= side;
        }
        Coweight(coords)
    };
    if total <= cap {
        (0..total).map(pick).collect()
    } else {
        (0..cap).map(|k| pick(k * total / cap)).collect()
    }
}

/// Dominant coweights of height at most `max_height`, in lexicographic order.
pub fn dominant_up_to_height(rank: usize, max_height: u32) -> Vec<Coweight> {
    let mut out = Vec::new();
    let mut current = vec![0i32; rank];
    fn rec(pos: usize, left: i32, current: &mut Vec<i32>, out: &mut Vec<Coweight>) {
        if pos == current.len() {
            out.push(Coweight::new(current.iter().copied()));
            return;
        }
        for c in 0..=left {
            current[pos] = c;
            rec(pos + 1, left - c, current, out);
        }
        current[pos] = 0;
    }
    rec(0, max_height as i32, &mut current, &mut out);
    out.sort();
    out
}
