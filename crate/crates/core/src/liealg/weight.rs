use std::fmt;
use std::ops::{Add, Deref, DerefMut, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Integer weight in the fundamental-weight basis: `coords[i]` is the
/// coefficient of `omega_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub SmallVec<[i64; 4]>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        Weight(SmallVec::from_slice(coords))
    }

    /// `m * omega_i` for a 1-based node.
    pub fn fundamental_multiple(rank: usize, i: usize, m: i64) -> Self {
        let mut w = Weight::zero(rank);
        w[i - 1] = m;
        w
    }

    pub fn is_dominant(&self) -> bool {
        self.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        self.iter().map(|x| x * k).collect()
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.to_string()))
        }
    }
}

impl Deref for Weight {
    type Target = SmallVec<[i64; 4]>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for Weight {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl FromIterator<i64> for Weight {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        Weight(iter.into_iter().collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(SmallVec::from_vec(v))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.iter().zip(rhs.iter()).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.iter().zip(rhs.iter()).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.iter().map(|a| -a).collect()
    }
}

/// Comma-separated coordinates, e.g. `1,0,2`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| {
                    Error::InvalidArgument(format!("bad weight coordinate {t:?} in {s:?}"))
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(Weight::from(coords))
    }
}
