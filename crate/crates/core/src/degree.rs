use std::fmt;

use crate::error::{Error, Result};

/// Angular momentum quantum number `j`, stored doubled so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u32);

impl Degree {
    pub const fn from_doubled(two_j: u32) -> Self {
        Degree(two_j)
    }

    pub const fn integer(j: u32) -> Self {
        Degree(2 * j)
    }

    pub const fn two_j(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `j` as an integer, or [`Error::NonIntegerDegree`].
    pub fn integer_value(self) -> Result<u32> {
        if self.is_integer() {
            Ok(self.0 / 2)
        } else {
            Err(Error::NonIntegerDegree { two_j: self.0 })
        }
    }

    /// Number of magnetic sublevels, `2j + 1`.
    pub const fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for Degree {
    type Err = Error;

    /// Parses `"3"` or `"5/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse degree {s:?}"));
        match s.trim().split_once('/') {
            Some((num, "2")) => num.trim().parse().map(Degree::from_doubled).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s.trim().parse().map(Degree::integer).map_err(|_| bad()),
        }
    }
}
