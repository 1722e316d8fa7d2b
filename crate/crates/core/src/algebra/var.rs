use std::fmt;

use serde::{Deserialize, Serialize};

/// Variable families. The derived order `X < Y < T` is the block order used
/// by the monomial ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    T,
}

impl Family {
    pub fn prefix(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::T => 't',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefix())
    }
}

/// A named indeterminate `x_i`, `y_j` or `t_j`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarId { family, index }
    }

    pub fn x(index: u32) -> Self {
        Self::new(Family::X, index)
    }

    pub fn y(index: u32) -> Self {
        Self::new(Family::Y, index)
    }

    pub fn t(index: u32) -> Self {
        Self::new(Family::T, index)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}
