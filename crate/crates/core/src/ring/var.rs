use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A polynomial variable.
///
/// The derived order (`Beta < X < Y < A < B`, then by index) is the variable
/// order used by the canonical term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Beta,
    X(u32),
    Y(u32),
    A(i32),
    B(i32),
}

/// Which family a variable belongs to, ignoring its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Beta,
    X,
    Y,
    A,
    B,
}

impl Var {
    pub fn family(self) -> Family {
        match self {
            Var::Beta => Family::Beta,
            Var::X(_) => Family::X,
            Var::Y(_) => Family::Y,
            Var::A(_) => Family::A,
            Var::B(_) => Family::B,
        }
    }

    /// Variables that are coefficients of the symmetric-function ring rather than
    /// its generators.
    pub fn is_parameter(self) -> bool {
        matches!(self, Var::Beta | Var::A(_) | Var::B(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn signed(f: &mut fmt::Formatter<'_>, c: char, i: i32) -> fmt::Result {
            if i < 0 {
                write!(f, "{c}[{i}]")
            } else {
                write!(f, "{c}{i}")
            }
        }
        match *self {
            Var::Beta => f.write_str("b"),
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::A(i) => signed(f, 'a', i),
            Var::B(i) => signed(f, 'b', i),
        }
    }
}

impl FromStr for Var {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Variable(s.to_string());
        if s == "b" {
            return Ok(Var::Beta);
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let index =
            if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) { inner } else { rest };
        if index.is_empty() {
            return Err(bad());
        }
        match head {
            'x' | 'y' => {
                let i: u32 = index.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                Ok(if head == 'x' { Var::X(i) } else { Var::Y(i) })
            }
            'a' | 'b' => {
                let i: i32 = index.parse().map_err(|_| bad())?;
                Ok(if head == 'a' { Var::A(i) } else { Var::B(i) })
            }
            _ => Err(bad()),
        }
    }
}
