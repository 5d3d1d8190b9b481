use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of declared symbols; exponent vectors are dense over all of them.
pub const NUM_SYMBOLS: usize = 14;

/// Largest ansatz order whose coefficients have declared symbols.
pub const MAX_ANSATZ_ORDER: usize = 4;

/// The closed set of parameter symbols, in graded-lex declaration order.
///
/// `a0`, `a_j`, `b_j` are ansatz coefficients, `mu`, `r`, `e`, `rho` belong to the
/// Riccati system and `lambda` is the wave speed in `ξ = x + λt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    A0,
    A1,
    B1,
    A2,
    B2,
    A3,
    B3,
    A4,
    B4,
    Mu,
    R,
    Lambda,
    E,
    Rho,
}

impl Symbol {
    pub const ALL: [Symbol; NUM_SYMBOLS] = [
        Symbol::A0,
        Symbol::A1,
        Symbol::B1,
        Symbol::A2,
        Symbol::B2,
        Symbol::A3,
        Symbol::B3,
        Symbol::A4,
        Symbol::B4,
        Symbol::Mu,
        Symbol::R,
        Symbol::Lambda,
        Symbol::E,
        Symbol::Rho,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A0 => "a0",
            Symbol::A1 => "a1",
            Symbol::B1 => "b1",
            Symbol::A2 => "a2",
            Symbol::B2 => "b2",
            Symbol::A3 => "a3",
            Symbol::B3 => "b3",
            Symbol::A4 => "a4",
            Symbol::B4 => "b4",
            Symbol::Mu => "mu",
            Symbol::R => "r",
            Symbol::Lambda => "lambda",
            Symbol::E => "e",
            Symbol::Rho => "rho",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Symbol::A0 => "a_0",
            Symbol::A1 => "a_1",
            Symbol::B1 => "b_1",
            Symbol::A2 => "a_2",
            Symbol::B2 => "b_2",
            Symbol::A3 => "a_3",
            Symbol::B3 => "b_3",
            Symbol::A4 => "a_4",
            Symbol::B4 => "b_4",
            Symbol::Mu => "\\mu",
            Symbol::R => "r",
            Symbol::Lambda => "\\lambda",
            Symbol::E => "e",
            Symbol::Rho => "\\rho",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|s| s.name() == name)
    }

    /// `a_j` for `j` in `1..=MAX_ANSATZ_ORDER`.
    pub fn a(j: usize) -> Option<Symbol> {
        match j {
            1 => Some(Symbol::A1),
            2 => Some(Symbol::A2),
            3 => Some(Symbol::A3),
            4 => Some(Symbol::A4),
            _ => None,
        }
    }

    /// `b_j` for `j` in `1..=MAX_ANSATZ_ORDER`.
    pub fn b(j: usize) -> Option<Symbol> {
        match j {
            1 => Some(Symbol::B1),
            2 => Some(Symbol::B2),
            3 => Some(Symbol::B3),
            4 => Some(Symbol::B4),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
