//! Polynomial indeterminates.
//!
//! The derived `Ord` gives the canonical monomial order: variant first, then
//! index, then derivative order.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    /// `u^{(k)}`.
    UJet(u16),
    /// `s_{2l+1}`; `STime(0)` is `x`.
    STime(u16),
    /// `t_{inf,k}` for odd `k`.
    ITime(u16),
    /// Oper coordinates are 1-based.
    OperQ(u16),
    OperP(u16),
    /// Symmetric coordinates are 1-based.
    SymQ(u16),
    SymP(u16),
    /// Mumford coefficient `a_i`, `b_i` or `c_i`.
    Moduli(Role, u16),
    /// 0 is the spectral variable `lambda`, 1 is its partner `mu`.
    Spectral(u8),
    /// Free variable for tests and scratch computations.
    Var(u16),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Jet,
    Oper,
    Neutral,
}

impl Atom {
    pub fn family(self) -> Family {
        match self {
            Atom::UJet(_) | Atom::STime(_) => Family::Jet,
            Atom::OperQ(_) | Atom::OperP(_) => Family::Oper,
            _ => Family::Neutral,
        }
    }

    pub const X: Atom = Atom::STime(0);
    pub const LAMBDA: Atom = Atom::Spectral(0);
    pub const MU: Atom = Atom::Spectral(1);
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::UJet(0) => write!(f, "u"),
            Atom::UJet(k) if k <= 3 => write!(f, "u_{}", "x".repeat(k as usize)),
            Atom::UJet(k) => write!(f, "u_({k})"),
            Atom::STime(0) => write!(f, "x"),
            Atom::STime(l) => write!(f, "s{}", 2 * l + 1),
            Atom::ITime(k) => write!(f, "t{k}"),
            Atom::OperQ(i) => write!(f, "q{i}"),
            Atom::OperP(i) => write!(f, "p{i}"),
            Atom::SymQ(i) => write!(f, "Q{i}"),
            Atom::SymP(i) => write!(f, "P{i}"),
            Atom::Moduli(Role::A, i) => write!(f, "a{i}"),
            Atom::Moduli(Role::B, i) => write!(f, "b{i}"),
            Atom::Moduli(Role::C, i) => write!(f, "c{i}"),
            Atom::Spectral(0) => write!(f, "lambda"),
            Atom::Spectral(1) => write!(f, "mu"),
            Atom::Spectral(i) => write!(f, "z{i}"),
            Atom::Var(i) => write!(f, "v{i}"),
        }
    }
}
