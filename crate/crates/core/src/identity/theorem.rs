use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Identities the lab knows how to check.
///
/// `T*` are summation, explicit-formula and symmetry identities of the
/// unified family, `C27` is the `b = 1` case of `T26`, and `SC1`..`SC8` are
/// reductions to the classical Apostol families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T22,
    T12,
    T120,
    T14,
    T121,
    T19,
    T20,
    T23,
    TE1,
    T26,
    C27,
    SC1,
    SC2,
    SC3,
    SC4,
    SC5,
    SC6,
    SC7,
    SC8,
}

/// What a correct build should observe for an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// Residual is literally zero in exact mode.
    Exact,
    /// Holds within a numerical tolerance (infinite sums).
    Tolerance,
    /// Reported, never asserted.
    Suspect,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::T22,
        TheoremId::T12,
        TheoremId::T120,
        TheoremId::T14,
        TheoremId::T121,
        TheoremId::T19,
        TheoremId::T20,
        TheoremId::T23,
        TheoremId::TE1,
        TheoremId::T26,
        TheoremId::C27,
        TheoremId::SC1,
        TheoremId::SC2,
        TheoremId::SC3,
        TheoremId::SC4,
        TheoremId::SC5,
        TheoremId::SC6,
        TheoremId::SC7,
        TheoremId::SC8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T22 => "T22",
            TheoremId::T12 => "T12",
            TheoremId::T120 => "T120",
            TheoremId::T14 => "T14",
            TheoremId::T121 => "T121",
            TheoremId::T19 => "T19",
            TheoremId::T20 => "T20",
            TheoremId::T23 => "T23",
            TheoremId::TE1 => "TE1",
            TheoremId::T26 => "T26",
            TheoremId::C27 => "C27",
            TheoremId::SC1 => "SC1",
            TheoremId::SC2 => "SC2",
            TheoremId::SC3 => "SC3",
            TheoremId::SC4 => "SC4",
            TheoremId::SC5 => "SC5",
            TheoremId::SC6 => "SC6",
            TheoremId::SC7 => "SC7",
            TheoremId::SC8 => "SC8",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            TheoremId::T20 | TheoremId::SC7 => Expectation::Suspect,
            TheoremId::TE1 => Expectation::Tolerance,
            _ => Expectation::Exact,
        }
    }

    /// Whether the check ranges over `(n, m)` pairs instead of `n` alone.
    pub fn two_degrees(self) -> bool {
        self == TheoremId::T14
    }

    /// Stable per-theorem salt mixed into the suite seed (FNV-1a of the name).
    pub(crate) fn salt(self) -> u64 {
        self.name().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::usage(format!("unknown theorem id `{s}`")))
    }
}
