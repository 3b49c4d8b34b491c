use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Integer extended by both infinities.
///
/// Sums saturate at the infinities; finite overflow and `+∞ + −∞` panic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Fin(i64),
    PosInf,
}

pub use Ext::{Fin, NegInf, PosInf};

impl Ext {
    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Fin(v) => Some(v),
            _ => None,
        }
    }

    /// Finite value, panicking on an infinity.
    pub fn unwrap(self) -> i64 {
        match self {
            Fin(v) => v,
            other => panic!("expected a finite value, found {other}"),
        }
    }

    fn rank(self) -> u8 {
        match self {
            NegInf => 0,
            Fin(_) => 1,
            PosInf => 2,
        }
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Fin(v)
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("extended integer overflow")),
            (PosInf, NegInf) | (NegInf, PosInf) => panic!("undefined sum +inf + -inf"),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl Add<i64> for Ext {
    type Output = Ext;
    fn add(self, rhs: i64) -> Ext {
        self + Fin(rhs)
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        match self {
            Fin(v) => Fin(v.checked_neg().expect("extended integer overflow")),
            PosInf => NegInf,
            NegInf => PosInf,
        }
    }
}

impl Sub for Ext {
    type Output = Ext;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Ext) -> Ext {
        self + (-rhs)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(v) => write!(f, "{v}"),
            PosInf => f.write_str("inf"),
            NegInf => f.write_str("-inf"),
        }
    }
}
