//! Units and exceptional units of `Z/nZ`.
//!
//! Residues are always represented by their least nonnegative value, so a
//! member `a` of any subset satisfies `0 <= a < n`.

use bitvec::vec::BitVec;
use num_integer::Integer;

use crate::arith::{BigCount, Factorization};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubsetKind {
    /// `{a : gcd(a, n) = 1}`
    Units,
    /// `{a : gcd(a, n) = gcd(a - 1, n) = 1}`
    ExceptionalUnits,
    Custom,
}

/// A subset of `Z/nZ` stored as a dense membership bit-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSubset {
    n: u64,
    members: BitVec,
    len: usize,
    kind: SubsetKind,
}

impl ResidueSubset {
    /// All units of `Z/nZ`.
    pub fn units(n: u64, limits: &Limits) -> Result<Self> {
        Self::from_predicate(n, SubsetKind::Units, limits, |a| is_unit(a as i128, n))
    }

    /// All exceptional units of `Z/nZ`.
    pub fn exceptional_units(n: u64, limits: &Limits) -> Result<Self> {
        Self::from_predicate(n, SubsetKind::ExceptionalUnits, limits, |a| {
            is_exceptional_unit(a as i128, n)
        })
    }

    /// An arbitrary subset. Members must already be reduced modulo `n`;
    /// duplicates are ignored.
    pub fn from_members<I>(n: u64, members: I, limits: &Limits) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut set = Self::empty(n, SubsetKind::Custom, limits)?;
        for a in members {
            if a >= n {
                return Err(Error::ResidueOutOfRange {
                    residue: a,
                    modulus: n,
                });
            }
            if !set.members.replace(a as usize, true) {
                set.len += 1;
            }
        }
        Ok(set)
    }

    fn empty(n: u64, kind: SubsetKind, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if n > limits.enumeration_cap {
            return Err(Error::ResourceLimit {
                what: "residue enumeration",
                required: n.into(),
                limit: limits.enumeration_cap,
            });
        }
        Ok(ResidueSubset {
            n,
            members: BitVec::repeat(false, n as usize),
            len: 0,
            kind,
        })
    }

    fn from_predicate(
        n: u64,
        kind: SubsetKind,
        limits: &Limits,
        pred: impl Fn(u64) -> bool,
    ) -> Result<Self> {
        let mut set = Self::empty(n, kind, limits)?;
        for a in 0..n {
            if pred(a) {
                set.members.set(a as usize, true);
                set.len += 1;
            }
        }
        Ok(set)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> SubsetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Membership of `a`, which must be in `0..n`.
    pub fn contains(&self, a: u64) -> bool {
        a < self.n && self.members[a as usize]
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter_ones().map(|a| a as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

fn reduce(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

/// True iff `a mod n` is invertible. Every residue is a unit when `n = 1`.
pub fn is_unit(a: i128, n: u64) -> bool {
    assert!(n >= 1, "modulus must be positive");
    reduce(a, n).gcd(&n) == 1
}

/// True iff both `a` and `a - 1` are units modulo `n`.
pub fn is_exceptional_unit(a: i128, n: u64) -> bool {
    assert!(n >= 1, "modulus must be positive");
    let a = reduce(a, n);
    let a_minus_one = if a == 0 { n - 1 } else { a - 1 };
    a.gcd(&n) == 1 && a_minus_one.gcd(&n) == 1
}

pub fn enumerate_units(n: u64, limits: &Limits) -> Result<ResidueSubset> {
    ResidueSubset::units(n, limits)
}

pub fn enumerate_exceptional_units(n: u64, limits: &Limits) -> Result<ResidueSubset> {
    ResidueSubset::exceptional_units(n, limits)
}

/// `n * prod_{p | n} (1 - 2/p)`, evaluated as `prod p^(alpha-1) * (p - 2)`.
pub fn count_exceptional_units(factored_n: &Factorization) -> BigCount {
    factored_n
        .factors()
        .iter()
        .map(|&(p, alpha)| BigCount::from(p).pow(alpha - 1) * (p - 2))
        .product()
}
