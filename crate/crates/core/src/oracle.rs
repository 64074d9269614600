//! Brute-force ground truth for the closed forms.
//!
//! Two independent counters over an arbitrary [`ResidueSubset`]: tuple
//! enumeration for a single residue, and iterated schoolbook cyclic
//! convolution for the whole table. Neither uses factorization or any
//! closed form.

use num_traits::{One, Zero};

use crate::arith::BigCount;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::residues::{ResidueSubset, SubsetKind};

/// Counts of ordered `k`-tuples from a subset of `Z/nZ`, indexed by their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetTable {
    n: u64,
    k: u32,
    subset_kind: SubsetKind,
    counts: Vec<BigCount>,
}

impl SumsetTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn subset_kind(&self) -> SubsetKind {
        self.subset_kind
    }

    /// `counts()[c]` is the number of tuples summing to `c`.
    pub fn counts(&self) -> &[BigCount] {
        &self.counts
    }

    pub fn get(&self, c: u64) -> &BigCount {
        &self.counts[c as usize]
    }

    pub fn into_counts(self) -> Vec<BigCount> {
        self.counts
    }

    pub fn total(&self) -> BigCount {
        self.counts.iter().sum()
    }
}

/// Counts ordered `k`-tuples of members summing to `c` modulo `n` by walking
/// every `(k-1)`-tuple and checking whether the forced last coordinate is a
/// member.
pub fn count_by_enumeration(
    subset: &ResidueSubset,
    k: u32,
    c: u64,
    limits: &Limits,
) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::InvalidSummands(k));
    }
    let n = subset.n();
    let c = c % n;
    let members = subset.to_vec();
    let prefix_count = BigCount::from(members.len()).pow(k - 1);
    if prefix_count > BigCount::from(limits.enumeration_budget) {
        return Err(Error::ResourceLimit {
            what: "tuple enumeration",
            required: prefix_count,
            limit: limits.enumeration_budget,
        });
    }
    if members.is_empty() {
        return Ok(BigCount::zero());
    }

    let free = (k - 1) as usize;
    // odometer over indices into `members`; partial[i] is the sum of the
    // first i + 1 chosen members modulo n
    let mut idx = vec![0usize; free];
    let mut partial = vec![0u64; free];
    let add = |a: u64, b: u64| ((a as u128 + b as u128) % n as u128) as u64;
    for i in 0..free {
        let prev = if i == 0 { 0 } else { partial[i - 1] };
        partial[i] = add(prev, members[0]);
    }
    let mut hits: u64 = 0;
    loop {
        let sum = partial[free - 1];
        let last = add(c, n - sum);
        if subset.contains(last) {
            hits += 1;
        }
        // advance
        let mut pos = free;
        loop {
            if pos == 0 {
                return Ok(BigCount::from(hits));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < members.len() {
                break;
            }
            idx[pos] = 0;
        }
        for i in pos..free {
            let prev = if i == 0 { 0 } else { partial[i - 1] };
            partial[i] = add(prev, members[idx[i]]);
        }
    }
}

/// The full table of `k`-fold sum counts, built by convolving the indicator
/// vector of the subset with itself `k - 1` times.
pub fn sumset_table(subset: &ResidueSubset, k: u32, limits: &Limits) -> Result<SumsetTable> {
    if k < 1 {
        return Err(Error::InvalidSummands(k));
    }
    let n = subset.n();
    if n > limits.convolution_cap {
        return Err(Error::ResourceLimit {
            what: "cyclic convolution",
            required: n.into(),
            limit: limits.convolution_cap,
        });
    }
    let size = n as usize;
    let members = subset.to_vec();
    let mut counts = vec![BigCount::zero(); size];
    for &a in &members {
        counts[a as usize] = BigCount::one();
    }
    for _ in 1..k {
        let mut next = vec![BigCount::zero(); size];
        for (b, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &a in &members {
                let s = (a as usize + b) % size;
                next[s] += count;
            }
        }
        counts = next;
    }
    Ok(SumsetTable {
        n,
        k,
        subset_kind: subset.kind(),
        counts,
    })
}
