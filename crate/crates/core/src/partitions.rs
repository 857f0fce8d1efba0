//! Integer partitions with bounded length.
//!
//! Series are summed shell by shell: all partitions of weight `k` before any
//! of weight `k + 1`. Within a shell the order is reverse lexicographic,
//! `(3), (2,1), (1,1,1)`, which is also a linear extension of the dominance
//! order (a dominating partition always comes first).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::HgfError;

/// A nonincreasing sequence of positive parts; trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts that must already be nonincreasing.
    /// Zero parts are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self, HgfError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HgfError::Invalid(format!(
                "partition parts must be nonincreasing: {parts:?}"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (0..first)
            .map(|col| self.0.iter().take_while(|&&p| p > col).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `self ⪯ other` in dominance order (same weight assumed by callers;
    /// unequal weights compare as not dominated).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.len().max(other.len());
        let mut lhs = 0u32;
        let mut rhs = 0u32;
        for i in 0..n {
            lhs += self.part(i);
            rhs += other.part(i);
            if lhs > rhs {
                return false;
            }
        }
        true
    }

    /// Arm and leg lengths of every box, row by row.
    pub fn arm_legs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let conj = self.conjugate();
        self.0.iter().enumerate().flat_map(move |(row, &len)| {
            let conj = conj.clone();
            (0..len).map(move |col| {
                let arm = len - col - 1;
                let leg = conj.part(col as usize) - row as u32 - 1;
                (arm, leg)
            })
        })
    }

    /// Parts padded with zeros to exactly `m` entries.
    pub fn padded(&self, m: usize) -> Vec<u32> {
        let mut parts = self.0.clone();
        parts.resize(m.max(parts.len()), 0);
        parts
    }
}

impl Ord for Partition {
    /// Lexicographic on parts, so that `enumerate` is descending in this order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = HgfError;

    /// Accepts `3,1`, `(3,1)`, `()` and the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() || inner == "-" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| HgfError::Invalid(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `weight` with at most `max_length` parts, reverse lexicographic.
pub fn enumerate(weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(max_length);
    fill(weight, weight, max_length, &mut current, &mut out);
    out
}

fn fill(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    // the largest part bounds how much the remaining slots can absorb
    let lowest = remaining.div_ceil(slots as u32);
    for part in (lowest..=cap.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, slots - 1, current, out);
        current.pop();
    }
}

/// Shell-by-shell iterator over all partitions of length at most `max_length`.
pub fn shells(max_length: usize) -> impl Iterator<Item = (u32, Vec<Partition>)> {
    (0u32..).map(move |k| (k, enumerate(k, max_length)))
}
