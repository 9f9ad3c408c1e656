//! Partitions of integers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts. Zeros beyond the stored
/// parts are implied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Input("zero part in partition".into()));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// Parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(m.max(v.len()), 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Input(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` into at most `max_parts` parts, in
/// reverse-lexicographic order: (4) before (3,1) before (2,2).
pub fn partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: usize,
        max_part: usize,
        slots: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        let top = remaining.min(max_part);
        // Largest first part first gives reverse-lexicographic order.
        for p in (1..=top).rev() {
            // Feasibility: the rest must fit into the remaining slots.
            if remaining - p > p * (slots - 1) {
                continue;
            }
            current.push(p as u32);
            rec(remaining - p, p, slots - 1, current, out);
            current.pop();
        }
    }
    rec(n, n, max_parts, &mut current, &mut out);
    out
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four_into_two_parts() {
        let ps = partitions(4, 2);
        let expect: Vec<Partition> = ["(4)", "(3,1)", "(2,2)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(ps, expect);
    }

    #[test]
    fn empty_partition_of_zero() {
        assert_eq!(partitions(0, 5), vec![Partition::empty()]);
    }

    #[test]
    fn count_matches_independent_recurrence() {
        // Oracle: p(n, k) = p(n-k, k) + p(n, k-1), partitions of n into parts <= k
        // equals partitions into at most k parts (conjugation).
        fn count(n: usize, k: usize) -> usize {
            if n == 0 {
                return 1;
            }
            if k == 0 {
                return 0;
            }
            if k > n {
                return count(n, n);
            }
            count(n - k, k) + count(n, k - 1)
        }
        assert_eq!(partitions(10, 10).len(), count(10, 10));
        assert_eq!(count(10, 10), 42);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(partitions(n, k).len(), count(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["(4,1)", "(2,2,1)", "(7)"] {
            let p: Partition = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("(1,2)".parse::<Partition>().is_err());
    }
}
