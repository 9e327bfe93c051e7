//! Integer partitions and the index sets derived from them.
//!
//! A partition `λ` determines its Maya diagram `m_i = λ_i - i`, the shifted
//! index sets `K_n = {m_i + n : 1 ≤ i ≤ n}` and the set of surviving degrees
//! `I = (ℤ \ M) + |λ|`. The Frobenius arm/leg lengths fix the block structure
//! of the Calogero-Moser pair built in [`crate::cmpair`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition stored as its non-zero parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Frobenius coordinates `{(α_1,…,α_J) | (β_1,…,β_J)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frobenius {
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
}

impl Frobenius {
    /// Number of diagonal boxes.
    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    /// Hook lengths `α_k + β_k + 1` along the diagonal.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.arms
            .iter()
            .zip(&self.legs)
            .map(|(&a, &b)| (a + b + 1) as usize)
            .collect()
    }
}

impl Partition {
    /// Builds a partition, dropping zero entries. Fails if the remaining
    /// parts are not non-increasing.
    pub fn new(parts: &[u32]) -> Result<Self> {
        let parts: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total weight `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of non-zero parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// First `count` entries of the Maya diagram, `m_i = λ_i - i`.
    pub fn maya_diagram(&self, count: usize) -> Vec<i64> {
        (1..=count)
            .map(|i| self.part(i) as i64 - i as i64)
            .collect()
    }

    /// `{m_i + n : 1 ≤ i ≤ n}` in index order (so strictly decreasing).
    pub fn index_set(&self, n: usize) -> Vec<i64> {
        self.maya_diagram(n)
            .into_iter()
            .map(|m| m + n as i64)
            .collect()
    }

    /// The index set `K = {k_1 > … > k_ℓ}` used in the Wronskian formulas.
    pub fn index_set_k(&self) -> Vec<i64> {
        self.index_set(self.len())
    }

    /// The excluded degrees `K_N`, `N = |λ|`.
    pub fn excluded_degrees(&self) -> Vec<i64> {
        self.index_set(self.weight())
    }

    /// Elements of `I` up to and including `max`, ascending.
    pub fn degree_set(&self, max: usize) -> Vec<usize> {
        let excluded = self.excluded_degrees();
        (0..=max)
            .filter(|&n| !excluded.contains(&(n as i64)))
            .collect()
    }

    /// Whether `n` belongs to `I`.
    pub fn contains_degree(&self, n: usize) -> bool {
        !self.excluded_degrees().contains(&(n as i64))
    }

    /// The conjugate partition (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn frobenius(&self) -> Frobenius {
        let conj = self.conjugate();
        let rank = (1..=self.len())
            .take_while(|&j| self.part(j) as usize >= j)
            .count();
        let arms = (1..=rank).map(|i| self.part(i) - i as u32).collect();
        let legs = (1..=rank).map(|i| conj.part(i) - i as u32).collect();
        Frobenius { arms, legs }
    }

    /// Every distinct part occurs an even number of times.
    pub fn is_even(&self) -> bool {
        self.parts
            .chunk_by(|a, b| a == b)
            .all(|run| run.len() % 2 == 0)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `1 ≤ |λ| ≤ max_weight`.
pub fn partitions_up_to(max_weight: usize) -> Vec<Partition> {
    (1..=max_weight).flat_map(partitions_of).collect()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::BadPartitionText(s.to_string()))?;
        Partition::new(&parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl fmt::Display for Frobenius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{({})|({})}}", join(&self.arms), join(&self.legs))
    }
}
