//! Integer partitions and the small amount of arithmetic on them that the
//! spectral machinery needs: conjugation, dominance, the diagonal index,
//! inner products, componentwise sums, and counting.
//!
//! A partition is stored as its weakly decreasing positive parts; trailing
//! zeros are never stored, and the empty partition (of 0) is the empty list.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A partition of a non-negative integer: weakly decreasing positive parts.
///
/// The natural `Ord` on partitions (derived, lexicographic on the part
/// vectors) sorts partitions of a fixed size in the *reverse* of the
/// canonical enumeration order; [`enumerate_partitions`] yields them largest
/// first, i.e. in strictly decreasing `Ord`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    size: u64,
}

impl Partition {
    /// Builds a partition from its parts, which must be weakly decreasing and
    /// strictly positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "partition parts must be positive (drop trailing zeros)".into(),
            ));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        let size = parts.iter().map(|&p| u64::from(p)).sum();
        Ok(Partition { parts, size })
    }

    /// Builds a partition from parts that may contain zeros or be unsorted
    /// only in the sense of trailing zeros; used internally where the caller
    /// guarantees weak decrease.
    pub(crate) fn from_decreasing_with_zeros(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let size = parts.iter().map(|&p| u64::from(p)).sum();
        Partition { parts, size }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            size: 0,
        }
    }

    /// A single row `(n)`; the empty partition when `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition {
                parts: vec![n],
                size: u64::from(n),
            }
        }
    }

    /// A single column `1^n`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
            size: u64::from(n),
        }
    }

    /// The parts, weakly decreasing, without trailing zeros.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned, `|λ|`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of (positive) parts, which equals `λ*₁`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// `λ₁`, the first part; 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `λ_i` with 0-based index, padding with zeros past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate (transposed Young diagram) `λ*`.
    pub fn conjugate(&self) -> Partition {
        let rows = self.parts.len();
        let cols = self.first() as usize;
        let mut parts = Vec::with_capacity(cols);
        for k in 1..=cols {
            // number of rows with λ_i >= k; parts are sorted, so count via scan
            let count = self.parts.iter().take_while(|&&p| p as usize >= k).count();
            parts.push(count as u32);
        }
        debug_assert!(parts.first().copied().unwrap_or(0) as usize == rows);
        Partition::from_decreasing_with_zeros(parts)
    }

    /// Dominance: `self ⊵ other`, i.e. every prefix sum of `self` is at least
    /// the corresponding prefix sum of `other`.  Defined for partitions of
    /// any sizes (prefix sums compared as-is, missing parts read as 0).
    pub fn dominates(&self, other: &Partition) -> bool {
        let k = self.parts.len().max(other.parts.len());
        let mut acc_self = 0u64;
        let mut acc_other = 0u64;
        for i in 0..k {
            acc_self += u64::from(self.part(i));
            acc_other += u64::from(other.part(i));
            if acc_self < acc_other {
                return false;
            }
        }
        true
    }

    /// `self` contains `other` as a Young diagram (`other_i <= self_i` rowwise).
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i) >= p)
    }

    /// The diagonal index `Diag(λ) = Σ_{(i,j)∈λ} (j − i)`, the sum of cell
    /// contents.  Equals `Σ C(λ_i,2) − Σ C(λ*_i,2)`.
    pub fn diag_index(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = i64::from(p);
                // row i (0-based) contributes Σ_{j=0}^{p−1} (j − i)
                p * (p - 1) / 2 - (i as i64) * p
            })
            .sum()
    }

    /// `⟨λ, μ⟩ = Σ λ_i μ_i`.
    pub fn inner_product(&self, other: &Partition) -> i64 {
        self.parts
            .iter()
            .zip(other.parts.iter())
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum()
    }
}

impl Add<&Partition> for &Partition {
    type Output = Partition;

    /// Componentwise sum `(λ + μ)_i = λ_i + μ_i`.
    fn add(self, rhs: &Partition) -> Partition {
        let k = self.parts.len().max(rhs.parts.len());
        let parts = (0..k).map(|i| self.part(i) + rhs.part(i)).collect();
        Partition::from_decreasing_with_zeros(parts)
    }
}

impl fmt::Display for Partition {
    /// Serialized as comma-separated decreasing parts, e.g. `4,3,2`; the
    /// empty partition prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidInput(format!("bad partition part {tok:?}: {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order (largest part first):
/// `4 → (4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    rec_enumerate(n, n, &mut stack, &mut out);
    out
}

fn rec_enumerate(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_decreasing_with_zeros(stack.clone()));
        return;
    }
    let hi = remaining.min(max_part);
    for p in (1..=hi).rev() {
        stack.push(p);
        rec_enumerate(remaining - p, p, stack, out);
        stack.pop();
    }
}

/// Exact `p(n)` via Euler's pentagonal-number recurrence,
/// `p(n) = Σ_k (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
pub fn partition_count(n: u32) -> BigUint {
    let n = n as usize;
    // Signed accumulation avoided by adding and subtracting in two passes per
    // term; with BigUint we instead track the recurrence over BigInt-free
    // positive values: compute into signed intermediates via i128 fallback is
    // unsafe for large n, so keep a plus/minus pair.
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    for i in 1..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            if k % 2 == 1 {
                plus += &table[i - g1];
                if g2 <= i {
                    plus += &table[i - g2];
                }
            } else {
                minus += &table[i - g1];
                if g2 <= i {
                    minus += &table[i - g2];
                }
            }
            k += 1;
        }
        // p(i) = plus − minus, always non-negative
        table.push(plus - minus);
    }
    table.pop().expect("table is non-empty")
}

/// The Hardy–Ramanujan asymptotic `p(n) ≈ exp(π·sqrt(2n/3)) / (4n·sqrt(3))`.
pub fn hardy_ramanujan_estimate(n: u32) -> f64 {
    assert!(n >= 1, "estimate defined for n >= 1");
    let n = f64::from(n);
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3.0_f64.sqrt())
}
