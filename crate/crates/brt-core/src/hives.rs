//! Hives: triangular integer arrays whose rhombus inequalities give a second,
//! independent route to Littlewood–Richardson coefficients.
//!
//! A hive of side `n` has rows `0..=n`, row `r` holding `r + 1` labels.  The
//! boundary is determined by a triple of partitions `(λ, μ, ν)` with
//! `|λ| = |μ| + |ν|`: partial sums of `λ` run down the left edge, partial
//! sums of `μ` down the right edge, and the bottom edge continues with the
//! partial sums of `ν` on top of `|μ|`, right to left.  Interior labels are
//! free subject to the rhombus inequalities — across each unit rhombus (two
//! adjacent small triangles) the labels at the obtuse corners must total at
//! least the labels at the acute corners.  The number of integer interior
//! fillings equals `c^λ_{μν}`, which [`count_hives`] computes by direct
//! search; agreement with the tableau route is kept as a test obligation and
//! the two implementations share no code.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partitions::Partition;
use crate::{Error, Result};

/// A labeled triangular array; row `r` (top row is 0) has `r + 1` labels.
///
/// The type only enforces the triangular shape.  Whether the labels satisfy
/// the hive inequalities is a separate question, answered by
/// [`check_rhombus`] and [`parallelogram_ok`].
#[derive(Clone, PartialEq, Eq)]
pub struct Hive {
    rows: Vec<Vec<i64>>,
}

impl Hive {
    /// Wraps raw rows, requiring row `r` to hold exactly `r + 1` labels.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("a hive needs at least row 0".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(Error::InvalidInput(format!(
                    "hive row {r} must hold {} labels, got {}",
                    r + 1,
                    row.len()
                )));
            }
        }
        Ok(Hive { rows })
    }

    /// The side length `n` (index of the bottom row).
    pub fn side(&self) -> usize {
        self.rows.len() - 1
    }

    /// Label at row `r`, position `k` (`0 ≤ k ≤ r`).
    pub fn label(&self, r: usize, k: usize) -> i64 {
        self.rows[r][k]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

impl std::fmt::Display for Hive {
    /// One line per row, labels space-separated, top row first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Hive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hive[{}]", self.rows.len() - 1)?;
        for row in &self.rows {
            write!(f, " {row:?}")?;
        }
        Ok(())
    }
}

/// One unit rhombus inequality: obtuse labels outweigh acute labels,
/// `Σ plus ≥ Σ minus`.
struct RhombusConstraint {
    plus: [(usize, usize); 2],
    minus: [(usize, usize); 2],
}

impl RhombusConstraint {
    fn holds(&self, rows: &[Vec<i64>]) -> bool {
        let get = |(r, k): (usize, usize)| rows[r][k];
        get(self.plus[0]) + get(self.plus[1]) >= get(self.minus[0]) + get(self.minus[1])
    }
}

/// All `3·C(n,2)` unit rhombus constraints of a side-`n` hive, one per
/// interior edge (each unit rhombus is the union of the two small triangles
/// sharing that edge).
fn all_rhombi(n: usize) -> Vec<RhombusConstraint> {
    let mut out = Vec::new();
    for r in 1..n {
        for k in 0..r {
            // horizontal interior edge (r,k)–(r,k+1)
            out.push(RhombusConstraint {
                plus: [(r, k), (r, k + 1)],
                minus: [(r - 1, k), (r + 1, k + 1)],
            });
            // down-right interior edge (r,k)–(r+1,k+1)
            out.push(RhombusConstraint {
                plus: [(r, k), (r + 1, k + 1)],
                minus: [(r + 1, k), (r, k + 1)],
            });
        }
        for k in 1..=r {
            // down-left interior edge (r,k)–(r+1,k)
            out.push(RhombusConstraint {
                plus: [(r, k), (r + 1, k)],
                minus: [(r, k - 1), (r + 1, k + 1)],
            });
        }
    }
    out
}

/// Checks every unit rhombus inequality of the hive.
pub fn check_rhombus(hive: &Hive) -> bool {
    all_rhombi(hive.side())
        .iter()
        .all(|c| c.holds(&hive.rows))
}

/// Checks every *proper* parallelogram inequality: for each parallelogram
/// spanned by `p` and `q` unit steps with `p·q > 1` (in any of the three
/// orientations), the two obtuse corners must total at least the two acute
/// corners.
///
/// These inequalities all follow from the unit rhombi (`p = q = 1`, checked
/// by [`check_rhombus`]) by summation, but the reverse implication fails: a
/// labeling can satisfy every proper parallelogram while violating a unit
/// rhombus.
pub fn parallelogram_ok(hive: &Hive) -> bool {
    let n = hive.side();
    let rows = &hive.rows;
    let get = |r: usize, k: usize| rows[r][k];
    for p in 1..n {
        for q in 1..n {
            if p == 1 && q == 1 {
                continue;
            }
            // spanned by p·(down-left) and q·(down-right); empty when the
            // parallelogram cannot fit (p + q > n)
            for r in 0..(n + 1).saturating_sub(p + q) {
                for k in 0..=r {
                    if get(r + p, k) + get(r + q, k + q) < get(r, k) + get(r + p + q, k + q) {
                        return false;
                    }
                }
            }
            // spanned by p·(right) and q·(down-right)
            for r in p..=n.saturating_sub(q) {
                for k in 0..=(r - p) {
                    if get(r, k + p) + get(r + q, k + q) < get(r, k) + get(r + q, k + p + q) {
                        return false;
                    }
                }
            }
            // spanned by p·(right) and q·(down-left)
            for r in p..=n.saturating_sub(q) {
                for k in 0..=(r - p) {
                    if get(r, k) + get(r + q, k + p) < get(r + q, k) + get(r, k + p) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Number of hives with boundary `(λ, μ, ν)`, which equals `c^λ_{μν}`.
///
/// The side is `max(len λ, len μ + len ν)`, enough for every filling to fit.
///
/// # Errors
/// Rejects `|λ| ≠ |μ| + |ν|` (no such hive boundary exists).
pub fn count_hives(la: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    hive_search(la, mu, nu, &mut |_| ())
}

/// Same search as [`count_hives`], materializing each hive for inspection.
#[cfg(test)]
pub(crate) fn enumerate_hives(
    la: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<Vec<Hive>> {
    let mut out = Vec::new();
    hive_search(la, mu, nu, &mut |h| out.push(h.clone()))?;
    Ok(out)
}

fn hive_search(
    la: &Partition,
    mu: &Partition,
    nu: &Partition,
    visit: &mut dyn FnMut(&Hive),
) -> Result<BigUint> {
    if mu.size() + nu.size() != la.size() {
        return Err(Error::InvalidInput(format!(
            "hive boundary needs |λ| = |μ| + |ν|, got {} ≠ {} + {}",
            la.size(),
            mu.size(),
            nu.size()
        )));
    }
    let n = la.num_parts().max(mu.num_parts() + nu.num_parts());
    let mut hive = Hive {
        rows: boundary_rows(la, mu, nu, n),
    };
    if n == 0 {
        visit(&hive);
        return Ok(BigUint::one());
    }

    // interior vertices in row-major assignment order
    let interior: Vec<(usize, usize)> = (2..n)
        .flat_map(|r| (1..r).map(move |k| (r, k)))
        .collect();
    let mut rank_of = std::collections::HashMap::new();
    for (i, &v) in interior.iter().enumerate() {
        rank_of.insert(v, i);
    }

    // bucket each constraint at the last interior vertex it mentions
    let mut boundary_only = Vec::new();
    let mut buckets: Vec<Vec<RhombusConstraint>> = (0..interior.len()).map(|_| Vec::new()).collect();
    for c in all_rhombi(n) {
        let trigger = c
            .plus
            .iter()
            .chain(c.minus.iter())
            .filter_map(|&v| rank_of.get(&v).copied())
            .max();
        match trigger {
            Some(t) => buckets[t].push(c),
            None => boundary_only.push(c),
        }
    }
    for c in &boundary_only {
        if !c.holds(&hive.rows) {
            return Ok(BigUint::zero());
        }
    }

    let mut count = BigUint::zero();
    assign(&mut hive, &interior, &buckets, 0, &mut count, visit);
    Ok(count)
}

fn assign(
    hive: &mut Hive,
    interior: &[(usize, usize)],
    buckets: &[Vec<RhombusConstraint>],
    slot: usize,
    count: &mut BigUint,
    visit: &mut dyn FnMut(&Hive),
) {
    if slot == interior.len() {
        *count += 1u32;
        visit(hive);
        return;
    }
    let (r, k) = interior[slot];
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    // every constraint in this bucket mentions (r,k) exactly once and all its
    // other labels are already assigned, so each one clips the range
    for c in &buckets[slot] {
        let get = |(vr, vk): (usize, usize)| hive.rows[vr][vk];
        if let Some(other) = pair_other(&c.plus, (r, k)) {
            lo = lo.max(get(c.minus[0]) + get(c.minus[1]) - get(other));
        } else {
            let other = pair_other(&c.minus, (r, k)).expect("trigger vertex is in the rhombus");
            hi = hi.min(get(c.plus[0]) + get(c.plus[1]) - get(other));
        }
    }
    debug_assert!(lo > i64::MIN && hi < i64::MAX, "interior slot left unbounded");
    let mut v = lo;
    while v <= hi {
        hive.rows[r][k] = v;
        assign(hive, interior, buckets, slot + 1, count, visit);
        v += 1;
    }
}

/// The member of the pair that is not `v`, if `v` belongs to the pair.
fn pair_other(pair: &[(usize, usize); 2], v: (usize, usize)) -> Option<(usize, usize)> {
    if pair[0] == v {
        Some(pair[1])
    } else if pair[1] == v {
        Some(pair[0])
    } else {
        None
    }
}

fn boundary_rows(la: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = (0..=n).map(|r| vec![0; r + 1]).collect();
    let prefix = |p: &Partition, upto: usize| -> i64 {
        (0..upto).map(|i| i64::from(p.part(i))).sum()
    };
    for (r, row) in rows.iter_mut().enumerate() {
        row[0] = prefix(la, r);
        row[r] = prefix(mu, r);
    }
    for (k, cell) in rows[n].iter_mut().enumerate() {
        *cell = prefix(mu, n) + prefix(nu, n - k);
    }
    // the three corner vertices are written twice; the precondition
    // |λ| = |μ| + |ν| makes both routes agree
    debug_assert_eq!(rows[n][0], prefix(la, n));
    rows
}
