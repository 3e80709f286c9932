//! Tableau counting: standard Young tableaux via the hook-length formula,
//! Kostka numbers (semistandard tableaux with prescribed content), and
//! Littlewood–Richardson coefficients.
//!
//! Kostka and Littlewood–Richardson counts share one engine: a memoized walk
//! over chains of partitions `σ⁰ ⊆ σ¹ ⊆ …` in which consecutive shapes differ
//! by a horizontal strip (no two added cells in the same column).  Such a
//! chain is exactly a semistandard filling — the cells of `σ^i/σ^{i−1}` hold
//! entry `i`.  For Littlewood–Richardson counting the chain starts at `μ`
//! instead of the empty shape and is additionally filtered by the lattice
//! condition on the reverse reading word, which reduces to a per-row prefix
//! inequality between consecutive strips and is enforced incrementally while
//! a strip is being built.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partitions::{enumerate_partitions, Partition};
use crate::{Error, Result};

/// `n!` as an exact big integer.
pub(crate) fn factorial(n: u64) -> BigUint {
    (2..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// The number `f_λ` of standard Young tableaux of shape `λ`, by the
/// hook-length formula `N! / Π hooks`.
pub fn count_syt(la: &Partition) -> BigUint {
    if la.is_empty() {
        return BigUint::one();
    }
    let conj = la.conjugate();
    let mut hooks = BigUint::one();
    for (i, &p) in la.parts().iter().enumerate() {
        for j in 0..p as usize {
            let arm = u64::from(p) - j as u64;
            let leg = u64::from(conj.part(j)) - i as u64;
            hooks *= BigUint::from(arm + leg - 1);
        }
    }
    // the hook product divides N! exactly
    factorial(la.size()) / hooks
}

/// The Kostka number: semistandard tableaux of shape `λ` whose content is the
/// given composition (`content[i]` copies of entry `i+1`).
///
/// # Errors
/// Rejects a content whose total differs from `|λ|`.
pub fn count_ssyt(la: &Partition, content: &[u32]) -> Result<BigUint> {
    let total: u64 = content.iter().map(|&c| u64::from(c)).sum();
    if total != la.size() {
        return Err(Error::InvalidInput(format!(
            "content sums to {total} but shape {la} has {} cells",
            la.size()
        )));
    }
    let mut memo = HashMap::new();
    Ok(ssyt_ways(&Partition::empty(), la, content, 0, &mut memo))
}

fn ssyt_ways(
    cur: &Partition,
    la: &Partition,
    content: &[u32],
    stage: usize,
    memo: &mut HashMap<(Partition, usize), BigUint>,
) -> BigUint {
    if stage == content.len() {
        // strip sizes sum to |λ| and every shape stays inside λ, so cur == λ
        return BigUint::one();
    }
    if let Some(v) = memo.get(&(cur.clone(), stage)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for_each_strip(cur, la, content[stage], None, &mut |tau| {
        total += ssyt_ways(&tau, la, content, stage + 1, memo);
    });
    memo.insert((cur.clone(), stage), total.clone());
    total
}

/// The Littlewood–Richardson coefficient `c^λ_{μν}`.
///
/// Returns 0 (rather than an error) when `|μ| + |ν| ≠ |λ|` or `μ ⊄ λ`, so the
/// function is total over partition triples.
pub fn count_lr(la: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    if mu.size() + nu.size() != la.size() || !la.contains(mu) {
        return BigUint::zero();
    }
    if nu.is_empty() {
        // sizes force μ = λ
        return BigUint::one();
    }
    let mut memo = HashMap::new();
    lr_ways(None, mu, la, nu, 0, &mut memo)
}

fn lr_ways(
    prev: Option<&Partition>,
    cur: &Partition,
    la: &Partition,
    nu: &Partition,
    stage: usize,
    memo: &mut HashMap<(Partition, Partition), BigUint>,
) -> BigUint {
    if stage == nu.num_parts() {
        return BigUint::one();
    }
    // sizes grow strictly along the chain, so (prev, cur) determines stage
    let key = prev.map(|p| (p.clone(), cur.clone()));
    if let Some(k) = &key {
        if let Some(v) = memo.get(k) {
            return v.clone();
        }
    }
    let mut total = BigUint::zero();
    for_each_strip(cur, la, nu.part(stage), prev, &mut |tau| {
        total += lr_ways(Some(cur), &tau, la, nu, stage + 1, memo);
    });
    if let Some(k) = key {
        memo.insert(k, total.clone());
    }
    total
}

/// Every `(μ, ν, c^λ_{μν})` with `μ ⊢ nA`, `ν ⊢ nB` and positive coefficient,
/// in nested enumeration order of `μ` then `ν`.
///
/// # Errors
/// Rejects `nA + nB ≠ |λ|`.
pub fn lr_support(
    la: &Partition,
    n_a: u32,
    n_b: u32,
) -> Result<Vec<(Partition, Partition, BigUint)>> {
    if u64::from(n_a) + u64::from(n_b) != la.size() {
        return Err(Error::InvalidInput(format!(
            "support of {la} needs nA + nB = {}, got {n_a} + {n_b}",
            la.size()
        )));
    }
    let mut out = Vec::new();
    for mu in enumerate_partitions(n_a) {
        if !la.contains(&mu) {
            continue;
        }
        for nu in enumerate_partitions(n_b) {
            // cheap necessary conditions before the full count
            if !la.contains(&nu) || !(&mu + &nu).dominates(la) {
                continue;
            }
            let c = count_lr(la, &mu, &nu);
            if !c.is_zero() {
                out.push((mu.clone(), nu, c));
            }
        }
    }
    Ok(out)
}

/// Calls `f` for every `τ` with `base ⊆ τ ⊆ limit`, `|τ/base| = size`, and
/// `τ/base` a horizontal strip.
///
/// With `prev = Some(π)` the strip is additionally constrained by the lattice
/// condition against the previous strip `base/π`: for every row index `r`,
/// the cells added in rows `0..=r` may not outnumber the cells of `base/π` in
/// rows `0..r`.  The margin is carried down the rows as a running slack, so
/// dead branches are cut as soon as a row overdraws it.
fn for_each_strip(
    base: &Partition,
    limit: &Partition,
    size: u32,
    prev: Option<&Partition>,
    f: &mut dyn FnMut(Partition),
) {
    let mut acc = Vec::new();
    strip_rows(base, limit, prev, 0, size, prev.map(|_| 0), &mut acc, f);
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    base: &Partition,
    limit: &Partition,
    prev: Option<&Partition>,
    row: usize,
    rem: u32,
    slack: Option<u64>,
    acc: &mut Vec<u32>,
    f: &mut dyn FnMut(Partition),
) {
    if rem == 0 {
        // unique completion: leave all remaining rows of base untouched
        let mut parts = acc.clone();
        parts.extend_from_slice(&base.parts()[row.min(base.num_parts())..]);
        f(Partition::from_decreasing_with_zeros(parts));
        return;
    }
    if row >= limit.num_parts() {
        return;
    }
    let lo = base.part(row);
    let mut hi = limit.part(row).min(lo + rem);
    if row > 0 {
        // no two added cells in one column: τ_r ≤ base_{r−1}
        hi = hi.min(base.part(row - 1));
    }
    if let Some(s) = slack {
        hi = hi.min(lo.saturating_add(s.min(u64::from(u32::MAX)) as u32));
    }
    for v in lo..=hi {
        let added = v - lo;
        let next_slack = slack.map(|s| {
            s - u64::from(added) + u64::from(lo - prev.expect("slack implies prev").part(row))
        });
        acc.push(v);
        strip_rows(base, limit, prev, row + 1, rem - added, next_slack, acc, f);
        acc.pop();
    }
}
