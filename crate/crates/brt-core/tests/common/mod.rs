//! Helpers shared by the integration test binaries.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

use brt_core::partitions::{enumerate_partitions, Partition};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Prints the per-criterion verdict line and fails the test on violations.
pub fn report(criterion: usize, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS — {what}");
    } else {
        println!(
            "criterion {criterion}: FAIL — {what} ({} violations)",
            failures.len()
        );
        panic!(
            "criterion {criterion} failed:\n{}",
            failures.join("\n")
        );
    }
}

/// All boundary triples (λ, μ, ν) with `|λ| = m` and `|μ| + |ν| = m`.
pub fn triples_of_size(m: u32) -> Vec<(Partition, Partition, Partition)> {
    let mut out = Vec::new();
    for la in enumerate_partitions(m) {
        for k in 0..=m {
            for mu in enumerate_partitions(k) {
                for nu in enumerate_partitions(m - k) {
                    out.push((la.clone(), mu.clone(), nu));
                }
            }
        }
    }
    out
}

/// Standard-tableau count by brute backtracking: place 1, 2, … one at a
/// time on the addable corners of the growing sub-shape.  Independent of
/// the hook-length route.
pub fn brute_syt_count(la: &Partition) -> num_bigint::BigUint {
    fn go(target: &[u32], filled: &mut Vec<u32>, remaining: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for r in 0..target.len() {
            let row_ok = filled[r] < target[r];
            let above_ok = r == 0 || filled[r] < filled[r - 1];
            if row_ok && above_ok {
                filled[r] += 1;
                total += go(target, filled, remaining - 1);
                filled[r] -= 1;
            }
        }
        total
    }
    let mut filled = vec![0u32; la.num_parts()];
    num_bigint::BigUint::from(go(la.parts(), &mut filled, la.size()))
}

/// Stirling number of the second kind by inclusion–exclusion,
/// `S(p,t) = (1/t!) Σ_i (−1)^i C(t,i)(t−i)^p` — an exact route that shares
/// nothing with the recurrence.
pub fn stirling2_by_sieve(p: usize, t: usize) -> num_bigint::BigUint {
    use num_bigint::BigInt;
    use num_traits::One;
    if t > p {
        return num_bigint::BigUint::default();
    }
    let mut acc = BigInt::default();
    let mut binom = BigInt::one();
    for i in 0..=t {
        let term = &binom * BigInt::from(t - i).pow(p as u32);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        // C(t, i+1) from C(t, i)
        if i < t {
            binom = binom * BigInt::from(t - i) / BigInt::from(i + 1);
        }
    }
    let t_fact: BigInt = (1..=t as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    let (q, r) = num_integer::Integer::div_rem(&acc, &t_fact);
    assert!(r == BigInt::default(), "sieve sum not divisible by t!");
    q.to_biguint().expect("nonnegative count")
}
