//! The fixed-point limit machinery: Poisson laws and distances between
//! them, Stirling numbers, the multiplicity of the defining representation
//! inside tensor powers, and exact moments of the fixed-point count after
//! `K` shuffles via the trace formula.
//!
//! The moment computation never touches the full partition lattice: the
//! multiplicity `m^λ_p` vanishes unless `λ₁ ≥ N − p` (the `N − t` ones of
//! the content have nowhere to go but row one), so only partitions with a
//! tail of size at most `p` enter, and exact moments at `N = 400` cost no
//! more than at `N = 10`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::partitions::{enumerate_partitions, Partition};
use crate::spectrum::{eigenvalue, ShuffleParams};
use crate::tableaux::{count_lr, count_ssyt, count_syt};
use crate::{Error, Result};

/// Probability mass ignored when truncating Poisson tails.
pub const POISSON_TAIL: f64 = 1e-15;
/// Largest moment order the exact trace formula is evaluated for.
pub const MOMENT_ORDER_LIMIT: usize = 4;
/// Header of the moment-report CSV.
pub const MOMENT_CSV_HEADER: &str = "p,K,exact,limit,abs_gap";

/// A Poisson distribution with positive rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonLaw {
    rate: f64,
}

impl PoissonLaw {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Poisson rate must be positive and finite, got {rate}"
            )));
        }
        Ok(PoissonLaw { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn pmf(&self, k: usize) -> f64 {
        let mut p = (-self.rate).exp();
        for i in 0..k {
            p *= self.rate / (i + 1) as f64;
        }
        p
    }

    /// Probabilities `0..=K` where `K` leaves tail mass below
    /// [`POISSON_TAIL`].
    pub fn pmf_vector(&self) -> Vec<f64> {
        let mut probs = Vec::new();
        let mut p = (-self.rate).exp();
        let mut cdf = 0.0;
        let mut k = 0usize;
        while cdf < 1.0 - POISSON_TAIL && k < 10_000 {
            probs.push(p);
            cdf += p;
            p *= self.rate / (k + 1) as f64;
            k += 1;
        }
        probs
    }
}

/// `½ Σ_k |p_k − q_k|` for two discrete laws on `{0, 1, …}`; the shorter
/// vector is zero-padded.
pub fn tv_discrete(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    0.5 * (0..len)
        .map(|k| {
            let a = p.get(k).copied().unwrap_or(0.0);
            let b = q.get(k).copied().unwrap_or(0.0);
            (a - b).abs()
        })
        .sum::<f64>()
}

/// Squared Hellinger distance `1 − Σ_k √(p_k q_k)` between discrete laws.
pub fn hellinger_sq(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().min(q.len());
    1.0 - (0..len).map(|k| (p[k] * q[k]).sqrt()).sum::<f64>()
}

/// Total-variation distance between two Poisson laws, via truncated pmfs.
pub fn tv_poisson(r1: f64, r2: f64) -> Result<f64> {
    let p = PoissonLaw::new(r1)?.pmf_vector();
    let q = PoissonLaw::new(r2)?.pmf_vector();
    Ok(tv_discrete(&p, &q))
}

/// The closed form `H²(Poiss(1), Poiss(1+x)) = 1 − e^{−½(√(1+x)−1)²}`,
/// which lower-bounds the total-variation distance of the same pair.
pub fn poisson_lower_bound(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidInput(format!(
            "lower bound needs x ≥ 0, got {x}"
        )));
    }
    let s = (1.0 + x).sqrt() - 1.0;
    Ok(1.0 - (-0.5 * s * s).exp())
}

/// The asymptotic lower-bound constant at window offset `c`,
/// `1 − e^{−½(√(1+½e^c)−1)²}`.
pub fn cutoff_lower_constant(c: f64) -> Result<f64> {
    poisson_lower_bound(0.5 * c.exp())
}

/// Stirling number of the second kind `S(p, t)` by the standard
/// recurrence.
pub fn stirling2(p: usize, t: usize) -> BigUint {
    if t > p {
        return BigUint::zero();
    }
    // row-by-row: S(i, j) = j·S(i−1, j) + S(i−1, j−1)
    let mut row = vec![BigUint::one()];
    for i in 1..=p {
        let mut next = Vec::with_capacity(i + 1);
        next.push(if i == 0 { BigUint::one() } else { BigUint::zero() });
        for j in 1..=i {
            let keep = row.get(j).cloned().unwrap_or_else(BigUint::zero);
            let split = row[j - 1].clone();
            next.push(keep * BigUint::from(j) + split);
        }
        row = next;
    }
    row.get(t).cloned().unwrap_or_else(BigUint::zero)
}

/// Multiplicity of the Specht module of λ inside the `p`-th tensor power of
/// the defining representation, `m^λ_p = Σ_t S(p,t)·K_{λ,(N−t,1^t)}`.
/// Zero whenever `λ₁ < N − p`.
pub fn multiplicity_mlp(la: &Partition, p: usize) -> Result<BigUint> {
    let n = la.size() as usize;
    let mut total = BigUint::zero();
    for t in 0..=p.min(n) {
        let s = stirling2(p, t);
        if s.is_zero() {
            continue;
        }
        let mut content = vec![(n - t) as u32];
        content.extend(std::iter::repeat_n(1u32, t));
        total += s * count_ssyt(la, &content)?;
    }
    Ok(total)
}

/// Builds the partition `(head, tail…)`, or `None` when the head cannot be
/// the largest part.
fn with_head(head: usize, tail: &Partition) -> Option<Partition> {
    if head == 0 {
        return tail.is_empty().then(Partition::empty);
    }
    if (tail.first() as usize) > head {
        return None;
    }
    let mut parts = Vec::with_capacity(1 + tail.num_parts());
    parts.push(head as u32);
    parts.extend_from_slice(tail.parts());
    Some(Partition::new(parts).expect("weakly decreasing by construction"))
}

/// The exact `p`-th moment of the fixed-point count after `k_steps`
/// shuffles, `Σ_λ m^λ_p Σ_{μ,ν} c^λ_{μν} f_μ f_ν Eig^K`, summed over the
/// polynomially many λ with `λ₁ ≥ N − p`.
///
/// # Errors
/// Unbalanced split, or moment order above [`MOMENT_ORDER_LIMIT`].
pub fn fix_moment_exact(p: usize, k_steps: usize, params: &ShuffleParams) -> Result<f64> {
    if p > MOMENT_ORDER_LIMIT {
        return Err(Error::ResourceGuard {
            what: "moment order",
            limit: MOMENT_ORDER_LIMIT,
            got: p,
        });
    }
    let n = params.balanced_n()?;
    let big_n = 2 * n;
    let mut total = 0.0f64;
    for j in 0..=p.min(big_n) {
        for tail in enumerate_partitions(j as u32) {
            let Some(la) = with_head(big_n - j, &tail) else {
                continue;
            };
            let m = multiplicity_mlp(&la, p)?;
            if m.is_zero() {
                continue;
            }
            let m_f = m.to_f64().expect("small multiplicity");
            // support pairs: c > 0 forces μ₁ + ν₁ ≥ λ₁, i.e. i₁ + i₂ ≤ j
            for i1 in 0..=j.min(n) {
                for t1 in enumerate_partitions(i1 as u32) {
                    let Some(mu) = with_head(n - i1, &t1) else {
                        continue;
                    };
                    let f_mu = count_syt(&mu).to_f64().expect("dimension fits f64");
                    for i2 in 0..=(j - i1).min(n) {
                        for t2 in enumerate_partitions(i2 as u32) {
                            let Some(nu) = with_head(n - i2, &t2) else {
                                continue;
                            };
                            let c = count_lr(&la, &mu, &nu);
                            if c.is_zero() {
                                continue;
                            }
                            let f_nu = count_syt(&nu).to_f64().expect("dimension fits f64");
                            let eig = eigenvalue(params, &la, &mu, &nu)?
                                .to_f64()
                                .expect("eigenvalue in [-1,1]");
                            total += m_f
                                * c.to_f64().expect("small coefficient")
                                * f_mu
                                * f_nu
                                * eig.powi(k_steps as i32);
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// The limiting `p`-th moment at window offset `c`,
/// `Σ_t S(p,t)·(1 + e^c/2)^t` — the `p`-th moment of
/// `Poiss(1 + e^c/2)`.
pub fn fix_moment_limit(p: usize, c: f64) -> f64 {
    let rate = 1.0 + 0.5 * c.exp();
    (0..=p)
        .map(|t| stirling2(p, t).to_f64().expect("small") * rate.powi(t as i32))
        .sum()
}
