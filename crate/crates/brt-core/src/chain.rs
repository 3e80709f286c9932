//! The shuffle as a concrete Markov chain on the symmetric group: the law of
//! one step, exact distribution evolution for tiny decks, total-variation
//! distance, Monte Carlo walks for large decks, and a numeric eigensolver
//! oracle against which the exact spectrum is validated.
//!
//! Permutations are indexed by Lehmer rank (factorial number system), so a
//! distribution over `S_N` is a dense vector of length `N!`.  One shuffle is
//! *left* multiplication by the sampled transposition — the two sampled
//! cards swap as values — and the composition order matters for fixed-point
//! trajectories even though distances to uniform do not depend on it.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::spectrum::ShuffleParams;
use crate::{Error, Result};

/// Largest deck for dense distribution evolution (`N!·C(N,2)` work a step).
pub const EVOLVE_DECK_LIMIT: usize = 9;
/// Largest deck for exact rational evolution.  Exact vectors are what make
/// the deep tail of the total-variation curve trustworthy: past `t ≈ 90` at
/// `N = 6` the true distance falls below the floating-point noise floor of
/// [`evolve`], so inequality checks there must run in rationals.
pub const EVOLVE_EXACT_DECK_LIMIT: usize = 6;
/// Largest deck for the dense numeric eigendecomposition (`N!×N!` matrix).
pub const ORACLE_DECK_LIMIT: usize = 6;

fn factorial_usize(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

/// A permutation of `{0, …, N−1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, …, len−1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Left-multiplies by the transposition of the *values* `i` and `j`.
    pub fn swap_values(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let pi = self.images.iter().position(|&x| x == i).expect("value present");
        let pj = self.images.iter().position(|&x| x == j).expect("value present");
        self.images.swap(pi, pj);
    }

    /// Lehmer rank: the index of this permutation in lexicographic order.
    pub fn rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Self {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            digits[i] = rank % (n - i);
            rank /= n - i;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let images = digits.iter().map(|&d| pool.remove(d)).collect();
        Permutation { images }
    }
}

/// Number of fixed points `|{i : π(i) = i}|`.
pub fn count_fixed_points(perm: &Permutation) -> usize {
    perm.images
        .iter()
        .enumerate()
        .filter(|&(i, &x)| i == x)
        .count()
}

/// The law of a single shuffle: a point mass at the identity plus a weight
/// for each transposition, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMeasure {
    n_cards: usize,
    id_mass: BigRational,
    weights: BTreeMap<(usize, usize), BigRational>,
}

impl StepMeasure {
    pub fn n_cards(&self) -> usize {
        self.n_cards
    }

    pub fn id_mass(&self) -> &BigRational {
        &self.id_mass
    }

    /// Weight of the transposition `{i, j}` (unordered, `i ≠ j`).
    pub fn weight(&self, i: usize, j: usize) -> &BigRational {
        &self.weights[&(i.min(j), i.max(j))]
    }

    /// All `(pair, weight)` entries in sorted pair order.
    pub fn weights(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.weights.iter()
    }
}

/// The single-step measure of the shuffle: identity mass `(a²nA + b²nB)/N²`,
/// pair weight `2a²/N²`, `2b²/N²`, or `2ab/N²` according to whether the two
/// cards lie in `A`, in `B`, or one in each.
pub fn step_measure(p: &ShuffleParams) -> StepMeasure {
    let n = p.deck_size();
    let n_sq = BigRational::from_integer(num_bigint::BigInt::from(n * n));
    let (a, b) = (p.a(), p.b());
    let two = BigRational::from_integer(num_bigint::BigInt::from(2));
    let w_aa = &two * a * a / &n_sq;
    let w_bb = &two * b * b / &n_sq;
    let w_ab = &two * a * b / &n_sq;
    let mut weights = BTreeMap::new();
    let mut total = p.id_mass();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = match (i < p.n_a(), j < p.n_a()) {
                (true, true) => w_aa.clone(),
                (false, false) => w_bb.clone(),
                _ => w_ab.clone(),
            };
            total += &w;
            weights.insert((i, j), w);
        }
    }
    // a·nA + b·nB = N (enforced by ShuffleParams) makes the measure exact
    debug_assert!(total.is_one());
    StepMeasure {
        n_cards: n,
        id_mass: p.id_mass(),
        weights,
    }
}

/// A probability distribution over `S_N`, dense in Lehmer-rank order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDistribution {
    n_cards: usize,
    probs: Vec<f64>,
}

impl GroupDistribution {
    /// Point mass at the identity permutation.
    pub fn at_identity(n_cards: usize) -> Self {
        let mut probs = vec![0.0; factorial_usize(n_cards)];
        probs[0] = 1.0;
        GroupDistribution { n_cards, probs }
    }

    pub fn uniform(n_cards: usize) -> Self {
        let m = factorial_usize(n_cards);
        GroupDistribution {
            n_cards,
            probs: vec![1.0 / m as f64; m],
        }
    }

    /// Wraps an explicit vector, checking length, sign, and normalization
    /// (sum within `1e−12` of one).
    pub fn from_probs(n_cards: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != factorial_usize(n_cards) {
            return Err(Error::InvalidInput(format!(
                "distribution over S_{n_cards} needs {} entries, got {}",
                factorial_usize(n_cards),
                probs.len()
            )));
        }
        if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidInput(
                "distribution entries must be finite and ≥ 0".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "distribution sums to {sum}, not 1"
            )));
        }
        Ok(GroupDistribution { n_cards, probs })
    }

    pub fn n_cards(&self) -> usize {
        self.n_cards
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Ranks of `τ∘x` for every rank `x` and every transposition, in the sorted
/// pair order of [`StepMeasure::weights`].
fn neighbor_table(n: usize) -> Vec<Vec<usize>> {
    let m = factorial_usize(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    (0..m)
        .map(|x| {
            let mut perm = Permutation::unrank(n, x);
            pairs
                .iter()
                .map(|&(i, j)| {
                    perm.swap_values(i, j);
                    let y = perm.rank();
                    perm.swap_values(i, j);
                    y
                })
                .collect()
        })
        .collect()
}

/// Evolves a distribution by `t` shuffles:
/// `new[x] = id_mass·old[x] + Σ_τ w(τ)·old[τ∘x]`.
///
/// # Errors
/// Resource guard at `N >` [`EVOLVE_DECK_LIMIT`].
pub fn evolve(dist: &GroupDistribution, m: &StepMeasure, t: usize) -> Result<GroupDistribution> {
    let n = dist.n_cards();
    if n != m.n_cards() {
        return Err(Error::InvalidInput(format!(
            "distribution is over S_{n} but the step measure over S_{}",
            m.n_cards()
        )));
    }
    if n > EVOLVE_DECK_LIMIT {
        return Err(Error::ResourceGuard {
            what: "evolve deck size",
            limit: EVOLVE_DECK_LIMIT,
            got: n,
        });
    }
    let neighbors = neighbor_table(n);
    let id_mass = m.id_mass().to_f64().expect("small rational");
    let w: Vec<f64> = m
        .weights()
        .map(|(_, v)| v.to_f64().expect("small rational"))
        .collect();
    let mut cur = dist.probs.clone();
    let mut next = vec![0.0; cur.len()];
    for _ in 0..t {
        next.iter_mut().enumerate().for_each(|(x, slot)| {
            let mut acc = id_mass * cur[x];
            for (k, &y) in neighbors[x].iter().enumerate() {
                acc += w[k] * cur[y];
            }
            *slot = acc;
        });
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(GroupDistribution {
        n_cards: n,
        probs: cur,
    })
}

/// Exact-rational counterpart of [`evolve`], for identity tests.
///
/// # Errors
/// Resource guard at `N >` [`EVOLVE_EXACT_DECK_LIMIT`].
pub fn evolve_exact(
    probs: &[BigRational],
    n_cards: usize,
    m: &StepMeasure,
    t: usize,
) -> Result<Vec<BigRational>> {
    if n_cards > EVOLVE_EXACT_DECK_LIMIT {
        return Err(Error::ResourceGuard {
            what: "evolve_exact deck size",
            limit: EVOLVE_EXACT_DECK_LIMIT,
            got: n_cards,
        });
    }
    if probs.len() != factorial_usize(n_cards) {
        return Err(Error::InvalidInput(format!(
            "expected {} entries, got {}",
            factorial_usize(n_cards),
            probs.len()
        )));
    }
    let neighbors = neighbor_table(n_cards);
    let weights: Vec<&BigRational> = m.weights().map(|(_, v)| v).collect();
    let mut cur = probs.to_vec();
    for _ in 0..t {
        let next: Vec<BigRational> = (0..cur.len())
            .map(|x| {
                let mut acc = m.id_mass() * &cur[x];
                for (k, &y) in neighbors[x].iter().enumerate() {
                    acc += weights[k] * &cur[y];
                }
                acc
            })
            .collect();
        cur = next;
    }
    Ok(cur)
}

/// Exact total-variation distance to uniform for a rational distribution.
pub fn tv_to_uniform_exact(probs: &[BigRational]) -> BigRational {
    let u = BigRational::new(1.into(), (probs.len() as u64).into());
    let two = BigRational::from_integer(2.into());
    probs
        .iter()
        .map(|p| {
            let d = p - &u;
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
        .sum::<BigRational>()
        / two
}

/// Exact return probability `P^k(e, e)` by convolving the step measure with
/// itself `k` times.  `N!` times this value is the trace of `P^k`.
///
/// # Errors
/// Resource guard at `N >` [`EVOLVE_EXACT_DECK_LIMIT`].
pub fn return_probability(p: &ShuffleParams, k: usize) -> Result<BigRational> {
    let n = p.deck_size();
    let mut probs = vec![BigRational::zero(); factorial_usize(n)];
    probs[0] = BigRational::one();
    let evolved = evolve_exact(&probs, n, &step_measure(p), k)?;
    Ok(evolved[0].clone())
}

/// Total-variation distance to the uniform distribution,
/// `½ Σ_x |p(x) − 1/N!|`.
pub fn tv_to_uniform(dist: &GroupDistribution) -> f64 {
    let u = 1.0 / dist.probs.len() as f64;
    0.5 * dist.probs.iter().map(|p| (p - u).abs()).sum::<f64>()
}

/// Total-variation distance between two distributions on the same group.
pub fn tv_between(d1: &GroupDistribution, d2: &GroupDistribution) -> f64 {
    debug_assert_eq!(d1.n_cards, d2.n_cards);
    0.5 * d1
        .probs
        .iter()
        .zip(&d2.probs)
        .map(|(p, q)| (p - q).abs())
        .sum::<f64>()
}

/// A deterministic RNG for walk `stream` under a master `seed`; distinct
/// streams are independent, so parallel Monte Carlo is reproducible
/// regardless of thread scheduling.
pub fn walk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs the shuffle for `t` steps from the identity: each step draws two
/// cards i.i.d. from the biased measure (mass `a/N` on `A`, `b/N` on `B`)
/// and swaps them as values; equal draws are a no-op, which is exactly the
/// identity mass of [`step_measure`].
pub fn sample_walk<R: Rng>(p: &ShuffleParams, t: usize, rng: &mut R) -> Permutation {
    let n = p.deck_size();
    let n_a = p.n_a();
    let mass_a = (p.a() * BigRational::from_integer(num_bigint::BigInt::from(n_a))
        / BigRational::from_integer(num_bigint::BigInt::from(n)))
    .to_f64()
    .expect("small rational");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut inv: Vec<usize> = (0..n).collect();
    let draw = |rng: &mut R| -> usize {
        if rng.gen::<f64>() < mass_a {
            rng.gen_range(0..n_a)
        } else {
            n_a + rng.gen_range(0..n - n_a)
        }
    };
    for _ in 0..t {
        let i = draw(rng);
        let j = draw(rng);
        if i != j {
            let (pi, pj) = (inv[i], inv[j]);
            perm[pi] = j;
            perm[pj] = i;
            inv[i] = pj;
            inv[j] = pi;
        }
    }
    Permutation { images: perm }
}

/// Histogram of fixed-point counts over `samples` independent walks of
/// length `t`, deterministically seeded per walk; entry `k` counts walks
/// ending with exactly `k` fixed points.
pub fn empirical_fixed_point_histogram(
    p: &ShuffleParams,
    t: usize,
    samples: usize,
    seed: u64,
) -> Vec<u64> {
    let n = p.deck_size();
    (0..samples)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, w| {
                let mut rng = walk_rng(seed, w as u64);
                let perm = sample_walk(p, t, &mut rng);
                hist[count_fixed_points(&perm)] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut acc, hist| {
                for (a, h) in acc.iter_mut().zip(hist) {
                    *a += h;
                }
                acc
            },
        )
}

/// The distribution of the fixed-point count under `dist`: entry `k` is the
/// probability of drawing a permutation with exactly `k` fixed points.
pub fn fixed_point_law(dist: &GroupDistribution) -> Vec<f64> {
    let n = dist.n_cards();
    let mut law = vec![0.0; n + 1];
    for (x, &p) in dist.probs.iter().enumerate() {
        law[count_fixed_points(&Permutation::unrank(n, x))] += p;
    }
    law
}

/// Eigenvalues of the explicit `N!×N!` transition matrix, sorted descending,
/// via a dense symmetric eigensolver.
///
/// # Errors
/// Resource guard at `N >` [`ORACLE_DECK_LIMIT`].
pub fn numeric_spectrum_oracle(p: &ShuffleParams) -> Result<Vec<f64>> {
    let n = p.deck_size();
    if n > ORACLE_DECK_LIMIT {
        return Err(Error::ResourceGuard {
            what: "numeric oracle deck size",
            limit: ORACLE_DECK_LIMIT,
            got: n,
        });
    }
    let mat = transition_matrix_f64(p);
    let m = mat.len();
    let dm = nalgebra::DMatrix::from_fn(m, m, |r, c| mat[r][c]);
    let mut eigs: Vec<f64> = nalgebra::linalg::SymmetricEigen::new(dm)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(eigs)
}

/// The explicit transition matrix in floating point; symmetric by
/// construction (`P(x, τ∘x)` and `P(τ∘x, x)` are set from the same weight).
fn transition_matrix_f64(p: &ShuffleParams) -> Vec<Vec<f64>> {
    let n = p.deck_size();
    let m = factorial_usize(n);
    let measure = step_measure(p);
    let id_mass = measure.id_mass().to_f64().expect("small rational");
    let neighbors = neighbor_table(n);
    let w: Vec<f64> = measure
        .weights()
        .map(|(_, v)| v.to_f64().expect("small rational"))
        .collect();
    let mut mat = vec![vec![0.0; m]; m];
    for x in 0..m {
        mat[x][x] = id_mass;
        for (k, &y) in neighbors[x].iter().enumerate() {
            mat[x][y] = w[k];
        }
    }
    mat
}

#[cfg(test)]
pub(crate) fn transition_matrix_exact(p: &ShuffleParams) -> Vec<Vec<BigRational>> {
    let n = p.deck_size();
    let m = factorial_usize(n);
    let measure = step_measure(p);
    let neighbors = neighbor_table(n);
    let w: Vec<BigRational> = measure.weights().map(|(_, v)| v.clone()).collect();
    let mut mat = vec![vec![BigRational::zero(); m]; m];
    for x in 0..m {
        mat[x][x] = measure.id_mass().clone();
        for (k, &y) in neighbors[x].iter().enumerate() {
            mat[x][y] = w[k].clone();
        }
    }
    mat
}
