//! The exact spectrum of the biased random transposition kernel.
//!
//! The deck `[N]` is split into `A = {1..nA}` and `B = {nA+1..N}`; one
//! shuffle draws two positions i.i.d. from the measure putting mass `a/N` on
//! each card of `A` and `b/N` on each card of `B` (`0 < b ≤ a`, `a + b = 2`)
//! and swaps them.  The transition matrix acts diagonally on isotypic
//! components indexed by triples `(λ, μ, ν)` with `μ ⊢ nA`, `ν ⊢ nB` and
//! `c^λ_{μν} > 0`; the eigenvalue of such a triple is
//!
//! ```text
//! Eig = (a²·nA + b²·nB)/N²
//!     + 2(a² − ab)/N² · Diag(μ)
//!     + 2(b² − ab)/N² · Diag(ν)
//!     + 2ab/N²        · Diag(λ)
//! ```
//!
//! with multiplicity `c^λ_{μν}·f_λ·f_μ·f_ν`.  Everything here is exact
//! rational arithmetic; floats appear only downstream in the bound modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::partitions::{enumerate_partitions, Partition};
use crate::tableaux::{count_syt, lr_support};
use crate::{Error, Result};

/// Largest deck size accepted by [`full_spectrum`]; the triple enumeration
/// grows super-polynomially beyond this.
pub const SPECTRUM_DECK_LIMIT: usize = 40;

fn rat_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rat_usize(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Parameters of the shuffle: the split sizes and the exact bias `b`.
///
/// `a = 2 − b` is derived.  The single-step measure assigns mass `a/N` to
/// each card of `A` and `b/N` to each card of `B`; for that to be a
/// probability measure, `a·nA + b·nB = N` must hold, which (given
/// `a + b = 2`) forces either a balanced split `nA = nB` or the unbiased
/// case `b = 1`.  The constructor rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleParams {
    n_a: usize,
    n_b: usize,
    b: BigRational,
    a: BigRational,
}

impl ShuffleParams {
    pub fn new(n_a: usize, n_b: usize, b: BigRational) -> Result<Self> {
        if n_a < 1 || n_b < 1 {
            return Err(Error::InvalidInput(format!(
                "both deck halves must be nonempty, got nA={n_a}, nB={n_b}"
            )));
        }
        if b <= BigRational::zero() || b > BigRational::one() {
            return Err(Error::InvalidInput(format!(
                "bias must satisfy 0 < b ≤ 1 (so that b ≤ a), got b = {b}"
            )));
        }
        if n_a != n_b && !b.is_one() {
            return Err(Error::InvalidInput(format!(
                "a·nA + b·nB = N fails for nA={n_a} ≠ nB={n_b} with b={b} ≠ 1; \
                 the step measure would not be a probability measure"
            )));
        }
        let a = rat_int(2) - &b;
        Ok(ShuffleParams { n_a, n_b, b, a })
    }

    /// Balanced split `nA = nB = n`, the main case.
    pub fn balanced(n: usize, b: BigRational) -> Result<Self> {
        Self::new(n, n, b)
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Total deck size `N = nA + nB`.
    pub fn deck_size(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// The half-deck size `n` of a balanced split.
    ///
    /// # Errors
    /// [`Error::UnbalancedSplit`] when `nA ≠ nB`.
    pub fn balanced_n(&self) -> Result<usize> {
        if self.n_a == self.n_b {
            Ok(self.n_a)
        } else {
            Err(Error::UnbalancedSplit {
                n_a: self.n_a,
                n_b: self.n_b,
            })
        }
    }

    /// Probability that one shuffle is a no-op: `(a²·nA + b²·nB)/N²`.
    pub fn id_mass(&self) -> BigRational {
        let n = rat_usize(self.deck_size());
        (&self.a * &self.a * rat_usize(self.n_a) + &self.b * &self.b * rat_usize(self.n_b))
            / (&n * &n)
    }
}

/// One isotypic component of the kernel: an eigenvalue with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub eig: BigRational,
    pub mult: BigUint,
}

/// Header of the spectrum CSV serialization.
pub const SPECTRUM_CSV_HEADER: &str = "lambda;mu;nu;eig_num;eig_den;mult";

impl SpectrumEntry {
    /// One CSV row matching [`SPECTRUM_CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        format!(
            "{};{};{};{};{};{}",
            self.lambda,
            self.mu,
            self.nu,
            self.eig.numer(),
            self.eig.denom(),
            self.mult
        )
    }
}

/// Eigenvalue of the triple `(λ, μ, ν)`.
///
/// # Errors
/// Rejects size mismatches (`|λ| = N`, `|μ| = nA`, `|ν| = nB` required).
pub fn eigenvalue(
    p: &ShuffleParams,
    la: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<BigRational> {
    if la.size() != p.deck_size() as u64
        || mu.size() != p.n_a() as u64
        || nu.size() != p.n_b() as u64
    {
        return Err(Error::InvalidInput(format!(
            "triple sizes (|λ|,|μ|,|ν|) = ({},{},{}) do not match (N,nA,nB) = ({},{},{})",
            la.size(),
            mu.size(),
            nu.size(),
            p.deck_size(),
            p.n_a(),
            p.n_b()
        )));
    }
    let n = rat_usize(p.deck_size());
    let n_sq = &n * &n;
    let (a, b) = (p.a(), p.b());
    let ab = a * b;
    let two = rat_int(2);
    let mu_coef = &two * (a * a - &ab) / &n_sq;
    let nu_coef = &two * (b * b - &ab) / &n_sq;
    let la_coef = &two * &ab / &n_sq;
    Ok(p.id_mass()
        + mu_coef * rat_int(mu.diag_index())
        + nu_coef * rat_int(nu.diag_index())
        + la_coef * rat_int(la.diag_index()))
}

/// The complete spectrum: every LR triple with its eigenvalue and
/// multiplicity, λ in reverse-lexicographic order, support pairs nested
/// within.  `Σ mult = N!` and `Σ mult·eig = N!·id_mass`.
///
/// # Errors
/// Resource guard at `N >` [`SPECTRUM_DECK_LIMIT`].
pub fn full_spectrum(p: &ShuffleParams) -> Result<Vec<SpectrumEntry>> {
    let n = p.deck_size();
    if n > SPECTRUM_DECK_LIMIT {
        return Err(Error::ResourceGuard {
            what: "full_spectrum deck size",
            limit: SPECTRUM_DECK_LIMIT,
            got: n,
        });
    }
    let lambdas = enumerate_partitions(n as u32);
    let per_lambda: Vec<Result<Vec<SpectrumEntry>>> = lambdas
        .par_iter()
        .map(|la| {
            let f_la = count_syt(la);
            let mut rows = Vec::new();
            for (mu, nu, c) in lr_support(la, p.n_a() as u32, p.n_b() as u32)? {
                let eig = eigenvalue(p, la, &mu, &nu)?;
                let mult = &c * &f_la * count_syt(&mu) * count_syt(&nu);
                rows.push(SpectrumEntry {
                    lambda: la.clone(),
                    mu,
                    nu,
                    eig,
                    mult,
                });
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_lambda {
        out.extend(rows?);
    }
    Ok(out)
}

/// Classical random-transposition eigenvalue `D_μ = 1/n + (2/n²)·Diag(μ)`
/// for `μ ⊢ n`.
///
/// # Errors
/// Rejects `|μ| ≠ n`.
pub fn rt_eigenvalue(mu: &Partition, n: usize) -> Result<BigRational> {
    if mu.size() != n as u64 {
        return Err(Error::InvalidInput(format!(
            "rt_eigenvalue needs |μ| = n, got |{mu}| = {} vs n = {n}",
            mu.size()
        )));
    }
    let n = rat_usize(n);
    Ok(BigRational::one() / &n + rat_int(2) * rat_int(mu.diag_index()) / (&n * &n))
}

/// Upper envelope for the eigenvalues over a fixed pair `(μ, ν)`:
///
/// ```text
/// |Eig(λ,μ,ν)| ≤ (a²/4)|D_μ| + (b²/4)|D_ν| + (ab/2)·max{⟨μ,ν⟩, ⟨μ*,ν*⟩}/n²
/// ```
///
/// for every `λ` in the support.  Balanced split only.
pub fn eig_rt_envelope(p: &ShuffleParams, mu: &Partition, nu: &Partition) -> Result<BigRational> {
    let n = p.balanced_n()?;
    if mu.size() != n as u64 || nu.size() != n as u64 {
        return Err(Error::InvalidInput(format!(
            "envelope needs |μ| = |ν| = n = {n}, got {} and {}",
            mu.size(),
            nu.size()
        )));
    }
    let (a, b) = (p.a(), p.b());
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let cross = mu
        .inner_product(nu)
        .max(mu.conjugate().inner_product(&nu.conjugate()));
    let n_sq = rat_usize(n) * rat_usize(n);
    Ok(a * a * &quarter * rt_eigenvalue(mu, n)?.abs()
        + b * b * &quarter * rt_eigenvalue(nu, n)?.abs()
        + a * b * &half * rat_int(cross) / n_sq)
}
