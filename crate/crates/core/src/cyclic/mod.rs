//! Exact arithmetic on cyclic covers `w^N = ∏ (z − x_μ)^{a_μ}` of the sphere
//! branched over four points.
//!
//! Everything here is integer arithmetic. Roots of unity `ε^e` are carried as
//! exponents `e mod N`, so products of eigenvalues become sums of exponents and
//! "`∏ u = 1`" becomes a congruence.

mod matching;
mod teichmuller;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParamError, Result};

pub use matching::maximum_matching;
pub use teichmuller::teichmuller_spectrum;

/// Degree and branching exponents of a cyclic cover `M_N(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverParams {
    n: u32,
    a: [u32; 4],
}

impl CoverParams {
    /// Checks `0 < a_μ < N`, `gcd(N, a) = 1` and `Σ a_μ ≡ 0 (mod N)`.
    pub fn new(n: u32, a: [i64; 4]) -> Result<Self, ParamError> {
        if n < 2 {
            return Err(ParamError::DegreeTooSmall { n });
        }
        for (i, &v) in a.iter().enumerate() {
            if v <= 0 || v >= n as i64 {
                return Err(ParamError::ExponentOutOfRange { index: i + 1, value: v, n });
            }
        }
        let a = a.map(|v| v as u32);
        let gcd = a.iter().fold(n, |g, &v| g.gcd(&v));
        if gcd != 1 {
            return Err(ParamError::NotCoprime { gcd });
        }
        let sum: i64 = a.iter().map(|&v| v as i64).sum();
        if sum % n as i64 != 0 {
            return Err(ParamError::SumNotDivisible { sum, n });
        }
        Ok(Self { n, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> [u32; 4] {
        self.a
    }

    /// Ramification order `d_μ = N / gcd(a_μ, N)` over each branch point.
    pub fn ramification(&self) -> [u32; 4] {
        self.a.map(|v| self.n / v.gcd(&self.n))
    }
}

impl fmt::Display for CoverParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4] = self.a;
        write!(f, "{}:{a1},{a2},{a3},{a4}", self.n)
    }
}

impl FromStr for CoverParams {
    type Err = Error;

    /// Parses `N:a1,a2,a3,a4`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, a) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected N:a1,a2,a3,a4, got {s:?}")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad cover degree {n:?}")))?;
        Ok(CoverParams::new(n, parse_exponents(a)?)?)
    }
}

/// Parses a comma-separated list of exactly four integers.
pub fn parse_exponents(s: &str) -> Result<[i64; 4]> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad exponent list {s:?}")))?;
    parts
        .try_into()
        .map_err(|_| Error::Parse(format!("expected four exponents, got {s:?}")))
}

/// `g = N + 1 − ½ Σ gcd(a_μ, N)`.
pub fn genus(p: &CoverParams) -> u32 {
    let fixed: u32 = p.a.iter().map(|v| v.gcd(&p.n)).sum();
    // Σ a_μ ≡ 0 forces an even number of odd terms here.
    p.n + 1 - fixed / 2
}

/// Dimensions of the eigenspaces `L_i` of `T*` on holomorphic one-forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenspaceDims {
    /// `dims[i - 1] = dim L_i` for `i = 1..N-1`.
    pub dims: Vec<u32>,
}

impl EigenspaceDims {
    /// `dim L_i`, `1 ≤ i < N`.
    pub fn get(&self, i: u32) -> u32 {
        self.dims[i as usize - 1]
    }

    pub fn total(&self) -> u32 {
        self.dims.iter().sum()
    }
}

/// `dim L_i = Σ_μ ⟨i a_μ / N⟩ − 1`, evaluated as `Σ (i a_μ mod N) / N − 1`.
pub fn eigenspace_dims(p: &CoverParams) -> EigenspaceDims {
    let n = p.n as u64;
    let dims = (1..n)
        .map(|i| {
            let numer: u64 = p.a.iter().map(|&a| (i * a as u64) % n).sum();
            debug_assert_eq!(numer % n, 0);
            (numer / n - 1) as u32
        })
        .collect();
    EigenspaceDims { dims }
}

/// Smallest `m ∈ [0, N)` with `2 m a_μ ≡ N (mod 2N)` for every `μ`.
///
/// When it exists the pulled-back pillowcase differential is the square of a
/// form in `L_m`.
pub fn square_root_index(p: &CoverParams) -> Option<u32> {
    let n = p.n as u64;
    (0..n)
        .find(|&m| p.a.iter().all(|&a| (2 * m * a as u64) % (2 * n) == n))
        .map(|m| m as u32)
}

/// Eigenvalues `u_i(T) = ε^{e_i}` of the deck generator on `𝔐_q^+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnitySpectrum {
    order: u32,
    exponents: Vec<u32>,
}

impl RootOfUnitySpectrum {
    pub fn new(order: u32, exponents: Vec<u32>) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidExponents("order must be positive".into()));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidExponents("spectrum is empty".into()));
        }
        if let Some(e) = exponents.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidExponents(format!("exponent {e} is not reduced mod {order}")));
        }
        if !exponents.contains(&0) {
            return Err(Error::InvalidExponents("spectrum must contain the trivial eigenvalue".into()));
        }
        Ok(Self { order, exponents })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn genus(&self) -> usize {
        self.exponents.len()
    }

    /// Allowed entries of `B^a(q)`: `(i, k)` with `u_i u_k = 1`.
    pub fn support(&self) -> Vec<Vec<bool>> {
        let n = self.order;
        self.exponents
            .iter()
            .map(|&ei| self.exponents.iter().map(|&ek| (ei + ek) % n == 0).collect())
            .collect()
    }
}

/// Exponent multiset `{(i − j) mod N : i = 1..N-1, with multiplicity dim L_i}`
/// where `j` is the square-root index.
pub fn mqplus_spectrum(p: &CoverParams) -> Result<RootOfUnitySpectrum> {
    let j = square_root_index(p).ok_or_else(|| Error::NotOrientable(p.to_string()))?;
    let dims = eigenspace_dims(p);
    let n = p.n;
    let exponents = (1..n)
        .flat_map(|i| std::iter::repeat_n((i + n - j) % n, dims.get(i) as usize))
        .collect();
    RootOfUnitySpectrum::new(n, exponents)
}

fn check_index_set(set: &[usize], genus: usize) -> Result<()> {
    let mut seen = vec![false; genus + 1];
    for &i in set {
        if i == 0 || i > genus {
            return Err(Error::IndexOutOfRange { index: i, genus });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex { index: i });
        }
    }
    Ok(())
}

/// Whether the minor `det B_{IJ}` is forced to vanish, i.e.
/// `∏_{i∈I} ∏_{j∈J} u_i u_j ≠ 1`. Indices are 1-based.
pub fn forced_zero_minor(s: &RootOfUnitySpectrum, rows: &[usize], cols: &[usize]) -> Result<bool> {
    if rows.is_empty() || rows.len() != cols.len() {
        return Err(Error::IndexSizeMismatch { left: rows.len(), right: cols.len() });
    }
    check_index_set(rows, s.genus())?;
    check_index_set(cols, s.genus())?;
    let n = s.order as u64;
    let sum = |set: &[usize]| set.iter().map(|&i| s.exponents[i - 1] as u64).sum::<u64>();
    let total = cols.len() as u64 * sum(rows) + rows.len() as u64 * sum(cols);
    Ok(!total.is_multiple_of(n))
}

/// Best bound `rank(H_q) ≤ g − k` obtainable when every `k × k` minor is
/// forced to vanish; returns `g` when no `k` qualifies. Only `k < g` is
/// considered: `Λ₁ ≡ 1` keeps the rank at least one.
pub fn corollary_rank_bound(s: &RootOfUnitySpectrum) -> usize {
    let g = s.genus();
    let n = s.order as usize;
    // reachable[k][r]: some k-subset has exponent sum ≡ r.
    let mut reachable = vec![vec![false; n]; g + 1];
    reachable[0][0] = true;
    for &e in &s.exponents {
        for k in (0..g).rev() {
            for r in 0..n {
                if reachable[k][r] {
                    reachable[k + 1][(r + e as usize) % n] = true;
                }
            }
        }
    }
    for k in (1..g).rev() {
        let sums: Vec<usize> = (0..n).filter(|&r| reachable[k][r]).collect();
        let all_forced = sums
            .iter()
            .all(|&x| sums.iter().all(|&y| (k * (x + y)) % n != 0));
        if all_forced {
            return g - k;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TotallyDegenerate,
    Inconclusive,
}

/// Rank bounds on the form `H_q` and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBoundReport {
    /// Maximum rank of any matrix supported on the allowed entries of `B`.
    pub structural_rank: usize,
    /// Bound from requiring every `k × k` minor to vanish (`g` if vacuous).
    pub corollary_bound: usize,
    pub verdict: Verdict,
    /// Set for genus-one covers, where degeneracy holds for lack of any
    /// nontrivial exponent.
    pub genus_one: bool,
}

/// Structural rank of the zero pattern of `B^T(q)` forced by the spectrum.
/// Since `H = conj(B) B`, this bounds `rank(H_q)` from above.
pub fn structural_rank_bound(s: &RootOfUnitySpectrum) -> RankBoundReport {
    let structural_rank = maximum_matching(&s.support());
    let verdict = if structural_rank == 1 {
        Verdict::TotallyDegenerate
    } else {
        Verdict::Inconclusive
    };
    RankBoundReport {
        structural_rank,
        corollary_bound: corollary_rank_bound(s),
        verdict,
        genus_one: s.genus() == 1,
    }
}

/// Orientability, spectrum and rank bound composed for one cover.
pub fn degeneracy_verdict(p: &CoverParams) -> Result<RankBoundReport> {
    Ok(structural_rank_bound(&mqplus_spectrum(p)?))
}

/// Everything the arithmetic side knows about a cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverAnalysis {
    pub params: CoverParams,
    pub genus: u32,
    pub eigenspace_dims: Vec<u32>,
    pub square_root_index: Option<u32>,
    pub orientable: bool,
    pub spectrum_exponents: Option<Vec<u32>>,
    pub rank_bound: Option<RankBoundReport>,
}

pub fn analyze(p: &CoverParams) -> CoverAnalysis {
    let spectrum = mqplus_spectrum(p).ok();
    CoverAnalysis {
        params: *p,
        genus: genus(p),
        eigenspace_dims: eigenspace_dims(p).dims,
        square_root_index: square_root_index(p),
        orientable: spectrum.is_some(),
        spectrum_exponents: spectrum.as_ref().map(|s| s.exponents.clone()),
        rank_bound: spectrum.as_ref().map(structural_rank_bound),
    }
}
