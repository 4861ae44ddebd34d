//! Descent-algebra card shuffles on `S_n`.
//!
//! For a subset `L` of simple roots, `X_L` is the set of permutations whose
//! descent set avoids `L`; it has `n!/|S_L|` elements. A [`ShuffleSpec`]
//! assigns probabilities `p_L`, and the shuffle is the probability measure
//! `Σ_L p_L · |S_L|/n! · X_L`, i.e. draw `L` with probability `p_L`, then a
//! uniform element of `X_L`.
//!
//! Powers of a measure are the distributions of products `g_1 g_2 ⋯ g_r` of
//! independent draws.

mod permutation;
mod sampler;

pub use permutation::{all_permutations, factorial_usize, Permutation};
pub use sampler::{stream_rng, ShuffleSampler};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::parabolic::{class_ratio, for_each_cycle_distribution, RootSubset};
use crate::partitions::{factorial, Composition, Partition};
use crate::scalar::{parse_ratio, ratio, Rational, Scalar};

/// Largest degree for which measures over all of `S_n` are materialized.
pub const DEFAULT_EXACT_MAX_N: usize = 8;

fn check_capacity(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        Err(Error::Capacity { n, max: max_n })
    } else {
        Ok(())
    }
}

/// Probabilities `p_L` over root subsets of `S_n`, summing to exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ShuffleSpec {
    n: usize,
    weights: Vec<(RootSubset, Rational)>,
}

impl ShuffleSpec {
    /// Merges repeated subsets and drops zero weights.
    pub fn new(
        n: usize,
        weights: impl IntoIterator<Item = (RootSubset, Rational)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<RootSubset, Rational> = BTreeMap::new();
        for (rs, p) in weights {
            if rs.n() != n {
                return Err(invalid(format!(
                    "root subset for degree {} in a degree-{n} shuffle",
                    rs.n()
                )));
            }
            if p.is_negative() {
                return Err(invalid(format!("negative weight {p} on L={rs}")));
            }
            *merged.entry(rs).or_insert_with(Rational::zero) += p;
        }
        merged.retain(|_, p| !p.is_zero());
        let total: Rational = merged.values().sum();
        if !total.is_one() {
            return Err(invalid(format!("weights sum to {total}, not 1")));
        }
        Ok(ShuffleSpec {
            n,
            weights: merged.into_iter().collect(),
        })
    }

    /// Remove the top card and insert it at a uniform position:
    /// `L = Π − {ε_1 − ε_2}`, type `(1, n−1)`.
    pub fn top_to_random(n: usize) -> Result<Self> {
        Self::top_k_to_random(n, 1)
    }

    /// Remove the top `k` cards and insert them one by one at random:
    /// `L = Π − {first k roots}`, type `(1, …, 1, n−k)`.
    pub fn top_k_to_random(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(invalid(format!(
                "top-k-to-random needs 1 <= k <= n-1, got k={k}, n={n}"
            )));
        }
        Self::single(RootSubset::new(n, k + 1..n)?)
    }

    /// Cut exactly `k` cards and riffle them into the rest:
    /// `L = Π − {ε_k − ε_{k+1}}`, type `(k, n−k)`. The classical range is
    /// `k ≤ n/2`; larger `k` gives the mirror-image shuffle.
    pub fn riffle_k_cut(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(invalid(format!(
                "k-cut riffle needs 1 <= k <= n-1, got k={k}, n={n}"
            )));
        }
        Self::single(RootSubset::new(n, (1..n).filter(|&i| i != k))?)
    }

    pub fn single(rs: RootSubset) -> Result<Self> {
        let n = rs.n();
        Self::new(n, [(rs, Rational::one())])
    }

    /// Uniform on `S_n` (`p_∅ = 1`).
    pub fn uniform(n: usize) -> Self {
        ShuffleSpec {
            n,
            weights: vec![(RootSubset::empty(n), Rational::one())],
        }
    }

    /// Convex combination of shuffles of one degree.
    pub fn mixture(parts: &[(Rational, &ShuffleSpec)]) -> Result<Self> {
        let n = parts.first().ok_or_else(|| invalid("empty mixture"))?.1.n;
        let mut weights = Vec::new();
        for (w, spec) in parts {
            if spec.n != n {
                return Err(invalid("mixture of shuffles of different degrees"));
            }
            weights.extend(spec.weights.iter().map(|(rs, p)| (rs.clone(), w * p)));
        }
        Self::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[(RootSubset, Rational)] {
        &self.weights
    }

    /// Text form, one `L=<indices|empty> p=<num>/<den>` line per subset.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (rs, p) in &self.weights {
            let _ = writeln!(out, "L={rs} p={}/{}", p.numer(), p.denom());
        }
        out
    }

    /// Parses the text form for degree `n`. Blank lines and `#` comments
    /// are ignored.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut weights = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let mut subset = None;
            let mut prob = None;
            for tok in line.split_whitespace() {
                if let Some(v) = tok.strip_prefix("L=") {
                    subset = Some(RootSubset::parse(n, v).map_err(|e| err(e.to_string()))?);
                } else if let Some(v) = tok.strip_prefix("p=") {
                    prob =
                        Some(parse_ratio(v).ok_or_else(|| err(format!("bad probability {v:?}")))?);
                } else {
                    return Err(err(format!("unexpected token {tok:?}")));
                }
            }
            match (subset, prob) {
                (Some(s), Some(p)) => weights.push((s, p)),
                _ => return Err(err("expected L=... p=...".into())),
            }
        }
        Self::new(n, weights)
    }
}

/// All `g` with `descent_set(g) ∩ L = ∅`, in rank order.
///
/// Built directly: choose which values occupy each block of positions, then
/// write each block in increasing order.
pub fn x_l_support(rs: &RootSubset) -> Result<Vec<Permutation>> {
    x_l_support_with_max(rs, DEFAULT_EXACT_MAX_N)
}

pub fn x_l_support_with_max(rs: &RootSubset, max_n: usize) -> Result<Vec<Permutation>> {
    check_capacity(rs.n(), max_n)?;
    let mu = rs.composition();
    let mut out = Vec::new();
    let mut counts = mu.parts().to_vec();
    let mut word = Vec::with_capacity(rs.n());
    block_words(&mut counts, &mut word, rs.n(), &mut |w| {
        out.push(word_to_permutation(mu.parts(), w))
    });
    out.sort_by_key(Permutation::rank);
    Ok(out)
}

/// Every word of length `len` using letter `k` exactly `counts[k]` times.
fn block_words(
    counts: &mut [usize],
    word: &mut Vec<usize>,
    len: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if word.len() == len {
        visit(word);
        return;
    }
    for k in 0..counts.len() {
        if counts[k] > 0 {
            counts[k] -= 1;
            word.push(k);
            block_words(counts, word, len, visit);
            word.pop();
            counts[k] += 1;
        }
    }
}

/// `word[v]` is the block holding value `v`; blocks are listed left to
/// right, each increasing.
pub(crate) fn word_to_permutation(blocks: &[usize], word: &[usize]) -> Permutation {
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        starts.push(acc);
        acc += b;
    }
    let mut images = vec![0; word.len()];
    for (value, &block) in word.iter().enumerate() {
        images[starts[block]] = value;
        starts[block] += 1;
    }
    Permutation::from_images_unchecked(images)
}

/// A probability measure on `S_n`, dense over rank order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraMeasure<S> {
    n: usize,
    masses: Vec<S>,
}

impl<S: Scalar> GroupAlgebraMeasure<S> {
    pub fn from_masses(n: usize, masses: Vec<S>) -> Result<Self> {
        if masses.len() != factorial_usize(n) {
            return Err(Error::SizeMismatch {
                expected: factorial_usize(n),
                got: masses.len(),
            });
        }
        Ok(GroupAlgebraMeasure { n, masses })
    }

    pub fn point(g: &Permutation) -> Self {
        let mut masses = vec![S::zero(); factorial_usize(g.n())];
        masses[g.rank()] = S::one();
        GroupAlgebraMeasure { n: g.n(), masses }
    }

    pub fn uniform(n: usize) -> Self {
        let total = factorial_usize(n);
        let m = S::from_rational(&ratio(1, total as i64));
        GroupAlgebraMeasure {
            n,
            masses: vec![m; total],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masses(&self) -> &[S] {
        &self.masses
    }

    pub fn mass(&self, g: &Permutation) -> &S {
        &self.masses[g.rank()]
    }

    pub fn total(&self) -> S {
        self.masses.iter().fold(S::zero(), |a, m| a + m.clone())
    }

    pub fn support_size(&self) -> usize {
        self.masses.iter().filter(|m| !m.is_zero()).count()
    }

    /// `(g, mass)` over the support, in rank order.
    pub fn support(&self) -> impl Iterator<Item = (Permutation, &S)> + '_ {
        let n = self.n;
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(move |(r, m)| (Permutation::unrank(n, r), m))
    }

    /// Total variation distance.
    pub fn tv(&self, other: &Self) -> Result<S> {
        if self.n != other.n {
            return Err(Error::LabelMismatch(format!(
                "measures on S_{} and S_{}",
                self.n, other.n
            )));
        }
        let l1 = self
            .masses
            .iter()
            .zip(&other.masses)
            .fold(S::zero(), |a, (x, y)| a + (x.clone() - y.clone()).abs());
        Ok(l1 * S::from_rational(&ratio(1, 2)))
    }

    /// Distribution of `g·h` with `g ~ self`, `h ~ other` independent.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LabelMismatch("convolution across degrees".into()));
        }
        let right: Vec<(Permutation, S)> = other.support().map(|(g, m)| (g, m.clone())).collect();
        Ok(self.times_sparse(&right, &all_permutations(self.n)))
    }

    fn times_sparse(&self, right: &[(Permutation, S)], elements: &[Permutation]) -> Self {
        let mut out = vec![S::zero(); self.masses.len()];
        for (r, m) in self.masses.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (h, w) in right {
                let idx = elements[r].compose(h).rank();
                out[idx] = out[idx].clone() + m.clone() * w.clone();
            }
        }
        GroupAlgebraMeasure {
            n: self.n,
            masses: out,
        }
    }
}

/// The measure `Σ_L p_L · |S_L|/n! · X_L`.
pub fn measure_of<S: Scalar>(spec: &ShuffleSpec) -> Result<GroupAlgebraMeasure<S>> {
    measure_of_with_max(spec, DEFAULT_EXACT_MAX_N)
}

pub fn measure_of_with_max<S: Scalar>(
    spec: &ShuffleSpec,
    max_n: usize,
) -> Result<GroupAlgebraMeasure<S>> {
    let n = spec.n;
    check_capacity(n, max_n)?;
    let n_fact = BigInt::from(factorial(n));
    let mut masses = vec![S::zero(); factorial_usize(n)];
    for (rs, p) in &spec.weights {
        let w = S::from_rational(
            &(p * Rational::new(BigInt::from(rs.subgroup_order()), n_fact.clone())),
        );
        for g in x_l_support_with_max(rs, max_n)? {
            let r = g.rank();
            masses[r] = masses[r].clone() + w.clone();
        }
    }
    Ok(GroupAlgebraMeasure { n, masses })
}

/// Distribution of `g_1 ⋯ g_r` for independent draws from the shuffle.
pub fn convolution_power<S: Scalar>(spec: &ShuffleSpec, r: u32) -> Result<GroupAlgebraMeasure<S>> {
    Ok(convolution_powers(spec, r)?.pop().expect("r+1 powers"))
}

/// All powers `0, 1, …, r_max`. Each step multiplies on the right by the
/// one-step measure, at cost `n! · |support|`.
pub fn convolution_powers<S: Scalar>(
    spec: &ShuffleSpec,
    r_max: u32,
) -> Result<Vec<GroupAlgebraMeasure<S>>> {
    convolution_powers_with_max(spec, r_max, DEFAULT_EXACT_MAX_N)
}

pub fn convolution_powers_with_max<S: Scalar>(
    spec: &ShuffleSpec,
    r_max: u32,
    max_n: usize,
) -> Result<Vec<GroupAlgebraMeasure<S>>> {
    let n = spec.n;
    let step: GroupAlgebraMeasure<S> = measure_of_with_max(spec, max_n)?;
    let elements = all_permutations(n);
    let support: Vec<(usize, S)> = step
        .masses
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(r, m)| (r, m.clone()))
        .collect();
    // right[j][i] = rank(element_i ∘ support_j)
    let right: Vec<Vec<u32>> = support
        .iter()
        .map(|(s, _)| {
            elements
                .iter()
                .map(|g| g.compose(&elements[*s]).rank() as u32)
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(r_max as usize + 1);
    let mut current = GroupAlgebraMeasure::<S>::point(&Permutation::identity(n));
    out.push(current.clone());
    for _ in 0..r_max {
        let mut next = vec![S::zero(); elements.len()];
        for (i, m) in current.masses.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for ((_, w), table) in support.iter().zip(&right) {
                let idx = table[i] as usize;
                next[idx] = next[idx].clone() + m.clone() * w.clone();
            }
        }
        current = GroupAlgebraMeasure { n, masses: next };
        out.push(current.clone());
    }
    Ok(out)
}

/// Eigenvalue of `|S_μ|/n! · X_μ` indexed by a permutation of cycle type
/// `nu`: the proportion of block-ordered set partitions of type `μ` whose
/// blocks are each a union of cycles,
/// `(∏ μ_k!/n!) · Σ_a ∏_i multinomial(n_i; a_i^{(1)}, a_i^{(2)}, …)`.
pub fn bhr_eigenvalue(mu: &Composition, nu: &Partition) -> Result<Rational> {
    if mu.n() != nu.n() {
        return Err(Error::SizeMismatch {
            expected: mu.n(),
            got: nu.n(),
        });
    }
    let mut fixed = BigUint::ZERO;
    let max_len = nu.part(0);
    for_each_cycle_distribution(mu, nu, &mut |a| {
        let mut term = BigUint::one();
        for i in 0..max_len {
            let total = nu.multiplicity(i + 1);
            let denom: BigUint = a.iter().map(|block| factorial(block[i])).product();
            term *= factorial(total) / denom;
        }
        fixed += term;
    });
    Ok(Rational::new(
        BigInt::from(fixed * mu.young_subgroup_order()),
        BigInt::from(factorial(mu.n())),
    ))
}

/// Outcome of comparing the eigenvalue sets of the mixed representation
/// chain and of the shuffle element.
#[derive(Clone, Debug, PartialEq)]
pub struct IsospectralReport {
    pub equal: bool,
    /// Eigenvalue → number of conjugacy classes carrying it.
    pub chain_side: BTreeMap<Rational, usize>,
    /// Eigenvalue → number of permutations indexing it.
    pub shuffle_side: BTreeMap<Rational, usize>,
}

/// Compares `{Σ_L p_L · ratio(μ_L, ν)}` over cycle types `ν` against
/// `{Σ_L p_L · bhr(μ_L, type g)}` over `g ∈ S_n`, as sets.
/// Multiplicities are reported but not compared.
pub fn isospectral_check(spec: &ShuffleSpec) -> Result<IsospectralReport> {
    isospectral_check_with_max(spec, DEFAULT_EXACT_MAX_N)
}

pub fn isospectral_check_with_max(spec: &ShuffleSpec, max_n: usize) -> Result<IsospectralReport> {
    let n = spec.n;
    check_capacity(n, max_n)?;
    let types: Vec<Composition> = spec
        .weights
        .iter()
        .map(|(rs, _)| rs.composition())
        .collect();
    let mut chain_side = BTreeMap::new();
    for nu in crate::partitions::enumerate_partitions(n) {
        let mut value = Rational::zero();
        for ((_, p), mu) in spec.weights.iter().zip(&types) {
            value += p * class_ratio(mu, &nu)?;
        }
        *chain_side.entry(value).or_insert(0) += 1;
    }
    let mut by_type: BTreeMap<Partition, Rational> = BTreeMap::new();
    let mut shuffle_side = BTreeMap::new();
    for g in all_permutations(n) {
        let nu = g.cycle_type();
        let value = match by_type.get(&nu) {
            Some(v) => v.clone(),
            None => {
                let mut v = Rational::zero();
                for ((_, p), mu) in spec.weights.iter().zip(&types) {
                    v += p * bhr_eigenvalue(mu, &nu)?;
                }
                by_type.insert(nu, v.clone());
                v
            }
        };
        *shuffle_side.entry(value).or_insert(0) += 1;
    }
    let equal = chain_side.keys().eq(shuffle_side.keys());
    Ok(IsospectralReport {
        equal,
        chain_side,
        shuffle_side,
    })
}

/// Per-class eigenvalues `Σ_L p_L · ratio(μ_L, C)` of the mixed chain, over
/// the classes of `S_n` in canonical order.
pub fn mixture_eigenvalues(spec: &ShuffleSpec) -> Result<Vec<Rational>> {
    let types: Vec<Composition> = spec
        .weights
        .iter()
        .map(|(rs, _)| rs.composition())
        .collect();
    crate::partitions::enumerate_partitions(spec.n)
        .iter()
        .map(|nu| {
            spec.weights
                .iter()
                .zip(&types)
                .try_fold(Rational::zero(), |acc, ((_, p), mu)| {
                    Ok(acc + p * class_ratio(mu, nu)?)
                })
        })
        .collect()
}
