//! Young (parabolic) subgroups of `S_n` and their class ratios.
//!
//! A subset `L` of the simple roots `{1, …, n−1}` (index `i` stands for the
//! root `ε_i − ε_{i+1}`) generates the Young subgroup `S_L`, the product of
//! symmetric groups on the runs of consecutive positions joined by `L`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::chain::{max_with_witnesses, ClassRatioVector};
use crate::characters::{class_size, DEFAULT_TABLE_MAX_N};
use crate::error::{invalid, Error, Result};
use crate::partitions::{enumerate_partitions, factorial, Composition, Partition};
use crate::scalar::{ratio, Rational};

/// A subset of the simple roots of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSubset {
    n: usize,
    indices: Vec<usize>,
}

impl RootSubset {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i >= n) {
            return Err(invalid(format!(
                "root index {bad} outside 1..={}",
                n.saturating_sub(1)
            )));
        }
        Ok(RootSubset { n, indices })
    }

    pub fn empty(n: usize) -> Self {
        RootSubset {
            n,
            indices: Vec::new(),
        }
    }

    /// All simple roots.
    pub fn full(n: usize) -> Self {
        RootSubset {
            n,
            indices: (1..n).collect(),
        }
    }

    /// The subset whose Young subgroup has block sizes `mu`, in order.
    pub fn from_composition(mu: &Composition) -> Self {
        let mut indices = Vec::new();
        let mut start = 1;
        for &block in mu.parts() {
            indices.extend(start..start + block - 1);
            start += block;
        }
        RootSubset { n: mu.n(), indices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        RootSubset {
            n: self.n,
            indices: (1..self.n).filter(|&i| !self.contains(i)).collect(),
        }
    }

    /// Orbit sizes of `S_L` on `{1, …, n}`, left to right.
    pub fn composition(&self) -> Composition {
        composition_of(self)
    }

    /// `|S_L| = ∏ μ_k!`.
    pub fn subgroup_order(&self) -> BigUint {
        self.composition().young_subgroup_order()
    }

    /// Bitmask with bit `i − 1` set for each root `i`.
    pub fn mask(&self) -> u128 {
        self.indices
            .iter()
            .fold(0u128, |m, &i| m | (1u128 << (i - 1)))
    }
}

impl fmt::Display for RootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("empty");
        }
        let strs: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        f.write_str(&strs.join(","))
    }
}

impl RootSubset {
    /// Parses `"empty"` or comma-separated indices for degree `n`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Self::empty(n));
        }
        let idx = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| invalid(format!("bad root index {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, idx)
    }
}

/// Lengths of the maximal runs `{i, i+1, …}` joined by roots in `L`.
pub fn composition_of(rs: &RootSubset) -> Composition {
    let mut parts = Vec::new();
    if rs.n == 0 {
        return Composition::new(parts).expect("empty composition");
    }
    let mut run = 1;
    for i in 1..rs.n {
        if rs.contains(i) {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    Composition::new(parts).expect("runs are positive")
}

/// Visits every way of distributing the cycles of type `nu` over the blocks
/// of `mu`: `a[k][i]` cycles of length `i + 1` go to block `k`, with
/// `Σ_k a[k][i] = m_{i+1}(ν)` and `Σ_i (i+1)·a[k][i] = μ_k`.
pub(crate) fn for_each_cycle_distribution(
    mu: &Composition,
    nu: &Partition,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if mu.n() != nu.n() {
        return;
    }
    let max_len = nu.part(0);
    let remaining: Vec<usize> = (1..=max_len).map(|i| nu.multiplicity(i)).collect();
    let mut chosen = Vec::with_capacity(mu.len());
    distribute_blocks(mu.parts(), remaining, &mut chosen, visit);
}

fn distribute_blocks(
    blocks: &[usize],
    remaining: Vec<usize>,
    chosen: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    let Some((&size, rest)) = blocks.split_first() else {
        if remaining.iter().all(|&r| r == 0) {
            visit(chosen);
        }
        return;
    };
    if rest.is_empty() {
        // the last block takes whatever is left, if it fits exactly
        let weight: usize = remaining
            .iter()
            .enumerate()
            .map(|(i, &r)| (i + 1) * r)
            .sum();
        if weight == size {
            chosen.push(remaining.clone());
            visit(chosen);
            chosen.pop();
        }
        return;
    }
    let mut take = vec![0usize; remaining.len()];
    fill_block(size, remaining.len(), &remaining, &mut take, &mut |take| {
        let left: Vec<usize> = remaining.iter().zip(take).map(|(r, t)| r - t).collect();
        chosen.push(take.to_vec());
        distribute_blocks(rest, left, chosen, visit);
        chosen.pop();
    });
}

/// All `take ≤ remaining` with `Σ (i+1)·take[i] = size`, choosing from the
/// longest cycle length down.
fn fill_block(
    size: usize,
    len: usize,
    remaining: &[usize],
    take: &mut [usize],
    visit: &mut dyn FnMut(&[usize]),
) {
    if len == 0 {
        if size == 0 {
            visit(take);
        }
        return;
    }
    let i = len - 1;
    let cycle = i + 1;
    let max = remaining[i].min(size / cycle);
    for t in 0..=max {
        take[i] = t;
        fill_block(size - t * cycle, i, remaining, take, visit);
    }
    take[i] = 0;
}

/// `|C_ν ∩ S_μ| / |C_ν|`, the fraction of permutations of cycle type `ν`
/// that preserve every block of `μ`.
///
/// Each distribution of cycles over the blocks contributes the number of
/// permutations of that shape inside `S_μ`, `∏_k μ_k! / ∏_i i^{a} a!`.
pub fn class_ratio(mu: &Composition, nu: &Partition) -> Result<Rational> {
    if mu.n() != nu.n() {
        return Err(Error::SizeMismatch {
            expected: mu.n(),
            got: nu.n(),
        });
    }
    let mut inside = BigUint::ZERO;
    for_each_cycle_distribution(mu, nu, &mut |a| {
        let mut term = BigUint::one();
        for (k, counts) in a.iter().enumerate() {
            let mut centralizer = BigUint::one();
            for (i, &c) in counts.iter().enumerate() {
                centralizer *= BigUint::from((i + 1) as u64).pow(c as u32) * factorial(c);
            }
            term *= factorial(mu.parts()[k]) / centralizer;
        }
        inside += term;
    });
    Ok(Rational::new(
        BigInt::from(inside),
        BigInt::from(class_size(nu)),
    ))
}

/// Largest class ratio over nontrivial classes, with all maximizing cycle
/// types (in canonical order). `β` of the trivial subgroup is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaWitness {
    pub beta: Rational,
    pub witnesses: Vec<Partition>,
}

pub fn beta_parabolic(mu: &Composition) -> Result<BetaWitness> {
    let n = mu.n();
    let identity = Partition::column(n);
    let mut scored = Vec::new();
    for nu in enumerate_partitions(n) {
        if nu != identity {
            scored.push((class_ratio(mu, &nu)?, nu));
        }
    }
    let (beta, witnesses) = max_with_witnesses(scored.into_iter());
    Ok(BetaWitness { beta, witnesses })
}

/// The class ratio vector of `S_μ ≤ S_n`, over the classes of `S_n` in
/// canonical order.
pub fn ratio_vector_for(mu: &Composition) -> Result<ClassRatioVector<Partition>> {
    ratio_vector_with_max(mu, DEFAULT_TABLE_MAX_N)
}

pub fn ratio_vector_with_max(
    mu: &Composition,
    max_n: usize,
) -> Result<ClassRatioVector<Partition>> {
    let n = mu.n();
    if n > max_n {
        return Err(Error::Capacity { n, max: max_n });
    }
    let classes = enumerate_partitions(n);
    let ratios = classes
        .iter()
        .map(|nu| class_ratio(mu, nu))
        .collect::<Result<Vec<_>>>()?;
    ClassRatioVector::new(BigInt::from(mu.young_subgroup_order()), classes, ratios)
}

/// `1 − 2/n`, for `S_{n−1} ≤ S_n` (top to random).
pub fn beta_top_to_random(n: usize) -> Rational {
    Rational::one() - ratio(2, n as i64)
}

/// `(n−k)(n−k−1) / (n(n−1))`, for `S_{n−k} ≤ S_n` (top `k` to random).
pub fn beta_top_k_to_random(n: usize, k: usize) -> Rational {
    let (n, k) = (n as i64, k as i64);
    ratio((n - k) * (n - k - 1), n * (n - 1))
}

/// `(C(n−2,k) + C(n−2,k−2)) / C(n,k)`, for `S_k × S_{n−k} ≤ S_n` (cut `k`
/// and riffle). Attained at the transpositions for `n ≥ 5`.
pub fn beta_k_cut(n: usize, k: usize) -> Rational {
    let c = |a: usize, b: isize| -> BigInt {
        if b < 0 || b as usize > a {
            BigInt::ZERO
        } else {
            BigInt::from(factorial(a) / (factorial(b as usize) * factorial(a - b as usize)))
        }
    };
    let k = k as isize;
    Rational::new(c(n - 2, k) + c(n - 2, k - 2), c(n, k))
}

impl FromStr for RootSubset {
    type Err = Error;

    /// `n:indices`, e.g. `5:3,4` or `4:empty`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| invalid("expected n:indices"))?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|e| invalid(e.to_string()))?;
        Self::parse(n, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_traits::Zero;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(composition_of(&RootSubset::empty(4)), comp("1,1,1,1"));
        assert_eq!(composition_of(&RootSubset::full(4)), comp("4"));
        assert_eq!(
            composition_of(&RootSubset::new(5, [3, 4]).unwrap()),
            comp("1,1,3")
        );
        for s in ["1,1,3", "2,3", "4,1", "1,2,1,1"] {
            let c = comp(s);
            assert_eq!(RootSubset::from_composition(&c).composition(), c);
        }
    }

    #[test]
    fn root_subset_parsing() {
        assert_eq!(RootSubset::parse(4, "empty").unwrap(), RootSubset::empty(4));
        assert_eq!(RootSubset::parse(5, "4,3").unwrap().to_string(), "3,4");
        assert!(RootSubset::parse(4, "4").is_err());
        assert!(RootSubset::parse(4, "0").is_err());
        assert_eq!(
            "5:3,4".parse::<RootSubset>().unwrap(),
            RootSubset::new(5, [3, 4]).unwrap()
        );
        assert_eq!(
            RootSubset::new(5, [1, 3]).unwrap().complement(),
            RootSubset::new(5, [2, 4]).unwrap()
        );
    }

    #[test]
    fn class_ratio_examples() {
        for n in 2..=8 {
            let top = Composition::new(vec![1, n - 1]).unwrap();
            assert_eq!(class_ratio(&top, &Partition::column(n)).unwrap(), int(1));
            assert_eq!(class_ratio(&top, &Partition::row(n)).unwrap(), int(0));
            let mut transposition = vec![2];
            transposition.extend(std::iter::repeat_n(1, n - 2));
            assert_eq!(
                class_ratio(&top, &Partition::new(transposition).unwrap()).unwrap(),
                beta_top_to_random(n)
            );
        }
        assert!(class_ratio(&comp("2,1"), &p("2,1,1")).is_err());
    }

    #[test]
    fn ratio_vector_examples() {
        let full = ratio_vector_for(&comp("5")).unwrap();
        assert!(full.ratios().iter().all(|r| *r == int(1)));
        let triv = ratio_vector_for(&comp("1,1,1,1")).unwrap();
        let (last, rest) = triv.ratios().split_last().unwrap();
        assert_eq!(*last, int(1));
        assert!(rest.iter().all(Zero::is_zero));
        let v = ratio_vector_for(&comp("1,2")).unwrap();
        assert_eq!(v.labels(), &[p("3"), p("2,1"), p("1,1,1")]);
        assert_eq!(v.ratios(), &[int(0), ratio(1, 3), int(1)]);
        assert_eq!(v.subgroup_order(), &BigInt::from(2));
        let big = Composition::new(vec![13]).unwrap();
        assert!(matches!(
            ratio_vector_for(&big),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn beta_examples() {
        let b = beta_parabolic(&comp("1,5")).unwrap();
        assert_eq!(b.beta, ratio(2, 3));
        assert_eq!(b.witnesses, vec![p("2,1,1,1,1")]);
        assert_eq!(beta_parabolic(&comp("1,1,4")).unwrap().beta, ratio(2, 5));
        assert_eq!(beta_top_k_to_random(6, 2), ratio(2, 5));
        let b = beta_parabolic(&comp("3,3")).unwrap();
        assert_eq!(b.beta, ratio(2, 5));
        assert_eq!(beta_k_cut(6, 3), ratio(2, 5));
        assert!(b.witnesses.contains(&p("2,1,1,1,1")));
        assert_eq!(beta_parabolic(&comp("1,1,1")).unwrap().beta, int(0));
    }

    fn compositions(n: usize) -> Vec<Composition> {
        fn go(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            (1..=n)
                .flat_map(|f| {
                    go(n - f).into_iter().map(move |mut r| {
                        r.insert(0, f);
                        r
                    })
                })
                .collect()
        }
        go(n)
            .into_iter()
            .map(|v| Composition::new(v).unwrap())
            .collect()
    }

    #[test]
    fn ratios_count_the_subgroup() {
        for n in 1..=8 {
            for mu in compositions(n) {
                let v = ratio_vector_for(&mu).unwrap();
                let total: Rational = v
                    .labels()
                    .iter()
                    .zip(v.ratios())
                    .map(|(nu, r)| r * Rational::from_integer(BigInt::from(class_size(nu))))
                    .sum();
                assert_eq!(
                    total,
                    Rational::from_integer(BigInt::from(mu.young_subgroup_order())),
                    "{mu}"
                );
            }
        }
    }

    #[test]
    fn ratio_invariant_under_block_permutation() {
        for n in 1..=7 {
            for mu in compositions(n) {
                let mut rev = mu.parts().to_vec();
                rev.reverse();
                let rev = Composition::new(rev).unwrap();
                let sorted = Composition::from(&mu.sorted());
                for nu in enumerate_partitions(n) {
                    let a = class_ratio(&mu, &nu).unwrap();
                    assert_eq!(a, class_ratio(&rev, &nu).unwrap());
                    assert_eq!(a, class_ratio(&sorted, &nu).unwrap());
                }
            }
        }
    }
}
