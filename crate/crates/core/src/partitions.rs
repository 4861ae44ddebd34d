//! Integer partitions, compositions, tableau counts and the Plancherel measure.
//!
//! Wherever a partition of `n` indexes a row or column, partitions appear in
//! reverse-lexicographic order, largest first: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::fmt;
use std::str::FromStr;

use crate::distribution::Distribution;
use crate::error::{invalid, Error, Result};
use crate::scalar::{Rational, Scalar};
use num_bigint::{BigInt, BigUint};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("partition {parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts `parts` into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of parts equal to `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Sign of a permutation with this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.n());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1) + (conj.part(j) - i - 1) + 1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

/// An ordered sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("composition {parts:?} has a zero part")));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts sorted into a partition.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }

    /// `∏ μ_k!`, the order of the Young subgroup `S_μ`.
    pub fn young_subgroup_order(&self) -> BigUint {
        self.parts.iter().map(|&p| factorial(p)).product()
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition {
            parts: p.parts.clone(),
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| invalid(format!("bad part {t:?}: {e}")))
        })
        .collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Number of standard Young tableaux of shape `lambda`, by the hook length formula.
pub fn dimension(lambda: &Partition) -> BigUint {
    let hooks: BigUint = lambda
        .hooks()
        .into_iter()
        .map(|h| BigUint::from(h as u64))
        .product();
    factorial(lambda.n()) / hooks
}

/// Number of semistandard tableaux of shape `lambda` and content `content`.
///
/// Counted by backtracking: letter `k` fills a horizontal strip of size
/// `content[k]`. Zero entries in `content` are allowed and skipped.
pub fn kostka(lambda: &Partition, content: &[usize]) -> Result<u64> {
    let total: usize = content.iter().sum();
    if total != lambda.n() {
        return Err(Error::SizeMismatch {
            expected: lambda.n(),
            got: total,
        });
    }
    let content: Vec<usize> = content.iter().copied().filter(|&c| c > 0).collect();
    let mut shape = vec![0usize; lambda.len()];
    Ok(count_strips(lambda.parts(), &content, &mut shape))
}

fn count_strips(target: &[usize], content: &[usize], shape: &mut [usize]) -> u64 {
    match content.split_first() {
        None => u64::from(shape == target),
        Some((&size, rest)) => {
            let old = shape.to_vec();
            let mut total = 0;
            add_strip(target, &old, 0, size, shape, &mut |s| {
                total += count_strips(target, rest, s)
            });
            total
        }
    }
}

/// Enumerates every way to add a horizontal strip of `left` boxes to `old`,
/// staying inside `target`, starting at `row`.
fn add_strip(
    target: &[usize],
    old: &[usize],
    row: usize,
    left: usize,
    shape: &mut [usize],
    visit: &mut dyn FnMut(&mut [usize]),
) {
    if left == 0 {
        visit(shape);
        return;
    }
    if row == target.len() {
        return;
    }
    // A horizontal strip never places two boxes in one column: the new
    // length of a row cannot exceed the old length of the row above.
    let cap = if row == 0 {
        target[0]
    } else {
        target[row].min(old[row - 1])
    };
    let room = cap.saturating_sub(old[row]);
    for add in 0..=room.min(left) {
        shape[row] = old[row] + add;
        add_strip(target, old, row + 1, left - add, shape, visit);
    }
    shape[row] = old[row];
}

pub type PartitionDistribution<S> = Distribution<Partition, S>;

/// Plancherel measure of `S_n`: mass `dim(λ)²/n!` on `λ`.
pub fn plancherel<S: Scalar>(n: usize) -> PartitionDistribution<S> {
    let order = BigInt::from(factorial(n));
    let entries = enumerate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let d = BigInt::from(dimension(&lambda));
            let mass = Rational::new(&d * &d, order.clone());
            (lambda, S::from_rational(&mass))
        })
        .collect();
    Distribution::new(entries)
}

/// Point mass at `(n)`.
pub fn trivial_point_mass<S: Scalar>(n: usize) -> PartitionDistribution<S> {
    let entries = enumerate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let m = if lambda.len() <= 1 {
                S::one()
            } else {
                S::zero()
            };
            (lambda, m)
        })
        .collect();
    Distribution::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Brute force: every weakly decreasing sequence of positive integers
    /// with parts at most n, filtered by sum.
    fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(len_left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            if len_left == 0 {
                return;
            }
            for x in 1..=max {
                cur.push(x);
                go(len_left - 1, x, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        go(n, n, &mut Vec::new(), &mut all);
        all.retain(|v| v.iter().sum::<usize>() == n);
        all
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        assert_eq!(
            enumerate_partitions(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for n in 0..=9 {
            let mut brute = brute_partitions(n);
            brute.sort_by(|a, b| b.cmp(a));
            let ours: Vec<Vec<usize>> = enumerate_partitions(n)
                .iter()
                .map(|l| l.parts().to_vec())
                .collect();
            assert_eq!(ours, brute, "n={n}");
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Composition::new(vec![1, 0, 2]).is_err());
        assert!("3,x".parse::<Partition>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let l: Partition = "3, 1".parse().unwrap();
        assert_eq!(l, p(&[3, 1]));
        assert_eq!(l.to_string(), "3,1");
        let c: Composition = "1,3".parse().unwrap();
        assert_eq!(c.to_string(), "1,3");
        assert_eq!(c.sorted(), p(&[3, 1]));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[5]).conjugate(), Partition::column(5));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=12 {
            for l in enumerate_partitions(n) {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&p(&[6])), BigUint::from(1u32));
        assert_eq!(dimension(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(dimension(&p(&[2, 2])), BigUint::from(2u32));
        assert_eq!(dimension(&p(&[3, 2])), BigUint::from(5u32));
    }

    /// Independent count of standard tableaux: remove a corner box in all ways.
    fn syt_count(parts: &[usize]) -> u64 {
        if parts.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let is_corner = parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
            if is_corner {
                let mut next = parts.to_vec();
                next[i] -= 1;
                total += syt_count(&next);
            }
        }
        total
    }

    #[test]
    fn dimension_counts_standard_tableaux() {
        for n in 1..=9 {
            for l in enumerate_partitions(n) {
                assert_eq!(dimension(&l), BigUint::from(syt_count(l.parts())), "{l}");
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[3, 2]), &[3, 2]).unwrap(), 1);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
        assert_eq!(kostka(&p(&[1, 1]), &[2]).unwrap(), 0);
        assert_eq!(kostka(&p(&[3, 1]), &[2, 2]).unwrap(), 1);
        assert_eq!(kostka(&p(&[2, 2]), &[2, 1, 1]).unwrap(), 1);
        assert!(matches!(
            kostka(&p(&[2, 1]), &[2, 2]),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn kostka_standard_content_is_dimension() {
        for n in 1..=8 {
            for l in enumerate_partitions(n) {
                let k = kostka(&l, &vec![1; n]).unwrap();
                assert_eq!(BigUint::from(k), dimension(&l));
            }
        }
    }

    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn kostka_dominance_and_reordering() {
        for n in 1..=7 {
            let parts = enumerate_partitions(n);
            for mu in compositions(n) {
                let sorted = Partition::from_unsorted(mu.clone());
                for l in &parts {
                    let k = kostka(l, &mu).unwrap();
                    assert_eq!(k, kostka(l, sorted.parts()).unwrap(), "{l} / {mu:?}");
                    if !l.dominates(&sorted) {
                        assert_eq!(k, 0, "{l} / {mu:?}");
                    } else {
                        assert!(k >= 1, "{l} / {mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn plancherel_examples() {
        let one = plancherel::<Rational>(1);
        assert_eq!(one.entries(), &[(p(&[1]), int(1))]);
        let three = plancherel::<Rational>(3);
        assert_eq!(three.get(&p(&[3])), Some(&ratio(1, 6)));
        assert_eq!(three.get(&p(&[2, 1])), Some(&ratio(2, 3)));
        assert_eq!(three.get(&p(&[1, 1, 1])), Some(&ratio(1, 6)));
    }

    #[test]
    fn plancherel_sums_to_one() {
        for n in 1..=10 {
            let sum: BigUint = enumerate_partitions(n)
                .iter()
                .map(|l| dimension(l).pow(2))
                .sum();
            assert_eq!(sum, factorial(n));
            assert_eq!(plancherel::<Rational>(n).total(), int(1));
        }
        assert!(plancherel::<Rational>(4)
            .entries()
            .iter()
            .all(|(_, m)| !m.is_zero()));
    }

    proptest! {
        #[test]
        fn conjugate_preserves_size_and_hooks(parts in proptest::collection::vec(1usize..8, 0..8)) {
            let l = Partition::from_unsorted(parts);
            let c = l.conjugate();
            prop_assert_eq!(c.n(), l.n());
            let mut h1 = l.hooks();
            let mut h2 = c.hooks();
            h1.sort();
            h2.sort();
            prop_assert_eq!(h1, h2);
            prop_assert_eq!(dimension(&l), dimension(&c));
        }
    }
}
