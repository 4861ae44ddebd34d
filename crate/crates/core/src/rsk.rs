//! Robinson–Schensted–Knuth row insertion and shape pushforwards.

use std::collections::HashMap;

use crate::distribution::Distribution;
use crate::partitions::{enumerate_partitions, Partition, PartitionDistribution};
use crate::scalar::Scalar;
use crate::shuffles::{GroupAlgebraMeasure, Permutation};

/// A partial insertion tableau: rows weakly increase, columns strictly
/// increase, row lengths weakly decrease.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionState<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Ord + Clone> InsertionState<T> {
    pub fn new() -> Self {
        InsertionState { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Row-inserts `x`; returns the row where the tableau grew.
    pub fn insert(&mut self, mut x: T) -> usize {
        for (i, row) in self.rows.iter_mut().enumerate() {
            // leftmost entry strictly greater than x
            let pos = row.partition_point(|y| *y <= x);
            if pos == row.len() {
                row.push(x);
                return i;
            }
            x = std::mem::replace(&mut row[pos], x);
        }
        self.rows.push(vec![x]);
        self.rows.len() - 1
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(Vec::len).collect())
    }
}

/// Insertion and recording tableaux `(P, Q)` of a word. `Q` is standard.
pub fn rsk_pair<T: Ord + Clone>(word: &[T]) -> (InsertionState<T>, Vec<Vec<usize>>) {
    let mut p = InsertionState::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, x) in word.iter().enumerate() {
        let row = p.insert(x.clone());
        if row == q.len() {
            q.push(Vec::new());
        }
        q[row].push(step + 1);
    }
    (p, q)
}

/// Shape of the insertion tableau of `g(1), …, g(n)`.
pub fn rsk_shape(g: &Permutation) -> Partition {
    let mut p = InsertionState::new();
    for &v in g.images() {
        p.insert(v);
    }
    p.shape()
}

/// Longest increasing subsequence by patience sorting.
pub fn lis_length(g: &Permutation) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &v in g.images() {
        let pile = tops.partition_point(|&t| t < v);
        if pile == tops.len() {
            tops.push(v);
        } else {
            tops[pile] = v;
        }
    }
    tops.len()
}

/// Mass of `λ` is the total mass of permutations with RSK shape `λ`.
pub fn pushforward<S: Scalar>(m: &GroupAlgebraMeasure<S>) -> PartitionDistribution<S> {
    let n = m.n();
    let shapes = enumerate_partitions(n);
    let index: HashMap<Partition, usize> = shapes
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut masses = vec![S::zero(); shapes.len()];
    for (r, mass) in m.masses().iter().enumerate() {
        if mass.is_zero() {
            continue;
        }
        let i = index[&rsk_shape(&Permutation::unrank(n, r))];
        masses[i] = masses[i].clone() + mass.clone();
    }
    Distribution::new(shapes.into_iter().zip(masses).collect())
}

/// Shape index of every permutation of `n`, in rank order, over the
/// canonical partition order. Lets repeated pushforwards skip insertion.
pub fn shape_indices(n: usize) -> Vec<u16> {
    let shapes = enumerate_partitions(n);
    let index: HashMap<Partition, usize> = shapes
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let total: usize = (1..=n).product();
    (0..total)
        .map(|r| index[&rsk_shape(&Permutation::unrank(n, r))] as u16)
        .collect()
}

/// Pushforward through precomputed [`shape_indices`].
pub fn pushforward_indexed<S: Scalar>(
    m: &GroupAlgebraMeasure<S>,
    indices: &[u16],
) -> PartitionDistribution<S> {
    let shapes = enumerate_partitions(m.n());
    let mut masses = vec![S::zero(); shapes.len()];
    for (mass, &i) in m.masses().iter().zip(indices) {
        if !mass.is_zero() {
            masses[i as usize] = masses[i as usize].clone() + mass.clone();
        }
    }
    Distribution::new(shapes.into_iter().zip(masses).collect())
}

/// Shape counts from sampled permutations. Tallies merge associatively.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapeTally {
    counts: HashMap<Partition, u64>,
    total: u64,
}

impl ShapeTally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, shape: Partition) {
        *self.counts.entry(shape).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: ShapeTally) -> ShapeTally {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.total += other.total;
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, shape: &Partition) -> u64 {
        self.counts.get(shape).copied().unwrap_or(0)
    }

    /// Plug-in frequencies over all partitions of `n`.
    pub fn frequencies(&self, n: usize) -> PartitionDistribution<f64> {
        let total = self.total.max(1) as f64;
        Distribution::new(
            enumerate_partitions(n)
                .into_iter()
                .map(|p| {
                    let c = self.count(&p) as f64;
                    (p, c / total)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::RootSubset;
    use crate::partitions::{dimension, kostka, plancherel};
    use crate::scalar::{int, ratio, Rational};
    use crate::shuffles::{all_permutations, measure_of, x_l_support, ShuffleSpec};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn shape_examples() {
        assert_eq!(rsk_shape(&Permutation::identity(6)), Partition::row(6));
        assert_eq!(rsk_shape(&Permutation::reversal(6)), Partition::column(6));
        assert_eq!(rsk_shape(&perm("213")), p("2,1"));
    }

    #[test]
    fn insertion_tableau_213() {
        let (tab, q) = rsk_pair(&[2, 1, 3]);
        assert_eq!(tab.rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(q, vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn lis_examples() {
        assert_eq!(lis_length(&Permutation::identity(7)), 7);
        assert_eq!(lis_length(&Permutation::reversal(7)), 1);
        assert_eq!(lis_length(&perm("31425")), 3);
    }

    /// Exhaustive longest increasing subsequence over all index subsets.
    fn lis_brute(g: &Permutation) -> usize {
        let v = g.images();
        let n = v.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<usize> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| v[i])
                    .collect();
                picked.windows(2).all(|w| w[0] < w[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn lis_is_first_row() {
        for n in 1..=8 {
            for g in all_permutations(n) {
                assert_eq!(lis_length(&g), rsk_shape(&g).part(0));
            }
        }
        for g in all_permutations(6) {
            assert_eq!(lis_length(&g), lis_brute(&g));
        }
    }

    #[test]
    fn inverse_has_same_shape() {
        for n in 1..=7 {
            for g in all_permutations(n) {
                assert_eq!(rsk_shape(&g), rsk_shape(&g.inverse()));
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        for n in 1..=7 {
            let u = GroupAlgebraMeasure::<Rational>::uniform(n);
            assert_eq!(pushforward(&u), plancherel::<Rational>(n));
        }
        let id = GroupAlgebraMeasure::<Rational>::point(&Permutation::identity(4));
        let d = pushforward(&id);
        assert_eq!(d.get(&p("4")), Some(&int(1)));
        assert_eq!(d.total(), int(1));
        let top: GroupAlgebraMeasure<Rational> =
            measure_of(&ShuffleSpec::top_to_random(3).unwrap()).unwrap();
        let d = pushforward(&top);
        assert_eq!(
            d.masses().cloned().collect::<Vec<_>>(),
            vec![ratio(1, 3), ratio(2, 3), int(0)]
        );
        let idx = shape_indices(5);
        let m: GroupAlgebraMeasure<Rational> =
            measure_of(&ShuffleSpec::riffle_k_cut(5, 2).unwrap()).unwrap();
        assert_eq!(pushforward_indexed(&m, &idx), pushforward(&m));
    }

    #[test]
    fn shape_counts_in_x_l_are_dim_times_kostka() {
        for n in 1..=6 {
            for mask in 0u32..1 << (n - 1) {
                let rs = RootSubset::new(n, (1..n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                let content = rs.composition();
                let support = x_l_support(&rs).unwrap();
                for lambda in enumerate_partitions(n) {
                    let count = support.iter().filter(|g| rsk_shape(g) == lambda).count();
                    let expect = dimension(&lambda) * kostka(&lambda, content.parts()).unwrap();
                    assert_eq!(BigUint::from(count), expect, "L={rs} λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn words_give_semistandard_insertion() {
        // inverse of an X_L element read as a word in block letters
        let (tab, q) = rsk_pair(&[1, 0, 1, 0, 2]);
        assert_eq!(tab.rows(), &[vec![0, 0, 2], vec![1, 1]]);
        assert_eq!(tab.shape(), p("3,2"));
        assert_eq!(q.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2]);
    }

    #[test]
    fn tally_merges() {
        let mut a = ShapeTally::new();
        a.record(p("2,1"));
        let mut b = ShapeTally::new();
        b.record(p("2,1"));
        b.record(p("3"));
        let m = a.merge(b);
        assert_eq!(m.total(), 3);
        assert_eq!(m.count(&p("2,1")), 2);
        let f = m.frequencies(3);
        assert!((f.get(&p("3")).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(*f.get(&p("1,1,1")).unwrap(), 0.0);
    }

    proptest! {
        #[test]
        fn tableau_invariants(word in proptest::collection::vec(0u8..6, 0..14)) {
            let (tab, q) = rsk_pair(&word);
            let rows = tab.rows();
            for w in rows.windows(2) {
                prop_assert!(w[0].len() >= w[1].len());
            }
            for row in rows {
                prop_assert!(row.windows(2).all(|w| w[0] <= w[1]));
            }
            for w in rows.windows(2) {
                prop_assert!(w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
            }
            let qlens: Vec<usize> = q.iter().map(Vec::len).collect();
            let plens: Vec<usize> = rows.iter().map(Vec::len).collect();
            prop_assert_eq!(qlens, plens);
        }
    }
}
