//! Irreducible characters of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule on beta-sets: removing a
//! border strip of length `k` moves one bead `k` places down, with sign
//! `(-1)^(beads jumped)`. Cycles are removed largest first and each call
//! memoizes on (remaining shape, number of cycles consumed).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::distribution::csv_field;
use crate::error::{Error, Result};
use crate::partitions::{dimension, enumerate_partitions, factorial, Composition, Partition};

pub const DEFAULT_TABLE_MAX_N: usize = 12;

/// `n! / ∏ i^{m_i} m_i!`, the number of permutations of cycle type `mu`.
pub fn class_size(mu: &Partition) -> BigUint {
    let n = mu.n();
    let mut denom = BigUint::from(1u32);
    for i in 1..=mu.part(0) {
        let m = mu.multiplicity(i);
        denom *= BigUint::from(i as u64).pow(m as u32) * factorial(m);
    }
    factorial(n) / denom
}

/// `χ^λ(μ)`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch {
            expected: lambda.n(),
            got: mu.n(),
        });
    }
    Ok(Evaluator::new(mu).eval(lambda.parts(), 0))
}

struct Evaluator<'a> {
    cycles: &'a [usize],
    memo: HashMap<(Vec<usize>, usize), i64>,
}

impl<'a> Evaluator<'a> {
    fn new(mu: &'a Partition) -> Self {
        Evaluator {
            cycles: mu.parts(),
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, shape: &[usize], consumed: usize) -> i64 {
        if consumed == self.cycles.len() {
            return i64::from(shape.is_empty());
        }
        let key = (shape.to_vec(), consumed);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let k = self.cycles[consumed];
        let m = shape.len();
        let beta: Vec<usize> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p + m - 1 - i)
            .collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < k || beta.contains(&(b - k)) {
                continue;
            }
            let target = b - k;
            let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|x, y| y.cmp(x));
            let len = next.len();
            let next_shape: Vec<usize> = next
                .iter()
                .enumerate()
                .map(|(i, &c)| c - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            let sign = if jumped % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(&next_shape, consumed + 1);
        }
        self.memo.insert(key, total);
        total
    }
}

/// The full character table of `S_n`, rows and columns in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    /// `values[λ][μ]`.
    values: Vec<Vec<i64>>,
    class_sizes: Vec<BigUint>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_max(n, DEFAULT_TABLE_MAX_N)
    }

    pub fn build_with_max(n: usize, max_n: usize) -> Result<Self> {
        if n == 0 {
            return Err(crate::error::invalid("character table needs n >= 1"));
        }
        if n > max_n {
            return Err(Error::Capacity { n, max: max_n });
        }
        let partitions = enumerate_partitions(n);
        let mut values = vec![vec![0i64; partitions.len()]; partitions.len()];
        for (j, mu) in partitions.iter().enumerate() {
            let mut ev = Evaluator::new(mu);
            for (i, lambda) in partitions.iter().enumerate() {
                values[i][j] = ev.eval(lambda.parts(), 0);
            }
        }
        let class_sizes = partitions.iter().map(class_size).collect();
        Ok(CharacterTable {
            n,
            partitions,
            values,
            class_sizes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row and column labels.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.index_of(lambda)?][self.index_of(mu)?])
    }

    /// Column of the identity class `(1^n)`.
    pub fn identity_class(&self) -> usize {
        self.partitions.len() - 1
    }

    /// `Σ_μ |C_μ| χ^a(μ) χ^b(μ)`, which is `n!·[a = b]`.
    pub fn row_inner(&self, a: usize, b: usize) -> BigInt {
        self.class_sizes
            .iter()
            .zip(self.values[a].iter().zip(&self.values[b]))
            .map(|(s, (x, y))| BigInt::from(s.clone()) * (x * y))
            .sum()
    }

    /// `Σ_λ χ^λ(a) χ^λ(b)`, which is `n!/|C_a|·[a = b]`.
    pub fn column_inner(&self, a: usize, b: usize) -> BigInt {
        self.values
            .iter()
            .map(|row| BigInt::from(row[a] * row[b]))
            .sum()
    }

    /// CSV export. The header lists each class as `partition:size`; each
    /// following row is one irreducible `λ` with its character values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for (mu, size) in self.partitions.iter().zip(&self.class_sizes) {
            out.push(',');
            out.push_str(&csv_field(&format!("{mu}:{size}")));
        }
        out.push('\n');
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            out.push_str(&csv_field(&lambda.to_string()));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Multiplicity of `τ_1 ⊗ τ_2 ⊗ ⋯` in the restriction of `χ^λ` to the
/// Young subgroup `S_μ`, as an inner product over the classes of `S_μ`.
pub fn restriction_multiplicity(
    lambda: &Partition,
    mu: &Composition,
    tau: &[Partition],
) -> Result<u64> {
    if mu.n() != lambda.n() {
        return Err(Error::SizeMismatch {
            expected: lambda.n(),
            got: mu.n(),
        });
    }
    if tau.len() != mu.len() {
        return Err(Error::SizeMismatch {
            expected: mu.len(),
            got: tau.len(),
        });
    }
    for (t, &m) in tau.iter().zip(mu.parts()) {
        if t.n() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                got: t.n(),
            });
        }
    }
    let block_classes: Vec<Vec<Partition>> = mu
        .parts()
        .iter()
        .map(|&m| enumerate_partitions(m))
        .collect();
    let mut sum = BigInt::zero();
    let mut choice = vec![0usize; mu.len()];
    loop {
        let mut weight = BigInt::from(1);
        let mut cycles = Vec::new();
        for (k, &c) in choice.iter().enumerate() {
            let nu = &block_classes[k][c];
            weight *= BigInt::from(class_size(nu)) * character(&tau[k], nu)?;
            cycles.extend_from_slice(nu.parts());
        }
        if !weight.is_zero() {
            let joined = Partition::from_unsorted(cycles);
            sum += weight * character(lambda, &joined)?;
        }
        // odometer over the class choices of each block
        let mut k = 0;
        loop {
            if k == choice.len() {
                return finish_multiplicity(sum, mu);
            }
            choice[k] += 1;
            if choice[k] < block_classes[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn finish_multiplicity(sum: BigInt, mu: &Composition) -> Result<u64> {
    let order = BigInt::from(mu.young_subgroup_order());
    let (q, r) = sum.div_rem(&order);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Consistency(format!(
            "restriction multiplicity {sum}/{order} is not a natural number"
        )));
    }
    q.to_u64()
        .ok_or_else(|| Error::Consistency("multiplicity overflow".into()))
}

/// Dimension as a machine integer; tables stay far below `i64::MAX`.
pub(crate) fn dim_i64(lambda: &Partition) -> i64 {
    dimension(lambda).to_i64().expect("dimension fits in i64")
}
