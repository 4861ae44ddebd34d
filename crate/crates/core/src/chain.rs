//! The Markov chain on irreducible representations induced by a subgroup.
//!
//! A subgroup `H ≤ G` enters only through its [`ClassRatioVector`], the
//! fractions `|C ∩ H| / |C|` per conjugacy class. The chain moves from `ρ`
//! to `σ` with probability
//!
//! ```text
//! J(ρ, σ) = dim σ / dim ρ · Σ_C |C|/|G| · ratio(C) · χ^ρ(C) · χ^σ(C)
//! ```
//!
//! is reversible for the Plancherel measure, and is diagonalized by the
//! class functions `ψ_C(ρ) = |C|^{1/2} χ^ρ(C) / dim ρ` with eigenvalue
//! `ratio(C)`. Characters are assumed real-valued (true for `S_n`).

use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::characters::{dim_i64, restriction_multiplicity, CharacterTable};
use crate::distribution::Distribution;
use crate::error::{invalid, Error, Result};
use crate::partitions::{enumerate_partitions, Composition, Partition};
use crate::scalar::{ratio_to_f64, Rational, Scalar};

/// Character data of a finite group: classes, irreducibles and the table.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupData<L> {
    order: BigInt,
    class_labels: Vec<L>,
    class_sizes: Vec<BigInt>,
    irreps: Vec<L>,
    dims: Vec<i64>,
    /// `chars[ρ][C]`.
    chars: Vec<Vec<i64>>,
    identity_class: usize,
    trivial: usize,
}

impl<L: Clone + PartialEq + Display> GroupData<L> {
    /// Validates the table: class sizes and squared dimensions both sum to
    /// the group order, an identity class of size 1 carries the dimensions,
    /// a trivial character exists, and the row orthogonality relations hold.
    pub fn new(
        order: BigInt,
        class_labels: Vec<L>,
        class_sizes: Vec<BigInt>,
        irreps: Vec<L>,
        dims: Vec<i64>,
        chars: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let k = class_labels.len();
        if class_sizes.len() != k {
            return Err(Error::SizeMismatch {
                expected: k,
                got: class_sizes.len(),
            });
        }
        if irreps.len() != dims.len() || chars.len() != dims.len() {
            return Err(Error::SizeMismatch {
                expected: dims.len(),
                got: chars.len(),
            });
        }
        if dims.len() != k {
            return Err(invalid(format!(
                "{} irreducibles but {k} classes",
                dims.len()
            )));
        }
        if let Some(row) = chars.iter().find(|row| row.len() != k) {
            return Err(Error::SizeMismatch {
                expected: k,
                got: row.len(),
            });
        }
        if class_sizes.iter().any(|s| !s.is_positive()) || dims.iter().any(|&d| d <= 0) {
            return Err(invalid("class sizes and dimensions must be positive"));
        }
        let size_sum: BigInt = class_sizes.iter().sum();
        if size_sum != order {
            return Err(invalid(format!(
                "class sizes sum to {size_sum}, not {order}"
            )));
        }
        let dim_sq: BigInt = dims.iter().map(|&d| BigInt::from(d) * d).sum();
        if dim_sq != order {
            return Err(invalid(format!(
                "squared dimensions sum to {dim_sq}, not {order}"
            )));
        }
        let identity_class = (0..k)
            .find(|&c| {
                class_sizes[c].is_one() && chars.iter().zip(&dims).all(|(row, &d)| row[c] == d)
            })
            .ok_or_else(|| invalid("no identity class (size 1, values equal to dimensions)"))?;
        let trivial = (0..k)
            .find(|&r| chars[r].iter().all(|&v| v == 1))
            .ok_or_else(|| invalid("no trivial character"))?;
        for a in 0..k {
            for b in a..k {
                let s: BigInt = (0..k)
                    .map(|c| &class_sizes[c] * (chars[a][c] * chars[b][c]))
                    .sum();
                let expect = if a == b {
                    order.clone()
                } else {
                    BigInt::zero()
                };
                if s != expect {
                    return Err(invalid(format!(
                        "rows {} and {} violate orthogonality",
                        irreps[a], irreps[b]
                    )));
                }
            }
        }
        Ok(GroupData {
            order,
            class_labels,
            class_sizes,
            irreps,
            dims,
            chars,
            identity_class,
            trivial,
        })
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn class_labels(&self) -> &[L] {
        &self.class_labels
    }

    pub fn class_sizes(&self) -> &[BigInt] {
        &self.class_sizes
    }

    pub fn irreps(&self) -> &[L] {
        &self.irreps
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn chars(&self) -> &[Vec<i64>] {
        &self.chars
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn irrep_index(&self, label: &L) -> Option<usize> {
        self.irreps.iter().position(|l| l == label)
    }

    pub fn plancherel<S: Scalar>(&self) -> Distribution<L, S> {
        let entries = self
            .irreps
            .iter()
            .zip(&self.dims)
            .map(|(l, &d)| {
                (
                    l.clone(),
                    S::from_rational(&Rational::new(BigInt::from(d) * d, self.order.clone())),
                )
            })
            .collect();
        Distribution::new(entries)
    }

    pub fn point_mass<S: Scalar>(&self, at: usize) -> Distribution<L, S> {
        let entries = self
            .irreps
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), if i == at { S::one() } else { S::zero() }))
            .collect();
        Distribution::new(entries)
    }
}

impl GroupData<Partition> {
    /// Character data of `S_n`.
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::from_table(&CharacterTable::build(n)?)
    }

    pub fn from_table(table: &CharacterTable) -> Result<Self> {
        let labels = table.partitions().to_vec();
        let order: BigInt = BigInt::from(crate::partitions::factorial(table.n()));
        let sizes = table
            .class_sizes()
            .iter()
            .cloned()
            .map(BigInt::from)
            .collect();
        let dims = labels.iter().map(dim_i64).collect();
        Self::new(
            order,
            labels.clone(),
            sizes,
            labels,
            dims,
            table.values().to_vec(),
        )
    }
}

/// `|C ∩ H| / |C|` for every class `C`, plus `|H|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassRatioVector<L> {
    subgroup_order: BigInt,
    labels: Vec<L>,
    ratios: Vec<Rational>,
}

impl<L: Clone + PartialEq + Display> ClassRatioVector<L> {
    pub fn new(subgroup_order: BigInt, labels: Vec<L>, ratios: Vec<Rational>) -> Result<Self> {
        if labels.len() != ratios.len() {
            return Err(Error::SizeMismatch {
                expected: labels.len(),
                got: ratios.len(),
            });
        }
        if !subgroup_order.is_positive() {
            return Err(invalid("subgroup order must be positive"));
        }
        if ratios
            .iter()
            .any(|r| r.is_negative() || *r > Rational::one())
        {
            return Err(invalid("class ratios must lie in [0, 1]"));
        }
        Ok(ClassRatioVector {
            subgroup_order,
            labels,
            ratios,
        })
    }

    /// Ratios of the trivial subgroup: 1 on the identity class, 0 elsewhere.
    pub fn trivial_subgroup(gd: &GroupData<L>) -> Self {
        let ratios = (0..gd.num_classes())
            .map(|c| {
                if c == gd.identity_class() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        ClassRatioVector {
            subgroup_order: BigInt::one(),
            labels: gd.class_labels().to_vec(),
            ratios,
        }
    }

    /// Ratios of `H = G`.
    pub fn whole_group(gd: &GroupData<L>) -> Self {
        ClassRatioVector {
            subgroup_order: gd.order().clone(),
            labels: gd.class_labels().to_vec(),
            ratios: vec![Rational::one(); gd.num_classes()],
        }
    }

    pub fn subgroup_order(&self) -> &BigInt {
        &self.subgroup_order
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn ratios(&self) -> &[Rational] {
        &self.ratios
    }

    /// Checks that the ratios belong to `gd`: same class labels, ratio 1 on
    /// the identity, and `Σ_C |C|·ratio(C) = |H|`.
    pub fn check_against(&self, gd: &GroupData<L>) -> Result<()> {
        if self.labels != gd.class_labels() {
            return Err(Error::LabelMismatch(
                "ratio vector and group data list different classes".into(),
            ));
        }
        if !self.ratios[gd.identity_class()].is_one() {
            return Err(Error::Consistency("identity class ratio is not 1".into()));
        }
        let count: Rational = self
            .ratios
            .iter()
            .zip(gd.class_sizes())
            .map(|(r, s)| r * Rational::from_integer(s.clone()))
            .sum();
        if count != Rational::from_integer(self.subgroup_order.clone()) {
            return Err(Error::Consistency(format!(
                "ratios count {count} subgroup elements, expected {}",
                self.subgroup_order
            )));
        }
        Ok(())
    }
}

/// Dense row-stochastic matrix over the irreducibles.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix<L, S> {
    labels: Vec<L>,
    rows: Vec<Vec<S>>,
}

impl<L: Clone + PartialEq, S: Scalar> TransitionMatrix<L, S> {
    pub fn new(labels: Vec<L>, rows: Vec<Vec<S>>) -> Self {
        TransitionMatrix { labels, rows }
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn entry(&self, from: usize, to: usize) -> &S {
        &self.rows[from][to]
    }

    pub fn row_sums(&self) -> Vec<S> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(S::zero(), |a, x| a + x.clone()))
            .collect()
    }

    /// `(Jf)(x) = Σ_y J(x, y) f(y)`.
    pub fn apply(&self, f: &[S]) -> Vec<S> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(f)
                    .fold(S::zero(), |a, (j, v)| a + j.clone() * v.clone())
            })
            .collect()
    }

    /// One step of the chain applied to a distribution (row vector).
    pub fn step(&self, dist: &[S]) -> Vec<S> {
        let k = self.rows.len();
        (0..k)
            .map(|y| {
                (0..k).fold(S::zero(), |a, x| {
                    a + dist[x].clone() * self.rows[x][y].clone()
                })
            })
            .collect()
    }

    /// Distribution after `r` steps from `start`, by repeated multiplication.
    pub fn power_row(&self, start: usize, r: u32) -> Distribution<L, S> {
        let mut dist: Vec<S> = (0..self.rows.len())
            .map(|i| if i == start { S::one() } else { S::zero() })
            .collect();
        for _ in 0..r {
            dist = self.step(&dist);
        }
        Distribution::new(self.labels.iter().cloned().zip(dist).collect())
    }

    /// Convex combination `Σ w_i M_i` of matrices over the same labels.
    pub fn mixture(parts: &[(S, &TransitionMatrix<L, S>)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| invalid("empty mixture"))?.1;
        let k = first.rows.len();
        let mut rows = vec![vec![S::zero(); k]; k];
        for (w, m) in parts {
            if m.labels != first.labels {
                return Err(Error::LabelMismatch(
                    "mixture of chains over different states".into(),
                ));
            }
            for (acc, row) in rows.iter_mut().zip(&m.rows) {
                for (a, x) in acc.iter_mut().zip(row) {
                    *a = a.clone() + w.clone() * x.clone();
                }
            }
        }
        Ok(TransitionMatrix {
            labels: first.labels.clone(),
            rows,
        })
    }
}

fn tolerance<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_rational(&Rational::new(
            BigInt::one(),
            BigInt::from(1_000_000_000_000i64),
        ))
    }
}

/// Transition matrix of the chain through the class-sum formula.
pub fn transition_matrix<L, S>(
    gd: &GroupData<L>,
    crv: &ClassRatioVector<L>,
) -> Result<TransitionMatrix<L, S>>
where
    L: Clone + PartialEq + Display,
    S: Scalar,
{
    crv.check_against(gd)?;
    let k = gd.num_classes();
    // weight(C) = |C|/|G| · ratio(C)
    let weights: Vec<S> = (0..k)
        .map(|c| {
            S::from_rational(
                &(Rational::new(gd.class_sizes[c].clone(), gd.order.clone()) * &crv.ratios[c]),
            )
        })
        .collect();
    let mut rows = Vec::with_capacity(k);
    let neg_tol = tolerance::<S>();
    for rho in 0..k {
        let mut row = Vec::with_capacity(k);
        for sigma in 0..k {
            let mut acc = S::zero();
            for (c, w) in weights.iter().enumerate() {
                let prod = gd.chars[rho][c] * gd.chars[sigma][c];
                if prod != 0 {
                    acc = acc + w.clone() * S::from_i64(prod);
                }
            }
            let entry = acc * S::from_i64(gd.dims[sigma]).div(&S::from_i64(gd.dims[rho]));
            if entry < S::zero() - neg_tol.clone() {
                return Err(Error::Consistency(format!(
                    "negative transition probability {} from {} to {}",
                    entry.format(),
                    gd.irreps[rho],
                    gd.irreps[sigma]
                )));
            }
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(TransitionMatrix {
        labels: gd.irreps.clone(),
        rows,
    })
}

/// Transition matrix of the chain for `S_n ⊇ S_μ` from its definition:
/// `|H|/|G| · dim σ / dim ρ · Σ_τ κ(τ,ρ) κ(τ,σ)` with `κ` the restriction
/// multiplicities. Exponential in the number of blocks; meant for small n.
pub fn restriction_transition_matrix(
    mu: &Composition,
) -> Result<TransitionMatrix<Partition, Rational>> {
    let n = mu.n();
    let irreps = enumerate_partitions(n);
    let block_irreps: Vec<Vec<Partition>> = mu
        .parts()
        .iter()
        .map(|&m| enumerate_partitions(m))
        .collect();
    let mut taus: Vec<Vec<Partition>> = vec![vec![]];
    for options in &block_irreps {
        taus = taus
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    let mut kappa = vec![vec![0u64; irreps.len()]; taus.len()];
    for (t, tau) in taus.iter().enumerate() {
        for (r, rho) in irreps.iter().enumerate() {
            kappa[t][r] = restriction_multiplicity(rho, mu, tau)?;
        }
    }
    let index = Rational::new(
        BigInt::from(mu.young_subgroup_order()),
        BigInt::from(crate::partitions::factorial(n)),
    );
    let dims: Vec<i64> = irreps.iter().map(dim_i64).collect();
    let rows = (0..irreps.len())
        .map(|r| {
            (0..irreps.len())
                .map(|s| {
                    let overlap: u64 = kappa.iter().map(|k| k[r] * k[s]).sum();
                    &index * Rational::new(BigInt::from(dims[s]) * overlap, BigInt::from(dims[r]))
                })
                .collect()
        })
        .collect();
    Ok(TransitionMatrix {
        labels: irreps,
        rows,
    })
}

/// One eigenpair per conjugacy class.
///
/// `ψ_C` involves `|C|^{1/2}`, so it is stored as the rational part
/// `φ_C(ρ) = χ^ρ(C) / dim ρ` together with `|C|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpectrum<L> {
    pub classes: Vec<L>,
    pub class_sizes: Vec<BigInt>,
    pub eigenvalues: Vec<Rational>,
    /// `char_ratios[C][ρ] = χ^ρ(C) / dim ρ`.
    pub char_ratios: Vec<Vec<Rational>>,
    plancherel: Vec<Rational>,
}

impl<L: Clone + PartialEq + Display> ChainSpectrum<L> {
    /// `ψ_C(ρ)²`, which is rational.
    pub fn psi_squared(&self, class: usize, rho: usize) -> Rational {
        let phi = &self.char_ratios[class][rho];
        phi * phi * Rational::from_integer(self.class_sizes[class].clone())
    }

    /// `Σ_ρ π(ρ) φ_C(ρ) φ_D(ρ)`; orthonormality of the `ψ_C` is equivalent
    /// to this being `[C = D] / |C|`.
    pub fn weighted_inner(&self, c: usize, d: usize) -> Rational {
        self.plancherel
            .iter()
            .zip(self.char_ratios[c].iter().zip(&self.char_ratios[d]))
            .map(|(p, (x, y))| p * x * y)
            .sum()
    }

    /// Checks `J φ_C = β_C φ_C` for every class against an exact matrix.
    pub fn check_eigenpairs(&self, matrix: &TransitionMatrix<L, Rational>) -> Result<()> {
        for (c, phi) in self.char_ratios.iter().enumerate() {
            let lhs = matrix.apply(phi);
            let ok = lhs
                .iter()
                .zip(phi)
                .all(|(l, p)| *l == &self.eigenvalues[c] * p);
            if !ok {
                return Err(Error::Consistency(format!(
                    "class {} is not an eigenfunction",
                    self.classes[c]
                )));
            }
        }
        Ok(())
    }
}

pub fn spectrum<L>(gd: &GroupData<L>, crv: &ClassRatioVector<L>) -> Result<ChainSpectrum<L>>
where
    L: Clone + PartialEq + Display,
{
    crv.check_against(gd)?;
    let k = gd.num_classes();
    let char_ratios = (0..k)
        .map(|c| {
            (0..k)
                .map(|rho| {
                    Rational::new(BigInt::from(gd.chars[rho][c]), BigInt::from(gd.dims[rho]))
                })
                .collect()
        })
        .collect();
    let plancherel = gd
        .plancherel::<Rational>()
        .into_entries()
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    Ok(ChainSpectrum {
        classes: gd.class_labels.clone(),
        class_sizes: gd.class_sizes.clone(),
        eigenvalues: crv.ratios.clone(),
        char_ratios,
        plancherel,
    })
}

/// Distribution after `r` steps from the trivial representation for a
/// chain whose class `C` eigenvalue is `eigenvalues[C]`:
/// `dim ρ · Σ_C eig(C)^r · |C| · χ^ρ(C) / |G|`.
pub fn r_step_from_eigenvalues<L, S>(
    gd: &GroupData<L>,
    eigenvalues: &[S],
    r: u32,
) -> Distribution<L, S>
where
    L: Clone + PartialEq + Display,
    S: Scalar,
{
    let k = gd.num_classes();
    let class_weight: Vec<S> = (0..k)
        .map(|c| {
            let w = S::from_rational(&Rational::new(gd.class_sizes[c].clone(), gd.order.clone()));
            w * eigenvalues[c].pow(r)
        })
        .collect();
    let entries = (0..k)
        .map(|rho| {
            let s = (0..k).fold(S::zero(), |acc, c| {
                let x = gd.chars[rho][c];
                if x == 0 {
                    acc
                } else {
                    acc + class_weight[c].clone() * S::from_i64(x)
                }
            });
            (gd.irreps[rho].clone(), s * S::from_i64(gd.dims[rho]))
        })
        .collect();
    Distribution::new(entries)
}

/// `J_1^r`, the chain's distribution after `r` steps from the trivial
/// representation, by the spectral formula. `r = 0` is the point mass at
/// the trivial representation.
pub fn r_step_from_trivial<L, S>(
    gd: &GroupData<L>,
    crv: &ClassRatioVector<L>,
    r: u32,
) -> Result<Distribution<L, S>>
where
    L: Clone + PartialEq + Display,
    S: Scalar,
{
    crv.check_against(gd)?;
    let eig: Vec<S> = crv.ratios.iter().map(S::from_rational).collect();
    Ok(r_step_from_eigenvalues(gd, &eig, r))
}

/// `⟨χ^λ, (Ind_H^G 1)^r⟩`, recovered from `J_1^r(λ)` as
/// `(|G|/|H|)^r · J_1^r(λ) / dim λ`.
pub fn tensor_power_multiplicity<L>(
    gd: &GroupData<L>,
    crv: &ClassRatioVector<L>,
    lambda: &L,
    r: u32,
) -> Result<BigUint>
where
    L: Clone + PartialEq + Display,
{
    let idx = gd
        .irrep_index(lambda)
        .ok_or_else(|| Error::LabelMismatch(format!("unknown irreducible {lambda}")))?;
    let dist = r_step_from_trivial::<L, Rational>(gd, crv, r)?;
    let index = Rational::new(gd.order.clone(), crv.subgroup_order.clone());
    let value = num_traits::Pow::pow(&index, r) * &dist.entries()[idx].1
        / Rational::from_integer(gd.dims[idx].into());
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Consistency(format!(
            "multiplicity {value} is not a natural number"
        )));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Consistency("negative multiplicity".into()))
}

/// `β` together with the classes attaining it and `√|G| · β^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBound<L> {
    pub beta: Rational,
    pub witnesses: Vec<L>,
    pub r: u32,
    pub group_order: BigInt,
    pub bound: f64,
}

impl<L> SpectralBound<L> {
    /// Exact test of `value ≤ √|G| · β^r` via `value² ≤ |G| · β^{2r}`.
    pub fn dominates(&self, value: &Rational) -> bool {
        if value.is_negative() {
            return true;
        }
        let rhs = Rational::from_integer(self.group_order.clone())
            * num_traits::Pow::pow(&self.beta, 2 * self.r);
        value * value <= rhs
    }
}

/// `β = max_{C ≠ 1} ratio(C)` with every maximizing class, and the bound
/// `√|G| · β^r` on the L1 distance from `J_1^r` to Plancherel.
pub fn theorem1_bound<L>(
    gd: &GroupData<L>,
    crv: &ClassRatioVector<L>,
    r: u32,
) -> Result<SpectralBound<L>>
where
    L: Clone + PartialEq + Display,
{
    crv.check_against(gd)?;
    if gd.order.is_one() {
        return Err(invalid("the trivial group has no nontrivial class"));
    }
    let (beta, witnesses) = max_with_witnesses(
        (0..gd.num_classes())
            .filter(|&c| c != gd.identity_class())
            .map(|c| (crv.ratios[c].clone(), gd.class_labels[c].clone())),
    );
    let sqrt_order = ratio_to_f64(&Rational::from_integer(gd.order.clone())).sqrt();
    let bound = sqrt_order * ratio_to_f64(&beta).powi(r as i32);
    Ok(SpectralBound {
        beta,
        witnesses,
        r,
        group_order: gd.order.clone(),
        bound,
    })
}

/// Maximum value and every item attaining it; ties are all kept.
pub(crate) fn max_with_witnesses<T>(
    items: impl Iterator<Item = (Rational, T)>,
) -> (Rational, Vec<T>) {
    let mut best = Rational::zero();
    let mut witnesses = Vec::new();
    for (v, item) in items {
        if witnesses.is_empty() || v > best {
            best = v;
            witnesses = vec![item];
        } else if v == best {
            witnesses.push(item);
        }
    }
    (best, witnesses)
}

/// `Σ_ρ |dist(ρ) − π(ρ)|`.
pub fn l1_to_plancherel<L, S>(dist: &Distribution<L, S>, gd: &GroupData<L>) -> Result<S>
where
    L: Clone + PartialEq + Display,
    S: Scalar,
{
    dist.l1(&gd.plancherel())
}
