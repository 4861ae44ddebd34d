//! Cross-checks between the representation chain and the shuffles:
//! shape-level equality of the two r-step distributions, total variation
//! comparisons, and convergence curves.

mod tv_curve;

pub use tv_curve::{
    tv_curve, tv_curve_exact, tv_curve_exact_with_max, tv_curve_montecarlo, CurvePoint, McOptions,
    TrendStats, TvCurve,
};

use std::fmt::Write as _;

use num_traits::Zero;

use crate::chain::{r_step_from_eigenvalues, transition_matrix, GroupData, TransitionMatrix};
use crate::error::{Error, Result};
use crate::parabolic::ratio_vector_for;
use crate::partitions::{Partition, PartitionDistribution};
use crate::rsk::{pushforward_indexed, shape_indices};
use crate::scalar::{fmt_ratio, Rational, Scalar};
use crate::shuffles::{
    convolution_powers_with_max, mixture_eigenvalues, GroupAlgebraMeasure, ShuffleSpec,
    DEFAULT_EXACT_MAX_N,
};

/// Both sides of the shape-level identity at one `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeIdentityReport {
    pub n: usize,
    pub r: u32,
    /// `r` steps of the mixed chain from the trivial representation.
    pub chain_side: PartitionDistribution<Rational>,
    /// RSK pushforward of the `r`-th convolution power.
    pub shuffle_side: PartitionDistribution<Rational>,
    pub max_discrepancy: Rational,
}

impl ShapeIdentityReport {
    pub fn holds(&self) -> bool {
        self.max_discrepancy.is_zero()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,shape,chain_side,shuffle_side\n");
        for ((shape, a), (_, b)) in self
            .chain_side
            .entries()
            .iter()
            .zip(self.shuffle_side.entries())
        {
            let shape = crate::distribution::csv_field(&shape.to_string());
            writeln!(out, "{},{shape},{},{}", self.r, fmt_ratio(a), fmt_ratio(b)).unwrap();
        }
        out
    }
}

/// Chain side of the identity: the mixed chain whose class-`C` eigenvalue
/// is `Σ_L p_L · ratio(μ_L, C)`, run for `r` steps by the spectral formula.
pub fn mixed_chain_r_step(
    gd: &GroupData<Partition>,
    spec: &ShuffleSpec,
    r: u32,
) -> Result<PartitionDistribution<Rational>> {
    if gd.irreps().first().map(Partition::n) != Some(spec.n()) {
        return Err(Error::SizeMismatch {
            expected: spec.n(),
            got: gd.irreps().first().map_or(0, Partition::n),
        });
    }
    let eig = mixture_eigenvalues(spec)?;
    Ok(r_step_from_eigenvalues(gd, &eig, r))
}

/// The mixed chain as the `p_L`-weighted sum of the parabolic transition
/// matrices.
pub fn mixed_transition_matrix(
    gd: &GroupData<Partition>,
    spec: &ShuffleSpec,
) -> Result<TransitionMatrix<Partition, Rational>> {
    let matrices = spec
        .weights()
        .iter()
        .map(|(rs, _)| transition_matrix(gd, &ratio_vector_for(&rs.composition())?))
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<(Rational, &TransitionMatrix<Partition, Rational>)> = spec
        .weights()
        .iter()
        .map(|(_, p)| p.clone())
        .zip(&matrices)
        .collect();
    TransitionMatrix::mixture(&parts)
}

/// [`mixed_chain_r_step`] recomputed by powering [`mixed_transition_matrix`].
pub fn mixed_chain_r_step_by_matrix(
    gd: &GroupData<Partition>,
    spec: &ShuffleSpec,
    r: u32,
) -> Result<PartitionDistribution<Rational>> {
    Ok(mixed_transition_matrix(gd, spec)?.power_row(gd.trivial(), r))
}

pub fn verify_theorem2(spec: &ShuffleSpec, r: u32) -> Result<ShapeIdentityReport> {
    Ok(verify_theorem2_series(spec, r)?
        .pop()
        .expect("series has r + 1 entries"))
}

/// Reports for every `r` in `0..=r_max`, sharing one run of convolution
/// powers.
pub fn verify_theorem2_series(spec: &ShuffleSpec, r_max: u32) -> Result<Vec<ShapeIdentityReport>> {
    verify_theorem2_series_with_max(spec, r_max, DEFAULT_EXACT_MAX_N)
}

pub fn verify_theorem2_series_with_max(
    spec: &ShuffleSpec,
    r_max: u32,
    max_n: usize,
) -> Result<Vec<ShapeIdentityReport>> {
    let n = spec.n();
    let powers = convolution_powers_with_max::<Rational>(spec, r_max, max_n)?;
    let gd = GroupData::symmetric(n)?;
    let eig = mixture_eigenvalues(spec)?;
    let shapes = shape_indices(n);
    powers
        .iter()
        .enumerate()
        .map(|(r, m)| {
            let r = r as u32;
            let chain_side = r_step_from_eigenvalues(&gd, &eig, r);
            let shuffle_side = pushforward_indexed(m, &shapes);
            let max_discrepancy = chain_side.max_abs_diff(&shuffle_side)?;
            Ok(ShapeIdentityReport {
                n,
                r,
                chain_side,
                shuffle_side,
                max_discrepancy,
            })
        })
        .collect()
}

/// Either kind of probability measure that [`tv`] compares.
#[derive(Clone, Copy, Debug)]
pub enum MeasureRef<'a, S> {
    Shapes(&'a PartitionDistribution<S>),
    Permutations(&'a GroupAlgebraMeasure<S>),
}

/// `½ Σ |Q₁ − Q₂|`, which is also the largest probability gap over events.
pub fn tv<S: Scalar>(a: MeasureRef<'_, S>, b: MeasureRef<'_, S>) -> Result<S> {
    match (a, b) {
        (MeasureRef::Shapes(x), MeasureRef::Shapes(y)) => x.tv(y),
        (MeasureRef::Permutations(x), MeasureRef::Permutations(y)) => x.tv(y),
        _ => Err(Error::Invalid(
            "cannot compare a shape distribution with a permutation measure".into(),
        )),
    }
}

/// Shape-level and permutation-level distances to stationarity at one `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct TotvarCheck {
    pub r: u32,
    /// TV between the RSK pushforward and Plancherel.
    pub shape_tv: Rational,
    /// TV between the convolution power and uniform.
    pub permutation_tv: Rational,
}

impl TotvarCheck {
    pub fn holds(&self) -> bool {
        self.shape_tv <= self.permutation_tv
    }
}

pub fn corollary_totvar_check(spec: &ShuffleSpec, r: u32) -> Result<TotvarCheck> {
    Ok(corollary_totvar_series(spec, r)?
        .pop()
        .expect("series has r + 1 entries"))
}

pub fn corollary_totvar_series(spec: &ShuffleSpec, r_max: u32) -> Result<Vec<TotvarCheck>> {
    let curve = tv_curve_exact(spec, r_max)?;
    Ok(curve
        .points
        .into_iter()
        .map(|p| TotvarCheck {
            r: p.r,
            shape_tv: p.shape_tv_exact.expect("exact curve"),
            permutation_tv: p.permutation_tv.expect("exact curve"),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::plancherel;
    use crate::scalar::{int, ratio};
    use crate::shuffles::{convolution_power, measure_of};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn half_mix(n: usize, k: usize) -> ShuffleSpec {
        let a = ShuffleSpec::top_to_random(n).unwrap();
        let b = ShuffleSpec::riffle_k_cut(n, k).unwrap();
        ShuffleSpec::mixture(&[(ratio(1, 2), &a), (ratio(1, 2), &b)]).unwrap()
    }

    #[test]
    fn shape_identity_small_example() {
        let rep = verify_theorem2(&ShuffleSpec::top_to_random(3).unwrap(), 1).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.chain_side.get(&p("3")), Some(&ratio(1, 3)));
        assert_eq!(rep.chain_side.get(&p("2,1")), Some(&ratio(2, 3)));
        assert_eq!(rep.chain_side.get(&p("1,1,1")), Some(&int(0)));
    }

    #[test]
    fn shape_identity_r_zero_is_point_mass() {
        for n in 2..=5 {
            let rep = verify_theorem2(&ShuffleSpec::top_to_random(n).unwrap(), 0).unwrap();
            assert!(rep.holds());
            assert_eq!(rep.chain_side.get(&Partition::row(n)), Some(&int(1)));
        }
    }

    #[test]
    fn shape_identity_mixture() {
        let rep = verify_theorem2(&half_mix(5, 2), 3).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn shape_identity_small_grid() {
        for n in 3..=5 {
            for spec in [
                ShuffleSpec::top_to_random(n).unwrap(),
                ShuffleSpec::top_k_to_random(n, 2).unwrap(),
                ShuffleSpec::riffle_k_cut(n, n / 2).unwrap(),
            ] {
                for rep in verify_theorem2_series(&spec, 6).unwrap() {
                    assert!(rep.holds(), "n={n} r={} spec={}", rep.r, spec.to_text());
                }
            }
        }
    }

    #[test]
    fn spectral_and_matrix_paths_agree() {
        for n in 2..=5 {
            let gd = GroupData::symmetric(n).unwrap();
            let mut specs = vec![
                ShuffleSpec::top_to_random(n).unwrap(),
                ShuffleSpec::uniform(n),
            ];
            if n >= 4 {
                specs.push(half_mix(n, 2));
            }
            for spec in &specs {
                for r in 0..=5 {
                    assert_eq!(
                        mixed_chain_r_step(&gd, spec, r).unwrap(),
                        mixed_chain_r_step_by_matrix(&gd, spec, r).unwrap(),
                        "n={n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn mixed_chain_rejects_wrong_degree() {
        let gd = GroupData::symmetric(4).unwrap();
        assert!(mixed_chain_r_step(&gd, &ShuffleSpec::top_to_random(3).unwrap(), 1).is_err());
    }

    #[test]
    fn tv_examples() {
        let planch = plancherel::<Rational>(3);
        let one_step = crate::rsk::pushforward(
            &measure_of::<Rational>(&ShuffleSpec::top_to_random(3).unwrap()).unwrap(),
        );
        assert_eq!(
            tv(MeasureRef::Shapes(&planch), MeasureRef::Shapes(&planch)).unwrap(),
            int(0)
        );
        assert_eq!(
            tv(MeasureRef::Shapes(&one_step), MeasureRef::Shapes(&planch)).unwrap(),
            ratio(1, 6)
        );
        let id = GroupAlgebraMeasure::<Rational>::point(&crate::Permutation::identity(3));
        let rev = GroupAlgebraMeasure::<Rational>::point(&crate::Permutation::reversal(3));
        assert_eq!(
            tv(
                MeasureRef::Permutations(&id),
                MeasureRef::Permutations(&rev)
            )
            .unwrap(),
            int(1)
        );
        assert!(tv(MeasureRef::Shapes(&planch), MeasureRef::Permutations(&id)).is_err());
    }

    #[test]
    fn totvar_inequality() {
        let checks = corollary_totvar_series(&ShuffleSpec::top_to_random(4).unwrap(), 8).unwrap();
        assert!(checks.iter().all(TotvarCheck::holds));
        assert_eq!(checks[0].shape_tv, int(1) - ratio(1, 24));
        assert_eq!(checks[0].permutation_tv, int(1) - ratio(1, 24));
        let checks = corollary_totvar_series(&ShuffleSpec::riffle_k_cut(5, 2).unwrap(), 6).unwrap();
        assert!(checks.iter().all(TotvarCheck::holds));
    }

    #[test]
    fn report_csv() {
        let rep = verify_theorem2(&ShuffleSpec::top_to_random(3).unwrap(), 1).unwrap();
        assert_eq!(
            rep.to_csv(),
            "r,shape,chain_side,shuffle_side\n1,3,1/3,1/3\n1,\"2,1\",2/3,2/3\n1,\"1,1,1\",0,0\n"
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = ShuffleSpec::top_to_random(9).unwrap();
        assert!(matches!(
            verify_theorem2(&spec, 1),
            Err(Error::Capacity { .. })
        ));
        assert!(convolution_power::<Rational>(&spec, 1).is_err());
    }
}
