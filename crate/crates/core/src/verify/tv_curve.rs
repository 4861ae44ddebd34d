use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::partitions::{enumerate_partitions, factorial, plancherel};
use crate::rsk::{pushforward_indexed, rsk_shape, shape_indices, ShapeTally};
use crate::scalar::{fmt_ratio, ratio_to_f64, Rational};
use crate::shuffles::{
    convolution_powers_with_max, mixture_eigenvalues, stream_rng, GroupAlgebraMeasure,
    ShuffleSampler, ShuffleSpec, DEFAULT_EXACT_MAX_N,
};

const CHUNK: usize = 4096;
const MIN_SAMPLES: usize = 1000;

/// Monte Carlo settings. Each grid point draws its own `samples`
/// independent products from streams derived from `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    pub grid: Vec<u32>,
    pub bootstrap: usize,
}

impl McOptions {
    /// `0, step, 2·step, …` up to and including `r_max`.
    pub fn evenly_spaced(samples: usize, seed: u64, r_max: u32, step: u32) -> Self {
        let step = step.max(1);
        let mut grid: Vec<u32> = (0..=r_max).step_by(step as usize).collect();
        if grid.last() != Some(&r_max) {
            grid.push(r_max);
        }
        McOptions {
            samples,
            seed,
            grid,
            bootstrap: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub r: u32,
    pub shape_tv: f64,
    pub shape_tv_exact: Option<Rational>,
    pub permutation_tv: Option<Rational>,
    /// Bootstrap standard error of a Monte Carlo estimate.
    pub std_error: Option<f64>,
    /// `√(n!) · β^r`, the spectral bound on the shape-level L1 distance.
    pub l1_bound: Option<f64>,
    /// Exact check of `2·shape_tv ≤ √(n!) · β^r`.
    pub bound_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrendStats {
    /// Every consecutive increase is `≤ 0` (exact) or within 3 combined
    /// standard errors (Monte Carlo).
    pub weakly_decreasing: bool,
    pub max_increase: f64,
    pub first_last_drop: f64,
    pub first_last_drop_in_se: Option<f64>,
    /// First grid point with shape-TV at most ½.
    pub crossover_half: Option<u32>,
}

impl TrendStats {
    fn from_points(points: &[CurvePoint]) -> Self {
        let combined = |a: &CurvePoint, b: &CurvePoint| match (a.std_error, b.std_error) {
            (Some(x), Some(y)) => Some((x * x + y * y).sqrt()),
            _ => None,
        };
        let mut weakly_decreasing = true;
        let mut max_increase = f64::NEG_INFINITY;
        for w in points.windows(2) {
            let inc = w[1].shape_tv - w[0].shape_tv;
            max_increase = max_increase.max(inc);
            let ok = match (&w[0].shape_tv_exact, &w[1].shape_tv_exact) {
                (Some(a), Some(b)) => b <= a,
                _ => inc <= 3.0 * combined(&w[0], &w[1]).unwrap_or(0.0),
            };
            weakly_decreasing &= ok;
        }
        let (first_last_drop, first_last_drop_in_se) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => {
                let drop = f.shape_tv - l.shape_tv;
                (drop, combined(f, l).map(|se| drop / se))
            }
            _ => (0.0, None),
        };
        let crossover_half = points.iter().find(|p| p.shape_tv <= 0.5).map(|p| p.r);
        TrendStats {
            weakly_decreasing,
            max_increase: if points.len() < 2 { 0.0 } else { max_increase },
            first_last_drop,
            first_last_drop_in_se,
            crossover_half,
        }
    }
}

/// Distance to stationarity as a function of the number of shuffles.
#[derive(Clone, Debug, PartialEq)]
pub struct TvCurve {
    pub n: usize,
    pub mc: Option<McOptions>,
    pub points: Vec<CurvePoint>,
    pub trend: TrendStats,
}

impl TvCurve {
    pub fn is_exact(&self) -> bool {
        self.mc.is_none()
    }

    pub fn point(&self, r: u32) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.r == r)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.is_exact() {
            out.push_str("r,shape_tv,permutation_tv,l1_bound,bound_holds,shape_tv_exact,permutation_tv_exact\n");
            for p in &self.points {
                let perm = p.permutation_tv.as_ref().expect("exact curve");
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    p.r,
                    p.shape_tv,
                    ratio_to_f64(perm),
                    p.l1_bound.unwrap_or(f64::NAN),
                    p.bound_holds.unwrap_or(false),
                    fmt_ratio(p.shape_tv_exact.as_ref().expect("exact curve")),
                    fmt_ratio(perm),
                )
                .unwrap();
            }
        } else {
            out.push_str("r,shape_tv,std_error\n");
            for p in &self.points {
                writeln!(
                    out,
                    "{},{},{}",
                    p.r,
                    p.shape_tv,
                    p.std_error.unwrap_or(f64::NAN)
                )
                .unwrap();
            }
        }
        out
    }
}

/// Exact curve when `mc` is `None`, Monte Carlo otherwise.
pub fn tv_curve(spec: &ShuffleSpec, r_max: u32, mc: Option<McOptions>) -> Result<TvCurve> {
    match mc {
        None => tv_curve_exact(spec, r_max),
        Some(opts) => tv_curve_montecarlo(spec, opts),
    }
}

/// Shape-level and permutation-level TV for `r = 0..=r_max`, in exact
/// arithmetic, alongside the spectral bound of the mixed chain.
pub fn tv_curve_exact(spec: &ShuffleSpec, r_max: u32) -> Result<TvCurve> {
    tv_curve_exact_with_max(spec, r_max, DEFAULT_EXACT_MAX_N)
}

pub fn tv_curve_exact_with_max(spec: &ShuffleSpec, r_max: u32, max_n: usize) -> Result<TvCurve> {
    let n = spec.n();
    let powers = convolution_powers_with_max::<Rational>(spec, r_max, max_n)?;
    let shapes = shape_indices(n);
    let target = plancherel::<Rational>(n);
    let uniform = GroupAlgebraMeasure::<Rational>::uniform(n);
    let order = Rational::from_integer(BigInt::from(factorial(n)));
    // The identity class is last in canonical order.
    let eig = mixture_eigenvalues(spec)?;
    let beta = eig[..eig.len() - 1].iter().max().cloned();
    let points = powers
        .iter()
        .enumerate()
        .map(|(r, m)| {
            let r = r as u32;
            let shape_tv = pushforward_indexed(m, &shapes).tv(&target)?;
            let permutation_tv = m.tv(&uniform)?;
            let (l1_bound, bound_holds) = match &beta {
                Some(b) => {
                    let l1 = Rational::from_integer(2.into()) * &shape_tv;
                    let rhs = &order * num_traits::Pow::pow(b, 2 * r);
                    (
                        Some(ratio_to_f64(&order).sqrt() * ratio_to_f64(b).powi(r as i32)),
                        Some(&l1 * &l1 <= rhs),
                    )
                }
                None => (None, None),
            };
            Ok(CurvePoint {
                r,
                shape_tv: ratio_to_f64(&shape_tv),
                shape_tv_exact: Some(shape_tv),
                permutation_tv: Some(permutation_tv),
                std_error: None,
                l1_bound,
                bound_holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let trend = TrendStats::from_points(&points);
    Ok(TvCurve {
        n,
        mc: None,
        points,
        trend,
    })
}

/// Plug-in estimate of the shape-level TV to Plancherel at every grid
/// point, with bootstrap standard errors. The plug-in estimator is biased
/// upward by sampling noise in the frequencies.
pub fn tv_curve_montecarlo(spec: &ShuffleSpec, opts: McOptions) -> Result<TvCurve> {
    if opts.samples < MIN_SAMPLES {
        return Err(invalid(format!(
            "Monte Carlo needs at least {MIN_SAMPLES} samples, got {}",
            opts.samples
        )));
    }
    if opts.grid.is_empty() {
        return Err(invalid("empty Monte Carlo grid"));
    }
    let n = spec.n();
    let sampler = ShuffleSampler::new(spec);
    let shapes = enumerate_partitions(n);
    let target: Vec<f64> = plancherel::<f64>(n).masses().copied().collect();
    let points = opts
        .grid
        .iter()
        .enumerate()
        .map(|(point, &r)| {
            let stream_base = (point as u64) << 32;
            let chunks = opts.samples.div_ceil(CHUNK);
            let tally = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = stream_rng(opts.seed, stream_base | c as u64);
                    let len = CHUNK.min(opts.samples - c * CHUNK);
                    let mut tally = ShapeTally::new();
                    for _ in 0..len {
                        tally.record(rsk_shape(&sampler.sample_product(&mut rng, r)));
                    }
                    tally
                })
                .reduce(ShapeTally::new, ShapeTally::merge);
            let counts: Vec<u64> = shapes.iter().map(|s| tally.count(s)).collect();
            let estimate = plug_in_tv(&counts, &target);
            let std_error = bootstrap_se(
                &counts,
                &target,
                opts.bootstrap,
                opts.seed,
                stream_base | (1 << 31),
            );
            CurvePoint {
                r,
                shape_tv: estimate,
                shape_tv_exact: None,
                permutation_tv: None,
                std_error: Some(std_error),
                l1_bound: None,
                bound_holds: None,
            }
        })
        .collect::<Vec<_>>();
    let trend = TrendStats::from_points(&points);
    Ok(TvCurve {
        n,
        mc: Some(opts),
        points,
        trend,
    })
}

fn plug_in_tv(counts: &[u64], target: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    0.5 * counts
        .iter()
        .zip(target)
        .map(|(&c, &t)| (c as f64 / total as f64 - t).abs())
        .sum::<f64>()
}

/// Standard deviation of the plug-in TV over multinomial resamples of the
/// observed counts.
fn bootstrap_se(
    counts: &[u64],
    target: &[f64],
    resamples: usize,
    seed: u64,
    stream_base: u64,
) -> f64 {
    if resamples < 2 {
        return 0.0;
    }
    let cumulative: Vec<u64> = counts
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().unwrap_or(&0);
    let values: Vec<f64> = (0..resamples)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, stream_base | b as u64);
            let mut resampled = vec![0u64; counts.len()];
            for _ in 0..total {
                let u = rng.random_range(0..total);
                resampled[cumulative.partition_point(|&c| c <= u)] += 1;
            }
            plug_in_tv(&resampled, target)
        })
        .collect();
    let mean = values.iter().sum::<f64>() / resamples as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (resamples - 1) as f64;
    var.sqrt()
}
