//! The acceptance grid: ten end-to-end checks, each reporting pass/fail
//! with a one-line summary of what was compared.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::chain::{
    l1_to_plancherel, r_step_from_trivial, restriction_transition_matrix,
    tensor_power_multiplicity, theorem1_bound, transition_matrix, ClassRatioVector, GroupData,
};
use crate::characters::CharacterTable;
use crate::error::Result;
use crate::gl_beta::{gl2_direct_beta, gl_beta_brute_force, gl_beta_closed_form};
use crate::parabolic::{
    beta_k_cut, beta_parabolic, beta_top_k_to_random, beta_top_to_random, class_ratio,
    ratio_vector_for, RootSubset,
};
use crate::partitions::{
    dimension, enumerate_partitions, factorial, kostka, plancherel, Composition, Partition,
};
use crate::rsk::{lis_length, pushforward, rsk_shape};
use crate::scalar::{fmt_ratio, int, ratio, Rational};
use crate::shuffles::{
    all_permutations, bhr_eigenvalue, isospectral_check, x_l_support, GroupAlgebraMeasure,
    ShuffleSpec,
};
use crate::verify::{tv_curve_montecarlo, verify_theorem2_series, McOptions};

/// Seed of the Monte Carlo criterion.
pub const MC_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {:>2} {}: {}",
            self.id, self.name, self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(&str, Check); 10] = [
    ("shape identity for shuffles", shape_identity),
    ("spectral L1 bound", spectral_bound),
    ("beta closed forms", beta_closed_forms),
    ("isospectrality", isospectrality),
    ("chain well-formedness", chain_well_formed),
    ("trivial subgroup mixes in one step", trivial_subgroup),
    ("tensor power multiplicities", tensor_multiplicities),
    ("RSK suite", rsk_suite),
    ("GL(n,q) beta", gl_beta),
    ("Monte Carlo TV trend", montecarlo_trend),
];

/// Runs criterion `id` (1-based). Errors count as failures.
pub fn run_criterion(id: usize) -> CriterionResult {
    let (name, check) = CRITERIA[id - 1];
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(run_criterion).collect()
}

/// The named shuffles of degree `n` plus one fixed mixture of them.
pub fn spec_grid(n: usize) -> Result<Vec<ShuffleSpec>> {
    let top = ShuffleSpec::top_to_random(n)?;
    let top2 = ShuffleSpec::top_k_to_random(n, 2)?;
    let riffle = ShuffleSpec::riffle_k_cut(n, n / 2)?;
    let mix = ShuffleSpec::mixture(&[
        (ratio(1, 2), &top),
        (ratio(1, 3), &riffle),
        (ratio(1, 6), &top2),
    ])?;
    Ok(vec![top, top2, riffle, mix])
}

fn compositions(n: usize) -> Vec<Composition> {
    (0u64..1 << (n - 1))
        .map(|mask| {
            let rs = RootSubset::new(n, (1..n).filter(|i| mask >> (i - 1) & 1 == 1))
                .expect("valid indices");
            rs.composition()
        })
        .collect()
}

fn shape_identity() -> Result<(bool, String)> {
    let jobs: Vec<ShuffleSpec> = (3..=7)
        .map(spec_grid)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let reports = jobs
        .par_iter()
        .map(|spec| verify_theorem2_series(spec, 10))
        .collect::<Result<Vec<_>>>()?;
    let checks: usize = reports.iter().map(Vec::len).sum();
    let worst = reports
        .iter()
        .flatten()
        .map(|r| r.max_discrepancy.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok((
        worst.is_zero(),
        format!(
            "{checks} (n, spec, r) cells, n=3..7, r=0..10; max discrepancy {}",
            fmt_ratio(&worst)
        ),
    ))
}

fn spectral_bound() -> Result<(bool, String)> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for n in 2..=7 {
        let gd = GroupData::symmetric(n)?;
        for mu in compositions(n) {
            let crv = ratio_vector_for(&mu)?;
            for r in 0..=30 {
                let dist = r_step_from_trivial::<Partition, Rational>(&gd, &crv, r)?;
                let l1 = l1_to_plancherel(&dist, &gd)?;
                checks += 1;
                if !theorem1_bound(&gd, &crv, r)?.dominates(&l1) {
                    failures.push(format!("n={n} mu={mu} r={r}"));
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{checks} (n, mu, r) cells, n=2..7, r=0..30; violations {:?}",
            failures
        ),
    ))
}

fn beta_closed_forms() -> Result<(bool, String)> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for n in 2..=10 {
        checks += 1;
        let top = beta_parabolic(&Composition::new(vec![1, n - 1])?)?;
        if top.beta != beta_top_to_random(n) {
            failures.push(format!("top n={n}"));
        }
        for k in 1..n {
            checks += 1;
            let mut parts = vec![1; k];
            parts.push(n - k);
            if beta_parabolic(&Composition::new(parts)?)?.beta != beta_top_k_to_random(n, k) {
                failures.push(format!("top-k n={n} k={k}"));
            }
        }
    }
    for n in 5..=10 {
        let mut transposition = vec![2];
        transposition.extend(std::iter::repeat_n(1, n - 2));
        let transposition = Partition::new(transposition)?;
        for k in 1..n {
            checks += 1;
            let b = beta_parabolic(&Composition::new(vec![k, n - k])?)?;
            if b.beta != beta_k_cut(n, k) || !b.witnesses.contains(&transposition) {
                failures.push(format!("k-cut n={n} k={k}"));
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("{checks} closed forms checked; mismatches {failures:?}"),
    ))
}

fn isospectrality() -> Result<(bool, String)> {
    let mut sets = 0;
    let mut failures = Vec::new();
    for n in 3..=6 {
        for spec in spec_grid(n)? {
            sets += 1;
            if !isospectral_check(&spec)?.equal {
                failures.push(format!("n={n} {}", spec.to_text()));
            }
        }
    }
    let mut entries = 0;
    for n in 1..=8 {
        for mu in compositions(n) {
            for nu in enumerate_partitions(n) {
                entries += 1;
                if bhr_eigenvalue(&mu, &nu)? != class_ratio(&mu, &nu)? {
                    failures.push(format!("bhr mu={mu} nu={nu}"));
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{sets} eigenvalue sets (n=3..6), {entries} eigenvalue entries (n≤8); mismatches {failures:?}")))
}

fn chain_well_formed() -> Result<(bool, String)> {
    let mut matrices = 0;
    let mut failures = Vec::new();
    for n in 2..=8 {
        let gd = GroupData::symmetric(n)?;
        let pi = gd.plancherel::<Rational>();
        let pi: Vec<&Rational> = pi.masses().collect();
        for mu in compositions(n) {
            matrices += 1;
            let m = transition_matrix::<Partition, Rational>(&gd, &ratio_vector_for(&mu)?)?;
            let k = gd.num_classes();
            let rows_ok = m.row_sums().iter().all(|s| *s == int(1));
            let balanced =
                (0..k).all(|a| (0..k).all(|b| pi[a] * m.entry(a, b) == pi[b] * m.entry(b, a)));
            if !rows_ok || !balanced {
                failures.push(format!("mu={mu}"));
            }
            if n <= 5 && restriction_transition_matrix(&mu)? != m {
                failures.push(format!("kappa oracle mu={mu}"));
            }
        }
    }
    Ok((failures.is_empty(), format!("{matrices} parabolic chains (n=2..8), multiplicity oracle at n≤5; failures {failures:?}")))
}

fn trivial_subgroup() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 2..=7 {
        let gd = GroupData::symmetric(n)?;
        let m = transition_matrix::<Partition, Rational>(
            &gd,
            &ClassRatioVector::trivial_subgroup(&gd),
        )?;
        let target: Vec<Rational> = gd.plancherel::<Rational>().masses().cloned().collect();
        for start in 0..gd.num_classes() {
            if m.rows()[start] != target {
                failures.push(format!("n={n} start={}", gd.irreps()[start]));
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("every start, n=2..7; rows differing from Plancherel {failures:?}"),
    ))
}

/// `⟨χ^λ, π^r⟩` with the permutation character `π = Σ_κ K_{κμ} χ^κ`.
fn multiplicity_by_young_rule(
    table: &CharacterTable,
    mu: &Composition,
    lambda: usize,
    r: u32,
) -> Result<BigInt> {
    let n = table.n();
    let kostkas = table
        .partitions()
        .iter()
        .map(|k| kostka(k, mu.parts()))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigInt::zero();
    for c in 0..table.partitions().len() {
        let perm: i64 = (0..kostkas.len())
            .map(|k| kostkas[k] as i64 * table.values()[k][c])
            .sum();
        total += BigInt::from(table.class_sizes()[c].clone())
            * table.values()[lambda][c]
            * num_traits::pow(BigInt::from(perm), r as usize);
    }
    Ok(total / BigInt::from(factorial(n)))
}

fn tensor_multiplicities() -> Result<(bool, String)> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for n in 2..=6 {
        let table = CharacterTable::build(n)?;
        let gd = GroupData::from_table(&table)?;
        for mu in compositions(n) {
            let crv = ratio_vector_for(&mu)?;
            for r in 0..=4 {
                for (i, lambda) in table.partitions().iter().enumerate() {
                    checks += 1;
                    let got = BigInt::from(tensor_power_multiplicity(&gd, &crv, lambda, r)?);
                    if got != multiplicity_by_young_rule(&table, &mu, i, r)? {
                        failures.push(format!("n={n} mu={mu} r={r} lambda={lambda}"));
                    }
                }
            }
        }
    }
    let gd = GroupData::symmetric(3)?;
    let crv = ratio_vector_for(&Composition::new(vec![1, 2])?)?;
    let s3 = gd
        .irreps()
        .iter()
        .map(|l| tensor_power_multiplicity(&gd, &crv, l, 2).map(|m| m.to_string()))
        .collect::<Result<Vec<_>>>()?
        .join(",");
    if s3 != "2,3,1" {
        failures.push(format!("S_3/S_2 r=2 gave {s3}"));
    }
    Ok((failures.is_empty(), format!("{checks} multiplicities (n=2..6, r=0..4); S_3/S_2 r=2 -> ({s3}); mismatches {failures:?}")))
}

fn rsk_suite() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 1..=7 {
        if pushforward(&GroupAlgebraMeasure::<Rational>::uniform(n)) != plancherel::<Rational>(n) {
            failures.push(format!("uniform pushforward n={n}"));
        }
        if all_permutations(n)
            .iter()
            .any(|g| rsk_shape(g) != rsk_shape(&g.inverse()))
        {
            failures.push(format!("inverse invariance n={n}"));
        }
    }
    for n in 1..=6 {
        for rs in (0u64..1 << (n - 1))
            .map(|m| RootSubset::new(n, (1..n).filter(|i| m >> (i - 1) & 1 == 1)))
        {
            let rs = rs?;
            let support = x_l_support(&rs)?;
            let mu = rs.composition();
            for lambda in enumerate_partitions(n) {
                let count = support.iter().filter(|g| rsk_shape(g) == lambda).count() as u64;
                let expected = dimension(&lambda) * kostka(&lambda, mu.parts())?;
                if num_bigint::BigUint::from(count) != expected {
                    failures.push(format!("X_L count L={rs} lambda={lambda}"));
                }
            }
        }
    }
    for n in 1..=8 {
        if all_permutations(n)
            .par_iter()
            .any(|g| lis_length(g) != rsk_shape(g).part(0))
        {
            failures.push(format!("lis n={n}"));
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "pushforward and inversion n≤7, X_L shape counts n≤6, LIS n≤8; failures {failures:?}"
        ),
    ))
}

fn gl_beta() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 2..=6 {
        for q in [2, 3, 4, 5] {
            if gl_beta_brute_force(n, q)?.0 != gl_beta_closed_form(n, q)? {
                failures.push(format!("n={n} q={q}"));
            }
        }
    }
    let d2 = gl2_direct_beta(2)?;
    let d3 = gl2_direct_beta(3)?;
    if d2 != int(0) || d2 != gl_beta_closed_form(2, 2)? {
        failures.push(format!("direct q=2 gave {d2}"));
    }
    if d3 != ratio(1, 12) || d3 != gl_beta_closed_form(2, 3)? {
        failures.push(format!("direct q=3 gave {d3}"));
    }
    Ok((
        failures.is_empty(),
        format!("closed form = brute force for n=2..6, q=2..5; direct GL(2,2)={}, GL(2,3)={}; failures {failures:?}", fmt_ratio(&d2), fmt_ratio(&d3)),
    ))
}

/// Grid `n, 2n, …` ending at `⌈n ln n⌉ + 2n`.
pub fn montecarlo_grid(n: usize) -> Vec<u32> {
    let end = ((n as f64) * (n as f64).ln()).ceil() as u32 + 2 * n as u32;
    let mut grid: Vec<u32> = (1..)
        .map(|i| i * n as u32)
        .take_while(|&r| r < end)
        .collect();
    grid.push(end);
    grid
}

fn montecarlo_trend() -> Result<(bool, String)> {
    let n = 20;
    let grid = montecarlo_grid(n);
    let (first, last) = (grid[0], *grid.last().expect("nonempty grid"));
    let curve = tv_curve_montecarlo(
        &ShuffleSpec::top_to_random(n)?,
        McOptions {
            samples: 100_000,
            seed: MC_SEED,
            grid,
            bootstrap: 200,
        },
    )?;
    let a = curve.point(first).expect("grid point");
    let b = curve.point(last).expect("grid point");
    let se = (a.std_error.unwrap_or(0.0).powi(2) + b.std_error.unwrap_or(0.0).powi(2)).sqrt();
    let separated = a.shape_tv - b.shape_tv > 3.0 * se;
    let values: Vec<String> = curve
        .points
        .iter()
        .map(|p| {
            format!(
                "r={}:{:.4}±{:.4}",
                p.r,
                p.shape_tv,
                p.std_error.unwrap_or(0.0)
            )
        })
        .collect();
    Ok((
        separated && curve.trend.weakly_decreasing,
        format!(
            "n=20 top-to-random, 1e5 samples/point, seed {MC_SEED}; {}; drop {:.4} = {:.1} SE; weakly decreasing {}",
            values.join(" "),
            a.shape_tv - b.shape_tv,
            (a.shape_tv - b.shape_tv) / se,
            curve.trend.weakly_decreasing
        ),
    ))
}
