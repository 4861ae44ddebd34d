use std::collections::BTreeSet;
use std::fmt::Write as _;

use shufflerep_core::chain::{
    l1_to_plancherel, r_step_from_trivial, spectrum as chain_spectrum, tensor_power_multiplicity,
    theorem1_bound,
};
use shufflerep_core::characters::CharacterTable;
use shufflerep_core::distribution::csv_field;
use shufflerep_core::gl_beta::{gl2_direct_beta, gl_beta_brute_force, gl_beta_closed_form};
use shufflerep_core::io::{
    parse_class_ratios, parse_group_data, stringify_group, stringify_ratios,
};
use shufflerep_core::parabolic::ratio_vector_with_max;
use shufflerep_core::scalar::{fmt_ratio, ratio_to_f64};
use shufflerep_core::selftest::{run_criterion, CRITERIA, MC_SEED};
use shufflerep_core::shuffles::isospectral_check_with_max;
use shufflerep_core::verify::{
    tv_curve_exact_with_max, tv_curve_montecarlo, verify_theorem2_series_with_max, McOptions,
};
use shufflerep_core::{ClassRatioVector, Error, GroupData, Rational, Result};

use crate::args::{parse_mu, parse_shuffle};
use crate::{Outcome, SubgroupArgs};

pub struct McArgs {
    pub samples: usize,
    pub seed: u64,
    pub step: Option<u32>,
    pub bootstrap: usize,
}

pub fn with_header(o: &Outcome) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = format!(
        "# command: shufflerep {}\n# version: {}\n# mode: {}\n",
        args.join(" "),
        env!("CARGO_PKG_VERSION"),
        o.mode
    );
    if let Some(seed) = o.seed {
        writeln!(out, "# seed: {seed}").unwrap();
    }
    out.push_str(&o.body);
    out
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_subgroup(sub: &SubgroupArgs) -> Result<(GroupData<String>, ClassRatioVector<String>)> {
    if let (Some(group), Some(ratios)) = (&sub.group, &sub.ratios) {
        let gd = parse_group_data(&read(group)?)?;
        let crv = parse_class_ratios(&read(ratios)?)?;
        crv.check_against(&gd)?;
        return Ok((gd, crv));
    }
    let n = sub.n.expect("clap requires --n without --group");
    let mu = parse_mu(
        n,
        sub.mu
            .as_deref()
            .expect("clap requires --mu without --group"),
    )?;
    let table = CharacterTable::build_with_max(n, sub.max_n)?;
    let gd = stringify_group(&GroupData::from_table(&table)?)?;
    let crv = stringify_ratios(&ratio_vector_with_max(&mu, sub.max_n)?)?;
    Ok((gd, crv))
}

pub fn spectrum(sub: &SubgroupArgs) -> Result<Outcome> {
    let (gd, crv) = load_subgroup(sub)?;
    let spec = chain_spectrum(&gd, &crv)?;
    let bound = theorem1_bound(&gd, &crv, 0)?;
    let mut body = String::from("class,class_size,eigenvalue,beta_witness\n");
    for ((class, size), eig) in spec
        .classes
        .iter()
        .zip(&spec.class_sizes)
        .zip(&spec.eigenvalues)
    {
        let witness = bound.witnesses.contains(class);
        writeln!(
            body,
            "{},{size},{},{witness}",
            csv_field(class),
            fmt_ratio(eig)
        )
        .unwrap();
    }
    writeln!(body, "# beta: {}", fmt_ratio(&bound.beta)).unwrap();
    Ok(Outcome {
        mode: "exact",
        seed: None,
        body,
        ok: true,
    })
}

pub fn evolve(sub: &SubgroupArgs, r: u32, exact: bool) -> Result<Outcome> {
    let (gd, crv) = load_subgroup(sub)?;
    let dist = r_step_from_trivial::<String, Rational>(&gd, &crv, r)?;
    let plancherel = gd.plancherel::<Rational>();
    let show = |x: &Rational| {
        if exact {
            fmt_ratio(x)
        } else {
            format!("{}", ratio_to_f64(x))
        }
    };
    let mut body = String::from("lambda,probability,plancherel,multiplicity\n");
    for ((label, p), (_, pi)) in dist.entries().iter().zip(plancherel.entries()) {
        let m = tensor_power_multiplicity(&gd, &crv, label, r)?;
        writeln!(body, "{},{},{},{m}", csv_field(label), show(p), show(pi)).unwrap();
    }
    let l1 = l1_to_plancherel(&dist, &gd)?;
    let bound = theorem1_bound(&gd, &crv, r)?;
    let holds = bound.dominates(&l1);
    writeln!(body, "# l1_to_plancherel: {}", show(&l1)).unwrap();
    writeln!(body, "# beta: {}", fmt_ratio(&bound.beta)).unwrap();
    writeln!(body, "# bound: {}", bound.bound).unwrap();
    writeln!(body, "# bound_holds: {holds}").unwrap();
    Ok(Outcome {
        mode: if exact { "exact" } else { "float" },
        seed: None,
        body,
        ok: holds,
    })
}

pub fn verify_thm2(n: usize, shuffle: &str, r: u32, max_n: usize) -> Result<Outcome> {
    let spec = parse_shuffle(n, shuffle)?;
    let report = verify_theorem2_series_with_max(&spec, r, max_n)?
        .pop()
        .expect("series has r + 1 entries");
    let mut body = report.to_csv();
    writeln!(
        body,
        "# max_discrepancy: {}",
        fmt_ratio(&report.max_discrepancy)
    )
    .unwrap();
    writeln!(
        body,
        "# verdict: {}",
        if report.holds() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Outcome {
        mode: "exact",
        seed: None,
        body,
        ok: report.holds(),
    })
}

pub fn verify_isospectral(n: usize, shuffle: &str, max_n: usize) -> Result<Outcome> {
    let spec = parse_shuffle(n, shuffle)?;
    let report = isospectral_check_with_max(&spec, max_n)?;
    let values: BTreeSet<&Rational> = report
        .chain_side
        .keys()
        .chain(report.shuffle_side.keys())
        .collect();
    let mut body = String::from("eigenvalue,chain_classes,shuffle_permutations\n");
    for v in values {
        let a = report.chain_side.get(v).copied().unwrap_or(0);
        let b = report.shuffle_side.get(v).copied().unwrap_or(0);
        writeln!(body, "{},{a},{b}", fmt_ratio(v)).unwrap();
    }
    writeln!(body, "# equal_sets: {}", report.equal).unwrap();
    writeln!(
        body,
        "# verdict: {}",
        if report.equal { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Outcome {
        mode: "exact",
        seed: None,
        body,
        ok: report.equal,
    })
}

pub fn tv_curve(
    n: usize,
    shuffle: &str,
    rmax: u32,
    mc: Option<McArgs>,
    max_n: usize,
) -> Result<Outcome> {
    let spec = parse_shuffle(n, shuffle)?;
    let (curve, mode, seed) = match mc {
        None => (tv_curve_exact_with_max(&spec, rmax, max_n)?, "exact", None),
        Some(a) => {
            let step = a.step.unwrap_or((rmax / 10).max(1));
            let mut opts = McOptions::evenly_spaced(a.samples, a.seed, rmax, step);
            opts.bootstrap = a.bootstrap;
            (
                tv_curve_montecarlo(&spec, opts)?,
                "montecarlo",
                Some(a.seed),
            )
        }
    };
    let mut body = curve.to_csv();
    let t = &curve.trend;
    writeln!(body, "# weakly_decreasing: {}", t.weakly_decreasing).unwrap();
    writeln!(body, "# max_increase: {}", t.max_increase).unwrap();
    writeln!(body, "# first_last_drop: {}", t.first_last_drop).unwrap();
    if let Some(se) = t.first_last_drop_in_se {
        writeln!(body, "# first_last_drop_in_se: {se}").unwrap();
    }
    match t.crossover_half {
        Some(r) => writeln!(body, "# crossover_half: {r}").unwrap(),
        None => writeln!(body, "# crossover_half: none").unwrap(),
    }
    let ok = curve.points.iter().all(|p| {
        p.bound_holds != Some(false)
            && match (&p.shape_tv_exact, &p.permutation_tv) {
                (Some(s), Some(g)) => s <= g,
                _ => true,
            }
    });
    Ok(Outcome {
        mode,
        seed,
        body,
        ok,
    })
}

pub fn gl_beta(n: usize, q: u64, brute_force: bool, direct: bool) -> Result<Outcome> {
    let closed = gl_beta_closed_form(n, q)?;
    let mut ok = true;
    let (brute, witness) = if brute_force {
        let (b, w) = gl_beta_brute_force(n, q)?;
        ok &= b == closed;
        let w: Vec<String> = w
            .iter()
            .map(|d| format!("lambda={};residual={}", d.lambda_z1(), d.residual_weight()))
            .collect();
        (fmt_ratio(&b), w.join(" | "))
    } else {
        (String::new(), String::new())
    };
    let direct = if direct {
        if n != 2 {
            return Err(Error::Invalid(
                "--direct enumerates GL(2,q) only; use --n 2".into(),
            ));
        }
        let d = gl2_direct_beta(q)?;
        ok &= d == closed;
        fmt_ratio(&d)
    } else {
        String::new()
    };
    let mut body = String::from("n,q,closed_form,brute_force,witness,direct\n");
    writeln!(
        body,
        "{n},{q},{},{brute},{},{direct}",
        fmt_ratio(&closed),
        csv_field(&witness)
    )
    .unwrap();
    Ok(Outcome {
        mode: "exact",
        seed: None,
        body,
        ok,
    })
}

pub fn selftest(only: &[usize]) -> Result<Outcome> {
    if let Some(&bad) = only.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
        return Err(Error::Invalid(format!(
            "no criterion {bad}; valid ids are 1..={}",
            CRITERIA.len()
        )));
    }
    let ids: Vec<usize> = if only.is_empty() {
        (1..=CRITERIA.len()).collect()
    } else {
        only.to_vec()
    };
    let seed = ids.contains(&CRITERIA.len()).then_some(MC_SEED);
    let mut body = String::new();
    let mut ok = true;
    for id in ids {
        let result = run_criterion(id);
        ok &= result.passed;
        writeln!(body, "{result}").unwrap();
    }
    Ok(Outcome {
        mode: "exact",
        seed,
        body,
        ok,
    })
}
