//! Parsers for subgroup and shuffle arguments.

use shufflerep_core::{Composition, Error, Result, ShuffleSpec};

fn named_k(s: &str, prefix: &str) -> Option<Result<usize>> {
    let k = s.strip_prefix(prefix)?;
    Some(
        k.parse()
            .map_err(|_| Error::Invalid(format!("bad k in `{s}`"))),
    )
}

fn check_k(n: usize, k: usize, what: &str) -> Result<usize> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!(
            "{what} needs 1 ≤ k < n, got k={k}, n={n}"
        )));
    }
    Ok(k)
}

/// `top`, `topk:K`, `riffle:K`, or an explicit composition such as `1,2`.
pub fn parse_mu(n: usize, s: &str) -> Result<Composition> {
    let parts = if s == "top" {
        check_k(n, 1, "top")?;
        vec![1, n - 1]
    } else if let Some(k) = named_k(s, "topk:") {
        let k = check_k(n, k?, "topk")?;
        let mut parts = vec![1; k];
        parts.push(n - k);
        parts
    } else if let Some(k) = named_k(s, "riffle:") {
        let k = check_k(n, k?, "riffle")?;
        vec![k, n - k]
    } else {
        let mu: Composition = s.parse()?;
        if mu.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: mu.n(),
            });
        }
        return Ok(mu);
    };
    Composition::new(parts)
}

/// `top`, `topk:K`, `riffle:K`, or `file:PATH` holding `L=… p=…` lines.
pub fn parse_shuffle(n: usize, s: &str) -> Result<ShuffleSpec> {
    if s == "top" {
        return ShuffleSpec::top_to_random(n);
    }
    if let Some(k) = named_k(s, "topk:") {
        return ShuffleSpec::top_k_to_random(n, k?);
    }
    if let Some(k) = named_k(s, "riffle:") {
        return ShuffleSpec::riffle_k_cut(n, k?);
    }
    if let Some(path) = s.strip_prefix("file:") {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        return ShuffleSpec::parse(n, &text);
    }
    Err(Error::Invalid(format!(
        "unknown shuffle `{s}` (expected top, topk:K, riffle:K or file:PATH)"
    )))
}
