//! Finite probability distributions over labelled outcomes.

use std::fmt::Display;

use crate::error::{Error, Result};
use crate::scalar::{ratio, Scalar};

/// Probability masses over a fixed, ordered list of outcomes.
///
/// The outcome order is part of the value: two distributions can only be
/// compared when they list the same outcomes in the same order.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<K, S> {
    entries: Vec<(K, S)>,
}

impl<K: PartialEq, S: Scalar> Distribution<K, S> {
    pub fn new(entries: Vec<(K, S)>) -> Self {
        Distribution { entries }
    }

    pub fn entries(&self) -> &[(K, S)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, S)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn masses(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn total(&self) -> S {
        self.masses().fold(S::zero(), |acc, m| acc + m.clone())
    }

    /// Checks non-negativity and unit mass; exact mode demands exactly 1.
    pub fn validate(&self) -> Result<()> {
        if self.masses().any(|m| *m < S::zero()) {
            return Err(Error::Consistency("negative probability".into()));
        }
        let total = self.total();
        let ok = if S::EXACT {
            total == S::one()
        } else {
            (total.to_f64() - 1.0).abs() < 1e-9
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "total mass {} != 1",
                total.format()
            )))
        }
    }

    fn check_same_support(&self, other: &Self) -> Result<()> {
        if self.len() != other.len()
            || self
                .entries
                .iter()
                .zip(&other.entries)
                .any(|(a, b)| a.0 != b.0)
        {
            return Err(Error::LabelMismatch(
                "distributions are over different outcomes".into(),
            ));
        }
        Ok(())
    }

    /// `Σ |P(x) − Q(x)|`.
    pub fn l1(&self, other: &Self) -> Result<S> {
        self.check_same_support(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(S::zero(), |acc, (a, b)| {
                acc + (a.1.clone() - b.1.clone()).abs()
            }))
    }

    /// Total variation distance, half the L1 distance.
    pub fn tv(&self, other: &Self) -> Result<S> {
        Ok(self.l1(other)? * S::from_rational(&ratio(1, 2)))
    }

    /// Largest pointwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S> {
        self.check_same_support(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(S::zero(), |acc, (a, b)| {
                let d = (a.1.clone() - b.1.clone()).abs();
                if d > acc {
                    d
                } else {
                    acc
                }
            }))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Distribution<K, T>
    where
        K: Clone,
    {
        Distribution {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .collect(),
        }
    }
}

impl<K: Display + PartialEq, S: Scalar> Distribution<K, S> {
    /// CSV rows `outcome,probability` with a header; outcomes containing
    /// commas are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome,probability\n");
        for (k, v) in &self.entries {
            out.push_str(&csv_field(&k.to_string()));
            out.push(',');
            out.push_str(&v.format());
            out.push('\n');
        }
        out
    }
}

/// Quotes a field when it contains a comma or a quote.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Splits one CSV line, honouring double-quoted fields.
pub fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{plancherel, trivial_point_mass, Partition};
    use crate::scalar::{int, Rational};

    #[test]
    fn tv_examples() {
        let pl = plancherel::<Rational>(3);
        assert_eq!(pl.tv(&pl).unwrap(), int(0));
        let point = trivial_point_mass::<Rational>(3);
        assert_eq!(point.l1(&pl).unwrap(), ratio(5, 3));
        let a = Distribution::new(vec![("a", int(1)), ("b", int(0))]);
        let b = Distribution::new(vec![("a", int(0)), ("b", int(1))]);
        assert_eq!(a.tv(&b).unwrap(), int(1));
    }

    #[test]
    fn mismatched_outcomes() {
        let a = plancherel::<Rational>(3);
        let b = plancherel::<Rational>(4);
        assert!(matches!(a.tv(&b), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn validate_flags_bad_mass() {
        let d = Distribution::new(vec![(1, ratio(1, 2)), (2, ratio(1, 3))]);
        assert!(d.validate().is_err());
        let d = Distribution::new(vec![(1, ratio(3, 2)), (2, ratio(-1, 2))]);
        assert!(d.validate().is_err());
        plancherel::<f64>(6).validate().unwrap();
    }

    #[test]
    fn csv_quotes_partitions() {
        let csv = plancherel::<Rational>(3).to_csv();
        assert_eq!(
            csv,
            "outcome,probability\n3,1/6\n\"2,1\",2/3\n\"1,1,1\",1/6\n"
        );
        let fields = split_csv_line("\"2,1\",2/3");
        assert_eq!(fields, vec!["2,1".to_string(), "2/3".to_string()]);
        assert_eq!(fields[0].parse::<Partition>().unwrap().n(), 3);
    }
}
