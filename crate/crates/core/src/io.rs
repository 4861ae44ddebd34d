//! Line-oriented text formats for character data of arbitrary finite groups
//! and for their subgroup class ratios.
//!
//! Group file:
//!
//! ```text
//! group_order 6
//! classes
//! e 1
//! t 3
//! c 2
//! chars
//! 1 1 1 1
//! 1 1 -1 1
//! 2 2 0 -1
//! ```
//!
//! Each `chars` row is the dimension followed by the character values in
//! class order; irreducibles are labelled `X1, X2, …` in row order. Ratio
//! file: `subgroup_order M`, then one `label p/q` line per class. Blank
//! lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::chain::{ClassRatioVector, GroupData};
use crate::error::{Error, Result};
use crate::scalar::{fmt_ratio, parse_ratio};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_token<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn header<'a>(line: usize, l: &'a str, key: &str) -> Result<&'a str> {
    match l.split_once(char::is_whitespace) {
        Some((k, v)) if k == key => Ok(v.trim()),
        _ => Err(parse_err(line, format!("expected `{key} <value>`"))),
    }
}

pub fn parse_group_data(text: &str) -> Result<GroupData<String>> {
    let mut lines = content_lines(text);
    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty group file"))?;
    let order: BigInt = parse_token(ln, header(ln, first, "group_order")?, "group order")?;
    match lines.next() {
        Some((_, "classes")) => {}
        Some((ln, _)) => return Err(parse_err(ln, "expected `classes`")),
        None => return Err(parse_err(ln, "missing `classes` block")),
    }
    let mut labels = Vec::new();
    let mut sizes = Vec::new();
    let mut in_chars = false;
    let mut dims = Vec::new();
    let mut chars = Vec::new();
    for (ln, l) in lines {
        if l == "chars" && !in_chars {
            in_chars = true;
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if in_chars {
            let values = toks
                .iter()
                .map(|t| parse_token::<i64>(ln, t, "character value"))
                .collect::<Result<Vec<_>>>()?;
            let (&dim, row) = values.split_first().expect("nonempty line");
            if row.len() != labels.len() {
                return Err(parse_err(
                    ln,
                    format!("expected {} values after the dimension", labels.len()),
                ));
            }
            dims.push(dim);
            chars.push(row.to_vec());
        } else {
            let [label, size] = toks[..] else {
                return Err(parse_err(ln, "expected `<label> <size>`"));
            };
            labels.push(label.to_string());
            sizes.push(parse_token::<BigInt>(ln, size, "class size")?);
        }
    }
    if !in_chars {
        return Err(parse_err(0, "missing `chars` block"));
    }
    let irreps = (1..=dims.len()).map(|i| format!("X{i}")).collect();
    GroupData::new(order, labels, sizes, irreps, dims, chars)
}

pub fn write_group_data<L: Clone + PartialEq + std::fmt::Display>(gd: &GroupData<L>) -> String {
    let mut out = format!("group_order {}\nclasses\n", gd.order());
    for (label, size) in gd.class_labels().iter().zip(gd.class_sizes()) {
        writeln!(out, "{label} {size}").unwrap();
    }
    out.push_str("chars\n");
    for (dim, row) in gd.dims().iter().zip(gd.chars()) {
        write!(out, "{dim}").unwrap();
        for v in row {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_class_ratios(text: &str) -> Result<ClassRatioVector<String>> {
    let mut lines = content_lines(text);
    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty ratio file"))?;
    let order: BigInt = parse_token(ln, header(ln, first, "subgroup_order")?, "subgroup order")?;
    let mut labels = Vec::new();
    let mut ratios = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [label, value] = toks[..] else {
            return Err(parse_err(ln, "expected `<label> <p/q>`"));
        };
        labels.push(label.to_string());
        ratios
            .push(parse_ratio(value).ok_or_else(|| parse_err(ln, format!("bad ratio `{value}`")))?);
    }
    ClassRatioVector::new(order, labels, ratios)
}

pub fn write_class_ratios<L: Clone + PartialEq + std::fmt::Display>(
    crv: &ClassRatioVector<L>,
) -> String {
    let mut out = format!("subgroup_order {}\n", crv.subgroup_order());
    for (label, r) in crv.labels().iter().zip(crv.ratios()) {
        writeln!(out, "{label} {}", fmt_ratio(r)).unwrap();
    }
    out
}

/// Relabels `S_n` data with string labels so it can be written and read
/// back through the text formats.
pub fn stringify_group<L: Clone + PartialEq + std::fmt::Display>(
    gd: &GroupData<L>,
) -> Result<GroupData<String>> {
    GroupData::new(
        gd.order().clone(),
        gd.class_labels().iter().map(ToString::to_string).collect(),
        gd.class_sizes().to_vec(),
        gd.irreps().iter().map(ToString::to_string).collect(),
        gd.dims().to_vec(),
        gd.chars().to_vec(),
    )
}

pub fn stringify_ratios<L: Clone + PartialEq + std::fmt::Display>(
    crv: &ClassRatioVector<L>,
) -> Result<ClassRatioVector<String>> {
    ClassRatioVector::new(
        crv.subgroup_order().clone(),
        crv.labels().iter().map(ToString::to_string).collect(),
        crv.ratios().to_vec(),
    )
}
