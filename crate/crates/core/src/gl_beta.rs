//! `β` for `GL(n−1, q) ≤ GL(n, q)`.
//!
//! A class of `GL(n, q)` meets `GL(n−1, q)` only when the partition attached
//! to the polynomial `z − 1` has a part equal to 1, and then the ratio
//! depends only on that partition:
//!
//! ```text
//! |C ∩ H| / |C| = |GL(n−1,q)| / |GL(n,q)| · (1 − q^{−m_1(λ)}) · q^{2ℓ(λ) − 1}
//! ```
//!
//! where `m_1` counts parts equal to 1 and `ℓ` is the number of parts. The
//! rest of the conjugacy data only matters through its total degree, the
//! residual weight `n − |λ|`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::chain::max_with_witnesses;
use crate::error::{invalid, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalar::Rational;

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .expect("q has a prime factor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Conjugacy data of `GL(n, q)` reduced to what the class ratio needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLClassDatum {
    q: u64,
    n: usize,
    lambda_z1: Partition,
    residual_weight: usize,
}

impl GLClassDatum {
    /// Rejects data that cannot occur: the sizes must add up to `n`, and for
    /// `q = 2` a residual of exactly 1 is impossible since `z − 1` is the
    /// only degree-one polynomial with nonzero constant term.
    pub fn new(q: u64, n: usize, lambda_z1: Partition, residual_weight: usize) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(invalid(format!("q = {q} is not a prime power")));
        }
        if lambda_z1.n() + residual_weight != n {
            return Err(invalid(format!(
                "|λ| + residual = {} + {residual_weight} != {n}",
                lambda_z1.n()
            )));
        }
        if q == 2 && residual_weight == 1 {
            return Err(invalid("residual weight 1 is impossible over F_2"));
        }
        Ok(GLClassDatum {
            q,
            n,
            lambda_z1,
            residual_weight,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_z1(&self) -> &Partition {
        &self.lambda_z1
    }

    pub fn residual_weight(&self) -> usize {
        self.residual_weight
    }

    pub fn is_identity(&self) -> bool {
        self.residual_weight == 0 && self.lambda_z1 == Partition::column(self.n)
    }
}

/// `|GL(n, q)| = ∏_{i<n} (qⁿ − qⁱ)`.
pub fn gl_order(n: usize, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let qn = Pow::pow(&q, n as u32);
    (0..n).map(|i| &qn - Pow::pow(&q, i as u32)).product()
}

pub fn gl_class_ratio(d: &GLClassDatum) -> Rational {
    let m1 = d.lambda_z1.multiplicity(1);
    if m1 == 0 {
        return Rational::zero();
    }
    let q = Rational::from_integer(BigInt::from(d.q));
    let index = Rational::new(gl_order(d.n - 1, d.q), gl_order(d.n, d.q));
    let fixed_part = Rational::one() - Pow::pow(q.recip(), m1 as u32);
    let power = Pow::pow(&q, (2 * d.lambda_z1.len() - 1) as u32);
    index * fixed_part * power
}

/// `(1 − q^{1−n}) / (q²(1 − q^{−n}))` for `q > 2`, and
/// `(1 − q^{2−n}) / (q²(1 − q^{−n}))` for `q = 2`.
pub fn gl_beta_closed_form(n: usize, q: u64) -> Result<Rational> {
    if n < 2 {
        return Err(invalid("β for GL(n−1,q) ≤ GL(n,q) needs n ≥ 2"));
    }
    if !is_prime_power(q) {
        return Err(invalid(format!("q = {q} is not a prime power")));
    }
    let inv = Rational::new(BigInt::one(), BigInt::from(q));
    let shift = if q == 2 { 2 } else { 1 };
    let numer = Rational::one() - Pow::pow(&inv, (n - shift) as u32);
    let denom =
        Rational::from_integer(BigInt::from(q * q)) * (Rational::one() - Pow::pow(&inv, n as u32));
    Ok(numer / denom)
}

/// Maximizes [`gl_class_ratio`] over every feasible nontrivial datum with a
/// part equal to 1. Returns 0 with no witnesses when no such datum exists
/// (every nontrivial class then misses `H`).
pub fn gl_beta_brute_force(n: usize, q: u64) -> Result<(Rational, Vec<GLClassDatum>)> {
    if n < 2 {
        return Err(invalid("β for GL(n−1,q) ≤ GL(n,q) needs n ≥ 2"));
    }
    let mut candidates = Vec::new();
    for size in 1..=n {
        for lambda in enumerate_partitions(size) {
            if lambda.multiplicity(1) == 0 {
                continue;
            }
            let Ok(d) = GLClassDatum::new(q, n, lambda, n - size) else {
                continue;
            };
            if !d.is_identity() {
                candidates.push((gl_class_ratio(&d), d));
            }
        }
    }
    Ok(max_with_witnesses(candidates.into_iter()))
}

type Mat2 = [[u64; 2]; 2];

fn mul(a: &Mat2, b: &Mat2, q: u64) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % q;
        }
    }
    c
}

fn inverse(a: &Mat2, q: u64) -> Mat2 {
    let det = (a[0][0] * a[1][1] + q * q - a[0][1] * a[1][0]) % q;
    let det_inv = (1..q).find(|x| det * x % q == 1).expect("invertible");
    [
        [a[1][1] * det_inv % q, (q - a[0][1]) % q * det_inv % q],
        [(q - a[1][0]) % q * det_inv % q, a[0][0] * det_inv % q],
    ]
}

/// `β` for `GL(1, q) ≤ GL(2, q)` by brute force over all invertible 2×2
/// matrices: conjugacy classes are computed as orbits, and `GL(1, q)` sits
/// in the top-left corner as `diag(a, 1)`. Prime `q ∈ {2, 3}` only.
pub fn gl2_direct_beta(q: u64) -> Result<Rational> {
    if q != 2 && q != 3 {
        return Err(invalid("direct enumeration supports q = 2 or 3"));
    }
    let mut group = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if !(a * d + q * q - b * c).is_multiple_of(q) {
                        group.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    let in_h = |m: &Mat2| m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1;
    let identity: Mat2 = [[1, 0], [0, 1]];
    let mut assigned = vec![false; group.len()];
    let mut best: Option<Rational> = None;
    for start in 0..group.len() {
        if assigned[start] {
            continue;
        }
        let mut class: Vec<Mat2> = group
            .iter()
            .map(|t| mul(&mul(&inverse(t, q), &group[start], q), t, q))
            .collect();
        class.sort_unstable();
        class.dedup();
        for m in &class {
            let i = group
                .iter()
                .position(|g| g == m)
                .expect("conjugate is in the group");
            assigned[i] = true;
        }
        if class.contains(&identity) {
            continue;
        }
        let hits = class.iter().filter(|m| in_h(m)).count();
        let r = Rational::new(BigInt::from(hits), BigInt::from(class.len()));
        if best.as_ref().is_none_or(|b| r > *b) {
            best = Some(r);
        }
    }
    Ok(best.unwrap_or_else(Rational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(gl_order(1, 7), BigInt::from(6));
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(2, 3), BigInt::from(48));
        assert_eq!(gl_order(3, 2), BigInt::from(168));
    }

    #[test]
    fn identity_datum_has_ratio_one() {
        for n in 1..=4 {
            for q in [2, 3, 4, 5] {
                let d = GLClassDatum::new(q, n, Partition::column(n), 0).unwrap();
                assert_eq!(gl_class_ratio(&d), int(1), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn class_ratio_examples() {
        let d = GLClassDatum::new(3, 3, p("1,1"), 1).unwrap();
        assert_eq!(gl_class_ratio(&d), gl_beta_closed_form(3, 3).unwrap());
        let d = GLClassDatum::new(3, 3, p("2"), 1).unwrap();
        assert_eq!(gl_class_ratio(&d), int(0));
    }

    #[test]
    fn datum_validation() {
        assert!(GLClassDatum::new(2, 3, p("1,1"), 1).is_err());
        assert!(GLClassDatum::new(3, 3, p("1,1"), 2).is_err());
        assert!(GLClassDatum::new(6, 2, p("1"), 1).is_err());
        assert!(GLClassDatum::new(2, 4, p("1,1"), 2).is_ok());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gl_beta_closed_form(2, 3).unwrap(), ratio(1, 12));
        assert_eq!(gl_beta_closed_form(2, 2).unwrap(), int(0));
        assert_eq!(gl_beta_closed_form(3, 2).unwrap(), ratio(1, 7));
        assert!(gl_beta_closed_form(1, 3).is_err());
        assert!(gl_beta_closed_form(3, 6).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let (b, w) = gl_beta_brute_force(2, 2).unwrap();
        assert_eq!(b, int(0));
        assert!(w.is_empty());
        let (b, w) = gl_beta_brute_force(4, 3).unwrap();
        assert_eq!(b, gl_beta_closed_form(4, 3).unwrap());
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].lambda_z1(), &p("1,1,1"));
        assert_eq!(w[0].residual_weight(), 1);
        let (b, w) = gl_beta_brute_force(4, 2).unwrap();
        assert_eq!(b, gl_beta_closed_form(4, 2).unwrap());
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].lambda_z1(), &p("2,1,1"));
        assert_eq!(w[0].residual_weight(), 0);
    }

    #[test]
    fn brute_force_never_emits_residual_one_over_f2() {
        for n in 2..=7 {
            let (_, w) = gl_beta_brute_force(n, 2).unwrap();
            assert!(w.iter().all(|d| d.residual_weight() != 1));
        }
    }

    #[test]
    fn direct_enumeration() {
        assert_eq!(gl2_direct_beta(2).unwrap(), int(0));
        assert_eq!(gl2_direct_beta(3).unwrap(), ratio(1, 12));
        assert!(gl2_direct_beta(5).is_err());
    }

    #[test]
    fn closed_form_matches_brute_force_grid() {
        for n in 2..=6 {
            for q in [2, 3, 4, 5] {
                assert_eq!(
                    gl_beta_brute_force(n, q).unwrap().0,
                    gl_beta_closed_form(n, q).unwrap(),
                    "n={n} q={q}"
                );
            }
        }
    }
}
