//! Exact polynomials in the correlation strength `mu` and the flip
//! probability `p`, with `i64` coefficients.
//!
//! Terms are kept sparse and sorted by `(mu degree, p degree)`, so the text
//! rendering is canonical: `1 - 3*p^2 + 2*p^3 - 2*mu*p + ...`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn mu() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn p() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c · mu^i · p^j`
    pub fn monomial(c: i64, mu_deg: u32, p_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((mu_deg, p_deg), c);
        }
        Self { terms }
    }

    /// Builds a polynomial from rows of p-coefficients, one row per power of
    /// `mu` starting at `mu^0`; each row lists coefficients of `p^0, p^1, ...`.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    terms.insert((i as u32, j as u32), c);
                }
            }
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mu_deg: u32, p_deg: u32) -> i64 {
        self.terms.get(&(mu_deg, p_deg)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((mu degree, p degree), coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_mu(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_p(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    fn accumulate(terms: &mut BTreeMap<(u32, u32), i64>, key: (u32, u32), c: i64) -> Result<()> {
        let entry = terms.entry(key).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::CoefficientOverflow)?;
        if *entry == 0 {
            terms.remove(&key);
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        let mut terms = self.terms.clone();
        for (&k, &c) in &rhs.terms {
            Self::accumulate(&mut terms, k, c)?;
        }
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, rhs: &BiPoly) -> Result<BiPoly> {
        let mut terms = self.terms.clone();
        for (&k, &c) in &rhs.terms {
            let neg = c.checked_neg().ok_or(Error::CoefficientOverflow)?;
            Self::accumulate(&mut terms, k, neg)?;
        }
        Ok(Self { terms })
    }

    pub fn checked_mul(&self, rhs: &BiPoly) -> Result<BiPoly> {
        let mut terms = BTreeMap::new();
        for (&(ai, aj), &a) in &self.terms {
            for (&(bi, bj), &b) in &rhs.terms {
                let c = a.checked_mul(b).ok_or(Error::CoefficientOverflow)?;
                Self::accumulate(&mut terms, (ai + bi, aj + bj), c)?;
            }
        }
        Ok(Self { terms })
    }

    pub fn checked_scale(&self, k: i64) -> Result<BiPoly> {
        let mut terms = BTreeMap::new();
        for (&key, &c) in &self.terms {
            let v = c.checked_mul(k).ok_or(Error::CoefficientOverflow)?;
            if v != 0 {
                terms.insert(key, v);
            }
        }
        Ok(Self { terms })
    }

    pub fn checked_pow(&self, e: u32) -> Result<BiPoly> {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Univariate coefficient rows: `rows[i][j]` multiplies `mu^i p^j`.
    fn rows(&self) -> Vec<Vec<i64>> {
        let (Some(dm), Some(dp)) = (self.degree_mu(), self.degree_p()) else {
            return Vec::new();
        };
        let mut rows = vec![vec![0i64; dp as usize + 1]; dm as usize + 1];
        for (&(i, j), &c) in &self.terms {
            rows[i as usize][j as usize] = c;
        }
        rows
    }

    /// Nested Horner evaluation in floating point.
    pub fn eval(&self, mu: f64, p: f64) -> f64 {
        self.rows().iter().rev().fold(0.0, |acc, row| {
            let inner = row.iter().rev().fold(0.0, |a, &c| a * p + c as f64);
            acc * mu + inner
        })
    }

    /// Nested Horner evaluation over the rationals.
    pub fn eval_exact(&self, mu: &BigRational, p: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.rows().iter().rev() {
            let mut inner = BigRational::zero();
            for &c in row.iter().rev() {
                inner = inner * p + BigRational::from_integer(BigInt::from(c));
            }
            acc = acc * mu + inner;
        }
        acc
    }

    /// Exact substitution of an integer value for `mu`, leaving a polynomial in `p`.
    pub fn substitute_mu(&self, value: i64) -> Result<BiPoly> {
        let mut terms = BTreeMap::new();
        for (&(i, j), &c) in &self.terms {
            let pow = value.checked_pow(i).ok_or(Error::CoefficientOverflow)?;
            let v = c.checked_mul(pow).ok_or(Error::CoefficientOverflow)?;
            Self::accumulate(&mut terms, (0, j), v)?;
        }
        Ok(Self { terms })
    }

    /// Coefficients where `self` and `other` differ, as `(mu deg, p deg, self, other)`.
    pub fn coefficient_diff(&self, other: &BiPoly) -> Vec<(u32, u32, i64, i64)> {
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.into_iter()
            .filter_map(|(i, j)| {
                let (a, b) = (self.coeff(i, j), other.coeff(i, j));
                (a != b).then_some((i, j, a, b))
            })
            .collect()
    }
}

/// `P(next | prev) = (1 − mu)·P(next) + mu·δ(prev, next)`.
///
/// In the `p_{ab}` shorthand used for these channels, `p_{ab}` is
/// `transition_factor(b, a)`: `p_00 = 1 − p + mu p`, `p_01 = (1 − mu)(1 − p)`,
/// `p_10 = (1 − mu) p`, `p_11 = p + mu − mu p`.
pub fn transition_factor(prev: bool, next: bool) -> BiPoly {
    let one_minus_mu = BiPoly::one() - BiPoly::mu();
    let stay = if prev == next {
        BiPoly::mu()
    } else {
        BiPoly::zero()
    };
    &(&one_minus_mu * &marginal_factor(next)) + &stay
}

/// Unconditioned flip probability of a single qubit: `1 − p` or `p`.
pub fn marginal_factor(bit: bool) -> BiPoly {
    if bit {
        BiPoly::p()
    } else {
        BiPoly::one() - BiPoly::p()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.checked_add(rhs).expect("BiPoly addition overflowed")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.checked_sub(rhs)
            .expect("BiPoly subtraction overflowed")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.checked_mul(rhs)
            .expect("BiPoly multiplication overflowed")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.checked_scale(-1).expect("BiPoly negation overflowed")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(i, j), &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (idx, c < 0) {
                (0, false) => write!(f, "{mag}")?,
                (0, true) => write!(f, "-{mag}")?,
                (_, false) => write!(f, " + {mag}")?,
                (_, true) => write!(f, " - {mag}")?,
            }
            for (name, e) in [("mu", i), ("p", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        // split into signed terms
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start && !compact[..i].ends_with('^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut out = BiPoly::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'+' => (1i64, &piece[1..]),
                b'-' => (-1i64, &piece[1..]),
                _ => (1i64, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (mut coeff, mut mu_deg, mut p_deg) = (sign, 0u32, 0u32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "mu" | "μ" => mu_deg += exp,
                    "p" => p_deg += exp,
                    _ => {
                        let v: i64 = base
                            .parse()
                            .map_err(|_| Error::Parse(format!("unknown factor {factor:?}")))?;
                        let v = v.checked_pow(exp).ok_or(Error::CoefficientOverflow)?;
                        coeff = coeff.checked_mul(v).ok_or(Error::CoefficientOverflow)?;
                    }
                }
            }
            out = out.checked_add(&BiPoly::monomial(coeff, mu_deg, p_deg))?;
        }
        Ok(out)
    }
}
