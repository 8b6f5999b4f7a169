//! Entanglement fidelity of the recovered channel for the maximally mixed
//! logical input,
//!
//! ```text
//! F = 1/4 · Σ_{l,k} |tr([R_l A'_k]|_C)|²
//! ```
//!
//! Two routes are provided. The exact route sums the weights of the
//! correctable patterns, each of which is undone by exactly one recovery
//! operator. The numeric route ([`FidelityOracle`]) evaluates the full double
//! sum over restricted 2x2 matrices and is used to check the first.

use num_complex::Complex64;

use crate::bipoly::BiPoly;
use crate::channel::MarkovChannel;
use crate::codes::{Code, CodeFamily};
use crate::error::{Error, Result};
use crate::pauli::{restrict_images, FlipBasis};
use crate::recovery::{recovery_for, RecoverySet};

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityResult {
    pub family: CodeFamily,
    pub n: usize,
    pub basis: FlipBasis,
    pub poly: BiPoly,
}

impl FidelityResult {
    pub fn evaluate(&self, mu: f64, p: f64) -> f64 {
        self.poly.eval(mu, p)
    }
}

/// Exact fidelity polynomial: the total weight of the correctable patterns.
pub fn entanglement_fidelity(
    code: &Code,
    channel: &MarkovChannel,
    recovery: &RecoverySet,
) -> Result<FidelityResult> {
    if channel.n() != code.n() || recovery.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: channel.n(),
        });
    }
    let poly = recovery
        .correctable_patterns()
        .iter()
        .map(|&m| channel.term(m).poly.clone())
        .sum();
    Ok(FidelityResult {
        family: code.family(),
        n: code.n(),
        basis: code.basis(),
        poly,
    })
}

/// Builds the code, channel and recovery for `(family, n, basis)` and
/// returns the exact fidelity polynomial.
pub fn fidelity_polynomial(
    family: CodeFamily,
    n: usize,
    basis: FlipBasis,
) -> Result<FidelityResult> {
    let code = Code::new(family, n, basis)?;
    let channel = MarkovChannel::symbolic(n, basis)?;
    let recovery = recovery_for(&channel, &code)?;
    entanglement_fidelity(&code, &channel, &recovery)
}

/// The full restricted-trace double sum.
///
/// Restricting `R_l √w_k P_k` to the code gives `√w_k` times the restriction
/// of `R_l P_k`, so the traces of the unweighted products are tabulated once
/// and the fidelity at any `(mu, p)` is `1/4 Σ_{l,k} w_k |t_{lk}|²`.
#[derive(Debug, Clone)]
pub struct FidelityOracle {
    weights: Vec<BiPoly>,
    /// `traces[k][l] = tr([R_l P_k]|_C)`
    traces: Vec<Vec<Complex64>>,
}

impl FidelityOracle {
    pub fn new(code: &Code, channel: &MarkovChannel, recovery: &RecoverySet) -> Result<Self> {
        if channel.n() != code.n() || recovery.n() != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: channel.n(),
            });
        }
        let mut traces = Vec::with_capacity(channel.terms().len());
        for term in channel.terms() {
            let images = [term.pauli.apply(code.zero()), term.pauli.apply(code.one())];
            let row = recovery
                .ops()
                .iter()
                .map(|op| {
                    let recovered = [op.apply(&images[0]), op.apply(&images[1])];
                    restrict_images(code, &recovered).trace()
                })
                .collect();
            traces.push(row);
        }
        Ok(Self {
            weights: channel.terms().iter().map(|t| t.poly.clone()).collect(),
            traces,
        })
    }

    /// Convenience constructor for `(family, n, basis)`.
    pub fn for_code(family: CodeFamily, n: usize, basis: FlipBasis) -> Result<Self> {
        let code = Code::new(family, n, basis)?;
        let channel = MarkovChannel::symbolic(n, basis)?;
        let recovery = recovery_for(&channel, &code)?;
        Self::new(&code, &channel, &recovery)
    }

    pub fn evaluate(&self, mu: f64, p: f64) -> f64 {
        let sum: f64 = self
            .weights
            .iter()
            .zip(&self.traces)
            .map(|(w, row)| {
                let t2: f64 = row.iter().map(|t| t.norm_sqr()).sum();
                if t2 == 0.0 {
                    0.0
                } else {
                    w.eval(mu, p).max(0.0) * t2
                }
            })
            .sum();
        sum / 4.0
    }
}

/// Polynomial in `p` obtained by switching off the correlations.
pub fn memoryless_slice(result: &FidelityResult) -> Result<BiPoly> {
    result.poly.substitute_mu(0)
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Independent closed form of the memoryless fidelity as a binomial sum.
///
/// Repetition codes: `Σ_{m<n/2} C(n,m) p^m (1−p)^{n−m}`, plus
/// `½ C(n,n/2) p^{n/2}(1−p)^{n/2}` for even `n`. DFS codes:
/// `Σ_{w even} C(n,w) p^w (1−p)^{n−w}`.
pub fn binomial_memoryless(family: CodeFamily, n: usize) -> Result<BiPoly> {
    let n = n as u32;
    let q = BiPoly::one() - BiPoly::p();
    let term = |w: u32, scale: i64| -> Result<BiPoly> {
        BiPoly::p()
            .checked_pow(w)?
            .checked_mul(&q.checked_pow(n - w)?)?
            .checked_scale(scale)
    };
    let mut acc = BiPoly::zero();
    for w in 0..=n {
        let c = binomial(n, w);
        let include = match family {
            CodeFamily::Rc if 2 * w < n => Some(c),
            CodeFamily::Rc if 2 * w == n => Some(c / 2),
            CodeFamily::Rc => None,
            CodeFamily::Dfs => (w % 2 == 0).then_some(c),
        };
        if let Some(c) = include {
            acc = acc.checked_add(&term(w, c)?)?;
        }
    }
    Ok(acc)
}

/// `(1 + (1 − 2p)^n) / 2`, the DFS memoryless fidelity in compact form.
pub fn dfs_memoryless_compact(n: usize) -> Result<BiPoly> {
    let base = BiPoly::one() - BiPoly::p().checked_scale(2)?;
    let doubled = BiPoly::one().checked_add(&base.checked_pow(n as u32)?)?;
    // every coefficient of 1 + (1-2p)^n is even
    let mut out = BiPoly::zero();
    for ((i, j), c) in doubled.terms() {
        debug_assert_eq!(c % 2, 0);
        out = out.checked_add(&BiPoly::monomial(c / 2, i, j))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::published_polynomial;

    #[test]
    fn rc3_matches_closed_form() {
        let f = fidelity_polynomial(CodeFamily::Rc, 3, FlipBasis::Bit).unwrap();
        assert_eq!(f.poly, published_polynomial(CodeFamily::Rc, 3).unwrap());
        assert!((f.evaluate(0.5, 0.1) - 0.918).abs() < 1e-12);
    }

    #[test]
    fn dfs3_matches_closed_form() {
        let f = fidelity_polynomial(CodeFamily::Dfs, 3, FlipBasis::Bit).unwrap();
        let expected = BiPoly::from_rows(&[&[1, -3, 6, -4], &[0, 4, -12, 8], &[0, -2, 6, -4]]);
        assert_eq!(f.poly, expected);
    }

    #[test]
    fn oracle_agrees_at_a_point() {
        let oracle = FidelityOracle::for_code(CodeFamily::Rc, 3, FlipBasis::Bit).unwrap();
        assert!((oracle.evaluate(0.5, 0.1) - 0.918).abs() < 1e-12);
        let oracle = FidelityOracle::for_code(CodeFamily::Dfs, 4, FlipBasis::Bit).unwrap();
        let f = fidelity_polynomial(CodeFamily::Dfs, 4, FlipBasis::Bit).unwrap();
        assert!((oracle.evaluate(0.3, 0.2) - f.evaluate(0.3, 0.2)).abs() < 1e-12);
    }

    #[test]
    fn noiseless_channel_is_perfect() {
        for family in [CodeFamily::Rc, CodeFamily::Dfs] {
            for n in 2..=6 {
                let f = fidelity_polynomial(family, n, FlipBasis::Bit).unwrap();
                for k in 0..=10 {
                    assert_eq!(f.evaluate(k as f64 / 10.0, 0.0), 1.0);
                }
            }
        }
    }

    #[test]
    fn memoryless_slices() {
        let f3 = fidelity_polynomial(CodeFamily::Rc, 3, FlipBasis::Bit).unwrap();
        let expected = BiPoly::from_rows(&[&[1, 0, -3, 2]]);
        assert_eq!(memoryless_slice(&f3).unwrap(), expected);
        let f4 = fidelity_polynomial(CodeFamily::Rc, 4, FlipBasis::Bit).unwrap();
        assert_eq!(memoryless_slice(&f4).unwrap(), expected);
        assert_eq!(binomial_memoryless(CodeFamily::Rc, 4).unwrap(), expected);

        let d6 = fidelity_polynomial(CodeFamily::Dfs, 6, FlipBasis::Bit).unwrap();
        let expected = BiPoly::from_rows(&[&[1, -6, 30, -80, 120, -96, 32]]);
        assert_eq!(memoryless_slice(&d6).unwrap(), expected);
        assert_eq!(dfs_memoryless_compact(6).unwrap(), expected);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(7, 0), 1);
    }
}
