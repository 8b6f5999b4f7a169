//! Markov-correlated bit-flip and phase-flip channels.
//!
//! The flip pattern `(i_1, ..., i_n)` is a Markov chain starting at qubit 1:
//! its probability is `P(i_1) · Π_{l≥2} P(i_l | i_{l-1})` with
//! `P(next | prev) = (1 − mu)·P(next) + mu·δ`. `mu = 0` is the i.i.d.
//! channel and `mu = 1` flips either every qubit or none.

use num_complex::Complex64;

use crate::bipoly::{marginal_factor, transition_factor, BiPoly};
use crate::error::{check_qubits, check_unit, Error, Result};
use crate::pauli::{DenseOperator, FlipBasis, PauliString};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelMode {
    Symbolic,
    Numeric { mu: f64, p: f64 },
}

/// Probability carried by a Kraus term.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Symbolic(BiPoly),
    Numeric(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausTerm {
    /// Bit `k − 1` set means qubit `k` is flipped.
    pub pattern: u32,
    /// Exact probability of the pattern, always available.
    pub poly: BiPoly,
    pub weight: Weight,
    pub pauli: PauliString,
}

impl KrausTerm {
    /// Numeric probability; symbolic terms are evaluated at `(mu, p)`.
    pub fn probability_at(&self, mu: f64, p: f64) -> f64 {
        match self.weight {
            Weight::Numeric(w) => w,
            Weight::Symbolic(ref poly) => poly.eval(mu, p),
        }
    }

    /// `√w · P` as a dense matrix.
    pub fn operator_at(&self, mu: f64, p: f64) -> DenseOperator {
        let amp = self.probability_at(mu, p).max(0.0).sqrt();
        self.pauli.to_dense().scaled(Complex64::new(amp, 0.0))
    }
}

/// Exact probability of one flip pattern on `n` qubits.
pub fn pattern_weight(n: usize, pattern: u32) -> BiPoly {
    let bit = |k: usize| pattern >> k & 1 == 1;
    (1..n).fold(marginal_factor(bit(0)), |acc, k| {
        &acc * &transition_factor(bit(k - 1), bit(k))
    })
}

/// Probability of one flip pattern evaluated as the float Markov product,
/// which keeps exact zeros that the expanded polynomial loses to cancellation.
pub fn pattern_probability(n: usize, pattern: u32, mu: f64, p: f64) -> f64 {
    let bit = |k: usize| pattern >> k & 1 == 1;
    let marginal = |b: bool| if b { p } else { 1.0 - p };
    (1..n).fold(marginal(bit(0)), |acc, k| {
        let same = if bit(k) == bit(k - 1) { mu } else { 0.0 };
        acc * ((1.0 - mu) * marginal(bit(k)) + same)
    })
}

/// All `2^n` Kraus terms, ordered by pattern value.
pub fn enumerate_kraus(n: usize, basis: FlipBasis, mode: ChannelMode) -> Result<Vec<KrausTerm>> {
    check_qubits(n, 1)?;
    if let ChannelMode::Numeric { mu, p } = mode {
        check_unit("mu", mu)?;
        check_unit("p", p)?;
    }
    (0..1u32 << n)
        .map(|pattern| {
            let poly = pattern_weight(n, pattern);
            let weight = match mode {
                ChannelMode::Symbolic => Weight::Symbolic(poly.clone()),
                ChannelMode::Numeric { mu, p } => {
                    Weight::Numeric(pattern_probability(n, pattern, mu, p))
                }
            };
            Ok(KrausTerm {
                pattern,
                pauli: PauliString::flips(n, basis, pattern)?,
                poly,
                weight,
            })
        })
        .collect()
}

/// Patterns ordered by weight class, then lexicographically by the
/// (ascending) list of flipped qubits: `000, 100, 010, 001, 110, 101, 011, 111`
/// for three qubits.
pub fn label_order(n: usize) -> Vec<u32> {
    let mut patterns: Vec<u32> = (0..1u32 << n).collect();
    patterns.sort_by_key(|&m| {
        let qubits: Vec<u32> = (0..n as u32).filter(|k| m >> k & 1 == 1).collect();
        (m.count_ones(), qubits)
    });
    patterns
}

/// Conventional operator label `k` of `A'_k` for a flip pattern.
pub fn pattern_label(n: usize, pattern: u32) -> usize {
    label_order(n)
        .iter()
        .position(|&m| m == pattern)
        .expect("pattern out of range")
}

/// Flip pattern of the conventional label `k`.
pub fn label_pattern(n: usize, label: usize) -> u32 {
    label_order(n)[label]
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChannel {
    n: usize,
    basis: FlipBasis,
    mode: ChannelMode,
    terms: Vec<KrausTerm>,
}

impl MarkovChannel {
    pub fn new(n: usize, basis: FlipBasis, mode: ChannelMode) -> Result<Self> {
        let terms = enumerate_kraus(n, basis, mode)?;
        Ok(Self {
            n,
            basis,
            mode,
            terms,
        })
    }

    pub fn symbolic(n: usize, basis: FlipBasis) -> Result<Self> {
        Self::new(n, basis, ChannelMode::Symbolic)
    }

    pub fn numeric(n: usize, basis: FlipBasis, mu: f64, p: f64) -> Result<Self> {
        Self::new(n, basis, ChannelMode::Numeric { mu, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> FlipBasis {
        self.basis
    }

    pub fn mode(&self) -> ChannelMode {
        self.mode
    }

    pub fn terms(&self) -> &[KrausTerm] {
        &self.terms
    }

    pub fn term(&self, pattern: u32) -> &KrausTerm {
        &self.terms[pattern as usize]
    }

    /// Sum of all symbolic weights; the constant `1` for a valid channel.
    pub fn weight_sum(&self) -> BiPoly {
        self.terms.iter().map(|t| t.poly.clone()).sum()
    }

    /// Same channel with every Kraus term conjugated by `H^{⊗n}`.
    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| KrausTerm {
                pauli: t.pauli.hadamard_conjugate(),
                ..t.clone()
            })
            .collect();
        Self {
            n: self.n,
            basis: self.basis.other(),
            mode: self.mode,
            terms,
        }
    }

    fn numeric_point(&self) -> Result<(f64, f64)> {
        match self.mode {
            ChannelMode::Numeric { mu, p } => Ok((mu, p)),
            ChannelMode::Symbolic => Err(Error::SymbolicChannel),
        }
    }

    /// `Σ_k A'_k ρ A'_k†`
    pub fn apply(&self, rho: &DenseOperator) -> Result<DenseOperator> {
        let (mu, p) = self.numeric_point()?;
        if rho.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.n(),
            });
        }
        let d = rho.dim();
        let mut out = DenseOperator::zeros(self.n);
        for term in &self.terms {
            let w = term.probability_at(mu, p);
            if w == 0.0 {
                continue;
            }
            // (P ρ P)_{P(r), P(c)} = s_r s_c ρ_{r c}
            for r in 0..d {
                let (pr, sr) = term.pauli.apply_index(r);
                for c in 0..d {
                    let (pc, sc) = term.pauli.apply_index(c);
                    out[(pr, pc)] += rho[(r, c)] * (w * sr * sc);
                }
            }
        }
        Ok(out)
    }

    /// `Σ_k A'_k† A'_k`, which must be the identity.
    pub fn completeness(&self) -> Result<DenseOperator> {
        let (mu, p) = self.numeric_point()?;
        let d = 1usize << self.n;
        let mut acc = DenseOperator::zeros(self.n);
        for term in &self.terms {
            let w = term.probability_at(mu, p).max(0.0);
            if w == 0.0 {
                continue;
            }
            // A is a weighted signed permutation, so column i has one entry
            let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); d];
            for i in 0..d {
                let (r, s) = term.pauli.apply_index(i);
                rows[r].push((i, s));
            }
            for cols in &rows {
                for &(i, si) in cols {
                    for &(j, sj) in cols {
                        acc[(i, j)] += Complex64::new(w * si * sj, 0.0);
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Fidelity without any encoding: `(1/N²) Σ_k |tr A'_k|²`.
    pub fn unencoded_fidelity(&self) -> Result<f64> {
        let (mu, p) = self.numeric_point()?;
        let dim = (1u64 << self.n) as f64;
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                // tr of a nontrivial X- or Z-string vanishes
                let tr = if t.pauli.is_identity() {
                    dim * t.probability_at(mu, p).sqrt()
                } else {
                    0.0
                };
                tr * tr
            })
            .sum();
        Ok(sum / (dim * dim))
    }

    /// Exact unencoded fidelity: the weight of the identity pattern.
    pub fn unencoded_fidelity_poly(&self) -> BiPoly {
        self.terms[0].poly.clone()
    }
}
