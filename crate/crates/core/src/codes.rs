//! Repetition codes and decoherence-free-subspace codes.
//!
//! Both families encode one logical qubit into `n` physical qubits with
//! product-state codewords. For bit-flip noise the repetition code uses
//! `|0...0⟩, |1...1⟩` and the DFS code uses `|+...+⟩, |−...−⟩`; the
//! phase-flip variants are the Hadamard conjugates of those.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::MarkovChannel;
use crate::error::{check_qubits, Result};
use crate::pauli::{cnot_unitary, hadamard_all, DenseOperator, FlipBasis, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    /// Repetition code.
    Rc,
    /// Decoherence-free subspace code.
    Dfs,
}

impl CodeFamily {
    pub fn name(self) -> &'static str {
        match self {
            CodeFamily::Rc => "rc",
            CodeFamily::Dfs => "dfs",
        }
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodeFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "rc" => Ok(CodeFamily::Rc),
            "dfs" => Ok(CodeFamily::Dfs),
            other => Err(format!(
                "unknown code family {other:?} (expected rc or dfs)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    n: usize,
    family: CodeFamily,
    basis: FlipBasis,
    zero: StateVector,
    one: StateVector,
    projector: DenseOperator,
}

impl Code {
    pub fn new(family: CodeFamily, n: usize, basis: FlipBasis) -> Result<Self> {
        check_qubits(n, 2)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (zero, one) = if uses_hadamard_words(family, basis) {
            let (plus, minus) = (Complex64::new(s, 0.0), Complex64::new(-s, 0.0));
            (
                StateVector::product(n, plus, plus),
                StateVector::product(n, plus, minus),
            )
        } else {
            (
                StateVector::basis(n, 0),
                StateVector::basis(n, (1 << n) - 1),
            )
        };
        let mut projector = zero.outer(&zero);
        projector.add_assign(&one.outer(&one));
        Ok(Self {
            n,
            family,
            basis,
            zero,
            one,
            projector,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> CodeFamily {
        self.family
    }

    pub fn basis(&self) -> FlipBasis {
        self.basis
    }

    /// `|0_L⟩`
    pub fn zero(&self) -> &StateVector {
        &self.zero
    }

    /// `|1_L⟩`
    pub fn one(&self) -> &StateVector {
        &self.one
    }

    pub fn codeword(&self, bit: usize) -> &StateVector {
        if bit == 0 {
            &self.zero
        } else {
            &self.one
        }
    }

    /// `P_C = |0_L⟩⟨0_L| + |1_L⟩⟨1_L|`
    pub fn projector(&self) -> &DenseOperator {
        &self.projector
    }

    /// Largest deviation of the codeword Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let g = [
            self.zero.inner(&self.zero) - 1.0,
            self.one.inner(&self.one) - 1.0,
            self.zero.inner(&self.one),
        ];
        g.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The code protecting against the Hadamard-conjugate noise.
    pub fn conjugate(&self) -> Result<Self> {
        Self::new(self.family, self.n, self.basis.other())
    }
}

fn uses_hadamard_words(family: CodeFamily, basis: FlipBasis) -> bool {
    matches!(
        (family, basis),
        (CodeFamily::Rc, FlipBasis::Phase) | (CodeFamily::Dfs, FlipBasis::Bit)
    )
}

/// `|0_L⟩ = |0...0⟩`, `|1_L⟩ = |1...1⟩` (bit) or `|±...±⟩` (phase).
pub fn repetition_code(n: usize, basis: FlipBasis) -> Result<Code> {
    Code::new(CodeFamily::Rc, n, basis)
}

/// `|0_L⟩ = |+...+⟩`, `|1_L⟩ = |−...−⟩`, protecting against correlated bit flips.
pub fn dfs_code(n: usize) -> Result<Code> {
    Code::new(CodeFamily::Dfs, n, FlipBasis::Bit)
}

/// CNOT fan-out from qubit 1 onto qubits `2..=n`, followed by `H^{⊗n}` for
/// codes with `|±⟩` codewords. Maps `|b⟩ ⊗ |0...0⟩` to `|b_L⟩`.
pub fn encoding_unitary(code: &Code) -> Result<DenseOperator> {
    let n = code.n();
    let mut u = DenseOperator::identity(n);
    for target in 2..=n {
        u = cnot_unitary(1, target, n)?.matmul(&u);
    }
    if uses_hadamard_words(code.family(), code.basis()) {
        u = hadamard_all(n)?.matmul(&u);
    }
    Ok(u)
}

/// Conjugates every Kraus term by `H^{⊗n}`, turning bit flips into phase
/// flips and back. Weights are unchanged.
pub fn conjugate_channel(channel: &MarkovChannel) -> MarkovChannel {
    channel.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::pauli::restricted_matrix;

    fn all_codes() -> Vec<Code> {
        let mut out = Vec::new();
        for n in 2..=6 {
            for family in [CodeFamily::Rc, CodeFamily::Dfs] {
                for basis in [FlipBasis::Bit, FlipBasis::Phase] {
                    out.push(Code::new(family, n, basis).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn repetition_codewords() {
        for n in 2..=4 {
            let c = repetition_code(n, FlipBasis::Bit).unwrap();
            assert_eq!(c.zero(), &StateVector::basis(n, 0));
            assert_eq!(c.one(), &StateVector::basis(n, (1 << n) - 1));
        }
        assert!(repetition_code(1, FlipBasis::Bit).is_err());
        assert!(dfs_code(1).is_err());
    }

    #[test]
    fn dfs_codewords_are_plus_and_minus() {
        for n in [3, 4] {
            let c = dfs_code(n).unwrap();
            let amp = (1u32 << n) as f64;
            for (i, (a, b)) in c
                .zero()
                .amplitudes()
                .iter()
                .zip(c.one().amplitudes())
                .enumerate()
            {
                assert!((a.re - amp.sqrt().recip()).abs() < 1e-15);
                let sign = if (i as u32).count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                assert!((b.re - sign * amp.sqrt().recip()).abs() < 1e-15);
            }
            assert!(c.zero().inner(c.one()).norm() < 1e-15);
        }
    }

    #[test]
    fn codes_are_orthonormal_with_idempotent_projectors() {
        for c in all_codes() {
            assert!(c.orthonormality_residual() < 1e-12);
            let p = c.projector();
            assert!(p.matmul(p).max_abs_diff(p) < 1e-12);
            let r = restricted_matrix(p, &c).unwrap();
            assert!(r.max_abs_diff(&crate::pauli::Logical2::identity()) < 1e-12);
            let id = DenseOperator::identity(c.n());
            assert!(restricted_matrix(&id, &c)
                .unwrap()
                .as_scalar(1e-12)
                .is_some());
        }
    }

    #[test]
    fn restricted_matrix_rejects_mismatched_sizes() {
        let c = dfs_code(3).unwrap();
        assert!(matches!(
            restricted_matrix(&DenseOperator::identity(2), &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn encoders_map_inputs_to_codewords() {
        for c in all_codes() {
            let u = encoding_unitary(&c).unwrap();
            assert!(u.unitarity_residual() < 1e-12);
            let zero_in = StateVector::basis(c.n(), 0);
            let one_in = StateVector::basis(c.n(), 1);
            assert!(u.apply(&zero_in).max_abs_diff(c.zero()) < 1e-12);
            assert!(u.apply(&one_in).max_abs_diff(c.one()) < 1e-12);
        }
    }

    #[test]
    fn three_qubit_encoders() {
        let bit = repetition_code(3, FlipBasis::Bit).unwrap();
        let u = encoding_unitary(&bit).unwrap();
        assert!(
            u.apply(&StateVector::basis(3, 0b001))
                .max_abs_diff(&StateVector::basis(3, 0b111))
                < 1e-15
        );
        assert!(
            u.apply(&StateVector::basis(3, 0))
                .max_abs_diff(&StateVector::basis(3, 0))
                < 1e-15
        );

        let phase = repetition_code(3, FlipBasis::Phase).unwrap();
        let out = encoding_unitary(&phase)
            .unwrap()
            .apply(&StateVector::basis(3, 0b001));
        assert!(out.max_abs_diff(phase.one()) < 1e-12);
    }

    #[test]
    fn dfs_words_are_hadamard_images_of_repetition_words() {
        for n in 2..=5 {
            let h = hadamard_all(n).unwrap();
            let rc = repetition_code(n, FlipBasis::Bit).unwrap();
            let dfs = dfs_code(n).unwrap();
            assert!(h.apply(rc.zero()).max_abs_diff(dfs.zero()) < 1e-15);
            assert!(h.apply(rc.one()).max_abs_diff(dfs.one()) < 1e-15);
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("RC".parse::<CodeFamily>(), Ok(CodeFamily::Rc));
        assert_eq!("dfs".parse::<CodeFamily>(), Ok(CodeFamily::Dfs));
        assert!("css".parse::<CodeFamily>().is_err());
    }
}
