//! Small dense linear algebra over n-qubit registers.
//!
//! Qubit `k` (1-based, as written in the tensor products `A_n ⊗ ... ⊗ A_1`)
//! is stored in bit `k - 1` of a computational-basis index and of every Pauli
//! mask. The basis state `|100⟩` (qubit 1 flipped) therefore has index 1.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::codes::Code;
use crate::error::{check_qubits, Error, Result};

/// Largest register handled by the dense representation (1024 x 1024).
pub const MAX_QUBITS: usize = 10;

/// Tolerance for unitarity and orthonormality checks.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which single-qubit Pauli the noise applies: `X` for bit flips, `Z` for
/// phase flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlipBasis {
    Bit,
    Phase,
}

impl FlipBasis {
    pub fn other(self) -> Self {
        match self {
            FlipBasis::Bit => FlipBasis::Phase,
            FlipBasis::Phase => FlipBasis::Bit,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FlipBasis::Bit => "bit",
            FlipBasis::Phase => "phase",
        }
    }
}

impl fmt::Display for FlipBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Renders a basis index as a ket label with qubit 1 leftmost.
pub fn basis_label(n: usize, index: usize) -> String {
    (0..n)
        .map(|k| if index >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// An X-type or Z-type Pauli string on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x_mask: u32,
    z_mask: u32,
}

impl PauliString {
    pub fn new(n: usize, x_mask: u32, z_mask: u32) -> Result<Self> {
        check_qubits(n, 1)?;
        let limit = 1u32 << n;
        if x_mask >= limit || z_mask >= limit {
            return Err(Error::InvalidPauli(format!(
                "mask uses bits beyond qubit {n} (x={x_mask:#b}, z={z_mask:#b})"
            )));
        }
        if x_mask != 0 && z_mask != 0 {
            return Err(Error::InvalidPauli(
                "mixed X/Z strings are not supported".into(),
            ));
        }
        Ok(Self { n, x_mask, z_mask })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    /// X on every qubit whose bit is set in `mask`.
    pub fn x(n: usize, mask: u32) -> Result<Self> {
        Self::new(n, mask, 0)
    }

    /// Z on every qubit whose bit is set in `mask`.
    pub fn z(n: usize, mask: u32) -> Result<Self> {
        Self::new(n, 0, mask)
    }

    /// Flip string of the given basis: X-type for bit flips, Z-type for phase flips.
    pub fn flips(n: usize, basis: FlipBasis, mask: u32) -> Result<Self> {
        match basis {
            FlipBasis::Bit => Self::x(n, mask),
            FlipBasis::Phase => Self::z(n, mask),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u32 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u32 {
        self.z_mask
    }

    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Image of a computational basis state: `P|b⟩ = phase · |new_index⟩`.
    ///
    /// Panics if `index` is not a valid basis index for this register.
    pub fn apply_index(&self, index: usize) -> (usize, f64) {
        assert!(
            index < 1 << self.n,
            "basis index {index} out of range for {} qubits",
            self.n
        );
        let phase = if (self.z_mask as usize & index)
            .count_ones()
            .is_multiple_of(2)
        {
            1.0
        } else {
            -1.0
        };
        (index ^ self.x_mask as usize, phase)
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        assert_eq!(state.n, self.n, "Pauli string and state disagree on n");
        let mut out = vec![ZERO; state.amps.len()];
        for (i, &a) in state.amps.iter().enumerate() {
            let (j, phase) = self.apply_index(i);
            out[j] = a * phase;
        }
        StateVector {
            n: self.n,
            amps: out,
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        let mut m = DenseOperator::zeros(self.n);
        for col in 0..m.dim() {
            let (row, phase) = self.apply_index(col);
            m[(row, col)] = Complex64::new(phase, 0.0);
        }
        m
    }

    /// Conjugation by `H^{⊗n}` swaps X-type and Z-type strings.
    pub fn hadamard_conjugate(&self) -> Self {
        Self {
            n: self.n,
            x_mask: self.z_mask,
            z_mask: self.x_mask,
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            let c = if self.x_mask >> k & 1 == 1 {
                'X'
            } else if self.z_mask >> k & 1 == 1 {
                'Z'
            } else {
                'I'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            amps: vec![ZERO; 1 << n],
        }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut s = Self::zeros(n);
        s.amps[index] = ONE;
        s
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n, 1)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: amps.len().trailing_zeros() as usize,
            });
        }
        Ok(Self { n, amps })
    }

    /// `|s_1⟩ ⊗ ... ⊗ |s_n⟩` for identical single-qubit factors `(a0, a1)`.
    pub fn product(n: usize, a0: Complex64, a1: Complex64) -> Self {
        let amps = (0..1usize << n)
            .map(|i| {
                let ones = i.count_ones() as i32;
                a1.powi(ones) * a0.powi(n as i32 - ones)
            })
            .collect();
        Self { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// `self -= c · other`
    pub fn sub_scaled(&mut self, c: Complex64, other: &StateVector) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a -= c * b;
        }
    }

    pub fn normalized(mut self) -> Option<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm < 1e-12 {
            return None;
        }
        self.scale(Complex64::new(1.0 / norm, 0.0));
        Some(self)
    }

    /// `|self⟩⟨other|`
    pub fn outer(&self, other: &StateVector) -> DenseOperator {
        let d = self.dim();
        let mut m = DenseOperator::zeros(self.n);
        for r in 0..d {
            if self.amps[r] == ZERO {
                continue;
            }
            for c in 0..d {
                m.data[r * d + c] = self.amps[r] * other.amps[c].conj();
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Row-major `2^n x 2^n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n: usize,
    data: Vec<Complex64>,
}

impl Index<(usize, usize)> for DenseOperator {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim() + c]
    }
}

impl IndexMut<(usize, usize)> for DenseOperator {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        let d = self.dim();
        &mut self.data[r * d + c]
    }
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Self {
        let d = 1usize << n;
        Self {
            n,
            data: vec![ZERO; d * d],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..m.dim() {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut out = Self::zeros(self.n);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &DenseOperator) -> Self {
        assert_eq!(self.n, rhs.n, "matmul dimension mismatch");
        let d = self.dim();
        let mut out = Self::zeros(self.n);
        for r in 0..d {
            let row = &mut out.data[r * d..(r + 1) * d];
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&rhs.data[k * d..(k + 1) * d]) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        assert_eq!(self.n, state.n, "operator and state disagree on n");
        let d = self.dim();
        let amps = (0..d)
            .map(|r| {
                self.data[r * d..(r + 1) * d]
                    .iter()
                    .zip(&state.amps)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        StateVector { n: self.n, amps }
    }

    pub fn add_assign(&mut self, rhs: &DenseOperator) {
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }

    pub fn sub(&self, rhs: &DenseOperator) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c · |a⟩⟨b|`
    pub fn add_outer(&mut self, c: Complex64, a: &StateVector, b: &StateVector) {
        let d = self.dim();
        for r in 0..d {
            let ar = c * a.amps[r];
            if ar == ZERO {
                continue;
            }
            for (o, bc) in self.data[r * d..(r + 1) * d].iter_mut().zip(&b.amps) {
                *o += ar * bc.conj();
            }
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(U†U - I)_{ij}|`
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&DenseOperator::identity(self.n))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() < UNITARY_TOL
    }

    /// `⟨a|M|b⟩`
    pub fn matrix_element(&self, a: &StateVector, b: &StateVector) -> Complex64 {
        a.inner(&self.apply(b))
    }

    pub fn kron(&self, rhs: &DenseOperator) -> Self {
        // self acts on the high qubits, rhs on the low ones
        let (da, db) = (self.dim(), rhs.dim());
        let mut out = Self::zeros(self.n + rhs.n);
        let d = da * db;
        for ra in 0..da {
            for ca in 0..da {
                let a = self.data[ra * da + ca];
                if a == ZERO {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        out.data[(ra * db + rb) * d + ca * db + cb] = a * rhs.data[rb * db + cb];
                    }
                }
            }
        }
        out
    }
}

/// CNOT with control qubit `control` and target qubit `target` (1-based),
/// built as `½[(I+Z_c) + (I−Z_c)X_t]` on `n` qubits.
pub fn cnot_unitary(control: usize, target: usize, n: usize) -> Result<DenseOperator> {
    check_qubits(n, 2)?;
    if control == target {
        return Err(Error::InvalidGate(format!(
            "CNOT control and target are both qubit {control}"
        )));
    }
    if control == 0 || target == 0 || control > n || target > n {
        return Err(Error::InvalidGate(format!(
            "CNOT({control}, {target}) does not fit in {n} qubits"
        )));
    }
    let zc = PauliString::z(n, 1 << (control - 1))?.to_dense();
    let xt = PauliString::x(n, 1 << (target - 1))?.to_dense();
    let id = DenseOperator::identity(n);
    let mut sum = id.clone();
    sum.add_assign(&zc);
    sum.add_assign(&xt);
    let zx = zc.matmul(&xt);
    Ok(sum.sub(&zx).scaled(Complex64::new(0.5, 0.0)))
}

/// `H^{⊗n}`
pub fn hadamard_all(n: usize) -> Result<DenseOperator> {
    check_qubits(n, 1)?;
    let d = 1usize << n;
    let scale = (d as f64).sqrt().recip();
    let mut m = DenseOperator::zeros(n);
    for r in 0..d {
        for c in 0..d {
            let sign = if (r & c).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            m[(r, c)] = Complex64::new(sign * scale, 0.0);
        }
    }
    Ok(m)
}

/// A 2x2 matrix in the logical basis `{|0_L⟩, |1_L⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Logical2(pub [[Complex64; 2]; 2]);

impl Logical2 {
    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs_diff(&self, other: &Logical2) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                m = m.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        m
    }

    /// `Some(λ)` when the matrix equals `λ I` within `tol`.
    pub fn as_scalar(&self, tol: f64) -> Option<Complex64> {
        let lambda = self.trace() / 2.0;
        let scalar = Self([[lambda, ZERO], [ZERO, lambda]]);
        (self.max_abs_diff(&scalar) < tol).then_some(lambda)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = *self;
        for row in &mut out.0 {
            for v in row {
                *v *= c;
            }
        }
        out
    }
}

/// Matrix elements of `op` between the codewords of `code`.
pub fn restricted_matrix(op: &DenseOperator, code: &Code) -> Result<Logical2> {
    if op.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: op.n(),
        });
    }
    let images = [op.apply(code.zero()), op.apply(code.one())];
    Ok(restrict_images(code, &images))
}

/// Builds the restricted matrix from precomputed images `M|0_L⟩`, `M|1_L⟩`.
pub(crate) fn restrict_images(code: &Code, images: &[StateVector; 2]) -> Logical2 {
    let words = [code.zero(), code.one()];
    let mut m = [[ZERO; 2]; 2];
    for (r, w) in words.iter().enumerate() {
        for (c, img) in images.iter().enumerate() {
            m[r][c] = w.inner(img);
        }
    }
    Logical2(m)
}
