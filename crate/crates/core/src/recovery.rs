//! Detectability, correctable sets and recovery operations.
//!
//! An error `A` is detectable on a code when `P_C A P_C = λ P_C`. The
//! correctable errors generate orthogonal syndrome subspaces `V^{0_L}` and
//! `V^{1_L}`; recovery operator `R_l = Σ_i |i_L⟩⟨v_l^{i_L}|` maps the `l`-th
//! syndrome pair back onto the code. When the syndrome subspaces do not fill
//! the register a projector `R_⊥` onto their orthogonal complement completes
//! the operation.

use num_complex::Complex64;

use crate::channel::{label_order, KrausTerm, MarkovChannel};
use crate::codes::{Code, CodeFamily};
use crate::error::{Error, Result};
use crate::pauli::{restrict_images, DenseOperator, Logical2, PauliString, StateVector};

/// Generic interior point at which detectability is probed numerically.
pub const PROBE_POINT: (f64, f64) = (0.3, 0.2);

/// Tolerance for `P_C A P_C = λ P_C`.
pub const DETECT_TOL: f64 = 1e-10;

const OVERLAP_TOL: f64 = 1e-10;

/// Restricted matrix of a bare Pauli string on the code.
fn restricted_pauli(pauli: &PauliString, code: &Code) -> Logical2 {
    restrict_images(code, &[pauli.apply(code.zero()), pauli.apply(code.one())])
}

/// `Some(λ)` when `P_C A'_k P_C = λ P_C`, evaluated at [`PROBE_POINT`].
pub fn is_detectable(term: &KrausTerm, code: &Code) -> Option<Complex64> {
    let (mu, p) = PROBE_POINT;
    let amp = Complex64::new(term.probability_at(mu, p).sqrt(), 0.0);
    restricted_pauli(&term.pauli, code)
        .scaled(amp)
        .as_scalar(DETECT_TOL)
}

/// Detectability read off the flip pattern alone: the repetition code only
/// misses the all-qubit flip, the DFS code sees every even-weight pattern as
/// a scalar.
pub fn structurally_detectable(family: CodeFamily, n: usize, pattern: u32) -> bool {
    match family {
        CodeFamily::Rc => pattern != (1u32 << n) - 1,
        CodeFamily::Dfs => pattern.count_ones().is_multiple_of(2),
    }
}

/// Whether a flip pattern belongs to the correctable set.
///
/// Repetition codes keep patterns of weight below `n/2`; for even `n` the
/// weight-`n/2` patterns come in complementary pairs and the member flipping
/// qubit 1 is kept. DFS codes keep the even-weight patterns.
pub fn structurally_correctable(family: CodeFamily, n: usize, pattern: u32) -> bool {
    let w = pattern.count_ones() as usize;
    match family {
        CodeFamily::Rc => 2 * w < n || (2 * w == n && pattern & 1 == 1),
        CodeFamily::Dfs => w.is_multiple_of(2),
    }
}

/// Detectable terms in conventional label order.
pub fn detectable_set<'a>(channel: &'a MarkovChannel, code: &Code) -> Vec<&'a KrausTerm> {
    label_order(channel.n())
        .into_iter()
        .map(|m| channel.term(m))
        .filter(|t| is_detectable(t, code).is_some())
        .collect()
}

fn check_match(channel: &MarkovChannel, code: &Code) -> Result<()> {
    if channel.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: channel.n(),
        });
    }
    if channel.basis() != code.basis() {
        return Err(Error::Construction(format!(
            "{} code paired with a {}-flip channel",
            code.basis(),
            channel.basis()
        )));
    }
    Ok(())
}

/// Correctable terms in conventional label order.
///
/// Every member is checked to be detectable, and every product `A_a† A_b`
/// of members as well.
pub fn correctable_set<'a>(channel: &'a MarkovChannel, code: &Code) -> Result<Vec<&'a KrausTerm>> {
    check_match(channel, code)?;
    let n = code.n();
    let chosen: Vec<&KrausTerm> = label_order(n)
        .into_iter()
        .filter(|&m| structurally_correctable(code.family(), n, m))
        .map(|m| channel.term(m))
        .collect();
    for t in &chosen {
        if is_detectable(t, code).is_none() {
            return Err(Error::Construction(format!(
                "pattern {:#b} is not detectable",
                t.pattern
            )));
        }
    }
    for a in &chosen {
        for b in &chosen {
            // flip strings are Hermitian and commute, so A_a† A_b is the string a ^ b
            let prod = PauliString::flips(n, code.basis(), a.pattern ^ b.pattern)?;
            if restricted_pauli(&prod, code)
                .as_scalar(DETECT_TOL)
                .is_none()
            {
                return Err(Error::Construction(format!(
                    "patterns {:#b} and {:#b} violate the correctability condition",
                    a.pattern, b.pattern
                )));
            }
        }
    }
    Ok(chosen)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyndromePair {
    /// Flip patterns whose images span this pair (several for DFS codes).
    pub patterns: Vec<u32>,
    /// `[|v_l^{0_L}⟩, |v_l^{1_L}⟩]`
    pub vectors: [StateVector; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeSubspaces {
    n: usize,
    pairs: Vec<SyndromePair>,
}

impl SyndromeSubspaces {
    pub fn pairs(&self) -> &[SyndromePair] {
        &self.pairs
    }

    /// Ordered basis of `V^{i_L}`.
    pub fn basis(&self, logical: usize) -> Vec<&StateVector> {
        self.pairs.iter().map(|p| &p.vectors[logical]).collect()
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Whether `V^{0_L} ⊕ V^{1_L}` is the whole register.
    pub fn fills_register(&self) -> bool {
        2 * self.pairs.len() == 1 << self.n
    }
}

/// Spans of the correctable images of each codeword.
///
/// Images parallel to an existing pair (with the same phase on both
/// codewords) are folded into it; anything that is neither parallel nor
/// orthogonal means the correctable set was wrong.
pub fn syndrome_subspaces(correctable: &[&KrausTerm], code: &Code) -> Result<SyndromeSubspaces> {
    let mut pairs: Vec<SyndromePair> = Vec::new();
    'terms: for term in correctable {
        let images = [term.pauli.apply(code.zero()), term.pauli.apply(code.one())];
        for pair in pairs.iter_mut() {
            let o = [
                pair.vectors[0].inner(&images[0]),
                pair.vectors[1].inner(&images[1]),
            ];
            let (a0, a1) = (o[0].norm(), o[1].norm());
            if (a0 - 1.0).abs() < OVERLAP_TOL && (a1 - 1.0).abs() < OVERLAP_TOL {
                if (o[0] - o[1]).norm() > OVERLAP_TOL {
                    return Err(Error::Construction(format!(
                        "pattern {:#b} acts as a logical operator",
                        term.pattern
                    )));
                }
                pair.patterns.push(term.pattern);
                continue 'terms;
            }
            if a0 > OVERLAP_TOL || a1 > OVERLAP_TOL {
                return Err(Error::Construction(format!(
                    "image of pattern {:#b} overlaps an existing syndrome vector",
                    term.pattern
                )));
            }
        }
        for pair in &pairs {
            for (img, other) in [
                (&images[0], &pair.vectors[1]),
                (&images[1], &pair.vectors[0]),
            ] {
                if other.inner(img).norm() > OVERLAP_TOL {
                    return Err(Error::Construction(format!(
                        "pattern {:#b} mixes the two syndrome subspaces",
                        term.pattern
                    )));
                }
            }
        }
        if images[0].inner(&images[1]).norm() > OVERLAP_TOL {
            return Err(Error::Construction(format!(
                "pattern {:#b} maps the codewords onto overlapping states",
                term.pattern
            )));
        }
        let [v0, v1] = images;
        pairs.push(SyndromePair {
            patterns: vec![term.pattern],
            vectors: [
                v0.normalized().expect("Pauli image has unit norm"),
                v1.normalized().expect("Pauli image has unit norm"),
            ],
        });
    }
    Ok(SyndromeSubspaces { n: code.n(), pairs })
}

#[derive(Debug, Clone, PartialEq)]
pub enum RecoveryOperator {
    /// `|0_L⟩⟨v^0| + |1_L⟩⟨v^1|`
    Isometry {
        codewords: [StateVector; 2],
        syndromes: [StateVector; 2],
    },
    /// Projector onto the complement of the syndrome subspaces.
    Complement(DenseOperator),
}

impl RecoveryOperator {
    pub fn apply(&self, state: &StateVector) -> StateVector {
        match self {
            RecoveryOperator::Isometry {
                codewords,
                syndromes,
            } => {
                let mut out = StateVector::zeros(state.n());
                for (w, v) in codewords.iter().zip(syndromes) {
                    out.sub_scaled(-v.inner(state), w);
                }
                out
            }
            RecoveryOperator::Complement(p) => p.apply(state),
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        match self {
            RecoveryOperator::Isometry {
                codewords,
                syndromes,
            } => {
                let mut m = DenseOperator::zeros(codewords[0].n());
                for (w, v) in codewords.iter().zip(syndromes) {
                    m.add_outer(Complex64::new(1.0, 0.0), w, v);
                }
                m
            }
            RecoveryOperator::Complement(p) => p.clone(),
        }
    }

    /// `acc += R† R`
    fn accumulate_gram(&self, acc: &mut DenseOperator) {
        match self {
            RecoveryOperator::Isometry {
                codewords,
                syndromes,
            } => {
                // R†R = Σ_ij |v^i⟩⟨i_L|j_L⟩⟨v^j|
                for i in 0..2 {
                    for j in 0..2 {
                        let g = codewords[i].inner(&codewords[j]);
                        if g.norm() > 0.0 {
                            acc.add_outer(g, &syndromes[i], &syndromes[j]);
                        }
                    }
                }
            }
            RecoveryOperator::Complement(p) => acc.add_assign(&p.adjoint().matmul(p)),
        }
    }

    /// `R ρ R†`
    fn conjugate(&self, rho: &DenseOperator) -> DenseOperator {
        match self {
            RecoveryOperator::Isometry {
                codewords,
                syndromes,
            } => {
                let mut out = DenseOperator::zeros(rho.n());
                for j in 0..2 {
                    let col = rho.apply(&syndromes[j]);
                    for i in 0..2 {
                        let c = syndromes[i].inner(&col);
                        out.add_outer(c, &codewords[i], &codewords[j]);
                    }
                }
                out
            }
            RecoveryOperator::Complement(p) => p.matmul(rho).matmul(&p.adjoint()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySet {
    n: usize,
    ops: Vec<RecoveryOperator>,
    correctable: Vec<u32>,
    includes_orthogonal_projector: bool,
    complement_basis: Vec<StateVector>,
}

impl RecoverySet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[RecoveryOperator] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Flip patterns the recovery was built from, in label order.
    pub fn correctable_patterns(&self) -> &[u32] {
        &self.correctable
    }

    pub fn includes_orthogonal_projector(&self) -> bool {
        self.includes_orthogonal_projector
    }

    /// Orthonormal basis `{|r_s⟩}` of the complement, empty when the syndrome
    /// subspaces fill the register.
    pub fn complement_basis(&self) -> &[StateVector] {
        &self.complement_basis
    }

    /// `Σ_l R_l† R_l`
    pub fn completeness(&self) -> DenseOperator {
        let mut acc = DenseOperator::zeros(self.n);
        for op in &self.ops {
            op.accumulate_gram(&mut acc);
        }
        acc
    }

    /// `max |(Σ_l R_l† R_l − I)_{ij}|`
    pub fn completeness_residual(&self) -> f64 {
        self.completeness()
            .max_abs_diff(&DenseOperator::identity(self.n))
    }

    /// `Σ_l R_l ρ R_l†`
    pub fn apply(&self, rho: &DenseOperator) -> DenseOperator {
        let mut out = DenseOperator::zeros(self.n);
        for op in &self.ops {
            out.add_assign(&op.conjugate(rho));
        }
        out
    }
}

/// Orthonormal basis of the complement of `spanned`, by Gram–Schmidt over the
/// computational basis.
fn complement_basis(n: usize, spanned: &[&StateVector]) -> Vec<StateVector> {
    let target = (1usize << n) - spanned.len();
    let mut found: Vec<StateVector> = Vec::with_capacity(target);
    for j in 0..1usize << n {
        if found.len() == target {
            break;
        }
        let mut v = StateVector::basis(n, j);
        // two passes keep the basis orthogonal to working precision
        for _ in 0..2 {
            for u in spanned.iter().copied().chain(found.iter()) {
                let c = u.inner(&v);
                if c.norm() > 0.0 {
                    v.sub_scaled(c, u);
                }
            }
        }
        if v.norm_sqr() > 1e-12 {
            found.push(v.normalized().expect("norm checked above"));
        }
    }
    found
}

/// Assembles `{R_l}` (and `R_⊥` when needed) from the syndrome pairs.
pub fn build_recovery(subspaces: &SyndromeSubspaces, code: &Code) -> RecoverySet {
    let n = code.n();
    let mut ops: Vec<RecoveryOperator> = subspaces
        .pairs
        .iter()
        .map(|pair| RecoveryOperator::Isometry {
            codewords: [code.zero().clone(), code.one().clone()],
            syndromes: pair.vectors.clone(),
        })
        .collect();
    let mut basis = Vec::new();
    let includes_orthogonal_projector = !subspaces.fills_register();
    if includes_orthogonal_projector {
        let spanned: Vec<&StateVector> = subspaces
            .pairs
            .iter()
            .flat_map(|p| p.vectors.iter())
            .collect();
        basis = complement_basis(n, &spanned);
        let mut proj = DenseOperator::zeros(n);
        for r in &basis {
            proj.add_outer(Complex64::new(1.0, 0.0), r, r);
        }
        ops.push(RecoveryOperator::Complement(proj));
    }
    let correctable = subspaces
        .pairs
        .iter()
        .flat_map(|p| p.patterns.iter().copied())
        .collect::<Vec<_>>();
    let mut ordered = correctable.clone();
    let order = label_order(n);
    ordered.sort_by_key(|m| order.iter().position(|x| x == m));
    RecoverySet {
        n,
        ops,
        correctable: ordered,
        includes_orthogonal_projector,
        complement_basis: basis,
    }
}

/// Correctable set, syndrome subspaces and recovery for a channel/code pair.
pub fn recovery_for(channel: &MarkovChannel, code: &Code) -> Result<RecoverySet> {
    let correctable = correctable_set(channel, code)?;
    let subspaces = syndrome_subspaces(&correctable, code)?;
    Ok(build_recovery(&subspaces, code))
}

/// One composed Kraus operator `R_l A'_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComposedTerm {
    pub recovery: usize,
    pub pattern: u32,
}

/// `R ∘ Λ` as the list of operators `R_l A'_k`, `l` major and `k` minor.
#[derive(Debug, Clone)]
pub struct ComposedChannel<'a> {
    channel: &'a MarkovChannel,
    recovery: &'a RecoverySet,
    terms: Vec<ComposedTerm>,
}

pub fn composed_channel<'a>(
    channel: &'a MarkovChannel,
    recovery: &'a RecoverySet,
) -> Result<ComposedChannel<'a>> {
    if channel.n() != recovery.n() {
        return Err(Error::DimensionMismatch {
            expected: recovery.n(),
            found: channel.n(),
        });
    }
    let terms = (0..recovery.len())
        .flat_map(|l| {
            channel.terms().iter().map(move |t| ComposedTerm {
                recovery: l,
                pattern: t.pattern,
            })
        })
        .collect();
    Ok(ComposedChannel {
        channel,
        recovery,
        terms,
    })
}

impl ComposedChannel<'_> {
    pub fn terms(&self) -> &[ComposedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Restricted matrix of `R_l A'_k` with the weight taken at `(mu, p)`.
    pub fn restricted(&self, term: ComposedTerm, code: &Code, mu: f64, p: f64) -> Logical2 {
        let kraus = self.channel.term(term.pattern);
        let op = &self.recovery.ops()[term.recovery];
        let images = [
            op.apply(&kraus.pauli.apply(code.zero())),
            op.apply(&kraus.pauli.apply(code.one())),
        ];
        let amp = Complex64::new(kraus.probability_at(mu, p).sqrt(), 0.0);
        restrict_images(code, &images).scaled(amp)
    }

    /// Dense `R_l A'_k` at `(mu, p)`.
    pub fn operator(&self, term: ComposedTerm, mu: f64, p: f64) -> DenseOperator {
        let r = self.recovery.ops()[term.recovery].to_dense();
        r.matmul(&self.channel.term(term.pattern).operator_at(mu, p))
    }

    /// `(R ∘ Λ)(ρ)`; the channel must be numeric.
    pub fn apply(&self, rho: &DenseOperator) -> Result<DenseOperator> {
        Ok(self.recovery.apply(&self.channel.apply(rho)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{label_pattern, pattern_label};
    use crate::codes::{dfs_code, repetition_code};
    use crate::pauli::FlipBasis;

    fn labels(n: usize, terms: &[&KrausTerm]) -> Vec<usize> {
        terms.iter().map(|t| pattern_label(n, t.pattern)).collect()
    }

    #[test]
    fn detectable_sets() {
        let ch3 = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let rc3 = repetition_code(3, FlipBasis::Bit).unwrap();
        assert_eq!(
            labels(3, &detectable_set(&ch3, &rc3)),
            vec![0, 1, 2, 3, 4, 5, 6]
        );
        let dfs3 = dfs_code(3).unwrap();
        assert_eq!(labels(3, &detectable_set(&ch3, &dfs3)), vec![0, 4, 5, 6]);
        let ch4 = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
        let dfs4 = dfs_code(4).unwrap();
        assert_eq!(
            labels(4, &detectable_set(&ch4, &dfs4)),
            vec![0, 5, 6, 7, 8, 9, 10, 15]
        );
    }

    #[test]
    fn numeric_detectability_matches_structure() {
        for n in 2..=6 {
            let ch = MarkovChannel::symbolic(n, FlipBasis::Bit).unwrap();
            for family in [CodeFamily::Rc, CodeFamily::Dfs] {
                let code = Code::new(family, n, FlipBasis::Bit).unwrap();
                for t in ch.terms() {
                    assert_eq!(
                        is_detectable(t, &code).is_some(),
                        structurally_detectable(family, n, t.pattern),
                        "{family} n={n} pattern {:#b}",
                        t.pattern
                    );
                }
            }
        }
    }

    #[test]
    fn identity_is_detected_with_its_amplitude() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        let lambda = is_detectable(ch.term(0), &code).unwrap();
        let (mu, p) = PROBE_POINT;
        assert!((lambda.re - ch.term(0).poly.eval(mu, p).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn correctable_sets() {
        let ch3 = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let rc3 = repetition_code(3, FlipBasis::Bit).unwrap();
        assert_eq!(
            labels(3, &correctable_set(&ch3, &rc3).unwrap()),
            vec![0, 1, 2, 3]
        );
        let ch4 = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
        let rc4 = repetition_code(4, FlipBasis::Bit).unwrap();
        assert_eq!(
            labels(4, &correctable_set(&ch4, &rc4).unwrap()),
            (0..8).collect::<Vec<_>>()
        );
        let dfs4 = dfs_code(4).unwrap();
        assert_eq!(
            labels(4, &correctable_set(&ch4, &dfs4).unwrap()),
            vec![0, 5, 6, 7, 8, 9, 10, 15]
        );
    }

    #[test]
    fn mismatched_channel_and_code() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Phase).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        assert!(correctable_set(&ch, &code).is_err());
        let ch = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
        assert!(matches!(
            correctable_set(&ch, &code),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn syndrome_subspaces_rc() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        let s = syndrome_subspaces(&correctable_set(&ch, &code).unwrap(), &code).unwrap();
        let expected0 = [0b000, 0b001, 0b010, 0b100];
        for (v, &idx) in s.basis(0).iter().zip(&expected0) {
            assert!(v.max_abs_diff(&StateVector::basis(3, idx)) < 1e-15);
        }
        assert!(s.fills_register());

        let ch = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
        let code = repetition_code(4, FlipBasis::Bit).unwrap();
        let s = syndrome_subspaces(&correctable_set(&ch, &code).unwrap(), &code).unwrap();
        // |1111⟩, |0111⟩, |1011⟩, |1101⟩, |1110⟩, |0011⟩, |0101⟩, |0110⟩ (qubit 1 leftmost)
        let labels1 = [
            "1111", "0111", "1011", "1101", "1110", "0011", "0101", "0110",
        ];
        for (v, label) in s.basis(1).iter().zip(labels1) {
            let idx = label
                .chars()
                .enumerate()
                .filter(|(_, c)| *c == '1')
                .map(|(k, _)| 1usize << k)
                .sum();
            assert!(
                v.max_abs_diff(&StateVector::basis(4, idx)) < 1e-15,
                "{label}"
            );
        }
        assert!(s.fills_register());
    }

    #[test]
    fn syndrome_subspaces_dfs_are_one_dimensional() {
        for n in [3, 4] {
            let ch = MarkovChannel::symbolic(n, FlipBasis::Bit).unwrap();
            let code = dfs_code(n).unwrap();
            let s = syndrome_subspaces(&correctable_set(&ch, &code).unwrap(), &code).unwrap();
            assert_eq!(s.dim(), 1);
            assert!(s.basis(0)[0].max_abs_diff(code.zero()) < 1e-15);
            assert!(s.basis(1)[0].max_abs_diff(code.one()) < 1e-15);
        }
    }

    #[test]
    fn wrong_correctable_set_is_rejected() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        // X1 and X2 X3 send |0_L⟩ and |1_L⟩ onto the same states
        let bad = [ch.term(0b001), ch.term(0b110)];
        assert!(syndrome_subspaces(&bad, &code).is_err());
        let dfs = dfs_code(3).unwrap();
        let bad = [ch.term(0b000), ch.term(0b001)];
        assert!(syndrome_subspaces(&bad, &dfs).is_err());
    }

    #[test]
    fn rc3_recovery_operators() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        let rec = recovery_for(&ch, &code).unwrap();
        assert_eq!(rec.len(), 4);
        assert!(!rec.includes_orthogonal_projector());
        // R_2 = |0_L⟩⟨100| + |1_L⟩⟨011|
        let mut r2 = StateVector::basis(3, 0).outer(&StateVector::basis(3, 0b001));
        r2.add_assign(&StateVector::basis(3, 0b111).outer(&StateVector::basis(3, 0b110)));
        assert!(rec.ops()[1].to_dense().max_abs_diff(&r2) < 1e-15);
        assert!(rec.completeness_residual() < 1e-12);
    }

    #[test]
    fn dfs3_recovery_has_rank_six_complement() {
        let ch = MarkovChannel::symbolic(3, FlipBasis::Bit).unwrap();
        let code = dfs_code(3).unwrap();
        let rec = recovery_for(&ch, &code).unwrap();
        assert_eq!(rec.len(), 2);
        assert!(rec.includes_orthogonal_projector());
        assert_eq!(rec.complement_basis().len(), 6);
        assert!(rec.ops()[0].to_dense().max_abs_diff(code.projector()) < 1e-12);
        // any orthonormal complement basis gives I - P_C
        let expected = DenseOperator::identity(3).sub(code.projector());
        assert!(rec.ops()[1].to_dense().max_abs_diff(&expected) < 1e-12);
        assert!(rec.completeness_residual() < 1e-12);
        assert_eq!(rec.correctable_patterns(), &[0, 0b011, 0b101, 0b110]);
    }

    #[test]
    fn rc4_completeness() {
        let ch = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
        let code = repetition_code(4, FlipBasis::Bit).unwrap();
        let rec = recovery_for(&ch, &code).unwrap();
        assert_eq!(rec.len(), 8);
        assert!(rec.completeness_residual() < 1e-12);
        assert_eq!(rec.complement_basis().len(), 0);
        let dfs = dfs_code(4).unwrap();
        let rec = recovery_for(&ch, &dfs).unwrap();
        assert_eq!(rec.complement_basis().len(), 14);
    }

    #[test]
    fn composed_operator_counts() {
        let ch = MarkovChannel::numeric(3, FlipBasis::Bit, 0.3, 0.2).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        let rec = recovery_for(&ch, &code).unwrap();
        let comp = composed_channel(&ch, &rec).unwrap();
        assert_eq!(comp.len(), 32);
        assert_eq!(
            comp.terms()[1],
            ComposedTerm {
                recovery: 0,
                pattern: 1
            }
        );

        let ch4 = MarkovChannel::numeric(4, FlipBasis::Bit, 0.3, 0.2).unwrap();
        let dfs = dfs_code(4).unwrap();
        let rec = recovery_for(&ch4, &dfs).unwrap();
        assert_eq!(composed_channel(&ch4, &rec).unwrap().len(), 32);
    }

    #[test]
    fn noiseless_channel_recovers_codespace() {
        let ch = MarkovChannel::numeric(3, FlipBasis::Bit, 0.5, 0.0).unwrap();
        for code in [
            repetition_code(3, FlipBasis::Bit).unwrap(),
            dfs_code(3).unwrap(),
        ] {
            let rec = recovery_for(&ch, &code).unwrap();
            let comp = composed_channel(&ch, &rec).unwrap();
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut psi = code.zero().clone();
            psi.scale(Complex64::new(s, 0.0));
            psi.sub_scaled(Complex64::new(0.0, -s), code.one());
            let rho = psi.outer(&psi);
            assert!(comp.apply(&rho).unwrap().max_abs_diff(&rho) < 1e-12);
        }
    }

    #[test]
    fn composed_restricted_matches_dense_product() {
        let (mu, p) = (0.3, 0.2);
        let ch = MarkovChannel::numeric(3, FlipBasis::Bit, mu, p).unwrap();
        for code in [
            repetition_code(3, FlipBasis::Bit).unwrap(),
            dfs_code(3).unwrap(),
        ] {
            let rec = recovery_for(&ch, &code).unwrap();
            let comp = composed_channel(&ch, &rec).unwrap();
            for &t in comp.terms() {
                let dense =
                    crate::pauli::restricted_matrix(&comp.operator(t, mu, p), &code).unwrap();
                assert!(comp.restricted(t, &code, mu, p).max_abs_diff(&dense) < 1e-14);
            }
        }
    }

    #[test]
    fn rc3_restricted_examples() {
        let (mu, p) = (0.3, 0.2);
        let ch = MarkovChannel::numeric(3, FlipBasis::Bit, mu, p).unwrap();
        let code = repetition_code(3, FlipBasis::Bit).unwrap();
        let rec = recovery_for(&ch, &code).unwrap();
        let comp = composed_channel(&ch, &rec).unwrap();
        let w0 = ch.term(0).probability_at(mu, p).sqrt();
        let r1a0 = comp.restricted(
            ComposedTerm {
                recovery: 0,
                pattern: 0,
            },
            &code,
            mu,
            p,
        );
        assert!(r1a0.max_abs_diff(&Logical2::identity().scaled(Complex64::new(w0, 0.0))) < 1e-15);
        let a5 = label_pattern(3, 5);
        let r2a5 = comp.restricted(
            ComposedTerm {
                recovery: 1,
                pattern: a5,
            },
            &code,
            mu,
            p,
        );
        assert!(r2a5.trace().norm() < 1e-15);
    }
}
