//! Correlated bit-flip and phase-flip memory channels, repetition and
//! decoherence-free-subspace codes, and their entanglement fidelity as exact
//! polynomials in the correlation strength `mu` and flip probability `p`.

pub mod bipoly;
pub mod channel;
pub mod codes;
pub mod error;
pub mod fidelity;
pub mod fixtures;
pub mod pauli;
pub mod recovery;
pub mod threshold;

pub use bipoly::BiPoly;
pub use channel::{ChannelMode, KrausTerm, MarkovChannel};
pub use codes::{Code, CodeFamily};
pub use error::{Error, Result};
pub use fidelity::{fidelity_polynomial, FidelityOracle, FidelityResult};
pub use pauli::{DenseOperator, FlipBasis, PauliString, StateVector};
pub use recovery::RecoverySet;

pub mod cli;
pub mod figures;
pub mod verify;
