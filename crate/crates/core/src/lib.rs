//! Four-qubit hyperdeterminant toolkit.
//!
//! The degree-24 hyperdeterminant Det of a 2×2×2×2 tensor is the natural
//! generalization of the matrix determinant to four qubits, and |Det| is a
//! measure of genuine four-partite entanglement. This crate provides:
//!
//! - state representation and the distinguished 4-dimensional subspace A
//!   spanned by u₀..u₃, on which Det restricts to the closed product formula
//!   Det(z) = ∏_{j<k} (z_j² − z_k²)²  ([`qstate`], [`hyperdet`]);
//! - evaluation of Det on arbitrary states through the Schläfli pencil
//!   construction, calibrated against the restriction to A ([`hyperdet`]);
//! - first-order criticality certificates for |f|² on the simplex
//!   Σ|z_j| = 1, where f is the Vandermonde product ([`critpoint`]);
//! - multistart maximization of |V_n| under the L1-radius constraint for
//!   general n, and of |Det| on the unit sphere of A ([`vmax`]);
//! - the SL(2,ℂ)^⊗4 orbit machinery: tangent spaces, the generic-set test,
//!   and Kempf-Ness orthogonality / norm-minimality probes ([`orbit`]);
//! - local-unitary equivalence tools: the permutation unitaries on the
//!   u-basis, canonicalization of maximizers, and a fidelity search over
//!   SU(2)^⊗4 ([`luequiv`]);
//! - an exact-arithmetic replay of the resultant case analysis behind the
//!   maximality proof ([`casework`]);
//! - a one-shot verification suite tying all of the above together
//!   ([`verify`]).

pub mod casework;
pub mod critpoint;
pub mod hyperdet;
pub mod luequiv;
pub mod opt;
pub mod orbit;
pub mod qstate;
pub mod verify;
pub mod vmax;

pub use num_complex::Complex64;
