//! Finite frame analysis for vector-valued signals.
//!
//! The crate provides the operator calculus of finite frames (analysis,
//! synthesis, frame operator, Gramian, canonical duals), DFT and harmonic
//! frames over finite Abelian groups, the vector-valued discrete Fourier
//! transform with its convolution algebra and Gelfand spectrum, frame
//! multiplication detection and classification, discrete periodic ambiguity
//! surfaces, and finite-dimensional uncertainty principle checks.
//!
//! All arithmetic is dense complex `f64`; decisions (tight / Parseval /
//! accepted / holds) are made against a configurable [`Tol`] tolerance
//! policy.

pub mod ambiguity;
pub mod error;
pub mod frame;
pub mod matrix;
pub mod mult;
pub mod rng;
pub mod tol;
pub mod uncertainty;
pub mod vvdft;

pub use error::Error;
pub use frame::{EquivalenceCertificate, Frame, FrameClass, NaimarkReport};
pub use matrix::ComplexMatrix;
pub use mult::{FiniteAbelianGroup, GMatrixWitness, HarmonicCertificate, MultCheck, OpTable};
pub use tol::Tol;
pub use vvdft::{GelfandFunctional, SelectionMap, VVSignal};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
