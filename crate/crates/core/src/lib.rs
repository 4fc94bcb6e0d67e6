//! Hiding a numeric code in the null space of an oversampled DFT frame.
//!
//! A real cover signal of `N` samples is zero-padded to `M > N` samples and
//! transformed with a unitary DFT. The resulting `M` coefficients are one of
//! infinitely many coefficient vectors that synthesize the same signal: any
//! vector from the null space of the frame's Gram matrix can be added without
//! changing the synthesized samples. [`codec`] uses that freedom to carry a
//! short real-valued code, scrambled by a seeded orthogonal mixer.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and the
//! simulation harness live in the `nullframe` crate.

#![cfg_attr(not(test), no_std)]

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channel;
pub mod chirp;
pub mod codec;
mod dft;
mod error;
pub mod frame;
pub mod gram;
pub mod linalg;
pub mod mixer;
pub mod null_space;
pub mod rng;

pub use num_complex::Complex64;

pub use channel::{AccuracyReport, ChannelSpec, RatioReading};
pub use chirp::ChirpSpec;
pub use codec::{Decoded, DecodeDiagnostics, HiddenCode, SecretParameters, StegoCodec};
pub use error::{Error, Result};
pub use frame::{BasisMode, CoefficientVector, Frame, FrameConfig, Synthesis, TimeSignal};
pub use gram::{GramKind, GramMatrix};
pub use mixer::Mixer;
pub use null_space::{BasisProvenance, NullBasis};
