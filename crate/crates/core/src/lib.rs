//! Qudit entanglement swapping.
//!
//! Dense pure states over `d`-level registers, generalized Bell measurements, a closed-form
//! predictor for swapping one particle of an `n`-qudit state with a two-qudit partner, a
//! brute-force oracle that checks every prediction against a full simulation, and end-to-end
//! simulations of multi-party summation and secret sharing built on top of swapping.
//!
//! Every state family used here has the form `Σ_j c_j |j⊕s_1, …, j⊕s_n⟩`
//! ([`QuditStateFamily`]). Swapping keeps that form, which is what makes the closed forms in
//! [`swap`] possible.
//!
//! The crate is `no_std` and only needs `alloc`. IO, timing, and parallel sweeps live in the
//! `qswap` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bell;
pub mod error;
pub mod families;
pub mod modular;
pub mod protocols;
pub mod rng;
pub mod state;
pub mod swap;
pub mod verify;

pub use bell::{bell_measure, bell_outcome_distribution, bell_project, bell_state, BellOutcome};
pub use error::{Error, Result};
pub use families::{FamilySpec, QuditStateFamily};
pub use modular::{root_of_unity, Dimension, ModInt};
pub use num_complex::Complex64 as Amplitude;
pub use rng::RandomSeed;
pub use state::{Label, PureState};
pub use swap::{predict_chain, predict_multi_swap, predict_swap, SwapStep};
