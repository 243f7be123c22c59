//! Airy functions, Airy zeros, the phase function `L` and the Airy–Poisson pairing.

pub mod airy;
pub mod phase;
pub mod poisson;
pub mod zeros;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_real, airy_pair, airy_pair_real, MAX_ABS_ARGUMENT};
pub use phase::{a_minus, a_plus, phase_l, phase_l_prime, phase_l_prime_centered, PHASE_RANGE};
pub use poisson::{airy_poisson_pair, fejer_weight, PoissonPair, TestFunction};
pub use zeros::{airy_zero, airy_zero_with_error, AiryZeroTable, MAX_ZERO_INDEX};
