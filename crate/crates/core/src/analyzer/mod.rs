//! α- and β-sequences of symbolic powers, Waldschmidt intervals and
//! classification of low Waldschmidt constants.

mod bounds;
mod classify;
mod sequence;
mod waldschmidt;

pub use bounds::{chudnovsky_bound, ev_check, ev_gap_bound, sequence_violation, SequenceViolation};
pub use classify::{classify, Analysis, ClassTag, Classification};
pub use sequence::{alpha, alpha_sequence, beta_sequence, AlphaSequence, AlphaValue, BetaSequence};
pub use waldschmidt::{waldschmidt_interval, Period, WaldschmidtInterval};
