//! Synchronizing automata through row monomial matrices of words.
//!
//! The crate computes exact shortest reset words, represents the state maps
//! of words as row monomial matrices, does exact rational linear algebra on
//! the spaces they span, solves `M_u L = M_s` for sink matrices, and runs a
//! cell-allocation probe that measures each step of a length argument for
//! reset words on concrete automata.
//!
//! State `0` is the distinguished target state unless a caller says
//! otherwise.

pub mod automaton;
pub mod batch;
pub mod equation;
pub mod error;
pub mod exactlin;
pub mod matching;
pub mod probe;
pub mod rowmon;
pub mod suites;

pub use automaton::{Dfa, StateSet, Word};
pub use error::{Error, Result};
pub use exactlin::{RationalBasis, RationalCoefficients};
pub use probe::{ProbeReport, PrefixTrace};
pub use rowmon::RowMonomialMatrix;
