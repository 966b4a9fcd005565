//! Multi-tape finite automata over n-tuples of words.
//!
//! Machines are two-way and nondeterministic by default. The crate covers
//! simulation, convolution, the algebra of synchronous relations, conversion
//! of bounded-delay machines to synchronous form, one-way rational closures,
//! and a bounded intersection for asynchronous one-way machines.

pub mod asyncalg;
pub mod automaton;
pub mod cli;
pub mod error;
pub mod format;
pub mod intersect;
pub mod lanes;
pub mod nfa;
pub mod simulate;
pub mod symbol;
pub mod sync;
pub mod synctransform;
pub mod taped;
pub mod words;
pub mod zoo;

pub use automaton::{Diagnostic, MultiTapeAutomaton, StateId};
pub use error::{Error, Result};
pub use symbol::{Alphabet, NWord, Sym};
