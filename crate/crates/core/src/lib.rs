//! Finite automata algebra for suffix-convex regular languages.
//!
//! The crate covers four layers:
//!
//! * [`transform`]: transformations of `Q_n = {0, .., n-1}` and their textual notation,
//!   e.g. `(1,2,3)`, `({0,1}->3)`, `(Q->1)`.
//! * [`automata`]: complete DFAs, ε-NFAs, subset construction, minimization,
//!   equivalence and quotient complexity.
//! * [`ops`] and [`measures`]: the measured operations (boolean operations in
//!   restricted and unrestricted mode, product, star, reversal, dialects) and the
//!   measures (transition semigroups, quotients, atoms).
//! * [`witnesses`] and [`classify`]: the witness DFA streams for left ideals,
//!   suffix-closed and suffix-free languages, their closed-form complexities, and
//!   decision procedures for the language classes.
//!
//! ```
//! use suffix_convex::{witnesses::{make_witness, Family}, measures::transition_semigroup};
//!
//! let d = make_witness(Family::LeftIdeal, 4).unwrap();
//! assert_eq!(transition_semigroup(&d, 1_000_000).size, 67);
//! ```

pub mod automata;
pub mod classify;
mod error;
pub mod measures;
pub mod ops;
pub mod transform;
pub mod witnesses;

pub use automata::{Dfa, Letter, Nfa, StateId};
pub use error::{Error, Result};
pub use transform::Transformation;
