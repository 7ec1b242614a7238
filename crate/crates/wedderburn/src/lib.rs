//! Primitive central idempotents and Wedderburn decomposition of semisimple
//! finite group algebras `F_q G`.
//!
//! Given a finite group `G` and a prime power `q` coprime to `|G|`, the
//! [`decomposer`] module computes the complete set of primitive central
//! idempotents of `F_q G` together with the simple components
//! `M_n(F_{q^l})`, working from generalized strong Shoda pairs and their
//! strong inductive chains ([`shoda`]).  The [`oracle`] module recovers the
//! same data independently by splitting the center of `F_q G` along class
//! sums, which gives an algorithm-independent cross-check.

pub mod algebra;
pub mod arith;
pub mod corpus;
pub mod cyclotomic;
pub mod decomposer;
pub mod gf;
pub mod group;
pub mod io;
pub mod oracle;
pub mod shoda;

pub use gf::{FiniteField, FqElem};
