//! Keyboard languages.
//!
//! A keyboard is a pair `(T, F)` of finite sets of keys, each key a sequence
//! of atomic operations: writing a letter, backspace `←`, left arrow `◄` and
//! right arrow `►`. A word is recognised when some execution `T*F` from the
//! empty configuration `⟨ε|ε⟩` produces it.
//!
//! The crate simulates keyboards, enumerates their languages by brute force,
//! compiles arrow-free keyboards to finite automata and `►`-free keyboards to
//! pushdown automata, decides membership and universality where a procedure
//! exists, and implements the mirror and morphism constructions together with
//! the reduction from Post's correspondence problem.

pub mod bk;
pub mod blek;
pub mod class;
pub mod corpus;
pub mod decide;
pub mod dsl;
pub mod eak;
mod error;
pub mod model;
pub mod normalform;
pub mod oracle;
pub mod props;
pub mod semantics;
pub mod tracking;
pub mod transforms;

pub use class::{classify, ClassLabel, ClassName};
pub use error::Error;
pub use model::{AtomicOp, Config, Configuration, Key, Keyboard, Letter, Op};
