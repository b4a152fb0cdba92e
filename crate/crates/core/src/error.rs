use thiserror::Error;

use crate::class::ClassName;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("character {0:?} cannot be used as a letter")]
    ReservedLetter(char),

    #[error("letter {letter:?} of key {key} is not in the alphabet")]
    LetterNotInAlphabet { letter: char, key: String },

    #[error("key {0} is not a key of the keyboard")]
    KeyNotInKeyboard(String),

    #[error("an execution needs at least one key")]
    EmptyExecution,

    #[error("key {0} contains an arrow")]
    ArrowInKey(String),

    #[error("symbol {position} of key {key} is not a letter")]
    NotALetter { key: String, position: usize },

    #[error("{operation} is not available for class {found}")]
    UnsupportedClass { operation: &'static str, found: ClassName },

    #[error("morphism is not defined on letter {0:?}")]
    PartialMorphism(char),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}
