//! Net occurrences and net frequency of repeated substrings in binary texts,
//! together with occurrence-set recurrences and factorizations for Fibonacci
//! and Thue-Morse words, and checkers that compare every closed-form result
//! against brute-force enumeration.

pub mod cli;
pub mod error;
pub mod fibonacci;
pub mod index;
pub mod net_frequency;
pub mod occurrence;
pub mod onoc;
pub mod report;
pub mod thue_morse;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
