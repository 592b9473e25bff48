//! Random lexicon fixtures and slow reference implementations, for tests.

pub mod fixture;
pub mod reference;

pub use fixture::{fixture, samples, Fixture, POOL};
