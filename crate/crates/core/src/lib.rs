//! Core machinery for anagram-free strings and anagram-free colourings of
//! 2xn grid graphs: histograms and the imbalance measure tau, anagramish
//! detection, block-structured grid colourings, simple-path enumeration,
//! the explicit anagramish-path construction, and the weighted-tree decay
//! verifier.
//!
//! Everything in this crate is pure and allocation-only (`no_std` + `alloc`);
//! IO, file formats, and the CLI live in the companion `anagram-forge` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod anaconstruct;
pub mod gridmodel;
pub mod pathcheck;
pub mod treebound;
pub mod words;

pub use num_rational::Ratio;

/// Exact rational used for all epsilon thresholds. No floating point is used
/// anywhere in classification or inequality checking.
pub type Rational = Ratio<i64>;
