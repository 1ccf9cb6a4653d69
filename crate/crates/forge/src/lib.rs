//! Std companion to `anagram-core`: file formats, fixture generation,
//! resumable caches, and deterministic parallel drivers for the CLI.

pub mod cache;
pub mod dto;
pub mod eps;
pub mod plant;
pub mod search;
pub mod wordio;

pub use anagram_core as core;
