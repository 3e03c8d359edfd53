//! Std companion to `loopkit-core`: table files, JSON reports,
//! multi-threaded enumeration and the claim-suite report used by the
//! `loopkit` binary.

pub mod format;
pub mod run;
pub mod verify;

pub use loopkit_core as core;
