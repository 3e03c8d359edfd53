//! Finite loop theory on Cayley tables.
//!
//! A [`LoopTable`] is an order-`n` Latin square with a two-sided identity
//! normalized to element `0`. On top of it this crate provides:
//!
//! - [`term`]: a small term language over `*`, `\`, `/`, `^rho`, `^lambda`
//!   and `1`, with a parser, renderer and brute-force identity checker,
//! - [`catalog`]: named identities (Cheban, Moufang, extra, LCC, ...),
//! - [`structure`]: nuclei, commutant, center, central series, normality,
//!   quotients, canonical forms and isotopisms,
//! - [`search`]: a Latin-square model finder with incremental identity
//!   checking and isomorph rejection,
//! - [`models`]: fixed tables (the order-8 left Cheban example, the
//!   Heisenberg group of order 27, small groups),
//! - [`claims`]: finite-model checks of the structural theorems about
//!   Cheban loops.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod catalog;
pub mod claims;
pub mod models;
pub mod perm;
pub mod search;
pub mod structure;
pub mod table;
pub mod term;

pub use perm::Permutation;
pub use structure::{ElementSet, StructureReport};
pub use table::{Element, LoopTable, TableError, MAX_ORDER};
pub use term::{Identity, Term};
