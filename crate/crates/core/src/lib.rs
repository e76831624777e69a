//! Sidon sets in finite abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] holds finite fields, finite abelian groups and Smith normal form.
//! * [`sidon`] verifies Sidon sets and computes difference spectra.
//! * [`incidence`] builds developments and checks incidence axioms.
//! * [`planes3`] models the desarguesian plane over a finite field and the
//!   maximal abelian subgroups of its projective linear group.
//! * [`dense`] and [`sparse`] hold direct constructions.
//! * [`search`] runs exhaustive searches and conjecture testers.
//! * [`cli`] is the command-line front end used by the `sidon` binary.

pub mod algebra;
pub mod cli;
pub mod dense;
pub mod error;
pub mod incidence;
pub mod planes3;
pub mod search;
pub mod sidon;
pub mod sparse;

pub use error::{Error, Result};
