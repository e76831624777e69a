//! Exact arithmetic: prime fields and their extensions, finite abelian
//! groups in invariant-factor form, and Smith normal form over the integers.

pub mod arith;
pub mod ext;
pub mod field;
pub mod group;
pub mod poly;
pub mod snf;

pub use field::{FieldElement, FiniteField, DEFAULT_FIELD_CAP};
pub use group::{AbelianGroup, GroupElement, IsoNote, Presentation};
