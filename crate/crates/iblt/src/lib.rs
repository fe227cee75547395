//! Invertible Bloom Lookup Tables with worst-case listing guarantees.
//!
//! A classic IBLT lists its contents with high probability; this crate
//! implements table layouts and listing algorithms whose success is
//! guaranteed for every stored set of up to `d` elements, trading listing
//! time for smaller tables. Three families are provided:
//!
//! * **standard** — counter + xorSum cells with pure-cell peeling;
//! * **standard-indel** — the same insert/delete operations but narrower
//!   counters and smarter listing (extended peeling, one-bit-counter case
//!   analysis);
//! * **general** — cells are GF(2^r) elements, insert/delete add a column
//!   of a matrix over the field, and listing decodes syndromes.
//!
//! The [`verify`] module certifies the guarantees exhaustively at small
//! scale: state uniqueness, listing success over every subset up to the
//! decodability target, B_h-sequence checks, and minimum-distance
//! computations, alongside the memory lower bounds each construction is
//! measured against.

pub mod config;
pub mod error;
pub mod field;
pub mod listing;
pub mod matrices;
pub mod schemes;
pub mod verify;

pub use error::Error;
pub use field::{Field, FieldElement, FieldSpec};
pub use listing::{ListingOracle, ListingOutcome};
pub use matrices::{Construction, Mapping};
pub use schemes::{Family, Scheme, Table};
