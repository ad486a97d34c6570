//! Exact compositional semantics and canonicalization for signal-flow
//! diagrams.
//!
//! Diagram terms built from adders, constants, duplications, deletions,
//! scalar gains, cups, caps and braids are evaluated — exactly — into
//! linear relations over `Q`, `GF(p)` or the rational-function field
//! `Q(s)` (where `s` plays differentiation and `1/s` integration).
//! Semantic equality is decidable, every relation re-emits a canonical
//! diagram (standard form for maps, prestandard form for relations), and
//! the full equational theory of the generators ships as an executable
//! law catalog.

pub mod axioms;
pub mod cli;
pub mod diagram;
pub mod dsl;
pub mod exactfield;
pub mod linrel;
pub mod normalize;
pub mod semantics;
