//! Exact representation theory for finite group actions on closed oriented surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: arbitrary-precision rationals, cyclotomic numbers and exact
//!   linear algebra over the rationals.
//! * [`group`]: finite groups from permutations, conjugacy classes and exact
//!   complex character tables.
//! * [`cover`]: the branched-cover datum of a G-surface and its Riemann–Hurwitz
//!   geometry.
//! * [`hodge`]: the Chevalley–Weil decomposition of holomorphic differentials,
//!   the G-module structure of first cohomology and the checkers built on them.
//! * [`unitary`]: orthogonal/symplectic/complex classification of isotypical
//!   pieces and the division algebras attached to them.
//! * [`topology`]: an explicit ribbon-graph model of the cover with intersection
//!   form, lifted curves and multi-twist transvections.

pub mod cover;
pub mod error;
pub mod group;
pub mod hodge;
pub mod linalg;
pub mod topology;
pub mod unitary;

pub use error::{Error, Result};
