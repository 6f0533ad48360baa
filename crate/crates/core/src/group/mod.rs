//! Finite permutation groups, conjugacy classes and exact character tables.

mod catalog;
mod characters;
mod chartable;
mod finite;
mod perm;

pub use catalog::{named_group, CATALOG};
pub use characters::{degree_of, induce, inner_product_on, restrict, transport, trivial_on};
pub use chartable::{Character, CharacterTable, RationalCharacterClass};
pub use finite::{ConjugacyData, FiniteGroup, Subgroup, DEFAULT_GROUP_CAP};
pub use perm::Permutation;
