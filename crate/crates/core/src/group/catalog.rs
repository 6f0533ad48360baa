//! Small permutation groups by name.

use super::finite::{FiniteGroup, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};

/// `(name, order, generators in cycle notation)`.
pub const CATALOG: &[(&str, usize, &[&str])] = &[
    ("C1", 1, &[]),
    ("C2", 2, &["(1 2)"]),
    ("C3", 3, &["(1 2 3)"]),
    ("C4", 4, &["(1 2 3 4)"]),
    ("C2xC2", 4, &["(1 2)", "(3 4)"]),
    ("C5", 5, &["(1 2 3 4 5)"]),
    ("C6", 6, &["(1 2 3 4 5 6)"]),
    ("S3", 6, &["(1 2 3)", "(1 2)"]),
    ("C7", 7, &["(1 2 3 4 5 6 7)"]),
    ("C8", 8, &["(1 2 3 4 5 6 7 8)"]),
    ("C2xC4", 8, &["(1 2)", "(3 4 5 6)"]),
    ("C2xC2xC2", 8, &["(1 2)", "(3 4)", "(5 6)"]),
    ("D4", 8, &["(1 2 3 4)", "(1 3)"]),
    ("Q8", 8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
    ("C9", 9, &["(1 2 3 4 5 6 7 8 9)"]),
    ("C3xC3", 9, &["(1 2 3)", "(4 5 6)"]),
    ("C10", 10, &["(1 2 3 4 5 6 7 8 9 10)"]),
    ("D5", 10, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
    ("C12", 12, &["(1 2 3 4)", "(5 6 7)"]),
    ("C2xC6", 12, &["(1 2)", "(3 4 5 6 7 8)"]),
    ("A4", 12, &["(1 2 3)", "(1 2)(3 4)"]),
    ("D6", 12, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
    ("Dic3", 12, &["(1 2 3)", "(2 3)(4 5 6 7)"]),
    ("D7", 14, &["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"]),
    ("C15", 15, &["(1 2 3)", "(4 5 6 7 8)"]),
    ("C16", 16, &["(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)"]),
    ("C4xC4", 16, &["(1 2 3 4)", "(5 6 7 8)"]),
    ("C2xC2xC2xC2", 16, &["(1 2)", "(3 4)", "(5 6)", "(7 8)"]),
    ("D8", 16, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"]),
    ("C2xD4", 16, &["(1 2 3 4)", "(1 3)", "(5 6)"]),
    ("C2xQ8", 16, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)", "(9 10)"]),
    ("S4", 24, &["(1 2 3 4)", "(1 2)"]),
    ("A5", 60, &["(1 2 3 4 5)", "(1 2 3)"]),
];

pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let (_, _, gens) = CATALOG
        .iter()
        .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::invalid(format!("unknown group name {:?}", name)))?;
    FiniteGroup::from_cycle_strings(gens, DEFAULT_GROUP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match() {
        for (name, order, _) in CATALOG {
            assert_eq!(named_group(name).unwrap().order(), *order, "{}", name);
        }
        assert!(named_group("Q8").unwrap().central_involutions().len() == 1);
        assert!(!named_group("Dic3").unwrap().is_abelian());
    }
}
