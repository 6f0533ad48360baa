//! Chevalley–Weil decomposition of holomorphic differentials, the G-module
//! structure of first (co)homology, and checkers for the endomorphism
//! theorems built on them.

mod chevalley_weil;
mod oracle;
mod sym2;
mod theorems;

use serde::{Deserialize, Serialize};

use crate::group::CharacterTable;

pub use chevalley_weil::{eigenvalue_multiplicity, fixed_dimension, h0_character, h0_multiplicity, h1_character, h1_multiplicity};
pub use oracle::{h1_chain_complex_oracle, Chain, CoverHomology, Letter, DEFAULT_ORACLE_CAP};
pub use sym2::{sym2_report, Sym2Report};
pub use theorems::{check_theorem_endo, check_theorem_gn, EndoReport, GnConstituent, GnReport, Witness};

/// Multiplicity of every irreducible character, indexed by table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicalVector {
    pub multiplicities: Vec<u64>,
}

impl IsotypicalVector {
    pub fn new(multiplicities: Vec<u64>) -> Self {
        IsotypicalVector { multiplicities }
    }

    pub fn zero(rows: usize) -> Self {
        IsotypicalVector { multiplicities: vec![0; rows] }
    }

    pub fn get(&self, row: usize) -> u64 {
        self.multiplicities[row]
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// Rows with positive multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&r| self.multiplicities[r] > 0).collect()
    }

    /// `sum_chi chi(1) * mult(chi)`, the dimension of the module.
    pub fn dimension(&self, table: &CharacterTable) -> u64 {
        self.multiplicities.iter().enumerate().map(|(r, &m)| m * table.degree(r)).sum()
    }

    /// The vector with `chi` and `chi*` swapped.
    pub fn dual(&self, table: &CharacterTable) -> Self {
        IsotypicalVector { multiplicities: (0..self.len()).map(|r| self.multiplicities[table.dual(r)]).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        IsotypicalVector { multiplicities: self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect() }
    }
}
