use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::IsotypicalVector;
use crate::error::{Error, Result};
use crate::group::CharacterTable;
use crate::linalg::{int, rat, Cyclotomic};

/// Dimension of `(Sym^2 F)^G` split by the type of the constituents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sym2Report {
    /// `sum over real-type chi of C(m + 1, 2)`.
    pub real_part: u64,
    /// `sum over quaternionic-type chi of C(m, 2)`.
    pub quaternionic_part: u64,
    /// `sum over pairs {chi, chi*} of complex type of m(chi) m(chi*)`.
    pub complex_part: u64,
    pub total: u64,
    /// `(1/2|G|) sum_g (chi_F(g)^2 + chi_F(g^2))`.
    pub character_formula: u64,
    /// `dim (Lambda^2 F)^G` from the same character data.
    pub alternating: u64,
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn sym2_report(table: &CharacterTable, f: &IsotypicalVector) -> Result<Sym2Report> {
    let mut real_part = 0;
    let mut quaternionic_part = 0;
    let mut complex_part = 0;
    for r in 0..table.len() {
        let m = f.get(r);
        match table.fs_indicator(r) {
            1 => real_part += choose2(m + 1),
            -1 => quaternionic_part += choose2(m),
            _ => {
                if r < table.dual(r) {
                    complex_part += m * f.get(table.dual(r));
                }
            }
        }
    }
    let total = real_part + quaternionic_part + complex_part;

    let chi_f = table.combine(&f.multiplicities);
    let field = table.field();
    let sq = table.power_maps()[2 % table.exponent()].clone();
    let mut sym = Cyclotomic::zero(field);
    let mut alt = Cyclotomic::zero(field);
    for (c, &h) in table.class_sizes().iter().enumerate() {
        let a = &chi_f[c] * &chi_f[c];
        let b = &chi_f[sq[c]];
        sym = sym + (&a + b).scale(&int(h as i64));
        alt = alt + (&a - b).scale(&int(h as i64));
    }
    let norm = rat(1, 2 * table.order() as i64);
    let as_u64 = |v: Cyclotomic, what: &str| {
        v.to_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_u64())
            .ok_or_else(|| Error::invariant(format!("{} invariant dimension {} is not a count", what, v)))
    };
    let character_formula = as_u64(sym.scale(&norm), "symmetric")?;
    let alternating = as_u64(alt.scale(&norm), "alternating")?;
    if character_formula != total {
        return Err(Error::invariant(format!(
            "symmetric square breakdown gives {} but the character formula gives {}",
            total, character_formula
        )));
    }
    Ok(Sym2Report { real_part, quaternionic_part, complex_part, total, character_formula, alternating })
}
