use num_traits::{Signed, ToPrimitive};

use super::IsotypicalVector;
use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::group::{CharacterTable, FiniteGroup};
use crate::linalg::{int, rat, Cyclotomic, Rational};

fn as_count(v: &Cyclotomic, what: &str) -> Result<u64> {
    v.to_rational()
        .filter(|q| q.is_integer() && !q.is_negative())
        .and_then(|q| q.to_integer().to_u64())
        .ok_or_else(|| Error::invariant(format!("{} = {} is not a non-negative integer", what, v)))
}

/// Multiplicity of `exp(2 pi i j/d)` as an eigenvalue of `g` on `V_chi`,
/// where `d` is the order of `g`:
/// `N = (1/d) sum_{k<d} chi(g^k) z_d^{-jk}`.
pub fn eigenvalue_multiplicity(g: &FiniteGroup, table: &CharacterTable, chi: usize, elem: usize, j: usize) -> Result<u64> {
    let d = g.element_order(elem);
    if j >= d {
        return Err(Error::invalid(format!("eigenvalue index {} out of range for an element of order {}", j, d)));
    }
    let field = table.field();
    let step = (table.exponent() / d) as i64;
    let values = &table.row(chi).values;
    let mut acc = Cyclotomic::zero(field);
    for k in 0..d {
        let v = &values[g.class_of(g.pow(elem, k as i64))];
        let z = Cyclotomic::zeta_power(field, -(step * (j * k) as i64));
        acc = acc + v * &z;
    }
    as_count(&acc.scale(&rat(1, d as i64)), "eigenvalue multiplicity")
}

/// `dim V_chi^<g> = (1/d) sum_{k<d} chi(g^k)`.
pub fn fixed_dimension(g: &FiniteGroup, table: &CharacterTable, chi: usize, elem: usize) -> Result<u64> {
    eigenvalue_multiplicity(g, table, chi, elem, 0)
}

/// Chevalley–Weil multiplicity of `chi` in the holomorphic differentials.
///
/// Trivial `chi`: `g0`. Otherwise
/// `(g0 - 1) chi(1) + sum_Q sum_{j=1..d_Q} N_{chi,Q}(j/d_Q) (1 - j/d_Q)`.
pub fn h0_multiplicity(datum: &CoverDatum, table: &CharacterTable, chi: usize) -> Result<u64> {
    let g0 = datum.base_genus() as i64;
    if table.is_trivial(chi) {
        return Ok(g0 as u64);
    }
    let g = datum.group();
    let mut total: Rational = int((g0 - 1) * table.degree(chi) as i64);
    for &x in datum.branch() {
        let d = g.element_order(x);
        // j = d is the eigenvalue 1, weighted by 1 - a = 0
        for j in 1..d {
            let n = eigenvalue_multiplicity(g, table, chi, x, j)?;
            if n > 0 {
                total += rat((n * (d - j) as u64) as i64, d as i64);
            }
        }
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::invariant(format!("Chevalley-Weil multiplicity {} of row {} is not a non-negative integer", total, chi)));
    }
    Ok(total.to_integer().to_u64().unwrap_or(0))
}

pub fn h0_character(datum: &CoverDatum, table: &CharacterTable) -> Result<IsotypicalVector> {
    let mult = (0..table.len()).map(|r| h0_multiplicity(datum, table, r)).collect::<Result<Vec<_>>>()?;
    let v = IsotypicalVector::new(mult);
    if v.dimension(table) != datum.total_genus() as u64 {
        return Err(Error::invariant("Chevalley-Weil dimensions do not add up to the genus"));
    }
    Ok(v)
}

/// Multiplicity of `chi` in `H^1(S; C)`.
///
/// Trivial `chi`: `2 g0`. Otherwise
/// `2 (g0 - 1) chi(1) + sum_Q (chi(1) - dim V_chi^<x_Q>)`.
pub fn h1_multiplicity(datum: &CoverDatum, table: &CharacterTable, chi: usize) -> Result<u64> {
    let g0 = datum.base_genus() as i64;
    if table.is_trivial(chi) {
        return Ok(2 * g0 as u64);
    }
    let deg = table.degree(chi) as i64;
    let mut total = 2 * (g0 - 1) * deg;
    for &x in datum.branch() {
        total += deg - fixed_dimension(datum.group(), table, chi, x)? as i64;
    }
    if total < 0 {
        return Err(Error::invariant(format!("negative first cohomology multiplicity for row {}", chi)));
    }
    Ok(total as u64)
}

pub fn h1_character(datum: &CoverDatum, table: &CharacterTable) -> Result<IsotypicalVector> {
    let mult = (0..table.len()).map(|r| h1_multiplicity(datum, table, r)).collect::<Result<Vec<_>>>()?;
    let v = IsotypicalVector::new(mult);
    if v.dimension(table) != 2 * datum.total_genus() as u64 {
        return Err(Error::invariant("first cohomology dimensions do not add up to twice the genus"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn hyperelliptic() -> (CoverDatum, CharacterTable) {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let t = CharacterTable::new(&g).unwrap();
        (CoverDatum::new(g, vec![], vec![1; 6]).unwrap(), t)
    }

    #[test]
    fn eigenvalues_of_the_sign_character() {
        let (d, t) = hyperelliptic();
        assert_eq!(eigenvalue_multiplicity(d.group(), &t, 0, 1, 0).unwrap(), 1);
        assert_eq!(eigenvalue_multiplicity(d.group(), &t, 1, 1, 1).unwrap(), 1);
        assert_eq!(eigenvalue_multiplicity(d.group(), &t, 1, 1, 0).unwrap(), 0);
    }

    #[test]
    fn hyperelliptic_decomposition() {
        let (d, t) = hyperelliptic();
        assert_eq!(h0_character(&d, &t).unwrap().multiplicities, vec![0, 2]);
        assert_eq!(h1_character(&d, &t).unwrap().multiplicities, vec![0, 4]);
    }

    #[test]
    fn free_cyclic_three() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let t = CharacterTable::new(&g).unwrap();
        let d = CoverDatum::new(g, vec![(1, 0), (0, 0)], vec![]).unwrap();
        assert_eq!(h0_character(&d, &t).unwrap().multiplicities, vec![2, 1, 1]);
        assert_eq!(h1_character(&d, &t).unwrap().multiplicities, vec![4, 2, 2]);
    }

    #[test]
    fn rigid_triangle_datum() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let t = CharacterTable::new(&g).unwrap();
        let d = CoverDatum::new(g.clone(), vec![], vec![1, 1, 1]).unwrap();
        let h0 = h0_character(&d, &t).unwrap();
        let z = (1..3).find(|&r| t.row(r).values[g.class_of(1)] == Cyclotomic::zeta_power(t.field(), 1)).unwrap();
        assert_eq!(h0.get(z), 1);
        assert_eq!(h0.get(t.dual(z)), 0);
    }
}
