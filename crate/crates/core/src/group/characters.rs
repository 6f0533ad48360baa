use std::sync::Arc;

use num_traits::ToPrimitive;

use super::finite::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{rat, CycloField, Cyclotomic};

/// Values of a class function of `G` on the elements of `H`, listed in the
/// order of `H.elements()`.
pub fn restrict(g: &FiniteGroup, h: &Subgroup, chi: &[Cyclotomic]) -> Vec<Cyclotomic> {
    h.elements().iter().map(|&x| chi[g.class_of(x)].clone()).collect()
}

/// Induce a class function of `H` (given on `H.elements()`) to a class
/// function of `G`, returned on the conjugacy classes of `G`.
pub fn induce(g: &FiniteGroup, h: &Subgroup, psi: &[Cyclotomic], field: &Arc<CycloField>) -> Result<Vec<Cyclotomic>> {
    if psi.len() != h.order() {
        return Err(Error::invalid(format!("class function has {} values, subgroup has {} elements", psi.len(), h.order())));
    }
    let pos = |x: usize| h.elements().binary_search(&x).expect("element of the subgroup");
    for &s in &h.generators(g) {
        for (i, &x) in h.elements().iter().enumerate() {
            if psi[pos(g.conjugate(x, s))] != psi[i] {
                return Err(Error::invalid("function on the subgroup is not a class function"));
            }
        }
    }
    let classes = g.classes();
    let mut out = vec![Cyclotomic::zero(field); classes.len()];
    for (i, &x) in h.elements().iter().enumerate() {
        let c = classes.class_of[x];
        out[c] = &out[c] + &psi[i];
    }
    // Ind psi(g_c) = |G| / (|H| h_c) * sum over H meeting the class of g_c
    for (c, v) in out.iter_mut().enumerate() {
        let f = rat(g.order() as i64, (h.order() * classes.sizes[c]) as i64);
        *v = v.scale(&f);
    }
    Ok(out)
}

/// The trivial character of `H` on its elements.
pub fn trivial_on(h: &Subgroup, field: &Arc<CycloField>) -> Vec<Cyclotomic> {
    vec![Cyclotomic::one(field); h.order()]
}

/// `(1/|H|) sum_{x in H} a(x) conj(b(x))` for functions on the elements of `H`.
pub fn inner_product_on(h: &Subgroup, a: &[Cyclotomic], b: &[Cyclotomic], field: &Arc<CycloField>) -> Cyclotomic {
    let s = a.iter().zip(b).fold(Cyclotomic::zero(field), |acc, (x, y)| acc + x * &y.conj());
    s.scale(&rat(1, h.order() as i64))
}

/// The class function of a character of a standalone group, pulled back
/// along an embedding to values on the ambient subgroup's elements.
pub fn transport(sub: &FiniteGroup, embedding: &[usize], h: &Subgroup, values_by_class: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut out = vec![values_by_class[0].clone(); h.order()];
    for i in 0..sub.order() {
        let at = h.elements().binary_search(&embedding[i]).expect("embedded element lies in the subgroup");
        out[at] = values_by_class[sub.class_of(i)].clone();
    }
    out
}

/// Value at the identity as an integer, when it is one.
pub fn degree_of(values: &[Cyclotomic]) -> Option<i64> {
    values.first()?.to_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CharacterTable, Permutation, DEFAULT_GROUP_CAP};

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = FiniteGroup::from_cycle_strings(&["(1 2 3)", "(1 2)"], DEFAULT_GROUP_CAP).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        let h = g.trivial_subgroup();
        let ind = induce(&g, &h, &trivial_on(&h, t.field()), t.field()).unwrap();
        assert_eq!(ind, t.regular_character());
    }

    #[test]
    fn induced_sign_of_transposition() {
        let g = FiniteGroup::from_cycle_strings(&["(1 2 3)", "(1 2)"], DEFAULT_GROUP_CAP).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        let s = g.element_of(&Permutation::parse_cycles("(1 2)").unwrap()).unwrap();
        let h = g.subgroup(&[s]);
        let sign: Vec<Cyclotomic> =
            h.elements().iter().map(|&x| Cyclotomic::from_int(t.field(), if x == 0 { 1 } else { -1 })).collect();
        let ind = induce(&g, &h, &sign, t.field()).unwrap();
        assert_eq!(degree_of(&ind), Some(3));
        // sign + the degree-2 character
        assert_eq!(t.decompose(&ind).unwrap(), vec![0, 1, 1]);
        // Frobenius reciprocity against every irreducible
        for r in t.rows() {
            let lhs = t.inner_product(&ind, &r.values);
            let rhs = inner_product_on(&h, &sign, &restrict(&g, &h, &r.values), t.field());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn non_class_function_rejected() {
        let g = FiniteGroup::from_cycle_strings(&["(1 2 3)", "(1 2)"], DEFAULT_GROUP_CAP).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        let whole = g.whole();
        let f: Vec<Cyclotomic> = (0..6).map(|x| Cyclotomic::from_int(t.field(), x as i64)).collect();
        assert!(induce(&g, &whole, &f, t.field()).is_err());
    }
}
