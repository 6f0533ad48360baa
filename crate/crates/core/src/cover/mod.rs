//! Branched G-covers of a closed surface given by monodromy data.
//!
//! A datum `(g0; a_1, b_1, .., a_g0, b_g0; x_1, .., x_n)` describes an
//! epimorphism from the fundamental group of the quotient surface minus `n`
//! points onto `G`. Monodromy acts on the right: the lift of a loop `w`
//! starting on sheet `h` ends on sheet `h * p(w)`.

mod sample;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

pub use sample::sample_datum;

/// A validated covering datum.
#[derive(Clone, Debug)]
pub struct CoverDatum {
    group: Arc<FiniteGroup>,
    handles: Vec<(usize, usize)>,
    branch: Vec<usize>,
}

/// Genus and moduli counts of a cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub group_order: usize,
    pub total_genus: usize,
    pub quotient_genus: usize,
    pub branch_points: usize,
    pub branch_orders: Vec<usize>,
    /// `3 g0 - 3 + n`.
    pub moduli_dimension: i64,
    /// `2 - 2 g0 - n`, the Euler characteristic of the punctured quotient.
    pub euler_characteristic: i64,
    pub moduli_positive: bool,
}

impl CoverDatum {
    pub fn new(group: Arc<FiniteGroup>, handles: Vec<(usize, usize)>, branch: Vec<usize>) -> Result<Self> {
        let d = CoverDatum { group, handles, branch };
        d.validate()?;
        Ok(d)
    }

    /// Nontrivial branch monodromy, the surface relation, generation.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let all = self.handles.iter().flat_map(|&(a, b)| [a, b]).chain(self.branch.iter().copied());
        if let Some(bad) = all.clone().find(|&x| x >= n) {
            return Err(Error::invalid(format!("element id {} outside a group of order {}", bad, n)));
        }
        if let Some(i) = self.branch.iter().position(|&x| x == 0) {
            return Err(Error::TrivialBranchMonodromy { index: i + 1 });
        }
        if self.relation_product() != 0 {
            return Err(Error::RelationViolated);
        }
        let span = g.closure(&all.collect::<Vec<_>>());
        if span.len() != n {
            return Err(Error::NotGenerating { generated: span.len(), order: n });
        }
        Ok(())
    }

    /// `prod [a_j, b_j] * prod x_i` with `[a, b] = a b a^-1 b^-1`.
    pub fn relation_product(&self) -> usize {
        let g = &self.group;
        let mut acc = 0;
        for &(a, b) in &self.handles {
            acc = g.mul(acc, g.commutator(a, b));
        }
        for &x in &self.branch {
            acc = g.mul(acc, x);
        }
        acc
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Genus of the quotient surface.
    pub fn base_genus(&self) -> usize {
        self.handles.len()
    }

    pub fn handles(&self) -> &[(usize, usize)] {
        &self.handles
    }

    pub fn branch(&self) -> &[usize] {
        &self.branch
    }

    pub fn branch_orders(&self) -> Vec<usize> {
        self.branch.iter().map(|&x| self.group.element_order(x)).collect()
    }

    /// Images of the free generators `a_1, b_1, .., a_g0, b_g0, t_1, .., t_n`
    /// of the punctured quotient's fundamental group.
    pub fn generator_images(&self) -> Vec<usize> {
        self.handles.iter().flat_map(|&(a, b)| [a, b]).chain(self.branch.iter().copied()).collect()
    }

    /// Riemann–Hurwitz: `2 - 2g = |G|(2 - 2 g0) - sum_Q (|G|/d_Q)(d_Q - 1)`.
    pub fn total_genus(&self) -> usize {
        let n = self.group.order() as i64;
        let mut chi = n * (2 - 2 * self.base_genus() as i64);
        for d in self.branch_orders() {
            chi -= n / d as i64 * (d as i64 - 1);
        }
        debug_assert!(chi % 2 == 0 && chi <= 2);
        ((2 - chi) / 2) as usize
    }

    /// Genus of `S/N`, counting orbits of each `<x_Q>` on the right cosets `N\G`.
    pub fn quotient_genus(&self, sub: &Subgroup) -> Result<usize> {
        let g = &self.group;
        let cosets = sub.right_cosets(g);
        let mut coset_of = vec![0usize; g.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let index = cosets.len() as i64;
        let mut chi = index * (2 - 2 * self.base_genus() as i64 - self.branch.len() as i64);
        for &x in &self.branch {
            let mut seen = vec![false; cosets.len()];
            for start in 0..cosets.len() {
                if seen[start] {
                    continue;
                }
                chi += 1;
                let mut c = start;
                while !seen[c] {
                    seen[c] = true;
                    c = coset_of[g.mul(cosets[c][0], x)];
                }
            }
        }
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::invariant(format!("quotient Euler characteristic {} is not that of a closed surface", chi)));
        }
        Ok(((2 - chi) / 2) as usize)
    }

    /// Number of points of the cover fixed by `h != 1`.
    pub fn fixed_point_count(&self, h: usize) -> Result<usize> {
        let g = &self.group;
        if h == 0 || h >= g.order() {
            return Err(Error::invalid("fixed points are counted for non-identity elements only"));
        }
        let mut total = 0;
        for &x in &self.branch {
            let cyc = g.subgroup(&[x]);
            // c<x> with c^-1 h c in <x>; each coset counted |<x>| times
            let hits = (0..g.order()).filter(|&c| cyc.contains(g.conjugate(h, c))).count();
            total += hits / cyc.order();
        }
        Ok(total)
    }

    /// Whether the involution `z` has quotient of genus 0.
    pub fn is_hyperelliptic_involution(&self, z: usize) -> Result<bool> {
        if z >= self.group.order() || self.group.element_order(z) != 2 {
            return Err(Error::invalid("hyperelliptic test needs an element of order 2"));
        }
        Ok(self.quotient_genus(&self.group.subgroup(&[z]))? == 0)
    }

    pub fn geometry(&self) -> GeometryReport {
        let g0 = self.base_genus() as i64;
        let n = self.branch.len() as i64;
        let euler = 2 - 2 * g0 - n;
        GeometryReport {
            group_order: self.group.order(),
            total_genus: self.total_genus(),
            quotient_genus: self.base_genus(),
            branch_points: self.branch.len(),
            branch_orders: self.branch_orders(),
            moduli_dimension: 3 * g0 - 3 + n,
            euler_characteristic: euler,
            moduli_positive: euler < 0 && (g0, n) != (0, 3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn validation() {
        let triv = Arc::new(FiniteGroup::from_generators(&[], 1).unwrap());
        assert!(CoverDatum::new(triv, vec![(0, 0)], vec![]).is_ok());
        assert!(CoverDatum::new(c2(), vec![], vec![1; 6]).is_ok());
        assert_eq!(CoverDatum::new(c2(), vec![], vec![1; 5]).unwrap_err(), Error::RelationViolated);
        assert_eq!(CoverDatum::new(c2(), vec![], vec![1, 0, 1]).unwrap_err(), Error::TrivialBranchMonodromy { index: 2 });
        assert_eq!(
            CoverDatum::new(c2(), vec![(0, 0)], vec![]).unwrap_err(),
            Error::NotGenerating { generated: 1, order: 2 }
        );
    }

    #[test]
    fn genera() {
        let triv = Arc::new(FiniteGroup::from_generators(&[], 1).unwrap());
        assert_eq!(CoverDatum::new(triv, vec![(0, 0); 2], vec![]).unwrap().total_genus(), 2);
        let hyp = CoverDatum::new(c2(), vec![], vec![1; 6]).unwrap();
        assert_eq!(hyp.total_genus(), 2);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let free = CoverDatum::new(c3.clone(), vec![(1, 0), (0, 0)], vec![]).unwrap();
        assert_eq!(free.total_genus(), 4);
        assert_eq!(free.quotient_genus(&c3.whole()).unwrap(), 2);
        assert_eq!(free.quotient_genus(&c3.trivial_subgroup()).unwrap(), 4);
    }

    #[test]
    fn fixed_points_and_hyperellipticity() {
        let hyp = CoverDatum::new(c2(), vec![], vec![1; 6]).unwrap();
        assert_eq!(hyp.fixed_point_count(1).unwrap(), 6);
        assert!(hyp.fixed_point_count(0).is_err());
        assert!(hyp.is_hyperelliptic_involution(1).unwrap());
        let free = CoverDatum::new(c2(), vec![(1, 0), (0, 0)], vec![]).unwrap();
        assert_eq!(free.total_genus(), 3);
        assert_eq!(free.fixed_point_count(1).unwrap(), 0);
        assert!(!free.is_hyperelliptic_involution(1).unwrap());
        let elliptic = CoverDatum::new(c2(), vec![(0, 0)], vec![1, 1]).unwrap();
        assert!(!elliptic.is_hyperelliptic_involution(1).unwrap());
        let c4 = Arc::new(FiniteGroup::from_cycle_strings(&["(1 2 3 4)"], DEFAULT_GROUP_CAP).unwrap());
        let d = CoverDatum::new(c4, vec![], vec![1, 1, 1, 1]).unwrap();
        assert!(d.is_hyperelliptic_involution(1).is_err());
    }

    #[test]
    fn moduli_dimension() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let tri = CoverDatum::new(c3.clone(), vec![], vec![1, 1, 1]).unwrap().geometry();
        assert_eq!((tri.moduli_dimension, tri.moduli_positive), (0, false));
        let free = CoverDatum::new(c3, vec![(1, 0), (0, 0)], vec![]).unwrap().geometry();
        assert_eq!((free.moduli_dimension, free.moduli_positive), (3, true));
        let four = CoverDatum::new(c2(), vec![], vec![1; 4]).unwrap().geometry();
        assert_eq!((four.moduli_dimension, four.moduli_positive), (1, true));
    }
}
