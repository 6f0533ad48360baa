use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use super::perm::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 2000;

/// Conjugacy classes and power maps.
///
/// Classes are ordered: identity class first, then by size, then by smallest
/// element id. The representative of a class is its smallest element id.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// `power_maps[k][c]` is the class of `g^k` for `g` in class `c`, `0 <= k <= exponent`.
    pub power_maps: Vec<Vec<usize>>,
    /// Class of `g^-1` for `g` in class `c`.
    pub inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Class of `g^k` for any integer `k`, given the class of `g`.
    pub fn power_class(&self, class: usize, k: i64) -> usize {
        let e = (self.power_maps.len() - 1) as i64;
        self.power_maps[k.rem_euclid(e) as usize][class]
    }
}

/// A finite permutation group with full multiplication table.
///
/// Element 0 is the identity; ids follow breadth-first order from the
/// identity under right multiplication by the generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    degree: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<usize>,
    exponent: usize,
    generators: Vec<usize>,
    perms: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    classes: ConjugacyData,
}

impl FiniteGroup {
    /// Close the generators under multiplication. An empty list gives the
    /// trivial group.
    pub fn from_generators(gens: &[Permutation], cap: usize) -> Result<Self> {
        let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(0);
        let gens: Vec<Permutation> = gens.iter().map(|g| g.padded(degree)).collect();
        let mut perms = vec![Permutation::identity(degree)];
        let mut lookup = HashMap::new();
        lookup.insert(perms[0].clone(), 0usize);
        // right[h * ngens + s] = id of h * gen_s
        let mut right: Vec<u32> = Vec::new();
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let p = perms[h].then(g);
                let id = match lookup.get(&p) {
                    Some(&id) => id,
                    None => {
                        let id = perms.len();
                        if id + 1 > cap {
                            return Err(Error::CapExceeded { what: "group order", size: id + 1, cap });
                        }
                        lookup.insert(p.clone(), id);
                        perms.push(p);
                        parent.push((h, s));
                        queue.push_back(id);
                        id
                    }
                };
                right.push(id as u32);
            }
        }
        let n = perms.len();
        let ng = gens.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                let ab_prev = table[a * n + pb] as usize;
                table[a * n + b] = right[ab_prev * ng + s];
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let generators = gens.iter().map(|g| lookup[g]).collect();
        let mut group = FiniteGroup {
            order: n,
            degree,
            table,
            inverse,
            orders: Vec::new(),
            exponent: 1,
            generators,
            perms,
            lookup,
            classes: ConjugacyData {
                class_of: Vec::new(),
                representatives: Vec::new(),
                sizes: Vec::new(),
                members: Vec::new(),
                power_maps: Vec::new(),
                inverse_class: Vec::new(),
            },
        };
        group.orders = (0..n).map(|g| group.compute_order(g)).collect();
        group.exponent = group.orders.iter().fold(1, |acc, &o| acc.lcm(&o));
        group.classes = group.compute_classes();
        Ok(group)
    }

    pub fn from_cycle_strings(gens: &[&str], cap: usize) -> Result<Self> {
        let perms = gens.iter().map(|s| Permutation::parse_cycles(s)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(&perms, cap)
    }

    pub fn cyclic(n: usize) -> Self {
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let gens = if n > 1 { vec![Permutation::from_images(images).unwrap()] } else { vec![] };
        Self::from_generators(&gens, n.max(1)).expect("cyclic group within its own cap")
    }

    fn compute_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn compute_classes(&self) -> ConjugacyData {
        let n = self.order;
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![usize::MAX; n];
        for g in 0..n {
            if assigned[g] != usize::MAX {
                continue;
            }
            let idx = raw.len();
            let mut members = vec![g];
            assigned[g] = idx;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &self.generators {
                    let y = self.conjugate(x, s);
                    if assigned[y] == usize::MAX {
                        assigned[y] = idx;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        // identity first, then size, then smallest id
        raw.sort_by_key(|m| (m[0] != 0, m.len(), m[0]));
        let mut class_of = vec![0usize; n];
        for (c, m) in raw.iter().enumerate() {
            for &x in m {
                class_of[x] = c;
            }
        }
        let representatives: Vec<usize> = raw.iter().map(|m| m[0]).collect();
        let sizes = raw.iter().map(|m| m.len()).collect();
        let power_maps = (0..=self.exponent)
            .map(|k| representatives.iter().map(|&r| class_of[self.pow(r, k as i64)]).collect())
            .collect();
        let inverse_class = representatives.iter().map(|&r| class_of[self.inv(r)]).collect();
        ConjugacyData { class_of, representatives, sizes, members: raw, power_maps, inverse_class }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `h^-1 x h`.
    pub fn conjugate(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), x), h)
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn perm(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    pub fn element_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() > self.degree {
            if (self.degree..p.degree()).any(|i| p.apply(i) != i) {
                return None;
            }
            let q = Permutation::from_images(p.images()[..self.degree].to_vec()).ok()?;
            return self.lookup.get(&q).copied();
        }
        self.lookup.get(&p.padded(self.degree)).copied()
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes.class_of[g]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup { elements: self.closure(gens) }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).filter(|&g| self.classes.sizes[self.class_of(g)] == 1).collect() }
    }

    pub fn central_involutions(&self) -> Vec<usize> {
        self.center().elements.into_iter().filter(|&g| self.orders[g] == 2).collect()
    }

    /// Check closure, identity, inverse and associativity on the stored tables.
    pub fn verify_tables(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a || self.mul(a, self.inv(a)) != 0 {
                return Err(Error::invariant(format!("identity or inverse law fails at element {}", a)));
            }
            let mut row = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                if self.perms[self.mul(a, b)] != self.perms[a].then(&self.perms[b]) {
                    return Err(Error::invariant("multiplication table disagrees with permutations"));
                }
            }
            if row.iter().any(|&x| !x) {
                return Err(Error::invariant("multiplication table row is not a permutation"));
            }
        }
        Ok(())
    }
}

/// A subgroup as a sorted list of element ids of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Accepts any list containing a subgroup's elements; sorts and dedups.
    pub fn from_elements(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if g.closure(&elements) != elements {
            return Err(Error::invalid("element list is not closed under multiplication"));
        }
        Ok(Subgroup { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn index(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.generators().iter().all(|&s| self.elements.iter().all(|&x| self.contains(g.conjugate(x, s))))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &self.elements {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = g.closure(&gens);
            }
        }
        gens
    }

    /// Right cosets `H g`, each sorted, listed by smallest element.
    pub fn right_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        self.cosets(g, |h, x| g.mul(h, x))
    }

    /// Left cosets `g H`, each sorted, listed by smallest element.
    pub fn left_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        self.cosets(g, |h, x| g.mul(x, h))
    }

    fn cosets(&self, g: &FiniteGroup, act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = self.elements.iter().map(|&h| act(h, x)).collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out
    }

    /// The subgroup as a standalone group, with `embedding[i]` the ambient id
    /// of its element `i`.
    pub fn to_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let gens: Vec<Permutation> = self.generators(g).iter().map(|&x| g.perm(x).clone()).collect();
        let h = FiniteGroup::from_generators(&gens, self.order()).expect("subgroup closure within its own order");
        let embedding = (0..h.order()).map(|i| g.element_of(h.perm(i)).expect("subgroup element in ambient group")).collect();
        (h, embedding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_cycle_strings(&["(1 2 3)", "(1 2)"], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(FiniteGroup::from_cycle_strings(&["(1 2)"], 10).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
        let t = FiniteGroup::from_generators(&[], 10).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.num_classes(), 1);
        let err = FiniteGroup::from_cycle_strings(&["(1 2 3 4 5)", "(1 2)"], 100).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn tables_and_classes() {
        let g = s3();
        g.verify_tables().unwrap();
        let c = g.classes();
        assert_eq!(c.sizes, vec![1, 2, 3]);
        assert_eq!(c.sizes.iter().sum::<usize>(), 6);
        assert_eq!(g.exponent(), 6);
        // squaring sends transpositions to the identity and 3-cycles to 3-cycles
        assert_eq!(c.power_maps[2], vec![0, 1, 0]);
        assert!(g.center().order() == 1 && g.central_involutions().is_empty());
        let c4 = FiniteGroup::cyclic(4);
        assert!(c4.is_abelian());
        assert_eq!(c4.center().order(), 4);
    }

    #[test]
    fn subgroups_and_cosets() {
        let g = s3();
        let t = g.element_of(&Permutation::parse_cycles("(1 2)").unwrap()).unwrap();
        let h = g.subgroup(&[t]);
        assert_eq!(h.order(), 2);
        assert!(!h.is_normal(&g));
        assert_eq!(h.right_cosets(&g).len(), 3);
        let a3 = g.subgroup(&[g.element_of(&Permutation::parse_cycles("(1 2 3)").unwrap()).unwrap()]);
        assert!(a3.is_normal(&g));
        let (sub, emb) = a3.to_group(&g);
        assert_eq!(sub.order(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(emb[sub.mul(i, j)], g.mul(emb[i], emb[j]));
            }
        }
    }
}
