use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::finite::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{int, rat, CycloField, Cyclotomic, Rational};

/// One complex irreducible character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    /// Values on conjugacy classes, in the group's class order.
    pub values: Vec<Cyclotomic>,
    pub degree: u64,
    /// Frobenius–Schur indicator: `1` real, `-1` quaternionic, `0` complex.
    pub fs: i8,
    /// Row index of the complex conjugate character.
    pub dual: usize,
}

/// A Galois orbit of irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCharacterClass {
    pub rows: Vec<usize>,
    /// Sum of the orbit, an integer-valued class function.
    pub orbit_sum: Vec<Rational>,
    /// `[L:Q]` for the character field `L`; equal to the orbit size.
    pub field_degree: usize,
}

/// Complete table of complex irreducible characters with values in `Q(z_e)`,
/// `e` the group exponent.
///
/// Row order: trivial character first, then by degree, then by descending
/// value tuple.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    exponent: usize,
    field: Arc<CycloField>,
    class_sizes: Vec<usize>,
    power_maps: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    rows: Vec<Character>,
    orbits: Vec<RationalCharacterClass>,
    orbit_of: Vec<usize>,
}

impl CharacterTable {
    /// Dixon's method: simultaneous eigenvectors of the class matrices modulo
    /// a prime `p = 1 mod e`, lifted through eigenvalue multiplicities.
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let n = g.order();
        let e = g.exponent();
        let classes = g.classes();
        let k = classes.len();
        let field = CycloField::new(e as u32);
        let p = dixon_prime(e as u64, n as u64);
        let z = powmod(primitive_root(p), (p - 1) / e as u64, p);

        let consts = structure_constants(g, p);
        let omegas = simultaneous_eigenvectors(&consts, k, p)?;

        let mut rows = Vec::with_capacity(k);
        for omega in omegas {
            let h: Vec<u64> = classes.sizes.iter().map(|&s| s as u64 % p).collect();
            let mut s = 0u64;
            for c in 0..k {
                let term = omega[c] * omega[classes.inverse_class[c]] % p * invmod(h[c], p) % p;
                s = (s + term) % p;
            }
            if s == 0 {
                return Err(Error::invariant("degenerate central character modulo the Dixon prime"));
            }
            let d2 = (n as u64 % p) * invmod(s, p) % p;
            let degree = (1..=n as u64)
                .take_while(|d| d * d <= n as u64)
                .find(|d| d * d % p == d2)
                .ok_or_else(|| Error::invariant("no integral character degree"))?;
            let modp: Vec<u64> = (0..k).map(|c| degree % p * omega[c] % p * invmod(h[c], p) % p).collect();
            let inv_e = invmod(e as u64 % p, p);
            let mut values = Vec::with_capacity(k);
            for c in 0..k {
                let mut counts = vec![Rational::zero(); e];
                for (i, slot) in counts.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for l in 0..e {
                        let val = modp[classes.power_class(c, l as i64)];
                        let zpow = powmod(z, ((e - (i * l) % e) % e) as u64, p);
                        acc = (acc + val * zpow) % p;
                    }
                    let m = acc * inv_e % p;
                    if m > degree {
                        return Err(Error::invariant("eigenvalue multiplicity out of range in Dixon lift"));
                    }
                    *slot = int(m as i64);
                }
                values.push(Cyclotomic::from_exponent_counts(&field, &counts));
            }
            rows.push(Character { values, degree, fs: 0, dual: 0 });
        }

        rows.sort_by(row_order);
        let mut table = CharacterTable {
            order: n,
            exponent: e,
            field,
            class_sizes: classes.sizes.clone(),
            power_maps: classes.power_maps.clone(),
            inverse_class: classes.inverse_class.clone(),
            rows,
            orbits: Vec::new(),
            orbit_of: Vec::new(),
        };
        table.fill_structure()?;
        table.verify()?;
        Ok(table)
    }

    fn fill_structure(&mut self) -> Result<()> {
        let k = self.rows.len();
        for r in 0..k {
            let conj: Vec<Cyclotomic> = self.rows[r].values.iter().map(|v| v.conj()).collect();
            self.rows[r].dual = self.find_row(&conj).ok_or_else(|| Error::invariant("dual character missing"))?;
            self.rows[r].fs = self.compute_fs(r)?;
        }
        let e = self.exponent as i64;
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits = Vec::new();
        for r in 0..k {
            if orbit_of[r] != usize::MAX {
                continue;
            }
            let mut members = vec![r];
            for t in 2..e {
                if t.gcd(&e) != 1 {
                    continue;
                }
                let img = self.rows[r].values.iter().map(|v| v.galois(t)).collect::<Result<Vec<_>>>()?;
                let s = self.find_row(&img).ok_or_else(|| Error::invariant("Galois image is not a row"))?;
                if !members.contains(&s) {
                    members.push(s);
                }
            }
            members.sort_unstable();
            let idx = orbits.len();
            for &m in &members {
                if orbit_of[m] != usize::MAX {
                    return Err(Error::invariant("Galois orbits overlap"));
                }
                orbit_of[m] = idx;
            }
            let mut orbit_sum = Vec::with_capacity(self.class_sizes.len());
            for c in 0..self.class_sizes.len() {
                let s = members.iter().fold(Cyclotomic::zero(&self.field), |acc, &m| acc + &self.rows[m].values[c]);
                let q = s.to_rational().filter(|q| q.is_integer());
                orbit_sum.push(q.ok_or_else(|| Error::invariant("orbit sum is not integer valued"))?);
            }
            orbits.push(RationalCharacterClass { field_degree: members.len(), rows: members, orbit_sum });
        }
        self.orbits = orbits;
        self.orbit_of = orbit_of;
        Ok(())
    }

    fn compute_fs(&self, r: usize) -> Result<i8> {
        let mut acc = Cyclotomic::zero(&self.field);
        for (c, &h) in self.class_sizes.iter().enumerate() {
            acc = acc + self.rows[r].values[self.power_maps[2 % self.exponent][c]].scale(&int(h as i64));
        }
        let v = acc.scale(&rat(1, self.order as i64));
        match v.to_rational().and_then(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }) {
            Some(x) if (-1..=1).contains(&x) => Ok(x as i8),
            _ => Err(Error::invariant(format!("Frobenius-Schur indicator {} is not -1, 0 or 1", v))),
        }
    }

    fn find_row(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.rows.iter().position(|r| r.values.as_slice() == values)
    }

    /// Degree sum, row and column orthogonality, exactly.
    pub fn verify(&self) -> Result<()> {
        let k = self.class_sizes.len();
        if self.rows.len() != k {
            return Err(Error::invariant("row count differs from class count"));
        }
        let deg2: u64 = self.rows.iter().map(|r| r.degree * r.degree).sum();
        if deg2 != self.order as u64 {
            return Err(Error::invariant("sum of squared degrees differs from the group order"));
        }
        for a in 0..k {
            for b in a..k {
                let ip = self.inner_product(&self.rows[a].values, &self.rows[b].values);
                let want = if a == b { Cyclotomic::one(&self.field) } else { Cyclotomic::zero(&self.field) };
                if ip != want {
                    return Err(Error::invariant(format!("rows {} and {} are not orthonormal", a, b)));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s = self.rows.iter().fold(Cyclotomic::zero(&self.field), |acc, r| acc + &r.values[c] * &r.values[d].conj());
                let want = if c == d { rat(self.order as i64, self.class_sizes[c] as i64) } else { Rational::zero() };
                if s != Cyclotomic::from_rational(&self.field, want) {
                    return Err(Error::invariant(format!("columns {} and {} fail orthogonality", c, d)));
                }
            }
        }
        for r in &self.rows {
            if r.values[0] != Cyclotomic::from_int(&self.field, r.degree as i64) {
                return Err(Error::invariant("value at the identity differs from the degree"));
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            if self.rows[r.dual].dual != i {
                return Err(Error::invariant("duality is not an involution"));
            }
            let real = r.dual == i;
            if (r.fs == 0) == real {
                return Err(Error::invariant("Frobenius-Schur indicator inconsistent with duality"));
            }
        }
        Ok(())
    }

    /// Check `w_j w_l = sum_k c_jlk w_k` for the central characters
    /// `w_j = h_j chi(g_j) / chi(1)`, exactly.
    pub fn verify_class_algebra(&self, g: &FiniteGroup) -> Result<()> {
        let classes = g.classes();
        let k = classes.len();
        let mut consts = vec![0u64; k * k * k];
        for (kk, &rep) in classes.representatives.iter().enumerate() {
            for x in 0..g.order() {
                let j = classes.class_of[x];
                let l = classes.class_of[g.mul(g.inv(x), rep)];
                consts[(j * k + l) * k + kk] += 1;
            }
        }
        for r in &self.rows {
            let inv_deg = rat(1, r.degree as i64);
            let omega: Vec<Cyclotomic> =
                (0..k).map(|c| r.values[c].scale(&(int(self.class_sizes[c] as i64) * &inv_deg))).collect();
            for j in 0..k {
                for l in 0..k {
                    let lhs = &omega[j] * &omega[l];
                    let mut rhs = Cyclotomic::zero(&self.field);
                    for (kk, w) in omega.iter().enumerate() {
                        let c = consts[(j * k + l) * k + kk];
                        if c != 0 {
                            rhs = rhs + w.scale(&int(c as i64));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::invariant(format!("class algebra identity fails for classes {} and {}", j, l)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Character] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &Character {
        &self.rows[r]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn power_maps(&self) -> &[Vec<usize>] {
        &self.power_maps
    }

    pub fn inverse_class(&self) -> &[usize] {
        &self.inverse_class
    }

    pub fn fs_indicator(&self, r: usize) -> i8 {
        self.rows[r].fs
    }

    pub fn dual(&self, r: usize) -> usize {
        self.rows[r].dual
    }

    pub fn degree(&self, r: usize) -> u64 {
        self.rows[r].degree
    }

    pub fn is_trivial(&self, r: usize) -> bool {
        r == 0
    }

    pub fn galois_orbits(&self) -> &[RationalCharacterClass] {
        &self.orbits
    }

    pub fn orbit_of(&self, r: usize) -> usize {
        self.orbit_of[r]
    }

    /// `<a, b> = (1/|G|) sum_g a(g) conj(b(g))` for class functions.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(&self.field);
        for (c, &h) in self.class_sizes.iter().enumerate() {
            let t = &a[c] * &b[c].conj();
            acc = acc + t.scale(&int(h as i64));
        }
        acc.scale(&rat(1, self.order as i64))
    }

    /// Multiplicities of the irreducibles in a class function; fails unless
    /// they are all non-negative integers.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| {
                let ip = self.inner_product(f, &r.values);
                match ip.to_rational().and_then(|q| if q.is_integer() { q.to_integer().to_u64() } else { None }) {
                    Some(m) => Ok(m),
                    None => Err(Error::invalid(format!("class function is not a character (inner product {})", ip))),
                }
            })
            .collect()
    }

    /// Class function `sum_r mult[r] * chi_r`.
    pub fn combine(&self, mult: &[u64]) -> Vec<Cyclotomic> {
        let k = self.class_sizes.len();
        (0..k)
            .map(|c| {
                mult.iter().zip(&self.rows).fold(Cyclotomic::zero(&self.field), |acc, (&m, r)| {
                    if m == 0 {
                        acc
                    } else {
                        acc + r.values[c].scale(&int(m as i64))
                    }
                })
            })
            .collect()
    }

    pub fn regular_character(&self) -> Vec<Cyclotomic> {
        (0..self.class_sizes.len())
            .map(|c| Cyclotomic::from_int(&self.field, if c == 0 { self.order as i64 } else { 0 }))
            .collect()
    }
}

fn row_order(a: &Character, b: &Character) -> Ordering {
    let trivial = |c: &Character| c.degree == 1 && c.values.iter().all(|v| v.to_rational().is_some_and(|q| q.is_one()));
    trivial(b)
        .cmp(&trivial(a))
        .then(a.degree.cmp(&b.degree))
        .then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                match y.canonical_cmp(x) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
}

fn structure_constants(g: &FiniteGroup, p: u64) -> Vec<u64> {
    let classes = g.classes();
    let k = classes.len();
    let mut consts = vec![0u64; k * k * k];
    for (kk, &rep) in classes.representatives.iter().enumerate() {
        for x in 0..g.order() {
            let j = classes.class_of[x];
            let l = classes.class_of[g.mul(g.inv(x), rep)];
            consts[(j * k + l) * k + kk] += 1;
        }
    }
    consts.iter_mut().for_each(|c| *c %= p);
    consts
}

/// Common eigenvectors of the class matrices `(A_j)_{l,k} = c_jlk` modulo `p`,
/// each normalised to 1 at the identity class.
fn simultaneous_eigenvectors(consts: &[u64], k: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    loop {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut progressed = false;
        for j in 1..k {
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let parts = split_space(consts, k, j, &space, p)?;
                if parts.len() > 1 {
                    progressed = true;
                }
                next.extend(parts);
            }
            spaces = next;
        }
        if !progressed {
            return Err(Error::invariant("class matrices failed to split the class space"));
        }
    }
    let mut out = Vec::with_capacity(k);
    for s in spaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(Error::invariant("eigenvector vanishes at the identity class"));
        }
        let inv = invmod(v[0], p);
        out.push(v.iter().map(|x| x * inv % p).collect());
    }
    Ok(out)
}

/// Eigenspaces of `A_j` restricted to the invariant subspace spanned by `space`.
fn split_space(consts: &[u64], k: usize, j: usize, space: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let (basis, pivots) = rref_mod(space.to_vec(), p);
    let d = basis.len();
    // m[a][b]: coordinate a of A_j applied to basis vector b
    let mut m = vec![vec![0u64; d]; d];
    for (b, w) in basis.iter().enumerate() {
        let aw: Vec<u64> = (0..k)
            .map(|l| {
                let row = &consts[(j * k + l) * k..(j * k + l + 1) * k];
                row.iter().zip(w).fold(0u64, |acc, (&c, &x)| (acc + c * x) % p)
            })
            .collect();
        for (a, &pc) in pivots.iter().enumerate() {
            m[a][b] = aw[pc];
        }
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|a| (0..d).map(|b| if a == b { (m[a][b] + p - lambda) % p } else { m[a][b] }).collect())
            .collect();
        let ker = kernel_mod(shifted, p);
        if ker.is_empty() {
            continue;
        }
        total += ker.len();
        let vecs = ker
            .into_iter()
            .map(|u| {
                (0..k).map(|c| u.iter().zip(&basis).fold(0u64, |acc, (&ua, w)| (acc + ua * w[c]) % p)).collect()
            })
            .collect();
        parts.push(vecs);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::invariant("class matrix is not diagonalisable modulo the Dixon prime"));
    }
    Ok(parts)
}

fn rref_mod(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let inv = invmod(rows[r][c], p);
        rows[r].iter_mut().for_each(|x| *x = *x * inv % p);
        let prow = rows[r].clone();
        for (i2, row) in rows.iter_mut().enumerate() {
            if i2 != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn kernel_mod(m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (r, pivots) = rref_mod(m, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r[i][f]) % p;
            }
            v
        })
        .collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p = 1 mod e` with `p > 2n`.
fn dixon_prime(e: u64, n: u64) -> u64 {
    let mut p = (2 * n / e) * e + 1;
    while p <= 2 * n || !is_prime(p) {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&r| factors.iter().all(|&q| powmod(r, (p - 1) / q, p) != 1)).unwrap_or(1)
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::DEFAULT_GROUP_CAP;

    #[test]
    fn dixon_prime_choice() {
        assert_eq!(dixon_prime(2, 2), 5);
        assert_eq!(dixon_prime(6, 6), 13);
        assert_eq!(dixon_prime(4, 8), 17);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn cyclic_two() {
        let g = FiniteGroup::cyclic(2);
        let t = CharacterTable::new(&g).unwrap();
        let vals: Vec<Vec<String>> = t.rows().iter().map(|r| r.values.iter().map(|v| v.to_string()).collect()).collect();
        assert_eq!(vals, vec![vec!["1", "1"], vec!["1", "-1"]]);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_generators(&[], 1).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.fs_indicator(0), 1);
    }

    #[test]
    fn quaternion_indicator() {
        let g = FiniteGroup::from_cycle_strings(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 8);
        let t = CharacterTable::new(&g).unwrap();
        let degs: Vec<u64> = t.rows().iter().map(|r| r.degree).collect();
        assert_eq!(degs, vec![1, 1, 1, 1, 2]);
        assert_eq!(t.fs_indicator(4), -1);
        t.verify_class_algebra(&g).unwrap();
    }

    #[test]
    fn cyclic_three_is_complex() {
        let t = CharacterTable::new(&FiniteGroup::cyclic(3)).unwrap();
        assert_eq!((t.fs_indicator(1), t.fs_indicator(2)), (0, 0));
        assert_eq!(t.dual(1), 2);
        assert_eq!(t.galois_orbits().len(), 2);
        assert_eq!(t.galois_orbits()[1].orbit_sum, vec![int(2), int(-1), int(-1)]);
    }
}
