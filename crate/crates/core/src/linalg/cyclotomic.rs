use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{fmt_rational, int, Rational};
use crate::error::{Error, Result};

/// The cyclotomic field `Q(z_e)` in its power basis `1, z, ..., z^(phi(e)-1)`.
///
/// Holds the `e`-th cyclotomic polynomial and the reductions of `z^k` for
/// `0 <= k < e`, so that every product reduces with one table lookup per
/// exponent.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    degree: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor as usize);
        let degree = modulus.len() - 1;
        let e = conductor as usize;
        let mut powers = Vec::with_capacity(e);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x, then eliminate the x^degree term with the monic modulus
            let top = cur[degree - 1];
            for t in (1..degree).rev() {
                cur[t] = cur[t - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (t, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(modulus[t]).expect("cyclotomic reduction overflow"))
                        .expect("cyclotomic reduction overflow");
                }
            }
        }
        Arc::new(CycloField { conductor, degree, modulus, powers })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(e)`, the dimension over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of the cyclotomic polynomial, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduce a vector indexed by exponents modulo `e` to the power basis.
    fn reduce(&self, acc: Vec<Rational>) -> Vec<Rational> {
        debug_assert_eq!(acc.len(), self.conductor as usize);
        let mut out: Vec<Rational> = acc[..self.degree].to_vec();
        for (k, a) in acc.iter().enumerate().skip(self.degree) {
            if a.is_zero() {
                continue;
            }
            for (t, &p) in self.powers[k].iter().enumerate() {
                if p != 0 {
                    out[t] += a * int(p);
                }
            }
        }
        out
    }
}

/// The `n`-th cyclotomic polynomial, lowest degree first.
fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut memo: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    phi_rec(n, &mut memo)
}

fn phi_rec(n: usize, memo: &mut BTreeMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = phi_rec(d, memo);
            num = exact_div_monic(&num, &div);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// An element of `Q(z_e)`, stored by its canonical power-basis coefficients.
///
/// Two values are equal exactly when they represent the same complex number;
/// values over different conductors are compared inside the field of the lcm
/// conductor.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclotomic { field: field.clone(), coeffs: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, r: Rational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, int(n))
    }

    /// `z_e^j` for any integer `j`.
    pub fn zeta_power(field: &Arc<CycloField>, j: i64) -> Self {
        let e = field.conductor as i64;
        let k = j.rem_euclid(e) as usize;
        let coeffs = field.powers[k].iter().map(|&p| int(p)).collect();
        Cyclotomic { field: field.clone(), coeffs }
    }

    /// `sum_j counts[j] * z_e^j` where `counts` is indexed by exponent mod `e`.
    pub fn from_exponent_counts(field: &Arc<CycloField>, counts: &[Rational]) -> Self {
        let e = field.conductor as usize;
        let mut acc = vec![Rational::zero(); e];
        for (j, c) in counts.iter().enumerate() {
            acc[j % e] += c;
        }
        Cyclotomic { field: field.clone(), coeffs: field.reduce(acc) }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Image under the field automorphism `z -> z^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let e = self.field.conductor as i64;
        if k.gcd(&e) != 1 {
            return Err(Error::NotCoprime { k, conductor: self.field.conductor });
        }
        let k = k.rem_euclid(e) as usize;
        let eu = e as usize;
        let mut acc = vec![Rational::zero(); eu];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(j * k) % eu] += c;
            }
        }
        Ok(Cyclotomic { field: self.field.clone(), coeffs: self.field.reduce(acc) })
    }

    /// Complex conjugate, i.e. `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    /// The same number viewed in `Q(z_E)`; requires `e | E`.
    pub fn embed(&self, target: &Arc<CycloField>) -> Self {
        let e = self.field.conductor as usize;
        let big = target.conductor as usize;
        assert!(big.is_multiple_of(e), "cannot embed conductor {} into {}", e, big);
        if e == big {
            return Cyclotomic { field: target.clone(), coeffs: self.coeffs.clone() };
        }
        let step = big / e;
        let mut acc = vec![Rational::zero(); big];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(j * step) % big] += c;
            }
        }
        Cyclotomic { field: target.clone(), coeffs: target.reduce(acc) }
    }

    /// Floating point value under the embedding `z_e -> exp(2 pi i / e)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.field.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / e;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Lexicographic order on coefficient vectors. Used only to make
    /// orderings reproducible; it is not compatible with the field operations.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        if self.field.conductor == other.field.conductor {
            self.coeffs.cmp(&other.coeffs)
        } else {
            let (a, b) = aligned(self, other);
            a.coeffs.cmp(&b.coeffs)
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.field.conductor != other.field.conductor {
            let (a, b) = aligned(self, other);
            return a.add_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if self.field.conductor != other.field.conductor {
            let (a, b) = aligned(self, other);
            return a.sub_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.field.conductor != other.field.conductor {
            let (a, b) = aligned(self, other);
            return a.mul_ref(&b);
        }
        let e = self.field.conductor as usize;
        let mut acc = vec![Rational::zero(); e];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % e] += x * y;
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs: self.field.reduce(acc) }
    }
}

fn aligned(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
    let l = a.field.conductor.lcm(&b.field.conductor);
    let field = if l == a.field.conductor {
        a.field.clone()
    } else if l == b.field.conductor {
        b.field.clone()
    } else {
        CycloField::new(l)
    };
    (a.embed(&field), b.embed(&field))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.conductor == other.field.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self)
    }
}

/// Power-basis rendering, highest power first, e.g. `-z3 - 1`, `z5^2 - z5`, `3/2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.field.conductor;
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs());
            let body = match j {
                0 => mag,
                _ => {
                    let base = if j == 1 { format!("z{}", e) } else { format!("z{}^{}", e, j) };
                    if c.abs().is_one() {
                        base
                    } else {
                        format!("{}*{}", mag, base)
                    }
                }
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        // highest power first reads like the usual polynomial notation
        terms.reverse();
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                self.$inner(rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn z(field: &Arc<CycloField>, j: i64) -> Cyclotomic {
        Cyclotomic::zeta_power(field, j)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn products() {
        let f4 = CycloField::new(4);
        let one = Cyclotomic::one(&f4);
        let i = z(&f4, 1);
        assert_eq!((&one + &i) * (&one - &i), Cyclotomic::from_int(&f4, 2));

        let f3 = CycloField::new(3);
        let w = z(&f3, 1);
        let expected = -Cyclotomic::one(&f3) - w.clone();
        assert_eq!(&w * &w, expected);
        assert_eq!(w.to_string(), "z3");
        assert_eq!((&w * &w).to_string(), "-z3 - 1");

        let x = &z(&f3, 2) + &Cyclotomic::from_rational(&f3, rat(3, 2));
        assert_eq!(&x * &Cyclotomic::one(&f3), x);
    }

    #[test]
    fn galois_action() {
        let f3 = CycloField::new(3);
        let w = z(&f3, 1);
        assert_eq!(w.galois(2).unwrap(), -Cyclotomic::one(&f3) - w.clone());
        assert_eq!(w.conj(), w.galois(2).unwrap());
        let r = Cyclotomic::from_rational(&f3, rat(-5, 7));
        assert_eq!(r.galois(2).unwrap(), r);
        assert!(matches!(w.galois(3), Err(Error::NotCoprime { .. })));

        let f5 = CycloField::new(5);
        let a = &z(&f5, 1) + &z(&f5, 4);
        let b = &z(&f5, 2) + &z(&f5, 3);
        assert_eq!(a.galois(2).unwrap(), b);
        // by hand: z^4 = -1 - z - z^2 - z^3, so z + z^4 = -1 - z^2 - z^3
        assert_eq!(a.coeffs(), &[int(-1), int(0), int(-1), int(-1)]);
    }

    #[test]
    fn mixed_conductors_compare_in_lcm() {
        let f2 = CycloField::new(2);
        let f6 = CycloField::new(6);
        let f3 = CycloField::new(3);
        assert_eq!(z(&f2, 1), Cyclotomic::from_int(&f6, -1));
        // z6 = -z3^2
        assert_eq!(z(&f6, 1), -z(&f3, 2));
        let s = &z(&f3, 1) + &z(&CycloField::new(4), 1);
        assert_eq!(s.conductor(), 12);
    }

    fn build(field: &Arc<CycloField>, cs: &[(i64, i64)]) -> Cyclotomic {
        let mut c = Cyclotomic::zero(field);
        for (j, &(n, d)) in cs.iter().take(field.degree()).enumerate() {
            c = c + Cyclotomic::zeta_power(field, j as i64).scale(&rat(n, d));
        }
        c
    }

    proptest! {
        #[test]
        fn ring_axioms(
            e in prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15]),
            xs in proptest::collection::vec((-6i64..=6, 1i64..=4), 8),
            ys in proptest::collection::vec((-6i64..=6, 1i64..=4), 8),
            zs in proptest::collection::vec((-6i64..=6, 1i64..=4), 8),
        ) {
            let field = CycloField::new(e);
            let (a, b, c) = (build(&field, &xs), build(&field, &ys), build(&field, &zs));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(a.conj().conj(), a.clone());
            // a * conj(a) is a non-negative real under every complex embedding
            let norm = &a * &a.conj();
            for k in 1..=e as i64 {
                if k.gcd(&(e as i64)) == 1 {
                    let (re, im) = norm.galois(k).unwrap().to_complex();
                    prop_assert!(im.abs() < 1e-9);
                    prop_assert!(re > -1e-9);
                }
            }
        }
    }
}
