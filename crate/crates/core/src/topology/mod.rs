//! The covering surface as a ribbon graph, with its intersection form,
//! lifted curves and the multi-twists along them.
//!
//! The base surface carries a one-vertex ribbon graph on the loops
//! `a_j, b_j, t_i`. Its faces are one disk bounded by the surface relation
//! word and a monogon `t_i^-1` around each branch point. The cover's graph is
//! the Schreier graph of [`CoverHomology`], every vertex inheriting the
//! base vertex's cyclic order of half-edges.

use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::group::{CharacterTable, FiniteGroup};
use crate::hodge::{h1_character, Chain, CoverHomology, Letter};
use crate::linalg::{commutant_dimension, rat, RatMatrix, Rational, RowEchelon};
use crate::unitary::{commutant_from_matrices, rational_idempotent, restrict_to, Block};

pub const DEFAULT_TOPOLOGY_CAP: usize = 64;

/// Half-edge ids at the base vertex: `2s` starts letter `s`, `2s + 1` ends it.
fn departure(&(s, sign): &Letter) -> usize {
    if sign > 0 {
        2 * s
    } else {
        2 * s + 1
    }
}

fn arrival(&(s, sign): &Letter) -> usize {
    if sign > 0 {
        2 * s + 1
    } else {
        2 * s
    }
}

/// Half-edges around the base vertex in cyclic order, read from the face
/// words: arriving along a face, the next half-edge is the one it leaves by.
fn corner_order(relation: &[Letter], letters: usize, base_genus: usize) -> Result<Vec<usize>> {
    let mut next = vec![usize::MAX; 2 * letters];
    let k = relation.len();
    for j in 0..k {
        next[arrival(&relation[j])] = departure(&relation[(j + 1) % k]);
    }
    for s in 2 * base_genus..letters {
        let w = (s, -1);
        next[arrival(&w)] = departure(&w);
    }
    let mut order = vec![0];
    let mut h = next[0];
    while h != 0 {
        if h == usize::MAX || order.len() > 2 * letters {
            return Err(Error::invariant("face words do not give a rotation"));
        }
        order.push(h);
        h = next[h];
    }
    if order.len() != 2 * letters {
        return Err(Error::invariant("base ribbon graph has more than one vertex"));
    }
    Ok(order)
}

/// Ribbon graph model of the closed cover.
#[derive(Clone, Debug)]
pub struct CoverModel {
    homology: CoverHomology,
    images: Vec<usize>,
    corners: Vec<usize>,
    form: RatMatrix,
    actions: Vec<RatMatrix>,
}

impl CoverModel {
    pub fn new(datum: &CoverDatum, cap: usize) -> Result<Self> {
        let homology = CoverHomology::new(datum, cap)?;
        let images = datum.generator_images();
        let corners = corner_order(&homology.relation_word(), homology.letters(), datum.base_genus())?;
        let group = homology.group().clone();
        let actions: Vec<RatMatrix> = (0..group.order()).map(|g| homology.action_matrix(g)).collect();
        let mut model = CoverModel { homology, images, corners, form: RatMatrix::zeros(0, 0), actions };
        let n = model.homology.dim();
        let basis: Vec<Chain> = (0..n).map(|i| model.homology.basis_cycle(i)).collect();
        let mut form = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = model.pair_chains(&basis[i], &basis[j]);
                form.set(i, j, v.clone());
                form.set(j, i, -v);
            }
        }
        model.form = form;
        model.verify(datum)?;
        Ok(model)
    }

    fn verify(&self, datum: &CoverDatum) -> Result<()> {
        let n = self.dim();
        if !self.form.is_skew_symmetric() || self.form.rank() != n {
            return Err(Error::invariant("intersection form is not a nondegenerate skew form"));
        }
        for rel in self.homology.relations() {
            for i in 0..n {
                if !self.pair_chains(rel, &self.homology.basis_cycle(i)).is_zero() {
                    return Err(Error::invariant("a face boundary has nonzero intersection with a cycle"));
                }
            }
        }
        let g = self.group();
        for x in 0..g.order() {
            let m = &self.actions[x];
            if &(&m.transpose() * &self.form) * m != self.form {
                return Err(Error::invariant(format!("element {} does not preserve the intersection form", x)));
            }
            for &s in g.generators() {
                if &self.actions[x] * &self.actions[s] != self.actions[g.mul(x, s)] {
                    return Err(Error::invariant("action matrices do not follow the multiplication table"));
                }
            }
        }
        let table = CharacterTable::new(g)?;
        let chi = table.combine(&h1_character(datum, &table)?.multiplicities);
        for x in 0..g.order() {
            let expected = chi[g.class_of(x)].to_rational();
            if expected.as_ref() != Some(&self.actions[x].trace()) {
                return Err(Error::invariant(format!("trace of element {} disagrees with the character of H^1", x)));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.homology.group()
    }

    pub fn homology(&self) -> &CoverHomology {
        &self.homology
    }

    /// `2 g`.
    pub fn dim(&self) -> usize {
        self.homology.dim()
    }

    /// Gram matrix of the intersection form on the homology basis.
    pub fn form(&self) -> &RatMatrix {
        &self.form
    }

    pub fn action(&self, g: usize) -> &RatMatrix {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[RatMatrix] {
        &self.actions
    }

    /// Outgoing flow of a chain on each half-edge at vertex `h`, in corner order.
    fn flows(&self, chain: &Chain, h: usize) -> Vec<i64> {
        let g = self.group();
        self.corners
            .iter()
            .map(|&half| {
                let s = half / 2;
                if half % 2 == 0 {
                    chain.get(&self.homology.edge(h, s)).copied().unwrap_or(0)
                } else {
                    let src = g.mul(h, g.inv(self.images[s]));
                    -chain.get(&self.homology.edge(src, s)).copied().unwrap_or(0)
                }
            })
            .collect()
    }

    /// Algebraic intersection number of two cycles:
    /// `1/2 sum_v sum_{i<j} (x_i y_j - x_j y_i)` over corner-ordered flows.
    pub fn pair_chains(&self, x: &Chain, y: &Chain) -> Rational {
        let mut vertices: Vec<usize> = x.keys().chain(y.keys()).flat_map(|&e| [e / self.homology.letters(), self.homology.edge_target(e)]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut total = 0i64;
        for v in vertices {
            let fx = self.flows(x, v);
            let fy = self.flows(y, v);
            let mut before = 0i64;
            let after_all: i64 = fy.iter().sum();
            for (a, b) in fx.iter().zip(&fy) {
                let after = after_all - before - b;
                total += a * (before - after);
                before += b;
            }
        }
        rat(total, 2)
    }

    /// `<u, v> = u^T Omega v` on homology coordinates.
    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let ov = self.form.mul_vec(v);
        u.iter().zip(&ov).map(|(a, b)| a * b).sum()
    }
}

/// Parse a curve word like `"a1 b2^-1 t1"` against a datum's generators.
pub fn parse_curve_word(text: &str, base_genus: usize, branch_points: usize) -> Result<Vec<Letter>> {
    let mut word = Vec::new();
    for tok in text.split_whitespace() {
        let (name, power) = match tok.split_once('^') {
            Some((n, p)) => (n, p.parse::<i64>().map_err(|_| Error::invalid(format!("bad exponent in {:?}", tok)))?),
            None => (tok, 1),
        };
        let kind = name.chars().next().ok_or_else(|| Error::invalid("empty letter"))?;
        let idx: usize = name[1..].parse().map_err(|_| Error::invalid(format!("bad generator name {:?}", name)))?;
        let letter = match kind {
            'a' if (1..=base_genus).contains(&idx) => 2 * (idx - 1),
            'b' if (1..=base_genus).contains(&idx) => 2 * (idx - 1) + 1,
            't' if (1..=branch_points).contains(&idx) => 2 * base_genus + idx - 1,
            _ => return Err(Error::invalid(format!("unknown generator {:?}", name))),
        };
        if power == 0 {
            return Err(Error::invalid(format!("zero exponent in {:?}", tok)));
        }
        for _ in 0..power.unsigned_abs() {
            word.push((letter, power.signum()));
        }
    }
    if word.is_empty() {
        return Err(Error::invalid("curve word is empty"));
    }
    if word.windows(2).any(|p| p[0].0 == p[1].0 && p[0].1 == -p[1].1) {
        return Err(Error::invalid(format!("curve word {:?} is not reduced", text)));
    }
    Ok(word)
}

/// One component of the preimage of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// The sheets `h<p(w)>` the component passes through, starting at `h`.
    pub coset: Vec<usize>,
    #[serde(skip)]
    pub class: Vec<Rational>,
}

/// The `G`-orbit of components of a lifted curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTwistOrbit {
    pub word: Vec<Letter>,
    pub monodromy: usize,
    /// Common degree of the components over the curve, `ord p(w)`.
    pub degree: usize,
    pub components: Vec<Component>,
}

impl MultiTwistOrbit {
    pub fn classes(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.components.iter().map(|c| &c.class)
    }
}

/// Components of the preimage of a curve and their homology classes.
///
/// The curve is trusted to be simple and essential; only the isotropy of the
/// lifted classes is checked.
pub fn lift_curve(model: &CoverModel, word: &[Letter]) -> Result<MultiTwistOrbit> {
    let hom = model.homology();
    if word.is_empty() || word.iter().any(|&(s, e)| s >= hom.letters() || e.abs() != 1) {
        return Err(Error::invalid("curve word has letters outside the generators"));
    }
    let g = model.group();
    let x = hom.monodromy(word);
    let degree = g.element_order(x);
    let power: Vec<Letter> = word.iter().copied().cycle().take(word.len() * degree).collect();
    let mut done = vec![false; g.order()];
    let mut components = Vec::new();
    for h in 0..g.order() {
        if done[h] {
            continue;
        }
        let mut coset = Vec::with_capacity(degree);
        let mut y = h;
        for _ in 0..degree {
            done[y] = true;
            coset.push(y);
            y = g.mul(y, x);
        }
        let (chain, end) = hom.lift_word(h, &power);
        if end != h {
            return Err(Error::invariant("lift of w^m is not closed"));
        }
        components.push(Component { coset, class: hom.coordinates(&chain) });
    }
    if components.len() * degree != g.order() {
        return Err(Error::invariant("component count times degree differs from the group order"));
    }
    for (i, a) in components.iter().enumerate() {
        for b in &components[i..] {
            let v = model.pair(&a.class, &b.class);
            if !v.is_zero() {
                return Err(Error::NotIsotropic(format!(
                    "components through sheets {} and {} meet with intersection number {}",
                    a.coset[0], b.coset[0], v
                )));
            }
        }
    }
    Ok(MultiTwistOrbit { word: word.to_vec(), monodromy: x, degree, components })
}

/// `T_A(x) = x + sum_alpha <x, [alpha]> [alpha]`.
pub fn transvection(model: &CoverModel, orbit: &MultiTwistOrbit) -> Result<RatMatrix> {
    let n = model.dim();
    let omega = model.form();
    let mut t = RatMatrix::identity(n);
    for c in orbit.classes() {
        // <x, c> = x^T Omega c
        let oc = omega.mul_vec(c);
        for i in 0..n {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !oc[j].is_zero() {
                    let v = t.get(i, j) + &c[i] * &oc[j];
                    t.set(i, j, v);
                }
            }
        }
    }
    check_transvection(model, &t)?;
    Ok(t)
}

fn check_transvection(model: &CoverModel, t: &RatMatrix) -> Result<()> {
    let n = model.dim();
    let omega = model.form();
    if &(&t.transpose() * omega) * t != *omega {
        return Err(Error::invariant("multi-twist does not preserve the intersection form"));
    }
    for m in model.actions() {
        if m * t != t * m {
            return Err(Error::invariant("multi-twist does not commute with the group"));
        }
    }
    let nil = t - &RatMatrix::identity(n);
    if !(&nil * &nil).is_zero() {
        return Err(Error::invariant("multi-twist is not unipotent of order two"));
    }
    if !t.determinant().is_one() {
        return Err(Error::invariant("multi-twist has determinant other than one"));
    }
    Ok(())
}

/// Rational central idempotent of a Galois orbit on the model's homology.
pub fn isotypical_projector(model: &CoverModel, table: &CharacterTable, orbit: usize) -> RatMatrix {
    rational_idempotent(model.group(), table, orbit, model.actions())
}

/// The projectors sum to the identity and are orthogonal idempotents.
pub fn check_projectors(model: &CoverModel, table: &CharacterTable) -> Result<()> {
    let n = model.dim();
    let es: Vec<RatMatrix> = (0..table.galois_orbits().len()).map(|o| isotypical_projector(model, table, o)).collect();
    let mut sum = RatMatrix::zeros(n, n);
    for (i, e) in es.iter().enumerate() {
        sum = &sum + e;
        for (j, f) in es.iter().enumerate() {
            let p = e * f;
            if (i == j && p != *e) || (i != j && !p.is_zero()) {
                return Err(Error::invariant(format!("projectors {} and {} are not orthogonal idempotents", i, j)));
            }
        }
    }
    if sum != RatMatrix::identity(n) {
        return Err(Error::invariant("isotypical projectors do not sum to the identity"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageTest {
    pub nonzero: bool,
    pub projected: Vec<Vec<Rational>>,
}

/// Whether some component class has nonzero image in the `[chi]`-part.
pub fn isotypical_image_test(model: &CoverModel, orbit: &MultiTwistOrbit, table: &CharacterTable, class: usize) -> ImageTest {
    let e = isotypical_projector(model, table, class);
    let projected: Vec<Vec<Rational>> = orbit.classes().map(|c| e.mul_vec(c)).collect();
    let nonzero = projected.iter().any(|v| v.iter().any(|x| !x.is_zero()));
    ImageTest { nonzero, projected }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rational_class: usize,
    pub curves: usize,
    pub block_dimension: usize,
    /// Dimension of the unital algebra generated by the restricted twists.
    pub algebra_dimension: usize,
    pub commutant_dimension: usize,
    /// `dim` of the image of `QG` on the block, `(chi(1)/s)^2 dim D`.
    pub expected_commutant_dimension: Option<usize>,
    pub division_algebra_dimension: Option<u64>,
    pub verdict: String,
}

/// Unital algebra generated by `gens`, grown by left multiplication until
/// the span stops growing.
pub fn generated_algebra_dimension(gens: &[RatMatrix], n: usize) -> usize {
    let flat = |m: &RatMatrix| m.entries().to_vec();
    let mut span = RowEchelon::new(n * n);
    let id = RatMatrix::identity(n);
    span.insert(flat(&id));
    let mut queue = VecDeque::from([id]);
    while let Some(b) = queue.pop_front() {
        for g in gens {
            let p = g * &b;
            if span.insert(flat(&p)) {
                queue.push_back(p);
            }
        }
    }
    span.rank()
}

/// Sufficient test that the twists along `curves` act irreducibly on the
/// multiplicity space of `[chi]`: the commutant of the twist algebra on the
/// isotypical block is no larger than the image of `QG`.
pub fn certify(model: &CoverModel, table: &CharacterTable, orbits: &[MultiTwistOrbit], class: usize) -> Result<Certificate> {
    if class >= table.galois_orbits().len() {
        return Err(Error::invalid(format!("no rational class {}", class)));
    }
    let e = isotypical_projector(model, table, class);
    let block = Block::new(&e, &[]);
    let k = block.dim();
    let twists: Vec<RatMatrix> = orbits
        .iter()
        .map(|o| transvection(model, o).map(|t| restrict_to(&block.space, &t)))
        .collect::<Result<_>>()?;
    let algebra = generated_algebra_dimension(&twists, k);
    let commutant = commutant_dimension(&twists, k);
    let d = commutant_from_matrices(model.group(), table, class, model.actions())?;
    let deg = table.degree(table.galois_orbits()[class].rows[0]);
    let expected = match (d.schur_index, d.division_algebra_dimension) {
        (Some(s), Some(dd)) if deg.is_multiple_of(s) => Some(((deg / s) * (deg / s) * dd) as usize),
        _ => None,
    };
    let irreducible = k > 0 && Some(commutant) == expected && algebra * commutant == k * k;
    Ok(Certificate {
        rational_class: class,
        curves: orbits.len(),
        block_dimension: k,
        algebra_dimension: algebra,
        commutant_dimension: commutant,
        expected_commutant_dimension: expected,
        division_algebra_dimension: d.division_algebra_dimension,
        verdict: if irreducible { "irreducible" } else { "inconclusive" }.to_string(),
    })
}

/// Coordinates with exact rationals as `i64` where integral, for display.
pub fn integral_coordinates(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { crate::linalg::rational_to_i64(x) } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn trivial(genus: usize) -> CoverDatum {
        let g = Arc::new(FiniteGroup::from_generators(&[], 1).unwrap());
        CoverDatum::new(g, vec![(0, 0); genus], vec![]).unwrap()
    }

    fn word(d: &CoverDatum, s: &str) -> Vec<Letter> {
        parse_curve_word(s, d.base_genus(), d.branch().len()).unwrap()
    }

    #[test]
    fn standard_form_in_genus_two() {
        let d = trivial(2);
        let m = CoverModel::new(&d, DEFAULT_TOPOLOGY_CAP).unwrap();
        let expected = RatMatrix::from_i64(&[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]);
        assert_eq!(m.form(), &expected);
    }

    #[test]
    fn involutions() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let free = CoverDatum::new(c2.clone(), vec![(1, 0), (0, 0)], vec![]).unwrap();
        let m = CoverModel::new(&free, DEFAULT_TOPOLOGY_CAP).unwrap();
        assert_eq!(m.dim(), 6);
        // no fixed points, so the Lefschetz number 2 - tr vanishes
        assert_eq!(m.action(1).trace(), int(2));
        let hyp = CoverDatum::new(c2, vec![], vec![1; 6]).unwrap();
        let m = CoverModel::new(&hyp, DEFAULT_TOPOLOGY_CAP).unwrap();
        assert_eq!(m.action(1), &RatMatrix::identity(4).scale(&int(-1)));
    }

    #[test]
    fn lifts_in_the_free_double_cover() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let d = CoverDatum::new(c2, vec![(0, 1), (0, 0)], vec![]).unwrap();
        let m = CoverModel::new(&d, DEFAULT_TOPOLOGY_CAP).unwrap();
        let a = lift_curve(&m, &word(&d, "a1")).unwrap();
        assert_eq!((a.components.len(), a.degree), (2, 1));
        assert_eq!(m.action(1).mul_vec(&a.components[0].class), a.components[1].class);
        let b = lift_curve(&m, &word(&d, "b1")).unwrap();
        assert_eq!((b.components.len(), b.degree), (1, 2));
        let t = transvection(&m, &a).unwrap();
        assert_ne!(t, RatMatrix::identity(m.dim()));
        let sep = lift_curve(&m, &word(&d, "a1 b1 a1^-1 b1^-1")).unwrap();
        assert!(sep.classes().all(|c| c.iter().all(|x| x.is_zero())));
        assert_eq!(transvection(&m, &sep).unwrap(), RatMatrix::identity(m.dim()));
        let table = CharacterTable::new(m.group()).unwrap();
        check_projectors(&m, &table).unwrap();
        for class in 0..table.galois_orbits().len() {
            assert!(!isotypical_image_test(&m, &sep, &table, class).nonzero);
        }
        assert!(isotypical_image_test(&m, &a, &table, table.orbit_of(0)).nonzero);
    }

    #[test]
    fn non_isotropic_lift_is_rejected() {
        let d = trivial(1);
        let m = CoverModel::new(&d, DEFAULT_TOPOLOGY_CAP).unwrap();
        assert!(lift_curve(&m, &word(&d, "a1")).is_ok());
        assert!(parse_curve_word("a1 a1^-1", 1, 0).is_err());
        assert!(parse_curve_word("", 1, 0).is_err());
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let d = CoverDatum::new(c3, vec![(1, 0), (0, 0)], vec![]).unwrap();
        let m = CoverModel::new(&d, DEFAULT_TOPOLOGY_CAP).unwrap();
        // a2 b2 conjugated apart: the lift through sheet h meets the one through h r
        let r = lift_curve(&m, &word(&d, "a1 a2 a1^-1 b2"));
        assert!(matches!(r, Err(Error::NotIsotropic(_))));
        assert!(lift_curve(&m, &word(&d, "a1 b2 a2")).is_ok());
    }

    #[test]
    fn humphries_curves_certify() {
        let d = trivial(2);
        let m = CoverModel::new(&d, DEFAULT_TOPOLOGY_CAP).unwrap();
        let table = CharacterTable::new(m.group()).unwrap();
        let curves: Vec<_> = ["a1", "b1", "a1 a2^-1", "b2", "a2"].iter().map(|w| lift_curve(&m, &word(&d, w)).unwrap()).collect();
        let c = certify(&m, &table, &curves, 0).unwrap();
        assert_eq!((c.commutant_dimension, c.verdict.as_str()), (1, "irreducible"));
        let one = certify(&m, &table, &curves[..1], 0).unwrap();
        assert_eq!(one.verdict, "inconclusive");
        let none = certify(&m, &table, &[], 0).unwrap();
        assert_eq!((none.commutant_dimension, none.verdict.as_str()), (16, "inconclusive"));
    }
}
