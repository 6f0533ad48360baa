//! Types of the isotypical pieces of `H^1` and their unitary groups.
//!
//! For each complex irreducible `chi` in `H^1(S; C)` the symplectic form on
//! the `chi`-part gives a skew-hermitian module over `D_chi`. The type is read
//! off the Frobenius–Schur indicator; `D_chi` itself is recovered, when the
//! group is small enough, from the commutant of `G` on the rational
//! isotypical block of an explicit homology model.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::group::{CharacterTable, FiniteGroup};
use crate::hodge::{h0_multiplicity, h1_multiplicity, CoverHomology};
use crate::linalg::{commutant_dimension, int, rat, Cyclotomic, RatMatrix, Rational, RowEchelon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

impl RepType {
    pub fn from_indicator(fs: i8) -> Self {
        match fs {
            1 => RepType::Real,
            -1 => RepType::Quaternionic,
            _ => RepType::Complex,
        }
    }
}

/// One complex irreducible present in `H^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypeEntry {
    pub character: usize,
    pub degree: u64,
    #[serde(rename = "type")]
    pub rep_type: RepType,
    /// Multiplicity of `chi` in `H^1(S; C)`.
    pub multiplicity: u64,
    /// Rank of `H_R[chi]` over `D_chi`.
    pub rank: u64,
    /// `(h0(chi), h0(chi*))` for complex type.
    pub signature: Option<(u64, u64)>,
    pub group: String,
    /// Index of the Galois orbit in the table's orbit list.
    pub rational_class: usize,
}

/// Division algebra data recovered from the rational isotypical block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantReport {
    pub block_dimension: usize,
    /// `dim_Q End_QG(H^1_[chi])`.
    pub commutant_dimension: usize,
    /// Bounds on the Schur index; equal when it is determined.
    pub schur_lower: u64,
    pub schur_upper: u64,
    pub schur_index: Option<u64>,
    /// Multiplicity of the rational irreducible, `m / s`.
    pub rational_multiplicity: Option<u64>,
    pub division_algebra_dimension: Option<u64>,
}

/// One Galois orbit of characters present in `H^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalClassEntry {
    pub rational_class: usize,
    pub characters: Vec<usize>,
    /// `[L_chi : Q]`, the orbit size.
    pub center_degree: usize,
    /// `[K_chi : Q]` for the totally real subfield fixed by the involution.
    pub real_center_degree: usize,
    pub commutant: Option<CommutantReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypeReport {
    pub total_genus: usize,
    pub entries: Vec<IsotypeEntry>,
    pub classes: Vec<RationalClassEntry>,
    pub signature_convention: String,
}

pub const SIGNATURE_CONVENTION: &str = "p counts occurrences of chi in the holomorphic differentials, q those of its dual";

/// `(h0(chi), h0(chi*))` for a complex-type `chi`.
pub fn signature(datum: &CoverDatum, table: &CharacterTable, chi: usize) -> Result<(u64, u64)> {
    if chi >= table.len() {
        return Err(Error::invalid(format!("no character row {}", chi)));
    }
    if table.fs_indicator(chi) != 0 {
        return Err(Error::invalid(format!("character {} is self-dual; the signature is defined for complex type only", chi)));
    }
    Ok((h0_multiplicity(datum, table, chi)?, h0_multiplicity(datum, table, table.dual(chi))?))
}

fn descriptor(t: RepType, rank: u64, sig: Option<(u64, u64)>) -> String {
    match (t, sig) {
        (RepType::Real, _) => format!("symplectic group, {} real variables", rank),
        (RepType::Quaternionic, _) => format!("quaternionic unitary group, {} variables", rank),
        (RepType::Complex, Some((p, q))) => format!("complex unitary group, signature ({},{})", p, q),
        (RepType::Complex, None) => format!("complex unitary group, {} variables", rank),
    }
}

/// Types, ranks and signatures of every `chi` in `H^1`; with `oracle_cap`
/// set and `|G|` within it, also the division algebra of each orbit.
pub fn isotype_report(datum: &CoverDatum, table: &CharacterTable, oracle_cap: Option<usize>) -> Result<IsotypeReport> {
    let mut entries = Vec::new();
    for chi in 0..table.len() {
        let m = h1_multiplicity(datum, table, chi)?;
        if m == 0 {
            continue;
        }
        let rep_type = RepType::from_indicator(table.fs_indicator(chi));
        let (rank, sig) = match rep_type {
            RepType::Real => (m, None),
            RepType::Quaternionic => {
                if m % 2 != 0 {
                    return Err(Error::invariant(format!("quaternionic character {} has odd multiplicity {}", chi, m)));
                }
                (m / 2, None)
            }
            RepType::Complex => {
                let (p, q) = signature(datum, table, chi)?;
                if p + q != m {
                    return Err(Error::invariant(format!("signature ({},{}) of character {} does not add up to {}", p, q, chi, m)));
                }
                if datum.branch().is_empty() && p != q {
                    return Err(Error::invariant(format!("free action but character {} has signature ({},{})", chi, p, q)));
                }
                (m, Some((p, q)))
            }
        };
        entries.push(IsotypeEntry {
            character: chi,
            degree: table.degree(chi),
            rep_type,
            multiplicity: m,
            rank,
            signature: sig,
            group: descriptor(rep_type, rank, sig),
            rational_class: table.orbit_of(chi),
        });
    }
    check_entries(datum, table, &entries)?;

    let homology = match oracle_cap {
        Some(cap) if datum.group().order() <= cap => Some(CoverHomology::new(datum, cap)?),
        _ => None,
    };
    let present: BTreeSet<usize> = entries.iter().map(|e| e.rational_class).collect();
    let mut classes = Vec::new();
    for o in present {
        let orbit = &table.galois_orbits()[o];
        let commutant = match &homology {
            Some(h) => Some(block_commutant(h, table, o)?),
            None => None,
        };
        classes.push(RationalClassEntry {
            rational_class: o,
            characters: orbit.rows.clone(),
            center_degree: orbit.field_degree,
            real_center_degree: real_center_degree(table, o),
            commutant,
        });
    }
    Ok(IsotypeReport {
        total_genus: datum.total_genus(),
        entries,
        classes,
        signature_convention: SIGNATURE_CONVENTION.to_string(),
    })
}

fn check_entries(datum: &CoverDatum, table: &CharacterTable, entries: &[IsotypeEntry]) -> Result<()> {
    let dim: u64 = entries.iter().map(|e| e.multiplicity * e.degree).sum();
    if dim != 2 * datum.total_genus() as u64 {
        return Err(Error::invariant(format!("isotypical dimensions sum to {} rather than {}", dim, 2 * datum.total_genus())));
    }
    let by_char = |c: usize| entries.iter().find(|e| e.character == c);
    for e in entries {
        for &other in &table.galois_orbits()[e.rational_class].rows {
            let o = by_char(other).ok_or_else(|| Error::invariant("Galois conjugate missing from the report"))?;
            if o.rep_type != e.rep_type || o.rank != e.rank {
                return Err(Error::invariant(format!("type or rank differs between conjugates {} and {}", e.character, other)));
            }
        }
        if e.rep_type == RepType::Complex {
            let d = by_char(table.dual(e.character)).ok_or_else(|| Error::invariant("dual character missing from the report"))?;
            let (p, q) = e.signature.unwrap_or_default();
            if d.multiplicity != e.multiplicity || d.signature != Some((q, p)) {
                return Err(Error::invariant(format!("character {} and its dual disagree", e.character)));
            }
        }
    }
    Ok(())
}

/// `[K:Q]` with `K` the fixed field of complex conjugation on the center.
pub fn real_center_degree(table: &CharacterTable, orbit: usize) -> usize {
    let o = &table.galois_orbits()[orbit];
    if table.fs_indicator(o.rows[0]) == 0 {
        o.field_degree / 2
    } else {
        o.field_degree
    }
}

/// Matrices of every group element from those of the generators, for a
/// left action (`M_{gh} = M_g M_h`).
pub fn element_matrices(group: &FiniteGroup, gen_mats: &[RatMatrix], dim: usize) -> Vec<RatMatrix> {
    let mut mats: Vec<Option<RatMatrix>> = vec![None; group.order()];
    mats[0] = Some(RatMatrix::identity(dim));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in group.generators().iter().enumerate() {
            let y = group.mul(x, s);
            if mats[y].is_none() {
                let m = mats[x].as_ref().map(|mx| mx * &gen_mats[i]);
                mats[y] = m;
                queue.push_back(y);
            }
        }
    }
    mats.into_iter().map(|m| m.expect("generators reach every element")).collect()
}

/// Rational central idempotent of a Galois orbit,
/// `(chi(1)/|G|) sum_g (sum_orbit chi)(g^-1) M_g`.
pub fn rational_idempotent(group: &FiniteGroup, table: &CharacterTable, orbit: usize, mats: &[RatMatrix]) -> RatMatrix {
    let o = &table.galois_orbits()[orbit];
    let scale = rat(table.degree(o.rows[0]) as i64, group.order() as i64);
    let dim = mats[0].rows();
    let mut e = RatMatrix::zeros(dim, dim);
    for (g, m) in mats.iter().enumerate() {
        let c = &o.orbit_sum[group.class_of(group.inv(g))];
        if !c.is_zero() {
            e = &e + &m.scale(&(c * &scale));
        }
    }
    e
}

/// Column space of `e` with the action of `mats` restricted to it.
pub struct Block {
    pub space: RowEchelon,
    pub restricted: Vec<RatMatrix>,
}

impl Block {
    pub fn new(e: &RatMatrix, mats: &[RatMatrix]) -> Self {
        let space = RowEchelon::from_vectors(e.rows(), e.transpose().row_vecs());
        let restricted = mats.iter().map(|m| restrict_to(&space, m)).collect();
        Block { space, restricted }
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }
}

/// Matrix of `m` on an invariant subspace, in the echelon basis.
pub fn restrict_to(space: &RowEchelon, m: &RatMatrix) -> RatMatrix {
    let cols: Vec<Vec<Rational>> = space.basis().iter().map(|b| space.coordinates(&m.mul_vec(b))).collect();
    RatMatrix::from_columns(space.rank(), &cols)
}

/// Smallest subspace containing `v` and stable under `gens`.
pub fn spin(v: Vec<Rational>, gens: &[RatMatrix]) -> RowEchelon {
    let mut span = RowEchelon::new(v.len());
    let mut queue = VecDeque::new();
    if span.insert(v.clone()) {
        queue.push_back(v);
    }
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let u = g.mul_vec(&w);
            if span.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    span
}

/// Commutant of `G` on the rational `[chi]`-block of an explicit homology
/// model, with the Schur index bracketed and `dim D` derived from it.
pub fn block_commutant(hom: &CoverHomology, table: &CharacterTable, orbit: usize) -> Result<CommutantReport> {
    let group = hom.group().clone();
    let gen_mats: Vec<RatMatrix> = group.generators().iter().map(|&s| hom.action_matrix(s)).collect();
    let mats = element_matrices(&group, &gen_mats, hom.dim());
    commutant_from_matrices(&group, table, orbit, &mats)
}

pub fn commutant_from_matrices(group: &FiniteGroup, table: &CharacterTable, orbit: usize, mats: &[RatMatrix]) -> Result<CommutantReport> {
    let o = &table.galois_orbits()[orbit];
    let chi = o.rows[0];
    let deg = table.degree(chi);
    let l = o.field_degree as u64;
    let block = Block::new(&rational_idempotent(group, table, orbit, mats), mats);
    let w = block.dim() as u64;
    if !w.is_multiple_of(deg * l) {
        return Err(Error::invariant(format!("block dimension {} is not a multiple of chi(1)[L:Q] = {}", w, deg * l)));
    }
    let m = w / (deg * l);
    let gens: Vec<RatMatrix> = group.generators().iter().map(|&s| block.restricted[s].clone()).collect();
    let cdim = commutant_dimension(&gens, block.dim());
    if cdim as u64 != m * m * l {
        return Err(Error::invariant(format!("commutant dimension {} differs from m^2 [L:Q] = {}", cdim, m * m * l)));
    }

    let lower = if table.fs_indicator(chi) == -1 { 2 } else { 1 };
    let mut upper = schur_gcd_bound(group, table, chi);
    if table.fs_indicator(chi) != 0 {
        // Brauer–Speiser
        upper = upper.min(2);
    }
    if m > 0 && upper > lower {
        upper = upper.gcd(&spin_bound(group, &block, deg * l, m)?);
    }
    if upper < lower || (m > 0 && !m.is_multiple_of(lower)) {
        return Err(Error::invariant(format!("Schur index bounds {}..{} inconsistent", lower, upper)));
    }
    let mut report = CommutantReport {
        block_dimension: block.dim(),
        commutant_dimension: cdim,
        schur_lower: lower,
        schur_upper: upper,
        schur_index: None,
        rational_multiplicity: None,
        division_algebra_dimension: None,
    };
    if lower == upper && m > 0 {
        let s = lower;
        let r = m / s;
        if !(cdim as u64).is_multiple_of(r * r) {
            return Err(Error::invariant("commutant dimension is not divisible by the squared rational multiplicity"));
        }
        let d = cdim as u64 / (r * r);
        if d != s * s * l {
            return Err(Error::invariant(format!("dim D = {} but s^2 [L:Q] = {}", d, s * s * l)));
        }
        report.schur_index = Some(s);
        report.rational_multiplicity = Some(r);
        report.division_algebra_dimension = Some(d);
    }
    Ok(report)
}

/// Subgroups generated by at most two elements, each with its `+-1`-valued
/// linear characters as value vectors over the subgroup's elements.
fn small_subgroups(group: &FiniteGroup) -> Vec<(Vec<usize>, Vec<Vec<i64>>)> {
    let n = group.order();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            let elems = group.closure(&[a, b]);
            if !seen.insert(elems.clone()) {
                continue;
            }
            let chars = sign_characters(group, &elems, &[a, b]);
            out.push((elems, chars));
        }
    }
    out
}

fn sign_characters(group: &FiniteGroup, elems: &[usize], gens: &[usize]) -> Vec<Vec<i64>> {
    let pos = |x: usize| elems.binary_search(&x).expect("closed subgroup");
    let mut out = Vec::new();
    for signs in 0..(1u32 << gens.len()) {
        let mut val: Vec<i64> = vec![0; elems.len()];
        val[pos(0)] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                if val[pos(y)] == 0 {
                    let sg = if signs >> i & 1 == 1 { -1 } else { 1 };
                    val[pos(y)] = val[pos(x)] * sg;
                    queue.push_back(y);
                }
            }
        }
        let hom = elems.iter().all(|&x| elems.iter().all(|&y| val[pos(group.mul(x, y))] == val[pos(x)] * val[pos(y)]));
        if hom && !out.contains(&val) {
            out.push(val);
        }
    }
    out
}

/// `gcd <Res_H chi, lambda>` over small subgroups and rational linear
/// characters; the Schur index divides each such multiplicity.
fn schur_gcd_bound(group: &FiniteGroup, table: &CharacterTable, chi: usize) -> u64 {
    let values = &table.row(chi).values;
    let mut g = 0u64;
    for (elems, chars) in small_subgroups(group) {
        for lam in chars {
            let sum = elems.iter().zip(&lam).fold(Cyclotomic::zero(table.field()), |acc, (&h, &l)| {
                acc + values[group.class_of(h)].scale(&int(l))
            });
            let Some(acc) = sum.to_rational() else { continue };
            let ip = acc / int(elems.len() as i64);
            if let Some(k) = ip.to_integer().to_u64().filter(|_| ip.is_integer()) {
                g = g.gcd(&k);
            }
        }
    }
    if g == 0 {
        u64::MAX
    } else {
        g
    }
}

/// `gcd dim U / (chi(1)[L:Q])` over submodules spun from vectors in the
/// `(H, lambda)`-eigenspaces of the block.
fn spin_bound(group: &FiniteGroup, block: &Block, unit: u64, m: u64) -> Result<u64> {
    let gens: Vec<RatMatrix> = group.generators().iter().map(|&s| block.restricted[s].clone()).collect();
    let mut g = m;
    for (elems, chars) in small_subgroups(group) {
        for lam in chars {
            let dim = block.dim();
            let mut p = RatMatrix::zeros(dim, dim);
            for (i, &h) in elems.iter().enumerate() {
                p = &p + &block.restricted[h].scale(&int(lam[i]));
            }
            let Some(v) = p.transpose().row_vecs().into_iter().find(|c| c.iter().any(|x| !x.is_zero())) else {
                continue;
            };
            let u = spin(v, &gens).rank() as u64;
            if !u.is_multiple_of(unit) {
                return Err(Error::invariant(format!("submodule of dimension {} in a block with unit {}", u, unit)));
            }
            g = g.gcd(&(u / unit));
            if g == 1 {
                return Ok(1);
            }
        }
    }
    Ok(g)
}

/// [`block_commutant`] on a freshly built homology model.
pub fn commutant_oracle(datum: &CoverDatum, table: &CharacterTable, orbit: usize, cap: usize) -> Result<CommutantReport> {
    if orbit >= table.galois_orbits().len() {
        return Err(Error::invalid(format!("no rational class {}", orbit)));
    }
    block_commutant(&CoverHomology::new(datum, cap)?, table, orbit)
}
