//! Report types emitted by the subcommands and their plain-text rendering.
//!
//! Every exact value is a string. Field names are stable: they are the JSON
//! schema of `--json`.

use std::fmt::Write;

use gcurve_core::cover::GeometryReport;
use gcurve_core::hodge::{EndoReport, GnReport, Sym2Report};
use gcurve_core::topology::Certificate;
use gcurve_core::unitary::IsotypeReport;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Chartable(ChartableReport),
    Geometry(GeometryReport),
    Hodge(HodgeReport),
    Sym2(Sym2Output),
    CheckEndo(EndoReport),
    CheckGn(GnOutput),
    Unitary(IsotypeReport),
    Lift(LiftReport),
    Twist(TwistReport),
    Certify(CertifyReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    /// Smallest element of the class, in cycle notation.
    pub representative: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub degree: u64,
    pub indicator: i8,
    pub dual: usize,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartableReport {
    pub group_order: usize,
    /// `z<e>` in the values is a primitive `e`-th root of unity.
    pub exponent: usize,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<CharacterRow>,
    /// Galois orbits of rows.
    pub rational_classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub total_genus: usize,
    pub degrees: Vec<u64>,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
    /// `h1(chi) = h0(chi) + h0(chi*)` for every row.
    pub duality_holds: bool,
    /// Multiplicities from the chain complex of the cover; absent above the
    /// oracle cap.
    pub oracle: Option<Vec<u64>>,
    pub oracle_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sym2Output {
    pub h0: Vec<u64>,
    pub sym2: Sym2Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnOutput {
    pub subgroup: String,
    pub result: GnReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedComponent {
    pub coset: Vec<usize>,
    pub class: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCurve {
    pub name: String,
    pub word: String,
    /// Monodromy of the word, in cycle notation.
    pub monodromy: String,
    pub degree: usize,
    pub components: Vec<LiftedComponent>,
    /// Rank of the span of the component classes.
    pub span_rank: usize,
    pub isotropic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub homology_rank: usize,
    pub curves: Vec<LiftedCurve>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEntry {
    pub name: String,
    pub word: String,
    pub components: usize,
    pub matrix: Vec<Vec<String>>,
    pub symplectic: bool,
    pub commutes_with_group: bool,
    pub square_zero: bool,
    /// Per rational class: some component class projects nontrivially.
    pub isotypical_image: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub homology_rank: usize,
    pub twists: Vec<TwistEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub curves: Vec<String>,
    pub certificates: Vec<Certificate>,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn opt<T: std::fmt::Debug>(x: &Option<T>) -> String {
    match x {
        Some(v) => format!("{:?}", v),
        None => "n/a".to_string(),
    }
}

impl Report {
    pub fn name(&self) -> &'static str {
        match self {
            Report::Chartable(_) => "chartable",
            Report::Geometry(_) => "geometry",
            Report::Hodge(_) => "hodge",
            Report::Sym2(_) => "sym2",
            Report::CheckEndo(_) => "check-endo",
            Report::CheckGn(_) => "check-gn",
            Report::Unitary(_) => "unitary",
            Report::Lift(_) => "lift",
            Report::Twist(_) => "twist",
            Report::Certify(_) => "certify",
        }
    }

    /// Human-readable text; a pure function of the report.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let o = &mut s;
        writeln!(o, "[{}]", self.name()).unwrap();
        match self {
            Report::Chartable(r) => {
                writeln!(o, "order {}, exponent {}", r.group_order, r.exponent).unwrap();
                for (i, c) in r.classes.iter().enumerate() {
                    writeln!(o, "class {}: rep {} size {} order {}", i, c.representative, c.size, c.element_order).unwrap();
                }
                for (i, row) in r.characters.iter().enumerate() {
                    writeln!(
                        o,
                        "chi{} deg {} fs {:+} dual chi{}: [{}]",
                        i,
                        row.degree,
                        row.indicator,
                        row.dual,
                        row.values.join(", ")
                    )
                    .unwrap();
                }
                for (i, orb) in r.rational_classes.iter().enumerate() {
                    writeln!(o, "rational class {}: rows [{}]", i, join(orb)).unwrap();
                }
            }
            Report::Geometry(r) => {
                writeln!(o, "|G| = {}, genus {}, quotient genus {}", r.group_order, r.total_genus, r.quotient_genus).unwrap();
                writeln!(o, "branch points {}, orders [{}]", r.branch_points, join(&r.branch_orders)).unwrap();
                writeln!(
                    o,
                    "moduli dimension {}, euler characteristic {}, positive {}",
                    r.moduli_dimension, r.euler_characteristic, r.moduli_positive
                )
                .unwrap();
            }
            Report::Hodge(r) => {
                writeln!(o, "genus {}", r.total_genus).unwrap();
                writeln!(o, "degrees [{}]", join(&r.degrees)).unwrap();
                writeln!(o, "H0(K) [{}]", join(&r.h0)).unwrap();
                writeln!(o, "H1    [{}]", join(&r.h1)).unwrap();
                writeln!(o, "duality {}", r.duality_holds).unwrap();
                match &r.oracle {
                    Some(v) => writeln!(o, "oracle [{}] agrees {}", join(v), opt(&r.oracle_agrees)).unwrap(),
                    None => writeln!(o, "oracle skipped (group above cap)").unwrap(),
                }
            }
            Report::Sym2(r) => {
                let q = &r.sym2;
                writeln!(o, "H0(K) [{}]", join(&r.h0)).unwrap();
                writeln!(
                    o,
                    "(Sym2 F)^G = {} (real {}, quaternionic {}, complex {}), character formula {}",
                    q.total, q.real_part, q.quaternionic_part, q.complex_part, q.character_formula
                )
                .unwrap();
                writeln!(o, "(Alt2 F)^G = {}", q.alternating).unwrap();
            }
            Report::CheckEndo(r) => {
                writeln!(o, "moduli_dim_positive {}", r.moduli_dim_positive).unwrap();
                writeln!(
                    o,
                    "no_central_hyperelliptic {} (partial {})",
                    r.no_central_hyperelliptic, r.hyperelliptic_check_partial
                )
                .unwrap();
                writeln!(o, "symplectic_mult_ok {}", r.symplectic_mult_ok).unwrap();
                writeln!(o, "dual_pairs_ok {}", r.dual_pairs_ok).unwrap();
                writeln!(o, "hypotheses_hold {}", r.hypotheses_hold).unwrap();
                writeln!(
                    o,
                    "base_genus_at_least_3 {}, all_mult_ge_2 {}, nontrivial_mult_ge_4 {}",
                    r.base_genus_at_least_3, r.all_mult_ge_2, r.nontrivial_mult_ge_4
                )
                .unwrap();
                writeln!(o, "H0(K) [{}]", join(&r.h0)).unwrap();
                for w in &r.witnesses {
                    writeln!(o, "witness {}: {}", w.field, w.note).unwrap();
                }
            }
            Report::CheckGn(g) => {
                let r = &g.result;
                writeln!(o, "N = {} of order {}", g.subgroup, r.subgroup_order).unwrap();
                writeln!(
                    o,
                    "index_two {}, acts_freely {}, genus_n {}, genus_n_ge_2 {}, quotient_hyperelliptic {}",
                    r.index_two,
                    r.acts_freely,
                    opt(&r.genus_n),
                    r.genus_n_ge_2,
                    r.quotient_hyperelliptic
                )
                .unwrap();
                writeln!(o, "hypotheses_hold {}", r.hypotheses_hold).unwrap();
                writeln!(
                    o,
                    "conclusion_i {}, conclusion_ii_split {}, conclusion_ii_all {}",
                    opt(&r.conclusion_i),
                    opt(&r.conclusion_ii_split),
                    opt(&r.conclusion_ii_all)
                )
                .unwrap();
                for c in &r.constituents {
                    writeln!(
                        o,
                        "chi{} deg {} mult {} expected {} formula {} splits {} induction {}",
                        c.character,
                        c.degree,
                        c.multiplicity,
                        c.expected_multiplicity,
                        c.formula_holds,
                        c.splits,
                        c.induction_recovers
                    )
                    .unwrap();
                }
                for w in &r.witnesses {
                    writeln!(o, "witness {}: {}", w.field, w.note).unwrap();
                }
            }
            Report::Unitary(r) => {
                writeln!(o, "genus {}", r.total_genus).unwrap();
                for e in &r.entries {
                    let sig = e.signature.map(|(p, q)| format!(" signature ({},{})", p, q)).unwrap_or_default();
                    writeln!(
                        o,
                        "chi{} deg {} {:?} mult {} rank {}{}: {}",
                        e.character, e.degree, e.rep_type, e.multiplicity, e.rank, sig, e.group
                    )
                    .unwrap();
                }
                for c in &r.classes {
                    write!(
                        o,
                        "rational class {} rows [{}] [L:Q] {} [K:Q] {}",
                        c.rational_class,
                        join(&c.characters),
                        c.center_degree,
                        c.real_center_degree
                    )
                    .unwrap();
                    match &c.commutant {
                        Some(d) => writeln!(
                            o,
                            ": block {} commutant {} schur {}..{} dim D {}",
                            d.block_dimension,
                            d.commutant_dimension,
                            d.schur_lower,
                            d.schur_upper,
                            opt(&d.division_algebra_dimension)
                        )
                        .unwrap(),
                        None => writeln!(o).unwrap(),
                    }
                }
                writeln!(o, "convention: {}", r.signature_convention).unwrap();
            }
            Report::Lift(r) => {
                writeln!(o, "H1 rank {}", r.homology_rank).unwrap();
                for c in &r.curves {
                    writeln!(
                        o,
                        "{} = {}: monodromy {} degree {} components {} span {} isotropic {}",
                        c.name,
                        c.word,
                        c.monodromy,
                        c.degree,
                        c.components.len(),
                        c.span_rank,
                        c.isotropic
                    )
                    .unwrap();
                    for comp in &c.components {
                        writeln!(o, "  sheets [{}] class [{}]", join(&comp.coset), comp.class.join(", ")).unwrap();
                    }
                }
            }
            Report::Twist(r) => {
                writeln!(o, "H1 rank {}", r.homology_rank).unwrap();
                for t in &r.twists {
                    writeln!(
                        o,
                        "{} = {}: components {} symplectic {} commutes {} square_zero {} image [{}]",
                        t.name,
                        t.word,
                        t.components,
                        t.symplectic,
                        t.commutes_with_group,
                        t.square_zero,
                        join(&t.isotypical_image)
                    )
                    .unwrap();
                    for row in &t.matrix {
                        writeln!(o, "  [{}]", row.join(" ")).unwrap();
                    }
                }
            }
            Report::Certify(r) => {
                writeln!(o, "curves [{}]", r.curves.join(", ")).unwrap();
                for c in &r.certificates {
                    writeln!(
                        o,
                        "rational class {}: {} (block {}, algebra {}, commutant {}, expected {}, dim D {})",
                        c.rational_class,
                        c.verdict,
                        c.block_dimension,
                        c.algebra_dimension,
                        c.commutant_dimension,
                        opt(&c.expected_commutant_dimension),
                        opt(&c.division_algebra_dimension)
                    )
                    .unwrap();
                }
            }
        }
        s
    }
}
