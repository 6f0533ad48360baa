use serde::{Deserialize, Serialize};

use super::chevalley_weil::h0_character;
use crate::cover::CoverDatum;
use crate::error::Result;
use crate::group::{induce, restrict, transport, CharacterTable, Subgroup};
use crate::linalg::{fmt_rational, int, rat, Cyclotomic};

/// Evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub field: String,
    pub character: Option<usize>,
    pub element: Option<usize>,
    pub multiplicity: Option<u64>,
    pub dual_multiplicity: Option<u64>,
    pub note: String,
}

impl Witness {
    fn note(field: &str, note: impl Into<String>) -> Self {
        Witness {
            field: field.to_string(),
            character: None,
            element: None,
            multiplicity: None,
            dual_multiplicity: None,
            note: note.into(),
        }
    }
}

/// Hypotheses of the endomorphism-algebra theorem for a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoReport {
    pub moduli_dim_positive: bool,
    pub no_central_hyperelliptic: bool,
    /// Only involutions in the center of `G` are tested.
    pub hyperelliptic_check_partial: bool,
    pub symplectic_mult_ok: bool,
    pub dual_pairs_ok: bool,
    pub hypotheses_hold: bool,
    pub base_genus_at_least_3: bool,
    /// Every irreducible occurs in the differentials at least twice.
    pub all_mult_ge_2: bool,
    /// Every nontrivial irreducible occurs at least four times.
    pub nontrivial_mult_ge_4: bool,
    pub h0: Vec<u64>,
    pub witnesses: Vec<Witness>,
}

pub fn check_theorem_endo(datum: &CoverDatum, table: &CharacterTable) -> Result<EndoReport> {
    let g = datum.group();
    let h0 = h0_character(datum, table)?;
    let mut witnesses = Vec::new();

    let geom = datum.geometry();
    if !geom.moduli_positive {
        witnesses.push(Witness::note(
            "moduli_dim_positive",
            format!("(g0, n) = ({}, {}), Euler characteristic {}", geom.quotient_genus, geom.branch_points, geom.euler_characteristic),
        ));
    }

    let mut no_central_hyperelliptic = true;
    for z in g.central_involutions() {
        if datum.is_hyperelliptic_involution(z)? {
            no_central_hyperelliptic = false;
            witnesses.push(Witness { element: Some(z), ..Witness::note("no_central_hyperelliptic", "central involution with rational quotient") });
        }
    }

    let mut symplectic_mult_ok = true;
    let mut dual_pairs_ok = true;
    let mut all_mult_ge_2 = true;
    let mut nontrivial_mult_ge_4 = true;
    for r in 0..table.len() {
        let m = h0.get(r);
        let dual = table.dual(r);
        let md = h0.get(dual);
        let w = |field: &str, note: &str| Witness {
            character: Some(r),
            multiplicity: Some(m),
            dual_multiplicity: Some(md),
            ..Witness::note(field, note)
        };
        if m > 0 && table.fs_indicator(r) == -1 && m < 3 {
            symplectic_mult_ok = false;
            witnesses.push(w("symplectic_mult_ok", "quaternionic character with multiplicity below 3"));
        }
        if m > 0 && table.fs_indicator(r) == 0 && (m < 2 || md < 2) {
            dual_pairs_ok = false;
            witnesses.push(w("dual_pairs_ok", "complex character or its dual with multiplicity below 2"));
        }
        if m < 2 {
            all_mult_ge_2 = false;
            witnesses.push(w("all_mult_ge_2", "multiplicity below 2"));
        }
        if !table.is_trivial(r) && m < 4 {
            nontrivial_mult_ge_4 = false;
            witnesses.push(w("nontrivial_mult_ge_4", "nontrivial character with multiplicity below 4"));
        }
    }
    let base_genus_at_least_3 = datum.base_genus() >= 3;
    if !base_genus_at_least_3 {
        witnesses.push(Witness::note("base_genus_at_least_3", format!("quotient genus {}", datum.base_genus())));
    }
    let hypotheses_hold = geom.moduli_positive && no_central_hyperelliptic && symplectic_mult_ok && dual_pairs_ok;
    if !hypotheses_hold {
        witnesses.push(Witness::note("hypotheses_hold", "see the failing fields"));
    }
    Ok(EndoReport {
        moduli_dim_positive: geom.moduli_positive,
        no_central_hyperelliptic,
        hyperelliptic_check_partial: true,
        symplectic_mult_ok,
        dual_pairs_ok,
        hypotheses_hold,
        base_genus_at_least_3,
        all_mult_ge_2,
        nontrivial_mult_ge_4,
        h0: h0.multiplicities,
        witnesses,
    })
}

/// One constituent of the differentials on which `N` acts nontrivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnConstituent {
    pub character: usize,
    pub degree: u64,
    pub multiplicity: u64,
    /// `(g_N - 1) chi(1) / 2` as an exact rational string.
    pub expected_multiplicity: String,
    pub formula_holds: bool,
    /// Restriction to `N` is a sum of two distinct irreducibles.
    pub splits: bool,
    /// Rows of the table of `N` occurring in the restriction, with repetition.
    pub restriction: Vec<usize>,
    /// Inducing either summand back to `G` gives `chi`.
    pub induction_recovers: bool,
}

/// Hypotheses and character-level conclusions of the index-two theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnReport {
    pub subgroup_order: usize,
    pub index_two: bool,
    pub acts_freely: bool,
    pub genus_n: Option<usize>,
    pub genus_n_ge_2: bool,
    pub quotient_hyperelliptic: bool,
    pub hypotheses_hold: bool,
    /// Hypothesis of the surjectivity clause.
    pub genus_n_ge_4: bool,
    /// `G` contains an involution outside `N`.
    pub semidirect: Option<bool>,
    /// Row of the nontrivial character of `G/N`.
    pub sign_character: Option<usize>,
    pub sign_multiplicity: Option<u64>,
    pub conclusion_i: Option<bool>,
    pub constituents: Vec<GnConstituent>,
    /// Formula and induction hold for every constituent that splits over `N`.
    pub conclusion_ii_split: Option<bool>,
    /// Every constituent splits and satisfies the formula.
    pub conclusion_ii_all: Option<bool>,
    /// Constituents irreducible over `N` though nontrivial on it.
    pub unsplit: Vec<usize>,
    pub witnesses: Vec<Witness>,
}

pub fn check_theorem_gn(datum: &CoverDatum, table: &CharacterTable, n: &Subgroup) -> Result<GnReport> {
    let g = datum.group();
    let mut witnesses = Vec::new();
    let index_two = n.index(g) == 2;
    if !index_two {
        witnesses.push(Witness::note("index_two", format!("index {}", n.index(g))));
    }
    let mut acts_freely = true;
    for &x in n.elements().iter().skip(1) {
        let f = datum.fixed_point_count(x)?;
        if f > 0 {
            acts_freely = false;
            witnesses.push(Witness { element: Some(x), multiplicity: Some(f as u64), ..Witness::note("acts_freely", "element of N with fixed points") });
            break;
        }
    }
    let genus_n = datum.quotient_genus(n)?;
    let genus_n_ge_2 = genus_n >= 2;
    if !genus_n_ge_2 {
        witnesses.push(Witness::note("genus_n_ge_2", format!("quotient by N has genus {}", genus_n)));
    }
    let outside = datum.branch().iter().all(|&x| !n.contains(x));
    let quotient_hyperelliptic = datum.base_genus() == 0 && outside;
    if !quotient_hyperelliptic {
        witnesses.push(Witness::note(
            "quotient_hyperelliptic",
            format!("quotient genus {}, branch monodromy outside N: {}", datum.base_genus(), outside),
        ));
    }
    let genus_n_ge_4 = genus_n >= 4;
    let hypotheses_hold = index_two && acts_freely && genus_n_ge_2 && quotient_hyperelliptic;

    let mut report = GnReport {
        subgroup_order: n.order(),
        index_two,
        acts_freely,
        genus_n: Some(genus_n),
        genus_n_ge_2,
        quotient_hyperelliptic,
        hypotheses_hold,
        genus_n_ge_4,
        semidirect: None,
        sign_character: None,
        sign_multiplicity: None,
        conclusion_i: None,
        constituents: Vec::new(),
        conclusion_ii_split: None,
        conclusion_ii_all: None,
        unsplit: Vec::new(),
        witnesses: Vec::new(),
    };
    if !hypotheses_hold {
        witnesses.push(Witness::note("hypotheses_hold", "conclusions skipped"));
        report.witnesses = witnesses;
        return Ok(report);
    }

    let h0 = h0_character(datum, table)?;
    let semidirect = (0..g.order()).any(|x| g.element_order(x) == 2 && !n.contains(x));
    let trivial_on_n = |r: usize| n.elements().iter().all(|&x| table.row(r).values[g.class_of(x)] == table.row(r).values[0]);
    let sign = (1..table.len()).find(|&r| table.degree(r) == 1 && trivial_on_n(r));
    let present_on_quotient: Vec<usize> = h0.support().into_iter().filter(|&r| trivial_on_n(r)).collect();
    let sign_mult = sign.map(|r| h0.get(r));
    let conclusion_i = semidirect && sign.is_some() && present_on_quotient == sign.into_iter().collect::<Vec<_>>() && sign_mult == Some(genus_n as u64);
    if !conclusion_i {
        witnesses.push(Witness {
            multiplicity: sign_mult,
            ..Witness::note("conclusion_i", format!("constituents trivial on N: {:?}; semidirect: {}", present_on_quotient, semidirect))
        });
    }

    let (ngroup, embedding) = n.to_group(g);
    let ntable = CharacterTable::new(&ngroup)?;
    let field = table.field();
    let mut constituents = Vec::new();
    let mut unsplit = Vec::new();
    for r in h0.support() {
        if trivial_on_n(r) {
            continue;
        }
        let chi = &table.row(r).values;
        let on_n = restrict(g, n, chi);
        let by_class: Vec<Cyclotomic> = ngroup
            .classes()
            .representatives
            .iter()
            .map(|&rep| on_n[n.elements().binary_search(&embedding[rep]).expect("embedded element")].clone())
            .collect();
        let mult = ntable.decompose(&by_class)?;
        let mut restriction = Vec::new();
        for (s, &m) in mult.iter().enumerate() {
            restriction.extend(std::iter::repeat_n(s, m as usize));
        }
        let splits = restriction.len() == 2 && restriction[0] != restriction[1];
        let induction_recovers = splits
            && restriction.iter().all(|&s| {
                let psi = transport(&ngroup, &embedding, n, &ntable.row(s).values);
                induce(g, n, &psi, field).map(|ind| &ind == chi).unwrap_or(false)
            });
        let expected = rat((genus_n as i64 - 1) * table.degree(r) as i64, 2);
        let formula_holds = int(h0.get(r) as i64) == expected;
        if !splits {
            unsplit.push(r);
        }
        if !(splits && induction_recovers && formula_holds) {
            witnesses.push(Witness {
                character: Some(r),
                multiplicity: Some(h0.get(r)),
                ..Witness::note(
                    "conclusion_ii",
                    format!(
                        "splits: {}, induction recovers: {}, expected multiplicity {}",
                        splits,
                        induction_recovers,
                        fmt_rational(&expected)
                    ),
                )
            });
        }
        constituents.push(GnConstituent {
            character: r,
            degree: table.degree(r),
            multiplicity: h0.get(r),
            expected_multiplicity: fmt_rational(&expected),
            formula_holds,
            splits,
            restriction,
            induction_recovers,
        });
    }
    let split_ok = constituents.iter().filter(|c| c.splits).all(|c| c.formula_holds && c.induction_recovers);
    let all_ok = constituents.iter().all(|c| c.splits && c.formula_holds && c.induction_recovers);

    report.semidirect = Some(semidirect);
    report.sign_character = sign;
    report.sign_multiplicity = sign_mult;
    report.conclusion_i = Some(conclusion_i);
    report.constituents = constituents;
    report.conclusion_ii_split = Some(split_ok);
    report.conclusion_ii_all = Some(all_ok);
    report.unsplit = unsplit;
    report.witnesses = witnesses;
    Ok(report)
}
