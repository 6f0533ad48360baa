//! Acceptance suite: one line per criterion, exit status nonzero when a
//! criterion regresses from its recorded outcome.

use std::path::{Path, PathBuf};
use std::process::Command as Proc;
use std::sync::Arc;
use std::time::Instant;

use gcurve_cli::{run_path, Command, Overrides, Report};
use gcurve_core::cover::{sample_datum, CoverDatum};
use gcurve_core::group::{named_group, CharacterTable, FiniteGroup, CATALOG};
use gcurve_core::hodge::{check_theorem_endo, check_theorem_gn, h0_character, h1_chain_complex_oracle, h1_character, GnReport};
use gcurve_core::linalg::{int, RatMatrix, RowEchelon};
use gcurve_core::topology::{lift_curve, parse_curve_word, transvection, CoverModel, DEFAULT_TOPOLOGY_CAP};
use gcurve_core::unitary::commutant_oracle;
use gcurve_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 240;
const SEED: u64 = 20_240_917;

struct Outcome {
    pass: bool,
    detail: String,
}

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(name).unwrap())
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Seeded random data over catalog groups of order at most 16, base genus at
/// most 4 and at most 6 branch points.
fn random_corpus() -> Vec<CoverDatum> {
    let groups: Vec<Arc<FiniteGroup>> = CATALOG.iter().filter(|e| e.1 <= 16).map(|e| group(e.0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    while out.len() < CORPUS_SIZE {
        let g = &groups[rng.gen_range(0..groups.len())];
        let g0 = rng.gen_range(0..=4);
        let n = rng.gen_range(0..=6);
        if let Some(d) = sample_datum(g, g0, n, 32, &mut rng) {
            out.push(d);
        }
    }
    out
}

fn character_tables() -> Outcome {
    let start = Instant::now();
    let expected: &[(&str, &[u64])] = &[
        ("C2", &[1, 1]),
        ("C3", &[1, 1, 1]),
        ("C4", &[1, 1, 1, 1]),
        ("C5", &[1, 1, 1, 1, 1]),
        ("C6", &[1, 1, 1, 1, 1, 1]),
        ("S3", &[1, 1, 2]),
        ("D4", &[1, 1, 1, 1, 2]),
        ("Q8", &[1, 1, 1, 1, 2]),
        ("A4", &[1, 1, 1, 3]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("A5", &[1, 3, 3, 4, 5]),
    ];
    let mut bad = Vec::new();
    for &(name, degrees) in expected {
        let g = group(name);
        let t = CharacterTable::new(&g).unwrap();
        let mut d: Vec<u64> = (0..t.len()).map(|r| t.degree(r)).collect();
        d.sort();
        let ok = t.verify().is_ok()
            && t.verify_class_algebra(&g).is_ok()
            && d == degrees
            && t.len() == g.num_classes()
            && d.iter().map(|x| x * x).sum::<u64>() == g.order() as u64;
        let fs_ok = match name {
            "Q8" => (0..t.len()).all(|r| t.fs_indicator(r) == if t.degree(r) == 2 { -1 } else { 1 }),
            "S3" | "S4" | "C2" => (0..t.len()).all(|r| t.fs_indicator(r) == 1),
            "C3" => (1..t.len()).all(|r| t.fs_indicator(r) == 0),
            _ => true,
        };
        if !(ok && fs_ok) {
            bad.push(name);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: bad.is_empty() && secs < 10.0,
        detail: format!("{} tables, failures {:?}, {:.2}s", expected.len(), bad, secs),
    }
}

fn genus_totals(corpus: &[CoverDatum], tables: &[CharacterTable]) -> Outcome {
    let bad = corpus
        .iter()
        .zip(tables)
        .filter(|(d, t)| h0_character(d, t).unwrap().dimension(t) != d.total_genus() as u64)
        .count();
    Outcome { pass: bad == 0 && corpus.len() >= 200, detail: format!("{} data, {} mismatches", corpus.len(), bad) }
}

fn oracle_agreement(corpus: &[CoverDatum], tables: &[CharacterTable]) -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for (d, t) in corpus.iter().zip(tables) {
        if d.group().order() > 16 {
            continue;
        }
        checked += 1;
        let oracle = h1_chain_complex_oracle(d, t, 16).unwrap();
        if oracle != h1_character(d, t).unwrap() {
            bad += 1;
        }
    }
    Outcome { pass: bad == 0 && checked >= 200, detail: format!("{} data, {} mismatches", checked, bad) }
}

fn duality(corpus: &[CoverDatum], tables: &[CharacterTable]) -> Outcome {
    let bad = corpus
        .iter()
        .zip(tables)
        .filter(|(d, t)| {
            let h0 = h0_character(d, t).unwrap();
            h1_character(d, t).unwrap() != h0.add(&h0.dual(t))
        })
        .count();
    Outcome { pass: bad == 0, detail: format!("{} data, {} mismatches", corpus.len(), bad) }
}

fn endo_preconditions(corpus: &[CoverDatum], tables: &[CharacterTable]) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for (d, t) in corpus.iter().zip(tables) {
        if d.base_genus() < 3 {
            continue;
        }
        checked += 1;
        let r = check_theorem_endo(d, t).unwrap();
        if !(r.symplectic_mult_ok && r.dual_pairs_ok) {
            bad += 1;
        }
    }
    Outcome { pass: bad == 0 && checked > 0, detail: format!("{} data with base genus >= 3, {} failures", checked, bad) }
}

fn gn_instances() -> Vec<(&'static str, GnReport)> {
    let mut out = Vec::new();
    let mut run = |label, g: &Arc<FiniteGroup>, branch: Vec<usize>, n: &[usize]| {
        let t = CharacterTable::new(g).unwrap();
        let d = CoverDatum::new(g.clone(), vec![], branch).unwrap();
        out.push((label, check_theorem_gn(&d, &t, &g.subgroup(n)).unwrap()));
    };
    let g = group("C2xC2");
    let (z, m) = (g.generators()[0], g.generators()[1]);
    let zm = g.mul(z, m);
    run("C2xC2", &g, vec![z, z, zm, zm, z, z], &[m]);
    let g = group("C2xC2xC2");
    let (x, y, z) = (g.generators()[0], g.generators()[1], g.generators()[2]);
    run("C2^3", &g, vec![z, z, g.mul(z, x), g.mul(z, x), g.mul(z, y), g.mul(z, y)], &[x, y]);
    let g = group("D4");
    let (r, s) = (g.generators()[0], g.generators()[1]);
    let sr = g.mul(s, r);
    run("D4 (6 points)", &g, vec![s, s, sr, sr, s, s], &[r]);
    run("D4 (8 points)", &g, vec![s, s, s, s, sr, sr, sr, sr], &[r]);
    out
}

/// Returns the outcome and whether it has the recorded shape: hypotheses and
/// conclusion (i) hold; every constituent that splits satisfies the formula
/// and induction; some constituent nontrivial on N does not split.
fn theorem_gn() -> (Outcome, bool) {
    let reports = gn_instances();
    let literal = reports.iter().all(|(_, r)| {
        r.hypotheses_hold
            && r.conclusion_i == Some(true)
            && r.constituents.iter().all(|c| c.formula_holds && c.splits && c.induction_recovers)
    });
    let shape = reports.iter().all(|(_, r)| {
        r.hypotheses_hold
            && r.conclusion_i == Some(true)
            && r.conclusion_ii_split == Some(true)
            && r.conclusion_ii_all == Some(false)
    });
    let split: usize = reports.iter().map(|(_, r)| r.constituents.iter().filter(|c| c.splits).count()).sum();
    let unsplit: usize = reports.iter().map(|(_, r)| r.unsplit.len()).sum();
    let first = reports.iter().filter(|(_, r)| r.hypotheses_hold && r.conclusion_i == Some(true)).count();
    let labels: Vec<&str> = reports.iter().map(|r| r.0).collect();
    let detail = format!(
        "{} instances [{}]: hypotheses and conclusion (i) hold on {}; {} split constituents checked for formula and \
         induction; {} constituents nontrivial on N stay irreducible on N and miss the formula",
        reports.len(),
        labels.join(", "),
        first,
        split,
        unsplit
    );
    (Outcome { pass: literal, detail }, shape)
}

fn commutants() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let free = |g: &Arc<FiniteGroup>| {
        let (x, y) = (g.generators()[0], *g.generators().get(1).unwrap_or(&0));
        CoverDatum::new(g.clone(), vec![(x, 0), (y, 0)], vec![]).unwrap()
    };
    let cases: &[(&str, u64, u64, Option<u64>)] = &[("S3", 2, 1, None), ("C3", 1, 2, None), ("Q8", 2, 4, Some(2))];
    for &(name, degree, dim_d, schur) in cases {
        let g = group(name);
        let t = CharacterTable::new(&g).unwrap();
        let row = (0..t.len()).find(|&r| !t.is_trivial(r) && t.degree(r) == degree).unwrap();
        let orbit = t.orbit_of(row);
        let c = commutant_oracle(&free(&g), &t, orbit, 24).unwrap();
        let ok = c.division_algebra_dimension == Some(dim_d) && schur.is_none_or(|s| c.schur_index == Some(s));
        pass &= ok;
        parts.push(format!(
            "{} dim D {} s {}",
            name,
            c.division_algebra_dimension.map_or("?".into(), |x| x.to_string()),
            c.schur_index.map_or("?".into(), |x| x.to_string())
        ));
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn transvections(corpus: &[CoverDatum]) -> Outcome {
    let words = ["a1", "b1", "a1 b1", "a2", "a1 a2^-1", "b1 b2", "t1", "t1 t2", "t1 t2 t3", "a1 t1"];
    let mut orbits = 0;
    let mut bad = 0;
    let mut check = |d: &CoverDatum, m: &CoverModel, text: &str| {
        let Ok(word) = parse_curve_word(text, d.base_genus(), d.branch().len()) else { return };
        let orbit = match lift_curve(m, &word) {
            Ok(o) => o,
            Err(Error::NotIsotropic(_)) => return,
            Err(e) => panic!("{}", e),
        };
        orbits += 1;
        let span = RowEchelon::from_vectors(m.dim(), orbit.classes().cloned());
        let isotropic = span.basis().iter().all(|a| span.basis().iter().all(|b| m.pair(a, b) == int(0)));
        let t = transvection(m, &orbit).unwrap();
        let id = RatMatrix::identity(m.dim());
        let nil = &t - &id;
        let ok = isotropic
            && &(&t.transpose() * m.form()) * &t == *m.form()
            && m.actions().iter().all(|g| &t * g == g * &t)
            && (&nil * &nil).is_zero();
        if !ok {
            bad += 1;
        }
    };
    let small = corpus.iter().filter(|d| d.group().order() <= 8 && d.base_genus() <= 2 && d.branch().len() <= 4);
    for d in small {
        let m = CoverModel::new(d, DEFAULT_TOPOLOGY_CAP).unwrap();
        for w in words {
            check(d, &m, w);
        }
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for f in files {
        let doc = gcurve_cli::load_document(&f).unwrap();
        let job = doc.resolve(2000).unwrap();
        if job.datum.group().order() > DEFAULT_TOPOLOGY_CAP {
            continue;
        }
        let m = CoverModel::new(&job.datum, DEFAULT_TOPOLOGY_CAP).unwrap();
        for w in job.curves.values() {
            check(&job.datum, &m, w);
        }
    }
    Outcome { pass: bad == 0 && orbits > 0, detail: format!("{} lifted orbits, {} failures", orbits, bad) }
}

fn certificates() -> Outcome {
    let cert = |file: &str| match run_path(Command::Certify, &corpus_dir().join(file), &Overrides::default()).unwrap() {
        Report::Certify(c) => c.certificates.into_iter().next().unwrap(),
        _ => unreachable!(),
    };
    let five = cert("trivial-genus2.toml");
    let one = cert("trivial-single-curve.toml");
    Outcome {
        pass: five.verdict == "irreducible" && five.commutant_dimension == 1 && one.verdict == "inconclusive",
        detail: format!(
            "five curves: {} (commutant {}), one curve: {}",
            five.verdict, five.commutant_dimension, one.verdict
        ),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    let mut failed = Vec::new();
    let names = ["chartable", "geometry", "hodge", "sym2", "check-endo", "check-gn", "unitary", "lift", "twist", "certify"];
    for name in names {
        let mut runs = Vec::new();
        for i in 0..2 {
            let json = dir.path().join(format!("{}-{}.json", name, i));
            let out = Proc::new(env!("CARGO_BIN_EXE_gcurve"))
                .arg(name)
                .arg("--batch")
                .arg(corpus_dir())
                .arg("--json")
                .arg(&json)
                .output()
                .unwrap();
            if out.status.code() != Some(0) {
                failed.push(name);
            }
            runs.push((out.stdout, std::fs::read(&json).unwrap_or_default()));
        }
        if runs[0] != runs[1] {
            mismatched.push(name);
        }
    }
    Outcome {
        pass: mismatched.is_empty() && failed.is_empty(),
        detail: format!("{} subcommands over the corpus, mismatches {:?}, failures {:?}", names.len(), mismatched, failed),
    }
}

fn main() {
    let start = Instant::now();
    let corpus = random_corpus();
    let tables: Vec<CharacterTable> = corpus.iter().map(|d| CharacterTable::new(d.group()).unwrap()).collect();
    let (gn, gn_shape) = theorem_gn();
    let results = [
        ("character tables", character_tables()),
        ("holomorphic totals", genus_totals(&corpus, &tables)),
        ("chain complex oracle", oracle_agreement(&corpus, &tables)),
        ("duality", duality(&corpus, &tables)),
        ("endomorphism preconditions", endo_preconditions(&corpus, &tables)),
        ("index-two theorem", gn),
        ("commutant division algebras", commutants()),
        ("transvections", transvections(&corpus)),
        ("irreducibility certificates", certificates()),
        ("determinism", determinism()),
    ];
    let mut regressions = Vec::new();
    for (i, (name, o)) in results.iter().enumerate() {
        let k = i + 1;
        println!("criterion {:>2} {}: {} ({})", k, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        // criterion 6 is expected to fail with the recorded shape
        let expected = if k == 6 { !o.pass && gn_shape } else { o.pass };
        if !expected {
            regressions.push(k);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if !regressions.is_empty() {
        eprintln!("unexpected outcome for criteria {:?}", regressions);
        std::process::exit(1);
    }
}
