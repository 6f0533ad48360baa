//! Batch front end for `gcurve-core`: one TOML document per job, one report
//! per subcommand, exit codes by error family.

pub mod input;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use gcurve_core::group::{CharacterTable, DEFAULT_GROUP_CAP};
use gcurve_core::hodge::{check_theorem_endo, check_theorem_gn, h0_character, h1_chain_complex_oracle, h1_character, sym2_report};
use gcurve_core::linalg::{fmt_rational, int, RatMatrix, RowEchelon};
use gcurve_core::topology::{
    certify, isotypical_image_test, lift_curve, parse_curve_word, transvection, CoverModel, MultiTwistOrbit,
    DEFAULT_TOPOLOGY_CAP,
};
use gcurve_core::unitary::isotype_report;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use input::{load_document, parse_document, Job, JobDocument};
pub use report::Report;

/// Oracle cap for `hodge` and `unitary`; the topology commands use
/// [`DEFAULT_TOPOLOGY_CAP`].
pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] gcurve_core::Error),
}

impl CliError {
    /// 1 validation, 2 cap exceeded, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => 2,
            CliError::Core(e) if e.is_invariant() => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Chartable,
    Geometry,
    Hodge,
    Sym2,
    CheckEndo,
    CheckGn,
    Unitary,
    Lift,
    Twist,
    Certify,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Chartable,
        Command::Geometry,
        Command::Hodge,
        Command::Sym2,
        Command::CheckEndo,
        Command::CheckGn,
        Command::Unitary,
        Command::Lift,
        Command::Twist,
        Command::Certify,
    ];

    fn is_topological(self) -> bool {
        matches!(self, Command::Lift | Command::Twist | Command::Certify)
    }
}

#[derive(Debug, Parser)]
#[command(name = "gcurve", about = "Representation theory of finite group actions on curves")]
pub struct Cli {
    pub command: Command,
    /// Job document (TOML).
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    pub input: Option<PathBuf>,
    /// Directory of job documents, processed concurrently.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub cap_group: Option<usize>,
    #[arg(long)]
    pub cap_oracle: Option<usize>,
    /// Subgroup name for `check-gn`; `G` is the whole group, the default
    /// when the document defines none.
    #[arg(long)]
    pub subgroup: Option<String>,
    /// Rational class for `certify`; all classes when absent.
    #[arg(long)]
    pub class: Option<usize>,
}

/// Flags that override the document's `[options]`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cap_group: Option<usize>,
    pub cap_oracle: Option<usize>,
    pub subgroup: Option<String>,
    pub class: Option<usize>,
}

impl From<&Cli> for Overrides {
    fn from(c: &Cli) -> Self {
        Overrides { cap_group: c.cap_group, cap_oracle: c.cap_oracle, subgroup: c.subgroup.clone(), class: c.class }
    }
}

pub fn run_document(command: Command, doc: &JobDocument, ov: &Overrides) -> Result<Report, CliError> {
    let cap_group = ov.cap_group.or(doc.options.cap_group).unwrap_or(DEFAULT_GROUP_CAP);
    let job = doc.resolve(cap_group)?;
    let default_oracle = if command.is_topological() { DEFAULT_TOPOLOGY_CAP } else { DEFAULT_ORACLE_CAP };
    let cap_oracle = ov.cap_oracle.or(job.options.cap_oracle).unwrap_or(default_oracle);
    let datum = &job.datum;
    let g = datum.group();
    let table = CharacterTable::new(g)?;
    let report = match command {
        Command::Chartable => Report::Chartable(chartable(g, &table)),
        Command::Geometry => Report::Geometry(datum.geometry()),
        Command::Hodge => {
            let h0 = h0_character(datum, &table)?;
            let h1 = h1_character(datum, &table)?;
            let duality_holds = h1 == h0.add(&h0.dual(&table));
            let oracle = if g.order() <= cap_oracle {
                Some(h1_chain_complex_oracle(datum, &table, cap_oracle)?.multiplicities)
            } else {
                None
            };
            let oracle_agrees = oracle.as_ref().map(|o| *o == h1.multiplicities);
            Report::Hodge(report::HodgeReport {
                total_genus: datum.total_genus(),
                degrees: (0..table.len()).map(|r| table.degree(r)).collect(),
                h0: h0.multiplicities,
                h1: h1.multiplicities,
                duality_holds,
                oracle,
                oracle_agrees,
            })
        }
        Command::Sym2 => {
            let h0 = h0_character(datum, &table)?;
            let sym2 = sym2_report(&table, &h0)?;
            Report::Sym2(report::Sym2Output { h0: h0.multiplicities, sym2 })
        }
        Command::CheckEndo => Report::CheckEndo(check_theorem_endo(datum, &table)?),
        Command::CheckGn => {
            let name = ov
                .subgroup
                .clone()
                .or_else(|| job.options.subgroup.clone())
                .or_else(|| match job.subgroups.len() {
                    0 => Some("G".to_string()),
                    1 => job.subgroups.keys().next().cloned(),
                    _ => None,
                })
                .ok_or_else(|| CliError::Input("check-gn needs a subgroup: pass --subgroup or set options.subgroup".into()))?;
            let n = match job.subgroups.get(&name) {
                Some(n) => n.clone(),
                None if name == "G" => g.whole(),
                None => return Err(CliError::Input(format!("subgroups.{}: not defined", name))),
            };
            Report::CheckGn(report::GnOutput { subgroup: name, result: check_theorem_gn(datum, &table, &n)? })
        }
        Command::Unitary => Report::Unitary(isotype_report(datum, &table, Some(cap_oracle))?),
        Command::Lift | Command::Twist | Command::Certify => {
            let model = CoverModel::new(datum, cap_oracle)?;
            let mut lifted = Vec::new();
            for (name, word) in &job.curves {
                let letters = parse_curve_word(word, datum.base_genus(), datum.branch().len())
                    .map_err(|e| CliError::Input(format!("curves.{}: {}", name, e)))?;
                lifted.push((name.clone(), word.clone(), lift_curve(&model, &letters)?));
            }
            match command {
                Command::Lift => Report::Lift(lift(&model, &lifted)),
                Command::Twist => Report::Twist(twist(&model, &table, &lifted)?),
                _ => {
                    let orbits: Vec<MultiTwistOrbit> = lifted.iter().map(|l| l.2.clone()).collect();
                    let class = ov.class.or(job.options.class);
                    let classes: Vec<usize> = match class {
                        Some(c) => vec![c],
                        None => (0..table.galois_orbits().len()).collect(),
                    };
                    let certificates = classes
                        .into_iter()
                        .map(|c| certify(&model, &table, &orbits, c))
                        .collect::<Result<Vec<_>, _>>()?;
                    Report::Certify(report::CertifyReport { curves: lifted.into_iter().map(|l| l.0).collect(), certificates })
                }
            }
        }
    };
    Ok(report)
}

pub fn run_path(command: Command, path: &Path, ov: &Overrides) -> Result<Report, CliError> {
    run_document(command, &load_document(path)?, ov)
}

fn chartable(g: &gcurve_core::group::FiniteGroup, table: &CharacterTable) -> report::ChartableReport {
    let cls = g.classes();
    report::ChartableReport {
        group_order: g.order(),
        exponent: table.exponent(),
        classes: (0..cls.len())
            .map(|c| report::ClassInfo {
                representative: g.perm(cls.representatives[c]).to_string(),
                size: cls.sizes[c],
                element_order: g.element_order(cls.representatives[c]),
            })
            .collect(),
        characters: table
            .rows()
            .iter()
            .map(|row| report::CharacterRow {
                degree: row.degree,
                indicator: row.fs,
                dual: row.dual,
                values: row.values.iter().map(|v| v.to_string()).collect(),
            })
            .collect(),
        rational_classes: table.galois_orbits().iter().map(|o| o.rows.clone()).collect(),
    }
}

fn lift(model: &CoverModel, lifted: &[(String, String, MultiTwistOrbit)]) -> report::LiftReport {
    let g = model.group();
    let curves = lifted
        .iter()
        .map(|(name, word, orbit)| {
            let span = RowEchelon::from_vectors(model.dim(), orbit.classes().cloned());
            let isotropic = orbit.classes().all(|a| orbit.classes().all(|b| model.pair(a, b) == int(0)));
            report::LiftedCurve {
                name: name.clone(),
                word: word.clone(),
                monodromy: g.perm(orbit.monodromy).to_string(),
                degree: orbit.degree,
                components: orbit
                    .components
                    .iter()
                    .map(|c| report::LiftedComponent {
                        coset: c.coset.clone(),
                        class: c.class.iter().map(fmt_rational).collect(),
                    })
                    .collect(),
                span_rank: span.rank(),
                isotropic,
            }
        })
        .collect();
    report::LiftReport { homology_rank: model.dim(), curves }
}

fn twist(
    model: &CoverModel,
    table: &CharacterTable,
    lifted: &[(String, String, MultiTwistOrbit)],
) -> Result<report::TwistReport, CliError> {
    let n = model.dim();
    let id = RatMatrix::identity(n);
    let omega = model.form();
    let mut twists = Vec::new();
    for (name, word, orbit) in lifted {
        let t = transvection(model, orbit)?;
        let d = &t - &id;
        twists.push(report::TwistEntry {
            name: name.clone(),
            word: word.clone(),
            components: orbit.components.len(),
            matrix: t.row_vecs().iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
            symplectic: &(&t.transpose() * omega) * &t == *omega,
            commutes_with_group: model.actions().iter().all(|m| &t * m == m * &t),
            square_zero: (&d * &d).is_zero(),
            isotypical_image: (0..table.galois_orbits().len())
                .map(|c| isotypical_image_test(model, orbit, table, c).nonzero)
                .collect(),
        });
    }
    Ok(report::TwistReport { homology_rank: n, twists })
}

/// One job of a batch run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    pub report: Option<Report>,
    pub error: Option<String>,
}

/// Every `*.toml` in `dir`, sorted by file name, run in parallel.
pub fn run_batch(command: Command, dir: &Path, ov: &Overrides) -> Result<Vec<BatchEntry>, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {}", dir.display(), e)))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files
        .par_iter()
        .map(|p| {
            let file = p.file_name().unwrap().to_string_lossy().into_owned();
            match run_path(command, p, ov) {
                Ok(r) => BatchEntry { file, exit_code: 0, report: Some(r), error: None },
                Err(e) => BatchEntry { file, exit_code: e.exit_code(), report: None, error: Some(e.to_string()) },
            }
        })
        .collect())
}

/// Text for stdout, text for stderr and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Outcome {
    let ov = Overrides::from(cli);
    let write_json = |value: &dyn erased::Json| -> Result<(), CliError> {
        if let Some(path) = &cli.json {
            std::fs::write(path, value.to_json()).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
        }
        Ok(())
    };
    if let Some(dir) = &cli.batch {
        let entries = match run_batch(cli.command, dir, &ov) {
            Ok(e) => e,
            Err(e) => return Outcome { stdout: String::new(), stderr: format!("error: {}\n", e), code: e.exit_code() },
        };
        let mut stdout = String::new();
        let mut stderr = String::new();
        for e in &entries {
            stdout.push_str(&format!("== {} ==\n", e.file));
            match (&e.report, &e.error) {
                (Some(r), _) => stdout.push_str(&r.render()),
                (_, Some(err)) => {
                    stdout.push_str(&format!("error (exit {}): {}\n", e.exit_code, err));
                    stderr.push_str(&format!("{}: {}\n", e.file, err));
                }
                _ => {}
            }
        }
        let mut code = entries.iter().map(|e| e.exit_code).max().unwrap_or(0);
        if let Err(e) = write_json(&entries) {
            stderr.push_str(&format!("error: {}\n", e));
            code = code.max(e.exit_code());
        }
        return Outcome { stdout, stderr, code };
    }
    let path = cli.input.as_ref().expect("clap requires an input without --batch");
    match run_path(cli.command, path, &ov).and_then(|r| write_json(&r).map(|_| r)) {
        Ok(r) => Outcome { stdout: r.render(), stderr: String::new(), code: 0 },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e), code: e.exit_code() },
    }
}

mod erased {
    pub trait Json {
        fn to_json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn to_json(&self) -> String {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}
