//! Command-line front end. Every command prints one report (plain text
//! by default, `--json` for the serialized form) and exits with
//! 0 = affirmative/success, 1 = negative verdict, 2 = inconclusive,
//! 3 = usage or input error.

use crate::catalog;
use crate::exactnum::GeneratorBasis;
use crate::intmat::IntMatError;
use crate::paramfile::{
    load_parameter_file, load_witness_file, FileError, ParsedWitness, WitnessFile,
};
use crate::pointvar::{
    classify_p3, compare_point_varieties, oracle_point_variety, point_variety, PointError,
    PointVariety,
};
use crate::report::Report;
use crate::skewalg::{
    check_graded_equivalence, check_isomorphism, quiver_presentation, verify_graded_witness,
    verify_iso_witness, AlgebraError, GradedWitness, ParameterMatrix, Permutation,
};
use crate::torus::{
    check_birational, is_q_generic, is_torus_simple, q_exponent_form, skew_normal_form,
    verify_birational_witness, BirationalStatus, TorusError,
};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error(transparent)]
    Matrix(#[from] IntMatError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "skewproj",
    version,
    about = "Exact classification of skew polynomial algebras and their projective spaces"
)]
struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the report; only the exit code carries the verdict
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print all triple q-cyclic numbers of a parameter file
    #[command(name = "qnumbers")]
    Qnumbers { file: PathBuf },
    /// Decide graded isomorphism of two parameter files
    #[command(name = "check-iso")]
    CheckIso { a: PathBuf, b: PathBuf },
    /// Decide graded Morita equivalence of two parameter files
    #[command(name = "check-graded")]
    CheckGraded { a: PathBuf, b: PathBuf },
    /// Decide birational equivalence of the two projective spaces
    #[command(name = "check-birational")]
    CheckBirational {
        a: PathBuf,
        b: PathBuf,
        /// Entry bound for the fallback unimodular search
        #[arg(long, default_value_t = 2)]
        search_bound: i64,
    },
    /// Re-verify a witness file against two parameter files
    #[command(name = "verify-witness")]
    VerifyWitness {
        #[arg(long, value_enum)]
        kind: WitnessKindArg,
        a: PathBuf,
        b: PathBuf,
        witness: PathBuf,
    },
    /// Compute the point variety of a parameter file
    #[command(name = "point-variety")]
    PointVariety {
        file: PathBuf,
        /// Use the probabilistic rank oracle instead of the formula
        #[arg(long)]
        oracle: bool,
        /// Samples per coordinate subset (oracle only)
        #[arg(long, default_value_t = 5)]
        trials: u32,
        /// Random seed (oracle only)
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Classify the point variety of a 4-variable algebra (cases 1-4)
    #[command(name = "classify-p3")]
    ClassifyP3 { file: PathBuf },
    /// Compare two point varieties up to coordinate permutation
    #[command(name = "compare-point-varieties")]
    ComparePointVarieties { a: PathBuf, b: PathBuf },
    /// Simplicity of the quantum torus (of omega, or of the q-matrix)
    #[command(name = "torus-simple")]
    TorusSimple {
        file: PathBuf,
        /// Test the torus of the q-matrix instead of omega itself
        #[arg(long)]
        of_q: bool,
    },
    /// Print the Beilinson-quiver presentation of B_omega
    #[command(name = "quiver")]
    Quiver { file: PathBuf },
    /// List or show the bundled example catalog
    #[command(name = "catalog")]
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogCmd>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List catalog entries and witnesses
    List,
    /// Print one catalog file together with its notes
    Show { name: String },
    /// Write every catalog file into a directory as <name>.json
    Export { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKindArg {
    Iso,
    Graded,
    Birational,
}

impl WitnessKindArg {
    fn as_str(&self) -> &'static str {
        match self {
            WitnessKindArg::Iso => "iso",
            WitnessKindArg::Graded => "graded",
            WitnessKindArg::Birational => "birational",
        }
    }
}

/// Entry point used by both `main` and the tests. Parses `args`
/// (including the program name), writes the report to `out` and error
/// text to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_AFFIRMATIVE
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((report, code)) => {
            if !cli.quiet {
                let text = if cli.json {
                    let mut s = report.to_json();
                    s.push('\n');
                    s
                } else {
                    report.render_human()
                };
                let _ = out.write_all(text.as_bytes());
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn load_one(path: &Path) -> Result<(ParameterMatrix, GeneratorBasis), CliError> {
    let mut basis = GeneratorBasis::new();
    let (m, _) = load_parameter_file(path, &mut basis)?;
    Ok((m, basis))
}

fn load_two(
    a: &Path,
    b: &Path,
) -> Result<(ParameterMatrix, ParameterMatrix, GeneratorBasis), CliError> {
    // One shared basis: the second file extends what the first declared,
    // so exponent vectors from both refer to the same generators.
    let mut basis = GeneratorBasis::new();
    let (ma, _) = load_parameter_file(a, &mut basis)?;
    let (mb, _) = load_parameter_file(b, &mut basis)?;
    Ok((ma, mb, basis))
}

fn permutation_value(sigma: &Permutation) -> Value {
    json!(sigma.to_one_based())
}

fn graded_witness_value(w: &GradedWitness, basis: &GeneratorBasis) -> Value {
    let file = WitnessFile {
        kind: "graded".into(),
        sigma: Some(w.sigma.to_one_based()),
        m: Some(w.scale.iter().map(|m| m.render(basis)).collect()),
        a: None,
    };
    serde_json::to_value(file).expect("witness serialization")
}

fn iso_witness_value(sigma: &Permutation) -> Value {
    let file = WitnessFile {
        kind: "iso".into(),
        sigma: Some(sigma.to_one_based()),
        m: None,
        a: None,
    };
    serde_json::to_value(file).expect("witness serialization")
}

fn birational_witness_value(a: &crate::intmat::IntMat) -> Value {
    let file = WitnessFile {
        kind: "birational".into(),
        sigma: None,
        m: None,
        a: Some(a.to_rows()),
    };
    serde_json::to_value(file).expect("witness serialization")
}

fn variety_details(report: &mut Report, v: &PointVariety) {
    let comps: Vec<Vec<usize>> = v
        .sorted_components()
        .iter()
        .map(|c| c.iter().map(|i| i + 1).collect())
        .collect();
    report.detail("components", json!(comps));
    report.detail("dimension_multiset", json!(v.dimension_multiset()));
}

fn execute(cmd: &Command) -> Result<(Report, i32), CliError> {
    match cmd {
        Command::Qnumbers { file } => {
            let (m, basis) = load_one(file)?;
            let mut report = Report::new("qnumbers", &[path_str(file)]);
            let q = m.all_triple_qnumbers()?;
            for ((i, j, k), value) in &q {
                report.detail(
                    &format!("q({},{},{})", i + 1, j + 1, k + 1),
                    value.render(&basis),
                );
            }
            report.verdict = format!("{} triple q-numbers", q.len());
            Ok((report, EXIT_AFFIRMATIVE))
        }
        Command::CheckIso { a, b } => {
            let (ma, mb, _) = load_two(a, b)?;
            let mut report = Report::new("check-iso", &[path_str(a), path_str(b)]);
            match check_isomorphism(&ma, &mb)? {
                Some(sigma) => {
                    report.verdict = "ISOMORPHIC".into();
                    report.witness = Some(iso_witness_value(&sigma));
                    Ok((report, EXIT_AFFIRMATIVE))
                }
                None => {
                    report.verdict = "NOT_ISOMORPHIC".into();
                    Ok((report, EXIT_NEGATIVE))
                }
            }
        }
        Command::CheckGraded { a, b } => {
            let (ma, mb, basis) = load_two(a, b)?;
            let mut report = Report::new("check-graded", &[path_str(a), path_str(b)]);
            match check_graded_equivalence(&ma, &mb)? {
                Some(w) => {
                    report.verdict = "EQUIVALENT".into();
                    report.witness = Some(graded_witness_value(&w, &basis));
                    Ok((report, EXIT_AFFIRMATIVE))
                }
                None => {
                    report.verdict = "NOT_EQUIVALENT".into();
                    report.detail("note", "no permutation admits a compatible scale vector");
                    Ok((report, EXIT_NEGATIVE))
                }
            }
        }
        Command::CheckBirational { a, b, search_bound } => {
            let (ma, mb, basis) = load_two(a, b)?;
            let mut report = Report::new("check-birational", &[path_str(a), path_str(b)]);
            let verdict = check_birational(&ma, &mb, *search_bound)?;
            report.verdict = verdict.status.as_str().into();
            report.detail("generic", json!(verdict.generic));
            report.detail("note", verdict.note.clone());
            for (label, m) in [("a", &ma), ("b", &mb)] {
                let qf = q_exponent_form(m)?;
                for g in qf.generator_indices() {
                    let nf = skew_normal_form(&qf.matrix_for(g))?;
                    report.detail(
                        &format!("normal_form_{label}[{}]", basis.generator(g)),
                        json!({"divisors": nf.divisors, "rank": nf.rank}),
                    );
                }
            }
            if let Some(w) = &verdict.witness {
                report.witness = Some(birational_witness_value(w));
            }
            let code = match verdict.status {
                BirationalStatus::Equivalent => EXIT_AFFIRMATIVE,
                BirationalStatus::NotEquivalent => EXIT_NEGATIVE,
                BirationalStatus::Unknown => EXIT_UNKNOWN,
            };
            Ok((report, code))
        }
        Command::VerifyWitness {
            kind,
            a,
            b,
            witness,
        } => {
            let mut basis = GeneratorBasis::new();
            let (ma, _) = load_parameter_file(a, &mut basis)?;
            let (mb, _) = load_parameter_file(b, &mut basis)?;
            let parsed = load_witness_file(witness, &mut basis)?;
            if parsed.kind() != kind.as_str() {
                return Err(CliError::Usage(format!(
                    "witness file has kind {:?}, but --kind {} was requested",
                    parsed.kind(),
                    kind.as_str()
                )));
            }
            let mut report = Report::new(
                "verify-witness",
                &[path_str(a), path_str(b), path_str(witness)],
            );
            report.detail("kind", kind.as_str());
            let valid = match &parsed {
                ParsedWitness::Iso(sigma) => verify_iso_witness(&ma, &mb, sigma),
                ParsedWitness::Graded(w) => verify_graded_witness(&ma, &mb, w),
                ParsedWitness::Birational(m) => verify_birational_witness(&ma, &mb, m)?,
            };
            report.verdict = if valid { "VALID" } else { "INVALID" }.into();
            Ok((
                report,
                if valid {
                    EXIT_AFFIRMATIVE
                } else {
                    EXIT_NEGATIVE
                },
            ))
        }
        Command::PointVariety {
            file,
            oracle,
            trials,
            seed,
        } => {
            let (m, _) = load_one(file)?;
            let mut report = Report::new("point-variety", &[path_str(file)]);
            let v = if *oracle {
                report.detail("method", "oracle");
                report.detail("trials", json!(trials));
                report.detail("seed", json!(seed));
                oracle_point_variety(&m, *seed, *trials)?
            } else {
                report.detail("method", "formula");
                point_variety(&m)?
            };
            report.verdict = v.to_string();
            variety_details(&mut report, &v);
            Ok((report, EXIT_AFFIRMATIVE))
        }
        Command::ClassifyP3 { file } => {
            let (m, basis) = load_one(file)?;
            let mut report = Report::new("classify-p3", &[path_str(file)]);
            let case = classify_p3(&m)?;
            report.verdict = format!("case {}", case.case_id);
            report.detail("description", case.description);
            for (label, cycle) in [
                ("q(1,2,3)", [0usize, 1, 2]),
                ("q(1,2,4)", [0, 1, 3]),
                ("q(1,3,4)", [0, 2, 3]),
                ("q(2,3,4)", [1, 2, 3]),
            ] {
                report.detail(label, m.q_cycle(&cycle)?.render(&basis));
            }
            Ok((report, EXIT_AFFIRMATIVE))
        }
        Command::ComparePointVarieties { a, b } => {
            let (ma, mb, _) = load_two(a, b)?;
            let mut report = Report::new("compare-point-varieties", &[path_str(a), path_str(b)]);
            let va = point_variety(&ma)?;
            let vb = point_variety(&mb)?;
            report.detail("variety_a", va.to_string());
            report.detail("variety_b", vb.to_string());
            report.detail("dimension_multiset_a", json!(va.dimension_multiset()));
            report.detail("dimension_multiset_b", json!(vb.dimension_multiset()));
            match compare_point_varieties(&va, &vb)? {
                Some(pi) => {
                    report.verdict = "MATCH".into();
                    report.detail("permutation", permutation_value(&pi));
                    Ok((report, EXIT_AFFIRMATIVE))
                }
                None => {
                    report.verdict = "NO_MATCH".into();
                    report.detail(
                        "note",
                        "no coordinate permutation maps one component family onto the other",
                    );
                    Ok((report, EXIT_NEGATIVE))
                }
            }
        }
        Command::TorusSimple { file, of_q } => {
            let (m, _) = load_one(file)?;
            let mut report = Report::new("torus-simple", &[path_str(file)]);
            let simple = if *of_q {
                report.detail("torus", "q-matrix");
                is_q_generic(&m)?
            } else {
                report.detail("torus", "omega");
                is_torus_simple(&m)?
            };
            report.verdict = if simple { "SIMPLE" } else { "NOT_SIMPLE" }.into();
            Ok((
                report,
                if simple {
                    EXIT_AFFIRMATIVE
                } else {
                    EXIT_NEGATIVE
                },
            ))
        }
        Command::Quiver { file } => {
            let (m, _) = load_one(file)?;
            let mut report = Report::new("quiver", &[path_str(file)]);
            let q = quiver_presentation(&m);
            report.verdict = format!(
                "{} vertices, {} arrows, {} relations",
                q.vertex_count,
                q.arrows.len(),
                q.relations.len()
            );
            report.detail("vertex_count", json!(q.vertex_count));
            report.detail("arrow_count", json!(q.arrows.len()));
            report.detail("relation_count", json!(q.relations.len()));
            report.body = Some(q.to_string());
            Ok((report, EXIT_AFFIRMATIVE))
        }
        Command::Catalog { action } => match action {
            None | Some(CatalogCmd::List) => {
                let mut report = Report::new("catalog", &[]);
                let entries: Vec<&str> = catalog::ENTRIES.iter().map(|e| e.name).collect();
                let witnesses: Vec<&str> = catalog::WITNESSES.iter().map(|w| w.name).collect();
                report.verdict =
                    format!("{} entries, {} witnesses", entries.len(), witnesses.len());
                report.detail("entries", json!(entries));
                report.detail("witnesses", json!(witnesses));
                let mut body = String::new();
                for e in catalog::ENTRIES {
                    body.push_str(&format!("{}\n", e.name));
                }
                for w in catalog::WITNESSES {
                    body.push_str(&format!("{}\n", w.name));
                }
                report.body = Some(body);
                Ok((report, EXIT_AFFIRMATIVE))
            }
            Some(CatalogCmd::Show { name }) => {
                let mut report = Report::new("catalog", std::slice::from_ref(name));
                if let Some(e) = catalog::entry(name) {
                    report.verdict = "OK".into();
                    report.detail("name", e.name);
                    report.detail("notes", e.notes);
                    report.detail(
                        "file",
                        serde_json::from_str::<Value>(e.json)
                            .map_err(|err| FileError::Json(err.to_string()))?,
                    );
                    report.body = Some(e.json.to_string());
                    Ok((report, EXIT_AFFIRMATIVE))
                } else if let Some(w) = catalog::witness(name) {
                    report.verdict = "OK".into();
                    report.detail("name", w.name);
                    report.detail("notes", w.notes);
                    report.detail(
                        "file",
                        serde_json::from_str::<Value>(w.json)
                            .map_err(|err| FileError::Json(err.to_string()))?,
                    );
                    report.body = Some(w.json.to_string());
                    Ok((report, EXIT_AFFIRMATIVE))
                } else {
                    Err(CliError::Usage(format!(
                        "no catalog entry or witness named {name:?}"
                    )))
                }
            }
            Some(CatalogCmd::Export { dir }) => {
                let mut report = Report::new("catalog", &[path_str(dir)]);
                let paths = catalog::write_all_to(dir).map_err(|e| FileError::Io {
                    path: path_str(dir),
                    message: e.to_string(),
                })?;
                report.verdict = format!("wrote {} files", paths.len());
                let names: Vec<String> = paths
                    .iter()
                    .map(|p| {
                        p.file_name()
                            .unwrap_or_default()
                            .to_string_lossy()
                            .into_owned()
                    })
                    .collect();
                report.detail("files", json!(names));
                Ok((report, EXIT_AFFIRMATIVE))
            }
        },
    }
}
