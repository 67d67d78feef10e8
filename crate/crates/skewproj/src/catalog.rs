//! The bundled example catalog: the two 4-variable classification
//! examples, commutative tables, and two constructed graded-equivalent
//! pairs (one with a formal generator) together with witness files.
//! Every entry is embedded in the binary and can be listed, shown, or
//! materialized to disk.

use crate::exactnum::GeneratorBasis;
use crate::paramfile::{parse_parameter_text, parse_witness_text, FileError, ParsedWitness};
use crate::skewalg::ParameterMatrix;
use std::io;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub json: &'static str,
    pub notes: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogWitness {
    pub name: &'static str,
    pub json: &'static str,
    pub notes: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "ex1-x",
        json: include_str!("../catalog/ex1-x.json"),
        notes: "4-variable table with omega_14 = 1/2 and all other entries 1. \
                Triple q-numbers: q_(123) = 1, q_(124) = q_(134) = 2. Point variety: \
                two hyperplanes and one line (case 2). Birationally equivalent to \
                ex1-xprime (see witness-ex1-birational), but their point varieties \
                differ, so the spaces are not isomorphic.",
    },
    CatalogEntry {
        name: "ex1-xprime",
        json: include_str!("../catalog/ex1-xprime.json"),
        notes: "Companion of ex1-x. Triple q-numbers: q_(123) = q_(134) = 1/2, \
                q_(124) = 2, q_(234) = 1/8. Point variety: six lines (case 4).",
    },
    CatalogEntry {
        name: "ex2-x",
        json: include_str!("../catalog/ex2-x.json"),
        notes: "4-variable table with q-numbers q_(123) = 1, q_(124) = 2, \
                q_(134) = 8, q_(234) = 4. Point variety: one hyperplane and three \
                lines (case 3). Graded-inequivalent to ex2-xprime yet birationally \
                equivalent to it with identical point varieties.",
    },
    CatalogEntry {
        name: "ex2-xprime",
        json: include_str!("../catalog/ex2-xprime.json"),
        notes: "Companion of ex2-x, q-numbers q_(123) = 1, q_(124) = 4, \
                q_(134) = 2, q_(234) = 1/2. The candidate matrix shipped as \
                witness-ex2-candidate does NOT satisfy the exact congruence \
                (B^T Q B = [[0,1,2],[-1,0,7],[-2,-7,0]] instead of the required \
                [[0,0,2],[0,0,1],[-2,-1,0]]); witness-ex2-birational is a verified \
                replacement. Equivalence also follows from the matching alternating \
                normal forms: divisors [1], rank 2 on both sides.",
    },
    CatalogEntry {
        name: "commutative-3",
        json: include_str!("../catalog/commutative-3.json"),
        notes: "All parameters 1: the commutative polynomial ring in 3 variables. \
                Point variety is all of P^2.",
    },
    CatalogEntry {
        name: "commutative-4",
        json: include_str!("../catalog/commutative-4.json"),
        notes: "All parameters 1 in 4 variables. Point variety is all of P^3 (case 1).",
    },
    CatalogEntry {
        name: "commutative-5",
        json: include_str!("../catalog/commutative-5.json"),
        notes: "All parameters 1 in 5 variables.",
    },
    CatalogEntry {
        name: "pair1-a",
        json: include_str!("../catalog/pair1-a.json"),
        notes: "Base of a constructed graded-equivalent pair: pair1-b is pair1-a \
                scaled by m = (1, 2, 1/4, -8) and permuted by sigma = (2 3 1 4). \
                witness-pair1-graded certifies the equivalence.",
    },
    CatalogEntry {
        name: "pair1-b",
        json: include_str!("../catalog/pair1-b.json"),
        notes: "Graded-equivalent partner of pair1-a; see witness-pair1-graded.",
    },
    CatalogEntry {
        name: "pair2-a",
        json: include_str!("../catalog/pair2-a.json"),
        notes: "Base of a constructed graded-equivalent pair over the formal \
                generator q (assumed multiplicatively independent of all primes). \
                pair2-b is pair2-a scaled by m = (1, q, 2q) and permuted by \
                sigma = (2 1 3); witness-pair2-graded certifies the equivalence.",
    },
    CatalogEntry {
        name: "pair2-b",
        json: include_str!("../catalog/pair2-b.json"),
        notes: "Graded-equivalent partner of pair2-a; see witness-pair2-graded.",
    },
];

pub const WITNESSES: &[CatalogWitness] = &[
    CatalogWitness {
        name: "witness-ex1-birational",
        json: include_str!("../catalog/witness-ex1-birational.json"),
        notes: "Verified birational witness for (ex1-x, ex1-xprime): \
                A = [[1,0,0],[0,-1,0],[-1,0,1]], det -1.",
    },
    CatalogWitness {
        name: "witness-ex2-candidate",
        json: include_str!("../catalog/witness-ex2-candidate.json"),
        notes: "Candidate matrix B = [[1,2,0],[0,1,1],[0,1,2]] for \
                (ex2-x, ex2-xprime). Fails the exact congruence check; kept for \
                reference. Use witness-ex2-birational instead.",
    },
    CatalogWitness {
        name: "witness-ex2-birational",
        json: include_str!("../catalog/witness-ex2-birational.json"),
        notes: "Verified birational witness for (ex2-x, ex2-xprime): \
                A = [[-1,1,0],[1,0,0],[0,0,1]], det -1.",
    },
    CatalogWitness {
        name: "witness-pair1-graded",
        json: include_str!("../catalog/witness-pair1-graded.json"),
        notes: "Graded witness for (pair1-a, pair1-b).",
    },
    CatalogWitness {
        name: "witness-pair2-graded",
        json: include_str!("../catalog/witness-pair2-graded.json"),
        notes: "Graded witness for (pair2-a, pair2-b).",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn witness(name: &str) -> Option<&'static CatalogWitness> {
    WITNESSES.iter().find(|w| w.name == name)
}

/// Parse a catalog entry against the given basis.
pub fn load(name: &str, basis: &mut GeneratorBasis) -> Result<ParameterMatrix, FileError> {
    let e =
        entry(name).ok_or_else(|| FileError::Schema(format!("no catalog entry named {name:?}")))?;
    Ok(parse_parameter_text(e.json, basis)?.0)
}

/// Parse a catalog witness against the given basis.
pub fn load_witness(name: &str, basis: &mut GeneratorBasis) -> Result<ParsedWitness, FileError> {
    let w = witness(name)
        .ok_or_else(|| FileError::Schema(format!("no catalog witness named {name:?}")))?;
    parse_witness_text(w.json, basis)
}

/// Write every catalog file (entries and witnesses) into `dir` as
/// `<name>.json`; returns the paths written.
pub fn write_all_to(dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for e in ENTRIES {
        let path = dir.join(format!("{}.json", e.name));
        std::fs::write(&path, e.json)?;
        out.push(path);
    }
    for w in WITNESSES {
        let path = dir.join(format!("{}.json", w.name));
        std::fs::write(&path, w.json)?;
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewalg::{check_graded_equivalence, verify_graded_witness};
    use crate::torus::verify_birational_witness;

    #[test]
    fn every_entry_parses() {
        for e in ENTRIES {
            let mut basis = GeneratorBasis::new();
            let m = load(e.name, &mut basis)
                .unwrap_or_else(|err| panic!("catalog entry {} failed to parse: {err}", e.name));
            assert!(m.size() >= 2);
            assert!(!e.notes.is_empty());
        }
        for w in WITNESSES {
            let mut basis = GeneratorBasis::new();
            load_witness(w.name, &mut basis)
                .unwrap_or_else(|err| panic!("catalog witness {} failed: {err}", w.name));
        }
        assert!(entry("no-such-entry").is_none());
    }

    #[test]
    fn shipped_graded_witnesses_verify() {
        for (a, b, w) in [
            ("pair1-a", "pair1-b", "witness-pair1-graded"),
            ("pair2-a", "pair2-b", "witness-pair2-graded"),
        ] {
            let mut basis = GeneratorBasis::new();
            let ma = load(a, &mut basis).unwrap();
            let mb = load(b, &mut basis).unwrap();
            let witness = match load_witness(w, &mut basis).unwrap() {
                ParsedWitness::Graded(w) => w,
                other => panic!("expected graded witness, got {}", other.kind()),
            };
            assert!(
                verify_graded_witness(&ma, &mb, &witness),
                "shipped witness {w} does not verify"
            );
            // The pair really is equivalent, independently of the file.
            assert!(check_graded_equivalence(&ma, &mb).unwrap().is_some());
        }
    }

    #[test]
    fn shipped_birational_witnesses_match_their_notes() {
        let mut basis = GeneratorBasis::new();
        let x = load("ex2-x", &mut basis).unwrap();
        let xp = load("ex2-xprime", &mut basis).unwrap();

        let candidate = match load_witness("witness-ex2-candidate", &mut basis).unwrap() {
            ParsedWitness::Birational(a) => a,
            _ => panic!("wrong kind"),
        };
        let candidate_ok = verify_birational_witness(&x, &xp, &candidate).unwrap();
        assert!(!candidate_ok, "candidate unexpectedly verifies");
        assert!(
            witness("witness-ex2-candidate")
                .unwrap()
                .notes
                .contains("Fails"),
            "notes must record the candidate's failure"
        );

        let replacement = match load_witness("witness-ex2-birational", &mut basis).unwrap() {
            ParsedWitness::Birational(a) => a,
            _ => panic!("wrong kind"),
        };
        assert!(verify_birational_witness(&x, &xp, &replacement).unwrap());

        let mut basis1 = GeneratorBasis::new();
        let x1 = load("ex1-x", &mut basis1).unwrap();
        let x1p = load("ex1-xprime", &mut basis1).unwrap();
        let w1 = match load_witness("witness-ex1-birational", &mut basis1).unwrap() {
            ParsedWitness::Birational(a) => a,
            _ => panic!("wrong kind"),
        };
        assert!(verify_birational_witness(&x1, &x1p, &w1).unwrap());
    }

    #[test]
    fn materializes_to_disk() {
        let dir = std::env::temp_dir().join(format!("skewproj-catalog-{}", std::process::id()));
        let paths = write_all_to(&dir).unwrap();
        assert_eq!(paths.len(), ENTRIES.len() + WITNESSES.len());
        for p in &paths {
            assert!(p.exists());
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
