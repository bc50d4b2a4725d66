//! Runs the checked-in fuzz seed corpora through the same properties the
//! fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use wg_core::cumulants::{cumulants_to_moments, moments_to_cumulants, MomentFunctional, Species};
use wg_core::{ExactScalar, SetPartition, Word};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn partition_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_partition") {
        if let Ok(pi) = text.parse::<SetPartition>() {
            accepted += 1;
            assert_eq!(pi.to_string(), text, "{name}");
        }
    }
    assert!(accepted >= 4);
    assert!("2,1|3".parse::<SetPartition>().is_err());
}

#[test]
fn rational_seeds() {
    for (name, text) in seeds("parse_rational") {
        if let Ok(q) = text.parse::<ExactScalar>() {
            assert_eq!(q.to_string().parse::<ExactScalar>().unwrap(), q, "{name}");
        }
    }
    assert!("1/0".parse::<ExactScalar>().is_err());
}

#[test]
fn word_seeds() {
    for (name, text) in seeds("parse_word") {
        if let Ok(w) = text.parse::<Word>() {
            assert_eq!(w.to_string().parse::<Word>().unwrap(), w, "{name}");
        }
    }
}

#[test]
fn moment_file_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_moment_file") {
        let Ok(m) = MomentFunctional::from_json_str(&text) else { continue };
        accepted += 1;
        for species in [Species::Classical, Species::Free] {
            let c = moments_to_cumulants(species, &m).unwrap();
            assert_eq!(cumulants_to_moments(&c).unwrap(), m, "{name} {species}");
        }
    }
    assert!(accepted >= 2);
}
