//! Replays the checked-in fuzz seeds with the same assertions as the fuzz
//! targets, so the corpus stays meaningful without a fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

use sqperm::codec::{decode, encode, DecodeMode, DecodeOutcome, MarkedWord};
use sqperm::perm::ColoredPermutation;
use sqperm::permutomino::{parse_points, phi, phi_inverse, validate_permutomino, Permutomino};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds for {target}");
    files.into_iter().map(|f| fs::read(f).unwrap()).collect()
}

#[test]
fn parse_permutation_seeds() {
    let mut parsed = 0;
    for data in seeds("parse_permutation") {
        let Ok(cp) = String::from_utf8_lossy(&data).parse::<ColoredPermutation>() else {
            continue;
        };
        parsed += 1;
        assert_eq!(cp.to_string().parse::<ColoredPermutation>().unwrap(), cp);
        if let Ok(w) = encode(&cp) {
            if cp.colored().is_empty() {
                assert_eq!(decode(&w, DecodeMode::Square).success(), Some(&cp));
            }
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn decode_word_seeds() {
    for data in seeds("decode_word") {
        let Ok(w) = String::from_utf8_lossy(&data).parse::<MarkedWord>() else {
            continue;
        };
        for mode in DecodeMode::ALL {
            match decode(&w, mode) {
                DecodeOutcome::Success(cp) => assert_eq!(encode(&cp).unwrap(), w),
                DecodeOutcome::Failure(f) => assert!(f.stop_index <= w.len()),
                DecodeOutcome::InternalContradiction(msg) => panic!("{msg}"),
            }
        }
    }
}

#[test]
fn parse_permutomino_seeds() {
    let mut valid = 0;
    for data in seeds("parse_permutomino") {
        let Ok(points) = parse_points(&String::from_utf8_lossy(&data)) else {
            continue;
        };
        let ok = validate_permutomino(&points).is_ok();
        match Permutomino::new(points) {
            Ok(p) => {
                assert!(ok);
                valid += 1;
                assert_eq!(phi_inverse(&phi(&p).unwrap()).unwrap(), p);
            }
            Err(errors) => assert!(!ok && !errors.is_empty()),
        }
    }
    assert!(valid >= 2);
}

#[test]
fn json_marked_word_seeds() {
    for data in seeds("json_marked_word") {
        let Ok(w) = serde_json::from_slice::<MarkedWord>(&data) else {
            continue;
        };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<MarkedWord>(&json).unwrap(), w);
        if let Some(cp) = decode(&w, DecodeMode::Square).success() {
            assert_eq!(encode(cp).unwrap(), w);
        }
    }
}
