#![no_main]

use libfuzzer_sys::fuzz_target;
use sqperm::codec::{decode, encode, DecodeMode, DecodeOutcome, MarkedWord};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(word) = text.parse::<MarkedWord>() else {
        return;
    };
    assert_eq!(word.to_string().parse::<MarkedWord>().unwrap(), word);
    for mode in DecodeMode::ALL {
        match decode(&word, mode) {
            DecodeOutcome::Success(cp) => assert_eq!(encode(&cp).unwrap(), word),
            DecodeOutcome::Failure(f) => assert!(f.stop_index <= word.len()),
            DecodeOutcome::InternalContradiction(msg) => panic!("{msg}"),
        }
    }
});
