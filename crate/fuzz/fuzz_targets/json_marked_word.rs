#![no_main]

use libfuzzer_sys::fuzz_target;
use sqperm::codec::{decode, encode, DecodeMode, MarkedWord};

fuzz_target!(|data: &[u8]| {
    let Ok(word) = serde_json::from_slice::<MarkedWord>(data) else {
        return;
    };
    let json = serde_json::to_string(&word).unwrap();
    assert_eq!(serde_json::from_str::<MarkedWord>(&json).unwrap(), word);
    if let Some(cp) = decode(&word, DecodeMode::Square).success() {
        assert_eq!(encode(cp).unwrap(), word);
    }
});
