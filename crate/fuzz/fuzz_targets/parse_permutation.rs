#![no_main]

use libfuzzer_sys::fuzz_target;
use sqperm::codec::{decode, encode, DecodeMode};
use sqperm::perm::ColoredPermutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cp) = text.parse::<ColoredPermutation>() else {
        return;
    };
    assert_eq!(cp.to_string().parse::<ColoredPermutation>().unwrap(), cp);
    if let Ok(word) = encode(&cp) {
        let mode = if cp.colored().is_empty() {
            DecodeMode::Square
        } else {
            DecodeMode::Permutomino
        };
        if mode == DecodeMode::Square || !cp.perm().is_co_decomposable() {
            assert_eq!(decode(&word, mode).success(), Some(&cp));
        }
    }
});
