#![no_main]

use libfuzzer_sys::fuzz_target;
use sqperm::permutomino::{parse_points, phi, phi_inverse, validate_permutomino, Permutomino};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(points) = parse_points(text) else {
        return;
    };
    let valid = validate_permutomino(&points).is_ok();
    match Permutomino::new(points) {
        Ok(p) => {
            assert!(valid);
            let cp = phi(&p).unwrap();
            assert_eq!(phi_inverse(&cp).unwrap(), p);
        }
        Err(errors) => assert!(!valid && !errors.is_empty()),
    }
});
