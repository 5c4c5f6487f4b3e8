use std::collections::BTreeSet;

use proptest::prelude::*;
use sqperm::codec::{decode, decode_with_stats, encode, DecodeMode, DecodeOutcome, MarkedWord};
use sqperm::oracle::{
    all_marked_words, brute_enumerate, for_each_permutation, naive_records, refined_histogram_via_codes,
    brute_refined_histogram, OracleItem,
};
use sqperm::perm::{
    classify_records, colored_subclass_report, contains_any_pattern, free_fixed_points, square_basis,
    subclass_report, transform, triangular_basis, ColoredPermutation, Corner, Permutation, Symmetry,
};
use sqperm::permutomino::{phi, phi_inverse, side_profile, Permutomino};
use sqperm::sampler::{sample_marked_word, sample_object, RngStream, SampleFamily, SampledObject};
use sqperm::series::{count, refined_series_oracle, CountFamily};

fn squares(n: usize) -> Vec<Permutation> {
    brute_enumerate(CountFamily::Square, n)
        .unwrap()
        .into_iter()
        .map(|item| match item {
            OracleItem::Perm(p) => p,
            other => panic!("unexpected {other}"),
        })
        .collect()
}

#[test]
fn records_agree_with_definitions() {
    for n in 1..=7 {
        for_each_permutation(n, |v| {
            let p = Permutation::new(v.to_vec()).unwrap();
            let fast = classify_records(&p);
            for (m, r) in fast.iter().zip(naive_records(v)) {
                assert_eq!([m.ul, m.ur, m.bl, m.br], r, "{p}");
            }
        });
    }
}

#[test]
fn square_and_triangular_pattern_characterizations() {
    let sq_basis = square_basis();
    let tri_basis = triangular_basis();
    for n in 1..=8 {
        for_each_permutation(n, |v| {
            let p = Permutation::new(v.to_vec()).unwrap();
            let r = subclass_report(&p);
            let avoids = |basis: &[Permutation]| !contains_any_pattern(&p, basis).unwrap_or(false);
            assert_eq!(r.square, avoids(&sq_basis), "{p}");
            assert_eq!(r.triangular_without(Corner::BottomLeft), avoids(&tri_basis), "{p}");
        });
    }
}

#[test]
fn symmetries_preserve_squareness() {
    for p in squares(6) {
        for s in Symmetry::ALL {
            assert!(transform(&p, s).is_square(), "{p} under {s:?}");
        }
    }
}

#[test]
fn every_square_round_trips_through_its_word() {
    for n in 2..=8 {
        for p in squares(n) {
            let cp = ColoredPermutation::uncolored(p);
            let w = encode(&cp).unwrap();
            assert_eq!(decode(&w, DecodeMode::Square).success(), Some(&cp));
        }
    }
}

#[test]
fn decoding_is_injective_and_exhaustive() {
    for n in 2..=7 {
        for mode in DecodeMode::ALL {
            let outputs: Vec<String> = all_marked_words(n)
                .iter()
                .filter_map(|w| decode(w, mode).into_success())
                .map(|cp| cp.to_string())
                .collect();
            let distinct: BTreeSet<&String> = outputs.iter().collect();
            assert_eq!(distinct.len(), outputs.len(), "{mode:?} n={n}");
        }
    }
}

#[test]
fn word_weights_count_upper_and_left_points() {
    for n in 2..=7 {
        for p in squares(n) {
            let cp = ColoredPermutation::uncolored(p);
            let r = colored_subclass_report(&cp);
            assert_eq!(encode(&cp).unwrap().weight(), (r.upper_count, r.left_count), "{cp}");
        }
    }
}

#[test]
fn colored_points_are_never_corner_records() {
    for n in 2..=6 {
        for w in all_marked_words(n) {
            if let DecodeOutcome::Success(cp) = decode(&w, DecodeMode::Permutomino) {
                let free = free_fixed_points(cp.perm());
                assert!(cp.colored().is_subset(&free), "{cp}");
            }
        }
    }
}

#[test]
fn fully_indecomposable_refined_series_matches_enumeration() {
    let series = refined_series_oracle(CountFamily::FullyIndec, 7).unwrap();
    for n in 1..=7 {
        assert_eq!(series.coeff(n), brute_refined_histogram(CountFamily::FullyIndec, n).unwrap(), "n={n}");
        assert_eq!(
            series.coeff(n).at_one(),
            count(CountFamily::FullyIndec, n).unwrap().into(),
            "n={n}"
        );
    }
    let cp = refined_series_oracle(CountFamily::ConvexPermutomino, 6).unwrap();
    for n in 2..=6 {
        assert_eq!(cp.coeff(n).at_one(), count(CountFamily::ConvexPermutomino, n).unwrap().into());
        // upper and left sides play symmetric roles under reflection in the anti-diagonal
        assert_eq!(cp.coeff(n).swap_xy(), cp.coeff(n));
    }
    assert_eq!(
        refined_histogram_via_codes(CountFamily::ConvexPermutomino, 3).unwrap().to_string(),
        "x^2*y^2 + x^2*y + x*y^2 + x*y"
    );
}

#[test]
fn permutomino_side_profiles_are_bounded_by_size() {
    for n in 2..=7 {
        for w in all_marked_words(n) {
            if let Some(cp) = decode(&w, DecodeMode::Permutomino).into_success() {
                let p = phi_inverse(&cp).unwrap();
                let (a, b) = side_profile(&p);
                assert!((1..n).contains(&a) && (1..n).contains(&b), "{p}");
            }
        }
    }
}

fn any_permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn fast_records_match_naive_records(p in any_permutation(40)) {
        let fast = classify_records(&p);
        for (m, r) in fast.iter().zip(naive_records(p.values())) {
            prop_assert_eq!([m.ul, m.ur, m.bl, m.br], r);
        }
    }

    #[test]
    fn permutation_text_round_trips(p in any_permutation(60)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn sampled_squares_round_trip(seed in any::<u64>(), n in 1usize..300) {
        let mut rng = RngStream::new(seed);
        let SampledObject::Perm(cp) = sample_object(SampleFamily::Square, n, &mut rng).unwrap() else {
            panic!("square sampling yields permutations");
        };
        prop_assert!(cp.perm().is_square());
        if n >= 2 {
            let w = encode(&cp).unwrap();
            prop_assert_eq!(decode(&w, DecodeMode::Square).into_success(), Some(cp));
        }
    }

    #[test]
    fn decoding_any_word_is_consistent(seed in any::<u64>(), n in 2usize..400) {
        let mut rng = RngStream::new(seed);
        let w = sample_marked_word(n, &mut rng).unwrap();
        prop_assert_eq!(w.to_string().parse::<MarkedWord>().unwrap(), w.clone());
        for mode in DecodeMode::ALL {
            let (outcome, stats) = decode_with_stats(&w, mode);
            prop_assert!(stats.row_advances <= 4 * n);
            match outcome {
                DecodeOutcome::Success(cp) => prop_assert_eq!(encode(&cp).unwrap(), w.clone()),
                DecodeOutcome::Failure(f) => prop_assert!(f.stop_index >= 2 && f.stop_index <= n),
                DecodeOutcome::InternalContradiction(msg) => prop_assert!(false, "{}", msg),
            }
        }
    }

    #[test]
    fn sampled_permutominoes_invert(seed in any::<u64>(), n in 2usize..60) {
        let mut rng = RngStream::new(seed);
        let SampledObject::Permutomino(p) =
            sample_object(SampleFamily::ConvexPermutomino, n, &mut rng).unwrap()
        else {
            panic!("permutomino sampling yields permutominoes");
        };
        prop_assert_eq!(p.size(), n);
        let cp = phi(&p).unwrap();
        prop_assert_eq!(phi_inverse(&cp).unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Permutomino>().unwrap(), p);
    }

    #[test]
    fn canonical_form_ignores_start_orientation_and_offset(
        seed in any::<u64>(), n in 2usize..30, rot in 0usize..60, dx in -1000i64..1000, dy in -1000i64..1000, rev in any::<bool>()
    ) {
        let mut rng = RngStream::new(seed);
        let SampledObject::Permutomino(p) =
            sample_object(SampleFamily::ConvexPermutomino, n, &mut rng).unwrap()
        else {
            panic!("permutomino sampling yields permutominoes");
        };
        let mut pts: Vec<(i64, i64)> = p.turnpoints().iter().map(|&(x, y)| (x + dx, y + dy)).collect();
        if rev {
            pts.reverse();
        }
        let k = rot % pts.len();
        pts.rotate_left(k);
        prop_assert_eq!(Permutomino::new(pts).unwrap(), p);
    }
}
