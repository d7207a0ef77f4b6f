mod common;

use fdfa::oracle::{brute_almost_saturation, brute_saturation};
use fdfa::{check_almost_saturated, check_saturated, Alphabet, SaturationMode};

#[test]
fn saturation_agrees_with_oracle() {
    let ab = Alphabet::from_chars("ab");
    let mut rng = common::rng(11);
    let mut refuted = 0;
    for i in 0..300 {
        let f = common::random_fdfa(&mut rng, &ab, 2, 3);
        for mode in [SaturationMode::Saturated, SaturationMode::FullySaturated] {
            let v = check_saturated(&f, mode);
            let brute = brute_saturation(&f, mode.reference_set(), 5, 5);
            assert_eq!(v.is_saturated(), brute.is_none(), "case {i} {mode:?}");
            if let Some(w) = &v.witness {
                assert!(w.replays(&f, mode.reference_set()), "case {i}");
                refuted += 1;
            }
        }
    }
    assert!(refuted > 50);
}

#[test]
fn almost_saturation_agrees_with_oracle() {
    let ab = Alphabet::from_chars("ab");
    let mut rng = common::rng(12);
    for i in 0..300 {
        let f = common::random_fdfa(&mut rng, &ab, 2, 3);
        let v = check_almost_saturated(&f, 1_000_000).unwrap();
        let brute = brute_almost_saturation(&f, 6, 4);
        assert_eq!(v.witness.is_some(), brute.is_some(), "case {i}");
        if let Some(w) = &v.witness {
            assert!(w.replays(&f), "case {i}");
        }
    }
}

#[test]
fn all_reference_set_refutes_more() {
    let ab = Alphabet::from_chars("ab");
    let mut rng = common::rng(13);
    for _ in 0..100 {
        let f = common::random_fdfa(&mut rng, &ab, 2, 3);
        if !check_saturated(&f, SaturationMode::Saturated).is_saturated() {
            assert!(!check_saturated(&f, SaturationMode::FullySaturated).is_saturated());
        }
    }
}
