mod common;

use std::collections::HashSet;

use common::*;
use fropin::{Side, Snapshot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_against_oracle(gens: Vec<fropin::Element>) -> Snapshot {
    let s = complete(gens.clone());
    let expected = brute_force_closure(&gens);
    let found: HashSet<_> = s.elements().iter().cloned().collect();
    assert_eq!(found.len(), s.len(), "an element is stored twice");
    assert_eq!(found, expected);
    let report = s.validate(true);
    assert!(report.ok(), "{report}");
    assert_eq!(s.products(), (s.len() - s.nr_generators() + s.nr_rules()) as u64);
    s
}

#[test]
fn random_transformation_semigroups_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sizes = Vec::new();
    for _ in 0..30 {
        let degree = rng.gen_range(2..=5);
        let count = rng.gen_range(1..=3);
        let gens = distinct(count, || random_transformation(&mut rng, degree));
        let s = check_against_oracle(gens);
        assert!(s.len() <= 5000);
        sizes.push(s.len());
    }
    assert!(sizes.iter().any(|&n| n > 100), "{sizes:?}");
}

#[test]
fn random_boolean_matrix_semigroups_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=3).min(1 << (dim * dim));
        let gens = distinct(count, || random_bmat(&mut rng, dim));
        check_against_oracle(gens);
    }
}

#[test]
fn subwords_of_reduced_words_are_reduced() {
    let s = complete(fropin::full_transformation_generators(4));
    for i in 0..s.len() {
        let w = s.word_of(i).unwrap();
        let letters = w.letters();
        for start in 0..letters.len() {
            for end in start + 1..=letters.len() {
                let sub = &letters[start..end];
                let j = s.evaluate(sub).unwrap().unwrap();
                assert_eq!(s.word_of(j).unwrap().letters(), sub, "subword of {w}");
            }
        }
    }
}

#[test]
fn edges_point_at_words_no_longer_than_the_concatenation() {
    let s = complete(fropin::full_transformation_generators(3));
    for i in 0..s.len() {
        let u = s.word_of(i).unwrap();
        for a in 0..s.nr_generators() {
            let j = s.cayley_lookup(Side::Right, i, a).unwrap().unwrap();
            assert!(s.word_of(j).unwrap() <= u.append(a));
            let j = s.cayley_lookup(Side::Left, i, a).unwrap().unwrap();
            assert!(s.word_of(j).unwrap() <= u.prepend(a));
        }
    }
}
