mod common;

use std::collections::HashSet;

use common::*;
use fropin::concurrent::{concurrent_froidure_pin, BucketFn, ConcurrentOptions, Fragments};
use fropin::{full_transformation_generators, Element, Snapshot};
use proptest::prelude::*;

fn run(gens: Vec<Element>, fragments: usize, seed: u64) -> Snapshot {
    concurrent_froidure_pin(
        gens,
        ConcurrentOptions {
            fragments,
            seed,
            audit: true,
            ..Default::default()
        },
    )
    .map(|r| {
        let audit = r.audit.unwrap();
        assert!(audit.violations.is_empty(), "{:?}", audit.violations);
        r.snapshot
    })
    .unwrap()
}

fn same_tables(a: &Snapshot, b: &Snapshot) {
    assert_eq!(a.elements(), b.elements());
    assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        assert_eq!(a.word_of(i).unwrap(), b.word_of(i).unwrap());
        for x in 0..a.nr_generators() {
            for side in [fropin::Side::Right, fropin::Side::Left] {
                assert_eq!(a.cayley_lookup(side, i, x).unwrap(), b.cayley_lookup(side, i, x).unwrap());
            }
        }
    }
    assert_eq!(a.rules().collect::<Vec<_>>(), b.rules().collect::<Vec<_>>());
}

#[test]
fn full_transformation_monoids_match_sequential() {
    for n in 3..=6 {
        let seq = complete(full_transformation_generators(n));
        let base = run(full_transformation_generators(n), 1, 0).products();
        for k in [1, 2, 4, 8] {
            let s = run(full_transformation_generators(n), k, 0);
            same_tables(&s, &seq);
            assert!(s.is_complete());
            assert!(s.products() as f64 <= 1.5 * base as f64, "n={n} k={k}");
        }
    }
}

#[test]
fn same_seed_gives_identical_files() {
    let a = run(full_transformation_generators(5), 4, 9).to_bytes().unwrap();
    let b = run(full_transformation_generators(5), 4, 9).to_bytes().unwrap();
    assert_eq!(a, b);
}

#[test]
fn every_fragment_gets_work() {
    let mut fr = Fragments::minimal(full_transformation_generators(4), BucketFn::new(4, 0).unwrap()).unwrap();
    fr.run(fropin::UNLIMITED).unwrap();
    assert!(fr.fragments().iter().all(|f| !f.is_empty()));
    assert_eq!(fr.len(), 256);
}

#[test]
fn queued_words_cover_the_new_reduced_words() {
    let seq = complete(full_transformation_generators(4));
    let mut fr = Fragments::minimal(full_transformation_generators(4), BucketFn::new(2, 0).unwrap()).unwrap();
    while !fr.is_complete() {
        let c = fr.current_length();
        fr.round();
        let s = fr.assemble().unwrap();
        let have: HashSet<_> = (0..s.len()).map(|i| s.word_of(i).unwrap()).collect();
        let want: HashSet<_> = (0..seq.len())
            .map(|i| seq.word_of(i).unwrap())
            .filter(|w| w.len() <= c + 1)
            .collect();
        assert_eq!(have, want, "after the round for length {c}");
    }
}

#[test]
fn bad_options_are_rejected() {
    let gens = full_transformation_generators(3);
    let zero_k = ConcurrentOptions { fragments: 0, ..Default::default() };
    assert!(concurrent_froidure_pin(gens.clone(), zero_k).is_err());
    let zero_m = ConcurrentOptions { limit: 0, ..Default::default() };
    assert!(concurrent_froidure_pin(gens, zero_m).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_semigroups_match_sequential(
        degree in 2usize..=5,
        images in prop::collection::vec(prop::collection::vec(0u32..5, 5), 1..=3),
        k in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let mut gens: Vec<Element> = Vec::new();
        for im in images {
            let x = t(&im[..degree].iter().map(|v| v % degree as u32).collect::<Vec<_>>());
            if !gens.contains(&x) {
                gens.push(x);
            }
        }
        let seq = complete(gens.clone());
        let s = run(gens, k, seed);
        same_tables(&s, &seq);
        prop_assert!(s.validate(true).ok());
    }
}
