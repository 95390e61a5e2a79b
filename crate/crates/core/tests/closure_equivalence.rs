mod common;

use std::collections::HashSet;

use common::*;
use fropin::closure::{closure_with, ClosureOptions};
use fropin::{Element, UNLIMITED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHECKED: ClosureOptions = ClosureOptions { check_invariants: true };

fn compare(a: Vec<Element>, x: Vec<Element>) -> (u64, u64, usize) {
    let old = complete(a.clone());
    let out = closure_with(&old, &x, CHECKED).unwrap();
    let mut z = out.snapshot;
    z.froidure_pin(UNLIMITED).unwrap();
    assert!(z.validate(true).ok());

    let mut all = a;
    all.extend(out.added.iter().cloned());
    let fresh = complete(all);
    let got: HashSet<_> = z.elements().iter().collect();
    let want: HashSet<_> = fresh.elements().iter().collect();
    assert_eq!(got, want);
    assert_eq!(z.elements(), fresh.elements());

    assert!(z.products() <= fresh.products());
    assert_eq!(z.products() + out.saved as u64, fresh.products());
    if out.saved > 0 {
        assert!(z.products() < fresh.products());
    }
    (z.products(), fresh.products(), out.copied)
}

#[test]
fn random_transformation_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut reused = 0;
    for _ in 0..20 {
        let degree = rng.gen_range(2..=5);
        let a = distinct(rng.gen_range(1..=3), || random_transformation(&mut rng, degree));
        let x: Vec<Element> = (0..rng.gen_range(1..=2)).map(|_| random_transformation(&mut rng, degree)).collect();
        let (_, _, copied) = compare(a, x);
        reused += (copied > 0) as usize;
    }
    assert!(reused > 0);
}

#[test]
fn random_boolean_matrix_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let dim = rng.gen_range(2..=3);
        let a = distinct(rng.gen_range(1..=2), || random_bmat(&mut rng, dim));
        let x = vec![random_bmat(&mut rng, dim)];
        compare(a, x);
    }
}

#[test]
fn symmetric_group_then_a_rank_drop() {
    let a = vec![t(&[1, 2, 3, 0]), t(&[1, 0, 2, 3])];
    let (closed, fresh, copied) = compare(a, vec![t(&[0, 1, 2, 0])]);
    assert_eq!(fresh, 340);
    assert!(closed < fresh && copied > 0);
}
