#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use fropin::{Element, Snapshot, UNLIMITED};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn t(images: &[u32]) -> Element {
    Element::transformation(images.to_vec()).unwrap()
}

pub fn complete(gens: Vec<Element>) -> Snapshot {
    let mut s = Snapshot::minimal(gens).unwrap();
    s.froidure_pin(UNLIMITED).unwrap();
    s
}

pub fn random_transformation(rng: &mut ChaCha8Rng, degree: usize) -> Element {
    t(&(0..degree).map(|_| rng.gen_range(0..degree as u32)).collect::<Vec<_>>())
}

pub fn random_bmat(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    let rows: Vec<Vec<u8>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(0..2u8)).collect()).collect();
    Element::bmat(&rows).unwrap()
}

/// `count` distinct elements drawn with `draw`.
pub fn distinct(count: usize, mut draw: impl FnMut() -> Element) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    while out.len() < count {
        let x = draw();
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Multiplies everything found by every generator until nothing new appears.
pub fn brute_force_closure(gens: &[Element]) -> HashSet<Element> {
    let mut seen: HashSet<Element> = gens.iter().cloned().collect();
    let mut todo: VecDeque<Element> = gens.iter().cloned().collect();
    while let Some(x) = todo.pop_front() {
        for g in gens {
            let y = x.multiply(g).unwrap();
            if seen.insert(y.clone()) {
                todo.push_back(y);
            }
        }
    }
    seen
}

/// Green's class counts `(R, L, H, D)` computed from principal ideals.
pub fn brute_force_green(elements: &[Element]) -> (usize, usize, usize, usize) {
    let n = elements.len();
    let index = |x: &Element| elements.iter().position(|y| y == x).unwrap();
    // right[x] = x S^1, left[x] = S^1 x as sorted index sets
    let mut right: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut left: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in elements {
        let mut r: Vec<usize> = elements.iter().map(|s| index(&x.multiply(s).unwrap())).collect();
        let mut l: Vec<usize> = elements.iter().map(|s| index(&s.multiply(x).unwrap())).collect();
        r.push(index(x));
        l.push(index(x));
        for v in [&mut r, &mut l] {
            v.sort_unstable();
            v.dedup();
        }
        right.push(r);
        left.push(l);
    }
    let two_sided: Vec<Vec<usize>> = right
        .iter()
        .map(|r| {
            let mut j: Vec<usize> = r.iter().flat_map(|&y| left[y].iter().copied()).collect();
            j.sort_unstable();
            j.dedup();
            j
        })
        .collect();
    let classes = |sets: Vec<Vec<usize>>| sets.into_iter().collect::<HashSet<_>>().len();
    let h: HashSet<(Vec<usize>, Vec<usize>)> = right.iter().cloned().zip(left.iter().cloned()).collect();
    (classes(right), classes(left), h.len(), classes(two_sided))
}
