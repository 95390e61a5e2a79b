//! Extending an enumeration by extra generators.
//!
//! Given a snapshot of `S = <A>` and extra elements `X`, [`closure`] builds a
//! snapshot of `T = <A, X>` over the letters `A` followed by `X`. Whenever the
//! frontier element of the new snapshot equals an old element whose right
//! multiples were already known, those multiples by `A` are translated
//! instead of recomputed.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::fropin::Step;
use crate::snapshot::{Snapshot, UNDEF};

/// Partial map from old element indices to new ones with the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebaseMap {
    map: Vec<u32>,
    defined: usize,
}

impl RebaseMap {
    fn new(old_len: usize) -> Self {
        RebaseMap {
            map: vec![UNDEF; old_len],
            defined: 0,
        }
    }

    pub fn get(&self, old: usize) -> Option<usize> {
        self.map
            .get(old)
            .copied()
            .filter(|&v| v != UNDEF)
            .map(|v| v as usize)
    }

    fn set(&mut self, old: usize, new: u32) {
        debug_assert_eq!(self.map[old], UNDEF);
        self.map[old] = new;
        self.defined += 1;
    }

    /// Number of old indices in the domain.
    pub fn defined(&self) -> usize {
        self.defined
    }

    pub fn is_total(&self) -> bool {
        self.defined == self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != UNDEF)
            .map(|(i, &v)| (i, v as usize))
    }
}

#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    pub snapshot: Snapshot,
    pub rebase: RebaseMap,
    /// The extra generators actually added, after dropping those already known.
    pub added: Vec<Element>,
    /// Right multiples translated from the old snapshot.
    pub copied: usize,
    /// Translated multiples that a fresh enumeration would have multiplied.
    pub saved: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClosureOptions {
    /// Re-check the rebase map after every change and validate the new
    /// snapshot at every length boundary. Slow; meant for tests.
    pub check_invariants: bool,
}

/// Extends `old` by `extra`. See the module docs.
///
/// The result is a resumable snapshot containing every element of `old`;
/// call [`Snapshot::froidure_pin`] on it to finish enumerating `T`.
pub fn closure(old: &Snapshot, extra: &[Element]) -> Result<ClosureOutcome> {
    closure_with(old, extra, ClosureOptions::default())
}

pub fn closure_with(old: &Snapshot, extra: &[Element], opts: ClosureOptions) -> Result<ClosureOutcome> {
    let mut added: Vec<Element> = Vec::with_capacity(extra.len());
    for x in extra {
        if old.position(x)?.is_none() && !added.contains(x) {
            added.push(x.clone());
        }
    }
    if old.applied() != 0 {
        return Err(Error::Precondition(
            "closure needs a snapshot between frontier sweeps".into(),
        ));
    }

    let m = old.nr_generators();
    let mut gens = old.generators().to_vec();
    gens.extend(added.iter().cloned());
    let mut z = Snapshot::minimal(gens)?;
    let r = z.nr_generators();
    let old_done = old.frontier;

    let mut lambda = RebaseMap::new(old.len());
    for a in 0..m {
        lambda.set(a, a as u32);
    }
    let (mut copied, mut saved) = (0, 0);
    let check = |z: &Snapshot, lambda: &RebaseMap| {
        if opts.check_invariants {
            check_rebase(old, z, lambda);
        }
    };
    check(&z, &lambda);

    while !lambda.is_total() && !z.is_complete() {
        let k = z.frontier;
        let mk = z.meta[k];
        if let Some(i) = old.find(&z.elements[k]).filter(|&i| (i as usize) < old_done) {
            for a in 0..m {
                let t = old.right_at(i as usize, a) as usize;
                let would_multiply = mk.suffix == UNDEF || z.is_reduced_extension(mk.suffix as usize, a);
                match lambda.get(t) {
                    Some(v) => {
                        z.set_right(k, a, v as u32);
                        if would_multiply {
                            z.rules.push((k as u32, a as u32, v as u32));
                        }
                    }
                    None => {
                        debug_assert!(would_multiply);
                        let j = z.push_extension(k, a, old.elements[t].clone());
                        lambda.set(t, j);
                        check(&z, &lambda);
                    }
                }
                copied += 1;
                saved += would_multiply as usize;
                z.applied += 1;
            }
        }
        while z.applied < r {
            if let Step::New(j) = z.update()? {
                if let Some(i) = old.find(&z.elements[j]) {
                    lambda.set(i as usize, j as u32);
                    check(&z, &lambda);
                }
            }
        }
        let boundary = z.frontier + 1 == z.len() || z.meta[z.frontier + 1].length > mk.length;
        z.advance();
        if opts.check_invariants && boundary {
            let report = z.validate(false);
            assert!(report.ok(), "closure state invalid at a length boundary: {report}");
        }
    }

    Ok(ClosureOutcome {
        snapshot: z,
        rebase: lambda,
        added,
        copied,
        saved,
    })
}

/// Asserts that the rebase map covers exactly the old elements already in the
/// new snapshot and maps each to an equal element.
fn check_rebase(old: &Snapshot, z: &Snapshot, lambda: &RebaseMap) {
    for (i, y) in old.elements.iter().enumerate() {
        match (lambda.get(i), z.find(y)) {
            (Some(v), Some(w)) => {
                assert_eq!(v, w as usize, "rebase of {i} points at the wrong element");
                assert_eq!(&z.elements[v], y);
            }
            (None, None) => {}
            (Some(_), None) => panic!("rebase of {i} points outside the new snapshot"),
            (None, Some(_)) => panic!("old element {i} is known but not rebased"),
        }
    }
}
