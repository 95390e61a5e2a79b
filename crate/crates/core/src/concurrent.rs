//! Multi-threaded enumeration.
//!
//! Elements are split over `k` fragments by a hash of their value. Words are
//! found one length at a time; each round has three phases separated by
//! barriers:
//!
//! 1. *apply generators*: every fragment finds the right multiples of its
//!    words of the current length `c`, deducing them where the required
//!    information is already settled, and otherwise multiplying. Products not
//!    found anywhere are queued for the fragment that owns their value.
//! 2. *process queues*: every fragment walks the queued words addressed to it
//!    in short-lex order and keeps the first word for each new value.
//! 3. *left completion*: every fragment fills the left multiples of its
//!    words of length `c`.
//!
//! During a phase all fragments are read-only; each worker writes into its own
//! buffers, which are committed at the barrier. A fragment only ever reads
//! entries of other fragments for words shorter than `c`.
//!
//! [`Fragments::assemble`] merges the fragments into an ordinary [`Snapshot`]
//! with global short-lex indices.

use std::fmt;
use std::thread;

use hashbrown::HashTable;
use itertools::Itertools;

use crate::element::{check_generators, Element};
use crate::error::{Error, Result};
use crate::fropin::UNLIMITED;
use crate::snapshot::{Meta, Snapshot, UNDEF};
use crate::word::Letter;

/// A cross-fragment element reference.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ref {
    pub frag: u32,
    pub idx: u32,
}

impl Ref {
    pub const NONE: Ref = Ref {
        frag: u32::MAX,
        idx: u32::MAX,
    };

    fn new(frag: usize, idx: usize) -> Ref {
        Ref {
            frag: frag as u32,
            idx: idx as u32,
        }
    }

    pub fn is_none(self) -> bool {
        self == Ref::NONE
    }
}

impl fmt::Debug for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_none() {
            write!(f, "-")
        } else {
            write!(f, "{}:{}", self.frag, self.idx)
        }
    }
}

/// Assigns elements to fragments: `digest(x, seed) mod k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BucketFn {
    k: usize,
    seed: u64,
}

impl BucketFn {
    pub fn new(k: usize, seed: u64) -> Result<BucketFn> {
        if k == 0 {
            return Err(Error::Precondition("at least one fragment is needed".into()));
        }
        Ok(BucketFn { k, seed })
    }

    pub fn fragments(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fragment id in `0..k`.
    pub fn bucket(&self, x: &Element) -> usize {
        if self.k == 1 {
            0
        } else {
            (x.digest(self.seed) % self.k as u64) as usize
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FMeta {
    first: u32,
    last: u32,
    prefix: Ref,
    suffix: Ref,
    length: u32,
}

/// One shard of the enumeration.
#[derive(Clone)]
pub struct Fragment {
    elements: Vec<Element>,
    meta: Vec<FMeta>,
    right: Vec<Ref>,
    left: Vec<Ref>,
    /// Number of leading elements whose right multiples are all known.
    frontier: usize,
    /// Where the block of words handled in the current round starts.
    round_start: usize,
    dedup: HashTable<u32>,
    rules: Vec<(u32, u32, Ref)>,
}

impl Fragment {
    fn empty() -> Fragment {
        Fragment {
            elements: Vec::new(),
            meta: Vec::new(),
            right: Vec::new(),
            left: Vec::new(),
            frontier: 0,
            round_start: 0,
            dedup: HashTable::new(),
            rules: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Number of elements whose right multiples are all known.
    pub fn frontier(&self) -> usize {
        self.frontier
    }

    fn find(&self, x: &Element) -> Option<u32> {
        let els = &self.elements;
        self.dedup.find(x.digest(0), |&i| els[i as usize] == *x).copied()
    }

    fn push(&mut self, x: Element, m: FMeta, r: usize) -> u32 {
        let idx = self.elements.len() as u32;
        let hash = x.digest(0);
        self.elements.push(x);
        self.meta.push(m);
        self.right.resize(self.right.len() + r, Ref::NONE);
        self.left.resize(self.left.len() + r, Ref::NONE);
        let els = &self.elements;
        self.dedup.insert_unique(hash, idx, |&i| els[i as usize].digest(0));
        idx
    }
}

/// A queued word `w.a` whose value was not found during the apply phase.
#[derive(Debug, Clone)]
pub struct QueueEntry {
    pub target: usize,
    pub source: Ref,
    pub letter: Letter,
    /// The letters of `w.a`.
    pub word: Box<[u32]>,
    element: Option<Element>,
    /// False when `w.a` was multiplied only because a deduction was not
    /// available to this fragment.
    suffix_reduced: bool,
}

#[derive(Debug)]
struct ApplyOutput {
    rows: Vec<Ref>,
    /// Indexed by target fragment, each sorted by word.
    queues: Vec<Vec<QueueEntry>>,
    rules: Vec<(u32, u32, Ref)>,
    products: u64,
    reads: u64,
    violations: Vec<String>,
}

#[derive(Debug)]
struct ProcessOutput {
    new: Vec<(Element, FMeta)>,
    /// `(source, letter, target, record a rule)`
    resolutions: Vec<(Ref, u32, Ref, bool)>,
    products: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct ConcurrentOptions {
    pub fragments: usize,
    pub limit: usize,
    pub seed: u64,
    /// Multiply queued words again when processing queues instead of
    /// reusing the value computed while applying generators.
    pub recompute: bool,
    /// Record every cross-fragment read made while applying generators and
    /// check that none touches a cell that may be written in the same phase.
    pub audit: bool,
}

impl Default for ConcurrentOptions {
    fn default() -> Self {
        ConcurrentOptions {
            fragments: 1,
            limit: UNLIMITED,
            seed: 0,
            recompute: false,
            audit: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub reads: u64,
    pub violations: Vec<String>,
}

/// The fragments of an enumeration in progress.
#[derive(Clone)]
pub struct Fragments {
    gens: Vec<Element>,
    bucket: BucketFn,
    frags: Vec<Fragment>,
    gen_refs: Vec<Ref>,
    /// Length of the words handled by the next round.
    c: u32,
    rounds: usize,
    products: u64,
    recompute: bool,
    audit: Option<AuditReport>,
}

impl Fragments {
    /// Generators scattered over the fragments, nothing else known.
    pub fn minimal(gens: Vec<Element>, bucket: BucketFn) -> Result<Fragments> {
        check_generators(&gens)?;
        let r = gens.len();
        let mut frags: Vec<Fragment> = (0..bucket.k).map(|_| Fragment::empty()).collect();
        let mut gen_refs = Vec::with_capacity(r);
        for (a, g) in gens.iter().enumerate() {
            let j = bucket.bucket(g);
            let m = FMeta {
                first: a as u32,
                last: a as u32,
                prefix: Ref::NONE,
                suffix: Ref::NONE,
                length: 1,
            };
            let i = frags[j].push(g.clone(), m, r);
            gen_refs.push(Ref::new(j, i as usize));
        }
        Ok(Fragments {
            gens,
            bucket,
            frags,
            gen_refs,
            c: 1,
            rounds: 0,
            products: 0,
            recompute: false,
            audit: None,
        })
    }

    pub fn set_recompute(&mut self, on: bool) {
        self.recompute = on;
    }

    pub fn enable_audit(&mut self) {
        self.audit.get_or_insert_with(AuditReport::default);
    }

    pub fn audit(&self) -> Option<&AuditReport> {
        self.audit.as_ref()
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.frags
    }

    pub fn bucket_fn(&self) -> BucketFn {
        self.bucket
    }

    pub fn len(&self) -> usize {
        self.frags.iter().map(Fragment::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn products(&self) -> u64 {
        self.products
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Length of the words the next round will multiply.
    pub fn current_length(&self) -> usize {
        self.c as usize
    }

    pub fn is_complete(&self) -> bool {
        self.frags.iter().all(|f| f.frontier == f.len())
    }

    /// Runs rounds until every fragment is exhausted or at least `limit`
    /// elements are known. The limit is only checked between rounds.
    pub fn run(&mut self, limit: usize) -> Result<()> {
        if limit == 0 {
            return Err(Error::Precondition("limit must be positive".into()));
        }
        while !self.is_complete() && self.len() < limit {
            self.round();
        }
        Ok(())
    }

    /// One round of the three phases over all fragments.
    pub fn round(&mut self) {
        let k = self.frags.len();
        let applied = on_workers(vec![(); k], |j, ()| self.apply_generators(j));
        let inboxes = self.commit_apply(applied);
        let processed = on_workers(inboxes, |j, inbox| self.process_queues(inbox, j));
        self.commit_process(processed);
        let lefts = on_workers(vec![(); k], |j, ()| self.complete_left(j));
        for (f, rows) in self.frags.iter_mut().zip(lefts) {
            let r = self.gens.len();
            f.left[f.round_start * r..f.frontier * r].copy_from_slice(&rows);
        }
        self.c += 1;
        self.rounds += 1;
    }

    // ---- read helpers over settled data ----

    fn meta(&self, x: Ref) -> &FMeta {
        &self.frags[x.frag as usize].meta[x.idx as usize]
    }

    fn right(&self, x: Ref, a: usize) -> Ref {
        self.frags[x.frag as usize].right[x.idx as usize * self.gens.len() + a]
    }

    fn left(&self, x: Ref, a: usize) -> Ref {
        self.frags[x.frag as usize].left[x.idx as usize * self.gens.len() + a]
    }

    fn element(&self, x: Ref) -> &Element {
        &self.frags[x.frag as usize].elements[x.idx as usize]
    }

    fn word(&self, mut x: Ref) -> Vec<u32> {
        let mut w = vec![0; self.meta(x).length as usize];
        for slot in w.iter_mut().rev() {
            let m = self.meta(x);
            *slot = m.last;
            x = m.prefix;
        }
        w
    }

    fn find_global(&self, x: &Element) -> (usize, Option<u32>) {
        let b = self.bucket.bucket(x);
        (b, self.frags[b].find(x))
    }

    // ---- phase 1 ----

    fn apply_generators(&self, j: usize) -> ApplyOutput {
        let f = &self.frags[j];
        let r = self.gens.len();
        let c = self.c;
        let start = f.frontier;
        let end = f.len();
        let audit = self.audit.is_some();
        let mut out = ApplyOutput {
            rows: vec![Ref::NONE; (end - start) * r],
            queues: vec![Vec::new(); self.frags.len()],
            rules: Vec::new(),
            products: 0,
            reads: 0,
            violations: Vec::new(),
        };
        let note = |x: Ref, what: &str, out: &mut ApplyOutput| {
            if audit {
                out.reads += 1;
                if x.frag as usize != j && self.meta(x).length >= c {
                    out.violations.push(format!(
                        "round {c}: fragment {j} read {what} of {x:?} owned by another worker"
                    ));
                }
            }
        };

        for y in start..end {
            let m = f.meta[y];
            debug_assert_eq!(m.length, c);
            let word = self.word(Ref::new(j, y));
            for a in 0..r {
                let mut suffix_reduced = true;
                if !m.suffix.is_none() {
                    note(m.suffix, "a right multiple", &mut out);
                    let yi = self.right(m.suffix, a);
                    let mi = *self.meta(yi);
                    if !(mi.prefix == m.suffix && mi.last == a as u32) {
                        suffix_reduced = false;
                        let w = if mi.prefix.is_none() {
                            self.gen_refs[m.first as usize]
                        } else {
                            note(mi.prefix, "a left multiple", &mut out);
                            self.left(mi.prefix, m.first as usize)
                        };
                        let wlen = self.meta(w).length;
                        if w.frag as usize == j || wlen < c {
                            let v = if w.frag as usize == j && wlen == c {
                                out.rows[(w.idx as usize - start) * r + mi.last as usize]
                            } else {
                                note(w, "a right multiple", &mut out);
                                self.right(w, mi.last as usize)
                            };
                            if !v.is_none() {
                                out.rows[(y - start) * r + a] = v;
                                continue;
                            }
                        }
                    }
                }
                let x = f.elements[y].mul(&self.gens[a]);
                out.products += 1;
                match self.find_global(&x) {
                    (b, Some(i)) => {
                        let v = Ref::new(b, i as usize);
                        out.rows[(y - start) * r + a] = v;
                        if suffix_reduced {
                            out.rules.push((y as u32, a as u32, v));
                        }
                    }
                    (b, None) => {
                        let mut key = Vec::with_capacity(word.len() + 1);
                        key.extend_from_slice(&word);
                        key.push(a as u32);
                        out.queues[b].push(QueueEntry {
                            target: b,
                            source: Ref::new(j, y),
                            letter: a,
                            word: key.into_boxed_slice(),
                            element: (!self.recompute).then_some(x),
                            suffix_reduced,
                        });
                    }
                }
            }
        }
        out
    }

    /// Returns the queued words grouped by target fragment, then by source.
    fn commit_apply(&mut self, outs: Vec<ApplyOutput>) -> Vec<Vec<Vec<QueueEntry>>> {
        let r = self.gens.len();
        let mut inboxes: Vec<Vec<Vec<QueueEntry>>> = (0..outs.len()).map(|_| Vec::new()).collect();
        for (j, out) in outs.into_iter().enumerate() {
            let f = &mut self.frags[j];
            f.round_start = f.frontier;
            f.right[f.frontier * r..].copy_from_slice(&out.rows);
            f.frontier = f.len();
            f.rules.extend(out.rules);
            self.products += out.products;
            if let Some(audit) = self.audit.as_mut() {
                audit.reads += out.reads;
                audit.violations.extend(out.violations);
            }
            for (inbox, q) in inboxes.iter_mut().zip(out.queues) {
                inbox.push(q);
            }
        }
        inboxes
    }

    // ---- phase 2 ----

    fn process_queues(&self, inbox: Vec<Vec<QueueEntry>>, j: usize) -> ProcessOutput {
        let f = &self.frags[j];
        let base = f.len();
        let mut out = ProcessOutput {
            new: Vec::new(),
            resolutions: Vec::new(),
            products: 0,
        };
        let mut fresh: HashTable<u32> = HashTable::new();
        let merged = inbox.into_iter().kmerge_by(|x, y| x.word < y.word);
        for e in merged {
            let x = match e.element {
                Some(x) => x,
                None => {
                    out.products += 1;
                    self.element(e.source).mul(&self.gens[e.letter])
                }
            };
            let hash = x.digest(0);
            let known = f.find(&x).or_else(|| {
                let new = &out.new;
                fresh.find(hash, |&i| new[i as usize].0 == x).map(|&i| base as u32 + i)
            });
            let target = match known {
                Some(i) => {
                    out.resolutions
                        .push((e.source, e.letter as u32, Ref::new(j, i as usize), e.suffix_reduced));
                    continue;
                }
                None => Ref::new(j, base + out.new.len()),
            };
            debug_assert!(e.suffix_reduced);
            let src = *self.meta(e.source);
            let suffix = if src.prefix.is_none() {
                self.gen_refs[e.letter]
            } else {
                self.right(src.suffix, e.letter)
            };
            let m = FMeta {
                first: src.first,
                last: e.letter as u32,
                prefix: e.source,
                suffix,
                length: src.length + 1,
            };
            let new = &out.new;
            fresh.insert_unique(hash, out.new.len() as u32, |&i| new[i as usize].0.digest(0));
            out.new.push((x, m));
            out.resolutions.push((e.source, e.letter as u32, target, false));
        }
        out
    }

    fn commit_process(&mut self, outs: Vec<ProcessOutput>) {
        let r = self.gens.len();
        let mut resolutions = Vec::new();
        for (j, out) in outs.into_iter().enumerate() {
            for (x, m) in out.new {
                self.frags[j].push(x, m, r);
            }
            self.products += out.products;
            resolutions.push(out.resolutions);
        }
        for (src, a, tgt, rule) in resolutions.into_iter().flatten() {
            let f = &mut self.frags[src.frag as usize];
            f.right[src.idx as usize * r + a as usize] = tgt;
            if rule {
                f.rules.push((src.idx, a, tgt));
            }
        }
    }

    // ---- phase 3 ----

    fn complete_left(&self, j: usize) -> Vec<Ref> {
        let f = &self.frags[j];
        let r = self.gens.len();
        let mut rows = Vec::with_capacity((f.frontier - f.round_start) * r);
        for y in f.round_start..f.frontier {
            let m = f.meta[y];
            for a in 0..r {
                let w = if m.prefix.is_none() {
                    self.gen_refs[a]
                } else {
                    self.left(m.prefix, a)
                };
                rows.push(self.right(w, m.last as usize));
            }
        }
        rows
    }

    // ---- assembly ----

    /// Merges the fragments into one snapshot with global short-lex indices.
    pub fn assemble(&self) -> Result<Snapshot> {
        let r = self.gens.len();
        let n = self.len();
        let mut global: Vec<Vec<u32>> = self.frags.iter().map(|f| vec![UNDEF; f.len()]).collect();
        let mut by_length: Vec<Vec<Ref>> = Vec::new();
        for (j, f) in self.frags.iter().enumerate() {
            for (i, m) in f.meta.iter().enumerate() {
                let l = m.length as usize;
                if by_length.len() <= l {
                    by_length.resize_with(l + 1, Vec::new);
                }
                by_length[l].push(Ref::new(j, i));
            }
        }
        let mut order: Vec<Ref> = Vec::with_capacity(n);
        for (l, mut block) in by_length.into_iter().enumerate().skip(1) {
            if l == 1 {
                if block.len() != r {
                    return Err(Error::Precondition("words of length one are not the generators".into()));
                }
                block = self.gen_refs.clone();
            } else {
                let key = |x: &Ref| {
                    let m = self.meta(*x);
                    (global[m.prefix.frag as usize][m.prefix.idx as usize], m.last)
                };
                block.sort_unstable_by_key(key);
            }
            for x in block {
                global[x.frag as usize][x.idx as usize] = order.len() as u32;
                order.push(x);
            }
        }
        let g = |x: Ref| {
            if x.is_none() {
                UNDEF
            } else {
                global[x.frag as usize][x.idx as usize]
            }
        };

        let mut elements = Vec::with_capacity(n);
        let mut meta = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n * r);
        let mut left = Vec::with_capacity(n * r);
        for &x in &order {
            let f = &self.frags[x.frag as usize];
            let i = x.idx as usize;
            let m = f.meta[i];
            elements.push(f.elements[i].clone());
            meta.push(Meta {
                first: m.first,
                last: m.last,
                prefix: g(m.prefix),
                suffix: g(m.suffix),
                length: m.length,
            });
            right.extend(f.right[i * r..(i + 1) * r].iter().map(|&v| g(v)));
            left.extend(f.left[i * r..(i + 1) * r].iter().map(|&v| g(v)));
        }
        let mut rules: Vec<(u32, u32, u32)> = Vec::new();
        for (j, f) in self.frags.iter().enumerate() {
            rules.extend(f.rules.iter().map(|&(u, a, v)| (global[j][u as usize], a, g(v))));
        }
        rules.sort_unstable();
        let mut dedup = HashTable::with_capacity(n);
        for (i, x) in elements.iter().enumerate() {
            dedup.insert_unique(x.digest(0), i as u32, |&k| elements[k as usize].digest(0));
        }
        let s = Snapshot {
            kind: self.gens[0].kind(),
            nr_gens: r,
            elements,
            meta,
            right,
            left,
            frontier: self.frags.iter().map(|f| f.frontier).sum(),
            applied: 0,
            dedup,
            rules,
            products: self.products,
        };
        let report = s.validate(false);
        if !report.ok() {
            return Err(Error::Precondition(format!("fragments do not assemble: {report}")));
        }
        Ok(s)
    }
}

/// Runs `f(j, inputs[j])` for every fragment on its own thread and collects the results
/// in fragment order.
fn on_workers<I: Send, T: Send>(inputs: Vec<I>, f: impl Fn(usize, I) -> T + Sync) -> Vec<T> {
    if inputs.len() == 1 {
        return inputs.into_iter().map(|x| f(0, x)).collect();
    }
    thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> = inputs
            .into_iter()
            .enumerate()
            .map(|(j, x)| s.spawn(move || f(j, x)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)))
            .collect()
    })
}

/// Result of [`concurrent_froidure_pin`].
#[derive(Debug, Clone)]
pub struct ConcurrentRun {
    pub snapshot: Snapshot,
    pub rounds: usize,
    pub fragment_sizes: Vec<usize>,
    pub audit: Option<AuditReport>,
}

/// Enumerates `<gens>` on `opts.fragments` threads.
pub fn concurrent_froidure_pin(gens: Vec<Element>, opts: ConcurrentOptions) -> Result<ConcurrentRun> {
    let mut fr = Fragments::minimal(gens, BucketFn::new(opts.fragments, opts.seed)?)?;
    fr.set_recompute(opts.recompute);
    if opts.audit {
        fr.enable_audit();
    }
    fr.run(opts.limit)?;
    Ok(ConcurrentRun {
        snapshot: fr.assemble()?,
        rounds: fr.rounds,
        fragment_sizes: fr.frags.iter().map(Fragment::len).collect(),
        audit: fr.audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::full_transformation_generators;

    fn sequential(n: usize) -> Snapshot {
        let mut s = Snapshot::minimal(full_transformation_generators(n)).unwrap();
        s.froidure_pin(UNLIMITED).unwrap();
        s
    }

    fn run(n: usize, k: usize) -> ConcurrentRun {
        concurrent_froidure_pin(
            full_transformation_generators(n),
            ConcurrentOptions {
                fragments: k,
                audit: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn single_fragment_bucket_is_constant() {
        let b = BucketFn::new(1, 99).unwrap();
        assert!(full_transformation_generators(4).iter().all(|x| b.bucket(x) == 0));
        assert!(BucketFn::new(0, 0).is_err());
    }

    #[test]
    fn minimal_collection_assembles_to_minimal_snapshot() {
        let gens = full_transformation_generators(4);
        let fr = Fragments::minimal(gens.clone(), BucketFn::new(3, 1).unwrap()).unwrap();
        assert_eq!(fr.assemble().unwrap(), Snapshot::minimal(gens).unwrap());
    }

    #[test]
    fn matches_sequential_tables() {
        let seq = sequential(4);
        for k in [1, 2, 4, 8] {
            let out = run(4, k);
            let s = &out.snapshot;
            assert_eq!(s.elements(), seq.elements(), "k = {k}");
            assert_eq!(s.right, seq.right, "k = {k}");
            assert_eq!(s.left, seq.left, "k = {k}");
            assert_eq!(s.meta, seq.meta, "k = {k}");
            assert_eq!(s.rules, seq.rules, "k = {k}");
            assert!(s.is_complete());
            assert!(s.validate(true).ok());
            let audit = out.audit.unwrap();
            assert!(audit.reads > 0 && audit.violations.is_empty(), "{audit:?}");
        }
    }

    #[test]
    fn recompute_costs_one_product_per_queued_word() {
        let carry = run(3, 1).snapshot.products();
        let recompute = concurrent_froidure_pin(
            full_transformation_generators(3),
            ConcurrentOptions {
                recompute: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(recompute.snapshot.len(), 27);
        assert!(recompute.snapshot.products() > carry);
    }

    #[test]
    fn limit_stops_between_rounds() {
        let out = concurrent_froidure_pin(
            full_transformation_generators(4),
            ConcurrentOptions {
                fragments: 2,
                limit: 30,
                ..Default::default()
            },
        )
        .unwrap();
        let s = out.snapshot;
        assert!(s.len() >= 30 && !s.is_complete());
        assert!(s.validate(true).ok());
        let mut resumed = s.clone();
        resumed.froidure_pin(UNLIMITED).unwrap();
        assert_eq!(resumed.elements(), sequential(4).elements());
    }

    #[test]
    fn empty_queues_leave_fragment_unchanged() {
        let mut fr = Fragments::minimal(vec![Element::transformation(vec![0, 0]).unwrap()], BucketFn::new(2, 0).unwrap()).unwrap();
        let before: Vec<usize> = fr.fragments().iter().map(Fragment::len).collect();
        let out = fr.process_queues(vec![Vec::new(); 2], 0);
        fr.commit_process(vec![out, ProcessOutput { new: vec![], resolutions: vec![], products: 0 }]);
        let after: Vec<usize> = fr.fragments().iter().map(Fragment::len).collect();
        assert_eq!(before, after);
    }
}
