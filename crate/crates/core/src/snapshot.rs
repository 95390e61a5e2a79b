//! Resumable enumeration state.
//!
//! A [`Snapshot`] holds everything known so far about `S = <A>`:
//!
//! * the generators `A`, whose order fixes the letter order;
//! * the elements found so far, indexed in short-lex order of their reduced
//!   words (generator `a` is always element `a`);
//! * for each element, its first and last letter and the indices of its prefix
//!   and suffix (the word with the last, resp. first, letter removed);
//! * the known part of the right and left Cayley graphs;
//! * the frontier `K`: the first element not all of whose right multiples are
//!   known, and how many generators have already been applied to it;
//! * the rewriting rules discovered so far and the number of multiplications.
//!
//! Reduced words are never stored; [`Snapshot::word_of`] rebuilds them by
//! walking prefix links.

use std::cmp::Ordering;
use std::fmt;

use hashbrown::HashTable;

use crate::element::{check_generators, Element, ElementKind};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub(crate) const UNDEF: u32 = u32::MAX;

/// Which Cayley graph to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Edges `x -> x * a`.
    Right,
    /// Edges `x -> a * x`.
    Left,
}

/// Word metadata of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Meta {
    pub first: u32,
    pub last: u32,
    pub prefix: u32,
    pub suffix: u32,
    pub length: u32,
}

/// A rewriting relation: `word(source) . letter` is not reduced and equals
/// element `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub source: usize,
    pub letter: Letter,
    pub target: usize,
}

#[derive(Clone)]
pub struct Snapshot {
    pub(crate) kind: ElementKind,
    pub(crate) nr_gens: usize,
    pub(crate) elements: Vec<Element>,
    pub(crate) meta: Vec<Meta>,
    /// Row-major `elements.len() x nr_gens`.
    pub(crate) right: Vec<u32>,
    pub(crate) left: Vec<u32>,
    /// Zero-based index of the frontier element, i.e. `K - 1`.
    pub(crate) frontier: usize,
    /// Number of generators already applied to the frontier element.
    pub(crate) applied: usize,
    pub(crate) dedup: HashTable<u32>,
    pub(crate) rules: Vec<(u32, u32, u32)>,
    pub(crate) products: u64,
}

impl Snapshot {
    /// The starting state: the generators are the only known elements and no
    /// products are known.
    pub fn minimal(gens: Vec<Element>) -> Result<Snapshot> {
        check_generators(&gens)?;
        let r = gens.len();
        let mut s = Snapshot {
            kind: gens[0].kind(),
            nr_gens: r,
            elements: Vec::with_capacity(r),
            meta: Vec::with_capacity(r),
            right: Vec::with_capacity(r * r),
            left: Vec::with_capacity(r * r),
            frontier: 0,
            applied: 0,
            dedup: HashTable::with_capacity(r),
            rules: Vec::new(),
            products: 0,
        };
        for (a, g) in gens.into_iter().enumerate() {
            s.push_element(
                g,
                Meta {
                    first: a as u32,
                    last: a as u32,
                    prefix: UNDEF,
                    suffix: UNDEF,
                    length: 1,
                },
            );
        }
        Ok(s)
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn nr_generators(&self) -> usize {
        self.nr_gens
    }

    pub fn generators(&self) -> &[Element] {
        &self.elements[..self.nr_gens]
    }

    pub fn generator(&self, a: Letter) -> &Element {
        &self.elements[a]
    }

    /// Number of elements found so far.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Result<&Element> {
        self.elements.get(i).ok_or(Error::OutOfRange {
            what: "element index",
            index: i,
            limit: self.len(),
        })
    }

    /// The one-based frontier `K`, with `1 <= K <= len() + 1`.
    pub fn frontier(&self) -> usize {
        self.frontier + 1
    }

    /// How many generators have been applied to the frontier element.
    pub fn applied(&self) -> usize {
        self.applied
    }

    /// True once every element is known together with all of its right and
    /// left multiples by generators.
    pub fn is_complete(&self) -> bool {
        self.frontier == self.len()
    }

    /// Number of element multiplications performed by the engines.
    pub fn products(&self) -> u64 {
        self.products
    }

    pub fn nr_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> impl ExactSizeIterator<Item = Rule> + '_ {
        self.rules.iter().map(|&(u, a, v)| Rule {
            source: u as usize,
            letter: a as usize,
            target: v as usize,
        })
    }

    /// Index of `x` among the elements found so far. Never enumerates.
    pub fn position(&self, x: &Element) -> Result<Option<usize>> {
        if x.kind() != self.kind {
            return Err(Error::KindMismatch {
                left: x.kind().to_string(),
                right: self.kind.to_string(),
            });
        }
        Ok(self.find(x).map(|i| i as usize))
    }

    pub(crate) fn find(&self, x: &Element) -> Option<u32> {
        let elements = &self.elements;
        self.dedup
            .find(x.digest(0), |&i| elements[i as usize] == *x)
            .copied()
    }

    /// Length of the reduced word of element `i`.
    pub fn word_length(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        Ok(self.meta[i].length as usize)
    }

    pub fn first_letter(&self, i: usize) -> Result<Letter> {
        self.check_index(i)?;
        Ok(self.meta[i].first as usize)
    }

    pub fn last_letter(&self, i: usize) -> Result<Letter> {
        self.check_index(i)?;
        Ok(self.meta[i].last as usize)
    }

    /// Index of the element represented by the reduced word of `i` minus its
    /// last letter, or `None` for generators.
    pub fn prefix_index(&self, i: usize) -> Result<Option<usize>> {
        self.check_index(i)?;
        Ok(opt(self.meta[i].prefix))
    }

    /// As [`Snapshot::prefix_index`], removing the first letter instead.
    pub fn suffix_index(&self, i: usize) -> Result<Option<usize>> {
        self.check_index(i)?;
        Ok(opt(self.meta[i].suffix))
    }

    /// The reduced word of element `i`.
    pub fn word_of(&self, i: usize) -> Result<Word> {
        self.check_index(i)?;
        Ok(self.word_unchecked(i))
    }

    pub(crate) fn word_unchecked(&self, mut i: usize) -> Word {
        let mut letters = vec![0; self.meta[i].length as usize];
        for slot in letters.iter_mut().rev() {
            *slot = self.meta[i].last as usize;
            i = self.meta[i].prefix as usize;
        }
        Word::new(letters)
    }

    /// Reads a stored Cayley graph edge. Never multiplies.
    pub fn cayley_lookup(&self, side: Side, i: usize, a: Letter) -> Result<Option<usize>> {
        self.check_index(i)?;
        if a >= self.nr_gens {
            return Err(Error::OutOfRange {
                what: "letter",
                index: a,
                limit: self.nr_gens,
            });
        }
        let v = match side {
            Side::Right => self.right_at(i, a),
            Side::Left => self.left_at(i, a),
        };
        Ok(opt(v))
    }

    /// Follows the right Cayley graph from the first letter of `w`.
    ///
    /// Returns the index of the element `w` represents, or `None` if some edge
    /// on the way is not known yet.
    pub fn evaluate(&self, w: &[Letter]) -> Result<Option<usize>> {
        let Some((&first, rest)) = w.split_first() else {
            return Err(Error::EmptyWord);
        };
        if let Some(&bad) = w.iter().find(|&&a| a >= self.nr_gens) {
            return Err(Error::OutOfRange {
                what: "letter",
                index: bad,
                limit: self.nr_gens,
            });
        }
        let mut i = first as u32;
        for &a in rest {
            i = self.right_at(i as usize, a);
            if i == UNDEF {
                return Ok(None);
            }
        }
        Ok(Some(i as usize))
    }

    /// The rewriting rules as word pairs `(lhs, rhs)` with `lhs > rhs`.
    pub fn rules_of(&self) -> Vec<(Word, Word)> {
        self.rules
            .iter()
            .map(|&(u, a, v)| {
                (
                    self.word_unchecked(u as usize).append(a as usize),
                    self.word_unchecked(v as usize),
                )
            })
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "element index",
                index: i,
                limit: self.len(),
            })
        }
    }

    // ---- engine plumbing ----

    #[inline]
    pub(crate) fn right_at(&self, i: usize, a: usize) -> u32 {
        self.right[i * self.nr_gens + a]
    }

    #[inline]
    pub(crate) fn left_at(&self, i: usize, a: usize) -> u32 {
        self.left[i * self.nr_gens + a]
    }

    #[inline]
    pub(crate) fn set_right(&mut self, i: usize, a: usize, v: u32) {
        self.right[i * self.nr_gens + a] = v;
    }

    #[inline]
    pub(crate) fn set_left(&mut self, i: usize, a: usize, v: u32) {
        self.left[i * self.nr_gens + a] = v;
    }

    /// True if the stored value of `right(i, a)` is the word `word(i) . a`
    /// itself, i.e. `word(i) . a` is reduced.
    #[inline]
    pub(crate) fn is_reduced_extension(&self, i: usize, a: usize) -> bool {
        let j = self.right_at(i, a);
        j != UNDEF && self.meta[j as usize].prefix == i as u32 && self.meta[j as usize].last == a as u32
    }

    /// Appends a new element with undefined Cayley rows and returns its index.
    pub(crate) fn push_element(&mut self, x: Element, meta: Meta) -> u32 {
        let idx = self.elements.len() as u32;
        let hash = x.digest(0);
        self.elements.push(x);
        self.meta.push(meta);
        let r = self.nr_gens;
        self.right.resize(self.right.len() + r, UNDEF);
        self.left.resize(self.left.len() + r, UNDEF);
        let elements = &self.elements;
        self.dedup
            .insert_unique(hash, idx, |&i| elements[i as usize].digest(0));
        idx
    }

    /// Appends `word(i) . a` as a new element whose value is `x`.
    pub(crate) fn push_extension(&mut self, i: usize, a: usize, x: Element) -> u32 {
        let m = self.meta[i];
        let suffix = if m.prefix == UNDEF {
            a as u32
        } else {
            self.right_at(m.suffix as usize, a)
        };
        debug_assert_ne!(suffix, UNDEF, "suffix of a new element must be known");
        let j = self.push_element(
            x,
            Meta {
                first: m.first,
                last: a as u32,
                prefix: i as u32,
                suffix,
                length: m.length + 1,
            },
        );
        self.set_right(i, a, j);
        j
    }

    /// Defines the left multiples of elements `from..to`, all of one length,
    /// from already known products. Performs no multiplication.
    pub(crate) fn fill_left(&mut self, from: usize, to: usize) {
        for i in from..to {
            let m = self.meta[i];
            for a in 0..self.nr_gens {
                let v = if m.prefix == UNDEF {
                    self.right_at(a, m.last as usize)
                } else {
                    let w = self.left_at(m.prefix as usize, a);
                    debug_assert_ne!(w, UNDEF);
                    self.right_at(w as usize, m.last as usize)
                };
                assert_ne!(v, UNDEF, "left multiple of element {i} is not deducible");
                self.set_left(i, a, v);
            }
        }
    }

    /// Index of the first element whose word has length `>= len`, searching
    /// backwards from `before`.
    pub(crate) fn length_start(&self, before: usize, len: u32) -> usize {
        let mut i = before;
        while i > 0 && self.meta[i - 1].length >= len {
            i -= 1;
        }
        i
    }

    /// Compares the reduced word of `j` with the word `word(i) . a`.
    fn cmp_with_right_extension(&self, j: usize, i: usize, a: usize) -> Ordering {
        let (mj, mi) = (self.meta[j], self.meta[i]);
        mj.length.cmp(&(mi.length + 1)).then_with(|| {
            if mj.prefix == UNDEF {
                // both are single letters; i cannot be a word of length 0
                unreachable!()
            }
            (mj.prefix as usize)
                .cmp(&i)
                .then((mj.last as usize).cmp(&a))
        })
    }

    /// Compares the reduced word of `j` with the word `a . word(i)`.
    fn cmp_with_left_extension(&self, j: usize, a: usize, i: usize) -> Ordering {
        let (mj, mi) = (self.meta[j], self.meta[i]);
        mj.length.cmp(&(mi.length + 1)).then_with(|| {
            (mj.first as usize)
                .cmp(&a)
                .then((mj.suffix as usize).cmp(&i))
        })
    }

    // ---- validation ----

    /// Checks the snapshot invariants. `deep` additionally re-multiplies every
    /// known Cayley graph edge and word link.
    pub fn validate(&self, deep: bool) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.validate_structure(&mut report);
        if report.ok() && deep {
            self.validate_products(&mut report);
        }
        report
    }

    fn validate_structure(&self, rep: &mut ValidationReport) {
        let n = self.len();
        let r = self.nr_gens;
        if r == 0 || n < r {
            rep.push(Clause::Generators, None, "fewer elements than generators");
            return;
        }
        if self.meta.len() != n || self.right.len() != n * r || self.left.len() != n * r {
            rep.push(Clause::Generators, None, "table sizes disagree with element count");
            return;
        }
        for a in 0..r {
            let m = self.meta[a];
            if m != (Meta {
                first: a as u32,
                last: a as u32,
                prefix: UNDEF,
                suffix: UNDEF,
                length: 1,
            }) {
                rep.push(Clause::Generators, Some((a, None)), "generator metadata");
            }
        }
        if self.elements.iter().any(|x| x.kind() != self.kind) {
            rep.push(Clause::Generators, None, "element of the wrong kind");
        }

        // word links and ordering
        for i in r..n {
            let m = self.meta[i];
            let ctx = Some((i, None));
            if m.length < 2 || m.prefix as usize >= i || m.suffix as usize >= i {
                rep.push(Clause::Links, ctx, "prefix/suffix must point at earlier elements");
                continue;
            }
            let (p, s) = (self.meta[m.prefix as usize], self.meta[m.suffix as usize]);
            if p.length + 1 != m.length || s.length + 1 != m.length {
                rep.push(Clause::Links, ctx, "prefix/suffix lengths");
            }
            if p.first != m.first || s.last != m.last || m.last as usize >= r || m.first as usize >= r {
                rep.push(Clause::Links, ctx, "first/last letters disagree with links");
            }
            let suffix_consistent = if m.length == 2 {
                m.prefix == m.first && m.suffix == m.last
            } else {
                s.prefix == p.suffix
            };
            if !suffix_consistent {
                rep.push(Clause::Links, ctx, "suffix is not the word minus its first letter");
            }
            let prev = self.meta[i - 1];
            let increasing = match prev.length.cmp(&m.length) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => (prev.prefix, prev.last) < (m.prefix, m.last),
            };
            if !increasing {
                rep.push(Clause::Ordering, ctx, "words are not strictly increasing");
            }
            if self.right_at(m.prefix as usize, m.last as usize) != UNDEF
                && self.right_at(m.prefix as usize, m.last as usize) != i as u32
            {
                rep.push(Clause::Links, ctx, "prefix . last does not lead back to the element");
            }
        }

        // frontier and applied generators
        if self.frontier > n {
            rep.push(
                Clause::Frontier,
                None,
                format!("frontier K = {} exceeds |Y| + 1 = {}", self.frontier + 1, n + 1),
            );
            return;
        }
        if self.applied > r || (self.applied > 0 && self.frontier == n) {
            rep.push(Clause::Applied, None, "applied generators out of range");
        }

        // right Cayley graph domain and values
        for i in 0..n {
            let defined = match i.cmp(&self.frontier) {
                Ordering::Less => r,
                Ordering::Equal => self.applied,
                Ordering::Greater => 0,
            };
            for a in 0..r {
                let j = self.right_at(i, a);
                let ctx = Some((i, Some(a)));
                if (a < defined) != (j != UNDEF) {
                    rep.push(Clause::RightDomain, ctx, "right multiple defined outside its domain or missing");
                    continue;
                }
                if j == UNDEF {
                    continue;
                }
                if j as usize >= n {
                    rep.push(Clause::RightDomain, ctx, "target out of range");
                } else if self.cmp_with_right_extension(j as usize, i, a) == Ordering::Greater {
                    rep.push(Clause::Reducedness, ctx, "right target exceeds the product word");
                }
            }
        }

        // left Cayley graph: rows 0..m complete, the rest empty, with m either
        // K - 1 or the number of words shorter than y_{K-1}
        let rows_done = self.frontier;
        let shorter = if rows_done == 0 {
            0
        } else {
            let len = self.meta[rows_done - 1].length;
            self.meta[..rows_done].partition_point(|m| m.length < len)
        };
        let filled = (0..n)
            .take_while(|&i| (0..r).all(|a| self.left_at(i, a) != UNDEF))
            .count();
        if filled != rows_done && filled != shorter {
            rep.push(
                Clause::LeftDomain,
                None,
                format!("{filled} left rows known, expected {shorter} or {rows_done}"),
            );
        }
        for i in 0..n {
            for a in 0..r {
                let j = self.left_at(i, a);
                if j == UNDEF {
                    continue;
                }
                let ctx = Some((i, Some(a)));
                if i >= filled {
                    rep.push(Clause::LeftDomain, ctx, "left multiple defined outside its domain");
                } else if j as usize >= n {
                    rep.push(Clause::LeftDomain, ctx, "target out of range");
                } else if self.cmp_with_left_extension(j as usize, a, i) == Ordering::Greater {
                    rep.push(Clause::Reducedness, ctx, "left target exceeds the product word");
                }
            }
        }

        // elements are pairwise distinct and indexed
        if self.dedup.len() != n {
            rep.push(Clause::Distinct, None, "lookup table size differs from element count");
        }
        for (i, x) in self.elements.iter().enumerate() {
            if self.find(x) != Some(i as u32) {
                rep.push(Clause::Distinct, Some((i, None)), "element is not uniquely indexed");
            }
        }

        for &(u, a, v) in &self.rules {
            let (u, a, v) = (u as usize, a as usize, v as usize);
            if u >= n || a >= r || v >= n || self.right_at(u, a) != v as u32 || self.is_reduced_extension(u, a) {
                rep.push(Clause::Rules, Some((u, Some(a))), "rule does not match a non-reduced right edge");
            }
        }
    }

    fn validate_products(&self, rep: &mut ValidationReport) {
        let n = self.len();
        let r = self.nr_gens;
        for i in r..n {
            let m = self.meta[i];
            let x = &self.elements[i];
            if self.elements[m.prefix as usize].mul(&self.elements[m.last as usize]) != *x
                || self.elements[m.first as usize].mul(&self.elements[m.suffix as usize]) != *x
            {
                rep.push(Clause::Product, Some((i, None)), "word links do not multiply to the element");
            }
        }
        for i in 0..n {
            for a in 0..r {
                let j = self.right_at(i, a);
                if j != UNDEF && self.elements[i].mul(&self.elements[a]) != self.elements[j as usize] {
                    rep.push(Clause::Product, Some((i, Some(a))), "right edge does not match the product");
                }
                let j = self.left_at(i, a);
                if j != UNDEF && self.elements[a].mul(&self.elements[i]) != self.elements[j as usize] {
                    rep.push(Clause::Product, Some((i, Some(a))), "left edge does not match the product");
                }
            }
        }
    }
}

#[inline]
fn opt(v: u32) -> Option<usize> {
    (v != UNDEF).then_some(v as usize)
}

/// Structural equality: elements, metadata, tables, frontier, rules, counter.
impl PartialEq for Snapshot {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.nr_gens == other.nr_gens
            && self.elements == other.elements
            && self.meta == other.meta
            && self.right == other.right
            && self.left == other.left
            && self.frontier == other.frontier
            && self.applied == other.applied
            && self.rules == other.rules
            && self.products == other.products
    }
}

impl fmt::Debug for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Snapshot")
            .field("kind", &self.kind)
            .field("generators", &self.nr_gens)
            .field("size", &self.len())
            .field("frontier", &self.frontier())
            .field("applied", &self.applied)
            .field("rules", &self.rules.len())
            .field("products", &self.products)
            .finish()
    }
}

/// The invariant a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    /// Generators are the first elements, each a word of length one.
    Generators,
    /// Words strictly increase in short-lex order.
    Ordering,
    /// `1 <= K <= |Y| + 1`.
    Frontier,
    /// Applied generators form a prefix of the alphabet for an existing frontier element.
    Applied,
    /// Right multiples are known exactly for elements before the frontier,
    /// plus the applied generators of the frontier element.
    RightDomain,
    /// Left multiples are known for a prefix of the elements ending at the
    /// frontier or at the last shorter word.
    LeftDomain,
    /// Every known edge points at a word no larger than the product word.
    Reducedness,
    /// First/last/prefix/suffix records are mutually consistent.
    Links,
    /// No element is stored twice.
    Distinct,
    /// Rules record non-reduced right edges.
    Rules,
    /// A stored edge or link disagrees with actual multiplication.
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    /// Element index and, where relevant, letter.
    pub context: Option<(usize, Option<Letter>)>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    fn push(&mut self, clause: Clause, context: Option<(usize, Option<Letter>)>, message: impl Into<String>) {
        // one bad table can produce millions of entries
        if self.violations.len() < 1000 {
            self.violations.push(Violation {
                clause,
                context,
                message: message.into(),
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            write!(f, "{:?}", v.clause)?;
            if let Some((i, a)) = v.context {
                write!(f, " at element {i}")?;
                if let Some(a) = a {
                    write!(f, ", letter {a}")?;
                }
            }
            writeln!(f, ": {}", v.message)?;
        }
        Ok(())
    }
}
