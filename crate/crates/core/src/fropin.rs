//! The sequential engine.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::snapshot::{Snapshot, UNDEF};

/// No size limit for [`Snapshot::froidure_pin`].
pub const UNLIMITED: usize = usize::MAX;

/// What a single [`Snapshot::update`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// The product was read off known edges; no multiplication.
    Deduced(usize),
    /// The product equals an element already found; a rule was recorded.
    Rule(usize),
    /// The product is a new element, appended at this index.
    New(usize),
}

impl Step {
    pub fn target(self) -> usize {
        match self {
            Step::Deduced(j) | Step::Rule(j) | Step::New(j) => j,
        }
    }
}

impl Snapshot {
    /// Finds the right multiple of the frontier element by the first generator
    /// not yet applied to it.
    pub fn update(&mut self) -> Result<Step> {
        if self.is_complete() {
            return Err(Error::Precondition("update on a complete snapshot".into()));
        }
        if self.applied >= self.nr_gens {
            return Err(Error::Precondition(
                "every generator is already applied to the frontier element".into(),
            ));
        }
        let (k, a) = (self.frontier, self.applied);
        let m = self.meta[k];
        let step = if m.suffix != UNDEF && !self.is_reduced_extension(m.suffix as usize, a) {
            let yi = self.right_at(m.suffix as usize, a);
            let mi = self.meta[missing(yi, "right multiple of the suffix")? as usize];
            let w = if mi.prefix == UNDEF {
                m.first
            } else {
                self.left_at(mi.prefix as usize, m.first as usize)
            };
            let v = self.right_at(missing(w, "left multiple of a prefix")? as usize, mi.last as usize);
            let v = missing(v, "right multiple in a deduction chain")?;
            self.set_right(k, a, v);
            Step::Deduced(v as usize)
        } else {
            let x = self.elements[k].mul(&self.elements[a]);
            self.products += 1;
            match self.find(&x) {
                Some(j) => {
                    self.set_right(k, a, j);
                    self.rules.push((k as u32, a as u32, j));
                    Step::Rule(j as usize)
                }
                None => Step::New(self.push_extension(k, a, x) as usize),
            }
        };
        self.applied += 1;
        Ok(step)
    }

    /// Enumerates until at least `min(limit, |S|)` elements are known.
    ///
    /// Can be called repeatedly with growing limits; each call continues
    /// where the previous one stopped.
    pub fn froidure_pin(&mut self, limit: usize) -> Result<&mut Self> {
        if limit == 0 {
            return Err(Error::Precondition("limit must be positive".into()));
        }
        self.run(limit, |_, _| false)?;
        Ok(self)
    }

    /// Enumerates until `x` is found or the snapshot is complete.
    ///
    /// Returns the index of `x`, or `None` if `x` is not in the semigroup.
    pub fn enumerate_until_member(&mut self, x: &Element) -> Result<Option<usize>> {
        if let Some(i) = self.position(x)? {
            return Ok(Some(i));
        }
        let mut found = None;
        self.run(UNLIMITED, |s, j| {
            if s.elements[j] == *x {
                found = Some(j);
            }
            found.is_some()
        })?;
        Ok(found)
    }

    /// The main loop. `stop` sees every new element and can halt the run
    /// right after it is added.
    fn run(&mut self, limit: usize, mut stop: impl FnMut(&Snapshot, usize) -> bool) -> Result<()> {
        let r = self.nr_gens;
        while self.frontier < self.len() && self.len() < limit {
            let c = self.meta[self.frontier].length;
            while self.frontier < self.len() && self.meta[self.frontier].length == c && self.len() < limit {
                while self.applied < r {
                    if let Step::New(j) = self.update()? {
                        if stop(self, j) {
                            return Ok(());
                        }
                    }
                }
                self.advance();
            }
        }
        Ok(())
    }

    /// Moves past a fully swept frontier element, completing the left table
    /// for its length when it was the last one of that length.
    pub(crate) fn advance(&mut self) {
        debug_assert_eq!(self.applied, self.nr_gens);
        let c = self.meta[self.frontier].length;
        self.applied = 0;
        self.frontier += 1;
        if self.frontier == self.len() || self.meta[self.frontier].length > c {
            let start = self.length_start(self.frontier, c);
            self.fill_left(start, self.frontier);
        }
    }
}

fn missing(v: u32, what: &str) -> Result<u32> {
    if v == UNDEF {
        Err(Error::Precondition(format!("{what} is not known")))
    } else {
        Ok(v)
    }
}
