//! Words over the generator alphabet, ordered short-lex.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A letter: the position of a generator in the generator list.
pub type Letter = usize;

/// A finite sequence of letters.
///
/// `Ord` is the short-lex order: shorter words come first, words of equal
/// length compare lexicographically by letter index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    /// Returns `self` followed by `a`.
    pub fn append(&self, a: Letter) -> Word {
        let mut out = self.0.clone();
        out.push(a);
        Word(out)
    }

    /// Returns `a` followed by `self`.
    pub fn prepend(&self, a: Letter) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(a);
        out.extend_from_slice(&self.0);
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Splits `w` as `f . s` and as `p . l`.
    pub fn decompose(&self) -> Result<Decomposition> {
        let (&first, suffix) = self.0.split_first().ok_or(Error::EmptyWord)?;
        let (&last, prefix) = self.0.split_last().ok_or(Error::EmptyWord)?;
        Ok(Decomposition {
            first,
            suffix: Word(suffix.to_vec()),
            prefix: Word(prefix.to_vec()),
            last,
        })
    }
}

/// The first/last letter split of a non-empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub first: Letter,
    /// Everything after the first letter.
    pub suffix: Word,
    /// Everything before the last letter.
    pub prefix: Word,
    pub last: Letter,
}

pub fn shortlex_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

/// Renders as `a0.a1.a1`; the empty word renders as `ε`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "a{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> Word {
        Word::from(letters)
    }

    /// All words of length 0..=max_len over an alphabet of size r.
    fn all_words(r: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|u| (0..r).map(move |a| u.append(a)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn shorter_words_come_first() {
        assert_eq!(w(&[1]).cmp(&w(&[0, 1])), Ordering::Less);
        assert_eq!(w(&[0, 1]).cmp(&w(&[0, 2])), Ordering::Less);
        assert_eq!(w(&[0, 1]).cmp(&w(&[0, 1])), Ordering::Equal);
        assert_eq!(w(&[2, 0]).cmp(&w(&[1, 2])), Ordering::Greater);
    }

    #[test]
    fn decompose_single_letter() {
        let d = w(&[2]).decompose().unwrap();
        assert_eq!(d.first, 2);
        assert_eq!(d.last, 2);
        assert!(d.prefix.is_empty() && d.suffix.is_empty());
    }

    #[test]
    fn decompose_three_letters() {
        let d = w(&[0, 1, 2]).decompose().unwrap();
        assert_eq!((d.first, d.last), (0, 2));
        assert_eq!(d.suffix, w(&[1, 2]));
        assert_eq!(d.prefix, w(&[0, 1]));
    }

    #[test]
    fn decompose_empty_is_an_error() {
        assert!(matches!(Word::empty().decompose(), Err(Error::EmptyWord)));
    }

    #[test]
    fn decompositions_reassemble() {
        let words = all_words(3, 4);
        assert_eq!(words.len(), 1 + 3 + 9 + 27 + 81);
        for u in words.iter().filter(|u| !u.is_empty()) {
            let d = u.decompose().unwrap();
            assert_eq!(&d.prefix.append(d.last), u);
            assert_eq!(&d.suffix.prepend(d.first), u);
            assert_eq!(d.prefix.len(), u.len() - 1);
        }
    }

    #[test]
    fn multiplication_preserves_order() {
        // u < v implies au < av and ua < va
        let words = all_words(3, 3);
        for u in &words {
            for v in &words {
                if u < v {
                    for a in 0..3 {
                        assert!(u.prepend(a) < v.prepend(a), "{u} {v} {a}");
                        assert!(u.append(a) < v.append(a), "{u} {v} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn order_of_extensions_bounds_order_of_prefixes() {
        // ua <= vb implies u <= v
        let words = all_words(3, 3);
        for u in &words {
            for v in &words {
                for a in 0..3 {
                    for b in 0..3 {
                        if u.append(a) <= v.append(b) {
                            assert!(u <= v, "{u}.a{a} <= {v}.a{b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shortlex_is_a_total_order() {
        let words = all_words(3, 3);
        for u in &words {
            for v in &words {
                let uv = u.cmp(v);
                assert_eq!(uv, v.cmp(u).reverse());
                if uv == Ordering::Equal {
                    assert_eq!(u, v);
                }
                for x in &words {
                    if u < v && v < x {
                        assert!(u < x);
                    }
                }
            }
        }
    }

    #[test]
    fn renders_letters_with_dots() {
        assert_eq!(w(&[1, 1]).to_string(), "a1.a1");
        assert_eq!(w(&[0]).to_string(), "a0");
    }
}
