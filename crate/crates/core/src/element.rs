//! The universe of elements that can be enumerated.
//!
//! Two kinds of element are supported: full transformations of `{0, .., n-1}`
//! and `n x n` Boolean matrices with `n <= 64`. Both are immutable and cheap to
//! clone; the payload sits behind an `Arc` so that snapshots derived from one
//! another share element storage.
//!
//! Transformations act on the right: `(x * y)(p) = y(x(p))`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported Boolean matrix dimension (one `u64` per row).
pub const MAX_BMAT_DIM: usize = 64;

/// A map `{0, .., n-1} -> {0, .., n-1}`, stored as its list of images.
#[derive(Clone, PartialEq, Eq)]
pub struct Transformation {
    images: Arc<[u32]>,
}

impl Transformation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Precondition(
                "transformation degree must be positive".into(),
            ));
        }
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&p| p as usize >= n) {
            return Err(Error::Precondition(format!(
                "image {bad} out of range for degree {n}"
            )));
        }
        Ok(Transformation {
            images: images.into(),
        })
    }

    pub fn identity(degree: usize) -> Self {
        Transformation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    fn compose(&self, other: &Transformation) -> Transformation {
        let rhs = &other.images;
        Transformation {
            images: self.images.iter().map(|&p| rhs[p as usize]).collect(),
        }
    }
}

/// An `n x n` matrix over the Boolean semiring, one packed `u64` per row.
///
/// Bit `j` of row `i` holds entry `(i, j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanMatrix {
    dim: u32,
    rows: Arc<[u64]>,
}

impl BooleanMatrix {
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_BMAT_DIM {
            return Err(Error::Precondition(format!(
                "Boolean matrix dimension must be in 1..={MAX_BMAT_DIM}, got {dim}"
            )));
        }
        let mut packed = Vec::with_capacity(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            let bits = row
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u64, |acc, (j, _)| acc | (1 << j));
            packed.push(bits);
        }
        Ok(BooleanMatrix {
            dim: dim as u32,
            rows: packed.into(),
        })
    }

    /// Builds a matrix from packed rows; bits at or above `dim` must be clear.
    pub fn from_packed(dim: usize, rows: Vec<u64>) -> Result<Self> {
        if dim == 0 || dim > MAX_BMAT_DIM || rows.len() != dim {
            return Err(Error::Precondition(format!(
                "expected {dim} packed rows with 1 <= dim <= {MAX_BMAT_DIM}"
            )));
        }
        let mask = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::Precondition("bit set outside the matrix".into()));
        }
        Ok(BooleanMatrix {
            dim: dim as u32,
            rows: rows.into(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0 && dim <= MAX_BMAT_DIM);
        BooleanMatrix {
            dim: dim as u32,
            rows: (0..dim).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    fn mul(&self, other: &BooleanMatrix) -> BooleanMatrix {
        let rhs = &other.rows;
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc |= rhs[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BooleanMatrix {
            dim: self.dim,
            rows,
        }
    }
}

/// The kind and size shared by every element of one semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Transformation { degree: usize },
    BooleanMatrix { dim: usize },
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Transformation { degree } => {
                write!(f, "transformation of degree {degree}")
            }
            ElementKind::BooleanMatrix { dim } => write!(f, "{dim}x{dim} Boolean matrix"),
        }
    }
}

/// A value of the universe: a transformation or a Boolean matrix.
#[derive(Clone, PartialEq, Eq)]
pub enum Element {
    Transformation(Transformation),
    BooleanMatrix(BooleanMatrix),
}

impl Element {
    /// Convenience constructor for a transformation from its images.
    pub fn transformation(images: Vec<u32>) -> Result<Self> {
        Transformation::new(images).map(Element::Transformation)
    }

    /// Convenience constructor for a Boolean matrix from rows of 0/1 entries.
    pub fn bmat<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&b| b != 0).collect())
            .collect();
        BooleanMatrix::from_rows(&rows).map(Element::BooleanMatrix)
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Transformation(t) => ElementKind::Transformation {
                degree: t.degree(),
            },
            Element::BooleanMatrix(m) => ElementKind::BooleanMatrix { dim: m.dim() },
        }
    }

    /// Multiplies `self * other`, failing if the operands differ in kind or size.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if self.kind() != other.kind() {
            return Err(Error::KindMismatch {
                left: self.kind().to_string(),
                right: other.kind().to_string(),
            });
        }
        Ok(self.mul(other))
    }

    /// Product of two elements already known to share a kind.
    pub(crate) fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Transformation(x), Element::Transformation(y)) => {
                debug_assert_eq!(x.degree(), y.degree());
                Element::Transformation(x.compose(y))
            }
            (Element::BooleanMatrix(x), Element::BooleanMatrix(y)) => {
                debug_assert_eq!(x.dim(), y.dim());
                Element::BooleanMatrix(x.mul(y))
            }
            _ => panic!("mixed element kinds in product"),
        }
    }

    /// Seeded 64-bit digest of the element's value.
    ///
    /// The digest depends only on the value and the seed, never on process
    /// state, so bucket assignments are reproducible between runs.
    pub fn digest(&self, seed: u64) -> u64 {
        let mut h = mix(seed ^ 0x243f_6a88_85a3_08d3);
        match self {
            Element::Transformation(t) => {
                h = mix(h ^ t.degree() as u64);
                for pair in t.images.chunks(2) {
                    let hi = pair.get(1).copied().unwrap_or(u32::MAX) as u64;
                    h = mix(h ^ (pair[0] as u64 | hi << 32));
                }
            }
            Element::BooleanMatrix(m) => {
                h = mix(h ^ ((m.dim() as u64) << 32) ^ 0xb5);
                for &row in m.rows.iter() {
                    h = mix(h ^ row);
                }
            }
        }
        h
    }
}

// splitmix64 finaliser
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.digest(0));
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Transformation(t) => {
                write!(f, "[")?;
                for (i, p) in t.images.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
            Element::BooleanMatrix(m) => {
                write!(f, "[")?;
                for i in 0..m.dim() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for j in 0..m.dim() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", m.get(i, j) as u8)?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum GeneratorDocument {
    #[serde(rename = "transformation")]
    Transformation { degree: usize, gens: Vec<Vec<u32>> },
    #[serde(rename = "bmat")]
    Bmat { dim: usize, gens: Vec<Vec<Vec<u8>>> },
}

/// Parses a generator document.
///
/// ```json
/// {"type": "transformation", "degree": 3, "gens": [[1,2,0],[1,0,2],[0,1,0]]}
/// {"type": "bmat", "dim": 2, "gens": [[[0,1],[1,0]]]}
/// ```
///
/// File order fixes the letter order of the generators.
pub fn parse_generators(document: &str) -> Result<Vec<Element>> {
    let doc: GeneratorDocument = serde_json::from_str(document)?;
    let gens = match doc {
        GeneratorDocument::Transformation { degree, gens } => gens
            .into_iter()
            .enumerate()
            .map(|(index, images)| {
                if images.len() != degree {
                    return Err(Error::MalformedGenerator {
                        index,
                        reason: format!("has {} images, expected degree {degree}", images.len()),
                    });
                }
                Element::transformation(images).map_err(|e| Error::MalformedGenerator {
                    index,
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        GeneratorDocument::Bmat { dim, gens } => gens
            .into_iter()
            .enumerate()
            .map(|(index, rows)| {
                if rows.len() != dim {
                    return Err(Error::MalformedGenerator {
                        index,
                        reason: format!("has {} rows, expected dim {dim}", rows.len()),
                    });
                }
                if rows.iter().flatten().any(|&b| b > 1) {
                    return Err(Error::MalformedGenerator {
                        index,
                        reason: "entries must be 0 or 1".into(),
                    });
                }
                Element::bmat(&rows).map_err(|e| Error::MalformedGenerator {
                    index,
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    check_generators(&gens)?;
    Ok(gens)
}

/// Checks that a generator list is non-empty, of one kind, and duplicate-free.
pub fn check_generators(gens: &[Element]) -> Result<()> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let kind = first.kind();
    let mut seen = hashbrown::HashSet::with_capacity(gens.len());
    for (index, g) in gens.iter().enumerate() {
        if g.kind() != kind {
            return Err(Error::MalformedGenerator {
                index,
                reason: format!("is a {}, expected a {kind}", g.kind()),
            });
        }
        if !seen.insert(g) {
            return Err(Error::DuplicateGenerator { index });
        }
    }
    Ok(())
}

/// Renders generators in the on-disk document format.
pub fn generators_to_json(gens: &[Element]) -> Result<String> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let doc = match first.kind() {
        ElementKind::Transformation { degree } => GeneratorDocument::Transformation {
            degree,
            gens: gens
                .iter()
                .map(|g| match g {
                    Element::Transformation(t) => Ok(t.images().to_vec()),
                    _ => Err(Error::Precondition("mixed generator kinds".into())),
                })
                .collect::<Result<_>>()?,
        },
        ElementKind::BooleanMatrix { dim } => GeneratorDocument::Bmat {
            dim,
            gens: gens
                .iter()
                .map(|g| match g {
                    Element::BooleanMatrix(m) => Ok((0..dim)
                        .map(|i| (0..dim).map(|j| m.get(i, j) as u8).collect())
                        .collect()),
                    _ => Err(Error::Precondition("mixed generator kinds".into())),
                })
                .collect::<Result<_>>()?,
        },
    };
    Ok(serde_json::to_string(&doc)?)
}

/// The three standard generators of the full transformation monoid of degree `n`:
/// an `n`-cycle, a transposition, and the map collapsing `n - 1` onto `0`.
///
/// `n` must be at least 2; for `n == 2` the cycle and transposition coincide,
/// so only two generators are returned.
pub fn full_transformation_generators(n: usize) -> Vec<Element> {
    assert!(n >= 2, "degree must be at least 2");
    let n32 = n as u32;
    let cycle: Vec<u32> = (0..n32).map(|i| (i + 1) % n32).collect();
    let mut swap: Vec<u32> = (0..n32).collect();
    swap.swap(0, 1);
    let mut collapse: Vec<u32> = (0..n32).collect();
    collapse[n - 1] = 0;
    let mut gens = vec![Element::transformation(cycle).unwrap()];
    if n > 2 {
        gens.push(Element::transformation(swap).unwrap());
    }
    gens.push(Element::transformation(collapse).unwrap());
    gens
}
