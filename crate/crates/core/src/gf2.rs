//! Bitpacked linear algebra over F₂.
//!
//! [`BitWord`] is a fixed-length vector over F₂ stored in 64-bit limbs; words
//! of up to 64 coordinates live inline without allocation. Coordinates are
//! 0-based in the Rust API. The textual form lists coordinate 0 (the first
//! coordinate of the word) leftmost, so `"1000"` is the first unit vector.
//!
//! Row reduction treats the *lowest* coordinate index as the leading one,
//! which makes reduced row-echelon form agree with the lexicographic order
//! on textual forms.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

const LIMB: usize = 64;

type Limbs = SmallVec<[u64; 1]>;

fn limbs_for(len: usize) -> usize {
    len.div_ceil(LIMB).max(1)
}

/// A vector of `len` coordinates over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    limbs: Limbs,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord {
            len,
            limbs: smallvec![0; limbs_for(len)],
        }
    }

    /// The unit vector with coordinate `i` set.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Self::zeros(len);
        w.set(i, true);
        w
    }

    /// Builds a word from the set coordinates. Panics on an out-of-range index.
    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut w = Self::zeros(len);
        for i in ones {
            w.set(i, true);
        }
        w
    }

    /// Builds a word of length `len <= 64` whose coordinate `i` is bit `i` of `bits`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= LIMB, "from_u64 supports at most 64 coordinates");
        let mask = if len == LIMB { u64::MAX } else { (1u64 << len) - 1 };
        BitWord {
            len,
            limbs: smallvec![bits & mask],
        }
    }

    /// Coordinates packed into a `u64`, coordinate `i` at bit `i`. Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= LIMB, "to_u64 supports at most 64 coordinates");
        self.limbs[0]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        (self.limbs[i / LIMB] >> (i % LIMB)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % LIMB);
        if value {
            self.limbs[i / LIMB] |= bit;
        } else {
            self.limbs[i / LIMB] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        self.limbs[i / LIMB] ^= 1u64 << (i % LIMB);
    }

    /// Hamming weight: the number of set coordinates.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Parity of the coordinatewise product, i.e. the standard inner product.
    pub fn dot(&self, other: &BitWord) -> bool {
        self.check_len(other);
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Index of the first set coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(k, l)| k * LIMB + l.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(k, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * LIMB + t)
                }
            })
        })
    }

    /// Concatenation of words, first argument leftmost.
    pub fn concat<'a, I: IntoIterator<Item = &'a BitWord>>(parts: I) -> BitWord {
        let parts: Vec<&BitWord> = parts.into_iter().collect();
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = BitWord::zeros(len);
        let mut offset = 0;
        for p in parts {
            for i in p.ones() {
                out.set(offset + i, true);
            }
            offset += p.len;
        }
        out
    }

    /// The `len` coordinates starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> BitWord {
        assert!(start + len <= self.len, "slice out of range");
        BitWord::from_ones(
            len,
            self.ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    /// Moves coordinate `i` to coordinate `images[i]`.
    pub fn permuted(&self, images: &[usize]) -> BitWord {
        assert_eq!(images.len(), self.len, "permutation degree mismatch");
        BitWord::from_ones(self.len, self.ones().map(|i| images[i]))
    }

    fn check_len(&self, other: &BitWord) {
        assert_eq!(
            self.len, other.len,
            "word lengths differ: {} vs {}",
            self.len, other.len
        );
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = BitWord::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} in bit word {s:?}"
                    )))
                }
            }
        }
        Ok(w)
    }
}

/// Words compare by length, then lexicographically on the textual form.
impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.limbs.iter().zip(&other.limbs) {
                let diff = a ^ b;
                if diff != 0 {
                    let bit = 1u64 << diff.trailing_zeros();
                    return if a & bit != 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXorAssign<&BitWord> for BitWord {
    fn bitxor_assign(&mut self, rhs: &BitWord) {
        self.check_len(rhs);
        for (a, b) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitWord {
    type Output = BitWord;

    fn bitxor(self, rhs: &BitWord) -> BitWord {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd for &BitWord {
    type Output = BitWord;

    fn bitand(self, rhs: &BitWord) -> BitWord {
        self.check_len(rhs);
        BitWord {
            len: self.len,
            limbs: self
                .limbs
                .iter()
                .zip(&rhs.limbs)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

impl Serialize for BitWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A matrix over F₂ stored as rows of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    ncols: usize,
    rows: Vec<BitWord>,
}

/// Result of [`GF2Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows in reduced row-echelon form, ordered by pivot.
    pub reduced: GF2Matrix,
    pub rank: usize,
    /// Pivot column of each reduced row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl GF2Matrix {
    pub fn new(ncols: usize, rows: Vec<BitWord>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(GF2Matrix { ncols, rows })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitWord> {
        self.rows
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let pivots = eliminate(&mut rows, self.ncols);
        Rref {
            rank: pivots.len(),
            pivots,
            reduced: GF2Matrix {
                ncols: self.ncols,
                rows,
            },
        }
    }

    /// `self · x`, one output bit per row.
    pub fn mul_vec(&self, x: &BitWord) -> BitWord {
        BitWord::from_ones(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(i, _)| i),
        )
    }
}

/// Gauss-Jordan elimination in place. Returns the pivot columns; zero rows
/// are dropped and the survivors are sorted by pivot.
pub(crate) fn eliminate(rows: &mut Vec<BitWord>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j != rank && row.get(col) {
                *row ^= &pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Reduces `word` against rows in reduced row-echelon form with the given pivots.
pub(crate) fn reduce_against(word: &BitWord, rows: &[BitWord], pivots: &[usize]) -> BitWord {
    let mut w = word.clone();
    for (row, &p) in rows.iter().zip(pivots) {
        if w.get(p) {
            w ^= row;
        }
    }
    w
}

/// A consistent affine system's solution set: `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: BitWord,
    pub nullspace: Vec<BitWord>,
}

impl AffineSolution {
    /// log₂ of the number of solutions.
    pub fn nullity(&self) -> usize {
        self.nullspace.len()
    }

    /// The number of solutions, if it fits in a `u128`.
    pub fn count(&self) -> Option<u128> {
        1u128.checked_shl(self.nullity() as u32)
    }
}

/// Solves `a · x = b` over F₂.
///
/// Returns `Ok(None)` when the system is inconsistent. The particular solution
/// sets every free variable to zero.
pub fn solve_affine(a: &GF2Matrix, b: &BitWord) -> Result<Option<AffineSolution>> {
    if b.len() != a.nrows() {
        return Err(Error::LengthMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    // Augmented column sits at index n; a pivot there means 0 = 1.
    let mut rows: Vec<BitWord> = a
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut aug = BitWord::zeros(n + 1);
            for j in row.ones() {
                aug.set(j, true);
            }
            aug.set(n, b.get(i));
            aug
        })
        .collect();
    let pivots = eliminate(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }

    let mut particular = BitWord::zeros(n);
    for (row, &p) in rows.iter().zip(&pivots) {
        particular.set(p, row.get(n));
    }

    let is_pivot: BTreeSet<usize> = pivots.iter().copied().collect();
    let nullspace = (0..n)
        .filter(|c| !is_pivot.contains(c))
        .map(|free| {
            let mut v = BitWord::unit(n, free);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    Ok(Some(AffineSolution {
        particular,
        nullspace,
    }))
}

/// All elements of the span of `generators` (words of length `len`), sorted.
///
/// Fails with `CapExceeded` when the span has more than `cap` elements.
pub fn span_closure(len: usize, generators: &[BitWord], cap: u128) -> Result<Vec<BitWord>> {
    let m = GF2Matrix::new(len, generators.to_vec())?;
    let basis = m.rref().reduced.into_rows();
    span_of_basis(len, &basis, cap)
}

/// Span of linearly independent `basis` words of length `len`, sorted.
pub(crate) fn span_of_basis(len: usize, basis: &[BitWord], cap: u128) -> Result<Vec<BitWord>> {
    let size = 1u128.checked_shl(basis.len() as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded {
            what: "span",
            needed: size,
            cap,
        });
    }
    // Gray-code walk: each step toggles one basis vector.
    let mut out = Vec::with_capacity(size as usize);
    let mut current = BitWord::zeros(len);
    out.push(current.clone());
    for step in 1..size as u64 {
        current ^= &basis[step.trailing_zeros() as usize];
        out.push(current.clone());
    }
    out.sort();
    Ok(out)
}
