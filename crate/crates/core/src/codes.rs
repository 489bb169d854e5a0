//! Binary linear codes and the doubly-even family.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, GF2Matrix};
pub use crate::perm::Permutation;

/// Largest length accepted by [`enumerate_doubly_even`].
pub const ENUMERATION_LIMIT: usize = 8;

/// Largest length accepted by [`BinaryCode::automorphisms`].
pub const AUTOMORPHISM_LIMIT: usize = 8;

/// A linear subspace of F₂ᴺ stored by its reduced row-echelon generators.
///
/// The generator list is canonical, so two codes are equal exactly when
/// they are the same subspace of the same ambient space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    length: usize,
    generators: Vec<BitWord>,
    pivots: Vec<usize>,
}

impl BinaryCode {
    pub fn new(length: usize, generators: Vec<BitWord>) -> Result<Self> {
        let rref = GF2Matrix::new(length, generators)?.rref();
        Ok(BinaryCode {
            length,
            generators: rref.reduced.into_rows(),
            pivots: rref.pivots,
        })
    }

    /// The zero code `{0…0}`.
    pub fn trivial(length: usize) -> Self {
        BinaryCode {
            length,
            generators: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[BitWord] {
        &self.generators
    }

    /// Leading coordinate of each canonical generator.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Number of codewords, `2^dimension`.
    pub fn size(&self) -> u128 {
        1u128 << self.dimension()
    }

    /// Reduces `word` modulo the code. The result is the lexicographically
    /// smallest member of the coset `word + L`: it vanishes on every pivot.
    pub fn reduce(&self, word: &BitWord) -> BitWord {
        gf2::reduce_against(word, &self.generators, &self.pivots)
    }

    pub fn contains(&self, word: &BitWord) -> bool {
        word.len() == self.length && self.reduce(word).is_zero()
    }

    /// All codewords in lexicographic order.
    pub fn codewords(&self, cap: u128) -> Result<Vec<BitWord>> {
        gf2::span_of_basis(self.length, &self.generators, cap)
    }

    /// Coordinates on which some codeword is nonzero.
    pub fn support(&self) -> BitWord {
        let mut s = BitWord::zeros(self.length);
        for g in &self.generators {
            for i in g.ones() {
                s.set(i, true);
            }
        }
        s
    }

    /// Doubly-even test on generators alone.
    ///
    /// Uses `wt(u + v) = wt(u) + wt(v) − 2·wt(u ∧ v)`: if every generator has
    /// weight ≡ 0 (mod 4) and every pair meets in an even number of
    /// coordinates, then every sum keeps weight ≡ 0 (mod 4). Conversely a
    /// doubly-even code has `wt(u ∧ v)` even for all codewords `u, v`.
    pub fn is_doubly_even(&self) -> bool {
        self.generators.iter().all(|g| g.weight() % 4 == 0)
            && self
                .generators
                .iter()
                .tuple_combinations()
                .all(|(g, h)| !g.dot(h))
    }

    /// Exhaustive weight histogram: entry `w` counts codewords of weight `w`.
    pub fn weight_distribution(&self, cap: u128) -> Result<Vec<u128>> {
        let mut hist = vec![0u128; self.length + 1];
        for c in self.codewords(cap)? {
            hist[c.weight()] += 1;
        }
        Ok(hist)
    }

    /// The image code `{s(c) : c ∈ L}`, where `s(c)` moves coordinate `i` to `s(i)`.
    pub fn permute(&self, s: &Permutation) -> Result<BinaryCode> {
        if s.degree() != self.length {
            return Err(Error::DegreeMismatch {
                expected: self.length,
                found: s.degree(),
            });
        }
        let images = self
            .generators
            .iter()
            .map(|g| g.permuted(s.images()))
            .collect();
        BinaryCode::new(self.length, images)
    }

    /// Whether `s` maps the code onto itself.
    pub fn is_preserved_by(&self, s: &Permutation) -> bool {
        s.degree() == self.length
            && self
                .generators
                .iter()
                .all(|g| self.contains(&g.permuted(s.images())))
    }

    /// The permutation automorphism group, by brute force over S_N.
    ///
    /// Each candidate is rejected at the first generator whose image leaves
    /// the code. The output is sorted.
    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        if self.length > AUTOMORPHISM_LIMIT {
            return Err(Error::LengthTooLarge {
                length: self.length,
                limit: AUTOMORPHISM_LIMIT,
            });
        }
        let group = (0..self.length)
            .permutations(self.length)
            .map(|images| Permutation::new(images).expect("itertools yields bijections"))
            .filter(|s| self.is_preserved_by(s))
            .collect();
        Ok(group)
    }

    /// Embeds the code into coordinates `offset..offset+length` of a longer word.
    pub(crate) fn embedded_generators(&self, total: usize, offset: usize) -> Vec<BitWord> {
        self.generators
            .iter()
            .map(|g| BitWord::from_ones(total, g.ones().map(|i| i + offset)))
            .collect()
    }
}

/// Codes order by length, then dimension, then generator text.
impl Ord for BinaryCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then(self.dimension().cmp(&other.dimension()))
            .then_with(|| self.generators.cmp(&other.generators))
    }
}

impl PartialOrd for BinaryCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{{{}}}", BitWord::zeros(self.length));
        }
        write!(f, "span{{{}}}", self.generators.iter().join(", "))
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode({self})")
    }
}

/// JSON form of a code: `{ "length": N, "generators": ["0101…", …] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub length: usize,
    pub generators: Vec<BitWord>,
}

impl From<&BinaryCode> for CodeRecord {
    fn from(code: &BinaryCode) -> Self {
        CodeRecord {
            length: code.length,
            generators: code.generators.clone(),
        }
    }
}

impl TryFrom<CodeRecord> for BinaryCode {
    type Error = Error;

    fn try_from(record: CodeRecord) -> Result<Self> {
        BinaryCode::new(record.length, record.generators)
    }
}

impl BinaryCode {
    pub fn to_record(&self) -> CodeRecord {
        CodeRecord::from(self)
    }
}

/// Hamming weight of a word.
pub fn weight(w: &BitWord) -> usize {
    w.weight()
}

/// Every doubly-even code of length `n`, in canonical order.
///
/// Builds codes one dimension at a time: a doubly-even code of dimension
/// `d + 1` contains one of dimension `d`, and adding a doubly-even word
/// orthogonal to a doubly-even code keeps it doubly even.
pub fn enumerate_doubly_even(n: usize, cap: usize) -> Result<Vec<BinaryCode>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::LengthTooLarge {
            length: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let candidates: Vec<BitWord> = (1u64..1 << n)
        .map(|bits| BitWord::from_u64(n, bits))
        .filter(|w| w.weight() % 4 == 0)
        .collect();

    let mut all: Vec<BinaryCode> = vec![BinaryCode::trivial(n)];
    let mut layer: BTreeSet<BinaryCode> = all.iter().cloned().collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for code in &layer {
            for w in &candidates {
                if code.contains(w) || code.generators.iter().any(|g| g.dot(w)) {
                    continue;
                }
                let mut gens = code.generators.clone();
                gens.push(w.clone());
                next.insert(BinaryCode::new(n, gens)?);
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::CapExceeded {
                what: "doubly-even code enumeration",
                needed: all.len() as u128,
                cap: cap as u128,
            });
        }
        layer = next;
    }
    Ok(all)
}
