//! Operadic composition on doubly-even codes.
//!
//! For an outer code `L ⊆ F₂ᴺ` and inner codes `L₁, …, L_N` of lengths
//! `k₁, …, k_N`, the composite lives in `F₂^(k₁+…+k_N)` with block `i` on the
//! contiguous coordinates `k₁+…+k_{i-1} .. k₁+…+k_i`. The *raw set* holds
//! every word whose block `i` is some `cᵢ ∈ Lᵢ` when the outer codeword has
//! bit `i` set, and zero otherwise. The raw set is a union of subspaces but
//! need not be closed under addition, so [`gamma`] returns its linear span.

use std::collections::BTreeSet;

use crate::codes::{BinaryCode, Permutation};
use crate::error::{Error, Result};
use crate::gf2::BitWord;

/// An outer code together with one inner code per outer coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionInput {
    outer: BinaryCode,
    inners: Vec<BinaryCode>,
}

impl CompositionInput {
    pub fn new(outer: BinaryCode, inners: Vec<BinaryCode>) -> Result<Self> {
        if outer.length() != inners.len() {
            return Err(Error::LengthMismatch {
                expected: outer.length(),
                found: inners.len(),
            });
        }
        Ok(CompositionInput { outer, inners })
    }

    pub fn outer(&self) -> &BinaryCode {
        &self.outer
    }

    pub fn inners(&self) -> &[BinaryCode] {
        &self.inners
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.inners.iter().map(BinaryCode::length).collect()
    }

    pub fn composed_length(&self) -> usize {
        self.inners.iter().map(BinaryCode::length).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        offsets(&self.block_sizes())
    }
}

fn offsets(blocks: &[usize]) -> Vec<usize> {
    blocks
        .iter()
        .scan(0, |acc, &k| {
            let start = *acc;
            *acc += k;
            Some(start)
        })
        .collect()
}

/// The literal composite set, before taking the span.
pub fn gamma_raw_set(input: &CompositionInput, cap: u128) -> Result<BTreeSet<BitWord>> {
    let needed = input
        .inners
        .iter()
        .try_fold(input.outer.size(), |acc, l| acc.checked_mul(l.size()))
        .unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "raw composite set",
            needed,
            cap,
        });
    }
    let total = input.composed_length();
    let offsets = input.offsets();
    let inner_words: Vec<Vec<BitWord>> = input
        .inners
        .iter()
        .map(|l| l.codewords(cap))
        .collect::<Result<_>>()?;

    let mut out = BTreeSet::new();
    for c in input.outer.codewords(cap)? {
        // Cartesian product over the active blocks.
        let mut partial = vec![BitWord::zeros(total)];
        for i in c.ones() {
            let mut grown = Vec::with_capacity(partial.len() * inner_words[i].len());
            for base in &partial {
                for ci in &inner_words[i] {
                    let mut word = base.clone();
                    for j in ci.ones() {
                        word.set(offsets[i] + j, true);
                    }
                    grown.push(word);
                }
            }
            partial = grown;
        }
        out.extend(partial);
    }
    Ok(out)
}

/// Operadic composition `γ(L; L₁, …, L_N)`: the span of the raw set.
///
/// The raw set is the union over outer codewords `c` of the subspaces
/// `⊕_{i ∈ supp c} Lᵢ`, so its span is `⊕_{i ∈ supp L} Lᵢ`, built here
/// directly from embedded inner generators.
pub fn gamma(input: &CompositionInput) -> Result<BinaryCode> {
    let total = input.composed_length();
    let offsets = input.offsets();
    let support = input.outer.support();
    let generators = support
        .ones()
        .flat_map(|i| input.inners[i].embedded_generators(total, offsets[i]))
        .collect();
    BinaryCode::new(total, generators)
}

/// Size bookkeeping for a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub code: BinaryCode,
    pub raw_set_size: usize,
    pub span_size: u128,
    pub raw_set_linear: bool,
}

/// Composes and reports whether the raw set was already a linear code.
pub fn compose_with_report(input: &CompositionInput, cap: u128) -> Result<CompositionReport> {
    let raw = gamma_raw_set(input, cap)?;
    let code = gamma(input)?;
    let span_size = code.size();
    Ok(CompositionReport {
        raw_set_size: raw.len(),
        raw_set_linear: raw.len() as u128 == span_size,
        span_size,
        code,
    })
}

/// Whether a set of words containing zero is closed under addition.
pub fn is_xor_closed(set: &BTreeSet<BitWord>) -> bool {
    set.iter()
        .all(|a| set.iter().all(|b| set.contains(&(a ^ b))))
}

/// Partial composition `L ∘ᵢ L′` with a 1-based slot `i`.
///
/// Every coordinate other than `i` keeps its outer bit, and coordinate `i`
/// is replaced by a block that is some `c′ ∈ L′` when the outer bit is set
/// and zero otherwise. The span is the projection of `L` away from
/// coordinate `i`, plus the embedded `L′` when `i` lies in the support of `L`.
/// The result is linear but in general not doubly even.
pub fn insert(outer: &BinaryCode, i: usize, inner: &BinaryCode) -> Result<BinaryCode> {
    let n = outer.length();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let slot = i - 1;
    let m = inner.length();
    let total = n + m - 1;
    let shift = |j: usize| if j < slot { j } else { j + m - 1 };

    let mut generators: Vec<BitWord> = outer
        .generators()
        .iter()
        .map(|g| BitWord::from_ones(total, g.ones().filter(|&j| j != slot).map(shift)))
        .collect();
    if outer.support().get(slot) {
        generators.extend(inner.embedded_generators(total, slot));
    }
    BinaryCode::new(total, generators)
}

/// The raw set of `L ∘ᵢ L′`, for cross-checking [`insert`].
pub fn insert_raw_set(
    outer: &BinaryCode,
    i: usize,
    inner: &BinaryCode,
    cap: u128,
) -> Result<BTreeSet<BitWord>> {
    let n = outer.length();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let needed = outer.size().saturating_mul(inner.size());
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "raw insertion set",
            needed,
            cap,
        });
    }
    let slot = i - 1;
    let m = inner.length();
    let total = n + m - 1;
    let inner_words = inner.codewords(cap)?;
    let mut out = BTreeSet::new();
    for c in outer.codewords(cap)? {
        let mut head = BitWord::zeros(total);
        for j in c.ones().filter(|&j| j != slot) {
            head.set(if j < slot { j } else { j + m - 1 }, true);
        }
        if c.get(slot) {
            for cp in &inner_words {
                let mut word = head.clone();
                for t in cp.ones() {
                    word.set(slot + t, true);
                }
                out.insert(word);
            }
        } else {
            out.insert(head);
        }
    }
    Ok(out)
}

/// `γ` as iterated insertions `(…((L ∘_N L_N) ∘_{N−1} L_{N−1}) … ∘₁ L₁)`.
pub fn gamma_by_insertions(input: &CompositionInput) -> Result<BinaryCode> {
    let mut acc = input.outer.clone();
    for (slot, inner) in input.inners.iter().enumerate().rev() {
        acc = insert(&acc, slot + 1, inner)?;
    }
    Ok(acc)
}

/// The permutation of `k₁+…+k_N` coordinates that moves block `i` (kept
/// contiguous and in order) to block position `s(i)`.
pub fn block_permutation(s: &Permutation, blocks: &[usize]) -> Result<Permutation> {
    if s.degree() != blocks.len() {
        return Err(Error::DegreeMismatch {
            expected: blocks.len(),
            found: s.degree(),
        });
    }
    let inv = s.inverse();
    let new_sizes: Vec<usize> = (0..blocks.len()).map(|j| blocks[inv.apply(j)]).collect();
    let new_offsets = offsets(&new_sizes);
    let images = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| {
            let start = new_offsets[s.apply(i)];
            start..start + k
        })
        .collect();
    Permutation::new(images)
}

/// The block-diagonal permutation acting on block `i` by `perms[i]`.
pub fn within_block_permutation(perms: &[Permutation], blocks: &[usize]) -> Result<Permutation> {
    if perms.len() != blocks.len() {
        return Err(Error::DegreeMismatch {
            expected: blocks.len(),
            found: perms.len(),
        });
    }
    let mut images = Vec::with_capacity(blocks.iter().sum());
    let mut offset = 0;
    for (p, &k) in perms.iter().zip(blocks) {
        if p.degree() != k {
            return Err(Error::DegreeMismatch {
                expected: k,
                found: p.degree(),
            });
        }
        images.extend(p.images().iter().map(|&j| offset + j));
        offset += k;
    }
    Permutation::new(images)
}
