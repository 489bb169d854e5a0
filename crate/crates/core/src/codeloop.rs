//! Code loops: central extensions of a doubly-even code by `{±1}`.
//!
//! Elements are pairs `(ε, u)` with `ε ∈ {+1, −1}` stored as a bit and
//! `u ∈ L`. The product is `(ε, u)(δ, v) = (εδ(−1)^θ(u,v), u + v)` for a
//! cocycle `θ: L × L → F₂` satisfying, for all codewords `u, v, w`:
//!
//! * `θ(u, u) = wt(u)/4`
//! * `θ(u, v) + θ(v, u) = wt(u ∧ v)/2`
//! * `θ(u, v) + θ(u + v, w) + θ(v, w) + θ(u, v + w) = wt(u ∧ v ∧ w)`
//!
//! all mod 2. These make squares, commutators and associators equal to the
//! signs `α(u)`, `φ(u, v)` and `ψ(u, v, w)` of the right-hand sides.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::{self, AffineSolution, BitWord, GF2Matrix};

/// Default bound on `|L|` for cocycle construction.
pub const DEFAULT_ELEMENT_CAP: usize = 16;

/// Bound on loop order for exhaustive identity checks and tables.
pub const TABLE_CAP: usize = 512;

/// `α(u) = wt(u)/4 mod 2`.
pub fn alpha(u: &BitWord) -> bool {
    (u.weight() / 4) % 2 == 1
}

/// `φ(u, v) = wt(u ∧ v)/2 mod 2`.
pub fn phi(u: &BitWord, v: &BitWord) -> bool {
    ((u & v).weight() / 2) % 2 == 1
}

/// `ψ(u, v, w) = wt(u ∧ v ∧ w) mod 2`.
pub fn psi(u: &BitWord, v: &BitWord, w: &BitWord) -> bool {
    (&(u & v) & w).weight() % 2 == 1
}

/// Codewords in lexicographic order with an addition table on indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CodewordTable {
    words: Vec<BitWord>,
    index: HashMap<BitWord, usize>,
    add: Vec<usize>,
}

impl CodewordTable {
    fn new(code: &BinaryCode, cap: usize) -> Result<Self> {
        if code.size() > cap as u128 {
            return Err(Error::CapExceeded {
                what: "code loop codewords",
                needed: code.size(),
                cap: cap as u128,
            });
        }
        let words = code.codewords(cap as u128)?;
        let index: HashMap<BitWord, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut add = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = index[&(&words[i] ^ &words[j])];
            }
        }
        Ok(CodewordTable { words, index, add })
    }

    fn len(&self) -> usize {
        self.words.len()
    }

    fn sum(&self, i: usize, j: usize) -> usize {
        self.add[i * self.len() + j]
    }
}

/// A function `θ: L × L → F₂`, stored densely over index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    table: CodewordTable,
    theta: Vec<bool>,
}

/// Which of the three defining identities a cocycle satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleCheck {
    pub diagonal: bool,
    pub symmetrization: bool,
    pub associator: bool,
}

impl CocycleCheck {
    pub fn passed(&self) -> bool {
        self.diagonal && self.symmetrization && self.associator
    }
}

impl Cocycle {
    /// Codewords in the order used for indices.
    pub fn words(&self) -> &[BitWord] {
        &self.table.words
    }

    pub fn value(&self, u: &BitWord, v: &BitWord) -> Result<bool> {
        let i = self.word_index(u)?;
        let j = self.word_index(v)?;
        Ok(self.theta_at(i, j))
    }

    fn word_index(&self, u: &BitWord) -> Result<usize> {
        self.table
            .index
            .get(u)
            .copied()
            .ok_or_else(|| Error::ElementNotInLoop(u.to_string()))
    }

    fn theta_at(&self, i: usize, j: usize) -> bool {
        self.theta[i * self.table.len() + j]
    }

    /// Exhaustively checks the three defining identities.
    pub fn check(&self) -> CocycleCheck {
        let t = &self.table;
        let n = t.len();
        let w = &t.words;
        let diagonal = (0..n).all(|i| self.theta_at(i, i) == alpha(&w[i]));
        let symmetrization = (0..n).all(|i| {
            (0..n).all(|j| (self.theta_at(i, j) ^ self.theta_at(j, i)) == phi(&w[i], &w[j]))
        });
        let associator = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let lhs = self.theta_at(i, j)
                        ^ self.theta_at(t.sum(i, j), k)
                        ^ self.theta_at(j, k)
                        ^ self.theta_at(i, t.sum(j, k));
                    lhs == psi(&w[i], &w[j], &w[k])
                })
            })
        });
        CocycleCheck {
            diagonal,
            symmetrization,
            associator,
        }
    }
}

/// Every cocycle of a code: a particular solution plus the kernel of the
/// homogeneous system, one unknown per ordered pair of codewords.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    table: CodewordTable,
    solution: AffineSolution,
}

impl CocycleSpace {
    /// The solution with every free unknown set to zero.
    pub fn canonical(&self) -> Cocycle {
        self.from_bits(&self.solution.particular)
    }

    /// log₂ of the number of cocycles.
    pub fn nullity(&self) -> usize {
        self.solution.nullity()
    }

    /// The particular solution shifted by the kernel vectors selected by `mask`.
    pub fn shifted(&self, mask: &BitWord) -> Cocycle {
        let mut bits = self.solution.particular.clone();
        for k in mask.ones() {
            bits ^= &self.solution.nullspace[k];
        }
        self.from_bits(&bits)
    }

    fn from_bits(&self, bits: &BitWord) -> Cocycle {
        Cocycle {
            table: self.table.clone(),
            theta: (0..bits.len()).map(|i| bits.get(i)).collect(),
        }
    }
}

/// Sets up and solves the affine system for `θ`.
pub fn solve_cocycles(code: &BinaryCode, element_cap: usize) -> Result<CocycleSpace> {
    if !code.is_doubly_even() {
        return Err(Error::NotDoublyEven(code.to_string()));
    }
    let table = CodewordTable::new(code, element_cap)?;
    let n = table.len();
    let unknowns = n * n;
    let var = |i: usize, j: usize| i * n + j;
    let w = &table.words;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        rows.push(BitWord::unit(unknowns, var(i, i)));
        rhs.push(alpha(&w[i]));
    }
    for i in 0..n {
        for j in i + 1..n {
            rows.push(BitWord::from_ones(unknowns, [var(i, j), var(j, i)]));
            rhs.push(phi(&w[i], &w[j]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // Coinciding unknowns cancel, so build the row by flipping.
                let mut row = BitWord::zeros(unknowns);
                row.flip(var(i, j));
                row.flip(var(table.sum(i, j), k));
                row.flip(var(j, k));
                row.flip(var(i, table.sum(j, k)));
                rows.push(row);
                rhs.push(psi(&w[i], &w[j], &w[k]));
            }
        }
    }
    let rhs = BitWord::from_ones(rhs.len(), rhs.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
    let system = GF2Matrix::new(unknowns, rows)?;
    let solution = gf2::solve_affine(&system, &rhs)?.ok_or(Error::NoCocycle)?;
    Ok(CocycleSpace { table, solution })
}

/// The canonical cocycle of a doubly-even code with at most `element_cap` codewords.
pub fn build_cocycle(code: &BinaryCode, element_cap: usize) -> Result<Cocycle> {
    Ok(solve_cocycles(code, element_cap)?.canonical())
}

/// A loop element `(sign, codeword)`; `negative` encodes the sign −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopElement {
    pub negative: bool,
    pub word: BitWord,
}

impl LoopElement {
    pub fn positive(word: BitWord) -> Self {
        LoopElement {
            negative: false,
            word,
        }
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { '-' } else { '+' };
        write!(f, "({s},{})", self.word)
    }
}

/// The code loop of a doubly-even code for a chosen cocycle.
///
/// Elements are indexed `0..2|L|`: all `+1` elements in codeword order,
/// then all `−1` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeLoop {
    code: BinaryCode,
    cocycle: Cocycle,
}

/// Checks of the extension `1 → Z → 𝓛 → L → 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub identity_two_sided: bool,
    pub inverses_two_sided: bool,
    pub center_subgroup_order: usize,
    /// `Z = {(±1, 0)}` commutes and associates with everything.
    pub center_central: bool,
    /// `xZ = Zx` for every `x`.
    pub center_normal: bool,
    /// `(ε, u) ↦ u` respects products.
    pub projection_homomorphism: bool,
    pub projection_surjective: bool,
    /// The elements projecting to `0` are exactly `Z`.
    pub kernel_is_center: bool,
    pub quotient_order: usize,
    /// The quotient's multiplication agrees with addition in `L`.
    pub quotient_matches_code: bool,
}

impl ExtensionReport {
    pub fn certified(&self) -> bool {
        self.identity_two_sided
            && self.inverses_two_sided
            && self.center_subgroup_order == 2
            && self.center_central
            && self.center_normal
            && self.projection_homomorphism
            && self.projection_surjective
            && self.kernel_is_center
            && self.quotient_matches_code
    }
}

impl CodeLoop {
    /// Builds the loop from the canonical cocycle.
    pub fn new(code: &BinaryCode, element_cap: usize) -> Result<Self> {
        let cocycle = build_cocycle(code, element_cap)?;
        Ok(CodeLoop {
            code: code.clone(),
            cocycle,
        })
    }

    /// Builds the loop from a given cocycle, which must be one for `code`.
    pub fn with_cocycle(code: &BinaryCode, cocycle: Cocycle) -> Result<Self> {
        let expected = code.codewords(cocycle.words().len() as u128)?;
        if expected != cocycle.words() {
            return Err(Error::Parse("cocycle belongs to a different code".into()));
        }
        Ok(CodeLoop {
            code: code.clone(),
            cocycle,
        })
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    fn words(&self) -> usize {
        self.cocycle.table.len()
    }

    pub fn order(&self) -> usize {
        2 * self.words()
    }

    pub fn element(&self, idx: usize) -> LoopElement {
        let n = self.words();
        LoopElement {
            negative: idx >= n,
            word: self.cocycle.table.words[idx % n].clone(),
        }
    }

    pub fn elements(&self) -> Vec<LoopElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn index_of(&self, x: &LoopElement) -> Result<usize> {
        let i = self
            .cocycle
            .table
            .index
            .get(&x.word)
            .ok_or_else(|| Error::ElementNotInLoop(x.to_string()))?;
        Ok(i + usize::from(x.negative) * self.words())
    }

    /// Index of the identity `(+1, 0)`.
    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the central element `(−1, 0)`.
    pub fn minus_one(&self) -> usize {
        self.words()
    }

    /// Product on element indices.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.words();
        let (sa, ua) = (a / n, a % n);
        let (sb, ub) = (b / n, b % n);
        let sign = sa ^ sb ^ usize::from(self.cocycle.theta_at(ua, ub));
        sign * n + self.cocycle.table.sum(ua, ub)
    }

    pub fn product(&self, x: &LoopElement, y: &LoopElement) -> Result<LoopElement> {
        let a = self.index_of(x)?;
        let b = self.index_of(y)?;
        Ok(self.element(self.mul(a, b)))
    }

    fn check_table_cap(&self) -> Result<()> {
        if self.order() > TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "exhaustive loop check",
                needed: self.order() as u128,
                cap: TABLE_CAP as u128,
            });
        }
        Ok(())
    }

    fn all_triples(&self, law: impl Fn(usize, usize, usize) -> bool) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| law(x, y, z))))
    }

    /// `((x·y)·x)·z = x·(y·(x·z))` for all triples.
    pub fn is_moufang(&self) -> Result<bool> {
        self.check_table_cap()?;
        Ok(self.all_triples(|x, y, z| {
            self.mul(self.mul(self.mul(x, y), x), z) == self.mul(x, self.mul(y, self.mul(x, z)))
        }))
    }

    pub fn is_associative(&self) -> Result<bool> {
        self.check_table_cap()?;
        Ok(self.all_triples(|x, y, z| {
            self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
        }))
    }

    /// A triple with `(xy)z ≠ x(yz)`, if any.
    pub fn non_associative_triple(&self) -> Result<Option<[LoopElement; 3]>> {
        self.check_table_cap()?;
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Ok(Some([self.element(x), self.element(y), self.element(z)]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn verify_extension(&self) -> Result<ExtensionReport> {
        self.check_table_cap()?;
        let n = self.order();
        let words = self.words();
        let e = self.identity();
        let center = [self.identity(), self.minus_one()];
        let proj = |x: usize| x % words;
        let table = &self.cocycle.table;

        let identity_two_sided = (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x);
        let inverses_two_sided = (0..n).all(|x| {
            (0..n)
                .find(|&y| self.mul(x, y) == e)
                .is_some_and(|y| self.mul(y, x) == e)
        });
        let center_central = center.iter().all(|&z| {
            (0..n).all(|x| {
                self.mul(z, x) == self.mul(x, z)
                    && (0..n).all(|y| {
                        self.mul(self.mul(z, x), y) == self.mul(z, self.mul(x, y))
                            && self.mul(self.mul(x, z), y) == self.mul(x, self.mul(z, y))
                            && self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
                    })
            })
        });
        let center_normal = (0..n).all(|x| {
            let mut left: Vec<usize> = center.iter().map(|&z| self.mul(x, z)).collect();
            let mut right: Vec<usize> = center.iter().map(|&z| self.mul(z, x)).collect();
            left.sort_unstable();
            right.sort_unstable();
            left == right
        });
        let projection_homomorphism = (0..n)
            .all(|x| (0..n).all(|y| proj(self.mul(x, y)) == table.sum(proj(x), proj(y))));
        let mut image = vec![false; words];
        for x in 0..n {
            image[proj(x)] = true;
        }
        let projection_surjective = image.iter().all(|&b| b);
        let kernel: Vec<usize> = (0..n).filter(|&x| proj(x) == 0).collect();
        let kernel_is_center = kernel == center;

        // Cosets xZ, labelled by their projection, multiply like L.
        let quotient_matches_code = (0..words).all(|i| {
            (0..words).all(|j| {
                let coset_product: Vec<usize> = center
                    .iter()
                    .flat_map(|&z| center.iter().map(move |&z2| (z, z2)))
                    .map(|(z, z2)| proj(self.mul(self.mul(i, z), self.mul(j, z2))))
                    .collect();
                let expected = table.index[&(&table.words[i] ^ &table.words[j])];
                coset_product.iter().all(|&p| p == expected)
            })
        });

        Ok(ExtensionReport {
            identity_two_sided,
            inverses_two_sided,
            center_subgroup_order: center.len(),
            center_central,
            center_normal,
            projection_homomorphism,
            projection_surjective,
            kernel_is_center,
            quotient_order: image.iter().filter(|&&b| b).count(),
            quotient_matches_code,
        })
    }

    pub fn cayley_table(&self) -> Result<CayleyTable> {
        self.check_table_cap()?;
        let n = self.order();
        Ok(CayleyTable {
            labels: self.elements().iter().map(ToString::to_string).collect(),
            entries: (0..n)
                .map(|x| (0..n).map(|y| self.mul(x, y)).collect())
                .collect(),
        })
    }
}

/// Multiplication table: `entries[x][y]` is the index of `x·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

impl CayleyTable {
    /// Every row and every column is a permutation of the elements.
    pub fn is_latin_square(&self) -> bool {
        let n = self.labels.len();
        let is_perm = |values: Vec<usize>| {
            let mut seen = vec![false; n];
            values
                .into_iter()
                .all(|v| v < n && !std::mem::replace(&mut seen[v], true))
        };
        self.entries.len() == n
            && self
                .entries
                .iter()
                .all(|row| row.len() == n && is_perm(row.clone()))
            && (0..n).all(|c| is_perm(self.entries.iter().map(|row| row[c]).collect()))
    }

    /// CSV with a header row of element names and one row per left factor.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Parse(e.to_string());
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        writer.write_record(&header).map_err(csv_err)?;
        for (label, row) in self.labels.iter().zip(&self.entries) {
            let mut record = vec![label.clone()];
            record.extend(row.iter().map(|&i| self.labels[i].clone()));
            writer.write_record(&record).map_err(csv_err)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}
