//! Dessins d'enfants of chromotopologies.
//!
//! The edges of a chromotopology carry a cyclic order at each vertex by
//! color `1 → 2 → … → N → 1`. Rotating around white vertices gives `σ₀`,
//! around black vertices `σ₁`. Products compose left to right, so
//! `σ₀σ₁` applies `σ₀` first, and `σ∞ = (σ₀σ₁)⁻¹`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::adinkra::{Adinkra, Chromotopology, VertexColor};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_MONODROMY_CAP: usize = 1_000_000;

/// A pair of permutations on `n` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dessin {
    sigma0: Permutation,
    sigma1: Permutation,
}

impl Dessin {
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Self> {
        if sigma0.degree() != sigma1.degree() {
            return Err(Error::DegreeMismatch {
                expected: sigma0.degree(),
                found: sigma1.degree(),
            });
        }
        Ok(Dessin { sigma0, sigma1 })
    }

    pub fn from_chromotopology(ch: &Chromotopology) -> Result<Self> {
        let report = ch.verify();
        if !report.passed() {
            return Err(Error::InvalidChromotopology(report.violations.join("; ")));
        }
        let at = ch.edge_at()?;
        let n_colors = ch.n_colors();
        let rotation = |side: VertexColor| {
            let images = ch
                .edges()
                .iter()
                .map(|e| {
                    let x = if ch.bipartition()[e.v] == side { e.v } else { e.w };
                    // Colors are 1-based, so `color % N` is the 0-based next color.
                    at[x][e.color % n_colors]
                })
                .collect();
            Permutation::new(images)
        };
        Dessin::new(rotation(VertexColor::White)?, rotation(VertexColor::Black)?)
    }

    pub fn n(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// Both permutations consist of exactly `m` cycles, each of length `n_colors`.
    pub fn verify_cycle_structure(&self, n_colors: usize, m: usize) -> bool {
        let expected = vec![n_colors; m];
        self.sigma0.cycle_type() == expected && self.sigma1.cycle_type() == expected
    }

    pub fn sigma_infinity(&self) -> Permutation {
        self.sigma0.then(&self.sigma1).inverse()
    }

    /// Single orbit of `⟨σ₀, σ₁⟩`, by orbit sweep from edge 0.
    pub fn is_transitive(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(e) = stack.pop() {
            for f in [self.sigma0.apply(e), self.sigma1.apply(e)] {
                if !seen[f] {
                    seen[f] = true;
                    reached += 1;
                    stack.push(f);
                }
            }
        }
        reached == n
    }

    pub fn genus(&self) -> Result<u64> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let euler = (self.sigma0.cycle_count()
            + self.sigma1.cycle_count()
            + self.sigma_infinity().cycle_count()) as i64
            - self.n() as i64;
        let twice_genus = 2 - euler;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::NonIntegerGenus(euler));
        }
        Ok((twice_genus / 2) as u64)
    }

    /// `|⟨σ₀, σ₁⟩|` by breadth-first closure, or `None` once more than `cap`
    /// elements have been found.
    pub fn monodromy_order(&self, cap: usize) -> Option<usize> {
        let generators = [self.sigma0.images().to_vec(), self.sigma1.images().to_vec()];
        let identity: Vec<usize> = (0..self.n()).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        if seen.len() > cap {
            return None;
        }
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let next: Vec<usize> = g.iter().map(|&i| s[i]).collect();
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
        Some(seen.len())
    }

    /// Number of edge permutations commuting with both `σ₀` and `σ₁`.
    ///
    /// For a transitive dessin such a map is fixed by the image of edge 0,
    /// so each candidate image is tried once.
    pub fn automorphism_count(&self) -> Result<usize> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.n();
        let gens = [&self.sigma0, &self.sigma1];
        let count = (0..n)
            .filter(|&target| {
                let mut map = vec![usize::MAX; n];
                map[0] = target;
                let mut stack = vec![0];
                while let Some(e) = stack.pop() {
                    for s in gens {
                        let (from, to) = (s.apply(e), s.apply(map[e]));
                        if map[from] == usize::MAX {
                            map[from] = to;
                            stack.push(from);
                        } else if map[from] != to {
                            return false;
                        }
                    }
                }
                Permutation::new(map).is_ok()
            })
            .count();
        Ok(count)
    }

    pub fn to_record(&self) -> DessinRecord {
        DessinRecord {
            n: self.n(),
            sigma0: self.sigma0.clone(),
            sigma1: self.sigma1.clone(),
        }
    }
}

/// Serialized dessin with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinRecord {
    pub n: usize,
    pub sigma0: Permutation,
    pub sigma1: Permutation,
}

impl TryFrom<DessinRecord> for Dessin {
    type Error = Error;

    fn try_from(r: DessinRecord) -> Result<Self> {
        if r.sigma0.degree() != r.n {
            return Err(Error::DegreeMismatch {
                expected: r.n,
                found: r.sigma0.degree(),
            });
        }
        Dessin::new(r.sigma0, r.sigma1)
    }
}

/// Symmetry counts of an Adinkra's dessin, compared with the loop order `2|L|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// Translations times code automorphisms acting on the colored graph.
    pub colored_graph_symmetries: u128,
    /// Edge permutations commuting with `σ₀` and `σ₁`.
    pub dessin_automorphisms: usize,
    pub loop_order: u128,
    pub graph_symmetries_at_least_loop_order: bool,
}

pub fn symmetry_report(adinkra: &Adinkra) -> Result<SymmetryReport> {
    let dessin = Dessin::from_chromotopology(adinkra.chromotopology())?;
    let colored_graph_symmetries = adinkra.symmetry_group_order()?;
    let loop_order = 2 * adinkra.code().size();
    Ok(SymmetryReport {
        colored_graph_symmetries,
        dessin_automorphisms: dessin.automorphism_count()?,
        loop_order,
        graph_symmetries_at_least_loop_order: colored_graph_symmetries >= loop_order,
    })
}
