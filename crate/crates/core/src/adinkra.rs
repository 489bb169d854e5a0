//! Adinkras as quotients of the N-cube by a doubly-even code.
//!
//! Vertices are cosets `v + L` of `F₂ᴺ / L`, named by their lexicographically
//! smallest member. The color-`i` edge joins `v + L` and `v + eᵢ + L`. Colors
//! are the labels `1..=N`; vertex and edge indices are 0-based positions in
//! the sorted vertex list and the edge list.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::codes::{BinaryCode, CodeRecord, Permutation};
use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, GF2Matrix};

/// Largest vertex count [`Chromotopology::from_code`] will build.
pub const VERTEX_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColor {
    White,
    Black,
}

/// An edge between vertex indices `v` and `w` with color label `color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub v: usize,
    pub w: usize,
    pub color: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.v {
            self.w
        } else {
            self.v
        }
    }
}

/// An N-edge-colored bipartite graph.
///
/// [`Chromotopology::from_code`] always produces a valid one; hand-built
/// graphs may violate the axioms and are checked by [`Chromotopology::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chromotopology {
    n_colors: usize,
    vertices: Vec<BitWord>,
    edges: Vec<Edge>,
    bipartition: Vec<VertexColor>,
}

/// Outcome of checking the chromotopology axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromotopologyReport {
    /// No looping and no parallel edges.
    pub simple: bool,
    /// Every vertex has degree N, one edge of each color.
    pub regular: bool,
    /// Every edge joins a white and a black vertex.
    pub bipartite: bool,
    /// Each color class is a perfect matching.
    pub color_matching: bool,
    /// Each two-colored subgraph is a disjoint union of 4-cycles.
    pub four_cycles: bool,
    pub violations: Vec<String>,
}

impl ChromotopologyReport {
    pub fn passed(&self) -> bool {
        self.simple && self.regular && self.bipartite && self.color_matching && self.four_cycles
    }
}

/// A 2-colored 4-cycle: `vertices[k]` and `vertices[k+1]` are joined by `edges[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCycle {
    pub vertices: [usize; 4],
    pub edges: [usize; 4],
}

impl Chromotopology {
    /// Wraps raw graph data without validation.
    pub fn new(
        n_colors: usize,
        vertices: Vec<BitWord>,
        edges: Vec<Edge>,
        bipartition: Vec<VertexColor>,
    ) -> Self {
        Chromotopology {
            n_colors,
            vertices,
            edges,
            bipartition,
        }
    }

    /// The quotient `F₂ᴺ / L`.
    pub fn from_code(code: &BinaryCode) -> Result<Self> {
        if !code.is_doubly_even() {
            return Err(Error::NotDoublyEven(code.to_string()));
        }
        let n = code.length();
        let free: Vec<usize> = (0..n).filter(|i| !code.pivots().contains(i)).collect();
        let count = 1usize.checked_shl(free.len() as u32).unwrap_or(usize::MAX);
        if count > VERTEX_CAP {
            return Err(Error::CapExceeded {
                what: "chromotopology vertices",
                needed: 1u128 << free.len(),
                cap: VERTEX_CAP as u128,
            });
        }
        // Minimal coset members are exactly the words vanishing on the pivots.
        let mut vertices: Vec<BitWord> = (0..count)
            .map(|mask| {
                BitWord::from_ones(
                    n,
                    free.iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &i)| i),
                )
            })
            .collect();
        vertices.sort();

        let mut edges = Vec::with_capacity(count * n / 2);
        for (vi, v) in vertices.iter().enumerate() {
            for color in 1..=n {
                let mut moved = v.clone();
                moved.flip(color - 1);
                let wi = vertices
                    .binary_search(&code.reduce(&moved))
                    .expect("reduced words are coset representatives");
                if vi < wi {
                    edges.push(Edge { v: vi, w: wi, color });
                }
            }
        }
        let bipartition = vertices
            .iter()
            .map(|v| {
                if v.weight() % 2 == 0 {
                    VertexColor::White
                } else {
                    VertexColor::Black
                }
            })
            .collect();
        Ok(Chromotopology {
            n_colors: n,
            vertices,
            edges,
            bipartition,
        })
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn vertices(&self) -> &[BitWord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn bipartition(&self) -> &[VertexColor] {
        &self.bipartition
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `table[v][c-1]` lists the edges of color `c` at vertex `v`.
    fn incidence(&self) -> Vec<Vec<Vec<usize>>> {
        let mut table = vec![vec![Vec::new(); self.n_colors]; self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.color == 0 || edge.color > self.n_colors {
                continue;
            }
            for x in [edge.v, edge.w] {
                if x < self.vertices.len() {
                    table[x][edge.color - 1].push(e);
                }
            }
        }
        table
    }

    /// The unique edge of `color` at each vertex. Fails unless every color
    /// class is a perfect matching.
    fn matching_table(&self) -> Result<Vec<Vec<usize>>> {
        self.incidence()
            .into_iter()
            .enumerate()
            .map(|(v, per_color)| {
                per_color
                    .into_iter()
                    .enumerate()
                    .map(|(c, es)| match es.as_slice() {
                        [e] => Ok(*e),
                        _ => Err(Error::InvalidChromotopology(format!(
                            "vertex {v} has {} edges of color {}",
                            es.len(),
                            c + 1
                        ))),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn verify(&self) -> ChromotopologyReport {
        let mut report = ChromotopologyReport {
            simple: true,
            regular: true,
            bipartite: true,
            color_matching: true,
            four_cycles: true,
            violations: Vec::new(),
        };
        let nv = self.vertices.len();

        let mut pairs = BTreeSet::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.v >= nv || edge.w >= nv || edge.color == 0 || edge.color > self.n_colors {
                report.simple = false;
                report
                    .violations
                    .push(format!("edge {e} has an out-of-range endpoint or color"));
                continue;
            }
            if edge.v == edge.w {
                report.simple = false;
                report.violations.push(format!("edge {e} is a loop"));
            }
            if !pairs.insert((edge.v.min(edge.w), edge.v.max(edge.w))) {
                report.simple = false;
                report.violations.push(format!("edge {e} is parallel to another edge"));
            }
        }

        if self.bipartition.len() != nv {
            report.bipartite = false;
            report
                .violations
                .push("bipartition does not cover every vertex".into());
        } else {
            for (e, edge) in self.edges.iter().enumerate() {
                if edge.v < nv && edge.w < nv && self.bipartition[edge.v] == self.bipartition[edge.w] {
                    report.bipartite = false;
                    report
                        .violations
                        .push(format!("edge {e} joins two vertices of the same color"));
                }
            }
        }

        let incidence = self.incidence();
        let mut degree = vec![0usize; nv];
        for edge in &self.edges {
            for x in [edge.v, edge.w] {
                if x < nv {
                    degree[x] += 1;
                }
            }
        }
        for (v, per_color) in incidence.iter().enumerate() {
            if degree[v] != self.n_colors || per_color.iter().any(|es| es.len() != 1) {
                report.regular = false;
                report.violations.push(format!(
                    "vertex {v} has degree {} and is not met once by each color",
                    degree[v]
                ));
            }
        }
        for c in 0..self.n_colors {
            let covered = incidence.iter().filter(|pc| pc[c].len() == 1).count();
            if covered != nv {
                report.color_matching = false;
                report
                    .violations
                    .push(format!("color {} is not a perfect matching", c + 1));
            }
        }

        if report.color_matching {
            for i in 1..=self.n_colors {
                for j in i + 1..=self.n_colors {
                    if let Err(err) = self.two_color_cycles(i, j) {
                        report.four_cycles = false;
                        report.violations.push(err.to_string());
                    }
                }
            }
        } else {
            report.four_cycles = false;
        }
        report
    }

    /// The 4-cycles formed by colors `i` and `j`, one per vertex orbit,
    /// ordered by smallest vertex.
    pub fn two_color_cycles(&self, i: usize, j: usize) -> Result<Vec<FourCycle>> {
        if i == j {
            return Err(Error::SameColor(i));
        }
        for c in [i, j] {
            if c == 0 || c > self.n_colors {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.n_colors,
                });
            }
        }
        let table = self.matching_table()?;
        let mut seen = vec![false; self.vertices.len()];
        let mut cycles = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            let mut vertices = [start; 4];
            let mut edges = [0; 4];
            let mut x = start;
            for step in 0..4 {
                let color = if step % 2 == 0 { i } else { j };
                let e = table[x][color - 1];
                edges[step] = e;
                vertices[step] = x;
                x = self.edges[e].other(x);
            }
            let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
            if x != start || distinct.len() != 4 {
                return Err(Error::InvalidChromotopology(format!(
                    "colors {i},{j} at vertex {start} do not close a 4-cycle"
                )));
            }
            for &v in &vertices {
                seen[v] = true;
            }
            cycles.push(FourCycle { vertices, edges });
        }
        Ok(cycles)
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.vertices.len();
        if nv == 0 {
            return true;
        }
        let mut adjacency = vec![Vec::new(); nv];
        for edge in &self.edges {
            adjacency[edge.v].push(edge.w);
            adjacency[edge.w].push(edge.v);
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edge index for each (vertex, color) pair, if the graph is properly colored.
    pub fn edge_at(&self) -> Result<Vec<Vec<usize>>> {
        self.matching_table()
    }

    /// Applies a vertex map and a color map to every edge. Edges keep their
    /// order; vertex data is permuted so that `vertex_map` sends old index to new.
    pub fn relabeled(&self, vertex_map: &Permutation, color_map: &Permutation) -> Chromotopology {
        let nv = self.vertices.len();
        let mut vertices = vec![BitWord::zeros(self.n_colors); nv];
        let mut bipartition = vec![VertexColor::White; nv];
        for v in 0..nv {
            vertices[vertex_map.apply(v)] = self.vertices[v].clone();
            if let Some(&c) = self.bipartition.get(v) {
                bipartition[vertex_map.apply(v)] = c;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                v: vertex_map.apply(e.v),
                w: vertex_map.apply(e.w),
                color: color_map.apply(e.color - 1) + 1,
            })
            .collect();
        Chromotopology {
            n_colors: self.n_colors,
            vertices,
            edges,
            bipartition,
        }
    }

    /// The edge permutation induced by a vertex map and color map, if they
    /// form an automorphism of the colored graph.
    pub fn induced_edge_map(
        &self,
        vertex_map: &Permutation,
        color_map: &Permutation,
    ) -> Option<Permutation> {
        let table = self.matching_table().ok()?;
        if vertex_map.degree() != self.vertices.len() || color_map.degree() != self.n_colors {
            return None;
        }
        let images = self
            .edges
            .iter()
            .map(|e| {
                let (v, w) = (vertex_map.apply(e.v), vertex_map.apply(e.w));
                let target = table[v][color_map.apply(e.color - 1)];
                (self.edges[target].other(v) == w).then_some(target)
            })
            .collect::<Option<Vec<usize>>>()?;
        Permutation::new(images).ok()
    }
}

/// A height function on vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ranking {
    pub h: Vec<i64>,
}

impl Ranking {
    /// White vertices on even heights, black on odd, and every edge spanning
    /// adjacent heights.
    pub fn validate(&self, ch: &Chromotopology) -> Result<()> {
        if self.h.len() != ch.vertex_count() {
            return Err(Error::InvalidRanking(format!(
                "{} heights for {} vertices",
                self.h.len(),
                ch.vertex_count()
            )));
        }
        for (v, (&h, &color)) in self.h.iter().zip(ch.bipartition()).enumerate() {
            let even = h.rem_euclid(2) == 0;
            if even != (color == VertexColor::White) {
                return Err(Error::InvalidRanking(format!(
                    "vertex {v} is {color:?} but has height {h}"
                )));
            }
        }
        for (e, edge) in ch.edges().iter().enumerate() {
            if (self.h[edge.v] - self.h[edge.w]).abs() != 1 {
                return Err(Error::InvalidRanking(format!(
                    "edge {e} joins heights {} and {}",
                    self.h[edge.v], self.h[edge.w]
                )));
            }
        }
        Ok(())
    }
}

/// The two-level ranking: 0 on white vertices, 1 on black.
pub fn valise_ranking(ch: &Chromotopology) -> Result<Ranking> {
    let report = ch.verify();
    if !report.passed() {
        return Err(Error::InvalidChromotopology(report.violations.join("; ")));
    }
    Ok(Ranking {
        h: ch
            .bipartition()
            .iter()
            .map(|c| match c {
                VertexColor::White => 0,
                VertexColor::Black => 1,
            })
            .collect(),
    })
}

/// A solid/dashed label per edge; `true` is dashed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dashing {
    pub dashed: Vec<bool>,
}

impl Dashing {
    /// Whether every 2-colored 4-cycle carries an odd number of dashed edges.
    pub fn is_odd_dashing(&self, ch: &Chromotopology) -> bool {
        if self.dashed.len() != ch.edges().len() {
            return false;
        }
        all_color_pairs(ch.n_colors()).all(|(i, j)| match ch.two_color_cycles(i, j) {
            Ok(cycles) => cycles
                .iter()
                .all(|c| c.edges.iter().filter(|&&e| self.dashed[e]).count() % 2 == 1),
            Err(_) => false,
        })
    }
}

fn all_color_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// The canonical odd-dashing and the size of the solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DashingSolution {
    pub dashing: Dashing,
    /// The number of odd-dashings is `2^nullity`.
    pub nullity: usize,
    /// Basis of the dashings that change no 4-cycle parity.
    pub kernel: Vec<BitWord>,
}

impl DashingSolution {
    pub fn count(&self) -> Option<u128> {
        1u128.checked_shl(self.nullity as u32)
    }
}

/// Solves for odd-dashings: one unknown per edge, one equation
/// "edge sum = 1" per 2-colored 4-cycle.
pub fn solve_dashing(ch: &Chromotopology) -> Result<DashingSolution> {
    let report = ch.verify();
    if !report.passed() {
        return Err(Error::InvalidChromotopology(report.violations.join("; ")));
    }
    let n_edges = ch.edges().len();
    let mut rows = Vec::new();
    for (i, j) in all_color_pairs(ch.n_colors()) {
        for cycle in ch.two_color_cycles(i, j)? {
            rows.push(BitWord::from_ones(n_edges, cycle.edges));
        }
    }
    let rhs = BitWord::from_ones(rows.len(), 0..rows.len());
    let system = GF2Matrix::new(n_edges, rows)?;
    let solution = gf2::solve_affine(&system, &rhs)?.ok_or(Error::NoDashing)?;
    Ok(DashingSolution {
        dashing: Dashing {
            dashed: (0..n_edges).map(|e| solution.particular.get(e)).collect(),
        },
        nullity: solution.nullity(),
        kernel: solution.nullspace,
    })
}

/// One edge read as a pair of supersymmetry transformation rules.
///
/// `Q_k φ_a = c ∂_t^λ ψ_b` and `Q_k ψ_b = (i/c) ∂_t^(1−λ) φ_a`, where `a` is
/// the white (boson) endpoint and `b` the black (fermion) endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SusyRelation {
    pub k: usize,
    pub boson: usize,
    pub fermion: usize,
    pub c: i8,
    pub lambda: u8,
    /// `i/c` written with the symbolic imaginary unit: `"i"` or `"-i"`.
    pub fermion_coefficient: String,
    pub boson_rule: String,
    pub fermion_rule: String,
}

/// A color permutation that maps the code to itself, with the induced maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorAutomorphism {
    pub color_map: Permutation,
    pub vertex_map: Permutation,
    pub edge_map: Permutation,
}

/// A chromotopology with a ranking and an odd-dashing, built from its code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adinkra {
    code: BinaryCode,
    chromotopology: Chromotopology,
    ranking: Ranking,
    dashing: Dashing,
}

impl Adinkra {
    /// The valise Adinkra of `code` with the canonical odd-dashing.
    pub fn from_code(code: &BinaryCode) -> Result<Self> {
        let chromotopology = Chromotopology::from_code(code)?;
        let ranking = valise_ranking(&chromotopology)?;
        let dashing = solve_dashing(&chromotopology)?.dashing;
        Ok(Adinkra {
            code: code.clone(),
            chromotopology,
            ranking,
            dashing,
        })
    }

    /// Replaces ranking and dashing after validating them.
    pub fn with_decorations(&self, ranking: Ranking, dashing: Dashing) -> Result<Self> {
        ranking.validate(&self.chromotopology)?;
        if !dashing.is_odd_dashing(&self.chromotopology) {
            return Err(Error::InvalidDashing(
                "some 2-colored 4-cycle has an even number of dashed edges".into(),
            ));
        }
        Ok(Adinkra {
            ranking,
            dashing,
            ..self.clone()
        })
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn chromotopology(&self) -> &Chromotopology {
        &self.chromotopology
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn dashing(&self) -> &Dashing {
        &self.dashing
    }

    pub fn n_colors(&self) -> usize {
        self.code.length()
    }

    pub fn susy_relations(&self) -> Vec<SusyRelation> {
        let ch = &self.chromotopology;
        ch.edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let (boson, fermion) = if ch.bipartition()[edge.v] == VertexColor::White {
                    (edge.v, edge.w)
                } else {
                    (edge.w, edge.v)
                };
                let c: i8 = if self.dashing.dashed[e] { -1 } else { 1 };
                let lambda = u8::from(self.ranking.h[boson] >= self.ranking.h[fermion]);
                let k = edge.color;
                let fermion_coefficient = if c == 1 { "i" } else { "-i" }.to_string();
                SusyRelation {
                    k,
                    boson,
                    fermion,
                    c,
                    lambda,
                    boson_rule: format!("Q_{k} phi_{boson} = {c:+} d_t^{lambda} psi_{fermion}"),
                    fermion_rule: format!(
                        "Q_{k} psi_{fermion} = {fermion_coefficient} d_t^{} phi_{boson}",
                        1 - lambda
                    ),
                    fermion_coefficient,
                }
            })
            .collect()
    }

    fn vertex_index(&self, word: &BitWord) -> usize {
        self.chromotopology
            .vertices()
            .binary_search(&self.code.reduce(word))
            .expect("reduced words are coset representatives")
    }

    /// The vertex permutation `v + L ↦ v + u + L`.
    pub fn translation_action(&self, u: &BitWord) -> Result<Permutation> {
        if u.len() != self.n_colors() {
            return Err(Error::LengthMismatch {
                expected: self.n_colors(),
                found: u.len(),
            });
        }
        let images = self
            .chromotopology
            .vertices()
            .iter()
            .map(|v| self.vertex_index(&(v ^ u)))
            .collect();
        Permutation::new(images)
    }

    /// Relabels colors by `s` and coordinates accordingly, when `s` preserves
    /// the code. Returns `None` when the code is not preserved.
    pub fn color_permutation_action(&self, s: &Permutation) -> Result<Option<ColorAutomorphism>> {
        self.combined_action(s, &BitWord::zeros(self.n_colors()))
    }

    /// `v + L ↦ s(v) + t + L` with colors relabeled by `s`.
    fn combined_action(&self, s: &Permutation, t: &BitWord) -> Result<Option<ColorAutomorphism>> {
        if s.degree() != self.n_colors() {
            return Err(Error::DegreeMismatch {
                expected: self.n_colors(),
                found: s.degree(),
            });
        }
        if !self.code.is_preserved_by(s) {
            return Ok(None);
        }
        let images = self
            .chromotopology
            .vertices()
            .iter()
            .map(|v| self.vertex_index(&(&v.permuted(s.images()) ^ t)))
            .collect();
        let vertex_map = Permutation::new(images)?;
        let edge_map = self
            .chromotopology
            .induced_edge_map(&vertex_map, s)
            .ok_or_else(|| {
                Error::InvalidChromotopology(format!("color map {s} is not an automorphism"))
            })?;
        Ok(Some(ColorAutomorphism {
            color_map: s.clone(),
            vertex_map,
            edge_map,
        }))
    }

    /// Every map `v + L ↦ s(v) + t + L` with `s` a code automorphism and `t`
    /// a coset representative. These are exactly the automorphisms of the
    /// colored graph that may permute colors.
    pub fn symmetry_group(&self) -> Result<Vec<ColorAutomorphism>> {
        let mut out = Vec::new();
        for s in self.code.automorphisms()? {
            for t in self.chromotopology.vertices() {
                out.push(
                    self.combined_action(&s, t)?
                        .expect("automorphisms preserve the code"),
                );
            }
        }
        Ok(out)
    }

    /// `|F₂ᴺ/L| · |Aut(L)|`, the order of [`Adinkra::symmetry_group`].
    pub fn symmetry_group_order(&self) -> Result<u128> {
        Ok(self.chromotopology.vertex_count() as u128 * self.code.automorphisms()?.len() as u128)
    }

    /// The dihedral color permutations (rotations and reflections of the
    /// cyclic color order) and whether each one preserves the code.
    pub fn dihedral_color_symmetries(&self) -> Vec<(Permutation, bool)> {
        let n = self.n_colors();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for reflect in [false, true] {
            for k in 0..n {
                let images = (0..n)
                    .map(|i| if reflect { (k + n - i) % n } else { (i + k) % n })
                    .collect();
                let p = Permutation::new(images).expect("dihedral maps are bijections");
                if seen.insert(p.clone()) {
                    let preserved = self.code.is_preserved_by(&p);
                    out.push((p, preserved));
                }
            }
        }
        out
    }

    /// Graphviz rendering with deterministic node and edge order.
    pub fn export_dot(&self) -> String {
        let ch = &self.chromotopology;
        let mut out = String::new();
        writeln!(out, "graph adinkra {{").unwrap();
        for (v, word) in ch.vertices().iter().enumerate() {
            let attrs = match ch.bipartition()[v] {
                VertexColor::White => "shape=circle".to_string(),
                VertexColor::Black => "shape=point, style=filled".to_string(),
            };
            writeln!(
                out,
                "  v{v} [{attrs}, xlabel=\"{word}\", rank={}];",
                self.ranking.h[v]
            )
            .unwrap();
        }
        for (e, edge) in ch.edges().iter().enumerate() {
            let style = if self.dashing.dashed[e] { "dashed" } else { "solid" };
            writeln!(
                out,
                "  v{} -- v{} [label=\"{}\", style={style}];",
                edge.v, edge.w, edge.color
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_record(&self) -> AdinkraRecord {
        let ch = &self.chromotopology;
        AdinkraRecord {
            code: self.code.to_record(),
            vertices: ch.vertices().to_vec(),
            bipartition: ch.bipartition().to_vec(),
            edges: ch
                .edges()
                .iter()
                .zip(&self.dashing.dashed)
                .map(|(e, &dashed)| EdgeRecord {
                    v: e.v,
                    w: e.w,
                    color: e.color,
                    dashed,
                })
                .collect(),
            ranking: self.ranking.h.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub v: usize,
    pub w: usize,
    pub color: usize,
    pub dashed: bool,
}

/// JSON form of an Adinkra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdinkraRecord {
    pub code: CodeRecord,
    pub vertices: Vec<BitWord>,
    pub bipartition: Vec<VertexColor>,
    pub edges: Vec<EdgeRecord>,
    pub ranking: Vec<i64>,
}

impl TryFrom<AdinkraRecord> for Adinkra {
    type Error = Error;

    /// Rebuilds from the code and checks the stored graph and decorations against it.
    fn try_from(record: AdinkraRecord) -> Result<Self> {
        let code = BinaryCode::try_from(record.code)?;
        let base = Adinkra::from_code(&code)?;
        let ch = base.chromotopology();
        let edges: Vec<Edge> = record
            .edges
            .iter()
            .map(|e| Edge {
                v: e.v,
                w: e.w,
                color: e.color,
            })
            .collect();
        if record.vertices != ch.vertices()
            || record.bipartition != ch.bipartition()
            || edges != ch.edges()
        {
            return Err(Error::InvalidChromotopology(
                "record does not match the quotient of its code".into(),
            ));
        }
        base.with_decorations(
            Ranking { h: record.ranking },
            Dashing {
                dashed: record.edges.iter().map(|e| e.dashed).collect(),
            },
        )
    }
}
