//! Invariant sweeps over all doubly-even codes up to a given length.
//!
//! Each suite counts the instances it checked and the ones that failed,
//! recording the first failure. Iteration order is fixed, so the rendered
//! table is deterministic.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::adinkra::{solve_dashing, valise_ranking, Adinkra, Chromotopology, Dashing};
use crate::codeloop::{self, alpha, phi, psi, CodeLoop};
use crate::codes::{enumerate_doubly_even, BinaryCode};
use crate::dessin::Dessin;
use crate::error::Result;
use crate::gf2::BitWord;
use crate::operad::{
    block_permutation, gamma, gamma_by_insertions, gamma_raw_set, within_block_permutation,
    CompositionInput,
};
use crate::perm::Permutation;

/// Caps for [`verify_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub length: usize,
    pub element_cap: usize,
    pub monodromy_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            length: 6,
            element_cap: codeloop::DEFAULT_ELEMENT_CAP,
            monodromy_cap: crate::dessin::DEFAULT_MONODROMY_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

/// `γ(γ(L; M₁…M_N); I…) = γ(L; γ(M₁; I…), …, γ(M_N; I…))`, where the
/// innermost codes `inners` are listed in order across all middle slots.
pub fn check_associativity(
    outer: &BinaryCode,
    middles: &[BinaryCode],
    inners: &[BinaryCode],
) -> Result<bool> {
    let left_mid = gamma(&CompositionInput::new(outer.clone(), middles.to_vec())?)?;
    let left = gamma(&CompositionInput::new(left_mid, inners.to_vec())?)?;
    let mut rest = inners;
    let mut grouped = Vec::with_capacity(middles.len());
    for m in middles {
        let (head, tail) = rest.split_at(m.length());
        grouped.push(gamma(&CompositionInput::new(m.clone(), head.to_vec())?)?);
        rest = tail;
    }
    let right = gamma(&CompositionInput::new(outer.clone(), grouped)?)?;
    Ok(left == right)
}

/// `γ(σL; L_{σ⁻¹(1)}, …) = σ̃ γ(L; L₁, …)` with `σ̃` the block permutation.
pub fn check_outer_equivariance(input: &CompositionInput, s: &Permutation) -> Result<bool> {
    let inv = s.inverse();
    let moved_inners = (0..s.degree())
        .map(|j| input.inners()[inv.apply(j)].clone())
        .collect();
    let lhs = gamma(&CompositionInput::new(input.outer().permute(s)?, moved_inners)?)?;
    let rhs = gamma(input)?.permute(&block_permutation(s, &input.block_sizes())?)?;
    Ok(lhs == rhs)
}

/// `γ(L; σ₁L₁, …) = σ̂ γ(L; L₁, …)` with `σ̂` acting inside each block.
pub fn check_inner_equivariance(input: &CompositionInput, perms: &[Permutation]) -> Result<bool> {
    let moved = input
        .inners()
        .iter()
        .zip(perms)
        .map(|(c, p)| c.permute(p))
        .collect::<Result<Vec<_>>>()?;
    let lhs = gamma(&CompositionInput::new(input.outer().clone(), moved)?)?;
    let rhs = gamma(input)?.permute(&within_block_permutation(perms, &input.block_sizes())?)?;
    Ok(lhs == rhs)
}

/// Calls `f` on every tuple of `slots` codes from `pool` whose lengths sum to
/// at most `max_total`, in lexicographic pool order.
pub fn for_each_tuple(
    pool: &[BinaryCode],
    slots: usize,
    max_total: usize,
    f: &mut dyn FnMut(&[BinaryCode]) -> Result<()>,
) -> Result<()> {
    fn go(
        pool: &[BinaryCode],
        slots: usize,
        budget: usize,
        acc: &mut Vec<BinaryCode>,
        f: &mut dyn FnMut(&[BinaryCode]) -> Result<()>,
    ) -> Result<()> {
        if acc.len() == slots {
            return f(acc);
        }
        let remaining_slots = slots - acc.len() - 1;
        for c in pool {
            // Every later slot needs at least one coordinate.
            if c.length() + remaining_slots <= budget {
                acc.push(c.clone());
                go(pool, slots, budget - c.length(), acc, f)?;
                acc.pop();
            }
        }
        Ok(())
    }
    go(pool, slots, max_total, &mut Vec::new(), f)
}

fn describe_composition(outer: &BinaryCode, inners: &[BinaryCode]) -> String {
    format!("outer {outer}; inners {}", inners.iter().join(", "))
}

/// The sweep behind `verify-all`: every code of length `1..=length`.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<SuiteResult>> {
    let by_length: Vec<Vec<BinaryCode>> = (1..=cfg.length)
        .map(|n| enumerate_doubly_even(n, usize::MAX))
        .collect::<Result<_>>()?;
    let all: Vec<&BinaryCode> = by_length.iter().flatten().collect();

    let mut suites = vec![enumeration_suite(&by_length)];
    suites.extend(operad_suites(cfg, &by_length)?);
    suites.extend(adinkra_suites(&all)?);
    suites.extend(loop_suites(cfg, &all)?);
    suites.push(dessin_suite(cfg, &all)?);
    suites.push(symmetry_suite(&all)?);
    Ok(suites)
}

fn enumeration_suite(by_length: &[Vec<BinaryCode>]) -> SuiteResult {
    let mut s = SuiteResult::new("enumeration");
    for (i, codes) in by_length.iter().enumerate() {
        let n = i + 1;
        let distinct: BTreeSet<&BinaryCode> = codes.iter().collect();
        s.record(distinct.len() == codes.len(), || format!("duplicates at length {n}"));
        s.record(
            codes.iter().any(BinaryCode::is_trivial),
            || format!("zero code missing at length {n}"),
        );
        for c in codes {
            let canonical = BinaryCode::new(n, c.generators().to_vec()).ok();
            s.record(
                c.length() == n && c.is_doubly_even() && canonical.as_ref() == Some(c),
                || format!("{c} at length {n}"),
            );
        }
    }
    s
}

fn operad_suites(cfg: &VerifyConfig, by_length: &[Vec<BinaryCode>]) -> Result<Vec<SuiteResult>> {
    let mut closure = SuiteResult::new("operad closure");
    let mut insertions = SuiteResult::new("operad insertions");
    let mut assoc = SuiteResult::new("operad associativity");
    let mut equiv = SuiteResult::new("operad equivariance");

    let pool: Vec<BinaryCode> = by_length.iter().take(4).flatten().cloned().collect();
    let max_total = (2 * cfg.length).min(10);

    for outer in by_length.iter().take(4).flatten() {
        for_each_tuple(&pool, outer.length(), max_total, &mut |inners| {
            let input = CompositionInput::new(outer.clone(), inners.to_vec())?;
            let g = gamma(&input)?;
            let raw = gamma_raw_set(&input, 1 << 16)?;
            let span = BinaryCode::new(g.length(), raw.into_iter().collect())?;
            closure.record(g.is_doubly_even() && span == g, || {
                describe_composition(outer, inners)
            });
            insertions.record(gamma_by_insertions(&input)? == g, || {
                describe_composition(outer, inners)
            });

            let n = outer.length();
            for s in (0..n).permutations(n) {
                let s = Permutation::new(s)?;
                equiv.record(check_outer_equivariance(&input, &s)?, || {
                    format!("outer {s} on {}", describe_composition(outer, inners))
                });
            }
            for (b, inner) in inners.iter().enumerate() {
                for p in (0..inner.length()).permutations(inner.length()) {
                    let mut perms: Vec<Permutation> =
                        inners.iter().map(|c| Permutation::identity(c.length())).collect();
                    perms[b] = Permutation::new(p)?;
                    equiv.record(check_inner_equivariance(&input, &perms)?, || {
                        format!("inner {:?} on {}", perms, describe_composition(outer, inners))
                    });
                }
            }
            let rotations: Vec<Permutation> = inners
                .iter()
                .map(|c| {
                    let k = c.length();
                    Permutation::new((0..k).map(|j| (j + 1) % k).collect())
                })
                .collect::<Result<_>>()?;
            equiv.record(check_inner_equivariance(&input, &rotations)?, || {
                format!("rotations on {}", describe_composition(outer, inners))
            });
            Ok(())
        })?;

        for_each_tuple(&pool, outer.length(), max_total, &mut |middles| {
            let slots: usize = middles.iter().map(BinaryCode::length).sum();
            for_each_tuple(&pool, slots, max_total, &mut |inners| {
                assoc.record(check_associativity(outer, middles, inners)?, || {
                    format!(
                        "outer {outer}; middles {}; inners {}",
                        middles.iter().join(", "),
                        inners.iter().join(", ")
                    )
                });
                Ok(())
            })
        })?;
    }
    Ok(vec![closure, insertions, assoc, equiv])
}

fn adinkra_suites(all: &[&BinaryCode]) -> Result<Vec<SuiteResult>> {
    let mut axioms = SuiteResult::new("chromotopology axioms");
    let mut dashing = SuiteResult::new("odd-dashing");
    for &code in all {
        let ch = Chromotopology::from_code(code)?;
        let n = code.length();
        let nv = 1usize << (n - code.dimension());
        axioms.record(
            ch.verify().passed() && ch.vertex_count() == nv && ch.edges().len() == n * nv / 2,
            || format!("{code}"),
        );
        axioms.record(valise_ranking(&ch)?.validate(&ch).is_ok(), || {
            format!("valise ranking of {code}")
        });

        let solution = solve_dashing(&ch)?;
        dashing.record(solution.dashing.is_odd_dashing(&ch), || format!("{code}"));
        let n_edges = ch.edges().len();
        if n_edges <= 16 {
            let brute = (0u64..1 << n_edges)
                .filter(|mask| {
                    Dashing {
                        dashed: (0..n_edges).map(|e| mask >> e & 1 == 1).collect(),
                    }
                    .is_odd_dashing(&ch)
                })
                .count() as u128;
            dashing.record(solution.count() == Some(brute), || {
                format!("count for {code}: solver {:?}, brute {brute}", solution.count())
            });
        }
    }
    Ok(vec![axioms, dashing])
}

fn loop_suites(cfg: &VerifyConfig, all: &[&BinaryCode]) -> Result<Vec<SuiteResult>> {
    let mut structure = SuiteResult::new("code loop");
    let mut signs = SuiteResult::new("loop signs");
    for &code in all {
        if code.size() > cfg.element_cap as u128 {
            continue;
        }
        let lp = CodeLoop::new(code, cfg.element_cap)?;
        structure.record(lp.cocycle().check().passed(), || format!("cocycle of {code}"));
        structure.record(lp.cayley_table()?.is_latin_square(), || format!("latin {code}"));
        structure.record(lp.is_moufang()?, || format!("moufang {code}"));
        structure.record(lp.verify_extension()?.certified(), || format!("extension {code}"));

        let order = lp.order();
        let minus = lp.minus_one();
        let sign_of = |x: usize| x >= order / 2;
        let words = |x: usize| lp.element(x).word;
        for x in 0..order {
            let sq = lp.mul(x, x);
            signs.record(
                words(sq).is_zero() && sign_of(sq) == alpha(&words(x)),
                || format!("square of {} in {code}", lp.element(x)),
            );
            for y in 0..order {
                let xy = lp.mul(x, y);
                let yx = lp.mul(y, x);
                let expected = phi(&words(x), &words(y));
                let comm_ok = if xy == yx {
                    !expected
                } else {
                    lp.mul(yx, minus) == xy && expected
                };
                signs.record(comm_ok, || {
                    format!("commutator of {}, {} in {code}", lp.element(x), lp.element(y))
                });
                for z in 0..order {
                    let left = lp.mul(xy, z);
                    let right = lp.mul(x, lp.mul(y, z));
                    let assoc_sign = left != right;
                    signs.record(
                        (left == right || lp.mul(right, minus) == left)
                            && assoc_sign == psi(&words(x), &words(y), &words(z)),
                        || {
                            format!(
                                "associator of {}, {}, {} in {code}",
                                lp.element(x),
                                lp.element(y),
                                lp.element(z)
                            )
                        },
                    );
                }
            }
        }
    }
    Ok(vec![structure, signs])
}

fn dessin_suite(cfg: &VerifyConfig, all: &[&BinaryCode]) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("dessin");
    for &code in all {
        let ch = Chromotopology::from_code(code)?;
        let d = Dessin::from_chromotopology(&ch)?;
        let n_colors = code.length();
        let m = ch.vertex_count() / 2;
        let product = d.sigma0().then(d.sigma1()).then(&d.sigma_infinity());
        s.record(
            d.verify_cycle_structure(n_colors, m) && d.n() == n_colors * m,
            || format!("cycle structure of {code}"),
        );
        s.record(product.is_identity(), || format!("σ₀σ₁σ∞ for {code}"));
        s.record(d.is_transitive() == ch.is_connected(), || {
            format!("transitivity of {code}")
        });
        s.record(d.genus().is_ok(), || format!("genus of {code}"));
        // Any answer within the cap is fine; this only exercises the closure.
        let _ = d.monodromy_order(cfg.monodromy_cap);
    }
    Ok(s)
}

fn symmetry_suite(all: &[&BinaryCode]) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("symmetries");
    for &code in all {
        let adinkra = Adinkra::from_code(code)?;
        let ch = adinkra.chromotopology();
        let n = code.length();
        let id_colors = Permutation::identity(n);
        let words: Vec<BitWord> = (0u64..1 << n).map(|b| BitWord::from_u64(n, b)).collect();
        let actions = words
            .iter()
            .map(|u| adinkra.translation_action(u))
            .collect::<Result<Vec<_>>>()?;
        for (i, a) in actions.iter().enumerate() {
            s.record(ch.induced_edge_map(a, &id_colors).is_some(), || {
                format!("translation {} on {code}", words[i])
            });
            if code.contains(&words[i]) {
                s.record(a.is_identity(), || format!("kernel misses {} in {code}", words[i]));
            }
            for (j, b) in actions.iter().enumerate() {
                let sum = (words[i].to_u64() ^ words[j].to_u64()) as usize;
                s.record(a.then(b) == actions[sum], || {
                    format!("translations {} + {} on {code}", words[i], words[j])
                });
            }
        }

        let auts = code.automorphisms()?;
        let group: BTreeSet<&Permutation> = auts.iter().collect();
        let closed = auts.iter().all(|p| {
            group.contains(&p.inverse()) && auts.iter().all(|q| group.contains(&p.then(q)))
        });
        s.record(closed, || format!("automorphism closure of {code}"));
        for p in &auts {
            s.record(
                matches!(adinkra.color_permutation_action(p), Ok(Some(_))),
                || format!("color action {p} on {code}"),
            );
        }
    }
    Ok(s)
}

/// Fixed-width pass/fail table.
pub fn render_table(results: &[SuiteResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<24} {:>10} {:>9}  status", "suite", "checked", "failures");
    for r in results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<24} {:>10} {:>9}  {status}", r.name, r.checked, r.failures);
        if let Some(f) = &r.first_failure {
            let _ = writeln!(out, "  first failure: {f}");
        }
    }
    out
}
