//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every check compares library output against oracles written here on
//! plain `u64` words (bit `i` is coordinate `i`, the `i`-th character of a
//! word's text form). All comparisons are exact; no tolerance applies.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use adinkra_core::adinkra::{solve_dashing, Adinkra, Chromotopology, VertexColor};
use adinkra_core::codeloop::CodeLoop;
use adinkra_core::dessin::Dessin;
use adinkra_core::operad::{
    block_permutation, compose_with_report, gamma, gamma_by_insertions, is_xor_closed,
    within_block_permutation, CompositionInput,
};
use adinkra_core::verify::{render_table, verify_all, VerifyConfig};
use adinkra_core::{enumerate_doubly_even, BinaryCode, BitWord, Permutation};
use itertools::Itertools;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- oracles

fn to_bits(w: &BitWord) -> u64 {
    w.to_string()
        .chars()
        .enumerate()
        .filter(|&(_, c)| c == '1')
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn from_bits(n: usize, x: u64) -> BitWord {
    let text: String = (0..n)
        .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
        .collect();
    text.parse().unwrap()
}

fn span(gens: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([0]);
    for g in gens {
        if !set.contains(&g) {
            let shifted: Vec<u64> = set.iter().map(|x| x ^ g).collect();
            set.extend(shifted);
        }
    }
    set
}

fn all_weights_div4(words: &BTreeSet<u64>) -> bool {
    words.iter().all(|x| x.count_ones() % 4 == 0)
}

/// A code as its length and full set of codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
struct OCode {
    n: usize,
    words: BTreeSet<u64>,
}

fn ocode(c: &BinaryCode) -> OCode {
    OCode {
        n: c.length(),
        words: span(c.generators().iter().map(to_bits)),
    }
}

fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &k in blocks {
        out.push(acc);
        acc += k;
    }
    out
}

/// The literal composite: for each outer codeword, every choice of inner
/// codewords on its support; then the span of that set.
fn oracle_raw(outer: &OCode, inners: &[&OCode]) -> (BTreeSet<u64>, usize) {
    let blocks: Vec<usize> = inners.iter().map(|c| c.n).collect();
    let off = offsets(&blocks);
    let mut raw = BTreeSet::new();
    for &c in &outer.words {
        let mut partial = vec![0u64];
        for (i, inner) in inners.iter().enumerate() {
            if c >> i & 1 == 1 {
                let shift = off[i];
                partial = partial
                    .iter()
                    .flat_map(|&p| inner.words.iter().map(move |&w| p | w << shift))
                    .collect();
            }
        }
        raw.extend(partial);
    }
    (raw, blocks.iter().sum())
}

fn oracle_gamma(outer: &OCode, inners: &[&OCode]) -> OCode {
    let (raw, n) = oracle_raw(outer, inners);
    OCode { n, words: span(raw) }
}

fn permute_words(words: &BTreeSet<u64>, images: &[usize]) -> BTreeSet<u64> {
    words
        .iter()
        .map(|&w| {
            (0..images.len())
                .filter(|&i| w >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << images[i])
        })
        .collect()
}

/// Coordinate images of "block `i` moves to position `s(i)`".
fn oracle_block_images(s: &[usize], blocks: &[usize]) -> Vec<usize> {
    let mut sizes_at = vec![0; blocks.len()];
    for (i, &k) in blocks.iter().enumerate() {
        sizes_at[s[i]] = k;
    }
    let new_off = offsets(&sizes_at);
    blocks
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| (0..k).map(move |t| (i, t)))
        .map(|(i, t)| new_off[s[i]] + t)
        .collect()
}

fn oracle_within_images(perms: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in perms {
        out.extend(p.iter().map(|&j| off + j));
        off += p.len();
    }
    out
}

fn perm0(images: Vec<usize>) -> Permutation {
    Permutation::new(images).unwrap()
}

/// Calls `f` with pool indices for every `slots`-tuple with total length at most `budget`.
fn tuples(lengths: &[usize], slots: usize, budget: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(
        lengths: &[usize],
        slots: usize,
        budget: usize,
        acc: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if acc.len() == slots {
            f(acc);
            return;
        }
        let later = slots - acc.len() - 1;
        for (i, &k) in lengths.iter().enumerate() {
            if k + later <= budget {
                acc.push(i);
                go(lengths, slots, budget - k, acc, f);
                acc.pop();
            }
        }
    }
    go(lengths, slots, budget, &mut Vec::new(), f)
}

fn codes_up_to(n: usize) -> Vec<BinaryCode> {
    (1..=n)
        .flat_map(|k| enumerate_doubly_even(k, usize::MAX).unwrap())
        .collect()
}

// ------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let four = enumerate_doubly_even(4, usize::MAX).unwrap();
    let gens: Vec<Vec<String>> = four
        .iter()
        .map(|c| c.generators().iter().map(ToString::to_string).collect())
        .collect();
    ensure(gens == vec![vec![], vec!["1111".to_string()]], || {
        format!("length 4 gives {gens:?}")
    })?;

    let mut counts = Vec::new();
    for n in 1..=8usize {
        // Through length 6 every nonzero word may be a generator. Beyond
        // that only weights divisible by 4 are tried, which loses nothing
        // since generators are codewords.
        let candidates: Vec<u64> = (1u64..1 << n)
            .filter(|w| n <= 6 || w.count_ones() % 4 == 0)
            .collect();
        let mut oracle: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
        // A doubly-even code is self-orthogonal, so its dimension is at most n/2.
        for k in 0..=n / 2 {
            for combo in candidates.iter().combinations(k) {
                let s = span(combo.into_iter().copied());
                if s.len() == 1 << k && all_weights_div4(&s) {
                    oracle.insert(s);
                }
            }
        }
        let library: BTreeSet<BTreeSet<u64>> = enumerate_doubly_even(n, usize::MAX)
            .unwrap()
            .iter()
            .map(|c| ocode(c).words)
            .collect();
        let listed = enumerate_doubly_even(n, usize::MAX).unwrap().len();
        ensure(listed == library.len(), || format!("duplicates at length {n}"))?;
        ensure(library == oracle, || {
            format!("length {n}: library {} codes, oracle {}", library.len(), oracle.len())
        })?;
        counts.push(oracle.len());
    }
    Ok(format!("lengths 1..=8 match the subspace oracle, counts {counts:?}"))
}

struct OperadCorpus {
    outers: Vec<(BinaryCode, OCode)>,
    pool: Vec<(BinaryCode, OCode)>,
}

fn operad_corpus() -> OperadCorpus {
    let outers = codes_up_to(5)
        .into_iter()
        .map(|c| {
            let o = ocode(&c);
            (c, o)
        })
        .collect();
    let pool = [1, 4, 5]
        .iter()
        .flat_map(|&n| enumerate_doubly_even(n, usize::MAX).unwrap())
        .map(|c| {
            let o = ocode(&c);
            (c, o)
        })
        .collect();
    OperadCorpus { outers, pool }
}

const MAX_COMPOSED: usize = 16;

/// Associativity, equivariance and γ = iterated ∘ᵢ, plus closure (criterion 3)
/// on every composite met on the way.
fn operad_sweep() -> Result<(String, String), String> {
    let corpus = operad_corpus();
    let lengths: Vec<usize> = corpus.pool.iter().map(|(c, _)| c.length()).collect();
    let mut failure: Option<String> = None;
    let mut fail = |msg: String| {
        if failure.is_none() {
            failure = Some(msg);
        }
    };
    let (mut pairs, mut triples, mut outer_eq, mut inner_eq, mut closure) = (0u64, 0u64, 0u64, 0u64, 0u64);

    for (outer, oouter) in &corpus.outers {
        let n = outer.length();
        let sigmas: Vec<Vec<usize>> = if n <= 4 {
            (0..n).permutations(n).collect()
        } else {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            vec![swap, (0..n).map(|i| (i + 1) % n).collect()]
        };

        tuples(&lengths, n, MAX_COMPOSED, &mut |idx| {
            pairs += 1;
            let inners: Vec<BinaryCode> = idx.iter().map(|&i| corpus.pool[i].0.clone()).collect();
            let oinners: Vec<&OCode> = idx.iter().map(|&i| &corpus.pool[i].1).collect();
            let input = CompositionInput::new(outer.clone(), inners.clone()).unwrap();
            let g = gamma(&input).unwrap();
            let og = oracle_gamma(oouter, &oinners);
            if ocode(&g) != og {
                fail(format!("γ({outer}; {}) differs from oracle", inners.iter().join(", ")));
            }
            closure += 1;
            if !all_weights_div4(&og.words) {
                fail(format!("γ({outer}; …) not doubly even"));
            }
            if gamma_by_insertions(&input).unwrap() != g {
                fail(format!("iterated insertions differ for {outer}"));
            }

            let blocks: Vec<usize> = inners.iter().map(BinaryCode::length).collect();
            for s in &sigmas {
                outer_eq += 1;
                let sp = perm0(s.clone());
                let inv = sp.inverse();
                let moved: Vec<BinaryCode> =
                    (0..n).map(|j| inners[inv.apply(j)].clone()).collect();
                let lhs = gamma(
                    &CompositionInput::new(outer.permute(&sp).unwrap(), moved).unwrap(),
                )
                .unwrap();
                let tilde = block_permutation(&sp, &blocks).unwrap();
                let rhs = g.permute(&tilde).unwrap();
                let oracle_rhs = permute_words(&og.words, &oracle_block_images(s, &blocks));
                if lhs != rhs || ocode(&lhs).words != oracle_rhs {
                    fail(format!("outer equivariance {sp} on {outer}"));
                }
            }

            let mut check_inner = |perms: Vec<Vec<usize>>| {
                inner_eq += 1;
                let ps: Vec<Permutation> = perms.iter().cloned().map(perm0).collect();
                let moved: Vec<BinaryCode> = inners
                    .iter()
                    .zip(&ps)
                    .map(|(c, p)| c.permute(p).unwrap())
                    .collect();
                let lhs = gamma(&CompositionInput::new(outer.clone(), moved).unwrap()).unwrap();
                let hat = within_block_permutation(&ps, &blocks).unwrap();
                let rhs = g.permute(&hat).unwrap();
                let oracle_rhs = permute_words(&og.words, &oracle_within_images(&perms));
                if lhs != rhs || ocode(&lhs).words != oracle_rhs {
                    fail(format!("inner equivariance {perms:?} on {outer}"));
                }
            };
            let identity: Vec<Vec<usize>> = blocks.iter().map(|&k| (0..k).collect()).collect();
            for (b, &k) in blocks.iter().enumerate() {
                for p in (0..k).permutations(k) {
                    let mut perms = identity.clone();
                    perms[b] = p;
                    check_inner(perms);
                }
            }
            check_inner(
                blocks
                    .iter()
                    .map(|&k| (0..k).map(|j| (j + 1) % k).collect())
                    .collect(),
            );
            check_inner(
                blocks
                    .iter()
                    .map(|&k| (0..k).rev().collect())
                    .collect(),
            );
        });

        // Associativity: L ∘ (M₁…M_N) ∘ (inner codes), composed length ≤ 16.
        tuples(&lengths, n, MAX_COMPOSED, &mut |mid| {
            let middles: Vec<BinaryCode> = mid.iter().map(|&i| corpus.pool[i].0.clone()).collect();
            let omiddles: Vec<&OCode> = mid.iter().map(|&i| &corpus.pool[i].1).collect();
            let slots: usize = middles.iter().map(BinaryCode::length).sum();
            let lm = gamma(&CompositionInput::new(outer.clone(), middles.clone()).unwrap()).unwrap();
            let olm = oracle_gamma(oouter, &omiddles);
            tuples(&lengths, slots, MAX_COMPOSED, &mut |inn| {
                triples += 1;
                let inners: Vec<BinaryCode> = inn.iter().map(|&i| corpus.pool[i].0.clone()).collect();
                let oinners: Vec<&OCode> = inn.iter().map(|&i| &corpus.pool[i].1).collect();
                let left = gamma(&CompositionInput::new(lm.clone(), inners.clone()).unwrap()).unwrap();
                let mut rest = &inners[..];
                let mut orest = &oinners[..];
                let mut grouped = Vec::new();
                let mut ogrouped = Vec::new();
                for (m, om) in middles.iter().zip(&omiddles) {
                    let (head, tail) = rest.split_at(m.length());
                    let (ohead, otail) = orest.split_at(m.length());
                    grouped.push(gamma(&CompositionInput::new(m.clone(), head.to_vec()).unwrap()).unwrap());
                    ogrouped.push(oracle_gamma(om, ohead));
                    rest = tail;
                    orest = otail;
                }
                let right = gamma(&CompositionInput::new(outer.clone(), grouped).unwrap()).unwrap();
                let oleft = oracle_gamma(&olm, &oinners);
                let oright = oracle_gamma(oouter, &ogrouped.iter().collect::<Vec<_>>());
                if left != right || ocode(&left) != oleft || oleft != oright {
                    fail(format!(
                        "associativity: {outer}; {}; {}",
                        middles.iter().join(", "),
                        inners.iter().join(", ")
                    ));
                }
                closure += 1;
                if !all_weights_div4(&oleft.words) {
                    fail(format!("composite of {outer} not doubly even"));
                }
            });
        });
    }
    if let Some(f) = failure {
        return Err(f);
    }
    Ok((
        format!(
            "{triples} associativity triples, {outer_eq} outer and {inner_eq} inner equivariance checks, {pairs} γ = iterated ∘ᵢ pairs; 0 violations"
        ),
        format!("{closure} composites doubly even by exhaustive span check"),
    ))
}

fn criterion_4() -> Outcome {
    let outer = BinaryCode::new(
        8,
        vec!["11110000".parse().unwrap(), "00111100".parse().unwrap()],
    )
    .unwrap();
    let h4 = BinaryCode::new(4, vec!["1111".parse().unwrap()]).unwrap();
    let input = CompositionInput::new(outer.clone(), vec![h4.clone(); 8]).unwrap();
    let report = compose_with_report(&input, 1 << 20).unwrap();
    let (raw, _) = oracle_raw(&ocode(&outer), &vec![&ocode(&h4); 8]);
    let oracle_closed = raw.iter().all(|a| raw.iter().all(|b| raw.contains(&(a ^ b))));
    ensure(raw.len() == 37 && report.raw_set_size == 37, || {
        format!("raw set sizes {} / {}", raw.len(), report.raw_set_size)
    })?;
    ensure(!oracle_closed && !report.raw_set_linear, || "raw set is closed".into())?;
    let lib_raw = adinkra_core::operad::gamma_raw_set(&input, 1 << 20).unwrap();
    ensure(!is_xor_closed(&lib_raw), || "library raw set closed".into())?;
    ensure(span(raw.iter().copied()).len() == 64 && report.span_size == 64, || {
        "span size".into()
    })?;

    let g = report.code;
    ensure(all_weights_div4(&ocode(&g).words), || "span not doubly even".into())?;
    ensure(gamma_by_insertions(&input).unwrap() == g, || "insertions".into())?;

    // Associativity with the counterexample as a middle code.
    let triv1 = BinaryCode::trivial(1);
    let middles = vec![outer.clone(), h4.clone(), h4.clone(), h4.clone()];
    let mut inners = vec![h4.clone(); 8];
    inners.extend(vec![triv1; 12]);
    let lm = gamma(&CompositionInput::new(h4.clone(), middles.clone()).unwrap()).unwrap();
    let left = gamma(&CompositionInput::new(lm, inners.clone()).unwrap()).unwrap();
    let mut grouped = Vec::new();
    let mut rest = &inners[..];
    for m in &middles {
        let (head, tail) = rest.split_at(m.length());
        grouped.push(gamma(&CompositionInput::new(m.clone(), head.to_vec()).unwrap()).unwrap());
        rest = tail;
    }
    let right = gamma(&CompositionInput::new(h4.clone(), grouped).unwrap()).unwrap();
    let omid: Vec<OCode> = middles.iter().map(ocode).collect();
    let oinn: Vec<OCode> = inners.iter().map(ocode).collect();
    let oleft = oracle_gamma(
        &oracle_gamma(&ocode(&h4), &omid.iter().collect::<Vec<_>>()),
        &oinn.iter().collect::<Vec<_>>(),
    );
    ensure(left == right && ocode(&left) == oleft, || "associativity".into())?;
    // Only the counterexample block carries nonzero inner codes.
    ensure(left.dimension() == 6, || format!("composite {left}"))?;

    // Equivariance: generators of S₈ on the outside, rotations inside.
    let blocks = vec![4; 8];
    for s in [
        {
            let mut v: Vec<usize> = (0..8).collect();
            v.swap(0, 1);
            v
        },
        (0..8).map(|i| (i + 1) % 8).collect::<Vec<_>>(),
    ] {
        let sp = perm0(s.clone());
        let lhs = gamma(&CompositionInput::new(outer.permute(&sp).unwrap(), vec![h4.clone(); 8]).unwrap()).unwrap();
        let rhs = permute_words(&ocode(&g).words, &oracle_block_images(&s, &blocks));
        ensure(ocode(&lhs).words == rhs, || format!("outer equivariance {sp}"))?;
    }
    let rot: Vec<Vec<usize>> = (0..8).map(|_| (0..4).map(|j| (j + 1) % 4).collect()).collect();
    let ps: Vec<Permutation> = rot.iter().cloned().map(perm0).collect();
    let moved: Vec<BinaryCode> = ps.iter().map(|p| h4.permute(p).unwrap()).collect();
    let lhs = gamma(&CompositionInput::new(outer, moved).unwrap()).unwrap();
    ensure(
        ocode(&lhs).words == permute_words(&ocode(&g).words, &oracle_within_images(&rot)),
        || "inner equivariance".into(),
    )?;
    Ok("raw set has 37 words and is not XOR-closed; its span (64 words) is doubly even and satisfies the operad laws".into())
}

fn graph_checks(code: &BinaryCode, ch: &Chromotopology) -> Result<(), String> {
    let n = code.length();
    let words = ocode(code).words;
    let coset = |v: u64| words.iter().map(|c| c ^ v).min().unwrap();
    let verts: Vec<u64> = ch.vertices().iter().map(to_bits).collect();
    let nv = 1usize << (n - code.dimension());
    ensure(verts.len() == nv, || format!("{code}: |V| = {}", verts.len()))?;
    let cosets: HashSet<u64> = verts.iter().map(|&v| coset(v)).collect();
    ensure(cosets.len() == nv, || format!("{code}: vertices not distinct cosets"))?;
    ensure(ch.edges().len() == n * nv / 2, || format!("{code}: |E|"))?;

    let mut per_color = vec![vec![0usize; n]; nv];
    let mut simple = HashSet::new();
    for e in ch.edges() {
        ensure(e.v != e.w && simple.insert((e.v.min(e.w), e.v.max(e.w))), || {
            format!("{code}: loop or parallel edge")
        })?;
        ensure(e.color >= 1 && e.color <= n, || format!("{code}: color"))?;
        ensure(coset(verts[e.v] ^ 1 << (e.color - 1)) == coset(verts[e.w]), || {
            format!("{code}: edge is not a unit step")
        })?;
        ensure(
            verts[e.v].count_ones() % 2 != verts[e.w].count_ones() % 2,
            || format!("{code}: edge joins equal parity"),
        )?;
        per_color[e.v][e.color - 1] += 1;
        per_color[e.w][e.color - 1] += 1;
    }
    ensure(per_color.iter().flatten().all(|&c| c == 1), || {
        format!("{code}: not one edge per color per vertex")
    })?;
    for (v, side) in ch.bipartition().iter().enumerate() {
        let even = verts[v].count_ones() % 2 == 0;
        ensure(even == (*side == VertexColor::White), || format!("{code}: bipartition"))?;
    }
    for (i, j) in (1..=n).tuple_combinations() {
        let mut adj = vec![Vec::new(); nv];
        for e in ch.edges().iter().filter(|e| e.color == i || e.color == j) {
            adj[e.v].push(e.w);
            adj[e.w].push(e.v);
        }
        let mut seen = vec![false; nv];
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                for &y in &adj[comp[k]] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                k += 1;
            }
            ensure(comp.len() == 4 && comp.iter().all(|&x| adj[x].len() == 2), || {
                format!("{code}: colors {i},{j} component of size {}", comp.len())
            })?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let codes = codes_up_to(6);
    for code in &codes {
        let ch = Chromotopology::from_code(code).unwrap();
        ensure(ch.verify().passed(), || format!("{code}: library verify failed"))?;
        graph_checks(code, &ch)?;
    }
    Ok(format!("{} quotient graphs satisfy the axioms with exact |V| and |E|", codes.len()))
}

/// Odd-dashing check from first principles: walk i, j, i, j from each vertex.
fn oracle_odd(ch: &Chromotopology, dashed: &[bool]) -> bool {
    let n = ch.n_colors();
    let mut at = vec![vec![usize::MAX; n]; ch.vertex_count()];
    for (k, e) in ch.edges().iter().enumerate() {
        at[e.v][e.color - 1] = k;
        at[e.w][e.color - 1] = k;
    }
    let step = |v: usize, c: usize| {
        let e = &ch.edges()[at[v][c]];
        (at[v][c], if e.v == v { e.w } else { e.v })
    };
    (0..ch.vertex_count()).all(|v| {
        (0..n).tuple_combinations().all(|(i, j)| {
            let (e1, a) = step(v, i);
            let (e2, b) = step(a, j);
            let (e3, c) = step(b, i);
            let (e4, back) = step(c, j);
            back == v && [e1, e2, e3, e4].iter().filter(|&&e| dashed[e]).count() % 2 == 1
        })
    })
}

fn criterion_6() -> Outcome {
    let codes = codes_up_to(6);
    let mut brute_checked = 0;
    for code in &codes {
        let ch = Chromotopology::from_code(code).unwrap();
        let sol = solve_dashing(&ch).map_err(|e| format!("{code}: {e}"))?;
        ensure(sol.dashing.is_odd_dashing(&ch) && oracle_odd(&ch, &sol.dashing.dashed), || {
            format!("{code}: returned dashing is not odd")
        })?;
        let m = ch.edges().len();
        if m <= 16 {
            let brute = (0u32..1 << m)
                .filter(|mask| {
                    let d: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
                    oracle_odd(&ch, &d)
                })
                .count() as u128;
            ensure(sol.count() == Some(brute), || {
                format!("{code}: 2^nullity = {:?}, exhaustive {brute}", sol.count())
            })?;
            brute_checked += 1;
        }
        // Kernel vectors flip an even number of edges on every 4-cycle.
        for k in &sol.kernel {
            let d: Vec<bool> = sol
                .dashing
                .dashed
                .iter()
                .enumerate()
                .map(|(e, &x)| x ^ k.get(e))
                .collect();
            ensure(oracle_odd(&ch, &d), || format!("{code}: kernel shift breaks oddness"))?;
        }
    }
    let square = Chromotopology::from_code(&BinaryCode::trivial(2)).unwrap();
    let count = solve_dashing(&square).unwrap().count();
    ensure(count == Some(8), || format!("square has {count:?} odd-dashings"))?;
    Ok(format!(
        "{} graphs solved and verified; {brute_checked} counts match exhaustive enumeration; square has exactly 8",
        codes.len()
    ))
}

fn loop_laws(code: &BinaryCode, lp: &CodeLoop) -> Result<(), String> {
    let n = lp.order();
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| lp.mul(x, y)).collect()).collect();
    for x in 0..n {
        let row: HashSet<usize> = table[x].iter().copied().collect();
        let col: HashSet<usize> = (0..n).map(|y| table[y][x]).collect();
        ensure(row.len() == n && col.len() == n, || format!("{code}: not a Latin square"))?;
    }
    ensure(lp.cayley_table().unwrap().is_latin_square(), || format!("{code}: library Latin"))?;
    let m = |a: usize, b: usize| table[a][b];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                ensure(m(m(m(x, y), x), z) == m(x, m(y, m(x, z))), || {
                    format!("{code}: Moufang fails")
                })?;
            }
        }
    }
    ensure(lp.is_moufang().unwrap(), || format!("{code}: library Moufang"))?;

    // Extension: Z = {(±,0)} is central, projection to L is a surjective
    // homomorphism with kernel Z.
    let word = |x: usize| to_bits(&lp.element(x).word);
    let e = (0..n).find(|&x| (0..n).all(|y| m(x, y) == y && m(y, x) == y));
    ensure(e.is_some(), || format!("{code}: no identity"))?;
    let kernel: Vec<usize> = (0..n).filter(|&x| word(x) == 0).collect();
    ensure(kernel.len() == 2, || format!("{code}: kernel size"))?;
    for &z in &kernel {
        for x in 0..n {
            ensure(m(z, x) == m(x, z), || format!("{code}: Z not central"))?;
            for y in 0..n {
                ensure(
                    m(m(z, x), y) == m(z, m(x, y)) && m(m(x, y), z) == m(x, m(y, z)),
                    || format!("{code}: Z does not associate"),
                )?;
            }
        }
    }
    let code_words = ocode(code).words;
    let image: BTreeSet<u64> = (0..n).map(word).collect();
    ensure(image == code_words && n == 2 * code_words.len(), || {
        format!("{code}: quotient is not L")
    })?;
    for x in 0..n {
        for y in 0..n {
            ensure(word(m(x, y)) == word(x) ^ word(y), || format!("{code}: projection"))?;
        }
    }
    ensure(lp.verify_extension().unwrap().certified(), || {
        format!("{code}: library extension report")
    })?;
    Ok(())
}

fn loops_up_to_8() -> Vec<(BinaryCode, CodeLoop)> {
    codes_up_to(8)
        .into_iter()
        .filter(|c| c.size() <= 16)
        .map(|c| {
            let lp = CodeLoop::new(&c, 16).unwrap();
            (c, lp)
        })
        .collect()
}

fn criterion_7(loops: &[(BinaryCode, CodeLoop)]) -> Outcome {
    for (code, lp) in loops {
        loop_laws(code, lp)?;
    }
    let hamming = BinaryCode::new(
        8,
        ["11110000", "00111100", "10101010", "11111111"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
    )
    .unwrap();
    let lp = CodeLoop::new(&hamming, 16).unwrap();
    ensure(lp.order() == 32, || "Hamming loop order".into())?;
    ensure(lp.is_moufang().unwrap(), || "Hamming loop not Moufang".into())?;
    let n = lp.order();
    let assoc = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| lp.mul(lp.mul(x, y), z) == lp.mul(x, lp.mul(y, z))))
    });
    ensure(!assoc && !lp.is_associative().unwrap(), || "Hamming loop associative".into())?;
    Ok(format!(
        "{} loops (all codes of length ≤ 8) are Latin, Moufang and central extensions; Hamming [8,4] loop: order 32, Moufang, non-associative",
        loops.len()
    ))
}

fn criterion_8(loops: &[(BinaryCode, CodeLoop)]) -> Outcome {
    let mut checked = 0u64;
    for (code, lp) in loops {
        let n = lp.order();
        let minus = |x: usize| {
            let el = lp.element(x);
            lp.index_of(&adinkra_core::codeloop::LoopElement {
                negative: !el.negative,
                word: el.word,
            })
            .unwrap()
        };
        let w = |x: usize| to_bits(&lp.element(x).word);
        let alpha = |u: u64| (u.count_ones() / 4) % 2 == 1;
        let phi = |u: u64, v: u64| ((u & v).count_ones() / 2) % 2 == 1;
        let psi = |u: u64, v: u64, t: u64| (u & v & t).count_ones() % 2 == 1;
        for x in 0..n {
            let sq = lp.element(lp.mul(x, x));
            ensure(to_bits(&sq.word) == 0 && sq.negative == alpha(w(x)), || {
                format!("{code}: square of {}", lp.element(x))
            })?;
            for y in 0..n {
                let xy = lp.mul(x, y);
                let yx = lp.mul(y, x);
                let expect = if phi(w(x), w(y)) { minus(yx) } else { yx };
                ensure(xy == expect, || format!("{code}: commutator"))?;
                for z in 0..n {
                    checked += 1;
                    let l = lp.mul(xy, z);
                    let r = lp.mul(x, lp.mul(y, z));
                    let expect = if psi(w(x), w(y), w(z)) { minus(r) } else { r };
                    ensure(l == expect, || format!("{code}: associator"))?;
                }
            }
        }
    }
    Ok(format!(
        "α, φ, ψ realized exactly in {} loops ({checked} triples)",
        loops.len()
    ))
}

fn criterion_9() -> Outcome {
    let codes = codes_up_to(8);
    let mut genera = BTreeSet::new();
    for code in &codes {
        let ch = Chromotopology::from_code(code).unwrap();
        let d = Dessin::from_chromotopology(&ch).unwrap();
        let n_colors = code.length();
        let m = ch.vertex_count() / 2;
        ensure(d.n() == n_colors * m && d.n() == ch.edges().len(), || {
            format!("{code}: n ≠ N·m")
        })?;

        // σ₀ and σ₁ follow the color order at the white and black endpoint.
        let s0 = d.sigma0().images();
        let s1 = d.sigma1().images();
        for (k, e) in ch.edges().iter().enumerate() {
            let next = e.color % n_colors + 1;
            for (img, side) in [(s0[k], VertexColor::White), (s1[k], VertexColor::Black)] {
                let x = if ch.bipartition()[e.v] == side { e.v } else { e.w };
                let f = &ch.edges()[img];
                ensure(f.color == next && (f.v == x || f.w == x), || {
                    format!("{code}: rotation at edge {k}")
                })?;
            }
        }

        let cycle_lengths = |images: &[usize]| {
            let mut seen = vec![false; images.len()];
            let mut out = Vec::new();
            for s in 0..images.len() {
                let mut len = 0;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = images[i];
                    len += 1;
                }
                if len > 0 {
                    out.push(len);
                }
            }
            out
        };
        let c0 = cycle_lengths(s0);
        let c1 = cycle_lengths(s1);
        ensure(
            c0.len() == m && c1.len() == m && c0.iter().chain(&c1).all(|&l| l == n_colors),
            || format!("{code}: cycle structure"),
        )?;
        ensure(d.verify_cycle_structure(n_colors, m), || format!("{code}: library cycle check"))?;

        let sinf = d.sigma_infinity();
        let product_identity = (0..d.n()).all(|e| sinf.apply(s1[s0[e]]) == e);
        ensure(product_identity, || format!("{code}: σ₀σ₁σ∞ ≠ 1"))?;

        // Connectivity of the graph by plain BFS.
        let nv = ch.vertex_count();
        let mut adj = vec![Vec::new(); nv];
        for e in ch.edges() {
            adj[e.v].push(e.w);
            adj[e.w].push(e.v);
        }
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let connected = seen.iter().all(|&s| s);
        ensure(d.is_transitive() == connected, || format!("{code}: transitivity"))?;

        let cinf = cycle_lengths(sinf.images()).len();
        let chi = (c0.len() + c1.len() + cinf) as i64 - d.n() as i64;
        ensure((2 - chi) >= 0 && (2 - chi) % 2 == 0, || format!("{code}: genus not integral"))?;
        let g = d.genus().map_err(|e| format!("{code}: {e}"))?;
        ensure(2 * g as i64 == 2 - chi, || format!("{code}: genus mismatch"))?;
        genera.insert(g);
    }
    Ok(format!(
        "{} dessins: m cycles of length N, σ₀σ₁σ∞ = 1, transitivity = connectivity, genera {genera:?}",
        codes.len()
    ))
}

/// Whether `edge_map` sends each edge to an edge of color `s(c)` joining the images of its ends.
fn is_graph_automorphism(ch: &Chromotopology, vmap: &[usize], cmap: &[usize], emap: &[usize]) -> bool {
    ch.edges().iter().enumerate().all(|(k, e)| {
        let f = &ch.edges()[emap[k]];
        let ends = [vmap[e.v], vmap[e.w]];
        f.color == cmap[e.color - 1] + 1
            && (ends == [f.v, f.w] || ends == [f.w, f.v])
    })
}

fn criterion_10() -> Outcome {
    let codes = codes_up_to(6);
    let mut translations = 0u64;
    for code in &codes {
        let n = code.length();
        let adinkra = Adinkra::from_code(code).unwrap();
        let ch = adinkra.chromotopology();
        let words = ocode(code).words;
        let actions: Vec<Permutation> = (0u64..1 << n)
            .map(|u| adinkra.translation_action(&from_bits(n, u)).unwrap())
            .collect();
        let id_colors: Vec<usize> = (0..n).collect();
        for (u, a) in actions.iter().enumerate() {
            let emap = ch
                .induced_edge_map(a, &Permutation::identity(n))
                .ok_or_else(|| format!("{code}: translation {u} not an automorphism"))?;
            ensure(is_graph_automorphism(ch, a.images(), &id_colors, emap.images()), || {
                format!("{code}: translation edge map")
            })?;
            ensure(a.is_identity() == words.contains(&(u as u64)), || {
                format!("{code}: kernel of translation is not L at {u}")
            })?;
            for (v, b) in actions.iter().enumerate() {
                translations += 1;
                ensure(a.then(b) == actions[u ^ v], || format!("{code}: not a homomorphism"))?;
            }
        }

        // Automorphisms against a brute-force oracle, then group closure.
        let oracle: BTreeSet<Vec<usize>> = (0..n)
            .permutations(n)
            .filter(|p| permute_words(&words, p) == words)
            .collect();
        let auts = code.automorphisms().unwrap();
        let lib: BTreeSet<Vec<usize>> = auts.iter().map(|p| p.images().to_vec()).collect();
        ensure(lib == oracle, || format!("{code}: automorphism group differs"))?;
        let set: HashSet<&Permutation> = auts.iter().collect();
        for p in &auts {
            ensure(set.contains(&p.inverse()), || format!("{code}: not closed under inverse"))?;
            for q in &auts {
                ensure(set.contains(&p.then(q)), || format!("{code}: not closed"))?;
            }
        }
    }

    let h4 = BinaryCode::new(4, vec!["1111".parse().unwrap()]).unwrap();
    let adinkra = Adinkra::from_code(&h4).unwrap();
    let mut induced = 0;
    for p in (0..4).permutations(4) {
        let s = perm0(p.clone());
        let action = adinkra
            .color_permutation_action(&s)
            .unwrap()
            .ok_or_else(|| format!("color permutation {s} rejected"))?;
        ensure(
            is_graph_automorphism(
                adinkra.chromotopology(),
                action.vertex_map.images(),
                &p,
                action.edge_map.images(),
            ),
            || format!("color permutation {s} is not an automorphism"),
        )?;
        induced += 1;
    }
    ensure(induced == 24, || "not all 24 color permutations".into())?;
    Ok(format!(
        "{translations} translation products on {} codes; Aut(L) matches brute force and is closed; all 24 color permutations act on F₂⁴/span{{1111}}",
        codes.len()
    ))
}

fn criterion_11() -> Outcome {
    let cfg = VerifyConfig {
        length: 4,
        ..VerifyConfig::default()
    };
    let first = verify_all(&cfg).unwrap();
    let second = verify_all(&cfg).unwrap();
    ensure(first.iter().all(|r| r.passed()), || render_table(&first))?;
    let (a, b) = (render_table(&first), render_table(&second));
    ensure(a == b, || "tables differ between runs".into())?;
    Ok(format!("two verify-all runs at length 4 are byte-identical ({} bytes)", a.len()))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS {label}: {detail} [exact, {secs:.1}s]");
            true
        }
        Err(detail) => {
            println!("FAIL {label}: {detail} [exact, {secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run("criterion 1 (enumeration)", criterion_1);

    let start = Instant::now();
    let sweep = panic::catch_unwind(operad_sweep)
        .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
    let secs = start.elapsed().as_secs_f64();
    let (two, three) = match sweep {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    ok &= run("criterion 2 (operad laws)", || two);
    ok &= run("criterion 3 (closure)", || three);
    println!("  operad sweep for criteria 2 and 3 took {secs:.1}s");

    ok &= run("criterion 4 (raw-set gap)", criterion_4);
    ok &= run("criterion 5 (chromotopology axioms)", criterion_5);
    ok &= run("criterion 6 (odd-dashing)", criterion_6);
    let loops = loops_up_to_8();
    ok &= run("criterion 7 (code loops)", || criterion_7(&loops));
    ok &= run("criterion 8 (square/commutator/associator signs)", || criterion_8(&loops));
    ok &= run("criterion 9 (dessins)", criterion_9);
    ok &= run("criterion 10 (symmetries)", criterion_10);
    ok &= run("criterion 11 (determinism)", criterion_11);
    if ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
