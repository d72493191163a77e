//! Acceptance criteria, one test each. Every test writes a single
//! `criterion N: PASS|FAIL` line to stderr, outside the harness capture, and
//! fails on any mismatch or when its time budget is exceeded.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclic_blocks::characters::{self, exceptional_orbits};
use cyclic_blocks::classification::{self, CaseTag};
use cyclic_blocks::cyclotomic::{decompose, inner_product, ClassFunction, CyclicCharacter};
use cyclic_blocks::local::{self, CyclicGroup};
use cyclic_blocks::oracle::{self, index_subsets, random_corpus};
use cyclic_blocks::tree::{star_tree, Block, BlockDescriptor, Sign, SignPolicy};

const CORPUS_SEED: u64 = 20_240_607;
const CORPUS_SIZE: usize = 240;

struct Outcome {
    checks: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: 0, failures: Vec::new() }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, expected: T, actual: T) {
        self.checks += 1;
        if expected != actual {
            self.failures.push(format!("{}: expected {expected:?}, got {actual:?}", what()));
        }
    }
}

fn finish(id: u32, title: &str, budget: Option<Duration>, start: Instant, outcome: Outcome) {
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    let passed = outcome.failures.is_empty() && in_budget && outcome.checks > 0;
    let budget_note = budget.map(|b| format!(" / budget {:.0?}", b)).unwrap_or_default();
    let line = format!(
        "criterion {id}: {} {title} ({} checks, {} failures, {:.2?}{budget_note})",
        if passed { "PASS" } else { "FAIL" },
        outcome.checks,
        outcome.failures.len(),
        elapsed,
    );
    let _ = writeln!(std::io::stderr(), "{line}");
    for failure in outcome.failures.iter().take(10) {
        let _ = writeln!(std::io::stderr(), "    {failure}");
    }
    assert!(outcome.checks > 0, "criterion {id} ran no checks");
    assert!(outcome.failures.is_empty(), "{line}");
    assert!(in_budget, "{line}");
}

fn groups(primes: &[u64], n_max: u32) -> Vec<CyclicGroup> {
    primes.iter().flat_map(|&p| (1..=n_max).map(move |n| CyclicGroup::new(p, n).unwrap())).collect()
}

/// Every `e | p - 1` with `m = (p^n - 1)/e > 1`.
fn inertial_indices(g: &CyclicGroup) -> Vec<u64> {
    (1..g.p()).filter(|e| (g.p() - 1).is_multiple_of(*e) && (g.order() - 1) / e > 1).collect()
}

fn corpus() -> Vec<BlockDescriptor> {
    random_corpus(CORPUS_SEED, CORPUS_SIZE, &[5, 7, 13], 3, 12)
}

#[test]
fn criterion_01_cap_dimension_identity() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7, 11], 4) {
        for w in index_subsets(1..g.n()) {
            for i in 1..=g.n() {
                out.expect(
                    || format!("p={} n={} W={w} i={i}", g.p(), g.n()),
                    local::cap_dim_recursive(&w, &g, i).unwrap(),
                    local::cap_dim(&w, &g, i).unwrap(),
                );
            }
        }
    }
    finish(1, "cap_dim = cap_dim_recursive", Some(Duration::from_secs(5)), start, out);
}

#[test]
fn criterion_02_det1_character_identity() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7], 3) {
        for w in index_subsets(0..g.n()) {
            let closed = local::char_det1_endoperm(&w, &g).unwrap();
            let brute = oracle::det1_char_by_recursion(&w, g.p(), g.n()).unwrap();
            out.expect(|| format!("p={} n={} W={w}", g.p(), g.n()), brute, closed);
        }
    }
    finish(2, "det1 closed form = fixed-point recursion", Some(Duration::from_secs(30)), start, out);
}

#[test]
fn criterion_03_morita_factorization() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7], 3) {
        for w in index_subsets(0..g.n()) {
            for i in 1..=g.n() {
                let label = || format!("p={} n={} W={w} i={i}", g.p(), g.n());
                let morita = local::morita_correspondent_character(&w, &g, i).unwrap();
                let sub = g.subgroup(i).unwrap();
                let restricted = local::restricted_cap_params(&w, &g, i).unwrap();
                let composed =
                    local::induce_character(&g, i, &local::char_det1_endoperm(&restricted, &sub).unwrap()).unwrap();
                out.expect(label, composed, morita.clone());
                let ell = local::cap_dim(&w, &g, i).unwrap();
                out.expect(label, (ell * g.index_of(i)) as i64, morita.degree());
            }
        }
    }
    finish(
        3,
        "Morita correspondent = Ind o det1 o Cap o Res, degree l_i p^(n-i)",
        Some(Duration::from_secs(30)),
        start,
        out,
    );
}

#[test]
fn criterion_04_count_law() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7, 13], 3) {
        for e in inertial_indices(&g) {
            let orbits = exceptional_orbits(g.p(), g.n(), e).unwrap();
            for w in index_subsets(1..g.n()) {
                for i in 1..=g.n() {
                    let label = || format!("p={} n={} e={e} W={w} i={i}", g.p(), g.n());
                    let coords = characters::xi_coordinates(&w, &orbits, i).unwrap();
                    let big_l = local::u_module_dimension(&w, &g, i).unwrap() as i64;
                    let (_, d0) = characters::t_and_d0(&w, &g, i).unwrap();
                    out.expect(label, 0, (big_l - d0) % e as i64);
                    out.expect(label, (big_l - d0) / e as i64, coords.iter().filter(|&&c| c != 0).count() as i64);
                }
            }
        }
    }
    finish(4, "|Xi(W,i)| = (l_i p^(n-i) - d0)/e", Some(Duration::from_secs(60)), start, out);
}

#[test]
fn criterion_05_self_block_closure() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5], 3) {
        let desc = star_tree(1, g.p(), g.n(), local::EndoPermParams::trivial(), Sign::Minus).unwrap();
        let block = Block::new(desc, SignPolicy::Strict).unwrap();
        for i in 1..=g.n() {
            let label = || format!("p={} n={} i={i}", g.p(), g.n());
            let found = classification::enumerate_trivial_source(&block, i).unwrap();
            out.expect(label, 1, found.len());
            let chi = characters::character_of(&block, i, &found[0]).unwrap();
            let relabelled = oracle::relabel_self_block(&block, &chi);
            out.expect(label, local::perm_module_character(&g, i).unwrap(), relabelled.clone());
            out.expect(label, oracle::perm_character_by_fixed_points(g.p(), g.n(), i).unwrap(), relabelled);
        }
    }
    finish(5, "kD block reproduces k[D/D_i]", None, start, out);
}

#[test]
fn criterion_06_enumeration_cardinality() {
    let start = Instant::now();
    let mut out = Outcome::new();
    let corpus = corpus();
    out.expect(|| "corpus size".into(), true, corpus.len() >= 200);
    for desc in &corpus {
        out.expect(
            || "corpus parameters".into(),
            true,
            [5, 7, 13].contains(&desc.p) && desc.e <= 12 && desc.m().unwrap() > 1,
        );
        let block = Block::new(desc.clone(), SignPolicy::Strict).unwrap();
        for i in 1..=block.n() {
            let label = || format!("p={} n={} e={} W={} i={i}", desc.p, desc.n, desc.e, desc.w);
            match classification::enumerate_trivial_source(&block, i) {
                Ok(found) => {
                    out.expect(label, block.e() as usize, found.len());
                    for path in &found {
                        let chi = characters::character_of(&block, i, path).unwrap();
                        out.expect(label, true, chi.is_zero_one());
                    }
                }
                Err(err) => out.expect(label, "ok".to_owned(), err.to_string()),
            }
        }
    }
    finish(
        6,
        "exactly e trivial source modules per vertex on the random corpus",
        Some(Duration::from_secs(120)),
        start,
        out,
    );
}

#[test]
fn criterion_07_vertex_uniform_exceptional_part() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for desc in &corpus() {
        let block = Block::new(desc.clone(), SignPolicy::Strict).unwrap();
        for i in 1..=block.n() {
            let found = classification::enumerate_trivial_source(&block, i).unwrap();
            let parts: Vec<Vec<i64>> = found
                .iter()
                .filter(|path| path.case() != Some(CaseTag::Hook))
                .map(|path| characters::character_of(&block, i, path).unwrap().exceptional)
                .collect();
            for part in &parts {
                out.expect(|| format!("p={} n={} e={} W={} i={i}", desc.p, desc.n, desc.e, desc.w), &parts[0], part);
            }
        }
    }
    finish(7, "non-hook modules with a common vertex share Xi_X", None, start, out);
}

#[test]
fn criterion_08_complement_audit() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7, 13], 3) {
        for e in inertial_indices(&g) {
            for w in index_subsets(1..g.n()) {
                let block = Block::new(star_tree(e, g.p(), g.n(), w.clone(), Sign::Minus).unwrap(), SignPolicy::Strict)
                    .unwrap();
                for i in 1..=g.n() {
                    let label = || format!("p={} n={} e={e} W={w} i={i}", g.p(), g.n());
                    let xi = characters::xi(&block, i).unwrap();
                    let complement = characters::xi_complement(&block, i).unwrap();
                    let literal = characters::xi_overline_literal(&block, i).unwrap();
                    out.expect(label, block.chi_lambda(), &xi + &complement);
                    let (t, _) = characters::t_and_d0(&w, &g, i).unwrap();
                    let difference: Vec<i64> =
                        complement.exceptional.iter().zip(&literal.exceptional).map(|(c, l)| c - l).collect();
                    let expected = if t.rem_euclid(2) == 1 { 0 } else { 1 };
                    out.expect(label, vec![expected; block.m() as usize], difference);
                }
            }
        }
    }
    finish(8, "complement = chi_Lambda - Xi; printed overline differs by chi_Lambda iff t(i) even", None, start, out);
}

#[test]
fn criterion_09_b_level_agreement() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in groups(&[3, 5, 7], 3) {
        for e in inertial_indices(&g) {
            for w in index_subsets(1..g.n()) {
                let desc = star_tree(e, g.p(), g.n(), w, Sign::Minus).unwrap();
                let report = oracle::b_level_checks(&desc);
                out.checks += report.checks_run;
                out.failures.extend(
                    report
                        .failures
                        .iter()
                        .map(|f| format!("{}: expected {}, got {}", f.parameters, f.expected, f.actual)),
                );
            }
        }
    }
    finish(9, "star characters agree with the b-level formula", None, start, out);
}

#[test]
fn criterion_10_cyclotomic_substrate() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for order in [3usize, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27] {
        let irr: Vec<ClassFunction> = (0..order).map(|k| ClassFunction::irreducible(order, k).unwrap()).collect();
        for (a, f) in irr.iter().enumerate() {
            for (b, g) in irr.iter().enumerate() {
                let ip = inner_product(f, g).unwrap();
                out.expect(|| format!("order {order} <{a},{b}>"), num_bigint::BigInt::from(i64::from(a == b)), ip);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let orders = [3usize, 5, 7, 9, 25, 27];
    for trial in 0..1000 {
        let order = orders[rng.random_range(0..orders.len())];
        let mults: Vec<i64> = (0..order).map(|_| rng.random_range(-3..=3)).collect();
        let chi = CyclicCharacter::from_mults(mults);
        let f = ClassFunction::from_character(&chi).unwrap();
        out.expect(|| format!("round trip {trial} (order {order})"), chi.clone(), decompose(&f).unwrap());
    }
    finish(10, "orthogonality and decompose/reconstruct round trip", Some(Duration::from_secs(5)), start, out);
}
