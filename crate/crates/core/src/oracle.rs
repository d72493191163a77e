//! Brute-force recomputation of the closed formulas and the consistency grid.
//!
//! Permutation characters here come from counting fixed cosets and decomposing
//! the resulting class function over `Z[ζ]`; determinant-one characters come
//! from the exact-sequence recursion on top of those. Nothing below calls the
//! closed forms it is checking except to obtain the value under test.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Debug;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, pow};
use crate::characters::{self, exceptional_orbits};
use crate::classification::{self, CaseTag, ClassificationError, PathDescriptor};
use crate::cyclotomic::{self, ClassFunction, CyclicCharacter, CyclotomicError};
use crate::local::{self, CyclicGroup, EndoPermParams};
use crate::tree::{star_tree, Block, BlockDescriptor, EdgeSpec, Sign, SignPolicy, TreeSpec, VertexSpec};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("subgroup index {i} is outside [0, {n}]")]
    SubgroupIndex { i: u32, n: u32 },
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// Decomposes `j ↦ #{cosets of D_i fixed by u^j}` into irreducibles.
pub fn perm_character_by_fixed_points(p: u64, n: u32, i: u32) -> Result<CyclicCharacter, OracleError> {
    if i > n {
        return Err(OracleError::SubgroupIndex { i, n });
    }
    let order = pow(p, n);
    let cosets = pow(p, n - i);
    // u^j lies in D_i = ⟨u^(p^(n-i))⟩ exactly when it fixes every coset.
    let values: Vec<i64> = (0..order).map(|j| if j % cosets == 0 { cosets as i64 } else { 0 }).collect();
    let f = ClassFunction::from_integers(order as usize, &values)?;
    Ok(cyclotomic::decompose(&f)?)
}

/// `χ_W = χ_(k[D/D_(i_0)]) - χ_(W')` with `W' = Ω_(D/D_(i_1)) ∘ …`, ending at
/// `χ_k`, all permutation characters obtained by fixed points.
pub fn det1_char_by_recursion(params: &EndoPermParams, p: u64, n: u32) -> Result<CyclicCharacter, OracleError> {
    let mut cache = HashMap::new();
    det1_recursive(params.indices(), p, n, &mut cache)
}

fn det1_recursive(
    indices: &[u32],
    p: u64,
    n: u32,
    cache: &mut HashMap<u32, CyclicCharacter>,
) -> Result<CyclicCharacter, OracleError> {
    let mut perm = |i: u32| -> Result<CyclicCharacter, OracleError> {
        if let Some(chi) = cache.get(&i) {
            return Ok(chi.clone());
        }
        let chi = perm_character_by_fixed_points(p, n, i)?;
        cache.insert(i, chi.clone());
        Ok(chi)
    };
    match indices.split_first() {
        None => perm(n),
        Some((&first, rest)) => {
            let head = perm(first)?;
            let tail = det1_recursive(rest, p, n, cache)?;
            Ok(&head - &tail)
        }
    }
}

/// A deliberately wrong formula, so tests can see the suite catch it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// Adds one to every closed-form `ℓ_i`.
    CapDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub primes: Vec<u64>,
    pub n_max: u32,
    /// Sweep every `e | p - 1` rather than only `e = 1` and `e = p - 1`.
    pub include_e: bool,
    pub seed: u64,
    /// Number of random trees in the corpus.
    pub corpus_size: usize,
    pub fault: Option<Fault>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { primes: vec![3, 5, 7], n_max: 3, include_e: true, seed: 1, corpus_size: 200, fault: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub checks_run: u64,
    pub failures: Vec<Failure>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<T: PartialEq + Debug>(&mut self, name: &str, parameters: impl FnOnce() -> String, expected: T, actual: T) {
        self.checks_run += 1;
        if expected != actual {
            self.failures.push(Failure {
                check: name.to_owned(),
                parameters: parameters(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
    }

    fn fail(&mut self, name: &str, parameters: String, error: impl std::fmt::Display) {
        self.checks_run += 1;
        self.failures.push(Failure {
            check: name.to_owned(),
            parameters,
            expected: "no error".into(),
            actual: error.to_string(),
        });
    }

    fn merge(&mut self, other: ConsistencyReport) {
        self.checks_run += other.checks_run;
        self.failures.extend(other.failures);
    }
}

/// Every subset of `range`, as a strictly increasing list.
pub fn index_subsets(range: std::ops::Range<u32>) -> Vec<EndoPermParams> {
    let items: Vec<u32> = range.collect();
    (0u32..1 << items.len())
        .map(|mask| {
            let chosen = items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &x)| x).collect();
            EndoPermParams::new(chosen).expect("subsets of a sorted list are sorted")
        })
        .collect()
}

/// Runs every invariant over the grid in `spec` plus a random tree corpus.
pub fn consistency_suite(spec: &GridSpec) -> ConsistencyReport {
    let mut report = ConsistencyReport::default();
    let groups: Vec<CyclicGroup> = spec
        .primes
        .iter()
        .filter(|&&p| p > 2 && is_prime(p))
        .flat_map(|&p| (1..=spec.n_max).map(move |n| CyclicGroup::new(p, n).expect("odd prime")))
        .collect();
    for g in &groups {
        report.merge(local_checks(g, spec.fault));
        report.merge(character_checks(g, spec.include_e));
        report.merge(star_checks(g));
    }
    if !groups.is_empty() && spec.corpus_size > 0 {
        let primes: Vec<u64> = groups.iter().map(|g| g.p()).collect::<HashSet<_>>().into_iter().collect();
        let mut primes = primes;
        primes.sort_unstable();
        let corpus = random_corpus(spec.seed, spec.corpus_size, &primes, spec.n_max, 12);
        for desc in corpus {
            report.merge(block_checks(&desc));
        }
    }
    report
}

fn local_checks(g: &CyclicGroup, fault: Option<Fault>) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let (p, n) = (g.p(), g.n());
    let mut perm = Vec::new();
    for i in 0..=n {
        let params = || format!("p={p} n={n} i={i}");
        let closed = local::perm_module_character(g, i).expect("in range");
        match perm_character_by_fixed_points(p, n, i) {
            Ok(brute) => r.check("perm character vs fixed points", params, brute, closed.clone()),
            Err(err) => r.fail("perm character vs fixed points", params(), err),
        }
        perm.push(closed);
    }
    for r_dim in 1..g.order() {
        let once = local::heller_relative(g, 0, r_dim).expect("in range").dim;
        let twice = local::heller_relative(g, 0, once).expect("in range").dim;
        r.check("heller double", || format!("p={p} n={n} r={r_dim}"), r_dim, twice);
    }
    for w in index_subsets(0..n) {
        let params = || format!("p={p} n={n} W={w}");
        let det1 = local::char_det1_endoperm(&w, g).expect("valid params");
        match det1_char_by_recursion(&w, p, n) {
            Ok(brute) => r.check("det1 closed form vs recursion", params, brute, det1.clone()),
            Err(err) => r.fail("det1 closed form vs recursion", params(), err),
        }
        r.check("det1 0/1 law", params, true, det1.is_zero_one());
        let top = local::cap_dim_recursive(&w, g, n).expect("valid params");
        r.check("det1 degree vs cap dimension", params, top as i64, det1.degree());
        for i in 1..=n {
            let params = || format!("p={p} n={n} W={w} i={i}");
            let recursive = local::cap_dim_recursive(&w, g, i).expect("valid params");
            let mut closed = local::cap_dim(&w, g, i).expect("valid params");
            if fault == Some(Fault::CapDim) {
                closed += 1;
            }
            r.check("cap_dim vs recursive", params, recursive, closed);
            let morita = local::morita_correspondent_character(&w, g, i).expect("valid params");
            let sub = g.subgroup(i).expect("in range");
            let restricted = local::restricted_cap_params(&w, g, i).expect("in range");
            let composed = local::char_det1_endoperm(&restricted, &sub)
                .and_then(|chi| local::induce_character(g, i, &chi))
                .expect("valid params");
            r.check("morita factorization", params, composed, morita.clone());
            r.check("morita degree", params, (recursive * g.index_of(i)) as i64, morita.degree());
            r.check("morita 0/1 law", params, true, morita.is_zero_one());
        }
    }
    r
}

fn character_checks(g: &CyclicGroup, include_e: bool) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let (p, n) = (g.p(), g.n());
    let es: Vec<u64> = (1..p)
        .filter(|e| (p - 1) % e == 0)
        .filter(|&e| include_e || e == 1 || e == p - 1)
        .filter(|&e| (g.order() - 1) / e > 1)
        .collect();
    for e in es {
        let orbits = exceptional_orbits(p, n, e).expect("e | p-1");
        for orbit in &orbits.orbits {
            for j in 0..=n {
                let q = pow(p, j);
                let constant = orbit.iter().all(|&k| (k % q == 0) == (orbit[0] % q == 0));
                r.check(
                    "orbit valuation constancy",
                    || format!("p={p} n={n} e={e} orbit={orbit:?} j={j}"),
                    true,
                    constant,
                );
            }
        }
        for w in index_subsets(1..n) {
            for i in 1..=n {
                let params = || format!("p={p} n={n} e={e} W={w} i={i}");
                let coords = match characters::xi_coordinates(&w, &orbits, i) {
                    Ok(c) => c,
                    Err(err) => {
                        r.fail("xi 0/1 law", params(), err);
                        continue;
                    }
                };
                let big_l = local::u_module_dimension(&w, g, i).expect("valid params");
                let (_, d0) = characters::t_and_d0(&w, g, i).expect("valid params");
                let numerator = big_l as i64 - d0;
                r.check("xi count integrality", params, 0, numerator % e as i64);
                r.check("xi count law", params, numerator / e as i64, coords.iter().sum::<i64>());
                r.check("d0 vs l_i mod e", params, d0 % e as i64, (big_l % e) as i64);
                match characters::nilpotent_level_character(&w, g, i) {
                    Ok(_) => r.checks_run += 1,
                    Err(err) => r.fail("nilpotent level d0", params(), err),
                }
            }
        }
    }
    r
}

/// Stars with both centre signs, all block `W`, all `e` with `m > 1`.
fn star_checks(g: &CyclicGroup) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let (p, n) = (g.p(), g.n());
    for e in (1..p).filter(|e| (p - 1) % e == 0 && (g.order() - 1) / e > 1) {
        for w in index_subsets(1..n) {
            for centre in [Sign::Minus, Sign::Plus] {
                let desc = star_tree(e, p, n, w.clone(), centre).expect("star parameters");
                r.merge(block_checks(&desc));
                if centre == Sign::Minus {
                    r.merge(b_level_checks(&desc));
                }
            }
            if e == 1 && w.is_trivial() {
                let desc = star_tree(1, p, n, w.clone(), Sign::Minus).expect("star parameters");
                r.merge(self_block_checks(&desc));
            }
        }
    }
    r
}

/// Enumeration invariants for one descriptor at every vertex `D_i`.
pub fn block_checks(desc: &BlockDescriptor) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let label = || format!("p={} n={} e={} W={} tree={}", desc.p, desc.n, desc.e, desc.w, tree_summary(desc));
    let block = match Block::new(desc.clone(), SignPolicy::Strict) {
        Ok(b) => b,
        Err(err) => {
            r.fail("descriptor validity", label(), err);
            return r;
        }
    };
    if block.m() == 1 {
        return r;
    }
    for i in 1..=block.n() {
        let params = || format!("{} i={i}", label());
        let found = match classification::enumerate_trivial_source(&block, i) {
            Ok(found) => {
                r.checks_run += 1;
                found
            }
            Err(ClassificationError::Count { expected, found, .. }) => {
                r.check("enumeration count", params, expected as usize, found.len());
                found
            }
            Err(err) => {
                r.fail("enumeration count", params(), err);
                continue;
            }
        };
        let distinct: HashSet<&PathDescriptor> = found.iter().collect();
        r.check("pairwise distinct paths", params, found.len(), distinct.len());
        let hooks_expected = block.w().is_trivial() && i == block.n() && block.e() > 1;
        let has_hook = found.iter().any(|path| path.type_tag == 1);
        r.check("type 1 iff W = k and i = n", params, hooks_expected, has_hook);

        let (t, _) = characters::t_and_d0(block.w(), block.group(), i).expect("valid");
        let mut xi_parts = HashSet::new();
        for path in &found {
            match characters::character_of(&block, i, path) {
                Ok(chi) => {
                    r.check("character 0/1 law", params, true, chi.is_zero_one());
                    if path.case() != Some(CaseTag::Hook) {
                        xi_parts.insert(chi.exceptional.clone());
                    }
                }
                Err(err) => r.fail("character 0/1 law", params(), err),
            }
            if block.e() > 1 && path.type_tag != 1 {
                let anchor = if matches!(path.type_tag, 3 | 7) {
                    block.exceptional_vertex().expect("m > 1")
                } else {
                    path.spine_vertices[0]
                };
                r.check(
                    "divisibility branch matches parity of t",
                    params,
                    t.rem_euclid(2) == 1,
                    block.sign(anchor).is_positive(),
                );
            }
        }
        r.check("vertex-uniform exceptional part", params, true, xi_parts.len() <= 1);

        if let (Ok(x), Ok(c), Ok(lit)) = (
            characters::xi(&block, i),
            characters::xi_complement(&block, i),
            characters::xi_overline_literal(&block, i),
        ) {
            r.check("xi + complement = chi_Lambda", params, block.chi_lambda(), &x + &c);
            let shift = if t.rem_euclid(2) == 1 { 0 } else { 1 };
            let shifted: Vec<i64> = lit.exceptional.iter().map(|v| v + shift).collect();
            r.check("overline audit", params, c.exceptional, shifted);
        }
    }
    r
}

/// Characters from the star enumeration against the `b`-level formula, leaf by leaf.
pub fn b_level_checks(desc: &BlockDescriptor) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let Ok(block) = Block::new(desc.clone(), SignPolicy::Strict) else {
        r.fail("b-level agreement", format!("{desc:?}"), "invalid star");
        return r;
    };
    for i in 1..=block.n() {
        let params = || format!("p={} n={} e={} W={} i={i}", desc.p, desc.n, desc.e, desc.w);
        let Ok(found) = classification::enumerate_trivial_source(&block, i) else {
            r.fail("b-level agreement", params(), "enumeration failed");
            continue;
        };
        for x in 1..=block.edge_count() {
            let leaf_edge = x - 1;
            let path = found
                .iter()
                .find(|path| path.spine_edges.contains(&leaf_edge) || path.extra_edges.first() == Some(&leaf_edge));
            let expected = characters::b_level_character(&block, i, x).map_err(|e| e.to_string());
            let actual = match path {
                Some(path) => characters::character_of(&block, i, path).map_err(|e| e.to_string()),
                None => Err(format!("no enumerated path through leaf {x}")),
            };
            r.check("b-level agreement", || format!("{} x={x}", params()), expected, actual);
        }
    }
    r
}

/// For the block of `kD` itself, enumerated characters relabelled along
/// `χ_1 ↔ λ_0`, `χ_(λ_κ) ↔ λ_κ` against the permutation characters.
pub fn self_block_checks(desc: &BlockDescriptor) -> ConsistencyReport {
    let mut r = ConsistencyReport::default();
    let Ok(block) = Block::new(desc.clone(), SignPolicy::Strict) else {
        r.fail("self-block closure", format!("{desc:?}"), "invalid descriptor");
        return r;
    };
    let g = *block.group();
    for i in 1..=block.n() {
        let params = || format!("p={} n={} i={i}", desc.p, desc.n);
        let relabelled =
            classification::enumerate_trivial_source(&block, i).map_err(|e| e.to_string()).and_then(|found| {
                let chi = characters::character_of(&block, i, &found[0]).map_err(|e| e.to_string())?;
                Ok(relabel_self_block(&block, &chi))
            });
        let expected = local::perm_module_character(&g, i).map_err(|e| e.to_string());
        r.check("self-block closure", params, expected, relabelled);
    }
    r
}

/// Rewrites a character of the `e = 1` block over `λ_0, …, λ_(p^n - 1)`.
pub fn relabel_self_block(block: &Block, chi: &crate::tree::BlockCharacter) -> CyclicCharacter {
    let orbits = block.orbits().expect("m > 1");
    let mut mults = vec![0; block.order() as usize];
    mults[0] = chi.nonexceptional[0];
    for (r, &kappa) in orbits.representatives.iter().enumerate() {
        mults[kappa as usize] = chi.exceptional[r];
    }
    CyclicCharacter::from_mults(mults)
}

fn tree_summary(desc: &BlockDescriptor) -> String {
    let edges: Vec<String> = desc.tree.edges.iter().map(|e| format!("{}-{}", e.ends[0], e.ends[1])).collect();
    format!("[{}] exc={:?}", edges.join(","), desc.tree.exceptional)
}

/// A uniformly random labelled tree on `e + 1` vertices decoded from a Prüfer
/// sequence, with shuffled cyclic orders, alternating signs, a random
/// exceptional vertex and random `W`.
pub fn random_descriptor(rng: &mut ChaCha8Rng, p: u64, n: u32, e: u64) -> BlockDescriptor {
    let count = (e + 1) as usize;
    let edges_idx = prufer_tree(rng, count);
    let vid = |k: usize| format!("chi_{k}");
    let eid = |k: usize| format!("S_{k}");

    let mut adjacency = vec![Vec::new(); count];
    for (k, &(a, b)) in edges_idx.iter().enumerate() {
        adjacency[a].push((k, b));
        adjacency[b].push((k, a));
    }
    let mut signs = vec![None; count];
    let root_sign = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
    signs[0] = Some(root_sign);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        let s = signs[v].expect("visited");
        for &(_, w) in &adjacency[v] {
            if signs[w].is_none() {
                signs[w] = Some(s.opposite());
                stack.push(w);
            }
        }
    }

    let vertices = (0..count).map(|k| VertexSpec { id: vid(k), sign: signs[k].expect("tree is connected") }).collect();
    let edges =
        edges_idx.iter().enumerate().map(|(k, &(a, b))| EdgeSpec { id: eid(k), ends: [vid(a), vid(b)] }).collect();
    let mut cyclic_order = BTreeMap::new();
    for (v, adj) in adjacency.iter().enumerate() {
        let mut order: Vec<String> = adj.iter().map(|&(k, _)| eid(k)).collect();
        order.shuffle(rng);
        cyclic_order.insert(vid(v), order);
    }
    let m = (pow(p, n) - 1) / e;
    let exceptional = (m > 1).then(|| vid(rng.random_range(0..count)));
    let w_choices = index_subsets(1..n);
    let w = w_choices.choose(rng).expect("at least W = k").clone();
    BlockDescriptor { p, n, e, tree: TreeSpec { vertices, exceptional, edges, cyclic_order }, w }
}

fn prufer_tree(rng: &mut ChaCha8Rng, count: usize) -> Vec<(usize, usize)> {
    if count == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..count - 2).map(|_| rng.random_range(0..count)).collect();
    let mut degree = vec![1; count];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(count - 1);
    for &s in &seq {
        let leaf = (0..count).find(|&v| degree[v] == 1).expect("a leaf always remains");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..count).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// `size` random descriptors with `p` from `primes`, `n ≤ n_max`,
/// `e ≤ e_max` and `m > 1`; parameter draws violating these are rejected.
pub fn random_corpus(seed: u64, size: usize, primes: &[u64], n_max: u32, e_max: u64) -> Vec<BlockDescriptor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    if primes.is_empty() || n_max == 0 {
        return out;
    }
    while out.len() < size {
        let p = *primes.choose(&mut rng).expect("nonempty");
        let n = rng.random_range(1..=n_max);
        let e = rng.random_range(1..=e_max.min(p - 1));
        if (p - 1) % e != 0 || (pow(p, n) - 1) / e <= 1 {
            continue;
        }
        out.push(random_descriptor(&mut rng, p, n, e));
    }
    out
}
