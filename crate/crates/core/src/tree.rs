//! Brauer trees with planar embedding, signs and an exceptional vertex.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, pow};
use crate::characters::{exceptional_orbits, OrbitStructure};
use crate::local::{CyclicGroup, EndoPermParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_positive() { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeSpec {
    pub vertices: Vec<VertexSpec>,
    /// Required key; `null` when `m = 1`.
    #[serde(deserialize_with = "Option::deserialize")]
    pub exceptional: Option<String>,
    pub edges: Vec<EdgeSpec>,
    /// Counter-clockwise order of the incident edges at each vertex.
    pub cyclic_order: BTreeMap<String, Vec<String>>,
}

/// The JSON input describing a block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDescriptor {
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub tree: TreeSpec,
    #[serde(rename = "W")]
    pub w: EndoPermParams,
}

impl BlockDescriptor {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// `m = (p^n - 1)/e`, if `e` divides `p^n - 1`.
    pub fn m(&self) -> Option<u64> {
        let order = self.p.checked_pow(self.n)?;
        (self.e > 0 && (order - 1) % self.e == 0).then(|| (order - 1) / self.e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignPolicy {
    /// Adjacent vertices with equal signs are violations.
    Strict,
    /// Adjacent vertices with equal signs are logged as warnings.
    #[default]
    Lax,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("n must be at least 1")]
    ZeroDefect,
    #[error("p^n overflows")]
    Overflow,
    #[error("e must be at least 1")]
    ZeroInertialIndex,
    #[error("e does not divide p-1")]
    EDoesNotDivide,
    #[error("W index {0} is outside [1, n-1]")]
    WIndex(u32),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("tree has {actual} edges, expected e = {expected}")]
    EdgeCount { expected: u64, actual: usize },
    #[error("tree has {actual} vertices, expected e+1 = {expected}")]
    VertexCount { expected: u64, actual: usize },
    #[error("edge {edge} has unknown endpoint {vertex}")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("edge {0} is a loop")]
    Loop(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("cyclic order missing for vertex {0}")]
    MissingCyclicOrder(String),
    #[error("cyclic order given for unknown vertex {0}")]
    UnknownCyclicOrderVertex(String),
    #[error("cyclic order at vertex {0} is not a permutation of its incident edges")]
    BadCyclicOrder(String),
    #[error("m = 1 but an exceptional vertex is given")]
    UnexpectedExceptional,
    #[error("m > 1 but no exceptional vertex is given")]
    MissingExceptional,
    #[error("exceptional vertex {0} is not a vertex")]
    UnknownExceptional(String),
    #[error("sign alternation violated at edge {0}")]
    SignAlternation(String),
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("invalid descriptor: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: String, edge: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("star tree needs e | p-1 and m > 1 (p = {p}, n = {n}, e = {e})")]
    StarParameters { p: u64, n: u32, e: u64 },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(Violation::to_string).collect::<Vec<_>>().join("; ")
}

/// Every violated invariant of `desc`; empty when the descriptor is valid.
pub fn validate(desc: &BlockDescriptor, policy: SignPolicy) -> Vec<Violation> {
    let mut out = Vec::new();
    let prime_ok = desc.p != 2 && is_prime(desc.p);
    if !prime_ok {
        out.push(Violation::NotOddPrime(desc.p));
    }
    if desc.n == 0 {
        out.push(Violation::ZeroDefect);
    }
    if desc.p.checked_pow(desc.n).is_none() {
        out.push(Violation::Overflow);
    }
    if desc.e == 0 {
        out.push(Violation::ZeroInertialIndex);
    } else if desc.p == 0 || !(desc.p - 1).is_multiple_of(desc.e) {
        out.push(Violation::EDoesNotDivide);
    }
    for &idx in desc.w.indices() {
        if idx == 0 || idx >= desc.n {
            out.push(Violation::WIndex(idx));
        }
    }

    let tree = &desc.tree;
    let mut vertex_ids = HashSet::new();
    for v in &tree.vertices {
        if !vertex_ids.insert(v.id.as_str()) {
            out.push(Violation::DuplicateVertex(v.id.clone()));
        }
    }
    let mut edge_ids = HashSet::new();
    for edge in &tree.edges {
        if !edge_ids.insert(edge.id.as_str()) {
            out.push(Violation::DuplicateEdge(edge.id.clone()));
        }
    }
    if tree.edges.len() as u64 != desc.e {
        out.push(Violation::EdgeCount { expected: desc.e, actual: tree.edges.len() });
    }
    if tree.vertices.len() as u64 != desc.e + 1 {
        out.push(Violation::VertexCount { expected: desc.e + 1, actual: tree.vertices.len() });
    }

    let mut endpoints_ok = true;
    for edge in &tree.edges {
        for end in &edge.ends {
            if !vertex_ids.contains(end.as_str()) {
                out.push(Violation::UnknownEndpoint { edge: edge.id.clone(), vertex: end.clone() });
                endpoints_ok = false;
            }
        }
        if edge.ends[0] == edge.ends[1] {
            out.push(Violation::Loop(edge.id.clone()));
            endpoints_ok = false;
        }
    }
    if endpoints_ok && !is_tree(tree) {
        out.push(Violation::NotATree);
    }

    let mut incident: HashMap<&str, Vec<&str>> = tree.vertices.iter().map(|v| (v.id.as_str(), Vec::new())).collect();
    for edge in &tree.edges {
        for end in &edge.ends {
            if let Some(list) = incident.get_mut(end.as_str()) {
                list.push(edge.id.as_str());
            }
        }
    }
    for v in &tree.vertices {
        match tree.cyclic_order.get(&v.id) {
            None => out.push(Violation::MissingCyclicOrder(v.id.clone())),
            Some(order) => {
                let mut given: Vec<&str> = order.iter().map(String::as_str).collect();
                let mut expected = incident[v.id.as_str()].clone();
                given.sort_unstable();
                expected.sort_unstable();
                if given != expected {
                    out.push(Violation::BadCyclicOrder(v.id.clone()));
                }
            }
        }
    }
    for key in tree.cyclic_order.keys() {
        if !vertex_ids.contains(key.as_str()) {
            out.push(Violation::UnknownCyclicOrderVertex(key.clone()));
        }
    }

    if let Some(m) = desc.m().filter(|_| prime_ok && desc.n > 0) {
        match (&tree.exceptional, m > 1) {
            (Some(_), false) => out.push(Violation::UnexpectedExceptional),
            (None, true) => out.push(Violation::MissingExceptional),
            (Some(x), true) if !vertex_ids.contains(x.as_str()) => out.push(Violation::UnknownExceptional(x.clone())),
            _ => {}
        }
    }

    let signs: HashMap<&str, Sign> = tree.vertices.iter().map(|v| (v.id.as_str(), v.sign)).collect();
    for edge in &tree.edges {
        let (a, b) = (signs.get(edge.ends[0].as_str()), signs.get(edge.ends[1].as_str()));
        if let (Some(a), Some(b)) = (a, b) {
            if a == b {
                match policy {
                    SignPolicy::Strict => out.push(Violation::SignAlternation(edge.id.clone())),
                    SignPolicy::Lax => log::warn!("sign alternation violated at edge {}", edge.id),
                }
            }
        }
    }
    out
}

fn is_tree(tree: &TreeSpec) -> bool {
    if tree.vertices.is_empty() || tree.edges.len() + 1 != tree.vertices.len() {
        return false;
    }
    let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
    for edge in &tree.edges {
        adj.entry(&edge.ends[0]).or_default().push(&edge.ends[1]);
        adj.entry(&edge.ends[1]).or_default().push(&edge.ends[0]);
    }
    let start = tree.vertices[0].id.as_str();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in adj.get(v).into_iter().flatten() {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == tree.vertices.len()
}

/// Integer multiplicities over `Irr(B)`: one coordinate per non-exceptional
/// vertex (descriptor order) and one per exceptional orbit representative
/// `κ(1) < … < κ(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockCharacter {
    pub nonexceptional: Vec<i64>,
    pub exceptional: Vec<i64>,
}

impl BlockCharacter {
    pub fn zero(nonexceptional: usize, exceptional: usize) -> Self {
        BlockCharacter { nonexceptional: vec![0; nonexceptional], exceptional: vec![0; exceptional] }
    }

    pub fn is_zero_one(&self) -> bool {
        self.nonexceptional.iter().chain(&self.exceptional).all(|&c| c == 0 || c == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.nonexceptional.iter().chain(&self.exceptional).all(|&c| c == 0)
    }

    /// Number of irreducible constituents counted with multiplicity.
    pub fn constituents(&self) -> i64 {
        self.nonexceptional.iter().chain(&self.exceptional).sum()
    }

    pub fn with_exceptional(&self, exceptional: Vec<i64>) -> Self {
        BlockCharacter { nonexceptional: self.nonexceptional.clone(), exceptional }
    }
}

impl std::ops::Add for &BlockCharacter {
    type Output = BlockCharacter;

    fn add(self, rhs: &BlockCharacter) -> BlockCharacter {
        assert_eq!(self.nonexceptional.len(), rhs.nonexceptional.len(), "block character shape mismatch");
        assert_eq!(self.exceptional.len(), rhs.exceptional.len(), "block character shape mismatch");
        let zip = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        BlockCharacter {
            nonexceptional: zip(&self.nonexceptional, &rhs.nonexceptional),
            exceptional: zip(&self.exceptional, &rhs.exceptional),
        }
    }
}

/// A validated descriptor with index-based adjacency.
#[derive(Clone, Debug)]
pub struct Block {
    desc: BlockDescriptor,
    group: CyclicGroup,
    m: u64,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    ends: Vec<[usize; 2]>,
    /// Counter-clockwise incident edges per vertex.
    rotation: Vec<Vec<usize>>,
    exceptional: Option<usize>,
    /// Coordinate of each vertex in `BlockCharacter::nonexceptional`.
    coordinate: Vec<Option<usize>>,
    orbits: Option<OrbitStructure>,
}

impl Block {
    pub fn new(desc: BlockDescriptor, policy: SignPolicy) -> Result<Self, TreeError> {
        let violations = validate(&desc, policy);
        if !violations.is_empty() {
            return Err(TreeError::Invalid(violations));
        }
        let group = CyclicGroup::new(desc.p, desc.n).expect("validated");
        let m = desc.m().expect("validated");
        let vertex_index: HashMap<String, usize> =
            desc.tree.vertices.iter().enumerate().map(|(k, v)| (v.id.clone(), k)).collect();
        let edge_index: HashMap<String, usize> =
            desc.tree.edges.iter().enumerate().map(|(k, e)| (e.id.clone(), k)).collect();
        let ends = desc.tree.edges.iter().map(|e| [vertex_index[&e.ends[0]], vertex_index[&e.ends[1]]]).collect();
        let rotation = desc
            .tree
            .vertices
            .iter()
            .map(|v| desc.tree.cyclic_order[&v.id].iter().map(|e| edge_index[e]).collect())
            .collect();
        let exceptional = desc.tree.exceptional.as_ref().map(|x| vertex_index[x]);
        let mut next = 0;
        let coordinate = (0..desc.tree.vertices.len())
            .map(|v| {
                (Some(v) != exceptional).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        let orbits = (m > 1).then(|| exceptional_orbits(desc.p, desc.n, desc.e).expect("validated"));
        Ok(Block { desc, group, m, vertex_index, edge_index, ends, rotation, exceptional, coordinate, orbits })
    }

    pub fn descriptor(&self) -> &BlockDescriptor {
        &self.desc
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.desc.p
    }

    pub fn n(&self) -> u32 {
        self.desc.n
    }

    pub fn e(&self) -> u64 {
        self.desc.e
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn w(&self) -> &EndoPermParams {
        &self.desc.w
    }

    pub fn order(&self) -> u64 {
        pow(self.desc.p, self.desc.n)
    }

    pub fn orbits(&self) -> Option<&OrbitStructure> {
        self.orbits.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.desc.tree.vertices[v].id
    }

    pub fn edge_id(&self, edge: usize) -> &str {
        &self.desc.tree.edges[edge].id
    }

    pub fn vertex(&self, id: &str) -> Result<usize, TreeError> {
        self.vertex_index.get(id).copied().ok_or_else(|| TreeError::UnknownVertex(id.to_owned()))
    }

    pub fn edge(&self, id: &str) -> Result<usize, TreeError> {
        self.edge_index.get(id).copied().ok_or_else(|| TreeError::UnknownEdge(id.to_owned()))
    }

    pub fn sign(&self, v: usize) -> Sign {
        self.desc.tree.vertices[v].sign
    }

    pub fn exceptional_vertex(&self) -> Option<usize> {
        self.exceptional
    }

    pub fn is_exceptional(&self, v: usize) -> bool {
        self.exceptional == Some(v)
    }

    /// Vertex indices of the non-exceptional vertices, in coordinate order.
    pub fn nonexceptional_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.is_exceptional(v)).collect()
    }

    pub fn coordinate(&self, v: usize) -> Option<usize> {
        self.coordinate[v]
    }

    pub fn ends(&self, edge: usize) -> [usize; 2] {
        self.ends[edge]
    }

    pub fn other_end(&self, edge: usize, v: usize) -> usize {
        let [a, b] = self.ends[edge];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Incident edges of `v` in counter-clockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The counter-clockwise neighbour of `edge` around `v`.
    pub fn successor(&self, v: usize, edge: usize) -> Result<usize, TreeError> {
        let order = &self.rotation[v];
        let pos = order.iter().position(|&x| x == edge).ok_or_else(|| TreeError::NotIncident {
            vertex: self.vertex_id(v).to_owned(),
            edge: self.edge_id(edge).to_owned(),
        })?;
        Ok(order[(pos + 1) % order.len()])
    }

    /// Inverse of [`Block::successor`].
    pub fn predecessor(&self, v: usize, edge: usize) -> Result<usize, TreeError> {
        let order = &self.rotation[v];
        let pos = order.iter().position(|&x| x == edge).ok_or_else(|| TreeError::NotIncident {
            vertex: self.vertex_id(v).to_owned(),
            edge: self.edge_id(edge).to_owned(),
        })?;
        Ok(order[(pos + order.len() - 1) % order.len()])
    }

    pub fn successor_by_id(&self, vertex: &str, edge: &str) -> Result<&str, TreeError> {
        let next = self.successor(self.vertex(vertex)?, self.edge(edge)?)?;
        Ok(self.edge_id(next))
    }

    /// Vertices and edges of the unique path from `from` to `to`.
    pub fn path(&self, from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &edge in &self.rotation[v] {
                let w = self.other_end(edge, v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, edge));
                    queue.push_back(w);
                }
            }
        }
        let (mut vertices, mut edges) = (vec![to], Vec::new());
        let mut cur = to;
        while let Some((prev, edge)) = parent[cur] {
            vertices.push(prev);
            edges.push(edge);
            cur = prev;
        }
        vertices.reverse();
        edges.reverse();
        (vertices, edges)
    }

    pub fn zero_character(&self) -> BlockCharacter {
        let ne = self.vertex_count() - usize::from(self.exceptional.is_some());
        BlockCharacter::zero(ne, if self.exceptional.is_some() { self.m as usize } else { 0 })
    }

    /// `χ_Λ`, every exceptional coordinate set to 1.
    pub fn chi_lambda(&self) -> BlockCharacter {
        let mut chi = self.zero_character();
        chi.exceptional.iter_mut().for_each(|c| *c = 1);
        chi
    }

    /// The character labelling vertex `v`.
    pub fn vertex_character(&self, v: usize) -> BlockCharacter {
        match self.coordinate[v] {
            None => self.chi_lambda(),
            Some(c) => {
                let mut chi = self.zero_character();
                chi.nonexceptional[c] = 1;
                chi
            }
        }
    }

    /// `Φ_S = χ_a + χ_b` for the edge `S = a—b`.
    pub fn pim_character(&self, edge: usize) -> BlockCharacter {
        let (a, b) = self.hook_characters(edge);
        &a + &b
    }

    /// Characters of the two hooks at `edge`, in endpoint order.
    pub fn hook_characters(&self, edge: usize) -> (BlockCharacter, BlockCharacter) {
        let [a, b] = self.ends[edge];
        (self.vertex_character(a), self.vertex_character(b))
    }

    pub fn nonexceptional_label(&self, coordinate: usize) -> &str {
        let v = self.nonexceptional_vertices()[coordinate];
        self.vertex_id(v)
    }
}

pub const STAR_CENTER: &str = "chi_Lambda";

/// The star with exceptional centre and `e` leaves `chi_1, …, chi_e` joined
/// by edges `S_1, …, S_e`, the centre's cyclic order being `(S_1, …, S_e)`.
pub fn star_tree(e: u64, p: u64, n: u32, w: EndoPermParams, center_sign: Sign) -> Result<BlockDescriptor, TreeError> {
    let params_ok = e > 0
        && p > 2
        && is_prime(p)
        && n > 0
        && (p - 1).is_multiple_of(e)
        && p.checked_pow(n).is_some_and(|q| (q - 1) / e > 1);
    if !params_ok {
        return Err(TreeError::StarParameters { p, n, e });
    }
    let leaf = |k: u64| format!("chi_{k}");
    let edge = |k: u64| format!("S_{k}");
    let mut vertices = vec![VertexSpec { id: STAR_CENTER.to_owned(), sign: center_sign }];
    vertices.extend((1..=e).map(|k| VertexSpec { id: leaf(k), sign: center_sign.opposite() }));
    let edges = (1..=e).map(|k| EdgeSpec { id: edge(k), ends: [leaf(k), STAR_CENTER.to_owned()] }).collect();
    let mut cyclic_order = BTreeMap::new();
    cyclic_order.insert(STAR_CENTER.to_owned(), (1..=e).map(edge).collect());
    for k in 1..=e {
        cyclic_order.insert(leaf(k), vec![edge(k)]);
    }
    let desc = BlockDescriptor {
        p,
        n,
        e,
        tree: TreeSpec { vertices, exceptional: Some(STAR_CENTER.to_owned()), edges, cyclic_order },
        w,
    };
    let violations = validate(&desc, SignPolicy::Strict);
    if !violations.is_empty() {
        return Err(TreeError::Invalid(violations));
    }
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(e: u64, p: u64, n: u32, center: Sign) -> BlockDescriptor {
        star_tree(e, p, n, EndoPermParams::trivial(), center).unwrap()
    }

    /// `chi_1 - chi_2 - … - chi_(e+1)` with the exceptional vertex at `exc`.
    fn path_tree(e: u64, p: u64, n: u32, exc: Option<u64>, signs: &[Sign]) -> BlockDescriptor {
        let v = |k: u64| format!("v{k}");
        let s = |k: u64| format!("S{k}");
        let vertices = (1..=e + 1).map(|k| VertexSpec { id: v(k), sign: signs[(k - 1) as usize] }).collect();
        let edges = (1..=e).map(|k| EdgeSpec { id: s(k), ends: [v(k), v(k + 1)] }).collect();
        let mut cyclic_order = BTreeMap::new();
        for k in 1..=e + 1 {
            let mut inc = Vec::new();
            if k > 1 {
                inc.push(s(k - 1));
            }
            if k <= e {
                inc.push(s(k));
            }
            cyclic_order.insert(v(k), inc);
        }
        BlockDescriptor {
            p,
            n,
            e,
            tree: TreeSpec { vertices, exceptional: exc.map(v), edges, cyclic_order },
            w: EndoPermParams::trivial(),
        }
    }

    #[test]
    fn star_validates() {
        let d = star(2, 3, 2, Sign::Minus);
        assert!(validate(&d, SignPolicy::Strict).is_empty());
        assert_eq!(d.m(), Some(4));
        assert_eq!(d.tree.vertices[1].sign, Sign::Plus);
    }

    #[test]
    fn e_not_dividing() {
        let mut d = star(2, 3, 2, Sign::Minus);
        d.e = 4;
        let v = validate(&d, SignPolicy::Strict);
        assert!(v.contains(&Violation::EDoesNotDivide));
        assert!(v.iter().any(|x| x.to_string() == "e does not divide p-1"));
    }

    #[test]
    fn sign_alternation_policy() {
        use Sign::*;
        let d = path_tree(2, 5, 1, Some(2), &[Plus, Plus, Minus]);
        let strict = validate(&d, SignPolicy::Strict);
        assert_eq!(strict, vec![Violation::SignAlternation("S1".into())]);
        assert_eq!(strict[0].to_string(), "sign alternation violated at edge S1");
        assert!(validate(&d, SignPolicy::Lax).is_empty());
    }

    #[test]
    fn structural_violations() {
        use Sign::*;
        let mut d = path_tree(2, 5, 1, Some(2), &[Plus, Minus, Plus]);
        d.tree.edges[1].ends = ["v1".into(), "v2".into()];
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::NotATree));

        let mut d = path_tree(2, 5, 1, Some(2), &[Plus, Minus, Plus]);
        d.tree.cyclic_order.insert("v2".into(), vec!["S1".into()]);
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::BadCyclicOrder("v2".into())));

        let mut d = path_tree(2, 5, 1, None, &[Plus, Minus, Plus]);
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::MissingExceptional));
        d.w = EndoPermParams::new(vec![1]).unwrap();
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::WIndex(1)));

        let d = path_tree(4, 5, 1, Some(1), &[Plus, Minus, Plus, Minus, Plus]);
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::UnexpectedExceptional));

        let d = path_tree(2, 9, 1, Some(2), &[Plus, Minus, Plus]);
        assert!(validate(&d, SignPolicy::Strict).contains(&Violation::NotOddPrime(9)));
    }

    #[test]
    fn json_schema_requires_keys() {
        let d = star(2, 3, 2, Sign::Minus);
        let text = d.to_json();
        assert_eq!(BlockDescriptor::from_json(&text).unwrap(), d);
        let missing = text.replace("\"exceptional\": \"chi_Lambda\",", "");
        assert!(BlockDescriptor::from_json(&missing).is_err());
        let bad_sign = text.replacen("\"+\"", "\"plus\"", 1);
        assert!(BlockDescriptor::from_json(&bad_sign).is_err());
        let bad_w = text.replace("\"indices\": []", "\"indices\": [2, 1]");
        assert!(BlockDescriptor::from_json(&bad_w).is_err());
    }

    #[test]
    fn successor_wraps() {
        let b = Block::new(star(3, 7, 1, Sign::Minus), SignPolicy::Strict).unwrap();
        assert_eq!(b.successor_by_id("chi_1", "S_1").unwrap(), "S_1");
        assert_eq!(b.successor_by_id(STAR_CENTER, "S_3").unwrap(), "S_1");
        assert_eq!(b.successor_by_id(STAR_CENTER, "S_1").unwrap(), "S_2");
        assert!(matches!(b.successor_by_id("chi_1", "S_2"), Err(TreeError::NotIncident { .. })));
        let c = b.vertex(STAR_CENTER).unwrap();
        for &edge in b.rotation(c) {
            let mut cur = edge;
            for _ in 0..b.degree(c) {
                cur = b.successor(c, cur).unwrap();
            }
            assert_eq!(cur, edge);
            assert_eq!(b.predecessor(c, b.successor(c, edge).unwrap()).unwrap(), edge);
        }
    }

    #[test]
    fn pim_and_hooks() {
        use Sign::*;
        let b = Block::new(path_tree(2, 3, 2, Some(3), &[Plus, Minus, Plus]), SignPolicy::Strict).unwrap();
        assert_eq!(b.m(), 4);
        assert_eq!(b.pim_character(0), BlockCharacter { nonexceptional: vec![1, 1], exceptional: vec![0; 4] });
        assert_eq!(b.pim_character(1), BlockCharacter { nonexceptional: vec![0, 1], exceptional: vec![1; 4] });
        let (x, y) = b.hook_characters(1);
        assert_eq!(x.nonexceptional, vec![0, 1]);
        assert_eq!(y, b.chi_lambda());

        let kd = Block::new(star(1, 3, 2, Minus), SignPolicy::Strict).unwrap();
        let pim = kd.pim_character(0);
        assert_eq!(pim.constituents(), 9);
        assert_eq!(kd.hook_characters(0).0.nonexceptional, vec![1]);
    }

    #[test]
    fn pim_sum_counts_degrees() {
        let b = Block::new(star(4, 5, 2, Sign::Minus), SignPolicy::Strict).unwrap();
        let total = (0..b.edge_count()).fold(b.zero_character(), |acc, edge| &acc + &b.pim_character(edge));
        for (k, v) in b.nonexceptional_vertices().into_iter().enumerate() {
            assert_eq!(total.nonexceptional[k], b.degree(v) as i64);
        }
        let c = b.exceptional_vertex().unwrap();
        assert!(total.exceptional.iter().all(|&x| x == b.degree(c) as i64));
    }

    #[test]
    fn star_gates() {
        assert!(star_tree(1, 3, 1, EndoPermParams::trivial(), Sign::Minus).is_ok());
        assert!(star_tree(2, 3, 1, EndoPermParams::trivial(), Sign::Minus).is_err());
        assert!(star_tree(6, 7, 1, EndoPermParams::trivial(), Sign::Minus).is_err());
        assert!(star_tree(4, 7, 1, EndoPermParams::trivial(), Sign::Minus).is_err());
    }

    #[test]
    fn unique_paths() {
        use Sign::*;
        let b = Block::new(path_tree(4, 5, 2, Some(3), &[Plus, Minus, Plus, Minus, Plus]), SignPolicy::Strict).unwrap();
        let (vs, es) = b.path(0, 2);
        assert_eq!(vs, vec![0, 1, 2]);
        assert_eq!(es, vec![0, 1]);
        let (vs, es) = b.path(4, 2);
        assert_eq!(vs, vec![4, 3, 2]);
        assert_eq!(es, vec![3, 2]);
        assert_eq!(b.path(2, 2), (vec![2], vec![]));
    }
}
