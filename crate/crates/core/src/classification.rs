//! Paths on the Brauer tree and enumeration of trivial source modules.
//!
//! Candidates are generated shape by shape and then filtered by the sign,
//! parity and divisibility conditions of the classification. The number of
//! survivors at each vertex `D_i` must be `e`; anything else is reported as a
//! [`ClassificationError::Count`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{self, CharacterError};
use crate::local;
use crate::tree::{Block, BlockCharacter};

#[derive(Debug, Error)]
pub enum ClassificationError {
    #[error("vertex index {i} is outside [1, {n}]")]
    VertexIndex { i: u32, n: u32 },
    #[error("the classification needs m > 1; use the m = 1 enumeration")]
    NeedsExceptional,
    #[error("m1 enumeration needs m = 1, got m = {0}")]
    NotM1(u64),
    #[error("found {} trivial source modules with vertex D_{i}, expected e = {expected}", .found.len())]
    Count { i: u32, expected: u64, found: Vec<PathDescriptor> },
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Which sub-case of the classification admitted a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "a(i)")]
    AI,
    #[serde(rename = "a(ii)")]
    AII,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "hook")]
    Hook,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::AI => "a(i)",
            CaseTag::AII => "a(ii)",
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
            CaseTag::Hook => "hook",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Admission {
    pub case: CaseTag,
    pub multiplicity: u64,
}

/// A typed path on the tree.
///
/// For types 2, 4, 5 and 6 the spine runs `x_0, …, x_l` towards the
/// exceptional vertex and `spine_edges` holds the `l + 1` edges from `x_0` to
/// `Λ`. Types 3 and 7 have an empty spine. Type 1 is a hook: the spine is the
/// single vertex carrying the hook and the edge it hangs on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathDescriptor {
    pub type_tag: u8,
    pub spine_vertices: Vec<usize>,
    pub spine_edges: Vec<usize>,
    pub extra_edges: Vec<usize>,
    pub direction: Option<(i8, i8)>,
    pub admission: Option<Admission>,
}

impl PathDescriptor {
    fn shape(type_tag: u8, spine_vertices: Vec<usize>, spine_edges: Vec<usize>, extra_edges: Vec<usize>) -> Self {
        let direction = match type_tag {
            2 => Some((1, -1)),
            4 => Some((1, 1)),
            5 => Some((-1, -1)),
            3 | 6 | 7 => Some((-1, 1)),
            _ => None,
        };
        PathDescriptor { type_tag, spine_vertices, spine_edges, extra_edges, direction, admission: None }
    }

    /// `l`, the index of the last spine vertex.
    pub fn l(&self) -> Option<usize> {
        self.spine_vertices.len().checked_sub(1)
    }

    pub fn multiplicity(&self) -> Option<u64> {
        self.admission.map(|a| a.multiplicity)
    }

    pub fn case(&self) -> Option<CaseTag> {
        self.admission.map(|a| a.case)
    }
}

fn check_vertex(block: &Block, i: u32) -> Result<(), ClassificationError> {
    if i == 0 || i > block.n() {
        return Err(ClassificationError::VertexIndex { i, n: block.n() });
    }
    Ok(())
}

/// Every syntactic path shape with vertex `D_i`, before any admission test.
pub fn candidate_paths(block: &Block, i: u32) -> Result<Vec<PathDescriptor>, ClassificationError> {
    check_vertex(block, i)?;
    let lambda = block.exceptional_vertex().ok_or(ClassificationError::NeedsExceptional)?;
    let mut out = Vec::new();

    if block.w().is_trivial() && i == block.n() {
        for edge in 0..block.edge_count() {
            for v in block.ends(edge) {
                if block.sign(v).is_positive() {
                    out.push(PathDescriptor::shape(1, vec![v], vec![edge], vec![]));
                }
            }
        }
    }

    for x0 in block.nonexceptional_vertices() {
        let (mut vertices, edges) = block.path(x0, lambda);
        vertices.pop();
        let first = edges[0];
        let spine = |extra: Vec<usize>, t: u8| PathDescriptor::shape(t, vertices.clone(), edges.clone(), extra);
        if block.degree(x0) == 1 {
            out.push(spine(vec![], 2));
            continue;
        }
        out.push(spine(vec![block.successor(x0, first).expect("incident")], 4));
        out.push(spine(vec![block.predecessor(x0, first).expect("incident")], 5));
        for &e1 in block.rotation(x0) {
            let es = block.successor(x0, e1).expect("incident");
            if e1 != first && es != first {
                out.push(spine(vec![e1, es], 6));
            }
        }
    }

    if block.degree(lambda) == 1 {
        out.push(PathDescriptor::shape(3, vec![], vec![], vec![block.rotation(lambda)[0]]));
    } else {
        for &e1 in block.rotation(lambda) {
            let e2 = block.successor(lambda, e1).expect("incident");
            out.push(PathDescriptor::shape(7, vec![], vec![], vec![e1, e2]));
        }
    }
    Ok(out)
}

/// The inclusive range of multiplicities allowed for a path type.
///
/// Type 3 admits `μ = 1` here: that module is the simple module on the
/// single edge at a leaf `Λ`, which is trivial source when `e | ℓ_i p^(n-i)`
/// with quotient 1.
fn multiplicity_range(type_tag: u8, m: u64) -> (u64, u64) {
    match type_tag {
        3 | 7 => (1, m - 1),
        _ => (2, m),
    }
}

/// The case and multiplicity under which `path` is a trivial source module
/// with vertex `D_i`, or `None`.
pub fn admissible(block: &Block, i: u32, path: &PathDescriptor) -> Result<Option<Admission>, ClassificationError> {
    check_vertex(block, i)?;
    let lambda = block.exceptional_vertex().ok_or(ClassificationError::NeedsExceptional)?;
    let (e, m) = (block.e(), block.m());
    let ell = local::cap_dim(block.w(), block.group(), i).map_err(CharacterError::from)?;
    let big_l = ell * block.group().index_of(i);
    let (_, d0) = characters::t_and_d0(block.w(), block.group(), i)?;
    assert_eq!(ell % e == 0, big_l.is_multiple_of(e), "e | l_i must match e | l_i p^(n-i)");

    if path.type_tag == 1 {
        if !(block.w().is_trivial() && i == block.n() && e > 1) {
            return Ok(None);
        }
        let v = path.spine_vertices[0];
        let multiplicity = if v == lambda {
            m
        } else if m == 1 {
            0
        } else {
            u64::from(block.ends(path.spine_edges[0]).contains(&lambda))
        };
        return Ok(Some(Admission { case: CaseTag::Hook, multiplicity }));
    }

    if e == 1 {
        let chi1 = block.nonexceptional_vertices()[0];
        let positive = block.sign(chi1).is_positive();
        let wanted = if positive == (d0 == 1) { 2 } else { 3 };
        if path.type_tag != wanted {
            return Ok(None);
        }
        let (case, multiplicity) = if positive { (CaseTag::AI, big_l) } else { (CaseTag::AII, block.order() - big_l) };
        return Ok(Some(Admission { case, multiplicity }));
    }

    let on_lambda = matches!(path.type_tag, 3 | 7);
    let anchor = if on_lambda { lambda } else { path.spine_vertices[0] };
    let odd_l = path.l().is_some_and(|l| l % 2 == 1);
    let admission = if block.sign(anchor).is_positive() {
        if !(big_l - 1).is_multiple_of(e) {
            return Ok(None);
        }
        let q = (big_l - 1) / e;
        match (on_lambda, odd_l) {
            (true, _) => m.checked_sub(q).map(|mu| (CaseTag::I, mu)),
            (false, true) => (m + 1).checked_sub(q).map(|mu| (CaseTag::I, mu)),
            (false, false) => Some((CaseTag::II, q + 1)),
        }
    } else {
        if ell % e != 0 {
            return Ok(None);
        }
        let q = big_l / e;
        match (on_lambda, odd_l) {
            (true, _) => Some((CaseTag::II, q)),
            (false, true) => Some((CaseTag::III, q + 1)),
            (false, false) => (m + 1).checked_sub(q).map(|mu| (CaseTag::IV, mu)),
        }
    };
    let (lo, hi) = multiplicity_range(path.type_tag, m);
    Ok(admission
        .filter(|&(_, mu)| (lo..=hi).contains(&mu))
        .map(|(case, multiplicity)| Admission { case, multiplicity }))
}

/// The trivial source modules with vertex `D_i`, each with its admission.
pub fn enumerate_trivial_source(block: &Block, i: u32) -> Result<Vec<PathDescriptor>, ClassificationError> {
    let mut found = Vec::new();
    for mut path in candidate_paths(block, i)? {
        if let Some(admission) = admissible(block, i, &path)? {
            path.admission = Some(admission);
            found.push(path);
        }
    }
    if found.len() as u64 != block.e() {
        return Err(ClassificationError::Count { i, expected: block.e(), found });
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveModule {
    pub edge: usize,
    pub character: BlockCharacter,
}

/// One projective indecomposable module per edge.
pub fn enumerate_projective(block: &Block) -> Vec<ProjectiveModule> {
    (0..block.edge_count()).map(|edge| ProjectiveModule { edge, character: block.pim_character(edge) }).collect()
}

/// A hook that is trivial source exactly when its Green correspondent is
/// simple, which the descriptor cannot decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionalHook {
    pub edge: usize,
    pub vertex: usize,
    pub character: BlockCharacter,
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M1Enumeration {
    pub projective: Vec<ProjectiveModule>,
    pub hooks: Vec<ConditionalHook>,
}

/// Trivial source modules of a block with `m = 1`: the PIMs and the hooks.
pub fn m1_enumerate(block: &Block) -> Result<M1Enumeration, ClassificationError> {
    if block.m() != 1 {
        return Err(ClassificationError::NotM1(block.m()));
    }
    let hooks = (0..block.edge_count())
        .flat_map(|edge| {
            block.ends(edge).map(|vertex| ConditionalHook {
                edge,
                vertex,
                character: block.vertex_character(vertex),
                conditional: true,
            })
        })
        .collect();
    Ok(M1Enumeration { projective: enumerate_projective(block), hooks })
}
