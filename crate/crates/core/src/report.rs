//! Result tables for enumeration output, in JSON and CSV.

use serde::{Deserialize, Serialize};

use crate::characters::{self, CharacterError};
use crate::classification::{self, ClassificationError, PathDescriptor};
use crate::tree::{Block, BlockCharacter};

/// A character written as the labels of its constituents: vertex ids for the
/// non-exceptional part and orbit representatives `κ(r)` for the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterLabels {
    pub nonexceptional: Vec<String>,
    pub exceptional: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathLabels {
    pub spine_vertices: Vec<String>,
    pub spine_edges: Vec<String>,
    pub extra_edges: Vec<String>,
    pub direction: Option<(i8, i8)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    TrivialSource,
    Projective,
    Hook,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub kind: RowKind,
    #[serde(rename = "type")]
    pub type_tag: Option<u8>,
    pub case: Option<String>,
    pub multiplicity: Option<u64>,
    pub conditional: bool,
    pub path: PathLabels,
    pub character: CharacterLabels,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRows {
    /// `i` for the vertex `D_i`; `0` lists the projective modules.
    pub vertex: u32,
    pub rows: Vec<ResultRow>,
    /// Set when the rows are partial because of an enumeration failure.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub m: u64,
    pub vertices: Vec<VertexRows>,
}

impl ResultTable {
    pub fn is_consistent(&self) -> bool {
        self.vertices.iter().all(|v| v.error.is_none())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// One line per row; list-valued cells are joined with `;`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "vertex",
            "kind",
            "type",
            "case",
            "multiplicity",
            "conditional",
            "spine_vertices",
            "spine_edges",
            "extra_edges",
            "direction",
            "nonexceptional",
            "exceptional",
        ])?;
        let opt = |x: Option<String>| x.unwrap_or_default();
        for group in &self.vertices {
            for row in &group.rows {
                let kind = serde_json::to_value(row.kind).expect("kind serializes");
                let exceptional: Vec<String> = row.character.exceptional.iter().map(u64::to_string).collect();
                w.write_record([
                    group.vertex.to_string(),
                    kind.as_str().unwrap_or_default().to_owned(),
                    opt(row.type_tag.map(|t| t.to_string())),
                    opt(row.case.clone()),
                    opt(row.multiplicity.map(|m| m.to_string())),
                    row.conditional.to_string(),
                    row.path.spine_vertices.join(";"),
                    row.path.spine_edges.join(";"),
                    row.path.extra_edges.join(";"),
                    opt(row.path.direction.map(|(a, b)| format!("{a};{b}"))),
                    row.character.nonexceptional.join(";"),
                    exceptional.join(";"),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn character_labels(block: &Block, chi: &BlockCharacter) -> CharacterLabels {
    let nonexceptional = block
        .nonexceptional_vertices()
        .into_iter()
        .zip(&chi.nonexceptional)
        .filter(|(_, &c)| c != 0)
        .map(|(v, _)| block.vertex_id(v).to_owned())
        .collect();
    let exceptional = match block.orbits() {
        Some(orbits) => {
            orbits.representatives.iter().zip(&chi.exceptional).filter(|(_, &c)| c != 0).map(|(&k, _)| k).collect()
        }
        None => Vec::new(),
    };
    CharacterLabels { nonexceptional, exceptional }
}

fn path_labels(block: &Block, path: &PathDescriptor) -> PathLabels {
    let vertices = |xs: &[usize]| xs.iter().map(|&v| block.vertex_id(v).to_owned()).collect();
    let edges = |xs: &[usize]| xs.iter().map(|&e| block.edge_id(e).to_owned()).collect();
    PathLabels {
        spine_vertices: vertices(&path.spine_vertices),
        spine_edges: edges(&path.spine_edges),
        extra_edges: edges(&path.extra_edges),
        direction: path.direction,
    }
}

fn single_edge_path(block: &Block, edge: usize, vertices: Vec<usize>) -> PathLabels {
    PathLabels {
        spine_vertices: vertices.into_iter().map(|v| block.vertex_id(v).to_owned()).collect(),
        spine_edges: vec![block.edge_id(edge).to_owned()],
        extra_edges: Vec::new(),
        direction: None,
    }
}

fn trivial_source_row(block: &Block, i: u32, path: &PathDescriptor) -> Result<ResultRow, CharacterError> {
    let chi = characters::character_of(block, i, path)?;
    Ok(ResultRow {
        kind: RowKind::TrivialSource,
        type_tag: Some(path.type_tag),
        case: path.case().map(|c| c.to_string()),
        multiplicity: path.multiplicity(),
        conditional: false,
        path: path_labels(block, path),
        character: character_labels(block, &chi),
    })
}

fn projective_rows(block: &Block) -> Vec<ResultRow> {
    classification::enumerate_projective(block)
        .into_iter()
        .map(|pim| ResultRow {
            kind: RowKind::Projective,
            type_tag: None,
            case: None,
            multiplicity: None,
            conditional: false,
            path: single_edge_path(block, pim.edge, block.ends(pim.edge).to_vec()),
            character: character_labels(block, &pim.character),
        })
        .collect()
}

/// Rows for vertex `D_i`; `i = 0` gives the projective modules.
pub fn vertex_rows(block: &Block, i: u32) -> VertexRows {
    if i == 0 {
        return VertexRows { vertex: 0, rows: projective_rows(block), error: None };
    }
    if block.m() == 1 {
        return match classification::m1_enumerate(block) {
            Ok(found) if i == block.n() => VertexRows {
                vertex: i,
                rows: found
                    .hooks
                    .iter()
                    .map(|h| ResultRow {
                        kind: RowKind::Hook,
                        type_tag: None,
                        case: None,
                        multiplicity: None,
                        conditional: h.conditional,
                        path: single_edge_path(block, h.edge, vec![h.vertex]),
                        character: character_labels(block, &h.character),
                    })
                    .collect(),
                error: None,
            },
            Ok(_) => {
                VertexRows { vertex: i, rows: Vec::new(), error: Some(format!("vertex index {i} is outside [0, 1]")) }
            }
            Err(err) => VertexRows { vertex: i, rows: Vec::new(), error: Some(err.to_string()) },
        };
    }
    let (paths, error) = match classification::enumerate_trivial_source(block, i) {
        Ok(paths) => (paths, None),
        Err(ClassificationError::Count { found, expected, .. }) => {
            let msg = format!("found {} trivial source modules, expected e = {expected}", found.len());
            (found, Some(msg))
        }
        Err(err) => (Vec::new(), Some(err.to_string())),
    };
    let mut rows = Vec::with_capacity(paths.len());
    let mut error = error;
    for path in &paths {
        match trivial_source_row(block, i, path) {
            Ok(row) => rows.push(row),
            Err(err) => error = Some(err.to_string()),
        }
    }
    VertexRows { vertex: i, rows, error }
}

/// Vertex indices listed by `--all`: `1..=n`, plus the projectives when `m = 1`.
pub fn all_vertices(block: &Block) -> Vec<u32> {
    let start = if block.m() == 1 { 0 } else { 1 };
    (start..=block.n()).collect()
}

pub fn build_table(block: &Block, vertices: &[u32]) -> ResultTable {
    let d = block.descriptor();
    ResultTable {
        p: d.p,
        n: d.n,
        e: d.e,
        m: block.m(),
        vertices: vertices.iter().map(|&i| vertex_rows(block, i)).collect(),
    }
}
