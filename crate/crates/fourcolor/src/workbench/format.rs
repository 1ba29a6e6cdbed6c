//! Instance and coloring file formats.
//!
//! Two instance formats: a DIMACS-style edge list (`p <V> <E>` header, one
//! `e u w` line per edge, 1-indexed) and a rotation-system JSON document
//! (`{"n": .., "rotations": [[..], ..]}`, 0-indexed), which is the
//! authoritative carrier of embeddings. Edge lists describe abstract graphs
//! and are embedded by exhaustive search, capped at ten vertices.
//!
//! Disconnected files are accepted and split here; the plane-graph layer
//! itself requires connectivity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorer::Coloring;
use crate::graph::{GraphError, RotationGraph, VertexId};
use crate::workbench::embed::embed_abstract;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("edge list declares {declared} edges but carries {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("edge-list input has {0} vertices; embedding search is capped at 10 — supply a rotation-system file or use the generators")]
    EmbeddingTooLarge(usize),
    #[error("edge list admits no plane embedding")]
    NoPlaneEmbedding,
    #[error("invalid rotation system: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance file is empty")]
    Empty,
    #[error("coloring file: {0}")]
    Coloring(String),
}

/// Rotation-system instance document. `rotations[v]` lists the neighbors of
/// vertex `v` in counter-clockwise order; ids are `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationJsonFile {
    pub n: usize,
    pub rotations: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

/// One connected component of a parsed instance. `original_ids[local]` is
/// the vertex id the component vertex carried in the file.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: RotationGraph,
    pub original_ids: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub components: Vec<Component>,
    pub n_total: usize,
    pub seed: Option<u64>,
    pub generator: Option<String>,
}

impl ParsedInstance {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// The single component of a connected instance.
    pub fn sole_graph(&self) -> Option<&RotationGraph> {
        match self.components.as_slice() {
            [only] if only.original_ids.len() == self.n_total => Some(&only.graph),
            _ => None,
        }
    }
}

/// Parses either format, sniffing on the first non-blank byte.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, FormatError> {
    let head = text.trim_start();
    if head.is_empty() {
        return Err(FormatError::Empty);
    }
    if head.starts_with('{') {
        parse_rotation_json(text)
    } else {
        parse_edge_list(text)
    }
}

fn parse_rotation_json(text: &str) -> Result<ParsedInstance, FormatError> {
    let file: RotationJsonFile = serde_json::from_str(text)?;
    if file.rotations.len() != file.n {
        return Err(FormatError::Syntax {
            line: 1,
            msg: format!(
                "header n = {} but {} rotations given",
                file.n,
                file.rotations.len()
            ),
        });
    }
    for (v, rot) in file.rotations.iter().enumerate() {
        for &w in rot {
            if w as usize >= file.n {
                return Err(FormatError::Syntax {
                    line: 1,
                    msg: format!("rotation of {v} names vertex {w}, out of range 0..{}", file.n),
                });
            }
        }
    }
    let components = split_components(&file.rotations)
        .into_iter()
        .map(|(rotations, original_ids)| {
            Ok(Component {
                graph: RotationGraph::build(rotations)?,
                original_ids,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(ParsedInstance {
        components,
        n_total: file.n,
        seed: file.seed,
        generator: file.generator,
    })
}

fn parse_edge_list(text: &str) -> Result<ParsedInstance, FormatError> {
    let mut n: Option<usize> = None;
    let mut declared_edges = 0usize;
    let mut adjacency: Vec<Vec<VertexId>> = Vec::new();
    let mut found = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(FormatError::Syntax {
                        line,
                        msg: "duplicate 'p' header".into(),
                    });
                }
                let v: usize = next_number(&mut tokens, line, "vertex count")?;
                let e: usize = next_number(&mut tokens, line, "edge count")?;
                if v == 0 {
                    return Err(FormatError::Syntax {
                        line,
                        msg: "vertex count must be positive".into(),
                    });
                }
                n = Some(v);
                declared_edges = e;
                adjacency = vec![Vec::new(); v];
            }
            Some("e") => {
                let Some(v) = n else {
                    return Err(FormatError::Syntax {
                        line,
                        msg: "edge before 'p <V> <E>' header".into(),
                    });
                };
                let a: usize = next_number(&mut tokens, line, "edge endpoint")?;
                let b: usize = next_number(&mut tokens, line, "edge endpoint")?;
                if a == 0 || b == 0 || a > v || b > v {
                    return Err(FormatError::Syntax {
                        line,
                        msg: format!("endpoint out of range 1..={v}"),
                    });
                }
                if a == b {
                    return Err(FormatError::Syntax {
                        line,
                        msg: "self-loops are not allowed".into(),
                    });
                }
                let (a, b) = ((a - 1) as VertexId, (b - 1) as VertexId);
                if adjacency[a as usize].contains(&b) {
                    return Err(FormatError::Syntax {
                        line,
                        msg: format!("duplicate edge {}-{}", a + 1, b + 1),
                    });
                }
                adjacency[a as usize].push(b);
                adjacency[b as usize].push(a);
                found += 1;
            }
            Some(other) => {
                return Err(FormatError::Syntax {
                    line,
                    msg: format!("unknown record {other:?} (expected 'p' or 'e')"),
                });
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    let Some(n) = n else {
        return Err(FormatError::Syntax {
            line: 1,
            msg: "missing 'p <V> <E>' header".into(),
        });
    };
    if found != declared_edges {
        return Err(FormatError::EdgeCountMismatch {
            declared: declared_edges,
            found,
        });
    }
    if n > 10 {
        return Err(FormatError::EmbeddingTooLarge(n));
    }
    let components = split_components(&adjacency)
        .into_iter()
        .map(|(component_adj, original_ids)| {
            let graph = embed_abstract(&component_adj).ok_or(FormatError::NoPlaneEmbedding)?;
            Ok(Component {
                graph,
                original_ids,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(ParsedInstance {
        components,
        n_total: n,
        seed: None,
        generator: None,
    })
}

fn next_number<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<usize, FormatError> {
    tokens
        .next()
        .ok_or_else(|| FormatError::Syntax {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| FormatError::Syntax {
            line,
            msg: format!("{what} is not a number"),
        })
}

/// Splits a raw neighbor structure into connected components with local
/// contiguous ids, preserving neighbor order.
fn split_components(adjacency: &[Vec<VertexId>]) -> Vec<(Vec<Vec<VertexId>>, Vec<VertexId>)> {
    let n = adjacency.len();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start as VertexId];
        comp[start] = id;
        let mut stack = vec![start as VertexId];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v as usize] {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
        .into_iter()
        .map(|members| {
            let mut local = vec![0 as VertexId; n];
            for (i, &v) in members.iter().enumerate() {
                local[v as usize] = i as VertexId;
            }
            let rotations: Vec<Vec<VertexId>> = members
                .iter()
                .map(|&v| {
                    adjacency[v as usize]
                        .iter()
                        .map(|&w| local[w as usize])
                        .collect()
                })
                .collect();
            (rotations, members)
        })
        .collect()
}

/// Densely renumbers a possibly hole-carrying graph for emission.
fn dense_rotations(g: &RotationGraph) -> (usize, Vec<Vec<VertexId>>) {
    let mut local = vec![0 as VertexId; g.slot_count()];
    let verts: Vec<VertexId> = g.vertices().collect();
    for (i, &v) in verts.iter().enumerate() {
        local[v as usize] = i as VertexId;
    }
    let rotations = verts
        .iter()
        .map(|&v| g.rotation(v).iter().map(|&w| local[w as usize]).collect())
        .collect();
    (verts.len(), rotations)
}

/// Canonical rotation-system emission (compact JSON, one trailing newline).
pub fn emit_rotation_json(
    g: &RotationGraph,
    seed: Option<u64>,
    generator: Option<&str>,
) -> String {
    let (n, rotations) = dense_rotations(g);
    let file = RotationJsonFile {
        n,
        rotations,
        seed,
        generator: generator.map(|s| s.to_string()),
    };
    let mut s = serde_json::to_string(&file).expect("plain data serializes");
    s.push('\n');
    s
}

/// Canonical bytes for digests: the instance alone, no provenance fields.
pub fn canonical_instance_json(g: &RotationGraph) -> String {
    emit_rotation_json(g, None, None)
}

/// Canonical edge-list emission: sorted `e u w` lines, 1-indexed.
pub fn emit_edge_list(g: &RotationGraph) -> String {
    let (n, rotations) = dense_rotations(g);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, rot) in rotations.iter().enumerate() {
        for &w in rot {
            if (u as VertexId) < w {
                edges.push((u as VertexId, w));
            }
        }
    }
    edges.sort_unstable();
    let mut out = format!("p {} {}\n", n, edges.len());
    for (u, w) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, w + 1));
    }
    out
}

/// Coloring document: `colors[v]` is the color (1..=5) of file vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJsonFile {
    pub n: usize,
    pub colors: Vec<u8>,
}

pub fn emit_coloring_json(n_total: usize, coloring: &Coloring) -> Result<String, FormatError> {
    let colors = (0..n_total as VertexId)
        .map(|v| {
            coloring
                .get(v)
                .ok_or_else(|| FormatError::Coloring(format!("vertex {v} is uncolored")))
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let mut s = serde_json::to_string(&ColoringJsonFile { n: n_total, colors })
        .expect("plain data serializes");
    s.push('\n');
    Ok(s)
}

pub fn parse_coloring_json(text: &str) -> Result<ColoringJsonFile, FormatError> {
    let file: ColoringJsonFile = serde_json::from_str(text)?;
    if file.colors.len() != file.n {
        return Err(FormatError::Coloring(format!(
            "header n = {} but {} colors given",
            file.n,
            file.colors.len()
        )));
    }
    if let Some(c) = file.colors.iter().find(|&&c| !(1..=5).contains(&c)) {
        return Err(FormatError::Coloring(format!(
            "color {c} outside 1..=5"
        )));
    }
    Ok(file)
}
