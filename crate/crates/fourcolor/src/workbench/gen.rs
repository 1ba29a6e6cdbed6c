//! Seeded random triangulation generators.
//!
//! The stacked mode starts from K4 and repeatedly inserts a vertex into a
//! uniformly random internal face; it yields Apollonian-type triangulations
//! rich in separating triangles and degree-3 vertices. The flipped mode runs
//! random diagonal flips afterwards, which destroys most of that structure
//! and drives instances toward the degree-4/5 ring cases.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{RotationGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("triangulation generator needs n >= 4, got {0}")]
    TooSmall(u32),
    #[error("unknown generator mode {0:?}; known: stacked, flipped")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Stacked,
    Flipped,
}

impl FromStr for GenMode {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "stacked" => Ok(GenMode::Stacked),
            "flipped" => Ok(GenMode::Flipped),
            other => Err(GenError::UnknownMode(other.to_string())),
        }
    }
}

impl std::fmt::Display for GenMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenMode::Stacked => write!(f, "stacked"),
            GenMode::Flipped => write!(f, "flipped"),
        }
    }
}

/// Random stacked (Apollonian) triangulation: V = n, E = 3n - 6, every face
/// a triangle. Deterministic per (n, seed).
pub fn gen_random_triangulation(n: u32, seed: u64) -> Result<RotationGraph, GenError> {
    gen_with_mode(n, seed, GenMode::Stacked)
}

pub fn gen_with_mode(n: u32, seed: u64, mode: GenMode) -> Result<RotationGraph, GenError> {
    if n < 4 {
        return Err(GenError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // faces[0] is the outer face; stacking and flipping never touch it
    let mut faces: Vec<[VertexId; 3]> = vec![[1, 3, 2], [0, 1, 2], [0, 2, 3], [0, 3, 1]];
    for v in 4..n {
        let idx = rng.gen_range(1..faces.len());
        let [a, b, c] = faces[idx];
        faces[idx] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    if mode == GenMode::Flipped {
        flip_walk(&mut faces, n, &mut rng);
    }
    let faces: Vec<Vec<VertexId>> = faces.into_iter().map(|f| f.to_vec()).collect();
    Ok(RotationGraph::from_oriented_faces(n as usize, &faces).expect("generated face structure"))
}

/// Random diagonal flips (12 attempts per edge). A flip replaces the shared
/// edge of two triangles by the opposite diagonal when that diagonal is not
/// already an edge. Degree-3 vertices dissolve once their link edges flip,
/// so enough attempts push instances away from the stacked shape.
fn flip_walk(faces: &mut [[VertexId; 3]], n: u32, rng: &mut ChaCha8Rng) {
    let norm = |u: VertexId, w: VertexId| (u.min(w), u.max(w));
    let mut edge_faces: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    let mut adjacency: HashSet<(VertexId, VertexId)> = HashSet::new();
    for (idx, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let e = norm(f[k], f[(k + 1) % 3]);
            edge_faces.entry(e).or_default().push(idx);
            adjacency.insert(e);
        }
    }
    let mut edges: Vec<(VertexId, VertexId)> = adjacency.iter().copied().collect();
    edges.sort_unstable();

    let dart_third = |f: &[VertexId; 3], u: VertexId, w: VertexId| -> Option<VertexId> {
        for k in 0..3 {
            if f[k] == u && f[(k + 1) % 3] == w {
                return Some(f[(k + 2) % 3]);
            }
        }
        None
    };

    let attempts = 12 * edges.len();
    let _ = n;
    for _ in 0..attempts {
        let pick = rng.gen_range(0..edges.len());
        let (u, w) = edges[pick];
        let incident = &edge_faces[&(u, w)];
        debug_assert_eq!(incident.len(), 2);
        let (fa, fb) = (incident[0], incident[1]);
        if fa == 0 || fb == 0 {
            continue; // keep the outer face fixed
        }
        // orient: fa holds dart u->w, fb holds w->u
        let (f1, f2, x, y) = if let Some(x) = dart_third(&faces[fa], u, w) {
            (fa, fb, x, dart_third(&faces[fb], w, u).expect("twin dart"))
        } else {
            let x = dart_third(&faces[fb], u, w).expect("some side holds the dart");
            (fb, fa, x, dart_third(&faces[fa], w, u).expect("twin dart"))
        };
        if x == y || adjacency.contains(&norm(x, y)) {
            continue;
        }
        // replace faces (u,w,x),(w,u,y) by (u,y,x),(w,x,y)
        faces[f1] = [u, y, x];
        faces[f2] = [w, x, y];
        adjacency.remove(&(u, w));
        adjacency.insert(norm(x, y));
        edges[pick] = norm(x, y);
        edge_faces.remove(&(u, w));
        edge_faces.insert(norm(x, y), vec![f1, f2]);
        for (e, faces_of) in [
            (norm(w, x), (f1, f2)),
            (norm(u, y), (f2, f1)),
        ] {
            // w-x moves from f1 to f2; u-y moves from f2 to f1
            let entry = edge_faces.get_mut(&e).expect("boundary edge");
            for slot in entry.iter_mut() {
                if *slot == faces_of.0 {
                    *slot = faces_of.1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_is_k4() {
        let g = gen_random_triangulation(4, 0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_maximal());
    }

    #[test]
    fn n100_seed7_is_a_triangulation() {
        let g = gen_random_triangulation(100, 7).unwrap();
        assert_eq!(g.vertex_count(), 100);
        assert_eq!(g.edge_count(), 294);
        assert!(g.is_maximal());
    }

    #[test]
    fn generator_is_deterministic() {
        for mode in [GenMode::Stacked, GenMode::Flipped] {
            let a = gen_with_mode(60, 42, mode).unwrap();
            let b = gen_with_mode(60, 42, mode).unwrap();
            let ra: Vec<_> = a.vertices().map(|v| a.rotation(v).to_vec()).collect();
            let rb: Vec<_> = b.vertices().map(|v| b.rotation(v).to_vec()).collect();
            assert_eq!(ra, rb);
        }
    }

    #[test]
    fn flip_walk_preserves_triangulation() {
        for seed in 0..5 {
            let g = gen_with_mode(50, seed, GenMode::Flipped).unwrap();
            assert_eq!(g.vertex_count(), 50);
            assert_eq!(g.edge_count(), 3 * 50 - 6);
            assert!(g.is_maximal());
        }
    }

    #[test]
    fn flip_walk_diversifies_toward_ring_cases() {
        // stacked graphs peel entirely through degree-3 removals; flipped
        // ones must reach the degree-4/5 ring machinery during recursion
        use crate::colorer::{four_color, Budget};
        let mut stacked_ring_events = 0u64;
        let mut flipped_ring_events = 0u64;
        let mut stacked_deg3 = 0usize;
        let mut flipped_deg3 = 0usize;
        for seed in 0..6 {
            let s = gen_with_mode(40, seed, GenMode::Stacked).unwrap();
            let f = gen_with_mode(40, seed, GenMode::Flipped).unwrap();
            stacked_deg3 += s.vertices().filter(|&v| s.degree(v) == 3).count();
            flipped_deg3 += f.vertices().filter(|&v| f.degree(v) == 3).count();
            let (_, t) = four_color(&f, &Budget::default());
            flipped_ring_events += t.counts().ring_direct + t.counts().attempts_direct;
            let (_, t) = four_color(&s, &Budget::default());
            stacked_ring_events += t.counts().ring_direct + t.counts().attempts_direct;
        }
        assert!(flipped_deg3 < stacked_deg3);
        assert_eq!(stacked_ring_events, 0);
        assert!(flipped_ring_events > 0);
    }

    #[test]
    fn too_small_is_an_error() {
        assert!(matches!(
            gen_random_triangulation(3, 0),
            Err(GenError::TooSmall(3))
        ));
    }
}
