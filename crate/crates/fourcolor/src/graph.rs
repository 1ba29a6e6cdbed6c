//! Plane graphs as rotation systems.
//!
//! A [`RotationGraph`] stores, for every vertex, the cyclic counter-clockwise
//! order of its neighbors. Faces are recovered by dart tracing: the dart
//! following `(u, w)` is `(w, x)` where `x` is the predecessor of `u` in the
//! rotation at `w`. Every constructor validates simplicity, symmetry,
//! connectivity and the Euler relation `V - E + F = 2`, so a value of this
//! type is always a plane embedding of a connected simple graph.
//!
//! Vertex ids are stable: operations that shrink the graph (contraction,
//! vertex removal, splitting) leave surviving ids untouched and never
//! renumber, which keeps colorings and merge maps on a single id space.

use std::collections::HashSet;

use thiserror::Error;

/// Dense integer vertex identifier, usable as a vector index.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is out of range or absent")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("neighbor {1} appears twice in the rotation of {0}")]
    DuplicateNeighbor(VertexId, VertexId),
    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(VertexId, VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler check failed: V={v}, E={e}, F={f} (V-E+F must be 2; not a plane embedding)")]
    EulerCheckFailed { v: usize, e: usize, f: usize },
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("operation needs at least {needed} vertices, graph has {has}")]
    TooFewVertices { needed: usize, has: usize },
    #[error("triangle ({0}, {1}, {2}) is not separating")]
    NotSeparating(VertexId, VertexId, VertexId),
    #[error("({0}, {1}, {2}) is not a triangle of the graph")]
    NotATriangle(VertexId, VertexId, VertexId),
    #[error("cannot triangulate a face walk of length {0} without duplicate chords")]
    UntriangulatableFace(usize),
    #[error("face list is not a closed oriented face structure")]
    BadFaceStructure,
}

/// One facial walk; `boundary[i]` is followed by `boundary[i+1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    boundary: Vec<VertexId>,
}

impl Face {
    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    fn key(&self) -> Option<[VertexId; 3]> {
        if self.boundary.len() == 3 {
            let mut k = [self.boundary[0], self.boundary[1], self.boundary[2]];
            k.sort_unstable();
            Some(k)
        } else {
            None
        }
    }
}

/// A 3-cycle of the graph. `separating` is true iff the cycle bounds no face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub separating: bool,
}

/// Maps every vertex id of a source graph to its surviving representative
/// after one or more contractions. Identity on untouched vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeMap {
    map: Vec<VertexId>,
}

impl MergeMap {
    pub fn identity(slots: usize) -> Self {
        MergeMap {
            map: (0..slots as VertexId).collect(),
        }
    }

    /// Surviving representative of `v`.
    pub fn resolve(&self, v: VertexId) -> VertexId {
        self.map[v as usize]
    }

    /// `self` followed by `later`.
    pub fn then(&self, later: &MergeMap) -> MergeMap {
        MergeMap {
            map: self.map.iter().map(|&v| later.resolve(v)).collect(),
        }
    }

    pub fn is_identity_on(&self, vs: impl IntoIterator<Item = VertexId>) -> bool {
        vs.into_iter().all(|v| self.resolve(v) == v)
    }

    fn merge(&mut self, from: VertexId, into: VertexId) {
        for slot in self.map.iter_mut() {
            if *slot == from {
                *slot = into;
            }
        }
    }
}

/// Result of [`RotationGraph::triangulate`]: the maximal supergraph plus the
/// chords that were inserted, so a coloring of the output restricts to the
/// input by doing nothing at all (the vertex set is unchanged).
#[derive(Debug, Clone)]
pub struct Triangulated {
    pub graph: RotationGraph,
    pub added_edges: Vec<(VertexId, VertexId)>,
}

/// Connected simple plane graph with a combinatorial embedding.
#[derive(Debug, Clone)]
pub struct RotationGraph {
    /// Slot per vertex id; `None` marks ids removed by contraction/deletion.
    rotations: Vec<Option<Vec<VertexId>>>,
    edge_count: usize,
    faces: Vec<Face>,
    triangle_faces: HashSet<[VertexId; 3]>,
}

impl RotationGraph {
    /// Builds and validates a graph from per-vertex CCW neighbor lists over
    /// the contiguous id range `0..rotations.len()`.
    pub fn build(rotations: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        Self::from_parts(rotations.into_iter().map(Some).collect())
    }

    /// Builds a graph from an oriented face list: every dart `(u, w)` must be
    /// used by exactly one face walk. The rotation at each vertex is stitched
    /// from the face constraints.
    pub fn from_oriented_faces(n: usize, faces: &[Vec<VertexId>]) -> Result<Self, GraphError> {
        // face walk ..., p, v, q, ... pins succ(q) = p in the rotation of v
        let mut succ: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); n];
        for face in faces {
            let k = face.len();
            if k < 2 {
                return Err(GraphError::BadFaceStructure);
            }
            for i in 0..k {
                let p = face[(i + k - 1) % k];
                let v = face[i];
                let q = face[(i + 1) % k];
                if v as usize >= n {
                    return Err(GraphError::UnknownVertex(v));
                }
                succ[v as usize].push((q, p));
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, pairs) in succ.iter().enumerate() {
            if pairs.is_empty() {
                if n == 1 {
                    rotations.push(Vec::new());
                    continue;
                }
                return Err(GraphError::BadFaceStructure);
            }
            let mut rot = Vec::with_capacity(pairs.len());
            let start = pairs.iter().map(|&(q, _)| q).min().unwrap();
            let mut cur = start;
            loop {
                rot.push(cur);
                let mut next = None;
                for &(q, p) in pairs {
                    if q == cur {
                        if next.replace(p).is_some() {
                            return Err(GraphError::BadFaceStructure);
                        }
                    }
                }
                let next = next.ok_or(GraphError::BadFaceStructure)?;
                if next == start {
                    break;
                }
                if rot.len() > pairs.len() {
                    return Err(GraphError::BadFaceStructure);
                }
                cur = next;
            }
            if rot.len() != pairs.len() {
                return Err(GraphError::BadFaceStructure);
            }
            let _ = v;
            rotations.push(rot);
        }
        Self::build(rotations)
    }

    /// Reconstructs the (unique up to reflection) embedding of a maximal
    /// planar graph from its abstract adjacency. The neighborhood of every
    /// vertex of a triangulation induces a single cycle; link cycles are
    /// oriented consistently by propagation from vertex 0.
    pub fn from_triangulation_adjacency(adj: &[Vec<VertexId>]) -> Result<Self, GraphError> {
        let n = adj.len();
        if n < 4 {
            return Err(GraphError::TooFewVertices { needed: 4, has: n });
        }
        let has = |u: VertexId, w: VertexId| adj[u as usize].contains(&w);
        let mut link = Vec::with_capacity(n);
        for (v, nbrs) in adj.iter().enumerate() {
            // walk the cycle induced by the neighborhood
            let start = *nbrs.iter().min().ok_or(GraphError::Disconnected)?;
            let mut cyc = vec![start];
            let mut prev = None;
            let mut cur = start;
            loop {
                let mut nexts: Vec<VertexId> = nbrs
                    .iter()
                    .copied()
                    .filter(|&x| x != cur && has(cur, x) && Some(x) != prev)
                    .collect();
                nexts.sort_unstable();
                let next = match (prev, nexts.as_slice()) {
                    (None, [a, b]) => *a.min(b),
                    (Some(_), [a]) => *a,
                    _ => {
                        return Err(GraphError::EulerCheckFailed {
                            v: n,
                            e: 0,
                            f: v, // diagnostic only; not a triangulation link
                        })
                    }
                };
                if next == start {
                    break;
                }
                cyc.push(next);
                if cyc.len() > nbrs.len() {
                    return Err(GraphError::BadFaceStructure);
                }
                prev = Some(cur);
                cur = next;
            }
            if cyc.len() != nbrs.len() {
                return Err(GraphError::BadFaceStructure);
            }
            link.push(cyc);
        }
        // orient: succ_u(w) = x forces succ_w(x) = u
        let mut oriented: Vec<Option<Vec<VertexId>>> = vec![None; n];
        oriented[0] = Some(link[0].clone());
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            let ru = oriented[u].clone().unwrap();
            let d = ru.len();
            for i in 0..d {
                let w = ru[i] as usize;
                let x = ru[(i + 1) % d];
                if oriented[w].is_some() {
                    continue;
                }
                let mut rw = link[w].clone();
                let pos = rw.iter().position(|&y| y == x).ok_or(GraphError::BadFaceStructure)?;
                if rw[(pos + 1) % rw.len()] != u as VertexId {
                    rw[1..].reverse();
                    let pos = rw.iter().position(|&y| y == x).unwrap();
                    if rw[(pos + 1) % rw.len()] != u as VertexId {
                        return Err(GraphError::BadFaceStructure);
                    }
                }
                oriented[w] = Some(rw);
                stack.push(w);
            }
        }
        let rotations: Option<Vec<Vec<VertexId>>> = oriented.into_iter().collect();
        Self::build(rotations.ok_or(GraphError::Disconnected)?)
    }

    fn from_parts(rotations: Vec<Option<Vec<VertexId>>>) -> Result<Self, GraphError> {
        let slots = rotations.len();
        let mut dart_count = 0usize;
        let mut present = 0usize;
        for (v, rot) in rotations.iter().enumerate() {
            let v = v as VertexId;
            let Some(rot) = rot else { continue };
            present += 1;
            dart_count += rot.len();
            for &w in rot {
                if w == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if w as usize >= slots || rotations[w as usize].is_none() {
                    return Err(GraphError::UnknownVertex(w));
                }
            }
        }
        if present == 0 {
            return Err(GraphError::TooFewVertices { needed: 1, has: 0 });
        }
        // simplicity and symmetry in one pass: sort all darts; duplicates are
        // repeated neighbors, unpaired darts are asymmetric adjacency
        let mut darts: Vec<(VertexId, VertexId)> = Vec::with_capacity(dart_count);
        for (v, rot) in rotations.iter().enumerate() {
            if let Some(rot) = rot {
                for &w in rot {
                    darts.push((v as VertexId, w));
                }
            }
        }
        darts.sort_unstable();
        for pair in darts.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateNeighbor(pair[0].0, pair[0].1));
            }
        }
        for &(v, w) in &darts {
            if darts.binary_search(&(w, v)).is_err() {
                return Err(GraphError::Asymmetric(v, w));
            }
        }
        let edge_count = dart_count / 2;
        // connectivity
        let start = rotations
            .iter()
            .position(|r| r.is_some())
            .expect("present vertex exists") as VertexId;
        let mut seen = vec![false; slots];
        seen[start as usize] = true;
        let mut stack = vec![start];
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &w in rotations[v as usize].as_ref().unwrap() {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != present {
            return Err(GraphError::Disconnected);
        }
        let faces = trace_faces(&rotations);
        let f = faces.len();
        if present as isize - edge_count as isize + f as isize != 2 {
            return Err(GraphError::EulerCheckFailed {
                v: present,
                e: edge_count,
                f,
            });
        }
        let triangle_faces = faces.iter().filter_map(Face::key).collect();
        Ok(RotationGraph {
            rotations,
            edge_count,
            faces,
            triangle_faces,
        })
    }

    /// Number of present vertices.
    pub fn vertex_count(&self) -> usize {
        self.rotations.iter().filter(|r| r.is_some()).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Size of the id space (largest id ever used plus one).
    pub fn slot_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.rotations.len() && self.rotations[v as usize].is_some()
    }

    /// Present vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotations
            .iter()
            .enumerate()
            .filter_map(|(v, r)| r.as_ref().map(|_| v as VertexId))
    }

    /// CCW neighbor order of `v`.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotations[v as usize]
            .as_deref()
            .unwrap_or_else(|| panic!("vertex {v} is absent"))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.contains(u) && self.contains(w) && self.rotation(u).contains(&w)
    }

    /// Undirected edges as `(u, w)` with `u < w`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.rotation(u)
                .iter()
                .copied()
                .filter(move |&w| u < w)
                .map(move |w| (u, w))
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// True iff every face (the outer one included) is a triangle.
    pub fn is_maximal(&self) -> bool {
        self.vertex_count() >= 3 && self.faces.iter().all(|f| f.len() == 3)
    }

    /// Present vertex of minimum degree, smallest id on ties.
    pub fn min_degree_vertex(&self) -> VertexId {
        self.vertices()
            .min_by_key(|&v| (self.degree(v), v))
            .expect("graph is never empty")
    }

    pub fn is_facial_triangle(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        let mut k = [a, b, c];
        k.sort_unstable();
        self.triangle_faces.contains(&k)
    }

    /// Classifies an existing 3-cycle.
    pub fn triangle(&self, a: VertexId, b: VertexId, c: VertexId) -> Result<Triangle, GraphError> {
        if a == b || b == c || a == c {
            return Err(GraphError::NotATriangle(a, b, c));
        }
        if !(self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)) {
            return Err(GraphError::NotATriangle(a, b, c));
        }
        Ok(Triangle {
            a,
            b,
            c,
            separating: !self.is_facial_triangle(a, b, c),
        })
    }

    /// Lexicographically smallest 3-cycle that bounds no face, if any.
    pub fn find_separating_triangle(&self) -> Option<Triangle> {
        let mut sorted: Vec<Vec<VertexId>> = Vec::with_capacity(self.rotations.len());
        for (v, rot) in self.rotations.iter().enumerate() {
            let _ = v;
            let mut s = rot.clone().unwrap_or_default();
            s.sort_unstable();
            sorted.push(s);
        }
        for a in self.vertices() {
            for &b in &sorted[a as usize] {
                if b <= a {
                    continue;
                }
                // common neighbors above b, ascending
                let (na, nb) = (&sorted[a as usize], &sorted[b as usize]);
                let (mut i, mut j) = (0, 0);
                while i < na.len() && j < nb.len() {
                    use std::cmp::Ordering::*;
                    match na[i].cmp(&nb[j]) {
                        Less => i += 1,
                        Greater => j += 1,
                        Equal => {
                            let c = na[i];
                            if c > b && !self.is_facial_triangle(a, b, c) {
                                return Some(Triangle {
                                    a,
                                    b,
                                    c,
                                    separating: true,
                                });
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
        None
    }

    /// Splits on a separating triangle: returns the induced sides
    /// `(G_i, G_o)`, which overlap exactly in the triangle. The side holding
    /// the smallest non-triangle vertex id comes first.
    pub fn split_on_triangle(
        &self,
        t: &Triangle,
    ) -> Result<(RotationGraph, RotationGraph), GraphError> {
        let tri = [t.a, t.b, t.c];
        for &v in &tri {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if self.triangle(t.a, t.b, t.c)?.separating == false {
            return Err(GraphError::NotSeparating(t.a, t.b, t.c));
        }
        // components of G - {a, b, c}
        let slots = self.slot_count();
        let mut comp = vec![usize::MAX; slots];
        let mut n_comps = 0usize;
        for v in self.vertices() {
            if tri.contains(&v) || comp[v as usize] != usize::MAX {
                continue;
            }
            let id = n_comps;
            n_comps += 1;
            comp[v as usize] = id;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in self.rotation(u) {
                    if !tri.contains(&w) && comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        stack.push(w);
                    }
                }
            }
        }
        if n_comps != 2 {
            return Err(GraphError::NotSeparating(t.a, t.b, t.c));
        }
        let side = |id: usize| -> Result<RotationGraph, GraphError> {
            let keep = |v: VertexId| tri.contains(&v) || comp[v as usize] == id;
            let rotations: Vec<Option<Vec<VertexId>>> = self
                .rotations
                .iter()
                .enumerate()
                .map(|(v, rot)| match rot {
                    Some(r) if keep(v as VertexId) => {
                        Some(r.iter().copied().filter(|&w| keep(w)).collect())
                    }
                    _ => None,
                })
                .collect();
            RotationGraph::from_parts(rotations)
        };
        Ok((side(0)?, side(1)?))
    }

    /// Induced subgraph on the kept vertices, ids stable, rotation order
    /// preserved.
    pub(crate) fn retain(
        &self,
        keep: impl Fn(VertexId) -> bool,
    ) -> Result<RotationGraph, GraphError> {
        let rotations: Vec<Option<Vec<VertexId>>> = self
            .rotations
            .iter()
            .enumerate()
            .map(|(u, rot)| match rot {
                Some(r) if keep(u as VertexId) => {
                    Some(r.iter().copied().filter(|&w| keep(w)).collect())
                }
                _ => None,
            })
            .collect();
        RotationGraph::from_parts(rotations)
    }

    /// Removes a vertex, keeping all other ids stable.
    pub fn remove_vertex(&self, v: VertexId) -> Result<RotationGraph, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if self.vertex_count() == 1 {
            return Err(GraphError::TooFewVertices { needed: 2, has: 1 });
        }
        let rotations: Vec<Option<Vec<VertexId>>> = self
            .rotations
            .iter()
            .enumerate()
            .map(|(u, rot)| match rot {
                Some(_) if u as VertexId == v => None,
                Some(r) => Some(r.iter().copied().filter(|&w| w != v).collect()),
                None => None,
            })
            .collect();
        RotationGraph::from_parts(rotations)
    }

    /// Contracts edge `uw` into `u`. The rotation of `w` is spliced into the
    /// rotation of `u` at the removed edge; parallel edges produced by common
    /// neighbors are coalesced keeping the copy that appears first in the
    /// spliced order. Ids other than `w` survive unchanged.
    pub fn contract_edge(
        &self,
        u: VertexId,
        w: VertexId,
    ) -> Result<(RotationGraph, MergeMap), GraphError> {
        if !self.has_edge(u, w) {
            return Err(GraphError::NotAnEdge(u, w));
        }
        let ru = self.rotation(u);
        let rw = self.rotation(w);
        let pu = ru.iter().position(|&x| x == w).unwrap();
        let pw = rw.iter().position(|&x| x == u).unwrap();
        // spliced rotation of u: replace the w entry by w's rotation rotated
        // to start after u; tag entries that came from w
        let mut spliced: Vec<(VertexId, bool)> = Vec::with_capacity(ru.len() + rw.len() - 2);
        spliced.extend(ru[..pu].iter().map(|&x| (x, false)));
        spliced.extend(rw[pw + 1..].iter().map(|&x| (x, true)));
        spliced.extend(rw[..pw].iter().map(|&x| (x, true)));
        spliced.extend(ru[pu + 1..].iter().map(|&x| (x, false)));

        // decide which copy survives for each doubled neighbor
        let mut keep_from_w: Vec<Option<bool>> = vec![None; self.slot_count()];
        let mut first_seen: Vec<bool> = vec![false; self.slot_count()];
        for &(x, from_w) in &spliced {
            if !first_seen[x as usize] {
                first_seen[x as usize] = true;
                keep_from_w[x as usize] = Some(from_w);
            }
        }
        let mut new_ru: Vec<VertexId> = Vec::with_capacity(spliced.len());
        let mut drop_second: Vec<bool> = vec![false; self.slot_count()];
        for &(x, from_w) in &spliced {
            let keep = keep_from_w[x as usize].unwrap();
            if from_w == keep && !drop_second[x as usize] {
                new_ru.push(x);
                drop_second[x as usize] = true;
            }
        }

        let rotations: Vec<Option<Vec<VertexId>>> = self
            .rotations
            .iter()
            .enumerate()
            .map(|(x, rot)| {
                let x = x as VertexId;
                match rot {
                    _ if x == w => None,
                    _ if x == u => Some(new_ru.clone()),
                    Some(r) => {
                        let had_u = r.contains(&u);
                        let had_w = r.contains(&w);
                        let keep_w_copy = keep_from_w
                            .get(x as usize)
                            .copied()
                            .flatten()
                            .unwrap_or(false);
                        let out: Vec<VertexId> = r
                            .iter()
                            .copied()
                            .filter_map(|y| {
                                if y == u {
                                    // original x-u edge survives unless the
                                    // copy inherited from w was kept
                                    if had_w && keep_w_copy {
                                        None
                                    } else {
                                        Some(u)
                                    }
                                } else if y == w {
                                    if had_u && !keep_w_copy {
                                        None
                                    } else {
                                        Some(u)
                                    }
                                } else {
                                    Some(y)
                                }
                            })
                            .collect();
                        Some(out)
                    }
                    None => None,
                }
            })
            .collect();
        let graph = RotationGraph::from_parts(rotations)?;
        let mut map = MergeMap::identity(self.slot_count());
        map.merge(w, u);
        Ok((graph, map))
    }

    /// Fan-triangulates every non-triangular face. Chords are fanned from the
    /// lexicographically smallest boundary vertex, falling back to the next
    /// boundary vertex (and finally to single ear chords) whenever a chord
    /// would duplicate an existing edge.
    pub fn triangulate(&self) -> Result<Triangulated, GraphError> {
        let n = self.vertex_count();
        if n < 3 {
            return Err(GraphError::TooFewVertices { needed: 3, has: n });
        }
        let mut rotations = self.rotations.clone();
        let mut edge_set: HashSet<(VertexId, VertexId)> = self
            .edges()
            .map(|(u, w)| (u.min(w), u.max(w)))
            .collect();
        let mut added: Vec<(VertexId, VertexId)> = Vec::new();
        let mut queue: Vec<Vec<VertexId>> = self
            .faces
            .iter()
            .filter(|f| f.len() > 3)
            .map(|f| f.boundary.clone())
            .collect();

        let insert_chord = |rotations: &mut Vec<Option<Vec<VertexId>>>,
                                edge_set: &mut HashSet<(VertexId, VertexId)>,
                                added: &mut Vec<(VertexId, VertexId)>,
                                walk: &[VertexId],
                                i: usize,
                                j: usize| {
            let k = walk.len();
            let (a, b) = (walk[i], walk[j]);
            let qa = walk[(i + 1) % k];
            let qb = walk[(j + 1) % k];
            let ra = rotations[a as usize].as_mut().unwrap();
            let pos = ra.iter().position(|&x| x == qa).unwrap();
            ra.insert(pos + 1, b);
            let rb = rotations[b as usize].as_mut().unwrap();
            let pos = rb.iter().position(|&x| x == qb).unwrap();
            rb.insert(pos + 1, a);
            edge_set.insert((a.min(b), a.max(b)));
            added.push((a.min(b), a.max(b)));
        };

        while let Some(walk) = queue.pop() {
            let k = walk.len();
            if k <= 3 {
                continue;
            }
            let exists = |edge_set: &HashSet<(VertexId, VertexId)>, a: VertexId, b: VertexId| {
                edge_set.contains(&(a.min(b), a.max(b)))
            };
            // full fan from the best root, by (vertex id, position)
            let mut roots: Vec<usize> = (0..k).collect();
            roots.sort_by_key(|&p| (walk[p], p));
            let mut fanned = false;
            'roots: for &p in &roots {
                let a = walk[p];
                let mut targets = Vec::with_capacity(k - 3);
                for step in 2..k - 1 {
                    let b = walk[(p + step) % k];
                    if b == a || exists(&edge_set, a, b) || targets.contains(&b) {
                        continue 'roots;
                    }
                    targets.push(b);
                }
                // commit: repeatedly cut the ear at the root
                let mut cur: Vec<VertexId> = (0..k).map(|s| walk[(p + s) % k]).collect();
                while cur.len() > 3 {
                    insert_chord(&mut rotations, &mut edge_set, &mut added, &cur, 0, 2);
                    cur.remove(1);
                }
                fanned = true;
                break;
            }
            if fanned {
                continue;
            }
            // single ear fallback
            let mut cut = None;
            for i in 0..k {
                let (a, b) = (walk[i], walk[(i + 2) % k]);
                if a != b && !exists(&edge_set, a, b) {
                    cut = Some((i, (i + 2) % k));
                    break;
                }
            }
            if cut.is_none() {
                // any chord at all
                'outer: for i in 0..k {
                    for step in 2..k - 1 {
                        let j = (i + step) % k;
                        if walk[i] != walk[j] && !exists(&edge_set, walk[i], walk[j]) {
                            cut = Some((i, j));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((i, j)) = cut else {
                return Err(GraphError::UntriangulatableFace(k));
            };
            insert_chord(&mut rotations, &mut edge_set, &mut added, &walk, i, j);
            // split the walk into [i..=j]+chord and [j..]+[..=i]+chord
            let k = walk.len();
            let (lo, hi) = (i.min(j), i.max(j));
            let w1: Vec<VertexId> = walk[lo..=hi].to_vec();
            let mut w2: Vec<VertexId> = walk[hi..].to_vec();
            w2.extend_from_slice(&walk[..=lo]);
            // both are closed via the chord edge between their endpoints
            queue.push(close_walk(w1));
            queue.push(close_walk(w2));
            let _ = k;
        }

        let graph = RotationGraph::from_parts(rotations)?;
        debug_assert!(graph.is_maximal());
        if graph.vertex_count() >= 4 {
            let v = graph.min_degree_vertex();
            assert!(
                graph.degree(v) <= 5,
                "maximal plane graph has min degree {} > 5",
                graph.degree(v)
            );
        }
        Ok(Triangulated {
            graph,
            added_edges: added,
        })
    }
}

/// A chord-split walk arrives with its two endpoints open; the chord edge
/// closes it, so the closed boundary is the slice itself.
fn close_walk(mut w: Vec<VertexId>) -> Vec<VertexId> {
    // the slice [a, ..., b] plus chord b-a is the closed face walk
    if w.len() >= 2 && w.first() == w.last() {
        w.pop();
    }
    w
}

/// Dart tracing: successor of dart `(u, w)` is `(w, pred)` where `pred` comes
/// just before `u` in the rotation at `w`. Deterministic face order: scan
/// darts by (origin, rotation position).
fn trace_faces(rotations: &[Option<Vec<VertexId>>]) -> Vec<Face> {
    let mut visited: Vec<Vec<bool>> = rotations
        .iter()
        .map(|r| vec![false; r.as_ref().map_or(0, |r| r.len())])
        .collect();
    // per-vertex (neighbor, position) index, sorted for binary search
    let index: Vec<Vec<(VertexId, u32)>> = rotations
        .iter()
        .map(|r| {
            let mut ix: Vec<(VertexId, u32)> = r
                .as_deref()
                .unwrap_or_default()
                .iter()
                .enumerate()
                .map(|(p, &w)| (w, p as u32))
                .collect();
            ix.sort_unstable();
            ix
        })
        .collect();
    let pos_of = |w: VertexId, u: VertexId| -> usize {
        let ix = &index[w as usize];
        let at = ix.partition_point(|&(x, _)| x < u);
        debug_assert_eq!(ix[at].0, u, "symmetric adjacency");
        ix[at].1 as usize
    };
    let mut faces = Vec::new();
    for (u, rot) in rotations.iter().enumerate() {
        let Some(rot) = rot else { continue };
        for start_pos in 0..rot.len() {
            if visited[u][start_pos] {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut cu, mut cpos) = (u as VertexId, start_pos);
            loop {
                if visited[cu as usize][cpos] {
                    break;
                }
                visited[cu as usize][cpos] = true;
                boundary.push(cu);
                let cw = rotations[cu as usize].as_ref().unwrap()[cpos];
                let rw = rotations[cw as usize].as_ref().unwrap();
                let p = pos_of(cw, cu);
                let pred_pos = (p + rw.len() - 1) % rw.len();
                cu = cw;
                cpos = pred_pos;
            }
            faces.push(Face { boundary });
        }
    }
    if faces.is_empty() {
        // single isolated vertex: one face, the whole plane
        faces.push(Face {
            boundary: vec![rotations
                .iter()
                .position(|r| r.is_some())
                .map(|v| v as VertexId)
                .unwrap_or(0)],
        });
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Embedding of K4: outer face (1, 0, 2) plus three inner triangles.
    pub fn k4() -> RotationGraph {
        RotationGraph::from_oriented_faces(
            4,
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 1],
                vec![1, 3, 2],
            ],
        )
        .unwrap()
    }

    fn plane_c4() -> RotationGraph {
        RotationGraph::build(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap()
    }

    fn octahedron() -> RotationGraph {
        RotationGraph::from_oriented_faces(
            6,
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 1],
                vec![5, 2, 1],
                vec![5, 3, 2],
                vec![5, 4, 3],
                vec![5, 1, 4],
            ],
        )
        .unwrap()
    }

    /// Two K4s glued on triangle (0,1,2); 3 inside, 4 outside.
    fn glued_k4s() -> RotationGraph {
        RotationGraph::from_oriented_faces(
            5,
            &[
                vec![0, 1, 3],
                vec![1, 2, 3],
                vec![2, 0, 3],
                vec![1, 0, 4],
                vec![2, 1, 4],
                vec![0, 2, 4],
            ],
        )
        .unwrap()
    }

    /// Independent face-count oracle: orbit counting on darts, written
    /// directly from the rotation lists.
    fn face_count_oracle(g: &RotationGraph) -> usize {
        let mut darts: HashSet<(VertexId, VertexId, usize)> = HashSet::new();
        let mut count = 0;
        let all: Vec<(VertexId, usize)> = g
            .vertices()
            .flat_map(|u| (0..g.degree(u)).map(move |p| (u, p)))
            .collect();
        for &(u0, p0) in &all {
            if darts.contains(&(u0, g.rotation(u0)[p0], p0)) {
                continue;
            }
            count += 1;
            let (mut u, mut p) = (u0, p0);
            loop {
                let w = g.rotation(u)[p];
                if !darts.insert((u, w, p)) {
                    break;
                }
                let rw = g.rotation(w);
                let q = rw.iter().position(|&x| x == u).unwrap();
                u = w;
                p = (q + rw.len() - 1) % rw.len();
            }
        }
        count
    }

    #[test]
    fn k4_has_four_triangular_faces() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.faces().len(), 4);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn single_triangle_has_two_faces() {
        let g = RotationGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn k5_rotation_fails_euler_check() {
        let rot: Vec<Vec<VertexId>> = (0..5u32)
            .map(|v| (0..5u32).filter(|&w| w != v).collect())
            .collect();
        match RotationGraph::build(rot) {
            Err(GraphError::EulerCheckFailed { v: 5, e: 10, .. }) => {}
            other => panic!("expected Euler failure, got {other:?}"),
        }
    }

    #[test]
    fn c4_has_two_quad_faces() {
        let g = plane_c4();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        let g = octahedron();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.faces().len(), face_count_oracle(&g));
        assert_eq!(g.faces().len(), 2 * g.edge_count() / 3);
        assert_eq!(g.faces().len(), 8);
    }

    #[test]
    fn validation_rejects_bad_rotations() {
        assert!(matches!(
            RotationGraph::build(vec![vec![0]]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            RotationGraph::build(vec![vec![1, 1], vec![0, 0]]),
            Err(GraphError::DuplicateNeighbor(0, 1))
        ));
        assert!(matches!(
            RotationGraph::build(vec![vec![1], vec![]]),
            Err(GraphError::Asymmetric(0, 1))
        ));
        assert!(matches!(
            RotationGraph::build(vec![vec![1], vec![0], vec![3], vec![2]]),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn triangulate_is_identity_on_k4() {
        let g = k4();
        let t = g.triangulate().unwrap();
        assert_eq!(t.added_edges, vec![]);
        assert_eq!(t.graph.edge_count(), 6);
    }

    #[test]
    fn triangulate_c4_adds_two_chords() {
        let g = plane_c4();
        let t = g.triangulate().unwrap();
        assert_eq!(t.graph.edge_count(), 6);
        assert_eq!(t.added_edges.len(), 2);
        assert!(t.graph.is_maximal());
        // original edges preserved
        for (u, w) in g.edges() {
            assert!(t.graph.has_edge(u, w));
        }
    }

    #[test]
    fn triangulate_handles_trees_and_paths() {
        let p3 = RotationGraph::build(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let t = p3.triangulate().unwrap();
        assert!(t.graph.is_maximal());
        assert_eq!(t.graph.edge_count(), 3);

        // star K1,3
        let star =
            RotationGraph::build(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).unwrap();
        let t = star.triangulate().unwrap();
        assert!(t.graph.is_maximal());
        assert_eq!(t.graph.edge_count(), 3 * 4 - 6);
    }

    #[test]
    fn contract_triangle_edge_gives_single_edge() {
        let g = RotationGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let (h, map) = g.contract_edge(0, 1).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(0, 2));
        assert_eq!(map.resolve(1), 0);
        assert_eq!(map.resolve(2), 2);
    }

    #[test]
    fn contract_missing_edge_errors() {
        let g = plane_c4();
        assert!(matches!(
            g.contract_edge(0, 2),
            Err(GraphError::NotAnEdge(0, 2))
        ));
    }

    #[test]
    fn separating_triangle_none_on_octahedron_and_k4() {
        // exhaustive scan oracle: every 3-clique, facial or not
        let check = |g: &RotationGraph| {
            let vs: Vec<VertexId> = g.vertices().collect();
            let mut expected = None;
            'outer: for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    if !g.has_edge(a, b) {
                        continue;
                    }
                    for &c in vs.iter().filter(|&&c| c > b) {
                        if g.has_edge(a, c) && g.has_edge(b, c) && !g.is_facial_triangle(a, b, c)
                        {
                            expected = Some((a, b, c));
                            break 'outer;
                        }
                    }
                }
            }
            let got = g.find_separating_triangle().map(|t| (t.a, t.b, t.c));
            assert_eq!(got, expected);
        };
        check(&octahedron());
        check(&k4());
        assert!(octahedron().find_separating_triangle().is_none());
        assert!(k4().find_separating_triangle().is_none());
    }

    #[test]
    fn glued_k4s_expose_the_shared_triangle() {
        let g = glued_k4s();
        let t = g.find_separating_triangle().expect("separating triangle");
        assert_eq!((t.a, t.b, t.c), (0, 1, 2));
        assert!(t.separating);
    }

    #[test]
    fn split_glued_k4s_into_two_k4s() {
        let g = glued_k4s();
        let t = g.find_separating_triangle().unwrap();
        let (gi, go) = g.split_on_triangle(&t).unwrap();
        for side in [&gi, &go] {
            assert_eq!(side.vertex_count(), 4);
            assert_eq!(side.edge_count(), 6);
            assert!(side.is_maximal());
        }
        // vertex union reconstructs the original set; overlap is the triangle
        let mut union: Vec<VertexId> = gi.vertices().chain(go.vertices()).collect();
        union.sort_unstable();
        union.dedup();
        assert_eq!(union, g.vertices().collect::<Vec<_>>());
        let shared: Vec<VertexId> = gi.vertices().filter(|&v| go.contains(v)).collect();
        assert_eq!(shared, vec![0, 1, 2]);
    }

    #[test]
    fn split_rejects_facial_triangle() {
        let g = k4();
        let t = g.triangle(0, 1, 2).unwrap();
        assert!(!t.separating);
        assert!(matches!(
            g.split_on_triangle(&t),
            Err(GraphError::NotSeparating(0, 1, 2))
        ));
    }

    #[test]
    fn remove_vertex_keeps_ids_stable() {
        let g = octahedron();
        let h = g.remove_vertex(0).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert!(!h.contains(0));
        assert!(h.contains(5));
        let euler = h.vertex_count() as isize - h.edge_count() as isize + h.faces().len() as isize;
        assert_eq!(euler, 2);
    }

    #[test]
    fn euler_holds_after_contraction_chain() {
        let mut g = octahedron();
        while g.vertex_count() > 2 {
            let (u, w) = g.edges().next().unwrap();
            let before = g.vertex_count();
            let (h, _) = g.contract_edge(u, w).unwrap();
            assert_eq!(h.vertex_count(), before - 1);
            g = h;
        }
    }
}
