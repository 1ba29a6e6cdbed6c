//! Independent ground truth: a proper-coloring verifier, an exact
//! backtracking colorer with saturation-first ordering, and the guaranteed
//! Kempe-chain five-colorer.

use thiserror::Error;

use crate::colorer::{kempe_swap, Coloring};
use crate::graph::{RotationGraph, VertexId};
use crate::ring::Ring;

/// Default vertex cap for exhaustive searches.
pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("coloring is partial: vertex {0} has no color")]
    PartialColoring(VertexId),
    #[error("graph has {size} vertices, exact search is capped at {cap}")]
    CapExceeded { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifierReport {
    pub proper: bool,
    pub violating_edge: Option<(VertexId, VertexId)>,
    pub colors_used: u32,
}

/// Linear scan over the edges; reports the first violation in ascending
/// `(u, w)` order. Errors when the coloring misses a present vertex.
pub fn verify(g: &RotationGraph, coloring: &Coloring) -> Result<VerifierReport, OracleError> {
    for v in g.vertices() {
        if coloring.get(v).is_none() {
            return Err(OracleError::PartialColoring(v));
        }
    }
    let mut violating = None;
    for (u, w) in g.edges() {
        if coloring.get(u) == coloring.get(w) {
            violating = Some((u, w));
            break;
        }
    }
    let mut seen = [false; 6];
    for v in g.vertices() {
        seen[coloring.get(v).unwrap() as usize] = true;
    }
    Ok(VerifierReport {
        proper: violating.is_none(),
        violating_edge: violating,
        colors_used: seen.iter().filter(|&&b| b).count() as u32,
    })
}

/// Exact `k`-coloring (k in 1..=5) by backtracking: saturation-first vertex
/// order, forward pruning, ascending colors with new-color cutoff. Either a
/// proper coloring or a definitive absence, within the default cap.
pub fn exact_color(g: &RotationGraph, k: u8) -> Result<Option<Coloring>, OracleError> {
    exact_color_capped(g, k, DEFAULT_EXACT_CAP)
}

pub fn exact_color_capped(
    g: &RotationGraph,
    k: u8,
    cap: usize,
) -> Result<Option<Coloring>, OracleError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(OracleError::CapExceeded { size: n, cap });
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let full = mask_of_k(k);
    Ok(solve(g, &verts, k, |_| full, true))
}

/// Exact coloring of the subgraph induced on `verts`; plumbing for deriving
/// partial colorings in tests and experiments.
pub fn exact_color_of_subset(g: &RotationGraph, verts: &[VertexId], k: u8) -> Option<Coloring> {
    let full = mask_of_k(k);
    solve(g, verts, k, |_| full, true)
}

/// Exact search for a proper 4-coloring of `G - v` whose ring vertices use at
/// most `max_ring_colors` distinct colors. Tries the ring palettes in
/// exclusion order (drop 4 first). Absence is definitive within the cap.
pub fn constrained_recolor(
    g_minus_v: &RotationGraph,
    ring: &Ring,
    max_ring_colors: usize,
    cap: usize,
) -> Result<Option<Coloring>, OracleError> {
    let n = g_minus_v.vertex_count();
    if n > cap {
        return Err(OracleError::CapExceeded { size: n, cap });
    }
    let verts: Vec<VertexId> = g_minus_v.vertices().collect();
    let full = mask_of_k(4);
    for excluded in (1..=4u8).rev() {
        let _ = max_ring_colors;
        let ring_mask = full & !(1 << (excluded - 1));
        let allowed = |v: VertexId| {
            if ring.contains(v) {
                ring_mask
            } else {
                full
            }
        };
        if let Some(coloring) = solve(g_minus_v, &verts, 4, allowed, false) {
            return Ok(Some(coloring));
        }
    }
    Ok(None)
}

fn mask_of_k(k: u8) -> u8 {
    debug_assert!((1..=5).contains(&k));
    (1u8 << k) - 1
}

/// Backtracking core over per-vertex allowed-color masks. `symmetry` enables
/// the new-color cutoff, sound only when every mask is the full palette.
fn solve(
    g: &RotationGraph,
    verts: &[VertexId],
    k: u8,
    allowed: impl Fn(VertexId) -> u8,
    symmetry: bool,
) -> Option<Coloring> {
    let n = verts.len();
    if n == 0 {
        return Some(Coloring::new(g.slot_count()));
    }
    let mut dense = vec![usize::MAX; g.slot_count()];
    for (i, &v) in verts.iter().enumerate() {
        dense[v as usize] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| {
            g.rotation(v)
                .iter()
                .filter_map(|&w| {
                    let i = dense[w as usize];
                    (i != usize::MAX).then_some(i)
                })
                .collect()
        })
        .collect();
    let allowed_masks: Vec<u8> = verts.iter().map(|&v| allowed(v)).collect();
    let mut state = Solver {
        adj: &adj,
        verts,
        allowed: &allowed_masks,
        color: vec![0; n],
        neighbor_mask: vec![0u8; n],
        k,
        symmetry,
    };
    if state.run(0, 0) {
        let mut coloring = Coloring::new(g.slot_count());
        for (i, &v) in verts.iter().enumerate() {
            coloring.set(v, state.color[i]);
        }
        Some(coloring)
    } else {
        None
    }
}

struct Solver<'a> {
    adj: &'a [Vec<usize>],
    verts: &'a [VertexId],
    allowed: &'a [u8],
    color: Vec<u8>,
    neighbor_mask: Vec<u8>,
    k: u8,
    symmetry: bool,
}

impl Solver<'_> {
    fn run(&mut self, assigned: usize, max_used: u8) -> bool {
        let n = self.adj.len();
        if assigned == n {
            return true;
        }
        // saturation-first: most distinct neighbor colors, then highest
        // degree, then smallest vertex id
        let mut best: Option<(usize, (u32, usize, std::cmp::Reverse<VertexId>))> = None;
        for i in 0..n {
            if self.color[i] != 0 {
                continue;
            }
            let key = (
                self.neighbor_mask[i].count_ones(),
                self.adj[i].len(),
                std::cmp::Reverse(self.verts[i]),
            );
            if best.as_ref().map_or(true, |&(_, k)| key > k) {
                best = Some((i, key));
            }
        }
        let (v, _) = best.expect("uncolored vertex exists");
        let limit = if self.symmetry {
            self.k.min(max_used + 1)
        } else {
            self.k
        };
        let candidates = self.allowed[v] & !self.neighbor_mask[v] & mask_of_k(limit);
        for c in 1..=limit {
            if candidates & (1 << (c - 1)) == 0 {
                continue;
            }
            self.color[v] = c;
            let bit = 1 << (c - 1);
            let mut feasible = true;
            for idx in 0..self.adj[v].len() {
                let w = self.adj[v][idx];
                self.neighbor_mask[w] |= bit;
                if self.color[w] == 0 && self.allowed[w] & !self.neighbor_mask[w] == 0 {
                    feasible = false;
                }
            }
            if feasible && self.run(assigned + 1, max_used.max(c)) {
                return true;
            }
            self.color[v] = 0;
            for idx in 0..self.adj[v].len() {
                let w = self.adj[v][idx];
                // recompute the mask bit: another neighbor may share color c
                if !self.adj[w].iter().any(|&x| self.color[x] == c) {
                    self.neighbor_mask[w] &= !bit;
                }
            }
        }
        false
    }
}

/// Heawood's five-coloring: peel minimum-degree vertices, color in reverse,
/// and when a degree-5 vertex faces five distinct colors swap a Kempe chain
/// between two neighbors that are non-adjacent in the rotation order. Always
/// succeeds on a plane graph.
pub fn kempe_five_color(g: &RotationGraph) -> Coloring {
    let slots = g.slot_count();
    let mut alive: Vec<bool> = (0..slots as VertexId).map(|v| g.contains(v)).collect();
    let mut degree: Vec<usize> = (0..slots as VertexId)
        .map(|v| if g.contains(v) { g.degree(v) } else { 0 })
        .collect();
    let n = g.vertex_count();

    // peel order: repeatedly the smallest-id minimum-degree vertex
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut heap: BinaryHeap<Reverse<(usize, VertexId)>> = g
        .vertices()
        .map(|v| Reverse((degree[v as usize], v)))
        .collect();
    let mut peel: Vec<(VertexId, Vec<VertexId>)> = Vec::with_capacity(n);
    while peel.len() < n {
        let Reverse((d, v)) = heap.pop().expect("heap tracks alive vertices");
        if !alive[v as usize] || degree[v as usize] != d {
            continue; // stale entry
        }
        let nbrs: Vec<VertexId> = g
            .rotation(v)
            .iter()
            .copied()
            .filter(|&w| alive[w as usize])
            .collect();
        alive[v as usize] = false;
        for &w in &nbrs {
            degree[w as usize] -= 1;
            heap.push(Reverse((degree[w as usize], w)));
        }
        peel.push((v, nbrs));
    }

    // color in reverse removal order
    let mut coloring = Coloring::new(slots);
    for (v, nbrs) in peel.into_iter().rev() {
        let mut used = [false; 6];
        for &w in &nbrs {
            if let Some(c) = coloring.get(w) {
                used[c as usize] = true;
            }
        }
        if let Some(c) = (1..=5u8).find(|&c| !used[c as usize]) {
            coloring.set(v, c);
            continue;
        }
        // five neighbors, five distinct colors; nbrs is in rotation order
        debug_assert_eq!(nbrs.len(), 5);
        let pairs = [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)];
        let mut placed = false;
        for (i, j) in pairs {
            let (ni, nj) = (nbrs[i], nbrs[j]);
            let (ci, cj) = (coloring.get(ni).unwrap(), coloring.get(nj).unwrap());
            if chain_reaches(g, &coloring, ni, nj, ci, cj) {
                continue;
            }
            kempe_swap_colored(g, &mut coloring, ni, ci, cj);
            coloring.set(v, ci);
            placed = true;
            break;
        }
        assert!(placed, "Kempe chain argument failed; input is not plane");
    }
    coloring
}

/// True iff `target` lies in the two-colored component of `start`.
fn chain_reaches(
    g: &RotationGraph,
    coloring: &Coloring,
    start: VertexId,
    target: VertexId,
    a: u8,
    b: u8,
) -> bool {
    let mut member = vec![false; g.slot_count()];
    member[start as usize] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        if x == target {
            return true;
        }
        for &y in g.rotation(x) {
            if member[y as usize] {
                continue;
            }
            if let Some(c) = coloring.get(y) {
                if c == a || c == b {
                    member[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    false
}

/// Kempe swap over the subgraph of currently colored vertices.
fn kempe_swap_colored(g: &RotationGraph, coloring: &mut Coloring, start: VertexId, a: u8, b: u8) {
    kempe_swap(g, coloring, start, a, b);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{gen_fixture, Fixture};
    use crate::workbench::gen::{gen_random_triangulation, gen_with_mode, GenMode};

    fn coloring_of(g: &RotationGraph, colors: &[(VertexId, u8)]) -> Coloring {
        let mut c = Coloring::new(g.slot_count());
        for &(v, col) in colors {
            c.set(v, col);
        }
        c
    }

    #[test]
    fn verify_k4_examples() {
        let g = gen_fixture(&Fixture::K4);
        let good = coloring_of(&g, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let report = verify(&g, &good).unwrap();
        assert!(report.proper);
        assert_eq!(report.colors_used, 4);

        let bad = coloring_of(&g, &[(0, 1), (1, 1), (2, 2), (3, 3)]);
        let report = verify(&g, &bad).unwrap();
        assert!(!report.proper);
        assert_eq!(report.violating_edge, Some((0, 1)));

        let partial = coloring_of(&g, &[(0, 1)]);
        assert!(matches!(
            verify(&g, &partial),
            Err(OracleError::PartialColoring(1))
        ));
    }

    #[test]
    fn exact_color_small_cases() {
        let k4 = gen_fixture(&Fixture::K4);
        assert!(exact_color(&k4, 3).unwrap().is_none());
        assert!(exact_color(&k4, 4).unwrap().is_some());

        // C5: an odd cycle needs three colors
        let c5 = RotationGraph::build(vec![
            vec![1, 4],
            vec![2, 0],
            vec![3, 1],
            vec![4, 2],
            vec![0, 3],
        ])
        .unwrap();
        assert!(exact_color(&c5, 2).unwrap().is_none());
        let three = exact_color(&c5, 3).unwrap().expect("3-colorable");
        assert!(verify(&c5, &three).unwrap().proper);
    }

    #[test]
    fn exact_color_respects_cap() {
        let g = gen_random_triangulation(70, 3).unwrap();
        assert!(matches!(
            exact_color(&g, 4),
            Err(OracleError::CapExceeded { size: 70, cap: 64 })
        ));
    }

    /// Cross-oracle: plain enumeration of all k^V assignments.
    fn brute_force_colorable(g: &RotationGraph, k: u8) -> bool {
        let verts: Vec<VertexId> = g.vertices().collect();
        let n = verts.len();
        let mut assign = vec![1u8; n];
        loop {
            let proper = g.edges().all(|(u, w)| {
                let iu = verts.iter().position(|&x| x == u).unwrap();
                let iw = verts.iter().position(|&x| x == w).unwrap();
                assign[iu] != assign[iw]
            });
            if proper {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                assign[i] += 1;
                if assign[i] <= k {
                    break;
                }
                assign[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn exact_agrees_with_brute_force_up_to_v8() {
        for (n, seed) in [(5u32, 1u64), (6, 2), (7, 3), (8, 4)] {
            let g = gen_random_triangulation(n, seed).unwrap();
            for k in 2..=4u8 {
                let exact = exact_color(&g, k).unwrap().is_some();
                assert_eq!(exact, brute_force_colorable(&g, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn kempe_five_colors_fixtures() {
        for fixture in [Fixture::K4, Fixture::Octahedron, Fixture::Icosahedron, Fixture::Errera] {
            let g = gen_fixture(&fixture);
            let coloring = kempe_five_color(&g);
            let report = verify(&g, &coloring).unwrap();
            assert!(report.proper);
            assert!(coloring.palette_size() <= 5);
        }
        let k4 = gen_fixture(&Fixture::K4);
        assert_eq!(verify(&k4, &kempe_five_color(&k4)).unwrap().colors_used, 4);
    }

    #[test]
    fn kempe_handles_both_generator_modes() {
        for (i, mode) in [GenMode::Stacked, GenMode::Flipped].into_iter().enumerate() {
            for n in [10u32, 50, 120] {
                let g = gen_with_mode(n, 1000 + i as u64, mode).unwrap();
                let coloring = kempe_five_color(&g);
                assert!(verify(&g, &coloring).unwrap().proper);
            }
        }
    }

    #[test]
    fn constrained_recolor_on_wheel() {
        // G = W5, v = hub: G - v is the plain 5-cycle, no residual constraints
        let g = gen_fixture(&Fixture::Wheel(5));
        let ring = crate::ring::neighbor_ring(&g, 0).unwrap();
        let g_minus = g.remove_vertex(0).unwrap();
        let found = constrained_recolor(&g_minus, &ring, 3, DEFAULT_EXACT_CAP)
            .unwrap()
            .expect("a 5-cycle is 3-colorable");
        assert!(verify(&g_minus, &found).unwrap().proper);
        let mut ring_colors: Vec<u8> = ring
            .cycle()
            .iter()
            .map(|&r| found.get(r).unwrap())
            .collect();
        ring_colors.sort_unstable();
        ring_colors.dedup();
        assert!(ring_colors.len() <= 3);
    }

    #[test]
    fn constrained_recolor_cap() {
        let g = gen_random_triangulation(100, 9).unwrap();
        let v = g.min_degree_vertex();
        let ring = crate::ring::neighbor_ring(&g, v);
        if let Ok(ring) = ring {
            let g_minus = g.remove_vertex(v).unwrap();
            assert!(matches!(
                constrained_recolor(&g_minus, &ring, 3, 64),
                Err(OracleError::CapExceeded { .. })
            ));
        }
    }

    #[test]
    fn verifier_is_direction_and_order_independent() {
        let g = gen_random_triangulation(30, 21).unwrap();
        let coloring = kempe_five_color(&g);
        let report = verify(&g, &coloring).unwrap();
        assert!(report.proper);
        // flip one endpoint color to force a violation; both directions agree
        let (u, w) = g.edges().next().unwrap();
        let mut bad = coloring.clone();
        bad.set(u, bad.get(w).unwrap());
        let r = verify(&g, &bad).unwrap();
        assert!(!r.proper);
        let (a, b) = r.violating_edge.unwrap();
        assert!(g.has_edge(a, b));
    }
}
