//! The neighborhood ring of a removed minimum-degree vertex.
//!
//! For a vertex `v` of a triangulation, its neighbors form a cycle
//! `v_1 .. v_d` in rotation order. After removing `v`, each ring vertex sees
//! a residual set `R_i`: the colors already present on its neighbors outside
//! the ring. Recoloring the ring is list-coloring a short cycle; contraction
//! plans rewrite the graph so that a recursive coloring is forced to change
//! those residual sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorer::Coloring;
use crate::graph::{GraphError, MergeMap, RotationGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("neighbors of {center} do not form a cycle: {a} and {b} are not adjacent (input not triangulated?)")]
    NotACycle {
        center: VertexId,
        a: VertexId,
        b: VertexId,
    },
    #[error("degree {0} is outside the supported ring sizes 1..=5")]
    UnsupportedDegree(usize),
    #[error("residual set at ring position {position} already holds four colors")]
    ResidualSaturated { position: usize },
    #[error("vertex {vertex} carries the fifth color; residual sets live in colors 1..4")]
    FifthColor { vertex: VertexId },
    #[error("ring vertices {a} and {b} share {count} neighbors off the ring, expected exactly one")]
    SharedNeighborNotUnique {
        a: VertexId,
        b: VertexId,
        count: usize,
    },
    #[error("coloring domain mismatch at vertex {vertex}: {reason}")]
    DomainMismatch {
        vertex: VertexId,
        reason: &'static str,
    },
    #[error("plan does not fit a ring of length {d}")]
    InvalidPlan { d: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Subset of the colors `{1, 2, 3, 4}` as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const ALL: ColorSet = ColorSet(0b1111);

    pub fn from_colors(colors: &[u8]) -> ColorSet {
        let mut s = ColorSet::EMPTY;
        for &c in colors {
            s.insert(c);
        }
        s
    }

    pub fn from_mask(mask: u8) -> ColorSet {
        ColorSet(mask & 0b1111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Colors must lie in `1..=4`.
    pub fn insert(&mut self, color: u8) {
        debug_assert!((1..=4).contains(&color));
        self.0 |= 1 << (color - 1);
    }

    pub fn contains(self, color: u8) -> bool {
        (1..=4).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn remove(self, color: u8) -> ColorSet {
        ColorSet(self.0 & !(1 << (color - 1)))
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=4u8).filter(move |&c| self.contains(c))
    }
}

impl std::fmt::Display for ColorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for c in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// The cycle of neighbors around a removed vertex, in rotation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub center: VertexId,
    cycle: Vec<VertexId>,
}

impl Ring {
    pub fn d(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.cycle.contains(&v)
    }
}

/// Per-position residual color sets `R_1 .. R_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidualSets {
    sets: Vec<ColorSet>,
}

impl ResidualSets {
    pub fn new(sets: Vec<ColorSet>) -> ResidualSets {
        ResidualSets { sets }
    }

    pub fn d(&self) -> usize {
        self.sets.len()
    }

    pub fn get(&self, i: usize) -> ColorSet {
        self.sets[i]
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    pub fn union(&self) -> ColorSet {
        self.sets
            .iter()
            .fold(ColorSet::EMPTY, |acc, &s| acc.union(s))
    }
}

impl std::fmt::Display for ResidualSets {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Which ring edges to contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlanKind {
    /// Collapse the whole ring to a single vertex `v_c`.
    WholeRing,
    /// Contract the two non-adjacent ring edges `(v_i, v_{i+1})` and
    /// `(v_j, v_{j+1})`; indices are 0-based into the cycle.
    EdgePair { i: usize, j: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionPlan {
    pub kind: PlanKind,
    /// True for the d=4 opposite-edge pairs, which collapse the ring to two
    /// vertices; kept for completeness, ordered last, never relied on.
    pub ring_degenerate: bool,
}

/// The neighbors of `v` as a cycle, in the rotation order around `v`.
/// Fails when some consecutive pair is not adjacent, which signals a
/// non-triangulated input.
pub fn neighbor_ring(g: &RotationGraph, v: VertexId) -> Result<Ring, RingError> {
    let cycle: Vec<VertexId> = g.rotation(v).to_vec();
    let d = cycle.len();
    if d == 0 || d > 5 {
        return Err(RingError::UnsupportedDegree(d));
    }
    if d >= 3 {
        for i in 0..d {
            let (a, b) = (cycle[i], cycle[(i + 1) % d]);
            if !g.has_edge(a, b) {
                return Err(RingError::NotACycle { center: v, a, b });
            }
        }
    }
    Ok(Ring { center: v, cycle })
}

/// Residual sets of a ring in `G - v` under a coloring of
/// `G_1 = G - v - ring`. The coloring must assign every non-ring vertex and
/// no ring vertex. Verifies that consecutive ring vertices share exactly one
/// neighbor off the ring, and rejects any position whose residual set would
/// need all four colors.
pub fn residual_sets(
    g_minus_v: &RotationGraph,
    ring: &Ring,
    coloring_of_g1: &Coloring,
) -> Result<ResidualSets, RingError> {
    for v in g_minus_v.vertices() {
        let colored = coloring_of_g1.get(v).is_some();
        if ring.contains(v) {
            if colored {
                return Err(RingError::DomainMismatch {
                    vertex: v,
                    reason: "ring vertex must be uncolored",
                });
            }
        } else if !colored {
            return Err(RingError::DomainMismatch {
                vertex: v,
                reason: "vertex off the ring must be colored",
            });
        }
    }
    let d = ring.d();
    let mut sets = Vec::with_capacity(d);
    for (i, &vi) in ring.cycle().iter().enumerate() {
        let mut set = ColorSet::EMPTY;
        for &x in g_minus_v.rotation(vi) {
            if ring.contains(x) {
                continue;
            }
            let c = coloring_of_g1.get(x).expect("domain checked above");
            if c > 4 {
                return Err(RingError::FifthColor { vertex: x });
            }
            set.insert(c);
        }
        if set.len() == 4 {
            return Err(RingError::ResidualSaturated { position: i });
        }
        if set.is_empty() && d >= 4 {
            log::warn!(
                "empty residual set at ring position {i} (vertex {vi}); degree({vi}) <= 3 contradicts a minimum-degree center"
            );
        }
        sets.push(set);
    }
    if d >= 3 {
        for i in 0..d {
            let (a, b) = (ring.cycle()[i], ring.cycle()[(i + 1) % d]);
            let common = g_minus_v
                .rotation(a)
                .iter()
                .filter(|&&x| !ring.contains(x) && g_minus_v.has_edge(b, x))
                .count();
            if common != 1 {
                return Err(RingError::SharedNeighborNotUnique { a, b, count: common });
            }
            // the shared neighbor's color lands in both sets
            debug_assert!(sets[i].intersects(sets[(i + 1) % d]));
        }
    }
    Ok(ResidualSets::new(sets))
}

/// Proper list-coloring of the d-cycle with `color(v_i)` drawn from
/// `palette \ R_i`: fix the first position, sweep with backtracking in
/// ascending color order, check closure. Returns the lexicographically
/// smallest solution, or `None`.
pub fn ring_list_color(sets: &ResidualSets, palette: ColorSet) -> Option<Vec<u8>> {
    let d = sets.d();
    let allowed: Vec<ColorSet> = (0..d)
        .map(|i| ColorSet::from_mask(palette.mask() & !sets.get(i).mask()))
        .collect();
    let mut chosen = vec![0u8; d];
    fn sweep(allowed: &[ColorSet], chosen: &mut [u8], pos: usize) -> bool {
        let d = allowed.len();
        if pos == d {
            return d < 2 || chosen[d - 1] != chosen[0];
        }
        for c in allowed[pos].iter() {
            if pos > 0 && chosen[pos - 1] == c {
                continue;
            }
            if pos == d - 1 && d > 2 && chosen[0] == c {
                continue;
            }
            chosen[pos] = c;
            if sweep(allowed, chosen, pos + 1) {
                return true;
            }
        }
        false
    }
    if sweep(&allowed, &mut chosen, 0) {
        Some(chosen)
    } else {
        None
    }
}

/// Tries the four 3-color palettes `{1,2,3,4} \ {c}` for `c = 4, 3, 2, 1` and
/// returns the first `(excluded_color, ring coloring)` that works.
pub fn ring_three_colorable(sets: &ResidualSets) -> Option<(u8, Vec<u8>)> {
    for excluded in (1..=4u8).rev() {
        let palette = ColorSet::ALL.remove(excluded);
        if let Some(coloring) = ring_list_color(sets, palette) {
            return Some((excluded, coloring));
        }
    }
    None
}

/// All contraction plans for a ring of length `d`: the whole-ring collapse
/// first, then non-adjacent edge pairs (five for d=5; for d=4 the two
/// opposite pairs, flagged ring-degenerate and ordered last).
pub fn enumerate_plans(d: usize) -> Vec<ContractionPlan> {
    let mut plans = vec![ContractionPlan {
        kind: PlanKind::WholeRing,
        ring_degenerate: false,
    }];
    if d >= 4 {
        for i in 0..d {
            for j in i + 1..d {
                let adjacent = (j + d - i) % d == 1 || (i + d - j) % d == 1;
                if adjacent {
                    continue;
                }
                plans.push(ContractionPlan {
                    kind: PlanKind::EdgePair { i, j },
                    ring_degenerate: d == 4,
                });
            }
        }
    }
    plans.sort_by_key(|p| p.ring_degenerate);
    plans
}

/// Applies a plan to `G - v`: repeated [`RotationGraph::contract_edge`] along
/// the chosen ring edges. The merge map is the identity off the ring.
pub fn apply_plan(
    g_minus_v: &RotationGraph,
    ring: &Ring,
    plan: &ContractionPlan,
) -> Result<(RotationGraph, MergeMap), RingError> {
    let d = ring.d();
    let cycle = ring.cycle();
    match plan.kind {
        PlanKind::WholeRing => {
            if d < 2 {
                return Err(RingError::InvalidPlan { d });
            }
            let mut g = g_minus_v.clone();
            let mut map = MergeMap::identity(g_minus_v.slot_count());
            let survivor = cycle[0];
            for &w in &cycle[1..] {
                let (next, step) = g.contract_edge(survivor, w)?;
                g = next;
                map = map.then(&step);
            }
            Ok((g, map))
        }
        PlanKind::EdgePair { i, j } => {
            if i >= d || j >= d || i == j {
                return Err(RingError::InvalidPlan { d });
            }
            let (a1, b1) = (cycle[i], cycle[(i + 1) % d]);
            let (a2, b2) = (cycle[j], cycle[(j + 1) % d]);
            let (g1, m1) = g_minus_v.contract_edge(a1, b1)?;
            let (g2, m2) = g1.contract_edge(a2, b2)?;
            Ok((g2, m1.then(&m2)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorer::Coloring;
    use crate::workbench::fixtures::{gen_fixture, Fixture};

    fn set(colors: &[u8]) -> ColorSet {
        ColorSet::from_colors(colors)
    }

    fn residuals(sets: &[&[u8]]) -> ResidualSets {
        ResidualSets::new(sets.iter().map(|s| set(s)).collect())
    }

    /// Independent oracle: enumerate every palette^d assignment recursively.
    fn brute_force_ring(sets: &ResidualSets, palette: ColorSet) -> Option<Vec<u8>> {
        let d = sets.d();
        let colors: Vec<u8> = palette.iter().collect();
        let mut best: Option<Vec<u8>> = None;
        let mut cur = vec![0u8; d];
        fn rec(
            colors: &[u8],
            sets: &ResidualSets,
            cur: &mut Vec<u8>,
            pos: usize,
            best: &mut Option<Vec<u8>>,
        ) {
            let d = sets.d();
            if best.is_some() {
                return; // first found in ascending order is lexicographic min
            }
            if pos == d {
                for i in 0..d {
                    let j = (i + 1) % d;
                    if d > 1 && i != j && cur[i] == cur[j] {
                        return;
                    }
                }
                *best = Some(cur.clone());
                return;
            }
            for &c in colors {
                if sets.get(pos).contains(c) {
                    continue;
                }
                cur[pos] = c;
                rec(colors, sets, cur, pos + 1, best);
                cur[pos] = 0;
            }
        }
        rec(&colors, sets, &mut cur, 0, &mut best);
        best
    }

    #[test]
    fn dp_matches_spec_examples() {
        let sets = residuals(&[&[1, 3], &[2, 3], &[1, 3], &[2, 3]]);
        assert_eq!(
            ring_list_color(&sets, set(&[1, 2, 3])),
            Some(vec![2, 1, 2, 1])
        );

        let sets = residuals(&[&[1, 2], &[1, 2], &[1, 2], &[1, 2], &[1, 2]]);
        assert_eq!(ring_list_color(&sets, set(&[1, 2, 3])), None);

        let sets = residuals(&[&[], &[], &[], &[]]);
        assert_eq!(ring_list_color(&sets, set(&[1, 2])), Some(vec![1, 2, 1, 2]));
    }

    #[test]
    fn dp_agrees_with_brute_force_on_all_d4_tuples() {
        // every residual tuple over subsets of {1,2,3,4}, full palette plus
        // one 3-palette; the exhaustive palette sweep lives in acceptance
        for mask_tuple in 0..(16u32 * 16 * 16 * 16) {
            let sets = ResidualSets::new(
                (0..4)
                    .map(|i| ColorSet::from_mask(((mask_tuple >> (4 * i)) & 0xF) as u8))
                    .collect(),
            );
            for palette in [ColorSet::ALL, set(&[1, 2, 3])] {
                let dp = ring_list_color(&sets, palette);
                let bf = brute_force_ring(&sets, palette);
                assert_eq!(dp, bf, "sets {sets} palette {palette}");
            }
        }
    }

    #[test]
    fn three_colorable_spec_examples() {
        let sets = residuals(&[&[1, 2], &[2, 3], &[1, 3], &[1, 2], &[2, 3]]);
        let (excluded, coloring) = ring_three_colorable(&sets).expect("solvable");
        assert_eq!(excluded, 4);
        assert_eq!(coloring, vec![3, 1, 2, 3, 1]);

        // forced-four configuration: positions 0 and 2 are pinned to color 4
        let sets = residuals(&[&[1, 2, 3], &[1, 3], &[1, 2, 3], &[1, 2], &[2, 3]]);
        assert_eq!(ring_three_colorable(&sets), None);
        assert_eq!(
            ring_list_color(&sets, ColorSet::ALL),
            Some(vec![4, 2, 4, 3, 1])
        );

        let sets = residuals(&[&[1], &[1], &[1], &[1]]);
        let (excluded, coloring) = ring_three_colorable(&sets).expect("solvable");
        assert_eq!(excluded, 4);
        assert_eq!(coloring, vec![2, 3, 2, 3]);
    }

    #[test]
    fn plan_enumeration_counts() {
        let plans = enumerate_plans(5);
        assert_eq!(plans.len(), 6);
        assert_eq!(plans[0].kind, PlanKind::WholeRing);
        assert!(plans.iter().all(|p| !p.ring_degenerate));

        let plans = enumerate_plans(4);
        assert_eq!(plans.len(), 3);
        assert_eq!(plans[0].kind, PlanKind::WholeRing);
        assert_eq!(
            plans[1..]
                .iter()
                .map(|p| (p.kind, p.ring_degenerate))
                .collect::<Vec<_>>(),
            vec![
                (PlanKind::EdgePair { i: 0, j: 2 }, true),
                (PlanKind::EdgePair { i: 1, j: 3 }, true)
            ]
        );

        assert_eq!(enumerate_plans(3).len(), 1);
    }

    #[test]
    fn wheel_ring_is_rotation_order() {
        let g = gen_fixture(&Fixture::Wheel(5));
        let ring = neighbor_ring(&g, 0).unwrap();
        assert_eq!(ring.d(), 5);
        assert_eq!(ring.cycle(), g.rotation(0));
    }

    #[test]
    fn icosahedron_rings_are_cycles() {
        let g = gen_fixture(&Fixture::Icosahedron);
        for v in g.vertices() {
            let ring = neighbor_ring(&g, v).unwrap();
            assert_eq!(ring.d(), 5);
            // adjacency oracle: consecutive members really are adjacent
            for i in 0..5 {
                assert!(g.has_edge(ring.cycle()[i], ring.cycle()[(i + 1) % 5]));
            }
        }
    }

    #[test]
    fn missing_ring_edge_is_an_error() {
        // center 0 joined to a path 1-2-3-4 (no 4-1 edge)
        let g = RotationGraph::build(vec![
            vec![1, 2, 3, 4],
            vec![2, 0],
            vec![3, 0, 1],
            vec![4, 0, 2],
            vec![0, 3],
        ])
        .unwrap();
        match neighbor_ring(&g, 0) {
            Err(RingError::NotACycle { center: 0, a: 4, b: 1 }) => {}
            other => panic!("expected NotACycle, got {other:?}"),
        }
    }

    #[test]
    fn bipyramid_residuals_are_the_apex_color() {
        // W5 plus an apex adjacent to all ring vertices
        let g = gen_fixture(&Fixture::Bipyramid(5));
        // hub 0, rim 1..=5, apex 6
        let ring = neighbor_ring(&g, 0).unwrap();
        let g_minus = g.remove_vertex(0).unwrap();
        let mut coloring = Coloring::new(g.slot_count());
        coloring.set(6, 1);
        let sets = residual_sets(&g_minus, &ring, &coloring).unwrap();
        for i in 0..5 {
            assert_eq!(sets.get(i), set(&[1]));
        }
    }

    #[test]
    fn icosahedron_residuals_satisfy_invariants() {
        let g = gen_fixture(&Fixture::Icosahedron);
        let v = 0;
        let ring = neighbor_ring(&g, v).unwrap();
        let g_minus = g.remove_vertex(v).unwrap();
        let coloring = crate::oracle::exact_color_of_subset(
            &g_minus,
            &g_minus
                .vertices()
                .filter(|x| !ring.contains(*x))
                .collect::<Vec<_>>(),
            4,
        )
        .expect("G_1 of the icosahedron is 4-colorable");
        let sets = residual_sets(&g_minus, &ring, &coloring).unwrap();
        for i in 0..5 {
            assert!((1..=3).contains(&sets.get(i).len()), "R_{i} = {}", sets.get(i));
            assert!(sets.get(i).intersects(sets.get((i + 1) % 5)));
        }
    }

    #[test]
    fn saturated_residual_is_an_error() {
        // stacked triangulation: find a ring vertex with >= 4 off-ring
        // neighbors and force four distinct colors onto them
        let g = crate::workbench::gen::gen_random_triangulation(16, 11).unwrap();
        let v = g.min_degree_vertex();
        let ring = neighbor_ring(&g, v);
        let ring = match ring {
            Ok(r) => r,
            Err(_) => return, // unlucky seed shape; other seeds cover this
        };
        let g_minus = g.remove_vertex(v).unwrap();
        let busy = ring
            .cycle()
            .iter()
            .map(|&vi| {
                (
                    vi,
                    g_minus
                        .rotation(vi)
                        .iter()
                        .filter(|x| !ring.contains(**x))
                        .count(),
                )
            })
            .max_by_key(|&(_, k)| k);
        let Some((vi, k)) = busy else { return };
        if k < 4 {
            return;
        }
        let mut coloring = Coloring::new(g_minus.slot_count());
        let mut next = 1u8;
        for &x in g_minus.rotation(vi) {
            if !ring.contains(x) {
                coloring.set(x, next.min(4));
                next += 1;
            }
        }
        for x in g_minus.vertices() {
            if !ring.contains(x) && coloring.get(x).is_none() {
                coloring.set(x, 1);
            }
        }
        assert!(matches!(
            residual_sets(&g_minus, &ring, &coloring),
            Err(RingError::ResidualSaturated { .. })
        ));
    }

    #[test]
    fn whole_ring_plan_collapses_to_vc() {
        // pentagonal bipyramid: remove the hub, contract the rim
        let g = gen_fixture(&Fixture::Bipyramid(5));
        let ring = neighbor_ring(&g, 0).unwrap();
        let g_minus = g.remove_vertex(0).unwrap();
        let plan = ContractionPlan {
            kind: PlanKind::WholeRing,
            ring_degenerate: false,
        };
        let (h, map) = apply_plan(&g_minus, &ring, &plan).unwrap();
        assert_eq!(h.vertex_count(), 2);
        let vc = ring.cycle()[0];
        assert!(h.has_edge(vc, 6));
        for &r in ring.cycle() {
            assert_eq!(map.resolve(r), vc);
        }
        assert_eq!(map.resolve(6), 6);
    }

    #[test]
    fn edge_pair_plan_turns_ring_into_triangle() {
        let g = gen_fixture(&Fixture::Icosahedron);
        let ring = neighbor_ring(&g, 0).unwrap();
        let g_minus = g.remove_vertex(0).unwrap();
        let plan = ContractionPlan {
            kind: PlanKind::EdgePair { i: 0, j: 2 },
            ring_degenerate: false,
        };
        let (h, map) = apply_plan(&g_minus, &ring, &plan).unwrap();
        assert_eq!(h.vertex_count(), g_minus.vertex_count() - 2);
        let c = ring.cycle();
        let (m1, m2, v5) = (map.resolve(c[0]), map.resolve(c[2]), c[4]);
        assert!(h.has_edge(m1, m2));
        assert!(h.has_edge(m2, v5));
        assert!(h.has_edge(v5, m1));
        // identity off the ring
        assert!(map.is_identity_on(g_minus.vertices().filter(|v| !ring.contains(*v))));
    }
}
