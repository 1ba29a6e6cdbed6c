//! The inductive four-coloring recursion.
//!
//! Graphs of order at most four are colored directly. Otherwise the graph is
//! triangulated and either split along a separating triangle (the two sides
//! are colored independently and merged by a color permutation), or a
//! minimum-degree vertex is removed. Degree at most three is immediate; for
//! degree four or five a ladder of strategies searches for a coloring of
//! `G - v` whose neighbor ring spares a color for `v`:
//!
//!   S0  color `G - v` directly and re-solve the ring from residual sets;
//!   S1  collapse the whole ring and lift the coloring back;
//!   S2  contract non-adjacent ring edge pairs and lift;
//!   S3  Kempe chain swaps on `G - v` (not part of the inductive argument);
//!   S4  exact oracle search constrained to three ring colors, size-capped.
//!
//! Every attempt is recorded in a [`Trace`]; a [`TraceEvent::GapEvent`] marks
//! the places where S0-S2 all failed and only a fallback rescued the
//! coloring. If everything fails the graph is Kempe five-colored, so the
//! recursion always returns a verified proper coloring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{RotationGraph, Triangle, VertexId};
use crate::oracle;
use crate::ring::{
    apply_plan, enumerate_plans, neighbor_ring, residual_sets, ring_three_colorable, PlanKind,
    Ring, RingError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorerError {
    #[error("permutation alignment needs three pairwise distinct colors in 1..=4, got {0:?}")]
    BadTriple([u8; 3]),
}

/// Partial or total assignment of colors `1..=5` over a stable id space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Option<u8>>,
}

impl Coloring {
    pub fn new(slots: usize) -> Coloring {
        Coloring {
            colors: vec![None; slots],
        }
    }

    pub fn get(&self, v: VertexId) -> Option<u8> {
        self.colors.get(v as usize).copied().flatten()
    }

    pub fn set(&mut self, v: VertexId, color: u8) {
        debug_assert!((1..=5).contains(&color));
        self.colors[v as usize] = Some(color);
    }

    pub fn clear(&mut self, v: VertexId) {
        self.colors[v as usize] = None;
    }

    pub fn slots(&self) -> usize {
        self.colors.len()
    }

    /// Assigned `(vertex, color)` pairs, ascending by vertex.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v as VertexId, c)))
    }

    /// Largest color in use (0 when empty).
    pub fn palette_size(&self) -> u8 {
        self.iter().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut seen = [false; 6];
        for (_, c) in self.iter() {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    pub fn is_total_on(&self, g: &RotationGraph) -> bool {
        g.vertices().all(|v| self.get(v).is_some())
    }
}

/// Bijection on colors `1..=4`, fixing 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorPermutation {
    map: [u8; 6],
}

impl ColorPermutation {
    pub fn identity() -> ColorPermutation {
        ColorPermutation {
            map: [0, 1, 2, 3, 4, 5],
        }
    }

    pub fn apply(&self, color: u8) -> u8 {
        self.map[color as usize]
    }

    pub fn apply_to(&self, coloring: &Coloring) -> Coloring {
        Coloring {
            colors: coloring
                .colors
                .iter()
                .map(|c| c.map(|c| self.apply(c)))
                .collect(),
        }
    }
}

/// The permutation sending `src[k]` to `dst[k]` and the two leftover colors
/// of `{1,2,3,4}` to each other.
pub fn align_permutation(src: [u8; 3], dst: [u8; 3]) -> Result<ColorPermutation, ColorerError> {
    for t in [src, dst] {
        if t.iter().any(|c| !(1..=4).contains(c)) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2]
        {
            return Err(ColorerError::BadTriple(t));
        }
    }
    let mut map = [0u8; 6];
    map[5] = 5;
    for k in 0..3 {
        map[src[k] as usize] = dst[k];
    }
    let src_rest = (1..=4u8).find(|c| !src.contains(c)).unwrap();
    let dst_rest = (1..=4u8).find(|c| !dst.contains(c)).unwrap();
    map[src_rest as usize] = dst_rest;
    Ok(ColorPermutation { map })
}

/// Alignment over `1..=5` for the rare merge where a side came back from the
/// Kempe fallback with a fifth color on the shared triangle.
fn align_any(src: [u8; 3], dst: [u8; 3]) -> ColorPermutation {
    let mut map = [0u8; 6];
    for k in 0..3 {
        map[src[k] as usize] = dst[k];
    }
    let mut free: Vec<u8> = (1..=5u8).filter(|c| !dst.contains(c)).collect();
    for c in 1..=5u8 {
        if map[c as usize] == 0 {
            map[c as usize] = free.remove(0);
        }
    }
    ColorPermutation { map }
}

/// Strategy attempt and recursion budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on strategy attempts within one degree-4/5 node.
    pub attempts_per_call: u32,
    /// Largest `G - v` the exact-oracle strategy S4 will search.
    pub oracle_cap: usize,
    /// Global cap on strategy attempts for the whole run; `None` derives
    /// `64 * V` (at least 4096) at entry.
    pub global_attempts: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            attempts_per_call: 64,
            oracle_cap: 64,
            global_attempts: None,
        }
    }
}

/// Which rung of the ladder an attempt exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrategyKind {
    /// S0: the direct recursive coloring of `G - v`.
    Direct,
    /// S1: whole-ring contraction.
    WholeRing,
    /// S2: non-adjacent ring edge pair contraction.
    EdgePair { i: u8, j: u8, degenerate: bool },
    /// S3: Kempe chain swap targeting one ring vertex.
    KempeSwap { position: u8, other_color: u8 },
    /// S4: exact recoloring constrained to three ring colors.
    OracleRecolor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttemptOutcome {
    Success { excluded_color: u8 },
    ResidualSaturated { position: u32 },
    FifthColorInLift,
    RingNotThreeColorable,
    SwapLeftFourRingColors,
    OracleCapExceeded,
    OracleFoundNone,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEvent {
    BaseCase {
        vertices: u32,
    },
    SeparatingSplit {
        triangle: [VertexId; 3],
        inner: u32,
        outer: u32,
    },
    LowDegree {
        v: VertexId,
        degree: u32,
    },
    /// S0 finished without touching the ring: the direct recursive coloring
    /// already used at most three ring colors.
    RingDirect {
        v: VertexId,
    },
    StrategyAttempt {
        v: VertexId,
        strategy: StrategyKind,
        outcome: AttemptOutcome,
    },
    FallbackKempe {
        v: VertexId,
    },
    FallbackOracle {
        v: VertexId,
    },
    GapEvent {
        v: VertexId,
        details: String,
    },
}

/// Event counters, one field per kind plus per-strategy wins.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCounts {
    pub base_case: u64,
    pub separating_split: u64,
    pub low_degree: u64,
    pub ring_direct: u64,
    pub attempts_direct: u64,
    pub attempts_whole_ring: u64,
    pub attempts_edge_pair: u64,
    pub attempts_kempe_swap: u64,
    pub attempts_oracle: u64,
    pub wins_direct: u64,
    pub wins_whole_ring: u64,
    pub wins_edge_pair: u64,
    pub wins_kempe_swap: u64,
    pub wins_oracle: u64,
    pub fallback_kempe: u64,
    pub fallback_oracle: u64,
    pub gap_events: u64,
}

/// Complete audit of one `four_color` run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    counts: TraceCounts,
}

impl Trace {
    fn push(&mut self, event: TraceEvent) {
        match &event {
            TraceEvent::BaseCase { .. } => self.counts.base_case += 1,
            TraceEvent::SeparatingSplit { .. } => self.counts.separating_split += 1,
            TraceEvent::LowDegree { .. } => self.counts.low_degree += 1,
            TraceEvent::RingDirect { .. } => self.counts.ring_direct += 1,
            TraceEvent::StrategyAttempt {
                strategy, outcome, ..
            } => {
                let won = matches!(outcome, AttemptOutcome::Success { .. });
                match strategy {
                    StrategyKind::Direct => {
                        self.counts.attempts_direct += 1;
                        self.counts.wins_direct += won as u64;
                    }
                    StrategyKind::WholeRing => {
                        self.counts.attempts_whole_ring += 1;
                        self.counts.wins_whole_ring += won as u64;
                    }
                    StrategyKind::EdgePair { .. } => {
                        self.counts.attempts_edge_pair += 1;
                        self.counts.wins_edge_pair += won as u64;
                    }
                    StrategyKind::KempeSwap { .. } => {
                        self.counts.attempts_kempe_swap += 1;
                        self.counts.wins_kempe_swap += won as u64;
                    }
                    StrategyKind::OracleRecolor => {
                        self.counts.attempts_oracle += 1;
                        self.counts.wins_oracle += won as u64;
                    }
                }
            }
            TraceEvent::FallbackKempe { .. } => self.counts.fallback_kempe += 1,
            TraceEvent::FallbackOracle { .. } => self.counts.fallback_oracle += 1,
            TraceEvent::GapEvent { .. } => self.counts.gap_events += 1,
        }
        self.events.push(event);
    }

    pub fn counts(&self) -> &TraceCounts {
        &self.counts
    }

    pub fn gap_events(&self) -> u64 {
        self.counts.gap_events
    }

    pub fn used_kempe_fallback(&self) -> bool {
        self.counts.fallback_kempe > 0
    }
}

/// Four-colors a plane graph (five in the measured fallback cases).
///
/// Returns a coloring that has passed the independent verifier, together
/// with the full derivation trace. Deterministic for a given graph and
/// budget. Runs on a dedicated thread: deep stacked triangulations recurse
/// to depth `V`.
pub fn four_color(g: &RotationGraph, budget: &Budget) -> (Coloring, Trace) {
    let stack = (g.vertex_count() * 16 * 1024).clamp(16 << 20, 1 << 30);
    let g = g.clone();
    let budget = budget.clone();
    std::thread::Builder::new()
        .name("four-color".into())
        .stack_size(stack)
        .spawn(move || four_color_on_this_stack(&g, &budget))
        .expect("spawn colorer thread")
        .join()
        .expect("colorer thread panicked")
}

fn four_color_on_this_stack(g: &RotationGraph, budget: &Budget) -> (Coloring, Trace) {
    let global = budget
        .global_attempts
        .unwrap_or_else(|| (64 * g.vertex_count() as u64).max(4096));
    let mut ctx = Ctx {
        budget,
        trace: Trace::default(),
        attempts_left: global,
    };
    let coloring = ctx.color_any(g);
    let report = oracle::verify(g, &coloring).expect("coloring is total");
    assert!(
        report.proper,
        "internal: colorer produced an improper coloring at edge {:?}",
        report.violating_edge
    );
    assert!(
        coloring.palette_size() <= 4 || ctx.trace.used_kempe_fallback(),
        "internal: fifth color without a recorded Kempe fallback"
    );
    (coloring, ctx.trace)
}

struct Ctx<'a> {
    budget: &'a Budget,
    trace: Trace,
    attempts_left: u64,
}

impl Ctx<'_> {
    /// Colors any connected plane graph; triangulates first when needed.
    fn color_any(&mut self, g: &RotationGraph) -> Coloring {
        if g.vertex_count() <= 4 {
            self.trace.push(TraceEvent::BaseCase {
                vertices: g.vertex_count() as u32,
            });
            let mut coloring = Coloring::new(g.slot_count());
            for (k, v) in g.vertices().enumerate() {
                coloring.set(v, k as u8 + 1);
            }
            return coloring;
        }
        if g.is_maximal() {
            self.color_maximal(g)
        } else {
            let t = g.triangulate().expect("connected graph with V >= 3");
            self.color_maximal(&t.graph)
        }
    }

    fn color_maximal(&mut self, g: &RotationGraph) -> Coloring {
        let v = g.min_degree_vertex();
        let d = g.degree(v);
        if d <= 3 {
            return self.handle_low_degree_run(g);
        }
        if let Some(t) = g.find_separating_triangle() {
            return self.handle_case1(g, &t);
        }
        debug_assert!(d == 4 || d == 5, "maximal plane graph has min degree <= 5");
        self.handle_case2(g, v)
    }

    /// Peels consecutive minimum-degree vertices of degree at most three and
    /// greedily colors them back in reverse. Equivalent to removing them one
    /// recursion level at a time (same events, same colors), without
    /// rebuilding the graph per level; stacked triangulations peel down to
    /// the base case in one pass.
    fn handle_low_degree_run(&mut self, g: &RotationGraph) -> Coloring {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let slots = g.slot_count();
        let mut alive = vec![false; slots];
        let mut degree = vec![0usize; slots];
        for v in g.vertices() {
            alive[v as usize] = true;
            degree[v as usize] = g.degree(v);
        }
        let mut heap: BinaryHeap<Reverse<(usize, VertexId)>> = g
            .vertices()
            .map(|v| Reverse((degree[v as usize], v)))
            .collect();
        let mut peeled: Vec<VertexId> = Vec::new();
        let mut remaining = g.vertex_count();
        while remaining > 4 {
            let Some(&Reverse((d, v))) = heap.peek() else { break };
            if !alive[v as usize] || degree[v as usize] != d {
                heap.pop();
                continue;
            }
            if d > 3 {
                break;
            }
            heap.pop();
            self.trace.push(TraceEvent::LowDegree {
                v,
                degree: d as u32,
            });
            alive[v as usize] = false;
            remaining -= 1;
            for &w in g.rotation(v) {
                if alive[w as usize] {
                    degree[w as usize] -= 1;
                    heap.push(Reverse((degree[w as usize], w)));
                }
            }
            peeled.push(v);
        }
        let core = g
            .retain(|v| alive[v as usize])
            .expect("peeling a triangulation keeps it valid");
        let mut coloring = self.color_any(&core);
        for &v in peeled.iter().rev() {
            let free = smallest_free_color(g, v, &coloring);
            coloring.set(v, free);
        }
        coloring
    }

    fn handle_case1(&mut self, g: &RotationGraph, t: &Triangle) -> Coloring {
        let (gi, go) = g.split_on_triangle(t).expect("triangle is separating");
        self.trace.push(TraceEvent::SeparatingSplit {
            triangle: [t.a, t.b, t.c],
            inner: gi.vertex_count() as u32,
            outer: go.vertex_count() as u32,
        });
        let ci = self.color_any(&gi);
        let co = self.color_any(&go);
        let src = [t.a, t.b, t.c].map(|x| co.get(x).unwrap());
        let dst = [t.a, t.b, t.c].map(|x| ci.get(x).unwrap());
        let perm = if src.iter().chain(dst.iter()).all(|&c| c <= 4) {
            align_permutation(src, dst).expect("proper colorings give distinct triples")
        } else {
            align_any(src, dst)
        };
        let co = perm.apply_to(&co);
        let mut merged = ci;
        for x in go.vertices() {
            let c = co.get(x).unwrap();
            if let Some(existing) = merged.get(x) {
                debug_assert_eq!(existing, c, "triangle colors aligned");
            } else {
                merged.set(x, c);
            }
        }
        merged
    }

    fn handle_case2(&mut self, g: &RotationGraph, v: VertexId) -> Coloring {
        let ring = match neighbor_ring(g, v) {
            Ok(r) => r,
            Err(e) => unreachable!("maximal graph neighborhoods are cycles: {e}"),
        };
        let g_minus = g.remove_vertex(v).expect("triangulations are 3-connected");
        let mut attempts = self.budget.attempts_per_call;

        macro_rules! spend {
            () => {{
                if attempts == 0 || self.attempts_left == 0 {
                    false
                } else {
                    attempts -= 1;
                    self.attempts_left -= 1;
                    true
                }
            }};
        }

        // S0: direct recursive coloring of G - v
        let direct = self.color_any(&g_minus);
        if spend!() {
            let ring_colors = distinct_ring_colors(&ring, &direct);
            if ring_colors.len() <= 3 {
                self.trace.push(TraceEvent::RingDirect { v });
                self.trace.push(TraceEvent::StrategyAttempt {
                    v,
                    strategy: StrategyKind::Direct,
                    outcome: AttemptOutcome::Success {
                        excluded_color: smallest_free_color(g, v, &direct),
                    },
                });
                let mut coloring = direct.clone();
                coloring.set(v, smallest_free_color(g, v, &coloring));
                return coloring;
            }
            let (outcome, finished) = self.try_residual_finish(g, &g_minus, &ring, v, &direct);
            self.trace.push(TraceEvent::StrategyAttempt {
                v,
                strategy: StrategyKind::Direct,
                outcome,
            });
            if let Some(coloring) = finished {
                return coloring;
            }
        }

        // S1 and S2: contraction plans
        for plan in enumerate_plans(ring.d()) {
            if !spend!() {
                break;
            }
            let strategy = match plan.kind {
                PlanKind::WholeRing => StrategyKind::WholeRing,
                PlanKind::EdgePair { i, j } => StrategyKind::EdgePair {
                    i: i as u8,
                    j: j as u8,
                    degenerate: plan.ring_degenerate,
                },
            };
            match apply_plan(&g_minus, &ring, &plan) {
                Ok((contracted, merge)) => {
                    let sub = self.color_any(&contracted);
                    // lift: the merge map is the identity off the ring, so the
                    // contracted coloring restricted to G_1 ids is the lift
                    let mut g1 = Coloring::new(g_minus.slot_count());
                    for x in g_minus.vertices() {
                        if !ring.contains(x) {
                            g1.set(x, sub.get(merge.resolve(x)).unwrap());
                        }
                    }
                    let (outcome, finished) = self.try_residual_finish(g, &g_minus, &ring, v, &g1);
                    self.trace.push(TraceEvent::StrategyAttempt {
                        v,
                        strategy,
                        outcome,
                    });
                    if let Some(coloring) = finished {
                        return coloring;
                    }
                }
                Err(e) => unreachable!("plans enumerated for this ring always apply: {e}"),
            }
        }

        // S3: Kempe chain swaps on the direct coloring (not a paper step)
        let ring_colors = distinct_ring_colors(&ring, &direct);
        for position in 0..ring.d() {
            let vi = ring.cycle()[position];
            let ci = direct.get(vi).unwrap();
            for &other in &ring_colors {
                if other == ci {
                    continue;
                }
                if !spend!() {
                    break;
                }
                let strategy = StrategyKind::KempeSwap {
                    position: position as u8,
                    other_color: other,
                };
                let mut swapped = direct.clone();
                kempe_swap(&g_minus, &mut swapped, vi, ci, other);
                let outcome;
                let mut finished = None;
                let after = distinct_ring_colors(&ring, &swapped);
                if after.len() <= 3 {
                    let mut coloring = swapped;
                    coloring.set(v, smallest_free_color(g, v, &coloring));
                    outcome = AttemptOutcome::Success {
                        excluded_color: coloring.get(v).unwrap(),
                    };
                    finished = Some(coloring);
                } else {
                    outcome = AttemptOutcome::SwapLeftFourRingColors;
                }
                self.trace.push(TraceEvent::StrategyAttempt {
                    v,
                    strategy,
                    outcome,
                });
                if let Some(coloring) = finished {
                    self.trace.push(TraceEvent::GapEvent {
                        v,
                        details: format!(
                            "contraction strategies failed at {v}; Kempe swap at ring position {position} rescued the coloring"
                        ),
                    });
                    return coloring;
                }
            }
        }

        // S4: exact oracle, size-capped
        if spend!() {
            let (outcome, finished) = if g_minus.vertex_count() <= self.budget.oracle_cap {
                match oracle::constrained_recolor(&g_minus, &ring, 3, self.budget.oracle_cap) {
                    Ok(Some(recolored)) => {
                        let mut coloring = recolored;
                        coloring.set(v, smallest_free_color(g, v, &coloring));
                        (
                            AttemptOutcome::Success {
                                excluded_color: coloring.get(v).unwrap(),
                            },
                            Some(coloring),
                        )
                    }
                    Ok(None) => (AttemptOutcome::OracleFoundNone, None),
                    Err(_) => (AttemptOutcome::OracleCapExceeded, None),
                }
            } else {
                (AttemptOutcome::OracleCapExceeded, None)
            };
            self.trace.push(TraceEvent::StrategyAttempt {
                v,
                strategy: StrategyKind::OracleRecolor,
                outcome,
            });
            if let Some(coloring) = finished {
                self.trace.push(TraceEvent::FallbackOracle { v });
                self.trace.push(TraceEvent::GapEvent {
                    v,
                    details: format!("exact oracle recoloring rescued {v}"),
                });
                return coloring;
            }
        } else {
            self.trace.push(TraceEvent::StrategyAttempt {
                v,
                strategy: StrategyKind::OracleRecolor,
                outcome: AttemptOutcome::BudgetExhausted,
            });
        }

        let _ = attempts;
        // everything failed: Heawood's guarantee
        self.trace.push(TraceEvent::FallbackKempe { v });
        self.trace.push(TraceEvent::GapEvent {
            v,
            details: format!("all strategies exhausted at {v}; Kempe five-coloring the subgraph"),
        });
        oracle::kempe_five_color(g)
    }

    /// Residual-set path shared by S0, S1 and S2: derive `R_i` from a
    /// coloring of `G_1`, list-color the ring with three colors, give `v`
    /// the excluded one.
    fn try_residual_finish(
        &mut self,
        g: &RotationGraph,
        g_minus: &RotationGraph,
        ring: &Ring,
        v: VertexId,
        g1_coloring: &Coloring,
    ) -> (AttemptOutcome, Option<Coloring>) {
        let mut g1 = g1_coloring.clone();
        for &r in ring.cycle() {
            g1.clear(r);
        }
        let sets = match residual_sets(g_minus, ring, &g1) {
            Ok(s) => s,
            Err(RingError::ResidualSaturated { position }) => {
                return (
                    AttemptOutcome::ResidualSaturated {
                        position: position as u32,
                    },
                    None,
                )
            }
            Err(RingError::FifthColor { .. }) => return (AttemptOutcome::FifthColorInLift, None),
            Err(e) => unreachable!("case-2 rings satisfy the residual preconditions: {e}"),
        };
        match ring_three_colorable(&sets) {
            Some((excluded, ring_colors)) => {
                let mut coloring = g1;
                for (i, &r) in ring.cycle().iter().enumerate() {
                    coloring.set(r, ring_colors[i]);
                }
                coloring.set(v, excluded);
                debug_assert!(oracle::verify(g, &coloring).map_or(false, |r| r.proper));
                (
                    AttemptOutcome::Success {
                        excluded_color: excluded,
                    },
                    Some(coloring),
                )
            }
            None => (AttemptOutcome::RingNotThreeColorable, None),
        }
    }
}

fn distinct_ring_colors(ring: &Ring, coloring: &Coloring) -> Vec<u8> {
    let mut colors: Vec<u8> = ring
        .cycle()
        .iter()
        .filter_map(|&r| coloring.get(r))
        .collect();
    colors.sort_unstable();
    colors.dedup();
    colors
}

/// Smallest color of `1..=4` absent from the colored neighbors of `v`, or 5.
fn smallest_free_color(g: &RotationGraph, v: VertexId, coloring: &Coloring) -> u8 {
    let mut used = [false; 6];
    for &w in g.rotation(v) {
        if let Some(c) = coloring.get(w) {
            used[c as usize] = true;
        }
    }
    (1..=5u8).find(|&c| !used[c as usize]).expect("five colors suffice for a planar neighborhood")
}

/// Two-color chain swap: flips colors `a`/`b` on the connected component of
/// `start` in the subgraph induced by those two color classes.
pub(crate) fn kempe_swap(
    g: &RotationGraph,
    coloring: &mut Coloring,
    start: VertexId,
    a: u8,
    b: u8,
) {
    debug_assert_eq!(coloring.get(start), Some(a));
    let mut stack = vec![start];
    let mut member = vec![false; g.slot_count()];
    member[start as usize] = true;
    while let Some(x) = stack.pop() {
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
    for (x, is_member) in member.iter().enumerate() {
        if *is_member {
            let c = coloring.get(x as VertexId).unwrap();
            coloring.set(x as VertexId, if c == a { b } else { a });
        }
    }
}
