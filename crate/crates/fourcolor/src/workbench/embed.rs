//! Plane embedding of small abstract graphs.
//!
//! Maximal inputs (E = 3V - 6) embed directly through the rigid link-cycle
//! reconstruction. Anything else goes through an exhaustive search over
//! per-vertex cyclic orders, which is why callers cap it at ten vertices.

use crate::graph::{RotationGraph, VertexId};

/// Finds a plane embedding of a connected simple abstract graph, or `None`
/// when none exists. Deterministic: the first embedding in lexicographic
/// rotation order wins.
pub fn embed_abstract(adj: &[Vec<VertexId>]) -> Option<RotationGraph> {
    let n = adj.len();
    let edges2: usize = adj.iter().map(|a| a.len()).sum();
    let e = edges2 / 2;
    if n >= 3 && e > 3 * n - 6 {
        return None;
    }
    if n >= 4 && e == 3 * n - 6 {
        // planar with the maximal edge count means maximal planar; the
        // embedding is unique up to reflection and the link method finds it
        return RotationGraph::from_triangulation_adjacency(adj).ok();
    }
    if n == 1 {
        return RotationGraph::build(vec![vec![]]).ok();
    }
    // exhaustive search over cyclic neighbor orders
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut rotations: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    search(adj, &order, 0, &mut rotations)
}

fn search(
    adj: &[Vec<VertexId>],
    order: &[usize],
    depth: usize,
    rotations: &mut Vec<Vec<VertexId>>,
) -> Option<RotationGraph> {
    if depth == order.len() {
        return RotationGraph::build(rotations.clone()).ok();
    }
    let v = order[depth];
    let mut nbrs = adj[v].clone();
    nbrs.sort_unstable();
    if nbrs.len() <= 2 {
        rotations[v] = nbrs;
        let found = search(adj, order, depth + 1, rotations);
        if found.is_some() {
            return found;
        }
        rotations[v].clear();
        return None;
    }
    // cyclic symmetry: pin the smallest neighbor first. For the first vertex
    // also quotient reflection: second element below the last.
    let first = nbrs[0];
    let rest: Vec<VertexId> = nbrs[1..].to_vec();
    let mut perm: Vec<usize> = (0..rest.len()).collect();
    loop {
        let candidate: Vec<VertexId> = std::iter::once(first)
            .chain(perm.iter().map(|&i| rest[i]))
            .collect();
        let mirror_ok = depth != 0 || candidate[1] < candidate[candidate.len() - 1];
        if mirror_ok {
            rotations[v] = candidate;
            let found = search(adj, order, depth + 1, rotations);
            if found.is_some() {
                return found;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    rotations[v].clear();
    None
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacency(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, w) in edges {
            adj[u as usize].push(w);
            adj[w as usize].push(u);
        }
        adj
    }

    #[test]
    fn embeds_k4() {
        let adj = adjacency(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let g = embed_abstract(&adj).expect("K4 is planar");
        assert_eq!(g.faces().len(), 4);
    }

    #[test]
    fn embeds_c4_and_octahedron() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let g = embed_abstract(&adj).expect("C4 is planar");
        assert_eq!(g.faces().len(), 2);

        let octa = adjacency(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
            ],
        );
        let g = embed_abstract(&octa).expect("octahedron is planar");
        assert_eq!(g.faces().len(), 8);
    }

    #[test]
    fn rejects_k5_by_edge_count() {
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for w in u + 1..5 {
                edges.push((u, w));
            }
        }
        assert!(embed_abstract(&adjacency(5, &edges)).is_none());
    }

    #[test]
    fn rejects_k33_by_search() {
        let edges: Vec<(u32, u32)> = (0..3u32)
            .flat_map(|u| (3..6u32).map(move |w| (u, w)))
            .collect();
        assert!(embed_abstract(&adjacency(6, &edges)).is_none());
    }

    #[test]
    fn embedding_is_deterministic() {
        let adj = adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let a = embed_abstract(&adj).unwrap();
        let b = embed_abstract(&adj).unwrap();
        let rots = |g: &RotationGraph| -> Vec<Vec<VertexId>> {
            g.vertices().map(|v| g.rotation(v).to_vec()).collect()
        };
        assert_eq!(rots(&a), rots(&b));
    }
}
