//! Canonical embeddings of the named instances.

use std::str::FromStr;

use thiserror::Error;

use crate::graph::{RotationGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}; known: k4, octahedron, icosahedron, errera, glued-k4s, wheel(d), bipyramid(d)")]
    Unknown(String),
    #[error("fixture parameter out of range: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    K4,
    Octahedron,
    Icosahedron,
    /// The 17-vertex triangulation that defeats Kempe's recoloring argument:
    /// two poles, three pentagon rings, antiprism bands. Five-fold symmetric,
    /// 5-connected, minimum degree 5.
    Errera,
    /// Hub plus a d-cycle rim; the outer face is the rim.
    Wheel(u32),
    /// Two K4s sharing a triangle; the smallest separating-triangle instance.
    GluedK4s,
    /// Two poles over one d-ring (d=4 is the octahedron).
    Bipyramid(u32),
}

impl FromStr for Fixture {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parametric = |name: &str| -> Option<Result<u32, FixtureError>> {
            let rest = s.strip_prefix(name)?;
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                inner
                    .parse::<u32>()
                    .map_err(|_| FixtureError::BadParameter(inner.to_string())),
            )
        };
        match s {
            "k4" => Ok(Fixture::K4),
            "octahedron" => Ok(Fixture::Octahedron),
            "icosahedron" => Ok(Fixture::Icosahedron),
            "errera" => Ok(Fixture::Errera),
            "glued-k4s" => Ok(Fixture::GluedK4s),
            _ => {
                if let Some(d) = parametric("wheel") {
                    return Ok(Fixture::Wheel(d?));
                }
                if let Some(d) = parametric("bipyramid") {
                    return Ok(Fixture::Bipyramid(d?));
                }
                Err(FixtureError::Unknown(s.to_string()))
            }
        }
    }
}

/// Builds the canonical embedding of a named fixture.
pub fn gen_fixture(fixture: &Fixture) -> RotationGraph {
    match *fixture {
        Fixture::K4 => RotationGraph::from_oriented_faces(
            4,
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 1],
                vec![1, 3, 2],
            ],
        )
        .expect("static fixture"),
        Fixture::Octahedron => drum(4, 1),
        Fixture::Bipyramid(d) => {
            assert!(d >= 3, "bipyramid needs a ring of length >= 3");
            drum(d as usize, 1)
        }
        Fixture::Icosahedron => drum(5, 2),
        Fixture::Errera => drum(5, 3),
        Fixture::Wheel(d) => {
            assert!(d >= 3, "wheel needs a rim of length >= 3");
            let d = d as usize;
            let rim = |i: usize| (1 + i % d) as VertexId;
            let mut faces: Vec<Vec<VertexId>> =
                (0..d).map(|i| vec![0, rim(i), rim(i + 1)]).collect();
            faces.push((0..d).rev().map(rim).collect());
            RotationGraph::from_oriented_faces(d + 1, &faces).expect("static fixture")
        }
        Fixture::GluedK4s => RotationGraph::from_oriented_faces(
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
        .expect("static fixture"),
    }
}

/// Glues two plane graphs along triangular faces: face `fa` of `a` is
/// identified with face `fb` of `b` (walks run opposite ways, so the glued
/// surface stays consistently oriented). Vertices of `b` keep fresh ids
/// after `a`'s id space; the shared triangle keeps `a`'s ids. The identified
/// triangle becomes separating whenever both sides carry interior vertices.
pub fn glue_on_faces(
    a: &RotationGraph,
    fa: usize,
    b: &RotationGraph,
    fb: usize,
) -> Result<RotationGraph, crate::graph::GraphError> {
    let wa = a.faces()[fa].boundary().to_vec();
    let wb = b.faces()[fb].boundary().to_vec();
    assert_eq!(wa.len(), 3, "glue faces must be triangles");
    assert_eq!(wb.len(), 3, "glue faces must be triangles");
    let a_slots = a.slot_count();
    // b's face walk maps onto a's walk reversed
    let mut relabel = vec![VertexId::MAX; b.slot_count()];
    relabel[wb[0] as usize] = wa[0];
    relabel[wb[1] as usize] = wa[2];
    relabel[wb[2] as usize] = wa[1];
    let mut next = a_slots as VertexId;
    for v in b.vertices() {
        if relabel[v as usize] == VertexId::MAX {
            relabel[v as usize] = next;
            next += 1;
        }
    }
    let mut faces: Vec<Vec<VertexId>> = Vec::new();
    for (i, f) in a.faces().iter().enumerate() {
        if i != fa {
            faces.push(f.boundary().to_vec());
        }
    }
    for (i, f) in b.faces().iter().enumerate() {
        if i != fb {
            faces.push(f.boundary().iter().map(|&v| relabel[v as usize]).collect());
        }
    }
    RotationGraph::from_oriented_faces(next as usize, &faces)
}

/// North pole, `rings` m-gon rings joined by antiprism bands, south pole.
fn drum(m: usize, rings: usize) -> RotationGraph {
    assert!(m >= 3 && rings >= 1);
    let north: VertexId = 0;
    let south: VertexId = (1 + rings * m) as VertexId;
    let at = |ring: usize, i: usize| (1 + ring * m + i % m) as VertexId;
    let mut faces: Vec<Vec<VertexId>> = Vec::with_capacity(2 * m + 2 * m * (rings - 1));
    for i in 0..m {
        faces.push(vec![north, at(0, i), at(0, i + 1)]);
    }
    for r in 0..rings - 1 {
        for i in 0..m {
            faces.push(vec![at(r, i + 1), at(r, i), at(r + 1, i + 1)]);
            faces.push(vec![at(r + 1, i), at(r + 1, i + 1), at(r, i)]);
        }
    }
    let last = rings - 1;
    for i in 0..m {
        faces.push(vec![south, at(last, i + 1), at(last, i)]);
    }
    RotationGraph::from_oriented_faces(2 + rings * m, &faces).expect("drum face structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn icosahedron_parameters() {
        let g = gen_fixture(&Fixture::Icosahedron);
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 30);
        assert!(g.vertices().all(|v| g.degree(v) == 5));
        assert!(g.is_maximal());
    }

    #[test]
    fn errera_parameters() {
        let g = gen_fixture(&Fixture::Errera);
        assert_eq!(g.vertex_count(), 17);
        assert_eq!(g.edge_count(), 45);
        assert!(g.is_maximal());
        assert_eq!(g.vertices().map(|v| g.degree(v)).min(), Some(5));
        // degree profile: twelve 5s (poles and outer rings), five 6s (middle)
        let sixes = g.vertices().filter(|&v| g.degree(v) == 6).count();
        assert_eq!(sixes, 5);
        // no separating triangle: Kempe counterexamples are 5-connected
        assert!(g.find_separating_triangle().is_none());
        // 4-colorable per the exact oracle
        assert!(oracle::exact_color(&g, 4).unwrap().is_some());
        assert!(oracle::exact_color(&g, 3).unwrap().is_none());
    }

    #[test]
    fn wheel_parameters() {
        let g = gen_fixture(&Fixture::Wheel(5));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.faces().iter().filter(|f| f.len() == 5).count(), 1);
    }

    #[test]
    fn fixture_names_parse() {
        assert_eq!("k4".parse::<Fixture>().unwrap(), Fixture::K4);
        assert_eq!("wheel(7)".parse::<Fixture>().unwrap(), Fixture::Wheel(7));
        assert_eq!(
            "bipyramid(5)".parse::<Fixture>().unwrap(),
            Fixture::Bipyramid(5)
        );
        assert!("dodecahedron".parse::<Fixture>().is_err());
        assert!("wheel(x)".parse::<Fixture>().is_err());
    }

    #[test]
    fn gluing_two_octahedra_creates_a_separating_triangle() {
        let a = gen_fixture(&Fixture::Octahedron);
        let b = gen_fixture(&Fixture::Octahedron);
        let fa = a.faces().iter().position(|f| f.len() == 3).unwrap();
        let g = glue_on_faces(&a, fa, &b, fa).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 3 * 9 - 6);
        assert!(g.is_maximal());
        assert_eq!(g.vertices().map(|v| g.degree(v)).min(), Some(4));
        let t = g.find_separating_triangle().expect("shared triangle");
        assert!(t.separating);
    }

    #[test]
    fn octahedron_equals_bipyramid4() {
        let a = gen_fixture(&Fixture::Octahedron);
        let b = gen_fixture(&Fixture::Bipyramid(4));
        assert_eq!(a.vertex_count(), b.vertex_count());
        assert_eq!(a.edge_count(), b.edge_count());
    }
}
