#![allow(dead_code)]

use locvol::cone::PolarizedModel;
use locvol::scalar::int;
use locvol::surface::{DualGraph, GraphEdge, GraphVertex, SurfaceLattice};
use locvol::toric::{ToricDatum, ToricDivisor};
use locvol::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub mod props;

pub const WEDGE_CONE: [[i64; 3]; 3] = [[0, 1, 0], [0, 0, 1], [1, 0, -2]];

/// Rays of the example cone: three boundary rays, `(1,1,1)` interior, `(1,0,0)` on a face.
pub fn wedge() -> ToricDatum {
    ToricDatum::from_i64(
        &WEDGE_CONE.map(|r| r.to_vec()),
        &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, -2], vec![1, 1, 1], vec![1, 0, 0]],
    )
    .unwrap()
}

/// `2D − tE` on [`wedge`], with `D` the ray `(1,0,−2)` and `E` the ray `(1,1,1)`.
pub fn two_d_minus(t: Rational) -> ToricDivisor {
    ToricDivisor::new(wedge(), vec![int(0), int(0), int(2), -t, int(0)]).unwrap()
}

/// The example cone refined by two interior rays.
pub fn wedge_two_interior() -> ToricDatum {
    ToricDatum::from_i64(
        &WEDGE_CONE.map(|r| r.to_vec()),
        &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, -2], vec![1, 1, 1], vec![1, 2, 1]],
    )
    .unwrap()
}

/// The first octant refined by two interior rays.
pub fn octant_two_interior() -> ToricDatum {
    ToricDatum::from_i64(
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 1]],
    )
    .unwrap()
}

/// Divisor supported on the last two rays of a five-ray datum.
pub fn exceptional(datum: &ToricDatum, a: Rational, b: Rational) -> ToricDivisor {
    ToricDivisor::new(datum.clone(), vec![int(0), int(0), int(0), a, b]).unwrap()
}

pub fn chain(k: usize) -> DualGraph {
    DualGraph::chain(&vec![-2; k]).unwrap()
}

fn tree(self_ints: &[i64], edges: &[(usize, usize)]) -> DualGraph {
    DualGraph::new(
        self_ints.iter().map(|&s| GraphVertex { self_int: s, genus: 0 }).collect(),
        edges.iter().map(|&(i, j)| GraphEdge { i, j, multiplicity: 1 }).collect(),
    )
    .unwrap()
}

pub fn d4() -> DualGraph {
    tree(&[-2; 4], &[(0, 1), (0, 2), (0, 3)])
}

pub fn e8() -> DualGraph {
    // center 0 with arms of lengths 1, 2 and 4
    tree(&[-2; 8], &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)])
}

pub fn ade_graphs() -> Vec<(String, DualGraph)> {
    let mut out: Vec<(String, DualGraph)> = (1..=5).map(|k| (format!("A{k}"), chain(k))).collect();
    out.push(("D4".into(), d4()));
    out.push(("E8".into(), e8()));
    out
}

pub fn curve_model(genus: u64, deg_h: u64) -> PolarizedModel {
    PolarizedModel::Curve { genus, deg_h, general_position: true }
}

pub fn abelian_model() -> PolarizedModel {
    PolarizedModel::AbelianCover { d2: 2, dl: 3, l2: 2, cover_multiplier: 2 }
}

pub fn p1_times_c() -> PolarizedModel {
    let s = SurfaceLattice::new(vec![vec![0, 1], vec![1, 0]], vec![2, -2], vec![1, 1], vec![], vec![vec![1, 0], vec![0, 1]])
        .unwrap();
    PolarizedModel::Lattice { surface: s, canonical: vec![2, -2], polarization: vec![1, 1], assert_nef_envelope: false }
}

/// A random negative-definite weighted tree with `2..=max_vertices` vertices.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> DualGraph {
    loop {
        let r = rng.gen_range(2..=max_vertices);
        let vertices: Vec<GraphVertex> =
            (0..r).map(|_| GraphVertex { self_int: rng.gen_range(-5..=-2), genus: rng.gen_range(0..=2) }).collect();
        let edges: Vec<GraphEdge> =
            (1..r).map(|j| GraphEdge { i: rng.gen_range(0..j), j, multiplicity: 1 }).collect();
        if let Ok(g) = DualGraph::new(vertices, edges) {
            return g;
        }
    }
}

/// A random rational in `[lo, hi]` with denominator at most 3.
pub fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=3);
    Rational::new(rng.gen_range(lo * den..=hi * den).into(), den.into())
}
