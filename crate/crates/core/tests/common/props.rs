//! Property checks shared by the proptest suites and the acceptance run.

use locvol::interval::{default_width, nth_root};
use locvol::scalar::{int, pow, rat};
use locvol::surface::{DualGraph, GraphEdge};
use locvol::toric::{RayTag, ToricDatum, ToricDivisor};
use locvol::Rational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{octant_two_interior, random_graph, random_rational, wedge_two_interior};

fn datum(rng: &mut ChaCha8Rng) -> ToricDatum {
    if rng.gen_bool(0.5) {
        wedge_two_interior()
    } else {
        octant_two_interior()
    }
}

/// A random divisor with coefficients in `[-2, 2]` on one of the two fixtures.
pub fn random_divisor(rng: &mut ChaCha8Rng) -> ToricDivisor {
    let d = datum(rng);
    let coeffs = (0..d.rays().len()).map(|_| random_rational(rng, -2, 2)).collect();
    ToricDivisor::new(d, coeffs).unwrap()
}

/// `vol(kD) = kⁿ·vol(D)` for `k ∈ {1, 2, 3}`.
pub fn homogeneity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let d = random_divisor(rng);
    let v = d.local_volume().map_err(|e| e.to_string())?;
    for k in 1..=3 {
        let vk = d.scaled(&int(k)).local_volume().map_err(|e| e.to_string())?;
        if vk != pow(&int(k), 3) * &v {
            return Err(format!("{:?}: k={k} gives {vk}, base {v}", d.coeffs()));
        }
    }
    Ok(())
}

/// Raising an interior coefficient never increases the volume; raising a
/// boundary coefficient never decreases it. On a random graph, adding an
/// effective exceptional divisor never increases the volume.
pub fn monotonicity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let d = random_divisor(rng);
    let i = rng.gen_range(0..d.coeffs().len());
    let mut bumped = d.coeffs().to_vec();
    bumped[i] += random_rational(rng, 0, 2);
    let e = ToricDivisor::new(d.datum().clone(), bumped).unwrap();
    let (v0, v1) = (d.local_volume().map_err(|e| e.to_string())?, e.local_volume().map_err(|e| e.to_string())?);
    let ok = match d.datum().tags()[i] {
        RayTag::Interior => v1 <= v0,
        _ => v1 >= v0,
    };
    if !ok {
        return Err(format!("{:?} → {:?}: {v0} → {v1}", d.coeffs(), e.coeffs()));
    }

    let g = random_graph(rng, 5);
    let r = g.vertices().len();
    let base = g.log_canonical_intersections();
    let extra: Vec<Rational> = (0..r).map(|_| random_rational(rng, 0, 2)).collect();
    let m = g.intersection_matrix();
    let moved: Vec<Rational> =
        (0..r).map(|j| &base[j] + (0..r).map(|k| &m[j][k] * &extra[k]).sum::<Rational>()).collect();
    let (w0, w1) = (g.divisor_local_volume(&base).unwrap(), g.divisor_local_volume(&moved).unwrap());
    if w1 > w0 {
        return Err(format!("graph {g:?} with {extra:?}: {w0} → {w1}"));
    }
    Ok(())
}

/// For divisors supported on interior rays the cube root of the volume is
/// convex along segments; a certified violation is a failure.
pub fn log_convexity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let d = datum(rng);
    let interior = d.interior_indices();
    let mut pick = || -> Vec<Rational> {
        let mut c = vec![int(0); d.rays().len()];
        for &i in &interior {
            c[i] = random_rational(rng, -2, 0);
        }
        c
    };
    let (c1, c2) = (pick(), pick());
    let mid: Vec<Rational> = c1.iter().zip(&c2).map(|(a, b)| (a + b) * rat(1, 2)).collect();
    let vol = |c: &Vec<Rational>| ToricDivisor::new(d.clone(), c.clone()).unwrap().local_volume().unwrap();
    let n = d.dim();
    let w = default_width();
    let lhs = nth_root(&vol(&mid), n, &w);
    let rhs = (nth_root(&vol(&c1), n, &w) + nth_root(&vol(&c2), n, &w)).scale(&rat(1, 2));
    if rhs.certainly_less(&lhs) {
        return Err(format!("{c1:?} and {c2:?}: {lhs:?} above {rhs:?}"));
    }
    Ok(())
}

/// The decomposition is orthogonal, and relabelling the vertices permutes it.
pub fn zariski(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = random_graph(rng, 6);
    let r = g.vertices().len();
    let d: Vec<Rational> = (0..r).map(|_| random_rational(rng, -3, 3)).collect();
    let zd = g.zariski_decompose(&d).map_err(|e| e.to_string())?;
    let m = g.intersection_matrix();
    for j in 0..r {
        let pj: Rational = (0..r).map(|i| &m[j][i] * &zd.positive[i]).sum();
        if pj < int(0) || zd.negative[j] < int(0) || (zd.negative[j] > int(0) && pj != int(0)) {
            return Err(format!("{g:?} {d:?}: vertex {j} has P·E = {pj}, N = {}", zd.negative[j]));
        }
    }

    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    // vertex i moves to position perm[i]
    let mut vertices = g.vertices().to_vec();
    let mut dp = d.clone();
    for i in 0..r {
        vertices[perm[i]] = g.vertices()[i].clone();
        dp[perm[i]] = d[i].clone();
    }
    let edges = g.edges().iter().map(|e| GraphEdge { i: perm[e.i], j: perm[e.j], multiplicity: e.multiplicity }).collect();
    let h = DualGraph::new(vertices, edges).unwrap();
    let zh = h.zariski_decompose(&dp).unwrap();
    for i in 0..r {
        if zh.negative[perm[i]] != zd.negative[i] || zh.positive[perm[i]] != zd.positive[i] {
            return Err(format!("{g:?} permuted by {perm:?}"));
        }
    }
    if h.singularity_volume().unwrap() != g.singularity_volume().unwrap() {
        return Err(format!("{g:?}: volume changed under {perm:?}"));
    }
    Ok(())
}
