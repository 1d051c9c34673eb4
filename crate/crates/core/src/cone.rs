//! Volumes of cone singularities over polarized varieties `(V, H)`.
//!
//! With `n = dim V + 1`: `vol = n·∫₀^∞ vol(K − tH) dt`,
//! `vol_γ = n·∫₀^∞ vol(K + H − tH) dt` and `Vol = Mⁿ·H^{n−1}` where `M` is the
//! pseudo-effective threshold of `−K` against `H`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::lp::{self, LpOutcome, Sense};
use crate::poly::{PiecewiseError, PiecewisePoly, Polynomial};
use crate::scalar::{self, Field, Scalar};
use crate::surface::{negative_part, SurfaceError, SurfaceLattice};
use crate::symbolic::MultiPoly;
use crate::{QuadraticNumber, Rational, SequenceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("expected a class of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("h⁰ in degree {degree} is not determined without general_position")]
    SpecialRange { degree: i64 },
    #[error("threshold needs a square root outside the supported range")]
    IrrationalBreakpointUnsupported,
    #[error("the nef envelope hypothesis must be asserted for this model")]
    HypothesisNotAsserted,
    #[error("operation unsupported for this model: {0}")]
    UnsupportedModel(&'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}

impl ConeError {
    pub fn name(&self) -> &'static str {
        match self {
            ConeError::InvalidModel(_) => "InvalidModel",
            ConeError::DimensionMismatch { .. } => "DimensionMismatch",
            ConeError::SpecialRange { .. } => "SpecialRange",
            ConeError::IrrationalBreakpointUnsupported => "IrrationalBreakpointUnsupported",
            ConeError::HypothesisNotAsserted => "HypothesisNotAsserted",
            ConeError::UnsupportedModel(_) => "UnsupportedModel",
            ConeError::Surface(e) => e.name(),
            ConeError::Piecewise(_) => "Discontinuous",
        }
    }
}

pub type Result<T> = std::result::Result<T, ConeError>;

/// A polarized smooth projective variety given by its numerical data.
///
/// Classes are vectors: `[degree]` for `Curve` and `ProjSpace` (multiples of
/// `O(1)`), coordinates in the basis `(D, L)` for `AbelianCover`, and lattice
/// coordinates for `Lattice`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarizedModel {
    Curve { genus: u64, deg_h: u64, general_position: bool },
    ProjSpace { dim: usize, h: u64 },
    AbelianCover { d2: i64, dl: i64, l2: i64, cover_multiplier: i64 },
    Lattice { surface: SurfaceLattice, canonical: Vec<i64>, polarization: Vec<i64>, assert_nef_envelope: bool },
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| scalar::int(x)).collect()
}

impl PolarizedModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(ConeError::InvalidModel(s.into()));
        match self {
            PolarizedModel::Curve { deg_h, .. } if *deg_h == 0 => bad("deg_H must be positive"),
            PolarizedModel::ProjSpace { dim, h } if *dim == 0 || *h == 0 => bad("dim and h must be positive"),
            PolarizedModel::AbelianCover { d2, dl, l2, cover_multiplier } => {
                if *d2 <= 0 || *dl <= 0 || *l2 <= 0 || *cover_multiplier <= 0 {
                    return bad("D2, DL, L2 and cover_multiplier must be positive");
                }
                if (*dl as i128) * (*dl as i128) < (*d2 as i128) * (*l2 as i128) {
                    return bad("discriminant DL² − D2·L2 is negative");
                }
                Ok(())
            }
            PolarizedModel::Lattice { surface, canonical, polarization, .. } => {
                for v in [canonical, polarization] {
                    if v.len() != surface.rank() {
                        return Err(ConeError::DimensionMismatch { expected: surface.rank(), got: v.len() });
                    }
                }
                let h = q(polarization);
                if !surface.pair(&h, &h).is_pos() {
                    return bad("H² must be positive");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `dim V`.
    pub fn base_dim(&self) -> usize {
        match self {
            PolarizedModel::Curve { .. } => 1,
            PolarizedModel::ProjSpace { dim, .. } => *dim,
            PolarizedModel::AbelianCover { .. } | PolarizedModel::Lattice { .. } => 2,
        }
    }

    /// Dimension `n` of the cone singularity.
    pub fn singularity_dim(&self) -> usize {
        self.base_dim() + 1
    }

    pub fn class_len(&self) -> usize {
        match self {
            PolarizedModel::Curve { .. } | PolarizedModel::ProjSpace { .. } => 1,
            PolarizedModel::AbelianCover { .. } => 2,
            PolarizedModel::Lattice { surface, .. } => surface.rank(),
        }
    }

    pub fn canonical(&self) -> Vec<Rational> {
        match self {
            PolarizedModel::Curve { genus, .. } => vec![scalar::int(2 * *genus as i64 - 2)],
            PolarizedModel::ProjSpace { dim, .. } => vec![scalar::int(-(*dim as i64) - 1)],
            PolarizedModel::AbelianCover { .. } => q(&[1, 0]),
            PolarizedModel::Lattice { canonical, .. } => q(canonical),
        }
    }

    pub fn polarization(&self) -> Vec<Rational> {
        match self {
            PolarizedModel::Curve { deg_h, .. } => vec![scalar::int(*deg_h as i64)],
            PolarizedModel::ProjSpace { h, .. } => vec![scalar::int(*h as i64)],
            PolarizedModel::AbelianCover { .. } => q(&[0, 1]),
            PolarizedModel::Lattice { polarization, .. } => q(polarization),
        }
    }

    /// Gram matrix and ample class of a round model.
    fn round_form(&self) -> Option<(Matrix<Rational>, Vec<Rational>)> {
        match self {
            PolarizedModel::AbelianCover { d2, dl, l2, cover_multiplier: c } => {
                Some((vec![q(&[c * d2, c * dl]), q(&[c * dl, c * l2])], q(&[0, 1])))
            }
            PolarizedModel::Lattice { surface, .. } if surface.is_round() => {
                Some((surface.gram().clone(), surface.ample().to_vec()))
            }
            _ => None,
        }
    }

    /// `H^{dim V}`.
    pub fn top_self_intersection(&self) -> Rational {
        match self {
            PolarizedModel::Curve { deg_h, .. } => scalar::int(*deg_h as i64),
            PolarizedModel::ProjSpace { dim, h } => scalar::pow(&scalar::int(*h as i64), *dim),
            PolarizedModel::AbelianCover { l2, cover_multiplier, .. } => scalar::int(cover_multiplier * l2),
            PolarizedModel::Lattice { surface, polarization, .. } => {
                let h = q(polarization);
                surface.pair(&h, &h)
            }
        }
    }
}

fn lift(v: &[Rational]) -> Vec<QuadraticNumber> {
    v.iter().map(QuadraticNumber::from_rational).collect()
}

fn rpoly(c: Vec<Rational>) -> Polynomial<QuadraticNumber> {
    Polynomial::new(lift(&c))
}

/// `(A·H − s·√disc)/H²` with `disc = (A·H)² − A²·H²`, for `s = ±1`.
fn quadratic_root(ah: &Rational, hh: &Rational, disc: &Rational, s: i64) -> Result<QuadraticNumber> {
    let root = QuadraticNumber::sqrt_rational(disc).ok_or(ConeError::IrrationalBreakpointUnsupported)?;
    let a = QuadraticNumber::from_rational(&(ah / hh));
    Ok(a - root * QuadraticNumber::from_rational(&(scalar::int(s) / hh)))
}

/// `t ↦ vol(A − tH)` on a round model `{D² ≥ 0, D·a ≥ 0}`.
fn round_volume_function(
    gram: &Matrix<Rational>,
    ample: &[Rational],
    a: &[Rational],
    h: &[Rational],
) -> Result<PiecewisePoly<QuadraticNumber>> {
    let zero = QuadraticNumber::zero();
    let aa = linalg::bilinear(gram, a, a);
    let ah = linalg::bilinear(gram, a, h);
    let hh = linalg::bilinear(gram, h, h);
    if !hh.is_pos() || !linalg::bilinear(gram, h, ample).is_pos() {
        return Err(ConeError::InvalidModel("H must lie in the positive cone".into()));
    }
    if aa.is_negative() || linalg::bilinear(gram, a, ample).is_negative() {
        return Ok(PiecewisePoly::zero(zero));
    }
    let disc = &ah * &ah - &aa * &hh;
    if disc.is_negative() {
        return Err(ConeError::InvalidModel("intersection form is not hyperbolic".into()));
    }
    let t = quadratic_root(&ah, &hh, &disc, 1)?;
    // (A − tH)·a ≥ 0 and, for distinct roots, (A − sH)² < 0 between them
    let ha = QuadraticNumber::from_rational(&linalg::bilinear(gram, h, ample));
    let aa_ = QuadraticNumber::from_rational(&linalg::bilinear(gram, a, ample));
    assert!(!(aa_ - t.clone() * ha).is_neg(), "psef threshold left the positive nappe");
    if disc.is_positive() {
        let mid = &ah / &hh;
        assert!((&aa - scalar::int(2) * &mid * &ah + &mid * &mid * &hh).is_negative());
    }
    if t.is_zero() {
        return Ok(PiecewisePoly::zero(zero));
    }
    let piece = rpoly(vec![aa, scalar::int(-2) * ah, hh]);
    Ok(PiecewisePoly::new(vec![zero, t], vec![piece])?)
}

/// First-order jet `v + s·ε` ordered lexicographically; evaluates the
/// Zariski support just to the right of a point.
#[derive(Debug, Clone, PartialEq)]
struct Jet {
    v: Rational,
    s: Rational,
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, s: self.s + o.s }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, s: self.s - o.s }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet { s: &self.v * &o.s + &self.s * &o.v, v: self.v * o.v }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let v = &self.v / &o.v;
        let s = (&self.s * &o.v - &self.v * &o.s) / (&o.v * &o.v);
        Jet { v, s }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, s: -self.s }
    }
}

impl Zero for Jet {
    fn zero() -> Jet {
        Jet { v: Rational::zero(), s: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.s.is_zero()
    }
}

impl One for Jet {
    fn one() -> Jet {
        Jet { v: Rational::one(), s: Rational::zero() }
    }
}

impl PartialOrd for Jet {
    fn partial_cmp(&self, o: &Jet) -> Option<Ordering> {
        Some(self.v.cmp(&o.v).then(self.s.cmp(&o.s)))
    }
}

impl Scalar for Jet {
    fn from_rational(q: &Rational) -> Jet {
        Jet { v: q.clone(), s: Rational::zero() }
    }
}

impl Field for Jet {}

/// Root `t > t0` of the affine function with jet `j` at `t0`, if it decreases.
fn crossing(j: &Jet, t0: &Rational) -> Option<Rational> {
    (j.is_pos() && j.s.is_negative()).then(|| t0 - &j.v / &j.s)
}

fn lp_threshold(gens: &[Vec<Rational>], a: &[Rational], h: &[Rational], sense: Sense, sign: i64) -> LpOutcome<Rational> {
    // variables (λ, t): Σ λ_j g_j − sign·t·H = A, λ ≥ 0
    let k = gens.len();
    let mut cons: Vec<lp::Constraint<Rational>> = Vec::new();
    for i in 0..a.len() {
        let mut row: Vec<Rational> = gens.iter().map(|g| g[i].clone()).collect();
        row.push(scalar::int(-sign) * &h[i]);
        cons.push((row.clone(), a[i].clone()));
        cons.push((row.into_iter().map(|x| -x).collect(), -a[i].clone()));
    }
    for j in 0..k {
        let mut e = vec![Rational::zero(); k + 1];
        e[j] = Rational::one();
        cons.push((e, Rational::zero()));
    }
    let mut obj = vec![Rational::zero(); k + 1];
    obj[k] = Rational::one();
    lp::optimize(&obj, &cons, sense)
}

const MAX_CHAMBERS: usize = 4096;

/// `t ↦ vol(A − tH)` on a polyhedral lattice model, walking Zariski chambers.
fn lattice_volume_function(
    s: &SurfaceLattice,
    a: &[Rational],
    h: &[Rational],
) -> Result<PiecewisePoly<QuadraticNumber>> {
    let zero = QuadraticNumber::zero();
    if !crate::surface::in_cone(s.psef_generators(), a) {
        return Ok(PiecewisePoly::zero(zero));
    }
    let big_t = match lp_threshold(s.psef_generators(), a, h, Sense::Maximize, -1) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded => return Err(ConeError::InvalidModel("A − tH stays pseudo-effective".into())),
        LpOutcome::Infeasible => unreachable!("A is pseudo-effective"),
    };
    if !big_t.is_positive() {
        return Ok(PiecewisePoly::zero(zero));
    }
    let curves = s.negative_curves();
    let r = curves.len();
    let gram: Matrix<Rational> =
        curves.iter().map(|c| curves.iter().map(|e| s.pair(c, e)).collect()).collect();
    let jet_gram: Matrix<Jet> = gram.iter().map(|row| row.iter().map(Jet::from_rational).collect()).collect();
    let a_c: Vec<Rational> = curves.iter().map(|c| s.pair(a, c)).collect();
    let h_c: Vec<Rational> = curves.iter().map(|c| s.pair(h, c)).collect();

    let mut bps = vec![Rational::zero()];
    let mut pieces = Vec::new();
    let mut t0 = Rational::zero();
    while t0 < big_t {
        if pieces.len() >= MAX_CHAMBERS {
            return Err(ConeError::InvalidModel("too many Zariski chambers".into()));
        }
        let rhs: Vec<Jet> = (0..r).map(|k| Jet { v: &a_c[k] - &t0 * &h_c[k], s: -h_c[k].clone() }).collect();
        let x = negative_part(&jet_gram, &rhs)?;
        let mut next = big_t.clone();
        for k in 0..r {
            let pc = rhs[k].clone() - scalar::dot(&jet_gram[k], &x);
            for j in [&x[k], &pc] {
                if let Some(root) = crossing(j, &t0) {
                    next = next.min(root);
                }
            }
        }
        // P(t) = A − tH − Σ (v_k + s_k(t − t0)) C_k = p0 + t·p1
        let mut p0 = a.to_vec();
        let mut p1: Vec<Rational> = h.iter().map(|x| -x.clone()).collect();
        for (xk, c) in x.iter().zip(curves) {
            let c0 = &xk.v - &xk.s * &t0;
            for i in 0..p0.len() {
                p0[i] -= &c0 * &c[i];
                p1[i] -= &xk.s * &c[i];
            }
        }
        let piece = vec![s.pair(&p0, &p0), scalar::int(2) * s.pair(&p0, &p1), s.pair(&p1, &p1)];
        pieces.push(rpoly(piece));
        bps.push(next.clone());
        t0 = next;
    }
    Ok(PiecewisePoly::new(lift(&bps), pieces)?)
}

fn check_class(model: &PolarizedModel, v: &[Rational]) -> Result<()> {
    if v.len() == model.class_len() {
        Ok(())
    } else {
        Err(ConeError::DimensionMismatch { expected: model.class_len(), got: v.len() })
    }
}

/// Exact `t ↦ vol(A − tH)` for `t ≥ 0`.
pub fn volume_function(
    model: &PolarizedModel,
    a: &[Rational],
    h: &[Rational],
) -> Result<PiecewisePoly<QuadraticNumber>> {
    model.validate()?;
    check_class(model, a)?;
    check_class(model, h)?;
    let zero = QuadraticNumber::zero();
    match model {
        PolarizedModel::Curve { .. } | PolarizedModel::ProjSpace { .. } => {
            let (a0, h0) = (&a[0], &h[0]);
            if !h0.is_positive() {
                return Err(ConeError::InvalidModel("H must have positive degree".into()));
            }
            if !a0.is_positive() {
                return Ok(PiecewisePoly::zero(zero));
            }
            let end = QuadraticNumber::from_rational(&(a0 / h0));
            let piece = rpoly(vec![a0.clone(), -h0.clone()]).pow(model.base_dim() as u32);
            Ok(PiecewisePoly::new(vec![zero, end], vec![piece])?)
        }
        PolarizedModel::AbelianCover { .. } => {
            let (gram, ample) = model.round_form().expect("round model");
            round_volume_function(&gram, &ample, a, h)
        }
        PolarizedModel::Lattice { surface, .. } => {
            if surface.is_round() {
                if !surface.negative_curves().is_empty() {
                    return Err(ConeError::InvalidModel(
                        "negative curves need a polyhedral pseudo-effective cone".into(),
                    ));
                }
                round_volume_function(surface.gram(), surface.ample(), a, h)
            } else {
                lattice_volume_function(surface, a, h)
            }
        }
    }
}

fn integrated(model: &PolarizedModel, a: &[Rational]) -> Result<QuadraticNumber> {
    let f = volume_function(model, a, &model.polarization())?;
    Ok(f.integral() * QuadraticNumber::from_int(model.singularity_dim() as i64))
}

/// `vol(X, 0) = n·∫₀^∞ vol(K − tH) dt`.
pub fn cone_singularity_volume(model: &PolarizedModel) -> Result<QuadraticNumber> {
    integrated(model, &model.canonical())
}

/// `vol_γ(X, 0) = n·∫₀^∞ vol(K + H − tH) dt`.
pub fn cone_gamma_volume(model: &PolarizedModel) -> Result<QuadraticNumber> {
    let a: Vec<Rational> = model.canonical().iter().zip(model.polarization()).map(|(k, h)| k + h).collect();
    integrated(model, &a)
}

/// `M = min{t : −K + tH pseudo-effective}`.
pub fn bdff_threshold(model: &PolarizedModel) -> Result<QuadraticNumber> {
    model.validate()?;
    let k = model.canonical();
    let h = model.polarization();
    let neg_k: Vec<Rational> = k.iter().map(|x| -x.clone()).collect();
    match model {
        PolarizedModel::Curve { .. } | PolarizedModel::ProjSpace { .. } => {
            Ok(QuadraticNumber::from_rational(&(&k[0] / &h[0])))
        }
        PolarizedModel::Lattice { surface, assert_nef_envelope, .. } if !surface.is_round() => {
            if !surface.negative_curves().is_empty() && !assert_nef_envelope {
                return Err(ConeError::HypothesisNotAsserted);
            }
            match lp_threshold(surface.psef_generators(), &neg_k, &h, Sense::Minimize, 1) {
                LpOutcome::Optimal { value, .. } => Ok(QuadraticNumber::from_rational(&value)),
                LpOutcome::Infeasible => Err(ConeError::InvalidModel("−K + tH is never pseudo-effective".into())),
                LpOutcome::Unbounded => Err(ConeError::InvalidModel("−H is pseudo-effective".into())),
            }
        }
        _ => {
            if let PolarizedModel::Lattice { surface, .. } = model {
                if !surface.negative_curves().is_empty() {
                    return Err(ConeError::InvalidModel(
                        "negative curves need a polyhedral pseudo-effective cone".into(),
                    ));
                }
            }
            let (gram, ample) = model.round_form().expect("round model");
            let kk = linalg::bilinear(&gram, &neg_k, &neg_k);
            let kh = linalg::bilinear(&gram, &neg_k, &h);
            let hh = linalg::bilinear(&gram, &h, &h);
            // (−K + tH)² = kk + 2t·kh + t²·hh, roots (−kh ± √disc)/hh
            let disc = &kh * &kh - &kk * &hh;
            if disc.is_negative() {
                return Err(ConeError::InvalidModel("intersection form is not hyperbolic".into()));
            }
            let m = quadratic_root(&-kh, &hh, &disc, -1)?;
            let ka = QuadraticNumber::from_rational(&linalg::bilinear(&gram, &neg_k, &ample));
            let ha = QuadraticNumber::from_rational(&linalg::bilinear(&gram, &h, &ample));
            if (ka + m.clone() * ha).is_neg() {
                return Err(ConeError::InvalidModel("threshold root is not on the pseudo-effective side".into()));
            }
            Ok(m)
        }
    }
}

/// `Vol(X, 0) = Mⁿ·H^{n−1}` when `M ≥ 0`, else 0.
pub fn bdff_cone_volume(model: &PolarizedModel) -> Result<QuadraticNumber> {
    let m = bdff_threshold(model)?;
    if m.is_neg() {
        return Ok(QuadraticNumber::zero());
    }
    Ok(m.pow(model.singularity_dim()) * QuadraticNumber::from_rational(&model.top_self_intersection()))
}

/// `h⁰` of a degree-`deg` line bundle on a genus-`g` curve.
pub fn curve_h0(genus: u64, deg: i64, general_position: bool) -> Result<i64> {
    let g = genus as i64;
    if deg < 0 {
        Ok(0)
    } else if deg > 2 * g - 2 {
        Ok(deg + 1 - g)
    } else if general_position {
        Ok((deg + 1 - g).max(0))
    } else {
        Err(ConeError::SpecialRange { degree: deg })
    }
}

/// `λ_m = Σ_{k ≥ 1} h⁰(mK − kH)` for `m = 1..=m_max`, normalized by `n!/mⁿ`.
pub fn lambda_sequence(model: &PolarizedModel, m_max: u64) -> Result<Vec<SequenceEntry>> {
    model.validate()?;
    let n = model.singularity_dim();
    let nf = Rational::from_integer(scalar::factorial(n));
    let mut out = Vec::new();
    for m in 1..=m_max {
        let lambda: BigInt = match model {
            PolarizedModel::Curve { genus, deg_h, general_position } => {
                let top = (m as i64) * (2 * *genus as i64 - 2);
                let d = *deg_h as i64;
                let mut sum = BigInt::zero();
                let mut k = 1i64;
                while top - k * d >= 0 {
                    sum += curve_h0(*genus, top - k * d, *general_position)?;
                    k += 1;
                }
                sum
            }
            // mK − kH = O(−m(N+1) − kh) has no sections
            PolarizedModel::ProjSpace { .. } => BigInt::zero(),
            _ => return Err(ConeError::UnsupportedModel("λ_m needs a curve or projective space")),
        };
        let value = Rational::from_integer(lambda);
        let normalized = &value * &nf / scalar::pow(&scalar::int(m as i64), n);
        out.push(SequenceEntry { index: m, value, normalized });
    }
    Ok(out)
}

/// `L2·(3·∫₀^m 2(D2 − 2t·DL + t²·L2) dt) − ((4·D2·L2 − 4·DL²)·m + 2·DL·D2)`
/// reduced modulo `L2·m² = 2·DL·m − D2`, in the variables `(D2, DL, L2, m)`.
///
/// Zero exactly when the closed form of the abelian-cover volume holds.
pub fn abelian_cover_identity_residual() -> Option<MultiPoly> {
    let [d2, dl, l2, m] = [0, 1, 2, 3].map(MultiPoly::var);
    let c = |k: i64| MultiPoly::from_int(k);
    let closed = (c(4) * d2.clone() * l2 - c(4) * dl.clone() * dl.clone()) * m + c(2) * dl * d2;
    identity_residual(closed)
}

fn identity_residual(closed_times_l2: MultiPoly) -> Option<MultiPoly> {
    let [d2, dl, l2, m] = [0, 1, 2, 3].map(MultiPoly::var);
    let c = |k: i64| MultiPoly::from_int(k);
    let integrand = Polynomial::new(vec![c(2) * d2.clone(), c(-4) * dl.clone(), c(2) * l2.clone()]);
    let lhs = l2 * c(3) * integrand.integrate(&MultiPoly::zero(), &m);
    let relation = c(2) * dl * m - d2;
    (lhs - closed_times_l2).reduce(&[0, 0, 1, 2], &relation, 256)
}

impl fmt::Display for PolarizedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarizedModel::Curve { genus, deg_h, .. } => write!(f, "curve of genus {genus}, deg H = {deg_h}"),
            PolarizedModel::ProjSpace { dim, h } => write!(f, "P^{dim} with H = O({h})"),
            PolarizedModel::AbelianCover { d2, dl, l2, .. } => write!(f, "abelian cover D²={d2} D·L={dl} L²={l2}"),
            PolarizedModel::Lattice { surface, .. } => write!(f, "lattice surface of rank {}", surface.rank()),
        }
    }
}
