//! Causal structure of the AdS black hole: singularity detection, geodesic
//! crossing times, point classification, singular angles, horizon bisection,
//! dimensional induction and the AdS_2 reduction.
//!
//! The singular set is the union of the closed orbits of the Iwasawa groups,
//! and equivalently the vanishing locus of the norm of the fundamental field
//! of J1: a point [g] is singular iff `|pr_Q Ad(g^-1) J1| = 0`. A light-like
//! geodesic from [g] in direction E(w) meets the singular set at parameter s
//! exactly when the quadratic
//!
//! ```text
//! n(s) = a(E) s^2 + b(E) s + c,
//!   a(E) = -B(ad(E)X, sigma ad(E)X),
//!   b(E) = -2 B(X_Q, ad(E) X_H),
//!   c    =  B(X_Q, X_Q),            X = Ad(g^-1) J1,
//! ```
//!
//! vanishes; the cubic and quartic terms of `|pr_Q e^{-s ad E} X|^2` cancel
//! because `ad(E)^3 = 0` and the Killing form is ad-invariant, and the
//! implementation re-expands that Gram polynomial on every call to check the
//! cancellation numerically. A point is in the black hole when every scanned
//! direction has a crossing in the future (`s > 0`), free when some
//! direction escapes.
//!
//! Words and coordinates: a [`GroupWord`] built from [`PointCoords`] lists
//! the factors `(alpha.A, Z, x q0)` left to right, and the analyzer applies
//! their adjoint exponentials in reverse order, i.e. the operator used is
//! `e^{x ad q0} Ad(e^Z) Ad(e^alpha)`. This is the operator `Ad(g^-1)` of the
//! point `g = e^{-alpha} e^{-Z} e^{-x q0}`; parametrizing points by the
//! inverse factors keeps the published coefficient signs (the base-point
//! family yields `(cos^2 x - w2^2, -2 sin x cos x, sin^2 x)` at angle x).

pub mod ads2;
mod induction;

pub use ads2::{ads2_classify, ads2_roots, ads2_singularity_exact, Ads2Outcome};
pub use induction::{iota_coords, iota_element, iota_word, r_transport, rotation_generator, Transport};

use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp_group::{
    an_coefficients, apply_op, exp_ad, point_word, ANCoefficients, GroupWord, PointCoords,
};
use crate::lie_core::{Algebra, ElementF, Subspace};
use crate::reductive::{canonical_bases, lightlike_f, CanonicalBases};

/// Coefficients of the geodesic crossing quadratic, in raw Killing-form
/// units. The root set is the contract; overall positive rescaling of the
/// triple is immaterial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoeffs {
    pub fn scale(&self) -> f64 {
        1.0 + self.a.abs() + self.b.abs()
    }
}

/// Real crossing parameters of the quadratic, with degenerate cases spelled
/// out. `future_hit` means some root lies beyond the strictness threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct RootAnalysis {
    pub roots: Vec<f64>,
    /// a = b = c = 0: the geodesic lies inside the singular set.
    pub always_singular: bool,
    pub future_hit: bool,
}

/// Future orientation: crossings with s > FUTURE_EPS count as future hits.
pub const FUTURE_EPS: f64 = 1e-12;

/// Solve a s^2 + b s + c = 0 with full degenerate handling.
pub fn singular_times(q: &QuadraticCoeffs, tol: f64) -> RootAnalysis {
    let scale = q.scale().max(q.c.abs());
    let is0 = |v: f64| v.abs() <= tol * scale;
    let mut roots = Vec::new();
    let mut always = false;
    if is0(q.a) {
        if is0(q.b) {
            always = is0(q.c);
        } else {
            roots.push(-q.c / q.b);
        }
    } else {
        let mut disc = q.b * q.b - 4.0 * q.a * q.c;
        // Tangency directions make b^2 and 4ac cancel to rounding noise; a
        // double root (a genuine crossing) must not be lost to a tiny
        // negative discriminant. The coefficients themselves carry absolute
        // rounding error from the Killing sums, so the clamp scales with
        // their magnitudes, not with the cancelled difference.
        let m = q.a.abs().max(q.b.abs()).max(q.c.abs()).max(1.0);
        if disc < 0.0 && -disc <= 1e-11 * m * m {
            disc = 0.0;
        }
        if disc >= 0.0 {
            let sq = disc.sqrt();
            // Stable quadratic roots.
            let qq = -0.5 * (q.b + q.b.signum() * sq);
            let (r1, r2) = if qq == 0.0 {
                (0.0, 0.0)
            } else {
                (qq / q.a, q.c / qq)
            };
            roots.push(r1);
            if (r1 - r2).abs() > 0.0 {
                roots.push(r2);
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let future_hit = always || roots.iter().any(|s| *s > FUTURE_EPS);
    RootAnalysis { roots, always_singular: always, future_hit }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalClass {
    Singular,
    BlackHole,
    Free,
}

/// Which closed orbit a singular point sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "AN")]
    An,
    #[serde(rename = "ANktheta")]
    AnKtheta,
    #[serde(rename = "AbarN")]
    AbarN,
    #[serde(rename = "AbarNktheta")]
    AbarNKtheta,
}

/// Type I points sit on two closed orbits at once (the singular-angle curve
/// has two zeros); type II points see four distinct singular angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointType {
    I,
    II,
}

/// Classification record; serializes to the stable JSON interchange format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: CausalClass,
    /// The direction-independent constant coefficient c = B(X_Q, X_Q).
    pub c: f64,
    /// A w2 whose quadratic has no future crossing, when free.
    pub witness_w2: Option<f64>,
    pub branch: Option<Branch>,
    #[serde(rename = "type")]
    pub point_type: Option<PointType>,
    /// Diagnostic: largest variation of the quadratic coefficients over
    /// random full-sphere completions at fixed w2 (not part of the class
    /// decision, recorded for the w2-sufficiency reports).
    #[serde(skip)]
    pub w2_spread: f64,
}

/// Zeros of the singular-angle curve u sin(2x) + v cos(2x) - v on [0, 2pi).
#[derive(Clone, Debug, PartialEq)]
pub struct AngleStructure {
    pub angles: Vec<f64>,
    pub point_type: PointType,
    pub u: f64,
    pub v: f64,
}

/// The curve parameters (u, v) of an AN-point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveParams {
    pub u: f64,
    pub v: f64,
}

impl CurveParams {
    pub fn from_coefficients(c: &ANCoefficients) -> Self {
        Self { u: c.u(), v: c.v() }
    }

    /// n_P(x) = u sin(2x) + v cos(2x) - v.
    pub fn eval(&self, x: f64) -> f64 {
        self.u * (2.0 * x).sin() + self.v * (2.0 * x).cos() - self.v
    }
}

/// The causal analyzer for AdS_{n+1}; owns the algebra, the tangent bases
/// and the cached reference elements.
pub struct Analyzer {
    alg: Arc<Algebra>,
    bases: CanonicalBases,
    j1f: ElementF,
    /// Tangent basis lowered to binary64 once; the direction scan builds
    /// E(w) from these without revalidating nilpotency on every call.
    q_f: Vec<ElementF>,
}

/// Default classification grid (odd, so the scan contains w2 = 0).
pub const DEFAULT_GRID: usize = 257;
/// Default singularity tolerance: |c| <= tol * (1 + |a| + |b|).
pub const DEFAULT_TOL: f64 = 1e-9;

impl Analyzer {
    pub fn new(n: usize) -> Result<Self> {
        let alg = Algebra::get(n)?;
        let bases = canonical_bases(&alg)?;
        let j1f = bases.j1().to_f64();
        let q_f = bases.q.iter().map(|q| q.to_f64()).collect();
        Ok(Self { alg, bases, j1f, q_f })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn bases(&self) -> &CanonicalBases {
        &self.bases
    }

    pub fn word(&self, p: &PointCoords) -> Result<GroupWord> {
        point_word(&self.bases, p)
    }

    /// The adjoint operator of the word, factors applied in reverse order
    /// (see the module docs for the orientation convention).
    pub fn point_operator(&self, word: &GroupWord) -> DMatrix<f64> {
        let mut acc = DMatrix::identity(self.alg.dim, self.alg.dim);
        for (g, t) in word.factors.iter().rev() {
            acc *= exp_ad(&self.alg, g, *t);
        }
        acc
    }

    /// The transported reference vector X = Ad(g^-1) J1.
    pub fn reference_vector(&self, word: &GroupWord) -> ElementF {
        apply_op(&self.alg, &self.point_operator(word), &self.j1f)
    }

    /// Squared norm (in the -B/(2n) convention) of the Q-projection of the
    /// reference vector; zero exactly on the singular set. May be negative.
    pub fn singularity_norm2(&self, word: &GroupWord) -> f64 {
        self.reference_vector(word).project(Subspace::Q).norm2()
    }

    /// The light-like direction E(w) for a unit w, with the zero-norm and
    /// nilpotency checks of the reductive layer.
    pub fn direction(&self, w: &[f64]) -> Result<ElementF> {
        lightlike_f(&self.bases, w)
    }

    /// E(w) built from the cached basis; for internal scans over directions
    /// that are unit by construction.
    fn direction_fast(&self, w: &[f64]) -> ElementF {
        debug_assert_eq!(w.len(), self.alg.n);
        let mut e = self.q_f[0].clone();
        for (i, wi) in w.iter().enumerate() {
            if *wi != 0.0 {
                e = e.add(&self.q_f[i + 1].scale(wi)).unwrap();
            }
        }
        e
    }

    /// Quadratic from a reference vector and a direction, together with the
    /// raw Gram-polynomial coefficients (degrees 0..=4).
    fn quadratic_for(&self, x: &ElementF, e: &ElementF) -> Result<QuadraticCoeffs> {
        let xq = x.project(Subspace::Q);
        let xh = x.project(Subspace::H);
        let ad_e_x = e.bracket(x)?;
        let sigma_ad = ad_e_x.apply_involution(crate::lie_core::Involution::Sigma);
        let a = -ad_e_x.killing(&sigma_ad)?;
        let ad_e_xh = e.bracket(&xh)?;
        let b = -2.0 * xq.killing(&ad_e_xh)?;
        let c = xq.killing(&xq)?;

        // Gram expansion of |X_Q - s ad(E)X_H + (s^2/2) ad(E)^2 X_Q|^2.
        let v1 = ad_e_xh.neg();
        let v2 = e.bracket(&e.bracket(&xq)?)?.scale(&0.5);
        let p0 = xq.killing(&xq)?;
        let p1 = 2.0 * xq.killing(&v1)?;
        let p2 = v1.killing(&v1)? + 2.0 * xq.killing(&v2)?;
        let p3 = 2.0 * v1.killing(&v2)?;
        let p4 = v2.killing(&v2)?;
        let scale = [a, b, c, 1.0].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let rel = 1e-10 * scale;
        if p3.abs() > rel || p4.abs() > rel {
            return Err(Error::ConsistencyFailure(format!(
                "cubic/quartic Gram terms did not cancel: s^3 = {p3:e}, s^4 = {p4:e}"
            )));
        }
        if (p0 - c).abs() > rel || (p1 - b).abs() > rel || (p2 - a).abs() > rel {
            return Err(Error::ConsistencyFailure(format!(
                "Gram coefficients ({p2:e},{p1:e},{p0:e}) disagree with formulas ({a:e},{b:e},{c:e})"
            )));
        }
        Ok(QuadraticCoeffs { a, b, c })
    }

    /// Crossing quadratic for the point of `word` and the direction E(w).
    pub fn geodesic_quadratic(&self, word: &GroupWord, w: &[f64]) -> Result<QuadraticCoeffs> {
        let x = self.reference_vector(word);
        let e = self.direction(w)?;
        self.quadratic_for(&x, &e)
    }

    /// Completes (w1, w2, 0, ...) with w1 = sqrt(1 - w2^2).
    pub fn plane_direction(&self, w2: f64) -> Vec<f64> {
        let mut w = vec![0.0; self.alg.n];
        w[0] = (1.0 - w2 * w2).max(0.0).sqrt();
        w[1] = w2;
        w
    }

    /// Classify the point of a word by scanning w2 over a Chebyshev grid.
    /// The `seed` feeds the random sphere completions used for the
    /// w2-sufficiency diagnostic.
    pub fn classify_word(
        &self,
        word: &GroupWord,
        grid: usize,
        tol: f64,
        seed: u64,
    ) -> Result<Classification> {
        let x = self.reference_vector(word);
        let base = self.scan(&x, grid, tol, seed)?;
        let refined = self.scan(&x, 2 * grid - 1, tol, 0)?;
        if base.class != refined.class {
            return Err(Error::InconclusiveNearBoundary);
        }
        let mut out = base;
        if out.class == CausalClass::Singular {
            out.branch = self.branch_from_vector(&x);
        }
        Ok(out)
    }

    /// Classify a coordinate-parametrized point; singular branches are
    /// resolved through the singular-angle structure and the type through
    /// u = a + b.
    pub fn classify_point(
        &self,
        p: &PointCoords,
        grid: usize,
        tol: f64,
        seed: u64,
    ) -> Result<Classification> {
        let word = self.word(p)?;
        let x = self.reference_vector(&word);
        let base = self.scan(&x, grid, tol, seed)?;
        let refined = self.scan(&x, 2 * grid - 1, tol, 0)?;
        if base.class != refined.class {
            return Err(Error::InconclusiveNearBoundary);
        }
        let mut out = base;
        let coeffs = an_coefficients(&self.alg, p)?;
        let angles = self.singular_angles_from(&coeffs, tol);
        out.point_type = Some(angles.point_type);
        if out.class == CausalClass::Singular {
            out.branch = self
                .branch_from_angle(p.x, &angles, tol)
                .or_else(|| self.branch_from_vector(&x));
        }
        Ok(out)
    }

    fn scan(&self, x: &ElementF, grid: usize, tol: f64, seed: u64) -> Result<Classification> {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let grid = grid.max(3);
        // Constant coefficient is direction-independent; measure it once.
        let c = x.project(Subspace::Q).killing(&x.project(Subspace::Q))?;
        let probe = self.quadratic_for(x, &self.direction_fast(&self.plane_direction(0.0)))?;
        if probe.c.abs() <= tol * probe.scale() {
            return Ok(Classification {
                class: CausalClass::Singular,
                c,
                witness_w2: None,
                branch: None,
                point_type: None,
                w2_spread: 0.0,
            });
        }
        // Chebyshev-Lobatto nodes ordered by |w2| so the canonical witness
        // w2 = 0 is found first when it escapes.
        let mut nodes: Vec<f64> = (0..grid)
            .map(|i| {
                let w = (std::f64::consts::PI * i as f64 / (grid - 1) as f64).cos();
                if w.abs() < 1e-15 {
                    0.0
                } else {
                    w
                }
            })
            .collect();
        nodes.sort_by(|p, q| p.abs().partial_cmp(&q.abs()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut witness = None;
        let mut spread = 0.0f64;
        for w2 in nodes {
            let quad = self.quadratic_for(x, &self.direction_fast(&self.plane_direction(w2)))?;
            // w2-sufficiency diagnostic over random sphere completions.
            if seed != u64::MAX {
                for _ in 0..8 {
                    let wfull = self.random_completion(&mut rng, w2);
                    let alt = self.quadratic_for(x, &self.direction_fast(&wfull))?;
                    let s = quad.scale().max(alt.c.abs());
                    spread = spread
                        .max((alt.a - quad.a).abs() / s)
                        .max((alt.b - quad.b).abs() / s)
                        .max((alt.c - quad.c).abs() / s);
                }
            }
            if !singular_times(&quad, tol).future_hit {
                witness = Some(w2);
                break;
            }
        }
        Ok(Classification {
            class: if witness.is_some() { CausalClass::Free } else { CausalClass::BlackHole },
            c,
            witness_w2: witness,
            branch: None,
            point_type: None,
            w2_spread: spread,
        })
    }

    fn random_completion(&self, rng: &mut impl rand::Rng, w2: f64) -> Vec<f64> {
        let n = self.alg.n;
        let mut rest: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = rest.iter().map(|v| v * v).sum::<f64>().sqrt();
        let radius = (1.0 - w2 * w2).max(0.0).sqrt();
        if norm < 1e-12 {
            rest = vec![0.0; n - 1];
            rest[0] = 1.0;
        } else {
            for v in &mut rest {
                *v *= radius / norm;
            }
        }
        let mut w = vec![0.0; n];
        w[1] = w2;
        w[0] = rest[0];
        for (i, v) in rest[1..].iter().enumerate() {
            w[i + 2] = *v;
        }
        w
    }

    /// Singular branch from the direction of the projected reference vector:
    /// multiples of q0 - q2 sit over the AN family, multiples of q0 + q2
    /// over the conjugate family. Returns None for the zero vector.
    fn branch_from_vector(&self, x: &ElementF) -> Option<Branch> {
        let v = x.project(Subspace::Q);
        let scale = v.max_abs();
        if scale <= 1e-12 {
            return None;
        }
        let q0 = self.bases.q0().to_f64();
        let q2 = self.bases.q2().to_f64();
        let k0 = v.killing(&q0).unwrap() / q0.killing(&q0).unwrap();
        let k2 = v.killing(&q2).unwrap() / q2.killing(&q2).unwrap();
        let residual = v
            .sub(&q0.scale(&k0))
            .unwrap()
            .sub(&q2.scale(&k2))
            .unwrap()
            .max_abs();
        if residual > 1e-10 * scale || (k0.abs() - k2.abs()).abs() > 1e-10 * scale {
            return None;
        }
        if k0 * k2 < 0.0 {
            Some(Branch::An)
        } else {
            Some(Branch::AbarN)
        }
    }

    fn branch_from_angle(&self, x: f64, angles: &AngleStructure, tol: f64) -> Option<Branch> {
        let tau = std::f64::consts::TAU;
        let xm = x.rem_euclid(tau);
        let near = |a: f64| -> bool {
            let d = (xm - a).rem_euclid(tau);
            d.min(tau - d) <= tol.max(1e-7) * 10.0 + 1e-9
        };
        if near(0.0) {
            return Some(Branch::An);
        }
        if near(std::f64::consts::PI) {
            return Some(Branch::AnKtheta);
        }
        if angles.angles.len() == 4 {
            if near(angles.angles[1]) {
                return Some(Branch::AbarN);
            }
            if near(angles.angles[3]) {
                return Some(Branch::AbarNKtheta);
            }
        }
        None
    }

    /// All zeros of n_P(x) = u sin(2x) + v cos(2x) - v in [0, 2pi), in
    /// closed form: 0 and pi always; for u != 0 the pair atan2(u,v) mod pi.
    pub fn singular_angles(&self, p: &PointCoords) -> Result<AngleStructure> {
        let coeffs = an_coefficients(&self.alg, p)?;
        Ok(self.singular_angles_from(&coeffs, DEFAULT_TOL))
    }

    fn singular_angles_from(&self, coeffs: &ANCoefficients, tol: f64) -> AngleStructure {
        let u = coeffs.u();
        let v = coeffs.v();
        let tau = std::f64::consts::TAU;
        let scale = 1.0 + u.abs() + v.abs();
        let mut angles = vec![0.0, std::f64::consts::PI];
        let point_type = if u.abs() <= tol * scale {
            PointType::I
        } else {
            let x2 = u.atan2(v).rem_euclid(std::f64::consts::PI);
            angles.push(x2);
            angles.push(x2 + std::f64::consts::PI);
            PointType::II
        };
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        debug_assert!(angles.iter().all(|a| (0.0..tau).contains(a)));
        AngleStructure { angles, point_type, u, v }
    }

    /// The closed quadratic formulas in terms of (a, b, c_k), evaluated
    /// verbatim. HYPOTHESIS output: the direct [`Self::geodesic_quadratic`]
    /// is the ground truth, and [`Self::compare_closed_form`] records the
    /// residual between the two.
    pub fn closed_form_quadratic(&self, coeffs: &ANCoefficients, x: f64, w2: f64) -> QuadraticCoeffs {
        let m = coeffs.m_value();
        let b_q0q0 = -2.0 * self.alg.n as f64;
        QuadraticCoeffs {
            a: b_q0q0 * m * (w2 * w2 + x.cos() * w2 + x.cos() * x.cos()),
            b: b_q0q0 * (-2.0 * m * x.sin() * (w2 + x.cos())),
            c: b_q0q0 * m * x.sin() * x.sin(),
        }
    }

    /// Evaluate both routes at the same point and record the relative
    /// residual after optimal scale matching.
    pub fn compare_closed_form(&self, p: &PointCoords, w2: f64) -> Result<ClosedFormComparison> {
        let coeffs = an_coefficients(&self.alg, p)?;
        let hypothesis = self.closed_form_quadratic(&coeffs, p.x, w2);
        let word = self.word(p)?;
        let direct = self.geodesic_quadratic(&word, &self.plane_direction(w2))?;
        let dot = direct.a * hypothesis.a + direct.b * hypothesis.b + direct.c * hypothesis.c;
        let hh = hypothesis.a.powi(2) + hypothesis.b.powi(2) + hypothesis.c.powi(2);
        let s = if hh > 0.0 { dot / hh } else { 0.0 };
        let dd = (direct.a.powi(2) + direct.b.powi(2) + direct.c.powi(2)).sqrt();
        let res = ((direct.a - s * hypothesis.a).powi(2)
            + (direct.b - s * hypothesis.b).powi(2)
            + (direct.c - s * hypothesis.c).powi(2))
        .sqrt();
        Ok(ClosedFormComparison {
            direct,
            hypothesis,
            matched_scale: s,
            relative_residual: if dd > 0.0 { res / dd } else { res },
        })
    }

    /// Bisect the black-hole/free transition along a word path.
    pub fn horizon_bisect(
        &self,
        path: impl Fn(f64) -> Result<GroupWord>,
        t_lo: f64,
        t_hi: f64,
        tol: f64,
        grid: usize,
        class_tol: f64,
    ) -> Result<f64> {
        // Skip the sufficiency diagnostic inside the bisection loop.
        let class_of = |t: f64| -> Result<CausalClass> {
            Ok(self.classify_word(&path(t)?, grid, class_tol, u64::MAX)?.class)
        };
        let lo_class = class_of(t_lo)?;
        let hi_class = class_of(t_hi)?;
        if lo_class == CausalClass::Singular || hi_class == CausalClass::Singular {
            return Err(Error::NoCrossing);
        }
        if lo_class == hi_class {
            return Err(Error::NoCrossing);
        }
        let (mut lo, mut hi) = (t_lo, t_hi);
        while (hi - lo).abs() > tol {
            let mid = 0.5 * (lo + hi);
            let mc = class_of(mid)?;
            if mc == lo_class {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The circle path x -> [e^{x q0}] as words.
    pub fn circle_word(&self, x: f64) -> GroupWord {
        GroupWord::single(self.bases.q0().to_f64(), x)
    }

    /// Embedding of the point this analyzer assigns to a word: the factors
    /// denote the inverse group element, so the coset representative is the
    /// product of the negated factors in word order.
    pub fn quadric_of(&self, word: &GroupWord) -> Vec<f64> {
        let negated = GroupWord {
            factors: word.factors.iter().map(|(g, t)| (g.clone(), -t)).collect(),
        };
        crate::exp_group::quadric_point(&self.alg, &negated)
    }
}

/// The singular set in embedding coordinates: the vanishing locus of
/// v2^2 - v1^2, the norm form of the boost plane. In the -B/(2n)
/// normalization this is not merely proportional to the singularity norm of
/// the coset, it equals it, in every dimension.
pub fn singularity_quadric_form(v: &[f64]) -> f64 {
    v[2] * v[2] - v[1] * v[1]
}

/// Side-by-side record of the direct quadratic and the closed-form
/// hypothesis at one (point, w2).
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormComparison {
    pub direct: QuadraticCoeffs,
    pub hypothesis: QuadraticCoeffs,
    pub matched_scale: f64,
    pub relative_residual: f64,
}

/// Analytic roots of the base-point quadratic, labeled as s+ and s-.
pub fn circle_roots(x: f64, w2: f64) -> (f64, f64) {
    let (sp, sm) = (x.sin() / (x.cos() - w2), x.sin() / (x.cos() + w2));
    if w2 * x.sin() >= 0.0 {
        (sp, sm)
    } else {
        (sm, sp)
    }
}
