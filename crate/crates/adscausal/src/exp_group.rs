//! Exponentials of adjoint actions, group words, and the point
//! parametrization of AdS.
//!
//! A point of AdS_{n+1} is a coset [g] of SO(2,n); this crate encodes group
//! elements as [`GroupWord`]s, finite products of one-parameter exponentials.
//! The adjoint operator of a word is assembled from `exp(t ad Z)` factors,
//! which are computed along three routes that agree wherever they overlap:
//!
//! 1. a closed trigonometric form when `ad(Z)^3 = -c^2 ad(Z)` (the compact
//!    rotations, in particular multiples of q0, where the formulas reduce to
//!    plane rotations of the basis pairs),
//! 2. a terminating series when `ad(Z)` is nilpotent, with the degree
//!    detected by explicit powers rather than assumed,
//! 3. scaling-and-squaring with a degree-13 series for everything else.
//!
//! The nilpotent route is also available over exact rationals, which is what
//! makes the black-hole singularity values of the AdS_2 reduction exact.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Q, QMatrix};
use crate::lie_core::{Algebra, BasisLabel, Element, ElementF, ElementQ};
use crate::reductive::CanonicalBases;

/// Matrix exponential by scaling-and-squaring: halve until the 1-norm is at
/// most 0.5, sum the series to degree 13, square back up.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let one_norm = (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while one_norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let b = a * scale;
    let mut acc = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=13u64 {
        term = (&term * &b) / k as f64;
        acc += &term;
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// exp(t ad Z) on the adjoint representation, by route dispatch.
pub fn exp_ad(alg: &Arc<Algebra>, z: &ElementF, t: f64) -> DMatrix<f64> {
    let a = alg.ad_matrix_f(z.coeffs()) * t;
    let dim = alg.dim;
    let scale = a.amax();
    if scale == 0.0 {
        return DMatrix::identity(dim, dim);
    }
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    // Nilpotent: the cube vanishes for every light-like or Iwasawa-nilpotent
    // generator in this algebra; deeper nilpotency is caught by the series.
    if a3.amax() <= 1e-12 * scale * scale * scale {
        return exp_nilpotent_f(alg, &a);
    }
    // Rotation-like: ad^3 = -c^2 ad, the compact one-parameter subgroups.
    let dot_aa: f64 = a.iter().map(|x| x * x).sum();
    let c2 = -a3.iter().zip(a.iter()).map(|(x, y)| x * y).sum::<f64>() / dot_aa;
    if c2 > 0.0 {
        let residual = (&a3 + &a * c2).amax();
        if residual <= 1e-10 * a3.amax().max(scale) {
            let c = c2.sqrt();
            return DMatrix::identity(dim, dim) + &a * (c.sin() / c) + &a2 * ((1.0 - c.cos()) / c2);
        }
    }
    expm(&a)
}

/// Terminating exponential series of a nilpotent matrix; the degree is found
/// by watching the powers vanish.
fn exp_nilpotent_f(alg: &Arc<Algebra>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = alg.dim;
    let mut acc = DMatrix::identity(dim, dim);
    let mut term = DMatrix::identity(dim, dim);
    let floor = 1e-14 * a.amax().max(1.0).powi(dim as i32);
    for k in 1..=dim as u64 {
        term = (&term * a) / k as f64;
        if term.amax() <= floor {
            break;
        }
        acc += &term;
    }
    acc
}

/// Exact exp(t ad Z) for nilpotent Z over the rationals.
pub fn exp_nilpotent_q(alg: &Arc<Algebra>, z: &ElementQ, t: &Q) -> Result<QMatrix> {
    let a = alg.ad_matrix_q(z.coeffs()).scale(t);
    let dim = alg.dim;
    let mut acc = QMatrix::identity(dim);
    let mut term = QMatrix::identity(dim);
    for k in 1..=dim as i64 {
        term = term.mul(&a).scale(&crate::exact::q(1, k));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
    }
    Err(Error::NormalizationFailure("nilpotent series did not terminate".into()))
}

/// A finite product of one-parameter exponentials, g = prod exp(t_i Z_i).
#[derive(Clone, Debug, Default)]
pub struct GroupWord {
    pub factors: Vec<(ElementF, f64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn single(generator: ElementF, parameter: f64) -> Self {
        Self { factors: vec![(generator, parameter)] }
    }

    pub fn then(mut self, generator: ElementF, parameter: f64) -> Self {
        self.factors.push((generator, parameter));
        self
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self { factors }
    }

    /// The word of the inverse group element: reversed order, negated
    /// parameters.
    pub fn inverse(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|(g, t)| (g.clone(), -t))
                .collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self { factors: self.factors.iter().rev().cloned().collect() }
    }
}

/// Adjoint operator of a word: the product of exp(t ad Z) factors in word
/// order. Equals conjugation by the defining-representation product.
pub fn ad_word(alg: &Arc<Algebra>, word: &GroupWord) -> DMatrix<f64> {
    let mut acc = DMatrix::identity(alg.dim, alg.dim);
    for (g, t) in &word.factors {
        acc *= exp_ad(alg, g, *t);
    }
    acc
}

/// The defining-representation matrix of a word.
pub fn rep_word(alg: &Arc<Algebra>, word: &GroupWord) -> DMatrix<f64> {
    let size = alg.n + 2;
    let mut acc = DMatrix::identity(size, size);
    for (g, t) in &word.factors {
        acc *= expm(&(g.rep_matrix_f() * *t));
    }
    acc
}

/// Push the word through the defining representation and move the base
/// point: the quadric embedding of the coset.
pub fn quadric_point(alg: &Arc<Algebra>, word: &GroupWord) -> Vec<f64> {
    let base: Vec<f64> = alg
        .rep
        .base_point
        .iter()
        .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap())
        .collect();
    let m = rep_word(alg, word);
    let v = &m * DVector::from_column_slice(&base);
    v.data.into()
}

/// The indefinite inner product eta(u, v) of the embedding space.
pub fn eta_inner(_alg: &Algebra, u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .enumerate()
        .map(|(i, (a, b))| {
            let sign = if i < 2 { 1.0 } else { -1.0 };
            sign * a * b
        })
        .sum()
}

/// Coordinates of a point written as exp(alpha . A) exp(Z) exp(x q0),
/// with Z in the Iwasawa-nilpotent part.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointCoords {
    /// (alpha1, alpha2): the abelian part alpha1 J1 + alpha2 J2.
    pub alpha: [f64; 2],
    pub nu: NuCoords,
    /// Compact angle in [0, 2pi).
    pub x: f64,
}

/// Coefficients of Z over the nilpotent basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NuCoords {
    /// X++ coefficient.
    pub pp: f64,
    /// X+- coefficient.
    pub pm: f64,
    /// X0+:k coefficients, k = 3..=n.
    pub zp: Vec<f64>,
    /// X+0:k coefficients, k = 3..=n.
    pub pz: Vec<f64>,
}

impl PointCoords {
    pub fn zero(n: usize) -> Self {
        Self {
            alpha: [0.0, 0.0],
            nu: NuCoords { pp: 0.0, pm: 0.0, zp: vec![0.0; n - 2], pz: vec![0.0; n - 2] },
            x: 0.0,
        }
    }

    /// A point of the compact circle through the base point.
    pub fn circle(n: usize, x: f64) -> Self {
        Self { x, ..Self::zero(n) }
    }

    pub fn validate(&self, alg: &Algebra) -> Result<()> {
        let want = alg.n - 2;
        if self.nu.zp.len() != want || self.nu.pz.len() != want {
            return Err(Error::BadPoint(format!(
                "nu.zp/nu.pz must have {want} entries for n = {}",
                alg.n
            )));
        }
        if !self.x.is_finite() || !self.alpha.iter().all(|a| a.is_finite()) {
            return Err(Error::BadPoint("non-finite coordinate".into()));
        }
        Ok(())
    }

    /// The nilpotent factor Z as an element.
    pub fn nilpotent_part(&self, alg: &Arc<Algebra>) -> ElementF {
        let mut z = Element::basis(alg, BasisLabel::Xpp).scale(&self.nu.pp);
        z = z.add(&Element::basis(alg, BasisLabel::Xpm).scale(&self.nu.pm)).unwrap();
        for (i, k) in alg.slices().enumerate() {
            z = z.add(&Element::basis(alg, BasisLabel::X0p(k)).scale(&self.nu.zp[i])).unwrap();
            z = z.add(&Element::basis(alg, BasisLabel::Xp0(k)).scale(&self.nu.pz[i])).unwrap();
        }
        z
    }

    pub fn abelian_part(&self, alg: &Arc<Algebra>) -> ElementF {
        Element::basis(alg, BasisLabel::J1)
            .scale(&self.alpha[0])
            .add(&Element::basis(alg, BasisLabel::J2).scale(&self.alpha[1]))
            .unwrap()
    }
}

/// The three-factor word exp(alpha . A) exp(Z) exp(x q0); trivial factors
/// are dropped, so all-zero coordinates give the identity word.
pub fn point_word(bases: &CanonicalBases, p: &PointCoords) -> Result<GroupWord> {
    let alg = bases.algebra();
    p.validate(alg)?;
    let mut word = GroupWord::identity();
    let a = p.abelian_part(alg);
    if a.max_abs() != 0.0 {
        word = word.then(a, 1.0);
    }
    let z = p.nilpotent_part(alg);
    if z.max_abs() != 0.0 {
        word = word.then(z, 1.0);
    }
    if p.x != 0.0 {
        word = word.then(bases.q0().to_f64(), p.x);
    }
    Ok(word)
}

/// Coefficients (a, b, c_k) of Ad(exp Z . exp(alpha . A)) J1 over
/// {X++, X+-, X+0:k}; the compact angle of the point is ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct ANCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: Vec<f64>,
}

impl ANCoefficients {
    pub fn c2(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum()
    }

    /// M = a^2 - b^2 - sum c_k^2, the overall factor of the closed quadratic
    /// formulas.
    pub fn m_value(&self) -> f64 {
        self.a * self.a - self.b * self.b - self.c2()
    }

    /// u = a + b: the singular-angle curve is u sin(2x) + v cos(2x) - v.
    pub fn u(&self) -> f64 {
        self.a + self.b
    }

    /// v = (1 + C^2 - 4ab)/2.
    pub fn v(&self) -> f64 {
        (1.0 + self.c2() - 4.0 * self.a * self.b) / 2.0
    }
}

/// Extract (a, b, c_k) from the terminating series for Ad(exp Z) J1. The
/// abelian factor commutes with J1 and drops out. Errors when the result
/// fails to lie in span{J1, X++, X+-, X+0:k}.
pub fn an_coefficients(alg: &Arc<Algebra>, p: &PointCoords) -> Result<ANCoefficients> {
    p.validate(alg)?;
    let z = p.nilpotent_part(alg);
    let u = exp_ad(alg, &z, 1.0);
    let j1 = Element::basis(alg, BasisLabel::J1);
    let moved = Element::from_coeffs(alg, (&u * DVector::from_column_slice(j1.coeffs())).data.into());
    read_an_coefficients(&moved)
}

fn read_an_coefficients(moved: &ElementF) -> Result<ANCoefficients> {
    let alg = moved.algebra().clone();
    let mut allowed = vec![alg.index_of(BasisLabel::J1)];
    allowed.push(alg.index_of(BasisLabel::Xpp));
    allowed.push(alg.index_of(BasisLabel::Xpm));
    for k in alg.slices() {
        allowed.push(alg.index_of(BasisLabel::Xp0(k)));
    }
    let mut residual = 0.0f64;
    for (i, c) in moved.coeffs().iter().enumerate() {
        if !allowed.contains(&i) {
            residual = residual.max(c.abs());
        }
    }
    residual = residual.max((moved.coeff(BasisLabel::J1) - 1.0).abs());
    if residual > 1e-12 * moved.max_abs().max(1.0) {
        return Err(Error::ResidualComponent(residual));
    }
    Ok(ANCoefficients {
        a: *moved.coeff(BasisLabel::Xpp),
        b: *moved.coeff(BasisLabel::Xpm),
        c: alg.slices().map(|k| *moved.coeff(BasisLabel::Xp0(k))).collect(),
    })
}

/// Exact variant of [`an_coefficients`] for a rational nilpotent factor.
pub fn an_coefficients_q(alg: &Arc<Algebra>, z: &ElementQ) -> Result<(Q, Q, Vec<Q>)> {
    let u = exp_nilpotent_q(alg, z, &crate::exact::qi(1))?;
    let j1: ElementQ = Element::basis(alg, BasisLabel::J1);
    let moved = Element::from_coeffs(alg, u.mul_vec(j1.coeffs()));
    let mut allowed = vec![
        alg.index_of(BasisLabel::J1),
        alg.index_of(BasisLabel::Xpp),
        alg.index_of(BasisLabel::Xpm),
    ];
    for k in alg.slices() {
        allowed.push(alg.index_of(BasisLabel::Xp0(k)));
    }
    for (i, c) in moved.coeffs().iter().enumerate() {
        if !allowed.contains(&i) && !c.is_zero() {
            return Err(Error::ResidualComponent(num_traits::ToPrimitive::to_f64(c).unwrap()));
        }
    }
    Ok((
        moved.coeff(BasisLabel::Xpp).clone(),
        moved.coeff(BasisLabel::Xpm).clone(),
        alg.slices().map(|k| moved.coeff(BasisLabel::Xp0(k)).clone()).collect(),
    ))
}

/// Apply an adjoint operator to an element.
pub fn apply_op(alg: &Arc<Algebra>, op: &DMatrix<f64>, x: &ElementF) -> ElementF {
    Element::from_coeffs(alg, (op * DVector::from_column_slice(x.coeffs())).data.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::Involution;
    use crate::reductive::{canonical_bases, lightlike_f};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize) -> (Arc<Algebra>, CanonicalBases) {
        let alg = Algebra::get(n).unwrap();
        let bases = canonical_bases(&alg).unwrap();
        (alg, bases)
    }

    #[test]
    fn rotation_route_matches_table() {
        let (alg, b) = setup(4);
        for x in [0.3, 0.7, 2.9, -1.4] {
            let op = exp_ad(&alg, &b.q0().to_f64(), x);
            // exp(x ad q0) J1 = cos(x) J1 + sin(x) q2
            let j1 = b.j1().to_f64();
            let moved = apply_op(&alg, &op, &j1);
            let expect = j1.scale(&x.cos()).add(&b.q2().to_f64().scale(&x.sin())).unwrap();
            assert!(moved.approx_eq(&expect, 1e-12));
            // exp(x ad q0) q0 = q0
            let q0 = b.q0().to_f64();
            assert!(apply_op(&alg, &op, &q0).approx_eq(&q0, 1e-12));
            // exp(x ad q0) p1 = cos(x) p1 - sin(x) q1
            let p1 = b.named(crate::reductive::BLabel::P1).to_f64();
            let moved = apply_op(&alg, &op, &p1);
            let expect = p1.scale(&x.cos()).add(&b.q1().to_f64().scale(&-x.sin())).unwrap();
            assert!(moved.approx_eq(&expect, 1e-12));
        }
    }

    #[test]
    fn zero_parameter_gives_identity() {
        let (alg, b) = setup(3);
        let op = exp_ad(&alg, &b.q0().to_f64(), 0.0);
        assert!((op - DMatrix::<f64>::identity(alg.dim, alg.dim)).amax() < 1e-15);
    }

    #[test]
    fn routes_agree_where_domains_overlap() {
        let (alg, b) = setup(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e_dir = lightlike_f(&b, &[0.6, 0.0, 0.8, 0.0]).unwrap();
        let candidates: Vec<ElementF> = vec![
            b.q0().to_f64(),
            Element::<f64>::basis(&alg, BasisLabel::Xpp),
            Element::<f64>::basis(&alg, BasisLabel::X0p(3)),
            e_dir,
        ];
        for z in &candidates {
            for _ in 0..25 {
                let t: f64 = rng.gen_range(-2.0..2.0);
                let fast = exp_ad(&alg, z, t);
                let slow = expm(&(alg.ad_matrix_f(z.coeffs()) * t));
                assert!((&fast - &slow).amax() < 1e-11, "disagreement at t = {t}");
            }
        }
    }

    #[test]
    fn word_of_pi_q0_is_theta() {
        for n in [2, 3, 4] {
            let (alg, b) = setup(n);
            let w = GroupWord::single(b.q0().to_f64(), std::f64::consts::PI);
            let op = ad_word(&alg, &w);
            let theta = alg.involution_matrix(Involution::Theta).to_f64();
            assert!((&op - &theta).amax() < 1e-10);
        }
    }

    #[test]
    fn word_homomorphism_and_inverse() {
        let (alg, b) = setup(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let mut w1 = GroupWord::identity();
            let mut w2 = GroupWord::identity();
            for _ in 0..3 {
                let lbl = alg.labels[rng.gen_range(0..alg.dim)];
                w1 = w1.then(Element::<f64>::basis(&alg, lbl), rng.gen_range(-0.8..0.8));
                let lbl = alg.labels[rng.gen_range(0..alg.dim)];
                w2 = w2.then(Element::<f64>::basis(&alg, lbl), rng.gen_range(-0.8..0.8));
            }
            let lhs = ad_word(&alg, &w1.concat(&w2));
            let rhs = ad_word(&alg, &w1) * ad_word(&alg, &w2);
            assert!((&lhs - &rhs).amax() < 1e-10);
            let inv = ad_word(&alg, &w1) * ad_word(&alg, &w1.inverse());
            assert!((inv - DMatrix::<f64>::identity(alg.dim, alg.dim)).amax() < 1e-10);
            let _ = b.q0();
        }
    }

    #[test]
    fn defining_and_adjoint_representations_are_consistent() {
        let (alg, _) = setup(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mut w = GroupWord::identity();
            for _ in 0..3 {
                let lbl = alg.labels[rng.gen_range(0..alg.dim)];
                w = w.then(Element::<f64>::basis(&alg, lbl), rng.gen_range(-0.7..0.7));
            }
            let g = rep_word(&alg, &w);
            let g_inv = rep_word(&alg, &w.inverse());
            let adw = ad_word(&alg, &w);
            for lbl in [BasisLabel::J1, BasisLabel::Xpp, BasisLabel::X0p(3)] {
                let x: ElementF = Element::<f64>::basis(&alg, lbl);
                let conj = &g * x.rep_matrix_f() * &g_inv;
                let direct = apply_op(&alg, &adw, &x);
                let back = alg.rep_to_coords_f(&conj);
                let diff: f64 = back
                    .iter()
                    .zip(direct.coeffs())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-10);
            }
        }
    }

    #[test]
    fn an_coefficient_examples() {
        let (alg, _) = setup(4);
        // Z = 0 -> (0,0,0).
        let p = PointCoords::zero(4);
        let c = an_coefficients(&alg, &p).unwrap();
        assert_eq!((c.a, c.b), (0.0, 0.0));
        assert!(c.c.iter().all(|x| *x == 0.0));
        // Z = nu X++ -> a = -nu.
        let mut p = PointCoords::zero(4);
        p.nu.pp = 0.4;
        let c = an_coefficients(&alg, &p).unwrap();
        assert!((c.a + 0.4).abs() < 1e-14 && c.b.abs() < 1e-14);
        // Z = mu X+0:3 -> c_3 = -mu, exactly (rational route).
        let z = Element::<Q>::basis(&alg, BasisLabel::Xp0(3)).scale(&crate::exact::q(5, 7));
        let (a, b, c) = an_coefficients_q(&alg, &z).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert_eq!(c[0], crate::exact::q(-5, 7));
        assert!(c[1].is_zero());
    }

    #[test]
    fn quadric_points_stay_on_the_quadric() {
        let (alg, b) = setup(3);
        // Identity word lands on the base point.
        let v = quadric_point(&alg, &GroupWord::identity());
        assert!((v[0] - 1.0).abs() < 1e-15 && v[1..].iter().all(|c| c.abs() < 1e-15));
        // The circle word rotates the base point in a timelike 2-plane.
        let w = GroupWord::single(b.q0().to_f64(), 0.9);
        let v = quadric_point(&alg, &w);
        assert!((eta_inner(&alg, &v, &v) - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut w = GroupWord::identity();
            for _ in 0..4 {
                let lbl = alg.labels[rng.gen_range(0..alg.dim)];
                w = w.then(Element::<f64>::basis(&alg, lbl), rng.gen_range(-0.9..0.9));
            }
            let v = quadric_point(&alg, &w);
            assert!((eta_inner(&alg, &v, &v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn point_word_examples() {
        let (alg, b) = setup(3);
        // All-zero coordinates: the identity word.
        let w = point_word(&b, &PointCoords::zero(3)).unwrap();
        assert!(w.factors.is_empty());
        // Only x = pi: the word for the Cartan rotation.
        let w = point_word(&b, &PointCoords::circle(3, std::f64::consts::PI)).unwrap();
        let theta = alg.involution_matrix(Involution::Theta).to_f64();
        assert!((ad_word(&alg, &w) - theta).amax() < 1e-10);
        // Only nu.pp = 0.4: a single nilpotent factor.
        let mut p = PointCoords::zero(3);
        p.nu.pp = 0.4;
        let w = point_word(&b, &p).unwrap();
        let expect = GroupWord::single(Element::<f64>::basis(&alg, BasisLabel::Xpp), 0.4);
        assert!((ad_word(&alg, &w) - ad_word(&alg, &expect)).amax() < 1e-12);
    }
}
