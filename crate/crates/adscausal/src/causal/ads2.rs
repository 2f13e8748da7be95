//! The two-dimensional reduction. AdS_2 sits inside AdS_3 through the
//! subalgebra spanned by {J2, q0, p1} of so(2,2), with Iwasawa data
//! A = <J2>, N = <X+> for X+ = p1 - q0, K-part <q0>. Its singular set is
//! *defined* as the preimage of the AdS_3 singular set, and is not an orbit
//! closure of the small Iwasawa group: the norm of the transported J1 along
//! exp(a X+) is -4a^2 in Killing units, nonzero for a != 0.
//!
//! There are only two light-like directions, E = q0 +- q1, and the crossing
//! parameters of the point with coordinates (alpha, a, x) are
//!
//! ```text
//! s+ = (a cos x + sin x) / ((sin x - 1) a - cos x)
//! s- = (a cos x + sin x) / ((sin x + 1) a - cos x)
//! ```
//!
//! The point is in the two-dimensional black hole exactly when both are
//! positive; at a = 0 both reduce to -tan x, so the classification flips
//! between free and black hole across x = pi/2.

use crate::causal::{Analyzer, CausalClass, FUTURE_EPS};
use crate::error::{Error, Result};
use crate::exact::{qi, Q};
use crate::exp_group::{exp_nilpotent_q, GroupWord};
use crate::lie_core::{Element, ElementQ, Subspace};

/// Crossing parameters for the two light-like directions E = q0 +- q1.
pub fn ads2_roots(a: f64, x: f64) -> (f64, f64) {
    let num = a * x.cos() + x.sin();
    let s_plus = num / ((x.sin() - 1.0) * a - x.cos());
    let s_minus = num / ((x.sin() + 1.0) * a - x.cos());
    (s_plus, s_minus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ads2Outcome {
    pub class: CausalClass,
    pub s_plus: f64,
    pub s_minus: f64,
    /// Singularity norm of the embedded word, in the -B/(2n) convention of
    /// so(2,2).
    pub norm2: f64,
}

/// The nilpotent Iwasawa generator of the embedded so(2,1), the combination
/// (X++ + X-+)/2 = q0 - p1. (Its negative p1 - q0 generates the same
/// one-parameter group with the parameter reversed; the crossing formulas
/// below are written for this orientation.)
pub fn ads2_nilpotent(an: &Analyzer) -> ElementQ {
    assert_eq!(an.algebra().n, 2, "the reduction lives in so(2,2)");
    let b = an.bases();
    b.q0().sub(b.named(crate::reductive::BLabel::P1)).unwrap()
}

/// Classify the AdS_2 point [e^{-alpha J2} e^{-a X+} e^{-x q0}] by its two
/// crossing parameters; singularity is decided by the embedded norm.
pub fn ads2_classify(an: &Analyzer, alpha: f64, a: f64, x: f64, tol: f64) -> Result<Ads2Outcome> {
    assert_eq!(an.algebra().n, 2, "the reduction lives in so(2,2)");
    let xplus = ads2_nilpotent(an).to_f64();
    let word = GroupWord::identity()
        .then(an.bases().q1().to_f64(), alpha)
        .then(xplus, a)
        .then(an.bases().q0().to_f64(), x);
    let norm2 = an.singularity_norm2(&word);
    let (s_plus, s_minus) = ads2_roots(a, x);
    let scale = 1.0 + a * a;
    let class = if norm2.abs() <= tol * scale {
        CausalClass::Singular
    } else if s_plus.is_finite()
        && s_minus.is_finite()
        && s_plus > FUTURE_EPS
        && s_minus > FUTURE_EPS
    {
        CausalClass::BlackHole
    } else {
        CausalClass::Free
    };
    Ok(Ads2Outcome { class, s_plus, s_minus, norm2 })
}

/// Exact singularity value of the point exp(a X+), a rational: returns the
/// pair (norm2, Killing-units value -B), the latter being -4a^2.
pub fn ads2_singularity_exact(an: &Analyzer, a: &Q) -> Result<(Q, Q)> {
    let alg = an.algebra();
    assert_eq!(alg.n, 2);
    let xplus = ads2_nilpotent(an);
    let u = exp_nilpotent_q(alg, &xplus, a)?;
    let j1: ElementQ = Element::basis(alg, crate::lie_core::BasisLabel::J1);
    let moved = Element::from_coeffs(alg, u.mul_vec(j1.coeffs()));
    let xq = moved.project(Subspace::Q);
    let norm2 = xq.norm2();
    let killing_units = -xq.killing(&xq)?;
    if killing_units != norm2.clone() * qi(2 * alg.n as i64) {
        return Err(Error::ConsistencyFailure(
            "norm conventions disagree by a factor other than 2n".into(),
        ));
    }
    Ok((norm2, killing_units))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::singular_times;
    use crate::exact::q;
    use std::f64::consts::PI;

    #[test]
    fn sign_pattern_at_a_zero() {
        let an = Analyzer::new(2).unwrap();
        // x = pi/4: both parameters equal -tan(x) < 0: free.
        let out = ads2_classify(&an, 0.0, 0.0, PI / 4.0, 1e-9).unwrap();
        assert_eq!(out.class, CausalClass::Free);
        assert!((out.s_plus + 1.0).abs() < 1e-12 && (out.s_minus + 1.0).abs() < 1e-12);
        // x = 3pi/4: both positive: black hole.
        let out = ads2_classify(&an, 0.0, 0.0, 3.0 * PI / 4.0, 1e-9).unwrap();
        assert_eq!(out.class, CausalClass::BlackHole);
        assert!(out.s_plus > 0.0 && out.s_minus > 0.0);
        // x = 0: the embedded base point is singular.
        let out = ads2_classify(&an, 0.0, 0.0, 0.0, 1e-9).unwrap();
        assert_eq!(out.class, CausalClass::Singular);
    }

    #[test]
    fn exact_norm_is_minus_four_a_squared() {
        let an = Analyzer::new(2).unwrap();
        for a in [q(1, 3), q(-2, 5), q(7, 2), q(0, 1)] {
            let (norm2, killing) = ads2_singularity_exact(&an, &a).unwrap();
            assert_eq!(killing, qi(-4) * &a * &a);
            assert_eq!(norm2, -(&a * &a));
        }
        // The nilpotent generator really is order two.
        let xp = ads2_nilpotent(&an);
        let ad = an.algebra().ad_matrix_q(xp.coeffs());
        assert!(ad.mul(&ad).mul(&ad).is_zero());
        assert!(!ad.mul(&ad).is_zero());
    }

    #[test]
    fn points_off_the_axis_are_not_singular() {
        let an = Analyzer::new(2).unwrap();
        // exp(a X+) with a != 0 does not belong to the singular set even
        // though it sits on an Iwasawa orbit of the small group.
        let out = ads2_classify(&an, 0.0, 0.8, 0.0, 1e-9).unwrap();
        assert_ne!(out.class, CausalClass::Singular);
        assert!((out.norm2 + 0.64).abs() < 1e-12);
    }

    #[test]
    fn cross_check_against_generic_pipeline() {
        // The embedded AdS_2 has two light directions E = q0 +- q1; the
        // generic quadratic in so(2,2) returns the same crossing set, with
        // the sign of the affine parameter reversed (the reduction's
        // convention orients the geodesics the opposite way).
        let an = Analyzer::new(2).unwrap();
        let xplus = ads2_nilpotent(&an).to_f64();
        for (a, x) in [(0.0, 0.6), (0.3, 1.1), (-0.4, 2.4), (0.2, 4.0)] {
            let word = GroupWord::identity()
                .then(xplus.clone(), a)
                .then(an.bases().q0().to_f64(), x);
            let (sp, sm) = ads2_roots(a, x);
            let mut expected: Vec<f64> = [sp, sm]
                .into_iter()
                .filter(|s| s.is_finite())
                .map(|s| -s)
                .collect();
            expected.sort_by(|u, v| u.partial_cmp(v).unwrap());
            expected.dedup_by(|u, v| (*u - *v).abs() < 1e-7);
            let mut got = Vec::new();
            for e in [[1.0, 0.0], [-1.0, 0.0]] {
                let quad = an.geodesic_quadratic(&word, &e).unwrap();
                let roots = singular_times(&quad, 1e-9).roots;
                got.extend(roots);
            }
            got.sort_by(|u, v| u.partial_cmp(v).unwrap());
            got.dedup_by(|u, v| (*u - *v).abs() < 1e-7);
            assert_eq!(got.len(), expected.len(), "at (a,x) = ({a},{x}): {got:?} vs {expected:?}");
            for (g, e) in got.iter().zip(&expected) {
                assert!((g - e).abs() < 1e-7, "roots {got:?} vs {expected:?}");
            }
        }
    }
}
