//! Dimensional induction: the label-preserving embedding of so(2,n) into
//! so(2,n+1), and the rotation transport that sweeps the embedded AdS slice
//! over the whole space without touching the causal data.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::QMatrix;
use crate::exp_group::{GroupWord, PointCoords};
use crate::lie_core::{Algebra, Coeff, Element, ElementQ};

/// Label-preserving embedding of an element into a larger algebra. Slice
/// labels map to identical labels; the image never touches the new slice.
pub fn iota_element<S: Coeff>(target: &Arc<Algebra>, x: &Element<S>) -> Element<S> {
    assert!(target.n >= x.algebra().n, "embedding goes up in dimension");
    let src = x.algebra().clone();
    let mut coeffs = vec![S::zero(); target.dim];
    for (i, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[target.index_of(src.label(i))] = c.clone();
        }
    }
    Element::from_coeffs(target, coeffs)
}

/// Embed a word factor by factor.
pub fn iota_word(target: &Arc<Algebra>, word: &GroupWord) -> GroupWord {
    GroupWord {
        factors: word
            .factors
            .iter()
            .map(|(g, t)| (iota_element(target, g), *t))
            .collect(),
    }
}

/// Embed point coordinates by padding the new slice with zeros.
pub fn iota_coords(p: &PointCoords) -> PointCoords {
    let mut out = p.clone();
    out.nu.zp.push(0.0);
    out.nu.pz.push(0.0);
    out
}

/// Generator of the rotation in the last two spatial axes of the defining
/// representation; commutes with J1, so its one-parameter group transports
/// the causal structure.
pub fn rotation_generator(alg: &Arc<Algebra>) -> ElementQ {
    let size = alg.n + 2;
    let (p, q) = (size - 2, size - 1);
    let mut m = QMatrix::zeros(size, size);
    // M = -E_pq + E_qp: generates p' = p cos t - q sin t, q' = p sin t + q cos t.
    m[(p, q)] = crate::exact::qi(-1);
    m[(q, p)] = crate::exact::qi(1);
    let coords = crate::lie_core::matrix_to_coords(alg, &m);
    Element::from_coeffs(alg, coords)
}

/// Result of zeroing the last quadric coordinate by a rotation in the last
/// spatial 2-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    /// Rotation angle in [0, 2pi); the other admissible angle is t + pi.
    pub t: f64,
    pub v_reduced: Vec<f64>,
}

/// Rotate the quadric vector so that its last coordinate vanishes and the
/// second-to-last is nonnegative. Two angles do the zeroing; the returned
/// branch is the nonnegative one.
pub fn r_transport(v: &[f64]) -> Result<Transport> {
    assert!(v.len() >= 4, "need at least two spatial coordinates");
    let p = v[v.len() - 2];
    let q = v[v.len() - 1];
    let h = p.hypot(q);
    if h < 1e-12 {
        return Err(Error::DegenerateTransport);
    }
    let t = (-q).atan2(p).rem_euclid(std::f64::consts::TAU);
    let mut out = v.to_vec();
    let len = v.len();
    out[len - 2] = h;
    out[len - 1] = 0.0;
    Ok(Transport { t, v_reduced: out })
}
