//! The reductive split of so(2,n) and the orthonormal basis adapted to it.
//!
//! The tangent space of AdS at the base point is modeled by the -1 eigenspace
//! `Q` of sigma. It carries an exact orthonormal basis
//!
//! ```text
//! q0 = (X++ + X+- + X-+ + X--)/4      timelike, central in the compact part
//! q1 = J2
//! q2 = -[J1, q0]
//! qk = (X0+:k - X0-:k)/2              one per slice
//! ```
//!
//! and the complement `H = [Q,Q]` is spanned by J1, p1 = [q0,q1],
//! s1 = [J1,p1], pk = [q0,qk], rk = [J2,qk], sk = [J1,pk] and the rotations
//! r_ij = [q_i,q_j]. Together these form the orthonormal basis `B` whose
//! brackets close with coefficients in {0, +-1}; all of that is verified
//! exactly by [`verify_reductive`].
//!
//! Light-like tangent directions are exactly the nilpotent elements
//! `E(w) = q0 + sum_i w_i q_i` with `w` on the unit sphere; their adjoint
//! matrices cube to zero, which is what collapses the geodesic intersection
//! polynomial of the causal layer to a quadratic.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{q, qi, Q, QMatrix};
use crate::lie_core::{
    Algebra, BasisLabel, Check, Element, ElementF, ElementQ, Involution, Report, Subspace,
};

/// Names for the orthonormal basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BLabel {
    J1,
    J2,
    Q0,
    Q2,
    P1,
    S1,
    Qk(usize),
    Pk(usize),
    Rk(usize),
    Sk(usize),
    Rij(usize, usize),
}

impl fmt::Display for BLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BLabel::J1 => write!(f, "J1"),
            BLabel::J2 => write!(f, "J2"),
            BLabel::Q0 => write!(f, "q0"),
            BLabel::Q2 => write!(f, "q2"),
            BLabel::P1 => write!(f, "p1"),
            BLabel::S1 => write!(f, "s1"),
            BLabel::Qk(k) => write!(f, "q:{k}"),
            BLabel::Pk(k) => write!(f, "p:{k}"),
            BLabel::Rk(k) => write!(f, "r:{k}"),
            BLabel::Sk(k) => write!(f, "s:{k}"),
            BLabel::Rij(i, j) => write!(f, "r:{i}:{j}"),
        }
    }
}

impl BLabel {
    /// Expected squared norm in the -B/(2n) convention: +1 on the compact
    /// side of the basis, -1 on the noncompact one.
    pub fn norm_sign(&self) -> i64 {
        match self {
            BLabel::Q0 | BLabel::S1 | BLabel::Rk(_) | BLabel::Sk(_) | BLabel::Rij(_, _) => 1,
            _ => -1,
        }
    }
}

/// The canonical bases of the reductive split, with exact change-of-basis
/// matrices between the root basis and the orthonormal basis.
pub struct CanonicalBases {
    alg: Arc<Algebra>,
    /// Tangent basis q_0 .. q_{l-1}, l = n+1. Index 1 is J2, index 2 is
    /// -[J1,q0], indices 3..=n are the slice vectors.
    pub q: Vec<ElementQ>,
    /// Basis of H = [Q,Q].
    pub h_basis: Vec<(BLabel, ElementQ)>,
    /// The full orthonormal basis: J1, J2, q0, q2, p1, s1, then per-slice
    /// (qk, pk, rk, sk), then the rotations r_ij.
    pub b_basis: Vec<(BLabel, ElementQ)>,
    /// Root coordinates -> orthonormal-basis coordinates.
    pub to_b: QMatrix,
    /// Orthonormal-basis coordinates -> root coordinates.
    pub from_b: QMatrix,
}

impl CanonicalBases {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn j1(&self) -> ElementQ {
        Element::basis(&self.alg, BasisLabel::J1)
    }

    pub fn q0(&self) -> &ElementQ {
        &self.q[0]
    }

    pub fn q1(&self) -> &ElementQ {
        &self.q[1]
    }

    pub fn q2(&self) -> &ElementQ {
        &self.q[2]
    }

    pub fn qk(&self, k: usize) -> &ElementQ {
        assert!((3..=self.alg.n).contains(&k));
        &self.q[k]
    }

    pub fn named(&self, l: BLabel) -> &ElementQ {
        self.b_basis
            .iter()
            .find(|(b, _)| *b == l)
            .map(|(_, e)| e)
            .expect("named basis vector exists")
    }

    /// Coordinates of an element over the orthonormal basis, exactly.
    pub fn b_coords(&self, x: &ElementQ) -> Vec<Q> {
        self.to_b.mul_vec(x.coeffs())
    }
}

/// Centre of the compact part, as an exact basis. One-dimensional for
/// n >= 3; two-dimensional for n = 2 where so(2)+so(2) is abelian.
fn compact_centre(alg: &Arc<Algebra>) -> Vec<ElementQ> {
    let dim = alg.dim;
    let pk = alg.projector(Subspace::K);
    let mut echelon = pk.clone();
    let pivots = echelon.rref();
    let kcols: Vec<Vec<Q>> =
        pivots.iter().map(|&c| (0..dim).map(|r| pk[(r, c)].clone()).collect()).collect();
    // z with [k_b, z] = 0 for every K-basis vector, constrained to K itself
    // by (I - P_K) z = 0.
    let mut rows = QMatrix::zeros((kcols.len() + 1) * dim, dim);
    for (bi, col) in kcols.iter().enumerate() {
        let ad = alg.ad_matrix_q(col);
        for r in 0..dim {
            for c in 0..dim {
                rows[(bi * dim + r, c)] = ad[(r, c)].clone();
            }
        }
    }
    for r in 0..dim {
        for c in 0..dim {
            rows[(kcols.len() * dim + r, c)] =
                &(if r == c { Q::one() } else { Q::zero() }) - &pk[(r, c)];
        }
    }
    rows.nullspace().into_iter().map(|v| Element::from_coeffs(alg, v)).collect()
}

/// Build the canonical bases and verify every advertised membership.
pub fn canonical_bases(alg: &Arc<Algebra>) -> Result<CanonicalBases> {
    let n = alg.n;
    let e = |l: BasisLabel| -> ElementQ { Element::basis(alg, l) };
    let quarter = q(1, 4);
    let half = q(1, 2);

    // q0: the compact-central tangent direction. For n >= 3 it is the
    // Killing projection of X++ onto the one-dimensional centre Z(K); for
    // n = 2 the centre is two-dimensional and the combination is fixed
    // explicitly. Both roads give the same four-term average.
    let four_term = e(BasisLabel::Xpp)
        .add(&e(BasisLabel::Xpm))?
        .add(&e(BasisLabel::Xmp))?
        .add(&e(BasisLabel::Xmm))?
        .scale(&quarter);
    let q0 = if n >= 3 {
        let centre = compact_centre(alg);
        if centre.len() != 1 {
            return Err(Error::NormalizationFailure(format!(
                "Z(K) has dimension {} at n = {n}",
                centre.len()
            )));
        }
        let z = &centre[0];
        let xpp = e(BasisLabel::Xpp);
        let proj = xpp.killing(z)?;
        let zz = z.killing(z)?;
        z.scale(&(proj / zz))
    } else {
        four_term.clone()
    };
    if q0 != four_term {
        return Err(Error::NormalizationFailure("q0 is not (X++ + X+- + X-+ + X--)/4".into()));
    }

    let j1 = e(BasisLabel::J1);
    let q1 = e(BasisLabel::J2);
    let q2 = j1.bracket(&q0)?.neg();
    let mut qv = vec![q0.clone(), q1.clone(), q2.clone()];
    for k in alg.slices() {
        let qk = e(BasisLabel::X0p(k)).project(Subspace::P);
        if qk != e(BasisLabel::X0p(k)).sub(&e(BasisLabel::X0m(k)))?.scale(&half) {
            return Err(Error::NormalizationFailure(format!(
                "(X0+:{k})_P is not (X0+:{k} - X0-:{k})/2"
            )));
        }
        qv.push(qk);
    }

    let p1 = q0.bracket(&q1)?;
    let s1 = j1.bracket(&p1)?;
    let mut b_basis = vec![
        (BLabel::J1, j1.clone()),
        (BLabel::J2, q1.clone()),
        (BLabel::Q0, q0.clone()),
        (BLabel::Q2, q2.clone()),
        (BLabel::P1, p1.clone()),
        (BLabel::S1, s1.clone()),
    ];
    for k in alg.slices() {
        let qk = qv[k].clone();
        let pk = q0.bracket(&qk)?;
        let rk = q1.bracket(&qk)?;
        let sk = j1.bracket(&pk)?;
        b_basis.push((BLabel::Qk(k), qk));
        b_basis.push((BLabel::Pk(k), pk));
        b_basis.push((BLabel::Rk(k), rk));
        b_basis.push((BLabel::Sk(k), sk));
    }
    for i in alg.slices() {
        for j in alg.slices() {
            if i < j {
                b_basis.push((BLabel::Rij(i, j), qv[i].bracket(&qv[j])?));
            }
        }
    }
    if b_basis.len() != alg.dim {
        return Err(Error::NormalizationFailure(format!(
            "orthonormal basis has {} vectors, expected {}",
            b_basis.len(),
            alg.dim
        )));
    }

    // Advertised triple intersections: (theta parity, sigma parity, block),
    // where block 0 = A, 1 = N2-tilde, 2 = rotations, k = slice k.
    let advertised = |l: &BLabel| -> (i64, i64, usize) {
        match l {
            BLabel::J1 => (-1, 1, 0),
            BLabel::J2 => (-1, -1, 0),
            BLabel::Q0 => (1, -1, 1),
            BLabel::Q2 => (-1, -1, 1),
            BLabel::P1 => (-1, 1, 1),
            BLabel::S1 => (1, 1, 1),
            BLabel::Qk(k) => (-1, -1, *k),
            BLabel::Pk(k) => (-1, 1, *k),
            BLabel::Rk(k) => (1, 1, *k),
            BLabel::Sk(k) => (1, 1, *k),
            BLabel::Rij(_, _) => (1, 1, 2),
        }
    };
    let block_of = |lab: &BasisLabel| -> usize {
        match lab {
            BasisLabel::J1 | BasisLabel::J2 => 0,
            BasisLabel::Xpp | BasisLabel::Xpm | BasisLabel::Xmp | BasisLabel::Xmm => 1,
            BasisLabel::X0p(k) | BasisLabel::X0m(k) | BasisLabel::Xp0(k) | BasisLabel::Xm0(k) => *k,
            BasisLabel::R(_, _) => 2,
        }
    };
    for (l, v) in &b_basis {
        let (tp, sp, block) = advertised(l);
        if v.is_zero() {
            return Err(Error::NormalizationFailure(format!("{l} vanished")));
        }
        if v.apply_involution(Involution::Theta) != v.scale(&qi(tp)) {
            return Err(Error::NormalizationFailure(format!("{l} has wrong theta parity")));
        }
        if v.apply_involution(Involution::Sigma) != v.scale(&qi(sp)) {
            return Err(Error::NormalizationFailure(format!("{l} has wrong sigma parity")));
        }
        let support_ok = v
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .all(|(i, _)| block_of(&alg.labels[i]) == block);
        if !support_ok {
            return Err(Error::NormalizationFailure(format!("{l} leaves its block")));
        }
    }

    let from_b = {
        let cols: Vec<&ElementQ> = b_basis.iter().map(|(_, v)| v).collect();
        QMatrix::from_fn(alg.dim, alg.dim, |r, c| cols[c].coeffs()[r].clone())
    };
    let to_b = from_b
        .inverse()
        .ok_or_else(|| Error::NormalizationFailure("orthonormal basis is degenerate".into()))?;

    let h_basis =
        b_basis.iter().filter(|(l, _)| advertised(l).1 == 1).cloned().collect::<Vec<_>>();

    Ok(CanonicalBases { alg: alg.clone(), q: qv, h_basis, b_basis, to_b, from_b })
}

/// The intertwining elements X1 = -[J2,q0], X2 = [J1,X1], Xk = -[J2,qk].
/// Their adjoint actions swap tangent basis vectors in pairs, which is how
/// norm and nilpotency facts propagate across the whole basis.
pub struct Intertwiners {
    pub x1: ElementQ,
    pub x2: ElementQ,
    pub xk: Vec<(usize, ElementQ)>,
}

/// Build the intertwiners; all eight defining relations are checked exactly
/// before returning.
pub fn intertwiners(bases: &CanonicalBases) -> Result<Intertwiners> {
    let alg = bases.algebra();
    let j1 = bases.j1();
    let x1 = bases.q1().bracket(bases.q0())?.neg();
    let x2 = j1.bracket(&x1)?;
    let xk: Vec<(usize, ElementQ)> = alg
        .slices()
        .map(|k| Ok((k, bases.q1().bracket(bases.qk(k))?.neg())))
        .collect::<Result<_>>()?;

    let rels: Vec<(ElementQ, ElementQ, &str)> = vec![
        (j1.bracket(bases.q0())?, bases.q2().neg(), "ad(J1)q0 = -q2"),
        (j1.bracket(bases.q2())?, bases.q0().neg(), "ad(J1)q2 = -q0"),
        (x1.bracket(bases.q1())?, bases.q0().clone(), "ad(X1)q1 = q0"),
        (x1.bracket(bases.q0())?, bases.q1().clone(), "ad(X1)q0 = q1"),
        (x2.bracket(bases.q2())?, bases.q1().clone(), "ad(X2)q2 = q1"),
        (x2.bracket(bases.q1())?, bases.q2().neg(), "ad(X2)q1 = -q2"),
    ];
    for (lhs, rhs, desc) in rels {
        if lhs != rhs {
            return Err(Error::NormalizationFailure(format!("intertwining relation {desc}")));
        }
    }
    for (k, xkv) in &xk {
        if xkv.bracket(bases.qk(*k))? != bases.q1().neg() {
            return Err(Error::NormalizationFailure(format!("ad(X{k})q{k} = -q1")));
        }
        if xkv.bracket(bases.q1())? != *bases.qk(*k) {
            return Err(Error::NormalizationFailure(format!("ad(X{k})q1 = q{k}")));
        }
    }
    Ok(Intertwiners { x1, x2, xk })
}

/// The light-like tangent direction E(w) = q0 + sum_i w_i q_i for an exact
/// unit w. Zero norm and ad(E)^3 = 0 are checked exactly.
pub fn lightlike_q(bases: &CanonicalBases, w: &[Q]) -> Result<ElementQ> {
    let alg = bases.algebra();
    if w.len() != alg.n {
        return Err(Error::NotUnit(format!("expected {} components, got {}", alg.n, w.len())));
    }
    let norm: Q = w.iter().map(|c| c * c).sum();
    if norm != Q::one() {
        return Err(Error::NotUnit(format!("|w|^2 = {norm}")));
    }
    let mut e = bases.q0().clone();
    for (i, wi) in w.iter().enumerate() {
        e = e.add(&bases.q[i + 1].scale(wi))?;
    }
    if !Zero::is_zero(&e.norm2()) {
        return Err(Error::NormalizationFailure("E(w) is not light-like".into()));
    }
    let ad = alg.ad_matrix_q(e.coeffs());
    if !ad.mul(&ad).mul(&ad).is_zero() {
        return Err(Error::NormalizationFailure("ad(E)^3 != 0".into()));
    }
    Ok(e)
}

/// binary64 variant of [`lightlike_q`]; tolerance 1e-12 on the unit check.
pub fn lightlike_f(bases: &CanonicalBases, w: &[f64]) -> Result<ElementF> {
    let alg = bases.algebra();
    if w.len() != alg.n {
        return Err(Error::NotUnit(format!("expected {} components, got {}", alg.n, w.len())));
    }
    let norm: f64 = w.iter().map(|c| c * c).sum();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(format!("|w|^2 = {norm}")));
    }
    let mut e = bases.q0().to_f64();
    for (i, wi) in w.iter().enumerate() {
        e = e.add(&bases.q[i + 1].to_f64().scale(wi))?;
    }
    if e.norm2().abs() > 1e-10 {
        return Err(Error::NormalizationFailure("E(w) is not light-like".into()));
    }
    let ad = alg.ad_matrix_f(e.coeffs());
    let cube = &ad * &ad * &ad;
    if cube.amax() > 1e-9 {
        return Err(Error::NormalizationFailure("ad(E)^3 != 0".into()));
    }
    Ok(e)
}

/// Exact rational unit vectors in R^m from the stereographic parametrization
/// w = (2v, 1 - |v|^2) / (1 + |v|^2) of a rational v in R^{m-1}.
pub fn rational_unit_vector(v: &[Q]) -> Vec<Q> {
    let norm2: Q = v.iter().map(|c| c * c).sum();
    let denom = &Q::one() + &norm2;
    let mut w: Vec<Q> = v.iter().map(|c| &(c * &qi(2)) / &denom).collect();
    w.push(&(&Q::one() - &norm2) / &denom);
    w
}

/// The reductive theorem suite. All algebraic checks are exact; the one
/// numerical check compares exp(pi ad q0) with theta at 1e-10.
pub fn verify_reductive(alg: &Arc<Algebra>) -> Report {
    let mut report = Report::default();
    let n = alg.n;
    let push = |report: &mut Report, name: &str, counterexample: Option<String>| {
        report.checks.push(Check {
            n,
            name: name.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    };

    let bases = match canonical_bases(alg) {
        Ok(b) => b,
        Err(e) => {
            push(&mut report, "canonical-bases", Some(e.to_string()));
            return report;
        }
    };
    push(&mut report, "canonical-bases", None);
    match intertwiners(&bases) {
        Ok(_) => push(&mut report, "intertwiners", None),
        Err(e) => push(&mut report, "intertwiners", Some(e.to_string())),
    }

    // ad(q_i)^2 q_j = q_j for i != j, i != 0; ad(q_0)^2 q_j = -q_j.
    {
        let mut bad = None;
        'outer: for (i, qi_) in bases.q.iter().enumerate() {
            for (j, qj) in bases.q.iter().enumerate() {
                if i == j {
                    continue;
                }
                let sq = qi_.bracket(&qi_.bracket(qj).unwrap()).unwrap();
                let expect = if i == 0 { qj.neg() } else { qj.clone() };
                if sq != expect {
                    bad = Some(format!("ad(q{i})^2 q{j}"));
                    break 'outer;
                }
            }
        }
        push(&mut report, "ad-square-on-tangent", bad);
    }

    // Reductivity: [Q,Q] in H, [H,Q] in Q, and H = [Q,Q] exactly.
    {
        let mut bad = None;
        let mut span = QMatrix::zeros(alg.dim, bases.q.len() * bases.q.len());
        let mut col = 0;
        for qi_ in &bases.q {
            for qj in &bases.q {
                let br = qi_.bracket(qj).unwrap();
                if !br.project(Subspace::Q).is_zero() {
                    bad = Some("[Q,Q] leaves H".into());
                }
                for r in 0..alg.dim {
                    span[(r, col)] = br.coeffs()[r].clone();
                }
                col += 1;
            }
        }
        for (hl, h) in &bases.h_basis {
            for (i, qi_) in bases.q.iter().enumerate() {
                if !h.bracket(qi_).unwrap().project(Subspace::H).is_zero() {
                    bad = Some(format!("[{hl}, q{i}] leaves Q"));
                }
            }
        }
        let mut echelon = span.transpose();
        let rank = echelon.rref().len();
        let h_dim = bases.h_basis.len();
        if rank != h_dim {
            bad = Some(format!("[Q,Q] has rank {rank}, H has dimension {h_dim}"));
        }
        push(&mut report, "reductive-split", bad);
    }

    // Norm table and Killing orthogonality of the basis.
    {
        let mut bad = None;
        for (l, v) in &bases.b_basis {
            if v.norm2() != qi(l.norm_sign()) {
                bad = Some(format!("norm2({l}) = {}", v.norm2()));
                break;
            }
        }
        if bad.is_none() {
            'ortho: for (la, a) in &bases.b_basis {
                for (lb, b) in &bases.b_basis {
                    if la != lb && !Zero::is_zero(&a.killing(b).unwrap()) {
                        bad = Some(format!("B({la},{lb}) != 0"));
                        break 'ortho;
                    }
                }
            }
        }
        push(&mut report, "orthonormal-basis", bad);
    }

    // Brackets of basis vectors land in {0, +-basis vector}, and ad(X)^2 Y
    // is 0, +Y (X noncompact) or -Y (X compact).
    {
        let mut bad = None;
        'stable: for (la, a) in &bases.b_basis {
            for (lb, b) in &bases.b_basis {
                let br = a.bracket(b).unwrap();
                let coords = bases.b_coords(&br);
                let nz: Vec<(usize, &Q)> =
                    coords.iter().enumerate().filter(|(_, c)| !Zero::is_zero(*c)).collect();
                let closed = match nz.len() {
                    0 => true,
                    1 => nz[0].1 == &qi(1) || nz[0].1 == &qi(-1),
                    _ => false,
                };
                if !closed {
                    bad = Some(format!("[{la},{lb}] has coefficients outside {{0,+-1}}"));
                    break 'stable;
                }
                if nz.len() == 1 {
                    let sq = a.bracket(&br).unwrap();
                    let sign = if a.apply_involution(Involution::Theta) == *a { -1 } else { 1 };
                    if sq != b.scale(&qi(sign)) {
                        bad = Some(format!("ad({la})^2 {lb} != {sign} * {lb}"));
                        break 'stable;
                    }
                }
            }
        }
        push(&mut report, "basis-bracket-closure", bad);
    }

    // Light-like directions from exact rational unit vectors.
    {
        let mut bad = None;
        for s in 0..6i64 {
            let v: Vec<Q> = (0..n as i64 - 1).map(|i| q((s + 1) * (i + 1) % 5 - 2, i % 3 + 1)).collect();
            let w = rational_unit_vector(&v);
            if let Err(e) = lightlike_q(&bases, &w) {
                bad = Some(e.to_string());
                break;
            }
        }
        push(&mut report, "lightlike-nilpotency", bad);
    }

    // theta equals the inner automorphism exp(pi ad q0), numerically.
    {
        let op = crate::exp_group::exp_ad(alg, &bases.q0().to_f64(), std::f64::consts::PI);
        let theta = alg.involution_matrix(Involution::Theta).to_f64();
        let dev = (&op - &theta).amax();
        push(&mut report, "theta-is-inner", (dev > 1e-10).then(|| format!("max deviation {dev:e}")));
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::verify_structure;

    fn bases(n: usize) -> CanonicalBases {
        canonical_bases(&Algebra::get(n).unwrap()).unwrap()
    }

    #[test]
    fn q2_and_q0_minus_q2_decompositions() {
        let b = bases(4);
        let alg = b.algebra();
        let e = |l: BasisLabel| -> ElementQ { Element::basis(alg, l) };
        // q2 = (-X++ - X+- + X-+ + X--)/4
        let expect = e(BasisLabel::Xpp)
            .neg()
            .sub(&e(BasisLabel::Xpm))
            .unwrap()
            .add(&e(BasisLabel::Xmp))
            .unwrap()
            .add(&e(BasisLabel::Xmm))
            .unwrap()
            .scale(&q(1, 4));
        assert_eq!(*b.q2(), expect);
        // q0 - q2 = (X++ + X+-)/2, the light-like tangent print of X++.
        let diff = b.q0().sub(b.q2()).unwrap();
        let expect = e(BasisLabel::Xpp).add(&e(BasisLabel::Xpm)).unwrap().scale(&q(1, 2));
        assert_eq!(diff, expect);
        // project(Q, X++) = q0 - q2 and project(Q, X+0:k) = 0.
        assert_eq!(e(BasisLabel::Xpp).project(Subspace::Q), diff);
        assert!(e(BasisLabel::Xp0(3)).project(Subspace::Q).is_zero());
    }

    #[test]
    fn q0_q2_bracket_is_minus_j1() {
        for n in [2, 3, 5] {
            let b = bases(n);
            assert_eq!(b.q0().bracket(b.q2()).unwrap(), b.j1().neg());
        }
    }

    #[test]
    fn rij_matches_algebra_rotation() {
        let b = bases(5);
        let alg = b.algebra();
        for i in alg.slices() {
            for j in alg.slices() {
                if i < j {
                    let rij = b.q[i].bracket(&b.q[j]).unwrap();
                    assert_eq!(rij, Element::basis(alg, BasisLabel::R(i, j)));
                }
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        let b = bases(4);
        let iw = intertwiners(&b).unwrap();
        // ad(X1)q0 = q1, ad(J1)q0 = -q2, ad(X3)q1 = q3.
        assert_eq!(iw.x1.bracket(b.q0()).unwrap(), *b.q1());
        assert_eq!(b.j1().bracket(b.q0()).unwrap(), b.q2().neg());
        let x3 = &iw.xk.iter().find(|(k, _)| *k == 3).unwrap().1;
        assert_eq!(x3.bracket(b.q1()).unwrap(), *b.qk(3));
    }

    #[test]
    fn lightlike_examples() {
        let b = bases(3);
        // w = (0,-1,0): E = q0 - q2, nilpotent of order two.
        let e = lightlike_q(&b, &[qi(0), qi(-1), qi(0)]).unwrap();
        assert_eq!(e, b.q0().sub(b.q2()).unwrap());
        let ad = b.algebra().ad_matrix_q(e.coeffs());
        assert!(ad.mul(&ad).mul(&ad).is_zero());
        // w = (1,0,0): E = q0 + q1 has exact zero norm.
        let e = lightlike_q(&b, &[qi(1), qi(0), qi(0)]).unwrap();
        assert!(Zero::is_zero(&e.norm2()));
        // w = (3/5, 4/5, 0): exact Pythagorean unit.
        lightlike_q(&b, &[q(3, 5), q(4, 5), qi(0)]).unwrap();
        // Non-unit w is rejected.
        assert!(matches!(lightlike_q(&b, &[qi(1), qi(1), qi(0)]), Err(Error::NotUnit(_))));
    }

    #[test]
    fn reductive_suite_clean() {
        for n in [2, 3, 4, 5] {
            let report = verify_reductive(&Algebra::get(n).unwrap());
            let fails: Vec<_> = report.failures().collect();
            assert!(fails.is_empty(), "n = {n}: {fails:?}");
        }
        assert!(verify_structure(4).unwrap().passed());
    }
}
