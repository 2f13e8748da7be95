//! Construction of so(2,n): matrix realization, simultaneous root spaces of
//! (ad J1, ad J2) over the rationals, anchor-relation normalization, and the
//! exact caches (structure tensor, Killing matrix, involutions, projectors).

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{q, qi, sqrt_exact, Q, QMatrix};
use crate::lie_core::{Algebra, BasisLabel, MatrixRealization, Subspace};

/// Elementary antisymmetrized generators M_ab = E_ab eta_b - E_ba eta_a,
/// enumerated over axis pairs a < b of the (n+2)-dimensional metric space.
struct RepBasis {
    size: usize,
    eta: Vec<Q>,
    pairs: Vec<(usize, usize)>,
    mats: Vec<QMatrix>,
}

impl RepBasis {
    fn new(n: usize) -> Self {
        let size = n + 2;
        let eta: Vec<Q> = (0..size).map(|a| if a < 2 { qi(1) } else { qi(-1) }).collect();
        let mut pairs = Vec::new();
        for a in 0..size {
            for b in (a + 1)..size {
                pairs.push((a, b));
            }
        }
        let mats = pairs
            .iter()
            .map(|&(a, b)| {
                let mut m = QMatrix::zeros(size, size);
                m[(a, b)] = eta[b].clone();
                m[(b, a)] = -eta[a].clone();
                m
            })
            .collect();
        Self { size, eta, pairs, mats }
    }

    /// Coordinates of an so(2,n) matrix over the M_ab basis.
    fn coords(&self, x: &QMatrix) -> Vec<Q> {
        self.pairs.iter().map(|&(a, b)| &x[(a, b)] / &self.eta[b]).collect()
    }

    fn assemble(&self, v: &[Q]) -> QMatrix {
        let mut m = QMatrix::zeros(self.size, self.size);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.mats[i].scale(c));
            }
        }
        m
    }

    fn is_in_algebra(&self, x: &QMatrix) -> bool {
        // X^T eta + eta X = 0 and exact reconstruction from pair coordinates.
        let recon = self.assemble(&self.coords(x));
        recon == *x
    }
}

fn theta_mat(x: &QMatrix) -> QMatrix {
    x.transpose().neg()
}

fn sigma_mat(s: &[Q], x: &QMatrix) -> QMatrix {
    QMatrix::from_fn(x.rows, x.cols, |i, j| &(&s[i] * &x[(i, j)]) * &s[j])
}

/// Simultaneous eigenspace of (ad J1, ad J2) for the integer pair (alpha, beta),
/// expressed in M_ab coordinates.
fn root_space(ad1: &QMatrix, ad2: &QMatrix, alpha: i64, beta: i64) -> Vec<Vec<Q>> {
    let d = ad1.rows;
    let mut stacked = QMatrix::zeros(2 * d, d);
    for i in 0..d {
        for j in 0..d {
            stacked[(i, j)] = &ad1[(i, j)] - &if i == j { qi(alpha) } else { Q::zero() };
            stacked[(d + i, j)] = &ad2[(i, j)] - &if i == j { qi(beta) } else { Q::zero() };
        }
    }
    stacked.nullspace()
}

pub fn build_algebra(n: usize) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let dim = (n + 1) * (n + 2) / 2;
    let rep = RepBasis::new(n);
    let fail = |msg: String| Error::NormalizationFailure(msg);

    // The abelian boost plane: J1 mixes the second timelike axis with the
    // first spacelike one, J2 the first timelike axis with the second
    // spacelike one. This puts J1 in the stabilizer of the base point and J2
    // in its complement, and makes sigma*theta = theta*sigma automatic.
    let pair_index: HashMap<(usize, usize), usize> =
        rep.pairs.iter().copied().enumerate().map(|(i, p)| (p, i)).collect();
    let j1 = rep.mats[pair_index[&(1, 2)]].clone();
    let j2 = rep.mats[pair_index[&(0, 3)]].clone();
    let sigma_diag: Vec<Q> = (0..rep.size).map(|a| if a == 0 { qi(1) } else { qi(-1) }).collect();

    // Adjoint matrices of J1, J2 over the elementary basis.
    let ad_of = |j: &QMatrix| {
        let cols: Vec<Vec<Q>> = rep.mats.iter().map(|m| rep.coords(&j.commutator(m))).collect();
        QMatrix::from_fn(dim, dim, |r, c| cols[c][r].clone())
    };
    let ad1 = ad_of(&j1);
    let ad2 = ad_of(&j2);

    let space = |alpha: i64, beta: i64| root_space(&ad1, &ad2, alpha, beta);

    // --- rank-one root spaces (alpha, beta) = (+-1, +-1) -------------------
    let take_line = |alpha: i64, beta: i64| -> Result<Vec<Q>> {
        let ns = space(alpha, beta);
        if ns.len() != 1 {
            return Err(fail(format!("root space ({alpha},{beta}) has dimension {}", ns.len())));
        }
        Ok(ns.into_iter().next().unwrap())
    };

    // Anchor [theta X, X] = 4(J1 + s J2) fixes the scale of X++ (s = +1) and
    // X+- (s = -1); the leftover sign is fixed by the echelon normalization.
    let normalize_pp = |v: Vec<Q>, s: i64| -> Result<QMatrix> {
        let m = rep.assemble(&v);
        let anchor = j1.add(&j2.scale(&qi(s)));
        let br = theta_mat(&m).commutator(&m);
        // br must be an exact multiple of the anchor
        let lam = {
            let bc = rep.coords(&br);
            let ac = rep.coords(&anchor);
            let k = ac
                .iter()
                .position(|c| !c.is_zero())
                .ok_or_else(|| fail("degenerate anchor".into()))?;
            &bc[k] / &ac[k]
        };
        if br != anchor.scale(&lam) {
            return Err(fail(format!("[theta X, X] not proportional to J1{s:+}J2")));
        }
        let c = sqrt_exact(&(qi(4) / &lam))
            .ok_or_else(|| fail("anchor scale is not a rational square".into()))?;
        Ok(m.scale(&c))
    };

    let xpp = normalize_pp(take_line(1, 1)?, 1)?;
    // X+- is slaved to X++ through sigma: this realizes the pairing
    // sigma X++ = -X+-, and [theta X+-, X+-] = 4(J1-J2) follows because
    // sigma and theta commute. The (1,-1) eigenvector found independently
    // must agree up to scale.
    let xpm = sigma_mat(&sigma_diag, &xpp).neg();
    {
        let raw = rep.assemble(&take_line(1, -1)?);
        let rc = rep.coords(&raw);
        let xc = rep.coords(&xpm);
        let k = rc.iter().position(|c| !c.is_zero()).unwrap();
        let lam = &xc[k] / &rc[k];
        if xpm != raw.scale(&lam) {
            return Err(fail("-sigma(X++) is not a (1,-1) root vector".into()));
        }
        let anchor_check = normalize_pp(rep.coords(&xpm), -1)?;
        if anchor_check != xpm && anchor_check != xpm.neg() {
            return Err(fail("X+- violates its theta anchor".into()));
        }
    }

    // --- slice root spaces (0,+1) and (+1,0), one line per extra axis ------
    // Slice k occupies the spacelike axis k+1; k runs from 3 to n.
    let slice_lines = |alpha: i64, beta: i64| -> Result<HashMap<usize, Vec<Q>>> {
        let ns = space(alpha, beta);
        if ns.len() != n - 2 {
            return Err(fail(format!(
                "root space ({alpha},{beta}) has dimension {}, expected {}",
                ns.len(),
                n - 2
            )));
        }
        let mut by_axis = HashMap::new();
        for v in ns {
            let mut axis = None;
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    let (a, b) = rep.pairs[i];
                    let m = a.max(b);
                    if m < 4 || (axis.is_some() && axis != Some(m)) {
                        return Err(fail(format!(
                            "slice eigenvector for ({alpha},{beta}) is not axis-supported"
                        )));
                    }
                    axis = Some(m);
                }
            }
            let m = axis.ok_or_else(|| fail("zero vector in nullspace basis".into()))?;
            if by_axis.insert(m, v).is_some() {
                return Err(fail(format!("two slice eigenvectors share axis {m}")));
            }
        }
        Ok(by_axis)
    };

    let mut x0p: HashMap<usize, QMatrix> = HashMap::new();
    let mut xp0: HashMap<usize, QMatrix> = HashMap::new();
    if n >= 3 {
        let zp_lines = slice_lines(0, 1)?;
        let p0_lines = slice_lines(1, 0)?;
        for k in 3..=n {
            let axis = k + 1;
            let v = zp_lines
                .get(&axis)
                .ok_or_else(|| fail(format!("missing (0,+) eigenvector for slice {k}")))?;
            let m = rep.assemble(v);
            // Anchor [theta X, X] = 2 J2.
            let br = theta_mat(&m).commutator(&m);
            let lam = &rep.coords(&br)[pair_index[&(0, 3)]] / &rep.coords(&j2)[pair_index[&(0, 3)]];
            if br != j2.scale(&lam) {
                return Err(fail(format!("[theta X0+:{k}, X0+:{k}] not proportional to J2")));
            }
            let c = sqrt_exact(&(qi(2) / &lam))
                .ok_or_else(|| fail("slice anchor scale is not a rational square".into()))?;
            let x0pk = m.scale(&c);

            // Anchor [X0+:k, X+0:k] = X++ fixes scale and sign of X+0:k.
            let w = p0_lines
                .get(&axis)
                .ok_or_else(|| fail(format!("missing (+,0) eigenvector for slice {k}")))?;
            let wm = rep.assemble(w);
            let br = x0pk.commutator(&wm);
            let xppc = rep.coords(&xpp);
            let brc = rep.coords(&br);
            let lead = xppc
                .iter()
                .position(|c| !c.is_zero())
                .ok_or_else(|| fail("X++ vanished".into()))?;
            let mu = &brc[lead] / &xppc[lead];
            if mu.is_zero() || br != xpp.scale(&mu) {
                return Err(fail(format!("[X0+:{k}, X+0:{k}] not proportional to X++")));
            }
            let xp0k = wm.scale(&mu.recip());

            x0p.insert(k, x0pk);
            xp0.insert(k, xp0k);
        }

        // With X+- slaved to X++ the remaining joint sign flip leaves every
        // table relation invariant, so this anchor has no freedom left: it
        // must come out at +2.
        if x0p[&3].commutator(&xpm) != xp0[&3].scale(&qi(2)) {
            return Err(fail("[X0+:3, X+-] != 2 X+0:3".into()));
        }
    }
    let xmm = theta_mat(&xpp);
    let xmp = theta_mat(&xpm);

    // --- assemble the ordered basis ----------------------------------------
    let mut labels = vec![
        BasisLabel::J1,
        BasisLabel::J2,
        BasisLabel::Xpp,
        BasisLabel::Xpm,
        BasisLabel::Xmp,
        BasisLabel::Xmm,
    ];
    let mut gens = vec![j1.clone(), j2.clone(), xpp.clone(), xpm.clone(), xmp, xmm];
    for k in 3..=n {
        labels.extend([BasisLabel::X0p(k), BasisLabel::X0m(k), BasisLabel::Xp0(k), BasisLabel::Xm0(k)]);
        let zp = x0p[&k].clone();
        let p0 = xp0[&k].clone();
        gens.push(zp.clone());
        gens.push(theta_mat(&zp));
        gens.push(p0.clone());
        gens.push(theta_mat(&p0));
    }
    // Rotations: R:i:j = -(1/2)[X0+:i, X0-:j], i.e. the element the tangent
    // vectors q_i, q_j of the reductive layer bracket to. With this sign the
    // action on the root spaces is [R:i:j, X(a)0:j] = X(a)0:i for both
    // families; the two action signs are forced equal by the Jacobi identity.
    for i in 3..=n {
        for j in (i + 1)..=n {
            labels.push(BasisLabel::R(i, j));
            let r = x0p[&i].commutator(&theta_mat(&x0p[&j])).scale(&q(-1, 2));
            gens.push(r);
        }
    }
    if labels.len() != dim {
        return Err(fail(format!("assembled {} basis vectors, expected {dim}", labels.len())));
    }

    // Root-eigenvalue and algebra-membership sanity for every generator.
    for (lbl, g) in labels.iter().zip(&gens) {
        if !rep.is_in_algebra(g) {
            return Err(fail(format!("{lbl} does not preserve eta")));
        }
        let (a, b) = lbl.root();
        if j1.commutator(g) != g.scale(&qi(a)) || j2.commutator(g) != g.scale(&qi(b)) {
            return Err(fail(format!("{lbl} is not a ({a},{b}) root vector")));
        }
    }

    let coords = {
        let cols: Vec<Vec<Q>> = gens.iter().map(|g| rep.coords(g)).collect();
        QMatrix::from_fn(dim, dim, |r, c| cols[c][r].clone())
    };
    let coords_inv = coords
        .inverse()
        .ok_or_else(|| fail("root vectors do not form a basis".into()))?;

    // --- structure tensor ---------------------------------------------------
    let to_basis = |x: &QMatrix| -> Vec<Q> { coords_inv.mul_vec(&rep.coords(x)) };
    let mut bracket_q: Vec<Vec<(usize, Q)>> = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            let br = gens[i].commutator(&gens[j]);
            if !rep.is_in_algebra(&br) {
                return Err(fail(format!("bracket ({i},{j}) leaves the algebra")));
            }
            let c = to_basis(&br);
            let terms: Vec<(usize, Q)> =
                c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            bracket_q[j * dim + i] = terms.iter().map(|(m, v)| (*m, -v.clone())).collect();
            bracket_q[i * dim + j] = terms;
        }
    }

    // --- Killing matrix by sparse contraction over the structure tensor ----
    let mut killing_q = QMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..=i {
            let mut acc = Q::zero();
            for a in 0..dim {
                for (m, c) in &bracket_q[j * dim + a] {
                    for (r, c2) in &bracket_q[i * dim + m] {
                        if r == &a {
                            acc += c * c2;
                        }
                    }
                }
            }
            killing_q[(i, j)] = acc.clone();
            killing_q[(j, i)] = acc;
        }
    }

    // --- involutions and projectors in basis coordinates --------------------
    let theta_cols: Vec<Vec<Q>> = gens.iter().map(|g| to_basis(&theta_mat(g))).collect();
    let sigma_cols: Vec<Vec<Q>> = gens.iter().map(|g| to_basis(&sigma_mat(&sigma_diag, g))).collect();
    let theta_q = QMatrix::from_fn(dim, dim, |r, c| theta_cols[c][r].clone());
    let sigma_q = QMatrix::from_fn(dim, dim, |r, c| sigma_cols[c][r].clone());

    let eye = QMatrix::identity(dim);
    let half = q(1, 2);
    let p_h = eye.add(&sigma_q).scale(&half);
    let p_q = eye.sub(&sigma_q).scale(&half);
    let p_k = eye.add(&theta_q).scale(&half);
    let p_p = eye.sub(&theta_q).scale(&half);
    let proj_q = vec![
        p_h.clone(),
        p_q.clone(),
        p_k.clone(),
        p_p.clone(),
        p_k.mul(&p_q),
        p_p.mul(&p_q),
        p_k.mul(&p_h),
        p_p.mul(&p_h),
    ];

    // Involutions must square to the identity and commute.
    if theta_q.mul(&theta_q) != eye || sigma_q.mul(&sigma_q) != eye {
        return Err(fail("involution does not square to the identity".into()));
    }
    if theta_q.mul(&sigma_q) != sigma_q.mul(&theta_q) {
        return Err(fail("theta and sigma do not commute".into()));
    }

    let gens_f = gens.iter().map(QMatrix::to_f64).collect();
    let mut base_point = vec![Q::zero(); rep.size];
    base_point[0] = Q::one();

    let index: HashMap<BasisLabel, usize> =
        labels.iter().copied().enumerate().map(|(i, l)| (l, i)).collect();

    let alg = Algebra {
        n,
        dim,
        labels,
        rep: MatrixRealization {
            eta: rep.eta.clone(),
            gens,
            gens_f,
            base_point,
            sigma_conjugator: sigma_diag,
            coords,
            coords_inv,
        },
        index,
        bracket_q,
        bracket_f: Vec::new(),
        killing_q,
        killing_f: nalgebra::DMatrix::zeros(0, 0),
        theta_q,
        theta_f: nalgebra::DMatrix::zeros(0, 0),
        sigma_q,
        sigma_f: nalgebra::DMatrix::zeros(0, 0),
        proj_q,
        proj_f: Vec::new(),
    };
    Ok(alg.finish())
}

/// Express an arbitrary matrix of the defining representation in basis
/// coordinates; used by tests that push conjugation through the isomorphism.
pub(crate) fn matrix_to_coords(alg: &Algebra, x: &QMatrix) -> Vec<Q> {
    let rep = RepBasis::new(alg.n);
    alg.rep.coords_inv.mul_vec(&rep.coords(x))
}

#[allow(dead_code)]
pub(crate) fn subspace_dim(alg: &Algebra, s: Subspace) -> usize {
    // Rank of an exact projector equals its trace.
    let t = alg.projector(s).trace();
    assert!(t.is_integer() && !t.is_negative());
    t.to_integer().try_into().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{Element, ElementQ};
    use std::sync::Arc;

    #[test]
    fn dimensions_and_label_counts() {
        for (n, dim) in [(2usize, 6usize), (3, 10), (5, 21)] {
            let alg = Algebra::get(n).unwrap();
            assert_eq!(alg.dim, dim);
            let slices =
                alg.labels.iter().filter(|l| matches!(l, BasisLabel::X0p(_))).count();
            assert_eq!(slices, n - 2);
            let rots = alg.labels.iter().filter(|l| matches!(l, BasisLabel::R(_, _))).count();
            assert_eq!(rots, (n - 2) * (n.max(3) - 3) / 2);
        }
    }

    #[test]
    fn three_rotations_at_n5() {
        // l = 6: (l-4)(l-3)/2 = 3 rotation labels.
        let alg = Algebra::get(5).unwrap();
        let rots: Vec<_> =
            alg.labels.iter().filter(|l| matches!(l, BasisLabel::R(_, _))).collect();
        assert_eq!(rots.len(), 3);
    }

    #[test]
    fn centre_of_compact_part_is_two_dimensional_at_n2() {
        let alg = Algebra::get(2).unwrap();
        // Z(K) inside so(2)+so(2): brackets of K-elements all vanish, so the
        // centre is all of K, which is 2-dimensional.
        let dim_k = subspace_dim(&alg, Subspace::K);
        assert_eq!(dim_k, 2);
        let k_basis: Vec<ElementQ> = (0..alg.dim)
            .map(|i| {
                Element::basis(&Arc::clone(&alg), alg.labels[i]).project(Subspace::K)
            })
            .collect();
        for a in &k_basis {
            for b in &k_basis {
                assert!(a.bracket(b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn invalid_dimension() {
        assert!(matches!(build_algebra(1), Err(Error::InvalidDimension(1))));
    }

    #[test]
    fn shared_algebra_is_safe_across_threads() {
        let alg = Algebra::get(4).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let alg = Arc::clone(&alg);
                std::thread::spawn(move || {
                    let x: ElementQ = Element::basis(&alg, alg.labels[t]);
                    let y = Element::basis(&alg, alg.labels[(t + 3) % alg.dim]);
                    let b = x.bracket(&y).unwrap();
                    x.killing(&b).unwrap()
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
