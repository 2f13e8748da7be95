//! Exact verification of the structure of so(2,n): antisymmetry, Jacobi,
//! ad-invariance of the Killing form, the commutator-table relations, the
//! involution relations and the Killing-orthogonal block decomposition.
//!
//! Failures are data, not panics: every check lands in a [`Report`] with a
//! counterexample string, and the CLI exit code is derived from the report.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{qi, Q, QMatrix};
use crate::lie_core::{Algebra, BasisLabel, Element, ElementQ, Involution, Subspace};

/// One named check, with an optional counterexample when it failed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub n: usize,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    fn push(&mut self, n: usize, name: &str, counterexample: Option<String>) {
        self.checks.push(Check {
            n,
            name: name.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

struct V<'a> {
    alg: &'a Arc<Algebra>,
    report: Report,
}

impl<'a> V<'a> {
    fn elt(&self, l: BasisLabel) -> ElementQ {
        Element::basis(self.alg, l)
    }

    fn check(&mut self, name: &str, counterexample: Option<String>) {
        self.report.push(self.alg.n, name, counterexample);
    }

    /// Exact equality of a computed bracket with its expected value; the
    /// failing relation is recorded verbatim.
    fn relations(&mut self, name: &str, rels: &[(ElementQ, ElementQ, String)]) {
        let mut bad = None;
        for (lhs, rhs, desc) in rels {
            if lhs != rhs {
                bad = Some(desc.clone());
                break;
            }
        }
        self.check(name, bad);
    }
}

/// Run the full relation suite on an already-built algebra.
pub fn verify_algebra(alg: &Arc<Algebra>) -> Report {
    let mut v = V { alg, report: Report::default() };
    let n = alg.n;
    let dim = alg.dim;

    // Dimension and root multiplicities.
    v.check(
        "dimension",
        (dim != (n + 1) * (n + 2) / 2).then(|| format!("dim = {dim}")),
    );
    {
        let pp = alg.labels.iter().filter(|l| l.root().0 != 0 && l.root().1 != 0).count();
        let slice = alg
            .labels
            .iter()
            .filter(|l| matches!(l, BasisLabel::X0p(_) | BasisLabel::X0m(_) | BasisLabel::Xp0(_) | BasisLabel::Xm0(_)))
            .count();
        let rot = alg.labels.iter().filter(|l| matches!(l, BasisLabel::R(_, _))).count();
        let ok = pp == 4 && slice == 4 * (n - 2) && rot == (n - 2) * (n.max(3) - 3) / 2;
        v.check(
            "root-multiplicities",
            (!ok).then(|| format!("(pm,slice,rot) = ({pp},{slice},{rot})")),
        );
    }

    // Antisymmetry of the structure tensor.
    {
        let mut bad = None;
        'outer: for i in 0..dim {
            if !alg.bracket_terms_q(i, i).is_empty() {
                bad = Some(format!("[{l},{l}] != 0", l = alg.label(i)));
                break;
            }
            for j in 0..dim {
                let ij = alg.bracket_terms_q(i, j);
                let ji = alg.bracket_terms_q(j, i);
                if ij.len() != ji.len()
                    || ij.iter().any(|(m, c)| !ji.iter().any(|(m2, c2)| m2 == m && *c2 == -c))
                {
                    bad = Some(format!("({}, {})", alg.label(i), alg.label(j)));
                    break 'outer;
                }
            }
        }
        v.check("antisymmetry", bad);
    }

    // Jacobi identity on every basis triple, exactly.
    {
        let mut bad = None;
        let mut acc = vec![Q::zero(); dim];
        'jac: for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    for c in &mut acc {
                        c.set_zero();
                    }
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, w) in alg.bracket_terms_q(a, b) {
                            for (r, w2) in alg.bracket_terms_q(*m, c) {
                                acc[*r] += w * w2;
                            }
                        }
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        bad = Some(format!(
                            "({}, {}, {})",
                            alg.label(i),
                            alg.label(j),
                            alg.label(k)
                        ));
                        break 'jac;
                    }
                }
            }
        }
        v.check("jacobi", bad);
    }

    // Killing matrix: symmetric, and equal to the defining-representation
    // trace form n*tr(XY) (independent route).
    {
        let km = alg.killing_matrix();
        let mut bad = None;
        'kill: for i in 0..dim {
            for j in 0..=i {
                if km[(i, j)] != km[(j, i)] {
                    bad = Some(format!("asymmetry at ({i},{j})"));
                    break 'kill;
                }
                let tr = alg.rep.gens[i].mul(&alg.rep.gens[j]).trace() * qi(n as i64);
                if km[(i, j)] != tr {
                    bad = Some(format!(
                        "B({}, {}) = {} but n*tr = {}",
                        alg.label(i),
                        alg.label(j),
                        km[(i, j)],
                        tr
                    ));
                    break 'kill;
                }
            }
        }
        v.check("killing-vs-defining-trace", bad);
    }

    // ad-invariance B([z,x],y) + B(x,[z,y]) = 0 on all basis triples.
    {
        let km = alg.killing_matrix();
        let mut bad = None;
        'inv: for z in 0..dim {
            for x in 0..dim {
                for y in 0..dim {
                    let mut acc = Q::zero();
                    for (m, c) in alg.bracket_terms_q(z, x) {
                        acc += c * &km[(*m, y)];
                    }
                    for (m, c) in alg.bracket_terms_q(z, y) {
                        acc += c * &km[(x, *m)];
                    }
                    if !acc.is_zero() {
                        bad = Some(format!(
                            "(z,x,y) = ({}, {}, {})",
                            alg.label(z),
                            alg.label(x),
                            alg.label(y)
                        ));
                        break 'inv;
                    }
                }
            }
        }
        v.check("killing-ad-invariance", bad);
    }

    // The Iwasawa commutator table.
    {
        let j1 = v.elt(BasisLabel::J1);
        let j2 = v.elt(BasisLabel::J2);
        let xpp = v.elt(BasisLabel::Xpp);
        let xpm = v.elt(BasisLabel::Xpm);
        let mut rels = vec![
            (j1.bracket(&xpm).unwrap(), xpm.clone(), "[J1,X+-] = X+-".into()),
            (j2.bracket(&xpm).unwrap(), xpm.neg(), "[J2,X+-] = -X+-".into()),
            (j1.bracket(&xpp).unwrap(), xpp.clone(), "[J1,X++] = X++".into()),
            (j2.bracket(&xpp).unwrap(), xpp.clone(), "[J2,X++] = X++".into()),
        ];
        for k in alg.slices() {
            let zp = v.elt(BasisLabel::X0p(k));
            let p0 = v.elt(BasisLabel::Xp0(k));
            rels.push((
                j1.bracket(&p0).unwrap(),
                p0.clone(),
                format!("[J1,X+0:{k}] = X+0:{k}"),
            ));
            rels.push((
                j2.bracket(&zp).unwrap(),
                zp.clone(),
                format!("[J2,X0+:{k}] = X0+:{k}"),
            ));
            rels.push((
                zp.bracket(&xpm).unwrap(),
                p0.scale(&qi(2)),
                format!("[X0+:{k},X+-] = 2X+0:{k}"),
            ));
            for k2 in alg.slices() {
                let p0b = v.elt(BasisLabel::Xp0(k2));
                let expected = if k == k2 { xpp.clone() } else { Element::zero(alg) };
                rels.push((
                    zp.bracket(&p0b).unwrap(),
                    expected,
                    format!("[X0+:{k},X+0:{k2}] = delta*X++"),
                ));
            }
        }
        v.relations("iwasawa-table", &rels);
    }

    // Pyatetskii-Shapiro split: H1 = J1 - J2 grades the first factor,
    // H2 = J1 + J2 the second.
    {
        let j1 = v.elt(BasisLabel::J1);
        let j2 = v.elt(BasisLabel::J2);
        let h1 = j1.sub(&j2).unwrap();
        let h2 = j1.add(&j2).unwrap();
        let xpp = v.elt(BasisLabel::Xpp);
        let xpm = v.elt(BasisLabel::Xpm);
        let mut rels = vec![
            (h1.bracket(&xpm).unwrap(), xpm.scale(&qi(2)), "[H1,X+-] = 2X+-".into()),
            (h2.bracket(&xpp).unwrap(), xpp.scale(&qi(2)), "[H2,X++] = 2X++".into()),
            (h2.bracket(&xpm).unwrap(), Element::zero(alg), "[H2,X+-] = 0".into()),
        ];
        for k in alg.slices() {
            let zp = v.elt(BasisLabel::X0p(k));
            let p0 = v.elt(BasisLabel::Xp0(k));
            rels.push((h1.bracket(&zp).unwrap(), zp.neg(), format!("[H1,X0+:{k}] = -X0+:{k}")));
            rels.push((h2.bracket(&zp).unwrap(), zp.clone(), format!("[H2,X0+:{k}] = X0+:{k}")));
            rels.push((h2.bracket(&p0).unwrap(), p0.clone(), format!("[H2,X+0:{k}] = X+0:{k}")));
            rels.push((
                xpm.bracket(&zp).unwrap(),
                p0.scale(&qi(-2)),
                format!("[X+-,X0+:{k}] = -2X+0:{k}"),
            ));
        }
        v.relations("pyatetskii-shapiro", &rels);
    }

    // Links between the nilpotent part and its theta image.
    {
        let j1 = v.elt(BasisLabel::J1);
        let j2 = v.elt(BasisLabel::J2);
        let xpp = v.elt(BasisLabel::Xpp);
        let xpm = v.elt(BasisLabel::Xpm);
        let th = |e: &ElementQ| e.apply_involution(Involution::Theta);
        let mut rels = vec![
            (
                th(&xpp).bracket(&xpp).unwrap(),
                j1.add(&j2).unwrap().scale(&qi(4)),
                "[thX++,X++] = 4(J1+J2)".into(),
            ),
            (
                th(&xpm).bracket(&xpm).unwrap(),
                j1.sub(&j2).unwrap().scale(&qi(4)),
                "[thX+-,X+-] = 4(J1-J2)".into(),
            ),
        ];
        for k in alg.slices() {
            let zp = v.elt(BasisLabel::X0p(k));
            let zm = v.elt(BasisLabel::X0m(k));
            let p0 = v.elt(BasisLabel::Xp0(k));
            let m0 = v.elt(BasisLabel::Xm0(k));
            rels.push((
                th(&p0).bracket(&xpp).unwrap(),
                zp.scale(&qi(2)),
                format!("[thX+0:{k},X++] = 2X0+:{k}"),
            ));
            rels.push((
                th(&zp).bracket(&zp).unwrap(),
                j2.scale(&qi(2)),
                format!("[thX0+:{k},X0+:{k}] = 2J2"),
            ));
            rels.push((
                th(&xpp).bracket(&zp).unwrap(),
                m0.scale(&qi(2)),
                format!("[thX++,X0+:{k}] = 2X-0:{k}"),
            ));
            rels.push((
                th(&xpm).bracket(&p0).unwrap(),
                zp.scale(&qi(2)),
                format!("[thX+-,X+0:{k}] = 2X0+:{k}"),
            ));
            rels.push((
                th(&zp).bracket(&xpp).unwrap(),
                p0.scale(&qi(-2)),
                format!("[thX0+:{k},X++] = -2X+0:{k}"),
            ));
            rels.push((
                th(&p0).bracket(&xpm).unwrap(),
                zm.scale(&qi(-2)),
                format!("[thX+0:{k},X+-] = -2X0-:{k}"),
            ));
            rels.push((
                th(&xpp).bracket(&p0).unwrap(),
                zm.scale(&qi(-2)),
                format!("[thX++,X+0:{k}] = -2X0-:{k}"),
            ));
            rels.push((
                th(&xpm).bracket(&zm).unwrap(),
                m0.scale(&qi(-2)),
                format!("[X-+,X0-:{k}] = -2X-0:{k}"),
            ));
        }
        v.relations("theta-link", &rels);
    }

    // Rotation generators: defining relation, action on the root spaces,
    // vanishing on X(+-+-), and the so(n-2) bracket pattern.
    {
        let mut rels = Vec::new();
        let r = |i: usize, j: usize| -> ElementQ {
            // R with normalized index order; R:j:i = -R:i:j.
            if i < j {
                v.elt(BasisLabel::R(i, j))
            } else {
                v.elt(BasisLabel::R(j, i)).neg()
            }
        };
        for i in alg.slices() {
            for j in alg.slices() {
                if i == j {
                    continue;
                }
                let zpi = v.elt(BasisLabel::X0p(i));
                let zmj = v.elt(BasisLabel::X0m(j));
                rels.push((
                    zpi.bracket(&zmj).unwrap(),
                    r(i, j).scale(&qi(-2)),
                    format!("[X0+:{i},X0-:{j}] = -2R:{i}:{j}"),
                ));
                let rij = r(i, j);
                rels.push((
                    rij.bracket(&v.elt(BasisLabel::Xp0(j))).unwrap(),
                    v.elt(BasisLabel::Xp0(i)),
                    format!("[R:{i}:{j},X+0:{j}] = X+0:{i}"),
                ));
                rels.push((
                    rij.bracket(&v.elt(BasisLabel::X0p(j))).unwrap(),
                    v.elt(BasisLabel::X0p(i)),
                    format!("[R:{i}:{j},X0+:{j}] = X0+:{i}"),
                ));
                for lbl in [BasisLabel::Xpp, BasisLabel::Xpm, BasisLabel::Xmp, BasisLabel::Xmm] {
                    rels.push((
                        rij.bracket(&v.elt(lbl)).unwrap(),
                        Element::zero(alg),
                        format!("[R:{i}:{j},{lbl}] = 0"),
                    ));
                }
                for k in alg.slices() {
                    if k != i && k != j {
                        rels.push((
                            rij.bracket(&v.elt(BasisLabel::Xp0(k))).unwrap(),
                            Element::zero(alg),
                            format!("[R:{i}:{j},X+0:{k}] = 0"),
                        ));
                        rels.push((
                            rij.bracket(&v.elt(BasisLabel::X0p(k))).unwrap(),
                            Element::zero(alg),
                            format!("[R:{i}:{j},X0+:{k}] = 0"),
                        ));
                    }
                }
                // so(n-2) pattern: [R_ab, R_cd] = d_bc R_ad - d_ac R_bd
                //                               - d_bd R_ac + d_ad R_bc.
                for k in alg.slices() {
                    for l in alg.slices() {
                        if k == l {
                            continue;
                        }
                        let mut expect = Element::zero(alg);
                        if j == k && i != l {
                            expect = expect.add(&r(i, l)).unwrap();
                        }
                        if i == k && j != l {
                            expect = expect.sub(&r(j, l)).unwrap();
                        }
                        if j == l && i != k {
                            expect = expect.sub(&r(i, k)).unwrap();
                        }
                        if i == l && j != k {
                            expect = expect.add(&r(j, k)).unwrap();
                        }
                        rels.push((
                            rij.bracket(&r(k, l)).unwrap(),
                            expect,
                            format!("so(n) pattern at R:{i}:{j}, R:{k}:{l}"),
                        ));
                    }
                }
            }
        }
        v.relations("rotation-actions", &rels);
    }

    // Higher-root delta relations between distinct slices.
    {
        let mut rels = Vec::new();
        let th = |e: &ElementQ| e.apply_involution(Involution::Theta);
        for i in alg.slices() {
            for j in alg.slices() {
                let d = i == j;
                let zpi = v.elt(BasisLabel::X0p(i));
                let p0j = v.elt(BasisLabel::Xp0(j));
                let m0j = v.elt(BasisLabel::Xm0(j));
                let zmj = th(&v.elt(BasisLabel::X0p(j)));
                let pick = |l: BasisLabel, s: i64| {
                    if d {
                        v.elt(l).scale(&qi(s))
                    } else {
                        Element::zero(alg)
                    }
                };
                rels.push((
                    zpi.bracket(&m0j).unwrap(),
                    pick(BasisLabel::Xmp, -1),
                    format!("[X0+:{i},X-0:{j}] = -delta*X-+"),
                ));
                rels.push((
                    zpi.bracket(&p0j).unwrap(),
                    pick(BasisLabel::Xpp, 1),
                    format!("[X0+:{i},X+0:{j}] = delta*X++"),
                ));
                rels.push((
                    v.elt(BasisLabel::Xp0(i)).bracket(&zmj).unwrap(),
                    pick(BasisLabel::Xpm, 1),
                    format!("[X+0:{i},X0-:{j}] = delta*X+-"),
                ));
            }
        }
        v.relations("higher-root-delta", &rels);
    }

    // Killing-orthogonal decomposition Z_K(A) + A + N2 + sum_k Nk.
    {
        let block = |l: &BasisLabel| -> usize {
            match l {
                BasisLabel::J1 | BasisLabel::J2 => 0,
                BasisLabel::Xpp | BasisLabel::Xpm | BasisLabel::Xmp | BasisLabel::Xmm => 1,
                BasisLabel::X0p(k) | BasisLabel::X0m(k) | BasisLabel::Xp0(k) | BasisLabel::Xm0(k) => k + 2,
                BasisLabel::R(_, _) => 2,
            }
        };
        let km = alg.killing_matrix();
        let mut bad = None;
        'blocks: for i in 0..dim {
            for j in 0..dim {
                if block(&alg.labels[i]) != block(&alg.labels[j]) && !km[(i, j)].is_zero() {
                    bad = Some(format!("B({}, {}) != 0", alg.label(i), alg.label(j)));
                    break 'blocks;
                }
            }
        }
        v.check("killing-orthogonal-blocks", bad);
    }

    // Involution bookkeeping: root mapping of theta and sigma, commutation,
    // projector algebra, and the sign rule sigma|Q = -id.
    {
        let mut bad = None;
        for (idx, l) in alg.labels.iter().enumerate() {
            let e: ElementQ = Element::basis(alg, *l);
            let (a, b) = l.root();
            let te = e.apply_involution(Involution::Theta);
            let se = e.apply_involution(Involution::Sigma);
            let root_of = |x: &ElementQ| -> Option<(i64, i64)> {
                let j1 = Element::basis(alg, BasisLabel::J1);
                let j2 = Element::basis(alg, BasisLabel::J2);
                for aa in [-1i64, 0, 1] {
                    for bb in [-1i64, 0, 1] {
                        if j1.bracket(x).unwrap() == x.scale(&qi(aa))
                            && j2.bracket(x).unwrap() == x.scale(&qi(bb))
                        {
                            return Some((aa, bb));
                        }
                    }
                }
                None
            };
            if root_of(&te) != Some((-a, -b)) {
                bad = Some(format!("theta({l}) has wrong root"));
                break;
            }
            if root_of(&se) != Some((a, -b)) {
                bad = Some(format!("sigma({l}) has wrong root"));
                break;
            }
            let st = e.apply_involution(Involution::SigmaTheta);
            if st.apply_involution(Involution::SigmaTheta) != e {
                bad = Some(format!("(sigma theta)^2 != id at {l}"));
                break;
            }
            let h = e.project(Subspace::H);
            let qp = e.project(Subspace::Q);
            if h.add(&qp).unwrap() != e {
                bad = Some(format!("H+Q projection misses {l}"));
                break;
            }
            if qp.apply_involution(Involution::Sigma) != qp.neg() {
                bad = Some(format!("sigma is not -id on Q at {l}"));
                break;
            }
            if e.project(Subspace::K).add(&e.project(Subspace::P)).unwrap() != e {
                bad = Some(format!("K+P projection misses {l}"));
                break;
            }
            let _ = idx;
        }
        // sigma X0+:k = X0-:k, exactly.
        for k in alg.slices() {
            let zp: ElementQ = Element::basis(alg, BasisLabel::X0p(k));
            if zp.apply_involution(Involution::Sigma) != Element::basis(alg, BasisLabel::X0m(k)) {
                bad = Some(format!("sigma X0+:{k} != X0-:{k}"));
                break;
            }
        }
        v.check("involutions", bad);
    }

    // Defining-representation invariants: eta-antisymmetry of every
    // generator, theta as negative transpose fixing the compact block, and
    // sigma fixing exactly the stabilizer of the base point.
    {
        let mut bad = None;
        for (i, g) in alg.rep.gens.iter().enumerate() {
            let size = alg.n + 2;
            let gt_eta = QMatrix::from_fn(size, size, |r, c| {
                &g[(c, r)] * &alg.rep.eta[c].clone()
            });
            let eta_g = QMatrix::from_fn(size, size, |r, c| &alg.rep.eta[r] * &g[(r, c)]);
            if !gt_eta.add(&eta_g).is_zero() {
                bad = Some(format!("{} does not preserve eta", alg.label(i)));
                break;
            }
            let e: ElementQ = Element::basis(alg, alg.labels[i]);
            let hpart = e.project(Subspace::H);
            if !hpart.is_zero() {
                let m = hpart.rep_matrix_q();
                let moved = m.mul_vec(&alg.rep.base_point);
                if moved.iter().any(|c| !c.is_zero()) {
                    bad = Some(format!("H-part of {} moves the base point", alg.label(i)));
                    break;
                }
            }
            let kpart = e.project(Subspace::K).rep_matrix_q();
            if kpart != kpart.transpose().neg() {
                bad = Some(format!("K-part of {} is not antisymmetric", alg.label(i)));
                break;
            }
            let ppart = e.project(Subspace::P).rep_matrix_q();
            if ppart != ppart.transpose() {
                bad = Some(format!("P-part of {} is not symmetric", alg.label(i)));
                break;
            }
        }
        v.check("defining-rep-invariants", bad);
    }

    // The Killing form restricts negative definite to the compact part and
    // positive definite to the noncompact one.
    {
        let km = alg.killing_matrix();
        let mut bad = None;
        for (s, sign, name) in
            [(Subspace::K, -1i64, "compact"), (Subspace::P, 1, "noncompact")]
        {
            let proj = alg.projector(s);
            let mut echelon = proj.clone();
            let pivots = echelon.rref();
            let cols: Vec<Vec<Q>> = pivots
                .iter()
                .map(|&c| (0..dim).map(|r| proj[(r, c)].clone()).collect())
                .collect();
            let gram = QMatrix::from_fn(cols.len(), cols.len(), |i, j| {
                let mut acc = Q::zero();
                for (a, ca) in cols[i].iter().enumerate() {
                    for (b, cb) in cols[j].iter().enumerate() {
                        if !ca.is_zero() && !cb.is_zero() {
                            acc += &(ca * cb) * &km[(a, b)];
                        }
                    }
                }
                acc * qi(sign)
            });
            if !gram.is_positive_definite() {
                bad = Some(format!("B is not {sign:+}-definite on the {name} part"));
            }
        }
        v.check("killing-signature", bad);
    }

    // Change-of-basis integrity between the elementary and root bases.
    {
        let prod = alg.rep.coords.mul(&alg.rep.coords_inv);
        v.check(
            "basis-isomorphism",
            (prod != QMatrix::identity(dim)).then(|| "coords * coords_inv != id".to_string()),
        );
    }

    // Anchored Killing values.
    {
        let j1 = v.elt(BasisLabel::J1);
        let j2 = v.elt(BasisLabel::J2);
        let xpp = v.elt(BasisLabel::Xpp);
        let xmm = v.elt(BasisLabel::Xmm);
        let mut bad = None;
        if j2.killing(&j2).unwrap() != qi(2 * n as i64) {
            bad = Some("B(J2,J2) != 2n".into());
        } else if !j1.killing(&j2).unwrap().is_zero() {
            bad = Some("B(J1,J2) != 0".into());
        } else if xpp.killing(&xmm).unwrap() != qi(-16 - 8 * (n as i64 - 2)) {
            bad = Some(format!("B(X++,X--) = {}", xpp.killing(&xmm).unwrap()));
        } else {
            // Independent route: trace of the product of adjoint matrices.
            let adp = alg.ad_matrix_q(xpp.coeffs());
            let adm = alg.ad_matrix_q(xmm.coeffs());
            if adp.mul(&adm).trace() != qi(-16 - 8 * (n as i64 - 2)) {
                bad = Some("ad-trace route disagrees for B(X++,X--)".into());
            }
        }
        v.check("killing-anchor-values", bad);
    }

    v.report
}

/// Property checks on seeded random exact elements: antisymmetry, Jacobi,
/// ad-invariance of B, involution squares, and the projector identities.
/// Exact arithmetic, so the expected residual is literally zero.
pub fn verify_random_properties(alg: &Arc<Algebra>, seed: u64, count: usize) -> Report {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_elt = |rng: &mut ChaCha8Rng| -> ElementQ {
        let coeffs = (0..alg.dim)
            .map(|_| qi(rng.gen_range(-4i64..=4)) / qi(rng.gen_range(1i64..=3)))
            .collect();
        Element::from_coeffs(alg, coeffs)
    };
    let mut report = Report::default();
    let bad = |name: &str, ce: Option<String>, report: &mut Report| {
        report.push(alg.n, name, ce);
    };
    let mut anti = None;
    let mut jac = None;
    let mut adinv = None;
    let mut invol = None;
    let mut projs = None;
    for i in 0..count {
        let x = random_elt(&mut rng);
        let y = random_elt(&mut rng);
        let z = random_elt(&mut rng);
        if !x.bracket(&x).unwrap().is_zero() {
            anti = Some(format!("[x,x] != 0 at sample {i}"));
        }
        let j = x
            .bracket(&y.bracket(&z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
            .unwrap();
        if !j.is_zero() {
            jac = Some(format!("Jacobi at sample {i}"));
        }
        let lhs = z.bracket(&x).unwrap().killing(&y).unwrap();
        let rhs = x.killing(&z.bracket(&y).unwrap()).unwrap();
        if !Zero::is_zero(&(&lhs + &rhs)) {
            adinv = Some(format!("B([z,x],y) + B(x,[z,y]) != 0 at sample {i}"));
        }
        let st = x.apply_involution(Involution::SigmaTheta);
        if st.apply_involution(Involution::SigmaTheta) != x {
            invol = Some(format!("(sigma theta)^2 != id at sample {i}"));
        }
        let hq = x.project(Subspace::H).add(&x.project(Subspace::Q)).unwrap();
        let kp = x.project(Subspace::K).add(&x.project(Subspace::P)).unwrap();
        let qq = x.project(Subspace::Q);
        if hq != x || kp != x || qq.apply_involution(Involution::Sigma) != qq.neg() {
            projs = Some(format!("projector identity at sample {i}"));
        }
    }
    bad("random-antisymmetry", anti, &mut report);
    bad("random-jacobi", jac, &mut report);
    bad("random-ad-invariance", adinv, &mut report);
    bad("random-involutions", invol, &mut report);
    bad("random-projectors", projs, &mut report);
    report
}

/// Build so(2,n) for every n in 2..=n_max and run the full exact suite.
pub fn verify_structure(n_max: usize) -> Result<Report> {
    let mut report = Report::default();
    for n in 2..=n_max.max(2) {
        let alg = Algebra::get(n)?;
        report.merge(verify_algebra(&alg));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::build_algebra;

    #[test]
    fn suite_clean_up_to_n5() {
        let report = verify_structure(5).unwrap();
        let fails: Vec<_> = report.failures().collect();
        assert!(fails.is_empty(), "failures: {fails:?}");
    }

    #[test]
    fn injected_fault_is_reported_with_triple() {
        let mut alg = build_algebra(3).unwrap();
        // Perturb one structure constant by +1: Jacobi must fail and the
        // report must carry an offending triple.
        let dim = alg.dim;
        let slot = &mut alg.bracket_q[2 * dim + 3];
        if let Some((_, c)) = slot.first_mut() {
            *c += qi(1);
        } else {
            slot.push((0, qi(1)));
        }
        let report = verify_algebra(&Arc::new(alg));
        let jac = report.checks.iter().find(|c| c.name == "jacobi").unwrap();
        assert!(!jac.passed);
        let ce = jac.counterexample.as_deref().unwrap();
        assert!(ce.contains("X"), "counterexample should name labels: {ce}");
    }

    #[test]
    fn jacobi_example_triple_is_exact() {
        let alg = Algebra::get(3).unwrap();
        let a: ElementQ = Element::basis(&alg, BasisLabel::J1);
        let b = Element::basis(&alg, BasisLabel::X0p(3));
        let c = Element::basis(&alg, BasisLabel::Xpm);
        let jac = a
            .bracket(&b)
            .unwrap()
            .bracket(&c)
            .unwrap()
            .add(&b.bracket(&c).unwrap().bracket(&a).unwrap())
            .unwrap()
            .add(&c.bracket(&a).unwrap().bracket(&b).unwrap())
            .unwrap();
        assert!(jac.is_zero());
    }
}
