//! Runnable copies of every code block in the book, plus a sync check that
//! the book's ```rust blocks all appear here verbatim (up to indentation).

use std::f64::consts::{FRAC_PI_2, PI};

#[test]
fn introduction_snippet() {
    use adscausal::exact::qi;
    use adscausal::lie_core::{Algebra, BasisLabel, Element, ElementQ};

    let alg = Algebra::get(3).unwrap();
    assert_eq!(alg.dim, 10);
    let j2: ElementQ = Element::basis(&alg, BasisLabel::J2);
    assert_eq!(j2.killing(&j2).unwrap(), qi(6)); // B(J2,J2) = 2n, exactly
}

#[test]
fn algebra_bracket_snippet() {
    use adscausal::exact::qi;
    use adscausal::lie_core::{Algebra, BasisLabel, Element, ElementQ};

    let alg = Algebra::get(4).unwrap();
    let e = |l| -> ElementQ { Element::basis(&alg, l) };

    // A commutator-table entry, exactly: [X0+:3, X+-] = 2 X+0:3.
    let br = e(BasisLabel::X0p(3)).bracket(&e(BasisLabel::Xpm)).unwrap();
    assert_eq!(br, e(BasisLabel::Xp0(3)).scale(&qi(2)));

    // Rotations act by swapping slices: [R:3:4, X+0:4] = X+0:3.
    let br = e(BasisLabel::R(3, 4)).bracket(&e(BasisLabel::Xp0(4))).unwrap();
    assert_eq!(br, e(BasisLabel::Xp0(3)));
}

#[test]
fn algebra_verify_snippet() {
    use adscausal::lie_core::verify_structure;

    let report = verify_structure(5).unwrap();
    assert!(report.passed());
}

#[test]
fn tangent_basis_snippet() {
    use adscausal::exact::qi;
    use adscausal::lie_core::Algebra;
    use adscausal::reductive::canonical_bases;

    let alg = Algebra::get(4).unwrap();
    let b = canonical_bases(&alg).unwrap();

    // [q0, q2] = -J1, and the squared norms are +-1 exactly.
    assert_eq!(b.q0().bracket(b.q2()).unwrap(), b.j1().neg());
    assert_eq!(b.q0().norm2(), qi(1));
    assert_eq!(b.q2().norm2(), qi(-1));
}

#[test]
fn tangent_lightlike_snippet() {
    use adscausal::exact::{q, qi};
    use adscausal::lie_core::Algebra;
    use adscausal::reductive::{canonical_bases, lightlike_q};

    let b = canonical_bases(&Algebra::get(3).unwrap()).unwrap();
    let e = lightlike_q(&b, &[q(3, 5), q(4, 5), qi(0)]).unwrap();
    let ad = b.algebra().ad_matrix_q(e.coeffs());
    assert!(ad.mul(&ad).mul(&ad).is_zero());
}

#[test]
fn exponentials_rotation_snippet() {
    use adscausal::exp_group::{apply_op, exp_ad};
    use adscausal::lie_core::Algebra;
    use adscausal::reductive::canonical_bases;

    let alg = Algebra::get(4).unwrap();
    let b = canonical_bases(&alg).unwrap();
    let x = 0.7;
    let op = exp_ad(&alg, &b.q0().to_f64(), x);
    let moved = apply_op(&alg, &op, &b.j1().to_f64());
    let expect = b.j1().to_f64().scale(&x.cos())
        .add(&b.q2().to_f64().scale(&x.sin())).unwrap();
    assert!(moved.approx_eq(&expect, 1e-12));
}

#[test]
fn exponentials_coefficients_snippet() {
    use adscausal::exp_group::{an_coefficients, PointCoords};
    use adscausal::lie_core::Algebra;

    let alg = Algebra::get(4).unwrap();
    let mut p = PointCoords::zero(4);
    p.nu.pp = 0.4;
    let c = an_coefficients(&alg, &p).unwrap();
    assert!((c.a + 0.4).abs() < 1e-14); // Z = nu X++ gives a = -nu
}

#[test]
fn causal_singularity_snippet() {
    use adscausal::causal::Analyzer;

    let an = Analyzer::new(3).unwrap();
    let v = an.singularity_norm2(&an.circle_word(1.2));
    assert!((v + 1.2f64.sin().powi(2)).abs() < 1e-12);
}

#[test]
fn causal_classify_snippet() {
    use adscausal::causal::{Analyzer, CausalClass, DEFAULT_TOL};
    use adscausal::exp_group::PointCoords;

    let an = Analyzer::new(3).unwrap();
    let cl = an.classify_point(&PointCoords::circle(3, PI / 4.0), 65, DEFAULT_TOL, 0).unwrap();
    assert_eq!(cl.class, CausalClass::BlackHole);
    let cl = an.classify_point(&PointCoords::circle(3, 3.0 * PI / 4.0), 65, DEFAULT_TOL, 0).unwrap();
    assert_eq!(cl.class, CausalClass::Free);
    assert_eq!(cl.witness_w2, Some(0.0));
}

#[test]
fn horizon_bisect_snippet() {
    use adscausal::causal::{Analyzer, DEFAULT_TOL};

    let an = Analyzer::new(3).unwrap();
    let t = an.horizon_bisect(
        |x| Ok(an.circle_word(x)),
        PI / 4.0, 3.0 * PI / 4.0,
        1e-7, 65, DEFAULT_TOL,
    ).unwrap();
    assert!((t - FRAC_PI_2).abs() < 1e-6);
}

#[test]
fn horizon_transport_snippet() {
    use adscausal::causal::r_transport;

    let v = vec![1.0, 0.0, 0.2, 0.3, 0.4];
    let tr = r_transport(&v).unwrap();
    assert!((tr.v_reduced[3] - 0.5).abs() < 1e-15);
    assert_eq!(tr.v_reduced[4], 0.0);
}

#[test]
fn horizon_ads2_snippet() {
    use adscausal::causal::{ads2_classify, ads2_singularity_exact, Analyzer, CausalClass};
    use adscausal::exact::{q, qi};

    let an = Analyzer::new(2).unwrap();
    let (_, killing) = ads2_singularity_exact(&an, &q(1, 2)).unwrap();
    assert_eq!(killing, qi(-4) * q(1, 2) * q(1, 2));

    let free = ads2_classify(&an, 0.0, 0.0, PI / 4.0, 1e-9).unwrap();
    assert_eq!(free.class, CausalClass::Free);
    let bh = ads2_classify(&an, 0.0, 0.0, 3.0 * PI / 4.0, 1e-9).unwrap();
    assert_eq!(bh.class, CausalClass::BlackHole);
}

/// Every rust code block in the book must appear in this file (compared
/// line by line with indentation stripped), so the guide cannot drift from
/// the tested API.
#[test]
fn book_snippets_are_in_sync() {
    let me = include_str!("book.rs");
    let norm = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty())
            .collect()
    };
    let my_lines = norm(me);
    let contains = |snippet: &str| -> bool {
        let want = norm(snippet);
        if want.is_empty() {
            return true;
        }
        my_lines
            .windows(want.len())
            .any(|w| w.iter().zip(&want).all(|(a, b)| a == b))
    };

    let book_src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../book/src");
    let mut checked = 0;
    for entry in std::fs::read_dir(&book_src).expect("book sources present") {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "md") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let mut in_rust = false;
        let mut block = String::new();
        for line in text.lines() {
            if in_rust {
                if line.trim_start().starts_with("```") {
                    assert!(
                        contains(&block),
                        "snippet from {} missing from tests/book.rs:\n{block}",
                        path.display()
                    );
                    checked += 1;
                    in_rust = false;
                    block.clear();
                } else {
                    block.push_str(line);
                    block.push('\n');
                }
            } else if line.trim_start() == "```rust" {
                in_rust = true;
            }
        }
    }
    assert!(checked >= 11, "only {checked} rust snippets found in the book");
}
