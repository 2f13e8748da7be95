//! Concrete construction of the Lie algebra so(2,n) and its root-space basis.
//!
//! The algebra is realized by (n+2)x(n+2) matrices preserving the metric
//! `eta = diag(+1,+1,-1,...,-1)`. Two commuting boosts `J1` and `J2` span a
//! maximal abelian subspace of the noncompact part; their simultaneous
//! adjoint eigenspaces carry integer eigenvalue pairs (the roots), and the
//! basis used everywhere in this crate is labeled by those pairs:
//!
//! - `J1`, `J2` with eigenvalue pair (0,0),
//! - `X++`, `X+-`, `X-+`, `X--` with pairs (±1,±1),
//! - slice vectors `X0+:k`, `X0-:k`, `X+0:k`, `X-0:k` for k = 3..=n,
//! - rotations `R:i:j` for 3 <= i < j <= n, spanning the centralizer of the
//!   abelian part inside the maximal compact subalgebra.
//!
//! All structure constants, the Killing matrix, the involutions and the
//! subspace projectors are exact rationals; a `binary64` mirror of each cache
//! is kept for the numerical layer.

mod build;
mod dump;
mod verify;

pub use build::build_algebra;
pub(crate) use build::matrix_to_coords;
pub use dump::StructureDump;
pub use verify::{verify_algebra, verify_random_properties, verify_structure, Check, Report};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{q, Q, QMatrix};

/// Label of one basis vector of so(2,n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    J1,
    J2,
    /// `X++`, eigenvalues (+1,+1) under (ad J1, ad J2).
    Xpp,
    /// `X+-`, eigenvalues (+1,-1).
    Xpm,
    /// `X-+`, eigenvalues (-1,+1).
    Xmp,
    /// `X--`, eigenvalues (-1,-1).
    Xmm,
    /// `X0+:k`, eigenvalues (0,+1); k ranges over 3..=n.
    X0p(usize),
    /// `X0-:k`, eigenvalues (0,-1).
    X0m(usize),
    /// `X+0:k`, eigenvalues (+1,0).
    Xp0(usize),
    /// `X-0:k`, eigenvalues (-1,0).
    Xm0(usize),
    /// `R:i:j`, the so(n-2) rotation acting on slices i and j; 3 <= i < j <= n.
    R(usize, usize),
}

impl BasisLabel {
    /// Eigenvalue pair under (ad J1, ad J2); (0,0) for J1, J2 and R.
    pub fn root(&self) -> (i64, i64) {
        match self {
            BasisLabel::J1 | BasisLabel::J2 | BasisLabel::R(_, _) => (0, 0),
            BasisLabel::Xpp => (1, 1),
            BasisLabel::Xpm => (1, -1),
            BasisLabel::Xmp => (-1, 1),
            BasisLabel::Xmm => (-1, -1),
            BasisLabel::X0p(_) => (0, 1),
            BasisLabel::X0m(_) => (0, -1),
            BasisLabel::Xp0(_) => (1, 0),
            BasisLabel::Xm0(_) => (-1, 0),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::J1 => write!(f, "J1"),
            BasisLabel::J2 => write!(f, "J2"),
            BasisLabel::Xpp => write!(f, "X++"),
            BasisLabel::Xpm => write!(f, "X+-"),
            BasisLabel::Xmp => write!(f, "X-+"),
            BasisLabel::Xmm => write!(f, "X--"),
            BasisLabel::X0p(k) => write!(f, "X0+:{k}"),
            BasisLabel::X0m(k) => write!(f, "X0-:{k}"),
            BasisLabel::Xp0(k) => write!(f, "X+0:{k}"),
            BasisLabel::Xm0(k) => write!(f, "X-0:{k}"),
            BasisLabel::R(i, j) => write!(f, "R:{i}:{j}"),
        }
    }
}

/// The involutive automorphisms cached on the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// Cartan involution, +1 on the compact part so(2)+so(n).
    Theta,
    /// Symmetric-space involution, +1 on the stabilizer so(1,n) of the base point.
    Sigma,
    /// The product; commutes with both factors.
    SigmaTheta,
}

/// Subspaces with cached Killing-orthogonal projectors.
///
/// `H`/`Q` are the +1/-1 eigenspaces of sigma, `K`/`P` those of theta; the
/// four pairwise intersections are the joint eigenspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subspace {
    H,
    Q,
    K,
    P,
    KQ,
    PQ,
    KH,
    PH,
}

impl Subspace {
    pub const ALL: [Subspace; 8] = [
        Subspace::H,
        Subspace::Q,
        Subspace::K,
        Subspace::P,
        Subspace::KQ,
        Subspace::PQ,
        Subspace::KH,
        Subspace::PH,
    ];
}

/// Matrix realization of so(2,n) inside (n+2)x(n+2) matrices.
pub struct MatrixRealization {
    /// Diagonal of the invariant metric, signature (2,n).
    pub eta: Vec<Q>,
    /// One generator per basis label, exact rational entries.
    pub gens: Vec<QMatrix>,
    pub gens_f: Vec<DMatrix<f64>>,
    /// First timelike unit vector; its stabilizer is so(1,n).
    pub base_point: Vec<Q>,
    /// Diagonal +-1 matrix S with sigma = Ad(S).
    pub sigma_conjugator: Vec<Q>,
    /// Columns are the basis generators expressed in elementary so(2,n)
    /// coordinates; used to pull matrix brackets back to basis coordinates.
    pub(crate) coords: QMatrix,
    pub(crate) coords_inv: QMatrix,
}

/// Immutable container for so(2,n): labels, matrix realization, structure
/// constants, Killing matrix, involutions and projectors.
pub struct Algebra {
    pub n: usize,
    pub dim: usize,
    pub labels: Vec<BasisLabel>,
    pub rep: MatrixRealization,
    index: HashMap<BasisLabel, usize>,
    /// Sparse structure tensor: `bracket_q[i*dim+j]` lists `(m, c)` with
    /// `[b_i, b_j] = sum c * b_m`.
    pub(crate) bracket_q: Vec<Vec<(usize, Q)>>,
    bracket_f: Vec<Vec<(usize, f64)>>,
    pub(crate) killing_q: QMatrix,
    killing_f: DMatrix<f64>,
    theta_q: QMatrix,
    theta_f: DMatrix<f64>,
    sigma_q: QMatrix,
    sigma_f: DMatrix<f64>,
    proj_q: Vec<QMatrix>,
    proj_f: Vec<DMatrix<f64>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(so(2,{}), dim {})", self.n, self.dim)
    }
}

static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Algebra>>>> = OnceLock::new();

impl Algebra {
    /// Memoized accessor; construction is deterministic, so all callers share
    /// one immutable instance per n.
    pub fn get(n: usize) -> Result<Arc<Algebra>> {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap();
        if let Some(a) = map.get(&n) {
            return Ok(a.clone());
        }
        let a = Arc::new(build_algebra(n)?);
        map.insert(n, a.clone());
        Ok(a)
    }

    pub fn index_of(&self, label: BasisLabel) -> usize {
        self.index[&label]
    }

    pub fn label(&self, idx: usize) -> BasisLabel {
        self.labels[idx]
    }

    /// Slice indices k = 3..=n (empty for n = 2).
    pub fn slices(&self) -> impl Iterator<Item = usize> {
        3..=self.n
    }

    pub(crate) fn bracket_terms_q(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.bracket_q[i * self.dim + j]
    }

    pub fn killing_matrix(&self) -> &QMatrix {
        &self.killing_q
    }

    pub fn involution_matrix(&self, which: Involution) -> &QMatrix {
        match which {
            Involution::Theta => &self.theta_q,
            Involution::Sigma => &self.sigma_q,
            Involution::SigmaTheta => unreachable!("sigma*theta is cached as a product"),
        }
    }

    pub fn projector(&self, s: Subspace) -> &QMatrix {
        &self.proj_q[s as usize]
    }

    /// Exact adjoint matrix of the element with coordinates `v`.
    pub fn ad_matrix_q(&self, v: &[Q]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (i, c) in v.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            for col in 0..self.dim {
                for (row, t) in self.bracket_terms_q(i, col) {
                    m[(*row, col)] += c * t;
                }
            }
        }
        m
    }

    /// binary64 adjoint matrix of the element with coordinates `v`.
    pub fn ad_matrix_f(&self, v: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, c) in v.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            for col in 0..self.dim {
                for (row, t) in &self.bracket_f[i * self.dim + col] {
                    m[(*row, col)] += c * t;
                }
            }
        }
        m
    }

    /// Basis coordinates of a matrix in the defining representation; used to
    /// push conjugation through the isomorphism with the adjoint picture.
    pub fn rep_to_coords_f(&self, m: &DMatrix<f64>) -> Vec<f64> {
        let mut pair_coords = Vec::with_capacity(self.dim);
        let size = self.n + 2;
        for a in 0..size {
            for b in (a + 1)..size {
                let eta_b = if b < 2 { 1.0 } else { -1.0 };
                pair_coords.push(m[(a, b)] / eta_b);
            }
        }
        let inv = self.rep.coords_inv.to_f64();
        (inv * DVector::from_column_slice(&pair_coords)).data.into()
    }

    pub(crate) fn finish(mut self) -> Self {
        // Mirror the exact caches into binary64 once, at construction time.
        self.bracket_f = self
            .bracket_q
            .iter()
            .map(|terms| terms.iter().map(|(m, c)| (*m, c.to_f64().unwrap())).collect())
            .collect();
        self.killing_f = self.killing_q.to_f64();
        self.theta_f = self.theta_q.to_f64();
        self.sigma_f = self.sigma_q.to_f64();
        self.proj_f = self.proj_q.iter().map(QMatrix::to_f64).collect();
        self
    }
}

/// Scalar kinds an [`Element`] can carry. Exact and floating elements never
/// mix silently; lowering is explicit via [`Element::to_f64`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    fn from_q(v: &Q) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn as_f64(&self) -> f64;
    fn bracket_terms(alg: &Algebra, i: usize, j: usize) -> &[(usize, Self)];
    fn killing_entry(alg: &Algebra, i: usize, j: usize) -> Self;
    fn apply_involution(alg: &Algebra, which: Involution, v: &[Self]) -> Vec<Self>;
    fn apply_projector(alg: &Algebra, s: Subspace, v: &[Self]) -> Vec<Self>;
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap()
    }
    fn bracket_terms(alg: &Algebra, i: usize, j: usize) -> &[(usize, Self)] {
        &alg.bracket_q[i * alg.dim + j]
    }
    fn killing_entry(alg: &Algebra, i: usize, j: usize) -> Self {
        alg.killing_q[(i, j)].clone()
    }
    fn apply_involution(alg: &Algebra, which: Involution, v: &[Self]) -> Vec<Self> {
        match which {
            Involution::Theta => alg.theta_q.mul_vec(v),
            Involution::Sigma => alg.sigma_q.mul_vec(v),
            Involution::SigmaTheta => alg.sigma_q.mul_vec(&alg.theta_q.mul_vec(v)),
        }
    }
    fn apply_projector(alg: &Algebra, s: Subspace, v: &[Self]) -> Vec<Self> {
        alg.proj_q[s as usize].mul_vec(v)
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_q(v: &Q) -> Self {
        v.to_f64().unwrap()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn bracket_terms(alg: &Algebra, i: usize, j: usize) -> &[(usize, Self)] {
        &alg.bracket_f[i * alg.dim + j]
    }
    fn killing_entry(alg: &Algebra, i: usize, j: usize) -> Self {
        alg.killing_f[(i, j)]
    }
    fn apply_involution(alg: &Algebra, which: Involution, v: &[Self]) -> Vec<Self> {
        let apply = |m: &DMatrix<f64>, v: &[Self]| (m * DVector::from_column_slice(v)).data.into();
        match which {
            Involution::Theta => apply(&alg.theta_f, v),
            Involution::Sigma => apply(&alg.sigma_f, v),
            Involution::SigmaTheta => {
                let t = Self::apply_involution(alg, Involution::Theta, v);
                Self::apply_involution(alg, Involution::Sigma, &t)
            }
        }
    }
    fn apply_projector(alg: &Algebra, s: Subspace, v: &[Self]) -> Vec<Self> {
        (&alg.proj_f[s as usize] * DVector::from_column_slice(v)).data.into()
    }
}

/// A Lie algebra element: a coefficient vector over the root basis.
#[derive(Clone, Debug)]
pub struct Element<S: Coeff> {
    alg: Arc<Algebra>,
    coeffs: Vec<S>,
}

impl<S: Coeff> PartialEq for Element<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.n == other.alg.n && self.coeffs == other.coeffs
    }
}

pub type ElementQ = Element<Q>;
pub type ElementF = Element<f64>;

impl<S: Coeff> Element<S> {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self { alg: alg.clone(), coeffs: vec![S::zero(); alg.dim] }
    }

    pub fn basis(alg: &Arc<Algebra>, label: BasisLabel) -> Self {
        let mut e = Self::zero(alg);
        e.coeffs[alg.index_of(label)] = S::one();
        e
    }

    pub fn from_coeffs(alg: &Arc<Algebra>, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), alg.dim, "coefficient vector length must equal dim");
        Self { alg: alg.clone(), coeffs }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, label: BasisLabel) -> &S {
        &self.coeffs[self.alg.index_of(label)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.alg.n != other.alg.n {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(Self { alg: self.alg.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ok(Self { alg: self.alg.clone(), coeffs })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(S::neg).collect() }
    }

    /// Lie bracket, the bilinear extension of the structure tensor. Exact
    /// when both inputs are exact.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let alg = &self.alg;
        let mut out = vec![S::zero(); alg.dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (m, c) in S::bracket_terms(alg, i, j) {
                    out[*m] = out[*m].add(&ab.mul(c));
                }
            }
        }
        Ok(Self { alg: alg.clone(), coeffs: out })
    }

    /// Killing form B(x,y) = trace(ad x . ad y), from the cached matrix.
    pub fn killing(&self, other: &Self) -> Result<S> {
        self.check_same(other)?;
        let alg = &self.alg;
        let mut acc = S::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b).mul(&S::killing_entry(alg, i, j)));
            }
        }
        Ok(acc)
    }

    /// Squared norm -B(x,x)/(2n). Lorentzian: positive on the timelike
    /// direction, negative on spacelike ones, zero on light-like vectors.
    pub fn norm2(&self) -> S {
        let b = self.killing(self).expect("same algebra");
        b.mul(&S::from_q(&q(-1, 2 * self.alg.n as i64))) // -1/(2n)
    }

    pub fn apply_involution(&self, which: Involution) -> Self {
        let coeffs = S::apply_involution(&self.alg, which, &self.coeffs);
        Self { alg: self.alg.clone(), coeffs }
    }

    /// Idempotent Killing-orthogonal projection onto the tagged subspace.
    pub fn project(&self, s: Subspace) -> Self {
        let coeffs = S::apply_projector(&self.alg, s, &self.coeffs);
        Self { alg: self.alg.clone(), coeffs }
    }

    /// Explicit lowering to binary64 coefficients.
    pub fn to_f64(&self) -> Element<f64> {
        Element { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(S::as_f64).collect() }
    }

    /// The matrix of this element in the defining representation.
    pub fn rep_matrix_f(&self) -> DMatrix<f64> {
        let size = self.alg.n + 2;
        let mut m = DMatrix::zeros(size, size);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m += &self.alg.rep.gens_f[i] * c.as_f64();
            }
        }
        m
    }
}

impl Element<f64> {
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.alg.n == other.alg.n
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl Element<Q> {
    /// Exact matrix of this element in the defining representation.
    pub fn rep_matrix_q(&self) -> QMatrix {
        let size = self.alg.n + 2;
        let mut m = QMatrix::zeros(size, size);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                m = m.add(&self.alg.rep.gens[i].scale(c));
            }
        }
        m
    }
}

/// Free-function spelling of [`Element::bracket`].
pub fn bracket<S: Coeff>(x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
    x.bracket(y)
}

/// Free-function spelling of [`Element::killing`].
pub fn killing<S: Coeff>(x: &Element<S>, y: &Element<S>) -> Result<S> {
    x.killing(y)
}
