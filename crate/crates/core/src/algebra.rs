//! Finite-dimensional unital C*-algebras of square matrices.
//!
//! An [`Element`] is a `dim × dim` complex matrix; real algebras simply keep
//! every imaginary part at zero and use the transpose as involution. The
//! partial order is the one generated by the positive cone: `a ⪯ b` iff
//! `b − a` is self-adjoint with nonnegative spectrum. An entrywise order and a
//! max-entry norm are available as alternative modes for scenarios that ask
//! for them.
//!
//! Positivity is decided with a relative eigenvalue slack (`eps_pos` times the
//! size of the operands), since floating-point eigensolvers return tiny
//! negative values on exactly singular positive matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Deserialize;

use crate::error::{Error, Result};

const SCHUR_MAX_ITER: usize = 10_000;

/// Numerical slack used by every positivity and equality test.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative eigenvalue slack: an eigenvalue `λ` counts as nonnegative when
    /// `λ ≥ −eps_pos · scale`, where `scale` is the size of the operands.
    pub eps_pos: f64,
    /// Absolute slack for scalar equality (symmetry, identity, fixedness).
    pub eps_eq: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_pos: 1e-10,
            eps_eq: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(eps_pos: f64, eps_eq: f64) -> Result<Self> {
        for (name, v) in [("eps_pos", eps_pos), ("eps_eq", eps_eq)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Tolerance { eps_pos, eps_eq })
    }

    /// Same slack for both positivity and equality.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }
}

/// Scalar field of the matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarField {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMode {
    /// Largest singular value; the C* norm of the matrix algebra.
    #[default]
    Operator,
    /// Largest absolute entry.
    MaxEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMode {
    /// `a ⪯ b` iff `b − a` is positive.
    #[default]
    Positivity,
    /// `a ⪯ b` iff every entry of `a` is at most the matching entry of `b`.
    Entrywise,
}

/// An element of the matrix algebra `M_dim`.
#[derive(Clone, PartialEq)]
pub struct Element {
    mat: DMatrix<Complex64>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", self.rows_for_display())
    }
}

impl Element {
    /// Wraps a square matrix. Panics if the matrix is not square or has a
    /// non-finite entry.
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Self {
        assert!(mat.is_square(), "algebra elements must be square");
        assert!(mat.nrows() > 0, "algebra elements must have positive dimension");
        assert!(
            mat.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "algebra elements must have finite entries"
        );
        Element { mat }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn from_complex_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(DMatrix::identity(dim, dim))
    }

    /// `s · I`.
    pub fn scalar(dim: usize, s: f64) -> Self {
        Self::from_matrix(DMatrix::from_diagonal_element(dim, dim, Complex64::new(s, 0.0)))
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// Matrix unit `E_ij` (one at `(i, j)`, zero elsewhere).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        Self::from_matrix(m)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn is_real(&self) -> bool {
        self.mat.iter().all(|z| z.im == 0.0)
    }

    pub fn scale(&self, s: f64) -> Element {
        Element {
            mat: self.mat.map(|z| z * s),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Element {
        Element {
            mat: self.mat.adjoint(),
        }
    }

    pub fn norm(&self, mode: NormMode) -> f64 {
        match mode {
            NormMode::Operator => self.operator_norm(),
            NormMode::MaxEntry => self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    fn operator_norm(&self) -> f64 {
        if self.dim() == 1 {
            return self.mat[(0, 0)].norm();
        }
        self.mat
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    fn frobenius(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `a^n` by repeated multiplication.
    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::identity(self.dim());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Every eigenvalue, with multiplicity, from a complex Schur form.
    pub fn spectrum(&self) -> Result<Vec<Complex64>> {
        if self.dim() == 1 {
            return Ok(vec![self.mat[(0, 0)]]);
        }
        let schur = Schur::try_new(self.mat.clone(), 1e-15, SCHUR_MAX_ITER).ok_or(Error::EigenFailure)?;
        let (_, t) = schur.unpack();
        Ok((0..self.dim()).map(|i| t[(i, i)]).collect())
    }

    /// Largest entrywise deviation from self-adjointness.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_self_adjoint(&self, tol: &Tolerance) -> bool {
        self.asymmetry() <= tol.eps_eq * self.frobenius().max(1.0)
    }

    /// Ascending eigenvalues of the self-adjoint part `(a + a*)/2`.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        if self.dim() == 1 {
            return vec![self.mat[(0, 0)].re];
        }
        let h = (&self.mat + self.mat.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `a* = a` and `σ(a) ⊂ [−eps_pos·‖a‖, ∞)`.
    pub fn is_positive(&self, tol: &Tolerance) -> bool {
        positivity_margin(self, None, tol) >= -tol.eps_pos
    }

    /// `self ⪯ other` under the given order.
    pub fn leq(&self, other: &Element, order: OrderMode, tol: &Tolerance) -> Result<bool> {
        Ok(order_margin(self, other, order, tol)? >= -tol.eps_pos)
    }

    /// The unique positive square root.
    pub fn positive_sqrt(&self, tol: &Tolerance) -> Result<Element> {
        if !self.is_positive(tol) {
            let min = self.hermitian_eigenvalues().first().copied().unwrap_or(0.0);
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        if self.dim() == 1 {
            return Ok(Element::scalar(1, self.mat[(0, 0)].re.max(0.0).sqrt()));
        }
        let h = (&self.mat + self.mat.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = h.symmetric_eigen();
        let roots = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
        let v = &eig.eigenvectors;
        let root = v * DMatrix::from_diagonal(&roots) * v.adjoint();
        // The product is self-adjoint up to rounding; symmetrise it exactly.
        let root = (&root + root.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Element::from_matrix(root))
    }

    /// `a (I − a)⁻¹` for positive `a` with operator norm below 1/2. The result
    /// has norm strictly below 1.
    pub fn inv_residual_transform(&self, tol: &Tolerance) -> Result<Element> {
        if !self.is_positive(tol) {
            let min = self.hermitian_eigenvalues().first().copied().unwrap_or(0.0);
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let norm = self.operator_norm();
        if norm >= 0.5 {
            return Err(Error::NormTooLarge { norm, limit: 0.5 });
        }
        let inv = self.one_minus_inverse()?;
        Ok(self * &inv)
    }

    /// `(I − a)⁻¹`.
    pub fn one_minus_inverse(&self) -> Result<Element> {
        let resid = DMatrix::identity(self.dim(), self.dim()) - &self.mat;
        let inv = resid.try_inverse().ok_or(Error::Singular)?;
        if inv.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Singular);
        }
        Ok(Element::from_matrix(inv))
    }

    /// Commutes with every matrix unit `E_ij` within `eps_eq`.
    pub fn is_central(&self, tol: &Tolerance) -> bool {
        let n = self.dim();
        let slack = tol.eps_eq * self.frobenius().max(1.0);
        for i in 0..n {
            for j in 0..n {
                let e = Element::unit(n, i, j);
                let comm = &(self * &e) - &(&e * self);
                if comm.mat.iter().any(|z| z.norm() > slack) {
                    return false;
                }
            }
        }
        true
    }

    fn rows_for_display(&self) -> Vec<Vec<String>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let z = self.mat[(i, j)];
                        if z.im == 0.0 {
                            format!("{}", z.re)
                        } else {
                            format!("{}{:+}i", z.re, z.im)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Normalised positivity margin of `d`: its smallest eigenvalue divided by
/// `scale` (or by the largest absolute eigenvalue of `d` when no scale is
/// given). A self-adjointness defect beyond `eps_eq` yields a negative margin
/// of at least the defect size.
pub fn positivity_margin(d: &Element, scale: Option<f64>, tol: &Tolerance) -> f64 {
    let ev = d.hermitian_eigenvalues();
    let spread = ev.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let scale = scale.unwrap_or(spread);
    let div = if scale > 0.0 { scale } else { 1.0 };
    let asym = d.asymmetry();
    let mut margin = ev.first().copied().unwrap_or(0.0) / div;
    if asym > tol.eps_eq * scale.max(1.0) {
        margin = margin.min(-asym / div);
    }
    margin
}

/// Normalised margin of `a ⪯ b`: nonnegative (up to slack) exactly when the
/// order relation holds. Under the positivity order this is the smallest
/// eigenvalue of `b − a`, scaled by the larger Frobenius size of `a` and `b`.
pub fn order_margin(a: &Element, b: &Element, order: OrderMode, tol: &Tolerance) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let scale = a.frobenius().max(b.frobenius());
    let diff = b - a;
    Ok(match order {
        OrderMode::Positivity => positivity_margin(&diff, Some(scale), tol),
        OrderMode::Entrywise => {
            let div = if scale > 0.0 { scale } else { 1.0 };
            diff.mat
                .iter()
                .map(|z| if z.im.abs() > tol.eps_eq { -z.im.abs() } else { z.re })
                .fold(f64::INFINITY, f64::min)
                / div
        }
    })
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        Element {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { mat: -&self.mat }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

/// Real elements serialise as rows of numbers, complex ones as rows of
/// `[re, im]` pairs.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let real = self.is_real();
        let mut rows = serializer.serialize_seq(Some(n))?;
        for i in 0..n {
            if real {
                let row: Vec<f64> = (0..n).map(|j| self.mat[(i, j)].re).collect();
                rows.serialize_element(&row)?;
            } else {
                let row: Vec<[f64; 2]> = (0..n).map(|j| [self.mat[(i, j)].re, self.mat[(i, j)].im]).collect();
                rows.serialize_element(&row)?;
            }
        }
        rows.end()
    }
}

/// Algebra configuration shared by a metric space and everything built on it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, Deserialize)]
pub struct Algebra {
    pub dim: usize,
    pub field: ScalarField,
    pub norm_mode: NormMode,
    pub order_mode: OrderMode,
    pub tol: Tolerance,
}

impl Algebra {
    /// `M_dim(ℝ)` with operator norm and the positivity order.
    pub fn real(dim: usize) -> Self {
        Algebra {
            dim,
            field: ScalarField::Real,
            norm_mode: NormMode::Operator,
            order_mode: OrderMode::Positivity,
            tol: Tolerance::default(),
        }
    }

    pub fn complex(dim: usize) -> Self {
        Algebra {
            field: ScalarField::Complex,
            ..Self::real(dim)
        }
    }

    pub fn with_norm(mut self, mode: NormMode) -> Self {
        self.norm_mode = mode;
        self
    }

    pub fn with_order(mut self, mode: OrderMode) -> Self {
        self.order_mode = mode;
        self
    }

    pub fn with_tol(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn norm(&self, a: &Element) -> f64 {
        a.norm(self.norm_mode)
    }

    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        a.leq(b, self.order_mode, &self.tol)
    }

    pub fn margin(&self, a: &Element, b: &Element) -> Result<f64> {
        order_margin(a, b, self.order_mode, &self.tol)
    }

    pub fn is_positive(&self, a: &Element) -> bool {
        a.is_positive(&self.tol)
    }

    pub fn is_central(&self, a: &Element) -> bool {
        a.is_central(&self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn assert_close(a: &Element, b: &Element, eps: f64) {
        let d = (a - b).norm(NormMode::MaxEntry);
        assert!(d <= eps, "{a:?} vs {b:?} differ by {d}");
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(Element::identity(2).adjoint(), Element::identity(2));
        let shift = Element::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(shift.adjoint(), Element::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]));
        let z = Element::from_complex_rows(&[&[c(0.0, 0.0), c(0.0, 1.0)], &[c(0.0, 0.0), c(0.0, 0.0)]]);
        let expect = Element::from_complex_rows(&[&[c(0.0, 0.0), c(0.0, 0.0)], &[c(0.0, -1.0), c(0.0, 0.0)]]);
        assert_eq!(z.adjoint(), expect);
        assert_eq!(z.adjoint().adjoint(), z);
    }

    #[test]
    fn norm_examples() {
        assert!((Element::diag(&[3.0, -4.0]).norm(NormMode::Operator) - 4.0).abs() < 1e-14);
        let shift = Element::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!((shift.norm(NormMode::Operator) - 1.0).abs() < 1e-14);
        let m = Element::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(m.norm(NormMode::MaxEntry), 4.0);
        for mode in [NormMode::Operator, NormMode::MaxEntry] {
            assert_eq!(Element::zero(3).norm(mode), 0.0);
            assert!((Element::identity(3).norm(mode) - 1.0).abs() < 1e-14);
        }
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re));
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn spectrum_examples() {
        let s = sorted_re(Element::diag(&[1.0, 2.0]).spectrum().unwrap());
        assert_eq!(s, vec![1.0, 2.0]);
        let sym = Element::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let spec = sym.spectrum().unwrap();
        for z in &spec {
            assert!(z.im.abs() < 1e-12);
        }
        let s = sorted_re(spec);
        assert!((s[0] - 1.0).abs() < 1e-12 && (s[1] - 3.0).abs() < 1e-12);
        assert_eq!(sorted_re(Element::zero(2).spectrum().unwrap()), vec![0.0, 0.0]);
    }

    #[test]
    fn spectrum_of_rotation_is_imaginary() {
        let rot = Element::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let mut ims: Vec<f64> = rot.spectrum().unwrap().iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        assert!(Element::diag(&[1.0, 2.0]).is_positive(&tol()));
        assert!(!Element::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).is_positive(&tol()));
        assert!(!Element::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).is_positive(&tol()));
        assert!(Element::zero(2).is_positive(&tol()));
        // singular positive matrix with rounding noise
        let p = Element::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(p.is_positive(&tol()));
    }

    #[test]
    fn leq_examples() {
        let o = OrderMode::Positivity;
        assert!(Element::zero(2).leq(&Element::identity(2), o, &tol()).unwrap());
        assert!(Element::diag(&[1.0, 1.0])
            .leq(&Element::diag(&[2.0, 3.0]), o, &tol())
            .unwrap());
        assert!(!Element::diag(&[2.0, 0.0])
            .leq(&Element::diag(&[1.0, 3.0]), o, &tol())
            .unwrap());
        assert!(matches!(
            Element::zero(2).leq(&Element::zero(3), o, &tol()),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn entrywise_order_differs_off_diagonal() {
        // [[1,1],[1,1]] is positive but has positive off-diagonal entries:
        // θ ⪯ it in both orders. [[1,-1],[-1,1]] is positive but not
        // entrywise nonnegative.
        let p = Element::from_real_rows(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        let z = Element::zero(2);
        assert!(z.leq(&p, OrderMode::Positivity, &tol()).unwrap());
        assert!(!z.leq(&p, OrderMode::Entrywise, &tol()).unwrap());
        let q = Element::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(!z.leq(&q, OrderMode::Positivity, &tol()).unwrap());
        assert!(z.leq(&q, OrderMode::Entrywise, &tol()).unwrap());
    }

    #[test]
    fn sqrt_examples() {
        let r = Element::diag(&[4.0, 9.0]).positive_sqrt(&tol()).unwrap();
        assert_close(&r, &Element::diag(&[2.0, 3.0]), 1e-14);
        let r = Element::identity(3).positive_sqrt(&tol()).unwrap();
        assert_close(&r, &Element::identity(3), 1e-14);

        // eigenvalues {1,3}, eigenvectors (1,±1)/√2
        let s3 = 3f64.sqrt();
        let expect = Element::from_real_rows(&[
            &[(s3 + 1.0) / 2.0, (s3 - 1.0) / 2.0],
            &[(s3 - 1.0) / 2.0, (s3 + 1.0) / 2.0],
        ]);
        let a = Element::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = a.positive_sqrt(&tol()).unwrap();
        assert_close(&r, &expect, 1e-14);
        assert!(r.is_positive(&tol()));

        let bad = Element::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(bad.positive_sqrt(&tol()), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn inv_residual_examples() {
        let t = tol();
        assert_close(
            &Element::zero(2).inv_residual_transform(&t).unwrap(),
            &Element::zero(2),
            0.0,
        );
        let r = Element::diag(&[0.25, 0.25]).inv_residual_transform(&t).unwrap();
        assert_close(&r, &Element::diag(&[1.0 / 3.0, 1.0 / 3.0]), 1e-15);
        let r = Element::scalar(2, 0.4).inv_residual_transform(&t).unwrap();
        assert_close(&r, &Element::scalar(2, 2.0 / 3.0), 1e-15);
        assert!(r.norm(NormMode::Operator) < 1.0);
        assert!(matches!(
            Element::scalar(2, 0.5).inv_residual_transform(&t),
            Err(Error::NormTooLarge { .. })
        ));
        assert!(matches!(
            Element::scalar(2, -0.1).inv_residual_transform(&t),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn singular_resolvent_is_reported() {
        assert_eq!(Element::identity(2).one_minus_inverse(), Err(Error::Singular));
    }

    #[test]
    fn centrality_examples() {
        assert!(Element::scalar(2, 3.0).is_central(&tol()));
        assert!(!Element::diag(&[1.0, 2.0]).is_central(&tol()));
        assert!(Element::zero(2).is_central(&tol()));
        assert!(Element::scalar(1, 0.7).is_central(&tol()));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
        let t = Tolerance::default();
        assert!(t.eps_pos < 1e-3 && t.eps_eq < 1e-3);
    }

    #[test]
    fn serialises_real_and_complex() {
        let r = Element::diag(&[1.0, 2.0]);
        // serde_json is not a dependency of this crate; exercise Debug instead
        assert_eq!(format!("{r:?}"), "Element[[\"1\", \"0\"], [\"0\", \"2\"]]");
    }
}
