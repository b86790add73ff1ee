#![allow(dead_code)]

use cstar_core::{Complex64, Element, ScalarField};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(i: usize) -> ScalarField {
    if i.is_multiple_of(2) {
        ScalarField::Real
    } else {
        ScalarField::Complex
    }
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize, field: ScalarField) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        let re = rng.random_range(-1.0..1.0);
        let im = match field {
            ScalarField::Real => 0.0,
            ScalarField::Complex => rng.random_range(-1.0..1.0),
        };
        Complex64::new(re, im)
    })
}

pub fn random_element(rng: &mut impl Rng, dim: usize, field: ScalarField) -> Element {
    Element::from_matrix(random_matrix(rng, dim, field))
}

/// `g* g` for a random `g`.
pub fn random_positive(rng: &mut impl Rng, dim: usize, field: ScalarField) -> Element {
    let g = random_element(rng, dim, field);
    &g.adjoint() * &g
}

pub fn random_self_adjoint(rng: &mut impl Rng, dim: usize, field: ScalarField) -> Element {
    let g = random_element(rng, dim, field);
    (&g + &g.adjoint()).scale(0.5)
}

/// Unitary factor of a random matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize, field: ScalarField) -> DMatrix<Complex64> {
    random_matrix(rng, dim, field).qr().q()
}

/// `U diag(values) U*`.
pub fn conjugated_diag(u: &DMatrix<Complex64>, values: &[f64]) -> Element {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    let m = u * d * u.adjoint();
    Element::from_matrix((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Cyclic Jacobi rotations on a real symmetric matrix (row-major `n × n`).
/// Returns eigenvalues and column eigenvectors.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * rp[k] - s * rq[k];
                    a[q][k] = s * rp[k] + c * rq[k];
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Square root through the real embedding `[[Re, −Im], [Im, Re]]` and Jacobi.
pub fn oracle_sqrt(a: &Element) -> Element {
    let n = a.dim();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            // symmetrise so the embedding is exactly symmetric
            let z = (a.entry(i, j) + a.entry(j, i).conj()) * 0.5;
            big[i][j] = z.re;
            big[i][j + n] = -z.im;
            big[i + n][j] = z.im;
            big[i + n][j + n] = z.re;
        }
    }
    let (vals, vecs) = jacobi_eigen(big);
    let m = 2 * n;
    let mut root = vec![vec![0.0; m]; m];
    for (k, &l) in vals.iter().enumerate() {
        let s = l.max(0.0).sqrt();
        for i in 0..m {
            for j in 0..m {
                root[i][j] += s * vecs[i][k] * vecs[j][k];
            }
        }
    }
    Element::from_matrix(DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(root[i][j], root[i + n][j])
    }))
}

pub mod strategies {
    use cstar_core::{Complex64, Element, ScalarField};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    pub fn field() -> impl Strategy<Value = ScalarField> {
        prop_oneof![Just(ScalarField::Real), Just(ScalarField::Complex)]
    }

    /// Random square element of the given size, entries in `[-1, 1]`.
    pub fn element(dim: usize, field: ScalarField) -> impl Strategy<Value = Element> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
            Element::from_matrix(DMatrix::from_fn(dim, dim, |i, j| {
                let (re, im) = v[i * dim + j];
                let im = if field == ScalarField::Real { 0.0 } else { im };
                Complex64::new(re, im)
            }))
        })
    }

    /// `(dim, a, b, c)` with independent elements of one size and field.
    pub fn triple() -> impl Strategy<Value = (usize, Element, Element, Element)> {
        (1usize..=4, field()).prop_flat_map(|(dim, f)| (Just(dim), element(dim, f), element(dim, f), element(dim, f)))
    }

    pub fn positive_from(g: &Element) -> Element {
        &g.adjoint() * g
    }
}
