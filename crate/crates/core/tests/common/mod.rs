//! Shared test support: random Hermitian operators and states, and an
//! independent eigensolver used as an oracle.
#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::{DMatrix, DVector};
use postulate::hilbert::{Observable, StateVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_state<R: Rng>(rng: &mut R, dims: Vec<usize>) -> StateVector {
    let n: usize = dims.iter().product();
    StateVector::normalized((0..n).map(|_| random_complex(rng)).collect(), dims).unwrap()
}

pub fn random_hermitian_matrix<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let m = DMatrix::from_fn(n, n, |_, _| random_complex(rng));
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Random unitary from Gram-Schmidt on random complex columns.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let mut cols: Vec<DVector<C64>> = Vec::new();
    while cols.len() < n {
        let mut v = DVector::from_fn(n, |_, _| random_complex(rng));
        for u in &cols {
            let p = u.dotc(&v);
            v -= u * p;
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / C64::new(norm, 0.0));
        }
    }
    DMatrix::from_columns(&cols)
}

/// Hermitian matrix with eigenvalues drawn from a small set, so degenerate
/// eigenspaces are common.
pub fn random_degenerate_hermitian<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let u = random_unitary(rng, n);
    let levels = [-1.0, 0.5, 2.0];
    let d = DMatrix::from_diagonal(&DVector::from_fn(n, |_, _| {
        C64::new(levels[rng.random_range(0..levels.len())], 0.0)
    }));
    let m = &u * d * u.adjoint();
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub fn random_observable<R: Rng>(rng: &mut R, n: usize) -> Observable {
    let m = if rng.random_bool(0.5) {
        random_hermitian_matrix(rng, n)
    } else {
        random_degenerate_hermitian(rng, n)
    };
    Observable::new(m, vec![n]).unwrap()
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix (row-major).
/// Returns eigenvalues and eigenvectors (as columns of `vecs`, `vecs[i][k]`).
pub fn jacobi_symmetric(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
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
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Oracle spectral decomposition of a Hermitian matrix `H = A + iB` through
/// the real symmetric embedding `[[A, -B], [B, A]]`, in which every
/// eigenvalue of `H` appears twice. Returns (eigenvalue, projector) pairs
/// sorted ascending, clustering eigenvalues within `tol`.
pub fn oracle_spectrum(h: &DMatrix<C64>, tol: f64) -> Vec<(f64, DMatrix<C64>)> {
    let n = h.nrows();
    let mut s = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            s[i][j] = z.re;
            s[i + n][j + n] = z.re;
            s[i][j + n] = -z.im;
            s[i + n][j] = z.im;
        }
    }
    let (values, vecs) = jacobi_symmetric(s);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut out: Vec<(Vec<f64>, DMatrix<C64>)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for k in order {
        let z = DVector::from_fn(n, |i, _| C64::new(vecs[i][k], vecs[i + n][k]));
        // each complex eigenvector contributes twice, hence the 1/2
        let contribution = &z * z.adjoint() * C64::new(0.5, 0.0);
        match out.last_mut() {
            Some((vals, p)) if values[k] - prev <= tol => {
                vals.push(values[k]);
                *p += contribution;
            }
            _ => out.push((vec![values[k]], contribution)),
        }
        prev = values[k];
    }
    out.into_iter()
        .map(|(vals, p)| (vals.iter().sum::<f64>() / vals.len() as f64, p))
        .collect()
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
