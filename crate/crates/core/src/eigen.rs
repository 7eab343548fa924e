//! Dense Hermitian eigensolver: complex Householder reduction to a real
//! symmetric tridiagonal matrix followed by implicit-shift QL.
//!
//! The reduction produces complex subdiagonals whose phases are absorbed by a
//! diagonal unitary similarity, so the tridiagonal stage runs in real
//! arithmetic.  Only eigenvalues are computed; the Monte Carlo pipeline never
//! needs eigenvectors.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EigenError {
    #[error("QL iteration did not converge within the sweep cap")]
    NoConvergence,
}

/// All eigenvalues of a Hermitian matrix (row-major, n x n), sorted ascending.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<f64>, EigenError> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[0].re]);
    }
    let (mut d, mut e) = hermitian_to_tridiagonal(a, n);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_unstable_by(|x, y| x.partial_cmp(y).expect("eigenvalue NaN"));
    Ok(d)
}

/// Householder reduction of a Hermitian matrix to real tridiagonal form.
/// Returns (diagonal, subdiagonal) with `e[i]` the entry between rows i and
/// i+1 (`e[n-1]` is zero padding).
pub fn hermitian_to_tridiagonal(a: &[Complex64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut e = vec![0.0; n];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut alpha2 = 0.0;
        for i in 0..len {
            alpha2 += m[idx(k + 1 + i, k)].norm_sqr();
        }
        let alpha = alpha2.sqrt();
        e[k] = alpha;
        if alpha == 0.0 {
            continue;
        }
        let x0 = m[idx(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + e^{i phi} |x| e1, normalized.
        for i in 0..len {
            v[i] = m[idx(k + 1 + i, k)];
        }
        v[0] += phase * alpha;
        let vnorm2: f64 = v[0..len].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let inv = 1.0 / vnorm2.sqrt();
        for z in v[0..len].iter_mut() {
            *z *= inv;
        }
        // p = A22 v over the trailing block.
        for i in 0..len {
            let mut acc = Complex64::new(0.0, 0.0);
            let row = k + 1 + i;
            for j in 0..len {
                acc += m[idx(row, k + 1 + j)] * v[j];
            }
            p[i] = acc;
        }
        // w = 2p - 2 (v* p) v, then A22 <- A22 - v w* - w v*.
        let vp: Complex64 = v[0..len]
            .iter()
            .zip(&p[0..len])
            .map(|(vi, pi)| vi.conj() * pi)
            .sum();
        for i in 0..len {
            p[i] = 2.0 * p[i] - 2.0 * vp * v[i];
        }
        for i in 0..len {
            for j in 0..len {
                let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                m[idx(k + 1 + i, k + 1 + j)] -= upd;
            }
        }
    }
    if n >= 2 {
        e[n - 2] = m[idx(n - 1, n - 2)].norm();
    }
    let d: Vec<f64> = (0..n).map(|i| m[idx(i, i)].re).collect();
    let mut sub = vec![0.0; n];
    sub[..n - 1].copy_from_slice(&e[..n - 1]);
    (d, sub)
}

/// Implicit-shift QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// `e[i]` is the subdiagonal between i and i+1; `e[n-1]` must be zero.
pub fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), EigenError> {
    let n = d.len();
    assert_eq!(e.len(), n);
    let mut total_sweeps = 0usize;
    let sweep_cap = 30 * n;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total_sweeps += 1;
            if iter > 30 || total_sweeps > sweep_cap {
                return Err(EigenError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(if g == 0.0 { 1.0 } else { g }));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
