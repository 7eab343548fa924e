//! Independent oracles for the dense Hermitian eigensolver: characteristic
//! polynomial sign changes (via complex LU determinants) and inverse
//! iteration residuals.

use num_complex::Complex64;
use rmblock_core::model::validate_profile;
use rmblock_core::rng::CounterRng;
use rmblock_core::sampler::{eigenvalues, sample_block_matrix, HermitianMatrix};

type C = Complex64;

fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = CounterRng::new(seed);
    let mut a = vec![C::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            let (g1, g2) = rng.next_gaussian_pair();
            let z = if i == j { C::new(g1, 0.0) } else { C::new(g1, g2) };
            a[i * n + j] = z;
            a[j * n + i] = z.conj();
        }
    }
    HermitianMatrix { dim: n, entries: a }
}

/// det(H - lambda I) via complex Gaussian elimination; real for Hermitian H
/// and real lambda up to rounding.
fn char_poly(h: &HermitianMatrix, lambda: f64) -> f64 {
    let n = h.dim;
    let mut m = h.entries.clone();
    for i in 0..n {
        m[i * n + i] -= lambda;
    }
    let mut det = C::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].norm();
        for r in col + 1..n {
            if m[r * n + col].norm() > best {
                best = m[r * n + col].norm();
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            for c in col..n {
                let v = m[col * n + c];
                m[r * n + c] -= f * v;
            }
        }
    }
    det.re
}

#[test]
fn eigenvalues_match_characteristic_polynomial_roots() {
    let h = random_hermitian(5, 2024);
    let ev = eigenvalues(&h).unwrap();
    // Bracket the sign changes of det(H - lambda) on a fine grid, bisect.
    let bound = 1.0 + h.entries.iter().map(|z| z.norm()).sum::<f64>();
    let grid = 20_000;
    let mut roots = Vec::new();
    let mut prev = char_poly(&h, -bound);
    for i in 1..=grid {
        let lam = -bound + 2.0 * bound * i as f64 / grid as f64;
        let cur = char_poly(&h, lam);
        if prev.signum() != cur.signum() {
            let mut lo = -bound + 2.0 * bound * (i - 1) as f64 / grid as f64;
            let mut hi = lam;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if char_poly(&h, mid).signum() == prev.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    assert_eq!(roots.len(), 5, "oracle found {} roots", roots.len());
    for (a, b) in ev.iter().zip(&roots) {
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }
}

/// Solve (A - mu I) x = b by complex LU for inverse iteration.
fn solve_shifted(h: &HermitianMatrix, mu: f64, b: &[C]) -> Vec<C> {
    let n = h.dim;
    let mut m = h.entries.clone();
    for i in 0..n {
        m[i * n + i] -= mu;
    }
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].norm();
        for r in col + 1..n {
            if m[r * n + col].norm() > best {
                best = m[r * n + col].norm();
                piv = r;
            }
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            rhs.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for c in col..n {
                let v = m[col * n + c];
                m[r * n + c] -= f * v;
            }
            let bv = rhs[col];
            rhs[r] -= f * bv;
        }
    }
    let mut x = vec![C::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for c in row + 1..n {
            acc -= m[row * n + c] * x[c];
        }
        x[row] = acc / m[row * n + row];
    }
    x
}

#[test]
fn spot_check_residuals_by_inverse_iteration() {
    // Random block-model samples; for a spread of computed eigenvalues,
    // recover the eigenvector by inverse iteration and check
    // ||H v - lambda v|| / ||H|| <= 1e-10.
    let p = validate_profile(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let h = sample_block_matrix(&p, 10, 77);
    let ev = eigenvalues(&h).unwrap();
    let n = h.dim;
    let hnorm = h.frobenius_sq().sqrt();
    for &idx in &[0usize, n / 3, n / 2, n - 1] {
        let lambda = ev[idx];
        let mu = lambda + 1e-8; // keep the shifted system nonsingular
        let mut rng = CounterRng::new(idx as u64 + 1);
        let mut v: Vec<C> = (0..n)
            .map(|_| {
                let (g1, g2) = rng.next_gaussian_pair();
                C::new(g1, g2)
            })
            .collect();
        for _ in 0..3 {
            v = solve_shifted(&h, mu, &v);
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in v.iter_mut() {
                *z /= norm;
            }
        }
        let mut residual = 0.0f64;
        for r in 0..n {
            let mut acc = C::new(0.0, 0.0);
            for c in 0..n {
                acc += h.entries[r * n + c] * v[c];
            }
            acc -= lambda * v[r];
            residual += acc.norm_sqr();
        }
        let rel = residual.sqrt() / hnorm;
        assert!(rel <= 1e-10, "eigenpair {idx}: relative residual {rel}");
    }
}
