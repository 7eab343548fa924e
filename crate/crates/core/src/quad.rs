//! Quadrature rules: Gauss-Laguerre, Gauss-Legendre, Gauss-Hermite nodes and
//! weights by Newton iteration on the orthogonal-polynomial recurrences, plus
//! a trapezoid rule on the exponential substitution for integrals over
//! (0, inf) whose integrands decay at both endpoints.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Laguerre rule for weight e^{-x},
/// with the weights already multiplied by e^{x_k}:
/// `int_0^inf g(x) dx ~= sum w[k] g(x[k])`.
///
/// The Laguerre recurrence is evaluated on e^{-x/2}-scaled values so that the
/// modified weights stay representable for large n.
pub fn gauss_laguerre_modified(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n {
        // Stroud & Secrest style initial guesses.
        let mut x = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => nodes[0] + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                nodes[i - 1]
                    + (nodes[i - 1] - nodes[i - 2]) * (1.0 + 2.55 * ai) / (1.9 * ai)
            }
        };
        let mut s_n = 0.0;
        let mut s_nm1 = 0.0;
        for _ in 0..200 {
            // Scaled recurrence: s_k(x) = e^{-x/2} L_k(x).
            let scale = (-0.5 * x).exp();
            let mut p0 = scale;
            let mut p1 = (1.0 - x) * scale;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            s_n = p1;
            s_nm1 = p0;
            // L_n'(x) = n (L_n - L_{n-1}) / x, same relation for scaled values
            // up to the common factor which cancels in the Newton step.
            let dp = nf * (s_n - s_nm1) / x;
            let dx = s_n / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * x.max(1.0) {
                break;
            }
        }
        nodes[i] = x;
        // One more recurrence step for s_{n+1}(x).
        let s_np1 = ((2.0 * nf + 1.0 - x) * s_n - nf * s_nm1) / (nf + 1.0);
        // lambda_k e^{x_k} = x / ((n+1)^2 (e^{-x/2} L_{n+1})^2).
        weights[i] = x / ((nf + 1.0) * (nf + 1.0) * s_np1 * s_np1);
    }
    (nodes, weights)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on (-1, 1).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    let nf = n as f64;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Nodes and weights of the n-point Gauss-Hermite rule for weight e^{-x^2}.
///
/// Nodes are the eigenvalues of the Jacobi matrix (Golub-Welsch); weights
/// come from the Christoffel sum over e^{-x^2/2}-scaled orthonormal
/// polynomial values, which stays representable at the extreme nodes for
/// large n.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for (k, slot) in e.iter_mut().enumerate().take(n - 1) {
        *slot = ((k + 1) as f64 / 2.0).sqrt();
    }
    crate::eigen::tridiagonal_ql(&mut d, &mut e).expect("Hermite Jacobi matrix QL");
    d.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let pim4 = 0.751_125_544_464_942_9; // pi^{-1/4}
    let weights: Vec<f64> = d
        .iter()
        .map(|&x| {
            let scale = (-0.5 * x * x).exp();
            let mut p0 = pim4 * scale;
            let mut p1 = 0.0;
            let mut sum = p0 * p0;
            for k in 0..n - 1 {
                let kf = k as f64;
                let p2 = p1;
                p1 = p0;
                p0 = x * (2.0 / (kf + 1.0)).sqrt() * p1 - (kf / (kf + 1.0)).sqrt() * p2;
                sum += p0 * p0;
            }
            // At extreme nodes of very large rules the scaled values
            // underflow entirely; the true weight is below f64 range there.
            if sum > 0.0 {
                scale * scale / sum
            } else {
                0.0
            }
        })
        .collect();
    (d, weights)
}

/// Trapezoid rule on the substitution v = e^u for `int_0^inf f(v) dv`.
///
/// Requires the integrand (after the Jacobian e^u) to decay in both
/// directions, which holds for all v-integrals in this crate: they carry
/// e^{-c/v} damping at 0 and e^{-c v} or e^{-c v^2} damping at infinity.
pub fn integrate_zero_inf<F>(f: F, h: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let term = |u: f64| {
        let v = u.exp();
        f(v) * v
    };
    let mut sum = term(0.0);
    for dir in [1.0, -1.0] {
        let mut small = 0;
        let mut k = 1;
        loop {
            let t = term(dir * h * k as f64);
            sum += t;
            let mag = t.norm();
            if mag < 1e-18 * sum.norm().max(1e-300) {
                small += 1;
                if small >= 4 {
                    break;
                }
            } else {
                small = 0;
            }
            k += 1;
            if k > 200_000 {
                break;
            }
        }
    }
    sum * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn laguerre_integrates_polynomials() {
        let (x, w) = gauss_laguerre_modified(16);
        // int_0^inf e^{-x} x^3 dx = 6
        let s: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (-xi).exp() * xi.powi(3))
            .sum();
        assert!((s - 6.0).abs() < 1e-10, "{s}");
        // int_0^inf e^{-2a} da = 1/2 without any change of variables
        let s2: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * (-2.0 * xi).exp()).sum();
        assert!((s2 - 0.5).abs() < 1e-10, "{s2}");
    }

    #[test]
    fn laguerre_large_n_stable() {
        let (x, w) = gauss_laguerre_modified(192);
        assert!(x.iter().all(|v| v.is_finite() && *v > 0.0));
        assert!(w.iter().all(|v| v.is_finite() && *v > 0.0));
        let s: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (-xi).exp() * xi * xi)
            .sum();
        assert!((s - 2.0).abs() < 1e-8, "{s}");
    }

    #[test]
    fn legendre_integrates_quartic() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(4)).sum();
        assert!((s - 0.4).abs() < 1e-12, "{s}");
    }

    #[test]
    fn hermite_second_moment() {
        let (x, w) = gauss_hermite(40);
        let s: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi * xi).sum();
        let expect = std::f64::consts::PI.sqrt() / 2.0;
        assert!((s - expect).abs() < 1e-10, "{s}");
    }

    #[test]
    fn exp_substitution_gaussian_tail() {
        // int_0^inf e^{-v^2 - 1/v} dv has no closed form; check against a
        // fine-step evaluation of itself (step-halving consistency) plus the
        // simpler exact case int_0^inf e^{-v} dv = 1.
        let one = integrate_zero_inf(|v| Complex64::new((-v).exp(), 0.0), 0.02);
        assert!((one.re - 1.0).abs() < 1e-12, "{one}");
        let a = integrate_zero_inf(|v| Complex64::new((-v * v - 1.0 / v).exp(), 0.0), 0.05);
        let b = integrate_zero_inf(|v| Complex64::new((-v * v - 1.0 / v).exp(), 0.0), 0.025);
        assert!((a - b).norm() < 1e-12 * b.norm());
    }
}
