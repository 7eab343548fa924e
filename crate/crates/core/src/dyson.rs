//! Vector Dyson equation solver and the asymptotic density of states.
//!
//! The components a_i(z) solve a_i (sum_j s_ij a_j - i z) = 1 with
//! Re a_i > 0; the limiting density is rho(E) = (1/pi) Re (1/K) sum_i a_i at
//! z = E + i0.  A damped fixed-point iteration in the inverse form
//! a <- 1/(S a - i z) stays inside the Re > 0 half-space and is polished by
//! Newton steps once it is close.

use crate::model::VarianceProfile;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DysonError {
    #[error("Dyson iteration did not converge within {0} iterations (residual {1:.3e})")]
    NoConvergence(usize, f64),
    #[error("Dyson solution left the Re > 0 branch")]
    WrongBranch,
    #[error("singularity fit degenerate: {0}")]
    FitDegenerate(String),
}

/// Solution of the vector Dyson equation at one spectral parameter.
#[derive(Debug, Clone)]
pub struct DysonSolution {
    pub a: Vec<Complex64>,
    pub z: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

impl DysonSolution {
    /// (1/K) sum_i a_i, the normalized trace component.
    pub fn mean(&self) -> Complex64 {
        self.a.iter().sum::<Complex64>() / self.a.len() as f64
    }
}

fn residual(p: &VarianceProfile, z: Complex64, a: &[Complex64]) -> f64 {
    let k = p.k();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let mut sa = Complex64::new(0.0, 0.0);
        for j in 0..k {
            sa += p.entry(i, j) * a[j];
        }
        let r = (a[i] * (sa - Complex64::i() * z) - 1.0).norm();
        worst = worst.max(r);
    }
    worst
}

fn fixed_point_update(p: &VarianceProfile, z: Complex64, a: &[Complex64]) -> Vec<Complex64> {
    let k = p.k();
    (0..k)
        .map(|i| {
            let mut sa = Complex64::new(0.0, 0.0);
            for j in 0..k {
                sa += p.entry(i, j) * a[j];
            }
            1.0 / (sa - Complex64::i() * z)
        })
        .collect()
}

/// Dense complex linear solve by Gaussian elimination with partial pivoting.
fn solve_linear(mut m: Vec<Complex64>, mut b: Vec<Complex64>, n: usize) -> Option<Vec<Complex64>> {
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].norm();
        for r in col + 1..n {
            let v = m[r * n + col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            b.swap(col, piv);
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
            let bv = b[col];
            b[r] -= f * bv;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= m[row * n + c] * x[c];
        }
        x[row] = acc / m[row * n + row];
    }
    Some(x)
}

fn newton_step(p: &VarianceProfile, z: Complex64, a: &[Complex64]) -> Option<Vec<Complex64>> {
    let k = p.k();
    let mut jac = vec![Complex64::new(0.0, 0.0); k * k];
    let mut g = vec![Complex64::new(0.0, 0.0); k];
    for i in 0..k {
        let mut sa = Complex64::new(0.0, 0.0);
        for j in 0..k {
            sa += p.entry(i, j) * a[j];
        }
        let core = sa - Complex64::i() * z;
        g[i] = a[i] * core - 1.0;
        for j in 0..k {
            jac[i * k + j] = a[i] * p.entry(i, j);
        }
        jac[i * k + i] += core;
    }
    let rhs: Vec<Complex64> = g.iter().map(|v| -v).collect();
    let delta = solve_linear(jac, rhs, k)?;
    Some((0..k).map(|i| a[i] + delta[i]).collect())
}

fn solve_at(
    p: &VarianceProfile,
    z: Complex64,
    tol: f64,
    max_iter: usize,
    start: Vec<Complex64>,
) -> Result<DysonSolution, DysonError> {
    let k = p.k();
    let mut a = start;
    let mut res = residual(p, z, &a);
    let mut delta = 0.5;
    let mut iterations = 0;
    // Damped phase down to the Newton basin, then Newton polish.
    let loose = 1e-3;
    while res > loose && iterations < max_iter {
        let update = fixed_point_update(p, z, &a);
        let cand: Vec<Complex64> = (0..k)
            .map(|i| (1.0 - delta) * a[i] + delta * update[i])
            .collect();
        let cand_res = residual(p, z, &cand);
        if cand_res <= res {
            a = cand;
            res = cand_res;
            delta = (delta * 1.3).min(1.0);
        } else {
            delta = (delta * 0.5).max(1e-3);
            // Accept slow progress at the damping floor so the iteration
            // cannot stall on a residual plateau.
            if delta <= 1e-3 {
                a = cand;
                res = cand_res;
            }
        }
        iterations += 1;
    }
    // Newton is not monotone in the residual norm near the origin
    // singularity (the Jacobian is close to rank deficient), so track the
    // best iterate and tolerate a few uphill steps before giving up.
    let mut best = a.clone();
    let mut best_res = res;
    let mut bad_streak = 0;
    let mut polish = 0;
    while best_res > tol && polish < 80 {
        match newton_step(p, z, &a) {
            Some(mut cand) => {
                // Backtrack if Newton leaves the physical branch.
                let mut shrink = 0;
                while cand.iter().any(|v| v.re <= 0.0 || !v.re.is_finite()) && shrink < 40 {
                    cand = (0..k).map(|i| 0.5 * (a[i] + cand[i])).collect();
                    shrink += 1;
                }
                let cand_res = residual(p, z, &cand);
                if !cand_res.is_finite() || cand_res > 1e6 * best_res.max(1.0) {
                    break;
                }
                if cand_res < best_res {
                    best = cand.clone();
                    best_res = cand_res;
                    bad_streak = 0;
                } else {
                    bad_streak += 1;
                    if bad_streak > 4 {
                        break;
                    }
                }
                a = cand;
            }
            None => break,
        }
        polish += 1;
        iterations += 1;
    }
    a = best;
    res = best_res;
    if res > tol {
        return Err(DysonError::NoConvergence(iterations, res));
    }
    if a.iter().any(|v| v.re <= 0.0) {
        return Err(DysonError::WrongBranch);
    }
    Ok(DysonSolution { a, z, residual: res, iterations })
}

/// Solve the vector Dyson equation at z (Im z > 0) with warm start support.
///
/// Without a warm start the solver runs a continuation in Im z: it starts
/// high on the imaginary axis where the default guess a_i = i/z is accurate
/// and steps down geometrically to the requested point.  Near the origin
/// singularity the components separate by powers of eta and a cold start at
/// tiny Im z would otherwise leave the Newton basin.
pub fn solve_dyson_from(
    p: &VarianceProfile,
    z: Complex64,
    tol: f64,
    max_iter: usize,
    guess: Option<&[Complex64]>,
) -> Result<DysonSolution, DysonError> {
    assert!(z.im > 0.0, "solve_dyson requires Im z > 0");
    assert!(tol > 0.0);
    let k = p.k();
    if let Some(g) = guess {
        if g.iter().all(|v| v.re.is_finite() && v.re > 0.0) {
            if let Ok(sol) = solve_at(p, z, tol, max_iter, g.to_vec()) {
                return Ok(sol);
            }
        }
    }
    let y_top = (2.0 * p.max_row_sum().sqrt()).max(1.0).max(z.im);
    let mut y = y_top;
    let z0 = Complex64::new(z.re, y);
    let mut a: Vec<Complex64> = vec![Complex64::i() / z0; k];
    loop {
        let target = Complex64::new(z.re, y);
        let leg_tol = if y <= z.im { tol } else { 1e-10 };
        let sol = solve_at(p, target, leg_tol, max_iter, a)?;
        if y <= z.im {
            return Ok(sol);
        }
        a = sol.a;
        y = (y / 4.0).max(z.im);
    }
}

/// Solve from the default initial guess a_i = i/z.
pub fn solve_dyson(
    p: &VarianceProfile,
    z: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<DysonSolution, DysonError> {
    solve_dyson_from(p, z, tol, max_iter, None)
}

/// Asymptotic density at E with Im-regularization eps:
/// (1/pi) Re (1/K) sum_i a_i(E + i eps).
pub fn density_infinity(p: &VarianceProfile, e: f64, eps: f64) -> Result<f64, DysonError> {
    assert!(eps > 0.0);
    let sol = solve_dyson(p, Complex64::new(e, eps), 1e-13, 20_000)?;
    Ok(sol.mean().re / std::f64::consts::PI)
}

/// Density extrapolated to eps -> 0: two-point linear Richardson on the
/// schedule {eps, eps/2, eps/4} (the finest pair carries the estimate).
pub fn density_extrapolated(p: &VarianceProfile, e: f64, eps: f64) -> Result<f64, DysonError> {
    let _ = density_infinity(p, e, eps)?;
    let r2 = density_infinity(p, e, eps / 2.0)?;
    let r4 = density_infinity(p, e, eps / 4.0)?;
    Ok(2.0 * r4 - r2)
}

/// Least-squares fit of log rho against log |E| on a decade-spaced grid.
/// Returns (sigma_hat, theta_hat) with rho ~ theta |E|^{-sigma}.
///
/// `eps_rel` sets the Im-regularization relative to each grid point
/// (eps = eps_rel * E before Richardson extrapolation).
pub fn singularity_fit(
    p: &VarianceProfile,
    e_grid: &[f64],
    eps_rel: f64,
) -> Result<(f64, f64), DysonError> {
    assert!(!e_grid.is_empty());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut failures = 0usize;
    let mut guess: Option<Vec<Complex64>> = None;
    let mut points: Vec<f64> = e_grid.to_vec();
    points.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for &e in &points {
        let eps = eps_rel * e;
        let mut vals = [0.0f64; 3];
        let mut ok = true;
        for (slot, frac) in [1.0, 0.5, 0.25].into_iter().enumerate() {
            let z = Complex64::new(e, eps * frac);
            match solve_dyson_from(p, z, 1e-13, 20_000, guess.as_deref()) {
                Ok(sol) => {
                    vals[slot] = sol.mean().re / std::f64::consts::PI;
                    guess = Some(sol.a);
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        let rho = 2.0 * vals[2] - vals[1];
        if ok && rho > 0.0 && rho.is_finite() {
            xs.push(e.ln());
            ys.push(rho.ln());
        } else {
            failures += 1;
        }
    }
    if failures * 5 > e_grid.len() {
        return Err(DysonError::FitDegenerate(format!(
            "{failures} of {} grid points unusable",
            e_grid.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(DysonError::FitDegenerate("grid collapsed to one point".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok((-slope, intercept.exp()))
}
