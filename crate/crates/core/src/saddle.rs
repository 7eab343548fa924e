//! Multidimensional saddle-point expansion for integrals of the form
//! int_gamma du e^{-N J(u)} F(u) D(u), with separated coordinates
//! (the mixed second derivatives of J vanish at the critical point).
//!
//! The module consumes derivative *values* at the critical point, not
//! function expressions; callers supply them analytically or by finite
//! differences.  It produces the leading asymptotic term, including the
//! c1/N correction that takes over when D vanishes at the saddle, and an
//! empirical error-decay report against a caller-supplied quadrature.

use num_complex::Complex64;
use thiserror::Error;

type C = Complex64;

#[derive(Debug, Error, PartialEq)]
pub enum SaddleError {
    #[error("invalid saddle problem: {0}")]
    InvalidProblem(String),
    #[error("quadrature evaluator failed at N = {0}")]
    QuadratureFailure(usize),
}

/// Saddle data: the critical point, contour directions, and the derivative
/// values of J, F and D needed through the c1 correction.
///
/// Invariants: |dJ_i| ~ 0 (critical point), mu_i^2 d2J_i real positive
/// (admissible contour directions), mixed second derivatives of J absent by
/// assumption.
#[derive(Debug, Clone)]
pub struct SaddleProblem {
    pub dim: usize,
    /// J(u*), sets the overall e^{-N J(u*)} scale.
    pub j_value: C,
    /// First derivatives of J at u* (validated to be ~ 0).
    pub j_grad: Vec<C>,
    /// Pure second derivatives d^2_i J(u*).
    pub j2: Vec<C>,
    /// Pure third derivatives d^3_i J(u*).
    pub j3: Vec<C>,
    /// Contour directions mu_i with |mu_i| = 1 and mu_i^2 d^2_i J(u*) > 0.
    pub mu: Vec<C>,
    /// F(u*) and its first derivatives.
    pub f_value: C,
    pub f_grad: Vec<C>,
    /// D(u*), first derivatives, and pure second derivatives.
    pub d_value: C,
    pub d_grad: Vec<C>,
    pub d2: Vec<C>,
}

impl SaddleProblem {
    fn validate(&self) -> Result<(), SaddleError> {
        let d = self.dim;
        if [
            self.j_grad.len(),
            self.j2.len(),
            self.j3.len(),
            self.mu.len(),
            self.f_grad.len(),
            self.d_grad.len(),
            self.d2.len(),
        ]
        .iter()
        .any(|&l| l != d)
        {
            return Err(SaddleError::InvalidProblem("dimension mismatch".into()));
        }
        for (i, g) in self.j_grad.iter().enumerate() {
            if g.norm() > 1e-10 {
                return Err(SaddleError::InvalidProblem(format!(
                    "dJ_{i} = {g} is not a critical point"
                )));
            }
        }
        for i in 0..d {
            let h = self.mu[i] * self.mu[i] * self.j2[i];
            if h.im.abs() > 1e-10 * h.re.abs().max(1.0) || h.re <= 0.0 {
                return Err(SaddleError::InvalidProblem(format!(
                    "mu_{i}^2 d2J_{i} = {h} is not real positive"
                )));
            }
            if (self.mu[i].norm() - 1.0).abs() > 1e-12 {
                return Err(SaddleError::InvalidProblem(format!(
                    "mu_{i} is not a unit direction"
                )));
            }
        }
        Ok(())
    }

    /// The c1 coefficient of the 1/N correction for D(u*) = 0:
    /// sum_i [ dF_i dD_i / h_i + F d2D_i / (2 h_i) - F dD_i d3J_i / (2 h_i^2) ].
    pub fn c1(&self) -> C {
        let mut acc = C::new(0.0, 0.0);
        for i in 0..self.dim {
            let h = self.j2[i];
            acc += self.f_grad[i] * self.d_grad[i] / h
                + self.f_value * self.d2[i] / (2.0 * h)
                - self.f_value * self.d_grad[i] * self.j3[i] / (2.0 * h * h);
        }
        acc
    }
}

/// Leading term of the expansion:
/// (2 pi / N)^{d/2} e^{-N J(u*)} prod_i (mu_i / sqrt|h_i|) *
/// { F D           when D(u*) != 0,
///   F-independent c1 / N  when D(u*) = 0 }.
pub fn leading_term(sp: &SaddleProblem, n: usize) -> Result<C, SaddleError> {
    sp.validate()?;
    let nf = n as f64;
    let mut pref = C::new(1.0, 0.0);
    for i in 0..sp.dim {
        pref *= sp.mu[i] / sp.j2[i].norm().sqrt();
    }
    let base = (2.0 * std::f64::consts::PI / nf).powf(sp.dim as f64 / 2.0)
        * (-nf * sp.j_value).exp()
        * pref;
    if sp.d_value.norm() > 0.0 {
        Ok(base * sp.f_value * sp.d_value)
    } else {
        Ok(base * sp.c1() / nf)
    }
}

/// One row of the error-decay report.
#[derive(Debug, Clone, Copy)]
pub struct DecayRow {
    pub n: usize,
    pub rel_err: f64,
}

/// Empirical error-decay report: relative deviation of a caller-supplied
/// quadrature of the full integral from the leading term, over an N-grid,
/// plus the fitted decay exponent (expected ~ 1 for both branches).
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    pub exponent: f64,
}

pub fn verify_expansion<E>(
    sp: &SaddleProblem,
    evaluator: E,
    n_grid: &[usize],
) -> Result<DecayReport, SaddleError>
where
    E: Fn(usize) -> Option<C>,
{
    let mut rows = Vec::new();
    for &n in n_grid {
        let exact = evaluator(n).ok_or(SaddleError::QuadratureFailure(n))?;
        let lead = leading_term(sp, n)?;
        let rel = (exact - lead).norm() / lead.norm().max(1e-300);
        rows.push(DecayRow { n, rel_err: rel });
    }
    // Least-squares slope of ln(err) against ln(N); a vanishing error (the
    // exact Gaussian case) reports exponent 0 by convention.
    let usable: Vec<&DecayRow> = rows.iter().filter(|r| r.rel_err > 1e-14).collect();
    let exponent = if usable.len() >= 2 {
        let n = usable.len() as f64;
        let mx: f64 = usable.iter().map(|r| (r.n as f64).ln()).sum::<f64>() / n;
        let my: f64 = usable.iter().map(|r| r.rel_err.ln()).sum::<f64>() / n;
        let sxx: f64 = usable
            .iter()
            .map(|r| ((r.n as f64).ln() - mx).powi(2))
            .sum();
        let sxy: f64 = usable
            .iter()
            .map(|r| ((r.n as f64).ln() - mx) * (r.rel_err.ln() - my))
            .sum();
        -sxy / sxx
    } else {
        0.0
    };
    Ok(DecayReport { rows, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn zeros(d: usize) -> Vec<C> {
        vec![c(0.0, 0.0); d]
    }

    /// Gaussian case: J = u^2/2, F = D = 1 at u* = 0.
    fn gaussian_problem() -> SaddleProblem {
        SaddleProblem {
            dim: 1,
            j_value: c(0.0, 0.0),
            j_grad: zeros(1),
            j2: vec![c(1.0, 0.0)],
            j3: zeros(1),
            mu: vec![c(1.0, 0.0)],
            f_value: c(1.0, 0.0),
            f_grad: zeros(1),
            d_value: c(1.0, 0.0),
            d_grad: zeros(1),
            d2: zeros(1),
        }
    }

    /// Trapezoid over the real line, fine enough to be exact for the tests.
    fn real_line_quadrature<G>(f: G) -> C
    where
        G: Fn(f64) -> C,
    {
        let h = 1e-3;
        let mut sum = c(0.0, 0.0);
        let mut k = -40_000i64;
        while k <= 40_000 {
            sum += f(h * k as f64);
            k += 1;
        }
        sum * h
    }

    #[test]
    fn gaussian_is_exact() {
        let sp = gaussian_problem();
        for n in [1usize, 10, 100] {
            let lead = leading_term(&sp, n).unwrap();
            let expect = (2.0 * std::f64::consts::PI / n as f64).sqrt();
            assert!((lead - c(expect, 0.0)).norm() < 1e-14 * expect);
        }
    }

    #[test]
    fn second_moment_identity() {
        // J = u^2/2, F = 1, D = u^2: D0 = 0, dD = 0, d2D = 2 so c1 = 1/h = 1
        // and the term is sqrt(2 pi / N) / N, matching
        // int e^{-N u^2/2} u^2 du exactly.
        let mut sp = gaussian_problem();
        sp.d_value = c(0.0, 0.0);
        sp.d2 = vec![c(2.0, 0.0)];
        for n in [2usize, 7, 50] {
            let nf = n as f64;
            let lead = leading_term(&sp, n).unwrap();
            let expect = (2.0 * std::f64::consts::PI / nf).sqrt() / nf;
            assert!((lead - c(expect, 0.0)).norm() < 1e-14 * expect, "N = {n}");
        }
    }

    #[test]
    fn scaling_covariance_in_j() {
        // Shifting J by a constant multiplies the result by e^{-N c}.
        let mut sp = gaussian_problem();
        let shift = c(0.3, -0.2);
        sp.j_value += shift;
        let n = 5;
        let lead = leading_term(&sp, n).unwrap();
        let base = leading_term(&gaussian_problem(), n).unwrap();
        let expect = base * (-(n as f64) * shift).exp();
        assert!((lead - expect).norm() < 1e-14 * expect.norm());
    }

    #[test]
    fn direction_sign_flip() {
        let mut sp = gaussian_problem();
        sp.mu[0] = -sp.mu[0];
        let lead = leading_term(&sp, 4).unwrap();
        let base = leading_term(&gaussian_problem(), 4).unwrap();
        assert!((lead + base).norm() < 1e-14 * base.norm());
    }

    #[test]
    fn rejects_non_critical_point() {
        let mut sp = gaussian_problem();
        sp.j_grad[0] = c(1e-6, 0.0);
        assert!(matches!(
            leading_term(&sp, 3),
            Err(SaddleError::InvalidProblem(_))
        ));
        let mut sp = gaussian_problem();
        sp.mu[0] = c(0.0, 1.0); // mu^2 h = -1 < 0
        assert!(leading_term(&sp, 3).is_err());
    }

    #[test]
    fn gaussian_decay_report_is_exact() {
        let sp = gaussian_problem();
        let report = verify_expansion(
            &sp,
            |n| {
                Some(real_line_quadrature(|u| {
                    (-(n as f64) * u * u / 2.0).exp() * c(1.0, 0.0)
                }))
            },
            &[50, 100, 200, 400],
        )
        .unwrap();
        for row in &report.rows {
            assert!(row.rel_err < 1e-9, "N = {}: {}", row.n, row.rel_err);
        }
    }

    #[test]
    fn cubic_correction_decays_like_one_over_n() {
        // J = u^2/2 + u^3/6 has u* = 0 with d3J = 1; F = D = 1.  The leading
        // term misses O(1/N).
        let mut sp = gaussian_problem();
        sp.j3 = vec![c(1.0, 0.0)];
        // J is only locally confining (it runs to -inf for u -> -inf), so
        // integrate over a neighbourhood of the saddle where J > 0; the
        // truncation error e^{-N J(+-2)} is negligible against the 1/N law.
        let quad = |n: usize| {
            Some(real_line_quadrature(|u| {
                if u.abs() > 2.0 {
                    return c(0.0, 0.0);
                }
                let j = u * u / 2.0 + u * u * u / 6.0;
                (-(n as f64) * j).exp() * c(1.0, 0.0)
            }))
        };
        let report = verify_expansion(&sp, quad, &[50, 100, 200, 400]).unwrap();
        assert!(
            (report.exponent - 1.0).abs() <= 0.2,
            "exponent {} rows {:?}",
            report.exponent,
            report.rows
        );
    }

    #[test]
    fn d2_k2_shaped_saddle() {
        // J(u) = u^2 - 2 ln u on (0, inf): u* = 1, h = d2J = 4, d3J = -4,
        // J(u*) = 1; with F = u (dF = 1) and D = u - 1 (D0 = 0, dD = 1):
        // c1 = dF dD / h + 0 - F dD d3J / (2 h^2) = 1/4 + 4/32 = 3/8.
        let sp = SaddleProblem {
            dim: 1,
            j_value: c(1.0, 0.0),
            j_grad: zeros(1),
            j2: vec![c(4.0, 0.0)],
            j3: vec![c(-4.0, 0.0)],
            mu: vec![c(1.0, 0.0)],
            f_value: c(1.0, 0.0),
            f_grad: vec![c(1.0, 0.0)],
            d_value: c(0.0, 0.0),
            d_grad: vec![c(1.0, 0.0)],
            d2: zeros(1),
        };
        let quad = |n: usize| {
            // int_0^inf e^{-N (u^2 - 2 ln u)} u (u - 1) du on a log grid.
            let h = 2e-4;
            let mut sum = c(0.0, 0.0);
            let mut k = -60_000i64;
            while k <= 60_000 {
                let u = (h * k as f64).exp();
                let j = u * u - 2.0 * u.ln();
                let e = -(n as f64) * j;
                if e > -600.0 {
                    sum += e.exp() * u * (u - 1.0) * u;
                }
                k += 1;
            }
            Some(sum * h)
        };
        let report = verify_expansion(&sp, quad, &[50, 100, 200, 400]).unwrap();
        assert!(
            (report.exponent - 1.0).abs() <= 0.2,
            "exponent {} rows {:?}",
            report.exponent,
            report.rows
        );
        // Error halves within 20% when N doubles.
        for w in report.rows.windows(2) {
            let ratio = w[0].rel_err / w[1].rel_err;
            assert!((ratio - 2.0).abs() <= 0.4, "ratio {ratio}");
        }
    }

    #[test]
    fn d2_synthetic_quartic() {
        // d = 2, J = sum_i (u_i^2/2 + u_i^4/8), F = 1 + u_1/2, D = u_1 + u_2^2
        // (D0 = 0): c1 = (1/2)(1)/1 + 1*2/2 = 3/2, and the quartic J-term
        // contributes at the same 1/N order as the neglected c2, so the
        // relative error halves from N to 2N.
        let sp = SaddleProblem {
            dim: 2,
            j_value: c(0.0, 0.0),
            j_grad: zeros(2),
            j2: vec![c(1.0, 0.0); 2],
            j3: zeros(2),
            mu: vec![c(1.0, 0.0); 2],
            f_value: c(1.0, 0.0),
            f_grad: vec![c(0.5, 0.0), c(0.0, 0.0)],
            d_value: c(0.0, 0.0),
            d_grad: vec![c(1.0, 0.0), c(0.0, 0.0)],
            d2: vec![c(0.0, 0.0), c(2.0, 0.0)],
        };
        assert!((sp.c1() - c(1.5, 0.0)).norm() < 1e-15);
        let quad = |n: usize| {
            let h = 8.0 / 1600.0;
            let nf = n as f64;
            let mut sum = 0.0;
            for i in 0..=1600 {
                let u1 = -4.0 + h * i as f64;
                let e1 = u1 * u1 / 2.0 + u1.powi(4) / 8.0;
                let mut inner = 0.0;
                for j in 0..=1600 {
                    let u2 = -4.0 + h * j as f64;
                    let e2 = u2 * u2 / 2.0 + u2.powi(4) / 8.0;
                    let e = -nf * (e1 + e2);
                    if e > -600.0 {
                        inner += e.exp() * (1.0 + u1 / 2.0) * (u1 + u2 * u2);
                    }
                }
                sum += inner;
            }
            Some(c(sum * h * h, 0.0))
        };
        let report = verify_expansion(&sp, quad, &[50, 100, 200, 400]).unwrap();
        assert!(
            (report.exponent - 1.0).abs() <= 0.2,
            "exponent {} rows {:?}",
            report.exponent,
            report.rows
        );
        for w in report.rows.windows(2) {
            let ratio = w[0].rel_err / w[1].rel_err;
            assert!((ratio - 2.0).abs() <= 0.4, "ratio {ratio}");
        }
    }

    #[test]
    fn d_zero_branch_crosses_over() {
        // As D(u*) -> 0 the general leading term's F D contribution hands
        // over to the c1/N term; with both contributions combined the
        // quadrature is matched to higher order.
        let n = 200usize;
        for d0 in [1e-1, 1e-2, 1e-3] {
            let mut sp = gaussian_problem();
            sp.d_value = c(d0, 0.0);
            sp.d_grad = vec![c(0.0, 0.0)];
            sp.d2 = vec![c(2.0, 0.0)];
            // D(u) = d0 + u^2.
            let quad = real_line_quadrature(|u| {
                (-(n as f64) * u * u / 2.0).exp() * c(d0 + u * u, 0.0)
            });
            let general = leading_term(&sp, n).unwrap();
            let mut sp0 = sp.clone();
            sp0.d_value = c(0.0, 0.0);
            let correction = leading_term(&sp0, n).unwrap();
            let combined = general + correction;
            let err_general = (quad - general).norm() / quad.norm();
            let err_combined = (quad - combined).norm() / quad.norm();
            assert!(
                err_combined < 1e-6,
                "d0 = {d0}: combined error {err_combined}"
            );
            // The general branch alone misses exactly the c1/N piece, which
            // dominates once d0 <~ 1/N.
            assert!(err_general > err_combined, "d0 = {d0}");
        }
    }
}
