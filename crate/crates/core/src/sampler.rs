//! Monte Carlo side of the pipeline: sampling the block Gaussian ensemble,
//! diagonalizing, and accumulating resolvent traces and eigenvalue
//! histograms.
//!
//! Trials are independent work units executed in parallel; every trial draws
//! its generator from a counter-based splitter keyed on (run seed, trial
//! index), and all reductions run in trial order, so results are bit
//! identical for any thread count.

use crate::eigen::{self, EigenError};
use crate::model::{self, ModelError, VarianceProfile};
use crate::rng::{derive_seed, CounterRng};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

type C = Complex64;

#[derive(Debug, Error, PartialEq)]
pub enum SamplerError {
    #[error("histogram edges must be strictly increasing")]
    NonIncreasingEdges,
    #[error("at least 2 trials required, got {0}")]
    TrialsTooFew(usize),
    #[error("{discarded} of {trials} trials discarded (> 1% non-convergence)")]
    TooManyDiscards { discarded: usize, trials: usize },
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Dense Hermitian sample of the block model, dim = K N.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    pub dim: usize,
    /// Row-major entries; equal to the conjugate transpose by construction.
    pub entries: Vec<C>,
}

impl HermitianMatrix {
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// H = sum_{i,j} sqrt(s_ij / 2) (E_ij x X_ij + E_ji x X_ij^*), with an
/// independent complex Ginibre block X_ij (entry variance 1/N) for every
/// ordered pair, followed by explicit Hermitian symmetrization.
pub fn sample_block_matrix(p: &VarianceProfile, n: usize, seed: u64) -> HermitianMatrix {
    assert!(n >= 1);
    let k = p.k();
    let dim = k * n;
    let mut m = vec![C::new(0.0, 0.0); dim * dim];
    let mut rng = CounterRng::new(seed);
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    for i in 0..k {
        for j in 0..k {
            let s = p.entry(i, j);
            if s == 0.0 {
                continue;
            }
            let coef = (s / 2.0).sqrt();
            for r in 0..n {
                for c in 0..n {
                    let (g1, g2) = rng.next_gaussian_pair();
                    let x = C::new(g1 * scale, g2 * scale);
                    let row = i * n + r;
                    let col = j * n + c;
                    m[row * dim + col] += coef * x;
                    m[col * dim + row] += coef * x.conj();
                }
            }
        }
    }
    // Symmetrize; exact in most entries, kills the last-bit rounding drift.
    for a in 0..dim {
        for b in (a + 1)..dim {
            let avg = 0.5 * (m[a * dim + b] + m[b * dim + a].conj());
            m[a * dim + b] = avg;
            m[b * dim + a] = avg.conj();
        }
        m[a * dim + a] = C::new(m[a * dim + a].re, 0.0);
    }
    HermitianMatrix { dim, entries: m }
}

/// All eigenvalues, ascending with multiplicity.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>, EigenError> {
    eigen::hermitian_eigenvalues(&h.entries, h.dim)
}

/// Per-trial eigenvalues with the discard-and-resample policy: on solver
/// non-convergence the trial redraws from a derived fresh seed, counting the
/// discard.
fn trial_eigenvalues(
    p: &VarianceProfile,
    n: usize,
    seed: u64,
    trial: u64,
) -> (Vec<f64>, usize) {
    let mut discards = 0;
    let mut trial_seed = derive_seed(seed, trial);
    loop {
        let h = sample_block_matrix(p, n, trial_seed);
        match eigenvalues(&h) {
            Ok(ev) => return (ev, discards),
            Err(_) => {
                discards += 1;
                trial_seed = derive_seed(trial_seed, 0x5eed + discards as u64);
                if discards > 8 {
                    // Give up on the trial; the caller's 1% gate handles it.
                    return (Vec::new(), discards);
                }
            }
        }
    }
}

/// Monte Carlo estimate of a complex quantity with componentwise standard
/// error (the larger of the real and imaginary components is reported).
#[derive(Debug, Clone, Copy)]
pub struct MCEstimate {
    pub mean: C,
    pub stderr: f64,
    pub trials: usize,
}

/// Mean of (1/(KN)) Tr (H - z)^{-1} over independent samples.
pub fn mc_resolvent_trace(
    p: &VarianceProfile,
    n: usize,
    z: C,
    trials: usize,
    seed: u64,
) -> Result<MCEstimate, SamplerError> {
    assert!(z.im > 0.0, "mc_resolvent_trace requires Im z > 0");
    if trials < 2 {
        return Err(SamplerError::TrialsTooFew(trials));
    }
    let dim = (p.k() * n) as f64;
    let per_trial: Vec<(C, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (ev, discards) = trial_eigenvalues(p, n, seed, t);
            let mut acc = C::new(0.0, 0.0);
            for &lambda in &ev {
                acc += (C::new(lambda, 0.0) - z).finv();
            }
            (acc / dim, discards)
        })
        .collect();
    let discarded: usize = per_trial.iter().map(|(_, d)| *d).sum();
    if discarded * 100 > trials {
        return Err(SamplerError::TooManyDiscards { discarded, trials });
    }
    // Fixed-order (trial index) accumulation.
    let mut mean = C::new(0.0, 0.0);
    for (v, _) in &per_trial {
        mean += v;
    }
    mean /= trials as f64;
    let mut var_re = 0.0;
    let mut var_im = 0.0;
    for (v, _) in &per_trial {
        var_re += (v.re - mean.re) * (v.re - mean.re);
        var_im += (v.im - mean.im) * (v.im - mean.im);
    }
    let denom = (trials - 1) as f64;
    let stderr = (var_re / denom).max(var_im / denom).sqrt() / (trials as f64).sqrt();
    Ok(MCEstimate { mean, stderr, trials })
}

/// Normalization convention of a histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// density_b = counts_b / (trials K N width_b); integrates to <= 1.
    MacroscopicDensity,
    /// Bins are in xi = lambda / eta_N units;
    /// density_b = counts_b / (trials width_b), estimating
    /// K N eta_N rho_N(eta_N xi).
    MicroscopicDensity { eta: f64 },
}

/// Binned empirical eigenvalue density.
#[derive(Debug, Clone)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub trials: usize,
    pub normalization: Normalization,
    /// Eigenvalues falling outside the edge range (dropped from counts).
    pub outside_range: u64,
    /// Eigenvalues beyond the crude support bound 2 sqrt(max row sum) + 1
    /// (a soft sanity indicator, not an error).
    pub outside_support_bound: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn has_empty_bins(&self) -> bool {
        self.counts.iter().any(|&c| c == 0)
    }
}

fn validate_edges(edges: &[f64]) -> Result<(), SamplerError> {
    if edges.len() < 2 || edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SamplerError::NonIncreasingEdges);
    }
    Ok(())
}

fn accumulate_histogram(
    p: &VarianceProfile,
    n: usize,
    trials: usize,
    edges: &[f64],
    seed: u64,
    scale: f64,
) -> Result<(Vec<u64>, u64, u64), SamplerError> {
    let bound = 2.0 * p.max_row_sum().sqrt() + 1.0;
    let bins = edges.len() - 1;
    let per_trial: Vec<(Vec<u32>, u64, u64, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (ev, discards) = trial_eigenvalues(p, n, seed, t);
            let mut counts = vec![0u32; bins];
            let mut outside = 0u64;
            let mut beyond = 0u64;
            for &lambda in &ev {
                if lambda.abs() > bound {
                    beyond += 1;
                }
                let x = lambda / scale;
                if x < edges[0] || x >= edges[bins] {
                    outside += 1;
                    continue;
                }
                // Binary search for the bin.
                let mut lo = 0usize;
                let mut hi = bins;
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if x >= edges[mid] {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                counts[lo] += 1;
            }
            (counts, outside, beyond, discards)
        })
        .collect();
    let discarded: usize = per_trial.iter().map(|v| v.3).sum();
    if discarded * 100 > trials {
        return Err(SamplerError::TooManyDiscards { discarded, trials });
    }
    let mut counts = vec![0u64; bins];
    let mut outside = 0u64;
    let mut beyond = 0u64;
    for (c, o, b, _) in &per_trial {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += *v as u64;
        }
        outside += o;
        beyond += b;
    }
    Ok((counts, outside, beyond))
}

/// Accumulate all eigenvalues of all trials into bins in E units.
pub fn macroscopic_histogram(
    p: &VarianceProfile,
    n: usize,
    trials: usize,
    edges: &[f64],
    seed: u64,
) -> Result<Histogram, SamplerError> {
    validate_edges(edges)?;
    let (counts, outside, beyond) = accumulate_histogram(p, n, trials, edges, seed, 1.0)?;
    Ok(Histogram {
        edges: edges.to_vec(),
        counts,
        trials,
        normalization: Normalization::MacroscopicDensity,
        outside_range: outside,
        outside_support_bound: beyond,
    })
}

/// Bin lambda / eta_N for eigenvalues within the xi-edge range; the bin
/// heights estimate xi -> K N eta_N rho_N(eta_N xi).
pub fn microscopic_histogram(
    p: &VarianceProfile,
    n: usize,
    trials: usize,
    xi_edges: &[f64],
    seed: u64,
) -> Result<Histogram, SamplerError> {
    validate_edges(xi_edges)?;
    let class = model::classify_singularity(p)?;
    let eta = model::spacing_scale(&class, p, n);
    let (counts, outside, beyond) =
        accumulate_histogram(p, n, trials, xi_edges, seed, eta)?;
    Ok(Histogram {
        edges: xi_edges.to_vec(),
        counts,
        trials,
        normalization: Normalization::MicroscopicDensity { eta },
        outside_range: outside,
        outside_support_bound: beyond,
    })
}

/// Bin densities under the histogram's normalization convention.
pub fn histogram_density(h: &Histogram, p: &VarianceProfile, n: usize) -> Vec<f64> {
    let trials = h.trials as f64;
    let dim = (p.k() * n) as f64;
    h.counts
        .iter()
        .zip(h.edges.windows(2))
        .map(|(&c, w)| {
            let width = w[1] - w[0];
            match h.normalization {
                Normalization::MacroscopicDensity => c as f64 / (trials * dim * width),
                Normalization::MicroscopicDensity { .. } => c as f64 / (trials * width),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_profile;

    fn profile(rows: &[&[f64]]) -> VarianceProfile {
        let raw: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        validate_profile(&raw).unwrap()
    }

    #[test]
    fn scalar_variance_is_one() {
        // K=1, S=[[1]], N=1: H is a real Gaussian with variance 1.
        let p = profile(&[&[1.0]]);
        let m = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for seed in 0..m {
            let h = sample_block_matrix(&p, 1, derive_seed(42, seed));
            let v = h.entries[0].re;
            assert_eq!(h.entries[0].im, 0.0);
            sum += v;
            sumsq += v * v;
        }
        let mf = m as f64;
        let var = sumsq / mf - (sum / mf) * (sum / mf);
        // Var estimator of a chi^2-ish quantity: sd ~ sqrt(2/m).
        assert!((var - 1.0).abs() < 3.0 * (2.0 / mf).sqrt(), "var = {var}");
    }

    #[test]
    fn second_moment_identity() {
        // (1/(KN)) E Tr H^2 = (1/K) sum_ij s_ij.
        let p = profile(&[&[0.5, 1.5], &[1.5, 2.0]]);
        let n = 6;
        let trials = 10_000u64;
        let dim = (p.k() * n) as f64;
        let mut vals = Vec::with_capacity(trials as usize);
        for t in 0..trials {
            let h = sample_block_matrix(&p, n, derive_seed(7, t));
            vals.push(h.frobenius_sq() / dim);
        }
        let mean: f64 = vals.iter().sum::<f64>() / trials as f64;
        let var: f64 =
            vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (trials - 1) as f64;
        let stderr = (var / trials as f64).sqrt();
        let expect = p.total() / p.k() as f64;
        assert!(
            (mean - expect).abs() <= 3.0 * stderr,
            "mean {mean}, expect {expect}, stderr {stderr}"
        );
    }

    #[test]
    fn zero_diagonal_blocks_are_exact() {
        let p = profile(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let n = 4;
        let h = sample_block_matrix(&p, n, 99);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(h.entries[i * h.dim + j], C::new(0.0, 0.0));
                let r = n + i;
                let c = n + j;
                assert_eq!(h.entries[r * h.dim + c], C::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn hermitian_by_construction() {
        let p = profile(&[&[1.0, 0.3], &[0.3, 0.7]]);
        let h = sample_block_matrix(&p, 5, 123);
        for a in 0..h.dim {
            for b in 0..h.dim {
                let diff = (h.entries[a * h.dim + b] - h.entries[b * h.dim + a].conj()).norm();
                assert!(diff <= 1e-14);
            }
        }
    }

    #[test]
    fn eigenvalue_sums_conserve_traces() {
        let p = profile(&[&[1.0, 1.0], &[1.0, 0.0]]);
        let h = sample_block_matrix(&p, 12, 5);
        let ev = eigenvalues(&h).unwrap();
        let norm = h.frobenius_sq().sqrt();
        let s1: f64 = ev.iter().sum();
        let s2: f64 = ev.iter().map(|l| l * l).sum();
        assert!((s1 - h.trace()).abs() <= 1e-8 * h.dim as f64 * norm.max(1.0));
        assert!((s2 - h.frobenius_sq()).abs() <= 1e-8 * h.dim as f64 * norm.max(1.0));
    }

    #[test]
    fn seed_determinism_across_thread_counts() {
        let p = profile(&[&[1.0, 1.0], &[1.0, 0.0]]);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| mc_resolvent_trace(&p, 3, C::new(0.0, 0.5), 500, 11).unwrap())
        };
        let a = run(1);
        let b = run(3);
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.stderr, b.stderr);
        // And histograms, bit for bit.
        let edges: Vec<f64> = (0..=40).map(|i| -3.0 + 0.15 * i as f64).collect();
        let ha = {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            pool.install(|| macroscopic_histogram(&p, 4, 100, &edges, 17).unwrap())
        };
        let hb = {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
            pool.install(|| macroscopic_histogram(&p, 4, 100, &edges, 17).unwrap())
        };
        assert_eq!(ha.counts, hb.counts);
    }

    #[test]
    fn resolvent_matches_gaussian_oracle() {
        // K=1, N=1, z = 0.5i against the Gauss-Hermite integral.
        let p = profile(&[&[1.0]]);
        let z = C::new(0.0, 0.5);
        let est = mc_resolvent_trace(&p, 1, z, 40_000, 3).unwrap();
        let (xs, ws) = crate::quad::gauss_hermite(600);
        let mut oracle = C::new(0.0, 0.0);
        for (&x, &w) in xs.iter().zip(&ws) {
            let h = std::f64::consts::SQRT_2 * x;
            oracle += w / (h - z);
        }
        oracle /= std::f64::consts::PI.sqrt();
        assert!(
            (est.mean - oracle).norm() <= 3.0 * est.stderr,
            "{} vs {oracle} (stderr {})",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn resolvent_purely_imaginary_on_axis() {
        let p = profile(&[&[1.0, 1.0], &[1.0, 0.0]]);
        let est = mc_resolvent_trace(&p, 4, C::new(0.0, 0.4), 4000, 21).unwrap();
        assert!(est.mean.re.abs() <= 3.0 * est.stderr, "{}", est.mean);
    }

    #[test]
    fn per_trial_reflection_on_chiral_profile() {
        // For a chiral profile the spectrum is exactly symmetric per sample,
        // so v(-conj z) = -conj v(z) trial by trial.
        let p = profile(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = C::new(0.3, 0.4);
        let mz = C::new(-0.3, 0.4);
        let h = sample_block_matrix(&p, 6, derive_seed(5, 0));
        let ev = eigenvalues(&h).unwrap();
        let dim = h.dim as f64;
        let v = ev.iter().map(|&l| (C::new(l, 0.0) - z).finv()).sum::<C>() / dim;
        let vm = ev.iter().map(|&l| (C::new(l, 0.0) - mz).finv()).sum::<C>() / dim;
        assert!((vm + v.conj()).norm() <= 1e-10);
    }

    #[test]
    fn resolvent_matches_quadrature_route() {
        let p = profile(&[&[1.0, 1.0], &[1.0, 0.0]]);
        let n = 4;
        let z = C::new(0.0, 0.3);
        let est = mc_resolvent_trace(&p, n, z, 20_000, 8).unwrap();
        let q = crate::susy::default_quadrature(&p, n, z).unwrap();
        let exact =
            crate::susy::finite_n_resolvent(&p, n, z, &q).unwrap() / (p.k() * n) as f64;
        assert!(
            (est.mean - exact).norm() <= 3.0 * est.stderr,
            "mc {} vs susy {exact}, stderr {}",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn macroscopic_semicircle() {
        let p = profile(&[&[1.0]]);
        let n = 200;
        let trials = 100;
        let edges: Vec<f64> = (0..=40).map(|i| -3.0 + 0.15 * i as f64).collect();
        let h = macroscopic_histogram(&p, n, trials, &edges, 4).unwrap();
        assert_eq!(h.outside_support_bound, 0);
        let dens = histogram_density(&h, &p, n);
        let semicircle = |e: f64| {
            if e.abs() < 2.0 {
                (4.0 - e * e).sqrt() / (2.0 * std::f64::consts::PI)
            } else {
                0.0
            }
        };
        for (b, d) in dens.iter().enumerate() {
            // Bin-averaged reference (edge bins straddle the support edge).
            let mut semi = 0.0;
            let m = 64;
            for j in 0..m {
                let e = edges[b] + (edges[b + 1] - edges[b]) * (j as f64 + 0.5) / m as f64;
                semi += semicircle(e);
            }
            semi /= m as f64;
            // Expected counts in this bin, for a Poisson-scale error bar.
            let expect_counts = semi * (trials * n) as f64 * 0.15;
            let sigma = expect_counts.sqrt().max(2.0) / ((trials * n) as f64 * 0.15);
            assert!(
                (d - semi).abs() <= 6.0 * sigma + 0.01,
                "bin {b}: {d} vs {semi}"
            );
        }
        // Total mass below one (tails clipped at |E| = 3 only).
        let mass: f64 = dens.iter().map(|d| d * 0.15).sum();
        assert!(mass <= 1.0 + 1e-12 && mass > 0.98, "{mass}");
    }

    #[test]
    fn microscopic_flat_for_gue() {
        let p = profile(&[&[1.0]]);
        let n = 64;
        let trials = 400;
        let edges: Vec<f64> = (0..=32).map(|i| -8.0 + 0.5 * i as f64).collect();
        let h = microscopic_histogram(&p, n, trials, &edges, 31).unwrap();
        let dens = histogram_density(&h, &p, n);
        let mean: f64 = dens.iter().sum::<f64>() / dens.len() as f64;
        assert!((mean - 1.0).abs() < 0.03, "mean height {mean}");
        // Symmetric within Monte Carlo noise, in aggregate.
        let bins = dens.len();
        let mut asym = 0.0;
        for b in 0..bins / 2 {
            asym += (dens[b] - dens[bins - 1 - b]).abs();
        }
        asym /= (bins / 2) as f64;
        assert!(asym < 0.15, "asymmetry {asym}");
    }

    #[test]
    fn rejects_bad_edges() {
        let p = profile(&[&[1.0]]);
        assert!(matches!(
            macroscopic_histogram(&p, 2, 3, &[0.0, 0.0, 1.0], 1),
            Err(SamplerError::NonIncreasingEdges)
        ));
        assert!(matches!(
            mc_resolvent_trace(&p, 1, C::new(0.0, 1.0), 1, 1),
            Err(SamplerError::TrialsTooFew(1))
        ));
    }
}
