//! Sampler oracle for the sigma12 = 0 three-block model: its spectrum is the
//! union of a chiral two-block spectrum and an independent GUE block, so the
//! microscopic density at the origin is the two-component mixture
//! (2/9)|x|(J0(2x/3)^2 + J1(2x/3)^2) + 1/(3 pi) in the coordinate x = 3 N E.
//!
//! The profile is reducible (that is the point), so the histogram is binned
//! manually rather than through the singularity classifier.

use rayon::prelude::*;
use rmblock_core::limits;
use rmblock_core::model::validate_profile;
use rmblock_core::rng::derive_seed;
use rmblock_core::sampler;

#[test]
fn block_model_histogram_matches_mixture() {
    let p = validate_profile(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, 1.0, 0.0],
        vec![1.0, 0.0, 0.0],
    ])
    .unwrap();
    let n = 96;
    let trials = 600;
    let x_max = 12.0;
    let bins = 24;
    let width = 2.0 * x_max / bins as f64;
    let scale = 3.0 * n as f64; // x = 3 N lambda

    let counts: Vec<u64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let h = sampler::sample_block_matrix(&p, n, derive_seed(0xB10C, t));
            let ev = sampler::eigenvalues(&h).unwrap();
            let mut local = vec![0u64; bins];
            for &l in &ev {
                let x = l * scale;
                if x.abs() >= x_max {
                    continue;
                }
                let b = ((x + x_max) / width) as usize;
                local[b.min(bins - 1)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    let mut worst_pull: f64 = 0.0;
    for b in 0..bins {
        let lo = -x_max + b as f64 * width;
        // Bin-averaged mixture.
        let m = 32;
        let mut expect = 0.0;
        for j in 0..m {
            let x = lo + width * (j as f64 + 0.5) / m as f64;
            expect += limits::weak_k3_special(0.0, x);
        }
        expect /= m as f64;
        let density = counts[b] as f64 / (trials as f64 * width);
        let sigma = (expect * trials as f64 * width).sqrt().max(2.0)
            / (trials as f64 * width);
        let pull = (density - expect).abs() / sigma;
        worst_pull = worst_pull.max(pull);
        assert!(
            pull <= 6.0,
            "bin {b} at x ~ {:.2}: density {density:.4} vs mixture {expect:.4} ({pull:.1} sigma)",
            lo + 0.5 * width
        );
    }
    // Aggregate agreement well inside the Monte Carlo budget.
    assert!(worst_pull < 6.0);
}
