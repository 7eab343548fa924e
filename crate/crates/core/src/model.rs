//! Variance profiles of the block matrix model and the classification of the
//! origin singularity of the limiting spectral density for K <= 3.

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("variance profile must be square, row {row} has length {len}, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },
    #[error("variance profile entry ({i},{j}) = {value} is negative")]
    NegativeEntry { i: usize, j: usize, value: f64 },
    #[error("variance profile asymmetry at ({i},{j}) exceeds 1e-12 relative")]
    AsymmetricBeyondTolerance { i: usize, j: usize },
    #[error("singularity classification is only implemented for K <= 3, got K = {0}")]
    UnsupportedK(usize),
    #[error("variance profile has no support (atom at the origin); classification refused")]
    NoSupport,
    #[error("variance profile is reducible")]
    Reducible,
    #[error("profile file: {0}")]
    BadProfileFile(String),
    #[error("numeric evaluation of theta failed: {0}")]
    ThetaEvaluation(String),
}

/// Symmetric nonnegative K x K matrix of per-block variances.
///
/// Entry s_ij is N * E|h_ab|^2 for row indices in block i and column indices
/// in block j.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceProfile {
    k: usize,
    s: Vec<f64>,
}

impl VarianceProfile {
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.s[i * self.k + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.s
    }

    /// Row sums max_i sum_j s_ij, an upper bound proxy for the spectral radius.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.entry(i, j)).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Sum of all entries, appears in the second-moment identity
    /// (1/(KN)) E Tr H^2 = (1/K) sum_ij s_ij.
    pub fn total(&self) -> f64 {
        self.s.iter().sum()
    }

    /// Apply a simultaneous row/column permutation: result_{ij} = s_{p(i)p(j)}.
    pub fn permuted(&self, perm: &[usize]) -> VarianceProfile {
        assert_eq!(perm.len(), self.k);
        let mut s = vec![0.0; self.k * self.k];
        for i in 0..self.k {
            for j in 0..self.k {
                s[i * self.k + j] = self.entry(perm[i], perm[j]);
            }
        }
        VarianceProfile { k: self.k, s }
    }
}

/// Origin singularity data: degree ell, exponent sigma = (ell-1)/(ell+1) of
/// the power law rho(E) ~ theta |E|^{-sigma}, and the prefactor theta.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityClass {
    pub ell: u32,
    pub sigma: f64,
    pub theta: f64,
    pub has_support: bool,
    pub reducible: bool,
}

/// Validate a raw square matrix as a variance profile.
///
/// Rejects non-square input and negative entries.  Tiny asymmetries (at most
/// 1e-12 relative) are removed by canonical symmetrization; anything larger
/// is an error since profiles are exact inputs, not measurements.
pub fn validate_profile(raw: &[Vec<f64>]) -> Result<VarianceProfile, ModelError> {
    let k = raw.len();
    if k == 0 {
        return Err(ModelError::NonSquare { row: 0, len: 0, expected: 1 });
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != k {
            return Err(ModelError::NonSquare { row: i, len: row.len(), expected: k });
        }
    }
    for i in 0..k {
        for j in 0..k {
            let v = raw[i][j];
            if !v.is_finite() || v < 0.0 {
                return Err(ModelError::NegativeEntry { i, j, value: v });
            }
        }
    }
    let mut s = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            let a = raw[i][j];
            let b = raw[j][i];
            let scale = a.abs().max(b.abs());
            if (a - b).abs() > 1e-12 * scale {
                return Err(ModelError::AsymmetricBeyondTolerance { i, j });
            }
            s[i * k + j] = 0.5 * (a + b);
        }
    }
    Ok(VarianceProfile { k, s })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "S")]
    s: Vec<Vec<f64>>,
}

/// Parse the JSON profile document `{"K": 2, "S": [[1.0,1.0],[1.0,0.0]]}`.
pub fn parse_profile_json(text: &str) -> Result<VarianceProfile, ModelError> {
    let file: ProfileFile =
        serde_json::from_str(text).map_err(|e| ModelError::BadProfileFile(e.to_string()))?;
    if file.s.len() != file.k {
        return Err(ModelError::BadProfileFile(format!(
            "S has {} rows, K = {}",
            file.s.len(),
            file.k
        )));
    }
    validate_profile(&file.s)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    fn heap(items: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..n {
            heap(items, n - 1, out);
            if n % 2 == 0 {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    heap(&mut items, k, &mut out);
    out
}

/// The profile has support iff there is a permutation P with S >= eps P,
/// i.e. a perfect matching through strictly positive entries.  Entries are
/// compared against exact zero: profiles are inputs, not measurements.
fn has_support(p: &VarianceProfile) -> bool {
    permutations(p.k())
        .iter()
        .any(|perm| (0..p.k()).all(|i| p.entry(i, perm[i]) > 0.0))
}

/// Connectivity of the 0/1 mask viewed as an undirected graph.
fn is_irreducible(p: &VarianceProfile) -> bool {
    let k = p.k();
    if k == 1 {
        return true;
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !seen[j] && p.entry(i, j) > 0.0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Classify the origin singularity of the limiting density for K <= 3.
///
/// Closed forms cover K = 1, the K = 2 profile with one vanishing diagonal
/// entry and the K = 3 chain profile; every other supported irreducible
/// profile has a bounded density (ell = 1) whose level at the origin is
/// obtained numerically from the Dyson solver.
pub fn classify_singularity(p: &VarianceProfile) -> Result<SingularityClass, ModelError> {
    let k = p.k();
    if k > 3 {
        return Err(ModelError::UnsupportedK(k));
    }
    if !has_support(p) {
        return Err(ModelError::NoSupport);
    }
    if !is_irreducible(p) {
        return Err(ModelError::Reducible);
    }

    let make = |ell: u32, theta: f64| SingularityClass {
        ell,
        sigma: (ell as f64 - 1.0) / (ell as f64 + 1.0),
        theta,
        has_support: true,
        reducible: false,
    };

    match k {
        1 => Ok(make(1, 1.0 / std::f64::consts::PI)),
        2 => {
            for perm in permutations(2) {
                let q = p.permuted(&perm);
                let (s11, s12, s22) = (q.entry(0, 0), q.entry(0, 1), q.entry(1, 1));
                if s22 == 0.0 && s11 > 0.0 && s12 > 0.0 {
                    let theta = 3.0_f64.sqrt() / (4.0 * std::f64::consts::PI)
                        * s11.cbrt()
                        * s12.powf(-2.0 / 3.0);
                    return Ok(make(2, theta));
                }
            }
            Ok(make(1, theta_from_dyson(p)?))
        }
        3 => {
            for perm in permutations(3) {
                let q = p.permuted(&perm);
                let (s12, s13, s22) = (q.entry(0, 1), q.entry(0, 2), q.entry(1, 1));
                let (s23, s33) = (q.entry(1, 2), q.entry(2, 2));
                if s23 == 0.0 && s33 == 0.0 && s22 > 0.0 && s12 > 0.0 && s13 > 0.0 {
                    let theta = s12.sqrt()
                        / (3.0
                            * std::f64::consts::PI
                            * s22.powf(0.25)
                            * (2.0 * s13).sqrt());
                    return Ok(make(3, theta));
                }
            }
            Ok(make(1, theta_from_dyson(p)?))
        }
        _ => unreachable!(),
    }
}

/// Bounded-density prefactor: theta = rho_inf(0) from a small singularity fit.
fn theta_from_dyson(p: &VarianceProfile) -> Result<f64, ModelError> {
    let grid: Vec<f64> = (0..13).map(|i| 1e-5 * 10f64.powf(i as f64 / 6.0)).collect();
    let (_, theta) = crate::dyson::singularity_fit(p, &grid, 1e-6)
        .map_err(|e| ModelError::ThetaEvaluation(e.to_string()))?;
    Ok(theta)
}

/// Local spacing scale eta_N = 2 (theta K N (ell+1))^{-(ell+1)/2}.
pub fn spacing_scale(c: &SingularityClass, p: &VarianceProfile, n: usize) -> f64 {
    let ell = c.ell as f64;
    let base = c.theta * p.k() as f64 * n as f64 * (ell + 1.0);
    2.0 * base.powf(-(ell + 1.0) / 2.0)
}
