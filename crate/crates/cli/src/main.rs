//! Command-line driver: reproduces the model's figures and cross-route
//! checks, reading JSON variance profiles and emitting CSV artifacts.
//!
//! Exit codes: 1 = configuration error, 2 = numeric failure, 3 = I/O error.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rmblock_core::io::{fmt_g17, write_curve_csv, write_eigenvalues, write_histogram_csv, Meta};
use rmblock_core::limits::{self, LimitKind};
use rmblock_core::model::{self, VarianceProfile};
use rmblock_core::saddle::{self, SaddleProblem};
use rmblock_core::sampler;
use rmblock_core::specfun::{self, GParams, Rational};
use rmblock_core::{dyson, susy};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

type C = Complex64;

mod grid;
mod setup;

use grid::{parse_complex, parse_complex_list, parse_grid, parse_rational};

#[derive(Debug)]
enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn numeric<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}

#[derive(Parser)]
#[command(name = "rmblock", version, about = "Block random matrix spectral statistics")]
struct Cli {
    /// Worker thread cap (falls back to RMBLOCK_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the ensemble and write histogram + overlay curve CSVs.
    Sample(SampleArgs),
    /// Solve the vector Dyson equation on an E-grid and write the density.
    Dyson(DysonArgs),
    /// Evaluate the finite-N resolvent integral at one spectral point.
    Susy(SusyArgs),
    /// Evaluate a scaling-limit density on a xi-grid.
    Limit(LimitArgs),
    /// Cross-validate Monte Carlo, finite-N quadrature and scaling limits.
    Compare(CompareArgs),
    /// Error-decay report for the saddle-point expansion test cases.
    SaddleCheck(SaddleCheckArgs),
    /// Special-function evaluation helpers.
    Specfun(SpecfunArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Variance profile JSON ({"K": 2, "S": [[...],[...]]}).
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// macro (E units) or micro (xi = lambda / eta_N units).
    #[arg(long, default_value = "macro")]
    mode: String,
    /// Bin edges, e.g. lin:-3:3:61 (61 edges = 60 bins).
    #[arg(long)]
    grid: Option<String>,
    /// Micro-mode shorthand: symmetric edges over |xi| <= xi-max.
    #[arg(long)]
    xi_max: Option<f64>,
    #[arg(long, default_value_t = 48)]
    bins: usize,
    /// Output prefix; writes <prefix>_hist.csv and <prefix>_overlay.csv.
    #[arg(long)]
    out: PathBuf,
    /// Optional eigenvalue dump (one float per line, all trials in order).
    #[arg(long)]
    dump_eigenvalues: Option<PathBuf>,
}

#[derive(Args)]
struct DysonArgs {
    #[arg(long)]
    profile: PathBuf,
    /// E grid, e.g. log:1e-6:1e-2:41.
    #[arg(long, alias = "E-grid")]
    e_grid: String,
    /// Im-regularization relative to E (eps = eps-rel * E).
    #[arg(long, default_value_t = 1e-2)]
    eps_rel: f64,
    /// Append a power-law fit footer (sigma_hat, theta_hat).
    #[arg(long)]
    fit: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SusyArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    n: usize,
    /// Spectral point "re,im" with im > 0.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Override radial node count.
    #[arg(long)]
    radial: Option<usize>,
    /// Override angular node count.
    #[arg(long)]
    angular: Option<usize>,
    /// Self-refinement tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LimitArgs {
    /// k1 | k2 | k3 | chiral-gue | weak-k2:<sigma> | weak-k3:<sigma>.
    #[arg(long)]
    kind: String,
    /// xi grid, e.g. log:1e-3:1e3:61 or lin:-8:8:161.
    #[arg(long)]
    xi_grid: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    profile: PathBuf,
    /// Comma-separated block dimensions, e.g. 4,8,16.
    #[arg(long)]
    n_list: String,
    /// Semicolon-separated zeta values "re,im;re,im".
    #[arg(long, allow_hyphen_values = true)]
    zeta: String,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SaddleCheckArgs {
    /// gaussian | cubic | k2shaped.
    #[arg(long)]
    case: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SpecfunArgs {
    #[command(subcommand)]
    action: SpecfunAction,
}

#[derive(Subcommand)]
enum SpecfunAction {
    /// Print one special-function value at 17 significant digits.
    Eval(SpecfunEvalArgs),
}

#[derive(Args)]
struct SpecfunEvalArgs {
    /// besseli0|besseli1|besselk0|besselk1|besselj0|besselj1|hyper0f2|meijerg
    #[arg(long)]
    function: String,
    /// Argument "re[,im]".
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Rational parameters like 1/2 (hyper0f2 needs b1,b2; meijerg b1,b2,b3).
    #[arg(long)]
    b1: Option<String>,
    #[arg(long)]
    b2: Option<String>,
    #[arg(long)]
    b3: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own help/version exits are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    setup::init_threads(cli.threads);
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Dyson(a) => cmd_dyson(a),
        Command::Susy(a) => cmd_susy(a),
        Command::Limit(a) => cmd_limit(a),
        Command::Compare(a) => cmd_compare(a),
        Command::SaddleCheck(a) => cmd_saddle_check(a),
        Command::Specfun(a) => match a.action {
            SpecfunAction::Eval(e) => cmd_specfun_eval(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rmblock: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_profile(path: &Path) -> Result<VarianceProfile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    model::parse_profile_json(&text).map_err(config)
}

/// Assemble the whole file in memory and write it in one shot, so failed
/// runs never leave partial output behind.
fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::Io(format!("{}: {e}", path.display()))
    })
}

fn profile_meta(meta: &mut Meta, p: &VarianceProfile, path: &Path) {
    meta.push("profile_path", path.display().to_string());
    meta.push("K", p.k().to_string());
    let rows: Vec<String> = (0..p.k())
        .map(|i| {
            let row: Vec<String> = (0..p.k()).map(|j| fmt_g17(p.entry(i, j))).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    meta.push("S", format!("[{}]", rows.join(",")));
}

/// Map a classified profile onto the matching scaling-limit kind; bounded
/// generic profiles have a flat microscopic one-point function instead.
fn limit_kind_for(p: &VarianceProfile) -> Result<Option<LimitKind>, CliError> {
    let class = model::classify_singularity(p).map_err(config)?;
    let k = p.k();
    Ok(match (k, class.ell) {
        (1, _) => Some(LimitKind::K1),
        (2, 2) => Some(LimitKind::K2),
        (3, 3) => Some(LimitKind::K3),
        (2, 1) if p.entry(0, 0) == 0.0 && p.entry(1, 1) == 0.0 => Some(LimitKind::ChiralGUE),
        _ => None,
    })
}

fn cmd_sample(a: SampleArgs) -> Result<(), CliError> {
    if a.trials == 0 {
        return Err(CliError::Config("trials must be positive".into()));
    }
    if a.n == 0 {
        return Err(CliError::Config("n must be positive".into()));
    }
    let p = load_profile(&a.profile)?;
    let micro = match a.mode.as_str() {
        "macro" => false,
        "micro" => true,
        other => return Err(CliError::Config(format!("unknown mode '{other}'"))),
    };
    let edges: Vec<f64> = if let Some(g) = &a.grid {
        parse_grid(g).map_err(config)?
    } else if micro {
        let xm = a.xi_max.unwrap_or(6.0);
        if !(xm > 0.0) || a.bins == 0 {
            return Err(CliError::Config("xi-max and bins must be positive".into()));
        }
        (0..=a.bins)
            .map(|i| -xm + 2.0 * xm * i as f64 / a.bins as f64)
            .collect()
    } else {
        let lam = 2.0 * p.max_row_sum().sqrt() + 0.5;
        (0..=a.bins)
            .map(|i| -lam + 2.0 * lam * i as f64 / a.bins as f64)
            .collect()
    };

    let hist = if micro {
        sampler::microscopic_histogram(&p, a.n, a.trials, &edges, a.seed).map_err(numeric)?
    } else {
        sampler::macroscopic_histogram(&p, a.n, a.trials, &edges, a.seed).map_err(numeric)?
    };
    if hist.has_empty_bins() {
        eprintln!("rmblock: warning: histogram has empty bins");
    }
    if hist.outside_support_bound > 0 {
        eprintln!(
            "rmblock: warning: {} eigenvalues beyond the support bound",
            hist.outside_support_bound
        );
    }

    let mut meta = Meta::new("sample");
    profile_meta(&mut meta, &p, &a.profile);
    meta.push("N", a.n.to_string());
    meta.push("trials", a.trials.to_string());
    meta.push("seed", a.seed.to_string());
    meta.push("mode", a.mode.clone());
    let mut buf = Vec::new();
    write_histogram_csv(&mut buf, &meta, &hist, &p, a.n).map_err(|e| CliError::Io(e.to_string()))?;
    let hist_path = a.out.with_file_name(format!(
        "{}_hist.csv",
        a.out.file_name().and_then(|s| s.to_str()).unwrap_or("out")
    ));
    write_file(&hist_path, &buf)?;

    // Overlay: the matching limit curve on bin centers.
    let centers: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let mut rows = Vec::new();
    if micro {
        let kind = limit_kind_for(&p)?;
        for &xi in &centers {
            let v = match kind {
                Some(k) => match limits::limit_density(k, xi) {
                    Ok(v) => v,
                    Err(limits::LimitError::SingularAtZero) => f64::NAN,
                    Err(e) => return Err(numeric(e)),
                },
                None => 1.0,
            };
            rows.push(vec![xi, v]);
        }
        let mut meta = Meta::new("sample");
        profile_meta(&mut meta, &p, &a.profile);
        meta.push("curve", "microscopic one-point limit on bin centers".into());
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &meta, "xi,density", &rows)
            .map_err(|e| CliError::Io(e.to_string()))?;
        let path = a.out.with_file_name(format!(
            "{}_overlay.csv",
            a.out.file_name().and_then(|s| s.to_str()).unwrap_or("out")
        ));
        write_file(&path, &buf)?;
    } else {
        let eps = 1e-4;
        for &e in &centers {
            let rho = dyson::density_extrapolated(&p, e, eps).map_err(numeric)?;
            rows.push(vec![e, eps, rho]);
        }
        let mut meta = Meta::new("sample");
        profile_meta(&mut meta, &p, &a.profile);
        meta.push("curve", "asymptotic density on bin centers".into());
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &meta, "E,eps,rho", &rows)
            .map_err(|e| CliError::Io(e.to_string()))?;
        let path = a.out.with_file_name(format!(
            "{}_overlay.csv",
            a.out.file_name().and_then(|s| s.to_str()).unwrap_or("out")
        ));
        write_file(&path, &buf)?;
    }

    if let Some(dump) = &a.dump_eigenvalues {
        let mut all = Vec::new();
        for t in 0..a.trials as u64 {
            let h = sampler::sample_block_matrix(
                &p,
                a.n,
                rmblock_core::rng::derive_seed(a.seed, t),
            );
            let ev = sampler::eigenvalues(&h).map_err(numeric)?;
            all.extend(ev);
        }
        let mut buf = Vec::new();
        write_eigenvalues(&mut buf, &all).map_err(|e| CliError::Io(e.to_string()))?;
        write_file(dump, &buf)?;
    }
    Ok(())
}

fn cmd_dyson(a: DysonArgs) -> Result<(), CliError> {
    let p = load_profile(&a.profile)?;
    if !(a.eps_rel > 0.0) {
        return Err(CliError::Config("eps-rel must be positive".into()));
    }
    let grid = parse_grid(&a.e_grid).map_err(config)?;
    let mut rows = Vec::new();
    for &e in &grid {
        let eps = a.eps_rel * e.abs().max(1e-12);
        let rho = dyson::density_extrapolated(&p, e, eps).map_err(numeric)?;
        rows.push(vec![e, eps, rho]);
    }
    let mut meta = Meta::new("dyson");
    profile_meta(&mut meta, &p, &a.profile);
    meta.push("e_grid", a.e_grid.clone());
    meta.push("eps_rel", fmt_g17(a.eps_rel));
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, &meta, "E,eps,rho", &rows).map_err(|e| CliError::Io(e.to_string()))?;
    if a.fit {
        let (sigma, theta) = dyson::singularity_fit(&p, &grid, a.eps_rel).map_err(numeric)?;
        use std::io::Write;
        writeln!(buf, "# sigma_hat = {}", fmt_g17(sigma)).unwrap();
        writeln!(buf, "# theta_hat = {}", fmt_g17(theta)).unwrap();
    }
    write_file(&a.out, &buf)
}

fn cmd_susy(a: SusyArgs) -> Result<(), CliError> {
    let p = load_profile(&a.profile)?;
    if a.n == 0 {
        return Err(CliError::Config("n must be positive".into()));
    }
    let z = parse_complex(&a.z).map_err(config)?;
    if z.im <= 0.0 {
        return Err(CliError::Config("z must have positive imaginary part".into()));
    }
    let mut q = susy::default_quadrature(&p, a.n, z).map_err(numeric)?;
    if let Some(r) = a.radial {
        q.radial_nodes = r;
    }
    if let Some(ang) = a.angular {
        q.angular_nodes = ang + ang % 2;
    }
    let (val, est) = susy::finite_n_resolvent_refined(&p, a.n, z, &q, a.tol).map_err(numeric)?;
    let mut meta = Meta::new("susy");
    profile_meta(&mut meta, &p, &a.profile);
    meta.push("N", a.n.to_string());
    meta.push("radial_nodes", q.radial_nodes.to_string());
    meta.push("angular_nodes", q.angular_nodes.to_string());
    meta.push(
        "radial_map",
        format!("{:?}", q.radial_maps.first().cloned().unwrap_or(susy::RadialMap::Laguerre { scale: 1.0 })),
    );
    meta.push("tol", fmt_g17(a.tol));
    let rows = vec![vec![
        p.k() as f64,
        a.n as f64,
        z.re,
        z.im,
        val.re,
        val.im,
        est,
    ]];
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, &meta, "K,N,Re_z,Im_z,Re_val,Im_val,est_err", &rows)
        .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&a.out, &buf)
}

fn parse_kind(text: &str) -> Result<LimitKind, CliError> {
    let lower = text.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("weak-k2:") {
        let sigma: f64 = rest.parse().map_err(config)?;
        return Ok(LimitKind::WeakK2(sigma));
    }
    if let Some(rest) = lower.strip_prefix("weak-k3:") {
        let sigma: f64 = rest.parse().map_err(config)?;
        return Ok(LimitKind::WeakK3(sigma));
    }
    match lower.as_str() {
        "k1" => Ok(LimitKind::K1),
        "k2" => Ok(LimitKind::K2),
        "k3" => Ok(LimitKind::K3),
        "chiral-gue" => Ok(LimitKind::ChiralGUE),
        other => Err(CliError::Config(format!("unknown limit kind '{other}'"))),
    }
}

fn cmd_limit(a: LimitArgs) -> Result<(), CliError> {
    let kind = parse_kind(&a.kind)?;
    let grid = parse_grid(&a.xi_grid).map_err(config)?;
    let mut rows = Vec::new();
    for &xi in &grid {
        let v = match limits::limit_density(kind, xi) {
            Ok(v) => v,
            Err(limits::LimitError::SingularAtZero) => f64::NAN,
            Err(e) => return Err(numeric(e)),
        };
        rows.push(vec![xi, v]);
    }
    let mut meta = Meta::new("limit");
    meta.push("kind", kind.name());
    meta.push("xi_grid", a.xi_grid.clone());
    meta.push("zeta_scale", fmt_g17(limits::zeta_scale(kind)));
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, &meta, "xi,density", &rows)
        .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&a.out, &buf)
}

/// Limit-coordinate prefactor c_N such that z = c_N zeta and the scaled
/// expectation c_N E Tr (H - z)^{-1} approaches the matching limit formula.
fn compare_scaling(p: &VarianceProfile, n: usize) -> Result<(f64, Option<LimitKind>), CliError> {
    let kind = limit_kind_for(p)?;
    let nf = n as f64;
    let c = match kind {
        Some(LimitKind::K2) => {
            // Permutation with the vanishing diagonal in slot 2.
            let (s11, s12) = if p.entry(1, 1) == 0.0 {
                (p.entry(0, 0), p.entry(0, 1))
            } else {
                (p.entry(1, 1), p.entry(0, 1))
            };
            s12 / s11.sqrt() * nf.powf(-1.5)
        }
        Some(LimitKind::K3) => {
            // Locate the chain permutation and read its entries.
            let mut c = nf.powi(-2);
            'outer: for perm in [[0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            {
                let q = p.permuted(&perm);
                if q.entry(1, 2) == 0.0
                    && q.entry(2, 2) == 0.0
                    && q.entry(1, 1) > 0.0
                    && q.entry(0, 1) > 0.0
                    && q.entry(0, 2) > 0.0
                {
                    c = q.entry(0, 2) * q.entry(1, 1).sqrt() / q.entry(0, 1) * nf.powi(-2);
                    break 'outer;
                }
            }
            c
        }
        _ => 1.0 / nf,
    };
    Ok((c, kind))
}

fn cmd_compare(a: CompareArgs) -> Result<(), CliError> {
    let p = load_profile(&a.profile)?;
    if a.trials < 2 {
        return Err(CliError::Config("compare needs at least 2 trials".into()));
    }
    let ns: Vec<usize> = a
        .n_list
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(config))
        .collect::<Result<_, _>>()?;
    if ns.iter().any(|&n| n == 0) {
        return Err(CliError::Config("all N must be positive".into()));
    }
    let zetas = parse_complex_list(&a.zeta).map_err(config)?;
    let dim_factor = |n: usize| (p.k() * n) as f64;
    let mut rows = Vec::new();
    for &n in &ns {
        let (c_n, kind) = compare_scaling(&p, n)?;
        for &zeta in &zetas {
            if zeta.im <= 0.0 {
                return Err(CliError::Config("zeta must have Im > 0".into()));
            }
            let z = c_n * zeta;
            let est = sampler::mc_resolvent_trace(&p, n, z, a.trials, a.seed).map_err(numeric)?;
            let q = susy::default_quadrature(&p, n, z).map_err(numeric)?;
            let susy_val = susy::finite_n_resolvent(&p, n, z, &q).map_err(numeric)?;
            let mc_scaled = est.mean * dim_factor(n) * c_n;
            let mc_err_scaled = est.stderr * dim_factor(n) * c_n;
            let susy_scaled = susy_val * c_n;
            let limit_val = match kind {
                Some(k) => limits::limit_resolvent(k, zeta).map_err(numeric)?,
                None => {
                    let class = model::classify_singularity(&p).map_err(config)?;
                    C::i() * std::f64::consts::PI * class.theta
                }
            };
            let gap = (susy_scaled - mc_scaled).norm();
            let pass = if gap <= 3.0 * mc_err_scaled { 1.0 } else { 0.0 };
            rows.push(vec![
                n as f64,
                zeta.re,
                zeta.im,
                mc_scaled.re,
                mc_scaled.im,
                mc_err_scaled,
                susy_scaled.re,
                susy_scaled.im,
                limit_val.re,
                limit_val.im,
                gap,
                pass,
            ]);
        }
    }
    let mut meta = Meta::new("compare");
    profile_meta(&mut meta, &p, &a.profile);
    meta.push("n_list", a.n_list.clone());
    meta.push("zeta", a.zeta.clone());
    meta.push("trials", a.trials.to_string());
    meta.push("seed", a.seed.to_string());
    let mut buf = Vec::new();
    write_curve_csv(
        &mut buf,
        &meta,
        "N,Re_zeta,Im_zeta,Re_mc,Im_mc,stderr,Re_susy,Im_susy,Re_limit,Im_limit,susy_minus_mc,within_3se",
        &rows,
    )
    .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&a.out, &buf)
}

fn saddle_case(name: &str) -> Result<(SaddleProblem, Box<dyn Fn(usize) -> Option<C>>), CliError> {
    let zeros = |d: usize| vec![C::new(0.0, 0.0); d];
    let line_quad = move |f: Box<dyn Fn(f64) -> f64>| -> C {
        let h = 5e-4;
        let mut sum = 0.0;
        let mut k = -80_000i64;
        while k <= 80_000 {
            sum += f(h * k as f64);
            k += 1;
        }
        C::new(sum * h, 0.0)
    };
    match name {
        "gaussian" => {
            let sp = SaddleProblem {
                dim: 1,
                j_value: C::new(0.0, 0.0),
                j_grad: zeros(1),
                j2: vec![C::new(1.0, 0.0)],
                j3: zeros(1),
                mu: vec![C::new(1.0, 0.0)],
                f_value: C::new(1.0, 0.0),
                f_grad: zeros(1),
                d_value: C::new(1.0, 0.0),
                d_grad: zeros(1),
                d2: zeros(1),
            };
            let eval = move |n: usize| {
                Some(line_quad(Box::new(move |u: f64| {
                    (-(n as f64) * u * u / 2.0).exp()
                })))
            };
            Ok((sp, Box::new(eval)))
        }
        "cubic" => {
            let mut sp = saddle_case("gaussian")?.0;
            sp.j3 = vec![C::new(1.0, 0.0)];
            let eval = move |n: usize| {
                Some(line_quad(Box::new(move |u: f64| {
                    if u.abs() > 2.0 {
                        return 0.0;
                    }
                    (-(n as f64) * (u * u / 2.0 + u * u * u / 6.0)).exp()
                })))
            };
            Ok((sp, Box::new(eval)))
        }
        "k2shaped" => {
            // J(u) = u^2 - 2 ln u on (0, inf), F = u, D = u - 1.
            let sp = SaddleProblem {
                dim: 1,
                j_value: C::new(1.0, 0.0),
                j_grad: zeros(1),
                j2: vec![C::new(4.0, 0.0)],
                j3: vec![C::new(-4.0, 0.0)],
                mu: vec![C::new(1.0, 0.0)],
                f_value: C::new(1.0, 0.0),
                f_grad: vec![C::new(1.0, 0.0)],
                d_value: C::new(0.0, 0.0),
                d_grad: vec![C::new(1.0, 0.0)],
                d2: zeros(1),
            };
            let eval = move |n: usize| {
                let h = 2e-4;
                let mut sum = 0.0;
                let mut k = -60_000i64;
                while k <= 60_000 {
                    let u = (h * k as f64).exp();
                    let e = -(n as f64) * (u * u - 2.0 * u.ln());
                    if e > -600.0 {
                        sum += e.exp() * u * (u - 1.0) * u;
                    }
                    k += 1;
                }
                Some(C::new(sum * h, 0.0))
            };
            Ok((sp, Box::new(eval)))
        }
        other => Err(CliError::Config(format!("unknown saddle case '{other}'"))),
    }
}

fn cmd_saddle_check(a: SaddleCheckArgs) -> Result<(), CliError> {
    let (sp, eval) = saddle_case(&a.case)?;
    let grid = [50usize, 100, 200, 400];
    let report = saddle::verify_expansion(&sp, |n| eval(n), &grid).map_err(numeric)?;
    let rows: Vec<Vec<f64>> = report
        .rows
        .iter()
        .map(|r| vec![r.n as f64, r.rel_err])
        .collect();
    let mut meta = Meta::new("saddle-check");
    meta.push("case", a.case.clone());
    meta.push("decay_exponent", fmt_g17(report.exponent));
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, &meta, "N,rel_err", &rows).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&a.out, &buf)
}

fn cmd_specfun_eval(a: SpecfunEvalArgs) -> Result<(), CliError> {
    let x = parse_complex(&a.x).map_err(config)?;
    let need = |opt: &Option<String>, name: &str| -> Result<Rational, CliError> {
        let text = opt
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("--{name} required for this function")))?;
        parse_rational(text).map_err(config)
    };
    let value: C = match a.function.as_str() {
        "besseli0" => specfun::bessel_i(0, x).map_err(numeric)?,
        "besseli1" => specfun::bessel_i(1, x).map_err(numeric)?,
        "besselk0" => specfun::bessel_k(0, x).map_err(numeric)?,
        "besselk1" => specfun::bessel_k(1, x).map_err(numeric)?,
        "besselj0" => {
            let (j0, _) = specfun::bessel_j01(x.re);
            C::new(j0, 0.0)
        }
        "besselj1" => {
            let (_, j1) = specfun::bessel_j01(x.re);
            C::new(j1, 0.0)
        }
        "hyper0f2" => {
            let b1 = need(&a.b1, "b1")?;
            let b2 = need(&a.b2, "b2")?;
            specfun::hyper_0f2_continued(b1, b2, x).map_err(numeric)?
        }
        "meijerg" => {
            let b = [need(&a.b1, "b1")?, need(&a.b2, "b2")?, need(&a.b3, "b3")?];
            specfun::meijer_g_303(&GParams { b, argument: x }).map_err(numeric)?
        }
        other => return Err(CliError::Config(format!("unknown function '{other}'"))),
    };
    println!("{} {}", fmt_g17(value.re), fmt_g17(value.im));
    Ok(())
}
