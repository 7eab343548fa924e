//! CSV output formats.  All files are UTF-8 with LF line endings, floats at
//! 17 significant digits, and a `#` metadata header sufficient to reproduce
//! the run (subcommand, resolved configuration, seed, version).

use crate::model::VarianceProfile;
use crate::sampler::{histogram_density, Histogram, Normalization};
use std::io::{self, Write};

/// 17-significant-digit scientific formatting (%.17g style).
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Ordered key = value metadata block rendered as `#` comment lines.
#[derive(Debug, Clone, Default)]
pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new(subcommand: &str) -> Self {
        let mut m = Meta::default();
        m.push("tool", format!("rmblock {}", env!("CARGO_PKG_VERSION")));
        m.push("subcommand", subcommand.to_string());
        m
    }

    pub fn push(&mut self, key: &str, value: String) {
        self.entries.push((key.to_string(), value));
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(w, "# {k} = {v}")?;
        }
        Ok(())
    }
}

/// Histogram CSV: `xi_lo,xi_hi,count,density` rows under the metadata block.
pub fn write_histogram_csv<W: Write>(
    w: &mut W,
    meta: &Meta,
    hist: &Histogram,
    p: &VarianceProfile,
    n: usize,
) -> io::Result<()> {
    meta.write_to(w)?;
    if let Normalization::MicroscopicDensity { eta } = hist.normalization {
        writeln!(w, "# eta_N = {}", fmt_g17(eta))?;
    }
    writeln!(w, "# outside_range = {}", hist.outside_range)?;
    writeln!(w, "# outside_support_bound = {}", hist.outside_support_bound)?;
    writeln!(w, "xi_lo,xi_hi,count,density")?;
    let dens = histogram_density(hist, p, n);
    for b in 0..hist.bins() {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_g17(hist.edges[b]),
            fmt_g17(hist.edges[b + 1]),
            hist.counts[b],
            fmt_g17(dens[b])
        )?;
    }
    Ok(())
}

/// Generic curve CSV: a fixed header line and rows of floats.
pub fn write_curve_csv<W: Write>(
    w: &mut W,
    meta: &Meta,
    header: &str,
    rows: &[Vec<f64>],
) -> io::Result<()> {
    meta.write_to(w)?;
    writeln!(w, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| fmt_g17(*v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Eigenvalue dump: one float per line, scientific, 17 significant digits.
pub fn write_eigenvalues<W: Write>(w: &mut W, values: &[f64]) -> io::Result<()> {
    for v in values {
        writeln!(w, "{}", fmt_g17(*v))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_profile;
    use crate::sampler::macroscopic_histogram;

    #[test]
    fn g17_round_trips() {
        for &v in &[1.0, -0.3333333333333333, 2.5e-17, 1.0609e0, f64::MIN_POSITIVE] {
            let s = fmt_g17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(v, back, "{s}");
        }
    }

    #[test]
    fn histogram_csv_shape() {
        let p = validate_profile(&[vec![1.0]]).unwrap();
        let edges = vec![-2.0, 0.0, 2.0];
        let h = macroscopic_histogram(&p, 2, 5, &edges, 9).unwrap();
        let mut buf = Vec::new();
        let mut meta = Meta::new("sample");
        meta.push("K", "1".into());
        meta.push("N", "2".into());
        meta.push("trials", "5".into());
        meta.push("seed", "9".into());
        write_histogram_csv(&mut buf, &meta, &h, &p, 2).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("xi_lo,xi_hi,count,density"));
        assert!(text.contains("# subcommand = sample"));
        assert!(text.contains("# trials = 5"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
        assert!(!text.contains('\r'));
    }
}
