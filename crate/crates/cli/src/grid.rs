//! One grammar for every grid and scalar argument: `log:a:b:n`,
//! `lin:a:b:n`, complex "re,im", rationals "p/q".

use num_complex::Complex64;
use rmblock_core::specfun::Rational;

/// Parse `lin:a:b:n` (n equally spaced points including endpoints) or
/// `log:a:b:n` (geometric spacing, a and b positive).
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("grid '{text}' must look like lin:a:b:n or log:a:b:n"));
    }
    let a: f64 = parts[1].parse().map_err(|e| format!("grid start: {e}"))?;
    let b: f64 = parts[2].parse().map_err(|e| format!("grid end: {e}"))?;
    let n: usize = parts[3].parse().map_err(|e| format!("grid count: {e}"))?;
    if n == 0 {
        return Err("grid needs at least one point".into());
    }
    match parts[0] {
        "lin" => {
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect())
        }
        "log" => {
            if a <= 0.0 || b <= 0.0 {
                return Err("log grid endpoints must be positive".into());
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let la = a.ln();
            let lb = b.ln();
            Ok((0..n)
                .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
                .collect())
        }
        other => Err(format!("unknown grid kind '{other}'")),
    }
}

/// "re,im" or bare "re".
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re: f64 = parts
        .next()
        .ok_or("empty complex value")?
        .trim()
        .parse()
        .map_err(|e| format!("complex real part: {e}"))?;
    let im: f64 = match parts.next() {
        Some(s) => s.trim().parse().map_err(|e| format!("complex imaginary part: {e}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("complex value '{text}' has too many components"));
    }
    Ok(Complex64::new(re, im))
}

/// Semicolon-separated list of complex values.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(';').map(|s| parse_complex(s.trim())).collect()
}

/// "p/q" or bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let mut parts = text.split('/');
    let num: i64 = parts
        .next()
        .ok_or("empty rational")?
        .trim()
        .parse()
        .map_err(|e| format!("rational numerator: {e}"))?;
    let den: i64 = match parts.next() {
        Some(s) => s.trim().parse().map_err(|e| format!("rational denominator: {e}"))?,
        None => 1,
    };
    if den <= 0 {
        return Err("rational denominator must be positive".into());
    }
    if parts.next().is_some() {
        return Err(format!("rational '{text}' has too many slashes"));
    }
    Ok(Rational::new(num, den))
}
