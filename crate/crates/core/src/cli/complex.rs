//! `a+bi` notation for complex numbers on the command line.

use num_complex::Complex64;

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (also `j` for the unit).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || format!("cannot parse complex number '{text}' (expected a+bi)");
    if s.is_empty() {
        return Err(err());
    }
    let real = |t: &str| -> Result<f64, String> {
        let v: f64 = t.parse().map_err(|_| err())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err())
        }
    };
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    // Split at the last sign that is not a leading sign or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    let re = if re_part.is_empty() { 0.0 } else { real(re_part)? };
    Ok(Complex64::new(re, im))
}

/// Inverse of [`parse_complex`]; shortest round-trip digits.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Comma-separated list of complex numbers.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(parse_complex).collect()
}
