//! Deterministic number formatting and grid parsing.

use crate::error::{CliError, Result};

/// Significant digits of every number written by the CLI.
pub const SIGNIFICANT_DIGITS: usize = 10;

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, in fixed
/// notation for moderate magnitudes and scientific notation otherwise.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

/// Parses `LO:HI:STEP` into lo + i·step for i = 0, 1, … while ≤ hi.
pub fn parse_range(spec: &str, what: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("{what}: expected LO:HI:STEP, got '{spec}'")));
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("{what}: '{spec}' is not numeric")))?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && hi >= lo) {
        return Err(CliError::Usage(format!("{what}: '{spec}' needs LO ≤ HI and STEP > 0")));
    }
    let n = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize;
    if n > 1_000_000 {
        return Err(CliError::Usage(format!("{what}: '{spec}' has too many points")));
    }
    Ok((0..=n).map(|i| lo + step * i as f64).collect())
}

/// Parses either `LO:HI:STEP` or a comma-separated list.
pub fn parse_values(spec: &str, what: &str) -> Result<Vec<f64>> {
    if spec.contains(':') {
        return parse_range(spec, what);
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{what}: '{s}' is not a number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(130.3), "130.3000000");
        assert_eq!(sig(0.001484), "0.001484000000");
        assert_eq!(sig(1092.4e6), "1092400000");
        assert_eq!(sig(-2.5), "-2.500000000");
        assert_eq!(sig(1e20), "1.000000000e20");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(9.99999999999), "10.00000000");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("100:400:50", "rho").unwrap(), vec![100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0]);
        assert_eq!(parse_range("0:0.5:0.1", "y").unwrap().len(), 6);
        assert!(parse_range("1:0:1", "rho").is_err());
        assert!(parse_range("1:2", "rho").is_err());
        assert_eq!(parse_values("100, 200", "rho").unwrap(), vec![100.0, 200.0]);
    }
}
