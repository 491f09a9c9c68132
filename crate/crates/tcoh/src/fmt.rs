/// 17 significant digits, enough to round-trip any `f64`.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Empty cell for a missing value.
pub fn csv_opt(x: Option<f64>) -> String {
    x.map(csv_float).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.5e-300, -7.0, 0.0] {
            assert_eq!(csv_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv_opt(None), "");
    }
}
