//! Deterministic CSV output.
//!
//! Ten significant digits in scientific notation, `.` decimal point, LF line
//! endings; byte-identical across runs and locales.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// A float rendered with ten significant digits.
pub fn sig10(value: f64) -> String {
    format!("{value:.9e}")
}

/// Writes a two-column curve file with header `x_db,probability`.
pub fn write_curve(path: &Path, rows: &[(f64, f64)]) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(b"x_db,probability\n")?;
    for &(x_db, probability) in rows {
        writeln!(out, "{},{}", sig10(x_db), sig10(probability))?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(0.0), "0.000000000e0");
        assert_eq!(sig10(1.0), "1.000000000e0");
        assert_eq!(sig10(1e-4), "1.000000000e-4");
        assert_eq!(sig10(-2.215872557), "-2.215872557e0");
        assert_eq!(sig10(5.9971428642804), "5.997142864e0");
    }

    #[test]
    fn curve_bytes_are_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        write_curve(&path, &[(0.0, 1.0), (6.0, 1e-4)]).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "x_db,probability\n0.000000000e0,1.000000000e0\n6.000000000e0,1.000000000e-4\n"
        );
    }
}
