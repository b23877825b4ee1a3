use std::str::FromStr;

use num_bigint::BigInt;
use sandpile_core::IntMatrix;

/// Parses `rows cols` followed by one whitespace-separated row per line.
pub fn parse(text: &str) -> Result<IntMatrix, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("bad dimension {t:?}")))
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(format!("header must be \"rows cols\", found {header:?}"));
    };
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines.next().ok_or(format!("missing row {}", i + 1))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| BigInt::from_str(t).map_err(|_| format!("bad entry {t:?} in row {}", i + 1)))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(format!("row {} has {} entries, expected {cols}", i + 1, row.len()));
        }
        entries.extend(row);
    }
    if let Some(extra) = lines.next() {
        return Err(format!("unexpected trailing line {extra:?}"));
    }
    IntMatrix::new(rows, cols, entries).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let m = parse("2 2\n2 4\n4 2\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m[(1, 0)], BigInt::from(4));
        assert_eq!(parse("0 0\n").unwrap().rows(), 0);
        assert!(parse("2 2\n1 2\n3\n").is_err());
        assert!(parse("2 2\n1 2\n").is_err());
        assert!(parse("1 1\nx\n").is_err());
        assert!(parse("").is_err());
        assert!(parse("1 1\n1\n1\n").is_err());
    }
}
