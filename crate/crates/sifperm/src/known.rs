//! Reference values the engines are checked against: OEIS prefixes for the
//! SIF avoidance counts, all confirmed by exhaustive enumeration.

/// Single-pattern rows, `n = 1..=12`: `(pattern, terms, OEIS id)`.
pub const SINGLE_ROWS: &[(&str, [i64; 12], &str)] = &[
    ("123", [1, 1, 2, 5, 14, 44, 150, 496, 1758, 6018, 21782, 76414], "A363431"),
    ("132", [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786], "A000108"),
    ("213", [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786], "A000108"),
    ("231", [1, 1, 1, 2, 6, 18, 54, 170, 551, 1817, 6092, 20722], "A363432"),
    ("312", [1, 1, 1, 2, 6, 18, 54, 170, 551, 1817, 6092, 20722], "A363432"),
    ("321", [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786], "A000108"),
];

/// Pair rows for the eight symmetry classes, `n = 1..=12`:
/// `(pattern, pattern, terms, OEIS id or "finite")`.
pub const PAIR_ROWS: &[(&str, &str, [i64; 12], &str)] = &[
    ("123", "132", [1, 1, 2, 3, 6, 9, 18, 27, 54, 81, 162, 243], "A182522"),
    ("123", "231", [1, 1, 1, 1, 2, 3, 3, 5, 5, 7, 7, 10], "A363433"),
    ("123", "321", [1, 1, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0], "finite"),
    ("132", "213", [1, 1, 2, 5, 8, 17, 26, 53, 80, 161, 242, 485], "A062318"),
    ("132", "231", [1, 1, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512], "A011782"),
    ("132", "321", [1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], "A028310"),
    ("231", "312", [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], "finite"),
    ("231", "321", [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], "A000012"),
];

/// Block-transform terms for the 231 class, `n = 0..=12`: the invert
/// transform of the SIF row with the size-1 and size-2 terms suppressed.
pub const BLOCK_SUM_ROW: [i64; 13] = [1, 0, 0, 1, 2, 6, 19, 58, 186, 612, 2039, 6894, 23611];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent_shapes() {
        assert_eq!(SINGLE_ROWS.len(), 6);
        assert_eq!(PAIR_ROWS.len(), 8);
        // every row starts 1, 1
        for (_, row, _) in SINGLE_ROWS {
            assert_eq!(&row[..2], &[1, 1]);
        }
        for (_, _, row, _) in PAIR_ROWS {
            assert_eq!(&row[..2], &[1, 1]);
        }
    }
}
