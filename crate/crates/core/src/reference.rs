//! Published syndrome and residual tables, transcribed row by row.
//!
//! Each row lists errors sharing one syndrome and the set of residual
//! classes the row admits. Single errors in a row are expected to leave no
//! residual; the listed doubles account for the rest of the set.

use crate::codes::CodeName;
use crate::pauli::Pauli1::{self, I, X, Y, Z};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub table: &'static str,
    pub code: CodeName,
    pub errors: Vec<String>,
    pub syndrome: &'static str,
    pub residuals: Vec<Pauli1>,
}

impl ReferenceRow {
    /// Errors of weight two listed in this row.
    pub fn doubles(&self) -> impl Iterator<Item = &String> {
        self.errors.iter().filter(|e| letter_count(e) == 2)
    }

    pub fn singles(&self) -> impl Iterator<Item = &String> {
        self.errors.iter().filter(|e| letter_count(e) == 1)
    }
}

fn letter_count(label: &str) -> usize {
    label.chars().filter(|c| c.is_ascii_alphabetic()).count()
}

/// Expands `X1Z{4,5,6}` or `Z{4,5,6}Z{7,8,9}` into concrete labels.
pub fn expand(pattern: &str) -> Vec<String> {
    let mut parts: Vec<Vec<String>> = Vec::new();
    let chars: Vec<char> = pattern.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let letter = chars[i];
        i += 1;
        if chars.get(i) == Some(&'{') {
            let end = i + chars[i..]
                .iter()
                .position(|&c| c == '}')
                .expect("closing brace");
            let inner: String = chars[i + 1..end].iter().collect();
            parts.push(
                inner
                    .split(',')
                    .map(|q| format!("{letter}{}", q.trim()))
                    .collect(),
            );
            i = end + 1;
        } else {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            parts.push(vec![format!(
                "{letter}{}",
                chars[start..i].iter().collect::<String>()
            )]);
        }
    }
    parts.into_iter().fold(vec![String::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| options.iter().map(move |o| format!("{prefix}{o}")))
            .collect()
    })
}

fn row(
    table: &'static str,
    code: CodeName,
    patterns: &[&str],
    syndrome: &'static str,
    residuals: &[Pauli1],
) -> ReferenceRow {
    ReferenceRow {
        table,
        code,
        errors: patterns.iter().flat_map(|p| expand(p)).collect(),
        syndrome,
        residuals: residuals.to_vec(),
    }
}

/// Shor bit-flip detection: error, 8-bit syndrome, correction.
pub fn shor_bit_flip_rows() -> Vec<(String, &'static str, String)> {
    let syn = [
        "10000000", "11000000", "01000000", "00100000", "00110000", "00010000", "00001000",
        "00001100", "00000100",
    ];
    (1..=9)
        .map(|q| (format!("X{q}"), syn[q - 1], format!("X{q}")))
        .collect()
}

/// Shor phase-flip detection: error, 8-bit syndrome, correction.
pub fn shor_phase_flip_rows() -> Vec<(String, &'static str, String)> {
    (1..=9)
        .map(|q| {
            let (syn, fix) = match q {
                1..=3 => ("00000010", "Z1Z2Z3"),
                4..=6 => ("00000011", "Z4Z5Z6"),
                _ => ("00000001", "Z7Z8Z9"),
            };
            (format!("Z{q}"), syn, fix.to_string())
        })
        .collect()
}

/// Decode-only outputs: error, expected register error.
pub fn shor_decode_only_rows() -> Vec<(&'static str, &'static str)> {
    vec![
        ("X1", "X4X5"),
        ("X2", "X4"),
        ("X3", "X5"),
        ("X4", "X6X7"),
        ("X5", "X6"),
        ("X6", "X7"),
        ("X7", "X8X9"),
        ("X8", "X8"),
        ("X9", "X9"),
        ("Z1", "X2X3"),
        ("Z2", "X2X3"),
        ("Z3", "X2X3"),
        ("Z4", "X2"),
        ("Z5", "X2"),
        ("Z6", "X2"),
        ("Z7", "X3"),
        ("Z8", "X3"),
        ("Z9", "X3"),
        ("Y1", "-iX2X3X4X5"),
        ("Y2", "-iX2X3X4"),
        ("Y3", "-iX2X3X5"),
        ("Y4", "-iX2X6X7"),
        ("Y5", "-iX2X6"),
        ("Y6", "-iX2X7"),
        ("Y7", "-iX3X8X9"),
        ("Y8", "-iX3X8"),
        ("Y9", "-iX3X9"),
    ]
}

pub fn shor_tables() -> Vec<ReferenceRow> {
    let c = CodeName::Shor9;
    let mut rows = vec![
        row(
            "shor-x-within-block",
            c,
            &["X1", "X2X3"],
            "10000000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X2", "X1X3"],
            "11000000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X3", "X1X2"],
            "01000000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X4", "X5X6"],
            "00100000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X5", "X4X6"],
            "00110000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X6", "X4X5"],
            "00010000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X7", "X8X9"],
            "00001000",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X8", "X7X9"],
            "00001100",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["X9", "X7X8"],
            "00000100",
            &[I, Z],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y1", "X1Z2", "X1Z3"],
            "10000010",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y2", "X2Z1", "X2Z3"],
            "11000010",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y3", "X3Z1", "X3Z2"],
            "01000010",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y4", "X4Z5", "X4Z6"],
            "00100011",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y5", "X5Z4", "X5Z6"],
            "00110011",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y6", "X6Z4", "X6Z5"],
            "00010011",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y7", "X7Z8", "X7Z9"],
            "00001001",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y8", "X8Z7", "X8Z9"],
            "00001101",
            &[I],
        ),
        row(
            "shor-x-within-block",
            c,
            &["Y9", "X9Z7", "X9Z8"],
            "00000101",
            &[I],
        ),
        row(
            "shor-z",
            c,
            &["Z1", "Z2", "Z3", "Z{4,5,6}Z{7,8,9}"],
            "00000010",
            &[I, X],
        ),
        row(
            "shor-z",
            c,
            &["Z4", "Z5", "Z6", "Z{1,2,3}Z{7,8,9}"],
            "00000011",
            &[I, X],
        ),
        row(
            "shor-z",
            c,
            &["Z7", "Z8", "Z9", "Z{1,2,3}Z{4,5,6}"],
            "00000001",
            &[I, X],
        ),
        row(
            "shor-z",
            c,
            &[
                "Z1Z2", "Z1Z3", "Z2Z3", "Z4Z5", "Z4Z6", "Z5Z6", "Z7Z8", "Z7Z9", "Z8Z9",
            ],
            "00000000",
            &[I],
        ),
    ];
    let cross = [
        ("X1X4", "10100000"),
        ("X1X5", "10110000"),
        ("X1X6", "10010000"),
        ("X1X7", "10001000"),
        ("X1X8", "10001100"),
        ("X1X9", "10000100"),
        ("X2X4", "11100000"),
        ("X2X5", "11110000"),
        ("X2X6", "11010000"),
        ("X2X7", "11001000"),
        ("X2X8", "11001100"),
        ("X2X9", "11000100"),
        ("X3X4", "01100000"),
        ("X3X5", "01110000"),
        ("X3X6", "01010000"),
        ("X3X7", "01001000"),
        ("X3X8", "01001100"),
        ("X3X9", "01000100"),
        ("X4X7", "00101000"),
        ("X4X8", "00101100"),
        ("X4X9", "00100100"),
        ("X5X7", "00111000"),
        ("X5X8", "00111100"),
        ("X5X9", "00110100"),
        ("X6X7", "00011000"),
        ("X6X8", "00011100"),
        ("X6X9", "00010100"),
    ];
    rows.extend(
        cross
            .iter()
            .map(|(e, s)| row("shor-x-across-blocks", c, &[e], s, &[I])),
    );
    let mixed = [
        ("X1Z{4,5,6}", "10000011"),
        ("X1Z{7,8,9}", "10000001"),
        ("X2Z{7,8,9}", "11000001"),
        ("X2Z{4,5,6}", "11000011"),
        ("X3Z{4,5,6}", "01000011"),
        ("X3Z{7,8,9}", "01000001"),
        ("X4Z{7,8,9}", "00100001"),
        ("X5Z{7,8,9}", "00110001"),
        ("X6Z{7,8,9}", "00010001"),
        ("X4Z{1,2,3}", "00100010"),
        ("X5Z{1,2,3}", "00110010"),
        ("X6Z{1,2,3}", "00010010"),
        ("X7Z{1,2,3}", "00001010"),
        ("X8Z{1,2,3}", "00001110"),
        ("X9Z{1,2,3}", "00000110"),
        ("X7Z{4,5,6}", "00001011"),
        ("X8Z{4,5,6}", "00001111"),
        ("X9Z{4,5,6}", "00000111"),
    ];
    rows.extend(
        mixed
            .iter()
            .map(|(e, s)| row("shor-mixed", c, &[e], s, &[I])),
    );
    rows
}

pub fn steane_tables() -> Vec<ReferenceRow> {
    let c = CodeName::Steane7;
    let mut rows = vec![
        row(
            "steane-x",
            c,
            &["X1", "X2X3", "X4X5", "X6X7"],
            "000001",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X2", "X1X3", "X4X6", "X5X7"],
            "000010",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X3", "X1X2", "X5X6", "X4X7"],
            "000011",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X4", "X1X5", "X2X6", "X3X7"],
            "000100",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X5", "X1X4", "X2X7", "X3X6"],
            "000101",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X6", "X1X7", "X2X4", "X3X5"],
            "000110",
            &[I, X],
        ),
        row(
            "steane-x",
            c,
            &["X7", "X1X6", "X2X5", "X3X4"],
            "000111",
            &[I, X],
        ),
        row("steane-x", c, &["Y1"], "001001", &[I]),
        row("steane-x", c, &["Y2"], "010010", &[I]),
        row("steane-x", c, &["Y3"], "011011", &[I]),
        row("steane-x", c, &["Y4"], "100100", &[I]),
        row("steane-x", c, &["Y5"], "101101", &[I]),
        row("steane-x", c, &["Y6"], "110110", &[I]),
        row("steane-x", c, &["Y7"], "111111", &[I]),
        row(
            "steane-z",
            c,
            &["Z1", "Z6Z7", "Z2Z3", "Z4Z5"],
            "001000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z2", "Z1Z3", "Z4Z6", "Z5Z7"],
            "010000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z3", "Z4Z7", "Z1Z2", "Z5Z6"],
            "011000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z4", "Z3Z7", "Z1Z5", "Z2Z6"],
            "100000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z5", "Z2Z7", "Z1Z4", "Z3Z6"],
            "101000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z6", "Z1Z7", "Z2Z4", "Z3Z5"],
            "110000",
            &[I, Z],
        ),
        row(
            "steane-z",
            c,
            &["Z7", "Z1Z6", "Z2Z5", "Z3Z4"],
            "111000",
            &[I, Z],
        ),
    ];
    let mixed = [
        ("X1Z4", "100001"),
        ("X1Z5", "101001"),
        ("X1Z6", "110001"),
        ("X1Z7", "111001"),
        ("X2Z7", "111010"),
        ("X3Z4", "100011"),
        ("X3Z6", "110011"),
        ("X3Z7", "111011"),
        ("X4Z7", "111100"),
        ("X5Z7", "111101"),
        ("X6Z5", "101110"),
        ("X6Z7", "111110"),
        ("X5Z6", "110101"),
        ("Z1X4", "001100"),
        ("Z2X4", "010100"),
        ("Z3X4", "011100"),
        ("Z1X5", "001101"),
        ("Z2X5", "010101"),
        ("Z1X6", "001110"),
        ("Z2X6", "010110"),
        ("Z3X6", "011110"),
        ("Z1X7", "001111"),
        ("Z2X7", "010111"),
        ("Z3X7", "011111"),
        ("Z4X5", "100101"),
        ("Z3X5", "011101"),
        ("Z1X3", "001011"),
        ("X1Z2", "010001"),
        ("X1Z3", "011001"),
        ("X2Z1", "001010"),
        ("X2Z3", "011010"),
        ("X2Z4", "100010"),
        ("X2Z5", "101010"),
        ("X2Z6", "110010"),
        ("Z2X3", "010011"),
        ("X4Z5", "101100"),
        ("X4Z6", "110100"),
        ("Z4X6", "100110"),
        ("X3Z5", "101011"),
    ];
    rows.extend(
        mixed
            .iter()
            .map(|(e, s)| row("steane-mixed", c, &[e], s, &[I])),
    );
    rows
}

pub fn five_tables() -> Vec<ReferenceRow> {
    let c = CodeName::Five5;
    vec![
        row(
            "five-x-z",
            c,
            &["X1", "Z3Z4", "X4Z5", "Z2X3"],
            "0101",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["X2", "Z4Z5", "Z1X5", "Z3X4"],
            "0010",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["X3", "Z1Z5", "X1Z2", "Z4X5"],
            "1001",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["X4", "Z1Z2", "X1Z5", "X2Z3"],
            "0100",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["X5", "Z2Z3", "X3Z4", "Z1X2"],
            "1010",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["Z1", "X2X5", "X3Z5", "Z2X4"],
            "1000",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["Z2", "X1X3", "Z1X4", "Z3X5"],
            "1100",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["Z3", "X2X4", "X1Z4", "Z2X5"],
            "0110",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["Z4", "X3X5", "X1Z3", "X2Z5"],
            "0011",
            &[I, X, Z],
        ),
        row(
            "five-x-z",
            c,
            &["Z5", "X1X4", "X2Z4", "Z1X3"],
            "0001",
            &[I, X, Z],
        ),
        row("five-y", c, &["Y1", "X3X4", "Z2Z5"], "1101", &[I, Y]),
        row("five-y", c, &["Y2", "X4X5", "Z1Z3"], "1110", &[I, Y]),
        row("five-y", c, &["Y3", "X1X5", "Z2Z4"], "1111", &[I, Y]),
        row("five-y", c, &["Y4", "X1X2", "Z3Z5"], "0111", &[I, Y]),
        row("five-y", c, &["Y5", "X2X3", "Z1Z4"], "1011", &[I, Y]),
    ]
}

/// All tabulated rows for one of the three large codes.
pub fn tables_for(code: CodeName) -> Vec<ReferenceRow> {
    match code {
        CodeName::Shor9 => shor_tables(),
        CodeName::Steane7 => steane_tables(),
        CodeName::Five5 => five_tables(),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion() {
        assert_eq!(expand("X1Z{4,5,6}"), vec!["X1Z4", "X1Z5", "X1Z6"]);
        assert_eq!(expand("Z{1,2}Z{7,8}"), vec!["Z1Z7", "Z1Z8", "Z2Z7", "Z2Z8"]);
        assert_eq!(expand("Y9"), vec!["Y9"]);
    }

    #[test]
    fn listed_double_counts() {
        let count =
            |rows: Vec<ReferenceRow>| rows.iter().map(|r| r.doubles().count()).sum::<usize>();
        assert_eq!(count(shor_tables()), 144);
        assert_eq!(count(steane_tables()), 81);
        assert_eq!(count(five_tables()), 40);
    }
}
