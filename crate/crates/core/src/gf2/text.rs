use super::{BitMatrix, BitVector};
use std::fmt;

/// Parse failure for the matrix text format, with the 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses the matrix text format: a header line `r n`, then `r` lines of
/// `n` space-separated 0/1 entries. Blank lines and `#` comments (whole
/// line or trailing) are ignored.
pub fn parse_matrix(input: &str) -> Result<BitMatrix, ParseError> {
    let mut lines = input.lines().enumerate().filter_map(|(idx, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((idx + 1, content))
    });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError {
            line: 1,
            message: "empty input: expected header line \"r n\"".into(),
        })?;
    let mut parts = header.split_whitespace();
    let parse_count = |tok: Option<&str>, what: &str| -> Result<usize, ParseError> {
        tok.ok_or_else(|| ParseError {
            line: header_line,
            message: format!("header is missing {what}"),
        })?
        .parse()
        .map_err(|_| ParseError {
            line: header_line,
            message: format!("header {what} is not a number"),
        })
    };
    let r = parse_count(parts.next(), "row count")?;
    let n = parse_count(parts.next(), "column count")?;
    if parts.next().is_some() {
        return Err(ParseError {
            line: header_line,
            message: "header has trailing tokens after \"r n\"".into(),
        });
    }

    let mut rows = Vec::with_capacity(r);
    for row_idx in 0..r {
        let (line_no, content) = lines.next().ok_or_else(|| ParseError {
            line: header_line,
            message: format!("expected {r} matrix rows, found {row_idx}"),
        })?;
        let mut row = BitVector::zeros(n);
        let mut count = 0;
        for (col, tok) in content.split_whitespace().enumerate() {
            if col >= n {
                return Err(ParseError {
                    line: line_no,
                    message: format!("row has more than {n} entries"),
                });
            }
            match tok {
                "0" => {}
                "1" => row.set(col, true),
                other => {
                    return Err(ParseError {
                        line: line_no,
                        message: format!("entry {} is \"{other}\", expected 0 or 1", col + 1),
                    });
                }
            }
            count += 1;
        }
        if count != n {
            return Err(ParseError {
                line: line_no,
                message: format!("row has {count} entries, expected {n}"),
            });
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError {
            line: line_no,
            message: format!("unexpected content after {r} matrix rows"),
        });
    }
    Ok(BitMatrix::from_rows(rows).expect("uniform row length"))
}

/// Renders a matrix in the text format accepted by [`parse_matrix`].
pub fn render_matrix(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for row in m.rows() {
        let cells: Vec<&str> = (0..m.ncols())
            .map(|j| if row.get(j) { "1" } else { "0" })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
