//! Plain-text matrix formats.
//!
//! A matrix is a header line `rows cols` followed by `rows` lines of
//! whitespace-separated rationals (`p` or `p/q`). A factorization is the
//! matrix `A`, a blank line, then `B`. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, RationalMatrix};

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'))
            .collect();
        Self { lines, pos: 0 }
    }

    fn skip_blank(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.lines.len() && self.lines[self.pos].1.is_empty() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied();
        self.pos += 1;
        l
    }

    fn matrix(&mut self, what: &str) -> Result<RationalMatrix> {
        let (ln, header) = self.next().ok_or_else(|| Error::Parse {
            line: self.last_line(),
            message: format!("missing header for {what}"),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: ln,
                message: format!("malformed header {header:?} for {what}"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse {
                line: ln,
                message: format!("header for {what} must be \"rows cols\", got {header:?}"),
            });
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let (ln, line) =
                self.next()
                    .filter(|(_, l)| !l.is_empty())
                    .ok_or_else(|| Error::Parse {
                        line: ln + i + 1,
                        message: format!("{what} has fewer than {rows} rows"),
                    })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(Error::Parse {
                    line: ln,
                    message: format!("expected {cols} entries, found {}", tokens.len()),
                });
            }
            for t in tokens {
                entries
                    .push(parse_rational(t).map_err(|message| Error::Parse { line: ln, message })?);
            }
        }
        RationalMatrix::new(rows, cols, entries)
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_blank();
        match self.next() {
            None => Ok(()),
            Some((ln, l)) => Err(Error::Parse {
                line: ln,
                message: format!("unexpected trailing content {l:?}"),
            }),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let mut r = Reader::new(text);
    r.skip_blank();
    let m = r.matrix("matrix")?;
    r.expect_end()?;
    Ok(m)
}

/// Parses `A`, a blank line, then `B`.
pub fn parse_factorization(text: &str) -> Result<(RationalMatrix, RationalMatrix)> {
    let mut r = Reader::new(text);
    r.skip_blank();
    let a = r.matrix("A")?;
    if r.at_end() {
        return Err(Error::Parse {
            line: r.last_line(),
            message: "missing B block".into(),
        });
    }
    if r.skip_blank() == 0 {
        let ln = r.lines[r.pos].0;
        return Err(Error::Parse {
            line: ln,
            message: "expected a blank line between A and B".into(),
        });
    }
    let b = r.matrix("B")?;
    r.expect_end()?;
    Ok((a, b))
}

pub fn format_matrix(m: &RationalMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_factorization(a: &RationalMatrix, b: &RationalMatrix) -> String {
    format!("{}\n{}", format_matrix(a), format_matrix(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;

    #[test]
    fn factorization_round_trip() {
        let text = "# pir\n2 2\n0 1/2\n1 0\n\n2 3\n1 1 0\n0 1 1\n";
        let (a, b) = parse_factorization(text).unwrap();
        assert_eq!(a.shape(), (2, 2));
        assert_eq!(*a.get(0, 1), ratio(1, 2));
        assert_eq!(b.shape(), (2, 3));
        let again = parse_factorization(&format_factorization(&a, &b)).unwrap();
        assert_eq!(again, (a, b));
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_matrix("2 2\n1 2\n3\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix("2 2\n1 2\n3 x\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_factorization("1 1\n1\n1 1\n1\n").is_err());
        assert!(parse_factorization("1 1\n1\n").is_err());
        assert!(parse_matrix("1 1\n1\n1\n").is_err());
        assert!(parse_matrix("x y\n").is_err());
    }
}
