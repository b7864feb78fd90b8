//! The fifteen published 5x5 factorizations of nonnegative rank four, each
//! with thirteen zeros, and a verifier that re-derives their certificates.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{parse_rational, Rational, RationalMatrix};
use crate::rigidity::{certify, Classification, FactorizationPair};

const DATA: &str = include_str!("../data/published_fixtures.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedFixture {
    /// 1-based position in the published list.
    pub index: usize,
    pub m: RationalMatrix,
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

impl PublishedFixture {
    pub fn pair(&self) -> Result<FactorizationPair> {
        FactorizationPair::new(self.a.clone(), self.b.clone())
    }
}

pub fn published_fixtures() -> Vec<PublishedFixture> {
    parse_fixtures(DATA).expect("embedded fixture data is well formed")
}

/// Parses blocks `# fixture k` followed by `M r c`, `A r c`, `B r c`
/// headers, each followed by its rows.
pub fn parse_fixtures(text: &str) -> Result<Vec<PublishedFixture>> {
    let mut out = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let mut index = None;
    let mut blocks: Vec<RationalMatrix> = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# fixture") {
            index = Some(rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: ln + 1,
                message: format!("bad fixture number {rest:?}"),
            })?);
            blocks.clear();
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (rows, cols) = match parts[..] {
            [_, r, c] => (r.parse::<usize>().ok(), c.parse::<usize>().ok()),
            _ => (None, None),
        };
        let (Some(rows), Some(cols)) = (rows, cols) else {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected a block header, got {line:?}"),
            });
        };
        let mut entries: Vec<Rational> = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, row) = lines.next().ok_or(Error::Parse {
                line: ln + 1,
                message: "block ended early".into(),
            })?;
            for t in row.split_whitespace() {
                entries.push(parse_rational(t).map_err(|message| Error::Parse {
                    line: ln + 1,
                    message,
                })?);
            }
        }
        blocks.push(RationalMatrix::new(rows, cols, entries)?);
        if blocks.len() == 3 {
            let index = index.take().ok_or(Error::Parse {
                line: ln + 1,
                message: "block without a fixture header".into(),
            })?;
            let mut it = blocks.drain(..);
            let (m, a, b) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
            out.push(PublishedFixture { index, m, a, b });
        }
    }
    Ok(out)
}

/// One mismatching entry of `AB` against the printed product. 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub printed: Rational,
    pub computed: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub index: usize,
    pub product_diffs: Vec<EntryDiff>,
    /// Error message when the factors are not a valid factorization.
    pub invalid: Option<String>,
    pub classification: Option<Classification>,
    pub dim_w: Option<usize>,
    pub kruskal_rank: Option<usize>,
    pub zero_count: usize,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.product_diffs.is_empty()
            && self.invalid.is_none()
            && self.classification == Some(Classification::InfinitesimallyRigid)
            && self.dim_w == Some(4)
            && self.kruskal_rank == Some(12)
    }
}

pub fn verify_fixture(f: &PublishedFixture) -> FixtureCheck {
    let zero_count =
        f.a.entries()
            .iter()
            .chain(f.b.entries())
            .filter(|x| num_traits::Zero::is_zero(*x))
            .count();
    let mut check = FixtureCheck {
        index: f.index,
        product_diffs: Vec::new(),
        invalid: None,
        classification: None,
        dim_w: None,
        kruskal_rank: None,
        zero_count,
    };
    match f.a.matmul(&f.b) {
        Ok(p) if p.shape() == f.m.shape() => {
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    if p.get(i, j) != f.m.get(i, j) {
                        check.product_diffs.push(EntryDiff {
                            row: i + 1,
                            col: j + 1,
                            printed: f.m.get(i, j).clone(),
                            computed: p.get(i, j).clone(),
                        });
                    }
                }
            }
        }
        Ok(p) => {
            check.invalid = Some(format!(
                "product has shape {:?}, printed matrix {:?}",
                p.shape(),
                f.m.shape()
            ))
        }
        Err(e) => check.invalid = Some(e.to_string()),
    }
    match f.pair() {
        Ok(pair) => {
            let cert = certify(&pair);
            check.classification = Some(cert.classification);
            check.dim_w = Some(cert.dim_w);
            check.kruskal_rank = cert.kruskal_rank;
        }
        Err(e) => check.invalid = Some(e.to_string()),
    }
    check
}

/// Checks every fixture, in parallel, returning results in input order.
pub fn verify_fixtures(fixtures: &[PublishedFixture]) -> Vec<FixtureCheck> {
    fixtures.par_iter().map(verify_fixture).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational;

    #[test]
    fn embedded_data_has_fifteen_fixtures() {
        let fx = published_fixtures();
        assert_eq!(fx.len(), 15);
        assert_eq!(
            fx.iter().map(|f| f.index).collect::<Vec<_>>(),
            (1..=15).collect::<Vec<_>>()
        );
        assert_eq!(*fx[0].m.get(4, 4), rational(574666));
        for f in &fx {
            assert_eq!(
                (f.m.shape(), f.a.shape(), f.b.shape()),
                ((5, 5), (5, 4), (4, 5))
            );
        }
    }

    #[test]
    fn corrupted_product_is_reported_per_entry() {
        let mut f = published_fixtures()[0].clone();
        f.m.set(4, 4, rational(574667));
        let check = verify_fixture(&f);
        assert!(!check.passed());
        assert_eq!(
            check.product_diffs,
            vec![EntryDiff {
                row: 5,
                col: 5,
                printed: rational(574667),
                computed: rational(574666),
            }]
        );
        assert_eq!(
            check.classification,
            Some(Classification::InfinitesimallyRigid)
        );
    }
}
