//! JSON documents emitted by `nmfr`.
//!
//! Rationals are written as strings, `p` or `p/q`, so nothing is lost. A
//! certificate document carries the factors it was computed from, so it can
//! be re-verified from the file alone.

use nmf_rigidity::cone::PositiveCombinationWitness;
use nmf_rigidity::cpr::{build_skew_generators, SymmetricFactor};
use nmf_rigidity::exactlin::{format_rational, parse_rational, RationalMatrix};
use nmf_rigidity::rigidity::{
    build_dual_generators, Classification, FactorizationPair, RigidityCertificate,
};
use nmf_rigidity::{Error, Result};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = "nmfr";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type MatrixRows = Vec<Vec<String>>;

pub fn matrix_to_rows(m: &RationalMatrix) -> MatrixRows {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &MatrixRows) -> Result<RationalMatrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|t| {
                    parse_rational(t).map_err(|message| Error::Parse {
                        line: i + 1,
                        message,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(Error::InvalidParameter("empty matrix in document".into()));
    }
    RationalMatrix::from_rows(parsed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Nonsymmetric,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factors {
    pub a: MatrixRows,
    /// Absent for a symmetric factor.
    pub b: Option<MatrixRows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBody {
    pub classification: String,
    pub generator_count: usize,
    pub span_rank: usize,
    pub lineality_dim: usize,
    pub dim_w: usize,
    pub relint_witness: Option<Vec<String>>,
    pub kruskal_rank: Option<usize>,
    pub kruskal_bound: usize,
    /// 1-based positions, present for partially rigid factorizations.
    pub v_support: Vec<(usize, usize)>,
    pub v_basis: Vec<MatrixRows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub tool: String,
    pub version: String,
    pub kind: Kind,
    pub shape: Shape,
    pub filters: Option<Vec<String>>,
    pub seed: Option<u64>,
    pub factors: Factors,
    pub certificate: CertificateBody,
}

fn body(cert: &RigidityCertificate, kruskal_bound: usize) -> CertificateBody {
    let v_basis = match &cert.classification {
        Classification::PartiallyInfinitesimallyRigid { v_basis } => {
            v_basis.iter().map(matrix_to_rows).collect()
        }
        _ => Vec::new(),
    };
    CertificateBody {
        classification: cert.classification.name().to_string(),
        generator_count: cert.generator_count,
        span_rank: cert.span_rank,
        lineality_dim: cert.lineality_dim,
        dim_w: cert.dim_w,
        relint_witness: cert
            .relint_witness
            .as_ref()
            .map(|w| w.coefficients.iter().map(format_rational).collect()),
        kruskal_rank: cert.kruskal_rank,
        kruskal_bound,
        v_support: cert.classification.v_support(),
        v_basis,
    }
}

impl CertificateDocument {
    pub fn nonsymmetric(f: &FactorizationPair, cert: &RigidityCertificate) -> Self {
        let r = f.r();
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            kind: Kind::Nonsymmetric,
            shape: Shape {
                m: f.m(),
                n: f.n(),
                r,
            },
            filters: None,
            seed: None,
            factors: Factors {
                a: matrix_to_rows(f.a()),
                b: Some(matrix_to_rows(f.b())),
            },
            certificate: body(cert, cert.generator_count.min(r * r - r)),
        }
    }

    pub fn symmetric(f: &SymmetricFactor, cert: &RigidityCertificate) -> Self {
        let r = f.r();
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            kind: Kind::Symmetric,
            shape: Shape {
                m: f.n(),
                n: f.n(),
                r,
            },
            filters: None,
            seed: None,
            factors: Factors {
                a: matrix_to_rows(f.a()),
                b: None,
            },
            certificate: body(cert, cert.generator_count.min(r * r.saturating_sub(1) / 2)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Recomputes what the document claims from its factors: the witness
    /// must be a strictly positive relation (all coefficients `>= 1`) among
    /// the generators, and the ranks and classification must match.
    pub fn reverify(&self) -> Result<Vec<String>> {
        let a = rows_to_matrix(&self.factors.a)?;
        let mut problems = Vec::new();
        let (cone, cert) = match (self.kind, &self.factors.b) {
            (Kind::Nonsymmetric, Some(b)) => {
                let f = FactorizationPair::new(a, rows_to_matrix(b)?)?;
                let cone = build_dual_generators(&f).cone();
                (cone, nmf_rigidity::rigidity::certify(&f))
            }
            (Kind::Symmetric, None) => {
                let f = SymmetricFactor::new(a)?;
                let cone = build_skew_generators(&f).cone();
                (cone, nmf_rigidity::cpr::certify_cp(&f))
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "factor blocks do not match the document kind".into(),
                ))
            }
        };
        let c = &self.certificate;
        if let Some(w) = &c.relint_witness {
            let coefficients = w
                .iter()
                .map(|t| parse_rational(t).map_err(|message| Error::Parse { line: 0, message }))
                .collect::<Result<Vec<_>>>()?;
            if !(PositiveCombinationWitness { coefficients }).verify(&cone) {
                problems.push("witness is not a strictly positive relation".into());
            }
        }
        let checks = [
            ("generator_count", c.generator_count, cert.generator_count),
            ("span_rank", c.span_rank, cert.span_rank),
            ("lineality_dim", c.lineality_dim, cert.lineality_dim),
            ("dim_w", c.dim_w, cert.dim_w),
        ];
        for (name, claimed, actual) in checks {
            if claimed != actual {
                problems.push(format!(
                    "{name}: document says {claimed}, recomputed {actual}"
                ));
            }
        }
        if c.classification != cert.classification.name() {
            problems.push(format!(
                "classification: document says {}, recomputed {}",
                c.classification, cert.classification
            ));
        }
        if c.v_support != cert.classification.v_support() {
            problems.push("V-support differs".into());
        }
        Ok(problems)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub index: usize,
    pub passed: bool,
    pub zero_count: usize,
    pub classification: Option<String>,
    pub dim_w: Option<usize>,
    pub kruskal_rank: Option<usize>,
    /// `(row, col, printed, computed)` for every mismatching product entry.
    pub product_diffs: Vec<(usize, usize, String, String)>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationDocument {
    pub tool: String,
    pub version: String,
    pub shape: Shape,
    pub zeros: usize,
    pub filters: Vec<String>,
    pub count: usize,
}
