//! Rigidity of a nonnegative symmetric factor `A` with `M = A A^T`.
//!
//! Deformations are skew-symmetric `D` (the tangent space of the orthogonal
//! group), written in the coordinates `d_kl` with `k < l`, ordered row-major.
//! A zero `A[i][j]` imposes `d_j . a_i >= 0`, where `d_j` is column `j` of `D`.

use num_traits::Zero;

use crate::cone::ConeByGenerators;
use crate::error::{Error, Factor, Result};
use crate::exactlin::{Rational, RationalMatrix, RationalVector};
use crate::rigidity::{
    kruskal_rank_of_columns, Classification, ConditionResult, ConditionStatus, ConeSummary,
    KruskalReport, NecessaryCondition, NecessaryConditionsReport, RigidityCertificate,
    DEFAULT_KRUSKAL_BUDGET,
};

/// A nonnegative `n x r` matrix of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricFactor {
    a: RationalMatrix,
}

impl SymmetricFactor {
    pub fn new(a: RationalMatrix) -> Result<Self> {
        if let Some((i, j, v)) = a.first_negative() {
            return Err(Error::NegativeEntry {
                factor: Factor::A,
                row: i + 1,
                col: j + 1,
                value: v.clone(),
            });
        }
        let rank = a.rank();
        if rank != a.cols() {
            return Err(Error::RankDeficient {
                factor: Factor::A,
                rank,
                expected: a.cols(),
            });
        }
        Ok(Self { a })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(RationalMatrix::from_i64_rows(rows))
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn r(&self) -> usize {
        self.a.cols()
    }

    pub fn product(&self) -> RationalMatrix {
        self.a
            .matmul(&self.a.transpose())
            .expect("A A^T is always defined")
    }

    pub fn zero_count(&self) -> usize {
        self.a.entries().iter().filter(|x| x.is_zero()).count()
    }
}

/// `r (r - 1) / 2`, the dimension of the skew-symmetric matrices.
pub fn skew_dim(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

/// Position of `d_kl`, `k < l`, in the row-major upper-triangle order.
pub fn skew_index(r: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < r);
    k * (2 * r - k - 1) / 2 + (l - k - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewGenerator {
    pub vector: RationalVector,
    /// 0-based position of the zero in `A`.
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewGenerators {
    pub r: usize,
    pub generators: Vec<SkewGenerator>,
}

impl SkewGenerators {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cone(&self) -> ConeByGenerators {
        let vectors = self.generators.iter().map(|g| g.vector.clone()).collect();
        ConeByGenerators::new(skew_dim(self.r), vectors).expect("generator length is r choose 2")
    }
}

/// One generator per zero `(i, j)` of `A`, in row-major order. The
/// coefficient of `d_kl` is `a_ik` when `l = j` and `-a_il` when `k = j`.
pub fn build_skew_generators(f: &SymmetricFactor) -> SkewGenerators {
    let r = f.r();
    let mut generators = Vec::new();
    for i in 0..f.n() {
        for j in 0..r {
            if !f.a.get(i, j).is_zero() {
                continue;
            }
            let mut v = vec![Rational::zero(); skew_dim(r)];
            for k in 0..j {
                v[skew_index(r, k, j)] = f.a.get(i, k).clone();
            }
            for l in j + 1..r {
                v[skew_index(r, j, l)] = -f.a.get(i, l).clone();
            }
            generators.push(SkewGenerator {
                vector: v,
                row: i,
                col: j,
            });
        }
    }
    SkewGenerators { r, generators }
}

/// The symmetric certificate. There are no trivial deformations, so
/// `dim_w` is the dimension of the cone of skew motions itself and rigid means
/// that cone is `{0}`. The classification is one of `InfinitesimallyRigid`,
/// `InteriorCertified` (every skew direction is a motion) or `Undetermined`.
pub fn certify_cp(f: &SymmetricFactor) -> RigidityCertificate {
    certify_cp_with_budget(f, DEFAULT_KRUSKAL_BUDGET)
}

pub fn certify_cp_with_budget(f: &SymmetricFactor, kruskal_budget: u64) -> RigidityCertificate {
    let r = f.r();
    let z = build_skew_generators(f);
    let cone = z.cone();
    let summary = ConeSummary::of(&cone);
    let dim = skew_dim(r);
    let dim_w = dim - summary.lineality_dim;
    let classification =
        if summary.witness.is_some() && summary.span_rank == dim && summary.lineality_dim == dim {
            Classification::InfinitesimallyRigid
        } else if dim_w == dim {
            Classification::InteriorCertified
        } else {
            Classification::Undetermined
        };
    RigidityCertificate {
        r,
        generator_count: z.len(),
        span_rank: summary.span_rank,
        lineality_dim: summary.lineality_dim,
        relint_witness: summary.witness,
        dim_w,
        classification,
        kruskal_rank: kruskal_rank_of_columns(&cone.generator_matrix(), kruskal_budget),
    }
}

/// Whether the skew generator matrix reaches Kruskal rank
/// `min(c, r (r - 1) / 2)`.
pub fn cp_kruskal_criterion(f: &SymmetricFactor, budget: u64) -> KruskalReport {
    let z = build_skew_generators(f);
    let bound = z.len().min(skew_dim(f.r()));
    let k = kruskal_rank_of_columns(&z.cone().generator_matrix(), budget);
    KruskalReport {
        kruskal_rank: k,
        bound,
        holds: k.map(|k| k == bound),
    }
}

/// Minimum zero count `(r^2 - r) / 2 + 1` of a rigid symmetric factor.
pub fn cp_rigid_zero_bound(r: usize) -> usize {
    skew_dim(r) + 1
}

/// The symmetric analogues of the nonsymmetric conditions. `BoundaryClosedB`
/// is not used; `ZeroInEveryColumnAndRow` checks columns of `A`, `RowBound`
/// rows of `A`, and `ZeroRectangles` the bound `k <= r - |alpha|`.
pub fn cp_necessary_conditions(f: &SymmetricFactor) -> NecessaryConditionsReport {
    let r = f.r();
    let n = f.n();
    let zero = |i: usize, j: usize| f.a.get(i, j).is_zero();
    let c = f.zero_count();
    let minimal = c == cp_rigid_zero_bound(r);
    let positive = f.product().is_strictly_positive();

    let closed =
        (0..r).all(|i| (0..r).all(|j| i == j || (0..n).any(|row| zero(row, i) && !zero(row, j))));
    let col_counts: Vec<usize> = (0..r)
        .map(|j| (0..n).filter(|&i| zero(i, j)).count())
        .collect();
    let row_counts: Vec<usize> = (0..n)
        .map(|i| (0..r).filter(|&j| zero(i, j)).count())
        .collect();
    let rectangles = || {
        (1u32..1 << r).all(|alpha| {
            let cols: Vec<usize> = (0..r).filter(|&j| alpha & (1 << j) != 0).collect();
            let k = (0..n).filter(|&i| cols.iter().all(|&j| zero(i, j))).count();
            k <= r - cols.len()
        })
    };
    let from_bool = |ok: bool| {
        if ok {
            ConditionStatus::Pass
        } else {
            ConditionStatus::Fail
        }
    };
    let conditional = |applies: bool, ok: &dyn Fn() -> bool| {
        if applies {
            from_bool(ok())
        } else {
            ConditionStatus::NotApplicable
        }
    };
    use NecessaryCondition as N;
    let results = vec![
        (N::ZeroCount, from_bool(c >= cp_rigid_zero_bound(r))),
        (N::BoundaryClosedA, from_bool(closed)),
        (
            N::ZeroInEveryColumnAndRow,
            from_bool(col_counts.iter().all(|&k| k > 0)),
        ),
        (
            N::RowBound,
            conditional(positive, &|| {
                row_counts.iter().all(|&k| k <= r.saturating_sub(2))
            }),
        ),
        (
            N::ColumnBound,
            conditional(minimal, &|| col_counts.iter().all(|&k| k < r)),
        ),
        (N::ZeroRectangles, conditional(minimal, &rectangles)),
        (N::ProductPositive, conditional(minimal, &|| positive)),
    ];
    NecessaryConditionsReport {
        results: results
            .into_iter()
            .map(|(condition, status)| ConditionResult { condition, status })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational;

    fn identity(r: usize) -> SymmetricFactor {
        SymmetricFactor::new(RationalMatrix::identity(r)).unwrap()
    }

    #[test]
    fn skew_indices_are_row_major() {
        let r = 4;
        let mut expected = 0;
        for k in 0..r {
            for l in k + 1..r {
                assert_eq!(skew_index(r, k, l), expected);
                expected += 1;
            }
        }
        assert_eq!(expected, skew_dim(r));
    }

    #[test]
    fn identity_generators_are_signed_units() {
        let r = 3;
        let z = build_skew_generators(&identity(r));
        assert_eq!(z.len(), 6);
        for g in &z.generators {
            let (i, j) = (g.row, g.col);
            let mut expected = vec![rational(0); skew_dim(r)];
            if i < j {
                expected[skew_index(r, i, j)] = rational(1);
            } else {
                expected[skew_index(r, j, i)] = rational(-1);
            }
            assert_eq!(g.vector, expected);
        }
    }

    #[test]
    fn identity_is_rigid() {
        for r in 1..=4 {
            let cert = certify_cp(&identity(r));
            assert!(cert.classification.is_rigid(), "r = {r}");
            assert_eq!(cert.dim_w, 0);
        }
        let report = cp_kruskal_criterion(&identity(2), 100);
        assert_eq!(
            (report.kruskal_rank, report.bound, report.holds),
            (Some(1), 1, Some(true))
        );
    }

    #[test]
    fn positive_factor_is_not_rigid() {
        let f = SymmetricFactor::from_i64(&[[1, 2], [2, 1], [1, 1]]).unwrap();
        assert!(build_skew_generators(&f).is_empty());
        let cert = certify_cp(&f);
        assert_eq!(cert.classification, Classification::InteriorCertified);
        assert_eq!(cert.dim_w, 1);
        let conditions = cp_necessary_conditions(&f);
        assert_eq!(
            conditions.status(NecessaryCondition::ZeroCount),
            Some(ConditionStatus::Fail)
        );
        assert_eq!(cp_kruskal_criterion(&f, 10).holds, Some(true));
    }

    #[test]
    fn rank_one_has_no_skew_directions() {
        let f = SymmetricFactor::from_i64(&[[0], [3]]).unwrap();
        assert_eq!(skew_dim(1), 0);
        assert!(certify_cp(&f).classification.is_rigid());
    }

    #[test]
    fn identity_passes_count_and_pair_conditions() {
        let report = cp_necessary_conditions(&identity(3));
        assert_eq!(
            report.status(NecessaryCondition::ZeroCount),
            Some(ConditionStatus::Pass)
        );
        assert_eq!(
            report.status(NecessaryCondition::BoundaryClosedA),
            Some(ConditionStatus::Pass)
        );
    }

    #[test]
    fn full_zero_column_fails_column_bound() {
        // r = 3, four zeros with all three rows zero in column 3
        let f = SymmetricFactor::from_i64(&[[1, 2, 0], [2, 1, 0], [0, 1, 0], [1, 1, 1]]).unwrap();
        assert_eq!(f.zero_count(), cp_rigid_zero_bound(3));
        let report = cp_necessary_conditions(&f);
        assert_eq!(
            report.status(NecessaryCondition::ColumnBound),
            Some(ConditionStatus::Fail)
        );
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(matches!(
            SymmetricFactor::from_i64(&[[1, -1], [0, 1]]),
            Err(Error::NegativeEntry { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            SymmetricFactor::from_i64(&[[1, 1], [2, 2]]),
            Err(Error::RankDeficient { rank: 1, .. })
        ));
    }
}
