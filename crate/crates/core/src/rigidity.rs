//! Infinitesimal rigidity of a nonnegative factorization `M = AB`.
//!
//! Every zero of `A` or `B` contributes one generator of the dual cone of
//! infinitesimal motions, a vector of length `r^2` (row-major vectorization
//! of an `r x r` matrix). The factorization is infinitesimally rigid when
//! that cone is exactly the space of matrices with zero diagonal.

use std::fmt;

use num_traits::{One, Zero};

use crate::cone::{ConeByGenerators, PositiveCombinationWitness};
use crate::error::{Error, Factor, Result};
use crate::exactlin::{Rational, RationalMatrix, RationalVector};
use crate::patterns::{self, ZeroPattern};

/// Subset rank tests allowed when computing a Kruskal rank.
pub const DEFAULT_KRUSKAL_BUDGET: u64 = 1_000_000;

/// A validated pair `(A, B)` with `A` of size `m x r`, `B` of size `r x n`,
/// nonnegative entries and `rank(A) = rank(B) = r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationPair {
    a: RationalMatrix,
    b: RationalMatrix,
}

impl FactorizationPair {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch {
                op: "factorization",
                left: a.shape(),
                right: b.shape(),
            });
        }
        for (factor, mat) in [(Factor::A, &a), (Factor::B, &b)] {
            if let Some((i, j, v)) = mat.first_negative() {
                return Err(Error::NegativeEntry {
                    factor,
                    row: i + 1,
                    col: j + 1,
                    value: v.clone(),
                });
            }
        }
        // zero lines carry no information and have no zero pattern
        if let Some(i) = (0..a.rows()).find(|&i| a.row(i).iter().all(Zero::is_zero)) {
            return Err(Error::ZeroLine {
                factor: Factor::A,
                line: "row",
                index: i + 1,
            });
        }
        if let Some(j) = (0..b.cols()).find(|&j| b.column(j).iter().all(Zero::is_zero)) {
            return Err(Error::ZeroLine {
                factor: Factor::B,
                line: "column",
                index: j + 1,
            });
        }
        let r = a.cols();
        for (factor, mat) in [(Factor::A, &a), (Factor::B, &b)] {
            let rank = mat.rank();
            if rank != r {
                return Err(Error::RankDeficient {
                    factor,
                    rank,
                    expected: r,
                });
            }
        }
        Ok(Self { a, b })
    }

    pub fn from_i64<R: AsRef<[i64]>>(a: &[R], b: &[R]) -> Result<Self> {
        Self::new(
            RationalMatrix::from_i64_rows(a),
            RationalMatrix::from_i64_rows(b),
        )
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.b.cols()
    }

    pub fn r(&self) -> usize {
        self.a.cols()
    }

    pub fn product(&self) -> RationalMatrix {
        self.a
            .matmul(&self.b)
            .expect("shapes checked on construction")
    }

    pub fn zero_pattern(&self) -> ZeroPattern {
        ZeroPattern::from_factors(&self.a, &self.b).expect("full rank factors have no zero lines")
    }

    pub fn zero_count(&self) -> usize {
        let zeros = |m: &RationalMatrix| m.entries().iter().filter(|x| x.is_zero()).count();
        zeros(&self.a) + zeros(&self.b)
    }

    /// `(B^T, A^T)`, a factorization of `M^T`.
    pub fn transposed(&self) -> Self {
        Self {
            a: self.b.transpose(),
            b: self.a.transpose(),
        }
    }
}

/// Which zero a dual generator comes from. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    A { row: usize, col: usize },
    B { row: usize, col: usize },
}

impl fmt::Display for ZeroSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ZeroSource::A { row, col } => write!(f, "A-zero({},{})", row + 1, col + 1),
            ZeroSource::B { row, col } => write!(f, "B-zero({},{})", row + 1, col + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGenerator {
    pub vector: RationalVector,
    pub source: ZeroSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConeGenerators {
    pub r: usize,
    pub generators: Vec<DualGenerator>,
}

impl DualConeGenerators {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn vectors(&self) -> Vec<RationalVector> {
        self.generators.iter().map(|g| g.vector.clone()).collect()
    }

    pub fn cone(&self) -> ConeByGenerators {
        ConeByGenerators::new(self.r * self.r, self.vectors()).expect("generators have length r^2")
    }

    /// `r^2 x c` matrix with the generators as columns.
    pub fn matrix(&self) -> RationalMatrix {
        self.cone().generator_matrix()
    }
}

/// For a zero `A[i][j]` the generator is `a_i e_j^T` reshaped as the matrix
/// whose column `j` is row `i` of `A`; for a zero `B[i][j]` it is
/// `-e_i b_j^T`, whose row `i` is minus column `j` of `B`.
pub fn build_dual_generators(f: &FactorizationPair) -> DualConeGenerators {
    let r = f.r();
    let mut generators = Vec::with_capacity(f.zero_count());
    for i in 0..f.m() {
        for j in 0..r {
            if f.a.get(i, j).is_zero() {
                let mut v = vec![Rational::zero(); r * r];
                for p in 0..r {
                    v[p * r + j] = f.a.get(i, p).clone();
                }
                generators.push(DualGenerator {
                    vector: v,
                    source: ZeroSource::A { row: i, col: j },
                });
            }
        }
    }
    for i in 0..r {
        for j in 0..f.n() {
            if f.b.get(i, j).is_zero() {
                let mut v = vec![Rational::zero(); r * r];
                for q in 0..r {
                    v[i * r + q] = -f.b.get(q, j).clone();
                }
                generators.push(DualGenerator {
                    vector: v,
                    source: ZeroSource::B { row: i, col: j },
                });
            }
        }
    }
    DualConeGenerators { r, generators }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    InfinitesimallyRigid,
    /// `v_basis` spans the zero-diagonal part of `W`; each element squares to
    /// zero and any two anticommute.
    PartiallyInfinitesimallyRigid {
        v_basis: Vec<RationalMatrix>,
    },
    InteriorCertified,
    Undetermined,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::InfinitesimallyRigid => "InfinitesimallyRigid",
            Classification::PartiallyInfinitesimallyRigid { .. } => "PartiallyInfinitesimallyRigid",
            Classification::InteriorCertified => "InteriorCertified",
            Classification::Undetermined => "Undetermined",
        }
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self, Classification::InfinitesimallyRigid)
    }

    /// 1-based `(row, col)` positions where some V-basis element is nonzero.
    pub fn v_support(&self) -> Vec<(usize, usize)> {
        let Classification::PartiallyInfinitesimallyRigid { v_basis } = self else {
            return Vec::new();
        };
        let Some(first) = v_basis.first() else {
            return Vec::new();
        };
        let r = first.rows();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if v_basis.iter().any(|d| !d.get(i, j).is_zero()) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityCertificate {
    pub r: usize,
    pub generator_count: usize,
    pub span_rank: usize,
    pub lineality_dim: usize,
    pub relint_witness: Option<PositiveCombinationWitness>,
    pub dim_w: usize,
    pub classification: Classification,
    /// `None` when the subset budget ran out.
    pub kruskal_rank: Option<usize>,
}

/// The raw cone quantities shared by the nonsymmetric and symmetric checks.
#[derive(Debug, Clone)]
pub(crate) struct ConeSummary {
    pub span_rank: usize,
    pub lineality_dim: usize,
    pub witness: Option<PositiveCombinationWitness>,
}

impl ConeSummary {
    pub(crate) fn of(cone: &ConeByGenerators) -> Self {
        let span_rank = cone.span_rank();
        let witness = cone.zero_in_relative_interior();
        // a cone with 0 in its relative interior is its own span
        let lineality_dim = if witness.is_some() {
            span_rank
        } else {
            cone.lineality_dimension()
        };
        Self {
            span_rank,
            lineality_dim,
            witness,
        }
    }
}

/// Just the rigidity verdict: full off-diagonal span and a strictly positive
/// relation among all generators. Cheaper than a full certificate when the
/// answer is no.
pub fn is_infinitesimally_rigid(f: &FactorizationPair) -> bool {
    let r = f.r();
    let cone = build_dual_generators(f).cone();
    cone.span_rank() == r * r - r && cone.zero_in_relative_interior().is_some()
}

pub fn certify(f: &FactorizationPair) -> RigidityCertificate {
    certify_with_budget(f, DEFAULT_KRUSKAL_BUDGET)
}

pub fn certify_with_budget(f: &FactorizationPair, kruskal_budget: u64) -> RigidityCertificate {
    let r = f.r();
    let z = build_dual_generators(f);
    let summary = ConeSummary::of(&z.cone());
    let dim_w = r * r - summary.lineality_dim;
    let off_diagonal = r * r - r;

    let classification = if summary.witness.is_some()
        && summary.span_rank == off_diagonal
        && summary.lineality_dim == off_diagonal
    {
        Classification::InfinitesimallyRigid
    } else if dim_w == r * r {
        Classification::InteriorCertified
    } else if summary.witness.is_some() && dim_w > r && dim_w < r * r {
        match nilpotent_slice(&z) {
            Some(v_basis) => Classification::PartiallyInfinitesimallyRigid { v_basis },
            None => Classification::Undetermined,
        }
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
        kruskal_rank: kruskal_rank(&z, kruskal_budget),
    }
}

/// Basis of `V = {D in W : diag(D) = 0}` when `W = span(Z)^perp` and every
/// basis pair satisfies `D_i^2 = 0` and `D_i D_j + D_j D_i = 0`.
fn nilpotent_slice(z: &DualConeGenerators) -> Option<Vec<RationalMatrix>> {
    let r = z.r;
    let mut rows: Vec<RationalVector> = z.vectors();
    for k in 0..r {
        let mut e = vec![Rational::zero(); r * r];
        e[k * r + k] = Rational::one();
        rows.push(e);
    }
    let system = RationalMatrix::from_rows(rows).expect("rows have length r^2");
    let basis: Vec<RationalMatrix> = system
        .nullspace_basis()
        .into_iter()
        .map(|v| RationalMatrix::new(r, r, v).expect("length r^2"))
        .collect();
    if basis.is_empty() {
        return None;
    }
    for (i, d1) in basis.iter().enumerate() {
        for d2 in &basis[i..] {
            let s = d1.matmul(d2).ok()?;
            let t = d2.matmul(d1).ok()?;
            let anti = s
                .entries()
                .iter()
                .zip(t.entries())
                .all(|(x, y)| (x + y).is_zero());
            if !anti {
                return None;
            }
        }
    }
    Some(basis)
}

/// `r^2 - lineality_dim` of the dual cone: the dimension of the cone of
/// infinitesimal motions.
pub fn dim_w(f: &FactorizationPair) -> usize {
    let r = f.r();
    r * r - build_dual_generators(f).cone().lineality_dimension()
}

pub fn kruskal_rank(z: &DualConeGenerators, budget: u64) -> Option<usize> {
    kruskal_rank_of_columns(&z.matrix(), budget)
}

/// Largest `k` such that every `k` columns are linearly independent, found
/// by a descending search over column subsets. Returns `None` once more than
/// `budget` subsets would have to be tested.
pub fn kruskal_rank_of_columns(m: &RationalMatrix, budget: u64) -> Option<usize> {
    let c = m.cols();
    if c == 0 {
        return Some(0);
    }
    if (0..c).any(|j| m.column(j).iter().all(Zero::is_zero)) {
        return Some(0);
    }
    let mut tests = 0u64;
    for k in (1..=m.rank().min(c)).rev() {
        let mut subset: Vec<usize> = (0..k).collect();
        let mut all_independent = true;
        loop {
            tests += 1;
            if tests > budget {
                return None;
            }
            if m.select_columns(&subset).rank() < k {
                all_independent = false;
                break;
            }
            if !next_combination(&mut subset, c) {
                break;
            }
        }
        if all_independent {
            return Some(k);
        }
    }
    Some(0)
}

/// Advances a strictly increasing index list to the next `k`-subset of
/// `0..n` in lexicographic order.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
        return false;
    };
    subset[i] += 1;
    for j in i + 1..k {
        subset[j] = subset[j - 1] + 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KruskalReport {
    pub kruskal_rank: Option<usize>,
    /// `min(c, r^2 - r)`.
    pub bound: usize,
    /// `None` when the Kruskal rank is unknown.
    pub holds: Option<bool>,
}

/// Whether the generator matrix reaches the Kruskal rank `min(c, r^2 - r)`.
/// Together with local rigidity this forces infinitesimal rigidity.
pub fn check_kruskal_criterion(f: &FactorizationPair) -> KruskalReport {
    check_kruskal_criterion_with_budget(f, DEFAULT_KRUSKAL_BUDGET)
}

pub fn check_kruskal_criterion_with_budget(f: &FactorizationPair, budget: u64) -> KruskalReport {
    let z = build_dual_generators(f);
    let r = f.r();
    let bound = z.len().min(r * r - r);
    let k = kruskal_rank(&z, budget);
    KruskalReport {
        kruskal_rank: k,
        bound,
        holds: k.map(|k| k == bound),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl ConditionStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            ConditionStatus::Pass
        } else {
            ConditionStatus::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConditionStatus::Pass => "pass",
            ConditionStatus::Fail => "fail",
            ConditionStatus::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecessaryCondition {
    /// At least `r^2 - r + 1` zeros.
    ZeroCount,
    BoundaryClosedA,
    BoundaryClosedB,
    /// A zero in every column of `A` and every row of `B`.
    ZeroInEveryColumnAndRow,
    /// At most `r - 2` zeros per row of `A` and per column of `B`, when `AB`
    /// is strictly positive.
    RowBound,
    /// At most `r - 1` zeros per column of `A` and per row of `B`, when there
    /// are exactly `r^2 - r + 1` zeros.
    ColumnBound,
    /// The zero-rectangle inequality, when there are exactly `r^2 - r + 1`
    /// zeros.
    ZeroRectangles,
    /// `AB` strictly positive, when there are exactly `r^2 - r + 1` zeros.
    ProductPositive,
}

impl NecessaryCondition {
    pub fn name(self) -> &'static str {
        match self {
            NecessaryCondition::ZeroCount => "zero-count",
            NecessaryCondition::BoundaryClosedA => "boundary-closed-a",
            NecessaryCondition::BoundaryClosedB => "boundary-closed-b",
            NecessaryCondition::ZeroInEveryColumnAndRow => "zero-in-every-column-and-row",
            NecessaryCondition::RowBound => "row-bound",
            NecessaryCondition::ColumnBound => "column-bound",
            NecessaryCondition::ZeroRectangles => "zero-rectangles",
            NecessaryCondition::ProductPositive => "product-positive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: NecessaryCondition,
    pub status: ConditionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryConditionsReport {
    pub results: Vec<ConditionResult>,
}

impl NecessaryConditionsReport {
    /// No applicable condition failed.
    pub fn all_pass(&self) -> bool {
        self.results
            .iter()
            .all(|c| c.status != ConditionStatus::Fail)
    }

    pub fn status(&self, condition: NecessaryCondition) -> Option<ConditionStatus> {
        self.results
            .iter()
            .find(|c| c.condition == condition)
            .map(|c| c.status)
    }
}

pub fn necessary_conditions_report(f: &FactorizationPair) -> NecessaryConditionsReport {
    let p = f.zero_pattern();
    let r = f.r();
    let c = p.zero_count();
    let minimal = c == patterns::rigid_zero_bound(r);
    let positive = f.product().is_strictly_positive();
    let conditional = |applies: bool, ok: &dyn Fn() -> bool| {
        if applies {
            ConditionStatus::from_bool(ok())
        } else {
            ConditionStatus::NotApplicable
        }
    };
    use NecessaryCondition as N;
    let results = vec![
        (
            N::ZeroCount,
            ConditionStatus::from_bool(c >= patterns::rigid_zero_bound(r)),
        ),
        (
            N::BoundaryClosedA,
            ConditionStatus::from_bool(patterns::boundary_closed_a(&p)),
        ),
        (
            N::BoundaryClosedB,
            ConditionStatus::from_bool(patterns::boundary_closed_b(&p)),
        ),
        (
            N::ZeroInEveryColumnAndRow,
            ConditionStatus::from_bool(
                p.column_counts_a().iter().all(|&k| k > 0)
                    && p.row_counts_b().iter().all(|&k| k > 0),
            ),
        ),
        (
            N::RowBound,
            conditional(positive, &|| {
                let cap = r.saturating_sub(2);
                p.row_counts_a().iter().all(|&k| k <= cap)
                    && p.column_counts_b().iter().all(|&k| k <= cap)
            }),
        ),
        (
            N::ColumnBound,
            conditional(minimal, &|| patterns::column_bound_holds(&p)),
        ),
        (
            N::ZeroRectangles,
            conditional(minimal, &|| {
                patterns::find_zero_rectangle_violation(&p).is_none()
            }),
        ),
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
    use crate::fixtures::published_fixtures;

    fn triangles() -> FactorizationPair {
        let t = [[0, 1, 1], [1, 0, 1], [1, 1, 0]];
        FactorizationPair::from_i64(&t, &t).unwrap()
    }

    #[test]
    fn triangles_generators_match_printed_vectors() {
        let z = build_dual_generators(&triangles());
        assert_eq!(z.len(), 6);
        let as_i64 = |v: &RationalVector| -> Vec<i64> {
            v.iter()
                .map(|x| x.to_integer().try_into().unwrap())
                .collect()
        };
        assert_eq!(
            as_i64(&z.generators[0].vector),
            vec![0, 0, 0, 1, 0, 0, 1, 0, 0]
        );
        assert_eq!(z.generators[0].source, ZeroSource::A { row: 0, col: 0 });
        assert_eq!(
            as_i64(&z.generators[1].vector),
            vec![0, 1, 0, 0, 0, 0, 0, 1, 0]
        );
        assert_eq!(
            as_i64(&z.generators[3].vector),
            vec![0, -1, -1, 0, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            as_i64(&z.generators[5].vector),
            vec![0, 0, 0, 0, 0, 0, -1, -1, 0]
        );
        for g in &z.generators {
            for k in 0..3 {
                assert!(g.vector[k * 3 + k].is_zero());
            }
        }
    }

    #[test]
    fn triangles_certificate() {
        let cert = certify(&triangles());
        assert_eq!(cert.span_rank, 5);
        assert_eq!(cert.lineality_dim, 5);
        assert_eq!(cert.dim_w, 4);
        assert_eq!(cert.kruskal_rank, Some(5));
        assert!(!cert.classification.is_rigid());
        assert_eq!(dim_w(&triangles()), 4);
    }

    #[test]
    fn zero_lines_are_rejected() {
        let a = [[1, 0], [0, 1], [0, 0]];
        let b = [[1, 1], [1, 2]];
        assert!(matches!(
            FactorizationPair::from_i64(&a, &b),
            Err(Error::ZeroLine {
                factor: Factor::A,
                index: 3,
                ..
            })
        ));
        let a: [&[i64]; 2] = [&[1, 0], &[0, 1]];
        let b: [&[i64]; 2] = [&[1, 0, 1], &[2, 0, 1]];
        assert!(matches!(
            FactorizationPair::from_i64(&a, &b),
            Err(Error::ZeroLine {
                factor: Factor::B,
                index: 2,
                ..
            })
        ));
    }

    #[test]
    fn positive_factors_are_interior() {
        let f = FactorizationPair::from_i64(&[[1, 2], [3, 1]], &[[1, 1], [1, 2]]).unwrap();
        assert!(build_dual_generators(&f).is_empty());
        let cert = certify(&f);
        assert_eq!(cert.classification, Classification::InteriorCertified);
        assert_eq!(cert.dim_w, 4);
        let report = check_kruskal_criterion(&f);
        assert_eq!((report.bound, report.holds), (0, Some(true)));
    }

    #[test]
    fn positive_rank3_dim_w_is_full() {
        let a = [[1, 2, 3], [2, 1, 1], [1, 1, 4]];
        let f = FactorizationPair::from_i64(&a, &a).unwrap();
        assert_eq!(dim_w(&f), 9);
    }

    #[test]
    fn fixture_one_is_rigid() {
        let fx = &published_fixtures()[0];
        let f = FactorizationPair::new(fx.a.clone(), fx.b.clone()).unwrap();
        assert_eq!(build_dual_generators(&f).len(), 13);
        let cert = certify(&f);
        assert_eq!(cert.classification, Classification::InfinitesimallyRigid);
        assert_eq!(
            (cert.span_rank, cert.lineality_dim, cert.dim_w),
            (12, 12, 4)
        );
        assert_eq!(cert.kruskal_rank, Some(12));
        assert!(cert
            .relint_witness
            .as_ref()
            .unwrap()
            .verify(&build_dual_generators(&f).cone()));
        assert_eq!(check_kruskal_criterion(&f).holds, Some(true));
        assert!(necessary_conditions_report(&f).all_pass());
    }

    #[test]
    fn kruskal_rank_small_cases() {
        let m = RationalMatrix::from_i64_rows(&[[1, 1, 0], [0, 0, 1]]);
        assert_eq!(kruskal_rank_of_columns(&m, 100), Some(1));
        let id = RationalMatrix::identity(3);
        assert_eq!(kruskal_rank_of_columns(&id, 100), Some(3));
        assert_eq!(kruskal_rank_of_columns(&id, 0), None);
        let zc = RationalMatrix::from_i64_rows(&[[1, 0], [0, 0]]);
        assert_eq!(kruskal_rank_of_columns(&zc, 100), Some(0));
        assert_eq!(
            kruskal_rank_of_columns(&RationalMatrix::zeros(3, 0), 0),
            Some(0)
        );
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut s, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(s, vec![2, 3]);
    }

    #[test]
    fn invalid_factors_are_rejected() {
        let err = FactorizationPair::from_i64(&[[1, -1], [0, 1]], &[[1, 0], [0, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::NegativeEntry {
                factor: Factor::A,
                row: 1,
                col: 2,
                ..
            }
        ));
        let err = FactorizationPair::from_i64(&[[1, 1], [1, 1]], &[[1, 0], [0, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::RankDeficient {
                factor: Factor::A,
                rank: 1,
                expected: 2
            }
        ));
    }

    #[test]
    fn missing_zero_in_a_column_fails_coverage() {
        let f = FactorizationPair::from_i64(&[[1, 0], [1, 1]], &[[0, 1], [1, 1]]).unwrap();
        let report = necessary_conditions_report(&f);
        assert_eq!(
            report.status(NecessaryCondition::ZeroInEveryColumnAndRow),
            Some(ConditionStatus::Fail)
        );
        assert!(!report.all_pass());
    }
}
