//! Constructing factorizations: random rigid realizations of a zero pattern,
//! extension by strictly positive rows and columns, and the lift of a rigid
//! factorization to a partially rigid one of one higher rank.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cone::lp_feasible;
use crate::error::{Error, Result};
use crate::exactlin::{rational, Rational, RationalMatrix};
use crate::patterns::{check_wpoint, ZeroPattern};
use crate::rigidity::{
    certify, certify_with_budget, is_infinitesimally_rigid, Classification, FactorizationPair,
    RigidityCertificate, ZeroSource,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizationSearchConfig {
    /// Inclusive range for the nonzero entries.
    pub entry_low: u64,
    pub entry_high: u64,
    pub max_samples: u64,
    pub seed: u64,
}

impl Default for RealizationSearchConfig {
    fn default() -> Self {
        Self {
            entry_low: 1,
            entry_high: 1000,
            max_samples: 10_000,
            seed: 0,
        }
    }
}

impl RealizationSearchConfig {
    fn validate(&self) -> Result<()> {
        if self.entry_low == 0 || self.entry_low > self.entry_high {
            return Err(Error::InvalidParameter(format!(
                "entry range must satisfy 0 < low <= high, got [{}, {}]",
                self.entry_low, self.entry_high
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub pair: FactorizationPair,
    /// 0-based index of the successful sample.
    pub sample_index: u64,
    pub certificate: RigidityCertificate,
}

/// Sample `index` of the search: entries uniform in the configured range at
/// the nonzero positions of `p`, `A` row-major first, then `B`. Every sample
/// has its own ChaCha stream, so samples are independent of evaluation order.
pub fn sample_factors(
    p: &ZeroPattern,
    cfg: &RealizationSearchConfig,
    index: u64,
) -> (RationalMatrix, RationalMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let (m, n, r) = p.shape();
    let mut draw = |zero: bool| {
        if zero {
            Rational::zero()
        } else {
            Rational::from_integer(rng.gen_range(cfg.entry_low..=cfg.entry_high).into())
        }
    };
    let mut a = Vec::with_capacity(m * r);
    for i in 0..m {
        for j in 0..r {
            a.push(draw(p.is_zero_a(i, j)));
        }
    }
    let mut b = Vec::with_capacity(r * n);
    for i in 0..r {
        for j in 0..n {
            b.push(draw(p.is_zero_b(i, j)));
        }
    }
    (
        RationalMatrix::new(m, r, a).expect("sizes match"),
        RationalMatrix::new(r, n, b).expect("sizes match"),
    )
}

/// Searches for an infinitesimally rigid factorization with exactly the zero
/// pattern `p`. Samples are certified in parallel; the successful sample
/// with the smallest index is returned, so the result depends only on `cfg`.
pub fn realize_pattern(
    p: &ZeroPattern,
    cfg: &RealizationSearchConfig,
) -> Result<Option<Realization>> {
    cfg.validate()?;
    if !check_wpoint(p) {
        return Err(Error::Precondition(
            "pattern fails the zero-count or boundary condition, so no realization is rigid".into(),
        ));
    }
    let found = (0..cfg.max_samples).into_par_iter().find_map_first(|k| {
        let (a, b) = sample_factors(p, cfg, k);
        let pair = FactorizationPair::new(a, b).ok()?;
        is_infinitesimally_rigid(&pair).then_some((k, pair))
    });
    Ok(found.map(|(sample_index, pair)| Realization {
        certificate: certify(&pair),
        pair,
        sample_index,
    }))
}

/// Appends `r` rows `e_i + delta (1 - e_i)` to `A` and `r` columns
/// `e_j + delta 1` to `B`. No zeros are added, so the certificate is
/// unchanged. Global rigidity of the result is not claimed: that needs a
/// small enough `delta` with no effective bound.
pub fn extend_positive(f: &FactorizationPair, delta: &Rational) -> Result<FactorizationPair> {
    if *delta <= Rational::zero() {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let r = f.r();
    let new_rows: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|k| {
                    if k == i {
                        Rational::one()
                    } else {
                        delta.clone()
                    }
                })
                .collect()
        })
        .collect();
    let a = f.a().vstack(&RationalMatrix::from_rows(new_rows)?)?;
    let new_cols: Vec<Vec<Rational>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| {
                    if k == j {
                        Rational::one() + delta
                    } else {
                        delta.clone()
                    }
                })
                .collect()
        })
        .collect();
    let b = f.b().hstack(&RationalMatrix::from_columns(r, &new_cols)?)?;
    FactorizationPair::new(a, b)
}

/// How the interior point `w` of the cone over the columns of `B` was chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InteriorPoint {
    /// Sum of the columns of `B`.
    ColumnSum,
    /// `sum_j (1 + ((j + k) mod r)) b_j`.
    Weighted(usize),
    /// Any strictly positive combination of the columns, chosen by the solver.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub pair: FactorizationPair,
    pub interior_point: InteriorPoint,
    /// The appended column of `A`.
    pub new_column: Vec<Rational>,
}

/// Lifts an infinitesimally rigid `(A, B)` of rank `r` to a partially
/// infinitesimally rigid `(A', B')` of rank `r + 1`: `A'` gains a strictly
/// positive column, `B'` a zero row and then a column of ones.
pub fn lift_partially_rigid(f: &FactorizationPair) -> Result<FactorizationPair> {
    lift_partially_rigid_detailed(f).map(|l| l.pair)
}

/// The new column `x` must satisfy `sum_{A[j][i] = 0} c_(j,i) x_j = w_i` for
/// each inner index `i`, where `c` are the witness coefficients of the
/// `A`-zero generators and `w` is interior to the cone over the columns of
/// `B`. Rows of `A` without zeros get entry 1.
pub fn lift_partially_rigid_detailed(f: &FactorizationPair) -> Result<Lift> {
    let cert = certify_with_budget(f, 0);
    if !cert.classification.is_rigid() {
        return Err(Error::Precondition(format!(
            "lift needs an infinitesimally rigid factorization, input is {}",
            cert.classification
        )));
    }
    let witness = cert
        .relint_witness
        .expect("rigid certificates carry a witness");
    let r = f.r();
    let (m, n) = (f.m(), f.n());
    let z = crate::rigidity::build_dual_generators(f);

    // rows of A with at least one zero are the unknowns
    let mut has_zero = vec![false; m];
    let mut k_matrix = vec![vec![Rational::zero(); m]; r];
    for (g, c) in z.generators.iter().zip(&witness.coefficients) {
        if let ZeroSource::A { row, col } = g.source {
            k_matrix[col][row] += c;
            has_zero[row] = true;
        }
    }
    let rows_used: Vec<usize> = (0..m).filter(|&j| has_zero[j]).collect();
    let unknowns = rows_used.len();
    let k_cols: Vec<Vec<Rational>> = k_matrix
        .iter()
        .map(|row| rows_used.iter().map(|&j| row[j].clone()).collect())
        .collect();

    let columns: Vec<Vec<Rational>> = (0..n).map(|j| f.b().column(j)).collect();
    let weighted = |weights: &dyn Fn(usize) -> i64| -> Vec<Rational> {
        let mut w = vec![Rational::zero(); r];
        for (j, col) in columns.iter().enumerate() {
            let wt = rational(weights(j));
            for (wi, v) in w.iter_mut().zip(col) {
                *wi += &wt * v;
            }
        }
        w
    };
    let mut attempts: Vec<(InteriorPoint, Vec<Rational>)> =
        vec![(InteriorPoint::ColumnSum, weighted(&|_| 1))];
    for k in 0..r {
        attempts.push((
            InteriorPoint::Weighted(k),
            weighted(&|j| 1 + ((j + k) % r) as i64),
        ));
    }

    let assemble =
        |x_used: &[Rational]| -> Result<(FactorizationPair, Vec<Rational>)> {
            let mut x = vec![Rational::one(); m];
            for (&j, v) in rows_used.iter().zip(x_used) {
                x[j] = v.clone();
            }
            let a = f
                .a()
                .hstack(&RationalMatrix::from_columns(m, &[x.clone()])?)?;
            let b = f.b().vstack(&RationalMatrix::zeros(1, n))?.hstack(
                &RationalMatrix::from_columns(r + 1, &[vec![Rational::one(); r + 1]])?,
            )?;
            Ok((FactorizationPair::new(a, b)?, x))
        };
    let accept = |pair: &FactorizationPair| {
        matches!(
            certify_with_budget(pair, 0).classification,
            Classification::PartiallyInfinitesimallyRigid { .. }
        )
    };

    // K x - t w = 0 with x >= 1, t >= 1
    for (kind, w) in &attempts {
        let rows: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let mut row = k_cols[i].clone();
                row.push(-w[i].clone());
                row
            })
            .collect();
        let system = RationalMatrix::from_rows(rows)?;
        let lower = vec![Rational::one(); unknowns + 1];
        let Some(sol) = lp_feasible(&system, &vec![Rational::zero(); r], &lower)? else {
            continue;
        };
        let t = sol[unknowns].clone();
        let x_used: Vec<Rational> = sol[..unknowns].iter().map(|v| v / &t).collect();
        if let Ok((pair, x)) = assemble(&x_used) {
            if accept(&pair) {
                return Ok(Lift {
                    pair,
                    interior_point: kind.clone(),
                    new_column: x,
                });
            }
        }
    }

    // K x - B mu = 0 with x >= 1, mu >= 1
    let rows: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row = k_cols[i].clone();
            row.extend(columns.iter().map(|c| -c[i].clone()));
            row
        })
        .collect();
    let system = RationalMatrix::from_rows(rows)?;
    let lower = vec![Rational::one(); unknowns + n];
    if let Some(sol) = lp_feasible(&system, &vec![Rational::zero(); r], &lower)? {
        if let Ok((pair, x)) = assemble(&sol[..unknowns]) {
            if accept(&pair) {
                return Ok(Lift {
                    pair,
                    interior_point: InteriorPoint::Free,
                    new_column: x,
                });
            }
        }
    }
    Err(Error::LiftInfeasible {
        attempts: attempts.len() + 1,
    })
}
