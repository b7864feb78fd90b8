//! Polyhedral cones given by generators: membership, lineality and the
//! relative-interior-of-zero test. Every question is reduced to feasibility
//! of `E x = b, x >= l`, answered by an exact phase-1 simplex with Bland's
//! rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix, RationalVector};

/// Finds `x` with `equalities * x = rhs` and `x >= lower_bounds`, or `None`
/// when no such point exists.
pub fn lp_feasible(
    equalities: &RationalMatrix,
    rhs: &[Rational],
    lower_bounds: &[Rational],
) -> Result<Option<RationalVector>> {
    let (p, q) = equalities.shape();
    if rhs.len() != p || lower_bounds.len() != q {
        return Err(Error::DimensionMismatch {
            op: "lp_feasible",
            left: (p, q),
            right: (rhs.len(), lower_bounds.len()),
        });
    }
    // shift x = y + l so that y >= 0
    let shifted_rhs: RationalVector = equalities
        .mul_vec(lower_bounds)?
        .into_iter()
        .zip(rhs)
        .map(|(el, b)| b - el)
        .collect();
    let Some(y) = Phase1::new(equalities, &shifted_rhs).solve() else {
        return Ok(None);
    };
    Ok(Some(
        y.into_iter()
            .zip(lower_bounds)
            .map(|(y, l)| y + l)
            .collect(),
    ))
}

/// Dense phase-1 tableau: `[E | I | b]` with one artificial per row and the
/// reduced-cost row for `min sum(artificials)` kept in `cost`.
struct Phase1 {
    rows: usize,
    vars: usize,
    width: usize,
    table: Vec<Rational>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Phase1 {
    fn new(equalities: &RationalMatrix, rhs: &[Rational]) -> Self {
        let (rows, q) = equalities.shape();
        let vars = q + rows;
        let width = vars + 1;
        let mut table = vec![Rational::zero(); rows * width];
        let mut cost = vec![Rational::zero(); width];
        for i in 0..rows {
            let flip = rhs[i].is_negative();
            for j in 0..q {
                let v = equalities.get(i, j);
                table[i * width + j] = if flip { -v.clone() } else { v.clone() };
            }
            table[i * width + q + i] = Rational::one();
            table[i * width + vars] = if flip {
                -rhs[i].clone()
            } else {
                rhs[i].clone()
            };
            for j in (0..q).chain(std::iter::once(vars)) {
                let v = &table[i * width + j];
                if !v.is_zero() {
                    cost[j] -= v;
                }
            }
        }
        Self {
            rows,
            vars,
            width,
            table,
            cost,
            basis: (q..q + rows).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> &Rational {
        &self.table[i * self.width + j]
    }

    fn solve(mut self) -> Option<RationalVector> {
        let q = self.vars - self.rows;
        // Bland: lowest-index improving column
        while let Some(enter) = (0..self.vars).find(|&j| self.cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                let a = self.at(i, enter);
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.at(i, self.vars) / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // phase 1 is bounded below by zero, so a leaving row always exists
            let (row, _) = leave.expect("phase-1 objective is bounded");
            self.pivot(row, enter);
        }
        // cost[rhs] holds minus the objective value
        if !self.cost[self.vars].is_zero() {
            return None;
        }
        let mut y = vec![Rational::zero(); q];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < q {
                y[b] = self.at(i, self.vars).clone();
            }
        }
        Some(y)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let inv = self.table[row * w + col].recip();
        for j in 0..w {
            let v = &mut self.table[row * w + j];
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row: Vec<Rational> = self.table[row * w..(row + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let factor = self.table[i * w + col].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.table[i * w + j] -= &factor * pv;
                }
            }
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero() {
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.cost[j] -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }
}

/// `cone(generators)` in `R^ambient_dim`. Duplicates and zero generators are
/// allowed; an empty list is the cone `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeByGenerators {
    ambient_dim: usize,
    generators: Vec<RationalVector>,
}

/// Coefficients `>= 1`, one per generator, whose weighted sum is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveCombinationWitness {
    pub coefficients: Vec<Rational>,
}

impl PositiveCombinationWitness {
    /// Re-checks the witness against `cone` with exact arithmetic.
    pub fn verify(&self, cone: &ConeByGenerators) -> bool {
        if self.coefficients.len() != cone.generators.len()
            || self.coefficients.iter().any(|c| *c < Rational::one())
        {
            return false;
        }
        let mut sum = vec![Rational::zero(); cone.ambient_dim];
        for (g, c) in cone.generators.iter().zip(&self.coefficients) {
            for (s, v) in sum.iter_mut().zip(g) {
                if !v.is_zero() {
                    *s += c * v;
                }
            }
        }
        sum.iter().all(Zero::is_zero)
    }
}

impl ConeByGenerators {
    pub fn new(ambient_dim: usize, generators: Vec<RationalVector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                op: "cone generators",
                left: (ambient_dim, 1),
                right: (g.len(), 1),
            });
        }
        Ok(Self {
            ambient_dim,
            generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    /// `ambient_dim x generators` matrix with the generators as columns.
    pub fn generator_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient_dim, &self.generators)
            .expect("generator lengths checked on construction")
    }

    /// Dimension of the linear span of the generators.
    pub fn span_rank(&self) -> usize {
        self.generator_matrix().rank()
    }

    pub fn member(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                op: "cone membership",
                left: (self.ambient_dim, 1),
                right: (v.len(), 1),
            });
        }
        let zeros = vec![Rational::zero(); self.generators.len()];
        Ok(lp_feasible(&self.generator_matrix(), v, &zeros)?.is_some())
    }

    /// A strictly positive combination of all generators equal to zero, which
    /// exists exactly when the cone is a linear subspace.
    pub fn zero_in_relative_interior(&self) -> Option<PositiveCombinationWitness> {
        let ones = vec![Rational::one(); self.generators.len()];
        let zero = vec![Rational::zero(); self.ambient_dim];
        lp_feasible(&self.generator_matrix(), &zero, &ones)
            .expect("shapes are consistent by construction")
            .map(|coefficients| PositiveCombinationWitness { coefficients })
    }

    /// Indices of generators `g` with `-g` in the cone, i.e. the generators
    /// lying in the lineality space.
    pub fn lineality_generators(&self) -> Vec<usize> {
        let z = self.generator_matrix();
        let zeros = vec![Rational::zero(); self.generators.len()];
        (0..self.generators.len())
            .filter(|&k| {
                let neg: RationalVector = self.generators[k].iter().map(|v| -v.clone()).collect();
                lp_feasible(&z, &neg, &zeros)
                    .expect("shapes are consistent by construction")
                    .is_some()
            })
            .collect()
    }

    /// Dimension of the largest linear subspace contained in the cone.
    pub fn lineality_dimension(&self) -> usize {
        let idx = self.lineality_generators();
        if idx.is_empty() {
            return 0;
        }
        self.generator_matrix().select_columns(&idx).rank()
    }
}

pub fn zero_in_relative_interior(cone: &ConeByGenerators) -> Option<PositiveCombinationWitness> {
    cone.zero_in_relative_interior()
}

pub fn lineality_dimension(cone: &ConeByGenerators) -> usize {
    cone.lineality_dimension()
}

pub fn member(cone: &ConeByGenerators, v: &[Rational]) -> Result<bool> {
    cone.member(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational;

    fn vecs(rows: &[&[i64]]) -> Vec<RationalVector> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rational(v)).collect())
            .collect()
    }

    fn triangles() -> ConeByGenerators {
        ConeByGenerators::new(
            9,
            vecs(&[
                &[0, 0, 0, 1, 0, 0, 1, 0, 0],
                &[0, 1, 0, 0, 0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 0, 1, 0, 0, 0],
                &[0, -1, -1, 0, 0, 0, 0, 0, 0],
                &[0, 0, 0, -1, 0, -1, 0, 0, 0],
                &[0, 0, 0, 0, 0, 0, -1, -1, 0],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn lp_examples() {
        let ones = vec![rational(1), rational(1)];
        let e = RationalMatrix::from_i64_rows(&[[1, 1]]);
        assert!(lp_feasible(&e, &[rational(0)], &ones).unwrap().is_none());

        let e = RationalMatrix::from_i64_rows(&[[1, -1]]);
        let x = lp_feasible(&e, &[rational(0)], &ones).unwrap().unwrap();
        assert_eq!(x[0], x[1]);
        assert!(x[0] >= rational(1));

        let z = triangles().generator_matrix();
        let x = lp_feasible(&z, &vec![rational(0); 9], &vec![rational(1); 6])
            .unwrap()
            .unwrap();
        assert!(z.mul_vec(&x).unwrap().iter().all(Zero::is_zero));
        assert!(x.iter().all(|v| *v >= rational(1)));
        // the only relation is the all-equal one, so the minimal point is all ones
        assert!(x.iter().all(|v| *v == x[0]));

        assert!(lp_feasible(&e, &[rational(0), rational(1)], &ones).is_err());
    }

    #[test]
    fn lp_handles_negative_rhs_and_bounds() {
        // x0 - x1 = -3, x >= (-1, 0)
        let e = RationalMatrix::from_i64_rows(&[[1, -1]]);
        let x = lp_feasible(&e, &[rational(-3)], &[rational(-1), rational(0)])
            .unwrap()
            .unwrap();
        assert_eq!(&x[0] - &x[1], rational(-3));
        assert!(x[0] >= rational(-1) && x[1] >= rational(0));

        // no rows at all: the bounds themselves are feasible
        let empty = RationalMatrix::zeros(0, 2);
        assert_eq!(
            lp_feasible(&empty, &[], &[rational(2), rational(3)]).unwrap(),
            Some(vec![rational(2), rational(3)])
        );
    }

    #[test]
    fn relint_examples() {
        let c = ConeByGenerators::new(2, vecs(&[&[1, 0], &[-1, 0]])).unwrap();
        let w = c.zero_in_relative_interior().unwrap();
        assert_eq!(w.coefficients, vec![rational(1), rational(1)]);
        assert!(w.verify(&c));

        let c = ConeByGenerators::new(2, vecs(&[&[1, 0]])).unwrap();
        assert!(c.zero_in_relative_interior().is_none());

        let t = triangles();
        let w = t.zero_in_relative_interior().unwrap();
        assert_eq!(w.coefficients, vec![rational(1); 6]);

        let empty = ConeByGenerators::new(3, vec![]).unwrap();
        assert_eq!(
            empty.zero_in_relative_interior().unwrap().coefficients,
            Vec::<Rational>::new()
        );
        assert_eq!(empty.lineality_dimension(), 0);
    }

    #[test]
    fn lineality_examples() {
        let c = ConeByGenerators::new(2, vecs(&[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(c.lineality_dimension(), 1);
        assert_eq!(triangles().lineality_dimension(), 5);
    }

    #[test]
    fn membership_examples() {
        let c = ConeByGenerators::new(2, vecs(&[&[1, 0]])).unwrap();
        assert!(c.member(&[rational(0), rational(0)]).unwrap());
        assert!(!c.member(&[rational(0), rational(1)]).unwrap());
        assert!(c.member(&[rational(0)]).is_err());

        let t = triangles();
        let neg: RationalVector = t.generators()[0].iter().map(|v| -v.clone()).collect();
        assert!(t.member(&neg).unwrap());

        let empty = ConeByGenerators::new(2, vec![]).unwrap();
        assert!(empty.member(&[rational(0), rational(0)]).unwrap());
        assert!(!empty.member(&[rational(1), rational(0)]).unwrap());
    }

    #[test]
    fn rejects_wrong_generator_length() {
        assert!(ConeByGenerators::new(2, vecs(&[&[1, 0, 0]])).is_err());
    }
}
