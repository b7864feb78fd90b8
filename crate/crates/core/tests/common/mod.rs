//! Strategies, oracles and property bodies shared by the property suite and
//! the acceptance harness.

#![allow(dead_code)]

use std::sync::OnceLock;

use nmf_rigidity::cone::{lp_feasible, ConeByGenerators};
use nmf_rigidity::cpr::{certify_cp, SymmetricFactor};
use nmf_rigidity::exactlin::{ratio, rational, Rational, RationalMatrix};
use nmf_rigidity::fixtures::published_fixtures;
use nmf_rigidity::patterns::{canonical_form, PatternGroupElement, ZeroPattern};
use nmf_rigidity::realize::{sample_factors, RealizationSearchConfig};
use nmf_rigidity::rigidity::{
    build_dual_generators, certify, kruskal_rank_of_columns, necessary_conditions_report,
    Classification, FactorizationPair, RigidityCertificate,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 256;

type Check = Result<(), TestCaseError>;

// ---------------------------------------------------------------- strategies

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![2 => Just(0i64), 3 => 1i64..=6]
}

/// Small random factorizations with roughly 40% zeros.
pub fn random_pair() -> impl Strategy<Value = FactorizationPair> {
    (2usize..=4)
        .prop_flat_map(|r| (Just(r), r..=r + 2, r..=r + 2))
        .prop_flat_map(|(r, m, n)| {
            (
                Just((n, r)),
                prop::collection::vec(entry(), m * r),
                prop::collection::vec(entry(), r * n),
            )
        })
        .prop_filter_map("factors must have full rank", |((n, r), a, b)| {
            let a: Vec<Vec<i64>> = a.chunks(r).map(<[i64]>::to_vec).collect();
            let b: Vec<Vec<i64>> = b.chunks(n).map(<[i64]>::to_vec).collect();
            FactorizationPair::from_i64(&a, &b).ok()
        })
}

fn fixture_patterns() -> &'static [ZeroPattern] {
    static CELL: OnceLock<Vec<ZeroPattern>> = OnceLock::new();
    CELL.get_or_init(|| {
        published_fixtures()
            .iter()
            .map(|f| ZeroPattern::from_factors(&f.a, &f.b).unwrap())
            .collect()
    })
}

/// Random entries on the zero patterns of the published fixtures. Most of
/// these are rigid, which the uniform sampler almost never produces.
pub fn fixture_pattern_pair() -> impl Strategy<Value = FactorizationPair> {
    (0usize..15, any::<u64>()).prop_filter_map("factors must have full rank", |(k, seed)| {
        let cfg = RealizationSearchConfig {
            entry_low: 1,
            entry_high: 20,
            max_samples: 1,
            seed,
        };
        let (a, b) = sample_factors(&fixture_patterns()[k], &cfg, 0);
        FactorizationPair::new(a, b).ok()
    })
}

pub fn any_pair() -> impl Strategy<Value = FactorizationPair> {
    prop_oneof![random_pair(), fixture_pattern_pair()]
}

pub fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=4, 0usize..=8)
        .prop_flat_map(|(r, c)| (Just((r, c)), prop::collection::vec(-2i64..=2, r * c)))
        .prop_map(|((r, c), e)| {
            RationalMatrix::new(r, c, e.into_iter().map(rational).collect()).unwrap()
        })
}

pub fn cone_instance() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (
        prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..=5),
        prop::collection::vec(-3i64..=3, 3),
    )
}

pub fn pattern_instance() -> impl Strategy<Value = (ZeroPattern, u64)> {
    (1usize..=4, 1usize..=4, 1usize..=3)
        .prop_flat_map(|(m, n, r)| {
            let bit = prop::bool::weighted(0.35);
            (
                Just((m, n, r)),
                prop::collection::vec(bit, m * r),
                prop::collection::vec(bit, r * n),
                any::<u64>(),
            )
        })
        .prop_filter_map(
            "no zero row of A or column of B",
            |((m, n, r), za, zb, seed)| ZeroPattern::new(m, n, r, &za, &zb).ok().map(|p| (p, seed)),
        )
}

pub fn cp_identity_instance() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, u64)> {
    (2usize..=5).prop_flat_map(|r| {
        (
            Just(r),
            prop::collection::vec(1i64..=9, r),
            (0usize..=2).prop_flat_map(move |k| prop::collection::vec(1i64..=9, k * r)),
            any::<u64>(),
        )
    })
}

// ------------------------------------------------------------------- helpers

fn perm(len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    p.shuffle(rng);
    p
}

fn fingerprint(
    c: &RigidityCertificate,
) -> (&'static str, usize, usize, usize, usize, Option<usize>) {
    (
        c.classification.name(),
        c.generator_count,
        c.span_rank,
        c.lineality_dim,
        c.dim_w,
        c.kruskal_rank,
    )
}

fn matrix(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> RationalMatrix {
    let mut e = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            e.push(f(i, j));
        }
    }
    RationalMatrix::new(rows, cols, e).unwrap()
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=7), rng.gen_range(1..=7))
}

/// Positive rescaling `(S A D, D^-1 B T)` with diagonal `S`, `D`, `T`.
pub fn rescaled(f: &FactorizationPair, seed: u64) -> FactorizationPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n, r) = (f.m(), f.n(), f.r());
    let s: Vec<Rational> = (0..m).map(|_| random_positive(&mut rng)).collect();
    let d: Vec<Rational> = (0..r).map(|_| random_positive(&mut rng)).collect();
    let t: Vec<Rational> = (0..n).map(|_| random_positive(&mut rng)).collect();
    let a = matrix(m, r, |i, k| f.a().get(i, k) * &s[i] * &d[k]);
    let b = matrix(r, n, |k, j| f.b().get(k, j) / &d[k] * &t[j]);
    FactorizationPair::new(a, b).unwrap()
}

/// Rows of `A`, columns of `B` and the inner index permuted.
pub fn permuted(f: &FactorizationPair, seed: u64) -> FactorizationPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n, r) = (f.m(), f.n(), f.r());
    let rows = perm(m, &mut rng);
    let cols = perm(n, &mut rng);
    let inner = perm(r, &mut rng);
    let a = matrix(m, r, |i, k| f.a().get(rows[i], inner[k]).clone());
    let b = matrix(r, n, |k, j| f.b().get(inner[k], cols[j]).clone());
    FactorizationPair::new(a, b).unwrap()
}

pub fn random_group_element(p: &ZeroPattern, seed: u64) -> PatternGroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n, r) = p.shape();
    let row_perm_a = perm(m, &mut rng);
    let col_perm_b = perm(n, &mut rng);
    let inner_perm = perm(r, &mut rng);
    PatternGroupElement {
        row_perm_a,
        col_perm_b,
        inner_perm,
        transposed: m == n && rng.gen(),
    }
}

// ------------------------------------------------------------------- oracles

/// Largest `k` with every `k`-subset of columns independent, by testing every
/// subset.
pub fn kruskal_oracle(m: &RationalMatrix) -> usize {
    let c = m.cols();
    let mut best = 0;
    for k in 1..=c {
        let all = (0u32..1 << c)
            .filter(|s| s.count_ones() as usize == k)
            .all(|s| {
                let cols: Vec<usize> = (0..c).filter(|j| s >> j & 1 == 1).collect();
                m.select_columns(&cols).rank() == k
            });
        if !all {
            break;
        }
        best = k;
    }
    best
}

/// Membership in a cone of `R^3` by Caratheodory: `x` is in the cone iff it
/// is a nonnegative combination of some linearly independent generators.
pub fn membership_oracle(gens: &[Vec<Rational>], x: &[Rational]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    let g = gens.len();
    for s in 1u32..1 << g {
        let idx: Vec<usize> = (0..g).filter(|j| s >> j & 1 == 1).collect();
        let k = idx.len();
        if k > 3 {
            continue;
        }
        let mut cols: Vec<Vec<Rational>> = idx.iter().map(|&j| gens[j].clone()).collect();
        if RationalMatrix::from_columns(3, &cols).unwrap().rank() != k {
            continue;
        }
        cols.push(x.to_vec());
        let (rref, pivots) = RationalMatrix::from_columns(3, &cols).unwrap().rref();
        if pivots.contains(&k) {
            continue;
        }
        if (0..k).all(|i| *rref.get(i, k) >= Rational::zero()) {
            return true;
        }
    }
    false
}

/// `dim W` from the primal side: the generators `z` for which `<z, D> > 0` is
/// impossible on `W = {D : <z, D> >= 0 for all z}` are the implicit
/// equalities, and `W` spans their orthogonal complement.
pub fn dim_w_oracle(f: &FactorizationPair) -> usize {
    let r2 = f.r() * f.r();
    let z = build_dual_generators(f).vectors();
    let c = z.len();
    // variables D+ (r2), D- (r2), slack (c), all >= 0
    let width = 2 * r2 + c;
    let row = |g: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); width];
        for (q, x) in g.iter().enumerate() {
            v[q] = x.clone();
            v[r2 + q] = -x;
        }
        v
    };
    let mut base: Vec<Vec<Rational>> = Vec::with_capacity(c + 1);
    for (l, g) in z.iter().enumerate() {
        let mut v = row(g);
        v[2 * r2 + l] = -Rational::one();
        base.push(v);
    }
    let lower = vec![Rational::zero(); width];
    let implicit: Vec<Vec<Rational>> = z
        .iter()
        .filter(|g| {
            let mut rows = base.clone();
            rows.push(row(g));
            let mut rhs = vec![Rational::zero(); c];
            rhs.push(Rational::one());
            let system = RationalMatrix::from_rows(rows).unwrap();
            lp_feasible(&system, &rhs, &lower).unwrap().is_none()
        })
        .cloned()
        .collect();
    if implicit.is_empty() {
        return r2;
    }
    r2 - RationalMatrix::from_rows(implicit).unwrap().rank()
}

// ---------------------------------------------------------------- properties

pub fn certificate_invariance(f: &FactorizationPair, seed: u64) -> Check {
    let base = fingerprint(&certify(f));
    let scaled = certify(&rescaled(f, seed));
    prop_assert_eq!(fingerprint(&scaled), base, "rescaling");
    let moved = certify(&permuted(f, seed));
    prop_assert_eq!(fingerprint(&moved), base, "permutation");
    let swapped = certify(&f.transposed());
    prop_assert_eq!(fingerprint(&swapped), base, "transpose");
    Ok(())
}

pub fn duality_identity(f: &FactorizationPair) -> Check {
    let r = f.r();
    let cert = certify(f);
    let oracle = dim_w_oracle(f);
    prop_assert_eq!(cert.lineality_dim + oracle, r * r);
    prop_assert_eq!(cert.dim_w, oracle);
    Ok(())
}

pub fn witness_reverifies(f: &FactorizationPair) -> Check {
    let cert = certify(f);
    let z = build_dual_generators(f);
    let Some(w) = &cert.relint_witness else {
        return Ok(());
    };
    prop_assert_eq!(w.coefficients.len(), z.len());
    prop_assert!(w.coefficients.iter().all(|c| *c >= Rational::one()));
    let r2 = f.r() * f.r();
    let mut sum = vec![Rational::zero(); r2];
    for (g, c) in z.generators.iter().zip(&w.coefficients) {
        for (s, v) in sum.iter_mut().zip(&g.vector) {
            *s += c * v;
        }
    }
    prop_assert!(sum.iter().all(Zero::is_zero), "Z lambda != 0");
    prop_assert!(w.verify(&z.cone()));
    Ok(())
}

pub fn necessary_conditions_consistent(f: &FactorizationPair) -> Check {
    let cert = certify(f);
    if cert.classification != Classification::InfinitesimallyRigid {
        return Ok(());
    }
    let report = necessary_conditions_report(f);
    prop_assert!(report.all_pass(), "rigid but {:?}", report);
    let r = f.r();
    if f.zero_count() == r * r - r + 1 {
        prop_assert!(f.product().is_strictly_positive());
    }
    Ok(())
}

pub fn kruskal_matches_oracle(m: &RationalMatrix) -> Check {
    prop_assert_eq!(
        kruskal_rank_of_columns(m, u64::MAX),
        Some(kruskal_oracle(m))
    );
    Ok(())
}

pub fn membership_matches_oracle(gens: &[Vec<i64>], x: &[i64]) -> Check {
    let gens: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| g.iter().copied().map(rational).collect())
        .collect();
    let x: Vec<Rational> = x.iter().copied().map(rational).collect();
    let cone = ConeByGenerators::new(3, gens.clone()).unwrap();
    prop_assert_eq!(cone.member(&x).unwrap(), membership_oracle(&gens, &x));
    Ok(())
}

pub fn canonical_form_is_orbit_invariant(p: &ZeroPattern, seed: u64) -> Check {
    let c = canonical_form(p);
    prop_assert_eq!(canonical_form(&c), c.clone(), "not idempotent");
    prop_assert_eq!(c.zero_count(), p.zero_count());
    let g = random_group_element(p, seed);
    let q = g.apply(p).unwrap();
    prop_assert_eq!(canonical_form(&q), c, "differs on {:?}", g);
    Ok(())
}

pub fn cp_identity_is_rigid(r: usize, scale: &[i64], extra: &[i64], seed: u64) -> Check {
    let mut rows: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { scale[i] } else { 0 }).collect())
        .collect();
    rows.extend(extra.chunks(r).map(<[i64]>::to_vec));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rows.shuffle(&mut rng);
    let f = SymmetricFactor::from_i64(&rows).unwrap();
    let cert = certify_cp(&f);
    prop_assert_eq!(cert.classification, Classification::InfinitesimallyRigid);
    prop_assert_eq!(cert.dim_w, 0);
    Ok(())
}
