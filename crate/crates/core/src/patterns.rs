//! Zero patterns of a factorization `(A, B)`: the combinatorial necessary
//! conditions for infinitesimal rigidity, canonical forms under the symmetry
//! group, and exhaustive enumeration of orbit representatives.
//!
//! Internally a pattern is a list of row masks of `A` and a list of column
//! masks of `B`. Inner index `j` lives at bit `r - 1 - j`, so comparing masks
//! as integers is the same as comparing the boolean rows lexicographically.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::RationalMatrix;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    m: usize,
    n: usize,
    r: usize,
    rows_a: Vec<u32>,
    cols_b: Vec<u32>,
}

/// Largest inner dimension supported by the mask representation.
pub const MAX_RANK: usize = 16;

impl ZeroPattern {
    /// `zeros_a` is `m x r` and `zeros_b` is `r x n`, both row-major, `true`
    /// marking a forced zero.
    pub fn new(m: usize, n: usize, r: usize, zeros_a: &[bool], zeros_b: &[bool]) -> Result<Self> {
        if r == 0 || r > MAX_RANK {
            return Err(Error::InvalidParameter(format!(
                "inner dimension must be in 1..={MAX_RANK}, got {r}"
            )));
        }
        if zeros_a.len() != m * r || zeros_b.len() != r * n {
            return Err(Error::DimensionMismatch {
                op: "zero pattern",
                left: (m * r, r * n),
                right: (zeros_a.len(), zeros_b.len()),
            });
        }
        let bit = |j: usize| 1u32 << (r - 1 - j);
        let rows_a = (0..m)
            .map(|i| (0..r).filter(|&j| zeros_a[i * r + j]).map(bit).sum())
            .collect();
        let cols_b = (0..n)
            .map(|j| (0..r).filter(|&i| zeros_b[i * n + j]).map(bit).sum())
            .collect();
        Self::from_masks(m, n, r, rows_a, cols_b)
    }

    fn from_masks(
        m: usize,
        n: usize,
        r: usize,
        rows_a: Vec<u32>,
        cols_b: Vec<u32>,
    ) -> Result<Self> {
        let full = full_mask(r);
        if let Some(i) = rows_a.iter().position(|&x| x == full) {
            return Err(Error::InvalidParameter(format!(
                "row {} of A is entirely zero",
                i + 1
            )));
        }
        if let Some(j) = cols_b.iter().position(|&x| x == full) {
            return Err(Error::InvalidParameter(format!(
                "column {} of B is entirely zero",
                j + 1
            )));
        }
        Ok(Self {
            m,
            n,
            r,
            rows_a,
            cols_b,
        })
    }

    /// The zero pattern of a pair of matrices `A` (`m x r`) and `B` (`r x n`).
    pub fn from_factors(a: &RationalMatrix, b: &RationalMatrix) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch {
                op: "zero pattern",
                left: a.shape(),
                right: b.shape(),
            });
        }
        let za: Vec<bool> = a.entries().iter().map(Zero::is_zero).collect();
        let zb: Vec<bool> = b.entries().iter().map(Zero::is_zero).collect();
        Self::new(a.rows(), b.cols(), a.cols(), &za, &zb)
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.r)
    }

    pub fn is_zero_a(&self, i: usize, j: usize) -> bool {
        self.rows_a[i] & self.bit(j) != 0
    }

    pub fn is_zero_b(&self, i: usize, j: usize) -> bool {
        self.cols_b[j] & self.bit(i) != 0
    }

    pub fn zero_count(&self) -> usize {
        self.zeros_in_a() + self.zeros_in_b()
    }

    pub fn zeros_in_a(&self) -> usize {
        self.rows_a.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn zeros_in_b(&self) -> usize {
        self.cols_b.iter().map(|x| x.count_ones() as usize).sum()
    }

    /// Zero counts of the columns of `A`.
    pub fn column_counts_a(&self) -> Vec<usize> {
        self.inner_counts(&self.rows_a)
    }

    /// Zero counts of the rows of `B`.
    pub fn row_counts_b(&self) -> Vec<usize> {
        self.inner_counts(&self.cols_b)
    }

    pub fn row_counts_a(&self) -> Vec<usize> {
        self.rows_a
            .iter()
            .map(|x| x.count_ones() as usize)
            .collect()
    }

    pub fn column_counts_b(&self) -> Vec<usize> {
        self.cols_b
            .iter()
            .map(|x| x.count_ones() as usize)
            .collect()
    }

    /// `(row, col)` positions, 0-based, of the zeros of `A` in row-major order.
    pub fn zeros_a(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.r {
                if self.is_zero_a(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn zeros_b(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.r {
            for j in 0..self.n {
                if self.is_zero_b(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Row-major bits of the `A` pattern followed by those of `B`.
    pub fn encoding(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.m * self.r + self.r * self.n);
        for i in 0..self.m {
            bits.extend((0..self.r).map(|j| self.is_zero_a(i, j)));
        }
        for i in 0..self.r {
            bits.extend((0..self.n).map(|j| self.is_zero_b(i, j)));
        }
        bits
    }

    fn bit(&self, j: usize) -> u32 {
        1 << (self.r - 1 - j)
    }

    fn inner_counts(&self, masks: &[u32]) -> Vec<usize> {
        (0..self.r)
            .map(|j| masks.iter().filter(|&&x| x & self.bit(j) != 0).count())
            .collect()
    }

    /// Parses the text format: a header `m n r`, `m` lines of `r` characters
    /// from `.0` for `A`, a blank line, then `r` lines of `n` characters for
    /// `B`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let p = parse_one_pattern(&mut lines)?;
        if let Some((ln, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("unexpected trailing content {line:?}"),
            });
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.m, self.n, self.r)?;
        let ch = |z: bool| if z { '0' } else { '.' };
        for i in 0..self.m {
            let line: String = (0..self.r).map(|j| ch(self.is_zero_a(i, j))).collect();
            writeln!(f, "{line}")?;
        }
        writeln!(f)?;
        for i in 0..self.r {
            let line: String = (0..self.n).map(|j| ch(self.is_zero_b(i, j))).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroPattern\n{self}")
    }
}

type Lines<'a> = std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>;

fn parse_one_pattern(lines: &mut Lines<'_>) -> Result<ZeroPattern> {
    while lines.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.next();
    }
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"m n r\"".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: ln + 1,
            message: format!("malformed header {header:?}"),
        })?;
    let [m, n, r] = dims[..] else {
        return Err(Error::Parse {
            line: ln + 1,
            message: format!("header must be \"m n r\", got {header:?}"),
        });
    };
    let za = read_block(lines, m, r, ln)?;
    match lines.next() {
        Some((_, l)) if l.trim().is_empty() => {}
        Some((ln, l)) => {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected a blank line between A and B, got {l:?}"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: ln + 1,
                message: "missing B block".into(),
            })
        }
    }
    let zb = read_block(lines, r, n, ln)?;
    ZeroPattern::new(m, n, r, &za, &zb)
}

fn read_block(lines: &mut Lines<'_>, rows: usize, width: usize, ln: usize) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(rows * width);
    for _ in 0..rows {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: ln + 1,
            message: "pattern ended early".into(),
        })?;
        let line = line.trim();
        if line.chars().count() != width {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected {width} characters, got {line:?}"),
            });
        }
        for c in line.chars() {
            match c {
                '0' => out.push(true),
                '.' => out.push(false),
                other => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Parses a stream of patterns separated by blank lines.
pub fn parse_patterns(text: &str) -> Result<Vec<ZeroPattern>> {
    let mut lines = text.lines().enumerate().peekable();
    let mut out = Vec::new();
    loop {
        while lines.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
            lines.next();
        }
        if lines.peek().is_none() {
            return Ok(out);
        }
        out.push(parse_one_pattern(&mut lines)?);
    }
}

/// Concatenates patterns, separated by blank lines.
pub fn format_patterns(patterns: &[ZeroPattern]) -> String {
    patterns
        .iter()
        .map(ZeroPattern::to_text)
        .collect::<Vec<_>>()
        .join("\n")
}

fn full_mask(r: usize) -> u32 {
    (1u32 << r) - 1
}

/// Minimum total zero count `r^2 - r + 1` of an infinitesimally rigid
/// factorization.
pub fn rigid_zero_bound(r: usize) -> usize {
    r * r - r + 1
}

/// For every ordered pair `i != j` some mask contains `i` but not `j`.
/// Equivalently every inner index occurs, and the masks containing `i`
/// intersect in exactly `{i}`.
fn boundary_closed(masks: &[u32], r: usize) -> bool {
    (0..r).all(|i| {
        let b = 1u32 << i;
        let meet = masks
            .iter()
            .filter(|&&x| x & b != 0)
            .fold(full_mask(r), |acc, &x| acc & x);
        // no mask contains i gives meet == full, which is only fine for r == 1
        meet == b
    })
}

fn bound_holds(masks: &[u32], r: usize, bound: usize) -> bool {
    (0..r).all(|i| masks.iter().filter(|&&x| x & (1 << i) != 0).count() <= bound)
}

/// Rows of `A` with a zero at `i` and not at `j` exist for every ordered pair.
pub fn boundary_closed_a(p: &ZeroPattern) -> bool {
    boundary_closed(&p.rows_a, p.r)
}

/// Columns of `B` with a zero at `i` and not at `j` exist for every ordered pair.
pub fn boundary_closed_b(p: &ZeroPattern) -> bool {
    boundary_closed(&p.cols_b, p.r)
}

/// True when no row of `A` and column of `B` have zeros covering every inner
/// index, i.e. every entry of `AB` has a nonzero term.
pub fn product_can_be_positive(p: &ZeroPattern) -> bool {
    let full = full_mask(p.r);
    p.rows_a
        .iter()
        .all(|&a| p.cols_b.iter().all(|&b| a | b != full))
}

/// Zero-count and boundary-closedness conditions on both factors.
pub fn check_wpoint(p: &ZeroPattern) -> bool {
    p.zero_count() >= rigid_zero_bound(p.r) && boundary_closed_a(p) && boundary_closed_b(p)
}

/// At most `r - 1` zeros in every column of `A` and every row of `B`,
/// without the zero-count precondition.
pub fn column_bound_holds(p: &ZeroPattern) -> bool {
    let bound = p.r - 1;
    bound_holds(&p.rows_a, p.r, bound) && bound_holds(&p.cols_b, p.r, bound)
}

fn require_minimal_count(p: &ZeroPattern, what: &str) -> Result<()> {
    let c = p.zero_count();
    if c != rigid_zero_bound(p.r) {
        return Err(Error::Precondition(format!(
            "{what} applies to patterns with exactly {} zeros, got {c}",
            rigid_zero_bound(p.r)
        )));
    }
    Ok(())
}

pub fn check_column_bound(p: &ZeroPattern) -> Result<bool> {
    require_minimal_count(p, "the column bound")?;
    Ok(column_bound_holds(p))
}

/// A pair of index sets breaking the zero-rectangle inequality. Indices are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroRectangleViolation {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// Rows of `A` vanishing on all of `alpha`.
    pub k: usize,
    /// Columns of `B` vanishing on all of `beta`.
    pub l: usize,
    pub lhs: usize,
    /// Right-hand side of the inequality, possibly negative.
    pub rhs: isize,
}

fn mask_to_indices(mask: u32, r: usize) -> Vec<usize> {
    (0..r).filter(|&j| mask & (1 << (r - 1 - j)) != 0).collect()
}

/// Searches all `alpha, beta` (as masks, in increasing order) for a violation
/// of `k|a| + l|b| <= (r-|a|)|a| + (r-|b|)|b| - |a\b||b\a|`.
pub fn find_zero_rectangle_violation(p: &ZeroPattern) -> Option<ZeroRectangleViolation> {
    let r = p.r;
    let covering = |masks: &[u32], s: u32| masks.iter().filter(|&&x| x & s == s).count();
    let ks: Vec<usize> = (0..1u32 << r).map(|s| covering(&p.rows_a, s)).collect();
    let ls: Vec<usize> = (0..1u32 << r).map(|s| covering(&p.cols_b, s)).collect();
    for alpha in 0..1u32 << r {
        let sa = alpha.count_ones() as usize;
        for beta in 0..1u32 << r {
            let sb = beta.count_ones() as usize;
            let lhs = ks[alpha as usize] * sa + ls[beta as usize] * sb;
            let overlap =
                (alpha & !beta).count_ones() as usize * (beta & !alpha).count_ones() as usize;
            let capacity = (r - sa) * sa + (r - sb) * sb;
            if lhs + overlap > capacity {
                return Some(ZeroRectangleViolation {
                    alpha: mask_to_indices(alpha, r),
                    beta: mask_to_indices(beta, r),
                    k: ks[alpha as usize],
                    l: ls[beta as usize],
                    lhs,
                    rhs: capacity as isize - overlap as isize,
                });
            }
        }
    }
    None
}

pub fn check_zero_rectangles(p: &ZeroPattern) -> Result<Option<ZeroRectangleViolation>> {
    require_minimal_count(p, "the zero-rectangle bound")?;
    Ok(find_zero_rectangle_violation(p))
}

/// An element of the symmetry group: row permutation of `A`, column
/// permutation of `B`, a simultaneous permutation of the inner index, and an
/// optional swap `(A, B) -> (B^T, A^T)` applied last.
///
/// Permutations map old positions to new ones: `perm[old] = new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGroupElement {
    pub row_perm_a: Vec<usize>,
    pub col_perm_b: Vec<usize>,
    pub inner_perm: Vec<usize>,
    pub transposed: bool,
}

fn is_permutation(p: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    p.len() == len
        && p.iter()
            .all(|&x| x < len && !std::mem::replace(&mut seen[x], true))
}

impl PatternGroupElement {
    pub fn identity(m: usize, n: usize, r: usize) -> Self {
        Self {
            row_perm_a: (0..m).collect(),
            col_perm_b: (0..n).collect(),
            inner_perm: (0..r).collect(),
            transposed: false,
        }
    }

    pub fn apply(&self, p: &ZeroPattern) -> Result<ZeroPattern> {
        let (m, n, r) = p.shape();
        if !is_permutation(&self.row_perm_a, m)
            || !is_permutation(&self.col_perm_b, n)
            || !is_permutation(&self.inner_perm, r)
        {
            return Err(Error::InvalidParameter(
                "group element does not match the pattern shape".into(),
            ));
        }
        let table = permute_table(&self.inner_perm, r);
        let mut rows_a = vec![0; m];
        for (i, &x) in p.rows_a.iter().enumerate() {
            rows_a[self.row_perm_a[i]] = table[x as usize];
        }
        let mut cols_b = vec![0; n];
        for (j, &x) in p.cols_b.iter().enumerate() {
            cols_b[self.col_perm_b[j]] = table[x as usize];
        }
        if self.transposed {
            ZeroPattern::from_masks(n, m, r, cols_b, rows_a)
        } else {
            ZeroPattern::from_masks(m, n, r, rows_a, cols_b)
        }
    }
}

/// Image of every mask under the inner permutation `perm[old] = new`.
fn permute_table(perm: &[usize], r: usize) -> Vec<u32> {
    (0..1u32 << r)
        .map(|x| {
            (0..r)
                .filter(|&j| x & (1 << (r - 1 - j)) != 0)
                .map(|j| 1u32 << (r - 1 - perm[j]))
                .sum()
        })
        .collect()
}

fn all_permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..r).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..r)
            .rev()
            .find(|&j| p[j] > p[i])
            .expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Mask tables for every inner permutation.
struct InnerSymmetry {
    r: usize,
    tables: Vec<Vec<u32>>,
}

impl InnerSymmetry {
    fn new(r: usize) -> Self {
        let tables = all_permutations(r)
            .iter()
            .map(|p| permute_table(p, r))
            .collect();
        Self { r, tables }
    }

    fn sorted_image(table: &[u32], masks: &[u32], buf: &mut Vec<u32>) {
        buf.clear();
        buf.extend(masks.iter().map(|&x| table[x as usize]));
        buf.sort_unstable();
    }

    /// Lexicographically least `(sorted rows of A, sorted columns of B)` over
    /// inner permutations and, when `m == n`, the transpose.
    fn canonical_masks(&self, rows_a: &[u32], cols_b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let n = cols_b.len();
        let mut best: Option<(Vec<u32>, Vec<u32>, Vec<u32>)> = None;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let orientations: &[(&[u32], &[u32])] = if rows_a.len() == n {
            &[(rows_a, cols_b), (cols_b, rows_a)]
        } else {
            &[(rows_a, cols_b)]
        };
        for &(ra, cb) in orientations {
            for table in &self.tables {
                Self::sorted_image(table, ra, &mut a);
                if let Some((best_a, _, _)) = &best {
                    if a > *best_a {
                        continue;
                    }
                }
                Self::sorted_image(table, cb, &mut b);
                let key_b = row_major_b(&b, self.r);
                let better = match &best {
                    None => true,
                    Some((best_a, best_key, _)) => a < *best_a || key_b < *best_key,
                };
                if better {
                    best = Some((a.clone(), key_b, b.clone()));
                }
            }
        }
        let (a, _, b) = best.expect("at least one permutation");
        (a, b)
    }

    fn is_inner_canonical(&self, rows: &[u32]) -> bool {
        let mut buf = Vec::new();
        self.tables.iter().all(|t| {
            Self::sorted_image(t, rows, &mut buf);
            buf.as_slice() >= rows
        })
    }
}

/// Row masks of `B` (column `j` at bit `n - 1 - j`) from its column masks.
fn row_major_b(cols_b: &[u32], r: usize) -> Vec<u32> {
    let n = cols_b.len();
    (0..r)
        .map(|i| {
            let bit = 1u32 << (r - 1 - i);
            cols_b
                .iter()
                .enumerate()
                .filter(|(_, &c)| c & bit != 0)
                .map(|(j, _)| 1u32 << (n - 1 - j))
                .sum()
        })
        .collect()
}

/// The lexicographically least pattern (by [`ZeroPattern::encoding`]) in the
/// orbit of `p`. The transpose is only used when `m == n`.
pub fn canonical_form(p: &ZeroPattern) -> ZeroPattern {
    let sym = InnerSymmetry::new(p.r);
    canonical_with(&sym, p)
}

fn canonical_with(sym: &InnerSymmetry, p: &ZeroPattern) -> ZeroPattern {
    let (a, b) = sym.canonical_masks(&p.rows_a, &p.cols_b);
    ZeroPattern {
        m: p.m,
        n: p.n,
        r: p.r,
        rows_a: a,
        cols_b: b,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    /// Zero count at least `r^2 - r + 1` and both factors boundary closed.
    Wpoint,
    /// At most `r - 1` zeros per column of `A` and per row of `B`.
    ColumnBound,
    /// Every row of `A` has a zero.
    RowCoverageA,
    /// Every column of `B` has a zero.
    ColumnCoverageB,
    /// No row of `A` and column of `B` have complementary zero supports, so
    /// `AB` can be strictly positive.
    ProductPositive,
    /// The zero-rectangle inequality (applied after orbit reduction).
    ZeroRectangles,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::Wpoint => "wpoint",
            Filter::ColumnBound => "column-bound",
            Filter::RowCoverageA => "row-coverage-a",
            Filter::ColumnCoverageB => "column-coverage-b",
            Filter::ProductPositive => "product-positive",
            Filter::ZeroRectangles => "zero-rectangles",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Filter::Wpoint,
            Filter::ColumnBound,
            Filter::RowCoverageA,
            Filter::ColumnCoverageB,
            Filter::ProductPositive,
            Filter::ZeroRectangles,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilterSet(BTreeSet<Filter>);

impl FilterSet {
    pub fn new(filters: impl IntoIterator<Item = Filter>) -> Self {
        Self(filters.into_iter().collect())
    }

    /// Only the zero-count and boundary-closedness theorem.
    pub fn theorem() -> Self {
        Self::new([Filter::Wpoint])
    }

    /// The class counted for the published orbit table: the theorem, the
    /// column bound, a product that can be strictly positive, a zero in every
    /// row of `A`, and a zero in every column of `B` unless `B` has exactly
    /// five columns.
    pub fn table1(n: usize) -> Self {
        let mut f = Self::new([
            Filter::Wpoint,
            Filter::ColumnBound,
            Filter::ProductPositive,
            Filter::RowCoverageA,
        ]);
        if n != 5 {
            f.0.insert(Filter::ColumnCoverageB);
        }
        f
    }

    pub fn with(mut self, filter: Filter) -> Self {
        self.0.insert(filter);
        self
    }

    pub fn contains(&self, f: Filter) -> bool {
        self.0.contains(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = Filter> + '_ {
        self.0.iter().copied()
    }
}

/// Applies every filter of the set to `p`. The zero-rectangle and column
/// bounds are evaluated without their zero-count precondition.
pub fn passes_filters(p: &ZeroPattern, filters: &FilterSet) -> bool {
    filters.iter().all(|f| match f {
        Filter::Wpoint => check_wpoint(p),
        Filter::ColumnBound => column_bound_holds(p),
        Filter::RowCoverageA => p.rows_a.iter().all(|&x| x != 0),
        Filter::ColumnCoverageB => p.cols_b.iter().all(|&x| x != 0),
        Filter::ProductPositive => product_can_be_positive(p),
        Filter::ZeroRectangles => find_zero_rectangle_violation(p).is_none(),
    })
}

/// Constraints on one factor, seen as a list of masks over the inner index.
#[derive(Clone, Copy)]
struct SideRules {
    len: usize,
    r: usize,
    max_total: usize,
    per_index_bound: usize,
    nonempty: bool,
    boundary_closed: bool,
}

/// All nondecreasing mask sequences (one representative per permutation
/// class of the lines) satisfying `rules`, grouped by zero count.
fn enumerate_side(rules: SideRules) -> Vec<Vec<Vec<u32>>> {
    let mut by_total = vec![Vec::new(); rules.max_total + 1];
    let lo = u32::from(rules.nonempty);
    let full = full_mask(rules.r);
    let mut current = Vec::with_capacity(rules.len);
    let mut counts = vec![0usize; rules.r];
    fn rec(
        rules: &SideRules,
        lo: u32,
        full: u32,
        total: usize,
        current: &mut Vec<u32>,
        counts: &mut [usize],
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if current.len() == rules.len {
            if !rules.boundary_closed || boundary_closed(current, rules.r) {
                out[total].push(current.clone());
            }
            return;
        }
        let start = current.last().copied().unwrap_or(lo);
        for x in start..full {
            let t = total + x.count_ones() as usize;
            if t > rules.max_total {
                continue;
            }
            let fits = (0..rules.r).all(|i| x & (1 << i) == 0 || counts[i] < rules.per_index_bound);
            if !fits {
                continue;
            }
            for (i, c) in counts.iter_mut().enumerate() {
                if x & (1 << i) != 0 {
                    *c += 1;
                }
            }
            current.push(x);
            rec(rules, lo, full, t, current, counts, out);
            current.pop();
            for (i, c) in counts.iter_mut().enumerate() {
                if x & (1 << i) != 0 {
                    *c -= 1;
                }
            }
        }
    }
    rec(
        &rules,
        lo,
        full,
        0,
        &mut current,
        &mut counts,
        &mut by_total,
    );
    by_total
}

/// Canonical orbit representatives of all `m x r` / `r x n` zero patterns
/// with exactly `zeros` zeros passing `filters`, sorted by encoding.
///
/// The two factors are enumerated independently up to line permutations,
/// the `A` side is further reduced by inner permutations, and each pair with
/// the right total is canonicalized and deduplicated.
pub fn enumerate_patterns(
    m: usize,
    n: usize,
    r: usize,
    zeros: usize,
    filters: &FilterSet,
) -> Result<Vec<ZeroPattern>> {
    if r == 0 || r > 8 {
        return Err(Error::InvalidParameter(format!(
            "enumeration supports inner dimension 1..=8, got {r}"
        )));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("shape must be nonzero".into()));
    }
    if zeros > (m + n) * r {
        return Ok(Vec::new());
    }
    if filters.contains(Filter::Wpoint) && zeros < rigid_zero_bound(r) {
        return Ok(Vec::new());
    }
    let bound = if filters.contains(Filter::ColumnBound) {
        r - 1
    } else {
        usize::MAX
    };
    let closed = filters.contains(Filter::Wpoint);
    let a_sides = enumerate_side(SideRules {
        len: m,
        r,
        max_total: zeros,
        per_index_bound: bound,
        nonempty: filters.contains(Filter::RowCoverageA),
        boundary_closed: closed,
    });
    let b_sides = enumerate_side(SideRules {
        len: n,
        r,
        max_total: zeros,
        per_index_bound: bound,
        nonempty: filters.contains(Filter::ColumnCoverageB),
        boundary_closed: closed,
    });
    let sym = InnerSymmetry::new(r);
    let positive = filters.contains(Filter::ProductPositive);
    let full = full_mask(r);

    let jobs: Vec<(&Vec<u32>, usize)> = a_sides
        .iter()
        .enumerate()
        .flat_map(|(t, list)| list.iter().map(move |a| (a, t)))
        .filter(|(a, _)| sym.is_inner_canonical(a))
        .collect();

    let found: BTreeSet<(Vec<u32>, Vec<u32>)> = jobs
        .par_iter()
        .map(|&(a, t)| {
            b_sides[zeros - t]
                .iter()
                .filter(|b| !positive || a.iter().all(|&x| b.iter().all(|&y| x | y != full)))
                .map(|b| sym.canonical_masks(a, b))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut x, mut y| {
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
            x.extend(y);
            x
        });

    let mut out: Vec<ZeroPattern> = found
        .into_iter()
        .map(|(rows_a, cols_b)| ZeroPattern {
            m,
            n,
            r,
            rows_a,
            cols_b,
        })
        .collect();
    out.sort_by_key(ZeroPattern::encoding_key);
    if filters.contains(Filter::ZeroRectangles) {
        out.retain(|p| find_zero_rectangle_violation(p).is_none());
    }
    Ok(out)
}

/// Zero pattern of a single symmetric factor `A` (`n x r`), up to row
/// permutations and column permutations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricZeroPattern {
    n: usize,
    r: usize,
    rows: Vec<u32>,
}

impl SymmetricZeroPattern {
    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.r)
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << (self.r - 1 - j)) != 0
    }

    pub fn zero_count(&self) -> usize {
        self.rows.iter().map(|x| x.count_ones() as usize).sum()
    }
}

impl fmt::Display for SymmetricZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.r)?;
        for i in 0..self.n {
            let line: String = (0..self.r)
                .map(|j| if self.is_zero(i, j) { '0' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricZeroPattern\n{self}")
    }
}

/// Orbit representatives of `n x r` symmetric-factor patterns with exactly
/// `zeros` zeros, at least `(r^2 - r) / 2 + 1` of them, and a row with a zero
/// at `i` but not at `j` for every ordered pair `i != j`.
pub fn enumerate_symmetric_patterns(
    n: usize,
    r: usize,
    zeros: usize,
) -> Result<Vec<SymmetricZeroPattern>> {
    if r == 0 || r > 8 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "symmetric enumeration needs n >= 1 and r in 1..=8, got n = {n}, r = {r}"
        )));
    }
    if zeros < r * (r - 1) / 2 + 1 || zeros > n * r {
        return Ok(Vec::new());
    }
    let sides = enumerate_side(SideRules {
        len: n,
        r,
        max_total: zeros,
        per_index_bound: usize::MAX,
        nonempty: false,
        boundary_closed: true,
    });
    let sym = InnerSymmetry::new(r);
    let mut out: Vec<SymmetricZeroPattern> = sides[zeros]
        .iter()
        .filter(|rows| sym.is_inner_canonical(rows))
        .map(|rows| SymmetricZeroPattern {
            n,
            r,
            rows: rows.clone(),
        })
        .collect();
    out.sort_by(|a, b| a.rows.cmp(&b.rows));
    Ok(out)
}

impl ZeroPattern {
    /// Sort key equal in order to [`ZeroPattern::encoding`].
    fn encoding_key(&self) -> (Vec<u32>, Vec<u32>) {
        (self.rows_a.clone(), row_major_b(&self.cols_b, self.r))
    }
}
