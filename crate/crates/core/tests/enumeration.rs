//! Enumeration against a brute-force oracle: every pattern with the given
//! zero count, filtered, reduced to the minimum encoding over its full orbit.

use std::collections::BTreeSet;

use nmf_rigidity::patterns::{
    canonical_form, enumerate_patterns, passes_filters, FilterSet, PatternGroupElement, ZeroPattern,
};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn orbit_min(p: &ZeroPattern) -> Vec<bool> {
    let (m, n, r) = p.shape();
    let swaps: &[bool] = if m == n { &[false, true] } else { &[false] };
    let (pm, pn, pr) = (permutations(m), permutations(n), permutations(r));
    let mut best: Option<Vec<bool>> = None;
    for rows in &pm {
        for cols in &pn {
            for inner in &pr {
                for &transposed in swaps {
                    let g = PatternGroupElement {
                        row_perm_a: rows.clone(),
                        col_perm_b: cols.clone(),
                        inner_perm: inner.clone(),
                        transposed,
                    };
                    let e = g.apply(p).unwrap().encoding();
                    if best.as_ref().is_none_or(|b| e < *b) {
                        best = Some(e);
                    }
                }
            }
        }
    }
    best.unwrap()
}

fn combinations(len: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, k, cur, f);
            cur.pop();
        }
    }
    rec(0, len, k, &mut Vec::new(), f);
}

fn brute_force(
    m: usize,
    n: usize,
    r: usize,
    zeros: usize,
    filters: &FilterSet,
) -> BTreeSet<Vec<bool>> {
    let mut out = BTreeSet::new();
    let cells = m * r + r * n;
    combinations(cells, zeros, &mut |pos| {
        let mut bits = vec![false; cells];
        for &i in pos {
            bits[i] = true;
        }
        let Ok(p) = ZeroPattern::new(m, n, r, &bits[..m * r], &bits[m * r..]) else {
            return;
        };
        if passes_filters(&p, filters) {
            out.insert(orbit_min(&p));
        }
    });
    out
}

fn assert_matches_oracle(m: usize, n: usize, r: usize, zeros: usize, filters: FilterSet) {
    let fast = enumerate_patterns(m, n, r, zeros, &filters).unwrap();
    let oracle = brute_force(m, n, r, zeros, &filters);
    let found: BTreeSet<Vec<bool>> = fast.iter().map(orbit_min).collect();
    assert_eq!(
        found.len(),
        fast.len(),
        "{m}x{n} r={r} z={zeros}: duplicate orbits"
    );
    assert_eq!(found, oracle, "{m}x{n} r={r} z={zeros}: orbit sets differ");
    for p in &fast {
        assert_eq!(canonical_form(p), *p, "output is not canonical");
        assert!(passes_filters(p, &filters));
    }
}

#[test]
fn rank_two_square_matches_brute_force() {
    for zeros in 0..=5 {
        assert_matches_oracle(3, 3, 2, zeros, FilterSet::new([]));
        assert_matches_oracle(3, 3, 2, zeros, FilterSet::theorem());
        assert_matches_oracle(3, 3, 2, zeros, FilterSet::table1(3));
    }
}

#[test]
fn rank_two_rectangular_matches_brute_force() {
    for zeros in 2..=4 {
        assert_matches_oracle(3, 4, 2, zeros, FilterSet::theorem());
        assert_matches_oracle(4, 3, 2, zeros, FilterSet::new([]));
    }
}

#[test]
fn rank_three_minimal_matches_brute_force() {
    assert_matches_oracle(3, 3, 3, 7, FilterSet::theorem());
    assert_matches_oracle(4, 4, 3, 7, FilterSet::theorem());
    assert_matches_oracle(4, 3, 3, 7, FilterSet::table1(3));
}
