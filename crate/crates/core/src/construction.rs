//! The border construction `A_n`, closed forms for its margins and objective,
//! and the structural conditions observed on maximizers.
//!
//! `A′_n` puts `n², n²−1, n²−3, …, (n−1)²+2` along the first row and
//! `n²−2, n²−4, …, (n−1)²+1` down the first column around a copy of
//! `A_{n−1}`. `A_n` then swaps `(1,k)` with `(k,1)` for every odd `k ≥ 2`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{self, ExactInt};
use crate::grid::{validate_grid, Grid, Margins};

/// Writes level `m` of the construction (a block of side `m` anchored at the
/// bottom-right corner of an `n×n` row-major buffer).
fn write_border(entries: &mut [i64], n: usize, m: usize, swap: bool) {
    let o = n - m;
    let top = (m * m) as i64;
    entries[o * n + o] = top;
    for j in 1..m {
        entries[o * n + o + j] = top - (2 * j as i64 - 1);
        entries[(o + j) * n + o] = top - 2 * j as i64;
    }
    if swap {
        // 1-based odd k in 2..=m is 0-based offset k-1 = 2, 4, ...
        for off in (2..m).step_by(2) {
            entries.swap(o * n + o + off, (o + off) * n + o);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Swaps {
    None,
    Inner,
    All,
}

fn build_levels(n: usize, swaps: Swaps) -> Result<Grid> {
    if n == 0 {
        return Err(Error::EmptyGrid);
    }
    if n > 3_000_000_000 {
        return Err(Error::Overflow);
    }
    let mut entries = vec![0i64; n * n];
    for m in 1..=n {
        let swap = match swaps {
            Swaps::None => false,
            Swaps::Inner => m < n,
            Swaps::All => true,
        };
        write_border(&mut entries, n, m, swap);
    }
    Grid::new(n, entries)
}

/// `A′_n`: a fresh border around `A_{n−1}`, before the final swap.
pub fn build_prime(n: usize) -> Result<Grid> {
    build_levels(n, Swaps::Inner)
}

/// `A_n`.
pub fn build(n: usize) -> Result<Grid> {
    build_levels(n, Swaps::All)
}

/// Nested borders with no swap at any level. Its margins are the ones the
/// primed closed forms of [`closed_margin`] describe; it coincides with
/// [`build_prime`] for `n ≤ 3`.
pub fn build_unswapped(n: usize) -> Result<Grid> {
    build_levels(n, Swaps::None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginKind {
    Row,
    Col,
}

/// Closed-form margin of the construction, indexed the way the derivation
/// indexes it: returns `R_{n−k+1}` or `C_{n−k+1}`. The double sums are
/// evaluated term by term.
///
/// With `primed` the sums describe the swap-free nested border matrix
/// ([`build_unswapped`]); without it the parity correction yields the
/// margins of `A_n`. The swap-free matrix differs from [`build_prime`] from
/// `n = 4` on, because `A′_n` nests an already swapped `A_{n−1}`.
pub fn closed_margin(n: usize, k: usize, which: MarginKind, primed: bool) -> Result<ExactInt> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    let kk = exact::from_usize(k)?;
    let k2 = exact::mul(kk, kk)?;
    let lead: ExactInt = match which {
        MarginKind::Row => 0,
        MarginKind::Col => 1,
    };
    let tail_offset: ExactInt = match which {
        MarginKind::Row => 1,
        MarginKind::Col => 2,
    };

    let mut total: ExactInt = 0;
    for j in 1..=(n - k) {
        let mut inner = exact::add(lead, k2)?;
        for l in 1..=j {
            let l = exact::from_usize(l)?;
            inner = exact::add(inner, 2 * kk - 1 + 2 * (l - 1))?;
        }
        total = exact::add(total, inner)?;
    }
    total = exact::add(total, k2)?;
    for j in 1..k {
        let j = exact::from_usize(j)?;
        total = exact::add(total, exact::sub(k2, tail_offset + 2 * (j - 1))?)?;
    }

    if primed {
        return Ok(total);
    }
    let nn = exact::from_usize(n)?;
    let mut shift = nn + 1 - 2 * kk;
    if n.is_multiple_of(2) {
        shift += if k.is_multiple_of(2) { 1 } else { -1 };
    }
    let shift = exact::div_exact(shift, 2, "closed_margin")?;
    match which {
        MarginKind::Row => exact::add(total, shift),
        MarginKind::Col => exact::sub(total, shift),
    }
}

/// Closed form of `s(A_n²)`, split by parity of `n`.
pub fn closed_s_squared(n: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::EmptyGrid);
    }
    let nn = exact::from_usize(n)?;
    let mut pow = [1 as ExactInt; 7];
    for i in 1..7 {
        pow[i] = exact::mul(pow[i - 1], nn)?;
    }
    let constant: ExactInt = if n % 2 == 1 { 13 } else { -92 };
    let terms = [
        exact::mul(120, pow[6])?,
        exact::mul(14, pow[5])?,
        exact::mul(182, pow[4])?,
        exact::mul(105, pow[2])?,
        exact::mul(-14, pow[1])?,
        constant,
    ];
    let poly = terms.iter().try_fold(0, |acc, &t| exact::add(acc, t))?;
    exact::div_exact(exact::mul(nn, poly)?, 420, "closed_s_squared")
}

/// A condition that failed, with the offending location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// (a): `|g[i][j] − g[j][i]| > 1` (0-based indices).
    Asymmetric { i: usize, j: usize, diff: i64 },
    /// (b): row `i` and column `i` sums differ.
    UnbalancedLine { i: usize, diff: ExactInt },
    /// (c): `|R_i − C_i| ≠ 1`.
    OffByNotOne { i: usize, diff: ExactInt },
    /// (c): the number of rows with `R_i > C_i` is not `n/2`.
    PositiveCount { count: usize },
    /// (d): value missing from the main diagonal.
    NotOnDiagonal { value: i64 },
}

/// Outcome of [`check_conditions`]. Exactly one of `cond_b` / `cond_c` is
/// `Some`, depending on the parity of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub cond_a: bool,
    pub cond_b: Option<bool>,
    pub cond_c: Option<bool>,
    pub cond_d: bool,
    pub witnesses: Vec<Witness>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.cond_a && self.cond_b.unwrap_or(true) && self.cond_c.unwrap_or(true) && self.cond_d
    }
}

/// Checks conditions (a)–(d) on a permutation grid.
///
/// (c) is read on rows only: the column differences are the negatives of
/// the row differences.
pub fn check_conditions(g: &Grid) -> Result<ConditionReport> {
    validate_grid(g).map_err(|_| Error::NotPermutation)?;
    let n = g.n();
    let mut witnesses = Vec::new();

    let mut cond_a = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = g.get(i, j) - g.get(j, i);
            if diff.abs() > 1 {
                cond_a = false;
                witnesses.push(Witness::Asymmetric { i, j, diff });
            }
        }
    }

    let m = Margins::of(g)?;
    let diffs: Vec<ExactInt> =
        m.rows.iter().zip(&m.cols).map(|(r, c)| exact::sub(*r, *c)).collect::<Result<_>>()?;

    let (cond_b, cond_c) = if n % 2 == 1 {
        let mut ok = true;
        for (i, &diff) in diffs.iter().enumerate() {
            if diff != 0 {
                ok = false;
                witnesses.push(Witness::UnbalancedLine { i, diff });
            }
        }
        (Some(ok), None)
    } else {
        let mut ok = true;
        for (i, &diff) in diffs.iter().enumerate() {
            if diff.abs() != 1 {
                ok = false;
                witnesses.push(Witness::OffByNotOne { i, diff });
            }
        }
        let count = diffs.iter().filter(|&&d| d > 0).count();
        if count != n / 2 {
            ok = false;
            witnesses.push(Witness::PositiveCount { count });
        }
        (None, Some(ok))
    };

    let top = (n * n) as i64;
    let on_diagonal = |v: i64| (0..n).any(|i| g.get(i, i) == v);
    let mut cond_d = true;
    for value in [1, top] {
        if !on_diagonal(value) {
            cond_d = false;
            witnesses.push(Witness::NotOnDiagonal { value });
        }
        if top == 1 {
            break;
        }
    }

    Ok(ConditionReport { cond_a, cond_b, cond_c, cond_d, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::objective;

    fn g(rows: &[&[i64]]) -> Grid {
        Grid::from_rows(rows).unwrap()
    }

    const REFERENCE_A7: [[i64; 7]; 7] = [
        [49, 48, 45, 44, 41, 40, 37],
        [47, 36, 35, 32, 31, 28, 27],
        [46, 34, 25, 24, 21, 20, 17],
        [43, 33, 23, 16, 15, 12, 11],
        [42, 30, 22, 14, 9, 8, 5],
        [39, 29, 19, 13, 7, 4, 3],
        [38, 26, 18, 10, 6, 2, 1],
    ];

    #[test]
    fn build_prime_examples() {
        assert_eq!(build_prime(1).unwrap(), g(&[&[1]]));
        assert_eq!(build_prime(2).unwrap(), g(&[&[4, 3], &[2, 1]]));
        let p7 = build_prime(7).unwrap();
        assert_eq!(p7.rows().next().unwrap(), [49, 48, 46, 44, 42, 40, 38]);
        let first_col: Vec<i64> = (0..7).map(|i| p7.get(i, 0)).collect();
        assert_eq!(first_col, [49, 47, 45, 43, 41, 39, 37]);
    }

    #[test]
    fn unswapped_agrees_with_prime_for_small_n() {
        for n in 1..=3 {
            assert_eq!(build_unswapped(n).unwrap(), build_prime(n).unwrap());
        }
        assert_ne!(build_unswapped(4).unwrap(), build_prime(4).unwrap());
    }

    #[test]
    fn build_examples() {
        assert_eq!(build(7).unwrap(), Grid::from_rows(&REFERENCE_A7).unwrap());
        assert_eq!(build(3).unwrap(), g(&[&[9, 8, 5], &[7, 4, 3], &[6, 2, 1]]));
        assert_eq!(build(2).unwrap(), g(&[&[4, 3], &[2, 1]]));
        assert_eq!(build(0), Err(Error::EmptyGrid));
    }

    #[test]
    fn closed_margin_examples() {
        use MarginKind::*;
        assert_eq!(closed_margin(2, 1, Row, true), Ok(3));
        assert_eq!(closed_margin(2, 1, Col, true), Ok(4));
        assert_eq!(closed_margin(3, 3, Row, true), Ok(23));
        assert_eq!(closed_margin(3, 3, Row, false), Ok(22));
        assert_eq!(closed_margin(2, 2, Row, false), Ok(7));
        assert_eq!(closed_margin(2, 2, Row, true), Ok(7));
        // R_1 of the swap-free n=4 matrix: 16+15+13+11
        assert_eq!(closed_margin(4, 4, Row, true), Ok(55));
        assert_eq!(closed_margin(3, 0, Row, true), Err(Error::IndexOutOfRange { index: 0, size: 3 }));
        assert_eq!(closed_margin(3, 4, Col, true), Err(Error::IndexOutOfRange { index: 4, size: 3 }));
    }

    #[test]
    fn closed_s_squared_examples() {
        assert_eq!(closed_s_squared(1), Ok(1));
        assert_eq!(closed_s_squared(3), Ok(761));
        assert_eq!(closed_s_squared(4), Ok(5276));
        assert_eq!(objective(&build(3).unwrap()), Ok(22 * 22 + 14 * 14 + 9 * 9));
    }

    #[test]
    fn conditions_on_a7() {
        let rep = check_conditions(&build(7).unwrap()).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.cond_b, Some(true));
        assert_eq!(rep.cond_c, None);
    }

    #[test]
    fn condition_d_counterexample() {
        let rep = check_conditions(&g(&[&[2, 1], &[3, 4]])).unwrap();
        assert!(!rep.cond_d);
        assert!(rep.witnesses.contains(&Witness::NotOnDiagonal { value: 1 }));
    }

    #[test]
    fn condition_c_on_a2() {
        let rep = check_conditions(&g(&[&[4, 3], &[2, 1]])).unwrap();
        assert_eq!(rep.cond_c, Some(true));
        assert_eq!(rep.cond_b, None);
        assert!(rep.all_hold());
    }

    #[test]
    fn conditions_need_permutation() {
        assert_eq!(check_conditions(&g(&[&[1, 1], &[3, 4]])), Err(Error::NotPermutation));
    }
}
